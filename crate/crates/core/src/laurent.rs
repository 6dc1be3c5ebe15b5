//! Sparse multivariate Laurent expansions over [`TPoly`] and iterated
//! residue / constant-term extraction.
//!
//! A [`MultiSeries`] lives in a fixed ordered list of variables and carries a
//! per-variable exponent window. Terms outside the window are either dropped
//! (certified windows, whose sufficiency was established by inference) or
//! rejected with [`Error::WindowOverflow`].
//!
//! [`Integrand`] describes a product of factors together with the exponent to
//! extract in each variable; [`Integrand::extract`] infers finite windows for
//! every factor, multiplies factor by factor in elimination order and pulls out
//! each variable's target coefficient as soon as its last factor is in.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;

use crate::arith::{factorial, int, BigRat, TPoly};
use crate::error::{Error, Result};

/// Inclusive exponent range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Self {
        Window { lo, hi }
    }

    pub fn contains(&self, e: i32) -> bool {
        self.lo <= e && e <= self.hi
    }

    pub fn intersect(&self, other: &Window) -> Window {
        Window::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo, self.hi)
    }
}

/// Limits enforced while multiplying.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_terms: usize,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: 20_000_000,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_terms: usize::MAX,
            deadline: None,
        }
    }

    fn check_terms(&self, n: usize) -> Result<()> {
        if n > self.max_terms {
            return Err(Error::BudgetExceeded(format!(
                "{n} terms exceeds the limit of {}",
                self.max_terms
            )));
        }
        Ok(())
    }

    fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded("deadline passed".into())),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiSeries {
    vars: Arc<Vec<String>>,
    windows: Vec<Window>,
    certified: bool,
    terms: BTreeMap<Vec<i32>, TPoly>,
}

impl MultiSeries {
    /// The zero series. `certified` marks the windows as sufficient by inference,
    /// which turns overflow into silent truncation.
    pub fn zero(vars: &[&str], windows: &[Window], certified: bool) -> Result<Self> {
        if vars.len() != windows.len() {
            return Err(Error::InvalidParameter(
                "one window per variable is required".into(),
            ));
        }
        Ok(MultiSeries {
            vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()),
            windows: windows.to_vec(),
            certified,
            terms: BTreeMap::new(),
        })
    }

    fn empty_like(&self, windows: Vec<Window>, certified: bool) -> Self {
        MultiSeries {
            vars: self.vars.clone(),
            windows,
            certified,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &[&str], windows: &[Window], certified: bool) -> Result<Self> {
        let mut s = Self::zero(vars, windows, certified)?;
        s.insert(vec![0; vars.len()], TPoly::one())?;
        Ok(s)
    }

    /// Series with the given `(exponents, coefficient)` terms; like terms are added.
    pub fn from_terms(
        vars: &[&str],
        windows: &[Window],
        certified: bool,
        terms: impl IntoIterator<Item = (Vec<i32>, TPoly)>,
    ) -> Result<Self> {
        let mut s = Self::zero(vars, windows, certified)?;
        for (e, c) in terms {
            s.insert(e, c)?;
        }
        Ok(s)
    }

    /// Adds `coeff * x^exps`, honoring the overflow policy.
    pub fn insert(&mut self, exps: Vec<i32>, coeff: TPoly) -> Result<()> {
        if exps.len() != self.vars.len() {
            return Err(Error::IncompatibleRings);
        }
        if let Some(i) = (0..exps.len()).find(|&i| !self.windows[i].contains(exps[i])) {
            if self.certified {
                return Ok(());
            }
            return Err(Error::WindowOverflow {
                var: self.vars[i].clone(),
                exponent: exps[i],
            });
        }
        add_term(&mut self.terms, exps, coeff);
        Ok(())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn windows(&self) -> &[Window] {
        &self.windows
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &TPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> TPoly {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// The coefficient of a series with no variables left.
    pub fn constant_value(&self) -> Result<TPoly> {
        if !self.vars.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "series still depends on {:?}",
                self.vars
            )));
        }
        Ok(self.coeff(&[]))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::IncompatibleRings)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let windows: Vec<Window> = self
            .windows
            .iter()
            .zip(&other.windows)
            .map(|(a, b)| Window::new(a.lo.min(b.lo), a.hi.max(b.hi)))
            .collect();
        let mut out = self.empty_like(windows, self.certified && other.certified);
        out.terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &TPoly) -> Self {
        let mut out = self.empty_like(self.windows.clone(), self.certified);
        for (e, a) in &self.terms {
            let v = a * c;
            if !v.is_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    /// Product truncated to the intersection of both windows.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let windows: Vec<Window> = self
            .windows
            .iter()
            .zip(&other.windows)
            .map(|(a, b)| a.intersect(b))
            .collect();
        self.multiply_within(
            other,
            &windows,
            self.certified && other.certified,
            &Budget::default(),
        )
    }

    /// Product truncated to `windows`. Out-of-window terms are dropped when
    /// `certified`, otherwise they are an error.
    pub fn multiply_within(
        &self,
        other: &Self,
        windows: &[Window],
        certified: bool,
        budget: &Budget,
    ) -> Result<Self> {
        self.same_ring(other)?;
        let n = self.vars.len();
        let mut acc: HashMap<Vec<i32>, TPoly> = HashMap::new();
        let mut e = vec![0i32; n];
        for (k, (ea, ca)) in self.terms.iter().enumerate() {
            if k % 64 == 0 {
                budget.check_time()?;
            }
            'inner: for (eb, cb) in &other.terms {
                for i in 0..n {
                    e[i] = ea[i] + eb[i];
                    if !windows[i].contains(e[i]) {
                        if certified {
                            continue 'inner;
                        }
                        return Err(Error::WindowOverflow {
                            var: self.vars[i].clone(),
                            exponent: e[i],
                        });
                    }
                }
                let prod = ca * cb;
                match acc.get_mut(&e) {
                    Some(slot) => *slot += &prod,
                    None => {
                        acc.insert(e.clone(), prod);
                    }
                }
            }
            budget.check_terms(acc.len())?;
        }
        let mut out = self.empty_like(windows.to_vec(), certified);
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(out)
    }

    /// Coefficient series of `var^exponent`; `var` is dropped from the ring.
    pub fn coefficient_of(&self, var: &str, exponent: i32) -> Result<Self> {
        let i = self.var_index(var)?;
        self.coefficient_at(i, exponent)
    }

    fn coefficient_at(&self, i: usize, exponent: i32) -> Result<Self> {
        let w = self.windows[i];
        if !w.contains(exponent) {
            return Err(Error::ExponentOutsideWindow {
                var: self.vars[i].clone(),
                exponent,
                lo: w.lo,
                hi: w.hi,
            });
        }
        let mut vars = (*self.vars).clone();
        vars.remove(i);
        let mut windows = self.windows.clone();
        windows.remove(i);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == exponent {
                let mut e2 = e.clone();
                e2.remove(i);
                terms.insert(e2, c.clone());
            }
        }
        Ok(MultiSeries {
            vars: Arc::new(vars),
            windows,
            certified: self.certified,
            terms,
        })
    }

    /// Coefficient of `var^{-1}`.
    pub fn residue(&self, var: &str) -> Result<Self> {
        self.coefficient_of(var, -1)
    }

    /// Coefficient of `var^0`.
    pub fn constant_term(&self, var: &str) -> Result<Self> {
        self.coefficient_of(var, 0)
    }

    /// Partial derivative; the window of `var` moves down by one.
    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self.var_index(var)?;
        let mut windows = self.windows.clone();
        windows[i] = Window::new(windows[i].lo - 1, windows[i].hi - 1);
        let mut out = self.empty_like(windows, self.certified);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.terms.insert(e2, c.scale(&int(e[i] as i64)));
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiSeries")
            .field("vars", &self.vars)
            .field("windows", &self.windows)
            .field("certified", &self.certified)
            .field("terms", &self.terms)
            .finish()
    }
}

fn add_term(terms: &mut BTreeMap<Vec<i32>, TPoly>, e: Vec<i32>, c: TPoly) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&e) {
        Some(slot) => {
            *slot += &c;
            if slot.is_zero() {
                terms.remove(&e);
            }
        }
        None => {
            terms.insert(e, c);
        }
    }
}

/// Exponent `constant + t_coeff * t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub constant: i64,
    pub t_coeff: i64,
}

impl Exponent {
    pub fn int(c: i64) -> Self {
        Exponent {
            constant: c,
            t_coeff: 0,
        }
    }

    pub fn with_t(constant: i64, t_coeff: i64) -> Self {
        Exponent { constant, t_coeff }
    }

    /// A nonnegative integer exponent gives a finite expansion.
    pub fn as_finite(&self) -> Option<u32> {
        (self.t_coeff == 0 && self.constant >= 0).then_some(self.constant as u32)
    }

    fn as_tpoly(&self) -> TPoly {
        TPoly::linear(self.t_coeff, self.constant)
    }
}

/// Bases the engine knows how to raise to a power. Variables are indices into
/// the ring's variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    /// `x`, raised to an integer power.
    Monomial(usize),
    /// `1 + sign * num / den`, with `None` standing for the constant 1.
    /// Infinite expansions run in positive powers of `num / den`, which is the
    /// expansion direction.
    Binomial {
        sign: i8,
        num: Option<usize>,
        den: Option<usize>,
    },
    /// `x_a - x_b`; only nonnegative integer powers have a finite expansion and
    /// no direction is attached, so anything else is rejected.
    Difference(usize, usize),
    /// `exp(x)`, raised to an integer constant power.
    Exp(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub base: Base,
    pub exponent: Exponent,
}

impl Factor {
    pub fn new(base: Base, exponent: Exponent) -> Self {
        Factor { base, exponent }
    }
}

/// Every factor is a sum over one index `n` in `[0, cap]` (cap `None` for an
/// infinite expansion); variable `v` then carries exponent `slope * n + offset`.
#[derive(Clone, Debug)]
struct Shape {
    cap: Option<i64>,
    legs: Vec<(usize, i64, i64)>,
}

fn describe(base: &Base, vars: &[String]) -> String {
    let name = |i: &usize| vars.get(*i).cloned().unwrap_or_else(|| format!("#{i}"));
    match base {
        Base::Monomial(v) => name(v),
        Base::Binomial { sign, num, den } => {
            let n = num.as_ref().map(name).unwrap_or_else(|| "1".into());
            let d = den.as_ref().map(name).unwrap_or_else(|| "1".into());
            format!("(1 {} {n}/{d})", if *sign < 0 { "-" } else { "+" })
        }
        Base::Difference(a, b) => format!("({} - {})", name(a), name(b)),
        Base::Exp(v) => format!("exp({})", name(v)),
    }
}

fn shape_of(f: &Factor, vars: &[String]) -> Result<Shape> {
    let nvars = vars.len();
    let check = |v: usize| {
        if v < nvars {
            Ok(v)
        } else {
            Err(Error::UnknownVariable(format!("#{v}")))
        }
    };
    let what = || describe(&f.base, vars);
    match &f.base {
        Base::Monomial(v) => {
            if f.exponent.t_coeff != 0 {
                return Err(Error::InvalidParameter(format!(
                    "monomial {} needs an integer exponent",
                    what()
                )));
            }
            Ok(Shape {
                cap: Some(0),
                legs: vec![(check(*v)?, 0, f.exponent.constant)],
            })
        }
        Base::Binomial { sign, num, den } => {
            if *sign != 1 && *sign != -1 {
                return Err(Error::InvalidParameter(
                    "binomial sign must be +1 or -1".into(),
                ));
            }
            let mut legs = Vec::new();
            if let Some(a) = num {
                legs.push((check(*a)?, 1, 0));
            }
            if let Some(b) = den {
                legs.push((check(*b)?, -1, 0));
            }
            if legs.is_empty() {
                return Err(Error::InvalidParameter(
                    "binomial base needs at least one variable".into(),
                ));
            }
            Ok(Shape {
                cap: f.exponent.as_finite().map(i64::from),
                legs,
            })
        }
        Base::Difference(a, b) => {
            let e = f
                .exponent
                .as_finite()
                .ok_or_else(|| Error::MissingDirection(what()))?;
            let e = i64::from(e);
            Ok(Shape {
                cap: Some(e),
                legs: vec![(check(*a)?, 1, 0), (check(*b)?, -1, e)],
            })
        }
        Base::Exp(v) => {
            if f.exponent.t_coeff != 0 {
                return Err(Error::InvalidParameter(format!(
                    "{} needs an integer exponent",
                    what()
                )));
            }
            let cap = (f.exponent.constant == 0).then_some(0);
            Ok(Shape {
                cap,
                legs: vec![(check(*v)?, 1, 0)],
            })
        }
    }
}

/// Coefficient of index `n` for `n` in `lo..=hi`.
fn index_coeffs(f: &Factor, lo: i64, hi: i64) -> Vec<TPoly> {
    let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
    match &f.base {
        Base::Monomial(_) => {
            if lo <= 0 && 0 <= hi {
                out.push(TPoly::one());
            }
        }
        Base::Binomial { sign, .. } => {
            // binom(e, n+1) = binom(e, n) * (e - n) / (n + 1)
            let e = f.exponent.as_tpoly();
            let s = int(i64::from(*sign));
            let mut c = TPoly::one();
            for n in 0..=hi {
                if n >= lo {
                    out.push(c.clone());
                }
                let step = &e - &TPoly::constant(int(n));
                c = (&c * &step).scale(&(&s / int(n + 1)));
            }
        }
        Base::Difference(..) => {
            // (a - b)^e = sum_n binom(e, n) a^n (-b)^(e-n)
            let e = f.exponent.constant;
            for n in lo..=hi {
                let sign = if (e - n) % 2 == 0 { 1 } else { -1 };
                out.push(TPoly::constant(crate::arith::binom(e, n) * int(sign)));
            }
        }
        Base::Exp(_) => {
            let c = int(f.exponent.constant);
            for n in lo..=hi {
                let v = num_traits::pow::pow(c.clone(), n as usize)
                    / BigRat::from_integer(factorial(n as u64));
                out.push(TPoly::constant(v));
            }
        }
    }
    out
}

fn to_i32(x: i64, var: &str) -> Result<i32> {
    i32::try_from(x).map_err(|_| Error::UnboundedWindow(var.to_string()))
}

/// Expands `factor` over the ring `vars`, keeping only terms inside `windows`.
///
/// Infinite expansions need every variable of the base to have a window; the
/// expansion runs in positive powers of the numerator. `(x_a - x_b)^e` has no
/// attached direction, so negative or `t`-dependent `e` is
/// [`Error::MissingDirection`].
pub fn expand_power(
    factor: &Factor,
    vars: &[&str],
    windows: &[Window],
    certified: bool,
) -> Result<MultiSeries> {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let shape = shape_of(factor, &names)?;
    let mut series = MultiSeries::zero(vars, windows, certified)?;
    let (lo, hi) = index_range_in(&shape, windows, &names)?;
    if lo > hi {
        return Ok(series);
    }
    let coeffs = index_coeffs(factor, lo, hi);
    for (k, c) in coeffs.into_iter().enumerate() {
        let n = lo + k as i64;
        let mut e = vec![0i32; vars.len()];
        for &(v, slope, offset) in &shape.legs {
            e[v] = to_i32(slope * n + offset, vars[v])?;
        }
        if (0..e.len()).all(|i| windows[i].contains(e[i])) {
            add_term(&mut series.terms, e, c);
        }
    }
    Ok(series)
}

fn index_range_in(shape: &Shape, windows: &[Window], vars: &[String]) -> Result<(i64, i64)> {
    let mut lo = 0i64;
    let mut hi = shape.cap;
    for &(v, slope, offset) in &shape.legs {
        let w = windows[v];
        match slope {
            0 => {
                if !w.contains(offset as i32) {
                    return Ok((0, -1));
                }
            }
            1 => {
                lo = lo.max(i64::from(w.lo) - offset);
                hi = Some(hi.map_or(i64::from(w.hi) - offset, |h| {
                    h.min(i64::from(w.hi) - offset)
                }));
            }
            _ => {
                lo = lo.max(offset - i64::from(w.hi));
                hi = Some(hi.map_or(offset - i64::from(w.lo), |h| {
                    h.min(offset - i64::from(w.lo))
                }));
            }
        }
    }
    let hi = hi.ok_or_else(|| {
        Error::UnboundedWindow(
            shape
                .legs
                .first()
                .map(|l| vars[l.0].clone())
                .unwrap_or_default(),
        )
    })?;
    Ok((lo, hi))
}

/// What to do with a variable once all its factors are multiplied in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// Extract the coefficient of `x^e`.
    Coefficient(i32),
    /// Leave the variable in the result.
    Keep,
}

impl Target {
    pub const RESIDUE: Target = Target::Coefficient(-1);
    pub const CONSTANT_TERM: Target = Target::Coefficient(0);
}

/// A product of factors plus a target for every variable.
#[derive(Clone, Debug)]
pub struct Integrand {
    vars: Vec<String>,
    factors: Vec<Factor>,
    targets: Vec<Target>,
}

#[derive(Clone, Debug, Default)]
pub struct ExtractOptions {
    /// Extra room added on both sides of every inferred infinite-expansion
    /// range (clamped to the natural range); results must not depend on it.
    pub margin: i64,
    pub budget: Budget,
}

/// Result of [`Integrand::extract`].
#[derive(Clone, Debug)]
pub struct Extraction {
    /// Series in the kept variables (possibly none).
    pub value: MultiSeries,
    /// Widest truncation window used for each variable while eliminating.
    pub windows: Vec<(String, Window)>,
    pub peak_terms: usize,
}

impl Extraction {
    /// The extracted coefficient when no variable was kept.
    pub fn scalar(&self) -> Result<TPoly> {
        self.value.constant_value()
    }
}

/// Inclusive index range of a factor after inference.
type IndexRange = (i64, Option<i64>);

impl Integrand {
    /// Variables are eliminated in the order given here.
    pub fn new(vars: &[&str]) -> Self {
        Integrand {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            factors: Vec::new(),
            targets: vec![Target::Keep; vars.len()],
        }
    }

    pub fn var(&self, name: &str) -> usize {
        self.vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn push(&mut self, base: Base, exponent: Exponent) {
        self.factors.push(Factor::new(base, exponent));
    }

    pub fn set_target(&mut self, var: usize, target: Target) {
        self.targets[var] = target;
    }

    /// Residue in every variable.
    pub fn residue_all(&mut self) {
        self.targets = vec![Target::RESIDUE; self.vars.len()];
    }

    fn legs_of(shape: &Shape, range: &IndexRange, v: usize) -> Option<(Option<i64>, Option<i64>)> {
        let &(_, slope, offset) = shape.legs.iter().find(|l| l.0 == v)?;
        let (lo, hi) = *range;
        Some(match slope {
            0 => (Some(offset), Some(offset)),
            1 => (Some(lo + offset), hi.map(|h| h + offset)),
            _ => (hi.map(|h| offset - h), Some(offset - lo)),
        })
    }

    /// Exponent range factor `f` contributes to variable `v`.
    fn var_range(
        &self,
        shapes: &[Shape],
        ranges: &[IndexRange],
        f: usize,
        v: usize,
    ) -> (Option<i64>, Option<i64>) {
        Self::legs_of(&shapes[f], &ranges[f], v).unwrap_or((Some(0), Some(0)))
    }

    /// Clips every factor's index range against the targets until nothing changes.
    fn infer(&self, shapes: &[Shape]) -> Vec<IndexRange> {
        let mut ranges: Vec<IndexRange> = shapes.iter().map(|s| (0, s.cap)).collect();
        loop {
            let mut changed = false;
            for (v, target) in self.targets.iter().enumerate() {
                let Target::Coefficient(t) = *target else {
                    continue;
                };
                let t = i64::from(t);
                let involved: Vec<usize> = (0..shapes.len())
                    .filter(|&f| shapes[f].legs.iter().any(|l| l.0 == v))
                    .collect();
                for &f in &involved {
                    // allowed exponent range for f: [t - sum hi_others, t - sum lo_others]
                    let mut sum_lo = Some(0i64);
                    let mut sum_hi = Some(0i64);
                    for &g in &involved {
                        if g == f {
                            continue;
                        }
                        let (lo, hi) = self.var_range(shapes, &ranges, g, v);
                        sum_lo = sum_lo.zip(lo).map(|(a, b)| a + b);
                        sum_hi = sum_hi.zip(hi).map(|(a, b)| a + b);
                    }
                    let allowed_lo = sum_hi.map(|s| t - s);
                    let allowed_hi = sum_lo.map(|s| t - s);
                    let &(_, slope, offset) = shapes[f].legs.iter().find(|l| l.0 == v).unwrap();
                    let (mut lo, mut hi) = ranges[f];
                    match slope {
                        0 => continue,
                        1 => {
                            if let Some(a) = allowed_lo {
                                lo = lo.max(a - offset);
                            }
                            if let Some(b) = allowed_hi {
                                hi = Some(hi.map_or(b - offset, |h| h.min(b - offset)));
                            }
                        }
                        _ => {
                            if let Some(b) = allowed_hi {
                                lo = lo.max(offset - b);
                            }
                            if let Some(a) = allowed_lo {
                                hi = Some(hi.map_or(offset - a, |h| h.min(offset - a)));
                            }
                        }
                    }
                    if (lo, hi) != ranges[f] {
                        ranges[f] = (lo, hi);
                        changed = true;
                    }
                }
            }
            if !changed {
                return ranges;
            }
        }
    }

    /// Inferred index range of every factor, or the first variable whose
    /// window stays unbounded.
    pub fn inferred_ranges(&self, margin: i64) -> Result<Vec<(i64, i64)>> {
        let shapes = self
            .factors
            .iter()
            .map(|f| shape_of(f, &self.vars))
            .collect::<Result<Vec<_>>>()?;
        let ranges = self.infer(&shapes);
        shapes
            .iter()
            .zip(&ranges)
            .map(|(s, &(lo, hi))| {
                let hi = hi.ok_or_else(|| {
                    Error::UnboundedWindow(
                        s.legs
                            .first()
                            .map(|l| self.vars[l.0].clone())
                            .unwrap_or_default(),
                    )
                })?;
                let lo = (lo - margin).max(0);
                let hi = match s.cap {
                    Some(c) => (hi + margin).min(c),
                    None => hi + margin,
                };
                Ok((lo, hi))
            })
            .collect()
    }

    /// Multiplies all factors and extracts every targeted coefficient.
    pub fn extract(&self, opts: &ExtractOptions) -> Result<Extraction> {
        let shapes = self
            .factors
            .iter()
            .map(|f| shape_of(f, &self.vars))
            .collect::<Result<Vec<_>>>()?;
        let ranges: Vec<IndexRange> = self
            .inferred_ranges(opts.margin)?
            .into_iter()
            .map(|(lo, hi)| (lo, Some(hi)))
            .collect();
        let nf = self.factors.len();
        let exp_range = |f: usize, v: usize| -> (i64, i64) {
            let (lo, hi) = self.var_range(&shapes, &ranges, f, v);
            (lo.unwrap(), hi.unwrap())
        };

        // stage assignment: each factor joins at the first eliminated variable it touches
        let mut stage_of = vec![usize::MAX; nf];
        let order: Vec<usize> = (0..self.vars.len())
            .filter(|&v| matches!(self.targets[v], Target::Coefficient(_)))
            .collect();
        for (s, &v) in order.iter().enumerate() {
            for f in 0..nf {
                if stage_of[f] == usize::MAX && shapes[f].legs.iter().any(|l| l.0 == v) {
                    stage_of[f] = s;
                }
            }
        }

        let mut live: Vec<usize> = (0..self.vars.len()).collect();
        let mut used = vec![false; nf];
        let mut widest: Vec<Option<Window>> = vec![None; self.vars.len()];
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();

        // windows of the running product for the currently live variables
        let running_windows = |used: &[bool], live: &[usize]| -> Result<Vec<Window>> {
            live.iter()
                .map(|&v| {
                    let mut lo_rem = 0i64;
                    let mut hi_rem = 0i64;
                    let mut lo_all = 0i64;
                    let mut hi_all = 0i64;
                    for (f, &u) in used.iter().enumerate() {
                        let (lo, hi) = exp_range(f, v);
                        lo_all += lo;
                        hi_all += hi;
                        if !u {
                            lo_rem += lo;
                            hi_rem += hi;
                        }
                    }
                    let (lo, hi) = match self.targets[v] {
                        Target::Coefficient(t) => {
                            let t = i64::from(t);
                            (t - hi_rem, t - lo_rem)
                        }
                        Target::Keep => (lo_all, hi_all),
                    };
                    Ok(Window::new(
                        to_i32(lo, &self.vars[v])?,
                        to_i32(hi, &self.vars[v])?,
                    ))
                })
                .collect()
        };

        let live_names = |live: &[usize]| -> Vec<&str> { live.iter().map(|&v| names[v]).collect() };
        let mut acc = MultiSeries::one(&live_names(&live), &running_windows(&used, &live)?, true)?;
        let mut peak = acc.len();

        let stages: Vec<Option<usize>> = order
            .iter()
            .map(|&v| Some(v))
            .chain(std::iter::once(None))
            .collect();
        for (s, stage_var) in stages.iter().enumerate() {
            let members: Vec<usize> = (0..nf)
                .filter(|&f| match stage_var {
                    Some(_) => stage_of[f] == s,
                    None => stage_of[f] == usize::MAX,
                })
                .collect();
            for f in members {
                used[f] = true;
                let lv = live_names(&live);
                let fwin: Vec<Window> = live
                    .iter()
                    .map(|&v| {
                        let (lo, hi) = exp_range(f, v);
                        Ok(Window::new(
                            to_i32(lo, &self.vars[v])?,
                            to_i32(hi, &self.vars[v])?,
                        ))
                    })
                    .collect::<Result<_>>()?;
                let local = remap(&self.factors[f], |v| {
                    live.iter().position(|&x| x == v).unwrap()
                });
                let fs = expand_power(&local, &lv, &fwin, true)?;
                let target = running_windows(&used, &live)?;
                for (k, &v) in live.iter().enumerate() {
                    let w = target[k];
                    widest[v] = Some(match widest[v] {
                        None => w,
                        Some(o) => Window::new(o.lo.min(w.lo), o.hi.max(w.hi)),
                    });
                }
                acc = acc.multiply_within(&fs, &target, true, &opts.budget)?;
                peak = peak.max(acc.len());
                if acc.is_empty() {
                    break;
                }
            }
            if let Some(v) = stage_var {
                let Target::Coefficient(t) = self.targets[*v] else {
                    unreachable!()
                };
                let pos = live.iter().position(|x| x == v).unwrap();
                if acc.windows[pos].contains(t) {
                    acc = acc.coefficient_at(pos, t)?;
                } else {
                    // the target lies outside every reachable exponent: the coefficient is zero
                    let mut vars = (*acc.vars).clone();
                    vars.remove(pos);
                    let mut windows = acc.windows.clone();
                    windows.remove(pos);
                    acc = MultiSeries {
                        vars: Arc::new(vars),
                        windows,
                        certified: true,
                        terms: BTreeMap::new(),
                    };
                }
                live.remove(pos);
            }
        }
        let windows = self
            .vars
            .iter()
            .zip(widest)
            .filter_map(|(n, w)| w.map(|w| (n.clone(), w)))
            .collect();
        Ok(Extraction {
            value: acc,
            windows,
            peak_terms: peak,
        })
    }
}

fn remap(f: &Factor, map: impl Fn(usize) -> usize) -> Factor {
    let base = match &f.base {
        Base::Monomial(v) => Base::Monomial(map(*v)),
        Base::Binomial { sign, num, den } => Base::Binomial {
            sign: *sign,
            num: num.map(&map),
            den: den.map(&map),
        },
        Base::Difference(a, b) => Base::Difference(map(*a), map(*b)),
        Base::Exp(v) => Base::Exp(map(*v)),
    };
    Factor::new(base, f.exponent)
}

/// `prod_{i<j} (x_i - x_j)^e` over the given variable indices, as factors.
pub fn vandermonde_power(vars: &[usize], e: u32) -> Vec<Factor> {
    let mut out = Vec::new();
    for (a, &i) in vars.iter().enumerate() {
        for &j in &vars[a + 1..] {
            out.push(Factor::new(
                Base::Difference(i, j),
                Exponent::int(i64::from(e)),
            ));
        }
    }
    out
}

impl From<BigRat> for MultiSeries {
    fn from(c: BigRat) -> Self {
        let mut s = MultiSeries {
            vars: Arc::new(Vec::new()),
            windows: Vec::new(),
            certified: true,
            terms: BTreeMap::new(),
        };
        add_term(&mut s.terms, Vec::new(), TPoly::constant(c));
        s
    }
}

impl MultiSeries {
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.iter().all(|&x| x == 0) && c == &TPoly::one())
    }

    /// Evaluates at `t = value`, leaving a series with constant coefficients.
    pub fn eval_t(&self, value: &BigRat) -> Self {
        let mut out = self.empty_like(self.windows.clone(), self.certified);
        for (e, c) in &self.terms {
            let v = c.eval(value);
            if !v.is_zero() {
                out.terms.insert(e.clone(), TPoly::constant(v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binom_t;

    fn w(lo: i32, hi: i32) -> Window {
        Window::new(lo, hi)
    }

    fn c(n: i64) -> TPoly {
        TPoly::constant(int(n))
    }

    #[test]
    fn geometric_series() {
        let f = Factor::new(
            Base::Binomial {
                sign: -1,
                num: Some(0),
                den: None,
            },
            Exponent::int(-1),
        );
        let s = expand_power(&f, &["u"], &[w(0, 3)], false).unwrap();
        assert_eq!(s.len(), 4);
        for e in 0..=3 {
            assert_eq!(s.coeff(&[e]), c(1));
        }
    }

    #[test]
    fn binomial_series_in_t() {
        let f = Factor::new(
            Base::Binomial {
                sign: 1,
                num: Some(0),
                den: None,
            },
            Exponent::with_t(0, 1),
        );
        let s = expand_power(&f, &["z"], &[w(0, 2)], false).unwrap();
        assert_eq!(s.coeff(&[0]), TPoly::one());
        assert_eq!(s.coeff(&[1]), TPoly::var());
        assert_eq!(s.coeff(&[2]), binom_t(0, 2));
    }

    #[test]
    fn ratio_expansion_runs_in_numerator_powers() {
        // (1 - z1/z)^{-2} = sum_a (a+1) z1^a z^{-a}
        let f = Factor::new(
            Base::Binomial {
                sign: -1,
                num: Some(0),
                den: Some(1),
            },
            Exponent::int(-2),
        );
        let s = expand_power(&f, &["z1", "z"], &[w(0, 4), w(-10, 0)], false).unwrap();
        assert_eq!(s.len(), 5);
        for a in 0..=4 {
            assert_eq!(s.coeff(&[a, -a]), c(i64::from(a) + 1));
        }
    }

    #[test]
    fn difference_needs_direction_for_negative_powers() {
        let f = Factor::new(Base::Difference(0, 1), Exponent::int(-1));
        let err = expand_power(&f, &["a", "b"], &[w(-5, 5), w(-5, 5)], false).unwrap_err();
        assert!(matches!(err, Error::MissingDirection(_)));
    }

    #[test]
    fn multiply_examples() {
        let a = MultiSeries::from_terms(
            &["u"],
            &[w(-3, 3)],
            false,
            [(vec![0], c(1)), (vec![1], c(1))],
        )
        .unwrap();
        let b = MultiSeries::from_terms(
            &["u"],
            &[w(-3, 3)],
            false,
            [(vec![0], c(1)), (vec![1], c(-1))],
        )
        .unwrap();
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&[2]), c(-1));

        let d = Factor::new(Base::Difference(0, 1), Exponent::int(2));
        let s = expand_power(&d, &["z1", "z2"], &[w(0, 2), w(0, 2)], false).unwrap();
        assert_eq!(s.coeff(&[2, 0]), c(1));
        assert_eq!(s.coeff(&[1, 1]), c(-2));
        assert_eq!(s.coeff(&[0, 2]), c(1));
    }

    #[test]
    fn uncertified_overflow_is_an_error() {
        let a = MultiSeries::from_terms(&["u"], &[w(0, 2)], false, [(vec![2], c(1))]).unwrap();
        let err = a.multiply(&a).unwrap_err();
        assert!(matches!(err, Error::WindowOverflow { .. }));
        let b = MultiSeries::from_terms(&["u"], &[w(0, 2)], true, [(vec![2], c(1))]).unwrap();
        assert!(b.multiply(&b).unwrap().is_empty());
    }

    #[test]
    fn residue_examples() {
        let s = MultiSeries::from_terms(
            &["u"],
            &[w(-2, 2)],
            false,
            [(vec![-1], c(1)), (vec![0], c(3)), (vec![1], c(1))],
        )
        .unwrap();
        assert_eq!(s.residue("u").unwrap().constant_value().unwrap(), c(1));
        assert_eq!(
            s.constant_term("u").unwrap().constant_value().unwrap(),
            c(3)
        );
        let s = MultiSeries::from_terms(&["u"], &[w(-2, 2)], false, [(vec![-2], c(2))]).unwrap();
        assert!(s.residue("u").unwrap().constant_value().unwrap().is_zero());
        let s = MultiSeries::zero(&["u"], &[w(0, 2)], false).unwrap();
        assert!(matches!(
            s.residue("u"),
            Err(Error::ExponentOutsideWindow { .. })
        ));
    }

    #[test]
    fn unbounded_window_is_reported() {
        // Res_u (1 - u)^{-1} (1 - 1/u)^{-1}: both directions infinite, nothing clips them
        let mut ig = Integrand::new(&["u"]);
        ig.push(
            Base::Binomial {
                sign: -1,
                num: Some(0),
                den: None,
            },
            Exponent::int(-1),
        );
        ig.push(
            Base::Binomial {
                sign: -1,
                num: None,
                den: Some(0),
            },
            Exponent::int(-1),
        );
        ig.residue_all();
        assert!(matches!(
            ig.extract(&ExtractOptions::default()),
            Err(Error::UnboundedWindow(_))
        ));
    }

    #[test]
    fn small_integrand() {
        // Res_u u^{-3} (1 - u)^{-2} = coefficient of u^2 in (1-u)^{-2} = 3
        let mut ig = Integrand::new(&["u"]);
        ig.push(Base::Monomial(0), Exponent::int(-3));
        ig.push(
            Base::Binomial {
                sign: -1,
                num: Some(0),
                den: None,
            },
            Exponent::int(-2),
        );
        ig.residue_all();
        let out = ig.extract(&ExtractOptions::default()).unwrap();
        assert_eq!(out.scalar().unwrap(), c(3));
        assert_eq!(out.windows.len(), 1);
    }
}
