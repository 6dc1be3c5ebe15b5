//! Jack polynomials at `alpha = 1/k`, the Cauchy coefficients, Kadell's
//! constant term and the two-row partition sum that reproduces `S(t,3,p)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{binom, binom_t, factorial, falling, int, poch_int, BigRat, TPoly};
use crate::error::{Error, Result};
use crate::laurent::{
    expand_power, Base, Exponent, ExtractOptions, Factor, Integrand, MultiSeries, Target, Window,
};

/// Weakly decreasing parts with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: &[u32]) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        let mut parts = parts.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn two_row(l1: u32, l2: u32) -> Result<Self> {
        Partition::new(&[l1, l2])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, n: usize) -> Vec<u32> {
        (0..n.max(self.len())).map(|i| self.part(i)).collect()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        Partition {
            parts: (0..cols)
                .map(|j| self.parts.iter().filter(|&&x| x > j).count() as u32)
                .collect(),
        }
    }

    pub fn hooks(&self) -> HookData {
        let conj = self.conjugate();
        let mut arm = Vec::new();
        let mut leg = Vec::new();
        for (i, &li) in self.parts.iter().enumerate() {
            arm.push((0..li).map(|j| li - j - 1).collect());
            leg.push(
                (0..li)
                    .map(|j| conj.part(j as usize) - i as u32 - 1)
                    .collect(),
            );
        }
        HookData { arm, leg }
    }

    /// All partitions of `d` with at most `max_len` parts, in reverse
    /// lexicographic order (dominance-larger first).
    pub fn all_of(d: u32, max_len: usize) -> Vec<Partition> {
        fn rec(rest: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition::new(cur).expect("generated parts are sorted"));
                return;
            }
            if slots == 0 {
                return;
            }
            for first in (1..=cap.min(rest)).rev() {
                cur.push(first);
                rec(rest - first, first, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, max_len, &mut Vec::new(), &mut out);
        out
    }

    /// Dominance order: `self >= other` when every partial sum is at least as large.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let n = self.len().max(other.len());
        let mut a = 0;
        let mut b = 0;
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Arm and leg lengths, `arm[i][j]` for the cell in row `i`, column `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookData {
    pub arm: Vec<Vec<u32>>,
    pub leg: Vec<Vec<u32>>,
}

/// `alpha_lambda^k = prod_cells (A + kL + k) / (A + kL + 1)`.
pub fn alpha_coeff(lambda: &Partition, k: u32) -> BigRat {
    let h = lambda.hooks();
    let k = i64::from(k);
    let mut out = BigRat::one();
    for (arms, legs) in h.arm.iter().zip(&h.leg) {
        for (&a, &l) in arms.iter().zip(legs) {
            let base = i64::from(a) + k * i64::from(l);
            out *= BigRat::new((base + k).into(), (base + 1).into());
        }
    }
    out
}

/// `f^p_r(lambda) = prod_{i<j} (lambda_i - lambda_j + (i-j)p)_p`, as displayed.
/// It vanishes whenever `1 <= lambda_i - lambda_j - (j-i)p + p <= p`.
pub fn f_rp(lambda: &Partition, r: usize, p: u32) -> BigRat {
    f_generic(lambda, r, p, -1)
}

/// `prod_{i<j} (lambda_i - lambda_j + (j-i)p)_p`, the form consistent with the
/// principal specialization and with the hook formula for `alpha`.
pub fn f_rp_ascending(lambda: &Partition, r: usize, p: u32) -> BigRat {
    f_generic(lambda, r, p, 1)
}

fn f_generic(lambda: &Partition, r: usize, p: u32, dir: i64) -> BigRat {
    let l = lambda.padded(r);
    let p64 = i64::from(p);
    let mut out = BigRat::one();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            let base = i64::from(l[i]) - i64::from(l[j]) + dir * (j as i64 - i as i64) * p64;
            out *= poch_int(base, p);
        }
    }
    out
}

/// The displayed three-variable closed form of `alpha^p_{l1,l2}` with the
/// ascending `f_3^p`.
pub fn alpha_two_row(l1: u32, l2: u32, p: u32) -> Result<BigRat> {
    let lam = Partition::two_row(l1, l2)?;
    Ok(alpha_two_row_numerator(l1, l2, p) / f_rp_ascending(&lam, 3, p))
}

/// Same closed form with the literal `f_3^p`; `None` where it vanishes.
pub fn alpha_two_row_literal(l1: u32, l2: u32, p: u32) -> Result<Option<BigRat>> {
    let lam = Partition::two_row(l1, l2)?;
    let f = f_rp(&lam, 3, p);
    Ok((!f.is_zero()).then(|| alpha_two_row_numerator(l1, l2, p) / f))
}

fn alpha_two_row_numerator(l1: u32, l2: u32, p: u32) -> BigRat {
    let (a, b, q) = (i64::from(l1), i64::from(l2), i64::from(p));
    poch_int(q, l1 + 2 * p)
        * poch_int(q, l2 + p)
        * poch_int(a - b + 1, p)
        * poch_int(b + 1, p)
        * poch_int(a + q + 1, p)
        / (fact(a + 2 * q) * fact(b + q))
}

fn fact(n: i64) -> BigRat {
    BigRat::from_integer(factorial(n as u64))
}

/// Coefficient `c` in `s^k_lambda(z, ..., z) = c z^{|lambda|}`:
/// `prod_{i<j} ((j-i)k + lambda_i - lambda_j)_k / ((j-i)k)_k`.
pub fn principal_spec(lambda: &Partition, n: usize, k: u32) -> Result<BigRat> {
    if lambda.len() > n {
        return Err(Error::InvalidParameter(format!(
            "partition {lambda} has more than {n} parts"
        )));
    }
    let l = lambda.padded(n);
    let k64 = i64::from(k);
    let mut out = BigRat::one();
    for i in 0..n {
        for j in i + 1..n {
            let d = (j - i) as i64 * k64;
            out *= poch_int(d + i64::from(l[i]) - i64::from(l[j]), k) / poch_int(d, k);
        }
    }
    Ok(out)
}

/// Two-variable principal specialization in binomial form,
/// `binom(l1-l2+2p-1, p) / binom(2p-1, p)`.
pub fn principal_spec_binomial(l1: u32, l2: u32, p: u32) -> BigRat {
    let (a, b, q) = (i64::from(l1), i64::from(l2), i64::from(p));
    binom(a - b + 2 * q - 1, q) / binom(2 * q - 1, q)
}

/// Kadell's constant term in binomial form,
/// `6 (2p-1)! (2p-1-l2)! f (-1)^{l1+l2} binom(t+2p, 2p-1-l1) binom(t+p, 2p-1-l2) binom(t, 2p-1) / ((4p-1)! (3p-1-l2)!)`,
/// with `f` the ascending `f_3^p`. Zero for `l1 > 2p-1`.
pub fn kadell_ct(l1: u32, l2: u32, p: u32) -> Result<TPoly> {
    let lam = Partition::two_row(l1, l2)?;
    kadell_with_f(l1, l2, p, &f_rp_ascending(&lam, 3, p))
}

/// The binomial form with the literal `f_3^p`.
pub fn kadell_ct_literal(l1: u32, l2: u32, p: u32) -> Result<TPoly> {
    let lam = Partition::two_row(l1, l2)?;
    kadell_with_f(l1, l2, p, &f_rp(&lam, 3, p))
}

fn kadell_with_f(l1: u32, l2: u32, p: u32, f: &BigRat) -> Result<TPoly> {
    let (a, b, q) = (i64::from(l1), i64::from(l2), i64::from(p));
    if a > 2 * q - 1 {
        return Ok(TPoly::zero());
    }
    let sign = if (a + b) % 2 == 0 { int(1) } else { int(-1) };
    let c = int(6) * fact(2 * q - 1) * fact(2 * q - 1 - b) * f * sign
        / (fact(4 * q - 1) * fact(3 * q - 1 - b));
    let poly =
        &(&binom_t(2 * q, 2 * q - 1 - a) * &binom_t(q, 2 * q - 1 - b)) * &binom_t(0, 2 * q - 1);
    Ok(poly.scale(&c))
}

/// Kadell's constant term in factorial form,
/// `6 f (-1)^{l1+l2} (t+2p)! (t+p)! t! / ((t+1+l1)! (t+1-p+l2)! (t-2p+1)! (2p-1-l1)! (3p-1-l2)! (4p-1)!)`,
/// where each ratio of factorials in `t` is a falling factorial.
pub fn kadell_ct_factorial(l1: u32, l2: u32, p: u32) -> Result<TPoly> {
    let lam = Partition::two_row(l1, l2)?;
    let (a, b, q) = (i64::from(l1), i64::from(l2), i64::from(p));
    if a > 2 * q - 1 {
        return Ok(TPoly::zero());
    }
    let f = f_rp_ascending(&lam, 3, p);
    let sign = if (a + b) % 2 == 0 { int(1) } else { int(-1) };
    let c = int(6) * f * sign / (fact(2 * q - 1 - a) * fact(3 * q - 1 - b) * fact(4 * q - 1));
    let t = TPoly::var();
    let shifted = |s: i64| TPoly::linear(1, s);
    // (t+2p)!/(t+1+l1)! = falling(t+2p, 2p-1-l1), and so on
    let poly = &(&falling(&shifted(2 * q), (2 * q - 1 - a) as u32)
        * &falling(&shifted(q), (2 * q - 1 - b) as u32))
        * &falling(&t, (2 * q - 1) as u32);
    Ok(poly.scale(&c))
}

/// The constant term Kadell's formula evaluates, computed directly:
/// `CT s_lambda(z) prod_{i != j} (1 - z_i/z_j)^p prod (1 - z_i)^{t-2p+1} (1 - 1/z_i)^{2p-1}`
/// in three variables, with `s_lambda` from [`jack_poly`].
pub fn kadell_direct_ct(lambda: &Partition, p: u32, opts: &ExtractOptions) -> Result<TPoly> {
    let jack = jack_monomials(lambda, 3, p)?;
    let mut total = TPoly::zero();
    for (expo, c) in jack {
        let mut ig = Integrand::new(&["z1", "z2", "z3"]);
        let q = i64::from(p);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    ig.push(
                        Base::Binomial {
                            sign: -1,
                            num: Some(i),
                            den: Some(j),
                        },
                        Exponent::int(q),
                    );
                }
            }
        }
        for (i, &a) in expo.iter().enumerate() {
            ig.push(
                Base::Binomial {
                    sign: -1,
                    num: Some(i),
                    den: None,
                },
                Exponent::with_t(1 - 2 * q, 1),
            );
            ig.push(
                Base::Binomial {
                    sign: -1,
                    num: None,
                    den: Some(i),
                },
                Exponent::int(2 * q - 1),
            );
            // CT(z^a F) is the coefficient of z^{-a} in F
            ig.set_target(i, Target::Coefficient(-(a as i32)));
        }
        let v = ig.extract(opts)?.scalar()?;
        total += &v.scale(&c);
    }
    Ok(total)
}

/// `c^p_{l1,l2}` exactly as displayed.
pub fn c_coeff(l1: u32, l2: u32, p: u32) -> BigRat {
    let (a, b, q) = (i64::from(l1), i64::from(l2), i64::from(p));
    let num = int(6)
        * fact(2 * q - 1)
        * fact(2 * q - 1 - b)
        * binom(a - b + 2 * q - 1, q)
        * poch_int(q, l1 + 2 * p)
        * poch_int(q, l2 + p)
        * poch_int(a - b + 1, p)
        * poch_int(b + 1, p)
        * poch_int(a + q + 1, p);
    let sign = if (q + 1) % 2 == 0 { int(1) } else { int(-1) };
    let den = sign
        * fact(a + 2 * q)
        * fact(b + q)
        * binom(2 * q - 1, q)
        * fact(4 * q - 1)
        * fact(3 * q - 1 - b);
    num / den
}

/// The `t`-polynomial part of a summand,
/// `binom(t+l1+l2+1, 2p+1+l1+l2) binom(t+2p, 2p-1-l1) binom(t+p, 2p-1-l2) binom(t, 2p-1)`.
fn partition_sum_binomials(l1: u32, l2: u32, p: u32) -> TPoly {
    let (a, b, q) = (i64::from(l1), i64::from(l2), i64::from(p));
    let x = &binom_t(a + b + 1, 2 * q + 1 + a + b) * &binom_t(2 * q, 2 * q - 1 - a);
    &(&x * &binom_t(q, 2 * q - 1 - b)) * &binom_t(0, 2 * q - 1)
}

/// Number of summands, `2p(2p+1)/2`.
pub fn partition_sum_term_count(p: u32) -> usize {
    (2 * p * (2 * p + 1) / 2) as usize
}

/// `sum_{0 <= l2 <= l1 <= 2p-1} c^p_{l1,l2} (-1)^{|l|} binom(..) binom(..) binom(..) binom(..)`.
///
/// The sum is finite because the `t`-polynomial part vanishes once `l1 >= 2p`;
/// this is checked on the diagonal `l1 = 2p` and reported as an error if it
/// ever fails.
pub fn partition_sum(p: u32) -> Result<TPoly> {
    if p < 2 {
        return Err(Error::InvalidParameter("p must be at least 2".into()));
    }
    for l2 in 0..2 * p {
        if !partition_sum_binomials(2 * p, l2, p).is_zero() {
            return Err(Error::InvalidParameter(format!(
                "summand ({}, {l2}) does not vanish",
                2 * p
            )));
        }
    }
    let mut total = TPoly::zero();
    for l1 in 0..2 * p {
        for l2 in 0..=l1 {
            let sign = if (l1 + l2) % 2 == 0 { int(1) } else { int(-1) };
            let c = c_coeff(l1, l2, p) * sign;
            total += &partition_sum_binomials(l1, l2, p).scale(&c);
        }
    }
    Ok(total)
}

/// Exponent vectors of length `n` that are permutations of `mu` (padded).
fn orbit(mu: &Partition, n: usize) -> Vec<Vec<u32>> {
    let mut v = mu.padded(n);
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next lexicographic permutation
    while let Some(i) = (0..v.len().saturating_sub(1))
        .rev()
        .find(|&i| v[i] < v[i + 1])
    {
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

/// `W = prod_{i != j} (1 - z_i/z_j)^k` as a Laurent polynomial in `n` variables.
fn jack_weight(n: usize, k: u32) -> Result<MultiSeries> {
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let span = (n as i32 - 1) * k as i32;
    let windows = vec![Window::new(-span, span); n];
    let mut acc = MultiSeries::one(&refs, &windows, false)?;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let f = Factor::new(
                    Base::Binomial {
                        sign: -1,
                        num: Some(i),
                        den: Some(j),
                    },
                    Exponent::int(i64::from(k)),
                );
                acc = acc.multiply(&expand_power(&f, &refs, &windows, false)?)?;
            }
        }
    }
    Ok(acc)
}

/// Jack inner product on monomial symmetric functions,
/// `<m_mu, m_nu> = CT m_mu(z) m_nu(1/z) W(z)`.
fn monomial_gram(parts: &[Partition], n: usize, w: &MultiSeries) -> Vec<Vec<BigRat>> {
    let orbits: Vec<Vec<Vec<u32>>> = parts.iter().map(|m| orbit(m, n)).collect();
    let mut g = vec![vec![BigRat::zero(); parts.len()]; parts.len()];
    for a in 0..parts.len() {
        for b in a..parts.len() {
            let mut s = BigRat::zero();
            for x in &orbits[a] {
                for y in &orbits[b] {
                    // coefficient of z^{y - x} in W
                    let e: Vec<i32> = x
                        .iter()
                        .zip(y)
                        .map(|(&xi, &yi)| yi as i32 - xi as i32)
                        .collect();
                    s += w.coeff(&e).coeff(0);
                }
            }
            g[a][b] = s.clone();
            g[b][a] = s;
        }
    }
    g
}

/// Monic Jack polynomial `P_lambda` at `alpha = 1/k` in `n` variables, as
/// coefficients on the monomial symmetric functions.
pub fn jack_in_monomials(
    lambda: &Partition,
    n: usize,
    k: u32,
) -> Result<BTreeMap<Partition, BigRat>> {
    const MAX_DEGREE: u32 = 12;
    if lambda.size() > MAX_DEGREE {
        return Err(Error::BudgetExceeded(format!(
            "Jack polynomials are built up to degree {MAX_DEGREE}"
        )));
    }
    if lambda.len() > n {
        return Err(Error::InvalidParameter(format!(
            "partition {lambda} has more than {n} parts"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    // dominance-smallest first, so every P_mu below lambda is known when needed
    let mut parts = Partition::all_of(lambda.size(), n);
    parts.reverse();
    let w = jack_weight(n, k)?;
    let g = monomial_gram(&parts, n, &w);
    let dim = parts.len();
    let ip = |u: &[BigRat], v: &[BigRat]| -> BigRat {
        let mut s = BigRat::zero();
        for a in 0..dim {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..dim {
                if !v[b].is_zero() {
                    s += &u[a] * &v[b] * &g[a][b];
                }
            }
        }
        s
    };
    let target = parts.iter().position(|m| m == lambda).unwrap();
    let mut basis: Vec<Vec<BigRat>> = Vec::new();
    for idx in 0..=target {
        let mut v = vec![BigRat::zero(); dim];
        v[idx] = BigRat::one();
        for prev in &basis {
            let c = ip(&v, prev) / ip(prev, prev);
            for a in 0..dim {
                let d = &c * &prev[a];
                v[a] -= d;
            }
        }
        basis.push(v);
    }
    let v = basis.pop().unwrap();
    Ok(parts
        .into_iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

/// Jack polynomial as `(exponent vector, coefficient)` terms.
pub fn jack_monomials(lambda: &Partition, n: usize, k: u32) -> Result<Vec<(Vec<u32>, BigRat)>> {
    if lambda.is_empty() {
        return Ok(vec![(vec![0; n], BigRat::one())]);
    }
    let coeffs = jack_in_monomials(lambda, n, k)?;
    let mut out = Vec::new();
    for (mu, c) in coeffs {
        for e in orbit(&mu, n) {
            out.push((e, c.clone()));
        }
    }
    Ok(out)
}

/// `s^k_lambda(z_1..z_n)` as a symmetric [`MultiSeries`], normalized so that
/// [`principal_spec`] is reproduced.
pub fn jack_poly(lambda: &Partition, n: usize, k: u32) -> Result<MultiSeries> {
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let d = lambda.size() as i32;
    let terms = jack_monomials(lambda, n, k)?;
    let at_one: BigRat = terms.iter().map(|(_, c)| c.clone()).sum();
    let want = principal_spec(lambda, n, k)?;
    if at_one.is_zero() {
        return Err(Error::InvalidParameter(
            "Jack polynomial vanishes at 1".into(),
        ));
    }
    let norm = want / at_one;
    MultiSeries::from_terms(
        &refs,
        &vec![Window::new(0, d); n],
        false,
        terms.into_iter().map(|(e, c)| {
            (
                e.iter().map(|&x| x as i32).collect(),
                TPoly::constant(c * &norm),
            )
        }),
    )
}

/// Checks `prod_{i<=n, j<=2} (1 - z_i y_j)^{-k} = sum_lambda alpha_lambda^k s_lambda(z) s_lambda(y)`
/// through total degree `d` in `z`. Returns the first mismatching monomial,
/// written with `w_j = 1/y_j`.
pub fn cauchy_check(n: usize, k: u32, d: u32) -> Result<Option<Vec<i32>>> {
    let mut names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    names.extend(["w1".to_string(), "w2".to_string()]);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let di = d as i32;
    let mut windows = vec![Window::new(0, di); n];
    windows.extend([Window::new(-di, 0); 2]);

    let mut lhs = MultiSeries::one(&refs, &windows, true)?;
    for i in 0..n {
        for j in 0..2 {
            let f = Factor::new(
                Base::Binomial {
                    sign: -1,
                    num: Some(i),
                    den: Some(n + j),
                },
                Exponent::int(-i64::from(k)),
            );
            lhs = lhs.multiply(&expand_power(&f, &refs, &windows, true)?)?;
        }
    }
    let mut rhs = MultiSeries::zero(&refs, &windows, true)?;
    for deg in 0..=d {
        for lam in Partition::all_of(deg, n.min(2)) {
            let a = alpha_coeff(&lam, k);
            let sz = jack_monomials(&lam, n, k)?;
            let sy = jack_monomials(&lam, 2, k)?;
            for (ez, cz) in &sz {
                for (ey, cy) in &sy {
                    let mut e: Vec<i32> = ez.iter().map(|&x| x as i32).collect();
                    e.extend(ey.iter().map(|&x| -(x as i32)));
                    rhs.insert(e, TPoly::constant(&a * cz * cy))?;
                }
            }
        }
    }
    let degree = |e: &[i32]| e[..n].iter().sum::<i32>();
    let mut keys: Vec<Vec<i32>> = lhs.terms().map(|(e, _)| e.clone()).collect();
    keys.extend(rhs.terms().map(|(e, _)| e.clone()));
    keys.sort();
    keys.dedup();
    Ok(keys
        .into_iter()
        .filter(|e| degree(e) <= di)
        .find(|e| lhs.coeff(e) != rhs.coeff(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p).unwrap()
    }

    #[test]
    fn partitions_normalize() {
        assert_eq!(part(&[3, 1, 0, 0]).parts(), &[3, 1]);
        assert!(Partition::new(&[1, 2]).is_err());
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(
            Partition::all_of(4, 2),
            vec![part(&[4]), part(&[3, 1]), part(&[2, 2])]
        );
        assert!(part(&[3, 1]).dominates(&part(&[2, 2])));
        assert!(!part(&[2, 2]).dominates(&part(&[3, 1])));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_coeff(&Partition::empty(), 3), int(1));
        assert_eq!(alpha_coeff(&part(&[1]), 5), int(5));
        let want = [int(1), int(2), rat(8, 3), int(3), int(5), int(5)];
        let got: Vec<BigRat> = [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
            .iter()
            .map(|&(a, b)| alpha_coeff(&part(&[a, b]), 2))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn alpha_closed_form_with_ascending_f() {
        for p in [2, 3] {
            for l1 in 0..=6 {
                for l2 in 0..=l1 {
                    assert_eq!(
                        alpha_two_row(l1, l2, p).unwrap(),
                        alpha_coeff(&part(&[l1, l2]), p)
                    );
                }
            }
        }
        // the literal f vanishes at l1 - l2 = 1 when p = 2
        assert_eq!(alpha_two_row_literal(1, 0, 2).unwrap(), None);
    }

    #[test]
    fn f_examples() {
        for p in 1..6 {
            let want = if p % 2 == 0 { fact(p) } else { -fact(p) };
            assert_eq!(f_rp(&Partition::empty(), 2, p as u32), want);
        }
        assert_eq!(f_rp(&part(&[1]), 2, 1), int(0));
        assert_eq!(f_rp(&part(&[2, 1]), 3, 2), f_rp(&part(&[2, 1, 0, 0]), 3, 2));
    }

    #[test]
    fn principal_spec_forms_agree() {
        assert_eq!(principal_spec(&Partition::empty(), 3, 2).unwrap(), int(1));
        assert!(principal_spec(&part(&[1, 1, 1]), 2, 2).is_err());
        for p in 1..=5 {
            for l1 in 0..=10 {
                for l2 in 0..=l1 {
                    assert_eq!(
                        principal_spec(&part(&[l1, l2]), 2, p).unwrap(),
                        principal_spec_binomial(l1, l2, p)
                    );
                }
            }
        }
    }

    #[test]
    fn kadell_forms() {
        let k = kadell_ct(0, 0, 2).unwrap();
        assert_eq!(k.degree(), Some(9));
        assert!(kadell_ct(4, 0, 2).unwrap().is_zero());
        for p in 2..=4 {
            for l1 in 0..2 * p {
                for l2 in 0..=l1 {
                    assert_eq!(
                        kadell_ct(l1, l2, p).unwrap(),
                        kadell_ct_factorial(l1, l2, p).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn kadell_matches_direct_constant_term() {
        let opts = ExtractOptions::default();
        let direct = kadell_direct_ct(&Partition::empty(), 2, &opts).unwrap();
        assert_eq!(direct, kadell_ct(0, 0, 2).unwrap());
        assert_ne!(direct, kadell_ct_literal(0, 0, 2).unwrap());
        for lam in [part(&[1]), part(&[2, 1]), part(&[3, 3])] {
            let direct = kadell_direct_ct(&lam, 2, &opts).unwrap();
            assert_eq!(
                direct,
                kadell_ct(lam.part(0), lam.part(1), 2).unwrap(),
                "{lam}"
            );
        }
    }

    #[test]
    fn jack_degree_one_and_principal_spec() {
        let j = jack_poly(&part(&[1]), 2, 3).unwrap();
        assert_eq!(j.len(), 2);
        assert_eq!(j.coeff(&[1, 0]), TPoly::one());
        assert_eq!(j.coeff(&[0, 1]), TPoly::one());
        for lam in [part(&[2]), part(&[2, 1]), part(&[3, 1]), part(&[2, 2])] {
            for k in [1, 2, 3] {
                let m = jack_in_monomials(&lam, 3, k).unwrap();
                assert_eq!(m[&lam], int(1));
                let at_one: BigRat = jack_monomials(&lam, 3, k)
                    .unwrap()
                    .into_iter()
                    .map(|(_, c)| c)
                    .sum();
                assert_eq!(at_one, principal_spec(&lam, 3, k).unwrap());
            }
        }
        // k = 1 gives Schur polynomials: s_(2) = m_(2) + m_(1,1)
        let s2 = jack_in_monomials(&part(&[2]), 2, 1).unwrap();
        assert_eq!(s2[&part(&[1, 1])], int(1));
    }

    #[test]
    fn cauchy_identity_through_degree_four() {
        for (n, k) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
            assert_eq!(cauchy_check(n, k, 4).unwrap(), None, "n={n} k={k}");
        }
    }

    #[test]
    fn partition_sum_has_expected_size() {
        assert_eq!(partition_sum_term_count(2), 10);
        let s = partition_sum(2).unwrap();
        assert_eq!(s.degree(), Some(14));
    }
}
