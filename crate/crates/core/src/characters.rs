//! Characters and lowest weights of the `Lambda`, `Pi` and `R` families of
//! `W(p)^{A_m}`-modules.
//!
//! All characters are eta-scaled: `eta(q) * ch M(q)`, so they are finite sums
//! of theta-like series and every comparison is a coefficient comparison.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{binom_general, factorial, frac_string, int, rat, BigRat, RatPoly};
use crate::error::{Error, Result};
use crate::qseries::{p_hat, q_hat, theta, QExpansion};

/// Kac-table weight `h_{r,s} = ((ps - r)^2 - (p-1)^2) / (4p)`; both indices may be rational.
pub fn h_weight(r: &BigRat, s: &BigRat, p: u32) -> BigRat {
    let p = int(i64::from(p));
    let a = &p * s - r;
    let b = &p - BigRat::one();
    (&a * &a - &b * &b) / (int(4) * p)
}

/// `h_{r,s}` at integer indices.
pub fn h_int(r: i64, s: i64, p: u32) -> BigRat {
    h_weight(&int(r), &int(s), p)
}

/// `C_p = (4p)^{2p-1} / (2p-1)!^2`.
pub fn c_p(p: u32) -> BigRat {
    let f = BigRat::from_integer(factorial(u64::from(2 * p - 1)));
    num_traits::pow::pow(int(4 * i64::from(p)), (2 * p - 1) as usize) / (&f * &f)
}

/// `P(x) = prod_{i=1}^{2p-1} (x - h_{i,1})`.
pub fn p_poly(p: u32) -> RatPoly {
    let roots: Vec<BigRat> = (1..2 * i64::from(p)).map(|i| h_int(i, 1, p)).collect();
    RatPoly::from_roots(&roots)
}

fn padd(a: QExpansion, b: QExpansion) -> QExpansion {
    a.add(&b)
}

/// `eta * ch L(c_{p,1}, h_{r,s}) = q^{(ps-r)^2/4p} - q^{(ps+r)^2/4p}`, after
/// bringing `r` into `1..=p` with `(r, s) -> (r - p, s - 1)`.
pub fn virasoro_char_scaled(r: i64, s: i64, p: u32, n: &BigRat) -> Result<QExpansion> {
    let pp = i64::from(p);
    if r < 1 || s < 1 {
        return Err(Error::InvalidParameter(format!(
            "h_{{{r},{s}}} is outside the degenerate range"
        )));
    }
    let (mut r, mut s) = (r, s);
    while r > pp {
        r -= pp;
        s -= 1;
    }
    if s < 1 {
        return Err(Error::InvalidParameter(format!(
            "h_{{{},{}}} reduces below s = 1",
            r + pp,
            s + 1
        )));
    }
    let grain = 4 * u64::from(p);
    let mut out = QExpansion::zero(grain, n);
    let e1 = pp * s - r;
    let e2 = pp * s + r;
    out.add_term(
        &BigRat::new((e1 * e1).into(), (4 * pp).into()),
        BigRat::one(),
    )?;
    out.add_term(
        &BigRat::new((e2 * e2).into(), (4 * pp).into()),
        -BigRat::one(),
    )?;
    Ok(out)
}

/// Eta-scaled character of the Fock module on `e^{(u/2p) alpha}`, `q^{(p-1-u)^2/4p}`.
pub fn fock_char_scaled(u: &BigRat, p: u32, n: &BigRat, grain: u64) -> Result<QExpansion> {
    let pp = int(i64::from(p));
    let a = &pp - BigRat::one() - u;
    let mut out = QExpansion::zero(grain, n);
    out.add_term(&(&a * &a / (int(4) * pp)), BigRat::one())?;
    Ok(out)
}

/// The module families; `sign` is `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Module {
    Lambda0 { i: u32 },
    Lambda { i: u32, j: u32, sign: i8 },
    LambdaM { i: u32 },
    Pi { i: u32, j: u32, sign: i8 },
    PiM { i: u32 },
    R { i: u32, j: u32, k: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleLabel {
    pub p: u32,
    pub m: u32,
    pub module: Module,
}

impl ModuleLabel {
    pub fn new(p: u32, m: u32, module: Module) -> Result<Self> {
        let label = ModuleLabel { p, m, module };
        label.validate()?;
        Ok(label)
    }

    pub fn validate(&self) -> Result<()> {
        let (p, m) = (self.p, self.m);
        let bad = |what: &str| Err(Error::InvalidParameter(format!("{what} for {self}")));
        if p < 2 || m < 1 {
            return bad("need p >= 2 and m >= 1");
        }
        let k = m / 2;
        let even = m.is_multiple_of(2);
        let sign_ok = |s: i8| s == 1 || s == -1;
        match self.module {
            Module::Lambda0 { i } | Module::LambdaM { i } | Module::PiM { i } if i < 1 || i > p => {
                bad("i out of range")
            }
            Module::LambdaM { .. } if !even => bad("Lambda_m needs even m"),
            Module::PiM { .. } if even => bad("Pi_m needs odd m"),
            Module::Lambda { i, j, sign } => {
                let jmax = if even { k.saturating_sub(1) } else { k };
                if i < 1 || i > p || j < 1 || j > jmax || !sign_ok(sign) {
                    bad("index out of range")
                } else {
                    Ok(())
                }
            }
            Module::Pi { i, j, sign } => {
                if i < 1 || i > p || j < 1 || j > k || !sign_ok(sign) {
                    bad("index out of range")
                } else {
                    Ok(())
                }
            }
            Module::R { i, j, k } => {
                if m < 2 || i < 1 || i > m - 1 || j > 2 * p - 1 || k > m - 1 {
                    bad("index out of range")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Every label of the three families, in a fixed order.
    pub fn all(p: u32, m: u32) -> Result<Vec<ModuleLabel>> {
        if p < 2 || m < 1 {
            return Err(Error::InvalidParameter("need p >= 2 and m >= 1".into()));
        }
        let k = m / 2;
        let even = m.is_multiple_of(2);
        let mut mods = Vec::new();
        for i in 1..=p {
            mods.push(Module::Lambda0 { i });
            let jmax = if even { k.saturating_sub(1) } else { k };
            for j in 1..=jmax {
                for sign in [1, -1] {
                    mods.push(Module::Lambda { i, j, sign });
                }
            }
            if even {
                mods.push(Module::LambdaM { i });
            }
            for j in 1..=k {
                for sign in [1, -1] {
                    mods.push(Module::Pi { i, j, sign });
                }
            }
            if !even {
                mods.push(Module::PiM { i });
            }
        }
        for i in 1..m {
            for j in 0..2 * p {
                for kk in 0..m {
                    mods.push(Module::R { i, j, k: kk });
                }
            }
        }
        mods.into_iter()
            .map(|module| ModuleLabel::new(p, m, module))
            .collect()
    }

    pub fn family(&self) -> &'static str {
        match self.module {
            Module::Lambda0 { .. } => "Lambda0",
            Module::Lambda { .. } => "Lambda",
            Module::LambdaM { .. } => "LambdaM",
            Module::Pi { .. } => "Pi",
            Module::PiM { .. } => "PiM",
            Module::R { .. } => "R",
        }
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sgn = |s: i8| if s > 0 { '+' } else { '-' };
        match self.module {
            Module::Lambda0 { i } => write!(f, "Lambda({i})_0"),
            Module::Lambda { i, j, sign } => write!(f, "Lambda({i})^{}_{j}", sgn(sign)),
            Module::LambdaM { i } => write!(f, "Lambda({i})_{}", self.m),
            Module::Pi { i, j, sign } => write!(f, "Pi({i})^{}_{j}", sgn(sign)),
            Module::PiM { i } => write!(f, "Pi({i})_{}", self.m),
            Module::R { i, j, k } => write!(f, "R({i},{j},{k})"),
        }?;
        write!(f, " [p={}, m={}]", self.p, self.m)
    }
}

/// Lowest weight `(x, y)` with top-space dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LowestWeight {
    pub x: BigRat,
    pub y: BigRat,
    pub dim: u32,
}

impl LowestWeight {
    /// `y^2 = C_p P(x)`.
    pub fn satisfies_curve(&self, p: u32) -> bool {
        &self.y * &self.y == c_p(p) * p_poly(p).eval(&self.x)
    }
}

/// Unique `l` in `[-(m-1)p, (m+1)p - 1]` with `l = j + 2p(ms + k)` for some integer `s`.
pub fn r_representative(p: u32, m: u32, j: u32, k: u32) -> Result<i64> {
    let (p, m) = (i64::from(p), i64::from(m));
    let base = i64::from(j) + 2 * p * i64::from(k);
    let period = 2 * p * m;
    let hits: Vec<i64> = (-(m - 1) * p..=(m + 1) * p - 1)
        .filter(|l| (l - base).rem_euclid(period) == 0)
        .collect();
    match hits.as_slice() {
        [l] => Ok(*l),
        _ => Err(Error::InvalidParameter(format!(
            "expected a unique representative, found {hits:?}"
        ))),
    }
}

fn binom_rat(x: &BigRat, n: u32) -> BigRat {
    binom_general(x, n)
}

/// Lowest weight of a module as in the lowest-weight tables.
pub fn lowest_weight(label: &ModuleLabel) -> Result<LowestWeight> {
    label.validate()?;
    let (p, m) = (label.p, label.m);
    let pp = i64::from(p);
    let n = 2 * p - 1;
    let k = i64::from(m / 2);
    let lw = |x: BigRat, y: BigRat, dim: u32| LowestWeight { x, y, dim };
    Ok(match label.module {
        Module::Lambda0 { i } => lw(h_int(i64::from(i), 1, p), BigRat::zero(), 1),
        Module::Lambda { i, j, sign } => {
            let (i, j) = (i64::from(i), i64::from(j));
            let y = binom_rat(&int(-2 * j * pp - 1 + i), n) * int(i64::from(sign));
            lw(h_int(i, 2 * j + 1, p), y, 1)
        }
        Module::LambdaM { i } => {
            let i = i64::from(i);
            lw(
                h_int(i, 2 * k + 1, p),
                binom_rat(&int(-2 * k * pp - 1 + i), n),
                2,
            )
        }
        Module::Pi { i, j, sign } => {
            let (i, j) = (i64::from(i), i64::from(j));
            let y = binom_rat(&int(-(2 * j - 1) * pp - 1 + i), n) * int(i64::from(sign));
            lw(h_int(pp + i, 2 * j + 1, p), y, 1)
        }
        Module::PiM { i } => {
            let i = i64::from(i);
            let y = -binom_rat(&int(-(2 * k + 1) * pp - 1 + i), n);
            lw(h_int(pp + i, 2 * k + 3, p), y, 2)
        }
        Module::R { i, j, k } => {
            let l = r_representative(p, m, j, k)?;
            let u = int(l) - rat(i64::from(i), i64::from(m));
            lw(
                h_weight(&(&u + BigRat::one()), &BigRat::one(), p),
                binom_rat(&u, n),
                1,
            )
        }
    })
}

/// Every label with its lowest weight.
pub fn lowest_weight_table(p: u32, m: u32) -> Result<Vec<(ModuleLabel, LowestWeight)>> {
    ModuleLabel::all(p, m)?
        .into_iter()
        .map(|l| Ok((l, lowest_weight(&l)?)))
        .collect()
}

/// Summary of the census for `(p, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub labels: usize,
    pub distinct_x: usize,
    pub distinct_rows: usize,
    pub curve_ok: bool,
    /// Size of the conformal-weight set with the index ranges read literally.
    pub literal_set_size: usize,
}

pub fn census(p: u32, m: u32) -> Result<Census> {
    let table = lowest_weight_table(p, m)?;
    let xs: BTreeSet<&BigRat> = table.iter().map(|(_, w)| &w.x).collect();
    let rows: BTreeSet<&LowestWeight> = table.iter().map(|(_, w)| w).collect();
    Ok(Census {
        labels: table.len(),
        distinct_x: xs.len(),
        distinct_rows: rows.len(),
        curve_ok: table.iter().all(|(_, w)| w.satisfies_curve(p)),
        literal_set_size: literal_weight_set(p, m).len(),
    })
}

/// The conformal-weight set `S_m` with the index ranges read literally.
pub fn literal_weight_set(p: u32, m: u32) -> BTreeSet<BigRat> {
    let pp = i64::from(p);
    let mm = i64::from(m);
    let k = mm / 2;
    let (lam_j, pi_j) = if m.is_multiple_of(2) {
        (0..=k, 1..=k)
    } else {
        (0..=k - 1, 1..=k + 1)
    };
    let mut out = BTreeSet::new();
    for i in 1..=pp {
        for j in lam_j.clone() {
            out.insert(h_int(i, 2 * j + 1, p));
        }
        for j in pi_j.clone() {
            out.insert(h_int(pp + i, 2 * j + 1, p));
        }
    }
    for l in pp..=(mm + 1) * pp - 1 {
        for i in 1..mm {
            out.insert(h_weight(&(int(l + 1) - rat(i, mm)), &BigRat::one(), p));
        }
    }
    out
}

/// `#{i : 0 <= i <= 2n, m | (n - i)}`, the multiplicity of `L(h_{1,2n+1})` in
/// the fixed subalgebra.
pub fn fixed_multiplicity(n: u64, m: u64) -> u64 {
    assert!(m > 0, "m must be positive");
    (0..=2 * n)
        .filter(|&i| (n as i64 - i as i64).rem_euclid(m as i64) == 0)
        .count() as u64
}

/// `sum_n mult(n) ch L(h_{r, s(n)})` over all `n` whose leading exponent lies below the cutoff.
fn virasoro_sum(
    p: u32,
    n_cut: &BigRat,
    terms: impl Fn(i64) -> Vec<(i64, i64, i64)>,
    start: i64,
) -> Result<QExpansion> {
    let mut out = QExpansion::zero(4 * u64::from(p), n_cut);
    let mut n = start;
    loop {
        let block = terms(n);
        let mut any = false;
        for (mult, r, s) in block {
            let ch = virasoro_char_scaled(r, s, p, n_cut)?;
            if !ch.is_zero() {
                any = true;
                out = out.add(&ch.scale(&int(mult)));
            }
        }
        if !any && n > start {
            return Ok(out);
        }
        n += 1;
    }
}

/// Readings of the `Pi(i)_m` decomposition for odd `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PiMReading {
    /// `(+)_{n>=1} (2n) (+)_{k'} L(h_{i, 2(nm+(m-1)/2+k')+1})`, read literally.
    LiteralFirstIndexI,
    /// The same sum with first index `p+i`, matching the lowest-weight table.
    LiteralFirstIndexPPlusI,
    /// `(+)_{n>=0} (2n+2) (+)_{r=0}^{m-1} L(h_{p+i, 2(nm+k+1+r)+1})`.
    Corrected,
}

/// Character from the Virasoro decompositions.
pub fn char_decomposed(label: &ModuleLabel, n: &BigRat) -> Result<QExpansion> {
    char_decomposed_with(label, n, PiMReading::Corrected)
}

pub fn char_decomposed_with(
    label: &ModuleLabel,
    n: &BigRat,
    reading: PiMReading,
) -> Result<QExpansion> {
    label.validate()?;
    let (p, m) = (label.p, i64::from(label.m));
    let pp = i64::from(p);
    match label.module {
        Module::Lambda0 { i } => {
            let i = i64::from(i);
            virasoro_sum(
                p,
                n,
                |nn| {
                    (0..m)
                        .map(|k| (2 * nn + 1, i, 2 * (nn * m + k) + 1))
                        .collect()
                },
                0,
            )
        }
        Module::Lambda { i, j, .. } => {
            let (i, j) = (i64::from(i), i64::from(j));
            virasoro_sum(
                p,
                n,
                |nn| {
                    let a = (j..m - j).map(move |k| (2 * nn + 1, i, 2 * (nn * m + k) + 1));
                    let b = (m - j..m + j).map(move |k| (2 * nn + 2, i, 2 * (nn * m + k) + 1));
                    a.chain(b).collect()
                },
                0,
            )
        }
        Module::LambdaM { i } => {
            let i = i64::from(i);
            virasoro_sum(
                p,
                n,
                |nn| {
                    (0..m)
                        .map(|k| (2 * nn + 2, i, 2 * (nn * m + m / 2 + k) + 1))
                        .collect()
                },
                0,
            )
        }
        Module::Pi { i, j, .. } => {
            let (r, j) = (pp + i64::from(i), i64::from(j));
            virasoro_sum(
                p,
                n,
                |nn| {
                    let a = (j..=m - j).map(move |k| (2 * nn + 1, r, 2 * (nn * m + k) + 1));
                    let b = (m - j + 1..m + j).map(move |k| (2 * nn + 2, r, 2 * (nn * m + k) + 1));
                    a.chain(b).collect()
                },
                0,
            )
        }
        Module::PiM { i } => {
            let i = i64::from(i);
            let k = (m - 1) / 2;
            match reading {
                PiMReading::LiteralFirstIndexI | PiMReading::LiteralFirstIndexPPlusI => {
                    let r = if reading == PiMReading::LiteralFirstIndexI {
                        i
                    } else {
                        pp + i
                    };
                    virasoro_sum(
                        p,
                        n,
                        |nn| {
                            (0..m)
                                .map(|kk| (2 * nn, r, 2 * (nn * m + k + kk) + 1))
                                .collect()
                        },
                        1,
                    )
                }
                PiMReading::Corrected => virasoro_sum(
                    p,
                    n,
                    |nn| {
                        (0..m)
                            .map(|r| (2 * nn + 2, pp + i, 2 * (nn * m + k + 1 + r) + 1))
                            .collect()
                    },
                    0,
                ),
            }
        }
        Module::R { i, j, k } => {
            // Fock modules on u_s = j - i/m + 2p(ms + k), s in Z
            let grain = 4 * u64::from(p) * (label.m as u64).pow(2);
            let mut out = QExpansion::zero(grain, n);
            let base = int(i64::from(j)) - rat(i64::from(i), m) + int(2 * pp * i64::from(k));
            for dir in [1i64, -1] {
                let mut s = if dir > 0 { 0 } else { -1 };
                loop {
                    let u = &base + int(2 * pp * m * s);
                    let ch = fock_char_scaled(&u, p, n, grain)?;
                    if ch.is_zero() && (dir * s) > 0 {
                        break;
                    }
                    out = out.add(&ch);
                    s += dir;
                }
            }
            Ok(out)
        }
    }
}

fn sum_p(indices: impl Iterator<Item = i64>, k: u32, n: &BigRat) -> QExpansion {
    let grain = 4 * u64::from(k);
    indices.fold(QExpansion::zero(grain, n), |acc, l| {
        padd(acc, p_hat(l, k, n))
    })
}

fn sum_q(indices: impl Iterator<Item = i64>, k: u32, n: &BigRat) -> QExpansion {
    let grain = 4 * u64::from(k);
    indices.fold(QExpansion::zero(grain, n), |acc, l| {
        padd(acc, q_hat(l, k, n))
    })
}

/// Closed theta form of the character.
pub fn char_closed(label: &ModuleLabel, n: &BigRat) -> Result<QExpansion> {
    label.validate()?;
    let (p, m) = (i64::from(label.p), i64::from(label.m));
    let kk = label.p * label.m * label.m;
    let idx = move |i: i64, l: i64| m * (p - i + 2 * p * l);
    let pidx = move |i: i64, l: i64| (2 * p * l - i) * m;
    Ok(match label.module {
        Module::Lambda0 { i } => sum_p((0..m).map(|l| idx(i64::from(i), l)), kk, n),
        Module::Lambda { i, j, .. } => {
            let (i, j) = (i64::from(i), i64::from(j));
            padd(
                sum_p((j..m - j).map(|l| idx(i, l)), kk, n),
                sum_q((-j..j).map(|l| idx(i, l)), kk, n),
            )
        }
        Module::LambdaM { i } => {
            let i = i64::from(i);
            sum_q((-m / 2..m / 2).map(|l| idx(i, l)), kk, n)
        }
        Module::Pi { i, j, .. } => {
            let (i, j) = (i64::from(i), i64::from(j));
            padd(
                sum_p((j..=m - j).map(|l| pidx(i, l)), kk, n),
                sum_q((1 - j..j).map(|l| pidx(i, l)), kk, n),
            )
        }
        Module::PiM { i } => {
            let i = i64::from(i);
            let k = (m - 1) / 2;
            sum_q((-k..=k).map(|l| pidx(i, l)), kk, n)
        }
        Module::R { i, j, k } => {
            let lam = m * (p - 1 - i64::from(j) - 2 * i64::from(k) * p) + i64::from(i);
            theta(lam, kk, n)
        }
    })
}

/// The closed forms for `Lambda(i)_m` and `Pi(i)_m` read literally, with
/// `None` returned for the other families, whose literal and implemented forms coincide.
pub fn char_closed_literal(label: &ModuleLabel, n: &BigRat) -> Result<Option<QExpansion>> {
    label.validate()?;
    let (p, m) = (i64::from(label.p), i64::from(label.m));
    let kk = label.p * label.m * label.m;
    let big = i64::from(kk);
    Ok(match label.module {
        Module::LambdaM { i } => {
            let i = i64::from(i);
            Some(sum_q((0..m).map(|l| m * i - big + 2 * p * m * l), kk, n))
        }
        Module::PiM { i } => {
            let i = i64::from(i);
            Some(sum_q(
                (0..m).map(|l| (p - 2 * m - i) * m + 2 * p * m * l),
                kk,
                n,
            ))
        }
        _ => None,
    })
}

/// Eta-scaled vacuum character from the fixed multiplicities
/// `sum_n fixed_multiplicity(n, m) ch L(h_{1,2n+1})`.
pub fn vacuum_from_fixed_multiplicities(p: u32, m: u32, n: &BigRat) -> Result<QExpansion> {
    virasoro_sum(
        p,
        n,
        |nn| {
            vec![(
                fixed_multiplicity(nn as u64, u64::from(m)) as i64,
                1,
                2 * nn + 1,
            )]
        },
        0,
    )
}

/// The displayed telescoping form of the vacuum character,
/// `sum_{l=0}^{m-1} ( sum_{n>=0} (2n+1) q^{p(mn+l+(p-1)/2p)^2} - sum_{n>=1} (2n-1) q^{p(mn-(m-1-l)-(p-1)/2p)^2} )`.
pub fn vacuum_displayed(p: u32, m: u32, n: &BigRat) -> Result<QExpansion> {
    let pp = int(i64::from(p));
    let shift = rat(i64::from(p) - 1, 2 * i64::from(p));
    let mm = i64::from(m);
    let mut out = QExpansion::zero(4 * u64::from(p), n);
    for l in 0..mm {
        for nn in 0i64.. {
            let a = int(mm * nn + l) + &shift;
            let e = &pp * &a * &a;
            if &e >= n {
                break;
            }
            out.add_term(&e, int(2 * nn + 1))?;
        }
        for nn in 1i64.. {
            let a = int(mm * nn - (mm - 1 - l)) - &shift;
            let e = &pp * &a * &a;
            if &e >= n && nn > 1 {
                break;
            }
            out.add_term(&e, int(-(2 * nn - 1)))?;
        }
    }
    Ok(out)
}

/// Closed form of the vacuum character, `sum_{j=0}^{m-1} P_{m((2j+1)p-1), pm^2}`.
pub fn vacuum_closed(p: u32, m: u32, n: &BigRat) -> QExpansion {
    let (pp, mm) = (i64::from(p), i64::from(m));
    sum_p((0..mm).map(|j| mm * ((2 * j + 1) * pp - 1)), p * m * m, n)
}

/// A row of the `m = 2` table in its own parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Row {
    pub name: String,
    pub weight: LowestWeight,
}

/// The `m = 2` lowest-weight table: `Lambda(i)_0`, `Lambda(i)_2`, `Pi(i)_1^{+-}`, `R(j)`.
pub fn m2_table(p: u32) -> Result<Vec<M2Row>> {
    if p < 2 {
        return Err(Error::InvalidParameter("p must be at least 2".into()));
    }
    let pp = i64::from(p);
    let n = 2 * p - 1;
    let mut rows = Vec::new();
    let row = |name: String, x: BigRat, y: BigRat, dim: u32| M2Row {
        name,
        weight: LowestWeight { x, y, dim },
    };
    for i in 1..=pp {
        rows.push(row(
            format!("Lambda({i})_0"),
            h_int(i, 1, p),
            BigRat::zero(),
            1,
        ));
        rows.push(row(
            format!("Lambda({i})_2"),
            h_int(i, 3, p),
            binom_rat(&int(-2 * pp - 1 + i), n),
            2,
        ));
        for (s, sign) in [("+", 1), ("-", -1)] {
            rows.push(row(
                format!("Pi({i})_1^{s}"),
                h_int(3 * pp - i, 1, p),
                binom_rat(&int(-pp - 1 + i), n) * int(sign),
                1,
            ));
        }
    }
    for j in 1..=4 * pp {
        let s = int(3 * pp - j) + rat(1, 2);
        rows.push(row(
            format!("R({j})"),
            h_weight(&s, &BigRat::one(), p),
            binom_rat(&(&s - BigRat::one()), n),
            1,
        ));
    }
    Ok(rows)
}

/// Whether the `m = 2` table and `lowest_weight_table(p, 2)` agree as multisets.
pub fn m2_table_consistent(p: u32) -> Result<bool> {
    let mut a: Vec<LowestWeight> = m2_table(p)?.into_iter().map(|r| r.weight).collect();
    let mut b: Vec<LowestWeight> = lowest_weight_table(p, 2)?
        .into_iter()
        .map(|(_, w)| w)
        .collect();
    a.sort();
    b.sort();
    Ok(a == b)
}

/// A table row as exact-fraction fields: label, family, x, y, dim.
pub fn table_record(label: &ModuleLabel, w: &LowestWeight) -> [String; 5] {
    let mut name = label.to_string();
    if let Some(pos) = name.find(" [") {
        name.truncate(pos);
    }
    [
        name,
        label.family().to_string(),
        frac_string(&w.x),
        frac_string(&w.y),
        w.dim.to_string(),
    ]
}
