//! Truncated q-series with rational exponents, theta functions and eta.
//!
//! A [`QExpansion`] stores exponents as integers over a common grain `D`, so
//! `q^{a/D}` is the key `a`. Its cutoff is absolute: every exponent below the
//! cutoff is exact and nothing at or above it is stored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{frac_string, int, parse_frac, BigRat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct QExpansion {
    grain: u64,
    terms: BTreeMap<i64, BigRat>,
    /// Exclusive cutoff, in units of `1/grain`.
    cutoff: i64,
}

fn scaled(x: &BigRat, grain: u64) -> Result<i64> {
    let s = x * BigRat::from_integer(BigInt::from(grain));
    if !s.is_integer() {
        return Err(Error::InvalidParameter(format!(
            "exponent {x} is not a multiple of 1/{grain}"
        )));
    }
    s.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvalidParameter(format!("exponent {x} too large")))
}

impl QExpansion {
    /// Zero series at grain `grain` exact below `cutoff`; the cutoff is rounded
    /// up to the grain.
    pub fn zero(grain: u64, cutoff: &BigRat) -> Self {
        assert!(grain > 0, "grain must be positive");
        let c = cutoff * BigRat::from_integer(BigInt::from(grain));
        QExpansion {
            grain,
            terms: BTreeMap::new(),
            cutoff: c.ceil().to_integer().to_i64().expect("cutoff fits in i64"),
        }
    }

    pub fn grain(&self) -> u64 {
        self.grain
    }

    pub fn cutoff(&self) -> BigRat {
        BigRat::new(self.cutoff.into(), self.grain.into())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Adds `c q^e`; terms at or beyond the cutoff are ignored.
    pub fn add_term(&mut self, e: &BigRat, c: BigRat) -> Result<()> {
        let k = scaled(e, self.grain)?;
        self.add_scaled(k, c);
        Ok(())
    }

    fn add_scaled(&mut self, k: i64, c: BigRat) {
        if k >= self.cutoff || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, e: &BigRat) -> BigRat {
        scaled(e, self.grain)
            .ok()
            .and_then(|k| self.terms.get(&k).cloned())
            .unwrap_or_else(BigRat::zero)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (BigRat, &BigRat)> + '_ {
        let g = BigInt::from(self.grain);
        self.terms
            .iter()
            .map(move |(&k, c)| (BigRat::new(k.into(), g.clone()), c))
    }

    /// Terms keyed by exponent times the grain.
    pub fn scaled_terms(&self) -> &BTreeMap<i64, BigRat> {
        &self.terms
    }

    pub fn leading_exponent(&self) -> Option<BigRat> {
        self.terms
            .keys()
            .next()
            .map(|&k| BigRat::new(k.into(), self.grain.into()))
    }

    /// Re-expresses the series at a finer grain, a multiple of the current one.
    pub fn refine(&self, grain: u64) -> Result<Self> {
        if !grain.is_multiple_of(self.grain) {
            return Err(Error::InvalidParameter(format!(
                "grain {grain} is not a multiple of {}",
                self.grain
            )));
        }
        let f = (grain / self.grain) as i64;
        Ok(QExpansion {
            grain,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k * f, c.clone()))
                .collect(),
            cutoff: self.cutoff * f,
        })
    }

    /// Smallest grain that still represents every exponent and the cutoff.
    pub fn coarsen(&self) -> Self {
        let g = self
            .terms
            .keys()
            .fold(self.cutoff.unsigned_abs().gcd(&self.grain), |g, &k| {
                g.gcd(&k.unsigned_abs())
            });
        let g = g.max(1);
        QExpansion {
            grain: self.grain / g,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k / g as i64, c.clone()))
                .collect(),
            cutoff: self.cutoff / g as i64,
        }
    }

    /// Both series at the lcm of their grains.
    pub fn unify(&self, other: &Self) -> (Self, Self) {
        let g = self.grain.lcm(&other.grain);
        (self.refine(g).unwrap(), other.refine(g).unwrap())
    }

    /// Drops everything at or beyond `cutoff` (rounded up to the grain).
    pub fn truncate(&self, cutoff: &BigRat) -> Self {
        let c = (cutoff * BigRat::from_integer(BigInt::from(self.grain)))
            .ceil()
            .to_integer()
            .to_i64()
            .expect("cutoff fits in i64")
            .min(self.cutoff);
        QExpansion {
            grain: self.grain,
            terms: self
                .terms
                .range(..c)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
            cutoff: c,
        }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        let mut out = QExpansion {
            grain: self.grain,
            terms: BTreeMap::new(),
            cutoff: self.cutoff,
        };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(&k, v)| (k, v * c)).collect();
        }
        out
    }

    /// Sum, exact below the smaller cutoff.
    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.unify(other);
        a.cutoff = a.cutoff.min(b.cutoff);
        a.terms = a
            .terms
            .range(..a.cutoff)
            .map(|(&k, v)| (k, v.clone()))
            .collect();
        for (&k, v) in &b.terms {
            a.add_scaled(k, v.clone());
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRat::one()))
    }

    /// Product. With leading exponents `ea`, `eb` the result is exact below
    /// `min(cutoff_a + eb, cutoff_b + ea)`.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        let cutoff = match (a.terms.keys().next(), b.terms.keys().next()) {
            (Some(&ea), Some(&eb)) => (a.cutoff + eb).min(b.cutoff + ea),
            _ => a.cutoff.min(b.cutoff),
        };
        let mut out = QExpansion {
            grain: a.grain,
            terms: BTreeMap::new(),
            cutoff,
        };
        for (&ka, va) in &a.terms {
            for (&kb, vb) in &b.terms {
                if ka + kb >= cutoff {
                    break;
                }
                out.add_scaled(ka + kb, va * vb);
            }
        }
        out
    }

    /// Multiplicative inverse, `q^{-e0} / (c0 (1 + ...))`; exact below
    /// `cutoff - 2 e0`.
    pub fn inverse(&self) -> Result<Self> {
        let (&e0, c0) = self
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::InvalidParameter("inverse of the zero series".into()))?;
        let width = self.cutoff - e0;
        // u = self / (c0 q^e0) = 1 + sum_{k>0} u_k q^k, invert term by term
        let u: BTreeMap<i64, BigRat> = self.terms.iter().map(|(&k, v)| (k - e0, v / c0)).collect();
        let mut inv: BTreeMap<i64, BigRat> = BTreeMap::new();
        inv.insert(0, BigRat::one());
        let keys: Vec<i64> = (1..width).collect();
        for &n in &keys {
            let mut s = BigRat::zero();
            for (&k, uk) in u.range(1..=n) {
                if let Some(v) = inv.get(&(n - k)) {
                    s -= uk * v;
                }
            }
            if !s.is_zero() {
                inv.insert(n, s);
            }
        }
        let c0inv = c0.recip();
        Ok(QExpansion {
            grain: self.grain,
            terms: inv.into_iter().map(|(k, v)| (k - e0, v * &c0inv)).collect(),
            cutoff: width - e0,
        })
    }

    /// First exponent below both cutoffs where the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<BigRat> {
        let d = self.sub(other);
        d.leading_exponent()
    }

    /// Equal below the smaller cutoff.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// Serialized as `(exponent, coefficient)` fraction strings.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms()
            .map(|(e, c)| (frac_string(&e), frac_string(c)))
            .collect()
    }

    pub fn from_pairs(grain: u64, cutoff: &BigRat, pairs: &[(String, String)]) -> Result<Self> {
        let mut s = QExpansion::zero(grain, cutoff);
        for (e, c) in pairs {
            s.add_term(&parse_frac(e)?, parse_frac(c)?)?;
        }
        Ok(s)
    }
}

impl fmt::Debug for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [grain {}, cutoff {}]", self.grain, self.cutoff())
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            write!(f, "{}*q^({e})", c.abs())?;
        }
        Ok(())
    }
}

/// `a(q) + tau * b(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauVector {
    pub a: QExpansion,
    pub b: QExpansion,
}

impl TauVector {
    pub fn new(a: QExpansion, b: QExpansion) -> Self {
        let (a, b) = a.unify(&b);
        let c = a.cutoff().min(b.cutoff());
        TauVector {
            a: a.truncate(&c),
            b: b.truncate(&c),
        }
    }

    /// A function with no `tau` part.
    pub fn plain(a: QExpansion) -> Self {
        let b = QExpansion::zero(a.grain, &a.cutoff());
        TauVector { a, b }
    }

    /// `tau * b`.
    pub fn tau_times(b: QExpansion) -> Self {
        let a = QExpansion::zero(b.grain, &b.cutoff());
        TauVector { a, b }
    }

    pub fn add(&self, other: &Self) -> Self {
        TauVector::new(self.a.add(&other.a), self.b.add(&other.b))
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        TauVector {
            a: self.a.scale(c),
            b: self.b.scale(c),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

fn cutoff_key(n: &BigRat, grain: u64) -> i64 {
    (n * BigRat::from_integer(BigInt::from(grain)))
        .ceil()
        .to_integer()
        .to_i64()
        .expect("cutoff fits in i64")
}

/// Weighted lattice sum `sum_{m in lambda + 2k Z} w(m) q^{m^2/(4k)}`, with
/// `m = 2kn` for `n in Z + lambda/(2k)`.
fn lattice_sum(lambda: i64, k: u32, n: &BigRat, weight: impl Fn(i64) -> BigRat) -> QExpansion {
    assert!(k > 0, "k must be positive");
    let k = i64::from(k);
    let grain = (4 * k) as u64;
    let mut out = QExpansion::zero(grain, n);
    let cut = cutoff_key(n, grain);
    let r = lambda.rem_euclid(2 * k);
    // m runs over r + 2k j; walk outwards from the two smallest |m|
    for start in [r, r - 2 * k] {
        let step = if start >= 0 { 2 * k } else { -2 * k };
        let mut m = start;
        while m * m < cut {
            out.add_scaled(m * m, weight(m));
            m += step;
        }
    }
    out
}

/// `Theta_{lambda,k} = sum_{n in Z + lambda/2k} q^{k n^2}`, exact below `n`.
pub fn theta(lambda: i64, k: u32, n: &BigRat) -> QExpansion {
    lattice_sum(lambda, k, n, |_| BigRat::one())
}

/// `dTheta_{lambda,k} = sum_{n in Z + lambda/2k} 2kn q^{k n^2}`.
pub fn dtheta(lambda: i64, k: u32, n: &BigRat) -> QExpansion {
    lattice_sum(lambda, k, n, int)
}

/// Both sides of `(1/m) sum_{j<m} dTheta_{sm+2pmj, pm^2} = dTheta_{s,p}`, exact below `n`.
/// With `literal_index` the summands are `dTheta_{sm+2pj, pm^2}` instead,
/// which only tiles the lattice for `m = 1`.
pub fn dtheta_resummation(
    s: i64,
    p: u32,
    m: u32,
    n: &BigRat,
    literal_index: bool,
) -> (QExpansion, QExpansion) {
    let (pp, mm) = (i64::from(p), i64::from(m));
    let k = p * m * m;
    let step = if literal_index { 2 * pp } else { 2 * pp * mm };
    let lhs = (0..mm)
        .map(|j| dtheta(s * mm + step * j, k, n))
        .fold(QExpansion::zero(4 * u64::from(k), n), |acc, t| acc.add(&t))
        .scale(&BigRat::new(1.into(), mm.into()));
    (lhs, dtheta(s, p, n))
}

/// `eta * P_{lambda,k} = ((k - lambda) Theta + dTheta) / k`.
pub fn p_hat(lambda: i64, k: u32, n: &BigRat) -> QExpansion {
    let kk = int(i64::from(k));
    theta(lambda, k, n)
        .scale(&(int(i64::from(k) - lambda)))
        .add(&dtheta(lambda, k, n))
        .scale(&kk.recip())
}

/// `eta * Q_{lambda,k} = (-lambda Theta + dTheta) / k`.
pub fn q_hat(lambda: i64, k: u32, n: &BigRat) -> QExpansion {
    let kk = int(i64::from(k));
    theta(lambda, k, n)
        .scale(&int(-lambda))
        .add(&dtheta(lambda, k, n))
        .scale(&kk.recip())
}

/// `eta = q^{1/24} prod_{n>=1} (1 - q^n)`, exact below `1/24 + n`.
pub fn eta(n: &BigRat) -> QExpansion {
    let grain = 24u64;
    let width = cutoff_key(n, 1);
    // prod (1 - q^j) as integer coefficients up to q^{width-1}
    let mut c = vec![BigInt::zero(); width.max(1) as usize];
    c[0] = BigInt::one();
    for j in 1..width as usize {
        for e in (j..c.len()).rev() {
            let v = c[e - j].clone();
            c[e] -= v;
        }
    }
    let mut out = QExpansion::zero(grain, &(n + BigRat::new(1.into(), 24.into())));
    for (e, v) in c.into_iter().enumerate() {
        out.add_scaled(1 + 24 * e as i64, BigRat::from_integer(v));
    }
    out
}

/// Euler's pentagonal series `sum_n (-1)^n q^{n(3n-1)/2}`, exact below `n`.
pub fn pentagonal(n: &BigRat) -> QExpansion {
    let mut out = QExpansion::zero(1, n);
    let cut = cutoff_key(n, 1);
    for j in 0i64.. {
        let a = j * (3 * j - 1) / 2;
        let b = j * (3 * j + 1) / 2;
        if a >= cut {
            break;
        }
        let s = if j % 2 == 0 { int(1) } else { int(-1) };
        out.add_scaled(a, s.clone());
        if j > 0 {
            out.add_scaled(b, s);
        }
    }
    out
}

/// `q^{e}` exactly, at the given grain and cutoff.
pub fn monomial(e: &BigRat, grain: u64, cutoff: &BigRat) -> Result<QExpansion> {
    let mut out = QExpansion::zero(grain, cutoff);
    out.add_term(e, BigRat::one())?;
    Ok(out)
}
