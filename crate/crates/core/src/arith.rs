//! Exact rational scalars and dense univariate polynomials.
//!
//! [`BigRat`] is the coefficient field of the whole crate. [`TPoly`] carries the
//! formal parameter `t` of the constant-term identities and [`RatPoly`] the
//! variable `x` of the Zhu-algebra relations; both are the same dense
//! representation tagged with a different indeterminate.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type BigRat = BigRational;

pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `num/den` rendering used by every serialized report; integers keep the `/1`.
pub fn frac_string(x: &BigRat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_frac(s: &str) -> Result<BigRat> {
    let bad = || Error::Parse(format!("not an exact fraction: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRat::new(n, d))
}

/// Name of the indeterminate a [`DensePoly`] is written in.
pub trait Indeterminate: Clone + fmt::Debug + Send + Sync + 'static {
    const SYMBOL: &'static str;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarT;
impl Indeterminate for VarT {
    const SYMBOL: &'static str = "t";
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarX;
impl Indeterminate for VarX {
    const SYMBOL: &'static str = "x";
}

/// Dense polynomial with [`BigRat`] coefficients; `coeffs[i]` multiplies the i-th power.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector and `degree()` is read off the length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly<X: Indeterminate> {
    coeffs: Vec<BigRat>,
    _var: PhantomData<X>,
}

pub type TPoly = DensePoly<VarT>;
pub type RatPoly = DensePoly<VarX>;

impl<X: Indeterminate> DensePoly<X> {
    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly {
            coeffs,
            _var: PhantomData,
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::from_coeffs(Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![BigRat::zero(), BigRat::one()])
    }

    /// `x + c`.
    pub fn var_plus(c: BigRat) -> Self {
        Self::from_coeffs(vec![c, BigRat::one()])
    }

    /// `a*x + b` with integer `a`, `b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_coeffs(vec![int(b), int(a)])
    }

    /// Monic polynomial with the given roots (with multiplicity).
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a BigRat>) -> Self {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::var_plus(-r.clone()))
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitutes `x -> x + c`.
    pub fn shift(&self, c: &BigRat) -> Self {
        let step = Self::var_plus(c.clone());
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            &(&acc * &step) + &Self::constant(a.clone())
        })
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidParameter("polynomial division by zero".into()))?;
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let q = &rem[rem.len() - 1] / &lc;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            quot[shift] = q;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }
}

/// Monic gcd by the Euclidean algorithm. Rejects two zero inputs.
pub fn poly_gcd<X: Indeterminate>(f: &DensePoly<X>, g: &DensePoly<X>) -> Result<DensePoly<X>> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidParameter(
            "gcd of two zero polynomials".into(),
        ));
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

pub fn ratpoly_gcd(f: &RatPoly, g: &RatPoly) -> Result<RatPoly> {
    poly_gcd(f, g)
}

impl<X: Indeterminate> Default for DensePoly<X> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<X: Indeterminate> From<BigRat> for DensePoly<X> {
    fn from(c: BigRat) -> Self {
        Self::constant(c)
    }
}

impl<X: Indeterminate> Add for &DensePoly<X> {
    type Output = DensePoly<X>;
    fn add(self, rhs: Self) -> DensePoly<X> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<X: Indeterminate> Sub for &DensePoly<X> {
    type Output = DensePoly<X>;
    fn sub(self, rhs: Self) -> DensePoly<X> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<X: Indeterminate> Mul for &DensePoly<X> {
    type Output = DensePoly<X>;
    fn mul(self, rhs: Self) -> DensePoly<X> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl<X: Indeterminate> Neg for &DensePoly<X> {
    type Output = DensePoly<X>;
    fn neg(self) -> DensePoly<X> {
        DensePoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<X: Indeterminate> Add for DensePoly<X> {
    type Output = DensePoly<X>;
    fn add(self, rhs: Self) -> DensePoly<X> {
        &self + &rhs
    }
}

impl<X: Indeterminate> Sub for DensePoly<X> {
    type Output = DensePoly<X>;
    fn sub(self, rhs: Self) -> DensePoly<X> {
        &self - &rhs
    }
}

impl<X: Indeterminate> Mul for DensePoly<X> {
    type Output = DensePoly<X>;
    fn mul(self, rhs: Self) -> DensePoly<X> {
        &self * &rhs
    }
}

impl<X: Indeterminate> Neg for DensePoly<X> {
    type Output = DensePoly<X>;
    fn neg(self) -> DensePoly<X> {
        -&self
    }
}

impl<X: Indeterminate> AddAssign<&DensePoly<X>> for DensePoly<X> {
    fn add_assign(&mut self, rhs: &DensePoly<X>) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRat::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl<X: Indeterminate> SubAssign<&DensePoly<X>> for DensePoly<X> {
    fn sub_assign(&mut self, rhs: &DensePoly<X>) {
        *self += &(-rhs);
    }
}

impl<X: Indeterminate> fmt::Debug for DensePoly<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<X: Indeterminate> fmt::Display for DensePoly<X> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let var = X::SYMBOL;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{var}")?,
                (1, false) => write!(f, "{mag}*{var}")?,
                (_, true) => write!(f, "{var}^{i}")?,
                (_, false) => write!(f, "{mag}*{var}^{i}")?,
            }
        }
        Ok(())
    }
}

/// Values that can appear as the upper argument of a generalized binomial or
/// as the base of a Pochhammer symbol.
pub trait BinomialArg: Clone {
    fn unit() -> Self;
    /// `self + by`.
    fn offset(&self, by: i64) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn div_integer(&self, d: &BigInt) -> Self;
}

impl BinomialArg for BigRat {
    fn unit() -> Self {
        BigRat::one()
    }
    fn offset(&self, by: i64) -> Self {
        self + int(by)
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn div_integer(&self, d: &BigInt) -> Self {
        self / BigRat::from_integer(d.clone())
    }
}

impl<X: Indeterminate> BinomialArg for DensePoly<X> {
    fn unit() -> Self {
        Self::one()
    }
    fn offset(&self, by: i64) -> Self {
        self + &Self::constant(int(by))
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn div_integer(&self, d: &BigInt) -> Self {
        self.scale(&BigRat::from_integer(d.clone()).recip())
    }
}

/// Falling factorial `x (x-1) ... (x-n+1)`.
pub fn falling<A: BinomialArg>(x: &A, n: u32) -> A {
    (0..n).fold(A::unit(), |acc, j| acc.times(&x.offset(-(j as i64))))
}

/// `binom(x, n) = x (x-1) ... (x-n+1) / n!`, valid for any rational or polynomial `x`.
pub fn binom_general<A: BinomialArg>(x: &A, n: u32) -> A {
    falling(x, n).div_integer(&factorial(n as u64))
}

/// Rising factorial `(x)_a = x (x+1) ... (x+a-1)`.
pub fn pochhammer<A: BinomialArg>(x: &A, a: u32) -> A {
    (0..a).fold(A::unit(), |acc, j| acc.times(&x.offset(j as i64)))
}

/// Integer-argument binomial with the falling-factorial convention for any
/// sign of `n`; zero for negative `k`.
pub fn binom(n: i64, k: i64) -> BigRat {
    if k < 0 {
        return BigRat::zero();
    }
    binom_general(&int(n), k as u32)
}

/// `binom(t + shift, k)` as a polynomial in `t`; zero for negative `k`.
pub fn binom_t(shift: i64, k: i64) -> TPoly {
    if k < 0 {
        return TPoly::zero();
    }
    binom_general(&TPoly::linear(1, shift), k as u32)
}

pub fn poch_int(x: i64, a: u32) -> BigRat {
    pochhammer(&int(x), a)
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a BigRat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_general_examples() {
        assert_eq!(binom_general(&rat(5, 2), 2), rat(15, 8));
        assert_eq!(binom_general(&rat(7, 3), 0), int(1));
        assert_eq!(binom_general(&int(3), 5), int(0));
        // negative upper argument: binom(-4, 1) = -4
        assert_eq!(binom(-4, 1), int(-4));
        assert_eq!(binom(-2, 3), int(-4));
        assert_eq!(binom(5, -1), int(0));
    }

    #[test]
    fn binom_over_tpoly_has_degree_n() {
        let b = binom_general(&TPoly::var(), 4);
        assert_eq!(b.degree(), Some(4));
        assert_eq!(b.eval(&int(6)), int(15));
        assert_eq!(binom_t(2, 3).eval(&int(1)), int(1));
        assert_eq!(binom_t(0, 0), TPoly::one());
        assert!(binom_t(0, -2).is_zero());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&int(2), 3), int(24));
        assert_eq!(pochhammer(&TPoly::var(), 1), TPoly::var());
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&int(-3), 3), int(-6));
        assert_eq!(pochhammer(&int(-3), 0), int(1));
    }

    #[test]
    fn gcd_examples() {
        let f = RatPoly::from_ints(&[-1, 0, 1]);
        let g = RatPoly::from_ints(&[-1, 1]);
        assert_eq!(ratpoly_gcd(&f, &g).unwrap(), g);
        let s = RatPoly::from_ints(&[28, 17]);
        let r = RatPoly::from_ints(&[42, -25, 10]);
        assert_eq!(ratpoly_gcd(&s, &r).unwrap(), RatPoly::one());
        let f = RatPoly::from_ints(&[4, 2]);
        assert_eq!(ratpoly_gcd(&f, &RatPoly::zero()).unwrap(), f.monic());
        assert!(ratpoly_gcd(&RatPoly::zero(), &RatPoly::zero()).is_err());
    }

    #[test]
    fn division_and_display() {
        let f = RatPoly::from_ints(&[-1, 0, 0, 1]);
        let g = RatPoly::from_ints(&[-1, 1]);
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q, RatPoly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(format!("{}", RatPoly::from_ints(&[28, 17])), "17*x + 28");
        assert_eq!(format!("{}", TPoly::from_ints(&[0, -1, 1])), "t^2 - t");
        assert!(f.div_rem(&RatPoly::zero()).is_err());
    }

    #[test]
    fn shift_matches_substitution() {
        let f = RatPoly::from_ints(&[3, -2, 5]);
        let c = rat(1, 3);
        let g = f.shift(&c);
        for x in [int(0), int(2), rat(-7, 5)] {
            assert_eq!(g.eval(&x), f.eval(&(&x + &c)));
        }
    }

    #[test]
    fn fractions_round_trip_text() {
        assert_eq!(frac_string(&int(3)), "3/1");
        assert_eq!(frac_string(&rat(-6, 4)), "-3/2");
        assert_eq!(parse_frac("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_frac("7").unwrap(), int(7));
        assert!(parse_frac("1/0").is_err());
        assert!(parse_frac("x").is_err());
    }
}
