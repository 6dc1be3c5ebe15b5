//! Constant-term quantities: the Morris constant term, `C_{m,p}`, the residue
//! polynomials `S(t,r,p)` and the coefficient data of `g(x_0)`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use crate::arith::{binom, binom_t, factorial, int, BigRat, TPoly};
use crate::error::{Error, Result};
use crate::laurent::{
    vandermonde_power, Base, Exponent, ExtractOptions, Extraction, Integrand, Target, Window,
};

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    Unequal,
    ClosedFormUnknown,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::Unequal => "unequal",
            Verdict::ClosedFormUnknown => "closed-form-unknown",
        }
    }
}

/// A computed value or polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CtValue {
    Scalar(BigRat),
    Poly(TPoly),
}

#[derive(Clone, Debug)]
pub struct CtReport {
    pub identity: String,
    pub m: Option<u32>,
    pub p: u32,
    pub r: Option<u32>,
    pub computed: CtValue,
    pub closed_form: Option<CtValue>,
    pub verdict: Verdict,
    /// Extracted constants such as `A_p`, by name.
    pub constants: Vec<(String, BigRat)>,
    pub windows: Vec<(String, Window)>,
    pub wall_time: Duration,
}

/// A value together with the windows the engine inferred for it.
#[derive(Clone, Debug)]
pub struct Computed<T> {
    pub value: T,
    pub windows: Vec<(String, Window)>,
    pub peak_terms: usize,
}

impl<T> Computed<T> {
    fn from_extraction(value: T, ex: &Extraction) -> Self {
        Computed {
            value,
            windows: ex.windows.clone(),
            peak_terms: ex.peak_terms,
        }
    }
}

fn neg_one_pow(e: i64) -> BigRat {
    if e.rem_euclid(2) == 0 {
        BigRat::one()
    } else {
        -BigRat::one()
    }
}

fn fact(n: i64) -> BigRat {
    BigRat::from_integer(factorial(n as u64))
}

/// The Morris product `(-1)^{mp} prod_{i=0}^{2m-1} binom((-2m+i)p, p-1) (p-1)! ((i+1)p)! / ((p-1+ip)! p!)`.
pub fn morris_formula(m: u32, p: u32) -> BigRat {
    let (m, p) = (i64::from(m), i64::from(p));
    (0..2 * m).fold(neg_one_pow(m * p), |acc, i| {
        acc * binom((-2 * m + i) * p, p - 1) * fact(p - 1) * fact((i + 1) * p)
            / (fact(p - 1 + i * p) * fact(p))
    })
}

/// `C_{m,p} = (-1)^{mp} prod_{i=0}^{2m-1} binom((-2m+i)p, p-1) ((i+1)p)! / ((p-1+ip)! p)`.
pub fn c_mp(m: u32, p: u32) -> BigRat {
    let (m, p) = (i64::from(m), i64::from(p));
    (0..2 * m).fold(neg_one_pow(m * p), |acc, i| {
        acc * binom((-2 * m + i) * p, p - 1) * fact((i + 1) * p) / (fact(p - 1 + i * p) * int(p))
    })
}

/// `morris_formula / c_mp`; each factor carries `(p-1)!/p! = 1/p`, so this is 1.
pub fn c_mp_ratio(m: u32, p: u32) -> BigRat {
    morris_formula(m, p) / c_mp(m, p)
}

/// `Res_{x_1..x_{2m}} (x_1..x_{2m})^{-2mp} Delta^{2p} prod (1 - x_i)^{-2mp}`.
pub fn morris_integrand(m: u32, p: u32) -> Integrand {
    let n = 2 * m as usize;
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut ig = Integrand::new(&refs);
    let e = i64::from(2 * m * p);
    for f in vandermonde_power(&(0..n).collect::<Vec<_>>(), 2 * p) {
        ig.push(f.base, f.exponent);
    }
    for i in 0..n {
        ig.push(Base::Monomial(i), Exponent::int(-e));
        ig.push(
            Base::Binomial {
                sign: -1,
                num: Some(i),
                den: None,
            },
            Exponent::int(-e),
        );
    }
    ig.residue_all();
    ig
}

/// The Morris constant term by direct residue extraction.
pub fn morris_ct(m: u32, p: u32, opts: &ExtractOptions) -> Result<Computed<BigRat>> {
    require(m >= 1, "m must be positive")?;
    require(p >= 2, "p must be at least 2")?;
    let ex = morris_integrand(m, p).extract(opts)?;
    let v = ex.scalar()?.coeff(0);
    Ok(Computed::from_extraction(v, &ex))
}

/// Form of the `z` factors in `S(t,r,p)`: `(1+z)` as in the conjecture or
/// `(1-z)` as in the rewritten integrand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignForm {
    Plus,
    Minus,
}

/// The `S(t,r,p)` integrand. `perm` lists the order in which `z_1..z_r`
/// appear in the ring (and are eliminated); `z` always comes last.
pub fn s_trp_integrand(r: u32, p: u32, form: SignForm, perm: Option<&[usize]>) -> Integrand {
    let r = r as usize;
    let order: Vec<usize> = perm
        .map(<[usize]>::to_vec)
        .unwrap_or_else(|| (0..r).collect());
    let mut names: Vec<String> = order.iter().map(|i| format!("z{}", i + 1)).collect();
    names.push("z".into());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut ig = Integrand::new(&refs);
    let z = r;
    let sign = match form {
        SignForm::Plus => 1,
        SignForm::Minus => -1,
    };
    let p = i64::from(p);
    // ring position of z_i
    let pos = |i: usize| order.iter().position(|&o| o == i).unwrap();
    let zs: Vec<usize> = (0..r).map(pos).collect();
    for f in vandermonde_power(&zs, 2 * p as u32) {
        ig.push(f.base, f.exponent);
    }
    for &zi in &zs {
        ig.push(Base::Monomial(zi), Exponent::int(-2 * (r as i64 - 1) * p));
        ig.push(
            Base::Binomial {
                sign,
                num: Some(zi),
                den: None,
            },
            Exponent::with_t(0, 1),
        );
        ig.push(
            Base::Binomial {
                sign: -1,
                num: Some(zi),
                den: Some(z),
            },
            Exponent::int(-2 * p),
        );
    }
    ig.push(Base::Monomial(z), Exponent::int(-2 - 2 * p));
    ig.push(
        Base::Binomial {
            sign,
            num: Some(z),
            den: None,
        },
        Exponent::with_t(2 * p - 1, -1),
    );
    ig.residue_all();
    ig
}

/// `S(t,r,p)` as an exact polynomial in `t`.
pub fn s_trp(r: u32, p: u32, opts: &ExtractOptions) -> Result<Computed<TPoly>> {
    s_trp_with(r, p, SignForm::Plus, None, opts)
}

pub fn s_trp_with(
    r: u32,
    p: u32,
    form: SignForm,
    perm: Option<&[usize]>,
    opts: &ExtractOptions,
) -> Result<Computed<TPoly>> {
    require(r >= 2, "r must be at least 2")?;
    require(p >= 2, "p must be at least 2")?;
    if let Some(perm) = perm {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        require(
            sorted == (0..r as usize).collect::<Vec<_>>(),
            "perm must be a permutation of 0..r",
        )?;
    }
    let ex = s_trp_integrand(r, p, form, perm).extract(opts)?;
    Ok(Computed::from_extraction(ex.scalar()?, &ex))
}

/// `binom(2p,p) binom(2p-2,p-1)`.
pub fn lambda_2p(p: u32) -> BigRat {
    let p = i64::from(p);
    binom(2 * p, p) * binom(2 * p - 2, p - 1)
}

/// `binom(t+2p, 4p-1) binom(t, 4p-1)`.
pub fn conjecture_shape(p: u32) -> TPoly {
    let p = i64::from(p);
    &binom_t(2 * p, 4 * p - 1) * &binom_t(0, 4 * p - 1)
}

/// `binom(t+(r-1)p, 2rp-1) prod_{i=1}^{r-2} binom(t+(i-1)p, 2ip-1)`.
pub fn lambda_shape(r: u32, p: u32) -> TPoly {
    let (r, p) = (i64::from(r), i64::from(p));
    (1..=r - 2).fold(binom_t((r - 1) * p, 2 * r * p - 1), |acc, i| {
        &acc * &binom_t((i - 1) * p, 2 * i * p - 1)
    })
}

/// `binom(t+(r-1)p, 2rp-1) prod_{i=1}^{r-2} binom(t+(i-1)p, (r-1)p-1)`.
pub fn lambda_tilde_shape(r: u32, p: u32) -> TPoly {
    let (r, p) = (i64::from(r), i64::from(p));
    (1..=r - 2).fold(binom_t((r - 1) * p, 2 * r * p - 1), |acc, i| {
        &acc * &binom_t((i - 1) * p, (r - 1) * p - 1)
    })
}

/// The constant `c` with `f = c * shape`, if the division is exact with a
/// constant quotient.
pub fn constant_quotient(f: &TPoly, shape: &TPoly) -> Option<BigRat> {
    let (q, rem) = f.div_rem(shape).ok()?;
    (rem.is_zero() && q.is_constant()).then(|| q.coeff(0))
}

/// Checks `S(t,3,p) = A_p binom(t+2p,4p-1) binom(t,4p-1)` with the `(1+z)`
/// integrand, extracting `A_p`, and compares with the `(1-z)` integrand.
pub fn verify_conjecture_const(p: u32, opts: &ExtractOptions) -> Result<CtReport> {
    let start = Instant::now();
    let plus = s_trp_with(3, p, SignForm::Plus, None, opts)?;
    let minus = s_trp_with(3, p, SignForm::Minus, None, opts)?;
    let shape = conjecture_shape(p);
    let a_p = constant_quotient(&plus.value, &shape);
    let mut constants = Vec::new();
    let mut verdict = Verdict::Unequal;
    if let Some(a) = &a_p {
        constants.push(("A_p".to_string(), a.clone()));
        if !a.is_zero() && plus.value == minus.value {
            verdict = Verdict::Equal;
        }
    }
    let closed = a_p.map(|a| CtValue::Poly(shape.scale(&a)));
    Ok(CtReport {
        identity: "conjecture-const".into(),
        m: None,
        p,
        r: Some(3),
        computed: CtValue::Poly(plus.value),
        closed_form: closed,
        verdict,
        constants,
        windows: plus.windows,
        wall_time: start.elapsed(),
    })
}

/// Which of the two general shapes divide `S(t,r,p)` with a nonzero constant quotient.
#[derive(Clone, Debug)]
pub struct ShapeCheck {
    pub lambda: Option<BigRat>,
    pub lambda_tilde: Option<BigRat>,
}

pub fn check_shapes(s: &TPoly, r: u32, p: u32) -> ShapeCheck {
    let nz = |c: Option<BigRat>| c.filter(|c| !c.is_zero());
    ShapeCheck {
        lambda: nz(constant_quotient(s, &lambda_shape(r, p))),
        lambda_tilde: nz(constant_quotient(s, &lambda_tilde_shape(r, p))),
    }
}

/// `S(t,r,p)` against both general shapes, reporting the extracted constants.
pub fn verify_strp_shapes(r: u32, p: u32, opts: &ExtractOptions) -> Result<CtReport> {
    let start = Instant::now();
    let s = s_trp(r, p, opts)?;
    let checks = check_shapes(&s.value, r, p);
    let mut constants = Vec::new();
    if let Some(l) = &checks.lambda {
        constants.push(("lambda".to_string(), l.clone()));
    }
    if let Some(l) = &checks.lambda_tilde {
        constants.push(("lambda_tilde".to_string(), l.clone()));
    }
    let (verdict, closed) = match (&checks.lambda, &checks.lambda_tilde) {
        (Some(l), _) => (
            Verdict::Equal,
            Some(CtValue::Poly(lambda_shape(r, p).scale(l))),
        ),
        (None, Some(l)) => (
            Verdict::Equal,
            Some(CtValue::Poly(lambda_tilde_shape(r, p).scale(l))),
        ),
        (None, None) => (Verdict::ClosedFormUnknown, None),
    };
    Ok(CtReport {
        identity: "strp-shapes".into(),
        m: None,
        p,
        r: Some(r),
        computed: CtValue::Poly(s.value),
        closed_form: closed,
        verdict,
        constants,
        windows: s.windows,
        wall_time: start.elapsed(),
    })
}

/// `g(x_0) = Res_{x_1..x_{2m}} (prod x)^{-2mp} Delta^{2p} prod (1 - x_i/x_0)^{-2mp} e^{sum x}`,
/// as a map from powers of `x_0` to coefficients.
pub fn g_coefficients(
    m: u32,
    p: u32,
    opts: &ExtractOptions,
) -> Result<Computed<BTreeMap<i32, BigRat>>> {
    require(m >= 1, "m must be positive")?;
    require(p >= 2, "p must be at least 2")?;
    let n = 2 * m as usize;
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    names.push("x0".into());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut ig = Integrand::new(&refs);
    let e = i64::from(2 * m * p);
    for f in vandermonde_power(&(0..n).collect::<Vec<_>>(), 2 * p) {
        ig.push(f.base, f.exponent);
    }
    for i in 0..n {
        ig.push(Base::Monomial(i), Exponent::int(-e));
        ig.push(
            Base::Binomial {
                sign: -1,
                num: Some(i),
                den: Some(n),
            },
            Exponent::int(-e),
        );
        ig.push(Base::Exp(i), Exponent::int(1));
        ig.set_target(i, Target::RESIDUE);
    }
    let ex = ig.extract(opts)?;
    let coeffs = ex
        .value
        .terms()
        .map(|(e, c)| (e[0], c.coeff(0)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(Computed::from_extraction(coeffs, &ex))
}

/// Coefficient of `x_0^{-p+1}` in `g(x_0)`.
pub fn g_coefficient_one_minus_p(m: u32, p: u32, opts: &ExtractOptions) -> Result<BigRat> {
    let g = g_coefficients(m, p, opts)?;
    let k = 1 - p as i32;
    Ok(g.value.get(&k).cloned().unwrap_or_else(BigRat::zero))
}

/// Lowest coefficient of `g(x_0)`, at `x_0^{-2m(p-1)}`; this is the one the
/// Morris identity evaluates.
pub fn g_lowest_coefficient(m: u32, p: u32, opts: &ExtractOptions) -> Result<(i32, BigRat)> {
    let g = g_coefficients(m, p, opts)?;
    let k = -2 * m as i32 * (p as i32 - 1);
    let v = g.value.get(&k).cloned().unwrap_or_else(BigRat::zero);
    Ok((k, v))
}
