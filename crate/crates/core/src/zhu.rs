//! Polynomial relation data for the Zhu algebra of `W(p)^{A_2}` and the
//! checks it supports.
//!
//! `s` and `r` are transcribed data, fixed only up to a nonzero scalar, so
//! every verdict here is invariant under rescaling them.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::arith::{int, parse_frac, rat, ratpoly_gcd, BigRat, RatPoly};
use crate::characters::{h_int, h_weight, m2_table};
use crate::error::{Error, Result};

const TABLE: &str = include_str!("../data/zhu_table.txt");

/// One row of the transcribed table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhuRow {
    pub p: u32,
    pub s: RatPoly,
    pub r: RatPoly,
}

/// The parsed data file.
#[derive(Clone, Debug)]
pub struct ZhuTable {
    pub version: u32,
    pub rows: Vec<ZhuRow>,
    /// Root lists of the displayed `p = 2` relations, keyed by name.
    pub roots: BTreeMap<String, Vec<BigRat>>,
}

fn parse_list(s: &str) -> Result<Vec<BigRat>> {
    s.split(',').map(|x| parse_frac(x.trim())).collect()
}

impl ZhuTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut version = None;
        let mut polys: BTreeMap<(char, u32), RatPoly> = BTreeMap::new();
        let mut roots = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key == "version" {
                version = Some(
                    value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad version {value}")))?,
                );
            } else if let Some(name) = key.strip_prefix("roots.") {
                roots.insert(name.to_string(), parse_list(value)?);
            } else if let Some((kind, p)) = key.split_once('.') {
                let kind = match kind {
                    "s" => 's',
                    "r" => 'r',
                    _ => return Err(Error::Parse(format!("unknown key {key}"))),
                };
                let p: u32 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad p in {key}")))?;
                polys.insert((kind, p), RatPoly::from_coeffs(parse_list(value)?));
            } else {
                return Err(Error::Parse(format!("unknown key {key}")));
            }
        }
        let ps: BTreeSet<u32> = polys.keys().map(|&(_, p)| p).collect();
        let rows = ps
            .into_iter()
            .map(|p| {
                let get = |k| {
                    polys
                        .get(&(k, p))
                        .cloned()
                        .ok_or_else(|| Error::Parse(format!("missing {k}.{p}")))
                };
                Ok(ZhuRow {
                    p,
                    s: get('s')?,
                    r: get('r')?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ZhuTable {
            version: version.ok_or_else(|| Error::Parse("missing version".into()))?,
            rows,
            roots,
        })
    }

    /// The embedded table.
    pub fn embedded() -> Self {
        Self::parse(TABLE).expect("embedded table parses")
    }

    pub fn row(&self, p: u32) -> Result<&ZhuRow> {
        self.rows
            .iter()
            .find(|r| r.p == p)
            .ok_or_else(|| Error::InvalidParameter(format!("no table row for p = {p}")))
    }

    pub fn root_list(&self, name: &str) -> Result<&[BigRat]> {
        self.roots
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::InvalidParameter(format!("no root list {name}")))
    }
}

/// `gcd(s, r) == 1`.
pub fn coprime(s: &RatPoly, r: &RatPoly) -> Result<bool> {
    Ok(ratpoly_gcd(s, r)?.is_constant())
}

pub fn verify_coprime(p: u32) -> Result<bool> {
    let table = ZhuTable::embedded();
    let row = table.row(p)?;
    coprime(&row.s, &row.r)
}

fn check_p(p: u32) -> Result<i64> {
    if p < 2 {
        return Err(Error::InvalidParameter("p must be at least 2".into()));
    }
    Ok(i64::from(p))
}

/// `h_{i,3}` for `i = 1..=p`.
pub fn ell_roots(p: u32) -> Result<Vec<BigRat>> {
    let pp = check_p(p)?;
    Ok((1..=pp).map(|i| h_int(i, 3, p)).collect())
}

/// `h_{3p+1/2-j,1}` for `j = 1..=2p`.
pub fn twisted_roots(p: u32) -> Result<Vec<BigRat>> {
    let pp = check_p(p)?;
    Ok((1..=2 * pp)
        .map(|j| h_weight(&(int(3 * pp - j) + rat(1, 2)), &BigRat::one(), p))
        .collect())
}

/// `h_{3p-i,1}` for `i = 1..=p`.
pub fn pi_roots(p: u32) -> Result<Vec<BigRat>> {
    let pp = check_p(p)?;
    Ok((1..=pp).map(|i| h_int(3 * pp - i, 1, p)).collect())
}

/// Roots of `h(x)`: `h_{3p-i,1}`, `h_{i,3}`, then the twisted weights.
pub fn h_roots(p: u32) -> Result<Vec<BigRat>> {
    let mut out = pi_roots(p)?;
    out.extend(ell_roots(p)?);
    out.extend(twisted_roots(p)?);
    Ok(out)
}

/// Roots of `g_{2,p}(x)`: `h_{i,1}` for `i < 3p`, `h_{i,3}`, and the twisted weights.
pub fn g2p_roots(p: u32) -> Result<Vec<BigRat>> {
    let pp = check_p(p)?;
    let mut out: Vec<BigRat> = (1..3 * pp).map(|i| h_int(i, 1, p)).collect();
    out.extend(ell_roots(p)?);
    out.extend(twisted_roots(p)?);
    Ok(out)
}

pub fn build_ell(p: u32) -> Result<RatPoly> {
    Ok(RatPoly::from_roots(&ell_roots(p)?))
}

pub fn build_h(p: u32) -> Result<RatPoly> {
    Ok(RatPoly::from_roots(&h_roots(p)?))
}

pub fn build_g2p(p: u32) -> Result<RatPoly> {
    Ok(RatPoly::from_roots(&g2p_roots(p)?))
}

/// Multiplicity profile of the `g_{2,p}` roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootProfile {
    pub degree: usize,
    pub distinct: usize,
    pub repeated: Vec<BigRat>,
}

pub fn g2p_root_profile(p: u32) -> Result<RootProfile> {
    let roots = g2p_roots(p)?;
    let mut counts: BTreeMap<BigRat, usize> = BTreeMap::new();
    for r in &roots {
        *counts.entry(r.clone()).or_default() += 1;
    }
    Ok(RootProfile {
        degree: roots.len(),
        distinct: counts.len(),
        repeated: counts
            .into_iter()
            .filter(|(_, c)| *c > 1)
            .map(|(r, _)| r)
            .collect(),
    })
}

/// Outcome of a root-list comparison; `missing` are expected roots absent
/// from the tabulated list and `extra` the converse.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootCheck {
    pub missing: Vec<BigRat>,
    pub extra: Vec<BigRat>,
}

impl RootCheck {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    fn compare(expected: &[BigRat], tabulated: &[BigRat]) -> Self {
        let e: BTreeSet<&BigRat> = expected.iter().collect();
        let q: BTreeSet<&BigRat> = tabulated.iter().collect();
        RootCheck {
            missing: e.difference(&q).map(|&x| x.clone()).collect(),
            extra: q.difference(&e).map(|&x| x.clone()).collect(),
        }
    }
}

/// At `p = 2`: the eight tabulated roots of the `[H] h([omega]) s([omega]) = 0`
/// relation against `h_weight`, and its ninth factor against the table's `s`.
pub fn verify_h_relation_roots() -> Result<(RootCheck, bool)> {
    let table = ZhuTable::embedded();
    let check = RootCheck::compare(&h_roots(2)?, table.root_list("h_relation")?);
    let s_ok = table.row(2)?.s == RatPoly::from_ints(&[28, 17]);
    Ok((check, s_ok))
}

/// Bookkeeping for the reduced relation at `p = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedRelation {
    /// Tabulated reduced roots equal the `h`-relation roots minus the root of `s`.
    pub roots_match: bool,
    pub degree: usize,
    /// `r` at the root of `s`, nonzero exactly when the factor can be cancelled.
    pub r_at_s_root: BigRat,
    pub coprime: bool,
}

pub fn verify_reduced_relation() -> Result<ReducedRelation> {
    let table = ZhuTable::embedded();
    let row = table.row(2)?;
    let s_root = -&row.s.coeff(0) / &row.s.coeff(1);
    let mut full: Vec<BigRat> = table.root_list("h_relation")?.to_vec();
    full.push(s_root.clone());
    let reduced = table.root_list("reduced")?;
    let expected: Vec<BigRat> = full.into_iter().filter(|x| *x != s_root).collect();
    Ok(ReducedRelation {
        roots_match: RootCheck::compare(&expected, reduced).ok() && expected.len() == reduced.len(),
        degree: reduced.len(),
        r_at_s_root: row.r.eval(&s_root),
        coprime: coprime(&row.s, &row.r)?,
    })
}

/// The tabulated commutator relation's roots against `h_{3p-i,1}` and the
/// twisted weights at `p = 2`.
pub fn verify_commutator_roots() -> Result<RootCheck> {
    let table = ZhuTable::embedded();
    let mut expected = pi_roots(2)?;
    expected.extend(twisted_roots(2)?);
    Ok(RootCheck::compare(
        &expected,
        table.root_list("commutator")?,
    ))
}

/// Every root of `h(x)` is a conformal weight in the `m = 2` table.
pub fn h_roots_in_m2_table(p: u32) -> Result<bool> {
    let xs: BTreeSet<BigRat> = m2_table(p)?.into_iter().map(|r| r.weight.x).collect();
    Ok(h_roots(p)?.iter().all(|r| xs.contains(r)))
}

/// `deg g_{2,p} = 6p - 1` and `2 deg + 1 = 12p - 1`.
pub fn degree_bookkeeping(p: u32) -> Result<(usize, bool)> {
    let d = build_g2p(p)?.degree().unwrap_or(0);
    let target = 12 * p as usize - 1;
    Ok((d, d == 6 * p as usize - 1 && 2 * d + 1 == target))
}

/// Whether a polynomial has no repeated roots, via `gcd(f, f')`.
pub fn squarefree(f: &RatPoly) -> Result<bool> {
    if f.is_zero() {
        return Ok(false);
    }
    let d = f.derivative();
    if d.is_zero() {
        return Ok(true);
    }
    Ok(ratpoly_gcd(f, &d)?.is_constant())
}

/// Degrees of `s` and `r`.
pub fn degrees(row: &ZhuRow) -> (usize, usize) {
    (row.s.degree().unwrap_or(0), row.r.degree().unwrap_or(0))
}
