//! Exact rank and membership for spans of `a(q) + tau b(q)` functions.
//!
//! A [`TauVector`] is flattened to its `a` coefficients followed by its `b`
//! coefficients, so linear independence of the functions is independence of
//! the stacked coefficient vectors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{frac_string, BigRat};
use crate::error::{Error, Result};
use crate::qseries::{dtheta, theta, QExpansion, TauVector};

/// Which half of a flattened vector a column belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    A,
    B,
}

/// Rows are flattened functions over a shared grain and cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    grain: u64,
    cutoff: BigRat,
    columns: Vec<(Part, i64)>,
    rows: Vec<Vec<BigRat>>,
}

impl CoeffMatrix {
    /// Brings every vector to the lcm grain and the smallest cutoff.
    pub fn from_vectors(vectors: &[TauVector]) -> Result<Self> {
        Self::build(vectors, &[])
    }

    fn build(vectors: &[TauVector], extra: &[TauVector]) -> Result<Self> {
        let all: Vec<&TauVector> = vectors.iter().chain(extra).collect();
        let grain = all
            .iter()
            .fold(1u64, |g, v| g.lcm(&v.a.grain()).lcm(&v.b.grain()));
        let cutoff = all
            .iter()
            .map(|v| v.a.cutoff().min(v.b.cutoff()))
            .min()
            .ok_or_else(|| Error::InvalidParameter("empty vector list".into()))?;
        let flat: Vec<(QExpansion, QExpansion)> = all
            .iter()
            .map(|v| {
                Ok((
                    v.a.refine(grain)?.truncate(&cutoff),
                    v.b.refine(grain)?.truncate(&cutoff),
                ))
            })
            .collect::<Result<_>>()?;
        let mut cols = BTreeSet::new();
        for (a, b) in &flat {
            cols.extend(a.scaled_terms().keys().map(|&k| (Part::A, k)));
            cols.extend(b.scaled_terms().keys().map(|&k| (Part::B, k)));
        }
        let columns: Vec<(Part, i64)> = cols.into_iter().collect();
        let rows = flat
            .iter()
            .map(|(a, b)| {
                columns
                    .iter()
                    .map(|&(part, k)| {
                        let src = if part == Part::A { a } else { b };
                        src.scaled_terms()
                            .get(&k)
                            .cloned()
                            .unwrap_or_else(BigRat::zero)
                    })
                    .collect()
            })
            .collect();
        Ok(CoeffMatrix {
            grain,
            cutoff,
            columns,
            rows,
        })
    }

    /// A matrix from explicit rows; columns are labelled `A, 0..`.
    pub fn from_rows(rows: Vec<Vec<BigRat>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        Ok(CoeffMatrix {
            grain: 1,
            cutoff: BigRat::from_integer(BigInt::from(width)),
            columns: (0..width as i64).map(|k| (Part::A, k)).collect(),
            rows,
        })
    }

    pub fn rows(&self) -> &[Vec<BigRat>] {
        &self.rows
    }

    pub fn columns(&self) -> &[(Part, i64)] {
        &self.columns
    }

    pub fn grain(&self) -> u64 {
        self.grain
    }

    pub fn cutoff(&self) -> &BigRat {
        &self.cutoff
    }

    fn exponent(&self, col: usize) -> (Part, BigRat) {
        let (part, k) = self.columns[col];
        (part, BigRat::new(k.into(), self.grain.into()))
    }
}

fn integerize(row: &[BigRat]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    row.iter()
        .map(|x| (x * BigRat::from_integer(l.clone())).to_integer())
        .collect()
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn exact_rank(m: &CoeffMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().map(|r| integerize(r)).collect();
    let rows = a.len();
    let cols = m.columns.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = (&a[rank][c] * &a[r][cc] - &a[r][c] * &a[rank][cc]) / &prev;
                a[r][cc] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Outcome of a membership test, valid to the truncation order only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `f = sum coords[i] basis[i]` on every exponent below the cutoff.
    Member { coords: Vec<BigRat> },
    /// No combination matches; the first inconsistent coefficient.
    NotMember { part: Part, exponent: BigRat },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    /// Coordinates as fraction strings.
    pub fn coord_strings(&self) -> Option<Vec<String>> {
        match self {
            Membership::Member { coords } => Some(coords.iter().map(frac_string).collect()),
            Membership::NotMember { .. } => None,
        }
    }
}

/// Solves `sum c_i basis_i = f` on the truncated coefficient space. Free
/// coordinates of a dependent basis are set to zero.
pub fn membership(f: &TauVector, basis: &[TauVector]) -> Result<Membership> {
    if basis.is_empty() {
        return Err(Error::InvalidParameter("empty basis".into()));
    }
    let mat = CoeffMatrix::build(basis, std::slice::from_ref(f))?;
    let nb = basis.len();
    let nc = mat.columns.len();
    // one equation per column: sum_i c_i B[i][col] = f[col]
    let mut eqs: Vec<(usize, Vec<BigRat>)> = (0..nc)
        .map(|col| {
            let mut row: Vec<BigRat> = (0..nb).map(|i| mat.rows[i][col].clone()).collect();
            row.push(mat.rows[nb][col].clone());
            (col, row)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nb {
        let Some(piv) = (r..eqs.len()).find(|&i| !eqs[i].1[c].is_zero()) else {
            continue;
        };
        eqs.swap(r, piv);
        let inv = eqs[r].1[c].recip();
        for x in eqs[r].1.iter_mut() {
            *x *= &inv;
        }
        let pivot_row = eqs[r].1.clone();
        for (i, (_, row)) in eqs.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let bad = eqs[r..]
        .iter()
        .filter(|(_, row)| !row[nb].is_zero())
        .map(|(col, _)| *col)
        .min();
    if let Some(col) = bad {
        let (part, exponent) = mat.exponent(col);
        return Ok(Membership::NotMember { part, exponent });
    }
    let mut coords = vec![BigRat::zero(); nb];
    for (i, &c) in pivots.iter().enumerate() {
        coords[c] = eqs[i].1[nb].clone();
    }
    Ok(Membership::Member { coords })
}

/// The claimed spanning set: `Theta_{i,pm^2}` for `i = 0..=pm^2`, then
/// `dTheta_{i,p}` and `tau dTheta_{i,p}` for `i = 1..p`, all eta-scaled.
pub fn closure_basis(p: u32, m: u32, n: &BigRat) -> Result<Vec<TauVector>> {
    if p < 2 || m < 1 {
        return Err(Error::InvalidParameter("need p >= 2 and m >= 1".into()));
    }
    let k = p * m * m;
    let mut out: Vec<TauVector> = (0..=i64::from(k))
        .map(|i| TauVector::plain(theta(i, k, n)))
        .collect();
    for i in 1..i64::from(p) {
        out.push(TauVector::plain(dtheta(i, p, n)));
    }
    for i in 1..i64::from(p) {
        out.push(TauVector::tau_times(dtheta(i, p, n)));
    }
    Ok(out)
}

/// `m^2 p + 2p - 1`.
pub fn expected_closure_rank(p: u32, m: u32) -> usize {
    (m * m * p + 2 * p - 1) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn mat(rows: &[&[i64]]) -> CoeffMatrix {
        CoeffMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_ranks() {
        let id: Vec<Vec<i64>> = (0..5)
            .map(|i| (0..5).map(|j| i64::from(i == j)).collect())
            .collect();
        let refs: Vec<&[i64]> = id.iter().map(Vec::as_slice).collect();
        assert_eq!(exact_rank(&mat(&refs)), 5);
        assert_eq!(exact_rank(&mat(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(exact_rank(&mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(exact_rank(&mat(&[&[0, 1, 2], &[1, 2, 3], &[1, 3, 5]])), 2);
        assert_eq!(exact_rank(&mat(&[&[2, 1, 1], &[1, 3, 2], &[1, 0, 0]])), 3);
    }

    #[test]
    fn closure_rank_2_2() {
        let basis = closure_basis(2, 2, &int(60)).unwrap();
        assert_eq!(basis.len(), 11);
        let m = CoeffMatrix::from_vectors(&basis).unwrap();
        assert_eq!(exact_rank(&m), expected_closure_rank(2, 2));
        let thetas = CoeffMatrix::from_vectors(&basis[..9]).unwrap();
        assert_eq!(exact_rank(&thetas), 9);
    }

    #[test]
    fn zero_is_member() {
        let basis = closure_basis(2, 1, &int(20)).unwrap();
        let zero = TauVector::plain(QExpansion::zero(8, &int(20)));
        match membership(&zero, &basis).unwrap() {
            Membership::Member { coords } => assert!(coords.iter().all(Zero::is_zero)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_member_reports_exponent() {
        let basis = vec![TauVector::plain(theta(0, 1, &int(10)))];
        let f = TauVector::plain(theta(1, 1, &int(10)));
        match membership(&f, &basis).unwrap() {
            Membership::NotMember { part, exponent } => {
                assert_eq!(part, Part::A);
                assert_eq!(exponent, BigRat::new(1.into(), 4.into()));
            }
            other => panic!("{other:?}"),
        }
    }
}
