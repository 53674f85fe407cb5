//! The standard SL_N R-matrix and its derived operators.
//!
//! A `QMatrix` is an n^2 x n^2 matrix acting on V (x) V, with rows and
//! columns indexed by ordered pairs: the entry in the crossing of row (i,k)
//! and column (j,l) is written R^{ik}_{jl}, and as an endomorphism
//! R(e_j (x) e_l) = R^{ik}_{jl} e_i (x) e_k with summation over repeated
//! indices. Pair indices run 1..=n and flatten as (i-1)*n + (k-1), matching
//! the basis order e_1(x)e_1, e_1(x)e_2, ..., e_n(x)e_n.

use std::fmt::Write as _;

use crate::scalar::{LaurentPoly, RatFunc};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedOp {
    /// tau . R, coordinates Rhat^{ik}_{jl} = R^{ki}_{jl}.
    RHat,
    /// tau . R . tau, coordinates (R21)^{ik}_{jl} = R^{ki}_{lj}.
    R21,
    /// Matrix inverse over Q(q).
    RInv,
    /// ((R^{t2})^{-1})^{t2}.
    RTilde,
    /// Partial transpose in the second factor, (A^{t2})^{ik}_{jl} = A^{il}_{jk}.
    T2,
}

impl QMatrix {
    pub fn zero(n: usize) -> Self {
        QMatrix {
            n,
            entries: vec![LaurentPoly::zero(); n * n * n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 1..=n {
            for k in 1..=n {
                *m.at_mut(i, k, i, k) = LaurentPoly::one();
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Side length of the matrix itself (n^2).
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    fn flat(&self, i: usize, k: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&k));
        (i - 1) * self.n + (k - 1)
    }

    /// The entry R^{ik}_{jl}.
    pub fn at(&self, i: usize, k: usize, j: usize, l: usize) -> &LaurentPoly {
        &self.entries[self.flat(i, k) * self.dim() + self.flat(j, l)]
    }

    pub fn at_mut(&mut self, i: usize, k: usize, j: usize, l: usize) -> &mut LaurentPoly {
        let idx = self.flat(i, k) * self.dim() + self.flat(j, l);
        &mut self.entries[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        QMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        QMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> QMatrix {
        QMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n);
        let d = self.dim();
        let mut out = QMatrix::zero(self.n);
        for r in 0..d {
            for m in 0..d {
                let a = &self.entries[r * d + m];
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = &rhs.entries[m * d + c];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    out.entries[r * d + c] += &t;
                }
            }
        }
        out
    }

    /// The flip endomorphism tau(v (x) w) = w (x) v.
    pub fn tau(n: usize) -> QMatrix {
        let mut m = Self::zero(n);
        for i in 1..=n {
            for k in 1..=n {
                *m.at_mut(i, k, k, i) = LaurentPoly::one();
            }
        }
        m
    }

    fn partial_transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.n);
        for i in 1..=self.n {
            for k in 1..=self.n {
                for j in 1..=self.n {
                    for l in 1..=self.n {
                        *out.at_mut(i, k, j, l) = self.at(i, l, j, k).clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix inverse over Q(q); fails if singular. The result is required to
    /// have Laurent entries, which holds for everything derived from build_R.
    fn inverse(&self) -> Result<QMatrix> {
        let d = self.dim();
        let mut a: Vec<Vec<RatFunc>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| RatFunc::from_laurent(self.entries[r * d + c].clone()))
                    .collect()
            })
            .collect();
        let mut inv: Vec<Vec<RatFunc>> = (0..d)
            .map(|r| {
                (0..d)
                    .map(|c| if r == c { RatFunc::one() } else { RatFunc::zero() })
                    .collect()
            })
            .collect();
        for col in 0..d {
            let Some(p) = (col..d).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::Build("singular matrix has no inverse".into()));
            };
            a.swap(col, p);
            inv.swap(col, p);
            let f = a[col][col].recip();
            for c in 0..d {
                a[col][c] = &a[col][c] * &f;
                inv[col][c] = &inv[col][c] * &f;
            }
            for r in 0..d {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..d {
                    let t = &a[r][c] - &(&f * &a[col][c]);
                    a[r][c] = t;
                    let t = &inv[r][c] - &(&f * &inv[col][c]);
                    inv[r][c] = t;
                }
            }
        }
        let mut out = QMatrix::zero(self.n);
        for r in 0..d {
            for c in 0..d {
                let e = &inv[r][c];
                assert!(
                    e.is_laurent(),
                    "R-matrix inverse left Q[q, q^-1]; index conventions are broken"
                );
                out.entries[r * d + c] = e.numerator().clone();
            }
        }
        Ok(out)
    }
}

/// The standard SL_N R-matrix: entries q (all four indices equal),
/// 1 (i = j, k = l, i != k), q - q^-1 (i > j, i = l, j = k), 0 otherwise.
pub fn build_r(n: usize) -> Result<QMatrix> {
    if n == 0 {
        return Err(Error::Domain("build_R: N must be positive".into()));
    }
    let mut m = QMatrix::zero(n);
    let qm = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
    for i in 1..=n {
        for k in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    let e = if i == j && k == l && i == k {
                        LaurentPoly::q()
                    } else if i == j && k == l {
                        LaurentPoly::one()
                    } else if i > j && i == l && j == k {
                        qm.clone()
                    } else {
                        LaurentPoly::zero()
                    };
                    *m.at_mut(i, k, j, l) = e;
                }
            }
        }
    }
    Ok(m)
}

/// Derived operators of an R-matrix; see `DerivedOp`.
pub fn derived(r: &QMatrix, which: DerivedOp) -> Result<QMatrix> {
    match which {
        DerivedOp::RHat => Ok(QMatrix::tau(r.n).mul(r)),
        DerivedOp::R21 => {
            let t = QMatrix::tau(r.n);
            Ok(t.mul(r).mul(&t))
        }
        DerivedOp::RInv => r.inverse(),
        DerivedOp::T2 => Ok(r.partial_transpose()),
        DerivedOp::RTilde => Ok(r.partial_transpose().inverse()?.partial_transpose()),
    }
}

/// Kronecker product, for placing operators on tensor factors of V^(x)3.
pub fn kron(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![LaurentPoly::zero(); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

pub fn dense_rows(m: &QMatrix) -> Vec<Vec<LaurentPoly>> {
    let d = m.dim();
    (0..d)
        .map(|r| (0..d).map(|c| m.entries[r * d + c].clone()).collect())
        .collect()
}

pub fn scalar_identity(n: usize) -> Vec<Vec<LaurentPoly>> {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { LaurentPoly::one() } else { LaurentPoly::zero() })
                .collect()
        })
        .collect()
}

pub fn matmul(a: &[Vec<LaurentPoly>], b: &[Vec<LaurentPoly>]) -> Vec<Vec<LaurentPoly>> {
    let (ra, ca) = (a.len(), a[0].len());
    let cb = b[0].len();
    assert_eq!(ca, b.len());
    let mut out = vec![vec![LaurentPoly::zero(); cb]; ra];
    for i in 0..ra {
        for k in 0..ca {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                if b[k][j].is_zero() {
                    continue;
                }
                let t = &a[i][k] * &b[k][j];
                out[i][j] += &t;
            }
        }
    }
    out
}

/// Pair-indexed table of the nonzero entries, for the selftest report.
pub fn pretty(m: &QMatrix) -> String {
    let mut s = String::new();
    let n = m.n;
    for i in 1..=n {
        for k in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    let e = m.at(i, k, j, l);
                    if !e.is_zero() {
                        let _ = writeln!(s, "R^{{{i}{k}}}_{{{j}{l}}} = {e}");
                    }
                }
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn rhat(n: usize) -> QMatrix {
        derived(&build_r(n).unwrap(), DerivedOp::RHat).unwrap()
    }

    #[test]
    fn build_r_cases() {
        let r1 = build_r(1).unwrap();
        assert_eq!(r1.at(1, 1, 1, 1), &LaurentPoly::q());

        let r = build_r(2).unwrap();
        let qm = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
        assert_eq!(r.at(1, 1, 1, 1), &LaurentPoly::q());
        assert_eq!(r.at(2, 2, 2, 2), &LaurentPoly::q());
        assert_eq!(r.at(1, 2, 1, 2), &LaurentPoly::one());
        assert_eq!(r.at(2, 1, 2, 1), &LaurentPoly::one());
        assert_eq!(r.at(2, 1, 1, 2), &qm);
        assert_eq!(r.at(1, 2, 2, 1), &LaurentPoly::zero());
        let nonzero = (0..r.dim() * r.dim())
            .filter(|idx| !r.entries[*idx].is_zero())
            .count();
        assert_eq!(nonzero, 5);

        assert!(build_r(0).is_err());
    }

    #[test]
    fn rhat_swaps_upper_indices() {
        let r = build_r(2).unwrap();
        let rh = rhat(2);
        let qm = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
        assert_eq!(rh.at(1, 2, 1, 2), &qm);
        for i in 1..=2 {
            for k in 1..=2 {
                for j in 1..=2 {
                    for l in 1..=2 {
                        assert_eq!(rh.at(i, k, j, l), r.at(k, i, j, l));
                    }
                }
            }
        }
        let r21 = derived(&r, DerivedOp::R21).unwrap();
        for i in 1..=2 {
            for k in 1..=2 {
                for j in 1..=2 {
                    for l in 1..=2 {
                        assert_eq!(r21.at(i, k, j, l), r.at(k, i, l, j));
                    }
                }
            }
        }
    }

    #[test]
    fn rinv_scalar_case() {
        let r = build_r(1).unwrap();
        let inv = derived(&r, DerivedOp::RInv).unwrap();
        assert_eq!(inv.at(1, 1, 1, 1), &LaurentPoly::q_pow(-1));
    }

    #[test]
    fn rtilde_inverts_partial_transpose() {
        for n in 1..=3 {
            let r = build_r(n).unwrap();
            let rt = derived(&r, DerivedOp::RTilde).unwrap();
            let lhs = derived(&rt, DerivedOp::T2)
                .unwrap()
                .mul(&derived(&r, DerivedOp::T2).unwrap());
            assert_eq!(lhs, QMatrix::identity(n), "N = {n}");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        for n in 1..=3 {
            let r = build_r(n).unwrap();
            let inv = derived(&r, DerivedOp::RInv).unwrap();
            assert_eq!(r.mul(&inv), QMatrix::identity(n));
            assert_eq!(inv.mul(&r), QMatrix::identity(n));
        }
    }

    // Standard sanity oracle, not stated in the source material: the Hecke
    // relation detects index-convention mistakes early.
    #[test]
    fn sanity_hecke_relation() {
        for n in 1..=3 {
            let rh = rhat(n);
            let id = QMatrix::identity(n);
            let qm = &LaurentPoly::q() - &LaurentPoly::q_pow(-1);
            let lhs = rh
                .sub(&id.scale(&LaurentPoly::q()))
                .mul(&rh.add(&id.scale(&LaurentPoly::q_pow(-1))));
            assert!(lhs.is_zero(), "Hecke relation fails for N = {n}");
            // Consequently Rhat^{-1} = Rhat - (q - q^{-1}) I.
            let claimed_inv = rh.sub(&id.scale(&qm));
            assert_eq!(rh.mul(&claimed_inv), id, "N = {n}");
        }
    }

    // Standard sanity oracle: the braid form of the Yang-Baxter equation.
    #[test]
    fn sanity_braid_relation() {
        for n in 2..=3 {
            let rh = dense_rows(&rhat(n));
            let id = scalar_identity(n);
            let r12 = kron(&rh, &id);
            let r23 = kron(&id, &rh);
            let lhs = matmul(&matmul(&r12, &r23), &r12);
            let rhs = matmul(&matmul(&r23, &r12), &r23);
            assert_eq!(lhs, rhs, "braid relation fails for N = {n}");
        }
    }

    #[test]
    fn involutions() {
        let n = 3;
        let t = QMatrix::tau(n);
        assert_eq!(t.mul(&t), QMatrix::identity(n));
        // (A^{t2})^{t2} = A for a pseudorandom matrix.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut a = QMatrix::zero(2);
        for e in a.entries.iter_mut() {
            *e = LaurentPoly::term(rng.gen_range(-3..3), crate::scalar::rat(rng.gen_range(-5..5)));
        }
        let b = derived(&a, DerivedOp::T2).unwrap();
        assert_eq!(derived(&b, DerivedOp::T2).unwrap(), a);
    }

    #[test]
    fn pretty_lists_nonzero_entries() {
        let s = pretty(&build_r(2).unwrap());
        assert_eq!(s.lines().count(), 5);
        assert!(s.contains("R^{21}_{12} = q - q^-1"));
    }
}
