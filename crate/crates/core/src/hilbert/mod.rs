//! Multigraded Hilbert series via torus restriction.
//!
//! Each multihomogeneous component of A_q(N, m) has a commutative-monomial
//! basis, so its diagonal-torus character is the product over copies of
//! complete-homogeneous evaluations on the N^2 generator weights e_j - e_i.
//! Multiplicities of the trivial and adjoint corepresentations then come
//! from the alternating sum over the symmetric group, which at N = 2 is
//! cross-checked against the elementary c_0 - c_2 / c_2 - c_4 oracle.

mod gq;
mod series;

pub use gq::gq_hilbert;
pub use series::{parse_closed_form, series_compare, series_divide, ClosedForm, SeriesTable};

use std::collections::BTreeMap;

use crate::{Error, Result};

pub type WeightVector = Vec<i32>;

/// A finitely supported integer-valued function on the weight lattice Z^N.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CharacterPoly {
    weights: BTreeMap<WeightVector, i64>,
}

impl CharacterPoly {
    pub fn zero() -> Self {
        Default::default()
    }

    pub fn delta(w: WeightVector) -> Self {
        let mut c = Self::zero();
        c.add(w, 1);
        c
    }

    pub fn add(&mut self, w: WeightVector, mult: i64) {
        if mult == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.weights.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(mult);
            }
        }
    }

    pub fn at(&self, w: &[i32]) -> i64 {
        self.weights.get(w).copied().unwrap_or(0)
    }

    /// Total mass: the dimension of the component the character describes.
    pub fn mass(&self) -> i64 {
        self.weights.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeightVector, &i64)> {
        self.weights.iter()
    }

    /// Pointwise product of the underlying representations (convolution of
    /// weight multiplicities).
    pub fn convolve(&self, rhs: &CharacterPoly) -> CharacterPoly {
        let mut out = CharacterPoly::zero();
        for (w1, m1) in &self.weights {
            for (w2, m2) in &rhs.weights {
                let w: WeightVector = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                out.add(w, m1 * m2);
            }
        }
        out
    }

    /// Translate every weight, e.g. by the all-ones vector; trivial and
    /// adjoint multiplicities are invariant under this because all our
    /// weights lie in the root lattice.
    pub fn shift(&self, by: &[i32]) -> CharacterPoly {
        let mut out = CharacterPoly::zero();
        for (w, m) in &self.weights {
            out.add(w.iter().zip(by).map(|(a, b)| a + b).collect(), *m);
        }
        out
    }
}

/// Weights of the N^2 generators x^i_j: the weight of x^i_j is e_j - e_i.
pub fn generator_weights(n: usize) -> Vec<WeightVector> {
    let mut ws = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut w = vec![0i32; n];
            w[j] += 1;
            w[i] -= 1;
            ws.push(w);
        }
    }
    ws
}

/// Character of the degree-d part of the symmetric algebra on the given
/// weight multiset (complete homogeneous evaluation), by one-generator-at-a-
/// time dynamic programming.
fn sym_character(weights: &[WeightVector], n: usize, d: u32) -> CharacterPoly {
    let mut by_degree: Vec<CharacterPoly> = vec![CharacterPoly::zero(); d as usize + 1];
    by_degree[0] = CharacterPoly::delta(vec![0; n]);
    for w in weights {
        for deg in 1..=d as usize {
            // new[deg] = sum_{e >= 1} old[deg - e] * w^e, folded incrementally:
            // process this generator by adding w to the previous slice.
            let prev = by_degree[deg - 1].shift(w);
            let mut merged = by_degree[deg].clone();
            for (wt, m) in prev.iter() {
                merged.add(wt.clone(), *m);
            }
            by_degree[deg] = merged;
        }
    }
    by_degree[d as usize].clone()
}

/// Character of the multidegree-d component of A_q(N, m).
pub fn component_character(n: usize, m: usize, d: &[u32]) -> Result<CharacterPoly> {
    if d.len() != m {
        return Err(Error::Usage(format!(
            "component_character: multidegree must have {m} components"
        )));
    }
    let weights = generator_weights(n);
    let mut chi = CharacterPoly::delta(vec![0; n]);
    for &dk in d {
        chi = chi.convolve(&sym_character(&weights, n, dk));
    }
    Ok(chi)
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if cur.len() == n {
            let mut inv = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if cur[a] > cur[b] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Canonical representative modulo the all-ones direction: subtract the
/// last coordinate from every coordinate. SL_N weights are classes of Z^N
/// modulo (1, ..., 1), so multiplicities must not see determinant twists.
fn canon(w: &[i32]) -> Vec<i32> {
    let last = *w.last().unwrap();
    w.iter().map(|x| x - last).collect()
}

fn canonicalize(chi: &CharacterPoly) -> CharacterPoly {
    let mut out = CharacterPoly::zero();
    for (w, m) in chi.iter() {
        out.add(canon(w), *m);
    }
    out
}

/// Multiplicity of the irreducible with highest weight `lambda` in `chi`,
/// by the alternating sum sum_w sgn(w) chi[w(lambda + rho) - rho] with
/// rho = (N-1, N-2, ..., 0), with all weights read modulo the all-ones
/// direction.
fn weyl_multiplicity(chi: &CharacterPoly, n: usize, lambda: &[i32]) -> i64 {
    let chi_c = canonicalize(chi);
    let rho: Vec<i32> = (0..n).map(|i| (n - 1 - i) as i32).collect();
    let lam_rho: Vec<i32> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut acc = 0i64;
    for (perm, sign) in permutations_with_sign(n) {
        let target: Vec<i32> = (0..n).map(|i| lam_rho[perm[i]] - rho[i]).collect();
        acc += sign * chi_c.at(&canon(&target));
    }
    acc
}

/// Multiplicity of the trivial corepresentation. At N = 2 the independent
/// oracle c_0 - c_2 (weight 0 minus weight (-1, 1)) must agree and is
/// asserted.
pub fn mult_trivial(chi: &CharacterPoly, n: usize) -> i64 {
    let m = weyl_multiplicity(chi, n, &vec![0; n]);
    if n == 2 {
        let chi_c = canonicalize(chi);
        let oracle = chi_c.at(&canon(&[0, 0])) - chi_c.at(&canon(&[-1, 1]));
        assert_eq!(m, oracle, "Weyl formula disagrees with the N=2 oracle");
    }
    m
}

/// Multiplicity of the (N^2 - 1)-dimensional adjoint corepresentation,
/// highest weight e_1 - e_N. At N = 2 checked against c_2 - c_4.
pub fn mult_adjoint(chi: &CharacterPoly, n: usize) -> i64 {
    let mut theta = vec![0i32; n];
    theta[0] = 1;
    theta[n - 1] = -1;
    let m = weyl_multiplicity(chi, n, &theta);
    if n == 2 {
        let chi_c = canonicalize(chi);
        let oracle = chi_c.at(&canon(&[1, -1])) - chi_c.at(&canon(&[-2, 2]));
        assert_eq!(m, oracle, "Weyl formula disagrees with the N=2 oracle");
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Total dimensions of A_q(N, m).
    A,
    /// Trivial multiplicities: the coinvariant algebra R_q(N, m).
    R,
    /// Trivial plus adjoint: the trace ring T_q(N, m).
    T,
}

impl SeriesKind {
    pub fn parse(s: &str) -> Option<SeriesKind> {
        match s {
            "A" | "a" => Some(SeriesKind::A),
            "R" | "r" => Some(SeriesKind::R),
            "T" | "t" => Some(SeriesKind::T),
            _ => None,
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

fn multidegrees_up_to(m: usize, cap: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let used: u32 = cur.iter().sum();
        for d in 0..=cap - used {
            cur.push(d);
            rec(m, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, cap, &mut Vec::new(), &mut out);
    out
}

/// The Hilbert table of A, R, or T up to total degree `cap`.
pub fn hilbert_series(n: usize, m: usize, which: SeriesKind, cap: u32) -> Result<SeriesTable> {
    if cap > 12 {
        return Err(Error::Usage(format!("hilbert cap {cap} exceeds the limit 12")));
    }
    let mut entries = BTreeMap::new();
    for d in multidegrees_up_to(m, cap) {
        let dim = match which {
            SeriesKind::A => d
                .iter()
                .map(|&dk| binomial((n * n) as u64 + dk as u64 - 1, dk as u64))
                .product::<u64>() as i64,
            SeriesKind::R => mult_trivial(&component_character(n, m, &d)?, n),
            SeriesKind::T => {
                let chi = component_character(n, m, &d)?;
                mult_trivial(&chi, n) + mult_adjoint(&chi, n)
            }
        };
        entries.insert(d, dim);
    }
    Ok(SeriesTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_weights_n2() {
        let ws = generator_weights(2);
        assert_eq!(ws.len(), 4);
        assert_eq!(ws.iter().filter(|w| *w == &vec![0, 0]).count(), 2);
        assert_eq!(ws.iter().filter(|w| *w == &vec![-1, 1]).count(), 1);
        assert_eq!(ws.iter().filter(|w| *w == &vec![1, -1]).count(), 1);
    }

    #[test]
    fn character_masses() {
        let chi = component_character(2, 1, &[0]).unwrap();
        assert_eq!(chi.mass(), 1);
        assert_eq!(chi.at(&[0, 0]), 1);
        let chi = component_character(2, 2, &[1, 1]).unwrap();
        assert_eq!(chi.mass(), 16);
        let chi = component_character(2, 3, &[1, 1, 1]).unwrap();
        assert_eq!(chi.mass(), 64);
    }

    #[test]
    fn trivial_multiplicities() {
        let chi = component_character(2, 1, &[1]).unwrap();
        assert_eq!(mult_trivial(&chi, 2), 1);
        assert_eq!(mult_adjoint(&chi, 2), 1);
        let chi0 = component_character(2, 1, &[0]).unwrap();
        assert_eq!(mult_trivial(&chi0, 2), 1);
        assert_eq!(mult_adjoint(&chi0, 2), 0);
        // The multilinear component of three copies carries 5 invariants.
        let chi = component_character(2, 3, &[1, 1, 1]).unwrap();
        assert_eq!(mult_trivial(&chi, 2), 5);
    }

    #[test]
    fn shift_by_all_ones_is_harmless() {
        let chi = component_character(2, 2, &[2, 1]).unwrap();
        let shifted = chi.shift(&[1, 1]);
        assert_eq!(mult_trivial(&chi, 2), weyl_multiplicity(&shifted, 2, &[0, 0]));
        let theta = [1i32, -1];
        assert_eq!(
            mult_adjoint(&chi, 2),
            weyl_multiplicity(&shifted, 2, &theta)
        );
    }

    #[test]
    fn hom_formulation_cross_check() {
        // dim T component = mult_trivial(chi * chi_X) since the generator
        // comodule is trivial + adjoint, multiplicity free, and self-dual at
        // N = 2.
        let chi_x = component_character(2, 1, &[1]).unwrap();
        for d in [[1u32, 1], [2, 1], [2, 2]] {
            let chi = component_character(2, 2, &d).unwrap();
            let hom = mult_trivial(&chi.convolve(&chi_x), 2);
            assert_eq!(hom, mult_trivial(&chi, 2) + mult_adjoint(&chi, 2), "{d:?}");
        }
    }

    #[test]
    fn multiplicities_are_nonnegative_and_bounded() {
        for d in multidegrees_up_to(2, 4) {
            let chi = component_character(2, 2, &d).unwrap();
            let t = mult_trivial(&chi, 2);
            let a = mult_adjoint(&chi, 2);
            assert!(t >= 0 && a >= 0, "{d:?}");
            assert!(t <= chi.at(&[0, 0]), "{d:?}");
        }
    }

    #[test]
    fn n3_sanity() {
        // One copy, degree 1: x decomposes as trivial + adjoint for N = 3.
        let chi = component_character(3, 1, &[1]).unwrap();
        assert_eq!(chi.mass(), 9);
        assert_eq!(mult_trivial(&chi, 3), 1);
        assert_eq!(mult_adjoint(&chi, 3), 1);
    }
}
