//! Defining relations: the reflection-equation relation list, its tensor
//! form, the braided cross relations between copies, and the RTT relations
//! of the quantum matrix algebra.
//!
//! All relation sources are turned into oriented rules by one mechanical
//! solver: collect the degree-2 equations, Gauss-Jordan them with the
//! descending (out-of-order) words as pivot columns, and read one rule per
//! descending pair off the reduced rows. A pivot landing on an ascending
//! word would mean a linear relation among normal words and aborts the
//! build.

use std::collections::BTreeSet;

use crate::rmatrix::QMatrix;
use crate::rewrite::{Alphabet, Element, LetterId};
use crate::scalar::RatFunc;
use crate::{Error, Result};

fn q() -> RatFunc {
    RatFunc::q_pow(1)
}

fn qi(e: i32) -> RatFunc {
    RatFunc::q_pow(e)
}

/// q - q^-1
fn qm() -> RatFunc {
    &q() - &qi(-1)
}

/// 1 - q^-2
fn one_m_qm2() -> RatFunc {
    &RatFunc::one() - &qi(-2)
}

/// The within-copy relation list of the reflection equation algebra,
/// instantiated for one copy, as equations (elements that are zero in the
/// algebra). Indices follow the published list.
pub(crate) fn rea_family_equations(al: &Alphabet, copy: usize) -> Vec<Element> {
    let n = al.n;
    let x = |i: usize, j: usize| al.x_id(copy, i, j);
    let pair = |a: LetterId, b: LetterId, c: RatFunc| Element::from_term(vec![a, b], c);
    let mut eqs: Vec<Element> = Vec::new();

    for i in 1..=n {
        for j in 1..=n {
            // 2: q^-1 x^i_j x^i_i - q x^i_i x^i_j = (q - q^-1) sum_{s>i} x^i_s x^s_j, i > j
            if i > j {
                let mut e = pair(x(i, j), x(i, i), qi(-1));
                e = e.sub(&pair(x(i, i), x(i, j), q()));
                for s in i + 1..=n {
                    e = e.sub(&pair(x(i, s), x(s, j), qm()));
                }
                eqs.push(e);
            }
            // 3: x^i_l x^i_i - x^i_i x^i_l = (1 - q^-2) sum_{s>i} x^i_s x^s_l, i < l
            let l = j;
            if i < l {
                let mut e = pair(x(i, l), x(i, i), RatFunc::one());
                e = e.sub(&pair(x(i, i), x(i, l), RatFunc::one()));
                for s in i + 1..=n {
                    e = e.sub(&pair(x(i, s), x(s, l), one_m_qm2()));
                }
                eqs.push(e);
            }
            // 5: x^i_i x^k_i - x^k_i x^i_i = (1 - q^-2) sum_{s>i} x^k_s x^s_i, i < k
            let k = j;
            if i < k {
                let mut e = pair(x(i, i), x(k, i), RatFunc::one());
                e = e.sub(&pair(x(k, i), x(i, i), RatFunc::one()));
                for s in i + 1..=n {
                    e = e.sub(&pair(x(k, s), x(s, i), one_m_qm2()));
                }
                eqs.push(e);
            }
            // 6: q^-1 x^j_j x^i_j - q x^i_j x^j_j = (q - q^-1) sum_{s>j} x^i_s x^s_j, i < j
            if i < j {
                let mut e = pair(x(j, j), x(i, j), qi(-1));
                e = e.sub(&pair(x(i, j), x(j, j), q()));
                for s in j + 1..=n {
                    e = e.sub(&pair(x(i, s), x(s, j), qm()));
                }
                eqs.push(e);
            }
            // 14: x^i_j x^j_i - x^j_i x^i_j
            //     = (1 - q^-2)(x^j_j x^i_i - sum_{s>j} x^i_s x^s_i + sum_{t>i} x^j_t x^t_j), j < i
            if j < i {
                let mut e = pair(x(i, j), x(j, i), RatFunc::one());
                e = e.sub(&pair(x(j, i), x(i, j), RatFunc::one()));
                e = e.sub(&pair(x(j, j), x(i, i), one_m_qm2()));
                for s in j + 1..=n {
                    e = e.add(&pair(x(i, s), x(s, i), one_m_qm2()));
                }
                for t in i + 1..=n {
                    e = e.sub(&pair(x(j, t), x(t, j), one_m_qm2()));
                }
                eqs.push(e);
            }
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            for l in 1..=n {
                // 1: x^i_j x^i_l = q x^i_l x^i_j, j < l, i != j, i != l
                if j < l && i != j && i != l {
                    let mut e = pair(x(i, j), x(i, l), RatFunc::one());
                    e = e.sub(&pair(x(i, l), x(i, j), q()));
                    eqs.push(e);
                }
                // 4: x^k_j x^i_j = q x^i_j x^k_j, i < k, j != i, j != k
                let k = l;
                if i < k && j != i && j != k {
                    let mut e = pair(x(k, j), x(i, j), RatFunc::one());
                    e = e.sub(&pair(x(i, j), x(k, j), q()));
                    eqs.push(e);
                }
                // 8: x^j_l x^i_j - q x^i_j x^j_l = (q - q^-1) sum_{s>j} x^i_s x^s_l, i < j < l
                if i < j && j < l {
                    let mut e = pair(x(j, l), x(i, j), RatFunc::one());
                    e = e.sub(&pair(x(i, j), x(j, l), q()));
                    for s in j + 1..=n {
                        e = e.sub(&pair(x(i, s), x(s, l), qm()));
                    }
                    eqs.push(e);
                }
                // 9: x^i_j x^k_i - q x^k_i x^i_j = (q - q^-1) sum_{s>i} x^k_s x^s_j, j < i < k
                let k = l;
                if j < i && i < k {
                    let mut e = pair(x(i, j), x(k, i), RatFunc::one());
                    e = e.sub(&pair(x(k, i), x(i, j), q()));
                    for s in i + 1..=n {
                        e = e.sub(&pair(x(k, s), x(s, j), qm()));
                    }
                    eqs.push(e);
                }
                // 12: x^j_l x^i_j - q x^i_j x^j_l
                //     = (q - q^-1)(-x^j_j x^i_l + sum_{s>j} x^i_s x^s_l), j < l, j < i, i != l
                if j < l && j < i && i != l {
                    let mut e = pair(x(j, l), x(i, j), RatFunc::one());
                    e = e.sub(&pair(x(i, j), x(j, l), q()));
                    e = e.add(&pair(x(j, j), x(i, l), qm()));
                    for s in j + 1..=n {
                        e = e.sub(&pair(x(i, s), x(s, l), qm()));
                    }
                    eqs.push(e);
                }
                // 13: x^i_j x^k_i - q x^k_i x^i_j
                //     = (q - q^-1)(x^k_j x^i_i + sum_{s>i} x^k_s x^s_j), k < i, j < i, k != j
                let k = l;
                if k < i && j < i && k != j {
                    let mut e = pair(x(i, j), x(k, i), RatFunc::one());
                    e = e.sub(&pair(x(k, i), x(i, j), q()));
                    e = e.sub(&pair(x(k, j), x(i, i), qm()));
                    for s in i + 1..=n {
                        e = e.sub(&pair(x(k, s), x(s, j), qm()));
                    }
                    eqs.push(e);
                }
            }
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    // 7: x^i_j x^k_l = x^k_l x^i_j, i < k, j < l, i != l, j != k
                    if i < k && j < l && i != l && j != k {
                        let mut e = pair(x(i, j), x(k, l), RatFunc::one());
                        e = e.sub(&pair(x(k, l), x(i, j), RatFunc::one()));
                        eqs.push(e);
                    }
                    // 10: x^i_j x^k_l - x^k_l x^i_j = (q - q^-1) x^k_j x^i_l,
                    //     i > k, j < l, i != l, j != k, i != j
                    if i > k && j < l && i != l && j != k && i != j {
                        let mut e = pair(x(i, j), x(k, l), RatFunc::one());
                        e = e.sub(&pair(x(k, l), x(i, j), RatFunc::one()));
                        e = e.sub(&pair(x(k, j), x(i, l), qm()));
                        eqs.push(e);
                    }
                    // 11: x^i_j x^k_l - x^k_l x^i_j = (q - q^-1) x^i_l x^k_j,
                    //     i > k, j < l, i != l, j != k, k != l
                    if i > k && j < l && i != l && j != k && k != l {
                        let mut e = pair(x(i, j), x(k, l), RatFunc::one());
                        e = e.sub(&pair(x(k, l), x(i, j), RatFunc::one()));
                        e = e.sub(&pair(x(i, l), x(k, j), qm()));
                        eqs.push(e);
                    }
                }
            }
        }
    }

    eqs
}

/// Matrices over the free algebra, indexed like a QMatrix by pair indices.
type EMat = Vec<Vec<Element>>;

fn emat_zero(d: usize) -> EMat {
    vec![vec![Element::zero(); d]; d]
}

/// X placed in the first tensor factor: (X1)^{ik}_{jl} = x^i_j delta^k_l.
pub(crate) fn x1_mat(al: &Alphabet, copy: usize) -> EMat {
    let n = al.n;
    let d = n * n;
    let mut m = emat_zero(d);
    for i in 1..=n {
        for k in 1..=n {
            for j in 1..=n {
                m[(i - 1) * n + (k - 1)][(j - 1) * n + (k - 1)] =
                    Element::from_letter(al.x_id(copy, i, j));
            }
        }
    }
    m
}

/// X placed in the second tensor factor: (X2)^{ik}_{jl} = delta^i_j x^k_l.
pub(crate) fn x2_mat(al: &Alphabet, copy: usize) -> EMat {
    let n = al.n;
    let d = n * n;
    let mut m = emat_zero(d);
    for i in 1..=n {
        for k in 1..=n {
            for l in 1..=n {
                m[(i - 1) * n + (k - 1)][(i - 1) * n + (l - 1)] =
                    Element::from_letter(al.x_id(copy, k, l));
            }
        }
    }
    m
}

/// T1 and T2 for the quantum matrix generators.
pub(crate) fn t1_mat(al: &Alphabet) -> EMat {
    let n = al.n;
    let d = n * n;
    let mut m = emat_zero(d);
    for i in 1..=n {
        for k in 1..=n {
            for j in 1..=n {
                m[(i - 1) * n + (k - 1)][(j - 1) * n + (k - 1)] =
                    Element::from_letter(al.t_id(i, j));
            }
        }
    }
    m
}

pub(crate) fn t2_mat(al: &Alphabet) -> EMat {
    let n = al.n;
    let d = n * n;
    let mut m = emat_zero(d);
    for i in 1..=n {
        for k in 1..=n {
            for l in 1..=n {
                m[(i - 1) * n + (k - 1)][(i - 1) * n + (l - 1)] =
                    Element::from_letter(al.t_id(k, l));
            }
        }
    }
    m
}

pub(crate) fn emat_mul_free(a: &EMat, b: &EMat) -> EMat {
    let d = a.len();
    let mut out = emat_zero(d);
    for r in 0..d {
        for m in 0..d {
            if a[r][m].is_zero() {
                continue;
            }
            for c in 0..d {
                if b[m][c].is_zero() {
                    continue;
                }
                out[r][c] = out[r][c].add(&a[r][m].free_mul(&b[m][c]));
            }
        }
    }
    out
}

pub(crate) fn smat_emat_mul(s: &QMatrix, e: &EMat) -> EMat {
    let n = s.n();
    let d = n * n;
    let mut out = emat_zero(d);
    let pair = |idx: usize| (idx / n + 1, idx % n + 1);
    for r in 0..d {
        for m in 0..d {
            let (i, k) = pair(r);
            let (j, l) = pair(m);
            let c0 = s.at(i, k, j, l);
            if c0.is_zero() {
                continue;
            }
            let c = RatFunc::from_laurent(c0.clone());
            for c2 in 0..d {
                if e[m][c2].is_zero() {
                    continue;
                }
                out[r][c2] = out[r][c2].add(&e[m][c2].scale(&c));
            }
        }
    }
    out
}

pub(crate) fn emat_smat_mul(e: &EMat, s: &QMatrix) -> EMat {
    let n = s.n();
    let d = n * n;
    let mut out = emat_zero(d);
    let pair = |idx: usize| (idx / n + 1, idx % n + 1);
    for m in 0..d {
        for c2 in 0..d {
            let (i, k) = pair(m);
            let (j, l) = pair(c2);
            let c0 = s.at(i, k, j, l);
            if c0.is_zero() {
                continue;
            }
            let c = RatFunc::from_laurent(c0.clone());
            for r in 0..d {
                if e[r][m].is_zero() {
                    continue;
                }
                out[r][c2] = out[r][c2].add(&e[r][m].scale(&c));
            }
        }
    }
    out
}

pub(crate) fn emat_sub(a: &EMat, b: &EMat) -> EMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

/// The reflection equation X2 Rhat X2 Rhat = Rhat X2 Rhat X2 for one copy,
/// as a list of degree-2 equations in the free algebra.
pub(crate) fn rea_tensor_equations(al: &Alphabet, copy: usize, rhat: &QMatrix) -> Vec<Element> {
    let x2 = x2_mat(al, copy);
    let a = emat_smat_mul(&x2, rhat); // X2 Rhat
    let left = emat_mul_free(&a, &a); // X2 Rhat X2 Rhat
    let b = smat_emat_mul(rhat, &a); // Rhat X2 Rhat
    let right = emat_mul_free(&b, &x2); // Rhat X2 Rhat X2
    emat_sub(&left, &right)
        .into_iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .collect()
}

/// The cross relations R^-1 Y1 R X2 = X2 R^-1 Y1 R between copy r (X) and
/// copy s (Y), r < s, as free-algebra equations.
pub(crate) fn cross_tensor_equations(
    al: &Alphabet,
    copy_r: usize,
    copy_s: usize,
    r: &QMatrix,
    rinv: &QMatrix,
) -> Vec<Element> {
    let y1 = x1_mat(al, copy_s);
    let x2 = x2_mat(al, copy_r);
    let a = emat_smat_mul(&smat_emat_mul(rinv, &y1), r); // R^-1 Y1 R
    let left = emat_mul_free(&a, &x2);
    let right = emat_mul_free(&x2, &a);
    emat_sub(&left, &right)
        .into_iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .collect()
}

/// The RTT relations R T1 T2 = T2 T1 R as free-algebra equations.
pub(crate) fn rtt_equations(al: &Alphabet, r: &QMatrix) -> Vec<Element> {
    let t1 = t1_mat(al);
    let t2 = t2_mat(al);
    let left = smat_emat_mul(r, &emat_mul_free(&t1, &t2));
    let right = emat_smat_mul(&emat_mul_free(&t2, &t1), r);
    emat_sub(&left, &right)
        .into_iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .collect()
}

/// Cross rules for y^i_j x^k_l computed by contracting the four R-tensors:
/// the coefficient of x^m_n y^u_v is
/// sum_{a,b,c,d} (R^-1)^{an}_{uc} R^{vc}_{bl} R^{id}_{am} (Rtilde)^{bk}_{jd}.
pub(crate) fn cross_rules_by_contraction(
    al: &Alphabet,
    copy_r: usize,
    copy_s: usize,
    r: &QMatrix,
    rinv: &QMatrix,
    rtilde: &QMatrix,
) -> Vec<((LetterId, LetterId), Element)> {
    let n = al.n;
    let mut rules = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let mut rhs = Element::zero();
                    for m in 1..=n {
                        for nn in 1..=n {
                            for u in 1..=n {
                                for v in 1..=n {
                                    let mut coeff = crate::scalar::LaurentPoly::zero();
                                    for a in 1..=n {
                                        for b in 1..=n {
                                            for c in 1..=n {
                                                for d in 1..=n {
                                                    let f1 = rinv.at(a, nn, u, c);
                                                    if f1.is_zero() {
                                                        continue;
                                                    }
                                                    let f2 = r.at(v, c, b, l);
                                                    if f2.is_zero() {
                                                        continue;
                                                    }
                                                    let f3 = r.at(i, d, a, m);
                                                    if f3.is_zero() {
                                                        continue;
                                                    }
                                                    let f4 = rtilde.at(b, k, j, d);
                                                    if f4.is_zero() {
                                                        continue;
                                                    }
                                                    coeff += &(&(f1 * f2) * &(f3 * f4));
                                                }
                                            }
                                        }
                                    }
                                    if !coeff.is_zero() {
                                        rhs.add_term(
                                            vec![al.x_id(copy_r, m, nn), al.x_id(copy_s, u, v)],
                                            RatFunc::from_laurent(coeff),
                                        );
                                    }
                                }
                            }
                        }
                    }
                    rules.push(((al.x_id(copy_s, i, j), al.x_id(copy_r, k, l)), rhs));
                }
            }
        }
    }
    rules
}

/// Solve a homogeneous quadratic equation system for its descending words.
/// Returns one fully reduced rule per descending pair occurring in the
/// system; fails if the equations force a relation among normal words or if
/// a solved coefficient leaves Q[q, q^-1].
pub(crate) fn solve_quadratic_rules(
    al: &Alphabet,
    equations: &[Element],
    name: &str,
) -> Result<Vec<((LetterId, LetterId), Element)>> {
    let mut desc: BTreeSet<Vec<LetterId>> = BTreeSet::new();
    let mut asc: BTreeSet<Vec<LetterId>> = BTreeSet::new();
    for e in equations {
        for (w, _) in e.iter() {
            assert_eq!(w.len(), 2, "quadratic solver got a word of length != 2");
            if w[0] > w[1] {
                desc.insert(w.clone());
            } else {
                asc.insert(w.clone());
            }
        }
    }
    let columns: Vec<Vec<LetterId>> = desc.iter().chain(asc.iter()).cloned().collect();
    let ndesc = desc.len();
    let col_of = |w: &Vec<LetterId>| columns.iter().position(|c| c == w).unwrap();

    let mut rows: Vec<Vec<RatFunc>> = equations
        .iter()
        .map(|e| {
            let mut row = vec![RatFunc::zero(); columns.len()];
            for (w, c) in e.iter() {
                row[col_of(w)] = c.clone();
            }
            row
        })
        .collect();

    // Gauss-Jordan with pivots preferring the descending block (which comes
    // first in the column order).
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for col in 0..columns.len() {
        let Some(p) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, p);
        let inv = rows[next_row][col].recip();
        for c in 0..columns.len() {
            rows[next_row][c] = &rows[next_row][c] * &inv;
        }
        for r in 0..rows.len() {
            if r == next_row || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in 0..columns.len() {
                let t = &rows[r][c] - &(&f * &rows[next_row][c]);
                rows[r][c] = t;
            }
        }
        pivot_rows.push((next_row, col));
        next_row += 1;
    }

    let mut rules = Vec::new();
    for (r, col) in pivot_rows {
        if col >= ndesc {
            return Err(Error::Build(format!(
                "{name}: the relations force a linear dependence among normal words ({})",
                al.render_word(&columns[col])
            )));
        }
        let mut rhs = Element::zero();
        for c in 0..columns.len() {
            if c == col || rows[r][c].is_zero() {
                continue;
            }
            if c < ndesc {
                return Err(Error::Build(format!(
                    "{name}: could not isolate the redex {}",
                    al.render_word(&columns[col])
                )));
            }
            rhs.add_term(columns[c].clone(), -&rows[r][c]);
        }
        for (_, coeff) in rhs.iter() {
            if !coeff.is_laurent() {
                return Err(Error::Build(format!(
                    "{name}: redex {} solves with a non-Laurent coefficient {}",
                    al.render_word(&columns[col]),
                    coeff
                )));
            }
        }
        rules.push(((columns[col][0], columns[col][1]), rhs));
    }
    Ok(rules)
}
