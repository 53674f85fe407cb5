//! The catalog of matrix and trace identities, each verified by computing a
//! normal-form residual, plus the trace-span rank computation.
//!
//! Every entry can also run in classical mode: the same construction over
//! the commutative engine with every q-power specialized at 1, which must
//! reproduce the corresponding classical statement.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::algebras::{build_aq, build_classical, AlgebraSpec};
use crate::rewrite::{Config, Element, RuleSet, Word};
use crate::rmatrix::{build_r, derived, DerivedOp, QMatrix};
use crate::scalar::{q_integer, rank_over_field, RatFunc};
use crate::{Error, Result};

use super::{coefficient_of, AlgMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKey {
    Ch2,
    BilinearCh,
    Qtryx,
    Fund2,
    Fund1,
    Qtrzxy,
    Qtryzx,
    CyclicCongruences,
    ReaProduct,
    Hom2to3,
    CentralQtracePowers,
    HeckeIdImage,
    Prop5I,
    Prop5Ii,
}

impl IdentityKey {
    pub const ALL: [IdentityKey; 14] = [
        IdentityKey::Ch2,
        IdentityKey::BilinearCh,
        IdentityKey::Qtryx,
        IdentityKey::Fund2,
        IdentityKey::Fund1,
        IdentityKey::Qtrzxy,
        IdentityKey::Qtryzx,
        IdentityKey::CyclicCongruences,
        IdentityKey::ReaProduct,
        IdentityKey::Hom2to3,
        IdentityKey::CentralQtracePowers,
        IdentityKey::HeckeIdImage,
        IdentityKey::Prop5I,
        IdentityKey::Prop5Ii,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityKey::Ch2 => "ch2",
            IdentityKey::BilinearCh => "bilinear_ch",
            IdentityKey::Qtryx => "qtryx",
            IdentityKey::Fund2 => "fund2",
            IdentityKey::Fund1 => "fund1",
            IdentityKey::Qtrzxy => "qtrzxy",
            IdentityKey::Qtryzx => "qtryzx",
            IdentityKey::CyclicCongruences => "cyclic_congruences",
            IdentityKey::ReaProduct => "rea_product",
            IdentityKey::Hom2to3 => "hom_2to3",
            IdentityKey::CentralQtracePowers => "central_qtrace_powers",
            IdentityKey::HeckeIdImage => "hecke_id_image",
            IdentityKey::Prop5I => "prop5_i",
            IdentityKey::Prop5Ii => "prop5_ii",
        }
    }

    pub fn parse(s: &str) -> Option<IdentityKey> {
        IdentityKey::ALL.iter().copied().find(|k| k.name() == s)
    }

    /// The (N, m) pairs this entry computes in.
    pub fn params(&self) -> &'static [(usize, usize)] {
        match self {
            IdentityKey::Ch2 => &[(2, 1)],
            IdentityKey::BilinearCh | IdentityKey::Qtryx => &[(2, 2)],
            IdentityKey::Fund2
            | IdentityKey::Fund1
            | IdentityKey::Qtrzxy
            | IdentityKey::Qtryzx
            | IdentityKey::CyclicCongruences => &[(2, 3)],
            IdentityKey::ReaProduct => &[(2, 2), (3, 2)],
            IdentityKey::Hom2to3 => &[(2, 3)],
            IdentityKey::CentralQtracePowers => &[(2, 2)],
            IdentityKey::HeckeIdImage => &[(2, 2)],
            IdentityKey::Prop5I => &[(2, 3)],
            IdentityKey::Prop5Ii => &[(2, 2)],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub passed: bool,
    pub residual: String,
    pub wall_time_ms: u128,
}

/// Shared context of one verification: the algebra (braided or classical)
/// and the scalar specialization.
struct Ctx {
    spec: AlgebraSpec,
    classical: bool,
}

impl Ctx {
    fn new(n: usize, m: usize, classical: bool) -> Result<Ctx> {
        let spec = if classical {
            build_classical(n, m, Config::default())?
        } else {
            build_aq(n, m, Config::default())?
        };
        Ok(Ctx { spec, classical })
    }

    fn rs(&self) -> Arc<RuleSet> {
        self.spec.rules.clone()
    }

    fn qp(&self, e: i32) -> RatFunc {
        if self.classical {
            RatFunc::one()
        } else {
            RatFunc::q_pow(e)
        }
    }

    /// q - q^-1, which vanishes classically.
    fn qm(&self) -> RatFunc {
        &self.qp(1) - &self.qp(-1)
    }

    fn qint(&self, n: i64) -> RatFunc {
        let v = RatFunc::from_laurent(q_integer(n).expect("positive q-integer"));
        if self.classical {
            RatFunc::from_rational(v.eval_at_one())
        } else {
            v
        }
    }

    fn gen(&self, copy: usize) -> AlgMatrix {
        AlgMatrix::generator(&self.spec, copy)
    }

    fn tr(&self, f: &AlgMatrix) -> Element {
        f.qtrace_with(&|e| self.qp(e))
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.spec.rules.multiply(a, b)
    }

    fn scalar_mat(&self, f: &Element) -> AlgMatrix {
        AlgMatrix::scalar_matrix(self.spec.n, self.rs(), f)
    }

    /// An R-matrix derivative, specialized at q = 1 in classical mode.
    fn qmat(&self, m: &QMatrix) -> QMatrix {
        if !self.classical {
            return m.clone();
        }
        let n = m.n();
        let mut out = QMatrix::zero(n);
        for i in 1..=n {
            for k in 1..=n {
                for j in 1..=n {
                    for l in 1..=n {
                        let v = m.at(i, k, j, l).eval_at_one();
                        *out.at_mut(i, k, j, l) = crate::scalar::LaurentPoly::from_rational(v);
                    }
                }
            }
        }
        out
    }
}

// Pair-indexed matrices over an algebra, for the matrix forms of the
// defining relations.
type PMat = Vec<Vec<Element>>;

fn place1(u: &AlgMatrix) -> PMat {
    let n = u.n();
    let d = n * n;
    let mut m = vec![vec![Element::zero(); d]; d];
    for i in 1..=n {
        for k in 1..=n {
            for j in 1..=n {
                m[(i - 1) * n + (k - 1)][(j - 1) * n + (k - 1)] = u.at(i, j).clone();
            }
        }
    }
    m
}

fn place2(u: &AlgMatrix) -> PMat {
    let n = u.n();
    let d = n * n;
    let mut m = vec![vec![Element::zero(); d]; d];
    for i in 1..=n {
        for k in 1..=n {
            for l in 1..=n {
                m[(i - 1) * n + (k - 1)][(i - 1) * n + (l - 1)] = u.at(k, l).clone();
            }
        }
    }
    m
}

fn pmul(rs: &RuleSet, a: &PMat, b: &PMat) -> PMat {
    let d = a.len();
    let mut out = vec![vec![Element::zero(); d]; d];
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
    out.iter()
        .map(|row| row.iter().map(|e| rs.normal_form(e)).collect())
        .collect()
}

fn psmul(s: &QMatrix, a: &PMat) -> PMat {
    let n = s.n();
    let d = n * n;
    let pair = |idx: usize| (idx / n + 1, idx % n + 1);
    let mut out = vec![vec![Element::zero(); d]; d];
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
                if a[m][c2].is_zero() {
                    continue;
                }
                out[r][c2] = out[r][c2].add(&a[m][c2].scale(&c));
            }
        }
    }
    out
}

fn pmuls(a: &PMat, s: &QMatrix) -> PMat {
    let n = s.n();
    let d = n * n;
    let pair = |idx: usize| (idx / n + 1, idx % n + 1);
    let mut out = vec![vec![Element::zero(); d]; d];
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
                if a[r][m].is_zero() {
                    continue;
                }
                out[r][c2] = out[r][c2].add(&a[r][m].scale(&c));
            }
        }
    }
    out
}

fn psub(a: &PMat, b: &PMat) -> PMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

fn pmat_residual(rs: &RuleSet, p: &PMat) -> Option<String> {
    for row in p {
        for e in row {
            let nf = rs.normal_form(e);
            if !nf.is_zero() {
                return Some(rs.alphabet.render_element(&nf));
            }
        }
    }
    None
}

/// Rank over Q(q) of a family of elements, expanded in their support words.
fn rank_of_elements(rows: &[Element]) -> usize {
    let mut columns: std::collections::BTreeMap<Word, usize> = Default::default();
    for e in rows {
        for (w, _) in e.iter() {
            let next = columns.len();
            columns.entry(w.clone()).or_insert(next);
        }
    }
    let mat: Vec<Vec<RatFunc>> = rows
        .iter()
        .map(|e| {
            let mut row = vec![RatFunc::zero(); columns.len()];
            for (w, c) in e.iter() {
                row[columns[w]] = c.clone();
            }
            row
        })
        .collect();
    rank_over_field(&mat)
}

fn zero_report(rs: &RuleSet, residual: Element) -> (bool, String) {
    let nf = rs.normal_form(&residual);
    if nf.is_zero() {
        (true, "0".into())
    } else {
        (false, rs.alphabet.render_element(&nf))
    }
}

fn zero_report_matrix(m: &AlgMatrix) -> (bool, String) {
    if m.is_zero() {
        (true, "0".into())
    } else {
        (false, m.render())
    }
}

fn ch2(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 1, classical)?;
    let x = ctx.gen(1);
    let trx = ctx.tr(&x);
    let trx2 = ctx.tr(&x.mul(&x));
    let c = ctx
        .mul(&trx, &trx)
        .scale(&ctx.qp(-1))
        .sub(&trx2)
        .scale(&(&RatFunc::one() / &ctx.qint(2)));
    let res = x
        .mul(&x)
        .sub(&x.left_mul_elem(&trx).scale(&ctx.qp(-1)))
        .add(&ctx.scalar_mat(&c));
    Ok(zero_report_matrix(&res))
}

fn bilinear_ch(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 2, classical)?;
    let (x, y) = (ctx.gen(1), ctx.gen(2));
    let (trx, tryy) = (ctx.tr(&x), ctx.tr(&y));
    let trxy = ctx.tr(&x.mul(&y));
    let scal = ctx.mul(&trx, &tryy).sub(&trxy.scale(&ctx.qp(-1)));
    let res = x
        .mul(&y)
        .add(&y.mul(&x).scale(&ctx.qp(2)))
        .sub(&y.left_mul_elem(&trx).scale(&ctx.qp(1)))
        .sub(&x.left_mul_elem(&tryy).scale(&ctx.qp(1)))
        .add(&ctx.scalar_mat(&scal));
    Ok(zero_report_matrix(&res))
}

fn qtryx(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 2, classical)?;
    let (x, y) = (ctx.gen(1), ctx.gen(2));
    let res = ctx
        .tr(&y.mul(&x))
        .scale(&ctx.qp(2))
        .sub(&ctx.tr(&x.mul(&y)).scale(&ctx.qp(-2)))
        .sub(&ctx.mul(&ctx.tr(&x), &ctx.tr(&y)).scale(&ctx.qm()));
    Ok(zero_report(&ctx.spec.rules, res))
}

fn fund_traces(ctx: &Ctx) -> (AlgMatrix, AlgMatrix, AlgMatrix) {
    (ctx.gen(1), ctx.gen(2), ctx.gen(3))
}

fn fund2(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 3, classical)?;
    let (x, y, z) = fund_traces(&ctx);
    let (tx, ty, tz) = (ctx.tr(&x), ctx.tr(&y), ctx.tr(&z));
    let res = ctx
        .mul(&ctx.mul(&tx, &ty), &tz)
        .sub(&ctx.mul(&ctx.tr(&x.mul(&y)), &tz).scale(&ctx.qp(-1)))
        .sub(&ctx.mul(&tx, &ctx.tr(&y.mul(&z))).scale(&ctx.qp(1)))
        .sub(&ctx.mul(&ty, &ctx.tr(&x.mul(&z))).scale(&ctx.qp(1)))
        .add(&ctx.tr(&y.mul(&x).mul(&z)).scale(&ctx.qp(2)))
        .add(&ctx.tr(&x.mul(&y).mul(&z)));
    Ok(zero_report(&ctx.spec.rules, res))
}

fn fund1(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 3, classical)?;
    let (x, y, z) = fund_traces(&ctx);
    let (tx, ty, tz) = (ctx.tr(&x), ctx.tr(&y), ctx.tr(&z));
    let res = ctx
        .mul(&ctx.mul(&tx, &ty), &tz)
        .sub(&ctx.mul(&ctx.tr(&x.mul(&y)), &tz).scale(&ctx.qp(1)))
        .sub(&ctx.mul(&tx, &ctx.tr(&y.mul(&z))).scale(&ctx.qp(-1)))
        .sub(&ctx.mul(&ctx.tr(&x.mul(&z)), &ty).scale(&ctx.qp(1)))
        .add(&ctx.tr(&x.mul(&z).mul(&y)).scale(&ctx.qp(2)))
        .add(&ctx.tr(&x.mul(&y).mul(&z)));
    Ok(zero_report(&ctx.spec.rules, res))
}

fn qtrzxy(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 3, classical)?;
    let (x, y, z) = fund_traces(&ctx);
    let res = ctx
        .tr(&z.mul(&x).mul(&y))
        .scale(&ctx.qp(2))
        .sub(&ctx.tr(&x.mul(&y).mul(&z)).scale(&ctx.qp(-2)))
        .sub(&ctx.mul(&ctx.tr(&x.mul(&y)), &ctx.tr(&z)).scale(&ctx.qm()));
    Ok(zero_report(&ctx.spec.rules, res))
}

fn qtryzx(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 3, classical)?;
    let (x, y, z) = fund_traces(&ctx);
    let res = ctx
        .tr(&y.mul(&z).mul(&x))
        .scale(&ctx.qp(2))
        .sub(&ctx.tr(&x.mul(&y).mul(&z)).scale(&ctx.qp(-2)))
        .sub(&ctx.mul(&ctx.tr(&x), &ctx.tr(&y.mul(&z))).scale(&ctx.qm()));
    Ok(zero_report(&ctx.spec.rules, res))
}

fn cyclic_congruences(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 3, classical)?;
    let (x, y, z) = fund_traces(&ctx);
    let (tx, ty, tz) = (ctx.tr(&x), ctx.tr(&y), ctx.tr(&z));
    let t2 = |a: &AlgMatrix, b: &AlgMatrix| ctx.tr(&a.mul(b));
    let span: Vec<Element> = vec![
        ctx.mul(&ctx.mul(&tx, &ty), &tz),
        ctx.mul(&t2(&x, &y), &tz),
        ctx.mul(&t2(&y, &x), &tz),
        ctx.mul(&t2(&x, &z), &ty),
        ctx.mul(&t2(&z, &x), &ty),
        ctx.mul(&t2(&y, &z), &tx),
        ctx.mul(&t2(&z, &y), &tx),
    ];
    let t3 = |a: &AlgMatrix, b: &AlgMatrix, c: &AlgMatrix| ctx.tr(&a.mul(b).mul(c));
    let txyz = t3(&x, &y, &z);
    let diffs: Vec<(i32, Element)> = vec![
        (2, txyz.add(&t3(&y, &x, &z).scale(&ctx.qp(2)))),
        (2, txyz.add(&t3(&x, &z, &y).scale(&ctx.qp(2)))),
        (4, txyz.sub(&t3(&y, &z, &x).scale(&ctx.qp(4)))),
        (4, txyz.sub(&t3(&z, &x, &y).scale(&ctx.qp(4)))),
        (6, txyz.add(&t3(&z, &y, &x).scale(&ctx.qp(6)))),
    ];
    let base = rank_of_elements(&span);
    for (i, (_, d)) in diffs.iter().enumerate() {
        let mut rows = span.clone();
        rows.push(d.clone());
        if rank_of_elements(&rows) != base {
            return Ok((
                false,
                format!("congruence {} escapes the degree-<=2 trace span", i + 1),
            ));
        }
    }
    Ok((true, "0".into()))
}

fn rea_product(classical: bool) -> Result<(bool, String)> {
    for n in [2usize, 3] {
        let ctx = Ctx::new(n, 2, classical)?;
        let u = ctx.gen(1).mul(&ctx.gen(2));
        let rhat = ctx.qmat(&derived(&build_r(n)?, DerivedOp::RHat)?);
        let u2 = place2(&u);
        let rs = ctx.spec.rules.clone();
        let a = pmuls(&u2, &rhat);
        let left = pmul(&rs, &a, &a);
        let b = psmul(&rhat, &a);
        let right = pmul(&rs, &b, &u2);
        if let Some(r) = pmat_residual(&rs, &psub(&left, &right)) {
            return Ok((false, format!("N = {n}: {r}")));
        }
    }
    Ok((true, "0".into()))
}

fn hom_2to3(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 3, classical)?;
    let u = ctx.gen(1).mul(&ctx.gen(2));
    let v = ctx.gen(3);
    let r = ctx.qmat(&build_r(2)?);
    let rinv = ctx.qmat(&derived(&build_r(2)?, DerivedOp::RInv)?);
    let rs = ctx.spec.rules.clone();
    let a = pmuls(&psmul(&rinv, &place1(&v)), &r); // R^-1 V1 R
    let left = pmul(&rs, &a, &place2(&u));
    let right = pmul(&rs, &place2(&u), &a);
    match pmat_residual(&rs, &psub(&left, &right)) {
        None => Ok((true, "0".into())),
        Some(r) => Ok((false, r)),
    }
}

fn central_qtrace_powers(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 2, classical)?;
    let rs = ctx.spec.rules.clone();
    for copy in 1..=2 {
        let g = ctx.gen(copy);
        for p in 1..=3u32 {
            let f = ctx.tr(&g.pow(p));
            for l in rs.alphabet.ids() {
                let c = rs.commutator(&f, &Element::from_letter(l));
                if !c.is_zero() {
                    return Ok((
                        false,
                        format!(
                            "[Tr_q(X({copy})^{p}), {}] = {}",
                            rs.alphabet.render_letter(l),
                            rs.alphabet.render_element(&c)
                        ),
                    ));
                }
            }
        }
    }
    Ok((true, "0".into()))
}

fn hecke_id_image(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 2, classical)?;
    let rs = ctx.spec.rules.clone();
    let al = &rs.alphabet;
    let rtilde = ctx.qmat(&derived(&build_r(2)?, DerivedOp::RTilde)?);
    // The image of id_{V(x)V} under the multilinear-component isomorphism:
    // three swaps V(x)V* -> V*(x)V applied to e_i(x)e_j(x)eps^j(x)eps^i give
    // sum Rtilde^{si}_{kt} Rtilde^{ml}_{in} Rtilde^{kj}_{jl} x^n_m y^t_s.
    let mut e = Element::zero();
    for s in 1..=2usize {
        for i in 1..=2usize {
            for k in 1..=2usize {
                for t in 1..=2usize {
                    let f1 = rtilde.at(s, i, k, t);
                    if f1.is_zero() {
                        continue;
                    }
                    for m in 1..=2usize {
                        for l in 1..=2usize {
                            for n in 1..=2usize {
                                let f2 = rtilde.at(m, l, i, n);
                                if f2.is_zero() {
                                    continue;
                                }
                                for j in 1..=2usize {
                                    let f3 = rtilde.at(k, j, j, l);
                                    if f3.is_zero() {
                                        continue;
                                    }
                                    let coeff = &(f1 * f2) * f3;
                                    e.add_term(
                                        vec![al.x_id(1, n, m), al.x_id(2, t, s)],
                                        RatFunc::from_laurent(coeff),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let (x, y) = (ctx.gen(1), ctx.gen(2));
    let rhs = ctx
        .tr(&x.mul(&y))
        .scale(&ctx.qp(-2))
        .add(&ctx.mul(&ctx.tr(&x), &ctx.tr(&y)).scale(&(&ctx.qp(-5) - &ctx.qp(-3))));
    Ok(zero_report(&rs, e.sub(&rhs)))
}

fn prop5_i(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 3, classical)?;
    let rs = ctx.spec.rules.clone();
    let al = &rs.alphabet;
    let (x, y, z) = fund_traces(&ctx);
    let comm = rs.commutator(&ctx.tr(&x.mul(&y)), &ctx.tr(&x.mul(&z)));
    let coeff = coefficient_of(&rs, &comm, &vec![al.x_id(2, 2, 1), al.x_id(3, 2, 1)])?;
    // Expected witness: (1 - q^2) x^1_2 x^1_2 (zero classically).
    let expected = Element::from_term(
        vec![al.x_id(1, 1, 2), al.x_id(1, 1, 2)],
        &ctx.qp(0) - &ctx.qp(2),
    );
    let diff = rs.normal_form(&coeff.sub(&expected));
    if diff.is_zero() {
        Ok((true, format!("coefficient = {}", al.render_element(&coeff))))
    } else {
        Ok((false, al.render_element(&diff)))
    }
}

fn prop5_ii(classical: bool) -> Result<(bool, String)> {
    let ctx = Ctx::new(2, 2, classical)?;
    let rs = ctx.spec.rules.clone();
    let al = &rs.alphabet;
    let (x, y) = (ctx.gen(1), ctx.gen(2));
    let comm = rs.commutator(&ctx.tr(&x.mul(&y)), &Element::from_letter(al.x_id(1, 1, 1)));
    let coeff = coefficient_of(&rs, &comm, &vec![al.x_id(2, 2, 1)])?;
    // Expected witness: q [x^1_2, x^1_1], nonzero precisely when q^2 != 1.
    let x12 = Element::from_letter(al.x_id(1, 1, 2));
    let x11 = Element::from_letter(al.x_id(1, 1, 1));
    let expected = rs.commutator(&x12, &x11).scale(&ctx.qp(1));
    let diff = rs.normal_form(&coeff.sub(&expected));
    if !diff.is_zero() {
        return Ok((false, al.render_element(&diff)));
    }
    if !classical && coeff.is_zero() {
        return Ok((false, "witness coefficient vanished".into()));
    }
    Ok((true, format!("coefficient = {}", al.render_element(&coeff))))
}

fn run_key(key: IdentityKey, classical: bool) -> Result<(bool, String)> {
    match key {
        IdentityKey::Ch2 => ch2(classical),
        IdentityKey::BilinearCh => bilinear_ch(classical),
        IdentityKey::Qtryx => qtryx(classical),
        IdentityKey::Fund2 => fund2(classical),
        IdentityKey::Fund1 => fund1(classical),
        IdentityKey::Qtrzxy => qtrzxy(classical),
        IdentityKey::Qtryzx => qtryzx(classical),
        IdentityKey::CyclicCongruences => cyclic_congruences(classical),
        IdentityKey::ReaProduct => rea_product(classical),
        IdentityKey::Hom2to3 => hom_2to3(classical),
        IdentityKey::CentralQtracePowers => central_qtrace_powers(classical),
        IdentityKey::HeckeIdImage => hecke_id_image(classical),
        IdentityKey::Prop5I => prop5_i(classical),
        IdentityKey::Prop5Ii => prop5_ii(classical),
    }
}

/// Verify one catalog identity; `classical` replays it at q = 1 in the
/// commutative engine.
pub fn verify(key: IdentityKey, classical: bool) -> Result<IdentityReport> {
    let start = Instant::now();
    let (passed, residual) = run_key(key, classical)?;
    Ok(IdentityReport {
        name: key.name().to_string(),
        passed,
        residual,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

/// Verify the whole catalog. Entries are independent pure computations and
/// run concurrently; the output order is the catalog order.
pub fn verify_all(classical: bool) -> Result<Vec<IdentityReport>> {
    let mut out: Vec<Option<Result<IdentityReport>>> =
        (0..IdentityKey::ALL.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for key in IdentityKey::ALL {
            handles.push(scope.spawn(move || verify(key, classical)));
        }
        for (slot, h) in out.iter_mut().zip(handles) {
            *slot = Some(h.join().expect("verification thread panicked"));
        }
    });
    out.into_iter().map(|r| r.unwrap()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanRank {
    pub rank: usize,
    pub generators_used: usize,
}

/// Rank over Q(q) of all products of q-traces of monomials of length at
/// most `maxlen` with total multidegree `d`, in the normal-word basis of
/// A_q(N, m).
pub fn qtrace_span_rank(n: usize, m: usize, d: &[u32], maxlen: usize) -> Result<SpanRank> {
    let config = Config::default();
    if d.len() != m {
        return Err(Error::Usage(format!(
            "qtrace_span_rank: multidegree must have {m} components"
        )));
    }
    let total: u32 = d.iter().sum();
    if total > config.degree_cap {
        return Err(Error::Usage(format!(
            "qtrace_span_rank: total degree {total} exceeds cap {}",
            config.degree_cap
        )));
    }
    let spec = build_aq(n, m, config)?;
    let rs = spec.rules.clone();
    let gens: Vec<AlgMatrix> = (1..=m).map(|k| AlgMatrix::generator(&spec, k)).collect();

    // Trace words: copy sequences of length <= maxlen fitting inside d.
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (1..=m).map(|k| vec![k]).collect();
    while let Some(w) = stack.pop() {
        let deg = word_degree(&w, m);
        if deg.iter().zip(d).any(|(a, b)| a > b) {
            continue;
        }
        words.push(w.clone());
        if w.len() < maxlen {
            for k in 1..=m {
                let mut nw = w.clone();
                nw.push(k);
                stack.push(nw);
            }
        }
    }
    words.sort();

    let trace_of = |w: &[usize]| -> Element {
        let mut acc = AlgMatrix::identity(n, rs.clone());
        for &k in w {
            acc = acc.mul(&gens[k - 1]);
        }
        acc.qtrace()
    };

    // Ordered products of trace words with total degree d, deduplicated by
    // sorting central factors (single-copy trace words commute with
    // everything) in front of the rest.
    let mut sequences: std::collections::BTreeSet<Vec<Vec<usize>>> = Default::default();
    let mut frontier: Vec<(Vec<Vec<usize>>, Vec<u32>)> = vec![(Vec::new(), vec![0; m])];
    while let Some((seq, deg)) = frontier.pop() {
        if deg == d {
            sequences.insert(canonical_sequence(&seq, m));
            continue;
        }
        for w in &words {
            let wd = word_degree(w, m);
            let nd: Vec<u32> = deg.iter().zip(&wd).map(|(a, b)| a + b).collect();
            if nd.iter().zip(d).any(|(a, b)| a > b) {
                continue;
            }
            let mut ns = seq.clone();
            ns.push(w.clone());
            frontier.push((ns, nd));
        }
    }

    let mut rows = Vec::new();
    for seq in &sequences {
        let mut acc = Element::one();
        for w in seq {
            acc = rs.multiply(&acc, &trace_of(w));
        }
        rows.push(acc);
    }
    Ok(SpanRank {
        rank: rank_of_elements(&rows),
        generators_used: rows.len(),
    })
}

fn word_degree(w: &[usize], m: usize) -> Vec<u32> {
    let mut d = vec![0u32; m];
    for &k in w {
        d[k - 1] += 1;
    }
    d
}

fn is_central_word(w: &[usize]) -> bool {
    w.iter().all(|&k| k == w[0])
}

fn canonical_sequence(seq: &[Vec<usize>], _m: usize) -> Vec<Vec<usize>> {
    let mut central: Vec<Vec<usize>> = seq
        .iter()
        .filter(|w| is_central_word(w))
        .cloned()
        .collect();
    central.sort();
    let rest = seq.iter().filter(|w| !is_central_word(w)).cloned();
    central.into_iter().chain(rest).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names_round_trip() {
        for key in IdentityKey::ALL {
            assert_eq!(IdentityKey::parse(key.name()), Some(key));
        }
        assert_eq!(IdentityKey::parse("nope"), None);
    }

    #[test]
    fn ch2_holds() {
        let rep = verify(IdentityKey::Ch2, false).unwrap();
        assert!(rep.passed, "{}", rep.residual);
    }

    #[test]
    fn qtryx_holds() {
        let rep = verify(IdentityKey::Qtryx, false).unwrap();
        assert!(rep.passed, "{}", rep.residual);
    }

    #[test]
    fn hecke_image_matches_trace_expression() {
        let rep = verify(IdentityKey::HeckeIdImage, false).unwrap();
        assert!(rep.passed, "{}", rep.residual);
    }

    #[test]
    fn prop5_witnesses() {
        let rep = verify(IdentityKey::Prop5I, false).unwrap();
        assert!(rep.passed, "{}", rep.residual);
        assert!(rep.residual.contains("x(1)^1_2 x(1)^1_2"));
        let rep = verify(IdentityKey::Prop5Ii, false).unwrap();
        assert!(rep.passed, "{}", rep.residual);
    }

    #[test]
    fn span_rank_examples() {
        // d = (1, 1): {Tr X Tr Y, Tr(XY), Tr(YX)} has rank 2.
        let s = qtrace_span_rank(2, 2, &[1, 1], 2).unwrap();
        assert_eq!(s.rank, 2);
        // d = (1): spanned by Tr_q(X).
        let s = qtrace_span_rank(2, 1, &[1], 2).unwrap();
        assert_eq!(s.rank, 1);
    }
}
