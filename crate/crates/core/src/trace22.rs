//! The two-matrix 2x2 trace ring: the presentation of its generators, the
//! freeness of the module over the coinvariant ring, and the isomorphism
//! onto the classical trace ring.
//!
//! The classical side runs on the same rewriting engine with commutative
//! swap rules and coefficients in Q(q) (the isomorphism genuinely needs q:
//! the image of E is e + (1 - q^-2) xy).

use std::time::Instant;

use crate::algebras::{build_aq, build_classical, AlgebraSpec};
use crate::hilbert::{component_character, mult_adjoint, mult_trivial};
use crate::matrixops::{AlgMatrix, IdentityReport};
use crate::rewrite::{Config, Element};
use crate::scalar::{rank_over_field, RatFunc};
use crate::Result;

/// The seven presentation generators of the quantum trace ring at N = m = 2.
pub struct PresentationGenerators {
    pub spec: AlgebraSpec,
    pub x: AlgMatrix,
    pub y: AlgMatrix,
    pub a: AlgMatrix,
    pub b: AlgMatrix,
    pub c: AlgMatrix,
    pub d: AlgMatrix,
    pub e: AlgMatrix,
}

fn qp(e: i32) -> RatFunc {
    RatFunc::q_pow(e)
}

impl PresentationGenerators {
    pub fn new() -> Result<Self> {
        let spec = build_aq(2, 2, Config::default())?;
        let al = spec.alphabet().clone();
        let rs = spec.rules.clone();
        let x = AlgMatrix::generator(&spec, 1);
        let y = AlgMatrix::generator(&spec, 2);
        let scal = |f: &Element| AlgMatrix::scalar_matrix(2, rs.clone(), f);

        let a = scal(&x.qtrace().scale(&qp(-1)));
        let b = scal(&y.qtrace().scale(&qp(-1)));
        // C = (q^-2 x^2_2 x^1_1 - x^1_2 x^2_1) I and likewise D for copy 2.
        let quad = |copy: usize| {
            let mut f = Element::from_term(
                vec![al.x_id(copy, 2, 2), al.x_id(copy, 1, 1)],
                qp(-2),
            );
            f.add_term(
                vec![al.x_id(copy, 1, 2), al.x_id(copy, 2, 1)],
                &RatFunc::zero() - &RatFunc::one(),
            );
            f
        };
        let c = scal(&quad(1));
        let d = scal(&quad(2));
        let e = a
            .mul(&b)
            .sub(&scal(&x.mul(&y).qtrace().scale(&qp(-3))));
        Ok(PresentationGenerators {
            spec,
            x,
            y,
            a,
            b,
            c,
            d,
            e,
        })
    }
}

fn report(name: &str, start: Instant, residual: &AlgMatrix) -> IdentityReport {
    IdentityReport {
        name: name.to_string(),
        passed: residual.is_zero(),
        residual: if residual.is_zero() {
            "0".into()
        } else {
            residual.render()
        },
        wall_time_ms: start.elapsed().as_millis(),
    }
}

/// The complete relation list of the presentation, each as a zero residual
/// in M_2(A_q(2,2)).
pub fn verify_presentation() -> Result<Vec<IdentityReport>> {
    let g = PresentationGenerators::new()?;
    let mut out = Vec::new();

    for (name, s) in [
        ("central_a", &g.a),
        ("central_b", &g.b),
        ("central_c", &g.c),
        ("central_d", &g.d),
    ] {
        let start = Instant::now();
        let res = s
            .mul(&g.x)
            .sub(&g.x.mul(s))
            .add(&s.mul(&g.y))
            .sub(&g.y.mul(s));
        out.push(report(name, start, &res));
    }

    let start = Instant::now();
    let res = g.x.mul(&g.x).sub(&g.a.mul(&g.x)).add(&g.c);
    out.push(report("x_squared", start, &res));

    let start = Instant::now();
    let res = g.y.mul(&g.y).sub(&g.b.mul(&g.y)).add(&g.d);
    out.push(report("y_squared", start, &res));

    // YX = -q^-2 XY + AY + BX - E
    let start = Instant::now();
    let res = g
        .y
        .mul(&g.x)
        .add(&g.x.mul(&g.y).scale(&qp(-2)))
        .sub(&g.a.mul(&g.y))
        .sub(&g.b.mul(&g.x))
        .add(&g.e);
    out.push(report("yx_relation", start, &res));

    // XE = q^2 EX + (1-q^2) ABX + (q^-2 - q^2) CY + (1-q^-2) AXY + (q^2-1) CB
    let start = Instant::now();
    let one = RatFunc::one();
    let res = g
        .x
        .mul(&g.e)
        .sub(&g.e.mul(&g.x).scale(&qp(2)))
        .sub(&g.a.mul(&g.b).mul(&g.x).scale(&(&one - &qp(2))))
        .sub(&g.c.mul(&g.y).scale(&(&qp(-2) - &qp(2))))
        .sub(&g.a.mul(&g.x).mul(&g.y).scale(&(&one - &qp(-2))))
        .sub(&g.c.mul(&g.b).scale(&(&qp(2) - &one)));
    out.push(report("xe_relation", start, &res));

    // YE = q^-2 EY + (1-q^-2) ABY + (1-q^-4) DX + (q^-4-q^-2) BXY + (q^-2-1) AD
    let start = Instant::now();
    let res = g
        .y
        .mul(&g.e)
        .sub(&g.e.mul(&g.y).scale(&qp(-2)))
        .sub(&g.a.mul(&g.b).mul(&g.y).scale(&(&one - &qp(-2))))
        .sub(&g.d.mul(&g.x).scale(&(&one - &qp(-4))))
        .sub(&g.b.mul(&g.x).mul(&g.y).scale(&(&qp(-4) - &qp(-2))))
        .sub(&g.a.mul(&g.d).scale(&(&qp(-2) - &one)));
    out.push(report("ye_relation", start, &res));

    Ok(out)
}

/// XYE = EXY, equivalently Tr_q(XY) commutes with XY.
pub fn verify_xye() -> Result<IdentityReport> {
    let g = PresentationGenerators::new()?;
    let start = Instant::now();
    let xy = g.x.mul(&g.y);
    let res = xy.mul(&g.e).sub(&g.e.mul(&xy));
    // Equivalent scalar form: [Tr_q(XY), (XY)^i_j] = 0 entrywise.
    let trxy = xy.qtrace();
    let rs = g.spec.rules.clone();
    let mut scalar_ok = true;
    for i in 1..=2 {
        for j in 1..=2 {
            if !rs.commutator(&trxy, xy.at(i, j)).is_zero() {
                scalar_ok = false;
            }
        }
    }
    let mut rep = report("xye", start, &res);
    rep.passed = rep.passed && scalar_ok;
    Ok(rep)
}

/// Monomials of the coinvariant-ring generators Tr_q(X), Tr_q(X^2),
/// Tr_q(Y), Tr_q(Y^2), Tr_q(XY) of one multidegree, as exponent tuples
/// (a, b, c, e, f) with degree (a + 2b + f, c + 2e + f).
fn rq_monomial_exponents(d: &[u32]) -> Vec<[u32; 5]> {
    let (d1, d2) = (d[0], d[1]);
    let mut out = Vec::new();
    for f in 0..=d1.min(d2) {
        for b in 0..=(d1 - f) / 2 {
            let a = d1 - f - 2 * b;
            for e in 0..=(d2 - f) / 2 {
                let c = d2 - f - 2 * e;
                out.push([a, b, c, e, f]);
            }
        }
    }
    out
}

struct RqBasis {
    gens: [Element; 5],
    spec: AlgebraSpec,
}

impl RqBasis {
    fn new(spec: &AlgebraSpec) -> Self {
        let x = AlgMatrix::generator(spec, 1);
        let y = AlgMatrix::generator(spec, 2);
        RqBasis {
            gens: [
                x.qtrace(),
                x.mul(&x).qtrace(),
                y.qtrace(),
                y.mul(&y).qtrace(),
                x.mul(&y).qtrace(),
            ],
            spec: spec.clone(),
        }
    }

    fn monomial(&self, exps: &[u32; 5]) -> Element {
        let rs = &self.spec.rules;
        let mut acc = Element::one();
        for (g, &e) in self.gens.iter().zip(exps) {
            for _ in 0..e {
                acc = rs.multiply(&acc, g);
            }
        }
        acc
    }
}

fn flatten_rank(mats: &[AlgMatrix]) -> usize {
    use std::collections::BTreeMap;
    let mut columns: BTreeMap<(usize, Vec<u8>), usize> = BTreeMap::new();
    for m in mats {
        for (pos, e) in m.entries().enumerate() {
            for (w, _) in e.iter() {
                let next = columns.len();
                columns.entry((pos, w.clone())).or_insert(next);
            }
        }
    }
    let rows: Vec<Vec<RatFunc>> = mats
        .iter()
        .map(|m| {
            let mut row = vec![RatFunc::zero(); columns.len()];
            for (pos, e) in m.entries().enumerate() {
                for (w, c) in e.iter() {
                    row[columns[&(pos, w.clone())]] = c.clone();
                }
            }
            row
        })
        .collect();
    rank_over_field(&rows)
}

/// For every multidegree of total degree <= cap: the products
/// {r M : r a coinvariant monomial, M in {I, X, Y, XY}} of that degree must
/// have rank equal to the trace-ring Hilbert coefficient. Rank = count
/// certifies independence, and the Hilbert coefficient certifies spanning.
pub fn freeness_check(cap: u32) -> Result<bool> {
    let spec = build_aq(2, 2, Config::default())?;
    let basis = RqBasis::new(&spec);
    let x = AlgMatrix::generator(&spec, 1);
    let y = AlgMatrix::generator(&spec, 2);
    let module_gens: [(AlgMatrix, [u32; 2]); 4] = [
        (AlgMatrix::identity(2, spec.rules.clone()), [0, 0]),
        (x.clone(), [1, 0]),
        (y.clone(), [0, 1]),
        (x.mul(&y), [1, 1]),
    ];
    for d1 in 0..=cap {
        for d2 in 0..=cap - d1 {
            let mut rows = Vec::new();
            for (mat, mdeg) in &module_gens {
                if mdeg[0] > d1 || mdeg[1] > d2 {
                    continue;
                }
                let rem = [d1 - mdeg[0], d2 - mdeg[1]];
                for exps in rq_monomial_exponents(&rem) {
                    rows.push(mat.left_mul_elem(&basis.monomial(&exps)));
                }
            }
            let chi = component_character(2, 2, &[d1, d2])?;
            let expected = (mult_trivial(&chi, 2) + mult_adjoint(&chi, 2)) as usize;
            if rows.len() != expected || flatten_rank(&rows) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The five coinvariant generators commute pairwise, and their monomials up
/// to total degree `cap` are linearly independent (rank = monomial count per
/// multidegree), so they generate a 5-variable polynomial ring at desk
/// scale.
pub fn rq_generators_polynomial(cap: u32) -> Result<bool> {
    let spec = build_aq(2, 2, Config::default())?;
    let basis = RqBasis::new(&spec);
    let rs = spec.rules.clone();
    for i in 0..5 {
        for j in i + 1..5 {
            if !rs.commutator(&basis.gens[i], &basis.gens[j]).is_zero() {
                return Ok(false);
            }
        }
    }
    for d1 in 0..=cap {
        for d2 in 0..=cap - d1 {
            let exps = rq_monomial_exponents(&[d1, d2]);
            let rows: Vec<Element> = exps.iter().map(|e| basis.monomial(e)).collect();
            let mut columns: std::collections::BTreeMap<Vec<u8>, usize> = Default::default();
            for e in &rows {
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
            if rank_over_field(&mat) != rows.len() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The classical trace ring with Q(q) coefficients and its five scalars.
pub struct ClassicalRing {
    pub spec: AlgebraSpec,
    pub x: AlgMatrix,
    pub y: AlgMatrix,
    pub a: AlgMatrix,
    pub b: AlgMatrix,
    pub c: AlgMatrix,
    pub d: AlgMatrix,
    pub e: AlgMatrix,
}

impl ClassicalRing {
    pub fn new() -> Result<Self> {
        let spec = build_classical(2, 2, Config::default())?;
        let rs = spec.rules.clone();
        let x = AlgMatrix::generator(&spec, 1);
        let y = AlgMatrix::generator(&spec, 2);
        let scal = |f: &Element| AlgMatrix::scalar_matrix(2, rs.clone(), f);
        let trace = |m: &AlgMatrix| m.at(1, 1).add(m.at(2, 2));
        let det = |m: &AlgMatrix| {
            rs.normal_form(
                &m.at(1, 1)
                    .free_mul(m.at(2, 2))
                    .sub(&m.at(1, 2).free_mul(m.at(2, 1))),
            )
        };
        let a = scal(&trace(&x));
        let b = scal(&trace(&y));
        let c = scal(&det(&x));
        let d = scal(&det(&y));
        let e = a.mul(&b).sub(&scal(&trace(&x.mul(&y))));
        Ok(ClassicalRing {
            spec,
            x,
            y,
            a,
            b,
            c,
            d,
            e,
        })
    }
}

/// Substitute the classical images (with E mapped to e + (1 - q^-2) xy)
/// into every presentation relation; all residuals must vanish, the
/// classical Cayley-Hamilton inputs must hold, and the image of E must not
/// be a scalar matrix.
pub fn verify_iso() -> Result<Vec<IdentityReport>> {
    let r = ClassicalRing::new()?;
    let mut out = Vec::new();
    let one = RatFunc::one();

    // Classical inputs.
    let start = Instant::now();
    let res = r.x.mul(&r.x).sub(&r.a.mul(&r.x)).add(&r.c);
    out.push(report("classical_x_squared", start, &res));
    let start = Instant::now();
    let res = r.y.mul(&r.y).sub(&r.b.mul(&r.y)).add(&r.d);
    out.push(report("classical_y_squared", start, &res));
    let start = Instant::now();
    let res = r
        .y
        .mul(&r.x)
        .add(&r.x.mul(&r.y))
        .sub(&r.a.mul(&r.y))
        .sub(&r.b.mul(&r.x))
        .add(&r.e);
    out.push(report("classical_bilinear_ch", start, &res));

    // Images of the presentation generators.
    let e_img = r.e.add(&r.x.mul(&r.y).scale(&(&one - &qp(-2))));

    let start = Instant::now();
    let res = r
        .y
        .mul(&r.x)
        .add(&r.x.mul(&r.y).scale(&qp(-2)))
        .sub(&r.a.mul(&r.y))
        .sub(&r.b.mul(&r.x))
        .add(&e_img);
    out.push(report("image_yx_relation", start, &res));

    let start = Instant::now();
    let res = r
        .x
        .mul(&e_img)
        .sub(&e_img.mul(&r.x).scale(&qp(2)))
        .sub(&r.a.mul(&r.b).mul(&r.x).scale(&(&one - &qp(2))))
        .sub(&r.c.mul(&r.y).scale(&(&qp(-2) - &qp(2))))
        .sub(&r.a.mul(&r.x).mul(&r.y).scale(&(&one - &qp(-2))))
        .sub(&r.c.mul(&r.b).scale(&(&qp(2) - &one)));
    out.push(report("image_xe_relation", start, &res));

    let start = Instant::now();
    let res = r
        .y
        .mul(&e_img)
        .sub(&e_img.mul(&r.y).scale(&qp(-2)))
        .sub(&r.a.mul(&r.b).mul(&r.y).scale(&(&one - &qp(-2))))
        .sub(&r.d.mul(&r.x).scale(&(&one - &qp(-4))))
        .sub(&r.b.mul(&r.x).mul(&r.y).scale(&(&qp(-4) - &qp(-2))))
        .sub(&r.a.mul(&r.d).scale(&(&qp(-2) - &one)));
    out.push(report("image_ye_relation", start, &res));

    // The squares and centrality transport verbatim.
    let start = Instant::now();
    let res = r.x.mul(&r.x).sub(&r.a.mul(&r.x)).add(&r.c);
    out.push(report("image_x_squared", start, &res));
    let start = Instant::now();
    let res = r.y.mul(&r.y).sub(&r.b.mul(&r.y)).add(&r.d);
    out.push(report("image_y_squared", start, &res));

    // The image of E leaves the scalar-matrix subring: its off-diagonal
    // entries are nonzero.
    let start = Instant::now();
    let off_diag_nonzero = !e_img.at(1, 2).is_zero() && !e_img.at(2, 1).is_zero();
    out.push(IdentityReport {
        name: "e_image_not_scalar".into(),
        passed: off_diag_nonzero,
        residual: if off_diag_nonzero {
            format!(
                "E image (1,2) entry = {}",
                r.spec.alphabet().render_element(e_img.at(1, 2))
            )
        } else {
            "off-diagonal vanished".into()
        },
        wall_time_ms: start.elapsed().as_millis(),
    });

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_relations_hold() {
        for rep in verify_presentation().unwrap() {
            assert!(rep.passed, "{}: {}", rep.name, rep.residual);
        }
    }

    #[test]
    fn xye_commutes() {
        let rep = verify_xye().unwrap();
        assert!(rep.passed, "{}", rep.residual);
    }

    #[test]
    fn xye_is_trivial_classically() {
        let r = ClassicalRing::new().unwrap();
        let xy = r.x.mul(&r.y);
        let e = &r.e;
        assert!(xy.mul(e).sub(&e.mul(&xy)).is_zero());
    }

    #[test]
    fn freeness_small_degrees() {
        assert!(freeness_check(2).unwrap());
    }

    #[test]
    fn rq_generators_behave_polynomially() {
        assert!(rq_generators_polynomial(3).unwrap());
    }

    #[test]
    fn isomorphism_relations_hold() {
        for rep in verify_iso().unwrap() {
            assert!(rep.passed, "{}: {}", rep.name, rep.residual);
        }
    }

    #[test]
    fn freeness_rank_examples() {
        // Multidegree (1, 0): Tr_q(X) I and X; multidegree (0, 0): I alone.
        let spec = build_aq(2, 2, Config::default()).unwrap();
        let basis = RqBasis::new(&spec);
        let x = AlgMatrix::generator(&spec, 1);
        let id = AlgMatrix::identity(2, spec.rules.clone());
        let rows = vec![id.left_mul_elem(&basis.gens[0]), x];
        assert_eq!(flatten_rank(&rows), 2);
        let rows = vec![id];
        assert_eq!(flatten_rank(&rows), 1);
    }
}
