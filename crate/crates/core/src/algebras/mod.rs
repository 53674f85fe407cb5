//! Concrete algebra instances: the reflection equation algebra and its
//! braided copies A_q(N, m), the quantum matrix algebra F_q(M_N), the
//! quantum GL_2 extension with a central determinant inverse, the mixed
//! algebra used by the coaction, and the classical (commutative) engine.

mod coaction;
mod rea;

pub use coaction::{
    antipode2, beta_apply, build_beta, counit_eval, is_coinvariant, is_zero_gl, quantum_det,
    Antipode, CoactionTable,
};

use std::sync::Arc;

use crate::rewrite::{Alphabet, Config, Element, LetterId, RuleSet};
use crate::rmatrix::{build_r, derived, DerivedOp};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// A_q(N, m): m braided copies of the reflection equation algebra.
    Reflection,
    /// F_q(M_N): the RTT quantum matrix algebra.
    QuantumMatrix,
    /// F_q(M_2) plus the central formal inverse of det_q.
    QuantumGl2,
    /// A_q(N, m) tensor F_q(GL_2), x- and t-letters commuting.
    Mixed,
    /// Commutative polynomial generators, for classical-limit work.
    Classical,
}

/// One algebra instance: its parameters and its validated rule set.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub n: usize,
    pub m: usize,
    pub flavor: Flavor,
    pub rules: Arc<RuleSet>,
}

impl AlgebraSpec {
    pub fn alphabet(&self) -> &Alphabet {
        &self.rules.alphabet
    }

    pub fn x(&self, copy: usize, row: usize, col: usize) -> Element {
        Element::from_letter(self.alphabet().x_id(copy, row, col))
    }

    pub fn t(&self, row: usize, col: usize) -> Element {
        Element::from_letter(self.alphabet().t_id(row, col))
    }

    pub fn d_inv(&self) -> Element {
        Element::from_letter(self.alphabet().d_id())
    }
}

/// Every descending pair swaps with coefficient 1: the commutative engine.
fn swap_rules(al: &Alphabet) -> Vec<((LetterId, LetterId), Element)> {
    let mut rules = Vec::new();
    for a in al.ids() {
        for b in al.ids() {
            if a > b {
                rules.push(((a, b), Element::from_word(vec![b, a])));
            }
        }
    }
    rules
}

/// Commutation rules between different letter groups (t vs x, D vs all).
fn commuting_cross_rules(
    al: &Alphabet,
    is_left: impl Fn(LetterId) -> bool,
    is_right: impl Fn(LetterId) -> bool,
) -> Vec<((LetterId, LetterId), Element)> {
    let mut rules = Vec::new();
    for a in al.ids() {
        if !is_left(a) {
            continue;
        }
        for b in al.ids() {
            if is_right(b) {
                debug_assert!(a > b);
                rules.push(((a, b), Element::from_word(vec![b, a])));
            }
        }
    }
    rules
}

/// Build A_q(N, m). Within-copy rules come from the reflection relation
/// list; at N <= 3 they are re-derived from the tensor form of the
/// reflection equation and the two rule sets must agree. Cross rules for
/// each copy pair come from the four-R-tensor contraction.
pub fn build_aq(n: usize, m: usize, config: Config) -> Result<AlgebraSpec> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("build_aq: require N >= 1 and m >= 1".into()));
    }
    let al = Alphabet::new(n, m, false, false);
    let name = format!("A_q({n},{m})");
    let mut rules = Vec::new();

    let family = rea::solve_quadratic_rules(&al, &rea::rea_family_equations(&al, 1), &name)?;
    if n <= 3 {
        let r = build_r(n)?;
        let rhat = derived(&r, DerivedOp::RHat)?;
        let tensor =
            rea::solve_quadratic_rules(&al, &rea::rea_tensor_equations(&al, 1, &rhat), &name)?;
        if canonical(&family) != canonical(&tensor) {
            return Err(Error::Build(format!(
                "{name}: relation list disagrees with the tensor form of the reflection equation"
            )));
        }
    }
    for copy in 1..=m {
        if copy == 1 {
            rules.extend(family.iter().cloned());
        } else {
            rules.extend(
                rea::solve_quadratic_rules(&al, &rea::rea_family_equations(&al, copy), &name)?,
            );
        }
    }

    if m > 1 {
        let r = build_r(n)?;
        let rinv = derived(&r, DerivedOp::RInv)?;
        let rtilde = derived(&r, DerivedOp::RTilde)?;
        for copy_r in 1..m {
            for copy_s in copy_r + 1..=m {
                let cross =
                    rea::cross_rules_by_contraction(&al, copy_r, copy_s, &r, &rinv, &rtilde);
                if n <= 3 && copy_r == 1 && copy_s == 2 {
                    let eqs = rea::cross_tensor_equations(&al, copy_r, copy_s, &r, &rinv);
                    let solved = rea::solve_quadratic_rules(&al, &eqs, &name)?;
                    if canonical(&cross) != canonical(&solved) {
                        return Err(Error::Build(format!(
                            "{name}: cross-rule contraction disagrees with the matrix form"
                        )));
                    }
                }
                rules.extend(cross);
            }
        }
    }

    let rs = RuleSet::build(al, rules, config, &name)?;
    Ok(AlgebraSpec {
        n,
        m,
        flavor: Flavor::Reflection,
        rules: Arc::new(rs),
    })
}

/// Build F_q(M_N) from the RTT relations.
pub fn build_fqm(n: usize, config: Config) -> Result<AlgebraSpec> {
    if n == 0 {
        return Err(Error::Domain("build_fqm: require N >= 1".into()));
    }
    let al = Alphabet::new(n, 0, true, false);
    let name = format!("F_q(M_{n})");
    let r = build_r(n)?;
    let rules = rea::solve_quadratic_rules(&al, &rea::rtt_equations(&al, &r), &name)?;
    let rs = RuleSet::build(al, rules, config, &name)?;
    Ok(AlgebraSpec {
        n,
        m: 0,
        flavor: Flavor::QuantumMatrix,
        rules: Arc::new(rs),
    })
}

/// Build the mixed algebra A_q(2, m) tensor F_q(GL_2) (m may be 0, giving
/// F_q(GL_2) itself). x-letters commute with t-letters and the determinant
/// inverse D commutes with everything.
pub fn build_mixed(n: usize, m: usize, config: Config) -> Result<AlgebraSpec> {
    if n == 0 {
        return Err(Error::Domain("build_mixed: require N >= 1".into()));
    }
    let al = Alphabet::new(n, m, true, true);
    let name = if m == 0 {
        format!("F_q(GL_{n})")
    } else {
        format!("A_q({n},{m})(x)F_q(GL_{n})")
    };

    let mut rules = Vec::new();
    if m >= 1 {
        let aq = build_aq(n, m, config.clone())?;
        // The x-letter block has identical ids in both alphabets.
        for a in aq.alphabet().ids() {
            for b in aq.alphabet().ids() {
                if a > b {
                    if let Some(rhs) = aq.rules.rule(a, b) {
                        rules.push(((a, b), rhs.clone()));
                    }
                }
            }
        }
    }
    let fqm = build_fqm(n, config.clone())?;
    let t_base = (m * n * n) as LetterId;
    for a in fqm.alphabet().ids() {
        for b in fqm.alphabet().ids() {
            if a > b {
                if let Some(rhs) = fqm.rules.rule(a, b) {
                    let shifted = shift_element(rhs, t_base);
                    rules.push(((a + t_base, b + t_base), shifted));
                }
            }
        }
    }
    // t and x commute exactly; D commutes with everything.
    let is_x = |l: LetterId| (l as usize) < m * n * n;
    let is_t = |l: LetterId| (l as usize) >= m * n * n && (l as usize) < m * n * n + n * n;
    let d = al.d_id();
    rules.extend(commuting_cross_rules(&al, is_t, is_x));
    rules.extend(commuting_cross_rules(&al, |l| l == d, |l| l != d));

    let rs = RuleSet::build(al, rules, config, &name)?;
    Ok(AlgebraSpec {
        n,
        m,
        flavor: if m == 0 { Flavor::QuantumGl2 } else { Flavor::Mixed },
        rules: Arc::new(rs),
    })
}

/// The commutative engine on the same alphabet as A_q(N, m): every
/// descending pair swaps with coefficient 1.
pub fn build_classical(n: usize, m: usize, config: Config) -> Result<AlgebraSpec> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("build_classical: require N, m >= 1".into()));
    }
    let al = Alphabet::new(n, m, false, false);
    let rules = swap_rules(&al);
    let rs = RuleSet::build(al, rules, config, &format!("A({n},{m}) classical"))?;
    Ok(AlgebraSpec {
        n,
        m,
        flavor: Flavor::Classical,
        rules: Arc::new(rs),
    })
}

fn shift_element(e: &Element, off: LetterId) -> Element {
    let mut out = Element::zero();
    for (w, c) in e.iter() {
        out.add_term(w.iter().map(|l| l + off).collect(), c.clone());
    }
    out
}

fn canonical(
    rules: &[((LetterId, LetterId), Element)],
) -> std::collections::BTreeMap<(LetterId, LetterId), Element> {
    rules.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::dimension_audit;
    use crate::scalar::RatFunc;

    fn aq(n: usize, m: usize) -> AlgebraSpec {
        build_aq(n, m, Config::default()).unwrap()
    }

    #[test]
    fn n1_is_a_polynomial_ring() {
        let a = aq(1, 1);
        assert_eq!(a.alphabet().len(), 1);
        let x = a.x(1, 1, 1);
        let sq = a.rules.multiply(&x, &x);
        assert_eq!(sq.num_terms(), 1);
    }

    #[test]
    fn aq2_rules_match_the_displayed_relations() {
        // The six relations of the one-copy 2x2 reflection equation algebra.
        let a = aq(2, 1);
        let al = a.alphabet();
        let id = |i: usize, j: usize| al.x_id(1, i, j);
        let rs = &a.rules;

        let q2 = RatFunc::q_pow(2);
        let c = &RatFunc::q_pow(-2) - &RatFunc::one(); // q^-2 - 1

        // x^2_2 x^1_2 = q^2 x^1_2 x^2_2
        let r = rs.rule(id(2, 2), id(1, 2)).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coeff(&vec![id(1, 2), id(2, 2)]), q2);

        // x^1_1 x^1_2 = x^1_2 x^1_1 + (q^-2 - 1) x^1_2 x^2_2
        let r = rs.rule(id(1, 1), id(1, 2)).unwrap();
        assert_eq!(r.num_terms(), 2);
        assert_eq!(r.coeff(&vec![id(1, 2), id(1, 1)]), RatFunc::one());
        assert_eq!(r.coeff(&vec![id(1, 2), id(2, 2)]), c);

        // x^1_1 x^2_2 = x^2_2 x^1_1
        let r = rs.rule(id(1, 1), id(2, 2)).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coeff(&vec![id(2, 2), id(1, 1)]), RatFunc::one());

        // x^2_1 x^1_2 = x^1_2 x^2_1 + (q^-2 - 1) x^2_2 x^2_2 - (q^-2 - 1) x^2_2 x^1_1
        let r = rs.rule(id(2, 1), id(1, 2)).unwrap();
        assert_eq!(r.num_terms(), 3);
        assert_eq!(r.coeff(&vec![id(1, 2), id(2, 1)]), RatFunc::one());
        assert_eq!(r.coeff(&vec![id(2, 2), id(2, 2)]), c);
        assert_eq!(r.coeff(&vec![id(2, 2), id(1, 1)]), -&c);

        // x^2_1 x^2_2 = q^2 x^2_2 x^2_1
        let r = rs.rule(id(2, 1), id(2, 2)).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coeff(&vec![id(2, 2), id(2, 1)]), q2);

        // x^2_1 x^1_1 = x^1_1 x^2_1 + (q^-2 - 1) x^2_2 x^2_1
        let r = rs.rule(id(2, 1), id(1, 1)).unwrap();
        assert_eq!(r.num_terms(), 2);
        assert_eq!(r.coeff(&vec![id(1, 1), id(2, 1)]), RatFunc::one());
        assert_eq!(r.coeff(&vec![id(2, 2), id(2, 1)]), c);
    }

    #[test]
    fn cross_rules_match_the_displayed_relations() {
        // Spot-check entries of the sixteen displayed cross relations; the
        // full list is pinned by the golden-file test.
        let a = aq(2, 2);
        let al = a.alphabet();
        let x = |i: usize, j: usize| al.x_id(1, i, j);
        let y = |i: usize, j: usize| al.x_id(2, i, j);
        let rs = &a.rules;

        // y^1_2 x^1_1 = x^1_1 y^1_2
        let r = rs.rule(y(1, 2), x(1, 1)).unwrap();
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coeff(&vec![x(1, 1), y(1, 2)]), RatFunc::one());

        // y^1_2 x^1_2 = q^2 x^1_2 y^1_2
        let r = rs.rule(y(1, 2), x(1, 2)).unwrap();
        assert_eq!(r.coeff(&vec![x(1, 2), y(1, 2)]), RatFunc::q_pow(2));

        // y^2_2 x^2_2 = x^2_2 y^2_2 + (1 - q^2) x^2_1 y^1_2
        let r = rs.rule(y(2, 2), x(2, 2)).unwrap();
        assert_eq!(r.num_terms(), 2);
        assert_eq!(r.coeff(&vec![x(2, 2), y(2, 2)]), RatFunc::one());
        assert_eq!(
            r.coeff(&vec![x(2, 1), y(1, 2)]),
            &RatFunc::one() - &RatFunc::q_pow(2)
        );

        // y^1_1 x^1_1 = x^1_1 y^1_1 + (q^-4 - q^-2) x^2_1 y^1_2
        let r = rs.rule(y(1, 1), x(1, 1)).unwrap();
        assert_eq!(r.num_terms(), 2);
        assert_eq!(
            r.coeff(&vec![x(2, 1), y(1, 2)]),
            &RatFunc::q_pow(-4) - &RatFunc::q_pow(-2)
        );

        // y^2_1 x^1_2 = q^-2 x^1_2 y^2_1 + (q^-2 - 1) x^1_1 y^1_1
        //   + (1 - q^-2) x^1_1 y^2_2 + (1 - q^-2) x^2_2 y^1_1
        //   + (q^-2 - 1) x^2_2 y^2_2 + (q^-4 - q^-2 - 1 + q^2) x^2_1 y^1_2
        let r = rs.rule(y(2, 1), x(1, 2)).unwrap();
        assert_eq!(r.num_terms(), 6);
        assert_eq!(r.coeff(&vec![x(1, 2), y(2, 1)]), RatFunc::q_pow(-2));
        let big = &(&(&RatFunc::q_pow(-4) - &RatFunc::q_pow(-2)) - &RatFunc::one())
            + &RatFunc::q_pow(2);
        assert_eq!(r.coeff(&vec![x(2, 1), y(1, 2)]), big);
    }

    #[test]
    fn cross_rules_agree_with_the_matrix_form() {
        // R^-1 Y1 R X2 = X2 R^-1 Y1 R, solved, must reproduce the
        // contraction-built rules at N = 2 and 3.
        for n in [2usize, 3] {
            let a = aq(n, 2);
            let al = a.alphabet();
            let r = build_r(n).unwrap();
            let rinv = derived(&r, DerivedOp::RInv).unwrap();
            let eqs = rea::cross_tensor_equations(al, 1, 2, &r, &rinv);
            let solved = rea::solve_quadratic_rules(al, &eqs, "cross-check").unwrap();
            for ((l1, l2), rhs) in solved {
                assert_eq!(
                    a.rules.rule(l1, l2).unwrap(),
                    &rhs,
                    "N = {n}: {} {}",
                    al.render_letter(l1),
                    al.render_letter(l2)
                );
            }
        }
    }

    #[test]
    fn fqm_rules_derive_and_audit() {
        let f = build_fqm(2, Config::default()).unwrap();
        // Six relations among the four generators.
        let count = f
            .alphabet()
            .ids()
            .flat_map(|a| f.alphabet().ids().map(move |b| (a, b)))
            .filter(|&(a, b)| a > b && f.rules.rule(a, b).is_some())
            .count();
        assert_eq!(count, 6);
        // Degree-2 component has the commutative dimension C(5, 2) = 10.
        let rep = dimension_audit(&f.rules, &[2], 100, 11).unwrap();
        assert_eq!(rep.normal_count, 10);
        assert_eq!(rep.expected_count, 10);
        assert!(rep.closure_ok);
        // N = 1: a single generator and no relations.
        let f1 = build_fqm(1, Config::default()).unwrap();
        assert_eq!(f1.alphabet().len(), 1);
    }

    #[test]
    fn aq_dimension_audits_small() {
        for (n, m, d) in [
            (2usize, 1usize, vec![2u32]),
            (2, 1, vec![3]),
            (2, 2, vec![1, 1]),
            (2, 2, vec![2, 1]),
            (3, 1, vec![2]),
        ] {
            let a = aq(n, m);
            let rep = dimension_audit(&a.rules, &d, 200, 5).unwrap();
            assert_eq!(
                rep.normal_count, rep.expected_count,
                "N={n} m={m} d={d:?}"
            );
            assert!(rep.closure_ok, "N={n} m={m} d={d:?}");
        }
        // The N=2 m=1 degree-2 count and the N=3 degree-2 count.
        let a = aq(2, 1);
        assert_eq!(dimension_audit(&a.rules, &[2], 10, 1).unwrap().normal_count, 10);
        let a = aq(3, 1);
        assert_eq!(dimension_audit(&a.rules, &[2], 10, 1).unwrap().normal_count, 45);
        let a = aq(2, 2);
        assert_eq!(
            dimension_audit(&a.rules, &[1, 1], 10, 1).unwrap().normal_count,
            16
        );
    }

    #[test]
    fn rewriting_matches_displayed_examples() {
        let a = aq(2, 2);
        let al = a.alphabet();
        let x = |i: usize, j: usize| al.x_id(1, i, j);
        let y = |i: usize, j: usize| al.x_id(2, i, j);

        // x^2_2 x^1_2 -> q^2 x^1_2 x^2_2
        let nf = a.rules.normal_form(&Element::from_word(vec![x(2, 2), x(1, 2)]));
        assert_eq!(nf.coeff(&vec![x(1, 2), x(2, 2)]), RatFunc::q_pow(2));
        assert_eq!(nf.num_terms(), 1);

        // y^1_2 x^1_2 -> q^2 x^1_2 y^1_2
        let nf = a.rules.normal_form(&Element::from_word(vec![y(1, 2), x(1, 2)]));
        assert_eq!(nf.coeff(&vec![x(1, 2), y(1, 2)]), RatFunc::q_pow(2));

        // Already normal words are fixed points.
        let w = vec![x(1, 2), x(1, 2)];
        let nf = a.rules.normal_form(&Element::from_word(w.clone()));
        assert_eq!(nf.coeff(&w), RatFunc::one());
        assert_eq!(nf.num_terms(), 1);
    }

    #[test]
    fn classical_engine_commutes() {
        let c = build_classical(2, 2, Config::default()).unwrap();
        let al = c.alphabet();
        let w1 = Element::from_word(vec![al.x_id(2, 1, 1), al.x_id(1, 2, 1)]);
        let w2 = Element::from_word(vec![al.x_id(1, 2, 1), al.x_id(2, 1, 1)]);
        assert_eq!(c.rules.normal_form(&w1), c.rules.normal_form(&w2));
    }

    #[test]
    fn classical_limit_of_every_rule_is_a_swap() {
        // At q = 1 each rule must become a b -> b a with vanishing
        // corrections.
        for (n, m) in [(2usize, 2usize), (3, 1)] {
            let a = aq(n, m);
            let al = a.alphabet();
            for l1 in al.ids() {
                for l2 in al.ids() {
                    if l1 <= l2 {
                        continue;
                    }
                    let rule = a.rules.rule(l1, l2).unwrap();
                    let at_one = rule.eval_at_one();
                    assert_eq!(
                        at_one,
                        Element::from_word(vec![l2, l1]),
                        "rule {} {} at q=1",
                        al.render_letter(l1),
                        al.render_letter(l2)
                    );
                }
            }
        }
    }

    #[test]
    fn mixed_algebra_builds_and_commutes_sectors() {
        let mx = build_mixed(2, 1, Config::default()).unwrap();
        let al = mx.alphabet();
        let x = al.x_id(1, 1, 2);
        let t = al.t_id(2, 1);
        let d = al.d_id();
        let nf = mx.rules.normal_form(&Element::from_word(vec![d, t, x]));
        assert_eq!(nf.num_terms(), 1);
        assert_eq!(nf.coeff(&vec![x, t, d]), RatFunc::one());
    }
}
