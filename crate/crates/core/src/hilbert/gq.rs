//! The Hilbert series of the algebra generated by the two generic matrices
//! inside M_2(A_q(2,2)), computed per multidegree as the rank of all word
//! products of the generators, flattened over matrix positions and normal
//! words.

use std::collections::BTreeMap;

use crate::algebras::build_aq;
use crate::matrixops::AlgMatrix;
use crate::rewrite::{Config, Word};
use crate::scalar::{rank_over_field, RatFunc};
use crate::{Error, Result};

use super::SeriesTable;

/// All 0/1 sequences with d1 zeros and d2 ones: the orderings of the
/// matrix word X...Y... of multidegree (d1, d2).
fn orderings(d1: u32, d2: u32) -> Vec<Vec<usize>> {
    fn rec(d1: u32, d2: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d1 == 0 && d2 == 0 {
            out.push(cur.clone());
            return;
        }
        if d1 > 0 {
            cur.push(1);
            rec(d1 - 1, d2, cur, out);
            cur.pop();
        }
        if d2 > 0 {
            cur.push(2);
            rec(d1, d2 - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d1, d2, &mut Vec::new(), &mut out);
    out
}

fn matrix_rank(mats: &[AlgMatrix]) -> usize {
    let mut columns: BTreeMap<(usize, Word), usize> = BTreeMap::new();
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

/// Dimension table of G_q(2,2) up to total degree `cap`.
pub fn gq_hilbert(cap: u32) -> Result<SeriesTable> {
    let config = Config::default();
    if cap > config.degree_cap {
        return Err(Error::Usage(format!(
            "gq_hilbert cap {cap} exceeds the configured degree cap {}",
            config.degree_cap
        )));
    }
    let spec = build_aq(2, 2, config)?;
    let x = AlgMatrix::generator(&spec, 1);
    let y = AlgMatrix::generator(&spec, 2);
    let mut entries = BTreeMap::new();
    for d1 in 0..=cap {
        for d2 in 0..=cap - d1 {
            let rank = if d1 == 0 && d2 == 0 {
                1 // the unit matrix spans the degree-0 component
            } else {
                let mats: Vec<AlgMatrix> = orderings(d1, d2)
                    .into_iter()
                    .map(|word| {
                        let mut acc = AlgMatrix::identity(2, spec.rules.clone());
                        for k in word {
                            acc = acc.mul(if k == 1 { &x } else { &y });
                        }
                        acc
                    })
                    .collect();
                matrix_rank(&mats)
            };
            entries.insert(vec![d1, d2], rank as i64);
        }
    }
    Ok(SeriesTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::series::{g22_closed_form, series_compare};

    #[test]
    fn low_degree_entries() {
        let table = gq_hilbert(2).unwrap();
        assert_eq!(table.at(&[0, 0]), 1);
        assert_eq!(table.at(&[1, 0]), 1);
        assert_eq!(table.at(&[0, 1]), 1);
        // XY and YX are independent.
        assert_eq!(table.at(&[1, 1]), 2);
    }

    #[test]
    fn matches_closed_form_to_degree_three() {
        let table = gq_hilbert(3).unwrap();
        assert!(series_compare(&table, &g22_closed_form(), 3).unwrap());
    }
}
