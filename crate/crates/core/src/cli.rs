//! Command implementations behind the `qtrace` binary.
//!
//! Every command produces an `Outcome` with the process exit code and the
//! full stdout text, so the commands are directly testable. Exit codes:
//! 0 all checks passed, 1 a residual or comparison failed, 2 usage error
//! (the binary maps `Error` values to 2).

use serde_json::json;

use crate::algebras::build_aq;
use crate::expr::{eval, parse, Value};
use crate::hilbert::{
    g22_closed_form, gq_hilbert, hilbert_series, parse_closed_form, series_compare, SeriesKind,
    SeriesTable,
};
use crate::matrixops::{qtrace_span_rank, verify, verify_all, IdentityKey, IdentityReport};
use crate::rewrite::{dimension_audit, Config};
use crate::rmatrix::{build_r, derived, pretty, DerivedOp, QMatrix};
use crate::scalar::LaurentPoly;
use crate::trace22;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
}

fn versions() -> serde_json::Value {
    json!({ "qtrace": env!("CARGO_PKG_VERSION") })
}

fn json_report(
    command: &str,
    params: serde_json::Value,
    results: &[(String, bool, String)],
) -> String {
    let results: Vec<serde_json::Value> = results
        .iter()
        .map(|(name, passed, detail)| json!({ "name": name, "passed": passed, "detail": detail }))
        .collect();
    serde_json::to_string_pretty(&json!({
        "command": command,
        "params": params,
        "results": results,
        "versions": versions(),
    }))
    .unwrap()
}

fn reports_outcome(
    command: &str,
    params: serde_json::Value,
    reports: &[IdentityReport],
    format: Format,
) -> Outcome {
    let results: Vec<(String, bool, String)> = reports
        .iter()
        .map(|r| (r.name.clone(), r.passed, r.residual.clone()))
        .collect();
    let all_passed = reports.iter().all(|r| r.passed);
    let stdout = match format {
        Format::Json => json_report(command, params, &results),
        _ => {
            let mut s = String::new();
            for (name, passed, detail) in &results {
                s.push_str(&format!(
                    "{:<24} {}{}\n",
                    name,
                    if *passed { "PASS" } else { "FAIL" },
                    if detail == "0" || detail.is_empty() {
                        String::new()
                    } else {
                        format!("  [{detail}]")
                    }
                ));
            }
            s.push_str(&format!(
                "{}: {}\n",
                command,
                if all_passed { "all passed" } else { "FAILURES" }
            ));
            s
        }
    };
    Outcome {
        exit: i32::from(!all_passed),
        stdout,
    }
}

fn table_outcome(
    command: &str,
    params: serde_json::Value,
    table: &SeriesTable,
    extra: &[(String, bool, String)],
    format: Format,
) -> Outcome {
    let ok = extra.iter().all(|(_, p, _)| *p);
    let stdout = match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let entries: Vec<serde_json::Value> = table
                .entries
                .iter()
                .map(|(d, v)| json!({ "degree": d, "dim": v }))
                .collect();
            let mut results: Vec<(String, bool, String)> = extra.to_vec();
            results.push(("table".into(), true, String::new()));
            serde_json::to_string_pretty(&json!({
                "command": command,
                "params": params,
                "results": results
                    .iter()
                    .map(|(n, p, d)| json!({"name": n, "passed": p, "detail": d}))
                    .collect::<Vec<_>>(),
                "entries": entries,
                "versions": versions(),
            }))
            .unwrap()
        }
        Format::Text => {
            let mut s = String::new();
            for (d, v) in &table.entries {
                let ds: Vec<String> = d.iter().map(u32::to_string).collect();
                s.push_str(&format!("({}) {}\n", ds.join(","), v));
            }
            for (name, passed, detail) in extra {
                s.push_str(&format!(
                    "{name}: {}{}\n",
                    if *passed { "PASS" } else { "FAIL" },
                    if detail.is_empty() {
                        String::new()
                    } else {
                        format!(" [{detail}]")
                    }
                ));
            }
            s
        }
    };
    Outcome {
        exit: i32::from(!ok),
        stdout,
    }
}

/// `nf --N <n> --m <m> EXPR`: print the normal form of an expression.
pub fn cmd_nf(n: usize, m: usize, expr_text: &str, format: Format) -> Result<Outcome> {
    let spec = build_aq(n, m, Config::from_env())?;
    let ast = parse(expr_text, n, m)?;
    let rendered = match eval(&ast, &spec)? {
        Value::Scalar(e) => spec
            .alphabet()
            .render_element(&spec.rules.normal_form(&e)),
        Value::Matrix(mat) => mat.render(),
    };
    let stdout = match format {
        Format::Json => json_report(
            "nf",
            json!({ "N": n, "m": m, "expr": expr_text }),
            &[("normal_form".into(), true, rendered.clone())],
        ),
        _ => format!("{rendered}\n"),
    };
    Ok(Outcome { exit: 0, stdout })
}

/// `verify --name {all|<key>}`: run catalog entries.
pub fn cmd_verify(
    name: &str,
    n: Option<usize>,
    m: Option<usize>,
    format: Format,
) -> Result<Outcome> {
    let keys: Vec<IdentityKey> = if name == "all" {
        IdentityKey::ALL.to_vec()
    } else {
        vec![IdentityKey::parse(name).ok_or_else(|| {
            Error::Usage(format!(
                "unknown identity '{name}'; known: all, {}",
                IdentityKey::ALL
                    .iter()
                    .map(|k| k.name())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })?]
    };
    for key in &keys {
        if let (Some(n), Some(m)) = (n, m) {
            if !key.params().contains(&(n, m)) {
                return Err(Error::Usage(format!(
                    "identity '{}' is defined for (N, m) in {:?}, not ({n}, {m})",
                    key.name(),
                    key.params()
                )));
            }
        }
    }
    let reports: Vec<IdentityReport> = if name == "all" {
        verify_all(false)?
    } else {
        keys.iter()
            .map(|&k| verify(k, false))
            .collect::<Result<_>>()?
    };
    Ok(reports_outcome(
        "verify",
        json!({ "name": name, "N": n, "m": m }),
        &reports,
        format,
    ))
}

/// `hilbert --N --m --which {A|R|T} --cap`: print a series table.
pub fn cmd_hilbert(n: usize, m: usize, which: &str, cap: u32, format: Format) -> Result<Outcome> {
    let kind = SeriesKind::parse(which)
        .ok_or_else(|| Error::Usage(format!("unknown series kind '{which}'; use A, R, or T")))?;
    let table = hilbert_series(n, m, kind, cap)?;
    Ok(table_outcome(
        "hilbert",
        json!({ "N": n, "m": m, "which": which, "cap": cap }),
        &table,
        &[],
        format,
    ))
}

/// `span --N --m --deg d1,d2,...`: the q-trace span rank at one multidegree.
pub fn cmd_span(
    n: usize,
    m: usize,
    deg: &str,
    maxlen: Option<usize>,
    format: Format,
) -> Result<Outcome> {
    let d: Vec<u32> = deg
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Usage(format!("bad multidegree '{deg}'; expected e.g. 1,1")))?;
    let maxlen = maxlen.unwrap_or(n * n);
    let s = qtrace_span_rank(n, m, &d, maxlen)?;
    let detail = format!("rank {} from {} trace products", s.rank, s.generators_used);
    let stdout = match format {
        Format::Json => json_report(
            "span",
            json!({ "N": n, "m": m, "deg": d, "maxlen": maxlen }),
            &[("span_rank".into(), true, detail.clone())],
        ),
        _ => format!("{detail}\n"),
    };
    Ok(Outcome { exit: 0, stdout })
}

/// `present-t22`: the full presentation suite including freeness.
pub fn cmd_present_t22(cap: Option<u32>, format: Format) -> Result<Outcome> {
    let cap = cap.unwrap_or(4);
    let mut reports = trace22::verify_presentation()?;
    reports.push(trace22::verify_xye()?);
    let t = std::time::Instant::now();
    let free = trace22::freeness_check(cap)?;
    reports.push(IdentityReport {
        name: format!("freeness_to_degree_{cap}"),
        passed: free,
        residual: if free { "0".into() } else { "rank defect".into() },
        wall_time_ms: t.elapsed().as_millis(),
    });
    let t = std::time::Instant::now();
    let poly = trace22::rq_generators_polynomial(cap)?;
    reports.push(IdentityReport {
        name: format!("coinvariants_polynomial_to_degree_{cap}"),
        passed: poly,
        residual: if poly { "0".into() } else { "dependence found".into() },
        wall_time_ms: t.elapsed().as_millis(),
    });
    Ok(reports_outcome(
        "present-t22",
        json!({ "cap": cap }),
        &reports,
        format,
    ))
}

/// `iso-t22`: the isomorphism onto the classical trace ring.
pub fn cmd_iso_t22(format: Format) -> Result<Outcome> {
    let reports = trace22::verify_iso()?;
    Ok(reports_outcome("iso-t22", json!({}), &reports, format))
}

/// `gq-hilbert --cap`: the generic-matrix series, compared with its closed
/// form.
pub fn cmd_gq_hilbert(cap: u32, closed: Option<&str>, format: Format) -> Result<Outcome> {
    let table = gq_hilbert(cap)?;
    let cf = match closed {
        Some(text) => parse_closed_form(text, 2)?,
        None => g22_closed_form(),
    };
    let matches = series_compare(&table, &cf, cap)?;
    Ok(table_outcome(
        "gq-hilbert",
        json!({ "cap": cap }),
        &table,
        &[(
            "matches_closed_form".into(),
            matches,
            if matches { String::new() } else { "coefficient mismatch".into() },
        )],
        format,
    ))
}

fn rmatrix_selftest() -> Vec<(String, bool, String)> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        let r = build_r(n).unwrap();
        let rh = derived(&r, DerivedOp::RHat).unwrap();
        let id = QMatrix::identity(n);
        let q = LaurentPoly::q();
        let qinv = LaurentPoly::q_pow(-1);
        let hecke = rh
            .sub(&id.scale(&q))
            .mul(&rh.add(&id.scale(&qinv)))
            .is_zero();
        out.push((format!("hecke_relation_N{n}"), hecke, String::new()));
        if n >= 2 {
            let rows = crate::rmatrix::dense_rows(&rh);
            let idm = crate::rmatrix::scalar_identity(n);
            let r12 = crate::rmatrix::kron(&rows, &idm);
            let r23 = crate::rmatrix::kron(&idm, &rows);
            let lhs = crate::rmatrix::matmul(&crate::rmatrix::matmul(&r12, &r23), &r12);
            let rhs = crate::rmatrix::matmul(&crate::rmatrix::matmul(&r23, &r12), &r23);
            out.push((format!("braid_relation_N{n}"), lhs == rhs, String::new()));
        }
        let rt = derived(&r, DerivedOp::RTilde).unwrap();
        let prod = derived(&rt, DerivedOp::T2)
            .unwrap()
            .mul(&derived(&r, DerivedOp::T2).unwrap());
        out.push((format!("rtilde_inverts_t2_N{n}"), prod == id, String::new()));
    }
    out
}

fn audit_selftest(config: &Config) -> Result<Vec<(String, bool, String)>> {
    let mut out = Vec::new();
    let plans: [(usize, usize, u32); 4] = [(2, 1, 4), (2, 2, 4), (3, 1, 3), (3, 2, 2)];
    for (n, m, cap) in plans {
        let spec = build_aq(n, m, config.clone())?;
        let mut ok = true;
        let mut detail = String::new();
        for d in all_degrees(m, cap) {
            let rep = dimension_audit(&spec.rules, &d, 50, 2024)?;
            if rep.normal_count != rep.expected_count || !rep.closure_ok {
                ok = false;
                detail = format!("failed at multidegree {d:?}");
                break;
            }
        }
        out.push((format!("dimension_audit_N{n}_m{m}"), ok, detail));
    }
    Ok(out)
}

fn all_degrees(m: usize, cap: u32) -> Vec<Vec<u32>> {
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

/// `selftest`: R-matrix properties, dimension audits, and the full identity
/// catalog. Output ordering is fixed; only timings vary between runs, and
/// they are not printed.
pub fn cmd_selftest(format: Format) -> Result<Outcome> {
    let mut results = rmatrix_selftest();
    results.extend(audit_selftest(&Config::from_env())?);
    for r in verify_all(false)? {
        results.push((format!("catalog_{}", r.name), r.passed, r.residual));
    }
    let all = results.iter().all(|(_, p, _)| *p);
    let stdout = match format {
        Format::Json => json_report("selftest", json!({}), &results),
        _ => {
            let mut s = String::from("nonzero entries of the N=2 R-matrix:\n");
            s.push_str(&pretty(&build_r(2).unwrap()));
            s.push('\n');
            for (name, passed, detail) in &results {
                s.push_str(&format!(
                    "{:<28} {}{}\n",
                    name,
                    if *passed { "PASS" } else { "FAIL" },
                    if detail == "0" || detail.is_empty() {
                        String::new()
                    } else {
                        format!("  [{detail}]")
                    }
                ));
            }
            s.push_str(&format!(
                "selftest: {}\n",
                if all { "all passed" } else { "FAILURES" }
            ));
            s
        }
    };
    Ok(Outcome {
        exit: i32::from(!all),
        stdout,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nf_matches_displayed_rewrite() {
        let out = cmd_nf(2, 1, "x^2_2 x^1_2", Format::Text).unwrap();
        assert_eq!(out.exit, 0);
        assert_eq!(out.stdout.trim(), "q^2 x^1_2 x^2_2");
    }

    #[test]
    fn verify_single_key() {
        let out = cmd_verify("qtryx", Some(2), Some(2), Format::Text).unwrap();
        assert_eq!(out.exit, 0);
        assert!(out.stdout.contains("qtryx"));
        assert!(out.stdout.contains("PASS"));
        assert!(cmd_verify("qtryx", Some(3), Some(3), Format::Text).is_err());
        assert!(cmd_verify("nonsense", None, None, Format::Text).is_err());
    }

    #[test]
    fn hilbert_r_table() {
        let out = cmd_hilbert(2, 2, "R", 4, Format::Text).unwrap();
        assert!(out.stdout.contains("(1,1) 2"));
        let csv = cmd_hilbert(2, 2, "R", 2, Format::Csv).unwrap();
        assert!(csv.stdout.starts_with("d1,d2,dim"));
        assert!(csv.stdout.contains("1,1,2"));
    }

    #[test]
    fn span_command() {
        let out = cmd_span(2, 2, "1,1", Some(2), Format::Text).unwrap();
        assert!(out.stdout.contains("rank 2"));
    }

    #[test]
    fn gq_hilbert_low_cap() {
        let out = cmd_gq_hilbert(2, None, Format::Text).unwrap();
        assert_eq!(out.exit, 0);
        assert!(out.stdout.contains("(1,1) 2"));
        assert!(out.stdout.contains("matches_closed_form: PASS"));
    }

    #[test]
    fn json_report_shape() {
        let out = cmd_verify("ch2", None, None, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["command"], "verify");
        assert_eq!(v["results"][0]["name"], "ch2");
        assert_eq!(v["results"][0]["passed"], true);
        assert!(v["versions"]["qtrace"].is_string());
    }
}
