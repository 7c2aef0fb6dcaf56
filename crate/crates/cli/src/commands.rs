use abelian_psi::groups::p_group_spectrum;
use abelian_psi::psi::psi_prime_exponent;
use abelian_psi::symmetric::psi_k_json;
use abelian_psi::verify::{check_conjecture_f_up_to, check_injectivity_up_to};
use abelian_psi::{
    brute_force_spectrum, check_theorem_c, enumerate_abelian_groups, find_cross_order_collisions,
    order_polynomial, order_spectrum, psi_all, psi_prime, psi_prime_cyclic_closed_form,
    psi_prime_from_spectrum, psi_prime_pgroup, psi_prime_rank2_closed_form, psi_sum, AbelianGroup,
    Error,
};
use num_bigint::BigUint;
use serde_json::json;

use crate::exit;
use crate::render::{Format, Table};
use crate::{Command, ComputeArgs, VerifyCommand};

pub struct Done {
    pub stdout: String,
    pub exit: u8,
}

impl Done {
    fn ok(stdout: String) -> Self {
        Done {
            stdout,
            exit: exit::OK,
        }
    }
}

pub fn exit_code(e: &Failure) -> u8 {
    e.exit
}

#[derive(Debug)]
pub struct Failure {
    message: String,
    exit: u8,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Size { .. } => exit::CAP,
            Error::Consistency(_) => exit::VIOLATION,
            Error::Domain(_) | Error::Parse { .. } => exit::USAGE,
        };
        Failure {
            message: e.to_string(),
            exit,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        exit: exit::USAGE,
    }
}

/// Parses a group, pointing at the offending character on failure.
fn parse_group(src: &str) -> Result<AbelianGroup, Failure> {
    src.parse::<AbelianGroup>().map_err(|e| match e {
        Error::Parse { position, .. } => {
            let column = src[..position.min(src.len())].chars().count();
            usage(format!("{e}\n  {src}\n  {}^", " ".repeat(column)))
        }
        other => other.into(),
    })
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn run(command: &Command, format: Format) -> Result<Done, Failure> {
    match command {
        Command::Compute(args) => compute(args, format),
        Command::Enumerate { m } => enumerate(*m, format),
        Command::Verify(v) => verify(v, format),
        Command::Oracle { group } => oracle(group, format),
    }
}

fn compute(args: &ComputeArgs, format: Format) -> Result<Done, Failure> {
    let g = parse_group(&args.group)?;
    if args.materialize && !args.psi_prime {
        return Err(usage("--materialize applies to --psi-prime"));
    }
    let out = if args.psi {
        let v = psi_sum(&g);
        match format {
            Format::Json => json_line(&json!({ "psi": v.to_string() })),
            Format::Csv => format!("psi\n{v}\n"),
            Format::Table => format!("{v}\n"),
        }
    } else if args.psi_prime {
        let v = psi_prime(&g);
        if let Some(limit) = args.digit_limit {
            let value = v.materialize(limit)?;
            match format {
                Format::Json => json_line(&json!({ "value": value.to_string() })),
                Format::Csv => format!("value\n{value}\n"),
                Format::Table => format!("{value}\n"),
            }
        } else {
            match format {
                Format::Json => json_line(&v),
                Format::Csv => {
                    let mut t = Table::new(["prime", "exponent"]);
                    for (p, e) in v.factors() {
                        t.row([p.to_string(), e.to_string()]);
                    }
                    t.render(format)
                }
                Format::Table => format!("{v}\n"),
            }
        }
    } else if let Some(k) = args.psi_k {
        let all = psi_all(&g)?;
        if k == 0 || k > all.len() as u64 {
            return Err(usage(format!("k must lie in 1..={}, got {k}", all.len())));
        }
        let v = &all[k as usize - 1];
        match format {
            Format::Json => json_line(&json!({ "k": k.to_string(), "psi_k": v.to_string() })),
            Format::Csv => format!("k,psi_k\n{k},{v}\n"),
            Format::Table => format!("{v}\n"),
        }
    } else if args.psi_all {
        let all = psi_all(&g)?;
        match format {
            Format::Json => json_line(&psi_k_json(&all)),
            _ => {
                let mut t = Table::new(["k", "psi_k"]);
                for (i, v) in all.iter().enumerate() {
                    t.row([(i + 1).to_string(), v.to_string()]);
                }
                t.render(format)
            }
        }
    } else if args.spectrum {
        let s = order_spectrum(&g);
        match format {
            Format::Json => json_line(&s),
            _ => {
                let mut t = Table::new(["order", "count"]);
                for (d, m) in s.entries() {
                    t.row([d.to_string(), m.to_string()]);
                }
                t.render(format)
            }
        }
    } else if args.poly {
        let poly = order_polynomial(&g)?;
        match format {
            Format::Json => json_line(&poly),
            _ => {
                let mut t = Table::new(["power", "coefficient"]);
                for (j, c) in poly.coeffs().iter().enumerate() {
                    t.row([j.to_string(), c.to_string()]);
                }
                t.render(format)
            }
        }
    } else {
        let psi = psi_sum(&g);
        let pp = psi_prime(&g);
        match format {
            Format::Json => json_line(&json!({
                "group": g,
                "order": g.order().to_string(),
                "psi": psi.to_string(),
                "psi_prime": pp,
            })),
            _ => {
                let mut t = Table::new(["field", "value"]);
                t.row(["group".to_string(), g.to_string()]);
                t.row(["canonical".to_string(), serde_json::to_string(&g).expect("serializes")]);
                t.row(["order".to_string(), g.order().to_string()]);
                t.row(["psi".to_string(), psi.to_string()]);
                t.row(["psi'".to_string(), pp.to_string()]);
                t.render(format)
            }
        }
    };
    Ok(Done::ok(out))
}

fn enumerate(m: u64, format: Format) -> Result<Done, Failure> {
    let groups = enumerate_abelian_groups(m)?;
    let out = match format {
        Format::Json => {
            let rows: Vec<_> = groups
                .iter()
                .map(|g| json!({ "group": g, "psi_prime": psi_prime(g) }))
                .collect();
            json_line(&json!({ "order": m.to_string(), "groups": rows }))
        }
        _ => {
            let mut t = Table::new(["#", "group", "canonical", "psi'"]);
            for (i, g) in groups.iter().enumerate() {
                t.row([
                    (i + 1).to_string(),
                    g.to_string(),
                    serde_json::to_string(g).expect("serializes"),
                    psi_prime(g).to_string(),
                ]);
            }
            t.render(format)
        }
    };
    Ok(Done::ok(out))
}

fn verify(command: &VerifyCommand, format: Format) -> Result<Done, Failure> {
    match command {
        VerifyCommand::TheoremC { prime, n } => {
            let r = check_theorem_c(*prime, *n)?;
            let mismatches = r.pair_mismatches();
            let holds = r.holds() && mismatches.is_empty();
            let out = match format {
                Format::Json => json_line(&json!({
                    "p": r.p.to_string(),
                    "n": r.n.to_string(),
                    "rows": r.rows,
                    "violations": r.violations,
                    "pair_mismatches": mismatches,
                    "holds": holds,
                })),
                _ => {
                    let mut t = Table::new(["#", "partition", "group", "exponent"]);
                    for (i, row) in r.rows.iter().enumerate() {
                        let g = abelian_psi::partition_to_group_type(&row.partition, r.p)?;
                        t.row([
                            (i + 1).to_string(),
                            row.partition.to_string(),
                            g.to_string(),
                            row.exponent.to_string(),
                        ]);
                    }
                    let mut s = t.render(format);
                    if format == Format::Table {
                        s.push_str(&summary_line(
                            holds,
                            &format!("{} partitions of {}, p = {}", r.rows.len(), r.n, r.p),
                            &format!(
                                "{} adjacent violation(s), {} mismatched pair(s)",
                                r.violations.len(),
                                mismatches.len()
                            ),
                        ));
                    }
                    s
                }
            };
            Ok(Done {
                stdout: out,
                exit: if holds { exit::OK } else { exit::VIOLATION },
            })
        }
        VerifyCommand::Injectivity { max_order } => {
            let s = check_injectivity_up_to(*max_order)?;
            let out = match format {
                Format::Json => json_line(&s),
                _ => {
                    let mut t = Table::new(["order", "groups", "duplicate sets"]);
                    for r in &s.violations {
                        t.row([r.m.to_string(), r.groups.len().to_string(), format!("{:?}", r.duplicates)]);
                    }
                    let mut out = if s.violations.is_empty() && format == Format::Table {
                        String::new()
                    } else {
                        t.render(format)
                    };
                    if format == Format::Table {
                        out.push_str(&summary_line(
                            s.holds(),
                            &format!("{} groups over orders 1..={}, all psi' distinct per order", s.groups_checked, s.max_order),
                            &format!("{} order(s) with shared psi'", s.violations.len()),
                        ));
                    }
                    out
                }
            };
            Ok(Done {
                stdout: out,
                exit: if s.holds() { exit::OK } else { exit::VIOLATION },
            })
        }
        VerifyCommand::Collisions { max_order } => {
            let r = find_cross_order_collisions(*max_order)?;
            let out = match format {
                Format::Json => json_line(&r),
                _ => {
                    let mut t = Table::new(["group a", "order a", "group b", "order b", "psi'"]);
                    for c in &r.pairs {
                        t.row([
                            c.a.to_string(),
                            c.order_a.to_string(),
                            c.b.to_string(),
                            c.order_b.to_string(),
                            c.psi_prime.to_string(),
                        ]);
                    }
                    let mut out = t.render(format);
                    if format == Format::Table {
                        out.push_str(&format!(
                            "{} pair(s) among {} groups of order <= {}\n",
                            r.pairs.len(),
                            r.groups_scanned,
                            r.scope
                        ));
                    }
                    out
                }
            };
            Ok(Done::ok(out))
        }
        VerifyCommand::ConjectureF { max_order } => {
            let reports = check_conjecture_f_up_to(*max_order)?;
            let holds = reports.iter().all(|r| r.holds());
            let out = match format {
                Format::Json => json_line(&json!({
                    "max_order": max_order.to_string(),
                    "reports": reports,
                    "holds": holds,
                })),
                _ => {
                    let mut t = Table::new(["order", "groups", "pairs", "coincidences"]);
                    for r in reports.iter().filter(|r| r.pair_count > 0) {
                        t.row([
                            r.m.to_string(),
                            r.group_count.to_string(),
                            r.pair_count.to_string(),
                            r.coincidences.len().to_string(),
                        ]);
                    }
                    let mut out = t.render(format);
                    if format == Format::Table {
                        if !holds {
                            out.push_str("\n*** FINDING: psi_k coincidences between non-isomorphic groups ***\n");
                            for c in reports.iter().flat_map(|r| &r.coincidences) {
                                out.push_str(&format!("  {} vs {}: psi_{} = {}\n", c.a, c.b, c.k, c.value));
                            }
                        }
                        let pairs: usize = reports.iter().map(|r| r.pair_count).sum();
                        out.push_str(&summary_line(
                            holds,
                            &format!("{pairs} pairs over orders 1..={max_order}, every psi_k separates"),
                            "counterexample candidates found",
                        ));
                    }
                    out
                }
            };
            Ok(Done {
                stdout: out,
                exit: if holds { exit::OK } else { exit::COUNTEREXAMPLE },
            })
        }
    }
}

fn summary_line(holds: bool, ok: &str, bad: &str) -> String {
    if holds {
        format!("OK: {ok}\n")
    } else {
        format!("VIOLATED: {bad}\n")
    }
}

fn oracle(src: &str, format: Format) -> Result<Done, Failure> {
    let g = parse_group(src)?;
    let mut checks: Vec<(String, Option<bool>)> = Vec::new();

    let counted = order_spectrum(&g);
    let brute = match brute_force_spectrum(&g) {
        Ok(s) => Some(s),
        Err(Error::Size { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    checks.push((
        "counting spectrum = element walk".into(),
        brute.as_ref().map(|b| b == &counted),
    ));
    let formula = psi_prime(&g);
    checks.push((
        "psi' formula = prod d^m_d".into(),
        Some(psi_prime_from_spectrum(&counted)? == formula),
    ));
    if let Some(b) = &brute {
        let sum: BigUint = b.entries().iter().map(|(d, m)| d * m).sum();
        checks.push(("psi = sum over elements".into(), Some(sum == psi_sum(&g))));
    } else {
        checks.push(("psi = sum over elements".into(), None));
    }
    for s in g.sylow_subgroups() {
        let exponent = psi_prime_exponent(&s);
        let from_spectrum = psi_prime_from_spectrum(&p_group_spectrum(&s))?;
        checks.push((
            format!("{s}: exponent formula = spectrum"),
            Some(from_spectrum.exponent(s.p()) == exponent),
        ));
        let closed = match s.alphas() {
            [a] => Some(psi_prime_cyclic_closed_form(s.p(), *a)),
            [a, b] => Some(psi_prime_rank2_closed_form(s.p(), *a, *b)),
            _ => None,
        };
        if let Some(closed) = closed {
            checks.push((
                format!("{s}: closed form = exponent formula"),
                Some(closed? == psi_prime_pgroup(&s)),
            ));
        }
    }
    let ok = checks.iter().all(|(_, r)| *r != Some(false));
    let verdict = |r: &Option<bool>| match r {
        Some(true) => "agree",
        Some(false) => "DISAGREE",
        None => "skipped (over cap)",
    };
    let out = match format {
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|(name, r)| json!({ "check": name, "result": verdict(r) }))
                .collect();
            json_line(&json!({ "group": g, "checks": rows, "ok": ok }))
        }
        _ => {
            let mut t = Table::new(["check", "result"]);
            for (name, r) in &checks {
                t.row([name.as_str(), verdict(r)]);
            }
            t.render(format)
        }
    };
    Ok(Done {
        stdout: out,
        exit: if ok { exit::OK } else { exit::VIOLATION },
    })
}
