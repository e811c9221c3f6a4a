use std::fmt::Write;

use quasigroup::enumerate::enumerate_all;
use quasigroup::explore::explore_converse;
use quasigroup::generate::{generate_random, GeneratorConfig};
use quasigroup::isotopy::principal_loop_isotope;
use quasigroup::{
    analyze_subset, check_all_parastrophes, check_parastrophe_corollaries,
    check_translation_identities, enumerate_subquasigroups, find_isotopism,
    find_isotopism_parallel, find_smarandache, format_table, parastrophe, Error,
    IsotopySearchResult, ParastropheIndex, QuasigroupTable, Subset,
};
use serde::Serialize;
use serde_json::json;

use crate::args::Command;
use crate::input::{read_table, InputError};
use crate::report::{InputDigest, Outcome, EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK};

pub struct Context {
    pub digest: InputDigest,
    pub threads: usize,
}

pub fn name(command: &Command) -> &'static str {
    match command {
        Command::Validate { .. } => "validate",
        Command::Parastrophe { .. } => "parastrophe",
        Command::Translations { .. } => "translations",
        Command::Subs { .. } => "subs",
        Command::Smarandache { .. } => "smarandache",
        Command::Isotopic { .. } => "isotopic",
        Command::GroupIsotope { .. } => "group-isotope",
        Command::Verify { .. } => "verify",
        Command::Generate { .. } => "generate",
        Command::Enumerate { .. } => "enumerate",
        Command::Converse { .. } => "converse",
    }
}

pub fn run(command: &Command, ctx: &mut Context) -> Result<Outcome, InputError> {
    match command {
        Command::Validate { file } => match read_table(file, &mut ctx.digest) {
            Ok(q) => Ok(validate(&q)),
            Err(InputError::Table(e @ Error::NotLatin { .. })) => {
                let text = format!("{e}\n");
                Ok(Outcome::new(
                    EXIT_NEGATIVE,
                    text,
                    json!({ "latin": false, "reason": e.to_string() }),
                ))
            }
            Err(e) => Err(e),
        },
        Command::Parastrophe { file, index } => {
            let q = read_table(file, &mut ctx.digest)?;
            Ok(show_parastrophe(&q, *index))
        }
        Command::Translations { file } => {
            let q = read_table(file, &mut ctx.digest)?;
            Ok(translations(&q))
        }
        Command::Subs { file } => {
            let q = read_table(file, &mut ctx.digest)?;
            Ok(subs(&q))
        }
        Command::Smarandache { file } => {
            let q = read_table(file, &mut ctx.digest)?;
            Ok(smarandache(&q))
        }
        Command::Isotopic {
            first,
            second,
            budget,
        } => {
            let g = read_table(first, &mut ctx.digest)?;
            let h = read_table(second, &mut ctx.digest)?;
            Ok(isotopic(&g, &h, *budget, ctx.threads))
        }
        Command::GroupIsotope { file } => {
            let q = read_table(file, &mut ctx.digest)?;
            Ok(group_isotope(&q))
        }
        Command::Verify { file, sub } => {
            let q = read_table(file, &mut ctx.digest)?;
            if let Some(sub) = sub {
                ctx.digest.add(sub.as_bytes());
            }
            verify(&q, sub.as_deref()).map_err(InputError::Table)
        }
        Command::Generate {
            order,
            seed,
            burnin,
        } => {
            ctx.digest
                .add(format!("generate {order} {seed} {burnin:?}").as_bytes());
            generate(*order, *seed, *burnin).map_err(InputError::Table)
        }
        Command::Enumerate { order, count_only } => {
            ctx.digest.add(format!("enumerate {order}").as_bytes());
            enumerate(*order, *count_only).map_err(InputError::Table)
        }
        Command::Converse { order, budget } => {
            ctx.digest
                .add(format!("converse {order} {budget}").as_bytes());
            converse(*order, *budget).map_err(InputError::Table)
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(q: &QuasigroupTable) -> Outcome {
    let identity = q.find_identity();
    let assoc = q.is_associative();
    let mut text = format!("Latin square of order {}\n", q.order());
    match identity {
        Some(e) => writeln!(text, "identity: {e}").unwrap(),
        None => text.push_str("identity: none\n"),
    }
    writeln!(text, "commutative: {}", yes(q.is_commutative())).unwrap();
    writeln!(text, "associative: {}", yes(assoc.associative)).unwrap();
    let result = json!({
        "latin": true,
        "order": q.order(),
        "identity": identity,
        "commutative": q.is_commutative(),
        "associativity": assoc,
    });
    Outcome::new(EXIT_OK, text, result)
}

fn show_parastrophe(q: &QuasigroupTable, index: ParastropheIndex) -> Outcome {
    let p = parastrophe(q, index);
    let result = json!({
        "index": index,
        "operation": index.symbol(),
        "order": p.order(),
        "grid": p.rows(),
    });
    Outcome::new(EXIT_OK, format_table(&p), result)
}

fn translations(q: &QuasigroupTable) -> Outcome {
    let report = check_translation_identities(q);
    let mut text = String::new();
    for check in &report.identities {
        match check.failing_x {
            None => writeln!(text, "holds  {}", check.name).unwrap(),
            Some(x) => writeln!(text, "FAILS  {}  (x = {x})", check.name).unwrap(),
        }
    }
    let exit = if report.all_hold() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Outcome::new(exit, text, report)
}

fn subs(q: &QuasigroupTable) -> Outcome {
    let reports: Vec<_> = enumerate_subquasigroups(q)
        .iter()
        .map(|s| analyze_subset(q, s))
        .collect();
    let mut text = String::new();
    for r in &reports {
        let associative = r.associative.map(|v| v.associative).unwrap_or(false);
        write!(
            text,
            "{{{}}}  size {}  associative {}",
            r.subset,
            r.subset.len(),
            yes(associative)
        )
        .unwrap();
        if let Some(e) = r.identity {
            write!(text, "  identity {e}").unwrap();
        }
        text.push('\n');
    }
    Outcome::new(EXIT_OK, text, json!({ "subquasigroups": reports }))
}

fn smarandache(q: &QuasigroupTable) -> Outcome {
    match find_smarandache(q) {
        Some(cert) => {
            let mut text = format!("S={{{}}}\nidentity: {}\n", cert.subset, cert.identity);
            text.push_str(&format_table(&cert.induced));
            Outcome::new(
                EXIT_OK,
                text,
                json!({ "smarandache": true, "certificate": cert }),
            )
        }
        None => Outcome::new(
            EXIT_NEGATIVE,
            "no proper associative subquasigroup of size at least 2\n".to_string(),
            json!({ "smarandache": false, "certificate": null }),
        ),
    }
}

fn isotopic(g: &QuasigroupTable, h: &QuasigroupTable, budget: u64, threads: usize) -> Outcome {
    if g.order() != h.order() {
        let text = format!(
            "NotIsotopic (orders {} and {} differ)\n",
            g.order(),
            h.order()
        );
        return Outcome::new(
            EXIT_NEGATIVE,
            text,
            json!({ "result": "not_isotopic", "nodes": 0 }),
        );
    }
    let found = if threads > 1 {
        find_isotopism_parallel(g, h, budget, threads)
    } else {
        find_isotopism(g, h, budget)
    }
    .expect("orders checked");
    let (exit, mut text) = match &found {
        IsotopySearchResult::Witness { nodes, .. } => {
            (EXIT_OK, format!("Witness (nodes: {nodes})\n"))
        }
        IsotopySearchResult::NotIsotopic { nodes } => {
            (EXIT_NEGATIVE, format!("NotIsotopic (nodes: {nodes})\n"))
        }
        IsotopySearchResult::BudgetExhausted { nodes } => {
            (EXIT_BUDGET, format!("BudgetExhausted (nodes: {nodes})\n"))
        }
    };
    if let Some(iso) = found.witness() {
        writeln!(text, "A: {}\nB: {}\nC: {}", iso.a, iso.b, iso.c).unwrap();
    }
    Outcome::new(exit, text, found)
}

fn group_isotope(q: &QuasigroupTable) -> Outcome {
    let loop_table = principal_loop_isotope(q, 0, 0);
    let verdict = loop_table.is_associative();
    let identity = q.multiply(0, 0);
    let mut text = format!("group isotope: {}\n", yes(verdict.associative));
    if let Some([x, y, z]) = verdict.counterexample {
        writeln!(
            text,
            "principal loop isotope (identity {identity}) is not associative at ({x}, {y}, {z})"
        )
        .unwrap();
    }
    let exit = if verdict.associative {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let result = json!({
        "group_isotope": verdict.associative,
        "loop_identity": identity,
        "loop_associativity": verdict,
    });
    Outcome::new(exit, text, result)
}

#[derive(Serialize)]
struct VerifyResult {
    subset: Subset,
    subset_source: &'static str,
    consistent: bool,
    reports: Vec<quasigroup::VerificationReport>,
    corollaries: quasigroup::verify::CorollaryReport,
}

fn verify(q: &QuasigroupTable, sub: Option<&str>) -> Result<Outcome, Error> {
    let (subset, source) = match sub {
        Some(text) => (Subset::parse(q.order(), text)?, "given"),
        None => match find_smarandache(q) {
            Some(cert) => (cert.subset, "smarandache"),
            None => (Subset::full(q.order()), "whole"),
        },
    };
    let reports = check_all_parastrophes(q, &subset)?;
    let corollaries = check_parastrophe_corollaries(q, &subset)?;
    let consistent = reports.iter().all(|r| r.biconditional_consistent) && corollaries.holds;

    let mut text = format!("subset {{{subset}}} ({source})\n");
    let associative = reports[0].associativity.associative;
    writeln!(text, "associative: {}", yes(associative)).unwrap();
    text.push_str("base  stmt  pair      holds  family\n");
    for r in &reports {
        for item in &r.items {
            let holds = match item.failing_parameter {
                None => "yes".to_string(),
                Some(s) => format!("no@{s}"),
            };
            writeln!(
                text,
                "{:<4}  {:<4}  {} -> {}  {:<5}  {}",
                r.base, item.statement, item.source, item.target, holds, item.family
            )
            .unwrap();
        }
    }
    if corollaries.applicable {
        writeln!(
            text,
            "corollaries: {} (star associative: {}, group isotopes: {}/6)",
            if corollaries.holds { "hold" } else { "FAIL" },
            yes(corollaries.star_associative == Some(true)),
            corollaries
                .group_isotopes
                .iter()
                .filter(|&&(_, g)| g)
                .count()
        )
        .unwrap();
    } else {
        text.push_str("corollaries: not applicable\n");
    }
    writeln!(text, "consistent: {}", yes(consistent)).unwrap();

    let exit = if consistent { EXIT_OK } else { EXIT_NEGATIVE };
    let result = VerifyResult {
        subset,
        subset_source: source,
        consistent,
        reports,
        corollaries,
    };
    Ok(Outcome::new(exit, text, result))
}

fn generate(order: usize, seed: u64, burnin: Option<u64>) -> Result<Outcome, Error> {
    let mut config = GeneratorConfig::new(order, seed);
    if let Some(m) = burnin {
        config = config.with_burn_in(m);
    }
    let q = generate_random(&config)?;
    Ok(Outcome::new(
        EXIT_OK,
        format_table(&q),
        json!({ "config": config, "table": q }),
    ))
}

fn enumerate(order: usize, count_only: bool) -> Result<Outcome, Error> {
    let mut text = String::new();
    let mut tables = Vec::new();
    let count = enumerate_all(order, |q| {
        if !count_only {
            if !text.is_empty() {
                text.push('\n');
            }
            text.push_str(&format_table(q));
            tables.push(q.clone());
        }
    })?;
    if count_only {
        text = format!("{count}\n");
        return Ok(Outcome::new(
            EXIT_OK,
            text,
            json!({ "order": order, "count": count }),
        ));
    }
    Ok(Outcome::new(
        EXIT_OK,
        text,
        json!({ "order": order, "count": count, "tables": tables }),
    ))
}

fn converse(order: usize, budget: u64) -> Result<Outcome, Error> {
    let s = explore_converse(order, budget)?;
    let mut text = String::new();
    writeln!(text, "order: {}", s.order).unwrap();
    writeln!(text, "squares: {}", s.squares).unwrap();
    writeln!(text, "associative: {}", s.associative).unwrap();
    writeln!(text, "isotopic to (θ⁻¹)*: {}", s.isotopic_to_linv_star).unwrap();
    writeln!(
        text,
        "isotopic but not associative: {}",
        s.isotopic_but_not_associative
    )
    .unwrap();
    writeln!(text, "undecided: {}", s.undecided).unwrap();
    if let Some(q) = &s.first_counterexample {
        text.push_str("first such square:\n");
        text.push_str(&format_table(q));
    }
    Ok(Outcome::new(EXIT_OK, text, s))
}
