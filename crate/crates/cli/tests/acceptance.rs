//! Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
//! Exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use quasigroup::enumerate::{all_latin_squares, enumerate_all};
use quasigroup::generate::{generate_random, GeneratorConfig};
use quasigroup::isotopy::DEFAULT_BUDGET;
use quasigroup::substructure::induced_table;
use quasigroup::ParastropheIndex::{self, *};
use quasigroup::{
    apply_isotopism, check_all_parastrophes, check_parastrophe_corollaries,
    check_translation_identities, compose_parastrophes, enumerate_subquasigroups, find_isotopism,
    find_smarandache, is_group_isotope, is_isotopism, parastrophe, Isotopism, IsotopySearchResult,
    Permutation, QuasigroupTable, Subset,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Failure = Box<dyn std::error::Error>;
type Check = Result<String, Failure>;
type Cases = Vec<(QuasigroupTable, Subset)>;
type Criterion = Box<dyn FnOnce(&mut Cases) -> Check>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rows(rows: &[&[usize]]) -> QuasigroupTable {
    QuasigroupTable::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn q4() -> QuasigroupTable {
    rows(&[&[0, 1, 2, 3], &[1, 0, 3, 2], &[3, 2, 1, 0], &[2, 3, 0, 1]])
}

fn nongroup5() -> QuasigroupTable {
    rows(&[
        &[1, 0, 4, 2, 3],
        &[3, 2, 0, 1, 4],
        &[4, 3, 1, 0, 2],
        &[0, 4, 2, 3, 1],
        &[2, 1, 3, 4, 0],
    ])
}

fn random_table(order: usize, seed: u64) -> QuasigroupTable {
    generate_random(&GeneratorConfig::new(order, seed)).unwrap()
}

fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

fn random_isotopism(n: usize, rng: &mut impl Rng) -> Isotopism {
    Isotopism::new(
        random_permutation(n, rng),
        random_permutation(n, rng),
        random_permutation(n, rng),
    )
    .unwrap()
}

fn set(n: usize, xs: &[usize]) -> Subset {
    Subset::new(n, xs.iter().copied()).unwrap()
}

fn brute_associative(q: &QuasigroupTable) -> bool {
    let n = q.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| q.multiply(q.multiply(x, y), z) == q.multiply(x, q.multiply(y, z)))
        })
    })
}

/// The six operations written directly with multiplication and divisions.
fn direct_op(q: &QuasigroupTable, k: ParastropheIndex, a: usize, b: usize) -> usize {
    match k {
        P1 => q.multiply(a, b),
        P2 => q.multiply(b, a),
        P3 => q.left_divide(a, b),
        P4 => q.right_divide(a, b),
        P5 => q.left_divide(b, a),
        P6 => q.right_divide(b, a),
    }
}

fn direct_table(q: &QuasigroupTable, k: ParastropheIndex) -> Vec<Vec<usize>> {
    let n = q.order();
    (0..n)
        .map(|a| (0..n).map(|b| direct_op(q, k, a, b)).collect())
        .collect()
}

/// Counts Latin squares with first row and column in natural order by trying
/// every filling of the remaining cells, then scales by n!(n-1)!.
#[allow(clippy::needless_range_loop)]
fn count_via_reduced(n: usize) -> u64 {
    if n == 1 {
        return 1;
    }
    let free = (n - 1) * (n - 1);
    let total = (n as u64).pow(free as u32);
    let mut reduced = 0u64;
    let mut grid = vec![vec![0usize; n]; n];
    for i in 0..n {
        grid[0][i] = i;
        grid[i][0] = i;
    }
    for code in 0..total {
        let mut c = code;
        for r in 1..n {
            for col in 1..n {
                grid[r][col] = (c % n as u64) as usize;
                c /= n as u64;
            }
        }
        let latin = (0..n).all(|i| {
            let mut row = 0u64;
            let mut column = 0u64;
            for j in 0..n {
                row |= 1 << grid[i][j];
                column |= 1 << grid[j][i];
            }
            row.count_ones() as usize == n && column.count_ones() as usize == n
        });
        reduced += u64::from(latin);
    }
    let fact = |m: u64| (1..=m).product::<u64>();
    reduced * fact(n as u64) * fact(n as u64 - 1)
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let c3 = enumerate_all(3, |_| {})?;
    let t3 = t.elapsed();
    ensure(c3 == 12 && count_via_reduced(3) == 12, || {
        format!("order 3 count {c3}")
    })?;
    ensure(t3 < Duration::from_secs(1), || {
        format!("order 3 took {t3:?}")
    })?;

    let out = Command::new(env!("CARGO_BIN_EXE_qg"))
        .args(["enumerate", "3", "--count-only"])
        .output()?;
    ensure(out.status.success() && out.stdout == b"12\n", || {
        format!(
            "qg enumerate 3 --count-only printed {:?}",
            String::from_utf8_lossy(&out.stdout)
        )
    })?;

    let t = Instant::now();
    let c4 = enumerate_all(4, |_| {})?;
    let t4 = t.elapsed();
    let oracle = count_via_reduced(4);
    ensure(c4 == 576 && oracle == 576, || {
        format!("order 4 count {c4}, second counter {oracle}")
    })?;
    ensure(t4 < Duration::from_secs(30), || {
        format!("order 4 took {t4:?}")
    })?;
    Ok(format!(
        "12 in {t3:.2?}, 576 in {t4:.2?}; second counter agrees"
    ))
}

/// Pointwise versions of the ten translation identities.
fn identities_hold_directly(q: &QuasigroupTable) -> bool {
    let n = q.order();
    let op = |k, a, b| direct_op(q, k, a, b);
    // left and right translation of operation k at x, applied to y
    let l = |k, x, y| op(k, x, y);
    let r = |k, x, y| op(k, y, x);
    let inv = |f: &dyn Fn(usize) -> usize, y: usize| (0..n).find(|&v| f(v) == y).unwrap();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let l1_inv = inv(&|v| l(P1, x, v), y);
            let r1_inv = inv(&|v| r(P1, x, v), y);
            let r2_inv = inv(&|v| r(P2, x, v), y);
            let l2_inv = inv(&|v| l(P2, x, v), y);
            r(P2, x, y) == l(P1, x, y)
                && l(P2, x, y) == r(P1, x, y)
                && l(P3, x, y) == l1_inv
                && r(P4, x, y) == r1_inv
                && r(P5, x, y) == l1_inv
                && l(P6, x, y) == r1_inv
                && l(P3, x, y) == r2_inv
                && r(P4, x, y) == l2_inv
                && r(P5, x, y) == r2_inv
                && r2_inv == l(P3, x, y)
                && l(P6, x, y) == l2_inv
                && l2_inv == r(P4, x, y)
        })
    })
}

fn criterion_2() -> Check {
    let mut tables = all_latin_squares(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..200 {
        tables.push(random_table(rng.gen_range(4..=8), 10_000 + i));
    }
    for q in &tables {
        let report = check_translation_identities(q);
        ensure(report.identities.len() == 10 && report.all_hold(), || {
            format!("identity failure on {q:?}: {report:?}")
        })?;
        ensure(identities_hold_directly(q), || {
            format!("pointwise oracle disagrees on {q:?}")
        })?;
    }
    Ok(format!(
        "{} squares, 10 identities each, zero failures",
        tables.len()
    ))
}

fn criterion_3() -> Check {
    let all = ParastropheIndex::ALL;
    // group axioms for the composition law
    for &a in &all {
        ensure(
            compose_parastrophes(P1, a) == a && compose_parastrophes(a, P1) == a,
            || format!("{a} identity law"),
        )?;
        ensure(
            all.iter().any(|&b| compose_parastrophes(a, b) == P1),
            || format!("{a} has no inverse"),
        )?;
        for &b in &all {
            for &c in &all {
                let left = compose_parastrophes(compose_parastrophes(a, b), c);
                let right = compose_parastrophes(a, compose_parastrophes(b, c));
                ensure(left == right, || {
                    format!("composition not associative at {a},{b},{c}")
                })?;
            }
        }
    }
    let element_order = |a: ParastropheIndex| {
        let mut k = 1;
        let mut x = a;
        while x != P1 {
            x = compose_parastrophes(x, a);
            k += 1;
        }
        k
    };
    let mut orders: Vec<_> = all.iter().map(|&a| element_order(a)).collect();
    orders.sort();
    ensure(orders == [1, 2, 2, 2, 3, 3], || {
        format!("element orders {orders:?}")
    })?;
    ensure(
        compose_parastrophes(P2, P3) != compose_parastrophes(P3, P2),
        || "composition is abelian".into(),
    )?;
    for k in [P2, P3, P4] {
        ensure(element_order(k) == 2, || {
            format!("{k} is not an involution")
        })?;
    }

    let mut tables = all_latin_squares(3)?;
    for i in 0..50 {
        tables.push(random_table(6, 20_000 + i));
    }
    for q in &tables {
        let p: Vec<_> = all.iter().map(|&k| parastrophe(q, k)).collect();
        for (i, &a) in all.iter().enumerate() {
            ensure(p[i].rows() == direct_table(q, a), || {
                format!("{a} disagrees with division formula on {q:?}")
            })?;
            for &b in &all {
                ensure(
                    parastrophe(&p[i], b) == parastrophe(q, compose_parastrophes(a, b)),
                    || format!("composition {a}∘{b} fails on {q:?}"),
                )?;
            }
        }
        for k in [P2, P3, P4] {
            ensure(parastrophe(&parastrophe(q, k), k) == *q, || {
                format!("{k} not an involution on {q:?}")
            })?;
        }
    }
    Ok(format!(
        "S₃ axioms, element orders 1,2,2,2,3,3; {} squares",
        tables.len()
    ))
}

fn isomorphic_copy(q: &QuasigroupTable, rng: &mut impl Rng) -> QuasigroupTable {
    q.relabel(&random_permutation(q.order(), rng))
}

fn group_of_order(n: usize, rng: &mut impl Rng) -> QuasigroupTable {
    let z = QuasigroupTable::cyclic;
    let mut options = vec![z(n)];
    for a in 2..n {
        if n.is_multiple_of(a) && n / a >= 2 {
            options.push(z(a).direct_product(&z(n / a)).unwrap());
        }
    }
    options.swap_remove(rng.gen_range(0..options.len()))
}

/// Every report is consistent, its associativity verdict for the base
/// operation matches a direct check, and families hold exactly when that
/// operation is associative. Returns whether `(S, ·)` itself is associative.
fn consistent(q: &QuasigroupTable, s: &Subset) -> Result<bool, Failure> {
    let reports = check_all_parastrophes(q, s)?;
    let induced = induced_table(q, s)?;
    for r in &reports {
        let base = QuasigroupTable::from_rows(direct_table(&induced, r.base))?;
        let associative = brute_associative(&base);
        ensure(r.biconditional_consistent, || {
            format!("inconsistent on {q:?} / {s}: base {}", r.base)
        })?;
        ensure(r.associativity.associative == associative, || {
            format!("associativity verdict wrong on {s}, base {}", r.base)
        })?;
        for item in &r.items {
            ensure(item.holds == associative, || {
                format!("base {} family {} disagrees on {s}", r.base, item.statement)
            })?;
        }
    }
    Ok(brute_associative(&induced))
}

fn criterion_4(associative_cases: &mut Cases) -> Check {
    let mut pairs = 0;
    for n in 1..=4 {
        for q in all_latin_squares(n)? {
            for s in enumerate_subquasigroups(&q) {
                pairs += 1;
                if consistent(&q, &s)? {
                    associative_cases.push((q.clone(), s));
                }
            }
        }
    }
    let exhaustive = pairs;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut random_associative = 0;
    for i in 0..200u64 {
        let n = rng.gen_range(5..=8);
        // alternate sampled squares with relabelled groups so both branches occur
        let q = if i % 2 == 0 {
            random_table(n, 30_000 + i)
        } else {
            let g = group_of_order(n, &mut rng);
            isomorphic_copy(&g, &mut rng)
        };
        let subs = enumerate_subquasigroups(&q);
        let s = subs[rng.gen_range(0..subs.len())];
        if consistent(&q, &s)? {
            random_associative += 1;
            associative_cases.push((q, s));
        }
    }
    Ok(format!(
        "{exhaustive} exhaustive + 200 random pairs ({random_associative} associative), zero inconsistencies"
    ))
}

fn criterion_5(associative_cases: &mut Cases) -> Check {
    let z6 = QuasigroupTable::cyclic(6);
    let mut witnesses = 0;
    for (q, s) in [(q4(), set(4, &[0, 1])), (z6, set(6, &[0, 2, 4]))] {
        let reports = check_all_parastrophes(&q, &s)?;
        ensure(reports.len() == 6, || "expected six reports".into())?;
        let induced = induced_table(&q, &s)?;
        let mut holding = 0;
        for (r, &base) in reports.iter().zip(&ParastropheIndex::ALL) {
            ensure(r.base == base && r.biconditional_consistent, || {
                format!("report {base} on {s}")
            })?;
            ensure(r.all_families_hold() == r.associativity.associative, || {
                format!("{base} on {s}")
            })?;
            let partners: Vec<_> = r.pairs();
            ensure(
                partners.iter().all(|&(a, b)| a != b) && partners.iter().any(|&(a, _)| a == base),
                || format!("partner pattern for {base}: {partners:?}"),
            )?;
            for item in r.items.iter().filter(|i| i.holds) {
                holding += 1;
                let source = parastrophe(&induced, item.source);
                let target = parastrophe(&induced, item.target);
                ensure(item.witnesses.len() == s.len(), || {
                    "one witness per parameter".into()
                })?;
                for (param, w) in &item.witnesses {
                    ensure(w.is_shape_aia() || w.is_shape_ibb(), || {
                        format!("witness shape at {param}")
                    })?;
                    ensure(is_isotopism(&source, &target, w)?, || {
                        format!(
                            "{base} statement {} parameter {param}: not an isotopism",
                            item.statement
                        )
                    })?;
                    witnesses += 1;
                }
            }
        }
        // (S, ·) and (S, ·*) are groups, so at least their eight families hold
        ensure(holding >= 8, || {
            format!("only {holding} families hold on {s}")
        })?;
        associative_cases.push((q, s));
    }
    Ok(format!(
        "12 reports consistent; {witnesses} witnesses of shape (A,I,A) or (I,B,B)"
    ))
}

/// Smallest proper associative closed subset of size at least 2, found by
/// scanning every subset in (size, lexicographic) order.
fn brute_smarandache(q: &QuasigroupTable) -> Option<Vec<usize>> {
    let n = q.order();
    let mut candidates: Vec<Vec<usize>> = (0u64..1 << n)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|v| v.len() >= 2 && v.len() < n)
        .collect();
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    candidates.into_iter().find(|s| {
        let closed = s
            .iter()
            .all(|&x| s.iter().all(|&y| s.contains(&q.multiply(x, y))));
        closed
            && s.iter().all(|&x| {
                s.iter().all(|&y| {
                    s.iter().all(|&z| {
                        q.multiply(q.multiply(x, y), z) == q.multiply(x, q.multiply(y, z))
                    })
                })
            })
    })
}

fn criterion_6(associative_cases: &mut Cases) -> Check {
    let cases = [
        (q4(), Some(vec![0, 1])),
        (QuasigroupTable::cyclic(6), Some(vec![0, 3])),
        (QuasigroupTable::cyclic(5), None),
    ];
    for (q, expected) in cases {
        let found = find_smarandache(&q);
        ensure(brute_smarandache(&q) == expected, || {
            format!("brute-force oracle disagrees on {q:?}")
        })?;
        match (&found, &expected) {
            (Some(cert), Some(e)) => {
                ensure(cert.subset.to_vec() == *e, || {
                    format!("certificate {} expected {e:?}", cert.subset)
                })?;
                ensure(cert.validate(&q), || {
                    format!("certificate {} does not re-validate", cert.subset)
                })?;
                ensure(brute_associative(&cert.induced), || {
                    "induced table not associative".into()
                })?;
                associative_cases.push((q.clone(), cert.subset));
            }
            (None, None) => {}
            _ => return Err(format!("expected {expected:?}, got {found:?}").into()),
        }
    }
    Ok("Q₄ → {0,1}, Z₆ → {0,3}, Z₅ → none; certificates re-validate".into())
}

fn criterion_7() -> Check {
    let z3 = QuasigroupTable::cyclic(3);
    let z4 = QuasigroupTable::cyclic(4);
    let klein = QuasigroupTable::cyclic(2).direct_product(&QuasigroupTable::cyclic(2))?;
    let mut checked = 0;
    for q in all_latin_squares(3)?
        .into_iter()
        .chain(all_latin_squares(4)?)
    {
        ensure(is_group_isotope(&q), || format!("oracle says no for {q:?}"))?;
        let groups: &[&QuasigroupTable] = if q.order() == 3 {
            &[&z3]
        } else {
            &[&z4, &klein]
        };
        let witnessed = groups.iter().any(|g| {
            matches!(
                find_isotopism(g, &q, DEFAULT_BUDGET),
                Ok(IsotopySearchResult::Witness { .. })
            )
        });
        ensure(witnessed, || format!("no group isotopism found for {q:?}"))?;
        checked += 1;
    }

    let ng = nongroup5();
    ensure(!is_group_isotope(&ng), || {
        "fixture reported as group isotope".into()
    })?;
    let search = find_isotopism(&QuasigroupTable::cyclic(5), &ng, DEFAULT_BUDGET)?;
    ensure(
        matches!(search, IsotopySearchResult::NotIsotopic { .. }),
        || format!("Z₅ search gave {search:?}"),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut negatives = 0;
    for i in 0..100u64 {
        let n = rng.gen_range(3..=6);
        let q = if i % 2 == 0 {
            random_table(n, 40_000 + i)
        } else {
            group_of_order(n, &mut rng)
        };
        let before = is_group_isotope(&q);
        negatives += usize::from(!before);
        let image = apply_isotopism(&q, &random_isotopism(n, &mut rng))?;
        ensure(is_group_isotope(&image) == before, || {
            format!("verdict changed under isotopy for {q:?}")
        })?;
    }
    Ok(format!(
        "{checked} squares of order 3-4 confirmed; fixture NotIsotopic after {} nodes; 100 invariance checks ({negatives} negative)",
        search.nodes()
    ))
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total_nodes = 0;
    for i in 0..100u64 {
        let n = rng.gen_range(3..=6);
        let q = random_table(n, 50_000 + i);
        let iso = random_isotopism(n, &mut rng);
        let h = apply_isotopism(&q, &iso)?;
        let found = find_isotopism(&q, &h, DEFAULT_BUDGET)?;
        let w = found
            .witness()
            .ok_or_else(|| format!("no witness for {q:?} under {iso:?}: {found:?}"))?;
        ensure(is_isotopism(&q, &h, w)?, || {
            "witness rejected by is_isotopism".into()
        })?;
        let direct = (0..n).all(|x| {
            (0..n).all(|y| h.multiply(w.a.apply(x), w.b.apply(y)) == w.c.apply(q.multiply(x, y)))
        });
        ensure(direct, || "witness fails the defining equation".into())?;
        total_nodes += found.nodes();
    }
    Ok(format!(
        "100 round trips, {total_nodes} search nodes in total"
    ))
}

fn criterion_9(associative_cases: &[(QuasigroupTable, Subset)]) -> Check {
    for (q, s) in associative_cases {
        let c = check_parastrophe_corollaries(q, s)?;
        ensure(c.applicable && c.holds, || {
            format!("corollaries fail on {q:?} / {s}: {c:?}")
        })?;
        let induced = induced_table(q, s)?;
        ensure(brute_associative(&parastrophe(&induced, P2)), || {
            format!("star not associative on {s}")
        })?;
        ensure(c.group_isotopes.len() == 6, || {
            "six parastrophe verdicts".into()
        })?;
    }
    Ok(format!(
        "{} associative subquasigroups",
        associative_cases.len()
    ))
}

fn main() -> ExitCode {
    let mut associative_cases = Vec::new();
    let mut results: Vec<(&str, u64, Criterion)> = vec![
        ("enumeration oracle", 31, Box::new(|_| criterion_1())),
        ("translation identities", 10, Box::new(|_| criterion_2())),
        ("parastrophe algebra", 10, Box::new(|_| criterion_3())),
        ("associativity biconditional", 120, Box::new(criterion_4)),
        ("six-parastrophe summary", 5, Box::new(criterion_5)),
        ("Smarandache detection", 1, Box::new(criterion_6)),
        ("group-isotopy oracle", 120, Box::new(|_| criterion_7())),
        ("isotopy round trip", 60, Box::new(|_| criterion_8())),
        ("corollary suite", 30, Box::new(|cases| criterion_9(cases))),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in results.drain(..).enumerate() {
        let start = Instant::now();
        let outcome = run(&mut associative_cases);
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= Duration::from_secs(limit) {
                Ok(detail)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit} s").into())
            }
        });
        match outcome {
            Ok(detail) => println!(
                "PASS  {}. {name} ({elapsed:.2?} / {limit} s): {detail}",
                i + 1
            ),
            Err(reason) => {
                failures += 1;
                println!(
                    "FAIL  {}. {name} ({elapsed:.2?} / {limit} s): {reason}",
                    i + 1
                );
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
