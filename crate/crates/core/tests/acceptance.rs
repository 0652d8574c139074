//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{len, t, Mask, RandomDb};
use itemlattice::curves::{compute_curve, levelwise_order};
use itemlattice::lattice::DEFAULT_CAP;
use itemlattice::miners::{
    mine_all_correlation, mine_biclique, mine_clique, mine_closed, mine_frequent, mine_indirect, mine_maximal,
    mine_unexpected_correlation, FoundPattern, MiningParams,
};
use itemlattice::{evaluate_constraint, parse_constraint, pattern_space_size, EvalOptions, MeasureId, Pattern, Threshold};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let held: bool = $cond;
        if !held {
            return Err(format!($($msg)+));
        }
    };
}

const MINSUPS: &[&str] = &["0.05", "0.1", "0.2", "0.3", "0.5", "0.8"];

fn corpus(count: u64, max_items: usize, max_rows: usize) -> Vec<RandomDb> {
    (0..count).map(|seed| RandomDb::generate(0xC0FFEE ^ seed.wrapping_mul(2654435761), max_items, max_rows)).collect()
}

fn minsup(i: usize) -> Threshold {
    t(MINSUPS[i % MINSUPS.len()])
}

fn masks(db: &RandomDb, found: &[FoundPattern]) -> BTreeSet<Mask> {
    found.iter().map(|f| db.mask_of(&f.pattern)).collect()
}

fn names(db: &itemlattice::TransactionDatabase, found: &[FoundPattern]) -> Vec<String> {
    found.iter().map(|f| db.sorted_labels(&f.pattern).concat()).collect()
}

fn frequent_oracle() -> Outcome {
    let start = Instant::now();
    let dbs = corpus(200, 12, 50);
    let mut patterns = 0;
    for (i, db) in dbs.iter().enumerate() {
        let s = minsup(i);
        let found = mine_frequent(&db.db, s, None);
        let got: BTreeSet<(Mask, usize)> = found.iter().map(|f| (db.mask_of(&f.pattern), f.support.count)).collect();
        ensure!(got.len() == found.len(), "database {i}: duplicate patterns");
        ensure!(found.iter().all(|f| f.support.total == db.n()), "database {i}: wrong totals");
        ensure!(got == common::frequent(db, s), "database {i} at {s}: output differs from enumeration");
        patterns += found.len();
    }
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    Ok(format!("200 databases, {patterns} patterns, {elapsed:.2?}"))
}

fn dsl_matches_miner() -> Outcome {
    let mut checked = 0;
    for (i, db) in corpus(50, 8, 30).iter().enumerate() {
        let s = minsup(i);
        let frequent: BTreeSet<Pattern> = mine_frequent(&db.db, s, None).into_iter().map(|f| f.pattern).collect();
        let formula = parse_constraint(&format!("forall S in sub(X) : support(S) >= {s}")).map_err(|e| e.to_string())?;
        for m in db.all_masks().filter(|&m| m & !db.present() == 0 && len(m) <= 6) {
            let x = db.pattern_of(m);
            let verdict = evaluate_constraint(&db.db, &formula, &x, EvalOptions::default())
                .map_err(|e| e.to_string())?
                .verdict;
            ensure!(verdict == frequent.contains(&x), "database {i}: disagreement on {}", db.db.display(&x));
            checked += 1;
        }
    }
    Ok(format!("{checked} patterns, 0 disagreements"))
}

fn closed_lossless() -> Outcome {
    for (i, db) in corpus(200, 12, 50).iter().enumerate() {
        let s = minsup(i);
        let frequent = mine_frequent(&db.db, s, None);
        let closed = mine_closed(&db.db, s);
        ensure!(closed.len() <= frequent.len(), "database {i}: more closed than frequent");
        for f in &frequent {
            let rebuilt = closed
                .iter()
                .filter(|c| f.pattern.is_subset_of(&c.pattern))
                .map(|c| c.support.count)
                .max();
            ensure!(rebuilt == Some(f.support.count), "database {i}: support of {} not recovered", db.db.display(&f.pattern));
        }
    }
    let db6 = common::db_from(common::DB6);
    let (c, f) = (mine_closed(&db6, t("0.3")).len(), mine_frequent(&db6, t("0.3"), None).len());
    ensure!(c < f, "fixture: {c} closed vs {f} frequent");
    Ok(format!("200 databases; fixture has {c} closed of {f} frequent"))
}

fn containment_chain() -> Outcome {
    for (i, db) in corpus(200, 12, 50).iter().enumerate() {
        let s = minsup(i);
        let set = |v: Vec<FoundPattern>| -> BTreeSet<Pattern> { v.into_iter().map(|f| f.pattern).collect() };
        let frequent = set(mine_frequent(&db.db, s, None));
        let closed = set(mine_closed(&db.db, s));
        let maximal = set(mine_maximal(&db.db, s));
        ensure!(maximal.is_subset(&closed), "database {i}: maximal not within closed");
        ensure!(closed.is_subset(&frequent), "database {i}: closed not within frequent");
        ensure!(maximal == common::maximal(db, s).into_iter().map(|m| db.pattern_of(m)).collect(), "database {i}: maximal differs from enumeration");
    }
    Ok("200 databases".into())
}

fn clique_subsumption() -> Outcome {
    for (i, db) in corpus(200, 12, 50).iter().enumerate() {
        let s = minsup(i);
        let cliques = mine_clique(&db.db, s);
        for f in mine_frequent(&db.db, s, None).iter().filter(|f| f.pattern.len() >= 2) {
            ensure!(
                cliques.iter().any(|c| f.pattern.is_subset_of(&c.pattern)),
                "database {i}: {} in no clique pattern",
                db.db.display(&f.pattern)
            );
        }
    }
    let db3 = common::db_from(common::DB3);
    let cliques = mine_clique(&db3, t("0.3"));
    ensure!(names(&db3, &cliques) == ["abc"], "fixture cliques {:?}", names(&db3, &cliques));
    ensure!(cliques[0].support.count == 0, "fixture clique support {}", cliques[0].support.fraction());
    ensure!(mine_frequent(&db3, t("0.3"), None).iter().all(|f| f.pattern.len() < 3), "fixture clique is frequent");
    Ok("200 databases; fixture clique {a,b,c} has support 0/3".into())
}

fn indirect_oracle() -> Outcome {
    let mut total = 0;
    for (i, db) in corpus(50, 8, 40).iter().enumerate() {
        let params = MiningParams {
            t_s: t(["0.1", "0.2", "0.3"][i % 3]),
            t_f: t(["0.3", "0.4", "0.5"][i / 3 % 3]),
            t_d: t(["0.8", "1", "1.2"][i / 9 % 3]),
            max_mediator_len: 3,
            ..MiningParams::default()
        };
        let found = mine_indirect(&db.db, &params);
        let got: BTreeSet<(Mask, Mask)> = found
            .iter()
            .map(|r| (db.mask_of(&Pattern::new([r.a, r.b])), db.mask_of(&r.mediator)))
            .collect();
        ensure!(got.len() == found.len(), "database {i}: duplicates");
        ensure!(got == common::indirect(db, &params), "database {i}: differs from brute force");
        total += found.len();
    }
    ensure!(total > 0, "corpus produced no indirect associations");
    let db2 = common::db_from(common::DB2);
    let params = MiningParams {
        t_s: t("0.1"),
        t_f: t("0.4"),
        t_d: t("1.0"),
        ..MiningParams::default()
    };
    let found: Vec<String> = mine_indirect(&db2, &params)
        .iter()
        .map(|r| format!("({}, {} | {})", db2.label(r.a), db2.label(r.b), db2.display(&r.mediator)))
        .collect();
    ensure!(found == ["(a, b | {c})"], "fixture gave {found:?}");
    Ok(format!("50 databases, {total} associations; fixture gives (a, b | {{c}})"))
}

fn all_correlation_anti_monotone() -> Outcome {
    let mut total = 0;
    for (i, db) in corpus(50, 8, 30).iter().enumerate() {
        let mc = t(["0.5", "0.9", "1", "1.2", "2"][i % 5]);
        let found = mine_all_correlation(&db.db, mc, Some(4));
        for f in &found {
            let m = db.mask_of(&f.pattern);
            let subs = common::proper_subsets(m).chain([m]).filter(|&s| len(s) >= 2);
            for s in subs {
                ensure!(common::lift_ge(db, mc, s), "database {i}: sub-pattern of {} fails", db.db.display(&f.pattern));
            }
        }
        ensure!(masks(db, &found) == common::all_correlation(db, mc, 4), "database {i}: differs from enumeration");
        total += found.len();
    }
    let db5 = common::db_from(common::DB5);
    let low = mine_all_correlation(&db5, t("0.5"), None).len();
    let high = mine_all_correlation(&db5, t("1.5"), None).len();
    ensure!(low == 4 && high == 0, "fixture gave {low} and {high}");
    Ok(format!("50 databases, {total} patterns; fixture gives 4 at 0.5 and 0 at 1.5"))
}

fn unexpected_fixture() -> Outcome {
    let db5 = common::db_from(common::DB5);
    let found = mine_unexpected_correlation(&db5, t("1.5"), db5.item_count(), false);
    ensure!(names(&db5, &found) == ["abc"], "got {:?}", names(&db5, &found));
    let lift = found[0].lift.and_then(|l| l.value()).ok_or("lift missing")?;
    ensure!((lift - 512.0 / 216.0).abs() <= 1e-9, "lift {lift}");
    Ok(format!("{{a,b,c}} with lift {lift:.12}"))
}

fn biclique_fixture() -> Outcome {
    let db4 = common::db_from(common::DB4);
    let found = mine_biclique(&db4, t("0.2"), 2);
    let sides: Vec<(String, String)> = found
        .iter()
        .map(|b| (db4.sorted_labels(&b.w).concat(), db4.sorted_labels(&b.v).concat()))
        .collect();
    ensure!(sides == [("ab".to_string(), "cd".to_string())], "got {sides:?}");
    // Pair supports recounted from the raw rows.
    let rows: Vec<BTreeSet<&str>> = common::DB4.lines().map(|l| l.split_whitespace().collect()).collect();
    let frequent = |a: &str, b: &str| rows.iter().filter(|r| r.contains(a) && r.contains(b)).count() * 5 >= rows.len();
    let (w, v) = (["a", "b"], ["c", "d"]);
    for a in w {
        for b in v {
            ensure!(frequent(a, b), "cross pair {a}{b} not frequent");
        }
    }
    ensure!(!frequent("a", "b") && !frequent("c", "d"), "a side pair is frequent");
    Ok("({a,b}, {c,d}), all 6 pairs rechecked".into())
}

fn curve_ordering() -> Outcome {
    let order: Vec<String> = levelwise_order(&["A", "B", "C"], DEFAULT_CAP)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|s| s.concat())
        .collect();
    ensure!(order == ["A", "B", "C", "AB", "AC", "BC", "ABC"], "order {order:?}");
    for (i, db) in corpus(50, 8, 30).iter().enumerate() {
        let x = db.present();
        if x == 0 {
            continue;
        }
        let curve = compute_curve(&db.db, &db.pattern_of(x), MeasureId::Support, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure!(curve.points.len() == (1 << len(x)) - 1, "database {i}: point count");
        for p in &curve.points {
            for q in curve.points.iter().filter(|q| p.subpattern.is_subset_of(&q.subpattern)) {
                let (sub, sup) = (p.value.value().unwrap_or(f64::NAN), q.value.value().unwrap_or(f64::NAN));
                ensure!(sup <= sub, "database {i}: superset point above subset point");
            }
        }
    }
    let db5 = common::db_from(common::DB5);
    let x = db5.pattern(["a", "b", "c"]).map_err(|e| e.to_string())?;
    let curve = compute_curve(&db5, &x, MeasureId::Lift, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let violation = curve.points.iter().any(|p| {
        curve.points.iter().any(|q| {
            p.subpattern != q.subpattern
                && p.subpattern.is_subset_of(&q.subpattern)
                && matches!((p.value.value(), q.value.value()), (Some(a), Some(b)) if b > a)
        })
    });
    ensure!(violation, "lift curve is superset-dominated");
    Ok("A, B, C, AB, AC, BC, ABC; 50 support curves dominated; lift curve rises at {a,b,c}".into())
}

fn pattern_space() -> Outcome {
    let got: Vec<String> = (1..=3)
        .map(|k| pattern_space_size(k).map(|v| v.to_string()).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    ensure!(got == ["4", "16", "256"], "got {got:?}");
    Ok("4, 16, 256".into())
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("itemlattice-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).map(|_| p.to_string_lossy().into_owned())
    };
    let (db1, db2, db4, db5, db7) = (
        write("db1", common::DB1).map_err(|e| e.to_string())?,
        write("db2", common::DB2).map_err(|e| e.to_string())?,
        write("db4", common::DB4).map_err(|e| e.to_string())?,
        write("db5", common::DB5).map_err(|e| e.to_string())?,
        write("db7", common::DB7).map_err(|e| e.to_string())?,
    );
    let random = RandomDb::generate(99, 10, 40);
    let rnd = write("random", &random.db.to_basket_string()).map_err(|e| e.to_string())?;
    let edge = "forall S in sub(X) where len(S) >= 2 : (col(S) >= 1.5 or col(S) < 1)";
    let invocations: Vec<Vec<&str>> = vec![
        vec!["frequent", "--input", &db1, "--minsup", "0.5"],
        vec!["frequent", "--input", &rnd, "--minsup", "0.1"],
        vec!["closed", "--input", &rnd, "--minsup", "0.1"],
        vec!["maximal", "--input", &rnd, "--minsup", "0.1"],
        vec!["clique", "--input", &rnd, "--minsup", "0.2"],
        vec!["biclique", "--input", &db4, "--minsup", "0.2", "--min-side", "2"],
        vec!["indirect", "--input", &db2, "--ts", "0.1", "--tf", "0.4", "--td", "1.0"],
        vec!["star", "--input", &db7, "--ts", "0.1", "--tf", "0.25", "--td", "1.0"],
        vec!["allcorr", "--input", &db5, "--mincorr", "0.5"],
        vec!["unexpected", "--input", &db5, "--mincorr", "1.5"],
        vec!["eval", "--input", &db5, "--pattern", "a,b,c", "--constraint", "col(X) >= 1.5"],
        vec!["ihg", "--input", &db5, "--pattern", "a,b,c", "--constraint", edge],
        vec!["ihg", "--input", &db5, "--pattern", "a,b,c", "--constraint", edge, "--format", "dot"],
        vec!["curve", "--input", &db5, "--pattern", "a,b,c", "--measure", "lift"],
    ];
    for args in &invocations {
        let mut outputs = Vec::new();
        for round in 0..2 {
            let file = dir.join(format!("out{round}")).to_string_lossy().into_owned();
            let out = Command::new(env!("CARGO_BIN_EXE_itemlattice"))
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(out.status.success(), "{} failed: {}", args[0], String::from_utf8_lossy(&out.stderr));
            let to_file = Command::new(env!("CARGO_BIN_EXE_itemlattice"))
                .args(args)
                .args(["--output", &file])
                .status()
                .map_err(|e| e.to_string())?;
            ensure!(to_file.success(), "{} --output failed", args[0]);
            let written = std::fs::read(&file).map_err(|e| e.to_string())?;
            ensure!(written == out.stdout, "{}: file output differs from standard output", args[0]);
            outputs.push(out.stdout);
        }
        ensure!(outputs[0] == outputs[1], "{}: outputs differ between runs", args[0]);
        ensure!(!outputs[0].is_empty(), "{}: empty output", args[0]);
    }
    let _ = std::fs::remove_dir_all(&dir);
    let subcommands: BTreeSet<&str> = invocations.iter().map(|a| a[0]).collect();
    Ok(format!("{} subcommands, {} invocations", subcommands.len(), invocations.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("frequent mining matches exhaustive enumeration", frequent_oracle),
        ("constraint evaluation agrees with frequent mining", dsl_matches_miner),
        ("closed patterns are lossless", closed_lossless),
        ("maximal within closed within frequent", containment_chain),
        ("frequent patterns lie in clique patterns", clique_subsumption),
        ("indirect association matches brute force", indirect_oracle),
        ("all-correlation is anti-monotone", all_correlation_anti_monotone),
        ("unexpected correlation fixture", unexpected_fixture),
        ("bi-clique fixture", biclique_fixture),
        ("curve ordering and dominance", curve_ordering),
        ("pattern-space size", pattern_space),
        ("command-line determinism", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
