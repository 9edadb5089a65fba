//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use qrbs::inference::{infer_exact, oracle};
use qrbs::qcompile::{compile, truth_table_check, Block, CompileError};
use qrbs::qgates::{product_action_on_ket0, GateKind, Matrix2};
use qrbs::ruledsl::parse;
use qrbs_cli::fixtures::{HEADLINE_PAIR, TABLE5, TABLE5_MISPRINT_ROW, TABLE6, TABLE7, TABLE8};
use qrbs_cli::tables::{
    example_network, gate_demo, table4_rows, table5_rows, table6_rows, table7_rows, table8, table8_rows, Agreement,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qrbs"))
}

fn program(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("programs").join(name)
}

fn manifest_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn p_true_of(delta: f64) -> f64 {
    ((PI - PI * delta / 100.0) / 2.0).sin().powi(2)
}

fn gate_identities() -> Check {
    let mut worst = 0.0f64;
    for g in [GateKind::H, GateKind::S, GateKind::T, GateKind::Z, GateKind::X] {
        let m = g.matrix();
        let d = (m * m.dagger()).max_abs_diff(&Matrix2::IDENTITY);
        ensure(d <= 1e-12, || format!("{g}: |G G† - I| = {d:e}"))?;
        worst = worst.max(d);
    }
    use GateKind::{H, S, T, Z};
    let products: [(&[GateKind], f64, f64); 5] = [
        (&[H, H], 1.0, 1.000),
        (&[H, T, H], FRAC_PI_8.cos().powi(2), 0.854),
        (&[H, S, H], 0.5, 0.500),
        (&[H, S, T, H], FRAC_PI_8.sin().powi(2), 0.147),
        (&[H, Z, H], 0.0, 0.000),
    ];
    for (gates, closed, printed) in products {
        let p0 = product_action_on_ket0(gates).map_err(|e| e.to_string())?.prob0;
        ensure((p0 - closed).abs() <= 1e-9, || format!("{gates:?}: prob0 {p0} vs closed form {closed}"))?;
        ensure((p0 - printed).abs() <= 5e-3, || format!("{gates:?}: prob0 {p0} vs printed {printed}"))?;
    }
    Ok(format!("max |G G† - I| = {worst:.1e}; 5 products agree"))
}

fn m_self_inverse() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let theta = rng.gen_range(-2.0 * PI..2.0 * PI);
        let m = GateKind::M(theta).matrix();
        let d = (m * m).max_abs_diff(&Matrix2::IDENTITY);
        ensure(d <= 1e-12, || format!("theta={theta}: |M² - I| = {d:e}"))?;
        worst = worst.max(d);
    }
    Ok(format!("100 angles, max |M² - I| = {worst:.1e}"))
}

fn table4_mapping() -> Check {
    let expected = [FRAC_PI_2, 3.0 * FRAC_PI_8, FRAC_PI_4, FRAC_PI_8, 0.0];
    let rows = table4_rows();
    ensure(rows.len() == 5, || format!("{} rows", rows.len()))?;
    for (r, want) in rows.iter().zip(expected) {
        ensure((r.theta - want).abs() <= 1e-12, || format!("delta {}: theta {} vs {want}", r.delta, r.theta))?;
    }
    Ok("theta matches pi/2, 3pi/8, pi/4, pi/8, 0".into())
}

fn table5_reproduction() -> Check {
    let rows = table5_rows();
    ensure(rows.len() == 19, || format!("{} rows", rows.len()))?;
    let mut worst = 0.0f64;
    for (i, (r, printed)) in rows.iter().zip(TABLE5.iter()).enumerate() {
        let ours = [r.mod0, r.mod1, r.prob0, r.prob1];
        for (c, (&got, &want)) in ours.iter().zip(&printed[2..]).enumerate() {
            // the misprinted |0⟩ cells of one row are held to the closed form
            let want = if i == TABLE5_MISPRINT_ROW && (c == 0 || c == 2) {
                let theta = (PI - r.alpha) / 2.0;
                if c == 0 {
                    theta.sin()
                } else {
                    theta.sin().powi(2)
                }
            } else {
                want
            };
            let d = (got - want).abs();
            ensure(d <= 1e-3, || format!("row {i} column {c}: {got:.5} vs {want:.5}"))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("19 rows, max deviation {worst:.5}"))
}

fn table6_reproduction() -> Check {
    let rows = table6_rows();
    ensure(rows.len() == 11, || format!("{} rows", rows.len()))?;
    for (r, p) in rows.iter().zip(TABLE6.iter()) {
        ensure(r.label.as_str() == p.label, || format!("delta {}: label {} vs {}", r.disbelief, r.label, p.label))?;
        for (name, got, want) in [
            ("ket0", r.ket0, p.ket0),
            ("ket1", r.ket1, p.ket1),
            ("p_true", r.p_true, p.p_true),
            ("p_false", r.p_false, p.p_false),
        ] {
            ensure((got - want).abs() <= 1e-3, || format!("delta {}: {name} {got:.5} vs {want}", r.disbelief))?;
        }
    }
    Ok("11 rows, amplitudes, probabilities and labels agree".into())
}

fn table7_reproduction() -> Check {
    for r in table7_rows(1, 0).map_err(|e| e.to_string())? {
        let want = p_true_of(r.disbelief);
        ensure((r.exact_p_true - want).abs() <= 1e-12, || {
            format!("delta {}: exact {} vs {want}", r.disbelief, r.exact_p_true)
        })?;
    }
    let mut passing = 0;
    let mut failing_seeds = Vec::new();
    for seed in 0..100u64 {
        let rows = table7_rows(8192, seed).map_err(|e| e.to_string())?;
        let ok = rows
            .iter()
            .zip(TABLE7.iter())
            .all(|(r, p)| (r.shot_p_true - p[1]).abs() <= 0.015 && (r.shot_p_false - p[2]).abs() <= 0.015);
        if ok {
            passing += 1;
        } else {
            failing_seeds.push(seed);
        }
    }
    ensure(passing >= 95, || format!("only {passing}/100 seeds within 0.015 (failing {failing_seeds:?})"))?;
    Ok(format!("exact within 1e-12; {passing}/100 seeds within 0.015 of the printed rows"))
}

fn rq_gates() -> Check {
    for block in [Block::And, Block::Or, Block::Not] {
        for row in truth_table_check(block) {
            let want = match block {
                Block::And => row.inputs[0] && row.inputs[1],
                Block::Or => row.inputs[0] || row.inputs[1],
                Block::Not => !row.inputs[0],
            };
            ensure(row.output == want, || format!("{block:?} {:?} -> {}", row.inputs, row.output))?;
            ensure(row.inputs_restored, || format!("{block:?} {:?} disturbed its inputs", row.inputs))?;
        }
    }
    let mut lowest = f64::INFINITY;
    for (block, outputs) in [(Block::And, ["0", "0", "0", "1"]), (Block::Or, ["0", "1", "1", "1"])] {
        let t = gate_demo(block, 8192, 1).map_err(|e| e.to_string())?;
        ensure(t.rows.len() == 4, || format!("{block:?}: {} rows", t.rows.len()))?;
        for (row, out) in t.rows.iter().zip(outputs) {
            let measured: f64 = row[3].parse().unwrap();
            let estimated: f64 = row[4].parse().unwrap();
            let precision: f64 = row[5].parse().unwrap();
            ensure(row[2] == out, || format!("{block:?} {}: output {}", row[1], row[2]))?;
            ensure(estimated == 25.0, || format!("{block:?} {}: estimated {estimated}", row[1]))?;
            ensure((measured - 25.0).abs() <= 1.5, || format!("{block:?} {}: measured {measured}", row[1]))?;
            ensure(precision >= 0.98, || format!("{block:?} {}: precision {precision}", row[1]))?;
            lowest = lowest.min(precision);
        }
    }
    Ok(format!("truth tables exact; superposed demo within 25 ± 1.5, lowest precision {lowest:.3}"))
}

fn headline_experiment() -> Check {
    let rs = example_network();
    let exact = infer_exact(&compile(&rs).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let reference = oracle(&rs).map_err(|e| e.to_string())?.p_true;
    // P(A and B) = 1/4, P(X or C) = 5/8, P(D or E) = 3/4
    let closed = 0.625 * 0.75;
    ensure((reference - closed).abs() <= 1e-12, || format!("oracle {reference} vs {closed}"))?;
    ensure((exact.p_true - reference).abs() <= 1e-9, || format!("exact {} vs oracle {reference}", exact.p_true))?;
    ensure((exact.p_false - (1.0 - reference)).abs() <= 1e-9, || format!("exact p_false {}", exact.p_false))?;

    let mut ours = [exact.p_true, exact.p_false];
    let mut printed = [HEADLINE_PAIR.0, HEADLINE_PAIR.1];
    ours.sort_by(f64::total_cmp);
    printed.sort_by(f64::total_cmp);
    // 0.53205 - 0.53125 rounds to just above 8e-4 in binary
    let tol = 8e-4 + 1e-12;
    for (a, b) in ours.iter().zip(&printed) {
        ensure((a - b).abs() <= tol, || format!("pair element {a} vs {b}"))?;
    }
    let label_gap = (exact.p_true - HEADLINE_PAIR.0).abs();
    ensure(label_gap > 0.05, || format!("label match unexpectedly close ({label_gap})"))?;
    Ok(format!(
        "exact {:.5}/{:.5} equals oracle; matches the printed pair as a set, with TRUE/FALSE swapped",
        exact.p_true, exact.p_false
    ))
}

fn random_source(rng: &mut ChaCha8Rng) -> String {
    fn expr(rng: &mut ChaCha8Rng, names: &[String], depth: u32) -> String {
        if depth == 0 || rng.gen_bool(0.35) {
            return names.choose(rng).unwrap().clone();
        }
        match rng.gen_range(0..5) {
            0 => format!("not {}", expr(rng, names, depth - 1)),
            1 | 2 => format!("({} and {})", expr(rng, names, depth - 1), expr(rng, names, depth - 1)),
            _ => format!("({} or {})", expr(rng, names, depth - 1), expr(rng, names, depth - 1)),
        }
    }
    let k = rng.gen_range(1..=8);
    let r = rng.gen_range(0..=6);
    let mut src = String::new();
    let mut names: Vec<String> = (0..k).map(|i| format!("F{i}")).collect();
    for n in &names {
        src.push_str(&format!("fact {n} disbelief {:.1}\n", rng.gen_range(0.0..=100.0)));
    }
    for i in 0..r {
        let premise = expr(rng, &names, 2);
        src.push_str(&format!("rule R{i}: if {premise} then C{i}\n"));
        names.push(format!("C{i}"));
    }
    let goal =
        if r > 0 && rng.gen_bool(0.8) { names.last().unwrap().clone() } else { names.choose(rng).unwrap().clone() };
    src.push_str(&format!("goal {goal}\n"));
    src
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    let mut checked = 0;
    let mut with_not = 0;
    while checked < 200 {
        let src = random_source(&mut rng);
        let rs = parse(&src).map_err(|e| format!("generated program rejected: {e}\n{src}"))?;
        let cp = match compile(&rs) {
            Ok(cp) => cp,
            Err(CompileError::QubitBudget { .. }) => continue,
            Err(e) => return Err(format!("{e}\n{src}")),
        };
        let exact = infer_exact(&cp).map_err(|e| e.to_string())?.p_true;
        let reference = oracle(&rs).map_err(|e| e.to_string())?.p_true;
        let d = (exact - reference).abs();
        ensure(d <= 1e-9, || format!("exact {exact} vs oracle {reference}\n{src}"))?;
        worst = worst.max(d);
        checked += 1;
        with_not += usize::from(src.contains("not "));
    }
    Ok(format!("200 random rule sets ({with_not} with negation), max |exact - oracle| = {worst:.1e}"))
}

fn table8_report() -> Check {
    let rows = table8_rows(8192, 0).map_err(|e| e.to_string())?;
    ensure(rows.len() == TABLE8.len(), || format!("{} rows", rows.len()))?;
    let find = |deltas: [f64; 5]| rows.iter().find(|r| r.deltas == deltas).unwrap();
    // the oracle is held to the printed value bit for bit; the simulated
    // values carry cos(pi/2) ~ 6e-17 residue and are compared as printed
    let printed = |x: f64| format!("{x:.3}");
    for (deltas, want) in [([0.0; 5], 1.0), ([100.0; 5], 0.0)] {
        let r = find(deltas);
        ensure(r.oracle == want && r.printed == want, || format!("{deltas:?}: {r:?}"))?;
        ensure(printed(r.exact) == printed(want) && printed(r.shots) == printed(want), || {
            format!("{deltas:?}: {r:?}")
        })?;
    }
    // B certainly false kills R1, so the goal rests on C alone
    let b_false = find([60.0, 100.0, 20.0, 0.0, 0.0]);
    ensure((b_false.oracle - p_true_of(20.0)).abs() <= 1e-12, || format!("B-false row oracle {}", b_false.oracle))?;
    ensure(b_false.agreement() == Agreement::Diverges, || "B-false row should diverge".into())?;
    for r in &rows {
        ensure((r.exact - r.oracle).abs() <= 1e-9, || {
            format!("{:?}: exact {} vs oracle {}", r.deltas, r.exact, r.oracle)
        })?;
    }

    let golden = std::fs::read_to_string(manifest_path("tests/golden/table8.csv")).map_err(|e| e.to_string())?;
    let generated = table8(8192, 0).map_err(|e| e.to_string())?.to_csv().map_err(|e| e.to_string())?;
    ensure(generated == golden, || "library output differs from the golden report".into())?;
    let out = bin().arg("table8").output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("table8 exited {:?}", out.status.code()))?;
    ensure(out.stdout == golden.as_bytes(), || "binary output differs from the golden report".into())?;
    let diverging = rows.iter().filter(|r| r.agreement() == Agreement::Diverges).count();
    Ok(format!("anchor rows exact; {diverging}/28 rows DIVERGE at 0.02, report equals golden file"))
}

fn determinism() -> Check {
    let twice = |args: &[&str]| -> Result<(), String> {
        let a = bin().args(args).output().map_err(|e| e.to_string())?;
        let b = bin().args(args).output().map_err(|e| e.to_string())?;
        ensure(a.status.success(), || format!("{args:?} exited {:?}", a.status.code()))?;
        ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || format!("{args:?} output differs between runs"))
    };
    for which in ["4", "5", "6"] {
        twice(&["tables", which])?;
    }
    let example = program("example.qrbs");
    twice(&["run", example.to_str().unwrap(), "--mode", "shots", "--seed", "7"])?;
    Ok("tables 4, 5, 6 and shot-mode run are byte-identical across runs".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("gate identities", gate_identities),
        ("M(theta) self-inverse", m_self_inverse),
        ("Table 4 mapping", table4_mapping),
        ("Table 5 reproduction", table5_reproduction),
        ("Table 6 reproduction", table6_reproduction),
        ("Table 7 reproduction", table7_reproduction),
        ("RQ-AND / RQ-OR", rq_gates),
        ("headline experiment", headline_experiment),
        ("oracle equivalence", oracle_equivalence),
        ("Table 8 report", table8_report),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
