//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qdesign::design_search::{search_design, SearchConfig};
use qdesign::designs::{
    antipodal_pairs, builtin_design, design_constant, frame_potential, group_to_povms, single_group,
    verify_design, BuiltinDesign, DsmSet,
};
use qdesign::entdetect::{
    correlation_j_product, correlation_jtilde_product, detect_scan, modified_ic_bound, theorem3_rhs,
    theorem4_rhs, CorrelationOperators, Criterion, ExponentVector, Family, GridSpec, LocalScheme,
};
use qdesign::eur::{
    average_ic_from_state, compare_bounds, design_ic_bound, dist_py, ico_best_bound, info_diagram_samples,
    solve_px, theorem1_bounds, BoundParams,
};
use qdesign::higher_ic::HighOrderIcBound;
use qdesign::qcore::{
    born_probabilities, dirichlet_uniform, f_t, haar_vector, random_density, rng_for, DensityOperator, FtMethod,
};
use qdesign::unbiasedness::{
    critical_x_for_bases, random_bases_experiment, spearman_rank_correlation, unit_grid, BasisSet,
};

const SEED: u64 = 20_240_601;

/// Outcome of one criterion: whether it held and a one-line summary.
struct Verdict {
    ok: bool,
    detail: String,
}

type Check = (&'static str, fn() -> Verdict);

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn within(start: Instant, budget: Duration) -> bool {
    start.elapsed() <= budget
}

fn ico() -> qdesign::designs::QuantumDesign {
    builtin_design(BuiltinDesign::Icosahedron).unwrap()
}

fn ico_antipodal() -> DsmSet {
    let d = ico();
    group_to_povms(&d, &antipodal_pairs(&d).unwrap()).unwrap()
}

fn ico_single() -> DsmSet {
    let d = ico();
    group_to_povms(&d, &single_group(&d)).unwrap()
}

fn mub_pairs() -> DsmSet {
    let d = builtin_design(BuiltinDesign::MubQubit).unwrap();
    group_to_povms(&d, &[vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap()
}

fn random_qubit(seed: u64, k: u64) -> DensityOperator {
    random_density(2, 1 + (k % 2) as usize, seed.wrapping_add(k)).unwrap()
}

fn pure_qubit(seed: u64, k: u64) -> DensityOperator {
    random_density(2, 1, seed.wrapping_add(k)).unwrap()
}

fn c1_design_certification() -> Verdict {
    let start = Instant::now();
    let d = ico();
    let mut worst = 0.0f64;
    let mut ok = true;
    for t in 2..=5 {
        let r = verify_design(&d, t, 1e-9);
        let res = r.residual.unwrap_or(f64::INFINITY);
        worst = worst.max(res);
        let fp_err = (frame_potential(d.vectors(), t) - 144.0 * design_constant(2, t)).abs();
        ok &= r.pass && res <= 1e-9 && fp_err <= 1e-9;
    }
    let fails_at_7 = !verify_design(&d, 7, 1e-9).pass;
    let elapsed = start.elapsed();
    verdict(
        ok && fails_at_7 && elapsed < Duration::from_secs(1),
        format!("t=2..5 max residual {worst:.2e}, t=7 rejected: {fails_at_7}, {elapsed:.2?}"),
    )
}

fn c2_design_search() -> Verdict {
    let start = Instant::now();
    let mut config = SearchConfig::new(2, 24, 7);
    config.seed = SEED;
    let out = match search_design(&config) {
        Ok(o) => o,
        Err(e) => return verdict(false, format!("search failed: {e}")),
    };
    let elapsed = start.elapsed();
    let certified = verify_design(&out.design, 7, 1e-8).pass;
    let dsm = group_to_povms(&out.design, &single_group(&out.design)).unwrap();
    let mut worst = 0.0f64;
    let mut rng = rng_for(SEED, 1);
    for _ in 0..20 {
        let rho = DensityOperator::from_pure(&haar_vector(2, &mut rng)).unwrap();
        for a in 2..=7u32 {
            let expected = 24.0 / ((a + 1) as f64 * 12f64.powi(a as i32));
            let got = average_ic_from_state(&dsm, &rho, a).unwrap().value;
            worst = worst.max((got - expected).abs());
        }
    }
    verdict(
        out.converged && out.residual <= 1e-8 && certified && worst <= 1e-9 && elapsed < Duration::from_secs(60),
        format!("gap {:.2e}, certified: {certified}, B_a error {worst:.2e}, {elapsed:.2?}", out.residual),
    )
}

fn c3_ic_identity() -> Verdict {
    let start = Instant::now();
    let (ico, mub) = (ico_antipodal(), mub_pairs());
    let mut worst = 0.0f64;
    let mut worst_mub = 0.0f64;
    for k in 0..1000 {
        let rho = random_qubit(SEED, k);
        for a in 2..=5u32 {
            let measured = average_ic_from_state(&ico, &rho, a).unwrap().value;
            let predicted = design_ic_bound(2, 2, a) * f_t(&rho, a as usize, FtMethod::CycleIndex).unwrap();
            worst = worst.max((measured - predicted).abs());
        }
        let total = 3.0 * average_ic_from_state(&mub, &rho, 2).unwrap().value;
        worst_mub = worst_mub.max((total - (1.0 + rho.purity())).abs());
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-10 && worst_mub <= 1e-10 && elapsed < Duration::from_secs(10),
        format!("icosahedron error {worst:.2e}, MUB error {worst_mub:.2e}, {elapsed:.2?}"),
    )
}

fn c4_exact_values() -> Verdict {
    let start = Instant::now();
    let c = design_ic_bound(24, 2, 2);
    let ln18 = 18f64.ln();
    let mut q1_err = 0.0f64;
    for alpha in [0.5, 1.0, 2.0] {
        let r = compare_bounds(BoundParams::new(24, 2, alpha, c).unwrap(), 1).unwrap();
        q1_err = q1_err.max((r.q1.unwrap() - ln18).abs());
    }
    let py = dist_py(3, 1.0 / 288.0).unwrap();
    let big = py.probs().iter().cloned().fold(0.0, f64::max);
    let py_err = (big - (53.0 - 21f64.sqrt()) / 816.0).abs();
    let target = (3f64.sqrt() + 1.0) / (2.0 * 3f64.sqrt());
    let px_err = (solve_px(2, 2, 2.0 / 3.0).unwrap().p - target)
        .abs()
        .max((solve_px(2, 3, 0.5).unwrap().p - target).abs());
    let elapsed = start.elapsed();
    verdict(
        q1_err <= 1e-9 && py_err <= 1e-10 && px_err <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("q1 vs ln 18 {q1_err:.2e}, P_y {py_err:.2e}, P_x {px_err:.2e}, {elapsed:.2?}"),
    )
}

fn c5_bound_ordering() -> Verdict {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    let mut eq_err = 0.0f64;
    for l in [2usize, 12, 24] {
        for a in 2u32..=5 {
            let lo = (l as f64).powi(1 - a as i32);
            let mut alphas: Vec<f64> = (0..).map(|k| a as f64 + 0.5 * k as f64).take_while(|&x| x <= 12.0).collect();
            alphas.push(f64::INFINITY);
            for k in 0..50 {
                let c = lo + (1.0 - lo) * k as f64 / 49.0;
                for &alpha in &alphas {
                    checked += 1;
                    match compare_bounds(BoundParams::new(l, a, alpha, c).unwrap(), 1) {
                        Ok(r) => {
                            if alpha == a as f64 {
                                let q = [r.q1, r.q2, r.q_ras, r.q_ket].map(Option::unwrap);
                                let spread = q.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                                    - q.iter().cloned().fold(f64::INFINITY, f64::min);
                                eq_err = eq_err.max(spread);
                            }
                        }
                        Err(e) => failures.push(e.to_string()),
                    }
                }
            }
        }
    }
    let ok = failures.is_empty() && eq_err <= 1e-10 && within(start, Duration::from_secs(30));
    let mut detail = format!("{checked} grid points, equality spread at alpha=a {eq_err:.2e}, {:.2?}", start.elapsed());
    if let Some(f) = failures.first() {
        detail.push_str(&format!(", first violation: {f}"));
    }
    verdict(ok, detail)
}

fn run_cli(args: &[&str], out: &Path) -> Result<(), String> {
    let output = Command::new(env!("CARGO_BIN_EXE_qdesign"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("QDESIGN_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    if output.status.success() {
        Ok(())
    } else {
        Err(format!(
            "qdesign {} exited with {}: {}",
            args.join(" "),
            output.status,
            String::from_utf8_lossy(&output.stderr).trim()
        ))
    }
}

fn read_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(str::to_owned).collect()).collect()
}

fn cell(s: &str) -> Option<f64> {
    if s.is_empty() {
        None
    } else {
        Some(s.parse().unwrap())
    }
}

fn c6_bound_curves() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let (snub, icos, best) = (dir.path().join("snub.csv"), dir.path().join("ico.csv"), dir.path().join("best.csv"));
    let runs = [
        run_cli(&["eur", "compare", "--design", "snub-cube", "--a", "2", "--alpha-min", "2", "--alpha-max", "12", "--steps", "200"], &snub),
        run_cli(&["eur", "compare", "--design", "icosahedron", "--grouping", "antipodal", "--a", "3", "--alpha-min", "3", "--alpha-max", "12", "--steps", "200"], &icos),
        run_cli(&["eur", "ico-best", "--alpha-grid", "2:0.01:12"], &best),
    ];
    if let Some(Err(e)) = runs.into_iter().find(Result::is_err) {
        return verdict(false, e);
    }

    let mut snub_ok = true;
    for row in read_rows(&snub) {
        let alpha: f64 = row[0].parse().unwrap();
        let [q1, q2, ras, ket] = [1, 2, 3, 4].map(|i| cell(&row[i]).unwrap());
        snub_ok &= q1 >= q2 - 1e-10 && q2 >= ras - 1e-10 && ras >= ket - 1e-10;
        if alpha > 2.0 {
            snub_ok &= q2 > ras && ras > ket;
        }
    }

    let mut ico_ok = true;
    let mut prev_gap = f64::NEG_INFINITY;
    let mut last_gap = 0.0;
    for row in read_rows(&icos) {
        let alpha: f64 = row[0].parse().unwrap();
        let (q2, ket) = (cell(&row[2]).unwrap(), cell(&row[4]).unwrap());
        let gap = q2 - ket;
        ico_ok &= gap >= -1e-10;
        if alpha > 3.0 {
            ico_ok &= gap > 0.0 && gap >= prev_gap - 1e-12;
        }
        prev_gap = gap;
        last_gap = gap;
    }

    let mut switch = None;
    let mut prev_a = None;
    for row in read_rows(&best) {
        let alpha: f64 = row[0].parse().unwrap();
        let a: u32 = row[1].parse().unwrap();
        if prev_a == Some(2) && a != 2 && switch.is_none() {
            switch = Some(alpha);
        }
        prev_a = Some(a);
    }
    // Cross-check the CLI against the library at the switch.
    let lib_ok = ico_best_bound(2.99).unwrap().a_star == 2 && ico_best_bound(3.0).unwrap().a_star == 3;
    let switch_ok = switch.is_some_and(|s| (s - 3.0).abs() <= 0.01);
    verdict(
        snub_ok && ico_ok && switch_ok && lib_ok,
        format!(
            "snub-cube chain: {snub_ok}, icosahedron q2-q_ket gap grows to {last_gap:.3e}: {ico_ok}, a* switch at {:?}",
            switch
        ),
    )
}

fn c7_sandwich() -> Verdict {
    let start = Instant::now();
    let n = 20_000;
    let alphas = [0.5, 1.0, 2.0, 2.5, 3.0, 4.0, 5.5, 8.0, f64::INFINITY];
    let mut total = 0usize;
    let mut worst = 0.0f64;
    let mut oriented = true;
    let mut cell_seed = SEED;
    for l in [2usize, 3, 12, 24] {
        for a in 2u32..=5 {
            cell_seed += 1;
            let diag = info_diagram_samples(l, a, &alphas, n, cell_seed, 64).unwrap();
            for s in &diag.samples {
                let iv = theorem1_bounds(l, a, s.c, s.alpha).unwrap();
                worst = worst.max(iv.lower - s.h).max(s.h - iv.upper);
                total += 1;
            }
            // The interval flips its endpoints across alpha = a.
            for b in &diag.boundary {
                let hy = qdesign::eur::renyi_entropy(dist_py(a, b.c).unwrap().probs(), b.alpha).unwrap();
                let expect_lower_is_py = b.alpha <= a as f64;
                oriented &= ((b.lower - hy).abs() < 1e-12) == expect_lower_is_py || (b.upper - b.lower).abs() < 1e-12;
                oriented &= b.lower <= b.upper + 1e-12;
            }
        }
    }
    let ok = worst <= 1e-9 && oriented && within(start, Duration::from_secs(60));
    verdict(
        ok,
        format!("{total} sample points, worst excursion {worst:.2e}, orientation: {oriented}, {:.2?}", start.elapsed()),
    )
}

fn c8_entanglement_detection() -> Verdict {
    let start = Instant::now();
    let scheme = LocalScheme::from_dsm(&ico_single(), 4).unwrap();
    let exps = ExponentVector::new(vec![4, 4, 4, 4]).unwrap();
    let pts = match detect_scan(Family::RhoXPhi, &scheme, &exps, Criterion::Shifted, GridSpec::square(200)) {
        Ok(p) => p,
        Err(e) => return verdict(false, format!("scan failed: {e}")),
    };
    let mut at_one = 0;
    let mut missed = 0;
    let mut false_alarms = 0;
    for p in &pts {
        if p.param1 == 1.0 && p.param2 > 0.01 && p.param2 < FRAC_PI_2 - 0.01 {
            at_one += 1;
            missed += usize::from(!p.violated);
        }
        if p.param1 <= 0.33 && p.violated {
            false_alarms += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        at_one > 0 && missed == 0 && false_alarms == 0 && elapsed < Duration::from_secs(300),
        format!("x=1: {}/{at_one} detected, x<=0.33: {false_alarms} violations, {elapsed:.2?}", at_one - missed),
    )
}

fn c9_separability_soundness() -> Verdict {
    let start = Instant::now();
    let mut worst = f64::NEG_INFINITY;
    for (parties, dsm) in [(2usize, ico_antipodal()), (4, ico_single())] {
        let scheme = LocalScheme::from_dsm(&dsm, parties).unwrap();
        let exps = ExponentVector::uniform(parties).unwrap();
        let (r3, r4) = (theorem3_rhs(&scheme, &exps).unwrap(), theorem4_rhs(&scheme, &exps).unwrap());
        for k in 0..10_000u64 {
            let factors: Vec<_> = (0..parties as u64).map(|n| random_qubit(SEED ^ 0xA5, k * 8 + n)).collect();
            worst = worst
                .max(correlation_j_product(&scheme, &factors).unwrap() - r3)
                .max(correlation_jtilde_product(&scheme, &factors).unwrap() - r4);
        }
        let ops = CorrelationOperators::new(&scheme).unwrap();
        let mut rng = rng_for(SEED, 9);
        for k in 0..1000u64 {
            let weights = dirichlet_uniform(4, &mut rng);
            let mut rho: Option<DensityOperator> = None;
            let mut acc = 0.0;
            for (m, &w) in weights.iter().enumerate() {
                let factors: Vec<_> = (0..parties as u64)
                    .map(|n| random_qubit(SEED ^ 0x3C, (k * 4 + m as u64) * 8 + n))
                    .collect();
                let prod = DensityOperator::product(&factors).unwrap();
                acc += w;
                rho = Some(match rho {
                    None => prod,
                    Some(r) => r.mix(&prod, 1.0 - w / acc).unwrap(),
                });
            }
            let rho = rho.unwrap();
            worst = worst.max(ops.j(&rho).unwrap() - r3).max(ops.jtilde(&rho).unwrap() - r4);
        }
    }
    let ok = worst <= 1e-10 && within(start, Duration::from_secs(120));
    verdict(ok, format!("largest excess over the separable bounds {worst:.2e}, {:.2?}", start.elapsed()))
}

fn c10_modified_bound_oracle() -> Verdict {
    let start = Instant::now();
    let povm = ico_single().povms()[0].clone();
    let quartic = |rho: &DensityOperator| -> f64 {
        born_probabilities(&povm, rho).unwrap().probs().iter().map(|p| (p - 1.0 / 12.0).powi(4)).sum()
    };
    let at = |t: f64, p: f64| {
        let v = qdesign::designs::state_from_bloch([t.sin() * p.cos(), t.sin() * p.sin(), t.cos()]);
        quartic(&DensityOperator::from_pure(&v).unwrap())
    };
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..=60 {
        for j in 0..120 {
            let (t, p) = (std::f64::consts::PI * i as f64 / 60.0, 2.0 * std::f64::consts::PI * j as f64 / 120.0);
            let v = at(t, p);
            if v > best.0 {
                best = (v, t, p);
            }
        }
    }
    let (mut v, mut t, mut p, mut step) = (best.0, best.1, best.2, 0.05);
    while step > 1e-8 {
        let mut moved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let w = at(t + dt, p + dp);
            if w > v {
                (v, t, p, moved) = (w, t + dt, p + dp, true);
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    let bound = modified_ic_bound(12, 2, 4, 12);
    let spread = (0..1000u64)
        .map(|k| (quartic(&pure_qubit(SEED ^ 0x77, k)) - bound).abs())
        .fold(0.0, f64::max);
    let err = (v - bound).abs();
    verdict(
        err <= 1e-9 && spread <= 1e-10,
        format!("closed form {bound:.10e}, search max error {err:.2e}, spread over pure states {spread:.2e}, {:.2?}", start.elapsed()),
    )
}

fn c11_higher_order_ic() -> Verdict {
    let start = Instant::now();
    let sets = [("icosahedron", ico_antipodal()), ("mub", mub_pairs())];
    let mut worst = f64::INFINITY;
    let mut orders = Vec::new();
    for (name, dsm) in &sets {
        for a in 2..=dsm.strength().min(3) {
            orders.push(format!("{name} a={a}"));
            let bound = HighOrderIcBound::new(dsm, a).unwrap();
            for k in 0..1000 {
                let r = bound.check(dsm, &random_qubit(SEED ^ 0x11, k)).unwrap();
                worst = worst.min(r.rhs - r.lhs);
            }
        }
    }
    let ok = worst >= -1e-10 && within(start, Duration::from_secs(60));
    verdict(ok, format!("{}: minimum slack {worst:.3e}, {:.2?}", orders.join(", "), start.elapsed()))
}

fn c12_unbiasedness_trend() -> Verdict {
    let start = Instant::now();
    let grid = unit_grid(101);
    let samples = match random_bases_experiment(500, SEED, &grid) {
        Ok(s) => s,
        Err(e) => return verdict(false, format!("experiment failed: {e}")),
    };
    let u: Vec<f64> = samples.iter().map(|s| s.u).collect();
    let neg_x: Vec<f64> = samples.iter().map(|s| -s.x_critical.unwrap_or(f64::INFINITY)).collect();
    let rho = spearman_rank_correlation(&u, &neg_x).unwrap();
    let mub = critical_x_for_bases(&BasisSet::mub_qubit(), &grid).unwrap().x_critical;
    let mub_ok = mub.is_some_and(|x| (x - 1.0 / 3.0).abs() <= 1e-3);
    let ok = rho >= 0.5 && mub_ok && within(start, Duration::from_secs(300));
    verdict(ok, format!("Spearman {rho:.3}, MUB x_critical {mub:?}, {:.2?}", start.elapsed()))
}

fn c13_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["eur", "diagram", "--L", "3", "--a", "3", "--alphas", "1,5", "--samples", "2000", "--seed", "7"],
        vec!["eur", "compare", "--design", "snub-cube", "--a", "2", "--steps", "50", "--include-inf"],
        vec!["eur", "ico-best", "--alpha-grid", "2:0.05:12"],
        vec!["entdetect", "scan", "--family", "rho-x-phi", "--grid", "30", "--a", "4", "--seed", "7"],
        vec!["entdetect", "scan", "--family", "psi-beta-phi", "--grid", "20", "--a", "4", "--seed", "7"],
        vec!["entdetect", "scan", "--family", "isotropic", "--grid", "50", "--a", "2", "--grouping", "antipodal"],
        vec!["entdetect", "scan", "--family", "unbiasedness", "--sets", "40", "--seed", "7"],
        vec!["entdetect", "oracle", "--parties", "4", "--a", "4", "--samples", "30", "--seed", "7"],
        vec!["design", "search", "--d", "2", "--K", "12", "--t", "5", "--seed", "7"],
    ];
    let mut mismatches = Vec::new();
    for (i, args) in commands.iter().enumerate() {
        let a = dir.path().join(format!("{i}a.csv"));
        let b = dir.path().join(format!("{i}b.csv"));
        let c = dir.path().join(format!("{i}c.csv"));
        if let Err(e) = run_cli(args, &a).and_then(|_| run_cli(args, &b)) {
            return verdict(false, e);
        }
        // Replaying the manifest must also reproduce the file.
        let manifest = dir.path().join(format!("{i}a.csv.manifest.json"));
        let replay = Command::new(env!("CARGO_BIN_EXE_qdesign"))
            .arg("replay")
            .arg(&manifest)
            .arg("--out")
            .arg(&c)
            .output();
        if !replay.is_ok_and(|o| o.status.success()) {
            return verdict(false, format!("replay of '{}' failed", args.join(" ")));
        }
        let [ba, bb, bc] = [&a, &b, &c].map(|p| std::fs::read(p).unwrap());
        if ba != bb || ba != bc {
            mismatches.push(args[..2].join(" "));
        }
    }
    verdict(
        mismatches.is_empty(),
        format!("{} commands rerun and replayed, mismatches: {:?}", commands.len(), mismatches),
    )
}

fn main() -> ExitCode {
    let criteria: [Check; 13] = [
        ("design certification", c1_design_certification),
        ("design search", c2_design_search),
        ("IC identity", c3_ic_identity),
        ("exact values", c4_exact_values),
        ("bound ordering", c5_bound_ordering),
        ("bound comparison curves", c6_bound_curves),
        ("entropy sandwich", c7_sandwich),
        ("entanglement detection", c8_entanglement_detection),
        ("separability soundness", c9_separability_soundness),
        ("modified bound oracle", c10_modified_bound_oracle),
        ("higher-order IC", c11_higher_order_ic),
        ("unbiasedness trend", c12_unbiasedness_trend),
        ("determinism", c13_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        failed += usize::from(!v.ok);
        println!("[{}] {:>2}. {name}: {}", if v.ok { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
