use qdesign::design_search::{search_design, SearchConfig};
use qdesign::designs::{
    antipodal_pairs, builtin_design, frame_potential, group_to_povms, load_design, single_group,
    verify_design, welch_bound, BuiltinDesign, DsmSet,
};
use qdesign::entdetect::{
    correlation_j, correlation_jtilde, criterion_rhs, modified_ic_bound, rho_x_phi, Criterion,
    ExponentVector, LocalScheme,
};
use qdesign::eur::{
    average_ic_from_state, compare_bounds, design_ic_bound, ico_best_bound, index_coincidence,
    renyi_entropy, solve_px, solve_py, theorem1_bounds, BoundParams,
};
use qdesign::higher_ic::high_order_ic_check;
use qdesign::qcore::{
    born_probabilities, dirichlet_uniform, f_t, haar_random_state, random_density, rng_for,
    DensityOperator, FtMethod,
};
use qdesign::unbiasedness::{critical_x_for_bases, unbiasedness, unit_grid, BasisSet};

use crate::args::SelftestArgs;
use crate::error::{usage, CliError, CliResult};

const SUITES: [&str; 6] = ["qcore", "designs", "design-search", "eur", "entdetect", "aux"];
const STATES: u64 = 50;

/// Pass/fail tally for one suite. Errors from the library count as failures.
struct Tally {
    passed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self { passed: 0, failures: Vec::new() }
    }

    fn check(&mut self, name: &str, ok: qdesign::Result<bool>) {
        match ok {
            Ok(true) => self.passed += 1,
            Ok(false) => self.failures.push(name.to_string()),
            Err(e) => self.failures.push(format!("{name}: {e}")),
        }
    }

    fn total(&self) -> usize {
        self.passed + self.failures.len()
    }
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

fn qubit_state(seed: u64, k: u64) -> qdesign::Result<DensityOperator> {
    random_density(2, 1 + (k % 2) as usize, seed.wrapping_add(k))
}

fn qcore(seed: u64, t: &mut Tally) {
    for k in 0..STATES {
        t.check("F_t cycle index matches projector", (|| {
            let rho = random_density(3, 1 + (k % 3) as usize, seed.wrapping_add(k))?;
            let a = f_t(&rho, 3, FtMethod::CycleIndex)?;
            let b = f_t(&rho, 3, FtMethod::Projector)?;
            Ok(close(a, b, 1e-12))
        })());
        t.check("Born probabilities normalized", (|| {
            let rho = qubit_state(seed, k)?;
            let p = born_probabilities(&ico_antipodal()?.povms()[0], &rho)?;
            Ok(close(p.probs().iter().sum(), 1.0, 1e-12) && p.probs().iter().all(|&x| x >= 0.0))
        })());
    }
    t.check("pure-state purity", Ok(close(haar_random_state(4, seed).purity(), 1.0, 1e-12)));
}

fn ico_antipodal() -> qdesign::Result<DsmSet> {
    let ico = builtin_design(BuiltinDesign::Icosahedron)?;
    group_to_povms(&ico, &antipodal_pairs(&ico)?)
}

fn designs(t: &mut Tally) {
    for which in BuiltinDesign::ALL {
        t.check(&format!("{which} certifies"), (|| {
            let d = builtin_design(which)?;
            Ok((1..=d.strength() as usize).all(|s| verify_design(&d, s, 1e-8).pass))
        })());
    }
    t.check("icosahedron is not a 7-design", (|| {
        Ok(!verify_design(&builtin_design(BuiltinDesign::Icosahedron)?, 7, 1e-9).pass)
    })());
    t.check("icosahedron frame potential at the Welch bound", (|| {
        let ico = builtin_design(BuiltinDesign::Icosahedron)?;
        Ok((2..=5).all(|s| close(frame_potential(ico.vectors(), s), welch_bound(12, 2, s), 1e-9)))
    })());
}

fn design_search(seed: u64, t: &mut Tally) {
    t.check("tetrahedral 2-design search converges", (|| {
        let mut config = SearchConfig::new(2, 4, 2);
        config.seed = seed;
        let out = search_design(&config)?;
        Ok(out.converged && verify_design(&out.design, 2, 1e-8).pass)
    })());
    t.check("search is reproducible", (|| {
        let mut config = SearchConfig::new(2, 6, 3);
        config.seed = seed;
        let a = search_design(&config)?;
        let b = search_design(&config)?;
        Ok(a.design.vectors() == b.design.vectors())
    })());
}

fn eur(seed: u64, t: &mut Tally) {
    let target = (3f64.sqrt() + 1.0) / (2.0 * 3f64.sqrt());
    t.check("tight two-outcome solutions", (|| {
        Ok(close(solve_px(2, 2, 2.0 / 3.0)?.p, target, 1e-12) && close(solve_px(2, 3, 0.5)?.p, target, 1e-12))
    })());
    t.check("P_y at L' = 17", (|| {
        let s = solve_py(3, 1.0 / 288.0)?;
        Ok(s.l_prime == 17 && close(s.p, (53.0 - 21f64.sqrt()) / 816.0, 1e-10))
    })());
    t.check("ico-best switches at alpha = 3", (|| {
        Ok(ico_best_bound(2.99)?.a_star == 2 && ico_best_bound(3.0)?.a_star == 3)
    })());
    for l in [2usize, 12, 24] {
        for a in 2u32..=5 {
            t.check(&format!("bound ordering L={l} a={a}"), (|| {
                let lo = (l as f64).powi(1 - a as i32);
                for k in 0..10 {
                    let c = lo + (1.0 - lo) * k as f64 / 9.0;
                    for alpha in [a as f64, a as f64 + 0.5, 12.0, f64::INFINITY] {
                        compare_bounds(BoundParams::new(l, a, alpha, c)?, 1)?;
                    }
                }
                Ok(true)
            })());
        }
    }
    let mut rng = rng_for(seed, 0);
    for k in 0..STATES {
        let p = dirichlet_uniform(3 + (k % 5) as usize, &mut rng);
        let a = 2 + (k % 3) as u32;
        for alpha in [0.5, 1.0, a as f64, 7.0, f64::INFINITY] {
            t.check("entropy within the IC sandwich", (|| {
                let c = index_coincidence(&p, a);
                let iv = theorem1_bounds(p.len(), a, c, alpha)?;
                let h = renyi_entropy(&p, alpha)?;
                Ok(h >= iv.lower - 1e-9 && h <= iv.upper + 1e-9)
            })());
        }
    }
    t.check("IC identity on random states", (|| {
        let dsm = ico_antipodal()?;
        for k in 0..STATES {
            let rho = qubit_state(seed, k)?;
            for a in 2..=5u32 {
                let ic = average_ic_from_state(&dsm, &rho, a)?.value;
                let c = design_ic_bound(2, 2, a) * f_t(&rho, a as usize, FtMethod::CycleIndex)?;
                if !close(ic, c, 1e-10) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })());
}

fn entdetect(seed: u64, t: &mut Tally) {
    t.check("four-qubit family detected at x = 1 only", (|| {
        let ico = builtin_design(BuiltinDesign::Icosahedron)?;
        let scheme = LocalScheme::from_dsm(&group_to_povms(&ico, &single_group(&ico))?, 4)?;
        let exps = ExponentVector::uniform(4)?;
        let rhs = criterion_rhs(&scheme, &exps, Criterion::Shifted)?;
        let phi = std::f64::consts::FRAC_PI_8;
        let hit = correlation_jtilde(&scheme, &rho_x_phi(1.0, phi)?)? > rhs;
        let miss = correlation_jtilde(&scheme, &rho_x_phi(0.33, phi)?)? <= rhs;
        Ok(hit && miss)
    })());
    t.check("product states respect both bounds", (|| {
        let ico = builtin_design(BuiltinDesign::Icosahedron)?;
        let scheme = LocalScheme::from_dsm(&group_to_povms(&ico, &single_group(&ico))?, 2)?;
        let exps = ExponentVector::uniform(2)?;
        let r3 = criterion_rhs(&scheme, &exps, Criterion::Plain)?;
        let r4 = criterion_rhs(&scheme, &exps, Criterion::Shifted)?;
        for k in 0..STATES {
            let rho = DensityOperator::product(&[qubit_state(seed, 2 * k)?, qubit_state(seed, 2 * k + 1)?])?;
            if correlation_j(&scheme, &rho)? > r3 + 1e-10 || correlation_jtilde(&scheme, &rho)? > r4 + 1e-10 {
                return Ok(false);
            }
        }
        Ok(true)
    })());
    t.check("modified bound closed forms", Ok(
        close(modified_ic_bound(12, 2, 2, 12), 1.0 / 36.0, 1e-14)
            && close(modified_ic_bound(12, 2, 4, 12), 1.0 / 8640.0, 1e-14),
    ));
}

fn aux(seed: u64, t: &mut Tally) {
    t.check("MUB unbiasedness is maximal", (|| Ok(close(unbiasedness(&BasisSet::mub_qubit())?, 2.0, 1e-12)))());
    t.check("MUB critical x is 1/3", (|| {
        let x = critical_x_for_bases(&BasisSet::mub_qubit(), &unit_grid(101))?.x_critical;
        Ok(x.is_some_and(|x| close(x, 1.0 / 3.0, 1e-3)))
    })());
    t.check("higher-order IC bound", (|| {
        let ico = ico_antipodal()?;
        let mub = group_to_povms(
            &builtin_design(BuiltinDesign::MubQubit)?,
            &[vec![0, 1], vec![2, 3], vec![4, 5]],
        )?;
        for k in 0..STATES {
            let rho = qubit_state(seed, k)?;
            for (dsm, max_a) in [(&ico, 3u32), (&mub, 2)] {
                for a in 2..=max_a {
                    if !high_order_ic_check(dsm, &rho, a)?.holds {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    })());
}

pub fn run(args: &SelftestArgs) -> CliResult<()> {
    let selected: Vec<&str> = match args.suite.as_str() {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return usage(format!("unknown suite '{other}' ({}, all)", SUITES.join(", "))),
    };
    let mut failed = 0;
    for name in selected {
        let mut tally = Tally::new();
        match name {
            "qcore" => qcore(args.seed, &mut tally),
            "designs" => designs(&mut tally),
            "design-search" => design_search(args.seed, &mut tally),
            "eur" => eur(args.seed, &mut tally),
            "entdetect" => entdetect(args.seed, &mut tally),
            _ => aux(args.seed, &mut tally),
        }
        println!("{name}: {}/{} passed", tally.passed, tally.total());
        for f in &tally.failures {
            println!("  FAILED {f}");
        }
        failed += tally.failures.len();
    }
    if let Some(path) = &args.design_file {
        let mut tally = Tally::new();
        tally.check(&format!("{} certifies", path.display()), (|| {
            let d = load_design(path)?;
            Ok(verify_design(&d, d.strength() as usize, 1e-8).pass)
        })());
        println!("design-file: {}/{} passed", tally.passed, tally.total());
        for f in &tally.failures {
            println!("  FAILED {f}");
        }
        failed += tally.failures.len();
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!("{failed} property check(s) failed")))
    }
}
