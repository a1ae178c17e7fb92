use qdesign::design_search::{search_design, SearchConfig};
use qdesign::designs::{
    builtin_design, load_design, save_design, to_json, verify_design, BuiltinDesign, QuantumDesign,
};

use crate::args::{DesignCmd, SearchArgs, VerifyArgs};
use crate::common::resolve_design;
use crate::error::{usage, CliError, CliResult};

pub fn run(cmd: &DesignCmd) -> CliResult<()> {
    match cmd {
        DesignCmd::Verify(a) => verify(a),
        DesignCmd::Search(a) => search(a),
        DesignCmd::List => list(),
    }
}

fn verify(args: &VerifyArgs) -> CliResult<()> {
    let design = match (&args.name, &args.file) {
        (Some(name), None) => resolve_design(name)?,
        (None, Some(path)) => load_design(path)?,
        _ => return usage("give exactly one of --name and --file"),
    };
    let t = args.t.unwrap_or(design.strength() as usize);
    if t == 0 {
        return usage("strength must be at least 1");
    }
    let report = verify_design(&design, t, args.tol);
    println!("design: {}", design.name().unwrap_or("(unnamed)"));
    println!("vectors: {}", design.len());
    println!("dim: {}", design.dim());
    println!("t: {t}");
    match report.residual {
        Some(r) => println!("residual: {r:.6e}"),
        None => println!("residual: skipped (size cap)"),
    }
    println!("frame_potential: {:.16e}", report.frame_potential);
    println!("welch_bound: {:.16e}", report.welch_bound);
    println!("pass: {}", report.pass);
    if report.pass {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!("not a {t}-design at tolerance {:e}", args.tol)))
    }
}

fn search(args: &SearchArgs) -> CliResult<()> {
    let config = SearchConfig {
        d: args.d,
        k: args.k,
        t: args.t,
        seed: args.seed,
        max_iters: args.max_iters,
        tol: args.tol,
        restarts: args.restarts,
    };
    if let Err(e) = config.validate() {
        return usage(e.to_string());
    }
    let outcome = search_design(&config)?;
    eprintln!(
        "gap {:.3e} after {} iterations (restart {}), converged: {}",
        outcome.residual, outcome.iterations, outcome.restart, outcome.converged
    );
    if !outcome.converged {
        return Err(CliError::NotConverged(format!(
            "no {}-design with K = {} found; best gap {:.3e}",
            args.t, args.k, outcome.residual
        )));
    }
    let name = args
        .name
        .clone()
        .unwrap_or_else(|| format!("search_d{}_k{}_t{}_seed{}", args.d, args.k, args.t, args.seed));
    let design = QuantumDesign::new(
        outcome.design.dim(),
        outcome.design.vectors().to_vec(),
        outcome.design.strength(),
        Some(name),
    )?;
    match &args.out {
        Some(path) => save_design(&design, path)?,
        None => print!("{}", to_json(&design)),
    }
    Ok(())
}

fn list() -> CliResult<()> {
    for which in BuiltinDesign::ALL {
        let d = builtin_design(which)?;
        println!("{which}\tK={}\td={}\tt={}", d.len(), d.dim(), d.strength());
    }
    Ok(())
}
