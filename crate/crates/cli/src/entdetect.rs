use qdesign::entdetect::{detect_scan, separable_oracle, Family, GridSpec, LocalScheme};
use qdesign::unbiasedness::{random_bases_experiment, unit_grid};

use crate::args::{EntdetectCmd, OracleArgs, ScanArgs};
use crate::common::{criterion_name, group, parse_criterion, resolve_design, uniform_exponents};
use crate::error::{usage, CliError, CliResult};
use crate::output::{num, Table};

/// Tolerance when reporting whether the oracle maximum respects the bound.
const RESPECT_TOL: f64 = 1e-10;

pub fn run(cmd: &EntdetectCmd) -> CliResult<()> {
    match cmd {
        EntdetectCmd::Scan(a) if a.family == "unbiasedness" => unbiasedness_scan(a),
        EntdetectCmd::Scan(a) => scan(a),
        EntdetectCmd::Oracle(a) => oracle(a),
    }
}

fn local_scheme(design: &str, grouping: Option<&str>, parties: usize) -> CliResult<LocalScheme> {
    let d = resolve_design(design)?;
    let default = match design.to_ascii_lowercase().replace('_', "-").as_str() {
        "mub-qubit" | "mub" => "pairs",
        _ => "single",
    };
    let dsm = group(&d, grouping.unwrap_or(default))?;
    Ok(LocalScheme::from_dsm(&dsm, parties)?)
}

fn scan(args: &ScanArgs) -> CliResult<()> {
    let family: Family = args.family.parse().map_err(|e: qdesign::Error| CliError::Usage(e.to_string()))?;
    if args.grid == 0 {
        return usage("grid must be positive");
    }
    let parties = match family {
        Family::Isotropic => 2,
        _ => 4,
    };
    let exps = uniform_exponents(parties, args.a)?;
    let criterion = parse_criterion(&args.criterion, &exps)?;
    let scheme = local_scheme(&args.design, args.grouping.as_deref(), parties)?;
    let points = detect_scan(family, &scheme, &exps, criterion, GridSpec::square(args.grid))?;
    let mut table = Table::new(&["param1", "param2", "lhs", "rhs", "violated"]);
    for p in points {
        table.push(vec![
            num(p.param1),
            num(p.param2),
            num(p.lhs),
            num(p.rhs),
            p.violated.to_string(),
        ]);
    }
    table.write(args.out.as_deref())
}

fn unbiasedness_scan(args: &ScanArgs) -> CliResult<()> {
    if args.sets == 0 || args.x_grid < 2 {
        return usage("need --sets >= 1 and --x-grid >= 2");
    }
    let samples = random_bases_experiment(args.sets, args.seed, &unit_grid(args.x_grid))?;
    let mut table = Table::new(&["U", "x_critical"]);
    for s in samples {
        table.push(vec![num(s.u), num(s.x_critical.unwrap_or(f64::INFINITY))]);
    }
    table.write(args.out.as_deref())
}

fn oracle(args: &OracleArgs) -> CliResult<()> {
    if args.parties < 2 {
        return usage("need at least two parties");
    }
    let exps = uniform_exponents(args.parties, args.a)?;
    let criterion = parse_criterion(&args.criterion, &exps)?;
    let scheme = local_scheme(&args.design, args.grouping.as_deref(), args.parties)?;
    let result = separable_oracle(&scheme, &exps, criterion, args.samples, args.seed)?;
    let mut table = Table::new(&["parties", "a", "criterion", "max", "rhs", "respects"]);
    table.push(vec![
        args.parties.to_string(),
        exps.as_slice()[0].to_string(),
        criterion_name(criterion).into(),
        num(result.max),
        num(result.rhs),
        result.respects_bound(RESPECT_TOL).to_string(),
    ]);
    let respects = result.respects_bound(RESPECT_TOL);
    table.write(args.out.as_deref())?;
    if respects {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!(
            "product-state maximum {} exceeds the separable bound {}",
            result.max, result.rhs
        )))
    }
}
