use qdesign::eur::{compare_bounds, design_ic_bound, ico_best_bound, info_diagram_samples, BoundParams};

use crate::args::{CompareArgs, DiagramArgs, EurCmd, IcoBestArgs};
use crate::common::{group, linspace, parse_alpha, parse_grid, resolve_design};
use crate::error::{usage, CliResult};
use crate::output::{num, opt, Table};

pub fn run(cmd: &EurCmd) -> CliResult<()> {
    match cmd {
        EurCmd::Diagram(a) => diagram(a),
        EurCmd::Compare(a) => compare(a),
        EurCmd::IcoBest(a) => ico_best(a),
    }
}

fn diagram(args: &DiagramArgs) -> CliResult<()> {
    let alphas = args.alphas.iter().map(|s| parse_alpha(s)).collect::<CliResult<Vec<_>>>()?;
    if alphas.is_empty() {
        return usage("need at least one Rényi order");
    }
    let diag = info_diagram_samples(args.l, args.a, &alphas, args.samples, args.seed, args.resolution)
        .map_err(|e| crate::error::CliError::Usage(e.to_string()))?;
    let mut table = Table::new(&["c_a", "H_alpha", "alpha", "kind"]);
    for s in &diag.samples {
        table.push(vec![num(s.c), num(s.h), num(s.alpha), "sample".into()]);
    }
    for b in &diag.boundary {
        table.push(vec![num(b.c), num(b.upper), num(b.alpha), "ub".into()]);
    }
    for b in &diag.boundary {
        table.push(vec![num(b.c), num(b.lower), num(b.alpha), "lb".into()]);
    }
    table.write(args.out.as_deref())
}

fn default_grouping(design: &str) -> &'static str {
    match design.to_ascii_lowercase().replace('_', "-").as_str() {
        "icosahedron" | "ico" => "antipodal",
        "mub-qubit" | "mub" => "pairs",
        _ => "single",
    }
}

fn compare(args: &CompareArgs) -> CliResult<()> {
    let design = resolve_design(&args.design)?;
    let grouping = args.grouping.as_deref().unwrap_or(default_grouping(&args.design));
    let dsm = group(&design, grouping)?;
    if args.a < 2 || args.a > dsm.strength() {
        return usage(format!(
            "a must lie in 2..={} for this design (got {})",
            dsm.strength(),
            args.a
        ));
    }
    if args.steps == 0 || !(args.alpha_min > 0.0) || args.alpha_max < args.alpha_min {
        return usage("need steps >= 1 and 0 < alpha-min <= alpha-max");
    }
    let l = dsm.outcomes();
    let c = design_ic_bound(l, dsm.dim(), args.a);
    let mut alphas = linspace(args.alpha_min, args.alpha_max, args.steps);
    if args.include_inf {
        alphas.push(f64::INFINITY);
    }
    let mut table = Table::new(&["alpha", "q1", "q2", "q_ras", "q_ket"]);
    for alpha in alphas {
        let report = compare_bounds(BoundParams::new(l, args.a, alpha, c)?, dsm.settings())?;
        table.push(vec![
            num(alpha),
            opt(report.q1),
            opt(report.q2),
            opt(report.q_ras),
            opt(report.q_ket),
        ]);
    }
    table.write(args.out.as_deref())
}

fn ico_best(args: &IcoBestArgs) -> CliResult<()> {
    let grid = parse_grid(&args.alpha_grid)?;
    let mut table = Table::new(&["alpha", "a_star", "value"]);
    for alpha in grid {
        let best = ico_best_bound(alpha).map_err(|e| crate::error::CliError::Usage(e.to_string()))?;
        table.push(vec![num(alpha), best.a_star.to_string(), num(best.value)]);
    }
    table.write(args.out.as_deref())
}
