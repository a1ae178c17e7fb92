use std::path::Path;

use qdesign::designs::{
    antipodal_pairs, builtin_design, group_to_povms, load_design, single_group, BuiltinDesign,
    DsmSet, QuantumDesign,
};
use qdesign::entdetect::{Criterion, ExponentVector};

use crate::error::{usage, CliResult};

/// A built-in name, or otherwise a path to a design file.
pub fn resolve_design(spec: &str) -> CliResult<QuantumDesign> {
    if let Ok(which) = spec.parse::<BuiltinDesign>() {
        return Ok(builtin_design(which)?);
    }
    if Path::new(spec).exists() {
        return Ok(load_design(spec)?);
    }
    usage(format!("'{spec}' is neither a built-in design nor an existing file"))
}

/// `single`: one POVM from all vectors; `antipodal`: two-outcome POVMs from
/// antipodal pairs; `pairs`: consecutive vectors `(0,1), (2,3), …`.
pub fn group(design: &QuantumDesign, grouping: &str) -> CliResult<DsmSet> {
    let groups = match grouping {
        "single" => single_group(design),
        "antipodal" => antipodal_pairs(design)?,
        "pairs" => {
            if !design.len().is_multiple_of(2) {
                return usage("pairs grouping needs an even number of vectors");
            }
            (0..design.len() / 2).map(|i| vec![2 * i, 2 * i + 1]).collect()
        }
        other => return usage(format!("unknown grouping '{other}' (single, antipodal, pairs)")),
    };
    Ok(group_to_povms(design, &groups)?)
}

pub fn parse_criterion(s: &str, exps: &ExponentVector) -> CliResult<Criterion> {
    match s {
        "auto" if exps.all_even() => Ok(Criterion::Shifted),
        "auto" | "plain" => Ok(Criterion::Plain),
        "shifted" => Ok(Criterion::Shifted),
        other => usage(format!("unknown criterion '{other}' (auto, plain, shifted)")),
    }
}

pub fn criterion_name(c: Criterion) -> &'static str {
    match c {
        Criterion::Plain => "plain",
        Criterion::Shifted => "shifted",
    }
}

pub fn uniform_exponents(parties: usize, a: Option<u32>) -> CliResult<ExponentVector> {
    let a = a.unwrap_or(parties as u32);
    ExponentVector::new(vec![a; parties]).or_else(|_| {
        usage(format!(
            "exponent a = {a} on {parties} subsystems does not satisfy Σ 1/a_n = 1"
        ))
    })
}

pub fn parse_alpha(s: &str) -> CliResult<f64> {
    match s.trim().parse::<f64>() {
        Ok(a) if a > 0.0 => Ok(a),
        _ => usage(format!("invalid Rényi order '{s}'")),
    }
}

/// `start:step:stop` (inclusive, up to rounding) or a comma-separated list.
pub fn parse_grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 3 {
        let nums: Vec<f64> = parts
            .iter()
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .or_else(|_| usage(format!("invalid grid '{spec}'")))?;
        let (start, step, stop) = (nums[0], nums[1], nums[2]);
        if !(step > 0.0) || stop < start || !start.is_finite() || !stop.is_finite() {
            return usage(format!("invalid grid '{spec}'"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        // For steps like 0.01, index as integers over 1/step so grid points
        // are the correctly rounded decimals.
        let m = step.recip().round();
        let s0 = (start * m).round();
        if (m * step - 1.0).abs() < 1e-12 && (start * m - s0).abs() < 1e-9 {
            return Ok((0..=n).map(|k| (s0 + k as f64) / m).collect());
        }
        return Ok((0..=n).map(|k| start + step * k as f64).collect());
    }
    spec.split(',').map(parse_alpha).collect()
}

/// `n` evenly spaced points on `[lo, hi]`, hitting both ends exactly.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| {
                if k + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}
