use num_complex::Complex64;

use super::QuantumDesign;
use crate::error::{Error, Result};
use crate::qcore::{projector, CMatrix, Povm};

const GROUP_SUM_TOL: f64 = 1e-9;
const ANTIPODE_TOL: f64 = 1e-9;

/// `Θ` POVMs of a common dimension and outcome count `L`, built from a design.
#[derive(Clone, Debug)]
pub struct DsmSet {
    povms: Vec<Povm>,
    outcomes: usize,
    strength: u32,
    source: Option<String>,
}

impl DsmSet {
    pub fn new(povms: Vec<Povm>, strength: u32, source: Option<String>) -> Result<Self> {
        let first = povms
            .first()
            .ok_or_else(|| Error::Argument("measurement set is empty".into()))?;
        let (dim, outcomes) = (first.dim(), first.len());
        for (i, p) in povms.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if p.len() != outcomes {
                return Err(Error::Argument(format!(
                    "POVM {i} has {} outcomes, expected {outcomes}",
                    p.len()
                )));
            }
        }
        Ok(Self {
            povms,
            outcomes,
            strength,
            source,
        })
    }

    pub fn povms(&self) -> &[Povm] {
        &self.povms
    }

    pub fn dim(&self) -> usize {
        self.povms[0].dim()
    }

    /// Outcomes per POVM, `L`.
    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    /// Number of POVMs, `Θ`.
    pub fn settings(&self) -> usize {
        self.povms.len()
    }

    pub fn strength(&self) -> u32 {
        self.strength
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }
}

/// Groups design vectors into POVMs with effects `(d/L)|ψ⟩⟨ψ|`.
///
/// `groups` must partition `0..K` into blocks of equal size `L`, and each
/// block's projectors must sum to a multiple of the identity.
pub fn group_to_povms(design: &QuantumDesign, groups: &[Vec<usize>]) -> Result<DsmSet> {
    let k = design.len();
    let d = design.dim();
    let l = groups.first().map(Vec::len).unwrap_or(0);
    if l == 0 {
        return Err(Error::Grouping {
            group: 0,
            reason: "empty grouping".into(),
        });
    }
    let mut used = vec![false; k];
    for (g, group) in groups.iter().enumerate() {
        if group.len() != l {
            return Err(Error::Grouping {
                group: g,
                reason: format!("has {} members, expected {l}", group.len()),
            });
        }
        for &idx in group {
            if idx >= k {
                return Err(Error::Grouping {
                    group: g,
                    reason: format!("index {idx} out of range for {k} vectors"),
                });
            }
            if std::mem::replace(&mut used[idx], true) {
                return Err(Error::Grouping {
                    group: g,
                    reason: format!("index {idx} appears twice"),
                });
            }
        }
    }
    if let Some(missing) = used.iter().position(|u| !u) {
        return Err(Error::Grouping {
            group: groups.len(),
            reason: format!("vector {missing} is not assigned to any group"),
        });
    }

    let scale = Complex64::new(d as f64 / l as f64, 0.0);
    let mut povms = Vec::with_capacity(groups.len());
    for (g, group) in groups.iter().enumerate() {
        let projs: Vec<CMatrix> = group.iter().map(|&i| projector(&design.vectors()[i])).collect();
        let sum: CMatrix = projs.iter().fold(CMatrix::zeros(d, d), |acc, p| acc + p);
        let target = CMatrix::identity(d, d) * Complex64::new(l as f64 / d as f64, 0.0);
        let dev = (sum - target).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if dev > GROUP_SUM_TOL {
            return Err(Error::Grouping {
                group: g,
                reason: format!("projectors sum to identity only within {dev:e}"),
            });
        }
        let effects = projs.into_iter().map(|p| p * scale).collect();
        povms.push(Povm::new(effects).map_err(|e| Error::Grouping {
            group: g,
            reason: e.to_string(),
        })?);
    }
    DsmSet::new(povms, design.strength(), design.name().map(str::to_owned))
}

/// The whole design as one POVM.
pub fn single_group(design: &QuantumDesign) -> Vec<Vec<usize>> {
    vec![(0..design.len()).collect()]
}

/// Pairs each qubit design vector with the one whose Bloch vector is closest
/// to its antipode, in order of first appearance.
pub fn antipodal_pairs(design: &QuantumDesign) -> Result<Vec<Vec<usize>>> {
    let bloch = design.bloch_vectors()?;
    let mut taken = vec![false; bloch.len()];
    let mut pairs = Vec::new();
    for i in 0..bloch.len() {
        if taken[i] {
            continue;
        }
        let target = bloch[i].map(|c| -c);
        let best = (0..bloch.len())
            .filter(|&j| j != i && !taken[j])
            .map(|j| {
                let dist = (0..3).map(|c| (bloch[j][c] - target[c]).powi(2)).sum::<f64>().sqrt();
                (j, dist)
            })
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((j, dist)) if dist <= ANTIPODE_TOL => {
                taken[i] = true;
                taken[j] = true;
                pairs.push(vec![i, j]);
            }
            _ => {
                return Err(Error::Grouping {
                    group: pairs.len(),
                    reason: format!("vector {i} has no antipodal partner"),
                })
            }
        }
    }
    Ok(pairs)
}
