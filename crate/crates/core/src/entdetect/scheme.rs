use crate::designs::DsmSet;
use crate::error::{Error, Result};
use crate::eur::design_ic_bound;
use crate::qcore::{CMatrix, Povm};

use super::criteria::modified_ic_bound;

/// One POVM performed on a subsystem, chosen with weight `w`.
#[derive(Clone, Debug)]
pub struct LocalMeasurement {
    povm: Povm,
    weight: f64,
    strength: u32,
    effect_count: usize,
}

impl LocalMeasurement {
    /// `effect_count` is the `K` of the traceless shift `M - 1/K`.
    pub fn new(povm: Povm, weight: f64, strength: u32, effect_count: usize) -> Result<Self> {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::Argument(format!("weights must be positive (got {weight})")));
        }
        if effect_count == 0 {
            return Err(Error::Argument("effect count must be positive".into()));
        }
        Ok(Self {
            povm,
            weight,
            strength,
            effect_count,
        })
    }

    /// Unit weight and `K = L`, as for effects `(d/L)|ψ⟩⟨ψ|`.
    pub fn from_design_povm(povm: Povm, strength: u32) -> Self {
        let k = povm.len();
        Self {
            povm,
            weight: 1.0,
            strength,
            effect_count: k,
        }
    }

    pub fn povm(&self) -> &Povm {
        &self.povm
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn strength(&self) -> u32 {
        self.strength
    }

    pub fn effect_count(&self) -> usize {
        self.effect_count
    }

    pub fn dim(&self) -> usize {
        self.povm.dim()
    }

    pub fn outcomes(&self) -> usize {
        self.povm.len()
    }

    /// Effects with `1/K` times the identity removed.
    pub fn shifted_effects(&self) -> Vec<CMatrix> {
        let d = self.dim();
        let shift = CMatrix::identity(d, d).unscale(self.effect_count as f64);
        self.povm.effects().iter().map(|m| m - &shift).collect()
    }

    pub fn ic_bound(&self, a: u32) -> f64 {
        design_ic_bound(self.outcomes(), self.dim(), a)
    }

    pub fn modified_ic_bound(&self, a: u32) -> f64 {
        modified_ic_bound(self.outcomes(), self.dim(), a, self.effect_count)
    }
}

/// Local measurements on `N` subsystems, `Θ` settings each, all with `L` outcomes.
#[derive(Clone, Debug)]
pub struct LocalScheme {
    parties: Vec<Vec<LocalMeasurement>>,
    settings: usize,
    outcomes: usize,
}

impl LocalScheme {
    pub fn new(parties: Vec<Vec<LocalMeasurement>>) -> Result<Self> {
        let first = parties
            .first()
            .and_then(|p| p.first())
            .ok_or_else(|| Error::Argument("scheme needs at least one measurement".into()))?;
        let settings = parties[0].len();
        let outcomes = first.outcomes();
        for (n, party) in parties.iter().enumerate() {
            if party.len() != settings {
                return Err(Error::Argument(format!(
                    "subsystem {n} has {} settings, expected {settings}",
                    party.len()
                )));
            }
            let d = party[0].dim();
            for (theta, m) in party.iter().enumerate() {
                if m.outcomes() != outcomes {
                    return Err(Error::Argument(format!(
                        "subsystem {n} setting {theta} has {} outcomes, expected {outcomes}",
                        m.outcomes()
                    )));
                }
                if m.dim() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: m.dim(),
                    });
                }
            }
        }
        Ok(Self {
            parties,
            settings,
            outcomes,
        })
    }

    /// The same DSM on each of `parties` subsystems with unit weights.
    pub fn from_dsm(dsm: &DsmSet, parties: usize) -> Result<Self> {
        let local: Vec<LocalMeasurement> = dsm
            .povms()
            .iter()
            .map(|p| LocalMeasurement::from_design_povm(p.clone(), dsm.strength()))
            .collect();
        Self::new(vec![local; parties])
    }

    /// Rescales each subsystem's weights to sum to one.
    pub fn with_normalized_weights(mut self) -> Self {
        for party in &mut self.parties {
            let total: f64 = party.iter().map(|m| m.weight).sum();
            for m in party.iter_mut() {
                m.weight /= total;
            }
        }
        self
    }

    pub fn parties(&self) -> &[Vec<LocalMeasurement>] {
        &self.parties
    }

    pub fn party_count(&self) -> usize {
        self.parties.len()
    }

    pub fn settings(&self) -> usize {
        self.settings
    }

    pub fn outcomes(&self) -> usize {
        self.outcomes
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parties.iter().map(|p| p[0].dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().product()
    }
}

/// Hölder exponents `a_n >= 2` with `Σ 1/a_n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() || exps.iter().any(|&a| a < 2) {
            return Err(Error::Argument(format!("exponents must all be >= 2 (got {exps:?})")));
        }
        let s: f64 = exps.iter().map(|&a| 1.0 / a as f64).sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::Argument(format!(
                "exponents {exps:?} have Σ 1/a_n = {s}, need 1"
            )));
        }
        Ok(Self(exps))
    }

    /// `a_n = N` on every one of `N` subsystems.
    pub fn uniform(parties: usize) -> Result<Self> {
        Self::new(vec![parties as u32; parties])
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|a| a % 2 == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
