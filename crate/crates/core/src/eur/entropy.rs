use super::check_alpha;
use crate::error::Result;

/// Rényi entropy `ln(Σ p_i^α)/(1-α)`, Shannon at `α = 1`, `-ln max p` at `α = ∞`.
pub fn renyi_entropy(probs: &[f64], alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let h = if alpha.is_infinite() {
        -probs.iter().copied().fold(0.0, f64::max).ln()
    } else if alpha == 1.0 {
        -probs.iter().filter(|&&p| p > 0.0).map(|&p| p * p.ln()).sum::<f64>()
    } else {
        let s: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| p.powf(alpha)).sum();
        s.ln() / (1.0 - alpha)
    };
    // -0.0 reads badly in output.
    Ok(h + 0.0)
}

/// `I_a(P) = Σ p_i^a`.
pub fn index_coincidence(probs: &[f64], a: u32) -> f64 {
    probs.iter().map(|p| p.powi(a as i32)).sum()
}
