//! The Gaussian recruitment-chance curve and its tail arithmetic.
//!
//! A candidate at skill `mu` applying to a post requiring skill `r` is
//! recruited with probability `p_max * exp(-(r - mu)^2 / (2 sigma^2))`: the
//! best chance sits at an exact match and decays with the skill gap. The
//! curve is a probability evaluated per post, not a density — its peak is
//! `p_max`, not a normalizing constant. The mass functions quantify how
//! little chance lives in the far tails, e.g. widening the application
//! range from 2 to 4 sigma buys only ~4.5% more of the total mass.

use crate::types::{MatchModel, SkillLevel};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatchModelError {
    #[error("interval half-width must be a nonnegative number, got {0}")]
    NegativeWidth(f64),
    #[error("band is inverted: k_low {low} exceeds k_high {high}")]
    InvertedBand { low: f64, high: f64 },
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
}

/// Recruitment chance for a candidate with `candidate_skill` at a post
/// requiring `required_skill`. In [0, peak], with the peak hit exactly when
/// the two skills coincide.
pub fn recruitment_probability(
    candidate_skill: SkillLevel,
    required_skill: SkillLevel,
    model: &MatchModel,
) -> f64 {
    let gap = required_skill.value() - candidate_skill.value();
    model.peak_probability * (-(gap * gap) / (2.0 * model.sigma * model.sigma)).exp()
}

/// Fraction of the total Gaussian mass within `k` standard deviations of the
/// center: `erf(k / sqrt(2))`. Strictly increasing in `k`, approaching 1.
pub fn gaussian_mass_within(k: f64) -> Result<f64, MatchModelError> {
    if !(k >= 0.0) {
        return Err(MatchModelError::NegativeWidth(k));
    }
    Ok(erf(k / std::f64::consts::SQRT_2))
}

/// Mass gained by widening the coverage band from `k_low` to `k_high`
/// standard deviations.
pub fn marginal_mass(k_low: f64, k_high: f64) -> Result<f64, MatchModelError> {
    let low = gaussian_mass_within(k_low)?;
    let high = gaussian_mass_within(k_high)?;
    if k_low > k_high {
        return Err(MatchModelError::InvertedBand {
            low: k_low,
            high: k_high,
        });
    }
    Ok((high - low).max(0.0))
}

/// Chance of at least one success among independent applications:
/// `1 - prod(1 - p_i)`.
pub fn combined_probability(probabilities: &[f64]) -> Result<f64, MatchModelError> {
    let mut miss = 1.0;
    for &p in probabilities {
        if !(0.0..=1.0).contains(&p) {
            return Err(MatchModelError::ProbabilityOutOfRange(p));
        }
        miss *= 1.0 - p;
    }
    Ok(1.0 - miss)
}

// ---------------------------------------------------------------------------
// Error function.
//
// Two-piece evaluation: the all-positive-term Maclaurin expansion
//
//     erf(x) = (2/sqrt(pi)) e^{-x^2} sum_{n>=0} (2x^2)^n x / (2n+1)!!
//
// for x < 3 (no cancellation, so the sum is accurate to machine precision),
// and the Laplace continued fraction for erfc
//
//     sqrt(pi) e^{x^2} erfc(x) = 2 / (2x + 2/(2x + 4/(2x + 6/(2x + ...))))
//
// evaluated with the modified Lentz algorithm for x >= 3. Absolute error is
// below 1e-15 everywhere (checked against a quadrature oracle in the tests),
// well inside the 1e-10 budget the tail arithmetic relies on.
// ---------------------------------------------------------------------------

fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x >= 6.5 {
        // erfc(6.5) < 4e-20, far below the precision contract.
        return 1.0;
    }
    if x < 3.0 {
        erf_series(x)
    } else {
        1.0 - erfc_continued_fraction(x)
    }
}

fn erf_series(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    for n in 1..200u32 {
        term *= two_x2 / (2.0 * f64::from(n) + 1.0);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    std::f64::consts::FRAC_2_SQRT_PI * (-x * x).exp() * sum
}

fn erfc_continued_fraction(x: f64) -> f64 {
    // Modified Lentz on F = 1/(2x + 2/(2x + 4/(2x + 6/(2x + ...)))),
    // partial numerators 1, 2, 4, 6, ... and constant denominators 2x.
    let tiny = 1e-300;
    let b = 2.0 * x;
    let mut f = tiny;
    let mut c = f;
    let mut d = 0.0;
    for j in 1..200u32 {
        let a = if j == 1 { 1.0 } else { 2.0 * f64::from(j - 1) };
        d = b + a * d;
        if d == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    std::f64::consts::FRAC_2_SQRT_PI * (-x * x).exp() * f
}
