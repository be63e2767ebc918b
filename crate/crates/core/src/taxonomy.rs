//! Two-by-two classification of free competitions by what they have: a
//! market (sellers discoverable) and a price (strictly positive), plus a
//! scale-free dispersion diagnostic for offered prices.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The four market/price combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quadrant {
    /// Market and price both present — groceries.
    I,
    /// Market present, price absent — free-of-charge job applications.
    II,
    /// Neither present — free newspapers.
    III,
    /// Price present, market absent — realtor commissions.
    IV,
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Quadrant::I => "I",
            Quadrant::II => "II",
            Quadrant::III => "III",
            Quadrant::IV => "IV",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantLabel {
    pub quadrant: Quadrant,
    pub market_present: bool,
    pub price_present: bool,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TaxonomyError {
    #[error("price {0} is not positive; dispersion is undefined")]
    NonPositivePrice(f64),
}

/// Classifies a competition. A price of zero (or below) counts as the
/// absence of price; market presence is an input flag, not inferred.
pub fn classify_market(market_present: bool, price: f64) -> QuadrantLabel {
    let price_present = price > 0.0;
    let quadrant = match (market_present, price_present) {
        (true, true) => Quadrant::I,
        (true, false) => Quadrant::II,
        (false, false) => Quadrant::III,
        (false, true) => Quadrant::IV,
    };
    QuadrantLabel {
        quadrant,
        market_present,
        price_present,
    }
}

/// Coefficient of variation (population std / mean) of offered prices:
/// scale-free, so percentage commissions and dollar prices compare fairly.
/// Zero for empty and single-element lists.
pub fn price_dispersion(prices: &[f64]) -> Result<f64, TaxonomyError> {
    for &p in prices {
        if !(p > 0.0) || !p.is_finite() {
            return Err(TaxonomyError::NonPositivePrice(p));
        }
    }
    if prices.len() < 2 {
        return Ok(0.0);
    }
    let n = prices.len() as f64;
    let mean = prices.iter().sum::<f64>() / n;
    let variance = prices.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / n;
    Ok(variance.sqrt() / mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn the_four_reference_cases() {
        // Groceries; free job applications; free newspapers; realtor
        // commissions at 2.5% of the property price.
        assert_eq!(classify_market(true, 2.5).quadrant, Quadrant::I);
        assert_eq!(classify_market(true, 0.0).quadrant, Quadrant::II);
        assert_eq!(classify_market(false, 0.0).quadrant, Quadrant::III);
        assert_eq!(classify_market(false, 2.5).quadrant, Quadrant::IV);
    }

    #[test]
    fn negative_price_counts_as_absent() {
        assert_eq!(classify_market(true, -3.0).quadrant, Quadrant::II);
        assert_eq!(classify_market(false, -3.0).quadrant, Quadrant::III);
    }

    #[test]
    fn dispersion_reference_values() {
        assert_eq!(price_dispersion(&[5.0, 5.0, 5.0]).unwrap(), 0.0);
        // Hand-computed: population std 0.08165 over mean 2.5.
        let tight = price_dispersion(&[2.4, 2.5, 2.6]).unwrap();
        assert!((tight - 0.032_659_863_237_109_04).abs() < 1e-12, "{tight}");
        // Hand-computed: std sqrt(32/3) over mean 5.
        let wide = price_dispersion(&[1.0, 5.0, 9.0]).unwrap();
        assert!((wide - 0.653_197_264_742_180_8).abs() < 1e-12, "{wide}");
    }

    #[test]
    fn dispersion_degenerate_lists() {
        assert_eq!(price_dispersion(&[]).unwrap(), 0.0);
        assert_eq!(price_dispersion(&[3.7]).unwrap(), 0.0);
        assert!(price_dispersion(&[1.0, 0.0]).is_err());
        assert!(price_dispersion(&[1.0, -2.0]).is_err());
        assert!(price_dispersion(&[f64::NAN]).is_err());
    }

    proptest! {
        #[test]
        fn quadrant_ii_iff_market_and_no_price(market in any::<bool>(), price in -10.0..10.0f64) {
            let label = classify_market(market, price);
            prop_assert_eq!(label.quadrant == Quadrant::II, market && price <= 0.0);
        }

        #[test]
        fn dispersion_is_scale_and_permutation_invariant(
            mut prices in proptest::collection::vec(0.01..100.0f64, 2..20),
            k in 0.01..100.0f64
        ) {
            let base = price_dispersion(&prices).unwrap();
            let scaled: Vec<f64> = prices.iter().map(|p| p * k).collect();
            prop_assert!((price_dispersion(&scaled).unwrap() - base).abs() < 1e-9);
            prices.reverse();
            prop_assert!((price_dispersion(&prices).unwrap() - base).abs() < 1e-12);
        }
    }
}
