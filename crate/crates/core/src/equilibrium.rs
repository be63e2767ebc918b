//! Linear supply and demand curves and their intersection.
//!
//! The free-application market has a supply line lying flat on the quantity
//! axis (price zero everywhere); charging submissions tilts it upward, which
//! moves the equilibrium to a positive price and a smaller quantity. This
//! module solves and compares those equilibria.

use serde::{Deserialize, Serialize};

/// A price line `p = intercept + slope * q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearCurve {
    /// Price at quantity zero.
    pub intercept: f64,
    /// Money per unit quantity; positive tilts upward.
    pub slope: f64,
}

impl LinearCurve {
    pub fn new(intercept: f64, slope: f64) -> Self {
        LinearCurve { intercept, slope }
    }

    /// The zero-price supply line of a free market.
    pub fn flat_free() -> Self {
        LinearCurve {
            intercept: 0.0,
            slope: 0.0,
        }
    }

    pub fn price_at(&self, quantity: f64) -> f64 {
        self.intercept + self.slope * quantity
    }
}

/// A market clearing point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub price: f64,
    pub quantity: f64,
}

/// How one equilibrium moved relative to another (strict comparisons).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumShift {
    pub price_rose: bool,
    pub quantity_fell: bool,
    pub price_delta: f64,
    pub quantity_delta: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EquilibriumError {
    #[error("curve coefficients must be finite")]
    NonFiniteCurve,
    #[error("curves are parallel (both have slope {0}); no unique intersection")]
    ParallelCurves(f64),
    #[error("demand must slope downward, got slope {0}")]
    DemandNotDownward(f64),
    #[error("supply must not slope downward, got slope {0}")]
    SupplyDownward(f64),
    #[error("curves intersect at negative quantity {0}; the market is infeasible")]
    InfeasibleMarket(f64),
}

/// Intersects a downward demand line with an upward (or flat) supply line.
///
/// Errors on parallel slopes and on intersections at negative quantity;
/// clamping the latter would fabricate an equilibrium the model does not
/// have.
pub fn solve_equilibrium(
    demand: &LinearCurve,
    supply: &LinearCurve,
) -> Result<Equilibrium, EquilibriumError> {
    for v in [demand.intercept, demand.slope, supply.intercept, supply.slope] {
        if !v.is_finite() {
            return Err(EquilibriumError::NonFiniteCurve);
        }
    }
    if demand.slope == supply.slope {
        return Err(EquilibriumError::ParallelCurves(demand.slope));
    }
    if demand.slope >= 0.0 {
        return Err(EquilibriumError::DemandNotDownward(demand.slope));
    }
    if supply.slope < 0.0 {
        return Err(EquilibriumError::SupplyDownward(supply.slope));
    }
    let quantity = (demand.intercept - supply.intercept) / (supply.slope - demand.slope);
    if quantity < 0.0 {
        return Err(EquilibriumError::InfeasibleMarket(quantity));
    }
    Ok(Equilibrium {
        price: supply.price_at(quantity),
        quantity,
    })
}

/// Strictly compares two equilibria; deltas are `after - before`.
pub fn compare_equilibria(before: &Equilibrium, after: &Equilibrium) -> EquilibriumShift {
    EquilibriumShift {
        price_rose: after.price > before.price,
        quantity_fell: after.quantity < before.quantity,
        price_delta: after.price - before.price,
        quantity_delta: after.quantity - before.quantity,
    }
}
