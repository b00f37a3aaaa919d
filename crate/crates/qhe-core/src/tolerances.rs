//! Central numeric tolerances.
//!
//! Every validation threshold used across the library lives here so tests
//! and callers share one source of truth. Defaults are chosen for dimension
//! ≤ 6 double-precision workloads.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericTolerances {
    /// Max-norm residual allowed for ‖M − M†‖ when a Hermitian matrix is required.
    pub hermiticity: f64,
    /// Allowed deviation |Tr ρ − 1| for density-matrix validation.
    pub unit_trace: f64,
    /// Density-matrix eigenvalues may dip to −positivity before validation fails.
    pub positivity: f64,
    /// Positivity violation beyond this aborts an integration as inaccurate.
    pub positivity_abort: f64,
    /// Bohr frequencies closer than this are merged into one channel.
    pub frequency_grouping: f64,
    /// Eigenoperators with max-norm below this are dropped as null.
    pub null_operator: f64,
    /// Channels with downward rate below this are dropped (underflow guard).
    pub rate_floor: f64,
}

impl NumericTolerances {
    pub const fn default_const() -> Self {
        NumericTolerances {
            hermiticity: 1e-12,
            unit_trace: 1e-9,
            positivity: 1e-8,
            positivity_abort: 1e-6,
            frequency_grouping: 1e-9,
            null_operator: 1e-12,
            rate_floor: 1e-300,
        }
    }
}

impl Default for NumericTolerances {
    fn default() -> Self {
        Self::default_const()
    }
}

/// Library-wide default tolerances.
pub const TOLERANCES: NumericTolerances = NumericTolerances::default_const();
