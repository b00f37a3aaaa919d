//! Simulation library for a family of quantum absorption heat engines in
//! which a qutrit working substance charges a two-level battery.
//!
//! Four engine variants are covered, the cross product of two stroke
//! schedules (sequential vs. simultaneous bath contact) and two bath coupling
//! schemes (out-and-out: baths drive every qutrit transition; fragmented:
//! the hot bath drives only |0⟩↔|2⟩ and the cold bath only |0⟩↔|1⟩).
//!
//! Internal unit convention: δ = ħ = k_B = 1, where δ is the qutrit level
//! spacing unit. Energies and temperatures are in units of δ, times in ħ/δ.
//! Any unit conversion happens at the caller's boundary, never inside the
//! library.
//!
//! Module map:
//! - [`quantum`]: dense complex operators, density matrices, Gibbs states,
//!   tensor/partial-trace primitives.
//! - [`dissipation`]: eigenoperator decomposition and GKSL channel
//!   construction for Ohmic baths, J(ω) = κω.
//! - [`dynamics`]: fixed-step RK4 integration of the GKSL equation with a
//!   per-bath heat ledger.
//! - [`engines`]: the four engine cycles and their figures of merit
//!   (battery work W_B, percentage charge gained, efficiency).
//! - [`optimize`]: deterministic grid + Nelder-Mead maximization of W_B
//!   under a bath temperature cap, sweeps, and engine comparison.
//! - [`reference`]: hand-derived eigensystems and jump operators for the
//!   composite Hamiltonians, kept as verification references.

// Validation guards are written `!(x > 0.0)` on purpose: the negation also
// rejects NaN, which the suggested `x <= 0.0` would silently admit.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dissipation;
pub mod dynamics;
pub mod engines;
pub mod error;
pub mod optimize;
pub mod quantum;
pub mod reference;
pub mod tolerances;

pub use dissipation::{BathLabel, BathSpec, DissipationChannel};
pub use dynamics::{EvolutionConfig, HeatLedger};
pub use engines::{CycleMetrics, EngineKind, EngineOutput, EngineParams};
pub use error::{QheError, Result};
pub use optimize::{OptResult, SearchBudget, SearchSpace};
pub use quantum::{DensityMatrix, Operator, SystemSpec};
pub use tolerances::NumericTolerances;
