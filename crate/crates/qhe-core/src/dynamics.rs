//! GKSL master-equation integration.
//!
//!   dρ/dt = −i[H, ρ] + Σ_ch γ↓(AρA† − ½{A†A, ρ}) + γ↑(A†ρA − ½{AA†, ρ})
//!
//! The generator is linear, so it is assembled once as a d²×d² matrix acting
//! on vec(ρ) (column-major); each RK4 stage is then a single matvec. Heat
//! currents J_X = tr(H·D_X(ρ)) are evaluated the same way, against
//! precomputed per-bath observables, and accumulated with the trapezoid rule.
//!
//! Every step hermitizes and trace-renormalizes the state (recording the
//! drift); positivity is spot-checked by exact diagonalization and the run
//! aborts if an eigenvalue falls below −1e−6.

use nalgebra::{DMatrix, DVector};

use crate::dissipation::{BathLabel, DissipationChannel};
use crate::error::{QheError, Result};
use crate::quantum::{DensityMatrix, Operator, C64};
use crate::tolerances::{NumericTolerances, TOLERANCES};

/// Steady-state detection threshold used when none is specified.
pub const DEFAULT_STEADY_TOL: f64 = 1e-10;

/// Step size, horizon, and diagnostics for one integration run.
#[derive(Clone, Debug)]
pub struct EvolutionConfig {
    /// RK4 step (slightly adjusted so the horizon is an integer number of steps).
    pub dt: f64,
    /// Integration horizon.
    pub t_max: f64,
    /// Early-exit threshold on max|dρ/dt| entries; used by [`evolve_to_steady`] only.
    pub steady_tol: f64,
    /// Keep per-step current samples in the ledger.
    pub record_currents: bool,
    /// Steps between exact positivity checks.
    pub positivity_stride: usize,
}

impl EvolutionConfig {
    pub fn new(dt: f64, t_max: f64) -> Self {
        EvolutionConfig {
            dt,
            t_max,
            steady_tol: DEFAULT_STEADY_TOL,
            record_currents: false,
            positivity_stride: 100,
        }
    }

    pub fn recording(mut self) -> Self {
        self.record_currents = true;
        self
    }

    pub fn with_steady_tol(mut self, tol: f64) -> Self {
        self.steady_tol = tol;
        self
    }
}

/// Step size that resolves both the fastest Bohr frequency and the work
/// coupling: min(0.01, 0.1/ω_sb, 0.2/A). Zero arguments drop their term.
pub fn default_dt(a: f64, omega_sb: f64) -> f64 {
    let mut dt = 0.01_f64;
    if a > 0.0 {
        dt = dt.min(0.2 / a);
    }
    if omega_sb > 0.0 {
        dt = dt.min(0.1 / omega_sb);
    }
    dt
}

/// Step size for strokes that never develop coherences: when the initial
/// state is diagonal in the Hamiltonian eigenbasis and every jump operator is
/// an eigenoperator, the populations close on themselves and no Bohr phase
/// needs resolving, so the step is limited by the fastest dissipative rate
/// alone: dt = min(0.05, 0.01/γ_max) with γ_max = max over channels of
/// (γ↓ + γ↑)·‖A‖².
pub fn incoherent_stroke_dt(channels: &[DissipationChannel]) -> f64 {
    let gamma_max = channels
        .iter()
        .map(|ch| {
            let reach = ch.jump.max_norm();
            (ch.rate_down.abs() + ch.rate_up.abs()) * reach * reach
        })
        .fold(0.0_f64, f64::max);
    if gamma_max > 0.0 {
        (0.01 / gamma_max).clamp(1e-6, 0.05)
    } else {
        0.05
    }
}

/// Instantaneous heat currents out of each bath at one time.
#[derive(Clone, Copy, Debug)]
pub struct CurrentSample {
    pub time: f64,
    pub hot: f64,
    pub cold: f64,
}

/// Integrated heat bookkeeping plus numerical diagnostics for one run.
///
/// `q_pos_*` accumulates only the step contributions where the bath injects
/// energy (trapezoid increments clamped at zero); `q_net_*` is the signed
/// total, so ΔE = q_net_hot + q_net_cold when no drive acts.
#[derive(Clone, Debug, Default)]
pub struct HeatLedger {
    pub q_pos_hot: f64,
    pub q_pos_cold: f64,
    pub q_net_hot: f64,
    pub q_net_cold: f64,
    pub elapsed: f64,
    pub steps: usize,
    pub converged: bool,
    pub max_trace_drift: f64,
    pub max_hermiticity_residual: f64,
    pub min_eigenvalue: f64,
    pub samples: Vec<CurrentSample>,
}

impl HeatLedger {
    pub fn empty() -> Self {
        HeatLedger {
            min_eigenvalue: 0.0,
            ..Default::default()
        }
    }

    /// Merges a subsequent stroke's ledger into this one.
    pub fn absorb(&mut self, other: &HeatLedger) {
        self.q_pos_hot += other.q_pos_hot;
        self.q_pos_cold += other.q_pos_cold;
        self.q_net_hot += other.q_net_hot;
        self.q_net_cold += other.q_net_cold;
        self.elapsed += other.elapsed;
        self.steps += other.steps;
        self.max_trace_drift = self.max_trace_drift.max(other.max_trace_drift);
        self.max_hermiticity_residual = self
            .max_hermiticity_residual
            .max(other.max_hermiticity_residual);
        self.min_eigenvalue = self.min_eigenvalue.min(other.min_eigenvalue);
    }
}

/// Right-hand side of the master equation for an arbitrary operator.
pub fn gksl_rhs(h: &Operator, rho: &Operator, channels: &[DissipationChannel]) -> Result<Operator> {
    if h.dim() != rho.dim() {
        return Err(QheError::DimensionMismatch {
            expected: h.dim(),
            got: rho.dim(),
        });
    }
    let i = C64::new(0.0, 1.0);
    let comm = (h.matrix() * rho.matrix() - rho.matrix() * h.matrix()) * (-i);
    let diss = crate::dissipation::dissipator_apply(rho, channels)?;
    Operator::from_matrix(comm + diss.into_matrix())
}

/// vec(ρ) in column-major order, matching nalgebra's storage.
fn vec_of(m: &DMatrix<C64>) -> DVector<C64> {
    DVector::from_column_slice(m.as_slice())
}

fn unvec(v: &DVector<C64>, dim: usize) -> DMatrix<C64> {
    DMatrix::from_column_slice(dim, dim, v.as_slice())
}

/// The assembled generator: L acting on vec(ρ), plus per-bath current probes.
struct VecGenerator {
    dim: usize,
    l: DMatrix<C64>,
    w_hot: DVector<C64>,
    w_cold: DVector<C64>,
}

impl VecGenerator {
    fn build(h: &Operator, channels: &[DissipationChannel]) -> Result<Self> {
        let res = h.hermiticity_residual();
        if res > TOLERANCES.hermiticity {
            return Err(QheError::NotHermitian {
                residual: res,
                tol: TOLERANCES.hermiticity,
            });
        }
        let dim = h.dim();
        let d2 = dim * dim;
        let mut l = DMatrix::<C64>::zeros(d2, d2);
        for col in 0..d2 {
            let (i, j) = (col % dim, col / dim);
            let mut unit = DMatrix::<C64>::zeros(dim, dim);
            unit[(i, j)] = C64::new(1.0, 0.0);
            let col_op = gksl_rhs(h, &Operator::from_matrix(unit)?, channels)?;
            l.set_column(col, &vec_of(col_op.matrix()));
        }
        Ok(VecGenerator {
            dim,
            l,
            w_hot: current_probe(h, channels, BathLabel::Hot),
            w_cold: current_probe(h, channels, BathLabel::Cold),
        })
    }

    /// tr(M_bath · ρ) as a plain dot product against vec(ρ).
    fn currents(&self, v: &DVector<C64>) -> (f64, f64) {
        (self.w_hot.dot(v).re, self.w_cold.dot(v).re)
    }
}

/// vec(M_Xᵀ) for M_X = Σ_{ch∈X} γ↓(A†HA − ½{A†A,H}) + γ↑(AHA† − ½{AA†,H}),
/// so tr(M_X ρ) = tr(H · D_X(ρ)).
fn current_probe(h: &Operator, channels: &[DissipationChannel], bath: BathLabel) -> DVector<C64> {
    let dim = h.dim();
    let hm = h.matrix();
    let half = C64::new(0.5, 0.0);
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for ch in channels.iter().filter(|c| c.bath == bath) {
        let a = ch.jump.matrix();
        let ad = a.adjoint();
        let ada = &ad * a;
        let aad = a * &ad;
        m += (&ad * hm * a - (&ada * hm + hm * &ada) * half) * C64::new(ch.rate_down, 0.0);
        m += (a * hm * &ad - (&aad * hm + hm * &aad) * half) * C64::new(ch.rate_up, 0.0);
    }
    vec_of(&m.transpose())
}

/// Projects onto the Hermitian part in place; returns the trace and the
/// max-norm of ρ − ρ† before the projection.
fn hermitize_and_trace(v: &mut DVector<C64>, dim: usize) -> (f64, f64) {
    let mut tr = 0.0;
    let mut residual = 0.0_f64;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let a = v[i + j * dim];
            let b = v[j + i * dim];
            residual = residual.max((a - b.conj()).norm());
            let m = C64::new(0.5 * (a.re + b.re), 0.5 * (a.im - b.im));
            v[i + j * dim] = m;
            v[j + i * dim] = m.conj();
        }
        let d = v[i + i * dim];
        residual = residual.max(d.im.abs());
        v[i + i * dim] = C64::new(d.re, 0.0);
        tr += d.re;
    }
    (tr, residual)
}

fn min_eigenvalue(v: &DVector<C64>, dim: usize) -> Result<f64> {
    let op = Operator::from_matrix(unvec(v, dim))?;
    let eigs = op.hermitian_eigenvalues()?;
    Ok(eigs.iter().copied().fold(f64::INFINITY, f64::min))
}

fn run(
    h: &Operator,
    initial: &DensityMatrix,
    channels: &[DissipationChannel],
    config: &EvolutionConfig,
    stop_at_steady: bool,
) -> Result<(DensityMatrix, HeatLedger)> {
    if !(config.dt > 0.0) || !config.dt.is_finite() {
        return Err(QheError::Domain(format!(
            "integration step must be positive, got {}",
            config.dt
        )));
    }
    if !(config.t_max >= 0.0) || !config.t_max.is_finite() {
        return Err(QheError::Domain(format!(
            "integration horizon must be non-negative, got {}",
            config.t_max
        )));
    }
    if initial.dim() != h.dim() {
        return Err(QheError::DimensionMismatch {
            expected: h.dim(),
            got: initial.dim(),
        });
    }
    let generator = VecGenerator::build(h, channels)?;
    let dim = generator.dim;

    let mut ledger = HeatLedger::empty();
    if config.t_max == 0.0 {
        ledger.converged = stop_at_steady;
        return Ok((initial.clone(), ledger));
    }

    // Uniform steps covering the horizon exactly; rounding keeps dt-halving
    // runs commensurate.
    let ratio = config.t_max / config.dt;
    let n_steps = if (ratio - ratio.round()).abs() < 1e-9 && ratio.round() >= 1.0 {
        ratio.round() as usize
    } else {
        ratio.ceil() as usize
    };
    let dt = config.t_max / n_steps as f64;

    let mut v = vec_of(initial.matrix());
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut k1 = DVector::<C64>::zeros(dim * dim);
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();

    let (mut jh_prev, mut jc_prev) = generator.currents(&v);
    let mut steps_taken = 0usize;
    for step in 0..n_steps {
        k1.gemv(one, &generator.l, &v, zero);

        if stop_at_steady {
            let residual = k1
                .iter()
                .map(|c| c.norm_sqr())
                .fold(0.0_f64, f64::max)
                .sqrt();
            if residual <= config.steady_tol {
                ledger.converged = true;
                break;
            }
        }
        if config.record_currents {
            ledger.samples.push(CurrentSample {
                time: step as f64 * dt,
                hot: jh_prev,
                cold: jc_prev,
            });
        }

        let half_dt = C64::new(0.5 * dt, 0.0);
        let full_dt = C64::new(dt, 0.0);
        tmp.copy_from(&v);
        tmp.axpy(half_dt, &k1, one);
        k2.gemv(one, &generator.l, &tmp, zero);
        tmp.copy_from(&v);
        tmp.axpy(half_dt, &k2, one);
        k3.gemv(one, &generator.l, &tmp, zero);
        tmp.copy_from(&v);
        tmp.axpy(full_dt, &k3, one);
        k4.gemv(one, &generator.l, &tmp, zero);

        let w = C64::new(dt / 6.0, 0.0);
        let w2 = C64::new(dt / 3.0, 0.0);
        v.axpy(w, &k1, one);
        v.axpy(w2, &k2, one);
        v.axpy(w2, &k3, one);
        v.axpy(w, &k4, one);

        let (tr, herm_residual) = hermitize_and_trace(&mut v, dim);
        if !tr.is_finite() {
            return Err(QheError::IntegrationAccuracy(format!(
                "state diverged at t = {:.6e} (non-finite trace)",
                (step + 1) as f64 * dt
            )));
        }
        let drift = (tr - 1.0).abs();
        ledger.max_trace_drift = ledger.max_trace_drift.max(drift);
        ledger.max_hermiticity_residual = ledger.max_hermiticity_residual.max(herm_residual);
        v.scale_mut(1.0 / tr);

        let (jh, jc) = generator.currents(&v);
        let dqh = 0.5 * dt * (jh_prev + jh);
        let dqc = 0.5 * dt * (jc_prev + jc);
        ledger.q_net_hot += dqh;
        ledger.q_net_cold += dqc;
        ledger.q_pos_hot += dqh.max(0.0);
        ledger.q_pos_cold += dqc.max(0.0);
        jh_prev = jh;
        jc_prev = jc;

        steps_taken = step + 1;
        if steps_taken.is_multiple_of(config.positivity_stride) || steps_taken == n_steps {
            let min_eig = min_eigenvalue(&v, dim)?;
            ledger.min_eigenvalue = ledger.min_eigenvalue.min(min_eig);
            if min_eig < -TOLERANCES.positivity_abort {
                return Err(QheError::IntegrationAccuracy(format!(
                    "positivity violated at t = {:.6e}: min eigenvalue {:.3e}",
                    steps_taken as f64 * dt,
                    min_eig
                )));
            }
        }
    }

    ledger.steps = steps_taken;
    ledger.elapsed = steps_taken as f64 * dt;
    if config.record_currents {
        let (jh, jc) = generator.currents(&v);
        ledger.samples.push(CurrentSample {
            time: ledger.elapsed,
            hot: jh,
            cold: jc,
        });
    }
    // Early exits may land between positivity strides.
    let min_eig = min_eigenvalue(&v, dim)?;
    ledger.min_eigenvalue = ledger.min_eigenvalue.min(min_eig);
    if min_eig < -TOLERANCES.positivity_abort {
        return Err(QheError::IntegrationAccuracy(format!(
            "positivity violated at end of run: min eigenvalue {min_eig:.3e}"
        )));
    }

    let relaxed = NumericTolerances {
        positivity: TOLERANCES.positivity_abort,
        ..TOLERANCES
    };
    let state = DensityMatrix::with_tolerances(Operator::from_matrix(unvec(&v, dim))?, &relaxed)?;
    Ok((state, ledger))
}

/// Integrates the full horizon `t_max`, never exiting early.
pub fn integrate(
    h: &Operator,
    initial: &DensityMatrix,
    channels: &[DissipationChannel],
    config: &EvolutionConfig,
) -> Result<(DensityMatrix, HeatLedger)> {
    run(h, initial, channels, config, false)
}

/// Integrates until max|dρ/dt| ≤ `steady_tol` or the horizon runs out; the
/// ledger's `converged` flag records which happened.
pub fn evolve_to_steady(
    h: &Operator,
    initial: &DensityMatrix,
    channels: &[DissipationChannel],
    config: &EvolutionConfig,
) -> Result<(DensityMatrix, HeatLedger)> {
    run(h, initial, channels, config, true)
}
