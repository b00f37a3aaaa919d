//! The four qutrit-battery engine cycles and their per-cycle metrics.
//!
//! Working substance: qutrit with levels (−A/2, 0, A/2). Battery: qubit with
//! gap A/2, always starting in its ground state. Engines differ in *when*
//! baths act (sequential strokes vs simultaneous charging) and in *how* they
//! couple (out-and-out: every level pair; fragmented: one selected pair).
//!
//! Sequential cycles: hot thermalization → unitary work stroke → cold
//! thermalization. The work stroke evolves under an excitation-conserving
//! coupling K for a phase λ = ω_sb·t₁, so only λ matters. Out-and-out
//! thermalization is exact (Gibbs endpoint, the unique fixed point of the
//! all-pairs bath); fragmented strokes integrate the single-channel GKSL
//! equation for 500 time units with steady-state early exit.
//!
//! Simultaneous cycles: both baths and the work coupling act together on the
//! joint space for a time t₂ (stroke 1), then the qutrit re-thermalizes to
//! the cold state (stroke 2).
//!
//! Metric conventions: W_B = battery energy gain; PCG = 200·W_B/A;
//! Q_T = (hot intake + stroke-1 cold intake) − Q₂·θ(−Q₂) with θ(0) = 0, so
//! heat *absorbed* during the cold stroke counts as input; η = W_B/Q_T.

use crate::dissipation::{build_channels, BathLabel, BathSpec};
use crate::dynamics::{
    default_dt, evolve_to_steady, incoherent_stroke_dt, integrate, EvolutionConfig, HeatLedger,
    DEFAULT_STEADY_TOL,
};
use crate::error::{QheError, Result};
use crate::quantum::{
    battery_hamiltonian, expectation, kron, partial_trace, qutrit_hamiltonian, thermal_state,
    trace_distance, DensityMatrix, Operator, C64,
};

/// Bath coupling strength used throughout unless overridden.
pub const DEFAULT_KAPPA: f64 = 1e-3;

/// Duration of each fragmented thermalization stroke, with early exit at the
/// steady state.
pub const FRAG_STROKE_TIME: f64 = 500.0;

/// The four engine protocols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineKind {
    SeqOut,
    SeqFrag,
    SimOut,
    SimFrag,
}

impl EngineKind {
    pub const ALL: [EngineKind; 4] = [
        EngineKind::SeqOut,
        EngineKind::SeqFrag,
        EngineKind::SimOut,
        EngineKind::SimFrag,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EngineKind::SeqOut => "seq-out",
            EngineKind::SeqFrag => "seq-frag",
            EngineKind::SimOut => "sim-out",
            EngineKind::SimFrag => "sim-frag",
        }
    }

    pub fn is_sequential(self) -> bool {
        matches!(self, EngineKind::SeqOut | EngineKind::SeqFrag)
    }
}

impl std::str::FromStr for EngineKind {
    type Err = QheError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "seq-out" | "seq_out" => Ok(EngineKind::SeqOut),
            "seq-frag" | "seq_frag" => Ok(EngineKind::SeqFrag),
            "sim-out" | "sim_out" => Ok(EngineKind::SimOut),
            "sim-frag" | "sim_frag" => Ok(EngineKind::SimFrag),
            other => Err(QheError::Domain(format!(
                "unknown engine kind '{other}' (expected seq-out, seq-frag, sim-out, sim-frag)"
            ))),
        }
    }
}

impl std::fmt::Display for EngineKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full parameter set for one engine run. Fields irrelevant to a kind
/// (e.g. `t2` for sequential engines) are ignored by it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EngineParams {
    pub kind: EngineKind,
    /// Qutrit level spacing 2·(A/2); battery gap A/2.
    pub a: f64,
    pub t_h: f64,
    pub t_c: f64,
    /// Work-stroke phase ω_sb·t₁ (sequential engines).
    pub lambda: f64,
    /// Work-coupling strength (simultaneous engines).
    pub omega_sb: f64,
    /// Joint charging time (simultaneous engines).
    pub t2: f64,
    pub kappa: f64,
    /// Cycles to run (SeqFrag only; headline metrics come from cycle 2).
    pub n_cycles: usize,
    /// Steady-state detection threshold for relaxation strokes.
    pub steady_tol: f64,
}

impl EngineParams {
    pub fn seq_out(a: f64, t_h: f64, t_c: f64, lambda: f64) -> Self {
        EngineParams {
            kind: EngineKind::SeqOut,
            a,
            t_h,
            t_c,
            lambda,
            omega_sb: 0.0,
            t2: 0.0,
            kappa: DEFAULT_KAPPA,
            n_cycles: 1,
            steady_tol: DEFAULT_STEADY_TOL,
        }
    }

    pub fn seq_frag(a: f64, t_h: f64, t_c: f64, lambda: f64) -> Self {
        EngineParams {
            kind: EngineKind::SeqFrag,
            n_cycles: 2,
            ..EngineParams::seq_out(a, t_h, t_c, lambda)
        }
    }

    pub fn sim_out(a: f64, t_h: f64, t_c: f64, omega_sb: f64, t2: f64) -> Self {
        EngineParams {
            kind: EngineKind::SimOut,
            a,
            t_h,
            t_c,
            lambda: 0.0,
            omega_sb,
            t2,
            kappa: DEFAULT_KAPPA,
            n_cycles: 1,
            steady_tol: DEFAULT_STEADY_TOL,
        }
    }

    pub fn sim_frag(a: f64, t_h: f64, t_c: f64, omega_sb: f64, t2: f64) -> Self {
        EngineParams {
            kind: EngineKind::SimFrag,
            ..EngineParams::sim_out(a, t_h, t_c, omega_sb, t2)
        }
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_cycles(mut self, n_cycles: usize) -> Self {
        self.n_cycles = n_cycles;
        self
    }

    pub fn with_steady_tol(mut self, steady_tol: f64) -> Self {
        self.steady_tol = steady_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(QheError::Domain(format!(
                "level spacing A must be positive, got {}",
                self.a
            )));
        }
        for (name, t) in [("T_H", self.t_h), ("T_C", self.t_c)] {
            if !(t > 0.0) || !t.is_finite() {
                return Err(QheError::Domain(format!(
                    "{name} must be positive and finite, got {t}"
                )));
            }
        }
        if !self.kappa.is_finite() {
            return Err(QheError::Domain(format!(
                "kappa must be finite, got {}",
                self.kappa
            )));
        }
        if !(self.steady_tol > 0.0) || !self.steady_tol.is_finite() {
            return Err(QheError::Domain(format!(
                "steady-state tolerance must be positive and finite, got {}",
                self.steady_tol
            )));
        }
        match self.kind {
            EngineKind::SeqOut | EngineKind::SeqFrag => {
                if !self.lambda.is_finite() || self.lambda < 0.0 {
                    return Err(QheError::Domain(format!(
                        "lambda must be finite and non-negative, got {}",
                        self.lambda
                    )));
                }
                if self.kind == EngineKind::SeqFrag && self.n_cycles < 2 {
                    return Err(QheError::Domain(format!(
                        "fragmented sequential runs need at least 2 cycles, got {}",
                        self.n_cycles
                    )));
                }
            }
            EngineKind::SimOut | EngineKind::SimFrag => {
                if !self.omega_sb.is_finite() || self.omega_sb < 0.0 {
                    return Err(QheError::Domain(format!(
                        "omega_sb must be finite and non-negative, got {}",
                        self.omega_sb
                    )));
                }
                if self.omega_sb > self.a / 2.0 + 1e-12 * self.a {
                    return Err(QheError::Domain(format!(
                        "omega_sb = {} exceeds A/2 = {}",
                        self.omega_sb,
                        self.a / 2.0
                    )));
                }
                if !(self.t2 >= 0.0) || !self.t2.is_finite() {
                    return Err(QheError::Domain(format!(
                        "t2 must be non-negative and finite, got {}",
                        self.t2
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Heats, work, and performance figures for one cycle.
///
/// Sign conventions: `q_hot` is heat absorbed from the hot bath, positive
/// into the working substance; `q_cold_stroke` is heat released to the cold
/// bath in the cold (re-thermalization) stroke, positive out of it;
/// `q_cold_in_stroke1` is the positive-part cold intake during simultaneous
/// charging (zero for sequential engines).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleMetrics {
    pub q_hot: f64,
    pub q_cold_stroke: f64,
    pub q_cold_in_stroke1: f64,
    pub q_total: f64,
    pub w_battery: f64,
    pub pcg: f64,
    pub eta: f64,
    pub closure: f64,
}

/// Result of a full engine run: one `CycleMetrics` per cycle.
#[derive(Clone, Debug)]
pub struct EngineOutput {
    pub params: EngineParams,
    pub cycles: Vec<CycleMetrics>,
}

impl EngineOutput {
    /// The reported cycle: the second one for SeqFrag (post-transient), the
    /// only one otherwise.
    pub fn headline(&self) -> &CycleMetrics {
        match self.params.kind {
            EngineKind::SeqFrag => &self.cycles[1],
            _ => &self.cycles[0],
        }
    }
}

/// Assembles the derived metrics from raw heats.
///
/// Total heat input counts stroke-1 intake plus any cold-stroke *absorption*:
/// Q_T = q_hot + q_cold_in_stroke1 − q_cold_stroke·θ(−q_cold_stroke), θ(0)=0.
/// Positive work with non-positive Q_T indicates an accounting bug upstream
/// and is rejected.
pub fn assemble_metrics(
    a: f64,
    q_hot: f64,
    q_cold_stroke: f64,
    q_cold_in_stroke1: f64,
    w_battery: f64,
    closure: f64,
) -> Result<CycleMetrics> {
    if !(a > 0.0) {
        return Err(QheError::Domain(format!(
            "level spacing A must be positive, got {a}"
        )));
    }
    let cold_absorbed = if q_cold_stroke < 0.0 {
        -q_cold_stroke
    } else {
        0.0
    };
    let q_total = q_hot + q_cold_in_stroke1 + cold_absorbed;
    let eta = if q_total > 0.0 {
        w_battery / q_total
    } else if w_battery.abs() <= 1e-12 * a.max(1.0) {
        0.0
    } else {
        return Err(QheError::MetricAccounting(format!(
            "positive battery work {w_battery} with non-positive heat input {q_total}"
        )));
    };
    Ok(CycleMetrics {
        q_hot,
        q_cold_stroke,
        q_cold_in_stroke1,
        q_total,
        w_battery,
        pcg: 200.0 * w_battery / a,
        eta,
        closure,
    })
}

/// Coupling driving every level pair of a `dim`-level system (out-and-out).
pub fn out_and_out_coupling(dim: usize) -> Operator {
    let mut m = Operator::zeros(dim).into_matrix();
    let one = C64::new(1.0, 0.0);
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                m[(i, j)] = one;
            }
        }
    }
    Operator::from_matrix(m).expect("square by construction")
}

/// Fragmented hot coupling: drives the qutrit 0̃ ↔ 2̃ pair (gap A).
pub fn fragmented_hot_coupling() -> Operator {
    &Operator::transition(3, 0, 2) + &Operator::transition(3, 2, 0)
}

/// Fragmented cold coupling: drives the qutrit 0̃ ↔ 1̃ pair (gap A/2).
pub fn fragmented_cold_coupling() -> Operator {
    &Operator::transition(3, 0, 1) + &Operator::transition(3, 1, 0)
}

/// Work coupling ω_sb·K on the qutrit ⊗ battery space.
///
/// Out-and-out: K = J₊⊗σ₋ + J₋⊗σ₊ with J₊ = |1̃⟩⟨0̃| + |2̃⟩⟨1̃| — every qutrit
/// raise pairs with a battery drop and vice versa. Fragmented:
/// K = ã₁₂⊗σ₊ + ã₂₁⊗σ₋ — only the 1̃ ↔ 2̃ pair trades with the battery. Both
/// conserve the bare energy: [K, H_S⊗I + I⊗H_B] = 0.
pub fn work_stroke_hamiltonian(kind: EngineKind, omega_sb: f64) -> Result<Operator> {
    if !omega_sb.is_finite() {
        return Err(QheError::Domain(format!(
            "omega_sb must be finite, got {omega_sb}"
        )));
    }
    let sigma_plus = Operator::transition(2, 1, 0);
    let sigma_minus = Operator::transition(2, 0, 1);
    let k = match kind {
        EngineKind::SeqOut | EngineKind::SimOut => {
            let j_plus = &Operator::transition(3, 1, 0) + &Operator::transition(3, 2, 1);
            let j_minus = j_plus.adjoint();
            &kron(&j_plus, &sigma_minus) + &kron(&j_minus, &sigma_plus)
        }
        EngineKind::SeqFrag | EngineKind::SimFrag => {
            let a12 = Operator::transition(3, 1, 2);
            let a21 = Operator::transition(3, 2, 1);
            &kron(&a12, &sigma_plus) + &kron(&a21, &sigma_minus)
        }
    };
    Ok(k.scaled(C64::new(omega_sb, 0.0)))
}

/// Closed forms for the sequential out-and-out cycle: (Q_H, W_B) at phase λ,
/// with h = A/2T_H and c = A/2T_C.
///
/// Evaluated in terms of u = e^{−h}, v = e^{−c} so deep-cold temperatures
/// cannot overflow:
///   Q_H = A(u−v)(1+2u+2v+uv) / (2(1+u+u²)(1+v+v²)),
///   W_B = A(u+u²)(1−cos 2λ) / (4(1+u+u²)).
pub fn analytic_seq_out(a: f64, t_h: f64, t_c: f64, lambda: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !(t_h > 0.0) || !(t_c > 0.0) {
        return Err(QheError::Domain(format!(
            "analytic cycle needs positive A and temperatures, got A={a}, T_H={t_h}, T_C={t_c}"
        )));
    }
    let u = (-a / (2.0 * t_h)).exp();
    let v = (-a / (2.0 * t_c)).exp();
    let q_hot = a * (u - v) * (1.0 + 2.0 * u + 2.0 * v + u * v)
        / (2.0 * (1.0 + u + u * u) * (1.0 + v + v * v));
    let w_battery = a * (u + u * u) * (1.0 - (2.0 * lambda).cos()) / (4.0 * (1.0 + u + u * u));
    Ok((q_hot, w_battery))
}

/// Maximum battery work of the sequential out-and-out engine, attained at
/// λ = π/2: W_M = A(u+u²)/(2(1+u+u²)) with u = e^{−A/2T_H}.
pub fn analytic_seq_out_wmax(a: f64, t_h: f64) -> Result<f64> {
    if !(a > 0.0) || !(t_h > 0.0) {
        return Err(QheError::Domain(format!(
            "analytic maximum needs positive A and T_H, got A={a}, T_H={t_h}"
        )));
    }
    let u = (-a / (2.0 * t_h)).exp();
    Ok(a * (u + u * u) / (2.0 * (1.0 + u + u * u)))
}

/// Runs the engine described by `params`.
pub fn run_engine(params: &EngineParams) -> Result<EngineOutput> {
    params.validate()?;
    match params.kind {
        EngineKind::SeqOut => run_seq_out(params),
        EngineKind::SeqFrag => run_seq_frag(params),
        EngineKind::SimOut | EngineKind::SimFrag => run_simultaneous(params),
    }
}

/// Sequential out-and-out cycle. Thermalization strokes land exactly on the
/// Gibbs endpoints (the all-pairs bath's unique fixed point), so the cycle
/// closes identically and the whole run reduces to one unitary stroke.
fn run_seq_out(params: &EngineParams) -> Result<EngineOutput> {
    let h_s = qutrit_hamiltonian(params.a)?;
    let h_b = battery_hamiltonian(params.a)?;
    let rho_c = thermal_state(&h_s, params.t_c)?;
    let rho_h = thermal_state(&h_s, params.t_h)?;
    let q_hot = expectation(&h_s, &rho_h)? - expectation(&h_s, &rho_c)?;

    let (s_after, b_after) = work_stroke(EngineKind::SeqOut, &rho_h, params.lambda)?;
    let w_battery = expectation(&h_b, &b_after)? + params.a / 4.0;
    let q_cold = expectation(&h_s, &s_after)? - expectation(&h_s, &rho_c)?;

    let metrics = assemble_metrics(params.a, q_hot, q_cold, 0.0, w_battery, 0.0)?;
    Ok(EngineOutput {
        params: *params,
        cycles: vec![metrics],
    })
}

/// Joint unitary stroke: couples the working substance to a fresh battery,
/// evolves under K for phase λ, and splits the state again.
fn work_stroke(
    kind: EngineKind,
    rho_s: &DensityMatrix,
    lambda: f64,
) -> Result<(DensityMatrix, DensityMatrix)> {
    let k = work_stroke_hamiltonian(kind, 1.0)?;
    let joint = DensityMatrix::new(kron(
        rho_s.operator(),
        DensityMatrix::ground_state(2).operator(),
    ))?;
    let evolved = crate::quantum::unitary_evolve(&joint, &k, lambda)?;
    let s = partial_trace(&evolved, &[3, 2], 0)?;
    let b = partial_trace(&evolved, &[3, 2], 1)?;
    Ok((s, b))
}

/// Sequential fragmented cycle: single-channel GKSL thermalization strokes
/// (hot drives 0̃↔2̃, cold drives 0̃↔1̃) around the fragmented work stroke.
/// Each cycle charges a fresh battery; cycle 1 starts from the cold Gibbs
/// state and each later cycle starts from its predecessor's final state.
fn run_seq_frag(params: &EngineParams) -> Result<EngineOutput> {
    let h_s = qutrit_hamiltonian(params.a)?;
    let hot_channels = build_channels(
        &h_s,
        &fragmented_hot_coupling(),
        &BathSpec {
            temperature: params.t_h,
            kappa: params.kappa,
            label: BathLabel::Hot,
        },
    )?;
    let cold_channels = build_channels(
        &h_s,
        &fragmented_cold_coupling(),
        &BathSpec {
            temperature: params.t_c,
            kappa: params.kappa,
            label: BathLabel::Cold,
        },
    )?;
    // Thermal starts and eigenoperator channels keep the qutrit diagonal
    // through every stroke (the work stroke's battery coherence dies in the
    // partial trace), so the step only needs to resolve the rates.
    let hot_config = EvolutionConfig::new(incoherent_stroke_dt(&hot_channels), FRAG_STROKE_TIME)
        .with_steady_tol(params.steady_tol);
    let cold_config = EvolutionConfig::new(incoherent_stroke_dt(&cold_channels), FRAG_STROKE_TIME)
        .with_steady_tol(params.steady_tol);

    let mut state = thermal_state(&h_s, params.t_c)?;
    let h_b = battery_hamiltonian(params.a)?;
    let mut cycles = Vec::with_capacity(params.n_cycles);
    for _ in 0..params.n_cycles {
        let cycle_start = state.clone();

        let (hot_state, hot_ledger) = evolve_to_steady(&h_s, &state, &hot_channels, &hot_config)?;
        let q_hot = hot_ledger.q_net_hot;

        let (s_after, b_after) = work_stroke(EngineKind::SeqFrag, &hot_state, params.lambda)?;
        let w_battery = expectation(&h_b, &b_after)? + params.a / 4.0;

        let (cold_state, cold_ledger) =
            evolve_to_steady(&h_s, &s_after, &cold_channels, &cold_config)?;
        let q_cold = -cold_ledger.q_net_cold;

        let closure = trace_distance(&cycle_start, &cold_state)?;
        cycles.push(assemble_metrics(
            params.a, q_hot, q_cold, 0.0, w_battery, closure,
        )?);
        state = cold_state;
    }
    Ok(EngineOutput {
        params: *params,
        cycles,
    })
}

/// Simultaneous cycle: both baths plus the work coupling act on the joint
/// space for t₂, then the qutrit re-thermalizes to the cold state exactly.
/// Stroke-1 intake is positive-part per bath; stroke-2 heat keeps its sign.
fn run_simultaneous(params: &EngineParams) -> Result<EngineOutput> {
    if params.t2 == 0.0 {
        // no charging stroke at all: exact zeros, not float dust
        let metrics = assemble_metrics(params.a, 0.0, 0.0, 0.0, 0.0, 0.0)?;
        return Ok(EngineOutput {
            params: *params,
            cycles: vec![metrics],
        });
    }
    let h_s = qutrit_hamiltonian(params.a)?;
    let h_b = battery_hamiltonian(params.a)?;
    let i3 = Operator::identity(3);
    let i2 = Operator::identity(2);
    let h_ws = &kron(&h_s, &i2) + &kron(&i3, &h_b);
    let h_sb = work_stroke_hamiltonian(params.kind, params.omega_sb)?;
    let h_t = &h_ws + &h_sb;

    let (hot_coupling, cold_coupling) = match params.kind {
        EngineKind::SimOut => (out_and_out_coupling(3), out_and_out_coupling(3)),
        EngineKind::SimFrag => (fragmented_hot_coupling(), fragmented_cold_coupling()),
        _ => unreachable!("sequential kinds dispatch elsewhere"),
    };
    let mut channels = build_channels(
        &h_t,
        &kron(&hot_coupling, &i2),
        &BathSpec {
            temperature: params.t_h,
            kappa: params.kappa,
            label: BathLabel::Hot,
        },
    )?;
    channels.extend(build_channels(
        &h_t,
        &kron(&cold_coupling, &i2),
        &BathSpec {
            temperature: params.t_c,
            kappa: params.kappa,
            label: BathLabel::Cold,
        },
    )?);

    let rho_c = thermal_state(&h_s, params.t_c)?;
    let rho0 = DensityMatrix::new(kron(
        rho_c.operator(),
        DensityMatrix::ground_state(2).operator(),
    ))?;
    let config = EvolutionConfig::new(default_dt(params.a, params.omega_sb), params.t2);
    let (rho1, ledger) = integrate(&h_t, &rho0, &channels, &config)?;

    let bat = partial_trace(&rho1, &[3, 2], 1)?;
    let w_battery = expectation(&h_b, &bat)? + params.a / 4.0;
    let sys = partial_trace(&rho1, &[3, 2], 0)?;
    let q2 = expectation(&h_s, &sys)? - expectation(&h_s, &rho_c)?;

    let metrics = assemble_metrics(
        params.a,
        ledger.q_pos_hot,
        q2,
        ledger.q_pos_cold,
        w_battery,
        0.0,
    )?;
    Ok(EngineOutput {
        params: *params,
        cycles: vec![metrics],
    })
}

/// One GKSL integration inside a cycle: its label, heat ledger, and the state
/// it ends in.
#[derive(Clone, Debug)]
pub struct StrokeReport {
    pub label: String,
    pub ledger: HeatLedger,
    pub final_state: DensityMatrix,
}

/// Stroke-level diagnostics: every GKSL integration one cycle of the given
/// parameters performs, with each stroke's step multiplied by `dt_scale`
/// (1.0 reproduces the engine's own steps; 0.5 witnesses convergence).
pub fn dissipative_stroke_reports(
    params: &EngineParams,
    dt_scale: f64,
) -> Result<Vec<StrokeReport>> {
    params.validate()?;
    if !(dt_scale > 0.0) || !dt_scale.is_finite() {
        return Err(QheError::Domain(format!(
            "dt scale must be positive, got {dt_scale}"
        )));
    }
    match params.kind {
        EngineKind::SeqOut => Ok(Vec::new()),
        EngineKind::SeqFrag => {
            let h_s = qutrit_hamiltonian(params.a)?;
            let hot_channels = build_channels(
                &h_s,
                &fragmented_hot_coupling(),
                &BathSpec {
                    temperature: params.t_h,
                    kappa: params.kappa,
                    label: BathLabel::Hot,
                },
            )?;
            let cold_channels = build_channels(
                &h_s,
                &fragmented_cold_coupling(),
                &BathSpec {
                    temperature: params.t_c,
                    kappa: params.kappa,
                    label: BathLabel::Cold,
                },
            )?;
            let hot_config = EvolutionConfig::new(
                dt_scale * incoherent_stroke_dt(&hot_channels),
                FRAG_STROKE_TIME,
            )
            .with_steady_tol(params.steady_tol);
            let cold_config = EvolutionConfig::new(
                dt_scale * incoherent_stroke_dt(&cold_channels),
                FRAG_STROKE_TIME,
            )
            .with_steady_tol(params.steady_tol);
            let cold_start = thermal_state(&h_s, params.t_c)?;
            let (hot_state, hot_ledger) =
                evolve_to_steady(&h_s, &cold_start, &hot_channels, &hot_config)?;
            let (s_after, _) = work_stroke(EngineKind::SeqFrag, &hot_state, params.lambda)?;
            let (cold_state, cold_ledger) =
                evolve_to_steady(&h_s, &s_after, &cold_channels, &cold_config)?;
            Ok(vec![
                StrokeReport {
                    label: "seq-frag hot stroke".to_string(),
                    ledger: hot_ledger,
                    final_state: hot_state,
                },
                StrokeReport {
                    label: "seq-frag cold stroke".to_string(),
                    ledger: cold_ledger,
                    final_state: cold_state,
                },
            ])
        }
        EngineKind::SimOut | EngineKind::SimFrag => {
            let h_s = qutrit_hamiltonian(params.a)?;
            let h_b = battery_hamiltonian(params.a)?;
            let h_t = &(&kron(&h_s, &Operator::identity(2))
                + &kron(&Operator::identity(3), &h_b))
                + &work_stroke_hamiltonian(params.kind, params.omega_sb)?;
            let (hot_coupling, cold_coupling) = match params.kind {
                EngineKind::SimOut => (out_and_out_coupling(3), out_and_out_coupling(3)),
                _ => (fragmented_hot_coupling(), fragmented_cold_coupling()),
            };
            let mut channels = build_channels(
                &h_t,
                &kron(&hot_coupling, &Operator::identity(2)),
                &BathSpec {
                    temperature: params.t_h,
                    kappa: params.kappa,
                    label: BathLabel::Hot,
                },
            )?;
            channels.extend(build_channels(
                &h_t,
                &kron(&cold_coupling, &Operator::identity(2)),
                &BathSpec {
                    temperature: params.t_c,
                    kappa: params.kappa,
                    label: BathLabel::Cold,
                },
            )?);
            let rho0 = DensityMatrix::new(kron(
                thermal_state(&h_s, params.t_c)?.operator(),
                DensityMatrix::ground_state(2).operator(),
            ))?;
            let config = EvolutionConfig::new(
                dt_scale * default_dt(params.a, params.omega_sb),
                params.t2,
            );
            let (state, ledger) = integrate(&h_t, &rho0, &channels, &config)?;
            Ok(vec![StrokeReport {
                label: format!("{} charging stroke", params.kind),
                ledger,
                final_state: state,
            }])
        }
    }
}
