//! Fixed-input verification battery behind `qhe verify`.
//!
//! Each check exercises one cross-cutting guarantee of the engine library on
//! hard-coded inputs, so a run is fully deterministic: integrator state
//! quality, detailed balance, thermal fixed points, equivalence of the
//! simulated closed-form engine with its analytic expressions, and the
//! hand-derived jump operators of the composite Hamiltonians. Check names
//! are grouped by their first word for `--only` filtering.
//!
//! The κ negative control flips the spectral density's sign inside the
//! fixed-point checks; detailed balance then breaks, the evolution leaves
//! the state cone, and the battery must go red.

use std::f64::consts::FRAC_PI_2;

use qhe_core::dissipation::{build_channels, eigenoperator_decomposition, BathLabel, BathSpec};
use qhe_core::dynamics::{evolve_to_steady, EvolutionConfig};
use qhe_core::engines::{
    analytic_seq_out, dissipative_stroke_reports, fragmented_cold_coupling,
    fragmented_hot_coupling, out_and_out_coupling, run_engine, work_stroke_hamiltonian,
    EngineKind, EngineParams,
};
use qhe_core::error::QheError;
use qhe_core::quantum::{
    battery_hamiltonian, kron, qutrit_hamiltonian, thermal_state, trace_distance, DensityMatrix,
    Operator, C64,
};
use qhe_core::reference::{
    frag_cold_jump_channels, frag_hot_jump_channels, out_jump_channels, span_residual,
    ReferenceChannel,
};

pub struct VerifyOptions {
    pub only: Option<String>,
    pub negate_kappa: bool,
}

type CheckResult = Result<(), String>;
type Check = (&'static str, Box<dyn Fn() -> CheckResult>);

/// Runs the selected checks, prints the table, and returns the exit code.
pub fn run_battery(opts: &VerifyOptions) -> i32 {
    let kappa_sign = if opts.negate_kappa { -1.0 } else { 1.0 };
    let checks: Vec<Check> = vec![
        ("gksl stroke integrity", Box::new(stroke_integrity)),
        ("gksl detailed balance", Box::new(detailed_balance)),
        ("gksl step halving", Box::new(step_halving)),
        (
            "fixed-point gibbs qutrit",
            Box::new(move || gibbs_qutrit(kappa_sign)),
        ),
        (
            "fixed-point gibbs composite",
            Box::new(move || gibbs_composite(kappa_sign)),
        ),
        (
            "analytic closed-form equivalence",
            Box::new(closed_form_equivalence),
        ),
        (
            "analytic high-temperature ceiling",
            Box::new(high_temperature_ceiling),
        ),
        (
            "operators out-coupling reproduction",
            Box::new(out_coupling_reproduction),
        ),
        (
            "operators fragmented reproduction",
            Box::new(fragmented_reproduction),
        ),
    ];
    let total = checks.len();
    let selected: Vec<&Check> = checks
        .iter()
        .filter(|(name, _)| opts.only.as_deref().is_none_or(|f| name.contains(f)))
        .collect();
    if selected.is_empty() {
        eprintln!(
            "qhe: no verification check matches '{}'",
            opts.only.as_deref().unwrap_or_default()
        );
        return 2;
    }
    println!("running {} of {total} checks", selected.len());
    let mut failed = 0usize;
    for (name, check) in &selected {
        match check() {
            Ok(()) => println!("  {name:<38} pass"),
            Err(msg) => {
                println!("  {name:<38} FAIL: {msg}");
                failed += 1;
            }
        }
    }
    if failed == 0 {
        println!("verification: all {} checks passed", selected.len());
        0
    } else {
        println!(
            "verification: {failed} of {} checks failed",
            selected.len()
        );
        1
    }
}

fn lift(coupling: &Operator) -> Operator {
    kron(coupling, &Operator::identity(2))
}

fn composite_hamiltonian(kind: EngineKind, a: f64, omega_sb: f64) -> Result<Operator, QheError> {
    let bare = &kron(&qutrit_hamiltonian(a)?, &Operator::identity(2))
        + &kron(&Operator::identity(3), &battery_hamiltonian(a)?);
    Ok(&bare + &work_stroke_hamiltonian(kind, omega_sb)?)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// A production charging stroke must keep trace, Hermiticity, and
/// positivity within the integrator's promised bounds.
fn stroke_integrity() -> CheckResult {
    let params = EngineParams::sim_out(3.0, 5.0, 1.0, 0.6, 6.0);
    let reports = dissipative_stroke_reports(&params, 1.0).map_err(err)?;
    for report in &reports {
        let ledger = &report.ledger;
        let dt = ledger.elapsed / ledger.steps as f64;
        let drift_rate = ledger.max_trace_drift / dt;
        if drift_rate > 1e-9 {
            return Err(format!(
                "{}: trace drift {drift_rate:.2e} per unit time",
                report.label
            ));
        }
        if ledger.max_hermiticity_residual > 1e-12 {
            return Err(format!(
                "{}: Hermiticity residual {:.2e}",
                report.label, ledger.max_hermiticity_residual
            ));
        }
        if ledger.min_eigenvalue < -1e-8 {
            return Err(format!(
                "{}: eigenvalue {:.2e}",
                report.label, ledger.min_eigenvalue
            ));
        }
    }
    Ok(())
}

/// Emission and absorption rates of every channel must satisfy
/// γ↓/γ↑ = e^(ω/T) at each bath temperature.
fn detailed_balance() -> CheckResult {
    let h = qutrit_hamiltonian(2.0).map_err(err)?;
    for temperature in [0.3, 2.0, 17.0] {
        let channels = build_channels(
            &h,
            &out_and_out_coupling(3),
            &BathSpec {
                temperature,
                kappa: 0.05,
                label: BathLabel::Hot,
            },
        )
        .map_err(err)?;
        for ch in &channels {
            let expected = (ch.omega / temperature).exp();
            let actual = ch.rate_down / ch.rate_up;
            if ((actual - expected) / expected).abs() > 1e-9 {
                return Err(format!(
                    "ω={}, T={temperature}: γ↓/γ↑ = {actual}, expected {expected}",
                    ch.omega
                ));
            }
        }
    }
    Ok(())
}

/// Halving the integration step must leave stroke endpoints unchanged to
/// 1e-8, witnessing step-size convergence.
fn step_halving() -> CheckResult {
    let params = EngineParams::sim_frag(2.0, 4.0, 1.0, 0.7, 5.0);
    let full = dissipative_stroke_reports(&params, 1.0).map_err(err)?;
    let halved = dissipative_stroke_reports(&params, 0.5).map_err(err)?;
    for (f, h) in full.iter().zip(&halved) {
        let gap = (f.final_state.operator() - h.final_state.operator()).max_norm();
        if gap > 1e-8 {
            return Err(format!("{}: endpoints differ by {gap:.2e}", f.label));
        }
    }
    Ok(())
}

/// A single all-pairs bath must drive a far-from-equilibrium qutrit state
/// to the Gibbs state of its Hamiltonian.
fn gibbs_qutrit(kappa_sign: f64) -> CheckResult {
    let h = qutrit_hamiltonian(1.8).map_err(err)?;
    let temperature = 1.3;
    let channels = build_channels(
        &h,
        &out_and_out_coupling(3),
        &BathSpec {
            temperature,
            kappa: kappa_sign * 0.05,
            label: BathLabel::Hot,
        },
    )
    .map_err(err)?;
    // fixed mixture of two coherent pure states; nothing thermal about it
    let amps1 = [C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(3.0, 0.0)];
    let amps2 = [C64::new(3.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0)];
    let initial = mixture(&[(0.6, &amps1), (0.4, &amps2)]).map_err(err)?;
    let config = EvolutionConfig::new(0.02, 1500.0);
    let (state, ledger) = evolve_to_steady(&h, &initial, &channels, &config).map_err(err)?;
    if !ledger.converged {
        return Err("no steady state within the horizon".to_string());
    }
    let gibbs = thermal_state(&h, temperature).map_err(err)?;
    let td = trace_distance(&state, &gibbs).map_err(err)?;
    if td > 1e-6 {
        return Err(format!("trace distance to Gibbs {td:.2e}"));
    }
    Ok(())
}

/// The same must hold on the six-dimensional dressed system: one bath,
/// coupled through the qutrit alone, thermalizes the full composite.
fn gibbs_composite(kappa_sign: f64) -> CheckResult {
    let (a, omega_sb, temperature) = (2.0, 0.3, 2.0);
    let h_t = composite_hamiltonian(EngineKind::SimOut, a, omega_sb).map_err(err)?;
    let channels = build_channels(
        &h_t,
        &lift(&out_and_out_coupling(3)),
        &BathSpec {
            temperature,
            kappa: kappa_sign * 0.05,
            label: BathLabel::Hot,
        },
    )
    .map_err(err)?;
    let qutrit_part = mixture(&[
        (0.7, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
        (0.3, &[C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, -1.0)]),
    ])
    .map_err(err)?;
    let battery_part = DensityMatrix::from_populations(&[0.8, 0.2]).map_err(err)?;
    let initial =
        DensityMatrix::new(kron(qutrit_part.operator(), battery_part.operator())).map_err(err)?;
    let config = EvolutionConfig::new(0.02, 1500.0);
    let (state, ledger) = evolve_to_steady(&h_t, &initial, &channels, &config).map_err(err)?;
    if !ledger.converged {
        return Err("no steady state within the horizon".to_string());
    }
    let gibbs = thermal_state(&h_t, temperature).map_err(err)?;
    let td = trace_distance(&state, &gibbs).map_err(err)?;
    if td > 1e-6 {
        return Err(format!("trace distance to Gibbs {td:.2e}"));
    }
    Ok(())
}

fn mixture(parts: &[(f64, &[C64; 3])]) -> Result<DensityMatrix, QheError> {
    let mut m = Operator::zeros(3);
    for (weight, amps) in parts {
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        for i in 0..3 {
            for j in 0..3 {
                let coeff = amps[i] * amps[j].conj() * (weight / norm);
                m = &m + &Operator::transition(3, i, j).scaled(coeff);
            }
        }
    }
    DensityMatrix::new(m)
}

/// The simulated closed-form engine must match its analytic heat and work
/// expressions across temperatures and work angles.
fn closed_form_equivalence() -> CheckResult {
    let a = 50.0;
    for h in [0.1, 1.0, 4.0] {
        for c in [0.1, 1.0, 4.0] {
            for lambda in [0.4, FRAC_PI_2, 2.8] {
                let params = EngineParams::seq_out(a, h * a, c * a, lambda);
                let m = *run_engine(&params).map_err(err)?.headline();
                let (q_h, w_b) = analytic_seq_out(a, h * a, c * a, lambda).map_err(err)?;
                if (m.q_hot - q_h).abs() > 1e-10 * a || (m.w_battery - w_b).abs() > 1e-10 * a {
                    return Err(format!(
                        "h={h}, c={c}, λ={lambda}: (Q_H, W) = ({}, {}) vs ({q_h}, {w_b})",
                        m.q_hot, m.w_battery
                    ));
                }
            }
        }
    }
    Ok(())
}

/// At h = 0.001 the closed-form work must sit on its frozen oracle value,
/// within a tenth of a percent of the A/3 ceiling.
fn high_temperature_ceiling() -> CheckResult {
    let params = EngineParams::seq_out(50.0, 25000.0, 15.0, FRAC_PI_2);
    let w = run_engine(&params).map_err(err)?.headline().w_battery;
    if (w - 16.6583319458337).abs() > 1e-9 {
        return Err(format!("W = {w}, expected 16.6583319458337"));
    }
    Ok(())
}

fn reproduce_channels(
    h: &Operator,
    coupling: &Operator,
    reference: &[ReferenceChannel],
) -> CheckResult {
    let computed = eigenoperator_decomposition(h, coupling).map_err(err)?;
    if computed.len() != reference.len() {
        return Err(format!(
            "expected {} Bohr frequencies, found {}",
            reference.len(),
            computed.len()
        ));
    }
    for r in reference {
        let matched: Vec<&Operator> = computed
            .iter()
            .filter(|(omega, _)| (omega - r.omega).abs() <= 1e-9)
            .map(|(_, jump)| jump)
            .collect();
        if matched.len() != 1 {
            return Err(format!("no unique channel at ω = {}", r.omega));
        }
        let residual = span_residual(&r.jump, &matched);
        if residual > 1e-9 {
            return Err(format!("span residual {residual:.2e} at ω = {}", r.omega));
        }
    }
    Ok(())
}

/// The decomposition of the all-pairs composite coupling must land on the
/// five hand-derived jump operators.
fn out_coupling_reproduction() -> CheckResult {
    let (a, omega_sb) = (50.0, 10.0);
    let h = composite_hamiltonian(EngineKind::SimOut, a, omega_sb).map_err(err)?;
    reproduce_channels(
        &h,
        &lift(&out_and_out_coupling(3)),
        &out_jump_channels(a, omega_sb),
    )
}

/// Likewise for the two fragmented couplings: three channels per bath.
fn fragmented_reproduction() -> CheckResult {
    let (a, omega_sb) = (50.0, 10.0);
    let h = composite_hamiltonian(EngineKind::SimFrag, a, omega_sb).map_err(err)?;
    reproduce_channels(
        &h,
        &lift(&fragmented_hot_coupling()),
        &frag_hot_jump_channels(a, omega_sb),
    )?;
    reproduce_channels(
        &h,
        &lift(&fragmented_cold_coupling()),
        &frag_cold_jump_channels(a, omega_sb),
    )
}
