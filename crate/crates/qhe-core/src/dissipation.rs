//! GKSL channel construction for thermal baths with Ohmic spectral density.
//!
//! A bath couples to the system through a Hermitian coupling operator C.
//! Decomposing C into eigenoperators of the system Hamiltonian H gives, for
//! every positive Bohr frequency ω (grouped within tolerance),
//!   A(ω) = Σ_{E′−E=ω} Π(E) · C · Π(E′),
//! which lowers energy by ω: [H, A(ω)] = −ω·A(ω). Each A(ω) yields one
//! channel with downward rate J(ω)(1+n(ω,T)) and upward rate J(ω)n(ω,T),
//! where J(ω) = κω and n is the Planck occupation. The rate ratio e^{ω/T}
//! (detailed balance) makes the Gibbs state of H stationary.

use nalgebra::DMatrix;

use crate::error::{QheError, Result};
use crate::quantum::{Operator, C64};
use crate::tolerances::TOLERANCES;

/// Which reservoir a channel belongs to; drives the heat ledger split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BathLabel {
    Hot,
    Cold,
}

impl BathLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BathLabel::Hot => "hot",
            BathLabel::Cold => "cold",
        }
    }
}

/// Thermal reservoir: temperature (units δ/k_B) and Ohmic strength κ.
///
/// Plain record by design: κ is not validated here so diagnostic harnesses
/// can probe tampered parameters; `build_channels` output for κ > 0 satisfies
/// the rate invariants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BathSpec {
    pub temperature: f64,
    pub kappa: f64,
    pub label: BathLabel,
}

/// One GKSL channel: jump operator at Bohr frequency ω with both rates.
#[derive(Clone, Debug)]
pub struct DissipationChannel {
    /// Lowering eigenoperator A(ω).
    pub jump: Operator,
    /// Bohr frequency ω > 0.
    pub omega: f64,
    /// Rate on A(ω): J(ω)(1 + n).
    pub rate_down: f64,
    /// Rate on A(ω)†: J(ω)n.
    pub rate_up: f64,
    pub bath: BathLabel,
}

/// Bose-Einstein occupation n(ω, T) = 1/(e^{ω/T} − 1).
///
/// Clamped to 0 for ω/T > 700 (where e^{ω/T} would overflow and n underflows
/// anyway).
pub fn planck_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(QheError::Domain(format!(
            "Planck occupation needs ω > 0, got {omega}"
        )));
    }
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(QheError::Domain(format!(
            "Planck occupation needs finite T > 0, got {temperature}"
        )));
    }
    let x = omega / temperature;
    if x > 700.0 {
        return Ok(0.0);
    }
    Ok(1.0 / x.exp_m1())
}

/// Ohmic spectral density J(ω) = κω.
///
/// κ is passed through unvalidated (see [`BathSpec`]); ω must be positive.
pub fn spectral_density(omega: f64, kappa: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(QheError::Domain(format!(
            "spectral density needs ω > 0, got {omega}"
        )));
    }
    Ok(kappa * omega)
}

/// Decomposes `coupling` into lowering eigenoperators of `h`.
///
/// Returns (ω, A(ω)) pairs sorted by ascending ω > 0. Eigenvalues and Bohr
/// frequencies are clustered with the frequency-grouping tolerance; null
/// operators are dropped. A coupling commuting with `h` yields an empty list.
pub fn eigenoperator_decomposition(
    h: &Operator,
    coupling: &Operator,
) -> Result<Vec<(f64, Operator)>> {
    if h.dim() != coupling.dim() {
        return Err(QheError::DimensionMismatch {
            expected: h.dim(),
            got: coupling.dim(),
        });
    }
    let res = coupling.hermiticity_residual();
    if res > TOLERANCES.hermiticity {
        return Err(QheError::NotHermitian {
            residual: res,
            tol: TOLERANCES.hermiticity,
        });
    }
    let (vals, vecs) = h.eigh()?;
    let tol = TOLERANCES.frequency_grouping;

    // Cluster (sorted) eigenvalues into degenerate groups.
    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for (i, &e) in vals.iter().enumerate() {
        match groups.last_mut() {
            Some((e_last, members)) if (e - *e_last).abs() <= tol => {
                // running mean keeps the cluster energy representative
                let n = members.len() as f64;
                *e_last = (*e_last * n + e) / (n + 1.0);
                members.push(i);
            }
            _ => groups.push((e, vec![i])),
        }
    }

    // C in the eigenbasis.
    let c_eig = vecs.adjoint() * coupling.matrix() * &vecs;

    // One candidate per ordered group pair with E_hi > E_lo.
    let mut candidates: Vec<(f64, DMatrix<C64>)> = Vec::new();
    let dim = h.dim();
    for (lo, (e_lo, lo_members)) in groups.iter().enumerate() {
        for (e_hi, hi_members) in groups.iter().skip(lo + 1) {
            let omega = e_hi - e_lo;
            if omega <= tol {
                continue;
            }
            // Π(E_lo) C Π(E_hi), assembled back in the original basis.
            let mut block = DMatrix::zeros(dim, dim);
            for &r in lo_members {
                for &c in hi_members {
                    if c_eig[(r, c)].norm() > 0.0 {
                        let vr = vecs.column(r);
                        let vc = vecs.column(c);
                        let amp = c_eig[(r, c)];
                        for i in 0..dim {
                            for j in 0..dim {
                                block[(i, j)] += amp * vr[i] * vc[j].conj();
                            }
                        }
                    }
                }
            }
            candidates.push((omega, block));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));

    // Merge candidates whose Bohr frequencies coincide within tolerance.
    let mut out: Vec<(f64, DMatrix<C64>)> = Vec::new();
    for (omega, block) in candidates {
        match out.last_mut() {
            Some((w_last, acc)) if (omega - *w_last).abs() <= tol => {
                *acc += block;
                *w_last = (*w_last + omega) / 2.0;
            }
            _ => out.push((omega, block)),
        }
    }

    let mut result = Vec::new();
    for (omega, block) in out {
        let op = Operator::from_matrix(block)?;
        if op.max_norm() > TOLERANCES.null_operator {
            result.push((omega, op));
        }
    }
    Ok(result)
}

/// Builds the GKSL channels of one bath from its coupling operator.
pub fn build_channels(
    h: &Operator,
    coupling: &Operator,
    bath: &BathSpec,
) -> Result<Vec<DissipationChannel>> {
    if !(bath.temperature > 0.0) || !bath.temperature.is_finite() {
        return Err(QheError::Domain(format!(
            "bath temperature must be finite and positive, got {}",
            bath.temperature
        )));
    }
    let mut channels = Vec::new();
    for (omega, jump) in eigenoperator_decomposition(h, coupling)? {
        let j = spectral_density(omega, bath.kappa)?;
        let n = planck_occupation(omega, bath.temperature)?;
        let rate_down = j * (1.0 + n);
        let rate_up = j * n;
        if rate_down.abs() < TOLERANCES.rate_floor {
            continue;
        }
        channels.push(DissipationChannel {
            jump,
            omega,
            rate_down,
            rate_up,
            bath: bath.label,
        });
    }
    Ok(channels)
}

/// Applies the dissipative part of the GKSL generator:
///   Σ_ch rate_down·(AρA† − ½{A†A,ρ}) + rate_up·(A†ρA − ½{AA†,ρ}).
///
/// Accepts any square matrix (superoperators act on general operators, not
/// only states).
pub fn dissipator_apply(rho: &Operator, channels: &[DissipationChannel]) -> Result<Operator> {
    let dim = rho.dim();
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    let rm = rho.matrix();
    for ch in channels {
        if ch.jump.dim() != dim {
            return Err(QheError::DimensionMismatch {
                expected: dim,
                got: ch.jump.dim(),
            });
        }
        let a = ch.jump.matrix();
        let a_dag = a.adjoint();
        let half = C64::new(0.5, 0.0);
        if ch.rate_down != 0.0 {
            let down = C64::new(ch.rate_down, 0.0);
            let ada = &a_dag * a; // A†A
            out += (a * rm * &a_dag - (&ada * rm + rm * &ada) * half) * down;
        }
        if ch.rate_up != 0.0 {
            let up = C64::new(ch.rate_up, 0.0);
            let aad = a * &a_dag; // AA†
            out += (&a_dag * rm * a - (&aad * rm + rm * &aad) * half) * up;
        }
    }
    Operator::from_matrix(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{kron, qutrit_hamiltonian, thermal_state};

    const A: f64 = 2.0;

    fn out_and_out_coupling(dim: usize) -> Operator {
        let mut c = Operator::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    c = &c + &Operator::transition(dim, i, j);
                }
            }
        }
        c
    }

    #[test]
    fn planck_occupation_values() {
        // ω/T = ln 2 gives n = 1 exactly.
        let n = planck_occupation(2.0_f64.ln(), 1.0).unwrap();
        assert!((n - 1.0).abs() < 1e-12);
        // frozen from 1/(e^{0.01} - 1)
        let n = planck_occupation(1.0, 100.0).unwrap();
        assert!((n - 99.500833194).abs() < 1e-6);
        // deep cold: clamped to zero
        assert_eq!(planck_occupation(1.0, 1e-3).unwrap(), 0.0);
        assert!(planck_occupation(0.0, 1.0).is_err());
        assert!(planck_occupation(-1.0, 1.0).is_err());
        assert!(planck_occupation(1.0, 0.0).is_err());
        assert!(planck_occupation(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn spectral_density_is_linear() {
        assert!((spectral_density(1.0, 1e-3).unwrap() - 1e-3).abs() < 1e-18);
        assert!((spectral_density(50.0, 1e-3).unwrap() - 0.05).abs() < 1e-15);
        assert!(spectral_density(0.0, 1e-3).is_err());
        assert!(spectral_density(-2.0, 1e-3).is_err());
    }

    #[test]
    fn qutrit_out_and_out_eigenoperators() {
        let h = qutrit_hamiltonian(A).unwrap();
        let c = out_and_out_coupling(3);
        let eops = eigenoperator_decomposition(&h, &c).unwrap();
        assert_eq!(eops.len(), 2);
        // ω = A/2: |0><1| + |1><2| ; ω = A: |0><2|
        assert!((eops[0].0 - A / 2.0).abs() < 1e-12);
        assert!((eops[1].0 - A).abs() < 1e-12);
        let j_minus = &Operator::transition(3, 0, 1) + &Operator::transition(3, 1, 2);
        assert!((&eops[0].1 - &j_minus).max_norm() < 1e-12);
        let a02 = Operator::transition(3, 0, 2);
        assert!((&eops[1].1 - &a02).max_norm() < 1e-12);
    }

    #[test]
    fn fragmented_couplings_give_single_channels() {
        let h = qutrit_hamiltonian(A).unwrap();
        let hot = &Operator::transition(3, 0, 2) + &Operator::transition(3, 2, 0);
        let eops = eigenoperator_decomposition(&h, &hot).unwrap();
        assert_eq!(eops.len(), 1);
        assert!((eops[0].0 - A).abs() < 1e-12);
        assert!((&eops[0].1 - &Operator::transition(3, 0, 2)).max_norm() < 1e-12);

        let cold = &Operator::transition(3, 0, 1) + &Operator::transition(3, 1, 0);
        let eops = eigenoperator_decomposition(&h, &cold).unwrap();
        assert_eq!(eops.len(), 1);
        assert!((eops[0].0 - A / 2.0).abs() < 1e-12);
        assert!((&eops[0].1 - &Operator::transition(3, 0, 1)).max_norm() < 1e-12);
    }

    #[test]
    fn commuting_coupling_yields_no_channels() {
        let h = qutrit_hamiltonian(A).unwrap();
        let c = Operator::diagonal(&[0.3, -0.1, 0.7]);
        assert!(eigenoperator_decomposition(&h, &c).unwrap().is_empty());
    }

    #[test]
    fn eigenoperators_lower_energy() {
        // [H, A(ω)] = -ω A(ω) for every channel.
        let h = qutrit_hamiltonian(A).unwrap();
        let c = out_and_out_coupling(3);
        for (omega, a) in eigenoperator_decomposition(&h, &c).unwrap() {
            let comm = &(&h * &a) - &(&a * &h);
            let target = a.scaled(C64::new(-omega, 0.0));
            assert!((&comm - &target).max_norm() < 1e-9);
        }
    }

    #[test]
    fn channel_rates_satisfy_detailed_balance() {
        let h = qutrit_hamiltonian(A).unwrap();
        let c = out_and_out_coupling(3);
        let bath = BathSpec {
            temperature: 1.7,
            kappa: 1e-3,
            label: BathLabel::Hot,
        };
        let channels = build_channels(&h, &c, &bath).unwrap();
        assert_eq!(channels.len(), 2);
        for ch in &channels {
            assert!(ch.rate_down > ch.rate_up);
            assert!(ch.rate_up > 0.0);
            let ratio = ch.rate_down / ch.rate_up;
            assert!((ratio - (ch.omega / 1.7).exp()).abs() < 1e-9 * ratio);
        }
    }

    #[test]
    fn cold_limit_keeps_only_decay() {
        let h = qutrit_hamiltonian(A).unwrap();
        let c = out_and_out_coupling(3);
        let bath = BathSpec {
            temperature: 1e-4,
            kappa: 1e-3,
            label: BathLabel::Cold,
        };
        for ch in build_channels(&h, &c, &bath).unwrap() {
            assert_eq!(ch.rate_up, 0.0);
            assert!(ch.rate_down > 0.0);
        }
    }

    #[test]
    fn tampered_kappa_breaks_rate_invariant() {
        let h = qutrit_hamiltonian(A).unwrap();
        let c = out_and_out_coupling(3);
        let bath = BathSpec {
            temperature: 1.0,
            kappa: -1e-3,
            label: BathLabel::Hot,
        };
        let channels = build_channels(&h, &c, &bath).unwrap();
        assert!(channels.iter().all(|ch| ch.rate_down < 0.0));
    }

    #[test]
    fn dissipator_is_trace_free() {
        let h = qutrit_hamiltonian(A).unwrap();
        let c = out_and_out_coupling(3);
        let bath = BathSpec {
            temperature: 2.5,
            kappa: 1e-2,
            label: BathLabel::Hot,
        };
        let channels = build_channels(&h, &c, &bath).unwrap();
        let rho = thermal_state(&h, 0.4).unwrap();
        let d = dissipator_apply(rho.operator(), &channels).unwrap();
        assert!(d.trace().norm() < 1e-15);
    }

    #[test]
    fn gibbs_state_is_stationary() {
        let h = qutrit_hamiltonian(A).unwrap();
        let c = out_and_out_coupling(3);
        let t = 1.3;
        let bath = BathSpec {
            temperature: t,
            kappa: 1e-3,
            label: BathLabel::Hot,
        };
        let channels = build_channels(&h, &c, &bath).unwrap();
        let gibbs = thermal_state(&h, t).unwrap();
        let d = dissipator_apply(gibbs.operator(), &channels).unwrap();
        assert!(d.max_norm() < 1e-10);
    }

    #[test]
    fn composite_coupling_on_joint_hamiltonian() {
        // (Σ ã_ij) ⊗ I on H_S ⊗ I + I ⊗ H_B: channels exist and all lower.
        let hs = qutrit_hamiltonian(A).unwrap();
        let hb = crate::quantum::battery_hamiltonian(A).unwrap();
        let h = &kron(&hs, &Operator::identity(2)) + &kron(&Operator::identity(3), &hb);
        let c = kron(&out_and_out_coupling(3), &Operator::identity(2));
        let eops = eigenoperator_decomposition(&h, &c).unwrap();
        assert!(!eops.is_empty());
        for (omega, a) in &eops {
            assert!(*omega > 0.0);
            let comm = &(&h * a) - &(a * &h);
            assert!((&comm - &a.scaled(C64::new(-omega, 0.0))).max_norm() < 1e-9);
        }
    }
}
