//! Hand-derived reference data for the composite qutrit-battery Hamiltonians,
//! used to cross-check the numerical eigenoperator machinery.
//!
//! The work coupling K commutes with H_WS = H_S⊗I₂ + I₃⊗H_B, so
//! H_T = H_WS + ω_sb·K splits into at most 2-dimensional ladder blocks that
//! diagonalize by hand. With the battery index fastest (|s̃ b⟩ → 2s + b) and
//! ω_sb ≤ A/2, both couplings give six levels at
//!
//!   −3A/4,  −A/4 ∓ ω_sb (out) or −A/4 twice (fragmented),
//!   A/4 ∓ ω_sb,  3A/4,
//!
//! and the qutrit-side bath couplings reduce, frequency by frequency, to the
//! closed-form jump operators listed here. The numerical decomposition must
//! reproduce each of these up to an overall scalar.

use nalgebra::{DMatrix, DVector};

use crate::quantum::{Operator, C64};

/// A Bohr frequency and the closed-form jump operator mediating it.
#[derive(Clone, Debug)]
pub struct ReferenceChannel {
    pub omega: f64,
    pub jump: Operator,
}

fn basis(index: usize) -> DVector<C64> {
    let mut v = DVector::zeros(6);
    v[index] = C64::new(1.0, 0.0);
    v
}

/// |lo⟩⟨hi| built from two eigenvectors.
fn ketbra(lo: &DVector<C64>, hi: &DVector<C64>) -> DMatrix<C64> {
    lo * hi.adjoint()
}

/// Eigenvalues and eigenvectors of the out-and-out composite Hamiltonian,
/// ascending for ω_sb ≤ A/2.
pub fn out_eigensystem(a: f64, omega_sb: f64) -> (Vec<f64>, Vec<DVector<C64>>) {
    let inv_sqrt2 = C64::new(0.5_f64.sqrt(), 0.0);
    let energies = vec![
        -0.75 * a,
        -0.25 * a - omega_sb,
        -0.25 * a + omega_sb,
        0.25 * a - omega_sb,
        0.25 * a + omega_sb,
        0.75 * a,
    ];
    let vectors = vec![
        basis(0),
        (basis(2) - basis(1)) * inv_sqrt2,
        (basis(2) + basis(1)) * inv_sqrt2,
        (basis(3) - basis(4)) * inv_sqrt2,
        (basis(3) + basis(4)) * inv_sqrt2,
        basis(5),
    ];
    (energies, vectors)
}

/// Eigenvalues and eigenvectors of the fragmented composite Hamiltonian; the
/// middle pair is degenerate at −A/4.
pub fn frag_eigensystem(a: f64, omega_sb: f64) -> (Vec<f64>, Vec<DVector<C64>>) {
    let inv_sqrt2 = C64::new(0.5_f64.sqrt(), 0.0);
    let energies = vec![
        -0.75 * a,
        -0.25 * a,
        -0.25 * a,
        0.25 * a - omega_sb,
        0.25 * a + omega_sb,
        0.75 * a,
    ];
    let vectors = vec![
        basis(0),
        basis(2),
        basis(1),
        (basis(3) - basis(4)) * inv_sqrt2,
        (basis(3) + basis(4)) * inv_sqrt2,
        basis(5),
    ];
    (energies, vectors)
}

/// The five jump operators of the out-and-out coupling on the composite
/// Hamiltonian, ascending in level pairs, with their Bohr frequencies.
pub fn out_jump_channels(a: f64, omega_sb: f64) -> Vec<ReferenceChannel> {
    let (_, v) = out_eigensystem(a, omega_sb);
    let inv_sqrt2 = C64::new(0.5_f64.sqrt(), 0.0);
    let chan = |omega: f64, m: DMatrix<C64>| ReferenceChannel {
        omega,
        jump: Operator::from_matrix(m).expect("6x6 by construction"),
    };
    vec![
        chan(
            0.5 * a + omega_sb,
            (ketbra(&v[0], &v[2]) + ketbra(&v[3], &v[5])) * inv_sqrt2,
        ),
        chan(
            0.5 * a - omega_sb,
            (ketbra(&v[0], &v[1]) + ketbra(&v[4], &v[5])) * inv_sqrt2,
        ),
        chan(
            a + omega_sb,
            (ketbra(&v[0], &v[4]) - ketbra(&v[1], &v[5])) * inv_sqrt2,
        ),
        chan(
            a - omega_sb,
            (ketbra(&v[2], &v[5]) - ketbra(&v[0], &v[3])) * inv_sqrt2,
        ),
        chan(0.5 * a, ketbra(&v[2], &v[4]) - ketbra(&v[1], &v[3])),
    ]
}

/// The three hot-bath jump operators of the fragmented composite coupling.
pub fn frag_hot_jump_channels(a: f64, omega_sb: f64) -> Vec<ReferenceChannel> {
    let (_, v) = frag_eigensystem(a, omega_sb);
    let chan = |omega: f64, m: DMatrix<C64>| ReferenceChannel {
        omega,
        jump: Operator::from_matrix(m).expect("6x6 by construction"),
    };
    vec![
        chan(a - omega_sb, -ketbra(&v[0], &v[3])),
        chan(a + omega_sb, ketbra(&v[0], &v[4])),
        chan(a, ketbra(&v[2], &v[5])),
    ]
}

/// The three cold-bath jump operators of the fragmented composite coupling.
pub fn frag_cold_jump_channels(a: f64, omega_sb: f64) -> Vec<ReferenceChannel> {
    let (_, v) = frag_eigensystem(a, omega_sb);
    let chan = |omega: f64, m: DMatrix<C64>| ReferenceChannel {
        omega,
        jump: Operator::from_matrix(m).expect("6x6 by construction"),
    };
    vec![
        chan(0.5 * a, ketbra(&v[0], &v[1])),
        chan(0.5 * a - omega_sb, ketbra(&v[2], &v[3])),
        chan(0.5 * a + omega_sb, ketbra(&v[2], &v[4])),
    ]
}

/// Relative residual of `target` outside span{basis} under the Frobenius
/// inner product: 0 means the target is a linear combination of the basis.
pub fn span_residual(target: &Operator, basis: &[&Operator]) -> f64 {
    let norm = |m: &DMatrix<C64>| m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let dot = |a: &DMatrix<C64>, b: &DMatrix<C64>| -> C64 {
        a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
    };
    let target_norm = norm(target.matrix());
    if target_norm == 0.0 {
        return 0.0;
    }
    // Modified Gram-Schmidt over the basis, then project the target.
    let mut ortho: Vec<DMatrix<C64>> = Vec::with_capacity(basis.len());
    for op in basis {
        let mut m = op.matrix().clone();
        for q in &ortho {
            let c = dot(q, &m);
            m -= q * c;
        }
        let n = norm(&m);
        if n > 1e-14 {
            ortho.push(m / C64::new(n, 0.0));
        }
    }
    let mut residual = target.matrix().clone();
    for q in &ortho {
        let c = dot(q, &residual);
        residual -= q * c;
    }
    norm(&residual) / target_norm
}
