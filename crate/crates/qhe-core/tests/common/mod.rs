//! Shared test fixtures: an independent superoperator-exponential oracle and
//! seeded random-state generators.
//!
//! The oracle assembles the GKSL generator as a d²×d² matrix directly from
//! the vectorization identities (column-major vec, so vec(AρB) = (Bᵀ⊗A)vec ρ)
//! and applies its exponential by scaling-and-squaring. The production
//! integrator builds its generator by probing matrix units and then steps
//! with RK4, so agreement between the two is a genuine cross-check of both
//! the generator assembly and the time stepping.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qhe_core::dissipation::DissipationChannel;
use qhe_core::quantum::{DensityMatrix, Operator, C64};
use qhe_core::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_complex_matrix(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Random full-rank density matrix, G·G†/tr with Gaussian-ish entries.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
    let g = random_complex_matrix(rng, dim);
    let m = &g * g.adjoint();
    let tr: C64 = m.diagonal().sum();
    DensityMatrix::new(Operator::from_matrix(m / tr).expect("square")).expect("PSD by construction")
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> Operator {
    let g = random_complex_matrix(rng, dim);
    Operator::from_matrix((&g + g.adjoint()) * C64::new(0.5, 0.0)).expect("square")
}

/// The full GKSL generator as a matrix on vec(ρ), from vectorization
/// identities.
pub fn generator_matrix(h: &Operator, channels: &[DissipationChannel]) -> DMatrix<C64> {
    let dim = h.dim();
    let id = DMatrix::<C64>::identity(dim, dim);
    let hm = h.matrix();
    let i = C64::new(0.0, 1.0);
    let half = C64::new(0.5, 0.0);

    let mut l = (id.kronecker(hm) - hm.transpose().kronecker(&id)) * (-i);
    for ch in channels {
        let a = ch.jump.matrix();
        let ad = a.adjoint();
        let ada = &ad * a;
        let aad = a * &ad;
        let down = a.map(|z| z.conj()).kronecker(a)
            - (id.kronecker(&ada) + ada.transpose().kronecker(&id)) * half;
        let up = a.transpose().kronecker(&ad)
            - (id.kronecker(&aad) + aad.transpose().kronecker(&id)) * half;
        l += down * C64::new(ch.rate_down, 0.0) + up * C64::new(ch.rate_up, 0.0);
    }
    l
}

/// exp(M·t) by scaling-and-squaring with a Taylor kernel; fine at d² ≤ 36.
pub fn expm(m: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    let dim = m.nrows();
    let one_norm = (0..m.ncols())
        .map(|c| m.column(c).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0_f64, f64::max)
        * t.abs();
    let squarings = if one_norm > 0.5 {
        (one_norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = m * C64::new(t / 2.0_f64.powi(squarings as i32), 0.0);

    let mut result = DMatrix::<C64>::identity(dim, dim);
    let mut term = DMatrix::<C64>::identity(dim, dim);
    for k in 1..=40 {
        term = &term * &scaled / C64::new(k as f64, 0.0);
        result += &term;
        let biggest = term.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
        if biggest < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Exact GKSL evolution via the exponentiated generator.
pub fn evolve_exact(
    h: &Operator,
    channels: &[DissipationChannel],
    initial: &DensityMatrix,
    t: f64,
) -> Result<DensityMatrix> {
    let dim = h.dim();
    let l = generator_matrix(h, channels);
    let propagator = expm(&l, t);
    let v0 = DVector::from_column_slice(initial.matrix().as_slice());
    let v = propagator * v0;
    let m = DMatrix::from_column_slice(dim, dim, v.as_slice());
    // Round the tail of the exponential series back onto Hermitian matrices.
    let symmetrized = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    DensityMatrix::new(Operator::from_matrix(symmetrized)?)
}
