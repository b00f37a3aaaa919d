//! Dense complex operators and states for small multipartite systems.
//!
//! The working substance is a qutrit with Hamiltonian
//!   H_S = diag(−A/2, 0, A/2)
//! in the ordered basis |0̃⟩, |1̃⟩, |2̃⟩ (equally spaced levels, gap A/2),
//! and the battery is a two-level system with
//!   H_B = diag(−A/4, +A/4)
//! in the basis |0⟩, |1⟩, so the battery gap matches the qutrit spacing.
//! Composite indices follow `kron`'s convention: qutrit is the left factor,
//! battery index varies fastest.
//!
//! All matrices are dense `Complex64`; dimensions in this crate never exceed
//! a few dozen, so O(d³) eigendecompositions are used freely.

use nalgebra::DMatrix;

use crate::error::{QheError, Result};
use crate::tolerances::{NumericTolerances, TOLERANCES};

pub use num_complex::Complex64 as C64;

#[inline]
fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Square complex matrix with runtime dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    mat: DMatrix<C64>,
}

impl Operator {
    /// Wraps a square matrix; errors on non-square or empty input.
    pub fn from_matrix(mat: DMatrix<C64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(QheError::DimensionMismatch {
                expected: mat.nrows(),
                got: mat.ncols(),
            });
        }
        if mat.is_empty() {
            return Err(QheError::Domain("operator dimension must be ≥ 1".into()));
        }
        Ok(Operator { mat })
    }

    pub fn zeros(dim: usize) -> Self {
        Operator {
            mat: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Operator {
            mat: DMatrix::identity(dim, dim),
        }
    }

    /// Matrix unit |to⟩⟨from|.
    pub fn transition(dim: usize, to: usize, from: usize) -> Self {
        let mut mat = DMatrix::zeros(dim, dim);
        mat[(to, from)] = re(1.0);
        Operator { mat }
    }

    /// Real diagonal operator.
    pub fn diagonal(entries: &[f64]) -> Self {
        let dim = entries.len();
        let mut mat = DMatrix::zeros(dim, dim);
        for (i, &e) in entries.iter().enumerate() {
            mat[(i, i)] = re(e);
        }
        Operator { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    pub fn adjoint(&self) -> Self {
        Operator {
            mat: self.mat.adjoint(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.mat.diagonal().sum()
    }

    /// Largest entry magnitude (max norm).
    pub fn max_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// ‖M − M†‖ in max norm.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut r = 0.0_f64;
        for i in 0..self.dim() {
            for j in i..self.dim() {
                r = r.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        r
    }

    pub fn scaled(&self, s: C64) -> Self {
        Operator {
            mat: &self.mat * s,
        }
    }

    /// Eigenvalues of a Hermitian operator, ascending.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigh()?.0)
    }

    /// Sorted Hermitian eigendecomposition; eigenvector k is column k.
    pub(crate) fn eigh(&self) -> Result<(Vec<f64>, DMatrix<C64>)> {
        let residual = self.hermiticity_residual();
        if residual > TOLERANCES.hermiticity {
            return Err(QheError::NotHermitian {
                residual,
                tol: TOLERANCES.hermiticity,
            });
        }
        // Symmetrize to kill rounding-level asymmetry before factorization.
        let sym = (&self.mat + self.mat.adjoint()).scale(0.5);
        let se = sym.symmetric_eigen();
        let dim = self.dim();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
        let vals: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
        let mut vecs = DMatrix::zeros(dim, dim);
        for (dst, &src) in order.iter().enumerate() {
            vecs.set_column(dst, &se.eigenvectors.column(src));
        }
        Ok((vals, vecs))
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl std::ops::Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl std::ops::Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        Operator {
            mat: &self.mat * &rhs.mat,
        }
    }
}

/// Validated density matrix: Hermitian, unit trace, positive within tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: Operator,
}

impl DensityMatrix {
    pub fn new(op: Operator) -> Result<Self> {
        Self::with_tolerances(op, &TOLERANCES)
    }

    pub fn with_tolerances(op: Operator, tol: &NumericTolerances) -> Result<Self> {
        let residual = op.hermiticity_residual();
        if residual > tol.hermiticity {
            return Err(QheError::NotHermitian {
                residual,
                tol: tol.hermiticity,
            });
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > tol.unit_trace || tr.im.abs() > tol.unit_trace {
            return Err(QheError::InvalidState(format!(
                "trace {:.12} + {:.3e}i deviates from 1 beyond {:.1e}",
                tr.re, tr.im, tol.unit_trace
            )));
        }
        let min_eig = op
            .eigh()?
            .0
            .first()
            .copied()
            .expect("dimension ≥ 1 guaranteed by Operator");
        if min_eig < -tol.positivity {
            return Err(QheError::InvalidState(format!(
                "minimum eigenvalue {min_eig:.3e} below -{:.1e}",
                tol.positivity
            )));
        }
        Ok(DensityMatrix { op })
    }

    /// |0⟩⟨0| — lowest basis state, exact by construction.
    pub fn ground_state(dim: usize) -> Self {
        DensityMatrix {
            op: Operator::transition(dim, 0, 0),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix {
            op: Operator::identity(dim).scaled(re(1.0 / dim as f64)),
        }
    }

    /// Diagonal state from classical populations (must sum to 1).
    pub fn from_populations(populations: &[f64]) -> Result<Self> {
        if populations.iter().any(|&p| !(p >= 0.0)) {
            return Err(QheError::InvalidState(
                "populations must be nonnegative".into(),
            ));
        }
        let sum: f64 = populations.iter().sum();
        if (sum - 1.0).abs() > TOLERANCES.unit_trace {
            return Err(QheError::InvalidState(format!(
                "populations sum to {sum}, expected 1"
            )));
        }
        Ok(DensityMatrix {
            op: Operator::diagonal(populations),
        })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &Operator {
        &self.op
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        self.op.matrix()
    }

    pub fn into_operator(self) -> Operator {
        self.op
    }

    /// Diagonal entry (occupation of basis state `i`).
    pub fn population(&self, i: usize) -> f64 {
        self.op.matrix()[(i, i)].re
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.op
            .eigh()
            .expect("validated Hermitian")
            .0
            .first()
            .copied()
            .expect("dimension ≥ 1")
    }
}

/// System dimensions and the energy scale A (in units of δ).
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub a: f64,
    pub dims: Vec<usize>,
}

impl SystemSpec {
    /// The qutrit ⊗ battery layout used by every engine.
    pub fn qutrit_battery(a: f64) -> Result<Self> {
        require_positive_scale(a)?;
        Ok(SystemSpec {
            a,
            dims: vec![3, 2],
        })
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }
}

fn require_positive_scale(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(QheError::Domain(format!(
            "energy scale A must be positive and finite, got {a}"
        )));
    }
    Ok(())
}

/// Qutrit Hamiltonian diag(−A/2, 0, A/2).
pub fn qutrit_hamiltonian(a: f64) -> Result<Operator> {
    require_positive_scale(a)?;
    Ok(Operator::diagonal(&[-a / 2.0, 0.0, a / 2.0]))
}

/// Battery Hamiltonian diag(−A/4, +A/4); the gap equals the qutrit spacing A/2.
pub fn battery_hamiltonian(a: f64) -> Result<Operator> {
    require_positive_scale(a)?;
    Ok(Operator::diagonal(&[-a / 4.0, a / 4.0]))
}

/// Gibbs state exp(−H/T)/Z. `T = +∞` yields the maximally mixed state.
///
/// Weights are computed relative to the ground energy so arbitrarily small
/// positive temperatures cannot overflow.
pub fn thermal_state(h: &Operator, temperature: f64) -> Result<DensityMatrix> {
    if temperature.is_nan() || temperature <= 0.0 {
        return Err(QheError::Domain(format!(
            "temperature must be positive (or +inf), got {temperature}"
        )));
    }
    if temperature.is_infinite() {
        return Ok(DensityMatrix::maximally_mixed(h.dim()));
    }
    let (vals, vecs) = h.eigh()?;
    let e0 = vals[0];
    let weights: Vec<f64> = vals.iter().map(|&e| (-(e - e0) / temperature).exp()).collect();
    let z: f64 = weights.iter().sum();
    let dim = h.dim();
    let mut diag = DMatrix::zeros(dim, dim);
    for (i, w) in weights.iter().enumerate() {
        diag[(i, i)] = re(w / z);
    }
    let mat = &vecs * diag * vecs.adjoint();
    DensityMatrix::new(Operator::from_matrix(mat)?)
}

/// Kronecker product; `a` is the left (slow) factor.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    Operator {
        mat: a.matrix().kronecker(b.matrix()),
    }
}

/// Partial trace over every subsystem except `keep`.
///
/// `dims` lists subsystem dimensions in kron order (their product must equal
/// the state dimension).
pub fn partial_trace(rho: &DensityMatrix, dims: &[usize], keep: usize) -> Result<DensityMatrix> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(QheError::Domain("subsystem dims must be nonempty and ≥ 1".into()));
    }
    let total: usize = dims.iter().product();
    if total != rho.dim() {
        return Err(QheError::DimensionMismatch {
            expected: rho.dim(),
            got: total,
        });
    }
    if keep >= dims.len() {
        return Err(QheError::Domain(format!(
            "keep index {keep} out of range for {} subsystems",
            dims.len()
        )));
    }
    let dk = dims[keep];
    let left: usize = dims[..keep].iter().product();
    let right: usize = dims[keep + 1..].iter().product();
    let m = rho.matrix();
    let mut out = DMatrix::zeros(dk, dk);
    for p in 0..dk {
        for q in 0..dk {
            let mut acc = C64::new(0.0, 0.0);
            for l in 0..left {
                for r in 0..right {
                    let row = (l * dk + p) * right + r;
                    let col = (l * dk + q) * right + r;
                    acc += m[(row, col)];
                }
            }
            out[(p, q)] = acc;
        }
    }
    DensityMatrix::new(Operator::from_matrix(out)?)
}

/// Conjugation by exp(−iHt) for Hermitian H.
pub fn unitary_evolve(rho: &DensityMatrix, h: &Operator, t: f64) -> Result<DensityMatrix> {
    if h.dim() != rho.dim() {
        return Err(QheError::DimensionMismatch {
            expected: rho.dim(),
            got: h.dim(),
        });
    }
    if !t.is_finite() {
        return Err(QheError::Domain(format!("evolution time must be finite, got {t}")));
    }
    let (vals, vecs) = h.eigh()?;
    let dim = h.dim();
    let mut phases = DMatrix::zeros(dim, dim);
    for (i, &e) in vals.iter().enumerate() {
        phases[(i, i)] = C64::new(0.0, -e * t).exp();
    }
    let u = &vecs * phases * vecs.adjoint();
    let mat = &u * rho.matrix() * u.adjoint();
    DensityMatrix::new(Operator::from_matrix(mat)?)
}

/// Trace distance ½‖ρ − σ‖₁ ∈ [0, 1].
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(QheError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let diff = a.operator() - b.operator();
    let vals = diff.eigh()?.0;
    Ok(0.5 * vals.iter().map(|v| v.abs()).sum::<f64>())
}

/// Re Tr(Hρ); real within 1e−10 for Hermitian inputs.
pub fn expectation(h: &Operator, rho: &DensityMatrix) -> Result<f64> {
    if h.dim() != rho.dim() {
        return Err(QheError::DimensionMismatch {
            expected: rho.dim(),
            got: h.dim(),
        });
    }
    let hm = h.matrix();
    let rm = rho.matrix();
    let dim = h.dim();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..dim {
        for k in 0..dim {
            acc += hm[(i, k)] * rm[(k, i)];
        }
    }
    Ok(acc.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    // Independent scalar Gibbs weights for diag(-1, 0, 1) at T = 1:
    // p_i = e^{-E_i} / (e + 1 + 1/e).
    fn gibbs_oracle_t1() -> [f64; 3] {
        let z = 1.0_f64.exp() + 1.0 + (-1.0_f64).exp();
        [1.0_f64.exp() / z, 1.0 / z, (-1.0_f64).exp() / z]
    }

    #[test]
    fn qutrit_levels_are_equally_spaced() {
        let h = qutrit_hamiltonian(2.0).unwrap();
        let vals = h.hermitian_eigenvalues().unwrap();
        assert!((vals[0] + 1.0).abs() < TOL);
        assert!(vals[1].abs() < TOL);
        assert!((vals[2] - 1.0).abs() < TOL);

        let h = qutrit_hamiltonian(50.0).unwrap();
        let vals = h.hermitian_eigenvalues().unwrap();
        assert!((vals[1] - vals[0] - 25.0).abs() < TOL);
        assert!((vals[2] - vals[1] - 25.0).abs() < TOL);
    }

    #[test]
    fn battery_gap_matches_qutrit_spacing() {
        let a = 4.0;
        let hb = battery_hamiltonian(a).unwrap();
        let vals = hb.hermitian_eigenvalues().unwrap();
        assert!((vals[0] + 1.0).abs() < TOL);
        assert!((vals[1] - 1.0).abs() < TOL);
        // gap A/2 == qutrit level spacing
        let hs = qutrit_hamiltonian(a).unwrap();
        let sv = hs.hermitian_eigenvalues().unwrap();
        assert!(((vals[1] - vals[0]) - (sv[1] - sv[0])).abs() < TOL);
    }

    #[test]
    fn nonpositive_scale_rejected() {
        assert!(qutrit_hamiltonian(0.0).is_err());
        assert!(qutrit_hamiltonian(-1.0).is_err());
        assert!(battery_hamiltonian(f64::NAN).is_err());
    }

    #[test]
    fn thermal_state_matches_gibbs_weights() {
        let h = Operator::diagonal(&[-1.0, 0.0, 1.0]);
        let rho = thermal_state(&h, 1.0).unwrap();
        let expect = gibbs_oracle_t1();
        for i in 0..3 {
            assert!((rho.population(i) - expect[i]).abs() < 1e-14);
        }
        // frozen values from the oracle
        assert!((rho.population(0) - 0.665240955775).abs() < 1e-9);
        assert!((rho.population(1) - 0.244728471055).abs() < 1e-9);
        assert!((rho.population(2) - 0.090030573170).abs() < 1e-9);
    }

    #[test]
    fn thermal_state_limits() {
        let h = qutrit_hamiltonian(2.0).unwrap();
        let hot = thermal_state(&h, f64::INFINITY).unwrap();
        for i in 0..3 {
            assert!((hot.population(i) - 1.0 / 3.0).abs() < TOL);
        }
        let cold = thermal_state(&h, 1e-6).unwrap();
        assert!((cold.population(0) - 1.0).abs() < TOL);
        assert!(cold.population(2).abs() < TOL);
        assert!(thermal_state(&h, 0.0).is_err());
        assert!(thermal_state(&h, -1.0).is_err());
    }

    #[test]
    fn thermal_populations_decrease_with_energy() {
        let h = qutrit_hamiltonian(3.0).unwrap();
        for t in [0.2, 1.0, 7.0, 120.0] {
            let rho = thermal_state(&h, t).unwrap();
            assert!(rho.population(0) > rho.population(1));
            assert!(rho.population(1) > rho.population(2));
        }
    }

    #[test]
    fn kron_index_convention() {
        // (|1><0| ⊗ |0><1|) must live at row 1*2+0 = 2, col 0*2+1 = 1.
        let a = Operator::transition(3, 1, 0);
        let b = Operator::transition(2, 0, 1);
        let k = kron(&a, &b);
        assert_eq!(k.dim(), 6);
        for i in 0..6 {
            for j in 0..6 {
                let expected = if (i, j) == (2, 1) { 1.0 } else { 0.0 };
                assert!((k.matrix()[(i, j)].re - expected).abs() < TOL);
            }
        }
        let id = kron(&Operator::identity(3), &Operator::identity(2));
        assert_eq!(id, Operator::identity(6));
    }

    #[test]
    fn partial_trace_recovers_product_factors() {
        let hs = qutrit_hamiltonian(2.0).unwrap();
        let hb = battery_hamiltonian(2.0).unwrap();
        let rs = thermal_state(&hs, 1.3).unwrap();
        let rb = thermal_state(&hb, 0.7).unwrap();
        let joint = DensityMatrix::new(kron(rs.operator(), rb.operator())).unwrap();
        let back_s = partial_trace(&joint, &[3, 2], 0).unwrap();
        let back_b = partial_trace(&joint, &[3, 2], 1).unwrap();
        assert!(trace_distance(&back_s, &rs).unwrap() < 1e-12);
        assert!(trace_distance(&back_b, &rb).unwrap() < 1e-12);
    }

    #[test]
    fn partial_trace_of_entangled_state_is_mixed() {
        // (|0̃0> + |1̃1>)/sqrt(2): battery marginal = I/2.
        let mut m = DMatrix::zeros(6, 6);
        let half = re(0.5);
        // |0̃0> = index 0, |1̃1> = index 3
        m[(0, 0)] = half;
        m[(0, 3)] = half;
        m[(3, 0)] = half;
        m[(3, 3)] = half;
        let rho = DensityMatrix::new(Operator::from_matrix(m).unwrap()).unwrap();
        let rb = partial_trace(&rho, &[3, 2], 1).unwrap();
        assert!((rb.population(0) - 0.5).abs() < TOL);
        assert!((rb.population(1) - 0.5).abs() < TOL);
        assert!(rb.matrix()[(0, 1)].norm() < TOL);
    }

    #[test]
    fn partial_trace_validates_dims() {
        let rho = DensityMatrix::maximally_mixed(6);
        assert!(partial_trace(&rho, &[3, 3], 0).is_err());
        assert!(partial_trace(&rho, &[3, 2], 2).is_err());
    }

    #[test]
    fn unitary_evolve_identity_at_zero_time() {
        let h = qutrit_hamiltonian(5.0).unwrap();
        let rho = thermal_state(&h, 2.0).unwrap();
        let out = unitary_evolve(&rho, &h, 0.0).unwrap();
        assert!(trace_distance(&out, &rho).unwrap() < 1e-13);
    }

    #[test]
    fn unitary_evolve_swaps_populations_under_sigma_x() {
        // H = |0><1| + |1><0|, t = π/2: full population transfer.
        let sx = &Operator::transition(2, 0, 1) + &Operator::transition(2, 1, 0);
        let rho = DensityMatrix::ground_state(2);
        let out = unitary_evolve(&rho, &sx, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(out.population(0).abs() < 1e-12);
        assert!((out.population(1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_evolve_preserves_spectrum() {
        let h = qutrit_hamiltonian(3.0).unwrap();
        let k = &Operator::transition(3, 0, 2) + &Operator::transition(3, 2, 0);
        let rho = thermal_state(&h, 1.0).unwrap();
        let out = unitary_evolve(&rho, &k, 0.77).unwrap();
        let before = rho.operator().hermitian_eigenvalues().unwrap();
        let after = out.operator().hermitian_eigenvalues().unwrap();
        for (x, y) in before.iter().zip(after.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn trace_distance_basics() {
        let g = DensityMatrix::ground_state(2);
        let e = DensityMatrix::new(Operator::transition(2, 1, 1)).unwrap();
        assert!((trace_distance(&g, &e).unwrap() - 1.0).abs() < TOL);
        assert!(trace_distance(&g, &g).unwrap() < TOL);
        let p = DensityMatrix::from_populations(&[0.7, 0.3]).unwrap();
        let q = DensityMatrix::from_populations(&[0.5, 0.5]).unwrap();
        assert!((trace_distance(&p, &q).unwrap() - 0.2).abs() < TOL);
        let r3 = DensityMatrix::maximally_mixed(3);
        assert!(trace_distance(&p, &r3).is_err());
    }

    #[test]
    fn expectation_values() {
        let h = Operator::diagonal(&[-1.0, 0.0, 1.0]);
        let rho = thermal_state(&h, 1.0).unwrap();
        let id = Operator::identity(3);
        assert!((expectation(&id, &rho).unwrap() - 1.0).abs() < TOL);
        // frozen: <H> = -(p0 - p2) with the T=1 Gibbs weights
        let p = gibbs_oracle_t1();
        let expect = -p[0] + p[2];
        assert!((expectation(&h, &rho).unwrap() - expect).abs() < 1e-14);
        assert!((expectation(&h, &rho).unwrap() + 0.575210382605).abs() < 1e-9);
        let h2 = Operator::identity(2);
        assert!(expectation(&h2, &rho).is_err());
    }

    #[test]
    fn density_matrix_validation_rejects_bad_states() {
        // non-unit trace
        let m = Operator::diagonal(&[0.6, 0.6]);
        assert!(DensityMatrix::new(m).is_err());
        // negative eigenvalue
        let m = Operator::diagonal(&[1.2, -0.2]);
        assert!(DensityMatrix::new(m).is_err());
        // non-Hermitian
        let mut raw = DMatrix::zeros(2, 2);
        raw[(0, 0)] = re(0.5);
        raw[(1, 1)] = re(0.5);
        raw[(0, 1)] = re(0.3);
        assert!(DensityMatrix::new(Operator::from_matrix(raw).unwrap()).is_err());
        // tolerance-level negativity is accepted
        let m = Operator::diagonal(&[1.0 + 1e-9, -1e-9]);
        assert!(DensityMatrix::new(m).is_ok());
    }

    #[test]
    fn system_spec_layout() {
        let spec = SystemSpec::qutrit_battery(50.0).unwrap();
        assert_eq!(spec.dims, vec![3, 2]);
        assert_eq!(spec.total_dim(), 6);
        assert!(SystemSpec::qutrit_battery(0.0).is_err());
    }
}
