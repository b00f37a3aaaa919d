//! Battery-work maximization over engine parameters under a bath-temperature
//! cap T_U, plus sweep and comparison tables.
//!
//! Two deterministic phases: a constraint-filtered coarse grid over the free
//! dimensions of the engine kind, then Nelder-Mead refinement from the best
//! grid point in normalized [0,1] coordinates with boundary clamping (a
//! clamped coordinate denormalizes to the exact bound, so optima that sit on
//! a bound are reported exactly). Free dimensions: SeqOut (A, T_H, λ) on the
//! closed-form objective; SeqFrag (A, T_H, T_C, λ) on cycle-2 work; SimOut
//! and SimFrag (A, T_H, T_C, ω_sb, t₂) on simulated work. Constraints
//! T_C ≤ T_H and ω_sb ≤ A/2 are filtered on the grid and clamped during
//! refinement.
//!
//! Grid evaluations run in parallel; the reduction is an ordered serial
//! argmax with a lexicographic tie-break, so results are bit-identical for
//! any worker count.

use rayon::prelude::*;

use crate::engines::{analytic_seq_out, run_engine, CycleMetrics, EngineKind, EngineParams};
use crate::error::{QheError, Result};

/// Lower bound for searched temperatures and level spacings, keeping the
/// Planck occupation and Gibbs weights finite.
pub const SEARCH_FLOOR: f64 = 1e-3;

/// Closed search interval for one parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
}

impl ParamRange {
    fn validate(&self, name: &str) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() || self.lo > self.hi {
            return Err(QheError::Domain(format!(
                "search range for {name} must be finite and ordered, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    /// Maps t ∈ [0,1] into the range; t at (or beyond) an end lands on the
    /// bound exactly.
    fn denorm(&self, t: f64) -> f64 {
        if t <= 0.0 {
            self.lo
        } else if t >= 1.0 {
            self.hi
        } else {
            self.lo + t * (self.hi - self.lo)
        }
    }

    fn norm(&self, v: f64) -> f64 {
        if self.hi > self.lo {
            ((v - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0)
        } else {
            0.0
        }
    }
}

/// Box bounds for all engine parameters under one temperature cap.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub t_u: f64,
    pub a: ParamRange,
    pub t_h: ParamRange,
    pub t_c: ParamRange,
    pub lambda: ParamRange,
    pub omega_sb: ParamRange,
    pub t2: ParamRange,
}

impl SearchSpace {
    /// The standard box: A ∈ [floor, 50], T ∈ [floor, T_U], λ ∈ [0, π],
    /// ω_sb ∈ [0, 25], t₂ ∈ [0, 10].
    pub fn with_cap(t_u: f64) -> Result<Self> {
        if !(t_u >= SEARCH_FLOOR) || !t_u.is_finite() {
            return Err(QheError::Domain(format!(
                "temperature cap must be finite and at least {SEARCH_FLOOR}, got {t_u}"
            )));
        }
        let space = SearchSpace {
            t_u,
            a: ParamRange { lo: SEARCH_FLOOR, hi: 50.0 },
            t_h: ParamRange { lo: SEARCH_FLOOR, hi: t_u },
            t_c: ParamRange { lo: SEARCH_FLOOR, hi: t_u },
            lambda: ParamRange { lo: 0.0, hi: std::f64::consts::PI },
            omega_sb: ParamRange { lo: 0.0, hi: 25.0 },
            t2: ParamRange { lo: 0.0, hi: 10.0 },
        };
        space.validate()?;
        Ok(space)
    }

    pub fn validate(&self) -> Result<()> {
        self.a.validate("A")?;
        self.t_h.validate("T_H")?;
        self.t_c.validate("T_C")?;
        self.lambda.validate("lambda")?;
        self.omega_sb.validate("omega_sb")?;
        self.t2.validate("t2")?;
        if !(self.t_u > 0.0) || !self.t_u.is_finite() {
            return Err(QheError::Domain(format!(
                "temperature cap must be positive, got {}",
                self.t_u
            )));
        }
        Ok(())
    }

    fn range_of(&self, dim: Dim) -> ParamRange {
        match dim {
            Dim::A => self.a,
            Dim::Th => self.t_h,
            Dim::Tc => self.t_c,
            Dim::Lambda => self.lambda,
            Dim::OmegaSb => self.omega_sb,
            Dim::T2 => self.t2,
        }
    }
}

/// Effort knobs for one optimization.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Grid points per free dimension.
    pub grid_per_dim: usize,
    /// Nelder-Mead iterations per descent.
    pub simplex_iters: usize,
    /// Extra descents restarted around the incumbent.
    pub restarts: usize,
    /// Keep every (params, W_B) evaluation in the result.
    pub record_trace: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            grid_per_dim: 8,
            simplex_iters: 200,
            restarts: 1,
            record_trace: false,
        }
    }
}

impl SearchBudget {
    /// Coarser profile for the expensive simulated engines.
    pub fn fast() -> Self {
        SearchBudget {
            grid_per_dim: 5,
            ..SearchBudget::default()
        }
    }

    /// Minimal grid used for warm-started sweep continuation points.
    fn refine() -> Self {
        SearchBudget {
            grid_per_dim: 3,
            ..SearchBudget::default()
        }
    }
}

/// Outcome of one maximization.
#[derive(Clone, Debug)]
pub struct OptResult {
    pub best_params: EngineParams,
    pub best_metrics: CycleMetrics,
    pub evaluations: usize,
    pub trace: Option<Vec<(EngineParams, f64)>>,
}

/// One row of a T_U sweep table.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub t_u: f64,
    pub w_m: f64,
    pub pcg: f64,
    pub eta: f64,
    pub a_star: f64,
    pub th_star: f64,
    pub tc_star: f64,
    pub lambda_star: f64,
    pub omega_sb_star: f64,
    pub t2_star: f64,
    pub q_total: f64,
}

impl SweepRow {
    fn from_result(t_u: f64, r: &OptResult) -> Self {
        let p = &r.best_params;
        let m = &r.best_metrics;
        SweepRow {
            t_u,
            w_m: m.w_battery,
            pcg: m.pcg,
            eta: m.eta,
            a_star: p.a,
            th_star: p.t_h,
            tc_star: p.t_c,
            lambda_star: p.lambda,
            omega_sb_star: p.omega_sb,
            t2_star: p.t2,
            q_total: m.q_total,
        }
    }
}

/// Joined sweep tables for all four engines plus ordering checks.
#[derive(Clone, Debug)]
pub struct CompareReport {
    pub tu_grid: Vec<f64>,
    pub tables: Vec<(EngineKind, Vec<SweepRow>)>,
    /// Human-readable descriptions of every violated expectation; empty means
    /// the qualitative engine ordering holds on the whole grid.
    pub failures: Vec<String>,
}

impl CompareReport {
    pub fn ordering_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn table(&self, kind: EngineKind) -> &[SweepRow] {
        &self
            .tables
            .iter()
            .find(|(k, _)| *k == kind)
            .expect("all four kinds present")
            .1
    }
}

/// Reporting convention for the out-and-out sequential engine, whose work is
/// independent of T_C: metrics are quoted at T_C = min(15, T_U).
pub fn reported_cold_temperature(t_u: f64) -> f64 {
    t_u.min(15.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dim {
    A,
    Th,
    Tc,
    Lambda,
    OmegaSb,
    T2,
}

fn free_dims(kind: EngineKind) -> &'static [Dim] {
    match kind {
        EngineKind::SeqOut => &[Dim::A, Dim::Th, Dim::Lambda],
        EngineKind::SeqFrag => &[Dim::A, Dim::Th, Dim::Tc, Dim::Lambda],
        EngineKind::SimOut | EngineKind::SimFrag => {
            &[Dim::A, Dim::Th, Dim::Tc, Dim::OmegaSb, Dim::T2]
        }
    }
}

/// Builds concrete engine parameters from a normalized point, applying the
/// coupling constraints by clamping (T_C ← min(T_C, T_H), ω_sb ← min(ω_sb, A/2)).
fn params_from_point(kind: EngineKind, space: &SearchSpace, point: &[f64]) -> EngineParams {
    let dims = free_dims(kind);
    debug_assert_eq!(dims.len(), point.len());
    let mut a = 0.0;
    let mut t_h = 0.0;
    let mut t_c = f64::NAN;
    let mut lambda = 0.0;
    let mut omega_sb = 0.0;
    let mut t2 = 0.0;
    for (dim, &t) in dims.iter().zip(point) {
        let v = space.range_of(*dim).denorm(t.clamp(0.0, 1.0));
        match dim {
            Dim::A => a = v,
            Dim::Th => t_h = v,
            Dim::Tc => t_c = v,
            Dim::Lambda => lambda = v,
            Dim::OmegaSb => omega_sb = v,
            Dim::T2 => t2 = v,
        }
    }
    if t_c.is_nan() {
        t_c = reported_cold_temperature(space.t_u);
    }
    t_c = t_c.min(t_h);
    omega_sb = omega_sb.min(a / 2.0);
    match kind {
        EngineKind::SeqOut => EngineParams::seq_out(a, t_h, t_c, lambda),
        EngineKind::SeqFrag => EngineParams::seq_frag(a, t_h, t_c, lambda),
        EngineKind::SimOut => EngineParams::sim_out(a, t_h, t_c, omega_sb, t2),
        EngineKind::SimFrag => EngineParams::sim_frag(a, t_h, t_c, omega_sb, t2),
    }
}

fn normalized_seed(kind: EngineKind, space: &SearchSpace, params: &EngineParams) -> Vec<f64> {
    free_dims(kind)
        .iter()
        .map(|dim| {
            let range = space.range_of(*dim);
            match dim {
                Dim::A => range.norm(params.a),
                Dim::Th => range.norm(params.t_h),
                Dim::Tc => range.norm(params.t_c),
                Dim::Lambda => range.norm(params.lambda),
                Dim::OmegaSb => range.norm(params.omega_sb),
                Dim::T2 => range.norm(params.t2),
            }
        })
        .collect()
}

/// Battery work at a candidate; evaluation failures score −∞ so the search
/// simply routes around numerically infeasible corners.
fn objective(kind: EngineKind, space: &SearchSpace, point: &[f64]) -> f64 {
    let params = params_from_point(kind, space, point);
    let w = match kind {
        EngineKind::SeqOut => {
            analytic_seq_out(params.a, params.t_h, params.t_c, params.lambda).map(|(_, w)| w)
        }
        _ => run_engine(&params).map(|out| out.headline().w_battery),
    };
    w.unwrap_or(f64::NEG_INFINITY)
}

/// True when the raw (unclamped) grid coordinates already satisfy the
/// coupling constraints, so the point is not a duplicate of a clamped one.
fn grid_feasible(kind: EngineKind, space: &SearchSpace, point: &[f64]) -> bool {
    let dims = free_dims(kind);
    let mut a = f64::NAN;
    let mut t_h = f64::NAN;
    let mut t_c = f64::NAN;
    let mut omega_sb = f64::NAN;
    for (dim, &t) in dims.iter().zip(point) {
        let v = space.range_of(*dim).denorm(t);
        match dim {
            Dim::A => a = v,
            Dim::Th => t_h = v,
            Dim::Tc => t_c = v,
            Dim::OmegaSb => omega_sb = v,
            _ => {}
        }
    }
    if !t_c.is_nan() && t_c > t_h {
        return false;
    }
    if !omega_sb.is_nan() && omega_sb > a / 2.0 {
        return false;
    }
    true
}

fn lexicographically_before(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// Maximizes battery work for `kind` inside `space`.
pub fn maximize_work(
    kind: EngineKind,
    space: &SearchSpace,
    budget: &SearchBudget,
) -> Result<OptResult> {
    maximize_work_seeded(kind, space, budget, &[])
}

/// As [`maximize_work`], with extra starting candidates (e.g. the previous
/// sweep point's optimum) evaluated alongside the grid.
pub fn maximize_work_seeded(
    kind: EngineKind,
    space: &SearchSpace,
    budget: &SearchBudget,
    seeds: &[EngineParams],
) -> Result<OptResult> {
    space.validate()?;
    if budget.grid_per_dim < 2 {
        return Err(QheError::Optimization(format!(
            "grid needs at least 2 points per dimension, got {}",
            budget.grid_per_dim
        )));
    }
    let dims = free_dims(kind);
    let d = dims.len();
    let n = budget.grid_per_dim;

    let mut candidates: Vec<Vec<f64>> = Vec::new();
    let mut index = vec![0usize; d];
    loop {
        let point: Vec<f64> = index
            .iter()
            .map(|&i| i as f64 / (n - 1) as f64)
            .collect();
        if grid_feasible(kind, space, &point) {
            candidates.push(point);
        }
        let mut carry = d;
        for k in (0..d).rev() {
            index[k] += 1;
            if index[k] < n {
                carry = k;
                break;
            }
            index[k] = 0;
        }
        if carry == d {
            break;
        }
    }
    for seed in seeds {
        candidates.push(normalized_seed(kind, space, seed));
    }
    if candidates.is_empty() {
        return Err(QheError::Optimization(
            "no feasible grid candidate in the search space".to_string(),
        ));
    }

    // Ordered parallel map, then a serial argmax with a lexicographic
    // tie-break: bit-identical for any worker count.
    let scores: Vec<f64> = candidates
        .par_iter()
        .map(|point| objective(kind, space, point))
        .collect();
    let mut evaluations = candidates.len();
    let mut trace: Option<Vec<(EngineParams, f64)>> = budget.record_trace.then(Vec::new);
    if let Some(t) = trace.as_mut() {
        for (point, &w) in candidates.iter().zip(&scores) {
            t.push((params_from_point(kind, space, point), w));
        }
    }
    let mut best_idx = 0usize;
    for i in 1..candidates.len() {
        let better = scores[i] > scores[best_idx]
            || (scores[i] == scores[best_idx]
                && lexicographically_before(&candidates[i], &candidates[best_idx]));
        if better {
            best_idx = i;
        }
    }
    if scores[best_idx] == f64::NEG_INFINITY {
        return Err(QheError::Optimization(
            "every candidate evaluation failed".to_string(),
        ));
    }

    let mut best_x = candidates[best_idx].clone();
    let mut best_f = scores[best_idx];
    let mut radius = 0.15;
    for _ in 0..=budget.restarts {
        let mut eval = |x: &[f64]| {
            evaluations += 1;
            let w = objective(kind, space, x);
            if let Some(t) = trace.as_mut() {
                t.push((params_from_point(kind, space, x), w));
            }
            -w
        };
        let (x, neg_f) = nelder_mead(&best_x, radius, budget.simplex_iters, &mut eval);
        if -neg_f > best_f || (-neg_f == best_f && lexicographically_before(&x, &best_x)) {
            best_x = x;
            best_f = -neg_f;
        }
        radius = 0.05;
    }

    let best_params = params_from_point(kind, space, &best_x);
    let best_metrics = *run_engine(&best_params)?.headline();
    Ok(OptResult {
        best_params,
        best_metrics,
        evaluations,
        trace,
    })
}

/// Standard Nelder-Mead on [0,1]^d (reflection 1, expansion 2, contraction
/// 0.5, shrink 0.5), clamping every proposal into the box. Minimizes `f`.
fn nelder_mead(
    x0: &[f64],
    radius: f64,
    max_iters: usize,
    f: &mut impl FnMut(&[f64]) -> f64,
) -> (Vec<f64>, f64) {
    let d = x0.len();
    let clamp = |x: &mut Vec<f64>| {
        for v in x.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let mut base = x0.to_vec();
    clamp(&mut base);
    let fb = f(&base);
    simplex.push((base.clone(), fb));
    for i in 0..d {
        let mut v = base.clone();
        v[i] = if v[i] + radius <= 1.0 {
            v[i] + radius
        } else {
            (v[i] - radius).max(0.0)
        };
        let fv = f(&v);
        simplex.push((v, fv));
    }

    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0_f64, f64::max);
        let f_spread = (simplex[d].1 - simplex[0].1).abs();
        if diameter < 1e-10 && f_spread <= 1e-13 * (1.0 + simplex[0].1.abs()) {
            break;
        }

        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / d as f64;
            }
        }
        let worst = simplex[d].clone();
        let second_worst_f = simplex[d - 1].1;

        let mut reflected: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(c, w)| c + (c - w))
            .collect();
        clamp(&mut reflected);
        let fr = f(&reflected);

        if fr < simplex[0].1 {
            let mut expanded: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + 2.0 * (c - w))
                .collect();
            clamp(&mut expanded);
            let fe = f(&expanded);
            simplex[d] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < second_worst_f {
            simplex[d] = (reflected, fr);
        } else {
            let toward = if fr < worst.1 { &reflected } else { &worst.0 };
            let mut contracted: Vec<f64> = centroid
                .iter()
                .zip(toward)
                .map(|(c, t)| c + 0.5 * (t - c))
                .collect();
            clamp(&mut contracted);
            let fc = f(&contracted);
            if fc < worst.1.min(fr) {
                simplex[d] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let mut shrunk: Vec<f64> = best
                        .iter()
                        .zip(&entry.0)
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    clamp(&mut shrunk);
                    let fs = f(&shrunk);
                    *entry = (shrunk, fs);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    (x, fx)
}

/// Optimizes at every cap in `tu_grid` (ascending), warm-starting each point
/// from its predecessor's optimum so the reported maxima are non-decreasing.
pub fn sweep_tu(
    kind: EngineKind,
    tu_grid: &[f64],
    budget: &SearchBudget,
) -> Result<Vec<SweepRow>> {
    if tu_grid.is_empty() {
        return Err(QheError::Domain("empty temperature-cap grid".to_string()));
    }
    if tu_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QheError::Domain(
            "temperature-cap grid must be strictly ascending".to_string(),
        ));
    }
    let mut rows = Vec::with_capacity(tu_grid.len());
    let mut prev_best: Option<EngineParams> = None;
    for &t_u in tu_grid {
        let space = SearchSpace::with_cap(t_u)?;
        let result = match &prev_best {
            None => maximize_work(kind, &space, budget)?,
            Some(prev) => {
                // the previous optimum stays feasible (the box only grows),
                // plus a variant pushed to the new temperature cap
                let mut pushed = *prev;
                pushed.t_h = t_u;
                pushed.t_c = pushed.t_c.min(t_u);
                let seeds = [*prev, pushed];
                maximize_work_seeded(kind, &space, &SearchBudget::refine(), &seeds)?
            }
        };
        prev_best = Some(result.best_params);
        rows.push(SweepRow::from_result(t_u, &result));
    }
    Ok(rows)
}

/// Sweeps all four engines over one grid and checks the qualitative
/// performance ordering the coherent dynamics dictates: the two all-pairs
/// engines agree on work within 15% (the optimizer phase-locks the
/// simultaneous coupling onto the same population swap the sequential work
/// stroke performs) and both beat the fragmented engines, with
/// W(SeqFrag) ≥ W(SimFrag); on efficiency both simultaneous engines sit
/// above the η(SeqFrag) ≈ 1/2 plateau and η(SeqOut) ≈ 1.
pub fn compare_engines(tu_grid: &[f64], budget: &SearchBudget) -> Result<CompareReport> {
    compare_engine_subset(&EngineKind::ALL, tu_grid, budget)
}

/// [`compare_engines`] restricted to a subset of engines: only the ordering
/// expectations whose engines are all present are checked. Duplicates are
/// collapsed and the canonical engine order is kept.
pub fn compare_engine_subset(
    kinds: &[EngineKind],
    tu_grid: &[f64],
    budget: &SearchBudget,
) -> Result<CompareReport> {
    let selected: Vec<EngineKind> = EngineKind::ALL
        .into_iter()
        .filter(|k| kinds.contains(k))
        .collect();
    if selected.is_empty() {
        return Err(QheError::Domain("no engines selected".to_string()));
    }
    let mut tables = Vec::with_capacity(selected.len());
    for kind in selected {
        tables.push((kind, sweep_tu(kind, tu_grid, budget)?));
    }
    let report = CompareReport {
        tu_grid: tu_grid.to_vec(),
        failures: ordering_failures(tu_grid, &tables),
        tables,
    };
    Ok(report)
}

fn ordering_failures(tu_grid: &[f64], tables: &[(EngineKind, Vec<SweepRow>)]) -> Vec<String> {
    let by = |kind: EngineKind| {
        tables
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, rows)| rows.as_slice())
    };
    let seq_out = by(EngineKind::SeqOut);
    let seq_frag = by(EngineKind::SeqFrag);
    let sim_out = by(EngineKind::SimOut);
    let sim_frag = by(EngineKind::SimFrag);
    let mut failures = Vec::new();
    for (i, &t_u) in tu_grid.iter().enumerate() {
        if let (Some(so), Some(sf)) = (seq_out, seq_frag) {
            let (wso, wsf) = (so[i].w_m, sf[i].w_m);
            if wso < wsf * (1.0 - 1e-9) {
                failures.push(format!(
                    "T_U={t_u}: W(seq-out)={wso:.6} below W(seq-frag)={wsf:.6}"
                ));
            }
        }
        if let (Some(so), Some(mo)) = (seq_out, sim_out) {
            let (wso, wmo) = (so[i].w_m, mo[i].w_m);
            let scale = wso.max(wmo);
            if scale <= 0.0 || (wso - wmo).abs() > 0.15 * scale {
                failures.push(format!(
                    "T_U={t_u}: W(seq-out)={wso:.6} not within 15% of W(sim-out)={wmo:.6}"
                ));
            }
        }
        if let (Some(mo), Some(mf)) = (sim_out, sim_frag) {
            let (wmo, wmf) = (mo[i].w_m, mf[i].w_m);
            if wmo < wmf * (1.0 - 1e-9) {
                failures.push(format!(
                    "T_U={t_u}: W(sim-out)={wmo:.6} below W(sim-frag)={wmf:.6}"
                ));
            }
        }
        if let (Some(sf), Some(mf)) = (seq_frag, sim_frag) {
            let (wsf, wmf) = (sf[i].w_m, mf[i].w_m);
            if wsf < wmf * (1.0 - 1e-9) {
                failures.push(format!(
                    "T_U={t_u}: W(seq-frag)={wsf:.6} below W(sim-frag)={wmf:.6}"
                ));
            }
        }
        if let (Some(mo), Some(sf)) = (sim_out, seq_frag) {
            let (wmo, wsf) = (mo[i].w_m, sf[i].w_m);
            if wmo < wsf * (1.0 - 1e-9) {
                failures.push(format!(
                    "T_U={t_u}: W(sim-out)={wmo:.6} below W(seq-frag)={wsf:.6}"
                ));
            }
        }
        if let (Some(mf), Some(sf)) = (sim_frag, seq_frag) {
            let (emf, esf) = (mf[i].eta, sf[i].eta);
            if emf <= esf {
                failures.push(format!(
                    "T_U={t_u}: efficiency ordering sim-frag({emf:.4}) > seq-frag({esf:.4}) violated"
                ));
            }
        }
        if let (Some(mo), Some(sf)) = (sim_out, seq_frag) {
            let (emo, esf) = (mo[i].eta, sf[i].eta);
            if emo <= esf {
                failures.push(format!(
                    "T_U={t_u}: efficiency ordering sim-out({emo:.4}) > seq-frag({esf:.4}) violated"
                ));
            }
        }
        if let Some(sf) = seq_frag {
            let esf = sf[i].eta;
            if (esf - 0.5).abs() > 0.02 {
                failures.push(format!(
                    "T_U={t_u}: seq-frag efficiency {esf:.4} leaves the 0.50±0.02 plateau"
                ));
            }
        }
        if let Some(so) = seq_out {
            let eso = so[i].eta;
            if (eso - 1.0).abs() > 0.02 {
                failures.push(format!(
                    "T_U={t_u}: seq-out efficiency {eso:.4} leaves the 1.00±0.02 plateau"
                ));
            }
        }
    }
    failures
}
