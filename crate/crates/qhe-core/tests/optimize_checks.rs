//! Optimizer checks: determinism, thread-count independence, closed-form
//! argmax agreement, constraint feasibility, and sweep monotonicity.

use std::f64::consts::{FRAC_PI_2, PI};

use qhe_core::engines::EngineKind;
use qhe_core::optimize::{
    maximize_work, reported_cold_temperature, sweep_tu, OptResult, SearchBudget, SearchSpace,
};

fn small_budget() -> SearchBudget {
    SearchBudget {
        grid_per_dim: 3,
        simplex_iters: 40,
        restarts: 1,
        record_trace: false,
    }
}

fn assert_bit_identical(a: &OptResult, b: &OptResult) {
    assert_eq!(a.evaluations, b.evaluations);
    assert_eq!(
        a.best_metrics.w_battery.to_bits(),
        b.best_metrics.w_battery.to_bits()
    );
    for (x, y) in [
        (a.best_params.a, b.best_params.a),
        (a.best_params.t_h, b.best_params.t_h),
        (a.best_params.t_c, b.best_params.t_c),
        (a.best_params.lambda, b.best_params.lambda),
        (a.best_params.omega_sb, b.best_params.omega_sb),
        (a.best_params.t2, b.best_params.t2),
    ] {
        assert_eq!(x.to_bits(), y.to_bits());
    }
}

fn assert_feasible(r: &OptResult, t_u: f64) {
    let p = &r.best_params;
    assert!(p.a >= 0.0 && p.a <= 50.0 + 1e-12);
    assert!(p.t_h > 0.0 && p.t_h <= t_u + 1e-12);
    assert!(p.t_c > 0.0 && p.t_c <= p.t_h + 1e-12);
    assert!(p.lambda >= 0.0 && p.lambda <= PI + 1e-12);
    assert!(p.omega_sb >= 0.0 && p.omega_sb <= 25.0 + 1e-12);
    assert!(p.omega_sb <= 0.5 * p.a + 1e-9 * p.a.max(1.0));
    assert!(p.t2 >= 0.0 && p.t2 <= 10.0 + 1e-12);
}

#[test]
fn repeated_runs_are_bit_identical() {
    let space = SearchSpace::with_cap(8.0).unwrap();
    let budget = small_budget();
    let first = maximize_work(EngineKind::SeqFrag, &space, &budget).unwrap();
    let second = maximize_work(EngineKind::SeqFrag, &space, &budget).unwrap();
    assert_bit_identical(&first, &second);
    assert_feasible(&first, 8.0);
}

#[test]
fn thread_count_does_not_change_the_result() {
    let space = SearchSpace::with_cap(8.0).unwrap();
    let budget = small_budget();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| maximize_work(EngineKind::SeqFrag, &space, &budget).unwrap());
    let parallel = rayon::ThreadPoolBuilder::new()
        .num_threads(2)
        .build()
        .unwrap()
        .install(|| maximize_work(EngineKind::SeqFrag, &space, &budget).unwrap());
    assert_bit_identical(&serial, &parallel);
}

#[test]
fn closed_form_engine_recovers_the_analytic_argmax() {
    // The unconstrained optimum of W(A, T_H = T_U) sits at A = 2·x*·T_U with
    // x* = 1.14376589378822 (the stationary point of x(1+eˣ)/(1+eˣ+e²ˣ)), so
    // A* is interior below T_U ≈ 21.86 and pinned at 50 above.
    for (t_u, a_star) in [(12.0, 27.4503814509172), (30.0, 50.0)] {
        let space = SearchSpace::with_cap(t_u).unwrap();
        let r = maximize_work(EngineKind::SeqOut, &space, &SearchBudget::default()).unwrap();
        assert_feasible(&r, t_u);
        assert_eq!(r.best_params.t_h, t_u, "T_H must sit on the cap exactly");
        assert!(
            (r.best_params.a - a_star).abs() <= 1e-5,
            "A* = {} but expected {a_star}",
            r.best_params.a
        );
        assert!((r.best_params.lambda - FRAC_PI_2).abs() <= 1e-6);
        assert_eq!(r.best_params.t_c, reported_cold_temperature(t_u));
        let w_max =
            qhe_core::engines::analytic_seq_out_wmax(a_star, r.best_params.t_h).unwrap();
        assert!((r.best_metrics.w_battery - w_max).abs() <= 1e-6);
    }
}

#[test]
fn trace_never_beats_the_reported_best() {
    let space = SearchSpace::with_cap(20.0).unwrap();
    let budget = SearchBudget {
        record_trace: true,
        ..SearchBudget::default()
    };
    let r = maximize_work(EngineKind::SeqOut, &space, &budget).unwrap();
    let trace = r.trace.as_ref().expect("trace requested");
    assert!(!trace.is_empty());
    // The trace stores the closed-form objective while best_metrics comes from
    // re-running the full engine at the winning point; the two routes agree
    // only to a few ulps, so the comparison needs relative slack.
    let slack = 1e-12 * (1.0 + r.best_metrics.w_battery.abs());
    for (_, w) in trace {
        assert!(*w <= r.best_metrics.w_battery + slack);
    }
}

#[test]
fn optimized_sim_frag_only_dumps_heat_into_the_cold_bath() {
    let space = SearchSpace::with_cap(20.0).unwrap();
    let budget = SearchBudget {
        grid_per_dim: 3,
        ..SearchBudget::default()
    };
    let r = maximize_work(EngineKind::SimFrag, &space, &budget).unwrap();
    assert_feasible(&r, 20.0);
    assert!(r.best_metrics.w_battery > 0.0);
    assert!(
        r.best_metrics.q_cold_in_stroke1 <= 1e-9 * r.best_metrics.q_hot,
        "cold bath absorbed {:.3e} during the charging stroke",
        r.best_metrics.q_cold_in_stroke1
    );
}

#[test]
fn sweep_is_monotone_and_feasible() {
    let grid = [5.0, 10.0, 20.0, 40.0, 60.0];
    let rows = sweep_tu(
        EngineKind::SeqOut,
        &grid,
        &SearchBudget::default(),
    )
    .unwrap();
    assert_eq!(rows.len(), grid.len());
    for pair in rows.windows(2) {
        assert!(pair[1].w_m >= pair[0].w_m - 1e-6);
    }
    for row in &rows {
        assert!(row.th_star <= row.t_u + 1e-12);
        assert!(row.tc_star <= row.th_star + 1e-12);
        assert!((row.pcg - 200.0 * row.w_m / row.a_star).abs() <= 1e-9);
    }
}
