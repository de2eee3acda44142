//! Progressive-sampling driver with pluggable bound variants.
//!
//! Each iteration halves the confidence budget (`delta_i = delta / 2^i`, so
//! the union over iterations stays below `delta`), grows the sample to the
//! scheduled size by appending new hyper-edge columns (signs attached to a
//! sample index never change), reruns greedy coverage, evaluates the
//! variant's supremum-deviation bound, and stops once the certified
//! approximation condition holds:
//!
//! ```text
//! (1 - 1/e) [ (1 - 1/e - eps) xi + eta ] <= eps * C_H(S)
//! ```
//!
//! Variants: `centra` (AMCERA-based eta), `centra-vc` (VC epsilon-sample
//! bound), `hedge-p` (Hoeffding + union bound with the classic
//! `SD <= eps C(S*) / 2` test), and `fixed-m` (no stopping; one evaluation of
//! every bound family on a shared sample, for bound-comparison reports).

use std::time::Instant;

use serde::Serialize;

use crate::bounds::{self, BoundReport, ONE_MINUS_INV_E};
use crate::error::{Error, Result};
use crate::graph::{vertex_diameter_exact, Graph};
use crate::greedy::greedy_cover;
use crate::rademacher::RademacherState;
use crate::sampler::Sample;

/// Largest graph for which the engine computes the vertex diameter itself
/// when a VC bound needs `b` and the caller did not supply one.
const AUTO_DIAMETER_LIMIT: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Centra,
    CentraVc,
    HedgeP,
    FixedM,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Centra => "centra",
            Variant::CentraVc => "centra-vc",
            Variant::HedgeP => "hedge-p",
            Variant::FixedM => "fixed-m",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "centra" => Ok(Variant::Centra),
            "centra-vc" => Ok(Variant::CentraVc),
            "hedge-p" => Ok(Variant::HedgeP),
            "fixed-m" => Ok(Variant::FixedM),
            other => Err(Error::invalid(format!("unknown variant {other:?}"))),
        }
    }
}

/// Run parameters. `eps` must lie in `(0, 1 - 1/e)` and `alpha > 1`.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub k: usize,
    pub eps: f64,
    pub delta: f64,
    pub t: usize,
    pub variant: Variant,
    pub seed: u64,
    /// Geometric growth factor of the sampling schedule.
    pub alpha: f64,
    /// Hard sample cap; defaults to the VC sample-size bound when `b` is
    /// known, otherwise runs are capped by `max_iterations` alone.
    pub m_max: Option<u64>,
    /// First-iteration sample size; solved from the optimistic bound target
    /// `eta_opt(m) = eps / 2` when unset.
    pub m_first: Option<u64>,
    /// Sample size for the fixed-m report mode.
    pub fixed_m: Option<u64>,
    /// Upper bound on hyper-edge size (vertex diameter for set betweenness);
    /// required by the VC bounds on graphs too large for exact computation.
    pub b: Option<u64>,
    /// Lower bound on the optimum centrality used by the VC sample-size cap.
    pub c_star_lower: f64,
    /// Absolute constant of the relative-approximation theorem.
    pub c_const: f64,
    pub max_iterations: usize,
}

impl RunConfig {
    pub fn new(k: usize, eps: f64, delta: f64, variant: Variant, seed: u64) -> Self {
        RunConfig {
            k,
            eps,
            delta,
            t: 100,
            variant,
            seed,
            alpha: 1.2,
            m_max: None,
            m_first: None,
            fixed_m: None,
            b: None,
            c_star_lower: 0.5,
            c_const: 0.5,
            max_iterations: 48,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::invalid("k must be at least 1"));
        }
        if !(self.eps > 0.0 && self.eps < ONE_MINUS_INV_E) {
            return Err(Error::invalid(format!(
                "eps must be in (0, 1 - 1/e), got {}",
                self.eps
            )));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::invalid(format!(
                "delta must be in (0,1), got {}",
                self.delta
            )));
        }
        if self.t < 1 {
            return Err(Error::invalid("t must be at least 1"));
        }
        if self.alpha <= 1.0 {
            return Err(Error::invalid("alpha must exceed 1"));
        }
        if !(self.c_star_lower > 0.0 && self.c_star_lower <= 1.0) {
            return Err(Error::invalid("c_star_lower must be in (0,1]"));
        }
        if self.c_const <= 0.0 {
            return Err(Error::invalid("c_const must be positive"));
        }
        if self.variant == Variant::FixedM && self.fixed_m.is_none() {
            return Err(Error::invalid("fixed-m variant needs fixed_m"));
        }
        if self.max_iterations < 1 {
            return Err(Error::invalid("max_iterations must be at least 1"));
        }
        Ok(())
    }
}

/// One row of the per-iteration trace.
#[derive(Debug, Clone, Serialize)]
pub struct IterationRecord {
    pub iter: usize,
    pub m: u64,
    pub delta_i: f64,
    pub report: BoundReport,
    pub stopped: bool,
    /// The inequality this iteration actually evaluated, for auditability.
    pub stop_rule: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub variant: Variant,
    /// Chosen nodes as external labels.
    pub nodes: Vec<u64>,
    /// Chosen nodes as dense internal ids.
    pub node_ids: Vec<u32>,
    pub c_hat: f64,
    pub total_samples: u64,
    /// True when the stopping condition certified the approximation.
    pub certified: bool,
    /// True when the sample budget (m_max or max_iterations) ran out first.
    pub budget_exhausted: bool,
    pub trace: Vec<IterationRecord>,
    pub seconds: f64,
}

impl RunResult {
    /// Fixed-header CSV trace
    /// (`iter,m,delta_i,amcera,wimpy,r_tilde,r_cap,nu,xi,eta,c_hat,stopped,seconds`).
    pub fn trace_csv(&self) -> String {
        let mut out = String::from(TRACE_CSV_HEADER);
        out.push('\n');
        let cell = |v: Option<f64>| v.map(|x| format!("{x}")).unwrap_or_default();
        for rec in &self.trace {
            let r = &rec.report;
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                rec.iter,
                rec.m,
                rec.delta_i,
                cell(r.amcera),
                cell(r.wimpy),
                cell(r.r_tilde),
                cell(r.r_cap),
                cell(r.nu),
                cell(r.xi),
                cell(variant_sd_bound(r)),
                r.c_hat,
                rec.stopped,
                rec.seconds,
            ));
        }
        out
    }
}

pub const TRACE_CSV_HEADER: &str =
    "iter,m,delta_i,amcera,wimpy,r_tilde,r_cap,nu,xi,eta,c_hat,stopped,seconds";

/// The supremum-deviation bound a report certifies, whichever family
/// produced it.
pub fn variant_sd_bound(report: &BoundReport) -> Option<f64> {
    report.eta.or(report.eps_vc).or(report.eta_ub)
}

/// Literal stopping comparison of the progressive algorithm:
/// `(1 - 1/e) [ (1 - 1/e - eps) xi + eta ] <= eps c_hat`.
pub fn stopping_condition(c_hat: f64, xi: f64, eta: f64, eps: f64) -> bool {
    ONE_MINUS_INV_E * ((ONE_MINUS_INV_E - eps) * xi + eta) <= eps * c_hat
}

/// HEDGE-P stopping test. The paper's rule `SD <= eps C(S*) / 2` needs the
/// unknown `C(S*)`; we certify it through the sandwich
/// `C(S*) >= C(S) >= C_H(S) - eta_ub`, i.e. stop when
/// `2 eta_ub <= eps (C_H(S) - eta_ub)`.
pub fn hedge_stopping_condition(c_hat: f64, eta_ub: f64, eps: f64) -> bool {
    2.0 * eta_ub <= eps * (c_hat - eta_ub)
}

// ============================================================================
// Sampling schedule
// ============================================================================

/// Everything the schedule needs to know about the run.
#[derive(Debug, Clone)]
pub struct ScheduleContext {
    pub variant: Variant,
    pub eps: f64,
    pub alpha: f64,
    pub k: u64,
    pub n: u64,
    /// VC dimension bound, for the centra-vc target.
    pub dk: Option<f64>,
    pub c_const: f64,
    pub m_first: Option<u64>,
}

/// Optimistic supremum-deviation bound at (real-valued) sample size `m`,
/// used only to aim the schedule.
fn sd_optimistic(ctx: &ScheduleContext, m: f64, delta_i: f64) -> f64 {
    match ctx.variant {
        Variant::Centra | Variant::FixedM => {
            // Eq. (5) at r_tilde = 0, nu = 1.
            let l = (5.0 / delta_i).ln();
            let r_cap = 2.0 * l / m;
            2.0 * r_cap + (2.0 * l * (1.0 + 4.0 * r_cap) / m).sqrt() + l / (3.0 * m)
        }
        Variant::CentraVc => {
            bounds::sd_bound_vc_unchecked(ctx.dk.unwrap_or(1.0), m, delta_i / 2.0, ctx.c_const)
        }
        Variant::HedgeP => bounds::sd_bound_union_unchecked(ctx.n, ctx.k, m, delta_i),
    }
}

fn xi_log_term(variant: Variant, delta_i: f64) -> f64 {
    match variant {
        // Five-way budget split of the deviation chain.
        Variant::Centra | Variant::FixedM => (5.0 / delta_i).ln(),
        // Two events: the VC bound and the optimum upper bound.
        Variant::CentraVc => (2.0 / delta_i).ln(),
        Variant::HedgeP => (2.0 / delta_i).ln(),
    }
}

/// Smallest `m >= 1` with `f(m) <= 0`, for `f` strictly decreasing; `None`
/// when no bracket exists.
fn solve_min_m(f: impl Fn(f64) -> f64) -> Option<f64> {
    let mut lo = 1.0f64;
    if f(lo) <= 0.0 {
        return Some(1.0);
    }
    let mut hi = 2.0f64;
    let mut guard = 0;
    while f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        guard += 1;
        if guard > 60 {
            return None;
        }
    }
    for _ in 0..64 {
        if (hi - lo) / hi < 1e-6 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Next sample size: `max(ceil(alpha * prev_m), m_opt)`, where `m_opt`
/// solves the stopping condition for equality using the optimistic bound and
/// the last observed coverage (1 on the first iteration). Falls back to the
/// pure geometric step when the solve does not bracket. The first iteration
/// instead solves `sd_opt(m) = eps / 2`.
pub fn sampling_schedule(
    prev_m: u64,
    last_c_hat: Option<f64>,
    delta_i: f64,
    ctx: &ScheduleContext,
) -> u64 {
    if prev_m == 0 {
        if let Some(first) = ctx.m_first {
            return first.max(1);
        }
        let target = ctx.eps / 2.0;
        return solve_min_m(|m| sd_optimistic(ctx, m, delta_i) - target)
            .map(|m| m.ceil() as u64)
            .unwrap_or(1)
            .max(1);
    }
    let geometric = (ctx.alpha * prev_m as f64).ceil() as u64;
    let c_hat_est = last_c_hat.unwrap_or(1.0);
    let margin = |m: f64| -> f64 {
        let sd = sd_optimistic(ctx, m, delta_i);
        match ctx.variant {
            Variant::HedgeP => 2.0 * sd - ctx.eps * (c_hat_est - sd),
            _ => {
                let xi = bounds::xi_with_log_term(c_hat_est, m, xi_log_term(ctx.variant, delta_i));
                ONE_MINUS_INV_E * ((ONE_MINUS_INV_E - ctx.eps) * xi + sd) - ctx.eps * c_hat_est
            }
        }
    };
    let m_opt = if c_hat_est > 0.0 {
        solve_min_m(margin).map(|m| m.ceil() as u64)
    } else {
        None
    };
    geometric.max(m_opt.unwrap_or(0)).max(prev_m + 1)
}

// ============================================================================
// Driver
// ============================================================================

struct VcParams {
    d1: u32,
    dk: f64,
}

fn vc_params(g: &Graph, cfg: &RunConfig) -> Result<Option<VcParams>> {
    let b = match cfg.b {
        Some(b) => Some(b),
        None if g.n() <= AUTO_DIAMETER_LIMIT => Some(vertex_diameter_exact(g) as u64),
        None => None,
    };
    match b {
        None => Ok(None),
        Some(b) => {
            // A zero diameter (every reachable pair adjacent) still admits
            // the trivial bound b = 1.
            let b = b.max(1);
            let d1 = bounds::vc_dim_1_bound(b)?;
            let dk = bounds::vc_dim_k_bound(d1, cfg.k as u64)?;
            Ok(Some(VcParams { d1, dk }))
        }
    }
}

/// Runs the progressive maximization (or the fixed-m report mode) on `g`.
pub fn run(g: &Graph, cfg: &RunConfig) -> Result<RunResult> {
    cfg.validate()?;
    if g.n() < 2 {
        return Err(Error::invalid("graph must have at least two nodes"));
    }
    let run_start = Instant::now();
    let vc = match cfg.variant {
        Variant::CentraVc => {
            let p = vc_params(g, cfg)?;
            if p.is_none() {
                return Err(Error::invalid(
                    "centra-vc needs a vertex-diameter bound: pass b for large graphs",
                ));
            }
            p
        }
        Variant::FixedM => vc_params(g, cfg)?,
        _ => match cfg.b {
            Some(_) => vc_params(g, cfg)?,
            None => None,
        },
    };
    // Default cap: the VC sufficient sample size, when b is known.
    let m_cap: Option<u64> = match cfg.variant {
        Variant::FixedM => cfg.fixed_m,
        _ => match (cfg.m_max, &vc) {
            (Some(cap), _) => Some(cap),
            (None, Some(p)) => Some(bounds::sample_size_vc(
                p.dk,
                cfg.delta,
                cfg.eps,
                cfg.c_star_lower,
                cfg.c_const,
            )?),
            (None, None) => None,
        },
    };
    let ctx = ScheduleContext {
        variant: cfg.variant,
        eps: cfg.eps,
        alpha: cfg.alpha,
        k: cfg.k as u64,
        n: g.n() as u64,
        dk: vc.as_ref().map(|p| p.dk),
        c_const: cfg.c_const,
        m_first: cfg.m_first,
    };
    let needs_amcera = matches!(cfg.variant, Variant::Centra | Variant::FixedM);
    let mut sample = Sample::new(cfg.seed);
    let mut state = RademacherState::new(cfg.t, cfg.seed)?;
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut last_c_hat: Option<f64> = None;
    let mut chosen: Vec<u32> = Vec::new();
    let mut certified = false;
    let mut budget_exhausted = false;

    for iter in 1..=cfg.max_iterations {
        let iter_start = Instant::now();
        let delta_i = match cfg.variant {
            // The report mode performs a single evaluation at full budget.
            Variant::FixedM => cfg.delta,
            _ => cfg.delta / 2f64.powi(iter as i32),
        };
        let prev_m = sample.m() as u64;
        let mut target = match cfg.variant {
            Variant::FixedM => cfg.fixed_m.unwrap(),
            _ => sampling_schedule(prev_m, last_c_hat, delta_i, &ctx),
        };
        let mut clamped = false;
        if let Some(cap) = m_cap {
            if target >= cap {
                target = cap;
                clamped = true;
            }
        }
        if target <= prev_m {
            budget_exhausted = true;
            break;
        }
        sample.grow(g, target as usize);
        if needs_amcera {
            state.extend(&sample.edges()[prev_m as usize..], prev_m as usize)?;
        }
        let greedy = greedy_cover(cfg.k, &sample)?;
        let c_hat = greedy.coverage;
        chosen = greedy.nodes;
        last_c_hat = Some(c_hat);

        let mut report = BoundReport::new(target, cfg.t as u64, cfg.k as u64, delta_i, c_hat);
        if let Some(p) = &vc {
            report.d1 = Some(p.d1);
            report.dk = Some(p.dk);
        }
        let (stopped, stop_rule) = match cfg.variant {
            Variant::Centra | Variant::FixedM => {
                let amcera = state.amcera(cfg.k);
                let wimpy = state.wimpy_variance(cfg.k);
                let breakdown = bounds::eta(amcera, wimpy, cfg.t as u64, target, delta_i, c_hat)?;
                let xi = bounds::xi(c_hat, target, delta_i)?;
                report.amcera = Some(amcera);
                report.wimpy = Some(wimpy);
                report.r_tilde = Some(breakdown.r_tilde);
                report.r_cap = Some(breakdown.r_cap);
                report.nu = Some(breakdown.nu);
                report.xi = Some(xi);
                report.eta = Some(breakdown.eta);
                if cfg.variant == Variant::FixedM {
                    // Report mode also evaluates the baselines on the shared
                    // sample, at the same full budget.
                    report.eta_ub = Some(bounds::sd_bound_union(
                        g.n() as u64,
                        cfg.k as u64,
                        target,
                        delta_i,
                    )?);
                    if let Some(p) = &vc {
                        report.eps_vc =
                            Some(bounds::sd_bound_vc(p.dk, target, delta_i, cfg.c_const)?);
                    }
                    (true, "fixed-m report, no stopping test".to_string())
                } else {
                    let stop = stopping_condition(c_hat, xi, breakdown.eta, cfg.eps);
                    (
                        stop,
                        format!(
                            "(1-1/e)[(1-1/e-eps)*xi + eta] <= eps*c_hat: \
                             {:.6e} <= {:.6e}",
                            ONE_MINUS_INV_E * ((ONE_MINUS_INV_E - cfg.eps) * xi + breakdown.eta),
                            cfg.eps * c_hat
                        ),
                    )
                }
            }
            Variant::CentraVc => {
                let p = vc.as_ref().unwrap();
                let eps_vc = bounds::sd_bound_vc(p.dk, target, delta_i / 2.0, cfg.c_const)?;
                let xi =
                    bounds::xi_with_log_term(c_hat, target as f64, (2.0 / delta_i).ln());
                report.eps_vc = Some(eps_vc);
                report.xi = Some(xi);
                let stop = stopping_condition(c_hat, xi, eps_vc, cfg.eps);
                (
                    stop,
                    format!(
                        "(1-1/e)[(1-1/e-eps)*xi + eps_vc] <= eps*c_hat: {:.6e} <= {:.6e}",
                        ONE_MINUS_INV_E * ((ONE_MINUS_INV_E - cfg.eps) * xi + eps_vc),
                        cfg.eps * c_hat
                    ),
                )
            }
            Variant::HedgeP => {
                let eta_ub =
                    bounds::sd_bound_union(g.n() as u64, cfg.k as u64, target, delta_i)?;
                report.eta_ub = Some(eta_ub);
                let stop = hedge_stopping_condition(c_hat, eta_ub, cfg.eps);
                (
                    stop,
                    format!(
                        "2*eta_ub <= eps*(c_hat - eta_ub): {:.6e} <= {:.6e}",
                        2.0 * eta_ub,
                        cfg.eps * (c_hat - eta_ub)
                    ),
                )
            }
        };
        debug_assert!(report.invariants_hold());
        trace.push(IterationRecord {
            iter,
            m: target,
            delta_i,
            report,
            stopped,
            stop_rule,
            seconds: iter_start.elapsed().as_secs_f64(),
        });
        if stopped {
            certified = cfg.variant != Variant::FixedM;
            break;
        }
        if clamped {
            budget_exhausted = true;
            break;
        }
        if iter == cfg.max_iterations {
            budget_exhausted = true;
        }
    }
    Ok(RunResult {
        variant: cfg.variant,
        nodes: chosen.iter().map(|&u| g.label(u)).collect(),
        node_ids: chosen,
        c_hat: last_c_hat.unwrap_or(0.0),
        total_samples: sample.m() as u64,
        certified,
        budget_exhausted,
        trace,
        seconds: run_start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic;

    #[test]
    fn stopping_condition_examples() {
        // eps=0.1, c=0.5, xi=0.01, eta=0.05: LHS ~ 0.03497 <= 0.05.
        assert!(stopping_condition(0.5, 0.01, 0.05, 0.1));
        assert!(!stopping_condition(0.0, 0.01, 0.05, 0.1));
        assert!(stopping_condition(0.0, 0.0, 0.0, 0.1));
        assert!(stopping_condition(0.4, 0.0, 0.0, 0.1));
    }

    #[test]
    fn hedge_condition_needs_positive_slack() {
        assert!(!hedge_stopping_condition(0.5, 0.5, 0.2));
        assert!(hedge_stopping_condition(0.5, 0.04, 0.2));
    }

    #[test]
    fn config_validation_guards() {
        let g = synthetic::star(5);
        let mut cfg = RunConfig::new(1, 0.7, 0.1, Variant::Centra, 1);
        assert!(run(&g, &cfg).is_err()); // eps >= 1 - 1/e
        cfg.eps = 0.2;
        cfg.delta = 0.0;
        assert!(run(&g, &cfg).is_err());
        cfg.delta = 0.1;
        cfg.alpha = 1.0;
        assert!(run(&g, &cfg).is_err());
        cfg.alpha = 1.2;
        cfg.k = 0;
        assert!(run(&g, &cfg).is_err());
    }

    #[test]
    fn schedule_first_iteration_is_finite_and_positive() {
        let ctx = ScheduleContext {
            variant: Variant::Centra,
            eps: 0.2,
            alpha: 1.2,
            k: 5,
            n: 100,
            dk: None,
            c_const: 0.5,
            m_first: None,
        };
        let m1 = sampling_schedule(0, None, 0.05, &ctx);
        assert!(m1 >= 1);
        assert!(m1 < 100_000, "m1 = {m1}");
        // The solved m indeed meets the target while m/2 does not.
        let target = ctx.eps / 2.0;
        assert!(sd_optimistic(&ctx, m1 as f64, 0.05) <= target * 1.001);
        assert!(sd_optimistic(&ctx, m1 as f64 / 2.0, 0.05) > target);
    }

    #[test]
    fn schedule_geometric_floor_binds() {
        let ctx = ScheduleContext {
            variant: Variant::Centra,
            eps: 0.2,
            alpha: 1.2,
            k: 2,
            n: 100,
            dk: None,
            c_const: 0.5,
            m_first: None,
        };
        // A large observed coverage makes the adaptive target small, so the
        // geometric step alpha * prev binds.
        let next = sampling_schedule(1_000_000, Some(0.9), 0.05 / 4.0, &ctx);
        assert_eq!(next, 1_200_000);
    }

    #[test]
    fn schedule_falls_back_on_zero_coverage() {
        let ctx = ScheduleContext {
            variant: Variant::Centra,
            eps: 0.2,
            alpha: 1.5,
            k: 2,
            n: 100,
            dk: None,
            c_const: 0.5,
            m_first: None,
        };
        assert_eq!(sampling_schedule(100, Some(0.0), 0.025, &ctx), 150);
    }

    #[test]
    fn optimistic_eta_decreases_and_bisection_terminates() {
        let ctx = ScheduleContext {
            variant: Variant::Centra,
            eps: 0.05,
            alpha: 1.2,
            k: 10,
            n: 1000,
            dk: None,
            c_const: 0.5,
            m_first: None,
        };
        let mut prev = f64::INFINITY;
        for i in 1..60 {
            let m = (1.5f64).powi(i);
            let v = sd_optimistic(&ctx, m, 0.05);
            assert!(v < prev);
            prev = v;
        }
        let root = solve_min_m(|m| sd_optimistic(&ctx, m, 0.05) - 0.01).unwrap();
        assert!(root.is_finite() && root > 1.0);
    }

    #[test]
    fn star_graph_run_returns_center_certified() {
        let g = synthetic::star(10);
        let cfg = RunConfig::new(1, 0.2, 0.1, Variant::Centra, 7);
        let result = run(&g, &cfg).unwrap();
        assert!(result.certified);
        assert!(!result.budget_exhausted);
        assert_eq!(result.node_ids, vec![g.id_of(0).unwrap()]);
        assert_eq!(result.nodes, vec![0]);
        let last = result.trace.last().unwrap();
        assert!(last.stopped);
        // delta budget: sum delta/2^i <= delta.
        let spent: f64 = result.trace.iter().map(|r| r.delta_i).sum();
        assert!(spent <= cfg.delta + 1e-12);
        // m strictly increasing.
        for w in result.trace.windows(2) {
            assert!(w[1].m > w[0].m);
        }
    }

    #[test]
    fn degenerate_graph_exhausts_budget() {
        let g = synthetic::complete(4);
        let mut cfg = RunConfig::new(2, 0.2, 0.1, Variant::Centra, 3);
        cfg.m_max = Some(500);
        let result = run(&g, &cfg).unwrap();
        assert!(!result.certified);
        assert!(result.budget_exhausted);
        assert_eq!(result.c_hat, 0.0);
        assert!(result.nodes.is_empty());
    }

    #[test]
    fn fixed_m_reports_all_bound_families() {
        let g = synthetic::grid(4, 4);
        let mut cfg = RunConfig::new(3, 0.2, 0.05, Variant::FixedM, 11);
        cfg.fixed_m = Some(2000);
        let result = run(&g, &cfg).unwrap();
        assert_eq!(result.trace.len(), 1);
        let report = &result.trace[0].report;
        assert_eq!(report.m, 2000);
        assert!(report.eta.is_some());
        assert!(report.eta_ub.is_some());
        assert!(report.eps_vc.is_some());
        assert!(report.d1.is_some());
        assert!(report.invariants_hold());
        assert!(!result.certified);
    }

    #[test]
    fn trace_csv_has_stable_header() {
        let g = synthetic::star(6);
        let cfg = RunConfig::new(1, 0.2, 0.1, Variant::Centra, 2);
        let result = run(&g, &cfg).unwrap();
        let csv = result.trace_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), TRACE_CSV_HEADER);
        assert_eq!(lines.count(), result.trace.len());
    }
}
