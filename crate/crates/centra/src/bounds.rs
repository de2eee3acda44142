//! Closed-form bound layer: the optimum upper bound, the supremum-deviation
//! bound assembled from the AMCERA, the union-bound and VC-dimension
//! baselines, and the VC sample-complexity inversion.
//!
//! Confidence splitting convention: the deviation chain spends its budget on
//! five events, so `xi`, `opt_upper_bound`, and `eta` all use
//! `L = ln(5/delta)` internally; callers pass the per-iteration `delta_i`
//! and treat it as opaque. All logarithms are natural except where the VC
//! lemmas use log2.

use serde::Serialize;

use crate::error::{Error, Result};

/// `1 - 1/e`, the greedy approximation factor.
pub const ONE_MINUS_INV_E: f64 = 0.632_120_558_828_557_7;

fn check(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invalid(msg.into()))
    }
}

fn check_delta(delta: f64) -> Result<()> {
    check(
        delta > 0.0 && delta < 1.0,
        format!("delta must be in (0,1), got {delta}"),
    )
}

/// `ln(5/delta)`, the budget-split log term of the deviation chain.
fn ln5(delta: f64) -> f64 {
    (5.0 / delta).ln()
}

pub(crate) fn xi_with_log_term(c_hat: f64, m: f64, big_l: f64) -> f64 {
    let lm = big_l / m;
    (lm * lm + 2.0 * c_hat * big_l / (ONE_MINUS_INV_E * m)).sqrt() + lm
}

/// Accuracy term of the optimum upper bound:
/// `xi = sqrt((L/m)^2 + 2 c L / ((1 - 1/e) m)) + L/m` with `L = ln(5/delta_i)`.
pub fn xi(c_hat: f64, m: u64, delta_i: f64) -> Result<f64> {
    check(m >= 1, "m must be at least 1")?;
    check_delta(delta_i)?;
    check(
        (0.0..=1.0).contains(&c_hat),
        format!("c_hat must be in [0,1], got {c_hat}"),
    )?;
    Ok(xi_with_log_term(c_hat, m as f64, ln5(delta_i)))
}

/// Upper bound `nu` on the optimum set centrality from the greedy estimate:
/// `nu = c_hat / (1 - 1/e) + xi(c_hat, m, delta_i)`.
pub fn opt_upper_bound(c_hat: f64, m: u64, delta_i: f64) -> Result<f64> {
    Ok(c_hat / ONE_MINUS_INV_E + xi(c_hat, m, delta_i)?)
}

/// The pieces of one supremum-deviation bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaBreakdown {
    /// ERA upper bound from the AMCERA: `amcera + sqrt(4 w L / (t m))`.
    pub r_tilde: f64,
    /// Rademacher-complexity bound: `R = r_tilde + sqrt((L/m)^2 + 2 L r_tilde / m) + L/m`.
    pub r_cap: f64,
    /// Optimum upper bound, used as the variance proxy.
    pub nu: f64,
    /// `eta = 2R + sqrt(2 L (nu + 4R) / m) + L / (3m)`.
    pub eta: f64,
}

pub(crate) fn eta_with_log_term(
    amcera: f64,
    wimpy: f64,
    t: f64,
    m: f64,
    big_l: f64,
    c_hat: f64,
) -> EtaBreakdown {
    let r_tilde = amcera + (4.0 * wimpy * big_l / (t * m)).sqrt();
    let lm = big_l / m;
    let r_cap = r_tilde + (lm * lm + 2.0 * big_l * r_tilde / m).sqrt() + lm;
    let nu = c_hat / ONE_MINUS_INV_E + xi_with_log_term(c_hat, m, big_l);
    let eta = 2.0 * r_cap + (2.0 * big_l * (nu + 4.0 * r_cap) / m).sqrt() + lm / 3.0;
    EtaBreakdown {
        r_tilde,
        r_cap,
        nu,
        eta,
    }
}

/// Full supremum-deviation bound from AMCERA and wimpy variance.
pub fn eta(
    amcera: f64,
    wimpy: f64,
    t: u64,
    m: u64,
    delta: f64,
    c_hat: f64,
) -> Result<EtaBreakdown> {
    check(t >= 1, "t must be at least 1")?;
    check(m >= 1, "m must be at least 1")?;
    check_delta(delta)?;
    check(amcera >= 0.0, "amcera must be nonnegative")?;
    check(wimpy >= 0.0, "wimpy variance must be nonnegative")?;
    check(
        (0.0..=1.0).contains(&c_hat),
        format!("c_hat must be in [0,1], got {c_hat}"),
    )?;
    Ok(eta_with_log_term(
        amcera,
        wimpy,
        t as f64,
        m as f64,
        ln5(delta),
        c_hat,
    ))
}

/// Hoeffding + union bound over the at most `n^k` candidate subsets:
/// `eta_ub = sqrt((k ln n + ln(2/delta)) / (2m))`.
pub fn sd_bound_union(n: u64, k: u64, m: u64, delta: f64) -> Result<f64> {
    check(n >= 2, "n must be at least 2")?;
    check(k >= 1, "k must be at least 1")?;
    check(m >= 1, "m must be at least 1")?;
    check_delta(delta)?;
    Ok(sd_bound_union_unchecked(n, k, m as f64, delta))
}

pub(crate) fn sd_bound_union_unchecked(n: u64, k: u64, m: f64, delta: f64) -> f64 {
    ((k as f64 * (n as f64).ln() + (2.0 / delta).ln()) / (2.0 * m)).sqrt()
}

/// VC dimension of the singleton range space: `d1 = floor(log2(2b))` where
/// `b` bounds the hyper-edge size.
pub fn vc_dim_1_bound(b: u64) -> Result<u32> {
    check(b >= 1, "b must be at least 1")?;
    Ok((2 * b).ilog2())
}

/// VC dimension of the size-k range space: `dk = 2 d1 k log2(3k)`,
/// real-valued.
pub fn vc_dim_k_bound(d1: u32, k: u64) -> Result<f64> {
    check(d1 >= 1, "d1 must be at least 1")?;
    check(k >= 1, "k must be at least 1")?;
    Ok(2.0 * d1 as f64 * k as f64 * (3.0 * k as f64).log2())
}

/// Sufficient sample size for a `(1 - 1/e - eps)`-approximation:
/// nearest integer to `4c (dk ln(1/c*) + ln(1/delta)) / (eps^2 c*)`.
/// `c_const` is the absolute constant of the relative-approximation theorem;
/// it is not pinned down by theory, so it stays configurable.
pub fn sample_size_vc(
    dk: f64,
    delta: f64,
    eps: f64,
    c_star_lower: f64,
    c_const: f64,
) -> Result<u64> {
    check(dk >= 0.0, "dk must be nonnegative")?;
    check_delta(delta)?;
    check(eps > 0.0 && eps < 1.0, "eps must be in (0,1)")?;
    check(
        c_star_lower > 0.0 && c_star_lower <= 1.0,
        "c_star_lower must be in (0,1]",
    )?;
    check(c_const > 0.0, "c_const must be positive")?;
    let raw = 4.0 * c_const * (dk * (1.0 / c_star_lower).ln() + (1.0 / delta).ln())
        / (eps * eps * c_star_lower);
    Ok((raw.round() as u64).max(1))
}

/// VC epsilon-sample inversion used by the CentRA-VC variant in place of eta:
/// `eps_vc = sqrt(c (dk + ln(1/delta)) / m)`.
pub fn sd_bound_vc(dk: f64, m: u64, delta: f64, c_const: f64) -> Result<f64> {
    check(dk >= 0.0, "dk must be nonnegative")?;
    check(m >= 1, "m must be at least 1")?;
    check_delta(delta)?;
    check(c_const > 0.0, "c_const must be positive")?;
    Ok(sd_bound_vc_unchecked(dk, m as f64, delta, c_const))
}

pub(crate) fn sd_bound_vc_unchecked(dk: f64, m: f64, delta: f64, c_const: f64) -> f64 {
    (c_const * (dk + (1.0 / delta).ln()) / m).sqrt()
}

/// All intermediate quantities of one bound evaluation, for auditability.
/// Fields a variant does not compute stay `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub m: u64,
    pub t: u64,
    pub k: u64,
    pub delta: f64,
    pub c_hat: f64,
    pub amcera: Option<f64>,
    pub wimpy: Option<f64>,
    pub r_tilde: Option<f64>,
    pub r_cap: Option<f64>,
    pub nu: Option<f64>,
    pub xi: Option<f64>,
    pub eta: Option<f64>,
    pub eta_ub: Option<f64>,
    pub eps_vc: Option<f64>,
    pub d1: Option<u32>,
    pub dk: Option<f64>,
}

impl BoundReport {
    pub fn new(m: u64, t: u64, k: u64, delta: f64, c_hat: f64) -> Self {
        BoundReport {
            m,
            t,
            k,
            delta,
            c_hat,
            amcera: None,
            wimpy: None,
            r_tilde: None,
            r_cap: None,
            nu: None,
            xi: None,
            eta: None,
            eta_ub: None,
            eps_vc: None,
            d1: None,
            dk: None,
        }
    }

    /// Checks the structural invariants every emitted report must satisfy.
    pub fn invariants_hold(&self) -> bool {
        let nonneg = |v: Option<f64>| v.map_or(true, |x| x >= 0.0);
        let mut ok = self.c_hat >= 0.0
            && nonneg(self.amcera)
            && nonneg(self.wimpy)
            && nonneg(self.r_tilde)
            && nonneg(self.r_cap)
            && nonneg(self.nu)
            && nonneg(self.xi)
            && nonneg(self.eta)
            && nonneg(self.eta_ub)
            && nonneg(self.eps_vc)
            && self.dk.map_or(true, |x| x >= 0.0);
        if let (Some(rt), Some(rc)) = (self.r_tilde, self.r_cap) {
            ok &= rc >= rt;
            if let Some(a) = self.amcera {
                ok &= rt >= a;
            }
            if let Some(e) = self.eta {
                ok &= e >= 2.0 * rc;
            }
        }
        if let Some(nu) = self.nu {
            ok &= nu >= self.c_hat / ONE_MINUS_INV_E - 1e-12;
        }
        ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn xi_collapses_when_c_hat_is_zero() {
        // c = 0, m = 100, delta = 0.05: xi = 2 ln(100) / 100.
        let v = xi(0.0, 100, 0.05).unwrap();
        assert!((v - 0.09210340371976183).abs() < TOL);
    }

    #[test]
    fn xi_closed_form_value() {
        let v = xi(0.5, 10_000, 0.05).unwrap();
        assert!((v - 0.027455688299119397).abs() < TOL, "xi = {v}");
    }

    #[test]
    fn xi_monotone_decreasing_in_m() {
        let mut prev = f64::INFINITY;
        for m in [10u64, 100, 1_000, 10_000, 100_000, 1_000_000] {
            let v = xi(0.3, m, 0.05).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 5e-3);
    }

    #[test]
    fn nu_arithmetic() {
        assert!(
            (opt_upper_bound(0.0, 500, 0.1).unwrap() - xi(0.0, 500, 0.1).unwrap()).abs() < TOL
        );
        // (1 - 1/e) cancellation: leading term is exactly 1.
        let lead = ONE_MINUS_INV_E / ONE_MINUS_INV_E;
        assert_eq!(lead, 1.0);
        let v = opt_upper_bound(0.5, 10_000, 0.05).unwrap();
        assert!((v - 0.8184440417337826).abs() < TOL, "nu = {v}");
    }

    #[test]
    fn eta_symbolic_collapse() {
        // amcera = wimpy = c_hat = 0, m = 1000, delta = 0.05:
        // eta = (4 + 2 sqrt 5 + 1/3) L / m with L = ln(100).
        let b = eta(0.0, 0.0, 100, 1000, 0.05, 0.0).unwrap();
        assert_eq!(b.r_tilde, 0.0);
        let l = 100.0f64.ln();
        assert!((b.r_cap - 2.0 * l / 1000.0).abs() < TOL);
        assert!((b.nu - 2.0 * l / 1000.0).abs() < TOL);
        assert!((b.eta - 0.04055068464026451).abs() < TOL, "eta = {}", b.eta);
    }

    #[test]
    fn eta_rejects_bad_delta() {
        assert!(eta(0.0, 0.0, 1, 10, 5.0, 0.0).is_err());
        assert!(eta(0.0, 0.0, 1, 10, 0.0, 0.0).is_err());
        assert!(xi(0.0, 10, 1.0).is_err());
    }

    #[test]
    fn eta_strictly_decreasing_in_m() {
        let mut prev = f64::INFINITY;
        for m in (1..=40).map(|i| 50 * i) {
            let b = eta(0.01, 0.5, 100, m, 0.1, 0.4).unwrap();
            assert!(b.eta < prev, "eta not decreasing at m={m}");
            prev = b.eta;
        }
    }

    #[test]
    fn union_bound_value_and_scaling() {
        let v = sd_bound_union(1000, 10, 100_000, 0.05).unwrap();
        assert!((v - 0.019074384949970904).abs() < TOL, "eta_ub = {v}");
        let v4 = sd_bound_union(1000, 10, 400_000, 0.05).unwrap();
        assert!((v / v4 - 2.0).abs() < TOL);
        assert!(sd_bound_union(2, 1, 10, 2.0).is_err());
    }

    #[test]
    fn vc_dimension_bounds() {
        assert_eq!(vc_dim_1_bound(7).unwrap(), 3);
        assert_eq!(vc_dim_1_bound(11).unwrap(), 4);
        assert_eq!(vc_dim_1_bound(1).unwrap(), 1);
        assert!(vc_dim_1_bound(0).is_err());
        // Exact at powers of two.
        assert_eq!(vc_dim_1_bound(4).unwrap(), 3);
        assert_eq!(vc_dim_1_bound(8).unwrap(), 4);

        let dk = vc_dim_k_bound(3, 10).unwrap();
        assert!((dk - 294.4134357365111).abs() < 1e-6, "dk = {dk}");
        let d1k = vc_dim_k_bound(1, 1).unwrap();
        assert!((d1k - 2.0 * 3.0f64.log2()).abs() < TOL);
        let big = vc_dim_k_bound(4, 50).unwrap();
        assert!((big - 2891.5274761983523).abs() < 1e-6);
    }

    #[test]
    fn sample_size_reproduces_worked_example() {
        let m = sample_size_vc(294.41, 0.05, 0.1, 0.5, 0.5).unwrap();
        assert_eq!(m, 82_826);
        // c* = 1 drops the dk term: only ln(1/delta) remains.
        let only_delta = sample_size_vc(1e6, 0.5, 0.5, 1.0, 1.0).unwrap();
        let expect = (4.0 * 2.0f64.ln() / 0.25).round() as u64;
        assert_eq!(only_delta, expect);
        // Halving eps quadruples m (up to rounding).
        let m_half = sample_size_vc(294.41, 0.05, 0.05, 0.5, 0.5).unwrap();
        assert!((m_half as f64 / m as f64 - 4.0).abs() < 1e-4);
    }

    #[test]
    fn vc_sd_bound_values() {
        let v = sd_bound_vc(0.0, 100, (-1.0f64).exp(), 1.0).unwrap();
        assert!((v - 0.1).abs() < TOL);
        let v = sd_bound_vc(294.41, 1_000_000, 0.05, 0.5).unwrap();
        assert!((v - 0.012194378464553944).abs() < TOL, "eps_vc = {v}");
        let m1 = sd_bound_vc(50.0, 1000, 0.1, 0.5).unwrap();
        let m4 = sd_bound_vc(50.0, 4000, 0.1, 0.5).unwrap();
        assert!((m1 / m4 - 2.0).abs() < TOL);
    }

    #[test]
    fn bounds_monotone_over_grids() {
        // Non-increasing in m; non-decreasing in k; non-decreasing as delta
        // shrinks.
        for &delta in &[0.5, 0.1, 0.01] {
            for &k in &[1u64, 5, 20] {
                let mut prev = f64::INFINITY;
                for &m in &[100u64, 1_000, 10_000] {
                    let ub = sd_bound_union(5000, k, m, delta).unwrap();
                    assert!(ub <= prev);
                    prev = ub;
                }
            }
        }
        for &m in &[100u64, 10_000] {
            let mut prev = 0.0;
            for &k in &[1u64, 2, 8, 32] {
                let ub = sd_bound_union(5000, k, m, 0.05).unwrap();
                assert!(ub >= prev);
                prev = ub;
            }
        }
        let loose = eta(0.02, 1.0, 100, 1000, 0.5, 0.3).unwrap().eta;
        let tight = eta(0.02, 1.0, 100, 1000, 0.005, 0.3).unwrap().eta;
        assert!(tight > loose);
        let x_loose = xi(0.3, 1000, 0.5).unwrap();
        let x_tight = xi(0.3, 1000, 0.005).unwrap();
        assert!(x_tight > x_loose);
        let mut prev = 0.0;
        for &k in &[1u64, 4, 16] {
            let dk = vc_dim_k_bound(3, k).unwrap();
            let v = sd_bound_vc(dk, 10_000, 0.05, 0.5).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn report_invariants() {
        let mut rep = BoundReport::new(100, 10, 3, 0.1, 0.4);
        let b = eta(0.02, 1.5, 10, 100, 0.1, 0.4).unwrap();
        rep.amcera = Some(0.02);
        rep.wimpy = Some(1.5);
        rep.r_tilde = Some(b.r_tilde);
        rep.r_cap = Some(b.r_cap);
        rep.nu = Some(b.nu);
        rep.xi = Some(xi(0.4, 100, 0.1).unwrap());
        rep.eta = Some(b.eta);
        assert!(rep.invariants_hold());
        rep.r_cap = Some(0.0);
        assert!(!rep.invariants_hold());
    }
}
