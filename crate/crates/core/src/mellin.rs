//! The unitary transform between samples of L2(R+) and the two-component
//! model space, realized as an FFT in the logarithmic variable s = ln t.
//!
//! The plus component pairs with the kernel e^{-i mu s}, the minus component
//! with e^{+i mu s}; together they carry the positive- and negative-frequency
//! halves of the full-line transform of z(s) = e^{s/2} x(e^s). The discrete
//! frequency set is the half-bin-shifted lattice mu_k = (k + 1/2) * dmu,
//! which splits exactly into the two signed halves (no shared zero bin and
//! no orphaned Nyquist bin), so the discrete transform is unitary to
//! rounding and the inverse is its exact adjoint.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// The log-grid discretization tying t, s = ln t, and the mu frequency grid
/// together. Immutable after construction; shareable across threads.
pub struct TransformPlan {
    s_min: f64,
    s_max: f64,
    n: usize,
    ds: f64,
    dmu: f64,
    s: Vec<f64>,
    t: Vec<f64>,
    mu: Vec<f64>,
    fft_fwd: Arc<dyn Fft<f64>>,
    fft_inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for TransformPlan {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TransformPlan")
            .field("s_min", &self.s_min)
            .field("s_max", &self.s_max)
            .field("n", &self.n)
            .finish()
    }
}

impl PartialEq for TransformPlan {
    fn eq(&self, other: &Self) -> bool {
        self.s_min == other.s_min && self.s_max == other.s_max && self.n == other.n
    }
}

impl TransformPlan {
    /// Build a plan over s in [s_min, s_max) with n uniform samples; n must
    /// be a power of two.
    pub fn new(s_min: f64, s_max: f64, n: usize) -> Result<Arc<TransformPlan>> {
        if !n.is_power_of_two() || n < 4 {
            return Err(Error::NotPowerOfTwo(n));
        }
        if !(s_min.is_finite() && s_max.is_finite() && s_min < s_max) {
            return Err(Error::BadGridBounds { s_min, s_max });
        }
        let length = s_max - s_min;
        let ds = length / n as f64;
        let dmu = 2.0 * std::f64::consts::PI / length;
        let s: Vec<f64> = (0..n).map(|j| s_min + j as f64 * ds).collect();
        let t: Vec<f64> = s.iter().map(|&sj| sj.exp()).collect();
        let mu: Vec<f64> = (0..n / 2).map(|k| (k as f64 + 0.5) * dmu).collect();
        let mut planner = FftPlanner::new();
        let fft_fwd = planner.plan_fft_forward(n);
        let fft_inv = planner.plan_fft_inverse(n);
        Ok(Arc::new(TransformPlan {
            s_min,
            s_max,
            n,
            ds,
            dmu,
            s,
            t,
            mu,
            fft_fwd,
            fft_inv,
        }))
    }

    /// Reference plan: s in [-8, 8], n = 2^14.
    pub fn reference() -> Arc<TransformPlan> {
        TransformPlan::new(-8.0, 8.0, 1 << 14).expect("reference plan parameters are valid")
    }

    pub fn s_min(&self) -> f64 {
        self.s_min
    }

    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of mu samples (n/2).
    pub fn mu_len(&self) -> usize {
        self.n / 2
    }

    pub fn s_step(&self) -> f64 {
        self.ds
    }

    /// Frequency spacing 2 pi / (s_max - s_min).
    pub fn mu_step(&self) -> f64 {
        self.dmu
    }

    pub fn s_grid(&self) -> &[f64] {
        &self.s
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t
    }

    pub fn mu_grid(&self) -> &[f64] {
        &self.mu
    }
}

/// A complex-valued function sampled on the t-grid of a plan.
#[derive(Debug, Clone)]
pub struct SampledSignal {
    pub plan: Arc<TransformPlan>,
    pub values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(plan: Arc<TransformPlan>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != plan.len() {
            return Err(Error::PlanMismatch);
        }
        Ok(SampledSignal { plan, values })
    }

    pub fn zero(plan: Arc<TransformPlan>) -> Self {
        let n = plan.len();
        SampledSignal {
            plan,
            values: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// Sample x(t) on the plan's t-grid.
    pub fn from_fn(plan: Arc<TransformPlan>, f: impl Fn(f64) -> Complex64) -> Self {
        let values = plan.t_grid().iter().map(|&t| f(t)).collect();
        SampledSignal { plan, values }
    }

    /// L2(R+) squared norm: sum |x(t_j)|^2 t_j ds (dt = t ds on the log grid).
    pub fn norm_sqr(&self) -> f64 {
        let ds = self.plan.s_step();
        pairwise_sum(
            &self
                .values
                .iter()
                .zip(self.plan.t_grid())
                .map(|(v, &t)| v.norm_sqr() * t * ds)
                .collect::<Vec<_>>(),
        )
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// L2(R+) inner product <x, y> = integral x conj(y) dt.
    pub fn inner(&self, other: &SampledSignal) -> Result<Complex64> {
        if self.plan != other.plan {
            return Err(Error::PlanMismatch);
        }
        let ds = self.plan.s_step();
        let terms: Vec<Complex64> = self
            .values
            .iter()
            .zip(other.values.iter())
            .zip(self.plan.t_grid())
            .map(|((a, b), &t)| a * b.conj() * t * ds)
            .collect();
        Ok(pairwise_sum_c(&terms))
    }

    pub fn sub(&self, other: &SampledSignal) -> Result<SampledSignal> {
        if self.plan != other.plan {
            return Err(Error::PlanMismatch);
        }
        Ok(SampledSignal {
            plan: self.plan.clone(),
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn add(&self, other: &SampledSignal) -> Result<SampledSignal> {
        if self.plan != other.plan {
            return Err(Error::PlanMismatch);
        }
        Ok(SampledSignal {
            plan: self.plan.clone(),
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, a: Complex64) -> SampledSignal {
        SampledSignal {
            plan: self.plan.clone(),
            values: self.values.iter().map(|v| v * a).collect(),
        }
    }

    /// Relative L2 distance to another signal on the same plan.
    pub fn relative_error(&self, reference: &SampledSignal) -> Result<f64> {
        let diff = self.sub(reference)?;
        let denom = reference.norm();
        Ok(if denom == 0.0 {
            diff.norm()
        } else {
            diff.norm() / denom
        })
    }
}

/// A two-component vector function on the mu-grid of a plan: the model-space
/// image of a signal.
#[derive(Debug, Clone)]
pub struct ModelVector {
    pub plan: Arc<TransformPlan>,
    pub plus: Vec<Complex64>,
    pub minus: Vec<Complex64>,
}

impl ModelVector {
    pub fn new(
        plan: Arc<TransformPlan>,
        plus: Vec<Complex64>,
        minus: Vec<Complex64>,
    ) -> Result<Self> {
        if plus.len() != plan.mu_len() || minus.len() != plan.mu_len() {
            return Err(Error::PlanMismatch);
        }
        Ok(ModelVector { plan, plus, minus })
    }

    pub fn zero(plan: Arc<TransformPlan>) -> Self {
        let m = plan.mu_len();
        ModelVector {
            plan,
            plus: vec![Complex64::new(0.0, 0.0); m],
            minus: vec![Complex64::new(0.0, 0.0); m],
        }
    }

    /// Squared model-space norm with the d mu / 2 pi weight.
    pub fn norm_sqr(&self) -> f64 {
        let w = self.plan.mu_step() / (2.0 * std::f64::consts::PI);
        let terms: Vec<f64> = self
            .plus
            .iter()
            .zip(self.minus.iter())
            .map(|(p, m)| (p.norm_sqr() + m.norm_sqr()) * w)
            .collect();
        pairwise_sum(&terms)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

/// Forward transform: the plus component approximates
/// integral t^{-1/2-i mu} x(t) dt, the minus component the +i mu companion,
/// computed as the two frequency halves of the FFT of z(s) = e^{s/2} x(e^s)
/// scaled by the s-step.
pub fn forward_transform(x: &SampledSignal) -> ModelVector {
    let plan = &x.plan;
    let n = plan.len();
    let ds = plan.s_step();
    let half_shift = std::f64::consts::PI / n as f64;

    // z_j = e^{s_j/2} x(t_j), premodulated for the half-bin frequency offset
    let mut buf_plus: Vec<Complex64> = Vec::with_capacity(n);
    let mut buf_minus: Vec<Complex64> = Vec::with_capacity(n);
    for (j, (&t, v)) in plan.t_grid().iter().zip(x.values.iter()).enumerate() {
        let z = v * t.sqrt();
        let phase = Complex64::from_polar(1.0, half_shift * j as f64);
        buf_plus.push(z * phase.conj());
        buf_minus.push(z * phase);
    }
    plan.fft_fwd.process(&mut buf_plus);
    plan.fft_inv.process(&mut buf_minus);

    let m = plan.mu_len();
    let mut plus = Vec::with_capacity(m);
    let mut minus = Vec::with_capacity(m);
    for (k, &mu) in plan.mu_grid().iter().enumerate() {
        let rot_m = Complex64::from_polar(ds, mu * plan.s_min());
        plus.push(buf_plus[k] * rot_m.conj());
        minus.push(buf_minus[k] * rot_m);
    }
    ModelVector {
        plan: plan.clone(),
        plus,
        minus,
    }
}

/// Inverse transform per the d mu / 2 pi inversion rule; the exact inverse of
/// [`forward_transform`] on grid data.
pub fn inverse_transform(y: &ModelVector) -> SampledSignal {
    let plan = &y.plan;
    let n = plan.len();
    let ds = plan.s_step();
    let half_shift = std::f64::consts::PI / n as f64;

    let mut buf_plus = vec![Complex64::new(0.0, 0.0); n];
    let mut buf_minus = vec![Complex64::new(0.0, 0.0); n];
    for (k, &mu) in plan.mu_grid().iter().enumerate() {
        let rot = Complex64::from_polar(1.0, mu * plan.s_min());
        buf_plus[k] = y.plus[k] * rot;
        buf_minus[k] = y.minus[k] * rot.conj();
    }
    plan.fft_inv.process(&mut buf_plus);
    plan.fft_fwd.process(&mut buf_minus);

    let scale = 1.0 / (n as f64 * ds);
    let values = plan
        .t_grid()
        .iter()
        .enumerate()
        .map(|(j, &t)| {
            let phase = Complex64::from_polar(1.0, half_shift * j as f64);
            let z = (buf_plus[j] * phase + buf_minus[j] * phase.conj()) * scale;
            z / t.sqrt()
        })
        .collect();
    SampledSignal {
        plan: plan.clone(),
        values,
    }
}

/// Relative Parseval defect | ||x||^2 - ||Ux||^2 | / ||x||^2; zero signal
/// returns 0 by convention.
pub fn parseval_defect(x: &SampledSignal) -> f64 {
    let sig = x.norm_sqr();
    if sig == 0.0 {
        return 0.0;
    }
    let model = forward_transform(x).norm_sqr();
    ((sig - model) / sig).abs()
}

/// Deterministic pairwise summation (fixed order, no data-dependent
/// reassociation).
pub fn pairwise_sum(terms: &[f64]) -> f64 {
    if terms.len() <= 32 {
        return terms.iter().sum();
    }
    let mid = terms.len() / 2;
    pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
}

pub fn pairwise_sum_c(terms: &[Complex64]) -> Complex64 {
    if terms.len() <= 32 {
        return terms.iter().sum();
    }
    let mid = terms.len() / 2;
    pairwise_sum_c(&terms[..mid]) + pairwise_sum_c(&terms[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma_on_critical_line;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn plan_invariants() {
        let plan = TransformPlan::new(-8.0, 8.0, 1 << 10).unwrap();
        assert_eq!(plan.mu_step(), 2.0 * std::f64::consts::PI / 16.0);
        assert_eq!(plan.mu_len(), 512);
        // uniform s grid
        let s = plan.s_grid();
        for j in 1..s.len() {
            assert!((s[j] - s[j - 1] - plan.s_step()).abs() < 1e-12);
        }
        // psi+ * conj(psi+) = 1/t at any grid node
        for (&t, _) in plan.t_grid().iter().zip(s) {
            let psi = Complex64::from_polar(t.powf(-0.5), 0.3 * t.ln());
            assert!((psi * psi.conj() - c(1.0 / t, 0.0)).norm() < 1e-12 / t);
        }
        assert!(TransformPlan::new(-8.0, 8.0, 1000).is_err());
        assert!(TransformPlan::new(8.0, -8.0, 1024).is_err());
    }

    #[test]
    fn zero_maps_to_zero() {
        let plan = TransformPlan::new(-6.0, 6.0, 256).unwrap();
        let x = SampledSignal::zero(plan.clone());
        let y = forward_transform(&x);
        assert!(y.norm() == 0.0);
        let back = inverse_transform(&y);
        assert!(back.norm() == 0.0);
    }

    #[test]
    fn roundtrip_is_exact_to_rounding() {
        let plan = TransformPlan::new(-8.0, 8.0, 1 << 12).unwrap();
        let x = SampledSignal::from_fn(plan.clone(), |t| c((-t).exp(), 0.3 * (-2.0 * t).exp()));
        let back = inverse_transform(&forward_transform(&x));
        let err = back.relative_error(&x).unwrap();
        assert!(err < 1e-13, "roundtrip error {err:.3e}");
        // and the other composition order
        let y = forward_transform(&x);
        let y2 = forward_transform(&inverse_transform(&y));
        let num: f64 = y2
            .plus
            .iter()
            .zip(&y.plus)
            .chain(y2.minus.iter().zip(&y.minus))
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        assert!(num.sqrt() / y.norm() < 1e-13);
    }

    #[test]
    fn parseval_is_machine_exact_and_zero_convention() {
        let plan = TransformPlan::reference();
        let x = SampledSignal::from_fn(plan.clone(), |t| c((-t).exp(), 0.0));
        assert!(parseval_defect(&x) < 1e-13);
        assert_eq!(parseval_defect(&SampledSignal::zero(plan)), 0.0);
    }

    #[test]
    fn exp_decay_transform_matches_gamma() {
        // On a plan wide enough to the left that the t -> 0 truncation of
        // e^{-t} is below 1e-10, the plus component matches Gamma(1/2 - i mu).
        let plan = TransformPlan::new(-48.0, 8.0, 1 << 11).unwrap();
        let x = SampledSignal::from_fn(plan.clone(), |t| c((-t).exp(), 0.0));
        let y = forward_transform(&x);
        // the domain truncation leaves ~1e-10 absolute error, so the usable
        // relative tolerance shrinks with |Gamma| as mu grows
        for k in [0usize, 3, 10] {
            let mu = plan.mu_grid()[k];
            let expected = gamma_on_critical_line(-mu).unwrap();
            let err = (y.plus[k] - expected).norm() / expected.norm();
            assert!(err < 1e-8, "k={k} err={err:.3e}");
            let expected_m = gamma_on_critical_line(mu).unwrap();
            assert!((y.minus[k] - expected_m).norm() / expected_m.norm() < 1e-8);
        }
    }

    #[test]
    fn refinement_halves_gamma_error_until_floor() {
        // fixed s-window, doubling n: the transform error against the Gamma
        // closed form must at least halve until it hits the 1e-10 floor
        let mut errs = Vec::new();
        for exp in [6u32, 7, 8, 9] {
            let plan = TransformPlan::new(-48.0, 8.0, 1 << exp).unwrap();
            let x = SampledSignal::from_fn(plan.clone(), |t| c((-t).exp(), 0.0));
            let y = forward_transform(&x);
            let k = 2usize;
            let mu = plan.mu_grid()[k];
            let expected = gamma_on_critical_line(-mu).unwrap();
            errs.push((y.plus[k] - expected).norm() / expected.norm());
        }
        for w in errs.windows(2) {
            assert!(
                w[1] <= w[0] / 2.0 || w[1] < 1e-10,
                "no convergence: {errs:?}"
            );
        }
        assert!(*errs.last().unwrap() < 1e-10, "floor not reached: {errs:?}");
    }

    #[test]
    fn indicator_log_window_closed_form() {
        // x = t^{-1/2} on [1, e]: z = 1 on [0,1] in s, so the plus component
        // is (1 - e^{-i mu})/(i mu)
        let plan = TransformPlan::new(-8.0, 8.0, 1 << 14).unwrap();
        let x = SampledSignal::from_fn(plan.clone(), |t| {
            if (1.0..std::f64::consts::E).contains(&t) {
                c(t.powf(-0.5), 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let y = forward_transform(&x);
        for k in [0usize, 5, 31] {
            let mu = plan.mu_grid()[k];
            let i_mu = c(0.0, mu);
            let expected = (Complex64::new(1.0, 0.0) - (-i_mu).exp()) / i_mu;
            // the hard indicator edge limits the quadrature to O(ds)
            let err = (y.plus[k] - expected).norm();
            assert!(err < 2e-3, "k={k} err={err:.3e}");
            let expected_minus = (Complex64::new(1.0, 0.0) - i_mu.exp()) / (-i_mu);
            assert!((y.minus[k] - expected_minus).norm() < 2e-3);
        }
    }

    #[test]
    fn fft_matches_direct_mellin_sum() {
        let plan = TransformPlan::new(-8.0, 8.0, 512).unwrap();
        let x = SampledSignal::from_fn(plan.clone(), |t| {
            c((-t).exp(), (-(t.ln().powi(2)) / 2.0).exp())
        });
        let y = forward_transform(&x);
        let ds = plan.s_step();
        for k in [0usize, 17, 101, 255] {
            let mu = plan.mu_grid()[k];
            let mut plus = c(0.0, 0.0);
            let mut minus = c(0.0, 0.0);
            for (j, &s) in plan.s_grid().iter().enumerate() {
                let z = x.values[j] * plan.t_grid()[j].sqrt();
                plus += z * Complex64::from_polar(ds, -mu * s);
                minus += z * Complex64::from_polar(ds, mu * s);
            }
            assert!((y.plus[k] - plus).norm() <= 1e-9 * plus.norm().max(1e-3));
            assert!((y.minus[k] - minus).norm() <= 1e-9 * minus.norm().max(1e-3));
        }
    }
}
