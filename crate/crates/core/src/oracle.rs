//! Independent ground truth: direct quadrature of truncated Fourier
//! integrals with exponential regularization, O(N^2) log-grid transform
//! sums, a finite-difference realization of the commuting operator, and
//! brute-force 2x2 linear algebra. Nothing here shares code with the FFT or
//! symbol paths it validates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mellin::SampledSignal;
use crate::symbol::SymbolMatrix2;

/// Parameters of the direct half-line Fourier quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Exponential damping exponent; 0 disables regularization.
    pub eps_reg: f64,
    /// Truncation of the xi-domain; defaults to the largest grid t.
    pub xi_max: f64,
}

impl QuadratureSpec {
    pub fn plain() -> Self {
        QuadratureSpec {
            eps_reg: 0.0,
            xi_max: f64::INFINITY,
        }
    }

    pub fn regularized(eps_reg: f64) -> Self {
        QuadratureSpec {
            eps_reg,
            xi_max: f64::INFINITY,
        }
    }
}

/// (1/sqrt(2 pi)) * integral_0^xi_max x(xi) e^{i t xi} e^{-eps_reg xi} d xi
/// by composite Simpson over consecutive grid-node pairs (quadratic
/// interpolation on the non-uniform xi spacing of the log grid).
pub fn direct_truncated_fourier(x: &SampledSignal, t: f64, q: &QuadratureSpec) -> Complex64 {
    let grid = x.plan.t_grid();
    let integrand = |j: usize| -> Complex64 {
        let xi = grid[j];
        if xi > q.xi_max {
            return Complex64::new(0.0, 0.0);
        }
        x.values[j] * Complex64::from_polar((-q.eps_reg * xi).exp(), t * xi)
    };
    let mut acc = Complex64::new(0.0, 0.0);
    let n = grid.len();
    let mut j = 0;
    while j + 2 < n {
        acc += simpson_panel(
            grid[j],
            grid[j + 1],
            grid[j + 2],
            integrand(j),
            integrand(j + 1),
            integrand(j + 2),
        );
        j += 2;
    }
    // odd leftover interval: trapezoid
    if j + 1 < n {
        acc += (integrand(j) + integrand(j + 1)) * (0.5 * (grid[j + 1] - grid[j]));
    }
    acc / (2.0 * std::f64::consts::PI).sqrt()
}

/// Integral of the quadratic through (x0,f0), (x1,f1), (x2,f2) over
/// [x0, x2]; the non-uniform Simpson panel.
fn simpson_panel(
    x0: f64,
    x1: f64,
    x2: f64,
    f0: Complex64,
    f1: Complex64,
    f2: Complex64,
) -> Complex64 {
    let h0 = x1 - x0;
    let h1 = x2 - x1;
    let h = h0 + h1;
    let w0 = h * (2.0 * h0 - h1) / (6.0 * h0);
    let w1 = h * h * h / (6.0 * h0 * h1);
    let w2 = h * (2.0 * h1 - h0) / (6.0 * h1);
    f0 * w0 + f1 * w1 + f2 * w2
}

/// Both components of the log-grid transform at an arbitrary mu >= 0 by
/// direct summation: (integral t^{-1/2 -+ i mu} x(t) dt) as a plain O(N)
/// rectangle sum per evaluation point. Validates the FFT path.
pub fn direct_mellin(x: &SampledSignal, mu: f64) -> (Complex64, Complex64) {
    let ds = x.plan.s_step();
    let mut plus = Complex64::new(0.0, 0.0);
    let mut minus = Complex64::new(0.0, 0.0);
    for (j, &s) in x.plan.s_grid().iter().enumerate() {
        let z = x.values[j] * x.plan.t_grid()[j].sqrt();
        plus += z * Complex64::from_polar(ds, -mu * s);
        minus += z * Complex64::from_polar(ds, mu * s);
    }
    (plus, minus)
}

/// Second-order finite differences for -(t^2 x')' on the log grid. In the
/// variable s = ln t the expression reduces to -(u'' + u') with u(s) =
/// x(e^s), so uniform central stencils apply. Boundary rows are zero and
/// excluded from comparisons.
pub fn finite_difference_l(x: &SampledSignal) -> SampledSignal {
    let n = x.plan.len();
    let ds = x.plan.s_step();
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for (out, w) in values[1..].iter_mut().zip(x.values.windows(3)) {
        let upp = (w[2] - w[1] * 2.0 + w[0]) / (ds * ds);
        let up = (w[2] - w[0]) / (2.0 * ds);
        *out = -(upp + up);
    }
    SampledSignal {
        plan: x.plan.clone(),
        values,
    }
}

/// Brute-force spectral data of a 2x2 matrix: cofactor inverse,
/// quadratic-formula eigenvalues, null-space eigenvectors, and exact
/// singular values.
#[derive(Debug, Clone)]
pub struct Brute2x2 {
    pub inverse: Option<SymbolMatrix2>,
    pub eigenvalues: [Complex64; 2],
    pub eigenvectors: [[Complex64; 2]; 2],
    pub singular_values: [f64; 2],
}

pub fn brute_2x2(m: &SymbolMatrix2) -> Brute2x2 {
    let det = m.det();
    let inverse = if det.norm() > 0.0 {
        Some(SymbolMatrix2::new(
            m.m22 / det,
            -m.m12 / det,
            -m.m21 / det,
            m.m11 / det,
        ))
    } else {
        None
    };
    let tr = m.trace();
    let disc = (tr * tr - det * 4.0).sqrt();
    let eigenvalues = [(tr + disc) / 2.0, (tr - disc) / 2.0];
    let eigenvectors = [null_vector(m, eigenvalues[0]), null_vector(m, eigenvalues[1])];
    let (s_hi, s_lo) = (m.norm(), m.smallest_singular_value());
    Brute2x2 {
        inverse,
        eigenvalues,
        eigenvectors,
        singular_values: [s_hi, s_lo],
    }
}

/// A unit vector with (M - lambda I) v ~ 0, from the larger row of the
/// singular matrix.
fn null_vector(m: &SymbolMatrix2, lambda: Complex64) -> [Complex64; 2] {
    let a = m.m11 - lambda;
    let b = m.m12;
    let c = m.m21;
    let d = m.m22 - lambda;
    // rows of (M - lambda I) are proportional; use the larger one
    let (p, q) = if a.norm() + b.norm() >= c.norm() + d.norm() {
        (a, b)
    } else {
        (c, d)
    };
    let v = if q.norm() >= p.norm() {
        // p v0 + q v1 = 0 with v0 = 1
        [Complex64::new(1.0, 0.0), -p / q]
    } else {
        [-q / p, Complex64::new(1.0, 0.0)]
    };
    let scale = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / scale, v[1] / scale]
}

/// Brute inverse with a singularity error, mirroring the resolvent contract.
pub fn brute_inverse(m: &SymbolMatrix2) -> Result<SymbolMatrix2> {
    brute_2x2(m).inverse.ok_or(Error::SingularMatrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mellin::{forward_transform, TransformPlan};
    use crate::signals;
    use crate::special::gamma_on_critical_line;
    use crate::symbol::{symbol_matrix, zeta_plus};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_decay_fourier_closed_form() {
        let plan = TransformPlan::reference();
        let x = signals::exp_decay(plan.clone());
        let t = 1.0;
        let got = direct_truncated_fourier(&x, t, &QuadratureSpec::plain());
        let expected = (c(1.0, -t) * (2.0 * std::f64::consts::PI).sqrt()).inv();
        // the grid starts at t = e^{-8}, so ~1e-4 of the integrand mass is
        // outside the quadrature domain
        assert!((got - expected).norm() < 1e-3 * expected.norm());
        assert!((expected - c(0.1995, 0.1995)).norm() < 1e-3);
    }

    #[test]
    fn window_indicator_closed_form() {
        let plan = TransformPlan::reference();
        let (a, b) = (0.5, 2.0);
        let x = signals::indicator(plan.clone(), a, b);
        for &t in &[0.7, 1.5, 3.0] {
            let got = direct_truncated_fourier(&x, t, &QuadratureSpec::plain());
            let it = c(0.0, t);
            let expected =
                ((it * b).exp() - (it * a).exp()) / (it * (2.0 * std::f64::consts::PI).sqrt());
            assert!(
                (got - expected).norm() < 2e-3 * expected.norm().max(0.1),
                "t={t}"
            );
        }
    }

    #[test]
    fn regularization_sweep_converges() {
        let plan = TransformPlan::reference();
        let x = signals::exp_decay(plan.clone());
        let t = 2.0;
        let mut prev_val = direct_truncated_fourier(&x, t, &QuadratureSpec::regularized(0.1));
        let mut prev_diff = f64::INFINITY;
        for &eps in &[0.03, 0.01, 0.003, 0.001] {
            let val = direct_truncated_fourier(&x, t, &QuadratureSpec::regularized(eps));
            let diff = (val - prev_val).norm();
            assert!(diff < prev_diff, "eps={eps}: {diff} !< {prev_diff}");
            prev_diff = diff;
            prev_val = val;
        }
        let unregularized = direct_truncated_fourier(&x, t, &QuadratureSpec::plain());
        assert!((prev_val - unregularized).norm() < 1e-3);
    }

    #[test]
    fn direct_mellin_euler_integral() {
        let plan = TransformPlan::new(-48.0, 8.0, 1 << 12).unwrap();
        let x = signals::exp_decay(plan.clone());
        let mu = 0.7;
        let (plus, minus) = direct_mellin(&x, mu);
        let gp = gamma_on_critical_line(-mu).unwrap();
        let gm = gamma_on_critical_line(mu).unwrap();
        assert!((plus - gp).norm() < 1e-7);
        assert!((minus - gm).norm() < 1e-7);
        // zero in, zero out
        let zero = SampledSignal::zero(plan);
        let (p0, m0) = direct_mellin(&zero, 1.0);
        assert_eq!(p0, c(0.0, 0.0));
        assert_eq!(m0, c(0.0, 0.0));
    }

    #[test]
    fn direct_mellin_matches_fft_on_grid() {
        let plan = TransformPlan::new(-8.0, 8.0, 512).unwrap();
        let x = signals::gaussian_in_s(plan.clone());
        let y = forward_transform(&x);
        for k in [0usize, 10, 100, 255] {
            let (plus, minus) = direct_mellin(&x, plan.mu_grid()[k]);
            assert!((y.plus[k] - plus).norm() <= 1e-9 * plus.norm().max(1e-6));
            assert!((y.minus[k] - minus).norm() <= 1e-9 * minus.norm().max(1e-6));
        }
    }

    #[test]
    fn finite_difference_eigenfunction_window() {
        let plan = TransformPlan::new(-8.0, 8.0, 1 << 12).unwrap();
        // x = t^{-1/2 + i mu0} windowed by a wide smooth bump
        let mu0 = 1.5;
        let x = SampledSignal::from_fn(plan.clone(), |t| {
            let s = t.ln();
            let window = (-(s / 5.0).powi(10)).exp();
            Complex64::from_polar(t.powf(-0.5) * window, mu0 * t.ln())
        });
        let lx = finite_difference_l(&x);
        let lambda = mu0 * mu0 + 0.25;
        // compare well inside the window
        let n = plan.len();
        for j in (n / 2 - 200)..(n / 2 + 200) {
            let expected = x.values[j] * lambda;
            assert!((lx.values[j] - expected).norm() < 1e-4 * expected.norm());
        }
    }

    #[test]
    fn finite_difference_constant_log_profile() {
        let plan = TransformPlan::new(-8.0, 8.0, 1 << 12).unwrap();
        // z(s) = 1 inside a window: x = t^{-1/2}, an eigenfunction at mu = 0
        let x = SampledSignal::from_fn(plan.clone(), |t| {
            let s = t.ln();
            Complex64::new(t.powf(-0.5) * (-(s / 5.0).powi(10)).exp(), 0.0)
        });
        let lx = finite_difference_l(&x);
        let n = plan.len();
        for j in (n / 2 - 100)..(n / 2 + 100) {
            let expected = x.values[j] * 0.25;
            assert!((lx.values[j] - expected).norm() < 1e-4 * expected.norm());
        }
    }

    #[test]
    fn model_fourier_agrees_with_direct_quadrature() {
        // the model-path operator and the direct quadrature agree on interior
        // points; the transformed signal keeps a t^{-1/2}-type left tail (its
        // value at 0 is the integral of x), so the grid reaches s = -10
        let plan = TransformPlan::new(-10.0, 10.0, 1 << 13).unwrap();
        let q = QuadratureSpec::plain();
        for x in [
            signals::gaussian_in_s(plan.clone()),
            signals::log_bump(plan.clone()),
        ] {
            let fx = crate::model_ops::apply_fourier(&x).unwrap();
            let n = plan.len();
            let ds = plan.s_step();
            let mut num = 0.0;
            let mut den = 0.0;
            for j in (n / 2 - 512..n / 2 + 512).step_by(8) {
                let t = plan.t_grid()[j];
                let direct = direct_truncated_fourier(&x, t, &q);
                num += (fx.values[j] - direct).norm_sqr() * t * ds;
                den += direct.norm_sqr() * t * ds;
            }
            let err = (num / den).sqrt();
            assert!(err < 1e-3, "oracle/model disagreement {err:.3e}");
        }
    }

    #[test]
    fn regularized_commuting_diagram() {
        // damping the signal first and transforming through the model equals
        // the regularized direct quadrature
        let plan = TransformPlan::reference();
        let x = signals::gaussian_in_s(plan.clone());
        let eps = 0.05;
        let damped = SampledSignal {
            plan: plan.clone(),
            values: x
                .values
                .iter()
                .zip(plan.t_grid())
                .map(|(v, &t)| v * (-eps * t).exp())
                .collect(),
        };
        let model = crate::model_ops::apply_fourier(&damped).unwrap();
        let q = QuadratureSpec::regularized(eps);
        let n = plan.len();
        for j in (n / 2 - 256..n / 2 + 256).step_by(32) {
            let t = plan.t_grid()[j];
            let direct = direct_truncated_fourier(&x, t, &q);
            assert!(
                (model.values[j] - direct).norm() < 1e-3 * direct.norm().max(1e-2),
                "t={t}"
            );
        }
    }

    #[test]
    fn brute_2x2_identities() {
        let id = SymbolMatrix2::identity();
        let b = brute_2x2(&id);
        assert!(b.inverse.unwrap().sub(&id).max_abs_entry() < 1e-15);
        assert!((b.eigenvalues[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(b.singular_values, [1.0, 1.0]);

        // symbol eigenvalues are +-zeta(mu)
        let f = symbol_matrix(1.0).unwrap();
        let b = brute_2x2(&f);
        let zeta = zeta_plus(1.0);
        let mut ev = b.eigenvalues;
        if (ev[0] - zeta).norm() > (ev[1] - zeta).norm() {
            ev.swap(0, 1);
        }
        assert!((ev[0] - zeta).norm() < 1e-13);
        assert!((ev[1] + zeta).norm() < 1e-13);
        // eigenvector residual
        for (v, lam) in b.eigenvectors.iter().zip(b.eigenvalues.iter()) {
            let fv = f.apply(*v);
            assert!((fv[0] - lam * v[0]).norm() < 1e-12);
            assert!((fv[1] - lam * v[1]).norm() < 1e-12);
        }

        // random invertible matrix: M * inv = I
        let m = SymbolMatrix2::new(c(1.2, 0.3), c(-0.7, 0.2), c(0.4, -1.1), c(0.9, 0.8));
        let inv = brute_inverse(&m).unwrap();
        assert!(m.mul(&inv).sub(&SymbolMatrix2::identity()).max_abs_entry() < 1e-12);

        // singular matrix is rejected
        let s = SymbolMatrix2::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0));
        assert!(matches!(brute_inverse(&s), Err(Error::SingularMatrix)));
    }
}
