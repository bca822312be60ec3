//! The resolvent-based functional calculus: singular integrals of resolvent
//! differences across the spectral segment, realized through Poisson-type
//! kernels in rotated coordinates, and their convergence to the model-based
//! calculus.

use num_complex::Complex64;

use crate::admissible::{SpectralFunctionSpec, SPECTRAL_RADIUS};
use crate::error::{Error, Result};
use crate::mellin::SampledSignal;
use crate::model_ops::MatrixField;
use crate::symbol::{symbol_entries, zeta_radius, SymbolMatrix2};

/// Poisson kernel P and its odd companion Q at evaluation radius r,
/// integration radius rho, and width eps.
#[derive(Debug, Clone, Copy)]
pub struct KernelSample {
    pub r: f64,
    pub rho: f64,
    pub eps: f64,
    pub p_value: f64,
    pub q_value: f64,
}

/// P(r, rho; eps) = eps / (pi ((r-rho)^2 + eps^2)).
pub fn poisson_kernel(r: f64, rho: f64, eps: f64) -> f64 {
    eps / (std::f64::consts::PI * ((r - rho) * (r - rho) + eps * eps))
}

/// Q(r, rho; eps) = P(|r|, rho; eps) * 4 rho^2 / ((|r| + rho)^2 + eps^2),
/// the kernel carried by the odd part of the resolvent difference.
pub fn q_kernel(r: f64, rho: f64, eps: f64) -> f64 {
    let ra = r.abs();
    poisson_kernel(ra, rho, eps) * 4.0 * rho * rho / ((ra + rho) * (ra + rho) + eps * eps)
}

/// Both kernels at once.
pub fn poisson_pair(r: f64, rho: f64, eps: f64) -> KernelSample {
    KernelSample {
        r,
        rho,
        eps,
        p_value: poisson_kernel(r, rho, eps),
        q_value: q_kernel(r, rho, eps),
    }
}

/// The remainder kernel in the split Q = P(|r|, .) + T:
/// T = P * ((rho - |r|)(3 rho + |r|) - eps^2) / ((|r| + rho)^2 + eps^2),
/// the numerator being 4 rho^2 - (|r| + rho)^2 - eps^2.
pub fn t_kernel(r: f64, rho: f64, eps: f64) -> f64 {
    let ra = r.abs();
    poisson_kernel(ra, rho, eps) * ((rho - ra) * (3.0 * rho + ra) - eps * eps)
        / ((ra + rho) * (ra + rho) + eps * eps)
}

// 8-point Gauss-Legendre rule on [-1, 1].
#[allow(clippy::excessive_precision)]
const GL_NODES: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.5255324099163290,
    -0.1834346424956498,
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
#[allow(clippy::excessive_precision)]
const GL_WEIGHTS: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.3626837833783620,
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

/// Panel boundaries of a graded mesh on [a, b]: node spacing at most eps/4
/// within distance 10 eps of the kernel peak at `center`, coarser outside.
fn graded_panels(a: f64, b: f64, center: f64, eps: f64) -> Vec<(f64, f64)> {
    let fine_lo = (center - 10.0 * eps).max(a);
    let fine_hi = (center + 10.0 * eps).min(b);
    let mut cuts = vec![a];
    let coarse = (b - a) / 64.0;
    let push_range = |cuts: &mut Vec<f64>, lo: f64, hi: f64, width: f64| {
        if hi <= lo {
            return;
        }
        let m = ((hi - lo) / width).ceil().max(1.0) as usize;
        for i in 1..=m {
            cuts.push(lo + (hi - lo) * i as f64 / m as f64);
        }
    };
    if fine_hi > fine_lo {
        push_range(&mut cuts, a, fine_lo, coarse);
        push_range(&mut cuts, fine_lo, fine_hi, eps / 2.0);
        push_range(&mut cuts, fine_hi, b, coarse);
    } else {
        push_range(&mut cuts, a, b, coarse);
    }
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-300);
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

fn integrate_graded(
    a: f64,
    b: f64,
    center: f64,
    eps: f64,
    mut f: impl FnMut(f64) -> Complex64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (lo, hi) in graded_panels(a, b, center, eps) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            acc += f(mid + half * x) * (w * half);
        }
    }
    acc
}

/// The pair of singular integrals (I_p, I_q) carried by the diagonal and
/// off-diagonal entries of the integrated resolvent difference, at
/// evaluation radius r and regularization eps. As eps -> 0 they converge to
/// the even part of h and the odd quotient of h at r.
pub fn singular_integrals(
    h: &SpectralFunctionSpec,
    r: f64,
    eps: f64,
) -> (Complex64, Complex64) {
    let rad = SPECTRAL_RADIUS;
    let i_p = integrate_graded(-rad, rad, r, eps, |rho| {
        h.parts(rho.abs()).even * poisson_kernel(r, rho, eps)
    });
    let i_q = integrate_graded(0.0, rad, r.abs(), eps, |rho| {
        h.parts(rho).odd_quotient * q_kernel(r, rho, eps)
    });
    (i_p, i_q)
}

/// Same I_q evaluated through the split Q = P + T; agrees with the direct
/// route to rounding and serves as an independent algebraic path.
pub fn i_q_via_split(h: &SpectralFunctionSpec, r: f64, eps: f64) -> Complex64 {
    let rad = SPECTRAL_RADIUS;
    integrate_graded(0.0, rad, r.abs(), eps, |rho| {
        h.parts(rho).odd_quotient * (poisson_kernel(r.abs(), rho, eps) + t_kernel(r, rho, eps))
    })
}

/// Uniform bounds on the singular integrals: |I_p| <= C_p(h) and
/// |I_q| <= 4 C_q(h), where C_p and C_q are the even/odd suprema of h.
pub fn kernel_bounds(h: &SpectralFunctionSpec) -> (f64, f64) {
    let mut c_p: f64 = 0.0;
    let mut c_q: f64 = 0.0;
    let n = 20_000;
    for k in 1..=n {
        let r = SPECTRAL_RADIUS * k as f64 / n as f64;
        let p = h.parts(r);
        c_p = c_p.max(p.even.norm());
        c_q = c_q.max(p.odd_quotient.norm());
    }
    (c_p, 4.0 * c_q)
}

/// The eps-regularized resolvent-difference calculus applied to a signal:
/// the model field carries I_p on the diagonal and I_q times the symbol
/// entries off the diagonal, evaluated at each grid radius. Converges to
/// the model-based h(F) x as eps -> 0.
pub fn calculus_via_resolvent(
    h: &SpectralFunctionSpec,
    eps: f64,
    x: &SampledSignal,
) -> Result<SampledSignal> {
    if !h.admissible_norm().is_finite() {
        return Err(Error::InadmissibleFunction);
    }
    let eps_valid = eps.is_finite() && eps > 0.0;
    if !eps_valid {
        return Err(Error::BadGridBounds {
            s_min: eps,
            s_max: eps,
        });
    }
    let plan = x.plan.clone();
    let field = MatrixField::from_fn(plan.clone(), |mu| {
        let r = zeta_radius(mu);
        let (i_p, i_q) = singular_integrals(h, r, eps);
        let (f_pm, f_mp) = symbol_entries(mu);
        SymbolMatrix2::new(i_p, i_q * f_pm, i_q * f_mp, i_p)
    });
    let y = crate::mellin::forward_transform(x);
    let gy = crate::model_ops::multiply(&field, &y)?;
    Ok(crate::mellin::inverse_transform(&gy))
}
