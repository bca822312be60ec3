//! The 2x2 matrix symbol of the truncated half-axis Fourier operator, its
//! eigen-structure, matrix functional calculus, and resolvent norm bounds.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::admissible::{zeta_of_radius, FunctionParts, SpectralFunctionSpec, SPECTRAL_RADIUS};
use crate::error::{Error, Result};
use crate::special::{gamma_arg_critical_line, sech};

/// A 2x2 complex matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolMatrix2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl SymbolMatrix2 {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        SymbolMatrix2 { m11, m12, m21, m22 }
    }

    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        SymbolMatrix2::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        SymbolMatrix2::new(o, z, z, o)
    }

    pub fn antidiagonal(upper: Complex64, lower: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        SymbolMatrix2::new(z, upper, lower, z)
    }

    pub fn scale(&self, a: Complex64) -> Self {
        SymbolMatrix2::new(self.m11 * a, self.m12 * a, self.m21 * a, self.m22 * a)
    }

    pub fn add(&self, other: &Self) -> Self {
        SymbolMatrix2::new(
            self.m11 + other.m11,
            self.m12 + other.m12,
            self.m21 + other.m21,
            self.m22 + other.m22,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        SymbolMatrix2::new(
            self.m11 - other.m11,
            self.m12 - other.m12,
            self.m21 - other.m21,
            self.m22 - other.m22,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        SymbolMatrix2::new(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )
    }

    pub fn adjoint(&self) -> Self {
        SymbolMatrix2::new(
            self.m11.conj(),
            self.m21.conj(),
            self.m12.conj(),
            self.m22.conj(),
        )
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> Complex64 {
        self.m11 + self.m22
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m11 * v[0] + self.m12 * v[1],
            self.m21 * v[0] + self.m22 * v[1],
        ]
    }

    /// Frobenius quantity trace(M* M) = sum of squared entry moduli.
    pub fn gram_trace(&self) -> f64 {
        self.m11.norm_sqr() + self.m12.norm_sqr() + self.m21.norm_sqr() + self.m22.norm_sqr()
    }

    /// Exact operator (spectral) norm: the largest singular value, from the
    /// closed-form eigenvalues of M* M.
    pub fn norm(&self) -> f64 {
        // M*M = [[p, c],[conj(c), q]] hermitian
        let p = self.m11.norm_sqr() + self.m21.norm_sqr();
        let q = self.m12.norm_sqr() + self.m22.norm_sqr();
        let c = self.m11.conj() * self.m12 + self.m21.conj() * self.m22;
        let mid = 0.5 * (p + q);
        let rad = (0.25 * (p - q) * (p - q) + c.norm_sqr()).sqrt();
        (mid + rad).max(0.0).sqrt()
    }

    /// Smallest singular value.
    pub fn smallest_singular_value(&self) -> f64 {
        let p = self.m11.norm_sqr() + self.m21.norm_sqr();
        let q = self.m12.norm_sqr() + self.m22.norm_sqr();
        let c = self.m11.conj() * self.m12 + self.m21.conj() * self.m22;
        let mid = 0.5 * (p + q);
        let rad = (0.25 * (p - q) * (p - q) + c.norm_sqr()).sqrt();
        (mid - rad).max(0.0).sqrt()
    }

    /// Schur bound: the largest absolute row or column sum.
    pub fn schur_bound(&self) -> f64 {
        let r1 = self.m11.norm() + self.m12.norm();
        let r2 = self.m21.norm() + self.m22.norm();
        let c1 = self.m11.norm() + self.m21.norm();
        let c2 = self.m12.norm() + self.m22.norm();
        r1.max(r2).max(c1).max(c2)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.m11
            .norm()
            .max(self.m12.norm())
            .max(self.m21.norm())
            .max(self.m22.norm())
    }
}

/// Lower/upper bracket for the exact norm, combining the trace bounds with
/// the Schur row/column bounds.
pub fn matrix_norm_bounds(m: &SymbolMatrix2) -> (f64, f64, f64) {
    let t = m.gram_trace();
    let schur = m.schur_bound();
    let lower = (t / 2.0).sqrt().max(schur / std::f64::consts::SQRT_2);
    let upper = t.sqrt().min(schur);
    (lower, upper, m.norm())
}

/// Off-diagonal symbol entries at spectral parameter mu: (f_pm, f_mp), the
/// coefficients by which the operator maps the mu-eigenspace onto itself.
///
/// Assembled in polar form with the growing exponential fused against the
/// Gamma decay, so both entries stay bounded for arbitrarily large mu:
/// |f_pm| = (1+e^{-2 pi mu})^{-1/2}, |f_mp| = (1+e^{+2 pi mu})^{-1/2},
/// arg f_pm = pi/4 - arg Gamma(1/2 + i mu), arg f_mp = pi/4 + arg Gamma.
pub fn symbol_entries(mu: f64) -> (Complex64, Complex64) {
    let phi = gamma_arg_critical_line(mu);
    let quarter = std::f64::consts::FRAC_PI_4;
    let e2 = (-2.0 * std::f64::consts::PI * mu).exp();
    let mod_pm = 1.0 / (1.0 + e2).sqrt();
    let mod_mp = (-std::f64::consts::PI * mu).exp() / (1.0 + e2).sqrt();
    (
        Complex64::from_polar(mod_pm, quarter - phi),
        Complex64::from_polar(mod_mp, quarter + phi),
    )
}

/// The antidiagonal matrix symbol F(mu).
pub fn symbol_matrix(mu: f64) -> Result<SymbolMatrix2> {
    let mu_valid = mu.is_finite() && mu >= 0.0;
    if !mu_valid {
        return Err(Error::NegativeMu(mu));
    }
    let (f_pm, f_mp) = symbol_entries(mu);
    Ok(SymbolMatrix2::antidiagonal(f_pm, f_mp))
}

/// |zeta(mu)| = 1/sqrt(2 cosh(pi mu)), overflow-safe.
pub fn zeta_radius(mu: f64) -> f64 {
    let e = (-std::f64::consts::PI * mu).exp();
    (-std::f64::consts::FRAC_PI_2 * mu).exp() / (1.0 + e * e).sqrt()
}

/// The positive-branch eigenvalue zeta(mu) = e^{i pi/4}/sqrt(2 cosh(pi mu)).
pub fn zeta_plus(mu: f64) -> Complex64 {
    zeta_of_radius(zeta_radius(mu))
}

/// mu = arccosh(1/(2 r^2))/pi for a radius 0 < |r| <= 1/sqrt(2). The sign of
/// r selects the spectral branch and does not affect mu.
pub fn param_map(r: f64) -> Result<f64> {
    let r = r.abs();
    if r == 0.0 {
        return Err(Error::InfiniteMu);
    }
    if r > SPECTRAL_RADIUS * (1.0 + 1e-12) {
        return Err(Error::RadiusOutOfRange(r));
    }
    let x = (1.0 / (2.0 * r * r)).max(1.0);
    let mu = if x > 1e8 {
        // arccosh(x) ~ ln(2x) for large x, avoiding x^2 overflow
        (2.0 * x).ln()
    } else {
        (x + (x * x - 1.0).sqrt()).ln()
    };
    Ok(mu / std::f64::consts::PI)
}

/// Inverse of [`param_map`] on the positive branch.
pub fn param_map_inverse(mu: f64) -> f64 {
    zeta_radius(mu)
}

/// Per-mu spectral data of the symbol.
#[derive(Debug, Clone)]
pub struct EigenData {
    pub mu: f64,
    pub zeta_plus: Complex64,
    pub zeta_minus: Complex64,
    pub e_plus: SymbolMatrix2,
    pub e_minus: SymbolMatrix2,
    pub u_plus: [Complex64; 2],
    pub u_minus: [Complex64; 2],
    pub v_plus: [Complex64; 2],
    pub v_minus: [Complex64; 2],
    /// sin of the angle between the eigenvectors u_plus and u_minus.
    pub sin_theta: f64,
}

/// Eigenvalues, rank-one spectral projectors, eigenvectors, and the
/// eigenvector angle of F(mu).
///
/// The projector entries grow like e^{pi mu/2}; they overflow f64 past
/// mu ~ 450, which is far beyond the range where projector data is ever
/// evaluated (norm sweeps use the closed forms instead).
pub fn eigen_data(mu: f64) -> Result<EigenData> {
    let mu_valid = mu.is_finite() && mu >= 0.0;
    if !mu_valid {
        return Err(Error::NegativeMu(mu));
    }
    let (f_pm, f_mp) = symbol_entries(mu);
    let zeta = zeta_plus(mu);
    let half = Complex64::new(0.5, 0.0);
    // residues of (zI - F)^{-1} at +-zeta
    let upper = f_pm / (2.0 * zeta);
    let lower = f_mp / (2.0 * zeta);
    let e_plus = SymbolMatrix2::new(half, upper, lower, half);
    let e_minus = SymbolMatrix2::new(half, -upper, -lower, half);
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let w_u = f_mp / zeta; // second component of u_plus, |w_u| = e^{-pi mu/2}
    let w_v = (f_pm / zeta).conj(); // second component of v_plus
    let u_plus = [inv_sqrt2, inv_sqrt2 * w_u];
    let u_minus = [inv_sqrt2, -(inv_sqrt2 * w_u)];
    let v_plus = [inv_sqrt2, inv_sqrt2 * w_v];
    let v_minus = [inv_sqrt2, -(inv_sqrt2 * w_v)];
    // sin theta = 2|w|/(1+|w|^2) = sech(pi mu / 2), written overflow-safe
    let sin_theta = sech(std::f64::consts::FRAC_PI_2 * mu);
    Ok(EigenData {
        mu,
        zeta_plus: zeta,
        zeta_minus: -zeta,
        e_plus,
        e_minus,
        u_plus,
        u_minus,
        v_plus,
        v_minus,
        sin_theta,
    })
}

/// Norm of both spectral projectors E_+(mu), E_-(mu): cosh(pi mu / 2),
/// equivalently sqrt(1 + 2|zeta|^2)/(2|zeta|).
pub fn projector_norm(mu: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 * mu).cosh()
}

/// Assemble h(F(mu)) from the even/odd split of h: diagonal entries are the
/// even part, off-diagonal entries are the odd quotient times the symbol
/// entries. Finite even at radii that underflow to zero.
pub fn matrix_function_from_parts(parts: FunctionParts, mu: f64) -> SymbolMatrix2 {
    let (f_pm, f_mp) = symbol_entries(mu);
    SymbolMatrix2::new(
        parts.even,
        parts.odd_quotient * f_pm,
        parts.odd_quotient * f_mp,
        parts.even,
    )
}

/// h(F(mu)) for a function given at the two spectral points +-zeta(mu).
pub fn matrix_function(h: &SpectralFunctionSpec, mu: f64) -> Result<SymbolMatrix2> {
    let mu_valid = mu.is_finite() && mu >= 0.0;
    if !mu_valid {
        return Err(Error::NegativeMu(mu));
    }
    Ok(matrix_function_from_parts(h.parts(zeta_radius(mu)), mu))
}

/// The two-point norm ||h||_mu = |even| + |odd quotient| controlling
/// ||h(F(mu))|| from both sides: ||h||_mu / 2 <= ||h(F(mu))|| <= ||h||_mu.
pub fn mu_norm(h: &SpectralFunctionSpec, mu: f64) -> f64 {
    h.parts(zeta_radius(mu)).supremand()
}

/// (zI - F(mu))^{-1} by cofactor inversion of the antidiagonal symbol;
/// satisfies (zI - F) * result = I.
pub fn resolvent_matrix(z: Complex64, mu: f64) -> Result<SymbolMatrix2> {
    let mu_valid = mu.is_finite() && mu >= 0.0;
    if !mu_valid {
        return Err(Error::NegativeMu(mu));
    }
    let (f_pm, f_mp) = symbol_entries(mu);
    let det = z * z - f_pm * f_mp; // z^2 - i/(2 cosh pi mu)
    let r = zeta_radius(mu);
    if det.norm() <= 1e-13 * (z.norm_sqr() + r * r).max(f64::MIN_POSITIVE) {
        return Err(Error::SingularMatrix);
    }
    Ok(SymbolMatrix2::new(z / det, f_pm / det, f_mp / det, z / det))
}

/// Determinant of zI - F(mu): z^2 - i/(2 cosh pi mu).
pub fn resolvent_determinant(z: Complex64, mu: f64) -> Complex64 {
    let r = zeta_radius(mu);
    z * z - Complex64::new(0.0, r * r)
}

/// Closed-form distance from z^2 to the determinant segment [0, i/2]. For z
/// on the normal to the spectrum at zeta this equals 2|zeta||z-zeta| when
/// |z-zeta| <= |zeta| and |z|^2 otherwise.
pub fn dist_sq_segment(z: Complex64) -> f64 {
    let w = z * z;
    let rho = w.im.clamp(0.0, 0.5);
    (w - Complex64::new(0.0, rho)).norm()
}

/// The growth constants of the resolvent two-sided estimates.
#[derive(Debug, Clone, Copy)]
pub struct ResolventBound {
    /// A(z) = sqrt(2|z|^2 + 1)/2
    pub a_of_z: f64,
    /// B(z) = 4/(2|z|^2 + 1)^{3/2}
    pub b_of_z: f64,
    /// C(zeta) = sqrt(1 + 2|zeta|^2)/(2|zeta|); infinite at the singularity
    pub c_of_zeta: f64,
    /// dist(z^2, [0, i/2])
    pub dist_sq_segment: f64,
}

impl ResolventBound {
    pub fn new(z: Complex64, zeta_abs: f64) -> Self {
        let s = 2.0 * z.norm_sqr() + 1.0;
        ResolventBound {
            a_of_z: s.sqrt() / 2.0,
            b_of_z: 4.0 / s.powf(1.5),
            c_of_zeta: if zeta_abs > 0.0 {
                (1.0 + 2.0 * zeta_abs * zeta_abs).sqrt() / (2.0 * zeta_abs)
            } else {
                f64::INFINITY
            },
            dist_sq_segment: dist_sq_segment(z),
        }
    }

    /// Upper bound sqrt(2|z|^2+1)/dist(z^2, [0,i/2]) on the resolvent norm.
    pub fn upper(&self) -> f64 {
        2.0 * self.a_of_z / self.dist_sq_segment
    }

    /// Matching lower bound, smaller by 2 dist/(2|z|^2+1)^{3/2}.
    pub fn lower(&self) -> f64 {
        self.upper() - self.b_of_z * self.dist_sq_segment
    }
}
