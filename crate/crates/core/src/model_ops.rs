//! Operator calculus in the model space: matrix-field multiplication,
//! functions of the truncated operator, spectral projectors, operator norms,
//! the commuting differential operator, and improper spectral integrals.

use std::sync::Arc;

use num_complex::Complex64;

use crate::admissible::{distance_to_spectrum, SpectralFunctionSpec, SpectralSet, SPECTRAL_RADIUS};
use crate::error::{Error, Result};
use crate::mellin::{forward_transform, inverse_transform, ModelVector, SampledSignal, TransformPlan};
use crate::symbol::{
    matrix_function_from_parts, param_map, symbol_matrix, zeta_radius, SymbolMatrix2,
};

/// Relative tail-mass limit for the discrete domain check of the commuting
/// operator.
pub const TAIL_MASS_LIMIT: f64 = 1e-6;

/// A per-mu family of 2x2 matrices G(mu_k) acting on the model space by
/// pointwise multiplication.
#[derive(Debug, Clone)]
pub struct MatrixField {
    pub plan: Arc<TransformPlan>,
    pub matrices: Vec<SymbolMatrix2>,
}

impl MatrixField {
    pub fn from_matrices(plan: Arc<TransformPlan>, matrices: Vec<SymbolMatrix2>) -> Result<Self> {
        if matrices.len() != plan.mu_len() {
            return Err(Error::PlanMismatch);
        }
        Ok(MatrixField { plan, matrices })
    }

    pub fn from_fn(plan: Arc<TransformPlan>, f: impl Fn(f64) -> SymbolMatrix2) -> Self {
        let matrices = plan.mu_grid().iter().map(|&mu| f(mu)).collect();
        MatrixField { plan, matrices }
    }

    pub fn identity(plan: Arc<TransformPlan>) -> Self {
        Self::from_fn(plan, |_| SymbolMatrix2::identity())
    }

    /// The symbol field F(mu_k).
    pub fn symbol(plan: Arc<TransformPlan>) -> Self {
        Self::from_fn(plan, |mu| symbol_matrix(mu).expect("mu grid is nonnegative"))
    }

    /// The adjoint symbol field F*(mu_k).
    pub fn symbol_adjoint(plan: Arc<TransformPlan>) -> Self {
        Self::from_fn(plan, |mu| {
            symbol_matrix(mu).expect("mu grid is nonnegative").adjoint()
        })
    }

    /// h(F(mu_k)) for an admissible function spec.
    pub fn from_spec(plan: Arc<TransformPlan>, h: &SpectralFunctionSpec) -> Self {
        Self::from_fn(plan, |mu| {
            matrix_function_from_parts(h.parts(zeta_radius(mu)), mu)
        })
    }

    pub fn adjoint(&self) -> Self {
        MatrixField {
            plan: self.plan.clone(),
            matrices: self.matrices.iter().map(|m| m.adjoint()).collect(),
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.plan != other.plan {
            return Err(Error::PlanMismatch);
        }
        Ok(MatrixField {
            plan: self.plan.clone(),
            matrices: self
                .matrices
                .iter()
                .zip(other.matrices.iter())
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    /// Largest exact matrix norm over the grid.
    pub fn sup_norm(&self) -> f64 {
        self.matrices.iter().map(|m| m.norm()).fold(0.0, f64::max)
    }
}

/// Pointwise multiplication (M_G y)(mu_k) = G(mu_k) y(mu_k).
pub fn multiply(g: &MatrixField, y: &ModelVector) -> Result<ModelVector> {
    if g.plan != y.plan {
        return Err(Error::PlanMismatch);
    }
    let mut plus = Vec::with_capacity(y.plus.len());
    let mut minus = Vec::with_capacity(y.minus.len());
    for (m, (p, q)) in g.matrices.iter().zip(y.plus.iter().zip(y.minus.iter())) {
        let out = m.apply([*p, *q]);
        plus.push(out[0]);
        minus.push(out[1]);
    }
    ModelVector::new(y.plan.clone(), plus, minus)
}

fn conjugated_apply(field: &MatrixField, x: &SampledSignal) -> Result<SampledSignal> {
    if field.plan != x.plan {
        return Err(Error::PlanMismatch);
    }
    let y = forward_transform(x);
    let gy = multiply(field, &y)?;
    Ok(inverse_transform(&gy))
}

/// h(F) applied through the model: U^{-1} M_{h(F)} U x. Rejects functions
/// whose admissible norm diverges.
pub fn apply_operator_function(
    h: &SpectralFunctionSpec,
    x: &SampledSignal,
) -> Result<SampledSignal> {
    if !h.admissible_norm().is_finite() {
        return Err(Error::InadmissibleFunction);
    }
    conjugated_apply(&MatrixField::from_spec(x.plan.clone(), h), x)
}

/// The truncated Fourier operator itself (h = identity).
pub fn apply_fourier(x: &SampledSignal) -> Result<SampledSignal> {
    conjugated_apply(&MatrixField::symbol(x.plan.clone()), x)
}

/// The adjoint operator, via the conjugate-transposed symbol field.
pub fn apply_adjoint(x: &SampledSignal) -> Result<SampledSignal> {
    conjugated_apply(&MatrixField::symbol_adjoint(x.plan.clone()), x)
}

/// Resolvent (zI - F)^{-1} applied through the model. z must stay off the
/// closed spectral segment.
pub fn apply_resolvent(z: Complex64, x: &SampledSignal) -> Result<SampledSignal> {
    let dist = distance_to_spectrum(z);
    if dist <= 1e-12 {
        return Err(Error::SpectralPoint { z, dist });
    }
    apply_operator_function(&SpectralFunctionSpec::resolvent_kernel(z), x)
}

/// Spectral projector P(Delta) applied to a signal. The set must be
/// admissible: its asymmetric part essentially separated from zero.
pub fn spectral_projector_apply(d: &SpectralSet, x: &SampledSignal) -> Result<SampledSignal> {
    let (_, asym) = d.decompose();
    let dist = asym.ess_dist_zero();
    let separated = dist > 0.0;
    if !separated {
        return Err(Error::InadmissibleSet { dist });
    }
    conjugated_apply(
        &MatrixField::from_spec(x.plan.clone(), &SpectralFunctionSpec::indicator(d.clone())),
        x,
    )
}

/// Extra evaluation radii for norm suprema: a uniform sweep of (0, R]
/// complementing the exponentially clustered radii of the mu grid.
fn uniform_radii(count: usize) -> impl Iterator<Item = f64> {
    (1..=count).map(move |k| SPECTRAL_RADIUS * k as f64 / count as f64)
}

/// Operator norm ||h(F)||: the supremum of the exact 2x2 norm of h(F(mu))
/// over the plan's mu-grid, a uniform radius sweep, the function's critical
/// radii (set endpoints, table nodes, resolvent feet), and the mu -> infinity
/// tail matrix evaluated at radius zero.
pub fn operator_norm(plan: &Arc<TransformPlan>, h: &SpectralFunctionSpec) -> f64 {
    let mut sup: f64 = 0.0;
    for &mu in plan.mu_grid() {
        sup = sup.max(matrix_function_from_parts(h.parts(zeta_radius(mu)), mu).norm());
    }
    // critical radii get one-sided offsets so a supremum attained exactly at
    // an interval endpoint survives the radius -> mu -> radius roundtrip
    let critical = h.critical_radii().into_iter().flat_map(|r| {
        let r = r.abs();
        [r, r * (1.0 + 1e-9), r * (1.0 - 1e-9)]
    });
    for r in uniform_radii(1024).chain(critical) {
        if let Ok(mu) = param_map(r) {
            sup = sup.max(matrix_function_from_parts(h.parts(zeta_radius(mu)), mu).norm());
        }
    }
    // tail: radius underflows to 0 and |f_pm| -> 1, |f_mp| -> 0
    let p0 = h.parts(0.0);
    let tail = SymbolMatrix2::new(
        p0.even,
        p0.odd_quotient,
        Complex64::new(0.0, 0.0),
        p0.even,
    );
    sup.max(tail.norm())
}

/// The commuting self-adjoint operator applied through the model: multiply
/// both transform components by lambda(mu) = mu^2 + 1/4. Signals whose
/// multiplied transform keeps more than [`TAIL_MASS_LIMIT`] of its mass in
/// the top frequency decile lie outside the discrete operator domain.
pub fn apply_l(x: &SampledSignal) -> Result<SampledSignal> {
    let y = forward_transform(x);
    let m = y.plan.mu_len();
    let mut plus = Vec::with_capacity(m);
    let mut minus = Vec::with_capacity(m);
    for (k, &mu) in y.plan.mu_grid().iter().enumerate() {
        let lambda = mu * mu + 0.25;
        plus.push(y.plus[k] * lambda);
        minus.push(y.minus[k] * lambda);
    }
    let scaled = ModelVector::new(y.plan.clone(), plus, minus)?;
    let total = scaled.norm_sqr();
    if total > 0.0 {
        let cut = (9 * m) / 10;
        let w = y.plan.mu_step() / (2.0 * std::f64::consts::PI);
        let tail: f64 = (cut..m)
            .map(|k| (scaled.plus[k].norm_sqr() + scaled.minus[k].norm_sqr()) * w)
            .sum();
        let mass = tail / total;
        if mass > TAIL_MASS_LIMIT {
            return Err(Error::TailMass {
                mass,
                limit: TAIL_MASS_LIMIT,
            });
        }
    }
    Ok(inverse_transform(&scaled))
}

/// Improper integral over the spectral measure: for each epsilon in the
/// schedule, apply 1 on the symmetric complement of the epsilon-neighborhood
/// of zero times h. The iterates converge strongly to h(F) x.
pub fn improper_spectral_integral(
    h: &SpectralFunctionSpec,
    x: &SampledSignal,
    eps_schedule: &[f64],
) -> Result<Vec<SampledSignal>> {
    if !h.admissible_norm().is_finite() {
        return Err(Error::InadmissibleFunction);
    }
    let mut out = Vec::with_capacity(eps_schedule.len());
    for &eps in eps_schedule {
        let cutoff = SpectralFunctionSpec::indicator(SpectralSet::symmetric_complement(eps));
        let spec = SpectralFunctionSpec::Product {
            factors: vec![cutoff, h.clone()],
        };
        out.push(conjugated_apply(
            &MatrixField::from_spec(x.plan.clone(), &spec),
            x,
        )?);
    }
    Ok(out)
}
