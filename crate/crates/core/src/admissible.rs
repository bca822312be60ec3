//! Spectral sets on the slanted segment, their symmetric/asymmetric
//! decomposition, admissibility predicates, and the admissible-function
//! norm algebra.
//!
//! The spectral segment is parametrized by the signed radius
//! r in [-1/sqrt(2), 1/sqrt(2)] through zeta = r * e^{i pi/4}. Everything in
//! this module works in the r coordinate; the identification with complex
//! spectral points happens through [`zeta_of_radius`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Spectral radius of the truncated operator: the segment is
/// [-R, R] * e^{i pi/4} with R = 1/sqrt(2).
pub const SPECTRAL_RADIUS: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Unit direction of the spectral segment, e^{i pi/4}.
pub fn spectral_direction() -> Complex64 {
    Complex64::new(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
}

/// zeta = r * e^{i pi/4}.
pub fn zeta_of_radius(r: f64) -> Complex64 {
    spectral_direction() * r
}

/// Both endpoints of the spectral segment, exactly -(0.5+0.5i) and 0.5+0.5i.
pub fn spectrum_endpoints() -> (Complex64, Complex64) {
    (Complex64::new(-0.5, -0.5), Complex64::new(0.5, 0.5))
}

/// Distance from z to the closed spectral segment.
pub fn distance_to_spectrum(z: Complex64) -> f64 {
    let p = Complex64::new(0.5, 0.5);
    // projection parameter of z onto the line through +-p, clamped to the segment
    let tau = ((z * p.conj()).re / p.norm_sqr()).clamp(-1.0, 1.0);
    (z - p * tau).norm()
}

/// A finite union of closed subintervals of [-R, R], canonically normalized:
/// sorted, merged, zero-length parts dropped. Set operations follow measure
/// semantics, so interval boundaries carry no weight. Serialized as a plain
/// list of [lo, hi] pairs; deserialization re-normalizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct SpectralSet {
    intervals: Vec<[f64; 2]>,
}

impl From<Vec<[f64; 2]>> for SpectralSet {
    fn from(parts: Vec<[f64; 2]>) -> Self {
        SpectralSet::new(parts)
    }
}

impl From<SpectralSet> for Vec<[f64; 2]> {
    fn from(set: SpectralSet) -> Self {
        set.intervals
    }
}

impl SpectralSet {
    /// Normalize a list of [lo, hi] pairs into canonical form. Pairs given in
    /// reverse order are flipped; parts outside [-R, R] are clipped.
    pub fn new(parts: impl IntoIterator<Item = [f64; 2]>) -> Self {
        let mut iv: Vec<[f64; 2]> = parts
            .into_iter()
            .map(|[a, b]| if a <= b { [a, b] } else { [b, a] })
            .map(|[a, b]| [a.max(-SPECTRAL_RADIUS), b.min(SPECTRAL_RADIUS)])
            .filter(|[a, b]| b > a)
            .collect();
        iv.sort_by(|x, y| x[0].total_cmp(&y[0]));
        let mut merged: Vec<[f64; 2]> = Vec::with_capacity(iv.len());
        for [a, b] in iv {
            match merged.last_mut() {
                Some(last) if a <= last[1] => last[1] = last[1].max(b),
                _ => merged.push([a, b]),
            }
        }
        SpectralSet { intervals: merged }
    }

    pub fn empty() -> Self {
        SpectralSet { intervals: Vec::new() }
    }

    /// The full spectral segment.
    pub fn full() -> Self {
        SpectralSet::new([[-SPECTRAL_RADIUS, SPECTRAL_RADIUS]])
    }

    /// The positive tail [eps, R] on the zeta_+ branch.
    pub fn positive_tail(eps: f64) -> Self {
        SpectralSet::new([[eps, SPECTRAL_RADIUS]])
    }

    /// The negative tail [-R, -eps] on the zeta_- branch.
    pub fn negative_tail(eps: f64) -> Self {
        SpectralSet::new([[-SPECTRAL_RADIUS, -eps]])
    }

    /// The symmetric complement of the eps-neighborhood of zero,
    /// [-R, -eps] union [eps, R].
    pub fn symmetric_complement(eps: f64) -> Self {
        SpectralSet::new([[-SPECTRAL_RADIUS, -eps], [eps, SPECTRAL_RADIUS]])
    }

    pub fn intervals(&self) -> &[[f64; 2]] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|[a, b]| b - a).sum()
    }

    pub fn contains(&self, r: f64) -> bool {
        self.intervals.iter().any(|&[a, b]| a <= r && r <= b)
    }

    /// Mirror image -Delta.
    pub fn negate(&self) -> Self {
        SpectralSet::new(self.intervals.iter().map(|&[a, b]| [-b, -a]))
    }

    pub fn union(&self, other: &Self) -> Self {
        SpectralSet::new(self.intervals.iter().chain(other.intervals.iter()).copied())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for &[a, b] in &self.intervals {
            for &[c, d] in &other.intervals {
                let lo = a.max(c);
                let hi = b.min(d);
                if hi > lo {
                    out.push([lo, hi]);
                }
            }
        }
        SpectralSet::new(out)
    }

    /// Set difference self \ other, as the closure of the open difference.
    pub fn difference(&self, other: &Self) -> Self {
        let mut pieces = self.intervals.clone();
        for &[c, d] in &other.intervals {
            let mut next = Vec::with_capacity(pieces.len() + 1);
            for [a, b] in pieces {
                if d <= a || b <= c {
                    next.push([a, b]);
                } else {
                    if a < c {
                        next.push([a, c]);
                    }
                    if d < b {
                        next.push([d, b]);
                    }
                }
            }
            pieces = next;
        }
        SpectralSet::new(pieces)
    }

    pub fn complement(&self) -> Self {
        Self::full().difference(self)
    }

    /// Symmetric part Delta âˆ© (-Delta) and asymmetric part Delta \ (-Delta).
    pub fn decompose(&self) -> (SpectralSet, SpectralSet) {
        let neg = self.negate();
        (self.intersect(&neg), self.difference(&neg))
    }

    /// Essential distance from zero: inf |r| over the set (each part has
    /// positive measure, so ess inf = inf). +infinity for the empty set.
    pub fn ess_dist_zero(&self) -> f64 {
        self.intervals
            .iter()
            .map(|&[a, b]| {
                if a <= 0.0 && 0.0 <= b {
                    0.0
                } else {
                    a.abs().min(b.abs())
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// A set is admissible when its asymmetric part stays essentially away
    /// from zero (an empty asymmetric part qualifies).
    pub fn is_admissible(&self) -> bool {
        self.decompose().1.ess_dist_zero() > 0.0
    }

    /// Essential closure. Interval unions with positive-length parts are
    /// already essentially closed; normalization has dropped degenerate
    /// parts, so this is the set itself.
    pub fn ess_closure(&self) -> SpectralSet {
        self.clone()
    }

    /// Interval endpoints, used as exact evaluation radii by norm sweeps.
    pub fn endpoint_radii(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.intervals.len());
        for &[a, b] in &self.intervals {
            out.push(a);
            out.push(b);
        }
        out
    }
}

/// Even/odd split of a function on the two-point set {zeta, -zeta}:
/// `even` = (h(zeta)+h(-zeta))/2 and `odd_quotient` = (h(zeta)-h(-zeta))/(2 zeta),
/// so that h(zeta) = even + zeta * odd_quotient.
///
/// Every built-in evaluator produces this pair directly, without dividing by
/// zeta, which keeps the calculus finite all the way to the spectral
/// singularity r = 0 (the mu -> infinity limit of the symbol).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionParts {
    pub even: Complex64,
    pub odd_quotient: Complex64,
}

impl FunctionParts {
    /// The supremand of the admissible norm at this radius:
    /// |even| + |odd_quotient| (the odd term divided by |zeta| cancels the
    /// |zeta| in the quotient).
    pub fn supremand(&self) -> f64 {
        self.even.norm() + self.odd_quotient.norm()
    }
}

/// A closed family of evaluators on the punctured spectral segment.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SpectralFunctionSpec {
    /// h == c
    Constant { value: Complex64 },
    /// h(zeta) = zeta
    Identity,
    /// h(zeta) = sum_k coeffs[k] * zeta^k
    Polynomial { coeffs: Vec<Complex64> },
    /// h = 1 on the set, 0 elsewhere
    Indicator { set: SpectralSet },
    /// h(zeta) = (z - zeta)^{-1}
    Resolvent { z: Complex64 },
    /// Piecewise-linear table over signed radii; nodes must cover both signs.
    Table { radii: Vec<f64>, values: Vec<Complex64> },
    Sum { terms: Vec<SpectralFunctionSpec> },
    Product { factors: Vec<SpectralFunctionSpec> },
    /// Pointwise 1/h, produced by [`SpectralFunctionSpec::inverse`].
    Reciprocal { of: Box<SpectralFunctionSpec> },
}

impl SpectralFunctionSpec {
    pub fn constant(value: Complex64) -> Self {
        SpectralFunctionSpec::Constant { value }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn indicator(set: SpectralSet) -> Self {
        SpectralFunctionSpec::Indicator { set }
    }

    pub fn resolvent_kernel(z: Complex64) -> Self {
        SpectralFunctionSpec::Resolvent { z }
    }

    /// Table constructor; sorts nodes by radius.
    pub fn table(mut nodes: Vec<(f64, Complex64)>) -> Self {
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        SpectralFunctionSpec::Table {
            radii: nodes.iter().map(|n| n.0).collect(),
            values: nodes.iter().map(|n| n.1).collect(),
        }
    }

    /// Evaluate h at an arbitrary complex point. Holomorphic families
    /// (constants, polynomials, resolvent kernels, and their combinations)
    /// extend off the segment; indicators and tables use the nearest-point
    /// extension onto the segment.
    pub fn eval_at_point(&self, z: Complex64) -> Complex64 {
        match self {
            SpectralFunctionSpec::Constant { value } => *value,
            SpectralFunctionSpec::Identity => z,
            SpectralFunctionSpec::Polynomial { coeffs } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for &c in coeffs.iter().rev() {
                    acc = acc * z + c;
                }
                acc
            }
            SpectralFunctionSpec::Resolvent { z: pole } => (pole - z).inv(),
            SpectralFunctionSpec::Sum { terms } => terms.iter().map(|t| t.eval_at_point(z)).sum(),
            SpectralFunctionSpec::Product { factors } => {
                factors.iter().map(|f| f.eval_at_point(z)).product()
            }
            SpectralFunctionSpec::Reciprocal { of } => of.eval_at_point(z).inv(),
            _ => {
                let r = ((z * spectral_direction().conj()).re)
                    .clamp(-SPECTRAL_RADIUS, SPECTRAL_RADIUS);
                self.eval(r)
            }
        }
    }

    /// Evaluate h at the spectral point with signed radius r.
    pub fn eval(&self, r: f64) -> Complex64 {
        match self {
            SpectralFunctionSpec::Constant { value } => *value,
            SpectralFunctionSpec::Identity => zeta_of_radius(r),
            SpectralFunctionSpec::Polynomial { coeffs } => {
                let zeta = zeta_of_radius(r);
                let mut acc = Complex64::new(0.0, 0.0);
                for &c in coeffs.iter().rev() {
                    acc = acc * zeta + c;
                }
                acc
            }
            SpectralFunctionSpec::Indicator { set } => {
                if set.contains(r) {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            SpectralFunctionSpec::Resolvent { z } => (z - zeta_of_radius(r)).inv(),
            SpectralFunctionSpec::Table { radii, values } => interp_table(radii, values, r),
            SpectralFunctionSpec::Sum { terms } => terms.iter().map(|t| t.eval(r)).sum(),
            SpectralFunctionSpec::Product { factors } => {
                factors.iter().map(|f| f.eval(r)).product()
            }
            SpectralFunctionSpec::Reciprocal { of } => of.eval(r).inv(),
        }
    }

    /// Even part and odd quotient at radius r >= 0. Exact at r = 0 for every
    /// built-in family, which is what the symbol calculus evaluates in the
    /// mu -> infinity tail.
    pub fn parts(&self, r: f64) -> FunctionParts {
        let r = r.abs();
        match self {
            SpectralFunctionSpec::Constant { value } => FunctionParts {
                even: *value,
                odd_quotient: Complex64::new(0.0, 0.0),
            },
            SpectralFunctionSpec::Identity => FunctionParts {
                even: Complex64::new(0.0, 0.0),
                odd_quotient: Complex64::new(1.0, 0.0),
            },
            SpectralFunctionSpec::Polynomial { coeffs } => {
                // split into even/odd powers; both reduce to series in zeta^2
                let z2 = zeta_of_radius(r).powu(2);
                let mut even = Complex64::new(0.0, 0.0);
                let mut odd_q = Complex64::new(0.0, 0.0);
                for (k, &c) in coeffs.iter().enumerate().rev() {
                    if k % 2 == 0 {
                        even = even * z2 + c;
                    } else {
                        odd_q = odd_q * z2 + c;
                    }
                }
                FunctionParts { even, odd_quotient: odd_q }
            }
            SpectralFunctionSpec::Indicator { set } => {
                let plus = set.contains(r);
                let minus = set.contains(-r);
                let even = Complex64::new((plus as u8 as f64 + minus as u8 as f64) / 2.0, 0.0);
                let odd_q = if plus == minus {
                    Complex64::new(0.0, 0.0)
                } else {
                    // (h(zeta)-h(-zeta))/(2 zeta) with difference +-1
                    let sign = if plus { 1.0 } else { -1.0 };
                    (zeta_of_radius(r) * 2.0).inv() * sign
                };
                FunctionParts { even, odd_quotient: odd_q }
            }
            SpectralFunctionSpec::Resolvent { z } => {
                // (1/(z-zeta) +- 1/(z+zeta)) / {2, 2 zeta} = {z, 1}/(z^2-zeta^2)
                let denom = z * z - zeta_of_radius(r).powu(2);
                FunctionParts {
                    even: z / denom,
                    odd_quotient: denom.inv(),
                }
            }
            SpectralFunctionSpec::Table { radii, values } => {
                if r < 1e-12 {
                    // resolve the odd quotient at the table's resolution floor
                    let delta = 1e-6;
                    let hp = interp_table(radii, values, delta);
                    let hm = interp_table(radii, values, -delta);
                    FunctionParts {
                        even: (hp + hm) / 2.0,
                        odd_quotient: (hp - hm) / (2.0 * zeta_of_radius(delta)),
                    }
                } else {
                    let hp = interp_table(radii, values, r);
                    let hm = interp_table(radii, values, -r);
                    FunctionParts {
                        even: (hp + hm) / 2.0,
                        odd_quotient: (hp - hm) / (2.0 * zeta_of_radius(r)),
                    }
                }
            }
            SpectralFunctionSpec::Sum { terms } => {
                let mut even = Complex64::new(0.0, 0.0);
                let mut odd_q = Complex64::new(0.0, 0.0);
                for t in terms {
                    let p = t.parts(r);
                    even += p.even;
                    odd_q += p.odd_quotient;
                }
                FunctionParts { even, odd_quotient: odd_q }
            }
            SpectralFunctionSpec::Product { factors } => {
                // (e1 + z q1)(e2 + z q2) = (e1 e2 + z^2 q1 q2) + z (e1 q2 + q1 e2)
                let z2 = zeta_of_radius(r).powu(2);
                let mut even = Complex64::new(1.0, 0.0);
                let mut odd_q = Complex64::new(0.0, 0.0);
                for f in factors {
                    let p = f.parts(r);
                    let new_even = even * p.even + z2 * odd_q * p.odd_quotient;
                    let new_odd = even * p.odd_quotient + odd_q * p.even;
                    even = new_even;
                    odd_q = new_odd;
                }
                FunctionParts { even, odd_quotient: odd_q }
            }
            SpectralFunctionSpec::Reciprocal { of } => {
                // 1/(e + z q) = (e - z q)/(e^2 - z^2 q^2)
                let p = of.parts(r);
                let z2 = zeta_of_radius(r).powu(2);
                let denom = p.even * p.even - z2 * p.odd_quotient * p.odd_quotient;
                FunctionParts {
                    even: p.even / denom,
                    odd_quotient: -p.odd_quotient / denom,
                }
            }
        }
    }

    /// Radii where a norm supremum may be attained exactly (interval
    /// endpoints, table nodes, the foot of the normal for resolvent kernels).
    pub fn critical_radii(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_critical_radii(&mut out);
        out.retain(|r| r.is_finite() && r.abs() <= SPECTRAL_RADIUS);
        out
    }

    fn collect_critical_radii(&self, out: &mut Vec<f64>) {
        match self {
            SpectralFunctionSpec::Indicator { set } => out.extend(set.endpoint_radii()),
            SpectralFunctionSpec::Resolvent { z } => {
                // |z^2 - i r^2| is minimized at r^2 = clamp(Im z^2, 0, 1/2)
                let rho = (z * z).im.clamp(0.0, 0.5);
                if rho > 0.0 {
                    out.push(rho.sqrt());
                }
            }
            SpectralFunctionSpec::Table { radii, .. } => out.extend_from_slice(radii),
            SpectralFunctionSpec::Sum { terms } => {
                terms.iter().for_each(|t| t.collect_critical_radii(out))
            }
            SpectralFunctionSpec::Product { factors } => {
                factors.iter().for_each(|f| f.collect_critical_radii(out))
            }
            SpectralFunctionSpec::Reciprocal { of } => of.collect_critical_radii(out),
            _ => {}
        }
    }

    /// The admissible norm: ess sup over r in (0, R] of
    /// |h(zeta)+h(-zeta)|/2 + |h(zeta)-h(-zeta)|/(2|zeta|). The supremand is
    /// even in zeta, so positive radii suffice. Analytic for constants, the
    /// identity, and plain indicators; dense sampling with refinement near
    /// r = 0 and the critical radii otherwise. Returns +infinity when the
    /// supremand diverges at the spectral singularity.
    pub fn admissible_norm(&self) -> f64 {
        match self {
            SpectralFunctionSpec::Constant { value } => value.norm(),
            SpectralFunctionSpec::Identity => 1.0,
            SpectralFunctionSpec::Indicator { set } => {
                let (sym, asym) = set.decompose();
                let sym_sup: f64 = if sym.is_empty() { 0.0 } else { 1.0 };
                let asym_sup = if asym.is_empty() {
                    0.0
                } else {
                    let d = asym.ess_dist_zero();
                    if d == 0.0 {
                        return f64::INFINITY;
                    }
                    0.5 + 0.5 / d
                };
                sym_sup.max(asym_sup)
            }
            _ => {
                let mut sup: f64 = 0.0;
                for r in self.norm_sample_radii() {
                    sup = sup.max(self.parts(r).supremand());
                }
                if self.diverges_at_zero() {
                    f64::INFINITY
                } else {
                    sup
                }
            }
        }
    }

    /// Sample radii for ess-sup evaluation: a uniform sweep of (0, R], a
    /// geometric ladder down to 1e-9, and the critical radii with small
    /// one-sided offsets.
    fn norm_sample_radii(&self) -> Vec<f64> {
        let n_uniform = 100_000;
        let mut radii = Vec::with_capacity(n_uniform + 400);
        for k in 1..=n_uniform {
            radii.push(SPECTRAL_RADIUS * k as f64 / n_uniform as f64);
        }
        let mut r = 1e-9;
        while r < 1e-2 {
            radii.push(r);
            r *= 1.2;
        }
        for c in self.critical_radii() {
            let c = c.abs();
            if c > 0.0 {
                radii.push(c);
                radii.push((c * (1.0 + 1e-9)).min(SPECTRAL_RADIUS));
                radii.push(c * (1.0 - 1e-9));
            }
        }
        radii
    }

    /// Detect a supremand diverging as r -> 0 by comparing the geometric
    /// tail samples.
    fn diverges_at_zero(&self) -> bool {
        let near = self.parts(1e-9).supremand();
        let mid = self.parts(1e-6).supremand();
        let far = self.parts(1e-3).supremand();
        near > 1e9 && near > 50.0 * mid && mid > 50.0 * far
    }

    /// ess sup of |h| over the spectrum (both branches).
    pub fn sup_abs(&self) -> f64 {
        let mut sup: f64 = 0.0;
        for r in self.norm_sample_radii() {
            sup = sup.max(self.eval(r).norm()).max(self.eval(-r).norm());
        }
        sup
    }

    /// ess inf of |h| over the spectrum.
    pub fn ess_inf_abs(&self) -> f64 {
        match self {
            SpectralFunctionSpec::Constant { value } => value.norm(),
            SpectralFunctionSpec::Identity => 0.0,
            SpectralFunctionSpec::Indicator { set } => {
                if (set.measure() - 2.0 * SPECTRAL_RADIUS).abs() < 1e-15 {
                    1.0
                } else {
                    0.0
                }
            }
            _ => {
                let mut inf = f64::INFINITY;
                for r in self.norm_sample_radii() {
                    inf = inf.min(self.eval(r).norm()).min(self.eval(-r).norm());
                }
                inf
            }
        }
    }

    /// Pointwise 1/h, rejected unless the values of h are essentially
    /// separated from zero. The admissible norm of the result obeys
    /// ||1/h|| <= ||h|| / (ess inf |h|)^2.
    pub fn inverse(&self) -> Result<SpectralFunctionSpec> {
        let inf = self.ess_inf_abs();
        if inf <= 0.0 {
            return Err(Error::NotInvertible { inf });
        }
        Ok(SpectralFunctionSpec::Reciprocal { of: Box::new(self.clone()) })
    }

    /// Closure of {h(r e^{i pi/4})} sampled on a dense signed grid. For the
    /// built-in (piecewise continuous) families this is the essential image.
    pub fn essential_image(&self, samples_per_side: usize) -> Vec<Complex64> {
        match self {
            SpectralFunctionSpec::Constant { value } => vec![*value],
            SpectralFunctionSpec::Indicator { set } => {
                let mut out = Vec::new();
                if set.measure() < 2.0 * SPECTRAL_RADIUS - 1e-15 {
                    out.push(Complex64::new(0.0, 0.0));
                }
                if !set.is_empty() {
                    out.push(Complex64::new(1.0, 0.0));
                }
                out
            }
            _ => {
                let n = samples_per_side.max(2);
                let mut out = Vec::with_capacity(2 * n + 1);
                for k in -(n as i64)..=(n as i64) {
                    let r = SPECTRAL_RADIUS * k as f64 / n as f64;
                    if r != 0.0 {
                        out.push(self.eval(r));
                    }
                }
                out
            }
        }
    }
}

fn interp_table(radii: &[f64], values: &[Complex64], r: f64) -> Complex64 {
    debug_assert!(radii.len() == values.len() && !radii.is_empty());
    if r <= radii[0] {
        return values[0];
    }
    if r >= radii[radii.len() - 1] {
        return values[values.len() - 1];
    }
    let idx = radii.partition_point(|&x| x <= r);
    let (r0, r1) = (radii[idx - 1], radii[idx]);
    let (v0, v1) = (values[idx - 1], values[idx]);
    let w = (r - r0) / (r1 - r0);
    v0 * (1.0 - w) + v1 * w
}
