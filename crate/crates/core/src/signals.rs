//! Named test signals used by the CLI and the verification suites.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mellin::{SampledSignal, TransformPlan};

/// x(t) = e^{-t}.
pub fn exp_decay(plan: Arc<TransformPlan>) -> SampledSignal {
    SampledSignal::from_fn(plan, |t| Complex64::new((-t).exp(), 0.0))
}

/// A C-infinity bump in the log variable, compactly supported on |s| < 3:
/// x(t) = t^{-1/2} exp(-1/(1-(s/3)^2)).
pub fn log_bump(plan: Arc<TransformPlan>) -> SampledSignal {
    SampledSignal::from_fn(plan, |t| {
        let s = t.ln() / 3.0;
        if s.abs() < 1.0 {
            Complex64::new(t.powf(-0.5) * (-1.0 / (1.0 - s * s)).exp(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The indicator of [a, b] in the t variable.
pub fn indicator(plan: Arc<TransformPlan>, a: f64, b: f64) -> SampledSignal {
    SampledSignal::from_fn(plan, |t| {
        if a <= t && t <= b {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// A unit Gaussian in the log variable: x(t) = t^{-1/2} e^{-(ln t)^2 / 2}.
pub fn gaussian_in_s(plan: Arc<TransformPlan>) -> SampledSignal {
    SampledSignal::from_fn(plan, |t| {
        let s = t.ln();
        Complex64::new(t.powf(-0.5) * (-s * s / 2.0).exp(), 0.0)
    })
}

/// x(t) = t e^{-t^2}, decaying at both grid ends.
pub fn t_gaussian(plan: Arc<TransformPlan>) -> SampledSignal {
    SampledSignal::from_fn(plan, |t| Complex64::new(t * (-t * t).exp(), 0.0))
}

/// The five-signal smooth suite used by the unitarity checks.
pub fn smooth_suite(plan: &Arc<TransformPlan>) -> Vec<(&'static str, SampledSignal)> {
    vec![
        ("exp-decay", exp_decay(plan.clone())),
        ("log-bump", log_bump(plan.clone())),
        ("gaussian-in-s", gaussian_in_s(plan.clone())),
        ("t-gaussian", t_gaussian(plan.clone())),
        (
            "oscillating-decay",
            SampledSignal::from_fn(plan.clone(), |t| {
                Complex64::new((3.0 * t).sin() * (-t).exp(), 0.2 * (-2.0 * t).exp())
            }),
        ),
    ]
}

/// Resolve a signal by name: `exp-decay`, `log-bump`, `gaussian-in-s`, or
/// `indicator(a,b)`.
pub fn by_name(plan: Arc<TransformPlan>, name: &str) -> Result<SampledSignal> {
    let trimmed = name.trim();
    match trimmed {
        "exp-decay" => return Ok(exp_decay(plan)),
        "log-bump" => return Ok(log_bump(plan)),
        "gaussian-in-s" => return Ok(gaussian_in_s(plan)),
        _ => {}
    }
    if let Some(args) = trimmed
        .strip_prefix("indicator(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() == 2 {
            if let (Ok(a), Ok(b)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
                return Ok(indicator(plan, a, b));
            }
        }
    }
    Err(Error::UnknownSignal(trimmed.to_string()))
}
