//! Batch front door for the half-axis Fourier operator library: sweep
//! generators, operator application on named signals, oracle cross-checks,
//! and dataset export for plotting.

mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use halfline_fourier::admissible::{
    distance_to_spectrum, spectrum_endpoints, zeta_of_radius, SpectralFunctionSpec, SpectralSet,
    SPECTRAL_RADIUS,
};
use halfline_fourier::mellin::{SampledSignal, TransformPlan};
use halfline_fourier::model_ops::{
    apply_adjoint, apply_fourier, apply_operator_function, apply_resolvent, operator_norm,
    spectral_projector_apply,
};
use halfline_fourier::oracle::{direct_truncated_fourier, QuadratureSpec};
use halfline_fourier::resolvent_calculus::calculus_via_resolvent;
use halfline_fourier::signals;
use halfline_fourier::symbol::{zeta_plus, ResolventBound};

use output::{num, Dataset, Format, Meta};

#[derive(Parser)]
#[command(
    name = "halfline-fourier",
    version,
    about = "Sweeps, operator application, and oracle cross-checks for the truncated half-axis Fourier operator"
)]
struct Cli {
    /// Left edge of the log grid (s = ln t)
    #[arg(long, global = true, allow_hyphen_values = true)]
    smin: Option<f64>,
    /// Right edge of the log grid
    #[arg(long, global = true, allow_hyphen_values = true)]
    smax: Option<f64>,
    /// Number of grid samples (power of two)
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Output path; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON config file; flags take precedence over its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the eigenvalue curves of the symbol over a mu sweep
    Spectrum {
        #[arg(long, default_value_t = 5.0)]
        mu_max: f64,
        #[arg(long, default_value_t = 501)]
        samples: usize,
    },
    /// Resolvent norms along the normal to the spectrum at radius r
    ResolventSweep {
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        r: f64,
        /// Comma-separated decreasing offsets from the spectral point
        #[arg(long, default_value = "0.1,0.01,0.001,0.0001")]
        offsets: String,
    },
    /// Spectral projector norms for one-sided and symmetric tail sets
    ProjectorNorms {
        #[arg(long, default_value = "0.2,0.1,0.05,0.02")]
        eps_list: String,
    },
    /// Apply an operator to a named signal and emit input/output columns
    Apply {
        /// exp-decay | log-bump | gaussian-in-s | indicator(a,b)
        #[arg(long)]
        signal: String,
        /// fourier | adjoint | resolvent | projector | function
        #[arg(long)]
        op: String,
        /// Resolvent point as "re,im" (for op = resolvent)
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Spectral set as JSON [[lo,hi],...] (for op = projector)
        #[arg(long)]
        set: Option<String>,
        /// Function spec as JSON or a shorthand name (for op = function)
        #[arg(long)]
        h: Option<String>,
    },
    /// L2 distance between the resolvent-based and model-based calculi
    CalculusCompare {
        /// one | identity | endpoint-vanishing | JSON spec
        #[arg(long, default_value = "one")]
        h: String,
        #[arg(long, default_value = "0.1,0.03,0.01,0.003")]
        eps_list: String,
        #[arg(long, default_value = "gaussian-in-s")]
        signal: String,
    },
    /// Transform unitarity defects for the named signal or the whole suite
    ParsevalCheck {
        #[arg(long)]
        signal: Option<String>,
    },
}

/// Failures split by exit code: flawed inputs (2) versus legitimate requests
/// that hit a numerical domain boundary (1).
enum CliError {
    Validation(String),
    Domain(halfline_fourier::Error),
}

impl CliError {
    fn report_and_code(self) -> ExitCode {
        match self {
            CliError::Validation(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            CliError::Domain(err) => {
                eprintln!("error: {err}");
                ExitCode::from(1)
            }
        }
    }
}

impl From<halfline_fourier::Error> for CliError {
    fn from(err: halfline_fourier::Error) -> Self {
        use halfline_fourier::Error as E;
        match err {
            E::GammaUnderflow { .. }
            | E::SingularMatrix
            | E::SpectralPoint { .. }
            | E::InadmissibleSet { .. }
            | E::InadmissibleFunction
            | E::NotInvertible { .. }
            | E::InfiniteMu
            | E::TailMass { .. } => CliError::Domain(err),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report_and_code(),
    }
}

#[derive(Debug, Default, serde::Deserialize)]
struct FileConfig {
    smin: Option<f64>,
    smax: Option<f64>,
    n: Option<usize>,
    format: Option<String>,
    out: Option<PathBuf>,
}

struct RunConfig {
    plan: Arc<TransformPlan>,
    format: Format,
    out: Option<PathBuf>,
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let file: FileConfig = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("cannot read config {path:?}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("bad config {path:?}: {e}")))?
        }
        None => FileConfig::default(),
    };
    let s_min = cli.smin.or(file.smin).unwrap_or(-8.0);
    let s_max = cli.smax.or(file.smax).unwrap_or(8.0);
    let n = cli.n.or(file.n).unwrap_or(1 << 14);
    let format = cli
        .format
        .or(match file.format.as_deref() {
            Some("csv") => Some(Format::Csv),
            Some("json") => Some(Format::Json),
            Some(other) => {
                return Err(CliError::Validation(format!(
                    "config format must be csv or json, got {other:?}"
                )))
            }
            None => None,
        })
        .unwrap_or(Format::Csv);
    let plan = TransformPlan::new(s_min, s_max, n)?;
    Ok(RunConfig {
        plan,
        format,
        out: cli.out.clone().or(file.out),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = resolve_config(&cli)?;
    let dataset = match &cli.command {
        Command::Spectrum { mu_max, samples } => cmd_spectrum(&config, *mu_max, *samples)?,
        Command::ResolventSweep { r, offsets } => {
            cmd_resolvent_sweep(&config, *r, &parse_list(offsets)?)?
        }
        Command::ProjectorNorms { eps_list } => {
            cmd_projector_norms(&config, &parse_list(eps_list)?)?
        }
        Command::Apply {
            signal,
            op,
            z,
            set,
            h,
        } => cmd_apply(&config, signal, op, z.as_deref(), set.as_deref(), h.as_deref())?,
        Command::CalculusCompare { h, eps_list, signal } => {
            cmd_calculus_compare(&config, h, &parse_list(eps_list)?, signal)?
        }
        Command::ParsevalCheck { signal } => cmd_parseval_check(&config, signal.as_deref())?,
    };
    emit(&config, &dataset)
}

fn emit(config: &RunConfig, dataset: &Dataset) -> Result<(), CliError> {
    match &config.out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| CliError::Validation(format!("cannot write {path:?}: {e}")))?;
            dataset
                .write(config.format, &mut file)
                .map_err(|e| CliError::Validation(format!("write failed: {e}")))?;
            file.flush()
                .map_err(|e| CliError::Validation(format!("write failed: {e}")))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match dataset.write(config.format, &mut lock) {
                Ok(()) => Ok(()),
                // a closed pipe downstream is not our failure
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(CliError::Validation(format!("write failed: {e}"))),
            }
        }
    }
}

fn meta(config: &RunConfig, command: &str, params: Value) -> Meta {
    Meta {
        command: command.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        s_min: config.plan.s_min(),
        s_max: config.plan.s_max(),
        n: config.plan.len(),
        params,
    }
}

fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|e| CliError::Validation(format!("bad number {part:?}: {e}")))
        })
        .collect()
}

fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Validation(format!(
            "complex value must be \"re,im\", got {text:?}"
        )));
    }
    let re = parts[0]
        .trim()
        .parse()
        .map_err(|e| CliError::Validation(format!("bad real part: {e}")))?;
    let im = parts[1]
        .trim()
        .parse()
        .map_err(|e| CliError::Validation(format!("bad imaginary part: {e}")))?;
    Ok(Complex64::new(re, im))
}

fn parse_spec(text: &str) -> Result<SpectralFunctionSpec, CliError> {
    match text {
        "one" => Ok(SpectralFunctionSpec::one()),
        "identity" => Ok(SpectralFunctionSpec::Identity),
        "endpoint-vanishing" => Ok(SpectralFunctionSpec::Product {
            factors: vec![
                SpectralFunctionSpec::Polynomial {
                    coeffs: vec![
                        Complex64::new(1.0, 0.0),
                        Complex64::new(0.0, 0.0),
                        Complex64::new(0.0, 2.0),
                    ],
                },
                SpectralFunctionSpec::Polynomial {
                    coeffs: vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
                },
            ],
        }),
        json => serde_json::from_str(json)
            .map_err(|e| CliError::Validation(format!("bad function spec: {e}"))),
    }
}

fn cmd_spectrum(config: &RunConfig, mu_max: f64, samples: usize) -> Result<Dataset, CliError> {
    let mu_max_valid = mu_max.is_finite() && mu_max > 0.0;
    if !mu_max_valid || samples < 2 {
        return Err(CliError::Validation(
            "spectrum needs mu_max > 0 and at least two samples".into(),
        ));
    }
    let (lo, hi) = spectrum_endpoints();
    let mut ds = Dataset::new(
        meta(
            config,
            "spectrum",
            json!({
                "mu_max": mu_max,
                "samples": samples,
                "endpoints": [[lo.re, lo.im], [hi.re, hi.im]],
            }),
        ),
        vec![
            "mu",
            "re_zeta_plus",
            "im_zeta_plus",
            "re_zeta_minus",
            "im_zeta_minus",
            "abs_zeta",
        ],
    );
    for k in 0..samples {
        let mu = mu_max * k as f64 / (samples - 1) as f64;
        let zeta = zeta_plus(mu);
        ds.push(vec![
            num(mu),
            num(zeta.re),
            num(zeta.im),
            num(-zeta.re),
            num(-zeta.im),
            num(zeta.norm()),
        ]);
    }
    Ok(ds)
}

fn cmd_resolvent_sweep(config: &RunConfig, r: f64, offsets: &[f64]) -> Result<Dataset, CliError> {
    if r.abs() > SPECTRAL_RADIUS {
        return Err(CliError::Validation(format!(
            "radius {r} lies outside [-1/sqrt(2), 1/sqrt(2)]"
        )));
    }
    if offsets.is_empty() || offsets[0] <= 0.0 || offsets.windows(2).any(|w| w[1] >= w[0]) {
        return Err(CliError::Validation(
            "offsets must be positive and strictly decreasing".into(),
        ));
    }
    let zeta = zeta_of_radius(r);
    let normal = Complex64::from_polar(1.0, 3.0 * std::f64::consts::FRAC_PI_4);
    let mut ds = Dataset::new(
        meta(config, "resolvent-sweep", json!({ "r": r, "offsets": offsets })),
        vec![
            "delta",
            "resolvent_norm",
            "upper_bound",
            "lower_bound",
            "scaled_norm",
            "limit_value",
        ],
    );
    for &delta in offsets {
        let z = zeta + normal * delta;
        let norm = operator_norm(&config.plan, &SpectralFunctionSpec::resolvent_kernel(z));
        let bound = ResolventBound::new(z, r.abs());
        let (scaled, limit) = if r != 0.0 {
            (norm * delta, bound.c_of_zeta)
        } else {
            (norm * z.norm_sqr(), 1.0)
        };
        ds.push(vec![
            num(delta),
            num(norm),
            num(bound.upper()),
            num(bound.lower()),
            num(scaled),
            num(limit),
        ]);
    }
    Ok(ds)
}

fn cmd_projector_norms(config: &RunConfig, eps_list: &[f64]) -> Result<Dataset, CliError> {
    if eps_list.iter().any(|&e| !(e > 0.0 && e <= SPECTRAL_RADIUS)) {
        return Err(CliError::Validation(
            "eps values must lie in (0, 1/sqrt(2)]".into(),
        ));
    }
    let mut ds = Dataset::new(
        meta(config, "projector-norms", json!({ "eps_list": eps_list })),
        vec![
            "eps",
            "asym_norm_computed",
            "asym_norm_analytic",
            "sym_norm_computed",
            "sym_norm_analytic",
        ],
    );
    for &eps in eps_list {
        let asym = operator_norm(
            &config.plan,
            &SpectralFunctionSpec::indicator(SpectralSet::positive_tail(eps)),
        );
        let sym = operator_norm(
            &config.plan,
            &SpectralFunctionSpec::indicator(SpectralSet::symmetric_complement(eps)),
        );
        let analytic = (1.0 + 2.0 * eps * eps).sqrt() / (2.0 * eps);
        ds.push(vec![num(eps), num(asym), num(analytic), num(sym), num(1.0)]);
    }
    Ok(ds)
}

fn cmd_apply(
    config: &RunConfig,
    signal: &str,
    op: &str,
    z: Option<&str>,
    set: Option<&str>,
    h: Option<&str>,
) -> Result<Dataset, CliError> {
    let x = signals::by_name(config.plan.clone(), signal)?;
    let mut params = json!({ "signal": signal, "op": op });
    // oracle closures evaluate the direct quadrature form of the operator
    type Oracle = Box<dyn Fn(f64) -> Complex64>;
    let (out, oracle): (SampledSignal, Option<Oracle>) = match op {
        "fourier" => {
            let out = apply_fourier(&x)?;
            let xo = x.clone();
            (
                out,
                Some(Box::new(move |t| {
                    direct_truncated_fourier(&xo, t, &QuadratureSpec::plain())
                })),
            )
        }
        "adjoint" => {
            let out = apply_adjoint(&x)?;
            let xo = x.clone();
            (
                out,
                Some(Box::new(move |t| {
                    // adjoint kernel e^{-i t xi}
                    direct_truncated_fourier(&xo, -t, &QuadratureSpec::plain())
                })),
            )
        }
        "resolvent" => {
            let z = parse_complex(z.ok_or_else(|| {
                CliError::Validation("op = resolvent needs --z \"re,im\"".into())
            })?)?;
            params["z"] = json!([z.re, z.im]);
            params["distance_to_spectrum"] = num(distance_to_spectrum(z));
            (apply_resolvent(z, &x)?, None)
        }
        "projector" => {
            let text = set.ok_or_else(|| {
                CliError::Validation("op = projector needs --set \"[[lo,hi],...]\"".into())
            })?;
            let d: SpectralSet = serde_json::from_str(text)
                .map_err(|e| CliError::Validation(format!("bad set: {e}")))?;
            params["set"] = serde_json::to_value(&d).unwrap_or(Value::Null);
            (spectral_projector_apply(&d, &x)?, None)
        }
        "function" => {
            let spec = parse_spec(
                h.ok_or_else(|| CliError::Validation("op = function needs --h <spec>".into()))?,
            )?;
            params["h"] = serde_json::to_value(&spec).unwrap_or(Value::Null);
            (apply_operator_function(&spec, &x)?, None)
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown op {other:?}; expected fourier | adjoint | resolvent | projector | function"
            )))
        }
    };

    let mut ds = Dataset::new(
        meta(config, "apply", params),
        vec![
            "t", "in_re", "in_im", "out_re", "out_im", "oracle_re", "oracle_im",
        ],
    );
    // the direct quadrature costs O(n) per point; sample it on a stride
    let stride = (config.plan.len() / 64).max(1);
    for (j, &t) in config.plan.t_grid().iter().enumerate() {
        let (o_re, o_im) = match &oracle {
            Some(f) if j % stride == 0 => {
                let v = f(t);
                (num(v.re), num(v.im))
            }
            _ => (Value::Null, Value::Null),
        };
        ds.push(vec![
            num(t),
            num(x.values[j].re),
            num(x.values[j].im),
            num(out.values[j].re),
            num(out.values[j].im),
            o_re,
            o_im,
        ]);
    }
    Ok(ds)
}

fn cmd_calculus_compare(
    config: &RunConfig,
    h_text: &str,
    eps_list: &[f64],
    signal: &str,
) -> Result<Dataset, CliError> {
    if eps_list.iter().any(|&e| e <= 0.0) {
        return Err(CliError::Validation("eps values must be positive".into()));
    }
    let h = parse_spec(h_text)?;
    let x = signals::by_name(config.plan.clone(), signal)?;
    let reference = apply_operator_function(&h, &x)?;
    let scale = reference.norm().max(x.norm());
    let mut ds = Dataset::new(
        meta(
            config,
            "calculus-compare",
            json!({ "h": h_text, "signal": signal, "eps_list": eps_list }),
        ),
        vec!["eps", "l2_error"],
    );
    for &eps in eps_list {
        let out = calculus_via_resolvent(&h, eps, &x)?;
        let err = out.sub(&reference)?.norm() / scale;
        ds.push(vec![num(eps), num(err)]);
    }
    Ok(ds)
}

fn cmd_parseval_check(config: &RunConfig, signal: Option<&str>) -> Result<Dataset, CliError> {
    let mut ds = Dataset::new(
        meta(config, "parseval-check", json!({ "signal": signal })),
        vec!["signal", "signal_norm_sq", "model_norm_sq", "defect"],
    );
    let entries: Vec<(String, SampledSignal)> = match signal {
        Some(name) => vec![(
            name.to_string(),
            signals::by_name(config.plan.clone(), name)?,
        )],
        None => signals::smooth_suite(&config.plan)
            .into_iter()
            .map(|(n, s)| (n.to_string(), s))
            .collect(),
    };
    for (name, x) in entries {
        let sig = x.norm_sqr();
        let model = halfline_fourier::mellin::forward_transform(&x).norm_sqr();
        let defect = halfline_fourier::mellin::parseval_defect(&x);
        ds.push(vec![Value::String(name), num(sig), num(model), num(defect)]);
    }
    Ok(ds)
}
