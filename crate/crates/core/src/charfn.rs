//! Symbolic descriptions of real even characteristic functions.
//!
//! Every variant evaluates to 1 at `t = 0` and is even in `t`; evaluation
//! lives in [`crate::densities::eval_cf`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::law::RadialLaw;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum CharFnSpec {
    /// `exp(-A |t|^p)`, `A >= 0`, `p` in `(0, 2]`.
    SymmetricStable { scale: f64, p: f64 },
    /// `exp(-C |t|^q - D |t|^p)`, the pseudostable candidate.
    Pseudostable { c: f64, d: f64, q: f64, p: f64 },
    /// Truncated product `prod_{j=0}^{jmax} sin(beta alpha^j t)/(beta alpha^j t)`,
    /// the self-decomposable fixed-point characteristic function.
    SincProduct { alpha: f64, beta: f64, jmax: u32 },
    /// Scale mixture of the symmetric p-stable:
    /// `integral exp(-|t s|^p) radial(ds)`.
    MixtureOfStable { p: f64, radial: RadialLaw },
    /// `exp(-|t|^p A (1 + eps cos(2 pi ln|t| / ln c)))`; the semi-stable
    /// log-periodic family, defined as 1 at `t = 0` by continuity.
    LogPeriodic { a: f64, eps: f64, p: f64, c: f64 },
}

impl CharFnSpec {
    pub fn symmetric_stable(scale: f64, p: f64) -> Result<Self> {
        if !(scale.is_finite() && scale >= 0.0) {
            return Err(Error::invalid(format!("scale must be >= 0, got {scale}")));
        }
        check_index(p)?;
        Ok(CharFnSpec::SymmetricStable { scale, p })
    }

    pub fn pseudostable(c: f64, d: f64, q: f64, p: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0 && d.is_finite() && d >= 0.0) {
            return Err(Error::invalid("pseudostable C and D must be >= 0"));
        }
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::invalid(format!("q must be > 0, got {q}")));
        }
        check_index(p)?;
        Ok(CharFnSpec::Pseudostable { c, d, q, p })
    }

    pub fn sinc_product(alpha: f64, beta: f64, jmax: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::invalid(format!("beta must be > 0, got {beta}")));
        }
        if jmax == 0 {
            return Err(Error::invalid("jmax must be >= 1"));
        }
        Ok(CharFnSpec::SincProduct { alpha, beta, jmax })
    }

    pub fn mixture_of_stable(p: f64, radial: RadialLaw) -> Result<Self> {
        check_index(p)?;
        radial.validate()?;
        Ok(CharFnSpec::MixtureOfStable { p, radial })
    }

    pub fn log_periodic(a: f64, eps: f64, p: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid(format!("amplitude A must be > 0, got {a}")));
        }
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::invalid(format!("eps must lie in [0, 1), got {eps}")));
        }
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::invalid(format!("p must be > 0, got {p}")));
        }
        if !(c.is_finite() && c > 1.0) {
            return Err(Error::invalid(format!("period base c must be > 1, got {c}")));
        }
        Ok(CharFnSpec::LogPeriodic { a, eps, p, c })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CharFnSpec::SymmetricStable { scale, p } => {
                Self::symmetric_stable(*scale, *p).map(|_| ())
            }
            CharFnSpec::Pseudostable { c, d, q, p } => {
                Self::pseudostable(*c, *d, *q, *p).map(|_| ())
            }
            CharFnSpec::SincProduct { alpha, beta, jmax } => {
                Self::sinc_product(*alpha, *beta, *jmax).map(|_| ())
            }
            CharFnSpec::MixtureOfStable { p, radial } => {
                check_index(*p)?;
                radial.validate()
            }
            CharFnSpec::LogPeriodic { a, eps, p, c } => {
                Self::log_periodic(*a, *eps, *p, *c).map(|_| ())
            }
        }
    }
}

fn check_index(p: f64) -> Result<()> {
    if !(p > 0.0 && p <= 2.0) {
        return Err(Error::invalid(format!("stability index p must lie in (0, 2], got {p}")));
    }
    Ok(())
}

/// Default truncation depth for the sinc product: the first index whose
/// squared-argument tail bound drops below 1e-12.
pub fn default_sinc_jmax(alpha: f64) -> u32 {
    ((1e-12_f64).ln() / alpha.ln()).ceil() as u32
}

/// Scale-mix a symmetric stable base against a radial law.
///
/// With the unit base `exp(-|t|^p)` the result evaluates as
/// `integral exp(-|t s|^p) radial(ds)`. Mixing with `Dirac(1)` returns the
/// base unchanged, mixing with `Dirac(0)` returns the constant-1 spec. A
/// non-unit base scale `A` folds into the radial law as `T_{A^(1/p)}`, which
/// requires a closed-form rescaling (Dirac or Empirical radial).
pub fn mix(base: &CharFnSpec, radial: &RadialLaw) -> Result<CharFnSpec> {
    let (scale, p) = match base {
        CharFnSpec::SymmetricStable { scale, p } => (*scale, *p),
        other => {
            return Err(Error::UnsupportedRepresentation(format!(
                "mix needs a SymmetricStable base, got {other:?}"
            )))
        }
    };
    radial.validate()?;
    match radial {
        RadialLaw::Dirac { a } if *a == 1.0 => return Ok(base.clone()),
        RadialLaw::Dirac { a } if *a == 0.0 => {
            return Ok(CharFnSpec::MixtureOfStable {
                p,
                radial: RadialLaw::Dirac { a: 0.0 },
            })
        }
        _ => {}
    }
    let radial = if scale == 1.0 {
        radial.clone()
    } else {
        crate::law::rescale_radial(scale.powf(1.0 / p), radial)?
    };
    Ok(CharFnSpec::MixtureOfStable { p, radial })
}
