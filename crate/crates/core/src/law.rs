//! Probability-law representations: laws on the half-line `[0, inf)`
//! (mixing laws of scale mixtures) and signed laws on the real line, plus
//! the rescaling operator `T_t`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::trapezoid;
use crate::rng::RngStream;

/// Tolerance for the trapezoid normalization of a grid density.
pub const GRID_NORM_TOL: f64 = 1e-6;

/// A probability law on `[0, inf)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum RadialLaw {
    /// Point mass at `a >= 0`.
    Dirac { a: f64 },
    /// Empirical law of a non-empty sample of nonnegative reals.
    Empirical { samples: Vec<f64> },
    /// Tabulated density on an increasing grid, trapezoid-normalized.
    GridDensity { xs: Vec<f64>, fs: Vec<f64> },
    /// Generalized Gamma with density
    /// `a / (Gamma(p/a) lambda^(p/a)) x^(p-1) exp(-x^a / lambda)`.
    GeneralizedGamma { lambda: f64, p: f64, a: f64 },
    /// Radial law of the spherically weakly stable family: the law of the
    /// norm factor pairing with the uniform sphere direction in dimension `n`.
    WeaklyStableRadial { alpha: f64, n: u32 },
}

impl RadialLaw {
    pub fn dirac(a: f64) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::invalid(format!("Dirac point must be finite and >= 0, got {a}")));
        }
        Ok(RadialLaw::Dirac { a })
    }

    pub fn empirical(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("empirical radial law needs at least one sample"));
        }
        if let Some(bad) = samples.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
            return Err(Error::invalid(format!("radial samples must be finite and >= 0, got {bad}")));
        }
        Ok(RadialLaw::Empirical { samples })
    }

    pub fn grid_density(xs: Vec<f64>, fs: Vec<f64>) -> Result<Self> {
        if xs.len() != fs.len() || xs.len() < 2 {
            return Err(Error::invalid("grid density needs xs and fs of equal length >= 2"));
        }
        if xs[0] < 0.0 || xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("grid must be nonnegative and strictly increasing"));
        }
        if fs.iter().any(|f| !(f.is_finite() && *f >= 0.0)) {
            return Err(Error::invalid("grid density values must be finite and >= 0"));
        }
        let total = trapezoid(&xs, &fs);
        if (total - 1.0).abs() > GRID_NORM_TOL {
            return Err(Error::invalid(format!(
                "grid density integrates to {total}, outside 1 +/- {GRID_NORM_TOL}"
            )));
        }
        Ok(RadialLaw::GridDensity { xs, fs })
    }

    pub fn generalized_gamma(lambda: f64, p: f64, a: f64) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("p", p), ("a", a)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!("generalized Gamma {name} must be > 0, got {v}")));
            }
        }
        Ok(RadialLaw::GeneralizedGamma { lambda, p, a })
    }

    pub fn weakly_stable_radial(alpha: f64, n: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::invalid(format!("alpha must lie in (0, 2], got {alpha}")));
        }
        if n == 0 {
            return Err(Error::invalid("dimension n must be >= 1"));
        }
        Ok(RadialLaw::WeaklyStableRadial { alpha, n })
    }

    /// Validate an instance that bypassed the constructors (e.g. one that was
    /// deserialized from JSON).
    pub fn validate(&self) -> Result<()> {
        match self {
            RadialLaw::Dirac { a } => Self::dirac(*a).map(|_| ()),
            RadialLaw::Empirical { samples } => Self::empirical(samples.clone()).map(|_| ()),
            RadialLaw::GridDensity { xs, fs } => Self::grid_density(xs.clone(), fs.clone()).map(|_| ()),
            RadialLaw::GeneralizedGamma { lambda, p, a } => {
                Self::generalized_gamma(*lambda, *p, *a).map(|_| ())
            }
            RadialLaw::WeaklyStableRadial { alpha, n } => {
                Self::weakly_stable_radial(*alpha, *n).map(|_| ())
            }
        }
    }
}

/// A probability law on the real line, in the two representations the
/// artifact needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum SignedLaw {
    Dirac { x: f64 },
    Empirical { samples: Vec<f64> },
}

impl SignedLaw {
    pub fn dirac(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::invalid("Dirac point must be finite"));
        }
        Ok(SignedLaw::Dirac { x })
    }

    pub fn empirical(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("empirical law needs at least one sample"));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::invalid("samples must be finite"));
        }
        Ok(SignedLaw::Empirical { samples })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SignedLaw::Dirac { x } => Self::dirac(*x).map(|_| ()),
            SignedLaw::Empirical { samples } => Self::empirical(samples.clone()).map(|_| ()),
        }
    }
}

/// Rescaling operator `T_t` on signed laws: `T_t L(X) = L(tX)`, with
/// `T_0 = delta_0`.
pub fn rescale_signed(t: f64, law: &SignedLaw) -> SignedLaw {
    if t == 0.0 {
        return SignedLaw::Dirac { x: 0.0 };
    }
    match law {
        SignedLaw::Dirac { x } => SignedLaw::Dirac { x: t * x },
        SignedLaw::Empirical { samples } => SignedLaw::Empirical {
            samples: samples.iter().map(|s| t * s).collect(),
        },
    }
}

/// Rescaling operator on radial laws. The symmetric setting identifies a
/// mixing law with its absolute value, so `|t|` is used and the result stays
/// on `[0, inf)`. Grid and parametric variants have no closed-form rescaling
/// here; use [`rescale_radial_sampling`] for those.
pub fn rescale_radial(t: f64, law: &RadialLaw) -> Result<RadialLaw> {
    let t = t.abs();
    if t == 0.0 {
        return Ok(RadialLaw::Dirac { a: 0.0 });
    }
    match law {
        RadialLaw::Dirac { a } => Ok(RadialLaw::Dirac { a: t * a }),
        RadialLaw::Empirical { samples } => Ok(RadialLaw::Empirical {
            samples: samples.iter().map(|s| t * s).collect(),
        }),
        other => Err(Error::UnsupportedRepresentation(format!(
            "cannot rescale {other:?} without an RNG stream; use rescale_radial_sampling"
        ))),
    }
}

/// Rescale any radial law, falling back to an empirical representation of
/// `n` internal draws for the grid and parametric variants.
pub fn rescale_radial_sampling(
    t: f64,
    law: &RadialLaw,
    n: usize,
    rng: &mut RngStream,
) -> Result<RadialLaw> {
    match rescale_radial(t, law) {
        Ok(l) => Ok(l),
        Err(Error::UnsupportedRepresentation(_)) => {
            let samples = crate::samplers::sample_radial(law, n, rng)?;
            let t = t.abs();
            Ok(RadialLaw::Empirical {
                samples: samples.into_iter().map(|s| t * s).collect(),
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rescale_zero_gives_unit_mass_at_zero() {
        let law = SignedLaw::empirical(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(rescale_signed(0.0, &law), SignedLaw::Dirac { x: 0.0 });
        let radial = RadialLaw::empirical(vec![1.0, 2.0]).unwrap();
        assert_eq!(rescale_radial(0.0, &radial).unwrap(), RadialLaw::Dirac { a: 0.0 });
    }

    #[test]
    fn rescale_dirac_and_empirical() {
        assert_eq!(
            rescale_signed(2.0, &SignedLaw::Dirac { x: 3.0 }),
            SignedLaw::Dirac { x: 6.0 }
        );
        assert_eq!(
            rescale_signed(-1.0, &SignedLaw::Empirical { samples: vec![1.0, -2.0] }),
            SignedLaw::Empirical { samples: vec![-1.0, 2.0] }
        );
        // radial rescaling takes |t|
        assert_eq!(
            rescale_radial(-2.0, &RadialLaw::Dirac { a: 3.0 }).unwrap(),
            RadialLaw::Dirac { a: 6.0 }
        );
    }

    #[test]
    fn rescale_parametric_needs_rng() {
        let law = RadialLaw::generalized_gamma(2.0, 3.0, 2.0).unwrap();
        assert!(matches!(
            rescale_radial(2.0, &law),
            Err(Error::UnsupportedRepresentation(_))
        ));
        let mut rng = RngStream::new(1);
        let scaled = rescale_radial_sampling(2.0, &law, 100, &mut rng).unwrap();
        match scaled {
            RadialLaw::Empirical { samples } => assert_eq!(samples.len(), 100),
            other => panic!("expected empirical law, got {other:?}"),
        }
    }

    #[test]
    fn grid_density_normalization_is_enforced() {
        let xs = vec![0.0, 1.0, 2.0];
        let bad = vec![1.0, 1.0, 1.0]; // integrates to 2
        assert!(RadialLaw::grid_density(xs.clone(), bad).is_err());
        let good = vec![0.0, 1.0, 0.0]; // triangle, integrates to 1
        assert!(RadialLaw::grid_density(xs, good).is_ok());
    }

    #[test]
    fn constructor_guards() {
        assert!(RadialLaw::dirac(-1.0).is_err());
        assert!(RadialLaw::empirical(vec![]).is_err());
        assert!(RadialLaw::empirical(vec![1.0, -0.5]).is_err());
        assert!(RadialLaw::generalized_gamma(0.0, 1.0, 1.0).is_err());
        assert!(RadialLaw::weakly_stable_radial(2.5, 3).is_err());
        assert!(RadialLaw::weakly_stable_radial(1.0, 0).is_err());
    }

    #[test]
    fn serde_uses_variant_tag_and_flat_samples() {
        let law = RadialLaw::empirical(vec![1.0, 2.0, 3.0]).unwrap();
        let json = serde_json::to_string(&law).unwrap();
        assert_eq!(json, r#"{"variant":"Empirical","samples":[1.0,2.0,3.0]}"#);
        let back: RadialLaw = serde_json::from_str(&json).unwrap();
        assert_eq!(back, law);
    }
}
