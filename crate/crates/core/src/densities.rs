//! Closed-form and quadrature evaluation of the radial densities and of
//! every characteristic-function variant.
//!
//! Density conventions match the samplers: `f_{2,n}` is the norm density of
//! an n-dimensional standard Gaussian, and for `alpha < 2` the radial law
//! `f_{alpha,n}` is the `sqrt(S)`-mixture of `f_{2,n}` where
//! `S = 2 theta_{alpha/2}` (so the mixed vector has characteristic function
//! `exp(-|xi|^alpha)`). At `alpha = 2` the mixture collapses and
//! `f_{alpha,n} = f_{2,n}`.

use std::f64::consts::PI;

use crate::charfn::CharFnSpec;
use crate::error::{Error, Result};
use crate::law::RadialLaw;
use crate::quad::{adaptive_simpson, dyadic_breaks, integrate_panels, trapezoid};
use crate::special::{gamma_p, ln_gamma};

/// Norm density of the n-dimensional standard Gaussian:
/// `f_{2,n}(r) = 2 / (2^(n/2) Gamma(n/2)) r^(n-1) exp(-r^2/2)`.
pub fn density_f2n(n: u32, r: f64) -> f64 {
    debug_assert!(n >= 1);
    if r < 0.0 {
        return 0.0;
    }
    if r == 0.0 {
        // r^(n-1) at the origin: finite only for n = 1
        return if n == 1 { (2.0 / PI).sqrt() } else { 0.0 };
    }
    let nf = n as f64;
    let ln_c = (2.0ف_f64).ln() - (nf / 2.0) * (2.0_f64).ln() - ln_gamma(nf / 2.0);
    (ln_c + (nf - 1.0) * r.ln() - 0.5 * r * r).exp()
}

/// Radial density of the rotationally invariant standard Cauchy vector:
/// `f_{1,n}(r) = 2^(2-n) Gamma(n) / Gamma(n/2)^2 * r^(n-1) / (r^2+1)^((n+1)/2)`.
pub fn density_f1n(n: u32, r: f64) -> f64 {
    debug_assert!(n >= 1);
    if r < 0.0 {
        return 0.0;
    }
    if r == 0.0 {
        return if n == 1 { 2.0 / PI } else { 0.0 };
    }
    let nf = n as f64;
    let ln_c = (2.0 - nf) * (2.0_f64).ln() + ln_gamma(nf) - 2.0 * ln_gamma(nf / 2.0);
    (ln_c + (nf - 1.0) * r.ln() - 0.5 * (nf + 1.0) * (r * r + 1.0).ln()).exp()
}

// ---------------------------------------------------------------------------
// Zolotarev integral representation of the positive stable density
// ---------------------------------------------------------------------------

/// `ln A(u)` for Zolotarev's function
/// `A(u) = sin(beta u)^(beta/(1-beta)) sin((1-beta) u) / sin(u)^(1/(1-beta))`.
fn ln_zolotarev_a(beta: f64, u: f64) -> f64 {
    let bb = beta / (1.0 - beta);
    bb * (beta * u).sin().ln() + ((1.0 - beta) * u).sin().ln() - (1.0 + bb) * u.sin().ln()
}

fn zolotarev_a_at_zero(beta: f64) -> f64 {
    // limit of A(u) as u -> 0+
    beta.powf(beta / (1.0 - beta)) * (1.0 - beta)
}

/// Density of the positive stable variable `theta_beta` with Laplace
/// transform `exp(-t^beta)`, `beta` in `(0, 1)`, by Zolotarev's single
/// integral over `(0, pi)`.
pub fn positive_stable_pdf(beta: f64, x: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::invalid(format!("beta must lie in (0, 1), got {beta}")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    let y = x.powf(-beta / (1.0 - beta));
    let integrand = |u: f64| -> f64 {
        let ln_a = if u <= 0.0 {
            zolotarev_a_at_zero(beta).ln()
        } else if u >= PI {
            return 0.0;
        } else {
            ln_zolotarev_a(beta, u)
        };
        let a = ln_a.exp();
        let e = ln_a - a * y;
        if e < -745.0 {
            0.0
        } else {
            e.exp()
        }
    };
    let integral = adaptive_simpson(&integrand, 0.0, PI, 1e-8);
    Ok(beta / ((1.0 - beta) * PI) * x.powf(-1.0 / (1.0 - beta)) * integral)
}

/// CDF companion of [`positive_stable_pdf`]:
/// `F(x) = (1/pi) integral_0^pi exp(-A(u) x^(-beta/(1-beta))) du`.
pub fn positive_stable_cdf(beta: f64, x: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::invalid(format!("beta must lie in (0, 1), got {beta}")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    let y = x.powf(-beta / (1.0 - beta));
    let integrand = |u: f64| -> f64 {
        let ln_a = if u <= 0.0 {
            zolotarev_a_at_zero(beta).ln()
        } else if u >= PI {
            return 0.0;
        } else {
            ln_zolotarev_a(beta, u)
        };
        let e = -ln_a.exp() * y;
        if e < -745.0 {
            0.0
        } else {
            e.exp()
        }
    };
    Ok(adaptive_simpson(&integrand, 0.0, PI, 1e-9) / PI)
}

/// Density of the Gaussian-subordination mixer `S = 2 theta_{alpha/2}`.
fn mixer_pdf(alpha: f64, s: f64) -> Result<f64> {
    Ok(0.5 * positive_stable_pdf(alpha / 2.0, 0.5 * s)?)
}

// ---------------------------------------------------------------------------
// DensityGrid
// ---------------------------------------------------------------------------

/// Tabulated density on an increasing nonnegative grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub xs: Vec<f64>,
    pub fs: Vec<f64>,
    /// Trapezoid mass captured by the grid window.
    pub total: f64,
    /// Mass beyond the grid when the window provably truncates the law
    /// (heavy-tailed radial laws); `None` when the window holds ~all mass.
    pub truncated_mass: Option<f64>,
}

impl DensityGrid {
    /// Two-column CSV (`x,f`) at full round-trip precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,f\n");
        for (x, f) in self.xs.iter().zip(&self.fs) {
            out.push_str(&format!("{},{}\n", crate::fmt::sig17(*x), crate::fmt::sig17(*f)));
        }
        out
    }
}

/// Evaluate `f_{alpha,n}` on a grid by the subordination mixture
/// `f_{alpha,n}(r) = integral f_{2,n}(r/sqrt(s)) s^(-1/2) f_S(s) ds`
/// with `f_S` the density of `2 theta_{alpha/2}` (Zolotarev integral).
/// `alpha = 2` collapses to `f_{2,n}` exactly.
pub fn density_falphan(alpha: f64, n: u32, r_grid: &[f64]) -> Result<DensityGrid> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid(format!("alpha must lie in (0, 2], got {alpha}")));
    }
    if n == 0 {
        return Err(Error::invalid("dimension n must be >= 1"));
    }
    if r_grid.len() < 2 || r_grid.windows(2).any(|w| w[1] <= w[0]) || r_grid[0] < 0.0 {
        return Err(Error::invalid("r grid must be nonnegative, increasing, length >= 2"));
    }

    if alpha == 2.0 {
        let fs: Vec<f64> = r_grid.iter().map(|&r| density_f2n(n, r)).collect();
        let total = trapezoid(r_grid, &fs);
        let truncated = if (total - 1.0).abs() > 1e-4 { Some(1.0 - total) } else { None };
        return Ok(DensityGrid {
            xs: r_grid.to_vec(),
            fs,
            total,
            truncated_mass: truncated,
        });
    }

    let beta = alpha / 2.0;
    // integration in y = ln s; the mixer tail ~ s^(-beta-1) fixes the upper
    // cut so the discarded integrand mass stays below ~1e-7
    let s_max = 1e8_f64.powf(1.0 / (beta + 0.5)).clamp(1e3, 1e12);
    let y_hi = s_max.ln();

    let fs: Vec<f64> = r_grid
        .iter()
        .map(|&r| -> Result<f64> {
            // exp-argument cutoff: f_{2,n}(r/sqrt(s)) vanishes for s << r^2
            let y_lo = if r > 0.0 { ((r * r) / 1400.0).max(1e-12).ln().min(-6.0) } else { -40.0 };
            let integrand = |y: f64| -> f64 {
                let s = y.exp();
                let f2 = density_f2n(n, r / s.sqrt());
                if f2 == 0.0 {
                    return 0.0;
                }
                let fs = mixer_pdf(alpha, s).unwrap_or(0.0);
                // jacobian e^y combines with s^(-1/2) into e^(y/2)
                f2 * fs * (0.5 * y).exp()
            };
            Ok(adaptive_simpson(&integrand, y_lo, y_hi, 1e-6))
        })
        .collect::<Result<_>>()?;

    let total = trapezoid(r_grid, &fs);
    // honest tail estimate through the chi tail of the same mixture
    let r_max = *r_grid.last().unwrap();
    let tail = mixture_tail_mass(alpha, n, r_max, y_hi);
    let truncated = if (total - 1.0).abs() > 1e-4 { Some(tail) } else { None };
    Ok(DensityGrid {
        xs: r_grid.to_vec(),
        fs,
        total,
        truncated_mass: truncated,
    })
}

/// `P(R > r_max)` for the mixture law, via the exact chi tail
/// `Q_n(x) = 1 - P(n/2, x^2/2)` integrated against the mixer density.
pub fn mixture_tail_mass(alpha: f64, n: u32, r_max: f64, y_hi: f64) -> f64 {
    if alpha == 2.0 {
        return 1.0 - gamma_p(n as f64 / 2.0, 0.5 * r_max * r_max);
    }
    let integrand = |y: f64| -> f64 {
        let s = y.exp();
        let q = 1.0 - gamma_p(n as f64 / 2.0, 0.5 * r_max * r_max / s);
        if q <= 0.0 {
            return 0.0;
        }
        q * mixer_pdf(alpha, s).unwrap_or(0.0) * s
    };
    // the chi tail is negligible until s ~ r_max^2, so split there
    let y_split = (r_max * r_max).max(1e-6).ln().min(y_hi - 1.0);
    integrate_panels(&integrand, -30.0, y_hi, &[y_split - 4.0, y_split, y_split + 4.0], 1e-7)
        // stable tail beyond s_max: P(S > s) ~ (s/2)^(-beta) / Gamma(1-beta)
        + (y_hi.exp() / 2.0).powf(-alpha / 2.0) / crate::special::gamma(1.0 - alpha / 2.0)
}

// ---------------------------------------------------------------------------
// Characteristic-function evaluation
// ---------------------------------------------------------------------------

#[inline]
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Evaluation result carrying the sinc-product truncation bound when the
/// spec is a truncated infinite product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfValue {
    pub value: f64,
    /// Bound on the neglected log-product tail
    /// `sum_{j > jmax} (beta alpha^j t)^2 / 6`.
    pub truncation_bound: Option<f64>,
}

/// Evaluate a characteristic-function spec at `t`.
pub fn eval_cf(spec: &CharFnSpec, t: f64) -> f64 {
    eval_cf_detailed(spec, t).value
}

/// Evaluate, also reporting the truncation bound for truncated products.
pub fn eval_cf_detailed(spec: &CharFnSpec, t: f64) -> CfValue {
    let t = t.abs();
    match spec {
        CharFnSpec::SymmetricStable { scale, p } => CfValue {
            value: (-scale * t.powf(*p)).exp(),
            truncation_bound: None,
        },
        CharFnSpec::Pseudostable { c, d, q, p } => CfValue {
            value: (-c * t.powf(*q) - d * t.powf(*p)).exp(),
            truncation_bound: None,
        },
        CharFnSpec::SincProduct { alpha, beta, jmax } => {
            let mut value = 1.0;
            let mut arg = beta * t;
            for _ in 0..=*jmax {
                value *= sinc(arg);
                arg *= alpha;
            }
            // arg now holds beta * alpha^(jmax+1) * t
            let bound = arg * arg / (6.0 * (1.0 - alpha * alpha));
            CfValue {
                value,
                truncation_bound: Some(bound),
            }
        }
        CharFnSpec::MixtureOfStable { p, radial } => CfValue {
            value: eval_mixture(*p, radial, t),
            truncation_bound: None,
        },
        CharFnSpec::LogPeriodic { a, eps, p, c } => {
            if t == 0.0 {
                return CfValue { value: 1.0, truncation_bound: None };
            }
            let h = a * (1.0 + eps * (2.0 * PI * t.ln() / c.ln()).cos());
            CfValue {
                value: (-t.powf(*p) * h).exp(),
                truncation_bound: None,
            }
        }
    }
}

fn eval_mixture(p: f64, radial: &RadialLaw, t: f64) -> f64 {
    match radial {
        RadialLaw::Dirac { a } => (-(t * a).powf(p)).exp(),
        RadialLaw::Empirical { samples } => {
            samples.iter().map(|s| (-(t * s).powf(p)).exp()).sum::<f64>() / samples.len() as f64
        }
        RadialLaw::GridDensity { xs, fs } => {
            let vals: Vec<f64> = xs
                .iter()
                .zip(fs)
                .map(|(s, f)| f * (-(t * s).powf(p)).exp())
                .collect();
            trapezoid(xs, &vals) / trapezoid(xs, fs)
        }
        RadialLaw::GeneralizedGamma { lambda, p: shape_p, a } => {
            let ln_c = a.ln() - ln_gamma(shape_p / a) - (shape_p / a) * lambda.ln();
            let density = |x: f64| -> f64 {
                if x <= 0.0 {
                    0.0
                } else {
                    (ln_c + (shape_p - 1.0) * x.ln() - x.powf(*a) / lambda).exp()
                }
            };
            // the density has sub-exponential tail exp(-x^a/lambda)
            let upper = (lambda * 750.0).powf(1.0 / a) + 1.0;
            integrate_panels(
                &|s| density(s) * (-(t * s).powf(p)).exp(),
                0.0,
                upper,
                &dyadic_breaks(upper),
                1e-9,
            )
        }
        RadialLaw::WeaklyStableRadial { alpha, n } => {
            if *alpha == 2.0 {
                return integrate_panels(
                    &|s| density_f2n(*n, s) * (-(t * s).powf(p)).exp(),
                    0.0,
                    40.0,
                    &dyadic_breaks(40.0),
                    1e-9,
                );
            }
            // nested quadrature against the f_{alpha,n} mixture density;
            // the exp factor keeps the heavy tail integrable for t > 0
            let upper = if t > 0.0 { 2000.0_f64.min(750.0_f64.powf(1.0 / p) / t + 10.0) } else { 2000.0 };
            let grid: Vec<f64> = (0..=600).map(|i| i as f64 * upper / 600.0).collect();
            let dens = density_falphan(*alpha, *n, &grid).expect("validated parameters");
            let vals: Vec<f64> = grid
                .iter()
                .zip(&dens.fs)
                .map(|(s, f)| f * (-(t * s).powf(p)).exp())
                .collect();
            trapezoid(&grid, &vals)
        }
    }
}
