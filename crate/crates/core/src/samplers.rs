//! Seeded samplers for every random object the identities need: uniform
//! sphere vectors, positive stable subordinators, symmetric stable
//! variables, generalized Gamma laws, and the spherically weakly stable
//! radial laws.
//!
//! Conventions fixed once, crate-wide:
//! * `theta_p` is the positive stable variable with Laplace transform
//!   `E exp(-t theta_p) = exp(-t^p)`, `p` in `(0, 1]`, with `theta_1 == 1`.
//! * the symmetric p-stable output has characteristic function exactly
//!   `exp(-|t|^p)`; for `p < 2` it is built as `Z * sqrt(2 theta_{p/2})`
//!   with `Z` standard normal, and for `p = 2` as a normal with variance 2.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::law::{RadialLaw, SignedLaw};
use crate::rng::RngStream;

/// `N` unit vectors in dimension `n`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSample {
    pub n: usize,
    points: Vec<f64>,
}

impl SphereSample {
    pub fn len(&self) -> usize {
        self.points.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.points[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.points.chunks_exact(self.n)
    }
}

/// `N` i.i.d. points uniform on the sphere `S_{n-1}`, by normalizing
/// standard Gaussian draws.
pub fn sample_sphere(n: usize, count: usize, rng: &mut RngStream) -> Result<SphereSample> {
    if n == 0 {
        return Err(Error::invalid("sphere dimension n must be >= 1"));
    }
    if count == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    let mut points = Vec::with_capacity(n * count);
    let mut row = vec![0.0; n];
    for _ in 0..count {
        loop {
            let mut norm_sq = 0.0;
            for x in row.iter_mut() {
                *x = rng.normal();
                norm_sq += *x * *x;
            }
            if norm_sq > 1e-290 {
                let inv = norm_sq.sqrt().recip();
                points.extend(row.iter().map(|x| x * inv));
                break;
            }
        }
    }
    Ok(SphereSample { n, points })
}

/// One draw of `theta_p` by Kanter's rejection-free representation
/// `theta_p = (sin(p U) / sin(U)^{1/p}) * (sin((1-p) U) / W)^{(1-p)/p}`
/// with `U` uniform on `(0, pi)` and `W` standard exponential.
#[inline]
pub fn positive_stable_draw(p: f64, rng: &mut RngStream) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    let u = PI * rng.open01();
    let w = rng.exponential();
    let s1 = (p * u).sin() / u.sin().powf(1.0 / p);
    let s2 = (((1.0 - p) * u).sin() / w).powf((1.0 - p) / p);
    s1 * s2
}

fn positive_stable_vec(p: f64, count: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::invalid(format!("positive stable index p must lie in (0, 1], got {p}")));
    }
    if count == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    if p == 1.0 {
        return Ok(vec![1.0; count]);
    }
    Ok((0..count).map(|_| positive_stable_draw(p, rng)).collect())
}

/// Empirical law of `theta_p` (Laplace transform `exp(-t^p)`).
pub fn sample_positive_stable(p: f64, count: usize, rng: &mut RngStream) -> Result<RadialLaw> {
    positive_stable_vec(p, count, rng).map(|samples| RadialLaw::Empirical { samples })
}

/// One symmetric p-stable draw with characteristic function `exp(-|t|^p)`.
#[inline]
pub fn sym_stable_draw(p: f64, rng: &mut RngStream) -> f64 {
    if p == 2.0 {
        std::f64::consts::SQRT_2 * rng.normal()
    } else {
        let theta = positive_stable_draw(p / 2.0, rng);
        rng.normal() * (2.0 * theta).sqrt()
    }
}

fn sym_stable_vec(p: f64, count: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if !(p > 0.0 && p <= 2.0) {
        return Err(Error::invalid(format!("stability index p must lie in (0, 2], got {p}")));
    }
    if count == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    Ok((0..count).map(|_| sym_stable_draw(p, rng)).collect())
}

/// Empirical law of the symmetric p-stable variable, CF `exp(-|t|^p)`.
pub fn sample_sym_stable(p: f64, count: usize, rng: &mut RngStream) -> Result<SignedLaw> {
    sym_stable_vec(p, count, rng).map(|samples| SignedLaw::Empirical { samples })
}

/// Marsaglia-Tsang Gamma(shape, 1) draw; shape boost below 1.
pub fn gamma_draw(shape: f64, rng: &mut RngStream) -> f64 {
    debug_assert!(shape > 0.0);
    if shape < 1.0 {
        // boost: G_k = G_{k+1} * U^{1/k}
        return gamma_draw(shape + 1.0, rng) * rng.open01().powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = (9.0 * d).sqrt().recip();
    loop {
        let x = rng.normal();
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u = rng.open01();
        if u < 1.0 - 0.0331 * x * x * x * x {
            return d * v;
        }
        if u.ln() < 0.5 * x * x + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

fn gen_gamma_vec(
    lambda: f64,
    p: f64,
    a: f64,
    count: usize,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    for (name, v) in [("lambda", lambda), ("p", p), ("a", a)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::invalid(format!("generalized Gamma {name} must be > 0, got {v}")));
        }
    }
    if count == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    // X = (lambda * G)^(1/a) with G ~ Gamma(p/a, 1) has the target density.
    let shape = p / a;
    let inv_a = 1.0 / a;
    Ok((0..count)
        .map(|_| (lambda * gamma_draw(shape, rng)).powf(inv_a))
        .collect())
}

/// Empirical generalized Gamma law with density
/// `a / (Gamma(p/a) lambda^(p/a)) x^(p-1) exp(-x^a / lambda)`.
pub fn sample_gen_gamma(
    lambda: f64,
    p: f64,
    a: f64,
    count: usize,
    rng: &mut RngStream,
) -> Result<RadialLaw> {
    gen_gamma_vec(lambda, p, a, count, rng).map(|samples| RadialLaw::Empirical { samples })
}

/// One draw of the norm factor `Gamma_n` (the chi-type law `Gamma(2, n, 2)`,
/// i.e. the Euclidean norm of an n-dimensional standard Gaussian vector).
#[inline]
pub fn chi_draw(n: u32, rng: &mut RngStream) -> f64 {
    (2.0 * gamma_draw(n as f64 / 2.0, rng)).sqrt()
}

fn weakly_stable_radial_vec(
    alpha: f64,
    n: u32,
    count: usize,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid(format!("alpha must lie in (0, 2], got {alpha}")));
    }
    if n == 0 {
        return Err(Error::invalid("dimension n must be >= 1"));
    }
    if count == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    if alpha == 2.0 {
        return Ok((0..count).map(|_| chi_draw(n, rng)).collect());
    }
    // Gamma_n * sqrt(2 theta_{alpha/2}): the direction-norm factorization of
    // the rotationally invariant alpha-stable vector with CF exp(-|xi|^alpha).
    Ok((0..count)
        .map(|_| {
            let theta = positive_stable_draw(alpha / 2.0, rng);
            chi_draw(n, rng) * (2.0 * theta).sqrt()
        })
        .collect())
}

/// Empirical law of the weakly stable radial factor `theta_alpha^n`
/// (density `f_{alpha,n}` for `alpha < 2`, the chi law for `alpha = 2`).
pub fn sample_weakly_stable_radial(
    alpha: f64,
    n: u32,
    count: usize,
    rng: &mut RngStream,
) -> Result<RadialLaw> {
    weakly_stable_radial_vec(alpha, n, count, rng).map(|samples| RadialLaw::Empirical { samples })
}

/// Draw `count` values from any radial-law representation.
pub fn sample_radial(law: &RadialLaw, count: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    match law {
        RadialLaw::Dirac { a } => Ok(vec![*a; count]),
        RadialLaw::Empirical { samples } => Ok((0..count)
            .map(|_| samples[rng.index(samples.len())])
            .collect()),
        RadialLaw::GridDensity { xs, fs } => Ok(grid_inverse_cdf_draws(xs, fs, count, rng)),
        RadialLaw::GeneralizedGamma { lambda, p, a } => gen_gamma_vec(*lambda, *p, *a, count, rng),
        RadialLaw::WeaklyStableRadial { alpha, n } => {
            weakly_stable_radial_vec(*alpha, *n, count, rng)
        }
    }
}

/// Draw `count` values from a signed-law representation.
pub fn sample_signed(law: &SignedLaw, count: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::invalid("sample count must be >= 1"));
    }
    match law {
        SignedLaw::Dirac { x } => Ok(vec![*x; count]),
        SignedLaw::Empirical { samples } => Ok((0..count)
            .map(|_| samples[rng.index(samples.len())])
            .collect()),
    }
}

/// Inverse-CDF sampling from a tabulated density: the CDF is piecewise
/// quadratic (trapezoid antiderivative of a piecewise-linear density), and
/// each cell inversion solves that quadratic exactly.
fn grid_inverse_cdf_draws(xs: &[f64], fs: &[f64], count: usize, rng: &mut RngStream) -> Vec<f64> {
    let m = xs.len();
    let mut cdf = vec![0.0; m];
    for i in 1..m {
        cdf[i] = cdf[i - 1] + 0.5 * (fs[i] + fs[i - 1]) * (xs[i] - xs[i - 1]);
    }
    let total = cdf[m - 1];
    (0..count)
        .map(|_| {
            let u = rng.next_f64() * total;
            let k = match cdf.binary_search_by(|c| c.partial_cmp(&u).unwrap()) {
                Ok(k) => k.min(m - 2),
                Err(k) => k.saturating_sub(1).min(m - 2),
            };
            let du = u - cdf[k];
            let h = xs[k + 1] - xs[k];
            let f0 = fs[k];
            let slope = (fs[k + 1] - fs[k]) / h;
            // solve f0 * d + slope * d^2 / 2 = du for d in [0, h]
            let d = if slope.abs() < 1e-14 * (f0.abs() + 1.0) {
                if f0 > 0.0 {
                    du / f0
                } else {
                    0.5 * h
                }
            } else {
                let disc = (f0 * f0 + 2.0 * slope * du).max(0.0);
                (disc.sqrt() - f0) / slope
            };
            xs[k] + d.clamp(0.0, h)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stattests::{ks_one_sample, ks_two_sample};

    fn empirical(law: &RadialLaw) -> &[f64] {
        match law {
            RadialLaw::Empirical { samples } => samples,
            other => panic!("expected empirical law, got {other:?}"),
        }
    }

    #[test]
    fn sphere_rows_have_unit_norm() {
        let mut rng = RngStream::new(11);
        for n in [1, 2, 3, 7] {
            let s = sample_sphere(n, 500, &mut rng).unwrap();
            for row in s.rows() {
                let norm: f64 = row.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12, "n={n} norm={norm}");
            }
        }
    }

    #[test]
    fn sphere_dimension_one_is_a_fair_sign() {
        let mut rng = RngStream::new(5);
        let n_draws = 100_000;
        let s = sample_sphere(1, n_draws, &mut rng).unwrap();
        let pos = s.rows().filter(|r| r[0] > 0.0).count() as f64;
        for row in s.rows() {
            assert!(row[0] == 1.0 || row[0] == -1.0);
        }
        let sigma = (0.25 * n_draws as f64).sqrt();
        assert!((pos - 0.5 * n_draws as f64).abs() < 3.0 * sigma);
    }

    #[test]
    fn sphere_first_coordinate_is_uniform_in_dimension_three() {
        // hat-box property: the first coordinate of a uniform point on S_2
        // is uniform on [-1, 1]
        let mut rng = RngStream::new(17);
        let n_draws = 100_000;
        let s = sample_sphere(3, n_draws, &mut rng).unwrap();
        let coords: Vec<f64> = s.rows().map(|r| r[0]).collect();
        let direct: Vec<f64> = (0..n_draws).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let (_, p) = ks_two_sample(&coords, &direct).unwrap();
        assert!(p > 0.01, "p={p}");
    }

    #[test]
    fn sphere_coordinate_variance_is_one_over_n() {
        let mut rng = RngStream::new(23);
        for n in [2usize, 5, 9] {
            let n_draws = 50_000;
            let s = sample_sphere(n, n_draws, &mut rng).unwrap();
            let mean_sq: f64 =
                s.rows().map(|r| r[0] * r[0]).sum::<f64>() / n_draws as f64;
            // Var(x1^2) = 3/(n(n+2)) - 1/n^2 for uniform sphere points
            let nf = n as f64;
            let var = 3.0 / (nf * (nf + 2.0)) - 1.0 / (nf * nf);
            let sigma = (var / n_draws as f64).sqrt();
            assert!(
                (mean_sq - 1.0 / nf).abs() < 3.0 * sigma,
                "n={n} mean_sq={mean_sq}"
            );
        }
    }

    #[test]
    fn positive_stable_at_one_is_constant() {
        let mut rng = RngStream::new(1);
        let law = sample_positive_stable(1.0, 100, &mut rng).unwrap();
        assert!(empirical(&law).iter().all(|&x| x == 1.0));
    }

    #[test]
    fn positive_stable_laplace_transform_at_one() {
        // E exp(-theta_p) = exp(-1) for every p
        for (seed, p) in [(3u64, 0.3), (4, 0.5), (5, 0.8)] {
            let mut rng = RngStream::new(seed);
            let n_draws = 200_000;
            let law = sample_positive_stable(p, n_draws, &mut rng).unwrap();
            let mean: f64 =
                empirical(&law).iter().map(|x| (-x).exp()).sum::<f64>() / n_draws as f64;
            // Var(e^-theta) = e^{-2^p} - e^{-2}
            let var = (-(2.0_f64.powf(p))).exp() - (-2.0_f64).exp();
            let sigma = (var / n_draws as f64).sqrt();
            let target = (-1.0_f64).exp();
            assert!((mean - target).abs() < 3.0 * sigma, "p={p} mean={mean}");
        }
    }

    #[test]
    fn positive_stable_half_matches_levy_closed_form() {
        // theta_{1/2} has Laplace transform exp(-sqrt(t)), i.e. the Levy law
        // with CDF erfc(1/(2 sqrt(x))), realized by 1/(2 Z^2).
        let mut rng = RngStream::new(8);
        let n_draws = 100_000;
        let law = sample_positive_stable(0.5, n_draws, &mut rng).unwrap();
        let (_, p_one) = ks_one_sample(empirical(&law), |x| {
            crate::special::erfc(1.0 / (2.0 * x.sqrt()))
        })
        .unwrap();
        assert!(p_one > 0.01, "one-sample p={p_one}");

        let direct: Vec<f64> = (0..n_draws)
            .map(|_| {
                let z = rng.normal();
                1.0 / (2.0 * z * z)
            })
            .collect();
        let (_, p_two) = ks_two_sample(empirical(&law), &direct).unwrap();
        assert!(p_two > 0.01, "two-sample p={p_two}");
    }

    #[test]
    fn sym_stable_gaussian_case_has_variance_two() {
        let mut rng = RngStream::new(2);
        let n_draws = 200_000;
        let law = sample_sym_stable(2.0, n_draws, &mut rng).unwrap();
        let samples = match &law {
            SignedLaw::Empirical { samples } => samples,
            _ => unreachable!(),
        };
        let var: f64 = samples.iter().map(|x| x * x).sum::<f64>() / n_draws as f64;
        // Var = 2, Var(x^2) = E x^4 - 4 = 3*4 - 4 = 8
        let sigma = (8.0 / n_draws as f64).sqrt();
        assert!((var - 2.0).abs() < 3.0 * sigma, "var={var}");
    }

    #[test]
    fn sym_stable_cauchy_case_matches_direct_cauchy() {
        let mut rng = RngStream::new(31);
        let n_draws = 100_000;
        let law = sample_sym_stable(1.0, n_draws, &mut rng).unwrap();
        let samples = match &law {
            SignedLaw::Empirical { samples } => samples,
            _ => unreachable!(),
        };
        let direct: Vec<f64> = (0..n_draws)
            .map(|_| (PI * (rng.next_f64() - 0.5)).tan())
            .collect();
        let (_, p) = ks_two_sample(samples, &direct).unwrap();
        assert!(p > 0.01, "p={p}");
    }

    #[test]
    fn sym_stable_cf_at_reference_points() {
        let mut rng = RngStream::new(12);
        let n_draws = 100_000;
        let p_idx = 1.5;
        let law = sample_sym_stable(p_idx, n_draws, &mut rng).unwrap();
        let samples = match &law {
            SignedLaw::Empirical { samples } => samples,
            _ => unreachable!(),
        };
        for t in [0.5, 1.0, 2.0] {
            let (mut s, mut s2) = (0.0, 0.0);
            for &x in samples {
                let c = (t * x).cos();
                s += c;
                s2 += c * c;
            }
            let mean = s / n_draws as f64;
            let var = (s2 / n_draws as f64 - mean * mean).max(0.0);
            let sigma = (var / n_draws as f64).sqrt();
            let target = (-(t.powf(p_idx))).exp();
            assert!((mean - target).abs() < 3.0 * sigma, "t={t} mean={mean} target={target}");
        }
    }

    #[test]
    fn gen_gamma_special_cases() {
        let mut rng = RngStream::new(9);
        let n_draws = 100_000;
        // Gamma(2, 3, 2) is the norm of a 3-dimensional standard Gaussian
        let law = sample_gen_gamma(2.0, 3.0, 2.0, n_draws, &mut rng).unwrap();
        let norms: Vec<f64> = (0..n_draws)
            .map(|_| {
                let (a, b, c) = (rng.normal(), rng.normal(), rng.normal());
                (a * a + b * b + c * c).sqrt()
            })
            .collect();
        let (_, p) = ks_two_sample(empirical(&law), &norms).unwrap();
        assert!(p > 0.01, "chi3 p={p}");

        // a = 1 reduces to Gamma(shape p, scale lambda)
        let law = sample_gen_gamma(0.7, 2.5, 1.0, n_draws, &mut rng).unwrap();
        let reference: Vec<f64> = (0..n_draws).map(|_| 0.7 * gamma_draw(2.5, &mut rng)).collect();
        let (_, p) = ks_two_sample(empirical(&law), &reference).unwrap();
        assert!(p > 0.01, "gamma p={p}");
    }

    #[test]
    fn gen_gamma_power_moment() {
        // E X^a = lambda p / a, Var X^a = lambda^2 p / a
        let (lambda, p, a) = (1.7, 3.0, 1.4);
        let mut rng = RngStream::new(21);
        let n_draws = 200_000;
        let law = sample_gen_gamma(lambda, p, a, n_draws, &mut rng).unwrap();
        let mean: f64 =
            empirical(&law).iter().map(|x| x.powf(a)).sum::<f64>() / n_draws as f64;
        let sigma = (lambda * lambda * (p / a) / n_draws as f64).sqrt();
        assert!((mean - lambda * p / a).abs() < 3.0 * sigma, "mean={mean}");
    }

    #[test]
    fn weakly_stable_radial_cases() {
        let mut rng = RngStream::new(40);
        let n_draws = 100_000;

        // alpha = 2, n = 3: Maxwell law = Gamma(2, 3, 2)
        let maxwell = sample_weakly_stable_radial(2.0, 3, n_draws, &mut rng).unwrap();
        let reference = sample_gen_gamma(2.0, 3.0, 2.0, n_draws, &mut rng).unwrap();
        let (_, p) = ks_two_sample(empirical(&maxwell), empirical(&reference)).unwrap();
        assert!(p > 0.01, "maxwell p={p}");

        // alpha = 1, n = 1: |standard Cauchy|
        let half_cauchy = sample_weakly_stable_radial(1.0, 1, n_draws, &mut rng).unwrap();
        let direct: Vec<f64> = (0..n_draws)
            .map(|_| (PI * (rng.next_f64() - 0.5)).tan().abs())
            .collect();
        let (_, p) = ks_two_sample(empirical(&half_cauchy), &direct).unwrap();
        assert!(p > 0.01, "half-cauchy p={p}");

        // alpha = 1, n = 3: closed-form density f_{1,3}, CDF by quadrature
        let law = sample_weakly_stable_radial(1.0, 3, n_draws, &mut rng).unwrap();
        let (_, p) = ks_one_sample(empirical(&law), |r| {
            crate::quad::adaptive_simpson(&|x| crate::densities::density_f1n(3, x), 0.0, r, 1e-10)
        })
        .unwrap();
        assert!(p > 0.01, "f13 p={p}");
    }

    #[test]
    fn samplers_are_deterministic_given_seed_and_path() {
        let mut a = RngStream::with_path(99, &[4]);
        let mut b = RngStream::with_path(99, &[4]);
        let la = sample_weakly_stable_radial(1.3, 4, 1000, &mut a).unwrap();
        let lb = sample_weakly_stable_radial(1.3, 4, 1000, &mut b).unwrap();
        assert_eq!(la, lb);
    }

    #[test]
    fn grid_density_sampling_matches_the_table() {
        // triangle density on [0, 2], peak at 1
        let xs: Vec<f64> = (0..=200).map(|i| i as f64 * 0.01).collect();
        let fs: Vec<f64> = xs.iter().map(|&x| if x <= 1.0 { x } else { 2.0 - x }).collect();
        let law = RadialLaw::grid_density(xs, fs).unwrap();
        let mut rng = RngStream::new(77);
        let draws = sample_radial(&law, 100_000, &mut rng).unwrap();
        let (_, p) = ks_one_sample(&draws, |x| {
            if x <= 1.0 {
                0.5 * x * x
            } else {
                1.0 - 0.5 * (2.0 - x) * (2.0 - x)
            }
        })
        .unwrap();
        assert!(p > 0.01, "p={p}");
    }

    #[test]
    fn argument_errors() {
        let mut rng = RngStream::new(0);
        assert!(sample_sphere(0, 10, &mut rng).is_err());
        assert!(sample_positive_stable(1.2, 10, &mut rng).is_err());
        assert!(sample_positive_stable(0.0, 10, &mut rng).is_err());
        assert!(sample_sym_stable(2.4, 10, &mut rng).is_err());
        assert!(sample_gen_gamma(-1.0, 1.0, 1.0, 10, &mut rng).is_err());
        assert!(sample_weakly_stable_radial(1.0, 0, 10, &mut rng).is_err());
    }
}
