//! Adaptive Simpson quadrature used by the density and Fourier-inversion
//! routines. Panel splitting keeps the recursion honest on integrands that
//! are negligible over most of a long interval.

/// Adaptive Simpson on `[a, b]` with absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Integrate over `[a, b]` split at the supplied interior breakpoints.
/// Breakpoints outside `(a, b)` are ignored.
pub fn integrate_panels<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> f64 {
    let mut edges = vec![a];
    for &x in breaks {
        if x > a && x < b {
            edges.push(x);
        }
    }
    edges.push(b);
    let per_panel = tol / edges.len() as f64;
    edges
        .windows(2)
        .map(|w| adaptive_simpson(f, w[0], w[1], per_panel))
        .sum()
}

/// Dyadic breakpoints 1, 2, 4, ... below `b`; a good default split for
/// integrands concentrated near the origin on a long interval.
pub fn dyadic_breaks(b: f64) -> Vec<f64> {
    let mut v = Vec::new();
    let mut x = 1.0;
    while x < b {
        v.push(x);
        x *= 2.0;
    }
    v
}

/// Trapezoid rule over tabulated values.
pub fn trapezoid(xs: &[f64], fs: &[f64]) -> f64 {
    assert_eq!(xs.len(), fs.len());
    let mut acc = 0.0;
    for i in 1..xs.len() {
        acc += 0.5 * (fs[i] + fs[i - 1]) * (xs[i] - xs[i - 1]);
    }
    acc
}
