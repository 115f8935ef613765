//! Adaptive numerical integration shared by all physics modules.
//!
//! The engine is a globally adaptive Gauss-Kronrod 7/15 scheme: the
//! interval (or cell, in 2D) with the largest error estimate is bisected
//! first, QUADPACK style. Endpoint log singularities are removed by an
//! exponential variable transform before subdivision starts, because the
//! radiated-power integrands have integrable `log` endpoints that plain
//! bisection resolves too slowly at tight tolerances.
//!
//! Complex integrands share one subdivision tree: real and imaginary
//! parts are never refined against different partitions.
//!
//! Everything here is serial and deterministic: identical inputs and
//! tolerances yield bit-identical results.

use num_complex::Complex64;

use crate::vec3::Vec3;

/// Absolute/relative tolerance pair. Convergence means the accumulated
/// error estimate is at or below `max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    pub abs: f64,
    pub rel: f64,
}

impl Tol {
    pub fn absolute(abs: f64) -> Self {
        Tol { abs, rel: 0.0 }
    }

    pub fn relative(rel: f64) -> Self {
        Tol { abs: 0.0, rel }
    }

    pub fn new(abs: f64, rel: f64) -> Self {
        Tol { abs, rel }
    }

    fn target<T: QuadScalar>(&self, value: T) -> f64 {
        self.abs.max(self.rel * value.norm())
    }
}

/// Outcome of one quadrature. `converged` is honest: it is set only when
/// the error estimate met the requested tolerance, never because a
/// subdivision budget ran out.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T = f64> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: QuadScalar> QuadResult<T> {
    /// Maps a non-converged result into the crate error type.
    pub fn into_value(self, requested: &Tol) -> crate::error::Result<T> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(crate::error::BremError::Accuracy {
                requested: requested.abs.max(requested.rel * self.value.norm()),
                achieved: self.error_estimate,
            })
        }
    }
}

/// Scalar kinds the panels can accumulate: `f64` and `Complex64`.
pub trait QuadScalar: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn norm(self) -> f64;
}

impl QuadScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.abs()
    }
}

impl QuadScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        num_complex::ComplexFloat::abs(self)
    }
}

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// xgk[1], xgk[3], xgk[5], xgk[7] are the Gauss-7 abscissae.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Plain 15-point Gauss-Kronrod panel over [a, b].
///
/// Returns (kronrod value, error estimate, sum of |f| * weight). Exposed
/// as a building block for lobe-wise sums over oscillatory integrands.
pub fn kronrod15<T, F>(f: &F, a: f64, b: f64) -> (T, f64, f64)
where
    T: QuadScalar,
    F: Fn(f64) -> T,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = fc.scale(WGK[7]);
    let mut gauss = fc.scale(WG[3]);
    let mut resabs = fc.norm() * WGK[7];

    let mut samples = [T::zero(); 15];
    samples[7] = fc;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        samples[j] = f1;
        samples[14 - j] = f2;
        let fsum = f1.add(f2);
        kronrod = kronrod.add(fsum.scale(WGK[j]));
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            gauss = gauss.add(fsum.scale(WG[j / 2]));
        }
    }

    // resasc: deviation of f from its mean, used to rescale the raw
    // |K - G| difference the way QUADPACK does.
    let mean = kronrod.scale(0.5);
    let mut resasc = WGK[7] * fc.sub(mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * (samples[j].sub(mean).norm() + samples[14 - j].sub(mean).norm());
    }

    let raw_err = kronrod.sub(gauss).norm() * half.abs();
    let resabs_scaled = resabs * half.abs();
    let resasc_scaled = resasc * half.abs();
    let err = rescale_error(raw_err, resabs_scaled, resasc_scaled);

    (kronrod.scale(half), err, resabs_scaled)
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut scaled = err;
    if resasc != 0.0 && scaled != 0.0 {
        let ratio = (200.0 * scaled / resasc).powf(1.5);
        scaled = if ratio < 1.0 { resasc * ratio } else { resasc };
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) && floor > scaled {
        scaled = floor;
    }
    scaled
}

/// Hint that the integrand carries an integrable (log-type) singularity
/// at one or both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointHint {
    None,
    /// Singularity at the lower limit `a`.
    LogAtLower,
    /// Singularity at the upper limit `b`.
    LogAtUpper,
    Both,
}

const MAX_REGIONS_1D: usize = 20_000;

struct Region<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    seq: u64,
}

// Max-heap on (err, seq); seq breaks ties deterministically.
fn worst_index<T>(regions: &[Region<T>]) -> usize {
    let mut best = 0;
    for (i, r) in regions.iter().enumerate().skip(1) {
        let cur = &regions[best];
        if r.err > cur.err || (r.err == cur.err && r.seq < cur.seq) {
            best = i;
        }
    }
    best
}

fn adaptive_core<T, F>(f: &F, a: f64, b: f64, tol: Tol, max_regions: usize) -> QuadResult<T>
where
    T: QuadScalar,
    F: Fn(f64) -> T,
{
    let (v0, e0, r0) = kronrod15(f, a, b);
    let mut evaluations = 15usize;
    let mut regions = vec![Region {
        a,
        b,
        value: v0,
        err: e0,
        seq: 0,
    }];
    let mut seq = 1u64;
    let mut value = v0;
    let mut err_sum = e0;
    let mut resabs = r0;

    loop {
        let target = tol.target(value);
        if err_sum <= target {
            return QuadResult {
                value,
                error_estimate: err_sum,
                evaluations,
                converged: true,
            };
        }
        // Roundoff floor: no amount of subdivision helps past ~50 eps of
        // the absolute mass of the integrand.
        let floor = 50.0 * f64::EPSILON * resabs;
        if regions.len() >= max_regions || (err_sum <= floor && err_sum > target) {
            return QuadResult {
                value,
                error_estimate: err_sum,
                evaluations,
                converged: false,
            };
        }

        let idx = worst_index(&regions);
        let worst = regions.swap_remove(idx);
        value = value.sub(worst.value);
        err_sum -= worst.err;

        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval no longer bisectable in f64; put it back and stop.
            value = value.add(worst.value);
            err_sum += worst.err;
            regions.push(worst);
            let converged = err_sum <= tol.target(value);
            return QuadResult {
                value,
                error_estimate: err_sum,
                evaluations,
                converged,
            };
        }

        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (v, e, r) = kronrod15(f, lo, hi);
            evaluations += 15;
            value = value.add(v);
            err_sum += e;
            resabs += r; // grows, but only shifts the conservative floor
            regions.push(Region {
                a: lo,
                b: hi,
                value: v,
                err: e,
                seq,
            });
            seq += 1;
        }
    }
}

/// How far into the exponential transform we go before the transformed
/// point becomes indistinguishable from the endpoint in f64.
fn transform_span(a: f64, b: f64) -> f64 {
    let w = b - a;
    let scale = a.abs().max(b.abs()).max(w);
    // w * exp(-u_max) >= 8 ulp(scale), so f is never evaluated exactly at
    // the singular endpoint.
    (w / (8.0 * f64::EPSILON * scale)).ln().max(1.0)
}

fn integrate_transformed<T, F>(f: &F, a: f64, b: f64, at_upper: bool, tol: Tol) -> QuadResult<T>
where
    T: QuadScalar,
    F: Fn(f64) -> T,
{
    let w = b - a;
    let umax = transform_span(a, b);
    let g = |u: f64| {
        let d = w * (-u).exp();
        let x = if at_upper { b - d } else { a + d };
        f(x).scale(d)
    };
    adaptive_core(&g, 0.0, umax, tol, MAX_REGIONS_1D)
}

fn integrate_generic<T, F>(f: F, a: f64, b: f64, tol: Tol, hint: EndpointHint) -> QuadResult<T>
where
    T: QuadScalar,
    F: Fn(f64) -> T,
{
    assert!(a < b, "integration bounds must satisfy a < b");
    match hint {
        EndpointHint::None => adaptive_core(&f, a, b, tol, MAX_REGIONS_1D),
        EndpointHint::LogAtLower => integrate_transformed(&f, a, b, false, tol),
        EndpointHint::LogAtUpper => integrate_transformed(&f, a, b, true, tol),
        EndpointHint::Both => {
            let mid = 0.5 * (a + b);
            let half_tol = Tol::new(0.5 * tol.abs, 0.5 * tol.rel);
            let lo = integrate_transformed(&f, a, mid, false, half_tol);
            let hi = integrate_transformed(&f, mid, b, true, half_tol);
            QuadResult {
                value: lo.value.add(hi.value),
                error_estimate: lo.error_estimate + hi.error_estimate,
                evaluations: lo.evaluations + hi.evaluations,
                converged: lo.converged && hi.converged,
            }
        }
    }
}

/// Adaptive integral of a real integrand over [a, b].
pub fn integrate_1d<F>(f: F, a: f64, b: f64, tol: Tol, hint: EndpointHint) -> QuadResult<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_generic(f, a, b, tol, hint)
}

/// Adaptive integral of a complex integrand over [a, b]. Real and
/// imaginary parts share the subdivision tree.
pub fn integrate_1d_complex<F>(
    f: F,
    a: f64,
    b: f64,
    tol: Tol,
    hint: EndpointHint,
) -> QuadResult<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    integrate_generic(f, a, b, tol, hint)
}

// ---------------------------------------------------------------------
// Gauss-Legendre nodes (used by the spherical rule)
// ---------------------------------------------------------------------

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 2.0 * f64::EPSILON * x.abs().max(1.0) {
                let (_, d2) = legendre_and_derivative(n, x);
                dp = d2;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[m - 1] = 0.0;
        let (_, d) = legendre_and_derivative(n, 0.0);
        weights[m - 1] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Integral of `f` over the full unit sphere, `int f(khat) dOmega`.
///
/// Product rule: Gauss-Legendre in cos(theta) times a uniform periodic
/// rule in phi, with the order doubled until two successive levels agree.
pub fn integrate_sphere<F>(f: F, tol: Tol) -> QuadResult<f64>
where
    F: Fn(&Vec3) -> f64,
{
    let mut evaluations = 0usize;
    let mut previous: Option<f64> = None;
    let mut latest = 0.0;
    let mut err = f64::INFINITY;

    for level in 0..6 {
        let n = 4usize << level; // 4, 8, ..., 128 polar nodes
        let m = 2 * n;
        let (nodes, weights) = gauss_legendre(n);
        let dphi = 2.0 * std::f64::consts::PI / m as f64;
        let mut total = 0.0;
        for (u, wu) in nodes.iter().zip(weights.iter()) {
            let s = (1.0 - u * u).max(0.0).sqrt();
            let mut ring = 0.0;
            for j in 0..m {
                let phi = (j as f64 + 0.5) * dphi;
                let dir = [s * phi.cos(), s * phi.sin(), *u];
                ring += f(&dir);
                evaluations += 1;
            }
            total += wu * ring * dphi;
        }
        latest = total;
        if let Some(prev) = previous {
            err = (total - prev).abs();
            if err <= tol.target(total) {
                return QuadResult {
                    value: total,
                    error_estimate: err,
                    evaluations,
                    converged: true,
                };
            }
        }
        previous = Some(total);
    }

    QuadResult {
        value: latest,
        error_estimate: err,
        evaluations,
        converged: false,
    }
}

// ---------------------------------------------------------------------
// 2D integration over the time square [0, T]^2
// ---------------------------------------------------------------------

const MAX_CELLS_2D: usize = 120_000;

struct Cell {
    ax: f64,
    bx: f64,
    ay: f64,
    by: f64,
    value: Complex64,
    err: f64,
    seq: u64,
}

/// Tensor 15x15 Kronrod panel over one rectangle.
fn kronrod15_2d<F>(f: &F, ax: f64, bx: f64, ay: f64, by: f64) -> (Complex64, f64, f64)
where
    F: Fn(f64, f64) -> Complex64,
{
    let cx = 0.5 * (ax + bx);
    let hx = 0.5 * (bx - ax);
    let cy = 0.5 * (ay + by);
    let hy = 0.5 * (by - ay);

    let mut xs = [0.0f64; 15];
    let mut ys = [0.0f64; 15];
    let mut wkx = [0.0f64; 15];
    let mut wky = [0.0f64; 15];
    // Gauss weight or zero at Kronrod-only columns.
    let mut wgx = [0.0f64; 15];
    let mut wgy = [0.0f64; 15];
    for j in 0..7 {
        xs[j] = cx - hx * XGK[j];
        xs[14 - j] = cx + hx * XGK[j];
        ys[j] = cy - hy * XGK[j];
        ys[14 - j] = cy + hy * XGK[j];
        wkx[j] = WGK[j];
        wkx[14 - j] = WGK[j];
        wky[j] = WGK[j];
        wky[14 - j] = WGK[j];
        if j % 2 == 1 {
            wgx[j] = WG[j / 2];
            wgx[14 - j] = WG[j / 2];
            wgy[j] = WG[j / 2];
            wgy[14 - j] = WG[j / 2];
        }
    }
    xs[7] = cx;
    ys[7] = cy;
    wkx[7] = WGK[7];
    wky[7] = WGK[7];
    wgx[7] = WG[3];
    wgy[7] = WG[3];

    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut resabs = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            let v = f(x, y);
            kronrod += v * (wkx[i] * wky[j]);
            gauss += v * (wgx[i] * wgy[j]);
            resabs += v.norm() * wkx[i] * wky[j];
        }
    }
    let area = hx * hy;
    let raw_err = (kronrod - gauss).norm() * area.abs();
    let resabs_scaled = resabs * area.abs();
    // No resasc in 2D; fall back to the raw difference with the roundoff
    // floor applied.
    let floor = 50.0 * f64::EPSILON * resabs_scaled;
    (kronrod * area, raw_err.max(floor), resabs_scaled)
}

fn adaptive_2d<F>(f: &F, bx: (f64, f64), by: (f64, f64), tol: Tol) -> QuadResult<Complex64>
where
    F: Fn(f64, f64) -> Complex64,
{
    let (v0, e0, r0) = kronrod15_2d(f, bx.0, bx.1, by.0, by.1);
    let mut evaluations = 225usize;
    let width_x = bx.1 - bx.0;
    let width_y = by.1 - by.0;
    let mut cells = vec![Cell {
        ax: bx.0,
        bx: bx.1,
        ay: by.0,
        by: by.1,
        value: v0,
        err: e0,
        seq: 0,
    }];
    let mut seq = 1u64;
    let mut value = v0;
    let mut err_sum = e0;
    let mut resabs = r0;

    loop {
        let target = tol.target(value);
        if err_sum <= target {
            return QuadResult {
                value,
                error_estimate: err_sum,
                evaluations,
                converged: true,
            };
        }
        let floor = 50.0 * f64::EPSILON * resabs;
        if cells.len() >= MAX_CELLS_2D || (err_sum <= floor && err_sum > target) {
            return QuadResult {
                value,
                error_estimate: err_sum,
                evaluations,
                converged: false,
            };
        }

        let mut idx = 0;
        for (i, c) in cells.iter().enumerate().skip(1) {
            let cur = &cells[idx];
            if c.err > cur.err || (c.err == cur.err && c.seq < cur.seq) {
                idx = i;
            }
        }
        let worst = cells.swap_remove(idx);
        value -= worst.value;
        err_sum -= worst.err;

        // Split the axis that is larger relative to the original domain,
        // so strongly anisotropic domains still refine sensibly.
        let rel_x = (worst.bx - worst.ax) / width_x;
        let rel_y = (worst.by - worst.ay) / width_y;
        let children: [(f64, f64, f64, f64); 2] = if rel_x >= rel_y {
            let mid = 0.5 * (worst.ax + worst.bx);
            [
                (worst.ax, mid, worst.ay, worst.by),
                (mid, worst.bx, worst.ay, worst.by),
            ]
        } else {
            let mid = 0.5 * (worst.ay + worst.by);
            [
                (worst.ax, worst.bx, worst.ay, mid),
                (worst.ax, worst.bx, mid, worst.by),
            ]
        };
        if children[0].1 <= children[0].0 || children[0].3 <= children[0].2 {
            value += worst.value;
            err_sum += worst.err;
            cells.push(worst);
            let converged = err_sum <= tol.target(value);
            return QuadResult {
                value,
                error_estimate: err_sum,
                evaluations,
                converged,
            };
        }
        for (ax, bx_, ay, by_) in children {
            let (v, e, r) = kronrod15_2d(f, ax, bx_, ay, by_);
            evaluations += 225;
            value += v;
            err_sum += e;
            resabs += r;
            cells.push(Cell {
                ax,
                bx: bx_,
                ay,
                by: by_,
                value: v,
                err: e,
                seq,
            });
            seq += 1;
        }
    }
}

/// Integral of `f(t1, t2)` over the square [0, T]^2.
///
/// With `exclude_diagonal` the square is decomposed into the two ordered
/// triangles t1 < t2 and t1 > t2, each mapped onto a rectangle in the
/// time-difference variable s = |t2 - t1|. No quadrature node ever lands
/// on the t1 = t2 diagonal, whose measure is zero, and kernels of the
/// form g(|t2 - t1|) become smooth in s (the t1 = t2 kink sits on the
/// domain boundary instead of crossing cell interiors).
pub fn integrate_time_square<F>(
    f: F,
    t_max: f64,
    tol: Tol,
    exclude_diagonal: bool,
) -> QuadResult<Complex64>
where
    F: Fn(f64, f64) -> Complex64,
{
    assert!(t_max > 0.0, "duration must be positive");
    if !exclude_diagonal {
        return adaptive_2d(&f, (0.0, t_max), (0.0, t_max), tol);
    }

    let half_tol = Tol::new(0.5 * tol.abs, 0.5 * tol.rel);
    // Lower triangle t1 < t2: t1 = (T - s) y, t2 = s + (T - s) y.
    let lower = adaptive_2d(
        &|s: f64, y: f64| {
            let span = t_max - s;
            f(span * y, s + span * y) * span
        },
        (0.0, t_max),
        (0.0, 1.0),
        half_tol,
    );
    // Upper triangle t2 < t1: same map with the arguments swapped.
    let upper = adaptive_2d(
        &|s: f64, y: f64| {
            let span = t_max - s;
            f(s + span * y, span * y) * span
        },
        (0.0, t_max),
        (0.0, 1.0),
        half_tol,
    );

    QuadResult {
        value: lower.value + upper.value,
        error_estimate: lower.error_estimate + upper.error_estimate,
        evaluations: lower.evaluations + upper.evaluations,
        converged: lower.converged && upper.converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate_1d(|x| x, 0.0, 1.0, Tol::absolute(1e-12), EndpointHint::None);
        assert!(r.converged);
        assert_relative_eq!(r.value, 0.5, epsilon = 1e-14);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn log_singularity_at_lower() {
        let r = integrate_1d(
            |x| x.ln(),
            0.0,
            1.0,
            Tol::absolute(1e-10),
            EndpointHint::LogAtLower,
        );
        assert!(r.converged);
        assert_relative_eq!(r.value, -1.0, epsilon = 1e-10);
    }

    #[test]
    fn dimensionless_radiated_power_integral() {
        // int_0^1 x log((1+x)/(1-x)) dx = 1 exactly.
        let r = integrate_1d(
            |x| x * ((1.0 + x) / (1.0 - x)).ln(),
            0.0,
            1.0,
            Tol::absolute(1e-9),
            EndpointHint::LogAtUpper,
        );
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-9, "got {}", r.value);
    }

    #[test]
    fn honest_nonconvergence_reported() {
        // Tolerance below what f64 can certify for an oscillatory integrand.
        let r = integrate_1d(
            |x| (500.0 * x).sin() / (1e-3 + x * x),
            0.0,
            1.0,
            Tol::absolute(1e-300),
            EndpointHint::None,
        );
        assert!(!r.converged);
        assert!(r.error_estimate > 0.0);
    }

    #[test]
    fn complex_shares_tree() {
        let r = integrate_1d_complex(
            |x| Complex64::new((2.0 * x).cos(), (2.0 * x).sin()),
            0.0,
            1.0,
            Tol::absolute(1e-12),
            EndpointHint::None,
        );
        assert!(r.converged);
        assert_relative_eq!(r.value.re, 2.0f64.sin() / 2.0, epsilon = 1e-12);
        assert_relative_eq!(r.value.im, (1.0 - 2.0f64.cos()) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn sphere_area_and_moments() {
        let area = integrate_sphere(|_| 1.0, Tol::absolute(1e-12));
        assert!(area.converged);
        assert_relative_eq!(area.value, 4.0 * std::f64::consts::PI, epsilon = 1e-11);

        let zz = integrate_sphere(|d| d[2] * d[2], Tol::absolute(1e-12));
        assert!(zz.converged);
        assert_relative_eq!(zz.value, 4.0 * std::f64::consts::PI / 3.0, epsilon = 1e-11);
    }

    #[test]
    fn gauss_legendre_degree_exactness() {
        let (x, w) = gauss_legendre(5);
        // 5-point rule is exact to degree 9.
        let int_x8: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(8)).sum();
        assert_relative_eq!(int_x8, 2.0 / 9.0, epsilon = 1e-13);
        let (x, w) = gauss_legendre(16);
        let int_x30: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(30)).sum();
        assert_relative_eq!(int_x30, 2.0 / 31.0, epsilon = 1e-12);
    }

    #[test]
    fn time_square_area() {
        let r = integrate_time_square(
            |_, _| Complex64::new(1.0, 0.0),
            2.0,
            Tol::absolute(1e-10),
            false,
        );
        assert!(r.converged);
        assert_relative_eq!(r.value.re, 4.0, epsilon = 1e-10);
        assert!(r.value.im.abs() < 1e-12);
    }

    #[test]
    fn diagonal_exclusion_matches_inclusion_for_smooth_f() {
        let g = |t1: f64, t2: f64| Complex64::new((-(t1 - 0.7).powi(2) - (t2 - 1.1).powi(2)).exp(), t1 * t2);
        let with = integrate_time_square(g, 2.0, Tol::absolute(1e-10), false);
        let without = integrate_time_square(g, 2.0, Tol::absolute(1e-10), true);
        assert!(with.converged && without.converged);
        assert!((with.value - without.value).norm() < 2e-10);
    }
}
