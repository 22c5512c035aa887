//! Sampled self-maps of the circle `R/Z` and densities on it.
//!
//! A map `T` is crossing when every two chords `[x, T(x)]`, `[y, T(y)]`
//! meet. A probability density is compatible with `T` when `x` and `T(x)`
//! always split the circle into two arcs of mass 1/2, and invariant when
//! `mu(T^-1 A) = mu(A)` for arcs `A`. Everything here is binary64 with
//! explicit tolerances; `T` between samples is linear interpolation and
//! densities are piecewise linear (trapezoidal rule).

use crate::error::{parse_err, Error, Result};
use crate::graph::content_lines;
use crate::path_system::CrossingFunction;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;

/// Allowed deviation of a density's total mass from 1.
pub const DENSITY_TOLERANCE: f64 = 1e-6;

/// Two circle points closer than this are treated as equal.
const POINT_EPS: f64 = 1e-12;

/// `x mod 1` in `[0, 1)`.
pub fn unit(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Signed circle difference in `[-1/2, 1/2)`.
fn wrap(d: f64) -> f64 {
    unit(d + 0.5) - 0.5
}

/// Length of the forward (counter-clockwise) arc from `a` to `b`.
fn forward(a: f64, b: f64) -> f64 {
    unit(b - a)
}

fn circle_dist(a: f64, b: f64) -> f64 {
    wrap(b - a).abs()
}

/// `T` sampled at `k/N`, `k = 0..N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledCircleMap {
    values: Vec<f64>,
}

impl SampledCircleMap {
    pub fn new(values: Vec<f64>) -> Result<SampledCircleMap> {
        if values.is_empty() {
            return Err(Error::ResolutionTooLow(0));
        }
        if let Some(k) = values.iter().position(|v| !(v.is_finite() && (0.0..1.0).contains(v))) {
            return Err(Error::PreconditionViolated(format!("sample {k} is not in [0, 1)")));
        }
        Ok(SampledCircleMap { values })
    }

    /// Sample `t` at `k/n`, reducing mod 1.
    pub fn from_fn(n: usize, t: impl Fn(f64) -> f64) -> SampledCircleMap {
        SampledCircleMap { values: (0..n).map(|k| unit(t(k as f64 / n as f64))).collect() }
    }

    pub fn antipodal(n: usize) -> SampledCircleMap {
        Self::from_fn(n, |x| x + 0.5)
    }

    pub fn shift(n: usize, s: f64) -> SampledCircleMap {
        Self::from_fn(n, |x| x + s)
    }

    /// `x -> 1 - x`: an involution, but orientation reversing.
    pub fn reflection(n: usize) -> SampledCircleMap {
        Self::from_fn(n, |x| 1.0 - x)
    }

    /// The antipodal map conjugated by the disc automorphism
    /// `z -> (z - a) / (1 - a z)`, `-1 < a < 1`: a smooth crossing
    /// involution with non-constant derivative.
    pub fn mobius(n: usize, a: f64) -> SampledCircleMap {
        Self::from_fn(n, |x| mobius_involution(a, x))
    }

    /// Step map of a crossing function on `C_n`: vertex `i` sits at `i/n`
    /// and is sent to the midpoint `(2 f(i) + 1) / 2n` of its edge.
    pub fn from_crossing_function(c: &CrossingFunction) -> SampledCircleMap {
        let n = c.cycle_length() as f64;
        SampledCircleMap { values: c.f.iter().map(|&e| (2 * e + 1) as f64 / (2.0 * n)).collect() }
    }

    pub fn resolution(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sample point `k/N`.
    pub fn point(&self, k: usize) -> f64 {
        k as f64 / self.resolution() as f64
    }

    /// `T(x)` by linear interpolation along the shorter way between
    /// neighbouring samples.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.resolution();
        let s = unit(x) * n as f64;
        let k = (s.floor() as usize).min(n - 1);
        let frac = s - k as f64;
        let (v0, v1) = (self.values[k], self.values[(k + 1) % n]);
        unit(v0 + frac * wrap(v1 - v0))
    }

    /// `T'` at the samples by central differences.
    pub fn derivative(&self) -> Vec<f64> {
        let n = self.resolution();
        (0..n)
            .map(|k| wrap(self.values[(k + 1) % n] - self.values[(k + n - 1) % n]) * n as f64 / 2.0)
            .collect()
    }

    pub fn parse(text: &str) -> Result<SampledCircleMap> {
        SampledCircleMap::new(parse_samples(text)?)
    }
}

impl fmt::Display for SampledCircleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_samples(f, &self.values)
    }
}

fn mobius_involution(a: f64, x: f64) -> f64 {
    // z on the unit circle; phi(z) = (z - a) / (1 - a z), T = phi^-1(-phi)
    let z = (TAU * x).cos();
    let zi = (TAU * x).sin();
    let (wr, wi) = cdiv((z - a, zi), (1.0 - a * z, -a * zi));
    let (wr, wi) = (-wr, -wi);
    let (ur, ui) = cdiv((wr + a, wi), (1.0 + a * wr, a * wi));
    unit(ui.atan2(ur) / TAU)
}

fn cdiv((a, b): (f64, f64), (c, d): (f64, f64)) -> (f64, f64) {
    let den = c * c + d * d;
    ((a * c + b * d) / den, (b * c - a * d) / den)
}

/// `|phi_a'|` on the circle for the automorphism behind
/// [`SampledCircleMap::mobius`]: the push-forward of the uniform measure,
/// so it is compatible with that map. Integrates to 1.
pub fn mobius_density(a: f64, x: f64) -> f64 {
    let (c, s) = ((TAU * x).cos(), (TAU * x).sin());
    let (re, im) = (1.0 - a * c, -a * s);
    (1.0 - a * a) / (re * re + im * im)
}

/// A nonnegative density sampled at `k/N` with total mass 1 (within
/// [`DENSITY_TOLERANCE`]).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledDensity {
    values: Vec<f64>,
}

impl SampledDensity {
    pub fn new(values: Vec<f64>) -> Result<SampledDensity> {
        if values.is_empty() {
            return Err(Error::ResolutionTooLow(0));
        }
        if let Some(k) = values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::PreconditionViolated(format!("density sample {k} is negative or not finite")));
        }
        let d = SampledDensity { values };
        let total = d.total();
        if (total - 1.0).abs() > DENSITY_TOLERANCE {
            return Err(Error::PreconditionViolated(format!("density has total mass {total}, expected 1")));
        }
        Ok(d)
    }

    /// Scale nonnegative samples to total mass 1.
    pub fn normalized(values: Vec<f64>) -> Result<SampledDensity> {
        let total = values.iter().sum::<f64>() / values.len().max(1) as f64;
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::PreconditionViolated("density has no mass".into()));
        }
        SampledDensity::new(values.into_iter().map(|v| v / total).collect())
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<SampledDensity> {
        Self::normalized((0..n).map(|k| f(k as f64 / n as f64)).collect())
    }

    pub fn uniform(n: usize) -> SampledDensity {
        SampledDensity { values: vec![1.0; n] }
    }

    pub fn resolution(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Trapezoidal mass of the whole circle (periodic, so the plain mean).
    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.resolution() as f64
    }

    pub fn parse(text: &str) -> Result<SampledDensity> {
        SampledDensity::new(parse_samples(text)?)
    }
}

impl fmt::Display for SampledDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_samples(f, &self.values)
    }
}

fn write_samples(f: &mut fmt::Formatter<'_>, values: &[f64]) -> fmt::Result {
    writeln!(f, "circle {}", values.len())?;
    for v in values {
        writeln!(f, "{v:?}")?;
    }
    Ok(())
}

fn parse_samples(text: &str) -> Result<Vec<f64>> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["circle", n] => n.parse().map_err(|_| parse_err(ln, "bad resolution"))?,
        _ => return Err(parse_err(ln, "header must be `circle N`")),
    };
    let values = lines
        .map(|(ln, l)| l.parse::<f64>().map_err(|_| parse_err(ln, format!("not a number: {l}"))))
        .collect::<Result<Vec<f64>>>()?;
    if values.len() != n {
        return Err(parse_err(0, format!("header promises {n} samples, found {}", values.len())));
    }
    Ok(values)
}

/// Cumulative mass of a piecewise linear density.
struct Measure<'a> {
    f: &'a [f64],
    cum: Vec<f64>,
}

impl<'a> Measure<'a> {
    fn new(d: &'a SampledDensity) -> Measure<'a> {
        let f = d.values();
        let n = f.len();
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        for k in 0..n {
            cum.push(cum[k] + (f[k] + f[(k + 1) % n]) / (2.0 * n as f64));
        }
        Measure { f, cum }
    }

    fn total(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    /// Mass of `[0, x)`.
    fn upto(&self, x: f64) -> f64 {
        let n = self.f.len();
        let s = x * n as f64;
        let k = (s.floor() as usize).min(n - 1);
        let frac = s - k as f64;
        let (f0, f1) = (self.f[k], self.f[(k + 1) % n]);
        self.cum[k] + frac / n as f64 * (f0 + (f0 + frac * (f1 - f0))) / 2.0
    }

    /// Normalized mass of the forward arc from `a` to `b`.
    fn arc(&self, a: f64, b: f64) -> f64 {
        let (fa, fb) = (self.upto(a), self.upto(b));
        let m = if b >= a { fb - fa } else { self.total() - fa + fb };
        m / self.total()
    }
}

/// Outcome of [`is_crossing`]: the first sample pair (by index) whose
/// chords miss each other, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub crossing: bool,
    pub witness: Option<(usize, usize)>,
}

/// Chords `ab` and `cd` meet. A chord collapsed to a point imposes no
/// condition, and chords sharing an endpoint meet there.
fn chords_meet(a: f64, b: f64, c: f64, d: f64) -> bool {
    if circle_dist(a, b) <= POINT_EPS || circle_dist(c, d) <= POINT_EPS {
        return true;
    }
    if [(a, c), (a, d), (b, c), (b, d)].iter().any(|&(p, q)| circle_dist(p, q) <= POINT_EPS) {
        return true;
    }
    let span = forward(a, b);
    (forward(a, c) < span) != (forward(a, d) < span)
}

/// Check the chord condition on every pair of samples.
pub fn is_crossing(t: &SampledCircleMap) -> Result<CrossingReport> {
    let n = t.resolution();
    if n < 4 {
        return Err(Error::ResolutionTooLow(n));
    }
    for x in 0..n {
        let (a, b) = (t.point(x), t.values[x]);
        for y in x + 1..n {
            if !chords_meet(a, b, t.point(y), t.values[y]) {
                return Ok(CrossingReport { crossing: false, witness: Some((x, y)) });
            }
        }
    }
    Ok(CrossingReport { crossing: true, witness: None })
}

/// `|T(T(x)) - x| <= tol` (circle distance) at every sample.
pub fn check_involution(t: &SampledCircleMap, tol: f64) -> bool {
    involution_defect(t) <= tol
}

/// Largest `|T(T(x)) - x|` over the samples.
pub fn involution_defect(t: &SampledCircleMap) -> f64 {
    (0..t.resolution()).map(|k| circle_dist(t.eval(t.values[k]), t.point(k))).fold(0.0, f64::max)
}

/// Largest `|T'(x) T'(T(x)) - 1|` over the samples; near 0 for a smooth
/// involution.
pub fn chain_rule_defect(t: &SampledCircleMap) -> f64 {
    let d = t.derivative();
    let n = d.len();
    let interp = |x: f64| {
        let s = x * n as f64;
        let k = (s.floor() as usize).min(n - 1);
        let frac = s - k as f64;
        d[k] + frac * (d[(k + 1) % n] - d[k])
    };
    (0..n).map(|k| (d[k] * interp(t.values[k]) - 1.0).abs()).fold(0.0, f64::max)
}

/// The density proportional to `sqrt(T')`, which is compatible with a
/// smooth crossing map.
pub fn compatible_density_from_derivative(t: &SampledCircleMap) -> Result<SampledDensity> {
    let report = is_crossing(t)?;
    if let Some((x, y)) = report.witness {
        return Err(Error::PreconditionViolated(format!("map is not crossing: chords at samples {x} and {y} miss")));
    }
    let d = t.derivative();
    if let Some(k) = d.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::NonPositiveDerivative(k));
    }
    SampledDensity::normalized(d.into_iter().map(f64::sqrt).collect())
}

fn same_resolution(t: &SampledCircleMap, mu: &SampledDensity) -> Result<()> {
    if t.resolution() != mu.resolution() {
        return Err(Error::ResolutionMismatch(t.resolution(), mu.resolution()));
    }
    Ok(())
}

/// Largest deviation from 1/2 of the arc mass between `x` and `T(x)`.
pub fn compatibility_defect(t: &SampledCircleMap, mu: &SampledDensity) -> Result<f64> {
    same_resolution(t, mu)?;
    let m = Measure::new(mu);
    Ok((0..t.resolution()).map(|k| (m.arc(t.point(k), t.values[k]) - 0.5).abs()).fold(0.0, f64::max))
}

/// Both arcs between each sample `x` and `T(x)` have mass `1/2 +- tol`.
pub fn verify_compatibility(t: &SampledCircleMap, mu: &SampledDensity, tol: f64) -> Result<bool> {
    Ok(compatibility_defect(t, mu)? <= tol)
}

/// Largest `|mu(T^-1 A) - mu(A)|` over arcs `A = [x_i, x_j]` between
/// samples. Uses `T^-1 = T` and that a continuous crossing map is
/// increasing, so `T^-1 A` is the forward arc `[T(x_i), T(x_j)]`.
pub fn invariance_defect(t: &SampledCircleMap, mu: &SampledDensity) -> Result<f64> {
    same_resolution(t, mu)?;
    let m = Measure::new(mu);
    let n = t.resolution();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let a = m.arc(t.point(i), t.point(j));
            let (ti, tj) = (t.values[i], t.values[j]);
            let b = if circle_dist(ti, tj) <= POINT_EPS { 0.0 } else { m.arc(ti, tj) };
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

/// `mu(T^-1 A) = mu(A) +- tol` on all sample-aligned arcs.
pub fn verify_invariance(t: &SampledCircleMap, mu: &SampledDensity, tol: f64) -> Result<bool> {
    Ok(invariance_defect(t, mu)? <= tol)
}
