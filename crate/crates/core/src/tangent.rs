//! Plane sections of the tangent surface of the knot `{z^d = w^(d-2)}` in `RP^3`.
//!
//! The knot is parametrized by `gamma(theta) = (e^{i(d-2)theta}, e^{i d theta})`
//! for `theta` in `[0, pi)`. A pencil of planes is fixed by one of the two
//! coordinate lines: [`Pencil::ThroughZLine`] holds the planes containing
//! `{w = 0}`, [`Pencil::ThroughWLine`] those containing `{z = 0}`. Each tangent
//! line meets a plane of the pencil in one point, and the resulting closed curve
//! is a `d`-cusped hypocycloid for the first pencil and a `(d-2)`-cusped
//! epicycloid for the second.
//!
//! Points of `R^4 = C^2` are stored as `[Re z, Im z, Re w, Im w]`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{Float, FloatConst};
use serde::Serialize;
use thiserror::Error;

/// Speed threshold for cusps, relative to the maximal chord speed.
pub const CUSP_THRESHOLD: f64 = 0.05;
/// Allowed gap between the curve at `theta = 0` and `theta = pi`.
pub const CLOSURE_TOLERANCE: f64 = 1e-6;
/// Relative size below which a plane-line intersection is rejected.
pub const CONDITION_THRESHOLD: f64 = 1e-9;
/// Charts are taken about this point of `S^3`, scaled by `1/sqrt 2`.
pub const CHART_CENTER: [f64; 4] = [1.0, 0.0, 1.0, 0.0];
/// Fixed SVG view box.
pub const VIEW_BOX: &str = "-3.2 -3.2 6.4 6.4";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TangentError {
    #[error("degree must be at least 3, got {0}")]
    InvalidDegree(usize),
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("plane is degenerate for the tangent line at theta = {theta}")]
    DegeneratePlane { theta: f64 },
    #[error("section does not close up: gap {gap}")]
    NotClosed { gap: f64 },
}

fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("representable constant")
}

/// Uniform samples of the knot with their chart images.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample<T> {
    pub degree: usize,
    pub theta: Vec<T>,
    pub points: Vec<[T; 4]>,
    /// Gnomonic chart about [`CHART_CENTER`]; `None` near the chart's plane at infinity.
    pub chart: Vec<Option<[T; 3]>>,
}

fn knot_point<T: Float>(d: usize, theta: T) -> [T; 4] {
    let a = c::<T>((d - 2) as f64) * theta;
    let b = c::<T>(d as f64) * theta;
    [a.cos(), a.sin(), b.cos(), b.sin()]
}

fn knot_velocity<T: Float>(d: usize, theta: T) -> [T; 4] {
    let (m, n) = (c::<T>((d - 2) as f64), c::<T>(d as f64));
    let (a, b) = (m * theta, n * theta);
    [-m * a.sin(), m * a.cos(), -n * b.sin(), n * b.cos()]
}

fn dot<T: Float>(a: &[T; 4], b: &[T; 4]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y)
}

fn gnomonic<T: Float>(x: &[T; 4]) -> Option<[T; 3]> {
    let s = c::<T>(0.5).sqrt();
    let b = CHART_CENTER.map(|v| c::<T>(v) * s);
    let u1 = [s, T::zero(), -s, T::zero()];
    let height = dot(x, &b);
    if height.abs() < c(1e-3) {
        return None;
    }
    Some([dot(x, &u1) / height, x[1] / height, x[3] / height])
}

/// `m` uniform samples of the knot on `[0, pi)`.
pub fn mw_knot_sample<T: Float + FloatConst>(
    d: usize,
    m: usize,
) -> Result<CurveSample<T>, TangentError> {
    if d < 3 {
        return Err(TangentError::InvalidDegree(d));
    }
    if m < 4 {
        return Err(TangentError::TooFewSamples { min: 4, got: m });
    }
    let theta: Vec<T> = (0..m)
        .map(|k| T::PI() * c(k as f64) / c(m as f64))
        .collect();
    let points: Vec<[T; 4]> = theta.iter().map(|&t| knot_point(d, t)).collect();
    let chart = points.iter().map(gnomonic).collect();
    Ok(CurveSample {
        degree: d,
        theta,
        points,
        chart,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pencil {
    /// Planes containing the line `{w = 0}`; sections have `d` cusps.
    ThroughZLine,
    /// Planes containing the line `{z = 0}`; sections have `d - 2` cusps.
    ThroughWLine,
}

impl Pencil {
    /// Number of cusps and order of rotational symmetry of the sections.
    pub fn symmetry_order(self, d: usize) -> usize {
        match self {
            Pencil::ThroughZLine => d,
            Pencil::ThroughWLine => d - 2,
        }
    }

    /// Functional `f` cutting out the plane at angle `phi`, an in-plane basis
    /// `(s1, s2)` and the affine normalization `n`.
    fn frame<T: Float>(self, phi: T) -> ([T; 4], [T; 4], [T; 4], [T; 4]) {
        let (o, l) = (T::zero(), T::one());
        let (cs, sn) = (phi.cos(), phi.sin());
        match self {
            Pencil::ThroughZLine => ([o, o, cs, sn], [l, o, o, o], [o, l, o, o], [o, o, -sn, cs]),
            Pencil::ThroughWLine => ([cs, sn, o, o], [o, o, l, o], [o, o, o, l], [-sn, cs, o, o]),
        }
    }
}

/// Sampled intersection of the tangent surface with one plane of a pencil.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionCurve<T> {
    pub degree: usize,
    pub pencil: Pencil,
    pub phi: T,
    pub theta: Vec<T>,
    pub points: Vec<[T; 2]>,
    /// Sample indices where a cusp was detected.
    pub cusps: Vec<usize>,
}

fn section_point<T: Float>(
    d: usize,
    pencil: Pencil,
    phi: T,
    theta: T,
) -> Result<[T; 2], TangentError> {
    let (f, s1, s2, n) = pencil.frame(phi);
    let g = knot_point(d, theta);
    let v = knot_velocity(d, theta);
    let (fg, fv) = (dot(&f, &g), dot(&f, &v));
    let x: [T; 4] = std::array::from_fn(|k| fv * g[k] - fg * v[k]);
    let den = dot(&x, &n);
    let norm = dot(&x, &x).sqrt();
    // NaN counts as degenerate
    if den.abs().partial_cmp(&(c::<T>(CONDITION_THRESHOLD) * norm)) != Some(Ordering::Greater) {
        return Err(TangentError::DegeneratePlane {
            theta: theta.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok([dot(&x, &s1) / den, dot(&x, &s2) / den])
}

/// Section by the plane at angle `phi` of the pencil, sampled at `m >= 512` parameters.
pub fn section<T: Float + FloatConst>(
    d: usize,
    pencil: Pencil,
    phi: T,
    m: usize,
) -> Result<SectionCurve<T>, TangentError> {
    if d < 3 {
        return Err(TangentError::InvalidDegree(d));
    }
    if m < 512 {
        return Err(TangentError::TooFewSamples { min: 512, got: m });
    }
    let theta: Vec<T> = (0..m)
        .map(|k| T::PI() * c(k as f64) / c(m as f64))
        .collect();
    let points = theta
        .iter()
        .map(|&t| section_point(d, pencil, phi, t))
        .collect::<Result<Vec<_>, _>>()?;
    let start = section_point(d, pencil, phi, T::zero())?;
    let end = section_point(d, pencil, phi, T::PI())?;
    let gap = ((start[0] - end[0]).powi(2) + (start[1] - end[1]).powi(2)).sqrt();
    if gap.partial_cmp(&c(CLOSURE_TOLERANCE)) != Some(Ordering::Less) {
        return Err(TangentError::NotClosed {
            gap: gap.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut curve = SectionCurve {
        degree: d,
        pencil,
        phi,
        theta,
        points,
        cusps: Vec::new(),
    };
    curve.cusps = cusp_indices(&curve.points, c(CUSP_THRESHOLD));
    Ok(curve)
}

fn chord_speeds<T: Float>(points: &[[T; 2]]) -> Vec<T> {
    let m = points.len();
    (0..m)
        .map(|k| {
            let (a, b) = (points[k], points[(k + 1) % m]);
            ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
        })
        .collect()
}

/// Cyclic local minima of the chord speed below `threshold` times its maximum.
pub fn cusp_indices<T: Float>(points: &[[T; 2]], threshold: T) -> Vec<usize> {
    let m = points.len();
    if m < 3 {
        return Vec::new();
    }
    let v = chord_speeds(points);
    let max = v.iter().fold(T::zero(), |a, &b| a.max(b));
    (0..m)
        .filter(|&k| {
            let (prev, next) = (v[(k + m - 1) % m], v[(k + 1) % m]);
            v[k] < prev && v[k] <= next && v[k] < threshold * max
        })
        .collect()
}

pub fn cusp_count<T>(curve: &SectionCurve<T>) -> usize {
    curve.cusps.len()
}

/// Largest distance between a sample rotated by `2 pi / k` about the centroid and
/// the curve evaluated a parameter step `pi / k` away (either direction).
pub fn symmetry_residual<T: Float + FloatConst>(
    curve: &SectionCurve<T>,
    k: usize,
) -> Result<T, TangentError> {
    let m = c::<T>(curve.points.len() as f64);
    let cx = curve.points.iter().fold(T::zero(), |a, p| a + p[0]) / m;
    let cy = curve.points.iter().fold(T::zero(), |a, p| a + p[1]) / m;
    let step = T::PI() / c(k as f64);
    let (cs, sn) = ((step + step).cos(), (step + step).sin());
    let mut worst = T::zero();
    for (p, &t) in curve.points.iter().zip(&curve.theta) {
        let (x, y) = (p[0] - cx, p[1] - cy);
        let rotated = [cs * x - sn * y, sn * x + cs * y];
        let mut best = T::infinity();
        for shifted in [t + step, t - step] {
            let q = section_point(curve.degree, curve.pencil, curve.phi, shifted)?;
            let e = ((q[0] - cx - rotated[0]).powi(2) + (q[1] - cy - rotated[1]).powi(2)).sqrt();
            best = best.min(e);
        }
        worst = worst.max(best);
    }
    Ok(worst)
}

/// Smallest distance between samples more than `gap` indices apart (cyclically).
pub fn min_separation<T: Float>(points: &[[T; 2]], gap: usize) -> T {
    let m = points.len();
    let mut best = T::infinity();
    for i in 0..m {
        for j in i + 1..m {
            let sep = (j - i).min(m - (j - i));
            if sep > gap {
                let d = ((points[i][0] - points[j][0]).powi(2)
                    + (points[i][1] - points[j][1]).powi(2))
                .sqrt();
                best = best.min(d);
            }
        }
    }
    best
}

/// Sections at the angles `phi_j = j pi / k` for `j < k`.
pub fn section_grid<T: Float + FloatConst>(
    d: usize,
    pencil: Pencil,
    k: usize,
    m: usize,
) -> Result<Vec<SectionCurve<T>>, TangentError> {
    (0..k)
        .map(|j| section(d, pencil, T::PI() * c(j as f64) / c(k as f64), m))
        .collect()
}

/// C-style `%.12e`: twelve decimals and a signed exponent of at least two digits.
pub fn format_sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn f<T: Float>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn section_csv<T: Float>(curve: &SectionCurve<T>) -> String {
    let mut out = String::from("theta,x,y\n");
    for (t, p) in curve.theta.iter().zip(&curve.points) {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_sci(f(*t)),
            format_sci(f(p[0])),
            format_sci(f(p[1]))
        );
    }
    out
}

pub fn sample_csv<T: Float>(sample: &CurveSample<T>) -> String {
    let mut out = String::from("theta,x,y,z\n");
    for (t, p) in sample.theta.iter().zip(&sample.chart) {
        let [x, y, z] = p.map(|v| v.map(f)).unwrap_or([f64::NAN; 3]);
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_sci(f(*t)),
            format_sci(x),
            format_sci(y),
            format_sci(z)
        );
    }
    out
}

fn polyline(points: &[(f64, f64)]) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{x:.6},{:.6}", -y))
        .collect();
    format!(
        "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.01\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

fn svg_document(body: &str) -> String {
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{VIEW_BOX}\">\n{body}</svg>\n")
}

/// Arcs of a section between consecutive cusps, each including both end cusps.
pub fn section_arcs<T: Float>(curve: &SectionCurve<T>) -> Vec<Vec<(f64, f64)>> {
    let m = curve.points.len();
    let pt = |k: usize| {
        let p = curve.points[k % m];
        (f(p[0]), f(p[1]))
    };
    if curve.cusps.is_empty() {
        let mut arc: Vec<(f64, f64)> = (0..=m).map(pt).collect();
        arc.dedup();
        return vec![arc];
    }
    let cuts: Vec<usize> = curve.cusps.iter().map(|&k| k + 1).collect();
    (0..cuts.len())
        .map(|i| {
            let a = cuts[i];
            let b = if i + 1 < cuts.len() {
                cuts[i + 1]
            } else {
                cuts[0] + m
            };
            (a..=b).map(pt).collect()
        })
        .collect()
}

/// One polyline per arc of every section.
pub fn sections_svg<T: Float>(curves: &[SectionCurve<T>]) -> String {
    let body: String = curves
        .iter()
        .flat_map(section_arcs)
        .map(|arc| polyline(&arc))
        .collect();
    svg_document(&body)
}

/// The knot drawn on the flattened torus `(arg z, arg w)`, split where it wraps.
pub fn sample_svg<T: Float>(sample: &CurveSample<T>) -> String {
    let mut pieces: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
    let mut last: Option<(f64, f64)> = None;
    for p in &sample.points {
        let q = (f(p[1]).atan2(f(p[0])), f(p[3]).atan2(f(p[2])));
        if let Some(prev) = last {
            if (q.0 - prev.0).abs() > std::f64::consts::PI
                || (q.1 - prev.1).abs() > std::f64::consts::PI
            {
                pieces.push(Vec::new());
            }
        }
        pieces.last_mut().unwrap().push(q);
        last = Some(q);
    }
    let body: String = pieces
        .iter()
        .filter(|p| p.len() > 1)
        .map(|p| polyline(p))
        .collect();
    svg_document(&body)
}

/// Constants and camera choices that shape the emitted files.
#[derive(Debug, Clone, Serialize)]
pub struct EmitMetadata {
    pub degree: usize,
    pub pencil: Option<Pencil>,
    pub phi: Vec<f64>,
    pub samples: usize,
    pub cusp_threshold: f64,
    pub closure_tolerance: f64,
    pub chart: &'static str,
    pub camera: &'static str,
    pub view_box: &'static str,
}

impl EmitMetadata {
    pub fn new(degree: usize, pencil: Option<Pencil>, phi: Vec<f64>, samples: usize) -> Self {
        EmitMetadata {
            degree,
            pencil,
            phi,
            samples,
            cusp_threshold: CUSP_THRESHOLD,
            closure_tolerance: CLOSURE_TOLERANCE,
            chart: "gnomonic about (1,0,1,0)/sqrt(2); sections in the affine plane coordinates",
            camera: "orthographic, y axis up",
            view_box: VIEW_BOX,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sample_points_lie_on_the_torus() {
        let s: CurveSample<f64> = mw_knot_sample(4, 4).unwrap();
        assert_eq!(s.theta, vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0]);
        for p in &s.points {
            assert!((p[0].hypot(p[1]) - 1.0).abs() < 1e-12);
            assert!((p[2].hypot(p[3]) - 1.0).abs() < 1e-12);
        }
        assert!(mw_knot_sample::<f64>(2, 16).is_err());
    }

    #[test]
    fn antipodal_period() {
        for d in 3..8 {
            for k in 0..10 {
                let t = 0.3 * k as f64;
                let a = knot_point(d, t);
                let b = knot_point(d, t + PI);
                let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
                for i in 0..4 {
                    assert!((b[i] - sign * a[i]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hypocycloid_closed_form() {
        // z-line pencil: xi = i ((d-1) e^{i(phi - 2 theta)} - e^{i((2d-2) theta - phi)}) / d
        let (d, phi) = (5usize, 0.4f64);
        let dd = d as f64;
        for k in 0..50 {
            let t = k as f64 * 0.05;
            let p = section_point(d, Pencil::ThroughZLine, phi, t).unwrap();
            let a = phi - 2.0 * t;
            let b = (2.0 * dd - 2.0) * t - phi;
            let re = ((dd - 1.0) * a.cos() - b.cos()) / dd;
            let im = ((dd - 1.0) * a.sin() - b.sin()) / dd;
            assert!((p[0] + im).abs() < 1e-12);
            assert!((p[1] - re).abs() < 1e-12);
        }
    }

    #[test]
    fn cusp_counts_for_small_degrees() {
        for d in 4..=7 {
            for (pencil, want) in [(Pencil::ThroughZLine, d), (Pencil::ThroughWLine, d - 2)] {
                for m in [512, 2048] {
                    let c = section::<f64>(d, pencil, 0.37, m).unwrap();
                    assert_eq!(cusp_count(&c), want, "d = {d}, {pencil:?}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn rotational_symmetry() {
        for d in 4..=7 {
            for pencil in [Pencil::ThroughZLine, Pencil::ThroughWLine] {
                let c = section::<f64>(d, pencil, 1.1, 1024).unwrap();
                let r = symmetry_residual(&c, pencil.symmetry_order(d)).unwrap();
                assert!(r < 1e-6, "d = {d}, {pencil:?}: {r}");
            }
        }
    }

    #[test]
    fn sections_are_embedded() {
        let c = section::<f64>(5, Pencil::ThroughZLine, 0.2, 512).unwrap();
        assert!(min_separation(&c.points, 8) > 1e-9);
        let c = section::<f64>(6, Pencil::ThroughWLine, 0.2, 512).unwrap();
        assert!(min_separation(&c.points, 8) > 1e-9);
    }

    #[test]
    fn single_precision_works_too() {
        let c = section::<f32>(4, Pencil::ThroughZLine, 0.5, 512).unwrap();
        assert_eq!(cusp_count(&c), 4);
    }

    #[test]
    fn sci_format() {
        assert_eq!(format_sci(1.0), "1.000000000000e+00");
        assert_eq!(format_sci(-0.00123), "-1.230000000000e-03");
        assert_eq!(format_sci(1e100), "1.000000000000e+100");
        assert_eq!(format_sci(f64::NAN), "nan");
    }

    #[test]
    fn csv_and_svg_shapes() {
        let c = section::<f64>(4, Pencil::ThroughZLine, 0.0, 512).unwrap();
        let csv = section_csv(&c);
        assert_eq!(csv.lines().count(), 513);
        assert!(csv.starts_with("theta,x,y\n"));
        let grid = section_grid::<f64>(4, Pencil::ThroughZLine, 3, 512).unwrap();
        let svg = sections_svg(&grid);
        assert_eq!(svg.matches("<polyline").count(), 4 * 3);
        let empty = SectionCurve::<f64> {
            degree: 4,
            pencil: Pencil::ThroughZLine,
            phi: 0.0,
            theta: vec![],
            points: vec![],
            cusps: vec![],
        };
        assert_eq!(section_csv(&empty), "theta,x,y\n");
        let s: CurveSample<f64> = mw_knot_sample(5, 64).unwrap();
        assert_eq!(sample_csv(&s).lines().count(), 65);
        assert!(sample_svg(&s).contains("<polyline"));
    }
}
