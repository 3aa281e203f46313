//! Piecewise linear motion of a positively linked configuration onto the
//! standard family `{z = c_i, y = c_i x}`.
//!
//! Working chart: if the configuration has a line at infinity it is sent to
//! `span(e_z, e_y)`, otherwise the first line is, unless every line already has
//! `dx > 0`. Projecting along `z` gives lines `y = c_i x + b_i`; over a crossing
//! of two projections the line with the larger slope `c_i` is the upper one.
//!
//! Lines are then processed in order of decreasing slope. Each is first turned
//! inside its vertical plane until it is horizontal at height `c_i`, then slid
//! horizontally onto `y = c_i x`. If some lower line at a crossing sits above
//! the slope of the upper one, the whole configuration is first lowered.

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::geometry::{det_columns, identity, inverse, mat_mul, Mat4, Vec4};
use super::{is_hopf_config, Field, HomLine, LineError, ProjLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StageKind {
    /// Every affine line translated by the same vertical vector.
    Shift,
    /// One line turned within its vertical plane onto a horizontal plane.
    Rotate { line: usize },
    /// One horizontal line slid within its horizontal plane.
    Translate { line: usize },
}

/// Line position `(p0 + t p1, d0 + t d1)` for `t` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motion<T> {
    pub p0: Vec4<T>,
    pub p1: Vec4<T>,
    pub d0: Vec4<T>,
    pub d1: Vec4<T>,
}

impl<T: Field> Motion<T> {
    pub fn stationary(line: &HomLine<T>) -> Self {
        let zero: Vec4<T> = std::array::from_fn(|_| T::zero());
        Motion {
            p0: line.p.clone(),
            p1: zero.clone(),
            d0: line.d.clone(),
            d1: zero,
        }
    }

    pub fn at(&self, t: &T) -> HomLine<T> {
        let f = |a: &Vec4<T>, b: &Vec4<T>| {
            std::array::from_fn(|k| a[k].clone() + t.clone() * b[k].clone())
        };
        HomLine {
            p: f(&self.p0, &self.p1),
            d: f(&self.d0, &self.d1),
        }
    }

    pub fn start(&self) -> HomLine<T> {
        HomLine {
            p: self.p0.clone(),
            d: self.d0.clone(),
        }
    }

    pub fn end(&self) -> HomLine<T> {
        self.at(&T::one())
    }

    pub fn is_stationary(&self) -> bool {
        self.p1.iter().chain(self.d1.iter()).all(Zero::is_zero)
    }
}

fn strings<T: Field>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl<T: Field> Serialize for Motion<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Motion", 4)?;
        st.serialize_field("p0", &strings(&self.p0))?;
        st.serialize_field("p1", &strings(&self.p1))?;
        st.serialize_field("d0", &strings(&self.d0))?;
        st.serialize_field("d1", &strings(&self.d1))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct Stage<T: Field> {
    pub kind: StageKind,
    /// One motion per line, in input order.
    pub motions: Vec<Motion<T>>,
}

/// A certified-to-be motion, stated in working coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotopyScript<T: Field> {
    /// Input configuration in the caller's coordinates.
    pub input: Vec<ProjLine<T>>,
    /// Passive change of coordinates into the working chart (determinant > 0).
    pub chart: Mat4<T>,
    /// Final slope `c_i` of each affine line, `None` for the line at infinity.
    pub slopes: Vec<Option<T>>,
    pub stages: Vec<Stage<T>>,
}

impl<T: Field> Serialize for IsotopyScript<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IsotopyScript", 4)?;
        st.serialize_field("input", &self.input)?;
        let chart: Vec<Vec<String>> = self.chart.iter().map(|r| strings(r)).collect();
        st.serialize_field("chart", &chart)?;
        let slopes: Vec<Option<String>> = self
            .slopes
            .iter()
            .map(|c| c.as_ref().map(ToString::to_string))
            .collect();
        st.serialize_field("slopes", &slopes)?;
        st.serialize_field("stages", &self.stages)?;
        st.end()
    }
}

impl<T: Field> IsotopyScript<T> {
    /// A script without lines or stages.
    pub fn empty() -> Self {
        IsotopyScript {
            input: Vec::new(),
            chart: identity(),
            slopes: Vec::new(),
            stages: Vec::new(),
        }
    }

    /// Input lines expressed in the working chart.
    pub fn initial(&self) -> Vec<HomLine<T>> {
        self.input
            .iter()
            .map(|l| l.homogeneous().transformed(&self.chart))
            .collect()
    }

    /// Configuration at the end of the last stage.
    pub fn final_configuration(&self) -> Vec<HomLine<T>> {
        match self.stages.last() {
            Some(stage) => stage.motions.iter().map(Motion::end).collect(),
            None => self.initial(),
        }
    }

    /// Whether every affine line ends exactly on `{z = c_i, y = c_i x}` and the
    /// line at infinity, if any, is `span(e_z, e_y)`.
    pub fn satisfies_final_equations(&self) -> bool {
        let finals = self.final_configuration();
        finals
            .iter()
            .zip(&self.slopes)
            .all(|(line, slope)| match slope {
                Some(c) => {
                    [&line.p, &line.d].iter().all(|v| {
                        v[2].clone() - c.clone() * v[3].clone() == T::zero()
                            && v[1].clone() - c.clone() * v[0].clone() == T::zero()
                    }) && !line.p[3].is_zero()
                }
                None => [&line.p, &line.d]
                    .iter()
                    .all(|v| v[0].is_zero() && v[3].is_zero()),
            })
    }
}

/// Affine line `(0, b, f) + x (1, c, e)` in the working chart.
#[derive(Debug, Clone)]
struct Chartline<T> {
    b: T,
    f: T,
    c: T,
    e: T,
}

impl<T: Field> Chartline<T> {
    fn hom(&self) -> HomLine<T> {
        HomLine {
            p: [T::zero(), self.b.clone(), self.f.clone(), T::one()],
            d: [T::one(), self.c.clone(), self.e.clone(), T::zero()],
        }
    }

    fn from_hom(line: &HomLine<T>) -> Option<Self> {
        let ProjLine::Affine { point, direction } = line.to_proj() else {
            return None;
        };
        let dx = direction[0].clone();
        if !dx.is_positive() {
            return None;
        }
        let c = direction[1].clone() / dx.clone();
        let e = direction[2].clone() / dx;
        let x0 = point[0].clone();
        Some(Chartline {
            b: point[1].clone() - c.clone() * x0.clone(),
            f: point[2].clone() - e.clone() * x0,
            c,
            e,
        })
    }
}

fn unit<T: Field>(k: usize) -> Vec4<T> {
    std::array::from_fn(|i| if i == k { T::one() } else { T::zero() })
}

/// Chart sending the oriented line `l0` to `span(e_z, e_y)` with `P -> e_z`, `D -> e_y`.
fn chart_for_infinity<T: Field>(l0: &HomLine<T>) -> Result<Mat4<T>, LineError> {
    for (i, j) in [(0, 3), (0, 1), (0, 2), (1, 3), (2, 3), (1, 2)] {
        let mut e1 = unit::<T>(i);
        let e4 = unit::<T>(j);
        let det = det_columns([&e1, &l0.d, &l0.p, &e4]);
        if det.is_zero() {
            continue;
        }
        if det.is_negative() {
            e1 = e1.map(|c| -c);
        }
        let basis: Mat4<T> = std::array::from_fn(|r| {
            [
                e1[r].clone(),
                l0.d[r].clone(),
                l0.p[r].clone(),
                e4[r].clone(),
            ]
        });
        return inverse(&basis).ok_or_else(|| LineError::DegenerateChart("singular basis".into()));
    }
    Err(LineError::DegenerateChart(
        "line has a degenerate representative".into(),
    ))
}

/// Rotation by the rational angle with `tan(angle / 2) = s` in the `(y, z)` plane.
fn yz_rotation<T: Field>(s: &T) -> Mat4<T> {
    let one = T::one();
    let den = one.clone() + s.clone() * s.clone();
    let cos = (one.clone() - s.clone() * s.clone()) / den.clone();
    let sin = (one.clone() + one) * s.clone() / den;
    let mut m = identity::<T>();
    m[1][1] = cos.clone();
    m[1][2] = -sin.clone();
    m[2][1] = sin;
    m[2][2] = cos;
    m
}

fn rotation_candidates<T: Field>() -> impl Iterator<Item = T> {
    (2..40i64).flat_map(|den| {
        (1..den).map(move |num| T::from_i64(num).unwrap() / T::from_i64(den).unwrap())
    })
}

fn distinct<T: Field>(xs: &[T]) -> bool {
    (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| xs[i] != xs[j]))
}

/// Builds the motion script for a configuration of pairwise positively linked lines.
pub fn standardize<T: Field>(lines: &[ProjLine<T>]) -> Result<IsotopyScript<T>, LineError> {
    if lines.is_empty() {
        return Err(LineError::TooFewLines(1));
    }
    if lines.len() >= 2 && !is_hopf_config(lines)? {
        let hom: Vec<HomLine<T>> = lines.iter().map(ProjLine::homogeneous).collect();
        for i in 0..hom.len() {
            for j in i + 1..hom.len() {
                if super::dlk_hom(&hom[i], &hom[j]) == Some(-1) {
                    return Err(LineError::NotHopf(i, j));
                }
            }
        }
    }
    if lines.iter().filter(|l| l.is_at_infinity()).count() > 1 {
        // two lines in the plane at infinity always meet
        return Err(LineError::LinesIntersect(0, 1));
    }

    let hom: Vec<HomLine<T>> = lines.iter().map(ProjLine::homogeneous).collect();
    let pinned = lines.iter().position(ProjLine::is_at_infinity);
    let already_affine = pinned.is_none() && hom.iter().all(|l| Chartline::from_hom(l).is_some());
    let (mut chart, infinity) = if already_affine {
        (identity(), None)
    } else {
        let k = pinned.unwrap_or(0);
        (chart_for_infinity(&hom[k])?, Some(k))
    };

    let to_chart = |chart: &Mat4<T>| -> Result<Vec<Option<Chartline<T>>>, LineError> {
        hom.iter()
            .enumerate()
            .map(|(i, l)| {
                if Some(i) == infinity {
                    return Ok(None);
                }
                Chartline::from_hom(&l.transformed(chart))
                    .map(Some)
                    .ok_or_else(|| {
                        LineError::DegenerateChart(format!(
                            "line {i} is not transverse to the pinned line"
                        ))
                    })
            })
            .collect()
    };
    let mut affine = to_chart(&chart)?;
    let slopes_of = |a: &[Option<Chartline<T>>]| -> Vec<T> {
        a.iter().flatten().map(|l| l.c.clone()).collect()
    };
    if !distinct(&slopes_of(&affine)) {
        let mut found = false;
        for s in rotation_candidates::<T>() {
            let candidate = mat_mul(&yz_rotation(&s), &chart);
            let moved = to_chart(&candidate)?;
            if distinct(&slopes_of(&moved)) {
                chart = candidate;
                affine = moved;
                found = true;
                break;
            }
        }
        if !found {
            return Err(LineError::DegenerateChart(
                "projected slopes stay tied".into(),
            ));
        }
    }

    let mut current: Vec<HomLine<T>> = hom.iter().map(|l| l.transformed(&chart)).collect();
    for (i, a) in affine.iter().enumerate() {
        if let Some(a) = a {
            current[i] = a.hom();
        }
    }
    let slopes: Vec<Option<T>> = affine
        .iter()
        .map(|a| a.as_ref().map(|l| l.c.clone()))
        .collect();
    let mut order: Vec<usize> = (0..affine.len()).filter(|&i| affine[i].is_some()).collect();
    order.sort_by(|&i, &j| {
        let (ci, cj) = (
            &affine[j].as_ref().unwrap().c,
            &affine[i].as_ref().unwrap().c,
        );
        ci.partial_cmp(cj).expect("ordered field")
    });
    let mut lines_now: Vec<Chartline<T>> = affine.iter().flatten().cloned().collect();
    let mut slot = vec![usize::MAX; affine.len()];
    for (k, &i) in (0..affine.len())
        .filter(|&i| affine[i].is_some())
        .collect::<Vec<_>>()
        .iter()
        .enumerate()
    {
        slot[i] = k;
    }

    let mut stages: Vec<Stage<T>> = Vec::new();

    // lower everything until each crossing sits below the upper line's slope
    let mut worst: Option<T> = None;
    for (a, &i) in order.iter().enumerate() {
        for &j in &order[a + 1..] {
            let (hi, lo) = (&lines_now[slot[i]], &lines_now[slot[j]]);
            let x = (lo.b.clone() - hi.b.clone()) / (hi.c.clone() - lo.c.clone());
            let excess = lo.f.clone() + lo.e.clone() * x - hi.c.clone();
            if worst.as_ref().is_none_or(|w| excess > *w) {
                worst = Some(excess);
            }
        }
    }
    if let Some(w) = worst.filter(|w| !w.is_negative()) {
        let dz = -(w + T::one());
        let mut motions: Vec<Motion<T>> = current.iter().map(Motion::stationary).collect();
        for (i, m) in motions.iter_mut().enumerate() {
            if slot[i] != usize::MAX {
                m.p1 = [T::zero(), T::zero(), dz.clone(), T::zero()];
                let l = &mut lines_now[slot[i]];
                l.f = l.f.clone() + dz.clone();
            }
        }
        current = motions.iter().map(Motion::end).collect();
        stages.push(Stage {
            kind: StageKind::Shift,
            motions,
        });
    }

    for &i in &order {
        let l = lines_now[slot[i]].clone();
        let mut motions: Vec<Motion<T>> = current.iter().map(Motion::stationary).collect();
        motions[i] = Motion {
            p0: l.hom().p,
            p1: [T::zero(), T::zero(), l.c.clone() - l.f.clone(), T::zero()],
            d0: l.hom().d,
            d1: [T::zero(), T::zero(), -l.e.clone(), T::zero()],
        };
        current[i] = motions[i].end();
        lines_now[slot[i]] = Chartline {
            b: l.b,
            f: l.c.clone(),
            c: l.c,
            e: T::zero(),
        };
        stages.push(Stage {
            kind: StageKind::Rotate { line: i },
            motions,
        });
    }
    for &i in &order {
        let l = lines_now[slot[i]].clone();
        let mut motions: Vec<Motion<T>> = current.iter().map(Motion::stationary).collect();
        motions[i] = Motion {
            p0: l.hom().p,
            p1: [T::zero(), -l.b.clone(), T::zero(), T::zero()],
            d0: l.hom().d,
            d1: std::array::from_fn(|_| T::zero()),
        };
        current[i] = motions[i].end();
        lines_now[slot[i]] = Chartline { b: T::zero(), ..l };
        stages.push(Stage {
            kind: StageKind::Translate { line: i },
            motions,
        });
    }

    Ok(IsotopyScript {
        input: lines.to_vec(),
        chart,
        slopes,
        stages,
    })
}

/// Orientation-preserving check used by tests: `det(chart) > 0`.
#[cfg(test)]
pub(crate) fn chart_is_positive<T: Field>(chart: &Mat4<T>) -> bool {
    super::geometry::det4_generic(chart).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::{standard_hyperboloid_config, verify_script};
    use num_rational::BigRational;

    type Q = BigRational;

    fn lines(text: &str) -> Vec<ProjLine<Q>> {
        crate::lines::parse_lines(text).unwrap()
    }

    #[test]
    fn standard_input_gives_identity_stages() {
        let config = standard_hyperboloid_config::<Q>(3, false).unwrap();
        let script = standardize(&config).unwrap();
        assert_eq!(script.stages.len(), 6);
        assert!(script
            .stages
            .iter()
            .all(|s| s.motions.iter().all(Motion::is_stationary)));
        assert!(script.satisfies_final_equations());
        assert_eq!(script.chart, identity());
    }

    #[test]
    fn two_generic_lines() {
        let config = lines("P 0 1 5 D 1 3 1\nP 0 -2 0 D 2 1 -1\n");
        assert!(is_hopf_config(&config).unwrap());
        let script = standardize(&config).unwrap();
        assert!(script.satisfies_final_equations());
        let moving = script
            .stages
            .iter()
            .filter(|s| !matches!(s.kind, StageKind::Shift))
            .count();
        assert_eq!(moving, 4);
        verify_script(&script).unwrap();
    }

    #[test]
    fn line_at_infinity_is_pinned() {
        let config = lines("INF 1 0 0\nP 0 0 1 D 1 1 0\nP 0 0 2 D 1 2 0\n");
        let script = standardize(&config).unwrap();
        assert_eq!(script.slopes[0], None);
        assert!(script.satisfies_final_equations());
        verify_script(&script).unwrap();
    }

    #[test]
    fn tied_slopes_are_rotated_apart() {
        // same projected slope, different vertical slopes
        let config = lines("P 0 0 0 D 1 1 1\nP 0 1 0 D 1 1 -1\n");
        assert!(is_hopf_config(&config).unwrap());
        let script = standardize(&config).unwrap();
        assert_ne!(script.chart, identity());
        assert!(chart_is_positive(&script.chart));
        assert!(script.satisfies_final_equations());
        verify_script(&script).unwrap();
    }

    #[test]
    fn negative_pairs_are_refused() {
        let config = lines("P 0 0 1 D 1 1 0\nP 0 0 2 D -1 -2 0\n");
        assert_eq!(standardize(&config), Err(LineError::NotHopf(0, 1)));
    }
}
