//! Oriented lines in `RP^3` with exact coordinates.
//!
//! A line is an oriented 2-plane in `R^4` spanned by a point `P` and a direction
//! `D` in homogeneous coordinates `(x, y, z, w)`. The doubled linking number of
//! two disjoint lines is the sign of `det[P1, D1, P2, D2]`; in an affine chart
//! this is `det(d1, d2, p2 - p1)`, positive on the family `{z = c, y = c x}`.
//!
//! [`standardize`] moves a configuration of pairwise positively linked lines onto
//! that family through piecewise linear motions, and [`verify_script`] certifies
//! with Sturm sequences that no two lines meet during any motion.

mod geometry;
mod poly;
mod random;
mod script;
mod verify;

use std::fmt;
use std::str::FromStr;

use num_traits::{FromPrimitive, Num, Signed};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use geometry::{det4_generic, inverse, mat_mul, mat_vec, Mat4, Vec4};
pub use poly::Poly;
pub use random::{random_chart, random_hopf_config};
pub use script::{standardize, IsotopyScript, Motion, Stage, StageKind};
pub use verify::{verify_script, Certificate, PairCertificate};

/// Ordered field scalar: exact rationals in practice.
pub trait Field:
    Clone + PartialOrd + Num + Signed + FromPrimitive + fmt::Debug + fmt::Display + FromStr
{
}

impl<T> Field for T where
    T: Clone + PartialOrd + Num + Signed + FromPrimitive + fmt::Debug + fmt::Display + FromStr
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("lines {0} and {1} intersect")]
    LinesIntersect(usize, usize),
    #[error("lines {0} and {1} are linked negatively")]
    NotHopf(usize, usize),
    #[error("at least {0} lines are required")]
    TooFewLines(usize),
    #[error("direction vector is zero")]
    ZeroDirection,
    #[error("no generic chart found: {0}")]
    DegenerateChart(String),
    #[error("lines {} and {} collide in stage {stage} for t in [{}, {}]", pair.0, pair.1, witness.0, witness.1)]
    CollisionFound {
        stage: usize,
        pair: (usize, usize),
        witness: (String, String),
    },
    #[error("stage {stage} does not start where the previous one ended (line {line})")]
    Discontinuity { stage: usize, line: usize },
    #[error("stage {stage} has {found} lines, expected {expected}")]
    LineCountMismatch {
        stage: usize,
        expected: usize,
        found: usize,
    },
    #[error("linking number of lines {} and {} changes in stage {stage}", pair.0, pair.1)]
    LinkingChanged { stage: usize, pair: (usize, usize) },
    #[error("line {line_no}: {message}")]
    Parse { line_no: usize, message: String },
}

/// An oriented line, either affine or contained in the plane at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjLine<T> {
    /// Through `point`, oriented along `direction`.
    Affine { point: [T; 3], direction: [T; 3] },
    /// The line at infinity of the planes with the given normal, oriented as
    /// the span of `(normal x u, u)` for any `u` orthogonal to the normal.
    AtInfinity { normal: [T; 3] },
}

impl<T: Field> ProjLine<T> {
    pub fn affine(point: [T; 3], direction: [T; 3]) -> Result<Self, LineError> {
        if direction.iter().all(|c| c.is_zero()) {
            return Err(LineError::ZeroDirection);
        }
        Ok(ProjLine::Affine { point, direction })
    }

    pub fn at_infinity(normal: [T; 3]) -> Result<Self, LineError> {
        if normal.iter().all(|c| c.is_zero()) {
            return Err(LineError::ZeroDirection);
        }
        Ok(ProjLine::AtInfinity { normal })
    }

    /// The horizontal line `{z = c, y = c x}` oriented by increasing `x`.
    pub fn standard(c: T) -> Self {
        ProjLine::Affine {
            point: [T::zero(), T::zero(), c.clone()],
            direction: [T::one(), c, T::zero()],
        }
    }

    pub fn is_at_infinity(&self) -> bool {
        matches!(self, ProjLine::AtInfinity { .. })
    }

    pub fn reversed(&self) -> Self {
        match self {
            ProjLine::Affine { point, direction } => ProjLine::Affine {
                point: point.clone(),
                direction: direction.clone().map(|c| -c),
            },
            ProjLine::AtInfinity { normal } => ProjLine::AtInfinity {
                normal: normal.clone().map(|c| -c),
            },
        }
    }

    pub fn homogeneous(&self) -> HomLine<T> {
        match self {
            ProjLine::Affine { point, direction } => {
                let [x, y, z] = point.clone();
                let [dx, dy, dz] = direction.clone();
                HomLine {
                    p: [x, y, z, T::one()],
                    d: [dx, dy, dz, T::zero()],
                }
            }
            ProjLine::AtInfinity { normal } => {
                let [a, b, c] = normal.clone();
                let u = if a.is_zero() && b.is_zero() {
                    [T::zero(), c, T::zero()]
                } else {
                    [-b, a, T::zero()]
                };
                let v = geometry::cross(normal, &u);
                let [vx, vy, vz] = v;
                let [ux, uy, uz] = u;
                HomLine {
                    p: [vx, vy, vz, T::zero()],
                    d: [ux, uy, uz, T::zero()],
                }
            }
        }
    }
}

impl<T: Field> fmt::Display for ProjLine<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjLine::Affine { point, direction } => write!(
                f,
                "P {} {} {} D {} {} {}",
                point[0], point[1], point[2], direction[0], direction[1], direction[2]
            ),
            ProjLine::AtInfinity { normal } => {
                write!(f, "INF {} {} {}", normal[0], normal[1], normal[2])
            }
        }
    }
}

impl<T: Field> Serialize for ProjLine<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_triple<T: Field>(tokens: &[&str]) -> Result<[T; 3], String> {
    if tokens.len() != 3 {
        return Err(format!("expected 3 coordinates, found {}", tokens.len()));
    }
    let mut out = Vec::with_capacity(3);
    for t in tokens {
        out.push(t.parse::<T>().map_err(|_| format!("bad number {t:?}"))?);
    }
    out.try_into().map_err(|_| "internal".to_string())
}

impl<T: Field> FromStr for ProjLine<T> {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        match tokens.first() {
            Some(&"P") if tokens.len() == 8 && tokens[4] == "D" => {
                let point = parse_triple(&tokens[1..4])?;
                let direction = parse_triple(&tokens[5..8])?;
                ProjLine::affine(point, direction).map_err(|e| e.to_string())
            }
            Some(&"INF") => {
                ProjLine::at_infinity(parse_triple(&tokens[1..])?).map_err(|e| e.to_string())
            }
            _ => Err("expected `P x y z D dx dy dz` or `INF a b c`".to_string()),
        }
    }
}

/// Parses one line per row; blank rows and `#` comments are skipped.
pub fn parse_lines<T: Field>(text: &str) -> Result<Vec<ProjLine<T>>, LineError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let row = raw.split('#').next().unwrap_or("").trim();
        if row.is_empty() {
            continue;
        }
        out.push(row.parse().map_err(|message| LineError::Parse {
            line_no: i + 1,
            message,
        })?);
    }
    Ok(out)
}

pub fn format_lines<T: Field>(lines: &[ProjLine<T>]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

/// Homogeneous representative `(P, D)` of an oriented line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLine<T> {
    pub p: Vec4<T>,
    pub d: Vec4<T>,
}

impl<T: Field> HomLine<T> {
    pub fn transformed(&self, m: &Mat4<T>) -> Self {
        HomLine {
            p: mat_vec(m, &self.p),
            d: mat_vec(m, &self.d),
        }
    }

    pub fn plucker(&self) -> [T; 6] {
        geometry::plucker(&self.p, &self.d)
    }

    pub fn same_line(&self, other: &HomLine<T>) -> bool {
        geometry::same_orientation(&self.plucker(), &other.plucker())
    }

    /// Back to the chart form. Changes of basis keep the orientation.
    pub fn to_proj(&self) -> ProjLine<T> {
        let (p, d) = (&self.p, &self.d);
        if p[3].is_zero() && d[3].is_zero() {
            let p3 = [p[0].clone(), p[1].clone(), p[2].clone()];
            let d3 = [d[0].clone(), d[1].clone(), d[2].clone()];
            return ProjLine::AtInfinity {
                normal: geometry::cross(&d3, &p3),
            };
        }
        // (P, D) -> (D, -P) is a rotation of the basis
        let (p, d) = if p[3].is_zero() {
            (d.clone(), p.clone().map(|c| -c))
        } else {
            (p.clone(), d.clone())
        };
        let pw = p[3].clone();
        let dw = d[3].clone();
        let point = std::array::from_fn(|k| p[k].clone() / pw.clone());
        let direction =
            std::array::from_fn(|k| pw.clone() * d[k].clone() - dw.clone() * p[k].clone());
        ProjLine::Affine { point, direction }
    }
}

fn orientation_det<T: Field>(a: &HomLine<T>, b: &HomLine<T>) -> T {
    geometry::det_columns([&a.p, &a.d, &b.p, &b.d])
}

/// Doubled linking number (`+1` or `-1`) of two disjoint oriented lines.
pub fn dlk_lines<T: Field>(l1: &ProjLine<T>, l2: &ProjLine<T>) -> Result<i8, LineError> {
    dlk_hom(&l1.homogeneous(), &l2.homogeneous()).ok_or(LineError::LinesIntersect(0, 1))
}

pub(crate) fn dlk_hom<T: Field>(a: &HomLine<T>, b: &HomLine<T>) -> Option<i8> {
    let det = orientation_det(a, b);
    if det.is_zero() {
        None
    } else if det.is_positive() {
        Some(1)
    } else {
        Some(-1)
    }
}

/// All pairwise doubled linking numbers equal `+1`.
pub fn is_hopf_config<T: Field>(lines: &[ProjLine<T>]) -> Result<bool, LineError> {
    if lines.len() < 2 {
        return Err(LineError::TooFewLines(2));
    }
    let hom: Vec<HomLine<T>> = lines.iter().map(ProjLine::homogeneous).collect();
    let mut all_positive = true;
    for i in 0..hom.len() {
        for j in i + 1..hom.len() {
            match dlk_hom(&hom[i], &hom[j]) {
                None => return Err(LineError::LinesIntersect(i, j)),
                Some(s) => all_positive &= s == 1,
            }
        }
    }
    Ok(all_positive)
}

/// Lines `{z = i, y = i x}` for `i = 1..=n`, optionally followed by the line at
/// infinity of the planes `x = const`.
pub fn standard_hyperboloid_config<T: Field>(
    n: usize,
    with_infinity: bool,
) -> Result<Vec<ProjLine<T>>, LineError> {
    if n == 0 {
        return Err(LineError::TooFewLines(1));
    }
    let mut out: Vec<ProjLine<T>> = (1..=n)
        .map(|i| ProjLine::standard(T::from_usize(i).expect("small integer")))
        .collect();
    if with_infinity {
        out.push(ProjLine::AtInfinity {
            normal: [T::one(), T::zero(), T::zero()],
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn standard_pair_links_positively() {
        let a = ProjLine::standard(q(1));
        let b = ProjLine::standard(q(2));
        assert_eq!(dlk_lines(&a, &b).unwrap(), 1);
        assert_eq!(dlk_lines(&b, &a).unwrap(), 1);
        assert_eq!(dlk_lines(&a, &b.reversed()).unwrap(), -1);
    }

    #[test]
    fn line_at_infinity_links_positively_with_the_family() {
        let config = standard_hyperboloid_config::<Q>(3, true).unwrap();
        assert!(is_hopf_config(&config).unwrap());
        let hom = config[3].homogeneous();
        assert_eq!(hom.p, [q(0), q(0), q(1), q(0)]);
        assert_eq!(hom.d, [q(0), q(1), q(0), q(0)]);
    }

    #[test]
    fn hopf_fibers() {
        // complex lines through (1, 0), (0, 1) and (1, 1) in C^2 = R^4, each
        // oriented by (v, iv)
        let e = |v: [i64; 4]| v.map(q);
        let fibers = [
            HomLine {
                p: e([1, 0, 0, 0]),
                d: e([0, 1, 0, 0]),
            },
            HomLine {
                p: e([0, 0, 1, 0]),
                d: e([0, 0, 0, 1]),
            },
            HomLine {
                p: e([1, 0, 1, 0]),
                d: e([0, 1, 0, 1]),
            },
        ];
        let lines: Vec<ProjLine<Q>> = fibers.iter().map(HomLine::to_proj).collect();
        assert!(is_hopf_config(&lines).unwrap());
    }

    #[test]
    fn intersecting_lines_are_reported() {
        let a: ProjLine<Q> = "P 0 0 0 D 1 0 0".parse().unwrap();
        let b: ProjLine<Q> = "P 0 0 0 D 0 1 0".parse().unwrap();
        assert_eq!(dlk_lines(&a, &b), Err(LineError::LinesIntersect(0, 1)));
        // parallel lines meet at infinity
        let c: ProjLine<Q> = "P 0 0 1 D 1 0 0".parse().unwrap();
        assert!(dlk_lines(&a, &c).is_err());
    }

    #[test]
    fn parsing_round_trip() {
        let text = "# comment\nP 1/2 0 3 D 1 -2/3 0\n\nINF 1 0 0\n";
        let lines: Vec<ProjLine<Q>> = parse_lines(text).unwrap();
        assert_eq!(lines.len(), 2);
        assert_eq!(parse_lines::<Q>(&format_lines(&lines)).unwrap(), lines);
        assert!(matches!(
            parse_lines::<Q>("P 1 2 D 1 1 1"),
            Err(LineError::Parse { line_no: 1, .. })
        ));
        assert!(parse_lines::<Q>("P 0 0 0 D 0 0 0").is_err());
    }

    #[test]
    fn homogeneous_round_trip() {
        let lines: Vec<ProjLine<Q>> =
            parse_lines("P 1 2 3 D 4 5 6\nINF 0 0 2\nINF 1 -1 3").unwrap();
        for l in &lines {
            let back = l.homogeneous().to_proj();
            assert!(back.homogeneous().same_line(&l.homogeneous()));
        }
    }

    #[test]
    fn standard_config_sizes() {
        assert_eq!(standard_hyperboloid_config::<Q>(1, false).unwrap().len(), 1);
        assert!(standard_hyperboloid_config::<Q>(0, false).is_err());
        let three = standard_hyperboloid_config::<Q>(3, false).unwrap();
        assert!(is_hopf_config(&three).unwrap());
    }
}
