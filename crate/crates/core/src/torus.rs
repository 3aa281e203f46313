//! Projective torus links `T_proj(p, q)`, the quotients of `T(p, q)` by the antipodal map.
//!
//! As an algebraic curve on the hyperboloid the link has bidegree
//! `(a, b) = ((p + q) / 2, (p - q) / 2)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("p = {p} and q = {q} must have the same parity")]
    ParityViolation { p: i64, q: i64 },
    #[error("parameters must not both be zero")]
    Zero,
    #[error("{0}")]
    RangeViolation(String),
}

/// Parameters `(p, q)` with `p ≡ q (mod 2)`, not both zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct TorusParams {
    p: i64,
    q: i64,
}

impl TorusParams {
    pub fn new(p: i64, q: i64) -> Result<Self, TorusError> {
        if p == 0 && q == 0 {
            return Err(TorusError::Zero);
        }
        if (p - q).rem_euclid(2) != 0 {
            return Err(TorusError::ParityViolation { p, q });
        }
        Ok(TorusParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl TryFrom<(i64, i64)> for TorusParams {
    type Error = TorusError;
    fn try_from((p, q): (i64, i64)) -> Result<Self, TorusError> {
        TorusParams::new(p, q)
    }
}

impl From<TorusParams> for (i64, i64) {
    fn from(t: TorusParams) -> Self {
        (t.p, t.q)
    }
}

/// Bidegree `(a, b)` on the hyperboloid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub a: i64,
    pub b: i64,
}

pub fn bidegree_of(t: TorusParams) -> Bidegree {
    Bidegree {
        a: (t.p + t.q) / 2,
        b: (t.p - t.q) / 2,
    }
}

pub fn params_of(b: Bidegree) -> Result<TorusParams, TorusError> {
    TorusParams::new(b.a + b.b, b.a - b.b)
}

/// Representative of `{(p,q), (q,p), (-p,-q), (-q,-p)}` with `p >= q >= 0` if one
/// exists, otherwise the one with `p >= |q|` and `q < 0`. Never mirrors.
pub fn canonicalize(t: TorusParams) -> TorusParams {
    let (p, q) = (t.p, t.q);
    let orbit = [(p, q), (q, p), (-p, -q), (-q, -p)];
    let pick = orbit
        .iter()
        .find(|&&(x, y)| x >= y && y >= 0)
        .or_else(|| orbit.iter().find(|&&(x, y)| y < 0 && x >= y.abs()))
        .copied()
        .unwrap_or((p, q));
    TorusParams {
        p: pick.0,
        q: pick.1,
    }
}

/// The braid on `p` strands whose projective closure is `T_proj(p, q)`: the first
/// half of `(alpha beta)^q` with `alpha = s1 s3 s5 ...`, `beta = s2 s4 ...`.
///
/// Negative `q` gives the mirror image.
pub fn torus_braid(p: usize, q: i64) -> Result<BraidWord, TorusError> {
    if p == 0 {
        return Err(TorusError::RangeViolation(
            "torus_braid needs at least one strand".into(),
        ));
    }
    if (p as i64 - q).rem_euclid(2) != 0 {
        return Err(TorusError::ParityViolation { p: p as i64, q });
    }
    let alpha: Vec<i32> = (1..p as i32).step_by(2).collect();
    let beta: Vec<i32> = (2..p as i32).step_by(2).collect();
    let rows = q.unsigned_abs() as usize;
    let mut letters = Vec::with_capacity(rows * (p - 1) / 2);
    for _ in 0..rows / 2 {
        letters.extend_from_slice(&alpha);
        letters.extend_from_slice(&beta);
    }
    if rows % 2 == 1 {
        letters.extend_from_slice(&alpha);
    }
    if q < 0 {
        letters.iter_mut().for_each(|k| *k = -*k);
    }
    Ok(BraidWord::new(p, letters).expect("letters lie below p"))
}

/// Crossing number `p(q - 1)/2`, for `1 <= q <= p`.
pub fn crossing_number(t: TorusParams) -> Result<i64, TorusError> {
    if !(1 <= t.q && t.q <= t.p) {
        return Err(TorusError::RangeViolation(format!(
            "crossing number formula needs 1 <= q <= p, got ({}, {})",
            t.p, t.q
        )));
    }
    Ok(t.p * (t.q - 1) / 2)
}

/// Plane section number `min(|p|, |q|)`.
pub fn arc_count(t: TorusParams) -> i64 {
    t.p.abs().min(t.q.abs())
}

/// Number of components, `gcd(a, b)`.
pub fn component_count(t: TorusParams) -> i64 {
    let Bidegree { a, b } = bidegree_of(t);
    a.gcd(&b)
}

/// Homology classes and doubled linking numbers with the core circles `u`, `v`
/// of the two solid tori bounded by the hyperboloid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyData {
    pub class_alpha: i64,
    pub class_beta: i64,
    pub dlk_u: i64,
    pub dlk_v: i64,
    pub class_in_u: i64,
    pub class_in_v: i64,
    pub basis: BasisPairings,
}

/// Doubled linking numbers of the hyperboloid basis `alpha, beta` with `u, v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisPairings {
    pub alpha_u: i64,
    pub beta_u: i64,
    pub alpha_v: i64,
    pub beta_v: i64,
}

pub const BASIS: BasisPairings = BasisPairings {
    alpha_u: 1,
    beta_u: 1,
    alpha_v: 1,
    beta_v: -1,
};

pub fn homology_data(t: TorusParams) -> HomologyData {
    let Bidegree { a, b } = bidegree_of(t);
    HomologyData {
        class_alpha: a,
        class_beta: b,
        dlk_u: a * BASIS.alpha_u + b * BASIS.beta_u,
        dlk_v: a * BASIS.alpha_v + b * BASIS.beta_v,
        class_in_u: t.q,
        class_in_v: t.p,
        basis: BASIS,
    }
}

/// CLI-facing summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusSummary {
    pub p: i64,
    pub q: i64,
    pub a: i64,
    pub b: i64,
    pub components: i64,
    pub cr: Option<i64>,
    pub ps: i64,
    pub dlk_u: i64,
    pub dlk_v: i64,
}

pub fn summarize(t: TorusParams) -> TorusSummary {
    let Bidegree { a, b } = bidegree_of(t);
    let h = homology_data(t);
    TorusSummary {
        p: t.p,
        q: t.q,
        a,
        b,
        components: component_count(t),
        cr: crossing_number(t).ok(),
        ps: arc_count(t),
        dlk_u: h.dlk_u,
        dlk_v: h.dlk_v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(p: i64, q: i64) -> TorusParams {
        TorusParams::new(p, q).unwrap()
    }

    #[test]
    fn bidegree_round_trip() {
        assert_eq!(bidegree_of(tp(4, 2)), Bidegree { a: 3, b: 1 });
        assert_eq!(params_of(Bidegree { a: 1, b: 1 }).unwrap(), tp(2, 0));
        assert_eq!(bidegree_of(tp(5, 3)), Bidegree { a: 4, b: 1 });
        assert!(matches!(
            TorusParams::new(3, 2),
            Err(TorusError::ParityViolation { .. })
        ));
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(canonicalize(tp(-4, -2)), tp(4, 2));
        assert_eq!(canonicalize(tp(2, 4)), tp(4, 2));
        assert_eq!(canonicalize(tp(3, 3)), tp(3, 3));
        assert_eq!(canonicalize(tp(-2, 4)), tp(4, -2));
    }

    #[test]
    fn braid_words() {
        assert_eq!(torus_braid(2, 4).unwrap().letters(), &[1, 1]);
        assert_eq!(torus_braid(3, 5).unwrap().letters(), &[1, 2, 1, 2, 1]);
        let w = torus_braid(5, 7).unwrap();
        assert_eq!(w.letters()[..4], [1, 3, 2, 4]);
        assert_eq!(w.len(), 14);
        assert!(torus_braid(3, 2).is_err());
        assert!(torus_braid(4, 0).unwrap().is_empty());
        assert_eq!(torus_braid(3, -1).unwrap().letters(), &[-1]);
    }

    #[test]
    fn closed_formulas() {
        assert_eq!(crossing_number(tp(5, 3)).unwrap(), 5);
        assert_eq!(crossing_number(tp(4, 2)).unwrap(), 2);
        assert_eq!(crossing_number(tp(7, 1)).unwrap(), 0);
        assert!(crossing_number(tp(3, 5)).is_err());
        assert_eq!(arc_count(tp(5, 3)), 3);
        assert_eq!(arc_count(tp(-4, 2)), 2);
        assert_eq!(component_count(tp(4, 2)), 1);
        assert_eq!(component_count(tp(2, 2)), 2);
        assert_eq!(component_count(tp(6, 2)), 2);
    }

    #[test]
    fn homology_records() {
        let h = homology_data(tp(2, 0));
        assert_eq!(
            (h.class_alpha, h.class_beta, h.dlk_u, h.dlk_v),
            (1, 1, 2, 0)
        );
        let h = homology_data(tp(7, 5));
        assert_eq!((h.class_in_u, h.class_in_v), (5, 7));
        assert_eq!(h.dlk_u, 7);
        assert_eq!(h.dlk_v, 5);
    }
}
