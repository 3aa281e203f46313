//! Exact certification that no two lines meet while a script runs.
//!
//! Two lines `(P1, D1)` and `(P2, D2)` meet iff `det[P1, D1, P2, D2] = 0`. Along
//! a stage every entry is linear in `t`, so the determinant is a polynomial in
//! `t`. It is nonzero at both ends and has no root in between by Sturm's theorem.

use num_traits::Zero;
use serde::Serialize;

use super::geometry::det4_generic;
use super::script::{IsotopyScript, Motion};
use super::{dlk_hom, Field, LineError, Poly};

/// Disjointness evidence for one pair of lines during one stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct PairCertificate<T: Field> {
    pub stage: usize,
    pub pair: (usize, usize),
    /// `det[P_i(t), D_i(t), P_j(t), D_j(t)]`, constant term first.
    pub determinant: Poly<T>,
    /// Sturm count of roots in `(0, 1)`.
    pub roots: usize,
    /// Doubled linking number, constant along the stage.
    pub dlk: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct Certificate<T: Field> {
    pub entries: Vec<PairCertificate<T>>,
}

impl<T: Field> Certificate<T> {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_roots(&self) -> usize {
        self.entries.iter().map(|e| e.roots).sum()
    }
}

fn linear_entries<T: Field>(a: &[T; 4], b: &[T; 4]) -> [Poly<T>; 4] {
    std::array::from_fn(|k| Poly::linear(a[k].clone(), b[k].clone()))
}

/// The pair determinant as a polynomial in `t`.
pub(crate) fn pair_polynomial<T: Field>(mi: &Motion<T>, mj: &Motion<T>) -> Poly<T> {
    let cols = [
        linear_entries(&mi.p0, &mi.p1),
        linear_entries(&mi.d0, &mi.d1),
        linear_entries(&mj.p0, &mj.p1),
        linear_entries(&mj.d0, &mj.d1),
    ];
    let m: [[Poly<T>; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()));
    det4_generic(&m)
}

fn collision<T: Field>(stage: usize, pair: (usize, usize), lo: T, hi: T) -> LineError {
    LineError::CollisionFound {
        stage,
        pair,
        witness: (lo.to_string(), hi.to_string()),
    }
}

/// Certifies every stage of `script`, or reports the first collision found.
pub fn verify_script<T: Field>(script: &IsotopyScript<T>) -> Result<Certificate<T>, LineError> {
    let (zero, one) = (T::zero(), T::one());
    let half = one.clone() / (one.clone() + one.clone());
    let mut previous = script.initial();
    let n = previous.len();
    let mut entries = Vec::new();
    for (s, stage) in script.stages.iter().enumerate() {
        if stage.motions.len() != n {
            return Err(LineError::LineCountMismatch {
                stage: s,
                expected: n,
                found: stage.motions.len(),
            });
        }
        for (i, m) in stage.motions.iter().enumerate() {
            if !m.start().same_line(&previous[i]) {
                return Err(LineError::Discontinuity { stage: s, line: i });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let (mi, mj) = (&stage.motions[i], &stage.motions[j]);
                let det = pair_polynomial(mi, mj);
                if det.is_zero() {
                    return Err(collision(s, (i, j), zero.clone(), one.clone()));
                }
                for end in [&zero, &one] {
                    if det.eval(end).is_zero() {
                        return Err(collision(s, (i, j), end.clone(), end.clone()));
                    }
                }
                let roots = det.count_roots(&zero, &one);
                if roots > 0 {
                    let (lo, hi) = det.isolate_root(&zero, &one, 16);
                    return Err(collision(s, (i, j), lo, hi));
                }
                let signs: Vec<Option<i8>> = [&zero, &half, &one]
                    .iter()
                    .map(|t| dlk_hom(&mi.at(t), &mj.at(t)))
                    .collect();
                if signs.iter().any(|x| *x != signs[0]) {
                    return Err(LineError::LinkingChanged {
                        stage: s,
                        pair: (i, j),
                    });
                }
                let dlk = signs[0].expect("determinant is nonzero at t = 0");
                entries.push(PairCertificate {
                    stage: s,
                    pair: (i, j),
                    determinant: det,
                    roots,
                    dlk,
                });
            }
        }
        previous = stage.motions.iter().map(Motion::end).collect();
    }
    Ok(Certificate { entries })
}
