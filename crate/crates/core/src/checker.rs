//! Certificates that a projective braid closure is `T_proj(d, d-2)`.
//!
//! Two braid shapes are recognized:
//!
//! * a permutation braid `X` on `d` strands with `e(X) = (d-1)(d-2)/2` whose projective
//!   closure is a knot;
//! * a positive braid `X = Delta A` on `d - 2` strands with `e(X) = (d-1)(d-2)/2 - 1`
//!   whose projective closure is a knot.
//!
//! In both cases some positive word is a product of distinct generators and a
//! positive conjugator `u` moving it to `sigma_1 ... sigma_m` is emitted. The
//! equality `u y = (sigma_1 ... sigma_m) u` is re-checked through normal forms.

use serde::Serialize;
use thiserror::Error;

use crate::braid::{
    canonical_form, delta, generator_conjugator, is_permutation_braid, left_complement_in_delta,
    left_divisible_by_delta, permutation_braid_of, positive_witness, BraidError, BraidWord,
    PermutationBraid,
};
use crate::closure::{describe_closure, invariant_signature, InvariantSignature};
use crate::mw::max_crossings;
use crate::torus::torus_braid;

/// Hypotheses checked before a certificate is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Strands,
    PermutationBraid,
    Positive,
    ExponentSum,
    Knot,
    DeltaDivides,
    DistinctGenerators,
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Hypothesis::Strands => "strand count",
            Hypothesis::PermutationBraid => "permutation braid",
            Hypothesis::Positive => "positivity",
            Hypothesis::ExponentSum => "exponent sum",
            Hypothesis::Knot => "knot closure",
            Hypothesis::DeltaDivides => "left divisibility by the half twist",
            Hypothesis::DistinctGenerators => "distinct generators",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("hypothesis failed: {which} ({detail})")]
    HypothesisFailed { which: Hypothesis, detail: String },
    #[error("certificate failed to verify: {0}")]
    CertificateFailed(String),
    #[error("degree {0} is too small")]
    DegreeTooSmall(usize),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

fn fail(which: Hypothesis, detail: impl Into<String>) -> CheckError {
    CheckError::HypothesisFailed {
        which,
        detail: detail.into(),
    }
}

/// A machine-checkable certificate: `u * x_prime = target * u` in the braid group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub degree: usize,
    pub input: BraidWord,
    pub hypotheses: Vec<Hypothesis>,
    /// The product of distinct generators that is conjugated.
    pub x_prime: BraidWord,
    pub u: BraidWord,
    pub target: BraidWord,
    pub verified: bool,
}

impl Certificate {
    /// Re-checks the conjugation from scratch.
    pub fn recheck(&self) -> Result<bool, BraidError> {
        let lhs = canonical_form(&self.u.concat(&self.x_prime))?;
        let rhs = canonical_form(&self.target.concat(&self.u))?;
        Ok(lhs == rhs)
    }
}

fn ordered_product(strands: usize, m: usize) -> BraidWord {
    BraidWord::new(strands, (1..=m as i32).collect()).expect("m is below the strand count")
}

fn distinct_generators(word: &BraidWord, m: usize) -> Result<Vec<usize>, CheckError> {
    let letters = word
        .positive_letters()
        .ok_or_else(|| fail(Hypothesis::Positive, "word has negative letters"))?;
    let mut seen = vec![false; m + 1];
    let ok = letters.len() == m
        && letters.iter().all(|&g| {
            let fresh = g <= m && !seen[g];
            if fresh {
                seen[g] = true;
            }
            fresh
        });
    if !ok {
        return Err(fail(
            Hypothesis::DistinctGenerators,
            format!("{letters:?} is not an ordering of 1..={m}"),
        ));
    }
    Ok(letters)
}

fn certify(
    degree: usize,
    input: &BraidWord,
    hypotheses: Vec<Hypothesis>,
    x_prime: BraidWord,
    m: usize,
) -> Result<Certificate, CheckError> {
    let ys = distinct_generators(&x_prime, m)?;
    let strands = x_prime.strands();
    let u = generator_conjugator(&ys, strands)?;
    let mut cert = Certificate {
        degree,
        input: input.clone(),
        hypotheses,
        x_prime,
        u,
        target: ordered_product(strands, m),
        verified: false,
    };
    cert.verified = cert.recheck()?;
    if !cert.verified {
        return Err(CheckError::CertificateFailed(format!(
            "u = {} does not conjugate {} to {}",
            cert.u, cert.x_prime, cert.target
        )));
    }
    Ok(cert)
}

fn knot_check(x: &BraidWord) -> Result<(), CheckError> {
    let closure = describe_closure(x);
    if !closure.is_knot() {
        return Err(fail(
            Hypothesis::Knot,
            format!("closure has {} components", closure.component_count()),
        ));
    }
    Ok(())
}

/// Certifies a permutation braid on `d` strands with `e = max_crossings(d)` and a knotted
/// projective closure by conjugating `Delta X^{-1}` to `sigma_1 ... sigma_{d-1}`.
pub fn check_a(x: &BraidWord, d: usize) -> Result<Certificate, CheckError> {
    if d < 2 {
        return Err(CheckError::DegreeTooSmall(d));
    }
    if x.strands() != d {
        return Err(fail(
            Hypothesis::Strands,
            format!("{} strands, expected {d}", x.strands()),
        ));
    }
    if !is_permutation_braid(x) {
        return Err(fail(Hypothesis::PermutationBraid, x.to_string()));
    }
    let e = x.exponent_sum();
    if e != max_crossings(d) as i64 {
        return Err(fail(
            Hypothesis::ExponentSum,
            format!("e = {e}, expected {}", max_crossings(d)),
        ));
    }
    knot_check(x)?;
    let left = left_complement_in_delta(&PermutationBraid::new(x.permutation()));
    let x_prime = permutation_braid_of(left.permutation());
    let whole = canonical_form(&x_prime.concat(x))?;
    if whole != canonical_form(&delta(d)?)? {
        return Err(CheckError::CertificateFailed(
            "complement times X is not the half twist".into(),
        ));
    }
    let hypotheses = vec![
        Hypothesis::Strands,
        Hypothesis::PermutationBraid,
        Hypothesis::ExponentSum,
        Hypothesis::Knot,
        Hypothesis::DistinctGenerators,
    ];
    certify(d, x, hypotheses, x_prime, d - 1)
}

/// Certifies a positive braid `X = Delta A` on `d - 2` strands with `e = max_crossings(d) - 1`
/// and a knotted projective closure by conjugating `A` to `sigma_1 ... sigma_{d-3}`.
pub fn check_b(x: &BraidWord, d: usize) -> Result<Certificate, CheckError> {
    if d < 3 {
        return Err(CheckError::DegreeTooSmall(d));
    }
    let n = d - 2;
    if x.strands() != n {
        return Err(fail(
            Hypothesis::Strands,
            format!("{} strands, expected {n}", x.strands()),
        ));
    }
    let e = x.exponent_sum();
    if e != max_crossings(d) as i64 - 1 {
        return Err(fail(
            Hypothesis::ExponentSum,
            format!("e = {e}, expected {}", max_crossings(d) - 1),
        ));
    }
    let quotient = match left_divisible_by_delta(x) {
        Ok(Some(a)) => a,
        Ok(None) => return Err(fail(Hypothesis::DeltaDivides, x.to_string())),
        Err(BraidError::NotPositive) => return Err(fail(Hypothesis::Positive, x.to_string())),
        Err(other) => return Err(other.into()),
    };
    knot_check(x)?;
    if quotient.len() != d - 3 {
        return Err(CheckError::CertificateFailed(format!(
            "quotient has {} letters, expected {}",
            quotient.len(),
            d - 3
        )));
    }
    let hypotheses = vec![
        Hypothesis::Strands,
        Hypothesis::Positive,
        Hypothesis::ExponentSum,
        Hypothesis::DeltaDivides,
        Hypothesis::Knot,
        Hypothesis::DistinctGenerators,
    ];
    certify(d, x, hypotheses, quotient, d - 3)
}

/// The signature of `T_proj(d, d - 2)` computed from its braid on `d - 2` strands.
pub fn reference_signature(d: usize) -> InvariantSignature {
    invariant_signature(&torus_braid(d - 2, d as i64).expect("d and d - 2 share parity"))
}

/// Outcome of the non-permutation-braid example on `d` strands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonPermutationExample {
    pub degree: usize,
    pub word: BraidWord,
    pub positive_witness: BraidWord,
    pub is_permutation_braid: bool,
    pub signature: InvariantSignature,
    pub signature_matches: bool,
}

/// `sigma_{d-2}^{-1} Delta_{d-1} sigma_2` on `d` strands: positive with `e = max_crossings(d)`,
/// not a permutation braid, closing to the same invariants as `T_proj(d, d-2)`.
pub fn non_permutation_example(d: usize) -> Result<NonPermutationExample, CheckError> {
    if d < 4 {
        return Err(CheckError::DegreeTooSmall(d));
    }
    let mut letters = vec![-((d - 2) as i32)];
    letters.extend_from_slice(delta(d - 1)?.letters());
    letters.push(2);
    let word = BraidWord::new(d, letters)?;
    let witness = positive_witness(&word)?;
    let signature = invariant_signature(&word);
    Ok(NonPermutationExample {
        degree: d,
        is_permutation_braid: is_permutation_braid(&word),
        signature_matches: signature == reference_signature(d),
        positive_witness: witness,
        word,
        signature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::perm::all_permutations;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn smallest_case_a() {
        let cert = check_a(&word(3, &[1]), 3).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.x_prime.len(), 2);
    }

    #[test]
    fn degree_four_exhaustive() {
        let mut certified = 0;
        for p in all_permutations(4) {
            let x = permutation_braid_of(&p);
            if x.len() != 3 || !describe_closure(&x).is_knot() {
                assert!(check_a(&x, 4).is_err());
                continue;
            }
            let cert = check_a(&x, 4).unwrap();
            assert!(cert.recheck().unwrap());
            assert_eq!(invariant_signature(&x), reference_signature(4));
            certified += 1;
        }
        assert!(certified > 0);
    }

    #[test]
    fn half_twist_is_rejected() {
        for d in 3..=6 {
            let err = check_a(&delta(d).unwrap(), d).unwrap_err();
            assert!(matches!(
                err,
                CheckError::HypothesisFailed {
                    which: Hypothesis::ExponentSum,
                    ..
                }
            ));
        }
    }

    #[test]
    fn smallest_case_b() {
        let cert = check_b(&word(2, &[1, 1]), 4).unwrap();
        assert!(cert.u.is_empty());
        assert_eq!(cert.x_prime.letters(), &[1]);
    }

    #[test]
    fn torus_braid_case_b() {
        let x = torus_braid(4, 6).unwrap();
        let cert = check_b(&x, 6).unwrap();
        assert!(cert.verified);
        assert_eq!(invariant_signature(&x), reference_signature(6));
    }

    #[test]
    fn wrong_exponent_b() {
        assert!(matches!(
            check_b(&word(2, &[1]), 4),
            Err(CheckError::HypothesisFailed {
                which: Hypothesis::ExponentSum,
                ..
            })
        ));
    }

    #[test]
    fn non_permutation_examples() {
        for d in 4..=6 {
            let r = non_permutation_example(d).unwrap();
            assert!(r.positive_witness.is_positive());
            assert!(!r.is_permutation_braid);
            assert!(r.signature_matches, "d = {d}");
        }
        assert!(non_permutation_example(3).is_err());
    }
}
