//! Braid words, permutations, the Garside half twist and left normal forms.

mod conjugator;
mod garside;
pub mod perm;
mod word;

pub use conjugator::{generator_conjugator, verify_generator_conjugator};
pub use garside::{
    canonical_form, complement_in_delta, delta, delta_normal_form, is_permutation_braid,
    left_complement_in_delta, left_divisible_by_delta, permutation_braid_of, positive_equal,
    positive_witness, CanonicalForm, DeltaNormalForm, PermutationBraid,
};
pub use perm::Permutation;
pub use word::BraidWord;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    ZeroStrands,
    #[error("letter {letter} is out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("expected {expected} strands, found {found}")]
    StrandMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("the braid is not in the positive monoid")]
    NotPositive,
    #[error("not a permutation of the generators 1..m: {0:?}")]
    NotAPermutationOfGenerators(Vec<usize>),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("not a left-weighted factorization: {0:?}")]
    NotCanonical(String),
}

/// Exponent sum of a braid word.
pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.exponent_sum()
}

/// The permutation `mu(w)`.
pub fn perm_of(w: &BraidWord) -> Permutation {
    w.permutation()
}

/// The flip automorphism `sigma_i -> sigma_{n-i}`.
pub fn tau(w: &BraidWord) -> BraidWord {
    w.tau()
}
