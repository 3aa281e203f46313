//! Garside structure of the positive braid monoid: the half twist, permutation
//! braids and the left-greedy normal form.
//!
//! Positive braids are handled as sequences of permutation braids ("simple
//! factors"), each stored as its [`Permutation`]. Normal forms are computed by
//! appending one generator at a time and restoring the left-weighted condition
//! from right to left.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BraidError, BraidWord, Permutation};

/// The Garside element as the explicit word `prod_{i=1}^{n-1} prod_{j=1}^{n-i} sigma_j`.
pub fn delta(n: usize) -> Result<BraidWord, BraidError> {
    if n == 0 {
        return Err(BraidError::ZeroStrands);
    }
    let mut gens = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..n {
        gens.extend(1..=n - i);
    }
    Ok(BraidWord::positive(n, &gens))
}

/// A positive braid in which any two strands cross at most once.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermutationBraid {
    perm: Permutation,
}

impl PermutationBraid {
    pub fn new(perm: Permutation) -> Self {
        PermutationBraid { perm }
    }

    pub fn delta(n: usize) -> Self {
        PermutationBraid {
            perm: Permutation::reversal(n),
        }
    }

    pub fn strands(&self) -> usize {
        self.perm.size()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn exponent_sum(&self) -> usize {
        self.perm.inversions()
    }

    pub fn word(&self) -> BraidWord {
        permutation_braid_of(&self.perm)
    }
}

impl fmt::Debug for PermutationBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermutationBraid{}", self.perm)
    }
}

/// The positive word realizing `perm` with every pair of strands crossing at most once.
///
/// Row-by-row insertion sort of the destination sequence: each strand in turn
/// slides left past the strands that must end up to its right. The output is
/// deterministic and has exactly `perm.inversions()` letters.
pub fn permutation_braid_of(perm: &Permutation) -> BraidWord {
    let n = perm.size();
    let mut dest: Vec<usize> = (0..n).map(|i| perm.apply0(i)).collect();
    let mut gens = Vec::with_capacity(perm.inversions());
    for i in 1..n {
        let mut j = i;
        while j > 0 && dest[j - 1] > dest[j] {
            dest.swap(j - 1, j);
            gens.push(j);
            j -= 1;
        }
    }
    BraidWord::positive(n.max(1), &gens)
}

/// Left-weighted factorization of a positive braid into permutation braids.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    strands: usize,
    factors: Vec<Permutation>,
}

impl CanonicalForm {
    pub fn identity(strands: usize) -> Self {
        CanonicalForm {
            strands,
            factors: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    /// Number of leading factors equal to the half twist.
    pub fn delta_power(&self) -> usize {
        let rev = Permutation::reversal(self.strands);
        self.factors.iter().take_while(|f| **f == rev).count()
    }

    pub fn exponent_sum(&self) -> usize {
        self.factors.iter().map(Permutation::inversions).sum()
    }

    /// Positive word: concatenation of the factors' permutation-braid words.
    pub fn to_word(&self) -> BraidWord {
        let mut letters = Vec::with_capacity(self.exponent_sum());
        for f in &self.factors {
            letters.extend_from_slice(permutation_braid_of(f).letters());
        }
        BraidWord::from_parts_unchecked(self.strands, letters)
    }

    /// Checks the structural invariants: no identity factor, adjacent factors left-weighted.
    pub fn is_valid(&self) -> bool {
        if self
            .factors
            .iter()
            .any(|f| f.size() != self.strands || f.is_identity())
        {
            return false;
        }
        self.factors
            .windows(2)
            .all(|w| is_left_weighted(&w[0], &w[1]))
    }

    /// Multiplies on the right by the generator `sigma_i` (one-based).
    fn push_generator(&mut self, i: usize) {
        let mut s = Permutation::identity(self.strands);
        s.adjacent_then(i);
        self.factors.push(s);
        for k in (1..self.factors.len()).rev() {
            let (left, right) = self.factors.split_at_mut(k);
            if !make_left_weighted(&mut left[k - 1], &mut right[0]) {
                break;
            }
        }
        while self.factors.last().is_some_and(Permutation::is_identity) {
            self.factors.pop();
        }
    }

    /// Removes `k` leading half twists; `None` if the form does not start with `k` of them.
    pub fn strip_delta(&self, k: usize) -> Option<CanonicalForm> {
        (self.delta_power() >= k).then(|| CanonicalForm {
            strands: self.strands,
            factors: self.factors[k..].to_vec(),
        })
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Text form `n; [p-images]|[p-images]|...`; the identity braid is `n;`.
impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.strands)?;
        for (k, p) in self.factors.iter().enumerate() {
            write!(f, "{}{p}", if k == 0 { " " } else { "|" })?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalForm {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BraidError::Parse(s.to_string());
        let (n, rest) = s.trim().split_once(';').ok_or_else(bad)?;
        let strands: usize = n.trim().parse().map_err(|_| bad())?;
        let rest = rest.trim();
        let mut factors = Vec::new();
        if !rest.is_empty() {
            for part in rest.split('|') {
                let inner = part
                    .trim()
                    .strip_prefix('[')
                    .and_then(|p| p.strip_suffix(']'))
                    .ok_or_else(bad)?;
                let images = inner
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                let p = Permutation::from_images(&images)?;
                if p.size() != strands {
                    return Err(bad());
                }
                factors.push(p);
            }
        }
        let form = CanonicalForm { strands, factors };
        if !form.is_valid() {
            return Err(BraidError::NotCanonical(s.to_string()));
        }
        Ok(form)
    }
}

fn is_left_weighted(a: &Permutation, b: &Permutation) -> bool {
    let fin = a.finishing_set();
    b.starting_set().all(|i| fin.contains(&i))
}

/// Moves generators from the front of `b` to the back of `a` until the pair is
/// left-weighted. Returns whether anything moved.
fn make_left_weighted(a: &mut Permutation, b: &mut Permutation) -> bool {
    let mut changed = false;
    loop {
        let fin = a.finishing_set();
        let Some(i) = b.starting_set().find(|i| !fin.contains(i)) else {
            return changed;
        };
        // a * sigma_i stays simple because i is not in F(a);
        // sigma_i^{-1} * b is simple because i is in S(b).
        a.then_adjacent(i);
        b.adjacent_then(i);
        changed = true;
    }
}

/// Left normal form of a positive word.
pub(crate) fn canonical_form_positive(strands: usize, gens: &[usize]) -> CanonicalForm {
    let mut form = CanonicalForm::identity(strands);
    for &g in gens {
        form.push_generator(g);
    }
    form
}

/// Rewrites `w` as `Delta^{-k} * P` with `P` a positive word.
///
/// Each inverse letter is replaced by `Delta^{-1} (Delta sigma_i^{-1})`, and the
/// pending `Delta^{-1}` is pulled to the front by flipping the positive part.
fn delta_fraction(w: &BraidWord) -> (usize, Vec<usize>) {
    let n = w.strands();
    let mut k = 0;
    let mut positive: Vec<usize> = Vec::new();
    let half_twist = Permutation::reversal(n);
    for &letter in w.letters() {
        if letter > 0 {
            positive.push(letter as usize);
        } else {
            let i = (-letter) as usize;
            for g in positive.iter_mut() {
                *g = n - *g;
            }
            // left complement of sigma_i in Delta: L * sigma_i = Delta
            let mut lc = half_twist.clone();
            lc.then_adjacent(i);
            positive.extend(
                permutation_braid_of(&lc)
                    .letters()
                    .iter()
                    .map(|&g| g as usize),
            );
            k += 1;
        }
    }
    (k, positive)
}

/// Left normal form of the braid represented by `w`, provided it lies in the positive monoid.
pub fn canonical_form(w: &BraidWord) -> Result<CanonicalForm, BraidError> {
    let (k, positive) = delta_fraction(w);
    let form = canonical_form_positive(w.strands(), &positive);
    form.strip_delta(k).ok_or(BraidError::NotPositive)
}

/// Normal form `Delta^power * rest` of any braid, where `rest` does not start with
/// a half twist.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaNormalForm {
    pub power: i64,
    pub rest: CanonicalForm,
}

pub fn delta_normal_form(w: &BraidWord) -> DeltaNormalForm {
    let (k, positive) = delta_fraction(w);
    let form = canonical_form_positive(w.strands(), &positive);
    let j = form.delta_power();
    let rest = form
        .strip_delta(j)
        .expect("leading half twists are present");
    DeltaNormalForm {
        power: j as i64 - k as i64,
        rest,
    }
}

/// An all-positive word equal to `w` in the braid group.
pub fn positive_witness(w: &BraidWord) -> Result<BraidWord, BraidError> {
    if w.is_positive() {
        return Ok(w.clone());
    }
    Ok(canonical_form(w)?.to_word())
}

/// Equality of two braids that are both positive.
pub fn positive_equal(a: &BraidWord, b: &BraidWord) -> Result<bool, BraidError> {
    if a.strands() != b.strands() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// True iff `w` is a positive braid whose normal form is a single factor.
pub fn is_permutation_braid(w: &BraidWord) -> bool {
    match canonical_form(w) {
        Ok(form) => form.factors().len() <= 1,
        Err(_) => false,
    }
}

/// The permutation braid `c` with `x * c = Delta`.
pub fn complement_in_delta(x: &PermutationBraid) -> PermutationBraid {
    let n = x.strands();
    PermutationBraid::new(x.permutation().inverse().then(&Permutation::reversal(n)))
}

/// The permutation braid `c` with `c * x = Delta`, i.e. `Delta x^{-1}`.
pub fn left_complement_in_delta(x: &PermutationBraid) -> PermutationBraid {
    let n = x.strands();
    PermutationBraid::new(Permutation::reversal(n).then(&x.permutation().inverse()))
}

/// Decides whether the first normal-form factor of `w` is the half twist and
/// returns the positive quotient `A` with `w = Delta * A`.
pub fn left_divisible_by_delta(w: &BraidWord) -> Result<Option<BraidWord>, BraidError> {
    let form = canonical_form(w)?;
    Ok(form.strip_delta(1).map(|q| q.to_word()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::perm::all_permutations;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn delta_words() {
        assert_eq!(delta(2).unwrap().letters(), &[1]);
        assert_eq!(delta(3).unwrap().letters(), &[1, 2, 1]);
        assert!(delta(1).unwrap().is_empty());
        assert!(delta(0).is_err());
        assert_eq!(delta(5).unwrap().exponent_sum(), 10);
    }

    #[test]
    fn braid_relation_gives_half_twist() {
        let form = canonical_form(&word(3, &[2, 1, 2])).unwrap();
        assert_eq!(form.factors(), &[Permutation::reversal(3)]);
        assert_eq!(form.to_string(), "3; [3,2,1]");
    }

    #[test]
    fn two_strand_square_has_two_factors() {
        let form = canonical_form(&word(2, &[1, 1])).unwrap();
        assert_eq!(form.factors().len(), 2);
        assert_eq!(form.to_string(), "2; [2,1]|[2,1]");
    }

    #[test]
    fn conjugated_half_twist_is_half_twist() {
        // sigma_2^{-1} Delta_4 sigma_2 = Delta_4 because Delta sigma_2 = sigma_2 Delta on 4 strands.
        let w = word(4, &[-2, 1, 2, 1, 3, 2, 1, 2]);
        let form = canonical_form(&w).unwrap();
        assert_eq!(form.factors(), &[Permutation::reversal(4)]);
        assert_eq!(form.to_word().len(), 6);
    }

    #[test]
    fn positive_witness_examples() {
        let d4 = delta(4).unwrap();
        let w = word(4, &[-2]).concat(&d4);
        let pos = positive_witness(&w).unwrap();
        assert!(pos.is_positive());
        assert_eq!(pos.len(), 5);
        assert_eq!(positive_witness(&word(2, &[1])).unwrap().letters(), &[1]);
        assert_eq!(
            positive_witness(&word(2, &[-1])),
            Err(BraidError::NotPositive)
        );
        assert_eq!(
            positive_witness(&word(3, &[1, -2])),
            Err(BraidError::NotPositive)
        );
    }

    #[test]
    fn permutation_braid_examples() {
        assert!(permutation_braid_of(&Permutation::identity(3)).is_empty());
        let d = permutation_braid_of(&Permutation::reversal(3));
        assert_eq!(d.letters(), delta(3).unwrap().letters());
        let t = Permutation::from_images(&[2, 1, 3, 4]).unwrap();
        assert_eq!(permutation_braid_of(&t).letters(), &[1]);
    }

    #[test]
    fn is_permutation_braid_examples() {
        assert!(is_permutation_braid(&word(3, &[1, 2, 1])));
        assert!(!is_permutation_braid(&word(3, &[1, 1])));
        assert!(!is_permutation_braid(&word(3, &[-1])));
        assert!(is_permutation_braid(&word(3, &[])));
    }

    #[test]
    fn complement_examples() {
        for n in 1..6 {
            let d = PermutationBraid::delta(n);
            assert!(complement_in_delta(&d).permutation().is_identity());
            let id = PermutationBraid::new(Permutation::identity(n));
            assert_eq!(complement_in_delta(&id), d);
        }
        let x = PermutationBraid::new(Permutation::from_images(&[2, 4, 1, 3]).unwrap());
        assert_eq!(x.exponent_sum(), 3);
        let c = complement_in_delta(&x);
        assert_eq!(c.exponent_sum(), 3);
        let product = x.word().concat(&c.word());
        assert!(positive_equal(&product, &delta(4).unwrap()).unwrap());
    }

    #[test]
    fn left_complement_reconstructs_delta() {
        for p in all_permutations(4) {
            let x = PermutationBraid::new(p);
            let c = left_complement_in_delta(&x);
            let product = c.word().concat(&x.word());
            assert!(positive_equal(&product, &delta(4).unwrap()).unwrap());
        }
    }

    #[test]
    fn delta_divisibility() {
        let w = delta(3).unwrap().concat(&word(3, &[1]));
        let q = left_divisible_by_delta(&w).unwrap().unwrap();
        assert_eq!(q.letters(), &[1]);
        assert_eq!(left_divisible_by_delta(&word(3, &[1])).unwrap(), None);
        assert_eq!(
            left_divisible_by_delta(&word(3, &[-1])),
            Err(BraidError::NotPositive)
        );
    }

    #[test]
    fn distinguishes_non_commuting_products() {
        let a = canonical_form(&word(3, &[1, 2])).unwrap();
        let b = canonical_form(&word(3, &[2, 1])).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn canonical_text_round_trip() {
        let form = canonical_form(&word(4, &[1, 3, 2, 2, 1, 3, 3])).unwrap();
        let text = form.to_string();
        assert_eq!(text.parse::<CanonicalForm>().unwrap(), form);
        assert_eq!(
            "3;".parse::<CanonicalForm>().unwrap(),
            CanonicalForm::identity(3)
        );
        // [1,2,3] is the identity factor, which is never part of a normal form
        assert!("3; [1,2,3]".parse::<CanonicalForm>().is_err());
    }

    #[test]
    fn delta_normal_form_of_inverse_half_twist() {
        let inv = delta(3).unwrap().inverse();
        let f = delta_normal_form(&inv);
        assert_eq!(f.power, -1);
        assert!(f.rest.factors().is_empty());
        let w: BraidWord = "B3: -1 2".parse().unwrap();
        let f = delta_normal_form(&w);
        assert_eq!(f.power, -1);
        assert_eq!(f.rest.exponent_sum() as i64 - 3, w.exponent_sum());
    }
}
