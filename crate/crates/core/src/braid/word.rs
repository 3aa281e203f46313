use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BraidError, Permutation};

/// A word in the Artin generators of the braid group on `strands` strands.
///
/// Letter `k > 0` stands for `sigma_k`, letter `k < 0` for `sigma_{|k|}^{-1}`.
/// The empty word is the identity braid.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Deserialize)]
struct RawWord {
    strands: usize,
    letters: Vec<i32>,
}

impl TryFrom<RawWord> for BraidWord {
    type Error = BraidError;

    fn try_from(raw: RawWord) -> Result<Self, Self::Error> {
        BraidWord::new(raw.strands, raw.letters)
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::ZeroStrands);
        }
        for &k in &letters {
            if k == 0 || k.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter: k, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub(crate) fn from_parts_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters
            .iter()
            .all(|&k| k != 0 && (k.unsigned_abs() as usize) < strands));
        BraidWord { strands, letters }
    }

    /// Positive word from one-based generator indices.
    pub(crate) fn positive(strands: usize, gens: &[usize]) -> Self {
        Self::from_parts_unchecked(strands, gens.iter().map(|&g| g as i32).collect())
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True iff every letter is a positive generator.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&k| k > 0)
    }

    /// Generator indices of a positive word; `None` if an inverse letter occurs.
    pub fn positive_letters(&self) -> Option<Vec<usize>> {
        self.letters
            .iter()
            .map(|&k| (k > 0).then_some(k as usize))
            .collect()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&k| k.signum() as i64).sum()
    }

    /// The permutation `mu(w)`: strand starting at position `i` ends at `mu(w)(i)`.
    pub fn permutation(&self) -> Permutation {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &k in &self.letters {
            let j = k.unsigned_abs() as usize;
            at.swap(j - 1, j);
        }
        let mut images = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            images[strand] = pos;
        }
        Permutation::from_zero_based(images)
    }

    /// The flip `sigma_i -> sigma_{n-i}`, i.e. conjugation by the Garside element.
    pub fn tau(&self) -> BraidWord {
        let n = self.strands as i32;
        let letters = self
            .letters
            .iter()
            .map(|&k| k.signum() * (n - k.abs()))
            .collect();
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// The formal inverse: reversed word with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|&k| -k).collect();
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// The mirror image: every letter inverted in place.
    pub fn mirror(&self) -> BraidWord {
        let letters = self.letters.iter().map(|&k| -k).collect();
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Concatenation `self * other`.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// The same word viewed on more strands (strands added on the right).
    pub fn widen(&self, strands: usize) -> Result<BraidWord, BraidError> {
        if strands < self.strands {
            return Err(BraidError::StrandMismatch {
                expected: self.strands,
                found: strands,
            });
        }
        Ok(BraidWord {
            strands,
            letters: self.letters.clone(),
        })
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Text form `B<n>: k1 k2 ... km`; the empty word is `B<n>:`.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for k in &self.letters {
            write!(f, " {k}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BraidError::Parse(s.to_string());
        let s_trim = s.trim();
        let rest = s_trim.strip_prefix('B').ok_or_else(bad)?;
        let (n, letters) = rest.split_once(':').ok_or_else(bad)?;
        let strands: usize = n.parse().map_err(|_| bad())?;
        let letters = letters
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_letters() {
        assert!(BraidWord::new(3, vec![1, 3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
        assert!(BraidWord::new(1, vec![]).is_ok());
        assert!(BraidWord::new(3, vec![-2, 1]).is_ok());
    }

    #[test]
    fn text_format_is_exact() {
        let w: BraidWord = "B3: 1 2 1".parse().unwrap();
        assert_eq!(w.letters(), &[1, 2, 1]);
        assert_eq!(w.to_string(), "B3: 1 2 1");
        let e: BraidWord = "B3:".parse().unwrap();
        assert!(e.is_empty());
        assert_eq!(e.to_string(), "B3:");
        let neg: BraidWord = "B5: -4 2".parse().unwrap();
        assert_eq!(neg.to_string(), "B5: -4 2");
        assert!("3: 1".parse::<BraidWord>().is_err());
        assert!("B3 1 2".parse::<BraidWord>().is_err());
        assert!("B3: 1 x".parse::<BraidWord>().is_err());
    }

    #[test]
    fn tau_examples() {
        let w = BraidWord::new(4, vec![1, 2]).unwrap();
        assert_eq!(w.tau().letters(), &[3, 2]);
        let w = BraidWord::new(2, vec![1, 1]).unwrap();
        assert_eq!(w.tau().letters(), &[1, 1]);
        let w = BraidWord::new(5, vec![-4]).unwrap();
        assert_eq!(w.tau().letters(), &[-1]);
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(BraidWord::new(3, vec![1, 2, 1]).unwrap().exponent_sum(), 3);
        assert_eq!(BraidWord::new(3, vec![1, -2]).unwrap().exponent_sum(), 0);
    }

    #[test]
    fn permutation_examples() {
        let w = BraidWord::new(2, vec![1, 1]).unwrap();
        assert!(w.permutation().is_identity());
        let w = BraidWord::new(3, vec![]).unwrap();
        assert!(w.permutation().is_identity());
        let w = BraidWord::new(3, vec![1, 2, 1]).unwrap();
        assert_eq!(w.permutation().images(), vec![3, 2, 1]);
        // sigma_1 sigma_2: strand 1 travels to position 3
        let w = BraidWord::new(3, vec![1, 2]).unwrap();
        assert_eq!(w.permutation().images(), vec![3, 1, 2]);
    }
}
