//! Conjugating a product of distinct generators to the ordered product.
//!
//! Given `y = sigma_{y_1} ... sigma_{y_m}` with `(y_1, ..., y_m)` a permutation of
//! `(1, ..., m)`, builds a positive `u` in the subgroup generated by
//! `sigma_1, ..., sigma_{m-1}` with `u y u^{-1} = sigma_1 sigma_2 ... sigma_m`.
//!
//! The construction is the inductive one: look at the last two tokens
//! `x_{k-1}, x_k`. If `x_{k-1}` comes first the product already reads
//! `A x_{k-1} x_k B C`; otherwise conjugating by `x_{k-1} C` moves it to
//! `x_{k-1} x_k C A B`. Either way `x_{k-1} x_k` becomes one composite token
//! and the recursion continues on `k - 1` tokens. Tokens are expanded to
//! generator letters only when the conjugator is emitted.

use super::garside::canonical_form;
use super::{BraidError, BraidWord};

/// Positive conjugator `u` with `u * y = (sigma_1 ... sigma_m) * u`.
pub fn generator_conjugator(ys: &[usize], strands: usize) -> Result<BraidWord, BraidError> {
    let m = ys.len();
    let mut seen = vec![false; m + 1];
    for &y in ys {
        if y == 0 || y > m || seen[y] {
            return Err(BraidError::NotAPermutationOfGenerators(ys.to_vec()));
        }
        seen[y] = true;
    }
    if strands == 0 || m >= strands {
        return Err(BraidError::StrandMismatch {
            expected: m + 1,
            found: strands,
        });
    }
    // token t (zero-based) initially expands to sigma_{t+1}
    let expansions: Vec<Vec<usize>> = (1..=m).map(|g| vec![g]).collect();
    let sequence: Vec<usize> = ys.iter().map(|&y| y - 1).collect();
    let gens = conjugate_tokens(sequence, expansions);
    Ok(BraidWord::positive(strands, &gens))
}

/// `sequence` is a permutation of the token indices `0..expansions.len()`.
fn conjugate_tokens(sequence: Vec<usize>, mut expansions: Vec<Vec<usize>>) -> Vec<usize> {
    let k = expansions.len();
    if k <= 1 {
        return Vec::new();
    }
    let (prev, last) = (k - 2, k - 1);
    let pos_prev = sequence.iter().position(|&t| t == prev).unwrap();
    let pos_last = sequence.iter().position(|&t| t == last).unwrap();

    let mut u1: Vec<usize> = Vec::new();
    let reduced: Vec<usize> = if pos_prev < pos_last {
        // y = A x_{k-1} B x_k C  ->  A x' B C
        let mut z = sequence.clone();
        z.remove(pos_last);
        z
    } else {
        // y = A x_k B x_{k-1} C, conjugate by u1 = x_{k-1} C  ->  x' C A B
        let a = &sequence[..pos_last];
        let b = &sequence[pos_last + 1..pos_prev];
        let c = &sequence[pos_prev + 1..];
        u1.extend_from_slice(&expansions[prev]);
        for &t in c {
            u1.extend_from_slice(&expansions[t]);
        }
        let mut z = vec![prev];
        z.extend_from_slice(c);
        z.extend_from_slice(a);
        z.extend_from_slice(b);
        z
    };

    // x'_{k-1} = x_{k-1} x_k takes the place of token k-1
    let tail = expansions.pop().unwrap();
    expansions[prev].extend(tail);
    let mut u = conjugate_tokens(reduced, expansions);
    u.extend(u1);
    u
}

/// Checks `u * y = (sigma_1 ... sigma_m) * u` through normal forms.
pub fn verify_generator_conjugator(ys: &[usize], u: &BraidWord) -> Result<bool, BraidError> {
    let n = u.strands();
    let y = BraidWord::new(n, ys.iter().map(|&g| g as i32).collect())?;
    let target = BraidWord::new(n, (1..=ys.len() as i32).collect())?;
    let lhs = canonical_form(&u.concat(&y))?;
    let rhs = canonical_form(&target.concat(u))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_input_needs_no_conjugator() {
        let u = generator_conjugator(&[1, 2, 3], 4).unwrap();
        assert!(u.is_empty());
    }

    #[test]
    fn one_step_examples() {
        let u = generator_conjugator(&[2, 3, 1], 4).unwrap();
        assert_eq!(u.letters(), &[1]);
        assert!(verify_generator_conjugator(&[2, 3, 1], &u).unwrap());
        let u = generator_conjugator(&[2, 1], 3).unwrap();
        assert_eq!(u.letters(), &[1]);
        assert!(verify_generator_conjugator(&[2, 1], &u).unwrap());
    }

    #[test]
    fn rejects_repeats_and_gaps() {
        assert!(matches!(
            generator_conjugator(&[1, 1], 3),
            Err(BraidError::NotAPermutationOfGenerators(_))
        ));
        assert!(matches!(
            generator_conjugator(&[1, 3], 4),
            Err(BraidError::NotAPermutationOfGenerators(_))
        ));
        assert!(generator_conjugator(&[1, 2, 3], 3).is_err());
    }

    #[test]
    fn conjugator_uses_only_lower_generators() {
        let ys = [3, 1, 4, 2];
        let u = generator_conjugator(&ys, 5).unwrap();
        assert!(u.letters().iter().all(|&k| (1..4).contains(&k)));
        assert!(verify_generator_conjugator(&ys, &u).unwrap());
    }
}
