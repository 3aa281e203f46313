//! Univariate polynomials over an ordered field and Sturm root counting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::Field;

/// Polynomial with coefficients stored from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b t`.
    pub fn linear(a: T, b: T) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut k = T::zero();
        let coeffs = self
            .coeffs
            .iter()
            .skip(1)
            .map(|c| {
                k = k.clone() + T::one();
                c.clone() * k.clone()
            })
            .collect();
        Poly::new(coeffs)
    }

    fn scale(&self, s: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, divisor: &Poly<T>) -> Poly<T> {
        let dlead = divisor
            .lead()
            .expect("division by the zero polynomial")
            .clone();
        let dd = divisor.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let factor = r[top].clone() / dlead.clone();
            let shift = top - dd;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - factor.clone() * c.clone();
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// `p, p', -rem(p, p'), ...` down to the last nonzero remainder.
    pub fn sturm_chain(&self) -> Vec<Poly<T>> {
        let mut chain = vec![self.clone()];
        if self.is_zero() {
            return chain;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let prev = chain.last().unwrap().clone();
            chain.push(next.clone());
            next = -prev.rem(&next);
        }
        chain
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    ///
    /// Requires `a < b` with `p(a) != 0` and `p(b) != 0`.
    pub fn count_roots(&self, a: &T, b: &T) -> usize {
        let chain = self.sturm_chain();
        let va = sign_changes(&chain, a);
        let vb = sign_changes(&chain, b);
        va - vb
    }

    /// A subinterval of `[a, b]` of width at most `(b - a) / 2^steps` containing a root,
    /// or a degenerate interval at an exact root. Requires at least one root in `(a, b)`.
    pub fn isolate_root(&self, a: &T, b: &T, steps: usize) -> (T, T) {
        let two = T::one() + T::one();
        let (mut lo, mut hi) = (a.clone(), b.clone());
        for _ in 0..steps {
            let mid = (lo.clone() + hi.clone()) / two.clone();
            if self.eval(&mid).is_zero() {
                return (mid.clone(), mid);
            }
            if self.count_roots(&lo, &mid) > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }
}

fn sign_changes<T: Field>(chain: &[Poly<T>], x: &T) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

impl<T: Field> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Field> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<T: Field> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let at = |p: &Poly<T>, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(T::zero);
        Poly::new((0..n).map(|i| at(&self, i) + at(&rhs, i)).collect())
    }
}

impl<T: Field> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        self.scale(&-T::one())
    }
}

impl<T: Field> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        self + (-rhs)
    }
}

impl<T: Field> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Field> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl<T: Field> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn poly(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&x| q(x, 1)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[1, 2]) * poly(&[-1, 2]);
        assert_eq!(p, poly(&[-1, 0, 4]));
        assert_eq!(p.eval(&q(1, 2)), q(0, 1));
        assert_eq!(p.derivative(), poly(&[0, 8]));
        assert_eq!((poly(&[1, 1]) - poly(&[1, 1])).degree(), None);
        assert_eq!(poly(&[-1, 0, 1]).rem(&poly(&[-1, 1])), poly(&[]));
    }

    #[test]
    fn sturm_counts() {
        // (4t - 1)(4t - 3) has roots 1/4 and 3/4
        let p = poly(&[3, -16, 16]);
        assert_eq!(p.count_roots(&q(0, 1), &q(1, 1)), 2);
        assert_eq!(p.count_roots(&q(0, 1), &q(1, 2)), 1);
        assert_eq!(poly(&[1, 0, 1]).count_roots(&q(-5, 1), &q(5, 1)), 0);
        // double root at 1/2 counts once
        let sq = poly(&[-1, 2]) * poly(&[-1, 2]);
        assert_eq!(sq.count_roots(&q(0, 1), &q(1, 1)), 1);
        assert_eq!(poly(&[7]).count_roots(&q(0, 1), &q(1, 1)), 0);
    }

    #[test]
    fn isolation() {
        let p = poly(&[-1, 3]);
        let (lo, hi) = p.isolate_root(&q(0, 1), &q(1, 1), 20);
        assert!(lo <= q(1, 3) && q(1, 3) <= hi);
        assert!(hi - lo <= q(1, 1 << 20));
        let p = poly(&[-1, 2]);
        assert_eq!(p.isolate_root(&q(0, 1), &q(1, 1), 5), (q(1, 2), q(1, 2)));
    }
}
