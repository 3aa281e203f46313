//! Random positively linked configurations for testing.

use rand::Rng;

use super::geometry::{det4_generic, Mat4};
use super::{Field, HomLine, ProjLine};

/// A random integer matrix with positive determinant and entries in `-3..=3`.
pub fn random_chart<T: Field, R: Rng>(rng: &mut R) -> Mat4<T> {
    loop {
        let ints: [[i64; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)));
        let mut m: Mat4<T> = ints.map(|r| r.map(|x| T::from_i64(x).unwrap()));
        let det = det4_generic(&m);
        if det.is_zero() {
            continue;
        }
        if det.is_negative() {
            m.swap(0, 1);
        }
        return m;
    }
}

fn random_rational<T: Field, R: Rng>(rng: &mut R, span: i64) -> T {
    let num = rng.gen_range(-span..=span);
    let den = rng.gen_range(1..=6);
    T::from_i64(num).unwrap() / T::from_i64(den).unwrap()
}

/// `n` lines (counting the optional line at infinity) of the standard family with
/// random distinct rational slopes, moved by a random orientation-preserving
/// projective map and written with random representatives.
pub fn random_hopf_config<T: Field, R: Rng>(
    rng: &mut R,
    n: usize,
    with_infinity: bool,
) -> Vec<ProjLine<T>> {
    let affine = if with_infinity {
        n.saturating_sub(1)
    } else {
        n
    };
    let mut slopes: Vec<T> = Vec::with_capacity(affine);
    while slopes.len() < affine {
        let c = random_rational(rng, 12);
        if !slopes.contains(&c) {
            slopes.push(c);
        }
    }
    let mut lines: Vec<ProjLine<T>> = slopes.into_iter().map(ProjLine::standard).collect();
    if with_infinity {
        let at = rng.gen_range(0..=lines.len());
        lines.insert(
            at,
            ProjLine::AtInfinity {
                normal: [T::one(), T::zero(), T::zero()],
            },
        );
    }
    let chart = random_chart::<T, R>(rng);
    lines
        .iter()
        .map(|l| {
            let h = l.homogeneous().transformed(&chart);
            // (P, D) -> (aP + bD, cP + dD) with ad - bc > 0
            let [a, b, c, d] = loop {
                let k: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
                if k[0] * k[3] - k[1] * k[2] > 0 {
                    break k.map(|x| T::from_i64(x).unwrap());
                }
            };
            let mix = |x: &T, y: &T, s: &T, t: &T| s.clone() * x.clone() + t.clone() * y.clone();
            let p = std::array::from_fn(|k| mix(&h.p[k], &h.d[k], &a, &b));
            let dd = std::array::from_fn(|k| mix(&h.p[k], &h.d[k], &c, &d));
            HomLine { p, d: dd }.to_proj()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::{is_hopf_config, standardize, verify_script};
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_configs_are_hopf_and_standardize() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let n = 2 + trial % 5;
            let config: Vec<ProjLine<BigRational>> =
                random_hopf_config(&mut rng, n, trial % 2 == 0);
            assert!(is_hopf_config(&config).unwrap());
            let script = standardize(&config).unwrap();
            assert!(script.satisfies_final_equations());
            assert_eq!(verify_script(&script).unwrap().total_roots(), 0);
        }
    }
}
