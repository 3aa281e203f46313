//! Small dense linear algebra on homogeneous coordinates `(x, y, z, w)`.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::Field;

pub type Vec4<T> = [T; 4];
/// Row-major 4x4 matrix.
pub type Mat4<T> = [[T; 4]; 4];

/// Sign and index arrays of the 24 permutations of four elements.
fn permutations4() -> Vec<(bool, [usize; 4])> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct {
                        let inversions = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        out.push((inversions % 2 == 0, p));
                    }
                }
            }
        }
    }
    out
}

/// Leibniz determinant over any commutative ring.
pub fn det4_generic<R>(m: &[[R; 4]; 4]) -> R
where
    R: Clone + Zero + Add<Output = R> + Sub<Output = R> + Mul<Output = R>,
{
    let mut acc = R::zero();
    for (even, p) in permutations4() {
        let term =
            m[0][p[0]].clone() * m[1][p[1]].clone() * m[2][p[2]].clone() * m[3][p[3]].clone();
        acc = if even { acc + term } else { acc - term };
    }
    acc
}

/// Determinant of the matrix with the given vectors as columns.
pub fn det_columns<T: Field>(cols: [&Vec4<T>; 4]) -> T {
    let m: Mat4<T> = std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()));
    det4_generic(&m)
}

pub fn cross<T: Field>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn identity<T: Field>() -> Mat4<T> {
    std::array::from_fn(|r| std::array::from_fn(|c| if r == c { T::one() } else { T::zero() }))
}

pub fn mat_vec<T: Field>(m: &Mat4<T>, v: &Vec4<T>) -> Vec4<T> {
    std::array::from_fn(|r| (0..4).fold(T::zero(), |acc, c| acc + m[r][c].clone() * v[c].clone()))
}

pub fn mat_mul<T: Field>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T> {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            (0..4).fold(T::zero(), |acc, k| acc + a[r][k].clone() * b[k][c].clone())
        })
    })
}

/// Gauss-Jordan inverse; `None` for singular matrices.
pub fn inverse<T: Field>(m: &Mat4<T>) -> Option<Mat4<T>> {
    let mut a: Vec<Vec<T>> = m.iter().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<T>> = identity::<T>().iter().map(|r| r.to_vec()).collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for c in 0..4 {
            a[col][c] = a[col][c].clone() / p.clone();
            inv[col][c] = inv[col][c].clone() / p.clone();
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..4 {
                    a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
                    inv[r][c] = inv[r][c].clone() - f.clone() * inv[col][c].clone();
                }
            }
        }
    }
    Some(std::array::from_fn(|r| {
        std::array::from_fn(|c| inv[r][c].clone())
    }))
}

/// Plücker coordinates `p_ij = P_i D_j - P_j D_i` of the oriented plane spanned by `(P, D)`.
pub fn plucker<T: Field>(p: &Vec4<T>, d: &Vec4<T>) -> [T; 6] {
    let pair = |i: usize, j: usize| p[i].clone() * d[j].clone() - p[j].clone() * d[i].clone();
    [
        pair(0, 1),
        pair(0, 2),
        pair(0, 3),
        pair(1, 2),
        pair(1, 3),
        pair(2, 3),
    ]
}

/// Whether two Plücker vectors are positive multiples of each other.
pub fn same_orientation<T: Field>(a: &[T; 6], b: &[T; 6]) -> bool {
    let Some(k) = (0..6).find(|&k| !a[k].is_zero()) else {
        return false;
    };
    let r = b[k].clone() / a[k].clone();
    r.is_positive() && (0..6).all(|i| b[i] == r.clone() * a[i].clone())
}
