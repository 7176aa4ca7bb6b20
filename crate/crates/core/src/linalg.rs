//! Small exact linear algebra over the integers and rationals.
//!
//! Everything here works on matrices of rank at most ten or so (Cartan
//! matrices and their minors), so plain Gaussian elimination over
//! `Ratio<i128>` is more than enough.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub(crate) type Q = Ratio<i128>;

/// Dense square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "matrix must be square");
            data.extend_from_slice(r);
        }
        IntMatrix { n, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    /// Exact product. Entries grow linearly with word length, so an
    /// overflow of `i64` means the caller built an absurdly long element.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b != 0 {
                        let p = a.checked_mul(b).expect("matrix entry overflow");
                        data[i * n + j] = data[i * n + j].checked_add(p).expect("matrix entry overflow");
                    }
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0i64, |acc, j| {
                    let p = self.get(i, j).checked_mul(v[j]).expect("vector entry overflow");
                    acc.checked_add(p).expect("vector entry overflow")
                })
            })
            .collect()
    }

    pub fn determinant(&self) -> i128 {
        determinant(&self.rows())
    }
}

/// Bareiss fraction-free determinant.
pub fn determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Solves `a x = b` for square nonsingular `a`.
pub(crate) fn solve(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x as i128)).collect();
            r.push(Q::from_integer(rhs as i128));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=n {
                    let v = m[col][c] * f;
                    m[r][c] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

/// Returns the primitive integer generator of a one-dimensional kernel,
/// normalized so its first nonzero entry is positive. `None` if the kernel
/// is trivial or has dimension above one.
pub(crate) fn kernel_vector(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let pv = m[r][c];
        for x in m[r].iter_mut() {
            *x /= pv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..cols {
                    let v = m[r][j] * f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let f = free[0];
    let mut v = vec![Q::zero(); cols];
    v[f] = Q::one();
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[i][f];
    }
    Some(primitive(&v))
}

/// Scales a rational vector to the primitive integer vector on the same ray,
/// with first nonzero entry positive.
pub(crate) fn primitive(v: &[Q]) -> Vec<i64> {
    let den = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * Q::from_integer(den)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(1, |x| x.signum());
    ints.iter().map(|x| (x / g * sign) as i64).collect()
}

/// Least common multiple of the denominators of a rational vector.
pub(crate) fn common_denominator(v: &[Q]) -> i128 {
    v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()))
}

pub(crate) fn is_integral(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub(crate) fn gcd_all(v: impl IntoIterator<Item = i64>) -> i64 {
    v.into_iter().fold(0i64, |acc, x| acc.gcd(&x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let a = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(determinant(&a), 4);
        let b = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert_eq!(determinant(&b), 0);
        let c = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant(&c), -1);
    }

    #[test]
    fn kernel_of_affine_cartan() {
        let a = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert_eq!(kernel_vector(&a), Some(vec![1, 1, 1]));
        let g2 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -3, 2]];
        let k = kernel_vector(&g2).unwrap();
        let prod: Vec<i64> = g2.iter().map(|r| r.iter().zip(&k).map(|(x, y)| x * y).sum()).collect();
        assert_eq!(prod, vec![0, 0, 0]);
        assert!(k.iter().all(|&x| x > 0));
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![2, -1], vec![-1, 2]];
        let x = solve(&a, &[1, 0]).unwrap();
        assert_eq!(x, vec![Q::new(2, 3), Q::new(1, 3)]);
        assert_eq!(common_denominator(&x), 3);
        assert!(!is_integral(&x));
    }
}
