use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::real::rational_to_f64;
use super::AlgebraError;

/// Square matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

/// Square integer matrix, row-major as nested vectors.
pub type IntMatrix = Vec<Vec<BigInt>>;

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![Polynomial::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Polynomial::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::NotSquare);
        }
        Ok(PolyMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.n + j] = p;
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch);
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Polynomial::zero();
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over `Q[z]`.
    pub fn det(&self) -> Polynomial {
        let n = self.n;
        if n == 0 {
            return Polynomial::one();
        }
        let mut a = self.rows();
        let mut prev = Polynomial::one();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Polynomial::zero();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    pub fn eval(&self, z: &BigRational) -> Vec<Vec<BigRational>> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|p| p.eval(z)).collect())
            .collect()
    }

    pub fn eval_f64(&self, z: f64) -> Vec<Vec<f64>> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|p| p.eval_f64(z)).collect())
            .collect()
    }

    /// Coefficient matrix of `z^k`.
    pub fn coeff_matrix(&self, k: usize) -> Vec<Vec<BigRational>> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|p| p.coeff(k)).collect())
            .collect()
    }

    /// Largest entry degree.
    pub fn degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// `G_0 .. G_n` of the formal inverse `G = M^{-1}`, with
    /// `G_k = -Σ_{j<k} G_j M_{k-j}`. Requires `M(0) = Id` and integer
    /// coefficients.
    pub fn series_inverse_coeffs(&self, n: usize) -> Result<Vec<IntMatrix>, AlgebraError> {
        let dim = self.n;
        let to_int = |q: BigRational| -> Result<BigInt, AlgebraError> {
            if q.is_integer() {
                Ok(q.to_integer())
            } else {
                Err(AlgebraError::NonIntegral)
            }
        };
        let deg = self.degree();
        let mut m: Vec<IntMatrix> = Vec::with_capacity(deg + 1);
        for k in 0..=deg {
            let c = self.coeff_matrix(k);
            let c = c
                .into_iter()
                .map(|r| r.into_iter().map(to_int).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            m.push(c);
        }
        let id = identity_int(dim);
        if m[0] != id {
            return Err(AlgebraError::NotIdentityAtZero);
        }
        let mut g: Vec<IntMatrix> = vec![id];
        for k in 1..=n {
            let mut acc = vec![vec![BigInt::zero(); dim]; dim];
            for j in k.saturating_sub(deg)..k {
                let mk = &m[k - j];
                for (row, grow) in acc.iter_mut().zip(&g[j]) {
                    for (t, gv) in grow.iter().enumerate() {
                        if gv.is_zero() {
                            continue;
                        }
                        for (cell, mv) in row.iter_mut().zip(&mk[t]) {
                            *cell -= gv * mv;
                        }
                    }
                }
            }
            g.push(acc);
        }
        Ok(g)
    }
}

fn identity_int(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Converts an exact matrix to floating point.
pub fn to_f64_matrix(a: &[Vec<BigRational>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|r| r.iter().map(rational_to_f64).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn s2() -> PolyMatrix {
        PolyMatrix::from_rows(vec![
            vec![p(&[1, -2, 1]), p(&[0, -1, 1])],
            vec![p(&[0, -1]), p(&[1, -1])],
        ])
        .unwrap()
    }

    #[test]
    fn determinant_of_two_state_matrix() {
        // (1 - z)^3 - z^2 (1 - z) = (1 - z)(1 - 2z)
        assert_eq!(s2().det(), p(&[1, -3, 2]));
        assert_eq!(PolyMatrix::identity(4).det(), Polynomial::one());
        assert_eq!(PolyMatrix::identity(0).det(), Polynomial::one());
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = PolyMatrix::from_rows(vec![
            vec![p(&[]), p(&[1]), p(&[0, 1])],
            vec![p(&[1]), p(&[]), p(&[2])],
            vec![p(&[0, 1]), p(&[3]), p(&[])],
        ])
        .unwrap();
        // cofactor expansion: -1·(0 - 2z) + z·(3 - 0) = 5z
        assert_eq!(m.det(), p(&[0, 5]));
    }

    #[test]
    fn rejects_ragged_rows() {
        assert_eq!(
            PolyMatrix::from_rows(vec![vec![p(&[1])], vec![]]),
            Err(AlgebraError::NotSquare)
        );
    }

    #[test]
    fn series_inverse() {
        let g = s2().series_inverse_coeffs(6).unwrap();
        assert_eq!(g[0], identity_int(2));
        assert_eq!(g[1][0][0], BigInt::from(2));
        assert_eq!(g[1][0][1], BigInt::from(1));
        let bad = PolyMatrix::from_rows(vec![vec![p(&[2])]]).unwrap();
        assert_eq!(
            bad.series_inverse_coeffs(2),
            Err(AlgebraError::NotIdentityAtZero)
        );
    }
}
