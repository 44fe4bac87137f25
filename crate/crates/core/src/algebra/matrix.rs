use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{DotAccumulator, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Inertia of a symmetric form: counts of negative, positive and zero squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub neg: usize,
    pub pos: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn dimension(&self) -> usize {
        self.neg + self.pos + self.zero
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.neg, self.pos, self.zero)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row vectors; all rows must share one length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows: rows.len(), cols, data: rows.concat() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { Rational::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = DotAccumulator::new();
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), rhs.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_product(a, b);
                    }
                }
                data.push(acc.finish());
            }
        }
        Ok(Matrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = DotAccumulator::new();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc.add_product(a, x);
                    }
                }
                acc.finish()
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, factor: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * factor).collect() }
    }

    /// `n`-th power of a square matrix (`n = 0` gives the identity).
    pub fn pow(&self, n: u32) -> Matrix {
        assert!(self.is_square());
        let mut out = Matrix::identity(self.rows);
        for _ in 0..n {
            out = out.mul(self).expect("square");
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r..self.cols).all(|c| *self.get(r, c) == -self.get(c, r)))
    }

    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.transpose().mul(self).map(|p| p == Matrix::identity(self.rows)).unwrap_or(false)
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let my = self.mul_vec(y);
        x.iter().zip(&my).map(|(a, b)| a * b).sum()
    }

    /// Gram matrix `VᵀMV` of the given vectors under this bilinear form.
    pub fn gram(&self, vectors: &[Vec<Rational>]) -> Matrix {
        let k = vectors.len();
        let images: Vec<Vec<Rational>> = vectors.iter().map(|v| self.mul_vec(v)).collect();
        Matrix::from_fn(k, k, |a, b| vectors[a].iter().zip(&images[b]).map(|(x, y)| x * y).sum())
    }

    /// Exact rank by fraction-free (Bareiss) elimination. Each row is first
    /// cleared of denominators, so the elimination runs over the integers.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = &self.data[r * self.cols..(r + 1) * self.cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let (top, rest) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            for row in rest.iter_mut() {
                let factor = row[col].clone();
                for c in col + 1..n {
                    let v = &pivot_row[col] * &row[c] - &factor * &pivot_row[c];
                    row[c] = v / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = pivot_row[col].clone();
            rank += 1;
        }
        rank
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(col, p);
            inv.swap_rows(col, p);
            let pivot = a.get(col, col).clone();
            let recip = pivot.recip();
            a.scale_row(col, &recip);
            inv.scale_row(col, &recip);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.axpy_row(r, col, &-factor.clone());
                inv.axpy_row(r, col, &-factor);
            }
        }
        Ok(inv)
    }

    /// Basis of the right null space `{x : Mx = 0}`, from the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let recip = a.get(row, col).recip();
            a.scale_row(row, &recip);
            for r in 0..self.rows {
                if r != row && !a.get(r, col).is_zero() {
                    let factor = -a.get(r, col).clone();
                    a.axpy_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -a.get(r, f).clone();
                }
                x
            })
            .collect()
    }

    /// Solves `M x = b` for square invertible `M`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.inverse()?.mul_vec(b))
    }

    /// Congruence diagonalization of a symmetric matrix: returns `(P, d)` with
    /// `Pᵀ M P = diag(d)` and `P` invertible.
    pub fn congruence_diagonalize(&self) -> Result<(Matrix, Vec<Rational>)> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut p = Matrix::identity(n);
        for k in 0..n {
            if a.get(k, k).is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                    a.swap_rows(k, j);
                    a.swap_cols(k, j);
                    p.swap_cols(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                    // a_kk = a_jj = 0, so x_k + x_j has square 2 a_kj != 0.
                    a.axpy_row(k, j, &Rational::one());
                    a.axpy_col(k, j, &Rational::one());
                    p.axpy_col(k, j, &Rational::one());
                } else {
                    continue;
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let factor = -(a.get(i, k) / &pivot);
                a.axpy_row(i, k, &factor);
                a.axpy_col(i, k, &factor);
                p.axpy_col(i, k, &factor);
            }
        }
        let d = (0..n).map(|i| a.get(i, i).clone()).collect();
        Ok((p, d))
    }

    /// Inertia via exact congruence to a diagonal matrix.
    pub fn symmetric_signature(&self) -> Result<Inertia> {
        let (_, d) = self.congruence_diagonalize()?;
        let mut inertia = Inertia { neg: 0, pos: 0, zero: 0 };
        for x in &d {
            if x.is_negative() {
                inertia.neg += 1;
            } else if x.is_positive() {
                inertia.pos += 1;
            } else {
                inertia.zero += 1;
            }
        }
        Ok(inertia)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rational) {
        for c in 0..self.cols {
            self.data[r * self.cols + c] *= factor;
        }
    }

    /// `row[dst] += factor * row[src]`.
    fn axpy_row(&mut self, dst: usize, src: usize, factor: &Rational) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * factor;
            if !v.is_zero() {
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// `col[dst] += factor * col[src]`.
    fn axpy_col(&mut self, dst: usize, src: usize, factor: &Rational) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * factor;
            if !v.is_zero() {
                self.data[r * self.cols + dst] += v;
            }
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Cayley transform `Q = (I − A)(I + A)⁻¹` of a skew-symmetric `A`, an exact
/// special-orthogonal matrix. `I + A` is always invertible for real skew `A`.
pub fn cayley_orthogonal(a: &Matrix) -> Result<Matrix> {
    if !a.is_skew_symmetric() {
        return Err(Error::NotSkew);
    }
    let id = Matrix::identity(a.rows());
    id.sub(a).mul(&id.add(a).inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::zeros(6, 6).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::from_i64(&[&[0, 0, 1], &[0, 0, 2], &[1, 1, 0]]).rank(), 2);
        assert_eq!(Matrix::zeros(0, 3).rank(), 0);
    }

    #[test]
    fn signature_examples() {
        let d = Matrix::diagonal(&[int(1), int(1), int(-1)]);
        assert_eq!(d.symmetric_signature().unwrap(), Inertia { neg: 1, pos: 2, zero: 0 });
        assert_eq!(Matrix::zeros(3, 3).symmetric_signature().unwrap(), Inertia { neg: 0, pos: 0, zero: 3 });
        // hyperbolic plane with zero diagonal
        let h = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(h.symmetric_signature().unwrap(), Inertia { neg: 1, pos: 1, zero: 0 });
    }

    #[test]
    fn signature_rejects_non_symmetric() {
        let m = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(m.symmetric_signature(), Err(Error::NotSymmetric));
    }

    #[test]
    fn congruence_is_exact() {
        let m = Matrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]);
        let (p, d) = m.congruence_diagonalize().unwrap();
        assert_eq!(p.transpose().mul(&m).unwrap().mul(&p).unwrap(), Matrix::diagonal(&d));
        assert_eq!(p.rank(), 3);
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(cayley_orthogonal(&Matrix::zeros(3, 3)).unwrap(), Matrix::identity(3));
        let a = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(cayley_orthogonal(&a).unwrap(), Matrix::from_i64(&[&[0, -1], &[1, 0]]));
        assert_eq!(cayley_orthogonal(&Matrix::identity(2)), Err(Error::NotSkew));
    }

    #[test]
    fn inverse_and_nullspace() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
        let ns = Matrix::from_i64(&[&[1, 2, 3]]).nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(Matrix::from_i64(&[&[1, 2, 3]]).mul_vec(&v).iter().all(Zero::is_zero));
        }
    }
}
