//! Dense multi-index tensors of exact rationals.
//!
//! All slots are covariant and share one dimension. Entries are stored
//! row-major with the first slot most significant. Storage is dense, but the
//! heavy operations (pullback, contraction) only visit nonzero entries.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{DotAccumulator, Matrix, Rational};
use crate::error::{Error, Result};

/// Hard cap on valence; `dim^valence` entries are allocated eagerly.
pub const MAX_VALENCE: usize = 8;

#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    valence: usize,
    data: Vec<Rational>,
}

/// One failed identity at a concrete index tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub index: Vec<usize>,
    pub identity: &'static str,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {} != {}", self.identity, self.index, self.lhs, self.rhs)
    }
}

/// At most this many violations are collected per check.
pub const MAX_VIOLATIONS: usize = 16;

impl Tensor {
    pub fn zeros(dim: usize, valence: usize) -> Self {
        assert!(valence <= MAX_VALENCE, "valence {valence} exceeds {MAX_VALENCE}");
        Self { dim, valence, data: vec![Rational::zero(); dim.pow(valence as u32)] }
    }

    pub fn from_fn(dim: usize, valence: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Self {
        let mut t = Self::zeros(dim, valence);
        let mut idx = vec![0; valence];
        for flat in 0..t.data.len() {
            t.unflatten_into(flat, &mut idx);
            t.data[flat] = f(&idx);
        }
        t
    }

    /// A valence-2 tensor with the entries of a square matrix.
    pub fn from_matrix(m: &Matrix) -> Self {
        assert!(m.is_square());
        Self::from_fn(m.rows(), 2, |i| m.get(i[0], i[1]).clone())
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        self.expect_valence(2)?;
        Ok(Matrix::from_fn(self.dim, self.dim, |r, c| self.get(&[r, c]).clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        assert_eq!(index.len(), self.valence, "index arity mismatch");
        index.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn unflatten(&self, flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.valence];
        self.unflatten_into(flat, &mut idx);
        idx
    }

    fn unflatten_into(&self, mut flat: usize, idx: &mut [usize]) {
        for slot in (0..self.valence).rev() {
            idx[slot] = flat % self.dim;
            flat /= self.dim;
        }
    }

    pub fn get(&self, index: &[usize]) -> &Rational {
        &self.data[self.flat_index(index)]
    }

    pub fn set(&mut self, index: &[usize], value: Rational) {
        let f = self.flat_index(index);
        self.data[f] = value;
    }

    pub fn add_at(&mut self, index: &[usize], value: &Rational) {
        let f = self.flat_index(index);
        self.data[f] += value;
    }

    pub fn get_flat(&self, flat: usize) -> &Rational {
        &self.data[flat]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `(index, value)` for every nonzero entry, in storage order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(f, v)| (self.unflatten(f), v))
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.expect_shape(other)?;
        Ok(Tensor { dim: self.dim, valence: self.valence, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, factor: &Rational) -> Tensor {
        Tensor { dim: self.dim, valence: self.valence, data: self.data.iter().map(|a| a * factor).collect() }
    }

    /// Sum of squares of all entries.
    pub fn sum_of_squares(&self) -> Rational {
        self.data.iter().filter(|v| !v.is_zero()).map(|v| v * v).sum()
    }

    /// First index tuples where `self` and `other` differ, with both values.
    pub fn differences(&self, other: &Tensor, limit: usize) -> Result<Vec<(Vec<usize>, Rational, Rational)>> {
        self.expect_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .take(limit)
            .map(|(f, (a, b))| (self.unflatten(f), a.clone(), b.clone()))
            .collect())
    }

    /// Evaluates the multilinear form on the given vectors (one per slot).
    pub fn apply(&self, vectors: &[&[Rational]]) -> Rational {
        assert_eq!(vectors.len(), self.valence);
        let mut acc = Rational::zero();
        'entries: for (f, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = self.unflatten(f);
            let mut term = v.clone();
            for (slot, &i) in idx.iter().enumerate() {
                let x = &vectors[slot][i];
                if x.is_zero() {
                    continue 'entries;
                }
                term *= x;
            }
            acc += term;
        }
        acc
    }

    /// Fixes the leading slots to the given vectors, leaving a tensor in the remaining slots.
    pub fn partial_apply(&self, vectors: &[&[Rational]]) -> Tensor {
        let k = vectors.len();
        assert!(k <= self.valence);
        let rest = self.valence - k;
        let mut out = Tensor::zeros(self.dim, rest);
        let block = self.dim.pow(rest as u32);
        for (f, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = self.unflatten(f);
            let mut term = v.clone();
            let mut skip = false;
            for (slot, x) in vectors.iter().enumerate() {
                let x = &x[idx[slot]];
                if x.is_zero() {
                    skip = true;
                    break;
                }
                term *= x;
            }
            if !skip {
                out.data[f % block] += term;
            }
        }
        out
    }

    fn expect_shape(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim || self.valence != other.valence {
            return Err(Error::DimensionMismatch(format!(
                "tensor dim {} valence {} vs dim {} valence {}",
                self.dim, self.valence, other.dim, other.valence
            )));
        }
        Ok(())
    }

    pub(crate) fn expect_valence(&self, expected: usize) -> Result<()> {
        if self.valence != expected {
            return Err(Error::WrongValence { expected, actual: self.valence });
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor(dim={}, valence={}, nonzero={{", self.dim, self.valence)?;
        for (k, (idx, v)) in self.nonzero_entries().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{idx:?}: {v}")?;
        }
        write!(f, "}})")
    }
}

/// Linear map between coordinate spaces, stored as a `target × source` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n))
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap::new(self.matrix.mul(&inner.matrix)?))
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        Ok(LinearMap::new(self.matrix.inverse()?))
    }
}

/// `(L*T)(x_1, .., x_r) = T(L x_1, .., L x_r)`.
pub fn pullback(t: &Tensor, l: &LinearMap) -> Result<Tensor> {
    if t.dim() != l.target_dim() {
        return Err(Error::DimensionMismatch(format!("tensor dimension {} but map target {}", t.dim(), l.target_dim())));
    }
    let m = l.matrix();
    let (src, tgt) = (l.source_dim(), l.target_dim());
    // nonzero entries of each column of L: column a -> [(b, L_ba)]
    let cols: Vec<Vec<(usize, Rational)>> =
        (0..src).map(|a| (0..tgt).filter(|&b| !m.get(b, a).is_zero()).map(|b| (b, m.get(b, a).clone())).collect()).collect();
    // Transform one slot at a time: each fiber along the slot is multiplied by Lᵀ.
    let valence = t.valence();
    let mut shape = vec![tgt; valence];
    let mut data: Vec<Rational> = t.data.clone();
    for slot in 0..valence {
        let mut new_shape = shape.clone();
        new_shape[slot] = src;
        let new_len: usize = new_shape.iter().product();
        let mut out = vec![Rational::zero(); new_len];
        let inner: usize = shape[slot + 1..].iter().product();
        let outer: usize = shape[..slot].iter().product();
        let mut fiber = Vec::with_capacity(tgt);
        for o in 0..outer {
            for i in 0..inner {
                fiber.clear();
                fiber.extend((0..tgt).map(|b| &data[(o * tgt + b) * inner + i]));
                if fiber.iter().all(|x| x.is_zero()) {
                    continue;
                }
                for (a, col) in cols.iter().enumerate() {
                    let mut acc = DotAccumulator::new();
                    for (b, lba) in col {
                        if !fiber[*b].is_zero() {
                            acc.add_product(fiber[*b], lba);
                        }
                    }
                    out[(o * src + a) * inner + i] = acc.finish();
                }
            }
        }
        data = out;
        shape = new_shape;
    }
    Ok(Tensor { dim: src, valence, data })
}

/// Contracts slots `p` and `q` against `metric_inverse`:
/// `C(..) = Σ_{a,b} h^{ab} T(.., a, .., b, ..)`.
pub fn contract(t: &Tensor, metric_inverse: &Matrix, slots: (usize, usize)) -> Result<Tensor> {
    let (p, q) = slots;
    let r = t.valence();
    for s in [p, q] {
        if s >= r {
            return Err(Error::SlotOutOfRange(s));
        }
    }
    if p == q {
        return Err(Error::SlotOutOfRange(q));
    }
    if metric_inverse.rows() != t.dim() || metric_inverse.cols() != t.dim() {
        return Err(Error::DimensionMismatch("metric inverse does not match tensor dimension".into()));
    }
    let mut out = Tensor::zeros(t.dim(), r - 2);
    let mut rest = Vec::with_capacity(r - 2);
    for (idx, v) in t.nonzero_entries() {
        let h = metric_inverse.get(idx[p], idx[q]);
        if h.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(idx.iter().enumerate().filter(|(s, _)| *s != p && *s != q).map(|(_, &i)| i));
        out.add_at(&rest, &(v * h));
    }
    Ok(out)
}

/// Checks `R(x,y,z,w) = R(z,w,x,y) = −R(y,x,z,w)` entrywise.
pub fn check_pair_symmetries(r: &Tensor) -> Result<Vec<Violation>> {
    r.expect_valence(4)?;
    let mut out = Vec::new();
    for flat in 0..r.len() {
        let i = r.unflatten(flat);
        let v = r.get_flat(flat);
        let swapped = r.get(&[i[2], i[3], i[0], i[1]]);
        if v != swapped {
            out.push(Violation { index: i.clone(), identity: "pair-swap", lhs: v.clone(), rhs: swapped.clone() });
        }
        let anti = -r.get(&[i[1], i[0], i[2], i[3]]);
        if *v != anti {
            out.push(Violation { index: i, identity: "antisymmetry", lhs: v.clone(), rhs: anti });
        }
        if out.len() >= MAX_VIOLATIONS {
            break;
        }
    }
    out.truncate(MAX_VIOLATIONS);
    Ok(out)
}

/// Checks `R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0` entrywise.
pub fn check_first_bianchi(r: &Tensor) -> Result<Vec<Violation>> {
    r.expect_valence(4)?;
    let mut out = Vec::new();
    for flat in 0..r.len() {
        let i = r.unflatten(flat);
        let sum = r.get_flat(flat) + r.get(&[i[1], i[2], i[0], i[3]]) + r.get(&[i[2], i[0], i[1], i[3]]);
        if !sum.is_zero() {
            out.push(Violation { index: i, identity: "first-bianchi", lhs: sum, rhs: Rational::zero() });
            if out.len() >= MAX_VIOLATIONS {
                break;
            }
        }
    }
    Ok(out)
}

/// Every index tuple obtained from `index` by the pair symmetries, with the
/// sign relating its entry to the entry at `index`.
pub fn z2_orbit(index: [usize; 4]) -> Vec<([usize; 4], i8)> {
    let [a, b, c, d] = index;
    let mut out: Vec<([usize; 4], i8)> = Vec::with_capacity(8);
    for (idx, sign) in [
        ([a, b, c, d], 1),
        ([b, a, c, d], -1),
        ([a, b, d, c], -1),
        ([b, a, d, c], 1),
        ([c, d, a, b], 1),
        ([d, c, a, b], -1),
        ([c, d, b, a], -1),
        ([d, c, b, a], 1),
    ] {
        if !out.iter().any(|(i, _)| *i == idx) {
            out.push((idx, sign));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Matrix};

    #[test]
    fn zero_tensor_is_algebraic_curvature() {
        let z = Tensor::zeros(4, 4);
        assert!(check_pair_symmetries(&z).unwrap().is_empty());
        assert!(check_first_bianchi(&z).unwrap().is_empty());
    }

    #[test]
    fn lone_entry_breaks_symmetry() {
        let mut t = Tensor::zeros(4, 4);
        t.set(&[0, 1, 2, 3], int(1));
        assert!(!check_pair_symmetries(&t).unwrap().is_empty());
    }

    #[test]
    fn planted_bianchi_violation() {
        // A Z2-symmetric tensor built from a single orbit (0,1,2,3) violates Bianchi.
        let mut t = Tensor::zeros(4, 4);
        for (idx, sign) in z2_orbit([0, 1, 2, 3]) {
            t.set(&idx, int(sign as i64));
        }
        assert!(check_pair_symmetries(&t).unwrap().is_empty());
        assert!(!check_first_bianchi(&t).unwrap().is_empty());
    }

    #[test]
    fn wrong_valence_rejected() {
        let t = Tensor::zeros(3, 3);
        assert_eq!(check_first_bianchi(&t), Err(Error::WrongValence { expected: 4, actual: 3 }));
        assert_eq!(check_pair_symmetries(&t), Err(Error::WrongValence { expected: 4, actual: 3 }));
    }

    #[test]
    fn pullback_identity_and_scaling() {
        let t = Tensor::from_fn(3, 4, |i| int((i[0] * 27 + i[1] * 9 + i[2] * 3 + i[3]) as i64 - 40));
        assert_eq!(pullback(&t, &LinearMap::identity(3)).unwrap(), t);
        let doubled = pullback(&t, &LinearMap::new(Matrix::identity(3).scale(&int(2)))).unwrap();
        assert_eq!(doubled, t.scale(&int(16)));
    }

    #[test]
    fn pullback_dimension_mismatch() {
        let t = Tensor::zeros(3, 2);
        assert!(matches!(pullback(&t, &LinearMap::identity(2)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn pullback_changes_dimension() {
        let g = Tensor::from_matrix(&Matrix::identity(3));
        // inclusion of R^2 as the first two coordinates
        let inc = LinearMap::new(Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]));
        assert_eq!(pullback(&g, &inc).unwrap(), Tensor::from_matrix(&Matrix::identity(2)));
    }

    #[test]
    fn contract_examples() {
        let id = Tensor::from_matrix(&Matrix::identity(5));
        let tr = contract(&id, &Matrix::identity(5), (0, 1)).unwrap();
        assert_eq!(tr.valence(), 0);
        assert_eq!(tr.get(&[]), &int(5));
        assert!(contract(&Tensor::zeros(3, 4), &Matrix::identity(3), (0, 3)).unwrap().is_zero());
        assert_eq!(contract(&id, &Matrix::identity(5), (0, 2)), Err(Error::SlotOutOfRange(2)));
    }

    #[test]
    fn apply_matches_entries() {
        let t = Tensor::from_fn(2, 2, |i| int((i[0] * 2 + i[1]) as i64));
        let e0 = [int(1), int(0)];
        let e1 = [int(0), int(1)];
        assert_eq!(t.apply(&[&e0, &e1]), int(1));
        assert_eq!(t.partial_apply(&[&e1]).get(&[1]), &int(3));
    }
}
