//! Generic tensor calculus for polynomial metrics.
//!
//! Given a metric whose components are polynomials in the coordinates and
//! whose determinant is a nonzero constant, every derived object (inverse
//! metric, Christoffel symbols, curvature, iterated covariant derivatives,
//! Ricci) is again polynomial, so all identities here are exact polynomial
//! identities. This engine knows nothing about any particular metric family;
//! it is the oracle the closed forms are checked against.
//!
//! Conventions: `R(x,y) = ∇_x∇_y − ∇_y∇_x − ∇_[x,y]`, `R(x,y,z,w) = g(R(x,y)z, w)`,
//! and the derivative slot of `∇T` is appended last.

#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use crate::algebra::{int, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::tensor::{Tensor, MAX_VALENCE};

/// Dense array of polynomials, all slots covariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorField {
    dim: usize,
    valence: usize,
    nvars: usize,
    data: Vec<Polynomial>,
}

impl TensorField {
    pub fn zeros(dim: usize, valence: usize, nvars: usize) -> Self {
        Self { dim, valence, nvars, data: vec![Polynomial::zero(nvars); dim.pow(valence as u32)] }
    }

    pub fn from_fn(dim: usize, valence: usize, nvars: usize, mut f: impl FnMut(&[usize]) -> Polynomial) -> Self {
        let mut t = Self::zeros(dim, valence, nvars);
        for flat in 0..t.data.len() {
            let idx = t.unflatten(flat);
            t.data[flat] = f(&idx);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> usize {
        self.valence
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn flat(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.valence, "index arity mismatch");
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.valence];
        for slot in (0..self.valence).rev() {
            idx[slot] = flat % self.dim;
            flat /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Polynomial {
        &self.data[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], p: Polynomial) {
        let f = self.flat(idx);
        self.data[f] = p;
    }

    fn entry_mut(&mut self, idx: &[usize]) -> &mut Polynomial {
        let f = self.flat(idx);
        &mut self.data[f]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Polynomial::is_zero)
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Vec<usize>, &Polynomial)> + '_ {
        self.data.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(f, p)| (self.unflatten(f), p))
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|p| !p.is_zero()).count()
    }

    pub fn eval(&self, point: &[Rational]) -> Tensor {
        let mut t = Tensor::zeros(self.dim, self.valence);
        for (f, p) in self.data.iter().enumerate() {
            if !p.is_zero() {
                t.set(&self.unflatten(f), p.eval(point));
            }
        }
        t
    }

    /// First index tuples where the fields differ as polynomials.
    pub fn differences(&self, other: &TensorField, limit: usize) -> Vec<(Vec<usize>, Polynomial, Polynomial)> {
        assert_eq!((self.dim, self.valence), (other.dim, other.valence), "field shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .take(limit)
            .map(|(f, (a, b))| (self.unflatten(f), a.clone(), b.clone()))
            .collect()
    }
}

/// Symmetric matrix of polynomials with constant nonzero determinant and its
/// exact polynomial inverse.
#[derive(Debug, Clone)]
pub struct MetricField {
    names: Vec<String>,
    g: Vec<Vec<Polynomial>>,
    inv: Vec<Vec<Polynomial>>,
    det: Rational,
}

impl MetricField {
    /// Validates symmetry and constant determinant, and computes the inverse.
    pub fn new(names: Vec<String>, g: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = names.len();
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("metric must be {n}x{n}")));
        }
        if g.iter().flatten().any(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch("metric entries must be polynomials in the coordinates".into()));
        }
        for r in 0..n {
            for c in r + 1..n {
                if g[r][c] != g[c][r] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let (inv, det) = invert(&g)?;
        // g · g⁻¹ = I as a polynomial identity
        for r in 0..n {
            for c in 0..n {
                let mut acc = Polynomial::zero(n);
                for k in 0..n {
                    acc.add_product(&g[r][k], &inv[k][c]);
                }
                let expected = if r == c { Polynomial::one(n) } else { Polynomial::zero(n) };
                if acc != expected {
                    return Err(Error::NonConstantDeterminant("inverse check failed".into()));
                }
            }
        }
        Ok(Self { names, g, inv, det })
    }

    /// Metric with constant entries.
    pub fn constant(names: Vec<String>, m: &crate::algebra::Matrix) -> Result<Self> {
        let n = names.len();
        let g = (0..n).map(|r| (0..n).map(|c| Polynomial::constant(n, m.get(r, c).clone())).collect()).collect();
        Self::new(names, g)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.g[r][c]
    }

    pub fn inverse(&self, r: usize, c: usize) -> &Polynomial {
        &self.inv[r][c]
    }

    pub fn determinant(&self) -> &Rational {
        &self.det
    }

    pub fn as_field(&self) -> TensorField {
        let n = self.dim();
        TensorField::from_fn(n, 2, n, |i| self.g[i[0]][i[1]].clone())
    }

    pub fn eval(&self, point: &[Rational]) -> crate::algebra::Matrix {
        let n = self.dim();
        crate::algebra::Matrix::from_fn(n, n, |r, c| self.g[r][c].eval(point))
    }
}

/// Inverse and determinant of a polynomial matrix with constant determinant.
///
/// Gauss-Jordan elimination pivots only on nonzero constant entries, so every
/// step stays polynomial. If no constant pivot remains, the leftover block is
/// inverted with the Faddeev-LeVerrier recurrence, which divides only by
/// integers and by its constant term.
fn invert(a: &[Vec<Polynomial>]) -> Result<(Vec<Vec<Polynomial>>, Rational)> {
    let n = a.len();
    let nv = a.first().map_or(0, |r| r.first().map_or(0, Polynomial::nvars));
    let mut left: Vec<Vec<Polynomial>> = a.to_vec();
    let mut right: Vec<Vec<Polynomial>> =
        (0..n).map(|r| (0..n).map(|c| if r == c { Polynomial::one(nv) } else { Polynomial::zero(nv) }).collect()).collect();
    let mut pivot_col: Vec<Option<usize>> = vec![None; n];
    let mut col_used = vec![false; n];
    let mut det = Rational::one();

    loop {
        let found = (0..n).filter(|&r| pivot_col[r].is_none()).find_map(|r| {
            (0..n).filter(|&c| !col_used[c]).find_map(|c| left[r][c].as_constant().filter(|k| !k.is_zero()).map(|k| (r, c, k)))
        });
        let Some((r, c, k)) = found else { break };
        let recip = k.recip();
        for p in left[r].iter_mut().chain(right[r].iter_mut()) {
            *p = p.scale(&recip);
        }
        det *= &k;
        for o in 0..n {
            if o == r || left[o][c].is_zero() {
                continue;
            }
            let factor = -&left[o][c];
            let (lr, rr) = (left[r].clone(), right[r].clone());
            for (dst, src) in left[o].iter_mut().zip(&lr) {
                dst.add_product(&factor, src);
            }
            for (dst, src) in right[o].iter_mut().zip(&rr) {
                dst.add_product(&factor, src);
            }
        }
        pivot_col[r] = Some(c);
        col_used[c] = true;
    }

    let rem_rows: Vec<usize> = (0..n).filter(|&r| pivot_col[r].is_none()).collect();
    if !rem_rows.is_empty() {
        let rem_cols: Vec<usize> = (0..n).filter(|&c| !col_used[c]).collect();
        let block: Vec<Vec<Polynomial>> = rem_rows.iter().map(|&r| rem_cols.iter().map(|&c| left[r][c].clone()).collect()).collect();
        let (block_inv, block_det) = faddeev_leverrier(&block)?;
        det *= &block_det;
        let old: Vec<(Vec<Polynomial>, Vec<Polynomial>)> = rem_rows.iter().map(|&r| (left[r].clone(), right[r].clone())).collect();
        for (q, &r) in rem_rows.iter().enumerate() {
            let mut nl = vec![Polynomial::zero(nv); n];
            let mut nr = vec![Polynomial::zero(nv); n];
            for (k, (ol, or)) in old.iter().enumerate() {
                let f = &block_inv[q][k];
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    nl[c].add_product(f, &ol[c]);
                    nr[c].add_product(f, &or[c]);
                }
            }
            left[r] = nl;
            right[r] = nr;
            pivot_col[r] = Some(rem_cols[q]);
        }
        for p in 0..n {
            if rem_rows.contains(&p) {
                continue;
            }
            for (q, &c) in rem_cols.iter().enumerate() {
                if left[p][c].is_zero() {
                    continue;
                }
                let factor = -&left[p][c];
                let r = rem_rows[q];
                let (lr, rr) = (left[r].clone(), right[r].clone());
                for (dst, src) in left[p].iter_mut().zip(&lr) {
                    dst.add_product(&factor, src);
                }
                for (dst, src) in right[p].iter_mut().zip(&rr) {
                    dst.add_product(&factor, src);
                }
            }
        }
    }

    // left is now a permutation matrix row r -> column pivot_col[r]
    let perm: Vec<usize> = pivot_col.iter().map(|c| c.expect("every row pivoted")).collect();
    if permutation_is_odd(&perm) {
        det = -det;
    }
    let mut inv = vec![Vec::new(); n];
    for (r, &c) in perm.iter().enumerate() {
        inv[c] = right[r].clone();
    }
    Ok((inv, det))
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}

/// `(A⁻¹, det A)` via the characteristic-polynomial recurrence; requires a
/// nonzero constant determinant.
fn faddeev_leverrier(a: &[Vec<Polynomial>]) -> Result<(Vec<Vec<Polynomial>>, Rational)> {
    let k = a.len();
    let nv = a[0][0].nvars();
    let matmul = |x: &[Vec<Polynomial>], y: &[Vec<Polynomial>]| -> Vec<Vec<Polynomial>> {
        (0..k)
            .map(|r| {
                (0..k)
                    .map(|c| {
                        let mut acc = Polynomial::zero(nv);
                        for m in 0..k {
                            acc.add_product(&x[r][m], &y[m][c]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let trace = |x: &[Vec<Polynomial>]| -> Polynomial {
        let mut acc = Polynomial::zero(nv);
        for (i, row) in x.iter().enumerate() {
            acc.add_scaled(&row[i], &Rational::one());
        }
        acc
    };
    // M_1 = I, c_{k-1} = -tr(A); M_j = A M_{j-1} + c_{k-j+1} I, c_{k-j} = -tr(A M_j)/j
    let mut m: Vec<Vec<Polynomial>> =
        (0..k).map(|r| (0..k).map(|c| if r == c { Polynomial::one(nv) } else { Polynomial::zero(nv) }).collect()).collect();
    let mut c = -&trace(&matmul(a, &m));
    for j in 2..=k {
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i].add_scaled(&c, &Rational::one());
        }
        m = next;
        c = trace(&matmul(a, &m)).scale(&-int(j as i64).recip());
    }
    let c0 = c.as_constant().filter(|x| !x.is_zero()).ok_or_else(|| Error::NonConstantDeterminant(c.to_string()))?;
    let factor = -c0.recip();
    let inv = m.iter().map(|row| row.iter().map(|p| p.scale(&factor)).collect()).collect();
    let det = if k.is_multiple_of(2) { c0 } else { -c0 };
    Ok((inv, det))
}

/// Christoffel symbols of the Levi-Civita connection.
#[derive(Debug, Clone)]
pub struct ChristoffelField {
    dim: usize,
    /// `g(∇_{∂i} ∂j, ∂l)` at `[i][j][l]`.
    first: TensorField,
    /// `Γ^k_{ij}` stored at `[k][i][j]`.
    second: TensorField,
}

impl ChristoffelField {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ^k_{ij}`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &Polynomial {
        self.second.get(&[k, i, j])
    }

    /// `g(∇_{∂i}∂j, ∂l)`.
    pub fn first_kind(&self, i: usize, j: usize, l: usize) -> &Polynomial {
        self.first.get(&[i, j, l])
    }

    pub fn first_kind_field(&self) -> &TensorField {
        &self.first
    }

    /// Field with `Γ^k_{ij}` at index `[k, i, j]`.
    pub fn second_kind_field(&self) -> &TensorField {
        &self.second
    }

    pub fn is_torsion_free(&self) -> bool {
        let n = self.dim;
        (0..n).all(|k| (0..n).all(|i| (i + 1..n).all(|j| self.get(k, i, j) == self.get(k, j, i))))
    }

    /// Nonzero symbols grouped by upper index: `by_upper[m] = [(b, a, Γ^m_{ba})]`.
    fn by_upper(&self) -> Vec<Vec<(usize, usize, Polynomial)>> {
        let mut out = vec![Vec::new(); self.dim];
        for (idx, p) in self.second.nonzero_entries() {
            out[idx[0]].push((idx[1], idx[2], p.clone()));
        }
        out
    }
}

/// `Γ^k_{ij} = ½ Σ_l g^{kl}(∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij})`.
pub fn christoffel_field(g: &MetricField) -> ChristoffelField {
    let n = g.dim();
    let half = Rational::new(1.into(), 2.into());
    // dg[l][i][j] = ∂_l g_ij
    let dg: Vec<Vec<Vec<Polynomial>>> =
        (0..n).map(|l| (0..n).map(|i| (0..n).map(|j| g.get(i, j).partial(l)).collect()).collect()).collect();
    let first = TensorField::from_fn(n, 3, n, |idx| {
        let (i, j, l) = (idx[0], idx[1], idx[2]);
        let mut p = &dg[i][j][l] + &dg[j][i][l];
        p.add_scaled(&dg[l][i][j], &-Rational::one());
        p.scale(&half)
    });
    let mut second = TensorField::zeros(n, 3, n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let f = first.get(&[i, j, l]);
                if f.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let h = g.inverse(k, l);
                    if !h.is_zero() {
                        second.entry_mut(&[k, i, j]).add_product(h, f);
                    }
                }
            }
        }
    }
    ChristoffelField { dim: n, first, second }
}

/// Fully lowered curvature `R(∂i,∂j,∂k,∂w) = g(R(∂i,∂j)∂k, ∂w)`.
pub fn curvature_field(g: &MetricField, gamma: &ChristoffelField) -> TensorField {
    let n = g.dim();
    // R^l_{ijk} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^m_{jk} Γ^l_{im} − Γ^m_{ik} Γ^l_{jm}, stored [i][j][k][l]
    let mut up = TensorField::zeros(n, 4, n);
    for (idx, p) in gamma.second.nonzero_entries() {
        let (l, a, k) = (idx[0], idx[1], idx[2]);
        for i in 0..n {
            let d = p.partial(i);
            if d.is_zero() || i == a {
                continue;
            }
            // ∂_i Γ^l_{ak} contributes +d at (i,a,k,l) and −d at (a,i,k,l)
            up.entry_mut(&[i, a, k, l]).add_scaled(&d, &Rational::one());
            up.entry_mut(&[a, i, k, l]).add_scaled(&d, &-Rational::one());
        }
    }
    let by_upper = gamma.by_upper();
    for (idx, gmjk) in gamma.second.nonzero_entries() {
        // Γ^m_{jk} Γ^l_{im} at (i,j,k,l) and its negative at (j,i,k,l)
        let (m, j, k) = (idx[0], idx[1], idx[2]);
        for l in 0..n {
            for (i, mm, glim) in by_upper[l].iter().map(|(b, a, p)| (*b, *a, p)) {
                if mm != m || i == j {
                    continue;
                }
                let prod = gmjk * glim;
                up.entry_mut(&[i, j, k, l]).add_scaled(&prod, &Rational::one());
                up.entry_mut(&[j, i, k, l]).add_scaled(&prod, &-Rational::one());
            }
        }
    }
    let mut low = TensorField::zeros(n, 4, n);
    for (idx, p) in up.nonzero_entries() {
        let l = idx[3];
        for w in 0..n {
            let gl = g.get(l, w);
            if !gl.is_zero() {
                low.entry_mut(&[idx[0], idx[1], idx[2], w]).add_product(gl, p);
            }
        }
    }
    low
}

/// `∇T(a_1..a_r; b) = ∂_b T(a) − Σ_p Σ_m Γ^m_{b a_p} T(a_1..m..a_r)`.
/// Refuses results with valence above `max_valence`.
pub fn covariant_derivative_field(t: &TensorField, gamma: &ChristoffelField, max_valence: usize) -> Result<TensorField> {
    let r = t.valence();
    let limit = max_valence.min(MAX_VALENCE);
    if r + 1 > limit {
        return Err(Error::ValenceLimit { requested: r + 1, limit });
    }
    let n = t.dim();
    let mut out = TensorField::zeros(n, r + 1, t.nvars());
    let by_upper = gamma.by_upper();
    let mut idx_out = vec![0; r + 1];
    for (idx, p) in t.nonzero_entries() {
        idx_out[..r].copy_from_slice(&idx);
        for b in 0..n {
            let d = p.partial(b);
            if !d.is_zero() {
                idx_out[r] = b;
                out.entry_mut(&idx_out).add_scaled(&d, &Rational::one());
            }
        }
        for slot in 0..r {
            let m = idx[slot];
            for (b, a, gm) in &by_upper[m] {
                idx_out[..r].copy_from_slice(&idx);
                idx_out[slot] = *a;
                idx_out[r] = *b;
                let prod = gm * p;
                out.entry_mut(&idx_out).add_scaled(&prod, &-Rational::one());
            }
        }
    }
    Ok(out)
}

/// `Ric(x,y) = tr(z ↦ R(z,x)y) = Σ_{z,w} g^{zw} R(z,x,y,w)`.
pub fn ricci_field(r: &TensorField, g: &MetricField) -> Result<TensorField> {
    if r.valence() != 4 {
        return Err(Error::WrongValence { expected: 4, actual: r.valence() });
    }
    let n = r.dim();
    let mut out = TensorField::zeros(n, 2, r.nvars());
    for (idx, p) in r.nonzero_entries() {
        let h = g.inverse(idx[0], idx[3]);
        if !h.is_zero() {
            out.entry_mut(&[idx[1], idx[2]]).add_product(h, p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    /// `[[1 + x², x], [x, 1]]`, determinant 1.
    fn toy() -> MetricField {
        let x = Polynomial::var(2, 0);
        let one = Polynomial::one(2);
        let g00 = &one + &(&x * &x);
        MetricField::new(names(2), vec![vec![g00, x.clone()], vec![x, one]]).unwrap()
    }

    #[test]
    fn constant_metric_is_flat() {
        let m = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]);
        let g = MetricField::constant(names(3), &m).unwrap();
        let gamma = christoffel_field(&g);
        assert!(gamma.second_kind_field().is_zero());
        let r = curvature_field(&g, &gamma);
        assert!(r.is_zero());
        assert!(ricci_field(&r, &g).unwrap().is_zero());
        assert_eq!(g.determinant(), &int(1));
    }

    #[test]
    fn faddeev_path_inverts_without_constant_pivots() {
        // [[1+x, x], [x, x-1]] has determinant -1 and no constant entry.
        let x = Polynomial::var(2, 0);
        let one = Polynomial::one(2);
        let a = vec![vec![&one + &x, x.clone()], vec![x.clone(), &x - &one]];
        let g = MetricField::new(names(2), a).unwrap();
        assert_eq!(g.determinant(), &int(-1));
        assert_eq!(g.inverse(0, 0), &(&one - &x));
    }

    #[test]
    fn non_constant_determinant_rejected() {
        let x = Polynomial::var(2, 0);
        let a = vec![vec![x, Polynomial::zero(2)], vec![Polynomial::zero(2), Polynomial::one(2)]];
        assert!(matches!(MetricField::new(names(2), a), Err(Error::NonConstantDeterminant(_))));
    }

    #[test]
    fn non_symmetric_rejected() {
        let x = Polynomial::var(2, 0);
        let a = vec![vec![Polynomial::one(2), x], vec![Polynomial::zero(2), Polynomial::one(2)]];
        assert!(matches!(MetricField::new(names(2), a), Err(Error::NotSymmetric)));
    }

    #[test]
    fn coordinate_change_of_flat_metric_is_flat() {
        // dx² + (dy + x dx)² has nonzero Christoffel symbols but no curvature.
        let g = toy();
        let gamma = christoffel_field(&g);
        assert!(gamma.is_torsion_free());
        assert!(!gamma.second_kind_field().is_zero());
        assert!(curvature_field(&g, &gamma).is_zero());
    }

    #[test]
    fn walker_toy_is_not_ricci_flat() {
        // y² dx² + 2 dx dy: determinant -1, R_0101 = 1 and Ric = g.
        let y = Polynomial::var(2, 1);
        let g = MetricField::new(names(2), vec![vec![&y * &y, Polynomial::one(2)], vec![Polynomial::one(2), Polynomial::zero(2)]]).unwrap();
        let gamma = christoffel_field(&g);
        let r = curvature_field(&g, &gamma);
        assert_eq!(r.get(&[0, 1, 0, 1]).as_constant(), Some(int(1)));
        assert_eq!(ricci_field(&r, &g).unwrap(), g.as_field());
    }

    #[test]
    fn metric_compatibility() {
        let g = toy();
        let gamma = christoffel_field(&g);
        assert!(covariant_derivative_field(&g.as_field(), &gamma, 7).unwrap().is_zero());
    }

    #[test]
    fn valence_guard() {
        let g = toy();
        let gamma = christoffel_field(&g);
        let r = curvature_field(&g, &gamma);
        assert_eq!(covariant_derivative_field(&r, &gamma, 4), Err(Error::ValenceLimit { requested: 5, limit: 4 }));
    }
}
