//! The model space `V_3s = (R^{3s}, g_3s, R_3s)`.
//!
//! Frame order throughout the crate is `U_1..U_s, T_1..T_s, V_1..V_s`, so
//! `U_i`, `T_i`, `V_i` sit at positions `i`, `s + i`, `2s + i` (0-based).
//! The nonzero metric entries are `g(U_i,V_i) = 1` and `g(T_i,T_i) = −1`; the
//! curvature tensor is the pair-symmetry orbit of `R(U_i,U_j,U_j,T_i) = 1`
//! for `i ≠ j`.

use num_traits::{One, Zero};

use crate::algebra::{cayley_orthogonal, int, rat, Matrix, Rational, SeededSampler};
use crate::error::{Error, Result};
use crate::tensor::{pullback, z2_orbit, LinearMap, Tensor, Violation, MAX_VIOLATIONS};

/// Position of `U_i` in the frame.
pub fn u_index(_s: usize, i: usize) -> usize {
    i
}

/// Position of `T_i` in the frame.
pub fn t_index(s: usize, i: usize) -> usize {
    s + i
}

/// Position of `V_i` in the frame.
pub fn v_index(s: usize, i: usize) -> usize {
    2 * s + i
}

pub fn unit_vector(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::one();
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpace {
    s: usize,
    g: Matrix,
    r: Tensor,
}

/// Builds `V_3s`. The curvature orbit is expanded explicitly, so the stored
/// tensor already satisfies every pair symmetry.
pub fn build_model(s: usize) -> Result<ModelSpace> {
    if s < 2 {
        return Err(Error::RankTooSmall(s));
    }
    let n = 3 * s;
    let mut g = Matrix::zeros(n, n);
    for i in 0..s {
        g.set(u_index(s, i), v_index(s, i), int(1));
        g.set(v_index(s, i), u_index(s, i), int(1));
        g.set(t_index(s, i), t_index(s, i), int(-1));
    }
    let mut r = Tensor::zeros(n, 4);
    for i in 0..s {
        for j in 0..s {
            if i == j {
                continue;
            }
            let base = [u_index(s, i), u_index(s, j), u_index(s, j), t_index(s, i)];
            for (idx, sign) in z2_orbit(base) {
                r.set(&idx, int(sign as i64));
            }
        }
    }
    Ok(ModelSpace { s, g, r })
}

impl ModelSpace {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        3 * self.s
    }

    pub fn metric(&self) -> &Matrix {
        &self.g
    }

    pub fn curvature(&self) -> &Tensor {
        &self.r
    }

    pub fn metric_tensor(&self) -> Tensor {
        Tensor::from_matrix(&self.g)
    }

    pub fn u(&self, i: usize) -> Vec<Rational> {
        unit_vector(self.dim(), u_index(self.s, i))
    }

    pub fn t(&self, i: usize) -> Vec<Rational> {
        unit_vector(self.dim(), t_index(self.s, i))
    }

    pub fn v(&self, i: usize) -> Vec<Rational> {
        unit_vector(self.dim(), v_index(self.s, i))
    }

    /// `Z_i^+ = U_i + ½V_i`, a unit spacelike vector.
    pub fn z_plus(&self, i: usize) -> Vec<Rational> {
        let mut z = self.u(i);
        z[v_index(self.s, i)] = rat(1, 2);
        z
    }

    /// `Z_i^− = U_i − ½V_i`, a unit timelike vector.
    pub fn z_minus(&self, i: usize) -> Vec<Rational> {
        let mut z = self.u(i);
        z[v_index(self.s, i)] = rat(-1, 2);
        z
    }
}

/// An ordered frame `Ũ_1..Ũ_s, T̃_1..T̃_s, Ṽ_1..Ṽ_s` of `R^{3s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelBasis {
    s: usize,
    vectors: Vec<Vec<Rational>>,
}

impl ModelBasis {
    pub fn new(s: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let n = 3 * s;
        if vectors.len() != n || vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!("a basis of R^{n} needs {n} vectors of length {n}")));
        }
        Ok(Self { s, vectors })
    }

    pub fn standard(s: usize) -> Self {
        let n = 3 * s;
        Self { s, vectors: (0..n).map(|k| unit_vector(n, k)).collect() }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn u(&self, i: usize) -> &[Rational] {
        &self.vectors[u_index(self.s, i)]
    }

    pub fn t(&self, i: usize) -> &[Rational] {
        &self.vectors[t_index(self.s, i)]
    }

    pub fn v(&self, i: usize) -> &[Rational] {
        &self.vectors[v_index(self.s, i)]
    }

    /// Matrix whose columns are the frame vectors (frame coordinates → ambient).
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors)
    }

    pub fn as_map(&self) -> LinearMap {
        LinearMap::new(self.matrix())
    }

    pub fn is_independent(&self) -> bool {
        self.matrix().rank() == 3 * self.s
    }

    /// Coordinates of an ambient vector in this frame.
    pub fn coordinates(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.matrix().solve(x)
    }

    pub(crate) fn with_vectors(&self, vectors: Vec<Vec<Rational>>) -> Self {
        Self { s: self.s, vectors }
    }
}

/// Differences between the `(g, R)` entries of `ms` read in frame `b` and the
/// defining entries; empty iff `b` is normalized.
pub fn validate_normalized_basis(ms: &ModelSpace, b: &ModelBasis) -> Result<Vec<Violation>> {
    if b.s() != ms.s() {
        return Err(Error::DimensionMismatch(format!("basis for s={} against model s={}", b.s(), ms.s())));
    }
    let map = b.as_map();
    let mut out = Vec::new();
    if !b.is_independent() {
        out.push(Violation { index: vec![], identity: "independence", lhs: int(0), rhs: int(1) });
        return Ok(out);
    }
    let g = pullback(&ms.metric_tensor(), &map)?;
    for (idx, actual, expected) in g.differences(&ms.metric_tensor(), MAX_VIOLATIONS)? {
        out.push(Violation { index: idx, identity: "metric", lhs: actual, rhs: expected });
    }
    let r = pullback(ms.curvature(), &map)?;
    for (idx, actual, expected) in r.differences(ms.curvature(), MAX_VIOLATIONS)? {
        out.push(Violation { index: idx, identity: "curvature", lhs: actual, rhs: expected });
    }
    out.truncate(MAX_VIOLATIONS);
    Ok(out)
}

/// Diagonal `O(s)` action: `U_i ↦ Σ_j ξ_ij U_j`, and the same on the `T` and `V` blocks.
pub fn os_action(xi: &Matrix, b: &ModelBasis) -> Result<ModelBasis> {
    let s = b.s();
    if xi.rows() != s || xi.cols() != s {
        return Err(Error::DimensionMismatch(format!("ξ must be {s}x{s}")));
    }
    if !xi.is_orthogonal() {
        return Err(Error::NotOrthogonal);
    }
    let n = 3 * s;
    let mut vectors = vec![vec![Rational::zero(); n]; n];
    for block in 0..3 {
        for i in 0..s {
            let out = &mut vectors[block * s + i];
            for j in 0..s {
                let c = xi.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(&b.vectors[block * s + j]) {
                    *o += c * x;
                }
            }
        }
    }
    Ok(b.with_vectors(vectors))
}

/// Random element of `O(s)`: a Cayley rotation composed with a random sign diagonal.
pub fn random_orthogonal(s: usize, sampler: &mut SeededSampler) -> Matrix {
    let q = cayley_orthogonal(&sampler.skew_matrix(s)).expect("skew input");
    let signs: Vec<Rational> = (0..s).map(|_| if sampler.coin() { int(1) } else { int(-1) }).collect();
    Matrix::diagonal(&signs).mul(&q).expect("square")
}

/// The `s = 2` shear `U_i ↦ U_i + β_i T_i + ½β_i² V_i`, `T_i ↦ T_i + β_i V_i`
/// with `β_2 = −β_1`.
pub fn shear(b: &ModelBasis, beta: &Rational) -> Result<ModelBasis> {
    if b.s() != 2 {
        return Err(Error::OutOfRange(format!("the shear family exists only for s = 2, not s = {}", b.s())));
    }
    let betas = [beta.clone(), -beta.clone()];
    let mut vectors = b.vectors.clone();
    for (i, bi) in betas.iter().enumerate() {
        let (u, t, v) = (b.u(i), b.t(i), b.v(i));
        let half_sq = bi * bi / int(2);
        vectors[u_index(2, i)] = (0..6).map(|k| &u[k] + bi * &t[k] + &half_sq * &v[k]).collect();
        vectors[t_index(2, i)] = (0..6).map(|k| &t[k] + bi * &v[k]).collect();
    }
    Ok(b.with_vectors(vectors))
}

/// Seeded normalized basis from random `O(s)` actions, sign flips and (for
/// `s = 2`) shears, each candidate passed through the validator.
pub fn random_normalized_basis(ms: &ModelSpace, sampler: &mut SeededSampler) -> ModelBasis {
    let s = ms.s();
    let mut b = ModelBasis::standard(s);
    let steps = 1 + sampler.index(3);
    for _ in 0..steps {
        let candidate = if s == 2 && sampler.coin() {
            shear(&b, &sampler.nonzero_rational()).expect("s = 2")
        } else {
            os_action(&random_orthogonal(s, sampler), &b).expect("orthogonal")
        };
        if validate_normalized_basis(ms, &candidate).map(|v| v.is_empty()).unwrap_or(false) {
            b = candidate;
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Inertia;
    use crate::tensor::{check_first_bianchi, check_pair_symmetries};

    #[test]
    fn s_one_rejected() {
        assert_eq!(build_model(1), Err(Error::RankTooSmall(1)));
    }

    #[test]
    fn defining_entries_s2() {
        let ms = build_model(2).unwrap();
        let (u1, u2, t1, v1) = (0, 1, 2, 4);
        assert_eq!(ms.metric().get(u1, v1), &int(1));
        assert_eq!(ms.metric().get(t1, t1), &int(-1));
        assert_eq!(ms.curvature().get(&[u1, u2, u2, t1]), &int(1));
        assert_eq!(ms.curvature().get(&[u1, u2, u2, u1]), &int(0));
        assert_eq!(ms.metric().bilinear(&ms.z_plus(0), &ms.z_plus(0)), int(1));
        assert_eq!(ms.metric().bilinear(&ms.z_minus(0), &ms.z_minus(0)), int(-1));
    }

    #[test]
    fn signature_2s_s() {
        for s in 2..=4 {
            let ms = build_model(s).unwrap();
            assert_eq!(ms.metric().symmetric_signature().unwrap(), Inertia { neg: 2 * s, pos: s, zero: 0 });
        }
    }

    #[test]
    fn curvature_is_algebraic() {
        for s in 2..=4 {
            let ms = build_model(s).unwrap();
            assert!(check_pair_symmetries(ms.curvature()).unwrap().is_empty());
            assert!(check_first_bianchi(ms.curvature()).unwrap().is_empty());
        }
    }

    #[test]
    fn standard_basis_is_normalized_and_scaled_is_not() {
        let ms = build_model(2).unwrap();
        assert!(validate_normalized_basis(&ms, &ModelBasis::standard(2)).unwrap().is_empty());
        let mut vecs = ModelBasis::standard(2).vectors().to_vec();
        vecs[0] = vecs[0].iter().map(|x| x * int(2)).collect();
        let bad = ModelBasis::new(2, vecs).unwrap();
        let v = validate_normalized_basis(&ms, &bad).unwrap();
        assert!(v.iter().any(|x| x.identity == "metric" && x.index == vec![0, 4] && x.lhs == int(2)));
    }

    #[test]
    fn dimension_mismatch() {
        let ms = build_model(3).unwrap();
        assert!(matches!(validate_normalized_basis(&ms, &ModelBasis::standard(2)), Err(Error::DimensionMismatch(_))));
        assert!(ModelBasis::new(2, vec![vec![int(0); 6]; 5]).is_err());
    }

    #[test]
    fn os_action_identity_and_sign_flip() {
        let ms = build_model(3).unwrap();
        let b = ModelBasis::standard(3);
        assert_eq!(os_action(&Matrix::identity(3), &b).unwrap(), b);
        let flip = Matrix::diagonal(&[int(-1), int(1), int(1)]);
        assert!(validate_normalized_basis(&ms, &os_action(&flip, &b).unwrap()).unwrap().is_empty());
        let not_orth = Matrix::diagonal(&[int(2), int(1), int(1)]);
        assert_eq!(os_action(&not_orth, &b), Err(Error::NotOrthogonal));
    }

    #[test]
    fn unit_shear_is_normalized() {
        let ms = build_model(2).unwrap();
        let b = shear(&ModelBasis::standard(2), &int(1)).unwrap();
        assert!(validate_normalized_basis(&ms, &b).unwrap().is_empty());
        assert!(shear(&ModelBasis::standard(3), &int(1)).is_err());
    }

    #[test]
    fn random_bases_depend_on_seed() {
        let ms = build_model(2).unwrap();
        let a = random_normalized_basis(&ms, &mut SeededSampler::new(1, 10));
        let b = random_normalized_basis(&ms, &mut SeededSampler::new(2, 10));
        assert_ne!(a, b);
        assert_eq!(a, random_normalized_basis(&ms, &mut SeededSampler::new(1, 10)));
    }
}
