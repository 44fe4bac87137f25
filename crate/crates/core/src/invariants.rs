//! Curvature-defined subspaces and quotients, the induced structures on
//! them, and the `α` obstruction to local homogeneity.
//!
//! `A_V` is the kernel of `W ↦ R(·,·,·,W)`, `A_{T,V} = A_V^⊥`, and the
//! quotients are `B_{U,T} = R^{3s}/A_V`, `B_T = A_{T,V}/A_V`,
//! `B_U = R^{3s}/A_{T,V}`. Each quotient is represented by a chosen set of
//! complement vectors; every induced object is re-checked against shifts of
//! its representatives by the kernel.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{int, Matrix, Rational};
use crate::error::{Error, Result};
use crate::family::{alpha, nabla_curvature_closed, normalized_basis_at, FamilySpec, PointCoords};
use crate::model::{build_model, ModelBasis, ModelSpace};
use crate::report::VerificationReport;
use crate::tensor::{pullback, LinearMap, Tensor};

/// A linear subspace of `R^n` with a basis of independent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    /// Keeps a maximal independent subset of `vectors`, in order.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!("vector of length {} in R^{ambient}", v.len())));
            }
            let mut trial = basis.clone();
            trial.push(v.clone());
            if Matrix::from_columns(&trial).rank() == trial.len() {
                basis = trial;
            }
        }
        Ok(Self { ambient, basis })
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: (0..ambient).map(|k| crate::model::unit_vector(ambient, k)).collect() }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        let mut trial = self.basis.clone();
        trial.push(x.to_vec());
        Matrix::from_columns(&trial).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Equality as subspaces, independent of the chosen bases.
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Coordinates of `x` in this basis, or `None` when `x` is outside.
    pub fn coordinates(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        if self.basis.is_empty() {
            return x.iter().all(Zero::is_zero).then(Vec::new);
        }
        let m = Matrix::from_columns(&self.basis);
        let mt = m.transpose();
        let normal = mt.mul(&m).ok()?;
        let c = normal.solve(&mt.mul_vec(x)).ok()?;
        (m.mul_vec(&c) == x).then_some(c)
    }
}

/// `{W : R(·,·,·,W) = 0}`.
pub fn kernel_subspace_av(r: &Tensor) -> Result<Subspace> {
    r.expect_valence(4)?;
    let n = r.dim();
    let mut rows: BTreeMap<Vec<usize>, Vec<Rational>> = BTreeMap::new();
    for (idx, v) in r.nonzero_entries() {
        let row = rows.entry(idx[..3].to_vec()).or_insert_with(|| vec![Rational::zero(); n]);
        row[idx[3]] += v;
    }
    if rows.is_empty() {
        return Ok(Subspace::full(n));
    }
    let m = Matrix::from_rows(&rows.into_values().collect::<Vec<_>>());
    Subspace::span(n, &m.nullspace())
}

/// `{x : g(x, S) = 0}` for non-degenerate `g`.
pub fn orthogonal_complement(g: &Matrix, s: &Subspace) -> Result<Subspace> {
    if !g.is_square() || g.rows() != s.ambient() {
        return Err(Error::DimensionMismatch("metric and subspace disagree".into()));
    }
    if g.rank() != g.rows() {
        return Err(Error::DegenerateMetric);
    }
    if s.dim() == 0 {
        return Ok(Subspace::full(s.ambient()));
    }
    let constraints = Matrix::from_rows(&s.basis().iter().map(|b| g.mul_vec(b)).collect::<Vec<_>>());
    Subspace::span(s.ambient(), &constraints.nullspace())
}

/// `space / kernel`, represented by complement vectors `c_1..c_m` of `kernel`
/// inside `space`; quotient coordinates of `x` are its `c`-coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    space: Subspace,
    kernel: Subspace,
    complement: Vec<Vec<Rational>>,
    /// Basis `[kernel | complement]` of `space`.
    adapted: Subspace,
}

impl QuotientSpace {
    pub fn new(space: &Subspace, kernel: &Subspace) -> Result<Self> {
        if !space.contains_subspace(kernel) {
            return Err(Error::DimensionMismatch("kernel is not inside the space".into()));
        }
        let mut adapted = kernel.basis().to_vec();
        let mut complement = Vec::new();
        for v in space.basis() {
            let mut trial = adapted.clone();
            trial.push(v.clone());
            if Matrix::from_columns(&trial).rank() == trial.len() {
                adapted = trial;
                complement.push(v.clone());
            }
        }
        let adapted = Subspace { ambient: space.ambient(), basis: adapted };
        Ok(Self { space: space.clone(), kernel: kernel.clone(), complement, adapted })
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Representatives `c_1..c_m`.
    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.complement
    }

    /// Quotient coordinates `σ(x)` of a vector of the space.
    pub fn project(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let c = self.adapted.coordinates(x).ok_or_else(|| Error::DimensionMismatch("vector is outside the quotiented space".into()))?;
        Ok(c[self.kernel.dim()..].to_vec())
    }

    /// `σ` as a `dim × ambient` matrix, defined on the whole ambient space when
    /// `space` is all of it.
    pub fn sigma(&self) -> Result<LinearMap> {
        let n = self.space.ambient();
        if self.space.dim() != n {
            return Err(Error::DimensionMismatch("σ is only a global map for quotients of the ambient space".into()));
        }
        let cols: Vec<Vec<Rational>> = (0..n).map(|k| self.project(&crate::model::unit_vector(n, k))).collect::<Result<_>>()?;
        Ok(LinearMap::new(Matrix::from_columns(&cols)))
    }

    /// The representative map `quotient coords → ambient`.
    pub fn lift(&self) -> LinearMap {
        LinearMap::new(Matrix::from_columns(&self.complement))
    }
}

/// `true` iff the tensor vanishes whenever any slot holds a vector of `kernel`.
fn kills_kernel(t: &Tensor, kernel: &Subspace) -> bool {
    let val = t.valence();
    kernel.basis().iter().all(|k| {
        (0..val).all(|slot| {
            let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
            for (idx, v) in t.nonzero_entries().filter(|(idx, _)| !k[idx[slot]].is_zero()) {
                let mut rest = idx.clone();
                rest.remove(slot);
                *acc.entry(rest).or_insert_with(Rational::zero) += v * &k[idx[slot]];
            }
            acc.values().all(Zero::is_zero)
        })
    })
}

/// All induced objects for `(g, R)` read through a normalized frame `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedStructures {
    pub a_v: Subspace,
    pub a_tv: Subspace,
    pub b_ut: QuotientSpace,
    pub b_t: QuotientSpace,
    pub b_u: QuotientSpace,
    /// `g_T` in the coordinates of `b_t`.
    pub g_t: Matrix,
    /// `g_{U,B}` in the coordinates of `b_u`.
    pub g_u: Matrix,
    /// `R_{U,T}` in the coordinates of `b_ut`.
    pub r_ut: Tensor,
    /// The `σ_U U_i` coordinate columns.
    pub u_images: Matrix,
    /// `g(A_V, A_{T,V}) = 0`, so `g_T` does not see the choice of representative.
    pub g_t_well_defined: bool,
    /// `R` vanishes with an `A_V` vector in any slot.
    pub r_ut_well_defined: bool,
    /// `σ* R_{U,T} = R`.
    pub r_ut_pulls_back: bool,
}

impl InducedStructures {
    /// `g_T` evaluated on frame vectors of `A_{T,V}`.
    pub fn g_t_on(&self, vectors: &[&[Rational]]) -> Result<Matrix> {
        let coords: Vec<Vec<Rational>> = vectors.iter().map(|v| self.b_t.project(v)).collect::<Result<_>>()?;
        Ok(self.g_t.gram(&coords))
    }

    /// `g_U` evaluated on arbitrary ambient vectors.
    pub fn g_u_on(&self, vectors: &[&[Rational]]) -> Result<Matrix> {
        let coords: Vec<Vec<Rational>> = vectors.iter().map(|v| self.b_u.project(v)).collect::<Result<_>>()?;
        Ok(self.g_u.gram(&coords))
    }

    /// `R_{U,T}(σa, σb, σc, σd)` from ambient representatives.
    pub fn r_ut_on(&self, a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]) -> Result<Rational> {
        let p = |x: &[Rational]| self.b_ut.project(x);
        let (pa, pb, pc, pd) = (p(a)?, p(b)?, p(c)?, p(d)?);
        Ok(self.r_ut.apply(&[&pa, &pb, &pc, &pd]))
    }
}

fn ensure_normalized(g: &Matrix, r: &Tensor, b: &ModelBasis) -> Result<ModelSpace> {
    let ms = build_model(b.s())?;
    if g.rows() != ms.dim() || r.dim() != ms.dim() {
        return Err(Error::DimensionMismatch(format!("frame for s={} against dimension {}", b.s(), g.rows())));
    }
    if !b.is_independent() {
        return Err(Error::NotNormalized("frame vectors are dependent".into()));
    }
    let map = b.as_map();
    let gb = pullback(&Tensor::from_matrix(g), &map)?;
    let rb = pullback(r, &map)?;
    let mut diffs = gb.differences(&ms.metric_tensor(), 1)?;
    diffs.extend(rb.differences(ms.curvature(), 1)?);
    if let Some((idx, actual, expected)) = diffs.first() {
        return Err(Error::NotNormalized(format!("entry {idx:?} is {actual}, expected {expected}")));
    }
    Ok(ms)
}

/// Builds `A_V`, `A_{T,V}`, the three quotients and `g_T`, `g_{U,B}`, `R_{U,T}`.
pub fn induced_structures(g: &Matrix, r: &Tensor, b: &ModelBasis) -> Result<InducedStructures> {
    ensure_normalized(g, r, b)?;
    let n = g.rows();
    let s = b.s();
    let a_v = kernel_subspace_av(r)?;
    let a_tv = orthogonal_complement(g, &a_v)?;
    let full = Subspace::full(n);
    let b_ut = QuotientSpace::new(&full, &a_v)?;
    let b_t = QuotientSpace::new(&a_tv, &a_v)?;
    let b_u = QuotientSpace::new(&full, &a_tv)?;

    let g_t = g.gram(b_t.representatives());
    let g_t_well_defined = a_v.basis().iter().all(|k| a_tv.basis().iter().all(|x| g.bilinear(k, x).is_zero()));

    let u_cols: Vec<Vec<Rational>> = (0..s).map(|i| b_u.project(b.u(i))).collect::<Result<_>>()?;
    let u_images = Matrix::from_columns(&u_cols);
    let q_inv = u_images.inverse()?;
    let g_u = q_inv.transpose().mul(&q_inv)?;

    let r_ut = pullback(r, &b_ut.lift())?;
    let r_ut_well_defined = kills_kernel(r, &a_v);
    let r_ut_pulls_back = pullback(&r_ut, &b_ut.sigma()?)? == *r;

    Ok(InducedStructures { a_v, a_tv, b_ut, b_t, b_u, g_t, g_u, r_ut, u_images, g_t_well_defined, r_ut_well_defined, r_ut_pulls_back })
}

/// Compares `g_{U,B1}` and `g_{U,B2}` on `B_U` (same reference coordinates).
pub fn lemma71_check(ms: &ModelSpace, b1: &ModelBasis, b2: &ModelBasis) -> Result<VerificationReport> {
    let i1 = induced_structures(ms.metric(), ms.curvature(), b1)?;
    let i2 = induced_structures(ms.metric(), ms.curvature(), b2)?;
    let mut report = VerificationReport::new();
    let same = i1.g_u == i2.g_u;
    let detail = if same {
        format!("g_U agrees on B_U ({}x{})", i1.g_u.rows(), i1.g_u.cols())
    } else {
        let (r, c) = (0..i1.g_u.rows())
            .flat_map(|r| (0..i1.g_u.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| i1.g_u.get(r, c) != i2.g_u.get(r, c))
            .unwrap_or((0, 0));
        format!("g_U differs at [{r}, {c}]: {} vs {}", i1.g_u.get(r, c), i2.g_u.get(r, c))
    };
    report.check("quotients", "g_u_basis_independent", same, detail);
    Ok(report)
}

/// `¼ Σ (∇R)²` over all-`U` components of `∇R` read in the normalized frame at `p`.
pub fn alpha_via_quotient(spec: &FamilySpec, p: &PointCoords) -> Result<Rational> {
    let data = normalized_basis_at(spec, p)?;
    let nabla = nabla_curvature_closed(spec, p)?;
    let framed = pullback(&nabla, &data.frame.as_map())?;
    let s = spec.s();
    let mut acc = Rational::zero();
    for (idx, v) in framed.nonzero_entries() {
        if idx.iter().all(|&a| a < s) {
            acc += v * v;
        }
    }
    Ok(acc / int(4))
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomogeneityVerdict {
    /// Two points with different `α`.
    NotLocallyHomogeneous { p: PointCoords, q: PointCoords, alpha_p: Rational, alpha_q: Rational },
    /// `α` takes one value on every point given; this proves nothing.
    InconclusiveConstant { alpha: Rational },
}

impl HomogeneityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            HomogeneityVerdict::NotLocallyHomogeneous { .. } => "NOT-LOCALLY-HOMOGENEOUS",
            HomogeneityVerdict::InconclusiveConstant { .. } => "INCONCLUSIVE-CONSTANT",
        }
    }
}

impl fmt::Display for HomogeneityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            HomogeneityVerdict::NotLocallyHomogeneous { p, q, alpha_p, alpha_q } => {
                write!(f, "{} alpha(u={}) = {} != alpha(u={}) = {}", self.label(), show(&p.u), alpha_p, show(&q.u), alpha_q)
            }
            HomogeneityVerdict::InconclusiveConstant { alpha } => write!(f, "{} alpha = {}", self.label(), alpha),
        }
    }
}

pub fn homogeneity_obstruction(spec: &FamilySpec, points: &[PointCoords]) -> Result<HomogeneityVerdict> {
    let Some(first) = points.first() else {
        return Err(Error::TooFewPoints);
    };
    if points.iter().all(|p| p == first) {
        return Err(Error::TooFewPoints);
    }
    let a0 = alpha(spec, first)?;
    for q in &points[1..] {
        let aq = alpha(spec, q)?;
        if aq != a0 {
            return Ok(HomogeneityVerdict::NotLocallyHomogeneous { p: first.clone(), q: q.clone(), alpha_p: a0, alpha_q: aq });
        }
    }
    Ok(HomogeneityVerdict::InconclusiveConstant { alpha: a0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Polynomial, SeededSampler};
    use crate::family::{curvature_closed, metric_at};
    use crate::model::{os_action, random_orthogonal, shear};

    #[test]
    fn model_subspaces() {
        let ms = build_model(2).unwrap();
        let a_v = kernel_subspace_av(ms.curvature()).unwrap();
        assert!(a_v.same_as(&Subspace::span(6, &[ms.v(0), ms.v(1)]).unwrap()));
        let a_tv = orthogonal_complement(ms.metric(), &a_v).unwrap();
        assert!(a_tv.same_as(&Subspace::span(6, &[ms.t(0), ms.t(1), ms.v(0), ms.v(1)]).unwrap()));
        assert!(orthogonal_complement(ms.metric(), &a_tv).unwrap().same_as(&a_v));
        assert_eq!(orthogonal_complement(ms.metric(), &Subspace::full(6)).unwrap().dim(), 0);
        assert_eq!(kernel_subspace_av(&Tensor::zeros(6, 4)).unwrap().dim(), 6);
    }

    #[test]
    fn degenerate_metric_rejected() {
        let g = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(orthogonal_complement(&g, &Subspace::zero(2)), Err(Error::DegenerateMetric));
    }

    #[test]
    fn standard_induced_structures() {
        let ms = build_model(2).unwrap();
        let ind = induced_structures(ms.metric(), ms.curvature(), &ModelBasis::standard(2)).unwrap();
        assert_eq!(ind.g_t_on(&[&ms.t(0), &ms.t(1)]).unwrap(), Matrix::identity(2).scale(&int(-1)));
        assert_eq!(ind.g_u_on(&[&ms.u(0), &ms.u(1)]).unwrap(), Matrix::identity(2));
        assert_eq!(ind.r_ut_on(&ms.u(0), &ms.u(1), &ms.u(1), &ms.t(0)).unwrap(), int(1));
        assert!(ind.g_t_well_defined && ind.r_ut_well_defined && ind.r_ut_pulls_back);
        // shifting a representative by A_V leaves the value alone
        let shifted: Vec<Rational> = ms.u(0).iter().zip(ms.v(1)).map(|(a, b)| a + b * int(7)).collect();
        assert_eq!(ind.r_ut_on(&shifted, &ms.u(1), &ms.u(1), &ms.t(0)).unwrap(), int(1));
    }

    #[test]
    fn lemma71_cases() {
        let ms = build_model(2).unwrap();
        let b = ModelBasis::standard(2);
        let mut sampler = SeededSampler::new(3, 10);
        let rotated = os_action(&random_orthogonal(2, &mut sampler), &b).unwrap();
        assert!(lemma71_check(&ms, &b, &rotated).unwrap().all_pass());
        let sheared = shear(&b, &rat(3, 2)).unwrap();
        assert!(lemma71_check(&ms, &b, &sheared).unwrap().all_pass());
        let mut bad = b.vectors().to_vec();
        bad[0] = bad[0].iter().map(|x| x * int(2)).collect();
        let bad = ModelBasis::new(2, bad).unwrap();
        assert!(matches!(lemma71_check(&ms, &b, &bad), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn instance_kernel_is_v_span() {
        let spec = FamilySpec::monomial(2, int(1), 3).unwrap();
        let p = PointCoords::from_i64(&[1, 2], &[3, 4], &[5, 6]);
        let r = curvature_closed(&spec, &p).unwrap();
        let a_v = kernel_subspace_av(&r).unwrap();
        let ms = build_model(2).unwrap();
        assert!(a_v.same_as(&Subspace::span(6, &[ms.v(0), ms.v(1)]).unwrap()));
        let data = normalized_basis_at(&spec, &p).unwrap();
        let ind = induced_structures(&metric_at(&spec, &p).unwrap(), &r, &data.frame).unwrap();
        assert!(ind.g_t_well_defined && ind.r_ut_well_defined && ind.r_ut_pulls_back);
    }

    #[test]
    fn alpha_via_quotient_examples() {
        let cubic = FamilySpec::monomial(2, int(1), 3).unwrap();
        assert_eq!(alpha_via_quotient(&cubic, &PointCoords::from_i64(&[1, 2], &[3, 4], &[0, 0])).unwrap(), int(296));
        let quartic = FamilySpec::monomial(2, rat(-1, 6), 4).unwrap();
        assert_eq!(alpha_via_quotient(&quartic, &PointCoords::from_i64(&[5, -1], &[2, 2], &[0, 1])).unwrap(), int(0));
        // s = 3: two copies of α plus the three-index contribution 8|u|²
        let c3 = FamilySpec::monomial(3, int(1), 3).unwrap();
        let p = PointCoords::from_i64(&[1, 0, 2], &[0, 0, 0], &[0, 0, 0]);
        assert_eq!(alpha_via_quotient(&c3, &p).unwrap(), int(2) * alpha(&c3, &p).unwrap() + int(8 * 5));
    }

    #[test]
    fn obstruction_verdicts() {
        let cubic = FamilySpec::monomial(2, int(1), 3).unwrap();
        let p = PointCoords::from_i64(&[1, 2], &[0, 0], &[0, 0]);
        let o = PointCoords::origin(2);
        let v = homogeneity_obstruction(&cubic, &[p.clone(), o.clone()]).unwrap();
        assert_eq!(v.label(), "NOT-LOCALLY-HOMOGENEOUS");
        assert!(v.to_string().contains("296") && v.to_string().contains("72"));
        let quartic = FamilySpec::uniform(2, Polynomial::monomial(1, 0, 4, rat(-1, 6))).unwrap();
        assert_eq!(homogeneity_obstruction(&quartic, &[p.clone(), o]).unwrap().label(), "INCONCLUSIVE-CONSTANT");
        assert_eq!(homogeneity_obstruction(&cubic, &[p.clone(), p]), Err(Error::TooFewPoints));
    }
}
