//! Jacobi operators, rank profiles of nilpotent operators, Jordan types and
//! Osserman scans over sampled vectors and definite planes.
//!
//! Conventions: `g(R(x,y)z, w) = R(x,y,z,w)`, and `J(x)y = R(y,x)x`. For a
//! definite plane with basis `x_1..x_k` and Gram matrix `G`,
//! `J(π) = Σ H_ab R(·,x_a)x_b` with `H = G⁻¹` (spacelike) or `(−G)⁻¹`
//! (timelike), which equals `Σ J(e_a)` over any orthonormal basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{Matrix, Rational, SeededSampler};
use crate::error::{Error, Result};
use crate::model::{ModelBasis, ModelSpace};
use crate::tensor::Tensor;

/// Rejection budget for the samplers.
pub const MAX_ATTEMPTS: usize = 64;

/// A metric, its inverse and an algebraic curvature tensor on the same space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiContext {
    g: Matrix,
    g_inv: Matrix,
    r: Tensor,
}

impl JacobiContext {
    pub fn new(g: Matrix, r: Tensor) -> Result<Self> {
        r.expect_valence(4)?;
        if !g.is_square() || g.rows() != r.dim() {
            return Err(Error::DimensionMismatch(format!("metric {}x{} vs tensor dim {}", g.rows(), g.cols(), r.dim())));
        }
        let g_inv = g.inverse().map_err(|_| Error::DegenerateMetric)?;
        Ok(Self { g, g_inv, r })
    }

    pub fn from_model(ms: &ModelSpace) -> Self {
        Self::new(ms.metric().clone(), ms.curvature().clone()).expect("model metric is non-degenerate")
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn metric(&self) -> &Matrix {
        &self.g
    }

    pub fn curvature(&self) -> &Tensor {
        &self.r
    }

    /// Raises the second slot of a bilinear form `B(y, w)` into the endomorphism
    /// `y ↦ g⁻¹ B(y, ·)`, with images stored as columns.
    fn raise(&self, b: &Matrix) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |c, y| {
            let mut acc = Rational::zero();
            for w in 0..n {
                let gi = self.g_inv.get(c, w);
                if gi.is_zero() {
                    continue;
                }
                let bv = b.get(y, w);
                if !bv.is_zero() {
                    acc += gi * bv;
                }
            }
            acc
        })
    }

    /// `B(y, w) = Σ_ab H_ab R(y, x_a, x_b, w)`, via `P = X H Xᵀ`.
    fn jacobi_form(&self, xs: &[Vec<Rational>], h: &Matrix) -> Matrix {
        let n = self.dim();
        let x = Matrix::from_columns(xs);
        let p = x.mul(h).and_then(|xh| xh.mul(&x.transpose())).expect("shapes agree");
        let mut b = Matrix::zeros(n, n);
        for (idx, v) in self.r.nonzero_entries() {
            let coeff = p.get(idx[1], idx[2]);
            if !coeff.is_zero() {
                let cur = b.get(idx[0], idx[3]) + coeff * v;
                b.set(idx[0], idx[3], cur);
            }
        }
        b
    }

    pub fn jacobi(&self, x: &[Rational]) -> Result<Matrix> {
        self.check_vector(x)?;
        let b = self.jacobi_form(&[x.to_vec()], &Matrix::identity(1));
        Ok(self.raise(&b))
    }

    pub fn jacobi_plane(&self, pi: &PlaneBasis) -> Result<Matrix> {
        for x in pi.vectors() {
            self.check_vector(x)?;
        }
        let h = match causal_type_of_gram(pi.gram()) {
            CausalType::Spacelike => pi.gram().inverse()?,
            CausalType::Timelike => pi.gram().scale(&-Rational::one()).inverse()?,
            CausalType::DegenerateOrMixed => return Err(Error::NotDefinite),
        };
        Ok(self.raise(&self.jacobi_form(pi.vectors(), &h)))
    }

    /// The endomorphism `z ↦ R(x, y)z`.
    pub fn curvature_operator(&self, x: &[Rational], y: &[Rational]) -> Result<Matrix> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        let n = self.dim();
        let mut b = Matrix::zeros(n, n);
        for (idx, v) in self.r.nonzero_entries() {
            let (a, bb, z, w) = (idx[0], idx[1], idx[2], idx[3]);
            if x[a].is_zero() || y[bb].is_zero() {
                continue;
            }
            let cur = b.get(z, w) + &x[a] * &y[bb] * v;
            b.set(z, w, cur);
        }
        Ok(self.raise(&b))
    }

    /// `g(Ny, z) − g(y, Nz)` vanishes for every pair of basis vectors.
    pub fn is_self_adjoint(&self, op: &Matrix) -> bool {
        let gn = self.g.mul(op).expect("square");
        gn.is_symmetric()
    }

    pub fn causal_type(&self, vectors: &[Vec<Rational>]) -> CausalType {
        causal_type(&self.g, vectors)
    }

    fn check_vector(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} in dimension {}", x.len(), self.dim())));
        }
        Ok(())
    }
}

/// `y ↦ R(y, x)x`.
pub fn jacobi_operator(g: &Matrix, r: &Tensor, x: &[Rational]) -> Result<Matrix> {
    JacobiContext::new(g.clone(), r.clone())?.jacobi(x)
}

pub fn jacobi_plane(g: &Matrix, r: &Tensor, pi: &PlaneBasis) -> Result<Matrix> {
    JacobiContext::new(g.clone(), r.clone())?.jacobi_plane(pi)
}

pub fn curvature_operator(g: &Matrix, r: &Tensor, x: &[Rational], y: &[Rational]) -> Result<Matrix> {
    JacobiContext::new(g.clone(), r.clone())?.curvature_operator(x, y)
}

/// Linearly independent vectors with their Gram matrix under a metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneBasis {
    vectors: Vec<Vec<Rational>>,
    gram: Matrix,
}

impl PlaneBasis {
    pub fn new(g: &Matrix, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if vectors.is_empty() || vectors.iter().any(|v| v.len() != g.rows()) {
            return Err(Error::DimensionMismatch("plane vectors must be nonempty and match the metric".into()));
        }
        if Matrix::from_columns(&vectors).rank() != vectors.len() {
            return Err(Error::LinearlyDependent);
        }
        let gram = g.gram(&vectors);
        Ok(Self { vectors, gram })
    }

    pub fn k(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Same plane, basis replaced by `vectors · change` (`change` invertible `k × k`).
    pub fn rebase(&self, g: &Matrix, change: &Matrix) -> Result<Self> {
        let m = Matrix::from_columns(&self.vectors).mul(change)?;
        Self::new(g, m.columns())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalType {
    Spacelike,
    Timelike,
    DegenerateOrMixed,
}

impl CausalType {
    pub fn as_str(&self) -> &'static str {
        match self {
            CausalType::Spacelike => "spacelike",
            CausalType::Timelike => "timelike",
            CausalType::DegenerateOrMixed => "degenerate-or-mixed",
        }
    }
}

impl fmt::Display for CausalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CausalType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "spacelike" => Ok(CausalType::Spacelike),
            "timelike" => Ok(CausalType::Timelike),
            _ => Err(format!("expected spacelike or timelike, got `{s}`")),
        }
    }
}

/// The positive multiple of `v` with coprime integer entries (zero stays zero).
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

fn causal_type_of_gram(gram: &Matrix) -> CausalType {
    let k = gram.rows();
    match gram.symmetric_signature() {
        Ok(i) if i.pos == k => CausalType::Spacelike,
        Ok(i) if i.neg == k => CausalType::Timelike,
        _ => CausalType::DegenerateOrMixed,
    }
}

/// Classifies `span(vectors)` by the inertia of its Gram matrix.
pub fn causal_type(g: &Matrix, vectors: &[Vec<Rational>]) -> CausalType {
    if vectors.is_empty() {
        return CausalType::DegenerateOrMixed;
    }
    causal_type_of_gram(&g.gram(vectors))
}

/// Ranks of `N, N², …`, stopping at the first zero power or when the rank stalls.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankProfile {
    dim: usize,
    ranks: Vec<usize>,
    nilpotent: bool,
}

impl RankProfile {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero ranks only; the trailing zero is implied when nilpotent.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotent
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// `(r_1, …, r_m, 0)`, or `()` for the zero operator.
    pub fn from_ranks(dim: usize, ranks: &[usize]) -> Self {
        Self { dim, ranks: ranks.to_vec(), nilpotent: true }
    }
}

impl fmt::Display for RankProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ranks.is_empty() {
            return write!(f, "()");
        }
        let body = self.ranks.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        if self.nilpotent {
            write!(f, "({body},0)")
        } else {
            write!(f, "({body},...)")
        }
    }
}

pub fn rank_profile(n: &Matrix) -> RankProfile {
    let dim = n.rows();
    let mut ranks = Vec::new();
    let mut power = n.clone();
    let mut prev = dim;
    loop {
        let r = power.rank();
        if r == 0 {
            return RankProfile { dim, ranks, nilpotent: true };
        }
        if r == prev {
            ranks.push(r);
            return RankProfile { dim, ranks, nilpotent: false };
        }
        ranks.push(r);
        prev = r;
        power = power.mul(n).expect("square");
    }
}

/// Jordan block sizes of a nilpotent operator, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanPartition {
    blocks: Vec<usize>,
}

impl JordanPartition {
    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }
}

impl fmt::Display for JordanPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{body}]")
    }
}

/// Blocks of size at least `j` number `r_{j−1} − r_j`, with `r_0 = dim`.
pub fn jordan_partition(p: &RankProfile) -> Result<JordanPartition> {
    if !p.nilpotent {
        return Err(Error::NotNilpotent);
    }
    let mut r = vec![p.dim];
    r.extend_from_slice(&p.ranks);
    r.push(0);
    let at_least: Vec<usize> = r.windows(2).map(|w| w[0] - w[1]).collect();
    let mut blocks = Vec::new();
    for j in (1..=at_least.len()).rev() {
        let exactly = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(j, exactly));
    }
    Ok(JordanPartition { blocks })
}

/// `ℓ(π)`: the rank of the Gram matrix of the `U`-components of `π`'s basis
/// read in the normalized frame `b` (the pullback of `g_U` to `π`).
pub fn ell_invariant(pi: &PlaneBasis, b: &ModelBasis) -> Result<usize> {
    let s = b.s();
    let mut rows = Vec::with_capacity(pi.k());
    for x in pi.vectors() {
        let c = b.coordinates(x)?;
        rows.push(c[..s].to_vec());
    }
    let c = Matrix::from_rows(&rows);
    Ok(c.mul(&c.transpose())?.rank())
}

type Directions = Vec<Vec<Rational>>;

/// Directions spanning a maximal subspace of the requested type, from the
/// congruence diagonalization of `g`, plus every remaining direction.
fn definite_directions(g: &Matrix, ty: CausalType) -> Result<(Directions, Directions)> {
    let (p, d) = g.congruence_diagonalize()?;
    let mut good = Vec::new();
    let mut rest = Vec::new();
    for (i, di) in d.iter().enumerate() {
        let wanted = match ty {
            CausalType::Spacelike => di.is_positive(),
            CausalType::Timelike => di.is_negative(),
            CausalType::DegenerateOrMixed => false,
        };
        if wanted {
            good.push(p.column(i));
        } else {
            rest.push(p.column(i));
        }
    }
    Ok((good, rest))
}

fn realizable(g: &Matrix, ty: CausalType, k: usize) -> Result<()> {
    let inertia = g.symmetric_signature()?;
    let max = match ty {
        CausalType::Spacelike => inertia.pos,
        CausalType::Timelike => inertia.neg,
        CausalType::DegenerateOrMixed => 0,
    };
    if k == 0 || k > max {
        return Err(Error::OutOfRange(format!("no {ty} {k}-planes: the metric has inertia {inertia}")));
    }
    Ok(())
}

/// `Σ c_d d` with integer `c_d` drawn from `[−bound, bound]`.
fn integer_combo(sampler: &mut SeededSampler, dirs: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    let b = sampler.bound() as i64;
    let mut x = vec![Rational::zero(); n];
    for d in dirs {
        let c = Rational::from_integer(sampler.integer(-b, b).into());
        if c.is_zero() {
            continue;
        }
        for (xi, di) in x.iter_mut().zip(d) {
            *xi += &c * di;
        }
    }
    x
}

/// A random `k`-plane of the given type, spanned by primitive integer vectors.
/// A plain random plane is tried first; otherwise each attempt perturbs a
/// random `k`-subset of a maximal definite subspace (mixed inside that
/// subspace) by complementary directions, halving the perturbation until the
/// plane has the right type.
pub fn sample_plane(g: &Matrix, ty: CausalType, k: usize, sampler: &mut SeededSampler) -> Result<PlaneBasis> {
    realizable(g, ty, k)?;
    let n = g.rows();
    let (good, rest) = definite_directions(g, ty)?;
    let good: Vec<_> = good.iter().map(|v| primitive(v)).collect();
    let rest: Vec<_> = rest.iter().map(|v| primitive(v)).collect();
    let b = sampler.bound() as i64;
    let plain: Vec<Vec<Rational>> =
        (0..k).map(|_| (0..n).map(|_| Rational::from_integer(sampler.integer(-b, b).into())).collect()).collect();
    if causal_type(g, &plain) == ty {
        return PlaneBasis::new(g, plain);
    }
    let two = Rational::from_integer(2.into());
    for _ in 0..MAX_ATTEMPTS {
        let chosen = sampler.subset(good.len(), k);
        let base: Vec<Vec<Rational>> = chosen
            .iter()
            .map(|&i| {
                let lead = Rational::from_integer((2 * b + 1).into());
                let mix = integer_combo(sampler, &good, n);
                good[i].iter().zip(&mix).map(|(gi, mi)| &lead * gi + mi).collect()
            })
            .collect();
        if causal_type(g, &base) != ty {
            continue;
        }
        let noise: Vec<Vec<Rational>> = (0..k).map(|_| integer_combo(sampler, &rest, n)).collect();
        let mut scale = Rational::one();
        for _ in 0..16 {
            let candidate: Vec<Vec<Rational>> = base
                .iter()
                .zip(&noise)
                .map(|(bv, e)| primitive(&bv.iter().zip(e).map(|(bi, ei)| bi + &scale * ei).collect::<Vec<_>>()))
                .collect();
            if causal_type(g, &candidate) == ty {
                return PlaneBasis::new(g, candidate);
            }
            scale /= &two;
        }
        return PlaneBasis::new(g, base.iter().map(|v| primitive(v)).collect());
    }
    Err(Error::SamplerExhausted(MAX_ATTEMPTS))
}

pub fn sample_vector(g: &Matrix, ty: CausalType, sampler: &mut SeededSampler) -> Result<Vec<Rational>> {
    Ok(sample_plane(g, ty, 1, sampler)?.vectors()[0].clone())
}

/// One scan input together with its rank profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSample {
    pub vectors: Vec<Vec<Rational>>,
    pub profile: RankProfile,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanVerdict {
    pub causal_type: CausalType,
    pub k: usize,
    pub samples: usize,
    /// Common profile when constant.
    pub profile: Option<RankProfile>,
    /// First sample and the first sample whose profile differs, when not constant.
    pub witnesses: Option<(ScanSample, ScanSample)>,
    /// Every sampled operator `N` satisfied `N³ = 0`.
    pub cube_vanishes: bool,
    /// Every sampled operator was self-adjoint.
    pub self_adjoint: bool,
}

impl ScanVerdict {
    pub fn is_constant(&self) -> bool {
        self.profile.is_some()
    }

    pub fn partition(&self) -> Option<JordanPartition> {
        self.profile.as_ref().and_then(|p| jordan_partition(p).ok())
    }
}

impl fmt::Display for ScanVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.profile, &self.witnesses) {
            (Some(p), _) => {
                let part = jordan_partition(p).map(|j| j.to_string()).unwrap_or_else(|_| "non-nilpotent".into());
                write!(f, "{} k={} n={}: constant profile {} partition {}", self.causal_type, self.k, self.samples, p, part)
            }
            (None, Some((a, b))) => write!(
                f,
                "{} k={} n={}: not constant, witnesses with profiles {} and {}",
                self.causal_type, self.k, self.samples, a.profile, b.profile
            ),
            (None, None) => write!(f, "{} k={} n={}: empty scan", self.causal_type, self.k, self.samples),
        }
    }
}

/// Samples `n` inputs of type `ty` and dimension `k` (after any `injected`
/// ones, which are used as given) and compares their rank profiles.
pub fn osserman_scan(
    ctx: &JacobiContext,
    ty: CausalType,
    k: usize,
    n: usize,
    sampler: &mut SeededSampler,
    injected: &[Vec<Vec<Rational>>],
) -> Result<ScanVerdict> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("a scan needs at least 2 samples, got {n}")));
    }
    realizable(ctx.metric(), ty, k)?;
    let mut inputs: Vec<PlaneBasis> = Vec::with_capacity(n);
    for v in injected.iter().take(n) {
        inputs.push(PlaneBasis::new(ctx.metric(), v.clone())?);
    }
    while inputs.len() < n {
        inputs.push(sample_plane(ctx.metric(), ty, k, sampler)?);
    }
    let results: Vec<Result<(RankProfile, bool, bool)>> = inputs
        .par_iter()
        .map(|pi| {
            let op = if pi.k() == 1 { ctx.jacobi(&pi.vectors()[0])? } else { ctx.jacobi_plane(pi)? };
            let cube = op.pow(3).is_zero();
            Ok((rank_profile(&op), cube, ctx.is_self_adjoint(&op)))
        })
        .collect();
    let mut verdict =
        ScanVerdict { causal_type: ty, k, samples: n, profile: None, witnesses: None, cube_vanishes: true, self_adjoint: true };
    let mut first: Option<ScanSample> = None;
    for (pi, res) in inputs.into_iter().zip(results) {
        let (profile, cube, adjoint) = res?;
        verdict.cube_vanishes &= cube;
        verdict.self_adjoint &= adjoint;
        let sample = ScanSample { vectors: pi.vectors, profile };
        match &first {
            None => first = Some(sample),
            Some(f) if verdict.witnesses.is_none() && f.profile != sample.profile => {
                verdict.witnesses = Some((f.clone(), sample));
            }
            _ => {}
        }
    }
    if verdict.witnesses.is_none() {
        verdict.profile = first.map(|f| f.profile);
    }
    Ok(verdict)
}

/// The two timelike `k`-planes `(π₁, π₂)` with `ℓ = 0, 1` (`k ≤ s`) or
/// `ℓ = 1, 2` (`k = s + 1`).
pub fn canonical_timelike_witnesses(ms: &ModelSpace, k: usize) -> Result<(PlaneBasis, PlaneBasis)> {
    let s = ms.s();
    if k < 2 || k > s + 1 {
        return Err(Error::OutOfRange(format!("witness planes need 2 ≤ k ≤ {}, got {k}", s + 1)));
    }
    let ts = |m: usize| (0..m).map(|i| ms.t(i)).collect::<Vec<_>>();
    let (p1, p2) = if k <= s {
        let mut p2 = ts(k - 1);
        p2.push(ms.z_minus(0));
        (ts(k), p2)
    } else {
        let mut p1 = ts(s);
        p1.push(ms.z_minus(0));
        let mut p2 = ts(s - 1);
        p2.push(ms.z_minus(0));
        p2.push(ms.z_minus(1));
        (p1, p2)
    };
    Ok((PlaneBasis::new(ms.metric(), p1)?, PlaneBasis::new(ms.metric(), p2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::model::build_model;

    fn model(s: usize) -> (ModelSpace, JacobiContext) {
        let ms = build_model(s).unwrap();
        let ctx = JacobiContext::from_model(&ms);
        (ms, ctx)
    }

    #[test]
    fn model_jacobi_examples() {
        let (ms, ctx) = model(2);
        assert!(ctx.jacobi(&ms.t(0)).unwrap().is_zero());
        assert!(ctx.jacobi(&ms.v(0)).unwrap().is_zero());
        let j = ctx.jacobi(&ms.z_plus(0)).unwrap();
        assert_eq!(rank_profile(&j).to_string(), "(2,1,0)");
        assert!(ctx.is_self_adjoint(&j));
        let (ms3, ctx3) = model(3);
        assert_eq!(rank_profile(&ctx3.jacobi(&ms3.z_plus(1)).unwrap()).to_string(), "(4,2,0)");
    }

    #[test]
    fn plane_examples() {
        let (ms, ctx) = model(2);
        let pi = PlaneBasis::new(ms.metric(), vec![ms.z_plus(0), ms.z_plus(1)]).unwrap();
        let j = ctx.jacobi_plane(&pi).unwrap();
        assert_eq!(rank_profile(&j).to_string(), "(4,2,0)");
        let sum = ctx.jacobi(&ms.z_plus(0)).unwrap().add(&ctx.jacobi(&ms.z_plus(1)).unwrap());
        assert_eq!(j, sum);
        let p1 = PlaneBasis::new(ms.metric(), vec![ms.t(0), ms.t(1)]).unwrap();
        assert!(ctx.jacobi_plane(&p1).unwrap().is_zero());
        let p2 = PlaneBasis::new(ms.metric(), vec![ms.t(0), ms.z_minus(0)]).unwrap();
        assert_eq!(rank_profile(&ctx.jacobi_plane(&p2).unwrap()).to_string(), "(2,1,0)");
        let mixed = PlaneBasis::new(ms.metric(), vec![ms.t(0), ms.z_plus(1)]).unwrap();
        assert_eq!(ctx.jacobi_plane(&mixed), Err(Error::NotDefinite));
    }

    #[test]
    fn plane_operator_is_basis_independent() {
        let (ms, ctx) = model(2);
        let pi = PlaneBasis::new(ms.metric(), vec![ms.z_plus(0), ms.z_plus(1)]).unwrap();
        let change = Matrix::from_i64(&[&[2, 1], &[-3, 5]]);
        let other = pi.rebase(ms.metric(), &change).unwrap();
        assert_eq!(ctx.jacobi_plane(&pi).unwrap(), ctx.jacobi_plane(&other).unwrap());
    }

    #[test]
    fn profiles_and_partitions() {
        let zero = Matrix::zeros(6, 6);
        let p = rank_profile(&zero);
        assert_eq!(p.to_string(), "()");
        assert_eq!(jordan_partition(&p).unwrap().to_string(), "[1,1,1,1,1,1]");
        let shift = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(rank_profile(&shift).to_string(), "(2,1,0)");
        assert_eq!(jordan_partition(&RankProfile::from_ranks(6, &[2, 1])).unwrap().to_string(), "[3,1,1,1]");
        assert_eq!(jordan_partition(&RankProfile::from_ranks(6, &[4, 2])).unwrap().to_string(), "[3,3]");
        let id = rank_profile(&Matrix::identity(2));
        assert!(!id.is_nilpotent());
        assert_eq!(jordan_partition(&id), Err(Error::NotNilpotent));
    }

    #[test]
    fn causal_types() {
        let (ms, _) = model(2);
        let g = ms.metric();
        assert_eq!(causal_type(g, &[ms.z_plus(0)]), CausalType::Spacelike);
        assert_eq!(causal_type(g, &[ms.z_minus(0)]), CausalType::Timelike);
        assert_eq!(causal_type(g, &[ms.u(0)]), CausalType::DegenerateOrMixed);
        assert_eq!(causal_type(g, &[ms.t(0), ms.z_plus(1)]), CausalType::DegenerateOrMixed);
    }

    #[test]
    fn ell_examples() {
        let (ms, _) = model(3);
        let b = ModelBasis::standard(3);
        let g = ms.metric();
        let sp = PlaneBasis::new(g, vec![ms.z_plus(0), ms.z_plus(2)]).unwrap();
        assert_eq!(ell_invariant(&sp, &b).unwrap(), 2);
        let p1 = PlaneBasis::new(g, vec![ms.t(0), ms.t(1)]).unwrap();
        assert_eq!(ell_invariant(&p1, &b).unwrap(), 0);
        let p2 = PlaneBasis::new(g, vec![ms.t(0), ms.z_minus(0)]).unwrap();
        assert_eq!(ell_invariant(&p2, &b).unwrap(), 1);
    }

    #[test]
    fn samplers_respect_type_and_seed() {
        let (ms, _) = model(2);
        let g = ms.metric();
        let mut a = SeededSampler::new(5, 10);
        let sp = sample_plane(g, CausalType::Spacelike, 2, &mut a).unwrap();
        assert_eq!(sp.gram().symmetric_signature().unwrap().pos, 2);
        let tl = sample_plane(g, CausalType::Timelike, 4, &mut a).unwrap();
        assert_eq!(tl.gram().symmetric_signature().unwrap().neg, 4);
        assert!(matches!(sample_plane(g, CausalType::Spacelike, 3, &mut a), Err(Error::OutOfRange(_))));
        let x = sample_vector(g, CausalType::Timelike, &mut SeededSampler::new(9, 10)).unwrap();
        let y = sample_vector(g, CausalType::Timelike, &mut SeededSampler::new(9, 10)).unwrap();
        assert_eq!(x, y);
        assert!(g.bilinear(&x, &x) < int(0));
    }

    #[test]
    fn scans() {
        let (ms, ctx) = model(2);
        let mut sampler = SeededSampler::new(1, 10);
        let v = osserman_scan(&ctx, CausalType::Spacelike, 1, 30, &mut sampler, &[]).unwrap();
        assert_eq!(v.profile.as_ref().unwrap().to_string(), "(2,1,0)");
        assert!(v.cube_vanishes && v.self_adjoint);
        let inj = vec![vec![ms.t(0)], vec![ms.z_minus(0)]];
        let w = osserman_scan(&ctx, CausalType::Timelike, 1, 10, &mut sampler, &inj).unwrap();
        let (a, b) = w.witnesses.unwrap();
        assert_eq!((a.vectors[0].clone(), b.vectors[0].clone()), (ms.t(0), ms.z_minus(0)));
        assert!(a.profile.is_zero() && !b.profile.is_zero());
        let p = osserman_scan(&ctx, CausalType::Spacelike, 2, 10, &mut sampler, &[]).unwrap();
        assert_eq!(p.profile.unwrap().to_string(), "(4,2,0)");
    }

    #[test]
    fn witnesses() {
        let (ms, ctx) = model(2);
        let (p1, p2) = canonical_timelike_witnesses(&ms, 2).unwrap();
        assert_eq!(p1.vectors(), &[ms.t(0), ms.t(1)]);
        assert!(rank_profile(&ctx.jacobi_plane(&p1).unwrap()).is_zero());
        assert!(!rank_profile(&ctx.jacobi_plane(&p2).unwrap()).is_zero());
        let (q1, q2) = canonical_timelike_witnesses(&ms, 3).unwrap();
        assert_eq!(q1.vectors(), &[ms.t(0), ms.t(1), ms.z_minus(0)]);
        assert_eq!(q2.vectors(), &[ms.t(0), ms.z_minus(0), ms.z_minus(1)]);
        assert!(canonical_timelike_witnesses(&ms, 4).is_err());
        assert!(canonical_timelike_witnesses(&ms, 1).is_err());
    }
}
