//! The manifold family `(M_F, g_F)` on `R^{3s}` with coordinates `(u, t, v)`.
//!
//! The only nonzero metric components are
//! `g(∂u_i,∂u_i) = −2F(u) − 2u·t`, `g(∂u_i,∂v_i) = 1`, `g(∂t_i,∂t_i) = −1`,
//! where `F(u) = f_1(u_1) + … + f_s(u_s)`. Coordinates and frames use the
//! same `u, t, v` block order as [`crate::model`].
//!
//! This module holds the closed forms (written out entry by entry) and the
//! glue that compares them with the generic [`crate::engine`].

use num_traits::{One, Zero};

use crate::algebra::{int, rat, Matrix, Polynomial, Rational};
use crate::engine::{christoffel_field, covariant_derivative_field, curvature_field, ChristoffelField, MetricField, TensorField};
use crate::error::{Error, Result};
use crate::model::{build_model, t_index, u_index, v_index, ModelBasis};
use crate::report::VerificationReport;
use crate::tensor::{pullback, z2_orbit, LinearMap, Tensor, Violation, MAX_VIOLATIONS};

/// `s` and the univariate profile polynomials `f_1..f_s` (each in one variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    s: usize,
    f: Vec<Polynomial>,
}

impl FamilySpec {
    pub fn new(s: usize, f: Vec<Polynomial>) -> Result<Self> {
        if s < 2 {
            return Err(Error::RankTooSmall(s));
        }
        if f.len() != s {
            return Err(Error::DimensionMismatch(format!("expected {s} profile polynomials, got {}", f.len())));
        }
        if f.iter().any(|p| p.nvars() != 1) {
            return Err(Error::DimensionMismatch("each f_i must be univariate".into()));
        }
        Ok(Self { s, f })
    }

    /// Every `f_i` equal to `p`.
    pub fn uniform(s: usize, p: Polynomial) -> Result<Self> {
        Self::new(s, vec![p; s])
    }

    /// `f_i = c · u^power` for all `i`.
    pub fn monomial(s: usize, c: Rational, power: u32) -> Result<Self> {
        Self::uniform(s, Polynomial::monomial(1, 0, power, c))
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        3 * self.s
    }

    pub fn profile(&self, i: usize) -> &Polynomial {
        &self.f[i]
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        coordinate_names(self.s)
    }

    /// `f_i` re-embedded as a polynomial in the `3s` coordinates (variable `u_i`).
    fn profile_in_coords(&self, i: usize) -> Polynomial {
        self.f[i].embed(self.dim(), &[u_index(self.s, i)])
    }

    /// `F_{/i…i}` (`order` derivatives) as a coordinate polynomial.
    pub fn f_derivative(&self, i: usize, order: usize) -> Polynomial {
        let mut p = self.profile_in_coords(i);
        for _ in 0..order {
            p = p.partial(u_index(self.s, i));
        }
        p
    }

    pub fn f_polynomial(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.dim());
        for i in 0..self.s {
            acc.add_scaled(&self.profile_in_coords(i), &Rational::one());
        }
        acc
    }

    /// `g(∂u_i, ∂u_i) = −2F(u) − 2u·t` as a polynomial.
    pub fn h_polynomial(&self) -> Polynomial {
        let n = self.dim();
        let mut h = self.f_polynomial().scale(&int(-2));
        for i in 0..self.s {
            let ut = &Polynomial::var(n, u_index(self.s, i)) * &Polynomial::var(n, t_index(self.s, i));
            h.add_scaled(&ut, &int(-2));
        }
        h
    }

    fn u_squared(&self) -> Polynomial {
        let n = self.dim();
        let mut acc = Polynomial::zero(n);
        for i in 0..self.s {
            let u = Polynomial::var(n, u_index(self.s, i));
            acc.add_product(&u, &u);
        }
        acc
    }
}

pub fn coordinate_names(s: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(3 * s);
    for prefix in ["u", "t", "v"] {
        for i in 1..=s {
            names.push(format!("{prefix}{i}"));
        }
    }
    names
}

/// Seeded profiles `f_i` of degree at most `max_degree` with coefficients
/// from the sampler.
pub fn random_family(s: usize, max_degree: u32, sampler: &mut crate::algebra::SeededSampler) -> Result<FamilySpec> {
    let mut f = Vec::with_capacity(s);
    for _ in 0..s {
        let mut p = Polynomial::zero(1);
        for d in 0..=max_degree {
            if sampler.coin() {
                p.add_scaled(&Polynomial::monomial(1, 0, d, Rational::one()), &sampler.rational());
            }
        }
        f.push(p);
    }
    FamilySpec::new(s, f)
}

/// A point `(u, t, v)` of `R^{3s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCoords {
    pub u: Vec<Rational>,
    pub t: Vec<Rational>,
    pub v: Vec<Rational>,
}

impl PointCoords {
    pub fn new(u: Vec<Rational>, t: Vec<Rational>, v: Vec<Rational>) -> Result<Self> {
        if u.len() != t.len() || t.len() != v.len() {
            return Err(Error::DimensionMismatch("u, t and v must have equal length".into()));
        }
        Ok(Self { u, t, v })
    }

    pub fn from_i64(u: &[i64], t: &[i64], v: &[i64]) -> Self {
        let conv = |xs: &[i64]| xs.iter().map(|&x| int(x)).collect();
        Self::new(conv(u), conv(t), conv(v)).expect("equal lengths")
    }

    pub fn origin(s: usize) -> Self {
        Self { u: vec![Rational::zero(); s], t: vec![Rational::zero(); s], v: vec![Rational::zero(); s] }
    }

    pub fn random(s: usize, sampler: &mut crate::algebra::SeededSampler) -> Self {
        Self { u: sampler.vector(s), t: sampler.vector(s), v: sampler.vector(s) }
    }

    pub fn s(&self) -> usize {
        self.u.len()
    }

    pub fn as_vec(&self) -> Vec<Rational> {
        self.u.iter().chain(&self.t).chain(&self.v).cloned().collect()
    }

    pub fn u_squared(&self) -> Rational {
        self.u.iter().map(|x| x * x).sum()
    }

    pub fn u_dot_t(&self) -> Rational {
        self.u.iter().zip(&self.t).map(|(a, b)| a * b).sum()
    }

    fn check(&self, spec: &FamilySpec) -> Result<()> {
        if self.s() != spec.s() {
            return Err(Error::DimensionMismatch(format!("point for s={} against family s={}", self.s(), spec.s())));
        }
        Ok(())
    }
}

/// Coordinate metric matrix at `p`.
pub fn metric_at(spec: &FamilySpec, p: &PointCoords) -> Result<Matrix> {
    p.check(spec)?;
    let s = spec.s();
    let f_val: Rational = (0..s).map(|i| spec.profile(i).eval(&[p.u[i].clone()])).sum();
    let h = int(-2) * f_val - int(2) * p.u_dot_t();
    let mut g = Matrix::zeros(3 * s, 3 * s);
    for i in 0..s {
        g.set(u_index(s, i), u_index(s, i), h.clone());
        g.set(u_index(s, i), v_index(s, i), int(1));
        g.set(v_index(s, i), u_index(s, i), int(1));
        g.set(t_index(s, i), t_index(s, i), int(-1));
    }
    Ok(g)
}

/// The metric as a polynomial field.
pub fn metric_field(spec: &FamilySpec) -> Result<MetricField> {
    let s = spec.s();
    let n = spec.dim();
    let h = spec.h_polynomial();
    let mut g = vec![vec![Polynomial::zero(n); n]; n];
    for i in 0..s {
        g[u_index(s, i)][u_index(s, i)] = h.clone();
        g[u_index(s, i)][v_index(s, i)] = Polynomial::one(n);
        g[v_index(s, i)][u_index(s, i)] = Polynomial::one(n);
        g[t_index(s, i)][t_index(s, i)] = Polynomial::constant(n, int(-1));
    }
    MetricField::new(spec.coordinate_names(), g)
}

type Entries = Vec<(Vec<usize>, Polynomial)>;

fn place(dim: usize, valence: usize, entries: &Entries) -> TensorField {
    let mut t = TensorField::zeros(dim, valence, dim);
    for (idx, p) in entries {
        t.set(idx, p.clone());
    }
    t
}

fn evaluate(dim: usize, valence: usize, entries: &Entries, p: &PointCoords) -> Tensor {
    let point = p.as_vec();
    let mut t = Tensor::zeros(dim, valence);
    for (idx, poly) in entries {
        t.set(idx, poly.eval(&point));
    }
    t
}

fn orbit_entries(out: &mut Entries, base: [usize; 4], tail: &[usize], value: &Polynomial) {
    for (idx, sign) in z2_orbit(base) {
        let mut full = idx.to_vec();
        full.extend_from_slice(tail);
        out.push((full, value.scale(&int(sign as i64))));
    }
}

/// `F_{/k} + t_k`.
fn f_plus_t(spec: &FamilySpec, k: usize) -> Polynomial {
    let n = spec.dim();
    &spec.f_derivative(k, 1) + &Polynomial::var(n, t_index(spec.s(), k))
}

fn u_var(spec: &FamilySpec, k: usize) -> Polynomial {
    Polynomial::var(spec.dim(), u_index(spec.s(), k))
}

/// Nonzero `g(∇_{∂a} ∂b, ∂c)` at `[a, b, c]`, from the closed-form display.
fn christoffel_first_entries(spec: &FamilySpec) -> Entries {
    let s = spec.s();
    let (u, t) = (|i| u_index(s, i), |i| t_index(s, i));
    let mut out = Entries::new();
    for i in 0..s {
        out.push((vec![u(i), u(i), u(i)], -&f_plus_t(spec, i)));
        for j in 0..s {
            if j != i {
                out.push((vec![u(i), u(i), u(j)], f_plus_t(spec, j)));
                out.push((vec![u(i), u(j), u(i)], -&f_plus_t(spec, j)));
                out.push((vec![u(j), u(i), u(i)], -&f_plus_t(spec, j)));
            }
        }
        for k in 0..s {
            let uk = u_var(spec, k);
            out.push((vec![u(i), u(i), t(k)], uk.clone()));
            out.push((vec![u(i), t(k), u(i)], -&uk));
            out.push((vec![t(k), u(i), u(i)], -&uk));
        }
    }
    out
}

/// Nonzero `Γ^c_{ab}` at `[c, a, b]`, from the raised-index display.
fn christoffel_second_entries(spec: &FamilySpec) -> Entries {
    let s = spec.s();
    let (u, t, v) = (|i| u_index(s, i), |i| t_index(s, i), |i| v_index(s, i));
    let mut out = Entries::new();
    for i in 0..s {
        // ∇_{u_i} ∂u_i
        out.push((vec![v(i), u(i), u(i)], -&f_plus_t(spec, i)));
        for k in 0..s {
            if k != i {
                out.push((vec![v(k), u(i), u(i)], f_plus_t(spec, k)));
            }
            out.push((vec![t(k), u(i), u(i)], -&u_var(spec, k)));
        }
        // ∇_{u_i} ∂u_j, i ≠ j
        for j in 0..s {
            if j != i {
                out.push((vec![v(i), u(i), u(j)], -&f_plus_t(spec, j)));
                out.push((vec![v(j), u(i), u(j)], -&f_plus_t(spec, i)));
            }
        }
        // ∇_{u_i} ∂t_k = ∇_{t_k} ∂u_i = −u_k ∂v_i
        for k in 0..s {
            let uk = u_var(spec, k);
            out.push((vec![v(i), u(i), t(k)], -&uk));
            out.push((vec![v(i), t(k), u(i)], -&uk));
        }
    }
    out
}

/// `R(∂u_i,∂u_j,∂u_j,∂u_i) = F_{/ii} + F_{/jj} + |u|²` and
/// `R(∂u_i,∂u_j,∂u_j,∂t_i) = 1`, each with its pair-symmetry orbit.
fn curvature_entries(spec: &FamilySpec) -> Entries {
    let s = spec.s();
    let n = spec.dim();
    let usq = spec.u_squared();
    let mut out = Entries::new();
    for i in 0..s {
        for j in 0..s {
            if i == j {
                continue;
            }
            let mut a = &spec.f_derivative(i, 2) + &spec.f_derivative(j, 2);
            a.add_scaled(&usq, &Rational::one());
            orbit_entries(&mut out, [u_index(s, i), u_index(s, j), u_index(s, j), u_index(s, i)], &[], &a);
            orbit_entries(&mut out, [u_index(s, i), u_index(s, j), u_index(s, j), t_index(s, i)], &[], &Polynomial::one(n));
        }
    }
    out
}

/// `∇R(∂u_i,∂u_j,∂u_j,∂u_i; ∂u_i) = F_{/iii} + 4u_i` with its orbit in the first four slots.
fn nabla_listed_entries(spec: &FamilySpec) -> Entries {
    let s = spec.s();
    let mut out = Entries::new();
    for i in 0..s {
        let mut val = spec.f_derivative(i, 3);
        val.add_scaled(&u_var(spec, i), &int(4));
        for j in 0..s {
            if j != i {
                orbit_entries(&mut out, [u_index(s, i), u_index(s, j), u_index(s, j), u_index(s, i)], &[u_index(s, i)], &val);
            }
        }
    }
    out
}

/// Components of `∇R` that involve three distinct `u`-indices (so exist only
/// for `s ≥ 3`): `∇R(∂u_i,∂u_j,∂u_j,∂u_i; ∂u_k) = 2u_k` and
/// `∇R(∂u_k,∂u_j,∂u_j,∂u_l; ∂u_k) = u_l`, with orbits. They come from
/// `∂_k|u|² = 2u_k` and from the `−Σ u_k ∂t_k` term of `∇_{∂u_k}∂u_k`.
fn nabla_mixed_entries(spec: &FamilySpec) -> Entries {
    let s = spec.s();
    let u = |i| u_index(s, i);
    let mut out = Entries::new();
    for i in 0..s {
        for j in 0..s {
            for k in 0..s {
                if i == j || j == k || i == k {
                    continue;
                }
                orbit_entries(&mut out, [u(i), u(j), u(j), u(i)], &[u(k)], &u_var(spec, k).scale(&int(2)));
                // (k, j, j, l; k) = u_l with l = i
                orbit_entries(&mut out, [u(k), u(j), u(j), u(i)], &[u(k)], &u_var(spec, i));
            }
        }
    }
    out
}

/// Closed-form objects as polynomial fields.
#[derive(Debug, Clone)]
pub struct ClosedForms {
    pub christoffel_first: TensorField,
    pub christoffel_second: TensorField,
    pub curvature: TensorField,
    /// The listed `F_{/iii} + 4u_i` components only.
    pub nabla_listed: TensorField,
    /// Full `∇R`: listed plus three-index components.
    pub nabla_curvature: TensorField,
}

impl ClosedForms {
    pub fn new(spec: &FamilySpec) -> Self {
        let n = spec.dim();
        let listed = nabla_listed_entries(spec);
        let mut full = listed.clone();
        full.extend(nabla_mixed_entries(spec));
        Self {
            christoffel_first: place(n, 3, &christoffel_first_entries(spec)),
            christoffel_second: place(n, 3, &christoffel_second_entries(spec)),
            curvature: place(n, 4, &curvature_entries(spec)),
            nabla_listed: place(n, 5, &listed),
            nabla_curvature: place(n, 5, &full),
        }
    }
}

/// Closed-form curvature tensor at `p` in the coordinate frame.
pub fn curvature_closed(spec: &FamilySpec, p: &PointCoords) -> Result<Tensor> {
    p.check(spec)?;
    Ok(evaluate(spec.dim(), 4, &curvature_entries(spec), p))
}

/// Closed-form `∇R` at `p` (derivative slot last), including the
/// three-index components present for `s ≥ 3`.
pub fn nabla_curvature_closed(spec: &FamilySpec, p: &PointCoords) -> Result<Tensor> {
    p.check(spec)?;
    let mut entries = nabla_listed_entries(spec);
    entries.extend(nabla_mixed_entries(spec));
    Ok(evaluate(spec.dim(), 5, &entries, p))
}

/// Only the `F_{/iii} + 4u_i` components of `∇R` at `p`.
pub fn nabla_curvature_listed(spec: &FamilySpec, p: &PointCoords) -> Result<Tensor> {
    p.check(spec)?;
    Ok(evaluate(spec.dim(), 5, &nabla_listed_entries(spec), p))
}

/// Closed-form `Γ^c_{ab}` at `p`, stored at `[c, a, b]`.
pub fn christoffel_closed(spec: &FamilySpec, p: &PointCoords) -> Result<Tensor> {
    p.check(spec)?;
    Ok(evaluate(spec.dim(), 3, &christoffel_second_entries(spec), p))
}

/// `α_F(p) = Σ_i (F_{/iii}(u_i) + 4u_i)²`.
pub fn alpha(spec: &FamilySpec, p: &PointCoords) -> Result<Rational> {
    p.check(spec)?;
    let mut acc = Rational::zero();
    for i in 0..spec.s() {
        let mut d = spec.profile(i).clone();
        for _ in 0..3 {
            d = d.partial(0);
        }
        let term = d.eval(&[p.u[i].clone()]) + int(4) * &p.u[i];
        acc += &term * &term;
    }
    Ok(acc)
}

/// Generic-engine objects for one family, with `∇^k R` for `k = 1..=kmax`.
#[derive(Debug, Clone)]
pub struct EngineFamily {
    spec: FamilySpec,
    metric: MetricField,
    christoffel: ChristoffelField,
    curvature: TensorField,
    nablas: Vec<TensorField>,
}

impl EngineFamily {
    pub fn new(spec: &FamilySpec, kmax: usize) -> Result<Self> {
        let metric = metric_field(spec)?;
        let christoffel = christoffel_field(&metric);
        let curvature = curvature_field(&metric, &christoffel);
        let mut nablas: Vec<TensorField> = Vec::with_capacity(kmax);
        for _ in 0..kmax {
            let prev = nablas.last().unwrap_or(&curvature);
            let next = covariant_derivative_field(prev, &christoffel, 4 + kmax)?;
            nablas.push(next);
        }
        Ok(Self { spec: spec.clone(), metric, christoffel, curvature, nablas })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }

    pub fn christoffel(&self) -> &ChristoffelField {
        &self.christoffel
    }

    pub fn curvature(&self) -> &TensorField {
        &self.curvature
    }

    pub fn kmax(&self) -> usize {
        self.nablas.len()
    }

    /// `∇^k R` for `1 ≤ k ≤ kmax`.
    pub fn nabla(&self, k: usize) -> Result<&TensorField> {
        if k == 0 || k > self.nablas.len() {
            return Err(Error::OutOfRange(format!("k = {k} outside 1..={}", self.nablas.len())));
        }
        Ok(&self.nablas[k - 1])
    }

    /// `2^{−k−1} Σ (∇^k R)²` over components whose slots are all `∂u`.
    pub fn alpha_k(&self, p: &PointCoords, k: usize) -> Result<Rational> {
        p.check(&self.spec)?;
        let field = self.nabla(k)?;
        let s = self.spec.s();
        let point = p.as_vec();
        let mut acc = Rational::zero();
        for (idx, poly) in field.nonzero_entries() {
            if idx.iter().all(|&a| a < s) {
                let v = poly.eval(&point);
                acc += &v * &v;
            }
        }
        let scale = Rational::new(1.into(), num_bigint::BigInt::from(2).pow((k + 1) as u32));
        Ok(acc * scale)
    }
}

/// `α_F^k` at `p` from a freshly built engine.
pub fn alpha_k(spec: &FamilySpec, p: &PointCoords, k: usize, kmax: usize) -> Result<Rational> {
    if k == 0 || k > kmax {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={kmax}")));
    }
    EngineFamily::new(spec, k)?.alpha_k(p, k)
}

/// The pointwise frame `U_i = ∂u_i + ε_i∂t_i + ϱ_i∂v_i`, `T_i = ∂t_i + ε_i∂v_i`,
/// `V_i = ∂v_i` and the map `Ψ` from coordinate components to frame components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationData {
    pub epsilon: Vec<Rational>,
    pub rho: Vec<Rational>,
    pub frame: ModelBasis,
    pub psi: LinearMap,
}

pub fn normalized_basis_at(spec: &FamilySpec, p: &PointCoords) -> Result<NormalizationData> {
    let g = metric_at(spec, p)?;
    let s = spec.s();
    let n = spec.dim();
    let usq = p.u_squared();
    let mut epsilon = Vec::with_capacity(s);
    let mut rho = Vec::with_capacity(s);
    for i in 0..s {
        let f2 = spec.profile(i).partial(0).partial(0).eval(&[p.u[i].clone()]);
        let e = -(f2 / int(2)) - &usq / int(4);
        let r = (&e * &e - g.get(u_index(s, i), u_index(s, i))) / int(2);
        epsilon.push(e);
        rho.push(r);
    }
    let mut vectors = vec![vec![Rational::zero(); n]; n];
    for i in 0..s {
        let (u, t, v) = (u_index(s, i), t_index(s, i), v_index(s, i));
        vectors[u][u] = Rational::one();
        vectors[u][t] = epsilon[i].clone();
        vectors[u][v] = rho[i].clone();
        vectors[t][t] = Rational::one();
        vectors[t][v] = epsilon[i].clone();
        vectors[v][v] = Rational::one();
    }
    let frame = ModelBasis::new(s, vectors)?;
    let psi = frame.as_map().inverse()?;
    Ok(NormalizationData { epsilon, rho, frame, psi })
}

/// Differences between `(g_P, R_P)` read in the normalized frame and the model,
/// plus the reverse pullback `Ψ*(g_3s, R_3s) = (g_P, R_P)`; empty on success.
pub fn check_normalization(spec: &FamilySpec, p: &PointCoords, data: &NormalizationData) -> Result<Vec<Violation>> {
    let ms = build_model(spec.s())?;
    let g_p = Tensor::from_matrix(&metric_at(spec, p)?);
    let r_p = curvature_closed(spec, p)?;
    let mut out = Vec::new();
    let frame = data.frame.as_map();
    let pairs = [
        ("frame-metric", pullback(&g_p, &frame)?, ms.metric_tensor()),
        ("frame-curvature", pullback(&r_p, &frame)?, ms.curvature().clone()),
        ("psi-metric", pullback(&ms.metric_tensor(), &data.psi)?, g_p.clone()),
        ("psi-curvature", pullback(ms.curvature(), &data.psi)?, r_p.clone()),
    ];
    for (name, actual, expected) in pairs {
        for (idx, a, e) in actual.differences(&expected, MAX_VIOLATIONS)? {
            out.push(Violation { index: idx, identity: name, lhs: a, rhs: e });
        }
    }
    out.truncate(MAX_VIOLATIONS);
    Ok(out)
}

const CROSSCHECK: &str = "crosscheck";

fn describe_field_diffs(diffs: &[(Vec<usize>, Polynomial, Polynomial)], names: &[String]) -> String {
    match diffs.first() {
        None => "identical".to_string(),
        Some((idx, a, b)) => format!(
            "{} differing entries; first at {:?}: closed={} engine={}",
            diffs.len(),
            idx,
            a.display_with(names),
            b.display_with(names)
        ),
    }
}

/// Compares closed forms with engine fields as polynomial identities.
pub fn crosscheck_fields(closed: &ClosedForms, engine: &EngineFamily) -> VerificationReport {
    let names = engine.spec().coordinate_names();
    let s = engine.spec().s();
    let mut report = VerificationReport::new();
    let limit = 64;
    let pairs: [(&str, &TensorField, &TensorField); 3] = [
        ("christoffel_first_kind", &closed.christoffel_first, engine.christoffel().first_kind_field()),
        ("christoffel_second_kind", &closed.christoffel_second, engine.christoffel().second_kind_field()),
        ("curvature", &closed.curvature, engine.curvature()),
    ];
    for (name, c, e) in pairs {
        let d = c.differences(e, limit);
        report.check(CROSSCHECK, &format!("{name}.s{s}"), d.is_empty(), describe_field_diffs(&d, &names));
    }
    match engine.nabla(1) {
        Ok(nabla) => {
            let d = closed.nabla_curvature.differences(nabla, limit);
            report.check(CROSSCHECK, &format!("nabla_curvature.s{s}"), d.is_empty(), describe_field_diffs(&d, &names));
            let listed = closed.nabla_listed.differences(nabla, usize::MAX);
            let detail = if listed.is_empty() {
                "listed F'''+4u components alone reproduce the engine's nabla R".to_string()
            } else {
                format!(
                    "listed F'''+4u components alone miss {} engine entries (three distinct u-indices); first {:?} = {}",
                    listed.len(),
                    listed[0].0,
                    listed[0].2.display_with(&names)
                )
            };
            report.note(CROSSCHECK, &format!("nabla_listed_only.s{s}"), detail);
        }
        Err(e) => report.check(CROSSCHECK, &format!("nabla_curvature.s{s}"), false, e.to_string()),
    }
    report
}

fn describe_point_diffs(diffs: &[(Vec<usize>, Rational, Rational)]) -> String {
    match diffs.first() {
        None => "identical".to_string(),
        Some((idx, a, b)) => format!("{} differing entries; first at {:?}: closed={} engine={}", diffs.len(), idx, a, b),
    }
}

/// Entrywise comparison of closed-form and engine `Γ`, `R`, `∇R` at one point.
pub fn crosscheck_point(closed: &ClosedForms, engine: &EngineFamily, p: &PointCoords) -> Result<VerificationReport> {
    p.check(engine.spec())?;
    let point = p.as_vec();
    let mut report = VerificationReport::new();
    let nabla = engine.nabla(1)?;
    let pairs: [(&str, &TensorField, &TensorField); 3] = [
        ("christoffel", &closed.christoffel_second, engine.christoffel().second_kind_field()),
        ("curvature", &closed.curvature, engine.curvature()),
        ("nabla_curvature", &closed.nabla_curvature, nabla),
    ];
    for (name, c, e) in pairs {
        let d = c.eval(&point).differences(&e.eval(&point), MAX_VIOLATIONS)?;
        report.check(CROSSCHECK, name, d.is_empty(), describe_point_diffs(&d));
    }
    Ok(report)
}

/// Builds both computation paths for `spec` and compares them at `p`.
pub fn crosscheck_at(spec: &FamilySpec, p: &PointCoords) -> Result<VerificationReport> {
    let engine = EngineFamily::new(spec, 1)?;
    crosscheck_point(&ClosedForms::new(spec), &engine, p)
}

/// `(1/2)` as a convenience for callers building frames by hand.
pub fn half() -> Rational {
    rat(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(s: usize) -> FamilySpec {
        FamilySpec::monomial(s, int(1), 3).unwrap()
    }

    fn quartic(s: usize) -> FamilySpec {
        FamilySpec::monomial(s, rat(-1, 6), 4).unwrap()
    }

    fn p12() -> PointCoords {
        PointCoords::from_i64(&[1, 2], &[3, 4], &[0, 0])
    }

    #[test]
    fn spec_validation() {
        assert_eq!(FamilySpec::monomial(1, int(1), 3), Err(Error::RankTooSmall(1)));
        assert!(FamilySpec::new(2, vec![Polynomial::var(1, 0)]).is_err());
        assert!(FamilySpec::new(2, vec![Polynomial::var(2, 0), Polynomial::var(2, 1)]).is_err());
    }

    #[test]
    fn metric_entry_example() {
        let g = metric_at(&cubic(2), &p12()).unwrap();
        assert_eq!(g.get(0, 0), &int(-40));
        assert_eq!(g.get(1, 1), &int(-40));
        assert_eq!(g.get(0, 4), &int(1));
        assert_eq!(g.get(2, 2), &int(-1));
    }

    #[test]
    fn metric_vanishes_when_f_and_ut_do() {
        let spec = FamilySpec::uniform(2, Polynomial::zero(1)).unwrap();
        let p = PointCoords::from_i64(&[1, 0], &[0, 5], &[7, 7]);
        assert_eq!(metric_at(&spec, &p).unwrap().get(0, 0), &int(0));
    }

    #[test]
    fn curvature_examples() {
        let spec = cubic(2);
        let r = curvature_closed(&spec, &p12()).unwrap();
        assert_eq!(r.get(&[0, 1, 1, 0]), &int(23));
        assert_eq!(r.get(&[0, 1, 1, 2]), &int(1));
        for (idx, _) in r.nonzero_entries() {
            assert!(idx.iter().all(|&a| a < 4), "v-slot entry at {idx:?}");
        }
    }

    #[test]
    fn nabla_examples() {
        let n = nabla_curvature_closed(&cubic(2), &p12()).unwrap();
        assert_eq!(n.get(&[0, 1, 1, 0, 0]), &int(10));
        assert_eq!(n.get(&[1, 0, 0, 1, 1]), &int(14));
        assert!(nabla_curvature_closed(&quartic(2), &PointCoords::from_i64(&[3, -5], &[1, 1], &[2, 2])).unwrap().is_zero());
        let flat = FamilySpec::uniform(3, Polynomial::zero(1)).unwrap();
        assert!(nabla_curvature_closed(&flat, &PointCoords::origin(3)).unwrap().is_zero());
    }

    #[test]
    fn quartic_nabla_survives_for_s3() {
        // three-index components 2u_k remain when s = 3
        let p = PointCoords::from_i64(&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]);
        let n = nabla_curvature_closed(&quartic(3), &p).unwrap();
        assert_eq!(n.get(&[0, 1, 1, 0, 2]), &int(2));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&cubic(2), &p12()).unwrap(), int(296));
        let flat = FamilySpec::uniform(2, Polynomial::zero(1)).unwrap();
        assert_eq!(alpha(&flat, &PointCoords::from_i64(&[1, 0], &[0, 0], &[0, 0])).unwrap(), int(16));
        assert_eq!(alpha(&quartic(2), &PointCoords::from_i64(&[7, -3], &[0, 0], &[0, 0])).unwrap(), int(0));
    }

    #[test]
    fn normalization_example() {
        let d = normalized_basis_at(&cubic(2), &p12()).unwrap();
        assert_eq!(d.epsilon, vec![rat(-17, 4), rat(-29, 4)]);
        assert_eq!(d.rho, vec![rat(929, 32), rat(1481, 32)]);
        assert!(check_normalization(&cubic(2), &p12(), &d).unwrap().is_empty());
    }

    #[test]
    fn normalization_at_flat_origin_is_coordinate_frame() {
        let spec = FamilySpec::uniform(2, Polynomial::zero(1)).unwrap();
        let d = normalized_basis_at(&spec, &PointCoords::origin(2)).unwrap();
        assert!(d.epsilon.iter().chain(&d.rho).all(Zero::is_zero));
        assert_eq!(d.frame, ModelBasis::standard(2));
    }

    #[test]
    fn flat_instance_crosscheck() {
        let spec = FamilySpec::uniform(2, Polynomial::zero(1)).unwrap();
        let p = PointCoords::origin(2);
        let r = curvature_closed(&spec, &p).unwrap();
        assert_eq!(r.get(&[0, 1, 1, 0]), &int(0));
        assert_eq!(r.get(&[0, 1, 1, 2]), &int(1));
        assert!(crosscheck_at(&spec, &p).unwrap().all_pass());
    }

    #[test]
    fn planted_typo_is_located() {
        let spec = cubic(2);
        let engine = EngineFamily::new(&spec, 1).unwrap();
        let mut closed = ClosedForms::new(&spec);
        let mut bad = closed.curvature.get(&[0, 1, 1, 0]).clone();
        bad.add_scaled(&Polynomial::one(6), &int(1));
        closed.curvature.set(&[0, 1, 1, 0], bad);
        let report = crosscheck_point(&closed, &engine, &p12()).unwrap();
        let item = report.find("crosscheck", "curvature").unwrap();
        assert_eq!(item.kind, crate::report::ItemKind::Check(crate::report::Status::Fail));
        assert!(item.detail.contains("[0, 1, 1, 0]"), "{}", item.detail);
    }

    #[test]
    fn alpha_k_bounds() {
        assert!(matches!(alpha_k(&cubic(2), &p12(), 0, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(alpha_k(&cubic(2), &p12(), 3, 2), Err(Error::OutOfRange(_))));
    }
}
