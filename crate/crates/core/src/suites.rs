//! Suite orchestration: every check the CLI runs, in a fixed order.
//!
//! Each suite draws from its own sampler stream, so selecting a subset of
//! suites does not change the lines the selected suites produce. Errors
//! inside a suite become `FAIL` lines; recorded values that are not pass/fail
//! claims become `NOTE` lines.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{int, rat, Matrix, Polynomial, Rational, SeededSampler};
use crate::config::{FaultTarget, RunConfig};
use crate::engine::ricci_field;
use crate::error::{Error, Result};
use crate::family::{
    alpha, check_normalization, crosscheck_fields, crosscheck_point, metric_at, normalized_basis_at, ClosedForms, EngineFamily, FamilySpec,
    PointCoords,
};
use crate::invariants::{
    alpha_via_quotient, homogeneity_obstruction, induced_structures, kernel_subspace_av, lemma71_check, orthogonal_complement, Subspace,
};
use crate::jacobi::{
    canonical_timelike_witnesses, ell_invariant, jordan_partition, osserman_scan, rank_profile, sample_plane, CausalType, JacobiContext,
    PlaneBasis, RankProfile,
};
use crate::model::{build_model, random_normalized_basis, validate_normalized_basis, ModelBasis, ModelSpace};
use crate::report::VerificationReport;
use crate::tensor::{check_first_bianchi, check_pair_symmetries, contract, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteId {
    Model,
    Crosscheck,
    Curvature,
    Homogeneity,
    Osserman,
    HigherOsserman,
    Quotients,
    Invariants,
}

impl SuiteId {
    pub const ALL: [SuiteId; 8] = [
        SuiteId::Model,
        SuiteId::Crosscheck,
        SuiteId::Curvature,
        SuiteId::Homogeneity,
        SuiteId::Osserman,
        SuiteId::HigherOsserman,
        SuiteId::Quotients,
        SuiteId::Invariants,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::Model => "model",
            SuiteId::Crosscheck => "crosscheck",
            SuiteId::Curvature => "curvature",
            SuiteId::Homogeneity => "homogeneity",
            SuiteId::Osserman => "osserman",
            SuiteId::HigherOsserman => "higher_osserman",
            SuiteId::Quotients => "quotients",
            SuiteId::Invariants => "invariants",
        }
    }

    fn stream(&self) -> u64 {
        *self as u64 + 1
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SuiteId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = SuiteId::ALL.iter().map(|i| i.as_str()).collect();
            format!("unknown suite `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// Everything the suites share for one configuration.
pub struct SuiteContext {
    pub cfg: RunConfig,
    pub spec: FamilySpec,
    pub model: ModelSpace,
    /// Closed forms, with any configured faults applied.
    pub closed: ClosedForms,
    pub engine: EngineFamily,
    pub points: Vec<PointCoords>,
}

impl SuiteContext {
    pub fn new(cfg: &RunConfig) -> Result<Self> {
        let spec = cfg.spec()?;
        let model = build_model(cfg.s)?;
        let mut closed = ClosedForms::new(&spec);
        for fault in &cfg.faults {
            let field = match fault.target {
                FaultTarget::Christoffel => &mut closed.christoffel_second,
                FaultTarget::Curvature => &mut closed.curvature,
                FaultTarget::Nabla => &mut closed.nabla_curvature,
            };
            let mut p = field.get(&fault.index).clone();
            p.add_scaled(&Polynomial::one(spec.dim()), &Rational::one());
            field.set(&fault.index, p);
        }
        let engine = EngineFamily::new(&spec, cfg.kmax)?;
        let points = if cfg.points.is_empty() {
            let mut sampler = base_sampler(cfg).fork(0);
            (0..crate::config::DEFAULT_POINTS).map(|_| PointCoords::random(cfg.s, &mut sampler)).collect()
        } else {
            cfg.points.clone()
        };
        Ok(Self { cfg: cfg.clone(), spec, model, closed, engine, points })
    }

    pub fn sampler(&self, suite: SuiteId) -> SeededSampler {
        base_sampler(&self.cfg).fork(suite.stream())
    }

    pub fn s(&self) -> usize {
        self.spec.s()
    }

    /// `(g_P, R_P)` at a point, with `R_P` from the (possibly faulted) closed form.
    pub fn at(&self, p: &PointCoords) -> Result<(Matrix, Tensor)> {
        Ok((metric_at(&self.spec, p)?, self.closed.curvature.eval(&p.as_vec())))
    }
}

fn base_sampler(cfg: &RunConfig) -> SeededSampler {
    SeededSampler::new(cfg.seed, cfg.bound)
}

fn show_u(p: &PointCoords) -> String {
    p.u.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn point_label(n: usize) -> String {
    format!("p{}", n + 1)
}

fn violations_detail(v: &[crate::tensor::Violation]) -> String {
    match v.first() {
        None => "no violations".to_string(),
        Some(first) => format!("{} violations; first {}", v.len(), first),
    }
}

/// Runs every suite in order.
pub fn run_suites(cfg: &RunConfig) -> VerificationReport {
    run_selected(cfg, &SuiteId::ALL)
}

/// Runs the chosen suites in canonical order; duplicates are ignored.
pub fn run_selected(cfg: &RunConfig, suites: &[SuiteId]) -> VerificationReport {
    let mut report = VerificationReport::new();
    let ctx = match SuiteContext::new(cfg) {
        Ok(ctx) => ctx,
        Err(e) => {
            report.check("setup", "context", false, e.to_string());
            return report;
        }
    };
    for id in SuiteId::ALL {
        if suites.contains(&id) {
            report.extend(run_one(&ctx, id));
        }
    }
    report
}

pub fn run_one(ctx: &SuiteContext, id: SuiteId) -> VerificationReport {
    let mut report = VerificationReport::new();
    let outcome = match id {
        SuiteId::Model => model_suite(ctx, &mut report),
        SuiteId::Crosscheck => crosscheck_suite(ctx, &mut report),
        SuiteId::Curvature => curvature_suite(ctx, &mut report),
        SuiteId::Homogeneity => homogeneity_suite(ctx, &mut report),
        SuiteId::Osserman => osserman_suite(ctx, &mut report),
        SuiteId::HigherOsserman => higher_osserman_suite(ctx, &mut report),
        SuiteId::Quotients => quotients_suite(ctx, &mut report),
        SuiteId::Invariants => invariants_suite(ctx, &mut report),
    };
    if let Err(e) = outcome {
        report.check(id.as_str(), "error", false, e.to_string());
    }
    report
}

fn model_suite(ctx: &SuiteContext, r: &mut VerificationReport) -> Result<()> {
    const S: &str = "model";
    let ms = &ctx.model;
    let s = ms.s();
    let inertia = ms.metric().symmetric_signature()?;
    r.check(
        S,
        "signature",
        (inertia.neg, inertia.pos, inertia.zero) == (2 * s, s, 0),
        format!("inertia {inertia}, expected ({},{s},0)", 2 * s),
    );
    let sym = check_pair_symmetries(ms.curvature())?;
    r.check(S, "pair_symmetries", sym.is_empty(), violations_detail(&sym));
    let bianchi = check_first_bianchi(ms.curvature())?;
    r.check(S, "first_bianchi", bianchi.is_empty(), violations_detail(&bianchi));
    let std = validate_normalized_basis(ms, &ModelBasis::standard(s))?;
    r.check(S, "standard_basis_normalized", std.is_empty(), violations_detail(&std));
    let mut scaled = ModelBasis::standard(s).vectors().to_vec();
    scaled[0] = scaled[0].iter().map(|x| x * int(2)).collect();
    let bad = validate_normalized_basis(ms, &ModelBasis::new(s, scaled)?)?;
    r.check(S, "scaled_basis_rejected", !bad.is_empty(), violations_detail(&bad));
    let mut sampler = ctx.sampler(SuiteId::Model);
    let n = 10;
    let mut failures = 0;
    for _ in 0..n {
        let b = random_normalized_basis(ms, &mut sampler);
        if !validate_normalized_basis(ms, &b)?.is_empty() {
            failures += 1;
        }
    }
    r.check(S, "random_normalized_bases", failures == 0, format!("{}/{} seeded bases normalized", n - failures, n));
    Ok(())
}

fn crosscheck_suite(ctx: &SuiteContext, r: &mut VerificationReport) -> Result<()> {
    r.extend(crosscheck_fields(&ctx.closed, &ctx.engine));
    for (n, p) in ctx.points.iter().enumerate() {
        for item in crosscheck_point(&ctx.closed, &ctx.engine, p)?.items() {
            let ok = matches!(item.kind, crate::report::ItemKind::Check(crate::report::Status::Pass));
            r.check(&item.suite, &format!("{}.{}", item.name, point_label(n)), ok, item.detail.clone());
        }
    }
    Ok(())
}

fn curvature_suite(ctx: &SuiteContext, r: &mut VerificationReport) -> Result<()> {
    const S: &str = "curvature";
    let s = ctx.s();
    let n = 3 * s;
    let ricci = ricci_field(ctx.engine.curvature(), ctx.engine.metric())?;
    r.check(S, "ricci_field_zero", ricci.is_zero(), format!("{} nonzero Ricci entries", ricci.count_nonzero()));
    let mut sampler = ctx.sampler(SuiteId::Curvature);
    let per_point = (ctx.cfg.samples / ctx.points.len().max(1)).max(2);
    let hex_per_point = (ctx.cfg.plane_samples() / ctx.points.len().max(1)).max(1);
    let mut v_free = true;
    for (k, p) in ctx.points.iter().enumerate() {
        let label = point_label(k);
        let (g, rt) = ctx.at(p)?;
        let sym = check_pair_symmetries(&rt)?;
        r.check(S, &format!("pair_symmetries.{label}"), sym.is_empty(), violations_detail(&sym));
        let bianchi = check_first_bianchi(&rt)?;
        r.check(S, &format!("first_bianchi.{label}"), bianchi.is_empty(), violations_detail(&bianchi));
        let ric = contract(&rt, &g.inverse()?, (0, 3))?;
        r.check(S, &format!("ricci_zero.{label}"), ric.is_zero(), format!("{} nonzero entries", ric.count_nonzero()));
        let det_ok = ctx.engine.metric().determinant().is_one();
        r.check(S, &format!("metric_det.{label}"), det_ok, format!("det = {}", ctx.engine.metric().determinant()));
        let mut shifted = p.clone();
        shifted.v = sampler.vector(s);
        v_free &= metric_at(&ctx.spec, &shifted)? == g;

        let jc = JacobiContext::new(g, rt)?;
        let mut cube_fail = 0;
        for _ in 0..per_point {
            let z = sampler.vector(n);
            if !jc.jacobi(&z)?.pow(3).is_zero() {
                cube_fail += 1;
            }
        }
        r.check(
            S,
            &format!("jacobi_cube_zero.{label}"),
            cube_fail == 0,
            format!("{}/{} sampled z with J(z)^3 = 0", per_point - cube_fail, per_point),
        );
        let mut triple_fail = 0;
        for _ in 0..hex_per_point {
            let z: Vec<Vec<Rational>> = (0..6).map(|_| sampler.vector(n)).collect();
            let a = jc.curvature_operator(&z[0], &z[1])?;
            let b = jc.curvature_operator(&z[2], &z[3])?;
            let c = jc.curvature_operator(&z[4], &z[5])?;
            if !a.mul(&b)?.mul(&c)?.is_zero() {
                triple_fail += 1;
            }
        }
        r.check(
            S,
            &format!("triple_product_zero.{label}"),
            triple_fail == 0,
            format!("{}/{} hextuples with R(z1,z2)R(z3,z4)R(z5,z6) = 0", hex_per_point - triple_fail, hex_per_point),
        );
    }
    r.check(S, "metric_independent_of_v", v_free, "metric_at unchanged under random v");
    let nabla_zero = ctx.closed.nabla_curvature.is_zero();
    r.note(S, "symmetric_space", format!("nabla R identically zero: {nabla_zero}"));
    Ok(())
}

fn homogeneity_suite(ctx: &SuiteContext, r: &mut VerificationReport) -> Result<()> {
    const S: &str = "homogeneity";
    for (k, p) in ctx.points.iter().enumerate() {
        let data = normalized_basis_at(&ctx.spec, p)?;
        let (g, rt) = ctx.at(p)?;
        let frame = data.frame.as_map();
        let mut v = Vec::new();
        let gb = crate::tensor::pullback(&Tensor::from_matrix(&g), &frame)?;
        let rb = crate::tensor::pullback(&rt, &frame)?;
        for (idx, a, e) in gb.differences(&ctx.model.metric_tensor(), 4)? {
            v.push(format!("metric {idx:?}: {a} != {e}"));
        }
        for (idx, a, e) in rb.differences(ctx.model.curvature(), 4)? {
            v.push(format!("curvature {idx:?}: {a} != {e}"));
        }
        let eps = data.epsilon.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let detail = if v.is_empty() {
            format!("u=({}) eps=({eps}) frame pulls (g,R) back to the model", show_u(p))
        } else {
            format!("u=({}) {}", show_u(p), v.join("; "))
        };
        r.check(S, &format!("normalized_frame.{}", point_label(k)), v.is_empty(), detail);
        let psi = check_normalization(&ctx.spec, p, &data)?;
        r.check(S, &format!("psi_pullback.{}", point_label(k)), psi.is_empty(), violations_detail(&psi));
    }
    Ok(())
}

fn expected_spacelike(s: usize) -> RankProfile {
    RankProfile::from_ranks(3 * s, &[2 * (s - 1), s - 1])
}

fn osserman_suite(ctx: &SuiteContext, r: &mut VerificationReport) -> Result<()> {
    const S: &str = "osserman";
    let ms = &ctx.model;
    let s = ms.s();
    let jc = JacobiContext::from_model(ms);
    let mut sampler = ctx.sampler(SuiteId::Osserman);
    let expected = expected_spacelike(s);
    let scan = osserman_scan(&jc, CausalType::Spacelike, 1, ctx.cfg.samples, &mut sampler, &[])?;
    let part = scan.partition().map(|p| p.to_string()).unwrap_or_default();
    r.check(
        S,
        "model_spacelike_constant",
        scan.profile.as_ref() == Some(&expected),
        format!("{scan}; expected {expected} partition {}", jordan_partition(&expected)?),
    );
    r.check(S, "model_spacelike_partition", part == jordan_partition(&expected)?.to_string(), format!("partition {part}"));
    r.check(
        S,
        "model_nilpotent_self_adjoint",
        scan.cube_vanishes && scan.self_adjoint,
        format!("J^3 = 0: {}, self-adjoint: {}", scan.cube_vanishes, scan.self_adjoint),
    );
    let injected = vec![vec![ms.t(0)], vec![ms.z_minus(0)]];
    let t = osserman_scan(&jc, CausalType::Timelike, 1, ctx.cfg.samples, &mut sampler, &injected)?;
    let ok = match &t.witnesses {
        Some((a, b)) => a.vectors[0] == ms.t(0) && b.vectors[0] == ms.z_minus(0) && a.profile.is_zero() && !b.profile.is_zero(),
        None => false,
    };
    r.check(S, "model_timelike_witnesses", ok, format!("{t}; injected T_1, Z_1^-"));

    let per_point = (ctx.cfg.samples / ctx.points.len().max(1)).max(2);
    for (k, p) in ctx.points.iter().enumerate() {
        let label = point_label(k);
        let (g, rt) = ctx.at(p)?;
        let mc = JacobiContext::new(g.clone(), rt)?;
        let scan = osserman_scan(&mc, CausalType::Spacelike, 1, per_point, &mut sampler, &[])?;
        r.check(
            S,
            &format!("manifold_spacelike_constant.{label}"),
            scan.profile.as_ref() == Some(&expected) && scan.cube_vanishes && scan.self_adjoint,
            scan.to_string(),
        );
        let psi = normalized_basis_at(&ctx.spec, p)?.psi;
        let mut agree = true;
        for _ in 0..per_point.min(10) {
            let x = sampler.vector(3 * s);
            let pm = rank_profile(&mc.jacobi(&x)?);
            let pv = rank_profile(&jc.jacobi(&psi.apply(&x))?);
            agree &= pm == pv;
        }
        r.check(S, &format!("manifold_model_agreement.{label}"), agree, "rank profiles of J agree through psi");
    }
    Ok(())
}

fn higher_osserman_suite(ctx: &SuiteContext, r: &mut VerificationReport) -> Result<()> {
    const S: &str = "higher_osserman";
    let ms = &ctx.model;
    let s = ms.s();
    let jc = JacobiContext::from_model(ms);
    let std = ModelBasis::standard(s);
    let mut sampler = ctx.sampler(SuiteId::HigherOsserman);
    let n = ctx.cfg.plane_samples();
    let expected = RankProfile::from_ranks(3 * s, &[2 * s, s]);
    for k in 2..=s {
        let scan = osserman_scan(&jc, CausalType::Spacelike, k, n, &mut sampler, &[])?;
        r.check(
            S,
            &format!("spacelike_k{k}"),
            scan.profile.as_ref() == Some(&expected) && scan.cube_vanishes && scan.self_adjoint,
            format!("{scan}; expected {expected} partition {}", jordan_partition(&expected)?),
        );
        let pi = sample_plane(ms.metric(), CausalType::Spacelike, k, &mut sampler)?;
        let ell = ell_invariant(&pi, &std)?;
        r.check(S, &format!("spacelike_ell_k{k}"), ell == k, format!("ell = {ell}"));
    }
    for k in (s + 2)..=(2 * s) {
        let scan = osserman_scan(&jc, CausalType::Timelike, k, n, &mut sampler, &[])?;
        r.check(S, &format!("timelike_constant_k{k}"), scan.is_constant() && scan.cube_vanishes, scan.to_string());
        if let Some(p) = &scan.profile {
            let rank = p.ranks().first().copied().unwrap_or(0);
            let which = match (rank == 2 * s, rank == s) {
                (true, _) => "matches the rank 2s of the definite-plane formula",
                (_, true) => "matches the rank s of the rank table",
                _ => "matches neither 2s nor s",
            };
            r.note(S, &format!("timelike_rank_k{k}"), format!("rank {rank}: {which} (2s = {}, s = {s})", 2 * s));
        }
    }
    let mut table = Vec::new();
    for k in 2..=(s + 1) {
        let (p1, p2) = canonical_timelike_witnesses(ms, k)?;
        let prof = |pi: &PlaneBasis| -> Result<RankProfile> { Ok(rank_profile(&jc.jacobi_plane(pi)?)) };
        let (r1, r2) = (prof(&p1)?, prof(&p2)?);
        let (j1, j2) = (jordan_partition(&r1)?, jordan_partition(&r2)?);
        let both_timelike = jc.causal_type(p1.vectors()) == CausalType::Timelike && jc.causal_type(p2.vectors()) == CausalType::Timelike;
        r.check(S, &format!("witnesses_k{k}"), j1 != j2 && both_timelike, format!("pi1 {r1} {j1}, pi2 {r2} {j2}"));
        for (pi, prof) in [(&p1, &r1), (&p2, &r2)] {
            let ell = ell_invariant(pi, &std)?;
            let stated = match ell {
                0 => 0,
                1 => s - 1,
                _ => s,
            };
            let computed = prof.ranks().first().copied().unwrap_or(0);
            table.push(format!("k={k} ell={ell} rank={computed} table={stated}"));
        }
    }
    r.note(S, "rank_table", table.join("; "));
    Ok(())
}

fn quotients_suite(ctx: &SuiteContext, r: &mut VerificationReport) -> Result<()> {
    const S: &str = "quotients";
    let ms = &ctx.model;
    let s = ms.s();
    let n = 3 * s;
    let vs: Vec<_> = (0..s).map(|i| ms.v(i)).collect();
    let tvs: Vec<_> = (0..s).map(|i| ms.t(i)).chain(vs.iter().cloned()).collect();
    let a_v = kernel_subspace_av(ms.curvature())?;
    r.check(S, "a_v", a_v.same_as(&Subspace::span(n, &vs)?), format!("dim {}", a_v.dim()));
    let a_tv = orthogonal_complement(ms.metric(), &a_v)?;
    r.check(S, "a_tv", a_tv.same_as(&Subspace::span(n, &tvs)?), format!("dim {}", a_tv.dim()));

    let std = ModelBasis::standard(s);
    let ind = induced_structures(ms.metric(), ms.curvature(), &std)?;
    let t_refs: Vec<&[Rational]> = (0..s).map(|i| std.t(i)).collect();
    let u_refs: Vec<&[Rational]> = (0..s).map(|i| std.u(i)).collect();
    let g_t = ind.g_t_on(&t_refs)?;
    r.check(S, "g_t", g_t == Matrix::identity(s).scale(&int(-1)), "g_T(T_i,T_j) = -delta_ij");
    let g_u = ind.g_u_on(&u_refs)?;
    r.check(S, "g_u", g_u == Matrix::identity(s), "g_U(U_i,U_j) = delta_ij");
    let val = ind.r_ut_on(std.u(0), std.u(1), std.u(1), std.t(0))?;
    r.check(S, "r_ut_entry", val.is_one(), format!("R_UT(u1,u2,u2,t1) = {val}"));
    r.check(
        S,
        "representative_independence",
        ind.g_t_well_defined && ind.r_ut_well_defined && ind.r_ut_pulls_back,
        format!(
            "g_T well defined: {}, R_UT well defined: {}, sigma* R_UT = R: {}",
            ind.g_t_well_defined, ind.r_ut_well_defined, ind.r_ut_pulls_back
        ),
    );

    let mut sampler = ctx.sampler(SuiteId::Quotients);
    let pairs = 20;
    let mut fails = 0;
    for _ in 0..pairs {
        let b1 = random_normalized_basis(ms, &mut sampler);
        let b2 = random_normalized_basis(ms, &mut sampler);
        if !lemma71_check(ms, &b1, &b2)?.all_pass() {
            fails += 1;
        }
    }
    r.check(S, "g_u_basis_independent", fails == 0, format!("{}/{pairs} seeded basis pairs agree", pairs - fails));

    for (k, p) in ctx.points.iter().enumerate() {
        let (g, rt) = ctx.at(p)?;
        let data = normalized_basis_at(&ctx.spec, p)?;
        let kernel = kernel_subspace_av(&rt)?;
        let dv: Vec<_> = (0..s).map(|i| crate::model::unit_vector(n, crate::model::v_index(s, i))).collect();
        r.check(S, &format!("instance_a_v.{}", point_label(k)), kernel.same_as(&Subspace::span(n, &dv)?), format!("dim {}", kernel.dim()));
        let ind = induced_structures(&g, &rt, &data.frame)?;
        r.check(
            S,
            &format!("instance_induced.{}", point_label(k)),
            ind.g_t_well_defined && ind.r_ut_well_defined && ind.r_ut_pulls_back,
            "induced objects representative independent",
        );
    }
    Ok(())
}

fn invariants_suite(ctx: &SuiteContext, r: &mut VerificationReport) -> Result<()> {
    const S: &str = "invariants";
    let s = ctx.s();
    let factor = int((s - 1) as i64);
    let mut all_alpha_zero = true;
    let mut all_nabla_zero = true;
    let mut all_quotient_zero = true;
    for (k, p) in ctx.points.iter().enumerate() {
        let label = point_label(k);
        let a = alpha(&ctx.spec, p)?;
        let aq = alpha_via_quotient(&ctx.spec, p)?;
        let a1 = ctx.engine.alpha_k(p, 1)?;
        r.check(S, &format!("alpha_k1_matches_quotient.{label}"), a1 == aq, format!("alpha^1 = {a1}, quotient = {aq}"));
        let residual = &aq - &factor * &a;
        let predicted = int(4 * (s as i64 - 1) * (s as i64 - 2)) * p.u_squared();
        r.note(
            S,
            &format!("alpha_factor.{label}"),
            format!(
                "quarter sum of squares = {aq}, alpha = {a}, (s-1)*alpha = {}, residual = {residual} (4(s-1)(s-2)|u|^2 = {predicted})",
                &factor * &a
            ),
        );
        for kk in 2..=ctx.engine.kmax() {
            r.note(S, &format!("alpha_k{kk}.{label}"), format!("{}", ctx.engine.alpha_k(p, kk)?));
        }
        all_alpha_zero &= a.is_zero();
        all_quotient_zero &= aq.is_zero();
        all_nabla_zero &= ctx.closed.nabla_curvature.eval(&p.as_vec()).is_zero();
    }
    let iff = format!("alpha zero at all points: {all_alpha_zero}; nabla R zero at all points: {all_nabla_zero}");
    if s == 2 {
        r.check(S, "alpha_vanishes_iff_nabla_vanishes", all_alpha_zero == all_nabla_zero, iff);
    } else {
        // For s >= 3 the three-index components of nabla R are not seen by alpha.
        r.note(S, "alpha_vanishes_iff_nabla_vanishes", iff);
    }
    r.check(
        S,
        "quotient_alpha_vanishes_iff_nabla_vanishes",
        all_quotient_zero == all_nabla_zero,
        format!("quarter sum zero at all points: {all_quotient_zero}; nabla R zero at all points: {all_nabla_zero}"),
    );

    let mut pts = ctx.points.clone();
    pts.push(PointCoords::origin(s));
    let verdict = homogeneity_obstruction(&ctx.spec, &pts)?;
    r.check(S, "obstruction", true, verdict.to_string());

    for (name, c, power) in [("cubic", rat(-1, 6), 3u32), ("quartic", rat(-1, 6), 4)] {
        let cand = FamilySpec::uniform(s, Polynomial::monomial(1, 0, power, c))?;
        let nabla = EngineFamily::new(&cand, 1)?.nabla(1)?.is_zero();
        r.note(S, &format!("cancellation_candidate_{name}"), format!("f_i = -1/6*u^{power}: nabla R identically zero: {nabla}"));
    }
    Ok(())
}

/// Verdict of a single Osserman scan for the CLI `scan` command, run on the model.
pub fn run_scan(cfg: &RunConfig, ty: CausalType, k: usize) -> Result<VerificationReport> {
    let ms = build_model(cfg.s)?;
    let jc = JacobiContext::from_model(&ms);
    let mut sampler = base_sampler(cfg).fork(100);
    let n = if k == 1 { cfg.samples } else { cfg.plane_samples() };
    let verdict = osserman_scan(&jc, ty, k, n, &mut sampler, &[])?;
    let mut r = VerificationReport::new();
    r.check("scan", &format!("{ty}_k{k}"), verdict.cube_vanishes && verdict.self_adjoint, verdict.to_string());
    if let Some((a, b)) = &verdict.witnesses {
        let show = |v: &[Vec<Rational>]| {
            v.iter().map(|x| format!("({})", x.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))).collect::<Vec<_>>().join(" ")
        };
        r.note("scan", "witness_a", format!("{} {}", a.profile, show(&a.vectors)));
        r.note("scan", "witness_b", format!("{} {}", b.profile, show(&b.vectors)));
    }
    Ok(r)
}

/// Invariant values at every configured point, for the CLI `invariants` command.
pub fn run_invariants(cfg: &RunConfig) -> Result<VerificationReport> {
    let ctx = SuiteContext::new(cfg)?;
    let mut r = VerificationReport::new();
    for (k, p) in ctx.points.iter().enumerate() {
        let label = point_label(k);
        r.note("invariants", &format!("alpha.{label}"), format!("u=({}) {}", show_u(p), alpha(&ctx.spec, p)?));
        r.note("invariants", &format!("alpha_quotient.{label}"), alpha_via_quotient(&ctx.spec, p)?.to_string());
        for kk in 1..=ctx.engine.kmax() {
            r.note("invariants", &format!("alpha_k{kk}.{label}"), ctx.engine.alpha_k(p, kk)?.to_string());
        }
    }
    match homogeneity_obstruction(&ctx.spec, &ctx.points) {
        Ok(v) => r.check("invariants", "obstruction", true, v.to_string()),
        Err(Error::TooFewPoints) => r.note("invariants", "obstruction", "needs two distinct points"),
        Err(e) => return Err(e),
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Format;

    fn small(s: usize) -> RunConfig {
        let mut cfg = RunConfig::new(s);
        cfg.samples = 8;
        cfg.kmax = 1;
        cfg
    }

    #[test]
    fn suite_ids_parse() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
        }
        assert!("nope".parse::<SuiteId>().is_err());
    }

    #[test]
    fn cubic_s2_all_pass() {
        let report = run_suites(&small(2));
        let text = report.emit(Format::Text);
        assert!(report.all_pass(), "{text}");
        assert!(text.contains("NOT-LOCALLY-HOMOGENEOUS"), "{text}");
    }

    #[test]
    fn quartic_all_pass_and_flags_symmetric_space() {
        let mut cfg = small(2);
        cfg.f = vec![Polynomial::monomial(1, 0, 4, rat(-1, 6)); 2];
        let report = run_suites(&cfg);
        assert!(report.all_pass(), "{}", report.emit(Format::Text));
        assert!(report.find("curvature", "symmetric_space").unwrap().detail.ends_with("true"));
    }

    #[test]
    fn fault_is_located() {
        let mut cfg = small(2);
        cfg.faults.push(crate::config::Fault { target: FaultTarget::Curvature, index: vec![0, 1, 1, 0] });
        let report = run_selected(&cfg, &[SuiteId::Crosscheck]);
        let fail = report.checks().find(|(_, st)| *st == crate::report::Status::Fail).expect("a FAIL line");
        assert!(fail.0.detail.contains("[0, 1, 1, 0]"), "{}", fail.0.detail);
    }

    #[test]
    fn deterministic_and_selection_stable() {
        let cfg = small(2);
        let a = run_selected(&cfg, &[SuiteId::Osserman, SuiteId::Curvature]).emit(Format::Tsv);
        let b = run_selected(&cfg, &[SuiteId::Curvature, SuiteId::Osserman]).emit(Format::Tsv);
        assert_eq!(a, b);
        let alone = run_selected(&cfg, &[SuiteId::Osserman]);
        let both = run_selected(&cfg, &[SuiteId::Osserman, SuiteId::Curvature]);
        let only_osserman: Vec<_> = both.items().iter().filter(|i| i.suite == "osserman").cloned().collect();
        assert_eq!(alone.items(), &only_osserman[..]);
    }
}
