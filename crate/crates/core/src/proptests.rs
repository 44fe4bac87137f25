//! Property tests spanning several modules.

use proptest::prelude::*;

use crate::algebra::{cayley_orthogonal, format_rational, int, parse_rational, rat, Matrix, Polynomial};
use crate::config::{parse_config, RunConfig};
use crate::family::PointCoords;
use crate::jacobi::JacobiContext;
use crate::model::build_model;
use crate::tensor::{pullback, LinearMap, Tensor};
use crate::Rational;

fn matrix(n: usize, m: usize, entries: &[i64]) -> Matrix {
    Matrix::from_fn(n, m, |r, c| int(entries[r * m + c]))
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(-4i64..=4, n * n).prop_map(move |e| matrix(n, n, &e)))
}

fn skew(max: usize) -> impl Strategy<Value = Matrix> {
    square(max).prop_map(|m| m.sub(&m.transpose()))
}

fn symmetric(max: usize) -> impl Strategy<Value = Matrix> {
    square(max).prop_map(|m| m.add(&m.transpose()))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cayley_transform_is_special_orthogonal(a in skew(5)) {
        let q = cayley_orthogonal(&a).unwrap();
        prop_assert!(q.is_orthogonal());
    }

    #[test]
    fn rank_equals_transpose_rank(m in square(6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in square(6)) {
        prop_assert_eq!(m.rank() + m.nullspace().len(), m.cols());
    }

    #[test]
    fn inertia_is_congruence_invariant(s in symmetric(5), seed in prop::collection::vec(-3i64..=3, 25)) {
        let n = s.rows();
        let p = Matrix::from_fn(n, n, |r, c| int(seed[r * 5 + c]) + if r == c { int(7) } else { int(0) });
        prop_assume!(p.rank() == n);
        let moved = p.transpose().mul(&s).unwrap().mul(&p).unwrap();
        prop_assert_eq!(s.symmetric_signature().unwrap(), moved.symmetric_signature().unwrap());
    }

    #[test]
    fn congruence_diagonalization_is_exact(s in symmetric(5)) {
        let (p, d) = s.congruence_diagonalize().unwrap();
        let lhs = p.transpose().mul(&s).unwrap().mul(&p).unwrap();
        prop_assert_eq!(lhs, Matrix::diagonal(&d));
        prop_assert_eq!(p.rank(), s.rows());
    }

    #[test]
    fn partial_derivatives_commute(
        terms in prop::collection::vec((prop::collection::vec(0u32..4, 3), rational()), 1..8),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        let p = Polynomial::from_terms(3, terms);
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn pullback_is_contravariant(
        data in prop::collection::vec(-3i64..=3, 27),
        a in prop::collection::vec(-2i64..=2, 9),
        b in prop::collection::vec(-2i64..=2, 9),
    ) {
        let t = Tensor::from_fn(3, 3, |idx| int(data[idx[0] * 9 + idx[1] * 3 + idx[2]]));
        let (la, lb) = (LinearMap::new(matrix(3, 3, &a)), LinearMap::new(matrix(3, 3, &b)));
        let twice = pullback(&pullback(&t, &la).unwrap(), &lb).unwrap();
        let once = pullback(&t, &la.compose(&lb).unwrap()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn rationals_round_trip_through_text(x in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn jacobi_operator_is_self_adjoint_on_model(x in prop::collection::vec(-5i64..=5, 9)) {
        let ms = build_model(3).unwrap();
        let ctx = JacobiContext::from_model(&ms);
        let x: Vec<Rational> = x.into_iter().map(int).collect();
        let j = ctx.jacobi(&x).unwrap();
        prop_assert!(ctx.is_self_adjoint(&j));
        prop_assert!(j.pow(3).is_zero());
    }

    #[test]
    fn config_round_trips(
        s in 2usize..=4,
        seed in any::<u64>(),
        samples in 2usize..500,
        bound in 1u32..100,
        kmax in 1usize..=3,
        coeffs in prop::collection::vec((rational(), 0u32..6), 4),
        point in prop::collection::vec(-9i64..=9, 12),
    ) {
        let mut cfg = RunConfig::new(s);
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.bound = bound;
        cfg.kmax = kmax;
        cfg.f = coeffs.iter().take(s).map(|(c, e)| Polynomial::monomial(1, 0, *e, c.clone())).collect();
        cfg.points = vec![PointCoords::from_i64(&point[..s], &point[4..4 + s], &point[8..8 + s])];
        prop_assert_eq!(parse_config(&cfg.emit()).unwrap(), cfg);
    }
}
