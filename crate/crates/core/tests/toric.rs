mod common;

use common::{geometry, random_fiber_poly, SHIPPED};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_gw::algebra::{rat, BaseElem, DegreeIndex, Rat};
use toric_gw::toric::{FiberPoly, Geometry, ToricFibrationSpec, Weight};
use toric_gw::Error;

fn alphas(g: &Geometry) -> Vec<Vec<usize>> {
    g.points.iter().map(|p| p.alpha.iter().map(|j| j + 1).collect()).collect()
}

#[test]
fn fixed_points_of_small_examples() {
    let p1 = geometry("p1");
    assert_eq!(alphas(&p1), vec![vec![1], vec![2]]);
    assert_eq!(p1.points[0].p[0], Weight::lambda(2, 0));
    assert_eq!(p1.points[1].p[0], Weight::lambda(2, 1));
    assert_eq!(alphas(&geometry("p2")).len(), 3);
    assert_eq!(
        alphas(&geometry("p1xp1")),
        vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]
    );
    assert_eq!(alphas(&geometry("f1_toric")).len(), 4);
}

#[test]
fn edges_of_small_examples() {
    let p1 = geometry("p1");
    assert_eq!(p1.edges.len(), 2);
    let e = &p1.edges[0];
    assert_eq!(e.chi, Weight::lambda(2, 0).sub(&Weight::lambda(2, 1)));
    assert_eq!(e.d, vec![1]);
    let p2 = geometry("p2");
    assert_eq!(p2.edges.len(), 6);
    assert!(p2.edges.iter().all(|e| e.d == vec![1]));
    let sq = geometry("p1xp1");
    assert_eq!(sq.edges.len(), 8);
    for e in &sq.edges {
        let mut d = e.d.clone();
        d.sort();
        assert_eq!(d, vec![0, 1]);
    }
}

#[test]
fn edge_identities_hold_on_shipped_specs() {
    for name in SHIPPED {
        let g = geometry(name);
        for e in &g.edges {
            let (a, b) = (&g.points[e.alpha], &g.points[e.beta]);
            for i in 0..g.k() {
                assert_eq!(a.p[i].sub(&b.p[i]), e.chi.scale(&Rat::from_integer(e.d[i].into())));
            }
            assert_eq!(g.u_fiber(e.j_plus, &e.d), 1, "{name}");
            assert_eq!(g.u_fiber(e.j_minus, &e.d), 1, "{name}");
            assert_eq!(e.chi, b.u[e.j_minus].scale(&rat(-1)));
            for &j in a.alpha.iter().filter(|j| b.contains(**j)) {
                assert!(a.u[j].is_zero() && b.u[j].is_zero());
                assert_eq!(g.u_fiber(j, &e.d), 0);
            }
            // U_j(d) = (alpha^*U_j - beta^*U_j) / chi
            for j in 0..g.n() {
                let diff = a.u[j].sub(&b.u[j]);
                assert_eq!(diff, e.chi.scale(&Rat::from_integer(g.u_fiber(j, &e.d).into())));
            }
        }
    }
}

#[test]
fn effective_ranges() {
    let p1 = geometry("p1");
    let r = p1.effective_range(&p1.points[0], &rat(2));
    assert_eq!(r.iter().map(|d| d.d[0]).collect::<Vec<_>>(), vec![0, 1, 2]);
    let sq = geometry("p1xp1");
    let r = sq.effective_range(&sq.points[0], &rat(1));
    assert_eq!(
        r,
        vec![
            DegreeIndex::new(vec![0, 0], 0),
            DegreeIndex::new(vec![0, 1], 0),
            DegreeIndex::new(vec![1, 0], 0)
        ]
    );
    let p2 = geometry("p2");
    for p in &p2.points {
        assert_eq!(p2.effective_range(p, &rat(3)).len(), 4);
    }
}

#[test]
fn effective_range_of_bundle_is_shifted_by_base_degree() {
    let g = geometry("f1_bundle");
    // alpha = {2} has P = lambda_2 + h, so D = 1 lifts to fiber degree 1
    let r = g.effective_range(&g.points[1], &rat(2));
    assert!(r.contains(&DegreeIndex::new(vec![1], 1)));
    assert!(!r.contains(&DegreeIndex::new(vec![0], 1)));
    for d in &r {
        assert!(g.u_of(1, d) >= 0);
    }
}

#[test]
fn pushforward_examples() {
    let p1 = geometry("p1");
    let line = &p1.spec.lambda_lines[0];
    let p = FiberPoly::monomial(vec![1], BaseElem::one(0));
    assert!(p1.pushforward(&p, line).unwrap().is_one());
    let one = FiberPoly::monomial(vec![0], BaseElem::one(0));
    assert!(p1.pushforward(&one, line).unwrap().is_zero());
    let p2 = geometry("p2");
    let pp = FiberPoly::monomial(vec![2], BaseElem::one(0));
    for path in [Geometry::pushforward, Geometry::pushforward_residues] {
        assert!(path(&p2, &pp, &p2.spec.lambda_lines[1]).unwrap().is_one());
    }
    let sq = geometry("p1xp1");
    let p1p2 = FiberPoly::monomial(vec![1, 1], BaseElem::one(0));
    assert!(sq.pushforward_residues(&p1p2, &sq.spec.lambda_lines[2]).unwrap().is_one());
}

#[test]
fn residue_and_fixed_point_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in SHIPPED {
        let g = geometry(name);
        for line in &g.spec.lambda_lines {
            for _ in 0..20 {
                let f = random_fiber_poly(&mut rng, g.k(), g.r(), 4);
                let a = g.pushforward(&f, line).unwrap();
                let b = g.pushforward_residues(&f, line).unwrap();
                assert_eq!(a, b, "{name}");
            }
        }
    }
}

#[test]
fn low_degree_classes_push_forward_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in SHIPPED {
        let g = geometry(name);
        let fiber_dim = (g.n() - g.k()) as u32;
        for _ in 0..20 {
            let mut f = random_fiber_poly(&mut rng, g.k(), 0, fiber_dim - 1);
            // constant coefficients only, so the pairing is purely fiberwise
            for (_, c) in f.terms.iter_mut() {
                *c = BaseElem::from_coeffs(vec![c.h0().clone()], g.r());
            }
            let v = g.pushforward(&f, &g.spec.lambda_lines[0]).unwrap();
            for c in v.at_zero().unwrap() {
                assert!(c.is_zero(), "{name}");
            }
        }
    }
}

#[test]
fn bundle_pushforward_matches_relation() {
    // on F_1 over P^1: pi_*(P) = 1 and pi_*(P^2) = c_1 = h
    let g = geometry("f1_bundle");
    let line = &g.spec.lambda_lines[0];
    let p = g.pushforward(&FiberPoly::monomial(vec![1], BaseElem::one(1)), line).unwrap();
    assert_eq!(p.at_zero().unwrap(), vec![rat(1), rat(0)]);
    let p2 = g.pushforward(&FiberPoly::monomial(vec![2], BaseElem::one(1)), line).unwrap();
    assert_eq!(p2.at_zero().unwrap(), vec![rat(0), rat(1)]);
}

#[test]
fn chamber_errors() {
    let open = ToricFibrationSpec::parse("K=1\nN=3\nm=1 1 -1\nomega=1\n").unwrap();
    assert!(matches!(Geometry::new(open), Err(Error::Spec(_))));
    // omega on the ray of a boundary cone
    let bad = "K=2\nN=4\nm=1 1 0 0; 0 0 1 1\nomega=1 0\n";
    let spec = ToricFibrationSpec::parse(bad).unwrap();
    assert!(matches!(Geometry::new(spec), Err(Error::NonRegularChamber(_))));
    let orbifold = "K=1\nN=2\nm=1 2\nomega=1\n";
    let spec = ToricFibrationSpec::parse(orbifold).unwrap();
    assert!(matches!(Geometry::new(spec), Err(Error::SingularFixedPoint(_))));
}

#[test]
fn default_lines_are_generic_for_shipped_specs() {
    for name in SHIPPED {
        let g = geometry(name);
        let bound = g.generic_bound(&g.spec.cutoff, g.spec.kmax);
        for line in &g.spec.lambda_lines {
            g.check_generic(line, bound).unwrap();
        }
    }
    let p2 = geometry("p2");
    let odd_primes = vec![rat(3), rat(5), rat(7)];
    assert!(matches!(p2.check_generic(&odd_primes, 10), Err(Error::NonGenericLine(_))));
}

mod weight {
    use toric_gw::toric::Weight;
    use toric_gw::algebra::rat;

    #[test]
    fn display_and_ratio() {
        let w = Weight::lambda(3, 0).sub(&Weight::lambda(3, 2)).add(&Weight::h(3, rat(-2)));
        assert_eq!(w.to_string(), "l1 - l3 - 2*h");
        let v = w.scale(&rat(-3));
        assert_eq!(v.ratio(&w), Some(rat(-3)));
        assert_eq!(Weight::lambda(3, 1).ratio(&w), None);
    }

    #[test]
    fn embedding() {
        let w = Weight::lambda(2, 0).add(&Weight::h(2, rat(1)));
        let b = w.to_base(&[rat(3), rat(5)], 1);
        assert_eq!(b.to_string(), "[3*s + h]");
    }
}

mod spec {
    use toric_gw::algebra::{rat, Rat};
    use toric_gw::toric::{Base, ToricFibrationSpec};
    use toric_gw::Error;

    #[test]
    fn parses_p1() {
        let s = ToricFibrationSpec::parse("K = 1\nN = 2\nm = 1 1\nomega = 1\n").unwrap();
        assert_eq!(s.m, vec![vec![1, 1]]);
        assert_eq!(s.lambda_lines.len(), 3);
        assert_eq!(s.base, Base::Point);
    }

    #[test]
    fn reports_position() {
        let e = ToricFibrationSpec::parse("K = 1\nN = x\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 5,
                message: "invalid number `x`".into()
            }
        );
        let e = ToricFibrationSpec::parse("K = 1\nbogus\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 1, .. }));
    }

    #[test]
    fn bundle_keys() {
        let s = ToricFibrationSpec::parse(
            "K=1\nN=2\nm=1 1\nomega=1\nbase=P1\ntwists=0 -1\nlambda_line=2 3/2\ncutoff=5/2\n",
        )
        .unwrap();
        assert_eq!(s.base, Base::Projective(1));
        assert_eq!(s.lambda_lines, vec![vec![rat(2), Rat::new(3.into(), 2.into())]]);
        assert_eq!(s.cutoff, Rat::new(5.into(), 2.into()));
    }
}
