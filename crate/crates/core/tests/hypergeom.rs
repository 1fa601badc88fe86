mod common;

use std::collections::BTreeMap;

use common::{geometry, SHIPPED};
use num_traits::Zero;
use toric_gw::algebra::{rat, BaseElem, DegreeIndex, Rat, Scalar, TMonomial, ZFun};
use toric_gw::hypergeom::{
    base_j, build_equivariant, classical_i, divisor_shift, gamma_ratio_product, ClassicalRing,
};
use toric_gw::toric::{FiberPoly, Geometry};

fn lam(line: &[Rat], a: usize, b: usize) -> BaseElem {
    BaseElem::scalar(Scalar::monomial(&line[a] - &line[b], 1), 0)
}

#[test]
fn gamma_ratio_examples() {
    let u = BaseElem::scalar(Scalar::s(), 0);
    let two = gamma_ratio_product(&u, 2).unwrap();
    assert_eq!(two.eval(&BaseElem::from_int(1, 0)).unwrap(), {
        let a = BaseElem::scalar(Scalar::s(), 0);
        a.add_ref(&BaseElem::from_int(1, 0)).mul_ref(&a.add_ref(&BaseElem::from_int(2, 0)))
    });
    assert_eq!(gamma_ratio_product(&u, 0).unwrap(), ZFun::one(0));
    assert_eq!(gamma_ratio_product(&u, -1).unwrap(), ZFun::constant(u.inv().unwrap()));
}

#[test]
fn p1_and_p2_first_terms() {
    let g = geometry("p1");
    let line = g.spec.lambda_lines[0].clone();
    let i = build_equivariant(&g, &line, &rat(1), 0, false);
    let t0 = TMonomial(vec![0]);
    let j1 = i.series[0].get(&DegreeIndex::new(vec![1], 0), &t0).unwrap();
    assert_eq!(*j1, ZFun::inv_linear(&lam(&line, 0, 1), 1).unwrap());
    assert_eq!(*i.series[0].get(&DegreeIndex::new(vec![0], 0), &t0).unwrap(), ZFun::z(0));

    let g = geometry("p2");
    let line = g.spec.lambda_lines[1].clone();
    let i = build_equivariant(&g, &line, &rat(1), 0, false);
    let j1 = i.series[0].get(&DegreeIndex::new(vec![1], 0), &t0).unwrap();
    let expect = ZFun::inv_linear(&lam(&line, 0, 1), 1)
        .unwrap()
        .mul(&ZFun::inv_linear(&lam(&line, 0, 2), 1).unwrap());
    assert_eq!(*j1, expect);
}

#[test]
fn normalization_and_mori_support() {
    for name in SHIPPED {
        let g = geometry(name);
        for line in &g.spec.lambda_lines {
            let i = build_equivariant(&g, line, &g.spec.cutoff, g.spec.t_order, false);
            let nv = i.vars.len();
            for (a, s) in i.series.iter().enumerate() {
                let zero = DegreeIndex::zero(g.k());
                assert_eq!(*s.get(&zero, &TMonomial::one(nv)).unwrap(), ZFun::z(g.r()));
                let range = g.effective_range(&g.points[a], &g.spec.cutoff);
                for d in s.support() {
                    assert!(range.contains(d), "{name}: {d} outside the effective range");
                }
            }
        }
    }
}

#[test]
fn terms_outside_the_effective_range_vanish() {
    // a degree with U_j(d) < 0 for some j in alpha carries the factor 0z
    let g = geometry("p1xp1");
    let line = &g.spec.lambda_lines[0];
    let pt = &g.points[0];
    let weights: Vec<BaseElem> = pt.u.iter().map(|w| w.to_base(line, 0)).collect();
    let deg = DegreeIndex::new(vec![-1, 1], 0);
    let mut core = ZFun::one(0);
    for (j, w) in weights.iter().enumerate() {
        core = core.mul(&toric_gw::hypergeom::gamma_ratio_inverse(w, g.u_of(j, &deg)));
    }
    assert!(core.is_zero());
}

#[test]
fn string_equation() {
    let g = geometry("p2");
    let line = &g.spec.lambda_lines[0];
    let t_order = 3;
    let i = build_equivariant(&g, line, &rat(2), t_order, true);
    let s = &i.series[0];
    let z = ZFun::z(0);
    let v = i.vars.len() - 1;
    assert_eq!(i.vars[v], "tau0");
    for ((deg, t), c) in s.iter() {
        let n = t.0[v];
        if t.total() == t_order {
            continue;
        }
        let mut up = t.clone();
        up.0[v] += 1;
        let next = s.get(deg, &up).cloned().unwrap_or_else(|| ZFun::zero(0));
        let lhs = next.mul(&z).scale_rat(&Rat::from_integer((n + 1).into()));
        assert_eq!(lhs, *c, "{deg} {t}");
    }
}

#[test]
fn base_j_and_divisor_shift() {
    let j = base_j(1, &rat(2), 2, 1);
    let h = BaseElem::h(1);
    let expect = ZFun::z(1)
        .mul(&ZFun::inv_linear(&h, 1).unwrap())
        .mul(&ZFun::inv_linear(&h, 1).unwrap());
    assert_eq!(*j.get(&DegreeIndex::new(vec![], 1), &TMonomial(vec![0])).unwrap(), expect);
    // D = 0 coefficient of the shift is exp(h t / z) J_0
    let shifted = divisor_shift(&j, &rat(1), 0, 1).unwrap();
    let c1 = shifted.get(&DegreeIndex::new(vec![], 0), &TMonomial(vec![1])).unwrap();
    assert_eq!(*c1, ZFun::constant(h.clone()));
    // D = 1, t^1: (h/z + 1) J_1
    let c = shifted.get(&DegreeIndex::new(vec![], 1), &TMonomial(vec![1])).unwrap();
    let mut lin = BTreeMap::new();
    lin.insert(-1, h.clone());
    lin.insert(0, BaseElem::one(1));
    assert_eq!(*c, expect.mul(&ZFun::from_laurent(1, &lin)));
    // exponential law
    let twice = divisor_shift(&divisor_shift(&j, &rat(1), 0, 1).unwrap(), &rat(2), 0, 1).unwrap();
    let once = divisor_shift(&j, &rat(3), 0, 1).unwrap();
    assert_eq!(twice, once);
    assert!(divisor_shift(&base_j(0, &rat(1), 1, 1), &rat(1), 0, 0).is_err());
}

#[test]
fn bundle_degree_zero_slice_is_the_fiber() {
    let bundle = geometry("f1_bundle");
    let fiber = geometry("p1");
    let line = bundle.spec.lambda_lines[0].clone();
    let cutoff = rat(2);
    let b = build_equivariant(&bundle, &line, &cutoff, 2, false);
    let f = build_equivariant(&fiber, &line, &cutoff, 2, false);
    for a in 0..2 {
        let mut count = 0;
        for ((deg, t), c) in b.series[a].iter() {
            if deg.base != 0 || t.0[1] != 0 {
                continue;
            }
            count += 1;
            let ft = TMonomial(vec![t.0[0]]);
            assert_eq!(Some(&c.at_h_zero()), f.series[a].get(deg, &ft), "{deg} {t}");
        }
        let fiber_terms = f.series[a].len();
        assert_eq!(count, fiber_terms);
    }
}

/// Checks `int I phi = lim_{s -> 0} sum_alpha J^alpha phi(P^alpha) / e^alpha`
/// coefficientwise in `z`.
fn check_against_localization(g: &Geometry, ring: &ClassicalRing, cutoff: &Rat, t_order: u32) {
    let line = &g.spec.lambda_lines[0];
    let r = g.r();
    let k = g.k();
    let eq = build_equivariant(g, line, cutoff, t_order, false);
    let cl = classical_i(g, ring, cutoff, t_order);
    let basis = ring.alg.basis().to_vec();
    let mut keys: Vec<_> = cl.terms().keys().cloned().collect();
    for s in &eq.series {
        keys.extend(s.terms().keys().cloned());
    }
    keys.sort();
    keys.dedup();
    let zorder = 2 * (g.n() + r) as i64;
    for key in keys {
        let c = cl.get(&key.0, &key.1).cloned();
        let lau: Vec<BTreeMap<i64, BaseElem>> = eq
            .series
            .iter()
            .map(|s| {
                s.get(&key.0, &key.1)
                    .map(|f| f.laurent_at_infinity(zorder).into_iter().collect())
                    .unwrap_or_default()
            })
            .collect();
        for p in -zorder..=1 {
            for b in &basis {
                let phi_alg = ring.alg.monomial(b);
                let lhs = match &c {
                    Some(c) => ring.alg.integrate(&ring.alg.mul(&c.coeff(p), &phi_alg)),
                    None => Rat::zero(),
                };
                let hb = if r > 0 { b[k] } else { 0 };
                let phi = FiberPoly::monomial(b[..k].to_vec(), BaseElem::h(r).pow(hb));
                let mut acc = BaseElem::zero(r);
                for (a, pt) in g.points.iter().enumerate() {
                    let Some(v) = lau[a].get(&p) else { continue };
                    let pa: Vec<BaseElem> = pt.p.iter().map(|w| w.to_base(line, r)).collect();
                    let e = pt.euler(line, r).inv().unwrap();
                    acc = acc.add_ref(&v.mul_ref(&phi.eval(&pa, r)).mul_ref(&e));
                }
                let rhs = acc.at_zero().unwrap()[r].clone();
                assert_eq!(lhs, rhs, "{} key {} {} z^{p} phi {:?}", g.spec.name, key.0, key.1, b);
            }
        }
    }
}

#[test]
fn classical_series_matches_localization() {
    for name in SHIPPED {
        let g = geometry(name);
        let ring = ClassicalRing::from_pairing(&g, None).unwrap();
        check_against_localization(&g, &ring, &rat(2), 1);
    }
    let g = geometry("f1_bundle");
    let ring = ClassicalRing::projective_bundle(&g).unwrap();
    check_against_localization(&g, &ring, &rat(2), 1);
}

#[test]
fn rewrite_and_pairing_rings_agree() {
    let g = geometry("f1_bundle");
    let a = ClassicalRing::projective_bundle(&g).unwrap();
    let b = ClassicalRing::from_pairing(&g, Some(a.alg.basis().to_vec())).unwrap();
    assert_eq!(a.alg.basis(), b.alg.basis());
    for i in 0..a.alg.dim() {
        for j in 0..a.alg.dim() {
            let x = a.alg.mul(&a.alg.basis_vector(i), &a.alg.basis_vector(j));
            let y = b.alg.mul(&b.alg.basis_vector(i), &b.alg.basis_vector(j));
            assert_eq!(x, y);
        }
        assert_eq!(a.alg.integrate(&a.alg.basis_vector(i)), b.alg.integrate(&b.alg.basis_vector(i)));
    }
}

/// Maps a `K = 2` toric key `(d1, d2)` to a bundle key `(d1)`, `D = d2`.
fn to_bundle_key(key: &(DegreeIndex, TMonomial)) -> (DegreeIndex, TMonomial) {
    (DegreeIndex::new(vec![key.0.d[0]], key.0.d[1]), key.1.clone())
}

fn assert_two_routes(toric: &str, bundle: &str, cutoff: Rat, t_order: u32) {
    let gb = geometry(bundle);
    let gt = geometry(toric);
    let rb = ClassicalRing::projective_bundle(&gb).unwrap();
    let rt = ClassicalRing::from_pairing(&gt, Some(rb.alg.basis().to_vec())).unwrap();
    let ib = classical_i(&gb, &rb, &cutoff, t_order);
    let it = classical_i(&gt, &rt, &cutoff, t_order);
    let mapped: BTreeMap<_, _> = it.terms().iter().map(|(k, v)| (to_bundle_key(k), v.terms().clone())).collect();
    let direct: BTreeMap<_, _> = ib.terms().iter().map(|(k, v)| (k.clone(), v.terms().clone())).collect();
    assert_eq!(mapped, direct);
}

#[test]
fn hirzebruch_two_routes_agree() {
    assert_two_routes("f1_toric", "f1_bundle", rat(2), 2);
}

#[test]
fn trivial_bundle_is_the_product() {
    let text = common::spec_text("f1_bundle").replace("twists = 0 -1", "twists = 0 0");
    let gb = Geometry::new(toric_gw::toric::ToricFibrationSpec::parse(&text).unwrap()).unwrap();
    let gt = geometry("p1xp1");
    let rb = ClassicalRing::projective_bundle(&gb).unwrap();
    let rt = ClassicalRing::from_pairing(&gt, Some(rb.alg.basis().to_vec())).unwrap();
    let cutoff = rat(1);
    let ib = classical_i(&gb, &rb, &cutoff, 1);
    let it = classical_i(&gt, &rt, &cutoff, 1);
    // weight of (d, D) is d + D on both sides
    for (k, v) in it.terms() {
        let kb = to_bundle_key(k);
        assert_eq!(Some(v.terms()), ib.get(&kb.0, &kb.1).map(|c| c.terms()));
    }
    assert_eq!(it.len(), ib.len());
}

mod gamma {
    use toric_gw::algebra::ZFun;
    use toric_gw::hypergeom::{gamma_ratio_inverse, gamma_ratio_product};
    use toric_gw::algebra::{BaseElem, Scalar};

    #[test]
    fn conventions() {
        let u = BaseElem::scalar(Scalar::s(), 0);
        let p = gamma_ratio_product(&u, 2).unwrap();
        assert_eq!(p, ZFun::linear(&u, 1).mul(&ZFun::linear(&u, 2)));
        assert_eq!(gamma_ratio_product(&u, 0).unwrap(), ZFun::one(0));
        assert_eq!(gamma_ratio_product(&u, -1).unwrap(), ZFun::constant(u.inv().unwrap()));
        assert!(gamma_ratio_product(&BaseElem::zero(0), -1).is_err());
        assert!(gamma_ratio_inverse(&BaseElem::zero(0), -2).is_zero());
        let q = gamma_ratio_inverse(&u, -2).mul(&gamma_ratio_product(&u, -2).unwrap());
        assert_eq!(q, ZFun::one(0));
    }
}
