#![allow(dead_code)]

pub mod oracles;

use rand::Rng;
use toric_gw::algebra::{BaseElem, Rat, Scalar};
use toric_gw::toric::{FiberPoly, Geometry, ToricFibrationSpec};

pub const SHIPPED: [&str; 5] = ["p1", "p2", "p1xp1", "f1_toric", "f1_bundle"];

pub fn spec_text(name: &str) -> String {
    let path = format!("{}/specs/{name}.geom", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

pub fn spec(name: &str) -> ToricFibrationSpec {
    ToricFibrationSpec::parse(&spec_text(name)).unwrap()
}

pub fn geometry(name: &str) -> Geometry {
    Geometry::new(spec(name)).unwrap()
}

pub fn small_rat(rng: &mut impl Rng) -> Rat {
    Rat::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

/// Random polynomial in `k` variables of total degree at most `deg`, with
/// coefficients `a + b s + c h` in the base ring.
pub fn random_fiber_poly(rng: &mut impl Rng, k: usize, r: usize, deg: u32) -> FiberPoly {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        let mut e = vec![0u32; k];
        let mut left = rng.gen_range(0..=deg);
        for slot in e.iter_mut() {
            let x = rng.gen_range(0..=left);
            *slot = x;
            left -= x;
        }
        let c0 = Scalar::from_rat(small_rat(rng)).add_ref(&Scalar::monomial(small_rat(rng), 1));
        let mut coeffs = vec![c0];
        if r > 0 {
            coeffs.push(Scalar::from_rat(small_rat(rng)));
        }
        terms.push((e, BaseElem::from_coeffs(coeffs, r)));
    }
    FiberPoly { terms }
}
