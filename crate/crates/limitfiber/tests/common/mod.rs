#![allow(dead_code)]

use limitfiber::building::LatticeClass;
use limitfiber::matroid::family_matroid;
use limitfiber::membrane::Arrangement;
use limitfiber::scalar::{BaseField, ScalarK, VectorK};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn mono(c: i64, e: i64) -> ScalarK {
    ScalarK::from_int(c).shifted(e)
}

fn coeff(rng: &mut ChaCha8Rng) -> i64 {
    [-2, -1, 1, 2, 3][rng.gen_range(0..5)]
}

/// e_1..e_r followed by n - r vectors of monomials c z^e, e in [-vmax, vmax],
/// occasionally plus a constant; redrawn until the family matroid is connected.
pub fn random_arrangement(rng: &mut ChaCha8Rng, r: usize, n: usize, vmax: i64) -> Arrangement {
    loop {
        let f = draw(rng, r, n, vmax);
        if family_matroid(&f).unwrap().is_connected() {
            return f;
        }
    }
}

fn draw(rng: &mut ChaCha8Rng, r: usize, n: usize, vmax: i64) -> Arrangement {
    let mut vs: Vec<VectorK> =
        (0..r).map(|i| (0..r).map(|j| if i == j { ScalarK::one() } else { ScalarK::zero() }).collect()).collect();
    while vs.len() < n {
        let v: VectorK = (0..r)
            .map(|_| {
                let mut x = mono(coeff(rng), rng.gen_range(-vmax..=vmax));
                if rng.gen_bool(0.2) {
                    x = &x + &mono(coeff(rng), 0);
                }
                if rng.gen_bool(0.15) {
                    ScalarK::zero()
                } else {
                    x
                }
            })
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            vs.push(v);
        }
    }
    Arrangement::new(r, vs, BaseField::Rationals).unwrap()
}

/// A class with upper triangular generators z^{a_i} e_i + sum c z^e e_j.
pub fn random_class(rng: &mut ChaCha8Rng, r: usize, emax: i64) -> LatticeClass {
    let cols: Vec<VectorK> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    if j == i {
                        ScalarK::z_pow(rng.gen_range(-emax..=emax))
                    } else if j < i && rng.gen_bool(0.5) {
                        mono(coeff(rng), rng.gen_range(-emax..=emax))
                    } else {
                        ScalarK::zero()
                    }
                })
                .collect()
        })
        .collect();
    LatticeClass::from_generators(r, &cols).unwrap()
}

pub fn five_lines() -> Arrangement {
    let v = |xs: &[&str]| limitfiber::scalar::parse_vector(xs).unwrap();
    Arrangement::new(
        3,
        vec![
            v(&["1", "0", "0"]),
            v(&["0", "1", "0"]),
            v(&["0", "0", "1"]),
            v(&["1", "1", "1"]),
            v(&["z^-1", "1", "1"]),
        ],
        BaseField::Rationals,
    )
    .unwrap()
}
