//! Random data for property tests, driven by a seeded ChaCha generator so
//! every case is reproducible from its seed.
#![allow(dead_code)]

use mtakit::coeffs::{rat, Coefficient, Monomial};
use mtakit::liealg::AlgebraSpec;
use mtakit::mta::MtaElement;
use mtakit::partition::{partitions, Partition};
use mtakit::pbw::{EnvElement, Pbw, Window};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unbounded(alg: AlgebraSpec) -> Pbw {
    Pbw::new(alg).with_window(None::<Window>)
}

pub fn small_int(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A polynomial in `x` of degree at most `deg`, never zero.
pub fn poly_x(rng: &mut ChaCha8Rng, deg: u32) -> Coefficient {
    let mut out = Coefficient::zero();
    while out.is_zero() {
        for k in 0..=deg {
            if rng.gen_bool(0.6) {
                out += &Coefficient::monomial(Monomial::new(k, 0), rat(small_int(rng), 1));
            }
        }
    }
    out
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize, max_index: i32) -> Vec<i32> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(-max_index..=max_index)).collect()
}

/// A sum of up to three scaled random products.
pub fn random_env(rng: &mut ChaCha8Rng, pbw: &Pbw, max_len: usize, max_index: i32) -> EnvElement {
    let mut out = EnvElement::zero(pbw.algebra());
    for _ in 0..rng.gen_range(1..=3) {
        let w = random_word(rng, max_len, max_index);
        let e = pbw.normal_order(&w).expect("within window");
        out.add_scaled(&e, &Coefficient::from_int(small_int(rng)));
    }
    out
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: u32) -> Partition {
    partitions(n).choose(rng).expect("nonempty").clone()
}

/// Modes of a random partition of `n` in shuffled order, with sign `sign`.
fn scattered(rng: &mut ChaCha8Rng, n: u32, sign: i32) -> Vec<i32> {
    let p = random_partition(rng, n);
    let mut v: Vec<i32> = p.parts().iter().map(|&k| sign * k as i32).collect();
    v.shuffle(rng);
    v
}

/// A homogeneous element of degree 0: a shuffled product of a creation and
/// an annihilation partition of equal size, possibly with zero modes.
pub fn random_degree_zero(rng: &mut ChaCha8Rng, pbw: &Pbw, max_weight: u32) -> EnvElement {
    let n = rng.gen_range(0..=max_weight);
    let mut w = scattered(rng, n, -1);
    w.extend(scattered(rng, n, 1));
    if rng.gen_bool(0.5) {
        w.push(0);
    }
    w.shuffle(rng);
    let e = pbw.normal_order(&w).expect("within window");
    e.scale(&Coefficient::from_int(small_int(rng)))
}

/// `alpha * beta` with `beta` homogeneous of degree `-k`, `k > d`, so the
/// product lies in the left ideal generated by modes of degree `<= -(d+1)`
/// intersected with degree zero.
pub fn random_perturbation(rng: &mut ChaCha8Rng, pbw: &Pbw, d: u32) -> EnvElement {
    let k = d + rng.gen_range(1..=2);
    let mut beta = scattered(rng, k, 1);
    if rng.gen_bool(0.5) {
        let j = rng.gen_range(1..=2);
        beta.push(-j);
        beta.push(j);
        beta.shuffle(rng);
    }
    let mut alpha = scattered(rng, k, -1);
    if rng.gen_bool(0.3) {
        alpha.push(0);
        alpha.shuffle(rng);
    }
    let mut word = alpha;
    word.extend(beta);
    let e = pbw.normal_order(&word).expect("within window");
    e.scale(&Coefficient::from_int(small_int(rng)))
}

/// A random element of bidegree `(d1, -d2)`: up to three basis elements
/// with random middle polynomials.
pub fn random_mta(rng: &mut ChaCha8Rng, alg: AlgebraSpec, d1: u32, d2: u32) -> MtaElement {
    let mut out = MtaElement::zero(alg);
    for _ in 0..rng.gen_range(1..=3) {
        let r = random_partition(rng, d1);
        let s = random_partition(rng, d2);
        out.add_scaled(&MtaElement::epsilon(alg, &r, &s), &poly_x(rng, 2));
    }
    out
}
