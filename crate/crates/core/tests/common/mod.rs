#![allow(dead_code)]
//! Seeded random draws shared by the integration tests.

use std::collections::BTreeMap;

use lsv_core::algebra::{BasisKey, Element, Kind, Window};
use lsv_core::automorphisms::{AutoGen, Character, HomToInt, MShearData, ParameterTuple};
use lsv_core::cohomology::LinearFunctional;
use lsv_core::scalars::{GroupData, LaurentPoly, Scalar};
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng8 {
    <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed)
}

pub fn rational(rng: &mut Rng8) -> Scalar {
    let n = rng.random_range(-6..=6);
    let d = rng.random_range(1..=4);
    Scalar::ratio(n, d)
}

pub fn nonzero(rng: &mut Rng8) -> Scalar {
    loop {
        let x = rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn laurent(rng: &mut Rng8) -> LaurentPoly {
    let n = rng.random_range(0..=3);
    LaurentPoly::from_terms((0..n).map(|_| (rng.random_range(-2..=2), nonzero(rng))))
}

pub fn key_in(rng: &mut Rng8, keys: &[BasisKey]) -> BasisKey {
    keys.choose(rng).expect("nonempty window").clone()
}

/// A random element supported on the given keys.
pub fn element(rng: &mut Rng8, keys: &[BasisKey], max_terms: usize) -> Element {
    let n = rng.random_range(1..=max_terms);
    Element::from_terms((0..n).map(|_| (key_in(rng, keys), nonzero(rng))))
}

/// Nonzero element of `M ⊕ Y`.
pub fn ideal_element(rng: &mut Rng8, keys: &[BasisKey]) -> Element {
    let ideal: Vec<BasisKey> = keys.iter().filter(|k| k.kind != Kind::L).cloned().collect();
    loop {
        let x = element(rng, &ideal, 3);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn shear(rng: &mut Rng8) -> MShearData {
    let n = rng.random_range(1..=2);
    MShearData::canonical((0..n).map(|_| (rng.random_range(-2..=2), (rational(rng), rational(rng)))))
}

pub fn params(rng: &mut Rng8, group: &GroupData) -> ParameterTuple {
    let rank = group.t_rank();
    ParameterTuple {
        a: if rng.random_bool(0.5) { Scalar::one() } else { Scalar::from_int(-1) },
        phi: HomToInt::new((0..rank).map(|_| rng.random_range(-2..=2)).collect()),
        chi: Character::new((0..rank).map(|_| nonzero(rng)).collect()),
        r: nonzero(rng),
        eps: if rng.random_bool(0.5) { 1 } else { -1 },
        b: nonzero(rng),
    }
}

/// One generator of the given kind index (0..7).
pub fn generator(rng: &mut Rng8, group: &GroupData, keys: &[BasisKey], kind: usize) -> AutoGen {
    let rank = group.t_rank();
    match kind {
        0 => AutoGen::Scale(if rng.random_bool(0.5) { Scalar::one() } else { Scalar::from_int(-1) }),
        1 => AutoGen::LoopShift(HomToInt::new((0..rank).map(|_| rng.random_range(-2..=2)).collect())),
        2 => AutoGen::CharTwist { chi: Character::new((0..rank).map(|_| nonzero(rng)).collect()), r: nonzero(rng) },
        3 => AutoGen::ZFlip(if rng.random_bool(0.5) { 1 } else { -1 }),
        4 => AutoGen::LoopScale(nonzero(rng)),
        5 => AutoGen::MShear(shear(rng)),
        _ => AutoGen::Inner(ideal_element(rng, keys)),
    }
}

/// A finite functional on keys near the window.
pub fn functional(rng: &mut Rng8, group: &GroupData) -> LinearFunctional {
    let wide = Window::new(6, 6).keys(group);
    let n = rng.random_range(1..=8);
    LinearFunctional::table((0..n).map(|_| (key_in(rng, &wide), rational(rng))))
}

pub fn classes(rng: &mut Rng8) -> BTreeMap<i64, Scalar> {
    let n = rng.random_range(0..=3);
    (0..n).map(|_| (rng.random_range(-3..=3), nonzero(rng))).collect()
}
