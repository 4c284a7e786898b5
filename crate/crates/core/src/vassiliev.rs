//! Singular diagrams and the skein extension
//! `v(K(×)) = v(K(×⁺)) - v(K(×⁻))` of the invariant.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::gauss::{ChordId, Crossing, GaussDiagram, Sign};
use crate::invariant::{compute_h_with, HOptions, Invariant};
use crate::zpoly::ReductionPolicy;

/// `(K(×⁺), K(×⁻))` at a singular chord. The positive resolution keeps the
/// chord's direction; the negative one is its crossing change.
pub fn resolutions(d: &GaussDiagram, id: ChordId) -> Result<(GaussDiagram, GaussDiagram)> {
    if !d.chord(id)?.is_singular() {
        return Err(Error::NotSingular(id));
    }
    let plus = d.with_crossing(id, Crossing::Classical(Sign::Positive))?;
    let minus = plus.crossing_change(id)?;
    Ok((plus, minus))
}

/// Skein expansion over all singular chords; plain `H` when there are none.
pub fn singular_h(d: &GaussDiagram, policy: ReductionPolicy) -> Invariant {
    singular_h_with(
        d,
        &HOptions {
            policy,
            include_n0: false,
        },
    )
}

pub fn singular_h_with(d: &GaussDiagram, opts: &HOptions) -> Invariant {
    expand(d, opts, &d.singular_chords()).expect("singular chords come from the diagram")
}

/// Skein expansion resolving the singular chords in the given order.
pub fn singular_h_in_order(
    d: &GaussDiagram,
    policy: ReductionPolicy,
    order: &[ChordId],
) -> Result<Invariant> {
    expand(
        d,
        &HOptions {
            policy,
            include_n0: false,
        },
        order,
    )
}

fn expand(d: &GaussDiagram, opts: &HOptions, order: &[ChordId]) -> Result<Invariant> {
    let Some((&first, rest)) = order.split_first() else {
        return compute_h_with(d, opts);
    };
    let (plus, minus) = resolutions(d, first)?;
    expand(&plus, opts, rest)?.sub(&expand(&minus, opts, rest)?)
}

/// Random diagram with `k` chords of which `s` are singular.
pub fn random_singular<R: Rng + ?Sized>(rng: &mut R, k: usize, s: usize) -> GaussDiagram {
    let mut d = GaussDiagram::random(rng, k);
    for i in sample(rng, k, s.min(k)) {
        d = d
            .with_crossing(ChordId(i + 1), Crossing::Singular)
            .expect("chord exists");
    }
    d
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderOneReport {
    pub policy: ReductionPolicy,
    pub samples: usize,
    /// Two-singular samples whose expansion did not vanish, as Gauss codes.
    pub failures: Vec<String>,
    /// Random one-singular samples with a nonzero expansion.
    pub one_singular_nonzero: usize,
    pub witness: String,
    pub witness_value: String,
    pub passed: bool,
}

/// Checks the order-one behaviour: every 2-singular sample vanishes and the
/// bundled 1-singular witness does not.
pub fn verify_order_one(
    samples: usize,
    max_chords: usize,
    seed: u64,
    policy: ReductionPolicy,
) -> OrderOneReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut one_singular_nonzero = 0;
    if max_chords >= 2 {
        for _ in 0..samples {
            let k = rng.gen_range(2..=max_chords);
            let d = random_singular(&mut rng, k, 2);
            if !singular_h(&d, policy).is_zero() {
                failures.push(d.to_string());
            }
            let d1 = random_singular(&mut rng, k, 1);
            if !singular_h(&d1, policy).is_zero() {
                one_singular_nonzero += 1;
            }
        }
    }
    let witness = fixtures::get(fixtures::SINGULAR_WITNESS);
    let value = singular_h(&witness, policy);
    OrderOneReport {
        policy,
        samples,
        passed: failures.is_empty() && !value.is_zero(),
        failures,
        one_singular_nonzero,
        witness: witness.to_string(),
        witness_value: value.to_string(),
    }
}
