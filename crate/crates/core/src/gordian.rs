//! Crossing-change structure of invariant differences and the resulting
//! lower bound on Gordian distance.
//!
//! A single crossing change at chord `c` (sign `ε`, degree `±m`) shifts the
//! invariant by `Σ_n ε (t^P + t^Q - 2) yⁿ` with `P = Ind_c^n` and
//! `Q = -P(z⁻¹)` reduced mod `m`. [`decompose`] splits an arbitrary difference
//! into such pairs; the sum of `|a|` within one power of `y` bounds the number
//! of crossing changes needed.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss::{ChordId, GaussDiagram};
use crate::invariant::{compute_h, ChordTable, Invariant, TermKey};
use crate::zpoly::{ReductionPolicy, ZPoly};

/// Predicted `H(d) - H(d')` where `d'` changes the crossing at `id`.
pub fn crossing_change_delta(
    d: &GaussDiagram,
    id: ChordId,
    policy: ReductionPolicy,
) -> Result<Invariant> {
    let chord = d.chord(id)?;
    if chord.is_singular() {
        return Err(Error::SingularChord(id));
    }
    let table = ChordTable::new(d)?;
    let i = id.0 - 1;
    let eps = table.signs[i];
    let m = table.degrees[i].unsigned_abs();
    let mut delta = Invariant::zero(policy);
    for (n, p) in table.index_functions(i, policy, false) {
        let q = partner_exponent(&p);
        delta.add_exp(n, m, &p, eps);
        delta.add_exp(n, m, &q, eps);
        delta.add_const(n, -2 * eps);
    }
    Ok(delta)
}

/// `-P(z⁻¹)`, before reduction.
fn partner_exponent(p: &ZPoly) -> ZPoly {
    -&p.subst_z_inverse()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GordianPair {
    pub n: u64,
    pub m: u64,
    #[serde(rename = "P", serialize_with = "serialize_poly")]
    pub p: ZPoly,
    pub a: i64,
}

fn serialize_poly<S: serde::Serializer>(p: &ZPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.terms())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GordianDecomposition {
    pub policy: ReductionPolicy,
    pub pairs: Vec<GordianPair>,
    pub bound_per_n: BTreeMap<u64, u64>,
    pub bound: u64,
}

fn not_form(msg: String) -> Error {
    Error::NotHomotopyForm(msg)
}

/// Pairs each term `t^P yⁿ` with its partner `t^Q yⁿ` and checks the
/// constants. Fails when `delta` cannot come from crossing changes.
pub fn decompose(delta: &Invariant) -> Result<GordianDecomposition> {
    let mut remaining: BTreeMap<TermKey, i64> = delta.exp_terms().clone();
    let mut pairs = Vec::new();
    let mut consts: BTreeMap<u64, i64> = BTreeMap::new();
    let mut bound_per_n: BTreeMap<u64, u64> = BTreeMap::new();
    while let Some((key, coeff)) = remaining.pop_first() {
        let partner = delta.key(key.n, key.modulus, &partner_exponent(&key.exponent));
        let a = if partner == key {
            if coeff % 2 != 0 {
                return Err(not_form(format!(
                    "self-paired term t^({}) y^{} has odd coefficient {coeff}",
                    key.exponent, key.n
                )));
            }
            coeff / 2
        } else {
            match remaining.remove(&partner) {
                Some(c) if c == coeff => coeff,
                Some(c) => {
                    return Err(not_form(format!(
                        "t^({}) y^{} has coefficient {coeff} but its partner t^({}) has {c}",
                        key.exponent, key.n, partner.exponent
                    )))
                }
                None => {
                    return Err(not_form(format!(
                        "t^({}) y^{} has no partner t^({})",
                        key.exponent, key.n, partner.exponent
                    )))
                }
            }
        };
        *consts.entry(key.n).or_default() -= 2 * a;
        *bound_per_n.entry(key.n).or_default() += a.unsigned_abs();
        pairs.push(GordianPair {
            n: key.n,
            m: key.modulus,
            p: key.exponent,
            a,
        });
    }
    consts.retain(|_, c| *c != 0);
    if &consts != delta.const_terms() {
        return Err(not_form(format!(
            "constants {:?} do not match the paired terms, which need {:?}",
            delta.const_terms(),
            consts
        )));
    }
    let bound = bound_per_n.values().copied().max().unwrap_or(0);
    Ok(GordianDecomposition {
        policy: delta.policy(),
        pairs,
        bound_per_n,
        bound,
    })
}

/// `Σ a (t^P + t^Q - 2) yⁿ` over the pairs.
pub fn reconstruct(dec: &GordianDecomposition) -> Invariant {
    let mut out = Invariant::zero(dec.policy);
    for pair in &dec.pairs {
        out.add_exp(pair.n, pair.m, &pair.p, pair.a);
        out.add_exp(pair.n, pair.m, &partner_exponent(&pair.p), pair.a);
        out.add_const(pair.n, -2 * pair.a);
    }
    out
}

/// Lower bound on the number of crossing changes relating `d1` and `d2`.
pub fn gordian_lower_bound(
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    policy: ReductionPolicy,
) -> Result<u64> {
    Ok(gordian_decomposition(d1, d2, policy)?.bound)
}

pub fn gordian_decomposition(
    d1: &GaussDiagram,
    d2: &GaussDiagram,
    policy: ReductionPolicy,
) -> Result<GordianDecomposition> {
    decompose(&compute_h(d1, policy)?.sub(&compute_h(d2, policy)?)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct GordianReport {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_n: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<GordianPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl GordianReport {
    /// `status` is `ok` or `not_homotopy_form`; other errors pass through.
    pub fn from_result(result: Result<GordianDecomposition>) -> Result<GordianReport> {
        match result {
            Ok(dec) => Ok(GordianReport {
                status: "ok",
                bound: Some(dec.bound),
                per_n: Some(dec.bound_per_n),
                pairs: Some(dec.pairs),
                reason: None,
            }),
            Err(Error::NotHomotopyForm(reason)) => Ok(GordianReport {
                status: "not_homotopy_form",
                bound: None,
                per_n: None,
                pairs: None,
                reason: Some(reason),
            }),
            Err(e) => Err(e),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gauss::random_diagram;
    use crate::invariant::index_functions;
    use crate::moves::{random_walk, MoveKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use ReductionPolicy::{Literal, Quotient};

    #[test]
    fn delta_matches_recomputation() {
        for seed in 0..300 {
            let d = random_diagram(6, seed);
            for policy in ReductionPolicy::ALL {
                for c in d.chords() {
                    let predicted = crossing_change_delta(&d, c.id, policy).unwrap();
                    let changed = d.crossing_change(c.id).unwrap();
                    let actual = compute_h(&d, policy)
                        .unwrap()
                        .sub(&compute_h(&changed, policy).unwrap())
                        .unwrap();
                    assert_eq!(predicted, actual, "{d} at {}", c.id);
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        let iso: GaussDiagram = "O1+ U1 O2- O3+ U2 U3".parse().unwrap();
        assert!(crossing_change_delta(&iso, ChordId(1), Quotient)
            .unwrap()
            .is_zero());

        let d = fixtures::get(fixtures::FIVE_1_28);
        let delta = crossing_change_delta(&d, ChordId(1), Literal).unwrap();
        // ε = +1, Ind¹ = -z, Ind² = -1 at chord 1.
        let mut want = Invariant::zero(Literal);
        want.add_power_term(1, 2, &ZPoly::monomial(-1, 1), 1);
        want.add_power_term(1, 2, &ZPoly::monomial(1, -1), 1);
        want.add_power_term(2, 0, &ZPoly::constant(-1), 1);
        want.add_power_term(2, 0, &ZPoly::constant(1), 1);
        assert_eq!(delta, want);
        let changed = d.crossing_change(ChordId(1)).unwrap();
        let direct = compute_h(&d, Literal)
            .unwrap()
            .sub(&compute_h(&changed, Literal).unwrap())
            .unwrap();
        assert_eq!(direct, want);
        let singular = fixtures::get(fixtures::SINGULAR_WITNESS);
        assert!(matches!(
            crossing_change_delta(&singular, ChordId(2), Quotient),
            Err(Error::SingularChord(_))
        ));
    }

    #[test]
    fn five_against_trivial() {
        let d = fixtures::get(fixtures::FIVE_1_28);
        for policy in ReductionPolicy::ALL {
            let dec = gordian_decomposition(&d, &GaussDiagram::empty(), policy).unwrap();
            assert_eq!(dec.bound, 2);
            assert_eq!(dec.bound_per_n, BTreeMap::from([(1, 2), (2, 1)]));
            let y1: Vec<i64> = dec.pairs.iter().filter(|p| p.n == 1).map(|p| p.a).collect();
            assert_eq!(y1.len(), 2);
            assert!(y1.contains(&1) && y1.contains(&-1));
            let y2: Vec<&GordianPair> = dec.pairs.iter().filter(|p| p.n == 2).collect();
            assert_eq!(y2.len(), 1);
            assert_eq!(y2[0].a, 1);
            assert_eq!(reconstruct(&dec), compute_h(&d, policy).unwrap());
        }
    }

    #[test]
    fn decompose_edge_cases() {
        let zero = decompose(&Invariant::zero(Quotient)).unwrap();
        assert!(zero.pairs.is_empty());
        assert_eq!(zero.bound, 0);

        let mut lone = Invariant::zero(Quotient);
        lone.add_power_term(1, 0, &ZPoly::constant(1), 1);
        assert!(matches!(decompose(&lone), Err(Error::NotHomotopyForm(_))));

        // z - z^2 under modulus 3 in Quotient mode pairs with itself.
        let mut odd = Invariant::zero(Quotient);
        odd.add_exp(1, 3, &ZPoly::from_terms([(1, 1), (2, -1)]), 1);
        odd.add_const(1, -1);
        assert!(matches!(decompose(&odd), Err(Error::NotHomotopyForm(_))));
        let even = odd.scale(2);
        let dec = decompose(&even).unwrap();
        assert_eq!(dec.pairs[0].a, 1);
        assert_eq!(reconstruct(&dec), even);

        let mut bad_const = Invariant::zero(Quotient);
        bad_const.add_exp(1, 0, &ZPoly::constant(1), 1);
        bad_const.add_exp(1, 0, &ZPoly::constant(-1), 1);
        assert!(matches!(
            decompose(&bad_const),
            Err(Error::NotHomotopyForm(_))
        ));
        bad_const.add_const(1, -2);
        assert_eq!(decompose(&bad_const).unwrap().bound, 1);
    }

    #[test]
    fn single_change_bound() {
        for seed in 0..200 {
            let d = random_diagram(6, seed);
            for c in d.chords() {
                let b =
                    gordian_lower_bound(&d, &d.crossing_change(c.id).unwrap(), Quotient).unwrap();
                let active = !index_functions(&d, c.id, Quotient).unwrap().is_empty();
                assert_eq!(b, u64::from(active));
            }
        }
    }

    #[test]
    fn sequences_and_walks() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..200 {
            let d = random_diagram(6, seed);
            let steps = rng.gen_range(0..5);
            let mut cur = d.clone();
            for _ in 0..steps {
                cur = cur.crossing_change(ChordId(rng.gen_range(1..=6))).unwrap();
            }
            assert!(gordian_lower_bound(&d, &cur, Quotient).unwrap() <= steps);
            let walked = random_walk(&d, 8, seed, &MoveKind::ALL);
            assert_eq!(gordian_lower_bound(&d, &walked, Quotient).unwrap(), 0);
            assert_eq!(gordian_lower_bound(&d, &d, Literal).unwrap(), 0);
        }
    }

    #[test]
    fn report_json() {
        let d = fixtures::get(fixtures::FIVE_1_28);
        let ok =
            GordianReport::from_result(gordian_decomposition(&d, &GaussDiagram::empty(), Quotient))
                .unwrap();
        let json = ok.to_json();
        assert!(json.starts_with(r#"{"status":"ok","bound":2,"per_n":{"1":2,"2":1},"pairs":[{"n":1,"m":0,"P":[[0,-1]],"a":-1}"#));
        let bad = GordianReport::from_result(Err(Error::NotHomotopyForm("x".into()))).unwrap();
        assert_eq!(
            bad.to_json(),
            r#"{"status":"not_homotopy_form","reason":"x"}"#
        );
    }
}
