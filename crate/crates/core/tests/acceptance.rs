//! Acceptance criteria. Each criterion prints one PASS/FAIL line with its
//! runtime; the test fails if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use knotoid::fixtures::{self, FIVE_1_28, FIVE_1_28_REVERSE, SINGULAR_WITNESS, TWO_TWO};
use knotoid::moves::random_move;
use knotoid::vassiliev::verify_order_one;
use knotoid::{
    compute_h, crossing_change_delta, degrees, gordian_decomposition, index_function,
    nonzero_height_certificate, plant_r3, random_diagram, resolutions, singular_h, ChordId,
    GaussDiagram, Invariant, MoveKind, R3Variant, ReductionPolicy, ZPoly,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ReductionPolicy::{Literal, Quotient};

const EXAMPLE_BUDGET: Duration = Duration::from_millis(1);
const INVARIANCE_BUDGET: Duration = Duration::from_secs(10);
const SYMMETRY_BUDGET: Duration = Duration::from_secs(5);
const VASSILIEV_BUDGET: Duration = Duration::from_secs(10);
const CROSSING_CHANGE_BUDGET: Duration = Duration::from_secs(5);
const PERFORMANCE_BUDGET: Duration = Duration::from_secs(2);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(budget: Duration, elapsed: Duration, detail: String) -> Outcome {
    let line = format!(
        "{detail}; {:.3} ms (budget {:.0} ms)",
        ms(elapsed),
        ms(budget)
    );
    if elapsed < budget {
        Ok(line)
    } else {
        Err(format!("over budget: {line}"))
    }
}

fn untimed(elapsed: Duration, detail: String) -> Outcome {
    Ok(format!("{detail}; {:.3} ms", ms(elapsed)))
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn h(d: &GaussDiagram, policy: ReductionPolicy) -> Invariant {
    compute_h(d, policy).unwrap()
}

fn z(c: i64, e: i64) -> ZPoly {
    ZPoly::monomial(c, e)
}

fn k(c: i64) -> ZPoly {
    ZPoly::constant(c)
}

/// `Σ coeff · (t^P - 1) yⁿ` from `(n, m, P, coeff)` tuples.
fn build(policy: ReductionPolicy, terms: &[(u64, u64, ZPoly, i64)]) -> Invariant {
    let mut out = Invariant::zero(policy);
    for (n, m, p, c) in terms {
        out.add_power_term(*n, *m, p, *c);
    }
    out
}

/// `[(t^A + t^B - 2) - (t + t^-1 - 2)] y + (t + t^-1 - 2) y^2`.
fn example_shape(policy: ReductionPolicy, a: ZPoly, b: ZPoly) -> Invariant {
    build(
        policy,
        &[
            (1, 2, a, 1),
            (1, 2, b, 1),
            (1, 0, k(1), -1),
            (1, 0, k(-1), -1),
            (2, 0, k(1), 1),
            (2, 0, k(-1), 1),
        ],
    )
}

fn check_indices(
    d: &GaussDiagram,
    policy: ReductionPolicy,
    want: &[(usize, u64, ZPoly)],
) -> Result<(), String> {
    for (c, n, p) in want {
        let got = index_function(d, ChordId(*c), *n, policy).map_err(|e| e.to_string())?;
        ensure(
            &got == p,
            format!("Ind_c{c}^{n} = {got}, expected {p} ({policy})"),
        )?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let d = fixtures::get(TWO_TWO);
    let start = Instant::now();
    let degs = degrees(&d).unwrap();
    let ind: Vec<ZPoly> = (1..=2)
        .map(|c| index_function(&d, ChordId(c), 1, Quotient).unwrap())
        .collect();
    let hq = h(&d, Quotient);
    let hl = h(&d, Literal);
    let elapsed = start.elapsed();
    ensure(degs == vec![1, 1], format!("degrees {degs:?}"))?;
    ensure(ind == vec![k(1), k(1)], format!("Ind^1 {ind:?}"))?;
    check_indices(&d, Literal, &[(1, 1, k(1)), (2, 1, k(1))])?;
    ensure(hq.is_zero() && hl.is_zero(), format!("H = {hq} / {hl}"))?;
    timed(
        EXAMPLE_BUDGET,
        elapsed,
        "H = 0 in both policies, d = (1, 1), Ind^1 = 1".into(),
    )
}

fn criterion_2() -> Outcome {
    let d = fixtures::get(FIVE_1_28);
    let start = Instant::now();
    let degs = degrees(&d).unwrap();
    let hl = h(&d, Literal);
    let hq = h(&d, Quotient);
    let elapsed = start.elapsed();
    ensure(degs == vec![-2, 2, 1, -1, 0], format!("degrees {degs:?}"))?;
    let printed = [
        (1, 1, z(-1, 1)),
        (1, 2, k(-1)),
        (2, 1, z(1, -1)),
        (2, 2, k(1)),
        (3, 1, k(1)),
        (4, 1, k(-1)),
        (5, 1, ZPoly::zero()),
        (5, 2, ZPoly::zero()),
    ];
    check_indices(&d, Literal, &printed)?;
    let mut quotient_indices = printed.clone();
    quotient_indices[2].2 = z(1, 1);
    check_indices(&d, Quotient, &quotient_indices)?;
    let want_l = example_shape(Literal, z(1, -1), z(-1, 1));
    ensure(hl == want_l, format!("literal H = {hl}, expected {want_l}"))?;
    let want_q = example_shape(Quotient, z(1, 1), z(-1, 1));
    ensure(
        hq == want_q,
        format!("quotient H = {hq}, expected {want_q}"),
    )?;
    timed(EXAMPLE_BUDGET, elapsed, format!("literal H = {hl}"))
}

fn criterion_3() -> Outcome {
    let d = fixtures::get(FIVE_1_28);
    let r = d.reverse();
    ensure(
        r == fixtures::get(FIVE_1_28_REVERSE),
        "bundled reverse differs from reverse()",
    )?;
    let start = Instant::now();
    let hd = h(&d, Literal);
    let hr = h(&r, Literal);
    let elapsed = start.elapsed();
    ensure(
        degrees(&r).unwrap() == vec![2, -2, -1, 1, 0],
        "reverse degrees",
    )?;
    check_indices(
        &r,
        Literal,
        &[
            (1, 1, z(1, 1)),
            (1, 2, k(1)),
            (2, 1, z(-1, -1)),
            (2, 2, k(-1)),
            (3, 1, k(-1)),
            (4, 1, k(1)),
            (5, 1, ZPoly::zero()),
            (5, 2, ZPoly::zero()),
        ],
    )?;
    let printed = example_shape(Literal, z(1, 1), z(-1, -1));
    ensure(hr == printed, format!("H(-D) = {hr}, expected {printed}"))?;
    ensure(!hr.equals(&hd).unwrap(), "literal H(-D) equals H(D)")?;
    ensure(hr == hd.subst_t_inverse(), "H(-D) != H(D)(t^-1)")?;
    let collapse = h(&r, Quotient).equals(&h(&d, Quotient)).unwrap();
    ensure(collapse, "quotient H(-D) differs from H(D)")?;
    timed(
        EXAMPLE_BUDGET,
        elapsed,
        "literal H(-D) distinct and = H(D)(t^-1); quotient values coincide (z^-1 = z mod 2)".into(),
    )
}

fn criterion_4() -> Outcome {
    let w = fixtures::get(SINGULAR_WITNESS);
    let start = Instant::now();
    let (plus, minus) = resolutions(&w, ChordId(2)).unwrap();
    let sq = singular_h(&w, Quotient);
    let sl = singular_h(&w, Literal);
    let elapsed = start.elapsed();
    ensure(
        degrees(&plus).unwrap() == vec![-2, -2, 1, 1],
        "K(c+) degrees",
    )?;
    ensure(
        degrees(&minus).unwrap() == vec![-2, 2, 1, 1],
        "K(c-) degrees",
    )?;
    for policy in ReductionPolicy::ALL {
        ensure(
            h(&plus, policy).is_zero(),
            format!("H(K(c+)) != 0 ({policy})"),
        )?;
    }
    check_indices(
        &plus,
        Quotient,
        &[
            (1, 1, z(-1, 1)),
            (1, 2, k(-1)),
            (2, 1, z(-1, 1)),
            (2, 2, k(-1)),
            (3, 1, k(1)),
            (4, 1, k(1)),
        ],
    )?;
    check_indices(
        &minus,
        Quotient,
        &[
            (1, 1, z(-1, 1)),
            (1, 2, k(-1)),
            (2, 1, z(1, 1)),
            (2, 2, k(1)),
            (3, 1, k(1)),
            (4, 1, k(1)),
        ],
    )?;
    let printed = |policy, e| {
        build(
            policy,
            &[
                (1, 2, z(-1, 1), 1),
                (2, 0, k(-1), 1),
                (1, 2, z(1, e), 1),
                (2, 0, k(1), 1),
            ],
        )
    };
    let want = printed(Quotient, 1);
    ensure(
        sq == want,
        format!("quotient singular H = {sq}, expected {want}"),
    )?;
    // Literal keeps the raw exponent z^-1 for chord 2 of K(c-).
    let want = printed(Literal, -1);
    ensure(
        sl == want,
        format!("literal singular H = {sl}, expected {want}"),
    )?;
    untimed(elapsed, format!("singular H = {sq}"))
}

fn criterion_5() -> Outcome {
    let d = fixtures::get(FIVE_1_28);
    let start = Instant::now();
    let mut summary = Vec::new();
    for policy in ReductionPolicy::ALL {
        let dec =
            gordian_decomposition(&d, &GaussDiagram::empty(), policy).map_err(|e| e.to_string())?;
        ensure(dec.bound == 2, format!("bound {} ({policy})", dec.bound))?;
        ensure(
            dec.bound_per_n == BTreeMap::from([(1, 2), (2, 1)]),
            format!("per-n {:?} ({policy})", dec.bound_per_n),
        )?;
        // Each pair is unordered: {P, -P(z^-1) reduced mod m}.
        let mut pairs: Vec<(u64, u64, [String; 2], i64)> = dec
            .pairs
            .iter()
            .map(|p| {
                let q = (-&p.p.subst_z_inverse()).reduce(p.m, policy);
                let mut both = [p.p.to_string(), q.to_string()];
                both.sort();
                (p.n, p.m, both, p.a)
            })
            .collect();
        pairs.sort();
        let partner_of_minus_z = if policy == Literal { "z^-1" } else { "z" };
        let pair = |a: &str, b: &str| {
            let mut both = [a.to_string(), b.to_string()];
            both.sort();
            both
        };
        let want = vec![
            (1, 0, pair("-1", "1"), -1),
            (1, 2, pair("-z", partner_of_minus_z), 1),
            (2, 0, pair("-1", "1"), 1),
        ];
        ensure(pairs == want, format!("pairs {pairs:?} ({policy})"))?;
        summary.push(format!("{policy}: bound {}", dec.bound));
    }
    untimed(start.elapsed(), summary.join(", "))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut moves: BTreeMap<MoveKind, usize> = BTreeMap::new();
    let mut diagrams = 0;
    for i in 0..1000u64 {
        let d = if i % 2 == 0 {
            let k = rng.gen_range(0..=8);
            GaussDiagram::random(&mut rng, k)
        } else {
            // Five random chords plus a planted R3 site so R3 moves occur.
            let k = rng.gen_range(0..=5);
            let base = GaussDiagram::random(&mut rng, k);
            let mut gaps = [0; 3].map(|_| rng.gen_range(0..=2 * base.chord_count()));
            gaps.sort_unstable();
            plant_r3(&base, gaps, R3Variant::ALL[(i / 2 % 2) as usize])
                .unwrap()
                .0
        };
        ensure(d.chord_count() <= 8, "diagram too large")?;
        let want = h(&d, Quotient);
        let mut cur = d.clone();
        for _ in 0..rng.gen_range(1..=10) {
            let Some(mv) = random_move(&cur, &mut rng, &MoveKind::ALL) else {
                break;
            };
            cur = mv.apply(&cur).map_err(|e| format!("{d}: {e}"))?;
            *moves.entry(mv.kind()).or_default() += 1;
            let got = h(&cur, Quotient);
            ensure(
                got == want,
                format!("H changed after {mv:?} from {d}: {got} vs {want}"),
            )?;
        }
        diagrams += 1;
    }
    ensure(
        moves.get(&MoveKind::R3).copied().unwrap_or(0) > 0,
        "no R3 moves exercised",
    )?;
    timed(
        INVARIANCE_BUDGET,
        start.elapsed(),
        format!("{diagrams} diagrams, moves {moves:?}, quotient H unchanged"),
    )
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=8);
        let d = GaussDiagram::random(&mut rng, n);
        for policy in ReductionPolicy::ALL {
            let hd = h(&d, policy);
            ensure(
                h(&d.reverse(), policy) == hd.subst_t_inverse(),
                format!("reverse identity fails on {d}"),
            )?;
            let mirrored = hd.subst_t_inverse().subst_z_inverse().neg();
            ensure(
                h(&d.mirror(), policy) == mirrored,
                format!("mirror identity fails on {d}"),
            )?;
        }
        let nested = GaussDiagram::random_non_crossing(&mut rng, n);
        ensure(
            degrees(&nested).unwrap().iter().all(|&x| x == 0),
            "nested degree nonzero",
        )?;
        for policy in ReductionPolicy::ALL {
            ensure(
                !nonzero_height_certificate(&nested, policy).unwrap(),
                format!("nested diagram {nested} certified nonzero"),
            )?;
        }
    }
    timed(
        SYMMETRY_BUDGET,
        start.elapsed(),
        "1000 diagrams, reverse and mirror identities in both policies; 1000 nested diagrams H = 0"
            .into(),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for policy in ReductionPolicy::ALL {
        let r = verify_order_one(1000, 8, 8, policy);
        ensure(
            r.failures.is_empty(),
            format!("{policy}: nonzero on {:?}", r.failures.first()),
        )?;
        ensure(
            r.passed,
            format!("{policy}: witness value {}", r.witness_value),
        )?;
        notes.push(format!("{policy}: witness {}", r.witness_value));
    }
    timed(
        VASSILIEV_BUDGET,
        start.elapsed(),
        format!("1000 two-singular diagrams vanish; {}", notes.join("; ")),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs = 0;
    while pairs < 1000 {
        let n = rng.gen_range(1..=8);
        let d = GaussDiagram::random(&mut rng, n);
        let c = ChordId(rng.gen_range(1..=n));
        let predicted = crossing_change_delta(&d, c, Quotient).unwrap();
        let actual = h(&d, Quotient)
            .sub(&h(&d.crossing_change(c).unwrap(), Quotient))
            .unwrap();
        ensure(
            predicted == actual,
            format!("{d} at {c}: predicted {predicted}, actual {actual}"),
        )?;
        pairs += 1;
    }
    timed(
        CROSSING_CHANGE_BUDGET,
        start.elapsed(),
        format!("{pairs} (diagram, chord) pairs exact"),
    )
}

fn criterion_10() -> Outcome {
    let d = random_diagram(1000, 10);
    let start = Instant::now();
    let hq = h(&d, Quotient);
    let elapsed = start.elapsed();
    timed(
        PERFORMANCE_BUDGET,
        elapsed,
        format!("1000 chords, {} exponent terms", hq.exp_terms().len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 two-chord knotoid has H = 0", criterion_1),
        ("2 five-crossing example values", criterion_2),
        ("3 reverse of the five-crossing example", criterion_3),
        ("4 singular witness", criterion_4),
        ("5 Gordian bound against the trivial knotoid", criterion_5),
        ("6 Reidemeister invariance suite", criterion_6),
        ("7 reverse/mirror symmetry suite", criterion_7),
        ("8 order-one Vassiliev suite", criterion_8),
        ("9 crossing-change prediction suite", criterion_9),
        ("10 performance on 1000 chords", criterion_10),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
