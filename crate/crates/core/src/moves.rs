//! Reidemeister moves on Gauss diagrams: the oriented generators Ω1a, Ω1b,
//! Ω2a and Ω3a (with its Gauss-diagram twin Ω3a′).
//!
//! Gaps index the slots between events: gap `g` sits after the first `g`
//! events, so a diagram with `k` chords has gaps `0..=2k`. Insertions give new
//! chords the next free ids unless a label is requested, in which case existing
//! ids at or above the label shift up by one. Deletions renumber the survivors
//! in order. With labels, every move has an exact inverse (see [`Move::inverse`]).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{ChordId, Crossing, EndpointEvent, EndpointKind, GaussDiagram, Sign};

/// Endpoint order of an R1 chord: `Forward` puts the over endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

/// Sign of the first inserted R2 chord; the second gets the opposite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignAssignment {
    FirstPositive,
    FirstNegative,
}

impl SignAssignment {
    fn signs(self) -> [Sign; 2] {
        match self {
            SignAssignment::FirstPositive => [Sign::Positive, Sign::Negative],
            SignAssignment::FirstNegative => [Sign::Negative, Sign::Positive],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    R1Insert,
    R1Delete,
    R2Insert,
    R2Delete,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::R1Insert,
        MoveKind::R1Delete,
        MoveKind::R2Insert,
        MoveKind::R2Delete,
        MoveKind::R3,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum R3Variant {
    /// Signs `(+, -, +)` on `(c1, c2, c3)`.
    A,
    /// Signs `(+, +, -)`, with `c1` pointing backward.
    APrime,
}

impl R3Variant {
    pub const ALL: [R3Variant; 2] = [R3Variant::A, R3Variant::APrime];

    fn signs(self) -> [Sign; 3] {
        match self {
            R3Variant::A => [Sign::Positive, Sign::Negative, Sign::Positive],
            R3Variant::APrime => [Sign::Positive, Sign::Positive, Sign::Negative],
        }
    }

    /// Slot contents `(role, kind)` on the side where the chords pairwise cross.
    fn crossing_side(self) -> [(usize, EndpointKind); 6] {
        use EndpointKind::{Over as O, Under as U};
        match self {
            R3Variant::A => [(2, U), (1, U), (0, U), (2, O), (1, O), (0, O)],
            R3Variant::APrime => [(2, U), (1, U), (0, O), (2, O), (1, O), (0, U)],
        }
    }

    fn sides(self) -> [[(usize, EndpointKind); 6]; 2] {
        let a = self.crossing_side();
        let b = [a[1], a[0], a[3], a[2], a[5], a[4]];
        [a, b]
    }
}

/// An R3 site: three adjacent endpoint pairs starting at `starts` (1-based,
/// increasing) occupied by chords playing roles `c1, c2, c3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct R3Config {
    pub variant: R3Variant,
    pub starts: [usize; 3],
    pub roles: [ChordId; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", content = "params", rename_all = "snake_case")]
pub enum Move {
    R1Insert {
        gap: usize,
        direction: Direction,
        sign: Sign,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<ChordId>,
    },
    R1Delete {
        chord: ChordId,
    },
    R2Insert {
        gap_a: usize,
        gap_b: usize,
        signs: SignAssignment,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<[ChordId; 2]>,
    },
    R2Delete {
        first: ChordId,
        second: ChordId,
    },
    R3 {
        config: R3Config,
    },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Insert { .. } => MoveKind::R1Insert,
            Move::R1Delete { .. } => MoveKind::R1Delete,
            Move::R2Insert { .. } => MoveKind::R2Insert,
            Move::R2Delete { .. } => MoveKind::R2Delete,
            Move::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn apply(&self, d: &GaussDiagram) -> Result<GaussDiagram> {
        match *self {
            Move::R1Insert {
                gap,
                direction,
                sign,
                label,
            } => {
                let out = r1_insert(d, gap, direction, sign)?;
                match label {
                    Some(l) => place_new_chords(&out, &[l]),
                    None => Ok(out),
                }
            }
            Move::R1Delete { chord } => r1_delete(d, chord),
            Move::R2Insert {
                gap_a,
                gap_b,
                signs,
                labels,
            } => {
                let out = r2_insert(d, gap_a, gap_b, signs)?;
                match labels {
                    Some(l) => place_new_chords(&out, &l),
                    None => Ok(out),
                }
            }
            Move::R2Delete { first, second } => r2_delete(d, first, second),
            Move::R3 { config } => r3_apply(d, &config),
        }
    }

    /// The move undoing `self` on `before`, exact including chord ids.
    pub fn inverse(&self, before: &GaussDiagram) -> Result<Move> {
        let k = before.chord_count();
        Ok(match *self {
            Move::R1Insert { label, .. } => Move::R1Delete {
                chord: label.unwrap_or(ChordId(k + 1)),
            },
            Move::R1Delete { chord } => {
                let c = before.chord(chord)?;
                Move::R1Insert {
                    gap: c.over.min(c.under) - 1,
                    direction: if c.over < c.under {
                        Direction::Forward
                    } else {
                        Direction::Backward
                    },
                    sign: c.sign().ok_or(Error::SingularChord(chord))?,
                    label: Some(chord),
                }
            }
            Move::R2Insert { labels, .. } => {
                let [first, second] = labels.unwrap_or([ChordId(k + 1), ChordId(k + 2)]);
                Move::R2Delete { first, second }
            }
            Move::R2Delete { first, second } => {
                let (front, back) = r2_pattern(before, first, second)?;
                let f = before.chord(front)?;
                Move::R2Insert {
                    gap_a: f.over - 1,
                    gap_b: f.under - 3,
                    signs: match f.sign() {
                        Some(Sign::Positive) => SignAssignment::FirstPositive,
                        _ => SignAssignment::FirstNegative,
                    },
                    labels: Some([front, back]),
                }
            }
            Move::R3 { config } => Move::R3 { config },
        })
    }
}

fn check_gap(d: &GaussDiagram, gap: usize) -> Result<()> {
    let max = 2 * d.chord_count();
    if gap > max {
        return Err(Error::GapOutOfRange { gap, max });
    }
    Ok(())
}

/// Inserts runs of new events at gaps of `d`; runs sharing a gap keep their
/// given order. `extra` holds the crossings of the new chords `k+1..`.
fn insert_events(
    d: &GaussDiagram,
    runs: &[(usize, Vec<EndpointEvent>)],
    extra: &[Crossing],
) -> Result<GaussDiagram> {
    let old = d.events();
    let mut events = Vec::with_capacity(old.len() + runs.iter().map(|r| r.1.len()).sum::<usize>());
    for g in 0..=old.len() {
        for (gap, run) in runs {
            if *gap == g {
                events.extend_from_slice(run);
            }
        }
        if let Some(&e) = old.get(g) {
            events.push(e);
        }
    }
    let mut crossings = d.crossings().to_vec();
    crossings.extend_from_slice(extra);
    GaussDiagram::from_events(events, crossings)
}

/// Moves the newest `targets.len()` chords to the ids in `targets`, shifting
/// the older chords into the remaining ids in order.
fn place_new_chords(d: &GaussDiagram, targets: &[ChordId]) -> Result<GaussDiagram> {
    let k = d.chord_count();
    let fresh = k - targets.len();
    let taken: BTreeSet<usize> = targets.iter().map(|t| t.0).collect();
    if taken.len() != targets.len() || targets.iter().any(|t| t.0 == 0 || t.0 > k) {
        return Err(Error::InvalidMove(format!("bad chord labels {targets:?}")));
    }
    let mut map = vec![0; k + 1];
    let mut free = (1..=k).filter(|i| !taken.contains(i));
    for slot in map.iter_mut().take(fresh + 1).skip(1) {
        *slot = free.next().expect("enough free ids");
    }
    for (i, t) in targets.iter().enumerate() {
        map[fresh + 1 + i] = t.0;
    }
    Ok(d.relabel(&map))
}

pub fn r1_insert(
    d: &GaussDiagram,
    gap: usize,
    direction: Direction,
    sign: Sign,
) -> Result<GaussDiagram> {
    check_gap(d, gap)?;
    let id = d.chord_count() + 1;
    let (a, b) = match direction {
        Direction::Forward => (EndpointKind::Over, EndpointKind::Under),
        Direction::Backward => (EndpointKind::Under, EndpointKind::Over),
    };
    insert_events(
        d,
        &[(
            gap,
            vec![EndpointEvent::new(id, a), EndpointEvent::new(id, b)],
        )],
        &[Crossing::Classical(sign)],
    )
}

/// Chords whose two endpoints are adjacent.
pub fn r1_candidates(d: &GaussDiagram) -> Vec<ChordId> {
    d.chords()
        .iter()
        .filter(|c| c.over.abs_diff(c.under) == 1)
        .map(|c| c.id)
        .collect()
}

pub fn r1_delete(d: &GaussDiagram, id: ChordId) -> Result<GaussDiagram> {
    let c = d.chord(id)?;
    if c.over.abs_diff(c.under) != 1 {
        return Err(Error::InvalidMove(format!(
            "endpoints of {id} are not adjacent"
        )));
    }
    Ok(d.without_chords(&[id]))
}

/// Two crossing chords, both over endpoints at `gap_a`, both under endpoints
/// at `gap_b` (`gap_a <= gap_b`), ids `k+1` and `k+2`, opposite signs.
pub fn r2_insert(
    d: &GaussDiagram,
    gap_a: usize,
    gap_b: usize,
    signs: SignAssignment,
) -> Result<GaussDiagram> {
    check_gap(d, gap_a)?;
    check_gap(d, gap_b)?;
    if gap_a > gap_b {
        return Err(Error::InvalidMove(format!(
            "gap_a {gap_a} after gap_b {gap_b}"
        )));
    }
    let k = d.chord_count();
    let [s1, s2] = signs.signs();
    insert_events(
        d,
        &[
            (
                gap_a,
                vec![
                    EndpointEvent::new(k + 1, EndpointKind::Over),
                    EndpointEvent::new(k + 2, EndpointKind::Over),
                ],
            ),
            (
                gap_b,
                vec![
                    EndpointEvent::new(k + 1, EndpointKind::Under),
                    EndpointEvent::new(k + 2, EndpointKind::Under),
                ],
            ),
        ],
        &[Crossing::Classical(s1), Crossing::Classical(s2)],
    )
}

/// Orders an R2 pair as (front, back) after checking the local pattern.
fn r2_pattern(d: &GaussDiagram, a: ChordId, b: ChordId) -> Result<(ChordId, ChordId)> {
    let ca = d.chord(a)?;
    let cb = d.chord(b)?;
    let (f, g) = if ca.over < cb.over {
        (ca, cb)
    } else {
        (cb, ca)
    };
    let fail = |why: &str| {
        Err(Error::InvalidMove(format!(
            "{a} and {b} are not an R2 pair: {why}"
        )))
    };
    if a == b {
        return fail("same chord");
    }
    if g.over != f.over + 1 || g.under != f.under + 1 {
        return fail("endpoints not adjacent");
    }
    if f.under < g.over {
        return fail("chords point backward");
    }
    match (f.sign(), g.sign()) {
        (Some(x), Some(y)) if x != y => Ok((f.id, g.id)),
        _ => fail("signs not opposite"),
    }
}

/// All `(front, back)` R2 pairs.
pub fn r2_candidates(d: &GaussDiagram) -> Vec<(ChordId, ChordId)> {
    let mut out = Vec::new();
    for c in d.chords() {
        if let Some(next) = d.event_at(c.over + 1) {
            if next.kind == EndpointKind::Over {
                if let Ok(pair) = r2_pattern(d, c.id, next.chord) {
                    out.push(pair);
                }
            }
        }
    }
    out
}

pub fn r2_delete(d: &GaussDiagram, id1: ChordId, id2: ChordId) -> Result<GaussDiagram> {
    r2_pattern(d, id1, id2)?;
    Ok(d.without_chords(&[id1, id2]))
}

/// Roles of the six events at the given sorted positions, if they match one
/// side of `variant`.
fn match_variant(
    d: &GaussDiagram,
    positions: &[usize; 6],
    variant: R3Variant,
) -> Option<[ChordId; 3]> {
    let events: Vec<EndpointEvent> = positions
        .iter()
        .map(|&p| d.event_at(p))
        .collect::<Option<_>>()?;
    'side: for side in variant.sides() {
        let mut roles: [Option<ChordId>; 3] = [None; 3];
        for (ev, &(role, kind)) in events.iter().zip(side.iter()) {
            if ev.kind != kind {
                continue 'side;
            }
            match roles[role] {
                Some(c) if c != ev.chord => continue 'side,
                Some(_) => {}
                None => {
                    if roles.contains(&Some(ev.chord)) {
                        continue 'side;
                    }
                    roles[role] = Some(ev.chord);
                }
            }
        }
        let roles = roles.map(|r| r.expect("every role is filled"));
        let signs_ok = roles
            .iter()
            .zip(variant.signs())
            .all(|(&c, s)| d.chord(c).ok().and_then(|v| v.sign()) == Some(s));
        if signs_ok {
            return Some(roles);
        }
    }
    None
}

fn pair_positions(starts: [usize; 3]) -> [usize; 6] {
    [
        starts[0],
        starts[0] + 1,
        starts[1],
        starts[1] + 1,
        starts[2],
        starts[2] + 1,
    ]
}

/// Every R3 site of either variant, on either side of the move.
pub fn detect_r3(d: &GaussDiagram) -> Vec<R3Config> {
    let n = d.events().len();
    let other = |pos: usize| {
        let c = d
            .chord(d.event_at(pos).expect("in range").chord)
            .expect("valid chord");
        if c.over == pos {
            c.under
        } else {
            c.over
        }
    };
    let mut triples = BTreeSet::new();
    for x in 1..n {
        let u = d.event_at(x).expect("in range").chord;
        let v = d.event_at(x + 1).expect("in range").chord;
        if u == v {
            continue;
        }
        for end in [other(x), other(x + 1)] {
            for nb in [end.wrapping_sub(1), end + 1] {
                if let Some(w) = d.event_at(nb) {
                    if w.chord != u && w.chord != v {
                        let mut t = [u, v, w.chord];
                        t.sort();
                        triples.insert(t);
                    }
                }
            }
        }
    }
    let mut found = BTreeSet::new();
    for t in triples {
        let mut pos: Vec<usize> = t
            .iter()
            .flat_map(|&c| {
                let v = d.chord(c).expect("valid chord");
                [v.over, v.under]
            })
            .collect();
        pos.sort_unstable();
        if pos[1] != pos[0] + 1 || pos[3] != pos[2] + 1 || pos[5] != pos[4] + 1 {
            continue;
        }
        let positions: [usize; 6] = pos.try_into().expect("six endpoints");
        let starts = [positions[0], positions[2], positions[4]];
        for variant in R3Variant::ALL {
            if let Some(roles) = match_variant(d, &positions, variant) {
                found.insert(R3Config {
                    variant,
                    starts,
                    roles,
                });
            }
        }
    }
    found.into_iter().collect()
}

/// Swaps the two events inside each pair of `config`.
pub fn r3_apply(d: &GaussDiagram, config: &R3Config) -> Result<GaussDiagram> {
    let s = config.starts;
    if s[0] == 0 || s[1] < s[0] + 2 || s[2] < s[1] + 2 || s[2] + 1 > d.events().len() {
        return Err(Error::StaleConfig);
    }
    let positions = pair_positions(s);
    if match_variant(d, &positions, config.variant) != Some(config.roles) {
        return Err(Error::StaleConfig);
    }
    let mut events = d.events().to_vec();
    for &p in &s {
        events.swap(p - 1, p);
    }
    GaussDiagram::from_events(events, d.crossings().to_vec())
}

/// Inserts three new chords `k+1, k+2, k+3` forming the crossing side of an
/// R3 site, one endpoint pair at each of the sorted `gaps`.
pub fn plant_r3(
    d: &GaussDiagram,
    gaps: [usize; 3],
    variant: R3Variant,
) -> Result<(GaussDiagram, R3Config)> {
    for &g in &gaps {
        check_gap(d, g)?;
    }
    if gaps[0] > gaps[1] || gaps[1] > gaps[2] {
        return Err(Error::InvalidMove(format!("gaps {gaps:?} not sorted")));
    }
    let k = d.chord_count();
    let template = variant.crossing_side();
    let runs: Vec<(usize, Vec<EndpointEvent>)> = (0..3)
        .map(|i| {
            let run = template[2 * i..2 * i + 2]
                .iter()
                .map(|&(role, kind)| EndpointEvent::new(k + 1 + role, kind))
                .collect();
            (gaps[i], run)
        })
        .collect();
    let crossings = variant.signs().map(Crossing::Classical);
    let out = insert_events(d, &runs, &crossings)?;
    let starts = [gaps[0] + 1, gaps[1] + 3, gaps[2] + 5];
    let roles = [ChordId(k + 1), ChordId(k + 2), ChordId(k + 3)];
    let config = R3Config {
        variant,
        starts,
        roles,
    };
    debug_assert_eq!(
        match_variant(&out, &pair_positions(starts), variant),
        Some(roles)
    );
    Ok((out, config))
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// One uniformly chosen applicable move: a kind among those with an
/// instance, then an instance of that kind.
pub fn random_move<R: Rng>(d: &GaussDiagram, rng: &mut R, allowed: &[MoveKind]) -> Option<Move> {
    let gaps = 2 * d.chord_count();
    let kinds: BTreeSet<MoveKind> = allowed.iter().copied().collect();
    let mut options: Vec<Vec<Move>> = Vec::new();
    for kind in kinds {
        let moves: Vec<Move> = match kind {
            MoveKind::R1Insert => vec![Move::R1Insert {
                gap: rng.gen_range(0..=gaps),
                direction: if rng.gen_bool(0.5) {
                    Direction::Forward
                } else {
                    Direction::Backward
                },
                sign: random_sign(rng),
                label: None,
            }],
            MoveKind::R2Insert => {
                let a = rng.gen_range(0..=gaps);
                let b = rng.gen_range(0..=gaps);
                vec![Move::R2Insert {
                    gap_a: a.min(b),
                    gap_b: a.max(b),
                    signs: if rng.gen_bool(0.5) {
                        SignAssignment::FirstPositive
                    } else {
                        SignAssignment::FirstNegative
                    },
                    labels: None,
                }]
            }
            MoveKind::R1Delete => r1_candidates(d)
                .into_iter()
                .map(|chord| Move::R1Delete { chord })
                .collect(),
            MoveKind::R2Delete => r2_candidates(d)
                .into_iter()
                .map(|(first, second)| Move::R2Delete { first, second })
                .collect(),
            MoveKind::R3 => detect_r3(d)
                .into_iter()
                .map(|config| Move::R3 { config })
                .collect(),
        };
        if !moves.is_empty() {
            options.push(moves);
        }
    }
    let group = options.choose(rng)?;
    group.choose(rng).cloned()
}

pub fn random_walk(
    d: &GaussDiagram,
    steps: usize,
    seed: u64,
    allowed: &[MoveKind],
) -> GaussDiagram {
    random_walk_traced(d, steps, seed, allowed).0
}

/// Like [`random_walk`], also returning the moves applied.
pub fn random_walk_traced(
    d: &GaussDiagram,
    steps: usize,
    seed: u64,
    allowed: &[MoveKind],
) -> (GaussDiagram, Vec<Move>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let Some(mv) = random_move(&cur, &mut rng, allowed) else {
            break;
        };
        cur = mv.apply(&cur).expect("generated moves apply");
        trace.push(mv);
    }
    (cur, trace)
}

pub fn replay(d: &GaussDiagram, moves: &[Move]) -> Result<GaussDiagram> {
    moves.iter().try_fold(d.clone(), |cur, mv| mv.apply(&cur))
}

/// Inverse moves of a trace starting at `d`, in the order they must be applied.
pub fn inverse_trace(d: &GaussDiagram, moves: &[Move]) -> Result<Vec<Move>> {
    let mut cur = d.clone();
    let mut inv = Vec::with_capacity(moves.len());
    for mv in moves {
        inv.push(mv.inverse(&cur)?);
        cur = mv.apply(&cur)?;
    }
    inv.reverse();
    Ok(inv)
}

pub fn trace_to_json_lines(moves: &[Move]) -> String {
    let mut out = String::new();
    for mv in moves {
        out.push_str(&serde_json::to_string(mv).expect("moves serialize"));
        out.push('\n');
    }
    out
}

pub fn trace_from_json_lines(text: &str) -> Result<Vec<Move>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect()
}
