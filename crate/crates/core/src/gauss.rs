//! Gauss diagrams of knotoids.
//!
//! A diagram is the sequence of chord endpoints met while walking the arc from
//! the tail to the head. Positions are dense ranks `1..=2k`; nothing about the
//! planar picture survives except this order. Each chord runs from its `Over`
//! endpoint to its `Under` endpoint and carries the sign of the crossing, or a
//! singular marker.
//!
//! Gauss codes are whitespace-separated tokens such as `O1+ O2- U1 U2`: the
//! sign is mandatory on the over token and optional (but must agree) on the
//! under token; singular chords use `*` on both tokens.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// Chord label, `1..=k` in a valid diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChordId(pub usize);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// What sits at a chord: an ordinary signed crossing or a singular (double) point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Crossing {
    Classical(Sign),
    Singular,
}

impl Crossing {
    pub fn sign(self) -> Option<Sign> {
        match self {
            Crossing::Classical(s) => Some(s),
            Crossing::Singular => None,
        }
    }

    fn tag(self) -> char {
        match self {
            Crossing::Classical(Sign::Positive) => '+',
            Crossing::Classical(Sign::Negative) => '-',
            Crossing::Singular => '*',
        }
    }

    fn flipped(self) -> Crossing {
        match self {
            Crossing::Classical(s) => Crossing::Classical(s.flip()),
            Crossing::Singular => Crossing::Singular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointKind {
    Over,
    Under,
}

impl EndpointKind {
    pub fn flip(self) -> EndpointKind {
        match self {
            EndpointKind::Over => EndpointKind::Under,
            EndpointKind::Under => EndpointKind::Over,
        }
    }

    fn letter(self) -> char {
        match self {
            EndpointKind::Over => 'O',
            EndpointKind::Under => 'U',
        }
    }
}

impl fmt::Display for EndpointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndpointKind::Over => "over",
            EndpointKind::Under => "under",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EndpointEvent {
    pub chord: ChordId,
    pub kind: EndpointKind,
}

impl EndpointEvent {
    pub fn new(chord: usize, kind: EndpointKind) -> Self {
        EndpointEvent {
            chord: ChordId(chord),
            kind,
        }
    }
}

/// Read-only view of one chord. Positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChordView {
    pub id: ChordId,
    pub over: usize,
    pub under: usize,
    pub crossing: Crossing,
}

impl ChordView {
    pub fn sign(&self) -> Option<Sign> {
        self.crossing.sign()
    }

    pub fn is_singular(&self) -> bool {
        self.crossing == Crossing::Singular
    }

    /// `(min, max)` of the two endpoint positions.
    pub fn span(&self) -> (usize, usize) {
        (self.over.min(self.under), self.over.max(self.under))
    }

    /// True when `pos` lies strictly between the two endpoints.
    pub fn encloses(&self, pos: usize) -> bool {
        let (lo, hi) = self.span();
        lo < pos && pos < hi
    }

    /// True when the chord points back toward the tail (over after under).
    pub fn points_backward(&self) -> bool {
        self.over > self.under
    }

    /// Two chords cross when exactly one endpoint of one lies inside the other.
    pub fn crosses(&self, other: &ChordView) -> bool {
        self.id != other.id && self.encloses(other.over) != self.encloses(other.under)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    events: Vec<EndpointEvent>,
    crossings: Vec<Crossing>,
    chords: Vec<ChordView>,
}

impl Default for GaussDiagram {
    fn default() -> Self {
        Self::empty()
    }
}

impl GaussDiagram {
    pub fn empty() -> Self {
        GaussDiagram {
            events: Vec::new(),
            crossings: Vec::new(),
            chords: Vec::new(),
        }
    }

    /// Builds a diagram from its endpoint sequence and per-chord crossing data
    /// (`crossings[i]` belongs to chord `i + 1`).
    pub fn from_events(events: Vec<EndpointEvent>, crossings: Vec<Crossing>) -> Result<Self> {
        let k = crossings.len();
        if events.len() != 2 * k {
            return Err(Error::InvalidMove(format!(
                "{} endpoints for {} chords",
                events.len(),
                k
            )));
        }
        let mut over = vec![None; k];
        let mut under = vec![None; k];
        for (i, ev) in events.iter().enumerate() {
            let id = ev.chord.0;
            if id == 0 || id > k {
                return Err(ParseError::IdOutOfRange { id, count: k }.into());
            }
            let slot = match ev.kind {
                EndpointKind::Over => &mut over[id - 1],
                EndpointKind::Under => &mut under[id - 1],
            };
            if slot.is_some() {
                return Err(ParseError::DuplicateEndpoint {
                    index: i + 1,
                    token: format!("{}{}", ev.kind.letter(), id),
                    id,
                    kind: ev.kind,
                }
                .into());
            }
            *slot = Some(i + 1);
        }
        let chords = (0..k)
            .map(|i| ChordView {
                id: ChordId(i + 1),
                over: over[i].expect("every chord has one over endpoint"),
                under: under[i].expect("every chord has one under endpoint"),
                crossing: crossings[i],
            })
            .collect();
        Ok(GaussDiagram {
            events,
            crossings,
            chords,
        })
    }

    /// Number of chords `k`.
    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn events(&self) -> &[EndpointEvent] {
        &self.events
    }

    pub fn chords(&self) -> &[ChordView] {
        &self.chords
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn chord(&self, id: ChordId) -> Result<&ChordView> {
        id.0.checked_sub(1)
            .and_then(|i| self.chords.get(i))
            .ok_or(Error::UnknownChord(id))
    }

    /// Event at a 1-based position.
    pub fn event_at(&self, pos: usize) -> Option<EndpointEvent> {
        pos.checked_sub(1).and_then(|i| self.events.get(i)).copied()
    }

    pub fn singular_chords(&self) -> Vec<ChordId> {
        self.chords
            .iter()
            .filter(|c| c.is_singular())
            .map(|c| c.id)
            .collect()
    }

    /// Reversed orientation: the endpoint order is read from head to tail while
    /// every chord keeps its sign and its over/under ends.
    pub fn reverse(&self) -> GaussDiagram {
        let events = self.events.iter().rev().copied().collect();
        Self::from_events(events, self.crossings.clone()).expect("reversal keeps validity")
    }

    /// Mirror image: every chord swaps its over/under ends and its sign.
    pub fn mirror(&self) -> GaussDiagram {
        let events = self
            .events
            .iter()
            .map(|e| EndpointEvent {
                chord: e.chord,
                kind: e.kind.flip(),
            })
            .collect();
        let crossings = self.crossings.iter().map(|c| c.flipped()).collect();
        Self::from_events(events, crossings).expect("mirror keeps validity")
    }

    /// Changes the crossing at chord `id`: direction reversed, sign negated.
    pub fn crossing_change(&self, id: ChordId) -> Result<GaussDiagram> {
        let chord = self.chord(id)?;
        if chord.is_singular() {
            return Err(Error::SingularChord(id));
        }
        let events = self
            .events
            .iter()
            .map(|e| {
                if e.chord == id {
                    EndpointEvent {
                        chord: e.chord,
                        kind: e.kind.flip(),
                    }
                } else {
                    *e
                }
            })
            .collect();
        let mut crossings = self.crossings.clone();
        crossings[id.0 - 1] = crossings[id.0 - 1].flipped();
        Self::from_events(events, crossings)
    }

    /// Same diagram with the crossing data of `id` replaced.
    pub fn with_crossing(&self, id: ChordId, crossing: Crossing) -> Result<GaussDiagram> {
        self.chord(id)?;
        let mut crossings = self.crossings.clone();
        crossings[id.0 - 1] = crossing;
        Self::from_events(self.events.clone(), crossings)
    }

    /// Relabels chords `1..=k` in order of first appearance along the arc.
    pub fn canonical_labels(&self) -> GaussDiagram {
        let mut map = vec![0usize; self.chord_count() + 1];
        let mut next = 0;
        for e in &self.events {
            if map[e.chord.0] == 0 {
                next += 1;
                map[e.chord.0] = next;
            }
        }
        self.relabel(&map)
    }

    /// Uniformly random pairing of `2k` positions into chords with uniform
    /// directions and signs.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, k: usize) -> GaussDiagram {
        let mut slots: Vec<usize> = (0..2 * k).collect();
        slots.shuffle(rng);
        let mut events = vec![EndpointEvent::new(0, EndpointKind::Over); 2 * k];
        let mut crossings = Vec::with_capacity(k);
        for (i, pair) in slots.chunks_exact(2).enumerate() {
            let (o, u) = if rng.gen_bool(0.5) {
                (pair[0], pair[1])
            } else {
                (pair[1], pair[0])
            };
            events[o] = EndpointEvent::new(i + 1, EndpointKind::Over);
            events[u] = EndpointEvent::new(i + 1, EndpointKind::Under);
            let sign = if rng.gen_bool(0.5) {
                Sign::Positive
            } else {
                Sign::Negative
            };
            crossings.push(Crossing::Classical(sign));
        }
        Self::from_events(events, crossings).expect("random pairing is valid")
    }

    /// Random diagram whose chords are pairwise nested or disjoint, so no two
    /// chords cross and every degree is zero.
    pub fn random_non_crossing<R: Rng + ?Sized>(rng: &mut R, k: usize) -> GaussDiagram {
        let mut events = Vec::with_capacity(2 * k);
        let mut crossings = Vec::with_capacity(k);
        let mut open: Vec<(usize, EndpointKind)> = Vec::new();
        let mut opened = 0;
        while events.len() < 2 * k {
            let can_open = opened < k;
            if can_open && (open.is_empty() || rng.gen_bool(0.5)) {
                opened += 1;
                let kind = if rng.gen_bool(0.5) {
                    EndpointKind::Over
                } else {
                    EndpointKind::Under
                };
                let sign = if rng.gen_bool(0.5) {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                crossings.push(Crossing::Classical(sign));
                open.push((opened, kind));
                events.push(EndpointEvent::new(opened, kind));
            } else {
                let (id, kind) = open.pop().expect("a chord is open");
                events.push(EndpointEvent::new(id, kind.flip()));
            }
        }
        Self::from_events(events, crossings).expect("nested pairing is valid")
    }

    /// Renames chord `i` to `new_of_old[i]` (index 0 unused); must be a
    /// permutation of `1..=k`.
    pub(crate) fn relabel(&self, new_of_old: &[usize]) -> GaussDiagram {
        let events = self
            .events
            .iter()
            .map(|e| EndpointEvent::new(new_of_old[e.chord.0], e.kind))
            .collect();
        let mut crossings = self.crossings.clone();
        for (old, &new) in new_of_old.iter().enumerate().skip(1) {
            crossings[new - 1] = self.crossings[old - 1];
        }
        Self::from_events(events, crossings).expect("relabelling keeps validity")
    }

    /// Diagram with the given chords removed; surviving chords are renumbered
    /// `1..` in their original relative order.
    pub(crate) fn without_chords(&self, removed: &[ChordId]) -> GaussDiagram {
        let mut map = vec![0usize; self.chord_count() + 1];
        let mut crossings = Vec::new();
        for c in &self.chords {
            if !removed.contains(&c.id) {
                crossings.push(c.crossing);
                map[c.id.0] = crossings.len();
            }
        }
        let events = self
            .events
            .iter()
            .filter(|e| map[e.chord.0] != 0)
            .map(|e| EndpointEvent::new(map[e.chord.0], e.kind))
            .collect();
        Self::from_events(events, crossings).expect("removing whole chords keeps validity")
    }
}

/// Deterministic random diagram for a fixed `(k, seed)`.
pub fn random_diagram(k: usize, seed: u64) -> GaussDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GaussDiagram::random(&mut rng, k)
}

struct TokenInfo {
    index: usize,
    token: String,
    tag: Option<char>,
}

fn parse_token(
    index: usize,
    token: &str,
) -> Result<(EndpointKind, usize, Option<char>), ParseError> {
    let malformed = || ParseError::Malformed {
        index,
        token: token.to_string(),
    };
    let mut chars = token.chars();
    let kind = match chars.next() {
        Some('O') => EndpointKind::Over,
        Some('U') => EndpointKind::Under,
        _ => return Err(malformed()),
    };
    let rest = chars.as_str();
    let digits_end = rest
        .find(|c: char| !c.is_ascii_digit())
        .unwrap_or(rest.len());
    let (digits, tail) = rest.split_at(digits_end);
    let id: usize = digits.parse().map_err(|_| malformed())?;
    if id == 0 {
        return Err(malformed());
    }
    let tag = match tail {
        "" => None,
        "+" => Some('+'),
        "-" => Some('-'),
        "*" => Some('*'),
        _ => return Err(malformed()),
    };
    Ok((kind, id, tag))
}

/// Parses a Gauss code; token order gives positions `1..=2k`.
pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram> {
    let mut events = Vec::new();
    let mut ends: BTreeMap<usize, (Option<TokenInfo>, Option<TokenInfo>)> = BTreeMap::new();
    for (i, token) in text.split_whitespace().enumerate() {
        let index = i + 1;
        let (kind, id, tag) = parse_token(index, token)?;
        let entry = ends.entry(id).or_insert((None, None));
        let slot = match kind {
            EndpointKind::Over => &mut entry.0,
            EndpointKind::Under => &mut entry.1,
        };
        if slot.is_some() {
            return Err(ParseError::DuplicateEndpoint {
                index,
                token: token.to_string(),
                id,
                kind,
            }
            .into());
        }
        *slot = Some(TokenInfo {
            index,
            token: token.to_string(),
            tag,
        });
        events.push(EndpointEvent::new(id, kind));
    }

    let count = ends.len();
    let mut crossings = Vec::with_capacity(count);
    for (&id, (over, under)) in &ends {
        if id > count {
            return Err(ParseError::IdOutOfRange { id, count }.into());
        }
        let over = over.as_ref().ok_or(ParseError::MissingPartner {
            id,
            missing: EndpointKind::Over,
        })?;
        let under = under.as_ref().ok_or(ParseError::MissingPartner {
            id,
            missing: EndpointKind::Under,
        })?;
        let crossing = match over.tag {
            Some('+') => Crossing::Classical(Sign::Positive),
            Some('-') => Crossing::Classical(Sign::Negative),
            Some(_) => Crossing::Singular,
            None => {
                return Err(ParseError::MissingSign {
                    index: over.index,
                    token: over.token.clone(),
                    id,
                }
                .into())
            }
        };
        let under_ok = match under.tag {
            None => crossing != Crossing::Singular,
            Some(t) => t == crossing.tag(),
        };
        if !under_ok {
            return Err(ParseError::SignMismatch {
                index: under.index,
                token: under.token.clone(),
                id,
            }
            .into());
        }
        crossings.push(crossing);
    }
    GaussDiagram::from_events(events, crossings)
}

impl FromStr for GaussDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_gauss_code(s)
    }
}

/// Canonical Gauss code with the tag repeated on both tokens.
impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let tag = self.crossings[e.chord.0 - 1].tag();
            write!(f, "{}{}{}", e.kind.letter(), e.chord.0, tag)?;
        }
        Ok(())
    }
}

pub fn serialize(d: &GaussDiagram) -> String {
    d.to_string()
}
