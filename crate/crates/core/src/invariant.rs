//! Chord degrees, index functions and the invariant
//! `H(t, y, z) = Σ_{c,n} sgn(c) (t^{Ind_c^n(z)} - 1) y^n`.
//!
//! A chord `e` crosses `c` when exactly one endpoint of `e` lies strictly
//! between the endpoints of `c`. It passes `c` from left to right (`e ∈ r(c)`)
//! exactly when "the over endpoint of `e` lies inside `c`" agrees with "`c`
//! points back toward the tail"; otherwise `e ∈ ℓ(c)`. The degree is
//! `d(c) = Σ_{e∈r(c)} sgn(e) - Σ_{e∈ℓ(c)} sgn(e)`.
//!
//! The value of `H` is stored as an [`Invariant`]: integer coefficients on the
//! formal symbols `t^P y^n` keyed by [`TermKey`], plus the accumulated constants
//! per power of `y`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{ChordId, GaussDiagram};
use crate::zpoly::{reduce_exponent, ReductionPolicy, ZPoly};

/// Chords crossing a given chord, split by direction of passage.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub right: Vec<ChordId>,
    pub left: Vec<ChordId>,
}

/// Per-chord data for a diagram with no singular chords.
pub(crate) struct ChordTable {
    pub signs: Vec<i64>,
    pub right: Vec<Vec<usize>>,
    pub left: Vec<Vec<usize>>,
    pub degrees: Vec<i64>,
}

impl ChordTable {
    pub fn new(d: &GaussDiagram) -> Result<Self> {
        let chords = d.chords();
        let mut signs = Vec::with_capacity(chords.len());
        for c in chords {
            signs.push(c.sign().ok_or(Error::SingularChord(c.id))?.value());
        }
        let mut right = Vec::with_capacity(chords.len());
        let mut left = Vec::with_capacity(chords.len());
        let mut degrees = Vec::with_capacity(chords.len());
        for c in chords {
            let (r, l) = split(d, c.id);
            let deg =
                r.iter().map(|&e| signs[e]).sum::<i64>() - l.iter().map(|&e| signs[e]).sum::<i64>();
            right.push(r);
            left.push(l);
            degrees.push(deg);
        }
        Ok(ChordTable {
            signs,
            right,
            left,
            degrees,
        })
    }

    /// Nonzero `Ind_c^n` for every `n` reached by some crossing chord.
    pub fn index_functions(
        &self,
        c: usize,
        policy: ReductionPolicy,
        include_n0: bool,
    ) -> BTreeMap<u64, ZPoly> {
        let dc = self.degrees[c];
        let modulus = dc.unsigned_abs();
        let mut by_n: BTreeMap<u64, ZPoly> = BTreeMap::new();
        let mut push = |e: usize, exp: i64, coeff: i64| {
            let n = gcd(modulus, self.degrees[e].unsigned_abs());
            if n == 0 && !include_n0 {
                return;
            }
            by_n.entry(n)
                .or_default()
                .add_term(reduce_exponent(exp, modulus, policy), coeff);
        };
        for &e in &self.right[c] {
            push(e, self.degrees[e], self.signs[e]);
        }
        for &e in &self.left[c] {
            push(e, -self.degrees[e], -self.signs[e]);
        }
        by_n.retain(|_, p| !p.is_zero());
        by_n
    }
}

/// 0-based indices of the chords in `r(c)` and `ℓ(c)`.
fn split(d: &GaussDiagram, c: ChordId) -> (Vec<usize>, Vec<usize>) {
    let chords = d.chords();
    let cv = &chords[c.0 - 1];
    let backward = cv.points_backward();
    let mut r = Vec::new();
    let mut l = Vec::new();
    for (i, e) in chords.iter().enumerate() {
        if cv.crosses(e) {
            if cv.encloses(e.over) == backward {
                r.push(i);
            } else {
                l.push(i);
            }
        }
    }
    (r, l)
}

fn ids(indices: &[usize]) -> Vec<ChordId> {
    indices.iter().map(|&i| ChordId(i + 1)).collect()
}

pub fn crossing_partition(d: &GaussDiagram, c: ChordId) -> Result<Partition> {
    d.chord(c)?;
    let (r, l) = split(d, c);
    Ok(Partition {
        right: ids(&r),
        left: ids(&l),
    })
}

/// Degree of one chord. Chords crossing `c` must carry signs; `c` itself may
/// be singular.
pub fn degree(d: &GaussDiagram, c: ChordId) -> Result<i64> {
    d.chord(c)?;
    let (r, l) = split(d, c);
    let sign = |i: usize| {
        let e = &d.chords()[i];
        e.sign()
            .map(|s| s.value())
            .ok_or(Error::SingularChord(e.id))
    };
    let mut total = 0;
    for i in r {
        total += sign(i)?;
    }
    for i in l {
        total -= sign(i)?;
    }
    Ok(total)
}

/// Degrees of all chords, in id order.
pub fn degrees(d: &GaussDiagram) -> Result<Vec<i64>> {
    Ok(ChordTable::new(d)?.degrees)
}

/// `r^n(c)` and `ℓ^n(c)`: crossing chords `e` with `gcd(d(c), d(e)) = n`.
pub fn n_partition(d: &GaussDiagram, c: ChordId, n: u64) -> Result<Partition> {
    d.chord(c)?;
    let table = ChordTable::new(d)?;
    let i = c.0 - 1;
    let dc = table.degrees[i].unsigned_abs();
    let keep = |v: &Vec<usize>| -> Vec<ChordId> {
        v.iter()
            .filter(|&&e| gcd(dc, table.degrees[e].unsigned_abs()) == n)
            .map(|&e| ChordId(e + 1))
            .collect()
    };
    Ok(Partition {
        right: keep(&table.right[i]),
        left: keep(&table.left[i]),
    })
}

/// `Ind_c^n(z)` with exponents reduced modulo `|d(c)|`.
pub fn index_function(
    d: &GaussDiagram,
    c: ChordId,
    n: u64,
    policy: ReductionPolicy,
) -> Result<ZPoly> {
    d.chord(c)?;
    let table = ChordTable::new(d)?;
    Ok(table
        .index_functions(c.0 - 1, policy, true)
        .remove(&n)
        .unwrap_or_default())
}

/// All nonzero `Ind_c^n(z)` for one chord, keyed by `n ≥ 1`.
pub fn index_functions(
    d: &GaussDiagram,
    c: ChordId,
    policy: ReductionPolicy,
) -> Result<BTreeMap<u64, ZPoly>> {
    d.chord(c)?;
    let table = ChordTable::new(d)?;
    Ok(table.index_functions(c.0 - 1, policy, false))
}

/// Options for [`compute_h_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HOptions {
    pub policy: ReductionPolicy,
    /// Also sum the `n = 0` stratum, fed by pairs of crossing degree-zero chords.
    pub include_n0: bool,
}

pub fn compute_h(d: &GaussDiagram, policy: ReductionPolicy) -> Result<Invariant> {
    compute_h_with(
        d,
        &HOptions {
            policy,
            include_n0: false,
        },
    )
}

pub fn compute_h_with(d: &GaussDiagram, opts: &HOptions) -> Result<Invariant> {
    let table = ChordTable::new(d)?;
    let mut h = Invariant::zero(opts.policy);
    for c in 0..d.chord_count() {
        let modulus = table.degrees[c].unsigned_abs();
        let sign = table.signs[c];
        for (n, p) in table.index_functions(c, opts.policy, opts.include_n0) {
            h.add_power_term(n, modulus, &p, sign);
        }
    }
    Ok(h)
}

/// `true` proves the diagram has nonzero height; `false` proves nothing.
pub fn nonzero_height_certificate(d: &GaussDiagram, policy: ReductionPolicy) -> Result<bool> {
    Ok(!compute_h(d, policy)?.is_zero())
}

/// Identity of a formal symbol `t^P y^n`. `modulus` is `|d(c)|` of the
/// contributing chord, or 0 when `P` is constant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub n: u64,
    pub modulus: u64,
    pub exponent: ZPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariant {
    policy: ReductionPolicy,
    exp_terms: BTreeMap<TermKey, i64>,
    const_terms: BTreeMap<u64, i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Latex,
    Json,
}

impl Invariant {
    pub fn zero(policy: ReductionPolicy) -> Self {
        Invariant {
            policy,
            exp_terms: BTreeMap::new(),
            const_terms: BTreeMap::new(),
        }
    }

    pub fn policy(&self) -> ReductionPolicy {
        self.policy
    }

    pub fn is_zero(&self) -> bool {
        self.exp_terms.is_empty() && self.const_terms.is_empty()
    }

    pub fn exp_terms(&self) -> &BTreeMap<TermKey, i64> {
        &self.exp_terms
    }

    pub fn const_terms(&self) -> &BTreeMap<u64, i64> {
        &self.const_terms
    }

    pub fn exp_coeff(&self, key: &TermKey) -> i64 {
        self.exp_terms.get(key).copied().unwrap_or(0)
    }

    pub fn const_coeff(&self, n: u64) -> i64 {
        self.const_terms.get(&n).copied().unwrap_or(0)
    }

    /// Canonical key for `t^P y^n` built from a chord of degree `±modulus`.
    pub fn key(&self, n: u64, modulus: u64, exponent: &ZPoly) -> TermKey {
        let exponent = exponent.reduce(modulus, self.policy);
        let modulus = if exponent.as_constant().is_some() {
            0
        } else {
            modulus
        };
        TermKey {
            n,
            modulus,
            exponent,
        }
    }

    /// Adds `coeff · t^P y^n`. `t^0` folds into the constants.
    pub fn add_exp(&mut self, n: u64, modulus: u64, exponent: &ZPoly, coeff: i64) {
        let key = self.key(n, modulus, exponent);
        if key.exponent.is_zero() {
            self.add_const(n, coeff);
            return;
        }
        bump(&mut self.exp_terms, key, coeff);
    }

    pub fn add_const(&mut self, n: u64, coeff: i64) {
        bump(&mut self.const_terms, n, coeff);
    }

    /// Adds `coeff · (t^P - 1) y^n`.
    pub fn add_power_term(&mut self, n: u64, modulus: u64, exponent: &ZPoly, coeff: i64) {
        self.add_exp(n, modulus, exponent, coeff);
        self.add_const(n, -coeff);
    }

    fn check_policy(&self, other: &Invariant) -> Result<()> {
        if self.policy == other.policy {
            Ok(())
        } else {
            Err(Error::PolicyMismatch)
        }
    }

    pub fn equals(&self, other: &Invariant) -> Result<bool> {
        self.check_policy(other)?;
        Ok(self.exp_terms == other.exp_terms && self.const_terms == other.const_terms)
    }

    pub fn add(&self, other: &Invariant) -> Result<Invariant> {
        self.check_policy(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.exp_terms {
            bump(&mut out.exp_terms, k.clone(), c);
        }
        for (&n, &c) in &other.const_terms {
            out.add_const(n, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Invariant) -> Result<Invariant> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Invariant {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Invariant {
        let mut out = Invariant::zero(self.policy);
        for (key, &c) in &self.exp_terms {
            bump(&mut out.exp_terms, key.clone(), c * k);
        }
        for (&n, &c) in &self.const_terms {
            out.add_const(n, c * k);
        }
        out
    }

    fn map_exponents(&self, f: impl Fn(&ZPoly) -> ZPoly) -> Invariant {
        let mut out = Invariant::zero(self.policy);
        for (key, &c) in &self.exp_terms {
            out.add_exp(key.n, key.modulus, &f(&key.exponent), c);
        }
        out.const_terms = self.const_terms.clone();
        out
    }

    /// `t -> t^-1`.
    pub fn subst_t_inverse(&self) -> Invariant {
        self.map_exponents(|p| -p)
    }

    /// `z -> z^-1`.
    pub fn subst_z_inverse(&self) -> Invariant {
        self.map_exponents(|p| p.subst_z_inverse())
    }

    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Text => self.render_with(&TEXT),
            RenderFormat::Latex => self.render_with(&LATEX),
            RenderFormat::Json => self.to_json(),
        }
    }

    fn strata(&self) -> BTreeMap<u64, Stratum<'_>> {
        let mut strata: BTreeMap<u64, Stratum<'_>> = BTreeMap::new();
        for (key, &c) in &self.exp_terms {
            strata.entry(key.n).or_default().0.push((key, c));
        }
        for (&n, &c) in &self.const_terms {
            strata.entry(n).or_default().1 = c;
        }
        strata
    }

    fn render_with(&self, style: &Style) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut groups = Vec::new();
        for (n, (terms, constant)) in self.strata() {
            let mut inner = String::new();
            let mut first = true;
            let mut push = |coeff: i64, body: Option<String>| {
                let mag = coeff.unsigned_abs();
                inner.push_str(match (first, coeff < 0) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                });
                first = false;
                match body {
                    Some(b) if mag == 1 => inner.push_str(&b),
                    Some(b) => {
                        let _ = write!(inner, "{mag}{}{b}", style.times);
                    }
                    None => {
                        let _ = write!(inner, "{mag}");
                    }
                }
            };
            for (key, c) in terms {
                push(c, Some(style.power(&key.exponent)));
            }
            if constant != 0 {
                push(constant, None);
            }
            groups.push(format!(
                "{}{inner}{}{}",
                style.open,
                style.close,
                style.y_power(n)
            ));
        }
        groups.join(" + ")
    }

    pub fn to_json_value(&self) -> InvariantJson {
        InvariantJson {
            policy: self.policy,
            terms: self
                .exp_terms
                .iter()
                .map(|(k, &c)| TermJson {
                    n: k.n,
                    m: k.modulus,
                    p: k.exponent.terms().collect(),
                    coeff: c,
                })
                .collect(),
            consts: self
                .const_terms
                .iter()
                .map(|(&n, &c)| ConstJson { n, coeff: c })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("invariant JSON is serializable")
    }

    pub fn from_json_value(v: &InvariantJson) -> Result<Invariant> {
        let mut out = Invariant::zero(v.policy);
        for t in &v.terms {
            let p = ZPoly::from_terms(t.p.iter().copied());
            if p.is_zero() {
                return Err(Error::MalformedInvariant(format!(
                    "zero exponent polynomial in stratum n = {}",
                    t.n
                )));
            }
            out.add_exp(t.n, t.m, &p, t.coeff);
        }
        for c in &v.consts {
            out.add_const(c.n, c.coeff);
        }
        Ok(out)
    }

    pub fn from_json(text: &str) -> Result<Invariant> {
        let v: InvariantJson = serde_json::from_str(text)?;
        Self::from_json_value(&v)
    }
}

/// Text rendering, as [`RenderFormat::Text`].
impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderFormat::Text))
    }
}

fn bump<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, coeff: i64) {
    if coeff == 0 {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if *o.get() == 0 {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
    }
}

/// Exponent terms and the constant of one `y^n` coefficient.
type Stratum<'a> = (Vec<(&'a TermKey, i64)>, i64);

struct Style {
    times: &'static str,
    open: &'static str,
    close: &'static str,
    latex: bool,
}

const TEXT: Style = Style {
    times: "*",
    open: "(",
    close: ")",
    latex: false,
};

const LATEX: Style = Style {
    times: "",
    open: "\\left(",
    close: "\\right)",
    latex: true,
};

impl Style {
    fn power(&self, p: &ZPoly) -> String {
        match (p.as_constant(), self.latex) {
            (Some(1), _) => "t".into(),
            (Some(c), false) => format!("t^{c}"),
            (Some(c), true) => format!("t^{{{c}}}"),
            (None, false) => format!("t^({p})"),
            (None, true) => format!("t^{{{}}}", p.to_latex()),
        }
    }

    fn y_power(&self, n: u64) -> String {
        match (n, self.latex) {
            (1, false) => "*y".into(),
            (1, true) => " y".into(),
            (n, false) => format!("*y^{n}"),
            (n, true) => format!(" y^{{{n}}}"),
        }
    }
}

/// Serialized form: `{"policy", "terms": [{"n","m","P","coeff"}], "consts": [{"n","coeff"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantJson {
    pub policy: ReductionPolicy,
    pub terms: Vec<TermJson>,
    pub consts: Vec<ConstJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub n: u64,
    pub m: u64,
    #[serde(rename = "P")]
    pub p: Vec<(i64, i64)>,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstJson {
    pub n: u64,
    pub coeff: i64,
}
