//! Integer Laurent polynomials in one variable `z`, and the exponent
//! reduction used by the index functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Sparse Laurent polynomial: exponent -> nonzero coefficient, ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZPoly {
    terms: BTreeMap<i64, i64>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = ZPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Collects `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = ZPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&0).copied(),
            _ => None,
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn scale(&self, c: i64) -> ZPoly {
        ZPoly::from_terms(self.terms().map(|(e, k)| (e, k * c)))
    }

    /// `P(z) -> P(z^-1)`.
    pub fn subst_z_inverse(&self) -> ZPoly {
        ZPoly::from_terms(self.terms().map(|(e, k)| (-e, k)))
    }

    /// Every exponent reduced with [`reduce_exponent`], like terms merged.
    pub fn reduce(&self, modulus: u64, policy: ReductionPolicy) -> ZPoly {
        if modulus == 0 {
            return self.clone();
        }
        ZPoly::from_terms(
            self.terms()
                .map(|(e, k)| (reduce_exponent(e, modulus, policy), k)),
        )
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;

    fn add(self, rhs: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;

    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;

    fn neg(self) -> ZPoly {
        self.scale(-1)
    }
}

/// Text form: ascending exponents, `c*z^e`, with `z^1` written `z` and
/// `z^0` dropped, e.g. `-z^-1 + 2`.
impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (e, 1) => write_power(f, e)?,
                (e, m) => {
                    write!(f, "{m}*")?;
                    write_power(f, e)?;
                }
            }
        }
        Ok(())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    if e == 1 {
        f.write_str("z")
    } else {
        write!(f, "z^{e}")
    }
}

impl ZPoly {
    /// LaTeX form, e.g. `-z^{-1} + 2`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            out.push_str(match (i, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if e == 0 {
                out.push_str(&mag.to_string());
                continue;
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            if e == 1 {
                out.push('z');
            } else {
                out.push_str(&format!("z^{{{e}}}"));
            }
        }
        out
    }
}

/// Which residue represents `k mod m` in the index functions.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum ReductionPolicy {
    /// Least non-negative residue `0..m`; depends only on the residue class.
    #[default]
    Quotient,
    /// Least absolute value; the tie at `m/2` keeps the sign of `k`.
    Literal,
}

impl ReductionPolicy {
    pub const ALL: [ReductionPolicy; 2] = [ReductionPolicy::Quotient, ReductionPolicy::Literal];

    pub fn name(self) -> &'static str {
        match self {
            ReductionPolicy::Quotient => "quotient",
            ReductionPolicy::Literal => "literal",
        }
    }
}

impl fmt::Display for ReductionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quotient" => Ok(ReductionPolicy::Quotient),
            "literal" => Ok(ReductionPolicy::Literal),
            other => Err(format!("unknown reduction policy `{other}`")),
        }
    }
}

/// Reduces exponent `k` modulo `modulus`; a zero modulus leaves `k` alone.
pub fn reduce_exponent(k: i64, modulus: u64, policy: ReductionPolicy) -> i64 {
    if modulus == 0 {
        return k;
    }
    let m = modulus as i64;
    let r = k.rem_euclid(m);
    match policy {
        ReductionPolicy::Quotient => r,
        ReductionPolicy::Literal => {
            if 2 * r > m || (2 * r == m && k < 0) {
                r - m
            } else {
                r
            }
        }
    }
}

pub fn reduce_poly(p: &ZPoly, modulus: u64, policy: ReductionPolicy) -> ZPoly {
    p.reduce(modulus, policy)
}
