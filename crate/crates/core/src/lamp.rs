//! Lamp-stand model of the lamplighter group `L2 = Z/2 wr Z`.
//!
//! An element is a finite set of lit lamp positions together with the
//! position of the lamplighter (its height). The canonical text form is
//! `{p1,p2,...};h` with positions sorted ascending and no whitespace.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ext::ExtInt;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LampStand {
    lit: BTreeSet<i64>,
    height: i64,
}

impl LampStand {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds an element from lamp positions; repeated positions collapse.
    pub fn new<I: IntoIterator<Item = i64>>(lit: I, height: i64) -> Self {
        LampStand {
            lit: lit.into_iter().collect(),
            height,
        }
    }

    pub fn from_set(lit: BTreeSet<i64>, height: i64) -> Self {
        LampStand { lit, height }
    }

    /// `t^k`.
    pub fn translation(k: i64) -> Self {
        LampStand::new([], k)
    }

    pub fn lit(&self) -> &BTreeSet<i64> {
        &self.lit
    }

    pub fn into_lit(self) -> BTreeSet<i64> {
        self.lit
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn is_lit(&self, pos: i64) -> bool {
        self.lit.contains(&pos)
    }

    pub fn is_identity(&self) -> bool {
        self.lit.is_empty() && self.height == 0
    }

    /// Minimum lit position, `+inf` when nothing is lit.
    pub fn min_lit(&self) -> ExtInt {
        self.lit
            .first()
            .map_or(ExtInt::PosInf, |&p| ExtInt::Finite(p))
    }

    /// Maximum lit position, `-inf` when nothing is lit.
    pub fn max_lit(&self) -> ExtInt {
        self.lit
            .last()
            .map_or(ExtInt::NegInf, |&p| ExtInt::Finite(p))
    }

    pub fn with_height(&self, height: i64) -> Self {
        LampStand {
            lit: self.lit.clone(),
            height,
        }
    }

    pub fn toggled(mut self, pos: i64) -> Self {
        self.toggle(pos);
        self
    }

    pub fn toggle(&mut self, pos: i64) {
        if !self.lit.remove(&pos) {
            self.lit.insert(pos);
        }
    }

    /// Keeps only the lamps at positions satisfying `keep`.
    pub fn retain_lamps(&self, keep: impl Fn(i64) -> bool) -> Self {
        LampStand {
            lit: self.lit.iter().copied().filter(|&p| keep(p)).collect(),
            height: self.height,
        }
    }

    /// Group product: the lamplighter of `other` starts from `self.height()`.
    ///
    /// Panics on `i64` overflow; use [`LampStand::try_mul`] to get an error.
    pub fn mul(&self, other: &LampStand) -> LampStand {
        match self.try_mul(other) {
            Ok(g) => g,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn try_mul(&self, other: &LampStand) -> Result<LampStand> {
        let height = self
            .height
            .checked_add(other.height)
            .ok_or(Error::Overflow("multiplying heights"))?;
        let shifted = shift_set(&other.lit, self.height)?;
        Ok(LampStand {
            lit: symmetric_difference(&self.lit, &shifted),
            height,
        })
    }

    pub fn inverse(&self) -> LampStand {
        let h = self.height;
        LampStand {
            lit: self
                .lit
                .iter()
                .map(|&p| p.checked_sub(h).expect("lamp position overflow"))
                .collect(),
            height: h.checked_neg().expect("height overflow"),
        }
    }

    /// `g^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> LampStand {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = LampStand::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Right multiplication by a single letter.
    pub fn step(&self, gen: Generator) -> LampStand {
        let mut g = self.clone();
        g.step_mut(gen);
        g
    }

    pub fn step_mut(&mut self, gen: Generator) {
        let h = self.height;
        match gen {
            Generator::T => self.height = h + 1,
            Generator::TInv => self.height = h - 1,
            Generator::At => {
                self.toggle(h);
                self.height = h + 1;
            }
            Generator::AtInv => {
                self.height = h - 1;
                self.toggle(h - 1);
            }
            Generator::A => self.toggle(h),
        }
    }

    /// Folds right multiplication over `word`, starting from `self`.
    pub fn apply_word(&self, word: &[Generator]) -> LampStand {
        let mut g = self.clone();
        for &s in word {
            g.step_mut(s);
        }
        g
    }

    /// Canonical text form `{p1,...};h`.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<LampStand> {
        Parser::new(text).lamp_stand()
    }
}

/// Lowest position where the two lamp configurations differ, `+inf` if none.
pub fn diff_min(g1: &LampStand, g2: &LampStand) -> ExtInt {
    diff_min_sets(&g1.lit, &g2.lit)
}

/// Highest position where the two lamp configurations differ, `-inf` if none.
pub fn diff_max(g1: &LampStand, g2: &LampStand) -> ExtInt {
    diff_max_sets(&g1.lit, &g2.lit)
}

pub(crate) fn diff_min_sets(a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> ExtInt {
    a.symmetric_difference(b)
        .min()
        .map_or(ExtInt::PosInf, |&p| ExtInt::Finite(p))
}

pub(crate) fn diff_max_sets(a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> ExtInt {
    a.symmetric_difference(b)
        .max()
        .map_or(ExtInt::NegInf, |&p| ExtInt::Finite(p))
}

pub(crate) fn symmetric_difference(a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> BTreeSet<i64> {
    a.symmetric_difference(b).copied().collect()
}

pub(crate) fn shift_set(set: &BTreeSet<i64>, by: i64) -> Result<BTreeSet<i64>> {
    set.iter()
        .map(|&p| p.checked_add(by).ok_or(Error::Overflow("shifting lamps")))
        .collect()
}

impl fmt::Display for LampStand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.lit.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}};{}", self.height)
    }
}

impl FromStr for LampStand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LampStand::parse(s)
    }
}

impl Serialize for LampStand {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LampStand {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        LampStand::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Letters accepted in words. `A` (the lamp toggle `a`) is a convenience
/// letter; it is not in the generating set `{t, at}` and has word length 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    T,
    TInv,
    At,
    AtInv,
    A,
}

impl Generator {
    /// The four edges of the Cayley graph for `S = {t, at}`.
    pub const EDGES: [Generator; 4] = [
        Generator::T,
        Generator::TInv,
        Generator::At,
        Generator::AtInv,
    ];

    pub fn inverse(self) -> Generator {
        match self {
            Generator::T => Generator::TInv,
            Generator::TInv => Generator::T,
            Generator::At => Generator::AtInv,
            Generator::AtInv => Generator::At,
            Generator::A => Generator::A,
        }
    }

    /// Length with respect to `S = {t, at}`.
    pub fn length(self) -> usize {
        match self {
            Generator::A => 2,
            _ => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Generator::T => "t",
            Generator::TInv => "t^-1",
            Generator::At => "at",
            Generator::AtInv => "(at)^-1",
            Generator::A => "a",
        }
    }

    pub fn as_element(self) -> LampStand {
        LampStand::identity().step(self)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(Generator::T),
            "t^-1" | "t⁻¹" | "T" => Ok(Generator::TInv),
            "at" => Ok(Generator::At),
            "(at)^-1" | "(at)⁻¹" | "t^-1a" | "t⁻¹a" => Ok(Generator::AtInv),
            "a" => Ok(Generator::A),
            _ => Err(Error::parse(0, format!("unknown generator `{s}`"))),
        }
    }
}

/// Parses a whitespace-separated word such as `t at (at)^-1 t^-1`.
pub fn parse_word(text: &str) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for token in text.split_whitespace() {
        let pos = offset + text[offset..].find(token).unwrap_or(0);
        offset = pos + token.len();
        let g = token
            .parse::<Generator>()
            .map_err(|_| Error::parse(pos, format!("unknown generator `{token}`")))?;
        out.push(g);
    }
    Ok(out)
}

pub fn format_word(word: &[Generator]) -> String {
    word.iter()
        .map(|g| g.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Word length with respect to `S = {t, at}`.
pub fn word_length(word: &[Generator]) -> usize {
    word.iter().map(|g| g.length()).sum()
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(Error::parse(
                self.pos,
                format!("expected `{}`, found `{}`", c as char, x as char),
            )),
            None => Err(Error::parse(
                self.pos,
                format!("expected `{}`, found end of input", c as char),
            )),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let s = &self.text[start..self.pos];
        s.parse::<i64>()
            .map_err(|e| Error::parse(start, format!("bad integer {s:?}: {e}")))
    }

    fn lamp_stand(mut self) -> Result<LampStand> {
        self.expect(b'{')?;
        let mut lit = BTreeSet::new();
        self.skip_ws();
        if self.peek() == Some(b'}') {
            self.pos += 1;
        } else {
            loop {
                let at = self.pos;
                let p = self.integer()?;
                if !lit.insert(p) {
                    return Err(Error::parse(at, format!("duplicate lamp position {p}")));
                }
                self.skip_ws();
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b'}') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(Error::parse(self.pos, "expected `,` or `}`")),
                }
            }
        }
        self.expect(b';')?;
        let height = self.integer()?;
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(Error::parse(self.pos, "trailing characters"));
        }
        Ok(LampStand { lit, height })
    }
}
