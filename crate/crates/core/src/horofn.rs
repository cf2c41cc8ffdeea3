//! Boundary points of `L2` and exact evaluators for every horofunction family.
//!
//! All horofunctions are normalized to vanish at the identity. Besides the
//! images of group elements there are five kinds of boundary point:
//!
//! * the spine `s^l(g) = |l| - |l - h(g)|`, one for each integer height `l`;
//! * positive and negative ribs, parametrized by a lamp stand `f` whose lamps
//!   lie strictly below (positive) or at and above (negative) its height;
//! * Busemann functions of geodesic rays whose lamplighter runs off to
//!   `+inf` or `-inf`, parametrized by the final (finite) lamp configuration;
//! * the height function `H` and its negation.
//!
//! Rays are restricted to finitely many lit lamps.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ext::ExtInt;
use crate::lamp::{self, diff_max_sets, diff_min_sets, word_length, Generator, LampStand};
use crate::metric::dist;
use crate::{Error, Result};

/// Which end of `Z` the lamplighter escapes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Plus => 1,
            Direction::Minus => -1,
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Plus => '+',
            Direction::Minus => '-',
        }
    }
}

/// Infinite lamp stand of a geodesic ray from the identity: a finite set of
/// lit lamps with the lamplighter at `+inf` or `-inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryRay {
    direction: Direction,
    lit: BTreeSet<i64>,
}

impl BoundaryRay {
    pub fn new<I: IntoIterator<Item = i64>>(direction: Direction, lit: I) -> Self {
        BoundaryRay {
            direction,
            lit: lit.into_iter().collect(),
        }
    }

    pub fn plus<I: IntoIterator<Item = i64>>(lit: I) -> Self {
        Self::new(Direction::Plus, lit)
    }

    pub fn minus<I: IntoIterator<Item = i64>>(lit: I) -> Self {
        Self::new(Direction::Minus, lit)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn lit(&self) -> &BTreeSet<i64> {
        &self.lit
    }

    pub fn min_lit(&self) -> ExtInt {
        self.lit
            .first()
            .map_or(ExtInt::PosInf, |&p| ExtInt::Finite(p))
    }

    pub fn max_lit(&self) -> ExtInt {
        self.lit
            .last()
            .map_or(ExtInt::NegInf, |&p| ExtInt::Finite(p))
    }

    pub fn diff_min(&self, g: &LampStand) -> ExtInt {
        diff_min_sets(&self.lit, g.lit())
    }

    pub fn diff_max(&self, g: &LampStand) -> ExtInt {
        diff_max_sets(&self.lit, g.lit())
    }

    /// The `i`-th letter of the canonical geodesic ray with this lamp stand:
    /// walk to the far extreme away from the final direction, then march off
    /// toggling lamps on the way.
    pub fn letter(&self, i: usize) -> Generator {
        let i = i as i64;
        match self.direction {
            Direction::Plus => {
                let a = ExtInt::min_of([self.min_lit(), 0.into()]).expect_finite();
                if i < -a {
                    Generator::TInv
                } else if self.lit.contains(&(i + 2 * a)) {
                    Generator::At
                } else {
                    Generator::T
                }
            }
            Direction::Minus => {
                let b = ExtInt::max_of([self.max_lit().succ(), 0.into()]).expect_finite();
                if i < b {
                    Generator::T
                } else if self.lit.contains(&(2 * b - i - 1)) {
                    Generator::AtInv
                } else {
                    Generator::TInv
                }
            }
        }
    }

    /// `gamma(n)`: the point at distance `n` along the canonical ray.
    pub fn point(&self, n: usize) -> LampStand {
        let mut g = LampStand::identity();
        for i in 0..n {
            g.step_mut(self.letter(i));
        }
        g
    }

    /// Positions are shifted by `by` and `toggles` are applied on top; this is
    /// the lamp stand of `g * gamma` for `toggles = lit(g)`, `by = h(g)`.
    pub(crate) fn translated(&self, toggles: &BTreeSet<i64>, by: i64) -> Result<BoundaryRay> {
        let shifted = lamp::shift_set(&self.lit, by)?;
        Ok(BoundaryRay {
            direction: self.direction,
            lit: lamp::symmetric_difference(toggles, &shifted),
        })
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<i64>) -> fmt::Result {
    f.write_str("{")?;
    for (i, p) in set.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str("}")
}

impl fmt::Display for BoundaryRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.direction.symbol())?;
        fmt_set(f, &self.lit)
    }
}

/// A rib payload. Construction enforces the side constraint: for a positive
/// rib every lamp lies below the height, for a negative rib every lamp lies
/// at or above it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rib {
    direction: Direction,
    f: LampStand,
}

impl Rib {
    pub fn new(direction: Direction, f: LampStand) -> Result<Rib> {
        let l = f.height();
        let ok = match direction {
            Direction::Plus => f.max_lit() < l,
            Direction::Minus => f.min_lit() >= l,
        };
        if !ok {
            return Err(Error::InvalidRib {
                payload: f.to_string(),
                reason: match direction {
                    Direction::Plus => "positive rib needs every lamp below the height",
                    Direction::Minus => "negative rib needs every lamp at or above the height",
                },
            });
        }
        Ok(Rib { direction, f })
    }

    /// Clears the lamps that do not affect the rib (at or above the height
    /// for positive ribs, below it for negative ribs).
    pub fn normalized(direction: Direction, f: &LampStand) -> Rib {
        let l = f.height();
        let f = match direction {
            Direction::Plus => f.retain_lamps(|p| p < l),
            Direction::Minus => f.retain_lamps(|p| p >= l),
        };
        Rib { direction, f }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn payload(&self) -> &LampStand {
        &self.f
    }

    pub fn height(&self) -> i64 {
        self.f.height()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    Point,
    Spine,
    RibPlus,
    RibMinus,
    BusemannPlus,
    BusemannMinus,
    HeightPlus,
    HeightMinus,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Horofunction {
    /// `g -> d(g0, g) - d(g0, id)`, the image of `g0`.
    Point(LampStand),
    Spine(i64),
    Rib(Rib),
    Busemann(BoundaryRay),
    /// `H` for `Plus`, `-H` for `Minus`.
    Height(Direction),
}

fn spine_value(l: i64, h: i64) -> i64 {
    l.abs() - (l - h).abs()
}

impl Horofunction {
    pub fn spine(l: i64) -> Self {
        Horofunction::Spine(l)
    }

    pub fn rib_plus(f: LampStand) -> Result<Self> {
        Rib::new(Direction::Plus, f).map(Horofunction::Rib)
    }

    pub fn rib_minus(f: LampStand) -> Result<Self> {
        Rib::new(Direction::Minus, f).map(Horofunction::Rib)
    }

    pub fn busemann(ray: BoundaryRay) -> Self {
        Horofunction::Busemann(ray)
    }

    pub fn height_plus() -> Self {
        Horofunction::Height(Direction::Plus)
    }

    pub fn height_minus() -> Self {
        Horofunction::Height(Direction::Minus)
    }

    pub fn category(&self) -> Category {
        match self {
            Horofunction::Point(_) => Category::Point,
            Horofunction::Spine(_) => Category::Spine,
            Horofunction::Rib(r) => match r.direction {
                Direction::Plus => Category::RibPlus,
                Direction::Minus => Category::RibMinus,
            },
            Horofunction::Busemann(ray) => match ray.direction {
                Direction::Plus => Category::BusemannPlus,
                Direction::Minus => Category::BusemannMinus,
            },
            Horofunction::Height(Direction::Plus) => Category::HeightPlus,
            Horofunction::Height(Direction::Minus) => Category::HeightMinus,
        }
    }

    pub fn eval(&self, g: &LampStand) -> i64 {
        let h = g.height();
        match self {
            Horofunction::Point(g0) => dist(g0, g) - dist(g0, &LampStand::identity()),
            Horofunction::Spine(l) => spine_value(*l, h),
            Horofunction::Rib(rib) => {
                let f = &rib.f;
                let l = f.height();
                match rib.direction {
                    Direction::Plus => {
                        let base =
                            ExtInt::min_of([f.min_lit(), l.into(), 0.into()]).expect_finite();
                        let here = ExtInt::min_of([lamp::diff_min(f, g), h.into(), l.into()])
                            .expect_finite();
                        2 * (base - here) + spine_value(l, h)
                    }
                    Direction::Minus => {
                        let here =
                            ExtInt::max_of([lamp::diff_max(f, g).succ(), h.into(), l.into()])
                                .expect_finite();
                        let base = ExtInt::max_of([f.max_lit().succ(), l.into(), 0.into()])
                            .expect_finite();
                        2 * (here - base) + spine_value(l, h)
                    }
                }
            }
            Horofunction::Busemann(ray) => match ray.direction {
                Direction::Plus => {
                    let base = ExtInt::min_of([ray.min_lit(), 0.into()]).expect_finite();
                    let here = ExtInt::min_of([ray.diff_min(g), h.into()]).expect_finite();
                    2 * (base - here) + h
                }
                Direction::Minus => {
                    let here = ExtInt::max_of([ray.diff_max(g).succ(), h.into()]).expect_finite();
                    let base = ExtInt::max_of([ray.max_lit().succ(), 0.into()]).expect_finite();
                    2 * (here - base) - h
                }
            },
            Horofunction::Height(d) => d.sign() * h,
        }
    }

    /// Literal syntax: `point:{..};h`, `spine:l`, `rib+:{..};h`, `rib-:{..};h`,
    /// `bus+:{..}`, `bus-:{..}`, `H+`, `H-`.
    pub fn parse(text: &str) -> Result<Horofunction> {
        let text = text.trim();
        match text {
            "H+" => return Ok(Horofunction::height_plus()),
            "H-" => return Ok(Horofunction::height_minus()),
            _ => {}
        }
        let Some((tag, body)) = text.split_once(':') else {
            return Err(Error::parse(
                0,
                format!("unknown horofunction literal {text:?}"),
            ));
        };
        let at = tag.len() + 1;
        let shift = |e: Error| match e {
            Error::Parse { pos, msg } => Error::parse(pos + at, msg),
            other => other,
        };
        match tag {
            "point" => Ok(Horofunction::Point(LampStand::parse(body).map_err(shift)?)),
            "spine" => body
                .trim()
                .parse::<i64>()
                .map(Horofunction::Spine)
                .map_err(|e| Error::parse(at, format!("bad spine height {body:?}: {e}"))),
            "rib+" => Horofunction::rib_plus(LampStand::parse(body).map_err(shift)?),
            "rib-" => Horofunction::rib_minus(LampStand::parse(body).map_err(shift)?),
            "bus+" | "bus-" => {
                let lamps = LampStand::parse(&format!("{body};0")).map_err(shift)?;
                let dir = if tag == "bus+" {
                    Direction::Plus
                } else {
                    Direction::Minus
                };
                Ok(Horofunction::Busemann(BoundaryRay {
                    direction: dir,
                    lit: lamps.into_lit(),
                }))
            }
            _ => Err(Error::parse(
                0,
                format!("unknown horofunction family `{tag}`"),
            )),
        }
    }
}

impl fmt::Display for Horofunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Horofunction::Point(g) => write!(f, "point:{g}"),
            Horofunction::Spine(l) => write!(f, "spine:{l}"),
            Horofunction::Rib(r) => write!(f, "rib{}:{}", r.direction.symbol(), r.f),
            Horofunction::Busemann(ray) => {
                write!(f, "bus{}:", ray.direction.symbol())?;
                fmt_set(f, &ray.lit)
            }
            Horofunction::Height(d) => write!(f, "H{}", d.symbol()),
        }
    }
}

impl FromStr for Horofunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Horofunction::parse(s)
    }
}

impl Serialize for Horofunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Horofunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Horofunction::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Serialize for BoundaryRay {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BoundaryRay {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let dir = match s.chars().next() {
            Some('+') => Direction::Plus,
            Some('-') => Direction::Minus,
            _ => {
                return Err(serde::de::Error::custom(format!(
                    "ray {s:?} must start with + or -"
                )))
            }
        };
        let lamps =
            LampStand::parse(&format!("{};0", &s[1..])).map_err(serde::de::Error::custom)?;
        Ok(BoundaryRay {
            direction: dir,
            lit: lamps.into_lit(),
        })
    }
}

/// The rib with no lit lamps at height `l`.
pub fn rib_tip(direction: Direction, l: i64) -> Horofunction {
    Horofunction::Rib(Rib {
        direction,
        f: LampStand::translation(l),
    })
}

/// Number of positive ribs at height `l` whose lowest lit lamp is `k`.
pub fn rib_class_size(l: i64, k: ExtInt) -> BigUint {
    match k {
        ExtInt::PosInf => BigUint::from(1u32),
        ExtInt::Finite(k) if k < l => {
            let exp = (l as i128 - k as i128 - 1) as u64;
            BigUint::from(1u32) << exp
        }
        _ => BigUint::from(0u32),
    }
}

pub const MAX_RIB_ENUMERATION_BITS: i64 = 24;

/// Positive ribs `r^{+,f}` with `h(f) = l` and `m(f) = k`, in canonical order.
pub fn enumerate_rib_class(l: i64, k: ExtInt) -> Result<Vec<Horofunction>> {
    match k {
        ExtInt::PosInf => Ok(vec![rib_tip(Direction::Plus, l)]),
        ExtInt::Finite(k) if k < l => {
            let free = l - k - 1;
            if free > MAX_RIB_ENUMERATION_BITS {
                return Err(Error::ResourceLimit {
                    what: "rib class exponent",
                    requested: free as usize,
                    cap: MAX_RIB_ENUMERATION_BITS as usize,
                });
            }
            let mut out = Vec::with_capacity(1 << free);
            for mask in 0u64..(1u64 << free) {
                let lamps = std::iter::once(k)
                    .chain((0..free).filter(|i| mask >> i & 1 == 1).map(|i| k + 1 + i));
                out.push(Horofunction::Rib(Rib {
                    direction: Direction::Plus,
                    f: LampStand::new(lamps, l),
                }));
            }
            out.sort();
            Ok(out)
        }
        _ => Ok(Vec::new()),
    }
}

/// Busemann function of the ray that follows `prefix` from the identity and
/// then marches off in `direction` without toggling further lamps.
///
/// Rejects prefixes that are not geodesic, and prefixes after which the
/// march is not geodesic.
pub fn busemann_of_ray(prefix: &[Generator], direction: Direction) -> Result<Horofunction> {
    if prefix.contains(&Generator::A) {
        return Err(Error::InvalidRay(
            "`a` is not an edge of the Cayley graph".into(),
        ));
    }
    let id = LampStand::identity();
    let end = id.apply_word(prefix);
    let len = word_length(prefix) as i64;
    if dist(&id, &end) != len {
        return Err(Error::InvalidRay(format!(
            "prefix of length {len} reaches {end} at distance {}",
            dist(&id, &end)
        )));
    }
    // past this many marching steps every further step adds exactly one to
    // the distance, and distances change by one per step, so checking here
    // covers the whole ray
    let h = end.height();
    let far = match direction {
        Direction::Plus => {
            end.max_lit()
                .as_finite()
                .map_or(0, |m| m + 1 - h)
                .max(-h)
                .max(0)
                + 1
        }
        Direction::Minus => end.min_lit().as_finite().map_or(0, |m| h - m).max(h).max(0) + 1,
    };
    let marched = end.mul(&LampStand::translation(direction.sign() * far));
    if dist(&id, &marched) != len + far {
        return Err(Error::InvalidRay(format!(
            "marching {} from {end} is not geodesic",
            direction.symbol()
        )));
    }
    Ok(Horofunction::Busemann(BoundaryRay {
        direction,
        lit: end.into_lit(),
    }))
}
