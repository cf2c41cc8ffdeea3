//! Basis neighborhoods of the horofunction boundary and bounded-budget
//! convergence checks for indexed families of horofunctions.
//!
//! Horofunctions are integer valued, so a basis set is "agrees exactly on a
//! finite set `K`".

use serde::{Deserialize, Serialize};

use crate::horofn::{BoundaryRay, Direction, Horofunction, Rib};
use crate::lamp::LampStand;
use crate::{Error, Result};

/// `B_K(center)`: all horofunctions agreeing with `center` on `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisNeighborhood {
    center: Horofunction,
    k: Vec<LampStand>,
    values: Vec<i64>,
}

impl BasisNeighborhood {
    pub fn new(center: Horofunction, k: Vec<LampStand>) -> Self {
        let values = k.iter().map(|x| center.eval(x)).collect();
        BasisNeighborhood { center, k, values }
    }

    pub fn center(&self) -> &Horofunction {
        &self.center
    }

    pub fn k(&self) -> &[LampStand] {
        &self.k
    }

    pub fn contains(&self, h: &Horofunction) -> bool {
        self.disagreement(h).is_none()
    }

    /// First `(x, center(x), h(x))` with the two values different.
    pub fn disagreement(&self, h: &Horofunction) -> Option<(LampStand, i64, i64)> {
        self.k.iter().zip(&self.values).find_map(|(x, &c)| {
            let v = h.eval(x);
            (v != c).then(|| (x.clone(), c, v))
        })
    }
}

pub fn member(nbhd: &BasisNeighborhood, h: &Horofunction) -> bool {
    nbhd.contains(h)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Convergence {
    /// `h_n` lies in the neighborhood for every `n0 <= n <= budget`.
    ConvergedBy { n0: usize },
    /// The last index outside the neighborhood, with a point and the values
    /// `[limit(x), h_n(x)]`.
    NotWithinBudget {
        n: usize,
        x: LampStand,
        values: [i64; 2],
    },
}

/// Checks `h_n -> limit` on `K` over the indices `1..=budget`.
pub fn converges_to(
    family: impl Fn(usize) -> Horofunction,
    limit: &Horofunction,
    k: &[LampStand],
    budget: usize,
) -> Result<Convergence> {
    if k.is_empty() {
        return Err(Error::Unsupported("empty evaluation set".into()));
    }
    if budget == 0 {
        return Err(Error::Unsupported("budget must be positive".into()));
    }
    let nbhd = BasisNeighborhood::new(limit.clone(), k.to_vec());
    let mut n0 = 1;
    for n in (1..=budget).rev() {
        if let Some((x, c, v)) = nbhd.disagreement(&family(n)) {
            if n == budget {
                return Ok(Convergence::NotWithinBudget {
                    n,
                    x,
                    values: [c, v],
                });
            }
            n0 = n + 1;
            break;
        }
    }
    Ok(Convergence::ConvergedBy { n0 })
}

/// Busemann functions of rays whose lamps run off behind the lamplighter
/// converge to `H` (plus rays) or `-H` (minus rays).
pub fn busemann_to_height_check(
    rays: impl Fn(usize) -> BoundaryRay,
    k: &[LampStand],
    budget: usize,
) -> Result<Convergence> {
    let direction = rays(1).direction();
    converges_to(
        |n| {
            let ray = rays(n);
            debug_assert_eq!(ray.direction(), direction);
            Horofunction::busemann(ray)
        },
        &Horofunction::Height(direction),
        k,
        budget,
    )
}

/// Named families of horofunctions with a known limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum HorofunctionFamily {
    /// `Spine(n)` for `+`, `Spine(-n)` for `-`; limit `±H`.
    Spine { sign: Direction },
    /// Plus: `rib+:{l-n};l`. Minus: `rib-:{l+n-1};l`. Limit `Spine(l)`.
    RibDeepening { direction: Direction, l: i64 },
    /// Ribs cut from `ray` at height `n` (plus) or `-n` (minus); limit the
    /// Busemann function of `ray`.
    RibTruncation { ray: BoundaryRay },
    /// Busemann functions of the ray with one lamp at `-n` (plus) or `n - 1`
    /// (minus); limit `±H`.
    BusemannDeepening { direction: Direction },
    /// `terms[n - 1]`, holding the last term forever; no predicted limit.
    Explicit { terms: Vec<Horofunction> },
}

impl HorofunctionFamily {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()))
    }

    /// The `n`-th member, for `n >= 1`.
    pub fn term(&self, n: usize) -> Horofunction {
        let k = n as i64;
        match self {
            HorofunctionFamily::Spine { sign } => Horofunction::Spine(sign.sign() * k),
            HorofunctionFamily::RibDeepening { direction, l } => {
                let lamp = match direction {
                    Direction::Plus => l - k,
                    Direction::Minus => l + k - 1,
                };
                Horofunction::Rib(Rib::normalized(*direction, &LampStand::new([lamp], *l)))
            }
            HorofunctionFamily::RibTruncation { ray } => {
                let dir = ray.direction();
                let cut = dir.sign() * k;
                let f = LampStand::new(ray.lit().iter().copied(), cut);
                Horofunction::Rib(Rib::normalized(dir, &f))
            }
            HorofunctionFamily::BusemannDeepening { direction } => {
                Horofunction::busemann(match direction {
                    Direction::Plus => BoundaryRay::plus([-k]),
                    Direction::Minus => BoundaryRay::minus([k - 1]),
                })
            }
            HorofunctionFamily::Explicit { terms } => terms[(n - 1).min(terms.len() - 1)].clone(),
        }
    }

    pub fn expected_limit(&self) -> Option<Horofunction> {
        match self {
            HorofunctionFamily::Spine { sign }
            | HorofunctionFamily::BusemannDeepening { direction: sign } => {
                Some(Horofunction::Height(*sign))
            }
            HorofunctionFamily::RibDeepening { l, .. } => Some(Horofunction::Spine(*l)),
            HorofunctionFamily::RibTruncation { ray } => Some(Horofunction::busemann(ray.clone())),
            HorofunctionFamily::Explicit { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            HorofunctionFamily::Explicit { terms } if terms.is_empty() => Err(Error::Unsupported(
                "explicit family needs at least one term".into(),
            )),
            _ => Ok(()),
        }
    }
}

/// Outcome of comparing the Busemann functions of two rays on `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub left: BoundaryRay,
    pub right: BoundaryRay,
    /// Plus rays: agreement strictly below this position forces agreement
    /// on `K`. Minus rays: agreement at or above it.
    pub horizon: i64,
    /// Nearest position to the horizon side where the rays differ, if any.
    pub first_difference: Option<i64>,
    /// The rays agree on the side of the horizon that `K` can see.
    pub predicted_agreement: bool,
    /// `(x, b_left(x), b_right(x))` for the first disagreement in `K`.
    pub witness: Option<(LampStand, i64, i64)>,
}

impl EmbeddingReport {
    /// Predicted agreement was confirmed on `K`.
    pub fn consistent(&self) -> bool {
        !self.predicted_agreement || self.witness.is_none()
    }
}

/// Compares Busemann functions of same-direction rays on `K`.
pub fn visual_embedding_check(
    pairs: &[(BoundaryRay, BoundaryRay)],
    k: &[LampStand],
) -> Result<Vec<EmbeddingReport>> {
    let heights = k.iter().map(LampStand::height);
    let upper = heights.clone().max().unwrap_or(0).max(0);
    let lower = heights.min().unwrap_or(0).min(0);
    pairs
        .iter()
        .map(|(a, b)| {
            if a.direction() != b.direction() {
                return Err(Error::InvalidRay(format!(
                    "{a} and {b} point in different directions"
                )));
            }
            let diffs: Vec<i64> = a.lit().symmetric_difference(b.lit()).copied().collect();
            let (horizon, first_difference, predicted_agreement) = match a.direction() {
                Direction::Plus => {
                    let first = diffs.iter().copied().min();
                    (upper, first, first.is_none_or(|p| p >= upper))
                }
                Direction::Minus => {
                    let first = diffs.iter().copied().max();
                    (lower, first, first.is_none_or(|p| p < lower))
                }
            };
            let nbhd = BasisNeighborhood::new(Horofunction::busemann(a.clone()), k.to_vec());
            Ok(EmbeddingReport {
                left: a.clone(),
                right: b.clone(),
                horizon,
                first_difference,
                predicted_agreement,
                witness: nbhd.disagreement(&Horofunction::busemann(b.clone())),
            })
        })
        .collect()
}
