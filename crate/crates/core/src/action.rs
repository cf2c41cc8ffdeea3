//! The left action of `L2` on horofunctions, its fixed rays, and orbit
//! probes.
//!
//! Left multiplication by `g` moves every sequence `(g_n)` to `(g g_n)`, and
//! each family is closed under that move; the closed forms below are checked
//! against exactly that limit in [`limit_consistency`].

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classify::{empirical_limit, model_sequence, LimitOutcome, SequenceSpec, Transform};
use crate::horofn::{enumerate_rib_class, BoundaryRay, Category, Direction, Horofunction, Rib};
use crate::lamp::LampStand;
use crate::topology::BasisNeighborhood;
use crate::{Error, Result};

pub const DEFAULT_FIXED_RAY_WINDOW: i64 = 16;

/// `g . h`.
pub fn act(g: &LampStand, h: &Horofunction) -> Result<Horofunction> {
    Ok(match h {
        Horofunction::Point(x) => Horofunction::Point(g.try_mul(x)?),
        Horofunction::Spine(l) => Horofunction::Spine(
            g.height()
                .checked_add(*l)
                .ok_or(Error::Overflow("spine height"))?,
        ),
        Horofunction::Rib(r) => {
            Horofunction::Rib(Rib::normalized(r.direction(), &g.try_mul(r.payload())?))
        }
        Horofunction::Busemann(ray) => Horofunction::Busemann(ray.translated(g.lit(), g.height())?),
        Horofunction::Height(d) => Horofunction::Height(*d),
    })
}

pub fn category_of(h: &Horofunction) -> Category {
    h.category()
}

/// The category of `h` survives the action of `g`.
pub fn verify_invariance(g: &LampStand, h: &Horofunction) -> Result<bool> {
    Ok(act(g, h)?.category() == h.category())
}

/// The closed form of `g . h` agrees on `k` with the limit of the translated
/// model sequence `(g g_n)`.
pub fn limit_consistency(
    g: &LampStand,
    h: &Horofunction,
    k: &[LampStand],
    horizon: usize,
    window: usize,
) -> Result<bool> {
    let image = act(g, h)?;
    let spec = SequenceSpec::Transformed {
        base: Box::new(model_sequence(h)),
        transforms: vec![Transform::LeftMul { g: g.clone() }],
    };
    Ok(match empirical_limit(&spec, k, horizon, window)? {
        LimitOutcome::Stabilized { values, .. } => {
            k.iter().zip(values).all(|(x, v)| image.eval(x) == v)
        }
        LimitOutcome::Oscillating(_) => false,
    })
}

/// The limit lamp configuration of `g^n` (or `g^-n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowedRay {
    pub direction: Direction,
    /// Exact lit lamps when `finite`, otherwise those inside `window`.
    pub lamps: BTreeSet<i64>,
    pub window: (i64, i64),
    pub finite: bool,
}

impl WindowedRay {
    /// The ray, when its support is finite.
    pub fn ray(&self) -> Option<BoundaryRay> {
        self.finite
            .then(|| BoundaryRay::new(self.direction, self.lamps.iter().copied()))
    }
}

impl std::fmt::Display for WindowedRay {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let lamps: Vec<String> = self.lamps.iter().map(i64::to_string).collect();
        write!(f, "{}{{{}}}", self.direction.symbol(), lamps.join(","))?;
        if !self.finite {
            write!(
                f,
                " (infinite; window [{}, {}])",
                self.window.0, self.window.1
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedRays {
    pub g: LampStand,
    pub attractor: WindowedRay,
    pub repeller: WindowedRay,
}

/// Lamps of `lim g^n`: position `p` is lit when an odd number of the
/// translates `lit(g) + j h(g)`, `j >= 0`, contain it.
fn limit_configuration(g: &LampStand, window: i64) -> Result<WindowedRay> {
    let h = g.height();
    let direction = if h > 0 {
        Direction::Plus
    } else {
        Direction::Minus
    };
    let step = h.unsigned_abs() as i64;

    // far out on the escaping side every lamp of g in a residue class
    // contributes, so the configuration ends iff every class has even size
    let mut parity = vec![false; step as usize];
    for &p in g.lit() {
        let r = p.rem_euclid(step) as usize;
        parity[r] = !parity[r];
    }
    let finite = parity.iter().all(|odd| !odd);

    let (lo, hi) = if finite {
        // nothing survives past the extreme lamp of g on the escaping side
        (
            g.min_lit().as_finite().unwrap_or(0),
            g.max_lit().as_finite().unwrap_or(0),
        )
    } else {
        (-window, window)
    };
    let mut lamps = BTreeSet::new();
    for &q in g.lit() {
        let mut p = q;
        while (h > 0 && p <= hi) || (h < 0 && p >= lo) {
            if p >= lo && p <= hi && !lamps.remove(&p) {
                lamps.insert(p);
            }
            p = p
                .checked_add(h)
                .ok_or(Error::Overflow("fixed ray position"))?;
        }
    }
    let window = if finite { (lo, hi) } else { (-window, window) };
    Ok(WindowedRay {
        direction,
        lamps,
        window,
        finite,
    })
}

/// `g^inf` and `g^-inf`, exact when finitely supported and windowed to
/// `[-window, window]` otherwise.
pub fn fixed_rays(g: &LampStand, window: i64) -> Result<FixedRays> {
    if g.height() == 0 {
        return Err(Error::Unsupported(format!(
            "{g} has height 0 and fixes no rays"
        )));
    }
    Ok(FixedRays {
        g: g.clone(),
        attractor: limit_configuration(g, window)?,
        repeller: limit_configuration(&g.inverse(), window)?,
    })
}

fn side(h: &Horofunction) -> Option<Direction> {
    match h {
        Horofunction::Busemann(ray) => Some(ray.direction()),
        Horofunction::Height(d) => Some(*d),
        _ => None,
    }
}

/// The pole an orbit of `h0` under `g` should settle on.
///
/// On the plus side the Busemann functions drift toward `g^inf` when the
/// lamplighter of `g` climbs and toward `H` when it descends; the minus side
/// is the mirror image. Spines follow their height, ribs are pulled onto the
/// ray or height function their heights escape to.
pub fn predicted_pole(g: &LampStand, h0: &Horofunction) -> Result<Horofunction> {
    let h = g.height();
    if h == 0 {
        return Err(Error::Unsupported(format!("{g} has height 0")));
    }
    if act(g, h0)? == *h0 {
        return Ok(h0.clone());
    }
    let up = if h > 0 {
        Direction::Plus
    } else {
        Direction::Minus
    };
    let attractor = || -> Result<Horofunction> {
        let rays = fixed_rays(g, DEFAULT_FIXED_RAY_WINDOW)?;
        rays.attractor
            .ray()
            .map(Horofunction::busemann)
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "attracting ray of {g} has infinite support: {}",
                    rays.attractor
                ))
            })
    };
    match h0 {
        Horofunction::Point(_) => Err(Error::Unsupported("orbits of points are not probed".into())),
        Horofunction::Spine(_) => Ok(Horofunction::Height(up)),
        Horofunction::Rib(r) => {
            if r.direction() == up {
                attractor()
            } else {
                Ok(Horofunction::Height(up))
            }
        }
        _ => {
            let s = side(h0).expect("remaining families have a side");
            if s == up {
                attractor()
            } else {
                Ok(Horofunction::Height(s))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub g: LampStand,
    pub start: Horofunction,
    pub pole: Horofunction,
    /// First `n` with `g^n . h0` in the neighborhood of the pole.
    pub reached: Option<usize>,
    /// Least `n` from which the orbit stays in the neighborhood up to the budget.
    pub settled: Option<usize>,
    pub trajectory: Vec<Horofunction>,
}

/// Follows `h_{n+1} = g . h_n` for `budget` steps and watches the basis
/// neighborhood of the predicted pole on `k`.
pub fn north_south_probe(
    g: &LampStand,
    h0: &Horofunction,
    k: &[LampStand],
    budget: usize,
) -> Result<ProbeReport> {
    if k.is_empty() {
        return Err(Error::Unsupported("empty evaluation set".into()));
    }
    let pole = predicted_pole(g, h0)?;
    let nbhd = BasisNeighborhood::new(pole.clone(), k.to_vec());
    let mut trajectory = vec![h0.clone()];
    for _ in 0..budget {
        let next = act(g, trajectory.last().unwrap())?;
        trajectory.push(next);
    }
    let inside: Vec<bool> = trajectory.iter().map(|h| nbhd.contains(h)).collect();
    let reached = inside.iter().position(|&b| b);
    let settled = inside
        .iter()
        .rposition(|&b| !b)
        .map_or(Some(0), |i| (i + 1 < inside.len()).then_some(i + 1));
    Ok(ProbeReport {
        g: g.clone(),
        start: h0.clone(),
        pole,
        reached,
        settled,
        trajectory,
    })
}

/// `g` maps the positive ribs of height `l` with lowest lamp `k` one-to-one
/// onto those of height `h(g) + l` with lowest lamp `h(g) + k`. Requires
/// `k < l` and `h(g) + k < m(g)`.
pub fn rib_bijection_check(g: &LampStand, l: i64, k: i64) -> Result<bool> {
    let h = g.height();
    if k >= l {
        return Err(Error::Unsupported(format!(
            "need k < l, got k = {k}, l = {l}"
        )));
    }
    let shifted_k = h.checked_add(k).ok_or(Error::Overflow("rib class bound"))?;
    if g.min_lit() <= shifted_k {
        return Err(Error::Unsupported(format!(
            "need h(g) + k < m(g), got {shifted_k} >= {}",
            g.min_lit()
        )));
    }
    let domain = enumerate_rib_class(l, k.into())?;
    let image: BTreeSet<Horofunction> = domain.iter().map(|r| act(g, r)).collect::<Result<_>>()?;
    let target: BTreeSet<Horofunction> = enumerate_rib_class(h + l, shifted_k.into())?
        .into_iter()
        .collect();
    Ok(image.len() == domain.len() && image == target)
}
