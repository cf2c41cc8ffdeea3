//! Closed-form word metric on `L2` for the generating set `{t, at}`.
//!
//! A path between two lamp stands must carry the lamplighter across every
//! differing lamp. With `A` the left-most and `B` the right-most position it
//! has to visit and `C` the gap between the two heights, the distance is
//! `2(B - A) - C`: one full sweep between the extremes plus the two partial
//! legs, which overlap by exactly `C`.

use serde::Serialize;

use crate::ext::ExtInt;
use crate::lamp::{diff_max, diff_min, Generator, LampStand};

/// The terms of the distance formula for one pair of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DistanceBreakdown {
    /// Left-most position the lamplighter visits.
    pub a: i64,
    /// Right-most position the lamplighter visits.
    pub b: i64,
    /// `|h(g2) - h(g1)|`.
    pub c: i64,
    pub distance: i64,
}

pub fn distance(g1: &LampStand, g2: &LampStand) -> DistanceBreakdown {
    let (h1, h2) = (g1.height(), g2.height());
    let a = ExtInt::min_of([diff_min(g1, g2), h1.into(), h2.into()]).expect_finite();
    let b = ExtInt::max_of([diff_max(g1, g2).succ(), h1.into(), h2.into()]).expect_finite();
    let c = (h2 - h1).abs();
    DistanceBreakdown {
        a,
        b,
        c,
        distance: 2 * (b - a) - c,
    }
}

/// Shorthand for `distance(g1, g2).distance`.
pub fn dist(g1: &LampStand, g2: &LampStand) -> i64 {
    distance(g1, g2).distance
}

/// A geodesic word from `g1` to `g2` over `{t, t^-1, at, (at)^-1}`.
///
/// The lamplighter first heads away from the target height (left first on a
/// tie), sweeps to the other extreme fixing every differing lamp on the way,
/// then walks back to the target height.
pub fn geodesic_witness(g1: &LampStand, g2: &LampStand) -> Vec<Generator> {
    let x = g1.inverse().mul(g2);
    let bd = distance(&LampStand::identity(), &x);
    let (a, b, h) = (bd.a, bd.b, x.height());

    let mut word = Vec::with_capacity(bd.distance as usize);
    if h >= 0 {
        word.extend(std::iter::repeat_n(Generator::TInv, (-a) as usize));
        for p in a..b {
            word.push(if x.is_lit(p) {
                Generator::At
            } else {
                Generator::T
            });
        }
        word.extend(std::iter::repeat_n(Generator::TInv, (b - h) as usize));
    } else {
        word.extend(std::iter::repeat_n(Generator::T, b as usize));
        for p in (a..b).rev() {
            word.push(if x.is_lit(p) {
                Generator::AtInv
            } else {
                Generator::TInv
            });
        }
        word.extend(std::iter::repeat_n(Generator::T, (h - a) as usize));
    }
    debug_assert_eq!(word.len() as i64, bd.distance);
    word
}

/// All elements within `radius` of the identity, sorted by distance then by
/// canonical order. Enumerated from the closed form, not by search.
pub fn closed_ball(radius: u32) -> Vec<LampStand> {
    let r = radius as i64;
    // a lit lamp at p forces the lamplighter to visit p and p + 1, so every
    // element of the ball has lamps in [-r, r - 1] and height in [-r, r]
    let positions: Vec<i64> = (-r..r).collect();
    let id = LampStand::identity();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << positions.len()) {
        let lit: Vec<i64> = positions
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        for h in -r..=r {
            let g = LampStand::new(lit.iter().copied(), h);
            if dist(&id, &g) <= r {
                out.push(g);
            }
        }
    }
    out.sort_by_cached_key(|g| (dist(&id, g), g.clone()));
    out
}
