//! Brute-force ground truth: breadth-first search over the Cayley graph of
//! `L2` with generating set `{t, at}`.
//!
//! Nothing here uses the closed-form metric; the only group operation needed
//! is right multiplication by a letter.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::lamp::{Generator, LampStand};
use crate::{Error, Result};

pub const DEFAULT_RADIUS_CAP: u32 = 12;

#[derive(Debug, Clone)]
pub struct Ball {
    radius: u32,
    dist: HashMap<LampStand, u32>,
    /// Elements by distance from the identity, each layer in canonical order.
    layers: Vec<Vec<LampStand>>,
}

impl Ball {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn layer(&self, r: u32) -> &[LampStand] {
        self.layers.get(r as usize).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, g: &LampStand) -> bool {
        self.dist.contains_key(g)
    }

    pub fn get(&self, g: &LampStand) -> Option<u32> {
        self.dist.get(g).copied()
    }

    /// Elements in BFS order (by layer, canonical order within a layer).
    pub fn iter(&self) -> impl Iterator<Item = (&LampStand, u32)> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(r, layer)| layer.iter().map(move |g| (g, r as u32)))
    }

    /// Elements within `r <= self.radius()`.
    pub fn elements_within(&self, r: u32) -> Vec<LampStand> {
        self.layers
            .iter()
            .take(r as usize + 1)
            .flatten()
            .cloned()
            .collect()
    }

    /// CSV growth table with header `radius,sphere_size,ball_size`.
    pub fn growth_csv(&self) -> String {
        let mut out = String::from("radius,sphere_size,ball_size\n");
        let mut total = 0;
        for (r, layer) in self.layers.iter().enumerate() {
            total += layer.len();
            let _ = writeln!(out, "{r},{},{total}", layer.len());
        }
        out
    }
}

/// Exhaustive BFS ball with the default radius cap.
pub fn bfs_ball(radius: u32) -> Result<Ball> {
    bfs_ball_capped(radius, DEFAULT_RADIUS_CAP)
}

pub fn bfs_ball_capped(radius: u32, cap: u32) -> Result<Ball> {
    if radius > cap {
        return Err(Error::ResourceLimit {
            what: "ball radius",
            requested: radius as usize,
            cap: cap as usize,
        });
    }
    let id = LampStand::identity();
    let mut dist = HashMap::new();
    dist.insert(id.clone(), 0);
    let mut layers = vec![vec![id]];
    for r in 1..=radius {
        let mut next = Vec::new();
        for g in &layers[r as usize - 1] {
            for s in Generator::EDGES {
                let x = g.step(s);
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), r);
                    next.push(x);
                }
            }
        }
        next.sort();
        layers.push(next);
    }
    Ok(Ball {
        radius,
        dist,
        layers,
    })
}

/// BFS layer of `g`; an error if `g` is not in the ball.
pub fn oracle_distance(ball: &Ball, g: &LampStand) -> Result<u32> {
    ball.get(g).ok_or_else(|| Error::OutOfRange(g.to_string()))
}

/// Graphviz rendering of the ball up to `max_radius`. Edges are the right
/// multiplications by `t` and `at` whose endpoints both lie in range.
pub fn export_dot(ball: &Ball, max_radius: u32) -> Result<String> {
    if max_radius > ball.radius() {
        return Err(Error::ResourceLimit {
            what: "dot radius",
            requested: max_radius as usize,
            cap: ball.radius() as usize,
        });
    }
    let mut out = String::from("digraph DL22 {\n");
    let vertices = ball.elements_within(max_radius);
    for g in &vertices {
        let _ = writeln!(out, "  \"{g}\" [dist={}];", ball.dist[g]);
    }
    for g in &vertices {
        for s in [Generator::T, Generator::At] {
            let x = g.step(s);
            if ball.get(&x).is_some_and(|d| d <= max_radius) {
                let _ = writeln!(out, "  \"{g}\" -> \"{x}\" [label=\"{s}\"];");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
