//! Sequences in `L2`, their empirical horofunction limits, and classification
//! of the limit by height behaviour and one-sided lamp stability.
//!
//! A horofunction arises as the pointwise limit of
//! `f_n(x) = d(g_n, x) - d(g_n, id)`. Everything here works at a finite
//! horizon: it inspects `g_start ..= g_N`, splits that range into an early and
//! a late half, and reads trends off the late half. When the data cannot
//! decide, the answer is [`Classification::Inconclusive`], never a guess.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ext::ExtInt;
use crate::horofn::{BoundaryRay, Direction, Horofunction, Rib};
use crate::lamp::LampStand;
use crate::metric::{closed_ball, dist};
use crate::{Error, Result};

pub const DEFAULT_HORIZON: usize = 64;
pub const DEFAULT_WINDOW: usize = 8;

/// Radius of the closed ball scanned for a separating point when a sequence
/// is rejected.
const WITNESS_RADIUS: u32 = 3;

/// A declarative sequence `n -> g_n`, defined for `n >= start_index()`.
///
/// JSON form: `{"family": "spine", "l": 3}`, `{"family": "rib+", "f": "{-2};0"}`,
/// `{"family": "ray", "ray": "+{-1,2}"}`, `{"family": "height", "sign": "+"}`,
/// `{"family": "explicit", "prefix": [..], "repeat": [..]}`,
/// `{"family": "interleave", "parts": [..]}`,
/// `{"family": "transformed", "base": {..}, "transforms": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum SequenceSpec {
    /// Lamps at `-n` and `n`, height `l`.
    Spine { l: i64 },
    /// Lamps of `f` below `h(f)`, lamp `n` lit, height `h(f)`.
    #[serde(rename = "rib+")]
    RibPlus { f: LampStand },
    /// Lamps of `f` at or above `h(f)`, lamp `-n` lit, height `h(f)`.
    #[serde(rename = "rib-")]
    RibMinus { f: LampStand },
    /// Points `gamma(n)` of the canonical geodesic ray.
    Ray { ray: BoundaryRay },
    /// Lamps at `-n` and `n`, height `n` (`+`) or `-n` (`-`).
    Height { sign: Direction },
    /// `prefix` followed by `repeat` cycled forever.
    Explicit {
        #[serde(default)]
        prefix: Vec<LampStand>,
        repeat: Vec<LampStand>,
    },
    /// `g_n` is taken from `parts[n % parts.len()]` at index `n`.
    Interleave { parts: Vec<SequenceSpec> },
    /// `base` with `transforms` applied in order to every term.
    Transformed {
        base: Box<SequenceSpec>,
        transforms: Vec<Transform>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Transform {
    /// `g_n -> g * g_n`
    LeftMul { g: LampStand },
    /// `g_n -> g_n * g`
    RightMul { g: LampStand },
    /// Reflect positions and height through 0.
    Mirror,
    /// Toggle the lamp at `scale * n + offset`.
    ToggleGrowing { scale: i64, offset: i64 },
}

impl Transform {
    fn apply(&self, g: LampStand, n: usize) -> LampStand {
        match self {
            Transform::LeftMul { g: x } => x.mul(&g),
            Transform::RightMul { g: x } => g.mul(x),
            Transform::Mirror => {
                let h = g.height();
                LampStand::new(g.lit().iter().map(|p| -p), -h)
            }
            Transform::ToggleGrowing { scale, offset } => g.toggled(scale * n as i64 + offset),
        }
    }
}

impl SequenceSpec {
    pub fn from_json(text: &str) -> Result<SequenceSpec> {
        serde_json::from_str(text)
            .map_err(|e| Error::parse(e.column().saturating_sub(1), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("sequence specs always serialize")
    }

    pub fn start_index(&self) -> usize {
        match self {
            SequenceSpec::Spine { l } => l.unsigned_abs().max(1) as usize,
            SequenceSpec::RibPlus { f } => f.height().max(0) as usize,
            SequenceSpec::RibMinus { f } => (1 - f.height()).max(0) as usize,
            SequenceSpec::Ray { .. } | SequenceSpec::Explicit { .. } => 0,
            SequenceSpec::Height { .. } => 1,
            SequenceSpec::Interleave { parts } => {
                parts.iter().map(Self::start_index).max().unwrap_or(0)
            }
            SequenceSpec::Transformed { base, .. } => base.start_index(),
        }
    }

    pub fn materialize(&self, n: usize) -> Result<LampStand> {
        let start = self.start_index();
        if n < start {
            return Err(Error::IndexBelowStart { index: n, start });
        }
        let k = n as i64;
        Ok(match self {
            SequenceSpec::Spine { l } => LampStand::new([-k, k], *l),
            SequenceSpec::RibPlus { f } => {
                let l = f.height();
                f.retain_lamps(|p| p < l).toggled(k)
            }
            SequenceSpec::RibMinus { f } => {
                let l = f.height();
                f.retain_lamps(|p| p >= l).toggled(-k)
            }
            SequenceSpec::Ray { ray } => ray.point(n),
            SequenceSpec::Height { sign } => LampStand::new([-k, k], sign.sign() * k),
            SequenceSpec::Explicit { prefix, repeat } => {
                if n < prefix.len() {
                    prefix[n].clone()
                } else if repeat.is_empty() {
                    return Err(Error::Unsupported(
                        "explicit sequence needs a nonempty `repeat`".into(),
                    ));
                } else {
                    repeat[(n - prefix.len()) % repeat.len()].clone()
                }
            }
            SequenceSpec::Interleave { parts } => {
                if parts.is_empty() {
                    return Err(Error::Unsupported(
                        "interleave needs at least one part".into(),
                    ));
                }
                parts[n % parts.len()].materialize(n)?
            }
            SequenceSpec::Transformed { base, transforms } => transforms
                .iter()
                .fold(base.materialize(n)?, |g, t| t.apply(g, n)),
        })
    }

    /// `g_n` for `n` in `start_index()..=horizon`.
    pub fn terms(&self, horizon: usize) -> Result<Vec<(usize, LampStand)>> {
        (self.start_index()..=horizon)
            .map(|n| self.materialize(n).map(|g| (n, g)))
            .collect()
    }
}

/// Concrete evidence that `f_n` does not settle at some point of `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: LampStand,
    pub values: [i64; 2],
    pub indices: [usize; 2],
    /// An `a, b, a` pattern was seen, not just a late change.
    pub recurring: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum LimitOutcome {
    /// `values[i]` is the limit at `K[i]`; the vector is constant from `since` on.
    Stabilized {
        values: Vec<i64>,
        since: usize,
    },
    Oscillating(Witness),
}

/// `f_n(x) = d(g_n, x) - d(g_n, id)` over `x` in `k` for `n` up to `horizon`.
pub fn empirical_limit(
    spec: &SequenceSpec,
    k: &[LampStand],
    horizon: usize,
    window: usize,
) -> Result<LimitOutcome> {
    if k.is_empty() {
        return Err(Error::Unsupported("empty evaluation set".into()));
    }
    if window == 0 || window >= horizon {
        return Err(Error::Unsupported(format!(
            "window {window} must lie in 1..{horizon}"
        )));
    }
    let terms = spec.terms(horizon)?;
    if terms.len() < window {
        return Err(Error::Unsupported(format!(
            "only {} terms up to horizon {horizon}, fewer than the window {window}",
            terms.len()
        )));
    }
    let id = LampStand::identity();
    let rows: Vec<(usize, Vec<i64>)> = terms
        .iter()
        .map(|(n, g)| {
            let base = dist(g, &id);
            (*n, k.iter().map(|x| dist(g, x) - base).collect())
        })
        .collect();

    let last = &rows[rows.len() - 1].1;
    let tail = &rows[rows.len() - window..];
    if tail.iter().all(|(_, v)| v == last) {
        let since = rows
            .iter()
            .rev()
            .take_while(|(_, v)| v == last)
            .last()
            .map(|(n, _)| *n)
            .expect("the last row matches itself");
        return Ok(LimitOutcome::Stabilized {
            values: last.clone(),
            since,
        });
    }

    let mut fallback = None;
    for (i, x) in k.iter().enumerate() {
        let series: Vec<(usize, i64)> = tail.iter().map(|(n, v)| (*n, v[i])).collect();
        if let Some(w) = recurring_pattern(&series) {
            return Ok(LimitOutcome::Oscillating(Witness {
                x: x.clone(),
                values: [w.1, w.3],
                indices: [w.0, w.2],
                recurring: true,
            }));
        }
        if fallback.is_none() {
            if let Some(j) = series.windows(2).position(|p| p[0].1 != p[1].1) {
                fallback = Some(Witness {
                    x: x.clone(),
                    values: [series[j].1, series[j + 1].1],
                    indices: [series[j].0, series[j + 1].0],
                    recurring: false,
                });
            }
        }
    }
    Ok(LimitOutcome::Oscillating(
        fallback.expect("a non-constant tail has a changing coordinate"),
    ))
}

/// First `(n_a, a, n_b, b)` with `a` seen, then `b != a`, then `a` again.
fn recurring_pattern(series: &[(usize, i64)]) -> Option<(usize, i64, usize, i64)> {
    for (i, &(ni, a)) in series.iter().enumerate() {
        for (j, &(nj, b)) in series.iter().enumerate().skip(i + 1) {
            if b != a && series[j + 1..].iter().any(|&(_, c)| c == a) {
                return Some((ni, a, nj, b));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum HeightLimit {
    Finite(i64),
    PlusInfinity,
    MinusInfinity,
    /// Two subsequences with different trends; the indices of one term of each.
    Divergent([usize; 2]),
    /// The horizon is too short to tell.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub height_limit: HeightLimit,
    pub left_stable: bool,
    pub right_stable: bool,
    /// Some late term extends further both left and right than every early term.
    pub both_sides_unbounded: bool,
    /// First index of the late half and the horizon.
    pub window: (usize, usize),
    /// Lowest and highest lamp lit anywhere in the horizon.
    pub lamp_range: (ExtInt, ExtInt),
    /// Positions whose lamp changed status at least three times.
    pub flicker_positions: BTreeSet<i64>,
}

struct Inspection {
    terms: Vec<(usize, LampStand)>,
    mid: usize,
}

impl Inspection {
    fn new(spec: &SequenceSpec, horizon: usize) -> Result<Self> {
        let start = spec.start_index();
        if horizon < 4 || horizon < start + 4 {
            return Err(Error::Unsupported(format!(
                "horizon {horizon} too short for a sequence starting at {start}"
            )));
        }
        let terms = spec.terms(horizon)?;
        let mid = terms.len() / 2;
        Ok(Inspection { terms, mid })
    }

    fn early(&self) -> &[(usize, LampStand)] {
        &self.terms[..self.mid]
    }

    fn late(&self) -> &[(usize, LampStand)] {
        &self.terms[self.mid..]
    }

    fn last(&self) -> &LampStand {
        &self.terms[self.terms.len() - 1].1
    }

    fn horizon(&self) -> usize {
        self.terms[self.terms.len() - 1].0
    }

    fn height_limit(&self) -> HeightLimit {
        let late: Vec<(usize, i64)> = self.late().iter().map(|(n, g)| (*n, g.height())).collect();
        let early: Vec<i64> = self.early().iter().map(|(_, g)| g.height()).collect();
        let (h_mid, h_last) = (late[0].1, late[late.len() - 1].1);
        if late.iter().all(|&(_, h)| h == h_last) {
            return HeightLimit::Finite(h_last);
        }
        let early_max = early.iter().copied().max().unwrap_or(i64::MIN);
        let early_min = early.iter().copied().min().unwrap_or(i64::MAX);
        let late_max = late.iter().map(|p| p.1).max().unwrap();
        let late_min = late.iter().map(|p| p.1).min().unwrap();
        let span = (late.len() / 2) as i64;
        let half = self.horizon() as i64 / 2;

        // one representative index per witnessed trend; a bounded trend is a
        // height hit at least three times, so a single turnaround is not one
        let mut trends: Vec<usize> = Vec::new();
        let mut seen = BTreeSet::new();
        for &(n, h) in &late {
            if late.iter().filter(|&&(_, x)| x == h).count() >= 3 && seen.insert(h) {
                trends.push(n);
            }
        }
        if late_max > early_max && late_max >= half {
            trends.push(late.iter().find(|p| p.1 == late_max).unwrap().0);
        }
        if late_min < early_min && late_min <= -half {
            trends.push(late.iter().find(|p| p.1 == late_min).unwrap().0);
        }
        if trends.len() >= 2 {
            return HeightLimit::Divergent([trends[0], trends[1]]);
        }
        if late_min > early_max && h_last - h_mid >= span {
            return HeightLimit::PlusInfinity;
        }
        if late_max < early_min && h_mid - h_last >= span {
            return HeightLimit::MinusInfinity;
        }
        HeightLimit::Undetermined
    }

    fn report(&self) -> StabilityReport {
        let min_of = |s: &[(usize, LampStand)]| {
            ExtInt::min_of(s.iter().map(|(_, g)| g.min_lit()).chain([ExtInt::PosInf]))
        };
        let max_of = |s: &[(usize, LampStand)]| {
            ExtInt::max_of(s.iter().map(|(_, g)| g.max_lit()).chain([ExtInt::NegInf]))
        };
        let spread = |g: &LampStand| ExtInt::min_of([-g.min_lit(), g.max_lit()]);
        let early_spread = ExtInt::max_of(
            self.early()
                .iter()
                .map(|(_, g)| spread(g))
                .chain([ExtInt::NegInf]),
        );
        let late_spread = ExtInt::max_of(self.late().iter().map(|(_, g)| spread(g)));

        let mut changes: std::collections::BTreeMap<i64, usize> = Default::default();
        for pair in self.terms.windows(2) {
            for &p in pair[0].1.lit().symmetric_difference(pair[1].1.lit()) {
                *changes.entry(p).or_default() += 1;
            }
        }

        StabilityReport {
            height_limit: self.height_limit(),
            left_stable: min_of(self.late()) >= min_of(self.early()),
            right_stable: max_of(self.late()) <= max_of(self.early()),
            both_sides_unbounded: late_spread > early_spread && late_spread.is_finite(),
            window: (self.late()[0].0, self.horizon()),
            lamp_range: (min_of(&self.terms), max_of(&self.terms)),
            flicker_positions: changes
                .into_iter()
                .filter(|&(_, c)| c >= 3)
                .map(|(p, _)| p)
                .collect(),
        }
    }

    /// Whether the lamps selected by `keep` are identical across the late half.
    fn late_constant_on(&self, keep: impl Fn(i64) -> bool + Copy) -> bool {
        let reference = self.last().retain_lamps(keep);
        self.late()
            .iter()
            .all(|(_, g)| g.retain_lamps(keep).lit() == reference.lit())
    }
}

pub fn stability_report(spec: &SequenceSpec, horizon: usize) -> Result<StabilityReport> {
    Ok(Inspection::new(spec, horizon)?.report())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Obstruction {
    /// The heights do not converge in `Z ∪ {±inf}`.
    DivergentHeight,
    /// Lamps run off in both directions but never in the same term.
    OneSidedConflict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Classification {
    /// `case` numbers the eight categories: point, Busemann +, Busemann -,
    /// spine, rib +, rib -, `H`, `-H`.
    Horofunction {
        case: u8,
        horofunction: Horofunction,
    },
    NoHorofunction {
        obstruction: Obstruction,
        witness: Option<Witness>,
    },
    Inconclusive {
        reason: String,
    },
}

impl Classification {
    pub fn horofunction(&self) -> Option<&Horofunction> {
        match self {
            Classification::Horofunction { horofunction, .. } => Some(horofunction),
            _ => None,
        }
    }

    /// One-line summary, e.g. `Spine(3)` or `RibPlus({-1};0)`.
    pub fn summary(&self) -> String {
        match self {
            Classification::Horofunction { horofunction, .. } => match horofunction {
                Horofunction::Point(g) => format!("Point({g})"),
                Horofunction::Spine(l) => format!("Spine({l})"),
                Horofunction::Rib(r) => format!("{}({})", horofunction.category(), r.payload()),
                Horofunction::Busemann(ray) => format!("{}({})", horofunction.category(), ray),
                Horofunction::Height(_) => horofunction.category().to_string(),
            },
            Classification::NoHorofunction { obstruction, .. } => {
                format!("NoHorofunction({obstruction:?})")
            }
            Classification::Inconclusive { .. } => "Inconclusive".to_string(),
        }
    }
}

fn found(case: u8, horofunction: Horofunction) -> Classification {
    Classification::Horofunction { case, horofunction }
}

fn rejected(spec: &SequenceSpec, horizon: usize, obstruction: Obstruction) -> Classification {
    let k = closed_ball(WITNESS_RADIUS);
    let window = DEFAULT_WINDOW.min(horizon / 2).max(1);
    let witness = match empirical_limit(spec, &k, horizon, window) {
        Ok(LimitOutcome::Oscillating(w)) => Some(w),
        _ => None,
    };
    Classification::NoHorofunction {
        obstruction,
        witness,
    }
}

fn flicker_note(reason: &str, report: &StabilityReport, keep: impl Fn(i64) -> bool) -> String {
    let seen: Vec<String> = report
        .flicker_positions
        .iter()
        .filter(|&&p| keep(p))
        .map(i64::to_string)
        .collect();
    if seen.is_empty() {
        reason.to_string()
    } else {
        format!("{reason}; flickering at {}", seen.join(","))
    }
}

fn inconclusive(reason: impl Into<String>) -> Classification {
    Classification::Inconclusive {
        reason: reason.into(),
    }
}

/// Decides which kind of horofunction `(g_n)` converges to, if any.
pub fn classify(spec: &SequenceSpec, horizon: usize) -> Result<Classification> {
    let ins = Inspection::new(spec, horizon)?;
    let report = ins.report();
    let last = ins.last();

    Ok(match report.height_limit {
        HeightLimit::Divergent(_) => rejected(spec, horizon, Obstruction::DivergentHeight),
        HeightLimit::Undetermined => inconclusive("height trend not settled within the horizon"),
        HeightLimit::Finite(l) => match (report.left_stable, report.right_stable) {
            (true, true) => {
                if ins.late().iter().all(|(_, g)| g == last) {
                    found(1, Horofunction::Point(last.clone()))
                } else {
                    inconclusive(flicker_note(
                        "bounded sequence not yet constant",
                        &report,
                        |_| true,
                    ))
                }
            }
            (true, false) => {
                if ins.late_constant_on(|p| p < l) {
                    found(5, Horofunction::Rib(Rib::normalized(Direction::Plus, last)))
                } else {
                    inconclusive(flicker_note(
                        "lamps below the height not yet settled",
                        &report,
                        |p| p < l,
                    ))
                }
            }
            (false, true) => {
                if ins.late_constant_on(|p| p >= l) {
                    found(
                        6,
                        Horofunction::Rib(Rib::normalized(Direction::Minus, last)),
                    )
                } else {
                    inconclusive(flicker_note(
                        "lamps at or above the height not yet settled",
                        &report,
                        |p| p >= l,
                    ))
                }
            }
            (false, false) => {
                if report.both_sides_unbounded {
                    found(4, Horofunction::Spine(l))
                } else {
                    rejected(spec, horizon, Obstruction::OneSidedConflict)
                }
            }
        },
        HeightLimit::PlusInfinity => {
            if !report.left_stable {
                found(7, Horofunction::height_plus())
            } else {
                let floor = ins.late().iter().map(|(_, g)| g.height()).min().unwrap();
                if ins.late_constant_on(|p| p < floor) {
                    let h = last.height();
                    let lamps = last.lit().iter().copied().filter(|&p| p < h);
                    found(2, Horofunction::busemann(BoundaryRay::plus(lamps)))
                } else {
                    inconclusive("lamps behind the lamplighter not yet settled")
                }
            }
        }
        HeightLimit::MinusInfinity => {
            if !report.right_stable {
                found(8, Horofunction::height_minus())
            } else {
                let ceiling = ins.late().iter().map(|(_, g)| g.height()).max().unwrap();
                if ins.late_constant_on(|p| p >= ceiling) {
                    let h = last.height();
                    let lamps = last.lit().iter().copied().filter(|&p| p >= h);
                    found(3, Horofunction::busemann(BoundaryRay::minus(lamps)))
                } else {
                    inconclusive("lamps behind the lamplighter not yet settled")
                }
            }
        }
    })
}

/// The model sequence whose limit is `h`, for every boundary family.
/// Points map to the constant sequence.
pub fn model_sequence(h: &Horofunction) -> SequenceSpec {
    match h {
        Horofunction::Point(g) => SequenceSpec::Explicit {
            prefix: vec![],
            repeat: vec![g.clone()],
        },
        Horofunction::Spine(l) => SequenceSpec::Spine { l: *l },
        Horofunction::Rib(r) => match r.direction() {
            Direction::Plus => SequenceSpec::RibPlus {
                f: r.payload().clone(),
            },
            Direction::Minus => SequenceSpec::RibMinus {
                f: r.payload().clone(),
            },
        },
        Horofunction::Busemann(ray) => SequenceSpec::Ray { ray: ray.clone() },
        Horofunction::Height(d) => SequenceSpec::Height { sign: *d },
    }
}
