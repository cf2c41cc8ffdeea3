use std::fmt;
use std::fmt::Write as _;

use serde_json::{json, Value};

use lamplighter::action::{act, fixed_rays, north_south_probe};
use lamplighter::classify::{
    classify, empirical_limit, stability_report, Classification, LimitOutcome, SequenceSpec,
};
use lamplighter::horofn::{enumerate_rib_class, rib_class_size};
use lamplighter::lamp::format_word;
use lamplighter::metric::{closed_ball, distance, geodesic_witness};
use lamplighter::oracle::{bfs_ball_capped, export_dot};
use lamplighter::topology::{converges_to, Convergence, HorofunctionFamily};
use lamplighter::{Error, ExtInt, Horofunction, LampStand};

use crate::{Cli, Command, Global};

const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub struct CliError {
    context: Option<String>,
    error: Error,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self.error {
            Error::ResourceLimit { .. } => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.context {
            Some(c) => write!(f, "{c}: {}", self.error),
            None => write!(f, "{}", self.error),
        }
    }
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        CliError {
            context: None,
            error,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn in_arg<T>(name: &str, text: &str, r: lamplighter::Result<T>) -> Result<T> {
    r.map_err(|error| CliError {
        context: Some(format!("{name} `{text}`")),
        error,
    })
}

fn lamp_stand(name: &str, text: &str) -> Result<LampStand> {
    in_arg(name, text, LampStand::parse(text))
}

fn horofunction(name: &str, text: &str) -> Result<Horofunction> {
    in_arg(name, text, Horofunction::parse(text))
}

fn cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        return Err(Error::ResourceLimit {
            what,
            requested,
            cap,
        }
        .into());
    }
    Ok(())
}

/// Text and JSON renderings of one command's result.
struct Report {
    verb: &'static str,
    text: String,
    records: Vec<Value>,
}

impl Report {
    fn new(verb: &'static str) -> Self {
        Report {
            verb,
            text: String::new(),
            records: Vec::new(),
        }
    }

    fn line(&mut self, s: impl fmt::Display) {
        let _ = writeln!(self.text, "{s}");
    }

    fn record(&mut self, mut v: Value) {
        let obj = v.as_object_mut().expect("records are objects");
        obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
        obj.insert("verb".into(), json!(self.verb));
        self.records.push(v);
    }

    fn render(self, json: bool) -> String {
        if !json {
            return self.text;
        }
        let mut out = String::new();
        for r in self.records {
            let _ = writeln!(out, "{r}");
        }
        out
    }
}

fn ball_points(global: &Global, radius: u32) -> Result<Vec<LampStand>> {
    cap("ball radius", radius as usize, global.max_radius as usize)?;
    Ok(closed_ball(radius))
}

fn opt(n: Option<usize>) -> String {
    n.map_or_else(|| "none".to_string(), |n| n.to_string())
}

pub fn run(cli: &Cli) -> Result<String> {
    let g = &cli.global;
    let report = match &cli.command {
        Command::Dist { g1, g2 } => {
            let (x, y) = (lamp_stand("g1", g1)?, lamp_stand("g2", g2)?);
            let bd = distance(&x, &y);
            let mut r = Report::new("dist");
            r.line(format_args!(
                "{} (A={} B={} C={})",
                bd.distance, bd.a, bd.b, bd.c
            ));
            r.record(
                json!({"g1": x, "g2": y, "distance": bd.distance, "a": bd.a, "b": bd.b, "c": bd.c}),
            );
            r
        }
        Command::Geodesic { g1, g2 } => {
            let (x, y) = (lamp_stand("g1", g1)?, lamp_stand("g2", g2)?);
            let word = format_word(&geodesic_witness(&x, &y));
            let length = distance(&x, &y).distance;
            let mut r = Report::new("geodesic");
            r.line(format_args!("{length}\t{word}"));
            r.record(json!({"g1": x, "g2": y, "length": length, "word": word}));
            r
        }
        Command::Ball { radius } => {
            let ball = bfs_ball_capped(*radius, g.max_radius)?;
            let mut r = Report::new("ball");
            for (x, d) in ball.iter() {
                r.line(format_args!("{d}\t{x}"));
                r.record(json!({"element": x, "distance": d}));
            }
            r
        }
        Command::Growth { radius } => {
            let ball = bfs_ball_capped(*radius, g.max_radius)?;
            let mut r = Report::new("growth");
            r.text = ball.growth_csv();
            let mut total = 0;
            for (radius, size) in ball.sphere_sizes().into_iter().enumerate() {
                total += size;
                r.record(json!({"radius": radius, "sphere_size": size, "ball_size": total}));
            }
            r
        }
        Command::ExportDot { radius } => {
            let ball = bfs_ball_capped(*radius, g.max_radius)?;
            let mut r = Report::new("export-dot");
            r.text = export_dot(&ball, *radius)?;
            r.record(json!({"radius": radius, "dot": r.text}));
            r
        }
        Command::HoroEval {
            horofunction: h,
            points,
        } => {
            let h = horofunction("horofunction", h)?;
            let xs = points
                .iter()
                .map(|p| lamp_stand("point", p))
                .collect::<Result<Vec<_>>>()?;
            let mut r = Report::new("horo-eval");
            for x in &xs {
                let v = h.eval(x);
                if xs.len() == 1 {
                    r.line(v);
                } else {
                    r.line(format_args!("{x}\t{v}"));
                }
                r.record(json!({"horofunction": h, "point": x, "value": v}));
            }
            r
        }
        Command::HoroLimit {
            spec,
            radius,
            horizon,
            window,
        } => {
            let s = in_arg("spec", spec, SequenceSpec::from_json(spec))?;
            cap("horizon", *horizon, g.max_horizon)?;
            let k = ball_points(g, *radius)?;
            let mut r = Report::new("horo-limit");
            match empirical_limit(&s, &k, *horizon, *window)? {
                LimitOutcome::Stabilized { values, since } => {
                    r.line(format_args!(
                        "stabilized since n={since} on {} points",
                        k.len()
                    ));
                    for (x, v) in k.iter().zip(&values) {
                        r.line(format_args!("{x}\t{v}"));
                    }
                    r.record(json!({
                        "outcome": "stabilized",
                        "since": since,
                        "points": k,
                        "values": values,
                    }));
                }
                LimitOutcome::Oscillating(w) => {
                    r.line(format_args!(
                        "oscillating at {}: {} (n={}) vs {} (n={}){}",
                        w.x,
                        w.values[0],
                        w.indices[0],
                        w.values[1],
                        w.indices[1],
                        if w.recurring { ", recurring" } else { "" }
                    ));
                    r.record(json!({"outcome": "oscillating", "witness": w}));
                }
            }
            r
        }
        Command::Classify { spec, horizon } => {
            let s = in_arg("spec", spec, SequenceSpec::from_json(spec))?;
            cap("horizon", *horizon, g.max_horizon)?;
            let c = classify(&s, *horizon)?;
            let report = stability_report(&s, *horizon)?;
            let mut r = Report::new("classify");
            match &c {
                Classification::Horofunction { .. } => r.line(c.summary()),
                Classification::NoHorofunction { witness, .. } => match witness {
                    Some(w) => r.line(format_args!(
                        "{} witness {}: {} (n={}) vs {} (n={})",
                        c.summary(),
                        w.x,
                        w.values[0],
                        w.indices[0],
                        w.values[1],
                        w.indices[1]
                    )),
                    None => r.line(c.summary()),
                },
                Classification::Inconclusive { reason } => {
                    r.line(format_args!("Inconclusive: {reason}"))
                }
            }
            r.record(json!({"summary": c.summary(), "classification": c, "stability": report}));
            r
        }
        Command::Act {
            g: x,
            horofunction: h,
        } => {
            let (x, h) = (lamp_stand("g", x)?, horofunction("horofunction", h)?);
            let image = act(&x, &h)?;
            let mut r = Report::new("act");
            r.line(&image);
            r.record(
                json!({"g": x, "horofunction": h, "result": image, "category": image.category()}),
            );
            r
        }
        Command::Orbit {
            g: x,
            horofunction: h,
            budget,
        } => {
            let (x, h) = (lamp_stand("g", x)?, horofunction("horofunction", h)?);
            cap("budget", *budget, g.max_budget)?;
            let mut r = Report::new("orbit");
            let mut cur = h;
            for n in 0..=*budget {
                if n > 0 {
                    cur = act(&x, &cur)?;
                }
                r.line(format_args!("{n}\t{cur}"));
                r.record(json!({"g": x, "n": n, "horofunction": cur}));
            }
            r
        }
        Command::Dynamics {
            g: x,
            horofunction: h,
            radius,
            budget,
            window,
        } => {
            let x = lamp_stand("g", x)?;
            cap("budget", *budget, g.max_budget)?;
            let rays = fixed_rays(&x, *window)?;
            let mut r = Report::new("dynamics");
            r.line(format_args!("attractor {}", rays.attractor));
            r.line(format_args!("repeller {}", rays.repeller));
            r.record(json!({"g": x, "attractor": rays.attractor, "repeller": rays.repeller}));
            if let Some(h) = h {
                let h = horofunction("horofunction", h)?;
                let k = ball_points(g, *radius)?;
                let p = north_south_probe(&x, &h, &k, *budget)?;
                r.line(format_args!("pole {}", p.pole));
                r.line(format_args!("reached {}", opt(p.reached)));
                r.line(format_args!("settled {}", opt(p.settled)));
                r.record(json!({
                    "g": x,
                    "start": p.start,
                    "pole": p.pole,
                    "radius": radius,
                    "reached": p.reached,
                    "settled": p.settled,
                    "trajectory": p.trajectory,
                }));
            }
            r
        }
        Command::TopologyLimit {
            family,
            radius,
            points,
            limit,
            budget,
        } => {
            let fam = in_arg("family", family, HorofunctionFamily::from_json(family))?;
            in_arg("family", family, fam.validate())?;
            cap("budget", *budget, g.max_budget)?;
            let k = match points {
                Some(p) => p
                    .split_whitespace()
                    .map(|t| lamp_stand("point", t))
                    .collect::<Result<Vec<_>>>()?,
                None => ball_points(g, *radius)?,
            };
            let lim = match limit {
                Some(l) => horofunction("limit", l)?,
                None => fam.expected_limit().ok_or_else(|| {
                    CliError::from(Error::Unsupported("explicit families need --limit".into()))
                })?,
            };
            let mut r = Report::new("topology-limit");
            let c = converges_to(|n| fam.term(n), &lim, &k, *budget)?;
            match &c {
                Convergence::ConvergedBy { n0 } => r.line(format_args!("ConvergedBy({n0})")),
                Convergence::NotWithinBudget { n, x, values } => r.line(format_args!(
                    "NotWithinBudget n={n} x={x} limit={} term={}",
                    values[0], values[1]
                )),
            }
            r.record(json!({"limit": lim, "points": k.len(), "budget": budget, "convergence": c}));
            r
        }
        Command::RibEnum { l, k, count } => {
            let kk: ExtInt = in_arg("k", k, k.parse())?;
            let size = rib_class_size(*l, kk);
            let mut r = Report::new("rib-enum");
            r.line(format_args!("size {size}"));
            let ribs = if *count {
                Vec::new()
            } else {
                enumerate_rib_class(*l, kk)?
            };
            for rib in &ribs {
                r.line(rib);
            }
            r.record(json!({"l": l, "k": kk, "size": size.to_string(), "ribs": ribs}));
            r
        }
    };
    Ok(report.render(g.json))
}
