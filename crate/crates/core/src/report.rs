//! Run reports and the JSON forms of point sets.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{canonical_maximal_set, CatalogEntry};
use crate::certificate::{maximality_certificate, Tier};
use crate::error::{Error, Result};
use crate::json::{matrix_from_json, matrix_to_json};
use crate::pool::{make_pool, SearchConfig};
use crate::search::{enumerate_maximal_classes, two_number, weyl_pool};
use crate::space::{AntipodalSet, Method, SpaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl Status {
    pub fn compare(found: u64, expected: Option<u64>) -> Status {
        match expected {
            None => Status::Unknown,
            Some(e) if e == found => Status::Pass,
            Some(_) => Status::Fail,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        }
    }
}

/// {"space": id, "points": [matrix, ...]}.
pub fn set_to_json(space_id: &str, x: &AntipodalSet) -> Value {
    json!({"space": space_id, "points": x.points.iter().map(|p| matrix_to_json(&p.rep)).collect::<Vec<_>>()})
}

/// Reads a point set; a "space" field, when present, must name the given space.
pub fn set_from_json(v: &Value, space: &SpaceModel, space_id: &str) -> Result<AntipodalSet> {
    if let Some(id) = v.get("space").and_then(Value::as_str) {
        if id != space_id {
            return Err(Error::SpecMismatch(format!("point file is for {id}, not {space_id}")));
        }
    }
    let pts = v.get("points").and_then(Value::as_array).ok_or_else(|| Error::Parse("expected a \"points\" array".into()))?;
    let a = &space.ambient;
    let points = pts
        .iter()
        .map(|m| space.point(&matrix_from_json(m, a.kind(), a.conductor)?))
        .collect::<Result<Vec<_>>>()?;
    space.make_set(points)
}

#[derive(Debug, Clone, Serialize)]
pub struct PoolStats {
    pub size: usize,
    pub generators: usize,
    pub unit_order: u32,
    pub monomial_only: bool,
    /// Decimal string of the generating group order.
    pub generating_group_order: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountCheck {
    pub found: u64,
    pub expected: Option<u64>,
    pub status: Status,
    pub tier: Tier,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub size: usize,
    pub tier: Tier,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub space: String,
    pub label: String,
    pub group: String,
    pub config: SearchConfig,
    pub pool: PoolStats,
    pub two_number: CountCheck,
    pub greedy_best: usize,
    pub maximal_set: Value,
    pub canonical_set: Option<CountCheck>,
    pub classes: Vec<ClassSummary>,
    pub class_count_status: Status,
    pub weyl_pool_order: Option<usize>,
    pub overall: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u128)>>,
}

fn tier_of(space: &SpaceModel, x: &AntipodalSet, pool: &crate::pool::SearchPool) -> Result<Tier> {
    Ok(match maximality_certificate(space, x, Some(pool)) {
        Ok(c) => c.verdict,
        Err(Error::WitnessUnavailable(_)) => Tier::PoolMaximal,
        Err(e) => return Err(e),
    })
}

/// Runs the full pipeline on a catalog entry.
pub fn run_report(entry: &CatalogEntry, config: &SearchConfig, timings: bool) -> Result<RunReport> {
    let mut marks: Vec<(String, u128)> = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, marks: &mut Vec<(String, u128)>| {
        marks.push((name.to_string(), clock.elapsed().as_millis()));
        clock = Instant::now();
    };
    let space = entry.space()?;
    let pool = make_pool(&space, config)?;
    lap("pool", &mut marks);
    let tn = two_number(&space, &pool, config.restarts, config.seed)?;
    let tier = tier_of(&space, &tn.set, &pool)?;
    let two = CountCheck { found: tn.value as u64, expected: entry.expected, status: Status::compare(tn.value as u64, entry.expected), tier };
    lap("two_number", &mut marks);
    let canonical = match canonical_maximal_set(entry) {
        Ok(x) => {
            let ok = space.is_antipodal_set(&x, Method::Pairwise)?.antipodal;
            let mut check = CountCheck {
                found: x.len() as u64,
                expected: entry.expected,
                status: Status::compare(x.len() as u64, entry.expected),
                tier: tier_of(&space, &x, &pool)?,
            };
            if !ok {
                check.status = Status::Fail;
            }
            Some(check)
        }
        Err(Error::NoRecipe(_)) => None,
        Err(e) => return Err(e),
    };
    let classes = enumerate_maximal_classes(&space, &pool)?
        .iter()
        .map(|c| Ok(ClassSummary { size: c.len(), tier: tier_of(&space, c, &pool)? }))
        .collect::<Result<Vec<_>>>()?;
    let class_count_status = match entry.expected {
        Some(_) if classes.len() == 1 => Status::Pass,
        Some(_) => Status::Fail,
        None => Status::Unknown,
    };
    lap("classes", &mut marks);
    let weyl_pool_order = weyl_pool(&space, &tn.set, &pool).ok().map(|w| w.order);
    lap("weyl", &mut marks);
    let statuses = [Some(two.status), canonical.as_ref().map(|c| c.status), Some(class_count_status)];
    let overall = if statuses.iter().flatten().any(|s| *s == Status::Fail) {
        Status::Fail
    } else if entry.expected.is_some() {
        Status::Pass
    } else {
        Status::Unknown
    };
    Ok(RunReport {
        space: entry.id.clone(),
        label: entry.label.name().to_string(),
        group: entry.group.to_string(),
        config: config.clone(),
        pool: PoolStats {
            size: pool.len(),
            generators: pool.generators().len(),
            unit_order: pool.unit_order,
            monomial_only: pool.monomial_only,
            generating_group_order: pool.monomial_group_order().map(|o| o.to_string()),
        },
        two_number: two,
        greedy_best: tn.greedy_value,
        maximal_set: set_to_json(&entry.id, &tn.set),
        canonical_set: canonical,
        classes,
        class_count_status,
        weyl_pool_order,
        overall,
        timings_ms: timings.then_some(marks),
    })
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report fields serialize")
    }

    pub fn to_markdown(&self) -> String {
        let opt = |v: Option<u64>| v.map_or("unknown".to_string(), |x| x.to_string());
        let mut s = String::new();
        let _ = writeln!(s, "# Antipodal report: {}\n", self.space);
        let _ = writeln!(s, "- label: {}\n- group: {}", self.label, self.group);
        let c = &self.config;
        let _ = writeln!(
            s,
            "- config: unit_order {}, pool_cap {}, restarts {}, rank_limit {}, monomial_only {}, seed {}\n",
            c.unit_order, c.pool_cap, c.restarts, c.rank_limit, c.monomial_only, c.seed
        );
        let _ = writeln!(s, "## Pool\n");
        let _ = writeln!(
            s,
            "{} points from {} generators (unit order {}, generating group order {})\n",
            self.pool.size,
            self.pool.generators,
            self.pool.unit_order,
            self.pool.generating_group_order.as_deref().unwrap_or("not tracked")
        );
        let _ = writeln!(s, "## Counts\n\n| check | found | expected | tier | status |\n|---|---|---|---|---|");
        let t = &self.two_number;
        let _ = writeln!(s, "| 2-number | {} | {} | {} | {} |", t.found, opt(t.expected), t.tier.name(), t.status.name());
        if let Some(k) = &self.canonical_set {
            let _ = writeln!(s, "| canonical set | {} | {} | {} | {} |", k.found, opt(k.expected), k.tier.name(), k.status.name());
        }
        let _ = writeln!(s, "| classes | {} | {} | - | {} |", self.classes.len(), if t.expected.is_some() { "1" } else { "unknown" }, self.class_count_status.name());
        let _ = writeln!(s, "\nGreedy restarts reached {}.\n", self.greedy_best);
        let _ = writeln!(s, "## Classes\n");
        for (i, cl) in self.classes.iter().enumerate() {
            let _ = writeln!(s, "- class {i}: size {}, {}", cl.size, cl.tier.name());
        }
        let w = self.weyl_pool_order.map_or("unavailable".to_string(), |o| o.to_string());
        let _ = writeln!(s, "\n## Weyl group\n\npool-level order {w}\n");
        if let Some(tm) = &self.timings_ms {
            let _ = writeln!(s, "## Timings (ms)\n");
            for (k, v) in tm {
                let _ = writeln!(s, "- {k}: {v}");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "**Overall: {}**", self.overall.name());
        s
    }
}
