//! Brute-force sweeps over `$name` coefficient slots in a job template.

use std::collections::{BTreeMap, BTreeSet};

use ellbundle_core::galois::Field;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{analyze, parse_job, CliError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub index: usize,
    pub assignment: Vec<(String, String)>,
    /// `ok`, `skipped` (invalid instantiation) or `error`.
    pub status: String,
    pub reason: Option<String>,
    pub verdict: Option<String>,
    pub splitting_type: Option<String>,
    pub shape: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub analyzed: usize,
    pub skipped: usize,
    pub errors: usize,
    pub verdicts: BTreeMap<String, usize>,
    pub shapes: BTreeMap<String, usize>,
    pub splitting_types: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// Slot names in order of first appearance.
pub fn slots(template: &str) -> Vec<String> {
    let mut seen = Vec::new();
    for (_, name) in slot_spans(template) {
        if !seen.contains(&name) {
            seen.push(name);
        }
    }
    seen
}

fn slot_spans(text: &str) -> Vec<(std::ops::Range<usize>, String)> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'$' {
            let j = (i + 1..b.len()).find(|&j| !(b[j].is_ascii_alphanumeric() || b[j] == b'_')).unwrap_or(b.len());
            if j > i + 1 {
                out.push((i..j, text[i + 1..j].to_string()));
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    out
}

pub fn substitute(template: &str, values: &BTreeMap<String, String>) -> String {
    let mut out = String::new();
    let mut last = 0;
    for (span, name) in slot_spans(template) {
        out.push_str(&template[last..span.start]);
        match values.get(&name) {
            Some(v) => out.push_str(&format!("({v})")),
            None => out.push_str(&template[span.clone()]),
        }
        last = span.end;
    }
    out.push_str(&template[last..]);
    out
}

/// `name=lo..hi` (inclusive integers), `name=a,b,c` or `name=all`; `all`
/// needs the field.
pub fn parse_slot(spec: &str, field: Option<&Field>) -> Result<(String, Vec<String>), CliError> {
    let bad = || CliError::Usage(format!("bad slot '{spec}': expected name=lo..hi, name=v1,v2,... or name=all"));
    let (name, range) = spec.split_once('=').ok_or_else(bad)?;
    let name = name.trim().trim_start_matches('$').to_string();
    if name.is_empty() {
        return Err(bad());
    }
    let range = range.trim();
    let values = if range == "all" {
        let field = field.ok_or_else(|| CliError::Usage("slot range 'all' needs a curve header without slots".into()))?;
        field.elements().map(|a| field.fmt_elem(&a)).collect()
    } else if let Some((lo, hi)) = range.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        (lo..=hi).map(|v| v.to_string()).collect()
    } else {
        range.split(',').map(|v| v.trim().to_string()).collect::<Vec<_>>()
    };
    if values.is_empty() || values.iter().any(|v| v.is_empty()) {
        return Err(bad());
    }
    Ok((name, values))
}

/// Instantiates every combination of slot values (first slot varies
/// slowest) and analyzes each in parallel; rows keep their index order.
pub fn run(template: &str, ranges: &[(String, Vec<String>)]) -> Result<Sweep, CliError> {
    let used = slots(template);
    for s in &used {
        if !ranges.iter().any(|(n, _)| n == s) {
            return Err(CliError::Usage(format!("slot ${s} has no range")));
        }
    }
    for (n, _) in ranges {
        if !used.contains(n) {
            return Err(CliError::Usage(format!("slot ${n} does not occur in the template")));
        }
    }
    let total: usize = ranges.iter().map(|r| r.1.len()).product();
    let rows: Vec<SweepRow> = (0..total)
        .into_par_iter()
        .map(|index| {
            let mut rem = index;
            let mut assignment = vec![(String::new(), String::new()); ranges.len()];
            for (k, (n, vs)) in ranges.iter().enumerate().rev() {
                assignment[k] = (n.clone(), vs[rem % vs.len()].clone());
                rem /= vs.len();
            }
            let values: BTreeMap<String, String> = assignment.iter().cloned().collect();
            let mut row = SweepRow {
                index,
                assignment,
                status: "ok".into(),
                reason: None,
                verdict: None,
                splitting_type: None,
                shape: None,
            };
            let text = substitute(template, &values);
            match parse_job(&text).map_err(CliError::from).and_then(|job| analyze(&job, None)) {
                Ok(rep) => {
                    row.verdict = Some(rep.verdict_label());
                    if rep.is_semistable() {
                        row.splitting_type = Some(rep.splitting_label());
                        row.shape = Some(rep.shape());
                    }
                }
                Err(e @ CliError::Semantic(ellbundle_core::Error::InternalInconsistency(_))) => {
                    row.status = "error".into();
                    row.reason = Some(e.to_string());
                }
                Err(e @ (CliError::Parse(_) | CliError::Semantic(_))) => {
                    row.status = "skipped".into();
                    row.reason = Some(e.to_string());
                }
                Err(e) => {
                    row.status = "error".into();
                    row.reason = Some(e.to_string());
                }
            }
            row
        })
        .collect();
    let mut summary = SweepSummary {
        rows: rows.len(),
        analyzed: 0,
        skipped: 0,
        errors: 0,
        verdicts: BTreeMap::new(),
        shapes: BTreeMap::new(),
        splitting_types: Vec::new(),
    };
    let mut types = BTreeSet::new();
    for r in &rows {
        match r.status.as_str() {
            "ok" => summary.analyzed += 1,
            "skipped" => summary.skipped += 1,
            _ => summary.errors += 1,
        }
        if let Some(v) = &r.verdict {
            *summary.verdicts.entry(v.clone()).or_default() += 1;
        }
        if let Some(s) = &r.shape {
            *summary.shapes.entry(s.clone()).or_default() += 1;
        }
        if let Some(t) = &r.splitting_type {
            types.insert(t.clone());
        }
    }
    summary.splitting_types = types.into_iter().collect();
    Ok(Sweep { rows, summary })
}

impl Sweep {
    pub fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let asg: Vec<String> = r.assignment.iter().map(|(n, v)| format!("{n}={v}")).collect();
            let detail = match r.status.as_str() {
                "ok" => format!(
                    "{}  {}",
                    r.verdict.as_deref().unwrap_or("-"),
                    r.splitting_type.as_deref().unwrap_or("")
                ),
                _ => format!("{}: {}", r.status, r.reason.as_deref().unwrap_or("")),
            };
            out.push_str(&format!("{:>5}  {:<24} {}\n", r.index, asg.join(" "), detail.trim_end()));
        }
        let s = &self.summary;
        out.push_str(&format!("rows {}  analyzed {}  skipped {}  errors {}\n", s.rows, s.analyzed, s.skipped, s.errors));
        for (v, n) in &s.verdicts {
            out.push_str(&format!("verdict {v}: {n}\n"));
        }
        for (v, n) in &s.shapes {
            out.push_str(&format!("shape {v}: {n}\n"));
        }
        out
    }
}
