//! Serializable reports. Field order is the key order of the JSON form.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub curve: String,
    pub field: String,
    pub mark: String,
    pub presentation: String,
    pub rank: usize,
    pub section_count: usize,
    pub verdict: String,
    pub reason: Option<String>,
    pub spectral: Option<Spectral>,
    pub fully_split: Option<bool>,
    pub fully_split_test: String,
    pub splitting_type: Vec<Factor>,
    pub places: Vec<PlaceRow>,
    pub slope_audit: Option<Audit>,
    pub monad: Option<MonadShift>,
    pub twist: Option<Twist>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectral {
    /// Place-level divisor over the base field.
    pub divisor: String,
    pub degree: i64,
    pub split_field: String,
    /// Point-level support over the split field.
    pub points: Vec<PointMult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointMult {
    pub point: String,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub point: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceRow {
    pub point: String,
    pub multiplicity: i64,
    pub ranks: Vec<usize>,
    pub filtration: Vec<usize>,
    pub delta: Vec<i64>,
    pub exponents: Vec<usize>,
    pub kernel_dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub checks: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonadShift {
    pub s: usize,
    /// Spectral divisor of `ker g` twisted by the mark.
    pub kernel_spectral: Option<String>,
    /// Spectral divisor of the cohomology bundle.
    pub cohomology_spectral: Option<String>,
    pub difference: Option<String>,
    pub shift_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub divisor: String,
    pub spectral_divisor: String,
    pub dim_g: usize,
    pub canonical_basis: bool,
    /// Agreement with the spectral divisor from the twist by the mark.
    pub agrees: Option<bool>,
}

impl Report {
    pub fn is_semistable(&self) -> bool {
        self.verdict == "Semistable"
    }

    /// `F_r at q` terms joined by `+`; `-` when not semistable.
    pub fn splitting_label(&self) -> String {
        if self.splitting_type.is_empty() {
            return if self.is_semistable() { "0".into() } else { "-".into() };
        }
        self.splitting_type.iter().map(|f| format!("F_{} at {}", f.rank, f.point)).collect::<Vec<_>>().join(" + ")
    }

    /// Ranks in decreasing order, e.g. `2+1`.
    pub fn shape(&self) -> String {
        let mut r: Vec<usize> = self.splitting_type.iter().map(|f| f.rank).collect();
        r.sort_unstable_by(|a, b| b.cmp(a));
        r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")
    }

    pub fn verdict_label(&self) -> String {
        match &self.reason {
            Some(r) => format!("{}({r})", self.verdict),
            None => self.verdict.clone(),
        }
    }

    /// Aligned human-readable form.
    pub fn human(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("curve".into(), self.curve.clone()),
            ("field".into(), self.field.clone()),
            ("mark".into(), self.mark.clone()),
            ("presentation".into(), self.presentation.clone()),
            ("rank".into(), self.rank.to_string()),
            ("sections".into(), self.section_count.to_string()),
            ("verdict".into(), self.verdict_label()),
        ];
        if let Some(s) = &self.spectral {
            rows.push(("spectral divisor".into(), s.divisor.clone()));
            rows.push(("split field".into(), s.split_field.clone()));
            let pts: Vec<String> = s.points.iter().map(|p| format!("{}*{}", p.multiplicity, p.point)).collect();
            rows.push(("spectral points".into(), pts.join(" + ")));
        }
        if let Some(fs) = self.fully_split {
            rows.push(("fully split".into(), fs.to_string()));
        }
        rows.push(("fully split test".into(), self.fully_split_test.clone()));
        if self.is_semistable() {
            rows.push(("splitting type".into(), self.splitting_label()));
        }
        if let Some(a) = &self.slope_audit {
            rows.push(("slope audit".into(), format!("{} checks, {} violations", a.checks, a.violations)));
        }
        if let Some(m) = &self.monad {
            rows.push(("monad s".into(), m.s.to_string()));
            let opt = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
            rows.push(("sigma ker g".into(), opt(&m.kernel_spectral)));
            rows.push(("sigma cohomology".into(), opt(&m.cohomology_spectral)));
            rows.push(("difference".into(), opt(&m.difference)));
            rows.push(("shift by s*(mark)".into(), m.shift_holds.map_or("-".into(), |b| b.to_string())));
        }
        if let Some(t) = &self.twist {
            rows.push(("twist".into(), t.divisor.clone()));
            rows.push(("twist spectral".into(), t.spectral_divisor.clone()));
            rows.push(("dim G".into(), t.dim_g.to_string()));
            rows.push(("canonical basis".into(), t.canonical_basis.to_string()));
            rows.push(("twists agree".into(), t.agrees.map_or("-".into(), |b| b.to_string())));
        }
        let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let mut out: String = rows.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect();
        if !self.places.is_empty() {
            out.push_str("places:\n");
            for p in &self.places {
                out.push_str(&format!(
                    "  {:<16} mult {}  ranks {:?}  filtration {:?}  delta {:?}  exponents {:?}  d {}\n",
                    p.point, p.multiplicity, p.ranks, p.filtration, p.delta, p.exponents, p.kernel_dimension
                ));
            }
        }
        out
    }
}
