//! Job files, reports and the parameter sweep behind the `ellbundle` binary.

pub mod parse;
pub mod report;
pub mod sweep;

use ellbundle_core::bundles::{
    sections_direct_sum, sections_kernel, sections_monad, DirectSumPresentation, KernelPresentation, MonadPresentation,
    SectionSystem,
};
use ellbundle_core::elliptic::{Divisor, MarkedCurve};
use ellbundle_core::funcspace::rr_basis;
use ellbundle_core::stability::{
    fully_split_test, general_twist_spectral, spectral_divisor, splitting_type, FullySplitOutcome, Verdict,
};

pub use parse::{parse_divisor, parse_job, print_job, Job, ParseError, Presentation};
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid job: {0}")]
    Semantic(#[from] ellbundle_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Parse(_) => "ParseError",
            CliError::Semantic(_) => "InvalidJob",
            CliError::Usage(_) => "Usage",
        }
    }
}

/// Core objects built from a job, after the semantic checks.
pub enum Built {
    DirectSum(DirectSumPresentation),
    Kernel(KernelPresentation),
    Monad(MonadPresentation),
}

impl Built {
    pub fn kind(&self) -> &'static str {
        match self {
            Built::DirectSum(_) => "direct_sum",
            Built::Kernel(_) => "kernel",
            Built::Monad(_) => "monad",
        }
    }
}

pub fn marked_curve(job: &Job) -> Result<MarkedCurve, CliError> {
    Ok(MarkedCurve::new(job.curve.clone(), job.mark.clone())?)
}

pub fn build(job: &Job) -> Result<Built, CliError> {
    let mc = marked_curve(job)?;
    Ok(match &job.presentation {
        Presentation::None => return Err(CliError::Usage("the job has no presentation".into())),
        Presentation::DirectSum { summands } => Built::DirectSum(DirectSumPresentation::new(mc, summands.clone())?),
        Presentation::Kernel { ambient, target, g } => {
            Built::Kernel(KernelPresentation::new(mc, ambient.clone(), target.clone(), g.clone())?)
        }
        Presentation::Monad { ambient, target, g, f } => {
            let kp = KernelPresentation::new(mc, ambient.clone(), target.clone(), g.clone())?;
            Built::Monad(MonadPresentation::new(kp, f.clone())?)
        }
    })
}

/// Sections of `V(mark)`.
pub fn sections(built: &Built) -> Result<SectionSystem, CliError> {
    Ok(match built {
        Built::DirectSum(p) => sections_direct_sum(p, &p.mc.mark_divisor())?,
        Built::Kernel(p) => sections_kernel(p, &p.mc.mark_divisor())?,
        Built::Monad(p) => sections_monad(p, &p.mc().mark_divisor())?,
    })
}

fn effective_twist(job: &Job, over: Option<&Divisor>) -> Option<Divisor> {
    let t = over.or(job.twist.as_ref())?;
    let mark = Divisor::from_point(&job.curve, &job.mark, 1);
    (*t != mark).then(|| t.clone())
}

/// Runs the splitting-type engine and the fully-split test and merges them.
pub fn analyze(job: &Job, twist: Option<&Divisor>) -> Result<Report, CliError> {
    let e = &job.curve;
    let built = build(job)?;
    let ss = sections(&built)?;
    let st = splitting_type(&ss)?;
    let fs = fully_split_test(&ss)?;
    let mut rep = Report {
        curve: e.to_string(),
        field: e.field().to_string(),
        mark: e.fmt_point(&job.mark),
        presentation: built.kind().into(),
        rank: st.rank,
        section_count: st.section_count,
        verdict: "NotSemistable".into(),
        reason: None,
        spectral: None,
        fully_split: None,
        fully_split_test: match &fs {
            FullySplitOutcome::FullySplit { .. } => "fully_split".into(),
            FullySplitOutcome::NotFullySplit(c) => format!("not_fully_split({})", c.tag()),
            FullySplitOutcome::NotSemistable(r) => format!("not_semistable({})", r.tag()),
        },
        splitting_type: Vec::new(),
        places: Vec::new(),
        slope_audit: None,
        monad: None,
        twist: None,
    };
    let mut sigma = None;
    match &st.verdict {
        Verdict::NotSemistable(r) => rep.reason = Some(r.tag().into()),
        Verdict::Semistable(rec) => {
            let lc = &rec.split_curve;
            rep.verdict = "Semistable".into();
            rep.spectral = Some(report::Spectral {
                divisor: rec.spectral_divisor.fmt(e),
                degree: rec.spectral_divisor.degree(),
                split_field: lc.field().to_string(),
                points: rec
                    .places
                    .iter()
                    .map(|p| report::PointMult { point: lc.fmt_point(&p.point), multiplicity: p.multiplicity })
                    .collect(),
            });
            rep.fully_split = Some(rec.fully_split);
            rep.splitting_type = rec
                .splitting
                .factors
                .iter()
                .map(|f| report::Factor { point: lc.fmt_point(&f.point), rank: f.rank })
                .collect();
            rep.places = rec
                .places
                .iter()
                .map(|p| report::PlaceRow {
                    point: lc.fmt_point(&p.point),
                    multiplicity: p.multiplicity,
                    ranks: p.ranks.clone(),
                    filtration: p.filtration.clone(),
                    delta: p.profile.delta.clone(),
                    exponents: p.profile.exponents.clone(),
                    kernel_dimension: p.kernel.d,
                })
                .collect();
            rep.slope_audit = Some(report::Audit { checks: rec.audit.checks, violations: rec.audit.violations });
            sigma = Some(rec.spectral_divisor.clone());
        }
    }
    if let Built::Monad(mp) = &built {
        let mark = mp.mc().mark_divisor();
        let kernel = sections_kernel(&mp.kernel, &mark)?;
        let sk = spectral_divisor(&kernel).ok();
        let diff = match (&sk, &sigma) {
            (Some(a), Some(b)) => Some(a.sub(b)),
            _ => None,
        };
        rep.monad = Some(report::MonadShift {
            s: mp.s(),
            kernel_spectral: sk.as_ref().map(|d| d.fmt(e)),
            cohomology_spectral: sigma.as_ref().map(|d| d.fmt(e)),
            difference: diff.as_ref().map(|d| d.fmt(e)),
            shift_holds: diff.map(|d| d == mark.scale(mp.s() as i64)),
        });
    }
    if let Some(d) = effective_twist(job, twist) {
        let Built::DirectSum(p) = &built else {
            return Err(CliError::Usage("a twist other than 1*(mark) needs a direct-sum presentation".into()));
        };
        let g = general_twist_spectral(p, &d)?;
        rep.twist = Some(report::Twist {
            divisor: d.fmt(e),
            spectral_divisor: g.spectral_divisor.fmt(e),
            dim_g: g.dim_g,
            canonical_basis: g.canonical_basis,
            agrees: sigma.as_ref().map(|s| *s == g.spectral_divisor),
        });
    }
    Ok(rep)
}

/// Exit status as a function of the verdict.
pub fn exit_code(rep: &Report) -> i32 {
    if rep.is_semistable() {
        0
    } else {
        2
    }
}

/// Text output of `spectral`, and whether a spectral divisor exists.
pub fn spectral_text(job: &Job) -> Result<(String, bool), CliError> {
    let e = &job.curve;
    let built = build(job)?;
    let ss = sections(&built)?;
    let mut out = format!("mark {}\n", e.fmt_point(&job.mark));
    let sigma = match spectral_divisor(&ss) {
        Ok(d) => {
            out.push_str(&format!("spectral {}\n", d.fmt(e)));
            Some(d)
        }
        Err(ellbundle_core::Error::SectionCountMismatch { expected, found }) => {
            out.push_str(&format!("not semistable: SectionCountMismatch (expected {expected}, found {found})\n"));
            None
        }
        Err(ellbundle_core::Error::TopWedgeVanishes) => {
            out.push_str("not semistable: TopWedgeVanishes\n");
            None
        }
        Err(err) => return Err(err.into()),
    };
    if let Built::Monad(mp) = &built {
        let kernel = sections_kernel(&mp.kernel, &mp.mc().mark_divisor())?;
        match spectral_divisor(&kernel) {
            Ok(d) => out.push_str(&format!("kernel {}\n", d.fmt(e))),
            Err(_) => out.push_str("kernel -\n"),
        }
    }
    Ok((out, sigma.is_some()))
}

/// Text output of `rr`: a basis of `L(D)` for the job's `divisor` line.
pub fn rr_text(job: &Job) -> Result<String, CliError> {
    let d = job
        .divisor
        .as_ref()
        .ok_or_else(|| CliError::Usage("rr needs a 'divisor' line in the job".into()))?;
    let b = rr_basis(&job.curve, d)?;
    let mut out = format!("divisor {}\ndim {}\n", d.fmt(&job.curve), b.dim());
    for f in b.basis() {
        out.push_str(&format!("{f}\n"));
    }
    Ok(out)
}
