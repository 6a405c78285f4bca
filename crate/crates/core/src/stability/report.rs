//! Result types of the stability analysis.

use crate::elliptic::{Curve, Divisor, Place, Point};
use crate::galois::Fe;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotSemistableReason {
    SectionCountMismatch { expected: usize, found: usize },
    TopWedgeVanishes,
}

impl NotSemistableReason {
    pub fn tag(&self) -> &'static str {
        match self {
            NotSemistableReason::SectionCountMismatch { .. } => "SectionCountMismatch",
            NotSemistableReason::TopWedgeVanishes => "TopWedgeVanishes",
        }
    }
}

/// Wedge valuations `delta_1..delta_r` along an adapted ordering, and the
/// nonzero-or-zero elementary exponents of the quotient evaluation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeProfile {
    pub place: Place,
    pub delta: Vec<i64>,
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelData {
    pub place: Place,
    pub d: usize,
    /// Coefficient vectors (in the section basis) spanning `K_t`.
    pub kernel_basis: Vec<Vec<Fe>>,
    /// First-order coefficient vectors of the kernel sections, in the
    /// trivialized fiber.
    pub limit_directions: Vec<Vec<Fe>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SplitFactor {
    pub point: Point,
    pub rank: usize,
}

/// `V = sum_i O(q_i - p) (x) F_{r_i}` over the field of `curve`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingType {
    pub curve: Curve,
    pub mark: Point,
    pub factors: Vec<SplitFactor>,
}

impl SplittingType {
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn is_fully_split(&self) -> bool {
        self.factors.iter().all(|f| f.rank == 1)
    }

    /// `sum r_i (q_i)` over the splitting field.
    pub fn divisor(&self) -> Divisor {
        let mut d = Divisor::zero();
        for f in &self.factors {
            d.add_term(Place::from_point(&self.curve, &f.point), f.rank as i64);
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceAnalysis {
    pub place: Place,
    pub point: Point,
    pub multiplicity: i64,
    /// Ranks of the `F_r` factors at this point.
    pub ranks: Vec<usize>,
    /// `dim K_1 < dim K_2 < ...` of the certificate filtration.
    pub filtration: Vec<usize>,
    pub profile: WedgeProfile,
    pub kernel: KernelData,
}

/// Counters of slope-bound checks made during an analysis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SlopeAudit {
    pub checks: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistableRecord {
    /// Place-level divisor over the base field.
    pub spectral_divisor: Divisor,
    /// The curve over the field splitting the spectral support.
    pub split_curve: Curve,
    pub fully_split: bool,
    pub splitting: SplittingType,
    pub places: Vec<PlaceAnalysis>,
    pub audit: SlopeAudit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Semistable(Box<SemistableRecord>),
    NotSemistable(NotSemistableReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub rank: usize,
    pub section_count: usize,
    pub mark: Point,
    pub verdict: Verdict,
}

impl StabilityReport {
    pub fn is_semistable(&self) -> bool {
        matches!(self.verdict, Verdict::Semistable(_))
    }

    pub fn record(&self) -> Option<&SemistableRecord> {
        match &self.verdict {
            Verdict::Semistable(r) => Some(r),
            Verdict::NotSemistable(_) => None,
        }
    }
}

/// Which of the fully-split conditions failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitCondition {
    /// `sum_t d_t = r`
    KernelCount,
    /// `mult_t = d_t`
    WedgeOrder,
    /// stacked relation matrix nonsingular
    Relations,
}

impl SplitCondition {
    pub fn tag(&self) -> &'static str {
        match self {
            SplitCondition::KernelCount => "a",
            SplitCondition::WedgeOrder => "b",
            SplitCondition::Relations => "c",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FullySplitOutcome {
    NotSemistable(NotSemistableReason),
    /// Semistable and `V = sum_t O(t - p)^{d_t}`; points over the field of `curve`.
    FullySplit { curve: Curve, points: Vec<(Point, usize)> },
    NotFullySplit(SplitCondition),
}
