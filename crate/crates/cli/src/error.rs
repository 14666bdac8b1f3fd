use curvegap::classify::ClassifyError;
use curvegap::curve::CurveError;
use curvegap::field::FieldError;
use curvegap::gapfn::GapError;
use curvegap::project::ProjectError;
use curvegap::schubert::SchubertError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_INDETERMINATE: i32 = 4;
pub const EXIT_STABILIZATION: i32 = 5;

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, kind: "validation", message: message.into() }
    }

    fn new(code: i32, message: impl ToString) -> Self {
        let kind = match code {
            EXIT_VALIDATION => "validation",
            EXIT_HYPOTHESIS => "hypothesis",
            EXIT_INDETERMINATE => "indeterminate-over-field",
            EXIT_STABILIZATION => "stabilization-cap",
            _ => "internal",
        };
        Self { code, kind, message: message.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::validation(e.to_string())
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        Self::validation(e.to_string())
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        Self::validation(e.to_string())
    }
}

fn gap_code(e: &GapError) -> i32 {
    match e {
        GapError::StabilizationCap { .. } => EXIT_STABILIZATION,
        GapError::NoUnit | GapError::Arity { .. } => EXIT_VALIDATION,
        _ => EXIT_INTERNAL,
    }
}

impl From<GapError> for CliError {
    fn from(e: GapError) -> Self {
        Self::new(gap_code(&e), e)
    }
}

fn classify_code(e: &ClassifyError) -> i32 {
    match e {
        ClassifyError::Gap(g) => gap_code(g),
        ClassifyError::UnknownLabel(_) | ClassifyError::NoUnit | ClassifyError::TooManyBranches(_) => EXIT_VALIDATION,
        _ => EXIT_INTERNAL,
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        Self::new(classify_code(&e), e)
    }
}

fn project_code(e: &ProjectError) -> i32 {
    use ProjectError as P;
    match e {
        P::Curve(_)
        | P::InvalidCenter(_)
        | P::NotASecantCluster(..)
        | P::ClustersNotSeparated(..)
        | P::FieldTooSmall { .. } => EXIT_VALIDATION,
        P::HypothesisViolation(_) | P::Basepoints(_) | P::NonBirational => EXIT_HYPOTHESIS,
        P::BasepointsOverExtension { .. }
        | P::RamificationOverExtension { .. }
        | P::IrrationalRamification { .. }
        | P::PartnersOverExtension { .. }
        | P::BadReduction => EXIT_INDETERMINATE,
        P::Gap(g) => gap_code(g),
        P::Classify(c) => classify_code(c),
        _ => EXIT_INTERNAL,
    }
}

impl From<ProjectError> for CliError {
    fn from(e: ProjectError) -> Self {
        Self::new(project_code(&e), e)
    }
}

impl From<SchubertError> for CliError {
    fn from(e: SchubertError) -> Self {
        use SchubertError as S;
        let code = match &e {
            S::Project(p) => project_code(p),
            S::Curve(_) | S::PointCount { .. } | S::FieldTooSmall(_) => EXIT_VALIDATION,
            S::Hypothesis(_) | S::Infeasible { .. } => EXIT_HYPOTHESIS,
            S::Boundary { .. } | S::Degenerate(_) => EXIT_INTERNAL,
        };
        Self::new(code, e)
    }
}
