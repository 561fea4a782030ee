use num_bigint::BigUint;

use super::formulas::factorial_product;
use super::Analysis;
use crate::expr::GroupExpr;
use crate::men::MenType;
use crate::oracle::{count_automorphisms, Caps};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    /// Element labels, in group order.
    pub members: Vec<String>,
    pub weight: usize,
    /// Largest element order in the class.
    pub element_order: usize,
    pub men_type: MenType,
}

/// Which route produced the expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Generic quotient reduction with component decomposition.
    Quotient,
    CyclicFormula,
    /// Complete power graph of a cyclic p-group.
    CompleteGraph,
    HomocyclicFormula,
    /// Product over merged Sylow quotients.
    SylowProduct,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Quotient => "quotient-decomposition",
            Method::CyclicFormula => "cyclic-divisor-formula",
            Method::CompleteGraph => "complete-graph",
            Method::HomocyclicFormula => "homocyclic-formula",
            Method::SylowProduct => "sylow-product",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Full,
    Quotient,
    /// Expression order against quotient order times the factorial part.
    Assembly,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Full => "full graph",
            Level::Quotient => "quotient",
            Level::Assembly => "assembly",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Skipped,
    FullVerified {
        count: BigUint,
    },
    /// The full graph was out of reach; `reason` says why.
    QuotientVerified {
        count: BigUint,
        reason: String,
    },
    Mismatch {
        level: Level,
        structural: BigUint,
        oracle: BigUint,
    },
    Unknown {
        reason: String,
    },
}

impl Verdict {
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Skipped => "SKIPPED",
            Verdict::FullVerified { .. } => "FULL-VERIFIED",
            Verdict::QuotientVerified { .. } => "QUOTIENT-VERIFIED",
            Verdict::Mismatch { .. } => "MISMATCH",
            Verdict::Unknown { .. } => "UNKNOWN",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Verdict::Skipped => "oracle not run".into(),
            Verdict::FullVerified { count } => format!("{count} = {count}"),
            Verdict::QuotientVerified { count, reason } => {
                format!("quotient {count} = {count}; full graph skipped: {reason}")
            }
            Verdict::Mismatch {
                level,
                structural,
                oracle,
            } => format!(
                "{}: structural {structural} != oracle {oracle}",
                level.as_str()
            ),
            Verdict::Unknown { reason } => reason.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutReport {
    pub spec: String,
    pub group_order: usize,
    pub vertex_count: usize,
    pub classes: Vec<ClassRow>,
    pub quotient_nodes: usize,
    pub quotient_edges: usize,
    /// Automorphism group of the weighted quotient.
    pub quotient_aut: GroupExpr,
    /// Expression as produced, before normalization.
    pub raw_expression: GroupExpr,
    pub expression: GroupExpr,
    pub order: BigUint,
    pub method: Method,
    pub verification: Verdict,
}

impl AutReport {
    /// `prod |class|!`.
    pub fn factorial_part(&self) -> BigUint {
        factorial_product(self.classes.iter().map(|c| c.weight as u64))
    }

    pub fn expression_string(&self) -> String {
        self.expression.to_string()
    }
}

/// Checks `report` against the oracle: the full power graph when it fits
/// the caps, otherwise the weighted quotient.
pub fn verify(analysis: &Analysis, report: &AutReport, caps: &Caps) -> Verdict {
    let full = analysis.power_graph_weighted();
    let full_err = match count_automorphisms(&full, caps) {
        Ok(count) if count == report.order => return Verdict::FullVerified { count },
        Ok(count) => {
            return Verdict::Mismatch {
                level: Level::Full,
                structural: report.order.clone(),
                oracle: count,
            }
        }
        Err(e) => e,
    };
    let assembled = report.quotient_aut.order() * report.factorial_part();
    if assembled != report.order {
        return Verdict::Mismatch {
            level: Level::Assembly,
            structural: report.order.clone(),
            oracle: assembled,
        };
    }
    match count_automorphisms(analysis.quotient.as_weighted(), caps) {
        Ok(count) if count == report.quotient_aut.order() => Verdict::QuotientVerified {
            count,
            reason: full_err.to_string(),
        },
        Ok(count) => Verdict::Mismatch {
            level: Level::Quotient,
            structural: report.quotient_aut.order(),
            oracle: count,
        },
        Err(e) => Verdict::Unknown {
            reason: format!("full graph: {full_err}; quotient: {e}"),
        },
    }
}
