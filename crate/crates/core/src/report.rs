//! Serialized document formats: plot-ready CSV tables and JSON reports.
//!
//! All float output goes through [`format_f64`] (17 significant digits) and
//! all collections iterate in a fixed order, so identical inputs produce
//! byte-identical documents.

use serde::Serialize;

use crate::certify::CertificateReport;
use crate::family::FamilyDescriptor;
use crate::ladder::LadderMatrix;
use crate::limits::LimitEntry;
use crate::scalar::Scalar;
pub use crate::scalar::format_f64;
use crate::sequence::PolySeq;

/// CSV with `#`-prefixed comment lines documenting the column semantics.
pub struct CsvTable {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// `{family, n_max, coeffs}` with coefficients in the scalar's string form
/// (`num/den` in exact mode).
#[derive(Debug, Clone, Serialize)]
pub struct PolySeqDoc {
    pub family: FamilyDescriptor,
    pub n_max: usize,
    pub coeffs: Vec<Vec<String>>,
}

impl PolySeqDoc {
    pub fn new<T: Scalar>(seq: &PolySeq<T>) -> Self {
        PolySeqDoc {
            family: seq.family.descriptor(),
            n_max: seq.max_degree(),
            coeffs: seq
                .polys()
                .iter()
                .map(|p| p.coeffs().iter().map(|c| c.repr()).collect())
                .collect(),
        }
    }
}

/// `{family, operator, dim, triplets}` with only the nonzero entries, in
/// row-major order.
#[derive(Debug, Clone, Serialize)]
pub struct LadderMatrixDoc {
    pub family: String,
    pub operator: String,
    pub dim: usize,
    pub triplets: Vec<(usize, usize, String)>,
}

impl LadderMatrixDoc {
    pub fn new(lm: &LadderMatrix) -> Self {
        let mut triplets = Vec::new();
        for i in 0..lm.dim {
            for j in 0..lm.dim {
                let v = lm.matrix[(i, j)];
                if v != 0.0 {
                    triplets.push((i, j, format_f64(v)));
                }
            }
        }
        LadderMatrixDoc {
            family: lm.family.label(),
            operator: lm.op.label().to_string(),
            dim: lm.dim,
            triplets,
        }
    }
}

/// Value table `(point, n, P_value, psi_value)`.
pub fn value_table_csv(family_label: &str, rows: &[(f64, usize, f64, f64)]) -> CsvTable {
    CsvTable {
        comments: vec![
            format!("family: {family_label}"),
            "columns: point, n, P_value (polynomial), psi_value (normalized function)"
                .to_string(),
        ],
        header: vec!["point".into(), "n".into(), "P_value".into(), "psi_value".into()],
        rows: rows
            .iter()
            .map(|(pt, n, p, psi)| {
                vec![format_f64(*pt), n.to_string(), format_f64(*p), format_f64(*psi)]
            })
            .collect(),
    }
}

/// d-matrix table `(j, m, mp, beta, value)`; half-integers rendered exactly.
pub fn wigner_table_csv(rows: &[(i64, i64, i64, f64, f64)]) -> CsvTable {
    CsvTable {
        comments: vec![
            "columns: j, m, mp, beta, value -- d^j_{m,m'}(beta) rotation matrix elements"
                .to_string(),
            "half-integer indices are printed as fractions (e.g. 3/2)".to_string(),
        ],
        header: vec!["j".into(), "m".into(), "mp".into(), "beta".into(), "value".into()],
        rows: rows
            .iter()
            .map(|(two_j, two_m, two_mp, beta, v)| {
                vec![
                    half_integer(*two_j),
                    half_integer(*two_m),
                    half_integer(*two_mp),
                    format_f64(*beta),
                    format_f64(*v),
                ]
            })
            .collect(),
    }
}

/// Limit schedule report
/// `(schedule_param, n, sup_error, rms_error, fitted_order_so_far)`, with the
/// Meixner normalized-variant columns appended when present.
pub fn limit_table_csv(
    which: &str,
    entries: &[LimitEntry],
    orders_so_far: &[Option<f64>],
) -> CsvTable {
    let mut rows = Vec::new();
    for (e, order) in entries.iter().zip(orders_so_far) {
        rows.push(vec![
            format_f64(e.param),
            e.n.to_string(),
            format_f64(e.sup_error),
            format_f64(e.rms_error),
            order.map(format_f64).unwrap_or_default(),
            e.sup_normalized.map(format_f64).unwrap_or_default(),
            e.rms_normalized.map(format_f64).unwrap_or_default(),
            format_f64(e.relation_residual),
        ]);
    }
    CsvTable {
        comments: vec![
            format!("limit: {which}"),
            "columns: schedule_param, n, sup_error, rms_error, fitted_order_so_far, \
             sup_normalized, rms_normalized, relation_residual"
                .to_string(),
            "fitted_order_so_far: log-log slope over the schedule prefix (blank until \
             two entries)"
                .to_string(),
        ],
        header: vec![
            "schedule_param".into(),
            "n".into(),
            "sup_error".into(),
            "rms_error".into(),
            "fitted_order_so_far".into(),
            "sup_normalized".into(),
            "rms_normalized".into(),
            "relation_residual".into(),
        ],
        rows,
    }
}

fn half_integer(two_v: i64) -> String {
    if two_v % 2 == 0 {
        (two_v / 2).to_string()
    } else {
        format!("{two_v}/2")
    }
}

/// Top-level JSON check report emitted by the CLI `check` command.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub family: String,
    pub passed: bool,
    pub measured: f64,
    /// Default contract tolerance; `None` for informational lines that are
    /// reported without a gate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(suite: &str) -> Self {
        CheckReport {
            suite: suite.to_string(),
            passed: true,
            checks: Vec::new(),
            certificates: Vec::new(),
        }
    }

    pub fn push(&mut self, line: CheckLine) {
        self.passed &= line.passed;
        self.checks.push(line);
    }

    pub fn push_certificate(&mut self, cert: CertificateReport) {
        self.passed &= cert.passed();
        self.certificates.push(cert);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
