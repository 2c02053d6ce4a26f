//! Check reports, the part-map × Curl table, and evidence files.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::checker::{
    check_partial_cancellation, kms_validity, verify_evidence, Budget, CheckKind, EvidenceBundle, Status, Validity,
    ValidityReport, Via,
};
use crate::error::Result;
use crate::operator::catalog::{operator, part_map};
use crate::operator::{HomOperator, PartMap};

/// Row and column order of the table.
pub const TABLE_PART_MAPS: [&str; 7] = ["id", "dev", "sym", "devsym", "skewtr", "skew", "tr"];

/// Stated with each check report in place of a citation.
pub const CRITERION: &str = "L^p (1<p<n) holds iff B is reduced elliptic relative to A; \
the limiting L^1 case holds iff B is reduced elliptic and reduced cancelling relative to A; \
reduced C-ellipticity implies both";

fn bundles(a: &PartMap, b: &HomOperator, r: &ValidityReport) -> Vec<EvidenceBundle> {
    [
        (CheckKind::ReducedCEllipticity, &r.c_elliptic),
        (CheckKind::ReducedEllipticity, &r.elliptic),
        (CheckKind::ReducedCancellation, &r.cancelling),
    ]
    .into_iter()
    .map(|(check, v)| EvidenceBundle {
        check,
        a: Some(a.clone()),
        b: b.clone(),
        t: None,
        verdict: v.clone(),
    })
    .collect()
}

/// Output of `kms check`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub a: String,
    pub b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    pub n: usize,
    pub budget: Budget,
    pub c_elliptic: Status,
    pub elliptic: Status,
    pub cancelling: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partially_cancelling: Option<Status>,
    pub lp_valid: Validity,
    pub l1_valid: Validity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via: Option<Via>,
    pub criterion: String,
    pub bundles: Vec<EvidenceBundle>,
}

impl CheckReport {
    pub fn has_unknown(&self) -> bool {
        self.bundles.iter().any(|b| b.verdict.status == Status::Unknown)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# A = {}, B = {}, n = {}\n", self.a, self.b, self.n);
        let _ = writeln!(s, "| check | verdict | budget |");
        let _ = writeln!(s, "|---|---|---|");
        for b in &self.bundles {
            let r = &b.verdict.budget;
            let mut note = format!(
                "samples {}, depth {}, boxes {}, s ≤ {}",
                r.samples_used, r.depth_reached, r.boxes_examined, r.degree_searched
            );
            if let Some(e) = &r.exhausted {
                let _ = write!(note, "; exhausted: {e}");
            }
            let _ = writeln!(s, "| {} | {} | {} |", b.check.description(), b.verdict.status.symbol(), note);
        }
        let _ = writeln!(
            s,
            "\nL^p valid: {}  \nL^1 valid: {}  \nvia: {}\n\n{}",
            self.lp_valid.symbol(),
            self.l1_valid.symbol(),
            self.via.map_or("-".to_string(), |v| serde_json::to_string(&v).unwrap().trim_matches('"').to_string()),
            self.criterion
        );
        s
    }
}

pub fn check_report(
    a_src: &str,
    b_src: &str,
    t: Option<(&str, &PartMap)>,
    a: &PartMap,
    b: &HomOperator,
    budget: &Budget,
) -> Result<CheckReport> {
    let r = kms_validity(a, b, budget)?;
    let mut all = bundles(a, b, &r);
    let mut partially_cancelling = None;
    if let Some((_, tm)) = t {
        let v = check_partial_cancellation(a, b, tm, budget)?;
        partially_cancelling = Some(v.status);
        all.push(EvidenceBundle {
            check: CheckKind::PartialCancellation,
            a: Some(a.clone()),
            b: b.clone(),
            t: Some(tm.clone()),
            verdict: v,
        });
    }
    Ok(CheckReport {
        a: a_src.to_string(),
        b: b_src.to_string(),
        t: t.map(|(s, _)| s.to_string()),
        n: b.dim_n(),
        budget: budget.clone(),
        c_elliptic: r.c_elliptic.status,
        elliptic: r.elliptic.status,
        cancelling: r.cancelling.status,
        partially_cancelling,
        lp_valid: r.lp_valid,
        l1_valid: r.l1_valid,
        via: r.via,
        criterion: CRITERION.to_string(),
        bundles: all,
    })
}

/// How a table cell is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellClass {
    /// Reduced ℂ-elliptic: every inequality holds.
    Shaded,
    /// Not ℂ-elliptic but the `L^p` inequality holds; `L¹` may or may not.
    Bisected,
    Cross,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub row: String,
    pub col: String,
    pub class: CellClass,
    pub c_elliptic: Status,
    pub elliptic: Status,
    pub cancelling: Status,
    pub lp_valid: Validity,
    pub l1_valid: Validity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub via: Option<Via>,
    pub bundles: Vec<EvidenceBundle>,
}

impl TableCell {
    fn label(&self) -> String {
        match self.class {
            CellClass::Shaded => "■ ✓".into(),
            CellClass::Bisected => format!("L¹ {} / Lᵖ {}", self.l1_valid.symbol(), self.lp_valid.symbol()),
            CellClass::Cross => "✗".into(),
            CellClass::Unknown => "?".into(),
        }
    }
}

fn classify(r: &ValidityReport) -> CellClass {
    if r.c_elliptic.status == Status::CertifiedYes {
        CellClass::Shaded
    } else if r.lp_valid == Validity::Valid && r.c_elliptic.status == Status::CertifiedNo {
        CellClass::Bisected
    } else if r.lp_valid == Validity::Invalid && r.l1_valid == Validity::Invalid {
        CellClass::Cross
    } else {
        CellClass::Unknown
    }
}

/// Rows `𝒜` and columns `𝒮` over [`TABLE_PART_MAPS`], with `𝔹 = 𝒮[Curl]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub n: usize,
    pub budget: Budget,
    pub cells: Vec<TableCell>,
}

impl Table {
    pub fn cell(&self, row: &str, col: &str) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.row == row && c.col == col)
    }

    pub fn unknown_count(&self) -> usize {
        self.cells
            .iter()
            .flat_map(|c| &c.bundles)
            .filter(|b| b.verdict.status == Status::Unknown)
            .count()
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "| A \\ S[Curl] |");
        for c in TABLE_PART_MAPS {
            let _ = write!(s, " {c} |");
        }
        let _ = write!(s, "\n|---|");
        for _ in TABLE_PART_MAPS {
            let _ = write!(s, "---|");
        }
        s.push('\n');
        for r in TABLE_PART_MAPS {
            let _ = write!(s, "| {r} |");
            for c in TABLE_PART_MAPS {
                let label = self.cell(r, c).map_or("".into(), TableCell::label);
                let _ = write!(s, " {label} |");
            }
            s.push('\n');
        }
        s.push_str("\n■ ✓: reduced C-elliptic. L¹ x / Lᵖ y: limiting and 1<p<n inequalities. ✗: neither holds.\n");
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("row,col,class,c_elliptic,elliptic,cancelling,lp_valid,l1_valid\n");
        for c in &self.cells {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                c.row,
                c.col,
                enum_name(&c.class),
                c.c_elliptic.symbol(),
                c.elliptic.symbol(),
                c.cancelling.symbol(),
                enum_name(&c.lp_valid),
                enum_name(&c.l1_valid)
            );
        }
        s
    }
}

fn enum_name<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default().trim_matches('"').to_string()
}

pub fn part_map_table(n: usize, budget: &Budget) -> Result<Table> {
    let pairs: Vec<(&str, &str)> = TABLE_PART_MAPS
        .iter()
        .flat_map(|r| TABLE_PART_MAPS.iter().map(move |c| (*r, *c)))
        .collect();
    let cells = crate::par::map(&pairs, |&(row, col)| -> Result<TableCell> {
        let a = part_map(row, n)?;
        let b = operator(&format!("{col} curl"), n)?;
        let r = kms_validity(&a, &b, budget)?;
        Ok(TableCell {
            row: row.into(),
            col: col.into(),
            class: classify(&r),
            c_elliptic: r.c_elliptic.status,
            elliptic: r.elliptic.status,
            cancelling: r.cancelling.status,
            lp_valid: r.lp_valid,
            l1_valid: r.l1_valid,
            via: r.via,
            bundles: bundles(&a, &b, &r),
        })
    });
    Ok(Table {
        n,
        budget: budget.clone(),
        cells: cells.into_iter().collect::<Result<_>>()?,
    })
}

/// Anything `kms verify` accepts.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EvidenceFile {
    Bundle(Box<EvidenceBundle>),
    Bundles(Vec<EvidenceBundle>),
    Report(CheckReport),
    Table(Table),
}

impl EvidenceFile {
    pub fn bundles(&self) -> Vec<&EvidenceBundle> {
        match self {
            EvidenceFile::Bundle(b) => vec![b],
            EvidenceFile::Bundles(v) => v.iter().collect(),
            EvidenceFile::Report(r) => r.bundles.iter().collect(),
            EvidenceFile::Table(t) => t.cells.iter().flat_map(|c| &c.bundles).collect(),
        }
    }
}

/// Per-bundle verification outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyLine {
    pub check: CheckKind,
    pub status: Status,
    pub ok: bool,
}

pub fn verify_file(file: &EvidenceFile) -> Vec<VerifyLine> {
    let bundles = file.bundles();
    let oks = crate::par::map(&bundles, |b| verify_evidence(b));
    bundles
        .iter()
        .zip(oks)
        .map(|(b, ok)| VerifyLine {
            check: b.check,
            status: b.verdict.status,
            ok,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evidence_files_parse_by_shape() {
        let a = part_map("sym", 3).unwrap();
        let b = operator("skewtr curl", 3).unwrap();
        let report = check_report("sym", "skewtr curl", None, &a, &b, &Budget::default()).unwrap();
        assert_eq!(report.l1_valid, Validity::Invalid);
        assert_eq!(report.lp_valid, Validity::Valid);
        let cases = [
            (serde_json::to_string(&report).unwrap(), 3),
            (serde_json::to_string(&report.bundles).unwrap(), 3),
            (serde_json::to_string(&report.bundles[2]).unwrap(), 1),
        ];
        for (text, count) in cases {
            let file: EvidenceFile = serde_json::from_str(&text).unwrap();
            let lines = verify_file(&file);
            assert_eq!(lines.len(), count);
            assert!(lines.iter().all(|l| l.ok));
        }
    }

    #[test]
    fn empty_table_renders_all_rows() {
        let table = Table {
            n: 3,
            budget: Budget::default(),
            cells: Vec::new(),
        };
        assert_eq!(table.to_markdown().lines().filter(|l| l.starts_with("| ")).count(), 8);
        assert_eq!(table.unknown_count(), 0);
    }
}
