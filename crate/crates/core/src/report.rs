//! Machine-readable reports. Field order is declaration order and every set is
//! ascending, so serialized output is stable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cayley::{Embedding, Evidence};
use crate::digroup::{Digroup, DigroupError, ElementId, ValidationReport, Violation};
use crate::enumerate::{canonical_key, Catalog, CrossCheck, Method};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseRow {
    pub element: ElementId,
    pub left_inverse: ElementId,
    pub right_inverse: ElementId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapRow {
    pub element: ElementId,
    pub s: usize,
    pub f: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingSection {
    pub bar_unit: ElementId,
    pub gamma: usize,
    pub delta: usize,
    pub group_order: usize,
    /// `delta[s]` is the bar-unit labelled `s`.
    pub delta_elements: Vec<ElementId>,
    pub map: Vec<MapRow>,
    pub evidence: Evidence,
}

impl EmbeddingSection {
    pub fn new(emb: &Embedding) -> Self {
        EmbeddingSection {
            bar_unit: emb.bar_unit,
            gamma: emb.spec().gamma_size(),
            delta: emb.spec().delta_size(),
            group_order: emb.spec().group().order(),
            delta_elements: emb.delta.clone(),
            map: emb
                .map
                .iter()
                .enumerate()
                .map(|(x, l)| MapRow {
                    element: x,
                    s: l.s,
                    f: l.f.images().to_vec(),
                })
                .collect(),
            evidence: emb.evidence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub halo: Vec<ElementId>,
    pub identities: Vec<ElementId>,
    pub target_center: Vec<ElementId>,
    pub source_center: Vec<ElementId>,
    pub bar_unit: Option<ElementId>,
    /// Inverses with respect to `bar_unit`.
    pub inverse_table: Vec<InverseRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingSection>,
}

impl ReportDocument {
    /// Report for tables that failed validation: only the violations and bar-units.
    pub fn invalid(report: &ValidationReport) -> Self {
        ReportDocument {
            valid: report.valid,
            violations: report.violations.clone(),
            halo: report.halo.clone(),
            identities: Vec::new(),
            target_center: Vec::new(),
            source_center: Vec::new(),
            bar_unit: None,
            inverse_table: Vec::new(),
            embedding: None,
        }
    }

    pub fn analyze(d: &Digroup) -> Result<Self, DigroupError> {
        let e = d.default_bar_unit();
        let inverse_table = (0..d.order())
            .map(|x| {
                d.inverses(x, e).map(|p| InverseRow {
                    element: x,
                    left_inverse: p.left_inv,
                    right_inverse: p.right_inv,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let centers = d.centers();
        Ok(ReportDocument {
            valid: true,
            violations: Vec::new(),
            halo: d.halo().to_vec(),
            identities: d.identities(),
            target_center: centers.target,
            source_center: centers.source,
            bar_unit: Some(e),
            inverse_table,
            embedding: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "valid: {}", self.valid);
        for v in &self.violations {
            let _ = writeln!(out, "violation: law {} at {}", v.law, v.witness);
        }
        let _ = writeln!(out, "halo: {}", set(&self.halo));
        if !self.valid {
            return out;
        }
        let _ = writeln!(out, "identities: {}", set(&self.identities));
        let _ = writeln!(out, "target center: {}", set(&self.target_center));
        let _ = writeln!(out, "source center: {}", set(&self.source_center));
        if let Some(e) = self.bar_unit {
            let _ = writeln!(out, "inverses w.r.t. bar-unit {e}:");
            for row in &self.inverse_table {
                let _ = writeln!(
                    out,
                    "  {}: left {} right {}",
                    row.element, row.left_inverse, row.right_inverse
                );
            }
        }
        if let Some(emb) = &self.embedding {
            let _ = writeln!(
                out,
                "embedding: gamma {} delta {} group order {}",
                emb.gamma, emb.delta, emb.group_order
            );
        }
        out
    }
}

fn set(xs: &[ElementId]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionInfo {
    pub group: &'static str,
    pub group_order: usize,
    pub delta: usize,
    /// `theta` on the group's generators, in one-line notation.
    pub theta: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub index: usize,
    pub halo: usize,
    pub identities: usize,
    pub target_center: usize,
    pub source_center: usize,
    /// Number of elements that are their own left inverse w.r.t. the least bar-unit.
    pub self_inverse: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogSection {
    pub method: Method,
    pub count: usize,
    pub candidates: usize,
    pub classes: Vec<ClassSummary>,
}

impl CatalogSection {
    pub fn new(c: &Catalog) -> Self {
        let classes = c
            .classes
            .iter()
            .zip(&c.provenance)
            .enumerate()
            .map(|(index, (d, prov))| {
                let key = canonical_key(d);
                let e = d.default_bar_unit();
                let self_inverse = (0..d.order())
                    .filter(|&x| d.inverses(x, e).map(|p| p.left_inv == x).unwrap_or(false))
                    .count();
                ClassSummary {
                    index,
                    halo: key.halo,
                    identities: key.identities,
                    target_center: key.target_center,
                    source_center: key.source_center,
                    self_inverse,
                    construction: prov.as_ref().map(|p| ConstructionInfo {
                        group: p.group_name,
                        group_order: p.spec.group().order(),
                        delta: p.delta(),
                        theta: p
                            .theta_images()
                            .iter()
                            .map(|t| t.images().to_vec())
                            .collect(),
                    }),
                }
            })
            .collect();
        CatalogSection {
            method: c.method,
            count: c.len(),
            candidates: c.candidates,
            classes,
        }
    }
}

/// Output of a classification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub order: usize,
    pub catalogs: Vec<CatalogSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "order {}", self.order);
        for cat in &self.catalogs {
            let _ = writeln!(
                out,
                "{}: {} classes from {} candidates",
                cat.method, cat.count, cat.candidates
            );
            for c in &cat.classes {
                let _ = write!(
                    out,
                    "  class {}: halo {} identities {} target center {} source center {} self-inverse {}",
                    c.index, c.halo, c.identities, c.target_center, c.source_center, c.self_inverse
                );
                if let Some(info) = &c.construction {
                    let _ = write!(out, " [group {} delta {}]", info.group, info.delta);
                }
                out.push('\n');
            }
        }
        if let Some(cc) = &self.cross_check {
            let verdict = if cc.agrees() { "agree" } else { "DISAGREE" };
            let _ = writeln!(
                out,
                "cross-check: {verdict} ({} brute, {} constructive)",
                cc.brute_count, cc.constructive_count
            );
            for m in &cc.matching {
                let _ = writeln!(
                    out,
                    "  brute {} <-> constructive {}",
                    m.brute, m.constructive
                );
            }
            for i in &cc.unmatched_brute {
                let _ = writeln!(out, "  brute {i} unmatched");
            }
            for j in &cc.unmatched_constructive {
                let _ = writeln!(out, "  constructive {j} unmatched");
            }
        }
        out
    }
}
