//! Report documents: a serde mirror of `ClassificationReport` for JSON, plus
//! a plain-text rendering.

use std::fmt::Write as _;

use etk_core::classify::{ClassificationReport, NamedRelation};
use etk_core::equivariance::InvariantSpaceResult;
use etk_core::group::FamilyParams;
use serde::{Deserialize, Serialize};

use crate::json::{rats, Rat, SpecJson};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ParamsDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
}

impl From<FamilyParams> for ParamsDoc {
    fn from(p: FamilyParams) -> Self {
        Self { n: p.n, n1: p.n1, n2: p.n2, s: p.s }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupDoc {
    pub name: String,
    pub family: Option<String>,
    pub params: ParamsDoc,
    pub n: usize,
    pub algebra_dim: usize,
    pub component_reps: usize,
    pub orthogonal: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpaceDoc {
    pub dim: usize,
    pub spec: SpecJson,
    pub filters: Vec<String>,
    pub basis: Vec<Vec<Rat>>,
}

impl SpaceDoc {
    fn from_result(r: &InvariantSpaceResult) -> Self {
        Self {
            dim: r.dim(),
            spec: SpecJson::from_spec(&r.spec),
            filters: r.filters.iter().map(|f| f.label().to_string()).collect(),
            basis: r.space.basis_vectors().map(rats).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InnerTorsionDoc {
    pub dim: usize,
    pub solution_dim: usize,
    pub modulo_dim: usize,
    pub basis: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct NamedMatchDoc {
    pub slot: String,
    pub name: String,
    /// `multiple` or `contained`.
    pub relation: String,
    pub scalar: Option<Rat>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FlagDoc {
    pub check: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportDoc {
    pub schema_version: u32,
    pub group: GroupDoc,
    pub torsion: SpaceDoc,
    pub curvature: SpaceDoc,
    pub curvature_g_valued: Option<SpaceDoc>,
    pub inner_torsion: InnerTorsionDoc,
    pub named_matches: Vec<NamedMatchDoc>,
    pub flags: Vec<FlagDoc>,
    pub conclusion: Option<String>,
}

impl ReportDoc {
    pub fn from_report(r: &ClassificationReport) -> Self {
        let g = &r.group;
        Self {
            schema_version: SCHEMA_VERSION,
            group: GroupDoc {
                name: g.name.clone(),
                family: g.family.map(str::to_string),
                params: g.params.into(),
                n: g.n,
                algebra_dim: g.algebra_dim,
                component_reps: g.component_reps,
                orthogonal: g.orthogonal,
            },
            torsion: SpaceDoc::from_result(&r.torsion),
            curvature: SpaceDoc::from_result(&r.curvature),
            curvature_g_valued: r.curvature_g_valued.as_ref().map(SpaceDoc::from_result),
            inner_torsion: InnerTorsionDoc {
                dim: r.inner_torsion.quotient_dim,
                solution_dim: r.inner_torsion.solution_dim,
                modulo_dim: r.inner_torsion.modulo.dim(),
                basis: r.inner_torsion.lambda_basis.iter().map(|t| rats(t.coords())).collect(),
            },
            named_matches: r
                .named_matches
                .iter()
                .map(|m| {
                    let (relation, scalar) = match &m.relation {
                        NamedRelation::Multiple(c) => ("multiple", Some(Rat(c.clone()))),
                        NamedRelation::Contained => ("contained", None),
                    };
                    NamedMatchDoc {
                        slot: m.slot.label().to_string(),
                        name: m.name.clone(),
                        relation: relation.to_string(),
                        scalar,
                    }
                })
                .collect(),
            flags: r
                .flags
                .iter()
                .map(|f| FlagDoc {
                    check: f.check.to_string(),
                    status: f.status.label().to_string(),
                    detail: f.detail.clone(),
                })
                .collect(),
            conclusion: r.conclusion().map(str::to_string),
        }
    }

    pub fn headline_curvature(&self) -> &SpaceDoc {
        self.curvature_g_valued.as_ref().unwrap_or(&self.curvature)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = &self.group;
        let _ = writeln!(
            out,
            "group {} (n = {}, dim g = {}, {} component rep(s){})",
            g.name,
            g.n,
            g.algebra_dim,
            g.component_reps,
            if g.orthogonal { ", orthogonal" } else { "" }
        );
        let head = self.headline_curvature();
        let _ = writeln!(out, "dim R = {}", head.dim);
        let _ = writeln!(
            out,
            "  curvature spec: {} [{}]",
            self.curvature.spec.valence,
            self.curvature.spec.constraints.join(", ")
        );
        if let Some(f) = &self.curvature_g_valued {
            let _ = writeln!(out, "  g-valued filter: {} -> {}", self.curvature.dim, f.dim);
        }
        let _ = writeln!(out, "dim T = {}", self.torsion.dim);
        let it = &self.inner_torsion;
        let _ = writeln!(
            out,
            "dim J = {}  (solutions {}, modulo Hom(R^n, g) of dim {})",
            it.dim, it.solution_dim, it.modulo_dim
        );
        if !self.named_matches.is_empty() {
            let _ = writeln!(out, "named matches:");
            for m in &self.named_matches {
                match &m.scalar {
                    Some(c) => {
                        let _ = writeln!(out, "  {}: basis = {} * {}", m.slot, rat_text(c), m.name);
                    }
                    None => {
                        let _ = writeln!(out, "  {}: contains {}", m.slot, m.name);
                    }
                }
            }
        }
        let _ = writeln!(out, "checks:");
        for f in &self.flags {
            let _ = writeln!(out, "  {:<15} {}  ({})", f.status, f.check, f.detail);
        }
        if let Some(c) = &self.conclusion {
            let _ = writeln!(out, "conclusion: {c}");
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn rat_text(r: &Rat) -> String {
    r.0.to_string()
}
