//! Export of polytopes, metrics, triangulations and families as JSON or
//! OFF, and JSON import back into exact objects.

use clap::ValueEnum;
use krcyclo_core::arcs::{self, FamilyJson};
use krcyclo_core::cyclo::{self, TriangulationJson};
use krcyclo_core::exactgeom::io::{polytope_off, triangulation_off, PolytopeJson};
use krcyclo_core::exactgeom::VPolytope;
use krcyclo_core::kr::{self, MetricJson, QuasiMetric};
use serde_json::Value;

use crate::verify::centered_simplex_zonotope;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    /// The root polytope.
    Root,
    /// Boundary triangulation of the root polytope by arc images.
    Triangulation,
    /// The selected quasi-metric as a matrix.
    Metric,
    /// The KR polytope of the selected metric.
    Kr,
    /// The Lipschitz polytope of the selected metric, in H₀.
    Lipschitz,
    /// The zonotope of the centred standard simplex.
    Zonotope,
    /// All admissible families (or those of size `--k`).
    Families,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    Uniform,
    Clock,
    Cyclohedral,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Json,
    Off,
}

pub fn build_metric(kind: MetricKind, n: usize, seed: u64) -> Result<QuasiMetric, CliError> {
    Ok(match kind {
        MetricKind::Uniform => QuasiMetric::uniform(n),
        MetricKind::Clock => QuasiMetric::clock(n),
        MetricKind::Cyclohedral => QuasiMetric::cyclohedral(n),
        MetricKind::Generic => kr::sample_generic_metric(n, seed)?,
    })
}

fn to_json_text(value: &impl serde::Serialize) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn polytope_text(p: &VPolytope, format: ExportFormat) -> Result<String, CliError> {
    match format {
        ExportFormat::Json => to_json_text(&PolytopeJson::from_polytope(p)),
        ExportFormat::Off => Ok(polytope_off(p)?),
    }
}

pub struct ExportRequest {
    pub object: Object,
    pub n: usize,
    pub k: Option<usize>,
    pub metric: MetricKind,
    pub seed: u64,
    pub format: ExportFormat,
}

pub fn export(req: &ExportRequest) -> Result<String, CliError> {
    let n = req.n;
    match req.object {
        Object::Root => polytope_text(&cyclo::build_root_polytope(n)?.polytope, req.format),
        Object::Triangulation => {
            let root = cyclo::build_root_polytope(n)?;
            let t = cyclo::boundary_triangulation_via_phi(&root)?;
            match req.format {
                ExportFormat::Json => to_json_text(&t.to_json(&root)),
                ExportFormat::Off => {
                    let cells = t.vertex_cells();
                    Ok(triangulation_off(root.polytope.vertices(), &cells)?)
                }
            }
        }
        Object::Metric => match req.format {
            ExportFormat::Json => to_json_text(&build_metric(req.metric, n, req.seed)?.to_json()),
            ExportFormat::Off => Err(CliError::Usage("a metric has no OFF form".into())),
        },
        Object::Kr => {
            let m = build_metric(req.metric, n, req.seed)?;
            polytope_text(&kr::kr_polytope(&m)?.polytope, req.format)
        }
        Object::Lipschitz => {
            let m = build_metric(req.metric, n, req.seed)?;
            polytope_text(&kr::lipschitz_polytope(&m).vertices_h0()?, req.format)
        }
        Object::Zonotope => polytope_text(&centered_simplex_zonotope(n)?, req.format),
        Object::Families => match req.format {
            ExportFormat::Json => {
                let fams: Vec<FamilyJson> =
                    arcs::enumerate_admissible(n, req.k)?.iter().map(|f| f.to_json()).collect();
                to_json_text(&fams)
            }
            ExportFormat::Off => Err(CliError::Usage("families have no OFF form".into())),
        },
    }
}

/// Parses an exported JSON document back into exact objects and serializes
/// it again; the result equals the input for anything this tool wrote.
pub fn reimport(text: &str) -> Result<String, CliError> {
    let value: Value = serde_json::from_str(text)?;
    let is_obj_with = |k: &str| value.as_object().is_some_and(|o| o.contains_key(k));
    if is_obj_with("vertices") && is_obj_with("ambient") {
        let j: PolytopeJson = serde_json::from_value(value)?;
        to_json_text(&PolytopeJson::from_polytope(&j.to_polytope()?))
    } else if is_obj_with("rho") {
        let j: MetricJson = serde_json::from_value(value)?;
        to_json_text(&j.to_metric()?.to_json())
    } else if is_obj_with("cells") && is_obj_with("facets") {
        let j: TriangulationJson = serde_json::from_value(value)?;
        let root = cyclo::build_root_polytope(j.n)?;
        for c in &j.cells {
            let fam = FamilyJson { n: j.n, arcs: c.family.clone() }.to_family()?;
            if fam.len() != j.n - 1 {
                return Err(CliError::Usage("cell family is not maximal".into()));
            }
        }
        let t = cyclo::boundary_triangulation_via_phi(&root)?;
        let rebuilt = t.to_json(&root);
        if rebuilt != j {
            return Err(CliError::Usage("triangulation differs from the recomputed one".into()));
        }
        to_json_text(&rebuilt)
    } else if value.is_array() {
        let fams: Vec<FamilyJson> = serde_json::from_value(value)?;
        let parsed = fams
            .iter()
            .map(|f| f.to_family().map(|f| f.to_json()))
            .collect::<Result<Vec<_>, _>>()?;
        to_json_text(&parsed)
    } else {
        Err(CliError::Usage("unrecognised JSON document".into()))
    }
}
