use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{
    ArcInterface, Curve, Diagram, Edge, EdgeKind, Face, Family, InterfaceSide, Result, Side, Sign,
    SurfaceError, Tags,
};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRec {
    id: String,
    kind: EdgeKind,
    #[serde(default)]
    curve: Option<String>,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceRec {
    id: String,
    boundary: Vec<(String, String)>,
    suture: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveRec {
    id: String,
    closed: bool,
    segments: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InterfaceRec {
    name: String,
    side: InterfaceSide,
    family: Family,
    intervals: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct TagsRec {
    #[serde(default)]
    eh: Option<Vec<String>>,
    #[serde(default)]
    marks: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramRec {
    vertices: Vec<String>,
    edges: Vec<EdgeRec>,
    faces: Vec<FaceRec>,
    alpha_curves: Vec<CurveRec>,
    beta_curves: Vec<CurveRec>,
    #[serde(default)]
    arc_interfaces: Vec<InterfaceRec>,
    #[serde(default)]
    tags: TagsRec,
}

fn min_rotation<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    (0..v.len().max(1))
        .map(|k| {
            let mut r = v[k.min(v.len())..].to_vec();
            r.extend_from_slice(&v[..k.min(v.len())]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// Rotates face words and closed curves to their smallest rotation so that
/// equal diagrams serialize identically.
pub(crate) fn normalize(d: &mut Diagram) {
    for f in d.faces.values_mut() {
        f.boundary = min_rotation(&f.boundary);
    }
    for fam in [Family::Alpha, Family::Beta] {
        for c in d.curves_mut(fam).values_mut() {
            if c.closed && !c.segments.is_empty() {
                let k = (0..c.segments.len())
                    .min_by_key(|&i| &c.segments[i])
                    .unwrap();
                c.segments.rotate_left(k);
            }
        }
    }
}

/// Serializes with sorted keys and sorted records.
pub fn to_json(d: &Diagram) -> String {
    let mut d = d.clone();
    normalize(&mut d);
    let curves = |m: &BTreeMap<String, Curve>| {
        m.iter()
            .map(|(id, c)| CurveRec {
                id: id.clone(),
                closed: c.closed,
                segments: c.segments.clone(),
            })
            .collect()
    };
    let rec = DiagramRec {
        vertices: d.vertices.iter().cloned().collect(),
        edges: d
            .edges
            .iter()
            .map(|(id, e)| EdgeRec {
                id: id.clone(),
                kind: e.kind,
                curve: e.curve.clone(),
                from: e.from.clone(),
                to: e.to.clone(),
            })
            .collect(),
        faces: d
            .faces
            .iter()
            .map(|(id, f)| FaceRec {
                id: id.clone(),
                boundary: f
                    .boundary
                    .iter()
                    .map(|s| (s.edge.clone(), s.sign.as_str().to_string()))
                    .collect(),
                suture: f.suture,
            })
            .collect(),
        alpha_curves: curves(&d.alpha_curves),
        beta_curves: curves(&d.beta_curves),
        arc_interfaces: d
            .arc_interfaces
            .iter()
            .map(|i| InterfaceRec {
                name: i.name.clone(),
                side: i.side,
                family: i.family,
                intervals: i.intervals.clone(),
            })
            .collect(),
        tags: TagsRec {
            eh: d.tags.eh.as_ref().map(|s| s.iter().cloned().collect()),
            marks: d.tags.marks.clone(),
        },
    };
    // Going through Value sorts every object's keys.
    let v = serde_json::to_value(&rec).expect("diagram records serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn dup(kind: &'static str, id: &str) -> SurfaceError {
    SurfaceError::Json(format!("duplicate {kind} id `{id}`"))
}

pub fn from_json(text: &str) -> Result<Diagram> {
    let rec: DiagramRec =
        serde_json::from_str(text).map_err(|e| SurfaceError::Json(e.to_string()))?;
    let mut d = Diagram::default();
    for v in rec.vertices {
        if !d.vertices.insert(v.clone()) {
            return Err(dup("vertex", &v));
        }
    }
    for e in rec.edges {
        let edge = Edge {
            kind: e.kind,
            curve: e.curve,
            from: e.from,
            to: e.to,
        };
        if d.edges.insert(e.id.clone(), edge).is_some() {
            return Err(dup("edge", &e.id));
        }
    }
    for f in rec.faces {
        let mut boundary = Vec::with_capacity(f.boundary.len());
        for (edge, sign) in f.boundary {
            let sign = match sign.as_str() {
                "+" => Sign::Pos,
                "-" => Sign::Neg,
                other => return Err(SurfaceError::Json(format!("bad sign `{other}`"))),
            };
            boundary.push(Side { edge, sign });
        }
        let face = Face {
            boundary,
            suture: f.suture,
        };
        if d.faces.insert(f.id.clone(), face).is_some() {
            return Err(dup("face", &f.id));
        }
    }
    for (fam, list) in [
        (Family::Alpha, rec.alpha_curves),
        (Family::Beta, rec.beta_curves),
    ] {
        for c in list {
            let curve = Curve {
                closed: c.closed,
                segments: c.segments,
            };
            if d.curves_mut(fam).insert(c.id.clone(), curve).is_some() {
                return Err(dup("curve", &c.id));
            }
        }
    }
    d.arc_interfaces = rec
        .arc_interfaces
        .into_iter()
        .map(|i| ArcInterface {
            name: i.name,
            side: i.side,
            family: i.family,
            intervals: i.intervals,
        })
        .collect();
    d.tags = Tags {
        eh: rec.tags.eh.map(|v| v.into_iter().collect::<BTreeSet<_>>()),
        marks: rec.tags.marks,
    };
    Ok(d)
}
