//! Combinatorial sutured and bordered sutured Heegaard diagrams.
//!
//! A diagram is a polygonal decomposition of the Heegaard surface. Every face
//! is a disk given by a cyclic word of oriented edges with the face on the
//! left. Edges are alpha or beta segments (used twice, once per side),
//! boundary segments (used once) or seams. A seam is an interior edge that
//! lies on no curve; seams only ever separate suture faces and exist so that
//! suture regions which are not disks can still be cut into disk faces.

mod bordered;
pub mod builder;
mod canon;
mod io;
pub mod ops;
mod surgery;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bordered::{concatenate, mirror, with_prefix};
pub use canon::{canonical_form, coarsened};
pub use io::{from_json, to_json};
pub use surgery::{
    attach_one_handle, attach_strip, attach_trivial_bypass, attach_two_handle, attach_two_handle_ordered,
    trivial_destabilize, BypassSign, Strip, TwoHandle,
};
pub use validate::{validate, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Alpha,
    Beta,
    Boundary,
    Seam,
}

impl EdgeKind {
    pub fn is_curve(self) -> bool {
        matches!(self, EdgeKind::Alpha | EdgeKind::Beta)
    }

    pub fn family(self) -> Option<Family> {
        match self {
            EdgeKind::Alpha => Some(Family::Alpha),
            EdgeKind::Beta => Some(Family::Beta),
            _ => None,
        }
    }
}

/// Which curve family a curve, arc or interface belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Alpha,
    Beta,
}

impl Family {
    pub fn edge_kind(self) -> EdgeKind {
        match self {
            Family::Alpha => EdgeKind::Alpha,
            Family::Beta => EdgeKind::Beta,
        }
    }

    pub fn other(self) -> Family {
        match self {
            Family::Alpha => Family::Beta,
            Family::Beta => Family::Alpha,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub kind: EdgeKind,
    pub curve: Option<String>,
    pub from: String,
    pub to: String,
}

/// An oriented occurrence of an edge in a face boundary word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Side {
    pub edge: String,
    pub sign: Sign,
}

impl Side {
    pub fn pos(edge: impl Into<String>) -> Self {
        Side {
            edge: edge.into(),
            sign: Sign::Pos,
        }
    }

    pub fn neg(edge: impl Into<String>) -> Self {
        Side {
            edge: edge.into(),
            sign: Sign::Neg,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<Side>,
    pub suture: bool,
}

/// An alpha or beta curve: closed, or an arc ending on interface marked points.
/// Segments are listed in order and each edge is oriented along the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub closed: bool,
    pub segments: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InterfaceSide {
    Left,
    Right,
}

/// A bordered interface: intervals of the boundary (chains of boundary edges
/// in boundary order) carrying the endpoints of the arcs of one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcInterface {
    pub name: String,
    pub side: InterfaceSide,
    pub family: Family,
    pub intervals: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tags {
    pub eh: Option<BTreeSet<String>>,
    pub marks: BTreeMap<String, String>,
}

/// A sutured (no interfaces) or bordered sutured Heegaard diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeMap<String, Edge>,
    pub faces: BTreeMap<String, Face>,
    pub alpha_curves: BTreeMap<String, Curve>,
    pub beta_curves: BTreeMap<String, Curve>,
    pub arc_interfaces: Vec<ArcInterface>,
    pub tags: Tags,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("unknown {kind} `{id}`")]
    Unknown { kind: &'static str, id: String },
    #[error("{0}")]
    Rejected(String),
    #[error("diagram failed validation: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, SurfaceError>;

pub(crate) fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(SurfaceError::Rejected(msg.into()))
}

/// A vertex on a face boundary together with its position in the word: the
/// corner sits at the start of `boundary[index]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corner {
    pub face: String,
    pub index: usize,
}

impl Diagram {
    pub fn edge(&self, id: &str) -> Result<&Edge> {
        self.edges.get(id).ok_or_else(|| SurfaceError::Unknown {
            kind: "edge",
            id: id.to_string(),
        })
    }

    pub fn face(&self, id: &str) -> Result<&Face> {
        self.faces.get(id).ok_or_else(|| SurfaceError::Unknown {
            kind: "face",
            id: id.to_string(),
        })
    }

    pub fn curves(&self, family: Family) -> &BTreeMap<String, Curve> {
        match family {
            Family::Alpha => &self.alpha_curves,
            Family::Beta => &self.beta_curves,
        }
    }

    pub fn curves_mut(&mut self, family: Family) -> &mut BTreeMap<String, Curve> {
        match family {
            Family::Alpha => &mut self.alpha_curves,
            Family::Beta => &mut self.beta_curves,
        }
    }

    pub fn curve(&self, family: Family, id: &str) -> Result<&Curve> {
        self.curves(family).get(id).ok_or_else(|| SurfaceError::Unknown {
            kind: "curve",
            id: id.to_string(),
        })
    }

    pub fn is_bordered(&self) -> bool {
        !self.arc_interfaces.is_empty()
    }

    /// Start and end vertex of a side as traversed.
    pub fn side_ends(&self, side: &Side) -> (&str, &str) {
        let e = &self.edges[&side.edge];
        match side.sign {
            Sign::Pos => (&e.from, &e.to),
            Sign::Neg => (&e.to, &e.from),
        }
    }

    /// Vertex at the start of `boundary[i]` of the face.
    pub fn corner_vertex(&self, face: &Face, i: usize) -> &str {
        self.side_ends(&face.boundary[i]).0
    }

    /// All (face, index) occurrences of an edge.
    pub fn occurrences(&self, edge: &str) -> Vec<(String, usize, Sign)> {
        let mut out = Vec::new();
        for (fid, f) in &self.faces {
            for (i, s) in f.boundary.iter().enumerate() {
                if s.edge == edge {
                    out.push((fid.clone(), i, s.sign));
                }
            }
        }
        out
    }

    /// Occurrences of every edge, keyed by edge id.
    pub fn occurrence_index(&self) -> BTreeMap<String, Vec<(String, usize, Sign)>> {
        let mut out: BTreeMap<String, Vec<(String, usize, Sign)>> = BTreeMap::new();
        for (fid, f) in &self.faces {
            for (i, s) in f.boundary.iter().enumerate() {
                out.entry(s.edge.clone()).or_default().push((fid.clone(), i, s.sign));
            }
        }
        out
    }

    /// The face lying to the left of `edge` when it is traversed with `sign`.
    pub fn face_left_of(&self, edge: &str, sign: Sign) -> Option<(String, usize)> {
        self.occurrences(edge)
            .into_iter()
            .find(|(_, _, s)| *s == sign)
            .map(|(f, i, _)| (f, i))
    }

    /// Vertices incident to both an alpha and a beta edge.
    pub fn intersection_points(&self) -> BTreeSet<String> {
        let mut alpha = BTreeSet::new();
        let mut beta = BTreeSet::new();
        for e in self.edges.values() {
            let set = match e.kind {
                EdgeKind::Alpha => &mut alpha,
                EdgeKind::Beta => &mut beta,
                _ => continue,
            };
            set.insert(e.from.clone());
            set.insert(e.to.clone());
        }
        alpha.intersection(&beta).cloned().collect()
    }

    /// The curve of the given family through vertex `v`, if any.
    pub fn curve_through(&self, v: &str, family: Family) -> Option<String> {
        let kind = family.edge_kind();
        self.edges
            .values()
            .find(|e| e.kind == kind && (e.from == v || e.to == v))
            .and_then(|e| e.curve.clone())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Cycles of boundary edges, each listed in boundary order starting at
    /// its smallest edge id.
    pub fn boundary_components(&self) -> Vec<Vec<String>> {
        let mut next: BTreeMap<&str, &str> = BTreeMap::new();
        let mut by_start: BTreeMap<&str, &str> = BTreeMap::new();
        for (id, e) in &self.edges {
            if e.kind == EdgeKind::Boundary {
                by_start.insert(e.from.as_str(), id.as_str());
            }
        }
        for (id, e) in &self.edges {
            if e.kind == EdgeKind::Boundary {
                if let Some(n) = by_start.get(e.to.as_str()) {
                    next.insert(id.as_str(), n);
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for start in next.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = *start;
            while seen.insert(cur) {
                cyc.push(cur.to_string());
                match next.get(cur) {
                    Some(n) => cur = n,
                    None => break,
                }
            }
            comps.push(cyc);
        }
        comps
    }

    /// Edge ids belonging to some interface interval.
    pub fn interface_edges(&self) -> BTreeSet<String> {
        self.arc_interfaces
            .iter()
            .flat_map(|i| i.intervals.iter().flatten().cloned())
            .collect()
    }

    /// The non-suture faces in id order.
    pub fn interior_faces(&self) -> Vec<String> {
        self.faces
            .iter()
            .filter(|(_, f)| !f.suture)
            .map(|(id, _)| id.clone())
            .collect()
    }

    /// Closed curves and arcs of a family, split.
    pub fn closed_curve_ids(&self, family: Family) -> Vec<String> {
        self.curves(family)
            .iter()
            .filter(|(_, c)| c.closed)
            .map(|(id, _)| id.clone())
            .collect()
    }

    pub fn arc_ids(&self, family: Family) -> Vec<String> {
        self.curves(family)
            .iter()
            .filter(|(_, c)| !c.closed)
            .map(|(id, _)| id.clone())
            .collect()
    }

    /// Vertices visited by a curve, in order (closed curves do not repeat the
    /// start).
    pub fn curve_vertices(&self, curve: &Curve) -> Vec<String> {
        let mut out = Vec::new();
        for (k, seg) in curve.segments.iter().enumerate() {
            let e = &self.edges[seg];
            if k == 0 {
                out.push(e.from.clone());
            }
            out.push(e.to.clone());
        }
        if curve.closed {
            out.pop();
        }
        out
    }

    pub fn mark(&self, name: &str) -> Result<&str> {
        self.tags
            .marks
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| SurfaceError::Unknown {
                kind: "mark",
                id: name.to_string(),
            })
    }

    /// Recomputes suture flags: a face is a suture face when the seam-connected
    /// cluster containing it touches the boundary outside every interface.
    pub fn recompute_suture_flags(&mut self) {
        let iface = self.interface_edges();
        let ids: Vec<String> = self.faces.keys().cloned().collect();
        let index: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, f)| (f.as_str(), i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut seam_faces: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        let mut touches = vec![false; ids.len()];
        for (fid, f) in &self.faces {
            let fi = index[fid.as_str()];
            for s in &f.boundary {
                let e = &self.edges[&s.edge];
                match e.kind {
                    EdgeKind::Seam => seam_faces.entry(s.edge.as_str()).or_default().push(fi),
                    EdgeKind::Boundary if !iface.contains(&s.edge) => touches[fi] = true,
                    _ => {}
                }
            }
        }
        for fs in seam_faces.values() {
            for w in fs.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut root_touch = vec![false; ids.len()];
        for i in 0..ids.len() {
            if touches[i] {
                let r = find(&mut parent, i);
                root_touch[r] = true;
            }
        }
        for (i, id) in ids.iter().enumerate() {
            let r = find(&mut parent, i);
            self.faces.get_mut(id).unwrap().suture = root_touch[r];
        }
    }
}

/// A reference to a boundary point: the midpoint of a boundary edge.
pub type BoundaryPoint = String;

/// A properly embedded arc transverse to the curves, given by the faces it
/// passes through and the edges it crosses between them. It starts on the
/// boundary edge `start` of `faces[0]` and ends on `end` in the last face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversePath {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
    pub faces: Vec<String>,
    pub crossings: Vec<String>,
}

impl TransversePath {
    /// A path that stays inside one face.
    pub fn within(face: &str, start: &str, end: &str) -> Self {
        TransversePath {
            start: start.into(),
            end: end.into(),
            faces: vec![face.into()],
            crossings: vec![],
        }
    }
}

#[cfg(test)]
mod tests;
