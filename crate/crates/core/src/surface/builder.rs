use super::{ArcInterface, Curve, Diagram, Edge, EdgeKind, Face, Family, InterfaceSide, Side, Sign};

/// Terse hand construction of diagrams. Face words are written as
/// `"e+"`/`"e-"` tokens; vertices are collected from edge endpoints.
#[derive(Default)]
pub struct Builder {
    d: Diagram,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    fn edge(mut self, kind: EdgeKind, curve: Option<&str>, id: &str, from: &str, to: &str) -> Self {
        self.d.vertices.insert(from.to_string());
        self.d.vertices.insert(to.to_string());
        let prev = self.d.edges.insert(
            id.to_string(),
            Edge {
                kind,
                curve: curve.map(str::to_string),
                from: from.to_string(),
                to: to.to_string(),
            },
        );
        assert!(prev.is_none(), "duplicate edge {id}");
        self
    }

    pub fn boundary(self, id: &str, from: &str, to: &str) -> Self {
        self.edge(EdgeKind::Boundary, None, id, from, to)
    }

    /// A closed chain of boundary edges through the given vertices.
    pub fn boundary_loop(mut self, prefix: &str, vertices: &[&str]) -> Self {
        let n = vertices.len();
        for i in 0..n {
            let id = format!("{prefix}{i}");
            self = self.boundary(&id, vertices[i], vertices[(i + 1) % n]);
        }
        self
    }

    pub fn seam(self, id: &str, from: &str, to: &str) -> Self {
        self.edge(EdgeKind::Seam, None, id, from, to)
    }

    /// A curve through the given vertices; segment ids are `<id>.<k>`.
    pub fn curve(mut self, fam: Family, id: &str, closed: bool, vertices: &[&str]) -> Self {
        let kind = fam.edge_kind();
        let n = vertices.len();
        let steps = if closed { n } else { n - 1 };
        let mut segs = Vec::new();
        for k in 0..steps {
            let e = format!("{id}.{k}");
            self = self.edge(kind, Some(id), &e, vertices[k], vertices[(k + 1) % n]);
            segs.push(e);
        }
        self.d.curves_mut(fam).insert(
            id.to_string(),
            Curve {
                closed,
                segments: segs,
            },
        );
        self
    }

    pub fn face(mut self, id: &str, word: &[&str], suture: bool) -> Self {
        let boundary = word
            .iter()
            .map(|t| {
                let (e, s) = t.split_at(t.len() - 1);
                let sign = match s {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    _ => panic!("side token {t} needs a trailing sign"),
                };
                Side {
                    edge: e.to_string(),
                    sign,
                }
            })
            .collect();
        self.d.faces.insert(id.to_string(), Face { boundary, suture });
        self
    }

    pub fn interface(mut self, name: &str, side: InterfaceSide, fam: Family, intervals: &[&[&str]]) -> Self {
        self.d.arc_interfaces.push(ArcInterface {
            name: name.to_string(),
            side,
            family: fam,
            intervals: intervals
                .iter()
                .map(|iv| iv.iter().map(|s| s.to_string()).collect())
                .collect(),
        });
        self
    }

    pub fn eh(mut self, points: &[&str]) -> Self {
        self.d.tags.eh = Some(points.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn mark(mut self, name: &str, v: &str) -> Self {
        self.d.tags.marks.insert(name.to_string(), v.to_string());
        self
    }

    pub fn build(self) -> Diagram {
        self.d
    }
}
