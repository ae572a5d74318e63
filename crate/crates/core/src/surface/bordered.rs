//! Gluing bordered diagrams along interfaces, mirroring and renaming.

use std::collections::{BTreeMap, BTreeSet};

use super::{reject, ArcInterface, Curve, Diagram, EdgeKind, Family, InterfaceSide, Result, Side};

impl Diagram {
    /// Reverses the direction of a curve, flipping every face side along it.
    pub fn reverse_curve(&mut self, fam: Family, id: &str) {
        let segs = self.curves(fam)[id].segments.clone();
        let set: BTreeSet<&String> = segs.iter().collect();
        for s in &segs {
            let e = self.edges.get_mut(s).unwrap();
            std::mem::swap(&mut e.from, &mut e.to);
        }
        for f in self.faces.values_mut() {
            for side in &mut f.boundary {
                if set.contains(&side.edge) {
                    side.sign = side.sign.flip();
                }
            }
        }
        let c = self.curves_mut(fam).get_mut(id).unwrap();
        c.segments.reverse();
    }

    pub fn interface(&self, name: &str) -> Result<&ArcInterface> {
        self.arc_interfaces
            .iter()
            .find(|i| i.name == name)
            .ok_or_else(|| super::SurfaceError::Rejected(format!("no interface named {name}")))
    }

    /// Marked points of an interface in boundary order, interval by interval.
    pub fn interface_points(&self, name: &str) -> Result<Vec<Vec<String>>> {
        let i = self.interface(name)?;
        Ok(i.intervals
            .iter()
            .map(|iv| iv.iter().skip(1).map(|e| self.edges[e].from.clone()).collect())
            .collect())
    }
}

/// Renames every vertex, edge, face and curve of `d` by prepending `prefix`.
/// Marks and the EH set follow their vertices; interface names are kept.
pub fn with_prefix(d: &Diagram, prefix: &str) -> Diagram {
    let p = |s: &String| format!("{prefix}{s}");
    let mut out = Diagram {
        vertices: d.vertices.iter().map(p).collect(),
        ..Diagram::default()
    };
    for (id, e) in &d.edges {
        let mut e = e.clone();
        e.from = p(&e.from);
        e.to = p(&e.to);
        e.curve = e.curve.as_ref().map(p);
        out.edges.insert(p(id), e);
    }
    for (id, f) in &d.faces {
        let mut f = f.clone();
        for s in &mut f.boundary {
            s.edge = p(&s.edge);
        }
        out.faces.insert(p(id), f);
    }
    for fam in [Family::Alpha, Family::Beta] {
        for (id, c) in d.curves(fam) {
            let c = Curve {
                closed: c.closed,
                segments: c.segments.iter().map(p).collect(),
            };
            out.curves_mut(fam).insert(p(id), c);
        }
    }
    out.arc_interfaces = d
        .arc_interfaces
        .iter()
        .map(|i| ArcInterface {
            intervals: i.intervals.iter().map(|iv| iv.iter().map(p).collect()).collect(),
            ..i.clone()
        })
        .collect();
    out.tags.eh = d.tags.eh.as_ref().map(|s| s.iter().map(p).collect());
    out.tags.marks = d.tags.marks.iter().map(|(k, v)| (k.clone(), p(v))).collect();
    out
}

/// The mirror diagram: the surface orientation is reversed and the two curve
/// families trade places. Interfaces switch side and family.
pub fn mirror(d: &Diagram) -> Diagram {
    let mut out = d.clone();
    for e in out.edges.values_mut() {
        e.kind = match e.kind {
            EdgeKind::Alpha => EdgeKind::Beta,
            EdgeKind::Beta => EdgeKind::Alpha,
            k => k,
        };
    }
    for f in out.faces.values_mut() {
        f.boundary.reverse();
        for s in &mut f.boundary {
            s.sign = s.sign.flip();
        }
    }
    std::mem::swap(&mut out.alpha_curves, &mut out.beta_curves);
    for i in &mut out.arc_interfaces {
        i.family = i.family.other();
        i.side = match i.side {
            InterfaceSide::Left => InterfaceSide::Right,
            InterfaceSide::Right => InterfaceSide::Left,
        };
        for iv in &mut i.intervals {
            iv.reverse();
        }
    }
    // Boundary edges must run with the surface on their left.
    let flip: Vec<String> = out
        .edges
        .iter()
        .filter(|(_, e)| e.kind == EdgeKind::Boundary)
        .map(|(id, _)| id.clone())
        .collect();
    for id in flip {
        let e = out.edges.get_mut(&id).unwrap();
        std::mem::swap(&mut e.from, &mut e.to);
        for f in out.faces.values_mut() {
            for s in &mut f.boundary {
                if s.edge == id {
                    s.sign = s.sign.flip();
                }
            }
        }
    }
    out
}

/// Glues interface `ia` of `a` to interface `ib` of `b`. Interval k of one
/// is matched with interval k of the other read backwards, so the arc
/// diagrams must be reverses of each other. The ids of the two diagrams must
/// be disjoint; see [`with_prefix`].
pub fn concatenate(a: &Diagram, ia: &str, b: &Diagram, ib: &str) -> Result<Diagram> {
    let (i1, i2) = (a.interface(ia)?.clone(), b.interface(ib)?.clone());
    if i1.family != i2.family {
        return reject("glued interfaces must carry arcs of the same family");
    }
    let shapes = |i: &ArcInterface| -> Vec<usize> { i.intervals.iter().map(|iv| iv.len()).collect() };
    if shapes(&i1) != shapes(&i2) {
        return reject("glued interfaces have different interval shapes");
    }
    let clash: Vec<&String> = b
        .vertices
        .iter()
        .filter(|v| a.vertices.contains(*v))
        .chain(b.edges.keys().filter(|e| a.edges.contains_key(*e)))
        .chain(b.faces.keys().filter(|f| a.faces.contains_key(*f)))
        .collect();
    if !clash.is_empty() {
        return reject(format!("diagrams share ids {clash:?}"));
    }

    // Vertex identification b -> a.
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (iva, ivb) in i1.intervals.iter().zip(&i2.intervals) {
        let m = iva.len();
        for (k, ea) in iva.iter().enumerate() {
            let eb = &ivb[m - 1 - k];
            let (xa, xb) = (&a.edges[ea], &b.edges[eb]);
            for (u, v) in [(&xb.to, &xa.from), (&xb.from, &xa.to)] {
                if let Some(old) = rename.insert(u.clone(), v.clone()) {
                    if old != *v {
                        return reject(format!("interface vertex {u} glued to {old} and {v}"));
                    }
                }
            }
            pairs.push((ea.clone(), eb.clone()));
        }
    }
    // Arc endpoints must land on arc endpoints.
    let fam = i1.family;
    let ends = |d: &Diagram| -> BTreeSet<String> {
        d.arc_ids(fam)
            .iter()
            .flat_map(|c| {
                let s = &d.curves(fam)[c].segments;
                [d.edges[&s[0]].from.clone(), d.edges[s.last().unwrap()].to.clone()]
            })
            .collect()
    };
    let pts_a: BTreeSet<String> = a.interface_points(ia)?.concat().into_iter().collect();
    let pts_b: BTreeSet<String> = b.interface_points(ib)?.concat().into_iter().collect();
    let (ends_a, ends_b) = (ends(a), ends(b));
    for v in &pts_b {
        let w = &rename[v];
        if !pts_a.contains(w) || ends_b.contains(v) != ends_a.contains(w) {
            return reject("marked points do not line up");
        }
    }

    let mut out = a.clone();
    let rn = |v: &String| rename.get(v).cloned().unwrap_or_else(|| v.clone());
    out.vertices.extend(b.vertices.iter().map(rn));
    for (id, e) in &b.edges {
        let mut e = e.clone();
        e.from = rn(&e.from);
        e.to = rn(&e.to);
        out.edges.insert(id.clone(), e);
    }
    out.faces.extend(b.faces.clone());
    for f in [Family::Alpha, Family::Beta] {
        out.curves_mut(f).extend(b.curves(f).clone());
    }
    out.arc_interfaces.retain(|i| i.name != ia);
    out.arc_interfaces
        .extend(b.arc_interfaces.iter().filter(|i| i.name != ib).cloned());
    out.tags.eh = match (&a.tags.eh, &b.tags.eh) {
        (Some(x), Some(y)) => Some(x.union(y).cloned().collect()),
        _ => None,
    };
    out.tags.marks.extend(b.tags.marks.iter().map(|(k, v)| (k.clone(), rn(v))));

    // Each glued pair becomes one seam; the b copy is dropped.
    for (ea, eb) in &pairs {
        out.edges.get_mut(ea).unwrap().kind = EdgeKind::Seam;
        out.edges.remove(eb);
        for f in out.faces.values_mut() {
            for s in &mut f.boundary {
                if s.edge == *eb {
                    *s = Side {
                        edge: ea.clone(),
                        sign: s.sign.flip(),
                    };
                }
            }
        }
    }
    fuse_arcs(&mut out, fam, &pts_a);
    out.tidy();
    Ok(out)
}

/// Joins arcs of `fam` that meet at the glued marked points.
fn fuse_arcs(d: &mut Diagram, fam: Family, glued: &BTreeSet<String>) {
    loop {
        let arcs = d.arc_ids(fam);
        let ends = |d: &Diagram, c: &str| {
            let s = &d.curves(fam)[c].segments;
            (d.edges[&s[0]].from.clone(), d.edges[s.last().unwrap()].to.clone())
        };
        // Find an arc whose end is glued to another arc.
        let mut join = None;
        'outer: for x in &arcs {
            let (_, xe) = ends(d, x);
            if !glued.contains(&xe) {
                continue;
            }
            for y in &arcs {
                let (ys, ye) = ends(d, y);
                if y == x && ys == xe {
                    join = Some((x.clone(), y.clone(), false));
                    break 'outer;
                }
                if y != x && (ys == xe || ye == xe) {
                    join = Some((x.clone(), y.clone(), ye == xe));
                    break 'outer;
                }
            }
        }
        let Some((x, y, rev)) = join else { break };
        if x == y {
            d.curves_mut(fam).get_mut(&x).unwrap().closed = true;
            continue;
        }
        if rev {
            d.reverse_curve(fam, &y);
        }
        let tail = d.curves_mut(fam).remove(&y).unwrap();
        for s in &tail.segments {
            d.edges.get_mut(s).unwrap().curve = Some(x.clone());
        }
        d.curves_mut(fam).get_mut(&x).unwrap().segments.extend(tail.segments);
    }
}
