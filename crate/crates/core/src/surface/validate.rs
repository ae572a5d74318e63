use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Diagram, EdgeKind, Family, Sign};

/// One violated invariant with the ids it concerns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub code: String,
    pub ids: Vec<String>,
    pub detail: String,
}

struct Report(Vec<Violation>);

impl Report {
    fn push(&mut self, code: &str, ids: &[&str], detail: impl Into<String>) {
        self.0.push(Violation {
            code: code.to_string(),
            ids: ids.iter().map(|s| s.to_string()).collect(),
            detail: detail.into(),
        });
    }
}

/// Lists every violated invariant; an empty list means the diagram is valid.
pub fn validate(d: &Diagram) -> Vec<Violation> {
    let mut r = Report(Vec::new());
    if !references(d, &mut r) {
        r.0.sort();
        return r.0;
    }
    let words_ok = face_words(d, &mut r);
    edge_usage(d, &mut r);
    curves(d, &mut r);
    if words_ok {
        vertex_links(d, &mut r);
        topology(d, &mut r);
    }
    interfaces(d, &mut r);
    suture_flags(d, &mut r);
    tags(d, &mut r);
    r.0.sort();
    r.0.dedup();
    r.0
}

fn references(d: &Diagram, r: &mut Report) -> bool {
    let before = r.0.len();
    for (id, e) in &d.edges {
        for v in [&e.from, &e.to] {
            if !d.vertices.contains(v) {
                r.push("unknown-vertex", &[id, v], "edge endpoint is not a vertex");
            }
        }
        match (e.kind.family(), &e.curve) {
            (Some(fam), Some(c)) => {
                if !d.curves(fam).contains_key(c) {
                    r.push("unknown-curve", &[id, c], "edge names a missing curve");
                }
            }
            (Some(_), None) => r.push("curve-edge-without-curve", &[id], "curve edge has no curve id"),
            (None, Some(c)) => r.push("stray-curve-label", &[id, c], "non-curve edge names a curve"),
            (None, None) => {}
        }
    }
    for (fid, f) in &d.faces {
        if f.boundary.is_empty() {
            r.push("empty-face", &[fid], "face has an empty boundary word");
        }
        for s in &f.boundary {
            if !d.edges.contains_key(&s.edge) {
                r.push("unknown-edge", &[fid, &s.edge], "face word names a missing edge");
            }
        }
    }
    for fam in [Family::Alpha, Family::Beta] {
        for (cid, c) in d.curves(fam) {
            if c.segments.is_empty() {
                r.push("empty-curve", &[cid], "curve has no segments");
            }
            for s in &c.segments {
                match d.edges.get(s) {
                    None => r.push("unknown-edge", &[cid, s], "curve names a missing edge"),
                    Some(e) if e.kind != fam.edge_kind() || e.curve.as_deref() != Some(cid) => {
                        r.push("curve-edge-mismatch", &[cid, s], "segment kind or label disagrees")
                    }
                    _ => {}
                }
            }
        }
    }
    for i in &d.arc_interfaces {
        for e in i.intervals.iter().flatten() {
            if d.edges.get(e).map(|e| e.kind) != Some(EdgeKind::Boundary) {
                r.push("interface-edge", &[&i.name, e], "interface interval uses a non-boundary edge");
            }
        }
    }
    r.0.len() == before
}

fn face_words(d: &Diagram, r: &mut Report) -> bool {
    let mut ok = true;
    for (fid, f) in &d.faces {
        let n = f.boundary.len();
        for i in 0..n {
            let (_, end) = d.side_ends(&f.boundary[i]);
            let (start, _) = d.side_ends(&f.boundary[(i + 1) % n]);
            if end != start {
                ok = false;
                r.push(
                    "broken-face-word",
                    &[fid, &f.boundary[i].edge],
                    format!("side ends at {end} but the next starts at {start}"),
                );
            }
        }
    }
    ok
}

fn edge_usage(d: &Diagram, r: &mut Report) {
    let mut uses: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for f in d.faces.values() {
        for s in &f.boundary {
            let u = uses.entry(s.edge.as_str()).or_default();
            match s.sign {
                Sign::Pos => u.0 += 1,
                Sign::Neg => u.1 += 1,
            }
        }
    }
    for (id, e) in &d.edges {
        let (p, n) = uses.get(id.as_str()).copied().unwrap_or_default();
        let good = match e.kind {
            EdgeKind::Boundary => p == 1 && n == 0,
            _ => p == 1 && n == 1,
        };
        if !good {
            r.push(
                "edge-usage",
                &[id],
                format!("{:?} edge used +{p} / -{n} times", e.kind),
            );
        }
    }
    for v in &d.vertices {
        if !d.edges.values().any(|e| &e.from == v || &e.to == v) {
            r.push("isolated-vertex", &[v], "vertex has no edges");
        }
    }
}

fn curves(d: &Diagram, r: &mut Report) {
    let mut on_curve: BTreeMap<&str, usize> = BTreeMap::new();
    let boundary_vertices: BTreeSet<&str> = d
        .edges
        .values()
        .filter(|e| e.kind == EdgeKind::Boundary)
        .flat_map(|e| [e.from.as_str(), e.to.as_str()])
        .collect();
    for fam in [Family::Alpha, Family::Beta] {
        for (cid, c) in d.curves(fam) {
            for s in &c.segments {
                *on_curve.entry(s.as_str()).or_default() += 1;
            }
            let segs: Vec<_> = c.segments.iter().filter_map(|s| d.edges.get(s)).collect();
            if segs.is_empty() {
                continue;
            }
            for w in segs.windows(2) {
                if w[0].to != w[1].from {
                    r.push("curve-not-connected", &[cid], "consecutive segments do not meet");
                }
            }
            let first = &segs[0].from;
            let last = &segs[segs.len() - 1].to;
            if c.closed && first != last {
                r.push("curve-not-closed", &[cid], "closed curve does not return to its start");
            }
            if !c.closed
                && (first == last
                    || !boundary_vertices.contains(first.as_str())
                    || !boundary_vertices.contains(last.as_str()))
            {
                r.push("arc-endpoints", &[cid], "arc must end on two boundary vertices");
            }
            let verts = d.curve_vertices(c);
            let distinct: BTreeSet<_> = verts.iter().collect();
            if distinct.len() != verts.len() {
                r.push("curve-self-intersection", &[cid], "curve revisits a vertex");
            }
        }
    }
    for (id, e) in &d.edges {
        if e.kind.is_curve() && on_curve.get(id.as_str()) != Some(&1) {
            r.push("curve-coverage", &[id], "curve edge must belong to exactly one curve");
        }
    }
    if !d.is_bordered() {
        let a = d.closed_curve_ids(Family::Alpha).len();
        let b = d.closed_curve_ids(Family::Beta).len();
        if a != b {
            r.push(
                "unbalanced",
                &[],
                format!("{a} closed alpha curves but {b} closed beta curves"),
            );
        }
        for fam in [Family::Alpha, Family::Beta] {
            for a in d.arc_ids(fam) {
                r.push("arc-without-interface", &[&a], "arcs need a bordered interface");
            }
        }
    }
}

/// Checks the cyclic link at every vertex: it must be a single cycle, and at
/// intersection vertices it must have length four and alternate families.
fn vertex_links(d: &Diagram, r: &mut Report) {
    // Link nodes are edge ends (edge id, end is `to`); corners join them.
    type End<'a> = (&'a str, bool);
    let mut adj: BTreeMap<&str, BTreeMap<End, Vec<End>>> = BTreeMap::new();
    for (id, e) in &d.edges {
        adj.entry(e.from.as_str()).or_default().entry((id.as_str(), false)).or_default();
        adj.entry(e.to.as_str()).or_default().entry((id.as_str(), true)).or_default();
    }
    for f in d.faces.values() {
        let n = f.boundary.len();
        for i in 0..n {
            let a = &f.boundary[i];
            let b = &f.boundary[(i + 1) % n];
            let (_, v) = d.side_ends(a);
            let a_end = (a.edge.as_str(), a.sign == Sign::Pos);
            let b_end = (b.edge.as_str(), b.sign == Sign::Neg);
            let m = adj.entry(v).or_default();
            m.entry(a_end).or_default().push(b_end);
            m.entry(b_end).or_default().push(a_end);
        }
    }
    let intersections = d.intersection_points();
    for (v, links) in &adj {
        let boundary = links.keys().any(|(e, _)| d.edges[*e].kind == EdgeKind::Boundary);
        let mut degree_ok = true;
        for (end, nb) in links {
            let want = if d.edges[end.0].kind == EdgeKind::Boundary { 1 } else { 2 };
            if nb.len() != want {
                degree_ok = false;
            }
        }
        if !degree_ok {
            r.push("vertex-link", &[v], "edge ends around the vertex are not glued consistently");
            continue;
        }
        // connectivity of the link
        let start = *links.keys().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in &links[&x] {
                if seen.insert(*y) {
                    stack.push(*y);
                }
            }
        }
        if seen.len() != links.len() {
            r.push("vertex-link", &[v], "vertex link is disconnected (pinched surface)");
            continue;
        }
        if intersections.contains(*v) {
            let kinds: Vec<EdgeKind> = links.keys().map(|(e, _)| d.edges[*e].kind).collect();
            let alternating = links.iter().all(|(a, nb)| {
                nb.iter()
                    .all(|b| d.edges[a.0].kind != d.edges[b.0].kind && d.edges[b.0].kind.is_curve())
            });
            if kinds.len() != 4 || boundary || !alternating {
                r.push(
                    "intersection-vertex",
                    &[v],
                    format!("intersection vertex has degree {} or a non-alternating link", kinds.len()),
                );
            }
        } else if boundary {
            let bd = links
                .keys()
                .filter(|(e, _)| d.edges[*e].kind == EdgeKind::Boundary)
                .count();
            if bd != 2 {
                r.push("boundary-vertex", &[v], "boundary vertex must meet two boundary edges");
            }
        }
    }
}

fn topology(d: &Diagram, r: &mut Report) {
    // Connected components of the surface via shared edges.
    let ids: Vec<&String> = d.faces.keys().collect();
    let pos: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, f)| (f.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut first_face: BTreeMap<&str, usize> = BTreeMap::new();
    for (fid, f) in &d.faces {
        for s in &f.boundary {
            let i = pos[fid.as_str()];
            if let Some(&j) = first_face.get(s.edge.as_str()) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            } else {
                first_face.insert(s.edge.as_str(), i);
            }
        }
    }
    let mut chi: BTreeMap<usize, i64> = BTreeMap::new();
    let mut bcount: BTreeMap<usize, i64> = BTreeMap::new();
    for i in 0..ids.len() {
        let root = find(&mut parent, i);
        *chi.entry(root).or_default() += 1;
    }
    for (eid, e) in &d.edges {
        if let Some(&i) = first_face.get(eid.as_str()) {
            let root = find(&mut parent, i);
            *chi.entry(root).or_default() -= 1;
        }
        let _ = e;
    }
    let mut vertex_root: BTreeMap<&str, usize> = BTreeMap::new();
    for (eid, e) in &d.edges {
        if let Some(&i) = first_face.get(eid.as_str()) {
            let root = find(&mut parent, i);
            vertex_root.insert(e.from.as_str(), root);
            vertex_root.insert(e.to.as_str(), root);
        }
    }
    for root in vertex_root.values() {
        *chi.entry(*root).or_default() += 1;
    }
    let iface = d.interface_edges();
    for comp in d.boundary_components() {
        let Some(&i) = first_face.get(comp[0].as_str()) else { continue };
        let root = find(&mut parent, i);
        *bcount.entry(root).or_default() += 1;
        let closed = {
            let last = &d.edges[comp.last().unwrap()];
            let first = &d.edges[&comp[0]];
            last.to == first.from
        };
        if !closed {
            r.push("boundary-cycle", &[&comp[0]], "boundary edges do not close up");
        }
        let has_suture = comp.iter().any(|e| {
            !iface.contains(e)
                && d.occurrences(e).iter().any(|(f, _, _)| d.faces[f].suture)
        });
        if !has_suture {
            r.push(
                "degenerate-boundary",
                &[&comp[0]],
                "boundary component has no suture-region side",
            );
        }
    }
    for (root, x) in &chi {
        let b = bcount.get(root).copied().unwrap_or(0);
        if b == 0 {
            r.push("closed-component", &[ids[*root]], "surface component without boundary");
            continue;
        }
        let twice_genus = 2 - x - b;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            r.push(
                "euler-characteristic",
                &[ids[*root]],
                format!("chi {x} with {b} boundary components is not a surface"),
            );
        }
    }
}

fn interfaces(d: &Diagram, r: &mut Report) {
    let mut used = BTreeSet::new();
    for i in &d.arc_interfaces {
        for iv in &i.intervals {
            if iv.is_empty() {
                r.push("interface-interval", &[&i.name], "empty interval");
                continue;
            }
            for e in iv {
                if !used.insert(e.clone()) {
                    r.push("interface-overlap", &[&i.name, e], "edge used by two intervals");
                }
            }
            for w in iv.windows(2) {
                if let (Some(a), Some(b)) = (d.edges.get(&w[0]), d.edges.get(&w[1])) {
                    if a.to != b.from {
                        r.push("interface-interval", &[&i.name, &w[0]], "interval edges are not consecutive");
                    }
                }
            }
        }
    }
    // Every arc endpoint must be an interior point of an interval of its family.
    for fam in [Family::Alpha, Family::Beta] {
        let inner: BTreeSet<String> = d
            .arc_interfaces
            .iter()
            .filter(|i| i.family == fam)
            .flat_map(|i| i.intervals.iter())
            .flat_map(|iv| iv.iter().skip(1).filter_map(|e| d.edges.get(e)).map(|e| e.from.clone()))
            .collect();
        for (cid, c) in d.curves(fam) {
            if c.closed || c.segments.iter().any(|s| !d.edges.contains_key(s)) {
                continue;
            }
            let first = &d.edges[&c.segments[0]].from;
            let last = &d.edges[c.segments.last().unwrap()].to;
            for v in [first, last] {
                if !inner.contains(v) {
                    r.push("arc-endpoint", &[cid, v], "arc endpoint is not a marked point of a matching interface");
                }
            }
        }
    }
    if d.is_bordered() {
        // Each component of the complement of one family must reach the free boundary.
        for fam in [Family::Alpha, Family::Beta] {
            region_condition(d, fam, r);
        }
    }
}

fn region_condition(d: &Diagram, cut: Family, r: &mut Report) {
    let ids: Vec<&String> = d.faces.keys().collect();
    let pos: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, f)| (f.as_str(), i)).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut by_edge: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (fid, f) in &d.faces {
        for s in &f.boundary {
            by_edge.entry(s.edge.as_str()).or_default().push(pos[fid.as_str()]);
        }
    }
    for (e, fs) in &by_edge {
        if d.edges[*e].kind == cut.edge_kind() {
            continue;
        }
        for w in fs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut free = vec![false; ids.len()];
    for i in 0..ids.len() {
        if d.faces[ids[i]].suture {
            let root = find(&mut parent, i);
            free[root] = true;
        }
    }
    for i in 0..ids.len() {
        let root = find(&mut parent, i);
        if !free[root] {
            r.push(
                "bordered-region-condition",
                &[ids[i]],
                format!("component of the complement of the {cut:?} curves misses the free boundary"),
            );
        }
    }
}

fn suture_flags(d: &Diagram, r: &mut Report) {
    let mut fixed = d.clone();
    fixed.recompute_suture_flags();
    for (fid, f) in &d.faces {
        if fixed.faces[fid].suture != f.suture {
            r.push("suture-flag", &[fid], "suture flag disagrees with boundary contact");
        }
        if !f.suture {
            for s in &f.boundary {
                if d.edges.get(&s.edge).map(|e| e.kind) == Some(EdgeKind::Seam) {
                    r.push("seam-in-interior-face", &[fid, &s.edge], "seams may only border suture faces");
                }
            }
        }
    }
}

fn tags(d: &Diagram, r: &mut Report) {
    if let Some(eh) = &d.tags.eh {
        for v in eh {
            if !d.vertices.contains(v) {
                r.push("tag", &[v], "eh tag names a missing vertex");
            }
        }
    }
    for (name, v) in &d.tags.marks {
        if !d.vertices.contains(v) {
            r.push("tag", &[name, v], "mark names a missing vertex");
        }
    }
}
