//! Embedded bigons and rectangles, found by walking their boundaries.
//!
//! A candidate boundary follows curves and turns left at each corner; the
//! faces to its left are flooded out and the result is kept when it is an
//! embedded disk avoiding suture faces and the boundary off the chord.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::surface::{Diagram, EdgeKind, Family, Side, Sign};

/// A Reeb chord on an interface: from `start` to `end` along the boundary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ChordSide {
    pub interface: usize,
    pub start: String,
    pub end: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Domain {
    pub faces: BTreeSet<String>,
    /// Corners belonging to the source generator.
    pub x: BTreeSet<String>,
    /// Corners belonging to the target generator.
    pub y: BTreeSet<String>,
    /// Intersection points strictly inside.
    pub interior: BTreeSet<String>,
    pub chord: Option<ChordSide>,
}

type Step = (String, Sign);

pub(crate) struct Walker<'a> {
    pub d: &'a Diagram,
    occ: BTreeMap<String, Vec<(String, usize, Sign)>>,
    /// Curve edge -> (family, curve, position, closed, length).
    pos: BTreeMap<String, (Family, String, usize, bool, usize)>,
    points: BTreeSet<String>,
}

impl<'a> Walker<'a> {
    pub fn new(d: &'a Diagram) -> Self {
        let mut pos = BTreeMap::new();
        for fam in [Family::Alpha, Family::Beta] {
            for (id, c) in d.curves(fam) {
                for (k, s) in c.segments.iter().enumerate() {
                    pos.insert(s.clone(), (fam, id.clone(), k, c.closed, c.segments.len()));
                }
            }
        }
        Walker {
            d,
            occ: d.occurrence_index(),
            pos,
            points: d.intersection_points(),
        }
    }

    fn end(&self, s: &Step) -> &str {
        let e = &self.d.edges[&s.0];
        match s.1 {
            Sign::Pos => &e.to,
            Sign::Neg => &e.from,
        }
    }

    fn start(&self, s: &Step) -> &str {
        let e = &self.d.edges[&s.0];
        match s.1 {
            Sign::Pos => &e.from,
            Sign::Neg => &e.to,
        }
    }

    fn left_face(&self, s: &Step) -> Option<(&str, usize)> {
        self.occ
            .get(&s.0)?
            .iter()
            .find(|(_, _, sg)| *sg == s.1)
            .map(|(f, i, _)| (f.as_str(), *i))
    }

    /// The side following `s` in the face on its left.
    fn turn(&self, s: &Step) -> Option<Step> {
        let (f, i) = self.left_face(s)?;
        let b = &self.d.faces[f].boundary;
        let Side { edge, sign } = &b[(i + 1) % b.len()];
        Some((edge.clone(), *sign))
    }

    fn family(&self, edge: &str) -> Option<Family> {
        self.d.edges[edge].kind.family()
    }

    /// Continues straight along the curve carrying `s`.
    fn straight(&self, s: &Step) -> Option<Step> {
        let (fam, id, k, closed, n) = self.pos.get(&s.0)?;
        let segs = &self.d.curves(*fam)[id].segments;
        let next = match s.1 {
            Sign::Pos if k + 1 < *n => k + 1,
            Sign::Pos if *closed => 0,
            Sign::Neg if *k > 0 => k - 1,
            Sign::Neg if *closed => n - 1,
            _ => return None,
        };
        Some((segs[next].clone(), s.1))
    }

    /// Steps leaving `v` along curves of `fam`.
    fn outgoing(&self, v: &str, fam: Family) -> Vec<Step> {
        let kind = fam.edge_kind();
        let mut out = Vec::new();
        for (id, e) in &self.d.edges {
            if e.kind != kind {
                continue;
            }
            if e.from == v {
                out.push((id.clone(), Sign::Pos));
            }
            if e.to == v {
                out.push((id.clone(), Sign::Neg));
            }
        }
        out
    }

    /// Runs along a curve from `first`, yielding each prefix whose end is an
    /// intersection point or an arc end, until a vertex of `used` recurs.
    fn run(&self, first: Step, used: &BTreeSet<String>) -> Vec<(Vec<Step>, bool)> {
        let mut out = Vec::new();
        let mut path = vec![first];
        let mut seen = BTreeSet::new();
        loop {
            let last = path.last().unwrap().clone();
            let v = self.end(&last).to_string();
            let stop = used.contains(&v) || !seen.insert(v.clone());
            let next = self.straight(&last);
            if self.points.contains(&v) || next.is_none() || stop {
                out.push((path.clone(), stop));
            }
            match next {
                Some(n) if !stop => path.push(n),
                _ => break,
            }
        }
        out
    }

    fn vertices_of(&self, path: &[Step]) -> Vec<String> {
        path.iter().map(|s| self.start(s).to_string()).collect()
    }

    /// Floods the faces left of a closed path and checks it bounds an
    /// embedded disk clear of suture faces and of the boundary off the path.
    fn fill(&self, path: &[Step]) -> Option<(BTreeSet<String>, BTreeSet<String>)> {
        let verts = self.vertices_of(path);
        if verts.iter().collect::<BTreeSet<_>>().len() != verts.len() {
            return None;
        }
        let on_path: BTreeSet<&str> = path.iter().map(|s| s.0.as_str()).collect();
        let mut faces = BTreeSet::new();
        let mut stack = Vec::new();
        for s in path {
            let (f, _) = self.left_face(s)?;
            if faces.insert(f.to_string()) {
                stack.push(f.to_string());
            }
        }
        while let Some(f) = stack.pop() {
            let face = &self.d.faces[&f];
            if face.suture {
                return None;
            }
            for side in &face.boundary {
                if on_path.contains(side.edge.as_str()) {
                    continue;
                }
                if self.d.edges[&side.edge].kind == EdgeKind::Boundary {
                    return None;
                }
                let other = self.left_face(&(side.edge.clone(), side.sign.flip()))?;
                if faces.insert(other.0.to_string()) {
                    stack.push(other.0.to_string());
                }
            }
        }
        for s in path {
            if let Some((f, _)) = self.left_face(&(s.0.clone(), s.1.flip())) {
                if faces.contains(f) {
                    return None;
                }
            }
        }
        let mut vs = BTreeSet::new();
        let mut es = BTreeSet::new();
        for f in &faces {
            for side in &self.d.faces[f].boundary {
                es.insert(side.edge.clone());
                let (a, b) = self.d.side_ends(side);
                vs.insert(a.to_string());
                vs.insert(b.to_string());
            }
        }
        if vs.len() as i64 - es.len() as i64 + faces.len() as i64 != 1 {
            return None;
        }
        let interior = vs
            .into_iter()
            .filter(|v| self.points.contains(v) && !verts.contains(v))
            .collect();
        Some((faces, interior))
    }

    /// Closing check: turning left at the end of `path` must give its first step.
    fn closes(&self, path: &[Step]) -> bool {
        self.turn(path.last().unwrap()).as_ref() == Some(&path[0])
    }

    /// Left turn onto the other family at an intersection point.
    fn turn_onto(&self, s: &Step, fam: Family) -> Option<Step> {
        let t = self.turn(s)?;
        (self.family(&t.0) == Some(fam)).then_some(t)
    }

    /// All bigons and rectangles away from the interfaces.
    pub fn interior_domains(&self) -> BTreeSet<Domain> {
        let mut out = BTreeSet::new();
        for c0 in &self.points {
            for a0 in self.outgoing(c0, Family::Alpha) {
                let used0 = BTreeSet::from([c0.clone()]);
                for (side1, stop1) in self.run(a0, &BTreeSet::new()) {
                    if stop1 {
                        continue;
                    }
                    let c1 = self.end(side1.last().unwrap()).to_string();
                    if !self.points.contains(&c1) {
                        continue;
                    }
                    let Some(b1) = self.turn_onto(side1.last().unwrap(), Family::Beta) else { continue };
                    let mut used1: BTreeSet<String> = self.vertices_of(&side1).into_iter().collect();
                    used1.insert(c1.clone());
                    used1.remove(c0);
                    for (side2, _) in self.run(b1, &used1) {
                        let c2 = self.end(side2.last().unwrap()).to_string();
                        let path12: Vec<Step> = side1.iter().chain(&side2).cloned().collect();
                        if &c2 == c0 {
                            if self.closes(&path12) {
                                self.keep(&path12, [&c1], [c0], None, &mut out);
                            }
                            continue;
                        }
                        if used1.contains(&c2) || used0.contains(&c2) || !self.points.contains(&c2) {
                            continue;
                        }
                        let Some(a2) = self.turn_onto(side2.last().unwrap(), Family::Alpha) else { continue };
                        let mut used2 = used1.clone();
                        used2.extend(self.vertices_of(&side2));
                        used2.insert(c2.clone());
                        used2.remove(c0);
                        for (side3, stop3) in self.run(a2, &used2) {
                            if stop3 {
                                continue;
                            }
                            let c3 = self.end(side3.last().unwrap()).to_string();
                            if !self.points.contains(&c3) || &c3 == c0 {
                                continue;
                            }
                            let Some(b3) = self.turn_onto(side3.last().unwrap(), Family::Beta) else { continue };
                            let mut used3 = used2.clone();
                            used3.extend(self.vertices_of(&side3));
                            used3.insert(c3.clone());
                            used3.remove(c0);
                            for (side4, _) in self.run(b3, &used3) {
                                if self.end(side4.last().unwrap()) != c0 {
                                    continue;
                                }
                                let path: Vec<Step> = path12.iter().chain(&side3).chain(&side4).cloned().collect();
                                if self.closes(&path) {
                                    self.keep(&path, [&c1, &c3], [c0, &c2], None, &mut out);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Rectangles with one side a Reeb chord on an interface: chord, arc,
    /// interior curve, arc.
    pub fn chord_domains(&self) -> BTreeSet<Domain> {
        let mut out = BTreeSet::new();
        for (k, iface) in self.d.arc_interfaces.iter().enumerate() {
            let fam = iface.family;
            for interval in &iface.intervals {
                for i in 0..interval.len() {
                    let p = self.d.edges[&interval[i]].to.clone();
                    for j in i + 1..interval.len() {
                        let q = self.d.edges[&interval[j]].to.clone();
                        let chord: Vec<Step> = interval[i + 1..=j].iter().map(|e| (e.clone(), Sign::Pos)).collect();
                        self.chord_rectangles(k, fam, &p, &q, chord, &mut out);
                    }
                }
            }
        }
        out
    }

    fn chord_rectangles(&self, k: usize, fam: Family, p: &str, q: &str, chord: Vec<Step>, out: &mut BTreeSet<Domain>) {
        let Some(a0) = self.turn(chord.last().unwrap()) else { return };
        if self.family(&a0.0) != Some(fam) {
            return;
        }
        let used0: BTreeSet<String> = self.vertices_of(&chord).into_iter().filter(|v| v != p).collect();
        for (side1, stop1) in self.run(a0, &used0) {
            if stop1 {
                continue;
            }
            let c1 = self.end(side1.last().unwrap()).to_string();
            if !self.points.contains(&c1) {
                continue;
            }
            let Some(b) = self.turn_onto(side1.last().unwrap(), fam.other()) else { continue };
            let mut used1 = used0.clone();
            used1.extend(self.vertices_of(&side1));
            used1.insert(c1.clone());
            for (side2, stop2) in self.run(b, &used1) {
                if stop2 {
                    continue;
                }
                let c2 = self.end(side2.last().unwrap()).to_string();
                if !self.points.contains(&c2) {
                    continue;
                }
                let Some(a1) = self.turn_onto(side2.last().unwrap(), fam) else { continue };
                let mut used2 = used1.clone();
                used2.extend(self.vertices_of(&side2));
                used2.insert(c2.clone());
                for (side3, _) in self.run(a1, &used2) {
                    if self.end(side3.last().unwrap()) != p || self.straight(side3.last().unwrap()).is_some() {
                        continue;
                    }
                    let path: Vec<Step> = chord.iter().chain(&side1).chain(&side2).chain(&side3).cloned().collect();
                    if !self.closes(&path) {
                        continue;
                    }
                    // Out of x into y: the arc side leaving the chord ends at
                    // an x corner on alpha interfaces and a y corner on beta ones.
                    let (x, y) = match fam {
                        Family::Alpha => (&c1, &c2),
                        Family::Beta => (&c2, &c1),
                    };
                    let cs = ChordSide {
                        interface: k,
                        start: p.to_string(),
                        end: q.to_string(),
                    };
                    self.keep(&path, [x], [y], Some(cs), out);
                }
            }
        }
    }

    fn keep<'s, const N: usize>(
        &self,
        path: &[Step],
        x: [&'s String; N],
        y: [&'s String; N],
        chord: Option<ChordSide>,
        out: &mut BTreeSet<Domain>,
    ) {
        if let Some((faces, interior)) = self.fill(path) {
            out.insert(Domain {
                faces,
                x: x.into_iter().cloned().collect(),
                y: y.into_iter().cloned().collect(),
                interior,
                chord,
            });
        }
    }
}
