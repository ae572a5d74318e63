//! Low-level editing primitives shared by the surgeries.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{reject, Curve, Diagram, Edge, EdgeKind, Face, Family, Result, Side, Sign};

impl Diagram {
    fn id_taken(&self, id: &str) -> bool {
        self.vertices.contains(id)
            || self.edges.contains_key(id)
            || self.faces.contains_key(id)
            || self.alpha_curves.contains_key(id)
            || self.beta_curves.contains_key(id)
    }

    /// An id `prefix<n>` not used by anything in the diagram.
    pub fn fresh(&self, prefix: &str) -> String {
        (0..)
            .map(|n| format!("{prefix}{n}"))
            .find(|s| !self.id_taken(s))
            .unwrap()
    }

    pub fn add_edge(&mut self, prefix: &str, kind: EdgeKind, curve: Option<String>, from: &str, to: &str) -> String {
        let id = self.fresh(prefix);
        self.edges.insert(
            id.clone(),
            Edge {
                kind,
                curve,
                from: from.to_string(),
                to: to.to_string(),
            },
        );
        id
    }

    pub fn add_vertex(&mut self, prefix: &str) -> String {
        let v = self.fresh(prefix);
        self.vertices.insert(v.clone());
        v
    }

    /// Position of an oriented side; sides are unique in a valid diagram.
    pub fn find_side(&self, edge: &str, sign: Sign) -> Option<(String, usize)> {
        self.face_left_of(edge, sign)
    }

    /// Subdivides `e` at a new vertex. Returns (vertex, first piece, second
    /// piece) where the pieces follow the edge's orientation.
    pub fn split_edge(&mut self, e: &str) -> (String, String, String) {
        let old = self.edges.remove(e).expect("split of a missing edge");
        let w = self.add_vertex("v");
        let ea = self.fresh("e");
        self.edges.insert(
            ea.clone(),
            Edge {
                from: old.from.clone(),
                to: w.clone(),
                ..old.clone()
            },
        );
        let eb = self.fresh("e");
        self.edges.insert(
            eb.clone(),
            Edge {
                from: w.clone(),
                to: old.to.clone(),
                ..old.clone()
            },
        );
        for f in self.faces.values_mut() {
            let mut word = Vec::with_capacity(f.boundary.len() + 1);
            for s in f.boundary.drain(..) {
                if s.edge == e {
                    match s.sign {
                        Sign::Pos => {
                            word.push(Side::pos(ea.clone()));
                            word.push(Side::pos(eb.clone()));
                        }
                        Sign::Neg => {
                            word.push(Side::neg(eb.clone()));
                            word.push(Side::neg(ea.clone()));
                        }
                    }
                } else {
                    word.push(s);
                }
            }
            f.boundary = word;
        }
        for fam in [Family::Alpha, Family::Beta] {
            for c in self.curves_mut(fam).values_mut() {
                if let Some(k) = c.segments.iter().position(|s| s == e) {
                    c.segments.splice(k..=k, [ea.clone(), eb.clone()]);
                }
            }
        }
        for i in &mut self.arc_interfaces {
            for iv in &mut i.intervals {
                if let Some(k) = iv.iter().position(|s| s == e) {
                    iv.splice(k..=k, [ea.clone(), eb.clone()]);
                }
            }
        }
        (w, ea, eb)
    }

    /// Cuts face `f` by a new edge from corner `i` to corner `j`. The part
    /// containing `boundary[i]` keeps the id `f`. Returns (edge, new face).
    pub fn split_face(
        &mut self,
        f: &str,
        i: usize,
        j: usize,
        kind: EdgeKind,
        curve: Option<String>,
    ) -> (String, String) {
        assert_ne!(i, j, "chord endpoints must be distinct corners");
        let face = self.faces[f].clone();
        let from = self.corner_vertex(&face, i).to_string();
        let to = self.corner_vertex(&face, j).to_string();
        let prefix = if kind == EdgeKind::Seam { "s" } else { "e" };
        let edge = self.add_edge(prefix, kind, curve, &from, &to);
        let n = face.boundary.len();
        let mut w1: Vec<Side> = (0..(j + n - i) % n).map(|k| face.boundary[(i + k) % n].clone()).collect();
        w1.push(Side::neg(edge.clone()));
        let mut w2: Vec<Side> = (0..(i + n - j) % n).map(|k| face.boundary[(j + k) % n].clone()).collect();
        w2.push(Side::pos(edge.clone()));
        let g = self.fresh("f");
        self.faces.get_mut(f).unwrap().boundary = w1;
        self.faces.insert(
            g.clone(),
            Face {
                boundary: w2,
                suture: face.suture,
            },
        );
        (edge, g)
    }

    /// Deletes an edge whose two sides lie on different faces, merging them.
    pub fn merge_across(&mut self, edge: &str) -> Result<String> {
        let (f1, i) = self.find_side(edge, Sign::Pos).expect("edge has a + side");
        let (f2, j) = self.find_side(edge, Sign::Neg).expect("edge has a - side");
        if f1 == f2 {
            return reject(format!("cannot merge face {f1} with itself across {edge}"));
        }
        let a = self.faces.remove(&f1).unwrap();
        let b = self.faces.remove(&f2).unwrap();
        let mut word: Vec<Side> = Vec::new();
        let (n, m) = (a.boundary.len(), b.boundary.len());
        word.extend((1..n).map(|k| a.boundary[(i + k) % n].clone()));
        word.extend((1..m).map(|k| b.boundary[(j + k) % m].clone()));
        let keep = f1.clone().min(f2);
        self.faces.insert(
            keep.clone(),
            Face {
                boundary: word,
                suture: a.suture || b.suture,
            },
        );
        self.edges.remove(edge);
        Ok(keep)
    }

    fn degree(&self, v: &str) -> usize {
        self.edges
            .values()
            .map(|e| (e.from == v) as usize + (e.to == v) as usize)
            .sum()
    }

    /// Removes seams that are not needed to keep faces disks: seams between
    /// two different faces are merged away and dangling seams are dropped.
    /// Finally drops isolated vertices and recomputes suture flags.
    pub fn tidy(&mut self) {
        loop {
            let seams: Vec<String> = self
                .edges
                .iter()
                .filter(|(_, e)| e.kind == EdgeKind::Seam)
                .map(|(id, _)| id.clone())
                .collect();
            let mut changed = false;
            for s in seams {
                let (f1, _) = self.find_side(&s, Sign::Pos).unwrap();
                let (f2, _) = self.find_side(&s, Sign::Neg).unwrap();
                if f1 != f2 {
                    self.merge_across(&s).unwrap();
                    changed = true;
                    break;
                }
                let e = &self.edges[&s];
                if self.degree(&e.from.clone()) == 1 || self.degree(&e.to.clone()) == 1 {
                    let f = self.faces.get_mut(&f1).unwrap();
                    f.boundary.retain(|side| side.edge != s);
                    self.edges.remove(&s);
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        let used: BTreeSet<String> = self
            .edges
            .values()
            .flat_map(|e| [e.from.clone(), e.to.clone()])
            .collect();
        self.vertices.retain(|v| used.contains(v));
        self.recompute_suture_flags();
    }

    /// Splits every vertex whose link has several components into one vertex
    /// per component. Needed after cutting the surface along a curve.
    pub fn split_pinched_vertices(&mut self) {
        type End = (String, bool);
        let mut links: BTreeMap<String, BTreeMap<End, Vec<End>>> = BTreeMap::new();
        for (id, e) in &self.edges {
            links.entry(e.from.clone()).or_default().entry((id.clone(), false)).or_default();
            links.entry(e.to.clone()).or_default().entry((id.clone(), true)).or_default();
        }
        for f in self.faces.values() {
            let n = f.boundary.len();
            for i in 0..n {
                let a = &f.boundary[i];
                let b = &f.boundary[(i + 1) % n];
                let v = self.side_ends(a).1.to_string();
                let x = (a.edge.clone(), a.sign == Sign::Pos);
                let y = (b.edge.clone(), b.sign == Sign::Neg);
                let m = links.entry(v).or_default();
                m.entry(x.clone()).or_default().push(y.clone());
                m.entry(y).or_default().push(x);
            }
        }
        for (v, link) in links {
            let mut comp: BTreeMap<End, usize> = BTreeMap::new();
            let mut ncomp = 0;
            for start in link.keys() {
                if comp.contains_key(start) {
                    continue;
                }
                let mut stack = vec![start.clone()];
                comp.insert(start.clone(), ncomp);
                while let Some(x) = stack.pop() {
                    for y in &link[&x] {
                        if !comp.contains_key(y) {
                            comp.insert(y.clone(), ncomp);
                            stack.push(y.clone());
                        }
                    }
                }
                ncomp += 1;
            }
            if ncomp < 2 {
                continue;
            }
            let mut names = vec![v.clone()];
            for _ in 1..ncomp {
                names.push(self.add_vertex("v"));
            }
            for ((edge, at_to), k) in comp {
                let e = self.edges.get_mut(&edge).unwrap();
                if at_to {
                    e.to = names[k].clone();
                } else {
                    e.from = names[k].clone();
                }
            }
        }
    }
}

/// Where a route meets an edge: the edge and, when both of its sides lie on
/// the same face, the sign of the side through which the route leaves.
#[derive(Clone, Debug)]
pub struct Hop {
    pub edge: String,
    pub exit_sign: Option<Sign>,
}

impl Hop {
    pub fn new(edge: impl Into<String>) -> Self {
        Hop {
            edge: edge.into(),
            exit_sign: None,
        }
    }
}

/// Inserts new curves along routes, subdividing faces and crossed edges.
pub struct Inserter<'a> {
    pub d: &'a mut Diagram,
    /// Face id to the face of the original diagram it descends from.
    pub ancestor: BTreeMap<String, String>,
    /// Edges a route may cross when it has to leave a face it was told about.
    pub crossable: BTreeSet<String>,
    /// Crossings added by automatic routing, with the ancestor face.
    pub auto: Vec<(String, String)>,
    /// Edge splits made at anchors: original edge -> (vertex, piece a, piece b).
    pub splits: BTreeMap<String, (String, String, String)>,
}

impl<'a> Inserter<'a> {
    pub fn new(d: &'a mut Diagram) -> Self {
        let ancestor = d.faces.keys().map(|f| (f.clone(), f.clone())).collect();
        Inserter {
            d,
            ancestor,
            crossable: BTreeSet::new(),
            auto: Vec::new(),
            splits: BTreeMap::new(),
        }
    }

    fn anc<'s>(&'s self, f: &'s str) -> &'s str {
        self.ancestor.get(f).map(String::as_str).unwrap_or(f)
    }

    /// Splits `edge` and returns the outgoing sides marking the new corner in
    /// the face holding the + side and in the face holding the - side.
    fn split_marked(&mut self, edge: &str) -> (String, Side, Side) {
        let (w, ea, eb) = self.d.split_edge(edge);
        if self.crossable.remove(edge) {
            self.crossable.insert(ea.clone());
            self.crossable.insert(eb.clone());
        }
        self.splits.insert(edge.to_string(), (w.clone(), ea.clone(), eb.clone()));
        (w, Side::pos(eb), Side::neg(ea))
    }

    fn face_of(&self, side: &Side) -> String {
        self.d.find_side(&side.edge, side.sign).expect("marked side exists").0
    }

    /// Inserts a closed curve. `hops[i]` is followed by `faces[i]`, so the
    /// face before `hops[0]` is the last entry of `faces`.
    pub fn closed_curve(&mut self, family: Family, hops: &[Hop], faces: &[String]) -> Result<String> {
        if hops.is_empty() || hops.len() != faces.len() {
            return reject("a closed route needs one face after each crossing");
        }
        let n = hops.len();
        let mut enter = Vec::with_capacity(n);
        let mut exit = Vec::with_capacity(n);
        for (k, hop) in hops.iter().enumerate() {
            let prev = &faces[(k + n - 1) % n];
            let next = &faces[k];
            let (ex, en) = self.anchor(hop, prev, next)?;
            exit.push(ex);
            enter.push(en);
        }
        let id = self.d.fresh(match family {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
        });
        self.d.curves_mut(family).insert(
            id.clone(),
            Curve {
                closed: true,
                segments: vec![],
            },
        );
        for k in 0..n {
            self.connect(family, &id, enter[k].clone(), exit[(k + 1) % n].clone(), &faces[k])?;
        }
        Ok(id)
    }

    fn anchor(&mut self, hop: &Hop, prev: &str, next: &str) -> Result<(Side, Side)> {
        let Some(e) = self.d.edges.get(&hop.edge) else {
            return reject(format!("route crosses unknown edge {}", hop.edge));
        };
        if e.kind == EdgeKind::Boundary {
            return reject(format!("route cannot cross boundary edge {}", hop.edge));
        }
        let fits = |s: Sign, me: &Self| {
            let a = me.d.find_side(&hop.edge, s).map(|(f, _)| me.anc(&f).to_string());
            let b = me.d.find_side(&hop.edge, s.flip()).map(|(f, _)| me.anc(&f).to_string());
            a.as_deref() == Some(prev) && b.as_deref() == Some(next)
        };
        let sign = match hop.exit_sign {
            Some(s) if fits(s, self) => s,
            Some(_) => return reject(format!("edge {} does not separate {prev} and {next} as asked", hop.edge)),
            None => match (fits(Sign::Pos, self), fits(Sign::Neg, self)) {
                (true, false) => Sign::Pos,
                (false, true) => Sign::Neg,
                (true, true) => return reject(format!("crossing of {} is ambiguous; give its side", hop.edge)),
                (false, false) => return reject(format!("edge {} does not separate {prev} and {next}", hop.edge)),
            },
        };
        let (_, plus, minus) = self.split_marked(&hop.edge);
        Ok(match sign {
            Sign::Pos => (plus, minus),
            Sign::Neg => (minus, plus),
        })
    }

    /// Draws the curve from the corner before `from` to the corner before
    /// `to`, crossing crossable edges inside descendants of `hint` when the
    /// two corners lie on different faces.
    fn connect(&mut self, family: Family, curve: &str, mut from: Side, to: Side, hint: &str) -> Result<()> {
        loop {
            let fa = self.face_of(&from);
            let ft = self.face_of(&to);
            if self.anc(&fa) != hint || self.anc(&ft) != hint {
                return reject(format!("route leaves face {hint} unexpectedly"));
            }
            if fa == ft {
                let word = &self.d.faces[&fa].boundary;
                let i = word.iter().position(|s| *s == from).unwrap();
                let j = word.iter().position(|s| *s == to).unwrap();
                if i == j {
                    return reject("route returns to the corner it started from");
                }
                let (edge, g) = self.d.split_face(&fa, i, j, family.edge_kind(), Some(curve.to_string()));
                let a = self.anc(&fa).to_string();
                self.ancestor.insert(g, a);
                self.d.curves_mut(family).get_mut(curve).unwrap().segments.push(edge);
                return Ok(());
            }
            let Some(edge) = self.bfs_first_crossing(&fa, &ft, hint) else {
                return reject(format!("no way through face {hint} without crossing its own curves"));
            };
            let (fs, _) = self.d.find_side(&edge, Sign::Pos).unwrap();
            let exit_sign = if fs == fa { Sign::Pos } else { Sign::Neg };
            let (w, plus, minus) = self.split_marked(&edge);
            self.auto.push((w, hint.to_string()));
            let (ex, en) = match exit_sign {
                Sign::Pos => (plus, minus),
                Sign::Neg => (minus, plus),
            };
            self.connect(family, curve, from, ex, hint)?;
            from = en;
        }
    }

    fn bfs_first_crossing(&self, start: &str, goal: &str, hint: &str) -> Option<String> {
        let mut prev: BTreeMap<String, (String, String)> = BTreeMap::new();
        let mut queue = VecDeque::from([start.to_string()]);
        let mut seen = BTreeSet::from([start.to_string()]);
        while let Some(f) = queue.pop_front() {
            if f == goal {
                let mut cur = f;
                let mut first = None;
                while let Some((p, e)) = prev.get(&cur) {
                    first = Some(e.clone());
                    cur = p.clone();
                }
                return first;
            }
            for s in &self.d.faces[&f].boundary {
                if !self.crossable.contains(&s.edge) {
                    continue;
                }
                if let Some((g, _)) = self.d.find_side(&s.edge, s.sign.flip()) {
                    if self.anc(&g) == hint && seen.insert(g.clone()) {
                        prev.insert(g.clone(), (f.clone(), s.edge.clone()));
                        queue.push_back(g);
                    }
                }
            }
        }
        None
    }
}
