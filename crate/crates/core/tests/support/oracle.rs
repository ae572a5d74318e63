//! A brute-force second opinion on generators and homology.
//!
//! Generators come from trying every subset of intersection points.
//! Differentials come from trying every connected set of non-suture faces
//! as a domain: its boundary must be one embedded loop with two or four
//! convex corners, and the faces must form a disk. Ranks come from a plain
//! elimination over bit rows. Nothing here calls the engine's enumerators.

use std::collections::{BTreeMap, BTreeSet};

use sfh_core::surface::{Diagram, EdgeKind, Sign};

#[derive(Clone, Debug)]
pub struct Census {
    pub generators: Vec<BTreeSet<String>>,
    /// (faces, x corners, y corners, interior points)
    pub domains: Vec<(BTreeSet<String>, BTreeSet<String>, BTreeSet<String>, BTreeSet<String>)>,
    pub rank: usize,
}

struct Point {
    name: String,
    alpha: String,
    beta: String,
}

fn points(d: &Diagram) -> Vec<Point> {
    let mut curve_at: BTreeMap<&str, [Option<String>; 2]> = BTreeMap::new();
    for e in d.edges.values() {
        let slot = match e.kind {
            EdgeKind::Alpha => 0,
            EdgeKind::Beta => 1,
            _ => continue,
        };
        for v in [&e.from, &e.to] {
            curve_at.entry(v).or_default()[slot] = e.curve.clone();
        }
    }
    curve_at
        .into_iter()
        .filter_map(|(v, [a, b])| {
            Some(Point {
                name: v.to_string(),
                alpha: a?,
                beta: b?,
            })
        })
        .collect()
}

/// Subsets of points using each closed curve once and each arc at most once.
pub fn generators(d: &Diagram) -> Vec<BTreeSet<String>> {
    let pts = points(d);
    assert!(pts.len() <= 24, "too many points for the oracle");
    let closed: BTreeSet<String> = d
        .alpha_curves
        .iter()
        .chain(&d.beta_curves)
        .filter(|(_, c)| c.closed)
        .map(|(id, _)| id.clone())
        .collect();
    let mut out = Vec::new();
    'subsets: for mask in 0u32..(1 << pts.len()) {
        let mut used = BTreeSet::new();
        for (k, p) in pts.iter().enumerate() {
            if mask >> k & 1 == 1 && (!used.insert(format!("a{}", p.alpha)) || !used.insert(format!("b{}", p.beta))) {
                continue 'subsets;
            }
        }
        let hit = |c: &String| used.contains(&format!("a{c}")) || used.contains(&format!("b{c}"));
        if closed.iter().all(hit) {
            out.push(pts.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, p)| p.name.clone()).collect());
        }
    }
    out.sort();
    out
}

/// A face corner: the vertex at the start of side `i`.
type Corner = (String, usize);

struct Faces<'a> {
    d: &'a Diagram,
    /// (face, index) of every side, by edge and sign.
    side_at: BTreeMap<(String, Sign), Vec<(String, usize)>>,
}

impl<'a> Faces<'a> {
    fn new(d: &'a Diagram) -> Self {
        let mut side_at: BTreeMap<(String, Sign), Vec<(String, usize)>> = BTreeMap::new();
        for (fid, f) in &d.faces {
            for (i, s) in f.boundary.iter().enumerate() {
                side_at.entry((s.edge.clone(), s.sign)).or_default().push((fid.clone(), i));
            }
        }
        Faces { d, side_at }
    }

    fn ends(&self, f: &str, i: usize) -> (String, String) {
        let s = &self.d.faces[f].boundary[i];
        let e = &self.d.edges[&s.edge];
        match s.sign {
            Sign::Pos => (e.from.clone(), e.to.clone()),
            Sign::Neg => (e.to.clone(), e.from.clone()),
        }
    }

    fn twin(&self, f: &str, i: usize) -> Option<(String, usize)> {
        let s = &self.d.faces[f].boundary[i];
        let other = if s.sign == Sign::Pos { Sign::Neg } else { Sign::Pos };
        self.side_at.get(&(s.edge.clone(), other)).and_then(|v| v.first().cloned())
    }

    fn family(&self, f: &str, i: usize) -> EdgeKind {
        self.d.edges[&self.d.faces[f].boundary[i].edge].kind
    }

    /// Checks a face set as a bigon or rectangle.
    #[allow(clippy::type_complexity)]
    fn domain(&self, set: &BTreeSet<String>) -> Option<(BTreeSet<String>, BTreeSet<String>, BTreeSet<String>)> {
        let mut bsides: Vec<(String, usize)> = Vec::new();
        let mut edges = BTreeSet::new();
        let mut verts = BTreeSet::new();
        for f in set {
            for i in 0..self.d.faces[f].boundary.len() {
                edges.insert(self.d.faces[f].boundary[i].edge.clone());
                verts.insert(self.ends(f, i).0);
                let inner = self.twin(f, i).is_some_and(|(g, _)| set.contains(&g));
                if !inner {
                    match self.family(f, i) {
                        EdgeKind::Alpha | EdgeKind::Beta => bsides.push((f.clone(), i)),
                        _ => return None,
                    }
                }
            }
        }
        // Disk: no pinched vertex, Euler characteristic one.
        let mut corners: BTreeMap<String, Vec<Corner>> = BTreeMap::new();
        for f in set {
            for i in 0..self.d.faces[f].boundary.len() {
                corners.entry(self.ends(f, i).0).or_default().push((f.clone(), i));
            }
        }
        for cs in corners.values() {
            let mut comp: BTreeSet<Corner> = [cs[0].clone()].into();
            let mut grew = true;
            while grew {
                grew = false;
                for (f, i) in cs {
                    if comp.contains(&(f.clone(), *i)) {
                        continue;
                    }
                    let n = self.d.faces[f].boundary.len();
                    let prev = (i + n - 1) % n;
                    let linked = comp.iter().any(|(g, j)| {
                        self.twin(f, *i).is_some_and(|(h, k)| {
                            let m = self.d.faces[&h].boundary.len();
                            h == *g && (k + 1) % m == *j
                        }) || self.twin(g, *j).is_some_and(|(h, k)| {
                            let m = self.d.faces[&h].boundary.len();
                            h == *f && (k + 1) % m == *i
                        }) || self.twin(f, prev).is_some_and(|(h, k)| h == *g && k == *j)
                    });
                    if linked {
                        comp.insert((f.clone(), *i));
                        grew = true;
                    }
                }
            }
            if comp.len() != cs.len() {
                return None;
            }
        }
        let chi = set.len() as i64 - edges.len() as i64 + verts.len() as i64;
        if chi != 1 {
            return None;
        }
        // One embedded boundary loop.
        let mut out_of: BTreeMap<String, (String, usize)> = BTreeMap::new();
        for (f, i) in &bsides {
            if out_of.insert(self.ends(f, *i).0, (f.clone(), *i)).is_some() {
                return None;
            }
        }
        let start = bsides.first()?.clone();
        let mut loop_ = vec![start.clone()];
        loop {
            let (f, i) = loop_.last().unwrap();
            let next = out_of.get(&self.ends(f, *i).1)?.clone();
            if next == start {
                break;
            }
            loop_.push(next);
            if loop_.len() > bsides.len() {
                return None;
            }
        }
        if loop_.len() != bsides.len() {
            return None;
        }
        // Corners where the family changes: α runs go from y to x.
        let (mut x, mut y) = (BTreeSet::new(), BTreeSet::new());
        let n = loop_.len();
        for k in 0..n {
            let (f, i) = &loop_[k];
            let (g, j) = &loop_[(k + 1) % n];
            let (a, b) = (self.family(f, *i), self.family(g, *j));
            if a == b {
                continue;
            }
            let v = self.ends(f, *i).1;
            if corners[&v].len() != 1 {
                return None;
            }
            if b == EdgeKind::Alpha {
                y.insert(v);
            } else {
                x.insert(v);
            }
        }
        if !(x.len() == y.len() && (x.len() == 1 || x.len() == 2)) {
            return None;
        }
        let on_loop: BTreeSet<String> = loop_.iter().map(|(f, i)| self.ends(f, *i).0).collect();
        let pts: BTreeSet<String> = points(self.d).into_iter().map(|p| p.name).collect();
        let interior = verts.difference(&on_loop).filter(|v| pts.contains(*v)).cloned().collect();
        Some((x, y, interior))
    }
}

/// Connected sets of non-suture faces, each listed once.
fn connected_sets(d: &Diagram, f: &Faces) -> Vec<BTreeSet<String>> {
    let ids: Vec<String> = d.faces.iter().filter(|(_, x)| !x.suture).map(|(id, _)| id.clone()).collect();
    let mut nbr: BTreeMap<&String, BTreeSet<&String>> = BTreeMap::new();
    for a in &ids {
        for i in 0..d.faces[a].boundary.len() {
            if let Some((b, _)) = f.twin(a, i) {
                if let Some(b) = ids.iter().find(|x| **x == b) {
                    nbr.entry(a).or_default().insert(b);
                }
            }
        }
    }
    // Grow from each root using only faces later than it.
    let mut out: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    for (r, root) in ids.iter().enumerate() {
        let mut stack = vec![BTreeSet::from([root.clone()])];
        while let Some(s) = stack.pop() {
            if !out.insert(s.clone()) || s.len() >= 12 {
                continue;
            }
            for a in &s {
                for b in nbr.get(a).into_iter().flatten() {
                    let pos = ids.iter().position(|x| x == *b).unwrap();
                    if pos > r && !s.contains(*b) {
                        let mut t = s.clone();
                        t.insert((*b).clone());
                        if !out.contains(&t) {
                            stack.push(t);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn rank(mut rows: Vec<Vec<bool>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, |x| x.len());
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| rows[k][c]) else { continue };
        rows.swap(r, p);
        for k in 0..rows.len() {
            if k != r && rows[k][c] {
                let pivot = rows[r].clone();
                for (a, b) in rows[k].iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn census(d: &Diagram) -> Census {
    let gens = generators(d);
    let faces = Faces::new(d);
    let domains: Vec<_> = connected_sets(d, &faces)
        .into_iter()
        .filter_map(|s| faces.domain(&s).map(|(x, y, i)| (s, x, y, i)))
        .collect();
    let index: BTreeMap<&BTreeSet<String>, usize> = gens.iter().enumerate().map(|(k, g)| (g, k)).collect();
    let mut m = vec![vec![false; gens.len()]; gens.len()];
    for (j, g) in gens.iter().enumerate() {
        for (_, x, y, inside) in &domains {
            if !x.is_subset(g) || inside.iter().any(|p| g.contains(p)) {
                continue;
            }
            let mut h: BTreeSet<String> = g.difference(x).cloned().collect();
            if y.iter().any(|p| h.contains(p)) {
                continue;
            }
            h.extend(y.iter().cloned());
            if let Some(&i) = index.get(&h) {
                m[i][j] ^= true;
            }
        }
    }
    let r = rank(m);
    Census {
        rank: gens.len() - 2 * r,
        generators: gens,
        domains,
    }
}
