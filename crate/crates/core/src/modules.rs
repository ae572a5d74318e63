//! Bordered invariants of nice diagrams as finite action tables.
//!
//! Only the truncated structures of nice diagrams are representable: type A
//! sides act by single algebra elements, type D sides emit single algebra
//! coefficients. Each interface becomes an arc diagram whose arcs are
//! ordered by their first marked point, latest first.
//!
//! A chord rectangle from x to y acts by the chord plus horizontal strands
//! on the arcs that stay occupied. On beta interfaces the chord leaves the
//! arc x gives up, so successive actions compose as `a·b`; on alpha
//! interfaces the chord enters it and they compose as `b·a`. Type D sides
//! use the reversed arc diagram and complementary idempotents, so their
//! coefficients are named in the algebra of the type A partner.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::BinaryMatrix;
use crate::sfc::{self, apply, ChainComplexF2, Domain, Generator};
use crate::strands::{ArcDiagram, Basis, Element, StrandAlgebra};
use crate::surface::{ArcInterface, Diagram, Family, InterfaceSide};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("diagram is not nice: {0:?}")]
    NotNice(Vec<String>),
    #[error("{0}")]
    Rejected(String),
}

pub type Result<T> = std::result::Result<T, ModuleError>;

fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(ModuleError::Rejected(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    D,
    A,
    AA,
}

/// One bordered side of a structure.
#[derive(Clone, Debug)]
pub struct BorderSide {
    pub interface: String,
    pub family: Family,
    pub algebra: StrandAlgebra,
    /// Left sides fill the `i` slot of `m[i|1|j]`, right sides the `j` slot.
    pub left: bool,
    /// Type D: idempotents are complements of the occupied arcs.
    pub dual: bool,
    /// Arc index of each curve ending on the interface.
    pub arcs: BTreeMap<String, usize>,
}

impl BorderSide {
    /// Whether successive actions by `a` then `b` compose as `a·b`.
    pub fn forward(&self) -> bool {
        self.family == Family::Beta
    }

    /// Whether `a` can carry a generator with idempotent `ix` to one with `iy`.
    pub fn fits(&self, a: usize, ix: usize, iy: usize) -> bool {
        let alg = &self.algebra;
        let b = &alg.basis[a];
        let (s, e) = (alg.idempotent(&alg.start_arcs(b)), alg.idempotent(&alg.end_arcs(b)));
        if self.forward() {
            (s, e) == (ix, iy)
        } else {
            (e, s) == (ix, iy)
        }
    }

    pub fn compose(&self, a: usize, b: usize) -> Element {
        if self.forward() {
            self.algebra.mul_basis(a, b)
        } else {
            self.algebra.mul_basis(b, a)
        }
    }
}

/// A table entry: `side` None is the differential m[0|1|0].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Entry {
    pub side: Option<usize>,
    pub input: usize,
    pub algebra: Option<usize>,
    pub output: usize,
    /// Faces of the domain that produced the entry; empty when injected.
    pub faces: BTreeSet<String>,
}

#[derive(Clone, Debug)]
pub struct BorderedStructure {
    pub name: String,
    pub kind: Kind,
    pub sides: Vec<BorderSide>,
    pub generators: Vec<Generator>,
    /// Display names, from diagram marks where a generator is a marked point.
    pub labels: Vec<String>,
    /// Basis idempotent of each generator on each side.
    pub idempotents: Vec<Vec<usize>>,
    pub entries: Vec<Entry>,
}

/// The arc diagram of an interface, its points read backwards for type D.
pub fn interface_arc_diagram(d: &Diagram, iface: &ArcInterface, reversed: bool) -> Result<(ArcDiagram, BTreeMap<String, usize>)> {
    let mut intervals = d.interface_points(&iface.name).map_err(|e| ModuleError::Rejected(e.to_string()))?;
    if reversed {
        for iv in &mut intervals {
            iv.reverse();
        }
    }
    let flat: Vec<String> = intervals.concat();
    let mut curves = Vec::new();
    for p in &flat {
        let Some(c) = d.curve_through(p, iface.family) else {
            return reject(format!("no {:?} curve ends at {p}", iface.family));
        };
        if d.curves(iface.family)[&c].closed {
            return reject(format!("closed curve {c} touches interface {}", iface.name));
        }
        curves.push(c);
    }
    let mut first: BTreeMap<&String, usize> = BTreeMap::new();
    for (k, c) in curves.iter().enumerate() {
        first.entry(c).or_insert(k);
    }
    let mut order: Vec<(&String, usize)> = first.into_iter().collect();
    order.sort_by_key(|&(_, k)| std::cmp::Reverse(k));
    let arcs: BTreeMap<String, usize> = order.iter().enumerate().map(|(i, (c, _))| ((*c).clone(), i)).collect();
    let names = order.iter().map(|(c, _)| (*c).clone()).collect();
    let matching = curves.iter().map(|c| arcs[c]).collect();
    let z = ArcDiagram::new(&iface.name, intervals, names, matching).map_err(|e| ModuleError::Rejected(e.to_string()))?;
    Ok((z, arcs))
}

fn occupied(d: &Diagram, side: &BorderSide, g: &Generator) -> BTreeSet<usize> {
    g.points
        .iter()
        .filter_map(|p| d.curve_through(p, side.family))
        .filter_map(|c| side.arcs.get(&c).copied())
        .collect()
}

fn idempotent_of(d: &Diagram, side: &BorderSide, g: &Generator) -> usize {
    let occ = occupied(d, side, g);
    let set = if side.dual {
        (0..side.algebra.z.arcs.len()).filter(|a| !occ.contains(a)).collect()
    } else {
        occ
    };
    side.algebra.idempotent(&set)
}

/// The algebra element of a set of chord domains with disjoint chords,
/// acting together on `x`.
fn chord_element(d: &Diagram, side: &BorderSide, doms: &[&Domain], x: &Generator) -> Result<usize> {
    let z = &side.algebra.z;
    let pos = |v: &str| z.point_index(v).ok_or_else(|| ModuleError::Rejected(format!("{v} is not a marked point")));
    let arc = |c: &String| d.curve_through(c, side.family).and_then(|k| side.arcs.get(&k).copied());
    let occ = occupied(d, side, x);
    let mut kept: BTreeSet<usize> = if side.dual {
        (0..z.arcs.len()).filter(|a| !occ.contains(a)).collect()
    } else {
        occ
    };
    let mut moving = BTreeSet::new();
    for dom in doms {
        let chord = dom.chord.as_ref().unwrap();
        let (s, e) = (pos(&chord.start)?, pos(&chord.end)?);
        moving.insert(if side.dual { (e, s) } else { (s, e) });
        let corner = if side.dual { &dom.y } else { &dom.x };
        let Some(given) = corner.iter().next().and_then(arc) else {
            return reject("chord domain corner is not on an interface arc");
        };
        kept.remove(&given);
    }
    let b = Basis { moving, horizontal: kept };
    side.algebra.index_of(&b).ok_or_else(|| {
        let faces: Vec<&BTreeSet<String>> = doms.iter().map(|d| &d.faces).collect();
        ModuleError::Rejected(format!("chord domains {faces:?} give no algebra element"))
    })
}

fn label(d: &Diagram, g: &Generator) -> String {
    let mut by_vertex: BTreeMap<&str, &str> = BTreeMap::new();
    for (name, v) in &d.tags.marks {
        // Prefer plain point names over dual-basis tags.
        if !name.contains('∨') {
            by_vertex.entry(v.as_str()).or_insert(name.as_str());
        }
    }
    if g.points.is_empty() {
        return "∅".into();
    }
    let parts: Vec<&str> = g.points.iter().map(|p| by_vertex.get(p.as_str()).copied().unwrap_or(p)).collect();
    if parts.len() == 1 {
        parts[0].to_string()
    } else {
        format!("({})", parts.join(","))
    }
}

/// The bordered invariant of a nice bordered diagram. Kind A and D need one
/// interface, AA needs a left and a right one.
pub fn bordered_invariant(d: &Diagram, kind: Kind, name: &str) -> Result<BorderedStructure> {
    let (nice, bad) = sfc::is_nice(d);
    if !nice {
        return Err(ModuleError::NotNice(bad));
    }
    let ifaces: Vec<&ArcInterface> = match kind {
        Kind::A | Kind::D => {
            if d.arc_interfaces.len() != 1 {
                return reject(format!("type {kind:?} needs exactly one interface"));
            }
            vec![&d.arc_interfaces[0]]
        }
        Kind::AA => {
            let l = d.arc_interfaces.iter().find(|i| i.side == InterfaceSide::Left);
            let r = d.arc_interfaces.iter().find(|i| i.side == InterfaceSide::Right);
            match (l, r, d.arc_interfaces.len()) {
                (Some(l), Some(r), 2) => vec![l, r],
                _ => return reject("type AA needs one left and one right interface"),
            }
        }
    };
    let dual = kind == Kind::D;
    let mut sides = Vec::new();
    for iface in &ifaces {
        let (z, arcs) = interface_arc_diagram(d, iface, dual)?;
        sides.push(BorderSide {
            interface: iface.name.clone(),
            family: iface.family,
            algebra: StrandAlgebra::new(z),
            left: iface.side == InterfaceSide::Left,
            dual,
            arcs,
        });
    }
    let generators = sfc::generators(d);
    let index: BTreeMap<&Generator, usize> = generators.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let idempotents: Vec<Vec<usize>> = generators
        .iter()
        .map(|g| sides.iter().map(|s| idempotent_of(d, s, g)).collect())
        .collect();

    let mut entries = Vec::new();
    for dom in sfc::domains(d) {
        for (j, x) in generators.iter().enumerate() {
            if let Some(y) = apply(&dom, x).and_then(|y| index.get(&y).copied()) {
                entries.push(Entry {
                    side: None,
                    input: j,
                    algebra: None,
                    output: y,
                    faces: dom.faces.clone(),
                });
            }
        }
    }
    let chordal: Vec<Domain> = sfc::chord_domains(d).into_iter().collect();
    let side_of = |dom: &Domain| {
        let iname = &d.arc_interfaces[dom.chord.as_ref().unwrap().interface].name;
        sides.iter().position(|s| &s.interface == iname)
    };
    for dom in &chordal {
        let Some(s) = side_of(dom) else { continue };
        for (j, x) in generators.iter().enumerate() {
            let Some(y) = apply(dom, x).and_then(|y| index.get(&y).copied()) else { continue };
            let a = chord_element(d, &sides[s], &[dom], x)?;
            // Idempotents on either side may kill the element.
            if !sides[s].fits(a, idempotents[j][s], idempotents[y][s]) {
                continue;
            }
            entries.push(Entry {
                side: Some(s),
                input: j,
                algebra: Some(a),
                output: y,
                faces: dom.faces.clone(),
            });
        }
    }
    // Two chord rectangles whose chords abut act together by the element
    // carrying both strands.
    for b1 in &chordal {
        for b2 in &chordal {
            let (c1, c2) = (b1.chord.as_ref().unwrap(), b2.chord.as_ref().unwrap());
            if c1.interface != c2.interface || c1.end != c2.start || !b1.faces.is_disjoint(&b2.faces) {
                continue;
            }
            let Some(s) = side_of(b1) else { continue };
            for (j, x) in generators.iter().enumerate() {
                if b1.x.iter().any(|p| b2.x.contains(p))
                    || !b1.x.iter().chain(&b2.x).all(|p| x.contains(p))
                    || b1.interior.iter().chain(&b2.interior).any(|p| x.contains(p)) {
                    continue;
                }
                let Some(y) = apply(b1, x).and_then(|m| apply(b2, &m)).and_then(|y| index.get(&y).copied()) else {
                    continue;
                };
                let a = chord_element(d, &sides[s], &[b1, b2], x)?;
                if !sides[s].fits(a, idempotents[j][s], idempotents[y][s]) {
                    continue;
                }
                entries.push(Entry {
                    side: Some(s),
                    input: j,
                    algebra: Some(a),
                    output: y,
                    faces: b1.faces.union(&b2.faces).cloned().collect(),
                });
            }
        }
    }
    entries.sort();
    Ok(BorderedStructure {
        name: name.to_string(),
        kind,
        labels: generators.iter().map(|g| label(d, g)).collect(),
        sides,
        generators,
        idempotents,
        entries,
    })
}

type Vector = BTreeSet<usize>;

fn toggle(v: &mut Vector, k: usize) {
    if !v.remove(&k) {
        v.insert(k);
    }
}

impl BorderedStructure {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of_label(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    /// m[0|1|0], or the idempotent part of δ¹ for type D.
    pub fn differential(&self, x: usize) -> Vector {
        let mut out = Vector::new();
        for e in self.entries.iter().filter(|e| e.side.is_none() && e.input == x) {
            toggle(&mut out, e.output);
        }
        out
    }

    /// The action of basis element `a` on `x` through `side`, idempotents
    /// included.
    pub fn act(&self, side: usize, x: usize, a: usize) -> Vector {
        let alg = &self.sides[side].algebra;
        if alg.basis[a].is_idempotent() {
            return if self.idempotents[x][side] == a { Vector::from([x]) } else { Vector::new() };
        }
        let mut out = Vector::new();
        for e in &self.entries {
            if e.side == Some(side) && e.input == x && e.algebra == Some(a) {
                toggle(&mut out, e.output);
            }
        }
        out
    }

    /// Type D: δ¹(x) as (coefficient, output) pairs, differential terms
    /// carrying the idempotent of x.
    pub fn delta(&self, x: usize) -> Vec<(usize, usize)> {
        let mut out: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        for e in self.entries.iter().filter(|e| e.input == x) {
            let a = e.algebra.unwrap_or(self.idempotents[x][0]);
            *out.entry((a, e.output)).or_insert(false) ^= true;
        }
        out.into_iter().filter(|&(_, v)| v).map(|(k, _)| k).collect()
    }

    /// Generators whose first side occupies `k` arcs (type A sense).
    pub fn summand(&self, k: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                let s = &self.sides[0];
                let n = s.algebra.basis[self.idempotents[x][0]].horizontal.len();
                let occ = if s.dual { s.algebra.z.arcs.len() - n } else { n };
                occ == k
            })
            .collect()
    }

    /// Deterministic table dump, one `m[i|1|j](inputs) = outputs` per line.
    pub fn dump(&self) -> String {
        let mut lines = Vec::new();
        let sum = |v: &Vector| -> String {
            if v.is_empty() {
                "0".into()
            } else {
                v.iter().map(|&k| self.labels[k].clone()).collect::<Vec<_>>().join(" + ")
            }
        };
        for x in 0..self.len() {
            let d = self.differential(x);
            if !d.is_empty() {
                let head = if self.kind == Kind::D { "δ1" } else { "m[0|1|0]" };
                let ident = if self.kind == Kind::D {
                    format!("{}⊗", self.sides[0].algebra.name(self.idempotents[x][0]))
                } else {
                    String::new()
                };
                let outs: Vec<String> = d.iter().map(|&k| format!("{ident}{}", self.labels[k])).collect();
                lines.push(format!("{head}({}) = {}", self.labels[x], outs.join(" + ")));
            }
            for (s, side) in self.sides.iter().enumerate() {
                let mut seen = BTreeSet::new();
                for e in self.entries.iter().filter(|e| e.side == Some(s) && e.input == x) {
                    let a = e.algebra.unwrap();
                    if !seen.insert(a) {
                        continue;
                    }
                    let an = side.algebra.name(a);
                    let out = self.act(s, x, a);
                    let line = if self.kind == Kind::D {
                        let outs: Vec<String> = out.iter().map(|&k| format!("{an}⊗{}", self.labels[k])).collect();
                        format!("δ1({}) ∋ {}", self.labels[x], outs.join(" + "))
                    } else if side.left {
                        format!("m[1|1|0]({an}, {}) = {}", self.labels[x], sum(&out))
                    } else {
                        format!("m[0|1|1]({}, {an}) = {}", self.labels[x], sum(&out))
                    };
                    lines.push(line);
                }
            }
        }
        lines.sort();
        lines.dedup();
        lines.join("\n")
    }
}

/// One failed structure relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub relation: String,
    pub detail: String,
}

/// Checks the truncated relations: ∂² = 0, idempotent compatibility,
/// Leibniz between m1 and the actions, associativity against the algebra
/// product, commuting sides, and for type D the δ¹ relation.
pub fn check_relations(m: &BorderedStructure) -> Vec<RelationViolation> {
    let mut out = Vec::new();
    let mut bad = |relation: &str, detail: String| {
        out.push(RelationViolation {
            relation: relation.into(),
            detail,
        })
    };
    let n = m.len();
    let l = |k: usize| m.labels[k].clone();
    let apply_d = |v: &Vector| {
        let mut o = Vector::new();
        for &k in v {
            for j in m.differential(k) {
                toggle(&mut o, j);
            }
        }
        o
    };
    let act_v = |s: usize, v: &Vector, a: &Element| {
        let mut o = Vector::new();
        for &k in v {
            for &b in a {
                for j in m.act(s, k, b) {
                    toggle(&mut o, j);
                }
            }
        }
        o
    };

    for x in 0..n {
        let dd = apply_d(&m.differential(x));
        if !dd.is_empty() {
            bad("d²", format!("∂∂({}) ≠ 0", l(x)));
        }
    }
    for e in &m.entries {
        if let (Some(s), Some(a)) = (e.side, e.algebra) {
            let side = &m.sides[s];
            let alg = &side.algebra;
            if !side.fits(a, m.idempotents[e.input][s], m.idempotents[e.output][s]) {
                bad(
                    "idempotents",
                    format!("{} on {} → {} has incompatible idempotents", alg.name(a), l(e.input), l(e.output)),
                );
            }
        } else if m.sides.iter().enumerate().any(|(s, _)| m.idempotents[e.input][s] != m.idempotents[e.output][s]) {
            bad("idempotents", format!("∂ {} → {} changes idempotents", l(e.input), l(e.output)));
        }
    }

    if m.kind == Kind::D {
        let alg = &m.sides[0].algebra;
        for x in 0..n {
            // Σ compose(a, b)⊗z over δ¹(x) = a⊗y, δ¹(y) = b⊗z, plus d(a)⊗y.
            let mut total: BTreeMap<(usize, usize), bool> = BTreeMap::new();
            for (a, y) in m.delta(x) {
                for (b, z) in m.delta(y) {
                    for c in m.sides[0].compose(a, b) {
                        *total.entry((c, z)).or_insert(false) ^= true;
                    }
                }
                for c in alg.diff_basis(a) {
                    *total.entry((c, y)).or_insert(false) ^= true;
                }
            }
            for ((c, z), v) in total {
                if v {
                    bad("δ¹ relation", format!("term {}⊗{} in the relation for {}", alg.name(c), l(z), l(x)));
                }
            }
        }
        return out;
    }

    for (s, side) in m.sides.iter().enumerate() {
        let alg = &side.algebra;
        for x in 0..n {
            let xv = Vector::from([x]);
            for a in 0..alg.dim() {
                let ae = Element::from([a]);
                // m1 m2 + m2 (m1 ⊗ 1) + m2 (1 ⊗ d) = 0
                let mut lhs = apply_d(&act_v(s, &xv, &ae));
                for k in act_v(s, &apply_d(&xv), &ae) {
                    toggle(&mut lhs, k);
                }
                for k in act_v(s, &xv, &alg.diff_basis(a)) {
                    toggle(&mut lhs, k);
                }
                if !lhs.is_empty() {
                    bad("Leibniz", format!("side {} at ({}, {})", side.interface, l(x), alg.name(a)));
                }
                let xa = act_v(s, &xv, &ae);
                for b in 0..alg.dim() {
                    let be = Element::from([b]);
                    let mut lhs = act_v(s, &xa, &be);
                    for k in act_v(s, &xv, &side.compose(a, b)) {
                        toggle(&mut lhs, k);
                    }
                    if !lhs.is_empty() {
                        bad(
                            "associativity",
                            format!("side {} at ({}, {}, {})", side.interface, l(x), alg.name(a), alg.name(b)),
                        );
                    }
                }
            }
        }
    }
    if m.kind == Kind::AA {
        let (la, ra) = (&m.sides[0].algebra, &m.sides[1].algebra);
        for x in 0..n {
            let xv = Vector::from([x]);
            for a in 0..la.dim() {
                for b in 0..ra.dim() {
                    let (ae, be) = (Element::from([a]), Element::from([b]));
                    let mut lhs = act_v(1, &act_v(0, &xv, &ae), &be);
                    for k in act_v(0, &act_v(1, &xv, &be), &ae) {
                        toggle(&mut lhs, k);
                    }
                    if !lhs.is_empty() {
                        bad("commuting sides", format!("({}, {}, {})", la.name(a), l(x), ra.name(b)));
                    }
                }
            }
        }
    }
    out
}

/// The dual structure: generators become their duals and every entry is
/// reversed, the sides trading places.
pub fn dualize(m: &BorderedStructure) -> BorderedStructure {
    let flip = |s: &str| match s.strip_suffix('∨') {
        Some(t) => t.to_string(),
        None => format!("{s}∨"),
    };
    let mut sides: Vec<BorderSide> = m.sides.clone();
    for s in &mut sides {
        s.left = !s.left;
    }
    let mut entries: Vec<Entry> = m
        .entries
        .iter()
        .map(|e| Entry {
            input: e.output,
            output: e.input,
            ..e.clone()
        })
        .collect();
    entries.sort();
    BorderedStructure {
        name: flip(&m.name),
        kind: m.kind,
        sides,
        generators: m.generators.clone(),
        labels: m.labels.iter().map(|l| flip(l)).collect(),
        idempotents: m.idempotents.clone(),
        entries,
    }
}

fn same_algebra(a: &StrandAlgebra, b: &StrandAlgebra) -> bool {
    let shape = |z: &ArcDiagram| z.intervals.iter().map(Vec::len).collect::<Vec<_>>();
    shape(&a.z) == shape(&b.z) && a.z.matching == b.z.matching
}

/// A chain complex from a basis and a differential, one class per
/// connected component of the differential.
pub fn complex_from(basis: Vec<Generator>, differential: BinaryMatrix) -> ChainComplexF2 {
    let n = basis.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (i, j) in differential.entries() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a.max(b)] = a.min(b);
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let spinc = (0..n)
        .map(|x| {
            let r = find(&mut parent, x);
            let k = ids.len();
            *ids.entry(r).or_insert(k)
        })
        .collect();
    ChainComplexF2 {
        basis,
        differential,
        spinc,
    }
}

/// Idempotent-compatible pairs of a type A side and a type D structure.
fn pairs(a: &BorderedStructure, s: usize, d: &BorderedStructure) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..a.len() {
        for y in 0..d.len() {
            if a.idempotents[x][s] == d.idempotents[y][0] {
                out.push((x, y));
            }
        }
    }
    out
}

fn check_pairable(a: &BorderedStructure, s: usize, d: &BorderedStructure) -> Result<()> {
    if d.kind != Kind::D || a.kind == Kind::D {
        return reject("box tensor pairs a type A side with a type D structure");
    }
    if !same_algebra(&a.sides[s].algebra, &d.sides[0].algebra) || a.sides[s].family != d.sides[0].family {
        return reject("the two sides are over different algebras");
    }
    Ok(())
}

/// Differential of the box tensor on pairs, over the paired side `s`.
fn tensor_entries(a: &BorderedStructure, s: usize, d: &BorderedStructure, basis: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let index: BTreeMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut out: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for (j, &(x, y)) in basis.iter().enumerate() {
        let mut hit = |p: (usize, usize)| {
            if let Some(&i) = index.get(&p) {
                *out.entry((i, j)).or_insert(false) ^= true;
            }
        };
        for x2 in a.differential(x) {
            hit((x2, y));
        }
        for (coef, y2) in d.delta(y) {
            for x2 in a.act(s, x, coef) {
                hit((x2, y2));
            }
        }
    }
    out.into_iter().filter(|&(_, v)| v).map(|(k, _)| k).collect()
}

fn union(g: &Generator, h: &Generator) -> Generator {
    Generator::new(g.points.iter().chain(&h.points).cloned())
}

/// The box tensor of a type A structure with a type D structure.
pub fn box_tensor(a: &BorderedStructure, d: &BorderedStructure) -> Result<ChainComplexF2> {
    if a.kind != Kind::A {
        return reject("box_tensor into a complex needs a type A structure; use box_tensor_aa");
    }
    check_pairable(a, 0, d)?;
    let basis = pairs(a, 0, d);
    let mut m = BinaryMatrix::zeros(basis.len(), basis.len());
    for (i, j) in tensor_entries(a, 0, d, &basis) {
        m.flip(i, j);
    }
    let gens = basis.iter().map(|&(x, y)| union(&a.generators[x], &d.generators[y])).collect();
    Ok(complex_from(gens, m))
}

/// The box tensor of a type AA structure's right side with a type D
/// structure: a type A structure over the left side.
pub fn box_tensor_aa(aa: &BorderedStructure, d: &BorderedStructure) -> Result<BorderedStructure> {
    if aa.kind != Kind::AA {
        return reject("box_tensor_aa needs a type AA structure");
    }
    check_pairable(aa, 1, d)?;
    let basis = pairs(aa, 1, d);
    let index: BTreeMap<(usize, usize), usize> = basis.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut entries = Vec::new();
    for (i, j) in tensor_entries(aa, 1, d, &basis) {
        entries.push(Entry {
            side: None,
            input: j,
            algebra: None,
            output: i,
            faces: BTreeSet::new(),
        });
    }
    // Left actions pass through the D factor untouched.
    for e in aa.entries.iter().filter(|e| e.side == Some(0)) {
        for y in 0..d.len() {
            if let (Some(&j), Some(&i)) = (index.get(&(e.input, y)), index.get(&(e.output, y))) {
                entries.push(Entry {
                    side: Some(0),
                    input: j,
                    algebra: e.algebra,
                    output: i,
                    faces: e.faces.clone(),
                });
            }
        }
    }
    entries.sort();
    Ok(BorderedStructure {
        name: format!("{}⊠{}", aa.name, d.name),
        kind: Kind::A,
        sides: vec![aa.sides[0].clone()],
        generators: basis.iter().map(|&(x, y)| union(&aa.generators[x], &d.generators[y])).collect(),
        labels: basis.iter().map(|&(x, y)| format!("{}⊗{}", aa.labels[x], d.labels[y])).collect(),
        idempotents: basis.iter().map(|&(x, _)| vec![aa.idempotents[x][0]]).collect(),
        entries,
    })
}

/// Whether a type A structure is elementary: one generator, no
/// non-idempotent actions and no differential.
pub fn is_elementary(m: &BorderedStructure) -> bool {
    m.kind == Kind::A && m.len() == 1 && m.entries.is_empty()
}

/// Writes the structure's generators with idempotents, then its table.
pub fn describe(m: &BorderedStructure) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} (type {:?}, {} generators)", m.name, m.kind, m.len());
    for x in 0..m.len() {
        let ids: Vec<String> = m.sides.iter().enumerate().map(|(k, side)| side.algebra.name(m.idempotents[x][k])).collect();
        let _ = writeln!(s, "  {} [{}]", m.labels[x], ids.join(", "));
    }
    s.push_str(&m.dump());
    s
}
