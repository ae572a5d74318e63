//! Strand algebras of arc diagrams over F2.
//!
//! A basis element is a set of moving strands (each from a point to a later
//! point on the same interval) together with a set of arcs carrying
//! symmetrized horizontal strands. Products and differentials are computed
//! on lifts, where every horizontal arc picks one of its points, and the
//! result is folded back into the symmetrized basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrandError {
    #[error("points {0} and {1} lie on different intervals")]
    DifferentIntervals(String, String),
    #[error("chord must go upward: {0} is not before {1}")]
    NotUpward(String, String),
    #[error("unknown {0} `{1}`")]
    Unknown(&'static str, String),
    #[error("arc diagram: {0}")]
    Malformed(String),
}

/// Intervals of ordered marked points with a 2-to-1 matching onto arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcDiagram {
    pub name: String,
    /// Point names, interval by interval, in order.
    pub intervals: Vec<Vec<String>>,
    /// Arc names in index order.
    pub arcs: Vec<String>,
    /// Arc index of each point (flattened point order).
    pub matching: Vec<usize>,
}

impl ArcDiagram {
    pub fn new(name: &str, intervals: Vec<Vec<String>>, arcs: Vec<String>, matching: Vec<usize>) -> Result<Self, StrandError> {
        let z = ArcDiagram {
            name: name.to_string(),
            intervals,
            arcs,
            matching,
        };
        let n: usize = z.intervals.iter().map(Vec::len).sum();
        if z.matching.len() != n {
            return Err(StrandError::Malformed("matching must cover every point".into()));
        }
        for a in 0..z.arcs.len() {
            if z.matching.iter().filter(|&&m| m == a).count() != 2 {
                return Err(StrandError::Malformed(format!("arc {} must have exactly two points", z.arcs[a])));
            }
        }
        if z.matching.iter().any(|&m| m >= z.arcs.len()) {
            return Err(StrandError::Malformed("matching names a missing arc".into()));
        }
        Ok(z)
    }

    /// Two intervals with no marked points.
    pub fn z1() -> Self {
        ArcDiagram::new("Z1", vec![vec![], vec![]], vec![], vec![]).unwrap()
    }

    /// Interval P < Q < R and interval S, arcs a1 = {Q, S}, a2 = {P, R}.
    pub fn z2() -> Self {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        ArcDiagram::new("Z2", vec![s(&["P", "Q", "R"]), s(&["S"])], s(&["a1", "a2"]), vec![1, 0, 1, 0]).unwrap()
    }

    pub fn num_points(&self) -> usize {
        self.matching.len()
    }

    /// Interval index of each flattened point.
    pub fn interval_of(&self) -> Vec<usize> {
        self.intervals
            .iter()
            .enumerate()
            .flat_map(|(i, iv)| std::iter::repeat_n(i, iv.len()))
            .collect()
    }

    pub fn point_names(&self) -> Vec<String> {
        self.intervals.iter().flatten().cloned().collect()
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.point_names().iter().position(|p| p == name)
    }

    pub fn points_of_arc(&self, a: usize) -> Vec<usize> {
        (0..self.num_points()).filter(|&p| self.matching[p] == a).collect()
    }

    /// Orientation reversal: every interval is read backwards.
    pub fn reversed(&self) -> Self {
        let intervals: Vec<Vec<String>> = self.intervals.iter().map(|iv| iv.iter().rev().cloned().collect()).collect();
        let mut matching = Vec::new();
        let mut offset = 0;
        for iv in &self.intervals {
            for k in (0..iv.len()).rev() {
                matching.push(self.matching[offset + k]);
            }
            offset += iv.len();
        }
        ArcDiagram {
            name: format!("-{}", self.name),
            intervals,
            arcs: self.arcs.clone(),
            matching,
        }
    }

    /// Disjoint union.
    pub fn union(&self, other: &Self) -> Self {
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|a| format!("{a}'")));
        let mut matching = self.matching.clone();
        matching.extend(other.matching.iter().map(|m| m + self.arcs.len()));
        let mut intervals = self.intervals.clone();
        intervals.extend(other.intervals.iter().map(|iv| iv.iter().map(|p| format!("{p}'")).collect()));
        ArcDiagram {
            name: format!("{}+{}", self.name, other.name),
            intervals,
            arcs,
            matching,
        }
    }
}

/// A symmetrized basis element: moving strands and horizontal arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Basis {
    pub moving: BTreeSet<(usize, usize)>,
    pub horizontal: BTreeSet<usize>,
}

impl Basis {
    pub fn strands(&self) -> usize {
        self.moving.len() + self.horizontal.len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.moving.is_empty()
    }
}

/// A lift: a partial bijection of points, horizontals included as (p, p).
type Lift = BTreeSet<(usize, usize)>;

/// The strand algebra of an arc diagram with its enumerated basis.
#[derive(Clone, Debug)]
pub struct StrandAlgebra {
    pub z: ArcDiagram,
    pub basis: Vec<Basis>,
    index: BTreeMap<Basis, usize>,
    interval: Vec<usize>,
}

/// Formal F2 combination of basis indices.
pub type Element = BTreeSet<usize>;

fn toggle(set: &mut BTreeSet<usize>, k: usize) {
    if !set.remove(&k) {
        set.insert(k);
    }
}

impl StrandAlgebra {
    pub fn new(z: ArcDiagram) -> Self {
        let interval = z.interval_of();
        let n = z.num_points();
        let chords: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| interval[i] == interval[j])
            .collect();
        let mut basis = Vec::new();
        // Every subset of chords with distinct start arcs and distinct end arcs,
        // then every horizontal arc set avoiding both.
        let m = chords.len();
        for mask in 0u64..(1u64 << m) {
            let moving: BTreeSet<(usize, usize)> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| chords[k]).collect();
            let starts: Vec<usize> = moving.iter().map(|&(s, _)| z.matching[s]).collect();
            let ends: Vec<usize> = moving.iter().map(|&(_, e)| z.matching[e]).collect();
            let distinct = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
            if !distinct(&starts) || !distinct(&ends) {
                continue;
            }
            let free: Vec<usize> = (0..z.arcs.len()).filter(|a| !starts.contains(a) && !ends.contains(a)).collect();
            for hmask in 0u64..(1u64 << free.len()) {
                let horizontal = (0..free.len()).filter(|k| hmask >> k & 1 == 1).map(|k| free[k]).collect();
                basis.push(Basis {
                    moving: moving.clone(),
                    horizontal,
                });
            }
        }
        basis.sort_by(|a, b| (a.strands(), !a.is_idempotent(), a).cmp(&(b.strands(), !b.is_idempotent(), b)));
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        StrandAlgebra { z, basis, index, interval }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, b: &Basis) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Rank of each strand-count summand, from 0 strands up to the number of arcs.
    pub fn summand_ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.z.arcs.len() + 1];
        for b in &self.basis {
            r[b.strands()] += 1;
        }
        r
    }

    /// Arcs occupied at the start (left idempotent) of a basis element.
    pub fn start_arcs(&self, b: &Basis) -> BTreeSet<usize> {
        b.moving.iter().map(|&(s, _)| self.z.matching[s]).chain(b.horizontal.iter().copied()).collect()
    }

    pub fn end_arcs(&self, b: &Basis) -> BTreeSet<usize> {
        b.moving.iter().map(|&(_, e)| self.z.matching[e]).chain(b.horizontal.iter().copied()).collect()
    }

    pub fn idempotent(&self, arcs: &BTreeSet<usize>) -> usize {
        self.index[&Basis {
            moving: BTreeSet::new(),
            horizontal: arcs.clone(),
        }]
    }

    /// Basis element of a single chord between named points.
    pub fn chord(&self, from: &str, to: &str) -> Result<usize, StrandError> {
        let p = self.z.point_index(from).ok_or_else(|| StrandError::Unknown("point", from.into()))?;
        let q = self.z.point_index(to).ok_or_else(|| StrandError::Unknown("point", to.into()))?;
        if self.interval[p] != self.interval[q] {
            return Err(StrandError::DifferentIntervals(from.into(), to.into()));
        }
        if p >= q {
            return Err(StrandError::NotUpward(from.into(), to.into()));
        }
        Ok(self.index[&Basis {
            moving: BTreeSet::from([(p, q)]),
            horizontal: BTreeSet::new(),
        }])
    }

    /// Basis idempotent of a set of named arcs.
    pub fn idempotent_named(&self, arcs: &[&str]) -> Result<usize, StrandError> {
        let mut set = BTreeSet::new();
        for a in arcs {
            let k = self.z.arcs.iter().position(|x| x == a).ok_or_else(|| StrandError::Unknown("arc", a.to_string()))?;
            set.insert(k);
        }
        Ok(self.idempotent(&set))
    }

    fn lifts(&self, b: &Basis) -> Vec<Lift> {
        let mut out = vec![b.moving.clone()];
        for &a in &b.horizontal {
            let pts = self.z.points_of_arc(a);
            out = out
                .into_iter()
                .flat_map(|l| {
                    pts.iter().map(move |&p| {
                        let mut l = l.clone();
                        l.insert((p, p));
                        l
                    })
                })
                .collect();
        }
        out
    }

    fn inversions(&self, l: &Lift) -> usize {
        let v: Vec<&(usize, usize)> = l.iter().collect();
        let mut n = 0;
        for i in 0..v.len() {
            for j in 0..v.len() {
                let (a, b) = (v[i], v[j]);
                if self.interval[a.0] == self.interval[b.0] && a.0 < b.0 && a.1 > b.1 {
                    n += 1;
                }
            }
        }
        n
    }

    /// Folds a sum of lifts back into basis coordinates.
    fn fold(&self, lifts: BTreeMap<Lift, bool>) -> Element {
        let mut out = Element::new();
        let mut seen = BTreeSet::new();
        for (l, c) in &lifts {
            if !c {
                continue;
            }
            let moving: BTreeSet<(usize, usize)> = l.iter().copied().filter(|(s, e)| s != e).collect();
            let horizontal: BTreeSet<usize> = l.iter().filter(|(s, e)| s == e).map(|(s, _)| self.z.matching[*s]).collect();
            let b = Basis { moving, horizontal };
            if let Some(&k) = self.index.get(&b) {
                if seen.insert(k) {
                    toggle(&mut out, k);
                }
            }
        }
        out
    }

    fn lift_product(&self, a: &Lift, b: &Lift) -> Option<Lift> {
        let ends: BTreeSet<usize> = a.iter().map(|&(_, e)| e).collect();
        let starts: BTreeSet<usize> = b.iter().map(|&(s, _)| s).collect();
        if ends != starts {
            return None;
        }
        let next: BTreeMap<usize, usize> = b.iter().copied().collect();
        let prod: Lift = a.iter().map(|&(s, e)| (s, next[&e])).collect();
        (self.inversions(&prod) == self.inversions(a) + self.inversions(b)).then_some(prod)
    }

    /// Product of two basis elements: `a` then `b`.
    pub fn mul_basis(&self, a: usize, b: usize) -> Element {
        let (ba, bb) = (&self.basis[a], &self.basis[b]);
        if self.end_arcs(ba) != self.start_arcs(bb) {
            return Element::new();
        }
        let mut acc: BTreeMap<Lift, bool> = BTreeMap::new();
        for la in self.lifts(ba) {
            for lb in self.lifts(bb) {
                if let Some(p) = self.lift_product(&la, &lb) {
                    let c = acc.entry(p).or_insert(false);
                    *c = !*c;
                }
            }
        }
        self.fold(acc)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::new();
        for &x in a {
            for &y in b {
                for z in self.mul_basis(x, y) {
                    toggle(&mut out, z);
                }
            }
        }
        out
    }

    /// Differential: resolve one crossing at a time, keeping resolutions
    /// that lower the crossing number by exactly one.
    pub fn diff_basis(&self, a: usize) -> Element {
        let mut acc: BTreeMap<Lift, bool> = BTreeMap::new();
        for l in self.lifts(&self.basis[a]) {
            let inv = self.inversions(&l);
            let v: Vec<(usize, usize)> = l.iter().copied().collect();
            for i in 0..v.len() {
                for j in 0..v.len() {
                    let (x, y) = (v[i], v[j]);
                    if self.interval[x.0] != self.interval[y.0] || !(x.0 < y.0 && x.1 > y.1) {
                        continue;
                    }
                    let mut r = l.clone();
                    r.remove(&x);
                    r.remove(&y);
                    r.insert((x.0, y.1));
                    r.insert((y.0, x.1));
                    if self.inversions(&r) + 1 == inv {
                        let c = acc.entry(r).or_insert(false);
                        *c = !*c;
                    }
                }
            }
        }
        self.fold(acc)
    }

    pub fn diff(&self, a: &Element) -> Element {
        let mut out = Element::new();
        for &x in a {
            for z in self.diff_basis(x) {
                toggle(&mut out, z);
            }
        }
        out
    }

    fn gap_label(&self, from: usize, to: usize) -> String {
        // Gaps are numbered 1, 2, ... across all intervals.
        let mut label = String::new();
        let mut gap = 0;
        for p in 0..self.z.num_points() {
            if p + 1 < self.z.num_points() && self.interval[p] == self.interval[p + 1] {
                gap += 1;
                if p >= from && p < to {
                    label.push_str(&gap.to_string());
                }
            }
        }
        label
    }

    /// Name of a basis element: ι with arc numbers for idempotents, ρ with
    /// gap numbers for chords, juxtaposed for several strands.
    pub fn name(&self, k: usize) -> String {
        let b = &self.basis[k];
        if b.is_idempotent() {
            if b.horizontal.is_empty() {
                return "ι∅".into();
            }
            let digits: String = b.horizontal.iter().map(|a| (a + 1).to_string()).collect();
            return format!("ι{digits}");
        }
        let mut parts: Vec<String> = b.moving.iter().map(|&(s, e)| format!("ρ{}", self.gap_label(s, e))).collect();
        if !b.horizontal.is_empty() {
            let digits: String = b.horizontal.iter().map(|a| (a + 1).to_string()).collect();
            parts.push(format!("ι{digits}"));
        }
        parts.join("·")
    }

    pub fn dual_name(&self, k: usize) -> String {
        format!("{}∨", self.name(k))
    }

    pub fn find_name(&self, name: &str) -> Option<usize> {
        (0..self.dim()).find(|&k| self.name(k) == name)
    }

    /// The pairing between basis elements and dual basis elements.
    pub fn pairing(&self, a: usize, b_dual: usize) -> bool {
        a == b_dual
    }

    pub fn element_name(&self, e: &Element) -> String {
        if e.is_empty() {
            return "0".into();
        }
        e.iter().map(|&k| self.name(k)).collect::<Vec<_>>().join(" + ")
    }
}

impl fmt::Display for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.point_names();
        let mut k = 0;
        let ivs: Vec<String> = self
            .intervals
            .iter()
            .map(|iv| {
                let pts: Vec<String> = iv
                    .iter()
                    .map(|_| {
                        let s = format!("{}:{}", names[k], self.arcs[self.matching[k]]);
                        k += 1;
                        s
                    })
                    .collect();
                format!("[{}]", pts.join(" "))
            })
            .collect();
        write!(f, "{} {}", self.name, ivs.join(" "))
    }
}

#[cfg(test)]
mod tests;
