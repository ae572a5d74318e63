//! Sutured Floer chain complexes of nice diagrams.

mod domains;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{f2_rank, f2_rank_kernel, positive_kernel_witness, z_kernel_basis, BinaryMatrix, BitVector, IntegerMatrix};
use crate::surface::{validate, Diagram, EdgeKind, Family, Sign};

pub use domains::{ChordSide, Domain};
pub(crate) use domains::Walker;

#[derive(Debug, Error)]
pub enum SfcError {
    #[error("diagram is not nice: faces {0:?}")]
    NotNice(Vec<String>),
    #[error("diagram is not admissible: periodic domain {0:?}")]
    NotAdmissible(BTreeMap<String, i128>),
    #[error("diagram is invalid: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, SfcError>;

/// A set of intersection points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Generator {
    pub points: BTreeSet<String>,
}

impl Generator {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(pts: I) -> Self {
        Generator {
            points: pts.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, p: &str) -> bool {
        self.points.contains(p)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return write!(f, "∅");
        }
        let v: Vec<&str> = self.points.iter().map(String::as_str).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// Intersection points keyed by vertex, with their alpha and beta curves.
fn point_curves(d: &Diagram) -> BTreeMap<String, (String, String)> {
    d.intersection_points()
        .into_iter()
        .filter_map(|v| {
            let a = d.curve_through(&v, Family::Alpha)?;
            let b = d.curve_through(&v, Family::Beta)?;
            Some((v, (a, b)))
        })
        .collect()
}

/// All generators in canonical order: every closed curve occupied once,
/// every arc at most once.
pub fn generators(d: &Diagram) -> Vec<Generator> {
    let pts = point_curves(d);
    let closed: Vec<String> = d
        .closed_curve_ids(Family::Alpha)
        .into_iter()
        .map(|c| format!("a:{c}"))
        .chain(d.closed_curve_ids(Family::Beta).into_iter().map(|c| format!("b:{c}")))
        .collect();
    let keyed: Vec<(String, String, String)> = pts.iter().map(|(v, (a, b))| (v.clone(), format!("a:{a}"), format!("b:{b}"))).collect();
    let closed_set: BTreeSet<&String> = closed.iter().collect();
    let optional: Vec<&(String, String, String)> = keyed
        .iter()
        .filter(|(_, a, b)| !closed_set.contains(a) && !closed_set.contains(b))
        .collect();

    struct Search<'s> {
        closed: &'s [String],
        keyed: &'s [(String, String, String)],
        optional: &'s [&'s (String, String, String)],
        used: BTreeSet<String>,
        chosen: Vec<String>,
        out: Vec<Generator>,
    }
    impl Search<'_> {
        fn cover(&mut self) {
            let Some(c) = self.closed.iter().find(|c| !self.used.contains(*c)).cloned() else {
                self.extras(0);
                return;
            };
            for (v, a, b) in self.keyed {
                if (a != &c && b != &c) || self.used.contains(a) || self.used.contains(b) {
                    continue;
                }
                self.take(v, a, b, |s| s.cover());
            }
        }

        fn extras(&mut self, i: usize) {
            if i == self.optional.len() {
                self.out.push(Generator::new(self.chosen.iter().cloned()));
                return;
            }
            self.extras(i + 1);
            let (v, a, b) = self.optional[i];
            if !self.used.contains(a) && !self.used.contains(b) {
                self.take(v, a, b, |s| s.extras(i + 1));
            }
        }

        fn take(&mut self, v: &str, a: &str, b: &str, then: impl FnOnce(&mut Self)) {
            self.used.insert(a.to_string());
            self.used.insert(b.to_string());
            self.chosen.push(v.to_string());
            then(self);
            self.chosen.pop();
            self.used.remove(a);
            self.used.remove(b);
        }
    }

    let mut s = Search {
        closed: &closed,
        keyed: &keyed,
        optional: &optional,
        used: BTreeSet::new(),
        chosen: Vec::new(),
        out: Vec::new(),
    };
    s.cover();
    let mut out = s.out;
    out.sort();
    out.dedup();
    out
}

/// Runs of one curve (or of boundary) around a face, merged cyclically.
fn face_sides(d: &Diagram, face: &str) -> Vec<String> {
    let f = &d.faces[face];
    let key = |e: &str| {
        let edge = &d.edges[e];
        match edge.kind {
            EdgeKind::Boundary => "|boundary".to_string(),
            EdgeKind::Seam => "|seam".to_string(),
            k => format!("{:?}:{}", k, edge.curve.as_deref().unwrap_or("")),
        }
    };
    let mut runs: Vec<String> = Vec::new();
    for s in &f.boundary {
        let k = key(&s.edge);
        if runs.last() != Some(&k) {
            runs.push(k);
        }
    }
    while runs.len() > 1 && runs.first() == runs.last() {
        runs.pop();
    }
    runs
}

/// Nice: every non-suture face is a bigon without boundary sides or a
/// quadrilateral with at most one boundary side. Returns offending faces.
pub fn is_nice(d: &Diagram) -> (bool, Vec<String>) {
    let mut bad = Vec::new();
    for (id, f) in &d.faces {
        if f.suture {
            continue;
        }
        let runs = face_sides(d, id);
        let boundary = runs.iter().filter(|r| r.starts_with('|')).count();
        let ok = match runs.len() {
            2 => boundary == 0,
            4 => boundary <= 1,
            _ => false,
        };
        if !ok {
            bad.push(id.clone());
        }
    }
    (bad.is_empty(), bad)
}

/// Non-suture faces and the oriented boundary of each as edge coefficients.
fn face_boundaries(d: &Diagram) -> (Vec<String>, Vec<String>, Vec<Vec<(usize, i128)>>) {
    let faces = d.interior_faces();
    let edges: Vec<String> = d.edges.keys().cloned().collect();
    let eidx: BTreeMap<&str, usize> = edges.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let cols = faces
        .iter()
        .map(|f| {
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for s in &d.faces[f].boundary {
                let c = if s.sign == Sign::Pos { 1 } else { -1 };
                *acc.entry(eidx[s.edge.as_str()]).or_default() += c;
            }
            acc.into_iter().filter(|(_, c)| *c != 0).collect()
        })
        .collect();
    (faces, edges, cols)
}

/// Columns for the full closed curves, as edge coefficients.
fn curve_columns(d: &Diagram, edges: &[String]) -> Vec<Vec<(usize, i128)>> {
    let eidx: BTreeMap<&str, usize> = edges.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    [Family::Alpha, Family::Beta]
        .into_iter()
        .flat_map(|fam| d.curves(fam).values().filter(|c| c.closed).collect::<Vec<_>>())
        .map(|c| c.segments.iter().map(|s| (eidx[s.as_str()], 1)).collect())
        .collect()
}

fn matrix_from_columns(rows: usize, cols: &[Vec<(usize, i128)>]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for &(i, c) in col {
            m.add_to(i, j, c);
        }
    }
    m
}

/// Admissibility: no nonzero nonnegative periodic domain. Returns the
/// witness on failure.
pub fn is_admissible(d: &Diagram) -> (bool, Option<BTreeMap<String, i128>>) {
    let (faces, edges, fcols) = face_boundaries(d);
    if faces.is_empty() {
        return (true, None);
    }
    let ccols = curve_columns(d, &edges);
    let mut cols = fcols;
    cols.extend(ccols.into_iter().map(|c| c.into_iter().map(|(i, v)| (i, -v)).collect()));
    let m = matrix_from_columns(edges.len(), &cols);
    let lattice = z_kernel_basis(&m);
    let nf = faces.len();
    // Face parts of the periodic lattice, as rows of G^T.
    let mut gt = IntegerMatrix::empty_rows(nf);
    for v in &lattice {
        gt.push_row(v[..nf].to_vec());
    }
    let normals = z_kernel_basis(&gt);
    let mut n = IntegerMatrix::empty_rows(nf);
    for v in normals {
        n.push_row(v);
    }
    match positive_kernel_witness(&n) {
        None => (true, None),
        Some(w) => {
            let dom = faces.into_iter().zip(w).filter(|(_, c)| *c != 0).collect();
            (false, Some(dom))
        }
    }
}

/// The 1-chain running along alpha curves from `x` to `y` and along beta
/// curves from `y` to `x`.
fn connecting_chain(d: &Diagram, edges: &[String], x: &Generator, y: &Generator) -> Vec<i128> {
    let eidx: BTreeMap<&str, usize> = edges.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let mut out = vec![0i128; edges.len()];
    for fam in [Family::Alpha, Family::Beta] {
        for c in d.curves(fam).values() {
            let verts = d.curve_vertices(c);
            let find = |g: &Generator| verts.iter().position(|v| g.contains(v));
            let (Some(i), Some(j)) = (find(x), find(y)) else { continue };
            let (from, to) = match fam {
                Family::Alpha => (i, j),
                Family::Beta => (j, i),
            };
            let n = c.segments.len();
            if c.closed {
                let mut k = from;
                while k != to {
                    out[eidx[c.segments[k].as_str()]] += 1;
                    k = (k + 1) % n;
                }
            } else if from <= to {
                for seg in &c.segments[from..to] {
                    out[eidx[seg.as_str()]] += 1;
                }
            } else {
                for seg in &c.segments[to..from] {
                    out[eidx[seg.as_str()]] -= 1;
                }
            }
        }
    }
    out
}

/// Spin^c classes: x and y agree when some combination of non-suture faces
/// has boundary equal to the connecting chain plus full curves.
pub fn spinc_partition(d: &Diagram, gens: &[Generator]) -> Vec<usize> {
    let (_, edges, fcols) = face_boundaries(d);
    let mut cols = fcols;
    cols.extend(curve_columns(d, &edges));
    let mut reps: Vec<usize> = Vec::new();
    let mut class = Vec::with_capacity(gens.len());
    for (k, g) in gens.iter().enumerate() {
        let found = reps.iter().position(|&r| {
            let chain = connecting_chain(d, &edges, &gens[r], g);
            let mut all = cols.clone();
            all.push(chain.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect());
            let m = matrix_from_columns(edges.len(), &all);
            let last = all.len() - 1;
            let g = z_kernel_basis(&m).iter().fold(0i128, |acc, v| gcd(acc, v[last]));
            g == 1
        });
        match found {
            Some(c) => class.push(c),
            None => {
                class.push(reps.len());
                reps.push(k);
            }
        }
    }
    class
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A chain complex over F2 with a Spin^c class per basis element.
/// Column j of `differential` is the boundary of basis element j.
#[derive(Clone, Debug)]
pub struct ChainComplexF2 {
    pub basis: Vec<Generator>,
    pub differential: BinaryMatrix,
    pub spinc: Vec<usize>,
}

/// Empty bigons and rectangles of the diagram, away from interfaces.
pub fn domains(d: &Diagram) -> BTreeSet<Domain> {
    Walker::new(d).interior_domains()
}

/// Rectangles with one Reeb chord side.
pub fn chord_domains(d: &Diagram) -> BTreeSet<Domain> {
    Walker::new(d).chord_domains()
}

/// Applies a domain to a generator: Some(y) when its x corners lie in x,
/// its interior misses x, and the swap yields a generator.
pub fn apply(dom: &Domain, x: &Generator) -> Option<Generator> {
    if !dom.x.iter().all(|c| x.contains(c)) || dom.interior.iter().any(|c| x.contains(c)) {
        return None;
    }
    if dom.y.iter().any(|c| x.contains(c) && !dom.x.contains(c)) {
        return None;
    }
    let mut pts = x.points.clone();
    for c in &dom.x {
        pts.remove(c);
    }
    pts.extend(dom.y.iter().cloned());
    Some(Generator { points: pts })
}

fn check_input(d: &Diagram) -> Result<()> {
    let v = validate(d);
    if !v.is_empty() {
        let codes: Vec<String> = v.iter().map(|x| x.code.clone()).collect();
        return Err(SfcError::Invalid(codes.join(", ")));
    }
    let (nice, bad) = is_nice(d);
    if !nice {
        return Err(SfcError::NotNice(bad));
    }
    if let (false, Some(w)) = is_admissible(d) {
        return Err(SfcError::NotAdmissible(w));
    }
    Ok(())
}

/// The differential matrix on a fixed basis, from a domain list.
pub fn differential_matrix(basis: &[Generator], doms: &BTreeSet<Domain>) -> BinaryMatrix {
    let index: BTreeMap<&Generator, usize> = basis.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut m = BinaryMatrix::zeros(basis.len(), basis.len());
    for (j, x) in basis.iter().enumerate() {
        for dom in doms {
            if let Some(y) = apply(dom, x) {
                if let Some(&i) = index.get(&y) {
                    m.flip(i, j);
                }
            }
        }
    }
    m
}

/// SFC of a nice admissible diagram.
pub fn differential(d: &Diagram) -> Result<ChainComplexF2> {
    check_input(d)?;
    Ok(complex_unchecked(d))
}

/// The complex without niceness and admissibility gates; the count is only
/// meaningful on nice diagrams.
pub fn complex_unchecked(d: &Diagram) -> ChainComplexF2 {
    let basis = generators(d);
    let differential = differential_matrix(&basis, &domains(d));
    let spinc = spinc_partition(d, &basis);
    ChainComplexF2 {
        basis,
        differential,
        spinc,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassHomology {
    pub class: usize,
    pub generators: usize,
    pub rank: usize,
    /// Cycles spanning homology, as generator lists.
    pub representatives: Vec<Vec<Generator>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Homology {
    pub total: usize,
    pub classes: Vec<ClassHomology>,
}

impl ChainComplexF2 {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, g: &Generator) -> Option<usize> {
        self.basis.iter().position(|b| b == g)
    }

    pub fn boundary(&self, j: usize) -> Vec<&Generator> {
        self.differential.column(j).ones().map(|i| &self.basis[i]).collect()
    }

    pub fn boundary_of(&self, v: &BitVector) -> BitVector {
        self.differential.mul_vec(v)
    }

    pub fn squares_to_zero(&self) -> bool {
        self.differential.mul(&self.differential).is_zero()
    }

    pub fn respects_spinc(&self) -> bool {
        self.differential.entries().iter().all(|&(i, j)| self.spinc[i] == self.spinc[j])
    }

    pub fn homology(&self) -> Homology {
        let nclasses = self.spinc.iter().copied().max().map_or(0, |m| m + 1);
        let mut classes = Vec::new();
        for c in 0..nclasses {
            let idx: Vec<usize> = (0..self.len()).filter(|&i| self.spinc[i] == c).collect();
            let sub = self.differential.submatrix(&idx, &idx);
            let (rank, kernel) = f2_rank_kernel(&sub);
            // Extend the image by kernel vectors, keeping those that grow it.
            let mut span: Vec<BitVector> = (0..idx.len()).map(|j| sub.column(j)).filter(|v| !v.is_zero()).collect();
            let mut reps = Vec::new();
            let mut current = f2_rank(&BinaryMatrix::from_bitrows(&span, idx.len()));
            for k in kernel {
                span.push(k.clone());
                let r = f2_rank(&BinaryMatrix::from_bitrows(&span, idx.len()));
                if r > current {
                    current = r;
                    reps.push(k.ones().map(|i| self.basis[idx[i]].clone()).collect());
                } else {
                    span.pop();
                }
            }
            classes.push(ClassHomology {
                class: c,
                generators: idx.len(),
                rank: idx.len() - 2 * rank,
                representatives: reps,
            });
        }
        Homology {
            total: classes.iter().map(|c| c.rank).sum(),
            classes,
        }
    }
}

/// Homology of a nice admissible diagram.
pub fn homology(d: &Diagram) -> Result<Homology> {
    Ok(differential(d)?.homology())
}

#[cfg(test)]
mod tests;
