//! Chain maps between F2 complexes, stored generator by generator.

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

use crate::exactlin::{f2_rank, BinaryMatrix, BitVector};
use crate::sfc::{ChainComplexF2, Generator};

/// A map of complexes given on basis elements: `entries[j]` lists the
/// target indices hit by source generator `j`.
#[derive(Clone, Debug)]
pub struct ChainMapTable {
    pub name: String,
    pub source: ChainComplexF2,
    pub target: ChainComplexF2,
    pub entries: Vec<BTreeSet<usize>>,
}

impl ChainMapTable {
    /// Builds the table from a map on generators. A generator image that is
    /// not in the target basis is reported by name.
    pub fn from_fn(
        name: &str,
        source: ChainComplexF2,
        target: ChainComplexF2,
        f: impl Fn(&Generator) -> Vec<Generator>,
    ) -> Result<Self, String> {
        let mut entries = Vec::with_capacity(source.len());
        for x in &source.basis {
            let mut row = BTreeSet::new();
            for y in f(x) {
                let k = target.index_of(&y).ok_or_else(|| format!("{name}: image {y} of {x} is not a generator"))?;
                if !row.insert(k) {
                    row.remove(&k);
                }
            }
            entries.push(row);
        }
        Ok(ChainMapTable {
            name: name.into(),
            source,
            target,
            entries,
        })
    }

    pub fn image(&self, v: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.target.len());
        for j in v.ones() {
            for &k in &self.entries[j] {
                out.flip(k);
            }
        }
        out
    }

    pub fn image_of(&self, g: &Generator) -> Option<Vec<&Generator>> {
        let j = self.source.index_of(g)?;
        Some(self.entries[j].iter().map(|&k| &self.target.basis[k]).collect())
    }

    /// Source generators where ∂f and f∂ differ.
    pub fn law_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for j in 0..self.source.len() {
            let e = BitVector::from_indices(self.source.len(), [j]);
            let lhs = self.target.boundary_of(&self.image(&e));
            let rhs = self.image(&self.source.boundary_of(&e));
            if lhs != rhs {
                bad.push(format!("{}: ∂f ≠ f∂ on {}", self.name, self.source.basis[j]));
            }
        }
        bad
    }

    pub fn is_chain_map(&self) -> bool {
        self.law_violations().is_empty()
    }

    /// Whether the table is a bijection of bases whose inverse is also a
    /// chain map.
    pub fn is_isomorphism(&self) -> bool {
        if self.source.len() != self.target.len() || self.entries.iter().any(|e| e.len() != 1) {
            return false;
        }
        let hit: BTreeSet<usize> = self.entries.iter().flat_map(|e| e.iter().copied()).collect();
        if hit.len() != self.target.len() {
            return false;
        }
        let mut inv = vec![BTreeSet::new(); self.target.len()];
        for (j, e) in self.entries.iter().enumerate() {
            inv[*e.iter().next().unwrap()].insert(j);
        }
        let back = ChainMapTable {
            name: format!("{}⁻¹", self.name),
            source: self.target.clone(),
            target: self.source.clone(),
            entries: inv,
        };
        self.is_chain_map() && back.is_chain_map()
    }

    /// `self` followed by `next`. The middle bases must agree.
    pub fn then(&self, next: &ChainMapTable) -> Result<ChainMapTable, String> {
        if self.target.basis != next.source.basis {
            return Err(format!("cannot compose {} with {}: bases differ", self.name, next.name));
        }
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let v = BitVector::from_indices(self.target.len(), e.iter().copied());
                next.image(&v).ones().collect()
            })
            .collect();
        Ok(ChainMapTable {
            name: format!("{} ∘ {}", next.name, self.name),
            source: self.source.clone(),
            target: next.target.clone(),
            entries,
        })
    }

    /// The table as `x ↦ y1 + y2` lines in source order.
    pub fn lines(&self) -> Vec<String> {
        self.source
            .basis
            .iter()
            .zip(&self.entries)
            .map(|(x, e)| {
                let ys: Vec<String> = e.iter().map(|&k| self.target.basis[k].to_string()).collect();
                let rhs = if ys.is_empty() { "0".to_string() } else { ys.join(" + ") };
                format!("{x} ↦ {rhs}")
            })
            .collect()
    }

    /// The table as sets of generators, independent of basis order.
    pub fn as_sets(&self) -> Vec<(Generator, BTreeSet<Generator>)> {
        let mut v: Vec<_> = self
            .source
            .basis
            .iter()
            .zip(&self.entries)
            .map(|(x, e)| (x.clone(), e.iter().map(|&k| self.target.basis[k].clone()).collect()))
            .collect();
        v.sort();
        v
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for l in self.lines() {
            h.update(l.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}

/// Whether `v` is a cycle that is not a boundary.
pub fn nonzero_class(c: &ChainComplexF2, v: &BitVector) -> bool {
    if v.is_zero() || !c.boundary_of(v).is_zero() {
        return false;
    }
    let cols: Vec<BitVector> = (0..c.len()).map(|j| c.differential.column(j)).collect();
    let base = f2_rank(&BinaryMatrix::from_bitrows(&cols, c.len()));
    let mut with = cols;
    with.push(v.clone());
    f2_rank(&BinaryMatrix::from_bitrows(&with, c.len())) > base
}

/// A basis of the cycles of `c`.
pub fn cycle_basis(c: &ChainComplexF2) -> Vec<BitVector> {
    crate::exactlin::f2_rank_kernel(&c.differential).1
}

/// The tensor product of two complexes. Basis elements are unions of the
/// factors' generators, so the factors must use disjoint point names.
pub fn tensor(a: &ChainComplexF2, b: &ChainComplexF2) -> ChainComplexF2 {
    let mut basis = Vec::new();
    for x in &a.basis {
        for y in &b.basis {
            basis.push(Generator {
                points: x.points.union(&y.points).cloned().collect(),
            });
        }
    }
    let n = b.len();
    let mut m = BinaryMatrix::zeros(basis.len(), basis.len());
    for i in 0..a.len() {
        for j in 0..n {
            for k in a.differential.column(i).ones() {
                m.flip(k * n + j, i * n + j);
            }
            for k in b.differential.column(j).ones() {
                m.flip(i * n + k, i * n + j);
            }
        }
    }
    crate::modules::complex_from(basis, m)
}
