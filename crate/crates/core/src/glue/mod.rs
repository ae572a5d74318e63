//! Contact gluing maps. The diagrammatic maps send a generator `y` to `y`
//! or `(y, x0)`. The bordered pipelines realise the same gluing by pairing
//! the base with a handle piece through a twisting slice, and the harness
//! in [`equivalence_report`] compares the two routes stage by stage.

pub mod local;
mod report;
mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog;
use crate::modules::{bordered_invariant, is_elementary, Kind, ModuleError};
use crate::sfc::{self, ChainComplexF2, Generator, SfcError};
use crate::surface::{
    attach_one_handle, attach_trivial_bypass, attach_two_handle, canonical_form, coarsened, concatenate, mirror,
    trivial_destabilize, with_prefix, BypassSign, Diagram, EdgeKind, Family, SurfaceError, TransversePath,
    TwoHandle,
};
use local::{local_v, one_handle_v, two_handle_v, LocalV};

pub use report::{equivalence_report, EquivalenceReport, ReportOptions, StageReport};
pub use table::{cycle_basis, nonzero_class, tensor, ChainMapTable};

#[derive(Debug, Error)]
pub enum GlueError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("{stage}: {source}")]
    Stage { stage: String, source: SfcError },
    #[error("{0}")]
    Rejected(String),
    #[error("chain-map law fails: {0:?}")]
    Law(Vec<String>),
}

pub type Result<T> = std::result::Result<T, GlueError>;

fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(GlueError::Rejected(msg.into()))
}

/// SFC of a stage, with failures named after the stage.
pub fn stage_complex(stage: &str, d: &Diagram) -> Result<ChainComplexF2> {
    sfc::differential(d).map_err(|source| GlueError::Stage {
        stage: stage.into(),
        source,
    })
}

fn lawful(t: ChainMapTable) -> Result<ChainMapTable> {
    let bad = t.law_violations();
    if bad.is_empty() {
        Ok(t)
    } else {
        Err(GlueError::Law(bad))
    }
}

fn table(
    name: &str,
    source: ChainComplexF2,
    target: ChainComplexF2,
    f: impl Fn(&Generator) -> Vec<Generator>,
) -> Result<ChainMapTable> {
    lawful(ChainMapTable::from_fn(name, source, target, f).map_err(GlueError::Rejected)?)
}

fn with_points(g: &Generator, extra: &[&str]) -> Generator {
    let mut h = g.clone();
    h.points.extend(extra.iter().map(|s| s.to_string()));
    h
}

/// A contact handle attachment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum HandleSpec {
    One {
        p: String,
        q: String,
    },
    Two {
        p: String,
        q: String,
        a: TransversePath,
        b: TransversePath,
    },
    Bypass {
        site: String,
        sign: BypassSign,
    },
}

impl HandleSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            HandleSpec::One { .. } => "1-handle",
            HandleSpec::Two { .. } => "2-handle",
            HandleSpec::Bypass {
                sign: BypassSign::Positive,
                ..
            } => "bypass+",
            HandleSpec::Bypass { .. } => "bypass-",
        }
    }

    /// An attachment of the named kind (`one`, `two`, `bypass+`, `bypass-`)
    /// on the first suture region with enough free boundary. The feet are
    /// boundary edges 0 and n/2 of the region; a bypass sits on edge 1.
    pub fn standard(kind: &str, d: &Diagram) -> Option<HandleSpec> {
        let interface = d.interface_edges();
        for (fid, f) in &d.faces {
            if !f.suture {
                continue;
            }
            let free: Vec<&String> = f
                .boundary
                .iter()
                .map(|s| &s.edge)
                .filter(|e| d.edges[*e].kind == EdgeKind::Boundary && !interface.contains(*e))
                .collect();
            if free.len() < 2 {
                continue;
            }
            let (p, q) = (free[0].clone(), free[free.len() / 2].clone());
            return match kind {
                "one" => Some(HandleSpec::One { p, q }),
                "two" => {
                    let a = TransversePath::within(fid, &p, &q);
                    Some(HandleSpec::Two { p, q, b: a.clone(), a })
                }
                "bypass+" | "bypass-" => Some(HandleSpec::Bypass {
                    site: free[1].clone(),
                    sign: if kind == "bypass+" {
                        BypassSign::Positive
                    } else {
                        BypassSign::Negative
                    },
                }),
                _ => None,
            };
        }
        None
    }
}

/// A diagrammatic gluing map and the diagram it lands in.
#[derive(Clone, Debug)]
pub struct Sigma {
    pub spec: HandleSpec,
    pub diagram: Diagram,
    pub x0: Option<String>,
    pub table: ChainMapTable,
}

fn attach(d: &Diagram, h: &HandleSpec) -> Result<(Diagram, Option<TwoHandle>)> {
    Ok(match h {
        HandleSpec::One { p, q } => (attach_one_handle(d, p, q)?, None),
        HandleSpec::Two { p, q, a, b } => {
            let t = attach_two_handle(d, p, q, a, b)?;
            (t.diagram.clone(), Some(t))
        }
        HandleSpec::Bypass { site, sign } => {
            let t = attach_trivial_bypass(d, site, *sign)?;
            (t.diagram.clone(), Some(t))
        }
    })
}

/// σ1, σ2 or τ: `y ↦ (y)` for a 1-handle and `y ↦ (y, x0)` otherwise.
pub fn sigma_map(d: &Diagram, h: &HandleSpec) -> Result<Sigma> {
    let source = stage_complex("base", d)?;
    let (diagram, t) = attach(d, h)?;
    let target = stage_complex(h.kind(), &diagram)?;
    let x0 = t.map(|t| t.x0);
    let name = match h {
        HandleSpec::One { .. } => "σ1",
        HandleSpec::Two { .. } => "σ2",
        HandleSpec::Bypass { .. } => "τ",
    };
    let table = table(name, source, target, |y| match &x0 {
        Some(x) => vec![with_points(y, &[x])],
        None => vec![y.clone()],
    })?;
    Ok(Sigma {
        spec: h.clone(),
        diagram,
        x0,
        table,
    })
}

/// The diagrams around an elementary join and the join itself, from
/// `(u ∪ w) ⊗ (w∨ ∪ v)` to `u ∪ AZ ∪ v`.
#[derive(Clone, Debug)]
pub struct Join {
    pub uw: Diagram,
    pub h3: Diagram,
    pub h4: Diagram,
    /// The slice vertex tagged with the dual of w's idempotent, if any.
    pub middle: Option<String>,
    pub prefixes: Prefixes,
    pub table: ChainMapTable,
}

/// Default prefixes for the pieces of a join. The base V keeps its names.
pub const U_PREFIX: &str = "U:";
pub const W_PREFIX: &str = "W:";
pub const W_DUAL_PREFIX: &str = "Wd:";
pub const AZ_PREFIX: &str = "A:";
pub const SLICE_PREFIX: &str = "P:";

/// The piece prefixes actually used: the defaults, numbered when the base
/// already has ids starting with them (a base that was itself glued).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefixes {
    pub u: String,
    pub w: String,
    pub w_dual: String,
    pub az: String,
    pub slice: String,
}

impl Prefixes {
    pub fn avoiding(v: &Diagram) -> Self {
        let ids: Vec<&String> = v
            .vertices
            .iter()
            .chain(v.edges.keys())
            .chain(v.faces.keys())
            .chain(v.alpha_curves.keys())
            .chain(v.beta_curves.keys())
            .collect();
        let fresh = |default: &str| {
            let stem = default.trim_end_matches(':');
            std::iter::once(default.to_string())
                .chain((1..).map(|k| format!("{stem}{k}:")))
                .find(|p| !ids.iter().any(|id| id.starts_with(p.as_str())))
                .unwrap()
        };
        Prefixes {
            u: fresh(U_PREFIX),
            w: fresh(W_PREFIX),
            w_dual: fresh(W_DUAL_PREFIX),
            az: fresh(AZ_PREFIX),
            slice: fresh(SLICE_PREFIX),
        }
    }
}

/// The elementary join for handle piece `u` (interface `U`), elementary cap
/// `w` (interface `W`), twisting slice `az` (interfaces `L`, `R`) and base
/// piece `v` (interface `V`). `(u, w) ⊗ (w∨, y)` goes to `(u, t, y)` where
/// `t` is the slice vertex tagged with the dual of w's idempotent.
pub fn elementary_join(u: &Diagram, w: &Diagram, v: &Diagram, az: &Diagram) -> Result<Join> {
    let mw = bordered_invariant(w, Kind::A, "W")?;
    if !is_elementary(&mw) {
        return reject("the cap is not elementary");
    }
    let px = Prefixes::avoiding(v);
    let (u, az) = (with_prefix(u, &px.u), with_prefix(az, &px.az));
    let uw = concatenate(&u, "U", &with_prefix(w, &px.w), "W")?;
    let h3 = concatenate(&with_prefix(&mirror(w), &px.w_dual), "W", v, "V")?;
    let h4 = concatenate(&concatenate(&u, "U", &az, "L")?, "R", v, "V")?;

    let alg = &mw.sides[0].algebra;
    let idem = mw.idempotents[0][0];
    let middle = if alg.basis[idem].horizontal.is_empty() {
        None
    } else {
        Some(az.mark(&alg.dual_name(idem))?.to_string())
    };
    let source = tensor(&stage_complex("U ∪ W", &uw)?, &stage_complex("H3", &h3)?);
    let target = stage_complex("H4", &h4)?;
    let table = table("join", source, target, |g| {
        let mut pts: Vec<&str> = g
            .points
            .iter()
            .filter(|p| !p.starts_with(&px.w) && !p.starts_with(&px.w_dual))
            .map(String::as_str)
            .collect();
        pts.extend(middle.as_deref());
        vec![Generator::new(pts)]
    })?;
    Ok(Join {
        uw,
        h3,
        h4,
        middle,
        prefixes: px,
        table,
    })
}

fn single_generator(stage: &str, c: &ChainComplexF2) -> Result<Generator> {
    match c.basis.as_slice() {
        [g] => Ok(g.clone()),
        _ => reject(format!("{stage} should have one generator, has {}", c.len())),
    }
}

/// The 1-handle pipeline and its comparison with σ1.
#[derive(Clone, Debug)]
pub struct OneHandleGlue {
    pub join: Join,
    pub destabilized: Diagram,
    pub forced: String,
    /// Ψ1 from the base to the destabilized diagram.
    pub psi: ChainMapTable,
    pub sigma: Sigma,
}

impl OneHandleGlue {
    /// Ψ1 and σ1 agree generator for generator, on identical complexes.
    pub fn tables_agree(&self) -> bool {
        same_complex(&self.psi.target, &self.sigma.table.target) && self.psi.as_sets() == self.sigma.table.as_sets()
    }

    /// The destabilized diagram and the σ1 diagram agree up to relabeling.
    pub fn diagrams_agree(&self) -> bool {
        let strip = |d: &Diagram| {
            let mut c = canonical_form(&coarsened(d));
            c.tags = Default::default();
            c
        };
        strip(&self.destabilized) == strip(&self.sigma.diagram)
    }
}

/// Whether two complexes have the same generators and the same boundary of
/// each, regardless of basis order.
pub fn same_complex(a: &ChainComplexF2, b: &ChainComplexF2) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.basis.iter().enumerate().all(|(j, x)| {
        let Some(k) = b.index_of(x) else { return false };
        let mut p: Vec<&Generator> = a.boundary(j);
        let mut q: Vec<&Generator> = b.boundary(k);
        p.sort();
        q.sort();
        p == q
    })
}

/// Ψ1: join the base with the 1-handle piece through AZ1, then remove the
/// stabilizing pair at the forced point `e`.
pub fn glue_one_handle(d: &Diagram, p: &str, q: &str) -> Result<OneHandleGlue> {
    let spec = HandleSpec::One {
        p: p.into(),
        q: q.into(),
    };
    let sigma = sigma_map(d, &spec)?;
    let v = one_handle_v(d, p, q)?;
    let join = elementary_join(&catalog::handle1_u(), &catalog::cap1(), &v, &catalog::az1())?;
    let e = single_generator("U ∪ W", &stage_complex("U ∪ W", &join.uw)?)?;

    let base = sigma.table.source.clone();
    let h3 = stage_complex("H3", &join.h3)?;
    let into_h3 = table("base → H3", base, h3, |y| vec![y.clone()])?;
    let into_tensor = table("H3 → (U ∪ W) ⊗ H3", into_h3.target.clone(), join.table.source.clone(), |y| {
        vec![Generator {
            points: y.points.union(&e.points).cloned().collect(),
        }]
    })?;

    let point = format!("{}{}", join.prefixes.u, catalog::handle1_u().mark("e")?);
    let (alpha, beta) = match (
        join.h4.curve_through(&point, Family::Alpha),
        join.h4.curve_through(&point, Family::Beta),
    ) {
        (Some(a), Some(b)) => (a, b),
        _ => return reject(format!("{point} is not an intersection point of H4")),
    };
    let (destabilized, forced) = trivial_destabilize(&join.h4, &alpha, &beta)?;
    let out = stage_complex("destabilized H4", &destabilized)?;
    let destab = table("destabilize", join.table.target.clone(), out, |x| {
        let mut y = x.clone();
        y.points.remove(&forced);
        vec![y]
    })?;
    let psi = into_h3
        .then(&into_tensor)
        .and_then(|t| t.then(&join.table))
        .and_then(|t| t.then(&destab))
        .map_err(GlueError::Rejected)?;
    let psi = lawful(ChainMapTable { name: "Ψ1".into(), ..psi })?;
    Ok(OneHandleGlue {
        join,
        destabilized,
        forced,
        psi,
        sigma,
    })
}

/// The split H3 = W∨ ∪ V with its marked points.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub h3: Diagram,
    pub v: LocalV,
    pub w_dual: String,
    pub y0: String,
}

fn prepare(v: LocalV) -> Result<Prepared> {
    let cap = with_prefix(&mirror(&catalog::cap2()), &Prefixes::avoiding(&v.diagram).w_dual);
    let w_dual = cap.mark("w")?.to_string();
    let h3 = concatenate(&cap, "W", &v.diagram, "V")?;
    Ok(Prepared {
        h3,
        w_dual,
        y0: v.y0.clone(),
        v,
    })
}

/// H3 for a 2-handle with feet `p`, `q` and paths `a`, `b`: the attachment
/// with the doubled stabilization already slid, split along W∨ and V.
pub fn prepare_two_handle(d: &Diagram, p: &str, q: &str, a: &TransversePath, b: &TransversePath) -> Result<Prepared> {
    prepare(two_handle_v(d, p, q, a, b)?)
}

/// The check `∂(z1, y0, y) = (z3, y0, y) + (z2, x0, y)` in H5 over a basis
/// of the cycles `y` of the base.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub cycles: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The 2-handle pipeline H3 → H4 → H5 → H6.
#[derive(Clone, Debug)]
pub struct TwoHandleGlue {
    pub prepared: Prepared,
    pub join: Join,
    pub h5: Diagram,
    pub sigma: Sigma,
    /// From the base to H4: `y ↦ (c, z3, y0, y)` when the pieces are standard.
    pub psi: ChainMapTable,
    pub identity: IdentityReport,
    /// Homology ranks of H3, H4, H5 and H6.
    pub ranks: [usize; 4],
}

impl TwoHandleGlue {
    pub fn ranks_agree(&self) -> bool {
        self.ranks[1] == self.ranks[2] && self.ranks[2] == self.ranks[3]
    }
}

/// Ψ2 for a 2-handle or a trivial bypass. A bypass is a 1-handle followed
/// by a 2-handle; the pipeline runs on the 2-handle part after the strip.
pub fn glue_two_handle(d: &Diagram, h: &HandleSpec) -> Result<TwoHandleGlue> {
    let sigma = sigma_map(d, h)?;
    let v = match h {
        HandleSpec::Two { p, q, a, b } => two_handle_v(d, p, q, a, b)?,
        HandleSpec::Bypass { site, sign } => local_v(attach_trivial_bypass(d, site, *sign)?)?,
        HandleSpec::One { .. } => return reject("glue_two_handle needs a 2-handle or a bypass"),
    };
    let prepared = prepare(v)?;
    let base = sigma.table.source.clone();
    let h3 = stage_complex("H3", &prepared.h3)?;
    let (w, y0) = (prepared.w_dual.clone(), prepared.y0.clone());
    let into_h3 = table("base → H3", base.clone(), h3, |y| vec![with_points(y, &[&w, &y0])])?;

    let join = elementary_join(&catalog::handle2_u(), &catalog::cap2(), &prepared.v.diagram, &catalog::az2())?;
    let cw = single_generator("U ∪ W", &stage_complex("U ∪ W", &join.uw)?)?;
    let into_tensor = table("H3 → (U ∪ W) ⊗ H3", into_h3.target.clone(), join.table.source.clone(), |y| {
        vec![Generator {
            points: y.points.union(&cw.points).cloned().collect(),
        }]
    })?;
    let psi = into_h3
        .then(&into_tensor)
        .and_then(|t| t.then(&join.table))
        .map_err(GlueError::Rejected)?;
    let psi = lawful(ChainMapTable { name: "Ψ2".into(), ..psi })?;

    let slice = with_prefix(&catalog::two_handle_slice(), &join.prefixes.slice);
    let h5 = concatenate(&slice, "R", &prepared.v.diagram, "V")?;
    let c5 = stage_complex("H5", &h5)?;
    let [z1, z2, z3] = ["z1", "z2", "z3"].map(|z| slice.mark(z).map(str::to_string));
    let (z1, z2, z3) = (z1?, z2?, z3?);
    let x0 = prepared.v.x0.clone();
    let mut identity = IdentityReport::default();
    for cyc in cycle_basis(&base) {
        identity.cycles += 1;
        let lift = |extra: [&str; 2]| -> std::result::Result<crate::exactlin::BitVector, String> {
            let mut v = crate::exactlin::BitVector::zeros(c5.len());
            for j in cyc.ones() {
                let g = with_points(&base.basis[j], &extra);
                let k = c5.index_of(&g).ok_or_else(|| format!("{g} is not a generator of H5"))?;
                v.flip(k);
            }
            Ok(v)
        };
        let shown: Vec<String> = cyc.ones().map(|j| base.basis[j].to_string()).collect();
        match (lift([&z1, &y0]), lift([&z3, &y0]), lift([&z2, &x0])) {
            (Ok(a), Ok(b), Ok(c)) => {
                let mut rhs = b;
                rhs.add_assign(&c);
                if c5.boundary_of(&a) != rhs {
                    identity.failures.push(format!("∂(z1, y0, y) ≠ (z3, y0, y) + (z2, x0, y) for y = {}", shown.join(" + ")));
                }
            }
            (a, b, c) => {
                for e in [a.err(), b.err(), c.err()].into_iter().flatten() {
                    identity.failures.push(e);
                }
            }
        }
    }
    let ranks = [
        into_h3.target.homology().total,
        join.table.target.homology().total,
        c5.homology().total,
        sigma.table.target.homology().total,
    ];
    Ok(TwoHandleGlue {
        prepared,
        join,
        h5,
        sigma,
        psi,
        identity,
        ranks,
    })
}

/// Transports the EH tag of `d` through the attachments: unchanged by a
/// 1-handle, joined with x0 otherwise. Each stage's tag must be a cycle.
pub fn eh_generator(d: &Diagram, stages: &[Sigma]) -> Result<Generator> {
    let Some(tag) = &d.tags.eh else {
        return reject("the base diagram carries no EH tag");
    };
    let mut g = Generator {
        points: tag.clone(),
    };
    check_cycle("base", &stage_complex("base", d)?, &g)?;
    for s in stages {
        if let Some(x0) = &s.x0 {
            g.points.insert(x0.clone());
        }
        check_cycle(s.spec.kind(), &s.table.target, &g)?;
    }
    Ok(g)
}

fn check_cycle(stage: &str, c: &ChainComplexF2, g: &Generator) -> Result<()> {
    let Some(j) = c.index_of(g) else {
        return reject(format!("{stage}: EH tag {g} is not a generator"));
    };
    if !c.differential.column(j).is_zero() {
        return reject(format!("{stage}: EH tag {g} is not a cycle"));
    }
    Ok(())
}

/// The type-D gluing map for an elementary cap: with the generator `x` of
/// `u ∪ w` fixed, `(w∨, y) ↦ join(x ⊗ (w∨, y))`, from H3 to H4.
pub fn type_d_gluing_map(u: &Diagram, w: &Diagram, v: &Diagram, az: &Diagram, x: &Generator) -> Result<ChainMapTable> {
    let join = elementary_join(u, w, v, az)?;
    let cuw = stage_complex("U ∪ W", &join.uw)?;
    let Some(j) = cuw.index_of(x) else {
        return reject(format!("{x} is not a generator of U ∪ W"));
    };
    if !cuw.differential.column(j).is_zero() {
        return reject(format!("{x} is not a cycle of U ∪ W"));
    }
    let h3 = stage_complex("H3", &join.h3)?;
    let into = table("x ⊗ -", h3, join.table.source.clone(), |y| {
        vec![Generator {
            points: y.points.union(&x.points).cloned().collect(),
        }]
    })?;
    let phi = into.then(&join.table).map_err(GlueError::Rejected)?;
    lawful(ChainMapTable { name: "φ".into(), ..phi })
}

#[cfg(test)]
mod tests;
