//! Stage-by-stage comparison of the diagrammatic and bordered routes.

use std::fmt::Write as _;

use serde::Serialize;

use super::{glue_one_handle, glue_two_handle, nonzero_class, sigma_map, stage_complex, ChainMapTable, HandleSpec};
use crate::exactlin::BitVector;
use crate::sfc::{ChainComplexF2, Generator};
use crate::surface::Diagram;

/// Knobs for fault injection.
#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    /// Transport the EH tag with a wrong intersection point in place of x0.
    pub wrong_x0: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub handle: String,
    pub generators: usize,
    /// Rank per Spin^c class of the σ-route target.
    pub ranks: Vec<usize>,
    pub sigma_rank: usize,
    /// Ranks along the bordered route: the destabilized diagram for a
    /// 1-handle, H3, H4, H5, H6 otherwise.
    pub psi_ranks: Vec<usize>,
    pub eh_tag: Option<String>,
    pub eh_sigma_nonzero: bool,
    pub eh_psi_nonzero: bool,
    pub h5_identity: Option<bool>,
    pub sigma_digest: String,
    pub psi_digest: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub base_generators: usize,
    pub base_rank: usize,
    pub stages: Vec<StageReport>,
    pub failures: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "base: {} generators, rank {}", self.base_generators, self.base_rank);
        for (k, st) in self.stages.iter().enumerate() {
            let _ = writeln!(s, "stage {} ({})", k + 1, st.handle);
            let _ = writeln!(s, "  generators {}  ranks {:?}  total {}", st.generators, st.ranks, st.sigma_rank);
            let _ = writeln!(s, "  bordered ranks {:?}", st.psi_ranks);
            let tag = st.eh_tag.as_deref().unwrap_or("-");
            let _ = writeln!(s, "  EH {tag}  σ nonzero {}  Ψ nonzero {}", st.eh_sigma_nonzero, st.eh_psi_nonzero);
            if let Some(ok) = st.h5_identity {
                let _ = writeln!(s, "  H5 identity {}", if ok { "holds" } else { "FAILS" });
            }
            let _ = writeln!(s, "  σ table {}", &st.sigma_digest[..16]);
            let _ = writeln!(s, "  Ψ table {}", &st.psi_digest[..16]);
        }
        if self.failures.is_empty() {
            let _ = writeln!(s, "result: pass");
        } else {
            for f in &self.failures {
                let _ = writeln!(s, "failure: {f}");
            }
            let _ = writeln!(s, "result: FAIL");
        }
        s
    }
}

fn vector(c: &ChainComplexF2, g: &Generator) -> Option<BitVector> {
    c.index_of(g).map(|j| BitVector::from_indices(c.len(), [j]))
}

fn image_nonzero(t: &ChainMapTable, v: &BitVector) -> bool {
    nonzero_class(&t.target, &t.image(v))
}

/// A stand-in for `x0`: an intersection point whose use breaks the cycle
/// condition if one exists, otherwise any other vertex.
fn wrong_point(c: &ChainComplexF2, d: &Diagram, tag: &Generator, x0: &str) -> String {
    let broken = |p: &String| {
        let mut t = tag.clone();
        t.points.insert(p.clone());
        c.index_of(&t).is_none_or(|j| !c.differential.column(j).is_zero())
    };
    let pts = d.intersection_points();
    pts.iter()
        .filter(|p| p.as_str() != x0 && !tag.contains(p))
        .find(|p| broken(p))
        .or_else(|| d.vertices.iter().find(|v| !pts.contains(*v)))
        .cloned()
        .unwrap_or_else(|| x0.to_string())
}

/// Runs both routes over the handle sequence. Disagreements and failed
/// checks are collected, never raised; a stage that cannot be built ends
/// the run with a failure naming it.
pub fn equivalence_report(d: &Diagram, handles: &[HandleSpec], opts: &ReportOptions) -> EquivalenceReport {
    let mut failures = Vec::new();
    let mut stages = Vec::new();
    let base = match stage_complex("base", d) {
        Ok(c) => c,
        Err(e) => {
            return EquivalenceReport {
                base_generators: 0,
                base_rank: 0,
                stages,
                failures: vec![e.to_string()],
            }
        }
    };
    let mut eh = d.tags.eh.as_ref().map(|t| Generator { points: t.clone() });
    if eh.is_none() {
        failures.push("base: no EH tag".into());
    }
    let mut cur = d.clone();
    for (k, h) in handles.iter().enumerate() {
        let stage = format!("stage {} ({})", k + 1, h.kind());
        let fail = |failures: &mut Vec<String>, msg: String| failures.push(format!("{stage}: {msg}"));
        let sigma = match sigma_map(&cur, h) {
            Ok(s) => s,
            Err(e) => {
                fail(&mut failures, e.to_string());
                break;
            }
        };
        let eh_in = eh.as_ref().and_then(|g| vector(&sigma.table.source, g));
        let (psi, psi_ranks, identity): (ChainMapTable, Vec<usize>, Option<bool>) = match h {
            HandleSpec::One { p, q } => match glue_one_handle(&cur, p, q) {
                Ok(g) => {
                    if !g.tables_agree() {
                        fail(&mut failures, "Ψ1 and σ1 tables differ".into());
                    }
                    (g.psi.clone(), vec![g.psi.target.homology().total], None)
                }
                Err(e) => {
                    fail(&mut failures, e.to_string());
                    break;
                }
            },
            _ => match glue_two_handle(&cur, h) {
                Ok(g) => {
                    if !g.ranks_agree() {
                        fail(&mut failures, format!("ranks of H4, H5, H6 differ: {:?}", g.ranks));
                    }
                    for f in &g.identity.failures {
                        fail(&mut failures, f.clone());
                    }
                    (g.psi.clone(), g.ranks.to_vec(), Some(g.identity.holds()))
                }
                Err(e) => {
                    fail(&mut failures, e.to_string());
                    break;
                }
            },
        };
        let sigma_rank = sigma.table.target.homology().total;
        // H3 is the base again; every later stage presents the glued manifold.
        let base_rank = sigma.table.source.homology().total;
        let (pre, post) = psi_ranks.split_at(psi_ranks.len().saturating_sub(3).min(1));
        if pre.iter().any(|&r| r != base_rank) || post.iter().any(|&r| r != sigma_rank) {
            fail(&mut failures, format!("stage ranks {psi_ranks:?} differ from base {base_rank} / σ-route {sigma_rank}"));
        }
        for t in [&sigma.table, &psi] {
            for v in t.law_violations() {
                fail(&mut failures, v);
            }
        }
        let (sn, pn) = match &eh_in {
            Some(v) => (image_nonzero(&sigma.table, v), image_nonzero(&psi, v)),
            None => (false, false),
        };
        if sn != pn {
            fail(&mut failures, format!("EH image nonzero on σ-route {sn}, on Ψ-route {pn}"));
        }

        // Transport the tag and check it is still a cycle.
        if let Some(g) = eh.as_mut() {
            let mut x0 = sigma.x0.clone();
            if opts.wrong_x0 {
                if let Some(x) = &x0 {
                    x0 = Some(wrong_point(&sigma.table.target, &sigma.diagram, g, x));
                }
            }
            if let Some(x) = x0 {
                g.points.insert(x);
            }
            let c = &sigma.table.target;
            match c.index_of(g) {
                None => fail(&mut failures, format!("EH tag {g} is not a generator")),
                Some(j) if !c.differential.column(j).is_zero() => {
                    fail(&mut failures, format!("EH tag {g} is not a cycle"))
                }
                Some(_) => {}
            }
        }
        stages.push(StageReport {
            handle: h.kind().into(),
            generators: sigma.table.target.len(),
            ranks: sigma.table.target.homology().classes.iter().map(|c| c.rank).collect(),
            sigma_rank,
            psi_ranks,
            eh_tag: eh.as_ref().map(|g| g.to_string()),
            eh_sigma_nonzero: sn,
            eh_psi_nonzero: pn,
            h5_identity: identity,
            sigma_digest: sigma.table.digest(),
            psi_digest: psi.digest(),
        });
        cur = sigma.diagram;
    }
    EquivalenceReport {
        base_generators: base.len(),
        base_rank: base.homology().total,
        stages,
        failures,
    }
}
