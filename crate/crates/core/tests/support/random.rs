//! Seeded random handle sequences over the catalog bases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfh_core::catalog;
use sfh_core::glue::{sigma_map, HandleSpec, Sigma};
use sfh_core::surface::{BypassSign, Diagram, EdgeKind, TransversePath};

/// Free boundary edges of each suture face.
fn free_edges(d: &Diagram) -> Vec<(String, Vec<String>)> {
    let interface = d.interface_edges();
    d.faces
        .iter()
        .filter(|(_, f)| f.suture)
        .map(|(id, f)| {
            let free = f
                .boundary
                .iter()
                .map(|s| s.edge.clone())
                .filter(|e| d.edges[e].kind == EdgeKind::Boundary && !interface.contains(e))
                .collect();
            (id.clone(), free)
        })
        .collect()
}

fn random_handle(d: &Diagram, rng: &mut ChaCha8Rng) -> Option<HandleSpec> {
    let faces = free_edges(d);
    let all: Vec<&String> = faces.iter().flat_map(|(_, e)| e).collect();
    match rng.gen_range(0..4) {
        0 => {
            let pq: Vec<&&String> = all.choose_multiple(rng, 2).collect();
            (pq.len() == 2).then(|| HandleSpec::One {
                p: pq[0].to_string(),
                q: pq[1].to_string(),
            })
        }
        1 => {
            let (f, free) = faces.iter().filter(|(_, e)| e.len() >= 2).collect::<Vec<_>>().choose(rng).copied()?;
            let pq: Vec<&String> = free.choose_multiple(rng, 2).collect();
            let a = TransversePath::within(f, pq[0], pq[1]);
            Some(HandleSpec::Two {
                p: pq[0].clone(),
                q: pq[1].clone(),
                b: a.clone(),
                a,
            })
        }
        k => Some(HandleSpec::Bypass {
            site: all.choose(rng)?.to_string(),
            sign: if k == 2 { BypassSign::Positive } else { BypassSign::Negative },
        }),
    }
}

/// A composition of one to three handles on a catalog base, or `None` if
/// the draw hit a rejected attachment.
pub struct Composition {
    pub base: Diagram,
    pub stages: Vec<Sigma>,
}

pub fn composition(seed: u64) -> Option<Composition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = if rng.gen_bool(0.5) { catalog::disk() } else { catalog::stab() };
    let n = rng.gen_range(1..=3);
    let mut cur = base.clone();
    let mut stages = Vec::new();
    for _ in 0..n {
        let h = random_handle(&cur, &mut rng)?;
        let s = sigma_map(&cur, &h).ok()?;
        cur = s.diagram.clone();
        stages.push(s);
    }
    Some(Composition { base, stages })
}

/// The first `count` seeds that give a composition, with the number of
/// draws that were rejected on the way.
pub fn compositions(count: usize) -> (Vec<(u64, Composition)>, usize) {
    let mut out = Vec::new();
    let mut rejected = 0;
    let mut seed = 0;
    while out.len() < count {
        match composition(seed) {
            Some(c) => out.push((seed, c)),
            None => rejected += 1,
        }
        seed += 1;
    }
    (out, rejected)
}
