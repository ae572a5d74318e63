use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write;

use super::{io::normalize, ArcInterface, Curve, Diagram, Edge, Face, Family, Side, Tags};

struct Labeling {
    vertices: BTreeMap<String, String>,
    edges: BTreeMap<String, String>,
    faces: BTreeMap<String, String>,
}

/// Breadth-first labeling of one connected component from a starting corner.
type Occ = BTreeMap<String, Vec<(String, usize, super::Sign)>>;

fn traverse(d: &Diagram, occ: &Occ, face: &str, rot: usize) -> Labeling {
    let offsets = (0, 0, 0);
    let mut lab = Labeling {
        vertices: BTreeMap::new(),
        edges: BTreeMap::new(),
        faces: BTreeMap::new(),
    };
    let mut queue = VecDeque::from([(face.to_string(), rot)]);
    while let Some((fid, rot)) = queue.pop_front() {
        if lab.faces.contains_key(&fid) {
            continue;
        }
        let n = lab.faces.len() + offsets.2;
        lab.faces.insert(fid.clone(), format!("f{n}"));
        let f = &d.faces[&fid];
        let len = f.boundary.len();
        for k in 0..len {
            let s = &f.boundary[(rot + k) % len];
            let (a, b) = d.side_ends(s);
            for v in [a, b] {
                if !lab.vertices.contains_key(v) {
                    let n = lab.vertices.len() + offsets.0;
                    lab.vertices.insert(v.to_string(), format!("v{n}"));
                }
            }
            if !lab.edges.contains_key(&s.edge) {
                let n = lab.edges.len() + offsets.1;
                lab.edges.insert(s.edge.clone(), format!("e{n}"));
            }
            for (g, j, sign) in &occ[&s.edge] {
                if !(*g == fid && *sign == s.sign) && !lab.faces.contains_key(g) {
                    queue.push_back((g.clone(), *j));
                }
            }
        }
    }
    lab
}

fn flip_edge(d: &mut Diagram, id: &str) {
    let e = d.edges.get_mut(id).unwrap();
    std::mem::swap(&mut e.from, &mut e.to);
    for f in d.faces.values_mut() {
        for s in &mut f.boundary {
            if s.edge == id {
                s.sign = s.sign.flip();
            }
        }
    }
}

/// Seams carry no orientation: point each one so that the traversal from
/// the given corner first meets its positive side.
fn orient_seams(d: &Diagram, face: &str, rot: usize) -> Diagram {
    let occ = d.occurrence_index();
    let mut seen = BTreeSet::new();
    let mut faces = BTreeSet::new();
    let mut flip = Vec::new();
    let mut queue = VecDeque::from([(face.to_string(), rot)]);
    while let Some((fid, rot)) = queue.pop_front() {
        if !faces.insert(fid.clone()) {
            continue;
        }
        let f = &d.faces[&fid];
        let len = f.boundary.len();
        for k in 0..len {
            let s = &f.boundary[(rot + k) % len];
            if seen.insert(s.edge.clone()) && d.edges[&s.edge].kind == super::EdgeKind::Seam && s.sign == super::Sign::Neg {
                flip.push(s.edge.clone());
            }
            for (g, j, sign) in &occ[&s.edge] {
                if !(*g == fid && *sign == s.sign) && !faces.contains(g) {
                    queue.push_back((g.clone(), *j));
                }
            }
        }
    }
    let mut out = d.clone();
    for e in flip {
        flip_edge(&mut out, &e);
    }
    out
}

fn code(d: &Diagram, lab: &Labeling) -> String {
    let mut faces: Vec<(&String, &String)> = lab.faces.iter().map(|(a, b)| (b, a)).collect();
    faces.sort_by_key(|(l, _)| l[1..].parse::<usize>().unwrap());
    let rev: BTreeMap<&String, &String> = lab.edges.iter().map(|(a, b)| (b, a)).collect();
    let mut out = String::new();
    for (_, fid) in faces {
        let f = &d.faces[fid];
        let word: Vec<Side> = f
            .boundary
            .iter()
            .map(|s| Side {
                edge: lab.edges[&s.edge].clone(),
                sign: s.sign,
            })
            .collect();
        let word = min_rot(&word);
        let _ = write!(out, "[{}", f.suture as u8);
        for s in word {
            let e = &d.edges[rev[&s.edge]];
            let _ = write!(
                out,
                " {}{}{:?}{}>{}",
                s.edge,
                s.sign.as_str(),
                e.kind,
                lab.vertices[&e.from],
                lab.vertices[&e.to]
            );
        }
        out.push(']');
    }
    // Curve membership, interfaces and tags, in labeled terms.
    let mut groups: Vec<String> = Vec::new();
    for fam in [Family::Alpha, Family::Beta] {
        for c in d.curves(fam).values() {
            let segs: Vec<&String> = c.segments.iter().filter_map(|s| lab.edges.get(s)).collect();
            groups.push(format!("{fam:?}{}{segs:?}", c.closed));
        }
    }
    groups.sort();
    let _ = write!(out, "{groups:?}");
    for i in &d.arc_interfaces {
        let ivs: Vec<Vec<Option<&String>>> =
            i.intervals.iter().map(|iv| iv.iter().map(|e| lab.edges.get(e)).collect()).collect();
        let _ = write!(out, "|{}{:?}{:?}{ivs:?}", i.name, i.side, i.family);
    }
    if let Some(eh) = &d.tags.eh {
        let mut v: Vec<Option<&String>> = eh.iter().map(|x| lab.vertices.get(x)).collect();
        v.sort();
        let _ = write!(out, "|eh{v:?}");
    }
    for (k, v) in &d.tags.marks {
        let _ = write!(out, "|{k}={:?}", lab.vertices.get(v));
    }
    out
}

fn min_rot(v: &[Side]) -> Vec<Side> {
    (0..v.len())
        .map(|k| {
            let mut r = v[k..].to_vec();
            r.extend_from_slice(&v[..k]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// Relabels every id by a deterministic traversal that does not depend on
/// the input ids, so isomorphic diagrams produce equal results.
pub fn canonical_form(d: &Diagram) -> Diagram {
    // Split faces into connected components.
    let occ = d.occurrence_index();
    let mut oriented_base = d.clone();
    let mut remaining: BTreeSet<String> = d.faces.keys().cloned().collect();
    let mut comps: Vec<(String, Labeling)> = Vec::new();
    while let Some(seed) = remaining.iter().next().cloned() {
        let probe = traverse(d, &occ, &seed, 0);
        for f in probe.faces.keys() {
            remaining.remove(f);
        }
        let mut best: Option<(String, Labeling, Diagram)> = None;
        for fid in probe.faces.keys() {
            for rot in 0..d.faces[fid].boundary.len() {
                let oriented = orient_seams(&oriented_base, fid, rot);
                let occ = oriented.occurrence_index();
                let lab = traverse(&oriented, &occ, fid, rot);
                let c = code(&oriented, &lab);
                if best.as_ref().is_none_or(|(b, _, _)| c < *b) {
                    best = Some((c, lab, oriented));
                }
            }
        }
        let (c, lab, oriented) = best.unwrap();
        // Seams of this component take their orientation from the winner.
        for e in lab.edges.keys() {
            if d.edges[e].kind == super::EdgeKind::Seam && oriented.edges[e].from != oriented_base.edges[e].from {
                flip_edge(&mut oriented_base, e);
            }
        }
        comps.push((c, lab));
    }
    let d = &oriented_base;
    comps.sort_by(|a, b| a.0.cmp(&b.0));

    let mut vmap = BTreeMap::new();
    let mut emap = BTreeMap::new();
    let mut fmap = BTreeMap::new();
    for (_, lab) in &comps {
        let (vo, eo, fo) = (vmap.len(), emap.len(), fmap.len());
        let shift = |m: &BTreeMap<String, String>, off: usize, out: &mut BTreeMap<String, String>| {
            for (k, v) in m {
                let n: usize = v[1..].parse().unwrap();
                out.insert(k.clone(), format!("{}{}", &v[..1], n + off));
            }
        };
        shift(&lab.vertices, vo, &mut vmap);
        shift(&lab.edges, eo, &mut emap);
        shift(&lab.faces, fo, &mut fmap);
    }
    // Vertices not on any face edge keep a stable position at the end.
    for v in &d.vertices {
        if !vmap.contains_key(v) {
            let n = vmap.len();
            vmap.insert(v.clone(), format!("v{n}"));
        }
    }
    for e in d.edges.keys() {
        if !emap.contains_key(e) {
            let n = emap.len();
            emap.insert(e.clone(), format!("e{n}"));
        }
    }

    let num = |s: &str| s[1..].parse::<usize>().unwrap();
    let mut cmaps: [BTreeMap<String, String>; 2] = Default::default();
    for (k, fam) in [Family::Alpha, Family::Beta].into_iter().enumerate() {
        let mut order: Vec<(usize, &String)> = d
            .curves(fam)
            .iter()
            .map(|(id, c)| {
                let m = c.segments.iter().map(|s| num(&emap[s])).min().unwrap_or(usize::MAX);
                (m, id)
            })
            .collect();
        order.sort();
        let prefix = if k == 0 { "a" } else { "b" };
        for (i, (_, id)) in order.into_iter().enumerate() {
            cmaps[k].insert(id.clone(), format!("{prefix}{i}"));
        }
    }

    let mut out = Diagram {
        vertices: d.vertices.iter().map(|v| vmap[v].clone()).collect(),
        ..Default::default()
    };
    for (id, e) in &d.edges {
        let curve = e.curve.as_ref().map(|c| {
            let k = if e.kind == super::EdgeKind::Alpha { 0 } else { 1 };
            cmaps[k].get(c).cloned().unwrap_or_else(|| c.clone())
        });
        out.edges.insert(
            emap[id].clone(),
            Edge {
                kind: e.kind,
                curve,
                from: vmap[&e.from].clone(),
                to: vmap[&e.to].clone(),
            },
        );
    }
    for (id, f) in &d.faces {
        out.faces.insert(
            fmap[id].clone(),
            Face {
                boundary: f
                    .boundary
                    .iter()
                    .map(|s| Side {
                        edge: emap[&s.edge].clone(),
                        sign: s.sign,
                    })
                    .collect(),
                suture: f.suture,
            },
        );
    }
    for (k, fam) in [Family::Alpha, Family::Beta].into_iter().enumerate() {
        for (id, c) in d.curves(fam) {
            out.curves_mut(fam).insert(
                cmaps[k][id].clone(),
                Curve {
                    closed: c.closed,
                    segments: c.segments.iter().map(|s| emap[s].clone()).collect(),
                },
            );
        }
    }
    out.arc_interfaces = d
        .arc_interfaces
        .iter()
        .map(|i| ArcInterface {
            name: i.name.clone(),
            side: i.side,
            family: i.family,
            intervals: i
                .intervals
                .iter()
                .map(|iv| iv.iter().map(|e| emap[e].clone()).collect())
                .collect(),
        })
        .collect();
    out.tags = Tags {
        eh: d.tags.eh.as_ref().map(|s| s.iter().map(|v| vmap[v].clone()).collect()),
        marks: d.tags.marks.iter().map(|(k, v)| (k.clone(), vmap[v].clone())).collect(),
    };
    normalize(&mut out);
    out
}

/// Merges runs of boundary edges joined at vertices that meet nothing
/// else, so diagrams that differ only in how the boundary is subdivided
/// become equal. Interface edges are kept.
pub fn coarsened(d: &Diagram) -> Diagram {
    let mut out = d.clone();
    let keep = d.interface_edges();
    loop {
        let mut degree: BTreeMap<&String, usize> = BTreeMap::new();
        for e in out.edges.values() {
            *degree.entry(&e.from).or_default() += 1;
            *degree.entry(&e.to).or_default() += 1;
        }
        let plain = |id: &String, e: &Edge| e.kind == super::EdgeKind::Boundary && !keep.contains(id);
        let pair = out.edges.iter().filter(|(id, e)| plain(id, e)).find_map(|(a, ea)| {
            if degree[&ea.to] != 2 || ea.from == ea.to {
                return None;
            }
            out.edges
                .iter()
                .find(|(b, eb)| *b != a && plain(b, eb) && eb.from == ea.to && eb.to != ea.to)
                .map(|(b, _)| (a.clone(), b.clone()))
        });
        let Some((a, b)) = pair else { break };
        let eb = out.edges.remove(&b).unwrap();
        let mid = std::mem::replace(&mut out.edges.get_mut(&a).unwrap().to, eb.to);
        out.vertices.remove(&mid);
        for f in out.faces.values_mut() {
            f.boundary.retain(|s| s.edge != b);
        }
    }
    out
}
