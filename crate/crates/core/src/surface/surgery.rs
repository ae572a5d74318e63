//! Handle attachments, bypasses and trivial destabilization.

use std::collections::BTreeSet;

use super::ops::{Hop, Inserter};
use super::{
    reject, validate, Diagram, EdgeKind, Face, Family, Result, Side, Sign, SurfaceError,
    TransversePath,
};

/// Data about a freshly attached strip.
#[derive(Clone, Debug)]
pub struct Strip {
    pub face: String,
    pub p_seam: String,
    pub q_seam: String,
}

/// Result of a 2-handle attachment.
#[derive(Clone, Debug)]
pub struct TwoHandle {
    pub diagram: Diagram,
    pub x0: String,
    pub alpha: String,
    pub beta: String,
    /// Intersection points forced outside the strip by the topology of the paths.
    pub extra: Vec<String>,
}

fn check_valid(d: &Diagram) -> Result<()> {
    let v = validate(d);
    if v.is_empty() {
        Ok(())
    } else {
        Err(SurfaceError::Invalid(v))
    }
}

fn check_foot(d: &Diagram, p: &str) -> Result<()> {
    let e = d.edge(p)?;
    if e.kind != EdgeKind::Boundary {
        return reject(format!("{p} is not a boundary edge"));
    }
    if d.interface_edges().contains(p) {
        return reject(format!("{p} lies on a bordered interface"));
    }
    match d.find_side(p, Sign::Pos) {
        Some((f, _)) if d.faces[&f].suture => Ok(()),
        _ => reject(format!("{p} is not a side of a suture region")),
    }
}

/// Glues a band to the boundary at the midpoints of the boundary edges `p`
/// and `q`. The band ends become seams and the band is one new face.
pub fn attach_strip(d: &mut Diagram, p: &str, q: &str) -> Result<Strip> {
    if p == q {
        return reject("the two feet must be different boundary edges");
    }
    check_foot(d, p)?;
    check_foot(d, q)?;
    let mut foot = |e: &str| {
        let (m1, _, rest) = d.split_edge(e);
        let (m2, mid, _) = d.split_edge(&rest);
        d.edges.get_mut(&mid).unwrap().kind = EdgeKind::Seam;
        (m1, m2, mid)
    };
    let (m1, m2, pmid) = foot(p);
    let (n1, n2, qmid) = foot(q);
    let b1 = d.add_edge("h", EdgeKind::Boundary, None, &m1, &n2);
    let b2 = d.add_edge("h", EdgeKind::Boundary, None, &n1, &m2);
    let face = d.fresh("f");
    d.faces.insert(
        face.clone(),
        Face {
            boundary: vec![
                Side::neg(pmid.clone()),
                Side::pos(b1),
                Side::neg(qmid.clone()),
                Side::pos(b2),
            ],
            suture: true,
        },
    );
    Ok(Strip {
        face,
        p_seam: pmid,
        q_seam: qmid,
    })
}

/// Attaches a 2-dimensional 1-handle with feet at boundary edges `p`, `q`.
pub fn attach_one_handle(d: &Diagram, p: &str, q: &str) -> Result<Diagram> {
    let mut out = d.clone();
    attach_strip(&mut out, p, q)?;
    out.tidy();
    check_valid(&out)?;
    Ok(out)
}

fn check_path(d: &Diagram, path: &TransversePath, p: &str, q: &str) -> Result<()> {
    if path.start != p || path.end != q {
        return reject(format!("path must run from {p} to {q}"));
    }
    if path.faces.len() != path.crossings.len() + 1 {
        return reject("a path lists one more face than crossings");
    }
    for f in &path.faces {
        d.face(f)?;
    }
    for e in &path.crossings {
        if !d.edge(e)?.kind.is_curve() {
            return reject(format!("path crosses {e}, which is not an alpha or beta segment"));
        }
    }
    let first = d.find_side(p, Sign::Pos).map(|x| x.0);
    let last = d.find_side(q, Sign::Pos).map(|x| x.0);
    if first.as_deref() != Some(path.faces[0].as_str())
        || last.as_deref() != path.faces.last().map(String::as_str)
    {
        return reject("path must start in the face of its first foot and end in the face of its last");
    }
    Ok(())
}

/// Attaches a 2-handle: a strip at `p`, `q` and closed curves `first`
/// (family `fam`) and `second` (the other family) running along the paths
/// and over the strip. The first curve is drawn first; the second crosses it
/// once inside the strip at `x0`, plus wherever the paths force it to.
pub fn attach_two_handle_ordered(
    d: &Diagram,
    p: &str,
    q: &str,
    first: &TransversePath,
    second: &TransversePath,
    fam: Family,
) -> Result<TwoHandle> {
    check_path(d, first, p, q)?;
    check_path(d, second, p, q)?;
    let shared: BTreeSet<_> = first.crossings.iter().filter(|e| second.crossings.contains(e)).collect();
    if let Some(e) = shared.into_iter().next() {
        return reject(format!("paths are not disjoint: both cross {e}"));
    }
    for path in [first, second] {
        let set: BTreeSet<_> = path.crossings.iter().collect();
        if set.len() != path.crossings.len() {
            return reject("a path may cross each edge at most once");
        }
    }
    two_handle_core(d, p, q, first, second, fam)
}

/// Attaches a 2-handle with alpha curve along `a` and beta curve along `b`.
pub fn attach_two_handle(
    d: &Diagram,
    p: &str,
    q: &str,
    a: &TransversePath,
    b: &TransversePath,
) -> Result<TwoHandle> {
    attach_two_handle_ordered(d, p, q, a, b, Family::Alpha)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BypassSign {
    Positive,
    Negative,
}

/// Attaches a trivial bypass along the boundary edge `site`: a 1-handle and
/// a 2-handle in the local model. For a positive bypass the new alpha curve
/// meets the beta curves only at `x0`; for a negative one the new beta curve
/// meets the alpha curves only at `x0`.
pub fn attach_trivial_bypass(d: &Diagram, site: &str, sign: BypassSign) -> Result<TwoHandle> {
    check_foot(d, site)?;
    let mut base = d.clone();
    let mut pieces = vec![site.to_string()];
    for _ in 0..4 {
        let last = pieces.pop().unwrap();
        let (_, a, b) = base.split_edge(&last);
        pieces.push(a);
        pieces.push(b);
    }
    let face = base.find_side(&pieces[1], Sign::Pos).unwrap().0;
    let strip = attach_strip(&mut base, &pieces[0], &pieces[2])?;
    let direct = TransversePath::within(&face, &pieces[1], &pieces[3]);
    let over = TransversePath {
        start: pieces[1].clone(),
        end: pieces[3].clone(),
        faces: vec![face.clone(), strip.face.clone(), face],
        crossings: vec![strip.p_seam.clone(), strip.q_seam.clone()],
    };
    let fam = match sign {
        BypassSign::Positive => Family::Alpha,
        BypassSign::Negative => Family::Beta,
    };
    // The second path crosses the band seams, which check_path would refuse.
    two_handle_core(&base, &pieces[1], &pieces[3], &direct, &over, fam)
}

fn two_handle_core(
    d: &Diagram,
    p: &str,
    q: &str,
    first: &TransversePath,
    second: &TransversePath,
    fam: Family,
) -> Result<TwoHandle> {
    let mut out = d.clone();
    let strip = attach_strip(&mut out, p, q)?;
    let mut ins = Inserter::new(&mut out);
    let route = |path: &TransversePath, start: &str, end: &str| {
        let mut hops = vec![Hop::new(start)];
        hops.extend(path.crossings.iter().map(Hop::new));
        hops.push(Hop::new(end));
        let mut faces = path.faces.clone();
        faces.push(strip.face.clone());
        (hops, faces)
    };
    let (hops, faces) = route(first, &strip.p_seam, &strip.q_seam);
    let c1 = ins.closed_curve(fam, &hops, &faces)?;
    let pa = ins.splits[&strip.p_seam].1.clone();
    let qa = ins.splits[&strip.q_seam].1.clone();
    ins.crossable = ins.d.curves(fam)[&c1].segments.iter().cloned().collect();
    let (hops, faces) = route(second, &pa, &qa);
    let c2 = ins.closed_curve(fam.other(), &hops, &faces)?;
    let in_strip: Vec<String> = ins.auto.iter().filter(|(_, a)| *a == strip.face).map(|(v, _)| v.clone()).collect();
    let extra: Vec<String> = ins.auto.iter().filter(|(_, a)| *a != strip.face).map(|(v, _)| v.clone()).collect();
    if in_strip.len() != 1 {
        return reject(format!("expected one crossing inside the strip, found {}", in_strip.len()));
    }
    out.tidy();
    check_valid(&out)?;
    let (alpha, beta) = match fam {
        Family::Alpha => (c1, c2),
        Family::Beta => (c2, c1),
    };
    Ok(TwoHandle {
        diagram: out,
        x0: in_strip[0].clone(),
        alpha,
        beta,
        extra,
    })
}

/// Removes an alpha/beta pair meeting exactly once and nothing else, by
/// compressing the surface along the alpha curve and erasing both curves.
/// Returns the new diagram and the deleted intersection point.
pub fn trivial_destabilize(d: &Diagram, alpha: &str, beta: &str) -> Result<(Diagram, String)> {
    let a = d.curve(Family::Alpha, alpha)?.clone();
    let b = d.curve(Family::Beta, beta)?.clone();
    if !a.closed || !b.closed {
        return reject("only closed curves can be destabilized");
    }
    let points = d.intersection_points();
    let on = |c: &super::Curve| -> BTreeSet<String> {
        d.curve_vertices(c).into_iter().filter(|v| points.contains(v)).collect()
    };
    let (pa, pb) = (on(&a), on(&b));
    if pa.len() != 1 || pa != pb {
        return reject(format!("{alpha} and {beta} must meet exactly once and meet nothing else"));
    }
    let c = pa.into_iter().next().unwrap();

    let mut out = d.clone();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for seg in &a.segments {
        let old = out.edges.remove(seg).unwrap();
        let l = out.fresh("s");
        out.edges.insert(
            l.clone(),
            super::Edge {
                kind: EdgeKind::Seam,
                curve: None,
                ..old.clone()
            },
        );
        let r = out.fresh("s");
        out.edges.insert(
            r.clone(),
            super::Edge {
                kind: EdgeKind::Seam,
                curve: None,
                ..old
            },
        );
        for f in out.faces.values_mut() {
            for s in &mut f.boundary {
                if s.edge == *seg {
                    s.edge = if s.sign == Sign::Pos { l.clone() } else { r.clone() };
                }
            }
        }
        left.push(l);
        right.push(r);
    }
    let cap_l = out.fresh("f");
    out.faces.insert(
        cap_l,
        Face {
            boundary: left.iter().rev().map(|e| Side::neg(e.clone())).collect(),
            suture: false,
        },
    );
    let cap_r = out.fresh("f");
    out.faces.insert(
        cap_r,
        Face {
            boundary: right.iter().map(|e| Side::pos(e.clone())).collect(),
            suture: false,
        },
    );
    out.alpha_curves.remove(alpha);
    out.split_pinched_vertices();
    for seg in &b.segments {
        let e = out.edges.get_mut(seg).unwrap();
        e.kind = EdgeKind::Seam;
        e.curve = None;
    }
    out.beta_curves.remove(beta);
    if let Some(eh) = &mut out.tags.eh {
        eh.remove(&c);
    }
    out.tags.marks.retain(|_, v| *v != c);
    out.tidy();
    check_valid(&out)?;
    Ok((out, c))
}
