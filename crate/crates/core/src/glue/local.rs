//! Base-dependent local models V for handle gluing.
//!
//! For a 2-handle, V is the diagrammatic attachment with a notch cut into
//! the alpha curve next to `x0`: the alpha curve becomes an arc ending on
//! the boundary, whose notch carries the first interval of an alpha
//! interface. A new alpha arc runs from the middle of the notch across the
//! beta curve (at `y0`) to a suture edge carrying the second interval.
//! For a 1-handle, V is the base with one-edge intervals at the two feet.

use std::collections::BTreeSet;

use crate::surface::{
    attach_two_handle_ordered, reject, validate, ArcInterface, Curve, Diagram, EdgeKind, Family, InterfaceSide,
    Result, Side, Sign, SurfaceError, TransversePath, TwoHandle,
};

/// The interface name of the hole in V.
pub const V_INTERFACE: &str = "V";

#[derive(Clone, Debug)]
pub struct LocalV {
    pub diagram: Diagram,
    pub x0: String,
    pub y0: String,
    /// Alpha intersection points the paths forced outside the strip.
    pub extra: Vec<String>,
}

fn is_free_boundary(d: &Diagram, e: &str) -> bool {
    d.edges[e].kind == EdgeKind::Boundary && !d.interface_edges().contains(e)
}

/// Builds V for a 2-handle with feet `p`, `q`, alpha path `a`, beta path `b`.
pub fn two_handle_v(d: &Diagram, p: &str, q: &str, a: &TransversePath, b: &TransversePath) -> Result<LocalV> {
    let mut last = None;
    for (first, second, fam) in [(a, b, Family::Alpha), (b, a, Family::Beta)] {
        match local_v(attach_two_handle_ordered(d, p, q, first, second, fam)?) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Builds V from a handle already attached by the surface operations.
pub fn local_v(h: TwoHandle) -> Result<LocalV> {
    let mut last = reject("no corner at x0 leads to free boundary across beta");
    for (f, i) in corners(&h.diagram, &h.x0) {
        let notched = notch(&h, &f, i);
        for far in candidates(&notched.g, &notched.sh, &notched.hole) {
            match finish(&h, notched.clone(), &far) {
                Ok(v) => return Ok(v),
                Err(e) => last = Err(e),
            }
        }
    }
    last
}

/// The face holding a side, with its position.
fn locate(g: &Diagram, edge: &str, sign: Sign) -> Result<(String, usize)> {
    g.find_side(edge, sign)
        .ok_or_else(|| SurfaceError::Rejected(format!("side {edge} is missing")))
}

/// Cuts the face holding both sides by a new edge between the corners at
/// their starts. Fails when the sides lie on different faces.
fn cut(g: &mut Diagram, a: (&str, Sign), b: (&str, Sign), kind: EdgeKind, curve: Option<String>) -> Result<String> {
    let (fa, i) = locate(g, a.0, a.1)?;
    let (fb, j) = locate(g, b.0, b.1)?;
    if fa != fb || i == j {
        return reject(format!("{} and {} do not share a face", a.0, b.0));
    }
    Ok(g.split_face(&fa, i, j, kind, curve).0)
}

#[derive(Clone)]
struct Notched {
    g: Diagram,
    /// The gap of the hole, joined to the outer boundary later.
    sh: String,
    hole: [String; 4],
    /// Alpha edges on either side of the notch; `e2` starts the new arc.
    e2: String,
    /// Beta edge entering x0 with its sign in the corner face.
    sb: Side,
}

/// Corners at `x0` entered along beta and left along alpha.
fn corners(d: &Diagram, x0: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for (fid, f) in &d.faces {
        let n = f.boundary.len();
        for i in 0..n {
            if d.corner_vertex(f, i) != x0 {
                continue;
            }
            let sb = &f.boundary[(i + n - 1) % n];
            let sa = &f.boundary[i];
            if d.edges[&sb.edge].kind == EdgeKind::Beta && d.edges[&sa.edge].kind == EdgeKind::Alpha {
                out.push((fid.clone(), i));
            }
        }
    }
    out
}

/// Punches the hole: cuts the alpha edge leaving x0 at a new point and
/// opens it into a boundary circle carrying the first interval.
fn notch(h: &TwoHandle, f: &str, i: usize) -> Notched {
    let mut g = h.diagram.clone();
    let n = g.faces[f].boundary.len();
    let sb = g.faces[f].boundary[(i + n - 1) % n].clone();
    let sa = g.faces[f].boundary[i].clone();
    if sa.sign == Sign::Neg {
        g.reverse_curve(Family::Alpha, &h.alpha);
    }
    if sb.sign == Sign::Neg {
        g.reverse_curve(Family::Beta, &h.beta);
    }
    let sb = Side::pos(&sb.edge);
    let (hv, e1, e2) = g.split_edge(&sa.edge);
    g.vertices.remove(&hv);
    let [pp, qp, rp, is, ie] = ["P", "Q", "R", "hs", "he"].map(|s| g.add_vertex(&format!("{s}_V")));
    g.edges.get_mut(&e1).unwrap().to = pp.clone();
    g.edges.get_mut(&e2).unwrap().from = rp.clone();
    let bd = |g: &mut Diagram, u: &str, v: &str| g.add_edge("ib", EdgeKind::Boundary, None, u, v);
    let ib0 = bd(&mut g, &is, &pp);
    let ib1 = bd(&mut g, &pp, &qp);
    let ib2 = bd(&mut g, &qp, &rp);
    let ib3 = bd(&mut g, &rp, &ie);
    let sh = bd(&mut g, &ie, &is);
    // e1 now ends at P and e2 starts at R: the notch sits between them on
    // the corner side, the rest of the hole on the far side.
    let (fp, k) = g.find_side(&e1, Sign::Pos).unwrap();
    g.faces.get_mut(&fp).unwrap().boundary.splice(k + 1..k + 1, [Side::pos(&ib1), Side::pos(&ib2)]);
    let (fq, k) = g.find_side(&e1, Sign::Neg).unwrap();
    g.faces
        .get_mut(&fq)
        .unwrap()
        .boundary
        .splice(k..k, [Side::pos(&ib3), Side::pos(&sh), Side::pos(&ib0)]);
    Notched {
        g,
        sh,
        hole: [ib0, ib1, ib2, ib3],
        e2,
        sb,
    }
}

/// Free boundary edges that may end the bridge cut from the hole.
fn candidates(g: &Diagram, sh: &str, hole: &[String; 4]) -> Vec<String> {
    let Some((f, _)) = g.find_side(sh, Sign::Pos) else { return vec![] };
    g.faces[&f]
        .boundary
        .iter()
        .map(|s| s.edge.clone())
        .filter(|e| e != sh && !hole.contains(e) && is_free_boundary(g, e))
        .collect()
}

fn finish(h: &TwoHandle, n: Notched, far: &str) -> Result<LocalV> {
    let Notched { mut g, sh, hole, e2, sb } = n;
    // Join the hole to the outer boundary by cutting along an arc from the
    // hole's gap to a free boundary edge.
    let (_, _, shb) = g.split_edge(&sh);
    let (_, _, fb) = g.split_edge(far);
    let bridge = cut(&mut g, (&shb, Sign::Pos), (&fb, Sign::Pos), EdgeKind::Boundary, None)?;
    let (cf, ct) = (g.edges[&bridge].from.clone(), g.edges[&bridge].to.clone());
    let twin = g.add_edge("ib", EdgeKind::Boundary, None, &ct, &cf);
    let (side_face, k) = locate(&g, &bridge, Sign::Neg)?;
    g.faces.get_mut(&side_face).unwrap().boundary[k] = Side::pos(&twin);
    g.split_pinched_vertices();
    let alpha = g.alpha_curves.get_mut(&h.alpha).unwrap();
    let at = alpha.segments.iter().position(|s| *s == e2).unwrap();
    alpha.segments.rotate_left(at);
    alpha.closed = false;

    // The arc v1 from Q across beta at y0 to a free boundary edge.
    let [ib0, ib1, ib2, ib3] = hole;
    let (y0, t1, t2) = g.split_edge(&sb.edge);
    let v1 = g.fresh("v");
    let v1a = cut(&mut g, (&ib2, Sign::Pos), (&t2, Sign::Pos), EdgeKind::Alpha, Some(v1.clone()))?;
    let (gf, _) = locate(&g, &t1, Sign::Neg)?;
    let free: Vec<String> = g.faces[&gf]
        .boundary
        .iter()
        .map(|s| s.edge.clone())
        .filter(|e| is_free_boundary(&g, e) && ![&ib0, &ib1, &ib2, &ib3].contains(&e))
        .collect();
    let mut last = reject("no free boundary across beta from y0");
    for free in free {
        let mut g = g.clone();
        let (_, bda, bdb) = g.split_edge(&free);
        let v1b = match cut(&mut g, (&t1, Sign::Neg), (&bdb, Sign::Pos), EdgeKind::Alpha, Some(v1.clone())) {
            Ok(e) => e,
            Err(e) => {
                last = Err(e);
                continue;
            }
        };
        let ends: BTreeSet<&String> = [&g.edges[&ib0].from, &g.edges[&ib3].to, &g.edges[&bda].from, &g.edges[&bdb].to]
            .into_iter()
            .collect();
        if ends.len() != 4 {
            last = reject("the two intervals of V touch");
            continue;
        }
        g.alpha_curves.insert(
            v1.clone(),
            Curve {
                closed: false,
                segments: vec![v1a.clone(), v1b],
            },
        );
        g.arc_interfaces.push(ArcInterface {
            name: V_INTERFACE.into(),
            side: InterfaceSide::Left,
            family: Family::Alpha,
            intervals: vec![vec![ib0.clone(), ib1.clone(), ib2.clone(), ib3.clone()], vec![bda, bdb]],
        });
        g.tags.eh = None;
        g.tags.marks.insert("x0".into(), h.x0.clone());
        g.tags.marks.insert("y0".into(), y0.clone());
        g.recompute_suture_flags();
        g.tidy();
        let v = validate(&g);
        if !v.is_empty() {
            last = Err(SurfaceError::Invalid(v));
            continue;
        }
        if g.boundary_components().len() != h.diagram.boundary_components().len() {
            last = reject("the cut left the hole as a separate boundary component");
            continue;
        }
        return Ok(LocalV {
            diagram: g,
            x0: h.x0.clone(),
            y0,
            extra: h.extra.clone(),
        });
    }
    last
}

/// The 1-handle local model: the base with interface `V` on the middle
/// thirds of the feet, so that adjacent feet keep distinct endpoints.
pub fn one_handle_v(d: &Diagram, p: &str, q: &str) -> Result<Diagram> {
    for e in [p, q] {
        if !d.edges.contains_key(e) || !is_free_boundary(d, e) {
            return reject(format!("{e} is not a free boundary edge"));
        }
    }
    if p == q {
        return reject("the two feet must be different boundary edges");
    }
    let mut out = d.clone();
    let mut middle = |e: &str| {
        let (_, _, rest) = out.split_edge(e);
        out.split_edge(&rest).1
    };
    let intervals = vec![vec![middle(p)], vec![middle(q)]];
    out.arc_interfaces.push(ArcInterface {
        name: V_INTERFACE.into(),
        side: InterfaceSide::Left,
        family: Family::Alpha,
        intervals,
    });
    let v = validate(&out);
    if !v.is_empty() {
        return Err(SurfaceError::Invalid(v));
    }
    Ok(out)
}
