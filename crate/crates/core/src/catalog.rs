//! Built-in fixture diagrams.

use crate::surface::builder::Builder;
use crate::surface::{concatenate, with_prefix, Diagram, Family, InterfaceSide, Result, SurfaceError};

/// A disk with one suture face, no curves and four boundary edges `d0..d3`.
pub fn disk() -> Diagram {
    Builder::new()
        .boundary_loop("d", &["b0", "b1", "b2", "b3"])
        .face("F", &["d0+", "d1+", "d2+", "d3+"], true)
        .eh(&[])
        .build()
}

/// A punctured torus carrying one alpha and one beta curve that meet once
/// at `c`. The suture region is the single face, kept a disk by the seam `s`.
pub fn stab() -> Diagram {
    Builder::new()
        .curve(Family::Alpha, "alpha", true, &["c", "m"])
        .curve(Family::Beta, "beta", true, &["c"])
        .seam("s", "m", "h0")
        .boundary_loop("d", &["h0", "h1", "h2", "h3"])
        .face(
            "F",
            &[
                "alpha.0+", "s+", "d0+", "d1+", "d2+", "d3+", "s-", "alpha.1+", "beta.0+", "alpha.1-",
                "alpha.0-", "beta.0-",
            ],
            true,
        )
        .eh(&["c"])
        .mark("c", "c")
        .eh(&["c"])
        .build()
}

/// An annulus whose core is carried by an alpha and a beta curve meeting at
/// `x` and `y`, cutting out two bigons `B1` and `B2`.
pub fn bigon_pair() -> Diagram {
    Builder::new()
        .curve(Family::Alpha, "alpha", true, &["x", "y"])
        .curve(Family::Beta, "beta", true, &["x", "mo", "y", "mi"])
        .seam("so", "mo", "o0")
        .seam("si", "mi", "i0")
        .boundary_loop("ob", &["o0", "o1", "o2", "o3"])
        .boundary_loop("ib", &["i0", "i1", "i2", "i3"])
        .face("B1", &["beta.0+", "beta.1+", "alpha.0-"], false)
        .face("B2", &["alpha.1+", "beta.3-", "beta.2-"], false)
        .face(
            "O",
            &["so+", "ob0+", "ob1+", "ob2+", "ob3+", "so-", "beta.0-", "alpha.1-", "beta.1-"],
            true,
        )
        .face(
            "I",
            &["alpha.0+", "beta.2+", "si+", "ib0+", "ib1+", "ib2+", "ib3+", "si-", "beta.3+"],
            true,
        )
        .mark("x", "x")
        .mark("y", "y")
        .build()
}

/// The one-handle identity piece: two disks, each carrying one interval of
/// a left interface `L` and one of a right interface `R`. No curves.
pub fn az1() -> Diagram {
    Builder::new()
        .boundary("l1", "a0", "a1")
        .boundary("sa", "a1", "a2")
        .boundary("r1", "a2", "a3")
        .boundary("sb", "a3", "a0")
        .boundary("l2", "b0", "b1")
        .boundary("sc", "b1", "b2")
        .boundary("r2", "b2", "b3")
        .boundary("sd", "b3", "b0")
        .face("A", &["l1+", "sa+", "r1+", "sb+"], true)
        .face("B", &["l2+", "sc+", "r2+", "sd+"], true)
        .interface("L", InterfaceSide::Left, Family::Beta, &[&["l1"], &["l2"]])
        .interface("R", InterfaceSide::Right, Family::Alpha, &[&["r1"], &["r2"]])
        .eh(&[])
        .build()
}

/// The two-handle identity piece: an annulus with beta arcs `b1`, `b2`
/// ending on the left interface and alpha arcs `a1`, `a2` ending on the
/// right one. Its five intersection points are marked `z1..z5` and also by
/// the algebra element they are dual to.
pub fn az2() -> Diagram {
    Builder::new()
        .boundary("l1.0", "l1s", "P_L")
        .boundary("l1.1", "P_L", "Q_L")
        .boundary("l1.2", "Q_L", "R_L")
        .boundary("l1.3", "R_L", "l1e")
        .boundary("l2.0", "l2s", "S_L")
        .boundary("l2.1", "S_L", "l2e")
        .boundary("r1.0", "r1s", "P_R")
        .boundary("r1.1", "P_R", "Q_R")
        .boundary("r1.2", "Q_R", "R_R")
        .boundary("r1.3", "R_R", "r1e")
        .boundary("r2.0", "r2s", "S_R")
        .boundary("r2.1", "S_R", "r2e")
        .boundary("s1", "r1e", "l1s")
        .boundary("s2", "l1e", "r1s")
        .boundary("sx", "l2e", "r2s")
        .boundary("sy", "r2e", "l2s")
        .curve(Family::Beta, "b2", false, &["P_L", "z1", "z2", "z3", "R_L"])
        .curve(Family::Beta, "b1", false, &["Q_L", "z4", "z5", "S_L"])
        .curve(Family::Alpha, "a2", false, &["P_R", "z3", "z4", "z1", "R_R"])
        .curve(Family::Alpha, "a1", false, &["Q_R", "z2", "z5", "S_R"])
        .face("D1", &["l1.1+", "b1.0+", "a2.2+", "b2.0-"], false)
        .face("D2", &["l1.2+", "b2.3-", "a2.1+", "b1.0-"], false)
        .face("D3", &["a2.2-", "b1.1+", "a1.1-", "b2.1-"], false)
        .face("D4", &["r1.2+", "a2.3-", "b2.1+", "a1.0-"], false)
        .face("D5", &["r1.1+", "a1.0+", "b2.2+", "a2.0-"], false)
        .face(
            "X",
            &["b1.1-", "a2.1-", "b2.2-", "a1.1+", "b1.2+", "l2.1+", "sx+", "r2.0+", "a1.2-"],
            true,
        )
        .face("Y", &["l2.0+", "b1.2-", "a1.2+", "r2.1+", "sy+"], true)
        .face("S1", &["l1.0+", "b2.0+", "a2.3+", "r1.3+", "s1+"], true)
        .face("S2", &["r1.0+", "a2.0+", "b2.3+", "l1.3+", "s2+"], true)
        .interface("L", InterfaceSide::Left, Family::Beta, &[&["l1.0", "l1.1", "l1.2", "l1.3"], &["l2.0", "l2.1"]])
        .interface("R", InterfaceSide::Right, Family::Alpha, &[&["r1.0", "r1.1", "r1.2", "r1.3"], &["r2.0", "r2.1"]])
        .mark("z1", "z1")
        .mark("z2", "z2")
        .mark("z3", "z3")
        .mark("z4", "z4")
        .mark("z5", "z5")
        .mark("ρ12∨", "z1")
        .mark("ρ1∨", "z2")
        .mark("ι2∨", "z3")
        .mark("ρ2∨", "z4")
        .mark("ι1∨", "z5")
        .build()
}

/// The 1-handle piece U: a punctured torus carrying a stabilizing pair that
/// meets once at `e`, with a two-interval interface `U` on its boundary.
pub fn handle1_u() -> Diagram {
    Builder::new()
        .curve(Family::Alpha, "alpha", true, &["e", "m"])
        .curve(Family::Beta, "beta", true, &["e"])
        .seam("s", "m", "h0")
        .boundary_loop("d", &["h0", "h1", "h2", "h3"])
        .face(
            "F",
            &[
                "alpha.0+", "s+", "d0+", "d1+", "d2+", "d3+", "s-", "alpha.1+", "beta.0+", "alpha.1-",
                "alpha.0-", "beta.0-",
            ],
            true,
        )
        .interface("U", InterfaceSide::Right, Family::Beta, &[&["d0"], &["d2"]])
        .mark("e", "e")
        .eh(&["e"])
        .build()
}

/// The 1-handle cap W: two curve-free disks, each carrying one interval.
pub fn cap1() -> Diagram {
    Builder::new()
        .boundary("w1", "a0", "a1")
        .boundary("g1", "a1", "a0")
        .boundary("w2", "b0", "b1")
        .boundary("g2", "b1", "b0")
        .face("A", &["w1+", "g1+"], true)
        .face("B", &["w2+", "g2+"], true)
        .interface("W", InterfaceSide::Left, Family::Beta, &[&["w1"], &["w2"]])
        .eh(&[])
        .build()
}

/// The 2-handle piece U: an annulus. Beta arc `u2` runs around the inner
/// hole, `u1` runs from the middle marked point to the inner interval. The
/// alpha core circle meets `u1` once at `c` and the two legs of `u2` at
/// `c1`, `c2`.
pub fn handle2_u() -> Diagram {
    Builder::new()
        .boundary("i1.0", "ws", "X1")
        .boundary("i1.1", "X1", "X2")
        .boundary("i1.2", "X2", "X3")
        .boundary("i1.3", "X3", "we")
        .boundary("go", "we", "ws")
        .boundary("i2.0", "vs", "X4")
        .boundary("i2.1", "X4", "ve")
        .boundary("gi", "ve", "vs")
        .curve(Family::Beta, "u2", false, &["X1", "c1", "c2", "X3"])
        .curve(Family::Beta, "u1", false, &["X2", "c", "X4"])
        .curve(Family::Alpha, "ac", true, &["c1", "c", "c2"])
        .face("O", &["i1.3+", "go+", "i1.0+", "u2.0+", "ac.2-", "u2.2+"], true)
        .face("Ml", &["i1.1+", "u1.0+", "ac.0-", "u2.0-"], false)
        .face("Mr", &["i1.2+", "u2.2-", "ac.1-", "u1.0-"], false)
        .face("A", &["ac.2+", "u2.1+"], false)
        .face("B", &["ac.0+", "u1.1+", "i2.1+", "gi+", "i2.0+", "u1.1-", "ac.1+", "u2.1-"], true)
        .interface("U", InterfaceSide::Right, Family::Beta, &[&["i1.0", "i1.1", "i1.2", "i1.3"], &["i2.0", "i2.1"]])
        .mark("c", "c")
        .eh(&["c"])
        .build()
}

/// The 2-handle cap W: a punctured torus. Beta arc `w2` runs over the
/// handle and meets the alpha curve once, at `w`; `w1` meets nothing.
pub fn cap2() -> Diagram {
    Builder::new()
        .boundary("i1.0", "ws", "X1")
        .boundary("i1.1", "X1", "X2")
        .boundary("i1.2", "X2", "X3")
        .boundary("i1.3", "X3", "we")
        .boundary("g1", "we", "vs")
        .boundary("i2.0", "vs", "X4")
        .boundary("i2.1", "X4", "ve")
        .boundary("g2", "ve", "ws")
        .curve(Family::Beta, "w2", false, &["X1", "w", "X3"])
        .curve(Family::Beta, "w1", false, &["X2", "X4"])
        .curve(Family::Alpha, "aw", true, &["w"])
        .face("F", &["i1.2+", "w2.1-", "aw.0+", "w2.1+", "i1.3+", "g1+", "i2.0+", "w1.0-"], true)
        .face("G", &["w2.0-", "i1.1+", "w1.0+", "i2.1+", "g2+", "i1.0+", "w2.0+", "aw.0-"], true)
        .interface("W", InterfaceSide::Left, Family::Beta, &[&["i1.0", "i1.1", "i1.2", "i1.3"], &["i2.0", "i2.1"]])
        .mark("w", "w")
        .eh(&["w"])
        .build()
}

/// The right half of the two-handle identity piece with its beta arc closed
/// up: an annulus whose beta circle meets `a2` at `z1`, `z3` (cutting off a
/// bigon) and `a1` at `z2`.
pub fn two_handle_slice() -> Diagram {
    Builder::new()
        .boundary("r1.0", "r1s", "P_R")
        .boundary("r1.1", "P_R", "Q_R")
        .boundary("r1.2", "Q_R", "R_R")
        .boundary("r1.3", "R_R", "r1e")
        .boundary("sr1", "r1e", "r1s")
        .boundary("r2.0", "r2s", "S_R")
        .boundary("r2.1", "S_R", "r2e")
        .boundary("sr2", "r2e", "r2s")
        .curve(Family::Beta, "B", true, &["z1", "z2", "z3"])
        .curve(Family::Alpha, "a2", false, &["P_R", "z3", "z1", "R_R"])
        .curve(Family::Alpha, "a1", false, &["Q_R", "z2", "S_R"])
        .face("D4", &["r1.2+", "a2.2-", "B.0+", "a1.0-"], false)
        .face("D5", &["r1.1+", "a1.0+", "B.1+", "a2.0-"], false)
        .face("G", &["a2.1+", "B.2-"], false)
        .face("H", &["B.0-", "a2.1-", "B.1-", "a1.1+", "r2.1+", "sr2+", "r2.0+", "a1.1-"], true)
        .face("K", &["a2.0+", "B.2+", "a2.2+", "r1.3+", "sr1+", "r1.0+"], true)
        .interface("R", InterfaceSide::Right, Family::Alpha, &[&["r1.0", "r1.1", "r1.2", "r1.3"], &["r2.0", "r2.1"]])
        .mark("z1", "z1")
        .mark("z2", "z2")
        .mark("z3", "z3")
        .build()
}

/// Two overlapping circles in a disk. Not admissible: the lens plus
/// the alpha lune is a nonnegative periodic domain.
pub fn two_circles() -> Diagram {
    Builder::new()
        .curve(Family::Alpha, "a", true, &["p", "q"])
        .curve(Family::Beta, "b", true, &["p", "q", "m"])
        .seam("s", "m", "h0")
        .boundary_loop("d", &["h0", "h1"])
        .face("L", &["a.0-", "b.0+"], false)
        .face("A", &["a.1-", "b.0-"], false)
        .face("B", &["a.0+", "b.1+", "b.2+"], false)
        .face("O", &["a.1+", "b.2-", "s+", "d0+", "d1+", "s-", "b.1-"], true)
        .build()
}

/// The 1-handle piece glued to its cap, ids prefixed `U:` and `W:`.
pub fn handle1_uw() -> Diagram {
    glued(&handle1_u(), &cap1())
}

/// The 2-handle piece glued to its cap. Its one generator is `{U:c, W:w}`.
pub fn handle2_uw() -> Diagram {
    glued(&handle2_u(), &cap2())
}

fn glued(u: &Diagram, w: &Diagram) -> Diagram {
    concatenate(&with_prefix(u, "U:"), "U", &with_prefix(w, "W:"), "W").expect("handle pieces glue")
}

/// Bordered pieces by name.
pub fn builtin_piece(name: &str) -> Result<Diagram> {
    Ok(match name {
        "AZ1" => az1(),
        "AZ2" => az2(),
        "handle1_UW" => handle1_uw(),
        "handle2_UW" => handle2_uw(),
        "handle1_U" => handle1_u(),
        "handle2_U" => handle2_u(),
        "cap1" => cap1(),
        "cap2" => cap2(),
        "slice" => two_handle_slice(),
        _ => return Err(SurfaceError::Rejected(format!("unknown piece {name}"))),
    })
}

/// Every named fixture, in a stable order.
pub const NAMES: [&str; 13] = [
    "disk", "stab", "bigon_pair", "two_circles", "AZ1", "AZ2", "handle1_U", "handle2_U", "cap1", "cap2", "handle1_UW",
    "handle2_UW", "slice",
];

/// A fixture or piece by name.
pub fn fixture(name: &str) -> Result<Diagram> {
    match name {
        "disk" => Ok(disk()),
        "stab" => Ok(stab()),
        "bigon_pair" => Ok(bigon_pair()),
        "two_circles" => Ok(two_circles()),
        _ => builtin_piece(name),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sfc::{differential, Generator};
    use crate::surface::validate;

    #[test]
    fn every_fixture_validates() {
        for n in NAMES {
            let d = fixture(n).unwrap();
            assert!(validate(&d).is_empty(), "{n}: {:?}", validate(&d));
        }
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn pieces_have_the_stated_points() {
        assert!(az1().intersection_points().is_empty());
        let z: Vec<String> = az2().intersection_points().into_iter().collect();
        assert_eq!(z, ["z1", "z2", "z3", "z4", "z5"]);
        let c = differential(&handle2_uw()).unwrap();
        assert_eq!(c.basis, vec![Generator::new(["U:c", "W:w"])]);
        let c = differential(&handle1_uw()).unwrap();
        assert_eq!(c.basis, vec![Generator::new(["U:e"])]);
    }

    #[test]
    fn gluing_keeps_every_intersection_point() {
        let count = |d: &Diagram| d.intersection_points().len();
        let cases = [
            (with_prefix(&handle1_u(), "U:"), "U", with_prefix(&cap1(), "W:"), "W"),
            (with_prefix(&handle2_u(), "U:"), "U", with_prefix(&cap2(), "W:"), "W"),
            (with_prefix(&handle2_u(), "U:"), "U", with_prefix(&az2(), "A:"), "L"),
            (with_prefix(&handle1_u(), "U:"), "U", with_prefix(&az1(), "A:"), "L"),
        ];
        for (a, ia, b, ib) in cases {
            let g = concatenate(&a, ia, &b, ib).unwrap();
            assert_eq!(count(&g), count(&a) + count(&b));
            assert!(validate(&g).is_empty());
        }
    }
}
