use super::*;
use crate::catalog;

fn clean(d: &Diagram) {
    let v = validate(d);
    assert!(v.is_empty(), "unexpected violations: {v:#?}");
}

#[test]
fn fixtures_validate() {
    for d in [catalog::disk(), catalog::stab(), catalog::bigon_pair()] {
        clean(&d);
    }
    assert_eq!(catalog::stab().euler_characteristic(), -1);
    assert_eq!(catalog::bigon_pair().euler_characteristic(), 0);
}

#[test]
fn degree_three_intersection_is_reported() {
    let mut d = catalog::stab();
    // Hang an extra beta spoke off the intersection point.
    d.edges.insert(
        "spur".into(),
        Edge {
            kind: EdgeKind::Beta,
            curve: Some("beta".into()),
            from: "c".into(),
            to: "m".into(),
        },
    );
    let v = validate(&d);
    assert!(v.iter().any(|x| x.ids.contains(&"c".to_string())), "{v:#?}");
}

#[test]
fn json_round_trip_is_byte_identical() {
    for d in [catalog::disk(), catalog::stab(), catalog::bigon_pair()] {
        let s = to_json(&d);
        let back = from_json(&s).unwrap();
        assert_eq!(to_json(&back), s);
    }
}

#[test]
fn canonical_form_ignores_labels() {
    let d = catalog::bigon_pair();
    let mut renamed = to_json(&d);
    for (a, b) in [("\"x\"", "\"X9\""), ("\"B1\"", "\"zz\""), ("beta.2", "q7")] {
        renamed = renamed.replace(a, b);
    }
    let r = from_json(&renamed).unwrap();
    assert_ne!(to_json(&r), to_json(&d));
    let c1 = canonical_form(&d);
    let mut c2 = canonical_form(&r);
    // mark names are semantic; the renamed mark points at a renamed vertex
    c2.tags = c1.tags.clone();
    assert_eq!(to_json(&c1), to_json(&c2));
}

#[test]
fn one_handle_on_disk_gives_annulus() {
    let d = catalog::disk();
    let a = attach_one_handle(&d, "d0", "d2").unwrap();
    clean(&a);
    assert_eq!(a.euler_characteristic(), 0);
    assert_eq!(a.boundary_components().len(), 2);
    assert!(a.faces.values().all(|f| f.suture));
}

#[test]
fn one_handles_commute_on_disjoint_feet() {
    let d = catalog::disk();
    let ab = attach_one_handle(&attach_one_handle(&d, "d0", "d2").unwrap(), "d1", "d3").unwrap();
    let ba = attach_one_handle(&attach_one_handle(&d, "d1", "d3").unwrap(), "d0", "d2").unwrap();
    assert_eq!(to_json(&canonical_form(&ab)), to_json(&canonical_form(&ba)));
}

#[test]
fn one_handle_rejects_bad_feet() {
    let d = catalog::bigon_pair();
    assert!(attach_one_handle(&d, "alpha.0", "ob0").is_err());
    assert!(attach_one_handle(&d, "ob0", "ob0").is_err());
}

#[test]
fn two_handle_on_disk() {
    let d = catalog::disk();
    let a = TransversePath::within("F", "d0", "d2");
    let b = TransversePath::within("F", "d0", "d2");
    let h = attach_two_handle(&d, "d0", "d2", &a, &b).unwrap();
    clean(&h.diagram);
    assert_eq!(h.diagram.euler_characteristic(), 0);
    // homologous cores of an annulus meet an even number of times
    assert_eq!(h.diagram.intersection_points().len(), 2);
    assert_eq!(h.extra.len(), 1);
}

#[test]
fn stab_two_handle() {
    let d = catalog::stab();
    let a = TransversePath::within("F", "d0", "d2");
    let b = TransversePath::within("F", "d0", "d2");
    let h = attach_two_handle(&d, "d0", "d2", &a, &b).unwrap();
    clean(&h.diagram);
    assert!(h.diagram.intersection_points().contains("c"));
}

#[test]
fn bypasses_isolate_x0() {
    for d in [catalog::disk(), catalog::stab()] {
        let site = "d1";
        for (sign, fam) in [(BypassSign::Positive, Family::Alpha), (BypassSign::Negative, Family::Beta)] {
            let h = attach_trivial_bypass(&d, site, sign).unwrap();
            clean(&h.diagram);
            let new = match fam {
                Family::Alpha => &h.alpha,
                Family::Beta => &h.beta,
            };
            let c = h.diagram.curve(fam, new).unwrap();
            let pts = h.diagram.intersection_points();
            let on: Vec<_> = h.diagram.curve_vertices(c).into_iter().filter(|v| pts.contains(v)).collect();
            assert_eq!(on, vec![h.x0.clone()], "{sign:?}");
            assert_eq!(h.diagram.euler_characteristic(), d.euler_characteristic() - 2);
        }
    }
}

#[test]
fn destabilizing_stab_gives_disk() {
    let (d, c) = trivial_destabilize(&catalog::stab(), "alpha", "beta").unwrap();
    assert_eq!(c, "c");
    clean(&d);
    let mut disk = catalog::disk();
    disk.tags = d.tags.clone();
    assert_eq!(to_json(&canonical_form(&d)), to_json(&canonical_form(&disk)));
}

#[test]
fn destabilize_rejects_pairs_meeting_twice() {
    assert!(trivial_destabilize(&catalog::bigon_pair(), "alpha", "beta").is_err());
}
