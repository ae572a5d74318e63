use super::*;
use crate::catalog;
use crate::surface::builder::Builder;
use crate::surface::{attach_trivial_bypass, attach_two_handle, BypassSign, TransversePath};

fn g(pts: &[&str]) -> Generator {
    Generator::new(pts.iter().copied())
}

#[test]
fn disk_has_one_empty_generator() {
    let d = catalog::disk();
    assert_eq!(generators(&d), vec![g(&[])]);
    let c = differential(&d).unwrap();
    assert!(c.differential.is_zero());
    assert_eq!(c.homology().total, 1);
    assert_eq!(is_admissible(&d), (true, None));
}

#[test]
fn stab_is_rank_one() {
    let d = catalog::stab();
    assert_eq!(generators(&d), vec![g(&["c"])]);
    assert!(is_nice(&d).0);
    assert_eq!(homology(&d).unwrap().total, 1);
}

#[test]
fn bigon_pair_cancels_nothing() {
    let d = catalog::bigon_pair();
    assert_eq!(generators(&d), vec![g(&["x"]), g(&["y"])]);
    let doms = domains(&d);
    assert_eq!(doms.len(), 2, "{doms:#?}");
    // Both bigons run from x to y under the traversal convention.
    for dom in &doms {
        assert_eq!(dom.x, BTreeSet::from(["x".to_string()]));
        assert_eq!(dom.y, BTreeSet::from(["y".to_string()]));
        assert_eq!(dom.faces.len(), 1);
    }
    let c = differential(&d).unwrap();
    assert!(c.differential.is_zero());
    assert_eq!(c.spinc, vec![0, 0]);
    assert_eq!(c.homology().total, 2);
}

#[test]
fn hexagon_is_not_nice() {
    let d = Builder::new()
        .curve(Family::Alpha, "a", true, &["p", "q", "r"])
        .curve(Family::Beta, "b", true, &["p", "u", "q", "v", "r", "w"])
        .build();
    let faces = d.faces.clone();
    assert!(faces.is_empty());
    let mut h = d;
    h.faces.insert(
        "H".into(),
        crate::surface::Face {
            boundary: ["a.0+", "a.1+", "a.2+"]
                .iter()
                .map(|t| crate::surface::Side::pos(&t[..3]))
                .collect(),
            suture: false,
        },
    );
    let (ok, bad) = is_nice(&h);
    assert!(!ok);
    assert_eq!(bad, vec!["H".to_string()]);
}

#[test]
fn two_circles_are_inadmissible() {
    let d = crate::catalog::two_circles();
    assert!(crate::surface::validate(&d).is_empty(), "{:#?}", crate::surface::validate(&d));
    assert!(is_nice(&d).0);
    let (ok, w) = is_admissible(&d);
    assert!(!ok);
    let w = w.unwrap();
    let total: i128 = w.values().sum();
    assert!(w.values().all(|&c| c > 0) && total >= 2, "{w:?}");
    assert!(matches!(differential(&d), Err(SfcError::NotAdmissible(_))));
}

#[test]
fn two_handle_on_disk_is_rank_two() {
    let d = catalog::disk();
    let a = TransversePath::within("F", "d0", "d2");
    let h = attach_two_handle(&d, "d0", "d2", &a, &a).unwrap();
    let c = complex_unchecked(&h.diagram);
    assert_eq!(c.len(), 2);
    assert!(c.squares_to_zero());
    assert!(c.respects_spinc());
}

#[test]
fn bypass_preserves_rank() {
    for d in [catalog::disk(), catalog::stab()] {
        let before = complex_unchecked(&d).homology().total;
        for sign in [BypassSign::Positive, BypassSign::Negative] {
            let h = attach_trivial_bypass(&d, "d1", sign).unwrap();
            let c = complex_unchecked(&h.diagram);
            assert!(c.squares_to_zero());
            assert!(c.respects_spinc());
            assert_eq!(c.homology().total, before, "{sign:?}: nice = {:?}", is_nice(&h.diagram));
        }
    }
}
