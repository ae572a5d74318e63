use super::*;
use crate::catalog;
use crate::exactlin::BitVector;
use crate::surface::BypassSign;

fn g(pts: &[&str]) -> Generator {
    Generator::new(pts.iter().copied())
}

fn two(d: &Diagram) -> HandleSpec {
    HandleSpec::standard("two", d).unwrap()
}

#[test]
fn sigma_one_is_the_identity_on_the_disk() {
    let d = catalog::disk();
    let s = sigma_map(&d, &HandleSpec::standard("one", &d).unwrap()).unwrap();
    assert_eq!(s.x0, None);
    assert_eq!(s.table.lines(), vec!["∅ ↦ ∅"]);
}

#[test]
fn sigma_two_adds_x0() {
    let d = catalog::disk();
    let s = sigma_map(&d, &two(&d)).unwrap();
    let x0 = s.x0.clone().unwrap();
    assert_eq!(s.table.as_sets(), vec![(g(&[]), [g(&[&x0])].into())]);
    assert!(s.table.is_chain_map());
}

#[test]
fn tau_is_an_isomorphism() {
    for d in [catalog::disk(), catalog::stab()] {
        for sign in [BypassSign::Positive, BypassSign::Negative] {
            let s = sigma_map(&d, &HandleSpec::Bypass { site: "d1".into(), sign }).unwrap();
            assert!(s.table.is_isomorphism(), "{sign:?}: {:?}", s.table.lines());
        }
    }
    let d = catalog::stab();
    let s = sigma_map(&d, &HandleSpec::standard("bypass+", &d).unwrap()).unwrap();
    let x0 = s.x0.clone().unwrap();
    assert_eq!(s.table.lines(), vec![format!("{{c}} ↦ {}", g(&["c", &x0]))]);
}

#[test]
fn one_handle_join_adds_nothing_in_the_middle() {
    let v = local::one_handle_v(&catalog::disk(), "d0", "d2").unwrap();
    let j = elementary_join(&catalog::handle1_u(), &catalog::cap1(), &v, &catalog::az1()).unwrap();
    assert_eq!(j.middle, None);
    assert_eq!(j.table.lines(), vec!["{U:e} ↦ {U:e}"]);
}

#[test]
fn two_handle_join_lands_on_z3() {
    for d in [catalog::disk(), catalog::stab()] {
        let v = local::two_handle_v(&d, "d0", "d2", &TransversePath::within("F", "d0", "d2"), &TransversePath::within("F", "d0", "d2")).unwrap();
        let j = elementary_join(&catalog::handle2_u(), &catalog::cap2(), &v.diagram, &catalog::az2()).unwrap();
        let z3 = j.middle.clone().unwrap();
        assert_eq!(z3, "A:z3");
        assert_eq!(j.h4.tags.marks.get("ι2∨"), Some(&z3));
        for (x, ys) in j.table.as_sets() {
            let mut want = x.clone();
            want.points.retain(|p| !p.starts_with(W_PREFIX) && !p.starts_with(W_DUAL_PREFIX));
            want.points.insert(z3.clone());
            assert_eq!(ys, [want].into());
        }
    }
}

#[test]
fn non_elementary_cap_is_rejected() {
    let v = local::one_handle_v(&catalog::disk(), "d0", "d2").unwrap();
    let r = elementary_join(&catalog::handle1_u(), &catalog::handle2_u(), &v, &catalog::az1());
    assert!(matches!(r, Err(GlueError::Rejected(_))), "{r:?}");
}

#[test]
fn one_handle_pipeline_matches_sigma() {
    for d in [catalog::disk(), catalog::stab()] {
        let before = stage_complex("base", &d).unwrap().homology().total;
        let r = glue_one_handle(&d, "d0", "d2").unwrap();
        assert!(r.tables_agree(), "{:?} vs {:?}", r.psi.lines(), r.sigma.table.lines());
        assert!(r.diagrams_agree());
        assert_eq!(r.forced, "U:e");
        assert_eq!(r.psi.target.homology().total, before);
    }
}

#[test]
fn two_handle_pipeline() {
    for d in [catalog::disk(), catalog::stab()] {
        let r = glue_two_handle(&d, &two(&d)).unwrap();
        assert!(r.identity.holds(), "{:?}", r.identity);
        assert_eq!(r.identity.cycles, 1);
        assert!(r.ranks_agree(), "{:?}", r.ranks);
        assert_eq!(r.ranks[0], stage_complex("base", &d).unwrap().homology().total);
        let y0 = r.prepared.y0.clone();
        for (y, img) in r.psi.as_sets() {
            let want = with_points(&y, &["U:c", "A:z3", &y0]);
            assert_eq!(img, [want].into());
        }
    }
}

#[test]
fn join_sends_eh_to_c_z3_y0_eh() {
    let d = catalog::stab();
    let r = glue_two_handle(&d, &two(&d)).unwrap();
    let eh = Generator {
        points: d.tags.eh.clone().unwrap(),
    };
    let img = r.psi.image_of(&eh).unwrap();
    assert_eq!(img, vec![&with_points(&eh, &["U:c", "A:z3", &r.prepared.y0])]);
}

#[test]
fn prepared_h3_has_the_marked_points() {
    let d = catalog::disk();
    let a = TransversePath::within("F", "d0", "d2");
    let p = prepare_two_handle(&d, "d0", "d2", &a, &a).unwrap();
    let c = stage_complex("H3", &p.h3).unwrap();
    assert_eq!(c.homology().total, 1);
    assert!(c.basis.contains(&g(&[&p.w_dual, &p.y0])));
    assert_eq!(p.h3.tags.marks.get("x0"), Some(&p.v.x0));
}

#[test]
fn eh_transport() {
    let d = catalog::stab();
    let s = sigma_map(&d, &two(&d)).unwrap();
    let x0 = s.x0.clone().unwrap();
    assert_eq!(eh_generator(&d, &[s.clone()]).unwrap(), g(&["c", &x0]));
    let t = sigma_map(&s.diagram, &two(&s.diagram)).unwrap();
    let grown = eh_generator(&d, &[s.clone(), t]).unwrap();
    assert_eq!(grown.points.len(), 3);
    assert_eq!(eh_generator(&catalog::disk(), &[]).unwrap(), g(&[]));

    let mut wrong = s.clone();
    wrong.x0 = Some("c".into());
    assert!(eh_generator(&d, &[wrong]).is_err());
    assert!(eh_generator(&catalog::bigon_pair(), &[]).is_err());
}

#[test]
fn type_d_map_reproduces_the_join() {
    let d = catalog::disk();
    let r = glue_two_handle(&d, &two(&d)).unwrap();
    let x = g(&["U:c", "W:w"]);
    let phi = type_d_gluing_map(&catalog::handle2_u(), &catalog::cap2(), &r.prepared.v.diagram, &catalog::az2(), &x).unwrap();
    let y0 = r.prepared.y0.clone();
    let into = ChainMapTable::from_fn("into H3", r.psi.source.clone(), phi.source.clone(), |y| {
        vec![with_points(y, &[&r.prepared.w_dual, &y0])]
    })
    .unwrap();
    assert_eq!(into.then(&phi).unwrap().as_sets(), r.psi.as_sets());

    let v = local::one_handle_v(&d, "d0", "d2").unwrap();
    let phi = type_d_gluing_map(&catalog::handle1_u(), &catalog::cap1(), &v, &catalog::az1(), &g(&["U:e"])).unwrap();
    assert_eq!(phi.lines(), vec!["∅ ↦ {U:e}"]);
    assert!(type_d_gluing_map(&catalog::handle1_u(), &catalog::cap1(), &v, &catalog::az1(), &g(&["nope"])).is_err());
}

fn plan(d: &Diagram, kinds: &[&str]) -> Vec<HandleSpec> {
    let mut cur = d.clone();
    let mut out = Vec::new();
    for k in kinds {
        let h = HandleSpec::standard(k, &cur).unwrap();
        cur = sigma_map(&cur, &h).unwrap().diagram;
        out.push(h);
    }
    out
}

#[test]
fn routes_agree_on_the_catalog() {
    let seqs: [&[&str]; 6] = [
        &["one"],
        &["two"],
        &["bypass+"],
        &["one", "two"],
        &["bypass+", "two"],
        &["two", "bypass-"],
    ];
    let mut pairs = 0;
    for d in [catalog::disk(), catalog::stab()] {
        for s in seqs {
            let r = equivalence_report(&d, &plan(&d, s), &ReportOptions::default());
            assert!(r.passed(), "{s:?}\n{}", r.text());
            assert!(r.stages.iter().all(|st| st.eh_sigma_nonzero));
            pairs += 1;
        }
    }
    assert!(pairs >= 10);
}

#[test]
fn wrong_x0_is_flagged() {
    let d = catalog::stab();
    let r = equivalence_report(&d, &plan(&d, &["two"]), &ReportOptions { wrong_x0: true });
    assert!(!r.passed());
    assert!(r.failures.iter().any(|f| f.contains("EH tag")), "{:?}", r.failures);
}

#[test]
fn report_text_is_stable() {
    let d = catalog::disk();
    let h = plan(&d, &["one", "two"]);
    let a = equivalence_report(&d, &h, &ReportOptions::default()).text();
    let b = equivalence_report(&d, &h, &ReportOptions::default()).text();
    assert_eq!(a, b);
    assert!(a.contains("H5 identity holds"));
    assert!(a.ends_with("result: pass\n"));
}

#[test]
fn sliding_the_feet_keeps_rank_and_eh() {
    let d = catalog::stab();
    let mut seen = Vec::new();
    for (p, q) in [("d0", "d2"), ("d1", "d3")] {
        let a = TransversePath::within("F", p, q);
        let s = sigma_map(&d, &HandleSpec::Two { p: p.into(), q: q.into(), a: a.clone(), b: a }).unwrap();
        let eh = eh_generator(&d, &[s.clone()]).unwrap();
        let j = s.table.target.index_of(&eh).unwrap();
        let v = BitVector::from_indices(s.table.target.len(), [j]);
        seen.push((s.table.target.homology().total, nonzero_class(&s.table.target, &v)));
    }
    assert_eq!(seen[0], seen[1]);
}

#[test]
fn tensor_of_complexes() {
    let d = catalog::bigon_pair();
    let c = stage_complex("b", &d).unwrap();
    let e = stage_complex("e", &with_prefix(&d, "B:")).unwrap();
    let t = tensor(&c, &e);
    assert_eq!(t.len(), 4);
    assert!(t.squares_to_zero());
    assert_eq!(t.homology().total, 4);
}
