use super::*;
use proptest::prelude::*;

fn one(k: usize) -> Element {
    Element::from([k])
}

#[test]
fn z2_summand_ranks() {
    let a = StrandAlgebra::new(ArcDiagram::z2());
    assert_eq!(a.summand_ranks(), vec![1, 5, 3]);
    let z1 = StrandAlgebra::new(ArcDiagram::z1());
    assert_eq!(z1.summand_ranks(), vec![1]);
    assert_eq!(z1.name(0), "ι∅");
}

#[test]
fn z2_names() {
    let a = StrandAlgebra::new(ArcDiagram::z2());
    let names: Vec<String> = (0..a.dim()).map(|k| a.name(k)).collect();
    for n in ["ι∅", "ι1", "ι2", "ι12", "ρ1", "ρ2", "ρ12"] {
        assert!(names.contains(&n.to_string()), "{n} missing from {names:?}");
    }
    assert_eq!(a.chord("P", "Q").unwrap(), a.find_name("ρ1").unwrap());
    assert_eq!(a.chord("P", "R").unwrap(), a.find_name("ρ12").unwrap());
    assert!(a.chord("Q", "P").is_err());
    assert!(a.chord("P", "S").is_err());
}

/// The torus algebra by hand: ρ1ρ2 = ρ12 is the only nonzero product of
/// chords, with ρ1 = ι2ρ1ι1, ρ2 = ι1ρ2ι2, ρ12 = ι2ρ12ι2.
#[test]
fn z2_one_strand_table_matches_hand_oracle() {
    let a = StrandAlgebra::new(ArcDiagram::z2());
    let n = |s: &str| a.find_name(s).unwrap();
    let table: &[(&str, &str, Option<&str>)] = &[
        ("ρ1", "ρ2", Some("ρ12")),
        ("ρ2", "ρ1", None),
        ("ρ1", "ρ12", None),
        ("ρ12", "ρ1", None),
        ("ρ2", "ρ12", None),
        ("ρ12", "ρ2", None),
        ("ρ1", "ρ1", None),
        ("ρ2", "ρ2", None),
        ("ρ12", "ρ12", None),
        ("ι2", "ρ1", Some("ρ1")),
        ("ρ1", "ι1", Some("ρ1")),
        ("ι1", "ρ1", None),
        ("ι1", "ρ2", Some("ρ2")),
        ("ρ2", "ι2", Some("ρ2")),
        ("ι2", "ρ12", Some("ρ12")),
        ("ρ12", "ι2", Some("ρ12")),
        ("ι1", "ι1", Some("ι1")),
        ("ι1", "ι2", None),
    ];
    for &(x, y, want) in table {
        let got = a.mul_basis(n(x), n(y));
        let want = want.map(|w| one(n(w))).unwrap_or_default();
        assert_eq!(got, want, "{x}·{y}");
    }
    for k in 0..a.dim() {
        if a.basis[k].strands() < 2 {
            assert!(a.diff_basis(k).is_empty());
        }
    }
}

#[test]
fn z2_two_strand_differential() {
    let a = StrandAlgebra::new(ArcDiagram::z2());
    let two: Vec<usize> = (0..a.dim()).filter(|&k| a.basis[k].strands() == 2).collect();
    let mut nonzero = 0;
    for &k in &two {
        let d = a.diff_basis(k);
        if !d.is_empty() {
            nonzero += 1;
            assert_eq!(d.len(), 1);
        }
    }
    // ρ12 with a horizontal strand at Q resolves to ρ1 and ρ2 side by side.
    assert_eq!(nonzero, 1);
}

fn check_dga(a: &StrandAlgebra) {
    let n = a.dim();
    let table: Vec<Vec<Element>> = (0..n).map(|x| (0..n).map(|y| a.mul_basis(x, y)).collect()).collect();
    let d: Vec<Element> = (0..n).map(|x| a.diff_basis(x)).collect();
    let mul = |l: &Element, r: &Element| {
        let mut out = Element::new();
        for &x in l {
            for &y in r {
                for &z in &table[x][y] {
                    toggle(&mut out, z);
                }
            }
        }
        out
    };
    for x in 0..n {
        assert!(a.diff(&d[x]).is_empty(), "d² on {}", a.name(x));
        for y in 0..n {
            let lhs = a.diff(&table[x][y]);
            let mut rhs = mul(&d[x], &one(y));
            for z in mul(&one(x), &d[y]) {
                toggle(&mut rhs, z);
            }
            assert_eq!(lhs, rhs, "Leibniz on {}, {}", a.name(x), a.name(y));
            for z in 0..n {
                let l = mul(&table[x][y], &one(z));
                let r = mul(&one(x), &table[y][z]);
                assert_eq!(l, r, "associativity on {}, {}, {}", a.name(x), a.name(y), a.name(z));
            }
        }
    }
}

#[test]
fn z2_is_a_dga() {
    check_dga(&StrandAlgebra::new(ArcDiagram::z2()));
}

#[test]
fn reversal_keeps_ranks() {
    let z = ArcDiagram::z2();
    let r = z.reversed();
    assert_eq!(r.point_names(), vec!["R", "Q", "P", "S"]);
    assert_eq!(StrandAlgebra::new(r).summand_ranks(), vec![1, 5, 3]);
    assert_eq!(z.reversed().reversed().matching, z.matching);
}

/// The basis map A(Z) → A(−Z): positions flip inside each interval and
/// every moving strand runs the other way.
fn reversal_map(a: &StrandAlgebra, r: &StrandAlgebra) -> Vec<usize> {
    let mut flip = Vec::new();
    let mut offset = 0;
    for iv in &a.z.intervals {
        for k in 0..iv.len() {
            flip.push(offset + iv.len() - 1 - k);
        }
        offset += iv.len();
    }
    a.basis
        .iter()
        .map(|b| {
            let image = Basis {
                moving: b.moving.iter().map(|&(p, q)| (flip[q], flip[p])).collect(),
                horizontal: b.horizontal.clone(),
            };
            r.index_of(&image).unwrap()
        })
        .collect()
}

fn check_opposite(z: ArcDiagram) {
    let a = StrandAlgebra::new(z.clone());
    let r = StrandAlgebra::new(z.reversed());
    let phi = reversal_map(&a, &r);
    let map = |e: &Element| -> Element { e.iter().map(|&k| phi[k]).collect() };
    for x in 0..a.dim() {
        assert_eq!(map(&a.diff_basis(x)), r.diff_basis(phi[x]));
        for y in 0..a.dim() {
            assert_eq!(map(&a.mul_basis(x, y)), r.mul_basis(phi[y], phi[x]), "{} {}", a.name(x), a.name(y));
        }
    }
}

#[test]
fn reversed_z2_is_the_opposite_algebra() {
    check_opposite(ArcDiagram::z2());
    let a = StrandAlgebra::new(ArcDiagram::z2());
    let r = StrandAlgebra::new(ArcDiagram::z2().reversed());
    let phi = reversal_map(&a, &r);
    let n = |s: &str| a.find_name(s).unwrap();
    // ρ1ρ2 = ρ12 becomes a product in the other order.
    assert_eq!(r.mul_basis(phi[n("ρ2")], phi[n("ρ1")]), one(phi[n("ρ12")]));
    assert!(r.mul_basis(phi[n("ρ1")], phi[n("ρ2")]).is_empty());
}

/// A random arc diagram: a shuffled pairing of 2k points cut into intervals.
fn arb_diagram() -> impl Strategy<Value = ArcDiagram> {
    (1usize..=3, any::<u64>(), 1usize..=2).prop_map(|(k, seed, cuts)| {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m: Vec<usize> = (0..k).flat_map(|a| [a, a]).collect();
        m.shuffle(&mut rng);
        let n = 2 * k;
        let cut = if cuts == 2 && n > 2 { n / 2 } else { n };
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut intervals = vec![names[..cut].to_vec()];
        if cut < n {
            intervals.push(names[cut..].to_vec());
        }
        let arcs = (0..k).map(|a| format!("a{}", a + 1)).collect();
        ArcDiagram::new("R", intervals, arcs, m).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_diagrams_give_dgas(z in arb_diagram()) {
        check_dga(&StrandAlgebra::new(z));
    }

    #[test]
    fn random_reversals_are_opposite(z in arb_diagram()) {
        check_opposite(z);
    }
}
