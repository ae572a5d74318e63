//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod support;

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sfh_core::catalog;
use sfh_core::glue::{
    eh_generator, equivalence_report, glue_one_handle, glue_two_handle, sigma_map, stage_complex, HandleSpec,
    ReportOptions, Sigma,
};
use sfh_core::modules::{bordered_invariant, check_relations, BorderedStructure, Kind};
use sfh_core::sfc::{self, ChainComplexF2};
use sfh_core::strands::{ArcDiagram, Basis, StrandAlgebra};
use sfh_core::surface::{trivial_destabilize, Diagram, EdgeKind, Family};
use support::{oracle, random};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Catalog diagrams without interfaces that the engine accepts.
fn sutured_fixtures() -> Vec<(&'static str, Diagram)> {
    catalog::NAMES
        .iter()
        .map(|n| (*n, catalog::fixture(n).unwrap()))
        .filter(|(_, d)| !d.is_bordered() && sfc::differential(d).is_ok())
        .collect()
}

fn algebra_ranks() -> Outcome {
    let z1: usize = StrandAlgebra::new(ArcDiagram::z1()).summand_ranks().iter().sum();
    let z2 = StrandAlgebra::new(ArcDiagram::z2()).summand_ranks();
    ensure(z1 == 1 && z2 == [1, 5, 3], || format!("A(Z1) {z1}, A(Z2) {z2:?}"))?;
    Ok(format!("A(Z1) rank {z1}, A(Z2) summands {z2:?}"))
}

fn a2_table() -> Outcome {
    let a = StrandAlgebra::new(ArcDiagram::z2());
    let n = |s: &str| a.find_name(s).unwrap();
    let e = |s: &str| BTreeSet::from([n(s)]);
    let sandwich = |i: &str, r: &str, j: &str| a.mul(&a.mul_basis(n(i), n(r)), &e(j));
    ensure(sandwich("ι2", "ρ1", "ι1") == e("ρ1"), || "ι2·ρ1·ι1".into())?;
    ensure(sandwich("ι1", "ρ2", "ι2") == e("ρ2"), || "ι1·ρ2·ι2".into())?;
    ensure(sandwich("ι2", "ρ12", "ι2") == e("ρ12"), || "ι2·ρ12·ι2".into())?;
    let chords = ["ρ1", "ρ2", "ρ12"];
    let mut nonzero = Vec::new();
    for x in chords {
        for y in chords {
            let p = a.mul_basis(n(x), n(y));
            if !p.is_empty() {
                nonzero.push(format!("{x}·{y} = {}", a.element_name(&p)));
            }
        }
    }
    ensure(nonzero == ["ρ1·ρ2 = ρ12"], || format!("nonzero chord products {nonzero:?}"))?;
    Ok("sandwiches hold, ρ1·ρ2 = ρ12 is the only nonzero chord product".into())
}

/// The algebra element each generator of BSAA(AZ2) is dual to.
fn z_tags(m: &BorderedStructure) -> Vec<usize> {
    let d = catalog::az2();
    let alg = &m.sides[0].algebra;
    let of_point = |p: &str| {
        let name = d.tags.marks.iter().find(|(k, v)| k.ends_with('∨') && v.as_str() == p).unwrap().0;
        alg.find_name(name.trim_end_matches('∨')).unwrap()
    };
    m.generators
        .iter()
        .map(|g| {
            let mut b = Basis {
                moving: BTreeSet::new(),
                horizontal: BTreeSet::new(),
            };
            for p in &g.points {
                let t = &alg.basis[of_point(p)];
                b.moving.extend(t.moving.iter().copied());
                b.horizontal.extend(t.horizontal.iter().copied());
            }
            alg.index_of(&b).unwrap()
        })
        .collect()
}

fn bsaa_az2() -> Outcome {
    let m = bordered_invariant(&catalog::az2(), Kind::AA, "AZ2").map_err(|e| e.to_string())?;
    let one: Vec<&str> = m.summand(1).iter().map(|&k| m.labels[k].as_str()).collect();
    ensure(one == ["z1", "z2", "z3", "z4", "z5"], || format!("one-strand generators {one:?}"))?;
    let alg = &m.sides[0].algebra;
    let has = |side: usize, x: &str, a: &str, y: &str| {
        let (x, y) = (m.index_of_label(x).unwrap(), m.index_of_label(y).unwrap());
        m.act(side, x, alg.find_name(a).unwrap()).contains(&y)
    };
    for (side, x, a, y) in [(0, "z1", "ρ1", "z4"), (0, "z1", "ρ12", "z3"), (1, "z2", "ρ1", "z3"), (1, "z4", "ρ2", "z5")] {
        ensure(has(side, x, a, y), || format!("missing action {a} on {x} giving {y}"))?;
    }
    let region: BTreeSet<String> = ["D1", "D3", "D4"].iter().map(|s| s.to_string()).collect();
    ensure(m.entries.iter().all(|e| e.faces != region), || "D1∪D3∪D4 acts".into())?;
    let bad = check_relations(&m);
    ensure(bad.is_empty(), || format!("relations {bad:?}"))?;
    let t = z_tags(&m);
    let mut checked = 0;
    for x in 0..m.len() {
        for y in 0..m.len() {
            ensure(m.differential(x).contains(&y) == alg.diff_basis(t[y]).contains(&t[x]), || {
                format!("∂ {} -> {}", m.labels[x], m.labels[y])
            })?;
            for a in 0..alg.dim() {
                let left = alg.mul_basis(a, t[y]).contains(&t[x]);
                let right = alg.mul_basis(t[y], a).contains(&t[x]);
                ensure(m.act(0, x, a).contains(&y) == left && m.act(1, x, a).contains(&y) == right, || {
                    format!("action of {} between {} and {}", alg.name(a), m.labels[x], m.labels[y])
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("5 one-strand generators, golden actions present, {checked} entries match the dual algebra"))
}

fn one_handle() -> Outcome {
    let mut count = 0;
    for (name, d) in sutured_fixtures() {
        let Some(HandleSpec::One { p, q }) = HandleSpec::standard("one", &d) else { continue };
        let g = glue_one_handle(&d, &p, &q).map_err(|e| format!("{name}: {e}"))?;
        ensure(g.tables_agree(), || format!("{name}: Ψ1 {:?} vs σ1 {:?}", g.psi.lines(), g.sigma.table.lines()))?;
        ensure(g.diagrams_agree(), || format!("{name}: destabilized diagram differs from σ1's"))?;
        count += 1;
    }
    ensure(count >= 2, || format!("only {count} fixtures"))?;
    Ok(format!("Ψ1 = σ1 generator for generator on {count} fixtures"))
}

fn two_handle() -> Outcome {
    let mut runs = Vec::new();
    for (name, d) in sutured_fixtures() {
        for kind in ["two", "bypass+", "bypass-"] {
            let Some(h) = HandleSpec::standard(kind, &d) else { continue };
            let g = glue_two_handle(&d, &h).map_err(|e| format!("{name} {kind}: {e}"))?;
            ensure(g.identity.holds(), || format!("{name} {kind}: {:?}", g.identity.failures))?;
            ensure(g.ranks_agree(), || format!("{name} {kind}: ranks {:?}", g.ranks))?;
            runs.push(g.identity.cycles);
        }
    }
    ensure(runs.len() >= 4, || format!("only {} attachments", runs.len()))?;
    let cycles: usize = runs.iter().sum();
    Ok(format!("identity on {cycles} basis cycles over {} attachments, H4/H5/H6 ranks agree", runs.len()))
}

/// Curve-free diagrams: the disk and seeded 1-handle composites of it.
fn curve_free() -> Vec<Diagram> {
    let mut out = vec![catalog::disk()];
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = catalog::disk();
        for _ in 0..=(seed % 4) {
            let free: Vec<String> = d.edges.iter().filter(|(_, e)| e.kind == EdgeKind::Boundary).map(|(id, _)| id.clone()).collect();
            let pq: Vec<&String> = free.choose_multiple(&mut rng, 2).collect();
            let h = HandleSpec::One {
                p: pq[0].clone(),
                q: pq[1].clone(),
            };
            d = sigma_map(&d, &h).unwrap().diagram;
        }
        out.push(d);
    }
    out
}

fn rank_one_products() -> Outcome {
    let ds = curve_free();
    let mut shapes = BTreeSet::new();
    for d in &ds {
        ensure(d.alpha_curves.is_empty() && d.beta_curves.is_empty(), || "fixture has curves".into())?;
        let h = sfc::homology(d).map_err(|e| e.to_string())?;
        ensure(h.total == 1, || format!("rank {} with χ = {}", h.total, d.euler_characteristic()))?;
        shapes.insert((d.euler_characteristic(), d.boundary_components().len()));
    }
    Ok(format!("{} curve-free diagrams, {} (χ, boundary) shapes, all rank 1", ds.len(), shapes.len()))
}

struct Tally {
    complexes: usize,
    tables: usize,
    isomorphisms: usize,
    eh: usize,
    destabilized: usize,
}

fn check_complex(what: &str, c: &ChainComplexF2, t: &mut Tally) -> Result<(), String> {
    ensure(c.squares_to_zero(), || format!("{what}: ∂² ≠ 0"))?;
    ensure(c.respects_spinc(), || format!("{what}: ∂ mixes Spin^c classes"))?;
    t.complexes += 1;
    Ok(())
}

fn check_stages(what: &str, base: &Diagram, stages: &[Sigma], t: &mut Tally) -> Result<(), String> {
    check_complex(what, &stage_complex("base", base).map_err(|e| e.to_string())?, t)?;
    let mut cur = base.clone();
    for (k, s) in stages.iter().enumerate() {
        let at = format!("{what} stage {}", k + 1);
        check_complex(&at, &s.table.target, t)?;
        let bad = s.table.law_violations();
        ensure(bad.is_empty(), || format!("{at}: {bad:?}"))?;
        t.tables += 1;
        let (r0, r1) = (s.table.source.homology().total, s.table.target.homology().total);
        match &s.spec {
            HandleSpec::Bypass { .. } => {
                ensure(s.table.is_isomorphism(), || format!("{at}: τ is not an isomorphism"))?;
                ensure(r0 == r1, || format!("{at}: bypass changed rank {r0} -> {r1}"))?;
                t.isomorphisms += 1;
            }
            HandleSpec::One { p, q } => {
                let g = glue_one_handle(&cur, p, q).map_err(|e| format!("{at}: {e}"))?;
                for tb in [&g.join.table, &g.psi] {
                    let bad = tb.law_violations();
                    ensure(bad.is_empty(), || format!("{at}: {bad:?}"))?;
                }
                let before = stage_complex("H4", &g.join.h4).map_err(|e| e.to_string())?.homology().total;
                ensure(before == g.psi.target.homology().total, || format!("{at}: destabilization changed rank"))?;
                t.tables += 2;
                t.destabilized += 1;
            }
            HandleSpec::Two { .. } => {
                let g = glue_two_handle(&cur, &s.spec).map_err(|e| format!("{at}: {e}"))?;
                for tb in [&g.join.table, &g.psi] {
                    let bad = tb.law_violations();
                    ensure(bad.is_empty(), || format!("{at}: {bad:?}"))?;
                }
                t.tables += 2;
                // The new pair meets only at x0 when both paths cross nothing.
                let x0 = s.x0.clone().unwrap();
                let a = s.diagram.curve_through(&x0, Family::Alpha).unwrap();
                let b = s.diagram.curve_through(&x0, Family::Beta).unwrap();
                if let Ok((back, _)) = trivial_destabilize(&s.diagram, &a, &b) {
                    let r = sfc::homology(&back).map_err(|e| format!("{at}: {e}"))?.total;
                    ensure(r == r1, || format!("{at}: trivial destabilization changed rank {r1} -> {r}"))?;
                    t.destabilized += 1;
                }
            }
        }
        if base.tags.eh.is_some() {
            eh_generator(base, &stages[..=k]).map_err(|e| format!("{at}: {e}"))?;
            t.eh += 1;
        }
        cur = s.diagram.clone();
    }
    Ok(())
}

fn property_suite() -> Outcome {
    let mut t = Tally {
        complexes: 0,
        tables: 0,
        isomorphisms: 0,
        eh: 0,
        destabilized: 0,
    };
    for (name, d) in sutured_fixtures() {
        check_stages(name, &d, &[], &mut t)?;
        for kind in ["one", "two", "bypass+", "bypass-"] {
            if let Some(h) = HandleSpec::standard(kind, &d) {
                let s = sigma_map(&d, &h).map_err(|e| format!("{name} {kind}: {e}"))?;
                check_stages(&format!("{name} {kind}"), &d, &[s], &mut t)?;
            }
        }
    }
    let (comps, rejected) = random::compositions(100);
    for (seed, c) in &comps {
        check_stages(&format!("seed {seed}"), &c.base, &c.stages, &mut t)?;
    }
    Ok(format!(
        "{} compositions ({rejected} rejected draws): {} complexes, {} chain maps, {} τ isomorphisms, {} EH transports, {} destabilizations",
        comps.len(),
        t.complexes,
        t.tables,
        t.isomorphisms,
        t.eh,
        t.destabilized
    ))
}

fn equivalence_harness() -> Outcome {
    let seqs: [&[&str]; 8] = [
        &["one"],
        &["two"],
        &["bypass+"],
        &["bypass-"],
        &["one", "two"],
        &["two", "two"],
        &["bypass+", "two"],
        &["two", "bypass-"],
    ];
    let mut pairs = 0;
    for base in ["disk", "stab"] {
        let d = catalog::fixture(base).unwrap();
        for s in seqs {
            let mut cur = d.clone();
            let mut plan = Vec::new();
            for k in s {
                let h = HandleSpec::standard(k, &cur).ok_or_else(|| format!("{base} {s:?}: no site for {k}"))?;
                cur = sigma_map(&cur, &h).map_err(|e| e.to_string())?.diagram;
                plan.push(h);
            }
            let r = equivalence_report(&d, &plan, &ReportOptions::default());
            ensure(r.passed(), || format!("{base} {s:?}: {:?}", r.failures))?;
            pairs += 1;
        }
    }
    let faulty = equivalence_report(&catalog::stab(), &[HandleSpec::standard("two", &catalog::stab()).unwrap()], &ReportOptions {
        wrong_x0: true,
    });
    ensure(!faulty.passed(), || "a wrong x0 went unnoticed".into())?;
    Ok(format!("{pairs} (base, sequence) pairs agree, injected fault detected"))
}

fn oracle_cross_checks() -> Outcome {
    let mut ds: Vec<(String, Diagram)> = sutured_fixtures().into_iter().map(|(n, d)| (n.to_string(), d)).collect();
    let (comps, _) = random::compositions(100);
    for (seed, c) in &comps {
        let mut cur = c.base.clone();
        for (k, s) in c.stages.iter().enumerate() {
            ds.push((format!("seed {seed} stage {}", k + 1), s.diagram.clone()));
            if let Ok(g) = glue_two_handle(&cur, &s.spec) {
                ds.push((format!("seed {seed} H3.{}", k + 1), g.prepared.h3.clone()));
                ds.push((format!("seed {seed} H4.{}", k + 1), g.join.h4.clone()));
                ds.push((format!("seed {seed} H5.{}", k + 1), g.h5.clone()));
            }
            cur = s.diagram.clone();
        }
    }
    let (mut n, mut nontrivial, mut domains) = (0, 0, 0);
    for (name, d) in &ds {
        if d.alpha_curves.len() + d.beta_curves.len() > 6 {
            continue;
        }
        let c = sfc::differential(d).map_err(|e| format!("{name}: {e}"))?;
        let o = oracle::census(d);
        let mut gens: Vec<BTreeSet<String>> = c.basis.iter().map(|g| g.points.clone()).collect();
        gens.sort();
        ensure(gens == o.generators, || format!("{name}: generators {} vs oracle {}", gens.len(), o.generators.len()))?;
        let rank = c.homology().total;
        ensure(rank == o.rank, || format!("{name}: rank {rank} vs oracle {}", o.rank))?;
        let mut mine: Vec<_> = sfc::domains(d).into_iter().map(|x| (x.faces, x.x, x.y, x.interior)).collect();
        mine.sort();
        let mut theirs = o.domains.clone();
        theirs.sort();
        ensure(mine == theirs, || format!("{name}: domain lists differ"))?;
        n += 1;
        domains += mine.len();
        nontrivial += usize::from(rank < gens.len());
    }
    ensure(nontrivial > 0, || "no diagram with a nonzero differential".into())?;
    Ok(format!("{n} diagrams, {domains} domains, {nontrivial} with nonzero ∂, all equal"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("algebra ranks", algebra_ranks),
        ("A2 multiplication table", a2_table),
        ("BSAA(AZ2)", bsaa_az2),
        ("one-handle equivalence", one_handle),
        ("two-handle identity", two_handle),
        ("rank-1 products", rank_one_products),
        ("property suite", property_suite),
        ("equivalence harness", equivalence_harness),
        ("oracle cross-checks", oracle_cross_checks),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: pass  {title}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
