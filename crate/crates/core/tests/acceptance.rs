//! One PASS/FAIL line per acceptance criterion. Every comparison is exact.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;

use sclcx::admsurf::AdmissibleSurface;
use sclcx::homlin::{homology, Ring};
use sclcx::normalize::{cyclic_cover, eliminate_fold, find_fold, make_standard_form, promote_orientation_perfect, CoverSpec};
use sclcx::par::ExecPolicy;
use sclcx::sclopt::{bavard_sandwich, scl_lp, scl_upper_from_surface, OneChain, RotStructure, SclValue};
use sclcx::veriharness::fixtures::*;
use sclcx::veriharness::*;

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn scl_values() -> Outcome {
    let mut notes = Vec::new();
    for (text, rank, expect) in [("[a,b]", 2, q(1, 2)), ("[a,b][c,d]", 4, q(3, 2))] {
        let c = OneChain::parse(text, &OneChain::standard_basis(rank)).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let r = scl_lp(&c, ExecPolicy::Parallel).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure(r.value == SclValue::Finite(expect.clone()), || format!("scl {text} = {}, expected {expect}", r.value))?;
        ensure(r.verify(), || format!("certificate for {text} does not verify"))?;
        ensure(took < Duration::from_secs(10), || format!("scl {text} took {took:?}"))?;
        notes.push(format!("scl {text} = {expect} in {} ms", took.as_millis()));
    }
    Ok(notes.join("; "))
}

fn sandwich() -> Outcome {
    let mut notes = Vec::new();
    for g in 1..=3 {
        let t = target(sg1b(g));
        let w = identity_surface(&t);
        let upper = scl_upper_from_surface(&w).map_err(|e| e.to_string())?;
        let rot = RotStructure::balanced(t.clone()).map_err(|e| e.to_string())?;
        let s = bavard_sandwich(&rot, &w.edge_loops(), Some(upper)).map_err(|e| e.to_string())?;
        let expect = q(2 * g as i64 - 1, 2);
        ensure(s.exact() == Some(&expect), || format!("g = {g}: [{}, {:?}], expected {expect}", s.lower, s.upper))?;
        notes.push(format!("g={g}: {expect}"));
    }
    Ok(notes.join(", "))
}

fn theorem_a() -> Outcome {
    let mut notes = Vec::new();
    for (g, rank) in [(1, 2), (2, 4)] {
        let x = sg1b_ambient(g);
        let t = closure_of(&x, &["f1"]);
        let corpus = chain_corpus(rank);
        ensure(corpus.len() >= 10, || "corpus has fewer than 10 chains".into())?;
        ensure(corpus.iter().all(|c| c.is_boundary() && c.terms.iter().all(|(_, w)| w.len() <= 8)), || "corpus chain is not a short boundary".into())?;
        let r = theorem_a_harness(&x, &t, &corpus, ExecPolicy::Parallel).map_err(|e| e.to_string())?;
        for row in &r.rows {
            ensure(row.boundary && row.sub == row.ambient && matches!(row.sub, SclValue::Finite(_)), || {
                format!("Sg1b({g}) ⊂ Sg1b({}): {} gives {} vs {}", g + 1, row.chain, row.sub, row.ambient)
            })?;
        }
        ensure(r.holds && r.h1.injective, || format!("harness fails on Sg1b({g}) ⊂ Sg1b({})", g + 1))?;
        notes.push(format!("Sg1b({g})⊂Sg1b({}): {} chains equal", g + 1, r.rows.len()));
    }
    Ok(notes.join("; "))
}

fn non_isometric_example() -> Outcome {
    let x = closed_s3();
    let t = closure_of(&x, &["f1"]);
    let h1 = check_h1_injectivity(&x, &t).map_err(|e| e.to_string())?;
    ensure(h1.injective, || "H1(T) → H1(S) is not injective".into())?;
    ensure(h1.rank_h2_rel == 1, || format!("H2(S,T;Q) has rank {}", h1.rank_h2_rel))?;
    let tg = target(x.clone());
    let d = class_difference(&t_itself(&tg), &sigma_genus_1(&tg), Ring::Q).map_err(|e| e.to_string())?;
    ensure(d.is_absolute_cycle && d.rank_h2_s == 1, || "difference is not in H2(S;Q) of rank one".into())?;
    let k = d.multiple_of_fundamental.clone().unwrap_or_default();
    ensure(k == "1" || k == "-1", || format!("difference is {k} times the generator"))?;
    ensure(homology(&x, Ring::Q).betti(2) == 1, || "H2(S;Q) is not Q".into())?;
    Ok(format!("H1 injective, H2(S,T;Q) = Q, classes differ by {k}·[S]"))
}

fn ambient_surfaces(g: usize) -> Result<Vec<(String, AdmissibleSurface)>, String> {
    let tg = target(sg1b_ambient(g));
    let base = t_itself(&tg);
    let mut out = vec![("T-itself".to_string(), base.clone())];
    out.push(("T-itself twice".into(), base.disjoint_union(&base).map_err(|e| e.to_string())?));
    for n in 2..=3 {
        let spec = CoverSpec::connected(&base, n).map_err(|e| e.to_string())?;
        out.push((format!("{n}-fold cover"), cyclic_cover(&base, &spec).map_err(|e| e.to_string())?));
    }
    Ok(out)
}

fn containment() -> Outcome {
    let mut runs = 0;
    for g in 1..=2 {
        let x = sg1b_ambient(g);
        let t = closure_of(&x, &["f1"]);
        for (name, s) in ambient_surfaces(g)? {
            let report = s.standard_form_report();
            ensure(report.is_standard(), || format!("{name} is not in standard form"))?;
            for mode in [Mode::Standard, Mode::Perfect] {
                let r = verify_theorem_main(&s, &t, Ring::Q, mode).map_err(|e| format!("{name}: {e}"))?;
                ensure(r.verdict == Verdict::Contained && r.proof_contained && r.direct_contained && r.agrees(), || {
                    format!("{name} over Sg1b-ambient({g}) in mode {mode}: {:?}", r.verdict)
                })?;
                runs += 1;
            }
        }
    }
    let x = closed_s3();
    let t = closure_of(&x, &["f1"]);
    let tg = target(x.clone());
    let r = verify_theorem_main(&t_itself(&tg), &t, Ring::Q, Mode::Standard).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::HypothesisFails && r.hypothesis.rank_h2_rel == 1 && r.agrees(), || {
        format!("T-itself on ClosedS3, standard mode: {:?}", r.verdict)
    })?;
    let r = verify_theorem_main(&sigma_genus_1(&tg), &t, Ring::Q, Mode::Perfect).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::HypothesisFails && !r.hypothesis.class_outside.is_empty() && r.agrees(), || {
        format!("Σ-genus-1 on ClosedS3, perfect mode: {:?}", r.verdict)
    })?;
    let r = verify_theorem_main(&t_itself(&tg), &t, Ring::Q, Mode::Perfect).map_err(|e| e.to_string())?;
    ensure(r.agrees(), || "proof path and direct inspection disagree".into())?;
    Ok(format!(
        "{runs}/{runs} ambient runs contained and agreeing; ClosedS3: T-itself fails H2(S,T)=0 (rank 1), \
         Σ-genus-1 fails the class hypothesis; T-itself in perfect mode: {:?}",
        r.verdict
    ))
}

fn rewriting() -> Outcome {
    let mut r = rng(0x5eed_f01d);
    let mut folds = 0;
    for instance in 1..=120 {
        let rows = r.gen_range(2..=4);
        let cols = r.gen_range(2..=5);
        let t = target(grid_torus(rows, cols));
        let (row, col, side) = (r.gen_range(0..rows), r.gen_range(0..cols), if r.gen_bool(0.5) { 0 } else { 2 });
        let s = grid_fold(&t, cols, row, col, side);
        let (a, b) = find_fold(&s).ok_or_else(|| format!("no fold found in grid_fold({rows}x{cols}, {row}, {col}, {side})"))?;
        let e = eliminate_fold(&s, a, b).map_err(|e| e.to_string())?;
        ensure(e.euler_characteristic() == s.euler_characteristic(), || format!("χ changed on instance {instance}"))?;
        let (p, pe) = (s.pushforward_class(Ring::Q).map_err(|e| e.to_string())?, e.pushforward_class(Ring::Q).map_err(|e| e.to_string())?);
        ensure(p.chain == pe.chain, || format!("pushforward changed on instance {instance}"))?;
        folds += 1;

        let before = sclcx::normalize::Metrics::of(&s);
        let (n, log) = make_standard_form(&s).map_err(|e| e.to_string())?;
        let fold_moves = log.entries.iter().filter(|e| e.name == "fold").count();
        ensure(fold_moves <= before.negative_discs, || format!("{fold_moves} folds from {} negative discs", before.negative_discs))?;
        for e in log.entries.iter().filter(|e| e.name != "thicken") {
            ensure(e.after.potential() < e.before.potential(), || format!("potential did not drop at `{} {}`", e.name, e.args))?;
        }
        ensure(log.is_chained() && n.standard_form_report().non_folded, || "standard form is folded".into())?;
    }
    let mut glues = 0;
    for (rows, cols) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        for eps in [q(1, 1), q(1, 2), q(1, 3)] {
            let t = target(grid_torus(rows, cols));
            let s = grid_annulus_and_reversed_torus(&t, rows, cols);
            let p = promote_orientation_perfect(&s, &eps).map_err(|e| e.to_string())?;
            for e in p.log.entries.iter().filter(|e| e.name == "glue") {
                ensure(e.after.chi_minus == e.before.chi_minus + 2, || format!("glue changed -χ⁻ by {}", e.after.chi_minus - e.before.chi_minus))?;
                glues += 1;
            }
            ensure(p.bound_holds() && p.surface.standard_form_report().orientation_perfect, || "promotion bound fails".into())?;
        }
    }
    ensure(glues > 0, || "no glue step exercised".into())?;
    Ok(format!("{folds} random folds keep χ and the pushforward; {glues} glue steps each +2; all runs terminate with decreasing potential"))
}

fn homology_engine() -> Outcome {
    for g in 0..=4 {
        let b = homology(&closed_surface(g), Ring::Z).betti_numbers();
        ensure(b == vec![1, 2 * g, 1], || format!("ClosedS({g}) Betti numbers {b:?}"))?;
    }
    let rp2 = projective_plane();
    let hz = homology(&rp2, Ring::Z);
    ensure(hz.torsion(1) == [BigInt::from(2)] && hz.betti(2) == 0, || "RP2 over Z".into())?;
    ensure(homology(&rp2, Ring::Q).betti_numbers() == vec![1, 0, 0], || "RP2 over Q".into())?;
    let mut r = rng(0xe1e7);
    let spaces = ambient_complexes();
    for i in 0..200 {
        let (name, x) = &spaces[i % spaces.len()];
        let y = random_subcomplex(x, &mut r);
        euler_poincare(x, &y).map_err(|e| format!("{name}: {e}"))?;
    }
    for i in 0..500 {
        let m = random_matrix(&mut r, 20);
        snf_identities(&m).map_err(|e| format!("matrix {i}: {e}"))?;
    }
    Ok("ClosedS(0..4), RP2 over Z and Q, 200 Euler–Poincaré pairs, 500 SNF matrices".into())
}

fn properties() -> Outcome {
    let basis = OneChain::standard_basis(2);
    let mut corpus = chain_corpus(2);
    corpus.push(OneChain::parse("a", &basis).unwrap());
    for c in &corpus {
        homogeneous(c, 2)?;
    }
    let set = FixtureSet::load();
    let mut complexes: Vec<_> = set.complexes.iter().map(|f| f.complex.clone()).collect();
    complexes.push(three_squares());
    ensure(complexes.iter().all(link_corner_accounting), || "link/corner accounting".into())?;
    let mut r = rng(0x57ab);
    let spaces = ambient_complexes();
    for i in 0..200 {
        let (name, x) = &spaces[i % spaces.len()];
        subcomplex_stability(x, &random_subcomplex(x, &mut r)).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("homogeneity on {} chains, link/corner accounting on {} complexes, 200 subcomplex stability checks", corpus.len(), complexes.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("scl values", scl_values),
        ("Bavard sandwich", sandwich),
        ("scl under inclusion", theorem_a),
        ("non-isometric example", non_isometric_example),
        ("containment verifier", containment),
        ("rewriting accounting", rewriting),
        ("homology engine", homology_engine),
        ("property suites", properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
