use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::veriharness::fixtures::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn grid_fold_eliminates() {
    let t = target(grid_torus(2, 3));
    for (col, side) in [(0, 0), (1, 0), (2, 2)] {
        let s = grid_fold(&t, 3, 0, col, side);
        let (a, b) = find_fold(&s).expect("fold present");
        let r = eliminate_fold(&s, a, b).unwrap();
        assert_eq!(r.euler_characteristic(), s.euler_characteristic());
        assert!(same_class(&s, &r).unwrap());
        assert_eq!(r.fpieces().len(), s.fpieces().len() - 2);
        let words: Vec<_> = s.circuits().iter().map(|c| c.word.clone()).collect();
        for c in r.circuits() {
            assert!(words.iter().any(|w| crate::admsurf::cyclically_equal(w, &c.word)));
        }
    }
}

#[test]
fn double_fold_to_nothing() {
    let t = target(grid_torus(2, 2));
    let s = grid_double_fold(&t);
    let (a, b) = find_fold(&s).unwrap();
    let r = eliminate_fold(&s, a, b).unwrap();
    assert_eq!(r.euler_characteristic(), s.euler_characteristic());
    let (a, b) = find_fold(&r).unwrap();
    let r = eliminate_fold(&r, a, b).unwrap();
    assert!(r.fpieces().is_empty());
    assert_eq!(r.euler_characteristic(), s.euler_characteristic() + 2);
    assert!(same_class(&s, &r).unwrap());
}

#[test]
fn fold_preconditions() {
    let t = target(grid_torus(2, 3));
    let s = grid_row_annulus(&t, 3, 0);
    assert!(find_fold(&s).is_none());
    assert!(matches!(eliminate_fold(&s, 0, 1), Err(NormError::NotApplicable(_))));
    assert!(matches!(eliminate_fold(&s, 0, 9), Err(NormError::NotApplicable(_))));
}

#[test]
fn figlnk_positive_policy() {
    let t = target(fan_disc());
    let s = figlnk(&t);
    let d = link_components(&s).iter().position(|&k| k == 2).unwrap();
    let r = connect_link(&s, d, LinkPolicy::Positive).unwrap();
    let before = Metrics::of(&s);
    let after = Metrics::of(&r);
    assert_eq!(after.positive_discs, before.positive_discs + 2);
    assert_eq!(after.negative_discs, before.negative_discs);
    assert_eq!(after.link_excess + 1, before.link_excess);
    assert_eq!(after.chi, before.chi);
    let faces: Vec<&str> = r.fpieces()[2..].iter().map(|f| t.complex.face(f.face).name.as_str()).collect();
    assert_eq!(faces, ["g2", "g3"]);
    assert!(same_class(&s, &r).unwrap());
}

#[test]
fn figlnk_negative_policy() {
    let t = target(fan_disc());
    let s = figlnk(&t);
    let d = link_components(&s).iter().position(|&k| k == 2).unwrap();
    let r = connect_link(&s, d, LinkPolicy::Negative).unwrap();
    let faces: Vec<(&str, i64)> = r.fpieces()[2..].iter().map(|f| (t.complex.face(f.face).name.as_str(), f.sign)).collect();
    assert_eq!(faces, [("g1", -1), ("g4", -1)]);
    assert!(same_class(&s, &r).unwrap());
}

#[test]
fn connected_link_is_not_a_target() {
    let t = target(closed_s3());
    let s = t_itself(&t);
    assert!(link_components(&s).iter().all(|&k| k <= 1));
    assert!(matches!(connect_link(&s, 0, LinkPolicy::Positive), Err(NormError::NotApplicable(_))));
}

#[test]
fn figlnk_standard_form() {
    let t = target(fan_disc());
    let s = figlnk(&t);
    let (r, log) = make_standard_form(&s).unwrap();
    let links = log.entries.iter().filter(|e| e.name == "link").count();
    let folds = log.entries.iter().filter(|e| e.name == "fold").count();
    assert!(links <= 2 && folds <= 1, "{log}");
    assert!(log.is_chained());
    let rep = r.standard_form_report();
    assert!(rep.connected_links && rep.non_folded);
    assert_eq!(r.degree().per_circle, s.degree().per_circle);
}

#[test]
fn t_itself_is_standard() {
    let t = target(closed_s3());
    let s = t_itself(&t);
    let (r, log) = make_standard_form(&s).unwrap();
    assert!(log.entries.is_empty());
    assert_eq!(r, s);
}

#[test]
fn fold_fixture_standard_form() {
    let t = target(grid_torus(2, 3));
    let s = grid_fold(&t, 3, 0, 1, 0);
    let (r, log) = make_standard_form(&s).unwrap();
    assert_eq!(log.entries[0].name, "fold");
    assert!(r.standard_form_report().non_folded);
    assert!(Metrics::of(&r).chi_minus <= Metrics::of(&s).chi_minus);
}

#[test]
fn potential_decreases_along_log() {
    let t = target(fan_disc());
    let (_, log) = make_standard_form(&figlnk(&t)).unwrap();
    let steps: Vec<_> = log.entries.iter().filter(|e| e.name != "thicken").collect();
    for e in steps {
        assert!(e.after.potential() < e.before.potential(), "{log}");
    }
}

#[test]
fn folded_sphere_is_dropped() {
    let t = target(grid_torus(2, 3));
    let s = grid_annulus_and_folded_sphere(&t, 3);
    let stripped = remove_trivial_components(&s).unwrap();
    assert_eq!(stripped.fpieces().len(), 3);
    let (r, log) = make_standard_form(&s).unwrap();
    assert_eq!(log.entries.len(), 1, "{log}");
    assert_eq!(r.fpieces().len(), 3);
    assert!(r.standard_form_report().disc_sphere_free);
    assert!(same_class(&s, &r).unwrap());
}

#[test]
fn disc_with_class_is_kept() {
    let t = target(fan_disc());
    let s = figlnk(&t);
    assert!(matches!(remove_trivial_components(&s), Err(NormError::ClassChange(_))));
}

#[test]
fn promote_grid_example() {
    let t = target(grid_torus(2, 2));
    let s = grid_annulus_and_reversed_torus(&t, 2, 2);
    let p = promote_orientation_perfect(&s, &q(1, 3)).unwrap();
    assert_eq!(p.cover_degree, 3);
    assert!(p.gluings >= 1);
    assert!(p.surface.standard_form_report().orientation_perfect);
    assert!(p.bound_holds());
    for e in p.log.entries.iter().filter(|e| e.name == "glue") {
        assert_eq!(e.after.chi_minus, e.before.chi_minus + 2);
    }
    let cover = &p.log.entries[0];
    assert_eq!(cover.name, "cover");
    assert_eq!(cover.after.chi_minus, 3 * cover.before.chi_minus);
    assert!(cover.after.per_circle.iter().zip(&cover.before.per_circle).all(|(a, b)| *a == 3 * b));
}

#[test]
fn promote_with_eps_one() {
    let t = target(grid_torus(2, 2));
    let s = grid_annulus_and_reversed_torus(&t, 2, 2);
    let p = promote_orientation_perfect(&s, &q(1, 1)).unwrap();
    assert_eq!(p.cover_degree, 1);
    assert!(p.surface.standard_form_report().orientation_perfect);
    assert!(p.bound_holds());
}

#[test]
fn promote_identity_and_errors() {
    let t = target(closed_s3());
    let s = t_itself(&t);
    let p = promote_orientation_perfect(&s, &q(1, 10)).unwrap();
    assert!(p.log.entries.is_empty());
    assert_eq!(p.surface, s);
    assert_eq!(promote_orientation_perfect(&s, &q(0, 1)).unwrap_err(), NormError::BadEpsilon);
    assert_eq!(promote_orientation_perfect(&s, &q(-1, 2)).unwrap_err(), NormError::BadEpsilon);
}

#[test]
fn best_component_prefers_genus_one() {
    let t = target(closed_s3());
    let s = t_and_sigma(&t);
    let best = best_connected_component(&s).unwrap();
    assert_eq!(best.fpieces().len(), 1);
    assert_eq!(t.complex.face(best.fpieces()[0].face).name, "f2");
    let alone = best_connected_component(&t_itself(&t)).unwrap();
    assert_eq!(alone, t_itself(&t));
}

#[test]
fn cover_scales_counts() {
    let t = target(grid_torus(2, 3));
    let s = grid_row_annulus(&t, 3, 0);
    let spec = CoverSpec::connected(&s, 4).unwrap();
    let c = cyclic_cover(&s, &spec).unwrap();
    assert_eq!(c.components().len(), 1);
    assert_eq!(c.euler_characteristic(), 4 * s.euler_characteristic());
    assert_eq!(c.degree().per_circle, vec![4, 4]);
    assert_eq!(c.fpieces().len(), 12);
}

#[test]
fn thickening_keeps_cells() {
    let t = target(fan_disc());
    let th = thicken_boundary(&t).unwrap();
    let x = &th.target.complex;
    assert_eq!(x.face(0).name, t.complex.face(0).name);
    assert!(t.boundary_vertices.iter().all(|&v| th.target.is_interior(v)));
    assert_eq!(x.euler_characteristic(), t.complex.euler_characteristic());
    let s = th.retarget(&figlnk(&t)).unwrap();
    assert_eq!(s.fpieces().len(), 2);
}

#[test]
fn move_log_lines() {
    let t = target(grid_torus(2, 3));
    let s = grid_fold(&t, 3, 0, 1, 0);
    let (_, log) = make_standard_form(&s).unwrap();
    let text = log.to_string();
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("move fold "));
    assert!(first.contains("; chi_minus 0 -> 0 ; n 1,1 -> 1,1 ; discs +3/-1 -> +2/-0"));
}

#[test]
fn vertex_disc_is_removed() {
    let t = target(closed_s3());
    let base = t_itself(&t);
    let text = crate::admsurf::print_adm(&base) + "vdisc E at v :\n";
    let with_disc = crate::admsurf::parse_adm(t.clone(), &text).unwrap();
    assert_eq!(with_disc.components().len(), 2);
    assert_eq!(with_disc.euler_characteristic(), base.euler_characteristic() + 1);
    let stripped = remove_trivial_components(&with_disc).unwrap();
    assert_eq!(stripped, base);
    assert_eq!(Metrics::of(&stripped), Metrics::of(&base));
    assert_eq!(remove_trivial_components(&base).unwrap(), base);
}

#[test]
fn thickening_examples() {
    let th = thicken_boundary(&target(sg1b(2))).unwrap();
    let h = crate::homlin::homology(&th.target.complex, Ring::Q);
    assert_eq!(h.betti_numbers(), vec![1, 4, 0]);
    assert!(th.target.is_interior(0));

    let d = thicken_boundary(&target(disc())).unwrap();
    assert_eq!(d.target.complex.euler_characteristic(), 1);
    assert!(d.target.complex.num_faces() > 1);

    let closed = target(closed_surface(1));
    let same = thicken_boundary(&closed).unwrap();
    assert_eq!(same.target.complex, closed.complex);
}
