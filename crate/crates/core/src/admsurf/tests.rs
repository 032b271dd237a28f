use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::homlin::{EdgeLoop, Ring};
use crate::veriharness::fixtures::*;

fn s3() -> Arc<Target> {
    target(closed_s3())
}

#[test]
fn t_itself_counts() {
    let t = s3();
    let s = t_itself(&t);
    assert_eq!((s.vpieces().len(), s.hpieces().len(), s.fpieces().len()), (1, 5, 1));
    assert_eq!(s.euler_characteristic(), -3);
    assert_eq!(s.reduced_euler(), -3);
    assert_eq!(s.degree().n, Some(1));
    assert_eq!(s.circuits().iter().filter(|c| !c.word.is_empty()).count(), 1);
    assert_eq!(s.assemble().euler_characteristic(), -3);
}

#[test]
fn sigma_genus_one_counts() {
    let t = s3();
    let s = sigma_genus_1(&t);
    assert_eq!(s.euler_characteristic(), -1);
    assert_eq!(s.degree().n, Some(1));
    assert_eq!(s.orientation_type(0), -1);
}

#[test]
fn disjoint_double_doubles() {
    let t = s3();
    let s = t_itself(&t);
    let d = s.disjoint_union(&s).unwrap();
    assert_eq!(d.reduced_euler(), -6);
    assert_eq!(d.degree().n, Some(2));
    assert_eq!(d.components().len(), 2);
}

#[test]
fn opposite_degrees_are_flagged() {
    let t = s3();
    let f1 = t.complex.face_id("f1").unwrap();
    let pos = t_itself(&t);
    let neg = from_polygons(t.clone(), pos.loops().clone(), &[(f1, -1)], &auto_pairs(&t, &[(f1, -1)]), true).unwrap();
    assert_eq!(neg.degree().per_circle, vec![-1]);
    let both = pos.disjoint_union(&neg).unwrap();
    let deg = both.degree();
    assert_eq!(deg.per_circle, vec![0]);
    assert!(!deg.scl_admissible());
    let r = both.standard_form_report();
    assert!(!r.monotone);
    assert_eq!(r.mixed_circles, vec![0]);
    assert!(!r.orientation_perfect);
}

#[test]
fn pushforward_classes_differ_by_fundamental_class() {
    let t = s3();
    let a = t_itself(&t).pushforward_class(Ring::Q).unwrap();
    let b = sigma_genus_1(&t).pushforward_class(Ring::Q).unwrap();
    assert_eq!(a.chain, vec![BigInt::from(1), BigInt::from(0)]);
    assert_eq!(b.chain, vec![BigInt::from(0), BigInt::from(-1)]);
    assert_eq!(a.circle_degrees, vec![1]);
    let mut fundamental = vec![BigInt::from(1), BigInt::from(1)];
    fundamental.extend(std::iter::repeat_n(BigInt::from(0), a.homology.cone.circle_lengths[0]));
    let s_coords = a.homology.coordinates(&fundamental).unwrap();
    let diff: Vec<BigRational> = a.coordinates.iter().zip(&b.coordinates).map(|(x, y)| x - y).collect();
    assert_eq!(diff, s_coords);
    assert_eq!(a.homology.summary.betti(2), 2);
}

#[test]
fn double_cover_chain_doubles() {
    let t = s3();
    let s = t_itself(&t);
    let d = s.disjoint_union(&s).unwrap().pushforward_class(Ring::Q).unwrap();
    assert_eq!(d.chain[0], BigInt::from(2));
    let one = s.pushforward_class(Ring::Q).unwrap();
    let two: Vec<BigRational> = one.coordinates.iter().map(|c| c * BigRational::from_integer(2.into())).collect();
    assert_eq!(d.coordinates, two);
}

#[test]
fn t_itself_is_in_perfect_standard_form() {
    let t = s3();
    let r = t_itself(&t).standard_form_report();
    assert!(r.is_perfect(), "{r:?}");
}

#[test]
fn union_of_t_and_sigma() {
    let t = s3();
    let s = t_and_sigma(&t);
    let r = s.standard_form_report();
    assert!(r.non_folded && r.orientation_perfect && r.monotone);
    assert_eq!(s.degree().n, Some(2));
}

#[test]
fn collapse_of_t_itself_is_the_cellulation() {
    let t = s3();
    let bar = t_itself(&t).collapse();
    let x = &bar.complex;
    assert_eq!((x.num_vertices(), x.num_edges(), x.num_faces()), (1, 5, 1));
    let mapped: Vec<_> = x.face(0).word.iter().map(|l| crate::cellcx::Letter { edge: bar.edge_map[l.edge], inverse: l.inverse }).collect();
    assert_eq!(mapped, t.complex.face(bar.face_map[0]).word);
}

#[test]
fn single_vertex_disc_collapses_to_a_point() {
    let t = s3();
    let pieces = Pieces { vpieces: vec![VPiece { name: "D".into(), vertex: 0, slots: vec![] }], ..Pieces::default() };
    let s = AdmissibleSurface::new(t, Arc::new(vec![]), pieces).unwrap();
    let bar = s.collapse();
    assert_eq!(bar.complex.num_vertices(), 1);
    assert_eq!(bar.complex.num_edges(), 0);
    assert_eq!(s.euler_characteristic(), 1);
    assert!(!s.standard_form_report().disc_sphere_free);
}

#[test]
fn figlnk_has_disconnected_link() {
    let t = target(fan_disc());
    let s = figlnk(&t);
    let r = s.standard_form_report();
    assert!(!r.connected_links);
    let o = t.complex.vertex_id("o").unwrap();
    assert_eq!(r.disconnected_links.len(), 1);
    assert_eq!(s.vpieces()[r.disconnected_links[0]].vertex, o);
    assert!(!r.non_folded);
}

#[test]
fn fold_fixture_is_folded() {
    let t = target(torus());
    let s = fold(&t);
    let r = s.standard_form_report();
    assert!(!r.non_folded);
    assert!(!r.orientation_perfect);
    assert_eq!(s.euler_characteristic(), 1);
}

#[test]
fn wrong_edge_is_rejected() {
    let t = s3();
    let mut p = t_itself(&t).into_pieces();
    let k = p.fpieces[0].sides.len() - 1;
    p.fpieces[0].sides.swap(0, k);
    let err = AdmissibleSurface::new(t.clone(), boundary_loop_c(&t.complex), p).unwrap_err();
    assert!(matches!(err, AdmError::WrongEdge(_)), "{err:?}");
}

#[test]
fn boundary_mismatch_is_rejected() {
    let t = s3();
    let mut p = t_itself(&t).into_pieces();
    p.assignments[0].degree = 2;
    let err = AdmissibleSurface::new(t.clone(), boundary_loop_c(&t.complex), p).unwrap_err();
    assert!(matches!(err, AdmError::BoundaryMismatch(_)));
}

#[test]
fn non_involutive_gluing_is_rejected() {
    let t = s3();
    let mut p = t_itself(&t).into_pieces();
    let extra = p.vpieces[0].slots[0];
    p.vpieces[0].slots.push(extra);
    let err = AdmissibleSurface::new(t.clone(), boundary_loop_c(&t.complex), p).unwrap_err();
    assert!(matches!(err, AdmError::NonInvolutive(_)));
}

#[test]
fn homotopy_certificate_replaces_word_equality() {
    // The boundary of T-itself reads c⁻¹, homologous to 2·c⁻¹ - ∂(-f1).
    let t = s3();
    let mut p = t_itself(&t).into_pieces();
    let loops = Arc::new(vec![NamedLoop { name: "w".into(), edge_loop: EdgeLoop::new(t.complex.parse_word("c-").unwrap(), 1) }]);
    p.assignments[0].homotopy.insert(0, 0);
    p.assignments[0].homotopy.clear();
    p.assignments[0].degree = 2;
    p.assignments[0].homotopy.insert(0, -1);
    let s = AdmissibleSurface::new(t.clone(), loops, p).unwrap();
    let push = s.pushforward_class(Ring::Q).unwrap();
    assert_eq!(push.chain, vec![BigInt::from(2), BigInt::from(0)]);
}

#[test]
fn adm_round_trip() {
    for (t, s) in [
        (s3(), None),
        (target(fan_disc()), Some(0)),
        (target(torus()), Some(1)),
    ] {
        let s = match s {
            None => t_itself(&t),
            Some(0) => figlnk(&t),
            _ => fold(&t),
        };
        let text = print_adm(&s);
        let back = parse_adm(t.clone(), &text).unwrap();
        assert_eq!(back, s, "{text}");
        assert_eq!(print_adm(&back), text);
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let t = s3();
    let err = parse_adm(t.clone(), "loop w = c-\nhandle h over zz\n").unwrap_err();
    assert_eq!(err, AdmError::Parse { line: 2, msg: "unknown edge `zz`".into() });
}

#[test]
fn target_must_be_oriented_surface() {
    assert_eq!(Target::new(projective_plane()).unwrap_err(), AdmError::TargetNotOrientable);
}
