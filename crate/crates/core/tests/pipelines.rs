use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use plumbline::surfaces::{
    embed_in_connected, embed_in_plumbing, make_immersed_disc, make_plumbing, AbstractSurface, PlumbingTree,
    SurfaceComponent,
};
use plumbline::theorems::{
    certify_norman, certify_slice_in_plumbing, en_bound, k3_plumbing, verify_certificate, Manifold, Verdict,
};
use plumbline::trees::random::random_tree;
use plumbline::trees::Tree;
use plumbline::tubing::{classify, euler_characteristic, excise, orient_result, tube, TubingError};
use plumbline::KnotRecord;

#[test]
fn k3_excision_and_tubing_arithmetic() {
    let plumbing = make_plumbing(&k3_plumbing());
    let (t, pe) = embed_in_plumbing(&plumbing).unwrap();
    let disc = make_immersed_disc(21);
    let de = embed_in_connected(&disc, &t).unwrap();
    let d = excise(&disc, &de).unwrap();
    let p = excise(&plumbing, &pe).unwrap();
    // one unit of chi per lift component, 22 of them
    assert_eq!(d.surface.euler_characteristic(), 1 - 22);
    assert_eq!(d.circles.len(), 22);
    assert_eq!(p.surface.components, vec![SurfaceComponent::disc(); 22]);
    let r = tube(&d, &p).unwrap();
    assert_eq!(r.surface.euler_characteristic(), -21 + 22);
    assert!(r.is_disc());
}

#[test]
fn padded_discs_keep_their_spare_double_points() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(2..=20);
        let pad = rng.gen_range(0..4);
        let plumbing = make_plumbing(&PlumbingTree::spheres(random_tree(&mut rng, n)));
        let (t, pe) = embed_in_plumbing(&plumbing).unwrap();
        let disc = make_immersed_disc(n - 1 + pad);
        let de = embed_in_connected(&disc, &t).unwrap();
        let r = tube(&excise(&disc, &de).unwrap(), &excise(&plumbing, &pe).unwrap()).unwrap();
        assert_eq!(r.double_points, pad);
        assert_eq!(r.surface.euler_characteristic(), r.chi_before - 2 * n as i64);
        assert_eq!(r.surface.components, vec![SurfaceComponent::disc()]);
    }
}

#[test]
fn spheres_on_single_tubes_always_orient() {
    let plumbing = make_plumbing(&PlumbingTree::spheres(Tree::path(3)));
    let (t, pe) = embed_in_plumbing(&plumbing).unwrap();
    let disc = make_immersed_disc(2);
    let de = embed_in_connected(&disc, &t).unwrap();
    let r = tube(&excise(&disc, &de).unwrap(), &excise(&plumbing, &pe).unwrap()).unwrap();
    assert!(matches!(orient_result(&r, None, None), Err(TubingError::Unoriented)));
    let left = vec![1; r.left_circles];
    let right = vec![1; r.right_circles];
    assert!(orient_result(&r, Some(&left), Some(&right)).unwrap().orientation_consistent);
    // three annuli meet the single disc piece; flipping one breaks nothing
    // by itself, since each sphere hangs on one tube
    let mut flipped = right.clone();
    flipped[0] = -1;
    assert!(orient_result(&r, Some(&left), Some(&flipped)).is_ok());
}

#[test]
fn orientation_conflict_on_a_cycle_of_tubes() {
    // a one-vertex tree in two discs: the two lift pieces of each disc lie
    // on the same component, so two annuli join the same pair of pieces
    let t = plumbline::trees::LBTree::single_vertex(0);
    let a = make_immersed_disc(1);
    let ea = excise(&a, &embed_in_connected(&a, &t).unwrap()).unwrap();
    let r = tube(&ea, &ea).unwrap();
    assert!(orient_result(&r, Some(&[1, 1]), Some(&[1, 1])).is_ok());
    match orient_result(&r, Some(&[1, 1]), Some(&[1, -1])) {
        Err(TubingError::OrientationConflict(msg)) => assert!(msg.contains("left")),
        other => panic!("expected a conflict, got {other:?}"),
    }
}

#[test]
fn classification_examples() {
    let sphere = AbstractSurface::new(vec![SurfaceComponent::closed(0)]);
    assert_eq!(euler_characteristic(&sphere).unwrap(), 2);
    let disc = AbstractSurface::new(vec![SurfaceComponent::disc()]);
    let c = classify(&disc).unwrap();
    assert_eq!((c.genus, c.boundary, c.components), (0, 1, 1));
    let g2 = AbstractSurface::new(vec![SurfaceComponent { genus: 2, boundary: 1, orientable: true }]);
    assert_eq!(euler_characteristic(&g2).unwrap(), -3);
    let rp2 = AbstractSurface::new(vec![SurfaceComponent { genus: 1, boundary: 0, orientable: false }]);
    assert_eq!(euler_characteristic(&rp2), Err(TubingError::NonOrientable));
}

#[test]
fn slice_in_random_plumbings() {
    let mut rng = StdRng::seed_from_u64(99);
    for _ in 0..40 {
        let n = rng.gen_range(2..=40);
        let m = Manifold::custom("random", PlumbingTree::spheres(random_tree(&mut rng, n)));
        let c4 = rng.gen_range(0..n as u32 + 3);
        let cert = certify_slice_in_plumbing(&KnotRecord::new("K", None, Some(c4), None), &m).unwrap();
        if (c4 as usize) < n {
            assert_eq!(cert.verdict, Verdict::Slice);
            assert!(cert.reports_pass());
        } else {
            assert_eq!(cert.verdict, Verdict::NotCertified);
        }
        assert!(verify_certificate(&cert.to_json()).unwrap().passed());
    }
}

#[test]
fn e5_certifies_54() {
    let m = Manifold::elliptic(5).unwrap();
    assert_eq!(m.sphere_count(), Some(en_bound(5).unwrap() as usize + 1));
    let yes = certify_slice_in_plumbing(&KnotRecord::new("K", None, Some(54), None), &m).unwrap();
    assert_eq!(yes.verdict, Verdict::Slice);
    let no = certify_slice_in_plumbing(&KnotRecord::new("K", None, Some(55), None), &m).unwrap();
    assert_eq!(no.verdict, Verdict::NotCertified);
}

#[test]
fn positive_genus_plumbing_is_rejected() {
    let p = PlumbingTree::new(Tree::path(2), vec![0, 1], Vec::new()).unwrap();
    let r = certify_slice_in_plumbing(&KnotRecord::new("K", Some(1), None, None), &Manifold::custom("P", p));
    assert!(r.is_err());
}

#[test]
fn norman_chi_oracle() {
    for (g, u) in [(2u32, 3u32), (0, 1), (5, 7)] {
        let cert = certify_norman(&KnotRecord::new("K", Some(u), None, None), &Manifold::zero_sphere(g, 0)).unwrap();
        let r = &cert.run.as_ref().unwrap().tubing;
        // disc with u points loses u + 1; u sphere discs; S* minus a disc
        let chi = (1 - (i64::from(u) + 1)) + i64::from(u) + (1 - 2 * i64::from(g));
        assert_eq!(r.surface.euler_characteristic(), chi);
        assert_eq!(r.surface.boundary_count(), 1);
    }
}
