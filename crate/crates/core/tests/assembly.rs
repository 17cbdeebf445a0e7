use std::collections::BTreeMap;

use matchstick::assemble::*;
use matchstick::fixtures::load_fixture;
use matchstick::linkage::*;
use matchstick::verify::{verify, ToleranceProfile};
use matchstick::{Error, Scalar, UnitGraph};

fn base(name: &str, n: u32) -> (UnitGraph, RingSpec) {
    let t = build_template(&load_fixture(name).unwrap()).unwrap();
    let spec = RingSpec::new(n).unwrap();
    let r = solve(&t, &spec, &t.initial_state(&spec), None).unwrap();
    let b = solved_base(&t, &r).unwrap();
    (b, spec)
}

/// Distinct vertices over all rotated copies, clustered naively at 1e-9.
fn brute_force_vertex_count(b: &UnitGraph, spec: &RingSpec, apex: &matchstick::Point) -> usize {
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for k in 0..spec.n {
        let w = &spec.omega * Scalar::from_i64(k as i64);
        for p in b.vertices() {
            pts.push(matchstick::geom::rotate(p, apex, &w).to_f64());
        }
    }
    let mut keys: BTreeMap<(i64, i64), Vec<[f64; 2]>> = BTreeMap::new();
    let mut count = 0;
    for p in pts {
        let key = ((p[0] * 1e6).floor() as i64, (p[1] * 1e6).floor() as i64);
        let hit = (-1..=1).any(|dx| {
            (-1..=1).any(|dy| {
                keys.get(&(key.0 + dx, key.1 + dy))
                    .is_some_and(|v| v.iter().any(|q| (q[0] - p[0]).hypot(q[1] - p[1]) < 1e-9))
            })
        });
        if !hit {
            count += 1;
            keys.entry(key).or_default().push(p);
        }
    }
    count
}

#[test]
fn mirror_closure_designates_38_triangles() {
    for (name, n) in [("g2", 169), ("g1", 100)] {
        let (b, _) = base(name, n);
        assert_eq!(b.triangles().len(), 38, "{name}");
    }
}

#[test]
fn g2_ring_counts_and_symmetry() {
    let (b, spec) = base("g2", 169);
    let ring = ring_assemble(&b, &spec).unwrap();
    assert_eq!(ring.triangles().len(), 6422);
    let hist = ring.degree_histogram();
    assert_eq!(hist.keys().copied().collect::<Vec<_>>(), vec![4]);
    assert_eq!(ring.num_edges(), 2 * ring.num_vertices());

    let t = build_template(&load_fixture("g2").unwrap()).unwrap();
    let r = solve(&t, &spec, &t.initial_state(&spec), None).unwrap();
    assert_eq!(
        ring.num_vertices(),
        brute_force_vertex_count(&b, &spec, &r.apex())
    );

    let defect = ring_symmetry_defect(&ring, &spec).unwrap();
    assert!(defect < Scalar::tolerance(8), "{}", defect.to_digits(3));
    for tri in ring.triangles() {
        for (a, c) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])] {
            assert!((ring.edge_length((a.min(c), a.max(c))) - 1.0).abs() < Scalar::tolerance(10));
        }
    }
}

#[test]
fn g1_ring_has_3800_triangles() {
    let (b, spec) = base("g1", 100);
    let ring = ring_assemble(&b, &spec).unwrap();
    assert_eq!(ring.triangles().len(), 3800);
    assert_eq!(ring.num_edges(), 2 * ring.num_vertices());
}

#[test]
fn base_solved_for_another_n_does_not_close() {
    let (b, _) = base("g2", 169);
    let err = ring_assemble(&b, &RingSpec::new(170).unwrap()).unwrap_err();
    assert!(matches!(err, Error::MergeFailure(_)), "{err}");
}

#[test]
fn chain_of_two_copies_is_the_ring_arc() {
    let (b, spec) = base("g2", 169);
    let chain = chain_assemble(&[
        (b.clone(), SeamOrientation::Forward),
        (b.clone(), SeamOrientation::Forward),
    ])
    .unwrap();
    let arc = ring_arc(&b, &spec, 2).unwrap();
    assert_eq!(chain.num_vertices(), arc.num_vertices());
    assert_eq!(chain.num_edges(), arc.num_edges());
    assert!(congruent(&chain, &arc, 1e-30).unwrap());
    assert!(chain.degree_histogram().get(&4).copied().unwrap_or(0) > b.degree_histogram()[&4]);
}

#[test]
fn single_piece_chain_is_unchanged() {
    let (b, _) = base("g2", 169);
    let chain = chain_assemble(&[(b.clone(), SeamOrientation::Forward)]).unwrap();
    assert_eq!(chain, b);
}

#[test]
fn empty_chain_is_an_error() {
    assert!(chain_assemble(&[]).is_err());
}

#[test]
fn adapter_has_parallel_rails_and_matches_the_g4_table() {
    let g1 = load_fixture("g1").unwrap();
    let g4 = make_adapter(&g1).unwrap();
    let (r1, r2) = rail_sets(&g4).unwrap();
    let (d1, d2) = (
        rail_direction(&g4, &r1).unwrap(),
        rail_direction(&g4, &r2).unwrap(),
    );
    let diff = (&d1 - &d2).abs();
    let pi = Scalar::pi();
    let diff = diff.clone().min(&pi - &diff);
    assert!(diff < 1e-12, "{}", diff.to_digits(3));

    let table = load_fixture("g4").unwrap();
    let (_, dev) = frame_match(&g4, &table, 1e-12)
        .unwrap()
        .expect("adapter matches the table");
    assert!(dev < 1e-12);
}

#[test]
fn adapter_mirror_is_an_involution() {
    let g4 = make_adapter(&load_fixture("g1").unwrap()).unwrap();
    let g5 = adapter_mirror(&g4).unwrap();
    assert_eq!(g5.meta_value("adapter"), Some("g5"));
    let back = adapter_mirror(&g5).unwrap();
    assert_eq!(back.meta_value("adapter"), Some("g4"));
    assert!(congruent(&back, &g4, 1e-12).unwrap());
}

#[test]
fn chains_of_g1_pieces_are_not_planar() {
    let (g1, _) = base("g1", 100);
    let g4 = make_adapter(&g1).unwrap();
    let g5 = adapter_mirror(&g4).unwrap();
    let prof = ToleranceProfile::solved();
    for pieces in [
        vec![g1.clone(), g4.clone(), g5.clone()],
        vec![g4.clone(), g4.clone()],
        vec![g1.clone(), g4, g1],
    ] {
        let chain = chain_assemble(
            &pieces
                .into_iter()
                .map(|p| (p, SeamOrientation::Forward))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(chain.meta_value("chain.transforms").is_some());
        let r = verify(&chain, &prof);
        assert!(r.verdicts.unit);
        assert!(!r.verdicts.planar);
    }
}

#[test]
fn seam_counts_must_agree() {
    let (g2, _) = base("g2", 169);
    let g4 = make_adapter(&load_fixture("g1").unwrap()).unwrap();
    let err = chain_assemble(&[
        (g2, SeamOrientation::Forward),
        (g4, SeamOrientation::Forward),
    ])
    .unwrap_err();
    assert!(matches!(err, Error::SeamMismatch(_)), "{err}");
}

#[test]
fn fixture_seams_are_not_exact_enough_to_chain() {
    // the printed tables agree to ~1e-13, far above the merge tolerance
    let g4 = load_fixture("g4").unwrap();
    let err = chain_assemble(&[
        (g4.clone(), SeamOrientation::Forward),
        (g4, SeamOrientation::Forward),
    ])
    .unwrap_err();
    assert!(matches!(err, Error::SeamMismatch(_)), "{err}");
}
