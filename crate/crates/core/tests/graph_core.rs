mod common;

use monodimer::graph::{
    canonical_orientation, cycle_graph, is_pfaffian, path_graph, pfaffian_orientation, random_pfaffian_orientation,
    PlaneGraph,
};
use monodimer::model::{build_K, edge_symbols, partition_bruteforce, ModelGraph};
use monodimer::poly::{det_fraction_free, det_numeric, MPoly};
use monodimer::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lattice() -> impl Strategy<Value = PlaneGraph> {
    (2usize..=4, 2usize..=4).prop_flat_map(|(r, c)| {
        (
            proptest::collection::vec(any::<bool>(), r * (c - 1)),
            proptest::collection::vec(any::<bool>(), (r - 1) * c),
            proptest::collection::vec(0u8..3, (r - 1) * (c - 1)),
        )
            .prop_map(move |(h, v, d)| common::lattice_graph(r, c, &h, &v, &d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_relation_per_component(g in lattice()) {
        let (_, comps) = g.components();
        prop_assert_eq!(g.bounded_faces().len() + g.n() + comps, g.num_edges() + 2 * comps);
        prop_assert_eq!(g.region_count(), g.bounded_faces().len() + 1);
    }

    #[test]
    fn every_dart_lies_on_one_face(g in lattice()) {
        let total: usize = g.faces().iter().map(|f| f.len()).sum();
        prop_assert_eq!(total, 2 * g.num_edges());
    }

    #[test]
    fn constructed_orientations_are_pfaffian(g in lattice(), seed in any::<u64>()) {
        prop_assume!(g.is_connected());
        prop_assert!(is_pfaffian(&g, &pfaffian_orientation(&g).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(is_pfaffian(&g, &random_pfaffian_orientation(&g, &mut rng).unwrap()));
    }

    #[test]
    fn pure_dimer_determinant_is_matching_count_squared(g in lattice()) {
        prop_assume!(g.is_connected() && g.n() <= 12);
        let o = pfaffian_orientation(&g).unwrap();
        let m = ModelGraph::from_plane(&g, &o, &MPoly::var("x")).unwrap();
        let mut pt = std::collections::HashMap::new();
        for v in m.universe().iter() {
            pt.insert(v.clone(), if v == "x" { 0.0 } else { 1.0 });
        }
        let det = det_numeric(&build_K(&m), &pt).unwrap();
        let pm = common::perfect_matchings(g.n(), g.edges()) as f64;
        prop_assert!((det - pm * pm).abs() < 1e-8 * (1.0 + pm * pm));
    }

    #[test]
    fn three_routes_to_the_partition_function(
        g in lattice(),
        seed in any::<u64>(),
        values in proptest::collection::vec(0.25f64..2.0, 40),
    ) {
        prop_assume!(g.is_connected() && g.n() <= 12);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = random_pfaffian_orientation(&g, &mut rng).unwrap();
        let vertex: Vec<MPoly> = (0..g.n()).map(|v| MPoly::var(&format!("x{v}"))).collect();
        let m = ModelGraph::new(g.n(), g.edges().to_vec(), o.clone(), vertex, edge_symbols(g.edges())).unwrap();
        let det = det_fraction_free(&build_K(&m));
        prop_assert_eq!(partition_bruteforce(&m).unwrap(), det.clone());

        let x: Vec<f64> = (0..g.n()).map(|v| values[v]).collect();
        let a: Vec<f64> = (0..g.num_edges()).map(|e| values[(g.n() + e) % values.len()]).collect();
        let mut pt = std::collections::HashMap::new();
        for v in 0..g.n() {
            pt.insert(format!("x{v}"), x[v]);
        }
        for e in 0..g.num_edges() {
            pt.insert(m.edge_weight(e).vars()[0].clone(), a[e]);
        }
        let want = common::loop_vertex_sum(g.n(), g.edges(), &o, &x, &a);
        let got = det.eval_f64(&pt).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()), "{} vs {}", got, want);
    }

    #[test]
    fn json_round_trip(g in lattice()) {
        let o = canonical_orientation(&g);
        let (back, bo) = PlaneGraph::from_json(&g.to_json(Some(&o))).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.coords(), g.coords());
        let bo = bo.unwrap();
        prop_assert_eq!(bo.pairs(), o.pairs());
    }
}

#[test]
fn crossing_edges_are_rejected() {
    let coords = vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
    let err = PlaneGraph::new(4, coords, vec![(0, 1), (2, 3)]).unwrap_err();
    assert!(matches!(err, Error::Embedding(_)), "{err:?}");
}

#[test]
fn vertex_on_edge_is_rejected() {
    let coords = vec![[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]];
    assert!(PlaneGraph::new(3, coords, vec![(0, 1)]).is_err());
}

#[test]
fn wheel_enclosure_and_clockwise() {
    let mut coords: Vec<[f64; 2]> = (0..6)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / 6.0;
            [t.cos(), t.sin()]
        })
        .collect();
    coords.push([0.0, 0.0]);
    let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.extend((0..6).map(|i| (i, 6)));
    let g = PlaneGraph::new(7, coords, edges).unwrap();
    let rim: Vec<usize> = (0..6).collect();
    assert_eq!(g.enclosed_vertex_count(&rim).unwrap(), 1);
    assert!(!g.is_clockwise(&rim));
    let back: Vec<usize> = rim.iter().rev().copied().collect();
    assert!(g.is_clockwise(&back));
    assert_eq!(g.bounded_faces().len(), 6);
    assert!(is_pfaffian(&g, &pfaffian_orientation(&g).unwrap()));
}

#[test]
fn canonical_orientation_of_paths_and_even_cycles() {
    let p = path_graph(5).unwrap();
    assert!(is_pfaffian(&p, &canonical_orientation(&p)));
    assert!(p.is_natural_path());
    for n in [4, 6, 8] {
        let c = cycle_graph(n).unwrap();
        let o = pfaffian_orientation(&c).unwrap();
        assert!(is_pfaffian(&c, &o));
        assert!(is_pfaffian(&c, &o.reversed()));
        let mut flags: Vec<bool> = c.edges().iter().enumerate().map(|(e, &(u, _))| o.tail(e) == u).collect();
        flags[0] = !flags[0];
        assert!(!is_pfaffian(&c, &monodimer::graph::Orientation::from_flags(c.edges(), &flags)));
    }
}

#[test]
fn disconnected_graph_has_no_constructed_orientation() {
    let g = PlaneGraph::new(4, vec![[0.0, 0.0], [1.0, 0.0], [5.0, 0.0], [6.0, 0.0]], vec![(0, 1), (2, 3)]).unwrap();
    assert_eq!(pfaffian_orientation(&g).unwrap_err(), Error::Disconnected);
    assert_eq!(g.faces().iter().filter(|f| f.is_outer).count(), 2);
}
