use plbea::generators::{generate, gen_chung_lu, load_edge_list, GenSpec};
use plbea::plb::{bucket_counts, fit_c1};
use plbea::Error;

#[test]
fn pa_graphs_are_connected_with_minimum_degree() {
    for seed in 0..10 {
        for m in 1..=3 {
            let g = generate(&GenSpec::pa(200, m, seed)).unwrap();
            assert_eq!(g.n(), 200);
            assert!(g.is_connected());
            assert!(g.degrees().all(|d| d >= m));
            assert_eq!(g.degree_sum(), 2 * g.m());
            assert_eq!(g.m(), m * (m + 1) / 2 + m * (200 - m - 1));
        }
    }
}

#[test]
fn pa_oldest_vertex_is_usually_a_hub() {
    let hits = (0..20)
        .filter(|&seed| {
            let g = generate(&GenSpec::pa(500, 2, seed)).unwrap();
            let mut degrees: Vec<usize> = g.degrees().collect();
            degrees.sort_unstable_by(|a, b| b.cmp(a));
            g.degree(0).unwrap() >= degrees[g.n() / 10 - 1]
        })
        .count();
    println!("oldest vertex in the top degree decile in {hits}/20 runs");
    assert!(hits >= 10);
}

#[test]
fn chung_lu_histograms_decrease() {
    let mut good = 0;
    for seed in 0..20 {
        let g = gen_chung_lu(&GenSpec::chung_lu(2000, 2.5, seed)).unwrap();
        assert!(g.degrees().all(|d| d > 0));
        let c1 = fit_c1(&g, 2.5, 0.0).unwrap();
        let counts: Vec<usize> = bucket_counts(&g).iter().map(|b| b.count).collect();
        let decreasing = counts.iter().skip(2).zip(counts.iter().skip(3)).all(|(a, b)| b <= a);
        if c1.is_finite() && decreasing {
            good += 1;
        }
    }
    assert!(good >= 18, "{good}/20 seeds");
}

#[test]
fn chung_lu_rejects_light_tails() {
    assert!(matches!(gen_chung_lu(&GenSpec::chung_lu(10, 2.0, 1)), Err(Error::Usage(_))));
}

#[test]
fn edge_list_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "# comment\n0 1\n1 2\n").unwrap();
    let g = load_edge_list(&path).unwrap();
    assert_eq!((g.n(), g.m()), (3, 2));
    std::fs::write(&path, "0 1\n2 2\n").unwrap();
    assert!(matches!(load_edge_list(&path), Err(Error::Parse { line: 2, .. })));
    std::fs::write(&path, "0 x\n").unwrap();
    assert!(matches!(load_edge_list(&path), Err(Error::Parse { line: 1, .. })));
}
