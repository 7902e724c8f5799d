use boxperfect::boxtdi::box_tdi_falsify_search;
use boxperfect::esp::{
    check_equitable_subpartition, check_strong_equitable_subpartition, find_equitable_subpartition,
    find_strong_equitable_subpartition, is_esp, CliqueMultiset, EspMode,
};
use boxperfect::graph::build_named;
use boxperfect::suite::{random_comparability, random_graph};
use boxperfect::{maximal_cliques, Budget, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_multiset(rng: &mut impl Rng, g: &Graph, b: &Budget) -> CliqueMultiset {
    let cliques = maximal_cliques(g, b).unwrap().cliques;
    let mut l = CliqueMultiset::new();
    for _ in 0..rng.gen_range(1..=6) {
        l.push(cliques[rng.gen_range(0..cliques.len())], rng.gen_range(1..=3));
    }
    l
}

#[test]
fn esp_graphs_split_clique_multisets() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut tried = 0;
    while tried < 60 {
        let (n, p) = (rng.gen_range(2..=6), rng.gen_range(0.3..0.8));
        let g = random_graph(&mut rng, n, p);
        if !is_esp(&g, EspMode::Direct, &b).unwrap().esp {
            continue;
        }
        tried += 1;
        let l = random_multiset(&mut rng, &g, &b);
        let split = find_equitable_subpartition(&g, &l, &b).unwrap().expect("multiset split");
        assert_eq!(check_equitable_subpartition(&g, &l, &split.part1, &split.part2).unwrap(), None);
    }
}

#[test]
fn comparability_graphs_split_strongly() {
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let g = random_comparability(&mut rng, n, 0.5);
        let l = random_multiset(&mut rng, &g, &b);
        let split = find_strong_equitable_subpartition(&g, &l, &b).unwrap().expect("strong split");
        assert_eq!(check_strong_equitable_subpartition(&g, &l, &split.part1, &split.part2).unwrap(), None);
    }
}

#[test]
fn s3_has_an_unsplittable_clique_set() {
    let b = Budget::default();
    let s3 = build_named("S_n", &[3]).unwrap();
    let r = is_esp(&s3, EspMode::Direct, &b).unwrap();
    assert!(!r.esp && r.witness.is_some());
}

#[test]
fn falsifier_quiet_on_esp_graphs() {
    let b = Budget { falsify_max_w: 1, ..Budget::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut tried = 0;
    while tried < 25 {
        let (n, p) = (rng.gen_range(2..=6), rng.gen_range(0.3..0.8));
        let g = random_graph(&mut rng, n, p);
        if !is_esp(&g, EspMode::Direct, &b).unwrap().esp {
            continue;
        }
        tried += 1;
        assert_eq!(box_tdi_falsify_search(&g, &b).unwrap().counterexample, None, "{g:?}");
    }
}
