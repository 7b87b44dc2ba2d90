mod common;

use std::collections::BTreeSet;

use corefacial::fccp::{solve_fccp, CoreClass, FccpInstance};
use corefacial::generate::{candidate_pairs, graphs_up_to_isomorphism, small_biconnected_planar};
use corefacial::oracle::{brute_force_rotation_systems, check_requirements, fccp_oracle, fccp_witness, planar_rotation_systems, OracleLimits, DEFAULT_BUDGET};
use corefacial::planarity::planar_embedding;
use corefacial::spqr::SpqrTree;
use corefacial::{Dart, Embedding, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{graph, spqr_oracle};

fn reflection_classes(embs: &[Embedding]) -> BTreeSet<Vec<Vec<Dart>>> {
    embs.iter().map(Embedding::reflection_key).collect()
}

#[test]
fn planarity_agrees_with_enumeration_on_connected_graphs() {
    for n in 1..=6 {
        for edges in graphs_up_to_isomorphism(n) {
            let g = Graph::from_edges(n, &edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            let enumerated = !planar_rotation_systems(&g, DEFAULT_BUDGET).unwrap().is_empty();
            assert_eq!(planar_embedding(&g).unwrap().is_some(), enumerated, "{edges:?}");
        }
    }
}

#[test]
fn three_enumerators_agree_up_to_reflection() {
    for g in small_biconnected_planar(6) {
        let grown = planar_rotation_systems(&g, DEFAULT_BUDGET).unwrap();
        let raw = brute_force_rotation_systems(&g);
        assert_eq!(grown.len(), raw.len(), "{:?}", g.edges());
        let classes = reflection_classes(&raw);
        assert_eq!(reflection_classes(&grown), classes);
        let from_tree = SpqrTree::build(&g).unwrap().enumerate_planar_embeddings();
        assert_eq!(from_tree.len(), classes.len(), "{:?}", g.edges());
        assert_eq!(reflection_classes(&from_tree), classes);
    }
}

#[test]
fn small_embedding_counts() {
    let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert_eq!(planar_rotation_systems(&k4, DEFAULT_BUDGET).unwrap().len(), 2);
    assert_eq!(SpqrTree::build(&k4).unwrap().enumerate_planar_embeddings().len(), 1);
    // the chord splits C4 into two triangles; reflection is the only freedom
    let c4_chord = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
    assert_eq!(planar_rotation_systems(&c4_chord, DEFAULT_BUDGET).unwrap().len(), 2);
    assert_eq!(SpqrTree::build(&c4_chord).unwrap().enumerate_planar_embeddings().len(), 1);
    let theta4 = graph(6, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1)]);
    assert_eq!(SpqrTree::build(&theta4).unwrap().enumerate_planar_embeddings().len(), 3);
}

#[test]
fn both_deciders_agree_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for g in small_biconnected_planar(6) {
        for _ in 0..20 {
            let classes: Vec<CoreClass> = (0..g.edge_count())
                .map(|_| if rng.gen_bool(0.4) { CoreClass::E2 } else { CoreClass::E1 })
                .collect();
            let candidates = candidate_pairs(&g, &classes);
            let w = rng.gen_range(0..=3).min(candidates.len());
            let pairs = candidates.choose_multiple(&mut rng, w).copied().collect();
            let inst = FccpInstance::new(g.clone(), classes, pairs).unwrap();
            let oracle = fccp_oracle(&inst).unwrap();
            assert_eq!(spqr_oracle(&inst), oracle, "{inst:?}");
            assert_eq!(solve_fccp(&inst).unwrap(), oracle, "{inst:?}");
        }
    }
}

#[test]
fn restriction_faces_match_merged_faces() {
    for g in small_biconnected_planar(5) {
        let m = g.edge_count();
        for emb in planar_rotation_systems(&g, DEFAULT_BUDGET).unwrap() {
            for mask in 0u32..1 << m {
                let keep: Vec<bool> = (0..m).map(|e| mask >> e & 1 == 1).collect();
                let regions = emb.regions(&keep);
                let restricted = emb.restrict(&keep);
                let traced = restricted.faces();
                let counted: usize = (0..regions.count()).map(|r| regions.boundary(r).len()).sum();
                assert_eq!(counted, traced.len());
                // an edge-free restriction leaves a single region
                if mask == 0 {
                    assert_eq!(regions.count(), 1);
                }
                if restricted_is_connected(&g, &keep) && mask != 0 {
                    assert_eq!(regions.count(), traced.len());
                }
                for v in g.vertices() {
                    assert!(!regions.of_vertex(v).is_empty());
                }
            }
        }
    }
}

fn restricted_is_connected(g: &Graph, keep: &[bool]) -> bool {
    let (h, _) = g.edge_subgraph((0..g.edge_count()).filter(|&e| keep[e]));
    let present: Vec<usize> = h.vertices().filter(|&v| h.degree(v) > 0).collect();
    let Some(&start) = present.first() else { return true };
    let mut seen = vec![false; h.vertex_count()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in h.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    present.iter().all(|&v| seen[v])
}

#[test]
fn witnesses_satisfy_every_pair() {
    let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    let inst = FccpInstance::new(c4, vec![CoreClass::E1; 4], vec![(0, 2)]).unwrap();
    let witness = fccp_witness(&inst, OracleLimits::default()).unwrap().unwrap();
    assert_eq!(check_requirements(&witness, &inst.classes, &inst.pairs), (vec![(0, 2)], vec![]));
    assert_eq!(check_requirements(&witness, &inst.classes, &[]), (vec![], vec![]));
}
