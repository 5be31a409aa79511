use super::*;
use crate::hypercore::{turan_hypergraph, EdgeSet};
use crate::randgen::sample_gknp;
use crate::solvers::{max_cut4_exact, max_cut4_local, max_tfree_repair, Budget};
use crate::TrialSeed;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-12
}

#[test]
fn chernoff_values() {
    // 2 ln 2 - 1
    assert!(close(chernoff_c(1.0).unwrap(), 0.386_294_361_119_890_6));
    // 1.1 ln 1.1 - 0.1, below 0.1^2 / 2
    assert!(close(chernoff_c(0.1).unwrap(), 0.004_841_197_784_757_346));
    assert!(chernoff_c(1e-9).unwrap() < 1e-17);
    assert!(chernoff_c(0.0).is_err());
    assert!(chernoff_c(-1.0).is_err());
    assert!(chernoff_c(f64::NAN).is_err());
}

#[test]
fn low_pairs_examples() {
    let g = Hypergraph::complete(16, 4).unwrap();
    let part = VertexPartition::equal_parts(16, 4);
    let low = low_pairs(&g, &part, 1.0, 0.35).unwrap();
    assert!(close(low.threshold, 44.8));
    assert!(low.pairs.is_empty());
    assert_eq!(g.common_degree(0, 1, Some(&part)).unwrap(), 64);

    let empty = Hypergraph::empty(16, 4).unwrap();
    let low = low_pairs(&empty, &part, 1.0, 0.35).unwrap();
    assert_eq!(low.pairs.len(), 6);
    assert_eq!(low.max_degree, 3);
    assert_eq!(low_pairs(&empty, &part, 1.0, 0.0).unwrap().pairs.len(), 0);
}

#[test]
fn lemma12_examples() {
    let g = Hypergraph::complete(10, 4).unwrap();
    let all: Vec<u32> = (0..10).collect();
    assert_eq!(lemma12_count(&g, &[], 0.1, 1.0).unwrap(), 0);
    // 2·eps·p·n = 10 >= n - 3
    assert_eq!(lemma12_count(&g, &all, 0.5, 1.0).unwrap(), 0);
    // 2·eps·p·n = 2 < n - 3
    assert_eq!(lemma12_count(&g, &all, 0.1, 1.0).unwrap(), 120);
}

#[test]
fn decomposition_of_crossing_set_is_empty() {
    let g = sample_gknp(12, 4, 0.5, TrialSeed::derive(2, 3)).unwrap();
    let part = VertexPartition::equal_parts(12, 4);
    let f = g.sub_hypergraph(&g.crossing_edges(&part).unwrap());
    let dec = decomposition(&g, &f, &part, 0.5, &PaperConstants::paper()).unwrap();
    assert!(dec.b.iter().all(|b| b.is_empty()));
    assert!(dec.m.is_empty());
    assert!(dec.thresholds.eps1_n_below_one);
}

#[test]
fn decomposition_single_edge() {
    let part = VertexPartition::equal_parts(8, 4);
    let g = Hypergraph::new(8, 4, [[0, 1, 2, 4]]).unwrap();
    let dec = decomposition(&g, &g, &part, 0.5, &PaperConstants::paper()).unwrap();
    assert_eq!(dec.b[0].indices(), &[0]);
    assert!(dec.m.is_empty());
    assert_eq!(dec.l.edges(), &[(0, 1)]);
    // eps1·n < 1: both endpoints of the L edge qualify
    assert_eq!(dec.c, vec![0, 1]);
    assert_eq!(dec.c1, Vec::<u32>::new());
    assert_eq!(dec.b1_parts[1].indices(), &[0]);

    let other = Hypergraph::new(8, 4, [[0, 2, 4, 6]]).unwrap();
    assert!(matches!(
        decomposition(&g, &other, &part, 0.5, &PaperConstants::paper()),
        Err(ProplabError::NotSubhypergraph(_))
    ));
}

#[test]
fn prop9_examples() {
    let g = Hypergraph::complete(9, 4).unwrap();
    let v = 0;
    let w = g.edge_index(&[0, 1, 2, 3]).unwrap();
    let e = EdgeSet::new(&g, [w]).unwrap();
    let q = Hypergraph::new(9, 3, [[4, 5, 6]]).unwrap();
    let sets = prop9_sets(&g, v, &[1], &e, &q).unwrap();
    assert_eq!(sets.k_size, 1);
    assert_eq!(sets.g_set.len(), 1);

    let meets_w = Hypergraph::new(9, 3, [[3, 5, 6]]).unwrap();
    let sets = prop9_sets(&g, v, &[1], &e, &meets_w).unwrap();
    assert_eq!((sets.k_size, sets.g_set.len()), (0, 0));

    let none = Hypergraph::empty(9, 3).unwrap();
    assert_eq!(prop9_sets(&g, v, &[1], &e, &none).unwrap().k_size, 0);

    // 7 is in S but in no edge of E
    assert!(prop9_sets(&g, v, &[1, 7], &e, &q).is_err());
    // a triple through v is not in its link
    let through_v = Hypergraph::new(9, 3, [[0, 5, 6]]).unwrap();
    assert!(prop9_sets(&g, v, &[1], &e, &through_v).is_err());
}

#[test]
fn audit_on_crossing_set_and_empty_host() {
    let seed = TrialSeed::derive(7, 1);
    let g = sample_gknp(12, 4, 0.5, seed).unwrap();
    let cut = max_cut4_local(&g, seed, 3).unwrap();
    let part = cut.partition().unwrap();
    let f = g.sub_hypergraph(&g.crossing_edges(part).unwrap());
    let rep = lemma13_audit(&g, &f, part, 0.5, &PaperConstants::paper()).unwrap();
    assert_eq!(rep.b1_size, 0);
    assert!(rep.line("conclusion_non_strict").unwrap().holds);
    assert!(!rep.conditions.ii);

    let empty = Hypergraph::empty(8, 4).unwrap();
    let rep = lemma13_audit(&empty, &empty, &VertexPartition::equal_parts(8, 4), 0.5, &PaperConstants::paper())
        .unwrap();
    assert_eq!((rep.f_size, rep.g_cross, rep.m_size, rep.gadgets.total), (0, 0, 0, 0));
    assert!(rep.lines.iter().all(|l| l.lhs.is_finite() && l.rhs.is_finite()));
}

#[test]
fn audit_structural_invariants() {
    let seed = TrialSeed::derive(24, 0);
    let g = sample_gknp(16, 4, 0.4, seed).unwrap();
    let f = g.sub_hypergraph(max_tfree_repair(&g, seed, 2).unwrap().edges().unwrap());
    let part = max_cut4_local(&f, seed, 3).unwrap().partition().unwrap().clone();
    let rep = lemma13_audit(&g, &f, &part, 0.4, &PaperConstants::paper()).unwrap();
    assert_eq!(rep.gadgets.both_in_f, 0);
    assert_eq!(rep.gadgets.hitting_m, rep.gadgets.total);
    let sizes = rep.b_sizes_given;
    assert_eq!(rep.b1_size, *sizes.iter().max().unwrap());
    assert!(rep.lines.iter().all(|l| l.lhs.is_finite() && l.rhs.is_finite()));
    let f_in_g = g.edge_set_of(&f).unwrap();
    assert!(rep.decomposition.m.is_disjoint(&f_in_g));
}

#[test]
fn audit_rejects_t_copy() {
    let g = Hypergraph::complete(8, 4).unwrap();
    let part = VertexPartition::equal_parts(8, 4);
    assert!(matches!(
        lemma13_audit(&g, &g, &part, 1.0, &PaperConstants::paper()),
        Err(ProplabError::NotTFree(_))
    ));
}

#[test]
fn gap_examples() {
    let consts = PaperConstants::paper();
    let g = sample_gknp(10, 4, 0.6, TrialSeed::derive(3, 3)).unwrap();
    let q = max_cut4_exact(&g, Budget::unlimited()).unwrap();
    let part = q.partition().unwrap();
    let rep = lemma14_gap(&g, part, 0.6, &consts, q.value, true).unwrap();
    if rep.low_pairs == 0 {
        assert_eq!(rep.gap, 0.0);
        assert_eq!(rep.verdict, GapVerdict::Holds);
    }
    let lopsided = VertexPartition::new(4, vec![0, 0, 0, 0, 0, 0, 0, 1, 2, 3]).unwrap();
    let rep = lemma14_gap(&g, &lopsided, 0.6, &consts, q.value, true).unwrap();
    assert!(rep.gap >= 0.0 || rep.verdict == GapVerdict::Violated);
    let low_q = lemma14_gap(&g, &lopsided, 0.6, &consts, 0, false).unwrap();
    assert_ne!(low_q.verdict, GapVerdict::Violated);
}

#[test]
fn prop10_examples() {
    let g = Hypergraph::complete(16, 4).unwrap();
    let part = VertexPartition::equal_parts(16, 4);
    let f = turan_hypergraph(16, 4).unwrap();
    let rep = prop10_check(&g, &f, &part, 1.0, 0.01).unwrap();
    assert_eq!(rep.f_size, 256);
    assert!(rep.size_holds && rep.balanced);
    assert!(close(rep.bound, (3.0 / 32.0 - 0.01) * 1820.0));

    let empty = Hypergraph::empty(16, 4).unwrap();
    assert!(!prop10_check(&g, &empty, &part, 1.0, 0.01).unwrap().size_holds);
    assert!(prop10_check(&g, &empty, &part, 1.0, 3.0 / 32.0).unwrap().size_holds);
}
