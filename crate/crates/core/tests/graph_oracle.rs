//! Network features against a dense linear solve and brute-force recounts.

mod support;

use std::time::Instant;

use approx::assert_abs_diff_eq;
use support::graph::{brute_metrics, pagerank_dense, random_digraph};
use wikiqual_core::netfeat::{graph_metrics, pagerank, PageRankParams};
use wikiqual_core::{Execution, LinkGraph};

#[test]
fn twenty_random_digraphs_match_oracle() {
    let start = Instant::now();
    for seed in 0..20 {
        let (n, edges) = random_digraph(seed, 50);
        let g = LinkGraph::from_edges(n, &edges);
        assert_eq!(g.edge_count(), edges.len());

        let expected_pr = pagerank_dense(n, &edges, 0.85);
        let pr = pagerank(&g, PageRankParams::default());
        for v in 0..n {
            assert_abs_diff_eq!(pr[v], expected_pr[v], epsilon = 1e-8);
        }

        let brute = brute_metrics(n, &edges);
        let m = graph_metrics(&g, PageRankParams::default(), Execution::Sequential);
        for v in 0..n {
            assert_eq!(m[v].in_degree as f64, brute.in_degree[v]);
            assert_eq!(m[v].out_degree as f64, brute.out_degree[v]);
            let a = [
                m[v].assortativity_in_in,
                m[v].assortativity_in_out,
                m[v].assortativity_out_in,
                m[v].assortativity_out_out,
            ];
            for (x, y) in a.iter().zip(brute.assortativity[v]) {
                assert_abs_diff_eq!(*x, y, epsilon = 1e-8);
            }
            assert_abs_diff_eq!(m[v].local_clustering, brute.clustering[v], epsilon = 1e-8);
            assert_abs_diff_eq!(m[v].reciprocity, brute.reciprocity[v], epsilon = 1e-8);
            assert_eq!(m[v].link_count, m[v].out_degree as u64);
        }
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn parallel_metrics_equal_sequential() {
    let (n, edges) = random_digraph(99, 50);
    let g = LinkGraph::from_edges(n, &edges);
    let seq = graph_metrics(&g, PageRankParams::default(), Execution::Sequential);
    let par = graph_metrics(&g, PageRankParams::default(), Execution::Parallel);
    assert_eq!(seq, par);
}

#[test]
fn pagerank_sums_to_one() {
    for seed in 100..110 {
        let (n, edges) = random_digraph(seed, 30);
        let pr = pagerank(&LinkGraph::from_edges(n, &edges), PageRankParams::default());
        assert_abs_diff_eq!(pr.iter().sum::<f64>(), 1.0, epsilon = 1e-9);
    }
}
