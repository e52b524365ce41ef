//! Network features of the article link graph.
//!
//! - `pagerank`: power iteration with uniform teleport; dangling nodes spread
//!   their mass uniformly.
//! - `assortativity_X_Y(v)`: X-degree of `v` divided by the mean Y-degree of
//!   its Y-neighbours, where the in-neighbours of `v` are its predecessors
//!   (articles citing `v`) and the out-neighbours its successors.
//! - `local_clustering`: linked pairs among the undirected neighbours of `v`
//!   over all pairs, an undirected edge existing if either direction does.
//! - `reciprocity`: in-degree over out-degree.
//! - `link_count`: out-degree plus red links; `translation_count`: number of
//!   other language editions.
//!
//! Every ratio with a zero denominator is `0.0`.

use std::collections::HashSet;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::LinkGraph;
use crate::feature::FeatureVector;
use crate::par::{self, Execution};
use crate::ratio;

pub const NETWORK_FEATURES: [&str; 11] = [
    "pagerank",
    "in_degree",
    "out_degree",
    "assortativity_in_in",
    "assortativity_in_out",
    "assortativity_out_in",
    "assortativity_out_out",
    "local_clustering",
    "reciprocity",
    "link_count",
    "translation_count",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PageRankParams {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams { damping: 0.85, tol: 1e-10, max_iter: 200 }
    }
}

/// PageRank by node index. Empty graphs give an empty vector.
pub fn pagerank(g: &LinkGraph, params: PageRankParams) -> Vec<f64> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let nf = n as f64;
    let d = params.damping;
    let mut pr = vec![1.0 / nf; n];
    for _ in 0..params.max_iter {
        let dangling: f64 = (0..n).filter(|&i| g.out_degree(i) == 0).map(|i| pr[i]).sum();
        let base = (1.0 - d) / nf + d * dangling / nf;
        let next: Vec<f64> = (0..n)
            .map(|v| {
                let inflow: f64 = g.predecessors(v).iter().map(|&u| pr[u] / g.out_degree(u) as f64).sum();
                base + d * inflow
            })
            .collect();
        let change: f64 = pr.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        pr = next;
        if change < params.tol {
            break;
        }
    }
    pr
}

/// Per-node metrics, indexed like the graph's nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphMetrics {
    pub pagerank: f64,
    pub in_degree: usize,
    pub out_degree: usize,
    pub assortativity_in_in: f64,
    pub assortativity_in_out: f64,
    pub assortativity_out_in: f64,
    pub assortativity_out_out: f64,
    pub local_clustering: f64,
    pub reciprocity: f64,
    pub link_count: u64,
    pub translation_count: u64,
}

impl GraphMetrics {
    pub fn to_features(&self) -> FeatureVector {
        let mut fv = FeatureVector::with_capacity(11);
        fv.push("pagerank", self.pagerank);
        fv.push("in_degree", self.in_degree as f64);
        fv.push("out_degree", self.out_degree as f64);
        fv.push("assortativity_in_in", self.assortativity_in_in);
        fv.push("assortativity_in_out", self.assortativity_in_out);
        fv.push("assortativity_out_in", self.assortativity_out_in);
        fv.push("assortativity_out_out", self.assortativity_out_out);
        fv.push("local_clustering", self.local_clustering);
        fv.push("reciprocity", self.reciprocity);
        fv.push("link_count", self.link_count as f64);
        fv.push("translation_count", self.translation_count as f64);
        fv
    }
}

fn mean_degree(g: &LinkGraph, nodes: &[usize], in_degree: bool) -> f64 {
    let sum: usize = nodes
        .iter()
        .map(|&u| if in_degree { g.in_degree(u) } else { g.out_degree(u) })
        .sum();
    ratio(sum as f64, nodes.len() as f64)
}

fn undirected_neighbours(g: &LinkGraph, v: usize) -> Vec<usize> {
    let mut nb: Vec<usize> = g.successors(v).iter().chain(g.predecessors(v)).copied().collect();
    nb.sort_unstable();
    nb.dedup();
    nb
}

pub fn local_clustering(g: &LinkGraph, v: usize) -> f64 {
    let nb = undirected_neighbours(g, v);
    let k = nb.len();
    if k < 2 {
        return 0.0;
    }
    let set: HashSet<usize> = nb.iter().copied().collect();
    let mut links = 0usize;
    for &a in &nb {
        for &b in g.successors(a) {
            if b > a && set.contains(&b) || b < a && set.contains(&b) && !g.has_edge(b, a) {
                links += 1;
            }
        }
    }
    links as f64 / (k * (k - 1) / 2) as f64
}

fn node_metrics(g: &LinkGraph, v: usize, pagerank: f64) -> GraphMetrics {
    let ind = g.in_degree(v) as f64;
    let outd = g.out_degree(v) as f64;
    let preds = g.predecessors(v);
    let succs = g.successors(v);
    GraphMetrics {
        pagerank,
        in_degree: g.in_degree(v),
        out_degree: g.out_degree(v),
        assortativity_in_in: ratio(ind, mean_degree(g, preds, true)),
        assortativity_in_out: ratio(ind, mean_degree(g, succs, false)),
        assortativity_out_in: ratio(outd, mean_degree(g, preds, true)),
        assortativity_out_out: ratio(outd, mean_degree(g, succs, false)),
        local_clustering: local_clustering(g, v),
        reciprocity: ratio(ind, outd),
        link_count: g.out_degree(v) as u64 + g.red_links(v),
        translation_count: g.translations(v),
    }
}

/// Metrics for every node, parallel over nodes when `exec` allows.
pub fn graph_metrics(g: &LinkGraph, params: PageRankParams, exec: Execution) -> Vec<GraphMetrics> {
    let pr = pagerank(g, params);
    par::map_range(exec, g.node_count(), |v| node_metrics(g, v, pr[v]))
}

/// Writes `node_id` plus the 11 metrics as tab-separated values.
pub fn write_metrics_tsv<W: Write>(g: &LinkGraph, metrics: &[GraphMetrics], mut out: W) -> io::Result<()> {
    writeln!(out, "node_id\t{}", NETWORK_FEATURES.join("\t"))?;
    for (v, m) in metrics.iter().enumerate() {
        write!(out, "{}", g.node_id(v))?;
        for x in m.to_features().values() {
            write!(out, "\t{x}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cycle_is_uniform() {
        let g = LinkGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        for p in pagerank(&g, PageRankParams::default()) {
            assert_abs_diff_eq!(p, 1.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_edge_with_dangling_target() {
        // Solving the 2x2 system gives PR(A) = 20/57, PR(B) = 37/57.
        let g = LinkGraph::from_edges(2, &[(0, 1)]);
        let pr = pagerank(&g, PageRankParams::default());
        assert_abs_diff_eq!(pr[0], 20.0 / 57.0, epsilon = 1e-9);
        assert_abs_diff_eq!(pr[1], 37.0 / 57.0, epsilon = 1e-9);
    }

    #[test]
    fn complete_graph() {
        let edges: Vec<_> = (0..4).flat_map(|a| (0..4).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let g = LinkGraph::from_edges(4, &edges);
        for m in graph_metrics(&g, PageRankParams::default(), Execution::Sequential) {
            assert_eq!(m.local_clustering, 1.0);
            assert_eq!(m.reciprocity, 1.0);
            assert_eq!(m.assortativity_in_in, 1.0);
            assert_eq!(m.assortativity_in_out, 1.0);
            assert_eq!(m.assortativity_out_in, 1.0);
            assert_eq!(m.assortativity_out_out, 1.0);
        }
    }

    #[test]
    fn sink_and_isolated_sentinels() {
        let mut g = LinkGraph::from_edges(4, &[(0, 2), (1, 2)]);
        g.set_red_links(0, 3);
        let m = graph_metrics(&g, PageRankParams::default(), Execution::Sequential);
        assert_eq!(m[2].in_degree, 2);
        assert_eq!(m[2].reciprocity, 0.0);
        assert_eq!(m[0].link_count, 4);
        let iso = &m[3];
        assert_eq!(iso.local_clustering, 0.0);
        assert_eq!(iso.reciprocity, 0.0);
        assert_eq!(iso.assortativity_in_in, 0.0);
        assert_eq!(iso.assortativity_out_out, 0.0);
    }

    #[test]
    fn clustering_counts_each_pair_once() {
        // 0 with neighbours 1, 2; 1 <-> 2 linked both ways.
        let g = LinkGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2), (2, 1)]);
        assert_eq!(local_clustering(&g, 0), 1.0);
        let g = LinkGraph::from_edges(4, &[(0, 1), (0, 2), (3, 0), (2, 1)]);
        assert_abs_diff_eq!(local_clustering(&g, 0), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn tsv_export() {
        let g = LinkGraph::from_edges(2, &[(0, 1)]);
        let m = graph_metrics(&g, PageRankParams::default(), Execution::Sequential);
        let mut buf = Vec::new();
        write_metrics_tsv(&g, &m, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("node_id\tpagerank\t"));
    }
}
