use std::collections::HashMap;

/// Directed citation graph over article ids. Simple digraph: no self-loops,
/// no parallel edges.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinkGraph {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    edge_count: usize,
    red_links: Vec<u64>,
    translations: Vec<u64>,
}

/// What [`LinkGraph::add_edge`] did with an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOutcome {
    Added,
    SelfLoop,
    Duplicate,
}

impl LinkGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from `n` anonymous nodes named `"0"`, `"1"`, ...
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.add_node(&i.to_string());
        }
        for &(a, b) in edges {
            g.add_edge_idx(a, b);
        }
        g
    }

    /// Returns the node index, inserting the node if needed.
    pub fn add_node(&mut self, id: &str) -> usize {
        if let Some(&i) = self.index.get(id) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(id.to_string());
        self.index.insert(id.to_string(), i);
        self.succ.push(Vec::new());
        self.pred.push(Vec::new());
        self.red_links.push(0);
        self.translations.push(0);
        i
    }

    pub fn add_edge(&mut self, citing: &str, cited: &str) -> EdgeOutcome {
        let a = self.add_node(citing);
        let b = self.add_node(cited);
        self.add_edge_idx(a, b)
    }

    pub fn add_edge_idx(&mut self, a: usize, b: usize) -> EdgeOutcome {
        if a == b {
            return EdgeOutcome::SelfLoop;
        }
        match self.succ[a].binary_search(&b) {
            Ok(_) => EdgeOutcome::Duplicate,
            Err(pos) => {
                self.succ[a].insert(pos, b);
                let pp = self.pred[b].binary_search(&a).unwrap_or_else(|p| p);
                self.pred[b].insert(pp, a);
                self.edge_count += 1;
                EdgeOutcome::Added
            }
        }
    }

    pub fn set_red_links(&mut self, node: usize, n: u64) {
        self.red_links[node] = n;
    }

    pub fn set_translations(&mut self, node: usize, n: u64) {
        self.translations[node] = n;
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_id(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    pub fn node_ids(&self) -> &[String] {
        &self.nodes
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Sorted successor indices (articles cited by `i`).
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    /// Sorted predecessor indices (articles citing `i`).
    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.pred[i].len()
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.succ[i].len()
    }

    pub fn red_links(&self, i: usize) -> u64 {
        self.red_links[i]
    }

    pub fn translations(&self, i: usize) -> u64 {
        self.translations[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
    }
}
