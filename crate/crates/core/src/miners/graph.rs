//! Maximal clique enumeration (Bron-Kerbosch with Tomita pivoting).

use crate::bitset::BitSet;

/// Symmetric adjacency over `0..n` without self loops.
pub(crate) struct Graph {
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BitSet::empty(n); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Every maximal clique, each as ascending vertex indices, sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.adj.len();
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        self.expand(&mut Vec::new(), BitSet::full(n), BitSet::empty(n), &mut out);
        for clique in out.iter_mut() {
            clique.sort_unstable();
        }
        out.sort();
        out
    }

    fn expand(&self, current: &mut Vec<usize>, mut candidates: BitSet, mut excluded: BitSet, out: &mut Vec<Vec<usize>>) {
        if candidates.is_empty() {
            if excluded.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        let pivot = candidates
            .iter()
            .chain(excluded.iter())
            .max_by_key(|&u| candidates.intersection_len(&self.adj[u]))
            .expect("candidates is non-empty");
        let branch: Vec<usize> = candidates.iter().filter(|&v| !self.adj[pivot].contains(v)).collect();
        for v in branch {
            current.push(v);
            self.expand(
                current,
                candidates.intersection(&self.adj[v]),
                excluded.intersection(&self.adj[v]),
                out,
            );
            current.pop();
            candidates.remove(v);
            excluded.insert(v);
        }
    }
}
