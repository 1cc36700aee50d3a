//! Bipartite multigraphs, connected components and the tree census.

use serde::Serialize;

use crate::error::{Error, Result};

/// A bipartite multigraph on `m` left and `n` right vertices.
///
/// Edges are kept in insertion order; position `k` is edge label `k`.
/// Parallel edges and isolated vertices are both allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BipartiteMultigraph {
    m: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteMultigraph {
    pub fn new(m: usize, n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(l, r)) = edges.iter().find(|&&(l, r)| l >= m || r >= n) {
            return Err(Error::input(format!(
                "edge ({l}, {r}) out of range for a {m} x {n} bipartite graph"
            )));
        }
        Ok(Self { m, n, edges })
    }

    /// Builds without range checks; callers guarantee validity.
    pub(crate) fn from_parts_unchecked(m: usize, n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.iter().all(|&(l, r)| l < m && r < n));
        Self { m, n, edges }
    }

    pub fn edgeless(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            edges: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edge slots, counting parallel copies.
    pub fn t(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.m];
        for &(l, _) in &self.edges {
            d[l] += 1;
        }
        d
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, r) in &self.edges {
            d[r] += 1;
        }
        d
    }

    /// Minimum degree on each side; `None` for an empty side.
    pub fn min_degree(&self) -> (Option<usize>, Option<usize>) {
        (
            self.left_degrees().into_iter().min(),
            self.right_degrees().into_iter().min(),
        )
    }

    /// Largest vertex degree over both sides (0 when there are no vertices).
    pub fn max_degree(&self) -> usize {
        let l = self.left_degrees().into_iter().max().unwrap_or(0);
        let r = self.right_degrees().into_iter().max().unwrap_or(0);
        l.max(r)
    }

    /// True when every vertex on both sides has degree at least one.
    pub fn covers_all_vertices(&self) -> bool {
        covers(self.m, self.n, &self.edges)
    }

    /// True when some edge slot repeats another.
    pub fn has_parallel_edges(&self) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// The edge multiset in canonical (sorted) order.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted
    }

    /// Connected components; the empty graph is connected by convention.
    pub fn is_connected(&self) -> bool {
        if self.m + self.n == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.m + self.n);
        let mut merges = 0;
        for &(l, r) in &self.edges {
            if uf.union(l, self.m + r) {
                merges += 1;
            }
        }
        merges + 1 == self.m + self.n
    }

    pub fn components(&self) -> ComponentSummary {
        ComponentSummary::of(self)
    }
}

pub(crate) fn covers(m: usize, n: usize, edges: &[(usize, usize)]) -> bool {
    let mut left = vec![false; m];
    let mut right = vec![false; n];
    let (mut seen_l, mut seen_r) = (0, 0);
    for &(l, r) in edges {
        if !left[l] {
            left[l] = true;
            seen_l += 1;
        }
        if !right[r] {
            right[r] = true;
            seen_r += 1;
        }
    }
    seen_l == m && seen_r == n
}

/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `x` and `y`; returns false if already merged.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

/// One connected component: `left` vertices, `right` vertices, `edges` slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Component {
    pub left: usize,
    pub right: usize,
    pub edges: usize,
    /// `edges == left + right - 1`. A connected multigraph with that many
    /// edge slots has no cycle, so it has no parallel edge either.
    pub is_tree: bool,
}

impl Component {
    pub fn size(&self) -> usize {
        self.left + self.right
    }
}

/// All components of a graph plus derived statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub m: usize,
    pub n: usize,
    pub t: usize,
    /// In order of each component's lowest vertex (left vertices first).
    pub components: Vec<Component>,
    pub largest_size: usize,
    pub second_largest_size: usize,
    pub isolated_left: usize,
    pub isolated_right: usize,
}

impl ComponentSummary {
    pub fn of(g: &BipartiteMultigraph) -> Self {
        let (m, n) = (g.m, g.n);
        let mut uf = UnionFind::new(m + n);
        for &(l, r) in &g.edges {
            uf.union(l, m + r);
        }
        // slot[root] = index into `components`
        let mut slot = vec![usize::MAX; m + n];
        let mut components: Vec<Component> = Vec::new();
        for v in 0..m + n {
            let root = uf.find(v);
            if slot[root] == usize::MAX {
                slot[root] = components.len();
                components.push(Component {
                    left: 0,
                    right: 0,
                    edges: 0,
                    is_tree: false,
                });
            }
            let c = &mut components[slot[root]];
            if v < m {
                c.left += 1;
            } else {
                c.right += 1;
            }
        }
        for &(l, _) in &g.edges {
            let root = uf.find(l);
            components[slot[root]].edges += 1;
        }
        for c in &mut components {
            c.is_tree = c.edges + 1 == c.left + c.right;
        }
        let mut sizes: Vec<usize> = components.iter().map(Component::size).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let isolated_left = components
            .iter()
            .filter(|c| c.left == 1 && c.right == 0)
            .count();
        let isolated_right = components
            .iter()
            .filter(|c| c.left == 0 && c.right == 1)
            .count();
        Self {
            m,
            n,
            t: g.t(),
            components,
            largest_size: sizes.first().copied().unwrap_or(0),
            second_largest_size: sizes.get(1).copied().unwrap_or(0),
            isolated_left,
            isolated_right,
        }
    }

    /// The component with the most vertices (first one on ties).
    pub fn largest(&self) -> Option<&Component> {
        self.components
            .iter()
            .fold(None, |best: Option<&Component>, c| match best {
                Some(b) if b.size() >= c.size() => Some(b),
                _ => Some(c),
            })
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// Counts of `(i, j)` trees for `1 <= i <= max_i`, `1 <= j <= max_j`.
    pub fn tree_census(&self, max_i: usize, max_j: usize) -> TreeCensus {
        let mut census = TreeCensus::new(max_i, max_j);
        for c in &self.components {
            if c.is_tree && c.left >= 1 && c.right >= 1 && c.left <= max_i && c.right <= max_j {
                census.counts[(c.left - 1) * max_j + (c.right - 1)] += 1;
            }
        }
        census
    }
}

/// `A[i][j]`: number of components that are trees with `i` left and `j`
/// right vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeCensus {
    pub max_i: usize,
    pub max_j: usize,
    counts: Vec<u64>,
}

impl TreeCensus {
    fn new(max_i: usize, max_j: usize) -> Self {
        Self {
            max_i,
            max_j,
            counts: vec![0; max_i * max_j],
        }
    }

    /// `A[i][j]`; zero outside the tabulated range.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        if i == 0 || j == 0 || i > self.max_i || j > self.max_j {
            0
        } else {
            self.counts[(i - 1) * self.max_j + (j - 1)]
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Rows `i = 1..=max_i`, each holding `j = 1..=max_j`.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.counts
            .chunks(self.max_j.max(1))
            .map(<[u64]>::to_vec)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: usize, n: usize, edges: &[(usize, usize)]) -> BipartiteMultigraph {
        BipartiteMultigraph::new(m, n, edges.to_vec()).unwrap()
    }

    #[test]
    fn path_is_a_tree() {
        let s = g(2, 1, &[(0, 0), (1, 0)]).components();
        assert_eq!(
            s.components,
            vec![Component {
                left: 2,
                right: 1,
                edges: 2,
                is_tree: true
            }]
        );
        assert_eq!(s.tree_census(3, 3).get(2, 1), 1);
        assert!(g(2, 1, &[(0, 0), (1, 0)]).is_connected());
    }

    #[test]
    fn parallel_pair_is_not_a_tree() {
        let s = g(1, 1, &[(0, 0), (0, 0)]).components();
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].edges, 2);
        assert!(!s.components[0].is_tree);
    }

    #[test]
    fn complete_k22_has_no_trees() {
        let s = g(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).components();
        assert_eq!(s.tree_census(4, 4).total(), 0);
        assert_eq!(s.components.len(), 1);
    }

    #[test]
    fn disjoint_edges_disconnected() {
        let graph = g(2, 2, &[(0, 0), (1, 1)]);
        assert!(!graph.is_connected());
        assert_eq!(graph.components().tree_census(2, 2).get(1, 1), 2);
    }

    #[test]
    fn isolated_vertices_reported() {
        let s = g(3, 2, &[(0, 0)]).components();
        assert_eq!(s.isolated_left, 2);
        assert_eq!(s.isolated_right, 1);
        assert_eq!(s.components.len(), 4);
        assert_eq!(s.largest_size, 2);
        assert_eq!(s.second_largest_size, 1);
    }

    #[test]
    fn empty_graph_conventions() {
        assert!(BipartiteMultigraph::edgeless(0, 0).is_connected());
        assert!(!BipartiteMultigraph::edgeless(1, 0)
            .components()
            .components
            .is_empty());
        assert!(BipartiteMultigraph::edgeless(1, 0).is_connected());
        assert!(!BipartiteMultigraph::edgeless(1, 1).is_connected());
    }

    #[test]
    fn degrees_count_multiplicity() {
        let graph = g(2, 2, &[(0, 0), (0, 0), (0, 1)]);
        assert_eq!(graph.left_degrees(), vec![3, 0]);
        assert_eq!(graph.min_degree(), (Some(0), Some(1)));
        assert_eq!(graph.max_degree(), 3);
        assert!(graph.has_parallel_edges());
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(BipartiteMultigraph::new(1, 1, vec![(1, 0)]).is_err());
    }

    #[test]
    fn union_find_sizes() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 1));
        assert!(!uf.union(0, 3));
        assert_eq!(uf.set_size(3), 3);
        assert_eq!(uf.set_size(4), 1);
    }
}
