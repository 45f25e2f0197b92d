//! Simple undirected graphs, layerings, and cheap structural recognizers.
//!
//! Vertices are dense integers `0..n`; labels are an optional sidecar. This
//! keeps the subset DPs in the exact solvers on plain bitmasks.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({0}, {1}) appears more than once")]
    ParallelEdge(usize, usize),
    #[error("vertex {0} out of range (n = {1})")]
    InvalidVertex(usize, usize),
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("rotation of vertex {0} does not list its incident edges exactly once")]
    BadRotation(usize),
    #[error("label table has {0} entries for {1} vertices")]
    BadLabels(usize, usize),
    #[error("vertex {vertex} covered {count} times (expected exactly once)")]
    CoverageMismatch { vertex: usize, count: usize },
}

/// Immutable simple undirected graph with an optional rotation system.
///
/// Edge order is meaningful: the rotation system refers to edges by their
/// index in the edge list, matching the JSON interchange format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    rotation: Option<Vec<Vec<usize>>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edges are normalized to `(min, max)`
    /// but keep their input order (which defines edge indices).
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut norm = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::InvalidVertex(u, n));
            }
            if v >= n {
                return Err(GraphError::InvalidVertex(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u, v));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::ParallelEdge(u, v));
            }
            norm.push(e);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: norm, adj, rotation: None, labels: None })
    }

    /// Attaches a rotation system: for each vertex, a cyclic order of its
    /// incident edge indices.
    pub fn with_rotation(mut self, rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        if rotation.len() != self.n {
            return Err(GraphError::BadRotation(rotation.len().min(self.n)));
        }
        for (v, order) in rotation.iter().enumerate() {
            let mut incident: Vec<usize> = self
                .edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i)
                .collect();
            let mut given = order.clone();
            incident.sort_unstable();
            given.sort_unstable();
            if incident != given {
                return Err(GraphError::BadRotation(v));
            }
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::BadLabels(labels.len(), self.n));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn rotation(&self) -> Option<&Vec<Vec<usize>>> {
        self.rotation.as_ref()
    }

    pub fn labels(&self) -> Option<&Vec<String>> {
        self.labels.as_ref()
    }

    /// Neighbors of `v` in rotation order (requires a rotation system).
    pub fn neighbors_in_rotation(&self, v: usize) -> Option<Vec<usize>> {
        let rot = self.rotation.as_ref()?;
        Some(
            rot[v]
                .iter()
                .map(|&e| {
                    let (a, b) = self.edges[e];
                    if a == v {
                        b
                    } else {
                        a
                    }
                })
                .collect(),
        )
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.m() == self.n - 1 && self.is_connected()
    }

    /// Induced subgraph on `verts` (sorted, deduplicated internally).
    /// Returns the subgraph and the map new index -> old vertex.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut vs: Vec<usize> = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut back = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            back[v] = i;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if back[u] != usize::MAX && back[v] != usize::MAX {
                edges.push((back[u], back[v]));
            }
        }
        (Graph::new(vs.len(), &edges).expect("induced subgraph of a valid graph"), vs)
    }
}

/// Partition of the vertices into an indexed sequence of layers.
///
/// Plain data: possibly-invalid layerings are representable so that the
/// validator can report on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    layers: Vec<Vec<usize>>,
}

impl Layering {
    pub fn from_layers(layers: Vec<Vec<usize>>) -> Self {
        Layering { layers }
    }

    /// Builds the layer sequence from a vertex -> layer assignment.
    /// Layer indices must already be contiguous from 0.
    pub fn from_assignment(layer_of: &[usize]) -> Self {
        let count = layer_of.iter().map(|&l| l + 1).max().unwrap_or(0);
        let mut layers = vec![Vec::new(); count];
        for (v, &l) in layer_of.iter().enumerate() {
            layers[l].push(v);
        }
        Layering { layers }
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Vertex -> layer index map, checking that layers cover `0..n` exactly.
    pub fn assignment(&self, n: usize) -> Result<Vec<usize>, GraphError> {
        let mut layer_of = vec![usize::MAX; n];
        let mut count = vec![0usize; n];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                if v >= n {
                    return Err(GraphError::InvalidVertex(v, n));
                }
                count[v] += 1;
                layer_of[v] = i;
            }
        }
        for v in 0..n {
            if count[v] != 1 {
                return Err(GraphError::CoverageMismatch { vertex: v, count: count[v] });
            }
        }
        Ok(layer_of)
    }
}

/// Validation report for a layering: edges spanning two or more layer
/// boundaries, plus any empty layers breaking index contiguity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeringReport {
    pub bad_edges: Vec<(usize, usize)>,
    pub empty_layers: Vec<usize>,
}

impl LayeringReport {
    pub fn ok(&self) -> bool {
        self.bad_edges.is_empty() && self.empty_layers.is_empty()
    }
}

/// Breadth-first layering: layer of `v` is its distance from `root`.
pub fn bfs_layering(g: &Graph, root: usize) -> Result<Layering, GraphError> {
    if root >= g.n() {
        return Err(GraphError::InvalidVertex(root, g.n()));
    }
    let dist = bfs_distances(g, root);
    if dist.iter().any(|&d| d == usize::MAX) {
        return Err(GraphError::DisconnectedGraph);
    }
    Ok(Layering::from_assignment(&dist))
}

pub(crate) fn bfs_distances(g: &Graph, root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Checks that every edge of `g` stays within a layer or spans consecutive
/// layers. Coverage failures are errors, semantic failures are report
/// entries.
pub fn validate_layering(g: &Graph, l: &Layering) -> Result<LayeringReport, GraphError> {
    let layer_of = l.assignment(g.n())?;
    let empty_layers: Vec<usize> =
        l.layers().iter().enumerate().filter(|(_, layer)| layer.is_empty()).map(|(i, _)| i).collect();
    let bad_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| layer_of[u].abs_diff(layer_of[v]) > 1)
        .collect();
    Ok(LayeringReport { bad_edges, empty_layers })
}

/// Result of the bipartiteness test: a proper 2-coloring, or an odd cycle
/// as a certificate of failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    Coloring(Vec<u8>),
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn coloring(&self) -> Option<&Vec<u8>> {
        match self {
            Bipartition::Coloring(c) => Some(c),
            Bipartition::OddCycle(_) => None,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Coloring(_))
    }
}

/// Two-colors `g` if possible; otherwise returns an odd cycle.
pub fn bipartition(g: &Graph) -> Bipartition {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return Bipartition::OddCycle(odd_cycle_through(&parent, u, w));
                }
            }
        }
    }
    Bipartition::Coloring(color)
}

/// Joins the BFS-tree paths of two same-color endpoints of an edge into the
/// odd cycle they witness.
fn odd_cycle_through(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = path_to_root(u);
    let pw = path_to_root(w);
    // Drop the shared suffix down to the lowest common ancestor.
    let mut i = pu.len();
    let mut j = pw.len();
    while i > 1 && j > 1 && pu[i - 2] == pw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle = pu[..i].to_vec();
    cycle.extend(pw[..j - 1].iter().rev());
    debug_assert!(cycle.len() % 2 == 1);
    cycle
}

/// True iff `g` is a forest in which removing all leaves from each component
/// leaves a (possibly empty) path.
pub fn is_caterpillar_forest(g: &Graph) -> bool {
    let stats = graph_stats(g);
    if stats.r != 0 {
        return false;
    }
    // Forest. The derived graph on vertices of degree >= 2 stays connected
    // per component, so it is a path iff its induced degrees are <= 2.
    for v in 0..g.n() {
        if g.degree(v) < 2 {
            continue;
        }
        let spine_neighbors = g.neighbors(v).iter().filter(|&&w| g.degree(w) >= 2).count();
        if spine_neighbors > 2 {
            return false;
        }
    }
    true
}

/// Vertex count, edge count, component count, and cyclomatic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub r: usize,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let n = g.n();
    let m = g.m();
    let c = g.components().len();
    GraphStats { n, m, c, r: m + c - n }
}

/// Biconnected components as edge sets (Hopcroft–Tarjan lowpoint search).
pub fn biconnected_components(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut comps: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut timer = 0usize;

    // Iterative DFS: (vertex, parent, neighbor cursor).
    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        while let Some(&mut (u, parent, ref mut cursor)) = call.last_mut() {
            if *cursor < g.degree(u) {
                let w = g.neighbors(u)[*cursor];
                *cursor += 1;
                if disc[w] == usize::MAX {
                    stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    call.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                call.pop();
                if let Some(&mut (p, _, _)) = call.last_mut() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(&(a, b)) = stack.last() {
                            if disc[a] >= disc[u] || (a == p && b == u) {
                                comp.push((a.min(b), a.max(b)));
                                stack.pop();
                                if a == p && b == u {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        if !comp.is_empty() {
                            comps.push(comp);
                        }
                    }
                }
            }
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn rejects_self_loops_and_parallel_edges() {
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(GraphError::SelfLoop(0, 0)));
        assert_eq!(Graph::new(2, &[(0, 1), (1, 0)]), Err(GraphError::ParallelEdge(1, 0)));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(GraphError::InvalidVertex(2, 2)));
    }

    #[test]
    fn bfs_layering_on_path() {
        let g = path(3);
        let l = bfs_layering(&g, 0).unwrap();
        assert_eq!(l.layers(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn bfs_layering_single_vertex() {
        let g = Graph::new(1, &[]).unwrap();
        let l = bfs_layering(&g, 0).unwrap();
        assert_eq!(l.layers(), &[vec![0]]);
    }

    #[test]
    fn bfs_layering_on_c4_has_sizes_1_2_1() {
        let g = cycle(4);
        let l = bfs_layering(&g, 0).unwrap();
        assert_eq!(l.layers(), &[vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn bfs_layering_rejects_disconnected_and_bad_root() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(bfs_layering(&g, 0), Err(GraphError::DisconnectedGraph));
        assert_eq!(bfs_layering(&g, 7), Err(GraphError::InvalidVertex(7, 3)));
    }

    #[test]
    fn validate_layering_accepts_bfs_of_c4() {
        let g = cycle(4);
        let l = bfs_layering(&g, 0).unwrap();
        assert!(validate_layering(&g, &l).unwrap().ok());
    }

    #[test]
    fn validate_layering_flags_long_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let l = Layering::from_layers(vec![vec![0], vec![], vec![1]]);
        let report = validate_layering(&g, &l).unwrap();
        assert_eq!(report.bad_edges, vec![(0, 1)]);
        assert_eq!(report.empty_layers, vec![1]);
    }

    #[test]
    fn validate_layering_empty_graph() {
        let g = Graph::new(0, &[]).unwrap();
        let l = Layering::from_layers(vec![]);
        assert!(validate_layering(&g, &l).unwrap().ok());
    }

    #[test]
    fn validate_layering_coverage_mismatch() {
        let g = path(2);
        let l = Layering::from_layers(vec![vec![0, 0], vec![1]]);
        assert_eq!(
            validate_layering(&g, &l),
            Err(GraphError::CoverageMismatch { vertex: 0, count: 2 })
        );
    }

    #[test]
    fn bipartition_of_even_cycle_alternates() {
        let g = cycle(6);
        let b = bipartition(&g);
        let c = b.coloring().unwrap();
        for &(u, v) in g.edges() {
            assert_ne!(c[u], c[v]);
        }
    }

    #[test]
    fn bipartition_of_c5_returns_odd_cycle() {
        let g = cycle(5);
        match bipartition(&g) {
            Bipartition::OddCycle(cyc) => {
                assert_eq!(cyc.len(), 5);
                for i in 0..cyc.len() {
                    assert!(g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]));
                }
            }
            Bipartition::Coloring(_) => panic!("C5 is not bipartite"),
        }
    }

    #[test]
    fn bipartition_of_edgeless_graph_is_all_zero() {
        let g = Graph::new(4, &[]).unwrap();
        assert_eq!(bipartition(&g).coloring().unwrap(), &vec![0, 0, 0, 0]);
    }

    /// Exhaustive check on all labeled graphs with n <= 5: a 2-coloring is
    /// found exactly when no odd cycle exists (odd cycles detected by a
    /// separate walk over all closed vertex sequences).
    #[test]
    fn bipartition_matches_odd_cycle_freeness_up_to_n5() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::new(n, &edges).unwrap();
                let has_odd_cycle = (3..=n).step_by(2).any(|len| has_cycle_of_length(&g, len));
                match bipartition(&g) {
                    Bipartition::Coloring(c) => {
                        assert!(!has_odd_cycle, "n={n} mask={mask}");
                        for &(u, v) in g.edges() {
                            assert_ne!(c[u], c[v]);
                        }
                    }
                    Bipartition::OddCycle(cyc) => {
                        assert!(has_odd_cycle, "n={n} mask={mask}");
                        assert_eq!(cyc.len() % 2, 1);
                    }
                }
            }
        }
    }

    fn has_cycle_of_length(g: &Graph, len: usize) -> bool {
        fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, len: usize) -> bool {
            if path.len() == len {
                return g.has_edge(*path.last().unwrap(), start);
            }
            let last = *path.last().unwrap();
            for &w in g.neighbors(last) {
                if w > start && !path.contains(&w) {
                    path.push(w);
                    if extend(g, start, path, len) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        (0..g.n()).any(|s| extend(g, s, &mut vec![s], len))
    }

    #[test]
    fn p5_is_a_caterpillar() {
        assert!(is_caterpillar_forest(&path(5)));
    }

    #[test]
    fn complete_binary_tree_height_2_is_a_caterpillar() {
        // Removing the four leaves leaves the path 1-0-2.
        let g = Graph::new(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        assert!(is_caterpillar_forest(&g));
    }

    #[test]
    fn spider_with_three_2_legs_is_not_a_caterpillar() {
        // Removing leaves yields a K_{1,3} star.
        let g = Graph::new(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(!is_caterpillar_forest(&g));
    }

    #[test]
    fn complete_binary_tree_height_3_is_not_a_caterpillar() {
        let mut edges = Vec::new();
        for v in 1..15 {
            edges.push(((v - 1) / 2, v));
        }
        let g = Graph::new(15, &edges).unwrap();
        assert!(!is_caterpillar_forest(&g));
    }

    #[test]
    fn cycles_are_not_caterpillar_forests() {
        assert!(!is_caterpillar_forest(&cycle(4)));
    }

    #[test]
    fn stats_of_tree_cycle_and_complete_graph() {
        assert_eq!(graph_stats(&path(5)).r, 0);
        assert_eq!(graph_stats(&cycle(4)).r, 1);
        let k4 = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(graph_stats(&k4).r, 3);
        let two_paths = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(graph_stats(&two_paths), GraphStats { n: 4, m: 2, c: 2, r: 0 });
    }

    #[test]
    fn biconnected_components_of_two_triangles_sharing_a_vertex() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let mut comps = biconnected_components(&g);
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn biconnected_components_of_a_path_are_single_edges() {
        let comps = biconnected_components(&path(4));
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn rotation_must_list_incident_edges() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(g.clone().with_rotation(vec![vec![0], vec![0, 1], vec![1]]).is_ok());
        assert_eq!(
            g.with_rotation(vec![vec![0], vec![1, 0, 1], vec![1]]),
            Err(GraphError::BadRotation(1))
        );
    }
}
