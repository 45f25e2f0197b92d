//! The layout structures and their validators.
//!
//! All downstream correctness claims reduce to these checkers, so they are
//! deliberately direct: pairwise inversion tests instead of sweeps, full
//! scans instead of incremental bookkeeping. Validators never panic or error
//! on semantic failures; those come back as structured reports so property
//! tests can assert on violation kinds. Errors are reserved for coverage
//! mismatches and malformed inputs.

use std::fmt;

use thiserror::Error;

use crate::graph::{validate_layering, Graph, GraphError, Layering};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayoutError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("decomposition tree is not a tree")]
    NotATree,
    #[error("decomposition has {bags} bags for {nodes} tree nodes")]
    BagCountMismatch { bags: usize, nodes: usize },
}

/// Partition of the vertices into ordered independent sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackLayout {
    pub tracks: Vec<Vec<usize>>,
}

impl TrackLayout {
    pub fn new(tracks: Vec<Vec<usize>>) -> Self {
        TrackLayout { tracks }
    }

    pub fn nonempty_tracks(&self) -> usize {
        self.tracks.iter().filter(|t| !t.is_empty()).count()
    }

    /// Vertex -> (track, position), checking exact coverage of `0..n`.
    pub fn positions(&self, n: usize) -> Result<Vec<(usize, usize)>, GraphError> {
        coverage(&self.tracks, n)
    }
}

/// Layering plus a left-to-right order within each layer.
///
/// `weak = false`: every edge joins consecutive levels. `weak = true`: edges
/// may also join order-consecutive vertices within one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledDrawing {
    pub levels: Vec<Vec<usize>>,
    pub weak: bool,
}

impl LeveledDrawing {
    pub fn new(levels: Vec<Vec<usize>>, weak: bool) -> Self {
        LeveledDrawing { levels, weak }
    }

    pub fn layering(&self) -> Layering {
        Layering::from_layers(self.levels.clone())
    }

    pub fn positions(&self, n: usize) -> Result<Vec<(usize, usize)>, GraphError> {
        coverage(&self.levels, n)
    }
}

/// Sequence of bags; each bag is kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        PathDecomposition { bags }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    /// Max bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }
}

/// Tree of bags; node `x` of `tree` carries `bags[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    pub fn new(tree: Graph, bags: Vec<Vec<usize>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { tree, bags }
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Linearizes path-shaped decomposition trees into a path decomposition.
    pub fn as_path(&self) -> Option<PathDecomposition> {
        let n = self.tree.n();
        if n == 0 {
            return Some(PathDecomposition::new(vec![]));
        }
        if !self.tree.is_tree() {
            return None;
        }
        if (0..n).any(|v| self.tree.degree(v) > 2) {
            return None;
        }
        let start = (0..n).find(|&v| self.tree.degree(v) <= 1).unwrap();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let next = *self.tree.neighbors(cur).iter().find(|&&w| w != prev)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(PathDecomposition::new(order.into_iter().map(|x| self.bags[x].clone()).collect()))
    }
}

/// Path decomposition paired with a layering of the same host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredPathDecomposition {
    pub decomposition: PathDecomposition,
    pub layering: Layering,
}

impl LayeredPathDecomposition {
    /// Largest intersection of a bag with a layer.
    pub fn layered_width(&self) -> usize {
        layered_width_of(self.decomposition.bags(), &self.layering)
    }
}

/// Tree decomposition paired with a layering of the same host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredTreeDecomposition {
    pub decomposition: TreeDecomposition,
    pub layering: Layering,
}

impl LayeredTreeDecomposition {
    pub fn layered_width(&self) -> usize {
        layered_width_of(&self.decomposition.bags, &self.layering)
    }
}

fn layered_width_of(bags: &[Vec<usize>], layering: &Layering) -> usize {
    let max_vertex = bags
        .iter()
        .flatten()
        .chain(layering.layers().iter().flatten())
        .copied()
        .max()
        .map_or(0, |v| v + 1);
    let mut layer_of = vec![usize::MAX; max_vertex];
    for (i, layer) in layering.layers().iter().enumerate() {
        for &v in layer {
            layer_of[v] = i;
        }
    }
    let mut best = 0;
    let mut counts = vec![0usize; layering.len()];
    for bag in bags {
        for &v in bag {
            if v < max_vertex && layer_of[v] != usize::MAX {
                counts[layer_of[v]] += 1;
                best = best.max(counts[layer_of[v]]);
            }
        }
        for &v in bag {
            if v < max_vertex && layer_of[v] != usize::MAX {
                counts[layer_of[v]] = 0;
            }
        }
    }
    best
}

fn coverage(groups: &[Vec<usize>], n: usize) -> Result<Vec<(usize, usize)>, GraphError> {
    let mut pos = vec![(usize::MAX, usize::MAX); n];
    let mut count = vec![0usize; n];
    for (g, group) in groups.iter().enumerate() {
        for (p, &v) in group.iter().enumerate() {
            if v >= n {
                return Err(GraphError::InvalidVertex(v, n));
            }
            count[v] += 1;
            pos[v] = (g, p);
        }
    }
    for v in 0..n {
        if count[v] != 1 {
            return Err(GraphError::CoverageMismatch { vertex: v, count: count[v] });
        }
    }
    Ok(pos)
}

/// Generic validation report: valid iff no violations were recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report<V> {
    pub violations: Vec<V>,
}

impl<V> Report<V> {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&V> {
        self.violations.first()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrackViolation {
    /// Two adjacent vertices share a track.
    NonIndependentTrack { track: usize, u: usize, v: usize },
    /// Two edges between one pair of tracks with inverted endpoint orders.
    XCrossing { first: (usize, usize), second: (usize, usize) },
}

impl fmt::Display for TrackViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrackViolation::NonIndependentTrack { track, u, v } => {
                write!(f, "track {track} contains adjacent vertices {u} and {v}")
            }
            TrackViolation::XCrossing { first, second } => write!(
                f,
                "edges ({}, {}) and ({}, {}) form an X-crossing",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

/// Checks track independence and absence of X-crossings between every pair
/// of tracks (pairwise inversion test).
pub fn validate_track_layout(g: &Graph, t: &TrackLayout) -> Result<Report<TrackViolation>, LayoutError> {
    let pos = t.positions(g.n())?;
    let mut violations = Vec::new();
    for &(u, v) in g.edges() {
        if pos[u].0 == pos[v].0 {
            violations.push(TrackViolation::NonIndependentTrack { track: pos[u].0, u, v });
        }
    }
    // Group inter-track edges by track pair, oriented low track first.
    let mut by_pair: std::collections::BTreeMap<(usize, usize), Vec<((usize, usize), (usize, usize))>> =
        std::collections::BTreeMap::new();
    for &(u, v) in g.edges() {
        let ((tu, pu), (tv, pv)) = (pos[u], pos[v]);
        if tu == tv {
            continue;
        }
        let (key, oriented) =
            if tu < tv { ((tu, tv), ((pu, pv), (u, v))) } else { ((tv, tu), ((pv, pu), (v, u))) };
        by_pair.entry(key).or_default().push(oriented);
    }
    for edges in by_pair.values() {
        for (i, &((p1, q1), e1)) in edges.iter().enumerate() {
            for &((p2, q2), e2) in &edges[i + 1..] {
                if (p1 < p2 && q1 > q2) || (p1 > p2 && q1 < q2) {
                    violations.push(TrackViolation::XCrossing { first: e1, second: e2 });
                }
            }
        }
    }
    Ok(Report { violations })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DrawingViolation {
    /// Edge violating the level rule (span >= 2, or same-level when strict).
    BadSpan { edge: (usize, usize) },
    /// Weak mode: same-level edge whose endpoints are not order-consecutive.
    SameLevelNonConsecutive { edge: (usize, usize) },
    /// Two crossing edges between one pair of consecutive levels.
    Inversion { first: (usize, usize), second: (usize, usize) },
    /// Levels must be nonempty to keep layer indices contiguous.
    EmptyLevel { level: usize },
}

impl fmt::Display for DrawingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DrawingViolation::BadSpan { edge } => {
                write!(f, "edge ({}, {}) does not join consecutive levels", edge.0, edge.1)
            }
            DrawingViolation::SameLevelNonConsecutive { edge } => write!(
                f,
                "same-level edge ({}, {}) joins non-consecutive positions",
                edge.0, edge.1
            ),
            DrawingViolation::Inversion { first, second } => write!(
                f,
                "edges ({}, {}) and ({}, {}) cross between consecutive levels",
                first.0, first.1, second.0, second.1
            ),
            DrawingViolation::EmptyLevel { level } => write!(f, "level {level} is empty"),
        }
    }
}

/// Checks a leveled drawing against the strict or weak level rule (per the
/// drawing's own flag) and inversion-freeness between consecutive levels.
pub fn validate_leveled_drawing(
    g: &Graph,
    d: &LeveledDrawing,
) -> Result<Report<DrawingViolation>, LayoutError> {
    let pos = d.positions(g.n())?;
    let mut violations = Vec::new();
    for (i, level) in d.levels.iter().enumerate() {
        if level.is_empty() {
            violations.push(DrawingViolation::EmptyLevel { level: i });
        }
    }
    let mut by_gap: std::collections::BTreeMap<usize, Vec<((usize, usize), (usize, usize))>> =
        std::collections::BTreeMap::new();
    for &(u, v) in g.edges() {
        let ((lu, pu), (lv, pv)) = (pos[u], pos[v]);
        if lu.abs_diff(lv) > 1 {
            violations.push(DrawingViolation::BadSpan { edge: (u, v) });
        } else if lu == lv {
            if !d.weak {
                violations.push(DrawingViolation::BadSpan { edge: (u, v) });
            } else if pu.abs_diff(pv) != 1 {
                violations.push(DrawingViolation::SameLevelNonConsecutive { edge: (u, v) });
            }
        } else {
            let (low, oriented) =
                if lu < lv { (lu, ((pu, pv), (u, v))) } else { (lv, ((pv, pu), (v, u))) };
            by_gap.entry(low).or_default().push(oriented);
        }
    }
    for edges in by_gap.values() {
        for (i, &((p1, q1), e1)) in edges.iter().enumerate() {
            for &((p2, q2), e2) in &edges[i + 1..] {
                if (p1 < p2 && q1 > q2) || (p1 > p2 && q1 < q2) {
                    violations.push(DrawingViolation::Inversion { first: e1, second: e2 });
                }
            }
        }
    }
    Ok(Report { violations })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionViolation {
    /// Vertex out of range for the host graph.
    UnknownVertex { vertex: usize },
    /// Vertex appears in no bag.
    MissingVertex { vertex: usize },
    /// Path decompositions: the bags containing the vertex are not contiguous.
    NonContiguous { vertex: usize },
    /// Tree decompositions: the nodes whose bags contain the vertex do not
    /// induce a connected subtree.
    TraceDisconnected { vertex: usize },
    /// No bag contains both endpoints.
    EdgeUncovered { edge: (usize, usize) },
    /// Supplied layering violates the layering rules for the host.
    LayeringViolation { edge: (usize, usize) },
    /// Supplied layering does not cover the host's vertices exactly.
    LayeringCoverage { vertex: usize },
    EmptyLayer { layer: usize },
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DecompositionViolation::*;
        match self {
            UnknownVertex { vertex } => write!(f, "bag mentions unknown vertex {vertex}"),
            MissingVertex { vertex } => write!(f, "vertex {vertex} appears in no bag"),
            NonContiguous { vertex } => {
                write!(f, "vertex {vertex} does not occupy a contiguous bag range")
            }
            TraceDisconnected { vertex } => {
                write!(f, "bags containing vertex {vertex} are disconnected in the tree")
            }
            EdgeUncovered { edge } => {
                write!(f, "no bag contains both endpoints of ({}, {})", edge.0, edge.1)
            }
            LayeringViolation { edge } => {
                write!(f, "edge ({}, {}) spans more than one layer boundary", edge.0, edge.1)
            }
            LayeringCoverage { vertex } => {
                write!(f, "layering does not cover vertex {vertex} exactly once")
            }
            EmptyLayer { layer } => write!(f, "layer {layer} is empty"),
        }
    }
}

/// Report for path/tree decompositions: violations plus the measured widths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub violations: Vec<DecompositionViolation>,
    pub width: usize,
    pub layered_width: Option<usize>,
}

impl DecompositionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&DecompositionViolation> {
        self.violations.first()
    }
}

/// Checks bag contiguity per vertex and edge coverage; measures width and,
/// when a layering is supplied, layered width. All failures are report
/// entries.
pub fn validate_path_decomposition(
    g: &Graph,
    p: &PathDecomposition,
    layering: Option<&Layering>,
) -> DecompositionReport {
    let n = g.n();
    let mut violations = Vec::new();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![usize::MAX; n];
    for (i, bag) in p.bags().iter().enumerate() {
        for &v in bag {
            if v >= n {
                violations.push(DecompositionViolation::UnknownVertex { vertex: v });
                continue;
            }
            if first[v] == usize::MAX {
                first[v] = i;
            }
            last[v] = i;
        }
    }
    for v in 0..n {
        if first[v] == usize::MAX {
            violations.push(DecompositionViolation::MissingVertex { vertex: v });
            continue;
        }
        let contiguous =
            (first[v]..=last[v]).all(|i| p.bags()[i].binary_search(&v).is_ok());
        if !contiguous {
            violations.push(DecompositionViolation::NonContiguous { vertex: v });
        }
    }
    for &(u, v) in g.edges() {
        let covered = p
            .bags()
            .iter()
            .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
        if !covered {
            violations.push(DecompositionViolation::EdgeUncovered { edge: (u, v) });
        }
    }
    let layered_width = layering.map(|l| {
        check_layering_into(g, l, &mut violations);
        layered_width_of(p.bags(), l)
    });
    DecompositionReport { violations, width: p.width(), layered_width }
}

/// Checks edge coverage and connectivity of each vertex's trace in the
/// decomposition tree.
pub fn validate_tree_decomposition(
    g: &Graph,
    t: &TreeDecomposition,
    layering: Option<&Layering>,
) -> Result<DecompositionReport, LayoutError> {
    if !t.tree.is_tree() {
        return Err(LayoutError::NotATree);
    }
    if t.bags.len() != t.tree.n() {
        return Err(LayoutError::BagCountMismatch { bags: t.bags.len(), nodes: t.tree.n() });
    }
    let n = g.n();
    let mut violations = Vec::new();
    let mut trace: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, bag) in t.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                violations.push(DecompositionViolation::UnknownVertex { vertex: v });
            } else {
                trace[v].push(x);
            }
        }
    }
    for v in 0..n {
        if trace[v].is_empty() {
            violations.push(DecompositionViolation::MissingVertex { vertex: v });
            continue;
        }
        // BFS inside the trace.
        let in_trace: std::collections::HashSet<usize> = trace[v].iter().copied().collect();
        let mut seen = std::collections::HashSet::from([trace[v][0]]);
        let mut queue = std::collections::VecDeque::from([trace[v][0]]);
        while let Some(x) = queue.pop_front() {
            for &y in t.tree.neighbors(x) {
                if in_trace.contains(&y) && seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        if seen.len() != in_trace.len() {
            violations.push(DecompositionViolation::TraceDisconnected { vertex: v });
        }
    }
    for &(u, v) in g.edges() {
        let covered = t
            .bags
            .iter()
            .any(|bag| bag.binary_search(&u).is_ok() && bag.binary_search(&v).is_ok());
        if !covered {
            violations.push(DecompositionViolation::EdgeUncovered { edge: (u, v) });
        }
    }
    let layered_width = layering.map(|l| {
        check_layering_into(g, l, &mut violations);
        layered_width_of(&t.bags, l)
    });
    Ok(DecompositionReport { violations, width: t.width(), layered_width })
}

fn check_layering_into(g: &Graph, l: &Layering, violations: &mut Vec<DecompositionViolation>) {
    match validate_layering(g, l) {
        Ok(report) => {
            for edge in report.bad_edges {
                violations.push(DecompositionViolation::LayeringViolation { edge });
            }
            for layer in report.empty_layers {
                violations.push(DecompositionViolation::EmptyLayer { layer });
            }
        }
        Err(GraphError::CoverageMismatch { vertex, .. }) => {
            violations.push(DecompositionViolation::LayeringCoverage { vertex });
        }
        Err(GraphError::InvalidVertex(v, _)) => {
            violations.push(DecompositionViolation::LayeringCoverage { vertex: v });
        }
        Err(_) => unreachable!("validate_layering only fails on coverage"),
    }
}

/// Validates both components of a layered path decomposition for the same
/// host graph.
pub fn validate_layered_path_decomposition(
    g: &Graph,
    lpd: &LayeredPathDecomposition,
) -> DecompositionReport {
    validate_path_decomposition(g, &lpd.decomposition, Some(&lpd.layering))
}

/// Validates both components of a layered tree decomposition for the same
/// host graph.
pub fn validate_layered_tree_decomposition(
    g: &Graph,
    ltd: &LayeredTreeDecomposition,
) -> Result<DecompositionReport, LayoutError> {
    validate_tree_decomposition(g, &ltd.decomposition, Some(&ltd.layering))
}
