//! Constructive conversions between drawings, track layouts, and
//! decompositions.
//!
//! The central pieces: wrapping a strict leveled drawing onto three tracks
//! by level number mod 3, the winding function delta on 3-track layouts,
//! unwrapping a bipartite 3-track layout back into levels via spanning-tree
//! delta sums, the greedy one-vertex-per-layer sweep that turns drawings
//! into layered path decompositions, and the wrapped track construction
//! that turns a layered path decomposition of layered width l into at most
//! 3l tracks.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{bfs_distances, bipartition, Bipartition, Graph, Layering};
use crate::layout::{
    validate_layered_path_decomposition, validate_layered_tree_decomposition,
    validate_leveled_drawing, validate_track_layout, LayeredPathDecomposition,
    LayeredTreeDecomposition, LayoutError, LeveledDrawing, PathDecomposition, TrackLayout,
};

#[derive(Debug, Error)]
pub enum TransformError {
    #[error("input drawing is not valid: {0}")]
    InvalidDrawing(String),
    #[error("input track layout is not valid: {0}")]
    InvalidTrackLayout(String),
    #[error("input decomposition is not valid: {0}")]
    InvalidDecomposition(String),
    #[error("vertex sequence is not a cycle of the host graph")]
    NotACycle,
    #[error("expected exactly 3 tracks, found {0}")]
    WrongTrackCount(usize),
    #[error("host graph is not bipartite")]
    NotBipartite,
    #[error("level assignment is inconsistent; the input layout was not valid")]
    LevelMismatch,
    #[error("layered width is {0}, but exactly 1 is required")]
    WidthTooLarge(usize),
    #[error("input is not a tree")]
    NotATree,
    #[error("apex vertex {0} is already placed in the layout")]
    VertexAlreadyPlaced(usize),
    #[error("sweep state does not select one vertex per layer")]
    BadSweepState,
    #[error("sweep exhausted: every selected vertex is rightmost in its layer")]
    Exhausted,
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// Directed edge with its winding increment in a 3-track layout: +1 when the
/// arc advances one track clockwise (track i to track i+1 mod 3), -1
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArcSign {
    pub arc: (usize, usize),
    pub sign: i8,
}

fn sign_between(tu: usize, tv: usize) -> Option<i8> {
    if tv == (tu + 1) % 3 {
        Some(1)
    } else if tu == (tv + 1) % 3 {
        Some(-1)
    } else {
        None
    }
}

/// Winding increment of the arc `(u, v)` in a 3-track layout.
pub fn arc_sign(g: &Graph, t: &TrackLayout, arc: (usize, usize)) -> Result<ArcSign, TransformError> {
    if t.tracks.len() != 3 {
        return Err(TransformError::WrongTrackCount(t.tracks.len()));
    }
    if arc.0 >= g.n() || arc.1 >= g.n() || !g.has_edge(arc.0, arc.1) {
        return Err(TransformError::NotACycle);
    }
    let pos = t.positions(g.n()).map_err(|e| TransformError::InvalidTrackLayout(e.to_string()))?;
    let sign = sign_between(pos[arc.0].0, pos[arc.1].0)
        .ok_or_else(|| TransformError::InvalidTrackLayout("edge within a single track".into()))?;
    Ok(ArcSign { arc, sign })
}

fn strict_view(d: &LeveledDrawing) -> LeveledDrawing {
    LeveledDrawing::new(d.levels.clone(), false)
}

fn require_valid_drawing(g: &Graph, d: &LeveledDrawing) -> Result<(), TransformError> {
    let report = validate_leveled_drawing(g, d)?;
    match report.first() {
        None => Ok(()),
        Some(v) => Err(TransformError::InvalidDrawing(v.to_string())),
    }
}

/// Wraps a strict leveled drawing onto exactly three tracks: track of `v` is
/// its level mod 3; within a track, levels in ascending order and the
/// drawing's order within each level.
pub fn spiral_wrap(g: &Graph, d: &LeveledDrawing) -> Result<TrackLayout, TransformError> {
    require_valid_drawing(g, &strict_view(d))?;
    let mut tracks = vec![Vec::new(); 3];
    for (i, level) in d.levels.iter().enumerate() {
        tracks[i % 3].extend(level.iter().copied());
    }
    Ok(TrackLayout::new(tracks))
}

/// Sum of arc signs along a cyclically oriented cycle. In any valid 3-track
/// layout this is 0 for even cycles and +-3 for odd ones.
pub fn winding(g: &Graph, t: &TrackLayout, cycle: &[usize]) -> Result<i64, TransformError> {
    if t.tracks.len() != 3 {
        return Err(TransformError::WrongTrackCount(t.tracks.len()));
    }
    if cycle.len() < 3 || cycle.iter().any(|&v| v >= g.n()) {
        return Err(TransformError::NotACycle);
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cycle.len() {
        return Err(TransformError::NotACycle);
    }
    let pos = t.positions(g.n()).map_err(|e| TransformError::InvalidTrackLayout(e.to_string()))?;
    let mut total = 0i64;
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if !g.has_edge(u, v) {
            return Err(TransformError::NotACycle);
        }
        let sign = sign_between(pos[u].0, pos[v].0).ok_or_else(|| {
            TransformError::InvalidTrackLayout("edge within a single track".into())
        })?;
        total += i64::from(sign);
    }
    Ok(total)
}

/// Unwraps a bipartite 3-track layout into a strict leveled drawing.
///
/// Per connected component: levels are delta-sums along a BFS spanning tree
/// from the least vertex, translated so the least level is 0; within a
/// level, vertices keep their track order. Components occupy consecutive
/// disjoint level ranges.
pub fn unwrap_three_track(g: &Graph, t: &TrackLayout) -> Result<LeveledDrawing, TransformError> {
    if t.tracks.len() != 3 {
        return Err(TransformError::WrongTrackCount(t.tracks.len()));
    }
    let report = validate_track_layout(g, t)?;
    if let Some(v) = report.first() {
        return Err(TransformError::InvalidTrackLayout(v.to_string()));
    }
    if let Bipartition::OddCycle(_) = bipartition(g) {
        return Err(TransformError::NotBipartite);
    }
    let pos = t.positions(g.n())?;
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for comp in g.components() {
        let root = comp[0];
        let mut level = vec![i64::MIN; g.n()];
        level[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if level[w] == i64::MIN {
                    let sign = sign_between(pos[u].0, pos[w].0).expect("validated layout");
                    level[w] = level[u] + i64::from(sign);
                    queue.push_back(w);
                }
            }
        }
        // Non-tree edges must also join consecutive levels; the winding law
        // guarantees this for valid layouts.
        for &(u, v) in g.edges() {
            if level[u] != i64::MIN && level[v] != i64::MIN && (level[u] - level[v]).abs() != 1 {
                return Err(TransformError::LevelMismatch);
            }
        }
        let min = comp.iter().map(|&v| level[v]).min().expect("nonempty component");
        let max = comp.iter().map(|&v| level[v]).max().expect("nonempty component");
        let offset = levels.len();
        let count = usize::try_from(max - min + 1).expect("small level range");
        let mut per_level: Vec<Vec<usize>> = vec![Vec::new(); count];
        for &v in &comp {
            per_level[usize::try_from(level[v] - min).unwrap()].push(v);
        }
        levels.resize(offset + count, Vec::new());
        for (k, mut vs) in per_level.into_iter().enumerate() {
            vs.sort_by_key(|&v| pos[v]);
            debug_assert!(vs.windows(2).all(|w| pos[w[0]].0 == pos[w[1]].0));
            levels[offset + k] = vs;
        }
    }
    let out = LeveledDrawing::new(levels, false);
    debug_assert!(validate_leveled_drawing(g, &out).map(|r| r.ok()).unwrap_or(false));
    Ok(out)
}

/// One chosen vertex per layer, threaded through the greedy sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepState {
    pub current: Vec<usize>,
}

impl SweepState {
    /// Starts with the leftmost vertex of every layer.
    pub fn leftmost(d: &LeveledDrawing) -> Result<Self, TransformError> {
        let current = d
            .levels
            .iter()
            .map(|level| level.first().copied().ok_or(TransformError::BadSweepState))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SweepState { current })
    }

    /// True when every selected vertex is rightmost in its layer.
    pub fn is_exhausted(&self, d: &LeveledDrawing) -> bool {
        self.current.iter().zip(&d.levels).all(|(&v, level)| level.last() == Some(&v))
    }
}

/// Finds a layer whose selected vertex can be advanced: it is not rightmost,
/// and all of its neighbors on adjacent layers are in the sweep set or to
/// the left of it.
///
/// Selection builds the digraph on layers with an edge i -> j (j = i +- 1)
/// whenever the selected vertex of layer i has a neighbor in layer j right
/// of layer j's selected vertex, then returns a layer with incoming but no
/// outgoing edges, or the least non-rightmost layer if the digraph has no
/// edges.
pub fn next_sweep_vertex(
    g: &Graph,
    d: &LeveledDrawing,
    s: &SweepState,
) -> Result<usize, TransformError> {
    let pos = d.positions(g.n())?;
    let layers = d.levels.len();
    if s.current.len() != layers {
        return Err(TransformError::BadSweepState);
    }
    for (i, &v) in s.current.iter().enumerate() {
        if v >= g.n() || pos[v].0 != i {
            return Err(TransformError::BadSweepState);
        }
    }
    let rightmost: Vec<bool> =
        s.current.iter().zip(&d.levels).map(|(&v, level)| level.last() == Some(&v)).collect();
    if rightmost.iter().all(|&r| r) {
        return Err(TransformError::Exhausted);
    }
    let mut incoming = vec![false; layers];
    let mut outgoing = vec![false; layers];
    for (i, &v) in s.current.iter().enumerate() {
        for &w in g.neighbors(v) {
            let (j, pw) = pos[w];
            if j.abs_diff(i) == 1 && pw > pos[s.current[j]].1 {
                outgoing[i] = true;
                incoming[j] = true;
            }
        }
    }
    if !outgoing.iter().any(|&o| o) {
        return Ok((0..layers).find(|&i| !rightmost[i]).expect("some layer can advance"));
    }
    for i in 0..layers {
        if incoming[i] && !outgoing[i] {
            debug_assert!(!rightmost[i]);
            return Ok(i);
        }
    }
    unreachable!("the layer digraph is a sub-DAG of an oriented path, so a sink with incoming edges exists")
}

/// Greedy layered path decomposition of a valid drawing: one vertex per
/// layer per bag, advancing via [`next_sweep_vertex`]. Strict drawings give
/// layered width exactly 1; weak drawings at most 2 (the advance over a
/// same-level edge inserts one bag holding both endpoints).
pub fn greedy_layered_path(
    g: &Graph,
    d: &LeveledDrawing,
) -> Result<LayeredPathDecomposition, TransformError> {
    require_valid_drawing(g, d)?;
    if g.n() == 0 {
        return Ok(LayeredPathDecomposition {
            decomposition: PathDecomposition::new(vec![]),
            layering: d.layering(),
        });
    }
    let pos = d.positions(g.n())?;
    let mut state = SweepState::leftmost(d)?;
    let mut bags = vec![state.current.clone()];
    while !state.is_exhausted(d) {
        let i = next_sweep_vertex(g, d, &state)?;
        let v = state.current[i];
        let w = d.levels[i][pos[v].1 + 1];
        if d.weak && g.has_edge(v, w) {
            let mut both = state.current.clone();
            both.push(w);
            bags.push(both);
        }
        state.current[i] = w;
        bags.push(state.current.clone());
    }
    Ok(LayeredPathDecomposition {
        decomposition: PathDecomposition::new(bags),
        layering: d.layering(),
    })
}

/// Leftmost-bag index per vertex of a path decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagIndexMap {
    b: Vec<Option<usize>>,
}

impl BagIndexMap {
    pub fn new(p: &PathDecomposition, n: usize) -> Self {
        let mut b = vec![None; n];
        for (i, bag) in p.bags().iter().enumerate() {
            for &v in bag {
                if v < n && b[v].is_none() {
                    b[v] = Some(i);
                }
            }
        }
        BagIndexMap { b }
    }

    pub fn leftmost(&self, v: usize) -> Option<usize> {
        self.b.get(v).copied().flatten()
    }
}

/// Reads a strict leveled drawing off a layered path decomposition of
/// layered width exactly 1: levels are the layers, ordered by leftmost bag.
pub fn layered_path_to_drawing(
    g: &Graph,
    p: &LayeredPathDecomposition,
) -> Result<LeveledDrawing, TransformError> {
    let report = validate_layered_path_decomposition(g, p);
    if let Some(v) = report.violations.first() {
        return Err(TransformError::InvalidDecomposition(v.to_string()));
    }
    let width = p.layered_width();
    if g.n() > 0 && width != 1 {
        return Err(TransformError::WidthTooLarge(width));
    }
    let b = BagIndexMap::new(&p.decomposition, g.n());
    let mut levels: Vec<Vec<usize>> = p.layering.layers().to_vec();
    for level in &mut levels {
        level.sort_by_key(|&v| (b.leftmost(v), v));
    }
    let out = LeveledDrawing::new(levels, false);
    debug_assert!(validate_leveled_drawing(g, &out).map(|r| r.ok()).unwrap_or(false));
    Ok(out)
}

/// Wrapped track construction: from a layered path decomposition of layered
/// width l, builds at most 3l tracks (exactly 3l emitted, some possibly
/// empty).
///
/// Within each layer, vertices are colored greedily in leftmost-bag order,
/// with two vertices conflicting when their bag intervals intersect. This
/// properly colors each layer (adjacent vertices share a bag) with at most
/// l colors (all conflictors of a vertex sit in its first bag). Tracks of
/// equal color and layer index mod 3 are concatenated in layer order.
pub fn layered_path_to_tracks(
    g: &Graph,
    p: &LayeredPathDecomposition,
) -> Result<TrackLayout, TransformError> {
    let report = validate_layered_path_decomposition(g, p);
    if let Some(v) = report.violations.first() {
        return Err(TransformError::InvalidDecomposition(v.to_string()));
    }
    if g.n() == 0 {
        return Ok(TrackLayout::new(vec![]));
    }
    let ell = p.layered_width();
    let mut first = vec![usize::MAX; g.n()];
    let mut last = vec![usize::MAX; g.n()];
    for (i, bag) in p.decomposition.bags().iter().enumerate() {
        for &v in bag {
            if first[v] == usize::MAX {
                first[v] = i;
            }
            last[v] = i;
        }
    }
    let layers = p.layering.layers();
    let mut color = vec![usize::MAX; g.n()];
    for layer in layers {
        let mut order: Vec<usize> = layer.clone();
        order.sort_by_key(|&v| (first[v], v));
        for (idx, &v) in order.iter().enumerate() {
            let mut used = vec![false; ell];
            for &u in &order[..idx] {
                if first[u] <= last[v] && first[v] <= last[u] {
                    used[color[u]] = true;
                }
            }
            color[v] = used.iter().position(|&taken| !taken).expect(
                "conflicting earlier vertices all share v's first bag, which meets the layer in at most l vertices",
            );
        }
    }
    // W[q][a] = V_{q,a}, V_{q+3,a}, V_{q+6,a}, ...
    let mut tracks = vec![Vec::new(); 3 * ell];
    for (j, layer) in layers.iter().enumerate() {
        let mut order: Vec<usize> = layer.clone();
        order.sort_by_key(|&v| (first[v], v));
        for &v in &order {
            tracks[(j % 3) * ell + color[v]].push(v);
        }
    }
    let out = TrackLayout::new(tracks);
    debug_assert!(validate_track_layout(g, &out).map(|r| r.ok()).unwrap_or(false));
    Ok(out)
}

/// Path decomposition of a tree with max bag size at most
/// ceil(log3(2n + 1)), via a centroid spine: the spine runs through the
/// centroid into its two largest branches (heaviest child each step), so
/// every off-spine component has at most (n - 1) / 3 vertices; recurse and
/// add the spine vertex to all bags of its hanging components.
pub fn tree_path_decomposition(t: &Graph) -> Result<PathDecomposition, TransformError> {
    if !t.is_tree() {
        return Err(TransformError::NotATree);
    }
    let verts: Vec<usize> = (0..t.n()).collect();
    let bags = decompose_subtree(t, &verts);
    let out = PathDecomposition::new(bags);
    debug_assert!(crate::layout::validate_path_decomposition(t, &out, None).ok());
    Ok(out)
}

/// Bags for the subtree induced on `verts` (connected by construction).
fn decompose_subtree(t: &Graph, verts: &[usize]) -> Vec<Vec<usize>> {
    if verts.is_empty() {
        return vec![];
    }
    if verts.len() == 1 {
        return vec![vec![verts[0]]];
    }
    let active: std::collections::HashSet<usize> = verts.iter().copied().collect();
    let centroid = find_centroid(t, verts, &active);
    let sizes = subtree_sizes(t, centroid, &active);

    // Branch roots in decreasing subtree size (ties: least vertex).
    let mut branch_roots: Vec<usize> =
        t.neighbors(centroid).iter().copied().filter(|v| active.contains(v)).collect();
    branch_roots.sort_by_key(|&v| (std::cmp::Reverse(sizes[v]), v));

    let heavy_path = |start: usize| -> Vec<usize> {
        let mut path = vec![start];
        let mut prev = centroid;
        let mut cur = start;
        loop {
            let next = t
                .neighbors(cur)
                .iter()
                .copied()
                .filter(|&w| w != prev && active.contains(&w))
                .min_by_key(|&w| (std::cmp::Reverse(sizes[w]), w));
            match next {
                Some(w) => {
                    path.push(w);
                    prev = cur;
                    cur = w;
                }
                None => return path,
            }
        }
    };

    let mut spine: Vec<usize> = Vec::new();
    if branch_roots.len() >= 2 {
        let mut left = heavy_path(branch_roots[0]);
        left.reverse();
        spine.extend(left);
        spine.push(centroid);
        spine.extend(heavy_path(branch_roots[1]));
    } else {
        spine.push(centroid);
        if let Some(&b) = branch_roots.first() {
            spine.extend(heavy_path(b));
        }
    }

    let on_spine: std::collections::HashSet<usize> = spine.iter().copied().collect();
    // Components of the subtree minus the spine, grouped by attachment.
    let mut comps_at: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    let mut seen: std::collections::HashSet<usize> = on_spine.clone();
    for &v in verts {
        if seen.contains(&v) {
            continue;
        }
        let mut comp = vec![v];
        let mut attach = None;
        seen.insert(v);
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in t.neighbors(u) {
                if !active.contains(&w) {
                    continue;
                }
                if on_spine.contains(&w) {
                    attach = Some(w);
                } else if seen.insert(w) {
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps_at
            .entry(attach.expect("tree component attaches to the spine"))
            .or_default()
            .push(comp);
    }
    for comps in comps_at.values_mut() {
        comps.sort();
    }

    let mut bags = Vec::new();
    for (i, &v) in spine.iter().enumerate() {
        match comps_at.get(&v) {
            None => bags.push(vec![v]),
            Some(comps) => {
                for comp in comps {
                    for mut bag in decompose_subtree(t, comp) {
                        bag.push(v);
                        bags.push(bag);
                    }
                }
            }
        }
        if i + 1 < spine.len() {
            bags.push(vec![v, spine[i + 1]]);
        }
    }
    bags
}

fn subtree_sizes(t: &Graph, root: usize, active: &std::collections::HashSet<usize>) -> Vec<usize> {
    let mut sizes = vec![0usize; t.n()];
    let mut order = Vec::new();
    let mut parent = vec![usize::MAX; t.n()];
    let mut stack = vec![root];
    let mut visited = std::collections::HashSet::from([root]);
    while let Some(u) = stack.pop() {
        order.push(u);
        for &w in t.neighbors(u) {
            if active.contains(&w) && visited.insert(w) {
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    for &u in order.iter().rev() {
        sizes[u] += 1;
        if parent[u] != usize::MAX {
            sizes[parent[u]] += sizes[u];
        }
    }
    sizes
}

fn find_centroid(t: &Graph, verts: &[usize], active: &std::collections::HashSet<usize>) -> usize {
    let total = verts.len();
    let root = verts[0];
    let sizes = subtree_sizes(t, root, active);
    let mut best = (usize::MAX, usize::MAX);
    for &v in verts {
        let mut worst = total - sizes[v];
        for &w in t.neighbors(v) {
            if active.contains(&w) && sizes[w] < sizes[v] {
                worst = worst.max(sizes[w]);
            }
        }
        best = best.min((worst, v));
    }
    best.1
}

/// Converts a layered tree decomposition into a layered path decomposition
/// with the same layering: contract tree edges whose bags are nested, take
/// a path decomposition of the (now at most n-node) decomposition tree, and
/// union bags along it. Layered width stays within
/// l * ceil(log3(2n + 1)).
pub fn layered_tree_to_layered_path(
    g: &Graph,
    t: &LayeredTreeDecomposition,
) -> Result<LayeredPathDecomposition, TransformError> {
    let report = validate_layered_tree_decomposition(g, t)?;
    if let Some(v) = report.violations.first() {
        return Err(TransformError::InvalidDecomposition(v.to_string()));
    }
    let tree = &t.decomposition.tree;
    let nodes = tree.n();
    let mut class: Vec<usize> = (0..nodes).collect();
    fn find(class: &mut Vec<usize>, x: usize) -> usize {
        if class[x] != x {
            let root = find(class, class[x]);
            class[x] = root;
            root
        } else {
            x
        }
    }
    let bags: Vec<std::collections::BTreeSet<usize>> =
        t.decomposition.bags.iter().map(|b| b.iter().copied().collect()).collect();
    // Contract nested bags to a fixpoint; this bounds the contracted tree
    // by one node per host vertex.
    loop {
        let mut changed = false;
        for &(x, y) in tree.edges() {
            let (rx, ry) = (find(&mut class, x), find(&mut class, y));
            if rx == ry {
                continue;
            }
            if bags[rx].is_subset(&bags[ry]) {
                class[rx] = ry;
                changed = true;
            } else if bags[ry].is_subset(&bags[rx]) {
                class[ry] = rx;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut roots: Vec<usize> = (0..nodes).filter(|&x| find(&mut class, x) == x).collect();
    roots.sort_unstable();
    let index_of: std::collections::HashMap<usize, usize> =
        roots.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut quotient_edges = std::collections::BTreeSet::new();
    for &(x, y) in tree.edges() {
        let (rx, ry) = (find(&mut class, x), find(&mut class, y));
        if rx != ry {
            let (a, b) = (index_of[&rx], index_of[&ry]);
            quotient_edges.insert((a.min(b), a.max(b)));
        }
    }
    let quotient = Graph::new(roots.len(), &quotient_edges.into_iter().collect::<Vec<_>>())
        .expect("quotient of a tree by connected classes");
    let node_pd = tree_path_decomposition(&quotient)?;
    let out_bags: Vec<Vec<usize>> = node_pd
        .bags()
        .iter()
        .map(|node_bag| node_bag.iter().flat_map(|&i| bags[roots[i]].iter().copied()).collect())
        .collect();
    let out = LayeredPathDecomposition {
        decomposition: PathDecomposition::new(out_bags),
        layering: t.layering.clone(),
    };
    debug_assert!(validate_layered_path_decomposition(g, &out).ok());
    Ok(out)
}

/// Appends a new singleton track holding `apex`. Every edge incident to the
/// apex shares it as an endpoint, so no X-crossing can arise.
pub fn add_apex_track(t: &TrackLayout, apex: usize) -> Result<TrackLayout, TransformError> {
    if t.tracks.iter().any(|track| track.contains(&apex)) {
        return Err(TransformError::VertexAlreadyPlaced(apex));
    }
    let mut tracks = t.tracks.clone();
    tracks.push(vec![apex]);
    Ok(TrackLayout::new(tracks))
}

/// BFS spanning-tree depths, as a layering, for connected hosts. Shared by
/// the class constructors.
pub(crate) fn distance_layering(g: &Graph, root: usize) -> Layering {
    Layering::from_assignment(&bfs_distances(g, root))
}
