//! Exponential-time exact oracles at desk scale.
//!
//! These are the ground truth for every constructive module: fixed-layering
//! realizability by backtracking over per-layer orders, leveled planarity by
//! enumerating spanning-tree level assignments, track number by insertion
//! backtracking, and (layered) pathwidth by subset dynamic programming over
//! vertex orders.
//!
//! All searches are deterministic (fixed iteration orders), so witnesses are
//! reproducible byte for byte. Budgets are explicit: exceeding a cap is an
//! error, never silent truncation.

use std::collections::{BTreeMap, VecDeque};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{bipartition, is_caterpillar_forest, Bipartition, Graph, GraphError, Layering};
use crate::layout::{LayeredPathDecomposition, LeveledDrawing, PathDecomposition, TrackLayout};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Caps for the exact searches. `max_vertices` bounds the instance size,
/// `max_states` the number of search-node expansions, and `time_hint` is an
/// optional wall-clock cutoff checked at search nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverBudget {
    pub max_vertices: usize,
    pub max_states: u64,
    pub time_hint: Option<Duration>,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget { max_vertices: 14, max_states: 50_000_000, time_hint: None }
    }
}

impl SolverBudget {
    /// Default cap for the general track-layout search.
    pub fn for_track_layouts() -> Self {
        SolverBudget { max_vertices: 10, ..Self::default() }
    }

    /// Default cap for exact layered pathwidth.
    pub fn for_layered_pathwidth() -> Self {
        SolverBudget { max_vertices: 10, ..Self::default() }
    }

    /// Default cap for the exact pathwidth subset DP.
    pub fn for_pathwidth() -> Self {
        SolverBudget { max_vertices: 18, ..Self::default() }
    }

    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }

    pub fn with_max_states(mut self, s: u64) -> Self {
        self.max_states = s;
        self
    }
}

struct Meter<'a> {
    budget: &'a SolverBudget,
    states: u64,
    started: Instant,
}

impl<'a> Meter<'a> {
    fn new(budget: &'a SolverBudget) -> Self {
        Meter { budget, states: 0, started: Instant::now() }
    }

    fn tick(&mut self) -> Result<(), SolverError> {
        self.states += 1;
        if self.states > self.budget.max_states {
            return Err(SolverError::BudgetExceeded(format!(
                "state cap {} reached",
                self.budget.max_states
            )));
        }
        if let Some(limit) = self.budget.time_hint {
            if self.states % 4096 == 0 && self.started.elapsed() > limit {
                return Err(SolverError::BudgetExceeded(format!(
                    "time hint {limit:?} elapsed"
                )));
            }
        }
        Ok(())
    }
}

fn check_vertex_cap(g: &Graph, budget: &SolverBudget) -> Result<(), SolverError> {
    if g.n() > budget.max_vertices {
        return Err(SolverError::BudgetExceeded(format!(
            "{} vertices exceeds cap {}",
            g.n(),
            budget.max_vertices
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Fixed-layering realizability
// ---------------------------------------------------------------------------

/// Searches for a valid drawing with exactly the given layering, by
/// backtracking over per-layer left-to-right orders with incremental
/// inversion pruning. Layers are processed outward from the one carrying
/// the most incident edges, so each layer is ordered against an already
/// fixed neighbor.
///
/// Returns `None` when no order works (for strict mode this includes
/// layerings with same-layer edges). A layering that does not cover the
/// graph or has an edge spanning two or more boundaries is an input error.
pub fn realize_layering(
    g: &Graph,
    l: &Layering,
    weak: bool,
    budget: &SolverBudget,
) -> Result<Option<LeveledDrawing>, SolverError> {
    let mut meter = Meter::new(budget);
    realize_with_meter(g, l, weak, &mut meter)
}

fn realize_with_meter(
    g: &Graph,
    l: &Layering,
    weak: bool,
    meter: &mut Meter,
) -> Result<Option<LeveledDrawing>, SolverError> {
    let layer_of = l.assignment(g.n())?;
    for (i, layer) in l.layers().iter().enumerate() {
        if layer.is_empty() {
            return Err(SolverError::InvalidInput(format!("layer {i} is empty")));
        }
    }
    let mut same_level = vec![Vec::new(); g.n()];
    for &(u, v) in g.edges() {
        match layer_of[u].abs_diff(layer_of[v]) {
            0 => {
                if !weak {
                    return Ok(None);
                }
                same_level[u].push(v);
                same_level[v].push(u);
            }
            1 => {}
            _ => {
                return Err(SolverError::InvalidInput(format!(
                    "edge ({u}, {v}) spans more than one layer boundary"
                )))
            }
        }
    }
    let layer_count = l.layers().len();
    if layer_count == 0 {
        return Ok(Some(LeveledDrawing::new(vec![], weak)));
    }
    let mut members: Vec<Vec<usize>> = l.layers().to_vec();
    for layer in &mut members {
        layer.sort_unstable();
    }
    // Edge load per layer; the heaviest goes first, then outward.
    let load: Vec<usize> = (0..layer_count)
        .map(|i| {
            members[i]
                .iter()
                .map(|&v| g.degree(v))
                .sum()
        })
        .collect();
    let start = (0..layer_count).max_by_key(|&i| (load[i], std::cmp::Reverse(i))).unwrap();
    let mut order: Vec<usize> = Vec::with_capacity(layer_count);
    order.push(start);
    for i in (0..start).rev() {
        order.push(i);
    }
    for i in start + 1..layer_count {
        order.push(i);
    }

    let mut search = RealizeSearch {
        g,
        layer_of: &layer_of,
        members: &members,
        same_level: &same_level,
        weak,
        order: &order,
        placed: vec![false; g.n()],
        pos: vec![usize::MAX; g.n()],
        arrangement: vec![Vec::new(); layer_count],
        fixed: vec![false; layer_count],
    };
    if search.solve_layer(0, meter)? {
        let levels = search.arrangement;
        let drawing = LeveledDrawing::new(levels, weak);
        Ok(Some(drawing))
    } else {
        Ok(None)
    }
}

struct RealizeSearch<'a> {
    g: &'a Graph,
    layer_of: &'a [usize],
    members: &'a [Vec<usize>],
    same_level: &'a [Vec<usize>],
    weak: bool,
    order: &'a [usize],
    placed: Vec<bool>,
    pos: Vec<usize>,
    arrangement: Vec<Vec<usize>>,
    fixed: Vec<bool>,
}

impl RealizeSearch<'_> {
    fn solve_layer(&mut self, k: usize, meter: &mut Meter) -> Result<bool, SolverError> {
        if k == self.order.len() {
            return Ok(true);
        }
        let layer = self.order[k];
        // Running maxima of fixed-neighbor positions: [below, above].
        let runmax = [0usize, 0usize];
        self.place_at(k, layer, 0, runmax, meter)
    }

    fn place_at(
        &mut self,
        k: usize,
        layer: usize,
        p: usize,
        runmax: [usize; 2],
        meter: &mut Meter,
    ) -> Result<bool, SolverError> {
        if p == self.members[layer].len() {
            self.fixed[layer] = true;
            let done = self.solve_layer(k + 1, meter)?;
            if !done {
                self.fixed[layer] = false;
            }
            return Ok(done);
        }
        // The previous vertex's unplaced same-level neighbors must come next.
        if self.weak && p > 0 {
            let prev = self.arrangement[layer][p - 1];
            let pending: Vec<usize> =
                self.same_level[prev].iter().copied().filter(|&u| !self.placed[u]).collect();
            match pending.len() {
                0 => {}
                1 => return self.try_vertex(k, layer, p, pending[0], runmax, meter),
                _ => return Ok(false),
            }
        }
        let members: &[usize] = &self.members[layer];
        for idx in 0..members.len() {
            let v = members[idx];
            if self.placed[v] {
                continue;
            }
            if self.try_vertex(k, layer, p, v, runmax, meter)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn try_vertex(
        &mut self,
        k: usize,
        layer: usize,
        p: usize,
        v: usize,
        runmax: [usize; 2],
        meter: &mut Meter,
    ) -> Result<bool, SolverError> {
        meter.tick()?;
        if self.weak {
            for &u in &self.same_level[v] {
                if self.placed[u] && self.pos[u] + 1 != p {
                    return Ok(false);
                }
            }
        }
        let mut next_runmax = runmax;
        for (side, adj_layer) in [(0usize, layer.checked_sub(1)), (1, layer.checked_add(1))] {
            let Some(f) = adj_layer else { continue };
            if f >= self.fixed.len() || !self.fixed[f] {
                continue;
            }
            let mut min_nbr = usize::MAX;
            let mut max_nbr = 0usize;
            let mut any = false;
            for &w in self.g.neighbors(v) {
                if self.layer_of[w] == f {
                    any = true;
                    min_nbr = min_nbr.min(self.pos[w]);
                    max_nbr = max_nbr.max(self.pos[w]);
                }
            }
            if any {
                if next_runmax[side] > min_nbr {
                    return Ok(false);
                }
                next_runmax[side] = next_runmax[side].max(max_nbr);
            }
        }
        self.placed[v] = true;
        self.pos[v] = p;
        self.arrangement[layer].push(v);
        let done = self.place_at(k, layer, p + 1, next_runmax, meter)?;
        if !done {
            self.arrangement[layer].pop();
            self.pos[v] = usize::MAX;
            self.placed[v] = false;
        }
        Ok(done)
    }
}

// ---------------------------------------------------------------------------
// Leveled planarity
// ---------------------------------------------------------------------------

/// Decides leveled planarity and returns a witness drawing when one exists.
///
/// The graph must be bipartite; per component, level assignments are
/// enumerated as +-1 signs over a BFS spanning tree (reflection-canonical),
/// pruned by non-tree edge consistency and by the fact that the bipartite
/// graph between two consecutive levels of any valid drawing must be a
/// caterpillar forest. Survivors go to [`realize_layering`]. Components are
/// stacked on disjoint level ranges.
pub fn leveled_planar_exact(
    g: &Graph,
    budget: &SolverBudget,
) -> Result<Option<LeveledDrawing>, SolverError> {
    check_vertex_cap(g, budget)?;
    let mut meter = Meter::new(budget);
    leveled_planar_with_meter(g, &mut meter, true)
}

fn leveled_planar_with_meter(
    g: &Graph,
    meter: &mut Meter,
    prune_pairs: bool,
) -> Result<Option<LeveledDrawing>, SolverError> {
    if g.n() == 0 {
        return Ok(Some(LeveledDrawing::new(vec![], false)));
    }
    if !bipartition(g).is_bipartite() {
        return Ok(None);
    }
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for comp in g.components() {
        let (sub, back) = g.induced(&comp);
        let Some(drawing) = component_leveled_planar(&sub, meter, prune_pairs)? else {
            return Ok(None);
        };
        for level in drawing.levels {
            levels.push(level.into_iter().map(|v| back[v]).collect());
        }
    }
    Ok(Some(LeveledDrawing::new(levels, false)))
}

/// Search over spanning-tree sign assignments for one connected component.
fn component_leveled_planar(
    g: &Graph,
    meter: &mut Meter,
    prune_pairs: bool,
) -> Result<Option<LeveledDrawing>, SolverError> {
    let n = g.n();
    if n == 1 {
        return Ok(Some(LeveledDrawing::new(vec![vec![0]], false)));
    }
    // BFS order from vertex 0; every later vertex has an earlier neighbor.
    let mut order = vec![0usize];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let mut level = vec![i64::MIN; n];
    level[0] = 0;
    sign_search(g, &order, &parent, 1, &mut level, meter, prune_pairs)
}

fn sign_search(
    g: &Graph,
    order: &[usize],
    parent: &[usize],
    idx: usize,
    level: &mut Vec<i64>,
    meter: &mut Meter,
    prune_pairs: bool,
) -> Result<Option<LeveledDrawing>, SolverError> {
    if idx == order.len() {
        let min = level.iter().copied().min().unwrap();
        let assignment: Vec<usize> =
            level.iter().map(|&l| usize::try_from(l - min).unwrap()).collect();
        let layering = Layering::from_assignment(&assignment);
        return realize_with_meter(g, &layering, false, meter);
    }
    let v = order[idx];
    // Reflections pair up sign vectors; fixing the first sign halves the
    // enumeration without losing realizable layerings.
    let signs: &[i64] = if idx == 1 { &[1] } else { &[1, -1] };
    for &sign in signs {
        meter.tick()?;
        let candidate = level[parent[v]] + sign;
        let consistent = g
            .neighbors(v)
            .iter()
            .all(|&u| level[u] == i64::MIN || (level[u] - candidate).abs() == 1);
        if !consistent {
            continue;
        }
        level[v] = candidate;
        if !prune_pairs || pair_prune_ok(g, level, candidate) {
            let found = sign_search(g, order, parent, idx + 1, level, meter, prune_pairs)?;
            if found.is_some() {
                return Ok(found);
            }
        }
        level[v] = i64::MIN;
    }
    Ok(None)
}

/// In any crossing-free drawing, the edges between two consecutive levels
/// form a caterpillar forest; reject partial level assignments that already
/// violate this around the level just assigned.
fn pair_prune_ok(g: &Graph, level: &[i64], at: i64) -> bool {
    pair_is_caterpillar_forest(g, level, at - 1, at)
        && pair_is_caterpillar_forest(g, level, at, at + 1)
}

fn pair_is_caterpillar_forest(g: &Graph, level: &[i64], la: i64, lb: i64) -> bool {
    let verts: Vec<usize> =
        (0..g.n()).filter(|&v| level[v] == la || level[v] == lb).collect();
    if verts.len() < 4 {
        return true;
    }
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    let mut uf: Vec<usize> = (0..verts.len()).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
            r
        } else {
            x
        }
    }
    for (i, &u) in verts.iter().enumerate() {
        if level[u] != la {
            continue;
        }
        for &w in g.neighbors(u) {
            if level[w] == lb {
                let j = index[&w];
                adj[i].push(j);
                adj[j].push(i);
                let (ri, rj) = (find(&mut uf, i), find(&mut uf, j));
                if ri == rj {
                    return false;
                }
                uf[ri] = rj;
            }
        }
    }
    for i in 0..verts.len() {
        if adj[i].len() < 2 {
            continue;
        }
        let spine_degree = adj[i].iter().filter(|&&j| adj[j].len() >= 2).count();
        if spine_degree > 2 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Track layouts
// ---------------------------------------------------------------------------

/// Raw exhaustive search for a `k`-track layout, one component at a time,
/// inserting vertices in BFS order into every track and position. No
/// polynomial shortcuts; [`track_layout_exists`] layers those on top.
pub fn track_layout_search(
    g: &Graph,
    k: usize,
    budget: &SolverBudget,
) -> Result<Option<TrackLayout>, SolverError> {
    check_vertex_cap(g, budget)?;
    let mut meter = Meter::new(budget);
    track_search_with_meter(g, k, &mut meter)
}

fn track_search_with_meter(
    g: &Graph,
    k: usize,
    meter: &mut Meter,
) -> Result<Option<TrackLayout>, SolverError> {
    if g.n() == 0 {
        return Ok(Some(TrackLayout::new(vec![Vec::new(); k])));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut tracks: Vec<Vec<usize>> = vec![Vec::new(); k];
    for comp in g.components() {
        let (sub, back) = g.induced(&comp);
        match component_track_search(&sub, k, meter)? {
            None => return Ok(None),
            Some(sub_tracks) => {
                for (t, track) in sub_tracks.tracks.into_iter().enumerate() {
                    tracks[t].extend(track.into_iter().map(|v| back[v]));
                }
            }
        }
    }
    Ok(Some(TrackLayout::new(tracks)))
}

fn component_track_search(
    g: &Graph,
    k: usize,
    meter: &mut Meter,
) -> Result<Option<TrackLayout>, SolverError> {
    let n = g.n();
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let mut state = TrackSearch {
        g,
        k,
        order,
        track_of: vec![usize::MAX; n],
        pos: vec![usize::MAX; n],
        tracks: vec![Vec::new(); k],
        edges: Vec::new(),
    };
    if state.insert(0, meter)? {
        Ok(Some(TrackLayout::new(state.tracks)))
    } else {
        Ok(None)
    }
}

struct TrackSearch<'a> {
    g: &'a Graph,
    k: usize,
    order: Vec<usize>,
    track_of: Vec<usize>,
    pos: Vec<usize>,
    tracks: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TrackSearch<'_> {
    fn insert(&mut self, idx: usize, meter: &mut Meter) -> Result<bool, SolverError> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let v = self.order[idx];
        let used = self.tracks.iter().take_while(|t| !t.is_empty()).count();
        // Unused tracks are interchangeable: only the first may be opened.
        let max_track = (used + 1).min(self.k);
        for t in 0..max_track {
            if self.g.neighbors(v).iter().any(|&w| self.track_of[w] == t) {
                continue;
            }
            let len = self.tracks[t].len();
            for p in 0..=len {
                meter.tick()?;
                if self.try_place(v, t, p) {
                    if self.insert(idx + 1, meter)? {
                        return Ok(true);
                    }
                    self.unplace(v, t, p);
                }
            }
        }
        Ok(false)
    }

    fn try_place(&mut self, v: usize, t: usize, p: usize) -> bool {
        self.tracks[t].insert(p, v);
        for (i, &w) in self.tracks[t].iter().enumerate() {
            self.pos[w] = i;
        }
        self.track_of[v] = t;
        let mut ok = true;
        'check: for &w in self.g.neighbors(v) {
            if self.track_of[w] == usize::MAX {
                continue;
            }
            for &(a, b) in &self.edges {
                if crossing(
                    (self.track_of[v], self.pos[v]),
                    (self.track_of[w], self.pos[w]),
                    (self.track_of[a], self.pos[a]),
                    (self.track_of[b], self.pos[b]),
                ) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            for &w in self.g.neighbors(v) {
                if self.track_of[w] != usize::MAX && w != v {
                    self.edges.push((v, w));
                }
            }
            true
        } else {
            self.unplace(v, t, p);
            false
        }
    }

    fn unplace(&mut self, v: usize, t: usize, p: usize) {
        self.edges.retain(|&(a, _)| a != v);
        self.tracks[t].remove(p);
        for (i, &w) in self.tracks[t].iter().enumerate() {
            self.pos[w] = i;
        }
        self.track_of[v] = usize::MAX;
        self.pos[v] = usize::MAX;
    }
}

fn crossing(
    e1a: (usize, usize),
    e1b: (usize, usize),
    e2a: (usize, usize),
    e2b: (usize, usize),
) -> bool {
    // Orient both edges by track index; they can only cross when they join
    // the same pair of tracks.
    let (p1, q1) = if e1a.0 < e1b.0 { (e1a, e1b) } else { (e1b, e1a) };
    let (p2, q2) = if e2a.0 < e2b.0 { (e2a, e2b) } else { (e2b, e2a) };
    if p1.0 != p2.0 || q1.0 != q2.0 {
        return false;
    }
    (p1.1 < p2.1 && q1.1 > q2.1) || (p1.1 > p2.1 && q1.1 < q2.1)
}

/// Decides whether a `k`-track layout exists. `k <= 2` is answered in
/// polynomial time (k = 1: edgeless; k = 2: caterpillar forests, with an
/// explicit witness construction); larger `k` goes to the exhaustive
/// search.
pub fn track_layout_exists(
    g: &Graph,
    k: usize,
    budget: &SolverBudget,
) -> Result<Option<TrackLayout>, SolverError> {
    match k {
        0 => Ok(if g.n() == 0 { Some(TrackLayout::new(vec![])) } else { None }),
        1 => {
            if g.m() == 0 {
                Ok(Some(TrackLayout::new(vec![(0..g.n()).collect()])))
            } else {
                Ok(None)
            }
        }
        2 => {
            if is_caterpillar_forest(g) {
                Ok(Some(caterpillar_two_tracks(g)))
            } else {
                Ok(None)
            }
        }
        _ => track_layout_search(g, k, budget),
    }
}

/// Least `k` admitting a track layout, with a validating witness.
pub fn track_number_exact(
    g: &Graph,
    budget: &SolverBudget,
) -> Result<(usize, TrackLayout), SolverError> {
    if g.n() == 0 {
        return Ok((0, TrackLayout::new(vec![])));
    }
    if g.m() == 0 {
        return Ok((1, TrackLayout::new(vec![(0..g.n()).collect()])));
    }
    if is_caterpillar_forest(g) {
        return Ok((2, caterpillar_two_tracks(g)));
    }
    for k in 3..=g.n() {
        if let Some(t) = track_layout_search(g, k, budget)? {
            return Ok((k, t));
        }
    }
    unreachable!("singleton tracks always give an n-track layout")
}

/// Two-track witness for a caterpillar forest: walk each component's spine,
/// emitting the spine vertex and then its leaves; split that sequence by a
/// proper 2-coloring.
fn caterpillar_two_tracks(g: &Graph) -> TrackLayout {
    let mut tracks: Vec<Vec<usize>> = vec![Vec::new(), Vec::new()];
    let colors = match bipartition(g) {
        Bipartition::Coloring(c) => c,
        Bipartition::OddCycle(_) => unreachable!("caterpillar forests are forests"),
    };
    for comp in g.components() {
        if comp.len() == 1 {
            tracks[0].push(comp[0]);
            continue;
        }
        let spine_set: Vec<usize> = comp.iter().copied().filter(|&v| g.degree(v) >= 2).collect();
        let spine: Vec<usize> = if spine_set.is_empty() {
            vec![comp[0]]
        } else {
            let ends: Vec<usize> = spine_set
                .iter()
                .copied()
                .filter(|&v| {
                    g.neighbors(v).iter().filter(|&&w| g.degree(w) >= 2).count() <= 1
                })
                .collect();
            let start = ends.into_iter().min().unwrap_or(spine_set[0]);
            let mut walk = vec![start];
            let mut prev = usize::MAX;
            let mut cur = start;
            while walk.len() < spine_set.len() {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| w != prev && g.degree(w) >= 2)
                    .expect("spine of a caterpillar is a path");
                walk.push(next);
                prev = cur;
                cur = next;
            }
            walk
        };
        // Flip colors so each component starts from color 0 deterministically.
        let flip = colors[spine[0]];
        let mut sequence = Vec::new();
        for &s in &spine {
            sequence.push(s);
            let mut leaves: Vec<usize> =
                g.neighbors(s).iter().copied().filter(|&w| g.degree(w) == 1).collect();
            leaves.sort_unstable();
            sequence.extend(leaves);
        }
        for x in sequence {
            tracks[usize::from(colors[x] ^ flip)].push(x);
        }
    }
    TrackLayout::new(tracks)
}

// ---------------------------------------------------------------------------
// Layering enumeration
// ---------------------------------------------------------------------------

/// All layerings of a connected graph, canonicalized up to translation
/// (least layer 0, vertex 0's layer fixed by the walk) and reflection (the
/// least-indexed vertex off vertex 0's layer sits above it).
pub fn enumerate_layerings(g: &Graph) -> Result<Vec<Layering>, SolverError> {
    if g.n() == 0 {
        return Ok(vec![Layering::from_layers(vec![])]);
    }
    if !g.is_connected() {
        return Err(SolverError::InvalidInput("layering enumeration needs a connected graph".into()));
    }
    if g.n() > 16 {
        return Err(SolverError::BudgetExceeded(
            "layering enumeration is capped at 16 vertices".into(),
        ));
    }
    let mut out = Vec::new();
    for_each_layering(g, &mut |assignment| {
        out.push(Layering::from_assignment(assignment));
    });
    Ok(out)
}

/// Enumerates canonical level assignments of a connected graph; each edge
/// spans at most one boundary. The callback receives a translation-
/// normalized vertex -> layer map.
fn for_each_layering(g: &Graph, f: &mut impl FnMut(&[usize])) {
    let n = g.n();
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let mut level = vec![i64::MIN; n];
    level[0] = 0;
    fn rec(
        g: &Graph,
        order: &[usize],
        idx: usize,
        level: &mut Vec<i64>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if idx == order.len() {
            // Reflection canonicalization: the first vertex (by index) with
            // a nonzero level must be positive.
            for v in 0..g.n() {
                if level[v] != 0 {
                    if level[v] < 0 {
                        return;
                    }
                    break;
                }
            }
            let min = level.iter().copied().min().unwrap();
            let assignment: Vec<usize> =
                level.iter().map(|&l| usize::try_from(l - min).unwrap()).collect();
            f(&assignment);
            return;
        }
        let v = order[idx];
        for delta in [-1i64, 0, 1] {
            // Any already-assigned neighbor pins the candidate within +-1.
            let anchor = g.neighbors(v).iter().find(|&&u| level[u] != i64::MIN);
            let candidate = match anchor {
                Some(&u) => level[u] + delta,
                None => unreachable!("BFS order keeps the prefix connected"),
            };
            if g.neighbors(v)
                .iter()
                .any(|&u| level[u] != i64::MIN && (level[u] - candidate).abs() > 1)
            {
                continue;
            }
            level[v] = candidate;
            rec(g, order, idx + 1, level, f);
            level[v] = i64::MIN;
        }
    }
    rec(g, &order, 1, &mut level, f);
}

// ---------------------------------------------------------------------------
// Layered pathwidth
// ---------------------------------------------------------------------------

/// Exact layered pathwidth with a validating witness: minimum over all
/// canonical layerings (per component) of a subset DP over vertex orders,
/// where the bag at each step is the boundary of the prefix plus the new
/// vertex, measured by its largest intersection with a layer.
pub fn layered_pathwidth_exact(
    g: &Graph,
    budget: &SolverBudget,
) -> Result<(usize, LayeredPathDecomposition), SolverError> {
    check_vertex_cap(g, budget)?;
    let mut meter = Meter::new(budget);
    if g.n() == 0 {
        return Ok((
            0,
            LayeredPathDecomposition {
                decomposition: PathDecomposition::new(vec![]),
                layering: Layering::from_layers(vec![]),
            },
        ));
    }
    let mut width = 0usize;
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for comp in g.components() {
        let (sub, back) = g.induced(&comp);
        let (w, lpd) = component_lpw(&sub, &mut meter)?;
        width = width.max(w);
        for bag in lpd.decomposition.bags() {
            bags.push(bag.iter().map(|&v| back[v]).collect());
        }
        // Components share layer indices; bag/layer intersections stay
        // within one component.
        for (j, layer) in lpd.layering.layers().iter().enumerate() {
            if layers.len() <= j {
                layers.push(Vec::new());
            }
            layers[j].extend(layer.iter().map(|&v| back[v]));
        }
    }
    Ok((
        width,
        LayeredPathDecomposition {
            decomposition: PathDecomposition::new(bags),
            layering: Layering::from_layers(layers),
        },
    ))
}

fn component_lpw(
    g: &Graph,
    meter: &mut Meter,
) -> Result<(usize, LayeredPathDecomposition), SolverError> {
    let n = g.n();
    debug_assert!(n <= 16);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut best_width = usize::MAX;
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None; // (assignment, order)
    let mut budget_hit: Option<SolverError> = None;
    for_each_layering(g, &mut |assignment| {
        if budget_hit.is_some() {
            return;
        }
        let layer_masks: Vec<u32> = {
            let count = assignment.iter().max().map_or(0, |&l| l + 1);
            let mut masks = vec![0u32; count];
            for (v, &l) in assignment.iter().enumerate() {
                masks[l] |= 1 << v;
            }
            masks
        };
        let mut dp = vec![u8::MAX; (full as usize) + 1];
        let mut choice = vec![u8::MAX; (full as usize) + 1];
        dp[0] = 0;
        for s in 0..=full {
            if dp[s as usize] == u8::MAX {
                continue;
            }
            if let Err(e) = meter.tick() {
                budget_hit = Some(e);
                return;
            }
            let border: u32 = {
                let mut b = 0u32;
                let mut rest = s;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if adj[v] & !s != 0 {
                        b |= 1 << v;
                    }
                }
                b
            };
            let mut remaining = full & !s;
            while remaining != 0 {
                let v = remaining.trailing_zeros() as usize;
                remaining &= remaining - 1;
                let bag = border | (1 << v);
                let measure = layer_masks
                    .iter()
                    .map(|&mask| (bag & mask).count_ones() as u8)
                    .max()
                    .unwrap_or(0);
                let t = s | (1 << v);
                let value = dp[s as usize].max(measure);
                if value < dp[t as usize] {
                    dp[t as usize] = value;
                    choice[t as usize] = v as u8;
                }
            }
        }
        let w = dp[full as usize] as usize;
        if w < best_width {
            let mut order = Vec::with_capacity(n);
            let mut s = full;
            while s != 0 {
                let v = choice[s as usize] as usize;
                order.push(v);
                s &= !(1 << v);
            }
            order.reverse();
            best_width = w;
            best = Some((assignment.to_vec(), order));
        }
    });
    if let Some(e) = budget_hit {
        return Err(e);
    }
    let (assignment, order) = best.expect("connected graphs always admit a layering");
    // Rebuild the canonical bags from the optimal order.
    let mut bags = Vec::with_capacity(n);
    let mut placed = 0u32;
    for &v in &order {
        let mut bag: Vec<usize> = Vec::new();
        let mut rest = placed;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[u] & !placed != 0 {
                bag.push(u);
            }
        }
        bag.push(v);
        bags.push(bag);
        placed |= 1 << v;
    }
    let layering = Layering::from_assignment(&assignment);
    Ok((
        best_width,
        LayeredPathDecomposition { decomposition: PathDecomposition::new(bags), layering },
    ))
}

// ---------------------------------------------------------------------------
// Pathwidth
// ---------------------------------------------------------------------------

/// Exact pathwidth by subset DP over vertex orders (vertex separation
/// formulation): the bag at each step is the boundary of the prefix plus
/// the newly placed vertex.
pub fn pathwidth_exact(g: &Graph, budget: &SolverBudget) -> Result<usize, SolverError> {
    check_vertex_cap(g, budget)?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let mut meter = Meter::new(budget);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut dp = vec![u8::MAX; (full as usize) + 1];
    dp[0] = 0;
    for s in 0..=full {
        if dp[s as usize] == u8::MAX {
            continue;
        }
        meter.tick()?;
        let mut border_count = 0u8;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & !s != 0 {
                border_count += 1;
            }
        }
        let mut remaining = full & !s;
        while remaining != 0 {
            let v = remaining.trailing_zeros() as usize;
            remaining &= remaining - 1;
            let bag_size = border_count + 1;
            let t = (s | (1 << v)) as usize;
            let value = dp[s as usize].max(bag_size - 1);
            if value < dp[t] {
                dp[t] = value;
            }
        }
    }
    Ok(dp[full as usize] as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{
        validate_layered_path_decomposition, validate_leveled_drawing, validate_track_layout,
    };

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete_binary_tree(h: u32) -> Graph {
        let n = (1usize << (h + 1)) - 1;
        let edges: Vec<_> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn budget() -> SolverBudget {
        SolverBudget::default()
    }

    #[test]
    fn realize_c4_layering() {
        let g = cycle(4);
        let l = Layering::from_layers(vec![vec![0], vec![1, 3], vec![2]]);
        let d = realize_layering(&g, &l, false, &budget()).unwrap().unwrap();
        assert!(validate_leveled_drawing(&g, &d).unwrap().ok());
    }

    #[test]
    fn realize_k23_with_three_middle_vertices() {
        // 2-side {0, 4}, 3-side {1, 2, 3}, middle layer between the ends.
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let l = Layering::from_layers(vec![vec![0], vec![1, 2, 3], vec![4]]);
        let d = realize_layering(&g, &l, false, &budget()).unwrap().unwrap();
        assert!(validate_leveled_drawing(&g, &d).unwrap().ok());
    }

    #[test]
    fn realize_k33_split_layering_is_absent() {
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        let g = Graph::new(6, &edges).unwrap();
        let l = Layering::from_layers(vec![vec![0, 2], vec![3, 4, 5], vec![1]]);
        assert!(realize_layering(&g, &l, false, &budget()).unwrap().is_none());
    }

    #[test]
    fn realize_rejects_wide_edges_and_reports_none_for_strict_same_layer() {
        let g = path(2);
        let wide = Layering::from_layers(vec![vec![0], vec![], vec![1]]);
        assert!(matches!(
            realize_layering(&g, &wide, false, &budget()),
            Err(SolverError::InvalidInput(_))
        ));
        let flat = Layering::from_layers(vec![vec![0, 1]]);
        assert!(realize_layering(&g, &flat, false, &budget()).unwrap().is_none());
        let weak = realize_layering(&g, &flat, true, &budget()).unwrap().unwrap();
        assert!(validate_leveled_drawing(&g, &weak).unwrap().ok());
    }

    #[test]
    fn trees_are_leveled_planar() {
        for g in [path(7), complete_binary_tree(2), Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()]
        {
            let d = leveled_planar_exact(&g, &budget()).unwrap().unwrap();
            assert!(validate_leveled_drawing(&g, &d).unwrap().ok());
        }
    }

    #[test]
    fn odd_cycles_are_not_leveled_planar() {
        assert!(leveled_planar_exact(&cycle(3), &budget()).unwrap().is_none());
        assert!(leveled_planar_exact(&cycle(5), &budget()).unwrap().is_none());
    }

    #[test]
    fn even_cycles_are_leveled_planar() {
        for n in [4, 6, 8] {
            let g = cycle(n);
            let d = leveled_planar_exact(&g, &budget()).unwrap().unwrap();
            assert!(validate_leveled_drawing(&g, &d).unwrap().ok());
        }
    }

    #[test]
    fn k33_is_not_leveled_planar() {
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        let g = Graph::new(6, &edges).unwrap();
        assert!(leveled_planar_exact(&g, &budget()).unwrap().is_none());
    }

    #[test]
    fn disconnected_components_stack_levels() {
        let g = Graph::new(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let d = leveled_planar_exact(&g, &budget()).unwrap().unwrap();
        assert!(validate_leveled_drawing(&g, &d).unwrap().ok());
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let g = path(15);
        assert!(matches!(
            leveled_planar_exact(&g, &budget()),
            Err(SolverError::BudgetExceeded(_))
        ));
        let ok = leveled_planar_exact(&g, &budget().with_max_vertices(20)).unwrap();
        assert!(ok.is_some());
    }

    /// The caterpillar-pair prune must not change any answer, only speed.
    #[test]
    fn pair_prune_preserves_answers_up_to_n5() {
        for n in 1..=5usize {
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
                if !g.is_connected() {
                    continue;
                }
                let b = budget();
                let mut m1 = Meter::new(&b);
                let mut m2 = Meter::new(&b);
                let pruned = leveled_planar_with_meter(&g, &mut m1, true).unwrap();
                let plain = leveled_planar_with_meter(&g, &mut m2, false).unwrap();
                assert_eq!(pruned.is_some(), plain.is_some(), "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn caterpillars_have_track_number_2() {
        let caterpillar =
            Graph::new(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let (k, witness) = track_number_exact(&caterpillar, &budget()).unwrap();
        assert_eq!(k, 2);
        assert!(validate_track_layout(&caterpillar, &witness).unwrap().ok());
        // The raw search agrees with the polynomial shortcut.
        let searched = track_layout_search(&caterpillar, 2, &budget()).unwrap().unwrap();
        assert!(validate_track_layout(&caterpillar, &searched).unwrap().ok());
    }

    #[test]
    fn c4_has_track_number_3() {
        let g = cycle(4);
        assert!(track_layout_search(&g, 2, &budget()).unwrap().is_none());
        let (k, witness) = track_number_exact(&g, &budget()).unwrap();
        assert_eq!(k, 3);
        assert!(validate_track_layout(&g, &witness).unwrap().ok());
    }

    #[test]
    fn k4_has_track_number_4() {
        let g = complete(4);
        let (k, witness) = track_number_exact(&g, &budget()).unwrap();
        assert_eq!(k, 4);
        assert!(validate_track_layout(&g, &witness).unwrap().ok());
    }

    #[test]
    fn edgeless_graphs_fit_one_track() {
        let g = Graph::new(4, &[]).unwrap();
        let (k, witness) = track_number_exact(&g, &budget()).unwrap();
        assert_eq!(k, 1);
        assert!(validate_track_layout(&g, &witness).unwrap().ok());
    }

    #[test]
    fn disconnected_track_layouts_concatenate() {
        let g = Graph::new(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
            .unwrap();
        let t = track_layout_search(&g, 3, &budget()).unwrap().unwrap();
        assert!(validate_track_layout(&g, &t).unwrap().ok());
    }

    #[test]
    fn layered_pathwidth_of_k4_is_2() {
        let (w, witness) = layered_pathwidth_exact(&complete(4), &budget()).unwrap();
        assert_eq!(w, 2);
        let report = validate_layered_path_decomposition(&complete(4), &witness);
        assert!(report.ok());
        assert_eq!(witness.layered_width(), 2);
    }

    #[test]
    fn layered_pathwidth_of_trees_is_1() {
        for g in [path(6), complete_binary_tree(2)] {
            let (w, witness) = layered_pathwidth_exact(&g, &budget().with_max_vertices(10)).unwrap();
            assert_eq!(w, 1, "tree should have layered pathwidth 1");
            assert!(validate_layered_path_decomposition(&g, &witness).ok());
        }
    }

    #[test]
    fn layered_pathwidth_of_single_vertex_is_1() {
        let g = Graph::new(1, &[]).unwrap();
        let (w, witness) = layered_pathwidth_exact(&g, &budget()).unwrap();
        assert_eq!(w, 1);
        assert!(validate_layered_path_decomposition(&g, &witness).ok());
    }

    #[test]
    fn layered_pathwidth_of_disconnected_graph_is_max_over_components() {
        let g = Graph::new(7, &[(0, 1), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (2, 5), (2, 6)])
            .unwrap();
        let (w, witness) = layered_pathwidth_exact(&g, &budget()).unwrap();
        let (w2, _) = layered_pathwidth_exact(&g.induced(&[2, 3, 4, 5, 6]).0, &budget()).unwrap();
        assert_eq!(w, w2);
        assert!(validate_layered_path_decomposition(&g, &witness).ok());
    }

    #[test]
    fn pathwidth_examples() {
        assert_eq!(pathwidth_exact(&path(5), &budget()).unwrap(), 1);
        assert_eq!(pathwidth_exact(&complete(4), &budget()).unwrap(), 3);
        assert_eq!(pathwidth_exact(&complete_binary_tree(3), &SolverBudget::for_pathwidth()).unwrap(), 2);
        assert_eq!(pathwidth_exact(&cycle(6), &budget()).unwrap(), 2);
    }

    #[test]
    fn enumerate_layerings_of_an_edge() {
        let g = path(2);
        let all = enumerate_layerings(&g).unwrap();
        // Vertex 1 at the same level as vertex 0, or one below (one above is
        // the reflection of one below).
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn enumerated_layerings_are_valid_and_distinct() {
        let g = cycle(4);
        let all = enumerate_layerings(&g).unwrap();
        let mut seen = HashSet::new();
        for l in &all {
            assert!(crate::graph::validate_layering(&g, l).unwrap().ok());
            assert!(seen.insert(format!("{:?}", l.layers())));
        }
    }

    #[test]
    fn three_way_equivalence_spot_checks() {
        // Leveled planar <=> layered pathwidth 1 <=> bipartite and track
        // number <= 3, on a few hand-picked hosts.
        let hosts: Vec<Graph> = vec![
            cycle(4),
            cycle(6),
            cycle(5),
            complete(4),
            path(6),
            complete_binary_tree(2),
            Graph::new(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap(), // K_{2,3}
        ];
        for g in hosts {
            let lp = leveled_planar_exact(&g, &budget()).unwrap().is_some();
            let (w, _) = layered_pathwidth_exact(&g, &budget()).unwrap();
            let bip = bipartition(&g).is_bipartite();
            let three = track_layout_search(&g, 3, &budget()).unwrap().is_some();
            assert_eq!(lp, w == 1, "lpw mismatch");
            assert_eq!(lp, bip && three, "track mismatch");
        }
    }
}
