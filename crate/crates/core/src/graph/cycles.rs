use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Cycle, EdgeId, Graph, GraphError, Path, VertexId};

/// Number of paths feeding a cycle without exits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathCount {
    Finite(u64),
    Infinite,
}

impl PathCount {
    pub fn is_finite(self) -> bool {
        matches!(self, PathCount::Finite(_))
    }
}

impl fmt::Display for PathCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathCount::Finite(n) => write!(f, "{n}"),
            PathCount::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for PathCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PathCount::Finite(n) => s.serialize_u64(*n),
            PathCount::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for PathCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Finite(u64),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Finite(n) => Ok(PathCount::Finite(n)),
            Raw::Word(w) if w == "infinite" => Ok(PathCount::Infinite),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("bad path count `{w}`"))),
        }
    }
}

impl Graph {
    /// All cycles up to rotation, canonicalized, sorted by edge list.
    ///
    /// A cycle visits pairwise distinct vertices, so each one is found
    /// exactly once as a simple circuit from its least vertex through
    /// larger vertices only.
    pub fn find_cycles(&self) -> Vec<Cycle> {
        let mut found = BTreeSet::new();
        for start in self.vertices() {
            let mut on_path = vec![false; self.vertex_count()];
            let mut edges = Vec::new();
            self.circuits_from(start, start, &mut on_path, &mut edges, &mut found);
        }
        let mut cycles: Vec<_> = found.into_iter().collect();
        cycles.sort_by(|a: &Cycle, b: &Cycle| a.edges().cmp(b.edges()));
        cycles
    }

    fn circuits_from(
        &self,
        start: VertexId,
        at: VertexId,
        on_path: &mut [bool],
        edges: &mut Vec<EdgeId>,
        found: &mut BTreeSet<Cycle>,
    ) {
        on_path[at.0] = true;
        for &e in self.out_edges(at) {
            let next = self.range(e);
            edges.push(e);
            if next == start {
                found.insert(Cycle::new(self, edges).expect("simple circuit is a cycle"));
            } else if next > start && !on_path[next.0] {
                self.circuits_from(start, next, on_path, edges, found);
            }
            edges.pop();
        }
        on_path[at.0] = false;
    }

    /// Some vertex of `c` emits an edge other than its edge on `c`.
    pub fn cycle_has_exit(&self, c: &Cycle) -> Result<bool, GraphError> {
        if !c.belongs_to(self) {
            return Err(GraphError::NotACycle);
        }
        Ok(c.edges()
            .iter()
            .any(|&e| self.out_edges(self.source(e)).len() > 1))
    }

    /// Condition (L): every cycle has an exit.
    pub fn condition_l(&self) -> bool {
        self.find_cycles()
            .iter()
            .all(|c| self.cycle_has_exit(c).expect("own cycle"))
    }

    pub fn cycles_without_exits(&self) -> Vec<Cycle> {
        self.find_cycles()
            .into_iter()
            .filter(|c| !self.cycle_has_exit(c).expect("own cycle"))
            .collect()
    }

    /// `P_c(E)`: the union of the vertex sets of all cycles without exits.
    pub fn exit_free_cycle_vertices(&self) -> BTreeSet<VertexId> {
        self.cycles_without_exits()
            .iter()
            .flat_map(|c| c.vertex_set(self))
            .collect()
    }

    /// Paths ending at the base vertex of an exit-free cycle `c` that do not
    /// run through every edge of `c` (trivial paths included). This is the
    /// matrix size `n` in `I(c⁰) ≅ M_n(K[x,x⁻¹])`.
    ///
    /// The count is infinite exactly when the region feeding `c` contains a
    /// cycle; otherwise it is computed by dynamic programming over that
    /// acyclic region.
    pub fn count_paths_ending_at_cycle(&self, c: &Cycle) -> Result<PathCount, GraphError> {
        if self.cycle_has_exit(c)? {
            return Err(GraphError::CycleHasExit);
        }
        if self.feeding_path_counts(&c.vertex_set(self)).is_none() {
            return Ok(PathCount::Infinite);
        }
        Ok(PathCount::Finite(self.count_from_base(c, c.base())))
    }

    /// The same count but for paths ending at any vertex of `c⁰`.
    pub fn count_paths_ending_on_cycle_vertices(&self, c: &Cycle) -> Result<PathCount, GraphError> {
        match self.count_paths_ending_at_cycle(c)? {
            PathCount::Infinite => Ok(PathCount::Infinite),
            PathCount::Finite(_) => {
                let total = c
                    .vertex_set(self)
                    .into_iter()
                    .map(|v| self.count_from_base(c, v))
                    .sum();
                Ok(PathCount::Finite(total))
            }
        }
    }

    fn count_from_base(&self, c: &Cycle, base: VertexId) -> u64 {
        let feeding = self
            .feeding_path_counts(&c.vertex_set(self))
            .expect("finite region");
        let cycle_edges: BTreeSet<_> = c.edges().iter().copied().collect();
        // Walk backwards from the base along c: arcs of length 0..l-1, each
        // optionally preceded by a path from the feeding region.
        let mut total: u64 = 0;
        let mut at = base;
        for _ in 0..c.len() {
            total = total.checked_add(1).expect("path count overflow");
            for &g in self.in_edges(at) {
                if !cycle_edges.contains(&g) {
                    total = total
                        .checked_add(feeding[self.source(g).0])
                        .expect("path count overflow");
                }
            }
            let back = *self
                .in_edges(at)
                .iter()
                .find(|e| cycle_edges.contains(e))
                .expect("cycle edge into cycle vertex");
            at = self.source(back);
        }
        total
    }

    /// For every vertex `x` outside `target` that reaches `target`, the number
    /// of paths (trivial included) ending at `x` inside that feeding region.
    /// `None` when the region has a cycle.
    fn feeding_path_counts(&self, target: &BTreeSet<VertexId>) -> Option<Vec<u64>> {
        let reach = self.reachability();
        let in_region: Vec<bool> = self
            .vertices()
            .map(|x| !target.contains(&x) && target.iter().any(|t| reach[x.0][t.0]))
            .collect();
        // Kahn's algorithm restricted to the region.
        let mut indegree: Vec<usize> = self
            .vertices()
            .map(|x| {
                self.in_edges(x)
                    .iter()
                    .filter(|&&e| in_region[self.source(e).0])
                    .count()
            })
            .collect();
        let mut ready: Vec<_> = self
            .vertices()
            .filter(|x| in_region[x.0] && indegree[x.0] == 0)
            .collect();
        let mut counts = vec![0u64; self.vertex_count()];
        let mut done = 0;
        let region_size = in_region.iter().filter(|&&b| b).count();
        while let Some(x) = ready.pop() {
            done += 1;
            let incoming: u64 = self
                .in_edges(x)
                .iter()
                .filter(|&&e| in_region[self.source(e).0])
                .map(|&e| counts[self.source(e).0])
                .sum();
            counts[x.0] = 1 + incoming;
            for &e in self.out_edges(x) {
                let y = self.range(e);
                if in_region[y.0] {
                    indegree[y.0] -= 1;
                    if indegree[y.0] == 0 {
                        ready.push(y);
                    }
                }
            }
        }
        (done == region_size).then_some(counts)
    }

    /// The paths counted by [`Graph::count_paths_ending_at_cycle`], sorted;
    /// `None` when there are infinitely many.
    pub fn paths_ending_at_cycle(&self, c: &Cycle) -> Result<Option<Vec<Path>>, GraphError> {
        if !self.count_paths_ending_at_cycle(c)?.is_finite() {
            return Ok(None);
        }
        let cycle_edges: BTreeSet<EdgeId> = c.edges().iter().copied().collect();
        Ok(Some(self.backward_paths(c.base(), |p| {
            cycle_edges.iter().all(|e| p.edges().contains(e))
        })))
    }

    /// Number of paths ending at the sink `w`, trivial path included.
    pub fn count_paths_ending_at_sink(&self, w: VertexId) -> Result<PathCount, GraphError> {
        self.check_vertex(w)?;
        if !self.is_sink(w) {
            return Err(GraphError::NotASink(self.vertex_name(w).to_string()));
        }
        let Some(feeding) = self.feeding_path_counts(&BTreeSet::from([w])) else {
            return Ok(PathCount::Infinite);
        };
        let mut total: u64 = 1;
        for &e in self.in_edges(w) {
            total = total
                .checked_add(feeding[self.source(e).0])
                .expect("path count overflow");
        }
        Ok(PathCount::Finite(total))
    }

    /// The paths counted by [`Graph::count_paths_ending_at_sink`], sorted;
    /// `None` when there are infinitely many.
    pub fn paths_ending_at_sink(&self, w: VertexId) -> Result<Option<Vec<Path>>, GraphError> {
        if !self.count_paths_ending_at_sink(w)?.is_finite() {
            return Ok(None);
        }
        Ok(Some(self.backward_paths(w, |_| false)))
    }

    /// Paths ending at `v`, extended backwards until `stop` holds (such
    /// paths and their extensions are dropped). Terminates only when the
    /// surviving paths are finite in number.
    fn backward_paths(&self, v: VertexId, stop: impl Fn(&Path) -> bool) -> Vec<Path> {
        let mut out = Vec::new();
        let mut pending = vec![Path::vertex(v)];
        while let Some(p) = pending.pop() {
            for &e in self.in_edges(p.source()) {
                let q = p.prepend(self, e);
                if !stop(&q) {
                    pending.push(q);
                }
            }
            out.push(p);
        }
        out.sort();
        out
    }

    /// All paths ending at `v` of length at most `max_len`, by backward
    /// extension. Used for bounded enumerations.
    pub fn paths_ending_at(&self, v: VertexId, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::vertex(v)];
        let mut frontier = vec![Path::vertex(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.in_edges(p.source()) {
                    next.push(p.prepend(self, e));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// All paths of length at most `max_len`, sorted.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self.vertices().map(Path::vertex).collect();
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for &e in self.out_edges(p.range()) {
                    next.push(p.push(self, e));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort();
        out
    }
}
