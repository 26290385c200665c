use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{Graph, GraphError, VertexId};

/// Enumeration of `𝓗_E` refuses graphs above this size unless the caller
/// raises the cap; the worst case is exponential in the vertex count.
pub const DEFAULT_MAX_ENUMERATION_VERTICES: usize = 16;

/// A vertex set that is closed under paths (hereditary) and under the
/// saturation rule. Construction does not check the predicates; use
/// [`Graph::hereditary_saturated_closure`] or
/// [`HereditarySaturatedSet::is_valid_for`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct HereditarySaturatedSet(BTreeSet<VertexId>);

impl HereditarySaturatedSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = VertexId>) -> Self {
        HereditarySaturatedSet(vs.into_iter().collect())
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        HereditarySaturatedSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn is_hereditary(&self, g: &Graph) -> bool {
        self.0
            .iter()
            .all(|&v| g.out_edges(v).iter().all(|&e| self.contains(g.range(e))))
    }

    pub fn is_saturated(&self, g: &Graph) -> bool {
        g.vertices().all(|v| {
            self.contains(v)
                || !g.is_regular(v)
                || !g.out_edges(v).iter().all(|&e| self.contains(g.range(e)))
        })
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.0.iter().all(|&v| g.contains_vertex(v))
            && self.is_hereditary(g)
            && self.is_saturated(g)
    }
}

impl Ord for HereditarySaturatedSet {
    /// By cardinality, then lexicographically on sorted vertex ids.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for HereditarySaturatedSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Graph {
    /// Least hereditary saturated superset of `seed`.
    pub fn hereditary_saturated_closure(
        &self,
        seed: &BTreeSet<VertexId>,
    ) -> Result<HereditarySaturatedSet, GraphError> {
        for &v in seed {
            self.check_vertex(v)?;
        }
        let mut member = vec![false; self.vertex_count()];
        let mut queue: VecDeque<VertexId> = seed.iter().copied().collect();
        for &v in seed {
            member[v.0] = true;
        }
        loop {
            // hereditary closure
            while let Some(v) = queue.pop_front() {
                for &e in self.out_edges(v) {
                    let w = self.range(e);
                    if !member[w.0] {
                        member[w.0] = true;
                        queue.push_back(w);
                    }
                }
            }
            // one saturation sweep
            for v in self.vertices() {
                if !member[v.0]
                    && self.is_regular(v)
                    && self.out_edges(v).iter().all(|&e| member[self.range(e).0])
                {
                    member[v.0] = true;
                    queue.push_back(v);
                }
            }
            if queue.is_empty() {
                break;
            }
        }
        Ok(HereditarySaturatedSet(
            self.vertices().filter(|v| member[v.0]).collect(),
        ))
    }

    /// `𝓗_E` with the default vertex cap.
    pub fn enumerate_hereditary_saturated(
        &self,
    ) -> Result<Vec<HereditarySaturatedSet>, GraphError> {
        self.enumerate_hereditary_saturated_capped(DEFAULT_MAX_ENUMERATION_VERTICES)
    }

    /// All hereditary saturated subsets, sorted by cardinality then
    /// lexicographically.
    ///
    /// Every member is the closure of itself, and is reached from the closure
    /// of `∅` by repeatedly adding one vertex and closing; walking that
    /// lattice with a visited set closes each reachable subset once.
    pub fn enumerate_hereditary_saturated_capped(
        &self,
        cap: usize,
    ) -> Result<Vec<HereditarySaturatedSet>, GraphError> {
        if self.vertex_count() > cap {
            return Err(GraphError::TooManyVertices {
                vertices: self.vertex_count(),
                cap,
            });
        }
        let bottom = self.hereditary_saturated_closure(&BTreeSet::new())?;
        let mut seen = HashSet::from([bottom.clone()]);
        let mut queue = VecDeque::from([bottom]);
        while let Some(h) = queue.pop_front() {
            for v in self.vertices().filter(|v| !h.contains(*v)) {
                let mut seed = h.0.clone();
                seed.insert(v);
                let next = self.hereditary_saturated_closure(&seed)?;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, line_graph, rose_graph};

    fn toeplitz() -> Graph {
        Graph::builder()
            .vertex("u")
            .vertex("v")
            .edge("e", "u", "u")
            .edge("f", "u", "v")
            .build()
            .unwrap()
    }

    fn set(ids: &[usize]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn toeplitz_closures() {
        let g = toeplitz();
        assert!(g
            .hereditary_saturated_closure(&set(&[]))
            .unwrap()
            .is_empty());
        assert_eq!(
            g.hereditary_saturated_closure(&set(&[1]))
                .unwrap()
                .vertices(),
            &set(&[1])
        );
        assert_eq!(
            g.hereditary_saturated_closure(&set(&[0]))
                .unwrap()
                .vertices(),
            &set(&[0, 1])
        );
        assert!(g.hereditary_saturated_closure(&set(&[5])).is_err());
    }

    #[test]
    fn saturation_pulls_in_sources() {
        // u -> v -> w: closing {w} saturates v, then u
        let g = line_graph(3).unwrap();
        assert_eq!(g.hereditary_saturated_closure(&set(&[2])).unwrap().len(), 3);
    }

    #[test]
    fn enumerations() {
        let t = toeplitz().enumerate_hereditary_saturated().unwrap();
        let t: Vec<_> = t.iter().map(|h| h.vertices().clone()).collect();
        assert_eq!(t, vec![set(&[]), set(&[1]), set(&[0, 1])]);
        assert_eq!(
            rose_graph(0)
                .enumerate_hereditary_saturated()
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            rose_graph(3)
                .enumerate_hereditary_saturated()
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            cycle_graph(4)
                .unwrap()
                .enumerate_hereditary_saturated()
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn enumeration_cap() {
        let big = line_graph(20).unwrap();
        assert!(matches!(
            big.enumerate_hereditary_saturated(),
            Err(GraphError::TooManyVertices {
                vertices: 20,
                cap: 16
            })
        ));
        assert_eq!(
            big.enumerate_hereditary_saturated_capped(20).unwrap().len(),
            2
        );
    }
}
