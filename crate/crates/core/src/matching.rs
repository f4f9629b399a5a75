use crate::graph::VertexId;

/// An endpoint-disjoint edge set; each pair is stored as (min, max).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(VertexId, VertexId)>,
}

impl Matching {
    pub fn new() -> Self {
        Matching::default()
    }

    pub fn from_pairs(pairs: Vec<(VertexId, VertexId)>) -> Self {
        debug_assert!(pairs.iter().all(|p| p.0 < p.1));
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of matched endpoints: two per pair.
    pub fn matched_endpoints(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Matched endpoints as a percentage of the vertex count.
    pub fn endpoint_percentage(&self, num_vertices: usize) -> f64 {
        if num_vertices == 0 {
            0.0
        } else {
            100.0 * self.matched_endpoints() as f64 / num_vertices as f64
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.pairs.iter().copied()
    }
}
