//! Immutable undirected graph: a raw edge list in a stable order plus a
//! symmetrized CSR view for neighbor access.

use std::borrow::Cow;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, ErrorKind, Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Largest usable vertex id. One id below the u32 ceiling is kept free so a
/// dense graph over all ids still has a representable vertex count.
pub const MAX_VERTEX_ID: u64 = (u32::MAX - 1) as u64;

/// Magic prefix of the binary edge-list format.
pub const BINARY_MAGIC: [u8; 8] = *b"SKPEL1\0\0";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        Edge { u, v }
    }

    /// Endpoints ordered as (min, max).
    pub fn canonical(self) -> (VertexId, VertexId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    pub fn is_loop(self) -> bool {
        self.u == self.v
    }
}

/// Traversal order of the edge sequence.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeOrder {
    /// The stored order (file or generator order).
    Input,
    /// A seeded pseudo-random permutation of the stored order.
    Shuffled(u64),
}

/// Immutable after construction; safe to share across threads by reference.
#[derive(Clone, Debug)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

impl Graph {
    /// Builds the CSR view over `edges`. Each non-loop edge lands in both
    /// endpoints' neighbor lists; a self-loop occupies two slots of its
    /// vertex. Neighbor lists are sorted ascending.
    pub fn from_edges(num_vertices: usize, edges: Vec<Edge>) -> Result<Graph> {
        if num_vertices as u64 > MAX_VERTEX_ID + 1 {
            return Err(Error::VertexIdOverflow {
                id: num_vertices as u64 - 1,
                max: MAX_VERTEX_ID,
            });
        }
        for edge in &edges {
            for id in [edge.u, edge.v] {
                if id as usize >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        id: id as u64,
                        num_vertices,
                    });
                }
            }
        }

        let mut offsets = vec![0usize; num_vertices + 1];
        for edge in &edges {
            offsets[edge.u as usize + 1] += 1;
            offsets[edge.v as usize + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let mut cursor = offsets[..num_vertices].to_vec();
        let mut neighbors = vec![0 as VertexId; offsets[num_vertices]];
        for edge in &edges {
            neighbors[cursor[edge.u as usize]] = edge.v;
            cursor[edge.u as usize] += 1;
            neighbors[cursor[edge.v as usize]] = edge.u;
            cursor[edge.v as usize] += 1;
        }
        for v in 0..num_vertices {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        Ok(Graph {
            num_vertices,
            edges,
            offsets,
            neighbors,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in their stable input order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn csr_offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn csr_neighbors(&self) -> &[VertexId] {
        &self.neighbors
    }

    /// Sorted neighbor ids of `v`; a self-loop contributes `v` twice.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.num_vertices
            && (v as usize) < self.num_vertices
            && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// The edge sequence in the requested traversal order. `Input` borrows,
    /// `Shuffled` materializes a seeded permutation.
    pub fn ordered_edges(&self, order: EdgeOrder) -> Cow<'_, [Edge]> {
        match order {
            EdgeOrder::Input => Cow::Borrowed(&self.edges[..]),
            EdgeOrder::Shuffled(seed) => {
                let mut shuffled = self.edges.clone();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                shuffled.shuffle(&mut rng);
                Cow::Owned(shuffled)
            }
        }
    }

    /// Loads a whitespace-separated "u v" edge list. Lines starting with '#'
    /// or '%' are comments; a "# vertices: N" comment overrides the default
    /// vertex count of max-id + 1. Duplicate lines stay duplicate edges and
    /// file order is preserved.
    pub fn load_edge_list_text(path: impl AsRef<Path>) -> Result<Graph> {
        let reader = BufReader::new(File::open(path)?);
        let mut edges = Vec::new();
        let mut header_vertices: Option<u64> = None;
        let mut max_id: Option<u64> = None;

        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') {
                continue;
            }
            if let Some(comment) = trimmed.strip_prefix('#') {
                if let Some(count) = comment.trim().strip_prefix("vertices:") {
                    let count = count.trim();
                    let n: u64 = count.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        message: format!("invalid vertex count {count:?}"),
                    })?;
                    header_vertices = Some(n);
                }
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected \"u v\", got {trimmed:?}"),
                });
            };
            let mut parse_id = |field: &str| -> Result<VertexId> {
                let id: u64 = field.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("invalid vertex id {field:?}"),
                })?;
                if id > MAX_VERTEX_ID {
                    return Err(Error::VertexIdOverflow {
                        id,
                        max: MAX_VERTEX_ID,
                    });
                }
                max_id = Some(max_id.unwrap_or(0).max(id));
                Ok(id as VertexId)
            };
            let u = parse_id(a)?;
            let v = parse_id(b)?;
            edges.push(Edge::new(u, v));
        }

        let num_vertices = match header_vertices {
            Some(n) => {
                if n > MAX_VERTEX_ID + 1 {
                    return Err(Error::VertexIdOverflow {
                        id: n.saturating_sub(1),
                        max: MAX_VERTEX_ID,
                    });
                }
                n as usize
            }
            None => max_id.map_or(0, |m| m as usize + 1),
        };
        Graph::from_edges(num_vertices, edges)
    }

    /// Loads the binary edge-list format: the magic, a little-endian u64
    /// vertex count, a little-endian u64 edge count, then that many pairs of
    /// little-endian u64 ids.
    pub fn load_edge_list_binary(path: impl AsRef<Path>) -> Result<Graph> {
        let mut reader = BufReader::new(File::open(path)?);
        let mut header = [0u8; 24];
        reader.read_exact(&mut header).map_err(|e| {
            if e.kind() == ErrorKind::UnexpectedEof {
                Error::BadMagic
            } else {
                Error::Io(e)
            }
        })?;
        if header[..8] != BINARY_MAGIC {
            return Err(Error::BadMagic);
        }
        let num_vertices = u64::from_le_bytes(header[8..16].try_into().unwrap());
        let num_edges = u64::from_le_bytes(header[16..24].try_into().unwrap());
        if num_vertices > MAX_VERTEX_ID + 1 {
            return Err(Error::VertexIdOverflow {
                id: num_vertices.saturating_sub(1),
                max: MAX_VERTEX_ID,
            });
        }

        let mut edges = Vec::with_capacity(num_edges.min(1 << 24) as usize);
        let mut pair = [0u8; 16];
        for i in 0..num_edges {
            reader.read_exact(&mut pair).map_err(|e| {
                if e.kind() == ErrorKind::UnexpectedEof {
                    Error::TruncatedPayload {
                        expected: num_edges,
                        actual: i,
                    }
                } else {
                    Error::Io(e)
                }
            })?;
            let decode = |bytes: [u8; 8]| -> Result<VertexId> {
                let id = u64::from_le_bytes(bytes);
                if id > MAX_VERTEX_ID {
                    return Err(Error::VertexIdOverflow {
                        id,
                        max: MAX_VERTEX_ID,
                    });
                }
                Ok(id as VertexId)
            };
            let u = decode(pair[..8].try_into().unwrap())?;
            let v = decode(pair[8..].try_into().unwrap())?;
            edges.push(Edge::new(u, v));
        }
        if reader.read(&mut [0u8; 1])? != 0 {
            return Err(Error::TrailingData);
        }
        Graph::from_edges(num_vertices as usize, edges)
    }

    /// Writes the binary edge-list format; `load_edge_list_binary` restores
    /// the graph exactly, isolated vertices included.
    pub fn write_edge_list_binary(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut writer = BufWriter::new(File::create(path)?);
        writer.write_all(&BINARY_MAGIC)?;
        writer.write_all(&(self.num_vertices as u64).to_le_bytes())?;
        writer.write_all(&(self.edges.len() as u64).to_le_bytes())?;
        for edge in &self.edges {
            writer.write_all(&(edge.u as u64).to_le_bytes())?;
            writer.write_all(&(edge.v as u64).to_le_bytes())?;
        }
        writer.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph_from(text: &str) -> Result<Graph> {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        Graph::load_edge_list_text(file.path())
    }

    #[test]
    fn text_two_edges() {
        let g = graph_from("0 1\n1 2\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(1, 2)]);
    }

    #[test]
    fn text_header_overrides_vertex_count() {
        let g = graph_from("# vertices: 5\n0 1\n").unwrap();
        assert_eq!(g.num_vertices(), 5);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn text_self_loop_retained() {
        let g = graph_from("0 0\n").unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(g.edges(), &[Edge::new(0, 0)]);
    }

    #[test]
    fn text_comments_blanks_and_duplicates() {
        let g = graph_from("% comment\n# plain comment\n\n2 1\n2 1\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.edges(), &[Edge::new(2, 1), Edge::new(2, 1)]);
    }

    #[test]
    fn text_empty_file_is_empty_graph() {
        let g = graph_from("").unwrap();
        assert_eq!(g.num_vertices(), 0);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn text_parse_error_names_line() {
        let err = graph_from("0 1\nx 2\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
        let err = graph_from("0 1\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = graph_from("0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn text_id_overflow_rejected() {
        let err = graph_from(&format!("0 {}\n", u64::MAX)).unwrap_err();
        assert!(matches!(err, Error::VertexIdOverflow { .. }));
    }

    #[test]
    fn text_header_smaller_than_max_id_rejected() {
        let err = graph_from("# vertices: 2\n0 5\n").unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { id: 5, .. }));
    }

    #[test]
    fn csr_hand_computed() {
        let g = Graph::from_edges(3, vec![Edge::new(0, 1), Edge::new(1, 2)]).unwrap();
        assert_eq!(g.csr_offsets(), &[0, 1, 3, 4]);
        assert_eq!(g.csr_neighbors(), &[1, 0, 2, 1]);
    }

    #[test]
    fn csr_empty_edges() {
        let g = Graph::from_edges(2, Vec::new()).unwrap();
        assert_eq!(g.csr_offsets(), &[0, 0, 0]);
        assert!(g.csr_neighbors().is_empty());
    }

    #[test]
    fn csr_self_loop_counts_twice() {
        let g = Graph::from_edges(1, vec![Edge::new(0, 0)]).unwrap();
        assert_eq!(g.csr_offsets(), &[0, 2]);
        assert_eq!(g.csr_neighbors(), &[0, 0]);
        // independent incidence count: each edge contributes two slots
        let mut slots = vec![0usize; g.num_vertices()];
        for e in g.edges() {
            slots[e.u as usize] += 1;
            slots[e.v as usize] += 1;
        }
        for v in 0..g.num_vertices() {
            assert_eq!(g.degree(v as VertexId), slots[v]);
        }
    }

    #[test]
    fn csr_rejects_out_of_range() {
        let err = Graph::from_edges(2, vec![Edge::new(0, 2)]).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { id: 2, .. }));
    }

    #[test]
    fn has_edge_uses_symmetrized_view() {
        let g = Graph::from_edges(4, vec![Edge::new(2, 0), Edge::new(1, 3)]).unwrap();
        assert!(g.has_edge(0, 2));
        assert!(g.has_edge(2, 0));
        assert!(g.has_edge(3, 1));
        assert!(!g.has_edge(0, 1));
        assert!(!g.has_edge(0, 9));
    }

    #[test]
    fn binary_round_trip() {
        let g = graph_from("# vertices: 4\n0 1\n3 3\n1 0\n").unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        g.write_edge_list_binary(file.path()).unwrap();
        let back = Graph::load_edge_list_binary(file.path()).unwrap();
        assert_eq!(back.num_vertices(), g.num_vertices());
        assert_eq!(back.edges(), g.edges());
    }

    #[test]
    fn binary_empty_graph_keeps_vertex_count() {
        let g = graph_from("# vertices: 4\n").unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        g.write_edge_list_binary(file.path()).unwrap();
        let back = Graph::load_edge_list_binary(file.path()).unwrap();
        assert_eq!(back.num_vertices(), 4);
        assert_eq!(back.num_edges(), 0);
    }

    #[test]
    fn binary_bad_magic() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(b"NOTMAGIC________________").unwrap();
        let err = Graph::load_edge_list_binary(file.path()).unwrap_err();
        assert!(matches!(err, Error::BadMagic));
    }

    #[test]
    fn binary_truncated_payload() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(&BINARY_MAGIC).unwrap();
        file.write_all(&2u64.to_le_bytes()).unwrap();
        file.write_all(&2u64.to_le_bytes()).unwrap();
        file.write_all(&0u64.to_le_bytes()).unwrap();
        file.write_all(&1u64.to_le_bytes()).unwrap();
        let err = Graph::load_edge_list_binary(file.path()).unwrap_err();
        assert!(matches!(
            err,
            Error::TruncatedPayload {
                expected: 2,
                actual: 1
            }
        ));
    }

    #[test]
    fn binary_trailing_data_rejected() {
        let g = graph_from("0 1\n").unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        g.write_edge_list_binary(file.path()).unwrap();
        let mut handle = std::fs::OpenOptions::new()
            .append(true)
            .open(file.path())
            .unwrap();
        handle.write_all(&[0xFF]).unwrap();
        let err = Graph::load_edge_list_binary(file.path()).unwrap_err();
        assert!(matches!(err, Error::TrailingData));
    }

    #[test]
    fn shuffled_order_is_seeded_permutation() {
        let g = graph_from("0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n").unwrap();
        let a = g.ordered_edges(EdgeOrder::Shuffled(7));
        let b = g.ordered_edges(EdgeOrder::Shuffled(7));
        assert_eq!(a, b);
        let mut sorted_a: Vec<_> = a.iter().map(|e| e.canonical()).collect();
        let mut sorted_in: Vec<_> = g.edges().iter().map(|e| e.canonical()).collect();
        sorted_a.sort_unstable();
        sorted_in.sort_unstable();
        assert_eq!(sorted_a, sorted_in);
        assert_eq!(g.ordered_edges(EdgeOrder::Input)[..], g.edges()[..]);
    }
}
