use std::collections::{BTreeMap, VecDeque};

use super::word::generator_name;
use super::{GroupError, Letter, Presentation, Word};
use crate::complex::{FiniteComplex, VertexId};

/// Breadth-first spanning tree of the basepoint's component, neighbours
/// visited in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTreeData {
    pub root: VertexId,
    parent: BTreeMap<VertexId, Option<VertexId>>,
}

impl SpanningTreeData {
    pub fn build(k: &FiniteComplex, root: VertexId) -> Result<Self, GroupError> {
        if !k.contains_vertex(root) {
            return Err(GroupError::VertexNotFound(root));
        }
        let adj = k.adjacency();
        let mut parent = BTreeMap::new();
        parent.insert(root, None);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                    e.insert(Some(u));
                    queue.push_back(w);
                }
            }
        }
        Ok(SpanningTreeData { root, parent })
    }

    pub fn spans(&self, k: &FiniteComplex) -> bool {
        k.vertices().all(|v| self.parent.contains_key(&v))
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent.get(&v).copied().flatten()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.parent.contains_key(&v)
    }

    /// Edges `(min, max)` of the tree, sorted.
    pub fn tree_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut e: Vec<_> = self
            .parent
            .iter()
            .filter_map(|(&v, &p)| p.map(|p| (p.min(v), p.max(v))))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn is_tree_edge(&self, u: VertexId, w: VertexId) -> bool {
        self.parent(u) == Some(w) || self.parent(w) == Some(u)
    }

    /// Vertices from the root to `v` along the tree.
    pub fn path(&self, v: VertexId) -> Vec<VertexId> {
        let mut p = vec![v];
        let mut cur = v;
        while let Some(q) = self.parent(cur) {
            p.push(q);
            cur = q;
        }
        p.reverse();
        p
    }
}

/// Edge-path group presentation together with the data needed to read
/// edge loops as words.
#[derive(Clone, Debug)]
pub struct EdgePathPresentation {
    pub presentation: Presentation,
    pub tree: SpanningTreeData,
    /// Generator index of each non-tree edge `(min, max)`.
    pub edge_generators: BTreeMap<(VertexId, VertexId), usize>,
}

impl EdgePathPresentation {
    /// Label of the oriented edge `u → w`: its generator, inverted when
    /// traversed downward; empty for tree edges.
    pub fn edge_word(&self, u: VertexId, w: VertexId) -> Word {
        let key = (u.min(w), u.max(w));
        match self.edge_generators.get(&key) {
            Some(&g) => Word::from_letters([Letter::new(g, u > w)]),
            None => Word::empty(),
        }
    }

    /// Word of a vertex walk; consecutive vertices must span edges.
    pub fn walk_word(&self, walk: &[VertexId]) -> Word {
        let mut w = Word::empty();
        for pair in walk.windows(2) {
            w = w.concat(&self.edge_word(pair[0], pair[1]));
        }
        w
    }
}

/// Presentation of the edge-path group of `K` at `v0`.
///
/// Generators are the non-tree edges in sorted order; each 2-simplex
/// `(u, v, w)` contributes the relator `g_uv g_vw g_uw⁻¹` unless it reduces
/// to the empty word.
pub fn edge_path_presentation(
    k: &FiniteComplex,
    v0: VertexId,
) -> Result<EdgePathPresentation, GroupError> {
    let tree = SpanningTreeData::build(k, v0)?;
    if !tree.spans(k) {
        return Err(GroupError::Disconnected);
    }
    let mut edge_generators = BTreeMap::new();
    for (u, w) in k.edges() {
        if !tree.is_tree_edge(u, w) {
            let g = edge_generators.len();
            edge_generators.insert((u, w), g);
        }
    }
    let names = (0..edge_generators.len()).map(generator_name).collect();
    let mut ep = EdgePathPresentation {
        presentation: Presentation::new(names, Vec::new())?,
        tree,
        edge_generators,
    };
    let mut relators = Vec::new();
    for t in k.simplices(2) {
        let v = t.vertices();
        let r = ep.walk_word(&[v[0], v[1], v[2], v[0]]);
        if !r.is_empty() {
            relators.push(r);
        }
    }
    ep.presentation = Presentation::new(ep.presentation.generators().to_vec(), relators)?;
    Ok(ep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangle_boundary_is_free_cyclic() {
        let ep = edge_path_presentation(&fixtures::circle(), VertexId(0)).unwrap();
        assert_eq!(ep.presentation.generator_count(), 1);
        assert!(ep.presentation.relators().is_empty());
        assert_eq!(ep.tree.tree_edges().len(), 2);
    }

    #[test]
    fn filled_triangle_kills_generator() {
        let ep = edge_path_presentation(&fixtures::disk(), VertexId(0)).unwrap();
        assert_eq!(ep.presentation.generator_count(), 1);
        assert_eq!(ep.presentation.relators().len(), 1);
        assert!(ep.presentation.abelianization().is_trivial());
    }

    #[test]
    fn wedge_is_free_of_rank_two() {
        let ep = edge_path_presentation(&fixtures::wedge_of_circles(), VertexId(0)).unwrap();
        assert_eq!(ep.presentation.generator_count(), 2);
        assert!(ep.presentation.relators().is_empty());
    }

    #[test]
    fn generator_count_is_cycle_rank() {
        for k in [fixtures::torus(), fixtures::projective_plane(), fixtures::klein_bottle()] {
            let ep = edge_path_presentation(&k, VertexId(0)).unwrap();
            assert_eq!(
                ep.presentation.generator_count(),
                k.count(1) - (k.count(0) - 1)
            );
        }
    }

    #[test]
    fn disconnected_and_missing_basepoint() {
        let k = fixtures::circle().union(&FiniteComplex::from_facets(&[&[7]]));
        assert!(matches!(
            edge_path_presentation(&k, VertexId(0)),
            Err(GroupError::Disconnected)
        ));
        assert!(matches!(
            edge_path_presentation(&fixtures::circle(), VertexId(9)),
            Err(GroupError::VertexNotFound(_))
        ));
    }

    #[test]
    fn tree_paths_start_at_root() {
        let k = fixtures::torus();
        let ep = edge_path_presentation(&k, VertexId(3)).unwrap();
        for v in k.vertices() {
            let p = ep.tree.path(v);
            assert_eq!(p[0], VertexId(3));
            assert_eq!(*p.last().unwrap(), v);
            assert!(ep.walk_word(&p).is_empty());
        }
    }
}
