use std::collections::{BTreeMap, BTreeSet};

use super::{ComplexError, Simplex, VertexId};
use crate::dsu::DisjointSets;

/// Finite abstract simplicial complex, closed under faces.
///
/// Simplices are kept per dimension in ascending order; the position of a
/// simplex inside its dimension is its chain-basis index.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct FiniteComplex {
    by_dim: Vec<Vec<Simplex>>,
}

impl FiniteComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks that `raw` is closed under faces. Reports the first missing face
    /// in canonical order.
    pub fn validate<I>(raw: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let set: BTreeSet<Simplex> = raw.into_iter().collect();
        for s in &set {
            for f in s.facets() {
                if !set.contains(&f) {
                    return Err(ComplexError::MissingFace {
                        simplex: s.clone(),
                        face: f,
                    });
                }
            }
        }
        Ok(Self::from_closed_set(set))
    }

    /// Face closure of an arbitrary set of simplices.
    pub fn closure<I>(generators: I) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut set = BTreeSet::new();
        for g in generators {
            if set.contains(&g) {
                continue;
            }
            for f in g.faces() {
                set.insert(f);
            }
        }
        Self::from_closed_set(set)
    }

    /// Convenience wrapper over [`FiniteComplex::closure`] for literal facet lists.
    pub fn from_facets(facets: &[&[u32]]) -> Self {
        Self::closure(facets.iter().map(|f| Simplex::of(f)))
    }

    pub(crate) fn from_closed_set(set: BTreeSet<Simplex>) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for s in set {
            let d = s.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(s);
        }
        FiniteComplex { by_dim }
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.by_dim.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    /// All simplices in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.by_dim.iter().flatten()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.simplices(s.dim()).binary_search(s).ok()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.simplices(0).iter().map(|s| s.vertices()[0])
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.contains(&Simplex::vertex(v))
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.simplices(1)
            .iter()
            .map(|s| (s.vertices()[0], s.vertices()[1]))
    }

    /// Sorted neighbour lists of the 1-skeleton.
    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices().map(|v| (v, Vec::new())).collect();
        for (u, w) in self.edges() {
            adj.get_mut(&u).expect("edge endpoint is a vertex").push(w);
            adj.get_mut(&w).expect("edge endpoint is a vertex").push(u);
        }
        for ns in adj.values_mut() {
            ns.sort_unstable();
        }
        adj
    }

    /// Simplices having `sigma` as a face, `sigma` included.
    pub fn cofaces<'a>(&'a self, sigma: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.by_dim
            .iter()
            .skip(sigma.dim())
            .flatten()
            .filter(move |t| sigma.is_face_of(t))
    }

    /// Closed star: face closure of all cofaces of `sigma`.
    pub fn star(&self, sigma: &Simplex) -> Result<FiniteComplex, ComplexError> {
        if !self.contains(sigma) {
            return Err(ComplexError::SimplexNotFound(sigma.clone()));
        }
        Ok(Self::closure(self.cofaces(sigma).cloned()))
    }

    pub fn is_subcomplex_of(&self, other: &FiniteComplex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub fn union(&self, other: &FiniteComplex) -> FiniteComplex {
        let set: BTreeSet<Simplex> = self.iter().chain(other.iter()).cloned().collect();
        Self::from_closed_set(set)
    }

    /// Largest subcomplex whose vertices all lie in `keep`.
    pub fn induced<F>(&self, mut keep: F) -> FiniteComplex
    where
        F: FnMut(VertexId) -> bool,
    {
        let set: BTreeSet<Simplex> = self
            .iter()
            .filter(|s| s.vertices().iter().all(|&v| keep(v)))
            .cloned()
            .collect();
        Self::from_closed_set(set)
    }

    /// Alternating count of simplices by dimension.
    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Vertex partition of the 1-skeleton, each class sorted, classes ordered
    /// by smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let verts: Vec<VertexId> = self.vertices().collect();
        let mut dsu = DisjointSets::new(verts.len());
        let pos = |v: VertexId| verts.binary_search(&v).expect("vertex present");
        for (u, w) in self.edges() {
            dsu.union(pos(u), pos(w));
        }
        dsu.classes()
            .into_iter()
            .map(|c| c.into_iter().map(|i| verts[i]).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}
