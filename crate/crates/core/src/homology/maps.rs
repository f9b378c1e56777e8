use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{ChainComplex, HomMap, HomologyError, HomologyGroup, IntegerMatrix};
use crate::complex::{FiniteComplex, Simplex, VertexId};

/// Vertex map carrying every simplex of `source` onto a simplex of `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: FiniteComplex,
    target: FiniteComplex,
    vertex_map: BTreeMap<VertexId, VertexId>,
}

impl SimplicialMap {
    pub fn new<F>(source: FiniteComplex, target: FiniteComplex, f: F) -> Result<Self, HomologyError>
    where
        F: Fn(VertexId) -> VertexId,
    {
        let vertex_map = source.vertices().map(|v| (v, f(v))).collect();
        Self::from_map(source, target, vertex_map)
    }

    pub fn from_map(
        source: FiniteComplex,
        target: FiniteComplex,
        vertex_map: BTreeMap<VertexId, VertexId>,
    ) -> Result<Self, HomologyError> {
        for v in source.vertices() {
            if !vertex_map.contains_key(&v) {
                return Err(HomologyError::UnmappedVertex(v));
            }
        }
        let map = SimplicialMap {
            source,
            target,
            vertex_map,
        };
        for s in map.source.iter() {
            let (image, _) = map.image(s);
            if !map.target.contains(&image) {
                return Err(HomologyError::NotSimplicial(s.clone()));
            }
        }
        Ok(map)
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(sub: &FiniteComplex, k: &FiniteComplex) -> Result<Self, HomologyError> {
        Self::new(sub.clone(), k.clone(), |v| v)
    }

    pub fn source(&self) -> &FiniteComplex {
        &self.source
    }

    pub fn target(&self) -> &FiniteComplex {
        &self.target
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.vertex_map[&v]
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    /// Image simplex and the orientation sign of `s ↦ image`, or sign 0 when
    /// the map collapses `s`.
    pub fn image(&self, s: &Simplex) -> (Simplex, i32) {
        let raw: Vec<VertexId> = s.vertices().iter().map(|v| self.vertex_map[v]).collect();
        let mut sorted = raw.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let image = Simplex::new(sorted.iter().copied()).expect("nonempty image");
        if sorted.len() < raw.len() {
            return (image, 0);
        }
        // Parity of the permutation sorting `raw`, by counting inversions.
        let mut inversions = 0;
        for i in 0..raw.len() {
            for j in i + 1..raw.len() {
                if raw[i] > raw[j] {
                    inversions += 1;
                }
            }
        }
        (image, if inversions % 2 == 0 { 1 } else { -1 })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap, HomologyError> {
        let vertex_map = self
            .vertex_map
            .iter()
            .map(|(&v, w)| (v, g.vertex_map[w]))
            .collect();
        Self::from_map(self.source.clone(), g.target.clone(), vertex_map)
    }

    /// Whether `self` carries `a` into `b`.
    pub fn maps_into(&self, a: &FiniteComplex, b: &FiniteComplex) -> bool {
        a.iter().all(|s| b.contains(&self.image(s).0))
    }

    /// Chain map in degree `n` between the given chain complexes; images
    /// falling outside the target basis (collapsed, or inside the target's
    /// subcomplex) contribute zero.
    pub fn chain_map(&self, src: &ChainComplex, dst: &ChainComplex, n: usize) -> IntegerMatrix {
        let cols = src.basis(n);
        let mut m = IntegerMatrix::zeros(dst.rank(n), cols.len());
        for (j, s) in cols.iter().enumerate() {
            let (image, sign) = self.image(s);
            if sign == 0 {
                continue;
            }
            if let Some(i) = dst.index_of(&image) {
                m[(i, j)] += BigInt::from(sign);
            }
        }
        m
    }
}

/// Matrix of a chain-level map on homology, from source generators to
/// target classes.
pub(crate) fn homology_matrix(
    h_src: &HomologyGroup,
    h_dst: &HomologyGroup,
    chain: &IntegerMatrix,
) -> Result<HomMap, HomologyError> {
    let mut m = IntegerMatrix::zeros(h_dst.group.generator_count(), h_src.group.generator_count());
    for (j, g) in h_src.generators().iter().enumerate() {
        let image = chain.mul_vec(g);
        let c = h_dst.classify(&image)?;
        for (i, x) in c.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    Ok(HomMap::new(h_src.group.clone(), h_dst.group.clone(), m))
}

/// `f_* : H_n(K) → H_n(L)`.
pub fn induced_map(f: &SimplicialMap, n: usize) -> Result<HomMap, HomologyError> {
    let src = ChainComplex::of(f.source());
    let dst = ChainComplex::of(f.target());
    let h_src = HomologyGroup::compute(&src, n);
    let h_dst = HomologyGroup::compute(&dst, n);
    homology_matrix(&h_src, &h_dst, &f.chain_map(&src, &dst, n))
}

/// `f_* : H_n(K, A) → H_n(L, B)` for a map of pairs.
pub fn induced_pair_map(
    f: &SimplicialMap,
    a: &FiniteComplex,
    b: &FiniteComplex,
    n: usize,
) -> Result<HomMap, HomologyError> {
    if !f.maps_into(a, b) {
        return Err(HomologyError::PairNotPreserved);
    }
    let src = ChainComplex::pair(f.source(), a)?;
    let dst = ChainComplex::pair(f.target(), b)?;
    let h_src = HomologyGroup::compute(&src, n);
    let h_dst = HomologyGroup::compute(&dst, n);
    homology_matrix(&h_src, &h_dst, &f.chain_map(&src, &dst, n))
}

/// Whether `f_*` is the zero map in degree `n`.
pub fn induces_zero(f: &SimplicialMap, n: usize) -> Result<bool, HomologyError> {
    let m = induced_map(f, n)?;
    Ok((0..m.matrix.cols()).all(|j| m.target.is_zero_element(&m.matrix.column(j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_induces_identity() {
        for k in [fixtures::torus(), fixtures::projective_plane()] {
            let id = fixtures::identity(&k);
            for n in 0..=2 {
                let m = induced_map(&id, n).unwrap();
                assert_eq!(m, HomMap::identity(&m.source));
            }
        }
    }

    #[test]
    fn circle_into_wedge() {
        let f = SimplicialMap::inclusion(&fixtures::circle(), &fixtures::wedge_of_circles()).unwrap();
        let m = induced_map(&f, 1).unwrap();
        assert_eq!(m.target.rank, 2);
        assert!(m.is_injective());
        assert!(!m.is_surjective());
        // The image is a direct summand: the column is primitive.
        let col = m.matrix.column(0);
        let g = col.iter().fold(BigInt::from(0), |acc, x| num_integer::Integer::gcd(&acc, x));
        assert_eq!(g, BigInt::from(1));
    }

    #[test]
    fn double_wrap_is_times_two() {
        let m = induced_map(&fixtures::hexagon_double_wrap(), 1).unwrap();
        assert_eq!(m.matrix.rows(), 1);
        assert_eq!(m.abs_determinant(), Some(BigInt::from(2)));
        assert!(m.is_injective() && !m.is_surjective());
    }

    #[test]
    fn non_simplicial_rejected() {
        // Sending the triangle boundary onto three vertices of the hexagon
        // that are pairwise non-adjacent.
        let r = SimplicialMap::new(fixtures::circle(), fixtures::hexagon(), |v| VertexId(2 * v.0));
        assert!(matches!(r, Err(HomologyError::NotSimplicial(_))));
    }

    #[test]
    fn functoriality() {
        let f = fixtures::hexagon_double_wrap();
        let g = fixtures::identity(&fixtures::circle());
        let gf = f.then(&g).unwrap();
        let lhs = induced_map(&gf, 1).unwrap();
        let rhs = induced_map(&f, 1).unwrap().then(&induced_map(&g, 1).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn collapse_induces_zero_in_positive_degree() {
        let f = SimplicialMap::new(fixtures::circle(), fixtures::point(), |_| VertexId(0)).unwrap();
        assert!(induces_zero(&f, 1).unwrap());
        assert!(!induces_zero(&f, 0).unwrap());
    }
}
