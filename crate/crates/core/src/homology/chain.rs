use num_bigint::BigInt;

use super::{HomologyError, IntegerMatrix};
use crate::complex::{FiniteComplex, Simplex};

/// Simplicial chain complex of a pair `(K, A)`: in each dimension the basis
/// is the simplices of `K` outside `A`, in canonical order. With `A` empty
/// this is the ordinary chain complex of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    bases: Vec<Vec<Simplex>>,
}

impl ChainComplex {
    pub fn of(k: &FiniteComplex) -> Self {
        let top = k.dim().map_or(0, |d| d + 1);
        ChainComplex {
            bases: (0..top).map(|d| k.simplices(d).to_vec()).collect(),
        }
    }

    pub fn pair(k: &FiniteComplex, a: &FiniteComplex) -> Result<Self, HomologyError> {
        if !a.is_subcomplex_of(k) {
            return Err(HomologyError::NotSubcomplex);
        }
        let top = k.dim().map_or(0, |d| d + 1);
        Ok(ChainComplex {
            bases: (0..top)
                .map(|d| {
                    k.simplices(d)
                        .iter()
                        .filter(|s| !a.contains(s))
                        .cloned()
                        .collect()
                })
                .collect(),
        })
    }

    pub fn basis(&self, d: usize) -> &[Simplex] {
        self.bases.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rank(&self, d: usize) -> usize {
        self.basis(d).len()
    }

    /// Position of `s` in the basis of its dimension.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.basis(s.dim()).binary_search(s).ok()
    }

    /// Top dimension with a nonempty basis slot (the complex dimension).
    pub fn dim(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    /// Matrix of `∂_d : C_d → C_{d-1}`. The facet omitting the `i`-th vertex
    /// carries sign `(-1)^i`; facets outside the basis (inside `A`) vanish.
    pub fn boundary(&self, d: usize) -> IntegerMatrix {
        let cols = self.basis(d);
        if d == 0 {
            return IntegerMatrix::zeros(0, cols.len());
        }
        let rows = self.basis(d - 1);
        let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for (i, f) in s.facets().enumerate() {
                if let Ok(r) = rows.binary_search(&f) {
                    m[(r, j)] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        m
    }

    /// Boundary of a chain given as a coefficient vector over `basis(d)`,
    /// computed in the full complex: faces outside the basis are returned
    /// separately so connecting maps can read them off.
    pub fn full_boundary(&self, d: usize, chain: &[BigInt]) -> Vec<(BigInt, Simplex)> {
        let mut out: Vec<(BigInt, Simplex)> = Vec::new();
        if d == 0 {
            return out;
        }
        for (c, s) in chain.iter().zip(self.basis(d)) {
            if c == &BigInt::from(0) {
                continue;
            }
            for (i, f) in s.facets().enumerate() {
                let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
                match out.iter_mut().find(|(_, g)| g == &f) {
                    Some(entry) => entry.0 += sign,
                    None => out.push((sign, f)),
                }
            }
        }
        out.retain(|(c, _)| c != &BigInt::from(0));
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }
}

/// Matrix of `∂_n` on the chains of `k`.
pub fn boundary_matrix(k: &FiniteComplex, n: usize) -> IntegerMatrix {
    ChainComplex::of(k).boundary(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangle_boundary_incidence() {
        let m = boundary_matrix(&fixtures::circle(), 1);
        // Edges (0,1), (0,2), (1,2); rows vertices 0, 1, 2.
        let expected = IntegerMatrix::from_rows(&[[-1, -1, 0], [1, 0, -1], [0, 1, 1]]);
        assert_eq!(m, expected);
        assert!(boundary_matrix(&fixtures::circle(), 0).mul(&m).is_zero());
    }

    #[test]
    fn above_dimension_has_no_columns() {
        let m = boundary_matrix(&fixtures::circle(), 2);
        assert_eq!((m.rows(), m.cols()), (3, 0));
        let m = boundary_matrix(&fixtures::circle(), 5);
        assert_eq!((m.rows(), m.cols()), (0, 0));
    }

    #[test]
    fn two_simplex_column() {
        let m = boundary_matrix(&fixtures::disk(), 2);
        assert_eq!(m, IntegerMatrix::from_rows(&[[1], [-1], [1]]));
    }

    #[test]
    fn boundary_squares_to_zero() {
        for k in [fixtures::sphere(), fixtures::torus(), fixtures::projective_plane()] {
            for n in 1..=3 {
                let a = boundary_matrix(&k, n);
                let b = boundary_matrix(&k, n + 1);
                assert!(a.mul(&b).is_zero());
            }
        }
    }

    #[test]
    fn pair_requires_subcomplex() {
        let k = fixtures::circle();
        let a = fixtures::interval().induced(|v| v.0 == 7);
        assert!(ChainComplex::pair(&k, &a).is_ok());
        assert!(matches!(
            ChainComplex::pair(&k, &fixtures::disk()),
            Err(HomologyError::NotSubcomplex)
        ));
    }
}
