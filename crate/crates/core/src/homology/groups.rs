use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{smith_normal_form, ChainComplex, FgAbGroup, HomologyError, IntegerMatrix};
use crate::complex::{FiniteComplex, Simplex};

/// `H_n` of a chain complex together with explicit generating cycles and a
/// coordinate map from cycles to classes.
///
/// Generators are derived from Smith forms and are not canonical: any other
/// basis of the same group is equally valid. Torsion generators come first.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: usize,
    pub group: FgAbGroup,
    basis: Vec<Simplex>,
    generators: Vec<Vec<BigInt>>,
    /// Rows: one per group generator; applied to a cycle gives its class.
    class_rows: IntegerMatrix,
    /// Rows whose vanishing characterizes cycles.
    cycle_rows: IntegerMatrix,
}

impl HomologyGroup {
    pub fn compute(cc: &ChainComplex, n: usize) -> Self {
        let basis = cc.basis(n).to_vec();
        let cn = basis.len();
        let dn = cc.boundary(n);
        let dn1 = cc.boundary(n + 1);

        let s = smith_normal_form(&dn);
        let r = s.rank();
        // Columns r.. of V span the cycles; rows r.. of V⁻¹ give coordinates
        // of a cycle in that basis.
        let cycle_basis = s.v.col_slice(r..cn);
        let cycle_coords = s.v_inv.row_slice(r..cn);
        let cycle_rows = s.v_inv.row_slice(0..r);

        let rel = cycle_coords.mul(&dn1);
        let t = smith_normal_form(&rel);
        let k = cn - r;
        let class_all = t.u.mul(&cycle_coords);
        let gen_all = cycle_basis.mul(&t.u_inv);

        let mut order: Vec<usize> = Vec::new();
        let mut torsion = Vec::new();
        for (i, d) in t.invariants.iter().enumerate() {
            if !d.is_one() {
                order.push(i);
                torsion.push(d.clone());
            }
        }
        order.extend(t.rank()..k);

        let mut class_rows = IntegerMatrix::zeros(order.len(), cn);
        let mut generators = Vec::with_capacity(order.len());
        for (row, &i) in order.iter().enumerate() {
            for j in 0..cn {
                class_rows[(row, j)] = class_all[(i, j)].clone();
            }
            generators.push(gen_all.column(i));
        }
        HomologyGroup {
            degree: n,
            group: FgAbGroup::new(k - t.rank(), torsion),
            basis,
            generators,
            class_rows,
            cycle_rows,
        }
    }

    pub fn basis(&self) -> &[Simplex] {
        &self.basis
    }

    /// Generating cycles as coefficient vectors over [`HomologyGroup::basis`].
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Generating cycles as sparse `(coefficient, simplex)` lists.
    pub fn generator_chains(&self) -> Vec<Vec<(BigInt, Simplex)>> {
        self.generators
            .iter()
            .map(|g| {
                g.iter()
                    .zip(&self.basis)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, s)| (c.clone(), s.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn is_cycle(&self, chain: &[BigInt]) -> bool {
        self.cycle_rows.mul_vec(chain).iter().all(Zero::is_zero)
    }

    /// Class of a cycle in generator coordinates.
    pub fn classify(&self, chain: &[BigInt]) -> Result<Vec<BigInt>, HomologyError> {
        if chain.len() != self.basis.len() {
            return Err(HomologyError::ChainLength {
                expected: self.basis.len(),
                got: chain.len(),
            });
        }
        if !self.is_cycle(chain) {
            return Err(HomologyError::NotACycle(self.degree));
        }
        let mut c = self.class_rows.mul_vec(chain);
        self.group.normalize(&mut c);
        Ok(c)
    }

    /// Class of a sparse chain; simplices outside the basis are ignored,
    /// which is the quotient map for relative chains.
    pub fn classify_sparse(&self, chain: &[(BigInt, Simplex)]) -> Result<Vec<BigInt>, HomologyError> {
        let mut dense = vec![BigInt::zero(); self.basis.len()];
        for (c, s) in chain {
            if let Ok(i) = self.basis.binary_search(s) {
                dense[i] += c;
            }
        }
        self.classify(&dense)
    }
}

/// `H_n(K)`.
pub fn homology(k: &FiniteComplex, n: usize) -> FgAbGroup {
    HomologyGroup::compute(&ChainComplex::of(k), n).group
}

/// `H_n(K, A)` for a subcomplex `A ⊆ K`.
pub fn relative_homology(
    k: &FiniteComplex,
    a: &FiniteComplex,
    n: usize,
) -> Result<FgAbGroup, HomologyError> {
    Ok(HomologyGroup::compute(&ChainComplex::pair(k, a)?, n).group)
}

/// Homology in every degree `0..=dim K`.
pub fn homology_all(k: &FiniteComplex) -> Vec<FgAbGroup> {
    let cc = ChainComplex::of(k);
    (0..=k.dim().unwrap_or(0))
        .map(|n| HomologyGroup::compute(&cc, n).group)
        .collect()
}
