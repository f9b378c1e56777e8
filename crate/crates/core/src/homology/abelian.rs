use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntegerMatrix, SmithForm};

/// Finitely generated abelian group `ℤ^rank ⊕ ℤ/t_1 ⊕ … ⊕ ℤ/t_k` with
/// `t_1 | t_2 | … | t_k` and every `t_i > 1`.
///
/// Elements are coordinate vectors over the standard generators, torsion
/// generators first, then the free ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Self {
        FgAbGroup { rank, torsion }
    }

    /// Cokernel of an integer matrix, read off its Smith form.
    pub fn cokernel(relations: &IntegerMatrix) -> Self {
        let s = smith_normal_form(relations);
        Self::from_smith(relations.rows(), &s)
    }

    pub(crate) fn from_smith(generators: usize, s: &SmithForm) -> Self {
        FgAbGroup {
            rank: generators - s.rank(),
            torsion: s.invariants.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn generator_count(&self) -> usize {
        self.torsion.len() + self.rank
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the `i`-th generator; zero for free generators.
    pub fn order(&self, i: usize) -> BigInt {
        self.torsion.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Reduces torsion coordinates into `0..t_i`.
    pub fn normalize(&self, x: &mut [BigInt]) {
        for (xi, t) in x.iter_mut().zip(&self.torsion) {
            *xi = xi.mod_floor(t);
        }
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        x.iter().enumerate().all(|(i, xi)| {
            let t = self.order(i);
            if t.is_zero() {
                xi.is_zero()
            } else {
                xi.is_multiple_of(&t)
            }
        })
    }

    /// Relation matrix: one column `t_i e_i` per torsion generator.
    pub fn relation_matrix(&self) -> IntegerMatrix {
        let n = self.generator_count();
        let mut m = IntegerMatrix::zeros(n, self.torsion.len());
        for (i, t) in self.torsion.iter().enumerate() {
            m[(i, i)] = t.clone();
        }
        m
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Subgroup of `ℤ^n` spanned by the columns of a matrix, with a membership
/// test through its Smith form.
#[derive(Clone, Debug)]
pub struct Lattice {
    ambient: usize,
    snf: SmithForm,
}

impl Lattice {
    pub fn span(generators: &IntegerMatrix) -> Self {
        Lattice {
            ambient: generators.rows(),
            snf: smith_normal_form(generators),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside the ambient lattice");
        let w = self.snf.u.mul_vec(v);
        w.iter().enumerate().all(|(i, wi)| match self.snf.invariants.get(i) {
            Some(d) => wi.is_multiple_of(d),
            None => wi.is_zero(),
        })
    }

    pub fn contains_all(&self, generators: &IntegerMatrix) -> bool {
        (0..generators.cols()).all(|j| self.contains(&generators.column(j)))
    }

    /// Whether the lattice is all of `ℤ^n`.
    pub fn is_full(&self) -> bool {
        self.snf.rank() == self.ambient && self.snf.invariants.iter().all(One::is_one)
    }
}

/// Integer kernel basis of a matrix, as columns.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let s = smith_normal_form(m);
    s.v.col_slice(s.rank()..m.cols())
}

/// Homomorphism between finitely generated abelian groups, given by the
/// images of the source generators in target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMap {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub matrix: IntegerMatrix,
}

impl HomMap {
    /// Builds the map, reducing torsion coordinates of every column.
    pub fn new(source: FgAbGroup, target: FgAbGroup, mut matrix: IntegerMatrix) -> Self {
        assert_eq!(matrix.rows(), target.generator_count());
        assert_eq!(matrix.cols(), source.generator_count());
        for j in 0..matrix.cols() {
            for (i, t) in target.torsion.iter().enumerate() {
                let x = matrix[(i, j)].mod_floor(t);
                matrix[(i, j)] = x;
            }
        }
        HomMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        HomMap::new(g.clone(), g.clone(), IntegerMatrix::identity(g.generator_count()))
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        HomMap::new(
            source.clone(),
            target.clone(),
            IntegerMatrix::zeros(target.generator_count(), source.generator_count()),
        )
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &HomMap) -> HomMap {
        assert_eq!(self.target, other.source, "composing mismatched maps");
        HomMap::new(
            self.source.clone(),
            other.target.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        self.target.normalize(&mut y);
        y
    }

    /// Image as a sublattice of target coordinates, including the target's
    /// own relations.
    pub fn image_lattice(&self) -> Lattice {
        Lattice::span(&self.matrix.hstack(&self.target.relation_matrix()))
    }

    /// Generators (columns, source coordinates) of the kernel, including the
    /// source relations.
    pub fn kernel_generators(&self) -> IntegerMatrix {
        let k = self.source.generator_count();
        let stacked = self.matrix.hstack(&self.target.relation_matrix());
        let ker = kernel_basis(&stacked).row_slice(0..k);
        ker.hstack(&self.source.relation_matrix())
    }

    pub fn is_injective(&self) -> bool {
        let ker = self.kernel_generators();
        (0..ker.cols()).all(|j| self.source.is_zero_element(&ker.column(j)))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_lattice().is_full()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Multiplication by a scalar on a cyclic group, for readable tests.
    pub fn is_multiplication_by(&self, k: i64) -> bool {
        self.source == self.target
            && self.source.generator_count() == 1
            && {
                let mut expect = vec![BigInt::from(k)];
                self.target.normalize(&mut expect);
                self.matrix[(0, 0)] == expect[0]
            }
    }

    pub fn abs_determinant(&self) -> Option<BigInt> {
        (self.matrix.rows() == self.matrix.cols()).then(|| self.matrix.determinant().abs())
    }
}

/// Whether `im f = ker g` for `f: A → B`, `g: B → C`.
pub fn is_exact_at(f: &HomMap, g: &HomMap) -> bool {
    assert_eq!(f.target, g.source, "maps do not compose");
    let image = f.image_lattice();
    let kernel_gens = g.kernel_generators();
    let kernel = Lattice::span(&kernel_gens);
    let image_gens = f.matrix.hstack(&f.target.relation_matrix());
    image.contains_all(&kernel_gens) && kernel.contains_all(&image_gens)
}
