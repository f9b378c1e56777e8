use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::maps::homology_matrix;
use super::{
    induced_pair_map, is_exact_at, ChainComplex, HomMap, HomologyError, HomologyGroup,
    IntegerMatrix, SimplicialMap,
};
use crate::complex::{FiniteComplex, Simplex};

/// One degree of the pair sequence
/// `H_n(A) → H_n(K) → H_n(K, A) → H_{n-1}(A)`.
#[derive(Clone, Debug)]
pub struct LesDegree {
    pub n: usize,
    pub i: HomMap,
    pub j: HomMap,
    /// Connecting map to `H_{n-1}(A)`; absent for `n = 0`.
    pub boundary: Option<HomMap>,
}

/// Where exactness was tested, named by the group in the middle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactnessNode {
    Subcomplex(usize),
    Complex(usize),
    Pair(usize),
}

#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub degrees: Vec<LesDegree>,
    pub verdicts: Vec<(ExactnessNode, bool)>,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        self.verdicts.iter().all(|&(_, ok)| ok)
    }

    pub fn degree(&self, n: usize) -> Option<&LesDegree> {
        self.degrees.get(n)
    }
}

/// Computes the sequence of the pair `(K, A)` in degrees `0..=dim K + 1` and
/// checks `im = ker` at every group.
pub fn long_exact_sequence(
    k: &FiniteComplex,
    a: &FiniteComplex,
) -> Result<LongExactSequence, HomologyError> {
    let cc_a = ChainComplex::of(a);
    let cc_k = ChainComplex::of(k);
    let cc_ka = ChainComplex::pair(k, a)?;
    let incl = SimplicialMap::inclusion(a, k)?;
    let id = SimplicialMap::inclusion(k, k)?;

    let top = k.dim().map_or(0, |d| d + 1);
    let h_a: Vec<HomologyGroup> = (0..=top).map(|n| HomologyGroup::compute(&cc_a, n)).collect();
    let h_k: Vec<HomologyGroup> = (0..=top).map(|n| HomologyGroup::compute(&cc_k, n)).collect();
    let h_ka: Vec<HomologyGroup> = (0..=top).map(|n| HomologyGroup::compute(&cc_ka, n)).collect();

    let mut degrees = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let i = homology_matrix(&h_a[n], &h_k[n], &incl.chain_map(&cc_a, &cc_k, n))?;
        let j = homology_matrix(&h_k[n], &h_ka[n], &id.chain_map(&cc_k, &cc_ka, n))?;
        let boundary = if n == 0 {
            None
        } else {
            Some(connecting_map(&cc_ka, &h_ka[n], &h_a[n - 1])?)
        };
        degrees.push(LesDegree { n, i, j, boundary });
    }

    let mut verdicts = Vec::new();
    for n in (0..=top).rev() {
        let d = &degrees[n];
        // Into H_n(A): from the connecting map one degree up, or from 0.
        let into_a = match degrees.get(n + 1).and_then(|e| e.boundary.as_ref()) {
            Some(b) => is_exact_at(b, &d.i),
            None => d.i.is_injective(),
        };
        verdicts.push((ExactnessNode::Subcomplex(n), into_a));
        verdicts.push((ExactnessNode::Complex(n), is_exact_at(&d.i, &d.j)));
        let at_pair = match &d.boundary {
            Some(b) => is_exact_at(&d.j, b),
            None => d.j.is_surjective(),
        };
        verdicts.push((ExactnessNode::Pair(n), at_pair));
    }
    Ok(LongExactSequence { degrees, verdicts })
}

/// `∂[α] = [∂α]`: boundaries of relative cycles, read in `A`.
fn connecting_map(
    cc_ka: &ChainComplex,
    h_ka: &HomologyGroup,
    h_a_below: &HomologyGroup,
) -> Result<HomMap, HomologyError> {
    let n = h_ka.degree;
    let cols: Vec<Vec<BigInt>> = h_ka
        .generators()
        .iter()
        .map(|g| {
            let boundary = cc_ka.full_boundary(n, g);
            h_a_below.classify_sparse(&boundary)
        })
        .collect::<Result<_, _>>()?;
    let m = IntegerMatrix::from_columns(h_a_below.group.generator_count(), &cols);
    Ok(HomMap::new(h_ka.group.clone(), h_a_below.group.clone(), m))
}

/// Checks that `(K ∖ U, A ∖ U) → (K, A)` induces isomorphisms in every
/// degree up to `dim K`.
///
/// `U` must be open (closed under cofaces in `K`) and its closure must lie
/// in the interior of `A`: every face of a simplex of `U` has all of its
/// cofaces in `A`.
pub fn excision_check(
    k: &FiniteComplex,
    a: &FiniteComplex,
    u: &BTreeSet<Simplex>,
) -> Result<bool, HomologyError> {
    if !a.is_subcomplex_of(k) {
        return Err(HomologyError::NotSubcomplex);
    }
    for s in u {
        if !k.contains(s) {
            return Err(HomologyError::PreconditionViolated {
                simplex: s.clone(),
                reason: "not a simplex of K",
            });
        }
        if let Some(t) = k.cofaces(s).find(|t| !u.contains(*t)) {
            return Err(HomologyError::PreconditionViolated {
                simplex: t.clone(),
                reason: "U is not closed under cofaces",
            });
        }
    }
    let closure: BTreeSet<Simplex> = u.iter().flat_map(|s| s.faces()).collect();
    for f in &closure {
        if let Some(t) = k.cofaces(f).find(|t| !a.contains(t)) {
            return Err(HomologyError::PreconditionViolated {
                simplex: t.clone(),
                reason: "touches the closure of U but lies outside A",
            });
        }
    }

    let k_minus: BTreeSet<Simplex> = k.iter().filter(|s| !u.contains(*s)).cloned().collect();
    let a_minus: BTreeSet<Simplex> = a.iter().filter(|s| !u.contains(*s)).cloned().collect();
    let k_minus = FiniteComplex::from_closed_set(k_minus);
    let a_minus = FiniteComplex::from_closed_set(a_minus);
    let incl = SimplicialMap::inclusion(&k_minus, k)?;
    for n in 0..=k.dim().unwrap_or(0) {
        if !induced_pair_map(&incl, &a_minus, a, n)?.is_isomorphism() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn disk_rel_circle_boundary_is_iso() {
        let les = long_exact_sequence(&fixtures::disk(), &fixtures::circle()).unwrap();
        assert!(les.is_exact());
        let b = les.degree(2).unwrap().boundary.as_ref().unwrap();
        assert_eq!(b.source.rank, 1);
        assert_eq!(b.target.rank, 1);
        assert!(b.is_isomorphism());
    }

    #[test]
    fn empty_subcomplex_degenerates() {
        let k = fixtures::torus();
        let les = long_exact_sequence(&k, &FiniteComplex::empty()).unwrap();
        assert!(les.is_exact());
        for d in &les.degrees {
            assert!(d.j.is_isomorphism());
        }
    }

    #[test]
    fn cylinder_rel_one_end() {
        let les = long_exact_sequence(&fixtures::cylinder(), &fixtures::cylinder_boundary()).unwrap();
        assert!(les.is_exact());
        assert!(les.degree(1).unwrap().i.is_isomorphism());
    }

    #[test]
    fn torus_with_circle_subcomplex() {
        let k = fixtures::torus();
        for cut in 0..7 {
            let a = k.induced(|v| v.0 <= cut);
            assert!(long_exact_sequence(&k, &a).unwrap().is_exact(), "cut {cut}");
        }
    }

    #[test]
    fn excision_on_ringed_disk() {
        let k = fixtures::ringed_disk();
        let a = fixtures::ringed_disk_collar();
        let u: BTreeSet<Simplex> = fixtures::ringed_disk_excised().into_iter().collect();
        assert!(excision_check(&k, &a, &u).unwrap());
        assert!(excision_check(&k, &a, &BTreeSet::new()).unwrap());
    }

    #[test]
    fn excision_precondition_guards() {
        let k = fixtures::ringed_disk();
        let a = fixtures::ringed_disk_collar();
        // An edge alone is not open: its triangles are missing from U.
        let e = fixtures::ringed_disk_excised()
            .into_iter()
            .find(|s| s.dim() == 1)
            .unwrap();
        let u: BTreeSet<Simplex> = [e].into_iter().collect();
        assert!(matches!(
            excision_check(&k, &a, &u),
            Err(HomologyError::PreconditionViolated { .. })
        ));
        // The open star of the centre reaches outside the collar.
        let centre = Simplex::of(&[0]);
        let u: BTreeSet<Simplex> = k.cofaces(&centre).cloned().collect();
        assert!(matches!(
            excision_check(&k, &a, &u),
            Err(HomologyError::PreconditionViolated { .. })
        ));
    }
}
