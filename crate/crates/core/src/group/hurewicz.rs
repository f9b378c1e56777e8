use super::{edge_path_presentation, todd_coxeter, GroupError};
use crate::complex::{FiniteComplex, VertexId};
use crate::homology::{homology, induced_map, FgAbGroup, SimplicialMap};

/// Both sides of the degree-one Hurewicz comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurewiczH1 {
    pub abelianized_pi1: FgAbGroup,
    pub h1: FgAbGroup,
    pub agrees: bool,
}

pub fn hurewicz_h1_check(k: &FiniteComplex, v0: VertexId) -> Result<HurewiczH1, GroupError> {
    let ep = edge_path_presentation(k, v0)?;
    let abelianized_pi1 = ep.presentation.abelianization();
    let h1 = homology(k, 1);
    Ok(HurewiczH1 {
        agrees: abelianized_pi1 == h1,
        abelianized_pi1,
        h1,
    })
}

/// Whether coset enumeration proves the edge-path group trivial.
pub fn pi1_certified_trivial(
    k: &FiniteComplex,
    v0: VertexId,
    budget: usize,
) -> Result<bool, GroupError> {
    let ep = edge_path_presentation(k, v0)?;
    Ok(todd_coxeter(&ep.presentation, &[], budget).index() == Some(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pi2 {
    /// `π₂ ≅ H₂` once `π₁ = 1` is certified.
    Certified(FgAbGroup),
    Undetermined,
}

pub fn pi2_via_hurewicz(k: &FiniteComplex, v0: VertexId, budget: usize) -> Result<Pi2, GroupError> {
    if pi1_certified_trivial(k, v0, budget)? {
        Ok(Pi2::Certified(homology(k, 2)))
    } else {
        Ok(Pi2::Undetermined)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WhiteheadVerdict {
    EquivalenceCertified,
    /// Some induced map on homology fails to be an isomorphism.
    NotEquivalence { degree: usize },
    Undetermined,
}

/// One-sided Whitehead test: a homology mismatch refutes, isomorphisms in
/// every degree together with certified simple connectivity of both sides
/// prove; anything else is left undetermined.
pub fn whitehead_check(
    f: &SimplicialMap,
    v0: VertexId,
    budget: usize,
) -> Result<WhiteheadVerdict, GroupError> {
    let (k, l) = (f.source(), f.target());
    if !k.contains_vertex(v0) {
        return Err(GroupError::VertexNotFound(v0));
    }
    if !k.is_connected() || !l.is_connected() {
        return Err(GroupError::Disconnected);
    }
    let top = k.dim().unwrap_or(0).max(l.dim().unwrap_or(0));
    for n in 0..=top {
        if !induced_map(f, n)?.is_isomorphism() {
            return Ok(WhiteheadVerdict::NotEquivalence { degree: n });
        }
    }
    if pi1_certified_trivial(k, v0, budget)? && pi1_certified_trivial(l, f.apply(v0), budget)? {
        Ok(WhiteheadVerdict::EquivalenceCertified)
    } else {
        Ok(WhiteheadVerdict::Undetermined)
    }
}
