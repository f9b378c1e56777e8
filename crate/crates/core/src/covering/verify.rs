use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{lift_walk, CoveringComplex, Sheets};
use crate::complex::{Simplex, VertexId};
use crate::group::{edge_path_presentation, todd_coxeter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCheck {
    pub verified: bool,
    /// A total-space vertex where the star comparison fails.
    pub witness: Option<VertexId>,
}

/// Checks that the projection is simplicial and maps the closed star of
/// every non-frontier vertex isomorphically onto the star of its image.
pub fn verify_covering(c: &CoveringComplex) -> CoverCheck {
    let total = c.total_complex();
    let project = |s: &Simplex| -> Option<Simplex> {
        let image: Option<Vec<VertexId>> =
            s.vertices().iter().map(|v| c.projection.get(v).copied()).collect();
        Simplex::new(image?).ok()
    };
    if let Some(s) = total.iter().find(|s| project(s).is_none_or(|p| !c.base.contains(&p))) {
        return CoverCheck {
            verified: false,
            witness: Some(s.vertices()[0]),
        };
    }
    let vertices: Vec<VertexId> = total
        .vertices()
        .filter(|v| !c.frontier.contains(v))
        .collect();
    let bad = vertices.par_iter().find_first(|&&x| {
        let star = total.star(&Simplex::vertex(x)).expect("vertex of total");
        let Some(&u) = c.projection.get(&x) else {
            return true;
        };
        let base_star = c.base.star(&Simplex::vertex(u)).expect("vertex of base");
        let images: BTreeSet<Simplex> = star.iter().filter_map(project).collect();
        let star_vertices: BTreeSet<VertexId> = star.vertices().map(|v| c.projection[&v]).collect();
        star.count(0) != star_vertices.len()
            || images.len() != star.len()
            || images.len() != base_star.len()
            || !images.iter().all(|s| base_star.contains(s))
    });
    CoverCheck {
        verified: bad.is_none(),
        witness: bad.copied(),
    }
}

/// Result of comparing `p_*(π₁(E))` with a subgroup `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupImage {
    /// Every generator of `π₁(E)` projects into `L`.
    pub image_in_subgroup: bool,
    /// `[π₁(B) : L]` equals the number of sheets.
    pub index_matches: bool,
    /// Every 2-simplex boundary lifts to a closed loop from every sheet, so
    /// loops of `E` that die in the base already die in `E`.
    pub relators_lift_closed: bool,
    pub verified: bool,
}

/// Checks `p_*(π₁(E, ẽ₀)) = L` for a finite cover.
pub fn verify_subgroup_image(c: &CoveringComplex, subgroup: &[Word], budget: usize) -> SubgroupImage {
    let fail = SubgroupImage {
        image_in_subgroup: false,
        index_matches: false,
        relators_lift_closed: false,
        verified: false,
    };
    let Sheets::Finite(d) = c.sheets else {
        return fail;
    };
    let total = c.total_complex();
    let table = todd_coxeter(&c.edge_path.presentation, subgroup, budget);
    if !table.is_complete() {
        return fail;
    }
    let Ok(ep_total) = edge_path_presentation(total, c.base_lift()) else {
        return fail;
    };
    let image_in_subgroup = ep_total.edge_generators.keys().all(|&(u, w)| {
        let mut walk = ep_total.tree.path(u);
        let mut back = ep_total.tree.path(w);
        back.reverse();
        walk.extend(back);
        let projected: Vec<VertexId> = walk.iter().map(|v| c.projection[v]).collect();
        table.fixes_base(&c.edge_path.walk_word(&projected))
    });
    let fibre = c
        .projection
        .values()
        .filter(|&&u| u == c.basepoint)
        .count();
    let index_matches = table.index() == Some(d) && fibre == d;
    let relators_lift_closed = c.base.simplices(2).iter().all(|t| {
        let v = t.vertices();
        let walk = [v[0], v[1], v[2], v[0]];
        (0..d).all(|s| {
            lift_walk(c, &walk, s).is_some_and(|l| l[0] == l[3] && total.contains(&Simplex::new(l[..3].iter().copied()).expect("distinct")))
        })
    });
    SubgroupImage {
        verified: image_in_subgroup && index_matches && relators_lift_closed,
        image_in_subgroup,
        index_matches,
        relators_lift_closed,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeckCount {
    /// `L` is normal; the deck group acts simply transitively on sheets.
    Normal(usize),
    /// `L` is not normal; `symmetries` sheets are reachable by deck
    /// transformations (the order of `N(L)/L`).
    NonNormal { symmetries: usize },
}

/// Number of deck transformations of a finite cover: the cosets `Lg` fixed
/// by every generator of `L`, which are exactly those with `g ∈ N(L)`.
pub fn deck_count(c: &CoveringComplex) -> Option<DeckCount> {
    let table = c.table.as_ref()?;
    let d = table.index()?;
    let symmetries = (0..d)
        .filter(|&s| c.subgroup.iter().all(|w| table.act(s, w) == Some(s)))
        .count();
    Some(if symmetries == d {
        DeckCount::Normal(d)
    } else {
        DeckCount::NonNormal { symmetries }
    })
}
