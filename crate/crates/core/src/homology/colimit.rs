use rayon::prelude::*;

use super::maps::homology_matrix;
use super::{ChainComplex, FgAbGroup, HomMap, HomologyError, HomologyGroup, IntegerMatrix, SimplicialMap};
use crate::complex::{ComplexError, Exhaustion};

/// `H_n` of an exhaustion prefix: the stage groups, the maps induced by the
/// inclusions, and their direct limit.
#[derive(Clone, Debug)]
pub struct ColimitHomology {
    pub degree: usize,
    pub group: FgAbGroup,
    pub stages: Vec<FgAbGroup>,
    /// `maps[s]` is induced by `K_s ⊆ K_{s+1}`.
    pub maps: Vec<HomMap>,
    /// The last induced map is an isomorphism.
    pub stable: bool,
    /// Earliest stage from which every induced map in the prefix is an
    /// isomorphism.
    pub stable_from: Option<usize>,
}

/// Direct limit of `H_n(K_0) → … → H_n(K_budget)`, presented as the sum of
/// the stage groups modulo `x − i_*(x)` and reduced by Smith normal form.
pub fn colimit_homology(
    x: &Exhaustion,
    n: usize,
    budget: usize,
) -> Result<ColimitHomology, HomologyError> {
    if budget >= x.stage_count() {
        return Err(ComplexError::BudgetBeyondPrefix {
            budget,
            materialized: x.stage_count(),
        }
        .into());
    }
    let stages = &x.stages()[..=budget];
    let chains: Vec<ChainComplex> = stages.par_iter().map(ChainComplex::of).collect();
    let groups: Vec<HomologyGroup> = chains
        .par_iter()
        .map(|cc| HomologyGroup::compute(cc, n))
        .collect();
    let maps: Vec<HomMap> = (0..budget)
        .into_par_iter()
        .map(|s| {
            let incl = SimplicialMap::inclusion(&stages[s], &stages[s + 1])?;
            homology_matrix(
                &groups[s],
                &groups[s + 1],
                &incl.chain_map(&chains[s], &chains[s + 1], n),
            )
        })
        .collect::<Result<_, _>>()?;

    let offsets: Vec<usize> = groups
        .iter()
        .scan(0, |acc, g| {
            let o = *acc;
            *acc += g.group.generator_count();
            Some(o)
        })
        .collect();
    let total: usize = groups.iter().map(|g| g.group.generator_count()).sum();
    let mut relations: Vec<Vec<num_bigint::BigInt>> = Vec::new();
    for (s, g) in groups.iter().enumerate() {
        for (i, t) in g.group.torsion.iter().enumerate() {
            let mut col = vec![num_bigint::BigInt::from(0); total];
            col[offsets[s] + i] = t.clone();
            relations.push(col);
        }
        if let Some(m) = maps.get(s) {
            for i in 0..g.group.generator_count() {
                let mut col = vec![num_bigint::BigInt::from(0); total];
                col[offsets[s] + i] += 1;
                for (r, x) in m.matrix.column(i).into_iter().enumerate() {
                    col[offsets[s + 1] + r] -= x;
                }
                relations.push(col);
            }
        }
    }
    let group = FgAbGroup::cokernel(&IntegerMatrix::from_columns(total, &relations));

    let stable = maps.last().is_some_and(HomMap::is_isomorphism);
    let stable_from = if stable {
        let mut s = maps.len();
        while s > 0 && maps[s - 1].is_isomorphism() {
            s -= 1;
        }
        Some(s)
    } else {
        None
    };
    Ok(ColimitHomology {
        degree: n,
        group,
        stages: groups.into_iter().map(|g| g.group).collect(),
        maps,
        stable,
        stable_from,
    })
}
