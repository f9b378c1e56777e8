use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{position, vertex_id, CoverError, CoverTotal, CoveringComplex, Sheets};
use crate::complex::{FiniteComplex, Simplex, VertexId};
use crate::group::{edge_path_presentation, todd_coxeter, CosetTable, Letter, Presentation, Word};

/// Finite cover of `K` for the subgroup generated by `subgroup`, whose
/// sheets are the cosets found by enumeration.
pub fn finite_cover(
    k: &FiniteComplex,
    v0: VertexId,
    subgroup: &[Word],
    budget: usize,
) -> Result<CoveringComplex, CoverError> {
    let ep = edge_path_presentation(k, v0)?;
    let table = todd_coxeter(&ep.presentation, subgroup, budget);
    if !table.is_complete() {
        return Err(CoverError::BudgetExceeded(budget));
    }
    let d = table.len();
    let nv = k.count(0);
    let mut simplices = BTreeSet::new();
    for sigma in k.iter() {
        let vs = sigma.vertices();
        for c in 0..d {
            let cosets: Vec<usize> = vs
                .iter()
                .map(|&u| table.act(c, &ep.edge_word(vs[0], u)).expect("complete table"))
                .collect();
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    if table.act(cosets[i], &ep.edge_word(vs[i], vs[j])) != Some(cosets[j]) {
                        return Err(CoverError::InconsistentLift {
                            simplex: sigma.clone(),
                            sheet: c,
                        });
                    }
                }
            }
            let lifted = vs
                .iter()
                .zip(&cosets)
                .map(|(&u, &ci)| vertex_id(ci, position(k, u), nv));
            simplices.insert(Simplex::new(lifted).expect("distinct lifted vertices"));
        }
    }
    let total = FiniteComplex::closure(simplices);
    let mut projection = BTreeMap::new();
    let mut sheet = BTreeMap::new();
    for c in 0..d {
        for (p, u) in k.vertices().enumerate() {
            let x = vertex_id(c, p, nv);
            projection.insert(x, u);
            sheet.insert(x, c);
        }
    }
    Ok(CoveringComplex {
        base: k.clone(),
        basepoint: v0,
        total: CoverTotal::Finite(total),
        projection,
        sheet,
        sheets: Sheets::Finite(d),
        frontier: BTreeSet::new(),
        edge_path: ep,
        subgroup: subgroup.to_vec(),
        table: Some(table),
    })
}

/// Lift of a base vertex walk starting on sheet `start`; unique because
/// every edge label acts as a permutation of the sheets.
pub fn lift_walk(c: &CoveringComplex, walk: &[VertexId], start: usize) -> Option<Vec<VertexId>> {
    let table = c.table.as_ref()?;
    let nv = c.base.count(0);
    let mut coset = start;
    let mut out = Vec::with_capacity(walk.len());
    for (i, &u) in walk.iter().enumerate() {
        if i > 0 {
            coset = table.act(coset, &c.edge_path.edge_word(walk[i - 1], u))?;
        }
        out.push(vertex_id(coset, position(&c.base, u), nv));
    }
    Some(out)
}

/// Generators of the stabilizer of point 0 under a permutation action, one
/// permutation per generator. The action must satisfy every relator.
///
/// Returns Schreier generators `t_c · x · t_{c·x}⁻¹` for the non-tree edges
/// of the breadth-first orbit graph.
pub fn subgroup_from_permutations(
    p: &Presentation,
    perms: &[Vec<usize>],
) -> Result<Vec<Word>, CoverError> {
    if perms.len() != p.generator_count() {
        return Err(CoverError::NotAnAction);
    }
    let n = perms.first().map_or(1, Vec::len);
    for q in perms {
        let mut seen = vec![false; n];
        if q.len() != n || q.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(CoverError::NotAnAction);
        }
    }
    let table = CosetTable::from_permutations(perms);
    for c in 0..n {
        for r in p.relators() {
            if table.act(c, r) != Some(c) {
                return Err(CoverError::NotAnAction);
            }
        }
    }
    let mut reach: Vec<Option<Word>> = vec![None; n];
    reach[0] = Some(Word::empty());
    let mut queue = VecDeque::from([0usize]);
    let mut tree = BTreeSet::new();
    while let Some(c) = queue.pop_front() {
        for g in 0..perms.len() {
            for inverse in [false, true] {
                let l = Letter::new(g, inverse);
                let d = table.entry(c, l).expect("complete");
                if reach[d].is_none() {
                    let mut w = reach[c].clone().expect("reached");
                    w.push(l);
                    reach[d] = Some(w);
                    tree.insert((c, l));
                    tree.insert((d, l.inv()));
                    queue.push_back(d);
                }
            }
        }
    }
    let mut gens = Vec::new();
    for c in 0..n {
        let Some(tc) = reach[c].clone() else { continue };
        for g in 0..perms.len() {
            let l = Letter::new(g, false);
            if tree.contains(&(c, l)) {
                continue;
            }
            let d = table.entry(c, l).expect("complete");
            let td = reach[d].clone().expect("orbit closed");
            let mut w = tc.clone();
            w.push(l);
            let w = w.concat(&td.inverse());
            if !w.is_empty() {
                gens.push(w);
            }
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::homology;

    #[test]
    fn double_cover_of_circle_is_hexagon() {
        let k = fixtures::circle();
        let ep = edge_path_presentation(&k, VertexId(0)).unwrap();
        let l = ep.presentation.parse_word("a a").unwrap();
        let c = finite_cover(&k, VertexId(0), &[l], 100).unwrap();
        let e = c.total_complex();
        assert_eq!(c.sheet_count(), Some(2));
        assert_eq!((e.count(0), e.count(1)), (6, 6));
        assert!(e.is_connected());
        assert_eq!(e.euler_characteristic(), 2 * k.euler_characteristic());
    }

    #[test]
    fn whole_group_gives_identity_cover() {
        let k = fixtures::torus();
        let ep = edge_path_presentation(&k, VertexId(0)).unwrap();
        let all: Vec<Word> = (0..ep.presentation.generator_count()).map(Word::gen).collect();
        let c = finite_cover(&k, VertexId(0), &all, 100).unwrap();
        assert_eq!(c.sheet_count(), Some(1));
        assert_eq!(c.total_complex(), &k);
    }

    #[test]
    fn index_three_cover_of_wedge() {
        let k = fixtures::wedge_of_circles();
        let ep = edge_path_presentation(&k, VertexId(0)).unwrap();
        // Both generators act as the 3-cycle: kernel of the map onto ℤ/3.
        let gens = subgroup_from_permutations(&ep.presentation, &[vec![1, 2, 0], vec![1, 2, 0]]).unwrap();
        let c = finite_cover(&k, VertexId(0), &gens, 100).unwrap();
        assert_eq!(c.sheet_count(), Some(3));
        let e = c.total_complex();
        assert_eq!(e.euler_characteristic(), -3);
        assert_eq!(homology(e, 1).rank, 4);
        // Nielsen–Schreier: a free subgroup of index 3 in F_2 has rank 4.
        assert_eq!(gens.len(), 4);
    }

    #[test]
    fn lifted_walks_are_edge_paths() {
        let k = fixtures::projective_plane();
        let c = finite_cover(&k, VertexId(0), &[], 100).unwrap();
        assert_eq!(c.sheet_count(), Some(2));
        let e = c.total_complex();
        assert_eq!(homology(e, 2).rank, 1);
        let walk: Vec<VertexId> = [0, 1, 2, 3, 5, 4, 0].into_iter().map(VertexId).collect();
        for s in 0..2 {
            let lift = lift_walk(&c, &walk, s).unwrap();
            for pair in lift.windows(2) {
                assert!(e.contains(&Simplex::new([pair[0], pair[1]]).unwrap()));
            }
            for (x, u) in lift.iter().zip(&walk) {
                assert_eq!(c.project(*x), *u);
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let k = fixtures::circle();
        assert!(matches!(
            finite_cover(&k, VertexId(0), &[], 20),
            Err(CoverError::BudgetExceeded(20))
        ));
    }

    #[test]
    fn permutations_must_satisfy_relators() {
        let p = Presentation::parse("GEN a\nREL a a\n").unwrap();
        assert!(matches!(
            subgroup_from_permutations(&p, &[vec![1, 2, 0]]),
            Err(CoverError::NotAnAction)
        ));
        assert!(subgroup_from_permutations(&p, &[vec![1, 0]]).is_ok());
    }
}
