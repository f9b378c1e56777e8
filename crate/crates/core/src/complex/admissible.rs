use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::{Exhaustion, FiniteComplex, Simplex, VertexId};

/// Subset of the simplices of a colimit complex, given by a membership
/// predicate whose restriction to any finite stage is a finite explicit set.
#[derive(Clone)]
pub struct AdmissibleSubset {
    member: Arc<dyn Fn(&Simplex) -> bool + Send + Sync>,
}

impl fmt::Debug for AdmissibleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("AdmissibleSubset(..)")
    }
}

impl AdmissibleSubset {
    pub fn new<F>(member: F) -> Self
    where
        F: Fn(&Simplex) -> bool + Send + Sync + 'static,
    {
        AdmissibleSubset {
            member: Arc::new(member),
        }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        (self.member)(s)
    }

    pub fn restrict(&self, k: &FiniteComplex) -> BTreeSet<Simplex> {
        k.iter().filter(|s| self.contains(s)).cloned().collect()
    }

    /// Upward closed inside `k`: with `σ` it contains every coface of `σ`.
    pub fn is_open_in(&self, k: &FiniteComplex) -> bool {
        k.iter()
            .filter(|s| self.contains(s))
            .all(|s| k.cofaces(s).all(|t| self.contains(t)))
    }

    /// Face-closed inside `k`.
    pub fn is_closed_in(&self, k: &FiniteComplex) -> bool {
        k.iter()
            .filter(|s| self.contains(s))
            .all(|s| s.facets().all(|f| self.contains(&f)))
    }
}

/// Vertex-stage data behind the shrinking cover `U_0, U_1, …` of an
/// exhaustion.
///
/// With `V_n` the vertices of stage `n`, a simplex belongs to `U_n` when it
/// has a vertex in `V_n` and none in `V_{n-2}`. Equivalently the earliest
/// birth stage `b` among its vertices satisfies `n - 2 < b <= n`, so each
/// simplex lies in exactly `U_b` and `U_{b+1}`.
#[derive(Clone, Debug)]
pub struct ShrinkCover {
    vertex_birth: Arc<BTreeMap<VertexId, usize>>,
    stages: usize,
}

impl ShrinkCover {
    pub fn new(x: &Exhaustion) -> Self {
        let vertex_birth = x
            .last()
            .vertices()
            .map(|v| (v, x.vertex_birth(v).expect("vertex in prefix")))
            .collect();
        ShrinkCover {
            vertex_birth: Arc::new(vertex_birth),
            stages: x.stage_count(),
        }
    }

    /// Earliest vertex birth of `s`, or `None` if no vertex is materialized.
    pub fn min_birth(&self, s: &Simplex) -> Option<usize> {
        s.vertices()
            .iter()
            .filter_map(|v| self.vertex_birth.get(v).copied())
            .min()
    }

    /// Indices `n` with `s ∈ U_n`.
    pub fn memberships(&self, s: &Simplex) -> Vec<usize> {
        match self.min_birth(s) {
            Some(b) => vec![b, b + 1],
            None => Vec::new(),
        }
    }

    /// Number of nonempty pieces over the prefix: `U_0 ..= U_{stages}`.
    pub fn len(&self) -> usize {
        self.stages + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn piece(&self, n: usize) -> AdmissibleSubset {
        let births = self.vertex_birth.clone();
        AdmissibleSubset::new(move |s: &Simplex| {
            let mut has_in_n = false;
            for v in s.vertices() {
                if let Some(&b) = births.get(v) {
                    if b + 2 <= n {
                        return false;
                    }
                    if b <= n {
                        has_in_n = true;
                    }
                }
            }
            has_in_n
        })
    }

    pub fn pieces(&self) -> Vec<AdmissibleSubset> {
        (0..self.len()).map(|n| self.piece(n)).collect()
    }
}

/// The shrinking cover of an exhaustion as a list of admissible subsets.
pub fn shrink_exhaustion(x: &Exhaustion) -> Vec<AdmissibleSubset> {
    ShrinkCover::new(x).pieces()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn line_windows_overlap_by_one() {
        let x = fixtures::line_exhaustion(6);
        let pieces = shrink_exhaustion(&x);
        let k = x.last();
        // Vertex v is born at stage v, edge (v, v+1) has min birth v.
        for n in 0..pieces.len() {
            let got = pieces[n].restrict(k);
            let expected: BTreeSet<Simplex> = k
                .iter()
                .filter(|s| {
                    let b = s.vertices()[0].0 as usize;
                    b + 1 >= n && b <= n
                })
                .cloned()
                .collect();
            assert_eq!(got, expected, "window {n}");
        }
        for n in 0..pieces.len() {
            for m in n + 2..pieces.len() {
                let a = pieces[n].restrict(k);
                assert!(a.is_disjoint(&pieces[m].restrict(k)));
            }
        }
    }

    #[test]
    fn single_stage_lands_in_first_two_pieces() {
        let x = Exhaustion::constant(fixtures::disk());
        let pieces = shrink_exhaustion(&x);
        let all: BTreeSet<Simplex> = x.last().iter().cloned().collect();
        assert_eq!(pieces[0].restrict(x.last()), all);
        assert_eq!(pieces.len(), 2);
        let later = ShrinkCover::new(&x).piece(2);
        assert!(later.restrict(x.last()).is_empty());
    }

    #[test]
    fn mixed_birth_uses_the_earliest_vertex() {
        // Edge joining a stage-0 vertex to a stage-5 vertex.
        let x = fixtures::line_exhaustion(7);
        let cover = ShrinkCover::new(&x);
        let s = Simplex::of(&[0, 5]);
        assert_eq!(cover.memberships(&s), vec![0, 1]);
        assert!(cover.piece(0).contains(&s));
        assert!(!cover.piece(5).contains(&s));
    }

    #[test]
    fn pieces_lie_in_stars_of_stage_vertices() {
        let x = fixtures::line_exhaustion(6);
        let k = x.last();
        let cover = ShrinkCover::new(&x);
        for n in 0..cover.len() {
            for s in cover.piece(n).restrict(k) {
                assert!(s
                    .vertices()
                    .iter()
                    .any(|&v| x.vertex_birth(v).is_some_and(|b| b <= n)));
            }
        }
    }

    #[test]
    fn open_and_closed_tests() {
        let k = fixtures::disk();
        let top = AdmissibleSubset::new(|s: &Simplex| s.dim() == 2);
        assert!(top.is_open_in(&k));
        assert!(!top.is_closed_in(&k));
        let all = AdmissibleSubset::new(|_: &Simplex| true);
        assert!(all.is_open_in(&k) && all.is_closed_in(&k));
    }
}
