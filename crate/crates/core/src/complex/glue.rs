use std::collections::{BTreeMap, BTreeSet};

use super::{ComplexError, FiniteComplex, Simplex, VertexId};
use crate::dsu::DisjointSets;

/// Partial injection from vertices of part `from` to vertices of part `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub from: usize,
    pub to: usize,
    pub pairs: Vec<(VertexId, VertexId)>,
}

/// Finite complexes together with vertex identifications between them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GlueSpec {
    pub parts: Vec<FiniteComplex>,
    pub identifications: Vec<Identification>,
}

/// Result of gluing: the complex and, per part, the vertex embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Glued {
    pub complex: FiniteComplex,
    pub embeddings: Vec<BTreeMap<VertexId, VertexId>>,
}

impl Glued {
    pub fn image_of(&self, part: usize, s: &Simplex) -> Simplex {
        let emb = &self.embeddings[part];
        Simplex::new(s.vertices().iter().map(|v| emb[v])).expect("embedding is injective")
    }
}

/// Glues the parts of `spec` along its identifications.
///
/// Vertices of the result are the classes of the equivalence relation
/// generated by the identifications, numbered in order of first appearance
/// (part by part, vertices ascending). Simplices are the images of the
/// parts' simplices, so two simplices coincide exactly when their vertex
/// classes do.
pub fn glue_complexes(spec: &GlueSpec) -> Result<Glued, ComplexError> {
    let mut offsets = Vec::with_capacity(spec.parts.len());
    let mut slots: Vec<(usize, VertexId)> = Vec::new();
    for (p, part) in spec.parts.iter().enumerate() {
        offsets.push(slots.len());
        slots.extend(part.vertices().map(|v| (p, v)));
    }
    let slot = |p: usize, v: VertexId| -> Result<usize, ComplexError> {
        let part = spec
            .parts
            .get(p)
            .ok_or(ComplexError::UnknownPart(p))?;
        let local: Vec<VertexId> = part.vertices().collect();
        local
            .binary_search(&v)
            .map(|i| offsets[p] + i)
            .map_err(|_| ComplexError::UnknownGlueVertex { part: p, vertex: v })
    };

    let mut dsu = DisjointSets::new(slots.len());
    for ident in &spec.identifications {
        let mut seen_from = BTreeSet::new();
        let mut seen_to = BTreeSet::new();
        for &(a, b) in &ident.pairs {
            if !seen_from.insert(a) || !seen_to.insert(b) {
                return Err(ComplexError::NotInjective {
                    from: ident.from,
                    to: ident.to,
                });
            }
            dsu.union(slot(ident.from, a)?, slot(ident.to, b)?);
        }
        check_isomorphic(spec, ident)?;
    }

    // No class may contain two vertices of the same part.
    let mut class_part: BTreeMap<(usize, usize), VertexId> = BTreeMap::new();
    for (i, &(p, v)) in slots.iter().enumerate() {
        let root = dsu.find(i);
        if let Some(&w) = class_part.get(&(root, p)) {
            return Err(ComplexError::InconsistentIdentification {
                part: p,
                first: w,
                second: v,
            });
        }
        class_part.insert((root, p), v);
    }

    let mut class_id: BTreeMap<usize, VertexId> = BTreeMap::new();
    let mut embeddings = vec![BTreeMap::new(); spec.parts.len()];
    for (i, &(p, v)) in slots.iter().enumerate() {
        let root = dsu.find(i);
        let next = VertexId(class_id.len() as u32);
        let id = *class_id.entry(root).or_insert(next);
        embeddings[p].insert(v, id);
    }

    let mut simplices = BTreeSet::new();
    for (p, part) in spec.parts.iter().enumerate() {
        for s in part.iter() {
            let image = Simplex::new(s.vertices().iter().map(|v| embeddings[p][v]))
                .expect("classes never merge two vertices of one part");
            simplices.insert(image);
        }
    }
    Ok(Glued {
        complex: FiniteComplex::from_closed_set(simplices),
        embeddings,
    })
}

/// The identified vertex sets must span isomorphic full subcomplexes.
fn check_isomorphic(spec: &GlueSpec, ident: &Identification) -> Result<(), ComplexError> {
    let forward: BTreeMap<VertexId, VertexId> = ident.pairs.iter().copied().collect();
    let backward: BTreeMap<VertexId, VertexId> =
        ident.pairs.iter().map(|&(a, b)| (b, a)).collect();
    let carry = |src: &FiniteComplex,
                 dst: &FiniteComplex,
                 map: &BTreeMap<VertexId, VertexId>|
     -> Result<(), ComplexError> {
        for s in src.iter() {
            if s.vertices().iter().all(|v| map.contains_key(v)) {
                let image = Simplex::new(s.vertices().iter().map(|v| map[v]))
                    .expect("identification is injective");
                if !dst.contains(&image) {
                    return Err(ComplexError::NonIsomorphicIdentification {
                        from: ident.from,
                        to: ident.to,
                        simplex: s.clone(),
                    });
                }
            }
        }
        Ok(())
    };
    let a = &spec.parts[ident.from];
    let b = &spec.parts[ident.to];
    carry(a, b, &forward)?;
    carry(b, a, &backward)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ident(from: usize, to: usize, pairs: &[(u32, u32)]) -> Identification {
        Identification {
            from,
            to,
            pairs: pairs
                .iter()
                .map(|&(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
        }
    }

    #[test]
    fn two_circles_along_an_edge() {
        let spec = GlueSpec {
            parts: vec![fixtures::circle(), fixtures::circle()],
            identifications: vec![ident(0, 1, &[(0, 0), (1, 1)])],
        };
        let g = glue_complexes(&spec).unwrap();
        assert_eq!(g.complex.count(0), 4);
        assert_eq!(g.complex.count(1), 5);
        assert_eq!(g.complex.euler_characteristic(), -1);
    }

    #[test]
    fn empty_identification_is_disjoint_union() {
        let spec = GlueSpec {
            parts: vec![fixtures::circle(), fixtures::disk()],
            identifications: vec![],
        };
        let g = glue_complexes(&spec).unwrap();
        assert_eq!(g.complex.len(), 6 + 7);
        assert_eq!(g.complex.components().len(), 2);
    }

    #[test]
    fn intervals_end_to_end() {
        let i = FiniteComplex::from_facets(&[&[0, 1]]);
        let spec = GlueSpec {
            parts: vec![i.clone(), i],
            identifications: vec![ident(0, 1, &[(1, 0)])],
        };
        let g = glue_complexes(&spec).unwrap();
        assert_eq!(g.complex, FiniteComplex::from_facets(&[&[0, 1], &[1, 2]]));
    }

    #[test]
    fn merging_two_vertices_of_one_part_fails() {
        let i = FiniteComplex::from_facets(&[&[0, 1]]);
        let spec = GlueSpec {
            parts: vec![i.clone(), i],
            identifications: vec![ident(0, 1, &[(0, 0)]), ident(1, 0, &[(0, 1)])],
        };
        assert!(matches!(
            glue_complexes(&spec),
            Err(ComplexError::InconsistentIdentification { .. })
        ));
    }

    #[test]
    fn non_isomorphic_identification_fails() {
        // An edge in one part matched with a non-edge in the other.
        let a = FiniteComplex::from_facets(&[&[0, 1]]);
        let b = FiniteComplex::from_facets(&[&[0], &[1]]);
        let spec = GlueSpec {
            parts: vec![a, b],
            identifications: vec![ident(0, 1, &[(0, 0), (1, 1)])],
        };
        assert!(matches!(
            glue_complexes(&spec),
            Err(ComplexError::NonIsomorphicIdentification { .. })
        ));
    }

    #[test]
    fn parts_embed_isomorphically() {
        let spec = GlueSpec {
            parts: vec![fixtures::circle(), fixtures::interval()],
            identifications: vec![ident(0, 1, &[(2, 0)])],
        };
        let g = glue_complexes(&spec).unwrap();
        for (p, part) in spec.parts.iter().enumerate() {
            let images: BTreeSet<Simplex> = part.iter().map(|s| g.image_of(p, s)).collect();
            assert_eq!(images.len(), part.len());
            assert!(images.iter().all(|s| g.complex.contains(s)));
        }
        assert_eq!(g.complex.count(0), 4);
        assert_eq!(g.complex.euler_characteristic(), 0);
    }
}
