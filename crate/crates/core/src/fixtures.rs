//! Standard complexes, exhaustions and maps used by tests, the acceptance
//! suite and the command-line tool.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{Exhaustion, FiniteComplex, GeneratedStage, GlueSpec, Identification, Simplex, VertexId};
use crate::connect::Schema;
use crate::homology::SimplicialMap;

pub fn point() -> FiniteComplex {
    FiniteComplex::from_facets(&[&[0]])
}

pub fn interval() -> FiniteComplex {
    FiniteComplex::from_facets(&[&[0, 1]])
}

/// Boundary of a triangle.
pub fn circle() -> FiniteComplex {
    FiniteComplex::from_facets(&[&[0, 1], &[1, 2], &[0, 2]])
}

/// Full 2-simplex.
pub fn disk() -> FiniteComplex {
    FiniteComplex::from_facets(&[&[0, 1, 2]])
}

/// Boundary of the 3-simplex.
pub fn sphere() -> FiniteComplex {
    FiniteComplex::from_facets(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

/// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> FiniteComplex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        facets.push(Simplex::of(&[i, (i + 1) % 7, (i + 3) % 7]));
        facets.push(Simplex::of(&[i, (i + 2) % 7, (i + 3) % 7]));
    }
    FiniteComplex::closure(facets)
}

/// Six-vertex real projective plane.
pub fn projective_plane() -> FiniteComplex {
    FiniteComplex::from_facets(&[
        &[0, 1, 2],
        &[0, 2, 3],
        &[0, 3, 4],
        &[0, 4, 5],
        &[0, 1, 5],
        &[1, 2, 4],
        &[2, 3, 5],
        &[1, 3, 4],
        &[1, 3, 5],
        &[2, 4, 5],
    ])
}

/// Nine-vertex Klein bottle from a 3×3 grid; the left and right edges are
/// identified with a flip, the top and bottom edges straight.
pub fn klein_bottle() -> FiniteComplex {
    let label = |i: u32, j: u32| -> u32 {
        let (mut i, mut j) = (i, j % 3);
        if i == 3 {
            i = 0;
            j = (3 - j) % 3;
        }
        3 * i + j
    };
    let mut facets = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            facets.push(Simplex::of(&[label(i, j), label(i + 1, j), label(i + 1, j + 1)]));
            facets.push(Simplex::of(&[label(i, j), label(i, j + 1), label(i + 1, j + 1)]));
        }
    }
    FiniteComplex::closure(facets)
}

/// Two triangle boundaries sharing vertex 0.
pub fn wedge_of_circles() -> FiniteComplex {
    FiniteComplex::from_facets(&[&[0, 1], &[1, 2], &[0, 2], &[0, 3], &[3, 4], &[0, 4]])
}

/// Annulus between the circle `0,1,2` and the circle `3,4,5`.
pub fn cylinder() -> FiniteComplex {
    let mut facets = Vec::new();
    for i in 0..3u32 {
        let j = (i + 1) % 3;
        facets.push(Simplex::of(&[i, j, 3 + i]));
        facets.push(Simplex::of(&[j, 3 + i, 3 + j]));
    }
    FiniteComplex::closure(facets)
}

/// The bottom circle `0,1,2` of [`cylinder`].
pub fn cylinder_boundary() -> FiniteComplex {
    circle()
}

/// Hexagon `0..6`: a subdivided circle.
pub fn hexagon() -> FiniteComplex {
    let facets: Vec<Simplex> = (0..6u32).map(|i| Simplex::of(&[i, (i + 1) % 6])).collect();
    FiniteComplex::closure(facets)
}

const RING: u32 = 6;

fn ring_vertex(r: u32, k: u32) -> u32 {
    1 + RING * (r - 1) + (k % RING)
}

/// Disc built from a centre vertex `0` and four concentric hexagonal rings.
/// The outer ring is the boundary circle.
pub fn ringed_disk() -> FiniteComplex {
    let mut facets = Vec::new();
    for k in 0..RING {
        facets.push(Simplex::of(&[0, ring_vertex(1, k), ring_vertex(1, k + 1)]));
    }
    for r in 1..4 {
        for k in 0..RING {
            facets.push(Simplex::of(&[
                ring_vertex(r, k),
                ring_vertex(r, k + 1),
                ring_vertex(r + 1, k),
            ]));
            facets.push(Simplex::of(&[
                ring_vertex(r, k + 1),
                ring_vertex(r + 1, k),
                ring_vertex(r + 1, k + 1),
            ]));
        }
    }
    FiniteComplex::closure(facets)
}

/// Collar of [`ringed_disk`]: everything spanned by the four rings.
pub fn ringed_disk_collar() -> FiniteComplex {
    ringed_disk().induced(|v| v.0 != 0)
}

/// Outer boundary circle of [`ringed_disk`].
pub fn ringed_disk_boundary() -> FiniteComplex {
    ringed_disk().induced(|v| v.0 > RING * 3)
}

/// Open star of an edge between the second and third rings, well inside the
/// collar.
pub fn ringed_disk_excised() -> Vec<Simplex> {
    let e = Simplex::of(&[ring_vertex(2, 0), ring_vertex(3, 0)]);
    let k = ringed_disk();
    k.cofaces(&e).cloned().collect()
}

/// Path `0 - 1 - … - n` at stage `n`; vertex `v` is born at stage `v` and its
/// star is complete from stage `v + 1`.
pub fn line_exhaustion(stages: usize) -> Exhaustion {
    fn stage(n: usize) -> GeneratedStage {
        let n = n as u32;
        let mut facets = vec![Simplex::of(&[0])];
        facets.extend((0..n).map(|v| Simplex::of(&[v, v + 1])));
        let complex = FiniteComplex::closure(facets);
        let mut stability = vec![(Simplex::of(&[n]), n as usize + 1)];
        if n > 0 {
            stability.push((Simplex::of(&[n - 1, n]), n as usize));
        }
        GeneratedStage {
            complex,
            stability,
        }
    }
    from_generator(stages, Arc::new(stage))
}

/// Chain of triangle boundaries: stage `m` holds `m` circles, circle `j`
/// on vertices `2j-2, 2j-1, 2j`, consecutive circles sharing a vertex.
pub fn circle_chain_exhaustion(stages: usize) -> Exhaustion {
    fn stage(m: usize) -> GeneratedStage {
        let m = m as u32;
        let mut facets = vec![Simplex::of(&[0])];
        for j in 1..=m {
            let (a, b, c) = (2 * j - 2, 2 * j - 1, 2 * j);
            facets.extend([Simplex::of(&[a, b]), Simplex::of(&[b, c]), Simplex::of(&[a, c])]);
        }
        let complex = FiniteComplex::closure(facets);
        let stability = if m == 0 {
            vec![(Simplex::of(&[0]), 1)]
        } else {
            let (a, b, c) = (2 * m - 2, 2 * m - 1, 2 * m);
            let m = m as usize;
            vec![
                (Simplex::of(&[b]), m),
                (Simplex::of(&[c]), m + 1),
                (Simplex::of(&[a, b]), m),
                (Simplex::of(&[b, c]), m),
                (Simplex::of(&[a, c]), m),
            ]
        };
        GeneratedStage {
            complex,
            stability,
        }
    }
    from_generator(stages, Arc::new(stage))
}

/// Two paths on even and odd vertices, growing by one edge per stage.
/// With `merge_at = Some(s)` the edge `(0, 1)` appears at stage `s`.
pub fn two_paths_exhaustion(stages: usize, merge_at: Option<usize>) -> Exhaustion {
    let stage = move |n: usize| -> GeneratedStage {
        let top = n as u32;
        let mut facets = vec![Simplex::of(&[0]), Simplex::of(&[1])];
        for k in 0..top {
            facets.push(Simplex::of(&[2 * k, 2 * k + 2]));
            facets.push(Simplex::of(&[2 * k + 1, 2 * k + 3]));
        }
        if merge_at.is_some_and(|s| n >= s) {
            facets.push(Simplex::of(&[0, 1]));
        }
        let complex = FiniteComplex::closure(facets);
        let late = merge_at.map_or(1, |s| s.max(1));
        let mut stability = Vec::new();
        if n == 0 {
            stability.push((Simplex::of(&[0]), late));
            stability.push((Simplex::of(&[1]), late));
        } else {
            stability.push((Simplex::of(&[2 * top]), n + 1));
            stability.push((Simplex::of(&[2 * top + 1]), n + 1));
            stability.push((Simplex::of(&[2 * top - 2, 2 * top]), n));
            stability.push((Simplex::of(&[2 * top - 1, 2 * top + 1]), n));
        }
        if merge_at == Some(n) {
            stability.push((Simplex::of(&[0, 1]), n));
        }
        GeneratedStage {
            complex,
            stability,
        }
    };
    from_generator(stages, Arc::new(stage))
}

fn from_generator(
    stages: usize,
    gen: Arc<dyn crate::complex::StageGenerator>,
) -> Exhaustion {
    let mut complexes = Vec::with_capacity(stages);
    let mut stability = BTreeMap::new();
    for n in 0..stages.max(1) {
        let g = gen.stage(n);
        complexes.push(g.complex);
        stability.extend(g.stability);
    }
    Exhaustion::with_generator(complexes, stability, gen).expect("fixture exhaustion is valid")
}

/// Collapse of the full 2-simplex onto vertex 0 of a point.
pub fn disk_to_point() -> SimplicialMap {
    SimplicialMap::new(disk(), point(), |_| VertexId(0)).expect("constant map is simplicial")
}

/// Hexagon wrapping twice around the triangle boundary.
pub fn hexagon_double_wrap() -> SimplicialMap {
    SimplicialMap::new(hexagon(), circle(), |v| VertexId(v.0 % 3)).expect("simplicial")
}

pub fn identity(k: &FiniteComplex) -> SimplicialMap {
    SimplicialMap::new(k.clone(), k.clone(), |v| v).expect("identity is simplicial")
}

/// The line with a shrinking gap around 0: `(-n, -1/n) U (1/n, n)`.
pub fn punctured_line() -> Schema {
    Schema::parse("STAGE n >= 2: (-n, -1/n) U (1/n, n)").expect("fixture parses")
}

/// Two interleaved zigzag strips in the plane, copied along the x-axis.
pub fn zigzag_pair() -> Schema {
    Schema::parse(
        "PLANE n >= 0: COPIES |i| <= n STEP (2, 0)\n\
         SEG (0, 0) (1, -1)\n\
         SEG (1, -1) (2, 0)\n\
         SEG (0, -1/2) (1, -3/2)\n\
         SEG (1, -3/2) (2, -1/2)",
    )
    .expect("fixture parses")
}

/// Two triangle boundaries sharing the edge `0 1`.
pub fn two_circles_along_edge() -> GlueSpec {
    GlueSpec {
        parts: vec![circle(), circle()],
        identifications: vec![Identification {
            from: 0,
            to: 1,
            pairs: vec![(VertexId(0), VertexId(0)), (VertexId(1), VertexId(1))],
        }],
    }
}
