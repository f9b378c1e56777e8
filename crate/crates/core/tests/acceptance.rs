//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

use std::collections::{BTreeSet, HashMap};
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use ldtopo::complex::{
    glue_complexes, shrink_exhaustion, Exhaustion, FiniteComplex, GlueSpec, Identification, Simplex, VertexId,
};
use ldtopo::connect::{
    definability_of_union, ld_connected, op_connected, ps_witness_check, witness_search, Definability, Schema,
    Side, WitnessMode,
};
use ldtopo::covering::{finite_cover, lazy_cover, verify_covering, verify_subgroup_image, Rewriting};
use ldtopo::fixtures as fx;
use ldtopo::group::{edge_path_presentation, hurewicz_h1_check, pi2_via_hurewicz, whitehead_check, Pi2, WhiteheadVerdict, Word};
use ldtopo::homology::{
    colimit_homology, excision_check, homology, induced_map, long_exact_sequence, FgAbGroup, HomologyError,
};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every comparison below is exact; nothing is compared up to a tolerance.
const TOLERANCE: i128 = 0;
const SEED: u64 = 0x1d_7090;
const FUZZ_PAIRS: usize = 200;
const FUZZ_EXCISION: usize = 100;
const FUZZ_HUREWICZ: usize = 200;
const FUZZ_SCHEMAS: usize = 500;
const FUZZ_EXHAUSTIONS: usize = 200;
const FUZZ_GLUE: usize = 100;
const COSET_BUDGET: usize = 10_000;
const LAZY_CIRCLE_RADIUS: usize = 10;
const LAZY_TORUS_RADIUS: usize = 3;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn v0(k: &FiniteComplex) -> VertexId {
    k.vertices().next().expect("nonempty complex")
}

// ---------------------------------------------------------------------------
// Brute-force homology over i128, written independently of the library's
// chain complexes and Smith normal form.

fn simplices_of_dim(k: &FiniteComplex, d: usize) -> Vec<Vec<u32>> {
    k.iter()
        .filter(|s| s.dim() == d)
        .map(|s| s.vertices().iter().map(|v| v.0).collect())
        .collect()
}

/// Matrix of `∂_d : C_d → C_{d-1}`, rows indexed by `(d-1)`-simplices.
fn boundary(k: &FiniteComplex, d: usize) -> Vec<Vec<i128>> {
    let cols = simplices_of_dim(k, d);
    if d == 0 {
        return Vec::new();
    }
    let rows = simplices_of_dim(k, d - 1);
    let index: HashMap<&Vec<u32>, usize> = rows.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, s) in cols.iter().enumerate() {
        let mut s = s.clone();
        s.sort_unstable();
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m[index[&face]][j] += sign;
        }
    }
    m
}

/// Nonzero invariant factors by repeated pivoting on the smallest entry.
fn invariant_factors(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            let q = m[i][t] / m[t][t];
            if q != 0 {
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
            }
            dirty |= m[i][t] != 0;
        }
        for j in t + 1..cols {
            let q = m[t][j] / m[t][t];
            if q != 0 {
                for i in t..rows {
                    m[i][j] -= q * m[i][t];
                }
            }
            dirty |= m[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // The pivot must divide the rest; otherwise fold an offending row in.
        let p = m[t][t];
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0)) {
            for j in t..cols {
                m[t][j] += m[i][j];
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

fn oracle_homology(k: &FiniteComplex, n: usize) -> (usize, Vec<i128>) {
    let cn = simplices_of_dim(k, n).len();
    let rank_out = invariant_factors(boundary(k, n)).len();
    let incoming = invariant_factors(boundary(k, n + 1));
    let torsion = incoming.iter().copied().filter(|&f| f > 1).collect();
    (cn - rank_out - incoming.len(), torsion)
}

fn as_pair(g: &FgAbGroup) -> (usize, Vec<i128>) {
    (g.rank, g.torsion.iter().map(|t| t.to_string().parse().expect("small torsion")).collect())
}

fn agrees_with_oracle(k: &FiniteComplex, n: usize) -> bool {
    let (r1, t1) = as_pair(&homology(k, n));
    let (r2, t2) = oracle_homology(k, n);
    r1 == r2 && t1.len() == t2.len() && t1.iter().zip(&t2).all(|(a, b)| (a - b).abs() <= TOLERANCE)
}

// ---------------------------------------------------------------------------
// Random inputs.

fn random_complex(r: &mut ChaCha8Rng, max_vertices: u32, max_dim: usize, max_facets: usize, connected: bool) -> FiniteComplex {
    let nv = r.gen_range(3..=max_vertices);
    let count = r.gen_range(1..=max_facets);
    let mut gens: Vec<Simplex> = (0..count)
        .map(|_| {
            let size = r.gen_range(1..=max_dim + 1).min(nv as usize);
            let vs: Vec<u32> = sample(r, nv as usize, size).iter().map(|v| v as u32).collect();
            Simplex::of(&vs)
        })
        .collect();
    if connected {
        gens.extend((0..nv - 1).map(|v| Simplex::of(&[v, v + 1])));
    }
    FiniteComplex::closure(gens)
}

fn random_subcomplex(r: &mut ChaCha8Rng, k: &FiniteComplex) -> FiniteComplex {
    let mut picked: Vec<Simplex> = k.iter().filter(|_| r.gen_bool(0.3)).cloned().collect();
    picked.push(Simplex::vertex(v0(k)));
    FiniteComplex::closure(picked)
}

fn open_star(k: &FiniteComplex, s: &Simplex) -> BTreeSet<Simplex> {
    let mut u: BTreeSet<Simplex> = k.cofaces(s).cloned().collect();
    u.insert(s.clone());
    u
}

fn half(num: i64) -> String {
    if num % 2 == 0 {
        format!("{}", num / 2)
    } else {
        format!("{num}/2")
    }
}

fn end_term(r: &mut ChaCha8Rng, c: i64, grows_down: bool) -> String {
    let a = [0, 0, 1, 2][r.gen_range(0..4)];
    let b = [0, 0, 1][r.gen_range(0..3)];
    let (lin, inv) = if grows_down { ("-", "+") } else { ("+", "-") };
    let mut s = half(c);
    if r.gen_bool(0.1) {
        s.push_str(" + eps");
    }
    if a > 0 {
        s.push_str(&format!(" {lin} {a}*n"));
    }
    if b > 0 {
        s.push_str(&format!(" {inv} {b}/n"));
    }
    s
}

/// Monotone line schema: lower ends only move down, upper ends only up.
fn random_line_schema(r: &mut ChaCha8Rng) -> String {
    let pieces = r.gen_range(1..=3);
    let parts: Vec<String> = (0..pieces)
        .map(|_| {
            let lo = r.gen_range(-8..=6);
            let hi = lo + r.gen_range(3..=6);
            let lower = if r.gen_bool(0.05) { "-inf".to_string() } else { end_term(r, lo, true) };
            let upper = if r.gen_bool(0.05) { "+inf".to_string() } else { end_term(r, hi, false) };
            let open = if lower == "-inf" || r.gen_bool(0.5) { "(" } else { "[" };
            let close = if upper == "+inf" || r.gen_bool(0.5) { ")" } else { "]" };
            format!("{open}{lower}, {upper}{close}")
        })
        .collect();
    format!("STAGE n >= 1: {}", parts.join(" U "))
}

fn random_plane_schema(r: &mut ChaCha8Rng) -> String {
    let sx = r.gen_range(1..=3);
    let sy = [0, 0, 1][r.gen_range(0..3)];
    let mut text = format!("PLANE n >= 0: COPIES |i| <= n STEP ({sx}, {sy})\n");
    for _ in 0..r.gen_range(1..=3) {
        let (x1, y1) = (r.gen_range(-2..=2), r.gen_range(-2..=2));
        let (mut x2, y2) = (r.gen_range(-2..=2), r.gen_range(-2..=2));
        if (x1, y1) == (x2, y2) {
            x2 += 1;
        }
        text.push_str(&format!("SEG ({x1}, {y1}) ({x2}, {y2})\n"));
    }
    text
}

fn random_exhaustion(r: &mut ChaCha8Rng) -> Exhaustion {
    let count = r.gen_range(2..=6);
    let mut nv = 3u32;
    let mut current = random_complex(r, 4, 2, 3, false);
    let mut stages = vec![current.clone()];
    for _ in 1..count {
        nv += r.gen_range(0..=3);
        let new: Vec<Simplex> = (0..r.gen_range(1..=3))
            .map(|_| {
                let size = r.gen_range(1..=3usize).min(nv as usize);
                let vs: Vec<u32> = sample(r, nv as usize, size).iter().map(|v| v as u32).collect();
                Simplex::of(&vs)
            })
            .collect();
        current = current.union(&FiniteComplex::closure(new));
        stages.push(current.clone());
    }
    let last = stages.len() - 1;
    let stability = current.iter().map(|s| (s.clone(), last)).collect();
    Exhaustion::build(stages, stability).expect("nested stages")
}

fn random_glue_spec(r: &mut ChaCha8Rng) -> GlueSpec {
    let parts: Vec<FiniteComplex> = (0..r.gen_range(2..=4)).map(|_| random_complex(r, 6, 2, 4, false)).collect();
    // Each part is identified with one earlier part, so the pattern of
    // identifications is a tree and no part has two vertices merged.
    let identifications = (1..parts.len())
        .map(|to| {
            let from = r.gen_range(0..to);
            // Identify a simplex of one part with a simplex of the other, so
            // the induced subcomplexes on both vertex sets agree.
            let tau: Vec<&Simplex> = parts[to].iter().collect();
            let tau = tau[r.gen_range(0..tau.len())];
            let sigma: Vec<&Simplex> = parts[from].iter().filter(|s| s.dim() == tau.dim()).collect();
            let pairs = match sigma.len() {
                0 => Vec::new(),
                n if r.gen_bool(0.9) => {
                    let sigma = sigma[r.gen_range(0..n)];
                    sigma.vertices().iter().copied().zip(tau.vertices().iter().copied()).collect()
                }
                _ => Vec::new(),
            };
            Identification {
                from,
                to,
                pairs,
            }
        })
        .collect();
    GlueSpec {
        parts,
        identifications,
    }
}

// ---------------------------------------------------------------------------
// Criteria.

fn homology_fixtures() -> Check {
    let cases: [(&str, FiniteComplex, Vec<(usize, usize, Vec<i128>)>); 5] = [
        ("circle", fx::circle(), vec![(0, 1, vec![]), (1, 1, vec![])]),
        ("sphere", fx::sphere(), vec![(2, 1, vec![])]),
        ("torus", fx::torus(), vec![(1, 2, vec![]), (2, 1, vec![])]),
        ("projective plane", fx::projective_plane(), vec![(1, 0, vec![2])]),
        ("Klein bottle", fx::klein_bottle(), vec![(1, 1, vec![2])]),
    ];
    for (name, k, expected) in cases {
        for n in 0..=3 {
            ensure!(agrees_with_oracle(&k, n), "{name}: H_{n} disagrees with the oracle");
        }
        for (n, rank, torsion) in expected {
            ensure!(oracle_homology(&k, n) == (rank, torsion.clone()), "{name}: oracle H_{n}");
            ensure!(as_pair(&homology(&k, n)) == (rank, torsion), "{name}: H_{n}");
        }
    }
    ensure!(fx::torus().count(0) == 7, "torus has 7 vertices");
    ensure!(fx::projective_plane().count(0) == 6, "projective plane has 6 vertices");
    Ok(())
}

fn colimits() -> Check {
    let line = fx::line_exhaustion(8);
    let c = colimit_homology(&line, 0, 7).map_err(|e| e.to_string())?;
    ensure!(c.group == FgAbGroup::free(1), "line H_0 colimit is {:?}", c.group);
    ensure!(c.stable_from.is_some_and(|s| s <= 2), "line stable from {:?}", c.stable_from);
    ensure!(c.maps.iter().all(|m| m.is_isomorphism()), "line maps are isomorphisms");
    ensure!(c.stages.iter().skip(2).all(|g| *g == FgAbGroup::free(1)), "line stages");
    let chain = fx::circle_chain_exhaustion(10);
    let c = colimit_homology(&chain, 1, 9).map_err(|e| e.to_string())?;
    for (s, g) in c.stages.iter().enumerate() {
        ensure!(*g == FgAbGroup::free(s), "circle chain stage {s} has H_1 {g:?}");
    }
    ensure!(c.maps.iter().all(|m| m.is_injective()), "circle chain maps are injective");
    Ok(())
}

fn exactness() -> Check {
    let les = long_exact_sequence(&fx::disk(), &fx::circle()).map_err(|e| e.to_string())?;
    ensure!(les.is_exact(), "(D2, S1) not exact");
    let b = les.degree(2).and_then(|d| d.boundary.as_ref()).ok_or("missing boundary map")?;
    ensure!(b.source == FgAbGroup::free(1) && b.target == FgAbGroup::free(1), "boundary map groups");
    ensure!(b.is_isomorphism(), "boundary map H2(D2,S1) -> H1(S1) is not an isomorphism");
    let les = long_exact_sequence(&fx::cylinder(), &fx::cylinder_boundary()).map_err(|e| e.to_string())?;
    ensure!(les.is_exact(), "cylinder pair not exact");
    let mut r = rng(3);
    for i in 0..FUZZ_PAIRS {
        let k = random_complex(&mut r, 12, 3, 8, false);
        let a = random_subcomplex(&mut r, &k);
        let les = long_exact_sequence(&k, &a).map_err(|e| e.to_string())?;
        ensure!(les.is_exact(), "fuzzed pair {i} not exact");
    }
    Ok(())
}

fn excision() -> Check {
    let u: BTreeSet<Simplex> = fx::ringed_disk_excised().into_iter().collect();
    let ok = excision_check(&fx::ringed_disk(), &fx::ringed_disk_collar(), &u).map_err(|e| e.to_string())?;
    ensure!(ok, "ringed disk excision failed");
    let mut r = rng(4);
    let mut valid = 0;
    while valid < FUZZ_EXCISION {
        let k = random_complex(&mut r, 12, 3, 8, false);
        let all: Vec<&Simplex> = k.iter().collect();
        let sigma = all[r.gen_range(0..all.len())].clone();
        let u = open_star(&k, &sigma);
        let closure: BTreeSet<Simplex> = u.iter().flat_map(|s| s.faces()).collect();
        let mut gens: Vec<Simplex> = closure.iter().flat_map(|f| open_star(&k, f)).collect();
        gens.extend(random_subcomplex(&mut r, &k).iter().cloned());
        let a = FiniteComplex::closure(gens);
        ensure!(excision_check(&k, &a, &u) == Ok(true), "valid triple {valid} rejected");
        valid += 1;
    }
    let mut invalid = 0;
    while invalid < FUZZ_EXCISION {
        let k = random_complex(&mut r, 12, 3, 8, false);
        let non_maximal: Vec<&Simplex> = k.iter().filter(|s| k.cofaces(s).any(|t| t != *s)).collect();
        if non_maximal.is_empty() {
            continue;
        }
        let sigma = non_maximal[r.gen_range(0..non_maximal.len())].clone();
        let (a, u) = if invalid % 2 == 0 {
            // U misses the cofaces of its simplex.
            (k.clone(), BTreeSet::from([sigma]))
        } else {
            // A is only the closed star, which misses cofaces of its faces.
            let u = open_star(&k, &sigma);
            let a = FiniteComplex::closure(u.iter().cloned());
            let closure: BTreeSet<Simplex> = u.iter().flat_map(|s| s.faces()).collect();
            if closure.iter().all(|f| k.cofaces(f).all(|t| a.contains(t))) {
                continue;
            }
            (a, u)
        };
        ensure!(
            matches!(excision_check(&k, &a, &u), Err(HomologyError::PreconditionViolated { .. })),
            "invalid triple {invalid} accepted"
        );
        invalid += 1;
    }
    Ok(())
}

fn hurewicz() -> Check {
    let fixtures = [
        fx::point(),
        fx::interval(),
        fx::circle(),
        fx::disk(),
        fx::sphere(),
        fx::torus(),
        fx::projective_plane(),
        fx::klein_bottle(),
        fx::wedge_of_circles(),
        fx::cylinder(),
        fx::hexagon(),
        fx::ringed_disk(),
    ];
    let mut r = rng(5);
    let fuzzed: Vec<FiniteComplex> = (0..FUZZ_HUREWICZ).map(|_| random_complex(&mut r, 10, 3, 8, true)).collect();
    for (i, k) in fixtures.iter().chain(&fuzzed).enumerate() {
        let h = hurewicz_h1_check(k, v0(k)).map_err(|e| e.to_string())?;
        ensure!(h.abelianized_pi1 == h.h1 && h.agrees, "complex {i}: pi1^ab {:?} vs H1 {:?}", h.abelianized_pi1, h.h1);
    }
    let s2 = fx::sphere();
    let pi2 = pi2_via_hurewicz(&s2, v0(&s2), COSET_BUDGET).map_err(|e| e.to_string())?;
    ensure!(pi2 == Pi2::Certified(FgAbGroup::free(1)), "pi2(S2) = {pi2:?}");
    Ok(())
}

fn words(k: &FiniteComplex, texts: &[&str]) -> Result<Vec<Word>, String> {
    let ep = edge_path_presentation(k, v0(k)).map_err(|e| e.to_string())?;
    texts.iter().map(|t| ep.presentation.parse_word(t).map_err(|e| e.to_string())).collect()
}

fn covers() -> Check {
    let circle = fx::circle();
    let sub = words(&circle, &["a a"])?;
    let c = finite_cover(&circle, v0(&circle), &sub, COSET_BUDGET).map_err(|e| e.to_string())?;
    ensure!(c.sheet_count() == Some(2), "double cover has {:?} sheets", c.sheet_count());
    ensure!(verify_covering(&c).verified, "double cover not verified");
    ensure!(verify_subgroup_image(&c, &sub, COSET_BUDGET).verified, "double cover subgroup image");
    let chi = c.total_complex().euler_characteristic();
    ensure!(chi == 2 * circle.euler_characteristic(), "euler characteristic {chi}");

    // Kernel of F(a, b) -> Z/3 sending a to 0 and b to 1. Schreier
    // transversal 1, b, b^2 gives free generators a, b a B, b b a B B, b b b:
    // rank 1 + 3 (2 - 1) = 4, and the cover of a graph with Euler
    // characteristic -1 has 3 (-1) = -3.
    let wedge = fx::wedge_of_circles();
    let sub = words(&wedge, &["a", "b a B", "b b a B B", "b b b"])?;
    let c = finite_cover(&wedge, v0(&wedge), &sub, COSET_BUDGET).map_err(|e| e.to_string())?;
    ensure!(c.sheet_count() == Some(3), "index-3 cover has {:?} sheets", c.sheet_count());
    ensure!(c.total_complex().euler_characteristic() == -3, "index-3 cover euler characteristic");
    ensure!(homology(c.total_complex(), 1) == FgAbGroup::free(4), "index-3 cover H1");
    ensure!(verify_covering(&c).verified, "index-3 cover not verified");
    ensure!(verify_subgroup_image(&c, &sub, COSET_BUDGET).verified, "index-3 cover subgroup image");

    let c = lazy_cover(&circle, v0(&circle), &[], &Rewriting::Free, LAZY_CIRCLE_RADIUS).map_err(|e| e.to_string())?;
    let path = c.total_complex();
    let degrees = path.adjacency();
    ensure!(path.is_connected() && path.euler_characteristic() == 1, "lazy circle cover is not a tree");
    ensure!(degrees.values().all(|n| n.len() <= 2) && path.dim() == Some(1), "lazy circle cover is not a path");
    ensure!(homology(path, 1).is_trivial(), "lazy circle cover H1");

    let torus = fx::torus();
    let c = lazy_cover(&torus, v0(&torus), &[], &Rewriting::Abelian, LAZY_TORUS_RADIUS).map_err(|e| e.to_string())?;
    let interior = c.interior();
    ensure!(!interior.is_empty(), "torus cover interior is empty");
    ensure!(homology(&interior, 1).is_trivial(), "torus cover interior H1 = {:?}", homology(&interior, 1));
    Ok(())
}

fn connectedness() -> Check {
    let s = fx::punctured_line();
    let ld = ld_connected(&s).map_err(|e| e.to_string())?;
    ensure!(!ld.connected && ld.component_count == Some(2), "punctured line: {ld:?}");
    let ps = witness_search(&s, WitnessMode::Ps, 1).map_err(|e| e.to_string())?;
    ensure!(ps.as_ref().map(|w| w.to_string()).as_deref() == Some("(0,+inf)"), "PS witness {ps:?}");
    for k in 1..=3 {
        ensure!(witness_search(&s, WitnessMode::E, k).map_err(|e| e.to_string())?.is_none(), "E witness at k={k}");
    }
    match definability_of_union(&s, 1).map_err(|e| e.to_string())? {
        Definability::NotDefinable(obs) => ensure!(
            obs.iter().any(|o| o.side == Side::Lower && o.point.to_string() == "eps"),
            "no eps obstruction"
        ),
        Definability::Definable(i) => return Err(format!("positive component definable as {i}")),
    }

    let z = fx::zigzag_pair();
    let ld = ld_connected(&z).map_err(|e| e.to_string())?;
    ensure!(!ld.connected && ld.component_count == Some(2), "zigzag pair: {ld:?}");
    for k in 1..=2 {
        ensure!(witness_search(&z, WitnessMode::Ps, k).map_err(|e| e.to_string())?.is_none(), "zigzag PS witness at k={k}");
    }

    let mut r = rng(7);
    // Disconnected unions, PS witnesses, E witnesses, disconnected planes.
    let mut seen = [0usize; 4];
    for i in 0..FUZZ_SCHEMAS {
        let text = if i % 6 == 5 { random_plane_schema(&mut r) } else { random_line_schema(&mut r) };
        let s = Schema::parse(&text).map_err(|e| format!("{text}: {e}"))?;
        let ld = ld_connected(&s).map_err(|e| format!("{text}: {e}"))?;
        let op = op_connected(&s).map_err(|e| format!("{text}: {e}"))?;
        ensure!(ld.connected == op.connected, "op and ld disagree on\n{text}");
        let ps = witness_search(&s, WitnessMode::Ps, 1).map_err(|e| format!("{text}: {e}"))?;
        let e = witness_search(&s, WitnessMode::E, 1).map_err(|e| format!("{text}: {e}"))?;
        if let Some(w) = &e {
            ensure!(ps_witness_check(&s, w) == Ok(true), "E witness {w} is not a PS witness for\n{text}");
        }
        if let Some(w) = &ps {
            ensure!(!ld.connected, "PS witness {w} for a connected union\n{text}");
        }
        ensure!(!ld.connected || ps.is_none(), "connected but PS witness found\n{text}");
        seen[0] += usize::from(!ld.connected);
        seen[1] += usize::from(ps.is_some());
        seen[2] += usize::from(e.is_some());
        seen[3] += usize::from(!ld.connected && matches!(s, Schema::Plane(_)));
    }
    ensure!(seen.iter().all(|&c| c > 0), "corpus lacks a case: {seen:?}");
    Ok(())
}

fn shrinking_cover() -> Check {
    let mut r = rng(8);
    for i in 0..FUZZ_EXHAUSTIONS {
        let x = random_exhaustion(&mut r);
        let pieces = shrink_exhaustion(&x);
        for s in x.last().iter() {
            let member: Vec<usize> = (0..pieces.len()).filter(|&n| pieces[n].contains(s)).collect();
            ensure!(!member.is_empty(), "exhaustion {i}: {s:?} uncovered");
            ensure!(
                member.iter().all(|n| member.iter().all(|m| n.abs_diff(*m) < 2)),
                "exhaustion {i}: {s:?} lies in pieces {member:?}"
            );
        }
    }
    Ok(())
}

fn gluing() -> Check {
    let g = glue_complexes(&fx::two_circles_along_edge()).map_err(|e| e.to_string())?;
    // Four vertices and five edges.
    ensure!(g.complex.count(0) == 4 && g.complex.count(1) == 5, "glued counts");
    ensure!(g.complex.euler_characteristic() == -1, "glued euler characteristic");
    ensure!(oracle_homology(&g.complex, 1) == (2, vec![]), "oracle H1 of glued circles");
    ensure!(homology(&g.complex, 1) == FgAbGroup::free(2), "glued H1");
    let mut r = rng(9);
    for i in 0..FUZZ_GLUE {
        let spec = random_glue_spec(&mut r);
        let g = glue_complexes(&spec).map_err(|e| e.to_string())?;
        let mut covered = BTreeSet::new();
        for (p, part) in spec.parts.iter().enumerate() {
            let image: BTreeSet<Simplex> = part.iter().map(|s| g.image_of(p, s)).collect();
            ensure!(image.len() == part.len(), "glue input {i}: part {p} not embedded");
            let sub = FiniteComplex::closure(image.iter().cloned());
            ensure!(sub.len() == image.len(), "glue input {i}: image of part {p} not a subcomplex");
            for n in 0..=part.dim().unwrap_or(0) {
                ensure!(homology(&sub, n) == homology(part, n), "glue input {i}: part {p} H_{n} changed");
            }
            covered.extend(image);
        }
        ensure!(covered.len() == g.complex.len(), "glue input {i}: glued complex has extra simplices");
    }
    Ok(())
}

fn whitehead() -> Check {
    let f = fx::disk_to_point();
    let v = whitehead_check(&f, v0(f.source()), COSET_BUDGET).map_err(|e| e.to_string())?;
    ensure!(v == WhiteheadVerdict::EquivalenceCertified, "disk to point: {v:?}");
    let f = fx::hexagon_double_wrap();
    let v = whitehead_check(&f, v0(f.source()), COSET_BUDGET).map_err(|e| e.to_string())?;
    ensure!(v == WhiteheadVerdict::NotEquivalence { degree: 1 }, "double wrap: {v:?}");
    let h1 = induced_map(&f, 1).map_err(|e| e.to_string())?;
    ensure!(h1.is_multiplication_by(2), "double wrap on H1 is {:?}", h1.matrix);
    let f = fx::identity(&fx::torus());
    let v = whitehead_check(&f, v0(f.source()), COSET_BUDGET).map_err(|e| e.to_string())?;
    ensure!(v == WhiteheadVerdict::Undetermined, "torus identity: {v:?}");
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("homology fixtures against a brute-force oracle", homology_fixtures),
        ("colimit homology of exhaustions", colimits),
        ("long exact sequence of a pair", exactness),
        ("excision", excision),
        ("Hurewicz comparison", hurewicz),
        ("covering complexes", covers),
        ("connectedness notions and witnesses", connectedness),
        ("shrinking cover", shrinking_cover),
        ("gluing", gluing),
        ("Whitehead test", whitehead),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
