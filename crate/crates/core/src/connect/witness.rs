use std::fmt;

use rayon::prelude::*;

use super::field::FieldElem;
use super::interval::{cmp_lower, cmp_upper, joins, Endpoint, Interval, IntervalSet, SemilinearSet};
use super::ld::{line_components, ComponentDescription};
use super::plane::{ConvexRegion, HalfPlane, PlaneSchema, RegionClassifier};
use super::schema::{LineSchema, Schema, StageTerm};
use super::ConnectError;

/// A candidate set separating the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Line(SemilinearSet),
    Plane(ConvexRegion),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Line(s) => write!(f, "{s}"),
            Witness::Plane(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    /// Any definable set of the ambient space.
    Ps,
    /// Definable sets contained in the union.
    E,
}

/// Components of a line schema frozen at a stage where their position
/// relative to every constant in `constants` no longer changes.
struct Frozen {
    stage: SemilinearSet,
    components: Vec<Interval<FieldElem>>,
}

fn freeze(s: &LineSchema, constants: &[FieldElem]) -> Result<Frozen, ConnectError> {
    let ld = line_components(s)?;
    let n = ld.stable_from.max(s.stable_stage(constants)?);
    let components = ld
        .components
        .iter()
        .map(|c| match c {
            ComponentDescription::Interval(i) => i.map(|t| t.eval(n)),
            ComponentDescription::Periodic { .. } => unreachable!("line schema"),
        })
        .collect();
    Ok(Frozen {
        stage: s.stage(n),
        components,
    })
}

/// True when each component lies inside or outside `u`, with at least one
/// of each.
fn separates<T: Ord + Clone>(components: &[Interval<T>], u: &IntervalSet<T>) -> bool {
    let mut inside = false;
    let mut outside = false;
    for c in components {
        if u.contains_interval(c) {
            inside = true;
        } else if !u.meets_interval(c) {
            outside = true;
        } else {
            return false;
        }
    }
    inside && outside
}

fn endpoints(u: &SemilinearSet) -> Vec<FieldElem> {
    u.pieces()
        .iter()
        .flat_map(|p| [p.lower.value(), p.upper.value()])
        .flatten()
        .cloned()
        .collect()
}

/// `U ∩ G` is a nonempty proper clopen subset of the union `G`, i.e. a
/// nonempty proper union of its components.
pub fn ps_witness_check(s: &Schema, u: &Witness) -> Result<bool, ConnectError> {
    match (s, u) {
        (Schema::Line(l), Witness::Line(u)) => {
            let f = freeze(l, &endpoints(u))?;
            Ok(separates(&f.components, u))
        }
        (Schema::Plane(p), Witness::Plane(r)) => Ok(p.classify(r)?.is_some_and(|(i, o)| i > 0 && o > 0)),
        _ => Err(ConnectError::DimensionMismatch),
    }
}

/// As [`ps_witness_check`], and additionally `U ⊆ G`.
pub fn e_witness_check(s: &Schema, u: &Witness) -> Result<bool, ConnectError> {
    match (s, u) {
        (Schema::Line(l), Witness::Line(u)) => {
            let f = freeze(l, &endpoints(u))?;
            Ok(f.stage.contains_set(u) && separates(&f.components, u))
        }
        (Schema::Plane(_), Witness::Plane(r)) => {
            if !r.is_feasible() {
                return Ok(false);
            }
            if r.has_interior() {
                // A region with interior is never covered by segments.
                return Ok(false);
            }
            Err(ConnectError::Unsupported(
                "containment of lower-dimensional regions in a union of segments".into(),
            ))
        }
        _ => Err(ConnectError::DimensionMismatch),
    }
}

/// Endpoints offered to the line search: ±∞, the limits `b` of the
/// endpoint terms, 0, `x·ε` and `x/ε` for each nonzero limit `x`, and
/// `±ε`, `±1/ε`.
pub fn line_menu(s: &LineSchema) -> Vec<FieldElem> {
    let eps = FieldElem::eps();
    let inv = eps.recip();
    let mut base = s.limit_constants();
    base.push(FieldElem::zero());
    let mut out = base.clone();
    for x in base.iter().filter(|x| !x.is_zero()) {
        out.push(x * &eps);
        out.push(x * &inv);
    }
    for x in [&eps, &inv] {
        out.push(x.clone());
        out.push(-x);
    }
    out.sort();
    out.dedup();
    out
}

/// Candidate intervals over menu ranks in canonical order.
fn rank_intervals(m: usize) -> Vec<Interval<usize>> {
    let mut lowers = vec![Endpoint::NegInf];
    let mut uppers = Vec::new();
    for i in 0..m {
        for closed in [true, false] {
            lowers.push(Endpoint::At { value: i, closed });
            uppers.push(Endpoint::At { value: i, closed });
        }
    }
    uppers.push(Endpoint::PosInf);
    let mut out = Vec::new();
    for lo in &lowers {
        for hi in &uppers {
            let i = Interval::new(lo.clone(), hi.clone());
            if !i.is_empty() {
                out.push(i);
            }
        }
    }
    out.sort_by(|a, b| cmp_lower(&a.lower, &b.lower).then_with(|| cmp_upper(&a.upper, &b.upper)));
    out
}

/// Disjoint and not adjacent, so that both stay pieces of their union.
fn separated(a: &Interval<usize>, b: &Interval<usize>) -> bool {
    let (a, b) = if cmp_lower(&a.lower, &b.lower) == std::cmp::Ordering::Greater { (b, a) } else { (a, b) };
    !joins(&a.upper, &b.lower)
}

/// Extends `prefix` by later candidates separated from it, up to `k` pieces and
/// returns the first tuple accepted by `accept`.
fn search_tuples(
    cands: &[Interval<usize>],
    prefix: &mut Vec<usize>,
    size: usize,
    accept: &(impl Fn(&[usize]) -> bool + Sync),
) -> Option<Vec<usize>> {
    if prefix.len() == size {
        return accept(prefix).then(|| prefix.clone());
    }
    let from = prefix.last().map_or(0, |&i| i + 1);
    for j in from..cands.len() {
        if prefix.iter().any(|&i| !separated(&cands[i], &cands[j])) {
            continue;
        }
        prefix.push(j);
        if let Some(found) = search_tuples(cands, prefix, size, accept) {
            return Some(found);
        }
        prefix.pop();
    }
    None
}

fn line_search(s: &LineSchema, mode: WitnessMode, k: usize) -> Result<Option<SemilinearSet>, ConnectError> {
    let menu = line_menu(s);
    let f = freeze(s, &menu)?;
    // Rank every value so that candidate checks compare integers.
    let mut values = menu.clone();
    for c in f.components.iter().chain(f.stage.pieces()) {
        values.extend([c.lower.value(), c.upper.value()].into_iter().flatten().cloned());
    }
    values.sort();
    values.dedup();
    let rank = |x: &FieldElem| values.binary_search(x).expect("ranked value");
    let components: Vec<Interval<usize>> = f.components.iter().map(|c| c.map(rank)).collect();
    let stage: IntervalSet<usize> = f.stage.map(rank);
    let menu_ranks: Vec<usize> = menu.iter().map(rank).collect();
    let mut cands: Vec<Interval<usize>> = rank_intervals(menu_ranks.len())
        .into_iter()
        .map(|i| i.map(|&r| menu_ranks[r]))
        .collect();
    if mode == WitnessMode::E {
        cands.retain(|c| stage.contains_interval(c));
    }
    // Simpler intervals first: fewer finite endpoints, rational before
    // infinitesimal or infinite values, open before closed. Remaining ties
    // list intervals further to the right first.
    let weight = |e: &Endpoint<usize>| match e {
        Endpoint::At { value, closed } => (1, usize::from(values[*value].as_rational().is_none()), usize::from(*closed)),
        _ => (0, 0, 0),
    };
    cands.sort_by(|a, b| {
        let (x, y) = (weight(&a.lower), weight(&a.upper));
        let (u, v) = (weight(&b.lower), weight(&b.upper));
        (x.0 + y.0, x.1 + y.1, x.2 + y.2)
            .cmp(&(u.0 + v.0, u.1 + v.1, u.2 + v.2))
            .then_with(|| cmp_lower(&b.lower, &a.lower))
            .then_with(|| cmp_upper(&b.upper, &a.upper))
    });
    let accept = |ix: &[usize]| {
        let u = IntervalSet::new(ix.iter().map(|&i| cands[i].clone()));
        separates(&components, &u)
    };
    for size in 1..=k {
        let found = (0..cands.len()).into_par_iter().find_map_first(|first| {
            let mut prefix = vec![first];
            search_tuples(&cands, &mut prefix, size, &accept)
        });
        if let Some(ix) = found {
            let u = IntervalSet::new(ix.iter().map(|&i| cands[i].map(|&r| values[r].clone())));
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Half-planes offered to the plane search: normals along the axes and
/// diagonals, offsets at the projections of base endpoints and their
/// midpoints, open or closed.
pub fn plane_menu(p: &PlaneSchema, strict_only: bool) -> Vec<HalfPlane> {
    let mut out = Vec::new();
    for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1), (-1, 0), (0, -1), (-1, -1), (-1, 1)] {
        let (a, b) = (FieldElem::from_int(a), FieldElem::from_int(b));
        for c in p.offsets((&a, &b)) {
            for strict in [true, false] {
                if strict_only && !strict {
                    continue;
                }
                out.push(HalfPlane {
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                    strict,
                });
            }
        }
    }
    out
}

fn plane_search(p: &PlaneSchema, mode: WitnessMode, k: usize) -> Result<Option<ConvexRegion>, ConnectError> {
    // Regions with interior never lie inside the union, and open menus
    // produce nothing else.
    if mode == WitnessMode::E {
        return Ok(None);
    }
    let mut menu = plane_menu(p, false);
    // A component with copies arbitrarily far along the step in both
    // directions fits in a convex region only if every constraint is
    // constant along the step, up to infinitesimals.
    if p.quotient_components().iter().all(|c| c.modulus > 0) {
        menu.retain(|h| h.linear(&p.step).is_infinitesimal());
    }
    let mut classifier = RegionClassifier::new(p, &menu);
    for size in 1..=k {
        let mut combos: Vec<Vec<usize>> = Vec::new();
        let mut cur = Vec::new();
        combinations(menu.len(), size, 0, &mut cur, &mut combos);
        for ix in combos {
            if let Some((i, o)) = classifier.classify(&ix)? {
                if i > 0 && o > 0 {
                    return Ok(Some(ConvexRegion {
                        constraints: ix.iter().map(|&i| menu[i].clone()).collect(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn combinations(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..n {
        cur.push(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Exhaustive search over candidates with at most `k` intervals (or `k`
/// half-planes). `None` means no witness exists within that grammar; the
/// first witness in canonical order is returned otherwise.
pub fn witness_search(s: &Schema, mode: WitnessMode, k: usize) -> Result<Option<Witness>, ConnectError> {
    match s {
        Schema::Line(l) => Ok(line_search(l, mode, k)?.map(Witness::Line)),
        Schema::Plane(p) => Ok(plane_search(p, mode, k)?.map(Witness::Plane)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// Why a component is not a single definable interval: along `side` its
/// stage endpoints `term` have no extremum in the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub side: Side,
    pub term: StageTerm,
    /// The interval with the limiting endpoints.
    pub candidate: Interval<FieldElem>,
    /// A point of `candidate` outside the union.
    pub point: FieldElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definability {
    Definable(Interval<FieldElem>),
    NotDefinable(Vec<Obstruction>),
}

/// For a lower endpoint term decreasing in `n`, a point of any interval
/// with lower end `lower` that contains the component but lies below every
/// stage endpoint.
fn escape_below(t: &StageTerm, lower: &Endpoint<FieldElem>) -> FieldElem {
    let eps = FieldElem::eps();
    if !t.a.is_zero() {
        // Linear growth: every stage endpoint lies above −K·n.
        match lower.value() {
            Some(x) => x + &t.a.abs(),
            None => {
                let k = &(&(&t.a.abs() + &t.b.abs()) + &t.c.abs()) + &FieldElem::one();
                -(&k / &eps)
            }
        }
    } else {
        // Endpoints b + c/n decrease to b without reaching it.
        let base = match lower.value() {
            Some(x) if x > &t.b => x.clone(),
            _ => t.b.clone(),
        };
        &base + &(&t.c.abs() * &eps)
    }
}

fn negate_term(t: &StageTerm) -> StageTerm {
    StageTerm::new(-&t.a, -&t.b, -&t.c)
}

fn negate_end(e: &Endpoint<FieldElem>) -> Endpoint<FieldElem> {
    match e {
        Endpoint::NegInf => Endpoint::PosInf,
        Endpoint::PosInf => Endpoint::NegInf,
        Endpoint::At { value, closed } => Endpoint::At {
            value: -value,
            closed: *closed,
        },
    }
}

impl Obstruction {
    /// A point in `candidate` but outside the union, valid whenever the
    /// candidate contains the component.
    pub fn point_outside(&self, candidate: &Interval<FieldElem>) -> FieldElem {
        match self.side {
            Side::Lower => escape_below(&self.term, &candidate.lower),
            Side::Upper => -escape_below(&negate_term(&self.term), &negate_end(&candidate.upper)),
        }
    }
}

/// Limit of a stage endpoint, when it is attained by a field element.
fn limit(e: &Endpoint<StageTerm>, infinite: Endpoint<FieldElem>) -> Endpoint<FieldElem> {
    match e {
        Endpoint::At { value, closed } if value.is_constant() => Endpoint::At {
            value: value.b.clone(),
            closed: *closed,
        },
        Endpoint::At { value, .. } if value.a.is_zero() => Endpoint::open(value.b.clone()),
        Endpoint::At { .. } => infinite,
        e => e.map(|_| unreachable!()),
    }
}

/// Decides whether component `index` (in increasing order) of a line
/// schema's union is a single interval over ℚ(ε).
pub fn definability_of_union(s: &Schema, index: usize) -> Result<Definability, ConnectError> {
    let Schema::Line(l) = s else {
        return Err(ConnectError::Unsupported("definability is decided for line schemas".into()));
    };
    let ld = line_components(l)?;
    let Some(ComponentDescription::Interval(c)) = ld.components.get(index) else {
        return Err(ConnectError::NoSuchComponent(index));
    };
    let candidate = Interval::new(limit(&c.lower, Endpoint::NegInf), limit(&c.upper, Endpoint::PosInf));
    let mut obstructions = Vec::new();
    for (side, e) in [(Side::Lower, &c.lower), (Side::Upper, &c.upper)] {
        if let Some(t) = e.value().filter(|t| !t.is_constant()) {
            let mut o = Obstruction {
                side,
                term: t.clone(),
                candidate: candidate.clone(),
                point: FieldElem::zero(),
            };
            o.point = o.point_outside(&candidate);
            obstructions.push(o);
        }
    }
    Ok(if obstructions.is_empty() {
        Definability::Definable(candidate)
    } else {
        Definability::NotDefinable(obstructions)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connect::schema::parse_semilinear;
    use crate::fixtures;

    fn line(u: &str) -> Witness {
        Witness::Line(parse_semilinear(u).unwrap())
    }

    #[test]
    fn ps_checks() {
        let g = fixtures::punctured_line();
        assert!(ps_witness_check(&g, &line("(0, +inf)")).unwrap());
        assert!(!ps_witness_check(&g, &line("(-inf, +inf)")).unwrap());
        assert!(!ps_witness_check(&g, &line("{}")).unwrap());
        let nested = Schema::parse("STAGE n >= 1: (-n, n)").unwrap();
        assert!(!ps_witness_check(&nested, &line("(0, +inf)")).unwrap());
    }

    #[test]
    fn e_checks() {
        let g = fixtures::punctured_line();
        assert!(!e_witness_check(&g, &line("(1/5, 5)")).unwrap());
        assert!(!e_witness_check(&g, &line("{}")).unwrap());
        assert!(!e_witness_check(&g, &line("(0, +inf)")).unwrap());
        // A union with a definable component has E-witnesses.
        let s = Schema::parse("STAGE n >= 1: (-n, -1) U [0, 1]").unwrap();
        assert!(e_witness_check(&s, &line("[0, 1]")).unwrap());
    }

    #[test]
    fn searches_on_punctured_line() {
        let g = fixtures::punctured_line();
        let w = witness_search(&g, WitnessMode::Ps, 1).unwrap().unwrap();
        assert_eq!(w.to_string(), "(0,+inf)");
        assert!(ps_witness_check(&g, &w).unwrap());
        assert_eq!(witness_search(&g, WitnessMode::E, 3).unwrap(), None);
    }

    #[test]
    fn definable_component_found_by_e_search() {
        let s = Schema::parse("STAGE n >= 1: (-n, -1) U [0, 1]").unwrap();
        let w = witness_search(&s, WitnessMode::E, 1).unwrap().unwrap();
        assert!(e_witness_check(&s, &w).unwrap());
        assert!(ps_witness_check(&s, &w).unwrap());
    }

    #[test]
    fn zigzag_has_no_small_ps_witness() {
        let z = fixtures::zigzag_pair();
        assert_eq!(witness_search(&z, WitnessMode::Ps, 1).unwrap(), None);
    }

    #[test]
    fn positive_half_is_not_definable() {
        let d = definability_of_union(&fixtures::punctured_line(), 1).unwrap();
        let Definability::NotDefinable(obs) = d else { panic!() };
        assert_eq!(obs[0].side, Side::Lower);
        assert_eq!(obs[0].point, FieldElem::eps());
        assert_eq!(obs.len(), 2);
    }

    #[test]
    fn stabilized_union_is_definable() {
        let s = Schema::parse("STAGE n >= 1: (-n, n)\nSTAGE n >= 3: (-3, 3)").unwrap();
        let d = definability_of_union(&s, 0).unwrap();
        assert_eq!(d, Definability::Definable(Interval::open(FieldElem::from_int(-3), FieldElem::from_int(3))));
        let s = Schema::parse("STAGE n >= 2: (1/n, 1)").unwrap();
        let Definability::NotDefinable(obs) = definability_of_union(&s, 0).unwrap() else { panic!() };
        assert_eq!(obs[0].point, FieldElem::eps());
        assert!(matches!(definability_of_union(&s, 4), Err(ConnectError::NoSuchComponent(4))));
    }

    #[test]
    fn escape_points_avoid_the_union() {
        let g = fixtures::punctured_line();
        let Definability::NotDefinable(obs) = definability_of_union(&g, 1).unwrap() else { panic!() };
        let upper = &obs[1];
        let huge = FieldElem::eps().recip();
        let cand = Interval::open(FieldElem::zero(), huge.clone());
        let x = upper.point_outside(&cand);
        assert!(cand.contains(&x));
        assert!(x > FieldElem::from_int(1_000_000));
    }
}
