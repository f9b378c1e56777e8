//! Periodic unions of plane segments.
//!
//! Stage `n` consists of the copies `S_f + i·v` of finitely many base
//! segments `S_f`, for `|i| ≤ a·n + b`. Whether copies `(f, i)` and
//! `(g, i + d)` meet depends only on `(f, g, d)`, so the union is the
//! ℤ-cover of a finite "quotient" graph with edge labels `d`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::eventual::{eventual_sign, eventual_sign_negative};
use super::expr::{parse_field, parse_nexpr};
use super::field::FieldElem;
use super::interval::{Endpoint, Interval};
use super::schema::{parse_bound, split_top, MAX_THRESHOLD};
use super::ConnectError;
use crate::dsu::DisjointSets;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: FieldElem,
    pub y: FieldElem,
}

impl Point {
    pub fn new(x: FieldElem, y: FieldElem) -> Self {
        Point { x, y }
    }

    fn translate(&self, v: &Point, k: i64) -> Point {
        let k = FieldElem::from_int(k);
        Point::new(&self.x + &(&v.x * &k), &self.y + &(&v.y * &k))
    }

    fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

/// A closed segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

fn cross(o: &Point, a: &Point, b: &Point) -> Ordering {
    let u = a.sub(o);
    let w = b.sub(o);
    (&(&u.x * &w.y) - &(&u.y * &w.x)).signum()
}

fn between(a: &FieldElem, b: &FieldElem, x: &FieldElem) -> bool {
    a.min(b) <= x && x <= a.max(b)
}

/// `r` lies on segment `pq`, given that the three points are collinear.
fn on_segment(p: &Point, q: &Point, r: &Point) -> bool {
    between(&p.x, &q.x, &r.x) && between(&p.y, &q.y, &r.y)
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Self {
        Segment { p, q }
    }

    fn translate(&self, v: &Point, k: i64) -> Segment {
        Segment::new(self.p.translate(v, k), self.q.translate(v, k))
    }

    pub fn intersects(&self, o: &Segment) -> bool {
        let d1 = cross(&o.p, &o.q, &self.p);
        let d2 = cross(&o.p, &o.q, &self.q);
        let d3 = cross(&self.p, &self.q, &o.p);
        let d4 = cross(&self.p, &self.q, &o.q);
        let proper = d1 != Ordering::Equal
            && d2 != Ordering::Equal
            && d3 != Ordering::Equal
            && d4 != Ordering::Equal
            && d1 != d2
            && d3 != d4;
        proper
            || (d1 == Ordering::Equal && on_segment(&o.p, &o.q, &self.p))
            || (d2 == Ordering::Equal && on_segment(&o.p, &o.q, &self.q))
            || (d3 == Ordering::Equal && on_segment(&self.p, &self.q, &o.p))
            || (d4 == Ordering::Equal && on_segment(&self.p, &self.q, &o.q))
    }
}

/// `a·x + b·y < c` when strict, `≤ c` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub strict: bool,
}

impl HalfPlane {
    /// `a·x + b·y − c` at `p`; the point is inside iff this is negative
    /// (or zero for a closed half-plane).
    fn value(&self, p: &Point) -> FieldElem {
        &(&(&self.a * &p.x) + &(&self.b * &p.y)) - &self.c
    }

    pub(crate) fn linear(&self, v: &Point) -> FieldElem {
        &(&self.a * &v.x) + &(&self.b * &v.y)
    }

    fn admits(&self, value: &FieldElem) -> bool {
        if self.strict {
            value.is_negative()
        } else {
            !value.is_positive()
        }
    }
}

/// Intersection of finitely many half-planes; the whole plane when empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ConvexRegion {
    pub constraints: Vec<HalfPlane>,
}

impl ConvexRegion {
    /// Decides nonemptiness by Fourier–Motzkin elimination, which is exact
    /// over any ordered field.
    pub fn is_feasible(&self) -> bool {
        let mut with_y = Vec::new();
        let mut x_only = Vec::new();
        for h in &self.constraints {
            if h.b.is_zero() {
                x_only.push((h.a.clone(), h.c.clone(), h.strict));
            } else {
                with_y.push(h);
            }
        }
        let (pos, neg): (Vec<&HalfPlane>, Vec<&HalfPlane>) = with_y.iter().partition(|h| h.b.is_positive());
        for p in &pos {
            for q in &neg {
                // Scale so the y coefficients are +1 and −1, then add.
                let sp = p.b.recip();
                let sq = (-&q.b).recip();
                x_only.push((
                    &(&p.a * &sp) + &(&q.a * &sq),
                    &(&p.c * &sp) + &(&q.c * &sq),
                    p.strict || q.strict,
                ));
            }
        }
        let mut range: Interval<FieldElem> = Interval::whole();
        for (a, c, strict) in x_only {
            let piece = match a.signum() {
                Ordering::Equal => {
                    let ok = if strict { c.is_positive() } else { !c.is_negative() };
                    if !ok {
                        return false;
                    }
                    continue;
                }
                Ordering::Greater => Interval::new(Endpoint::NegInf, Endpoint::At { value: &c / &a, closed: !strict }),
                Ordering::Less => Interval::new(Endpoint::At { value: &c / &a, closed: !strict }, Endpoint::PosInf),
            };
            range = range.intersect(&piece);
        }
        !range.is_empty()
    }

    fn strict_version(&self) -> ConvexRegion {
        ConvexRegion {
            constraints: self
                .constraints
                .iter()
                .map(|h| HalfPlane { strict: true, ..h.clone() })
                .collect(),
        }
    }

    /// Nonempty with nonempty interior.
    pub fn has_interior(&self) -> bool {
        self.strict_version().is_feasible()
    }
}

/// Position of a segment relative to a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Placement {
    Inside,
    Outside,
    Split,
}

/// Parameters `t ∈ [0, 1]` for which `p + t(q − p)` satisfies `h`.
fn param_range(seg: &Segment, h: &HalfPlane) -> Interval<FieldElem> {
    let unit = Interval::closed(FieldElem::zero(), FieldElem::one());
    let vp = h.value(&seg.p);
    let s = &h.value(&seg.q) - &vp;
    let root = || -(&vp / &s);
    let piece = match s.signum() {
        Ordering::Equal => {
            return if h.admits(&vp) { unit } else { Interval::open(FieldElem::zero(), FieldElem::zero()) };
        }
        Ordering::Greater => Interval::new(Endpoint::NegInf, Endpoint::At { value: root(), closed: !h.strict }),
        Ordering::Less => Interval::new(Endpoint::At { value: root(), closed: !h.strict }, Endpoint::PosInf),
    };
    unit.intersect(&piece)
}

/// Placement from the parameter ranges of each constraint.
fn placement_from<'a>(ranges: impl IntoIterator<Item = &'a Interval<FieldElem>>) -> Placement {
    let unit = Interval::closed(FieldElem::zero(), FieldElem::one());
    let mut range = unit.clone();
    for r in ranges {
        range = range.intersect(r);
        if range.is_empty() {
            return Placement::Outside;
        }
    }
    if range.contains_interval(&unit) {
        Placement::Inside
    } else {
        Placement::Split
    }
}

fn placement(seg: &Segment, u: &ConvexRegion) -> Placement {
    let ranges: Vec<_> = u.constraints.iter().map(|h| param_range(seg, h)).collect();
    placement_from(&ranges)
}

/// Classifies many regions built from one menu of half-planes, caching
/// per-constraint work across regions.
pub(crate) struct RegionClassifier<'a> {
    schema: &'a PlaneSchema,
    menu: &'a [HalfPlane],
    components: Vec<QuotientComponent>,
    single: Vec<u64>,
    pair: HashMap<(usize, usize), u64>,
    ranges: HashMap<(usize, usize, i64), Interval<FieldElem>>,
}

impl<'a> RegionClassifier<'a> {
    pub(crate) fn new(schema: &'a PlaneSchema, menu: &'a [HalfPlane]) -> Self {
        RegionClassifier {
            schema,
            menu,
            components: schema.quotient_components(),
            single: menu.iter().map(|h| schema.single_threshold(h)).collect(),
            pair: HashMap::new(),
            ranges: HashMap::new(),
        }
    }

    /// Same as [`PlaneSchema::classify`] on the region cut out by the
    /// menu entries `ix`.
    pub(crate) fn classify(&mut self, ix: &[usize]) -> Result<Option<(u64, u64)>, ConnectError> {
        let mut t = ix.iter().map(|&i| self.single[i]).max().unwrap_or(0);
        for (n, &k) in ix.iter().enumerate() {
            for &j in &ix[..n] {
                let (schema, menu) = (self.schema, self.menu);
                let v = *self
                    .pair
                    .entry((j, k))
                    .or_insert_with(|| schema.pair_threshold(&menu[j], &menu[k]));
                t = t.max(v);
            }
        }
        let RegionClassifier {
            schema,
            menu,
            components,
            ranges,
            ..
        } = self;
        schema.classify_by(components, t, |f, i| {
            for &h in ix {
                ranges
                    .entry((h, f, i))
                    .or_insert_with(|| param_range(&schema.copy(f, i), &menu[h]));
            }
            placement_from(ix.iter().map(|&h| &ranges[&(h, f, i)]))
        })
    }
}

fn both_thresholds(form: &[FieldElem; 2]) -> u64 {
    eventual_sign(form).threshold.max(eventual_sign_negative(form).threshold)
}

/// A connected piece of the quotient graph. Copy `(f, i)` lies in the
/// colimit component labelled `i − potential[f]`, taken modulo `modulus`
/// (exactly when `modulus` is 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientComponent {
    pub potential: BTreeMap<usize, i64>,
    pub modulus: u64,
}

impl QuotientComponent {
    /// Number of colimit components lying over this piece; `None` when
    /// infinite.
    pub fn lifts(&self) -> Option<u64> {
        (self.modulus > 0).then_some(self.modulus)
    }

    pub fn label(&self, f: usize, i: i64) -> i64 {
        let l = i - self.potential[&f];
        if self.modulus == 0 {
            l
        } else {
            l.mod_floor(&(self.modulus as i64))
        }
    }
}

/// Edge between `(f, i)` and `(g, i + d)` in the quotient graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuotientEdge {
    pub f: usize,
    pub g: usize,
    pub d: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSchema {
    pub start: u64,
    /// Copies `|i| ≤ growth.0 · n + growth.1` exist at stage `n`.
    pub growth: (u64, u64),
    pub step: Point,
    pub segments: Vec<Segment>,
}

fn finite_std(x: &FieldElem) -> Result<BigRational, ConnectError> {
    x.standard_part()
        .ok_or_else(|| ConnectError::Unsupported("plane schemas need finite coordinates".into()))
}

impl PlaneSchema {
    pub fn new(start: u64, growth: (u64, u64), step: Point, segments: Vec<Segment>) -> Result<Self, ConnectError> {
        if growth.0 == 0 {
            return Err(ConnectError::Unsupported("the number of copies must grow with the stage".into()));
        }
        let sx = finite_std(&step.x)?;
        let sy = finite_std(&step.y)?;
        if num_traits::Zero::is_zero(&sx) && num_traits::Zero::is_zero(&sy) {
            return Err(ConnectError::Unsupported("the translation step must not be infinitesimal".into()));
        }
        for s in &segments {
            for p in [&s.p, &s.q] {
                finite_std(&p.x)?;
                finite_std(&p.y)?;
            }
        }
        Ok(PlaneSchema {
            start,
            growth,
            step,
            segments,
        })
    }

    pub fn radius(&self, n: u64) -> i64 {
        (self.growth.0 * n + self.growth.1) as i64
    }

    pub fn copy(&self, f: usize, i: i64) -> Segment {
        self.segments[f].translate(&self.step, i)
    }

    /// Segments of stage `n`, family-major within each copy index.
    pub fn stage(&self, n: u64) -> Vec<Segment> {
        let r = self.radius(n);
        (-r..=r)
            .flat_map(|i| (0..self.segments.len()).map(move |f| (f, i)))
            .map(|(f, i)| self.copy(f, i))
            .collect()
    }

    /// Largest `|d|` for which translated copies can meet.
    pub fn reach(&self) -> i64 {
        let mut r = BigRational::from_integer(1.into());
        for s in &self.segments {
            for p in [&s.p, &s.q] {
                for c in [&p.x, &p.y] {
                    r = r.max(finite_std(c).expect("validated").abs() + BigRational::from_integer(1.into()));
                }
            }
        }
        let vx = finite_std(&self.step.x).expect("validated").abs();
        let vy = finite_std(&self.step.y).expect("validated").abs();
        let major = vx.max(vy);
        let span = r * BigRational::from_integer(2.into()) + BigRational::from_integer(1.into());
        (span / major).ceil().to_integer().to_i64().unwrap_or(i64::MAX)
    }

    pub fn quotient_edges(&self) -> Vec<QuotientEdge> {
        let reach = self.reach();
        let mut out = Vec::new();
        for f in 0..self.segments.len() {
            for g in f..self.segments.len() {
                for d in -reach..=reach {
                    if f == g && d <= 0 {
                        continue;
                    }
                    if self.segments[f].intersects(&self.copy(g, d)) {
                        out.push(QuotientEdge { f, g, d });
                    }
                }
            }
        }
        out
    }

    /// Pieces of the quotient graph with their potentials and the gcd of
    /// their cycle labels.
    pub fn quotient_components(&self) -> Vec<QuotientComponent> {
        let nf = self.segments.len();
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nf];
        for e in self.quotient_edges() {
            adj[e.f].push((e.g, e.d));
            adj[e.g].push((e.f, -e.d));
        }
        let mut potential: Vec<Option<i64>> = vec![None; nf];
        let mut out = Vec::new();
        for root in 0..nf {
            if potential[root].is_some() {
                continue;
            }
            potential[root] = Some(0);
            let mut members = BTreeMap::from([(root, 0)]);
            let mut modulus: u64 = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let pf = potential[f].expect("visited");
                for &(g, d) in &adj[f] {
                    match potential[g] {
                        None => {
                            potential[g] = Some(pf + d);
                            members.insert(g, pf + d);
                            queue.push_back(g);
                        }
                        Some(pg) => modulus = modulus.gcd(&(pf + d - pg).unsigned_abs()),
                    }
                }
            }
            out.push(QuotientComponent {
                potential: members,
                modulus,
            });
        }
        out
    }

    /// Number of components of the union over all stages; `None` when
    /// infinite.
    pub fn component_count(&self) -> Option<u64> {
        self.quotient_components().iter().map(QuotientComponent::lifts).sum()
    }

    /// A bound beyond which every copy `(f, i)` sits in the same position
    /// relative to `u` as all copies further out on the same side.
    fn placement_threshold(&self, u: &ConvexRegion) -> u64 {
        let c = &u.constraints;
        let mut t = c.iter().map(|h| self.single_threshold(h)).max().unwrap_or(0);
        for k in 0..c.len() {
            for j in 0..k {
                t = t.max(self.pair_threshold(&c[j], &c[k]));
            }
        }
        t
    }

    fn single_threshold(&self, h: &HalfPlane) -> u64 {
        let slope = h.linear(&self.step);
        self.segments
            .iter()
            .flat_map(|s| [h.value(&s.p), h.value(&s.q)])
            .map(|v| both_thresholds(&[v, slope.clone()]))
            .max()
            .unwrap_or(0)
    }

    /// Crossing parameters `−(p_k + i w_k)/s_k` compared across two
    /// constraints.
    fn pair_threshold(&self, hj: &HalfPlane, hk: &HalfPlane) -> u64 {
        let (wj, wk) = (hj.linear(&self.step), hk.linear(&self.step));
        self.segments
            .iter()
            .map(|s| {
                let (pj, pk) = (hj.value(&s.p), hk.value(&s.p));
                let sj = &hj.value(&s.q) - &pj;
                let sk = &hk.value(&s.q) - &pk;
                both_thresholds(&[&(&pj * &sk) - &(&pk * &sj), &(&wj * &sk) - &(&wk * &sj)])
            })
            .max()
            .unwrap_or(0)
    }

    /// Classifies every colimit component as inside `u`, outside it, or
    /// split by it. Returns the counts of inside and outside components,
    /// or `None` when some component is split.
    pub(crate) fn classify(&self, u: &ConvexRegion) -> Result<Option<(u64, u64)>, ConnectError> {
        let t = self.placement_threshold(u);
        self.classify_by(&self.quotient_components(), t, |f, i| placement(&self.copy(f, i), u))
    }

    fn classify_by(
        &self,
        components: &[QuotientComponent],
        t: u64,
        mut place: impl FnMut(usize, i64) -> Placement,
    ) -> Result<Option<(u64, u64)>, ConnectError> {
        if t > MAX_THRESHOLD {
            return Err(ConnectError::ThresholdTooLarge(t));
        }
        let t = t as i64;
        let mut inside = 0u64;
        let mut outside = 0u64;
        for qc in components {
            let spread = qc.potential.values().map(|p| p.abs()).max().unwrap_or(0);
            let period = qc.modulus.max(1) as i64;
            let w = t + spread + period + 1;
            // Labels that occur in the window, with the placements seen.
            let mut seen: BTreeMap<i64, (bool, bool)> = BTreeMap::new();
            for &f in qc.potential.keys() {
                for i in -w..=w {
                    let entry = seen.entry(qc.label(f, i)).or_insert((false, false));
                    match place(f, i) {
                        Placement::Split => return Ok(None),
                        Placement::Inside => entry.0 = true,
                        Placement::Outside => entry.1 = true,
                    }
                }
            }
            if qc.modulus == 0 {
                // Only clusters whose copies all lie in the window are complete.
                let complete = |l: i64| qc.potential.values().all(|p| (l + p).abs() <= w);
                for (l, (i, o)) in &seen {
                    if !complete(*l) {
                        continue;
                    }
                    match (i, o) {
                        (true, true) => return Ok(None),
                        (true, false) => inside += 1,
                        _ => outside += 1,
                    }
                }
                continue;
            }
            for (i, o) in seen.values() {
                match (i, o) {
                    (true, true) => return Ok(None),
                    (true, false) => inside += 1,
                    _ => outside += 1,
                }
            }
        }
        Ok(Some((inside, outside)))
    }

    /// Union-find over concrete copies of one large stage: counts the
    /// classes that contain copies of a central block.
    pub fn central_classes(&self) -> usize {
        let edges = self.quotient_edges();
        let nf = self.segments.len();
        let reach = self.reach().max(1);
        let core = reach * (nf as i64 + 1);
        let margin = (edges.len() as i64 + 1) * (nf as i64 * reach + 1).pow(2);
        let r = core + margin;
        let idx = |f: usize, i: i64| ((i + r) as usize) * nf + f;
        let mut dsu = DisjointSets::new((2 * r as usize + 1) * nf);
        for i in -r..=r {
            for e in &edges {
                let j = i + e.d;
                if (-r..=r).contains(&j) {
                    dsu.union(idx(e.f, i), idx(e.g, j));
                }
            }
        }
        let mut roots: Vec<usize> = (-core..=core)
            .flat_map(|i| (0..nf).map(move |f| (f, i)))
            .map(|(f, i)| dsu.find(idx(f, i)))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Sorted, deduplicated projections of the base segment endpoints
    /// onto `dir`, with midpoints between neighbours.
    pub(crate) fn offsets(&self, dir: (&FieldElem, &FieldElem)) -> Vec<FieldElem> {
        let mut v: Vec<FieldElem> = self
            .segments
            .iter()
            .flat_map(|s| [&s.p, &s.q])
            .map(|p| &(dir.0 * &p.x) + &(dir.1 * &p.y))
            .collect();
        v.sort();
        v.dedup();
        let half = FieldElem::from_ratio(1, 2);
        let mids: Vec<FieldElem> = v.windows(2).map(|w| &(&w[0] + &w[1]) * &half).collect();
        v.extend(mids);
        v.sort();
        v
    }

    pub(crate) fn parse_lines(lines: &[(usize, &str)]) -> Result<Self, ConnectError> {
        let err = |line: usize, message: String| ConnectError::Parse { line, message };
        let (hl, header) = lines[0];
        let (start, growth, step) = parse_header(header).map_err(|m| err(hl, m))?;
        let mut segments = Vec::new();
        for &(line, l) in &lines[1..] {
            let body = l.strip_prefix("SEG").ok_or_else(|| err(line, "expected `SEG`".into()))?;
            let pts = parse_points(body).map_err(|m| err(line, m))?;
            if pts.len() != 2 {
                return Err(err(line, "a segment needs two points".into()));
            }
            let mut it = pts.into_iter();
            segments.push(Segment::new(it.next().expect("two"), it.next().expect("two")));
        }
        PlaneSchema::new(start, growth, step, segments)
    }
}

/// Parses `PLANE n >= k: COPIES |i| <= a*n + b STEP (x, y)`.
fn parse_header(l: &str) -> Result<(u64, (u64, u64), Point), String> {
    let rest = l.strip_prefix("PLANE").ok_or("expected `PLANE`")?;
    let (head, body) = rest.split_once(':').ok_or("expected `:`")?;
    let start = parse_bound(head)?;
    let body = body.trim().strip_prefix("COPIES").ok_or("expected `COPIES`")?;
    let body = body.trim().strip_prefix("|i|").ok_or("expected `|i|`")?;
    let body = body.trim().strip_prefix("<=").ok_or("expected `<=`")?;
    let (range, step) = body.split_once("STEP").ok_or("expected `STEP`")?;
    let e = parse_nexpr(range, true)?;
    let int = |x: FieldElem| -> Result<u64, String> {
        x.as_rational()
            .filter(|r| r.is_integer() && !r.is_negative())
            .and_then(|r| r.to_integer().to_u64())
            .ok_or_else(|| "copy range needs nonnegative integer coefficients".to_string())
    };
    if e.powers().any(|k| k != 0 && k != 1) {
        return Err("copy range must be a·n + b".into());
    }
    let growth = (int(e.coeff(1))?, int(e.coeff(0))?);
    let pts = parse_points(step)?;
    let [p]: [Point; 1] = pts.try_into().map_err(|_| "STEP needs one point".to_string())?;
    Ok((start, growth, p))
}

fn parse_points(s: &str) -> Result<Vec<Point>, String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => {
                if depth == 0 {
                    start = Some(i + 1);
                }
                depth += 1;
            }
            ')' => {
                depth -= 1;
                if depth == 0 {
                    let inner = &s[start.take().ok_or("unbalanced parentheses")?..i];
                    let parts = split_top(inner, ',');
                    if parts.len() != 2 {
                        return Err(format!("point `({inner})` needs two coordinates"));
                    }
                    out.push(Point::new(parse_field(parts[0])?, parse_field(parts[1])?));
                }
            }
            _ if depth == 0 && !c.is_whitespace() => return Err(format!("unexpected `{c}` outside a point")),
            _ => {}
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    Ok(out)
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for PlaneSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let range = match self.growth {
            (1, 0) => "n".to_string(),
            (a, 0) => format!("{a}*n"),
            (1, b) => format!("n + {b}"),
            (a, b) => format!("{a}*n + {b}"),
        };
        writeln!(f, "PLANE n >= {}: COPIES |i| <= {range} STEP {}", self.start, self.step)?;
        for s in &self.segments {
            writeln!(f, "SEG {} {}", s.p, s.q)?;
        }
        Ok(())
    }
}

fn fmt_coeff(x: &FieldElem) -> String {
    let s = x.to_string();
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.strict { "<" } else { "<=" };
        write!(f, "{}*x + {}*y {op} {}", fmt_coeff(&self.a), fmt_coeff(&self.b), fmt_coeff(&self.c))
    }
}

impl fmt::Display for ConvexRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return f.write_str("plane");
        }
        let parts: Vec<String> = self.constraints.iter().map(|h| h.to_string()).collect();
        f.write_str(&parts.join(" & "))
    }
}

/// Parses `a*x + b*y < c & ...`; `plane` is the whole plane.
pub fn parse_region(s: &str) -> Result<ConvexRegion, String> {
    let s = s.trim();
    if s == "plane" {
        return Ok(ConvexRegion::default());
    }
    let mut constraints = Vec::new();
    for part in s.split('&') {
        let (lhs, rhs, strict) = if let Some((l, r)) = part.split_once("<=") {
            (l, r, false)
        } else if let Some((l, r)) = part.split_once('<') {
            (l, r, true)
        } else {
            return Err(format!("constraint `{}` needs `<` or `<=`", part.trim()));
        };
        // Read `x` and `y` as formal variables by substitution.
        let lhs = lhs.replace('x', "(n)").replace('y', "(1/n)");
        let e = parse_nexpr(&lhs, true)?;
        if e.powers().any(|k| !(k == 1 || k == -1)) {
            return Err("left side must be linear in x and y without a constant".into());
        }
        constraints.push(HalfPlane {
            a: e.coeff(1),
            b: e.coeff(-1),
            c: parse_field(rhs)?,
            strict,
        });
    }
    Ok(ConvexRegion { constraints })
}
