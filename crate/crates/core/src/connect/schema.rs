use std::cmp::Ordering;
use std::fmt;

use super::eventual::{eventual_sign, poly_add, poly_mul, poly_neg, poly_scale, NPoly};
use super::expr::parse_nexpr;
use super::field::FieldElem;
use super::interval::{Endpoint, Interval, IntervalSet, SemilinearSet};
use super::plane::PlaneSchema;
use super::ConnectError;

/// Largest stage at which eventual behaviour may start before concrete
/// checks are refused.
pub const MAX_THRESHOLD: u64 = 100_000;

/// The stage-dependent value `a·n + b + c/n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StageTerm {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
}

impl StageTerm {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem) -> Self {
        StageTerm { a, b, c }
    }

    pub fn constant(b: FieldElem) -> Self {
        StageTerm::new(FieldElem::zero(), b, FieldElem::zero())
    }

    pub fn is_constant(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }

    pub fn eval(&self, n: u64) -> FieldElem {
        assert!(n > 0 || self.c.is_zero(), "term with 1/n evaluated at 0");
        let nf = FieldElem::from_int(n as i64);
        let mut v = &(&self.a * &nf) + &self.b;
        if !self.c.is_zero() {
            v = &v + &(&self.c / &nf);
        }
        v
    }

    /// `(n+s) · value(n+s)` as a polynomial in `n`.
    fn scaled_numerator(&self, shift: u64) -> NPoly {
        let s = FieldElem::from_int(shift as i64);
        let a = &self.a;
        let two_as = &(&FieldElem::from_int(2) * a) * &s;
        vec![
            &(&(&(a * &s) * &s) + &(&self.b * &s)) + &self.c,
            &two_as + &self.b,
            a.clone(),
        ]
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let e = parse_nexpr(text, true)?;
        if let Some(k) = e.powers().find(|k| !(-1..=1).contains(k)) {
            return Err(format!("power n^{k} is outside the term grammar"));
        }
        Ok(StageTerm::new(e.coeff(1), e.coeff(0), e.coeff(-1)))
    }
}

fn linear_poly(s: u64) -> NPoly {
    vec![FieldElem::from_int(s as i64), FieldElem::one()]
}

/// Polynomial whose eventual sign is that of `t1(n+s1) − t2(n+s2)`.
pub(crate) fn difference_poly(t1: &StageTerm, s1: u64, t2: &StageTerm, s2: u64) -> NPoly {
    let left = poly_mul(&t1.scaled_numerator(s1), &linear_poly(s2));
    let right = poly_mul(&t2.scaled_numerator(s2), &linear_poly(s1));
    poly_add(&left, &poly_neg(&right))
}

/// Polynomial whose eventual sign is that of `t(n+s) − k`.
pub(crate) fn constant_difference_poly(t: &StageTerm, s: u64, k: &FieldElem) -> NPoly {
    poly_add(&t.scaled_numerator(s), &poly_neg(&poly_scale(&linear_poly(s), k)))
}

/// A term read at stage `n + shift`, ordered by its values for all large `n`.
#[derive(Clone, Debug)]
pub(crate) struct Eventual<'a> {
    pub term: &'a StageTerm,
    pub shift: u64,
}

impl Ord for Eventual<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        eventual_sign(&difference_poly(self.term, self.shift, other.term, other.shift)).sign
    }
}

impl PartialOrd for Eventual<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Eventual<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Eventual<'_> {}

/// Stage description used from stage `start` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub start: u64,
    pub pieces: Vec<Interval<StageTerm>>,
}

/// A directed family of subsets of the line: stage `n` is given by the
/// clause with the largest start not exceeding `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSchema {
    clauses: Vec<Clause>,
}

impl LineSchema {
    pub fn new(mut clauses: Vec<Clause>) -> Result<Self, ConnectError> {
        clauses.sort_by_key(|c| c.start);
        if clauses.is_empty() {
            return Err(ConnectError::Parse {
                line: 0,
                message: "schema has no stages".into(),
            });
        }
        if clauses.windows(2).any(|w| w[0].start == w[1].start) {
            return Err(ConnectError::Parse {
                line: 0,
                message: "two clauses start at the same stage".into(),
            });
        }
        if clauses[0].start == 0 {
            return Err(ConnectError::Parse {
                line: 0,
                message: "line schemas start at a stage n >= 1".into(),
            });
        }
        Ok(LineSchema { clauses })
    }

    /// A schema with a single clause.
    pub fn single(start: u64, pieces: Vec<Interval<StageTerm>>) -> Result<Self, ConnectError> {
        LineSchema::new(vec![Clause { start, pieces }])
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn start(&self) -> u64 {
        self.clauses[0].start
    }

    pub fn last(&self) -> &Clause {
        self.clauses.last().expect("nonempty")
    }

    fn clause_at(&self, n: u64) -> &Clause {
        self.clauses.iter().rev().find(|c| c.start <= n).unwrap_or(&self.clauses[0])
    }

    /// Evaluated and normalized stage `n`.
    pub fn stage(&self, n: u64) -> SemilinearSet {
        IntervalSet::new(self.clause_at(n).pieces.iter().map(|p| p.map(|t| t.eval(n))))
    }

    /// Finite endpoint terms of the eventual clause.
    pub fn eventual_terms(&self) -> Vec<&StageTerm> {
        let mut out: Vec<&StageTerm> = Vec::new();
        for p in &self.last().pieces {
            for e in [&p.lower, &p.upper] {
                if let Some(t) = e.value() {
                    if !out.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    /// A stage from which every comparison between eventual endpoint terms
    /// at stages `n` and `n+1`, and against each of `constants`, keeps its
    /// sign.
    pub fn stable_stage(&self, constants: &[FieldElem]) -> Result<u64, ConnectError> {
        let terms = self.eventual_terms();
        let mut t = self.last().start;
        for (i, x) in terms.iter().enumerate() {
            for y in &terms[i..] {
                for (s1, s2) in [(0, 0), (0, 1), (1, 0)] {
                    t = t.max(eventual_sign(&difference_poly(x, s1, y, s2)).threshold);
                }
            }
            for k in constants {
                t = t.max(eventual_sign(&constant_difference_poly(x, 0, k)).threshold);
            }
        }
        if t > MAX_THRESHOLD {
            return Err(ConnectError::ThresholdTooLarge(t));
        }
        Ok(t)
    }

    /// Field constants appearing as limits of the endpoint terms.
    pub fn limit_constants(&self) -> Vec<FieldElem> {
        let mut out: Vec<FieldElem> = Vec::new();
        for c in &self.clauses {
            for p in &c.pieces {
                for e in [&p.lower, &p.upper] {
                    if let Some(t) = e.value() {
                        if !out.contains(&t.b) {
                            out.push(t.b.clone());
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Evaluates a line schema at stage `n`.
pub fn stage_set(s: &LineSchema, n: u64) -> SemilinearSet {
    s.stage(n)
}

/// A directed family of definable sets, on the line or in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schema {
    Line(LineSchema),
    Plane(PlaneSchema),
}

impl Schema {
    /// Parses the schema language:
    ///
    /// ```text
    /// # comment
    /// STAGE n >= 2: (-n, -1/n) U (1/n, n)
    /// ```
    ///
    /// or, for periodic unions of plane segments,
    ///
    /// ```text
    /// PLANE n >= 0: COPIES |i| <= n STEP (2, 0)
    /// SEG (0, 0) (1, -1)
    /// ```
    pub fn parse(text: &str) -> Result<Schema, ConnectError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        match lines.first() {
            Some((_, l)) if l.starts_with("PLANE") => PlaneSchema::parse_lines(&lines).map(Schema::Plane),
            _ => {
                let mut clauses = Vec::new();
                for &(line, l) in &lines {
                    clauses.push(parse_clause(l).map_err(|message| ConnectError::Parse { line, message })?);
                }
                LineSchema::new(clauses).map(Schema::Line)
            }
        }
    }

    pub fn as_line(&self) -> Option<&LineSchema> {
        match self {
            Schema::Line(s) => Some(s),
            Schema::Plane(_) => None,
        }
    }

    pub fn as_plane(&self) -> Option<&PlaneSchema> {
        match self {
            Schema::Plane(s) => Some(s),
            Schema::Line(_) => None,
        }
    }
}

/// Parses `STAGE n >= k: <set>`.
fn parse_clause(l: &str) -> Result<Clause, String> {
    let rest = l.strip_prefix("STAGE").ok_or("expected `STAGE`")?;
    let (head, body) = rest.split_once(':').ok_or("expected `:` after the stage bound")?;
    let start = parse_bound(head)?;
    Ok(Clause {
        start,
        pieces: parse_union(body, StageTerm::parse)?,
    })
}

/// `n >= k`, or a bare `n` meaning `n >= 1`.
pub(crate) fn parse_bound(head: &str) -> Result<u64, String> {
    let h = head.trim().strip_prefix('n').ok_or("expected `n >= k`")?.trim();
    if h.is_empty() {
        return Ok(1);
    }
    let bound = h.strip_prefix(">=").ok_or("expected `n >= k`")?.trim();
    bound.parse().map_err(|_| format!("bad stage bound `{bound}`"))
}

/// Splits `s` at top-level occurrences of `sep` outside brackets.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_endpoint<T>(s: &str, closed: bool, parse: &impl Fn(&str) -> Result<T, String>) -> Result<Endpoint<T>, String> {
    match s.trim() {
        "-inf" => Ok(Endpoint::NegInf),
        "+inf" | "inf" => Ok(Endpoint::PosInf),
        t => Ok(Endpoint::At {
            value: parse(t)?,
            closed,
        }),
    }
}

/// Parses `(a, b] U [c, c] U ...`; `{}` is the empty set.
pub(crate) fn parse_union<T>(s: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Vec<Interval<T>>, String> {
    let s = s.trim();
    if s == "{}" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for piece in split_top(s, 'U') {
        let p = piece.trim();
        let (open, close) = (p.chars().next(), p.chars().last());
        let lower_closed = match open {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(format!("interval `{p}` must start with `(` or `[`")),
        };
        let upper_closed = match close {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(format!("interval `{p}` must end with `)` or `]`")),
        };
        let inner = &p[1..p.len() - 1];
        let parts = split_top(inner, ',');
        if parts.len() != 2 {
            return Err(format!("interval `{p}` needs two endpoints"));
        }
        let lower = parse_endpoint(parts[0], lower_closed, &parse)?;
        let upper = parse_endpoint(parts[1], upper_closed, &parse)?;
        if (matches!(lower, Endpoint::NegInf) && lower_closed) || (matches!(upper, Endpoint::PosInf) && upper_closed) {
            return Err("infinite endpoints must be open".into());
        }
        if matches!(lower, Endpoint::PosInf) || matches!(upper, Endpoint::NegInf) {
            return Err(format!("interval `{p}` has reversed infinite endpoints"));
        }
        out.push(Interval { lower, upper });
    }
    Ok(out)
}

/// Parses a set of constants in the interval syntax.
pub fn parse_semilinear(s: &str) -> Result<SemilinearSet, String> {
    Ok(IntervalSet::new(parse_union(s, super::expr::parse_field)?))
}

fn coefficient(c: &FieldElem, var: &str) -> String {
    let s = c.to_string();
    let s = if s.contains(' ') { format!("({s})") } else { s };
    match (s.as_str(), var) {
        (_, "") => s,
        ("1", "n") => "n".into(),
        ("-1", "n") => "-n".into(),
        (_, "n") => format!("{s}*n"),
        _ => format!("{s}/n"),
    }
}

impl fmt::Display for StageTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push(coefficient(&self.a, "n"));
        }
        if !self.b.is_zero() {
            parts.push(coefficient(&self.b, ""));
        }
        if !self.c.is_zero() {
            parts.push(coefficient(&self.c, "/n"));
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        for (i, p) in parts.iter().enumerate() {
            match (i, p.strip_prefix('-')) {
                (0, _) => f.write_str(p)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LineSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            let body: Vec<String> = c.pieces.iter().map(|p| p.to_string()).collect();
            let body = if body.is_empty() { "{}".to_string() } else { body.join(" U ") };
            writeln!(f, "STAGE n >= {}: {body}", c.start)?;
        }
        Ok(())
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schema::Line(s) => write!(f, "{s}"),
            Schema::Plane(s) => write!(f, "{s}"),
        }
    }
}

/// Concrete value of a term polynomial, for tests of the eventual order.
#[cfg(test)]
pub(crate) fn eval_difference(t1: &StageTerm, s1: u64, t2: &StageTerm, s2: u64, n: u64) -> FieldElem {
    &t1.eval(n + s1) - &t2.eval(n + s2)
}
