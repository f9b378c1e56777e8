use std::cmp::Ordering;
use std::fmt;

use super::field::FieldElem;

/// An interval endpoint. Infinite endpoints are always open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint<T> {
    NegInf,
    PosInf,
    At { value: T, closed: bool },
}

impl<T> Endpoint<T> {
    pub fn open(value: T) -> Self {
        Endpoint::At { value, closed: false }
    }

    pub fn closed(value: T) -> Self {
        Endpoint::At { value, closed: true }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Endpoint::At { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Endpoint::At { closed: true, .. })
    }

    pub fn map<U>(&self, f: impl FnOnce(&T) -> U) -> Endpoint<U> {
        match self {
            Endpoint::NegInf => Endpoint::NegInf,
            Endpoint::PosInf => Endpoint::PosInf,
            Endpoint::At { value, closed } => Endpoint::At {
                value: f(value),
                closed: *closed,
            },
        }
    }

    pub fn try_map<U, E>(&self, f: impl FnOnce(&T) -> Result<U, E>) -> Result<Endpoint<U>, E> {
        Ok(match self {
            Endpoint::NegInf => Endpoint::NegInf,
            Endpoint::PosInf => Endpoint::PosInf,
            Endpoint::At { value, closed } => Endpoint::At {
                value: f(value)?,
                closed: *closed,
            },
        })
    }
}

fn rank<T>(e: &Endpoint<T>) -> u8 {
    match e {
        Endpoint::NegInf => 0,
        Endpoint::At { .. } => 1,
        Endpoint::PosInf => 2,
    }
}

/// Position of a lower endpoint: at equal values a closed end starts first.
pub(crate) fn cmp_lower<T: Ord>(a: &Endpoint<T>, b: &Endpoint<T>) -> Ordering {
    match (a, b) {
        (Endpoint::At { value: x, closed: p }, Endpoint::At { value: y, closed: q }) => x.cmp(y).then(q.cmp(p)),
        _ => rank(a).cmp(&rank(b)),
    }
}

/// Position of an upper endpoint: at equal values an open end stops first.
pub(crate) fn cmp_upper<T: Ord>(a: &Endpoint<T>, b: &Endpoint<T>) -> Ordering {
    match (a, b) {
        (Endpoint::At { value: x, closed: p }, Endpoint::At { value: y, closed: q }) => x.cmp(y).then(p.cmp(q)),
        _ => rank(a).cmp(&rank(b)),
    }
}

/// True when some point lies at or after lower `lo` and at or before upper `hi`.
fn meets<T: Ord>(lo: &Endpoint<T>, hi: &Endpoint<T>) -> bool {
    match (lo, hi) {
        (Endpoint::At { value: x, closed: p }, Endpoint::At { value: y, closed: q }) => {
            x < y || (x == y && *p && *q)
        }
        _ => rank(lo) < rank(hi),
    }
}

/// True when the upper end `hi` of one interval touches or passes the lower
/// end `lo` of a later one, so that their union is an interval.
pub(crate) fn joins<T: Ord>(hi: &Endpoint<T>, lo: &Endpoint<T>) -> bool {
    match (hi, lo) {
        (Endpoint::At { value: x, closed: p }, Endpoint::At { value: y, closed: q }) => {
            y < x || (x == y && (*p || *q))
        }
        _ => rank(hi) > rank(lo),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval<T> {
    pub lower: Endpoint<T>,
    pub upper: Endpoint<T>,
}

impl<T> Interval<T> {
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Interval<U> {
        Interval {
            lower: self.lower.map(&f),
            upper: self.upper.map(&f),
        }
    }
}

impl<T: Ord + Clone> Interval<T> {
    pub fn new(lower: Endpoint<T>, upper: Endpoint<T>) -> Self {
        Interval { lower, upper }
    }

    pub fn open(a: T, b: T) -> Self {
        Interval::new(Endpoint::open(a), Endpoint::open(b))
    }

    pub fn closed(a: T, b: T) -> Self {
        Interval::new(Endpoint::closed(a), Endpoint::closed(b))
    }

    pub fn point(a: T) -> Self {
        Interval::closed(a.clone(), a)
    }

    pub fn whole() -> Self {
        Interval::new(Endpoint::NegInf, Endpoint::PosInf)
    }

    pub fn is_empty(&self) -> bool {
        !meets(&self.lower, &self.upper)
    }

    pub fn contains_interval(&self, other: &Interval<T>) -> bool {
        other.is_empty()
            || (cmp_lower(&self.lower, &other.lower) != Ordering::Greater
                && cmp_upper(&other.upper, &self.upper) != Ordering::Greater)
    }

    pub fn intersect(&self, other: &Interval<T>) -> Interval<T> {
        let lower = if cmp_lower(&self.lower, &other.lower) == Ordering::Less {
            other.lower.clone()
        } else {
            self.lower.clone()
        };
        let upper = if cmp_upper(&self.upper, &other.upper) == Ordering::Less {
            self.upper.clone()
        } else {
            other.upper.clone()
        };
        Interval { lower, upper }
    }

    pub fn intersects(&self, other: &Interval<T>) -> bool {
        !self.intersect(other).is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.contains_interval(&Interval::point(x.clone()))
    }

}

/// Sorts, drops empty pieces and merges overlapping or adjacent ones.
pub fn normalize<T: Ord + Clone>(pieces: impl IntoIterator<Item = Interval<T>>) -> Vec<Interval<T>> {
    let mut v: Vec<Interval<T>> = pieces.into_iter().filter(|i| !i.is_empty()).collect();
    v.sort_by(|a, b| cmp_lower(&a.lower, &b.lower).then_with(|| cmp_upper(&a.upper, &b.upper)));
    let mut out: Vec<Interval<T>> = Vec::with_capacity(v.len());
    for i in v {
        if let Some(last) = out.last_mut() {
            if joins(&last.upper, &i.lower) {
                if cmp_upper(&last.upper, &i.upper) == Ordering::Less {
                    last.upper = i.upper;
                }
                continue;
            }
        }
        out.push(i);
    }
    out
}

/// A finite union of pairwise disjoint, non-adjacent intervals in sorted
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalSet<T> {
    pieces: Vec<Interval<T>>,
}

/// Definable subsets of the line over ℚ(ε).
pub type SemilinearSet = IntervalSet<FieldElem>;

impl<T: Ord + Clone> IntervalSet<T> {
    pub fn new(pieces: impl IntoIterator<Item = Interval<T>>) -> Self {
        IntervalSet {
            pieces: normalize(pieces),
        }
    }

    pub fn empty() -> Self {
        IntervalSet { pieces: Vec::new() }
    }

    pub fn pieces(&self) -> &[Interval<T>] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// An interval lies in the set iff it lies in one of its pieces.
    pub fn contains_interval(&self, i: &Interval<T>) -> bool {
        i.is_empty() || self.pieces.iter().any(|p| p.contains_interval(i))
    }

    pub fn contains_set(&self, other: &IntervalSet<T>) -> bool {
        other.pieces.iter().all(|i| self.contains_interval(i))
    }

    pub fn meets_interval(&self, i: &Interval<T>) -> bool {
        self.pieces.iter().any(|p| p.intersects(i))
    }

    pub fn union(&self, other: &IntervalSet<T>) -> Self {
        IntervalSet::new(self.pieces.iter().chain(&other.pieces).cloned())
    }

    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> IntervalSet<U> {
        IntervalSet::new(self.pieces.iter().map(|p| p.map(&f)))
    }
}

impl<T: fmt::Display> fmt::Display for Endpoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("+inf"),
            Endpoint::At { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower.is_closed() { '[' } else { '(' };
        let close = if self.upper.is_closed() { ']' } else { ')' };
        write!(f, "{open}{},{}{close}", self.lower, self.upper)
    }
}

impl<T: fmt::Display> fmt::Display for IntervalSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(a: i32, b: i32) -> Interval<i32> {
        Interval::open(a, b)
    }

    fn c(a: i32, b: i32) -> Interval<i32> {
        Interval::closed(a, b)
    }

    #[test]
    fn adjacency_rules() {
        assert_eq!(IntervalSet::new([o(0, 1), o(1, 2)]).pieces().len(), 2);
        assert_eq!(IntervalSet::new([o(0, 1), c(1, 2)]).pieces(), &[Interval::new(Endpoint::open(0), Endpoint::closed(2))]);
        assert_eq!(IntervalSet::new([c(0, 1), o(1, 2)]).pieces().len(), 1);
        assert_eq!(IntervalSet::new([o(0, 5), c(1, 2)]).pieces(), &[o(0, 5)]);
        assert!(IntervalSet::new([o(1, 1), c(3, 2)]).is_empty());
        assert_eq!(IntervalSet::new([c(1, 1)]).pieces().len(), 1);
    }

    #[test]
    fn normalization_is_idempotent() {
        let s = IntervalSet::new([o(4, 9), c(0, 2), o(2, 3), Interval::new(Endpoint::NegInf, Endpoint::open(-5))]);
        assert_eq!(IntervalSet::new(s.pieces().to_vec()), s);
        assert_eq!(s.to_string(), "(-inf,-5) U [0,3) U (4,9)");
    }

    #[test]
    fn containment_and_intersection() {
        let s = IntervalSet::new([o(0, 2), c(3, 4)]);
        assert!(s.contains_interval(&c(3, 4)));
        assert!(!s.contains_interval(&c(0, 1)));
        assert!(!s.contains_interval(&o(1, 4)));
        assert!(s.meets_interval(&o(2, 3)) == false);
        assert!(s.meets_interval(&Interval::new(Endpoint::open(2), Endpoint::closed(3))));
        assert!(Interval::<i32>::whole().contains_interval(&o(-100, 100)));
        assert!(!o(0, 1).contains(&0));
    }
}
