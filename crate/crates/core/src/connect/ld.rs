use std::collections::BTreeSet;

use super::interval::{normalize, Endpoint, Interval};
use super::schema::{Eventual, LineSchema, Schema, StageTerm};
use super::ConnectError;

/// One component of the union of all stages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentDescription {
    /// The union over `n` of the interval with these endpoint terms.
    Interval(Interval<StageTerm>),
    /// The copies of `segments` over one residue class modulo `modulus`.
    Periodic { segments: Vec<usize>, modulus: u64, residue: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LdVerdict {
    pub connected: bool,
    /// `None` when there are infinitely many components.
    pub component_count: Option<u64>,
    pub components: Vec<ComponentDescription>,
    /// Stage from which the component pattern no longer changes.
    pub stable_from: u64,
}

fn lift_end(e: &Endpoint<StageTerm>, shift: u64) -> Endpoint<Eventual<'_>> {
    match e {
        Endpoint::NegInf => Endpoint::NegInf,
        Endpoint::PosInf => Endpoint::PosInf,
        Endpoint::At { value, closed } => Endpoint::At {
            value: Eventual { term: value, shift },
            closed: *closed,
        },
    }
}

fn lift(p: &Interval<StageTerm>, shift: u64) -> Interval<Eventual<'_>> {
    Interval {
        lower: lift_end(&p.lower, shift),
        upper: lift_end(&p.upper, shift),
    }
}

fn unlift(e: &Endpoint<Eventual<'_>>) -> Endpoint<StageTerm> {
    e.map(|v| v.term.clone())
}

/// Components of the union, found by comparing endpoint terms as functions
/// of `n` for all large `n`.
///
/// Stage components are followed from `n` to `n + 1`; since the pattern is
/// fixed for large `n`, this is a self-map of a finite set whose eventual
/// image indexes the components of the union.
pub fn ld_connected(s: &Schema) -> Result<LdVerdict, ConnectError> {
    match s {
        Schema::Line(l) => line_components(l),
        Schema::Plane(p) => {
            let mut components = Vec::new();
            for qc in p.quotient_components() {
                let segments: Vec<usize> = qc.potential.keys().copied().collect();
                if qc.modulus == 0 {
                    continue;
                }
                for residue in 0..qc.modulus {
                    components.push(ComponentDescription::Periodic {
                        segments: segments.clone(),
                        modulus: qc.modulus,
                        residue,
                    });
                }
            }
            let count = p.component_count();
            Ok(LdVerdict {
                connected: count == Some(1),
                component_count: count,
                components,
                stable_from: p.start,
            })
        }
    }
}

pub(crate) fn line_components(s: &LineSchema) -> Result<LdVerdict, ConnectError> {
    let stable = s.stable_stage(&[])?;
    for n in s.start()..stable {
        if !s.stage(n + 1).contains_set(&s.stage(n)) {
            return Err(ConnectError::NonMonotone { stage: n });
        }
    }
    let pieces = &s.last().pieces;
    let now = normalize(pieces.iter().map(|p| lift(p, 0)));
    let next = normalize(pieces.iter().map(|p| lift(p, 1)));
    let mut step = Vec::with_capacity(now.len());
    for c in &now {
        match next.iter().position(|d| d.contains_interval(c)) {
            Some(j) => step.push(j),
            None => return Err(ConnectError::NonMonotone { stage: stable }),
        }
    }
    let mut image: BTreeSet<usize> = (0..now.len()).collect();
    for _ in 0..now.len() {
        image = image.iter().map(|&i| step[i]).collect();
    }
    let components: Vec<ComponentDescription> = image
        .iter()
        .map(|&i| {
            ComponentDescription::Interval(Interval {
                lower: unlift(&now[i].lower),
                upper: unlift(&now[i].upper),
            })
        })
        .collect();
    Ok(LdVerdict {
        connected: components.len() == 1,
        component_count: Some(components.len() as u64),
        components,
        stable_from: stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn parse(t: &str) -> Schema {
        Schema::parse(t).unwrap()
    }

    #[test]
    fn nested_intervals_are_connected() {
        let v = ld_connected(&parse("STAGE n >= 1: (-n, n)")).unwrap();
        assert!(v.connected);
        assert_eq!(v.component_count, Some(1));
    }

    #[test]
    fn punctured_line_has_two_components() {
        let v = ld_connected(&fixtures::punctured_line()).unwrap();
        assert!(!v.connected);
        assert_eq!(v.component_count, Some(2));
        let ComponentDescription::Interval(i) = &v.components[1] else { panic!() };
        assert_eq!(i.to_string(), "(1/n,n)");
    }

    #[test]
    fn zigzag_pair_has_two_components() {
        let v = ld_connected(&fixtures::zigzag_pair()).unwrap();
        assert!(!v.connected);
        assert_eq!(v.component_count, Some(2));
    }

    #[test]
    fn late_merges_are_seen() {
        // The second piece is swallowed once n exceeds 5.
        let v = ld_connected(&parse("STAGE n >= 1: (0, n) U (5, 6)")).unwrap();
        assert!(v.connected);
        // Pieces that touch only in the limit stay apart.
        let v = ld_connected(&parse("STAGE n >= 1: (-n, -1/n) U [0, 0] U (1/n, n)")).unwrap();
        assert_eq!(v.component_count, Some(3));
        // A component that keeps being replaced by a larger one.
        let v = ld_connected(&parse("STAGE n >= 1: [0, n] U [n + 1/2, n + 1]")).unwrap();
        assert_eq!(v.component_count, Some(1));
    }

    #[test]
    fn shrinking_stages_are_rejected() {
        assert!(matches!(
            ld_connected(&parse("STAGE n >= 1: (0, 1/n)")),
            Err(ConnectError::NonMonotone { .. })
        ));
        assert!(matches!(
            ld_connected(&parse("STAGE n >= 1: (0, n)\nSTAGE n >= 4: (0, 2)")),
            Err(ConnectError::NonMonotone { stage: 3 })
        ));
    }
}
