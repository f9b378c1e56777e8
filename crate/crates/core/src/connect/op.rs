use super::schema::{LineSchema, Schema};
use super::ConnectError;

/// Whether the union can be re-exhausted by connected definable stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpVerdict {
    pub connected: bool,
    /// When connected: stage `n` lies inside a single component of stage
    /// `n + lag` for every large `n`.
    pub lag: Option<u64>,
}

/// Decides the existence of a connected re-exhaustion by evaluating
/// concrete stages, without the symbolic component tracking.
pub fn op_connected(s: &Schema) -> Result<OpVerdict, ConnectError> {
    match s {
        Schema::Line(l) => line(l),
        Schema::Plane(p) => {
            let connected = p.central_classes() == 1;
            Ok(OpVerdict {
                connected,
                lag: None,
            })
        }
    }
}

fn line(s: &LineSchema) -> Result<OpVerdict, ConnectError> {
    let n0 = s.stable_stage(&[])?;
    for n in s.start()..=n0 {
        if !s.stage(n + 1).contains_set(&s.stage(n)) {
            return Err(ConnectError::NonMonotone { stage: n });
        }
    }
    // Follow every piece of stage n0 forward one stage at a time. After as
    // many steps as there are pieces, pieces that will ever share a
    // component already do.
    let base = s.stage(n0);
    let k = base.pieces().len();
    let mut current: Vec<_> = base.pieces().to_vec();
    for step in 1..=k as u64 {
        let next = s.stage(n0 + step);
        current = current
            .iter()
            .map(|c| {
                next.pieces()
                    .iter()
                    .find(|p| p.contains_interval(c))
                    .cloned()
                    .ok_or(ConnectError::NonMonotone { stage: n0 + step - 1 })
            })
            .collect::<Result<_, _>>()?;
    }
    current.sort_by_key(|i| i.to_string());
    current.dedup();
    let connected = current.len() == 1;
    Ok(OpVerdict {
        connected,
        lag: connected.then_some(k as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn verdicts() {
        let yes = Schema::parse("STAGE n >= 1: (-n, n)").unwrap();
        assert!(op_connected(&yes).unwrap().connected);
        assert!(!op_connected(&fixtures::punctured_line()).unwrap().connected);
        let two = Schema::parse("STAGE n >= 1: (-n, -1) U (1, n)").unwrap();
        assert!(!op_connected(&two).unwrap().connected);
        let merging = Schema::parse("STAGE n >= 1: (0, n) U (5, 6)").unwrap();
        assert!(op_connected(&merging).unwrap().connected);
        assert!(!op_connected(&fixtures::zigzag_pair()).unwrap().connected);
    }
}
