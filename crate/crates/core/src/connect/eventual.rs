//! Signs of polynomials in a standard integer parameter with coefficients
//! in ℚ(ε).
//!
//! For a standard integer `x`, the value `Σ cᵢ xⁱ` has Laurent expansion
//! whose lowest term comes from the coefficients of minimal ε-order; their
//! leading rationals form an ordinary polynomial `q(x)`. Wherever `q(x) ≠ 0`
//! it fixes the sign, so beyond the Cauchy root bound of `q` the sign is
//! constant.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::field::FieldElem;

/// Polynomial in the stage parameter, lowest degree first.
pub(crate) type NPoly = Vec<FieldElem>;

pub(crate) fn poly_add(a: &[FieldElem], b: &[FieldElem]) -> NPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

pub(crate) fn poly_mul(a: &[FieldElem], b: &[FieldElem]) -> NPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElem::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

pub(crate) fn poly_scale(a: &[FieldElem], c: &FieldElem) -> NPoly {
    a.iter().map(|x| x * c).collect()
}

pub(crate) fn poly_neg(a: &[FieldElem]) -> NPoly {
    a.iter().map(|x| -x).collect()
}

#[cfg(test)]
pub(crate) fn poly_eval(a: &[FieldElem], x: i64) -> FieldElem {
    let x = FieldElem::from_int(x);
    a.iter().rev().fold(FieldElem::zero(), |acc, c| &(&acc * &x) + c)
}

/// Sign of a polynomial for all standard integers at or beyond `threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EventualSign {
    pub sign: Ordering,
    pub threshold: u64,
}

/// Eventual sign as `x → +∞` through standard integers.
pub(crate) fn eventual_sign(coeffs: &[FieldElem]) -> EventualSign {
    let Some(v) = coeffs.iter().filter_map(FieldElem::order).min() else {
        return EventualSign {
            sign: Ordering::Equal,
            threshold: 0,
        };
    };
    let q: Vec<BigRational> = coeffs
        .iter()
        .map(|c| {
            if c.order() == Some(v) {
                c.leading()
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let d = q.iter().rposition(|c| !c.is_zero()).expect("some leading term");
    let sign = if q[d].is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    };
    let bound = q[..d]
        .iter()
        .map(|c| (c / &q[d]).abs())
        .max()
        .map_or(BigRational::zero(), |m| m + BigRational::from_integer(1.into()));
    let threshold = bound.ceil().to_integer().to_u64().unwrap_or(u64::MAX);
    EventualSign { sign, threshold }
}

/// Eventual sign as `x → −∞`; the threshold bounds `|x|`.
pub(crate) fn eventual_sign_negative(coeffs: &[FieldElem]) -> EventualSign {
    let flipped: NPoly = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect();
    eventual_sign(&flipped)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: i64) -> FieldElem {
        FieldElem::from_int(p)
    }

    #[test]
    fn standard_polynomials() {
        // x² − 10x − 11 = (x − 11)(x + 1): positive from 12 on.
        let p = vec![f(-11), f(-10), f(1)];
        let s = eventual_sign(&p);
        assert_eq!(s.sign, Ordering::Greater);
        assert!(s.threshold >= 11);
        for x in s.threshold..s.threshold + 20 {
            assert!(poly_eval(&p, x as i64).is_positive());
        }
    }

    #[test]
    fn infinitesimal_slope_never_overtakes() {
        // ε·x − 1 stays negative for every standard x.
        let p = vec![f(-1), FieldElem::eps()];
        assert_eq!(eventual_sign(&p).sign, Ordering::Less);
        // x − 1/ε likewise.
        let q = vec![-FieldElem::eps().recip(), f(1)];
        assert_eq!(eventual_sign(&q).sign, Ordering::Less);
        assert_eq!(eventual_sign(&[]).sign, Ordering::Equal);
    }

    #[test]
    fn negative_direction() {
        let p = vec![f(3), f(1)];
        assert_eq!(eventual_sign_negative(&p).sign, Ordering::Less);
        assert_eq!(eventual_sign(&p).sign, Ordering::Greater);
    }
}
