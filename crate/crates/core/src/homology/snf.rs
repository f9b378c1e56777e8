use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// Smith normal form `U · A · V = D` of an integer matrix.
///
/// `invariants` lists the nonzero diagonal entries of `D`, positive and
/// forming a divisibility chain; their count is the rank. The inverses of
/// the transforms are tracked alongside so callers can change coordinates
/// in both directions without a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row(dst, src, c);
        self.u.add_row(dst, src, c);
        self.u_inv.add_col(src, dst, &-c);
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col(dst, src, c);
        self.v.add_col(dst, src, c);
        self.v_inv.add_row(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero absolute value in the lower-right block from `t`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` using the pivot at `(t, t)`, re-pivoting on
    /// the smallest remainder until everything off the pivot vanishes.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let mut dirty = false;
            for i in t + 1..self.a.rows() {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                self.add_row(i, t, &-q);
                dirty |= !self.a[(i, t)].is_zero();
            }
            for j in t + 1..self.a.cols() {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                self.add_col(j, t, &-q);
                dirty |= !self.a[(t, j)].is_zero();
            }
            if !dirty {
                return;
            }
            // Move the smallest nonzero entry of the cross to the pivot.
            let mut best = (t, t);
            for i in t + 1..self.a.rows() {
                let x = &self.a[(i, t)];
                if !x.is_zero() && x.abs() < self.a[best].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..self.a.cols() {
                let x = &self.a[(t, j)];
                if !x.is_zero() && x.abs() < self.a[best].abs() {
                    best = (t, j);
                }
            }
            self.swap_rows(t, best.0);
            self.swap_cols(t, best.1);
        }
    }
}

/// Smith normal form by smallest-entry pivoting with gcd reduction.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        u: IntegerMatrix::identity(m),
        u_inv: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
        v_inv: IntegerMatrix::identity(n),
    };
    let mut invariants = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = r.min_pivot(t) else {
            break;
        };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            r.clear_cross(t);
            // Divisibility: fold an offending row into the pivot row.
            let pivot = r.a[(t, t)].clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !r.a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        invariants.push(r.a[(t, t)].clone());
    }
    SmithForm {
        d: r.a,
        u: r.u,
        u_inv: r.u_inv,
        v: r.v,
        v_inv: r.v_inv,
        invariants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &IntegerMatrix, s: &SmithForm) {
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(a.cols()));
        for w in s.invariants.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j || i >= s.rank() {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn diagonal_already_reduced() {
        let a = IntegerMatrix::from_rows(&[[2, 0], [0, 6]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.invariants, ints(&[2, 6]));
    }

    #[test]
    fn zero_matrix_has_no_invariants() {
        let a = IntegerMatrix::zeros(3, 2);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert!(s.invariants.is_empty());
    }

    #[test]
    fn hand_reduced_example() {
        let a = IntegerMatrix::from_rows(&[[2, 4], [6, 8]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.invariants, ints(&[2, 4]));
    }

    #[test]
    fn non_divisible_diagonal_is_fixed() {
        let a = IntegerMatrix::from_rows(&[[2, 0], [0, 3]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.invariants, ints(&[1, 6]));
    }

    #[test]
    fn degenerate_shapes() {
        for a in [IntegerMatrix::zeros(0, 3), IntegerMatrix::zeros(2, 0)] {
            let s = smith_normal_form(&a);
            check(&a, &s);
            assert!(s.invariants.is_empty());
        }
    }

    proptest! {
        #[test]
        fn transforms_and_chain(rows in 1usize..5, cols in 1usize..5,
                                entries in proptest::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| entries[i * 5 + j]).collect())
                .collect();
            let a = IntegerMatrix::from_rows(&data);
            let s = smith_normal_form(&a);
            check(&a, &s);
            if rows == cols {
                let det = a.determinant();
                if !det.is_zero() {
                    let prod: BigInt = s.invariants.iter().product();
                    prop_assert_eq!(prod, det.abs());
                }
            }
        }
    }
}
