use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in ε with rational coefficients, lowest degree first, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn constant(c: BigRational) -> Self {
        let mut p = Poly(vec![c]);
        p.trim();
        p
    }

    fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k];
        v.push(c);
        let mut p = Poly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    fn order(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn low(&self) -> &BigRational {
        &self.0[self.order()]
    }

    fn high(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn is_monomial(&self) -> bool {
        !self.is_zero() && self.0.iter().filter(|c| !c.is_zero()).count() == 1
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.0.get(i).cloned().unwrap_or_else(BigRational::zero);
            v.push(a + b);
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        let mut p = Poly(v);
        p.trim();
        p
    }

    fn scale(&self, c: &BigRational) -> Poly {
        let mut p = Poly(self.0.iter().map(|x| x * c).collect());
        p.trim();
        p
    }

    /// Divides out `ε^k`; the caller guarantees `k ≤ order`.
    fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }

    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let mut rem = self.clone();
        if rem.0.len() < d.0.len() {
            return (Poly::default(), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.0.len() - d.0.len() + 1];
        let lead = d.high().clone();
        while !rem.is_zero() && rem.0.len() >= d.0.len() {
            let shift = rem.0.len() - d.0.len();
            let c = rem.high() / &lead;
            for (i, x) in d.0.iter().enumerate() {
                rem.0[shift + i] -= &c * x;
            }
            quot[shift] = c;
            rem.0.pop();
            rem.trim();
        }
        let mut q = Poly(quot);
        q.trim();
        (q, rem)
    }

    fn monic(&self) -> Poly {
        let inv = self.high().recip();
        self.scale(&inv)
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// An element `p(ε)/q(ε)` of the ordered field ℚ(ε), where ε is a positive
/// infinitesimal.
///
/// Stored in lowest terms with the lowest-degree coefficient of the
/// denominator equal to 1, so equal elements have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: Poly,
    den: Poly,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            num: Poly::default(),
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn eps() -> Self {
        FieldElem {
            num: Poly::monomial(BigRational::one(), 1),
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        FieldElem {
            num: Poly::constant(c),
            den: Poly::constant(BigRational::one()),
        }
    }

    /// `c · ε^k` for any integer `k`.
    pub fn monomial(c: BigRational, k: i32) -> Self {
        let one = Poly::constant(BigRational::one());
        let e = k.unsigned_abs() as usize;
        if k >= 0 {
            FieldElem {
                num: Poly::monomial(c, e),
                den: one,
            }
        } else {
            Self::reduce(Poly::constant(c), Poly::monomial(BigRational::one(), e))
        }
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return FieldElem { num, den };
        }
        let (num, den) = if den.is_monomial() {
            let k = num.order().min(den.order());
            (num.shift_down(k), den.shift_down(k))
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            }
        };
        let s = den.low().recip();
        FieldElem {
            num: num.scale(&s),
            den: den.scale(&s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Exponent of the leading term of the Laurent expansion at 0⁺.
    /// Positive for infinitesimals, negative for infinite elements.
    pub fn order(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.order() as i64 - self.den.order() as i64)
        }
    }

    /// Coefficient of the leading term of the Laurent expansion.
    pub fn leading(&self) -> BigRational {
        if self.is_zero() {
            BigRational::zero()
        } else {
            self.num.low() / self.den.low()
        }
    }

    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.leading().is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.order().is_none_or(|k| k > 0)
    }

    pub fn is_infinite(&self) -> bool {
        self.order().is_some_and(|k| k < 0)
    }

    /// Nearest rational for a finite element; `None` for infinite ones.
    pub fn standard_part(&self) -> Option<BigRational> {
        match self.order() {
            None => Some(BigRational::zero()),
            Some(k) if k > 0 => Some(BigRational::zero()),
            Some(0) => Some(self.leading()),
            Some(_) => None,
        }
    }

    /// The rational value when the element does not involve ε.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.num.degree() == 0 && self.den.is_one()).then(|| self.num.0.first().cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in the field");
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.recip() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::one(), |acc, _| &acc * &base)
    }

    /// Value at a concrete positive rational ε; used only by tests.
    pub fn eval_at(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

/// Sign of `n1/d1 − n2/d2` without normalizing the difference.
fn compare(a: &FieldElem, b: &FieldElem) -> Ordering {
    if a.den == b.den {
        let diff = a.num.add(&b.num.neg());
        if diff.is_zero() {
            return Ordering::Equal;
        }
        let s = diff.low().is_positive() == a.den.low().is_positive();
        return if s { Ordering::Greater } else { Ordering::Less };
    }
    let diff = a.num.mul(&b.den).add(&b.num.mul(&a.den).neg());
    if diff.is_zero() {
        return Ordering::Equal;
    }
    let den_positive = a.den.low().is_positive() == b.den.low().is_positive();
    if diff.low().is_positive() == den_positive {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Order of ℚ(ε) with ε a positive infinitesimal.
pub fn field_compare(a: &FieldElem, b: &FieldElem) -> Ordering {
    compare(a, b)
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return FieldElem::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        FieldElem::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() || rhs.is_zero() {
            return FieldElem::zero();
        }
        FieldElem::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.recip()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl From<i64> for FieldElem {
    fn from(v: i64) -> Self {
        FieldElem::from_int(v)
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Writes `Σ c_k ε^k` as `c*eps^k` terms in increasing `k`.
fn fmt_terms(terms: &[(i64, BigRational)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let a = c.abs();
        let var = match k {
            0 => String::new(),
            1 => "eps".into(),
            _ => format!("eps^{k}"),
        };
        if var.is_empty() {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{}*{var}", fmt_rational(&a)));
        }
    }
    out
}

fn poly_terms(p: &Poly, shift: i64) -> Vec<(i64, BigRational)> {
    p.0.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64 - shift, c.clone()))
        .collect()
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_monomial() {
            // Monic monomial denominator ε^k: a Laurent polynomial.
            let k = self.den.order() as i64;
            return f.write_str(&fmt_terms(&poly_terms(&self.num, k)));
        }
        let wrap = |p: &Poly| {
            let t = poly_terms(p, 0);
            let s = fmt_terms(&t);
            if t.len() > 1 || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
