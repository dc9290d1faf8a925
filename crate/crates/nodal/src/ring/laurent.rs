//! Laurent polynomials in a half-integer power of `y`.
//!
//! Exponents are stored as integers counting units of `y^{1/2}`, so the
//! quantum integer `[n]_y = (y^{n/2} - y^{-n/2})/(y^{1/2} - y^{-1/2})`
//! is exact for every `n`.  The same type doubles as the polynomial ring
//! `Z[L]` of Grothendieck-ring classes, with `L` (the class of the affine
//! line) standing in for `y` and only nonnegative even-unit exponents used.
//!
//! Coefficients are arbitrary-precision rationals throughout; integrality
//! is asserted where it matters, never assumed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::RingError;

/// Arbitrary-precision rational coefficient.
pub type Rat = BigRational;

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for a fraction `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Finitely supported Laurent polynomial in `y^{1/2}`.
///
/// Invariants: no stored coefficient is zero and exponent keys are unique
/// (both are guaranteed by construction through `insert_term`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    /// exponent in units of `y^{1/2}` -> coefficient
    terms: BTreeMap<i64, Rat>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Laurent::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut t = Laurent::zero();
        t.insert_term(0, c);
        t
    }

    pub fn int(n: i64) -> Self {
        Laurent::constant(rat(n))
    }

    /// The monomial `c * y^{units/2}`.
    pub fn term(units: i64, c: Rat) -> Self {
        let mut t = Laurent::zero();
        t.insert_term(units, c);
        t
    }

    /// `y^k` for integer `k` (so `2k` half-units).
    pub fn y_pow(k: i64) -> Self {
        Laurent::term(2 * k, Rat::one())
    }

    /// The variable `y` itself.
    pub fn y() -> Self {
        Laurent::y_pow(1)
    }

    /// The quantum integer `[n]_y = y^{(n-1)/2} + y^{(n-3)/2} + ... + y^{-(n-1)/2}`.
    pub fn quantum(n: u32) -> Self {
        let mut t = Laurent::zero();
        let n = n as i64;
        let mut e = -(n - 1);
        while e <= n - 1 {
            t.insert_term(e, Rat::one());
            e += 2;
        }
        t
    }

    fn insert_term(&mut self, units: i64, c: Rat) {
        if !c.is_zero() {
            match self.terms.entry(units) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let s = o.get() + c;
                    if s.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut t = Laurent::zero();
        for (u, c) in terms {
            t.insert_term(u, c);
        }
        t
    }

    /// Terms as `(exponent in y^{1/2}-units, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff_units(0).is_one()
    }

    /// Coefficient of `y^{units/2}`.
    pub fn coeff_units(&self, units: i64) -> Rat {
        self.terms.get(&units).cloned().unwrap_or_else(Rat::zero)
    }

    /// Coefficient of `y^k` for integer `k`.
    pub fn coeff_y(&self, k: i64) -> Rat {
        self.coeff_units(2 * k)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff_units(0)
    }

    pub fn min_units(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_units(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is an even number of half-units, i.e. the
    /// polynomial lies in `Q[y, y^{-1}]`.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    /// True when the terms are invariant under exponent negation `y -> 1/y`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(k, c)| self.coeff_units(-k) == *c)
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integer(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// True when every exponent is a nonnegative even number of half-units,
    /// i.e. the value lies in `Q[y]` (equivalently `Q[L]`).
    pub fn is_polynomial(&self) -> bool {
        self.is_integral() && self.terms.keys().all(|k| *k >= 0)
    }

    /// `y -> 1/y`.
    pub fn invert_exponents(&self) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(k, c)| (-k, c.clone())))
    }

    /// Multiply by `y^{units/2}`.
    pub fn shift(&self, units: i64) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(k, c)| (k + units, c.clone())))
    }

    pub fn scale(&self, c: &Rat) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn pow(&self, e: u32) -> Laurent {
        let mut acc = Laurent::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse, defined only for monomials.
    pub fn inv(&self) -> Result<Laurent, RingError> {
        if self.terms.len() != 1 {
            return Err(RingError::NonUnitDivisor);
        }
        let (k, c) = self.terms.iter().next().unwrap();
        Ok(Laurent::term(-k, c.recip()))
    }

    /// Exact evaluation at a nonzero rational `y0`.
    ///
    /// When genuinely half-integral exponents are present, `y0` must be the
    /// square of a rational (the positive root is taken).
    pub fn eval(&self, y0: &Rat) -> Result<Rat, RingError> {
        if y0.is_zero() {
            if self.terms.keys().any(|k| *k < 0) {
                return Err(RingError::EvalAtZero);
            }
            return Ok(self.constant_term());
        }
        let root = if self.is_integral() { None } else { Some(rational_sqrt(y0).ok_or(RingError::EvalNeedsSquare)?) };
        let mut acc = Rat::zero();
        for (k, c) in &self.terms {
            let v = match &root {
                Some(r) => rat_pow(r, *k),
                None => rat_pow(y0, *k / 2),
            };
            acc += c * v;
        }
        Ok(acc)
    }

    /// Evaluation at `y = 1` (the sum of the coefficients).
    pub fn eval_one(&self) -> Rat {
        self.terms.values().sum()
    }

    /// Evaluation at `y = -1`; requires integral exponents.
    pub fn eval_minus_one(&self) -> Result<Rat, RingError> {
        self.eval(&rat(-1))
    }

    /// Serialization form used by the JSON interface: `[units, "coeff"]` pairs.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms.iter().map(|(k, c)| (*k, c.to_string())).collect()
    }

    pub fn from_pairs(pairs: &[(i64, String)]) -> Result<Laurent, RingError> {
        let mut t = Laurent::zero();
        for (k, s) in pairs {
            let c: Rat = s.parse().map_err(|_| RingError::Parse(s.clone()))?;
            t.insert_term(*k, c);
        }
        Ok(t)
    }
}

fn rat_pow(b: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    let base = if e > 0 { b.clone() } else { b.recip() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// The positive rational square root of `x`, when it exists.
fn rational_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

impl std::ops::Add for &Laurent {
    type Output = Laurent;
    fn add(self, other: &Laurent) -> Laurent {
        let mut t = self.clone();
        for (k, c) in &other.terms {
            t.insert_term(*k, c.clone());
        }
        t
    }
}

impl std::ops::Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, other: &Laurent) -> Laurent {
        let mut t = self.clone();
        for (k, c) in &other.terms {
            t.insert_term(*k, -c.clone());
        }
        t
    }
}

impl std::ops::Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(k, c)| (*k, -c.clone())))
    }
}

impl std::ops::Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, other: &Laurent) -> Laurent {
        let mut t = Laurent::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                t.insert_term(k1 + k2, c1 * c2);
            }
        }
        t
    }
}

impl fmt::Display for Laurent {
    /// Renders in descending exponent order, e.g. `3*y + 21 + 3*y^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match k {
                0 => String::new(),
                2 => "y".to_string(),
                k if k % 2 == 0 => format!("y^{}", k / 2),
                k => format!("y^({}/2)", k),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fmt_debug_via_display!();
}

macro_rules! fmt_debug_via_display {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt::Display::fmt(self, f)
        }
    };
}
use fmt_debug_via_display;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_square() {
        // [2]_y^2 = y + 2 + 1/y
        let two = Laurent::quantum(2);
        let sq = &two * &two;
        assert_eq!(sq, Laurent::from_terms([(2, rat(1)), (0, rat(2)), (-2, rat(1))]));
        assert!(sq.is_integral() && sq.is_symmetric());
    }

    #[test]
    fn invert_exponents_fixes_symmetric() {
        let p = Laurent::from_terms([(2, rat(3)), (0, rat(21)), (-2, rat(3))]);
        assert_eq!(p.invert_exponents(), p);
    }

    #[test]
    fn lclass_multiplication() {
        // (1 + L)(1 + L) = 1 + 2L + L^2 with L an alias for y
        let p = &Laurent::one() + &Laurent::y();
        let sq = &p * &p;
        assert_eq!(sq, Laurent::from_terms([(0, rat(1)), (2, rat(2)), (4, rat(1))]));
    }

    #[test]
    fn eval_examples() {
        // [3]_y at y = -1 is -1
        assert_eq!(Laurent::quantum(3).eval(&rat(-1)).unwrap(), rat(-1));
        // y^2 + 10y + 1 at y = 1 is 12
        let p = Laurent::from_terms([(4, rat(1)), (2, rat(10)), (0, rat(1))]);
        assert_eq!(p.eval(&rat(1)).unwrap(), rat(12));
        // [2]_y at y = 4 is 2 + 1/2
        assert_eq!(Laurent::quantum(2).eval(&rat(4)).unwrap(), ratio(5, 2));
        // half-integer exponents reject non-squares
        assert!(Laurent::quantum(2).eval(&rat(2)).is_err());
        // y = 0 rejected when negative exponents are present
        assert!(Laurent::quantum(3).eval(&rat(0)).is_err());
    }

    #[test]
    fn display_descending() {
        let p = Laurent::from_terms([(2, rat(3)), (0, rat(21)), (-2, rat(3))]);
        assert_eq!(p.to_string(), "3*y + 21 + 3*y^-1");
        assert_eq!(Laurent::quantum(2).to_string(), "y^(1/2) + y^(-1/2)");
    }

    #[test]
    fn pairs_roundtrip() {
        let p = Laurent::from_terms([(3, ratio(1, 2)), (-1, rat(-7))]);
        assert_eq!(Laurent::from_pairs(&p.to_pairs()).unwrap(), p);
    }
}
