use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exponent pair `X^x Y^y`. Ordered lexicographically with Y first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in Z[X,Y]. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, x: u32, y: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial { x, y }, c.into());
        p
    }

    /// `1 - c X^a Y^b`
    pub fn one_minus(c: impl Into<BigInt>, a: u32, b: u32) -> Self {
        &Self::one() - &Self::monomial(c, a, b)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (x, y, c) in terms {
            p.add_term(Monomial { x, y }, c.into());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0, 0).is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn coeff(&self, x: u32, y: u32) -> BigInt {
        self.terms
            .get(&Monomial { x, y })
            .cloned()
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    /// Leading term in the Y-major lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    /// Largest monomial dividing every term, `(ord_X, ord_Y)`.
    pub fn monomial_order(&self) -> (u32, u32) {
        let ox = self.terms.keys().map(|m| m.x).min().unwrap_or(0);
        let oy = self.terms.keys().map(|m| m.y).min().unwrap_or(0);
        (ox, oy)
    }

    /// gcd of the integer coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Divide every coefficient by `c`, which must divide them exactly.
    pub fn div_scalar(&self, c: &BigInt) -> Result<Self, PolyError> {
        let mut out = BTreeMap::new();
        for (m, v) in &self.terms {
            let (q, r) = v.div_rem(c);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            out.insert(*m, q);
        }
        Ok(BivariatePoly { terms: out })
    }

    pub fn mul_monomial(&self, x: u32, y: u32) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    (
                        Monomial {
                            x: m.x + x,
                            y: m.y + y,
                        },
                        v.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Divide by `X^x Y^y`, which must divide every term.
    pub fn div_monomial(&self, x: u32, y: u32) -> Result<Self, PolyError> {
        let mut out = BTreeMap::new();
        for (m, v) in &self.terms {
            if m.x < x || m.y < y {
                return Err(PolyError::NotDivisible);
            }
            out.insert(
                Monomial {
                    x: m.x - x,
                    y: m.y - y,
                },
                v.clone(),
            );
        }
        Ok(BivariatePoly { terms: out })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division. Fails with `NotDivisible` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if other.terms.len() == 1 {
            let (m, c) = other.leading().unwrap();
            return self.div_monomial(m.x, m.y)?.div_scalar(c);
        }
        let (lm, lc) = other.leading().map(|(m, c)| (*m, c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            if !lm.divides(&rm) {
                return Err(PolyError::NotDivisible);
            }
            let (qc, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let (qx, qy) = (rm.x - lm.x, rm.y - lm.y);
            for (m, c) in &other.terms {
                rem.add_term(
                    Monomial {
                        x: m.x + qx,
                        y: m.y + qy,
                    },
                    -(c * &qc),
                );
            }
            quot.add_term(Monomial { x: qx, y: qy }, qc);
        }
        Ok(quot)
    }

    /// Substitute `X = v`, giving a polynomial in Y only.
    pub fn eval_x(&self, v: i64) -> Self {
        let v = BigInt::from(v);
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial { x: 0, y: m.y }, c * v.pow(m.x));
        }
        out
    }

    /// Substitute `Y = v`, giving a polynomial in X only.
    pub fn eval_y(&self, v: i64) -> Self {
        let v = BigInt::from(v);
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial { x: m.x, y: 0 }, c * v.pow(m.y));
        }
        out
    }

    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        self.eval_x(x).eval_y(y).constant_term()
    }

    /// Coefficient of `Y^n` as a polynomial in X (returned with y = 0).
    pub fn y_slice(&self, n: u32) -> Self {
        let mut out = Self::zero();
        for (m, c) in self
            .terms
            .range(Monomial { x: 0, y: n }..=Monomial { x: u32::MAX, y: n })
        {
            out.terms.insert(Monomial { x: m.x, y: 0 }, c.clone());
        }
        out
    }

    /// Multiply by a unit so the constant term, or failing that the leading
    /// coefficient, is positive. Returns the unit used.
    pub fn unit_normalize(&mut self) -> i8 {
        let negative = match self.terms.get(&Monomial::ONE) {
            Some(c) => c.is_negative(),
            None => self
                .leading()
                .map(|(_, c)| c.is_negative())
                .unwrap_or(false),
        };
        if negative {
            for v in self.terms.values_mut() {
                *v = -core::mem::take(v);
            }
            -1
        } else {
            1
        }
    }

    /// Terms in display order: total degree, then e_Y, then e_X.
    pub fn display_terms(&self) -> Vec<(Monomial, BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|(m, _)| (m.x + m.y, m.y, m.x));
        v
    }
}

impl From<i64> for BivariatePoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(
                    Monomial {
                        x: ma.x + mb.x,
                        y: ma.y + mb.y,
                    },
                    ca * cb,
                );
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for BivariatePoly {
            type Output = BivariatePoly;
            fn $f(self, rhs: BivariatePoly) -> BivariatePoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut parts: Vec<alloc::string::String> = Vec::new();
            if !a.is_one() || (m.x == 0 && m.y == 0) {
                parts.push(alloc::format!("{a}"));
            }
            match m.x {
                0 => {}
                1 => parts.push("X".into()),
                e => parts.push(alloc::format!("X^{e}")),
            }
            match m.y {
                0 => {}
                1 => parts.push("Y".into()),
                e => parts.push(alloc::format!("Y^{e}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}
