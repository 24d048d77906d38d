use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{BivariatePoly, Monomial};
use super::rational::RationalFunction;
use super::PolyError;

/// Power series in X and Y truncated at Y-degree `n_max` (inclusive).
/// Coefficients of each `Y^n` are polynomials in X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    n_max: u32,
    poly: BivariatePoly,
}

impl TruncatedSeries {
    pub fn zero(n_max: u32) -> Self {
        TruncatedSeries {
            n_max,
            poly: BivariatePoly::zero(),
        }
    }

    pub fn from_poly(p: &BivariatePoly, n_max: u32) -> Self {
        let mut poly = BivariatePoly::zero();
        for (m, c) in p.terms() {
            if m.y <= n_max {
                poly.add_term(*m, c.clone());
            }
        }
        TruncatedSeries { n_max, poly }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn as_poly(&self) -> &BivariatePoly {
        &self.poly
    }

    pub fn coeff(&self, m: u32, n: u32) -> BigInt {
        self.poly.coeff(m, n)
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: BigInt) {
        if n <= self.n_max {
            self.poly.add_term(Monomial::new(m, n), c);
        }
    }

    pub fn truncate(&self, n_max: u32) -> Self {
        Self::from_poly(&self.poly, n_max.min(self.n_max))
    }

    /// Coefficient of `Y^n` as a polynomial in X.
    pub fn slice(&self, n: u32) -> BivariatePoly {
        self.poly.y_slice(n)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.n_max.min(other.n_max);
        Self::from_poly(&(&self.poly + &other.poly), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.n_max.min(other.n_max);
        Self::from_poly(&(&self.poly - &other.poly), n)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            n_max: self.n_max,
            poly: self.poly.scale(c),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n_max = self.n_max.min(other.n_max);
        let mut poly = BivariatePoly::zero();
        for (ma, ca) in self.poly.terms() {
            for (mb, cb) in other.poly.terms() {
                if ma.y + mb.y <= n_max {
                    poly.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), ca * cb);
                }
            }
        }
        TruncatedSeries { n_max, poly }
    }

    /// The part with no X, i.e. the series at `X = 0`.
    pub fn at_x_zero(&self) -> Self {
        let mut out = Self::zero(self.n_max);
        for (m, c) in self.poly.terms() {
            if m.x == 0 {
                out.poly.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Divide by X; every term must contain X.
    pub fn div_x(&self) -> Result<Self, PolyError> {
        Ok(TruncatedSeries {
            n_max: self.n_max,
            poly: self.poly.div_monomial(1, 0)?,
        })
    }

    /// Exact division of every Y-slice by `X - 2`.
    pub fn div_x_minus_2(&self) -> Result<Self, PolyError> {
        let mut out = Self::zero(self.n_max);
        for n in 0..=self.n_max {
            let s = self.slice(n);
            if s.is_zero() {
                continue;
            }
            let deg = s.degree_x();
            // synthetic division by (X - 2), from the top
            let mut carry = BigInt::zero();
            let mut q = Vec::with_capacity(deg as usize);
            for e in (1..=deg).rev() {
                carry = s.coeff(e, 0) + carry * BigInt::from(2);
                q.push((e - 1, carry.clone()));
            }
            let rem = s.coeff(0, 0) + carry * BigInt::from(2);
            if !rem.is_zero() {
                return Err(PolyError::NotExact);
            }
            for (e, c) in q {
                out.poly.add_term(Monomial::new(e, n), c);
            }
        }
        Ok(out)
    }

    /// Mass `sum_m c_{m,n} 2^m` of each Y-slice, for n = 0..=n_max.
    pub fn masses(&self) -> Vec<BigInt> {
        let mut out = alloc::vec![BigInt::zero(); self.n_max as usize + 1];
        for (m, c) in self.poly.terms() {
            out[m.y as usize] += c << m.x as usize;
        }
        out
    }
}

/// Expand `f` as a power series up to Y-degree `n_max`. Requires the Y^0 part
/// of the denominator to be exactly 1.
pub fn expand_rational(f: &RationalFunction, n_max: u32) -> Result<TruncatedSeries, PolyError> {
    let den = f.den();
    if !den.y_slice(0).is_one() {
        return Err(PolyError::NonInvertibleDenominator);
    }
    let mut den_slices: BTreeMap<u32, BivariatePoly> = BTreeMap::new();
    for k in 1..=den.degree_y().min(n_max) {
        let s = den.y_slice(k);
        if !s.is_zero() {
            den_slices.insert(k, s);
        }
    }
    let mut g: Vec<BivariatePoly> = Vec::with_capacity(n_max as usize + 1);
    let mut out = TruncatedSeries::zero(n_max);
    for n in 0..=n_max {
        let mut gn = f.num().y_slice(n);
        for (k, dk) in &den_slices {
            if *k > n {
                break;
            }
            gn = &gn - &(dk * &g[(n - k) as usize]);
        }
        for (m, c) in gn.terms() {
            out.poly.add_term(Monomial::new(m.x, n), c.clone());
        }
        g.push(gn);
    }
    Ok(out)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(Y^{})", self.poly, self.n_max + 1)
    }
}
