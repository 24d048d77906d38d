use core::fmt;

use super::gcd::poly_gcd;
use super::poly::BivariatePoly;
use super::PolyError;

/// Reduced quotient `num / den` in Q(X,Y).
///
/// Canonical form: `gcd(num, den) = 1`, and `den` is unit-normalized (positive
/// constant term when it has one). Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: BivariatePoly,
    den: BivariatePoly,
}

impl RationalFunction {
    pub fn new(num: BivariatePoly, den: BivariatePoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let mut r = RationalFunction { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_poly(p: BivariatePoly) -> Self {
        RationalFunction {
            num: p,
            den: BivariatePoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(BivariatePoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(BivariatePoly::one())
    }

    pub fn num(&self) -> &BivariatePoly {
        &self.num
    }

    pub fn den(&self) -> &BivariatePoly {
        &self.den
    }

    pub fn into_parts(self) -> (BivariatePoly, BivariatePoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = BivariatePoly::one();
            return;
        }
        let g = poly_gcd(&self.num, &self.den);
        if !g.is_one() {
            self.num = self.num.exact_div(&g).expect("gcd divides numerator");
            self.den = self.den.exact_div(&g).expect("gcd divides denominator");
        }
        if self.den.unit_normalize() < 0 {
            self.num = -&self.num;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .unwrap()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn mul_poly(&self, p: &BivariatePoly) -> Self {
        Self::new(&self.num * p, self.den.clone()).unwrap()
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// `(num(v, Y), den(v, Y))` without cancelling.
    pub fn eval_x(&self, v: i64) -> (BivariatePoly, BivariatePoly) {
        (self.num.eval_x(v), self.den.eval_x(v))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes() {
        let num = BivariatePoly::one_minus(1, 2, 2);
        let den = -&(BivariatePoly::one_minus(1, 1, 1).pow(2));
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r.den(), &BivariatePoly::one_minus(1, 1, 1));
        assert_eq!(
            r.num(),
            &-&BivariatePoly::from_terms([(0, 0, 1), (1, 1, 1)])
        );
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(
            RationalFunction::new(BivariatePoly::one(), BivariatePoly::zero()),
            Err(PolyError::ZeroDenominator)
        );
    }
}
