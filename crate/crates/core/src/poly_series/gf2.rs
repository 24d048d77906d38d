use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Polynomial over F_2 in the variable T, packed 64 coefficients per word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Poly {
    words: Vec<u64>,
}

/// Order of vanishing at `T = 1`; the zero polynomial has infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl GF2Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `T^k`
    pub fn monomial(k: u32) -> Self {
        let mut p = Self::zero();
        p.set(k, true);
        p
    }

    /// `T + 1`, which equals `T - 1` over F_2.
    pub fn t_plus_one() -> Self {
        Self::from_coeffs(&[1, 1])
    }

    /// Coefficients from the constant term upward.
    pub fn from_coeffs(c: &[u8]) -> Self {
        let mut p = Self::zero();
        for (i, &b) in c.iter().enumerate() {
            if b & 1 == 1 {
                p.set(i as u32, true);
            }
        }
        p
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn set(&mut self, k: u32, v: bool) {
        let (w, b) = ((k / 64) as usize, k % 64);
        if self.words.len() <= w {
            if !v {
                return;
            }
            self.words.resize(w + 1, 0);
        }
        if v {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn coeff(&self, k: u32) -> bool {
        let (w, b) = ((k / 64) as usize, k % 64);
        self.words.get(w).is_some_and(|x| (x >> b) & 1 == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        let last = *self.words.last()?;
        Some((self.words.len() as u32 - 1) * 64 + 63 - last.leading_zeros())
    }

    pub fn coeffs(&self) -> Vec<u8> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff(k) as u8).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let mut words = vec![0u64; n];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0);
        }
        let mut p = GF2Poly { words };
        p.trim();
        p
    }

    pub fn shl(&self, k: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = ((k / 64) as usize, k % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] |= w << bs;
            if bs > 0 {
                words[i + ws + 1] |= w >> (64 - bs);
            }
        }
        let mut p = GF2Poly { words };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        if let Some(d) = other.degree() {
            for k in 0..=d {
                if other.coeff(k) {
                    acc = acc.add(&self.shl(k));
                }
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at `T = 1`.
    pub fn eval_one(&self) -> bool {
        self.words.iter().map(|w| w.count_ones()).sum::<u32>() % 2 == 1
    }

    /// Exact division by `T - 1`; `None` if `T - 1` does not divide.
    pub fn div_t_minus_one(&self) -> Option<Self> {
        if self.eval_one() {
            return None;
        }
        let Some(d) = self.degree() else {
            return Some(Self::zero());
        };
        // q_{k-1} = sum_{j >= k} p_j
        let mut q = Self::zero();
        let mut run = false;
        for k in (1..=d).rev() {
            run ^= self.coeff(k);
            if run {
                q.set(k - 1, true);
            }
        }
        Some(q)
    }

    /// `ord_{T-1}`.
    pub fn ord_t_minus_one(&self) -> Order {
        if self.is_zero() {
            return Order::Infinite;
        }
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_t_minus_one() {
            p = q;
            k += 1;
        }
        Order::Finite(k)
    }
}

impl fmt::Display for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for k in 0..=d {
            if !self.coeff(k) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => f.write_str("1")?,
                1 => f.write_str("T")?,
                _ => write!(f, "T^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = GF2Poly::t_plus_one();
        assert_eq!(a.mul(&a), GF2Poly::from_coeffs(&[1, 0, 1]));
        assert_eq!(a.pow(4), GF2Poly::from_coeffs(&[1, 0, 0, 0, 1]));
        let big = GF2Poly::monomial(130).add(&GF2Poly::one());
        assert_eq!(big.degree(), Some(130));
        assert_eq!(big.shl(70).degree(), Some(200));
    }

    #[test]
    fn order_at_one() {
        let a = GF2Poly::t_plus_one();
        assert_eq!(
            a.pow(5)
                .mul(&GF2Poly::from_coeffs(&[1, 1, 1]))
                .ord_t_minus_one(),
            Order::Finite(5)
        );
        assert_eq!(GF2Poly::zero().ord_t_minus_one(), Order::Infinite);
        assert_eq!(GF2Poly::monomial(3).ord_t_minus_one(), Order::Finite(0));
        assert_eq!(a.pow(3).div_t_minus_one(), Some(a.pow(2)));
    }
}
