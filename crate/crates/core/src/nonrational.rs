//! The element `b = (b, b sigma) sigma`, which is not Phi-finite.
//!
//! Its sections are the words `w_{r,P} = b sigma^{p_0} b sigma^{p_1} ... b sigma^{p_{2^r-1}}`
//! indexed by polynomials `P = sum p_i T^i` over F_2 of degree below `2^r`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::olgf::{series_psi, OlgfError};
use crate::poly_series::{GF2Poly, Order, TruncatedSeries};
use crate::tree_group::{cycle_lengths, Engine, Equality, RecursionSystem, TreeError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonRationalError {
    #[error("deg P = {deg} is not below 2^r = {bound}")]
    DegreeTooLarge { deg: u32, bound: u64 },
    #[error("r = {0} is out of range")]
    BadLevel(u32),
    #[error("non-integral term X^{m} Y^{n}")]
    IntegralityViolation { m: u32, n: u32 },
    #[error("ord_(T-1) P = {0:?} is not below 2^r - 1")]
    OrderTooLarge(Order),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Olgf(#[from] OlgfError),
}

/// `(r, P)` with `deg P < 2^r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WrpSpec {
    r: u32,
    p: GF2Poly,
}

impl WrpSpec {
    pub fn new(r: u32, p: GF2Poly) -> Result<Self, NonRationalError> {
        if r == 0 || r > 20 {
            return Err(NonRationalError::BadLevel(r));
        }
        let bound = 1u64 << r;
        if let Some(deg) = p.degree() {
            if deg as u64 >= bound {
                return Err(NonRationalError::DegreeTooLarge { deg, bound });
            }
        }
        Ok(WrpSpec { r, p })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn p(&self) -> &GF2Poly {
        &self.p
    }

    /// `2^r`, the number of letters `b`.
    pub fn width(&self) -> u32 {
        1 << self.r
    }

    /// Every `P` of degree below `2^r`.
    pub fn all(r: u32) -> Vec<WrpSpec> {
        let w = 1u32 << r;
        assert!(w <= 16, "enumeration only for r <= 2");
        (0..1u32 << w)
            .map(|bits| {
                let c: Vec<u8> = (0..w).map(|i| (bits >> i & 1) as u8).collect();
                WrpSpec {
                    r,
                    p: GF2Poly::from_coeffs(&c),
                }
            })
            .collect()
    }
}

/// Text of `w_{r,P}` in the syntax of the `b` system.
pub fn wrp_text(spec: &WrpSpec) -> String {
    let mut out = String::new();
    for i in 0..spec.width() {
        if i > 0 {
            out.push(' ');
        }
        out.push('b');
        if spec.p.coeff(i) {
            out.push_str(" sigma");
        }
    }
    out
}

/// `w_{r,P}` as a word of `sys`, which must define `b`.
pub fn wrp_word(sys: &RecursionSystem, spec: &WrpSpec) -> Word {
    sys.parse_word(&wrp_text(spec)).expect("b is defined")
}

/// Reads `w_{r,P}` back from a word, if it has that shape.
pub fn wrp_of_word(sys: &RecursionSystem, w: &Word) -> Option<WrpSpec> {
    let text = sys.display_word(w);
    let mut coeffs: Vec<u8> = Vec::new();
    for tok in text.split_whitespace() {
        match tok {
            "b" => coeffs.push(0),
            "sigma" => {
                let last = coeffs.last_mut()?;
                if *last == 1 {
                    return None;
                }
                *last = 1;
            }
            _ => return None,
        }
    }
    let n = coeffs.len();
    if n < 2 || !n.is_power_of_two() {
        return None;
    }
    WrpSpec::new(n.trailing_zeros(), GF2Poly::from_coeffs(&coeffs)).ok()
}

/// The polynomials with `w_{r,P} = (w_{r,Q}, w_{r,R}) sigma^{P(1)}` and
/// `w_{r,Q} w_{r,R} = w_{r+1,S}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qrs {
    pub q: WrpSpec,
    pub r: WrpSpec,
    pub s: WrpSpec,
}

/// `Q = (P T - P(1) T^(2^r)) / (T - 1) + T (T - 1)^(2^r - 2)`,
/// `R = Q + (T - 1)^(2^r - 1)`, `S = Q + T^(2^r) R`.
pub fn qrs_transform(spec: &WrpSpec) -> Qrs {
    let w = spec.width();
    let t1 = GF2Poly::t_plus_one();
    let mut top = spec.p.shl(1);
    if spec.p.eval_one() {
        top = top.add(&GF2Poly::monomial(w));
    }
    let q = top
        .div_t_minus_one()
        .expect("divisible by construction")
        .add(&t1.pow(w - 2).shl(1));
    let r = q.add(&t1.pow(w - 1));
    let s = q.add(&r.shl(w));
    let mk = |p: GF2Poly, lvl: u32| WrpSpec::new(lvl, p).expect("degree bound");
    Qrs {
        q: mk(q, spec.r),
        r: mk(r, spec.r),
        s: mk(s, spec.r + 1),
    }
}

/// Outcome of checking the section identity for one `(r, P)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectionCheck {
    pub flip_ok: bool,
    /// Sections agree with `w_Q`, `w_R` on every level up to the depth.
    pub sections_ok: bool,
    /// `w_Q w_R` agrees with `w_S` on every level up to the depth.
    pub product_ok: bool,
}

impl SectionCheck {
    pub fn holds(&self) -> bool {
        self.flip_ok && self.sections_ok && self.product_ok
    }
}

fn agree(eng: &mut Engine<'_>, a: &Word, b: &Word, depth: u32) -> Result<bool, TreeError> {
    match eng.elements_equal(a, b) {
        Equality::Equal => Ok(true),
        Equality::NotEqual { .. } => Ok(false),
        Equality::Unknown => {
            Ok(eng.level_permutation(a, depth)? == eng.level_permutation(b, depth)?)
        }
    }
}

/// Checks `w_{r,P} = (w_{r,Q}, w_{r,R}) sigma^{P(1)}` and `w_{r,Q} w_{r,R} = w_{r+1,S}`.
pub fn check_sections(
    eng: &mut Engine<'_>,
    spec: &WrpSpec,
    depth: u32,
) -> Result<SectionCheck, NonRationalError> {
    let sys = eng.system();
    let qrs = qrs_transform(spec);
    let w = wrp_word(sys, spec);
    let (wq, wr, ws) = (
        wrp_word(sys, &qrs.q),
        wrp_word(sys, &qrs.r),
        wrp_word(sys, &qrs.s),
    );
    let sec = sys.section_of(&w);
    let flip_ok = sec.flip == spec.p.eval_one();
    let sections_ok = agree(eng, &sec.left, &wq, depth)? && agree(eng, &sec.right, &wr, depth)?;
    let product_ok = agree(eng, &sys.product(&wq, &wr), &ws, depth)?;
    Ok(SectionCheck {
        flip_ok,
        sections_ok,
        product_ok,
    })
}

/// `sum_m 2^k X^m Y^n` with integrality checked; terms past `n_max` are dropped.
fn dyadic_sum(
    n_max: u32,
    terms: impl Iterator<Item = (u32, u32, i64)>,
) -> Result<TruncatedSeries, NonRationalError> {
    let mut s = TruncatedSeries::zero(n_max);
    for (m, n, k) in terms {
        if n > n_max {
            continue;
        }
        if k < 0 {
            return Err(NonRationalError::IntegralityViolation { m, n });
        }
        s.add_term(m, n, BigInt::from(1) << k as u32);
    }
    Ok(s)
}

/// `m` with `2^(m+shift) <= n_max + 2^shift`, enough to cover the truncation.
fn m_range(shift: u32, n_max: u32) -> core::ops::RangeInclusive<u32> {
    let mut m = 0;
    while m < 40 && (1u64 << (m + 1 + shift)) <= n_max as u64 + (1u64 << shift) {
        m += 1;
    }
    0..=m
}

/// `Omega_r = sum_m (X/2)^m (2Y)^(2^(m+r) - 2^r)`.
pub fn omega_series(r: u32, n_max: u32) -> Result<TruncatedSeries, NonRationalError> {
    let base = 1i64 << r;
    dyadic_sum(
        n_max,
        m_range(r, n_max).map(|m| {
            let e = (1i64 << (m + r)) - base;
            (m, e as u32, e - m as i64)
        }),
    )
}

/// `2^d Y^(d+1) Omega_r` with `d = ord_(T-1) P`, the closed form of `Psi_{w_{r,P}}`.
pub fn psi_wrp_closed(spec: &WrpSpec, n_max: u32) -> Result<TruncatedSeries, NonRationalError> {
    let d = match spec.p.ord_t_minus_one() {
        Order::Finite(d) if d + 1 < spec.width() => d,
        o => return Err(NonRationalError::OrderTooLarge(o)),
    };
    let base = 1i64 << spec.r;
    dyadic_sum(
        n_max,
        m_range(spec.r, n_max).map(|m| {
            let e = (1i64 << (m + spec.r)) - base;
            (m, e as u32 + d + 1, e - m as i64 + d as i64)
        }),
    )
}

/// `Psi_{w_{r,P}}` from the orbit counts of the word itself.
pub fn psi_wrp_series(
    eng: &mut Engine<'_>,
    spec: &WrpSpec,
    n_max: u32,
) -> Result<TruncatedSeries, NonRationalError> {
    let w = wrp_word(eng.system(), spec);
    Ok(series_psi(eng, &w, n_max)?)
}

/// `Psi_b = 1/2 sum_m (X/2)^m (2Y)^(2^m)`.
pub fn psi_b_closed(n_max: u32) -> TruncatedSeries {
    dyadic_sum(
        n_max,
        m_range(0, n_max).map(|m| {
            let e = 1i64 << m;
            (m, e as u32, e - m as i64 - 1)
        }),
    )
    .expect("2^m > m")
}

/// `Phi_b = 1 + sum_{m>=1} sum_{2^(m-1) <= n < 2^m} 2^(n-m) X^m Y^n`.
pub fn phi_b_closed(n_max: u32) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(n_max);
    s.add_term(0, 0, BigInt::from(1));
    for n in 1..=n_max {
        let m = 32 - n.leading_zeros();
        s.add_term(m, n, BigInt::from(1) << (n - m));
    }
    s
}

/// Smallest power of two greater than `n`.
pub fn b_orbit_length(n: u32) -> u32 {
    1 << (32 - n.leading_zeros())
}

/// Whether every orbit of `b` on level `n` has length [`b_orbit_length`].
pub fn check_orbit_lengths(eng: &mut Engine<'_>, n: u32) -> Result<bool, NonRationalError> {
    let b = eng.system().generator("b").expect("b is defined");
    let perm = eng.level_permutation(&b, n)?;
    let want = b_orbit_length(n);
    Ok(cycle_lengths(&perm).iter().all(|&c| c == want))
}

/// Whether `b^(2^m)` fixes level `2^m - 1` and moves every vertex of level `2^m`.
pub fn check_power_fixes(eng: &mut Engine<'_>, m: u32) -> Result<bool, NonRationalError> {
    let sys = eng.system();
    let b = sys.generator("b").expect("b is defined");
    let w = sys.power(&b, 1 << m);
    let lvl = 1u32 << m;
    let below = eng.level_permutation(&w, lvl - 1)?;
    let at = eng.level_permutation(&w, lvl)?;
    let fixes = below.iter().enumerate().all(|(i, &v)| v as usize == i);
    let moves = at.iter().enumerate().all(|(i, &v)| v as usize != i);
    Ok(fixes && moves)
}

#[cfg(test)]
mod tests;
