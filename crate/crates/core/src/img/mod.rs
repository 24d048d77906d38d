//! The groups `Gamma_x` generated by `b_1, ..., b_r` for a quadratic polynomial
//! whose critical point is periodic (`s = 0`) or strictly pre-periodic
//! (`0 < s < r`), together with the sign, condition and denominator machinery.

mod combinatorics;
mod denominators;
mod irreducible;
mod signs;

pub use combinatorics::CombinatoricsTable;
pub use denominators::{
    class_index, closed_form_d_ell, closed_form_d_k, denominator_table, denominator_table_with,
    middle_range, phi_j, psi_j, psi_j_periodic, psi_j_preperiodic, unconditioned_lcms, ClassEntry,
    DenominatorReport, JDenominators, LcmMemo,
};
pub use irreducible::{
    conjugacy_crosscheck, find_irreducible, irreducible_phi_crosscheck, with_split_generators,
    DEFAULT_STEP_BUDGET,
};
pub use signs::{
    check_condition_periodic, check_conditions, check_conditions_preperiodic, closed_form_sign,
    condition_a, condition_a_prime, j_of,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::olgf::OlgfError;
use crate::tree_group::{GenId, Letter, RecursionSystem, Rule, SystemBuilder, TreeError, Word};

/// Largest `r` accepted by the subset enumerations.
pub const DEFAULT_R_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImgError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("r = {r} exceeds the cap {cap}")]
    CapExceeded { r: usize, cap: usize },
    #[error("the subset J must be nonempty")]
    EmptySubset,
    #[error("J = {0} violates the conditions")]
    ConditionViolated(SubsetJ),
    #[error("budget exhausted: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Olgf(#[from] OlgfError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    Periodic,
    PrePeriodic,
}

/// Subset of `{1, ..., r}`; bit `i - 1` holds `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetJ(pub u32);

impl SubsetJ {
    pub fn empty() -> Self {
        SubsetJ(0)
    }

    pub fn full(r: usize) -> Self {
        SubsetJ(((1u64 << r) - 1) as u32)
    }

    pub fn from_members(ms: &[usize]) -> Self {
        let mut j = SubsetJ(0);
        for &i in ms {
            j.insert(i);
        }
        j
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!((1..=32).contains(&i));
        self.0 |= 1 << (i - 1);
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 >> (i - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    pub fn is_subset(&self, other: &SubsetJ) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(&self, other: &SubsetJ) -> SubsetJ {
        SubsetJ(self.0 | other.0)
    }
}

impl fmt::Display for SubsetJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Parameters of `Gamma_x` and its recursion system on generators `b1..br`.
#[derive(Clone, Debug)]
pub struct ImgGroupSpec {
    pub case: Case,
    pub r: usize,
    /// 0 in the periodic case.
    pub s: usize,
    /// `(x_2, ..., x_r)`.
    pub x: Vec<u8>,
    /// `pi[i]` for `1 <= i <= r`; `pi[0]` is unused.
    pub pi: Vec<usize>,
    /// `gcd(s, r - s)`, pre-periodic only.
    pub p: usize,
    /// `(r - s) / p`, pre-periodic only.
    pub q: usize,
    pub system: RecursionSystem,
}

impl ImgGroupSpec {
    /// `x_i` for `2 <= i <= r`.
    pub fn x_i(&self, i: usize) -> u8 {
        self.x[i - 2]
    }

    /// Order of `pi`.
    pub fn period(&self) -> usize {
        match self.case {
            Case::Periodic => self.r,
            Case::PrePeriodic => self.s.lcm(&(self.r - self.s)),
        }
    }

    pub fn pi_set(&self, j: SubsetJ) -> SubsetJ {
        let mut out = SubsetJ::empty();
        for i in j.members() {
            out.insert(self.pi[i]);
        }
        out
    }

    /// `pi^n(J)` for `n = 0, ..., period - 1`.
    pub fn pi_orbit(&self, j: SubsetJ) -> Vec<SubsetJ> {
        let mut out = Vec::with_capacity(self.period());
        let mut cur = j;
        for _ in 0..self.period() {
            out.push(cur);
            cur = self.pi_set(cur);
        }
        out
    }

    /// Class of a subset: `|J|` in the periodic case, `|J ∩ {1..s}|` otherwise.
    pub fn class_of(&self, j: SubsetJ) -> usize {
        class_index(self.case, self.s, j)
    }

    pub fn gen_name(i: usize) -> String {
        format!("b{i}")
    }

    pub fn gen_id(&self, i: usize) -> GenId {
        self.system
            .id(&Self::gen_name(i))
            .expect("generator exists")
    }

    /// `b_{i_1} ... b_{i_k}` over the members of `J` in ascending order.
    pub fn product_word(&self, j: SubsetJ) -> Word {
        let letters = j
            .members()
            .into_iter()
            .map(|i| Letter::gen(self.gen_id(i)))
            .collect();
        self.system.normalize(&Word::from_letters(letters))
    }

    /// All `2^(r-1)` tuples `x` for the given `r`.
    pub fn all_tuples(r: usize) -> Vec<Vec<u8>> {
        let n = r.saturating_sub(1);
        (0..1u32 << n)
            .map(|m| (0..n).map(|k| ((m >> k) & 1) as u8).collect())
            .collect()
    }
}

fn validate(case: Case, r: usize, s: usize, x: &[u8]) -> Result<(), ImgError> {
    if r == 0 || r > 32 {
        return Err(ImgError::InvalidParameters(format!(
            "r = {r} must lie in 1..=32"
        )));
    }
    match case {
        Case::Periodic if s != 0 => {
            return Err(ImgError::InvalidParameters(format!(
                "periodic case needs s = 0, got {s}"
            )))
        }
        Case::PrePeriodic if s == 0 || s >= r => {
            return Err(ImgError::InvalidParameters(format!(
                "need 0 < s < r, got r = {r}, s = {s}"
            )))
        }
        _ => {}
    }
    if x.len() != r - 1 {
        return Err(ImgError::InvalidParameters(format!(
            "x must have r - 1 = {} entries, got {}",
            r - 1,
            x.len()
        )));
    }
    if x.iter().any(|&v| v > 1) {
        return Err(ImgError::InvalidParameters(
            "x entries must be 0 or 1".into(),
        ));
    }
    Ok(())
}

fn pi_table(case: Case, r: usize, s: usize) -> Vec<usize> {
    let mut pi = vec![0; r + 1];
    for i in 1..=r {
        pi[i] = match case {
            Case::Periodic if i == 1 => r,
            Case::PrePeriodic if i == 1 => s,
            Case::PrePeriodic if i == s + 1 => r,
            _ => i - 1,
        };
    }
    pi
}

/// Which variant of the recursions to emit.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flavor {
    /// `b_1 = (1, b_r) sigma` and the `x`-dependent rules.
    B,
    /// `a_1 = (a_r, 1) sigma` and all `x_i = 0`.
    A,
}

pub(crate) fn add_rules(
    bld: &mut SystemBuilder,
    prefix: &str,
    case: Case,
    r: usize,
    s: usize,
    x: &[u8],
    flavor: Flavor,
) -> Result<Vec<GenId>, ImgError> {
    let mut ids = vec![0 as GenId; r + 1];
    for i in 1..=r {
        ids[i] = bld.declare(&format!("{prefix}{i}"))?;
    }
    let g = |i: usize| vec![(ids[i], false)];
    let xi = |i: usize| if flavor == Flavor::A { 0 } else { x[i - 2] };
    for i in 1..=r {
        let (left, right, flip) = match (case, i) {
            (Case::Periodic, 1) if flavor == Flavor::A => (g(r), vec![], true),
            (Case::Periodic, 1) => (vec![], g(r), true),
            (Case::PrePeriodic, 1) => (vec![], vec![], true),
            (Case::PrePeriodic, i) if i == s + 1 => {
                if xi(i) == 0 {
                    (g(r), g(s), false)
                } else {
                    (g(s), g(r), false)
                }
            }
            (_, i) => {
                if xi(i) == 0 {
                    (g(i - 1), vec![], false)
                } else {
                    (vec![], g(i - 1), false)
                }
            }
        };
        bld.set_rule(ids[i], Rule { left, right, flip });
    }
    Ok(ids)
}

/// `Gamma_x` with generators `b1..br`.
pub fn build_group(case: Case, r: usize, s: usize, x: &[u8]) -> Result<ImgGroupSpec, ImgError> {
    validate(case, r, s, x)?;
    let label = match case {
        Case::Periodic => format!("periodic r={r} x={}", bits(x)),
        Case::PrePeriodic => format!("pre-periodic r={r} s={s} x={}", bits(x)),
    };
    let mut bld = SystemBuilder::new(label);
    add_rules(&mut bld, "b", case, r, s, x, Flavor::B)?;
    let system = bld.build()?;
    let (p, q) = match case {
        Case::Periodic => (0, 0),
        Case::PrePeriodic => {
            let p = s.gcd(&(r - s));
            (p, (r - s) / p)
        }
    };
    Ok(ImgGroupSpec {
        case,
        r,
        s,
        x: x.to_vec(),
        pi: pi_table(case, r, s),
        p,
        q,
        system,
    })
}

/// The split system with generators `a1..ar`.
pub fn build_split_system(case: Case, r: usize, s: usize) -> Result<RecursionSystem, ImgError> {
    let zeros = vec![0u8; r.saturating_sub(1)];
    validate(case, r, s, &zeros)?;
    let mut bld = SystemBuilder::new("split");
    add_rules(&mut bld, "a", case, r, s, &zeros, Flavor::A)?;
    Ok(bld.build()?)
}

pub(crate) fn bits(x: &[u8]) -> String {
    x.iter().map(|&v| if v == 0 { '0' } else { '1' }).collect()
}

#[cfg(test)]
mod tests;
