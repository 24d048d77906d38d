use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::signs::{check_conditions, condition_a};
use super::{build_group, pi_table, Case, ImgError, ImgGroupSpec, SubsetJ, DEFAULT_R_CAP};
use crate::olgf::phi_from_psi;
use crate::poly_series::{poly_lcm, BivariatePoly, RationalFunction};

/// Index of the denominator class of `J`: `|J|` (periodic) or
/// `|{ i in J : i <= s }|` (pre-periodic).
pub fn class_index(case: Case, s: usize, j: SubsetJ) -> usize {
    match case {
        Case::Periodic => j.len(),
        Case::PrePeriodic => j.members().into_iter().filter(|&i| i <= s).count(),
    }
}

/// Range of classes whose product is tabulated: `2 <= k < r` or `0 < l < s`.
pub fn middle_range(case: Case, r: usize, s: usize) -> core::ops::Range<usize> {
    match case {
        Case::Periodic => 2..r.max(2),
        Case::PrePeriodic => 1..s.max(1),
    }
}

fn one_minus(a: usize, b: usize) -> BivariatePoly {
    BivariatePoly::one_minus(1, a as u32, b as u32)
}

/// `Psi_J = (sum_j X^(j-1) Y^(i_j)) / (1 - X^k Y^r)` over `i_1 < ... < i_k`.
pub fn psi_j_periodic(spec: &ImgGroupSpec, j: SubsetJ) -> Result<RationalFunction, ImgError> {
    if j.is_empty() {
        return Err(ImgError::EmptySubset);
    }
    Ok(psi_periodic_raw(spec.r, j))
}

fn psi_periodic_raw(r: usize, j: SubsetJ) -> RationalFunction {
    let mut num = BivariatePoly::zero();
    for (k, i) in j.members().into_iter().enumerate() {
        num = num + BivariatePoly::monomial(1, k as u32, i as u32);
    }
    RationalFunction::new(num, one_minus(j.len(), r)).expect("nonzero")
}

/// `Psi_J` summed over one period of `pi` and divided by `1 - X^(lq) Y^(sq)`.
pub fn psi_j_preperiodic(spec: &ImgGroupSpec, j: SubsetJ) -> RationalFunction {
    psi_preperiodic_raw(spec.r, spec.s, &spec.pi, j)
}

fn psi_preperiodic_raw(r: usize, s: usize, pi: &[usize], j: SubsetJ) -> RationalFunction {
    let period = s.lcm(&(r - s));
    let mut num = BivariatePoly::zero();
    let mut cur = j;
    let mut l_m = 0u32;
    for m in 0..period {
        if cur.contains(1) {
            num = num + BivariatePoly::monomial(1, l_m, (m + 1) as u32);
        } else if cur.contains(s + 1) {
            num = num + BivariatePoly::monomial(1, l_m, (m + s + 1) as u32);
        }
        if cur.contains(1) {
            l_m += 1;
        }
        let mut next = SubsetJ::empty();
        for i in cur.members() {
            next.insert(pi[i]);
        }
        cur = next;
    }
    debug_assert_eq!(cur, j);
    RationalFunction::new(num, BivariatePoly::one_minus(1, l_m, period as u32)).expect("nonzero")
}

/// `Psi_J` for the case of `spec`; the empty set gives 0.
pub fn psi_j(spec: &ImgGroupSpec, j: SubsetJ) -> RationalFunction {
    match spec.case {
        Case::Periodic if j.is_empty() => RationalFunction::zero(),
        Case::Periodic => psi_periodic_raw(spec.r, j),
        Case::PrePeriodic => psi_j_preperiodic(spec, j),
    }
}

pub fn phi_j(spec: &ImgGroupSpec, j: SubsetJ) -> RationalFunction {
    phi_from_psi(&psi_j(spec, j))
}

/// `D_k`: `1 - X^k Y^r` for `k < r`, `1 - XY` for `k = r`.
pub fn closed_form_d_k(r: usize, k: usize) -> BivariatePoly {
    assert!(k >= 1 && k <= r);
    if k < r {
        one_minus(k, r)
    } else {
        one_minus(1, 1)
    }
}

/// `D_l` for the pre-periodic case, `0 <= l <= s`.
pub fn closed_form_d_ell(r: usize, s: usize, l: usize) -> BivariatePoly {
    assert!(s >= 1 && s < r && l <= s);
    let p = s.gcd(&(r - s));
    let q = (r - s) / p;
    let mid = s - s / p;
    if l == 0 {
        one_minus(0, p * q)
    } else if l < mid {
        one_minus(l * q, s * q)
    } else if l == mid {
        let top = &one_minus(l, s) * &one_minus(p * q - q, p * q);
        top.exact_div(&one_minus(p - 1, p))
            .expect("exact by construction")
    } else if l < s {
        one_minus(l, s)
    } else {
        one_minus(1, 1)
    }
}

/// Reduced denominators of `Psi_J` for every `J`; independent of `x`.
#[derive(Clone, Debug)]
pub struct JDenominators {
    pub case: Case,
    pub r: usize,
    pub s: usize,
    pub dens: Vec<BivariatePoly>,
    pub class: Vec<usize>,
    /// Condition (a), or `true` in the periodic case.
    pub cond_a: Vec<bool>,
}

impl JDenominators {
    pub fn new(case: Case, r: usize, s: usize) -> Result<Self, ImgError> {
        if r > DEFAULT_R_CAP {
            return Err(ImgError::CapExceeded {
                r,
                cap: DEFAULT_R_CAP,
            });
        }
        let spec = build_group(case, r, s, &vec![0; r - 1])?;
        let pi = pi_table(case, r, s);
        let n = 1usize << r;
        let mut dens = Vec::with_capacity(n);
        let mut class = Vec::with_capacity(n);
        let mut cond_a = Vec::with_capacity(n);
        for bits in 0..n as u32 {
            let j = SubsetJ(bits);
            let psi = match case {
                Case::Periodic if j.is_empty() => RationalFunction::zero(),
                Case::Periodic => psi_periodic_raw(r, j),
                Case::PrePeriodic => psi_preperiodic_raw(r, s, &pi, j),
            };
            dens.push(psi.den().clone());
            class.push(class_index(case, s, j));
            cond_a.push(case == Case::Periodic || condition_a(&spec, j));
        }
        Ok(JDenominators {
            case,
            r,
            s,
            dens,
            class,
            cond_a,
        })
    }

    pub fn classes(&self) -> core::ops::RangeInclusive<usize> {
        match self.case {
            Case::Periodic => 1..=self.r,
            Case::PrePeriodic => 0..=self.s,
        }
    }

    pub fn closed_form(&self, c: usize) -> BivariatePoly {
        match self.case {
            Case::Periodic => closed_form_d_k(self.r, c),
            Case::PrePeriodic => closed_form_d_ell(self.r, self.s, c),
        }
    }
}

/// Memo for `lcm(acc, d)` across many tables.
#[derive(Clone, Debug, Default)]
pub struct LcmMemo {
    map: BTreeMap<(BivariatePoly, BivariatePoly), BivariatePoly>,
}

impl LcmMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lcm(&mut self, a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
        if b.is_one() || a == b {
            return a.clone();
        }
        if a.is_one() {
            return b.clone();
        }
        let key = (a.clone(), b.clone());
        if let Some(v) = self.map.get(&key) {
            return v.clone();
        }
        let v = poly_lcm(a, b);
        self.map.insert(key, v.clone());
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub index: usize,
    pub closed: BivariatePoly,
    pub enumerated: BivariatePoly,
    /// Subsets that each enlarged the running lcm, in enumeration order.
    pub witnesses: Vec<SubsetJ>,
    pub divides: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorReport {
    pub case: Case,
    pub r: usize,
    pub s: usize,
    pub x: Vec<u8>,
    pub per_class: Vec<ClassEntry>,
    pub product_middle: BivariatePoly,
    pub d_x: BivariatePoly,
}

/// `D_{x,k}` (or `D_{x,l}`) by enumerating all admissible `J`.
pub fn denominator_table(spec: &ImgGroupSpec) -> Result<DenominatorReport, ImgError> {
    let dens = JDenominators::new(spec.case, spec.r, spec.s)?;
    Ok(denominator_table_with(spec, &dens, &mut LcmMemo::new()))
}

pub fn denominator_table_with(
    spec: &ImgGroupSpec,
    dens: &JDenominators,
    memo: &mut LcmMemo,
) -> DenominatorReport {
    assert_eq!((spec.case, spec.r, spec.s), (dens.case, dens.r, dens.s));
    let classes = dens.classes();
    let base = *classes.start();
    let mut acc = vec![BivariatePoly::one(); classes.clone().count()];
    let mut witnesses = vec![Vec::new(); acc.len()];
    for (bits, d) in dens.dens.iter().enumerate() {
        let j = SubsetJ(bits as u32);
        let c = dens.class[bits];
        if c < base || !dens.cond_a[bits] || !check_conditions(spec, j) {
            continue;
        }
        let k = c - base;
        let next = memo.lcm(&acc[k], d);
        if next != acc[k] {
            acc[k] = next;
            witnesses[k].push(j);
        }
    }
    let mut per_class = Vec::with_capacity(acc.len());
    for (k, (enumerated, w)) in acc.into_iter().zip(witnesses).enumerate() {
        let index = base + k;
        let closed = dens.closed_form(index);
        let divides = closed.exact_div(&enumerated).is_ok();
        per_class.push(ClassEntry {
            index,
            closed,
            enumerated,
            witnesses: w,
            divides,
        });
    }
    let mid = middle_range(spec.case, spec.r, spec.s);
    let product_middle = per_class
        .iter()
        .filter(|e| mid.contains(&e.index))
        .fold(BivariatePoly::one(), |p, e| &p * &e.enumerated);
    let d_x = per_class
        .iter()
        .fold(BivariatePoly::one_minus(2, 0, 1), |p, e| &p * &e.enumerated);
    DenominatorReport {
        case: spec.case,
        r: spec.r,
        s: spec.s,
        x: spec.x.clone(),
        per_class,
        product_middle,
        d_x,
    }
}

/// `D_k` (all `J`) or `D_l` (all `J` with condition (a)) by enumeration.
pub fn unconditioned_lcms(dens: &JDenominators, memo: &mut LcmMemo) -> Vec<(usize, BivariatePoly)> {
    let base = *dens.classes().start();
    let mut acc: Vec<(usize, BivariatePoly)> =
        dens.classes().map(|c| (c, BivariatePoly::one())).collect();
    for (bits, d) in dens.dens.iter().enumerate() {
        let c = dens.class[bits];
        if c < base || !dens.cond_a[bits] {
            continue;
        }
        let slot = &mut acc[c - base].1;
        *slot = memo.lcm(slot, d);
    }
    acc
}
