use super::{Case, ImgGroupSpec, SubsetJ};
use crate::tree_group::{Engine, Word};

/// `sgn_n(b_i)` from the closed forms.
pub fn closed_form_sign(spec: &ImgGroupSpec, i: usize, n: usize) -> i8 {
    assert!(i >= 1 && i <= spec.r && n >= 1);
    let neg = match spec.case {
        Case::Periodic => n % spec.r == i % spec.r,
        Case::PrePeriodic => {
            let s = spec.s;
            (n == i && i <= s) || (n >= i && i > s && (n - i).is_multiple_of(spec.r - s))
        }
    };
    if neg {
        -1
    } else {
        1
    }
}

/// `J_w = { i : sgn_i(w) = -1 }`.
pub fn j_of(spec: &ImgGroupSpec, eng: &Engine<'_>, w: &Word) -> SubsetJ {
    let mut j = SubsetJ::empty();
    for i in 1..=spec.r {
        if eng.sign_recursive(w, i as u32) < 0 {
            j.insert(i);
        }
    }
    j
}

fn x_equal_on(spec: &ImgGroupSpec, j: SubsetJ) -> bool {
    let mut vals = j
        .members()
        .into_iter()
        .filter(|&i| i >= 2)
        .map(|i| spec.x_i(i));
    match vals.next() {
        Some(v) => vals.all(|u| u == v),
        None => true,
    }
}

/// For every `n` with `1 ∉ pi^n(J)`, the `x_i` over `pi^n(J)` agree.
pub fn check_condition_periodic(spec: &ImgGroupSpec, j: SubsetJ) -> bool {
    assert_eq!(spec.case, Case::Periodic);
    spec.pi_orbit(j)
        .into_iter()
        .all(|jn| jn.contains(1) || x_equal_on(spec, jn))
}

/// Part (a): `1 ∈ pi^n(J)` implies `s+1 ∈ pi^n(J)`.
pub fn condition_a(spec: &ImgGroupSpec, j: SubsetJ) -> bool {
    spec.pi_orbit(j)
        .into_iter()
        .all(|jn| !jn.contains(1) || jn.contains(spec.s + 1))
}

/// The residue form of part (a): `i ∈ J`, `i <= s < j'`, `i ≡ j' mod p` give `j' ∈ J`.
pub fn condition_a_prime(spec: &ImgGroupSpec, j: SubsetJ) -> bool {
    let (r, s, p) = (spec.r, spec.s, spec.p);
    (1..=s).filter(|&i| j.contains(i)).all(|i| {
        (s + 1..=r)
            .filter(|&k| (k - i) % p == 0)
            .all(|k| j.contains(k))
    })
}

/// Both parts, over one period of `pi`. Panics if the two forms of part (a)
/// disagree.
pub fn check_conditions_preperiodic(spec: &ImgGroupSpec, j: SubsetJ) -> bool {
    assert_eq!(spec.case, Case::PrePeriodic);
    let a = condition_a(spec, j);
    assert_eq!(
        a,
        condition_a_prime(spec, j),
        "condition (a) forms disagree for J = {j}"
    );
    a && spec
        .pi_orbit(j)
        .into_iter()
        .all(|jn| jn.contains(1) || x_equal_on(spec, jn))
}

pub fn check_conditions(spec: &ImgGroupSpec, j: SubsetJ) -> bool {
    match spec.case {
        Case::Periodic => check_condition_periodic(spec, j),
        Case::PrePeriodic => check_conditions_preperiodic(spec, j),
    }
}
