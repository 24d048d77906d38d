use alloc::format;
use alloc::vec::Vec;

use super::denominators::phi_j;
use super::signs::{check_conditions, j_of};
use super::{add_rules, bits, Case, Flavor, ImgError, ImgGroupSpec, SubsetJ};
use crate::olgf::{classify, descendant_graph, rational_phi, Classification, DEFAULT_NODE_BUDGET};
use crate::tree_group::{Engine, Equality, Letter, RecursionSystem, SystemBuilder, Word};

/// Default number of descendant steps before `find_irreducible` gives up.
pub const DEFAULT_STEP_BUDGET: usize = 10_000;

/// One system holding both `b1..br` of `spec` and the split generators `a1..ar`.
pub fn with_split_generators(spec: &ImgGroupSpec) -> Result<RecursionSystem, ImgError> {
    let mut bld = SystemBuilder::new(format!("{} + split", spec.system.label()));
    add_rules(&mut bld, "b", spec.case, spec.r, spec.s, &spec.x, Flavor::B)?;
    add_rules(&mut bld, "a", spec.case, spec.r, spec.s, &spec.x, Flavor::A)?;
    Ok(bld.build()?)
}

fn named_product(sys: &RecursionSystem, prefix: &str, j: SubsetJ) -> Word {
    let letters = j
        .members()
        .into_iter()
        .map(|i| Letter::gen(sys.id(&format!("{prefix}{i}")).expect("generator exists")))
        .collect();
    sys.normalize(&Word::from_letters(letters))
}

/// Whether `w` lies in the finite subgroup generated by `b_1..b_s` (trivial in
/// the periodic case): all sections at level `s` are trivial.
fn in_delta(eng: &mut Engine<'_>, spec: &ImgGroupSpec, w: &Word) -> Result<bool, ImgError> {
    let sys = eng.system();
    if sys.long_letters(w) == 0 && spec.case == Case::PrePeriodic {
        return Ok(true);
    }
    let mut layer = Vec::from([w.clone()]);
    for _ in 0..spec.s {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for u in &layer {
            let sec = sys.section_of(u);
            next.push(sec.left);
            next.push(sec.right);
        }
        layer = next;
    }
    for u in &layer {
        match eng.elements_equal(u, &Word::identity()) {
            Equality::Equal => {}
            Equality::NotEqual { .. } => return Ok(false),
            Equality::Unknown => {
                return Err(ImgError::BudgetExceeded(
                    "Delta membership undecided".into(),
                ))
            }
        }
    }
    Ok(true)
}

/// The first descendant of `w` that keeps its length.
fn next_descendant(eng: &mut Engine<'_>, spec: &ImgGroupSpec, w: &Word) -> Result<Word, ImgError> {
    let sys = eng.system();
    let sec = sys.section_of(w);
    if sec.flip {
        return Ok(sys.product(&sec.left, &sec.right));
    }
    let left_small = in_delta(eng, spec, &sec.left)?;
    let right_small = in_delta(eng, spec, &sec.right)?;
    match (left_small, right_small) {
        (_, true) => Ok(sec.left),
        (true, false) => Ok(sec.right),
        (false, false) => Err(ImgError::BudgetExceeded(format!(
            "no length-preserving descendant of {}",
            sys.display_word(w)
        ))),
    }
}

/// A Phi-irreducible element `w` of the group with `J_w = J`, found by
/// following length-preserving first descendants from `b_{i_1} ... b_{i_k}`
/// (ascending `i`) until an element repeats, then along the cycle to an element
/// of type `J`. The engine's system must contain
/// the generators `b1..br` of `spec`.
pub fn find_irreducible(
    spec: &ImgGroupSpec,
    eng: &mut Engine<'_>,
    j: SubsetJ,
    step_budget: usize,
) -> Result<Word, ImgError> {
    if !check_conditions(spec, j) {
        return Err(ImgError::ConditionViolated(j));
    }
    let sys = eng.system();
    let mut seen: Vec<(Word, SubsetJ)> = Vec::new();
    let mut cur = named_product(sys, "b", j);
    let mut jn = j;
    let found = 'walk: {
        for _ in 0..step_budget {
            for (u, ju) in &seen {
                if *ju != jn {
                    continue;
                }
                match eng.elements_equal(u, &cur) {
                    Equality::Equal => break 'walk (cur, jn),
                    Equality::NotEqual { .. } => {}
                    Equality::Unknown => {
                        return Err(ImgError::BudgetExceeded(
                            "equality undecided on the cycle".into(),
                        ))
                    }
                }
            }
            let next = next_descendant(eng, spec, &cur)?;
            seen.push((core::mem::replace(&mut cur, next), jn));
            jn = spec.pi_set(jn);
        }
        return Err(ImgError::BudgetExceeded(format!(
            "no cycle within {step_budget} steps"
        )));
    };
    // pi permutes the types along the cycle, so one of its elements has type J
    let (mut found, mut jf) = found;
    for _ in 0..spec.period() {
        if jf == j {
            break;
        }
        found = next_descendant(eng, spec, &found)?;
        jf = spec.pi_set(jf);
    }
    let g = descendant_graph(eng, &found, DEFAULT_NODE_BUDGET);
    match classify(&g) {
        Classification::PhiFinite { irreducible } => {
            assert!(
                irreducible,
                "cycle element is not Phi-irreducible for J = {j}"
            )
        }
        Classification::NotPhiFiniteWithinBudget => {
            return Err(ImgError::BudgetExceeded(
                "descendant graph of the cycle element".into(),
            ))
        }
    }
    assert_eq!(
        j_of(spec, eng, &found),
        j,
        "J_w mismatch for x = {}",
        bits(&spec.x)
    );
    Ok(found)
}

/// `Phi_w` from the descendant graph of the irreducible element for `J`
/// agrees with `Phi_J`.
pub fn irreducible_phi_crosscheck(spec: &ImgGroupSpec, j: SubsetJ) -> Result<bool, ImgError> {
    let mut eng = Engine::new(&spec.system);
    let w = find_irreducible(spec, &mut eng, j, DEFAULT_STEP_BUDGET)?;
    let res = rational_phi(&mut eng, &w, DEFAULT_NODE_BUDGET)?;
    Ok(res.phi == phi_j(spec, j))
}

/// The irreducible element for `J` is conjugate on level `n` to
/// `a_{i_1} ... a_{i_k}` in the split group.
pub fn conjugacy_crosscheck(spec: &ImgGroupSpec, j: SubsetJ, n: u32) -> Result<bool, ImgError> {
    let sys = with_split_generators(spec)?;
    let mut eng = Engine::new(&sys);
    let w = find_irreducible(spec, &mut eng, j, DEFAULT_STEP_BUDGET)?;
    let a = named_product(&sys, "a", j);
    Ok(eng.conjugate_in_level(&w, &a, n)?)
}
