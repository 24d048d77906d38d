//! Sweeps over all tuples `x` (and subsets `J`), run on a rayon pool.

use olgf_core::img::{
    build_group, check_conditions, conjugacy_crosscheck, denominator_table_with, find_irreducible,
    irreducible_phi_crosscheck, Case, DenominatorReport, ImgGroupSpec, JDenominators, LcmMemo,
    SubsetJ, DEFAULT_STEP_BUDGET,
};
use olgf_core::olgf::{rational_phi, series_phi, DEFAULT_NODE_BUDGET};
use olgf_core::poly_series::{expand_rational, BivariatePoly};
use olgf_core::tree_group::{Engine, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::tables::PaperTable;
use crate::CliError;

/// Runs `f` on a pool with `threads` workers (0 means the rayon default).
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

/// `(r, s)` pairs up to `max_r`: `s = 0` for the periodic case, `0 < s < r` otherwise.
pub fn param_pairs(case: Case, min_r: usize, max_r: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in min_r.max(1)..=max_r {
        match case {
            Case::Periodic => out.push((r, 0)),
            Case::PrePeriodic => out.extend((1..r).map(|s| (r, s))),
        }
    }
    out
}

pub fn all_tuples(r: usize) -> Vec<Vec<u8>> {
    ImgGroupSpec::all_tuples(r)
}

pub fn complement(x: &[u8]) -> Vec<u8> {
    x.iter().map(|v| 1 - v).collect()
}

pub fn is_constant(x: &[u8]) -> bool {
    x.windows(2).all(|w| w[0] == w[1])
}

/// Denominator tables for the given tuples, in input order.
pub fn table_sweep(
    case: Case,
    r: usize,
    s: usize,
    tuples: &[Vec<u8>],
) -> Result<Vec<DenominatorReport>, CliError> {
    let dens = JDenominators::new(case, r, s)?;
    tuples
        .par_iter()
        .map_init(LcmMemo::new, |memo, x| {
            let spec = build_group(case, r, s, x)?;
            Ok(denominator_table_with(&spec, &dens, memo))
        })
        .collect()
}

/// One disagreement between a transcribed table and the enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDiff {
    pub r: usize,
    pub s: usize,
    pub x: Vec<u8>,
    pub expected: BivariatePoly,
    pub computed: BivariatePoly,
    pub matched: Vec<String>,
}

/// Compares every tuple for every `(r, s)` against `table`; returns the number
/// of tuples checked and the mismatches.
pub fn diff_sweep(
    table: &PaperTable,
    params: &[(usize, usize)],
) -> Result<(usize, Vec<TableDiff>), CliError> {
    let mut diffs = Vec::new();
    let mut checked = 0;
    for &(r, s) in params {
        let tuples = all_tuples(r);
        let reports = table_sweep(table.case, r, s, &tuples)?;
        for (x, rep) in tuples.iter().zip(&reports) {
            checked += 1;
            let (expected, matched) = table.expected(r, s, x);
            if matched.len() > 1 || expected != rep.product_middle {
                diffs.push(TableDiff {
                    r,
                    s,
                    x: x.clone(),
                    expected,
                    computed: rep.product_middle.clone(),
                    matched: matched.iter().map(|m| m.line.clone()).collect(),
                });
            }
        }
    }
    Ok((checked, diffs))
}

/// Tuples `x` whose middle product differs from that of the complement of `x`.
pub fn complement_asymmetries(case: Case, r: usize, s: usize) -> Result<Vec<Vec<u8>>, CliError> {
    let tuples = all_tuples(r);
    let reports = table_sweep(case, r, s, &tuples)?;
    let by_x: std::collections::BTreeMap<&Vec<u8>, &DenominatorReport> =
        tuples.iter().zip(&reports).collect();
    Ok(tuples
        .iter()
        .filter(|x| by_x[x].d_x != by_x[&complement(x)].d_x)
        .cloned()
        .collect())
}

/// `count` random words of length `1..=max_len` in `b1..br` and their inverses.
pub fn fuzz_words(spec: &ImgGroupSpec, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let letters = (0..len)
                .map(|_| Letter::Gen {
                    id: spec.gen_id(rng.gen_range(1..=spec.r)),
                    inv: rng.gen_bool(0.5),
                })
                .collect();
            spec.system.normalize(&Word::from_letters(letters))
        })
        .collect()
}

/// The generators of `spec` followed by `count` fuzzed words.
pub fn oracle_words(spec: &ImgGroupSpec, count: usize, seed: u64) -> Vec<Word> {
    let mut words: Vec<Word> = (1..=spec.r)
        .map(|i| spec.product_word(SubsetJ::from_members(&[i])))
        .collect();
    words.extend(fuzz_words(spec, count, 5, seed));
    words
}

/// Words of `spec` whose rational `Phi` does not expand to the orbit counts at `n_max`.
pub fn oracle_mismatches(
    spec: &ImgGroupSpec,
    words: &[Word],
    n_max: u32,
) -> Result<Vec<String>, CliError> {
    let mut eng = Engine::new(&spec.system);
    let mut bad = Vec::new();
    for w in words {
        let res = rational_phi(&mut eng, w, DEFAULT_NODE_BUDGET)?;
        if expand_rational(&res.phi, n_max)? != series_phi(&mut eng, w, n_max)? {
            bad.push(spec.system.display_word(w));
        }
    }
    Ok(bad)
}

/// Oracle agreement over every tuple for `(case, r, s)`; returns words checked
/// and the failures as `x: word`.
pub fn oracle_sweep(
    case: Case,
    r: usize,
    s: usize,
    count: usize,
    n_max: u32,
) -> Result<(usize, Vec<String>), CliError> {
    let results: Vec<Result<(usize, Vec<String>), CliError>> = all_tuples(r)
        .par_iter()
        .enumerate()
        .map(|(k, x)| {
            let spec = build_group(case, r, s, x)?;
            let seed = (r as u64) << 40 | (s as u64) << 32 | k as u64;
            let words = oracle_words(&spec, count, seed);
            let bad = oracle_mismatches(&spec, &words, n_max)?;
            Ok((
                words.len(),
                bad.into_iter()
                    .map(|w| format!("x={}: {w}", bits(x)))
                    .collect(),
            ))
        })
        .collect();
    let mut total = 0;
    let mut bad = Vec::new();
    for r in results {
        let (n, b) = r?;
        total += n;
        bad.extend(b);
    }
    Ok((total, bad))
}

pub fn bits(x: &[u8]) -> String {
    x.iter().map(|&v| char::from(b'0' + v)).collect()
}

/// Outcome of both irreducible cross-checks for one `(x, J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub x: Vec<u8>,
    pub j: SubsetJ,
    pub phi_ok: bool,
    pub conj_ok: bool,
    pub error: Option<String>,
}

impl CrossCheck {
    pub fn ok(&self) -> bool {
        self.phi_ok && self.conj_ok && self.error.is_none()
    }
}

/// Subsets of `{1..r}` that satisfy the conditions for `spec`.
pub fn admissible_subsets(spec: &ImgGroupSpec) -> Vec<SubsetJ> {
    (0..1u32 << spec.r)
        .map(SubsetJ)
        .filter(|&j| check_conditions(spec, j))
        .collect()
}

/// Both cross-checks for every admissible `J` of one group.
pub fn crosscheck_group(spec: &ImgGroupSpec, level: u32) -> Vec<CrossCheck> {
    admissible_subsets(spec)
        .into_iter()
        .map(|j| {
            let phi = irreducible_phi_crosscheck(spec, j);
            let conj = conjugacy_crosscheck(spec, j, level);
            let error = match (&phi, &conj) {
                (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
                _ => None,
            };
            CrossCheck {
                x: spec.x.clone(),
                j,
                phi_ok: phi.unwrap_or(false),
                conj_ok: conj.unwrap_or(false),
                error,
            }
        })
        .collect()
}

/// Cross-checks over every tuple of `(case, r, s)`.
pub fn crosscheck_sweep(
    case: Case,
    r: usize,
    s: usize,
    level: u32,
) -> Result<Vec<CrossCheck>, CliError> {
    let per_x: Vec<Result<Vec<CrossCheck>, CliError>> = all_tuples(r)
        .par_iter()
        .map(|x| Ok(crosscheck_group(&build_group(case, r, s, x)?, level)))
        .collect();
    let mut out = Vec::new();
    for v in per_x {
        out.extend(v?);
    }
    Ok(out)
}

/// The irreducible word for `J`, or why none was found.
pub fn irreducible_word(spec: &ImgGroupSpec, j: SubsetJ) -> Result<Word, CliError> {
    let mut eng = Engine::new(&spec.system);
    Ok(find_irreducible(spec, &mut eng, j, DEFAULT_STEP_BUDGET)?)
}
