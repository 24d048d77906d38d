use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;

const GRIG: &str = "\
# a finitary swap and three bounded generators
a = sigma
b = (a, c)
c = (a, d)
d = (1, b)
";

/// Level permutation built letter by letter from generator permutations.
fn oracle_perm(sys: &RecursionSystem, raw: &Word, n: u32) -> Vec<u32> {
    let mut eng = Engine::new(sys);
    let mut acc: Vec<u32> = (0..1u32 << n).collect();
    for l in raw.letters().iter().rev() {
        let p = eng
            .level_permutation(&Word::from_letters(vec![*l]), n)
            .unwrap();
        // acc := p o acc (letter acts after everything to its right)
        acc = acc.iter().map(|&t| p[t as usize]).collect();
    }
    acc
}

#[test]
fn odometer_is_transitive() {
    let sys = odometer();
    let a = sys.generator("a").unwrap();
    let mut eng = Engine::new(&sys);
    for n in 0..=10 {
        let p = eng.level_permutation(&a, n).unwrap();
        assert_eq!(cycle_lengths(&p), vec![1u32 << n]);
    }
}

#[test]
fn parse_errors() {
    let e = RecursionSystem::parse("a = (a, 1) sigmaa\n").unwrap_err();
    assert_eq!(
        e,
        TreeError::UnknownGenerator {
            name: "sigmaa".into(),
            line: 1,
            col: 12
        }
    );
    let e = RecursionSystem::parse("a = (a, q) sigma\n").unwrap_err();
    assert_eq!(
        e,
        TreeError::UnknownGenerator {
            name: "q".into(),
            line: 1,
            col: 9
        }
    );
    let e = RecursionSystem::parse("a = (a, 1 sigma\n").unwrap_err();
    assert!(matches!(e, TreeError::Syntax { .. }));
    let e = RecursionSystem::parse("\n\na (a, 1)\n").unwrap_err();
    assert!(matches!(
        e,
        TreeError::Syntax {
            line: 3,
            col: 1,
            ..
        }
    ));
    let sys = odometer();
    assert!(matches!(
        sys.parse_word("a sigmaa"),
        Err(TreeError::UnknownGenerator { .. })
    ));
}

#[test]
fn roundtrip_text() {
    let sys = RecursionSystem::parse(GRIG).unwrap();
    let again = RecursionSystem::parse(&sys.to_text()).unwrap();
    assert_eq!(sys.to_text(), again.to_text());
}

#[test]
fn odometer_vs_sigma() {
    let sys = odometer();
    let mut eng = Engine::new(&sys);
    let a = sys.parse_word("a").unwrap();
    let s = sys.parse_word("sigma").unwrap();
    assert_eq!(eng.elements_equal(&a, &s), Equality::NotEqual { level: 2 });
    let p = eng.level_permutation(&a, 1).unwrap();
    let q = eng.level_permutation(&s, 1).unwrap();
    assert_eq!(p, q);
    let a2 = sys.parse_word("a a a^-1").unwrap();
    assert_eq!(eng.elements_equal(&a2, &a), Equality::Equal);
}

#[test]
fn involutions_detected() {
    let sys = RecursionSystem::parse(GRIG).unwrap();
    for g in ["b", "c", "d"] {
        assert!(sys.is_involution(sys.id(g).unwrap()), "{g}");
    }
    assert!(sys.parse_word("b b").unwrap().is_empty());
    assert!(sys.parse_word("a a").unwrap().is_empty());
    let mut eng = Engine::new(&sys);
    // bcd = 1 in this group
    let w = sys.parse_word("b c d").unwrap();
    assert_eq!(eng.elements_equal(&w, &Word::identity()), Equality::Equal);
}

#[test]
fn finitary_runs_collapse() {
    let sys = RecursionSystem::parse("f = (sigma, 1)\ng = (g, f)\n").unwrap();
    assert!(sys.is_finitary(sys.id("f").unwrap()));
    let w = sys.parse_raw_word("f sigma f g f f").unwrap();
    let c = sys.delta_compress(&w);
    assert_eq!(c.letters().len(), 2);
    assert_eq!(sys.long_letters(&c), sys.long_letters(&w));
    assert_eq!(sys.long_letters(&w), 1);
    let mut eng = Engine::new(&sys);
    assert_eq!(eng.elements_equal(&c, &w), Equality::Equal);
}

#[test]
fn b_is_not_an_involution() {
    let sys = b_system();
    assert!(!sys.is_involution(sys.id("b").unwrap()));
    let mut eng = Engine::new(&sys);
    let bb = sys.parse_word("b b").unwrap();
    assert!(matches!(
        eng.elements_equal(&bb, &Word::identity()),
        Equality::NotEqual { .. }
    ));
}

#[test]
fn depth_cap() {
    let sys = odometer();
    let mut eng = Engine::new(&sys);
    eng.depth_cap = 5;
    let a = sys.parse_word("a").unwrap();
    assert_eq!(
        eng.level_permutation(&a, 6).unwrap_err(),
        TreeError::DepthBudgetExceeded { level: 6, cap: 5 }
    );
}

#[test]
fn signs_agree() {
    let sys = RecursionSystem::parse(GRIG).unwrap();
    let mut eng = Engine::new(&sys);
    for text in ["a", "b", "a b", "a c a d", "b a d a c", "a b a b a c"] {
        let w = sys.parse_word(text).unwrap();
        for n in 0..8 {
            assert_eq!(
                eng.sign_parity(&w, n).unwrap(),
                eng.sign_recursive(&w, n),
                "{text} {n}"
            );
        }
    }
}

/// All automorphisms of the first `n` levels as permutations of level `n`.
fn all_level_autos(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![0]];
    }
    let sub = all_level_autos(n - 1);
    let half = 1u32 << (n - 1);
    let mut out = Vec::new();
    for flip in [false, true] {
        for l in &sub {
            for r in &sub {
                let mut p = Vec::with_capacity(2 * half as usize);
                if flip {
                    p.extend(r.iter().map(|&t| half + t));
                    p.extend(l.iter().copied());
                } else {
                    p.extend(l.iter().copied());
                    p.extend(r.iter().map(|&t| half + t));
                }
                out.push(p);
            }
        }
    }
    out
}

fn brute_conjugate(a: &[u32], b: &[u32], autos: &[Vec<u32>]) -> bool {
    autos
        .iter()
        .any(|g| (0..a.len()).all(|t| g[a[t] as usize] == b[g[t] as usize]))
}

#[test]
fn conjugacy_matches_brute_force() {
    let sys = RecursionSystem::parse(GRIG).unwrap();
    let words = [
        "1", "a", "b", "c", "a b", "b a", "a c", "a d", "a b a c", "b a c a", "a d a b",
    ];
    let words: Vec<Word> = words.iter().map(|t| sys.parse_word(t).unwrap()).collect();
    let mut eng = Engine::new(&sys);
    for n in 1..=3 {
        let autos = all_level_autos(n);
        for x in &words {
            for y in &words {
                let px = eng.level_permutation(x, n).unwrap();
                let py = eng.level_permutation(y, n).unwrap();
                assert_eq!(
                    eng.conjugate_in_level(x, y, n).unwrap(),
                    brute_conjugate(&px, &py, &autos)
                );
            }
        }
    }
}

fn word_strategy(ngen: u16, max_len: usize) -> impl Strategy<Value = Vec<(u16, bool)>> {
    prop::collection::vec((0..ngen, any::<bool>()), 0..=max_len)
}

proptest! {
    #[test]
    fn normalization_preserves_action(raw in word_strategy(5, 8)) {
        let sys = RecursionSystem::parse(GRIG).unwrap();
        let w = Word::from_letters(raw.iter().map(|&(id, inv)| Letter::Gen { id, inv }).collect());
        let mut eng = Engine::new(&sys);
        let fast = eng.level_permutation(&w, 6).unwrap();
        let slow = oracle_perm(&sys, &w, 6);
        prop_assert_eq!(fast.as_slice(), slow.as_slice());
    }

    #[test]
    fn inverse_and_sections(raw in word_strategy(2, 10)) {
        let sys = odometer();
        let w = Word::from_letters(raw.iter().map(|&(id, inv)| Letter::Gen { id, inv }).collect());
        let w = sys.normalize(&w);
        let mut eng = Engine::new(&sys);
        let prod = sys.product(&w, &sys.inverse(&w));
        prop_assert!(prod.is_empty());
        let p = eng.level_permutation(&w, 7).unwrap();
        let s = sys.section_of(&w);
        let pl = eng.level_permutation(&s.left, 6).unwrap();
        let half = 64u32;
        let expect0 = if s.flip { half + eng.level_permutation(&s.right, 6).unwrap()[0] } else { pl[0] };
        prop_assert_eq!(p[0], expect0);
    }

    #[test]
    fn equality_agrees_with_levels(a in word_strategy(5, 6), b in word_strategy(5, 6)) {
        let sys = RecursionSystem::parse(GRIG).unwrap();
        let wa = Word::from_letters(a.iter().map(|&(id, inv)| Letter::Gen { id, inv }).collect());
        let wb = Word::from_letters(b.iter().map(|&(id, inv)| Letter::Gen { id, inv }).collect());
        let mut eng = Engine::new(&sys);
        match eng.elements_equal(&wa, &wb) {
            Equality::Equal => {
                prop_assert_eq!(eng.level_permutation(&wa, 8).unwrap(), eng.level_permutation(&wb, 8).unwrap());
            }
            Equality::NotEqual { level } => {
                prop_assert_ne!(eng.level_permutation(&wa, level).unwrap(), eng.level_permutation(&wb, level).unwrap());
                prop_assert_eq!(eng.level_permutation(&wa, level - 1).unwrap(), eng.level_permutation(&wb, level - 1).unwrap());
            }
            Equality::Unknown => prop_assert!(false, "contracting group must decide"),
        }
    }
}
