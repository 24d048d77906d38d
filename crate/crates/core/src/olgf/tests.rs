use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::poly_series::{expand_rational, BivariatePoly, RationalFunction, TruncatedSeries};
use crate::tree_group::{b_system, odometer, Engine, Letter, RecursionSystem, Word};

fn rf(num: BivariatePoly, den: BivariatePoly) -> RationalFunction {
    RationalFunction::new(num, den).unwrap()
}

fn one_minus_2y() -> BivariatePoly {
    BivariatePoly::one_minus(2, 0, 1)
}

#[test]
fn baselines() {
    let sys = odometer();
    let mut eng = Engine::new(&sys);
    let id = rational_phi(&mut eng, &Word::identity(), 100).unwrap();
    assert_eq!(id.phi, rf(BivariatePoly::one(), one_minus_2y()));
    assert!(id.psi.is_zero());
    assert_eq!(
        id.classification,
        Classification::PhiFinite { irreducible: true }
    );

    let s = rational_phi(&mut eng, &sys.parse_word("sigma").unwrap(), 100).unwrap();
    let expect = RationalFunction::one().add(&rf(BivariatePoly::monomial(1, 1, 1), one_minus_2y()));
    assert_eq!(s.phi, expect);
    assert_eq!(s.psi, RationalFunction::from_poly(BivariatePoly::y()));
    assert_eq!(
        s.classification,
        Classification::PhiFinite { irreducible: false }
    );
    assert_eq!(s.graph.len(), 2);

    let a = rational_phi(&mut eng, &sys.parse_word("a").unwrap(), 100).unwrap();
    assert_eq!(
        a.phi,
        rf(BivariatePoly::one(), BivariatePoly::one_minus(1, 1, 1))
    );
    assert_eq!(a.determinant, BivariatePoly::one_minus(1, 1, 1));
    assert_eq!(
        a.psi,
        rf(BivariatePoly::y(), BivariatePoly::one_minus(1, 1, 1))
    );
    assert_eq!(a.graph.len(), 1);
    assert_eq!(a.graph.edges[0], Some(Edge::Product(0)));
}

#[test]
fn conversions_round_trip() {
    let psi = rf(BivariatePoly::y(), BivariatePoly::one_minus(1, 1, 1));
    let phi = phi_from_psi(&psi);
    assert_eq!(
        phi,
        rf(BivariatePoly::one(), BivariatePoly::one_minus(1, 1, 1))
    );
    assert_eq!(psi_from_phi(&phi), psi);
    assert_eq!(
        phi_from_psi(&RationalFunction::zero()),
        rf(BivariatePoly::one(), one_minus_2y())
    );
}

#[test]
fn orbit_tables() {
    let sys = odometer();
    let mut eng = Engine::new(&sys);
    let t = orbit_counts(&mut eng, &Word::identity(), 2).unwrap();
    assert_eq!(t.get(0, 2), BigInt::from(4));
    assert!(t.covers_all_vertices());
    let a = sys.parse_word("a").unwrap();
    let t = orbit_counts(&mut eng, &a, 4).unwrap();
    for n in 0..=4 {
        for m in 0..=n {
            assert_eq!(t.get(m, n), BigInt::from((m == n) as u32));
        }
    }
    let a3 = sys.parse_word("a a a").unwrap();
    assert_eq!(
        series_phi(&mut eng, &a3, 5).unwrap(),
        series_phi(&mut eng, &a, 5).unwrap()
    );
    let s = series_phi(&mut eng, &sys.parse_word("sigma").unwrap(), 3).unwrap();
    assert_eq!(s.to_string(), "1 + X*Y + 2*X*Y^2 + 4*X*Y^3 + O(Y^4)");
}

#[test]
fn square_relation() {
    let sys = odometer();
    let mut eng = Engine::new(&sys);
    for w in ["a", "sigma", "a sigma a"] {
        assert!(square_relation_check(&mut eng, &sys.parse_word(w).unwrap(), 6).unwrap());
    }
    let b = b_system();
    let mut eng = Engine::new(&b);
    assert!(square_relation_check(&mut eng, &b.parse_word("b").unwrap(), 10).unwrap());
}

#[test]
fn b_is_not_phi_finite() {
    let sys = b_system();
    let mut eng = Engine::new(&sys);
    let b = sys.parse_word("b").unwrap();
    let g = descendant_graph(&mut eng, &b, 500);
    assert!(!g.complete);
    assert_eq!(classify(&g), Classification::NotPhiFiniteWithinBudget);
    assert!(matches!(
        rational_phi(&mut eng, &b, 500),
        Err(OlgfError::NotPhiFinite { .. })
    ));
}

const GRIG: &str = "a = sigma\nb = (a, c)\nc = (a, d)\nd = (1, b)\n";

fn check_oracle(sys: &RecursionSystem, w: &Word, n: u32) -> Result<(), TestCaseError> {
    let mut eng = Engine::new(sys);
    let res = rational_phi(&mut eng, w, 2000).unwrap();
    let exp = expand_rational(&res.phi, n).unwrap();
    prop_assert_eq!(&exp, &series_phi(&mut eng, w, n).unwrap());
    let psi_series = series_psi(&mut eng, w, n).unwrap();
    prop_assert_eq!(expand_rational(&res.psi, n).unwrap(), psi_series);
    let (n2, d2) = res.phi.eval_x(2);
    prop_assert_eq!(&n2 * &one_minus_2y(), d2);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_matches_orbit_counts(raw in prop::collection::vec((0u16..5, any::<bool>()), 0..6)) {
        let sys = RecursionSystem::parse(GRIG).unwrap();
        let w = Word::from_letters(raw.iter().map(|&(id, inv)| Letter::Gen { id, inv }).collect());
        check_oracle(&sys, &w, 10)?;
    }

    #[test]
    fn recursion_relations(raw in prop::collection::vec((0u16..5, any::<bool>()), 0..6)) {
        let sys = RecursionSystem::parse(GRIG).unwrap();
        let w = sys.normalize(&Word::from_letters(raw.iter().map(|&(id, inv)| Letter::Gen { id, inv }).collect()));
        let mut eng = Engine::new(&sys);
        let n = 9;
        let s = sys.section_of(&w);
        let phi = series_phi(&mut eng, &w, n).unwrap();
        let one = TruncatedSeries::from_poly(&BivariatePoly::one(), n);
        let y = TruncatedSeries::from_poly(&BivariatePoly::y(), n);
        let expect = if s.flip {
            let uv = sys.product(&s.left, &s.right);
            let xy = TruncatedSeries::from_poly(&BivariatePoly::monomial(1, 1, 1), n);
            one.add(&xy.mul(&series_phi(&mut eng, &uv, n).unwrap()))
        } else {
            let su = series_phi(&mut eng, &s.left, n).unwrap();
            let sv = series_phi(&mut eng, &s.right, n).unwrap();
            one.add(&y.mul(&su)).add(&y.mul(&sv))
        };
        prop_assert_eq!(phi, expect);
    }

    #[test]
    fn conjugation_and_odd_powers(
        raw in prop::collection::vec((0u16..5, any::<bool>()), 0..5),
        g in prop::collection::vec((0u16..5, any::<bool>()), 0..5),
    ) {
        let sys = RecursionSystem::parse(GRIG).unwrap();
        let to_word = |v: &[(u16, bool)]| sys.normalize(&Word::from_letters(v.iter().map(|&(id, inv)| Letter::Gen { id, inv }).collect()));
        let w = to_word(&raw);
        let g = to_word(&g);
        let mut eng = Engine::new(&sys);
        let conj = sys.product(&sys.product(&g, &w), &sys.inverse(&g));
        let base = series_phi(&mut eng, &w, 10).unwrap();
        prop_assert_eq!(series_phi(&mut eng, &conj, 10).unwrap(), base.clone());
        for k in [3, 5] {
            prop_assert_eq!(series_phi(&mut eng, &sys.power(&w, k), 10).unwrap(), base.clone());
        }
        prop_assert!(square_relation_check(&mut eng, &w, 10).unwrap());
    }
}
