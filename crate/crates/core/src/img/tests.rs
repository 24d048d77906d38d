use super::*;
use crate::olgf::{psi_from_phi, rational_phi, series_phi, DEFAULT_NODE_BUDGET};
use crate::poly_series::{BivariatePoly, RationalFunction};
use crate::tree_group::{odometer, Engine};

fn j(ms: &[usize]) -> SubsetJ {
    SubsetJ::from_members(ms)
}

fn rf(num: BivariatePoly, den: BivariatePoly) -> RationalFunction {
    RationalFunction::new(num, den).unwrap()
}

fn om(a: u32, b: u32) -> BivariatePoly {
    BivariatePoly::one_minus(1, a, b)
}

#[test]
fn recursions_as_written() {
    let g = build_group(Case::Periodic, 2, 0, &[0]).unwrap();
    assert_eq!(g.system.to_text(), "b1 = (1, b2) sigma\nb2 = (b1, 1)\n");
    let g = build_group(Case::PrePeriodic, 2, 1, &[0]).unwrap();
    assert_eq!(g.system.to_text(), "b1 = sigma\nb2 = (b2, b1)\n");
    let g = build_group(Case::PrePeriodic, 4, 2, &[1, 1, 0]).unwrap();
    assert_eq!(
        g.system.to_text(),
        "b1 = sigma\nb2 = (1, b1)\nb3 = (b2, b4)\nb4 = (b3, 1)\n"
    );
    assert_eq!(g.pi, vec![0, 2, 1, 4, 3]);
    assert_eq!((g.p, g.q), (2, 1));
    let g = build_group(Case::Periodic, 1, 0, &[]).unwrap();
    assert_eq!(g.system.to_text(), "b1 = (1, b1) sigma\n");
    let split = build_split_system(Case::Periodic, 3, 0).unwrap();
    assert_eq!(
        split.to_text(),
        "a1 = (a3, 1) sigma\na2 = (a1, 1)\na3 = (a2, 1)\n"
    );
}

#[test]
fn r_one_behaves_like_the_odometer() {
    let g = build_group(Case::Periodic, 1, 0, &[]).unwrap();
    let mut eng = Engine::new(&g.system);
    let res = rational_phi(&mut eng, &g.product_word(j(&[1])), 100).unwrap();
    let odo = odometer();
    let mut e2 = Engine::new(&odo);
    let a = odo.parse_word("a").unwrap();
    assert_eq!(res.phi, rational_phi(&mut e2, &a, 100).unwrap().phi);
}

#[test]
fn invalid_parameters() {
    assert!(matches!(
        build_group(Case::Periodic, 3, 0, &[0]),
        Err(ImgError::InvalidParameters(_))
    ));
    assert!(matches!(
        build_group(Case::PrePeriodic, 3, 3, &[0, 0]),
        Err(ImgError::InvalidParameters(_))
    ));
    assert!(matches!(
        build_group(Case::PrePeriodic, 3, 0, &[0, 0]),
        Err(ImgError::InvalidParameters(_))
    ));
    assert!(matches!(
        build_group(Case::Periodic, 2, 0, &[2]),
        Err(ImgError::InvalidParameters(_))
    ));
    assert!(matches!(
        build_group(Case::Periodic, 0, 0, &[]),
        Err(ImgError::InvalidParameters(_))
    ));
}

#[test]
fn sign_examples() {
    let g = build_group(Case::Periodic, 3, 0, &[0, 0]).unwrap();
    // 5 = 2 mod 3
    assert_eq!(closed_form_sign(&g, 2, 5), -1);
    assert_eq!(closed_form_sign(&g, 2, 4), 1);
    assert_eq!(closed_form_sign(&g, 1, 1), -1);
    let g = build_group(Case::PrePeriodic, 4, 2, &[0, 0, 0]).unwrap();
    assert_eq!(closed_form_sign(&g, 3, 5), -1);
    assert_eq!(closed_form_sign(&g, 1, 1), -1);
}

#[test]
fn signs_match_parity() {
    for (case, r, s) in [
        (Case::Periodic, 4, 0),
        (Case::PrePeriodic, 5, 2),
        (Case::PrePeriodic, 4, 3),
    ] {
        for x in ImgGroupSpec::all_tuples(r) {
            let g = build_group(case, r, s, &x).unwrap();
            let mut eng = Engine::new(&g.system);
            for i in 1..=r {
                let w = g.product_word(j(&[i]));
                for n in 1..=2 * r {
                    let parity = eng.sign_parity(&w, n as u32).unwrap();
                    assert_eq!(
                        parity,
                        closed_form_sign(&g, i, n),
                        "{case:?} r={r} x={x:?} i={i} n={n}"
                    );
                    assert_eq!(eng.sign_recursive(&w, n as u32), parity);
                }
            }
        }
    }
}

#[test]
fn j_examples() {
    let g = build_group(Case::Periodic, 3, 0, &[1, 0]).unwrap();
    let eng = Engine::new(&g.system);
    assert_eq!(j_of(&g, &eng, &g.product_word(j(&[2]))), j(&[2]));
    assert_eq!(j_of(&g, &eng, &Word::identity()), SubsetJ::empty());
    assert_eq!(j_of(&g, &eng, &g.product_word(j(&[1, 3]))), j(&[1, 3]));
}

#[test]
fn condition_examples() {
    let g = build_group(Case::Periodic, 4, 0, &[0, 1, 0]).unwrap();
    assert!(check_condition_periodic(&g, j(&[2, 4])));
    assert!(!check_condition_periodic(&g, j(&[2, 3])));
    for i in 1..=4 {
        assert!(check_condition_periodic(&g, j(&[i])));
    }
    assert!(check_condition_periodic(&g, SubsetJ::full(4)));

    let g = build_group(Case::PrePeriodic, 4, 2, &[0, 0, 0]).unwrap();
    assert!(check_conditions_preperiodic(&g, j(&[1, 3])));
    assert!(!check_conditions_preperiodic(&g, j(&[1])));
    assert!(check_conditions_preperiodic(&g, SubsetJ::full(4)));
    let g = build_group(Case::PrePeriodic, 3, 1, &[1, 0]).unwrap();
    assert!(!check_conditions_preperiodic(&g, j(&[2, 3])));
    let g = build_group(Case::PrePeriodic, 3, 1, &[1, 1]).unwrap();
    assert!(check_conditions_preperiodic(&g, j(&[2, 3])));
}

#[test]
fn condition_a_forms_agree() {
    for r in 2..=8 {
        for s in 1..r {
            let g = build_group(Case::PrePeriodic, r, s, &vec![0; r - 1]).unwrap();
            for bits in 0..1u32 << r {
                let jj = SubsetJ(bits);
                assert_eq!(
                    condition_a(&g, jj),
                    condition_a_prime(&g, jj),
                    "r={r} s={s} J={jj}"
                );
            }
        }
    }
}

#[test]
fn psi_examples() {
    let g = build_group(Case::Periodic, 3, 0, &[0, 0]).unwrap();
    let expect = rf(BivariatePoly::from_terms([(0, 1, 1), (1, 3, 1)]), om(2, 3));
    assert_eq!(psi_j_periodic(&g, j(&[1, 3])).unwrap(), expect);
    assert_eq!(
        psi_j_periodic(&g, SubsetJ::empty()),
        Err(ImgError::EmptySubset)
    );
    assert_eq!(
        psi_j_periodic(&g, SubsetJ::full(3)).unwrap(),
        rf(BivariatePoly::y(), om(1, 1))
    );
    let g = build_group(Case::Periodic, 4, 0, &[0, 0, 0]).unwrap();
    let got = psi_j_periodic(&g, j(&[2, 4])).unwrap();
    assert_eq!(got, rf(BivariatePoly::monomial(1, 0, 2), om(1, 2)));
    // cross-multiplied against the unreduced form
    let unreduced = BivariatePoly::from_terms([(0, 2, 1), (1, 4, 1)]);
    assert_eq!(got.num() * &om(2, 4), &unreduced * got.den());

    let g = build_group(Case::PrePeriodic, 3, 1, &[0, 0]).unwrap();
    assert_eq!(
        psi_j_preperiodic(&g, j(&[3])),
        rf(BivariatePoly::monomial(1, 0, 3), om(0, 2))
    );
    assert_eq!(
        psi_j_preperiodic(&g, SubsetJ::full(3)),
        rf(BivariatePoly::y(), om(1, 1))
    );
    assert!(psi_j_preperiodic(&g, SubsetJ::empty()).is_zero());
    let g = build_group(Case::PrePeriodic, 4, 2, &[0, 0, 0]).unwrap();
    let num = BivariatePoly::from_terms([(0, 3, 1), (0, 4, 1)]);
    assert_eq!(psi_j_preperiodic(&g, j(&[3, 4])), rf(num, om(0, 2)));
}

#[test]
fn psi_preperiodic_matches_series_definition() {
    // direct truncated sum of the defining series
    for (r, s) in [(5, 2), (6, 4), (7, 3)] {
        let g = build_group(Case::PrePeriodic, r, s, &vec![0; r - 1]).unwrap();
        let n = 30;
        for bits in 0..1u32 << r {
            let jj = SubsetJ(bits);
            let mut series = crate::poly_series::TruncatedSeries::zero(n);
            let mut cur = jj;
            let mut l_m = 0;
            for m in 0..=n as usize {
                if cur.contains(1) {
                    if m < n as usize {
                        series.add_term(l_m, (m + 1) as u32, 1.into());
                    }
                    l_m += 1;
                } else if cur.contains(s + 1) && m + s < n as usize {
                    series.add_term(l_m, (m + s + 1) as u32, 1.into());
                }
                cur = g.pi_set(cur);
            }
            let closed =
                crate::poly_series::expand_rational(&psi_j_preperiodic(&g, jj), n).unwrap();
            assert_eq!(closed, series, "r={r} s={s} J={jj}");
        }
    }
}

#[test]
fn d_ell_examples() {
    assert_eq!(closed_form_d_ell(4, 2, 0), om(0, 2));
    assert_eq!(closed_form_d_ell(4, 2, 1), om(1, 2));
    assert_eq!(closed_form_d_ell(4, 2, 2), om(1, 1));
    assert_eq!(closed_form_d_ell(7, 5, 5), om(1, 1));
    assert_eq!(closed_form_d_k(5, 2), om(2, 5));
    assert_eq!(closed_form_d_k(5, 5), om(1, 1));
    let dens = JDenominators::new(Case::PrePeriodic, 4, 2).unwrap();
    let u = unconditioned_lcms(&dens, &mut LcmMemo::new());
    assert_eq!(u[1], (1, om(1, 2)));
}

#[test]
fn table_examples() {
    let g = build_group(Case::Periodic, 4, 0, &[0, 1, 0]).unwrap();
    let t = denominator_table(&g).unwrap();
    assert_eq!(t.product_middle, om(1, 2));
    assert!(t.per_class.iter().all(|e| e.divides));
    assert!(t.d_x.y_slice(0).is_one());

    let g = build_group(Case::PrePeriodic, 4, 2, &[1, 0, 1]).unwrap();
    assert_eq!(denominator_table(&g).unwrap().product_middle, om(1, 2));

    for r in 2..=6 {
        for v in [0u8, 1] {
            let g = build_group(Case::Periodic, r, 0, &vec![v; r - 1]).unwrap();
            let t = denominator_table(&g).unwrap();
            for e in &t.per_class {
                assert_eq!(e.enumerated, e.closed, "r={r} k={}", e.index);
            }
        }
    }
    let g = build_group(Case::Periodic, 13, 0, &[0; 12]).unwrap();
    assert_eq!(
        denominator_table(&g),
        Err(ImgError::CapExceeded { r: 13, cap: 12 })
    );
}

#[test]
fn witnesses_reproduce_the_lcm() {
    let g = build_group(Case::PrePeriodic, 6, 3, &[0, 0, 1, 0, 0]).unwrap();
    let t = denominator_table(&g).unwrap();
    for e in &t.per_class {
        let lcm = e.witnesses.iter().fold(BivariatePoly::one(), |acc, w| {
            crate::poly_series::poly_lcm(&acc, psi_j(&g, *w).den())
        });
        assert_eq!(lcm, e.enumerated);
    }
}

#[test]
fn combinatorics_examples() {
    let g = build_group(Case::Periodic, 2, 0, &[0]).unwrap();
    let t = CombinatoricsTable::new(&g);
    assert_eq!(t.s_sets, [j(&[2]), SubsetJ::empty()]);
    assert_eq!(t.i_sets[2], [j(&[1]), SubsetJ::empty()]);
    for r in 2..=6 {
        for x in ImgGroupSpec::all_tuples(r) {
            let g = build_group(Case::Periodic, r, 0, &x).unwrap();
            assert_eq!(
                CombinatoricsTable::new(&g).lemma_checks(),
                [true; 4],
                "x={x:?}"
            );
        }
    }
}

#[test]
fn generator_psi_preperiodic() {
    let g = build_group(Case::PrePeriodic, 5, 2, &[1, 0, 1, 1]).unwrap();
    let mut eng = Engine::new(&g.system);
    for i in 1..=5 {
        let res = rational_phi(&mut eng, &g.product_word(j(&[i])), DEFAULT_NODE_BUDGET).unwrap();
        let expect = if i <= 2 {
            RationalFunction::from_poly(BivariatePoly::monomial(1, 0, i as u32))
        } else {
            rf(BivariatePoly::monomial(1, 0, i as u32), om(0, 3))
        };
        assert_eq!(psi_from_phi(&res.phi), expect, "i={i}");
    }
}

#[test]
fn generators_of_preperiodic_groups_are_involutions() {
    let g = build_group(Case::PrePeriodic, 5, 2, &[1, 0, 1, 1]).unwrap();
    for i in 1..=5 {
        assert!(g.system.is_involution(g.gen_id(i)), "b{i}");
    }
}

#[test]
fn irreducible_examples() {
    let g = build_group(Case::Periodic, 2, 0, &[0]).unwrap();
    let mut eng = Engine::new(&g.system);
    let w = find_irreducible(&g, &mut eng, j(&[1, 2]), DEFAULT_STEP_BUDGET).unwrap();
    assert_eq!(j_of(&g, &eng, &w), j(&[1, 2]));
    for i in 1..=2 {
        let w = find_irreducible(&g, &mut eng, j(&[i]), DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(j_of(&g, &eng, &w), j(&[i]));
    }
    let g = build_group(Case::PrePeriodic, 3, 1, &[0, 0]).unwrap();
    let mut eng = Engine::new(&g.system);
    assert_eq!(
        find_irreducible(&g, &mut eng, j(&[1]), DEFAULT_STEP_BUDGET),
        Err(ImgError::ConditionViolated(j(&[1])))
    );
    let w = find_irreducible(&g, &mut eng, SubsetJ::empty(), DEFAULT_STEP_BUDGET).unwrap();
    assert!(w.is_empty());
}

#[test]
fn crosscheck_examples() {
    let g = build_group(Case::Periodic, 3, 0, &[0, 0]).unwrap();
    assert!(irreducible_phi_crosscheck(&g, j(&[1, 3])).unwrap());
    assert!(irreducible_phi_crosscheck(&g, SubsetJ::full(3)).unwrap());
    assert_eq!(
        phi_j(&g, SubsetJ::full(3)),
        rf(BivariatePoly::one(), om(1, 1))
    );
    let g = build_group(Case::PrePeriodic, 4, 2, &[0, 0, 0]).unwrap();
    assert!(irreducible_phi_crosscheck(&g, j(&[3, 4])).unwrap());

    let g = build_group(Case::Periodic, 3, 0, &[1, 0]).unwrap();
    assert!(conjugacy_crosscheck(&g, j(&[2]), 8).unwrap());
    assert!(conjugacy_crosscheck(&g, SubsetJ::empty(), 8).unwrap());
    let g = build_group(Case::PrePeriodic, 3, 1, &[1, 1]).unwrap();
    assert!(conjugacy_crosscheck(&g, j(&[2, 3]), 8).unwrap());
}

#[test]
fn short_words_are_phi_finite_with_short_descendants() {
    let g = build_group(Case::PrePeriodic, 4, 2, &[1, 0, 1]).unwrap();
    let mut eng = Engine::new(&g.system);
    let w = g.system.parse_word("b3 b4 b2 b3 b1 b4").unwrap();
    let res = rational_phi(&mut eng, &w, DEFAULT_NODE_BUDGET).unwrap();
    let len = g.system.long_letters(&w);
    assert!(res
        .graph
        .nodes
        .iter()
        .all(|u| g.system.long_letters(u) <= len));
    assert_eq!(
        crate::poly_series::expand_rational(&res.phi, 10).unwrap(),
        series_phi(&mut eng, &w, 10).unwrap()
    );
}

#[test]
fn irreducible_has_requested_type_not_a_rotation() {
    // the first repeat on the walk has type pi^n(J)
    let g = build_group(Case::Periodic, 6, 0, &[1, 1, 0, 1, 1]).unwrap();
    let jj = j(&[1, 2, 4, 5]);
    let mut eng = Engine::new(&g.system);
    let w = find_irreducible(&g, &mut eng, jj, DEFAULT_STEP_BUDGET).unwrap();
    assert_eq!(j_of(&g, &eng, &w), jj);
    assert!(irreducible_phi_crosscheck(&g, jj).unwrap());
}
