use super::*;
use crate::olgf::series_phi;
use crate::tree_group::b_system;
use proptest::prelude::*;

fn spec(r: u32, c: &[u8]) -> WrpSpec {
    WrpSpec::new(r, GF2Poly::from_coeffs(c)).unwrap()
}

#[test]
fn words_as_written() {
    assert_eq!(wrp_text(&spec(1, &[0, 1])), "b b sigma");
    assert_eq!(wrp_text(&spec(1, &[])), "b b");
    assert_eq!(wrp_text(&spec(2, &[1])), "b sigma b b b");
    let sys = b_system();
    for s in WrpSpec::all(2) {
        assert_eq!(wrp_of_word(&sys, &wrp_word(&sys, &s)), Some(s));
    }
    assert!(matches!(
        WrpSpec::new(1, GF2Poly::monomial(2)),
        Err(NonRationalError::DegreeTooLarge { deg: 2, bound: 2 })
    ));
}

#[test]
fn qrs_by_hand() {
    let t = qrs_transform(&spec(1, &[0, 1]));
    assert_eq!(t.q, spec(1, &[0, 1]));
    assert_eq!(t.r, spec(1, &[1]));
    assert_eq!(t.s, spec(2, &[0, 1, 1]));
    // P = 0: Q = T, R = 1 + T + T = 1
    let t = qrs_transform(&spec(1, &[]));
    assert_eq!(
        (t.q.p().clone(), t.r.p().clone()),
        (GF2Poly::monomial(1), GF2Poly::from_coeffs(&[1, 0]))
    );
}

#[test]
fn section_identity_r_le_2() {
    let sys = b_system();
    let mut eng = Engine::new(&sys);
    for r in 1..=2 {
        for s in WrpSpec::all(r) {
            let c = check_sections(&mut eng, &s, 10).unwrap();
            assert!(c.holds(), "P = {} r = {r}: {c:?}", s.p());
        }
    }
}

#[test]
fn section_identity_r3_sampled() {
    let sys = b_system();
    let mut eng = Engine::new(&sys);
    for bits in [0u32, 1, 0x81, 0xa5, 0xff, 0x3c] {
        let c: Vec<u8> = (0..8).map(|i| (bits >> i & 1) as u8).collect();
        assert!(
            check_sections(&mut eng, &spec(3, &c), 10).unwrap().holds(),
            "bits {bits:#x}"
        );
    }
}

#[test]
fn omega_terms() {
    let o = omega_series(1, 2).unwrap();
    assert_eq!(
        o,
        TruncatedSeries::from_poly(
            &crate::poly_series::BivariatePoly::from_terms([(0, 0, 1), (1, 2, 2)]),
            2
        )
    );
    for r in 1..=4 {
        let o = omega_series(r, 40).unwrap();
        assert_eq!(o.coeff(0, 0), BigInt::from(1));
        for m in 0..4u32 {
            let e = (1u32 << (m + r)) - (1 << r);
            if e <= 40 {
                assert_eq!(o.coeff(m, e), BigInt::from(1) << (e - m), "r={r} m={m}");
            }
        }
    }
}

#[test]
fn psi_of_bb_sigma() {
    let sys = b_system();
    let mut eng = Engine::new(&sys);
    let s = spec(1, &[0, 1]);
    let got = psi_wrp_series(&mut eng, &s, 8).unwrap();
    let y = TruncatedSeries::from_poly(&crate::poly_series::BivariatePoly::y(), 8);
    assert_eq!(got, y.mul(&omega_series(1, 8).unwrap()));
    assert_eq!(got, psi_wrp_closed(&s, 8).unwrap());
}

#[test]
fn psi_of_wrp_r_le_2() {
    let sys = b_system();
    let mut eng = Engine::new(&sys);
    let mut checked = 0;
    for r in 1..=2 {
        for s in WrpSpec::all(r) {
            let Ok(closed) = psi_wrp_closed(&s, 10) else {
                continue;
            };
            assert_eq!(
                psi_wrp_series(&mut eng, &s, 10).unwrap(),
                closed,
                "P = {}",
                s.p()
            );
            checked += 1;
        }
    }
    // r = 1: P = 1, T; r = 2: 16 minus P = 0 and P = (T+1)^3
    assert_eq!(checked, 2 + 14);
}

#[test]
fn phi_b_first_terms() {
    let p = phi_b_closed(4);
    let want = crate::poly_series::BivariatePoly::from_terms([
        (0, 0, 1),
        (1, 1, 1),
        (2, 2, 1),
        (2, 3, 2),
        // 16 vertices in orbits of length 8
        (3, 4, 2),
    ]);
    assert_eq!(p, TruncatedSeries::from_poly(&want, 4));
}

#[test]
fn closed_forms_match_orbits() {
    let sys = b_system();
    let mut eng = Engine::new(&sys);
    let b = sys.generator("b").unwrap();
    assert_eq!(series_phi(&mut eng, &b, 14).unwrap(), phi_b_closed(14));
    assert_eq!(series_psi(&mut eng, &b, 14).unwrap(), psi_b_closed(14));
}

#[test]
fn orbit_length_corollaries() {
    let sys = b_system();
    let mut eng = Engine::new(&sys);
    assert_eq!(
        (0..=8).map(b_orbit_length).collect::<Vec<_>>(),
        [1, 2, 4, 4, 8, 8, 8, 8, 16]
    );
    for n in 0..=12 {
        assert!(check_orbit_lengths(&mut eng, n).unwrap(), "n = {n}");
    }
    for m in 0..=3 {
        assert!(check_power_fixes(&mut eng, m).unwrap(), "m = {m}");
    }
}

fn ord(p: &GF2Poly) -> Order {
    p.ord_t_minus_one()
}

proptest! {
    #[test]
    fn qrs_orders(r in 1u32..=6, bits in any::<u64>()) {
        let w = 1u32 << r;
        let c: Vec<u8> = (0..w).map(|i| (bits >> i & 1) as u8).collect();
        let s = spec(r, &c);
        let t = qrs_transform(&s);
        prop_assert_eq!(t.q.r(), r);
        prop_assert_eq!(t.s.r(), r + 1);
        prop_assert_eq!(ord(t.s.p()), Order::Finite(w - 1));
        if let Order::Finite(d) = ord(s.p()) {
            if d > 0 && d < w - 1 {
                prop_assert_eq!(ord(t.q.p()), Order::Finite(d - 1));
                prop_assert_eq!(ord(t.r.p()), Order::Finite(d - 1));
            }
        }
    }
}
