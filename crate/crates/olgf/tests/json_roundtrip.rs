use olgf::cli::nonrational_report;
use olgf::render::{GraphDto, PolyDto, RationalDto, RationalOut, SeriesDto};
use olgf_core::olgf::{classify, descendant_graph, rational_phi};
use olgf_core::poly_series::{BivariatePoly, RationalFunction, TruncatedSeries};
use olgf_core::tree_group::{Engine, Letter, RecursionSystem, Word};
use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;

const GRIG: &str = "a = sigma\nb = (a, c)\nc = (a, d)\nd = (1, b)\n";

fn round_trip<T: Serialize + DeserializeOwned>(v: &T) -> T {
    serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap()
}

fn poly() -> impl Strategy<Value = BivariatePoly> {
    prop::collection::vec((0u32..4, 0u32..6, -1000i64..1000), 0..6)
        .prop_map(BivariatePoly::from_terms)
}

proptest! {
    #[test]
    fn polynomials(p in poly()) {
        let dto = PolyDto::new(&p);
        let back = round_trip(&dto);
        prop_assert_eq!(&back, &dto);
        prop_assert_eq!(back.to_poly().unwrap(), p);
    }

    #[test]
    fn rational_functions(n in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        let f = RationalFunction::new(n, d).unwrap();
        let back = round_trip(&RationalDto::new(&f));
        prop_assert_eq!(back.to_rational().unwrap(), f);
    }

    #[test]
    fn series(p in poly(), n_max in 0u32..8) {
        let s = TruncatedSeries::from_poly(&p, n_max);
        let back = round_trip(&SeriesDto::new("w", &s));
        prop_assert_eq!(back.to_series().unwrap(), s);
    }

    #[test]
    fn results_and_graphs(raw in prop::collection::vec((0u16..4, any::<bool>()), 0..6)) {
        let sys = RecursionSystem::parse(GRIG).unwrap();
        let w = sys.normalize(&Word::from_letters(raw.iter().map(|&(id, inv)| Letter::Gen { id, inv }).collect()));
        let name = sys.display_word(&w);
        let mut eng = Engine::new(&sys);
        let res = rational_phi(&mut eng, &w, 2000).unwrap();
        let out = RationalOut::new(&sys, &name, &res);
        prop_assert_eq!(&round_trip(&out), &out);
        prop_assert_eq!(round_trip(&out).phi.to_rational().unwrap(), res.phi);
        let g = descendant_graph(&mut eng, &w, 2000);
        let dto = GraphDto::new(&sys, &name, &g, classify(&g));
        prop_assert_eq!(round_trip(&dto), dto);
    }
}

#[test]
fn nonrational_report_round_trips() {
    let rep = nonrational_report(6).unwrap();
    assert_eq!(round_trip(&rep), rep);
}
