use mct_core::analyzer::{structure_report, AnalyzerConfig};
use mct_core::certificate::{parse, render};
use mct_core::constructions::{blowup_packing, crossing_edges, perturbed_construction, PartSizes, TnValue};
use mct_core::graph::PatternGraph;
use mct_core::partition::consecutive;
use mct_core::verifier::verify;

#[test]
fn perturbed_verifies_up_to_100() {
    for n in (10..=100).step_by(5) {
        let g = perturbed_construction(n).unwrap();
        let report = verify(&g);
        assert!(report.clean(), "n = {n}");
        assert_eq!(g.k() as u64, TnValue::of(n).t);
        assert_eq!(g.find_multicolored_copy(&PatternGraph::triangle()).unwrap(), None);
    }
}

#[test]
fn perturbed_structure_against_natural_partition() {
    let cfg = AnalyzerConfig::default();
    for n in (10..=50).step_by(5) {
        let q = (n / 5) as usize;
        let g = perturbed_construction(n).unwrap();
        let p = PartSizes::equal(q as u64).partition();
        let r = structure_report(&g, &p, &cfg).unwrap();
        assert_eq!(r.part_sizes, [q; 5]);
        assert_eq!(r.unstructured_count(), 2 * q, "n = {n}");
        assert_eq!(r.unstructured_count() + r.structured_total(), g.edge_count());

        let mut m: Vec<(usize, usize)> = r.unstructured.iter().map(|&(u, v, _)| (u, v)).collect();
        m.sort_unstable();
        let mut expected = crossing_edges(n).unwrap();
        expected.sort_unstable();
        assert_eq!(m, expected);
        let mut ends: Vec<usize> = m.iter().flat_map(|&(u, v)| [u, v]).collect();
        ends.sort_unstable();
        ends.dedup();
        assert_eq!(ends.len(), 4 * q, "crossing edges form a matching");
    }
}

#[test]
fn perturbed_keeps_the_blowup_degrees() {
    for q in 2..=6u64 {
        let a = blowup_packing(PartSizes::equal(q)).unwrap();
        let b = perturbed_construction(5 * q).unwrap();
        assert_eq!(a.degrees(), b.degrees());
    }
}

#[test]
fn balanced_packings_attain_t() {
    for n in 5..=16 {
        let sizes = PartSizes::balanced(n);
        assert_eq!(sizes.bottleneck(), TnValue::of(n).t, "n = {n}");
        let g = blowup_packing(sizes).unwrap();
        assert_eq!(g.k() as u64, TnValue::of(n).t);
        assert!(verify(&g).clean());
        let p = sizes.partition();
        for (u, v, _) in g.edges() {
            assert!(consecutive(p.part(u), p.part(v)));
        }
    }
}

#[test]
fn certificates_round_trip_and_verify_identically() {
    for n in [10, 25] {
        let g = perturbed_construction(n).unwrap();
        let p = PartSizes::equal(n / 5).partition();
        let back = parse(&render(&g, Some(&p))).unwrap();
        assert_eq!(verify(&back.graph), verify(&g));
        assert_eq!(back.partition, Some(p));
    }
    let g = blowup_packing(PartSizes::balanced(13)).unwrap();
    assert_eq!(verify(&parse(&render(&g, None)).unwrap().graph), verify(&g));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn bottleneck_never_exceeds_t(a in proptest::array::uniform5(1u64..40)) {
            let sizes = PartSizes(a);
            prop_assert!(sizes.bottleneck() <= TnValue::of(sizes.total()).t);
        }

        #[test]
        fn t_dominates_quadratic_lower(n in 0u64..100_000) {
            let t = TnValue::of(n).t as i128;
            let n = n as i128;
            // n²/25 − 2n/5 ≤ t  ⇔  n² − 10n ≤ 25t
            prop_assert!(n * n - 10 * n <= 25 * t);
        }

        #[test]
        fn equal_packings_are_valid(q in 1u64..12) {
            let g = blowup_packing(PartSizes::equal(q)).unwrap();
            prop_assert_eq!(g.k() as u64, q * q);
            prop_assert!(g.find_multicolored_triangle().is_none());
        }
    }
}

// Enumerated counts; they follow 2q(q − 1), which is 2n/5 only at q = 2.
#[test]
fn perturbed_triangle_counts() {
    for (n, expected) in [(10, 4), (15, 12), (20, 24), (25, 40), (30, 60), (50, 180)] {
        let census = mct_core::verifier::triangle_census(&perturbed_construction(n).unwrap());
        assert_eq!(census.triangle_count, expected, "n = {n}");
        assert_eq!(census.multicolored_count, 0);
    }
}
