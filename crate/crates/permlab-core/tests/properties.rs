//! Cross-module identity checks at desk scale, plus randomized
//! round-trip invariants.

use proptest::prelude::*;

use permlab_core::perm::Permutation;
use permlab_core::verify;

#[test]
fn identity_suite_passes() {
    for report in verify::run_all(5) {
        assert!(report.pass, "{}: {:?}", report.name, report.detail);
    }
}

#[test]
fn theta_gamma_structure_at_larger_bound() {
    let checks = verify::all_checks();
    for (name, bound) in [
        ("theta-bijection-preserving", 7),
        ("theta-routes-agree", 7),
        ("gamma-checks", 7),
        ("multitunnel-components", 7),
        ("theta-irreducibility", 8),
        ("matching-second-rows", 8),
        ("catalan-avoider-counts", 8),
        ("psi-bijection", 7),
        ("wilf-extended", 8),
    ] {
        let check = checks.iter().find(|c| c.name == name).unwrap();
        assert!((check.run)(bound).is_ok(), "{name} fails at n_max={bound}");
    }
}

fn arbitrary_perm(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|values| Permutation::from_values(values).unwrap())
}

proptest! {
    #[test]
    fn perm_text_round_trip(sigma in arbitrary_perm(10)) {
        let text = sigma.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), sigma);
    }

    #[test]
    fn insert_then_remove_is_identity(
        sigma in arbitrary_perm(8),
        a in 1usize..=9,
        b in 1usize..=9,
    ) {
        let n = sigma.len();
        let a = a.min(n + 1);
        let b = b.min(n + 1);
        let grown = sigma.insert_at(a, b).unwrap();
        prop_assert_eq!(grown.remove_at(a).unwrap(), sigma);
    }

    #[test]
    fn direct_sum_is_associative(
        a in arbitrary_perm(5),
        b in arbitrary_perm(5),
        c in arbitrary_perm(5),
    ) {
        prop_assert_eq!(
            a.direct_sum(&b).direct_sum(&c),
            a.direct_sum(&b.direct_sum(&c))
        );
    }
}
