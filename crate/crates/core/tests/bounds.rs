mod common;

use laurent_fft::bounds::{bounds_row, euler_totient, factorize, heideman_bound, heideman_burrus_bound, nlog2n_rounded};

#[test]
fn heideman_matches_oracle_past_table_range() {
    for n in 1..=200u64 {
        assert_eq!(heideman_bound(n), common::heideman_oracle(n), "N={n}");
    }
}

#[test]
fn totient_matches_counting() {
    for n in 1..=300u64 {
        assert_eq!(euler_totient(n), common::phi(n), "n={n}");
    }
}

#[test]
fn factorization_multiplies_back() {
    for n in 1..=500u64 {
        let f = factorize(n);
        assert_eq!(f.product(), n);
        assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
    }
}

#[test]
fn small_values() {
    assert_eq!(heideman_bound(1), 0);
    assert_eq!(heideman_bound(2), 0);
    assert_eq!(heideman_bound(4), 0);
    assert_eq!(heideman_bound(8), 2);
    assert_eq!(nlog2n_rounded(2), 2);
    assert_eq!(nlog2n_rounded(12), 43);
    assert_eq!(nlog2n_rounded(20), 86);
}

#[test]
fn burrus_only_for_powers_of_two() {
    assert!(heideman_burrus_bound(12).is_err());
    assert!(heideman_burrus_bound(1).is_err());
    for n in 1..=64u64 {
        assert_eq!(bounds_row(n).heideman_burrus_mu.is_some(), n >= 2 && n.is_power_of_two(), "N={n}");
    }
}
