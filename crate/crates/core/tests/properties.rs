use proptest::prelude::*;

use netcap_core::bounds::{self, BoundQuery, MacMode, NetworkConfig};
use netcap_core::gains::{gain_k, gain_n};
use netcap_core::sim::{run_replication, single_hop_convolution_check};
use netcap_core::{DiscretePmf, PmfKind};

fn pmf(kind: PmfKind, max_len: usize) -> impl Strategy<Value = DiscretePmf> {
    let lo = kind.min_support();
    (lo..lo + 20, prop::collection::vec(0.0..1.0_f64, 1..max_len)).prop_filter_map(
        "needs some mass",
        move |(start, w)| DiscretePmf::from_weights(start, &w, kind).ok(),
    )
}

fn mac() -> impl Strategy<Value = MacMode> {
    prop_oneof![
        (0.01..0.9_f64).prop_map(MacMode::FixedP),
        Just(MacMode::NeighborAware),
    ]
}

fn network() -> impl Strategy<Value = NetworkConfig> {
    (mac(), pmf(PmfKind::Density, 12), pmf(PmfKind::HopCount, 6), 1u32..8).prop_filter_map(
        "gamma within k_max",
        |(mac, n, k, g)| {
            let g = g.min(k.support_max());
            NetworkConfig::new(mac, n, k, g).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn masses_sum_to_one(law in pmf(PmfKind::Density, 40)) {
        let total: f64 = law.atoms().iter().map(|(_, m)| m).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(law.atoms().iter().all(|(_, m)| *m > 0.0));
    }

    #[test]
    fn density_jensen_gap(law in pmf(PmfKind::Density, 30)) {
        let g = gain_n(&law).unwrap();
        prop_assert!(g >= 1.0 - 1e-12);
        if !law.is_point_mass() {
            prop_assert!(g > 1.0);
        }
    }

    #[test]
    fn hop_count_jensen_gap(law in pmf(PmfKind::HopCount, 30)) {
        let g = gain_k(&law).unwrap();
        prop_assert!(g >= -1e-12);
        if !law.is_point_mass() {
            prop_assert!(g > 0.0);
        }
    }

    #[test]
    fn neighbor_aware_capacity_bracket(law in pmf(PmfKind::Density, 30)) {
        let net = NetworkConfig::new(
            MacMode::NeighborAware,
            law.clone(),
            DiscretePmf::point_mass(1, PmfKind::HopCount).unwrap(),
            1,
        ).unwrap();
        let cap = bounds::asymptotic_capacity(&net);
        let inv = law.mean_reciprocal().unwrap();
        prop_assert!(cap <= inv);
        prop_assert!(cap >= inv / std::f64::consts::E);
    }

    #[test]
    fn sandwich_and_monotonicity(net in network(), t_extra in 0u64..2000, eps in 0.001..0.5_f64) {
        let t = net.k_max() as u64 + t_extra;
        let q = BoundQuery::new(t, eps).unwrap();
        let b = bounds::capacity_bounds(&net, &q).unwrap();
        prop_assert!(b.lower_raw <= b.asymptotic + 1e-12);
        prop_assert!(b.asymptotic <= b.upper + 1e-12);

        let b2 = bounds::capacity_bounds(&net, &q.with_t(2 * t).unwrap()).unwrap();
        prop_assert!(b2.lower_raw >= b.lower_raw - 1e-9);
        prop_assert!(b2.upper <= b.upper + 1e-9);

        if net.gamma() < net.k_max() {
            let wider = net.with_gamma(net.gamma() + 1).unwrap();
            let bg = bounds::capacity_bounds(&wider, &q).unwrap();
            prop_assert!(bg.lower_raw <= b.lower_raw + 1e-9);
            prop_assert!(bg.upper >= b.upper - 1e-9);
        }
    }

    #[test]
    fn queue_recursion_equals_min_plus_convolution(
        steps in prop::collection::vec((0u64..4, any::<bool>()), 0..200)
    ) {
        let mut arrivals = vec![0u64];
        for (a, _) in &steps {
            arrivals.push(arrivals.last().unwrap() + a);
        }
        let bits: Vec<bool> = steps.iter().map(|(_, s)| *s).collect();
        let check = single_hop_convolution_check(&arrivals, &bits).unwrap();
        prop_assert!(check.equal);
        prop_assert_eq!(check.queue, check.convolution);
    }

    #[test]
    fn replications_are_reproducible(net in network(), seed in any::<u64>(), r in 0u64..1000) {
        let a = run_replication(&net, 300, seed, r, None);
        let b = run_replication(&net, 300, seed, r, None);
        prop_assert_eq!(a, b);
        prop_assert!(a <= 300);
    }
}
