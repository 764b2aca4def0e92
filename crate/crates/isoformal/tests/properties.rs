mod common;

use isoformal::classify::{classify_pair, cross_validate_pair, Branch, ClassifyConfig, Verdict};
use isoformal::cohomology::{coinvariant_cross_check, cohomology_dim_d, DEFAULT_COINVARIANT_CAP};
use isoformal::pair::pair_from_vector;
use isoformal::roots::RootSystem;
use isoformal::weyl::DEFAULT_WEYL_CAP;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GROUPS: [&str; 8] = ["A2", "A3", "B2", "B3", "C3", "G2", "A1xB2", "A2+T1"];

fn same_decision(a: &Verdict, b: &Verdict) -> bool {
    a.formal == b.formal && a.branch == b.branch && a.d == b.d && a.n_order == b.n_order && a.mn == b.mn
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdict_is_weyl_invariant(gi in 0..GROUPS.len(), seed in any::<u64>()) {
        let rs = RootSystem::from_spec_str(GROUPS[gi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = common::random_t_vector(&rs, &mut rng);
        let w = common::random_weyl_element(&rs, &mut rng);
        let cfg = ClassifyConfig::default();
        let a = classify_pair(&pair_from_vector(&rs, &v).unwrap(), &cfg);
        let b = classify_pair(&pair_from_vector(&rs, &w.mul_vec(&v)).unwrap(), &cfg);
        prop_assert!(same_decision(&a, &b));
    }

    #[test]
    fn verdict_matches_dimension_criterion(gi in 0..GROUPS.len(), seed in any::<u64>()) {
        let rs = RootSystem::from_spec_str(GROUPS[gi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = pair_from_vector(&rs, &common::random_t_vector(&rs, &mut rng)).unwrap();
        prop_assume!(pair.pi1_rank == 0);
        let c = cross_validate_pair(&pair, &ClassifyConfig::default()).unwrap();
        prop_assert!(c.consistent, "{:?}", c);
    }

    #[test]
    fn branch_matches_d(gi in 0..GROUPS.len(), seed in any::<u64>()) {
        let rs = RootSystem::from_spec_str(GROUPS[gi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = pair_from_vector(&rs, &common::random_t_vector(&rs, &mut rng)).unwrap();
        let v = classify_pair(&pair, &ClassifyConfig::default());
        prop_assert_eq!(v.formal, v.branch.is_formal());
        if v.branch == Branch::DEquals4NStrict {
            prop_assert!(v.w0_negates_v && v.w0s_in_wvs == Some(false));
        }
        if pair.pi1_rank == 0 {
            let (dim, _, _) = cohomology_dim_d(&pair, DEFAULT_WEYL_CAP, None).unwrap();
            prop_assert_eq!(v.branch == Branch::DEquals2, dim.d == Some(2));
        }
    }

    #[test]
    fn verdict_json_round_trips(gi in 0..GROUPS.len(), seed in any::<u64>()) {
        let rs = RootSystem::from_spec_str(GROUPS[gi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = pair_from_vector(&rs, &common::random_t_vector(&rs, &mut rng)).unwrap();
        let v = classify_pair(&pair, &ClassifyConfig::default());
        let back: Verdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn coinvariant_count_is_orbit_size(gi in 0..GROUPS.len(), seed in any::<u64>()) {
        let rs = RootSystem::from_spec_str(GROUPS[gi]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = pair_from_vector(&rs, &common::random_t_vector(&rs, &mut rng)).unwrap();
        let c = coinvariant_cross_check(&pair, DEFAULT_COINVARIANT_CAP).unwrap();
        prop_assert_eq!(c.invariant_dims.iter().sum::<usize>() as u128, c.expected_total);
        prop_assert!(c.hilbert_matches);
    }
}
