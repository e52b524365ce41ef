use proptest::prelude::*;
use wikiqual_core::QualityClass;
use wikiqual_ml::{assign_folds, evaluate};

fn class() -> impl Strategy<Value = QualityClass> {
    (0u8..7).prop_map(|o| QualityClass::from_ordinal(o).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn metric_bounds(pairs in prop::collection::vec((class(), class()), 1..60)) {
        let (t, p): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let m = evaluate(&t, &p).unwrap();
        prop_assert!((0.0..=1.0).contains(&m.accuracy));
        prop_assert!((0.0..=36.0).contains(&m.mse));
        prop_assert_eq!(m.mse == 0.0, m.accuracy == 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn folds_follow_ids_not_rows(
        labels in prop::collection::vec(class(), 30..80),
        perm_seed in any::<u64>(),
        seed in any::<u64>(),
    ) {
        let ids: Vec<String> = (0..labels.len()).map(|i| format!("art_{i}")).collect();
        let mut smallest = usize::MAX;
        for c in QualityClass::ALL {
            let n = labels.iter().filter(|&&l| l == c).count();
            if n > 0 { smallest = smallest.min(n); }
        }
        prop_assume!(smallest >= 2);
        let a = assign_folds(&ids, &labels, 2, seed).unwrap();
        let mut order: Vec<usize> = (0..ids.len()).collect();
        order.sort_by_key(|&i| (i as u64).wrapping_mul(perm_seed | 1).rotate_left(17));
        let ids2: Vec<String> = order.iter().map(|&i| ids[i].clone()).collect();
        let labels2: Vec<QualityClass> = order.iter().map(|&i| labels[i]).collect();
        let b = assign_folds(&ids2, &labels2, 2, seed).unwrap();
        for (j, &i) in order.iter().enumerate() {
            prop_assert_eq!(a[i], b[j]);
        }
    }
}
