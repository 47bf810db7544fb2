mod common;

use common::{indicator_specs, oracle_cmi, rel_err, single_subject_table};
use proptest::prelude::*;
use unibench::{
    build_ratio_table, compose_all, compose_cmi, default_li_catalog, normalize_ratio, rank,
    Directionality, Measurement, Source, SubjectRecord,
};

fn ratio() -> impl Strategy<Value = f64> {
    (-3.0f64..=3.0).prop_map(|e| 10f64.powf(e))
}

fn ratios(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(ratio(), 1..=max_len)
}

/// Raw values for `subjects` subjects over `n` indicators; subject 0 is the
/// reference.
fn raw_matrix(subjects: usize, n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(ratio(), n), subjects)
}

fn records(raw: &[Vec<f64>]) -> Vec<SubjectRecord> {
    raw.iter()
        .enumerate()
        .map(|(s, row)| {
            let mut r = SubjectRecord::new(format!("s{s}"));
            for (i, v) in row.iter().enumerate() {
                r.insert(Measurement::new(format!("i{i:02}"), *v, Source::Fixture, "").unwrap())
                    .unwrap();
            }
            r
        })
        .collect()
}

fn cmis(raw: &[Vec<f64>]) -> Vec<(String, f64)> {
    let (specs, profiles) = indicator_specs(raw[0].len());
    let table = build_ratio_table(&records(raw), "s0", &specs).unwrap();
    compose_all(&table, &profiles)
        .unwrap()
        .into_iter()
        .map(|r| (r.subject_id, r.cmi))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn matches_product_root_oracle(rs in ratios(20), profiles in 1usize..=4) {
        let (table, specs) = single_subject_table(&rs, profiles);
        let r = compose_cmi(&table, "s", &specs).unwrap();
        prop_assert_eq!(r.ratio_count, rs.len());
        prop_assert!(rel_err(r.cmi, oracle_cmi(&rs)) < 1e-9);
        prop_assert!(rel_err(r.cmi_via_profiles(), r.cmi) < 1e-12);
    }

    #[test]
    fn bounded_by_extreme_ratios(rs in ratios(20)) {
        let (table, specs) = single_subject_table(&rs, 2);
        let cmi = compose_cmi(&table, "s", &specs).unwrap().cmi;
        let lo = rs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = rs.iter().copied().fold(0.0, f64::max);
        prop_assert!(cmi >= lo * (1.0 - 1e-12) && cmi <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn scaling_every_ratio_scales_cmi(rs in ratios(20), k in ratio()) {
        let (table, specs) = single_subject_table(&rs, 2);
        let scaled: Vec<f64> = rs.iter().map(|r| r * k).collect();
        let (table_k, _) = single_subject_table(&scaled, 2);
        let a = compose_cmi(&table, "s", &specs).unwrap().cmi;
        let b = compose_cmi(&table_k, "s", &specs).unwrap().cmi;
        prop_assert!(rel_err(b, a * k) < 1e-9);
    }

    #[test]
    fn constant_ratios_give_that_constant(r in ratio(), l in 1usize..=20) {
        let rs = vec![r; l];
        let (table, specs) = single_subject_table(&rs, 3);
        prop_assert!(rel_err(compose_cmi(&table, "s", &specs).unwrap().cmi, r) < 1e-12);
    }

    #[test]
    fn order_of_indicators_is_irrelevant(rs in ratios(20), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut shuffled = rs.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let (a, sa) = single_subject_table(&rs, 1);
        let (b, sb) = single_subject_table(&shuffled, 1);
        let x = compose_cmi(&a, "s", &sa).unwrap().cmi;
        let y = compose_cmi(&b, "s", &sb).unwrap().cmi;
        prop_assert!(rel_err(x, y) < 1e-12);
    }

    #[test]
    fn normalize_orientation(v in ratio(), r in ratio()) {
        prop_assert_eq!(normalize_ratio(v, r, Directionality::HigherIsBetter).unwrap(), v / r);
        prop_assert_eq!(normalize_ratio(v, r, Directionality::LowerIsBetter).unwrap(), r / v);
        prop_assert_eq!(normalize_ratio(r, r, Directionality::LowerIsBetter).unwrap(), 1.0);
    }

    #[test]
    fn reference_scores_exactly_one(raw in raw_matrix(3, 10)) {
        let scores = cmis(&raw);
        let (_, cmi) = scores.iter().find(|(s, _)| s == "s0").unwrap();
        prop_assert!((cmi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn improving_a_measurement_raises_cmi(
        raw in raw_matrix(3, 8),
        subject in 1usize..3,
        indicator in 0usize..8,
        factor in 1.001f64..10.0,
    ) {
        let before = cmis(&raw);
        let mut better = raw.clone();
        // even indices are lower-is-better, odd higher-is-better
        if indicator % 2 == 0 {
            better[subject][indicator] /= factor;
        } else {
            better[subject][indicator] *= factor;
        }
        let after = cmis(&better);
        prop_assert!(after[subject].1 > before[subject].1);
        for s in (0..3).filter(|&s| s != subject) {
            prop_assert_eq!(after[s].1, before[s].1);
        }
    }

    #[test]
    fn rescaling_an_indicator_keeps_the_ranking(
        raw in raw_matrix(5, 6),
        indicator in 0usize..6,
        c in ratio(),
    ) {
        let mut scaled = raw.clone();
        for row in &mut scaled {
            row[indicator] *= c;
        }
        let a = cmis(&raw);
        let b = cmis(&scaled);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(rel_err(y.1, x.1) < 1e-12);
        }
    }

    #[test]
    fn ranking_is_competition_ordered(scores in prop::collection::vec(1u8..6, 1..12)) {
        let named: Vec<(String, f64)> =
            scores.iter().enumerate().map(|(i, s)| (format!("s{i:02}"), *s as f64)).collect();
        let rows = unibench::rank_scores(
            named.iter().map(|(s, v)| (s.as_str(), *v)),
        ).unwrap();
        prop_assert_eq!(rows.len(), named.len());
        for (i, row) in rows.iter().enumerate() {
            let better = rows.iter().filter(|r| r.cmi > row.cmi).count();
            prop_assert_eq!(row.rank, better + 1);
            if i > 0 {
                let prev = &rows[i - 1];
                prop_assert!(prev.cmi > row.cmi
                    || (prev.cmi == row.cmi && prev.subject_id < row.subject_id));
            }
        }
    }

    #[test]
    fn subject_order_does_not_change_results(raw in raw_matrix(4, 5)) {
        let (specs, profiles) = indicator_specs(5);
        let mut recs = records(&raw);
        let t1 = build_ratio_table(&recs, "s0", &specs).unwrap();
        recs.reverse();
        let t2 = build_ratio_table(&recs, "s0", &specs).unwrap();
        prop_assert_eq!(&t1, &t2);
        let r1 = compose_all(&t1, &profiles).unwrap();
        let r2 = compose_all(&t2, &profiles).unwrap();
        prop_assert_eq!(rank(&r1).unwrap(), rank(&r2).unwrap());
    }
}

#[test]
fn missing_indicator_shrinks_l() {
    let catalog = default_li_catalog();
    let full = |id: &str, scale: f64| {
        let mut r = SubjectRecord::new(id);
        for spec in catalog.indicators() {
            r.insert(Measurement::new(&spec.id, scale, Source::Fixture, "").unwrap())
                .unwrap();
        }
        r
    };
    let mut partial = full("b", 2.0);
    partial.measurements.remove("hw.pc");
    let table = build_ratio_table(&[full("a", 1.0), partial], "a", catalog.indicators()).unwrap();
    let results = compose_all(&table, catalog.profiles()).unwrap();
    let b = &results[1];
    assert_eq!(b.ratio_count, 9);
    assert_eq!(b.warnings.len(), 1);
    assert!(b.warnings[0].contains("hw.pc"));
    // the two throughputs are higher-is-better; the other seven halve
    assert!(
        rel_err(
            b.cmi,
            oracle_cmi(&[2.0, 2.0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5])
        ) < 1e-12
    );
}
