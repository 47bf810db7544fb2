mod common;

use common::rel_err;
use proptest::prelude::*;
use unibench::ingest::{
    emit_canonical, emit_profiler_csv, emit_synthesis_summary, merge_records, parse_canonical,
    parse_profiler_csv, parse_synthesis_summary, profiler_records, synthesis_to_measurements,
    IngestError, IngestOptions, ProfilerExport, SynthesisSummary,
};
use unibench::{default_li_catalog, Measurement, Source, SubjectRecord};

const IDS: [&str; 10] = [
    "sw.et", "sw.th", "sw.cpi", "sw.cmr", "hw.et", "hw.th", "hw.pd", "hw.lut", "hw.lr", "hw.pc",
];

fn subject_id() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_-]{0,11}"
}

fn positive() -> impl Strategy<Value = f64> {
    prop_oneof![
        (-300.0f64..300.0).prop_map(|e| 10f64.powf(e)),
        (1u64..u64::MAX)
            .prop_map(|b| f64::from_bits(b % 0x7FF0_0000_0000_0000).max(f64::MIN_POSITIVE)),
    ]
}

fn source() -> impl Strategy<Value = Source> {
    prop_oneof![
        Just(Source::Measured),
        Just(Source::Ingested),
        Just(Source::Fixture)
    ]
}

fn record() -> impl Strategy<Value = SubjectRecord> {
    (
        subject_id(),
        prop::collection::btree_map(0usize..10, (positive(), source(), ".{0,20}"), 0..=10),
    )
        .prop_map(|(id, ms)| {
            let mut r = SubjectRecord::new(id);
            for (i, (v, s, d)) in ms {
                r.insert(Measurement::new(IDS[i], v, s, d).unwrap())
                    .unwrap();
            }
            r
        })
}

fn records() -> impl Strategy<Value = Vec<SubjectRecord>> {
    prop::collection::vec(record(), 0..6).prop_map(|mut v| {
        let mut seen = std::collections::BTreeSet::new();
        v.retain(|r| seen.insert(r.subject_id.clone()));
        v
    })
}

fn export() -> impl Strategy<Value = ProfilerExport> {
    (
        subject_id(),
        positive(),
        1u64..,
        1u64..,
        1u64..,
        any::<u64>(),
    )
        .prop_map(
            |(subject_id, et_s, instructions, cycles, cache_accesses, m)| ProfilerExport {
                subject_id,
                et_s,
                instructions,
                cycles,
                cache_accesses,
                cache_misses: m % cache_accesses.saturating_add(1),
            },
        )
}

fn summary() -> impl Strategy<Value = SynthesisSummary> {
    (
        subject_id(),
        (-2.0f64..4.0).prop_map(|e| 10f64.powf(e)),
        1u64..100_000,
        prop_oneof![Just(32u64), Just(64), Just(96), Just(128)],
        1u64..10_000_000,
        1u64..10_000_000,
        (-3.0f64..5.0).prop_map(|e| 10f64.powf(e)),
        (-2.0f64..3.0).prop_map(|e| 10f64.powf(e)),
    )
        .prop_map(
            |(
                subject_id,
                fmax_mhz,
                cycles_per_block,
                block_bits,
                lut_count,
                lr_count,
                power_mw,
                pd_ns,
            )| {
                SynthesisSummary {
                    subject_id,
                    fmax_mhz,
                    cycles_per_block,
                    block_bits,
                    lut_count,
                    lr_count,
                    power_mw,
                    pd_ns,
                }
            },
        )
}

fn by_subject(mut rs: Vec<SubjectRecord>) -> Vec<(String, Vec<(String, f64)>)> {
    rs.sort_by(|a, b| a.subject_id.cmp(&b.subject_id));
    rs.into_iter()
        .map(|r| {
            let ms = r
                .measurements
                .values()
                .map(|m| (m.indicator_id.clone(), m.value))
                .collect();
            (r.subject_id, ms)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_roundtrip(rs in records()) {
        let catalog = default_li_catalog();
        let text = emit_canonical(&rs, &catalog).unwrap();
        let mut warnings = Vec::new();
        let back = parse_canonical(&text, &catalog, &IngestOptions::default(), &mut warnings).unwrap();
        prop_assert_eq!(back, rs);
        prop_assert!(warnings.is_empty());
    }

    #[test]
    fn profiler_roundtrip(mut exports in prop::collection::vec(export(), 0..8)) {
        let mut seen = std::collections::BTreeSet::new();
        exports.retain(|e| seen.insert(e.subject_id.clone()));
        let back = parse_profiler_csv(&emit_profiler_csv(&exports)).unwrap();
        prop_assert_eq!(back, exports);
    }

    #[test]
    fn profiler_derivations(e in export()) {
        let eps = 1e-300;
        let mut warnings = Vec::new();
        let recs = profiler_records(
            std::slice::from_ref(&e),
            &IngestOptions { clamp_epsilon: Some(eps) },
            "",
            &mut warnings,
        )
        .unwrap();
        let r = &recs[0];
        let cmr = e.cache_misses as f64 / e.cache_accesses as f64;
        prop_assert_eq!(r.value("sw.et"), Some(e.et_s));
        prop_assert_eq!(r.value("sw.cpi"), Some(e.cycles as f64 / e.instructions as f64));
        prop_assert_eq!(r.value("sw.cmr"), Some(if cmr > 0.0 { cmr } else { eps }));
        prop_assert_eq!(warnings.len(), usize::from(cmr == 0.0));
    }

    #[test]
    fn synthesis_roundtrip(s in summary()) {
        let mut warnings = Vec::new();
        let back = parse_synthesis_summary(&emit_synthesis_summary(&s), &mut warnings).unwrap();
        prop_assert_eq!(back, s);
        prop_assert!(warnings.is_empty());
    }

    #[test]
    fn hardware_latency_times_rate_is_block_size(s in summary()) {
        let ms = synthesis_to_measurements(&s, "").unwrap();
        let get = |id: &str| ms.iter().find(|m| m.indicator_id == id).unwrap().value;
        prop_assert!(rel_err(get("hw.et") * get("hw.th"), s.block_bits as f64) < 1e-12);
        prop_assert!(rel_err(get("hw.et"), s.cycles_per_block as f64 / (s.fmax_mhz * 1e6)) < 1e-15);
        prop_assert_eq!(get("hw.pc"), s.power_mw / 1000.0);
    }

    #[test]
    fn merge_is_commutative_and_associative(a in records(), b in records(), c in records()) {
        let ab = merge_records(&a, &b);
        let ba = merge_records(&b, &a);
        match (&ab, &ba) {
            (Ok(x), Ok(y)) => prop_assert_eq!(by_subject(x.clone()), by_subject(y.clone())),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "merge succeeded in only one order"),
        }
        let left = ab.and_then(|ab| merge_records(&ab, &c));
        let right = merge_records(&b, &c).and_then(|bc| merge_records(&a, &bc));
        match (left, right) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "merge succeeded under only one grouping"),
        }
    }

    #[test]
    fn merge_with_self_is_identity(a in records()) {
        prop_assert_eq!(merge_records(&a, &a).unwrap(), a);
    }
}

#[test]
fn conflicting_values_are_rejected() {
    let rec = |v: f64| {
        SubjectRecord::new("xtea")
            .with(Measurement::new("hw.lut", v, Source::Ingested, "").unwrap())
            .unwrap()
    };
    assert_eq!(
        merge_records(&[rec(812.0)], &[rec(813.0)]).unwrap_err(),
        IngestError::ConflictingMeasurement {
            subject: "xtea".into(),
            indicator: "hw.lut".into(),
            value_a: 812.0,
            value_b: 813.0,
        }
    );
}

#[test]
fn canonical_errors_are_located() {
    let catalog = default_li_catalog();
    let parse = |t: &str| parse_canonical(t, &catalog, &IngestOptions::default(), &mut Vec::new());
    let doc = |m: &str| {
        format!(
            r#"{{"schema_version":1,"subjects":[{{"subject_id":"xtea","measurements":[{m}]}}]}}"#
        )
    };

    let unit = parse(&doc(r#"{"indicator_id":"hw.pc","value":412,"unit":"mW"}"#)).unwrap_err();
    assert_eq!(
        unit,
        IngestError::UnitMismatch {
            indicator: "hw.pc".into(),
            found: "mW".into(),
            expected: "W".into()
        }
    );

    match parse(&doc(r#"{"indicator_id":"sw.gpu","value":1,"unit":"s"}"#)).unwrap_err() {
        IngestError::Schema { location, .. } => assert_eq!(location, "subjects[0].measurements[0]"),
        e => panic!("{e:?}"),
    }
    match parse("{\"schema_version\":1,\n\"subjects\": [oops]}").unwrap_err() {
        IngestError::Schema { location, .. } => {
            assert!(location.starts_with("line 2"), "{location}")
        }
        e => panic!("{e:?}"),
    }
    assert!(matches!(
        parse(&doc(r#"{"indicator_id":"sw.et","value":0,"unit":"s"}"#)),
        Err(IngestError::Indicator(_))
    ));
}

#[test]
fn clamp_floor_is_opt_in() {
    let catalog = default_li_catalog();
    let text = r#"{"schema_version":1,"subjects":[{"subject_id":"xtea","measurements":[{"indicator_id":"sw.cmr","value":0,"unit":"dimensionless"}]}]}"#;
    assert!(parse_canonical(text, &catalog, &IngestOptions::default(), &mut Vec::new()).is_err());

    let mut warnings = Vec::new();
    let opts = IngestOptions {
        clamp_epsilon: Some(1e-6),
    };
    let recs = parse_canonical(text, &catalog, &opts, &mut warnings).unwrap();
    assert_eq!(recs[0].value("sw.cmr"), Some(1e-6));
    assert_eq!(warnings.len(), 1);
}
