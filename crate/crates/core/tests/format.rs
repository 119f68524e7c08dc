mod common;

use std::sync::Arc;

use common::*;
use floerkit::ainf::{AinfContext, AinfOperations, Dga, IsotopyPiece, MultiOp, PseudoIsotopy, Table};
use floerkit::floer::{morse_check, CriticalData, FilteredMap, PartialComplex, PartialHomotopy};
use floerkit::format::*;
use floerkit::gradecx::{CochainComplex, GradedSpace};
use floerkit::poly::Poly;
use floerkit::scalar::q;
use floerkit::{DiscreteSubmonoid, Error, MonoidElement, Novikov, Rational};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MORSE3: &str = r#"{
  "critical": [
    {"id": "0", "E": "0", "mu": 0, "dimR": 0, "complex": {"basis": [{"name": "p", "deg": 0}]}},
    {"id": "1", "E": "1", "mu": 1, "dimR": 0, "complex": {"basis": [{"name": "p", "deg": 0}]}},
    {"id": "1'", "E": "1", "mu": 1, "dimR": 0, "complex": {"basis": [{"name": "p", "deg": 0}]}},
    {"id": "2", "E": "2", "mu": 2, "dimR": 0, "complex": {"basis": [{"name": "p", "deg": 0}]}}
  ],
  "cut": "2",
  "counts": [
    {"minus": "0", "plus": "1", "matrix": [[0, 0, "1"]]},
    {"minus": "1", "plus": "2", "matrix": [[0, 0, "1"]]},
    {"minus": "0", "plus": "1'", "matrix": [[0, 0, "1"]]},
    {"minus": "1'", "plus": "2", "matrix": [[0, 0, "-1"]]}
  ],
  "dims": [
    {"minus": "0", "plus": "1", "dim": 0},
    {"minus": "1", "plus": "2", "dim": 0},
    {"minus": "0", "plus": "1'", "dim": 0},
    {"minus": "1'", "plus": "2", "dim": 0},
    {"minus": "0", "plus": "2", "dim": 1}
  ]
}"#;

fn schema_pointer(e: Error) -> String {
    match e {
        Error::Schema { pointer, .. } => pointer,
        e => panic!("expected a schema error, got {e:?}"),
    }
}

#[test]
fn malformed_rational_reports_its_pointer() {
    let text = MORSE3.replacen(r#""E": "1""#, r#""E": "1/0""#, 1);
    assert_eq!(schema_pointer(parse_ksystem(&text).unwrap_err()), "/critical/1/E");
    let text = MORSE3.replacen(r#""cut": "2""#, r#""cut": "two""#, 1);
    assert_eq!(schema_pointer(parse_ksystem(&text).unwrap_err()), "/cut");
}

#[test]
fn semantic_errors_have_pointers() {
    let unknown = MORSE3.replacen(r#""plus": "1'""#, r#""plus": "9""#, 1);
    assert_eq!(schema_pointer(parse_ksystem(&unknown).unwrap_err()), "/counts/2/plus");
    let outside = MORSE3.replacen("[[0, 0, \"-1\"]]", "[[0, 1, \"-1\"]]", 1);
    assert_eq!(schema_pointer(parse_ksystem(&outside).unwrap_err()), "/counts/3/matrix/0");
    let extra = MORSE3.replacen(r#""mu": 2,"#, r#""mu": 2, "colour": 1,"#, 1);
    let p = schema_pointer(parse_ksystem(&extra).unwrap_err());
    assert!(p.starts_with("/critical/3"), "{p}");
    let syntax = &MORSE3[..MORSE3.len() - 2];
    assert!(matches!(parse_ksystem(syntax), Err(Error::Schema { .. })));
}

#[test]
fn empty_system_is_empty() {
    match parse_ksystem(r#"{"critical": [], "cut": "0"}"#).unwrap() {
        KSystemFile::Complex(x) => {
            assert!(x.critical().is_empty());
            assert!(x.maps().is_empty());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn morse_file_parses_and_passes() {
    let KSystemFile::Morse { system, cut } = parse_ksystem(MORSE3).unwrap() else {
        panic!("not a Morse file")
    };
    assert_eq!(cut, q(2));
    assert_eq!(system.critical.len(), 4);
    assert!(morse_check(&system).passed());
    let back = parse_ksystem(&emit_ksystem(&KSystemFile::Morse {
        system: system.clone(),
        cut: cut.clone(),
    }))
    .unwrap();
    assert_eq!(back, KSystemFile::Morse { system, cut });
}

fn round_trip_ksystem(k: KSystemFile) {
    let text = emit_ksystem(&k);
    let back = parse_ksystem(&text).unwrap();
    assert_eq!(back, k);
    assert_eq!(emit_ksystem(&back), text);
}

#[test]
fn partial_complexes_round_trip() {
    let cd = six_labels();
    for seed in 0..5 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_unipotent(&mut rng, &cd, &r(2), 0.5);
        round_trip_ksystem(KSystemFile::Complex(conjugated_complex(&cd, &phi, &r(2))));
    }
    let odd = Arc::new(
        CriticalData::new(vec![label("x/y~z", rf(-3, 7), -1, 2, interval())]).unwrap(),
    );
    round_trip_ksystem(KSystemFile::Complex(PartialComplex::empty(odd, rf(5, 3)).unwrap()));
}

#[test]
fn emit_normalizes() {
    // reordered keys, "2/2" and an explicit zero all normalize away
    let text = r#"{"cut": "4/2", "critical": [{"id": "a", "E": "2/2", "mu": 0, "dimR": 0,
        "complex": {"d0": [], "basis": [{"name": "p", "deg": 0}]}}], "maps": []}"#;
    let k = parse_ksystem(text).unwrap();
    let out = emit_ksystem(&k);
    assert!(out.contains(r#""cut": "2""#) && out.contains(r#""E": "1""#), "{out}");
    assert_eq!(parse_ksystem(&out).unwrap(), k);
}

fn bundle() -> FloerBundle {
    let cd = six_labels();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cut = r(2);
    let phi = random_unipotent(&mut rng, &cd, &cut, 0.5);
    let x1 = conjugated_complex(&cd, &phi, &cut);
    let psi = Arc::new(FilteredMap::identity(Arc::new(x1.clone()), cut.clone()).unwrap());
    let h = PartialHomotopy::zero(psi.clone(), psi.clone()).unwrap();
    let mut b = FloerBundle::default();
    b.complexes.insert("x1".into(), Arc::new(x1));
    b.maps.insert(
        "id".into(),
        NamedMap {
            source: "x1".into(),
            target: "x1".into(),
            map: psi,
        },
    );
    b.homotopies.insert(
        "h".into(),
        NamedHomotopy {
            from: "id".into(),
            to: "id".into(),
            homotopy: h,
        },
    );
    b.task = Some(FloerTask::Limit {
        complexes: vec!["x1".into()],
        maps: vec![],
        choice: ChoiceDto::Minimal,
    });
    b
}

#[test]
fn bundles_round_trip() {
    let b = bundle();
    let text = emit_bundle(&b);
    let back = parse_bundle(&text).unwrap();
    assert_eq!(back, b);
    assert_eq!(emit_bundle(&back), text);
}

#[test]
fn bundle_interning_reuses_equal_objects() {
    let mut b = bundle();
    let x = b.complexes["x1"].as_ref().clone();
    assert_eq!(b.intern_complex(&x, "other"), "x1");
    let f = b.maps["id"].map.as_ref().clone();
    assert_eq!(b.intern_map(&f, "other"), "id");
    let cut = x.energy_cut(&r(1)).unwrap();
    assert_eq!(b.intern_complex(&cut, "x1@1"), "x1@1");
    assert_eq!(b.complexes.len(), 2);
}

#[test]
fn bundle_references_are_checked() {
    let text = emit_bundle(&bundle()).replacen(r#""source": "x1""#, r#""source": "nope""#, 1);
    assert_eq!(schema_pointer(parse_bundle(&text).unwrap_err()), "/maps/id/source");
}

fn beta(e: i64) -> MonoidElement {
    MonoidElement::new(q(e), 0)
}

/// `Q[u]/u³` (u in degree 2) with curvature `u` at `β = 1`.
fn curved() -> AinfOperations<Rational> {
    let sp = GradedSpace::new(vec![("1".into(), 0), ("u".into(), 2), ("u2".into(), 4)]).unwrap();
    let mut prod = Vec::new();
    for a in 0..3 {
        for b in 0..3 - a {
            prod.push((vec![a, b], a + b, q(1)));
        }
    }
    let dga = Dga::new(CochainComplex::from_triplets(sp, vec![]).unwrap(), MultiOp::from_entries(2, prod)).unwrap();
    let g = DiscreteSubmonoid::new(vec![beta(1)]).unwrap();
    let ctx = AinfContext::new(Arc::new(dga), 2, g, q(3), q(1)).unwrap();
    let mut t = Table::new();
    t.insert((beta(1), 0), MultiOp::from_entries(0, vec![(vec![], 1, rf(1, 2))]));
    t.insert((beta(2), 0), MultiOp::from_entries(0, vec![(vec![], 1, q(-3))]));
    AinfOperations::new(ctx, t).unwrap()
}

#[test]
fn ainf_round_trip() {
    let a = curved();
    let text = emit_ainf(&a);
    let back = parse_ainf(&text).unwrap();
    assert_eq!(back, a);
    assert_eq!(emit_ainf(&back), text);
    assert!(text.contains(r#""beta": "E:2,mu:0""#), "{text}");
}

#[test]
fn ainf_errors_have_pointers() {
    let text = emit_ainf(&curved());
    let at = text.rfind(r#""output": "u""#).unwrap();
    let bad_name = format!("{}{}", &text[..at], text[at..].replacen(r#""output": "u""#, r#""output": "v""#, 1));
    assert_eq!(schema_pointer(parse_ainf(&bad_name).unwrap_err()), "/ops/1/entries/0/output");
    let bad_beta = text.replacen("E:2,mu:0", "E:2,mu", 1);
    assert_eq!(schema_pointer(parse_ainf(&bad_beta).unwrap_err()), "/ops/1/beta");
}

#[test]
fn isotopy_round_trip() {
    let a = curved();
    let constant = PseudoIsotopy::constant(&a, vec![q(0), rf(1, 2), q(1)]).unwrap();
    let text = emit_isotopy(&constant);
    assert_eq!(parse_isotopy(&text).unwrap(), constant);

    let p = |c: &[Rational]| Poly::new(c.to_vec());
    let mut m = Table::new();
    m.insert((beta(1), 0), MultiOp::from_entries(0, vec![(vec![], 1, p(&[q(1), q(-2)]))]));
    let mut c = Table::new();
    c.insert((beta(1), 1), MultiOp::from_entries(1, vec![(vec![1], 1, p(&[q(0), q(0), rf(1, 3)]))]));
    let pieces = vec![
        IsotopyPiece { m: m.clone(), c: c.clone() },
        IsotopyPiece { m, c: Table::new() },
    ];
    let iso = PseudoIsotopy::new(a.context().clone(), vec![q(0), q(1), q(2)], pieces).unwrap();
    let text = emit_isotopy(&iso);
    let back = parse_isotopy(&text).unwrap();
    assert_eq!(back, iso);
    assert_eq!(emit_isotopy(&back), text);
    let short = text.replacen(r#""1/3""#, r#""1/3"], ["0""#, 1);
    assert!(parse_isotopy(&short).is_err());
}

#[test]
fn towers_share_one_dga() {
    let a = curved();
    let iso = PseudoIsotopy::constant(&a, vec![q(0), q(1)]).unwrap();
    let dto = AinfTowerDto {
        stages: vec![ainf_to_dto(&a), ainf_to_dto(&a)],
        isotopies: vec![isotopy_to_dto(&iso)],
    };
    let (stages, isos) = ainf_tower_from_dto(&dto).unwrap();
    assert!(Arc::ptr_eq(stages[0].context().dga(), stages[1].context().dga()));
    assert!(Arc::ptr_eq(stages[0].context().dga(), isos[0].context().dga()));
    let mut bad = dto.clone();
    bad.isotopies[0].breaks = vec![Q(q(1)), Q(q(0))];
    assert!(schema_pointer(ainf_tower_from_dto(&bad).unwrap_err()).starts_with("/isotopies/0"));
}

#[test]
fn monoids_and_novikov_elements() {
    let g = parse_monoid(r#"{"generators": ["E:1/2,mu:2", "E:3,mu:-2"]}"#).unwrap();
    assert_eq!(g.generators().len(), 2);
    assert_eq!(monoid_from_dto(&monoid_to_dto(&g), "").unwrap(), g);
    assert!(parse_monoid(r#"{"generators": ["E:0,mu:0"]}"#).is_err());

    let x = Novikov::from_terms(vec![(q(2), rf(1, 2), 1), (q(-1), q(0), 0), (q(3), rf(1, 2), 1)]);
    let dto = novikov_to_dto(&x);
    let json = serde_json::to_string(&dto).unwrap();
    assert_eq!(json, r#"[{"c":"-1","T":"0","e":0},{"c":"5","T":"1/2","e":1}]"#);
    assert_eq!(novikov_from_dto(&parse_json::<Vec<NovikovTermDto>>(&json).unwrap()), x);
    assert!(novikov_from_dto(&[]).is_zero());
}
