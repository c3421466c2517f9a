use nilsoliton_core::algebra_file::{parse_algebra_file, print_algebra_file};
use nilsoliton_core::catalog::{
    classification_entry, classification_table, get_algebra, verify_entry, AlgebraId, Sampler,
    Verdict,
};
use nilsoliton_core::golden::GoldenSource;
use nilsoliton_core::liealg::Relation;
use nilsoliton_core::Error;

#[test]
fn table_rows() {
    let a54 = get_algebra(AlgebraId::A5_4);
    let brackets: Vec<String> = a54
        .lie()
        .nonzero_brackets()
        .into_iter()
        .map(|(i, j, v)| format!("[v{},v{}]={}", i + 1, j + 1, v.0[4].pretty()))
        .collect();
    assert_eq!(brackets, ["[v1,v3]=alpha", "[v1,v4]=beta", "[v2,v3]=gamma"]);
    assert!(get_algebra(AlgebraId::FiveA1).lie().nonzero_brackets().is_empty());
    let a56 = get_algebra(AlgebraId::A5_6);
    assert_eq!(a56.constraint("alpha"), Some(Relation::Negative));
    for p in ["gamma", "epsilon", "sigma"] {
        assert_eq!(a56.constraint(p), Some(Relation::Positive));
    }
    for p in ["beta", "delta"] {
        assert_eq!(a56.constraint(p), Some(Relation::Free));
    }
}

#[test]
fn verdicts() {
    let table = classification_table();
    assert_eq!(table.len(), 10);
    let verdict = |id| classification_entry(id).verdict;
    assert_eq!(verdict(AlgebraId::FiveA1), Verdict::Always);
    assert_eq!(verdict(AlgebraId::A3_1Plus2A1), Verdict::Always);
    assert_eq!(verdict(AlgebraId::A5_6), Verdict::Never);
    let families = table.iter().filter(|e| e.verdict == Verdict::Family).count();
    assert_eq!(families, 7);
    for e in &table {
        assert_eq!(e.family_constraints.is_empty(), e.verdict != Verdict::Family);
    }
    let a52: Vec<String> = classification_entry(AlgebraId::A5_2)
        .family_constraints
        .iter()
        .map(ToString::to_string)
        .collect();
    assert_eq!(a52, ["beta = 0", "4*alpha^2 = 3*gamma^2", "4*delta^2 = 3*gamma^2", "alpha = delta"]);
}

#[test]
fn verify_entries() {
    let r = verify_entry(AlgebraId::A5_4, 50, 50, 1);
    assert!(r.passed(), "{r:?}");
    assert_eq!((r.feasible.checked, r.infeasible.checked), (50, 50));
    let r = verify_entry(AlgebraId::A5_6, 0, 100, 1);
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.infeasible.passed, 100);
    let r = verify_entry(AlgebraId::A3_1Plus2A1, 100, 0, 1);
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.feasible.passed, 100);
}

#[test]
fn verification_is_deterministic() {
    for id in [AlgebraId::A5_5, AlgebraId::A5_2] {
        assert_eq!(verify_entry(id, 6, 6, 9), verify_entry(id, 6, 6, 9));
    }
    let a: Vec<_> = (0..5).map(|_| Sampler::new(AlgebraId::A5_3, 4).off_family()).collect();
    assert!(a.windows(2).all(|w| w[0] == w[1]));
    let mut s = Sampler::new(AlgebraId::A5_3, 4);
    let b: Vec<_> = (0..5).map(|_| s.off_family()).collect();
    assert!(b.windows(2).any(|w| w[0] != w[1]));
}

#[test]
fn golden_definition_files_round_trip() {
    for id in AlgebraId::ALL {
        let text = GoldenSource::Embedded.algebra_text(id).unwrap();
        let file = parse_algebra_file(&text).unwrap();
        assert_eq!(file.algebra, get_algebra(id));
        let again = parse_algebra_file(&print_algebra_file(&file)).unwrap();
        assert_eq!(again, file);
    }
}

#[test]
fn definition_file_examples() {
    let f = parse_algebra_file("dim 5\nparam alpha positive\nbracket 1 2 : alpha*e5\n").unwrap();
    assert_eq!(f.algebra.lie(), get_algebra(AlgebraId::A3_1Plus2A1).lie());
    assert_eq!(f.algebra.constraints(), get_algebra(AlgebraId::A3_1Plus2A1).constraints());
    let f = parse_algebra_file("dim 5\n").unwrap();
    assert!(f.algebra.lie().is_abelian());
    assert!(matches!(
        parse_algebra_file("dim 5\nbracket 1 1 : e2\n"),
        Err(Error::Syntax { line: 2, .. })
    ));
    assert!(matches!(
        parse_algebra_file("dim 3\nbracket 1 2 : e3\nbracket 1 2 : e3\n"),
        Err(Error::DuplicateBracket(1, 2))
    ));
    let violation = parse_algebra_file("dim 3\nbracket 1 2 : e3\nbracket 1 3 : e1\n").unwrap_err();
    assert!(matches!(violation, Error::JacobiViolation(ref v) if v[0].starts_with("(1,2,3)")), "{violation}");
}
