//! Catalog structure, parser, and round-trip tests.

use thetaquad_core::catalog::{
    builtin_catalog, instantiate, parse_rule, parse_rules, Assignment, Param, Status, TermKind,
};

#[test]
fn builtin_catalog_has_stable_composition() {
    let catalog = builtin_catalog();
    let theorems = catalog
        .iter()
        .filter(|r| r.status == Status::Theorem)
        .count();
    let conjectures = catalog
        .iter()
        .filter(|r| r.status == Status::Conjecture)
        .count();
    assert_eq!((catalog.len(), theorems, conjectures), (181, 106, 75));
}

#[test]
fn catalog_ids_are_unique() {
    let catalog = builtin_catalog();
    let mut ids: Vec<&str> = catalog.iter().map(|r| r.id.as_str()).collect();
    ids.sort_unstable();
    let before = ids.len();
    ids.dedup();
    assert_eq!(before, ids.len(), "duplicate rule ids");
}

#[test]
fn catalog_contains_expected_rules() {
    let catalog = builtin_catalog();
    assert!(catalog.iter().any(|r| r.id == "eq3.12"));
    let conj52: Vec<_> = catalog
        .iter()
        .filter(|r| r.id.starts_with("conj5.2."))
        .collect();
    assert_eq!(conj52.len(), 4, "four branch rules for conj5.2");
    assert!(conj52.iter().all(|r| r.status == Status::Conjecture));
}

#[test]
fn theorem_rules_carry_provenance() {
    for rule in builtin_catalog() {
        if rule.status == Status::Theorem {
            assert!(
                !rule.source.is_empty(),
                "rule {} lacks a source tag",
                rule.id
            );
        }
    }
}

#[test]
fn round_trip_through_printer() {
    for rule in builtin_catalog() {
        let printed = rule.print();
        let reparsed = parse_rule(&printed)
            .unwrap_or_else(|e| panic!("rule {} failed to reparse: {e}\n{printed}", rule.id));
        assert_eq!(
            reparsed, rule,
            "round trip changed rule {}\n{printed}",
            rule.id
        );
    }
}

#[test]
fn parse_example_rule() {
    let rule = parse_rule(
        "rule thm2.1: forall a b | odd(a), odd(b) :: t(a,2a,2a,2b; n) == 1/2 N(a,a,4a,2b; 8n+5a+2b)",
    )
    .unwrap();
    assert_eq!(rule.id, "thm2.1");
    assert_eq!(rule.params, vec![Param::A, Param::B]);
    assert_eq!(rule.sides.len(), 2);
    assert_eq!(rule.sides[0].len(), 1);
    let (rat, term) = &rule.sides[0][0];
    assert_eq!((rat.num, rat.den), (1, 1));
    assert_eq!(term.kind, TermKind::T);
    assert_eq!(term.coeff_forms.len(), 4);
    let (rat, term) = &rule.sides[1][0];
    assert_eq!((rat.num, rat.den), (1, 2));
    assert_eq!(term.kind, TermKind::N);
    assert_eq!(term.arg.n_coef, 8);
}

#[test]
fn parse_two_term_side() {
    let rule =
        parse_rule("rule eq4.3: t(2,3,3,8; 2n) + t(1,1,6,24; 2n-2) == t(1,1,3,3; n)").unwrap();
    assert_eq!(rule.sides[0].len(), 2);
    assert_eq!(rule.sides[0][1].1.arg.constant, -2);
}

#[test]
fn malformed_rule_reports_position() {
    let err = parse_rule("rule bad: t(a,; n) == t(1; n)").unwrap_err();
    assert_eq!(err.line, 1);
    assert!(err.col > 1);
}

#[test]
fn unknown_parameter_rejected() {
    assert!(parse_rule("rule bad: t(a; n) == t(1; n)").is_err());
    assert!(parse_rules("rule bad: forall a | odd(b) :: t(a; n) == t(a; 2n)").is_err());
}

#[test]
fn instantiate_specializes_thm2_1() {
    let catalog = builtin_catalog();
    let rule = catalog.iter().find(|r| r.id == "thm2.1").unwrap();
    let concrete = instantiate(rule, &Assignment::with(&[(Param::A, 1), (Param::B, 1)])).unwrap();
    assert_eq!(concrete.sides.len(), 2);
    let t = &concrete.sides[0][0].1;
    assert_eq!(t.spec.coeffs(), &[1, 2, 2, 2]);
    assert_eq!((t.n_scale, t.offset), (1, 0));
    let n = &concrete.sides[1][0].1;
    assert_eq!(n.spec.coeffs(), &[1, 1, 4, 2]);
    assert_eq!((n.n_scale, n.offset), (8, 7));
    assert_eq!(concrete.denom_lcm, 2);
}

#[test]
fn instantiate_rejects_even_parameter() {
    let catalog = builtin_catalog();
    let rule = catalog.iter().find(|r| r.id == "thm2.1").unwrap();
    assert!(instantiate(rule, &Assignment::with(&[(Param::A, 2), (Param::B, 1)])).is_err());
}

#[test]
fn instantiate_specializes_eq3_29() {
    let catalog = builtin_catalog();
    let rule = catalog.iter().find(|r| r.id == "eq3.29").unwrap();
    let concrete = instantiate(
        rule,
        &Assignment::with(&[(Param::A, 1), (Param::B, 1), (Param::C, 1)]),
    )
    .unwrap();
    let lhs = &concrete.sides[0][0].1;
    assert_eq!(lhs.spec.coeffs(), &[3, 5, 2, 2]);
    assert_eq!((lhs.n_scale, lhs.offset), (2, 3));
    let rhs = &concrete.sides[1][0].1;
    assert_eq!(rhs.spec.coeffs(), &[1, 15, 1, 1]);
    assert_eq!((rhs.n_scale, rhs.offset), (1, 0));
}

#[test]
fn remark_rule_divides_parameter_sum() {
    let catalog = builtin_catalog();
    let rule = catalog.iter().find(|r| r.id == "remark5.1a").unwrap();
    let concrete = instantiate(
        rule,
        &Assignment::with(&[(Param::A, 1), (Param::B, 1), (Param::C, 1), (Param::D, 5)]),
    )
    .unwrap();
    let subtracted = &concrete.sides[1][1].1;
    assert_eq!((subtracted.n_scale, subtracted.offset), (2, 2));
}

mod fuzz {
    use proptest::prelude::*;
    use thetaquad_core::catalog::parse_rules;

    proptest! {
        // the parser must reject garbage with an error, never a panic
        #[test]
        fn parser_never_panics(input in "\\PC{0,200}") {
            let _ = parse_rules(&input);
        }

        #[test]
        fn parser_never_panics_on_rule_like_input(
            input in "rule [a-z0-9.]{1,8}: (forall [abcd ]{1,5}\\| )?[tN]\\([0-9a-d,+/() ]{1,20}; [0-9a-dn+-]{1,12}\\) == [0-9/ ]{0,6}[tN]\\([0-9a-d,]{1,12}; [0-9n+]{1,8}\\)"
        ) {
            let _ = parse_rules(&input);
        }
    }
}

#[test]
fn unreduced_residue_is_a_parse_error() {
    assert!(parse_rule("rule bad: | n ≡ 20 (mod 16) :: t(1; n) == t(1; n)").is_err());
}

#[test]
fn no_rule_is_vacuous_on_the_acceptance_grid() {
    // a transcription slip in a residue condition could silently skip every
    // n; require that each rule has an assignment and an n that really runs
    for rule in builtin_catalog() {
        let max_param = if rule.status == Status::Conjecture {
            1
        } else {
            8
        };
        let mut live = false;
        for assignment in thetaquad_core::verify::admissible_assignments(&rule, max_param) {
            let concrete = instantiate(&rule, &assignment).unwrap();
            if concrete.any_admissible_n(0, 300) {
                live = true;
                break;
            }
        }
        assert!(
            live,
            "rule {} never runs with parameters up to {max_param}",
            rule.id
        );
    }
}

#[test]
fn catalog_inventory_is_stable() {
    let catalog = builtin_catalog();
    let count_prefix = |prefix: &str| -> usize {
        catalog
            .iter()
            .filter(|r| r.id == prefix || r.id.starts_with(&format!("{prefix}.")))
            .count()
    };
    // single-statement families
    for id in [
        "thm2.1", "thm2.2", "thm2.3", "thm2.5", "thm2.6", "thm2.8", "thm2.9", "thm2.10", "cor2.1",
        "cor2.2", "cor2.3", "cor2.5", "cor2.6", "cor2.7", "eq4.3", "conj5.9", "conj5.19",
        "conj5.20",
    ] {
        assert_eq!(count_prefix(id), 1, "{id}");
    }
    // branch counts per family
    let expected = [
        ("s1", 4),
        ("thm2.4", 2),
        ("thm2.11", 2),
        ("cor2.4", 3),
        ("thm4.1", 1),
        ("thm5.1", 4),
        ("thm5.2", 7),
        ("thm5.3", 2),
        ("cor5.1", 2),
        ("conj5.1", 3),
        ("conj5.2", 4),
        ("conj5.3", 4),
        ("conj5.4", 3),
        ("conj5.5", 5),
        ("conj5.6", 6),
        ("conj5.7", 4),
        ("conj5.8", 3),
        ("conj5.10", 4),
        ("conj5.11", 3),
        ("conj5.12", 2),
        ("conj5.13", 5),
        ("conj5.14", 3),
        ("conj5.15", 3),
        ("conj5.16", 3),
        ("conj5.17", 6),
        ("conj5.18", 8),
        ("conj5.21", 3),
    ];
    for (prefix, want) in expected {
        assert_eq!(count_prefix(prefix), want, "{prefix}");
    }
    // remark5.1a/b don't share the dotted-prefix shape
    assert_eq!(
        catalog
            .iter()
            .filter(|r| r.id.starts_with("remark5.1"))
            .count(),
        2
    );
    // the transformation sections are complete
    let eq3: Vec<&str> = catalog
        .iter()
        .map(|r| r.id.as_str())
        .filter(|id| id.starts_with("eq3."))
        .collect();
    assert_eq!(eq3.len(), 31);
    for k in (1..=19).chain(29..=40) {
        assert!(eq3.contains(&format!("eq3.{k}").as_str()), "eq3.{k}");
    }
    let eq5: Vec<&str> = catalog
        .iter()
        .map(|r| r.id.as_str())
        .filter(|id| id.starts_with("eq5."))
        .collect();
    assert_eq!(eq5.len(), 31);
    for k in 3..=33 {
        assert!(eq5.contains(&format!("eq5.{k}").as_str()), "eq5.{k}");
    }
}
