use padiclab::dsl::{
    self, check_stmt, corpus, eval, eval_exact, parse, parse_expr, parse_file, parse_stmt,
    Bindings, Expr, Parsed,
};
use padiclab::suite::{self, CheckId};
use padiclab::{Error, ModContext, Rational, Status};

fn bind(pairs: &[(&str, i64)]) -> Bindings {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[test]
fn one_sum_node() {
    let e = parse_expr("p * sum(k,1,p-1, 1/(k^2*binom(2*k,k)))").unwrap();
    assert_eq!(e.sum_count(), 1);
}

#[test]
fn statement_with_double_sum() {
    let Parsed::Stmt(s) = parse("H(1,2; p-1) === -3 * H(1;p-1)/p^2 mod p^2").unwrap() else {
        panic!("expected a statement");
    };
    assert_eq!(s.t, 2);
    assert!(matches!(s.lhs, Expr::Harmonic { ref parts, .. } if parts.len() == 2));
}

#[test]
fn truncated_input_is_positioned() {
    match parse("sum(k,1,").unwrap_err() {
        Error::Syntax {
            offset,
            line,
            column,
            ..
        } => {
            assert_eq!((offset, line, column), (9, 1, 9));
        }
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn unknown_function() {
    let err = parse_expr("1 + foo(2)").unwrap_err();
    assert!(matches!(err, Error::Syntax { offset: 5, .. }), "{err:?}");
}

#[test]
fn arity_is_checked() {
    assert!(parse_expr("binom(3)").is_err());
    assert!(parse_expr("H(1)").is_err());
}

#[test]
fn deep_nesting_is_rejected() {
    let deep = format!("{}1{}", "(".repeat(5000), ")".repeat(5000));
    assert!(matches!(parse_expr(&deep), Err(Error::Syntax { .. })));
}

#[test]
fn binomial_valuation() {
    let ctx = ModContext::new(7, 3).unwrap();
    let x = eval(
        &parse_expr("binom(2*k,k)").unwrap(),
        &ctx,
        &bind(&[("k", 5)]),
    )
    .unwrap();
    assert_eq!(x.valuation(), Some(1));
    assert_eq!(x.unit() % 7u128.pow(2), 36);
}

#[test]
fn fermat_quotient() {
    let ctx = ModContext::new(5, 1).unwrap();
    let x = eval(&parse_expr("q(2)").unwrap(), &ctx, &Bindings::new()).unwrap();
    assert_eq!(x.residue_at(1).unwrap(), (0, 3));
}

#[test]
fn c17_expression_at_three() {
    let ctx = ModContext::new(3, 4).unwrap();
    let e = parse_expr("p*sum(k, 1, p - 1, 1/(k^2*binom(2*k, k)))").unwrap();
    let x = eval(&e, &ctx, &Bindings::new()).unwrap();
    assert_eq!(x.residue_at(2).unwrap(), (0, 5));
}

#[test]
fn unbound_variable() {
    let ctx = ModContext::new(7, 2).unwrap();
    let err = eval(&parse_expr("k + 1").unwrap(), &ctx, &Bindings::new()).unwrap_err();
    assert!(matches!(err, Error::Eval(_)));
}

#[test]
fn exact_evaluation() {
    let e = parse_expr("H(1; 6) + B(2) - sum(k, 1, 3, k)").unwrap();
    let v = eval_exact(&e, &Bindings::new()).unwrap();
    assert_eq!(
        v,
        Rational::new(49.into(), 20.into()) + Rational::new(1.into(), 6.into())
            - Rational::from_integer(6.into())
    );
}

#[test]
fn condition_excludes_prime() {
    let s = parse_stmt("H(1; p - 1) === 0 mod p for p > 5").unwrap();
    let r = check_stmt(&s, 5).unwrap();
    assert_eq!(r[0].status, Status::NotApplicable);
    assert_eq!(check_stmt(&s, 7).unwrap()[0].status, Status::Pass);
}

#[test]
fn precision_beyond_capacity() {
    let s = parse_stmt("H(1; p - 1) === 0 mod p^500").unwrap();
    assert_eq!(
        check_stmt(&s, 7).unwrap()[0].status,
        Status::InsufficientPrecision
    );
}

#[test]
fn false_statement_fails() {
    let s = parse_stmt("H(1; p - 1) === 1 mod p").unwrap();
    assert_eq!(check_stmt(&s, 11).unwrap()[0].status, Status::Fail);
}

#[test]
fn composite_prime_is_an_error() {
    let s = parse_stmt("1 === 1 mod p").unwrap();
    assert!(matches!(check_stmt(&s, 9), Err(Error::NotOddPrime(9))));
}

#[test]
fn file_labels_and_errors() {
    let stmts =
        parse_file("# header\n\nH(1; p - 1) === 0 mod p  # trailing\nX[m=2]: m === 2 mod p\n")
            .unwrap();
    assert_eq!(stmts.len(), 2);
    assert_eq!(stmts[0].label.as_deref(), Some("S3"));
    assert_eq!(stmts[1].id(), "X");
    match parse_file("1 === 1 mod p\n1 === mod p\n").unwrap_err() {
        Error::Syntax {
            offset,
            line,
            column,
            ..
        } => assert_eq!((offset, line, column), (21, 2, 7)),
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn bindings_expand() {
    let s = parse_stmt("T: a + b === b + a mod p with a in 1..3, b in a..3").unwrap();
    let rows = check_stmt(&s, 5).unwrap();
    let params: Vec<String> = rows.iter().map(|r| r.params.to_string()).collect();
    assert_eq!(
        params,
        ["a=1;b=1", "a=1;b=2", "a=1;b=3", "a=2;b=2", "a=2;b=3", "a=3;b=3"]
    );
    assert!(rows.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn corpus_round_trips() {
    for s in corpus().unwrap() {
        let text = s.to_string();
        assert_eq!(parse_stmt(&text).unwrap(), s, "{text}");
    }
    for (name, text) in dsl::CORPUS {
        assert!(!parse_file(text).unwrap().is_empty(), "{name}");
    }
}

#[test]
fn corpus_c01_matches_suite_at_seven() {
    let stmts = parse_file(dsl::CORPUS[0].1).unwrap();
    let dsl_rows = check_stmt(&stmts[0], 7).unwrap();
    let suite_row = suite::check(CheckId::new(1).unwrap(), 7, &Default::default()).unwrap();
    assert_eq!(dsl_rows[0].status, Status::Pass);
    assert!(dsl_rows[0].same_outcome(&suite_row));
}

#[test]
fn corpus_matches_suite_small_primes() {
    for s in corpus().unwrap() {
        let id: CheckId = s.id().parse().unwrap();
        for p in [2u64, 3, 5, 7, 11, 13] {
            for row in check_stmt(&s, p).unwrap() {
                let expected = suite::check(id, p, &row.params).unwrap();
                assert!(row.same_outcome(&expected), "{row} vs {expected}");
            }
        }
    }
}
