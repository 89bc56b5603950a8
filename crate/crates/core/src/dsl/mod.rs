//! A small language for congruence statements.
//!
//! ```text
//! C17: p*sum(k, 1, p - 1, 1/(k^2*binom(2*k, k))) === (1 - leg(p, 3)^2)/2 mod p^2
//! C15: p*sum(k, 1, p - 1, m^k/(k*binom(2*k, k))) === (m*u(p, 2 - m) - m^p)/2 mod p^2 with m in -5..6
//! ```
//!
//! Expressions use `+ - * / ^`, parentheses, integers, variables and the
//! built-ins `binom`, `B`, `u`, `v`, `fib`, `luc`, `leg`, `q`, `catalan`,
//! `fact`, `H(a, ...; n)` and `sum(k, lo, hi, body)`. A statement may carry a
//! label with parameters (`C07[form=ph2]:`), side conditions evaluated
//! exactly (`for p > 5 and leg(m, p)^2 == 1`) and parameter ranges
//! (`with a in 1..5, b in 1..6 - a`). `p` is always bound to the prime.

mod ast;
mod check;
mod eval;
mod lexer;
mod parser;

pub use ast::{BinOp, Binding, Condition, CongruenceStmt, Expr, Func, RelOp};
pub use check::{check_instance, check_stmt, check_stmt_with, sweep_stmts, DEFAULT_ID};
pub use eval::{eval, eval_exact, Bindings};

use parser::Parser;

use crate::{Error, Result};

/// Result of [`parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Expr(Expr),
    Stmt(CongruenceStmt),
}

/// Parses a statement if the text contains `===`, an expression otherwise.
pub fn parse(text: &str) -> Result<Parsed> {
    if text.contains("===") {
        parse_stmt(text).map(Parsed::Stmt)
    } else {
        parse_expr(text).map(Parsed::Expr)
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_stmt(text: &str) -> Result<CongruenceStmt> {
    let mut p = Parser::new(text)?;
    let s = p.stmt()?;
    p.finish()?;
    Ok(s)
}

/// Parses one statement per line. `#` starts a comment; blank lines are
/// skipped. Unlabeled statements get the label `S<line>`. Syntax errors
/// report positions within the whole text.
pub fn parse_file(text: &str) -> Result<Vec<CongruenceStmt>> {
    let mut out = Vec::new();
    let mut line_start = 0;
    for (i, raw) in text.split('\n').enumerate() {
        let code = raw.split('#').next().unwrap_or_default();
        if !code.trim().is_empty() {
            let mut stmt = parse_stmt(code).map_err(|e| match e {
                Error::Syntax {
                    offset,
                    column,
                    message,
                    ..
                } => Error::Syntax {
                    offset: line_start + offset,
                    line: i + 1,
                    column,
                    message,
                },
                other => other,
            })?;
            if stmt.label.is_none() {
                stmt.label = Some(format!("S{}", i + 1));
            }
            out.push(stmt);
        }
        line_start += raw.chars().count() + 1;
    }
    Ok(out)
}

/// The bundled statement files, one per registry check.
pub const CORPUS: [(&str, &str); 27] = [
    ("C01.cong", include_str!("../../checks/C01.cong")),
    ("C02.cong", include_str!("../../checks/C02.cong")),
    ("C03.cong", include_str!("../../checks/C03.cong")),
    ("C04.cong", include_str!("../../checks/C04.cong")),
    ("C05.cong", include_str!("../../checks/C05.cong")),
    ("C06.cong", include_str!("../../checks/C06.cong")),
    ("C07.cong", include_str!("../../checks/C07.cong")),
    ("C08.cong", include_str!("../../checks/C08.cong")),
    ("C09.cong", include_str!("../../checks/C09.cong")),
    ("C10.cong", include_str!("../../checks/C10.cong")),
    ("C11.cong", include_str!("../../checks/C11.cong")),
    ("C12.cong", include_str!("../../checks/C12.cong")),
    ("C13.cong", include_str!("../../checks/C13.cong")),
    ("C14.cong", include_str!("../../checks/C14.cong")),
    ("C15.cong", include_str!("../../checks/C15.cong")),
    ("C16.cong", include_str!("../../checks/C16.cong")),
    ("C17.cong", include_str!("../../checks/C17.cong")),
    ("C18.cong", include_str!("../../checks/C18.cong")),
    ("C19.cong", include_str!("../../checks/C19.cong")),
    ("C20.cong", include_str!("../../checks/C20.cong")),
    ("C21.cong", include_str!("../../checks/C21.cong")),
    ("C22.cong", include_str!("../../checks/C22.cong")),
    ("C23.cong", include_str!("../../checks/C23.cong")),
    ("C24.cong", include_str!("../../checks/C24.cong")),
    ("C25.cong", include_str!("../../checks/C25.cong")),
    ("C26.cong", include_str!("../../checks/C26.cong")),
    ("C27.cong", include_str!("../../checks/C27.cong")),
];

/// Every statement of [`CORPUS`], in file order.
pub fn corpus() -> Result<Vec<CongruenceStmt>> {
    let mut out = Vec::new();
    for (_, text) in CORPUS {
        out.extend(parse_file(text)?);
    }
    Ok(out)
}
