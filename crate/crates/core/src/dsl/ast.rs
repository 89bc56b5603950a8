use std::fmt;

use num_bigint::BigInt;

use crate::suite::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn is_additive(self) -> bool {
        matches!(self, BinOp::Add | BinOp::Sub)
    }
}

/// Built-in functions with a fixed arity. `H` and `sum` have their own
/// syntax and AST nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    /// `binom(n, k)`, generalized to negative `n`.
    Binom,
    /// `B(m)`, Bernoulli number with `B(1) = -1/2`.
    Bernoulli,
    /// `u(n, x)`, Lucas sequence with seeds 0, 1.
    LucasU,
    /// `v(n, x)`, Lucas sequence with seeds 2, x.
    LucasV,
    Fib,
    Luc,
    /// `leg(a, q)`, Legendre symbol modulo the odd prime `q`.
    Legendre,
    /// `q(a)`, Fermat quotient at the ambient prime.
    FermatQuotient,
    Catalan,
    Fact,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Binom,
        Func::Bernoulli,
        Func::LucasU,
        Func::LucasV,
        Func::Fib,
        Func::Luc,
        Func::Legendre,
        Func::FermatQuotient,
        Func::Catalan,
        Func::Fact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Binom => "binom",
            Func::Bernoulli => "B",
            Func::LucasU => "u",
            Func::LucasV => "v",
            Func::Fib => "fib",
            Func::Luc => "luc",
            Func::Legendre => "leg",
            Func::FermatQuotient => "q",
            Func::Catalan => "catalan",
            Func::Fact => "fact",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Binom | Func::LucasU | Func::LucasV | Func::Legendre => 2,
            _ => 1,
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Binary {
        op: BinOp,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Pow {
        base: Box<Expr>,
        exp: Box<Expr>,
    },
    Call {
        func: Func,
        args: Vec<Expr>,
    },
    /// `H(a1, ..., ar; upper)`.
    Harmonic {
        parts: Vec<Expr>,
        upper: Box<Expr>,
    },
    /// `sum(var, lo, hi, body)`, inclusive bounds.
    Sum {
        var: String,
        lo: Box<Expr>,
        hi: Box<Expr>,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Int(BigInt::from(n))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary {
            op,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    /// Number of `sum` nodes in the tree.
    pub fn sum_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |e| {
            if matches!(e, Expr::Sum { .. }) {
                n += 1;
            }
        });
        n
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Int(_) | Expr::Var(_) => {}
            Expr::Neg(x) => x.visit(f),
            Expr::Binary { lhs, rhs, .. } => {
                lhs.visit(f);
                rhs.visit(f);
            }
            Expr::Pow { base, exp } => {
                base.visit(f);
                exp.visit(f);
            }
            Expr::Call { args, .. } => args.iter().for_each(|a| a.visit(f)),
            Expr::Harmonic { parts, upper } => {
                parts.iter().for_each(|a| a.visit(f));
                upper.visit(f);
            }
            Expr::Sum { lo, hi, body, .. } => {
                lo.visit(f);
                hi.visit(f);
                body.visit(f);
            }
        }
    }

    fn is_atom(&self) -> bool {
        matches!(
            self,
            Expr::Int(_)
                | Expr::Var(_)
                | Expr::Call { .. }
                | Expr::Harmonic { .. }
                | Expr::Sum { .. }
        )
    }

    /// Forms accepted where the grammar expects a factor.
    fn is_factor(&self) -> bool {
        self.is_atom() || matches!(self, Expr::Neg(_) | Expr::Pow { .. })
    }

    fn is_term(&self) -> bool {
        match self {
            Expr::Binary { op, .. } => !op.is_additive(),
            _ => self.is_factor(),
        }
    }
}

struct Wrapped<'a>(&'a Expr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn list(f: &mut fmt::Formatter<'_>, items: &[Expr]) -> fmt::Result {
    for (i, a) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// Prints the minimal parenthesization that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(x) => {
                let bare = x.is_atom() || matches!(**x, Expr::Pow { .. });
                write!(f, "-{}", Wrapped(x, !bare))
            }
            Expr::Binary { op, lhs, rhs } => {
                let (left_paren, right_paren) = if op.is_additive() {
                    (false, !rhs.is_term())
                } else {
                    (!lhs.is_term(), !rhs.is_factor())
                };
                write!(
                    f,
                    "{}{}{}",
                    Wrapped(lhs, left_paren),
                    op.symbol(),
                    Wrapped(rhs, right_paren)
                )
            }
            Expr::Pow { base, exp } => {
                write!(
                    f,
                    "{}^{}",
                    Wrapped(base, !base.is_atom()),
                    Wrapped(exp, !exp.is_atom())
                )
            }
            Expr::Call { func, args } => {
                write!(f, "{}(", func.name())?;
                list(f, args)?;
                f.write_str(")")
            }
            Expr::Harmonic { parts, upper } => {
                f.write_str("H(")?;
                list(f, parts)?;
                write!(f, "; {upper})")
            }
            Expr::Sum { var, lo, hi, body } => write!(f, "sum({var}, {lo}, {hi}, {body})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl RelOp {
    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Eq => "==",
            RelOp::Ne => "!=",
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Gt => ">",
            RelOp::Ge => ">=",
        }
    }

    pub fn holds<T: Ord>(self, a: &T, b: &T) -> bool {
        match self {
            RelOp::Eq => a == b,
            RelOp::Ne => a != b,
            RelOp::Lt => a < b,
            RelOp::Le => a <= b,
            RelOp::Gt => a > b,
            RelOp::Ge => a >= b,
        }
    }
}

/// `lhs op rhs`, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Condition {
    pub lhs: Expr,
    pub op: RelOp,
    pub rhs: Expr,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.op.symbol(), self.rhs)
    }
}

/// `name in lo..hi`, inclusive; bounds may use earlier bindings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binding {
    pub name: String,
    pub lo: Expr,
    pub hi: Expr,
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}..{}", self.name, self.lo, self.hi)
    }
}

/// `[label[params]:] lhs === rhs mod p^t [for cond and ...] [with binding, ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CongruenceStmt {
    pub label: Option<String>,
    pub params: Params,
    pub lhs: Expr,
    pub rhs: Expr,
    pub t: u32,
    pub conditions: Vec<Condition>,
    pub bindings: Vec<Binding>,
}

impl fmt::Display for CongruenceStmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            f.write_str(label)?;
            if !self.params.is_empty() {
                write!(f, "[{}]", self.params)?;
            }
            f.write_str(": ")?;
        }
        write!(f, "{} === {} mod p^{}", self.lhs, self.rhs, self.t)?;
        for (i, c) in self.conditions.iter().enumerate() {
            f.write_str(if i == 0 { " for " } else { " and " })?;
            write!(f, "{c}")?;
        }
        for (i, b) in self.bindings.iter().enumerate() {
            f.write_str(if i == 0 { " with " } else { ", " })?;
            write!(f, "{b}")?;
        }
        Ok(())
    }
}
