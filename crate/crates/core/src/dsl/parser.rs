use num_traits::ToPrimitive;

use super::ast::{BinOp, Binding, Condition, CongruenceStmt, Expr, Func, RelOp};
use super::lexer::{syntax_error, tokenize, Spanned, Tok};
use crate::suite::{ParamValue, Params};
use crate::Result;

/// Nesting limit; deeper input is rejected instead of exhausting the stack.
const MAX_DEPTH: usize = 200;

const KEYWORDS: [&str; 5] = ["mod", "for", "and", "with", "in"];

pub(crate) struct Parser<'s> {
    src: &'s str,
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

impl<'s> Parser<'s> {
    pub(crate) fn new(src: &'s str) -> Result<Self> {
        Ok(Parser {
            src,
            toks: tokenize(src)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> usize {
        self.toks[self.pos].at
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(syntax_error(self.src, self.here(), message))
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        self.error(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        ))
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, wanted: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.unexpected(wanted)
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(wanted),
        }
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.error("expression nested too deeply");
        }
        Ok(())
    }

    // expr := term (("+"|"-") term)*
    pub(crate) fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        self.depth -= 1;
        Ok(lhs)
    }

    // term := factor (("*"|"/") factor)*
    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    // factor := ["-"] atom ["^" atom]
    fn factor(&mut self) -> Result<Expr> {
        self.enter()?;
        let negate = self.eat(&Tok::Minus);
        let mut e = self.atom()?;
        if self.eat(&Tok::Caret) {
            let exp = self.atom()?;
            e = Expr::Pow {
                base: Box::new(e),
                exp: Box::new(exp),
            };
        }
        self.depth -= 1;
        Ok(if negate { Expr::Neg(Box::new(e)) } else { e })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) if KEYWORDS.contains(&name.as_str()) => self.unexpected("an operand"),
            Tok::Ident(name) => {
                let at = self.here();
                self.bump();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    self.call(&name, at)
                } else {
                    Ok(Expr::Var(name))
                }
            }
            _ => self.unexpected("an operand"),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>> {
        let mut args = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            args.push(self.expr()?);
        }
        Ok(args)
    }

    fn call(&mut self, name: &str, at: usize) -> Result<Expr> {
        match name {
            "sum" => {
                let var = self.ident("a summation variable")?;
                self.expect(Tok::Comma, "`,`")?;
                let lo = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let hi = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let body = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Sum {
                    var,
                    lo: Box::new(lo),
                    hi: Box::new(hi),
                    body: Box::new(body),
                })
            }
            "H" => {
                let parts = self.args()?;
                self.expect(Tok::Semi, "`;` before the upper limit")?;
                let upper = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Harmonic {
                    parts,
                    upper: Box::new(upper),
                })
            }
            _ => {
                let Some(func) = Func::from_name(name) else {
                    return Err(syntax_error(
                        self.src,
                        at,
                        format!("unknown function `{name}`"),
                    ));
                };
                let args = self.args()?;
                if args.len() != func.arity() {
                    return Err(syntax_error(
                        self.src,
                        at,
                        format!(
                            "`{name}` takes {} argument(s), got {}",
                            func.arity(),
                            args.len()
                        ),
                    ));
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Call { func, args })
            }
        }
    }

    fn relop(&mut self) -> Result<RelOp> {
        let op = match self.peek() {
            Tok::Eq => RelOp::Eq,
            Tok::Ne => RelOp::Ne,
            Tok::Lt => RelOp::Lt,
            Tok::Le => RelOp::Le,
            Tok::Gt => RelOp::Gt,
            Tok::Ge => RelOp::Ge,
            _ => return self.unexpected("a comparison"),
        };
        self.bump();
        Ok(op)
    }

    fn label(&mut self) -> Result<(Option<String>, Params)> {
        let is_label = matches!(self.peek(), Tok::Ident(_))
            && matches!(self.peek_at(1), Tok::Colon | Tok::LBracket);
        if !is_label {
            return Ok((None, Params::new()));
        }
        let label = self.ident("a label")?;
        let mut params = Params::new();
        if self.eat(&Tok::LBracket) {
            loop {
                let name = self.ident("a parameter name")?;
                self.expect(Tok::Assign, "`=`")?;
                let negate = self.eat(&Tok::Minus);
                let value = match (self.peek().clone(), negate) {
                    (Tok::Int(n), _) => {
                        let Some(n) = n.to_i64() else {
                            return self.error("parameter out of range");
                        };
                        self.bump();
                        ParamValue::Int(if negate { -n } else { n })
                    }
                    (Tok::Ident(s), false) => {
                        self.bump();
                        ParamValue::Tag(s)
                    }
                    _ => return self.unexpected("a parameter value"),
                };
                if params.get(&name).is_some() {
                    return self.error(format!("duplicate parameter `{name}`"));
                }
                params.set(&name, value);
                if !self.eat(&Tok::Semi) {
                    break;
                }
            }
            self.expect(Tok::RBracket, "`]`")?;
        }
        self.expect(Tok::Colon, "`:`")?;
        Ok((Some(label), params))
    }

    pub(crate) fn stmt(&mut self) -> Result<CongruenceStmt> {
        let (label, params) = self.label()?;
        let lhs = self.expr()?;
        self.expect(Tok::Equiv, "`===`")?;
        let rhs = self.expr()?;
        self.expect_keyword("mod")?;
        if !matches!(self.peek(), Tok::Ident(s) if s == "p") {
            return self.unexpected("`p`");
        }
        self.bump();
        // `mod p` abbreviates `mod p^1`.
        let t = if !self.eat(&Tok::Caret) {
            1
        } else {
            match self.peek().clone() {
                Tok::Int(n) => match n.to_u32().filter(|&t| t >= 1) {
                    Some(t) => {
                        self.bump();
                        t
                    }
                    None => return self.error("modulus exponent must be a positive integer"),
                },
                _ => return self.unexpected("the modulus exponent"),
            }
        };
        let mut conditions = Vec::new();
        if self.is_keyword("for") {
            self.bump();
            loop {
                let l = self.expr()?;
                let op = self.relop()?;
                let r = self.expr()?;
                conditions.push(Condition { lhs: l, op, rhs: r });
                if !self.is_keyword("and") {
                    break;
                }
                self.bump();
            }
        }
        let mut bindings: Vec<Binding> = Vec::new();
        if self.is_keyword("with") {
            self.bump();
            loop {
                let name = self.ident("a parameter name")?;
                if name == "p"
                    || params.get(&name).is_some()
                    || bindings.iter().any(|b| b.name == name)
                {
                    return self.error(format!("`{name}` is already bound"));
                }
                self.expect_keyword("in")?;
                let lo = self.expr()?;
                self.expect(Tok::DotDot, "`..`")?;
                let hi = self.expr()?;
                bindings.push(Binding { name, lo, hi });
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        Ok(CongruenceStmt {
            label,
            params,
            lhs,
            rhs,
            t,
            conditions,
            bindings,
        })
    }
}
