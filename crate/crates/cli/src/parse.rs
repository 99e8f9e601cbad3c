//! Tokenizer and recursive-descent parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | atom ('^' factor)?
//! atom   := number | ident | ident '(' args ')' | '(' expr ')'
//!         | '{' list? '|' list? '}' | '[' list? ']'
//! ```
//!
//! Juxtaposition is never multiplication, so a parse stops at the first
//! token that cannot continue the expression. Commands use this to read
//! several expressions from one line.

use surreal::rational::parse_rational;
use surreal::Rational;

use crate::error::{CliError, Span};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, CliError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push(Token {
                tok: Tok::Num(input[start..i].to_string()),
                span: (start, i),
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(input[start..i].to_string()),
                span: (start, i),
            });
        } else if "+-*/^(){}[]|,=:".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                span: (i, i + 1),
            });
            i += 1;
        } else {
            return Err(CliError::syntax(i, &["a number, identifier or operator"]));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Num(Rational),
    Omega,
    Imag,
    Ans,
    OmegaClass,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    Game(Vec<Expr>, Vec<Expr>),
    List(Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn uses_ans(&self) -> bool {
        match &self.kind {
            ExprKind::Ans => true,
            ExprKind::Neg(e) => e.uses_ans(),
            ExprKind::Bin(_, a, b) => a.uses_ans() || b.uses_ans(),
            ExprKind::Call(_, xs) | ExprKind::List(xs) => xs.iter().any(Expr::uses_ans),
            ExprKind::Game(l, r) => l.iter().chain(r).any(Expr::uses_ans),
            _ => false,
        }
    }
}

/// A sequence generator expression.
#[derive(Debug, Clone, PartialEq)]
pub enum SeqExpr {
    Gen {
        kind: String,
        positional: Option<Expr>,
        params: Vec<(String, Expr)>,
        span: Span,
    },
    Combine(BinOp, Box<SeqExpr>, Box<SeqExpr>, Span),
    Recip(Box<SeqExpr>, Span),
}

impl SeqExpr {
    pub fn span(&self) -> Span {
        match self {
            SeqExpr::Gen { span, .. } | SeqExpr::Combine(.., span) | SeqExpr::Recip(_, span) => *span,
        }
    }

    pub fn uses_ans(&self) -> bool {
        match self {
            SeqExpr::Gen { positional, params, .. } => {
                positional.iter().any(Expr::uses_ans) || params.iter().any(|(_, e)| e.uses_ans())
            }
            SeqExpr::Combine(_, a, b, _) => a.uses_ans() || b.uses_ans(),
            SeqExpr::Recip(a, _) => a.uses_ans(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Nf(Expr),
    Birthday(Expr),
    Cmp(Expr, Expr),
    Commensurate(Expr, Expr),
    InField(Expr),
    Limit(SeqExpr),
    Cauchy(SeqExpr, Vec<Expr>),
    Section(SeqExpr, Vec<Expr>),
    SetTrunc(u32),
    SetZeta(Expr),
    Quit,
}

impl Command {
    pub fn uses_ans(&self) -> bool {
        match self {
            Command::Nf(e) | Command::Birthday(e) | Command::InField(e) | Command::SetZeta(e) => e.uses_ans(),
            Command::Cmp(a, b) | Command::Commensurate(a, b) => a.uses_ans() || b.uses_ans(),
            Command::Limit(s) => s.uses_ans(),
            Command::Cauchy(s, xs) | Command::Section(s, xs) => s.uses_ans() || xs.iter().any(Expr::uses_ans),
            Command::SetTrunc(_) | Command::Quit => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Line {
    Empty,
    Expr(Expr),
    Command(Command),
}

const COMMANDS: &[&str] = &[
    ":nf",
    ":birthday",
    ":cmp",
    ":commensurate",
    ":infield",
    ":limit",
    ":cauchy",
    ":section",
    ":set",
    ":quit",
];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.span.0)
    }

    fn last_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.1
        }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), CliError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(CliError::syntax(self.here(), &[&format!("'{c}'")]))
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == name)
    }

    fn ident(&mut self) -> Result<String, CliError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(CliError::syntax(self.here(), &["an identifier"])),
        }
    }

    fn expect_end(&self) -> Result<(), CliError> {
        if self.pos < self.toks.len() {
            Err(CliError::syntax(self.here(), &["end of input"]))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let start = self.here();
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat_sym('+') {
                BinOp::Add
            } else if self.eat_sym('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr {
                kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)),
                span: (start, self.last_end()),
            };
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let start = self.here();
        let mut lhs = self.factor()?;
        loop {
            let op = if self.eat_sym('*') {
                BinOp::Mul
            } else if self.eat_sym('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            lhs = Expr {
                kind: ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)),
                span: (start, self.last_end()),
            };
        }
    }

    fn factor(&mut self) -> Result<Expr, CliError> {
        let start = self.here();
        if self.eat_sym('-') {
            let inner = self.factor()?;
            return Ok(Expr {
                kind: ExprKind::Neg(Box::new(inner)),
                span: (start, self.last_end()),
            });
        }
        let base = self.atom()?;
        if self.eat_sym('^') {
            let exp = self.factor()?;
            return Ok(Expr {
                kind: ExprKind::Bin(BinOp::Pow, Box::new(base), Box::new(exp)),
                span: (start, self.last_end()),
            });
        }
        Ok(base)
    }

    fn list_until(&mut self, close: &[char]) -> Result<Vec<Expr>, CliError> {
        let mut out = Vec::new();
        if close.iter().any(|&c| self.is_sym(c)) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if !self.eat_sym(',') {
                return Ok(out);
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let start = self.here();
        let Some(tok) = self.peek().cloned() else {
            return Err(CliError::syntax(start, &["an expression"]));
        };
        self.pos += 1;
        let kind = match tok {
            Tok::Num(s) => ExprKind::Num(parse_rational(&s).ok_or_else(|| CliError::syntax(start, &["a number"]))?),
            Tok::Ident(name) if self.is_sym('(') => {
                self.pos += 1;
                let args = self.list_until(&[')'])?;
                self.expect_sym(')')?;
                ExprKind::Call(name, args)
            }
            Tok::Ident(name) => match name.as_str() {
                "w" => ExprKind::Omega,
                "i" => ExprKind::Imag,
                "ans" => ExprKind::Ans,
                "OMEGA" => ExprKind::OmegaClass,
                _ => {
                    self.pos -= 1;
                    return Err(CliError::syntax(start, &["an expression"]));
                }
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect_sym(')')?;
                return Ok(Expr {
                    kind: inner.kind,
                    span: (start, self.last_end()),
                });
            }
            Tok::Sym('{') => {
                let left = self.list_until(&['|'])?;
                self.expect_sym('|')?;
                let right = self.list_until(&['}'])?;
                self.expect_sym('}')?;
                ExprKind::Game(left, right)
            }
            Tok::Sym('[') => {
                let items = self.list_until(&[']'])?;
                self.expect_sym(']')?;
                ExprKind::List(items)
            }
            Tok::Sym(_) => {
                self.pos -= 1;
                return Err(CliError::syntax(start, &["an expression"]));
            }
        };
        Ok(Expr {
            kind,
            span: (start, self.last_end()),
        })
    }

    fn seq_expr(&mut self) -> Result<SeqExpr, CliError> {
        let start = self.here();
        let word = self
            .ident()
            .map_err(|_| CliError::syntax(start, &["seq", "add", "mul", "div", "recip"]))?;
        match word.as_str() {
            "seq" => {
                let kind = self.ident()?;
                let positional = match self.peek() {
                    Some(Tok::Ident(_)) if self.peek_at(1) == Some(&Tok::Sym('=')) => None,
                    Some(Tok::Ident(s)) if s == "at" || s == "eps" => None,
                    None | Some(Tok::Sym(',')) | Some(Tok::Sym(')')) => None,
                    _ => Some(self.expr()?),
                };
                let mut params = Vec::new();
                while matches!(self.peek(), Some(Tok::Ident(_))) && self.peek_at(1) == Some(&Tok::Sym('=')) {
                    let key = self.ident()?;
                    self.pos += 1;
                    params.push((key, self.expr()?));
                }
                Ok(SeqExpr::Gen {
                    kind,
                    positional,
                    params,
                    span: (start, self.last_end()),
                })
            }
            "add" | "mul" | "div" => {
                let op = match word.as_str() {
                    "add" => BinOp::Add,
                    "mul" => BinOp::Mul,
                    _ => BinOp::Div,
                };
                self.expect_sym('(')?;
                let a = self.seq_expr()?;
                self.expect_sym(',')?;
                let b = self.seq_expr()?;
                self.expect_sym(')')?;
                Ok(SeqExpr::Combine(op, Box::new(a), Box::new(b), (start, self.last_end())))
            }
            "recip" => {
                self.expect_sym('(')?;
                let a = self.seq_expr()?;
                self.expect_sym(')')?;
                Ok(SeqExpr::Recip(Box::new(a), (start, self.last_end())))
            }
            _ => Err(CliError::syntax(start, &["seq", "add", "mul", "div", "recip"])),
        }
    }

    fn probes(&mut self, keyword: &str) -> Result<Vec<Expr>, CliError> {
        if self.is_ident(keyword) {
            self.pos += 1;
            self.list_until(&[])
        } else {
            Ok(Vec::new())
        }
    }

    fn pair(&mut self) -> Result<(Expr, Expr), CliError> {
        let a = self.expr()?;
        self.eat_sym(',');
        let b = self.expr()?;
        Ok((a, b))
    }

    fn command(&mut self) -> Result<Command, CliError> {
        let start = self.here();
        let name = self.ident().map_err(|_| CliError::syntax(start, COMMANDS))?;
        let cmd = match name.as_str() {
            "nf" => Command::Nf(self.expr()?),
            "birthday" => Command::Birthday(self.expr()?),
            "infield" => Command::InField(self.expr()?),
            "cmp" => {
                let (a, b) = self.pair()?;
                Command::Cmp(a, b)
            }
            "commensurate" => {
                let (a, b) = self.pair()?;
                Command::Commensurate(a, b)
            }
            "limit" => Command::Limit(self.seq_expr()?),
            "cauchy" => {
                let s = self.seq_expr()?;
                Command::Cauchy(s, self.probes("eps")?)
            }
            "section" => {
                let s = self.seq_expr()?;
                Command::Section(s, self.probes("at")?)
            }
            "set" => {
                let at = self.here();
                match self.ident()?.as_str() {
                    "trunc" => {
                        let at = self.here();
                        match self.peek().cloned() {
                            Some(Tok::Num(s)) => {
                                self.pos += 1;
                                Command::SetTrunc(s.parse().map_err(|_| CliError::syntax(at, &["a natural number"]))?)
                            }
                            _ => return Err(CliError::syntax(at, &["a natural number"])),
                        }
                    }
                    "zeta" => Command::SetZeta(self.expr()?),
                    _ => return Err(CliError::syntax(at, &["trunc", "zeta"])),
                }
            }
            "quit" | "q" => Command::Quit,
            _ => return Err(CliError::syntax(start, COMMANDS)),
        };
        self.expect_end()?;
        Ok(cmd)
    }
}

fn parser(input: &str) -> Result<Parser, CliError> {
    Ok(Parser {
        toks: tokenize(input)?,
        pos: 0,
        end: input.len(),
    })
}

/// Parses a single expression spanning the whole input.
pub fn parse(input: &str) -> Result<Expr, CliError> {
    let mut p = parser(input)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses one REPL or batch line: blank, `:command ...`, or an expression.
pub fn parse_line(input: &str) -> Result<Line, CliError> {
    let mut p = parser(input)?;
    if p.toks.is_empty() {
        return Ok(Line::Empty);
    }
    if p.eat_sym(':') {
        return Ok(Line::Command(p.command()?));
    }
    let e = p.expr()?;
    p.expect_end()?;
    Ok(Line::Expr(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use surreal::rational::rat;

    fn num(e: &Expr) -> Rational {
        match &e.kind {
            ExprKind::Num(q) => q.clone(),
            other => panic!("not a number: {other:?}"),
        }
    }

    #[test]
    fn precedence() {
        let e = parse("w^(1/2) + 3/4").unwrap();
        let ExprKind::Bin(BinOp::Add, a, b) = e.kind else {
            panic!()
        };
        assert!(matches!(a.kind, ExprKind::Bin(BinOp::Pow, _, _)));
        assert!(matches!(b.kind, ExprKind::Bin(BinOp::Div, _, _)));
        let e = parse("-w^2").unwrap();
        assert!(matches!(e.kind, ExprKind::Neg(_)));
        let e = parse("w*-1").unwrap();
        let ExprKind::Bin(BinOp::Mul, _, b) = e.kind else {
            panic!()
        };
        assert!(matches!(b.kind, ExprKind::Neg(_)));
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(num(&parse("1.25").unwrap()), rat(5, 4));
    }

    #[test]
    fn games_and_spans() {
        let e = parse("{0, 1/2 | }").unwrap();
        let ExprKind::Game(l, r) = e.kind else { panic!() };
        assert_eq!((l.len(), r.len()), (2, 0));
        assert_eq!(e.span, (0, 11));
        assert!(parse("{|}").is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("1 + ").unwrap_err() {
            CliError::Syntax { pos, .. } => assert_eq!(pos, 4),
            e => panic!("{e}"),
        }
        match parse("(1 + 2").unwrap_err() {
            CliError::Syntax { pos, expected } => {
                assert_eq!(pos, 6);
                assert_eq!(expected, vec!["')'"]);
            }
            e => panic!("{e}"),
        }
        assert!(parse("1 $ 2").is_err());
        assert!(parse("1 2").is_err());
    }

    #[test]
    fn commands() {
        let Line::Command(Command::Cmp(a, b)) = parse_line(":cmp w^(-1) 1/1000").unwrap() else {
            panic!()
        };
        assert_eq!(a.span, (5, 11));
        assert!(matches!(b.kind, ExprKind::Bin(BinOp::Div, _, _)));
        let Line::Command(Command::Section(s, probes)) = parse_line(":section seq recip a=1 c=-1 at 0, 1, 2").unwrap()
        else {
            panic!()
        };
        assert_eq!(probes.len(), 3);
        let SeqExpr::Gen { kind, params, .. } = s else { panic!() };
        assert_eq!(kind, "recip");
        assert_eq!(params.len(), 2);
        let Line::Command(Command::Limit(SeqExpr::Gen { positional, .. })) = parse_line(":limit seq const 3").unwrap()
        else {
            panic!()
        };
        assert!(positional.is_some());
        assert!(matches!(
            parse_line(":limit add(seq const 1, seq recip c=2)").unwrap(),
            Line::Command(Command::Limit(SeqExpr::Combine(..)))
        ));
        assert_eq!(parse_line(":set trunc 5").unwrap(), Line::Command(Command::SetTrunc(5)));
        assert_eq!(parse_line("   ").unwrap(), Line::Empty);
        assert!(parse_line(":frobnicate").is_err());
    }
}
