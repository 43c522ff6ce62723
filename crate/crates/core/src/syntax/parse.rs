use thiserror::Error;

use super::{Arg, BoundRel, ConstantTable, Formula, Functor, Quantifier, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("sort error at {line}:{col}: {msg}")]
    Sort { line: usize, col: usize, msg: String },
}

impl ParseError {
    fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. } | ParseError::Sort { line, col, .. } => (*line, *col),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    SeqVar(String),
    MetaVar(String),
    Numeral(u64),
    All,
    Ex,
    ExUnique,
    Dot,
    Comma,
    LParen,
    RParen,
    Pipe,
    Amp,
    Or,
    Imp,
    Iff,
    Not,
    Eq,
    Ne,
    Le,
    Lt,
    Plus,
    Star,
    Lambda,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::SeqVar(s) => format!("sequence variable `${s}`"),
        Tok::MetaVar(s) => format!("metavariable `?{s}`"),
        Tok::Numeral(n) => format!("numeral `{n}`"),
        Tok::Eof => "end of input".to_string(),
        other => format!("`{}`", symbol(other)),
    }
}

fn symbol(t: &Tok) -> &'static str {
    match t {
        Tok::All => "A",
        Tok::Ex => "E",
        Tok::ExUnique => "E!",
        Tok::Dot => ".",
        Tok::Comma => ",",
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::Pipe => "|",
        Tok::Amp => "&",
        Tok::Or => "\\/",
        Tok::Imp => "->",
        Tok::Iff => "<->",
        Tok::Not => "~",
        Tok::Eq => "=",
        Tok::Ne => "!=",
        Tok::Le => "<=",
        Tok::Lt => "<",
        Tok::Plus => "+",
        Tok::Star => "*",
        Tok::Lambda => "\\",
        _ => "?",
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, msg: String| ParseError::Syntax { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let ident = |start: usize| -> usize {
            let mut j = start;
            while j < chars.len() && (chars[j].is_ascii_lowercase() || chars[j].is_ascii_digit() || chars[j] == '_') {
                j += 1;
            }
            j
        };
        let (tok, len) = match c {
            'a'..='z' => {
                let j = ident(i);
                (Tok::Ident(chars[i..j].iter().collect()), j - i)
            }
            '$' => {
                if i + 1 >= chars.len() || !chars[i + 1].is_ascii_lowercase() {
                    return Err(err(l0, c0, "expected sequence variable name after `$`".into()));
                }
                let j = ident(i + 1);
                (Tok::SeqVar(chars[i + 1..j].iter().collect()), j - i)
            }
            '?' => {
                if i + 1 >= chars.len() || !chars[i + 1].is_ascii_uppercase() {
                    return Err(err(l0, c0, "expected metavariable name after `?`".into()));
                }
                let mut j = i + 2;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                (Tok::MetaVar(chars[i + 1..j].iter().collect()), j - i)
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                let n = s.parse::<u64>().map_err(|_| err(l0, c0, format!("numeral `{s}` out of range")))?;
                (Tok::Numeral(n), j - i)
            }
            'A' | 'E' => {
                let next = chars.get(i + 1).copied();
                if next.is_some_and(|n| n.is_ascii_alphanumeric() || n == '_') {
                    return Err(err(l0, c0, "unexpected uppercase identifier".into()));
                }
                if c == 'E' && next == Some('!') {
                    (Tok::ExUnique, 2)
                } else if c == 'A' {
                    (Tok::All, 1)
                } else {
                    (Tok::Ex, 1)
                }
            }
            '.' => (Tok::Dot, 1),
            ',' => (Tok::Comma, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '|' => (Tok::Pipe, 1),
            '&' => (Tok::Amp, 1),
            '~' => (Tok::Not, 1),
            '=' => (Tok::Eq, 1),
            '+' => (Tok::Plus, 1),
            '*' => (Tok::Star, 1),
            '\\' => {
                if chars.get(i + 1) == Some(&'/') {
                    (Tok::Or, 2)
                } else {
                    (Tok::Lambda, 1)
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Imp, 2),
            '!' if chars.get(i + 1) == Some(&'=') => (Tok::Ne, 2),
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    (Tok::Iff, 3)
                } else if chars.get(i + 1) == Some(&'=') {
                    (Tok::Le, 2)
                } else {
                    (Tok::Lt, 1)
                }
            }
            other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
        };
        out.push(Spanned { tok, line: l0, col: c0 });
        i += len;
        col += len;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    table: &'a ConstantTable,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.col)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = self.here();
        Err(ParseError::Syntax { line, col, msg: msg.into() })
    }

    fn sort_err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        let (line, col) = self.here();
        Err(ParseError::Sort { line, col, msg: msg.into() })
    }

    fn expect(&mut self, t: Tok) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected `{}`, found {}", symbol(&t), describe(self.peek())))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> PResult<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> PResult<Formula> {
        let lhs = self.and()?;
        if *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.or()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> PResult<Formula> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.and()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::All | Tok::Ex | Tok::ExUnique => self.quantified(),
            _ => self.primary(),
        }
    }

    fn quantified(&mut self) -> PResult<Formula> {
        let kw = self.bump();
        if kw == Tok::ExUnique {
            let name = match self.bump() {
                Tok::Ident(n) => n,
                Tok::SeqVar(_) => return self.sort_err("`E!` binds a number variable"),
                other => return self.syntax(format!("expected variable after `E!`, found {}", describe(&other))),
            };
            self.expect(Tok::Dot)?;
            let body = self.formula()?;
            return Ok(Formula::Unique(name, Box::new(body)));
        }
        let q = if kw == Tok::All { Quantifier::Forall } else { Quantifier::Exists };
        let var = match self.peek().clone() {
            Tok::Ident(n) => Var::Num(n),
            Tok::SeqVar(n) => Var::Seq(n),
            other => return self.syntax(format!("expected variable after quantifier, found {}", describe(&other))),
        };
        self.bump();
        match self.peek() {
            Tok::Le | Tok::Lt => {
                let rel = if self.bump() == Tok::Le { BoundRel::Le } else { BoundRel::Lt };
                let name = match var {
                    Var::Num(n) => n,
                    Var::Seq(_) => return self.sort_err("bounded quantifiers bind number variables"),
                };
                let bound = self.term()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(Formula::Bounded { q, var: name, rel, bound, body: Box::new(body) })
            }
            Tok::Pipe => {
                self.bump();
                let name = match var {
                    Var::Seq(n) => n,
                    Var::Num(_) => return self.sort_err("relativized quantifiers bind sequence variables"),
                };
                let guard = self.guard()?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(Formula::Relativized { q, var: name, guard: Box::new(guard), body: Box::new(body) })
            }
            _ => {
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(Formula::Quant(q, var, Box::new(body)))
            }
        }
    }

    fn guard(&mut self) -> PResult<Formula> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(Formula::not(self.guard()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::MetaVar(name) => {
                self.bump();
                let args = if *self.peek() == Tok::LParen {
                    self.bump();
                    self.args()?
                } else {
                    Vec::new()
                };
                Ok(Formula::Meta(name, args))
            }
            Tok::LParen => {
                let save = self.pos;
                self.bump();
                let attempt = self.formula().and_then(|f| self.expect(Tok::RParen).map(|_| f));
                match attempt {
                    Ok(f) => Ok(f),
                    Err(e1) => {
                        self.pos = save;
                        match self.atom() {
                            Ok(f) => Ok(f),
                            // Report whichever reading got further.
                            Err(e2) if e2.position() >= e1.position() => Err(e2),
                            Err(_) => Err(e1),
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        let rel = self.peek().clone();
        if !matches!(rel, Tok::Eq | Tok::Ne | Tok::Le | Tok::Lt) {
            return self.syntax(format!("expected `=`, `!=`, `<=` or `<`, found {}", describe(&rel)));
        }
        self.bump();
        let rhs = self.term()?;
        Ok(match rel {
            Tok::Eq => Formula::Eq(lhs, rhs),
            Tok::Ne => Formula::ne(lhs, rhs),
            Tok::Le => Formula::le(lhs, rhs),
            _ => Formula::lt(lhs, rhs),
        })
    }

    fn args(&mut self) -> PResult<Vec<Arg>> {
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.arg()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(out);
                }
                other => return self.syntax(format!("expected `,` or `)`, found {}", describe(other))),
            }
        }
    }

    fn arg(&mut self) -> PResult<Arg> {
        match self.peek().clone() {
            Tok::Lambda => Ok(Arg::Functor(self.lambda()?)),
            Tok::SeqVar(n) if *self.peek_at(1) != Tok::LParen => {
                self.bump();
                Ok(Arg::Functor(Functor::Var(n)))
            }
            Tok::LParen if *self.peek_at(1) == Tok::Lambda => {
                self.bump();
                let f = self.lambda()?;
                self.expect(Tok::RParen)?;
                if *self.peek() == Tok::LParen {
                    self.bump();
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    let applied = self.term_tail_mul(Term::app(f, t))?;
                    Ok(Arg::Term(self.term_tail_add(applied)?))
                } else {
                    Ok(Arg::Functor(f))
                }
            }
            _ => Ok(Arg::Term(self.term()?)),
        }
    }

    fn lambda(&mut self) -> PResult<Functor> {
        self.expect(Tok::Lambda)?;
        let v = match self.bump() {
            Tok::Ident(n) => n,
            Tok::SeqVar(_) => return self.sort_err("lambda binds a number variable"),
            other => return self.syntax(format!("expected variable after `\\`, found {}", describe(&other))),
        };
        self.expect(Tok::Dot)?;
        let body = self.term()?;
        Ok(Functor::Lambda(v, Box::new(body)))
    }

    fn term(&mut self) -> PResult<Term> {
        let first = self.mul_term()?;
        self.term_tail_add(first)
    }

    fn term_tail_add(&mut self, mut acc: Term) -> PResult<Term> {
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.mul_term()?;
            acc = Term::binary("add", acc, rhs);
        }
        Ok(acc)
    }

    fn mul_term(&mut self) -> PResult<Term> {
        let first = self.term_primary()?;
        self.term_tail_mul(first)
    }

    fn term_tail_mul(&mut self, mut acc: Term) -> PResult<Term> {
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.term_primary()?;
            acc = Term::binary("mul", acc, rhs);
        }
        Ok(acc)
    }

    fn term_primary(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Numeral(n) => {
                self.bump();
                Ok(Term::Numeral(n))
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Term::Var(name));
                }
                let decl = match self.table.get(&name) {
                    Some(d) => d.args.clone(),
                    None => return self.syntax(format!("unknown constant `{name}`")),
                };
                self.bump();
                let args = self.args()?;
                if args.len() != decl.len() {
                    return self.sort_err(format!(
                        "constant `{name}` expects {} argument(s), got {}",
                        decl.len(),
                        args.len()
                    ));
                }
                for (i, (a, s)) in args.iter().zip(&decl).enumerate() {
                    if a.sort() != *s {
                        return self.sort_err(format!(
                            "argument {} of `{name}` must be a {s} term, got a {}",
                            i + 1,
                            a.sort()
                        ));
                    }
                }
                Ok(Term::Const(name, args))
            }
            Tok::SeqVar(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return self.sort_err(format!("sequence variable `${name}` used where a number term is required"));
                }
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::app(Functor::Var(name), t))
            }
            Tok::LParen => {
                self.bump();
                if *self.peek() == Tok::Lambda {
                    let f = self.lambda()?;
                    self.expect(Tok::RParen)?;
                    if *self.peek() != Tok::LParen {
                        return self.sort_err("lambda functor used where a number term is required");
                    }
                    self.bump();
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Term::app(f, t));
                }
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => self.syntax(format!("expected a term, found {}", describe(&other))),
        }
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() != Tok::Eof {
            return self.syntax(format!("unexpected {} after end of formula", describe(self.peek())));
        }
        Ok(())
    }
}

fn parser<'a>(text: &str, table: &'a ConstantTable) -> PResult<Parser<'a>> {
    Ok(Parser { toks: lex(text)?, pos: 0, table })
}

/// Parses a formula against the standard constant table.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_formula_with(text, ConstantTable::standard())
}

pub fn parse_formula_with(text: &str, table: &ConstantTable) -> Result<Formula, ParseError> {
    let mut p = parser(text, table)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    parse_term_with(text, ConstantTable::standard())
}

pub fn parse_term_with(text: &str, table: &ConstantTable) -> Result<Term, ParseError> {
    let mut p = parser(text, table)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses either a term or a functor (`$a`, `\x. t`).
pub fn parse_arg(text: &str) -> Result<Arg, ParseError> {
    let mut p = parser(text, ConstantTable::standard())?;
    let a = p.arg()?;
    p.finish()?;
    Ok(a)
}

pub fn parse_functor(text: &str) -> Result<Functor, ParseError> {
    match parse_arg(text)? {
        Arg::Functor(f) => Ok(f),
        Arg::Term(_) => Err(ParseError::Sort { line: 1, col: 1, msg: "expected a functor".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_number_quantifier() {
        let f = parse("A x. $a(x) = 0").unwrap();
        assert_eq!(
            f,
            Formula::forall(Var::num("x"), Formula::eq(Term::seq_app("a", Term::var("x")), Term::num(0)))
        );
    }

    #[test]
    fn comprehension_formula() {
        let f = parse("E $b. A x. ($b(x) = 0 <-> A y. $a(pair(x, y)) = 0)").unwrap();
        let inner = Formula::forall(
            Var::num("y"),
            Formula::eq(Term::seq_app("a", Term::pair(Term::var("x"), Term::var("y"))), Term::num(0)),
        );
        let expect = Formula::exists(
            Var::seq("b"),
            Formula::forall(
                Var::num("x"),
                Formula::iff(Formula::eq(Term::seq_app("b", Term::var("x")), Term::num(0)), inner),
            ),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn truncated_input_is_a_syntax_error() {
        let e = parse("A x. x =").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, col: 9, .. }), "{e:?}");
    }

    #[test]
    fn sequence_variable_in_number_position() {
        assert!(matches!(parse("$a = 0"), Err(ParseError::Sort { .. })));
        assert!(matches!(parse("pair($a, 0) = 0"), Err(ParseError::Sort { .. })));
        assert!(matches!(parse("bar(0, 0) = 0"), Err(ParseError::Sort { .. })));
    }

    #[test]
    fn errors_report_line_and_column() {
        let e = parse("A x.\n  x = = 0").unwrap_err();
        assert_eq!(e.position(), (2, 7));
    }

    #[test]
    fn abbreviations() {
        assert_eq!(parse("x != y").unwrap(), parse("~x = y").unwrap());
        assert_eq!(parse("x <= y").unwrap(), parse("le(x, y) = 0").unwrap());
        assert_eq!(parse("x < y").unwrap(), parse("lt(x, y) = 0").unwrap());
        assert_eq!(parse("x + y * z = 0").unwrap(), parse("add(x, mul(y, z)) = 0").unwrap());
    }

    #[test]
    fn parenthesised_terms_and_formulas() {
        assert_eq!(parse("(x + 1) * y = z").unwrap(), parse("mul(add(x, 1), y) = z").unwrap());
        assert_eq!(parse("(x = 0)").unwrap(), parse("x = 0").unwrap());
        let f = parse("(\\x. x + 1)(0) = 1").unwrap();
        assert!(matches!(f, Formula::Eq(Term::Apply(..), _)));
    }

    #[test]
    fn sugar_nodes() {
        assert!(matches!(parse("A x <= 3. x = x").unwrap(), Formula::Bounded { rel: BoundRel::Le, .. }));
        assert!(matches!(parse("E x < 3. x = x").unwrap(), Formula::Bounded { rel: BoundRel::Lt, .. }));
        let r = parse("A $a | (A x. $a(x) <= 1). $a(0) = 0").unwrap();
        assert!(matches!(r, Formula::Relativized { .. }));
        assert!(matches!(parse("E! y. y = 0").unwrap(), Formula::Unique(..)));
        assert!(matches!(parse("A $a <= 3. 0 = 0"), Err(ParseError::Sort { .. })));
    }

    #[test]
    fn metavariables() {
        let f = parse("?A(x, \\y. $b(pair(x, y))) -> ?B").unwrap();
        match f {
            Formula::Imp(a, b) => {
                assert!(matches!(*a, Formula::Meta(ref n, ref args) if n == "A" && args.len() == 2));
                assert!(matches!(*b, Formula::Meta(ref n, ref args) if n == "B" && args.is_empty()));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn unknown_constant() {
        assert!(parse("foo(x) = 0").is_err());
    }
}
