//! Lexer and recursive-descent parser for constraint formulas.

use crate::measures::MeasureId;
use crate::threshold::{CmpOp, Threshold};

use super::ast::{Formula, Quantifier, SetExpr, SetRel, Term};
use super::ParseError;

const KEYWORDS: &[&str] = &[
    "forall",
    "exists",
    "in",
    "sub",
    "where",
    "and",
    "or",
    "not",
    "len",
    "union",
    "subsetof",
    "propersubsetof",
];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Cmp(CmpOp),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Cmp(op) => format!("`{op}`"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    /// 1-based character column.
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let (tok, width) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '{' => (Tok::LBrace, 1),
            '}' => (Tok::RBrace, 1),
            ',' => (Tok::Comma, 1),
            ':' => (Tok::Colon, 1),
            '>' | '<' | '=' | '!' => match (two.as_str(), c) {
                (">=", _) => (Tok::Cmp(CmpOp::Ge), 2),
                ("<=", _) => (Tok::Cmp(CmpOp::Le), 2),
                ("==", _) => (Tok::Cmp(CmpOp::Eq), 2),
                ("!=", _) => (Tok::Cmp(CmpOp::Ne), 2),
                (_, '>') => (Tok::Cmp(CmpOp::Gt), 1),
                (_, '<') => (Tok::Cmp(CmpOp::Lt), 1),
                _ => return Err(ParseError::lexical(column, format!("unexpected character `{c}`"))),
            },
            '"' => {
                let mut value = String::new();
                let mut j = i + 1;
                loop {
                    match chars.get(j) {
                        None => return Err(ParseError::lexical(column, "unterminated string".into())),
                        Some('"') => break,
                        Some('\\') => {
                            match chars.get(j + 1) {
                                Some(&e) => value.push(e),
                                None => return Err(ParseError::lexical(column, "unterminated string".into())),
                            }
                            j += 2;
                        }
                        Some(&other) => {
                            value.push(other);
                            j += 1;
                        }
                    }
                }
                (Tok::Str(value), j + 1 - i)
            }
            c if c.is_ascii_digit() || c == '.' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '.' {
                    j += 1;
                    let frac_start = j;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == frac_start {
                        return Err(ParseError::lexical(column, "malformed number".into()));
                    }
                }
                (Tok::Number(chars[i..j].iter().collect()), j - i)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                (Tok::Ident(chars[i..j].iter().collect()), j - i)
            }
            _ => return Err(ParseError::lexical(column, format!("unexpected character `{c}`"))),
        };
        out.push(Spanned { tok, column });
        i += width;
    }
    out.push(Spanned {
        tok: Tok::End,
        column: chars.len() + 1,
    });
    Ok(out)
}

fn is_variable(name: &str) -> bool {
    name != "X" && name.starts_with(|c: char| c.is_ascii_uppercase())
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    scope: Vec<String>,
}

pub(super) fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
        scope: Vec::new(),
    };
    let formula = parser.constraint()?;
    let next = parser.peek();
    if next.tok != Tok::End {
        return Err(ParseError::syntax(
            next.column,
            format!("expected `and`, `or` or end of input, found {}", next.tok.describe()),
        ));
    }
    Ok(formula)
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.tokens[(self.pos + offset).min(self.tokens.len() - 1)].tok
    }

    fn advance(&mut self) -> Spanned {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == word)
    }

    fn expect(&mut self, expected: Tok) -> Result<Spanned, ParseError> {
        let next = self.peek();
        if next.tok == expected {
            Ok(self.advance())
        } else {
            Err(ParseError::syntax(
                next.column,
                format!("expected {}, found {}", expected.describe(), next.tok.describe()),
            ))
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        if self.at_keyword(word) {
            self.advance();
            Ok(())
        } else {
            let next = self.peek();
            Err(ParseError::syntax(
                next.column,
                format!("expected `{word}`, found {}", next.tok.describe()),
            ))
        }
    }

    fn constraint(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.conjunction()?];
        while self.at_keyword("or") {
            self.advance();
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.unary()?];
        while self.at_keyword("and") {
            self.advance();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.at_keyword("not") {
            self.advance();
            return Ok(Formula::negation(self.unary()?));
        }
        if self.at_keyword("forall") || self.at_keyword("exists") {
            return self.quantified();
        }
        if self.peek().tok == Tok::LParen {
            self.advance();
            let inner = self.constraint()?;
            self.expect(Tok::RParen)?;
            return Ok(inner);
        }
        self.atom()
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        let quantifier = match self.advance().tok {
            Tok::Ident(s) if s == "forall" => Quantifier::ForAll,
            _ => Quantifier::Exists,
        };
        let var_tok = self.advance();
        let var = match var_tok.tok {
            Tok::Ident(name) if is_variable(&name) && !KEYWORDS.contains(&name.as_str()) => name,
            other => {
                return Err(ParseError::syntax(
                    var_tok.column,
                    format!("expected a variable (uppercase identifier other than X), found {}", other.describe()),
                ))
            }
        };
        self.expect_keyword("in")?;
        self.expect_keyword("sub")?;
        self.expect(Tok::LParen)?;
        let x = self.advance();
        if x.tok != Tok::Ident("X".into()) {
            return Err(ParseError::syntax(x.column, format!("expected `X`, found {}", x.tok.describe())));
        }
        self.expect(Tok::RParen)?;
        self.scope.push(var.clone());
        let guard = if self.at_keyword("where") {
            self.advance();
            Some(Box::new(self.constraint()?))
        } else {
            None
        };
        self.expect(Tok::Colon)?;
        let body = self.unary()?;
        self.scope.pop();
        Ok(Formula::Quantified {
            quantifier,
            var,
            guard,
            body: Box::new(body),
        })
    }

    fn starts_term(&self) -> bool {
        match &self.peek().tok {
            Tok::Number(_) => true,
            Tok::Ident(name) => {
                (name == "len" || name.parse::<MeasureId>().is_ok()) && *self.peek_at(1) == Tok::LParen
            }
            _ => false,
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        if self.starts_term() {
            let lhs = self.term()?;
            let op_tok = self.advance();
            let Tok::Cmp(op) = op_tok.tok else {
                return Err(ParseError::syntax(
                    op_tok.column,
                    format!("expected a comparison operator, found {}", op_tok.tok.describe()),
                ));
            };
            let rhs = self.term()?;
            return Ok(Formula::Compare { lhs, op, rhs });
        }
        let lhs = self.setexpr()?;
        let rel_tok = self.advance();
        let rel = match &rel_tok.tok {
            Tok::Cmp(CmpOp::Eq) => SetRel::Eq,
            Tok::Cmp(CmpOp::Ne) => SetRel::Ne,
            Tok::Ident(s) if s == "subsetof" => SetRel::SubsetOf,
            Tok::Ident(s) if s == "propersubsetof" => SetRel::ProperSubsetOf,
            other => {
                return Err(ParseError::syntax(
                    rel_tok.column,
                    format!("expected a set relation (==, !=, subsetof, propersubsetof), found {}", other.describe()),
                ))
            }
        };
        let rhs = self.setexpr()?;
        Ok(Formula::SetRelation { lhs, rel, rhs })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.advance();
        match start.tok {
            Tok::Number(text) => text
                .parse::<Threshold>()
                .map(Term::Number)
                .map_err(|e| ParseError::lexical(start.column, e.to_string())),
            Tok::Ident(name) if name == "len" => {
                self.expect(Tok::LParen)?;
                let set = self.setexpr()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Length(set))
            }
            Tok::Ident(name) => {
                let measure = name.parse::<MeasureId>().map_err(|_| {
                    ParseError::syntax(start.column, format!("expected a measure, `len` or a number, found `{name}`"))
                })?;
                self.expect(Tok::LParen)?;
                let mut args = vec![self.setexpr()?];
                while self.peek().tok == Tok::Comma {
                    self.advance();
                    args.push(self.setexpr()?);
                }
                self.expect(Tok::RParen)?;
                if args.len() != measure.arity() {
                    return Err(ParseError::arity(
                        start.column,
                        format!("{measure} takes {} argument(s), got {}", measure.arity(), args.len()),
                    ));
                }
                Ok(Term::Measure { measure, args })
            }
            other => Err(ParseError::syntax(
                start.column,
                format!("expected a measure, `len` or a number, found {}", other.describe()),
            )),
        }
    }

    fn setexpr(&mut self) -> Result<SetExpr, ParseError> {
        let mut parts = vec![self.set_operand()?];
        while self.at_keyword("union") {
            self.advance();
            parts.push(self.set_operand()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SetExpr::Union(parts) })
    }

    fn set_operand(&mut self) -> Result<SetExpr, ParseError> {
        let start = self.advance();
        match start.tok {
            Tok::Ident(name) if name == "X" => Ok(SetExpr::Whole),
            Tok::Ident(name) if is_variable(&name) => {
                if self.scope.contains(&name) {
                    Ok(SetExpr::Var(name))
                } else {
                    Err(ParseError::unbound(start.column, name))
                }
            }
            Tok::LBrace => {
                let mut labels = vec![self.label()?];
                while self.peek().tok == Tok::Comma {
                    self.advance();
                    labels.push(self.label()?);
                }
                self.expect(Tok::RBrace)?;
                Ok(SetExpr::Literal(labels))
            }
            other => Err(ParseError::syntax(
                start.column,
                format!("expected a set (variable, X or {{...}}), found {}", other.describe()),
            )),
        }
    }

    fn label(&mut self) -> Result<String, ParseError> {
        let tok = self.advance();
        match tok.tok {
            Tok::Ident(s) | Tok::Number(s) | Tok::Str(s) => Ok(s),
            other => Err(ParseError::syntax(tok.column, format!("expected an item label, found {}", other.describe()))),
        }
    }
}
