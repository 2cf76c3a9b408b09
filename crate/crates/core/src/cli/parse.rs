//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := [rational '*'] factor
//! factor  := primary ('*' primary)*
//! primary := var | '(' expr ')'
//! rational:= int ['/' posint]
//! var     := identifier such as x1, y2
//! ```
//!
//! Products are not associative, so a chain `a*b*c` is ambiguous. By
//! default it groups to the left, `(a*b)*c`, and a warning is recorded;
//! in strict mode it is an error. The lone source `0` is the zero
//! polynomial.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct ExprAst {
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Rational,
    pub factor: Factor,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    Var { name: String, line: usize, column: usize },
    Group(Box<ExprAst>),
    Product(Box<Factor>, Box<Factor>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub ast: ExprAst,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("identifier {s:?}"),
        Tok::Int(i) => format!("number {i}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Open => "'('".into(),
        Tok::Close => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(source: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = source.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (start_line, start_column) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let tok = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '(' => Tok::Open,
            ')' => Tok::Close,
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    bump(&mut chars);
                }
                out.push(Spanned {
                    tok: Tok::Int(digits.parse().expect("ascii digits")),
                    line: start_line,
                    column: start_column,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    name.push(d);
                    bump(&mut chars);
                }
                out.push(Spanned {
                    tok: Tok::Ident(name),
                    line: start_line,
                    column: start_column,
                });
                continue;
            }
            other => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        bump(&mut chars);
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_column,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    strict: bool,
    warnings: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned> {
        let t = self.next();
        if t.tok != want {
            return self.error(&t, format!("expected {}, found {}", describe(&want), describe(&t.tok)));
        }
        Ok(t)
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek().tok == Tok::Minus {
            self.next();
            negative = true;
        }
        loop {
            let mut term = self.term()?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            match self.peek().tok {
                Tok::Plus => negative = false,
                Tok::Minus => negative = true,
                _ => break,
            }
            self.next();
        }
        Ok(ExprAst { terms })
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = int(1);
        if let Tok::Int(_) = self.peek().tok {
            coeff = self.rational()?;
            self.expect(Tok::Star)?;
        }
        let factor = self.factor()?;
        Ok(Term { coeff, factor })
    }

    fn rational(&mut self) -> Result<Rational> {
        let t = self.next();
        let Tok::Int(numer) = t.tok.clone() else {
            return self.error(&t, format!("expected a number, found {}", describe(&t.tok)));
        };
        if self.peek().tok != Tok::Slash {
            return Ok(Rational::from_integer(numer));
        }
        self.next();
        let d = self.next();
        match d.tok.clone() {
            Tok::Int(denom) if !denom.is_zero() => Ok(Rational::new(numer, denom)),
            Tok::Int(_) => self.error(&d, "zero denominator"),
            other => self.error(&d, format!("expected a denominator, found {}", describe(&other))),
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let start = self.peek().clone();
        let mut acc = self.primary()?;
        let mut operands = 1;
        while self.peek().tok == Tok::Star {
            self.next();
            operands += 1;
            if operands == 3 {
                let message = "unparenthesized product chain is ambiguous in a non-associative algebra";
                if self.strict {
                    return self.error(&start, message);
                }
                self.warnings.push(format!(
                    "{}:{}: {message}; grouping to the left",
                    start.line, start.column
                ));
            }
            let rhs = self.primary()?;
            acc = Factor::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Factor> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Ident(name) => Ok(Factor::Var {
                name,
                line: t.line,
                column: t.column,
            }),
            Tok::Open => {
                let inner = self.expr()?;
                self.expect(Tok::Close)?;
                Ok(Factor::Group(Box::new(inner)))
            }
            other => self.error(&t, format!("expected a variable or '(', found {}", describe(&other))),
        }
    }
}

pub fn parse(source: &str, strict: bool) -> Result<Parsed> {
    let tokens = lex(source)?;
    if let [Spanned { tok: Tok::Int(zero), .. }, Spanned { tok: Tok::End, .. }] = tokens.as_slice() {
        if zero.is_zero() {
            return Ok(Parsed {
                ast: ExprAst { terms: Vec::new() },
                warnings: Vec::new(),
            });
        }
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        strict,
        warnings: Vec::new(),
    };
    let ast = parser.expr()?;
    let end = parser.peek().clone();
    if end.tok != Tok::End {
        return parser.error(&end, format!("unexpected {}", describe(&end.tok)));
    }
    Ok(Parsed {
        ast,
        warnings: parser.warnings,
    })
}

/// Variable names in index order: `names[i]` is the source name of `x_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    pub names: Vec<String>,
}

impl VarTable {
    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32 + 1)
    }
}

fn x_index(name: &str) -> Option<u32> {
    name.strip_prefix('x')
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|d| d.parse().ok())
        .filter(|&k| k >= 1)
}

impl ExprAst {
    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        fn go<'a>(f: &'a Factor, out: &mut Vec<&'a str>) {
            match f {
                Factor::Var { name, .. } => {
                    if !out.contains(&name.as_str()) {
                        out.push(name);
                    }
                }
                Factor::Group(e) => e.collect_names(out),
                Factor::Product(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        for t in &self.terms {
            go(&t.factor, out);
        }
    }

    /// Variables named `x<k>` become `x_k`; if any other name occurs, all
    /// variables are numbered in order of first appearance.
    pub fn variables(&self) -> VarTable {
        let mut seen = Vec::new();
        self.collect_names(&mut seen);
        if seen.iter().all(|n| x_index(n).is_some()) {
            let max = seen.iter().filter_map(|n| x_index(n)).max().unwrap_or(0);
            VarTable {
                names: (1..=max).map(|k| format!("x{k}")).collect(),
            }
        } else {
            VarTable {
                names: seen.into_iter().map(String::from).collect(),
            }
        }
    }

    pub fn lower(&self) -> Polynomial {
        let table = self.variables();
        self.lower_with(&table).with_arity(table.names.len() as u32)
    }

    fn lower_with(&self, table: &VarTable) -> Polynomial {
        fn factor(f: &Factor, table: &VarTable) -> Polynomial {
            match f {
                Factor::Var { name, .. } => {
                    Polynomial::var(table.index_of(name).expect("table built from this tree"))
                }
                Factor::Group(e) => e.lower_with(table),
                Factor::Product(a, b) => factor(a, table).mul(&factor(b, table)),
            }
        }
        self.terms.iter().fold(Polynomial::zero(0), |acc, t| {
            acc.add(&factor(&t.factor, table).scale(&t.coeff))
        })
    }
}

/// Parses and lowers in one step.
pub fn parse_polynomial(source: &str, strict: bool) -> Result<(Polynomial, VarTable, Vec<String>)> {
    let parsed = parse(source, strict)?;
    let table = parsed.ast.variables();
    Ok((parsed.ast.lower(), table, parsed.warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{associator, identity_polynomial};
    use crate::scalar::rational;

    #[test]
    fn associator_source() {
        let (p, table, warnings) = parse_polynomial("((x1*x2)*x3) - (x1*(x2*x3))", true).unwrap();
        assert_eq!(p, associator());
        assert_eq!(table.names, ["x1", "x2", "x3"]);
        assert!(warnings.is_empty());
    }

    #[test]
    fn single_variable() {
        let parsed = parse("x1", true).unwrap();
        assert_eq!(parsed.ast.terms.len(), 1);
        assert!(matches!(parsed.ast.terms[0].factor, Factor::Var { ref name, .. } if name == "x1"));
        assert_eq!(parsed.ast.lower(), identity_polynomial());
    }

    #[test]
    fn strict_rejects_chains() {
        let err = parse("x1*x2*x3", true).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
        let lenient = parse("x1*x2*x3", false).unwrap();
        assert_eq!(lenient.warnings.len(), 1);
        let (p, _, _) = parse_polynomial("x1*x2*x3", false).unwrap();
        assert_eq!(p, parse_polynomial("(x1*x2)*x3", true).unwrap().0);
        assert!(parse("2*x1*x2", true).is_ok());
    }

    #[test]
    fn coefficients_and_signs() {
        let (p, _, _) = parse_polynomial("-3/4*(x1*x2) + 1/4*(x2*x1)", true).unwrap();
        let expected = Polynomial::var(1).mul(&Polynomial::var(2)).scale(&rational(-1, 2));
        assert_eq!(p, expected);
        let (zero, _, _) = parse_polynomial("0", true).unwrap();
        assert!(zero.is_zero());
        let (cancel, _, _) = parse_polynomial("x1 - x1", true).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn named_variables_follow_first_appearance() {
        let (p, table, _) = parse_polynomial("((x*y)*z) - (x*(y*z))", true).unwrap();
        assert_eq!(table.names, ["x", "y", "z"]);
        assert_eq!(p, associator());
        let (_, table, _) = parse_polynomial("(y1*x1)", true).unwrap();
        assert_eq!(table.names, ["y1", "x1"]);
    }

    #[test]
    fn gaps_in_x_indices_keep_arity() {
        let (p, table, _) = parse_polynomial("(x1*x3)", true).unwrap();
        assert_eq!(table.names.len(), 3);
        assert_eq!(p.arity(), 3);
        assert!(!p.is_multilinear());
    }

    #[test]
    fn group_distributes() {
        let (p, _, _) = parse_polynomial("((x1 + x2)*x3)", true).unwrap();
        let (q, _, _) = parse_polynomial("(x1*x3) + (x2*x3)", true).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn error_positions() {
        match parse("x1 +\n  (x2 * )", false).unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 9)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("x1 $ x2", false), Err(Error::Parse { column: 4, .. })));
        assert!(parse("1/0*x1", false).is_err());
        assert!(parse("3", false).is_err());
        assert!(parse("(x1", false).is_err());
        assert!(parse("x1 x2", false).is_err());
    }
}
