//! Concrete syntax.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := cf ("->" cf)*
//! cf      := or (("|>" | "m|>") or)*
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "box" unary | "dia" unary | atom
//! atom    := ident | "0" | "1" | "(" formula ")"
//! ```
//!
//! Every binary connective is right-associative. `box` and `dia` are
//! reserved words; an identifier `m` directly followed by `|>` lexes as the
//! might-counterfactual, so the printer always puts spaces around `|>`.

use std::fmt;

use thiserror::Error;

use super::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    LParen,
    RParen,
    Not,
    Box,
    Dia,
    And,
    Or,
    Imp,
    Iff,
    Cf,
    Might,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "identifier `{name}`"),
            Tok::Zero => "`0`",
            Tok::One => "`1`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Not => "`~`",
            Tok::Box => "`box`",
            Tok::Dia => "`dia`",
            Tok::And => "`&`",
            Tok::Or => "`|`",
            Tok::Imp => "`->`",
            Tok::Iff => "`<->`",
            Tok::Cf => "`|>`",
            Tok::Might => "`m|>`",
        };
        f.write_str(s)
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let err = |pos: usize, message: String| ParseError { pos, message };
    while let Some(&(pos, c)) = chars.peek() {
        let rest = &src[pos..];
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("|>") {
            (Tok::Cf, 2)
        } else if rest.starts_with("m|>") {
            (Tok::Might, 3)
        } else {
            match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '~' | '¬' => (Tok::Not, c.len_utf8()),
                '&' | '∧' => (Tok::And, c.len_utf8()),
                '|' | '∨' => (Tok::Or, c.len_utf8()),
                '→' => (Tok::Imp, c.len_utf8()),
                '↔' => (Tok::Iff, c.len_utf8()),
                '□' => (Tok::Box, c.len_utf8()),
                '◇' => (Tok::Dia, c.len_utf8()),
                '⊥' => (Tok::Zero, c.len_utf8()),
                '⊤' => (Tok::One, c.len_utf8()),
                _ if c.is_ascii_digit() => {
                    let len = rest.chars().take_while(|d| d.is_ascii_alphanumeric()).count();
                    match &rest[..len] {
                        "0" => (Tok::Zero, 1),
                        "1" => (Tok::One, 1),
                        other => return Err(err(pos, format!("unexpected literal `{other}`"))),
                    }
                }
                _ if c.is_alphabetic() || c == '_' => {
                    let len: usize = rest
                        .chars()
                        .take_while(|d| d.is_alphanumeric() || *d == '_' || *d == '\'')
                        .map(char::len_utf8)
                        .sum();
                    let word = &rest[..len];
                    let tok = match word {
                        "box" => Tok::Box,
                        "dia" => Tok::Dia,
                        _ => Tok::Ident(word.to_string()),
                    };
                    (tok, len)
                }
                _ => return Err(err(pos, format!("unexpected character `{c}`"))),
            }
        };
        out.push((pos, tok));
        let end = pos + len;
        while chars.peek().is_some_and(|&(p, _)| p < end) {
            chars.next();
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.peek() == Some(&Tok::Iff) {
            self.bump();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.cf()?;
        if self.peek() == Some(&Tok::Imp) {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn cf(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        match self.peek() {
            Some(Tok::Cf) => {
                self.bump();
                Ok(Formula::cf(lhs, self.cf()?))
            }
            Some(Tok::Might) => {
                self.bump();
                Ok(Formula::might(lhs, self.cf()?))
            }
            _ => Ok(lhs),
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.and()?;
        if self.peek() == Some(&Tok::Or) {
            self.bump();
            return Ok(Formula::or(lhs, self.or()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.peek() == Some(&Tok::And) {
            self.bump();
            return Ok(Formula::and(lhs, self.and()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::Box) => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Some(Tok::Dia) => {
                self.bump();
                Ok(Formula::diamond(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.bump();
                Ok(Formula::Var(name))
            }
            Some(Tok::Zero) => {
                self.bump();
                Ok(Formula::Bot)
            }
            Some(Tok::One) => {
                self.bump();
                Ok(Formula::Top)
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.iff()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(inner)
                    }
                    Some(t) => {
                        let t = t.to_string();
                        self.error(format!("expected `)`, found {t}"))
                    }
                    None => self.error("expected `)`, found end of input"),
                }
            }
            Some(t) => self.error(format!("expected a formula, found {t}")),
            None => self.error("expected a formula, found end of input"),
        }
    }
}

/// Parses a formula, expanding derived connectives.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let f = p.iff()?;
    if let Some(t) = p.peek() {
        let t = t.to_string();
        return p.error(format!("unexpected {t} after complete formula"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMP: u8 = 2;
const CF: u8 = 3;
const OR: u8 = 4;
const AND: u8 = 5;
const UNARY: u8 = 6;

fn level(f: &Formula) -> u8 {
    if f.as_neg().is_some() || f.as_box().is_some() {
        return UNARY;
    }
    if f.as_iff().is_some() {
        return IFF;
    }
    match f {
        Formula::Var(_) | Formula::Bot | Formula::Top => UNARY + 1,
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Imp(..) => IMP,
        Formula::Cf(..) => CF,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, phi: &Formula, min: u8) -> fmt::Result {
    if level(phi) < min {
        f.write_str("(")?;
        write_formula(f, phi)?;
        f.write_str(")")
    } else {
        write_formula(f, phi)
    }
}

fn write_binary(f: &mut fmt::Formatter<'_>, l: &Formula, op: &str, r: &Formula, lvl: u8) -> fmt::Result {
    // Right-associative: a left operand at the same level needs parentheses.
    write_at(f, l, lvl + 1)?;
    write!(f, " {op} ")?;
    write_at(f, r, lvl)
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula) -> fmt::Result {
    if let Some(x) = phi.as_box() {
        f.write_str("box ")?;
        return write_at(f, x, UNARY);
    }
    if let Some(x) = phi.as_neg() {
        f.write_str("~")?;
        return write_at(f, x, UNARY);
    }
    if let Some((x, y)) = phi.as_iff() {
        return write_binary(f, x, "<->", y, IFF);
    }
    match phi {
        Formula::Var(v) => f.write_str(v),
        Formula::Bot => f.write_str("0"),
        Formula::Top => f.write_str("1"),
        Formula::And(l, r) => write_binary(f, l, "&", r, AND),
        Formula::Or(l, r) => write_binary(f, l, "|", r, OR),
        Formula::Imp(l, r) => write_binary(f, l, "->", r, IMP),
        Formula::Cf(l, r) => write_binary(f, l, "|>", r, CF),
    }
}

/// Prints with minimal parentheses, re-sugaring `~`, `box` and `<->`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn identity_counterfactual() {
        assert_eq!(parse("p |> p").unwrap(), Formula::cf(v("p"), v("p")));
    }

    #[test]
    fn box_expands() {
        assert_eq!(
            parse("box p").unwrap(),
            Formula::cf(Formula::imp(v("p"), Formula::Bot), v("p"))
        );
    }

    #[test]
    fn grouping_roundtrip() {
        let f = parse("p |> (q & r)").unwrap();
        assert_eq!(f, Formula::cf(v("p"), Formula::and(v("q"), v("r"))));
        assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("~p & q | r |> s -> t <-> u").unwrap(),
            Formula::iff(
                Formula::imp(
                    Formula::cf(Formula::or(Formula::and(Formula::neg(v("p")), v("q")), v("r")), v("s")),
                    v("t")
                ),
                v("u")
            )
        );
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::imp(v("p"), Formula::imp(v("q"), v("r")))
        );
        assert_eq!(
            parse("p |> q m|> r").unwrap(),
            Formula::cf(v("p"), Formula::might(v("q"), v("r")))
        );
    }

    #[test]
    fn might_vs_identifier_m() {
        assert_eq!(parse("p m|> q").unwrap(), Formula::might(v("p"), v("q")));
        assert_eq!(parse("m |> q").unwrap(), Formula::cf(v("m"), v("q")));
        assert_eq!(parse("mm |> q").unwrap(), Formula::cf(v("mm"), v("q")));
        let f = Formula::cf(v("m"), v("q"));
        assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn dia_and_constants() {
        assert_eq!(parse("dia 1").unwrap(), Formula::diamond(Formula::Top));
        assert_eq!(parse("0 |> q").unwrap(), Formula::cf(Formula::Bot, v("q")));
        assert_eq!(parse("¬p ∧ q").unwrap(), parse("~p & q").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("p & ").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse("(p | q").unwrap_err();
        assert_eq!(e.pos, 6);
        let e = parse("p q").unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse("p $ q").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse("").is_err());
        assert!(parse("12").is_err());
        assert!(parse("box").is_err());
    }

    #[test]
    fn printer_resugars() {
        assert_eq!(parse("box ~p").unwrap().to_string(), "box ~p");
        assert_eq!(parse("(p -> q) -> r").unwrap().to_string(), "(p -> q) -> r");
        assert_eq!(parse("p <-> q").unwrap().to_string(), "p <-> q");
        assert_eq!(parse("~(p & q)").unwrap().to_string(), "~(p & q)");
    }
}
