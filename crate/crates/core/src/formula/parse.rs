//! Hand-rolled lexer and recursive-descent parser for the formula grammar.
//!
//! Grammar, loosest first: `->` (right-associative), `|`, `&`, then the
//! unary operators `~ @ O P` and the postfix exponents `^k` / `^(k)`.
//! Atoms are `[a-z][a-zA-Z0-9_]*` minus the reserved words `bot`, `snot`
//! and `snotn`. Defined connectives are expanded here, so the rest of the
//! crate only ever sees primitive connectives.

use super::{expand_defined, Formula, Signature, Sugar, SugarContext, SugarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected `{0}`")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("`{0}` is reserved and cannot be an atom")]
    ReservedWord(String),
    #[error("unknown operator `{0}` (atoms start with a lowercase letter)")]
    UppercaseIdent(String),
    #[error("`@` is not part of this logic's signature")]
    CircNotInSignature,
    #[error("exponent must be a positive integer")]
    BadExponent,
    #[error("{0}")]
    Sugar(SugarError),
    #[error("trailing input after formula")]
    TrailingInput,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Arrow,
    Amp,
    Pipe,
    Tilde,
    At,
    Caret,
    LParen,
    RParen,
    Int(u32),
    KwO,
    KwP,
    KwBot,
    KwSnot,
    KwSnotn,
    Atom(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Arrow => "->".into(),
            Tok::Amp => "&".into(),
            Tok::Pipe => "|".into(),
            Tok::Tilde => "~".into(),
            Tok::At => "@".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Int(k) => k.to_string(),
            Tok::KwO => "O".into(),
            Tok::KwP => "P".into(),
            Tok::KwBot => "bot".into(),
            Tok::KwSnot => "snot".into(),
            Tok::KwSnotn => "snotn".into(),
            Tok::Atom(name) => name.clone(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            '~' => {
                toks.push((Tok::Tilde, i));
                i += 1;
            }
            '@' => {
                toks.push((Tok::At, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(ParseError { offset: i, kind: ParseErrorKind::UnexpectedChar('-') });
                }
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let k: u32 = text[start..i].parse().map_err(|_| ParseError {
                    offset: start,
                    kind: ParseErrorKind::BadExponent,
                })?;
                toks.push((Tok::Int(k), start));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "O" => Tok::KwO,
                    "P" => Tok::KwP,
                    "bot" => Tok::KwBot,
                    "snot" => Tok::KwSnot,
                    "snotn" => Tok::KwSnotn,
                    _ => {
                        if word.starts_with(|c: char| c.is_ascii_uppercase()) {
                            return Err(ParseError {
                                offset: start,
                                kind: ParseErrorKind::UppercaseIdent(word.to_string()),
                            });
                        }
                        Tok::Atom(word.to_string())
                    }
                };
                toks.push((tok, start));
            }
            _ => return Err(ParseError { offset: i, kind: ParseErrorKind::UnexpectedChar(c) }),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    ctx: SugarContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { offset: self.offset(), kind }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(t) => self.err(ParseErrorKind::UnexpectedToken(t.describe())),
            None => ParseError { offset: self.end, kind: ParseErrorKind::UnexpectedEnd },
        }
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn sugar(&self, sugar: Sugar, arg: Formula, offset: usize) -> Result<Formula, ParseError> {
        expand_defined(&sugar, arg, self.ctx)
            .map_err(|e| ParseError { offset, kind: ParseErrorKind::Sugar(e) })
    }

    // imp := or ('->' imp)?
    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.imp()?;
            Ok(Formula::imp(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::At) => {
                if self.ctx.signature == Signature::SigmaC1D {
                    return Err(ParseError { offset, kind: ParseErrorKind::CircNotInSignature });
                }
                self.pos += 1;
                Ok(Formula::circ(self.unary()?))
            }
            Some(Tok::KwO) => {
                self.pos += 1;
                Ok(Formula::obl(self.unary()?))
            }
            Some(Tok::KwP) => {
                self.pos += 1;
                let arg = self.unary()?;
                self.sugar(Sugar::Perm, arg, offset)
            }
            _ => self.postfix(),
        }
    }

    // postfix := primary ('^' (INT | '(' INT ')'))*
    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.primary()?;
        while self.peek() == Some(&Tok::Caret) {
            let offset = self.offset();
            self.pos += 1;
            match self.bump().cloned() {
                Some(Tok::Int(k)) => {
                    if k == 0 {
                        return Err(ParseError { offset, kind: ParseErrorKind::BadExponent });
                    }
                    f = self.sugar(Sugar::Sup(k), f, offset)?;
                }
                Some(Tok::LParen) => {
                    let k = match self.bump().cloned() {
                        Some(Tok::Int(k)) if k > 0 => k,
                        _ => return Err(ParseError { offset, kind: ParseErrorKind::BadExponent }),
                    };
                    self.expect(Tok::RParen)?;
                    f = self.sugar(Sugar::SupRange(k), f, offset)?;
                }
                _ => return Err(ParseError { offset, kind: ParseErrorKind::BadExponent }),
            }
        }
        Ok(f)
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.bump().cloned() {
            Some(Tok::Atom(name)) => Ok(Formula::Atom(name)),
            Some(Tok::LParen) => {
                let f = self.imp()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::KwBot) => {
                let arg = self.paren_arg()?;
                self.sugar(Sugar::Bot, arg, offset)
            }
            Some(Tok::KwSnot) => {
                let arg = self.paren_arg()?;
                self.sugar(Sugar::Snot, arg, offset)
            }
            Some(Tok::KwSnotn) => {
                let arg = self.paren_arg()?;
                self.sugar(Sugar::Snotn, arg, offset)
            }
            Some(_) => {
                self.pos -= 1;
                Err(self.unexpected())
            }
            None => Err(ParseError { offset: self.end, kind: ParseErrorKind::UnexpectedEnd }),
        }
    }

    fn paren_arg(&mut self) -> Result<Formula, ParseError> {
        self.expect(Tok::LParen)?;
        let f = self.imp()?;
        self.expect(Tok::RParen)?;
        Ok(f)
    }
}

/// Parses `text` under the given sugar context, expanding defined
/// connectives into primitives.
pub fn parse(text: &str, ctx: SugarContext) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len(), ctx };
    let f = p.imp()?;
    if p.pos != toks.len() {
        return Err(ParseError { offset: p.offset(), kind: ParseErrorKind::TrailingInput });
    }
    Ok(f)
}
