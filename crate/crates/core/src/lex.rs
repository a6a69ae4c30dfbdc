//! Tokenizer and parser for the polynomial expression grammar
//!
//! ```text
//! expr  := ['-'] term (('+'|'-') term)*
//! term  := [coeff '*'] word | coeff
//! coeff := int | int '/' int
//! word  := name ('*' name)*
//! name  := ident ('[' int ']')*
//! ```
//!
//! Whitespace is insignificant. Implicit multiplication is rejected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            '+' => {
                out.push((start, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((start, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((start, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((start, Tok::Slash));
                i += 1;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(v)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                // bracketed index suffixes belong to the name: `x[1][2]`
                while i < bytes.len() && bytes[i] == b'[' {
                    let open = i;
                    i += 1;
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == ds || i >= bytes.len() || bytes[i] != b']' {
                        return Err(Error::Syntax {
                            pos: open,
                            msg: "malformed index suffix".into(),
                        });
                    }
                    i += 1;
                }
                out.push((start, Tok::Name(text[start..i].to_string())));
            }
            _ => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(out)
}

/// One parsed term: coefficient and the ordered letters of its word.
pub(crate) type RawTerm = (BigRational, Vec<String>);

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn syntax<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.to_string(),
        })
    }

    fn word(&mut self) -> Result<Vec<String>> {
        let mut letters = Vec::new();
        loop {
            match self.bump() {
                Some(Tok::Name(n)) => letters.push(n),
                Some(Tok::Int(_)) => {
                    self.pos -= 1;
                    return Err(Error::MalformedCoefficient(
                        "coefficient must precede the word".into(),
                    ));
                }
                _ => {
                    self.pos -= 1;
                    return self.syntax("expected a generator name");
                }
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok(letters);
            }
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        match self.peek() {
            Some(Tok::Int(_)) => {
                let Some(Tok::Int(num)) = self.bump() else { unreachable!() };
                let mut coeff = BigRational::from_integer(num.clone());
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Int(den)) if !den.is_zero() => {
                            coeff = BigRational::new(num, den);
                        }
                        _ => {
                            return Err(Error::MalformedCoefficient(
                                "denominator must be a nonzero integer".into(),
                            ))
                        }
                    }
                }
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    let w = self.word()?;
                    Ok((coeff, w))
                } else {
                    Ok((coeff, Vec::new()))
                }
            }
            Some(Tok::Name(_)) => Ok((BigRational::one(), self.word()?)),
            Some(Tok::Slash) => Err(Error::MalformedCoefficient("missing numerator".into())),
            _ => self.syntax("expected a term"),
        }
    }
}

pub(crate) fn parse_terms(text: &str) -> Result<Vec<RawTerm>> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let mut terms = Vec::new();
    let mut negate = false;
    if p.peek() == Some(&Tok::Minus) {
        p.pos += 1;
        negate = true;
    }
    loop {
        let (c, w) = p.term()?;
        terms.push((if negate { -c } else { c }, w));
        match p.bump() {
            None => return Ok(terms),
            Some(Tok::Plus) => negate = false,
            Some(Tok::Minus) => negate = true,
            Some(Tok::Name(_)) | Some(Tok::Int(_)) => {
                p.pos -= 1;
                return p.syntax("implicit multiplication is not allowed; write `*`");
            }
            Some(_) => {
                p.pos -= 1;
                return p.syntax("expected `+` or `-`");
            }
        }
    }
}
