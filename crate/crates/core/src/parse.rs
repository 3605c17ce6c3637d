//! Parser and printer for 1-form and polynomial expressions.
//!
//! Grammar, over variables x and y with exact rational literals:
//!
//! ```text
//! form   := sign? item (('+'|'-') item)*
//! item   := product? ('dx' | 'dy')        -- every additive term carries one
//! poly   := sign? product (('+'|'-') product)*
//! product:= factor ('*'? factor)*          -- juxtaposition multiplies
//! factor := literal | 'x' | 'y' | '(' poly ')' , optionally '^' natural
//! literal:= integer ('/' integer)?
//! ```
//!
//! Printing is canonical (graded-lex term order, rationals as `p/q`), and
//! `parse(print(w)) == w` on every primitive form.

use num_traits::{One, Signed, Zero};

use crate::algebra::poly2::Poly2;
use crate::algebra::rat::{rat_to_string, Rat};
use crate::error::{Error, Result};
use crate::foliation::OneForm;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    X,
    Y,
    Dx,
    Dy,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_tok(&mut self) -> Result<(Tok, usize)> {
        let save = self.pos;
        let t = self.next_tok()?;
        let at = self.pos;
        self.pos = save;
        Ok((t.0, at.min(t.1)))
    }

    fn next_tok(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::End, start));
        }
        let c = self.src[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok((Tok::Plus, start))
            }
            b'-' => {
                self.pos += 1;
                Ok((Tok::Minus, start))
            }
            b'*' => {
                self.pos += 1;
                Ok((Tok::Star, start))
            }
            b'^' => {
                self.pos += 1;
                Ok((Tok::Caret, start))
            }
            b'(' => {
                self.pos += 1;
                Ok((Tok::LParen, start))
            }
            b')' => {
                self.pos += 1;
                Ok((Tok::RParen, start))
            }
            b'x' => {
                self.pos += 1;
                Ok((Tok::X, start))
            }
            b'y' => {
                self.pos += 1;
                Ok((Tok::Y, start))
            }
            b'd' => {
                if self.pos + 1 < self.src.len() {
                    match self.src[self.pos + 1] {
                        b'x' => {
                            self.pos += 2;
                            return Ok((Tok::Dx, start));
                        }
                        b'y' => {
                            self.pos += 2;
                            return Ok((Tok::Dy, start));
                        }
                        _ => {}
                    }
                }
                Err(Error::SyntaxError {
                    pos: start,
                    msg: "expected dx or dy".into(),
                })
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                if end < self.src.len() && self.src[end] == b'.' {
                    return Err(Error::NonRationalLiteral { pos: start });
                }
                let digits = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                let num: Rat = digits.parse::<num_bigint::BigInt>().unwrap().into();
                // fraction?
                let save = self.pos;
                self.skip_ws();
                if self.pos < self.src.len() && self.src[self.pos] == b'/' {
                    self.pos += 1;
                    self.skip_ws();
                    let dstart = self.pos;
                    let mut dend = self.pos;
                    while dend < self.src.len() && self.src[dend].is_ascii_digit() {
                        dend += 1;
                    }
                    if dend == dstart {
                        return Err(Error::SyntaxError {
                            pos: dstart,
                            msg: "expected denominator".into(),
                        });
                    }
                    let dd = std::str::from_utf8(&self.src[dstart..dend]).unwrap();
                    self.pos = dend;
                    let den: num_bigint::BigInt = dd.parse().unwrap();
                    if den.is_zero() {
                        return Err(Error::SyntaxError {
                            pos: dstart,
                            msg: "zero denominator".into(),
                        });
                    }
                    return Ok((Tok::Num(Rat::new(num.numer().clone(), den)), start));
                }
                self.pos = save;
                Ok((Tok::Num(num), start))
            }
            _ => Err(Error::SyntaxError {
                pos: start,
                msg: format!("unexpected character '{}'", c as char),
            }),
        }
    }
}

struct Parser<'a> {
    lx: Lexer<'a>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            lx: Lexer::new(src),
        }
    }

    /// Parse a polynomial (additive expression without differentials).
    fn poly(&mut self) -> Result<Poly2> {
        let mut acc = Poly2::zero();
        let mut sign = Rat::one();
        let (t, pos) = self.lx.peek_tok()?;
        match t {
            Tok::Minus => {
                self.lx.next_tok()?;
                sign = -sign;
            }
            Tok::Plus => {
                self.lx.next_tok()?;
            }
            Tok::End => {
                return Err(Error::SyntaxError {
                    pos,
                    msg: "empty expression".into(),
                })
            }
            _ => {}
        }
        loop {
            let term = self.product()?;
            acc = acc.add(&term.scale(&sign));
            let (t, _) = self.lx.peek_tok()?;
            match t {
                Tok::Plus => {
                    self.lx.next_tok()?;
                    sign = Rat::one();
                }
                Tok::Minus => {
                    self.lx.next_tok()?;
                    sign = -Rat::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly2> {
        let mut acc = self.factor()?;
        loop {
            let (t, _) = self.lx.peek_tok()?;
            match t {
                Tok::Star => {
                    self.lx.next_tok()?;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Tok::Num(_) | Tok::X | Tok::Y | Tok::LParen => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly2> {
        let (t, pos) = self.lx.next_tok()?;
        let base = match t {
            Tok::Num(r) => Poly2::constant(r),
            Tok::X => Poly2::var_x(),
            Tok::Y => Poly2::var_y(),
            Tok::LParen => {
                let inner = self.poly()?;
                let (t, pos) = self.lx.next_tok()?;
                if t != Tok::RParen {
                    return Err(Error::SyntaxError {
                        pos,
                        msg: "expected ')'".into(),
                    });
                }
                inner
            }
            _ => {
                return Err(Error::SyntaxError {
                    pos,
                    msg: "expected a factor".into(),
                })
            }
        };
        let (t, _) = self.lx.peek_tok()?;
        if t == Tok::Caret {
            self.lx.next_tok()?;
            let (t, pos) = self.lx.next_tok()?;
            match t {
                Tok::Num(r) if r.is_integer() && !r.is_negative() => {
                    let e: u32 = r.numer().try_into().map_err(|_| Error::SyntaxError {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::SyntaxError {
                    pos,
                    msg: "expected a nonnegative integer exponent".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    /// Parse a full 1-form: a sum of items each ending in dx or dy.
    fn form(&mut self) -> Result<(Poly2, Poly2)> {
        let mut a = Poly2::zero();
        let mut b = Poly2::zero();
        let mut sign = Rat::one();
        let (t, _) = self.lx.peek_tok()?;
        match t {
            Tok::Minus => {
                self.lx.next_tok()?;
                sign = -sign;
            }
            Tok::Plus => {
                self.lx.next_tok()?;
            }
            _ => {}
        }
        loop {
            // coefficient product, possibly empty (bare dx / dy)
            let (t, _) = self.lx.peek_tok()?;
            let coeff = match t {
                Tok::Dx | Tok::Dy => Poly2::one(),
                _ => self.product()?,
            };
            let (t, pos) = self.lx.next_tok()?;
            match t {
                Tok::Dx => a = a.add(&coeff.scale(&sign)),
                Tok::Dy => b = b.add(&coeff.scale(&sign)),
                _ => {
                    return Err(Error::SyntaxError {
                        pos,
                        msg: "expected dx or dy to close the term".into(),
                    })
                }
            }
            let (t, pos) = self.lx.next_tok()?;
            match t {
                Tok::Plus => sign = Rat::one(),
                Tok::Minus => sign = -Rat::one(),
                Tok::End => return Ok((a, b)),
                _ => {
                    return Err(Error::SyntaxError {
                        pos,
                        msg: "expected '+', '-' or end of input".into(),
                    })
                }
            }
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        let (t, pos) = self.lx.next_tok()?;
        if t != Tok::End {
            return Err(Error::SyntaxError {
                pos,
                msg: "trailing input".into(),
            });
        }
        Ok(())
    }
}

/// Parse `"<a> dx + <b> dy"` into a primitivized 1-form.
pub fn parse_form(text: &str) -> Result<OneForm> {
    let mut p = Parser::new(text);
    let (a, b) = p.form()?;
    OneForm::new(a, b)
}

/// Parse the raw coefficient pair without primitivizing.
pub fn parse_form_raw(text: &str) -> Result<(Poly2, Poly2)> {
    let mut p = Parser::new(text);
    p.form()
}

/// Parse a plain polynomial in x and y.
pub fn parse_poly(text: &str) -> Result<Poly2> {
    let mut p = Parser::new(text);
    let out = p.poly()?;
    p.expect_end()?;
    Ok(out)
}

/// Canonical polynomial printing: descending graded-lex, `p/q` rationals,
/// no `+ -` sequences.
pub fn print_poly(p: &Poly2) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (idx, (e, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let show = e.total() == 0 || !a.is_one();
        if show {
            if a.denom().is_one() {
                out.push_str(&a.numer().to_string());
            } else {
                out.push_str(&format!("({})", rat_to_string(&a)));
            }
        }
        if e.i >= 1 {
            out.push('x');
            if e.i > 1 {
                out.push_str(&format!("^{}", e.i));
            }
        }
        if e.j >= 1 {
            out.push('y');
            if e.j > 1 {
                out.push_str(&format!("^{}", e.j));
            }
        }
    }
    out
}

/// Canonical 1-form printing: `a dx + b dy` with parenthesized multi-term
/// coefficients.
pub fn print_form(w: &OneForm) -> String {
    print_pair(w.a(), w.b())
}

pub fn print_pair(a: &Poly2, b: &Poly2) -> String {
    fn wrap(p: &Poly2, d: &str) -> Vec<String> {
        if p.is_zero() {
            return vec![];
        }
        let n_terms = p.terms().count();
        let s = print_poly(p);
        if n_terms == 1 {
            if s == "1" {
                vec![d.to_string()]
            } else if s == "-1" {
                vec![format!("-{}", d)]
            } else {
                vec![format!("{} {}", s, d)]
            }
        } else {
            vec![format!("({}) {}", s, d)]
        }
    }
    let mut parts = wrap(a, "dx");
    parts.extend(wrap(b, "dy"));
    if parts.is_empty() {
        return "0 dx".to_string();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}
