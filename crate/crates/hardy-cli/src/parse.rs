//! Text syntax for inner functions and Toeplitz symbols.
//!
//! ```text
//! inner   := ifactor ('*' ifactor)*
//! ifactor := iatom ('^' uint)?
//! iatom   := '1' | 'r' | 'rz' '(' x ',' y ')' | 'B' '[' (x ',' y ',' m),* ']'
//!          | 'e' '(' λ ')' | 'atom' '(' a ',' mass ')' | 'unimodular' '(' re ',' im ')'
//! symbol  := sfactor ('*' sfactor)*
//! sfactor := 'conj' '(' inner ')' ('^' uint)? | rat ('^' int)? | ifactor
//! rat     := 'rat' '(' '(' re ',' im ')' ';' roots ';' roots ')'
//! roots   := '[' (x ',' y ',' m),* ']'
//! ```
//!
//! The formatters emit shortest round-trip floats, so `parse(format(x)) == x`.

use hardy::toeplitz_kernels::ToeplitzSymbol;
use hardy::{FactoredRational, InnerFunction, C64};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    Sym(char),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if "()[],;*^".contains(ch) {
            out.push((Tok::Sym(ch), at));
            i += 1;
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Ident(word), at));
        } else if ch.is_ascii_digit() || ch == '-' || ch == '+' || ch == '.' {
            let start = i;
            i += 1;
            while i < chars.len() {
                let c = chars[i].1;
                let prev = chars[i - 1].1;
                if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || ((c == '-' || c == '+') && (prev == 'e' || prev == 'E')) {
                    i += 1;
                } else {
                    break;
                }
            }
            let word: String = chars[start..i].iter().map(|(_, c)| c).collect();
            let value = word.parse::<f64>().map_err(|_| ParseError {
                position: at,
                message: format!("bad number '{word}'"),
            })?;
            out.push((Tok::Num(value), at));
        } else {
            return Err(ParseError {
                position: at,
                message: format!("unexpected character '{ch}'"),
            });
        }
    }
    Ok(out)
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        match self.peek() {
            Some(Tok::Num(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("expected a number"),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let at = self.here();
        let v = self.number()?;
        if v.fract() != 0.0 || v.abs() > 1e6 {
            return Err(ParseError {
                position: at,
                message: format!("expected an integer, found {v}"),
            });
        }
        Ok(v as i64)
    }

    fn multiplicity(&mut self) -> Result<u32, ParseError> {
        let at = self.here();
        let m = self.integer()?;
        if m < 1 {
            return Err(ParseError {
                position: at,
                message: "multiplicity must be positive".into(),
            });
        }
        Ok(m as u32)
    }

    fn pair(&mut self) -> Result<(f64, f64), ParseError> {
        self.expect_sym('(')?;
        let a = self.number()?;
        self.expect_sym(',')?;
        let b = self.number()?;
        self.expect_sym(')')?;
        Ok((a, b))
    }

    fn roots(&mut self) -> Result<Vec<(C64, u32)>, ParseError> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if self.eat_sym(']') {
            return Ok(out);
        }
        loop {
            self.expect_sym('(')?;
            let x = self.number()?;
            self.expect_sym(',')?;
            let y = self.number()?;
            self.expect_sym(',')?;
            let m = self.multiplicity()?;
            self.expect_sym(')')?;
            out.push((C64::new(x, y), m));
            if self.eat_sym(']') {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }

    fn check<T>(&self, at: usize, r: hardy::Result<T>) -> Result<T, ParseError> {
        r.map_err(|e| ParseError {
            position: at,
            message: e.to_string(),
        })
    }

    fn power(&mut self) -> Result<Option<i64>, ParseError> {
        if self.eat_sym('^') {
            Ok(Some(self.integer()?))
        } else {
            Ok(None)
        }
    }

    fn inner_power(&mut self, base: InnerFunction) -> Result<InnerFunction, ParseError> {
        let at = self.here();
        match self.power()? {
            None => Ok(base),
            Some(n) if n >= 0 => Ok(base.powu(n as u32)),
            Some(_) => Err(ParseError {
                position: at,
                message: "inner functions take nonnegative powers".into(),
            }),
        }
    }

    fn inner_atom(&mut self) -> Result<InnerFunction, ParseError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(v)) if v == 1.0 => {
                self.pos += 1;
                Ok(InnerFunction::one())
            }
            Some(Tok::Ident(word)) => {
                self.pos += 1;
                match word.as_str() {
                    "r" => Ok(InnerFunction::cayley()),
                    "rz" => {
                        let (x, y) = self.pair()?;
                        self.check(at, InnerFunction::blaschke_factor(C64::new(x, y)))
                    }
                    "B" => {
                        let zeros = self.roots()?;
                        self.check(at, InnerFunction::blaschke(zeros))
                    }
                    "e" => {
                        self.expect_sym('(')?;
                        let l = self.number()?;
                        self.expect_sym(')')?;
                        self.check(at, InnerFunction::exp_inf(l))
                    }
                    "atom" => {
                        let (a, m) = self.pair()?;
                        self.check(at, InnerFunction::atom(a, m))
                    }
                    "unimodular" => {
                        let (re, im) = self.pair()?;
                        self.check(at, InnerFunction::constant(C64::new(re, im)))
                    }
                    other => Err(ParseError {
                        position: at,
                        message: format!("unknown inner factor '{other}'"),
                    }),
                }
            }
            _ => self.fail("expected an inner factor"),
        }
    }

    fn inner_factor(&mut self) -> Result<InnerFunction, ParseError> {
        let base = self.inner_atom()?;
        self.inner_power(base)
    }

    fn inner(&mut self) -> Result<InnerFunction, ParseError> {
        let mut acc = self.inner_factor()?;
        while self.eat_sym('*') {
            acc = acc.mul(&self.inner_factor()?);
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<FactoredRational, ParseError> {
        let at = self.here();
        self.expect_sym('(')?;
        let (re, im) = self.pair()?;
        self.expect_sym(';')?;
        let zeros = self.roots()?;
        self.expect_sym(';')?;
        let poles = self.roots()?;
        self.expect_sym(')')?;
        self.check(at, FactoredRational::new(C64::new(re, im), zeros, poles))
    }

    fn symbol(&mut self) -> Result<ToeplitzSymbol, ParseError> {
        let mut rational = FactoredRational::one();
        let mut conj_inner: Option<InnerFunction> = None;
        let mut inner: Option<InnerFunction> = None;
        loop {
            let at = self.here();
            match self.peek().cloned() {
                Some(Tok::Ident(w)) if w == "conj" => {
                    self.pos += 1;
                    self.expect_sym('(')?;
                    let t = self.inner()?;
                    self.expect_sym(')')?;
                    let t = self.inner_power(t)?;
                    conj_inner = Some(match conj_inner {
                        Some(c) => c.mul(&t),
                        None => t,
                    });
                }
                Some(Tok::Ident(w)) if w == "rat" => {
                    self.pos += 1;
                    let g = self.rational()?;
                    let g = match self.power()? {
                        Some(n) => self.check(at, g.powi(n as i32))?,
                        None => g,
                    };
                    rational = rational.mul(&g);
                }
                _ => {
                    let t = self.inner_factor()?;
                    inner = Some(match inner {
                        Some(c) => c.mul(&t),
                        None => t,
                    });
                }
            }
            if !self.eat_sym('*') {
                break;
            }
        }
        Ok(ToeplitzSymbol {
            rational,
            conj_inner,
            inner,
        })
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.toks.len() {
            self.fail("unexpected trailing input")
        } else {
            Ok(())
        }
    }
}

pub fn parse_inner(text: &str) -> Result<InnerFunction, ParseError> {
    let mut p = Parser::new(text)?;
    let out = p.inner()?;
    p.finish()?;
    Ok(out)
}

pub fn parse_symbol(text: &str) -> Result<ToeplitzSymbol, ParseError> {
    let mut p = Parser::new(text)?;
    let out = p.symbol()?;
    p.finish()?;
    Ok(out)
}

/// A bare `rat(...)` expression.
pub fn parse_rational(text: &str) -> Result<FactoredRational, ParseError> {
    let mut p = Parser::new(text)?;
    match p.peek() {
        Some(Tok::Ident(w)) if w == "rat" => p.pos += 1,
        _ => return p.fail("expected 'rat'"),
    }
    let out = p.rational()?;
    p.finish()?;
    Ok(out)
}

fn fmt_roots(roots: &[(C64, u32)]) -> String {
    let items: Vec<String> = roots.iter().map(|(z, m)| format!("({:?},{:?},{})", z.re, z.im, m)).collect();
    format!("[{}]", items.join(","))
}

pub fn format_inner(theta: &InnerFunction) -> String {
    let mut parts = Vec::new();
    if theta.unimodular != C64::new(1.0, 0.0) {
        parts.push(format!("unimodular({:?},{:?})", theta.unimodular.re, theta.unimodular.im));
    }
    if !theta.zeros().is_empty() {
        parts.push(format!("B{}", fmt_roots(theta.zeros())));
    }
    if theta.lambda_inf() != 0.0 {
        parts.push(format!("e({:?})", theta.lambda_inf()));
    }
    for (a, m) in theta.atoms() {
        parts.push(format!("atom({a:?},{m:?})"));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

pub fn format_rational(g: &FactoredRational) -> String {
    format!(
        "rat(({:?},{:?});{};{})",
        g.scale().re,
        g.scale().im,
        fmt_roots(g.zeros()),
        fmt_roots(g.poles())
    )
}

pub fn format_symbol(g: &ToeplitzSymbol) -> String {
    let mut parts = Vec::new();
    if let Some(t) = &g.conj_inner {
        parts.push(format!("conj({})", format_inner(t)));
    }
    if g.rational != FactoredRational::one() || (g.conj_inner.is_none() && g.inner.is_none()) {
        parts.push(format_rational(&g.rational));
    }
    if let Some(t) = &g.inner {
        parts.push(format_inner(t));
    }
    parts.join(" * ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_square() {
        assert_eq!(parse_inner("r^2").unwrap(), InnerFunction::cayley().powu(2));
        assert_eq!(parse_inner("B[(0,1,2)]").unwrap(), InnerFunction::cayley().powu(2));
        assert_eq!(parse_inner("1").unwrap(), InnerFunction::one());
    }

    #[test]
    fn conjugate_times_rational() {
        let s = parse_symbol("conj(B[(0,1,1)]) * rat((1,0); [(0,-2,1)]; [(0,2,1)])").unwrap();
        assert_eq!(s.conj_inner, Some(InnerFunction::cayley()));
        assert_eq!(s.rational.poles(), &[(C64::new(0.0, 2.0), 1)]);
        assert!(s.inner.is_none());
    }

    #[test]
    fn mixed_inner() {
        let t = parse_inner("unimodular(0,1) * rz(1,2) * e(1.5) * atom(-1,0.5)^2").unwrap();
        assert_eq!(t.unimodular, C64::new(0.0, 1.0));
        assert_eq!(t.atoms(), &[(-1.0, 1.0)]);
        assert_eq!(t.lambda_inf(), 1.5);
    }

    #[test]
    fn malformed_inputs_report_positions() {
        assert_eq!(parse_inner("r^").unwrap_err().position, 2);
        assert_eq!(parse_inner("q").unwrap_err().position, 0);
        assert_eq!(parse_inner("B[(0,-1,1)]").unwrap_err().position, 0);
        assert_eq!(parse_symbol("conj(r").unwrap_err().position, 6);
        assert_eq!(parse_inner("r r").unwrap_err().position, 2);
        assert!(parse_inner("r $").is_err());
        assert!(parse_rational("r").is_err());
    }

    #[test]
    fn round_trip() {
        let t = parse_inner("unimodular(0.6,0.8) * B[(0.1,0.30000000000000004,2),(-3,1e-5,1)] * e(0.1) * atom(2,3)").unwrap();
        assert_eq!(parse_inner(&format_inner(&t)).unwrap(), t);
        for text in ["r", "rat((2,0);[];[])", "conj(r^3)", "conj(e(1)) * rat((0.5,-0.5);[(1,1,1)];[(2,-1,1)]) * atom(0,1)"] {
            let s = parse_symbol(text).unwrap();
            assert_eq!(parse_symbol(&format_symbol(&s)).unwrap(), s, "{text}");
        }
        let g = parse_rational("rat((1,0);[];[(0,-1,2)])").unwrap();
        assert_eq!(parse_rational(&format_rational(&g)).unwrap(), g);
    }
}
