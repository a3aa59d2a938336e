use super::{PolyError, Polynomial, Ring};

/// Renders terms as `coef * v^e * w` joined by ` + ` / ` - `, leading term first.
/// A unit coefficient is left implicit on non-constant terms.
pub fn format(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let ring = p.ring();
    let k = &ring.coeffs;
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = k.is_negative(c);
        let abs = if neg { k.neg(c) } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        if m.is_one() || !k.is_one(&abs) {
            parts.push(abs.to_string());
        }
        for (v, e) in m.support() {
            let name = ring.vars.name(v);
            if e == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        out.push_str(&parts.join(" * "));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, PolyError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                // rational literal n/d
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push(Tok::Num(chars[st..i].iter().collect()));
            }
            c if c.is_alphabetic() || c == '_' => {
                let st = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Tok::Ident(chars[st..i].iter().collect()));
            }
            c => return Err(PolyError::Parse(format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad exponent '{n}'")))?;
                    return Ok(base.pow(e));
                }
                t => return Err(PolyError::Parse(format!("expected exponent, got {t:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, PolyError> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Polynomial::constant(self.ring, self.ring.coeffs.parse(&n)?)),
            Some(Tok::Ident(name)) => self
                .ring
                .try_var(&name)
                .ok_or_else(|| PolyError::Parse(format!("unknown variable '{name}'"))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    t => Err(PolyError::Parse(format!("expected ')', got {t:?}"))),
                }
            }
            t => Err(PolyError::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses sums of products of numbers, variables, powers and parenthesised
/// subexpressions. Accepts everything `format` produces.
pub fn parse(ring: &Ring, s: &str) -> Result<Polynomial, PolyError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(PolyError::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, ring };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(e)
}

