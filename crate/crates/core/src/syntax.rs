//! Text form of smooth-function expressions.
//!
//! ```text
//! sum    := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "x" | "t" | "z82" | series | "(" sum ")"
//! series := "series(" key "=" value ("," key "=" value)* ")"
//! ```
//!
//! `t` is the generator of `F_p[t]`. Series keys are `coeffs`
//! (`ones`, `alternating`, `index`, `const(c)`, `list(a;b;..)`, `z82`),
//! `omega`, `exp` (`linear`, `half`, `square`, `lag`, `affine(a;b)`),
//! `start` and `dec` (`k:d;k:d`).

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rings::{Ring, RingElement};
use crate::smoothfn::{poly, CoeffSource, ExponentFamily, Jet, Omega, ProductSeries, SmoothExpr};
use crate::witness::{z82_series, Z82_NAME};

/// Parse an expression over `ring`; `omega` is the default domain for series
/// atoms that do not name one.
pub fn parse_expr(text: &str, ring: &Ring, omega: &Omega) -> Result<SmoothExpr> {
    let mut p = Parser { src: text, chars: text.char_indices().collect(), pos: 0, ring: *ring, omega };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    ring: Ring,
    omega: &'a Omega,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|c| c.0).unwrap_or(self.src.len())
    }

    fn error(&mut self, expected: &str) -> Error {
        self.skip_ws();
        let found = match self.chars.get(self.pos) {
            Some(&(_, c)) => format!("`{c}`"),
            None => "end of input".into(),
        };
        Error::Parse { position: self.offset(), expected: expected.into(), found }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn sum(&mut self) -> Result<SmoothExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = SmoothExpr::sum(&self.ring, acc, t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = SmoothExpr::difference(&self.ring, acc, t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SmoothExpr> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let f = self.unary()?;
            acc = SmoothExpr::product(&self.ring, acc, f);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SmoothExpr> {
        if self.eat('-') {
            let e = self.unary()?;
            return Ok(SmoothExpr::neg(&self.ring, e));
        }
        self.power()
    }

    fn power(&mut self) -> Result<SmoothExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("a non-negative integer exponent"));
            }
            let e: u64 = digits.parse().map_err(|_| self.error("an exponent that fits in 64 bits"))?;
            return Ok(SmoothExpr::power(&self.ring, &base, e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if !(c.is_ascii_alphanumeric() || c == '_') {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<SmoothExpr> {
        let r = self.ring;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v: BigInt = self.digits().parse().expect("digits");
                Ok(SmoothExpr::constant(&r, r.from_bigint(&v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                match self.ident().as_str() {
                    "x" => Ok(SmoothExpr::x(&r)),
                    "t" => match r.generator() {
                        Some(g) => Ok(SmoothExpr::constant(&r, g)),
                        None => {
                            self.pos = start;
                            Err(self.error(&format!("a term of {r} (`t` needs F_p[t])")))
                        }
                    },
                    "z82" => {
                        if r != Ring::integers() {
                            self.pos = start;
                            return Err(self.error("a term of Z (`z82` lives over Z)"));
                        }
                        Ok(z82_series())
                    }
                    "series" => self.series(),
                    _ => {
                        self.pos = start;
                        Err(self.error("`x`, `t`, `z82`, `series(..)`, an integer or `(`"))
                    }
                }
            }
            _ => Err(self.error("`x`, `t`, `z82`, `series(..)`, an integer or `(`")),
        }
    }

    /// Raw text of an argument value, up to a top-level `,` or `)`.
    fn raw_value(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let at = self.offset();
        let mut depth = 0i32;
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            match c {
                '(' | '{' | '[' => depth += 1,
                ')' | '}' | ']' if depth > 0 => depth -= 1,
                ',' | ')' if depth == 0 => break,
                _ => {}
            }
            s.push(c);
            self.pos += 1;
        }
        if s.trim().is_empty() {
            return Err(self.error("a value"));
        }
        Ok((at, s.trim().to_string()))
    }

    fn series(&mut self) -> Result<SmoothExpr> {
        let r = self.ring;
        self.expect('(')?;
        let mut coeffs = None;
        let mut omega = None;
        let mut exps = None;
        let mut start = 0usize;
        let mut dec = BTreeMap::new();
        loop {
            self.skip_ws();
            let key_at = self.pos;
            let key = self.ident();
            if key.is_empty() {
                return Err(self.error("a series key"));
            }
            self.expect('=')?;
            let (at, value) = self.raw_value()?;
            let bad = |expected: &str| Error::Parse {
                position: at,
                expected: expected.into(),
                found: format!("`{value}`"),
            };
            match key.as_str() {
                "coeffs" => coeffs = Some(parse_coeffs(&r, &value).ok_or_else(|| bad("a coefficient spec"))?),
                "omega" => omega = Some(Omega::parse(r, &value)?),
                "exp" => exps = Some(parse_exps(&value).ok_or_else(|| bad("an exponent spec"))?),
                "start" => start = value.parse().map_err(|_| bad("a start index"))?,
                "dec" => dec = parse_dec(&value).ok_or_else(|| bad("decrements k:d;k:d"))?,
                _ => {
                    self.pos = key_at;
                    return Err(self.error("one of coeffs, omega, exp, start, dec"));
                }
            }
            if self.eat(')') {
                break;
            }
            self.expect(',')?;
        }
        let omega = omega.unwrap_or_else(|| self.omega.clone());
        let coeffs = coeffs.unwrap_or(CoeffSource::Ones);
        if let CoeffSource::Custom { name, .. } = &coeffs {
            if name == Z82_NAME {
                let SmoothExpr::Series(base) = z82_series() else { unreachable!() };
                let base = base.as_ref().clone();
                return Ok(SmoothExpr::series(base.with_tail(start, dec)?));
            }
        }
        let s = ProductSeries::new(omega, coeffs, exps.unwrap_or(ExponentFamily::Linear))?;
        Ok(SmoothExpr::series(s.with_tail(start, dec)?))
    }
}

fn call_args<'a>(value: &'a str, name: &str) -> Option<Vec<&'a str>> {
    let inner = value.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(';').map(str::trim).collect())
}

fn parse_coeffs(ring: &Ring, value: &str) -> Option<CoeffSource> {
    match value {
        "ones" => return Some(CoeffSource::Ones),
        "alternating" => return Some(CoeffSource::Alternating),
        "index" => return Some(CoeffSource::Index),
        v if v == Z82_NAME => {
            return Some(CoeffSource::Custom { name: Z82_NAME.into(), f: std::sync::Arc::new(|_, _| SmoothExpr::zero()) })
        }
        _ => {}
    }
    if let Some(a) = call_args(value, "const") {
        let [c] = a.as_slice() else { return None };
        return ring.parse_element(c).ok().map(CoeffSource::Constant);
    }
    if let Some(a) = call_args(value, "list") {
        return a.iter().map(|c| ring.parse_element(c).ok()).collect::<Option<Vec<_>>>().map(CoeffSource::List);
    }
    None
}

fn parse_exps(value: &str) -> Option<ExponentFamily> {
    match value {
        "linear" => Some(ExponentFamily::Linear),
        "half" => Some(ExponentFamily::Half),
        "square" => Some(ExponentFamily::Square),
        "lag" => Some(ExponentFamily::Lag),
        _ => {
            let a = call_args(value, "affine")?;
            let [a, b] = a.as_slice() else { return None };
            Some(ExponentFamily::Affine { a: a.parse().ok()?, b: b.parse().ok()? })
        }
    }
}

fn parse_dec(value: &str) -> Option<BTreeMap<usize, u64>> {
    value
        .split(';')
        .map(|kv| {
            let (k, d) = kv.split_once(':')?;
            Some((k.trim().parse().ok()?, d.trim().parse().ok()?))
        })
        .collect()
}

fn element_factor(ring: &Ring, c: &RingElement) -> String {
    let s = ring.format_element(c);
    if ring.element_is_compound(c) {
        format!("({s})")
    } else {
        s
    }
}

/// Polynomial in `x`, highest degree first.
fn print_poly(ring: &Ring, p: &[RingElement]) -> String {
    let mut out = String::new();
    for (deg, c) in p.iter().enumerate().rev() {
        if ring.is_zero(c) {
            continue;
        }
        let negative = matches!(c, RingElement::Int(v) if v.sign() == num_bigint::Sign::Minus);
        let mag = if negative { ring.neg(c) } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = match deg {
            0 => String::new(),
            1 => "x".into(),
            d => format!("x^{d}"),
        };
        if deg == 0 {
            out.push_str(&element_factor(ring, &mag));
        } else if ring.is_one(&mag) {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{mono}", element_factor(ring, &mag)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn print_series(ring: &Ring, s: &ProductSeries) -> String {
    let coeffs = s.coeffs().name(ring);
    if coeffs == Z82_NAME && s.start() == 0 && s.decrements().is_empty() {
        return Z82_NAME.into();
    }
    let mut out = format!("series(coeffs={coeffs}, omega={}, exp={}", s.omega(), s.exponents().name());
    if s.start() > 0 {
        out.push_str(&format!(", start={}", s.start()));
    }
    if !s.decrements().is_empty() {
        let d: Vec<String> = s.decrements().iter().map(|(k, d)| format!("{k}:{d}")).collect();
        out.push_str(&format!(", dec={}", d.join(";")));
    }
    out.push(')');
    out
}

/// Terms that print without any top-level operator.
fn is_atomic(ring: &Ring, e: &SmoothExpr) -> bool {
    match e {
        SmoothExpr::Series(_) => true,
        _ => match e.as_poly(ring) {
            Some(p) => {
                let nonzero: Vec<_> = p.iter().enumerate().filter(|(_, c)| !ring.is_zero(c)).collect();
                match nonzero.as_slice() {
                    [(0, c)] => !ring.element_is_compound(c),
                    [(_, c)] => ring.is_one(c),
                    _ => false,
                }
            }
            None => false,
        },
    }
}

/// Printed form, read back by [`parse_expr`] to the same expression.
pub fn print_expr(ring: &Ring, e: &SmoothExpr) -> String {
    let paren = |s: String| format!("({s})");
    match e {
        SmoothExpr::Const(_) | SmoothExpr::X | SmoothExpr::Poly(_) => {
            print_poly(ring, &e.as_poly(ring).expect("polynomial atom"))
        }
        SmoothExpr::Series(s) => print_series(ring, s),
        SmoothExpr::Add(a, b) => {
            let rhs = print_expr(ring, b);
            let rhs = if matches!(b.as_ref(), SmoothExpr::Add(..)) || rhs.starts_with('-') { paren(rhs) } else { rhs };
            format!("{} + {rhs}", print_expr(ring, a))
        }
        SmoothExpr::Mul(a, b) => {
            let lhs = print_expr(ring, a);
            let lhs = match a.as_ref() {
                SmoothExpr::Add(..) => paren(lhs),
                SmoothExpr::Mul(..) | SmoothExpr::Scale(..) => lhs,
                other if is_atomic(ring, other) => lhs,
                _ if !lhs.contains([' ']) && !lhs.starts_with('-') => lhs,
                _ => paren(lhs),
            };
            let rhs = print_expr(ring, b);
            let rhs = if is_atomic(ring, b) { rhs } else { paren(rhs) };
            format!("{lhs} * {rhs}")
        }
        SmoothExpr::Scale(c, a) => {
            let inner = print_expr(ring, a);
            let inner = if is_atomic(ring, a) { inner } else { paren(inner) };
            format!("{}*{inner}", element_factor(ring, c))
        }
    }
}

fn shifted(ring: &Ring, lambda: &RingElement) -> String {
    if ring.is_zero(lambda) {
        return "x".into();
    }
    match lambda {
        RingElement::Int(v) if v.sign() == num_bigint::Sign::Minus => format!("x+{}", -v),
        _ if ring.element_is_compound(lambda) => format!("x-({})", ring.format_element(lambda)),
        _ => format!("x-{}", ring.format_element(lambda)),
    }
}

/// `a0 + a1*(x-l) + ... + aN*(x-l)^N (mod (x-l)^(N+1))`.
pub fn print_jet(jet: &Jet) -> String {
    let r = jet.ring();
    let u = shifted(r, jet.base());
    let terms: Vec<String> = jet
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, a)| {
            let a = element_factor(r, a);
            match n {
                0 => a,
                1 => format!("{a}*({u})"),
                n => format!("{a}*({u})^{n}"),
            }
        })
        .collect();
    format!("{} (mod ({u})^{})", terms.join(" + "), jet.order() + 1)
}

/// Expand a polynomial expression, for display of cofactors.
pub fn print_poly_coeffs(ring: &Ring, p: &poly::Poly) -> String {
    print_poly(ring, p)
}
