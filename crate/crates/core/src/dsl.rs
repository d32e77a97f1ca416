//! Ring-expression DSL: parser with position-bearing diagnostics and
//! a printer whose output reparses to a structurally identical AST.
//!
//! Grammar (whitespace-insensitive):
//!   expr   := term ('*' term)*
//!   term   := 'Z/' nat | 'GF(' nat ')' | term '[x]/(' poly ')'
//!           | 'triv(' expr ',' module ')'
//!           | 'amalg(' expr ',' expr ',' hom ',' ideal ')'
//!           | 'dup(' expr ',' ideal ')'
//!           | '(' expr ')'
//!   poly   := ['-'] monomial (('+'|'-') monomial)*
//!   mono   := coeff ['x' ['^' nat]] | 'x' ['^' nat]
//!   coeff  := int | '(' int (',' int)* ')'
//!   module := 'zero' | 'free:' nat | 'Z/' nat ':' file
//!   hom    := 'id' | 'scale0:' int | '@' file
//!   ideal  := '(' int (',' int)* ')'
//!
//! A file token runs to the next ',' or ')' (so paths must not contain
//! either). AST equality ignores spans; the quotient postfix binds
//! tighter than '*'.

use std::fmt;

/// Byte range [start, end) in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug)]
pub enum Coeff {
    Int(i64),
    Tuple(Vec<i64>),
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Int(a), Coeff::Int(b)) => a == b,
            (Coeff::Tuple(a), Coeff::Tuple(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Monomial {
    pub coeff: Coeff,
    pub power: u32,
    pub span: Span,
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeff == other.coeff && self.power == other.power
    }
}

/// Monomials in source order; colliding powers are summed at
/// evaluation, not at parse, so printing is faithful to the input.
#[derive(Clone, Debug)]
pub struct PolyAst {
    pub monomials: Vec<Monomial>,
    pub span: Span,
}

impl PartialEq for PolyAst {
    fn eq(&self, other: &Self) -> bool {
        self.monomials == other.monomials
    }
}

#[derive(Clone, Debug)]
pub enum ModuleSpec {
    Zero { span: Span },
    Free { k: u32, span: Span },
    Cyclic { m: u64, file: String, span: Span },
}

impl PartialEq for ModuleSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ModuleSpec::Zero { .. }, ModuleSpec::Zero { .. }) => true,
            (ModuleSpec::Free { k: a, .. }, ModuleSpec::Free { k: b, .. }) => a == b,
            (
                ModuleSpec::Cyclic { m: m1, file: f1, .. },
                ModuleSpec::Cyclic { m: m2, file: f2, .. },
            ) => m1 == m2 && f1 == f2,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub enum HomSpec {
    Id { span: Span },
    Scale0 { k: i64, span: Span },
    File { path: String, span: Span },
}

impl PartialEq for HomSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (HomSpec::Id { .. }, HomSpec::Id { .. }) => true,
            (HomSpec::Scale0 { k: a, .. }, HomSpec::Scale0 { k: b, .. }) => a == b,
            (HomSpec::File { path: a, .. }, HomSpec::File { path: b, .. }) => a == b,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub generators: Vec<i64>,
    pub span: Span,
}

impl PartialEq for IdealSpec {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

#[derive(Clone, Debug)]
pub enum RingExpr {
    Zmod {
        n: u64,
        span: Span,
    },
    GF {
        p: u64,
        span: Span,
    },
    Quotient {
        base: Box<RingExpr>,
        poly: PolyAst,
        span: Span,
    },
    Product {
        factors: Vec<RingExpr>,
        span: Span,
    },
    Triv {
        base: Box<RingExpr>,
        module: ModuleSpec,
        span: Span,
    },
    Amalg {
        a: Box<RingExpr>,
        b: Box<RingExpr>,
        hom: HomSpec,
        ideal: IdealSpec,
        span: Span,
    },
    Dup {
        base: Box<RingExpr>,
        ideal: IdealSpec,
        span: Span,
    },
}

impl RingExpr {
    pub fn span(&self) -> Span {
        match self {
            RingExpr::Zmod { span, .. }
            | RingExpr::GF { span, .. }
            | RingExpr::Quotient { span, .. }
            | RingExpr::Product { span, .. }
            | RingExpr::Triv { span, .. }
            | RingExpr::Amalg { span, .. }
            | RingExpr::Dup { span, .. } => *span,
        }
    }
}

impl PartialEq for RingExpr {
    fn eq(&self, other: &Self) -> bool {
        use RingExpr::*;
        match (self, other) {
            (Zmod { n: a, .. }, Zmod { n: b, .. }) => a == b,
            (GF { p: a, .. }, GF { p: b, .. }) => a == b,
            (
                Quotient { base: b1, poly: p1, .. },
                Quotient { base: b2, poly: p2, .. },
            ) => b1 == b2 && p1 == p2,
            (Product { factors: f1, .. }, Product { factors: f2, .. }) => f1 == f2,
            (
                Triv { base: b1, module: m1, .. },
                Triv { base: b2, module: m2, .. },
            ) => b1 == b2 && m1 == m2,
            (
                Amalg { a: a1, b: b1, hom: h1, ideal: i1, .. },
                Amalg { a: a2, b: b2, hom: h2, ideal: i2, .. },
            ) => a1 == a2 && b1 == b2 && h1 == h2 && i1 == i2,
            (
                Dup { base: b1, ideal: i1, .. },
                Dup { base: b2, ideal: i2, .. },
            ) => b1 == b2 && i1 == i2,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at byte {}: expected {}, found {}",
            self.offset, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, at: usize, expected: &str) -> PResult<T> {
        let found = match self.src.as_bytes().get(at) {
            None => "end of input".to_string(),
            Some(&b) => format!("'{}'", b as char),
        };
        Err(ParseError {
            offset: at,
            expected: expected.to_string(),
            found,
        })
    }

    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    /// Peek past whitespace without consuming it.
    fn peek_token(&mut self) -> Option<u8> {
        self.skip_ws();
        self.peek()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn expect_char(&mut self, c: u8) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(self.pos, &format!("'{}'", c as char))
        }
    }

    fn parse_nat(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut value: u64 = 0;
        let mut any = false;
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((bytes[self.pos] - b'0') as u64))
                .ok_or(ParseError {
                    offset: start,
                    expected: "integer within u64".to_string(),
                    found: "overflowing literal".to_string(),
                })?;
            self.pos += 1;
        }
        if !any {
            return self.err(start, "a number");
        }
        Ok(value)
    }

    fn parse_int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mag = self.parse_nat()?;
        let limit = if neg {
            1u64 << 63
        } else {
            i64::MAX as u64
        };
        if mag > limit {
            return Err(ParseError {
                offset: start,
                expected: "integer within i64".to_string(),
                found: "overflowing literal".to_string(),
            });
        }
        Ok(if neg {
            if mag == 1u64 << 63 {
                i64::MIN
            } else {
                -(mag as i64)
            }
        } else {
            mag as i64
        })
    }

    /// [A-Za-z][A-Za-z0-9_]* without consuming; returns (word, start).
    fn peek_ident(&mut self) -> (String, usize) {
        self.skip_ws();
        let bytes = self.src.as_bytes();
        let start = self.pos;
        let mut end = start;
        if end < bytes.len() && bytes[end].is_ascii_alphabetic() {
            end += 1;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
        }
        (self.src[start..end].to_string(), start)
    }

    fn consume_ident(&mut self, len: usize) {
        self.pos += len;
    }

    /// Everything up to the next ',' or ')' — a filename token.
    fn parse_file(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = self.pos;
        while end < bytes.len() && bytes[end] != b',' && bytes[end] != b')' {
            end += 1;
        }
        let token = self.src[start..end].trim_end().to_string();
        if token.is_empty() {
            return self.err(start, "a file path");
        }
        self.pos = start + token.len();
        Ok(token)
    }

    fn parse_expr(&mut self) -> PResult<RingExpr> {
        let start = self.pos_token();
        let first = self.parse_term()?;
        let mut factors = vec![first];
        while self.peek_token() == Some(b'*') {
            self.bump();
            factors.push(self.parse_term()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            let end = factors.last().unwrap().span().end;
            Ok(RingExpr::Product {
                factors,
                span: Span { start, end },
            })
        }
    }

    fn pos_token(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn parse_term(&mut self) -> PResult<RingExpr> {
        let start = self.pos_token();
        let mut term = self.parse_primary()?;
        // postfix quotient binds tighter than '*'
        loop {
            self.skip_ws();
            if self.peek() != Some(b'[') {
                break;
            }
            self.bump();
            self.skip_ws();
            if self.peek() != Some(b'x') {
                return self.err(self.pos, "'x'");
            }
            self.bump();
            self.expect_char(b']')?;
            self.expect_char(b'/')?;
            self.expect_char(b'(')?;
            let poly = self.parse_poly()?;
            self.expect_char(b')')?;
            let span = Span {
                start,
                end: self.pos,
            };
            term = RingExpr::Quotient {
                base: Box::new(term),
                poly,
                span,
            };
        }
        Ok(term)
    }

    fn parse_primary(&mut self) -> PResult<RingExpr> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'(') {
            self.bump();
            let inner = self.parse_expr()?;
            self.expect_char(b')')?;
            return Ok(inner);
        }
        let (word, at) = self.peek_ident();
        match word.as_str() {
            "Z" => {
                self.consume_ident(1);
                self.expect_char(b'/')?;
                let n = self.parse_nat()?;
                Ok(RingExpr::Zmod {
                    n,
                    span: Span { start, end: self.pos },
                })
            }
            "GF" => {
                self.consume_ident(2);
                self.expect_char(b'(')?;
                let p = self.parse_nat()?;
                self.expect_char(b')')?;
                Ok(RingExpr::GF {
                    p,
                    span: Span { start, end: self.pos },
                })
            }
            "triv" => {
                self.consume_ident(4);
                self.expect_char(b'(')?;
                let base = self.parse_expr()?;
                self.expect_char(b',')?;
                let module = self.parse_module()?;
                self.expect_char(b')')?;
                Ok(RingExpr::Triv {
                    base: Box::new(base),
                    module,
                    span: Span { start, end: self.pos },
                })
            }
            "amalg" => {
                self.consume_ident(5);
                self.expect_char(b'(')?;
                let a = self.parse_expr()?;
                self.expect_char(b',')?;
                let b = self.parse_expr()?;
                self.expect_char(b',')?;
                let hom = self.parse_hom()?;
                self.expect_char(b',')?;
                let ideal = self.parse_ideal()?;
                self.expect_char(b')')?;
                Ok(RingExpr::Amalg {
                    a: Box::new(a),
                    b: Box::new(b),
                    hom,
                    ideal,
                    span: Span { start, end: self.pos },
                })
            }
            "dup" => {
                self.consume_ident(3);
                self.expect_char(b'(')?;
                let base = self.parse_expr()?;
                self.expect_char(b',')?;
                let ideal = self.parse_ideal()?;
                self.expect_char(b')')?;
                Ok(RingExpr::Dup {
                    base: Box::new(base),
                    ideal,
                    span: Span { start, end: self.pos },
                })
            }
            _ => self.err(at, "a ring expression (Z/n, GF(p), triv, amalg, dup, or '(')"),
        }
    }

    fn parse_poly(&mut self) -> PResult<PolyAst> {
        let start = self.pos_token();
        let mut monomials = Vec::new();
        let mut sign: i64 = 1;
        if self.peek_token() == Some(b'-') {
            self.bump();
            sign = -1;
        }
        loop {
            monomials.push(self.parse_monomial(sign)?);
            match self.peek_token() {
                Some(b'+') => {
                    self.bump();
                    sign = 1;
                }
                Some(b'-') => {
                    self.bump();
                    sign = -1;
                }
                _ => break,
            }
        }
        let end = monomials.last().map(|m| m.span.end).unwrap_or(start);
        Ok(PolyAst {
            monomials,
            span: Span { start, end },
        })
    }

    fn parse_monomial(&mut self, sign: i64) -> PResult<Monomial> {
        self.skip_ws();
        let start = self.pos;
        let coeff;
        let mut saw_coeff = true;
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let mut vals = vec![self.parse_int()?];
                while self.peek_token() == Some(b',') {
                    self.bump();
                    vals.push(self.parse_int()?);
                }
                self.expect_char(b')')?;
                coeff = Coeff::Tuple(vals.into_iter().map(|v| v.wrapping_mul(sign)).collect());
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.parse_int()?;
                coeff = Coeff::Int(v.wrapping_mul(sign));
            }
            Some(b'x') => {
                coeff = Coeff::Int(sign);
                saw_coeff = false;
            }
            _ => return self.err(self.pos, "a monomial (coefficient, tuple, or 'x')"),
        }
        let mut power = 0u32;
        self.skip_ws();
        if self.peek() == Some(b'x') {
            self.bump();
            power = 1;
            self.skip_ws();
            if self.peek() == Some(b'^') {
                self.bump();
                let k = self.parse_nat()?;
                if k > u32::MAX as u64 {
                    return Err(ParseError {
                        offset: self.pos,
                        expected: "exponent within u32".to_string(),
                        found: "overflowing literal".to_string(),
                    });
                }
                power = k as u32;
            }
        } else if !saw_coeff {
            // unreachable: the 'x' branch above already saw it
            return self.err(self.pos, "'x'");
        }
        Ok(Monomial {
            coeff,
            power,
            span: Span { start, end: self.pos },
        })
    }

    fn parse_module(&mut self) -> PResult<ModuleSpec> {
        self.skip_ws();
        let start = self.pos;
        let (word, at) = self.peek_ident();
        match word.as_str() {
            "zero" => {
                self.consume_ident(4);
                Ok(ModuleSpec::Zero {
                    span: Span { start, end: self.pos },
                })
            }
            "free" => {
                self.consume_ident(4);
                self.expect_char(b':')?;
                let k = self.parse_nat()?;
                if k > u32::MAX as u64 {
                    return Err(ParseError {
                        offset: start,
                        expected: "rank within u32".to_string(),
                        found: "overflowing literal".to_string(),
                    });
                }
                Ok(ModuleSpec::Free {
                    k: k as u32,
                    span: Span { start, end: self.pos },
                })
            }
            "Z" => {
                self.consume_ident(1);
                self.expect_char(b'/')?;
                let m = self.parse_nat()?;
                self.expect_char(b':')?;
                let file = self.parse_file()?;
                Ok(ModuleSpec::Cyclic {
                    m,
                    file,
                    span: Span { start, end: self.pos },
                })
            }
            _ => self.err(at, "a module spec (zero, free:k, or Z/m:file)"),
        }
    }

    fn parse_hom(&mut self) -> PResult<HomSpec> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'@') {
            self.bump();
            let path = self.parse_file()?;
            return Ok(HomSpec::File {
                path,
                span: Span { start, end: self.pos },
            });
        }
        let (word, at) = self.peek_ident();
        match word.as_str() {
            "id" => {
                self.consume_ident(2);
                Ok(HomSpec::Id {
                    span: Span { start, end: self.pos },
                })
            }
            "scale0" => {
                self.consume_ident(6);
                self.expect_char(b':')?;
                let k = self.parse_int()?;
                Ok(HomSpec::Scale0 {
                    k,
                    span: Span { start, end: self.pos },
                })
            }
            _ => self.err(at, "a hom spec (id, scale0:k, or @file)"),
        }
    }

    fn parse_ideal(&mut self) -> PResult<IdealSpec> {
        self.skip_ws();
        let start = self.pos;
        self.expect_char(b'(')?;
        let mut generators = vec![self.parse_int()?];
        while self.peek_token() == Some(b',') {
            self.bump();
            generators.push(self.parse_int()?);
        }
        self.expect_char(b')')?;
        Ok(IdealSpec {
            generators,
            span: Span { start, end: self.pos },
        })
    }
}

/// Parses a complete ring expression; trailing garbage is an error.
pub fn parse_ring_expr(text: &str) -> PResult<RingExpr> {
    let mut p = Parser::new(text);
    let expr = p.parse_expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err(p.pos, "end of input");
    }
    Ok(expr)
}

/// Parses just a polynomial (the `factor` command takes one directly).
pub fn parse_poly_text(text: &str) -> PResult<PolyAst> {
    let mut p = Parser::new(text);
    let poly = p.parse_poly()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err(p.pos, "end of input");
    }
    Ok(poly)
}

fn x_part(power: u32) -> String {
    match power {
        0 => String::new(),
        1 => "x".to_string(),
        k => format!("x^{k}"),
    }
}

impl fmt::Display for PolyAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.monomials.iter().enumerate() {
            match &m.coeff {
                Coeff::Int(c) => {
                    let neg = *c < 0;
                    if i == 0 {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else if neg {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    let mag = c.unsigned_abs();
                    if m.power == 0 {
                        write!(f, "{mag}")?;
                    } else if mag == 1 {
                        write!(f, "{}", x_part(m.power))?;
                    } else {
                        write!(f, "{mag}{}", x_part(m.power))?;
                    }
                }
                Coeff::Tuple(vals) => {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    let inner: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
                    write!(f, "({}){}", inner.join(","), x_part(m.power))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Zero { .. } => write!(f, "zero"),
            ModuleSpec::Free { k, .. } => write!(f, "free:{k}"),
            ModuleSpec::Cyclic { m, file, .. } => write!(f, "Z/{m}:{file}"),
        }
    }
}

impl fmt::Display for HomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomSpec::Id { .. } => write!(f, "id"),
            HomSpec::Scale0 { k, .. } => write!(f, "scale0:{k}"),
            HomSpec::File { path, .. } => write!(f, "@{path}"),
        }
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod { n, .. } => write!(f, "Z/{n}"),
            RingExpr::GF { p, .. } => write!(f, "GF({p})"),
            RingExpr::Quotient { base, poly, .. } => {
                // a product base must be re-parenthesized to stay a term
                if matches!(**base, RingExpr::Product { .. }) {
                    write!(f, "({base})[x]/({poly})")
                } else {
                    write!(f, "{base}[x]/({poly})")
                }
            }
            RingExpr::Product { factors, .. } => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    if matches!(factor, RingExpr::Product { .. }) {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
            RingExpr::Triv { base, module, .. } => write!(f, "triv({base}, {module})"),
            RingExpr::Amalg { a, b, hom, ideal, .. } => {
                write!(f, "amalg({a}, {b}, {hom}, {ideal})")
            }
            RingExpr::Dup { base, ideal, .. } => write!(f, "dup({base}, {ideal})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RingExpr {
        parse_ring_expr(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert!(matches!(parse("Z/60"), RingExpr::Zmod { n: 60, .. }));

        let q = parse("GF(2)[x]/(x^2+x+1)");
        match &q {
            RingExpr::Quotient { base, poly, .. } => {
                assert!(matches!(**base, RingExpr::GF { p: 2, .. }));
                let powers: Vec<u32> = poly.monomials.iter().map(|m| m.power).collect();
                assert_eq!(powers, vec![2, 1, 0]);
                assert!(poly.monomials.iter().all(|m| m.coeff == Coeff::Int(1)));
            }
            _ => panic!("not a quotient"),
        }

        let a = parse("amalg(GF(2)*GF(2), Z/6, scale0:3, (3))");
        match &a {
            RingExpr::Amalg { a, b, hom, ideal, .. } => {
                assert!(matches!(**a, RingExpr::Product { .. }));
                assert!(matches!(**b, RingExpr::Zmod { n: 6, .. }));
                assert_eq!(*hom, HomSpec::Scale0 { k: 3, span: Span { start: 0, end: 0 } });
                assert_eq!(ideal.generators, vec![3]);
            }
            _ => panic!("not an amalg"),
        }
    }

    #[test]
    fn postfix_binds_tighter_than_product() {
        let e = parse("GF(2)*GF(2)[x]/(x^2+x)");
        match &e {
            RingExpr::Product { factors, .. } => {
                assert_eq!(factors.len(), 2);
                assert!(matches!(factors[0], RingExpr::GF { p: 2, .. }));
                assert!(matches!(factors[1], RingExpr::Quotient { .. }));
            }
            _ => panic!("expected product"),
        }

        let grouped = parse("(GF(2)*GF(2))[x]/((1,1)x^2+(1,1)x)");
        match &grouped {
            RingExpr::Quotient { base, poly, .. } => {
                assert!(matches!(**base, RingExpr::Product { .. }));
                assert_eq!(poly.monomials[0].coeff, Coeff::Tuple(vec![1, 1]));
            }
            _ => panic!("expected quotient of product"),
        }
    }

    #[test]
    fn tuple_coefficients_and_collisions_survive_parsing() {
        let e = parse("(GF(17)*GF(17)*GF(17)*GF(17))[x]/((1,-1,2,-2)+(0,0,1,1)x^2+(1,1,0,0)x^2)");
        match &e {
            RingExpr::Quotient { poly, .. } => {
                assert_eq!(poly.monomials.len(), 3);
                assert_eq!(poly.monomials[0].coeff, Coeff::Tuple(vec![1, -1, 2, -2]));
                assert_eq!(poly.monomials[0].power, 0);
                assert_eq!(poly.monomials[1].power, 2);
                assert_eq!(poly.monomials[2].power, 2);
            }
            _ => panic!("expected quotient"),
        }
    }

    #[test]
    fn negative_and_bare_monomials() {
        let p = parse_poly_text("x^2-x").unwrap();
        assert_eq!(p.monomials[0].coeff, Coeff::Int(1));
        assert_eq!(p.monomials[1].coeff, Coeff::Int(-1));
        assert_eq!(p.monomials[1].power, 1);

        let q = parse_poly_text("-3x^4 + 2 - x").unwrap();
        assert_eq!(q.monomials[0].coeff, Coeff::Int(-3));
        assert_eq!(q.monomials[1].coeff, Coeff::Int(2));
        assert_eq!(q.monomials[1].power, 0);
        assert_eq!(q.monomials[2].coeff, Coeff::Int(-1));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse("triv( Z/6 , free: 2 )");
        let b = parse("triv(Z/6,free:2)");
        assert_eq!(a, b);

        let c = parse(" GF( 2 ) [x] / ( x^2 + x ) ");
        let d = parse("GF(2)[x]/(x^2+x)");
        assert_eq!(c, d);
    }

    #[test]
    fn module_hom_and_file_forms() {
        let t = parse("triv(Z/4, Z/2:tables/act.txt)");
        match &t {
            RingExpr::Triv { module, .. } => {
                assert_eq!(
                    *module,
                    ModuleSpec::Cyclic {
                        m: 2,
                        file: "tables/act.txt".to_string(),
                        span: Span { start: 0, end: 0 }
                    }
                );
            }
            _ => panic!(),
        }

        let a = parse("amalg(Z/4, Z/4, @homs/square.txt, (2))");
        match &a {
            RingExpr::Amalg { hom, .. } => {
                assert_eq!(
                    *hom,
                    HomSpec::File {
                        path: "homs/square.txt".to_string(),
                        span: Span { start: 0, end: 0 }
                    }
                );
            }
            _ => panic!(),
        }

        let d = parse("dup(GF(2)*GF(2), (1))");
        assert!(matches!(d, RingExpr::Dup { .. }));
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_ring_expr("Z/").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.expected.contains("number"));

        let e = parse_ring_expr("GF(2").unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(e.expected, "')'");
        assert_eq!(e.found, "end of input");

        let e = parse_ring_expr("Z/6 junk").unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(e.expected, "end of input");

        let e = parse_ring_expr("amalg(Z/4, Z/4, id)").unwrap_err();
        assert_eq!(e.offset, 18);
        assert_eq!(e.expected, "','");

        let e = parse_ring_expr("frob(2)").unwrap_err();
        assert_eq!(e.offset, 0);
    }

    #[test]
    fn print_reparse_round_trip() {
        let corpus = [
            "Z/60",
            "GF(7)",
            "GF(2)[x]/(x^2+x+1)",
            "Z/5[x]/(x^2 - 2)",
            "GF(2)*GF(3)*Z/4",
            "(GF(2)*GF(2))[x]/((1,1)x^2+(0,1)x+(1,0))",
            "triv(GF(2), zero)",
            "triv(Z/6, free:2)",
            "triv(Z/4, Z/2:act.txt)",
            "amalg(GF(2)*GF(2), Z/6, scale0:3, (3))",
            "amalg(Z/4, Z/4, id, (2))",
            "amalg(Z/6, Z/6, @hom.txt, (0))",
            "dup(GF(2)*GF(2), (1))",
            "dup(Z/4, (2))",
            "GF(2)[x]/(x^3+x)[x]/(x^2+x)",
            "(Z/2*Z/2)*GF(3)",
            "GF(2)[x]/(-x^2+x)",
            "triv(GF(3), free:1)*Z/9",
        ];
        for src in corpus {
            let ast = parse(src);
            let printed = ast.to_string();
            let reparsed = parse_ring_expr(&printed)
                .unwrap_or_else(|e| panic!("reparse of {printed:?} failed: {e}"));
            assert_eq!(ast, reparsed, "round trip failed for {src:?} -> {printed:?}");
        }
    }

    #[test]
    fn nested_product_grouping_is_preserved() {
        let flat = parse("GF(2)*GF(2)*GF(2)");
        let nested = parse("(GF(2)*GF(2))*GF(2)");
        assert_ne!(flat, nested);
        let printed = nested.to_string();
        assert_eq!(printed, "(GF(2)*GF(2))*GF(2)");
        assert_eq!(parse(&printed), nested);
    }
}
