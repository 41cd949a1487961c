//! Text grammar for rings and ideals:
//!
//! ```text
//! ring <field>[<vars>]/(<poly>, <poly>, ...)
//! ideal (<poly>, <poly>, ...)
//! ```
//!
//! with `<field>` one of `QQ` or `F<p>`, and `<vars>` either a range
//! `x1..xn` or a comma-separated list of names (mapped positionally onto
//! x1..xn internally).

use std::fmt;

/// Error with 1-based line/column position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrammarError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for GrammarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for GrammarError {}

pub fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, c) in text.char_indices() {
        if i >= pos {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub names: Vec<String>,
    pub gen_texts: Vec<String>,
    pub source: String,
}

struct Scan<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scan<'a> {
    fn err(&self, message: impl Into<String>) -> GrammarError {
        let (line, col) = line_col(self.text, self.pos);
        GrammarError {
            line,
            col,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), GrammarError> {
        self.skip_ws();
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{token}`")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let rest = &self.text[self.pos..];
        let end = rest
            .char_indices()
            .take_while(|(i, c)| {
                if *i == 0 {
                    c.is_ascii_alphabetic() || *c == '_'
                } else {
                    c.is_ascii_alphanumeric() || *c == '_'
                }
            })
            .map(|(i, c)| i + c.len_utf8())
            .last()?;
        let s = &rest[..end];
        self.pos += end;
        Some(s)
    }

    fn number(&mut self) -> Result<u64, GrammarError> {
        let rest = &self.text[self.pos..];
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.err("expected a number"));
        }
        let v = rest[..end]
            .parse::<u64>()
            .map_err(|_| self.err("number too large"))?;
        self.pos += end;
        Ok(v)
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec, GrammarError> {
    let mut s = Scan { text, pos: 0 };
    s.expect("ring")?;
    s.skip_ws();
    let field = parse_field(&mut s)?;
    s.expect("[")?;
    let names = parse_vars(&mut s)?;
    s.expect("]")?;
    s.expect("/")?;
    s.expect("(")?;
    let gen_texts = split_list(&mut s)?;
    s.skip_ws();
    if s.pos != text.len() {
        return Err(s.err("unexpected trailing input"));
    }
    Ok(RingSpec {
        field,
        names,
        gen_texts,
        source: text.trim().to_string(),
    })
}

pub fn parse_ideal_spec(text: &str) -> Result<Vec<String>, GrammarError> {
    let mut s = Scan { text, pos: 0 };
    s.expect("ideal")?;
    s.expect("(")?;
    let gens = split_list(&mut s)?;
    s.skip_ws();
    if s.pos != text.len() {
        return Err(s.err("unexpected trailing input"));
    }
    Ok(gens)
}

fn parse_field(s: &mut Scan<'_>) -> Result<FieldSpec, GrammarError> {
    s.skip_ws();
    if s.eat("QQ") {
        return Ok(FieldSpec::Rational);
    }
    if s.eat("F") {
        let p = s.number()?;
        if p == 2 {
            return Err(s.err(
                "characteristic 2 is unsupported (Hessian and center computations need 1/2)",
            ));
        }
        return Ok(FieldSpec::Prime(p));
    }
    Err(s.err("expected a field: QQ or F<p>"))
}

fn parse_vars(s: &mut Scan<'_>) -> Result<Vec<String>, GrammarError> {
    s.skip_ws();
    let Some(first) = s.ident() else {
        return Err(s.err("expected a variable name"));
    };
    s.skip_ws();
    if s.eat("..") {
        s.skip_ws();
        let Some(last) = s.ident() else {
            return Err(s.err("expected the end of the variable range"));
        };
        return expand_range(s, first, last);
    }
    let mut names = vec![first.to_string()];
    loop {
        s.skip_ws();
        if !s.eat(",") {
            break;
        }
        s.skip_ws();
        let Some(name) = s.ident() else {
            return Err(s.err("expected a variable name after `,`"));
        };
        names.push(name.to_string());
    }
    if names
        .iter()
        .collect::<std::collections::BTreeSet<_>>()
        .len()
        != names.len()
    {
        return Err(s.err("duplicate variable names"));
    }
    Ok(names)
}

fn expand_range(s: &Scan<'_>, first: &str, last: &str) -> Result<Vec<String>, GrammarError> {
    let split = |name: &str| -> Option<(String, u64)> {
        let at = name.find(|c: char| c.is_ascii_digit())?;
        let (prefix, digits) = name.split_at(at);
        Some((prefix.to_string(), digits.parse().ok()?))
    };
    let (p1, a) = split(first).ok_or_else(|| s.err("range endpoints must end in a number"))?;
    let (p2, b) = split(last).ok_or_else(|| s.err("range endpoints must end in a number"))?;
    if p1 != p2 || a > b {
        return Err(s.err("malformed variable range"));
    }
    Ok((a..=b).map(|i| format!("{p1}{i}")).collect())
}

fn split_list(s: &mut Scan<'_>) -> Result<Vec<String>, GrammarError> {
    // entries may not contain parentheses; split at commas until `)`
    let start = s.pos;
    let rest = &s.text[start..];
    let Some(close) = rest.find(')') else {
        return Err(s.err("unterminated `(`"));
    };
    let body = &rest[..close];
    s.pos = start + close + 1;
    let items: Vec<String> = body
        .split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect();
    if items.is_empty() {
        return Err(s.err("empty generator list"));
    }
    Ok(items)
}
