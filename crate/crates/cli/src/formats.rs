//! Text formats: ordinal literals, scheme files and grammar files.

use algord_core::grammar::{Grammar, GrammarBuilder};
use algord_core::scheme::{is_identifier, is_symbol_name, Equation, RankedAlphabet, RecursionScheme, Term};
use algord_core::{Error as CoreError, OrderedAlphabet, Ordinal};

use crate::error::CliError;

fn syntax(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { line, message: msg.into() }
}

/// Strips a `#` comment and surrounding whitespace.
fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

// ---------------------------------------------------------------------------
// ordinals

/// Parses `w^(w*2+1)*3 + w^2 + 5`-style literals (`ω` is accepted for
/// `w`). Sums, products and powers are evaluated in Cantor normal form;
/// a power needs base `w`, a finite exponent, or exponent `w`.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, CliError> {
    let tokens: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if tokens.is_empty() {
        return Err(syntax(1, "empty ordinal literal"));
    }
    let mut p = OrdinalParser { tokens, pos: 0 };
    let value = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(syntax(1, format!("unexpected `{}` in ordinal literal", p.tokens[p.pos])));
    }
    Ok(value)
}

struct OrdinalParser {
    tokens: Vec<char>,
    pos: usize,
}

impl OrdinalParser {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Ordinal, CliError> {
        let mut acc = self.product()?;
        while self.eat('+') {
            acc = acc.add(&self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Ordinal, CliError> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Ordinal, CliError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let exp = self.power()?;
        Ok(ordinal_pow(&base, &exp))
    }

    fn atom(&mut self) -> Result<Ordinal, CliError> {
        match self.peek() {
            Some('w' | 'ω') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(')') {
                    return Err(syntax(1, "missing `)` in ordinal literal"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.tokens[start..self.pos].iter().collect();
                digits.parse::<u64>().map(Ordinal::finite).map_err(|_| syntax(1, format!("number `{digits}` too large")))
            }
            Some(c) => Err(syntax(1, format!("unexpected `{c}` in ordinal literal"))),
            None => Err(syntax(1, "ordinal literal ends early")),
        }
    }
}

/// Ordinal exponentiation `a^b`. Splits `b = ω·δ + n`; for infinite `a`
/// with leading exponent `e`, `a^(ω·δ) = ω^(e·ω·δ)`, and for finite
/// `a ≥ 2`, `a^(ω·δ) = ω^δ`.
pub fn ordinal_pow(a: &Ordinal, b: &Ordinal) -> Ordinal {
    if b.is_zero() {
        return Ordinal::one();
    }
    if a.is_zero() || *a == Ordinal::one() {
        return a.clone();
    }
    let n = b.finite_part();
    let limit: Vec<(Ordinal, u64)> = b.terms().iter().filter(|(e, _)| !e.is_zero()).cloned().collect();
    let tail = a.pow_finite(n);
    if limit.is_empty() {
        return tail;
    }
    let gamma = Ordinal::from_terms(limit.clone()).expect("a tail of a normal form is normal");
    let head = match a.leading_exponent() {
        Some(e) if !e.is_zero() => Ordinal::omega_power(e.mul(&gamma)),
        _ => {
            // δ with ω·δ = γ: drop one from each finite exponent
            let delta = limit
                .into_iter()
                .map(|(e, c)| match e.as_finite() {
                    Some(k) => (Ordinal::finite(k - 1), c),
                    None => (e, c),
                })
                .collect();
            Ordinal::omega_power(Ordinal::from_terms(delta).expect("exponents stay decreasing"))
        }
    };
    head.mul(&tail)
}

// ---------------------------------------------------------------------------
// schemes

/// A term before names are resolved.
#[derive(Debug)]
struct RawTerm {
    head: String,
    args: Vec<RawTerm>,
}

struct TermLexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl TermLexer {
    fn new(src: &str, line: usize) -> Self {
        TermLexer { chars: src.chars().collect(), pos: 0, line }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn name(&mut self) -> Result<String, CliError> {
        let Some(first) = self.peek() else {
            return Err(syntax(self.line, "expected a name"));
        };
        let start = self.pos;
        if first.is_alphanumeric() || first == '_' {
            while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '\'') {
                self.pos += 1;
            }
        } else if "(),=".contains(first) {
            return Err(syntax(self.line, format!("unexpected `{first}`")));
        } else {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn term(&mut self) -> Result<RawTerm, CliError> {
        let head = self.name()?;
        let mut args = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            if self.peek() == Some(')') {
                return Err(syntax(self.line, format!("`{head}()` has an empty argument list")));
            }
            loop {
                args.push(self.term()?);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(syntax(self.line, "expected `,` or `)`")),
                }
            }
        }
        Ok(RawTerm { head, args })
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn parse_alphabet(decl: &str, line: usize) -> Result<RankedAlphabet, CliError> {
    let mut entries = Vec::new();
    for item in decl.split(',') {
        let item = item.trim();
        let (name, arity) = item.rsplit_once('/').ok_or_else(|| syntax(line, format!("`{item}` is not sym/arity")))?;
        let arity: usize = arity.trim().parse().map_err(|_| syntax(line, format!("bad arity in `{item}`")))?;
        entries.push((name.trim().to_string(), arity));
    }
    Ok(RankedAlphabet::new(entries)?)
}

/// Parses the scheme file format: an optional `alphabet: sym/arity, …`
/// header (default Δ = `+/2, 1/0`), then `Name = term` or
/// `Name(x0, …) = term` lines. Parameters may be named freely in the
/// left-hand side; they are numbered by position.
pub fn parse_scheme(text: &str) -> Result<RecursionScheme, CliError> {
    let mut alphabet: Option<RankedAlphabet> = None;
    let mut heads: Vec<(usize, String, Vec<String>, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = content(raw);
        if l.is_empty() {
            continue;
        }
        if let Some(decl) = l.strip_prefix("alphabet:") {
            if alphabet.is_some() || !heads.is_empty() {
                return Err(syntax(line, "the alphabet header must come first and only once"));
            }
            alphabet = Some(parse_alphabet(decl, line)?);
            continue;
        }
        let (lhs, rhs) = l.split_once('=').ok_or_else(|| syntax(line, "expected `Name = term`"))?;
        let mut lex = TermLexer::new(lhs, line);
        let lhs_term = lex.term()?;
        if !lex.at_end() {
            return Err(syntax(line, "unexpected text before `=`"));
        }
        if !is_identifier(&lhs_term.head) {
            return Err(CoreError::InvalidSymbolName(lhs_term.head).into());
        }
        let mut params = Vec::new();
        for a in lhs_term.args {
            if !a.args.is_empty() || !is_identifier(&a.head) || params.contains(&a.head) {
                return Err(syntax(line, format!("bad parameter `{}`", a.head)));
            }
            params.push(a.head);
        }
        heads.push((line, lhs_term.head, params, rhs));
    }
    if heads.is_empty() {
        return Err(CoreError::EmptyScheme.into());
    }
    let alphabet = alphabet.unwrap_or_else(RankedAlphabet::delta);
    let funcs: Vec<(&str, usize)> = heads.iter().map(|(_, n, p, _)| (n.as_str(), p.len())).collect();
    let mut equations = Vec::with_capacity(heads.len());
    for (line, name, params, rhs) in &heads {
        let mut lex = TermLexer::new(rhs, *line);
        let raw = lex.term()?;
        if !lex.at_end() {
            return Err(syntax(*line, "unexpected text after the term"));
        }
        let body = resolve(&raw, params, &funcs, &alphabet)?;
        equations.push(Equation::new(name, params.len(), body));
    }
    Ok(RecursionScheme::new(alphabet, equations)?)
}

/// Function variables shadow symbols, parameters shadow both.
fn resolve(t: &RawTerm, params: &[String], funcs: &[(&str, usize)], alphabet: &RankedAlphabet) -> Result<Term, CliError> {
    if let Some(j) = params.iter().position(|p| *p == t.head) {
        if !t.args.is_empty() {
            return Err(CoreError::ArityMismatch { name: t.head.clone(), expected: 0, found: t.args.len() }.into());
        }
        return Ok(Term::Param(j));
    }
    let (expected, call) = if let Some(f) = funcs.iter().position(|(n, _)| *n == t.head) {
        (funcs[f].1, Some(f))
    } else if let Some(a) = alphabet.arity(&t.head) {
        (a, None)
    } else if is_symbol_name(&t.head) {
        return Err(CoreError::UnknownSymbol(t.head.clone()).into());
    } else {
        return Err(CoreError::InvalidSymbolName(t.head.clone()).into());
    };
    if expected != t.args.len() {
        return Err(CoreError::ArityMismatch { name: t.head.clone(), expected, found: t.args.len() }.into());
    }
    let args = t.args.iter().map(|a| resolve(a, params, funcs, alphabet)).collect::<Result<Vec<_>, _>>()?;
    Ok(match call {
        Some(f) => Term::call(f, args),
        None => Term::sym(&t.head, args),
    })
}

// ---------------------------------------------------------------------------
// grammars

/// Parses the grammar file format: a `terminals: a < b < …` header, an
/// optional `start: Name` (default: the first rule), then `Name -> alt |
/// alt` lines with space-separated tokens. `ε` or an empty alternative is
/// the empty right-hand side; `Name ->` alone declares a nonterminal
/// without productions. A nonterminal may span several lines.
pub fn parse_grammar(text: &str) -> Result<Grammar, CliError> {
    let mut terminals: Option<OrderedAlphabet> = None;
    let mut start: Option<String> = None;
    let mut rules: Vec<(usize, String, Vec<Vec<String>>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = content(raw);
        if l.is_empty() {
            continue;
        }
        if let Some(decl) = l.strip_prefix("terminals:") {
            if terminals.is_some() {
                return Err(syntax(line, "duplicate terminals header"));
            }
            let symbols: Vec<&str> = decl.split('<').map(str::trim).collect();
            if symbols.iter().any(|s| s.is_empty()) {
                return Err(syntax(line, "empty terminal in the order"));
            }
            terminals = Some(OrderedAlphabet::new(symbols)?);
            continue;
        }
        if let Some(name) = l.strip_prefix("start:") {
            if start.is_some() {
                return Err(syntax(line, "duplicate start header"));
            }
            start = Some(name.trim().to_string());
            continue;
        }
        let (lhs, rhs) = l.split_once("->").ok_or_else(|| syntax(line, "expected `Name -> alternatives`"))?;
        let lhs = lhs.trim();
        if lhs.is_empty() || lhs.contains(char::is_whitespace) {
            return Err(syntax(line, format!("bad left-hand side `{lhs}`")));
        }
        let alts: Vec<Vec<String>> = if rhs.trim().is_empty() {
            Vec::new()
        } else {
            rhs.split('|')
                .map(|alt| alt.split_whitespace().filter(|t| *t != "ε").map(String::from).collect())
                .collect()
        };
        rules.push((line, lhs.to_string(), alts));
    }
    let terminals = terminals.ok_or_else(|| syntax(1, "missing `terminals:` header"))?;
    let mut b = GrammarBuilder::new(terminals.clone());
    if let Some(s) = &start {
        b = b.start(s);
    }
    for (line, lhs, _) in &rules {
        if terminals.letter(lhs).is_ok() {
            return Err(syntax(*line, format!("`{lhs}` is a terminal")));
        }
        b.declare(lhs);
    }
    for (_, lhs, alts) in &rules {
        for alt in alts {
            let toks: Vec<&str> = alt.iter().map(String::as_str).collect();
            b = b.rule(lhs, &toks);
        }
    }
    if rules.is_empty() && start.is_none() {
        return Err(syntax(1, "grammar has no rules"));
    }
    Ok(b.build()?)
}
