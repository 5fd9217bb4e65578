//! Context-free grammars over ordered terminal alphabets.
//!
//! Besides the data type this module hosts normalization, bounded
//! lexicographic enumeration, the lexicographic interval and reversal
//! constructions, and the scattered-grammar analysis in [`analysis`].

pub mod analysis;
mod decompose;
mod enumerate;
mod interval;
mod normalize;

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::words::{Letter, OrderedAlphabet};

pub use decompose::{decompose_lr, decompose_with_root, BucketKind, Decomposition, DecompositionBucket};
pub use enumerate::{enumerate_all, enumerate_words};
pub use interval::{intersect_lex_interval, reverse_order, Bound};
pub use normalize::{inline_singletons, normalize, NormalizeReport};

/// A right-hand-side symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    T(Letter),
    N(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<Sym>,
}

impl Production {
    pub fn new(lhs: usize, rhs: Vec<Sym>) -> Self {
        Production { lhs, rhs }
    }

    pub fn is_epsilon(&self) -> bool {
        self.rhs.is_empty()
    }

    /// A production `X -> Y`.
    pub fn unit_target(&self) -> Option<usize> {
        match self.rhs.as_slice() {
            [Sym::N(y)] => Some(*y),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grammar {
    terminals: OrderedAlphabet,
    nonterminals: Vec<String>,
    productions: Vec<Production>,
    start: usize,
}

impl Grammar {
    pub fn new(
        terminals: OrderedAlphabet,
        nonterminals: Vec<String>,
        productions: Vec<Production>,
        start: usize,
    ) -> Result<Self> {
        for (i, n) in nonterminals.iter().enumerate() {
            if !is_nonterminal_name(n) {
                return Err(Error::InvalidSymbolName(n.clone()));
            }
            if nonterminals[..i].contains(n) || terminals.letter(n).is_ok() {
                return Err(Error::DuplicateSymbol(n.clone()));
            }
        }
        if start >= nonterminals.len() {
            return Err(Error::UnknownNonterminal(start));
        }
        for p in &productions {
            if p.lhs >= nonterminals.len() {
                return Err(Error::UnknownNonterminal(p.lhs));
            }
            for s in &p.rhs {
                match *s {
                    Sym::N(y) if y >= nonterminals.len() => return Err(Error::UnknownNonterminal(y)),
                    Sym::T(a) if !terminals.contains(a) => {
                        return Err(Error::LetterOutOfRange { letter: a.index() as u16, size: terminals.len() })
                    }
                    _ => {}
                }
            }
        }
        Ok(Grammar { terminals, nonterminals, productions, start })
    }

    /// The canonical grammar of the empty language: just the start symbol.
    pub fn empty(terminals: OrderedAlphabet, start: &str) -> Self {
        Grammar { terminals, nonterminals: alloc::vec![start.to_owned()], productions: Vec::new(), start: 0 }
    }

    pub fn terminals(&self) -> &OrderedAlphabet {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn nonterminal_count(&self) -> usize {
        self.nonterminals.len()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.nonterminals[x]
    }

    pub fn nonterminal(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn productions_of(&self, x: usize) -> impl Iterator<Item = &Production> {
        self.productions.iter().filter(move |p| p.lhs == x)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_epsilon_free(&self) -> bool {
        self.productions.iter().all(|p| !p.is_epsilon())
    }

    /// `ε`-free, chain-free, with no useless nonterminal (or the canonical
    /// empty grammar).
    pub fn is_normalized(&self) -> bool {
        normalize(self).0 == *self
    }

    /// The same grammar with production `i` removed.
    pub fn without_production(&self, i: usize) -> Grammar {
        let mut g = self.clone();
        g.productions.remove(i);
        g
    }

    /// The same productions with terminals mapped by `f` into `terminals`.
    pub fn map_terminals(&self, terminals: OrderedAlphabet, f: impl Fn(Letter) -> Letter) -> Result<Grammar> {
        let productions = self
            .productions
            .iter()
            .map(|p| Production {
                lhs: p.lhs,
                rhs: p.rhs.iter().map(|s| match *s {
                    Sym::T(a) => Sym::T(f(a)),
                    n => n,
                }).collect(),
            })
            .collect();
        Grammar::new(terminals, self.nonterminals.clone(), productions, self.start)
    }

    /// Longest right-hand side.
    pub fn max_rhs_len(&self) -> usize {
        self.productions.iter().map(|p| p.rhs.len()).max().unwrap_or(0)
    }

    /// Direct successors in the occurs-in-right-hand-side digraph.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = alloc::vec![Vec::new(); self.nonterminals.len()];
        for p in &self.productions {
            for s in &p.rhs {
                if let Sym::N(y) = *s {
                    if !succ[p.lhs].contains(&y) {
                        succ[p.lhs].push(y);
                    }
                }
            }
        }
        succ
    }

    pub fn render_symbol(&self, s: Sym) -> &str {
        match s {
            Sym::T(a) => self.terminals.symbol(a),
            Sym::N(x) => &self.nonterminals[x],
        }
    }

    pub fn render_rhs(&self, rhs: &[Sym]) -> String {
        if rhs.is_empty() {
            return "ε".to_owned();
        }
        let parts: Vec<&str> = rhs.iter().map(|s| self.render_symbol(*s)).collect();
        parts.join(" ")
    }

    pub fn render_production(&self, p: &Production) -> String {
        alloc::format!("{} -> {}", self.nonterminals[p.lhs], self.render_rhs(&p.rhs))
    }
}

/// Nonterminal names are whitespace-free, nonempty, and none of `->`, `|`,
/// `ε`.
pub fn is_nonterminal_name(name: &str) -> bool {
    !name.is_empty()
        && !name.chars().any(char::is_whitespace)
        && !matches!(name, "->" | "|" | "ε")
        && !name.contains('#')
}

/// The grammar file format: `terminals:` and `start:` headers, then one
/// `Name -> alt | alt` line per nonterminal in declaration order. A
/// nonterminal without productions is written `Name ->`.
impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "terminals: {}", self.terminals.symbols().join(" < "))?;
        writeln!(f, "start: {}", self.nonterminals[self.start])?;
        for (x, name) in self.nonterminals.iter().enumerate() {
            let alts: Vec<String> = self.productions_of(x).map(|p| self.render_rhs(&p.rhs)).collect();
            if alts.is_empty() {
                writeln!(f, "{name} ->")?;
            } else {
                writeln!(f, "{name} -> {}", alts.join(" | "))?;
            }
        }
        Ok(())
    }
}

/// Builds a grammar from named rules; terminals are looked up in the
/// alphabet, every other token must be a nonterminal with rules or the
/// start symbol.
#[derive(Debug, Clone)]
pub struct GrammarBuilder {
    terminals: OrderedAlphabet,
    nonterminals: Vec<String>,
    rules: Vec<(usize, Vec<String>)>,
    start: Option<String>,
}

impl GrammarBuilder {
    pub fn new(terminals: OrderedAlphabet) -> Self {
        GrammarBuilder { terminals, nonterminals: Vec::new(), rules: Vec::new(), start: None }
    }

    pub fn start(mut self, name: &str) -> Self {
        self.start = Some(name.to_owned());
        self.declare(name);
        self
    }

    pub fn declare(&mut self, name: &str) -> usize {
        match self.nonterminals.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.nonterminals.push(name.to_owned());
                self.nonterminals.len() - 1
            }
        }
    }

    /// `rhs` is a list of tokens; an empty list is an ε-production.
    pub fn rule(mut self, lhs: &str, rhs: &[&str]) -> Self {
        let x = self.declare(lhs);
        self.rules.push((x, rhs.iter().map(|s| (*s).to_owned()).collect()));
        self
    }

    /// `"X -> 0 | 1 X"` style shorthand, one rule line at a time.
    pub fn line(mut self, text: &str) -> Self {
        let (lhs, rhs) = text.split_once("->").expect("rule line contains ->");
        let lhs = lhs.trim();
        self.declare(lhs);
        for alt in rhs.split('|') {
            let toks: Vec<&str> = alt.split_whitespace().filter(|t| *t != "ε").collect();
            self = self.rule(lhs, &toks);
        }
        self
    }

    pub fn build(self) -> Result<Grammar> {
        let start_name = match &self.start {
            Some(s) => s.clone(),
            None => self.nonterminals.first().cloned().ok_or(Error::EmptyScheme)?,
        };
        let mut productions = Vec::with_capacity(self.rules.len());
        for (lhs, toks) in &self.rules {
            let mut rhs = Vec::with_capacity(toks.len());
            for t in toks {
                let sym = if let Some(x) = self.nonterminals.iter().position(|n| n == t) {
                    Sym::N(x)
                } else {
                    Sym::T(self.terminals.letter(t).map_err(|_| Error::UnknownSymbol(t.clone()))?)
                };
                rhs.push(sym);
            }
            productions.push(Production { lhs: *lhs, rhs });
        }
        let start = self.nonterminals.iter().position(|n| *n == start_name).expect("start is declared");
        Grammar::new(self.terminals, self.nonterminals, productions, start)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::string::ToString;

    pub(crate) fn binary(lines: &[&str]) -> Grammar {
        lines.iter().fold(GrammarBuilder::new(OrderedAlphabet::binary()), |b, l| b.line(l)).build().unwrap()
    }

    pub(crate) fn omega_frontier() -> Grammar {
        binary(&["X -> 0 | 1 X"])
    }

    pub(crate) fn rationals() -> Grammar {
        binary(&["S -> 0 1 | 0 S | 1 1 S"])
    }

    pub(crate) fn xy() -> Grammar {
        binary(&["X -> 0 | 1 X Y", "Y -> 0 | 1 Y"])
    }

    #[test]
    fn builds_and_renders() {
        let g = xy();
        assert_eq!(g.nonterminal_count(), 2);
        assert_eq!(g.productions().len(), 4);
        assert_eq!(g.to_string(), "terminals: 0 < 1\nstart: X\nX -> 0 | 1 X Y\nY -> 0 | 1 Y\n");
        assert_eq!(rationals().productions().len(), 3);
    }

    #[test]
    fn undeclared_token() {
        let r = GrammarBuilder::new(OrderedAlphabet::binary()).line("S -> T").build();
        assert_eq!(r, Err(Error::UnknownSymbol("T".into())));
    }
}
