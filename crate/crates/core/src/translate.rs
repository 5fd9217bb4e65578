//! From a recursion scheme to a prefix grammar for the labeled frontier
//! language of its least solution.
//!
//! Every equation `F_i(x_0, …, x_{k-1}) = t_i` contributes the nonterminals
//! `F_i` and `(F_i, j)` for `j < k`. For each position `u` of `t_i` the
//! history `û` spells the path to `u`: a symbol `σ` taken in direction `d`
//! gives the terminal `(σ, d)`, a call to `F_k` gives the nonterminal
//! `(F_k, d)`. Then
//!
//! * `t_i(u) = x_j` gives `(F_i, j) -> û`,
//! * a leaf symbol `a` gives `F_i -> û a`,
//! * a call to `F_k` gives `F_i -> û F_k`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grammar::{enumerate_words, normalize, Grammar, Production, Sym};
use crate::scheme::{unfold, BranchAlphabet, BranchKind, Node, RecursionScheme, Term};
use crate::words::{Letter, OrderedAlphabet, Word};

/// A translated grammar together with the branch alphabet naming its
/// terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub grammar: Grammar,
    pub branch: BranchAlphabet,
}

impl Translation {
    pub fn frontier(&self) -> Result<Grammar> {
        frontier_grammar(&self.grammar, &self.branch)
    }
}

/// Name of the nonterminal `(F, j)`.
pub fn parameter_nonterminal(func: &str, j: usize) -> String {
    format!("({func},{j})")
}

/// Nonterminal index of `F_i` and of `(F_i, j)`: each equation's family is
/// contiguous, `F_i` first.
fn layout(s: &RecursionScheme) -> (Vec<String>, Vec<usize>) {
    let mut names = Vec::new();
    let mut base = Vec::new();
    for eq in s.equations() {
        base.push(names.len());
        names.push(eq.name.clone());
        names.extend((0..eq.arity).map(|j| parameter_nonterminal(&eq.name, j)));
    }
    (names, base)
}

pub fn scheme_to_prefix_grammar(s: &RecursionScheme) -> Translation {
    let branch = BranchAlphabet::new(s.alphabet(), BranchKind::Lfr);
    let (names, base) = layout(s);
    let mut productions = Vec::new();
    for (i, eq) in s.equations().iter().enumerate() {
        walk(&eq.body, &mut Vec::new(), base[i], &base, &branch, &mut productions);
    }
    let grammar = Grammar::new(branch.alphabet().clone(), names, productions, 0)
        .expect("translated symbols are declared");
    Translation { grammar, branch }
}

fn walk(t: &Term, hat: &mut Vec<Sym>, lhs: usize, base: &[usize], branch: &BranchAlphabet, out: &mut Vec<Production>) {
    match t {
        Term::Param(j) => out.push(Production::new(lhs + 1 + j, hat.clone())),
        Term::Symbol { name, args } if args.is_empty() => {
            let mut rhs = hat.clone();
            rhs.push(Sym::T(branch.label(name).expect("leaf symbols are labels")));
            out.push(Production::new(lhs, rhs));
        }
        Term::Symbol { name, args } => {
            for (d, a) in args.iter().enumerate() {
                hat.push(Sym::T(branch.pair(name, d).expect("pairs cover every child")));
                walk(a, hat, lhs, base, branch, out);
                hat.pop();
            }
        }
        Term::Call { func, args } => {
            let mut rhs = hat.clone();
            rhs.push(Sym::N(base[*func]));
            out.push(Production::new(lhs, rhs));
            for (d, a) in args.iter().enumerate() {
                hat.push(Sym::N(base[*func] + 1 + d));
                walk(a, hat, lhs, base, branch, out);
                hat.pop();
            }
        }
    }
}

/// The right quotient by the leaf labels: every production ending in a
/// leaf label loses it, and pair letters `(σ, j)` become the child index
/// `j`. The result generates the leaf addresses over `{0, …, r-1}`.
/// A scheme whose tree is a single leaf yields the production `F -> ε`;
/// [`normalize`] then reports `ε ∈ L`.
pub fn frontier_grammar(g: &Grammar, branch: &BranchAlphabet) -> Result<Grammar> {
    if g.terminals() != branch.alphabet() {
        return Err(Error::NotTranslatedForm("terminals are not the branch alphabet".into()));
    }
    let r = (0..branch.pair_count()).filter_map(|i| branch.as_pair(Letter::new(i as u16))).map(|(_, j)| j + 1).max();
    let alphabet = OrderedAlphabet::new((0..r.unwrap_or(1)).map(|j| format!("{j}"))).expect("digits are distinct");
    let mut productions = Vec::with_capacity(g.productions().len());
    for p in g.productions() {
        let mut rhs = p.rhs.clone();
        if let Some(Sym::T(a)) = rhs.last() {
            if branch.is_label(*a) {
                rhs.pop();
            }
        }
        let rhs = rhs
            .into_iter()
            .map(|s| match s {
                Sym::T(a) => match branch.as_pair(a) {
                    Some((_, j)) => Ok(Sym::T(Letter::new(j as u16))),
                    None => Err(Error::NotTranslatedForm(g.render_production(p))),
                },
                n => Ok(n),
            })
            .collect::<Result<Vec<_>>>()?;
        productions.push(Production::new(p.lhs, rhs));
    }
    Grammar::new(alphabet, g.nonterminals().to_vec(), productions, g.start())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MismatchKind {
    /// A branch word of the unfolded tree the grammar does not generate.
    MissingFromGrammar,
    /// A generated word whose leaf is determined otherwise (or absent) in
    /// the unfolded tree.
    ExtraInGrammar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub kind: MismatchKind,
    pub word: Word,
    pub address: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub depth: usize,
    pub max_len: usize,
    /// Branch words of the unfolded tree up to `max_len`.
    pub tree_words: usize,
    /// Words of the grammar up to `max_len`.
    pub grammar_words: usize,
    /// Grammar words not checked because their path meets a call the
    /// unfolding has not expanded yet.
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the labeled frontier of `unfold(s, depth)` with the words of
/// `normalize(g)` up to `max_len`. Every tree word must be generated. A
/// generated word with address shorter than `depth` must be a tree word,
/// unless its path runs into a still pending call; paths into calls that
/// can never produce a symbol are not excused.
pub fn check_claim(s: &RecursionScheme, g: &Grammar, depth: usize, max_len: usize) -> Result<ClaimReport> {
    let tree = unfold(s, depth);
    let (branch, tree_words) = tree.branch_words(BranchKind::Lfr);
    if g.terminals() != branch.alphabet() {
        return Err(Error::NotTranslatedForm("terminals are not the branch alphabet".into()));
    }
    let grammar_words = enumerate_words(&normalize(g).0, max_len)?;
    let tree_set: BTreeSet<&Word> = tree_words.iter().collect();
    let grammar_set: BTreeSet<&Word> = grammar_words.iter().collect();
    let address_of = |w: &Word| branch.address(&w.prefix(w.len().saturating_sub(1)));

    let mut mismatches = Vec::new();
    for w in tree_words.iter().filter(|w| w.len() <= max_len) {
        if !grammar_set.contains(w) {
            let address = address_of(w).unwrap_or_default();
            mismatches.push(Mismatch { kind: MismatchKind::MissingFromGrammar, word: w.clone(), address });
        }
    }
    let mut skipped = 0;
    for w in &grammar_words {
        if tree_set.contains(w) {
            continue;
        }
        let well_formed = w.letters().last().is_some_and(|a| branch.is_label(*a));
        let Some(address) = address_of(w).filter(|_| well_formed) else {
            mismatches.push(Mismatch { kind: MismatchKind::ExtraInGrammar, word: w.clone(), address: Word::empty() });
            continue;
        };
        if address.len() >= depth {
            continue;
        }
        if let Some((_, Node::Pending { .. })) = tree.first_undetermined_on_path(&address) {
            skipped += 1;
            continue;
        }
        mismatches.push(Mismatch { kind: MismatchKind::ExtraInGrammar, word: w.clone(), address });
    }
    Ok(ClaimReport {
        depth,
        max_len,
        tree_words: tree_words.iter().filter(|w| w.len() <= max_len).count(),
        grammar_words: grammar_words.len(),
        skipped,
        mismatches,
    })
}
