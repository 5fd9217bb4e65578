use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{RankedAlphabet, RecursionScheme, Term, ONE};
use crate::words::{Letter, OrderedAlphabet, Word};

/// The completion symbol.
pub const OMEGA: &str = "Ω";

/// Label of a node in a Kleene approximant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    /// Determined; never changes in later approximants.
    Symbol(String),
    /// An unexpanded call `F_func(args)` with closed argument terms.
    Pending { func: usize, args: Vec<Term> },
    /// A call whose root can never become a symbol (it denotes ⊥).
    Undefined,
}

/// A finite, possibly incomplete tree: addresses are words over child
/// indices, stored in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialTree {
    alphabet: RankedAlphabet,
    nodes: BTreeMap<Word, Node>,
}

impl PartialTree {
    pub fn empty(alphabet: RankedAlphabet) -> Self {
        PartialTree { alphabet, nodes: BTreeMap::new() }
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn nodes(&self) -> &BTreeMap<Word, Node> {
        &self.nodes
    }

    pub fn get(&self, address: &Word) -> Option<&Node> {
        self.nodes.get(address)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn label(&self, address: &Word) -> Option<&str> {
        match self.nodes.get(address)? {
            Node::Symbol(s) => Some(s),
            _ => None,
        }
    }

    fn is_leaf_symbol(&self, name: &str) -> bool {
        self.alphabet.arity(name) == Some(0)
    }

    pub fn pending(&self) -> impl Iterator<Item = (&Word, &Node)> {
        self.nodes.iter().filter(|(_, n)| matches!(n, Node::Pending { .. }))
    }

    /// The first node on the path to `address` (inclusive) that is not a
    /// determined symbol, with its address.
    pub fn first_undetermined_on_path(&self, address: &Word) -> Option<(Word, &Node)> {
        (0..=address.len()).find_map(|n| {
            let prefix = address.prefix(n);
            match self.nodes.get(&prefix) {
                Some(Node::Symbol(_)) | None => None,
                Some(node) => Some((prefix, node)),
            }
        })
    }

    /// Determined leaves in lexicographic order of their addresses.
    pub fn frontier(&self) -> Vec<(Word, String)> {
        self.nodes
            .iter()
            .filter_map(|(u, n)| match n {
                Node::Symbol(s) if self.is_leaf_symbol(s) => Some((u.clone(), s.clone())),
                _ => None,
            })
            .collect()
    }

    /// `û`: the label/direction history of the path to `address`. Every
    /// proper prefix must be a determined node.
    pub fn hat(&self, address: &Word, branch: &BranchAlphabet) -> Option<Word> {
        let mut out = Word::empty();
        for n in 0..address.len() {
            let label = self.label(&address.prefix(n))?;
            out.push(branch.pair(label, address.letters()[n].index())?);
        }
        Some(out)
    }

    /// Branch words `û·T(u)` over determined leaves (`Lfr`) or all
    /// determined nodes (`Pbr`), sorted.
    pub fn branch_words(&self, kind: BranchKind) -> (BranchAlphabet, Vec<Word>) {
        let branch = BranchAlphabet::new(&self.alphabet, kind);
        let mut words: Vec<Word> = self
            .nodes
            .iter()
            .filter_map(|(u, n)| {
                let Node::Symbol(s) = n else { return None };
                if kind == BranchKind::Lfr && !self.is_leaf_symbol(s) {
                    return None;
                }
                let mut w = self.hat(u, &branch)?;
                w.push(branch.label(s)?);
                Some(w)
            })
            .collect();
        words.sort();
        (branch, words)
    }

    /// `T_Ω`: undetermined nodes and missing child slots become Ω.
    pub fn complete_omega(&self) -> PartialTree {
        let mut out = PartialTree::empty(self.alphabet.with_omega());
        if self.nodes.is_empty() {
            out.nodes.insert(Word::empty(), Node::Symbol(OMEGA.to_owned()));
            return out;
        }
        for (u, n) in &self.nodes {
            match n {
                Node::Symbol(s) => {
                    out.nodes.insert(u.clone(), n.clone());
                    for i in 0..self.alphabet.arity(s).unwrap_or(0) {
                        let child = u.pushed(Letter::new(i as u16));
                        if !self.nodes.contains_key(&child) {
                            out.nodes.insert(child, Node::Symbol(OMEGA.to_owned()));
                        }
                    }
                }
                _ => {
                    out.nodes.insert(u.clone(), Node::Symbol(OMEGA.to_owned()));
                }
            }
        }
        out
    }

    /// Every node is determined.
    pub fn is_complete(&self) -> bool {
        self.nodes.values().all(|n| matches!(n, Node::Symbol(_)))
    }

    fn place(&mut self, address: Word, term: Term, queue: &mut Vec<Word>) {
        match term {
            Term::Symbol { name, args } => {
                for (i, a) in args.into_iter().enumerate() {
                    self.place(address.pushed(Letter::new(i as u16)), a, queue);
                }
                self.nodes.insert(address, Node::Symbol(name));
            }
            Term::Call { func, args } => {
                self.nodes.insert(address.clone(), Node::Pending { func, args });
                queue.push(address);
            }
            Term::Param(_) => unreachable!("instantiated bodies are closed"),
        }
    }
}

/// For each function variable, whether the root of `F_i(s_0, …)` is
/// eventually a symbol, as a function of which argument roots are. Least
/// fixpoint over `{⊥, defined}^k`; `None` when some arity exceeds 16.
pub(crate) struct HeadTable {
    tables: Vec<Vec<bool>>,
}

impl HeadTable {
    pub(crate) fn new(scheme: &RecursionScheme) -> Option<Self> {
        if scheme.equations().iter().any(|e| e.arity > 16) {
            return None;
        }
        let mut tables: Vec<Vec<bool>> =
            scheme.equations().iter().map(|e| vec![false; 1 << e.arity]).collect();
        loop {
            let mut changed = false;
            for (i, eq) in scheme.equations().iter().enumerate() {
                for mask in 0..tables[i].len() {
                    if !tables[i][mask] && head(&tables, &eq.body, mask) {
                        tables[i][mask] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Some(HeadTable { tables });
            }
        }
    }

    pub(crate) fn call_defined(&self, func: usize, args: &[Term]) -> bool {
        head(&self.tables, &Term::Call { func, args: args.to_vec() }, 0)
    }
}

fn head(tables: &[Vec<bool>], t: &Term, env: usize) -> bool {
    match t {
        Term::Symbol { .. } => true,
        Term::Param(j) => env >> j & 1 == 1,
        Term::Call { func, args } => {
            let mask = args.iter().enumerate().fold(0, |m, (j, a)| m | (head(tables, a, env) as usize) << j);
            tables[*func][mask]
        }
    }
}

/// The `depth`-th Kleene approximant of the principal component: starting
/// from a pending root call, every pending call is replaced `depth` times by
/// its body with the recorded arguments substituted. Calls whose root can
/// never be determined are marked [`Node::Undefined`] when reached.
pub fn unfold(scheme: &RecursionScheme, depth: usize) -> PartialTree {
    let heads = HeadTable::new(scheme);
    let mut tree = PartialTree::empty(scheme.alphabet().clone());
    let mut queue = Vec::new();
    tree.place(Word::empty(), Term::call(0, Vec::new()), &mut queue);
    for _ in 0..depth {
        if queue.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for address in queue {
            let Some(Node::Pending { func, args }) = tree.nodes.remove(&address) else {
                unreachable!("queued addresses hold pending calls")
            };
            if heads.as_ref().is_some_and(|h| !h.call_defined(func, &args)) {
                tree.nodes.insert(address, Node::Undefined);
                continue;
            }
            let body = scheme.equations()[func].body.substitute(&args);
            tree.place(address, body, &mut next);
        }
        queue = next;
    }
    tree
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchKind {
    /// Labeled frontier language: words ending in a leaf label.
    Lfr,
    /// Partial branch language: words ending in any label.
    Pbr,
}

/// The alphabet of branch words: pair letters `(σ, j)` ordered by `j` then
/// by the declaration order of `σ`, followed by the labels. Over Δ-like
/// alphabets `(+, j)` renders as `j` and `𝟏` as `𝟏`; otherwise pairs render
/// as `σ.j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchAlphabet {
    kind: BranchKind,
    pairs: Vec<(String, usize)>,
    labels: Vec<String>,
    alphabet: OrderedAlphabet,
}

impl BranchAlphabet {
    pub fn new(ranked: &RankedAlphabet, kind: BranchKind) -> Self {
        let max = ranked.max_rank();
        let pairs: Vec<(String, usize)> = (0..max)
            .flat_map(|j| ranked.entries().iter().filter(move |(_, a)| *a > j).map(move |(n, _)| (n.clone(), j)))
            .collect();
        let labels: Vec<String> = ranked
            .entries()
            .iter()
            .filter(|(_, a)| kind == BranchKind::Pbr || *a == 0)
            .map(|(n, _)| n.clone())
            .collect();
        let compact = ranked.is_delta_like();
        let tokens = pairs
            .iter()
            .map(|(n, j)| if compact { format!("{j}") } else { format!("{n}.{j}") })
            .chain(labels.iter().map(|l| render_label(l)));
        let alphabet = OrderedAlphabet::new(tokens).expect("branch tokens are distinct and well formed");
        BranchAlphabet { kind, pairs, labels, alphabet }
    }

    pub fn kind(&self) -> BranchKind {
        self.kind
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn pair(&self, symbol: &str, child: usize) -> Option<Letter> {
        self.pairs.iter().position(|(n, j)| n == symbol && *j == child).map(|i| Letter::new(i as u16))
    }

    pub fn label(&self, symbol: &str) -> Option<Letter> {
        self.labels.iter().position(|n| n == symbol).map(|i| Letter::new((self.pairs.len() + i) as u16))
    }

    /// `(σ, j)` for a pair letter.
    pub fn as_pair(&self, letter: Letter) -> Option<(&str, usize)> {
        self.pairs.get(letter.index()).map(|(n, j)| (n.as_str(), *j))
    }

    /// The symbol of a label letter.
    pub fn as_label(&self, letter: Letter) -> Option<&str> {
        letter.index().checked_sub(self.pairs.len()).and_then(|i| self.labels.get(i)).map(String::as_str)
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_label(&self, letter: Letter) -> bool {
        letter.index() >= self.pairs.len()
    }

    /// The address spelled by a word of pair letters, or `None` if a label
    /// letter occurs.
    pub fn address(&self, word: &Word) -> Option<Word> {
        word.letters().iter().map(|l| self.as_pair(*l).map(|(_, j)| Letter::new(j as u16))).collect()
    }
}

/// `1` is shown as `𝟏` so it cannot be mistaken for the child index.
pub fn render_label(symbol: &str) -> String {
    if symbol == ONE {
        "𝟏".to_owned()
    } else {
        symbol.to_owned()
    }
}
