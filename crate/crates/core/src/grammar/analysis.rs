//! Scattered-grammar analysis: reachability classes and heights, left
//! recursion, pumping prefixes and their primitive roots, refutation of
//! scatteredness, the prefix property and Hausdorff-rank bounds.
//!
//! Refutations are sound; confirmations only hold up to the search bounds
//! carried in the verdicts.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::normalize::{inline_singletons, normalize, NormalizeReport};
use super::{enumerate_all, Grammar, Sym};
use crate::error::{Error, Result};
use crate::ordinal::{height_bound, Ordinal};
use crate::words::{is_power_of, is_prefix_free, primitive_root, Word};

/// Upper limit on distinct sentential forms visited by one pumping search.
pub const STATE_CAP: usize = 200_000;

/// Pumping search depth used when none is given: `2·|N| + 2`.
pub fn default_depth(g: &Grammar) -> usize {
    2 * g.nonterminal_count() + 2
}

/// Strongly connected components of a digraph given by successor lists.
/// Components are numbered in completion order, so every edge leaving a
/// component points to a smaller number.
pub fn strongly_connected(succ: &[Vec<usize>]) -> Vec<usize> {
    struct Tarjan<'a> {
        succ: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        comp: Vec<usize>,
        comps: usize,
    }
    impl Tarjan<'_> {
        fn visit(&mut self, v: usize) {
            self.index[v] = Some(self.next);
            self.low[v] = self.next;
            self.next += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for &w in &self.succ[v] {
                match self.index[w] {
                    None => {
                        self.visit(w);
                        self.low[v] = self.low[v].min(self.low[w]);
                    }
                    Some(i) if self.on_stack[w] => self.low[v] = self.low[v].min(i),
                    Some(_) => {}
                }
            }
            if Some(self.low[v]) == self.index[v] {
                loop {
                    let w = self.stack.pop().expect("v is on the stack");
                    self.on_stack[w] = false;
                    self.comp[w] = self.comps;
                    if w == v {
                        break;
                    }
                }
                self.comps += 1;
            }
        }
    }
    let n = succ.len();
    let mut t = Tarjan {
        succ,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        comp: vec![0; n],
        comps: 0,
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    t.comp
}

fn on_cycle(succ: &[Vec<usize>], comp: &[usize]) -> Vec<bool> {
    (0..succ.len())
        .map(|v| succ[v].iter().any(|&w| comp[w] == comp[v]))
        .collect()
}

/// Class and height of one nonterminal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SccInfo {
    pub scc: usize,
    pub height: usize,
    /// `X ⇒⁺ pXq`.
    pub recursive: bool,
}

/// Classes of the occurs-in-right-hand-side digraph and, per nonterminal,
/// the number of classes strictly below its own.
pub fn sccs_and_heights(g: &Grammar) -> Vec<SccInfo> {
    let succ = g.successors();
    let comp = strongly_connected(&succ);
    let comps = comp.iter().map(|c| c + 1).max().unwrap_or(0);
    let mut comp_succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); comps];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            if comp[w] != comp[v] {
                comp_succ[comp[v]].insert(comp[w]);
            }
        }
    }
    // successors have smaller numbers, so increasing order is bottom-up
    let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); comps];
    for c in 0..comps {
        let mut set = BTreeSet::new();
        for &d in &comp_succ[c] {
            set.insert(d);
            set.extend(below[d].iter().copied());
        }
        below[c] = set;
    }
    let cyc = on_cycle(&succ, &comp);
    (0..g.nonterminal_count())
        .map(|x| SccInfo { scc: comp[x], height: below[comp[x]].len(), recursive: cyc[x] })
        .collect()
}

/// Nonterminals with `X ⇒⁺ Xq`: those on a cycle of the digraph joining
/// each left-hand side to the leftmost symbol of its right-hand sides.
pub fn detect_left_recursion(g: &Grammar) -> Vec<usize> {
    let mut succ = vec![Vec::new(); g.nonterminal_count()];
    for p in g.productions() {
        if let Some(&Sym::N(y)) = p.rhs.first() {
            if !succ[p.lhs].contains(&y) {
                succ[p.lhs].push(y);
            }
        }
    }
    let comp = strongly_connected(&succ);
    let cyc = on_cycle(&succ, &comp);
    (0..succ.len()).filter(|&x| cyc[x]).collect()
}

/// `reach[x][y]`: `x ⇒* pyq`, reflexively.
fn reachability(g: &Grammar) -> Vec<Vec<bool>> {
    let succ = g.successors();
    let n = succ.len();
    let mut reach = vec![vec![false; n]; n];
    for x in 0..n {
        let mut stack = vec![x];
        reach[x][x] = true;
        while let Some(y) = stack.pop() {
            for &z in &succ[y] {
                if !reach[x][z] {
                    reach[x][z] = true;
                    stack.push(z);
                }
            }
        }
    }
    reach
}

/// Nonterminals with a derivation `X ⇒* pXqXr`. Exact on grammars without
/// non-generating nonterminals: such a derivation exists iff some
/// production reachable from `X` has two right-hand-side occurrences that
/// both reach `X`.
pub fn double_self_embedding(g: &Grammar) -> Vec<usize> {
    let reach = reachability(g);
    (0..g.nonterminal_count())
        .filter(|&x| {
            g.productions().iter().any(|p| {
                reach[x][p.lhs]
                    && p.rhs.iter().filter(|s| matches!(**s, Sym::N(z) if reach[z][x])).count() >= 2
            })
        })
        .collect()
}

fn shortlex(ws: &mut [Word]) {
    ws.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Nonempty terminal words `u` with `X ⇒⁺ uXp` in at most `depth`
/// production applications, in shortlex order. Breadth-first over leftmost
/// derivations; forms in which no nonterminal reaches `X` are dropped, and
/// the search stops growing after [`STATE_CAP`] forms.
pub fn pumping_prefixes(g: &Grammar, x: usize, depth: usize) -> Result<Vec<Word>> {
    let info = sccs_and_heights(g);
    if !info[x].recursive {
        return Err(Error::NotRecursive(g.name(x).into()));
    }
    let reach = reachability(g);
    let cap = depth * g.max_rhs_len().max(1);
    let live = |rest: &[Sym]| rest.iter().any(|s| matches!(*s, Sym::N(y) if reach[y][x]));

    let mut found = BTreeSet::new();
    let mut seen: BTreeSet<(Word, Vec<Sym>)> = BTreeSet::new();
    let mut queue: VecDeque<(Word, Vec<Sym>, usize)> = VecDeque::new();
    let mut push = |prefix: Word, rest: Vec<Sym>, d: usize, queue: &mut VecDeque<_>| {
        let mut prefix = prefix;
        let lead = rest.iter().take_while(|s| matches!(s, Sym::T(_))).count();
        for s in &rest[..lead] {
            if let Sym::T(a) = *s {
                prefix.push(a);
            }
        }
        let rest = rest[lead..].to_vec();
        if prefix.len() > cap || !live(&rest) || seen.len() >= STATE_CAP {
            return;
        }
        if seen.insert((prefix.clone(), rest.clone())) {
            queue.push_back((prefix, rest, d));
        }
    };
    for p in g.productions_of(x) {
        push(Word::empty(), p.rhs.clone(), 1, &mut queue);
    }
    while let Some((prefix, rest, d)) = queue.pop_front() {
        let Sym::N(y) = rest[0] else { unreachable!("leading terminals are absorbed") };
        if y == x && !prefix.is_empty() {
            found.insert(prefix.clone());
        }
        if d == depth {
            continue;
        }
        for p in g.productions_of(y) {
            let mut form = p.rhs.clone();
            form.extend_from_slice(&rest[1..]);
            push(prefix.clone(), form, d + 1, &mut queue);
        }
    }
    let mut out: Vec<Word> = found.into_iter().collect();
    shortlex(&mut out);
    Ok(out)
}

/// Outcome of [`primitive_root_of`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootVerdict {
    /// Every pumping prefix found is a power of this primitive word.
    Root(Word),
    /// The shortest pumping prefix and one that is not a power of its root.
    Violation(Word, Word),
}

/// Checks that the pumping prefixes of `X` are powers of one primitive
/// word, the root of the shortest one.
pub fn primitive_root_of(g: &Grammar, x: usize, depth: usize) -> Result<RootVerdict> {
    let pumps = pumping_prefixes(g, x, depth)?;
    root_of_pumps(&pumps).ok_or_else(|| Error::Inconclusive(g.name(x).into()))
}

fn root_of_pumps(pumps: &[Word]) -> Option<RootVerdict> {
    let shortest = pumps.first()?;
    let (root, _) = primitive_root(shortest).expect("pumping prefixes are nonempty");
    Some(match pumps.iter().find(|u| !is_power_of(u, &root)) {
        Some(bad) => RootVerdict::Violation(shortest.clone(), bad.clone()),
        None => RootVerdict::Root(root),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScatterednessVerdict {
    /// Two prefix-incomparable pumping prefixes of one nonterminal; refutes
    /// scatteredness when the grammar is a prefix grammar.
    RefutedIncomparable { nonterminal: String, u: Word, v: Word },
    /// Pumping prefixes `u₀ <_s u₁ <_s u₂` of one nonterminal; refutes
    /// scatteredness outright.
    RefutedDenseTriple { nonterminal: String, triple: [Word; 3] },
    NoWitnessWithinBound(usize),
}

impl ScatterednessVerdict {
    pub fn is_refutation(&self) -> bool {
        !matches!(self, ScatterednessVerdict::NoWitnessWithinBound(_))
    }
}

/// The first prefix-incomparable pair in shortlex order, arranged so that
/// `u <_s v`.
fn incomparable_pairs(pumps: &[Word]) -> impl Iterator<Item = (&Word, &Word)> {
    (0..pumps.len()).flat_map(move |j| {
        (0..j).filter_map(move |i| {
            let (a, b) = (&pumps[i], &pumps[j]);
            if a.strictly_before(b) {
                Some((a, b))
            } else if b.strictly_before(a) {
                Some((b, a))
            } else {
                None
            }
        })
    })
}

/// Searches the pumping prefixes of every recursive nonterminal for a
/// dense triple `uu <_s uv <_s vu` built from a pair `u <_s v` (all three
/// must themselves be found within `depth`), then for any incomparable
/// pair.
pub fn refute_scattered(g: &Grammar, depth: usize) -> ScatterednessVerdict {
    let pumps = all_pumps(g, depth);
    refute_from(g, &pumps, depth)
}

fn all_pumps(g: &Grammar, depth: usize) -> Vec<Option<Vec<Word>>> {
    (0..g.nonterminal_count()).map(|x| pumping_prefixes(g, x, depth).ok()).collect()
}

fn refute_from(g: &Grammar, pumps: &[Option<Vec<Word>>], depth: usize) -> ScatterednessVerdict {
    for (x, ps) in pumps.iter().enumerate() {
        let Some(ps) = ps else { continue };
        let set: BTreeSet<&Word> = ps.iter().collect();
        for (u, v) in incomparable_pairs(ps) {
            let triple = [u.concat(u), u.concat(v), v.concat(u)];
            if triple.iter().all(|w| set.contains(w)) {
                return ScatterednessVerdict::RefutedDenseTriple { nonterminal: g.name(x).into(), triple };
            }
        }
    }
    for (x, ps) in pumps.iter().enumerate() {
        let Some(ps) = ps else { continue };
        if let Some((u, v)) = incomparable_pairs(ps).next() {
            return ScatterednessVerdict::RefutedIncomparable {
                nonterminal: g.name(x).into(),
                u: u.clone(),
                v: v.clone(),
            };
        }
    }
    ScatterednessVerdict::NoWitnessWithinBound(depth)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrefixVerdict {
    /// No nonterminal language has a word extending another, up to the
    /// length bound.
    PrefixUpTo(usize),
    Witness { nonterminal: String, u: Word, v: Word },
}

/// Enumerates every `L(X)` up to `max_len` and looks for a word that is a
/// proper prefix of another.
pub fn check_prefix_property(g: &Grammar, max_len: usize) -> Result<PrefixVerdict> {
    let langs = enumerate_all(g, max_len)?;
    Ok(prefix_from(g, &langs, max_len))
}

fn prefix_from(g: &Grammar, langs: &[Vec<Word>], max_len: usize) -> PrefixVerdict {
    for (x, words) in langs.iter().enumerate() {
        if let Some((u, v)) = is_prefix_free(words) {
            return PrefixVerdict::Witness { nonterminal: g.name(x).into(), u, v };
        }
    }
    PrefixVerdict::PrefixUpTo(max_len)
}

/// `ω^height(X) + 1` per nonterminal, and the bound of the start symbol.
pub fn rank_bound_report(g: &Grammar) -> (Vec<Ordinal>, Ordinal) {
    let bounds: Vec<Ordinal> = sccs_and_heights(g).iter().map(|i| height_bound(i.height)).collect();
    let overall = bounds[g.start()].clone();
    (bounds, overall)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonterminalAnalysis {
    pub name: String,
    pub scc: usize,
    pub height: usize,
    pub recursive: bool,
    pub left_recursive: bool,
    pub pumping_prefixes: Vec<Word>,
    /// Present when every pumping prefix found is a power of it.
    pub primitive_root: Option<Word>,
    pub rank_bound: Ordinal,
}

/// A consequence of the scattered-prefix-grammar hypothesis that failed on
/// a grammar passing both the prefix check and the refutation search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantViolation {
    LeftRecursive(String),
    DoubleSelfEmbedding(String),
    NotPowersOfRoot { nonterminal: String, shortest: Word, other: Word },
    RankNotBelowOmegaOmega(Ordinal),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    /// The grammar actually analyzed: normalized, singletons inlined.
    pub grammar: Grammar,
    pub normalize: NormalizeReport,
    pub inlined: Vec<String>,
    pub depth: usize,
    pub max_len: usize,
    pub nonterminals: Vec<NonterminalAnalysis>,
    pub scattered: ScatterednessVerdict,
    pub prefix: PrefixVerdict,
    pub overall_rank_bound: Ordinal,
    pub violations: Vec<InvariantViolation>,
}

impl Analysis {
    /// No refutation, no prefix witness, no violated invariant.
    pub fn is_clean(&self) -> bool {
        !self.scattered.is_refutation() && matches!(self.prefix, PrefixVerdict::PrefixUpTo(_)) && self.violations.is_empty()
    }
}

/// Normalizes, inlines singleton nonterminals and runs every analysis.
/// `depth` defaults to [`default_depth`] of the analyzed grammar. A
/// language containing `ε` (other than `{ε}`) is rejected.
pub fn analyze(g: &Grammar, depth: Option<usize>, max_len: usize) -> Result<Analysis> {
    let (normal, report) = normalize(g);
    if report.contains_empty_word && !normal.productions().is_empty() {
        return Err(Error::NotEpsilonFree(g.name(g.start()).into()));
    }
    let (grammar, inlined) = inline_singletons(&normal);
    let depth = depth.unwrap_or_else(|| default_depth(&grammar));

    let info = sccs_and_heights(&grammar);
    let left: Vec<usize> = detect_left_recursion(&grammar);
    let pumps = all_pumps(&grammar, depth);
    let langs = enumerate_all(&grammar, max_len)?;
    let scattered = refute_from(&grammar, &pumps, depth);
    let prefix = prefix_from(&grammar, &langs, max_len);
    let (bounds, overall_rank_bound) = rank_bound_report(&grammar);

    let mut violations = Vec::new();
    let mut nonterminals = Vec::new();
    for x in 0..grammar.nonterminal_count() {
        let ps = pumps[x].clone().unwrap_or_default();
        let root = match root_of_pumps(&ps) {
            Some(RootVerdict::Root(r)) => Some(r),
            Some(RootVerdict::Violation(shortest, other)) => {
                violations.push(InvariantViolation::NotPowersOfRoot {
                    nonterminal: grammar.name(x).into(),
                    shortest,
                    other,
                });
                None
            }
            None => None,
        };
        nonterminals.push(NonterminalAnalysis {
            name: grammar.name(x).into(),
            scc: info[x].scc,
            height: info[x].height,
            recursive: info[x].recursive,
            left_recursive: left.contains(&x),
            pumping_prefixes: ps,
            primitive_root: root,
            rank_bound: bounds[x].clone(),
        });
    }
    violations.extend(left.iter().map(|&x| InvariantViolation::LeftRecursive(grammar.name(x).into())));
    violations.extend(
        double_self_embedding(&grammar).into_iter().map(|x| InvariantViolation::DoubleSelfEmbedding(grammar.name(x).into())),
    );
    if overall_rank_bound >= Ordinal::omega_power(Ordinal::omega()) {
        violations.push(InvariantViolation::RankNotBelowOmegaOmega(overall_rank_bound.clone()));
    }
    // the invariants are consequences of the hypothesis; once it is refuted
    // they carry no information
    if scattered.is_refutation() || !matches!(prefix, PrefixVerdict::PrefixUpTo(_)) {
        violations.clear();
    }
    Ok(Analysis { grammar, normalize: report, inlined, depth, max_len, nonterminals, scattered, prefix, overall_rank_bound, violations })
}
