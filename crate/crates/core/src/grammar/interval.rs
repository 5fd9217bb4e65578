use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::normalize::normalize;
use super::{Grammar, Production, Sym};
use crate::automaton::{Dfa, Side};
use crate::words::{Letter, OrderedAlphabet, Word};

/// One end of a lexicographic interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub word: Word,
    pub inclusive: bool,
}

impl Bound {
    pub fn inclusive(word: Word) -> Self {
        Bound { word, inclusive: true }
    }

    pub fn exclusive(word: Word) -> Self {
        Bound { word, inclusive: false }
    }
}

/// `L(G) ∩ {u : lower ≤ u ≤ upper}` (each end optional, strict or not),
/// by the triple construction of `G` against the product of the two
/// half-line automata, then normalized. Triple nonterminals are named
/// `X[p,q]`; the new start symbol keeps the old start's name.
pub fn intersect_lex_interval(g: &Grammar, lower: Option<&Bound>, upper: Option<&Bound>) -> Grammar {
    let k = g.terminals().len();
    let mut dfa = Dfa::universal(k);
    if let Some(b) = lower {
        dfa = dfa.intersect(&Dfa::lex_half_line(k, &b.word, Side::Above, b.inclusive));
    }
    if let Some(b) = upper {
        dfa = dfa.intersect(&Dfa::lex_half_line(k, &b.word, Side::Below, b.inclusive));
    }
    let (g, _) = normalize(g);
    triple_construction(&g, &dfa)
}

/// `ends[x][p]`: the states reachable from `p` by words of `L(X)`.
fn productive_triples(g: &Grammar, dfa: &Dfa) -> Vec<Vec<BTreeSet<usize>>> {
    let states = dfa.states();
    let mut ends = vec![vec![BTreeSet::new(); states]; g.nonterminal_count()];
    loop {
        let mut changed = false;
        for p in g.productions() {
            for s in 0..states {
                let mut cur: BTreeSet<usize> = BTreeSet::from([s]);
                for sym in &p.rhs {
                    let mut next = BTreeSet::new();
                    for &c in &cur {
                        match *sym {
                            Sym::T(a) => next.extend(dfa.step(c, a)),
                            Sym::N(y) => next.extend(ends[y][c].iter().copied()),
                        }
                    }
                    cur = next;
                    if cur.is_empty() {
                        break;
                    }
                }
                for q in cur {
                    changed |= ends[p.lhs][s].insert(q);
                }
            }
        }
        if !changed {
            return ends;
        }
    }
}

fn triple_construction(g: &Grammar, dfa: &Dfa) -> Grammar {
    let ends = productive_triples(g, dfa);
    let start_name = g.name(g.start());
    let mut names: Vec<String> = vec![start_name.into()];
    let mut index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (x, per_state) in ends.iter().enumerate() {
        for (p, qs) in per_state.iter().enumerate() {
            for &q in qs {
                index.insert((x, p, q), names.len());
                names.push(format!("{}[{p},{q}]", g.name(x)));
            }
        }
    }
    let mut productions = Vec::new();
    for &f in &ends[g.start()][dfa.start()] {
        if dfa.is_accepting(f) {
            productions.push(Production::new(0, vec![Sym::N(index[&(g.start(), dfa.start(), f)])]));
        }
    }
    for p in g.productions() {
        for s in 0..dfa.states() {
            let mut paths: Vec<(usize, Vec<Sym>)> = vec![(s, Vec::new())];
            for sym in &p.rhs {
                let mut next = Vec::new();
                for (c, rhs) in paths {
                    match *sym {
                        Sym::T(a) => {
                            if let Some(t) = dfa.step(c, a) {
                                let mut r = rhs.clone();
                                r.push(Sym::T(a));
                                next.push((t, r));
                            }
                        }
                        Sym::N(y) => {
                            for &t in &ends[y][c] {
                                let mut r = rhs.clone();
                                r.push(Sym::N(index[&(y, c, t)]));
                                next.push((t, r));
                            }
                        }
                    }
                }
                paths = next;
            }
            for (q, rhs) in paths {
                productions.push(Production::new(index[&(p.lhs, s, q)], rhs));
            }
        }
    }
    // a name can only clash with the start if the input already used the
    // bracket form; fall back to a fresh start name then
    let mut start = String::from(start_name);
    while names[1..].contains(&start) {
        start.push('\'');
    }
    names[0] = start;
    let triple = Grammar::new(g.terminals().clone(), names, productions, 0).expect("triple grammar is well formed");
    normalize(&triple).0
}

/// The same grammar over the reversed alphabet: letter `i` becomes
/// `k-1-i` and keeps its symbol, so the returned alphabet lists the
/// symbols in the opposite order. On a prefix language the new
/// lexicographic order is the reverse of the old one.
pub fn reverse_order(g: &Grammar) -> (Grammar, OrderedAlphabet) {
    let k = g.terminals().len();
    let reversed = g.terminals().reversed();
    let flip = |a: Letter| Letter::new((k - 1 - a.index()) as u16);
    let h = g.map_terminals(reversed.clone(), flip).expect("relabeling keeps the grammar valid");
    (h, reversed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::enumerate_words;
    use crate::grammar::tests::{binary, omega_frontier, rationals};
    use crate::words::lex_compare;

    fn w(s: &str) -> Word {
        OrderedAlphabet::binary().parse_word(s).unwrap()
    }

    fn filtered(g: &Grammar, lo: Option<&Bound>, hi: Option<&Bound>, n: usize) -> Vec<Word> {
        enumerate_words(g, n)
            .unwrap()
            .into_iter()
            .filter(|u| {
                lo.map_or(true, |b| {
                    let c = lex_compare(u, &b.word);
                    c.is_greater() || (b.inclusive && c == crate::words::LexOrdering::Equal)
                }) && hi.map_or(true, |b| {
                    let c = lex_compare(u, &b.word);
                    c.is_less() || (b.inclusive && c == crate::words::LexOrdering::Equal)
                })
            })
            .collect()
    }

    #[test]
    fn lower_bound_on_omega() {
        let g = omega_frontier();
        let lo = Bound::inclusive(w("110"));
        let h = intersect_lex_interval(&g, Some(&lo), None);
        assert_eq!(enumerate_words(&h, 8).unwrap(), filtered(&g, Some(&lo), None, 8));
        assert_eq!(enumerate_words(&h, 4).unwrap(), [w("110"), w("1110")]);
        assert_eq!(h.name(h.start()), "X");
    }

    #[test]
    fn unbounded_and_contradictory() {
        let g = rationals();
        let h = intersect_lex_interval(&g, None, None);
        assert_eq!(enumerate_words(&h, 9).unwrap(), enumerate_words(&g, 9).unwrap());
        let h = intersect_lex_interval(&g, Some(&Bound::exclusive(w("11"))), Some(&Bound::exclusive(w("01"))));
        assert!(h.productions().is_empty());
    }

    #[test]
    fn two_sided_on_rationals() {
        let g = rationals();
        for (lo, hi) in [("001", "1101"), ("0", "1"), ("01", "01"), ("0001", "011")] {
            for (li, hi_inc) in [(true, true), (false, true), (true, false), (false, false)] {
                let lo = Bound { word: w(lo), inclusive: li };
                let hi = Bound { word: w(hi), inclusive: hi_inc };
                let h = intersect_lex_interval(&g, Some(&lo), Some(&hi));
                assert_eq!(enumerate_words(&h, 9).unwrap(), filtered(&g, Some(&lo), Some(&hi), 9));
            }
        }
    }

    #[test]
    fn reversal() {
        let g = omega_frontier();
        let (h, a) = reverse_order(&g);
        assert_eq!(a.symbols(), ["1", "0"]);
        let orig = enumerate_words(&g, 6).unwrap();
        let mut rev = enumerate_words(&h, 6).unwrap();
        rev.reverse();
        let relabeled: Vec<String> = rev.iter().map(|u| a.render(u)).collect();
        let rendered: Vec<String> = orig.iter().map(|u| OrderedAlphabet::binary().render(u)).collect();
        assert_eq!(relabeled, rendered);
        let single = binary(&["S -> 0 1 1"]);
        let (h, a) = reverse_order(&single);
        let words = enumerate_words(&h, 5).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(a.render(&words[0]), "011");
        assert_eq!(words[0], w("100"));
    }
}
