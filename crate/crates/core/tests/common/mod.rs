#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use algord_core::grammar::{Grammar, GrammarBuilder, Sym};
use algord_core::scheme::{scheme_for_ordinal, scheme_geometric, scheme_product, scheme_sum};
use algord_core::{Ordinal, OrderedAlphabet, RecursionScheme, Word};
use proptest::prelude::*;

pub fn w(s: &str) -> Word {
    OrderedAlphabet::binary().parse_word(s).unwrap()
}

pub fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u16..2, 0..=max_len).prop_map(Word::from_indices)
}

/// Random normal forms: level 0 is `{0, 1, 2}`, level `k+1` sums up to
/// three terms `ω^e·c` with `e` from level `k` and `c < 4`. Level 2 lies
/// below `ω^(ω^3)`.
pub fn ordinal(levels: u32) -> BoxedStrategy<Ordinal> {
    if levels == 0 {
        return (0u64..3).prop_map(Ordinal::finite).boxed();
    }
    prop::collection::vec((ordinal(levels - 1), 1u64..4), 0..4)
        .prop_map(|mut terms| {
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            terms.dedup_by(|a, b| a.0 == b.0);
            Ordinal::from_terms(terms).unwrap()
        })
        .boxed()
}

/// Random grammars over {0,1} with nonterminals `A`, `B`, `C` (start `A`)
/// and right-hand sides of at most three symbols, empty only if
/// `allow_epsilon`.
pub fn grammar(allow_epsilon: bool) -> impl Strategy<Value = Grammar> {
    let min = if allow_epsilon { 0 } else { 1 };
    let sym = prop_oneof!["0", "1", "A", "B", "C"].prop_map(String::from);
    let rhs = prop::collection::vec(sym, min..=3);
    let rules = prop::collection::vec(((0usize..3), rhs), 1..8);
    rules.prop_map(|rules| {
        let names = ["A", "B", "C"];
        let mut b = GrammarBuilder::new(OrderedAlphabet::binary()).start("A");
        for n in names {
            b.declare(n);
        }
        for (lhs, rhs) in &rules {
            let toks: Vec<&str> = rhs.iter().map(String::as_str).collect();
            b = b.rule(names[*lhs], &toks);
        }
        b.build().unwrap()
    })
}

/// Words of `L(g)` up to `max_len` by breadth-first leftmost derivation.
/// Sentential forms are bounded by `form_cap` symbols, which is exact for
/// ε-free grammars when `form_cap ≥ max_len`.
pub fn naive_words(g: &Grammar, max_len: usize, form_cap: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut seen: BTreeSet<Vec<Sym>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<Sym>> = VecDeque::from([vec![Sym::N(g.start())]]);
    while let Some(form) = queue.pop_front() {
        let Some(i) = form.iter().position(|s| matches!(s, Sym::N(_))) else {
            out.insert(form.iter().map(|s| match s {
                Sym::T(a) => *a,
                Sym::N(_) => unreachable!(),
            }).collect());
            continue;
        };
        let Sym::N(x) = form[i] else { unreachable!() };
        for p in g.productions_of(x) {
            let mut next = form[..i].to_vec();
            next.extend_from_slice(&p.rhs);
            next.extend_from_slice(&form[i + 1..]);
            let terminals = next.iter().filter(|s| matches!(s, Sym::T(_))).count();
            if terminals > max_len || next.len() > form_cap {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    out
}

/// Whether `g` derives `u`, as the least fixpoint of "X derives the
/// span `u[i..j]`". Exact with ε-rules, unlike [`naive_words`].
pub fn derives(g: &Grammar, u: &Word) -> bool {
    let n = u.len();
    let letters = u.letters();
    let mut t = vec![vec![vec![false; n + 1]; n + 1]; g.nonterminal_count()];
    loop {
        let mut changed = false;
        for p in g.productions() {
            for i in 0..=n {
                // ends reachable from i after each prefix of the rhs
                let mut ends = vec![false; n + 1];
                ends[i] = true;
                for s in &p.rhs {
                    let mut next = vec![false; n + 1];
                    for k in (i..=n).filter(|&k| ends[k]) {
                        match s {
                            Sym::T(a) => {
                                if k < n && letters[k] == *a {
                                    next[k + 1] = true;
                                }
                            }
                            Sym::N(y) => {
                                for j in k..=n {
                                    next[j] |= t[*y][k][j];
                                }
                            }
                        }
                    }
                    ends = next;
                }
                for j in i..=n {
                    if ends[j] && !t[p.lhs][i][j] {
                        t[p.lhs][i][j] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return t[g.start()][0][n];
        }
    }
}

/// Closure expressions over the two seed schemes.
#[derive(Debug, Clone)]
pub enum Shape {
    Finite(u64),
    Omega,
    Sum(Box<Shape>, Box<Shape>),
    Product(Box<Shape>, Box<Shape>),
    Geometric(Box<Shape>),
}

impl Shape {
    pub fn scheme(&self) -> RecursionScheme {
        match self {
            Shape::Finite(n) => scheme_for_ordinal(&Ordinal::finite(*n)).unwrap(),
            Shape::Omega => scheme_for_ordinal(&Ordinal::omega()).unwrap(),
            Shape::Sum(p, q) => scheme_sum(&p.scheme(), &q.scheme()).unwrap(),
            Shape::Product(p, q) => scheme_product(&p.scheme(), &q.scheme()).unwrap(),
            Shape::Geometric(p) => scheme_geometric(&p.scheme()).unwrap(),
        }
    }
}

pub fn shape() -> impl Strategy<Value = Shape> {
    let leaf = prop_oneof![(1u64..4).prop_map(Shape::Finite), Just(Shape::Omega)];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Shape::Sum(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Shape::Product(Box::new(a), Box::new(b))),
            inner.prop_map(|a| Shape::Geometric(Box::new(a))),
        ]
    })
}
