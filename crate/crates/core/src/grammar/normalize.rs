use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Grammar, Production, Sym};
use crate::words::Word;

/// What [`normalize`] changed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NormalizeReport {
    /// The start symbol was nullable, so `ε ∈ L(G)`; the result generates
    /// `L(G) ∖ {ε}`.
    pub contains_empty_word: bool,
    /// Nonterminals removed as non-generating or unreachable, in original
    /// order.
    pub dropped: Vec<String>,
    pub epsilon_productions_removed: usize,
    pub unit_productions_removed: usize,
}

fn nullable(g: &Grammar) -> Vec<bool> {
    let mut null = vec![false; g.nonterminal_count()];
    loop {
        let mut changed = false;
        for p in g.productions() {
            if !null[p.lhs] && p.rhs.iter().all(|s| matches!(*s, Sym::N(y) if null[y])) {
                null[p.lhs] = true;
                changed = true;
            }
        }
        if !changed {
            return null;
        }
    }
}

fn push_unique(out: &mut Vec<Production>, p: Production) {
    if !out.contains(&p) {
        out.push(p);
    }
}

/// Every way of dropping nullable occurrences, in a fixed order, minus the
/// empty right-hand side.
fn expand_nullable(p: &Production, null: &[bool], out: &mut Vec<Production>) {
    let mut partial: Vec<Vec<Sym>> = vec![Vec::new()];
    for s in &p.rhs {
        let optional = matches!(*s, Sym::N(y) if null[y]);
        let mut next = Vec::with_capacity(partial.len() * 2);
        for pre in &partial {
            let mut keep = pre.clone();
            keep.push(*s);
            next.push(keep);
            if optional {
                next.push(pre.clone());
            }
        }
        partial = next;
    }
    for rhs in partial {
        if !rhs.is_empty() {
            push_unique(out, Production { lhs: p.lhs, rhs });
        }
    }
}

/// Removes `ε`-productions (recording whether `ε ∈ L(G)`), chain
/// productions `X -> Y`, non-generating and unreachable nonterminals, in
/// that order. Surviving nonterminals and productions keep their relative
/// order. A start symbol generating nothing yields the canonical empty
/// grammar.
pub fn normalize(g: &Grammar) -> (Grammar, NormalizeReport) {
    let n = g.nonterminal_count();
    let mut report = NormalizeReport::default();

    let null = nullable(g);
    report.contains_empty_word = null[g.start()];
    let mut eps_free = Vec::new();
    for p in g.productions() {
        if p.is_epsilon() {
            report.epsilon_productions_removed += 1;
        } else {
            expand_nullable(p, &null, &mut eps_free);
        }
    }

    // chain closure: X inherits the non-chain productions of every Y with
    // X =>+ Y through chains, in depth-first order
    let mut by_lhs: Vec<Vec<&Production>> = vec![Vec::new(); n];
    for p in &eps_free {
        by_lhs[p.lhs].push(p);
    }
    let mut chain_free = Vec::new();
    for x in 0..n {
        let mut seen = vec![false; n];
        seen[x] = true;
        let mut order = Vec::new();
        fn visit(y: usize, by_lhs: &[Vec<&Production>], seen: &mut [bool], order: &mut Vec<usize>) {
            order.push(y);
            for p in &by_lhs[y] {
                if let Some(z) = p.unit_target() {
                    if !seen[z] {
                        seen[z] = true;
                        visit(z, by_lhs, seen, order);
                    }
                }
            }
        }
        visit(x, &by_lhs, &mut seen, &mut order);
        for y in order {
            for p in &by_lhs[y] {
                if p.unit_target().is_none() {
                    push_unique(&mut chain_free, Production { lhs: x, rhs: p.rhs.clone() });
                }
            }
        }
    }
    report.unit_productions_removed = eps_free.iter().filter(|p| p.unit_target().is_some()).count();
    // keep productions grouped in the order of their left-hand sides' first
    // appearance in the input
    let mut grouped: Vec<Production> = Vec::with_capacity(chain_free.len());
    for x in 0..n {
        grouped.extend(chain_free.iter().filter(|p| p.lhs == x).cloned());
    }

    let mut generating = vec![false; n];
    loop {
        let mut changed = false;
        for p in &grouped {
            if !generating[p.lhs] && p.rhs.iter().all(|s| matches!(*s, Sym::T(_)) || matches!(*s, Sym::N(y) if generating[y])) {
                generating[p.lhs] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let useful_prods: Vec<Production> = grouped
        .into_iter()
        .filter(|p| generating[p.lhs] && p.rhs.iter().all(|s| !matches!(*s, Sym::N(y) if !generating[y])))
        .collect();

    if !generating[g.start()] {
        report.dropped =
            (0..n).filter(|&x| x != g.start()).map(|x| g.name(x).into()).collect();
        return (Grammar::empty(g.terminals().clone(), g.name(g.start())), report);
    }

    let mut reachable = vec![false; n];
    reachable[g.start()] = true;
    let mut stack = vec![g.start()];
    while let Some(x) = stack.pop() {
        for p in useful_prods.iter().filter(|p| p.lhs == x) {
            for s in &p.rhs {
                if let Sym::N(y) = *s {
                    if !reachable[y] {
                        reachable[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
    }
    let keep: Vec<bool> = (0..n).map(|x| reachable[x] && generating[x]).collect();
    report.dropped = (0..n).filter(|&x| !keep[x]).map(|x| g.name(x).into()).collect();
    (restrict(g, &keep, useful_prods), report)
}

/// Renumbers the kept nonterminals in order.
fn restrict(g: &Grammar, keep: &[bool], productions: Vec<Production>) -> Grammar {
    let mut index = vec![usize::MAX; keep.len()];
    let mut names = Vec::new();
    for (x, k) in keep.iter().enumerate() {
        if *k {
            index[x] = names.len();
            names.push(g.name(x).into());
        }
    }
    let productions = productions
        .into_iter()
        .filter(|p| keep[p.lhs])
        .map(|p| Production {
            lhs: index[p.lhs],
            rhs: p.rhs.into_iter().map(|s| match s {
                Sym::N(y) => Sym::N(index[y]),
                t => t,
            }).collect(),
        })
        .collect();
    Grammar::new(g.terminals().clone(), names, productions, index[g.start()])
        .expect("restriction of a valid grammar is valid")
}

/// The unique word of each nonterminal whose language is a singleton.
/// Recursive nonterminals of a normalized grammar have infinite languages,
/// so a bottom-up fixpoint is exact.
pub(crate) fn singleton_words(g: &Grammar) -> Vec<Option<Word>> {
    let n = g.nonterminal_count();
    let mut word: Vec<Option<Word>> = vec![None; n];
    let mut blocked = vec![false; n];
    loop {
        let mut changed = false;
        for x in 0..n {
            if word[x].is_some() || blocked[x] {
                continue;
            }
            let mut candidate: Option<Word> = None;
            let mut ok = true;
            let mut ready = true;
            for p in g.productions_of(x) {
                let mut w = Word::empty();
                for s in &p.rhs {
                    match *s {
                        Sym::T(a) => w.push(a),
                        Sym::N(y) => match &word[y] {
                            Some(v) => w.extend_from(v),
                            None if blocked[y] => ok = false,
                            None => ready = false,
                        },
                    }
                }
                if !ok || !ready {
                    break;
                }
                match &candidate {
                    None => candidate = Some(w),
                    Some(c) if *c == w => {}
                    Some(_) => ok = false,
                }
            }
            if !ok || (ready && candidate.is_none()) {
                blocked[x] = true;
                changed = true;
            } else if ready {
                word[x] = candidate;
                changed = true;
            }
        }
        if !changed {
            return word;
        }
    }
}

/// Replaces every occurrence of a non-start nonterminal with a singleton
/// language by its word, then drops what became unreachable. Returns the
/// inlined names.
pub fn inline_singletons(g: &Grammar) -> (Grammar, Vec<String>) {
    let words = singleton_words(g);
    let inlined: Vec<usize> = (0..g.nonterminal_count()).filter(|&x| x != g.start() && words[x].is_some()).collect();
    if inlined.is_empty() {
        return (g.clone(), Vec::new());
    }
    let mut productions = Vec::new();
    for p in g.productions() {
        if inlined.contains(&p.lhs) {
            continue;
        }
        let mut rhs = Vec::new();
        for s in &p.rhs {
            match *s {
                Sym::N(y) if inlined.contains(&y) => {
                    rhs.extend(words[y].as_ref().unwrap().letters().iter().map(|a| Sym::T(*a)))
                }
                s => rhs.push(s),
            }
        }
        push_unique(&mut productions, Production { lhs: p.lhs, rhs });
    }
    let keep: Vec<bool> = (0..g.nonterminal_count()).map(|x| !inlined.contains(&x)).collect();
    let names = inlined.iter().map(|&x| g.name(x).into()).collect();
    let (out, _) = normalize(&restrict(g, &keep, productions));
    (out, names)
}
