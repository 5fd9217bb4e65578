use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Grammar, Sym};
use crate::error::{Error, Result};
use crate::words::Word;

/// `table[x][n]`: the words of length `n` derivable from `x`.
type Table = Vec<Vec<BTreeSet<Word>>>;

/// The words of length `≤ max_len` of every nonterminal, each list sorted
/// lexicographically. Built bottom-up by length; within one length a
/// fixpoint handles chain productions.
pub fn enumerate_all(g: &Grammar, max_len: usize) -> Result<Vec<Vec<Word>>> {
    if let Some(p) = g.productions().iter().find(|p| p.is_epsilon()) {
        return Err(Error::NotEpsilonFree(String::from(g.name(p.lhs))));
    }
    let n = g.nonterminal_count();
    let mut table: Table = vec![vec![BTreeSet::new(); max_len + 1]; n];
    for len in 1..=max_len {
        loop {
            let mut changed = false;
            for p in g.productions() {
                if p.rhs.len() > len {
                    continue;
                }
                let mut found = Vec::new();
                combine(&table, &p.rhs, len, Word::empty(), &mut found);
                for w in found {
                    changed |= table[p.lhs][len].insert(w);
                }
            }
            if !changed {
                break;
            }
        }
    }
    Ok(table.into_iter().map(|per_len| {
        let mut all: Vec<Word> = per_len.into_iter().flatten().collect();
        all.sort();
        all
    }).collect())
}

/// Extends `prefix` by words of `rhs` whose total length is `remaining`;
/// every symbol contributes at least one letter.
fn combine(table: &Table, rhs: &[Sym], remaining: usize, prefix: Word, out: &mut Vec<Word>) {
    let Some((first, rest)) = rhs.split_first() else {
        if remaining == 0 {
            out.push(prefix);
        }
        return;
    };
    if remaining < rhs.len() {
        return;
    }
    match *first {
        Sym::T(a) => combine(table, rest, remaining - 1, prefix.pushed(a), out),
        Sym::N(y) => {
            for l in 1..=remaining - rest.len() {
                for w in &table[y][l] {
                    combine(table, rest, remaining - l, prefix.concat(w), out);
                }
            }
        }
    }
}

/// `L(G)` up to length `max_len`, sorted lexicographically.
pub fn enumerate_words(g: &Grammar, max_len: usize) -> Result<Vec<Word>> {
    Ok(enumerate_all(g, max_len)?.swap_remove(g.start()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::tests::{binary, omega_frontier, rationals};
    use crate::grammar::{normalize, Grammar};
    use crate::words::{in_rationals, OrderedAlphabet};

    fn render(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| OrderedAlphabet::binary().render(w)).collect()
    }

    #[test]
    fn omega_words() {
        assert_eq!(render(&enumerate_words(&omega_frontier(), 4).unwrap()), ["0", "10", "110", "1110"]);
    }

    #[test]
    fn rationals_words() {
        // (0+11)*01 up to length 4, brute force over all binary words
        let words = enumerate_words(&rationals(), 4).unwrap();
        let mut brute: Vec<Word> = (0..=4u32)
            .flat_map(|n| (0..1u32 << n).map(move |k| Word::from_indices((0..n).rev().map(|i| ((k >> i) & 1) as u16))))
            .filter(in_rationals)
            .collect();
        brute.sort();
        assert_eq!(words, brute);
        assert_eq!(render(&words), ["0001", "001", "01", "1101"]);
    }

    #[test]
    fn empty_and_epsilon() {
        let g = Grammar::empty(OrderedAlphabet::binary(), "S");
        assert!(enumerate_words(&g, 5).unwrap().is_empty());
        let g = binary(&["S -> 0 | ε"]);
        assert_eq!(enumerate_words(&g, 3), Err(Error::NotEpsilonFree("S".into())));
        assert_eq!(render(&enumerate_words(&normalize(&g).0, 3).unwrap()), ["0"]);
    }

    #[test]
    fn chains_within_one_length() {
        let g = binary(&["S -> A | 1", "A -> B", "B -> 0 | S 0"]);
        assert_eq!(render(&enumerate_words(&g, 3).unwrap()), ["0", "00", "000", "1", "10", "100"]);
    }
}
