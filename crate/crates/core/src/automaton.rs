//! Small complete-or-partial DFAs over letter indices.
//!
//! Used for the lexicographic half-line recognizers behind interval
//! intersection and for the rationals language `(0+11)*01`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::words::{Letter, Word};

/// A deterministic automaton with partial transitions. Missing transitions
/// reject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    letters: usize,
    start: usize,
    delta: Vec<Option<usize>>,
    accepting: Vec<bool>,
}

/// Which side of a lexicographic bound a recognizer accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Words above the bound word.
    Above,
    /// Words below the bound word.
    Below,
}

impl Dfa {
    /// `delta[state][letter]`; every target must be a valid state.
    pub fn new(letters: usize, start: usize, delta: Vec<Vec<Option<usize>>>, accepting: Vec<bool>) -> Self {
        assert_eq!(delta.len(), accepting.len(), "one acceptance flag per state");
        assert!(start < delta.len(), "start state out of range");
        let states = delta.len();
        let mut flat = Vec::with_capacity(states * letters);
        for row in delta {
            assert_eq!(row.len(), letters, "one transition slot per letter");
            for t in row {
                assert!(t.map_or(true, |t| t < states), "transition target out of range");
                flat.push(t);
            }
        }
        Dfa { letters, start, delta: flat, accepting }
    }

    /// Accepts every word over `letters` symbols.
    pub fn universal(letters: usize) -> Self {
        Dfa::new(letters, 0, vec![vec![Some(0); letters]], vec![true])
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        let a = letter.index();
        if a >= self.letters {
            return None;
        }
        self.delta[state * self.letters + a]
    }

    pub fn run(&self, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(self.start, |s, &a| self.step(s, a))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.run(word).is_some_and(|s| self.accepting[s])
    }

    /// Product automaton recognizing the intersection.
    pub fn intersect(&self, other: &Dfa) -> Dfa {
        assert_eq!(self.letters, other.letters, "intersection needs a shared alphabet");
        let n2 = other.states();
        let pair = |p: usize, q: usize| p * n2 + q;
        let mut delta = Vec::with_capacity(self.states() * n2);
        let mut accepting = Vec::with_capacity(self.states() * n2);
        for p in 0..self.states() {
            for q in 0..n2 {
                let row = (0..self.letters)
                    .map(|a| {
                        let a = Letter::new(a as u16);
                        Some(pair(self.step(p, a)?, other.step(q, a)?))
                    })
                    .collect();
                delta.push(row);
                accepting.push(self.accepting[p] && other.accepting[q]);
            }
        }
        Dfa::new(self.letters, pair(self.start, other.start), delta, accepting)
    }

    /// The lexicographically least among the shortest accepted words.
    pub fn shortest_accepted(&self) -> Option<Word> {
        // distance from each state to acceptance, by backward BFS
        let n = self.states();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for a in 0..self.letters {
                if let Some(t) = self.delta[s * self.letters + a] {
                    preds[t].push(s);
                }
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if self.accepting[s] {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(t) = queue.pop_front() {
            for &s in &preds[t] {
                if dist[s] == usize::MAX {
                    dist[s] = dist[t] + 1;
                    queue.push_back(s);
                }
            }
        }
        if dist[self.start] == usize::MAX {
            return None;
        }
        let mut word = Vec::with_capacity(dist[self.start]);
        let mut s = self.start;
        while dist[s] > 0 {
            let (a, t) = (0..self.letters)
                .find_map(|a| {
                    let t = self.delta[s * self.letters + a]?;
                    (dist[t] < dist[s]).then_some((a, t))
                })
                .expect("a state at finite distance has a successor one step closer");
            word.push(Letter::new(a as u16));
            s = t;
        }
        Some(Word::from(word))
    }

    /// Recognizer of `{u : u > bound}` (or `>=` when `inclusive`) for
    /// [`Side::Above`], dually for [`Side::Below`], under the lexicographic
    /// order. States `0..=|bound|` track how much of the bound has been
    /// matched; two sinks record a decided comparison.
    pub fn lex_half_line(letters: usize, bound: &Word, side: Side, inclusive: bool) -> Dfa {
        let m = bound.len();
        let above = m + 1;
        let below = m + 2;
        let mut delta = Vec::with_capacity(m + 3);
        for i in 0..=m {
            let row = (0..letters)
                .map(|a| {
                    if i == m {
                        // proper extensions of the bound lie above it
                        return Some(above);
                    }
                    let b = bound.letters()[i].index();
                    Some(match a.cmp(&b) {
                        core::cmp::Ordering::Equal => i + 1,
                        core::cmp::Ordering::Greater => above,
                        core::cmp::Ordering::Less => below,
                    })
                })
                .collect();
            delta.push(row);
        }
        delta.push(vec![Some(above); letters]);
        delta.push(vec![Some(below); letters]);
        let accepting = (0..m + 3)
            .map(|s| match side {
                Side::Above => s == above || (inclusive && s == m),
                // proper prefixes of the bound lie below it
                Side::Below => s == below || s < m || (inclusive && s == m),
            })
            .collect();
        Dfa::new(letters, 0, delta, accepting)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(bits: &str) -> Word {
        Word::from_indices(bits.bytes().map(|b| (b - b'0') as u16))
    }

    #[test]
    fn half_line_matches_lex_order() {
        let bound = w("101");
        let all: Vec<Word> = (0..=5)
            .flat_map(|n| (0..1u32 << n).map(move |k| Word::from_indices((0..n).rev().map(|i| ((k >> i) & 1) as u16))))
            .collect();
        for (side, inclusive) in [(Side::Above, false), (Side::Above, true), (Side::Below, false), (Side::Below, true)] {
            let dfa = Dfa::lex_half_line(2, &bound, side, inclusive);
            for u in &all {
                let expected = match (side, inclusive) {
                    (Side::Above, false) => *u > bound,
                    (Side::Above, true) => *u >= bound,
                    (Side::Below, false) => *u < bound,
                    (Side::Below, true) => *u <= bound,
                };
                assert_eq!(dfa.accepts(u), expected, "{side:?} {inclusive} {u:?}");
            }
        }
    }

    #[test]
    fn shortest_is_lex_first() {
        let lower = Dfa::lex_half_line(2, &w("01"), Side::Above, false);
        // shortest word above "01": "1"
        assert_eq!(lower.shortest_accepted(), Some(w("1")));
        let upper = Dfa::lex_half_line(2, &w("01"), Side::Below, false);
        assert_eq!(upper.shortest_accepted(), Some(w("")));
        let both = lower.intersect(&Dfa::lex_half_line(2, &w("1"), Side::Below, false));
        assert_eq!(both.shortest_accepted(), Some(w("010")));
    }

    #[test]
    fn empty_intersection() {
        let a = Dfa::lex_half_line(2, &w("1"), Side::Above, false);
        let b = Dfa::lex_half_line(2, &w("0"), Side::Below, true);
        assert_eq!(a.intersect(&b).shortest_accepted(), None);
    }
}
