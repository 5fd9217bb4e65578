use alloc::vec::Vec;

use super::analysis::{default_depth, primitive_root_of, RootVerdict};
use super::{enumerate_all, Grammar};
use crate::error::{Error, Result};
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BucketKind {
    /// Leaves the powers of the root downwards.
    L,
    /// Leaves the powers of the root upwards.
    R,
}

/// Words `u₀ⁿ·u·a·v` of `L(X)` where `u·b` (the pivot) is a prefix of the
/// root `u₀` and `a < b` (kind L) or `a > b` (kind R).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionBucket {
    pub kind: BucketKind,
    pub n: usize,
    pub pivot: Word,
    pub words: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub root: Word,
    /// Sorted by kind, then `n`, then pivot.
    pub buckets: Vec<DecompositionBucket>,
    /// Words that would need `n > n_max`.
    pub overflow: Vec<Word>,
    /// Words that end inside a power of the root and so never leave it.
    pub unclassified: Vec<Word>,
}

impl Decomposition {
    /// The order claims on the sample: for `n < m` every word of `L(X,n)`
    /// is strictly before every word of `L(X,m)`, the R side descends, and
    /// every L word is strictly before every R word. Returns the first
    /// offending pair `(x, y)`, where `x <_s y` was expected.
    pub fn check_order(&self) -> Option<(Word, Word)> {
        let side = |k| self.buckets.iter().filter(move |b| b.kind == k);
        let mut expected: Vec<(&Word, &Word)> = Vec::new();
        for a in side(BucketKind::L) {
            for b in side(BucketKind::L).filter(|b| a.n < b.n) {
                expected.extend(a.words.iter().flat_map(|x| b.words.iter().map(move |y| (x, y))));
            }
            for b in side(BucketKind::R) {
                expected.extend(a.words.iter().flat_map(|x| b.words.iter().map(move |y| (x, y))));
            }
        }
        for a in side(BucketKind::R) {
            for b in side(BucketKind::R).filter(|b| a.n < b.n) {
                expected.extend(b.words.iter().flat_map(|y| a.words.iter().map(move |x| (y, x))));
            }
        }
        expected.into_iter().find(|(x, y)| !x.strictly_before(y)).map(|(x, y)| (x.clone(), y.clone()))
    }

    pub fn bucket(&self, kind: BucketKind, n: usize) -> impl Iterator<Item = &DecompositionBucket> {
        self.buckets.iter().filter(move |b| b.kind == kind && b.n == n)
    }
}

/// Splits the words of `L(X)` up to `max_len` into the buckets
/// `L(X,n,u1)` and `R(X,n,u0)` around the primitive root of `X`'s pumping
/// prefixes (searched at the default depth).
pub fn decompose_lr(g: &Grammar, x: usize, n_max: usize, max_len: usize) -> Result<Decomposition> {
    let root = match primitive_root_of(g, x, default_depth(g))? {
        RootVerdict::Root(r) => r,
        RootVerdict::Violation(..) => return Err(Error::Inconclusive(g.name(x).into())),
    };
    let words = enumerate_all(g, max_len)?.swap_remove(x);
    Ok(decompose_with_root(&words, root, n_max))
}

/// [`decompose_lr`] for a given root and word sample.
pub fn decompose_with_root(words: &[Word], root: Word, n_max: usize) -> Decomposition {
    let r = root.letters();
    let mut buckets: Vec<DecompositionBucket> = Vec::new();
    let mut overflow = Vec::new();
    let mut unclassified = Vec::new();
    for w in words {
        let l = w.letters();
        let mut n = 0;
        while l.len() >= (n + 1) * r.len() && &l[n * r.len()..(n + 1) * r.len()] == r {
            n += 1;
        }
        let rest = &l[n * r.len()..];
        let Some(i) = rest.iter().zip(r).position(|(a, b)| a != b) else {
            unclassified.push(w.clone());
            continue;
        };
        if n > n_max {
            overflow.push(w.clone());
            continue;
        }
        let kind = if rest[i] < r[i] { BucketKind::L } else { BucketKind::R };
        let pivot = Word::from(r[..=i].to_vec());
        match buckets.iter_mut().find(|b| b.kind == kind && b.n == n && b.pivot == pivot) {
            Some(b) => b.words.push(w.clone()),
            None => buckets.push(DecompositionBucket { kind, n, pivot, words: alloc::vec![w.clone()] }),
        }
    }
    buckets.sort_by(|a, b| (a.kind, a.n, &a.pivot).cmp(&(b.kind, b.n, &b.pivot)));
    Decomposition { root, buckets, overflow, unclassified }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::tests::{binary, xy};
    use crate::words::OrderedAlphabet;

    fn w(s: &str) -> Word {
        OrderedAlphabet::binary().parse_word(s).unwrap()
    }

    #[test]
    fn xy_has_only_left_buckets() {
        let d = decompose_lr(&xy(), 0, 2, 8).unwrap();
        assert_eq!(d.root, w("1"));
        assert!(d.bucket(BucketKind::R, 0).next().is_none());
        assert!(d.buckets.iter().all(|b| b.kind == BucketKind::L));
        let zero: Vec<_> = d.bucket(BucketKind::L, 0).collect();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].words, [w("0")]);
        for b in &d.buckets {
            let head = w("1").repeat(b.n).pushed(w("0").letters()[0]);
            assert!(b.words.iter().all(|u| head.is_prefix_of(u)));
        }
        assert!(!d.overflow.is_empty());
        assert!(d.unclassified.is_empty());
        assert_eq!(d.check_order(), None);
    }

    #[test]
    fn right_buckets() {
        let g = binary(&["S -> 0 S 1 | 1"]);
        let d = decompose_lr(&g, 0, 4, 9).unwrap();
        assert_eq!(d.root, w("0"));
        assert!(d.bucket(BucketKind::R, 2).next().is_some());
        assert_eq!(d.check_order(), None);
    }

    #[test]
    fn order_violation_is_reported() {
        let d = decompose_with_root(&[w("0"), w("10"), w("110")], w("1"), 5);
        assert_eq!(d.check_order(), None);
        let d = decompose_with_root(&[w("0"), w("11"), w("1")], w("1"), 5);
        assert_eq!(d.unclassified, [w("11"), w("1")]);
        let mut d = decompose_with_root(&[w("0"), w("10")], w("1"), 5);
        d.buckets[1].words.push(w("00"));
        assert!(d.check_order().is_some());
    }
}
