//! Words over finite linearly ordered alphabets.
//!
//! A [`Letter`] is a position in an [`OrderedAlphabet`]; comparing letters
//! compares positions. [`Word`] derives its ordering from the letter
//! sequence, which is exactly the lexicographic order `<_ℓ`: a proper prefix
//! comes first, otherwise the first differing letter decides.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::automaton::{Dfa, Side};
use crate::error::{Error, Result};

/// Index of a symbol in its alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub const fn new(index: u16) -> Self {
        Letter(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite word. The derived `Ord` is the lexicographic order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_indices<I: IntoIterator<Item = u16>>(indices: I) -> Self {
        Word(indices.into_iter().map(Letter).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn pushed(&self, letter: Letter) -> Word {
        let mut out = self.clone();
        out.push(letter);
        out
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `self <_s other`: the words differ at a common position and `self`
    /// has the smaller letter there.
    pub fn strictly_before(&self, other: &Word) -> bool {
        matches!(lex_compare(self, other), LexOrdering::LessStrict)
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|l| l.0 < 10) {
            f.write_str("\"")?;
            for l in &self.0 {
                write!(f, "{}", l.0)?;
            }
            f.write_str("\"")
        } else {
            f.debug_list().entries(self.0.iter().map(|l| l.0)).finish()
        }
    }
}

/// Separator between tokens when an alphabet has multi-character symbols.
pub const TOKEN_SEPARATOR: char = '·';

/// A finite nonempty sequence of distinct symbols; position is order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedAlphabet {
    symbols: Vec<String>,
}

impl OrderedAlphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::LetterOutOfRange { letter: u16::MAX, size: symbols.len() });
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains(TOKEN_SEPARATOR) || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidSymbolName(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(OrderedAlphabet { symbols })
    }

    /// `{0 < 1}`.
    pub fn binary() -> Self {
        OrderedAlphabet { symbols: alloc::vec!["0".to_owned(), "1".to_owned()] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len()).map(|i| Letter(i as u16))
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.index()]
    }

    pub fn letter(&self, token: &str) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|s| s == token)
            .map(|i| Letter(i as u16))
            .ok_or_else(|| Error::UnknownToken(token.to_owned()))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.symbols.len()
    }

    pub fn check(&self, word: &Word) -> Result<()> {
        match word.0.iter().find(|l| !self.contains(**l)) {
            Some(l) => Err(Error::LetterOutOfRange { letter: l.0, size: self.len() }),
            None => Ok(()),
        }
    }

    /// Every symbol is a single character, so words render without
    /// separators.
    pub fn is_compact(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Compact alphabets read one character per letter; others split on
    /// [`TOKEN_SEPARATOR`]. The empty string (or `ε`) is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        if self.is_compact() {
            let mut buf = [0u8; 4];
            text.chars().map(|c| self.letter(c.encode_utf8(&mut buf))).collect::<Result<Vec<_>>>().map(Word)
        } else {
            text.split(TOKEN_SEPARATOR).map(|t| self.letter(t.trim())).collect::<Result<Vec<_>>>().map(Word)
        }
    }

    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "ε".to_owned();
        }
        let mut out = String::new();
        for (i, l) in word.0.iter().enumerate() {
            if i > 0 && !self.is_compact() {
                out.push(TOKEN_SEPARATOR);
            }
            out.push_str(self.symbol(*l));
        }
        out
    }

    /// The same symbols in the opposite order.
    pub fn reversed(&self) -> Self {
        OrderedAlphabet { symbols: self.symbols.iter().rev().cloned().collect() }
    }
}

/// Verdict of the lexicographic comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexOrdering {
    LessPrefix,
    LessStrict,
    Equal,
    GreaterPrefix,
    GreaterStrict,
}

impl LexOrdering {
    pub fn is_less(self) -> bool {
        matches!(self, LexOrdering::LessPrefix | LexOrdering::LessStrict)
    }

    pub fn is_greater(self) -> bool {
        matches!(self, LexOrdering::GreaterPrefix | LexOrdering::GreaterStrict)
    }

    pub fn ordering(self) -> Ordering {
        match self {
            LexOrdering::LessPrefix | LexOrdering::LessStrict => Ordering::Less,
            LexOrdering::Equal => Ordering::Equal,
            LexOrdering::GreaterPrefix | LexOrdering::GreaterStrict => Ordering::Greater,
        }
    }
}

pub fn lex_compare(u: &Word, v: &Word) -> LexOrdering {
    match u.0.iter().zip(&v.0).find(|(a, b)| a != b) {
        Some((a, b)) if a < b => LexOrdering::LessStrict,
        Some(_) => LexOrdering::GreaterStrict,
        None => match u.len().cmp(&v.len()) {
            Ordering::Less => LexOrdering::LessPrefix,
            Ordering::Equal => LexOrdering::Equal,
            Ordering::Greater => LexOrdering::GreaterPrefix,
        },
    }
}

/// [`lex_compare`] after checking both words against the alphabet.
pub fn lex_compare_in(u: &Word, v: &Word, alphabet: &OrderedAlphabet) -> Result<LexOrdering> {
    alphabet.check(u)?;
    alphabet.check(v)?;
    Ok(lex_compare(u, v))
}

/// Position of two words in the prefix partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefixOrdering {
    ProperPrefix,
    Equal,
    Extends,
    Incomparable,
}

pub fn prefix_compare(u: &Word, v: &Word) -> PrefixOrdering {
    match lex_compare(u, v) {
        LexOrdering::LessPrefix => PrefixOrdering::ProperPrefix,
        LexOrdering::Equal => PrefixOrdering::Equal,
        LexOrdering::GreaterPrefix => PrefixOrdering::Extends,
        LexOrdering::LessStrict | LexOrdering::GreaterStrict => PrefixOrdering::Incomparable,
    }
}

/// The unique primitive `v` and `k ≥ 1` with `u = v^k`.
pub fn primitive_root(u: &Word) -> Result<(Word, usize)> {
    let n = u.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    // the shortest period dividing n gives the root
    let p = (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (p..n).all(|i| u.0[i] == u.0[i - p]))
        .unwrap_or(n);
    Ok((u.prefix(p), n / p))
}

/// Whether `u = root^k` for some `k ≥ 1`.
pub fn is_power_of(u: &Word, root: &Word) -> bool {
    !root.is_empty()
        && !u.is_empty()
        && u.len() % root.len() == 0
        && u.0.chunks(root.len()).all(|c| c == root.0.as_slice())
}

/// The lexicographically least pair `(u, uv)` with `v` nonempty, or `None`
/// if the set is prefix-free.
pub fn is_prefix_free<'a, I>(words: I) -> Option<(Word, Word)>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut sorted: Vec<&Word> = words.into_iter().collect();
    sorted.sort();
    sorted.dedup();
    // the extensions of u form a block right after u
    sorted
        .windows(2)
        .find(|w| w[0].is_prefix_of(w[1]))
        .map(|w| (w[0].clone(), w[1].clone()))
}

/// Membership in `(0+11)*01` over the binary alphabet.
pub fn in_rationals(word: &Word) -> bool {
    Dfa::rationals().accepts(word)
}

impl Dfa {
    /// Recognizer of `(0+11)*01`.
    pub fn rationals() -> Dfa {
        // T: a 0 that may open the final 01; V: the final 01, or 0 and the
        // first half of 11
        // S -0-> T, S -1-> U, T -0-> T, T -1-> V, U -1-> S, V -1-> S
        Dfa::new(
            2,
            0,
            alloc::vec![
                alloc::vec![Some(1), Some(2)],
                alloc::vec![Some(1), Some(3)],
                alloc::vec![None, Some(0)],
                alloc::vec![None, Some(0)],
            ],
            alloc::vec![false, false, false, true],
        )
    }
}

/// Greedy order embedding of `keys` (in presentation order) into the
/// rationals language: each key receives the lexicographically first among
/// the shortest words of `(0+11)*01` lying strictly between the words of its
/// already placed neighbours.
///
/// `less` must be a strict total order on the keys; a pair reported both
/// ways, neither way, or a cycle yields [`Error::InconsistentOrder`].
pub fn embed_into_rationals<K, F>(keys: &[K], mut less: F) -> Result<Vec<Word>>
where
    F: FnMut(&K, &K) -> bool,
{
    let rationals = Dfa::rationals();
    let mut out: Vec<Word> = Vec::with_capacity(keys.len());
    for (n, key) in keys.iter().enumerate() {
        let mut lower: Option<&Word> = None;
        let mut upper: Option<&Word> = None;
        for (prev, word) in keys[..n].iter().zip(&out) {
            match (less(prev, key), less(key, prev)) {
                (true, false) => {
                    if lower.map_or(true, |l| word > l) {
                        lower = Some(word);
                    }
                }
                (false, true) => {
                    if upper.map_or(true, |u| word < u) {
                        upper = Some(word);
                    }
                }
                _ => return Err(Error::InconsistentOrder),
            }
        }
        if let (Some(l), Some(u)) = (lower, upper) {
            if l >= u {
                return Err(Error::InconsistentOrder);
            }
        }
        let mut dfa = rationals.clone();
        if let Some(l) = lower {
            dfa = dfa.intersect(&Dfa::lex_half_line(2, l, Side::Above, false));
        }
        if let Some(u) = upper {
            dfa = dfa.intersect(&Dfa::lex_half_line(2, u, Side::Below, false));
        }
        let word = dfa
            .shortest_accepted()
            .expect("the rationals language is dense without endpoints");
        out.push(word);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn w(s: &str) -> Word {
        OrderedAlphabet::binary().parse_word(s).unwrap()
    }

    #[test]
    fn lex_verdicts() {
        assert_eq!(lex_compare(&w("0"), &w("01")), LexOrdering::LessPrefix);
        assert_eq!(lex_compare(&w("001"), &w("01")), LexOrdering::LessStrict);
        assert_eq!(lex_compare(&w("01"), &w("01")), LexOrdering::Equal);
        assert_eq!(lex_compare(&w("01"), &w("0")), LexOrdering::GreaterPrefix);
        assert_eq!(lex_compare(&w("1"), &w("01")), LexOrdering::GreaterStrict);
    }

    #[test]
    fn lex_rejects_foreign_letters() {
        let a = OrderedAlphabet::binary();
        let bad = Word::from_indices([0, 2]);
        assert!(lex_compare_in(&bad, &w("0"), &a).is_err());
        assert!(a.parse_word("012").is_err());
    }

    #[test]
    fn prefix_verdicts() {
        assert_eq!(prefix_compare(&w("1"), &w("11")), PrefixOrdering::ProperPrefix);
        assert_eq!(prefix_compare(&w("0"), &w("11")), PrefixOrdering::Incomparable);
        assert_eq!(prefix_compare(&w("11"), &w("1")), PrefixOrdering::Extends);
        assert_eq!(prefix_compare(&w("11"), &w("11")), PrefixOrdering::Equal);
    }

    #[test]
    fn roots() {
        assert_eq!(primitive_root(&w("0101")).unwrap(), (w("01"), 2));
        assert_eq!(primitive_root(&w("011")).unwrap(), (w("011"), 1));
        assert_eq!(primitive_root(&w("0")).unwrap(), (w("0"), 1));
        assert_eq!(primitive_root(&w("000000")).unwrap(), (w("0"), 6));
        assert_eq!(primitive_root(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn prefix_freeness() {
        let set = [w("0"), w("10"), w("110")];
        assert_eq!(is_prefix_free(&set), None);
        let set = [w("011"), w("01")];
        assert_eq!(is_prefix_free(&set), Some((w("01"), w("011"))));
        assert_eq!(is_prefix_free(&[]), None);
        // the least witness, not the first found
        let set = [w("1"), w("10"), w("0"), w("011"), w("01")];
        assert_eq!(is_prefix_free(&set), Some((w("0"), w("01"))));
    }

    #[test]
    fn rationals_membership() {
        for s in ["01", "001", "1101", "0001", "11001", "0111101"] {
            assert!(in_rationals(&w(s)), "{s}");
        }
        for s in ["", "0", "1", "011", "101", "0110", "111"] {
            assert!(!in_rationals(&w(s)), "{s}");
        }
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(embed_into_rationals(&[0], |a, b| a < b).unwrap(), vec![w("01")]);
        // p1 < p0
        assert_eq!(embed_into_rationals(&[1, 0], |a, b| a < b).unwrap(), vec![w("01"), w("001")]);
        // p0 < p1
        assert_eq!(embed_into_rationals(&[0, 1], |a, b| a < b).unwrap(), vec![w("01"), w("1101")]);
    }

    #[test]
    fn embedding_rejects_bad_oracles() {
        assert_eq!(embed_into_rationals(&[0, 1], |_, _| true), Err(Error::InconsistentOrder));
        assert_eq!(embed_into_rationals(&[0, 1], |_, _| false), Err(Error::InconsistentOrder));
        // a 3-cycle: 0 < 1 < 2 < 0
        let cyc = |a: &u8, b: &u8| (a + 1) % 3 == *b;
        assert_eq!(embed_into_rationals(&[0u8, 1, 2], cyc), Err(Error::InconsistentOrder));
    }

    fn naive_embedding(keys: &[u32]) -> Vec<Word> {
        // shortlex walk of (0+11)*01, first candidate consistent with all
        // previous placements
        let mut out: Vec<Word> = Vec::new();
        for (n, k) in keys.iter().enumerate() {
            let mut found = None;
            'len: for len in 0..=24 {
                for bits in 0..(1u32 << len) {
                    let cand = Word::from_indices((0..len).rev().map(|i| ((bits >> i) & 1) as u16));
                    if !in_rationals(&cand) || out.contains(&cand) {
                        continue;
                    }
                    let ok = keys[..n].iter().zip(&out).all(|(p, pw)| (p < k) == (pw < &cand));
                    if ok {
                        found = Some(cand);
                        break 'len;
                    }
                }
            }
            out.push(found.expect("found within 24 letters"));
        }
        out
    }

    #[test]
    fn embedding_matches_shortlex_walk() {
        let orders: [&[u32]; 5] = [&[3, 1, 4, 0, 2], &[0, 1, 2, 3, 4, 5], &[5, 4, 3, 2, 1, 0], &[2, 0, 1], &[4, 6, 1, 3, 0, 5, 2]];
        for keys in orders {
            assert_eq!(embed_into_rationals(keys, |a, b| a < b).unwrap(), naive_embedding(keys), "{keys:?}");
        }
    }

    #[test]
    fn rendering() {
        let a = OrderedAlphabet::new(["+.0", "+.1", "𝟏"]).unwrap();
        assert!(!a.is_compact());
        let word = Word::from_indices([1, 0, 2]);
        assert_eq!(a.render(&word), "+.1·+.0·𝟏");
        assert_eq!(a.parse_word("+.1·+.0·𝟏").unwrap(), word);
        let b = OrderedAlphabet::new(["0", "1", "𝟏"]).unwrap();
        assert_eq!(b.render(&word), "10𝟏");
        assert_eq!(b.parse_word("10𝟏").unwrap(), word);
        assert_eq!(b.render(&Word::empty()), "ε");
        assert_eq!(OrderedAlphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
        assert_eq!(OrderedAlphabet::new(["a", "a"]), Err(Error::DuplicateSymbol("a".into())));
    }
}
