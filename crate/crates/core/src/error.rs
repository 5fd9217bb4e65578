use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the library. Analyses that can be inconclusive report
/// that through their verdict types; these variants are input errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyAlphabet,
    DuplicateSymbol(String),
    UnknownToken(String),
    LetterOutOfRange { letter: u16, size: usize },
    EmptyWord,
    InconsistentOrder,
    /// A constructed CNF violates the strictly-decreasing-exponent or
    /// positive-coefficient rule.
    MalformedOrdinal,
    OrdinalOutOfRange,
    EmptyRankList,
    ZeroRank,
    ArityConflict { symbol: String, first: usize, second: usize },
    InvalidSymbolName(String),
    EmptyScheme,
    DuplicateFunction(String),
    UnknownSymbol(String),
    ArityMismatch { name: String, expected: usize, found: usize },
    UndefinedFunction(usize),
    ParameterOutOfRange { function: String, index: usize, arity: usize },
    PrincipalHasParameters(String),
    UnknownNonterminal(usize),
    NotEpsilonFree(String),
    NotRecursive(String),
    /// No nonempty pumping prefix was found within the search bound.
    Inconclusive(String),
    NotTranslatedForm(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyAlphabet => write!(f, "alphabet must contain at least one symbol"),
            Error::DuplicateSymbol(s) => write!(f, "duplicate symbol `{s}`"),
            Error::UnknownToken(s) => write!(f, "token `{s}` is not in the alphabet"),
            Error::LetterOutOfRange { letter, size } => {
                write!(f, "letter #{letter} outside an alphabet of {size} symbols")
            }
            Error::EmptyWord => write!(f, "the empty word has no primitive root"),
            Error::InconsistentOrder => {
                write!(f, "comparison oracle is not a strict total order on the keys")
            }
            Error::MalformedOrdinal => write!(
                f,
                "malformed Cantor normal form (exponents must strictly decrease, coefficients be positive)"
            ),
            Error::OrdinalOutOfRange => write!(f, "ordinal is not below w^(w^w)"),
            Error::EmptyRankList => write!(f, "rank list must be nonempty"),
            Error::ZeroRank => write!(f, "geometric-sum bound requires a positive rank"),
            Error::ArityConflict { symbol, first, second } => {
                write!(f, "symbol `{symbol}` declared with arities {first} and {second}")
            }
            Error::InvalidSymbolName(s) => write!(f, "invalid symbol name `{s}`"),
            Error::EmptyScheme => write!(f, "a recursion scheme needs at least one equation"),
            Error::DuplicateFunction(s) => write!(f, "function variable `{s}` defined twice"),
            Error::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            Error::ArityMismatch { name, expected, found } => {
                write!(f, "`{name}` expects {expected} argument(s), found {found}")
            }
            Error::UndefinedFunction(i) => write!(f, "call to undefined function variable #{i}"),
            Error::ParameterOutOfRange { function, index, arity } => write!(
                f,
                "parameter x{index} used in `{function}` which has {arity} parameter(s)"
            ),
            Error::PrincipalHasParameters(s) => {
                write!(f, "principal function variable `{s}` must not have parameters")
            }
            Error::UnknownNonterminal(i) => write!(f, "reference to undeclared nonterminal #{i}"),
            Error::NotEpsilonFree(s) => write!(f, "grammar is not epsilon-free (`{s}` -> ε)"),
            Error::NotRecursive(s) => write!(f, "nonterminal `{s}` is not recursive"),
            Error::Inconclusive(s) => {
                write!(f, "no nonempty pumping prefix of `{s}` found within the bound")
            }
            Error::NotTranslatedForm(s) => {
                write!(f, "grammar is not in translated form: {s}")
            }
        }
    }
}

impl core::error::Error for Error {}
