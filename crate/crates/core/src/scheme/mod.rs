//! First-order recursion schemes over ranked alphabets.
//!
//! A scheme is a list of equations `F_i(x_0, …, x_{k_i-1}) = t_i`; the first
//! one is principal and has no parameters. Its meaning is the least solution,
//! approximated here by finite Kleene unfoldings ([`unfold`]).

mod closure;
mod tree;

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub use closure::{scheme_for_ordinal, scheme_geometric, scheme_product, scheme_sum};
pub use tree::{unfold, BranchAlphabet, BranchKind, Node, PartialTree, OMEGA};

/// The constant `𝟏` of Δ, written `1` in scheme text.
pub const ONE: &str = "1";
/// The binary symbol of Δ.
pub const PLUS: &str = "+";

/// Symbols with arities, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedAlphabet {
    entries: Vec<(String, usize)>,
}

impl RankedAlphabet {
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out = RankedAlphabet { entries: Vec::new() };
        for (name, arity) in entries {
            out.insert(name.into(), arity)?;
        }
        if out.entries.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(out)
    }

    /// Δ = {+ (binary), 𝟏 (nullary)}.
    pub fn delta() -> Self {
        RankedAlphabet { entries: alloc::vec![(PLUS.to_owned(), 2), (ONE.to_owned(), 0)] }
    }

    fn insert(&mut self, name: String, arity: usize) -> Result<()> {
        if !is_symbol_name(&name) {
            return Err(Error::InvalidSymbolName(name));
        }
        match self.arity(&name) {
            Some(a) if a == arity => Err(Error::DuplicateSymbol(name)),
            Some(a) => Err(Error::ArityConflict { symbol: name, first: a, second: arity }),
            None => {
                self.entries.push((name, arity));
                Ok(())
            }
        }
    }

    pub fn entries(&self) -> &[(String, usize)] {
        &self.entries
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, a)| *a)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.arity(name).is_some()
    }

    /// `r(Σ)`, the largest arity.
    pub fn max_rank(&self) -> usize {
        self.entries.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }

    pub fn nullary(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter(|(_, a)| *a == 0).map(|(n, _)| n.as_str())
    }

    pub fn is_delta(&self) -> bool {
        *self == RankedAlphabet::delta() || *self == RankedAlphabet { entries: alloc::vec![(ONE.to_owned(), 0), (PLUS.to_owned(), 2)] }
    }

    /// `+` is the only symbol of positive arity and it is binary.
    pub fn is_delta_like(&self) -> bool {
        self.entries.iter().all(|(n, a)| *a == 0 || (n == PLUS && *a == 2))
    }

    /// Union with another alphabet; a symbol may not change arity.
    pub fn merge(&self, other: &RankedAlphabet) -> Result<RankedAlphabet> {
        let mut out = self.clone();
        for (n, a) in &other.entries {
            match out.arity(n) {
                Some(b) if b == *a => {}
                Some(b) => {
                    return Err(Error::ArityConflict { symbol: n.clone(), first: b, second: *a })
                }
                None => out.entries.push((n.clone(), *a)),
            }
        }
        Ok(out)
    }

    /// The alphabet extended with the nullary completion symbol Ω.
    pub fn with_omega(&self) -> RankedAlphabet {
        let mut out = self.clone();
        if !out.contains(OMEGA) {
            out.entries.push((OMEGA.to_owned(), 0));
        }
        out
    }
}

impl fmt::Display for RankedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, a)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}/{a}")?;
        }
        Ok(())
    }
}

/// Identifiers, the constant `1`, Ω, or a single operator character.
/// Parameter names `x<digits>` are reserved.
pub fn is_symbol_name(name: &str) -> bool {
    if name == ONE || name == OMEGA {
        return true;
    }
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if name.chars().count() == 1 && "+*-<>&|!?~^@%$".contains(first) {
        return true;
    }
    is_identifier(name) && !is_parameter_name(name)
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

pub fn is_parameter_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

/// A term over Σ ∪ F with parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Symbol { name: String, args: Vec<Term> },
    /// A call of the function variable with this equation index.
    Call { func: usize, args: Vec<Term> },
    Param(usize),
}

impl Term {
    pub fn sym(name: &str, args: Vec<Term>) -> Term {
        Term::Symbol { name: name.to_owned(), args }
    }

    pub fn leaf(name: &str) -> Term {
        Term::sym(name, Vec::new())
    }

    pub fn one() -> Term {
        Term::leaf(ONE)
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::sym(PLUS, alloc::vec![a, b])
    }

    pub fn call(func: usize, args: Vec<Term>) -> Term {
        Term::Call { func, args }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Symbol { args, .. } | Term::Call { args, .. } => args,
            Term::Param(_) => &[],
        }
    }

    pub fn is_closed(&self) -> bool {
        !matches!(self, Term::Param(_)) && self.args().iter().all(Term::is_closed)
    }

    /// Number of nodes, i.e. `|dom(t)|`.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// Replaces `x_j` by `args[j]`.
    pub fn substitute(&self, args: &[Term]) -> Term {
        match self {
            Term::Param(j) => args[*j].clone(),
            Term::Symbol { name, args: a } => {
                Term::Symbol { name: name.clone(), args: a.iter().map(|t| t.substitute(args)).collect() }
            }
            Term::Call { func, args: a } => {
                Term::Call { func: *func, args: a.iter().map(|t| t.substitute(args)).collect() }
            }
        }
    }

    /// Applies `f` bottom-up to every node.
    pub fn map_bottom_up(&self, f: &mut impl FnMut(Term) -> Term) -> Term {
        let t = match self {
            Term::Param(j) => Term::Param(*j),
            Term::Symbol { name, args } => Term::Symbol {
                name: name.clone(),
                args: args.iter().map(|a| a.map_bottom_up(f)).collect(),
            },
            Term::Call { func, args } => {
                Term::Call { func: *func, args: args.iter().map(|a| a.map_bottom_up(f)).collect() }
            }
        };
        f(t)
    }

    /// Visits every node in pre-order together with its address.
    pub fn visit(&self, f: &mut impl FnMut(&[usize], &Term)) {
        fn go(t: &Term, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], &Term)) {
            f(path, t);
            for (i, a) in t.args().iter().enumerate() {
                path.push(i);
                go(a, path, f);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), f);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub name: String,
    pub arity: usize,
    pub body: Term,
}

impl Equation {
    pub fn new(name: &str, arity: usize, body: Term) -> Self {
        Equation { name: name.to_owned(), arity, body }
    }
}

/// A validated recursion scheme. The first equation is principal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RecursionScheme {
    alphabet: RankedAlphabet,
    equations: Vec<Equation>,
}

impl RecursionScheme {
    pub fn new(alphabet: RankedAlphabet, equations: Vec<Equation>) -> Result<Self> {
        let s = RecursionScheme { alphabet, equations };
        s.validate()?;
        Ok(s)
    }

    /// Re-checks every invariant: names, principal arity, symbol and call
    /// arities, parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let principal = self.equations.first().ok_or(Error::EmptyScheme)?;
        if principal.arity != 0 {
            return Err(Error::PrincipalHasParameters(principal.name.clone()));
        }
        for (i, eq) in self.equations.iter().enumerate() {
            if !is_identifier(&eq.name) || is_parameter_name(&eq.name) {
                return Err(Error::InvalidSymbolName(eq.name.clone()));
            }
            if self.equations[..i].iter().any(|e| e.name == eq.name) || self.alphabet.contains(&eq.name) {
                return Err(Error::DuplicateFunction(eq.name.clone()));
            }
        }
        for eq in &self.equations {
            self.check_term(eq, &eq.body)?;
        }
        Ok(())
    }

    fn check_term(&self, eq: &Equation, t: &Term) -> Result<()> {
        match t {
            Term::Param(j) => {
                if *j >= eq.arity {
                    return Err(Error::ParameterOutOfRange { function: eq.name.clone(), index: *j, arity: eq.arity });
                }
            }
            Term::Symbol { name, args } => {
                let arity = self.alphabet.arity(name).ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch { name: name.clone(), expected: arity, found: args.len() });
                }
            }
            Term::Call { func, args } => {
                let callee = self.equations.get(*func).ok_or(Error::UndefinedFunction(*func))?;
                if callee.arity != args.len() {
                    return Err(Error::ArityMismatch {
                        name: callee.name.clone(),
                        expected: callee.arity,
                        found: args.len(),
                    });
                }
            }
        }
        t.args().iter().try_for_each(|a| self.check_term(eq, a))
    }

    pub fn alphabet(&self) -> &RankedAlphabet {
        &self.alphabet
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn function(&self, name: &str) -> Option<usize> {
        self.equations.iter().position(|e| e.name == name)
    }

    /// Every function variable is nullary.
    pub fn is_regular(&self) -> bool {
        self.equations.iter().all(|e| e.arity == 0)
    }

    /// `Σ_i |dom(t_i)|`.
    pub fn size(&self) -> usize {
        self.equations.iter().map(|e| e.body.size()).sum()
    }

    pub fn render_term(&self, t: &Term) -> String {
        let mut out = String::new();
        self.write_term(&mut out, t);
        out
    }

    fn write_term(&self, out: &mut String, t: &Term) {
        let (head, args) = match t {
            Term::Param(j) => {
                out.push_str(&format!("x{j}"));
                return;
            }
            Term::Symbol { name, args } => (name.as_str(), args),
            Term::Call { func, args } => (self.equations[*func].name.as_str(), args),
        };
        out.push_str(head);
        if !args.is_empty() {
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                self.write_term(out, a);
            }
            out.push(')');
        }
    }
}

/// The scheme file format: an `alphabet:` header unless the alphabet is Δ,
/// then one equation per line.
impl fmt::Display for RecursionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.alphabet.is_delta() {
            writeln!(f, "alphabet: {}", self.alphabet)?;
        }
        for eq in &self.equations {
            f.write_str(&eq.name)?;
            if eq.arity > 0 {
                f.write_str("(")?;
                for j in 0..eq.arity {
                    if j > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "x{j}")?;
                }
                f.write_str(")")?;
            }
            writeln!(f, " = {}", self.render_term(&eq.body))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    pub(crate) fn omega_omega() -> RecursionScheme {
        let x = || Term::Param(0);
        RecursionScheme::new(
            RankedAlphabet::delta(),
            vec![
                Equation::new("F0", 0, Term::call(1, vec![Term::one()])),
                Equation::new("G", 1, Term::plus(x(), Term::call(1, vec![Term::call(2, vec![x()])]))),
                Equation::new("F", 1, Term::plus(x(), Term::call(2, vec![x()]))),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        let omega = RecursionScheme::new(
            RankedAlphabet::delta(),
            vec![Equation::new("X", 0, Term::plus(Term::one(), Term::call(0, vec![])))],
        )
        .unwrap();
        assert!(omega.is_regular());
        assert!(!omega_omega().is_regular());
        let bad = RecursionScheme::new(
            RankedAlphabet::delta(),
            vec![
                Equation::new("F1", 0, Term::call(1, vec![Term::one(), Term::one()])),
                Equation::new("G", 1, Term::Param(0)),
            ],
        );
        assert_eq!(bad, Err(Error::ArityMismatch { name: "G".into(), expected: 1, found: 2 }));
        let bad = RecursionScheme::new(RankedAlphabet::delta(), vec![Equation::new("F", 1, Term::Param(0))]);
        assert_eq!(bad, Err(Error::PrincipalHasParameters("F".into())));
        let bad = RecursionScheme::new(
            RankedAlphabet::delta(),
            vec![Equation::new("F", 0, Term::call(0, vec![])), Equation::new("G", 1, Term::Param(1))],
        );
        assert!(matches!(bad, Err(Error::ParameterOutOfRange { .. })));
        let bad = RecursionScheme::new(RankedAlphabet::delta(), vec![Equation::new("F", 0, Term::call(3, vec![]))]);
        assert_eq!(bad, Err(Error::UndefinedFunction(3)));
        let bad = RecursionScheme::new(RankedAlphabet::delta(), vec![Equation::new("F", 0, Term::leaf("a"))]);
        assert_eq!(bad, Err(Error::UnknownSymbol("a".into())));
    }

    #[test]
    fn renders_in_file_format() {
        assert_eq!(
            omega_omega().to_string(),
            "F0 = G(1)\nG(x0) = +(x0, G(F(x0)))\nF(x0) = +(x0, F(x0))\n"
        );
    }

    #[test]
    fn alphabet_rules() {
        assert!(RankedAlphabet::new([("x0", 0)]).is_err());
        assert!(RankedAlphabet::new([("a", 0), ("a", 1)]).is_err());
        let s = RankedAlphabet::new([("σ3", 3), ("σ1", 1), ("a", 0), ("b", 0)]).unwrap();
        assert_eq!(s.max_rank(), 3);
        assert!(!s.is_delta_like());
        assert!(RankedAlphabet::delta().is_delta_like());
    }
}
