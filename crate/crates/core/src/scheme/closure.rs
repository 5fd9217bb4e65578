//! Sum, product and geometric-sum constructions on schemes over Δ, and the
//! synthesizer of a scheme for every ordinal below ω^(ω^ω).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Equation, RankedAlphabet, RecursionScheme, Term, ONE};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

fn fresh(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|t| t == base) {
        return base.into();
    }
    (2..).map(|i| format!("{base}_{i}")).find(|n| !taken.iter().any(|t| t == n)).unwrap()
}

fn shift_calls(t: &Term, offset: usize) -> Term {
    t.map_bottom_up(&mut |t| match t {
        Term::Call { func, args } => Term::Call { func: func + offset, args },
        t => t,
    })
}

/// Appends `eqs` (with calls shifted by the current length) to `out`,
/// renaming clashing function variables apart.
fn append_renamed(out: &mut Vec<Equation>, eqs: &[Equation], alphabet: &RankedAlphabet) {
    let offset = out.len();
    let mut taken: Vec<String> = out.iter().map(|e| e.name.clone()).collect();
    taken.extend(alphabet.entries().iter().map(|(n, _)| n.clone()));
    for eq in eqs {
        let name = fresh(&taken, &eq.name);
        taken.push(name.clone());
        out.push(Equation { name, arity: eq.arity, body: shift_calls(&eq.body, offset) });
    }
}

fn all_names(s: &[&RecursionScheme]) -> Vec<String> {
    s.iter()
        .flat_map(|s| {
            s.equations()
                .iter()
                .map(|e| e.name.clone())
                .chain(s.alphabet().entries().iter().map(|(n, _)| n.clone()))
        })
        .collect()
}

/// `P + Q`: a new principal `+(P₁, Q₁)` over both schemes.
pub fn scheme_sum(p: &RecursionScheme, q: &RecursionScheme) -> Result<RecursionScheme> {
    let alphabet = RankedAlphabet::delta().merge(p.alphabet())?.merge(q.alphabet())?;
    let principal = fresh(&all_names(&[p, q]), "S");
    let n = p.equations().len();
    let mut eqs = vec![Equation {
        name: principal,
        arity: 0,
        body: Term::plus(Term::call(1, vec![]), Term::call(1 + n, vec![])),
    }];
    append_renamed(&mut eqs, p.equations(), &alphabet);
    append_renamed(&mut eqs, q.equations(), &alphabet);
    RecursionScheme::new(alphabet, eqs)
}

/// Substitutes a copy of `q` for every `𝟏` of `p`: the frontier is
/// `Fr(q) × Fr(p)`, i.e. `Fr(p)` copies of `Fr(q)`.
pub fn scheme_product(p: &RecursionScheme, q: &RecursionScheme) -> Result<RecursionScheme> {
    let alphabet = p.alphabet().merge(q.alphabet())?;
    let n = p.equations().len();
    let mut eqs: Vec<Equation> = p
        .equations()
        .iter()
        .map(|e| Equation {
            name: e.name.clone(),
            arity: e.arity,
            body: e.body.map_bottom_up(&mut |t| match t {
                Term::Symbol { name, args } if name == ONE && args.is_empty() => Term::call(n, vec![]),
                t => t,
            }),
        })
        .collect();
    append_renamed(&mut eqs, q.equations(), &alphabet);
    RecursionScheme::new(alphabet, eqs)
}

/// `Σ_{n≥0} P^n`: every function variable of `p` takes an extra last
/// parameter `x★` standing for its `𝟏` leaves, and
/// `F0 = G(𝟏)`, `G(x) = +(x, G(H(x)))` with `H` the principal of `p`.
pub fn scheme_geometric(p: &RecursionScheme) -> Result<RecursionScheme> {
    let alphabet = RankedAlphabet::delta().merge(p.alphabet())?;
    let names = all_names(&[p]);
    let f0 = fresh(&names, "F0");
    let g = fresh(&[names.as_slice(), &[f0.clone()]].concat(), "G");
    let x = || Term::Param(0);
    let mut eqs = vec![
        Equation { name: f0, arity: 0, body: Term::call(1, vec![Term::one()]) },
        Equation { name: g, arity: 1, body: Term::plus(x(), Term::call(1, vec![Term::call(2, vec![x()])])) },
    ];
    for e in p.equations() {
        let star = e.arity;
        let body = e.body.map_bottom_up(&mut |t| match t {
            Term::Symbol { name, args } if name == ONE && args.is_empty() => Term::Param(star),
            Term::Call { func, mut args } => {
                args.push(Term::Param(star));
                Term::Call { func: func + 2, args }
            }
            t => t,
        });
        eqs.push(Equation { name: e.name.clone(), arity: e.arity + 1, body });
    }
    RecursionScheme::new(alphabet, eqs)
}

fn single(name: &str, body: Term) -> RecursionScheme {
    RecursionScheme::new(RankedAlphabet::delta(), vec![Equation::new(name, 0, body)])
        .expect("a closed nullary body over Δ is valid")
}

fn finite_scheme(n: u64) -> RecursionScheme {
    if n == 0 {
        // the least solution of Z = Z is the empty tree
        return single("Z", Term::call(0, vec![]));
    }
    let body = (1..n).fold(Term::one(), |acc, _| Term::plus(Term::one(), acc));
    single("N", body)
}

fn omega_scheme() -> RecursionScheme {
    single("X", Term::plus(Term::one(), Term::call(0, vec![])))
}

/// Ordinal product `a·b` of the orderings defined by `sa` and `sb`.
fn ord_mul(sa: &RecursionScheme, sb: &RecursionScheme) -> Result<RecursionScheme> {
    scheme_product(sb, sa)
}

/// `ω^(ω^k)`.
fn tower_block(k: u64) -> Result<RecursionScheme> {
    (0..k).try_fold(omega_scheme(), |s, _| scheme_geometric(&s))
}

/// `ω^e` for `0 < e < ω^ω`.
fn omega_power_scheme(e: &Ordinal) -> Result<RecursionScheme> {
    let mut acc: Option<RecursionScheme> = None;
    for (k, c) in e.terms() {
        let k = k.as_finite().ok_or(Error::OrdinalOutOfRange)?;
        let block = tower_block(k)?;
        for _ in 0..*c {
            acc = Some(match acc {
                None => block.clone(),
                Some(a) => ord_mul(&a, &block)?,
            });
        }
    }
    Ok(acc.unwrap_or_else(|| finite_scheme(1)))
}

/// The canonical scheme whose frontier has order type `a`, for
/// `a < ω^(ω^ω)`. CNF terms are summed most significant first, products
/// associate to the left, `ω^(ω^k)` is the `k`-fold geometric sum of
/// `X = +(𝟏, X)`, and `0` is the divergent `Z = Z`.
pub fn scheme_for_ordinal(a: &Ordinal) -> Result<RecursionScheme> {
    if !a.is_algebraic() {
        return Err(Error::OrdinalOutOfRange);
    }
    if let Some(n) = a.as_finite() {
        return Ok(finite_scheme(n));
    }
    let mut acc: Option<RecursionScheme> = None;
    for (e, c) in a.terms() {
        let term = if e.is_zero() {
            finite_scheme(*c)
        } else {
            let base = omega_power_scheme(e)?;
            if *c == 1 {
                base
            } else {
                ord_mul(&base, &finite_scheme(*c))?
            }
        };
        acc = Some(match acc {
            None => term,
            Some(s) => scheme_sum(&s, &term)?,
        });
    }
    Ok(acc.expect("a nonzero ordinal has a term"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{unfold, BranchKind};
    use crate::words::{is_prefix_free, Word};
    use alloc::string::ToString;

    fn leaves(s: &RecursionScheme, depth: usize) -> Vec<Word> {
        unfold(s, depth).frontier().into_iter().map(|(u, _)| u).collect()
    }

    #[test]
    fn sum_of_units() {
        let one = finite_scheme(1);
        let s = scheme_sum(&one, &one).unwrap();
        assert_eq!(s.to_string(), "S = +(N, N_2)\nN = 1\nN_2 = 1\n");
        assert_eq!(leaves(&s, 2).len(), 2);
    }

    #[test]
    fn sum_with_divergent_left() {
        let s = scheme_sum(&finite_scheme(0), &omega_scheme()).unwrap();
        for d in 0..8 {
            assert!(leaves(&s, d).iter().all(|u| u.letters()[0].index() == 1));
        }
        assert_eq!(leaves(&s, 6).len(), 5);
    }

    #[test]
    fn products() {
        let two = finite_scheme(2);
        let three = finite_scheme(3);
        assert_eq!(leaves(&scheme_product(&two, &three).unwrap(), 6).len(), 6);
        let s = scheme_product(&omega_scheme(), &finite_scheme(1)).unwrap();
        assert_eq!(leaves(&s, 7).len(), 6);
        let sq = scheme_product(&omega_scheme(), &omega_scheme()).unwrap();
        assert_eq!(sq.to_string(), "X = +(X_2, X)\nX_2 = +(1, X_2)\n");
    }

    #[test]
    fn geometric_of_omega_is_the_three_equation_system() {
        let s = scheme_geometric(&omega_scheme()).unwrap();
        assert_eq!(s.to_string(), "F0 = G(1)\nG(x0) = +(x0, G(X(x0)))\nX(x0) = +(x0, X(x0))\n");
        let direct = crate::scheme::tests::omega_omega();
        for d in 0..9 {
            assert_eq!(leaves(&s, d), leaves(&direct, d));
        }
    }

    #[test]
    fn geometric_of_units() {
        let s = scheme_geometric(&finite_scheme(1)).unwrap();
        let fr = leaves(&s, 12);
        assert!(fr.len() >= 5);
        // Σ 1ⁿ: 0, 10, 110, ...
        for (n, u) in fr.iter().enumerate() {
            assert_eq!(*u, Word::from_indices((0..n).map(|_| 1).chain([0])));
        }
        let s = scheme_geometric(&finite_scheme(2)).unwrap();
        let fr = leaves(&s, 10);
        assert!(fr.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn synthesized_schemes() {
        assert_eq!(scheme_for_ordinal(&Ordinal::omega()).unwrap().to_string(), "X = +(1, X)\n");
        assert_eq!(scheme_for_ordinal(&Ordinal::finite(3)).unwrap().to_string(), "N = +(1, +(1, 1))\n");
        assert_eq!(scheme_for_ordinal(&Ordinal::zero()).unwrap().to_string(), "Z = Z\n");
        let big = Ordinal::tower(3).add(&Ordinal::one());
        assert!(scheme_for_ordinal(&big).is_ok());
        let too_big = Ordinal::omega_power(Ordinal::omega_power(Ordinal::omega()));
        assert_eq!(scheme_for_ordinal(&too_big), Err(Error::OrdinalOutOfRange));
        let w2 = Ordinal::omega_power(Ordinal::finite(2));
        let s = scheme_for_ordinal(&w2.mul(&Ordinal::finite(2)).add(&Ordinal::one())).unwrap();
        s.validate().unwrap();
        for d in 0..10 {
            let (_, words) = unfold(&s, d).branch_words(BranchKind::Lfr);
            assert_eq!(is_prefix_free(&words), None);
        }
    }
}
