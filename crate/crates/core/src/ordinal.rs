//! Ordinals in Cantor normal form and Hausdorff-rank bounds.
//!
//! An [`Ordinal`] is `ω^e₁·c₁ + … + ω^e_k·c_k` with `e₁ > … > e_k` and
//! positive `u64` coefficients, terms stored most significant first. The
//! exponents are ordinals themselves, so any nesting depth is representable;
//! the synthesizer and the range checks work below `ω^(ω^ω)`.
//!
//! Coefficient overflow panics.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub const fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::finite(1)
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(Ordinal::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_power(Ordinal::one())
    }

    /// `ω^e`.
    pub fn omega_power(e: Ordinal) -> Self {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// `ω^(ω^n)`.
    pub fn tower(n: u64) -> Self {
        Ordinal::omega_power(Ordinal::omega_power(Ordinal::finite(n)))
    }

    /// Builds from `(exponent, coefficient)` pairs, most significant first.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self> {
        if terms.iter().any(|(_, c)| *c == 0) || terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::MalformedOrdinal);
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// The coefficient of `ω⁰`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    /// Exponent of the leading term; `None` for zero.
    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Length of the longest exponent chain `e, e's leading exponent, …`.
    pub fn nesting_depth(&self) -> usize {
        self.terms.iter().map(|(e, _)| 1 + e.nesting_depth()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, c)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            self.terms.iter().take_while(|(e, _)| e > lead).cloned().collect();
        // a term of equal exponent merges; smaller ones are absorbed
        let merged = match self.terms.get(terms.len()) {
            Some((e, d)) if e == lead => d.checked_add(*c).expect("ordinal coefficient overflow"),
            _ => *c,
        };
        terms.push((lead.clone(), merged));
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    pub fn mul(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lead_coef)) = self.terms.first() else {
            return Ordinal::zero();
        };
        // left distributivity over the terms of `other`
        let mut acc = Ordinal::zero();
        for (f, c) in &other.terms {
            let piece = if f.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].1 = lead_coef.checked_mul(*c).expect("ordinal coefficient overflow");
                Ordinal { terms }
            } else {
                Ordinal { terms: vec![(lead.add(f), *c)] }
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// `self^n` for finite `n`.
    pub fn pow_finite(&self, n: u64) -> Ordinal {
        (0..n).fold(Ordinal::one(), |acc, _| acc.mul(self))
    }

    /// `α^ω = Σ_{n≥0} α^n`, with `0^ω` taken as the geometric sum `1`.
    pub fn pow_omega(&self) -> Ordinal {
        match self.leading_exponent() {
            None => Ordinal::one(),
            Some(e) if e.is_zero() => {
                if self.finite_part() == 1 {
                    Ordinal::one()
                } else {
                    Ordinal::omega()
                }
            }
            Some(e) => Ordinal::omega_power(e.mul(&Ordinal::omega())),
        }
    }

    /// `m_α`: one more than the finite part.
    pub fn m_alpha(&self) -> u64 {
        self.finite_part() + 1
    }

    /// `self < ω^(ω^n)`.
    pub fn is_below_tower(&self, n: u64) -> bool {
        *self < Ordinal::tower(n)
    }

    /// `self < ω^(ω^ω)`: every leading exponent is below `ω^ω`.
    pub fn is_algebraic(&self) -> bool {
        match self.leading_exponent() {
            None => true,
            Some(e) => e.leading_exponent().map_or(true, |ee| ee.is_finite()),
        }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((e1, c1), (e2, c2)) in self.terms.iter().zip(&other.terms) {
            match e1.cmp(e2).then(c1.cmp(c2)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::finite(n)
    }
}

/// ASCII form: `w` for ω, e.g. `w^(w*2+1)*3+w^2+5`.
impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            match e.as_finite() {
                Some(1) => {}
                Some(n) => write!(f, "^{n}")?,
                None if *e == Ordinal::omega() => f.write_str("^w")?,
                None => write!(f, "^({e})")?,
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

/// `r(ω^α) = α`.
pub fn rank_of_omega_power(exponent: &Ordinal) -> Ordinal {
    exponent.clone()
}

/// A finite sum of orderings of ranks `ranks` has rank between the maximum
/// and the maximum plus one.
pub fn rank_sum_bound(ranks: &[Ordinal]) -> Result<(Ordinal, Ordinal)> {
    let max = ranks.iter().max().ok_or(Error::EmptyRankList)?;
    Ok((max.clone(), max.succ()))
}

/// A sum indexed by an ordering of rank `outer` whose summands have rank at
/// most `inner` has rank at most `inner + outer`.
pub fn rank_gensum_bound(inner: &Ordinal, outer: &Ordinal) -> Ordinal {
    inner.add(outer)
}

/// `Q × P` with `r(Q) ≤ q`, `r(P) ≤ p` has rank at most `q + p`.
pub fn rank_product_bound(q: &Ordinal, p: &Ordinal) -> Ordinal {
    q.add(p)
}

/// `Σ_{n≥0} P^n` with `0 < r(P) ≤ α` has rank at most `α·ω`.
pub fn rank_geometric_bound(alpha: &Ordinal) -> Result<Ordinal> {
    if alpha.is_zero() {
        return Err(Error::ZeroRank);
    }
    Ok(alpha.mul(&Ordinal::omega()))
}

/// Bound on the rank of a union of suborderings of ranks `a` and `b`:
/// `min{a + b + m_b, b + a + m_a}`.
pub fn rank_union_bound(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let left = a.add(b).add(&Ordinal::finite(b.m_alpha()));
    let right = b.add(a).add(&Ordinal::finite(a.m_alpha()));
    left.min(right)
}

/// `ω^h + 1`, the bound for a nonterminal of height `h`.
pub fn height_bound(height: usize) -> Ordinal {
    Ordinal::omega_power(Ordinal::finite(height as u64)).succ()
}
