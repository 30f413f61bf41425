//! Normal-form model of the free commutative tri-algebra on generators
//! `x_1, x_2, …`.
//!
//! Every monomial is written `(x_{m_1} • … • x_{m_k}) ∗ (x_{n_1} ∗ … ∗ x_{n_l})`
//! and stored as the pair of multisets `(M, N)` with `M` nonempty. The two
//! products have closed forms:
//!
//! ```text
//! (M₁, N₁) ∗ (M₂, N₂) = (M₁, N₁ ⊎ M₂ ⊎ N₂)
//! (M₁, N₁) • (M₂, N₂) = (M₁ ⊎ M₂, N₁ ⊎ N₂)
//! ```
//!
//! The multilinear monomials in `x_1 … x_n` are exactly the `P(I) = (I, [n] ∖ I)`
//! for nonempty `I ⊆ [n]`, and distinct subsets give distinct monomials.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeError {
    #[error("P(a; I) needs a nonempty subset I")]
    EmptySubset,
    #[error("subset {subset} is not contained in [1, {n}]")]
    OutOfRange { subset: String, n: usize },
    #[error("generator indices start at 1")]
    ZeroGenerator,
    #[error("the •-block of a monomial must be nonempty")]
    EmptyBlock,
}

/// Maximum arity supported by [`Subset`].
pub const MAX_ARITY: usize = 16;

/// Subset of positions `{1, …, n}`, stored as a bitmask (bit `p − 1` for position `p`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subset(u32);

impl Subset {
    pub fn from_positions(positions: &[usize]) -> Result<Self, FreeError> {
        let mut mask = 0u32;
        for &p in positions {
            if p == 0 || p > MAX_ARITY {
                return Err(FreeError::OutOfRange {
                    subset: format!("{positions:?}"),
                    n: MAX_ARITY,
                });
            }
            mask |= 1 << (p - 1);
        }
        Ok(Subset(mask))
    }

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, position: usize) -> bool {
        position >= 1 && self.0 & (1 << (position - 1)) != 0
    }

    /// Largest position, or 0 for the empty set.
    pub fn max_position(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn positions(self) -> Vec<usize> {
        (1..=self.max_position())
            .filter(|&p| self.contains(p))
            .collect()
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(Subset::full(n).0 & !self.0)
    }

    /// All nonempty subsets of `[n]`, ordered by cardinality and then
    /// lexicographically on the sorted positions.
    pub fn enumerate(n: usize) -> Vec<Subset> {
        assert!(n <= MAX_ARITY, "arity {n} exceeds {MAX_ARITY}");
        let mut all: Vec<Subset> = (1..(1u32 << n)).map(Subset).collect();
        all.sort_by_cached_key(|s| (s.len(), s.positions()));
        all
    }

    /// Position of `self` in [`Subset::enumerate`]`(n)`.
    pub fn index_in(self, n: usize) -> Option<usize> {
        Subset::enumerate(n).iter().position(|&s| s == self)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monomial `(•M) ∗ (∗N)` of the free commutative tri-algebra.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComTriMonomial {
    block: Vec<usize>,
    tail: Vec<usize>,
}

impl ComTriMonomial {
    /// The generator `x_i` as the monomial `({i}, ∅)`.
    pub fn generator(i: usize) -> Self {
        assert!(i >= 1, "generator indices start at 1");
        ComTriMonomial {
            block: vec![i],
            tail: Vec::new(),
        }
    }

    pub fn new(mut block: Vec<usize>, mut tail: Vec<usize>) -> Result<Self, FreeError> {
        if block.is_empty() {
            return Err(FreeError::EmptyBlock);
        }
        if block.contains(&0) || tail.contains(&0) {
            return Err(FreeError::ZeroGenerator);
        }
        block.sort_unstable();
        tail.sort_unstable();
        Ok(ComTriMonomial { block, tail })
    }

    /// The `•`-block `M`.
    pub fn block(&self) -> &[usize] {
        &self.block
    }

    /// The `∗`-tail `N`.
    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    pub fn degree(&self) -> usize {
        self.block.len() + self.tail.len()
    }

    pub fn star(&self, other: &ComTriMonomial) -> ComTriMonomial {
        let mut tail = Vec::with_capacity(self.tail.len() + other.degree());
        tail.extend_from_slice(&self.tail);
        tail.extend_from_slice(&other.block);
        tail.extend_from_slice(&other.tail);
        tail.sort_unstable();
        ComTriMonomial {
            block: self.block.clone(),
            tail,
        }
    }

    pub fn bullet(&self, other: &ComTriMonomial) -> ComTriMonomial {
        ComTriMonomial {
            block: merge_sorted(&self.block, &other.block),
            tail: merge_sorted(&self.tail, &other.tail),
        }
    }

    /// If this monomial is `P(I)` for some nonempty `I ⊆ [n]`, returns `I`.
    pub fn as_p_subset(&self, n: usize) -> Option<Subset> {
        if self.degree() != n {
            return None;
        }
        let mut seen = 0u32;
        for &g in self.block.iter().chain(&self.tail) {
            if g == 0 || g > n || seen & (1 << (g - 1)) != 0 {
                return None;
            }
            seen |= 1 << (g - 1);
        }
        Subset::from_positions(&self.block).ok()
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out
}

impl Ord for ComTriMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.block.cmp(&other.block))
            .then_with(|| self.tail.cmp(&other.tail))
    }
}

impl PartialOrd for ComTriMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x1`, `(x1.x2)`, `x1*x2*x3`, `(x1.x3)*x2`: the `•`-block first, parenthesized
/// when it has more than one factor, then the `∗`-tail.
impl fmt::Display for ComTriMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = |v: &[usize], sep: &str| {
            v.iter()
                .map(|g| format!("x{g}"))
                .collect::<Vec<_>>()
                .join(sep)
        };
        if self.block.len() == 1 {
            write!(f, "{}", gens(&self.block, "."))?;
        } else {
            write!(f, "({})", gens(&self.block, "."))?;
        }
        if !self.tail.is_empty() {
            write!(f, "*{}", gens(&self.tail, "*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ComTriMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `P(a_1, …, a_n; I) = (a_{i_1} • ⋯ • a_{i_k}) ∗ (a_{j_1} ∗ ⋯ ∗ a_{j_{n−k}})`
/// on the generators `a_j = x_j`, i.e. `(I, [n] ∖ I)`.
pub fn p_monomial(n: usize, subset: Subset) -> Result<ComTriMonomial, FreeError> {
    if subset.is_empty() {
        return Err(FreeError::EmptySubset);
    }
    if subset.max_position() > n {
        return Err(FreeError::OutOfRange {
            subset: subset.to_string(),
            n,
        });
    }
    Ok(ComTriMonomial {
        block: subset.positions(),
        tail: subset.complement(n).positions(),
    })
}

/// `P(a_1, …, a_n; I)` for arbitrary monomial arguments.
pub fn p_of(args: &[ComTriMonomial], subset: Subset) -> Result<ComTriMonomial, FreeError> {
    if subset.is_empty() {
        return Err(FreeError::EmptySubset);
    }
    if subset.max_position() > args.len() {
        return Err(FreeError::OutOfRange {
            subset: subset.to_string(),
            n: args.len(),
        });
    }
    let mut bullets = subset.positions().into_iter().map(|p| &args[p - 1]);
    let first = bullets.next().expect("nonempty subset").clone();
    let head = bullets.fold(first, |acc, a| acc.bullet(a));
    Ok(subset
        .complement(args.len())
        .positions()
        .into_iter()
        .fold(head, |acc, p| acc.star(&args[p - 1])))
}

/// Finite rational combination of monomials.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FreeElement {
    terms: BTreeMap<ComTriMonomial, Rational>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: ComTriMonomial) -> Self {
        Self::term(Rational::from_integer(1.into()), m)
    }

    pub fn term(coeff: Rational, m: ComTriMonomial) -> Self {
        let mut out = Self::zero();
        out.add_term(coeff, m);
        out
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(ComTriMonomial::generator(i))
    }

    pub fn add_term(&mut self, coeff: Rational, m: ComTriMonomial) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ComTriMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &ComTriMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(c.clone(), m.clone());
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> FreeElement {
        let mut out = FreeElement::zero();
        for (m, c) in self.terms() {
            out.add_term(c * factor, m.clone());
        }
        out
    }

    fn bilinear(
        &self,
        other: &FreeElement,
        product: impl Fn(&ComTriMonomial, &ComTriMonomial) -> ComTriMonomial,
    ) -> FreeElement {
        let mut out = FreeElement::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(c1 * c2, product(m1, m2));
            }
        }
        out
    }

    pub fn star_lin(&self, other: &FreeElement) -> FreeElement {
        self.bilinear(other, ComTriMonomial::star)
    }

    pub fn bullet_lin(&self, other: &FreeElement) -> FreeElement {
        self.bilinear(other, ComTriMonomial::bullet)
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(m, c)| format!("{c}*[{m}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn mono(block: &[usize], tail: &[usize]) -> ComTriMonomial {
        ComTriMonomial::new(block.to_vec(), tail.to_vec()).unwrap()
    }

    fn x(i: usize) -> ComTriMonomial {
        ComTriMonomial::generator(i)
    }

    #[test]
    fn generators() {
        assert_eq!(x(1), mono(&[1], &[]));
        assert_eq!(x(2), mono(&[2], &[]));
        assert_eq!(x(7), mono(&[7], &[]));
    }

    #[test]
    fn star_closed_form() {
        assert_eq!(x(1).star(&x(2)), mono(&[1], &[2]));
        assert_eq!(mono(&[1, 2], &[]).star(&x(3)), mono(&[1, 2], &[3]));
        assert_eq!(
            mono(&[1], &[2]).star(&mono(&[3], &[4])),
            mono(&[1], &[2, 3, 4])
        );
    }

    #[test]
    fn bullet_closed_form() {
        assert_eq!(x(1).bullet(&x(2)), mono(&[1, 2], &[]));
        // (a1 ∗ a2) • a3 = a1 • (a3 ∗ a2)
        assert_eq!(mono(&[1], &[2]).bullet(&x(3)), mono(&[1, 3], &[2]));
        assert_eq!(x(1).bullet(&x(3).star(&x(2))), mono(&[1, 3], &[2]));
        assert_eq!(
            mono(&[1], &[2]).bullet(&mono(&[3], &[4])),
            mono(&[1, 3], &[2, 4])
        );
    }

    #[test]
    fn p_monomial_examples() {
        let s = |p: &[usize]| Subset::from_positions(p).unwrap();
        assert_eq!(p_monomial(2, s(&[1])).unwrap(), x(1).star(&x(2)));
        assert_eq!(p_monomial(2, s(&[1, 2])).unwrap(), x(1).bullet(&x(2)));
        assert_eq!(p_monomial(1, s(&[1])).unwrap(), x(1));
        assert_eq!(p_monomial(3, s(&[])), Err(FreeError::EmptySubset));
        assert!(matches!(
            p_monomial(2, s(&[3])),
            Err(FreeError::OutOfRange { .. })
        ));
    }

    #[test]
    fn p_of_generators_matches_p_monomial() {
        for n in 1..=5 {
            let gens: Vec<_> = (1..=n).map(x).collect();
            for s in Subset::enumerate(n) {
                let p = p_of(&gens, s).unwrap();
                assert_eq!(p, p_monomial(n, s).unwrap());
                assert_eq!(p.as_p_subset(n), Some(s));
            }
        }
    }

    #[test]
    fn distinct_subsets_give_distinct_monomials() {
        for n in 1..=6 {
            let monos: std::collections::BTreeSet<_> = Subset::enumerate(n)
                .into_iter()
                .map(|s| p_monomial(n, s).unwrap())
                .collect();
            assert_eq!(monos.len(), (1 << n) - 1);
        }
    }

    #[test]
    fn subset_enumeration_order() {
        let order: Vec<String> = Subset::enumerate(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(
            order,
            ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
        assert_eq!(Subset::enumerate(2).len(), 3);
        assert_eq!(
            Subset::from_positions(&[2, 3]).unwrap().index_in(3),
            Some(5)
        );
    }

    #[test]
    fn as_p_subset_rejects_non_multilinear() {
        assert_eq!(mono(&[1], &[1]).as_p_subset(2), None);
        assert_eq!(mono(&[1], &[3]).as_p_subset(2), None);
        assert_eq!(mono(&[1], &[]).as_p_subset(2), None);
    }

    #[test]
    fn linear_extensions() {
        let x1 = FreeElement::generator(1);
        let x2 = FreeElement::generator(2);
        let x3 = FreeElement::generator(3);
        let lhs = x1.plus(&x2).star_lin(&x3);
        let mut expected = FreeElement::monomial(mono(&[1], &[3]));
        expected.add_term(rat(1), mono(&[2], &[3]));
        assert_eq!(lhs, expected);

        assert!(FreeElement::zero().bullet_lin(&x1).is_zero());

        let prod = x1.scaled(&rat(2)).star_lin(&x2.scaled(&rat(3)));
        assert_eq!(prod, FreeElement::term(rat(6), mono(&[1], &[2])));
    }

    #[test]
    fn cancellation_drops_terms() {
        let mut e = FreeElement::generator(1);
        e.add_term(rat(-1), x(1));
        assert!(e.is_zero());
    }

    #[test]
    fn ordering_and_display() {
        assert!(x(3) < x(1).star(&x(2)));
        assert!(mono(&[1], &[2]) < mono(&[1, 2], &[]));
        assert_eq!(x(1).to_string(), "x1");
        assert_eq!(mono(&[1], &[2, 3]).to_string(), "x1*x2*x3");
        assert_eq!(mono(&[1, 3], &[2]).to_string(), "(x1.x3)*x2");
        assert_eq!(mono(&[1, 2], &[]).to_string(), "(x1.x2)");
    }

    #[test]
    fn monomial_validation() {
        assert_eq!(
            ComTriMonomial::new(vec![], vec![1]),
            Err(FreeError::EmptyBlock)
        );
        assert_eq!(
            ComTriMonomial::new(vec![0], vec![]),
            Err(FreeError::ZeroGenerator)
        );
        assert_eq!(mono(&[2, 1], &[4, 3]).block(), &[1, 2]);
    }
}
