//! The associative algebra `A ⊗ B` built from the free commutative
//! tri-algebra `A` and a tri-dendriform algebra `B`:
//!
//! ```text
//! (a₁ ⊗ b₁)(a₂ ⊗ b₂) = (a₁ ∗ a₂) ⊗ (b₁ ≺ b₂) + (a₂ ∗ a₁) ⊗ (b₁ ≻ b₂) + (a₁ • a₂) ⊗ (b₁ · b₂)
//! ```

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AxiomReport, BElement, TriDendAlgebra, TriOp, Violation};
use crate::exactlin::{ratio, Rational};
use crate::free::ComTriMonomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error(
        "tensor element over a {found}-dimensional B used with a {expected}-dimensional algebra"
    )]
    DimensionMismatch { expected: usize, found: usize },
}

/// Finite rational combination of pure tensors `monomial ⊗ e_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    dim: usize,
    terms: BTreeMap<(ComTriMonomial, usize), Rational>,
}

impl TensorElement {
    pub fn zero(dim: usize) -> Self {
        TensorElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `a ⊗ b`.
    pub fn pure(a: &ComTriMonomial, b: &BElement) -> Self {
        let mut out = Self::zero(b.dim());
        for (j, c) in b.coeffs().iter().enumerate() {
            out.add_term(c.clone(), a.clone(), j);
        }
        out
    }

    pub fn basis(a: ComTriMonomial, j: usize, dim: usize) -> Self {
        assert!(j < dim, "basis index {j} out of range for dimension {dim}");
        let mut out = Self::zero(dim);
        out.add_term(Rational::from_integer(1.into()), a, j);
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, coeff: Rational, a: ComTriMonomial, j: usize) {
        debug_assert!(j < self.dim);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((a, j)) {
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

    /// `self += factor · (a ⊗ b)`.
    pub fn add_pure(&mut self, factor: &Rational, a: &ComTriMonomial, b: &BElement) {
        for (j, c) in b.coeffs().iter().enumerate() {
            if !c.is_zero() {
                self.add_term(factor * c, a.clone(), j);
            }
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &TensorElement) {
        for ((a, j), c) in &other.terms {
            self.add_term(factor * c, a.clone(), *j);
        }
    }

    pub fn plus(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer(1.into()), other);
        out
    }

    pub fn minus(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer((-1).into()), other);
        out
    }

    pub fn scaled(&self, factor: &Rational) -> TensorElement {
        let mut out = TensorElement::zero(self.dim);
        out.add_scaled(factor, self);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ComTriMonomial, usize, &Rational)> {
        self.terms.iter().map(|((a, j), c)| (a, *j, c))
    }

    pub fn coeff(&self, a: &ComTriMonomial, j: usize) -> Rational {
        self.terms
            .get(&(a.clone(), j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Groups terms by monomial: `Σ a ⊗ b_a`.
    pub fn by_monomial(&self) -> BTreeMap<ComTriMonomial, BElement> {
        let mut out: BTreeMap<ComTriMonomial, BElement> = BTreeMap::new();
        for ((a, j), c) in &self.terms {
            out.entry(a.clone())
                .or_insert_with(|| BElement::zero(self.dim))
                .add_to_coeff(*j, c);
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|(a, _)| a.degree())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(a, j, c)| format!("{c}*[{a} ⊗ e{j}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Product in `A ⊗ B`, bilinearly extended.
pub fn tensor_product(
    b: &TriDendAlgebra,
    u: &TensorElement,
    v: &TensorElement,
) -> Result<TensorElement, TensorError> {
    for t in [u, v] {
        if t.dim != b.dim() {
            return Err(TensorError::DimensionMismatch {
                expected: b.dim(),
                found: t.dim,
            });
        }
    }
    Ok(mul_unchecked(b, u, v))
}

pub(crate) fn mul_unchecked(
    b: &TriDendAlgebra,
    u: &TensorElement,
    v: &TensorElement,
) -> TensorElement {
    let mut out = TensorElement::zero(b.dim());
    for ((a1, i), c1) in &u.terms {
        for ((a2, j), c2) in &v.terms {
            let c = c1 * c2;
            for op in TriOp::ALL {
                let products = b.table(op).basis_product(*i, *j);
                if products.iter().all(Zero::is_zero) {
                    continue;
                }
                let a = match op {
                    TriOp::Prec => a1.star(a2),
                    TriOp::Succ => a2.star(a1),
                    TriOp::Dot => a1.bullet(a2),
                };
                for (k, s) in products.iter().enumerate() {
                    if !s.is_zero() {
                        out.add_term(&c * s, a.clone(), k);
                    }
                }
            }
        }
    }
    out
}

pub type Triple = (TensorElement, TensorElement, TensorElement);

/// Evaluates `(uv)w − u(vw)` on each triple; a triple whose operands live over
/// a different `B` is reported as a violation rather than panicking.
pub fn check_associativity(b: &TriDendAlgebra, triples: &[Triple]) -> AxiomReport {
    let per_triple: Vec<Option<Violation>> = triples
        .par_iter()
        .enumerate()
        .map(|(idx, (u, v, w))| {
            let result = (|| {
                let lhs = tensor_product(b, &tensor_product(b, u, v)?, w)?;
                let rhs = tensor_product(b, u, &tensor_product(b, v, w)?)?;
                Ok::<_, TensorError>((lhs, rhs))
            })();
            match result {
                Ok((lhs, rhs)) if lhs == rhs => None,
                Ok((lhs, rhs)) => Some(Violation {
                    axiom: "associativity".into(),
                    witness: vec![idx],
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                }),
                Err(e) => Some(Violation {
                    axiom: "associativity".into(),
                    witness: vec![idx],
                    lhs: e.to_string(),
                    rhs: String::new(),
                }),
            }
        })
        .collect();
    AxiomReport::from_violations(triples.len(), per_triple.into_iter().flatten().collect())
}

/// All triples `(x_i ⊗ e_j, x_k ⊗ e_l, x_m ⊗ e_n)` with generator indices in
/// `1..=generators` and basis indices over `B`.
pub fn generator_triples(dim: usize, generators: usize) -> Vec<Triple> {
    let singles: Vec<TensorElement> = (1..=generators)
        .flat_map(|g| {
            (0..dim).map(move |j| TensorElement::basis(ComTriMonomial::generator(g), j, dim))
        })
        .collect();
    let mut out = Vec::with_capacity(singles.len().pow(3));
    for u in &singles {
        for v in &singles {
            for w in &singles {
                out.push((u.clone(), v.clone(), w.clone()));
            }
        }
    }
    out
}

/// Seeded pseudorandom monomial of degree `1..=max_degree` over `x_1 … x_generators`.
pub fn random_monomial(rng: &mut impl Rng, max_degree: usize, generators: usize) -> ComTriMonomial {
    let degree = rng.gen_range(1..=max_degree.max(1));
    let gens: Vec<usize> = (0..degree).map(|_| rng.gen_range(1..=generators)).collect();
    let split = rng.gen_range(1..=degree);
    ComTriMonomial::new(gens[..split].to_vec(), gens[split..].to_vec())
        .expect("block is nonempty and generators start at 1")
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// Sum of one or two pure tensors with random monomials and random rational
/// B-coefficients.
pub fn random_element(
    rng: &mut impl Rng,
    dim: usize,
    max_degree: usize,
    generators: usize,
) -> TensorElement {
    let mut out = TensorElement::zero(dim);
    for _ in 0..rng.gen_range(1..=2) {
        let a = random_monomial(rng, max_degree, generators);
        let b = BElement::from_coeffs((0..dim).map(|_| random_rational(rng)).collect());
        out.add_pure(&Rational::from_integer(1.into()), &a, &b);
    }
    out
}

/// `count` reproducible random triples (ChaCha8 seeded with `seed`).
pub fn random_triples(dim: usize, count: usize, max_degree: usize, seed: u64) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (
                random_element(&mut rng, dim, max_degree, 4),
                random_element(&mut rng, dim, max_degree, 4),
                random_element(&mut rng, dim, max_degree, 4),
            )
        })
        .collect()
}
