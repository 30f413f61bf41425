//! Tri-dendriform cochains with coefficients in `N = B`, the map `Ψ` into
//! Hochschild cochains of `A ⊗ B`, and the tri-dendriform differential.
//!
//! A degree-`n` cochain `g` assigns to every nonempty `I ⊆ [n]` an
//! `n`-multilinear map `g(I; −, …, −) : B^{⊗n} → B`. Its image under `Ψ` is
//!
//! ```text
//! (Ψg)(a₁ ⊗ b₁, …, aₙ ⊗ bₙ) = Σ_I P(a₁, …, aₙ; I) ⊗ g(I; b₁, …, bₙ)
//! ```
//!
//! The differential [`tri_delta`] is defined by evaluating `δ_HH(Ψg)` on the
//! generators `x₁ ⊗ b₁, …, x_{n+1} ⊗ b_{n+1}` and reading off the coefficient
//! of each `P(I)`, so `Ψ ∘ δ_tri = δ_HH ∘ Ψ` on generator inputs holds by
//! construction. [`tri_delta_explicit`] is the hand-expanded formula in degrees
//! 1 and 2 and serves as an independent cross-check.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AssocAlgebra, AxiomReport, BElement, TriDendAlgebra, TriOp, Violation};
use crate::exactlin::{format_rational, parse_rational, rank, QMatrix, Rational};
use crate::free::{p_of, ComTriMonomial, Subset, MAX_ARITY};
use crate::tensor::{mul_unchecked, TensorElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("expected {expected} inputs, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("explicit differential formulas exist only in degrees 1 and 2, not {0}")]
    DegreeOutOfRange(usize),
    #[error("monomial {0} is not of the form P(I) in the generators x1..x{1}")]
    NotMultilinear(String, usize),
    #[error("input slot {slot} is not the generator x{expected}")]
    NotGeneratorInput { slot: usize, expected: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed cochain JSON: {0}")]
    Json(String),
}

/// Coordinates on the space of degree-`n` cochains over a `d`-dimensional `B`.
///
/// Cells `(I, (j₁, …, jₙ), k)` are ordered subset-major (subsets in
/// [`Subset::enumerate`] order), then by basis tuple lexicographically (first
/// slot most significant), then by output coordinate `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainBasisIndex {
    degree: usize,
    dim: usize,
    subsets: Vec<Subset>,
    tuples: usize,
}

/// One coordinate of a cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub subset: Subset,
    pub tuple: Vec<usize>,
    pub output: usize,
}

impl CochainBasisIndex {
    pub fn new(degree: usize, dim: usize) -> Self {
        assert!(
            (1..=MAX_ARITY).contains(&degree),
            "cochain degree must lie in 1..={MAX_ARITY}"
        );
        CochainBasisIndex {
            degree,
            dim,
            subsets: Subset::enumerate(degree),
            tuples: dim.pow(degree as u32),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    pub fn tuple_count(&self) -> usize {
        self.tuples
    }

    /// `(2ⁿ − 1) · dⁿ · d`.
    pub fn len(&self) -> usize {
        self.subsets.len() * self.tuples * self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn subset_position(&self, subset: Subset) -> Option<usize> {
        self.subsets.iter().position(|&s| s == subset)
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        tuple.iter().fold(0, |acc, &j| acc * self.dim + j)
    }

    pub fn tuple_at(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        for slot in out.iter_mut().rev() {
            *slot = index % self.dim;
            index /= self.dim;
        }
        out
    }

    /// Offset of the length-`d` block holding `g(I; e_tuple)`.
    pub fn block_offset(&self, subset_pos: usize, tuple_index: usize) -> usize {
        (subset_pos * self.tuples + tuple_index) * self.dim
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        let s = self.subset_position(cell.subset)?;
        if cell.tuple.len() != self.degree
            || cell.tuple.iter().any(|&j| j >= self.dim)
            || cell.output >= self.dim
        {
            return None;
        }
        Some(self.block_offset(s, self.tuple_index(&cell.tuple)) + cell.output)
    }

    pub fn cell(&self, index: usize) -> Cell {
        assert!(index < self.len(), "cell index {index} out of range");
        let output = index % self.dim;
        let block = index / self.dim;
        Cell {
            subset: self.subsets[block / self.tuples],
            tuple: self.tuple_at(block % self.tuples),
            output,
        }
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.tuples).map(|t| self.tuple_at(t))
    }
}

/// Degree-`n` tri-dendriform cochain with values in `B`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriCochain {
    index: CochainBasisIndex,
    coeffs: Vec<Rational>,
}

impl TriCochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        let index = CochainBasisIndex::new(degree, dim);
        let coeffs = vec![Rational::zero(); index.len()];
        TriCochain { index, coeffs }
    }

    /// The cochain that is 1 on cell `cell` and 0 elsewhere.
    pub fn basis(dim: usize, degree: usize, cell: usize) -> Self {
        let mut g = Self::zero(dim, degree);
        g.coeffs[cell] = Rational::one();
        g
    }

    pub fn from_coeffs(
        dim: usize,
        degree: usize,
        coeffs: Vec<Rational>,
    ) -> Result<Self, CochainError> {
        let index = CochainBasisIndex::new(degree, dim);
        if coeffs.len() != index.len() {
            return Err(CochainError::DimensionMismatch {
                expected: index.len(),
                found: coeffs.len(),
            });
        }
        Ok(TriCochain { index, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.index.degree
    }

    pub fn dim(&self) -> usize {
        self.index.dim
    }

    pub fn basis_index(&self) -> &CochainBasisIndex {
        &self.index
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn block(&self, subset_pos: usize, tuple_index: usize) -> &[Rational] {
        let o = self.index.block_offset(subset_pos, tuple_index);
        &self.coeffs[o..o + self.index.dim]
    }

    /// `g(I; e_{j₁}, …, e_{jₙ})`.
    pub fn value(&self, subset: Subset, tuple: &[usize]) -> BElement {
        match self.index.subset_position(subset) {
            Some(s) => BElement::from_coeffs(self.block(s, self.index.tuple_index(tuple)).to_vec()),
            None => BElement::zero(self.dim()),
        }
    }

    pub fn set_value(&mut self, subset: Subset, tuple: &[usize], value: &BElement) {
        let s = self
            .index
            .subset_position(subset)
            .expect("subset of the cochain's arity");
        let o = self.index.block_offset(s, self.index.tuple_index(tuple));
        self.coeffs[o..o + self.index.dim].clone_from_slice(value.coeffs());
    }

    /// `g(I; b₁, …, bₙ)` for arbitrary arguments, by multilinear expansion.
    pub fn eval(&self, subset: Subset, args: &[BElement]) -> BElement {
        assert_eq!(args.len(), self.degree(), "cochain arity");
        let Some(s) = self.index.subset_position(subset) else {
            return BElement::zero(self.dim());
        };
        let mut out = BElement::zero(self.dim());
        for t in 0..self.index.tuples {
            let tuple = self.index.tuple_at(t);
            let mut c = Rational::one();
            for (arg, &j) in args.iter().zip(&tuple) {
                c *= arg.coeff(j);
                if c.is_zero() {
                    break;
                }
            }
            if c.is_zero() {
                continue;
            }
            let block = BElement::from_coeffs(self.block(s, t).to_vec());
            out.add_scaled(&c, &block);
        }
        out
    }

    pub fn scaled(&self, factor: &Rational) -> TriCochain {
        TriCochain {
            index: self.index.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn plus(&self, other: &TriCochain) -> TriCochain {
        assert_eq!(self.index, other.index, "cochains of different shape");
        TriCochain {
            index: self.index.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// JSON array of `[subset, index-tuple, coefficient-vector]` triples for
    /// every nonzero block; subsets are 1-based positions, basis indices are
    /// 0-based, rationals are `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        let mut cells = Vec::new();
        for (s, subset) in self.index.subsets.iter().enumerate() {
            for t in 0..self.index.tuples {
                let block = self.block(s, t);
                if block.iter().all(Zero::is_zero) {
                    continue;
                }
                cells.push(json!([
                    subset.positions(),
                    self.index.tuple_at(t),
                    block.iter().map(format_rational).collect::<Vec<_>>(),
                ]));
            }
        }
        Value::Array(cells)
    }

    pub fn from_json(dim: usize, degree: usize, value: &Value) -> Result<Self, CochainError> {
        let bad = |msg: String| CochainError::Json(msg);
        let cells = value
            .as_array()
            .ok_or_else(|| bad("expected an array".into()))?;
        let mut g = TriCochain::zero(dim, degree);
        for (n, cell) in cells.iter().enumerate() {
            let parts = cell
                .as_array()
                .filter(|p| p.len() == 3)
                .ok_or_else(|| bad(format!("cell {n}: expected [subset, tuple, coeffs]")))?;
            let ints = |v: &Value, what: &str| -> Result<Vec<usize>, CochainError> {
                v.as_array()
                    .ok_or_else(|| bad(format!("cell {n}: {what} must be an array")))?
                    .iter()
                    .map(|x| {
                        x.as_u64().map(|x| x as usize).ok_or_else(|| {
                            bad(format!(
                                "cell {n}: {what} entries must be non-negative integers"
                            ))
                        })
                    })
                    .collect()
            };
            let positions = ints(&parts[0], "subset")?;
            if positions.is_empty() || positions.iter().any(|&p| p == 0 || p > degree) {
                return Err(bad(format!(
                    "cell {n}: subset {positions:?} not a nonempty subset of [1, {degree}]"
                )));
            }
            let subset = Subset::from_positions(&positions).map_err(|e| bad(e.to_string()))?;
            let tuple = ints(&parts[1], "tuple")?;
            if tuple.len() != degree || tuple.iter().any(|&j| j >= dim) {
                return Err(bad(format!(
                    "cell {n}: tuple {tuple:?} invalid for degree {degree}, dim {dim}"
                )));
            }
            let coeffs = parts[2]
                .as_array()
                .filter(|c| c.len() == dim)
                .ok_or_else(|| {
                    bad(format!(
                        "cell {n}: coefficient vector must have length {dim}"
                    ))
                })?
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| bad(format!("cell {n}: coefficients must be strings")))
                        .and_then(|s| parse_rational(s).map_err(|e| bad(format!("cell {n}: {e}"))))
                })
                .collect::<Result<Vec<_>, _>>()?;
            g.set_value(subset, &tuple, &BElement::from_coeffs(coeffs));
        }
        Ok(g)
    }
}

/// Arguments `(a₁ ⊗ b₁, …, aₙ ⊗ bₙ)` of a Hochschild cochain on `A ⊗ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearInput {
    slots: Vec<(ComTriMonomial, BElement)>,
    generators_in_order: bool,
}

impl MultilinearInput {
    pub fn new(slots: Vec<(ComTriMonomial, BElement)>) -> Self {
        MultilinearInput {
            slots,
            generators_in_order: false,
        }
    }

    /// `(x₁ ⊗ b₁, …, xₙ ⊗ bₙ)`.
    pub fn generators(bs: Vec<BElement>) -> Self {
        MultilinearInput {
            slots: bs
                .into_iter()
                .enumerate()
                .map(|(j, b)| (ComTriMonomial::generator(j + 1), b))
                .collect(),
            generators_in_order: true,
        }
    }

    /// `(x₁ ⊗ e_{j₁}, …, xₙ ⊗ e_{jₙ})`.
    pub fn generator_basis(dim: usize, tuple: &[usize]) -> Self {
        Self::generators(tuple.iter().map(|&j| BElement::basis(dim, j)).collect())
    }

    /// Requires slot `j` to carry `x_{j+1}`.
    pub fn require_generators(mut self) -> Result<Self, CochainError> {
        for (j, (a, _)) in self.slots.iter().enumerate() {
            if *a != ComTriMonomial::generator(j + 1) {
                return Err(CochainError::NotGeneratorInput {
                    slot: j,
                    expected: j + 1,
                });
            }
        }
        self.generators_in_order = true;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn is_generator_input(&self) -> bool {
        self.generators_in_order
    }

    pub fn slots(&self) -> &[(ComTriMonomial, BElement)] {
        &self.slots
    }

    pub fn to_tensors(&self) -> Vec<TensorElement> {
        self.slots
            .iter()
            .map(|(a, b)| TensorElement::pure(a, b))
            .collect()
    }
}

/// `(Ψg)(u₁, …, uₙ)` for arbitrary elements `u_i ∈ A ⊗ B`, multilinearly.
pub fn psi_apply(g: &TriCochain, slots: &[TensorElement]) -> Result<TensorElement, CochainError> {
    if slots.len() != g.degree() {
        return Err(CochainError::Arity {
            expected: g.degree(),
            found: slots.len(),
        });
    }
    for u in slots {
        if u.dim() != g.dim() {
            return Err(CochainError::DimensionMismatch {
                expected: g.dim(),
                found: u.dim(),
            });
        }
    }
    let expanded: Vec<Vec<(&ComTriMonomial, usize, &Rational)>> =
        slots.iter().map(|u| u.terms().collect()).collect();
    let mut out = TensorElement::zero(g.dim());
    let mut args: Vec<ComTriMonomial> = Vec::with_capacity(slots.len());
    let mut tuple: Vec<usize> = Vec::with_capacity(slots.len());
    psi_accumulate(
        g,
        &expanded,
        Rational::one(),
        &mut args,
        &mut tuple,
        &mut out,
    );
    Ok(out)
}

fn psi_accumulate(
    g: &TriCochain,
    expanded: &[Vec<(&ComTriMonomial, usize, &Rational)>],
    coeff: Rational,
    args: &mut Vec<ComTriMonomial>,
    tuple: &mut Vec<usize>,
    out: &mut TensorElement,
) {
    let depth = args.len();
    if depth == expanded.len() {
        let t = g.index.tuple_index(tuple);
        for (s, &subset) in g.index.subsets.iter().enumerate() {
            let block = g.block(s, t);
            if block.iter().all(Zero::is_zero) {
                continue;
            }
            let p = p_of(args, subset).expect("subset within arity");
            for (k, v) in block.iter().enumerate() {
                if !v.is_zero() {
                    out.add_term(&coeff * v, p.clone(), k);
                }
            }
        }
        return;
    }
    for &(a, j, c) in &expanded[depth] {
        args.push(a.clone());
        tuple.push(j);
        psi_accumulate(g, expanded, &coeff * c, args, tuple, out);
        args.pop();
        tuple.pop();
    }
}

/// `(Ψg)(a₁ ⊗ b₁, …, aₙ ⊗ bₙ)`.
pub fn psi_eval(g: &TriCochain, input: &MultilinearInput) -> Result<TensorElement, CochainError> {
    psi_apply(g, &input.to_tensors())
}

/// `δ_HH(Ψg)(x₁, …, x_{n+1})` with all products taken in `A ⊗ B`:
///
/// ```text
/// x₁ · (Ψg)(x₂, …) + Σᵢ (−1)ⁱ (Ψg)(…, xᵢ x_{i+1}, …) + (−1)^{n+1} (Ψg)(x₁, …, xₙ) · x_{n+1}
/// ```
pub fn hoch_delta_on_psi(
    b: &TriDendAlgebra,
    g: &TriCochain,
    input: &MultilinearInput,
) -> Result<TensorElement, CochainError> {
    let n = g.degree();
    if input.len() != n + 1 {
        return Err(CochainError::Arity {
            expected: n + 1,
            found: input.len(),
        });
    }
    if g.dim() != b.dim() {
        return Err(CochainError::DimensionMismatch {
            expected: b.dim(),
            found: g.dim(),
        });
    }
    let xs = input.to_tensors();
    let mut out = mul_unchecked(b, &xs[0], &psi_apply(g, &xs[1..])?);
    for i in 1..=n {
        let mut slots: Vec<TensorElement> = Vec::with_capacity(n);
        slots.extend_from_slice(&xs[..i - 1]);
        slots.push(mul_unchecked(b, &xs[i - 1], &xs[i]));
        slots.extend_from_slice(&xs[i + 1..]);
        out.add_scaled(&sign(i), &psi_apply(g, &slots)?);
    }
    let last = mul_unchecked(b, &psi_apply(g, &xs[..n])?, &xs[n]);
    out.add_scaled(&sign(n + 1), &last);
    Ok(out)
}

fn sign(i: usize) -> Rational {
    if i.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Reads off the `B`-coefficient of each `P(I)`, `I ⊆ [n]` nonempty, in
/// [`Subset::enumerate`] order. Fails on any monomial not of that form.
pub fn extract(t: &TensorElement, n: usize) -> Result<Vec<(Subset, BElement)>, CochainError> {
    let subsets = Subset::enumerate(n);
    let mut out: Vec<(Subset, BElement)> = subsets
        .iter()
        .map(|&s| (s, BElement::zero(t.dim())))
        .collect();
    for (a, j, c) in t.terms() {
        let subset = a
            .as_p_subset(n)
            .ok_or_else(|| CochainError::NotMultilinear(a.to_string(), n))?;
        let pos = subsets
            .iter()
            .position(|&s| s == subset)
            .expect("P(I) subsets are nonempty");
        out[pos].1.add_to_coeff(j, c);
    }
    Ok(out)
}

/// `δ_tri g`, defined through `δ_HH(Ψg)` on generator inputs.
pub fn tri_delta(b: &TriDendAlgebra, g: &TriCochain) -> TriCochain {
    let n = g.degree();
    let mut out = TriCochain::zero(b.dim(), n + 1);
    let tuples: Vec<Vec<usize>> = out.index.tuples().collect();
    let components: Vec<Vec<(Subset, BElement)>> = tuples
        .par_iter()
        .map(|tuple| {
            let input = MultilinearInput::generator_basis(b.dim(), tuple);
            let t = hoch_delta_on_psi(b, g, &input).expect("arity n+1 by construction");
            extract(&t, n + 1).expect("δ_HH(Ψg) on generators is a combination of P(I)")
        })
        .collect();
    for (tuple, comps) in tuples.iter().zip(components) {
        for (subset, value) in comps {
            out.set_value(subset, tuple, &value);
        }
    }
    out
}

/// Which definition of the tri-dendriform differential to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaRoute {
    Extraction,
    Explicit,
}

impl DeltaRoute {
    pub fn apply(self, b: &TriDendAlgebra, g: &TriCochain) -> Result<TriCochain, CochainError> {
        match self {
            DeltaRoute::Extraction => Ok(tri_delta(b, g)),
            DeltaRoute::Explicit => tri_delta_explicit(b, g),
        }
    }

    /// Explicit where defined (degrees 1 and 2), extraction otherwise.
    pub fn preferred(degree: usize) -> Self {
        if degree <= 2 {
            DeltaRoute::Explicit
        } else {
            DeltaRoute::Extraction
        }
    }
}

fn subset(positions: &[usize]) -> Subset {
    Subset::from_positions(positions).expect("small positions")
}

/// Expanded component formulas for `δ_tri` in degrees 1 → 2 and 2 → 3.
pub fn tri_delta_explicit(b: &TriDendAlgebra, g: &TriCochain) -> Result<TriCochain, CochainError> {
    let n = g.degree();
    if !(1..=2).contains(&n) {
        return Err(CochainError::DegreeOutOfRange(n));
    }
    if g.dim() != b.dim() {
        return Err(CochainError::DimensionMismatch {
            expected: b.dim(),
            found: g.dim(),
        });
    }
    let d = b.dim();
    let mut out = TriCochain::zero(d, n + 1);
    let tuples: Vec<Vec<usize>> = out.index.tuples().collect();
    for tuple in tuples {
        let args: Vec<BElement> = tuple.iter().map(|&j| BElement::basis(d, j)).collect();
        let values = if n == 1 {
            explicit_degree1(b, g, &args[0], &args[1])
        } else {
            explicit_degree2(b, g, &args[0], &args[1], &args[2])
        };
        for (s, v) in values {
            out.set_value(s, &tuple, &v);
        }
    }
    Ok(out)
}

fn explicit_degree1(
    b: &TriDendAlgebra,
    g: &TriCochain,
    b1: &BElement,
    b2: &BElement,
) -> Vec<(Subset, BElement)> {
    let g1 = |x: &BElement| g.eval(subset(&[1]), std::slice::from_ref(x));
    // component for op: b1 op g(b2) − g(b1 op b2) + g(b1) op b2
    let component = |op: TriOp| {
        b.apply(op, b1, &g1(b2))
            .minus(&g1(&b.apply(op, b1, b2)))
            .plus(&b.apply(op, &g1(b1), b2))
    };
    vec![
        (subset(&[1]), component(TriOp::Prec)),
        (subset(&[2]), component(TriOp::Succ)),
        (subset(&[1, 2]), component(TriOp::Dot)),
    ]
}

fn explicit_degree2(
    b: &TriDendAlgebra,
    g: &TriCochain,
    b1: &BElement,
    b2: &BElement,
    b3: &BElement,
) -> Vec<(Subset, BElement)> {
    use TriOp::{Dot, Prec, Succ};
    let op = |o, x: &BElement, y: &BElement| b.apply(o, x, y);
    // g({1}), g({2}), g({1,2}) as bilinear maps
    let ga = |x: &BElement, y: &BElement| g.eval(subset(&[1]), &[x.clone(), y.clone()]);
    let gb = |x: &BElement, y: &BElement| g.eval(subset(&[2]), &[x.clone(), y.clone()]);
    let gc = |x: &BElement, y: &BElement| g.eval(subset(&[1, 2]), &[x.clone(), y.clone()]);
    let sum = |terms: Vec<(i64, BElement)>| {
        let mut acc = BElement::zero(b.dim());
        for (s, t) in terms {
            acc.add_scaled(&Rational::from_integer(s.into()), &t);
        }
        acc
    };

    // x1 * x2 * x3
    let c1 = sum(vec![
        (1, op(Prec, b1, &ga(b2, b3))),
        (1, op(Prec, b1, &gb(b2, b3))),
        (1, op(Prec, b1, &gc(b2, b3))),
        (-1, ga(&op(Prec, b1, b2), b3)),
        (1, ga(b1, &op(Prec, b2, b3))),
        (1, ga(b1, &op(Succ, b2, b3))),
        (1, ga(b1, &op(Dot, b2, b3))),
        (-1, op(Prec, &ga(b1, b2), b3)),
    ]);
    // x2 * x1 * x3
    let c2 = sum(vec![
        (1, op(Succ, b1, &ga(b2, b3))),
        (-1, ga(&op(Succ, b1, b2), b3)),
        (1, gb(b1, &op(Prec, b2, b3))),
        (-1, op(Prec, &gb(b1, b2), b3)),
    ]);
    // x3 * x2 * x1
    let c3 = sum(vec![
        (1, op(Succ, b1, &gb(b2, b3))),
        (-1, gb(&op(Prec, b1, b2), b3)),
        (-1, gb(&op(Succ, b1, b2), b3)),
        (-1, gb(&op(Dot, b1, b2), b3)),
        (1, gb(b1, &op(Succ, b2, b3))),
        (-1, op(Succ, &ga(b1, b2), b3)),
        (-1, op(Succ, &gb(b1, b2), b3)),
        (-1, op(Succ, &gc(b1, b2), b3)),
    ]);
    // (x1 . x2) * x3
    let c12 = sum(vec![
        (1, op(Dot, b1, &ga(b2, b3))),
        (-1, ga(&op(Dot, b1, b2), b3)),
        (1, gc(b1, &op(Prec, b2, b3))),
        (-1, op(Prec, &gc(b1, b2), b3)),
    ]);
    // (x1 . x3) * x2
    let c13 = sum(vec![
        (1, op(Dot, b1, &gb(b2, b3))),
        (-1, gc(&op(Prec, b1, b2), b3)),
        (1, gc(b1, &op(Succ, b2, b3))),
        (-1, op(Dot, &ga(b1, b2), b3)),
    ]);
    // (x2 . x3) * x1
    let c23 = sum(vec![
        (1, op(Succ, b1, &gc(b2, b3))),
        (-1, gc(&op(Succ, b1, b2), b3)),
        (1, gb(b1, &op(Dot, b2, b3))),
        (-1, op(Dot, &gb(b1, b2), b3)),
    ]);
    // x1 . x2 . x3
    let c123 = sum(vec![
        (1, op(Dot, b1, &gc(b2, b3))),
        (-1, gc(&op(Dot, b1, b2), b3)),
        (1, gc(b1, &op(Dot, b2, b3))),
        (-1, op(Dot, &gc(b1, b2), b3)),
    ]);
    vec![
        (subset(&[1]), c1),
        (subset(&[2]), c2),
        (subset(&[3]), c3),
        (subset(&[1, 2]), c12),
        (subset(&[1, 3]), c13),
        (subset(&[2, 3]), c23),
        (subset(&[1, 2, 3]), c123),
    ]
}

/// For every basis cochain of degree `n` and every basis tuple of length
/// `n + 1`, checks `Ψ(δ_tri g) = δ_HH(Ψg)` on generator inputs.
pub fn check_commutation(
    b: &TriDendAlgebra,
    n: usize,
    route: DeltaRoute,
) -> Result<AxiomReport, CochainError> {
    let d = b.dim();
    let index = CochainBasisIndex::new(n, d);
    let next = CochainBasisIndex::new(n + 1, d);
    let tuples: Vec<Vec<usize>> = next.tuples().collect();
    let per_cell: Vec<Result<Vec<Violation>, CochainError>> = (0..index.len())
        .into_par_iter()
        .map(|cell| {
            let g = TriCochain::basis(d, n, cell);
            let dg = route.apply(b, &g)?;
            let mut violations = Vec::new();
            for tuple in &tuples {
                let input = MultilinearInput::generator_basis(d, tuple);
                let lhs = psi_eval(&dg, &input)?;
                let rhs = hoch_delta_on_psi(b, &g, &input)?;
                if lhs != rhs {
                    let mut witness = vec![cell];
                    witness.extend_from_slice(tuple);
                    violations.push(Violation {
                        axiom: format!("commutation_{route:?}").to_lowercase(),
                        witness,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
            Ok(violations)
        })
        .collect();
    let mut violations = Vec::new();
    for v in per_cell {
        violations.extend(v?);
    }
    Ok(AxiomReport::from_violations(
        index.len() * tuples.len(),
        violations,
    ))
}

/// Checks `extract(Ψg) = g` on every basis cochain and basis tuple.
pub fn check_roundtrip(b: &TriDendAlgebra, n: usize) -> AxiomReport {
    let d = b.dim();
    let index = CochainBasisIndex::new(n, d);
    let tuples: Vec<Vec<usize>> = index.tuples().collect();
    let violations: Vec<Violation> = (0..index.len())
        .into_par_iter()
        .flat_map_iter(|cell| {
            let g = TriCochain::basis(d, n, cell);
            tuples
                .iter()
                .filter_map(|tuple| {
                    let image = psi_eval(&g, &MultilinearInput::generator_basis(d, tuple))
                        .expect("arity matches");
                    let recovered = extract(&image, n).expect("Ψ lands in the P(I) span");
                    recovered
                        .into_iter()
                        .find(|(s, v)| *v != g.value(*s, tuple))
                        .map(|(s, v)| {
                            let mut witness = vec![cell];
                            witness.extend_from_slice(tuple);
                            Violation {
                                axiom: "roundtrip".into(),
                                witness,
                                lhs: format!("{s}: {v}"),
                                rhs: g.value(s, tuple).to_string(),
                            }
                        })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    AxiomReport::from_violations(index.len() * tuples.len(), violations)
}

/// Matrix of `g ↦ (Ψg)(x₁ ⊗ e_{j₁}, …, xₙ ⊗ e_{jₙ})` over all basis tuples;
/// rows are indexed by (tuple, P(I), output coordinate).
pub fn psi_matrix(b: &TriDendAlgebra, n: usize) -> QMatrix {
    let d = b.dim();
    let index = CochainBasisIndex::new(n, d);
    let subsets = index.subsets().len();
    let rows = index.tuple_count() * subsets * d;
    let columns: Vec<Vec<Rational>> = (0..index.len())
        .into_par_iter()
        .map(|cell| {
            let g = TriCochain::basis(d, n, cell);
            let mut col = vec![Rational::zero(); rows];
            for (t, tuple) in index.tuples().enumerate() {
                let image = psi_eval(&g, &MultilinearInput::generator_basis(d, &tuple))
                    .expect("arity matches");
                for (a, k, c) in image.terms() {
                    let s = a
                        .as_p_subset(n)
                        .and_then(|s| index.subset_position(s))
                        .expect("Ψ lands in the P(I) span");
                    col[(t * subsets + s) * d + k] = c.clone();
                }
            }
            col
        })
        .collect();
    QMatrix::from_columns(rows, &columns).expect("column lengths agree")
}

/// `Ψ` restricted to degree-`n` cochains has trivial kernel.
pub fn check_injectivity(b: &TriDendAlgebra, n: usize) -> bool {
    let m = psi_matrix(b, n);
    rank(&m) == m.cols()
}

/// Matrix of the Hochschild coboundary `δⁿ : Cⁿ(R, R) → Cⁿ⁺¹(R, R)` of an
/// associative algebra `R` with coefficients in itself. `Cⁿ` has basis
/// `(tuple of n basis indices, output index)`, tuple-major.
pub fn hochschild_matrix(r: &AssocAlgebra, n: usize) -> QMatrix {
    let d = r.dim();
    let src = d.pow(n as u32) * d;
    let dst = d.pow(n as u32 + 1) * d;
    let columns: Vec<Vec<Rational>> = (0..src)
        .into_par_iter()
        .map(|cell| {
            let mut f = vec![Rational::zero(); src];
            f[cell] = Rational::one();
            hochschild_delta(r, &f, n)
        })
        .collect();
    QMatrix::from_columns(dst, &columns).expect("column lengths agree")
}

fn tuple_of(mut index: usize, len: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

fn tuple_index(tuple: &[usize], d: usize) -> usize {
    tuple.iter().fold(0, |acc, &j| acc * d + j)
}

/// `δf` for a Hochschild `n`-cochain `f` given by its coefficient vector.
pub fn hochschild_delta(r: &AssocAlgebra, f: &[Rational], n: usize) -> Vec<Rational> {
    let d = r.dim();
    let value = |tuple: &[usize]| -> BElement {
        let o = tuple_index(tuple, d) * d;
        BElement::from_coeffs(f[o..o + d].to_vec())
    };
    let out_tuples = d.pow(n as u32 + 1);
    let mut out = Vec::with_capacity(out_tuples * d);
    for t in 0..out_tuples {
        let s = tuple_of(t, n + 1, d);
        let e = |i: usize| BElement::basis(d, s[i]);
        let mut acc = r.mul(&e(0), &value(&s[1..]));
        for i in 1..=n {
            // f(e_{s0}, …, e_{s_{i-1}} e_{s_i}, …)
            let prod = r.mul(&e(i - 1), &e(i));
            for (m, c) in prod.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut inner: Vec<usize> = Vec::with_capacity(n);
                inner.extend_from_slice(&s[..i - 1]);
                inner.push(m);
                inner.extend_from_slice(&s[i + 1..]);
                acc.add_scaled(&(sign(i) * c), &value(&inner));
            }
        }
        acc.add_scaled(&sign(n + 1), &r.mul(&value(&s[..n]), &e(n)));
        out.extend(acc.into_coeffs());
    }
    out
}
