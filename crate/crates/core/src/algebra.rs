//! Structure-constant algebras: tri-dendriform algebras `(B, ≺, ≻, ·)`,
//! finite-dimensional commutative tri-algebras `(A, ∗, •)` and plain
//! associative algebras, with exhaustive axiom verifiers.
//!
//! All operations are bilinear, so every identity is checked on basis
//! triples only; that check is complete.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("structure table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("product table is not associative: {0}")]
    NotAssociative(String),
}

/// Element of a finite-dimensional algebra, as a coefficient vector over the basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BElement(Vec<Rational>);

impl BElement {
    pub fn zero(dim: usize) -> Self {
        BElement(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[index] = Rational::from_integer(1.into());
        v
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        BElement(coeffs)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.0
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &BElement) {
        debug_assert_eq!(self.dim(), other.dim());
        if factor.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += factor * b;
            }
        }
    }

    pub fn add_to_coeff(&mut self, i: usize, value: &Rational) {
        self.0[i] += value;
    }

    pub fn scaled(&self, factor: &Rational) -> BElement {
        BElement(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn plus(&self, other: &BElement) -> BElement {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer(1.into()), other);
        out
    }

    pub fn minus(&self, other: &BElement) -> BElement {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer((-1).into()), other);
        out
    }

    fn check_dim(&self, dim: usize) -> Result<(), AlgebraError> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }
}

impl fmt::Debug for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as a coefficient tuple, e.g. `(1, -1/2)`.
impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `d × d × d` structure constants: `get(i, j, k)` is the coefficient of
/// `e_k` in `e_i op e_j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureTable {
    dim: usize,
    data: Vec<Rational>,
}

impl StructureTable {
    pub fn zeros(dim: usize) -> Self {
        StructureTable {
            dim,
            data: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_flat(dim: usize, data: Vec<Rational>) -> Result<Self, AlgebraError> {
        let expected = dim * dim * dim;
        if data.len() != expected {
            return Err(AlgebraError::TableSize {
                expected,
                found: data.len(),
            });
        }
        Ok(StructureTable { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flat(&self) -> &[Rational] {
        &self.data
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.dim + j) * self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[self.offset(i, j) + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let o = self.offset(i, j);
        self.data[o + k] = value;
    }

    /// Coefficients of `e_i op e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Rational] {
        let o = self.offset(i, j);
        &self.data[o..o + self.dim]
    }

    pub fn apply(&self, x: &BElement, y: &BElement) -> BElement {
        let mut out = BElement::zero(self.dim);
        for (i, xi) in x.coeffs().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, t) in self.basis_product(i, j).iter().enumerate() {
                    if !t.is_zero() {
                        out.0[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Entrywise sum of tables of equal dimension.
    pub fn sum(tables: &[&StructureTable]) -> StructureTable {
        let dim = tables[0].dim;
        let mut out = StructureTable::zeros(dim);
        for t in tables {
            for (o, v) in out.data.iter_mut().zip(&t.data) {
                *o += v;
            }
        }
        out
    }

    /// Nonzero entries as `(i, j, k, value)` in index order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriOp {
    Prec,
    Succ,
    Dot,
}

impl TriOp {
    pub const ALL: [TriOp; 3] = [TriOp::Prec, TriOp::Succ, TriOp::Dot];

    pub fn symbol(self) -> &'static str {
        match self {
            TriOp::Prec => "≺",
            TriOp::Succ => "≻",
            TriOp::Dot => "·",
        }
    }
}

/// A tri-dendriform algebra given by three structure tables over a common basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriDendAlgebra {
    name: String,
    dim: usize,
    prec: StructureTable,
    succ: StructureTable,
    dot: StructureTable,
}

impl TriDendAlgebra {
    pub fn new(
        name: impl Into<String>,
        prec: StructureTable,
        succ: StructureTable,
        dot: StructureTable,
    ) -> Result<Self, AlgebraError> {
        let dim = prec.dim();
        for t in [&succ, &dot] {
            if t.dim() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: t.dim(),
                });
            }
        }
        Ok(TriDendAlgebra {
            name: name.into(),
            dim,
            prec,
            succ,
            dot,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self, op: TriOp) -> &StructureTable {
        match op {
            TriOp::Prec => &self.prec,
            TriOp::Succ => &self.succ,
            TriOp::Dot => &self.dot,
        }
    }

    pub fn table_mut(&mut self, op: TriOp) -> &mut StructureTable {
        match op {
            TriOp::Prec => &mut self.prec,
            TriOp::Succ => &mut self.succ,
            TriOp::Dot => &mut self.dot,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn op(&self, op: TriOp, x: &BElement, y: &BElement) -> Result<BElement, AlgebraError> {
        x.check_dim(self.dim)?;
        y.check_dim(self.dim)?;
        Ok(self.table(op).apply(x, y))
    }

    pub fn prec(&self, x: &BElement, y: &BElement) -> Result<BElement, AlgebraError> {
        self.op(TriOp::Prec, x, y)
    }

    pub fn succ(&self, x: &BElement, y: &BElement) -> Result<BElement, AlgebraError> {
        self.op(TriOp::Succ, x, y)
    }

    pub fn dot(&self, x: &BElement, y: &BElement) -> Result<BElement, AlgebraError> {
        self.op(TriOp::Dot, x, y)
    }

    /// `x ∘ y = x ≺ y + x ≻ y + x · y`.
    pub fn total_product(&self, x: &BElement, y: &BElement) -> Result<BElement, AlgebraError> {
        let mut out = self.prec(x, y)?;
        let one = Rational::from_integer(1.into());
        out.add_scaled(&one, &self.succ(x, y)?);
        out.add_scaled(&one, &self.dot(x, y)?);
        Ok(out)
    }

    /// Structure table of the total product.
    pub fn total_table(&self) -> StructureTable {
        StructureTable::sum(&[&self.prec, &self.succ, &self.dot])
    }

    pub fn basis(&self, i: usize) -> BElement {
        BElement::basis(self.dim, i)
    }

    // Unchecked variants for hot loops where dimensions are known to agree.
    pub(crate) fn apply(&self, op: TriOp, x: &BElement, y: &BElement) -> BElement {
        self.table(op).apply(x, y)
    }

    pub(crate) fn apply_total(&self, x: &BElement, y: &BElement) -> BElement {
        let mut out = self.apply(TriOp::Prec, x, y);
        let one = Rational::from_integer(1.into());
        out.add_scaled(&one, &self.apply(TriOp::Succ, x, y));
        out.add_scaled(&one, &self.apply(TriOp::Dot, x, y));
        out
    }
}

/// One failed identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub passed: bool,
    /// Number of identity instances evaluated.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn from_violations(checked: usize, violations: Vec<Violation>) -> Self {
        AxiomReport {
            passed: violations.is_empty(),
            checked,
            violations,
        }
    }

    pub fn violated_axioms(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.violations.iter().map(|v| v.axiom.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        names
    }

    pub fn merge(mut self, other: AxiomReport) -> AxiomReport {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.passed = self.violations.is_empty();
        self
    }
}

fn basis_triples(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                out.push([i, j, k]);
            }
        }
    }
    out
}

/// The seven tri-dendriform identities followed by associativity of the
/// total product (`axiom8`), each as `(name, lhs, rhs)` evaluated on `x, y, z`.
pub fn tridendriform_identities(
    alg: &TriDendAlgebra,
    x: &BElement,
    y: &BElement,
    z: &BElement,
) -> [(&'static str, BElement, BElement); 8] {
    use TriOp::*;
    let op = |o, a: &BElement, b: &BElement| alg.apply(o, a, b);
    let total = |a: &BElement, b: &BElement| alg.apply_total(a, b);
    [
        // (x ≺ y) ≺ z = x ≺ (y ∘ z)
        (
            "axiom1",
            op(Prec, &op(Prec, x, y), z),
            op(Prec, x, &total(y, z)),
        ),
        // (x ≻ y) ≺ z = x ≻ (y ≺ z)
        (
            "axiom2",
            op(Prec, &op(Succ, x, y), z),
            op(Succ, x, &op(Prec, y, z)),
        ),
        // (x ∘ y) ≻ z = x ≻ (y ≻ z)
        (
            "axiom3",
            op(Succ, &total(x, y), z),
            op(Succ, x, &op(Succ, y, z)),
        ),
        // x ≻ (y · z) = (x ≻ y) · z
        (
            "axiom4",
            op(Succ, x, &op(Dot, y, z)),
            op(Dot, &op(Succ, x, y), z),
        ),
        // (x ≺ y) · z = x · (y ≻ z)
        (
            "axiom5",
            op(Dot, &op(Prec, x, y), z),
            op(Dot, x, &op(Succ, y, z)),
        ),
        // (x · y) ≺ z = x · (y ≺ z)
        (
            "axiom6",
            op(Prec, &op(Dot, x, y), z),
            op(Dot, x, &op(Prec, y, z)),
        ),
        // (x · y) · z = x · (y · z)
        (
            "axiom7",
            op(Dot, &op(Dot, x, y), z),
            op(Dot, x, &op(Dot, y, z)),
        ),
        // (x ∘ y) ∘ z = x ∘ (y ∘ z)
        ("axiom8", total(&total(x, y), z), total(x, &total(y, z))),
    ]
}

/// Checks all seven tri-dendriform identities and total-product
/// associativity on every basis triple.
pub fn verify_tridendriform(alg: &TriDendAlgebra) -> AxiomReport {
    let d = alg.dim();
    let triples = basis_triples(d);
    let per_triple: Vec<Vec<Violation>> = triples
        .par_iter()
        .map(|&[i, j, k]| {
            let (x, y, z) = (alg.basis(i), alg.basis(j), alg.basis(k));
            tridendriform_identities(alg, &x, &y, &z)
                .into_iter()
                .filter(|(_, l, r)| l != r)
                .map(|(name, l, r)| Violation {
                    axiom: name.to_string(),
                    witness: vec![i, j, k],
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                })
                .collect()
        })
        .collect();
    let mut violations: Vec<Violation> = per_triple.into_iter().flatten().collect();
    // report order: axiom name, then basis triple
    violations.sort_by(|a, b| {
        a.axiom
            .cmp(&b.axiom)
            .then_with(|| a.witness.cmp(&b.witness))
    });
    AxiomReport::from_violations(triples.len() * 8, violations)
}

/// Finite-dimensional commutative tri-algebra `(A, ∗, •)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommTriAlgebraFD {
    dim: usize,
    star: StructureTable,
    bullet: StructureTable,
}

impl CommTriAlgebraFD {
    pub fn new(star: StructureTable, bullet: StructureTable) -> Result<Self, AlgebraError> {
        if star.dim() != bullet.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: star.dim(),
                found: bullet.dim(),
            });
        }
        Ok(CommTriAlgebraFD {
            dim: star.dim(),
            star,
            bullet,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn star(&self, x: &BElement, y: &BElement) -> BElement {
        self.star.apply(x, y)
    }

    pub fn bullet(&self, x: &BElement, y: &BElement) -> BElement {
        self.bullet.apply(x, y)
    }
}

/// Checks the Perm identities for `∗`, commutativity and associativity of
/// `•`, and the two compatibility relations, on all basis triples.
pub fn verify_comm_tri(alg: &CommTriAlgebraFD) -> AxiomReport {
    let d = alg.dim();
    let mut violations = Vec::new();
    let mut checked = 0;
    let mut record = |name: &str, w: Vec<usize>, l: BElement, r: BElement| {
        if l != r {
            violations.push(Violation {
                axiom: name.to_string(),
                witness: w,
                lhs: l.to_string(),
                rhs: r.to_string(),
            });
        }
    };
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (BElement::basis(d, i), BElement::basis(d, j));
            record(
                "bullet_commutative",
                vec![i, j],
                alg.bullet(&x, &y),
                alg.bullet(&y, &x),
            );
            checked += 1;
        }
    }
    for [i, j, k] in basis_triples(d) {
        let (x, y, z) = (
            BElement::basis(d, i),
            BElement::basis(d, j),
            BElement::basis(d, k),
        );
        let w = || vec![i, j, k];
        let y_star_z = alg.star(&y, &z);
        record(
            "perm_associative",
            w(),
            alg.star(&alg.star(&x, &y), &z),
            alg.star(&x, &y_star_z),
        );
        record(
            "perm_right_symmetric",
            w(),
            alg.star(&x, &y_star_z),
            alg.star(&x, &alg.star(&z, &y)),
        );
        record(
            "bullet_associative",
            w(),
            alg.bullet(&alg.bullet(&x, &y), &z),
            alg.bullet(&x, &alg.bullet(&y, &z)),
        );
        record(
            "compat_star_bullet",
            w(),
            alg.star(&x, &alg.bullet(&y, &z)),
            alg.star(&x, &y_star_z),
        );
        record(
            "compat_bullet_star",
            w(),
            alg.star(&alg.bullet(&x, &y), &z),
            alg.bullet(&x, &y_star_z),
        );
        checked += 5;
    }
    AxiomReport::from_violations(checked, violations)
}

/// Associative algebra given by a single product table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssocAlgebra {
    mul: StructureTable,
}

impl AssocAlgebra {
    /// Rejects tables that fail associativity on some basis triple.
    pub fn new(mul: StructureTable) -> Result<Self, AlgebraError> {
        let d = mul.dim();
        for [i, j, k] in basis_triples(d) {
            let (x, y, z) = (
                BElement::basis(d, i),
                BElement::basis(d, j),
                BElement::basis(d, k),
            );
            let l = mul.apply(&mul.apply(&x, &y), &z);
            let r = mul.apply(&x, &mul.apply(&y, &z));
            if l != r {
                return Err(AlgebraError::NotAssociative(format!(
                    "(e{i} e{j}) e{k} = {l} but e{i} (e{j} e{k}) = {r}"
                )));
            }
        }
        Ok(AssocAlgebra { mul })
    }

    /// `(B, ∘)` for a tri-dendriform algebra `B`.
    pub fn total_product_of(alg: &TriDendAlgebra) -> Result<Self, AlgebraError> {
        Self::new(alg.total_table())
    }

    pub fn dim(&self) -> usize {
        self.mul.dim()
    }

    pub fn table(&self) -> &StructureTable {
        &self.mul
    }

    pub fn mul(&self, x: &BElement, y: &BElement) -> BElement {
        self.mul.apply(x, y)
    }
}

/// Renders a rational-valued table row for diagnostics.
pub fn format_coeffs(coeffs: &[Rational]) -> Vec<String> {
    coeffs.iter().map(format_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{rat, ratio};
    use crate::fixtures;

    fn e() -> BElement {
        BElement::basis(1, 0)
    }

    #[test]
    fn example_1d_products() {
        let b = fixtures::example_1d();
        assert_eq!(b.prec(&e(), &e()).unwrap(), e());
        assert_eq!(b.succ(&e(), &e()).unwrap(), e());
        assert_eq!(b.dot(&e(), &e()).unwrap(), e().scaled(&rat(-1)));
        assert_eq!(b.total_product(&e(), &e()).unwrap(), e());
        assert!(b.prec(&BElement::zero(1), &e()).unwrap().is_zero());
    }

    #[test]
    fn example_2d_mixed_products_vanish() {
        let b = fixtures::example_2d();
        let (e1, e2) = (b.basis(0), b.basis(1));
        for op in TriOp::ALL {
            assert!(b.op(op, &e1, &e2).unwrap().is_zero());
            assert!(b.op(op, &e2, &e1).unwrap().is_zero());
        }
        assert!(b.total_product(&e1, &e2).unwrap().is_zero());
        assert!(b.total_product(&e1, &BElement::zero(2)).unwrap().is_zero());
        assert_eq!(b.total_product(&e2, &e2).unwrap(), e2);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let b = fixtures::example_2d();
        let err = b.prec(&BElement::basis(1, 0), &b.basis(0)).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
        assert!(b.total_product(&b.basis(0), &BElement::zero(3)).is_err());
    }

    #[test]
    fn fixtures_verify() {
        assert!(verify_tridendriform(&fixtures::example_1d()).passed);
        assert!(verify_tridendriform(&fixtures::example_2d()).passed);
        assert!(verify_tridendriform(&fixtures::zero_algebra(2)).passed);
    }

    #[test]
    fn flipped_dot_breaks_axiom1() {
        let mut b = fixtures::example_1d();
        b.table_mut(TriOp::Dot).set(0, 0, 0, rat(1));
        let report = verify_tridendriform(&b);
        assert!(!report.passed);
        let v = report
            .violations
            .iter()
            .find(|v| v.axiom == "axiom1")
            .expect("axiom1 violation");
        assert_eq!(v.witness, vec![0, 0, 0]);
        assert_eq!(v.lhs, "(1)");
        assert_eq!(v.rhs, "(3)");
    }

    #[test]
    fn every_single_constant_bump_is_detected() {
        let base = fixtures::example_1d();
        for op in TriOp::ALL {
            for (i, j, k, v) in base.table(op).nonzero_entries() {
                let mut m = base.clone();
                m.table_mut(op).set(i, j, k, v + rat(1));
                assert!(!verify_tridendriform(&m).passed, "{op:?} bump undetected");
            }
        }
    }

    #[test]
    fn comm_tri_examples() {
        let one = |v: i64| StructureTable::from_flat(1, vec![rat(v)]).unwrap();
        let good = CommTriAlgebraFD::new(one(1), one(1)).unwrap();
        assert!(verify_comm_tri(&good).passed);

        let bad = CommTriAlgebraFD::new(one(1), one(2)).unwrap();
        let report = verify_comm_tri(&bad);
        assert!(!report.passed);
        assert!(report.violated_axioms().contains(&"compat_star_bullet"));

        let zero =
            CommTriAlgebraFD::new(StructureTable::zeros(3), StructureTable::zeros(3)).unwrap();
        assert!(verify_comm_tri(&zero).passed);
    }

    #[test]
    fn assoc_algebra_checks_associativity() {
        assert!(AssocAlgebra::total_product_of(&fixtures::example_1d()).is_ok());
        assert!(AssocAlgebra::total_product_of(&fixtures::example_2d()).is_ok());
        // e0 e0 = e1, e1 e0 = e0: (e0 e0) e0 = e0 but e0 (e0 e0) = 0
        let mut t = StructureTable::zeros(2);
        t.set(0, 0, 1, rat(1));
        t.set(1, 0, 0, rat(1));
        assert!(matches!(
            AssocAlgebra::new(t),
            Err(AlgebraError::NotAssociative(_))
        ));
    }

    #[test]
    fn bilinear_apply() {
        let b = fixtures::example_2d();
        let x = BElement::from_coeffs(vec![ratio(1, 2), rat(3)]);
        let y = BElement::from_coeffs(vec![rat(2), rat(-1)]);
        // e1 ≺ e1 = e1, e2 ≺ e2 = e2, mixed zero
        assert_eq!(
            b.prec(&x, &y).unwrap(),
            BElement::from_coeffs(vec![rat(1), rat(-3)])
        );
    }
}
