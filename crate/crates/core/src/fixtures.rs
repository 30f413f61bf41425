//! Built-in algebras used by tests, the CLI and the Python bindings.

use crate::algebra::{StructureTable, TriDendAlgebra, TriOp};
use crate::exactlin::rat;

/// One-dimensional algebra with `e ≺ e = e`, `e ≻ e = e`, `e · e = −e`.
pub fn example_1d() -> TriDendAlgebra {
    let mut b = zero_algebra(1).with_name("tridend_1d");
    b.table_mut(TriOp::Prec).set(0, 0, 0, rat(1));
    b.table_mut(TriOp::Succ).set(0, 0, 0, rat(1));
    b.table_mut(TriOp::Dot).set(0, 0, 0, rat(-1));
    b
}

/// Two orthogonal copies of [`example_1d`]: `e_i op e_i` as in the
/// one-dimensional case, all mixed products zero.
pub fn example_2d() -> TriDendAlgebra {
    let mut b = zero_algebra(2).with_name("tridend_2d");
    for i in 0..2 {
        b.table_mut(TriOp::Prec).set(i, i, i, rat(1));
        b.table_mut(TriOp::Succ).set(i, i, i, rat(1));
        b.table_mut(TriOp::Dot).set(i, i, i, rat(-1));
    }
    b
}

/// All products zero.
pub fn zero_algebra(dim: usize) -> TriDendAlgebra {
    TriDendAlgebra::new(
        format!("zero_{dim}d"),
        StructureTable::zeros(dim),
        StructureTable::zeros(dim),
        StructureTable::zeros(dim),
    )
    .expect("tables share a dimension")
}

/// [`example_1d`] with the sign of `e · e` flipped; violates axiom 1.
pub fn example_1d_broken() -> TriDendAlgebra {
    let mut b = example_1d().with_name("tridend_1d_broken");
    b.table_mut(TriOp::Dot).set(0, 0, 0, rat(1));
    b
}

/// [`example_2d`] with `e_1 ≻ e_2 = e_1` added; violates axiom 4
/// (`e_1 ≻ (e_2 · e_2) = −e_1` while `(e_1 ≻ e_2) · e_2 = 0`).
pub fn example_2d_broken() -> TriDendAlgebra {
    let mut b = example_2d().with_name("tridend_2d_broken");
    b.table_mut(TriOp::Succ).set(0, 1, 0, rat(1));
    b
}
