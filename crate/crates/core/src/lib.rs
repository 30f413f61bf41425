//! Exact computations with tri-dendriform algebras: axiom verification, the
//! associative algebra `A ⊗ B` over the free commutative tri-algebra `A`, the
//! cochain map `Ψ` into Hochschild cochains, and tri-dendriform cohomology
//! dimensions over the rationals.

pub mod algebra;
pub mod cli;
pub mod cochain;
pub mod cohomology;
pub mod exactlin;
pub mod fixtures;
pub mod format;
pub mod free;
pub mod report;
pub mod tensor;

pub use algebra::{AxiomReport, BElement, TriDendAlgebra, TriOp};
pub use cochain::{DeltaRoute, TriCochain};
pub use cohomology::CohomologyReport;
pub use exactlin::{QMatrix, Rational};
pub use free::{ComTriMonomial, FreeElement, Subset};
pub use tensor::TensorElement;
