//! Exact matrices of `δ_tri` and the cohomology dimensions they determine.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{format_coeffs, TriDendAlgebra};
use crate::cochain::{CochainError, DeltaRoute, TriCochain};
use crate::exactlin::{kernel_basis, rank, QMatrix, Rational};

pub use crate::cochain::{Cell, CochainBasisIndex};

/// `(2ⁿ − 1) · dⁿ · d`.
pub fn cochain_dim(n: usize, d: usize) -> usize {
    ((1usize << n) - 1) * d.pow(n as u32) * d
}

/// Number of coordinates of `f(x₁ ⊗ e_{j₁}, …, xₙ ⊗ e_{jₙ})` for a Hochschild
/// `n`-cochain on `A ⊗ B` restricted to the multilinear part of `A` in
/// `x₁, …, xₙ`, which has dimension `2ⁿ − 1`.
pub fn hochschild_slice_dim(n: usize, d: usize) -> usize {
    ((1usize << n) - 1) * d.pow(n as u32) * d
}

/// Matrix of `δ_tri : Cⁿ → Cⁿ⁺¹` in the [`CochainBasisIndex`] cell bases;
/// column `j` is `δ_tri` of the `j`-th basis cochain.
pub fn assemble_tri_delta_matrix(
    b: &TriDendAlgebra,
    n: usize,
    route: DeltaRoute,
) -> Result<QMatrix, CochainError> {
    let d = b.dim();
    let src = cochain_dim(n, d);
    let columns: Vec<Result<Vec<Rational>, CochainError>> = (0..src)
        .into_par_iter()
        .map(|cell| {
            let g = TriCochain::basis(d, n, cell);
            route.apply(b, &g).map(TriCochain::into_coeffs)
        })
        .collect();
    let columns = columns.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_columns(cochain_dim(n + 1, d), &columns).expect("column lengths agree"))
}

/// Per-degree data of a [`CohomologyReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim_cochains: usize,
    /// `rank δⁿ`.
    pub rank: usize,
    pub kernel_dim: usize,
    /// `rank δⁿ⁻¹`, zero for `n = 1`.
    pub image_dim: usize,
    pub h_dim: usize,
    /// `δⁿ · δⁿ⁻¹ = 0`; vacuous for `n = 1`.
    pub delta_squared_zero: bool,
    pub quotient_slice_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycles: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub dim: usize,
    pub route: String,
    pub degrees: Vec<DegreeReport>,
}

impl CohomologyReport {
    pub fn degree(&self, n: usize) -> Option<&DegreeReport> {
        self.degrees.iter().find(|r| r.degree == n)
    }

    pub fn h_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|r| r.h_dim).collect()
    }

    pub fn delta_squared_zero(&self) -> bool {
        self.degrees.iter().all(|r| r.delta_squared_zero)
    }
}

/// `dim Hⁿ` for `1 ≤ n ≤ n_max`, with `δⁿ⁻¹` and `δⁿ` from `route` (or the
/// per-degree preferred route when `None`). `emit_cocycles` attaches kernel
/// bases of every `δⁿ`.
pub fn cohomology_dims(
    b: &TriDendAlgebra,
    n_max: usize,
    route: Option<DeltaRoute>,
    emit_cocycles: bool,
) -> Result<CohomologyReport, CochainError> {
    let d = b.dim();
    let mut degrees = Vec::with_capacity(n_max);
    let mut previous: Option<QMatrix> = None;
    for n in 1..=n_max {
        let delta =
            assemble_tri_delta_matrix(b, n, route.unwrap_or_else(|| DeltaRoute::preferred(n)))?;
        let r = rank(&delta);
        let dim_cochains = delta.cols();
        let kernel_dim = dim_cochains - r;
        let (image_dim, delta_squared_zero) = match &previous {
            None => (0, true),
            Some(prev) => (rank(prev), delta.mul(prev).expect("composable").is_zero()),
        };
        let cocycles = emit_cocycles.then(|| {
            kernel_basis(&delta)
                .iter()
                .map(|v| format_coeffs(v))
                .collect()
        });
        degrees.push(DegreeReport {
            degree: n,
            dim_cochains,
            rank: r,
            kernel_dim,
            image_dim,
            h_dim: kernel_dim - image_dim,
            delta_squared_zero,
            quotient_slice_dim: hochschild_slice_dim(n, d) - dim_cochains,
            cocycles,
        });
        previous = Some(delta);
    }
    Ok(CohomologyReport {
        algebra: b.name().to_string(),
        dim: d,
        route: match route {
            Some(DeltaRoute::Extraction) => "extraction",
            Some(DeltaRoute::Explicit) => "explicit",
            None => "explicit_then_extraction",
        }
        .to_string(),
        degrees,
    })
}

/// Basis of degree-`n` tri-dendriform cocycles, via extraction.
pub fn cocycle_basis(b: &TriDendAlgebra, n: usize) -> Vec<Vec<Rational>> {
    let m = assemble_tri_delta_matrix(b, n, DeltaRoute::Extraction).expect("extraction is total");
    kernel_basis(&m)
}
