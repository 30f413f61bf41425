//! Command implementations behind the `tricochain` binary.
//!
//! Every command returns a [`RunReport`] or a [`CliError`]; the binary maps
//! them to exit codes 0 (pass), 1 (mathematical failure) and 2 (input error).

use std::path::Path;
use std::time::Instant;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{verify_tridendriform, TriDendAlgebra};
use crate::cochain::{check_commutation, check_roundtrip, psi_matrix, DeltaRoute};
use crate::cohomology::{assemble_tri_delta_matrix, cohomology_dims};
use crate::exactlin::rank;
use crate::format::{parse_algebra, SpecError};
use crate::report::{
    AssocPayload, CochainPayload, CohomologyPayload, DualPathCheck, Payload, RouteCheck, RunReport,
    VerifyPayload,
};
use crate::tensor::{check_associativity, generator_triples, random_triples};

/// Largest cochain degree accepted without `allow_large`.
pub const DEGREE_CAP: usize = 3;

/// Generators used for the exhaustive degree-1 associativity triples.
const ASSOC_GENERATORS: usize = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Spec { path: String, source: SpecError },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub allow_large: bool,
    pub timing: bool,
}

pub struct Loaded {
    pub algebra: TriDendAlgebra,
    pub input: String,
    pub sha256: String,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let display = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: display.clone(),
        source,
    })?;
    let text =
        String::from_utf8(bytes.clone()).map_err(|e| CliError::Usage(format!("{display}: {e}")))?;
    let algebra = parse_algebra(&text).map_err(|source| CliError::Spec {
        path: display.clone(),
        source,
    })?;
    Ok(Loaded {
        algebra,
        input: display,
        sha256: format!("{:x}", Sha256::digest(&bytes)),
    })
}

fn check_degree(what: &str, n: usize, opts: Options) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage(format!("{what} must be at least 1")));
    }
    if n > DEGREE_CAP && !opts.allow_large {
        return Err(CliError::Usage(format!(
            "{what} {n} exceeds the cap of {DEGREE_CAP}; pass --allow-large to override"
        )));
    }
    Ok(())
}

fn finish(
    command: &str,
    loaded: Loaded,
    passed: bool,
    payload: Payload,
    start: Instant,
    opts: Options,
) -> RunReport {
    RunReport {
        tool: "tricochain".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        input: loaded.input,
        input_sha256: loaded.sha256,
        passed,
        payload,
        wall_time_ms: opts.timing.then(|| start.elapsed().as_millis()),
    }
}

pub fn cmd_verify(path: &Path, opts: Options) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let loaded = load(path)?;
    let b = &loaded.algebra;
    let axioms = verify_tridendriform(b);
    let payload = VerifyPayload {
        algebra: b.name().into(),
        dim: b.dim(),
        axioms,
    };
    let passed = payload.axioms.passed;
    Ok(finish(
        "verify",
        loaded,
        passed,
        Payload::Verify(payload),
        start,
        opts,
    ))
}

/// Runs the associativity checks even when the axioms fail, so a broken
/// algebra is reported with both the axiom violations and an `A ⊗ B` witness.
pub fn cmd_assoc_check(
    path: &Path,
    max_degree: usize,
    random: usize,
    seed: u64,
    opts: Options,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    if max_degree == 0 {
        return Err(CliError::Usage("--max-degree must be at least 1".into()));
    }
    let loaded = load(path)?;
    let b = &loaded.algebra;
    let axioms = verify_tridendriform(b);
    let generator_triples = check_associativity(b, &generator_triples(b.dim(), ASSOC_GENERATORS));
    let random_triples = check_associativity(b, &random_triples(b.dim(), random, max_degree, seed));
    let passed = axioms.passed && generator_triples.passed && random_triples.passed;
    let payload = AssocPayload {
        algebra: b.name().into(),
        dim: b.dim(),
        seed,
        max_degree,
        random,
        axioms,
        generator_triples,
        random_triples,
    };
    Ok(finish(
        "assoc-check",
        loaded,
        passed,
        Payload::Assoc(payload),
        start,
        opts,
    ))
}

/// Commutation with both differentials where the explicit one exists,
/// extraction round trip, and injectivity of `Ψ` in degree `n`.
pub fn cmd_cochain_check(path: &Path, degree: usize, opts: Options) -> Result<RunReport, CliError> {
    let start = Instant::now();
    check_degree("--degree", degree, opts)?;
    let loaded = load(path)?;
    let b = &loaded.algebra;
    let mut routes = vec![DeltaRoute::Extraction];
    if degree <= 2 {
        routes.push(DeltaRoute::Explicit);
    }
    let commutation = routes
        .into_iter()
        .map(|route| {
            let report = check_commutation(b, degree, route).expect("route defined in this degree");
            RouteCheck { route, report }
        })
        .collect::<Vec<_>>();
    let roundtrip = check_roundtrip(b, degree);
    let m = psi_matrix(b, degree);
    let psi_rank = rank(&m);
    let injective = psi_rank == m.cols();
    let passed = commutation.iter().all(|c| c.report.passed) && roundtrip.passed && injective;
    let payload = CochainPayload {
        algebra: b.name().into(),
        dim: b.dim(),
        degree,
        commutation,
        roundtrip,
        psi_rank,
        psi_columns: m.cols(),
        injective,
    };
    Ok(finish(
        "cochain-check",
        loaded,
        passed,
        Payload::Cochain(payload),
        start,
        opts,
    ))
}

/// Cohomology dimensions up to `max_degree`; passes iff `δ ∘ δ = 0` in every
/// degree and both differentials agree wherever the explicit one exists.
pub fn cmd_cohomology(
    path: &Path,
    max_degree: usize,
    emit_cocycles: bool,
    opts: Options,
) -> Result<RunReport, CliError> {
    let start = Instant::now();
    check_degree("--max-degree", max_degree, opts)?;
    let loaded = load(path)?;
    let b = &loaded.algebra;
    let cohomology =
        cohomology_dims(b, max_degree, None, emit_cocycles).expect("preferred routes are defined");
    let dual_path: Vec<DualPathCheck> = (1..=max_degree.min(2))
        .map(|n| {
            let ext = assemble_tri_delta_matrix(b, n, DeltaRoute::Extraction)
                .expect("extraction is total");
            let exp = assemble_tri_delta_matrix(b, n, DeltaRoute::Explicit).expect("degree ≤ 2");
            DualPathCheck {
                degree: n,
                matrices_equal: ext == exp,
                rank_extraction: rank(&ext),
                rank_explicit: rank(&exp),
            }
        })
        .collect();
    let passed = cohomology.delta_squared_zero() && dual_path.iter().all(|d| d.matrices_equal);
    let payload = CohomologyPayload {
        cohomology,
        dual_path,
    };
    Ok(finish(
        "cohomology",
        loaded,
        passed,
        Payload::Cohomology(payload),
        start,
        opts,
    ))
}
