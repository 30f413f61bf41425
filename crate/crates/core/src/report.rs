//! Run reports emitted by the command-line tool.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::AxiomReport;
use crate::cochain::DeltaRoute;
use crate::cohomology::CohomologyReport;

/// Violations shown per check in the text rendering; JSON lists all of them.
const TEXT_VIOLATION_LIMIT: usize = 5;
/// Characters of each side of a violation shown in the text rendering.
const TEXT_SIDE_LIMIT: usize = 100;

fn clip(s: &str) -> String {
    match s.char_indices().nth(TEXT_SIDE_LIMIT) {
        Some((i, _)) => format!("{}...", &s[..i]),
        None => s.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: String,
    pub input_sha256: String,
    pub passed: bool,
    pub payload: Payload,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Verify(VerifyPayload),
    Assoc(AssocPayload),
    Cochain(CochainPayload),
    Cohomology(CohomologyPayload),
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyPayload {
    pub algebra: String,
    pub dim: usize,
    pub axioms: AxiomReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssocPayload {
    pub algebra: String,
    pub dim: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub random: usize,
    pub axioms: AxiomReport,
    pub generator_triples: AxiomReport,
    pub random_triples: AxiomReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteCheck {
    pub route: DeltaRoute,
    pub report: AxiomReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CochainPayload {
    pub algebra: String,
    pub dim: usize,
    pub degree: usize,
    pub commutation: Vec<RouteCheck>,
    pub roundtrip: AxiomReport,
    pub psi_rank: usize,
    pub psi_columns: usize,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPathCheck {
    pub degree: usize,
    pub matrices_equal: bool,
    pub rank_extraction: usize,
    pub rank_explicit: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyPayload {
    pub cohomology: CohomologyReport,
    pub dual_path: Vec<DualPathCheck>,
}

impl RunReport {
    /// 0 on pass, 1 on a mathematical failure.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let row = |out: &mut String, k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k:<22}{v}");
        };
        row(&mut out, "command", &self.command);
        row(&mut out, "input", &self.input);
        row(&mut out, "sha256", &self.input_sha256);
        match &self.payload {
            Payload::Verify(p) => {
                row(
                    &mut out,
                    "algebra",
                    &format!("{} (dim {})", p.algebra, p.dim),
                );
                axiom_rows(&mut out, "axioms", &p.axioms);
            }
            Payload::Assoc(p) => {
                row(
                    &mut out,
                    "algebra",
                    &format!("{} (dim {})", p.algebra, p.dim),
                );
                row(&mut out, "seed", &p.seed);
                row(&mut out, "max degree", &p.max_degree);
                axiom_rows(&mut out, "axioms", &p.axioms);
                axiom_rows(&mut out, "generator triples", &p.generator_triples);
                axiom_rows(&mut out, "random triples", &p.random_triples);
            }
            Payload::Cochain(p) => {
                row(
                    &mut out,
                    "algebra",
                    &format!("{} (dim {})", p.algebra, p.dim),
                );
                row(&mut out, "degree", &p.degree);
                for c in &p.commutation {
                    let label = match c.route {
                        DeltaRoute::Explicit => "commutation/explicit",
                        DeltaRoute::Extraction => "commutation/extract",
                    };
                    axiom_rows(&mut out, label, &c.report);
                }
                axiom_rows(&mut out, "round trip", &p.roundtrip);
                row(
                    &mut out,
                    "psi injective",
                    &format!(
                        "{} (rank {} of {})",
                        verdict(p.injective),
                        p.psi_rank,
                        p.psi_columns
                    ),
                );
            }
            Payload::Cohomology(p) => {
                let c = &p.cohomology;
                row(
                    &mut out,
                    "algebra",
                    &format!("{} (dim {})", c.algebra, c.dim),
                );
                row(&mut out, "route", &c.route);
                let _ = writeln!(
                    out,
                    "\n{:>3} {:>8} {:>8} {:>8} {:>8} {:>8} {:>6}",
                    "n", "dim C^n", "rank d", "ker d", "im d'", "dim H^n", "d^2=0"
                );
                for r in &c.degrees {
                    let _ = writeln!(
                        out,
                        "{:>3} {:>8} {:>8} {:>8} {:>8} {:>8} {:>6}",
                        r.degree,
                        r.dim_cochains,
                        r.rank,
                        r.kernel_dim,
                        r.image_dim,
                        r.h_dim,
                        if r.delta_squared_zero { "yes" } else { "NO" }
                    );
                }
                for r in &c.degrees {
                    if let Some(cocycles) = &r.cocycles {
                        let _ =
                            writeln!(out, "\ncocycles, degree {} ({}):", r.degree, cocycles.len());
                        for v in cocycles {
                            let _ = writeln!(out, "  ({})", v.join(", "));
                        }
                    }
                }
                if !p.dual_path.is_empty() {
                    out.push('\n');
                }
                for d in &p.dual_path {
                    row(
                        &mut out,
                        &format!("dual path, degree {}", d.degree),
                        &format!(
                            "{} (rank {} / {})",
                            verdict(d.matrices_equal),
                            d.rank_extraction,
                            d.rank_explicit
                        ),
                    );
                }
            }
        }
        if let Some(ms) = self.wall_time_ms {
            row(&mut out, "wall time", &format!("{ms} ms"));
        }
        row(&mut out, "result", &verdict(self.passed));
        out
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn axiom_rows(out: &mut String, label: &str, report: &AxiomReport) {
    let _ = writeln!(
        out,
        "{label:<22}{} ({} checked, {} violations)",
        verdict(report.passed),
        report.checked,
        report.violations.len()
    );
    for v in report.violations.iter().take(TEXT_VIOLATION_LIMIT) {
        let _ = writeln!(
            out,
            "  {} at {:?}: {} != {}",
            v.axiom,
            v.witness,
            clip(&v.lhs),
            clip(&v.rhs)
        );
    }
    if report.violations.len() > TEXT_VIOLATION_LIMIT {
        let _ = writeln!(
            out,
            "  ... {} more",
            report.violations.len() - TEXT_VIOLATION_LIMIT
        );
    }
}
