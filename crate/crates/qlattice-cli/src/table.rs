//! Human-readable report rendering. Reals are rounded to three decimals;
//! the JSON format carries the full precision.

use qlattice::matrix::CMatrix;
use qlattice::pentagram::PentagramReport;
use qlattice::report::Analysis;

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn entry(z: qlattice::Complex64) -> String {
    if z.im.abs() < 5e-4 {
        format!("{:7.3}", z.re)
    } else {
        format!("{:.3}{:+.3}i", z.re, z.im)
    }
}

fn matrix_block(m: &CMatrix, indent: &str) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        out.push_str(indent);
        for c in 0..m.ncols() {
            out.push_str(&entry(m[(r, c)]));
            out.push(' ');
        }
        out.push('\n');
    }
    out
}

pub fn render_analysis(analysis: &Analysis) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "family: {} members in dimension {} (member dimensions {:?})\n",
        analysis.member_dims.len(),
        analysis.ambient_dim,
        analysis.member_dims
    ));
    out.push_str("\nprofile:\n");
    out.push_str("  i      R       R~      R^\n");
    for i in 0..analysis.profile.len() {
        out.push_str(&format!(
            "  {i:<4} {:7.3} {:7.3} {:7.3}\n",
            analysis.profile.r[i], analysis.profile.r_tilde[i], analysis.profile.r_hat[i]
        ));
    }
    out.push_str(&format!(
        "\nindependence: pairwise {}, full {}, weak {}\n",
        flag(analysis.independence.pairwise),
        flag(analysis.independence.full),
        flag(analysis.independence.weak)
    ));
    for witness in &analysis.independence.witnesses {
        let b = witness.offending.basis();
        if b.ncols() > 0 {
            out.push_str(&format!(
                "  overlap at member {}: contains {}\n",
                witness.index,
                row_vector(&b.column(0).into_owned())
            ));
        }
    }
    out.push_str(&format!(
        "totalness:    pairwise {}, full {}, weak {}\n",
        flag(analysis.totalness.pairwise),
        flag(analysis.totalness.full),
        flag(analysis.totalness.weak)
    ));
    for witness in &analysis.totalness.witnesses {
        let b = witness.offending.basis();
        if b.ncols() > 0 {
            out.push_str(&format!(
                "  gap at member {}: misses {}\n",
                witness.index,
                row_vector(&b.column(0).into_owned())
            ));
        }
    }
    out.push_str(&format!(
        "informationally independent: {}\n",
        flag(analysis.informationally_independent)
    ));
    out.push_str(&format!("\neta = {:.3} with degree matrix A:\n", analysis.eta));
    out.push_str(&matrix_block(&analysis.independence_matrix, "  "));
    out.push_str(&format!(
        "\nepsilon = {:.3} with degree matrix T:\n",
        analysis.epsilon
    ));
    out.push_str(&matrix_block(&analysis.totalness_matrix, "  "));
    out.trim_end().to_string()
}

fn row_vector(v: &qlattice::CVector) -> String {
    let parts: Vec<String> = v.iter().map(|&z| entry(z).trim().to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Measurement reading of the profile for a pure state: per member, the
/// yes/no probabilities and the collapsed yes-state.
pub fn render_measurements(
    family: &qlattice::SubspaceFamily,
    state: &qlattice::CVector,
    tol: &qlattice::TolerancePolicy,
) -> String {
    let mut out = String::new();
    out.push_str("\nmeasurement reading for the pure input state:\n");
    for (i, member) in family.members().iter().enumerate() {
        match qlattice::partitions::measure_pure(state, member, tol) {
            Ok(outcome) => {
                out.push_str(&format!(
                    "  member {i}: yes {:.3} / no {:.3}",
                    outcome.yes_probability, outcome.no_probability
                ));
                if let Some(yes) = outcome.yes_state {
                    out.push_str(&format!(", yes collapses to {}", row_vector(&yes)));
                }
                out.push('\n');
            }
            Err(_) => out.push_str(&format!("  member {i}: measurement unavailable\n")),
        }
    }
    out.trim_end().to_string()
}

pub fn render_pentagram(report: &PentagramReport) -> String {
    let mut out = String::new();
    out.push_str("pentagram analysis in dimension 3\n\n");
    out.push_str("  i    R(i)\n");
    for (i, p) in report.probabilities.iter().enumerate() {
        out.push_str(&format!("  {i}   {p:6.3}\n"));
    }
    out.push_str(&format!("\nsum R = {:.3} (eta = {:.3})\n", report.sum, report.eta));
    out.push_str(&format!(
        "classical bound 2 (normalized 0.4): {}\n",
        if report.classical_bound_satisfied {
            "satisfied"
        } else {
            "violated"
        }
    ));
    out.push_str(&format!(
        "quantum bound 2.5: {}\n",
        if report.quantum_bound_satisfied {
            "satisfied"
        } else {
            "violated"
        }
    ));
    out.push_str("\ndegree matrix A:\n");
    out.push_str(&matrix_block(&report.matrix, "  "));
    out.push_str(&format!(
        "eigenvalues: {:.3}, {:.3}, {:.3}\n",
        report.eigenvalues[0], report.eigenvalues[1], report.eigenvalues[2]
    ));
    out.push_str(&format!(
        "maximally violating state: {}\n",
        row_vector(&report.max_violating_state)
    ));
    out.trim_end().to_string()
}
