//! Subcommand implementations. Scalar results print to stdout; tables and
//! reports are written into the output directory, each beside its run
//! manifest.

use std::path::{Path, PathBuf};

use serde_json::json;

use sdbounds_core::{
    dataset, double_slit_report, fuzz_bounds, incompatibility, moments, skew_information,
    sweep_two_component, variance_bounds, BoundsReport, CoefficientScheme, EnsembleConfig,
    FuzzReport, IncompatBoundsReport, OperatorScheme, Sign, SlitConfig, SuperpositionSpec,
    SweepReport, Variant,
};

use crate::error::{CliError, CliResult};
use crate::io::{
    csv_line, ensure_dir, fmt_float, load_density, load_operator, load_slit_config, load_state,
    parse_alpha_list, write_atomic,
};
use crate::manifest::RunManifest;
use crate::{CoeffArg, Command, OpsArg, OutputFormat, SignArg, VariantArg};

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Sd {
            state,
            op,
            format,
            renormalize,
            out,
        } => cmd_sd(&state, &op, format, renormalize, &out),
        Command::Coherence { rho, op, out } => cmd_coherence(&rho, &op, &out),
        Command::Incompat {
            state,
            op_a,
            op_b,
            renormalize,
            out,
        } => cmd_incompat(&state, &op_a, &op_b, renormalize, &out),
        Command::Bounds {
            alpha,
            states,
            op,
            variant,
            renormalize,
            out,
        } => cmd_bounds(&alpha, &states, &op, variant, renormalize, &out),
        Command::IncompatBounds {
            alpha,
            states,
            op_a,
            op_b,
            variant,
            renormalize,
            out,
        } => cmd_incompat_bounds(&alpha, &states, &op_a, &op_b, variant, renormalize, &out),
        Command::SweepPaper { sign, grid, out } => cmd_sweep_paper(sign, grid, &out),
        Command::Fuzz {
            dim,
            components,
            trials,
            seed,
            coeffs,
            ops,
            out,
        } => cmd_fuzz(dim, components, trials, seed, coeffs, ops, &out),
        Command::DoubleSlit { config, out } => cmd_double_slit(config.as_deref(), &out),
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn cmd_sd(
    state: &Path,
    op: &Path,
    format: OutputFormat,
    renormalize: bool,
    out: &Path,
) -> CliResult<()> {
    let psi = load_state(state, renormalize)?;
    let a = load_operator(op)?;
    let m = moments(&psi, &a)?;
    match format {
        OutputFormat::Json => print_json(&m),
        OutputFormat::Csv => {
            println!("mean,second_moment,variance,sd");
            println!(
                "{}",
                csv_line(&[
                    fmt_float(m.mean),
                    fmt_float(m.second_moment),
                    fmt_float(m.variance),
                    fmt_float(m.sd),
                ])
            );
        }
    }
    let out = ensure_dir(out)?;
    RunManifest::new(
        json!({
            "state": state, "op": op,
            "format": match format { OutputFormat::Json => "json", OutputFormat::Csv => "csv" },
            "renormalize": renormalize,
        }),
        None,
    )
    .write(&out, "sd")
}

fn cmd_coherence(rho: &Path, op: &Path, out: &Path) -> CliResult<()> {
    let density = load_density(rho)?;
    let k = load_operator(op)?;
    let value = skew_information(&density, &k)?;
    print_json(&json!({ "skew_information": value }));
    let out = ensure_dir(out)?;
    RunManifest::new(json!({ "rho": rho, "op": op }), None).write(&out, "coherence")
}

fn cmd_incompat(
    state: &Path,
    op_a: &Path,
    op_b: &Path,
    renormalize: bool,
    out: &Path,
) -> CliResult<()> {
    let psi = load_state(state, renormalize)?;
    let a = load_operator(op_a)?;
    let b = load_operator(op_b)?;
    let value = incompatibility(&psi, &a, &b)?;
    print_json(&json!({ "incompatibility": value }));
    let out = ensure_dir(out)?;
    RunManifest::new(
        json!({ "state": state, "opA": op_a, "opB": op_b, "renormalize": renormalize }),
        None,
    )
    .write(&out, "incompat")
}

fn build_spec(alpha: &str, states: &[PathBuf], renormalize: bool) -> CliResult<SuperpositionSpec> {
    let coefficients = parse_alpha_list(alpha)?;
    if coefficients.len() != states.len() {
        return Err(CliError::BadArgument(format!(
            "--alpha lists {} coefficients but {} state files were given",
            coefficients.len(),
            states.len()
        )));
    }
    let components = states
        .iter()
        .map(|p| load_state(p, renormalize))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SuperpositionSpec::new(coefficients, components)?)
}

fn cmd_bounds(
    alpha: &str,
    states: &[PathBuf],
    op: &Path,
    variant: VariantArg,
    renormalize: bool,
    out: &Path,
) -> CliResult<()> {
    let spec = build_spec(alpha, states, renormalize)?;
    let a = load_operator(op)?;
    let compute = |v: Variant| -> CliResult<BoundsReport> { Ok(variance_bounds(&spec, &a, v)?) };
    let value = match variant {
        VariantArg::Corrected => serde_json::to_value(compute(Variant::Corrected)?),
        VariantArg::Printed => serde_json::to_value(compute(Variant::Printed)?),
        VariantArg::Both => serde_json::to_value(json!({
            "corrected": compute(Variant::Corrected)?,
            "printed": compute(Variant::Printed)?,
        })),
    }
    .expect("reports serialize");
    print_json(&value);
    let out = ensure_dir(out)?;
    RunManifest::new(
        json!({
            "alpha": alpha, "states": states, "op": op,
            "variant": variant.as_str(), "renormalize": renormalize,
        }),
        None,
    )
    .write(&out, "bounds")
}

fn cmd_incompat_bounds(
    alpha: &str,
    states: &[PathBuf],
    op_a: &Path,
    op_b: &Path,
    variant: VariantArg,
    renormalize: bool,
    out: &Path,
) -> CliResult<()> {
    let spec = build_spec(alpha, states, renormalize)?;
    let a = load_operator(op_a)?;
    let b = load_operator(op_b)?;
    let compute = |v: Variant| -> CliResult<IncompatBoundsReport> {
        Ok(sdbounds_core::incompatibility_bounds(&spec, &a, &b, v)?)
    };
    let value = match variant {
        VariantArg::Corrected => serde_json::to_value(compute(Variant::Corrected)?),
        VariantArg::Printed => serde_json::to_value(compute(Variant::Printed)?),
        VariantArg::Both => serde_json::to_value(json!({
            "corrected": compute(Variant::Corrected)?,
            "printed": compute(Variant::Printed)?,
        })),
    }
    .expect("reports serialize");
    print_json(&value);
    let out = ensure_dir(out)?;
    RunManifest::new(
        json!({
            "alpha": alpha, "states": states, "opA": op_a, "opB": op_b,
            "variant": variant.as_str(), "renormalize": renormalize,
        }),
        None,
    )
    .write(&out, "incompat-bounds")
}

/// Fixed sweep CSV column order (also documented in `--help`).
pub const SWEEP_CSV_HEADER: &str = "x,sign,norm_sq,exact,\
corrected_lower_raw,corrected_lower,corrected_upper,\
corrected_lower_satisfied,corrected_upper_satisfied,\
printed_lower_raw,printed_lower,printed_upper,\
printed_lower_satisfied,printed_upper_satisfied";

fn sweep_csv(report: &SweepReport) -> String {
    let mut text = String::from(SWEEP_CSV_HEADER);
    text.push('\n');
    for row in &report.rows {
        let cells = [
            fmt_float(row.x),
            row.sign.to_string(),
            fmt_float(row.norm_sq),
            fmt_float(row.exact),
            fmt_float(row.corrected.lower_raw),
            fmt_float(row.corrected.lower),
            fmt_float(row.corrected.upper),
            row.corrected.lower_satisfied.to_string(),
            row.corrected.upper_satisfied.to_string(),
            fmt_float(row.printed.lower_raw),
            fmt_float(row.printed.lower),
            fmt_float(row.printed.upper),
            row.printed.lower_satisfied.to_string(),
            row.printed.upper_satisfied.to_string(),
        ];
        text.push_str(&csv_line(&cells));
        text.push('\n');
    }
    text
}

fn cmd_sweep_paper(sign: SignArg, grid: usize, out: &Path) -> CliResult<()> {
    let out = ensure_dir(out)?;
    let psi1 = dataset::state_one();
    let psi2 = dataset::state_two();
    let a = dataset::observable();
    let signs: &[Sign] = match sign {
        SignArg::Plus => &[Sign::Plus],
        SignArg::Minus => &[Sign::Minus],
        SignArg::Both => &[Sign::Plus, Sign::Minus],
    };
    for &s in signs {
        let report = sweep_two_component(&psi1, &psi2, &a, grid, s)?;
        let path = out.join(format!("sweep_{s}.csv"));
        write_atomic(&path, sweep_csv(&report).as_bytes())?;
        println!("wrote {}", path.display());
    }
    RunManifest::new(
        json!({ "sign": sign.as_str(), "grid": grid }),
        None,
    )
    .write(&out, "sweep-paper")
}

/// Fixed violations CSV column order (also documented in `--help`).
pub const VIOLATIONS_CSV_HEADER: &str = "index,variant,side,margin";

fn violations_csv(report: &FuzzReport) -> String {
    let mut text = String::from(VIOLATIONS_CSV_HEADER);
    text.push('\n');
    for v in &report.violations {
        let cells = [
            v.index.to_string(),
            v.variant.to_string(),
            match v.side {
                sdbounds_core::BoundSide::Lower => "lower".to_string(),
                sdbounds_core::BoundSide::Upper => "upper".to_string(),
            },
            fmt_float(v.margin),
        ];
        text.push_str(&csv_line(&cells));
        text.push('\n');
    }
    text
}

fn cmd_fuzz(
    dim: usize,
    components: usize,
    trials: u64,
    seed: u64,
    coeffs: CoeffArg,
    ops: OpsArg,
    out: &Path,
) -> CliResult<()> {
    let config = EnsembleConfig {
        dim,
        n_components: components,
        master_seed: seed,
        coefficient_scheme: match coeffs {
            CoeffArg::RealPositive => CoefficientScheme::RealPositive,
            CoeffArg::ComplexHaar => CoefficientScheme::ComplexHaar,
        },
        operator_scheme: match ops {
            OpsArg::Gue => OperatorScheme::Gue,
            OpsArg::RealSymmetric => OperatorScheme::RealSymmetric,
            OpsArg::Diagonal => OperatorScheme::Diagonal,
        },
    };
    let report = fuzz_bounds(&config, trials)?;
    let out = ensure_dir(out)?;

    let mut json_bytes = serde_json::to_vec_pretty(&report).expect("report serializes");
    json_bytes.push(b'\n');
    let json_path = out.join("fuzz_report.json");
    write_atomic(&json_path, &json_bytes)?;
    let csv_path = out.join("violations.csv");
    write_atomic(&csv_path, violations_csv(&report).as_bytes())?;
    println!("wrote {}", json_path.display());
    println!("wrote {}", csv_path.display());
    println!(
        "corrected: {}/{} lower, {}/{} upper violations; printed: {}/{} lower, {}/{} upper",
        report.corrected.lower_violations,
        trials,
        report.corrected.upper_violations,
        trials,
        report.printed.lower_violations,
        trials,
        report.printed.upper_violations,
        trials,
    );

    RunManifest::new(
        serde_json::to_value(config).expect("config serializes"),
        Some(seed),
    )
    .write(&out, "fuzz")
}

/// Fixed double-slit CSV row order (also documented in `--help`).
pub const DOUBLE_SLIT_CSV_HEADER: &str = "quantity,value";

fn cmd_double_slit(config_path: Option<&Path>, out: &Path) -> CliResult<()> {
    let config = match config_path {
        Some(path) => load_slit_config(path)?,
        None => SlitConfig::default(),
    };
    let report = double_slit_report(&config)?;

    let mut text = String::from(DOUBLE_SLIT_CSV_HEADER);
    text.push('\n');
    let mut push = |name: &str, value: String| {
        text.push_str(name);
        text.push(',');
        text.push_str(&value);
        text.push('\n');
    };
    push("slit_one_mean", fmt_float(report.slit_one.mean));
    push("slit_one_sd", fmt_float(report.slit_one.sd));
    push("slit_two_mean", fmt_float(report.slit_two.mean));
    push("slit_two_sd", fmt_float(report.slit_two.sd));
    push("both_slits_mean", fmt_float(report.both_slits.mean));
    push("both_slits_sd", fmt_float(report.both_slits.sd));
    push("norm_sq", fmt_float(report.norm_sq));
    push("scaled_variance", fmt_float(report.corrected.exact));
    push("corrected_lower", fmt_float(report.corrected.lower));
    push("corrected_upper", fmt_float(report.corrected.upper));
    push(
        "corrected_lower_satisfied",
        report.corrected.lower_satisfied.to_string(),
    );
    push(
        "corrected_upper_satisfied",
        report.corrected.upper_satisfied.to_string(),
    );
    push("printed_lower", fmt_float(report.printed.lower));
    push("printed_upper", fmt_float(report.printed.upper));
    push(
        "printed_lower_satisfied",
        report.printed.lower_satisfied.to_string(),
    );
    push(
        "printed_upper_satisfied",
        report.printed.upper_satisfied.to_string(),
    );

    let out = ensure_dir(out)?;
    let csv_path = out.join("double_slit.csv");
    write_atomic(&csv_path, text.as_bytes())?;
    println!("wrote {}", csv_path.display());

    RunManifest::new(
        serde_json::to_value(config).expect("config serializes"),
        None,
    )
    .write(&out, "double-slit")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_csv_is_deterministic_and_ordered() {
        let report = sweep_two_component(
            &dataset::state_one(),
            &dataset::state_two(),
            &dataset::observable(),
            5,
            Sign::Plus,
        )
        .unwrap();
        let a = sweep_csv(&report);
        let b = sweep_csv(&report);
        assert_eq!(a, b);
        let mut lines = a.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_CSV_HEADER);
        assert_eq!(lines.count(), 5);
    }
}
