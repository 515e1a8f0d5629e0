//! File schemas, coefficient parsing, atomic writes and CSV rendering.
//!
//! Operator files: `{"dim": d, "re": [[...]], "im": [[...]]}` with "im"
//! optional (defaults to zeros). State files: `{"re": [...], "im": [...]}`
//! with "im" optional. States within the silent-renormalization window
//! are normalized on load; larger deviations need `--renormalize`.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use sdbounds_core::{
    DensityMatrix, HermitianOperator, Matrix, SlitConfig, StateVector, Tolerances,
};

use crate::error::{CliError, CliResult};

const TOL: Tolerances = Tolerances::DEFAULT;

#[derive(Deserialize)]
struct OperatorFile {
    dim: usize,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
struct StateFile {
    re: Vec<f64>,
    #[serde(default)]
    im: Option<Vec<f64>>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })
}

fn complex_matrix(path: &Path, file: OperatorFile) -> CliResult<Matrix> {
    let d = file.dim;
    let check_shape = |rows: &Vec<Vec<f64>>, field: &str| -> CliResult<()> {
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                detail: format!("field \"{field}\" is not a {d}x{d} matrix"),
            });
        }
        Ok(())
    };
    check_shape(&file.re, "re")?;
    if let Some(im) = &file.im {
        check_shape(im, "im")?;
    }
    let mut mat = Matrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let im = file.im.as_ref().map_or(0.0, |m| m[i][j]);
            mat.set(i, j, Complex64::new(file.re[i][j], im));
        }
    }
    Ok(mat)
}

pub fn load_operator(path: &Path) -> CliResult<HermitianOperator> {
    let file: OperatorFile = read_json(path)?;
    let mat = complex_matrix(path, file)?;
    Ok(HermitianOperator::new(mat)?)
}

pub fn load_density(path: &Path) -> CliResult<DensityMatrix> {
    let file: OperatorFile = read_json(path)?;
    let mat = complex_matrix(path, file)?;
    Ok(DensityMatrix::new(mat)?)
}

pub fn load_state(path: &Path, force_renormalize: bool) -> CliResult<StateVector> {
    let file: StateFile = read_json(path)?;
    if let Some(im) = &file.im {
        if im.len() != file.re.len() {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                detail: format!(
                    "field \"im\" has length {} but \"re\" has length {}",
                    im.len(),
                    file.re.len()
                ),
            });
        }
    }
    let amplitudes: Vec<Complex64> = file
        .re
        .iter()
        .enumerate()
        .map(|(k, &re)| Complex64::new(re, file.im.as_ref().map_or(0.0, |v| v[k])))
        .collect();
    let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let deviation = (norm - 1.0).abs();
    if deviation > TOL.state_renorm_window && !force_renormalize {
        return Err(CliError::NotNormalized {
            path: path.to_path_buf(),
            deviation,
        });
    }
    Ok(StateVector::normalized(amplitudes)?)
}

pub fn load_slit_config(path: &Path) -> CliResult<SlitConfig> {
    let config: SlitConfig = read_json(path)?;
    config.validate()?;
    Ok(config)
}

/// Parses a comma-separated coefficient list. Each entry is a real
/// number or a complex literal of the form `a+bi` / `a-bi` / `bi`.
pub fn parse_alpha_list(text: &str) -> CliResult<Vec<Complex64>> {
    text.split(',')
        .map(|token| parse_complex(token.trim()))
        .collect()
}

fn parse_complex(token: &str) -> CliResult<Complex64> {
    if token.is_empty() {
        return Err(CliError::BadArgument(
            "empty coefficient in --alpha list".into(),
        ));
    }
    if let Some(imag) = token.strip_suffix(['i', 'j']) {
        // Split the mantissa at the sign that separates re from im,
        // skipping exponent signs and the leading sign.
        let bytes = imag.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = imag[..k].parse().map_err(|_| bad_coefficient(token))?;
                let im_text = &imag[k..];
                let im: f64 = if im_text == "+" {
                    1.0
                } else if im_text == "-" {
                    -1.0
                } else {
                    im_text.parse().map_err(|_| bad_coefficient(token))?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if imag.is_empty() {
                    1.0
                } else if imag == "-" {
                    -1.0
                } else {
                    imag.parse().map_err(|_| bad_coefficient(token))?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = token.parse().map_err(|_| bad_coefficient(token))?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn bad_coefficient(token: &str) -> CliError {
    CliError::BadArgument(format!(
        "cannot parse coefficient {token:?}; expected forms like 0.6, -0.8, 0.6+0.2i"
    ))
}

/// Writes through a temporary sibling then renames, so readers never see
/// a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let mut tmp = path.to_path_buf();
    let name = tmp
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".to_string());
    tmp.set_file_name(format!(".{name}.tmp"));
    let io_err = |source: std::io::Error| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::write(&tmp, bytes).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)?;
    Ok(())
}

pub fn ensure_dir(dir: &Path) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    Ok(dir.to_path_buf())
}

/// Renders a float with 12 significant digits; stable across platforms
/// so CSV outputs diff cleanly.
pub fn fmt_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0
    format!("{x:.11e}")
}

/// One CSV line from already-rendered cells.
pub fn csv_line(cells: &[String]) -> String {
    cells.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_real_and_complex_coefficients() {
        let list = parse_alpha_list("0.6,0.8").unwrap();
        assert_eq!(list[0], Complex64::new(0.6, 0.0));
        assert_eq!(list[1], Complex64::new(0.8, 0.0));

        let list = parse_alpha_list("0.6+0.2i, -0.8-0.1i, 1i, -i, 2e-3+1e-2i").unwrap();
        assert_eq!(list[0], Complex64::new(0.6, 0.2));
        assert_eq!(list[1], Complex64::new(-0.8, -0.1));
        assert_eq!(list[2], Complex64::new(0.0, 1.0));
        assert_eq!(list[3], Complex64::new(0.0, -1.0));
        assert_eq!(list[4], Complex64::new(2e-3, 1e-2));
    }

    #[test]
    fn rejects_garbage_coefficients() {
        assert!(parse_alpha_list("0.6,abc").is_err());
        assert!(parse_alpha_list("").is_err());
    }

    #[test]
    fn float_formatting_has_12_significant_digits() {
        assert_eq!(fmt_float(1.0), "1.00000000000e0");
        assert_eq!(fmt_float(-0.0), "0.00000000000e0");
        assert_eq!(fmt_float(6.297153241977868), "6.29715324198e0");
    }
}
