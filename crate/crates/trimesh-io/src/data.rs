use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::derive_leading_trailing;

#[derive(Debug, Error)]
pub enum TriError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("JSON parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("missing required key {0:?}")]
    MissingKey(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invariant violation at {location}: {what}")]
    Invariant { location: String, what: String },
}

fn invariant(location: impl Into<String>, what: impl Into<String>) -> TriError {
    TriError::Invariant {
        location: location.into(),
        what: what.into(),
    }
}

/// Integer matrices of one ideal triangulation. `g`/`gp` hold the edge and
/// peripheral gluing rows when the input supplies them; `l`/`lp`/`lstar` are
/// always present (derived from `g` or read directly).
#[derive(Debug, Clone)]
pub struct TriangulationData {
    pub name: String,
    /// Tetrahedron count N.
    pub n: usize,
    /// Cusp count k.
    pub k: usize,
    pub g: Option<Vec<Vec<i64>>>,
    pub gp: Option<Vec<Vec<i64>>>,
    pub l: Vec<Vec<i64>>,
    pub lp: Vec<Vec<i64>>,
    /// Rows 1..N-1 of `l`.
    pub lstar: Vec<Vec<i64>>,
}

impl TriangulationData {
    pub fn edge_rows(&self) -> Result<&[Vec<i64>], TriError> {
        self.g
            .as_deref()
            .ok_or(TriError::MissingKey("G"))
    }

    pub fn peripheral_rows(&self) -> Result<&[Vec<i64>], TriError> {
        self.gp
            .as_deref()
            .ok_or(TriError::MissingKey("G"))
    }

    /// `lstar` with a different omitted edge row: all rows of `l` except
    /// `omit` (0-based). Used to check that results do not depend on which
    /// redundant edge equation is dropped.
    pub fn lstar_omitting(&self, omit: usize) -> Vec<Vec<i64>> {
        self.l
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .map(|(_, r)| r.clone())
            .collect()
    }
}

/// Strict angle structure in units of pi: one value per quad.
#[derive(Debug, Clone)]
pub struct AngleAssignment {
    pub a: Vec<f64>,
}

impl AngleAssignment {
    /// Dihedral angles in radians.
    pub fn radians(&self) -> Vec<f64> {
        self.a.iter().map(|x| x * std::f64::consts::PI).collect()
    }
}

#[derive(Deserialize)]
struct RawFile {
    name: Option<String>,
    #[serde(rename = "N")]
    n: Option<usize>,
    #[serde(default = "one")]
    k: usize,
    #[serde(rename = "G")]
    g: Option<Vec<Vec<i64>>>,
    #[serde(rename = "L")]
    l: Option<Vec<Vec<i64>>>,
    a: Option<Vec<f64>>,
}

fn one() -> usize {
    1
}

const TOL: f64 = 1e-9;

/// Load a triangulation plus its strict angle structure from a JSON file.
pub fn load_triangulation(
    path: impl AsRef<Path>,
) -> Result<(TriangulationData, AngleAssignment), TriError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| TriError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_triangulation(&text)
}

pub fn parse_triangulation(
    text: &str,
) -> Result<(TriangulationData, AngleAssignment), TriError> {
    let raw: RawFile = serde_json::from_str(text)?;
    let n = raw.n.ok_or(TriError::MissingKey("N"))?;
    let k = raw.k;
    if n < 2 {
        return Err(TriError::Dimension(format!("N = {n}, need N >= 2")));
    }
    if k < 1 {
        return Err(TriError::Dimension(format!("k = {k}, need k >= 1")));
    }
    let rows_expected = n + 2 * k;
    let cols = 3 * n;

    let check_dims = |mat: &[Vec<i64>], which: &str| -> Result<(), TriError> {
        if mat.len() != rows_expected {
            return Err(TriError::Dimension(format!(
                "{which} has {} rows, expected N + 2k = {rows_expected}",
                mat.len()
            )));
        }
        for (i, row) in mat.iter().enumerate() {
            if row.len() != cols {
                return Err(TriError::Dimension(format!(
                    "{which} row {i} has {} entries, expected 3N = {cols}",
                    row.len()
                )));
            }
        }
        Ok(())
    };

    let (g, gp, l, lp) = match (&raw.g, &raw.l) {
        (Some(gall), _) => {
            check_dims(gall, "G")?;
            let g: Vec<Vec<i64>> = gall[..n].to_vec();
            let gp: Vec<Vec<i64>> = gall[n..].to_vec();
            let l = derive_leading_trailing(&g, n);
            let lp = derive_leading_trailing(&gp, n);
            validate_gluing(&g, n)?;
            (Some(g), Some(gp), l, lp)
        }
        (None, Some(lall)) => {
            check_dims(lall, "L")?;
            let l = lall[..n].to_vec();
            let lp = lall[n..].to_vec();
            (None, None, l, lp)
        }
        (None, None) => return Err(TriError::MissingKey("G or L")),
    };
    validate_l(&l, n)?;

    let lstar = l[..n - 1].to_vec();
    let data = TriangulationData {
        name: raw.name.unwrap_or_default(),
        n,
        k,
        g,
        gp,
        l,
        lp,
        lstar,
    };

    let a = raw.a.ok_or(TriError::MissingKey("a"))?;
    if a.len() != cols {
        return Err(TriError::Dimension(format!(
            "a has {} entries, expected 3N = {cols}",
            a.len()
        )));
    }
    let angles = AngleAssignment { a };
    validate_angles(&data, &angles)?;
    Ok((data, angles))
}

fn validate_gluing(g: &[Vec<i64>], n: usize) -> Result<(), TriError> {
    for (i, row) in g.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if !(0..=2).contains(&e) {
                return Err(invariant(
                    format!("edge {i}, quad {j}"),
                    format!("gluing entry {e} outside {{0,1,2}}"),
                ));
            }
        }
    }
    // each quad faces exactly two tetrahedral edges across all edge rows
    for j in 0..3 * n {
        let s: i64 = g.iter().map(|row| row[j]).sum();
        if s != 2 {
            return Err(invariant(
                format!("quad column {j}"),
                format!("edge-row column sum {s}, expected 2"),
            ));
        }
    }
    Ok(())
}

fn validate_l(l: &[Vec<i64>], n: usize) -> Result<(), TriError> {
    for (i, row) in l.iter().enumerate() {
        for t in 0..n {
            let s = row[t] + row[n + t] + row[2 * n + t];
            if s != 0 {
                return Err(invariant(
                    format!("L row {i}, tetrahedron {t}"),
                    format!("quad triple sums to {s}, expected 0"),
                ));
            }
        }
    }
    for j in 0..3 * n {
        let s: i64 = l.iter().map(|row| row[j]).sum();
        if s != 0 {
            return Err(invariant(
                format!("L column {j}"),
                format!("rows sum to {s}, expected 0"),
            ));
        }
    }
    Ok(())
}

fn validate_angles(
    data: &TriangulationData,
    angles: &AngleAssignment,
) -> Result<(), TriError> {
    let n = data.n;
    let a = &angles.a;
    for (j, &x) in a.iter().enumerate() {
        if !(x > 0.0 && x < 1.0) {
            return Err(invariant(
                format!("quad {j}"),
                format!("angle {x} outside (0, 1)"),
            ));
        }
    }
    for t in 0..n {
        let s = a[t] + a[n + t] + a[2 * n + t];
        if (s - 1.0).abs() > TOL {
            return Err(invariant(
                format!("tetrahedron {t}"),
                format!("angle triple sums to {s}, expected 1"),
            ));
        }
    }
    if let Some(g) = &data.g {
        for (i, row) in g.iter().enumerate() {
            let s: f64 = row.iter().zip(a).map(|(&c, &x)| c as f64 * x).sum();
            if (s - 2.0).abs() > TOL {
                return Err(invariant(
                    format!("edge {i}"),
                    format!("angle holonomy {s}, expected 2"),
                ));
            }
        }
    }
    Ok(())
}

/// Peripheral angle holonomy `Gp . a` per peripheral row, in units of pi.
pub fn peripheral_angle_holonomy(
    data: &TriangulationData,
    angles: &AngleAssignment,
) -> Result<Vec<f64>, TriError> {
    let gp = data.peripheral_rows()?;
    Ok(gp
        .iter()
        .map(|row| row.iter().zip(&angles.a).map(|(&c, &x)| c as f64 * x).sum())
        .collect())
}
