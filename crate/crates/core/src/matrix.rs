//! Eigensystem of the 2×2 correlation matrix and distances between
//! observation vectors.

use serde::Serialize;

use crate::bivariate::covariance_matrix;
use crate::error::{invalid, Result, StatError};

type Mat2 = [[f64; 2]; 2];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pca2 {
    pub r: f64,
    /// (1 + r, 1 − r).
    pub eigenvalues: [f64; 2],
    pub eigenvectors: [[f64; 2]; 2],
    /// Columns are the eigenvectors; a rotation by π/4.
    pub m: Mat2,
    /// Mᵀ R M.
    pub r_diag: Mat2,
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn transpose2(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

/// Closed-form principal components of R = [[1, r], [r, 1]].
pub fn pca_2x2(r: f64) -> Result<Pca2> {
    if !(r.abs() <= 1.0) {
        return Err(StatError::OutOfRange(r));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v1 = [h, h];
    let v2 = [-h, h];
    let m = [[v1[0], v2[0]], [v1[1], v2[1]]];
    let rm = [[1.0, r], [r, 1.0]];
    let r_diag = mul2(&mul2(&transpose2(&m), &rm), &m);
    Ok(Pca2 {
        r,
        eigenvalues: [1.0 + r, 1.0 - r],
        eigenvectors: [v1, v2],
        m,
        r_diag,
    })
}

impl Pca2 {
    /// M R_diag Mᵀ.
    pub fn reconstruct(&self) -> Mat2 {
        mul2(&mul2(&self.m, &self.r_diag), &transpose2(&self.m))
    }
}

fn check_dims(u: &[f64], v: &[f64]) -> Result<()> {
    if u.len() != v.len() {
        return Err(StatError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.is_empty() {
        return Err(StatError::EmptyInput);
    }
    Ok(())
}

pub fn euclidean_distance(u: &[f64], v: &[f64]) -> Result<f64> {
    check_dims(u, v)?;
    Ok(u.iter().zip(v).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
}

/// Lower-triangular L with A = L Lᵀ, or an error when A is not symmetric
/// positive definite.
pub fn cholesky(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let m = a.len();
    if m == 0 {
        return Err(StatError::EmptyInput);
    }
    if a.iter().any(|row| row.len() != m) {
        return Err(invalid("matrix is not square"));
    }
    let scale = a.iter().flatten().fold(0.0f64, |s, x| s.max(x.abs()));
    for i in 0..m {
        for j in 0..i {
            if (a[i][j] - a[j][i]).abs() > 1e-12 * scale.max(1.0) {
                return Err(invalid("matrix is not symmetric"));
            }
        }
    }
    let mut l = vec![vec![0.0; m]; m];
    for j in 0..m {
        let d = a[j][j] - (0..j).map(|k| l[j][k] * l[j][k]).sum::<f64>();
        if !(d > 1e-14 * scale) {
            return Err(invalid("matrix is not positive definite"));
        }
        l[j][j] = d.sqrt();
        for i in j + 1..m {
            let s = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            l[i][j] = s / l[j][j];
        }
    }
    Ok(l)
}

/// Inverse of a symmetric positive definite matrix via its Cholesky factor.
pub fn invert_spd(a: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let l = cholesky(a)?;
    let m = l.len();
    // columns of L⁻¹ by forward substitution
    let mut linv = vec![vec![0.0; m]; m];
    for c in 0..m {
        for i in c..m {
            let rhs = if i == c { 1.0 } else { 0.0 };
            let s: f64 = (c..i).map(|k| l[i][k] * linv[k][c]).sum();
            linv[i][c] = (rhs - s) / l[i][i];
        }
    }
    let mut inv = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..=i {
            let s: f64 = (i..m).map(|k| linv[k][i] * linv[k][j]).sum();
            inv[i][j] = s;
            inv[j][i] = s;
        }
    }
    Ok(inv)
}

/// √((u − v)ᵀ S⁻¹ (u − v)).
pub fn mahalanobis_distance(u: &[f64], v: &[f64], s_inv: &[Vec<f64>]) -> Result<f64> {
    check_dims(u, v)?;
    if s_inv.len() != u.len() {
        return Err(StatError::LengthMismatch {
            left: s_inv.len(),
            right: u.len(),
        });
    }
    cholesky(s_inv)?;
    Ok(quad_form(u, v, s_inv))
}

fn quad_form(u: &[f64], v: &[f64], s_inv: &[Vec<f64>]) -> f64 {
    let d: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    let mut q = 0.0;
    for (k, row) in s_inv.iter().enumerate() {
        for (l, s) in row.iter().enumerate() {
            q += d[k] * s * d[l];
        }
    }
    q.max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Euclidean,
    /// Uses the inverse of the sample covariance matrix of the data.
    Mahalanobis,
}

impl std::str::FromStr for Metric {
    type Err = StatError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" | "euclid" => Ok(Metric::Euclidean),
            "mahalanobis" => Ok(Metric::Mahalanobis),
            _ => Err(invalid(format!("unknown metric '{s}'"))),
        }
    }
}

/// Inverse sample covariance of an n×m data matrix given by rows.
pub fn inverse_covariance(rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let m = rows.first().map_or(0, Vec::len);
    let cols: Vec<Vec<f64>> = (0..m).map(|k| rows.iter().map(|r| r[k]).collect()).collect();
    invert_spd(&covariance_matrix(&cols)?)
}

/// n×n matrix of pairwise distances between the rows of `rows`.
pub fn proximity_matrix(rows: &[Vec<f64>], metric: Metric) -> Result<Vec<Vec<f64>>> {
    let n = rows.len();
    if n == 0 {
        return Err(StatError::EmptyInput);
    }
    let m = rows[0].len();
    if let Some(r) = rows.iter().find(|r| r.len() != m) {
        return Err(StatError::LengthMismatch { left: r.len(), right: m });
    }
    let s_inv = match metric {
        Metric::Euclidean => None,
        Metric::Mahalanobis => Some(inverse_covariance(rows)?),
    };
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = match &s_inv {
                None => euclidean_distance(&rows[i], &rows[j])?,
                Some(s) => quad_form(&rows[i], &rows[j], s),
            };
            d[i][j] = x;
            d[j][i] = x;
        }
    }
    Ok(d)
}
