//! Small least-squares fits used by the trend checks.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares `y = intercept + slope * x`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() {
        return Err(Error::invalid("fit inputs differ in length"));
    }
    if xs.len() < 2 {
        return Err(Error::invalid("fit needs at least two points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("fit abscissae are all equal"));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

/// Fit of `y = a + b t + c ln t`: exponential decay with a polynomial
/// correction factor `t^c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpPolyFit {
    pub intercept: f64,
    pub rate: f64,
    pub power: f64,
}

pub fn exp_poly_fit(ts: &[f64], ys: &[f64]) -> Result<ExpPolyFit> {
    if ts.len() != ys.len() || ts.len() < 3 {
        return Err(Error::invalid("exp-poly fit needs at least three points"));
    }
    if ts.iter().any(|&t| t <= 0.0) {
        return Err(Error::invalid("exp-poly fit needs positive t"));
    }
    // normal equations for the design [1, t, ln t]
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for (&t, &y) in ts.iter().zip(ys) {
        let row = [1.0, t, t.ln()];
        for i in 0..3 {
            aty[i] += row[i] * y;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let [a, b, c] = solve3(ata, aty).ok_or_else(|| Error::invalid("singular exp-poly fit"))?;
    Ok(ExpPolyFit {
        intercept: a,
        rate: b,
        power: c,
    })
}

fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - s) / m[row][row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 0.5 * x).collect();
        let fit = linear_fit(&xs, &ys).unwrap();
        assert!((fit.slope + 0.5).abs() < 1e-12);
        assert!((fit.intercept - 3.0).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recovers_exp_poly_parameters() {
        let ts: Vec<f64> = (4..=12).map(f64::from).collect();
        let ys: Vec<f64> = ts.iter().map(|t| 0.7 - 0.13 * t + 1.5 * t.ln()).collect();
        let fit = exp_poly_fit(&ts, &ys).unwrap();
        assert!((fit.rate + 0.13).abs() < 1e-9);
        assert!((fit.power - 1.5).abs() < 1e-8);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(linear_fit(&[1.0], &[2.0]).is_err());
        assert!(linear_fit(&[1.0, 1.0], &[2.0, 3.0]).is_err());
        assert!(exp_poly_fit(&[0.0, 1.0, 2.0], &[1.0, 2.0, 3.0]).is_err());
    }
}
