use crate::error::{Error, Result};

/// Default cap on the order of dense eigenproblems.
pub const DEFAULT_DENSE_NODES: usize = 2048;

/// Dense row-major square matrix, expected symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix is not square"));
        }
        Ok(SymMatrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.n + j] = x;
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for (j, x) in self.row(i).iter().enumerate() {
                if i != j {
                    s += x * x;
                }
            }
        }
        s.sqrt()
    }

    /// Largest `|m_ij - m_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenOptions {
    pub vectors: bool,
    pub max_sweeps: usize,
    pub max_nodes: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            vectors: false,
            max_sweeps: 100,
            max_nodes: DEFAULT_DENSE_NODES,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricSpectrum {
    /// Ascending.
    pub values: Vec<f64>,
    /// `max ‖Mv − λv‖∞` over the eigenpairs when vectors were kept, otherwise
    /// the final off-diagonal norm.
    pub residual: f64,
    /// `vectors[k]` pairs with `values[k]`.
    pub vectors: Option<Vec<Vec<f64>>>,
    pub sweeps: usize,
}

/// Symmetric eigenvalues by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(m: &SymMatrix) -> Result<SymmetricSpectrum> {
    symmetric_eigen(m, &EigenOptions::default())
}

pub fn symmetric_eigen(m: &SymMatrix, opts: &EigenOptions) -> Result<SymmetricSpectrum> {
    let n = m.order();
    if n > opts.max_nodes {
        return Err(Error::budget(format!(
            "dense eigensolve of order {n} exceeds the cap of {}",
            opts.max_nodes
        )));
    }
    if m.asymmetry() > 1e-12 {
        return Err(Error::invalid(format!(
            "matrix is not symmetric (max deviation {:.3e})",
            m.asymmetry()
        )));
    }
    let mut a = m.clone();
    let mut v = opts.vectors.then(|| SymMatrix::identity(n));
    let target = 1e-12 * m.frobenius();
    let mut sweeps = 0;
    // round-robin schedule over an even number of slots; a padding slot
    // `n` sits out its pairing
    let slots = n + n % 2;
    let rounds = slots.saturating_sub(1);
    let mut off = a.off_diagonal_norm();
    while off >= target && off > 0.0 {
        if sweeps == opts.max_sweeps {
            return Err(Error::NotConverged {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        // entries below `skip` jointly contribute under target / 10
        let skip = 0.1 * target / n as f64;
        for round in 0..rounds {
            let rots: Vec<Rotation> = tournament_round(slots, round)
                .filter(|&(p, q)| p < n && q < n && a.get(p, q).abs() > skip)
                .map(|(p, q)| Rotation::annihilating(&a, p, q))
                .collect();
            apply_round(&mut a, v.as_mut(), &rots);
        }
        off = a.off_diagonal_norm();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let (vectors, residual) = match v {
        Some(v) => {
            // eigenvectors are the columns of the accumulated rotation
            let vecs: Vec<Vec<f64>> = order
                .iter()
                .map(|&k| (0..n).map(|i| v.get(i, k)).collect())
                .collect();
            let residual = vecs
                .iter()
                .zip(&values)
                .map(|(x, &lambda)| {
                    (0..n)
                        .map(|i| {
                            let mx: f64 = m.row(i).iter().zip(x).map(|(a, b)| a * b).sum();
                            (mx - lambda * x[i]).abs()
                        })
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            (Some(vecs), residual)
        }
        None => (None, off),
    };
    Ok(SymmetricSpectrum {
        values,
        residual,
        vectors,
        sweeps,
    })
}

/// Pairs of round `r` in the circle method: slot 0 stays fixed, the others
/// rotate.
fn tournament_round(slots: usize, r: usize) -> impl Iterator<Item = (usize, usize)> {
    let m = slots - 1;
    let at = move |i: usize| if i == 0 { 0 } else { 1 + (i - 1 + r) % m };
    (0..slots / 2).map(move |i| {
        let (x, y) = (at(i), at(slots - 1 - i));
        (x.min(y), x.max(y))
    })
}

#[derive(Clone, Copy, Debug)]
struct Rotation {
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    /// New diagonal entries.
    app: f64,
    aqq: f64,
}

impl Rotation {
    fn annihilating(a: &SymMatrix, p: usize, q: usize) -> Self {
        let apq = a.get(p, q);
        let (app, aqq) = (a.get(p, p), a.get(q, q));
        let theta = (aqq - app) / (2.0 * apq);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        Rotation {
            p,
            q,
            c,
            s: t * c,
            app: app - t * apq,
            aqq: aqq + t * apq,
        }
    }
}

/// `A <- J^T A J` for a set of rotations on disjoint index pairs, then
/// `V <- V J`. Rows are rotated first, then columns one row at a time.
fn apply_round(a: &mut SymMatrix, v: Option<&mut SymMatrix>, rots: &[Rotation]) {
    let n = a.n;
    for r in rots {
        let (head, tail) = a.data.split_at_mut(r.q * n);
        let row_p = &mut head[r.p * n..(r.p + 1) * n];
        for (x, y) in row_p.iter_mut().zip(tail[..n].iter_mut()) {
            let (xp, xq) = (*x, *y);
            *x = r.c * xp - r.s * xq;
            *y = r.s * xp + r.c * xq;
        }
    }
    rotate_columns(&mut a.data, n, rots);
    for r in rots {
        a.set(r.p, r.p, r.app);
        a.set(r.q, r.q, r.aqq);
        a.set(r.p, r.q, 0.0);
        a.set(r.q, r.p, 0.0);
    }
    if let Some(v) = v {
        rotate_columns(&mut v.data, n, rots);
    }
}

fn rotate_columns(data: &mut [f64], n: usize, rots: &[Rotation]) {
    for row in data.chunks_exact_mut(n) {
        for r in rots {
            let (xp, xq) = (row[r.p], row[r.q]);
            row[r.p] = r.c * xp - r.s * xq;
            row[r.q] = r.s * xp + r.c * xq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tournament_covers_every_pair_once() {
        for slots in [2usize, 4, 8, 10] {
            let mut seen = std::collections::BTreeSet::new();
            for r in 0..slots - 1 {
                let mut used = vec![false; slots];
                for (p, q) in tournament_round(slots, r) {
                    assert!(p < q && !used[p] && !used[q]);
                    used[p] = true;
                    used[q] = true;
                    assert!(seen.insert((p, q)));
                }
            }
            assert_eq!(seen.len(), slots * (slots - 1) / 2);
        }
    }

    #[test]
    fn odd_orders() {
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { i as f64 } else { 0.5 }).collect())
            .collect();
        let m = SymMatrix::from_rows(&rows).unwrap();
        let s = symmetric_eigenvalues(&m).unwrap();
        assert!((s.values.iter().sum::<f64>() - 10.0).abs() < 1e-12);
        let sq: f64 = s.values.iter().map(|x| x * x).sum();
        assert!((sq - m.frobenius().powi(2)).abs() < 1e-10);
        assert_eq!(symmetric_eigenvalues(&SymMatrix::identity(1)).unwrap().values, vec![1.0]);
    }

    #[test]
    fn identity_and_two_by_two() {
        let s = symmetric_eigenvalues(&SymMatrix::identity(4)).unwrap();
        assert_eq!(s.values, vec![1.0; 4]);
        let k2 = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = symmetric_eigenvalues(&k2).unwrap();
        assert!((s.values[0] + 1.0).abs() < 1e-12 && (s.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_spectra_match_cosines() {
        for n in [4usize, 7, 12] {
            let mut m = SymMatrix::zeros(n);
            for i in 0..n {
                m.set(i, (i + 1) % n, 1.0);
                m.set((i + 1) % n, i, 1.0);
            }
            let s = symmetric_eigenvalues(&m).unwrap();
            let mut expected: Vec<f64> = (0..n)
                .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
                .collect();
            expected.sort_by(f64::total_cmp);
            for (a, b) in s.values.iter().zip(&expected) {
                assert!((a - b).abs() < 1e-9, "n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn vectors_have_small_residual() {
        let rows: Vec<Vec<f64>> = (0..6)
            .map(|i| (0..6).map(|j| 1.0 / (1.0 + i as f64 + j as f64)).collect())
            .collect();
        let m = SymMatrix::from_rows(&rows).unwrap();
        let opts = EigenOptions {
            vectors: true,
            ..Default::default()
        };
        let s = symmetric_eigen(&m, &opts).unwrap();
        assert!(s.residual < 1e-12, "{}", s.residual);
        let sum: f64 = s.values.iter().sum();
        assert!((sum - m.trace()).abs() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_and_oversized() {
        let m = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.0]]).unwrap();
        assert!(matches!(symmetric_eigenvalues(&m), Err(Error::InvalidInput(_))));
        let opts = EigenOptions {
            max_nodes: 3,
            ..Default::default()
        };
        assert!(symmetric_eigen(&SymMatrix::identity(4), &opts)
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn sweep_cap_reports_non_convergence() {
        let rows: Vec<Vec<f64>> = (0..8)
            .map(|i| (0..8).map(|j| ((i * j) % 5) as f64 + (i + j) as f64).collect())
            .collect();
        let m = SymMatrix::from_rows(&rows).unwrap();
        let opts = EigenOptions {
            max_sweeps: 1,
            ..Default::default()
        };
        assert!(matches!(
            symmetric_eigen(&m, &opts),
            Err(Error::NotConverged { sweeps: 1, .. })
        ));
    }
}
