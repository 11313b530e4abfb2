//! Dense Cholesky factorization and triangular solves for the small
//! (at most a few dozen rows) Gram matrices of the adaptation loop.
//! Matrices are row-major `n x n` slices.

use super::GpError;

/// Diagonal jitter tried, in order, when the plain factorization fails.
pub const JITTER_LADDER: [f64; 5] = [1e-10, 1e-9, 1e-8, 1e-7, 1e-6];

/// Lower-triangular `L` with `L Lᵀ = a`, or `None` if `a` is not
/// (numerically) positive definite.
pub fn cholesky(a: &[f64], n: usize) -> Option<Vec<f64>> {
    assert_eq!(a.len(), n * n);
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let dot: f64 = (0..j).map(|k| l[i * n + k] * l[j * n + k]).sum();
            if i == j {
                let d = a[i * n + i] - dot;
                if d.is_nan() || d <= 0.0 || !d.is_finite() {
                    return None;
                }
                l[i * n + i] = d.sqrt();
            } else {
                l[i * n + j] = (a[i * n + j] - dot) / l[j * n + j];
            }
        }
    }
    Some(l)
}

/// Factorizes `a`, escalating diagonal jitter along [`JITTER_LADDER`] on
/// failure. Returns the factor and the jitter that was needed.
pub fn cholesky_with_jitter(a: &[f64], n: usize) -> Result<(Vec<f64>, f64), GpError> {
    if let Some(l) = cholesky(a, n) {
        return Ok((l, 0.0));
    }
    let mut work = a.to_vec();
    for jitter in JITTER_LADDER {
        for i in 0..n {
            work[i * n + i] = a[i * n + i] + jitter;
        }
        if let Some(l) = cholesky(&work, n) {
            return Ok((l, jitter));
        }
    }
    Err(GpError::NotPositiveDefinite {
        max_jitter: JITTER_LADDER[JITTER_LADDER.len() - 1],
    })
}

/// Solves `L y = b` by forward substitution.
pub fn solve_lower(l: &[f64], n: usize, b: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; n];
    for i in 0..n {
        let dot: f64 = (0..i).map(|k| l[i * n + k] * y[k]).sum();
        y[i] = (b[i] - dot) / l[i * n + i];
    }
    y
}

/// Solves `Lᵀ x = y` by back substitution.
pub fn solve_upper_transposed(l: &[f64], n: usize, y: &[f64]) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let dot: f64 = (i + 1..n).map(|k| l[k * n + i] * x[k]).sum();
        x[i] = (y[i] - dot) / l[i * n + i];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_reproduces_matrix() {
        let a = [4.0, 2.0, 0.6, 2.0, 5.0, 1.0, 0.6, 1.0, 3.0];
        let l = cholesky(&a, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| l[i * 3 + k] * l[j * 3 + k]).sum();
                assert!((v - a[i * 3 + j]).abs() < 1e-12);
            }
        }
        let b = [1.0, -2.0, 0.5];
        let x = solve_upper_transposed(&l, 3, &solve_lower(&l, 3, &b));
        for i in 0..3 {
            let v: f64 = (0..3).map(|k| a[i * 3 + k] * x[k]).sum();
            assert!((v - b[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_matrix_needs_jitter() {
        // Rank one.
        let a = [1.0, 1.0, 1.0, 1.0];
        assert!(cholesky(&a, 2).is_none());
        let (_, jitter) = cholesky_with_jitter(&a, 2).unwrap();
        assert!(jitter > 0.0 && jitter <= 1e-6);
    }

    #[test]
    fn indefinite_matrix_is_a_hard_error() {
        let a = [1.0, 2.0, 2.0, 1.0];
        assert!(matches!(
            cholesky_with_jitter(&a, 2),
            Err(GpError::NotPositiveDefinite { .. })
        ));
    }
}
