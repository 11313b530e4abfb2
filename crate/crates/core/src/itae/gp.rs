use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::linalg::{cholesky_with_jitter, solve_lower, solve_upper_transposed};
use super::{GpError, Matern52Kernel};
use crate::qd_archive::{Archive, CellId};

/// One conditioning point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub cell: Option<CellId>,
    pub x: [f64; 3],
    /// Prior mean at `x`.
    pub prior_mean: f64,
    pub value: f64,
}

/// GP posterior with a per-cell prior mean.
///
/// Conditioning uses the residuals of the observations against the prior:
///
/// ```text
/// mean(x) = μ0(x) + k(x)ᵀ K⁻¹ (f − μ0(X))
/// var(x)  = k(x, x) − k(x)ᵀ K⁻¹ k(x)
/// K       = [k(xᵢ, xⱼ)] + σ_noise² I
/// ```
#[derive(Clone, Debug)]
pub struct GpPosterior {
    kernel: Matern52Kernel,
    prior: BTreeMap<CellId, f64>,
    observations: Vec<Observation>,
    /// Cholesky factor of K.
    chol: Vec<f64>,
    /// K⁻¹ (f − μ0(X)).
    alpha: Vec<f64>,
    jitter: f64,
}

impl GpPosterior {
    pub fn new(kernel: Matern52Kernel, prior: BTreeMap<CellId, f64>) -> Result<Self, GpError> {
        kernel.validate()?;
        Ok(Self {
            kernel,
            prior,
            observations: Vec::new(),
            chol: Vec::new(),
            alpha: Vec::new(),
            jitter: 0.0,
        })
    }

    /// Prior mean taken from the archive's performances.
    pub fn from_archive(archive: &Archive, kernel: Matern52Kernel) -> Result<Self, GpError> {
        Self::new(kernel, archive.iter().map(|(c, e)| (*c, e.performance)).collect())
    }

    pub fn kernel(&self) -> &Matern52Kernel {
        &self.kernel
    }

    pub fn prior(&self) -> &BTreeMap<CellId, f64> {
        &self.prior
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    /// Diagonal jitter the last factorization needed.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Conditions on `value` observed at an archive cell.
    pub fn observe(&mut self, cell: CellId, value: f64) -> Result<(), GpError> {
        let prior_mean = *self.prior.get(&cell).ok_or(GpError::UnknownCell(cell))?;
        self.push(Observation {
            cell: Some(cell),
            x: cell.unit_point(),
            prior_mean,
            value,
        })
    }

    /// Conditions on `value` observed at an arbitrary point.
    pub fn observe_point(&mut self, x: [f64; 3], prior_mean: f64, value: f64) -> Result<(), GpError> {
        self.push(Observation {
            cell: None,
            x,
            prior_mean,
            value,
        })
    }

    fn push(&mut self, obs: Observation) -> Result<(), GpError> {
        self.observations.push(obs);
        if let Err(e) = self.refit() {
            self.observations.pop();
            self.refit().expect("previous factorization succeeded");
            return Err(e);
        }
        Ok(())
    }

    fn refit(&mut self) -> Result<(), GpError> {
        let n = self.observations.len();
        let mut k = vec![0.0; n * n];
        for (i, a) in self.observations.iter().enumerate() {
            for (j, b) in self.observations.iter().enumerate().take(i + 1) {
                let v = self.kernel.eval(&a.x, &b.x);
                k[i * n + j] = v;
                k[j * n + i] = v;
            }
            k[i * n + i] += self.kernel.noise_variance;
        }
        let (chol, jitter) = if n == 0 {
            (Vec::new(), 0.0)
        } else {
            cholesky_with_jitter(&k, n)?
        };
        let residual: Vec<f64> = self.observations.iter().map(|o| o.value - o.prior_mean).collect();
        self.alpha = solve_upper_transposed(&chol, n, &solve_lower(&chol, n, &residual));
        self.chol = chol;
        self.jitter = jitter;
        Ok(())
    }

    /// Posterior (mean, variance) at `x`, whose prior mean is `prior_mean`.
    /// Variance is clamped at zero.
    pub fn predict_at(&self, x: &[f64; 3], prior_mean: f64) -> (f64, f64) {
        let n = self.observations.len();
        if n == 0 {
            return (prior_mean, self.kernel.variance());
        }
        let kx: Vec<f64> = self.observations.iter().map(|o| self.kernel.eval(x, &o.x)).collect();
        let mean = prior_mean + kx.iter().zip(&self.alpha).map(|(a, b)| a * b).sum::<f64>();
        let v = solve_lower(&self.chol, n, &kx);
        let var = self.kernel.variance() - v.iter().map(|a| a * a).sum::<f64>();
        (mean, var.max(0.0))
    }

    /// Posterior (mean, variance) at an archive cell's centroid.
    pub fn predict(&self, cell: &CellId) -> Result<(f64, f64), GpError> {
        let prior_mean = *self.prior.get(cell).ok_or(GpError::UnknownCell(*cell))?;
        Ok(self.predict_at(&cell.unit_point(), prior_mean))
    }
}

/// The cell picked by the acquisition rule and its posterior at that time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub cell: CellId,
    pub mean: f64,
    pub variance: f64,
    pub acquisition: f64,
}

/// Argmax of `mean + β·sd` over the prior archive's cells. Ties go to the
/// smallest cell id.
pub fn select_next(posterior: &GpPosterior, beta: f64) -> Result<Selection, GpError> {
    let mut best: Option<Selection> = None;
    for (cell, &prior_mean) in posterior.prior() {
        let (mean, variance) = posterior.predict_at(&cell.unit_point(), prior_mean);
        let acquisition = mean + beta * variance.sqrt();
        if best.is_none_or(|b| acquisition > b.acquisition) {
            best = Some(Selection {
                cell: *cell,
                mean,
                variance,
                acquisition,
            });
        }
    }
    best.ok_or(GpError::EmptyArchive)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prior(cells: &[([u8; 3], f64)]) -> BTreeMap<CellId, f64> {
        cells.iter().map(|&(c, v)| (CellId(c), v)).collect()
    }

    #[test]
    fn no_observations_returns_prior() {
        let gp = GpPosterior::new(Matern52Kernel::default(), prior(&[([1, 2, 3], 0.4)])).unwrap();
        assert_eq!(gp.predict(&CellId([1, 2, 3])), Ok((0.4, 1.0)));
        assert_eq!(
            gp.predict(&CellId([0, 0, 0])),
            Err(GpError::UnknownCell(CellId([0, 0, 0])))
        );
    }

    #[test]
    fn single_observation_at_query() {
        // 1x1 system: K = 1 + 0.1, k = 1.
        let mut gp = GpPosterior::new(Matern52Kernel::default(), prior(&[([4, 4, 4], 0.0)])).unwrap();
        gp.observe(CellId([4, 4, 4]), 1.0).unwrap();
        let (m, v) = gp.predict(&CellId([4, 4, 4])).unwrap();
        assert!((m - 1.0 / 1.1).abs() < 1e-12);
        assert!((v - (1.0 - 1.0 / 1.1)).abs() < 1e-12);
    }

    #[test]
    fn empty_prior_cannot_select() {
        let gp = GpPosterior::new(Matern52Kernel::default(), BTreeMap::new()).unwrap();
        assert_eq!(select_next(&gp, 0.03), Err(GpError::EmptyArchive));
    }

    #[test]
    fn first_pick_is_best_prior_cell() {
        let gp = GpPosterior::new(
            Matern52Kernel::default(),
            prior(&[([0, 0, 0], 0.3), ([5, 1, 2], 0.9), ([9, 9, 9], 0.5)]),
        )
        .unwrap();
        assert_eq!(select_next(&gp, 0.0).unwrap().cell, CellId([5, 1, 2]));
        // Equal prior variance everywhere, so β does not change the pick.
        assert_eq!(select_next(&gp, 0.03).unwrap().cell, CellId([5, 1, 2]));
    }

    #[test]
    fn ties_go_to_smallest_cell() {
        let gp = GpPosterior::new(Matern52Kernel::default(), prior(&[([3, 0, 0], 0.7), ([1, 5, 5], 0.7)])).unwrap();
        assert_eq!(select_next(&gp, 0.03).unwrap().cell, CellId([1, 5, 5]));
    }

    #[test]
    fn failed_observation_moves_the_pick() {
        // Hand-solved on two cells a, b with prior 0.9 and 0.8. After
        // observing 0 at a: mean(a) = 0.9 - 0.9/1.1, mean(b) = 0.8 -
        // k(a,b) 0.9/1.1.
        let (a, b) = (CellId([2, 2, 2]), CellId([7, 7, 7]));
        let kernel = Matern52Kernel::default();
        let mut gp = GpPosterior::new(kernel, prior(&[([2, 2, 2], 0.9), ([7, 7, 7], 0.8)])).unwrap();
        assert_eq!(select_next(&gp, 0.03).unwrap().cell, a);
        gp.observe(a, 0.0).unwrap();
        let kab = kernel.eval(&a.unit_point(), &b.unit_point());
        let (ma, _) = gp.predict(&a).unwrap();
        let (mb, _) = gp.predict(&b).unwrap();
        assert!((ma - (0.9 - 0.9 / 1.1)).abs() < 1e-12);
        assert!((mb - (0.8 - kab * 0.9 / 1.1)).abs() < 1e-12);
        assert_eq!(select_next(&gp, 0.03).unwrap().cell, b);
    }
}
