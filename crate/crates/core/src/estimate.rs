//! Maximum-likelihood power-law exponents and replicate aggregation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DegreeHistogram;
use crate::theory::ExpectedDistribution;

pub const DEFAULT_K_MIN: u64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub gamma_hat: f64,
    pub k_min: u64,
    /// Number of nodes (or probability mass, for averaged data) with
    /// degree `>= k_min`.
    pub n_tail: f64,
}

/// `1 + n_tail / sum(n(k) ln(k / k_min))` over `k >= k_min`, for possibly
/// fractional counts.
pub fn fit_weighted<I>(counts: I, k_min: u64) -> Result<FitResult>
where
    I: IntoIterator<Item = (u64, f64)>,
{
    if k_min == 0 {
        return Err(Error::Domain("k_min must be >= 1".into()));
    }
    let kmin = k_min as f64;
    let (mut n_tail, mut log_sum) = (0.0, 0.0);
    for (k, n) in counts {
        if k >= k_min && n > 0.0 {
            n_tail += n;
            log_sum += n * (k as f64 / kmin).ln();
        }
    }
    if n_tail == 0.0 {
        return Err(Error::EmptyTail { k_min });
    }
    if log_sum == 0.0 {
        return Err(Error::DegenerateTail { k_min });
    }
    Ok(FitResult {
        gamma_hat: 1.0 + n_tail / log_sum,
        k_min,
        n_tail,
    })
}

pub fn estimate_gamma_ml(hist: &DegreeHistogram, k_min: u64) -> Result<FitResult> {
    fit_weighted(hist.iter().map(|(k, n)| (k, n as f64)), k_min)
}

impl ExpectedDistribution {
    /// ML exponent of the tail; the estimate is scale-free, so the values do
    /// not need converting back to counts.
    pub fn fit(&self, k_min: u64) -> Result<FitResult> {
        fit_weighted(
            self.values.iter().enumerate().map(|(k, &p)| (k as u64, p)),
            k_min,
        )
    }
}

fn common_total(hists: &[DegreeHistogram]) -> Result<u64> {
    let first = hists
        .first()
        .ok_or(Error::EmptyInput("no histograms to aggregate"))?;
    let total = first.total();
    if let Some(h) = hists.iter().find(|h| h.total() != total) {
        return Err(Error::MismatchedTotals {
            expected: total,
            found: h.total(),
        });
    }
    if total == 0 {
        return Err(Error::EmptyInput("histograms have no nodes"));
    }
    Ok(total)
}

/// Mean over replicates of `n(k) / N`.
pub fn average_distribution(hists: &[DegreeHistogram]) -> Result<ExpectedDistribution> {
    let total = common_total(hists)?;
    let k_max = hists
        .iter()
        .filter_map(|h| h.max_degree())
        .max()
        .unwrap_or(0) as usize;
    let mut sums = vec![0u64; k_max + 1];
    for h in hists {
        for (k, n) in h.iter() {
            sums[k as usize] += n;
        }
    }
    let denom = total as f64 * hists.len() as f64;
    Ok(ExpectedDistribution {
        values: sums.into_iter().map(|s| s as f64 / denom).collect(),
        t: total,
    })
}

/// Sample variance (n - 1 denominator) of `p(k)` across replicates; zero for
/// a single replicate.
pub fn empirical_variance(hists: &[DegreeHistogram], k: u64) -> Result<f64> {
    if hists.is_empty() {
        return Err(Error::EmptyInput("no histograms"));
    }
    if hists.len() == 1 {
        return Ok(0.0);
    }
    let ps: Vec<f64> = hists.iter().map(|h| h.p(k)).collect();
    let mean = ps.iter().sum::<f64>() / ps.len() as f64;
    let ss: f64 = ps.iter().map(|p| (p - mean).powi(2)).sum();
    Ok(ss / (ps.len() - 1) as f64)
}

/// Least-squares slope of `ln y` against `ln x` over points with positive
/// coordinates.
pub fn log_log_slope<I: IntoIterator<Item = (f64, f64)>>(points: I) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .into_iter()
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Mean and sample standard deviation.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hist(pairs: &[(u64, u64)]) -> DegreeHistogram {
        DegreeHistogram::from_counts(pairs.iter().copied())
    }

    #[test]
    fn single_node_tail() {
        let fit = estimate_gamma_ml(&hist(&[(20, 1)]), 10).unwrap();
        let want = 1.0 + 1.0 / 2f64.ln();
        assert!((fit.gamma_hat - want).abs() < 1e-14);
        assert!((fit.gamma_hat - 2.4427).abs() < 1e-4);
        assert_eq!(fit.n_tail, 1.0);
        assert_eq!(fit.k_min, 10);
    }

    #[test]
    fn tail_errors() {
        assert!(matches!(
            estimate_gamma_ml(&hist(&[(10, 5)]), 10),
            Err(Error::DegenerateTail { k_min: 10 })
        ));
        assert!(matches!(
            estimate_gamma_ml(&hist(&[(1, 5), (9, 2)]), 10),
            Err(Error::EmptyTail { k_min: 10 })
        ));
        assert!(estimate_gamma_ml(&hist(&[(3, 1)]), 0).is_err());
    }

    #[test]
    fn averaging() {
        let h = hist(&[(0, 1), (1, 2), (3, 1)]);
        let avg = average_distribution(std::slice::from_ref(&h)).unwrap();
        assert_eq!(avg.values, vec![0.25, 0.5, 0.0, 0.25]);
        assert_eq!(avg.t, 4);
        let twice = average_distribution(&[h.clone(), h.clone()]).unwrap();
        assert_eq!(twice, avg);
        let other = hist(&[(1, 4), (2, 1)]);
        assert!(matches!(
            average_distribution(&[h, other]),
            Err(Error::MismatchedTotals {
                expected: 4,
                found: 5
            })
        ));
        assert!(average_distribution(&[]).is_err());
    }

    #[test]
    fn variance() {
        let h = hist(&[(1, 3), (2, 7)]);
        assert_eq!(empirical_variance(&[h.clone(), h.clone()], 1).unwrap(), 0.0);
        let a = hist(&[(1, 1), (2, 9)]);
        let b = hist(&[(1, 2), (2, 8)]);
        let v = empirical_variance(&[a, b], 1).unwrap();
        assert!((v - 0.005).abs() < 1e-15);
    }

    #[test]
    fn slope_of_exact_power_law() {
        let s = log_log_slope((1..50).map(|k| (k as f64, (k as f64).powf(-2.5)))).unwrap();
        assert!((s + 2.5).abs() < 1e-12);
        assert!(log_log_slope([(1.0, 1.0)]).is_none());
    }

    fn tail_hist() -> impl Strategy<Value = Vec<(u64, u64)>> {
        proptest::collection::vec((1u64..200, 1u64..50), 1..40)
    }

    proptest! {
        #[test]
        fn scale_invariance(pairs in tail_hist(), c in 2u64..9) {
            let h = hist(&pairs);
            let scaled = hist(&pairs.iter().map(|&(k, n)| (k, n * c)).collect::<Vec<_>>());
            match (estimate_gamma_ml(&h, 10), estimate_gamma_ml(&scaled, 10)) {
                (Ok(a), Ok(b)) => prop_assert!((a.gamma_hat - b.gamma_hat).abs() < 1e-12 * a.gamma_hat),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "scaling changed the error state"),
            }
        }

        #[test]
        fn counts_below_k_min_ignored(pairs in tail_hist(), extra in proptest::collection::vec((0u64..10, 1u64..100), 0..10)) {
            let h = hist(&pairs);
            let mut more = pairs.clone();
            more.extend(extra);
            let h2 = hist(&more);
            match (estimate_gamma_ml(&h, 10), estimate_gamma_ml(&h2, 10)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false),
            }
        }

        #[test]
        fn gamma_above_one_when_tail_spreads(pairs in tail_hist()) {
            if let Ok(fit) = estimate_gamma_ml(&hist(&pairs), 10) {
                prop_assert!(fit.gamma_hat > 1.0);
            }
        }
    }
}
