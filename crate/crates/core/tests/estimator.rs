use pgnet::estimate::fit_weighted;
use pgnet::RngSpec;
use rand::Rng;

/// Inverse-CDF sampler for `P(k) ∝ k^-gamma`, `k >= k_min`, tabulated up to
/// `k_cap`; the mass beyond the cap is below 1e-6 for the exponents used here.
struct ZetaTail {
    k_min: u64,
    cdf: Vec<f64>,
}

impl ZetaTail {
    fn new(gamma: f64, k_min: u64, k_cap: u64) -> Self {
        let mut cdf = Vec::with_capacity((k_cap - k_min + 1) as usize);
        let mut acc = 0.0;
        for k in k_min..=k_cap {
            acc += (k as f64).powf(-gamma);
            cdf.push(acc);
        }
        for c in &mut cdf {
            *c /= acc;
        }
        ZetaTail { k_min, cdf }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.random();
        self.k_min + self.cdf.partition_point(|&c| c < u) as u64
    }
}

#[test]
fn ml_estimator_is_consistent_on_zeta_tails() {
    let k_min = 100;
    for gamma in [2.5, 3.0] {
        let tail = ZetaTail::new(gamma, k_min, 1_000_000);
        let mut rng = RngSpec::new(21, 0).rng();
        let fits: Vec<f64> = (0..200)
            .map(|_| {
                let mut counts = std::collections::BTreeMap::new();
                for _ in 0..10_000 {
                    *counts.entry(tail.sample(&mut rng)).or_insert(0.0) += 1.0;
                }
                fit_weighted(counts, k_min).unwrap().gamma_hat
            })
            .collect();
        let mean = fits.iter().sum::<f64>() / fits.len() as f64;
        assert!(
            (mean - gamma).abs() < 0.05,
            "gamma {gamma}: mean estimate {mean}"
        );
    }
}
