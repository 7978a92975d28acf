//! Small statistics toolkit for the Monte Carlo validators: moments with
//! standard errors, Wilson intervals, rank/trend tests and bootstrap slopes.

use statrs::distribution::{ContinuousCDF, Normal};

/// Sample mean and standard error.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::INFINITY);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: usize, n: usize, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Quantile by linear interpolation on the sorted copy (q in [0,1]).
pub fn quantile(xs: &[f64], q: f64) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut s: Vec<f64> = xs.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    let pos = q.clamp(0.0, 1.0) * (s.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        s[lo]
    } else {
        s[lo] + (pos - lo as f64) * (s[hi] - s[lo])
    }
}

pub fn median(xs: &[f64]) -> f64 {
    quantile(xs, 0.5)
}

fn rank(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with a normal-approximation one-sided p-value
/// for negative association.
pub fn spearman_negative(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 3 {
        return (f64::NAN, 1.0);
    }
    let rx = rank(xs);
    let ry = rank(ys);
    let (mx, _) = mean_stderr(&rx);
    let (my, _) = mean_stderr(&ry);
    let mut num = 0.0;
    let mut dx = 0.0;
    let mut dy = 0.0;
    for i in 0..n {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx).powi(2);
        dy += (ry[i] - my).powi(2);
    }
    let rho = num / (dx * dy).sqrt();
    // t-approximation for the null distribution of rho
    let t = rho * ((n as f64 - 2.0) / (1.0 - rho * rho).max(1e-12)).sqrt();
    // one-sided: P(T <= t) under the null, small when rho << 0
    let z = t; // t ~ normal for the sizes used here
    let normal = Normal::new(0.0, 1.0).unwrap();
    let p = normal.cdf(z);
    (rho, p)
}

/// Mann-Kendall trend test. Returns the S statistic, its normalized z-score
/// and the one-sided p-value for an UPWARD trend (small p means evidence of
/// increase).
pub fn mann_kendall_upward(xs: &[f64]) -> (i64, f64, f64) {
    let n = xs.len();
    let mut s: i64 = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += match xs[j].partial_cmp(&xs[i]).unwrap() {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            };
        }
    }
    let nf = n as f64;
    let var = nf * (nf - 1.0) * (2.0 * nf + 5.0) / 18.0;
    let z = if s > 0 {
        (s as f64 - 1.0) / var.sqrt()
    } else if s < 0 {
        (s as f64 + 1.0) / var.sqrt()
    } else {
        0.0
    };
    let normal = Normal::new(0.0, 1.0).unwrap();
    let p_up = 1.0 - normal.cdf(z);
    (s, z, p_up)
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..x.len() {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx).powi(2);
    }
    num / den
}

/// Bootstrap confidence interval for the slope of `median(log y_n)` against
/// `n`, resampling ensemble members. `series[member][step]`.
pub fn bootstrap_log_median_slope(
    series: &[Vec<f64>],
    steps: &[f64],
    boots: usize,
    seed: u64,
    level: f64,
) -> (f64, f64, f64) {
    use rand::Rng;
    let mut rng = crate::rng::stream(seed, crate::rng::Purpose::Validation, 0);
    let n = series.len();
    let point = {
        let logmed: Vec<f64> = (0..steps.len())
            .map(|j| {
                let col: Vec<f64> = series.iter().map(|s| s[j]).collect();
                median(&col).max(1e-300).ln()
            })
            .collect();
        ls_slope(steps, &logmed)
    };
    let mut slopes = Vec::with_capacity(boots);
    for _ in 0..boots {
        let resample: Vec<&Vec<f64>> = (0..n).map(|_| &series[rng.gen_range(0..n)]).collect();
        let logmed: Vec<f64> = (0..steps.len())
            .map(|j| {
                let col: Vec<f64> = resample.iter().map(|s| s[j]).collect();
                median(&col).max(1e-300).ln()
            })
            .collect();
        slopes.push(ls_slope(steps, &logmed));
    }
    let lo = quantile(&slopes, (1.0 - level) / 2.0);
    let hi = quantile(&slopes, 1.0 - (1.0 - level) / 2.0);
    (point, lo, hi)
}

/// Running-mean stability: max relative deviation of the running mean over
/// the last half of the sample from its final value.
pub fn running_mean_stability(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 4 {
        return f64::INFINITY;
    }
    let mut cum = 0.0;
    let mut means = Vec::with_capacity(n);
    for (i, x) in xs.iter().enumerate() {
        cum += x;
        means.push(cum / (i + 1) as f64);
    }
    let last = *means.last().unwrap();
    means[n / 2..]
        .iter()
        .map(|m| ((m - last) / last).abs())
        .fold(0.0, f64::max)
}
