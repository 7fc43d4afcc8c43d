use udw_core::{Error, Result};

/// Number of strict local maxima with x in `window` whose topographic
/// prominence is at least `prominence_frac` times the series maximum.
/// Prominence is measured against the whole series, not just the window.
pub fn count_peaks(series: &[(f64, f64)], prominence_frac: f64, window: (f64, f64)) -> Result<usize> {
    if series.len() < 3 {
        return Err(Error::domain("count_peaks", "needs at least 3 samples"));
    }
    if !(prominence_frac > 0.0 && prominence_frac < 1.0) {
        return Err(Error::domain("count_peaks", format!("prominence fraction {prominence_frac} not in (0, 1)")));
    }
    if series.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::domain("count_peaks", "series must be sorted by strictly increasing x"));
    }
    let y: Vec<f64> = series.iter().map(|p| p.1).collect();
    let top = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let need = prominence_frac * top;
    let mut count = 0;
    let mut i = 1;
    while i + 1 < y.len() {
        // plateaus count once, at their left end
        let mut j = i;
        while j + 1 < y.len() && y[j + 1] == y[i] {
            j += 1;
        }
        let is_peak = y[i] > y[i - 1] && j + 1 < y.len() && y[i] > y[j + 1];
        if is_peak && series[i].0 >= window.0 && series[i].0 <= window.1 {
            let mut left = y[i];
            for k in (0..i).rev() {
                if y[k] > y[i] {
                    break;
                }
                left = left.min(y[k]);
            }
            let mut right = y[i];
            for &v in &y[j + 1..] {
                if v > y[i] {
                    break;
                }
                right = right.min(v);
            }
            if y[i] - left.max(right) >= need {
                count += 1;
            }
        }
        i = j + 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
        (0..=400).map(|i| {
            let x = i as f64 * 0.05;
            (x, f(x))
        }).collect()
    }

    #[test]
    fn bumps() {
        let g = |x: f64, c: f64| (-(x - c) * (x - c)).exp();
        assert_eq!(count_peaks(&sample(|x| g(x, 10.0)), 0.05, (0.0, 20.0)).unwrap(), 1);
        assert_eq!(count_peaks(&sample(|x| g(x, 5.0) + g(x, 15.0)), 0.05, (0.0, 20.0)).unwrap(), 2);
        assert_eq!(count_peaks(&sample(|x| g(x, 5.0) + g(x, 15.0)), 0.05, (0.0, 10.0)).unwrap(), 1);
        // a shoulder ripple well below the threshold does not count
        let s = sample(|x| g(x, 10.0) + 1e-3 * (8.0 * x).sin());
        assert_eq!(count_peaks(&s, 0.05, (0.0, 20.0)).unwrap(), 1);
    }

    #[test]
    fn short_series_rejected() {
        assert!(count_peaks(&[(0.0, 1.0), (1.0, 2.0)], 0.05, (0.0, 1.0)).is_err());
    }
}
