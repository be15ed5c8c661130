//! Small time-series helpers: line fits, ring unwrapping and spectral peaks.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Ordinary least-squares line `y ≈ intercept + slope·t`.
pub fn fit_line(t: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if t.len() != y.len() || t.len() < 2 {
        return Err(Error::arg("line fit needs at least two paired samples"));
    }
    let n = t.len() as f64;
    let tm = t.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (ti, yi) in t.iter().zip(y) {
        sxy += (ti - tm) * (yi - ym);
        sxx += (ti - tm) * (ti - tm);
    }
    if sxx == 0.0 {
        return Err(Error::arg("line fit needs distinct abscissae"));
    }
    let slope = sxy / sxx;
    Ok((ym - slope * tm, slope))
}

/// Residual after removing the least-squares line.
pub fn detrend(t: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let (b, m) = fit_line(t, y)?;
    Ok(t.iter().zip(y).map(|(ti, yi)| yi - (b + m * ti)).collect())
}

/// Lifts ring positions in `[0, period)` onto a continuous path, assuming
/// successive samples move less than half a period.
pub fn unwrap_ring(values: &[f64], period: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &v in values {
        if let Some(p) = prev {
            let jump = v - p;
            if jump > 0.5 * period {
                offset -= period;
            } else if jump < -0.5 * period {
                offset += period;
            }
        }
        prev = Some(v);
        out.push(v + offset);
    }
    out
}

/// Angular frequency (radians per unit of `dt`) of the strongest spectral
/// line of a uniformly sampled signal. Hann window, 8× zero padding and a
/// parabolic fit on the log magnitude around the peak bin. Bins below
/// `min_angular` are ignored.
pub fn dominant_angular_frequency(samples: &[f64], dt: f64, min_angular: f64) -> Result<f64> {
    let len = samples.len();
    if len < 8 {
        return Err(Error::arg("spectral peak needs at least 8 samples"));
    }
    let size = (8 * len).next_power_of_two();
    let mut buf = vec![Complex64::new(0.0, 0.0); size];
    for (j, &s) in samples.iter().enumerate() {
        let w = 0.5 - 0.5 * (2.0 * PI * j as f64 / (len - 1) as f64).cos();
        buf[j] = Complex64::new(s * w, 0.0);
    }
    FftPlanner::new().plan_fft_forward(size).process(&mut buf);

    let bin_width = 2.0 * PI / (size as f64 * dt);
    let first = ((min_angular / bin_width).ceil() as usize).max(1);
    let mag: Vec<f64> = buf[..size / 2].iter().map(|z| z.norm()).collect();
    let peak = (first..size / 2 - 1)
        .max_by(|&a, &b| mag[a].total_cmp(&mag[b]))
        .ok_or_else(|| Error::arg("no spectral bins above the frequency floor"))?;
    if mag[peak] == 0.0 {
        return Err(Error::MeasurementInvalid("signal has no spectral content".into()));
    }
    let (l, c, r) = (mag[peak - 1].max(1e-300).ln(), mag[peak].ln(), mag[peak + 1].max(1e-300).ln());
    let denom = l - 2.0 * c + r;
    let shift = if denom != 0.0 { 0.5 * (l - r) / denom } else { 0.0 };
    Ok((peak as f64 + shift) * bin_width)
}
