//! Monitor-point time-series processing: amplitude spectra, flow-regime classification
//! and oscillation period extraction.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::ddc::RunResult;
use crate::error::{Error, Result};

/// Minimum number of post-transient samples accepted by [`spectrum`].
pub const MIN_SAMPLES: usize = 64;
/// Default leading fraction of a series discarded as transient.
pub const DEFAULT_DISCARD: f64 = 0.5;
/// Default relative band below which a series counts as steady.
pub const DEFAULT_STEADY_BAND: f64 = 1e-6;
/// Default ratio of dominant peak to median spectral floor for periodicity.
pub const DEFAULT_PEAK_RATIO: f64 = 100.0;
/// Share of spectral power the fundamental and its harmonics must hold.
pub const HARMONIC_POWER_SHARE: f64 = 0.9;
/// Number of harmonics above the fundamental counted towards the share.
const HARMONICS: usize = 5;
/// Half-width in bins of the Hann main lobe.
const LOBE: usize = 2;
/// Relative disagreement between the spectral and zero-crossing periods that sets the ambiguity flag.
const PERIOD_AGREEMENT: f64 = 0.02;
/// A sub-harmonic peak this strong relative to the dominant one becomes the fundamental.
const SUBHARMONIC_SHARE: f64 = 0.1;

/// Samples of one scalar signal at strictly increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    samples: Vec<f64>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>, samples: Vec<f64>) -> Result<Self> {
        if times.len() != samples.len() {
            return Err(Error::LengthMismatch { left: times.len(), right: samples.len() });
        }
        if times.iter().chain(&samples).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("time series"));
        }
        if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::OutOfRange { name: "time (not strictly increasing)", value: w[1] });
        }
        Ok(Self { times, samples })
    }

    /// Samples `f` at `n` uniformly spaced times starting at zero.
    pub fn sampled(n: usize, dt: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let times: Vec<f64> = (0..n).map(|k| k as f64 * dt).collect();
        let samples = times.iter().map(|&t| f(t)).collect();
        Self::new(times, samples)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The series with the leading `fraction` of its time span removed.
    pub fn tail(&self, fraction: f64) -> Result<TimeSeries> {
        if !(0.0..1.0).contains(&fraction) {
            return Err(Error::OutOfRange { name: "discard fraction", value: fraction });
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let t0 = self.times[0];
        let cut = t0 + fraction * (self.times[self.len() - 1] - t0);
        let start = self.times.partition_point(|&t| t < cut);
        Ok(TimeSeries { times: self.times[start..].to_vec(), samples: self.samples[start..].to_vec() })
    }

    /// Four-point cubic Lagrange interpolation on the (possibly non-uniform) samples.
    fn interpolate(&self, t: f64) -> f64 {
        let n = self.len();
        if n < 4 {
            return self.samples[self.times.partition_point(|&s| s < t).min(n - 1)];
        }
        let k = self.times.partition_point(|&s| s <= t).clamp(2, n - 2);
        let lo = k - 2;
        let xs = &self.times[lo..lo + 4];
        let ys = &self.samples[lo..lo + 4];
        let mut acc = 0.0;
        for a in 0..4 {
            let mut w = 1.0;
            for b in 0..4 {
                if a != b {
                    w *= (t - xs[b]) / (xs[a] - xs[b]);
                }
            }
            acc += w * ys[a];
        }
        acc
    }
}

/// One-sided amplitude spectrum of a uniformly resampled, windowed signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Bin frequencies `k / (N dt)`, `k = 0..=N/2`.
    pub frequencies: Vec<f64>,
    /// Amplitudes scaled so that a unit sinusoid on a bin reports 1.
    pub amplitudes: Vec<f64>,
    /// Resampling interval.
    pub dt: f64,
    /// Energy of the windowed signal, `sum (w x)^2`.
    pub signal_energy: f64,
    /// Spectral energy over all bins, `sum |X|^2 / N`.
    pub spectral_energy: f64,
}

impl Spectrum {
    pub fn bin_width(&self) -> f64 {
        self.frequencies.get(1).copied().unwrap_or(0.0)
    }

    pub fn pairs(&self) -> Vec<(f64, f64)> {
        self.frequencies.iter().copied().zip(self.amplitudes.iter().copied()).collect()
    }

    /// Index of the largest non-DC amplitude.
    pub fn peak_bin(&self) -> Option<usize> {
        (1..self.amplitudes.len()).max_by(|&a, &b| self.amplitudes[a].total_cmp(&self.amplitudes[b]))
    }

    /// Peak frequency refined by a parabola through the log amplitudes of the bin and its neighbours.
    pub fn refined_frequency(&self, bin: usize) -> f64 {
        let df = self.bin_width();
        if bin == 0 || bin + 1 >= self.amplitudes.len() {
            return bin as f64 * df;
        }
        let tiny = f64::MIN_POSITIVE;
        let (a, b, c) = (
            self.amplitudes[bin - 1].max(tiny).ln(),
            self.amplitudes[bin].max(tiny).ln(),
            self.amplitudes[bin + 1].max(tiny).ln(),
        );
        let denom = a - 2.0 * b + c;
        let shift = if denom < 0.0 { (0.5 * (a - c) / denom).clamp(-0.5, 0.5) } else { 0.0 };
        (bin as f64 + shift) * df
    }
}

/// Amplitude spectrum of the series after discarding the default transient fraction.
pub fn spectrum(series: &TimeSeries) -> Result<Vec<(f64, f64)>> {
    Ok(spectrum_with(series, DEFAULT_DISCARD)?.pairs())
}

/// Amplitude spectrum after discarding the leading `discard` fraction of the time span.
pub fn spectrum_with(series: &TimeSeries, discard: f64) -> Result<Spectrum> {
    let kept = series.tail(discard)?;
    if kept.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples { got: kept.len(), need: MIN_SAMPLES });
    }
    let n = kept.len().next_power_of_two();
    let t0 = kept.times[0];
    let span = kept.times[kept.len() - 1] - t0;
    let dt = span / (n - 1) as f64;
    let mut x: Vec<f64> = (0..n).map(|k| kept.interpolate(t0 + k as f64 * dt)).collect();
    let mean = x.iter().sum::<f64>() / n as f64;
    let mut window_sum = 0.0;
    let mut signal_energy = 0.0;
    for (k, v) in x.iter_mut().enumerate() {
        let w = 0.5 - 0.5 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos();
        window_sum += w;
        *v = (*v - mean) * w;
        signal_energy += *v * *v;
    }
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let spectral_energy = buf.iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64;
    let half = n / 2;
    let df = 1.0 / (n as f64 * dt);
    let frequencies = (0..=half).map(|k| k as f64 * df).collect();
    let amplitudes = (0..=half)
        .map(|k| {
            let scale = if k == 0 || k == half { 1.0 } else { 2.0 };
            scale * buf[k].norm() / window_sum
        })
        .collect();
    Ok(Spectrum { frequencies, amplitudes, dt, signal_energy, spectral_energy })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Steady,
    Periodic,
    Chaotic,
}

impl Regime {
    /// Short label used in tables: S, MP or CH.
    pub fn label(self) -> &'static str {
        match self {
            Regime::Steady => "S",
            Regime::Periodic => "MP",
            Regime::Chaotic => "CH",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Steady => "steady",
            Regime::Periodic => "periodic",
            Regime::Chaotic => "chaotic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeVerdict {
    pub regime: Regime,
    pub fundamental_frequency: Option<f64>,
    pub period: Option<f64>,
    /// Dominant peak amplitude over the median amplitude; zero for steady series.
    pub peak_to_floor_ratio: f64,
    /// Share of spectral power at the fundamental and its first harmonics.
    pub harmonic_share: f64,
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 0 {
        0.5 * (v[m - 1] + v[m])
    } else {
        v[m]
    }
}

/// Picks the fundamental bin: the dominant peak unless a clear local peak sits at
/// one of its sub-harmonics.
fn fundamental_bin(spec: &Spectrum, dominant: usize, floor: f64, ratio: f64) -> usize {
    let amps = &spec.amplitudes;
    let strong = (SUBHARMONIC_SHARE * amps[dominant]).max(ratio * floor);
    let mut best = dominant;
    for div in 2..=4 {
        let target = dominant as f64 / div as f64;
        if target < 1.5 {
            break;
        }
        let lo = (target - 1.0).floor().max(1.0) as usize;
        let hi = ((target + 1.0).ceil() as usize).min(amps.len() - 2);
        if let Some(k) = (lo..=hi).max_by(|&a, &b| amps[a].total_cmp(&amps[b])) {
            if amps[k] >= strong && amps[k] >= amps[k - 1] && amps[k] >= amps[k + 1] {
                best = k;
            }
        }
    }
    best
}

/// Classifies a monitor series as steady, periodic or chaotic.
pub fn classify_regime(series: &TimeSeries, steady_band: f64, peak_ratio_threshold: f64) -> Result<RegimeVerdict> {
    classify_regime_with(series, steady_band, peak_ratio_threshold, DEFAULT_DISCARD)
}

pub fn classify_regime_with(
    series: &TimeSeries,
    steady_band: f64,
    peak_ratio_threshold: f64,
    discard: f64,
) -> Result<RegimeVerdict> {
    if !(steady_band >= 0.0) {
        return Err(Error::OutOfRange { name: "steady_band", value: steady_band });
    }
    if !(peak_ratio_threshold > 0.0) {
        return Err(Error::NonPositive("peak_ratio_threshold"));
    }
    let kept = series.tail(discard)?;
    if kept.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples { got: kept.len(), need: MIN_SAMPLES });
    }
    let (lo, hi) = kept.samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let mean = kept.samples.iter().sum::<f64>() / kept.len() as f64;
    if hi - lo < steady_band * (mean.abs() + 1.0) {
        return Ok(RegimeVerdict {
            regime: Regime::Steady,
            fundamental_frequency: None,
            period: None,
            peak_to_floor_ratio: 0.0,
            harmonic_share: 0.0,
        });
    }
    let spec = spectrum_with(series, discard)?;
    let amps = &spec.amplitudes;
    let dominant = spec.peak_bin().ok_or(Error::TooFewSamples { got: amps.len(), need: 3 })?;
    let floor = median(&amps[1..]);
    let ratio = if floor > 0.0 { amps[dominant] / floor } else { f64::INFINITY };
    let fund = fundamental_bin(&spec, dominant, floor, peak_ratio_threshold);

    let total: f64 = amps[1..].iter().map(|a| a * a).sum();
    let mut harmonic = 0.0;
    let mut last_hi = 0;
    for h in 1..=HARMONICS + 1 {
        let centre = fund * h;
        if centre >= amps.len() {
            break;
        }
        // Lobes of neighbouring harmonics may overlap when the fundamental sits in a low bin.
        let lo = centre.saturating_sub(LOBE).max(1).max(last_hi + 1);
        let hi = (centre + LOBE).min(amps.len() - 1);
        if lo <= hi {
            harmonic += (lo..=hi).map(|k| amps[k] * amps[k]).sum::<f64>();
            last_hi = hi;
        }
    }
    let share = if total > 0.0 { harmonic / total } else { 0.0 };
    if ratio > peak_ratio_threshold && share > HARMONIC_POWER_SHARE {
        let f = spec.refined_frequency(fund);
        Ok(RegimeVerdict {
            regime: Regime::Periodic,
            fundamental_frequency: Some(f),
            period: Some(1.0 / f),
            peak_to_floor_ratio: ratio,
            harmonic_share: share,
        })
    } else {
        Ok(RegimeVerdict {
            regime: Regime::Chaotic,
            fundamental_frequency: None,
            period: None,
            peak_to_floor_ratio: ratio,
            harmonic_share: share,
        })
    }
}

/// Regime of a finished cavity run.
///
/// A run stopped by the solver's steady criterion is steady. Otherwise the `nu_av`
/// trace is classified with the default thresholds; `None` when it is too short.
/// The centre monitor velocities are not used: they vanish for centrosymmetric flows.
pub fn classify_run(result: &RunResult) -> Result<Option<RegimeVerdict>> {
    if result.steady {
        return Ok(Some(RegimeVerdict {
            regime: Regime::Steady,
            fundamental_frequency: None,
            period: None,
            peak_to_floor_ratio: 0.0,
            harmonic_share: 0.0,
        }));
    }
    let series = TimeSeries::new(
        result.history.iter().map(|h| h.t).collect(),
        result.history.iter().map(|h| h.nu_av).collect(),
    )?;
    match classify_regime(&series, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO) {
        Ok(v) => Ok(Some(v)),
        Err(Error::TooFewSamples { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Period estimate with its zero-crossing cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodEstimate {
    /// Period from the refined spectral peak.
    pub period: f64,
    /// Mean spacing of upward zero crossings of the mean-removed signal, if any.
    pub crossing_period: Option<f64>,
    /// Set when the two estimates differ by more than 2%.
    pub ambiguous: bool,
}

/// Mean spacing of upward mean crossings after the transient.
fn crossing_period(kept: &TimeSeries) -> Option<f64> {
    let mean = kept.samples.iter().sum::<f64>() / kept.len() as f64;
    let mut crossings = Vec::new();
    for k in 1..kept.len() {
        let (a, b) = (kept.samples[k - 1] - mean, kept.samples[k] - mean);
        if a < 0.0 && b >= 0.0 {
            let (ta, tb) = (kept.times[k - 1], kept.times[k]);
            crossings.push(ta + (tb - ta) * (-a) / (b - a));
        }
    }
    if crossings.len() < 2 {
        return None;
    }
    Some((crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64)
}

/// Oscillation period of a periodic series with its cross-check.
pub fn estimate_period(series: &TimeSeries) -> Result<PeriodEstimate> {
    let verdict = classify_regime(series, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO)?;
    let period = match (verdict.regime, verdict.period) {
        (Regime::Periodic, Some(p)) => p,
        _ => return Err(Error::NotPeriodic),
    };
    let crossing = crossing_period(&series.tail(DEFAULT_DISCARD)?);
    let ambiguous = crossing.is_none_or(|c| ((c - period) / period).abs() > PERIOD_AGREEMENT);
    Ok(PeriodEstimate { period, crossing_period: crossing, ambiguous })
}

/// Oscillation period of a periodic series.
pub fn extract_period(series: &TimeSeries) -> Result<f64> {
    estimate_period(series).map(|e| e.period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{RngExt, SeedableRng};
    use std::f64::consts::PI;

    fn tone(f: f64, phase: f64) -> impl Fn(f64) -> f64 {
        move |t| (2.0 * PI * f * t + phase).sin()
    }

    #[test]
    fn construction_rejects_bad_series() {
        assert!(TimeSeries::new(vec![0.0, 1.0], vec![1.0]).is_err());
        assert!(TimeSeries::new(vec![0.0, 1.0, 1.0], vec![1.0; 3]).is_err());
        assert!(TimeSeries::new(vec![0.0, f64::NAN], vec![1.0; 2]).is_err());
    }

    #[test]
    fn sinusoid_peak_lands_on_its_frequency() {
        let s = TimeSeries::sampled(8192, 1.0 / 4096.0, tone(56.8, 0.3)).unwrap();
        let spec = spectrum_with(&s, DEFAULT_DISCARD).unwrap();
        let k = spec.peak_bin().unwrap();
        assert!((spec.frequencies[k] - 56.8).abs() <= spec.bin_width());
        assert!((spec.refined_frequency(k) - 56.8).abs() < 0.2 * spec.bin_width());
        // Off-bin tones lose at most the Hann scalloping loss.
        assert!(spec.amplitudes[k] > 0.84 && spec.amplitudes[k] < 1.01);
    }

    #[test]
    fn unit_sinusoid_on_a_bin_has_unit_amplitude() {
        // With no discard and a power-of-two length the resampling grid is the sample grid.
        let (n, dt) = (4096, 1e-3);
        let f = 40.0 / (n as f64 * dt);
        let series = TimeSeries::sampled(n, dt, tone(f, 0.4)).unwrap();
        let spec = spectrum_with(&series, 0.0).unwrap();
        let k = spec.peak_bin().unwrap();
        assert_eq!(k, 40);
        assert!((spec.amplitudes[k] - 1.0).abs() < 0.05, "{}", spec.amplitudes[k]);
    }

    #[test]
    fn constant_signal_has_empty_spectrum() {
        let s = TimeSeries::sampled(256, 0.01, |_| 3.25).unwrap();
        assert!(spectrum(&s).unwrap().iter().all(|&(_, a)| a <= 1e-10));
        let v = classify_regime(&s, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO).unwrap();
        assert_eq!(v.regime, Regime::Steady);
        assert!(matches!(extract_period(&s), Err(Error::NotPeriodic)));
    }

    #[test]
    fn two_tones_keep_their_amplitude_ratio() {
        let s = TimeSeries::sampled(8192, 1.0 / 2048.0, |t| tone(50.0, 0.1)(t) + 0.1 * tone(130.0, 1.0)(t)).unwrap();
        let spec = spectrum_with(&s, DEFAULT_DISCARD).unwrap();
        let near = |f: f64| {
            let k = (f / spec.bin_width()).round() as usize;
            (k - 2..=k + 2).map(|j| spec.amplitudes[j]).fold(0.0, f64::max)
        };
        let ratio = near(50.0) / near(130.0);
        assert!((ratio - 10.0).abs() <= 2.0, "ratio {ratio}");
    }

    #[test]
    fn too_few_samples_is_an_error() {
        let s = TimeSeries::sampled(100, 0.1, |t| t.sin()).unwrap();
        assert!(matches!(spectrum(&s), Err(Error::TooFewSamples { .. })));
    }

    #[test]
    fn parseval_holds_for_the_windowed_signal() {
        let mut rng = StdRng::seed_from_u64(7);
        let samples: Vec<f64> = (0..1000).map(|_| rng.random::<f64>() - 0.5).collect();
        let s = TimeSeries::new((0..1000).map(|k| k as f64 * 0.01).collect(), samples).unwrap();
        let spec = spectrum_with(&s, 0.2).unwrap();
        assert!((spec.signal_energy - spec.spectral_energy).abs() <= 0.01 * spec.signal_energy);
    }

    #[test]
    fn sinusoid_is_periodic_with_its_period() {
        let s = TimeSeries::sampled(4000, 0.0005, tone(20.0, 0.7)).unwrap();
        let v = classify_regime(&s, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO).unwrap();
        assert_eq!(v.regime, Regime::Periodic);
        let e = estimate_period(&s).unwrap();
        assert!((e.period - 0.05).abs() <= 0.005 * 0.05, "{e:?}");
        assert!(!e.ambiguous);
    }

    #[test]
    fn harmonic_rich_signal_reports_its_fundamental() {
        // The second harmonic dominates; the fundamental still defines the period.
        let s = TimeSeries::sampled(8000, 0.0005, |t| 0.4 * tone(10.0, 0.0)(t) + tone(20.0, 0.5)(t) + 0.2 * tone(30.0, 0.2)(t))
            .unwrap();
        let v = classify_regime(&s, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO).unwrap();
        assert_eq!(v.regime, Regime::Periodic);
        assert!((v.period.unwrap() - 0.1).abs() < 0.002, "{v:?}");
    }

    #[test]
    fn filtered_noise_is_chaotic() {
        let mut rng = StdRng::seed_from_u64(11);
        let mut y = 0.0;
        let samples: Vec<f64> = (0..8192)
            .map(|_| {
                y = 0.9 * y + (rng.random::<f64>() - 0.5);
                y
            })
            .collect();
        let s = TimeSeries::new((0..8192).map(|k| k as f64 * 1e-3).collect(), samples).unwrap();
        let v = classify_regime(&s, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO).unwrap();
        assert_eq!(v.regime, Regime::Chaotic);
        assert!(matches!(extract_period(&s), Err(Error::NotPeriodic)));
    }

    #[test]
    fn slowly_settling_series_counts_as_steady_after_transient() {
        let s = TimeSeries::sampled(1000, 0.1, |t| 2.0 + (-t).exp()).unwrap();
        let v = classify_regime(&s, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO).unwrap();
        assert_eq!(v.regime, Regime::Steady);
    }

    #[test]
    fn nonuniform_sampling_is_resampled() {
        let mut t = 0.0;
        let mut times = Vec::new();
        for k in 0..3000 {
            times.push(t);
            t += if k % 3 == 0 { 0.0006 } else { 0.0004 };
        }
        let samples = times.iter().map(|&t| tone(25.0, 0.0)(t)).collect();
        let s = TimeSeries::new(times, samples).unwrap();
        let p = extract_period(&s).unwrap();
        assert!((p - 0.04).abs() < 0.0004, "{p}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn verdict_is_scale_invariant(c in 1e-3f64..1e3, seed in 0u64..1000, periodic in any::<bool>()) {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut y = 0.0;
            let samples: Vec<f64> = (0..4096)
                .map(|k| {
                    y = 0.8 * y + (rng.random::<f64>() - 0.5);
                    if periodic { (2.0 * PI * 30.0 * k as f64 * 1e-3).sin() + 1e-3 * y } else { y }
                })
                .collect();
            let times: Vec<f64> = (0..4096).map(|k| k as f64 * 1e-3).collect();
            let a = TimeSeries::new(times.clone(), samples.clone()).unwrap();
            let b = TimeSeries::new(times, samples.iter().map(|v| c * v).collect()).unwrap();
            let va = classify_regime(&a, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO).unwrap();
            let vb = classify_regime(&b, DEFAULT_STEADY_BAND, DEFAULT_PEAK_RATIO).unwrap();
            prop_assert_eq!(va.regime, vb.regime);
            prop_assert!((va.peak_to_floor_ratio - vb.peak_to_floor_ratio).abs() <= 1e-9 * va.peak_to_floor_ratio);
        }

        #[test]
        fn period_is_phase_invariant(phase in 0.0f64..(2.0 * PI), f in 8.0f64..40.0) {
            let s = TimeSeries::sampled(6000, 0.0005, tone(f, phase)).unwrap();
            let p = extract_period(&s).unwrap();
            prop_assert!((p * f - 1.0).abs() < 0.005, "p = {}, f = {}", p, f);
        }
    }
}
