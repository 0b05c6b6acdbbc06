use std::io::Write;

use super::RelaxationRates;
use crate::error::{Error, Result};
use crate::format::g17;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DosOptions {
    /// Smoothing window `delta_gamma`; also the spacing of the output grid.
    pub window: f64,
    /// Grid extends at least this far; further if finite rates exceed it.
    pub gamma_max: f64,
}

impl Default for DosOptions {
    fn default() -> Self {
        DosOptions {
            window: 0.1,
            gamma_max: 10.0,
        }
    }
}

/// Density of relaxation rates `W(gamma)` on a grid of spacing `window`.
///
/// Bin `k` is centred at `k * window` and spans half a window on either side;
/// bin 0 therefore holds the `|lambda| = 1` states.
#[derive(Debug, Clone, PartialEq)]
pub struct DosHistogram {
    pub bin_edges: Vec<f64>,
    pub density: Vec<f64>,
    /// Fraction of all eigenvalues with rate up to the right edge of each bin.
    pub integrated: Vec<f64>,
    /// Fraction of eigenvalues below the zero-mode cutoff.
    pub zero_modes: f64,
    pub smoothing_window: f64,
}

impl DosHistogram {
    pub fn bin_centers(&self) -> Vec<f64> {
        (0..self.density.len())
            .map(|k| k as f64 * self.smoothing_window)
            .collect()
    }

    /// Histogram mass plus the zero-mode fraction; 1 up to rounding.
    pub fn total_mass(&self) -> f64 {
        self.density
            .iter()
            .zip(self.bin_edges.windows(2))
            .map(|(w, e)| w * (e[1] - e[0]))
            .sum::<f64>()
            + self.zero_modes
    }

    /// `gamma_bin_center,W,integrated` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "gamma_bin_center,W,integrated")?;
        for ((c, w), i) in self.bin_centers().iter().zip(&self.density).zip(&self.integrated) {
            writeln!(out, "{},{},{}", g17(*c), g17(*w), g17(*i))?;
        }
        Ok(())
    }
}

/// Smoothed density of states from relaxation rates.
///
/// With `F` the integrated staircase (fraction of rates `<= gamma`), the
/// density is the derivative of the moving average of `F` over a window of
/// width `delta`, which has the closed form
/// `W(gamma) = (F(gamma + delta/2) - F(gamma - delta/2)) / delta`.
/// Sampled at the bin centres this is a count per bin, so histogram mass
/// plus zero modes sums to one.
pub fn density_of_states(rates: &RelaxationRates, opts: DosOptions) -> Result<DosHistogram> {
    let delta = opts.window;
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::out_of_range("window", delta, "(0, inf)"));
    }
    let total = rates.gammas.len();
    if total == 0 {
        return Err(Error::InvalidParams("no eigenvalues".into()));
    }
    let bin_of = |g: f64| (g / delta + 0.5).floor() as usize;
    let last_bin = rates
        .finite()
        .map(bin_of)
        .chain(std::iter::once(bin_of(opts.gamma_max.max(0.0))))
        .max()
        .unwrap_or(0);
    let mut counts = vec![0usize; last_bin + 1];
    for g in rates.finite() {
        counts[bin_of(g.max(0.0))] += 1;
    }
    let n = total as f64;
    let density = counts.iter().map(|&c| c as f64 / (n * delta)).collect();
    let mut running = 0usize;
    let integrated = counts
        .iter()
        .map(|&c| {
            running += c;
            running as f64 / n
        })
        .collect();
    let bin_edges = (0..=last_bin + 1).map(|k| (k as f64 - 0.5) * delta).collect();
    Ok(DosHistogram {
        bin_edges,
        density,
        integrated,
        zero_modes: rates.zero_modes as f64 / n,
        smoothing_window: delta,
    })
}
