use std::io::Write;

use num_complex::Complex64;

use super::Spectrum;
use crate::error::{Error, Result};
use crate::format::g17;
use crate::ranking::participation_ratio;

/// Eigenvalues with `|lambda|` below this are zero modes (infinite rate).
pub const DEFAULT_ZERO_CUTOFF: f64 = 1e-8;
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;

/// `gamma = -2 ln |lambda|`, clamped at 0 from below; infinite for
/// `|lambda| < cutoff`.
pub fn relaxation_rate(lambda: Complex64, cutoff: f64) -> f64 {
    let modulus = lambda.norm();
    if modulus < cutoff {
        return f64::INFINITY;
    }
    let gamma = -2.0 * modulus.ln();
    if gamma > 0.0 {
        gamma
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationRates {
    /// One rate per eigenvalue, `f64::INFINITY` for zero modes.
    pub gammas: Vec<f64>,
    pub zero_modes: usize,
    pub cutoff: f64,
}

impl RelaxationRates {
    pub fn finite(&self) -> impl Iterator<Item = f64> + '_ {
        self.gammas.iter().copied().filter(|g| g.is_finite())
    }
}

pub fn relaxation_rates(eigenvalues: &[Complex64], cutoff: f64) -> RelaxationRates {
    let gammas: Vec<f64> = eigenvalues.iter().map(|&l| relaxation_rate(l, cutoff)).collect();
    let zero_modes = gammas.iter().filter(|g| g.is_infinite()).count();
    RelaxationRates {
        gammas,
        zero_modes,
        cutoff,
    }
}

/// `(gamma, xi)` for every eigenpair, in spectrum order.
pub fn eigenvector_pars(spec: &Spectrum, cutoff: f64) -> Result<Vec<(f64, f64)>> {
    spec.eigenvalues()
        .iter()
        .zip(spec.eigenvectors())
        .map(|(&lambda, psi)| Ok((relaxation_rate(lambda, cutoff), participation_ratio(psi)?)))
        .collect()
}

/// Modulus of the second eigenvalue in spectrum order.
pub fn second_modulus(sorted: &[Complex64]) -> Option<f64> {
    sorted.get(1).map(|z| z.norm())
}

/// Greedy nearest-neighbour matching of `a` onto `b`; returns for each
/// element of `a` the distance to its partner.
fn greedy_pairing(a: &[Complex64], b: &[Complex64]) -> Vec<f64> {
    let mut used = vec![false; b.len()];
    a.iter()
        .map(|x| {
            let (k, d) = b
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, y)| (k, (x - y).norm()))
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .expect("b at least as long as a");
            used[k] = true;
            d
        })
        .collect()
}

/// Largest partner distance under greedy matching of two equal-size
/// eigenvalue multisets.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(greedy_pairing(a, b).into_iter().fold(0.0, f64::max))
}

/// Symmetric Hausdorff distance between two point clouds in the plane.
pub fn hausdorff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let directed = |p: &[Complex64], q: &[Complex64]| {
        p.iter()
            .map(|x| q.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    if a.is_empty() || b.is_empty() {
        return if a.len() == b.len() { 0.0 } else { f64::INFINITY };
    }
    directed(a, b).max(directed(b, a))
}

fn without_unit(values: &[Complex64]) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let mut rest = values.to_vec();
    if let Some(k) = rest
        .iter()
        .enumerate()
        .min_by(|(_, x), (_, y)| (**x - one).norm().total_cmp(&(**y - one).norm()))
        .map(|(k, _)| k)
    {
        rest.remove(k);
    }
    rest
}

/// Checks that the spectrum at damping `alpha` is `{1} U alpha * (rest of
/// the undamped spectrum)`.
///
/// One eigenvalue nearest 1 is set aside in each input; the remaining
/// eigenvalues at `alpha` are paired greedily with the scaled undamped ones.
/// Returns the largest pairing error, or [`Error::Pairing`] for the first
/// eigenvalue whose partner is farther than `tol`.
pub fn alpha_scaling_check(undamped: &[Complex64], damped: &[Complex64], alpha: f64, tol: f64) -> Result<f64> {
    if undamped.len() != damped.len() {
        return Err(Error::DimensionMismatch {
            expected: undamped.len(),
            got: damped.len(),
        });
    }
    let scaled: Vec<Complex64> = without_unit(undamped).into_iter().map(|z| z * alpha).collect();
    let rest = without_unit(damped);
    let errors = greedy_pairing(&rest, &scaled);
    let mut worst = 0.0f64;
    for (index, &error) in errors.iter().enumerate() {
        if error > tol {
            return Err(Error::Pairing { index, error, tol });
        }
        worst = worst.max(error);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub representative: Complex64,
    pub multiplicity: usize,
    /// Indices into the spectrum, ascending.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyReport {
    pub clusters: Vec<Cluster>,
    pub tol: f64,
}

impl DegeneracyReport {
    /// Multiplicity of the cluster whose representative lies within `tol` of `z`.
    pub fn multiplicity_at(&self, z: Complex64) -> usize {
        self.clusters
            .iter()
            .filter(|c| (c.representative - z).norm() <= self.tol)
            .map(|c| c.multiplicity)
            .sum()
    }

    /// `re,im,multiplicity` rows in report order.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "re,im,multiplicity")?;
        for c in &self.clusters {
            writeln!(
                out,
                "{},{},{}",
                g17(c.representative.re),
                g17(c.representative.im),
                c.multiplicity
            )?;
        }
        Ok(())
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Single-linkage clusters of eigenvalues at distance `tol`, sorted by
/// decreasing multiplicity then decreasing `|lambda|`.
pub fn degeneracy_clusters(eigenvalues: &[Complex64], tol: f64) -> DegeneracyReport {
    let n = eigenvalues.len();
    let mut by_re: Vec<usize> = (0..n).collect();
    by_re.sort_by(|&a, &b| eigenvalues[a].re.total_cmp(&eigenvalues[b].re));
    let mut parent: Vec<usize> = (0..n).collect();
    for (pos, &a) in by_re.iter().enumerate() {
        for &b in &by_re[pos + 1..] {
            if eigenvalues[b].re - eigenvalues[a].re > tol {
                break;
            }
            if (eigenvalues[a] - eigenvalues[b]).norm() <= tol {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut clusters: Vec<Cluster> = groups
        .into_values()
        .map(|members| {
            let sum: Complex64 = members.iter().map(|&i| eigenvalues[i]).sum();
            Cluster {
                representative: sum / members.len() as f64,
                multiplicity: members.len(),
                members,
            }
        })
        .collect();
    clusters.sort_by(|a, b| {
        b.multiplicity
            .cmp(&a.multiplicity)
            .then(b.representative.norm().total_cmp(&a.representative.norm()))
            .then(b.representative.re.total_cmp(&a.representative.re))
            .then(a.representative.im.total_cmp(&b.representative.im))
    });
    DegeneracyReport { clusters, tol }
}
