use std::cmp::Ordering;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::g17;
use crate::gmatrix::DenseMatrix;
use crate::ranking::participation_ratio;

/// Residual bound relative to the Frobenius norm of the input.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-9;

/// Eigenvalues with unit-norm right eigenvectors, sorted by decreasing
/// modulus (ties within 1e-12: larger real part first, then smaller
/// imaginary part).
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
    eigenvectors: Vec<Vec<Complex64>>,
    residuals: Vec<f64>,
    frobenius_norm: f64,
    trace: f64,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Vec<Complex64>] {
        &self.eigenvectors
    }

    /// `||M psi - lambda psi||_2` per pair.
    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_norm
    }

    /// Trace of the decomposed matrix, for comparison with the eigenvalue sum.
    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// `re,im,abs,gamma,par,residual` rows in spectrum order.
    pub fn write_csv<W: Write>(&self, zero_cutoff: f64, mut out: W) -> Result<()> {
        writeln!(out, "re,im,abs,gamma,par,residual")?;
        for ((lambda, psi), res) in self.eigenvalues.iter().zip(&self.eigenvectors).zip(&self.residuals) {
            let gamma = super::relaxation_rate(*lambda, zero_cutoff);
            let par = participation_ratio(psi)?;
            writeln!(
                out,
                "{},{},{},{},{},{}",
                g17(lambda.re),
                g17(lambda.im),
                g17(lambda.norm()),
                g17(gamma),
                g17(par),
                g17(*res)
            )?;
        }
        Ok(())
    }
}

/// Moduli that agree to 1e-12 compare equal, so rounding noise does not
/// decide the order of eigenvalues on a common circle.
fn modulus_key(z: &Complex64) -> f64 {
    (z.norm() * 1e12).round()
}

fn spectral_order(a: &Complex64, b: &Complex64) -> Ordering {
    modulus_key(b)
        .total_cmp(&modulus_key(a))
        .then(b.re.total_cmp(&a.re))
        .then(a.im.total_cmp(&b.im))
}

/// Sorts into spectrum order in place.
pub fn sort_eigenvalues(values: &mut [Complex64]) {
    values.sort_by(spectral_order);
}

fn check_finite(values: &[Complex64]) -> Result<()> {
    if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NoConvergence);
    }
    Ok(())
}

fn lapack_int(n: usize) -> i32 {
    i32::try_from(n).expect("matrix dimension exceeds LAPACK index range")
}

/// Runs LAPACK `dgeev`; returns the eigenvalues in LAPACK order and, when
/// requested, the packed right eigenvector matrix (column-major).
fn geev(m: &DenseMatrix, vectors: bool) -> Result<(Vec<Complex64>, Vec<f64>)> {
    let n = m.dim();
    let ni = lapack_int(n);
    let mut a = m.as_slice().to_vec();
    let mut wr = vec![0.0; n];
    let mut wi = vec![0.0; n];
    let mut vl = [0.0];
    let (jobvr, ldvr) = if vectors { (b'V', n) } else { (b'N', 1) };
    let mut vr = vec![0.0; ldvr * if vectors { n } else { 1 }];
    let mut info = 0;
    let mut query = [0.0];
    // SAFETY: every buffer is sized as dgeev requires for an n x n input.
    unsafe {
        lapack::dgeev(
            b'N',
            jobvr,
            ni,
            &mut a,
            ni,
            &mut wr,
            &mut wi,
            &mut vl,
            1,
            &mut vr,
            lapack_int(ldvr),
            &mut query,
            -1,
            &mut info,
        );
    }
    let lwork = (query[0] as usize).max(4 * n).max(1);
    let mut work = vec![0.0; lwork];
    unsafe {
        lapack::dgeev(
            b'N',
            jobvr,
            ni,
            &mut a,
            ni,
            &mut wr,
            &mut wi,
            &mut vl,
            1,
            &mut vr,
            lapack_int(ldvr),
            &mut work,
            lapack_int(lwork),
            &mut info,
        );
    }
    if info > 0 {
        return Err(Error::NoConvergence);
    }
    assert_eq!(info, 0, "dgeev rejected argument {}", -info);
    let values: Vec<Complex64> = wr.iter().zip(&wi).map(|(&re, &im)| Complex64::new(re, im)).collect();
    check_finite(&values)?;
    Ok((values, vr))
}

/// Eigenvalues only, in spectrum order.
pub fn eigenvalues_only(m: &DenseMatrix) -> Result<Vec<Complex64>> {
    if m.dim() == 0 {
        return Ok(Vec::new());
    }
    let (mut values, _) = geev(m, false)?;
    sort_eigenvalues(&mut values);
    Ok(values)
}

/// All eigenpairs of a general real matrix.
///
/// Every returned pair satisfies `||M psi - lambda psi|| <= tol * ||M||_F`;
/// the first pair that does not is reported as [`Error::Residual`].
/// Eigenvectors are scaled to unit L2 norm with their largest-modulus entry
/// real and positive.
pub fn eigendecompose(m: &DenseMatrix, tol: f64) -> Result<Spectrum> {
    let n = m.dim();
    let frobenius_norm = m.frobenius_norm();
    let trace = m.trace();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: Vec::new(),
            eigenvectors: Vec::new(),
            residuals: Vec::new(),
            frobenius_norm,
            trace,
        });
    }
    let (values, vr) = geev(m, true)?;

    // M times the packed eigenvector matrix, for the residuals.
    let ni = lapack_int(n);
    let mut mv = vec![0.0; n * n];
    // SAFETY: all three operands are n x n column-major buffers.
    unsafe {
        blas::dgemm(b'N', b'N', ni, ni, ni, 1.0, m.as_slice(), ni, &vr, ni, 0.0, &mut mv, ni);
    }
    let col = |buf: &[f64], j: usize| -> Vec<f64> { buf[j * n..(j + 1) * n].to_vec() };

    let mut pairs: Vec<(Complex64, Vec<Complex64>, f64)> = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        let lambda = values[k];
        if lambda.im == 0.0 {
            let x = col(&vr, k);
            let mx = col(&mv, k);
            let psi: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            let res: Vec<Complex64> = mx
                .iter()
                .zip(&x)
                .map(|(&a, &b)| Complex64::new(a - lambda.re * b, 0.0))
                .collect();
            pairs.push(finish_pair(lambda, psi, &res));
            k += 1;
        } else {
            // Conjugate pair stored as real and imaginary parts in columns k, k+1.
            let (x, y) = (col(&vr, k), col(&vr, k + 1));
            let (mx, my) = (col(&mv, k), col(&mv, k + 1));
            for (lambda, sign) in [(lambda, 1.0), (values[k + 1], -1.0)] {
                let psi: Vec<Complex64> = x.iter().zip(&y).map(|(&a, &b)| Complex64::new(a, sign * b)).collect();
                let res: Vec<Complex64> = (0..n)
                    .map(|i| Complex64::new(mx[i], sign * my[i]) - lambda * psi[i])
                    .collect();
                pairs.push(finish_pair(lambda, psi, &res));
            }
            k += 2;
        }
    }
    pairs.sort_by(|x, y| spectral_order(&x.0, &y.0));

    let bound = tol * frobenius_norm;
    for (index, (_, _, residual)) in pairs.iter().enumerate() {
        if residual.is_nan() || *residual > bound {
            return Err(Error::Residual {
                index,
                residual: *residual,
                bound,
            });
        }
    }

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for (lambda, psi, res) in pairs {
        eigenvalues.push(lambda);
        eigenvectors.push(psi);
        residuals.push(res);
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residuals,
        frobenius_norm,
        trace,
    })
}

/// Normalizes `psi` (largest entry real positive) and the residual vector alike.
fn finish_pair(lambda: Complex64, mut psi: Vec<Complex64>, res: &[Complex64]) -> (Complex64, Vec<Complex64>, f64) {
    let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let residual = res.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / norm;
    let pivot = psi
        .iter()
        .copied()
        .max_by(|x, y| x.norm_sqr().total_cmp(&y.norm_sqr()))
        .expect("nonempty vector");
    let phase = pivot.conj() / (pivot.norm() * norm);
    for z in psi.iter_mut() {
        *z *= phase;
    }
    (lambda, psi, residual)
}
