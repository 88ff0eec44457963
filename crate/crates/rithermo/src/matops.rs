//! Dense complex matrix kernel for the collision engine.
//!
//! Everything in this crate lives in dimension 2, 4 or 8, so the kernel is
//! deliberately simple: `ndarray` matrices of `Complex64`, a cyclic Jacobi
//! eigensolver for Hermitian generators, and the handful of tensor-algebra
//! helpers (Kronecker products, partial traces, expectation values) the
//! physics modules need.  No BLAS/LAPACK backend is linked; at these sizes a
//! direct implementation is faster to build, fully deterministic and easy to
//! property-test.

use ndarray::Array2;
use num_complex::Complex64;

use crate::Error;

/// Dense complex matrix.
pub type CMatrix = Array2<Complex64>;

pub use ndarray::linalg::kron;

/// Hermiticity tolerance for generators fed to [`expm_hermitian`] /
/// [`hermitian_eigen`]: the largest allowed |a_ij − conj(a_ji)|.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Largest imaginary part tolerated (and then discarded) when an expectation
/// value of a Hermitian observable is reduced to a real number.
pub const IMAG_TOL: f64 = 1e-12;

const MAX_JACOBI_SWEEPS: usize = 40;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// n×n identity.
pub fn identity(n: usize) -> CMatrix {
    Array2::from_diag_elem(n, c(1.0, 0.0))
}

/// σ_x = [[0, 1], [1, 0]].
pub fn sigma_x() -> CMatrix {
    ndarray::array![[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
}

/// σ_y = [[0, −i], [i, 0]].
pub fn sigma_y() -> CMatrix {
    ndarray::array![[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]
}

/// σ_z = [[1, 0], [0, −1]]; the ground state |0⟩ has eigenvalue +1.
pub fn sigma_z() -> CMatrix {
    ndarray::array![[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
}

/// Conjugate transpose.
pub fn dagger(a: &CMatrix) -> CMatrix {
    a.t().mapv(|z| z.conj())
}

/// Matrix trace.
pub fn trace(a: &CMatrix) -> Complex64 {
    a.diag().sum()
}

/// Frobenius norm.
pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry-wise deviation from Hermiticity, max_ij |a_ij − conj(a_ji)|.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    worst
}

fn square_dim(a: &CMatrix, what: &str) -> Result<usize, Error> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{what} must be square, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows())
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[[i, j]].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigendecomposition h = V diag(λ) V† of a Hermitian matrix by cyclic
/// complex Jacobi rotations.
///
/// Returns the eigenvalues in ascending order and the matrix whose columns
/// are the matching orthonormal eigenvectors.  The input is validated against
/// [`HERMITICITY_TOL`] and symmetrised, so V is unitary to round-off and the
/// decomposition reconstructs h to ~1e−14·‖h‖.
pub fn hermitian_eigen(h: &CMatrix) -> Result<(Vec<f64>, CMatrix), Error> {
    let n = square_dim(h, "eigensolver input")?;
    let defect = hermiticity_defect(h);
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian { defect });
    }

    // Work on the Hermitian average so accumulated round-off in the caller
    // cannot bias the rotations.
    let mut a = h + &dagger(h);
    a.mapv_inplace(|z| z * 0.5);
    let mut v = identity(n);

    let scale = frobenius(&a).max(f64::MIN_POSITIVE);
    for _ in 0..MAX_JACOBI_SWEEPS {
        if off_diagonal_norm(&a) <= 1e-14 * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[[p, q]];
                let abs = apq.norm();
                if abs == 0.0 {
                    continue;
                }
                // Unitary rotation in the (p, q) plane that zeroes a_pq:
                // R = [[c, −s̄], [s, c]] with s = σ e^{−iφ}, a_pq = |a_pq| e^{iφ},
                // and tan θ the stable small root of t² − 2τt − 1 = 0.
                let tau = (a[[q, q]].re - a[[p, p]].re) / (2.0 * abs);
                let sgn = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = -sgn / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let phase = apq / c(abs, 0.0);
                let s = phase.conj() * (t * cos);

                for i in 0..n {
                    let aip = a[[i, p]];
                    let aiq = a[[i, q]];
                    a[[i, p]] = aip * cos + aiq * s;
                    a[[i, q]] = aip * (-s.conj()) + aiq * cos;
                }
                for j in 0..n {
                    let apj = a[[p, j]];
                    let aqj = a[[q, j]];
                    a[[p, j]] = apj * cos + aqj * s.conj();
                    a[[q, j]] = apj * (-s) + aqj * cos;
                }
                for i in 0..n {
                    let vip = v[[i, p]];
                    let viq = v[[i, q]];
                    v[[i, p]] = vip * cos + viq * s;
                    v[[i, q]] = vip * (-s.conj()) + viq * cos;
                }
            }
        }
    }

    let residual = off_diagonal_norm(&a);
    if residual > 1e-12 * scale {
        return Err(Error::EigensolverStalled { residual });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| a[[i, i]].re).collect();
    order.sort_by(|&i, &j| evals[i].total_cmp(&evals[j]));

    let sorted: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let mut vecs = CMatrix::zeros((n, n));
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vecs[[row, col]] = v[[row, src]];
        }
    }
    Ok((sorted, vecs))
}

/// Collision propagator U = exp(−i h t) for a Hermitian generator h.
///
/// Exponentiation goes through [`hermitian_eigen`], so U is unitary to
/// round-off at every coupling strength — there is no series truncation to
/// leak probability.  Non-Hermitian input is rejected, naming the defect.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> Result<CMatrix, Error> {
    let (evals, v) = hermitian_eigen(h)?;
    let n = evals.len();
    // U = Σ_k e^{−i λ_k t} |v_k⟩⟨v_k|
    let mut u = CMatrix::zeros((n, n));
    for (k, &lambda) in evals.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -lambda * t);
        for i in 0..n {
            let left = v[[i, k]] * phase;
            for j in 0..n {
                u[[i, j]] += left * v[[j, k]].conj();
            }
        }
    }
    Ok(u)
}

/// Partial trace of `rho` over every tensor factor *not* listed in `keep`.
///
/// `dims` gives the dimension of each factor in order (their product must be
/// the matrix dimension) and `keep` lists the factors to retain, strictly
/// increasing.  Row-major index convention: the last factor varies fastest,
/// matching [`kron`].
pub fn partial_trace(rho: &CMatrix, dims: &[usize], keep: &[usize]) -> Result<CMatrix, Error> {
    let n = square_dim(rho, "partial trace input")?;
    if dims.is_empty() || dims.iter().any(|&d| d == 0) {
        return Err(Error::DimensionMismatch(
            "subsystem dimensions must be non-empty and positive".into(),
        ));
    }
    let total: usize = dims.iter().product();
    if total != n {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dimensions {dims:?} multiply to {total}, matrix is {n}x{n}"
        )));
    }
    if keep.is_empty()
        || keep.windows(2).any(|w| w[0] >= w[1])
        || keep.iter().any(|&k| k >= dims.len())
    {
        return Err(Error::DimensionMismatch(format!(
            "keep set {keep:?} is not a strictly increasing subset of 0..{}",
            dims.len()
        )));
    }

    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let dim_keep: usize = keep.iter().map(|&k| dims[k]).product();
    let dim_traced: usize = traced.iter().map(|&k| dims[k]).product();

    // Stride of each factor inside the row-major composite index.
    let mut stride = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * dims[k + 1];
    }
    let compose = |factors: &[usize], mut idx: usize| -> usize {
        let mut full = 0;
        for &k in factors.iter().rev() {
            full += (idx % dims[k]) * stride[k];
            idx /= dims[k];
        }
        full
    };

    let mut out = CMatrix::zeros((dim_keep, dim_keep));
    for ik in 0..dim_keep {
        let fi = compose(keep, ik);
        for jk in 0..dim_keep {
            let fj = compose(keep, jk);
            let mut sum = c(0.0, 0.0);
            for it in 0..dim_traced {
                let ft = compose(&traced, it);
                sum += rho[[fi + ft, fj + ft]];
            }
            out[[ik, jk]] = sum;
        }
    }
    Ok(out)
}

/// ⟨op⟩ = Tr[op ρ] for a Hermitian observable against a density matrix.
///
/// The trace of a Hermitian operator against a Hermitian state is real up to
/// round-off; any imaginary residue beyond [`IMAG_TOL`] indicates a
/// construction bug upstream and trips an assertion.
pub fn expectation(op: &CMatrix, rho: &CMatrix) -> Result<f64, Error> {
    let n = square_dim(op, "observable")?;
    let m = square_dim(rho, "state")?;
    if n != m {
        return Err(Error::DimensionMismatch(format!(
            "observable is {n}x{n} but state is {m}x{m}"
        )));
    }
    let mut tr = c(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr += op[[i, j]] * rho[[j, i]];
        }
    }
    assert!(
        tr.im.abs() <= IMAG_TOL,
        "expectation value has imaginary part {:e}; observable or state is not Hermitian",
        tr.im
    );
    Ok(tr.re)
}

/// Largest entry-wise absolute difference, max_ij |a_ij − b_ij|.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
