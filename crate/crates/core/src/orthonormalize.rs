//! Orthonormalization of the representers.
//!
//! Gram–Schmidt on `Ψ₁, Ψ₂, ...` (in collocation order) is the same as
//! factoring their Gram matrix `A = LLᵀ`: the weights of
//! `Ψ̂ᵢ = Σ_{k≤i} βᵢₖ Ψₖ` are the rows of `β = L⁻¹`, so that `βAβᵀ = I`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Pivots below this fraction of the largest diagonal entry are rejected.
pub const PIVOT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct BetaFactor {
    beta: DMatrix<f64>,
    cholesky: DMatrix<f64>,
    condition_estimate: f64,
}

impl BetaFactor {
    /// Lower-triangular weights `βᵢₖ`.
    pub fn beta(&self) -> &DMatrix<f64> {
        &self.beta
    }

    /// The Cholesky factor `L` with `A = LLᵀ`.
    pub fn cholesky(&self) -> &DMatrix<f64> {
        &self.cholesky
    }

    pub fn condition_estimate(&self) -> f64 {
        self.condition_estimate
    }

    pub fn len(&self) -> usize {
        self.beta.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.nrows() == 0
    }

    /// `max |βAβᵀ − I|`.
    pub fn reconstruction_error(&self, gram: &DMatrix<f64>) -> f64 {
        let n = self.len();
        let p = &self.beta * gram * self.beta.transpose();
        (p - DMatrix::<f64>::identity(n, n)).amax()
    }
}

fn cholesky(gram: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = gram.nrows();
    assert_eq!(n, gram.ncols(), "Gram matrix must be square");
    let scale = gram.diagonal().amax();
    let mut l = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        let mut d = gram[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > PIVOT_TOLERANCE * scale) {
            return Err(Error::NotPositiveDefinite { index: j, pivot: d });
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = gram[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

/// `L⁻¹` by forward substitution, one column of the identity at a time.
fn invert_lower(l: &DMatrix<f64>) -> DMatrix<f64> {
    let n = l.nrows();
    let mut inv = DMatrix::<f64>::zeros(n, n);
    for c in 0..n {
        inv[(c, c)] = 1.0 / l[(c, c)];
        for i in c + 1..n {
            let mut s = 0.0;
            for k in c..i {
                s += l[(i, k)] * inv[(k, c)];
            }
            inv[(i, c)] = -s / l[(i, i)];
        }
    }
    inv
}

pub fn factor(gram: &DMatrix<f64>) -> Result<BetaFactor> {
    let l = cholesky(gram)?;
    let beta = invert_lower(&l);
    let condition_estimate = estimate_from_factor(gram, &beta);
    Ok(BetaFactor { beta, cholesky: l, condition_estimate })
}

/// `λ_max / λ_min` by power iteration on `A` and on `A⁻¹ = βᵀβ`;
/// infinite when `A` cannot be factored.
pub fn condition_estimate(gram: &DMatrix<f64>) -> f64 {
    match cholesky(gram) {
        Ok(l) => estimate_from_factor(gram, &invert_lower(&l)),
        Err(_) => f64::INFINITY,
    }
}

fn estimate_from_factor(gram: &DMatrix<f64>, beta: &DMatrix<f64>) -> f64 {
    let n = gram.nrows();
    if n == 0 {
        return 1.0;
    }
    let largest = power_iteration(n, |v| gram * v);
    let inverse_largest = power_iteration(n, |v| beta.transpose() * (beta * v));
    largest * inverse_largest
}

fn power_iteration(n: usize, apply: impl Fn(&DVector<f64>) -> DVector<f64>) -> f64 {
    // fixed, non-symmetric start so the result is reproducible
    let mut v = DVector::from_fn(n, |i, _| 1.0 + 0.37 * ((i as f64) * 1.618).sin());
    v /= v.norm();
    let mut lambda = 0.0;
    for _ in 0..1000 {
        let w = apply(&v);
        let next = v.dot(&w);
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        v = w / norm;
        if (next - lambda).abs() <= 1e-12 * next.abs() {
            return next;
        }
        lambda = next;
    }
    lambda
}
