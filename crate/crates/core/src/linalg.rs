//! Small dense linear algebra: LU with partial pivoting, power iteration and
//! the smallest singular value by inverse iteration.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data must be n*n");
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn frobenius(&self) -> f64 {
        math::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    pub fn scaled(&self, c: f64) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|v| c * v).collect() }
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> Matrix {
        let mut m = self.scaled(-1.0);
        for i in 0..self.n {
            m[(i, i)] += 1.0;
        }
        m
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(a: &[f64]) -> f64 {
    math::sqrt(dot(a, a))
}

/// `PA = LU` with unit lower `L`, packed in one matrix.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    /// True when some pivot was exactly zero and got replaced by a tiny value.
    pub singular: bool,
}

impl Lu {
    pub fn factor(a: &Matrix) -> Lu {
        let n = a.n;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut singular = false;
        let floor = f64::EPSILON * a.frobenius().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| math::abs(lu[(i, k)]).total_cmp(&math::abs(lu[(j, k)])))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            if lu[(k, k)] == 0.0 {
                singular = true;
                lu[(k, k)] = floor;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                if l != 0.0 {
                    for j in k + 1..n {
                        lu[(i, j)] -= l * lu[(k, j)];
                    }
                }
            }
        }
        Lu { lu, perm, singular }
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s = dot(&self.lu.row(i)[..i], &x[..i]);
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s = dot(&self.lu.row(i)[i + 1..], &x[i + 1..]);
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        x
    }

    /// Solves `Aᵀ x = b`.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.n;
        // Aᵀ = Uᵀ Lᵀ P, so solve Uᵀ y = b, Lᵀ z = y, x = Pᵀ z.
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.lu[(k, i)] * y[k];
            }
            y[i] = s / self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.lu[(k, i)] * y[k];
            }
            y[i] = s;
        }
        let mut x = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = y[i];
        }
        x
    }
}

/// Outcome of [`power_iteration`].
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    /// Unit 2-norm eigenvector.
    pub vector: Vec<f64>,
    /// `‖A v - λ v‖ / |λ|`.
    pub residual: f64,
    pub iterations: usize,
    /// Shift that was needed to converge, `0` if none.
    pub shift: f64,
}

fn power_run(a: &Matrix, shift: f64, tol: f64, max_iter: usize, start: &[f64]) -> (Eigenpair, bool) {
    let mut v = start.to_vec();
    let nv = norm2(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut best = Eigenpair { value: 0.0, vector: v.clone(), residual: f64::INFINITY, iterations: 0, shift };
    for it in 1..=max_iter {
        let av = a.matvec(&v);
        let lambda = dot(&v, &av);
        let r: Vec<f64> = av.iter().zip(&v).map(|(x, y)| x - lambda * y).collect();
        let residual = if lambda != 0.0 { norm2(&r) / math::abs(lambda) } else { f64::INFINITY };
        if residual < best.residual {
            best = Eigenpair { value: lambda, vector: v.clone(), residual, iterations: it, shift };
        }
        if residual <= tol {
            return (best, true);
        }
        let w: Vec<f64> = av.iter().zip(&v).map(|(x, y)| x + shift * y).collect();
        let nw = norm2(&w);
        if nw == 0.0 || !nw.is_finite() {
            return (best, false);
        }
        v = w.into_iter().map(|x| x / nw).collect();
    }
    (best, false)
}

/// Dominant eigenpair of `a` by power iteration from the all-ones vector.
/// When plain iteration stalls (a dominant pair of equal modulus), the
/// iteration is retried on `a + s I` with positive shifts `s`, which favours
/// the eigenvalue of largest real part.
pub fn power_iteration(a: &Matrix, tol: f64, max_iter: usize) -> Result<Eigenpair> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::InvalidParameter { name: "matrix", reason: "must be non-empty" });
    }
    let start = vec![1.0; n];
    let norm = a.frobenius();
    if norm == 0.0 {
        return Err(Error::SpectralFailure { iterations: 0, residual: f64::INFINITY });
    }
    let (pair, ok) = power_run(a, 0.0, tol, max_iter, &start);
    if ok {
        return Ok(pair);
    }
    let mut best = pair;
    for factor in [0.5, 1.0] {
        let (pair, ok) = power_run(a, factor * norm, tol, max_iter, &best.vector.clone());
        if ok {
            return Ok(pair);
        }
        if pair.residual < best.residual {
            best = pair;
        }
    }
    Err(Error::SpectralFailure { iterations: best.iterations, residual: best.residual })
}

/// Smallest singular value of `a` by inverse iteration on `aᵀa`.
pub fn smallest_singular_value(a: &Matrix, max_iter: usize) -> f64 {
    let n = a.dim();
    let lu = Lu::factor(a);
    if lu.singular {
        return 0.0;
    }
    let mut x = vec![1.0 / math::sqrt(n as f64); n];
    let mut sigma = f64::INFINITY;
    for _ in 0..max_iter {
        let z = lu.solve(&lu.solve_transpose(&x));
        let nz = norm2(&z);
        if !nz.is_finite() || nz == 0.0 {
            return 0.0;
        }
        let next = 1.0 / math::sqrt(nz);
        x = z.into_iter().map(|v| v / nz).collect();
        let done = math::abs(next - sigma) <= 1e-12 * next;
        sigma = next;
        if done {
            break;
        }
    }
    sigma
}
