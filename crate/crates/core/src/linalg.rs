//! Complex matrix arithmetic and random sampling on the compact groups and
//! homogeneous spaces the maps live on.
//!
//! Every sampler draws from a [`RandomSource`], a ChaCha stream addressed by
//! `(seed, stream)`. Two sources with the same pair produce the same draws,
//! which is what makes parallel Monte-Carlo runs independent of the worker
//! count.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type RealVector = DVector<f64>;
pub type ComplexVector = DVector<Complex64>;

/// Membership tolerance for points handed in from outside.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Tolerance met by freshly constructed group elements.
pub const CONSTRUCTION_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps.is_finite() {
            Ok(Tolerance(eps))
        } else {
            Err(Error::param(format!(
                "tolerance must be positive, got {eps}"
            )))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(MEMBERSHIP_TOL)
    }
}

/// Seeded, stream-addressable random source.
#[derive(Clone)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Fresh source on the same seed and another stream.
    pub fn substream(&self, stream: u64) -> Self {
        RandomSource::new(self.seed, stream)
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    pub fn complex_normal(&mut self) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(self.normal() * s, self.normal() * s)
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl fmt::Debug for RandomSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RandomSource")
            .field("seed", &self.seed)
            .field("stream", &self.stream)
            .finish_non_exhaustive()
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        ComplexMatrix(DMatrix::from_fn(n, n, f))
    }

    pub fn from_real_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Self::from_fn(n, |i, j| Complex64::new(f(i, j), 0.0))
    }

    /// Builds from row-major rows; rejects ragged, empty or non-finite input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDimension { got: 0, min: 1 });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::parse(
                    format!("row {i}"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
        }
        let m = Self::from_fn(n, |i, j| rows[i][j]);
        if !m.is_finite() {
            return Err(Error::domain("matrix has non-finite entries"));
        }
        Ok(m)
    }

    pub fn from_nalgebra(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "ComplexMatrix must be square");
        ComplexMatrix(m)
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> Self {
        ComplexMatrix(self.0.transpose())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        ComplexMatrix(self.0.map(|z| z.conj()))
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn det(&self) -> Complex64 {
        if self.n() == 3 {
            let b = &self.0;
            return b[(0, 0)] * (b[(1, 1)] * b[(2, 2)] - b[(1, 2)] * b[(2, 1)])
                - b[(0, 1)] * (b[(1, 0)] * b[(2, 2)] - b[(1, 2)] * b[(2, 0)])
                + b[(0, 2)] * (b[(1, 0)] * b[(2, 1)] - b[(1, 1)] * b[(2, 0)]);
        }
        self.0.clone().determinant()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        ComplexMatrix(self.0.map(|z| z * s))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n(), other.n());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius distance ‖self − other‖.
    pub fn distance(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.n(), other.n());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// max(entrywise |U†U − I|, |det U − 1|).
    pub fn special_unitary_defect(&self) -> f64 {
        let n = self.n();
        let gram = self.0.adjoint() * &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((gram[(i, j)] - target).norm());
            }
        }
        worst.max((self.det() - ONE).norm())
    }

    pub fn is_special_unitary(&self, tol: f64) -> bool {
        self.is_finite() && self.special_unitary_defect() <= tol
    }

    pub fn check_special_unitary(&self, tol: f64) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::domain("matrix has non-finite entries"));
        }
        let defect = self.special_unitary_defect();
        if defect > tol {
            return Err(Error::domain(format!(
                "matrix is not special unitary (defect {defect:.3e} > {tol:.1e})"
            )));
        }
        Ok(())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.0.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn mul_vec(&self, v: &ComplexVector) -> ComplexVector {
        &self.0 * v
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{:?}", self.rows())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex64 {
        &mut self.0[idx]
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Haar-distributed element of SU(n).
///
/// Gaussian matrix, QR with the triangular factor's diagonal made positive
/// real, then the determinant phase removed with `e^{-iφ/n}` where `φ` is
/// the principal argument of `det Q`.
pub fn haar_special_unitary(n: usize, rng: &mut RandomSource) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidDimension { got: n, min: 2 });
    }
    let g = DMatrix::from_fn(n, n, |_, _| rng.complex_normal());
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    let u = ComplexMatrix(q);
    let phi = u.det().arg();
    Ok(u.scale(Complex64::from_polar(1.0, -phi / n as f64)))
}

/// Haar-distributed element of SO(n), returned with zero imaginary parts.
pub fn haar_special_orthogonal(n: usize, rng: &mut RandomSource) -> Result<ComplexMatrix> {
    let r = haar_orthogonal_real(n, rng)?;
    Ok(ComplexMatrix::from_real_fn(n, |i, j| r[(i, j)]))
}

/// Same draw as [`haar_special_orthogonal`] as a real matrix.
pub fn haar_orthogonal_real(n: usize, rng: &mut RandomSource) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(Error::InvalidDimension { got: n, min: 2 });
    }
    let g = DMatrix::from_fn(n, n, |_, _| rng.normal());
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for i in 0..n {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    Ok(q)
}

/// Uniform point on the unit sphere S^n ⊂ R^{n+1}.
pub fn uniform_sphere_point(n: usize, rng: &mut RandomSource) -> Result<RealVector> {
    if n < 1 {
        return Err(Error::InvalidDimension { got: n, min: 1 });
    }
    loop {
        let v = RealVector::from_fn(n + 1, |_, _| rng.normal());
        let norm = v.norm();
        if norm > 1e-300 {
            return Ok(v / norm);
        }
    }
}

/// Unit representative of a Fubini–Study uniform point of CP^m.
pub fn uniform_cpm_point(m: usize, rng: &mut RandomSource) -> Result<ComplexVector> {
    if m < 1 {
        return Err(Error::InvalidDimension { got: m, min: 1 });
    }
    loop {
        let v = ComplexVector::from_fn(m + 1, |_, _| rng.complex_normal());
        let norm = v.norm();
        if norm > 1e-300 {
            return Ok(v.unscale(norm));
        }
    }
}

/// Conjugate of entry `(i, j)` (0-based) of an SU(3) matrix, computed as the
/// signed 2×2 minor. Equal to `conj(b_ij)` because `B⁻¹ = B†` and `det B = 1`.
pub fn cofactor_conjugate(b: &ComplexMatrix, i: usize, j: usize) -> Result<Complex64> {
    if b.n() != 3 {
        return Err(Error::InvalidDimension { got: b.n(), min: 3 });
    }
    if i > 2 || j > 2 {
        return Err(Error::param(format!("index ({i}, {j}) out of range")));
    }
    b.check_special_unitary(MEMBERSHIP_TOL)?;
    Ok(cofactor3(b, i, j))
}

/// Signed cofactor of a 3×3 matrix, no membership check.
#[inline]
pub fn cofactor3(b: &ComplexMatrix, i: usize, j: usize) -> Complex64 {
    let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
    let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
    b[(i1, j1)] * b[(i2, j2)] - b[(i1, j2)] * b[(i2, j1)]
}

/// Orthonormal basis `iλ_a/√2` of su(3) built from the Gell-Mann matrices,
/// in the standard order. The order fixes the orientation of SU(3).
pub fn su3_lie_frame() -> Vec<ComplexMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let mut gell_mann: Vec<[[Complex64; 3]; 3]> = Vec::with_capacity(8);
    let z = ZERO;
    gell_mann.push([[z, ONE, z], [ONE, z, z], [z, z, z]]);
    gell_mann.push([[z, -I, z], [I, z, z], [z, z, z]]);
    gell_mann.push([[ONE, z, z], [z, -ONE, z], [z, z, z]]);
    gell_mann.push([[z, z, ONE], [z, z, z], [ONE, z, z]]);
    gell_mann.push([[z, z, -I], [z, z, z], [I, z, z]]);
    gell_mann.push([[z, z, z], [z, z, ONE], [z, ONE, z]]);
    gell_mann.push([[z, z, z], [z, z, -I], [z, I, z]]);
    let r3 = 1.0 / 3f64.sqrt();
    gell_mann.push([
        [c(r3, 0.0), z, z],
        [z, c(r3, 0.0), z],
        [z, z, c(-2.0 * r3, 0.0)],
    ]);
    gell_mann
        .into_iter()
        .map(|lam| ComplexMatrix::from_fn(3, |i, j| I * lam[i][j] * s))
        .collect()
}

/// Real inner product `Re tr(A†B)`.
pub fn real_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.0.iter()
        .zip(b.0.iter())
        .map(|(x, y)| (x.conj() * y).re)
        .sum()
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.n();
    let norm = a.frobenius_norm();
    let mut squarings = 0u32;
    let mut scaled = norm;
    while scaled > 0.25 {
        scaled *= 0.5;
        squarings += 1;
    }
    let x = a.scale_real(0.5f64.powi(squarings as i32));
    let mut term = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::identity(n);
    for k in 1..=18 {
        term = (&term * &x).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.frobenius_norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn rot(t: f64) -> ComplexMatrix {
        let (s, c) = t.sin_cos();
        ComplexMatrix::from_real_fn(3, |i, j| match (i, j) {
            (0, 0) | (1, 1) => c,
            (0, 1) => -s,
            (1, 0) => s,
            (2, 2) => 1.0,
            _ => 0.0,
        })
    }

    #[test]
    fn haar_su3_is_special_unitary() {
        let mut rng = RandomSource::new(7, 0);
        for _ in 0..200 {
            let u = haar_special_unitary(3, &mut rng).unwrap();
            assert!((u.det() - ONE).norm() <= CONSTRUCTION_TOL);
            let gram = &u.adjoint() * &u;
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(3)) <= CONSTRUCTION_TOL);
        }
    }

    #[test]
    fn haar_su3_trace_has_zero_mean() {
        let mut rng = RandomSource::new(7, 0);
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|_| haar_special_unitary(3, &mut rng).unwrap().trace().re)
            .sum::<f64>()
            / n as f64;
        assert!(mean.abs() <= 0.05, "mean Re tr U = {mean}");
    }

    #[test]
    fn haar_is_left_invariant_in_trace_mean() {
        let mut rng = RandomSource::new(11, 0);
        let g = haar_special_unitary(3, &mut RandomSource::new(99, 0)).unwrap();
        let n = 10_000;
        let (mut a, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for _ in 0..n {
            let u = haar_special_unitary(3, &mut rng).unwrap();
            a.push(u.trace().re);
            b.push((&g * &u).trace().re);
        }
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let var = |v: &[f64]| {
            let m = mean(v);
            v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() - 1) as f64
        };
        let se = ((var(&a) + var(&b)) / n as f64).sqrt();
        assert!((mean(&a) - mean(&b)).abs() <= 3.0 * se);
    }

    #[test]
    fn haar_rejects_small_dimension() {
        let mut rng = RandomSource::new(1, 0);
        assert_eq!(
            haar_special_unitary(1, &mut rng).unwrap_err(),
            Error::InvalidDimension { got: 1, min: 2 }
        );
        assert!(haar_special_orthogonal(0, &mut rng).is_err());
        assert!(uniform_sphere_point(0, &mut rng).is_err());
        assert!(uniform_cpm_point(0, &mut rng).is_err());
    }

    #[test]
    fn so2_is_a_rotation() {
        let r = haar_special_orthogonal(2, &mut RandomSource::new(5, 0)).unwrap();
        assert!(r.is_real(0.0));
        assert!((r[(0, 0)] - r[(1, 1)]).norm() < 1e-14);
        assert!((r[(0, 1)] + r[(1, 0)]).norm() < 1e-14);
    }

    #[test]
    fn so_n_orthogonal_with_unit_det() {
        let mut rng = RandomSource::new(1, 0);
        for n in 2..=5 {
            let r = haar_special_orthogonal(n, &mut rng).unwrap();
            assert!((r.det() - ONE).norm() <= CONSTRUCTION_TOL);
            let gram = &r.transpose() * &r;
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) <= CONSTRUCTION_TOL);
        }
    }

    #[test]
    fn so4_trace_has_zero_mean() {
        let mut rng = RandomSource::new(1, 0);
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|_| haar_special_orthogonal(4, &mut rng).unwrap().trace().re)
            .sum::<f64>()
            / n as f64;
        assert!(mean.abs() <= 0.05, "mean tr R = {mean}");
    }

    #[test]
    fn sphere_points() {
        let mut rng = RandomSource::new(3, 0);
        let p = uniform_sphere_point(1, &mut rng).unwrap();
        assert_eq!(p.len(), 2);
        let n = 10_000;
        let mut acc = RealVector::zeros(3);
        for _ in 0..n {
            let p = uniform_sphere_point(2, &mut rng).unwrap();
            assert!((p.norm() - 1.0).abs() <= 1e-14);
            acc += p;
        }
        for x in acc.iter() {
            assert!((x / n as f64).abs() <= 0.05);
        }
    }

    #[test]
    fn cpm_points() {
        let mut rng = RandomSource::new(5, 0);
        assert_eq!(uniform_cpm_point(3, &mut rng).unwrap().len(), 4);
        let n = 10_000;
        let mut acc = 0.0;
        for _ in 0..n {
            let z = uniform_cpm_point(1, &mut rng).unwrap();
            assert!((z.dotc(&z).re - 1.0).abs() <= 1e-14);
            acc += z[0].norm_sqr();
        }
        assert!((acc / n as f64 - 0.5).abs() <= 0.02);
    }

    #[test]
    fn same_seed_and_stream_reproduce() {
        let a = haar_special_unitary(3, &mut RandomSource::new(42, 9)).unwrap();
        let b = haar_special_unitary(3, &mut RandomSource::new(42, 9)).unwrap();
        let c = haar_special_unitary(3, &mut RandomSource::new(42, 10)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn cofactor_of_identity_and_rotation() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(cofactor_conjugate(&id, 0, 0).unwrap(), ONE);
        let g = rot(FRAC_PI_2);
        assert!(cofactor_conjugate(&g, 1, 2).unwrap().norm() < 1e-15);
    }

    #[test]
    fn cofactor_matches_conjugate_on_haar_samples() {
        let mut rng = RandomSource::new(2024, 0);
        for _ in 0..1000 {
            let b = haar_special_unitary(3, &mut rng).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let c = cofactor_conjugate(&b, i, j).unwrap();
                    assert!((c - b[(i, j)].conj()).norm() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn cofactor_rejects_non_unitary() {
        let b = ComplexMatrix::identity(3).scale_real(2.0);
        assert!(matches!(
            cofactor_conjugate(&b, 0, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn lie_frame_is_orthonormal_and_traceless() {
        let frame = su3_lie_frame();
        assert_eq!(frame.len(), 8);
        for (a, ea) in frame.iter().enumerate() {
            assert!(ea.trace().norm() < 1e-15);
            assert!(ea.adjoint().max_abs_diff(&ea.scale_real(-1.0)) < 1e-15);
            for (b, eb) in frame.iter().enumerate() {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((real_inner(ea, eb) - expect).abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn expm_of_rotation_generator() {
        let gen = ComplexMatrix::from_real_fn(3, |i, j| match (i, j) {
            (0, 1) => -1.0,
            (1, 0) => 1.0,
            _ => 0.0,
        });
        for t in [0.0, 1e-4, 0.3, 2.0, 7.5] {
            assert!(expm(&gen.scale_real(t)).max_abs_diff(&rot(t)) < 1e-13);
        }
    }

    #[test]
    fn expm_of_su3_element_is_special_unitary() {
        let frame = su3_lie_frame();
        let x = frame
            .iter()
            .enumerate()
            .fold(ComplexMatrix::zeros(3), |acc, (i, e)| {
                &acc + &e.scale_real(0.3 * i as f64 - 1.0)
            });
        assert!(expm(&x).is_special_unitary(1e-13));
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let rows = vec![vec![ONE, ZERO], vec![ONE]];
        assert!(matches!(
            ComplexMatrix::from_rows(&rows),
            Err(Error::Parse { .. })
        ));
    }
}
