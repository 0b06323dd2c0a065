//! Numerical degree engine.
//!
//! The degree of `F: M → M` on a closed oriented manifold is the average of
//! the signed Jacobian `det dF` over the normalized volume. Differentials are
//! central differences along an oriented orthonormal frame at the source,
//! read off in an oriented orthonormal frame at the image.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    expm, haar_special_unitary, real_inner, su3_lie_frame, uniform_cpm_point, uniform_sphere_point,
    Complex64, ComplexMatrix, ComplexVector, RandomSource, RealVector,
};

/// Image points further than this from the manifold abort the differential.
pub const OFF_MANIFOLD_TOL: f64 = 1e-6;
pub const DEFAULT_STEP: f64 = 1e-4;
const BLOCK: usize = 256;

/// Ambient vector space a model's points and tangent vectors live in.
pub trait Ambient: Clone + Send + Sync {
    /// `self + alpha·other`.
    fn axpy(&self, alpha: f64, other: &Self) -> Self;
    /// Real (Euclidean) inner product.
    fn dot(&self, other: &Self) -> f64;
}

impl Ambient for ComplexMatrix {
    fn axpy(&self, alpha: f64, other: &Self) -> Self {
        self + &other.scale_real(alpha)
    }

    fn dot(&self, other: &Self) -> f64 {
        real_inner(self, other)
    }
}

impl Ambient for RealVector {
    fn axpy(&self, alpha: f64, other: &Self) -> Self {
        self + other * alpha
    }

    fn dot(&self, other: &Self) -> f64 {
        RealVector::dot(self, other)
    }
}

impl Ambient for ComplexVector {
    fn axpy(&self, alpha: f64, other: &Self) -> Self {
        self + other * Complex64::new(alpha, 0.0)
    }

    fn dot(&self, other: &Self) -> f64 {
        self.dotc(other).re
    }
}

/// A concrete oriented Riemannian manifold embedded in an ambient space.
pub trait ManifoldModel: Sync {
    type Point: Ambient;

    fn name(&self) -> String;

    fn dim(&self) -> usize;

    /// Draw from the normalized Riemannian volume.
    fn sample(&self, rng: &mut RandomSource) -> Self::Point;

    /// Oriented orthonormal frame of the tangent space at `p`.
    fn frame(&self, p: &Self::Point) -> Vec<Self::Point>;

    fn retract(&self, p: &Self::Point, v: &Self::Point, step: f64) -> Self::Point;

    /// Orthogonal projection of an ambient vector onto `T_p M`.
    fn project(&self, p: &Self::Point, v: &Self::Point) -> Self::Point;

    /// Distance-like measure of how far `p` is from the manifold.
    fn membership_defect(&self, p: &Self::Point) -> f64;

    /// Choose the representative of `q` that matches `base` (projective
    /// models fix the phase here); identity elsewhere.
    fn align(&self, _base: &Self::Point, q: Self::Point) -> Self::Point {
        q
    }
}

/// SU(3) with the bi-invariant metric `Re tr(X†Y)` and the left-translated
/// Gell-Mann frame.
#[derive(Debug, Clone)]
pub struct Su3Model {
    frame: Vec<ComplexMatrix>,
}

impl Su3Model {
    pub fn new() -> Self {
        Su3Model {
            frame: su3_lie_frame(),
        }
    }

    /// Traceless skew-Hermitian part.
    fn lie_part(x: &ComplexMatrix) -> ComplexMatrix {
        let skew = (x - &x.adjoint()).scale_real(0.5);
        let tr = skew.trace() / 3.0;
        let mut out = skew;
        for i in 0..3 {
            out[(i, i)] -= tr;
        }
        out
    }
}

impl Default for Su3Model {
    fn default() -> Self {
        Self::new()
    }
}

impl ManifoldModel for Su3Model {
    type Point = ComplexMatrix;

    fn name(&self) -> String {
        "su3".into()
    }

    fn dim(&self) -> usize {
        8
    }

    fn sample(&self, rng: &mut RandomSource) -> ComplexMatrix {
        haar_special_unitary(3, rng).expect("n = 3")
    }

    fn frame(&self, p: &ComplexMatrix) -> Vec<ComplexMatrix> {
        self.frame.iter().map(|e| p * e).collect()
    }

    fn retract(&self, p: &ComplexMatrix, v: &ComplexMatrix, step: f64) -> ComplexMatrix {
        let x = Self::lie_part(&(&p.adjoint() * v));
        p * &expm(&x.scale_real(step))
    }

    fn project(&self, p: &ComplexMatrix, v: &ComplexMatrix) -> ComplexMatrix {
        p * &Self::lie_part(&(&p.adjoint() * v))
    }

    fn membership_defect(&self, p: &ComplexMatrix) -> f64 {
        if p.n() != 3 || !p.is_finite() {
            return f64::INFINITY;
        }
        p.special_unitary_defect()
    }
}

/// `√(1 − a²)` for `a < 1`; beyond that the retraction degrades to normalizing.
fn chord_height(a: f64) -> f64 {
    if a < 1.0 {
        (1.0 - a * a).sqrt()
    } else {
        1.0
    }
}

/// Round sphere `S^n ⊂ R^{n+1}`, oriented so that `det[p, e₁, …, e_n] = +1`.
#[derive(Debug, Clone, Copy)]
pub struct SphereModel {
    n: usize,
}

impl SphereModel {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidDimension { got: n, min: 1 });
        }
        Ok(SphereModel { n })
    }
}

impl ManifoldModel for SphereModel {
    type Point = RealVector;

    fn name(&self) -> String {
        format!("s{}", self.n)
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn sample(&self, rng: &mut RandomSource) -> RealVector {
        uniform_sphere_point(self.n, rng).expect("n >= 1")
    }

    fn frame(&self, p: &RealVector) -> Vec<RealVector> {
        // Householder reflection H with H e₀ = ±p; its other columns span p⊥.
        let dim = self.n + 1;
        let flip_to_positive = p[0] <= 0.0;
        let mut w = if flip_to_positive {
            -p.clone()
        } else {
            p.clone()
        };
        w[0] += 1.0;
        let ww = w.norm_squared();
        let mut cols: Vec<RealVector> = (1..dim)
            .map(|i| {
                let mut e = RealVector::zeros(dim);
                e[i] = 1.0;
                &e - &w * (2.0 * w[i] / ww)
            })
            .collect();
        // H e₀ = p with det H = −1 when w = e₀ − p; flip one column to orient.
        if flip_to_positive {
            let last = cols.last_mut().expect("n >= 1");
            *last = -last.clone();
        }
        cols
    }

    /// `p·√(1 − s²|v|²) + s·v` for tangent `v`, so the chord between
    /// `retract(p, v, ±h)` is exactly `2h·v`.
    fn retract(&self, p: &RealVector, v: &RealVector, step: f64) -> RealVector {
        let v = self.project(p, v);
        let q = p * chord_height(step * v.norm()) + v * step;
        let norm = q.norm();
        q / norm
    }

    fn project(&self, p: &RealVector, v: &RealVector) -> RealVector {
        v - p * p.dot(v)
    }

    fn membership_defect(&self, p: &RealVector) -> f64 {
        if p.len() != self.n + 1 {
            return f64::INFINITY;
        }
        (p.norm() - 1.0).abs()
    }
}

/// CP^m with the Fubini–Study metric, modeled on unit representatives in
/// `C^{m+1}`. Tangent vectors are horizontal (Hermitian-orthogonal to the
/// point); the frame `(h₁, ih₁, …, h_m, ih_m)` carries the complex orientation.
#[derive(Debug, Clone, Copy)]
pub struct CpmModel {
    m: usize,
}

impl CpmModel {
    pub fn new(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidDimension { got: m, min: 1 });
        }
        Ok(CpmModel { m })
    }
}

impl ManifoldModel for CpmModel {
    type Point = ComplexVector;

    fn name(&self) -> String {
        format!("cp{}", self.m)
    }

    fn dim(&self) -> usize {
        2 * self.m
    }

    fn sample(&self, rng: &mut RandomSource) -> ComplexVector {
        uniform_cpm_point(self.m, rng).expect("m >= 1")
    }

    fn frame(&self, z: &ComplexVector) -> Vec<ComplexVector> {
        let dim = self.m + 1;
        // Skip the coordinate where z is largest; the rest stay well conditioned.
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| z[a].norm().total_cmp(&z[b].norm()));
        let mut basis: Vec<ComplexVector> = vec![z.clone()];
        for &idx in order.iter().take(self.m) {
            let mut v = ComplexVector::zeros(dim);
            v[idx] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for b in &basis {
                    let c = b.dotc(&v);
                    v -= b * c;
                }
            }
            let norm = v.norm();
            basis.push(v.unscale(norm));
        }
        let i = Complex64::new(0.0, 1.0);
        basis
            .into_iter()
            .skip(1)
            .flat_map(|h| {
                let ih = &h * i;
                [h, ih]
            })
            .collect()
    }

    /// Same chord-exact construction as the sphere, on horizontal `v`.
    fn retract(&self, z: &ComplexVector, v: &ComplexVector, step: f64) -> ComplexVector {
        let v = self.project(z, v);
        let q =
            z * Complex64::new(chord_height(step * v.norm()), 0.0) + v * Complex64::new(step, 0.0);
        let norm = q.norm();
        q.unscale(norm)
    }

    fn project(&self, z: &ComplexVector, v: &ComplexVector) -> ComplexVector {
        v - z * z.dotc(v)
    }

    fn membership_defect(&self, z: &ComplexVector) -> f64 {
        if z.len() != self.m + 1 {
            return f64::INFINITY;
        }
        (z.norm() - 1.0).abs()
    }

    fn align(&self, base: &ComplexVector, q: ComplexVector) -> ComplexVector {
        let inner = base.dotc(&q);
        if inner.norm() == 0.0 {
            return q;
        }
        &q * (inner.conj() / inner.norm())
    }
}

fn check_image<M: ManifoldModel>(model: &M, q: &M::Point) -> Result<()> {
    let defect = model.membership_defect(q);
    if defect.is_nan() || defect > OFF_MANIFOLD_TOL {
        return Err(Error::Consistency(format!(
            "map output is {defect:.3e} off {}",
            model.name()
        )));
    }
    Ok(())
}

/// Differential of `map` at `p` as an `n×n` matrix in the frames at `p`
/// and `map(p)`. Column `i` is the central difference along frame vector `i`.
pub fn differential<M, F>(map: &F, model: &M, p: &M::Point, step: f64) -> Result<DMatrix<f64>>
where
    M: ManifoldModel,
    F: Fn(&M::Point) -> Result<M::Point> + ?Sized,
{
    if step.is_nan() || step <= 0.0 {
        return Err(Error::param(format!("step must be positive, got {step}")));
    }
    let q = map(p)?;
    check_image(model, &q)?;
    let source = model.frame(p);
    let target = model.frame(&q);
    let n = model.dim();
    let mut jac = DMatrix::zeros(n, n);
    for (col, e) in source.iter().enumerate() {
        let plus = map(&model.retract(p, e, step))?;
        let minus = map(&model.retract(p, e, -step))?;
        check_image(model, &plus)?;
        check_image(model, &minus)?;
        let plus = model.align(&q, plus);
        let minus = model.align(&q, minus);
        let diff = plus.axpy(-1.0, &minus);
        let d = model.project(&q, &diff);
        for (row, f) in target.iter().enumerate() {
            jac[(row, col)] = f.dot(&d) / (2.0 * step);
        }
    }
    Ok(jac)
}

/// `det dF(p)` in oriented orthonormal frames.
pub fn signed_jacobian<M, F>(map: &F, model: &M, p: &M::Point, step: f64) -> Result<f64>
where
    M: ManifoldModel,
    F: Fn(&M::Point) -> Result<M::Point> + ?Sized,
{
    Ok(differential(map, model, p, step)?.determinant())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Accepted => "accepted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: usize,
    pub rounded: i64,
    pub verdict: Verdict,
    /// Fraction of draws resampled because they fell in an excluded set.
    pub excluded_fraction: f64,
}

impl DegreeEstimate {
    /// Acceptance band `max(0.2, 3σ)` around `target`.
    pub fn tolerance(&self) -> f64 {
        0.2f64.max(3.0 * self.standard_error)
    }

    pub fn agrees_with(&self, target: f64) -> bool {
        (self.mean - target).abs() <= self.tolerance()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateConfig {
    pub samples: usize,
    pub seed: u64,
    /// Base stream; sample `i` draws from stream `stream·2³² + i`.
    pub stream: u64,
    pub step: f64,
}

impl EstimateConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        EstimateConfig {
            samples,
            seed,
            stream: 0,
            step: DEFAULT_STEP,
        }
    }
}

pub const MIN_SAMPLES: usize = 1000;
const MAX_REJECT_FRACTION: f64 = 0.01;
const MAX_RESAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, Default)]
struct Partial {
    sum: f64,
    sum_sq: f64,
    count: usize,
    rejected: usize,
    excluded: usize,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.count += other.count;
        self.rejected += other.rejected;
        self.excluded += other.excluded;
        self
    }
}

/// Set of points to resample away from (measure-zero singular loci and a
/// small neighborhood of them).
pub type Exclusion<'a, P> = &'a (dyn Fn(&P) -> bool + Sync);

/// Monte-Carlo degree estimate. Work is split into fixed blocks of sample
/// indices, and block sums are combined in index order, so the result does
/// not depend on how many threads run the blocks.
pub fn degree_estimate<M, F>(
    map: &F,
    model: &M,
    config: &EstimateConfig,
    exclude: Option<Exclusion<'_, M::Point>>,
) -> Result<DegreeEstimate>
where
    M: ManifoldModel,
    F: Fn(&M::Point) -> Result<M::Point> + Sync + ?Sized,
{
    if config.samples < MIN_SAMPLES {
        return Err(Error::param(format!(
            "need at least {MIN_SAMPLES} samples, got {}",
            config.samples
        )));
    }
    let blocks = config.samples.div_ceil(BLOCK);
    let partials: Vec<Result<Partial>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(config.samples);
            let mut acc = Partial::default();
            for i in lo..hi {
                let stream = config.stream.wrapping_shl(32).wrapping_add(i as u64);
                let mut rng = RandomSource::new(config.seed, stream);
                let mut p = model.sample(&mut rng);
                if let Some(ex) = exclude {
                    let mut tries = 0;
                    while ex(&p) {
                        acc.excluded += 1;
                        tries += 1;
                        if tries > MAX_RESAMPLES {
                            return Err(Error::Consistency(
                                "exclusion set swallowed every resample".into(),
                            ));
                        }
                        p = model.sample(&mut rng);
                    }
                }
                match signed_jacobian(map, model, &p, config.step) {
                    Ok(j) if j.is_finite() => {
                        acc.sum += j;
                        acc.sum_sq += j * j;
                        acc.count += 1;
                    }
                    Ok(_) | Err(Error::Consistency(_)) => acc.rejected += 1,
                    Err(e) => return Err(e),
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = Partial::default();
    for p in partials {
        total = total.merge(p?);
    }
    let attempted = total.count + total.rejected;
    let reject_fraction = total.rejected as f64 / attempted as f64;
    if reject_fraction > MAX_REJECT_FRACTION {
        return Err(Error::Consistency(format!(
            "{} of {attempted} samples rejected for off-manifold outputs ({:.2}%)",
            total.rejected,
            100.0 * reject_fraction
        )));
    }
    let n = total.count as f64;
    let mean = total.sum / n;
    let var = ((total.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    let standard_error = (var / n).sqrt();
    let rounded = mean.round() as i64;
    let verdict = if (mean - rounded as f64).abs() <= 0.2f64.max(3.0 * standard_error) {
        Verdict::Accepted
    } else {
        Verdict::Inconclusive
    };
    Ok(DegreeEstimate {
        mean,
        standard_error,
        samples: total.count,
        rounded,
        verdict,
        excluded_fraction: total.excluded as f64 / (total.excluded + attempted) as f64,
    })
}
