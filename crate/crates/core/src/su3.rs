//! Selfmaps of SU(3) equivariant under `(A, B) ↦ A B Aᵀ`.
//!
//! The normal geodesic is the block rotation `γ(t) = R(t) ⊕ 1`. Every `B`
//! can be written `A γ(t) Aᵀ` with `t ∈ [0, π/2]`, and `ψ_k` sends it to
//! `A γ(kt) Aᵀ`. The closed form below never solves for `A`: it needs only
//! the orbit invariant `x = sin²t`, the symmetric and skew parts of `B`, and
//! the cofactor vector `c`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::halfangle::{build_halfangle, HalfAnglePolys};
use crate::linalg::{cofactor3, Complex64, ComplexMatrix, MEMBERSHIP_TOL};

/// Output of `ψ_k` must be special unitary within this bound.
pub const OUTPUT_TOL: f64 = 1e-8;

/// `γ(t)`: rotation by `t` in the upper-left 2×2 block.
pub fn normal_geodesic(t: f64) -> ComplexMatrix {
    let (s, c) = t.sin_cos();
    ComplexMatrix::from_real_fn(3, |i, j| match (i, j) {
        (0, 0) | (1, 1) => c,
        (0, 1) => -s,
        (1, 0) => s,
        (2, 2) => 1.0,
        _ => 0.0,
    })
}

/// Parameter along the normal geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su3GeodesicParam(pub f64);

impl Su3GeodesicParam {
    /// Representative of the orbit of `γ(t)` in the slice `[0, π/2]`.
    pub fn canonical(self) -> f64 {
        self.0.sin().abs().min(1.0).asin()
    }

    pub fn point(self) -> ComplexMatrix {
        normal_geodesic(self.0)
    }
}

/// `Re tr(B B̄)`, with `B̄` the entrywise conjugate.
fn trace_b_bbar(b: &ComplexMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += (b[(i, j)] * b[(j, i)].conj()).re;
        }
    }
    acc
}

/// Orbit invariant `x = (3 − Re tr(B B̄))/4 = sin²t`, clamped to `[0, 1]`.
///
/// `B B̄ = A γ(2t) A⁻¹`, so its trace `1 + 2 cos 2t` depends only on the orbit.
pub fn orbit_invariant_x(b: &ComplexMatrix) -> Result<f64> {
    check_su3(b)?;
    Ok(invariant_x_unchecked(b))
}

fn invariant_x_unchecked(b: &ComplexMatrix) -> f64 {
    ((3.0 - trace_b_bbar(b)) / 4.0).clamp(0.0, 1.0)
}

fn check_su3(b: &ComplexMatrix) -> Result<()> {
    if b.n() != 3 {
        return Err(Error::domain(format!(
            "expected a 3x3 matrix, got {0}x{0}",
            b.n()
        )));
    }
    b.check_special_unitary(MEMBERSHIP_TOL)
}

/// The printed trace-based parameter `1 − (tr B − 1)²/4`. Only agrees with
/// the orbit invariant on real conjugates of the geodesic; kept so the
/// regression against it can be stated in code.
pub fn trace_based_x(b: &ComplexMatrix) -> Complex64 {
    let c = (b.trace() - 1.0) * 0.5;
    Complex64::new(1.0, 0.0) - c * c
}

/// Odd fold parameter `k = σ(2m + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OddFoldParam {
    k: i64,
}

impl OddFoldParam {
    pub fn new(k: i64) -> Result<Self> {
        if k % 2 == 0 {
            return Err(Error::param(format!("fold parameter k = {k} must be odd")));
        }
        Ok(OddFoldParam { k })
    }

    pub fn k(self) -> i64 {
        self.k
    }

    /// `m = (|k| − 1)/2`, the index of the half-angle polynomials used.
    pub fn m(self) -> u32 {
        ((self.k.unsigned_abs() - 1) / 2) as u32
    }

    pub fn sign(self) -> i64 {
        self.k.signum()
    }
}

/// `ψ_k` with its half-angle polynomials prepared once.
#[derive(Debug, Clone)]
pub struct PsiMap {
    param: OddFoldParam,
    polys: HalfAnglePolys,
}

impl PsiMap {
    pub fn new(k: i64) -> Result<Self> {
        let param = OddFoldParam::new(k)?;
        let polys = build_halfangle(param.m())?;
        Ok(PsiMap { param, polys })
    }

    pub fn param(&self) -> OddFoldParam {
        self.param
    }

    pub fn apply(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        check_su3(b)?;
        let out = self.apply_unchecked(b);
        let defect = out.special_unitary_defect();
        if defect.is_nan() || defect > OUTPUT_TOL {
            return Err(Error::Consistency(format!(
                "psi_{} output not special unitary (defect {defect:.3e})",
                self.param.k
            )));
        }
        Ok(out)
    }

    /// `½f(x)(B + Bᵀ) + σ·½g(x)(B − Bᵀ) + ¼h(x) c cᵀ` with `c` from cofactors.
    pub fn apply_unchecked(&self, b: &ComplexMatrix) -> ComplexMatrix {
        self.apply_at(b, invariant_x_unchecked(b))
    }

    /// The same closed form with the orbit parameter `x` supplied by the caller.
    pub fn apply_at(&self, b: &ComplexMatrix, x: f64) -> ComplexMatrix {
        // f₀ = g₀ = 1, h₀ = 0: the identity and the transpose, without rounding.
        if self.param.m() == 0 {
            return if self.param.sign() > 0 {
                b.clone()
            } else {
                b.transpose()
            };
        }
        let f = self.polys.eval_f(x);
        let g = self.polys.eval_g(x) * self.param.sign() as f64;
        let h = self.polys.eval_h(x);
        let c = conj_skew_vector(b);
        ComplexMatrix::from_fn(3, |i, j| {
            let bij = b[(i, j)];
            let bji = b[(j, i)];
            (bij + bji) * (0.5 * f) + (bij - bji) * (0.5 * g) + c[i] * c[j] * (0.25 * h)
        })
    }
}

/// `(b̄23 − b̄32, b̄31 − b̄13, b̄12 − b̄21)` with each conjugate taken as a cofactor.
fn conj_skew_vector(b: &ComplexMatrix) -> [Complex64; 3] {
    [
        cofactor3(b, 1, 2) - cofactor3(b, 2, 1),
        cofactor3(b, 2, 0) - cofactor3(b, 0, 2),
        cofactor3(b, 0, 1) - cofactor3(b, 1, 0),
    ]
}

/// One-shot `ψ_k(B)`.
pub fn psi(k: i64, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    PsiMap::new(k)?.apply(b)
}

/// `ψ_k` evaluated as an explicit real polynomial in `Re b_ij`, `Im b_ij`.
///
/// Shares no code with [`PsiMap::apply_unchecked`]: complex products are
/// spelled out on `(re, im)` pairs and the half-angle polynomials are
/// evaluated from their exact coefficients by plain Horner.
pub fn psi_polynomial_witness(k: i64, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let param = OddFoldParam::new(k)?;
    let polys = build_halfangle(param.m())?;
    let re = |i: usize, j: usize| b[(i, j)].re;
    let im = |i: usize, j: usize| b[(i, j)].im;
    // Re tr(B B̄) = Σ Re b_ij Re b_ji + Im b_ij Im b_ji.
    let mut tr = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            tr += re(i, j) * re(j, i) + im(i, j) * im(j, i);
        }
    }
    let x = (3.0 - tr) / 4.0;
    let f = polys.f().eval_naive(x);
    let g = polys.g().eval_naive(x) * param.sign() as f64;
    let h = polys.h().eval_naive(x);
    // minor(i1 j1, i2 j2) = b_{i1 j1} b_{i2 j2} − b_{i1 j2} b_{i2 j1} on pairs.
    let minor = |i: usize, j: usize| -> (f64, f64) {
        let (i1, i2, j1, j2) = ((i + 1) % 3, (i + 2) % 3, (j + 1) % 3, (j + 2) % 3);
        let r = re(i1, j1) * re(i2, j2)
            - im(i1, j1) * im(i2, j2)
            - (re(i1, j2) * re(i2, j1) - im(i1, j2) * im(i2, j1));
        let s = re(i1, j1) * im(i2, j2) + im(i1, j1) * re(i2, j2)
            - (re(i1, j2) * im(i2, j1) + im(i1, j2) * re(i2, j1));
        (r, s)
    };
    let diff = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0, a.1 - b.1);
    let c = [
        diff(minor(1, 2), minor(2, 1)),
        diff(minor(2, 0), minor(0, 2)),
        diff(minor(0, 1), minor(1, 0)),
    ];
    Ok(ComplexMatrix::from_fn(3, |i, j| {
        let sym_re = 0.5 * f * (re(i, j) + re(j, i));
        let sym_im = 0.5 * f * (im(i, j) + im(j, i));
        let skew_re = 0.5 * g * (re(i, j) - re(j, i));
        let skew_im = 0.5 * g * (im(i, j) - im(j, i));
        let cc_re = 0.25 * h * (c[i].0 * c[j].0 - c[i].1 * c[j].1);
        let cc_im = 0.25 * h * (c[i].0 * c[j].1 + c[i].1 * c[j].0);
        Complex64::new(sym_re + skew_re + cc_re, sym_im + skew_im + cc_im)
    }))
}

/// `ρ_k(B) = B^k` by repeated squaring; negative powers go through `B†`.
pub fn power_map(k: i64, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_su3(b)?;
    Ok(power_unchecked(k, b))
}

pub(crate) fn power_unchecked(k: i64, b: &ComplexMatrix) -> ComplexMatrix {
    let mut base = if k < 0 { b.adjoint() } else { b.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = ComplexMatrix::identity(b.n());
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Degree `4^m (2ℓ + 1)` realized as `ρ_{2^m} ∘ ψ_{2ℓ+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealizationPlan {
    pub m: u32,
    pub ell: i64,
}

impl RealizationPlan {
    pub fn degree(self) -> i64 {
        4i64.pow(self.m) * (2 * self.ell + 1)
    }

    pub fn psi_k(self) -> i64 {
        2 * self.ell + 1
    }

    pub fn power(self) -> i64 {
        1i64 << self.m
    }

    pub fn map(self) -> Result<RealizedMap> {
        Ok(RealizedMap {
            psi: PsiMap::new(self.psi_k())?,
            power: self.power(),
        })
    }
}

/// The composed map of a [`RealizationPlan`].
#[derive(Debug, Clone)]
pub struct RealizedMap {
    psi: PsiMap,
    power: i64,
}

impl RealizedMap {
    pub fn apply(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let inner = self.psi.apply(b)?;
        Ok(power_unchecked(self.power, &inner))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realization {
    Plan(RealizationPlan),
    /// `v₂(d)` is odd; no selfmap of SU(3) has this degree.
    NotRealizable {
        two_adic_valuation: u32,
    },
    /// `d = 0`: realized by a constant map, outside the `4^m(2ℓ+1)` family.
    ZeroCaveat,
}

pub fn realize_degree(d: i64) -> Realization {
    if d == 0 {
        return Realization::ZeroCaveat;
    }
    let v = d.trailing_zeros();
    if v % 2 == 1 {
        return Realization::NotRealizable {
            two_adic_valuation: v,
        };
    }
    let odd = d >> v;
    Realization::Plan(RealizationPlan {
        m: v / 2,
        ell: (odd - 1) / 2,
    })
}

/// Slice parameter `t ∈ [0, π/2]` with `B` on the orbit of `γ(t)`.
pub fn recover_slice_parameter(b: &ComplexMatrix) -> Result<f64> {
    let x = orbit_invariant_x(b)?;
    let t = x.sqrt().asin().clamp(0.0, FRAC_PI_2);
    let residual = orbit_spectrum_residual(b, t);
    if residual > 1e-8 {
        return Err(Error::Consistency(format!(
            "recovered t = {t} does not match the spectrum of B B̄ (residual {residual:.3e})"
        )));
    }
    Ok(t)
}

/// Compares the characteristic polynomial of `B B̄` with that of `γ(2t)`,
/// which has eigenvalues `{e^{2it}, e^{-2it}, 1}`. Equal coefficients mean
/// equal eigenvalue multisets.
pub fn orbit_spectrum_residual(b: &ComplexMatrix, t: f64) -> f64 {
    let m = b * &b.conj();
    let tr = m.trace();
    let tr2 = (&m * &m).trace();
    let e2 = (tr * tr - tr2) * 0.5;
    let det = m.det();
    let expect = Complex64::new(1.0 + 2.0 * (2.0 * t).cos(), 0.0);
    let one = Complex64::new(1.0, 0.0);
    (tr - expect)
        .norm()
        .max((e2 - expect).norm())
        .max((det - one).norm())
}
