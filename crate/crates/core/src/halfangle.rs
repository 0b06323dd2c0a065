//! Half-angle polynomials `f_j, g_j, h_j` and Chebyshev evaluation.
//!
//! With `x = sin²t` and `k = 2j + 1`:
//!
//! ```text
//! cos kt = f_j(x) cos t,    sin kt = g_j(x) sin t,    f_j(x) + x h_j(x) = 1.
//! ```
//!
//! Coefficients are exact big integers in the monomial basis of `x`. They
//! grow like `4^j`, so evaluation carries a double-double copy of every
//! coefficient and runs a compensated Horner scheme. Past
//! [`COMPENSATED_MAX_J`] cancellation exceeds even that, and evaluation is
//! exact in dyadic rationals with a single final rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `j` accepted by [`build_halfangle`].
pub const MAX_HALFANGLE_J: u32 = 60;
/// Largest `j` evaluated in double-double arithmetic.
pub const COMPENSATED_MAX_J: u32 = 25;

/// Exact integer polynomial, `coeffs[i]` multiplies `x^i`. Trailing zeros
/// are trimmed so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, s: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact division by `x`; fails when the constant term is nonzero.
    pub fn div_x(&self) -> Option<IntPoly> {
        match self.coeffs.first() {
            None => Some(IntPoly::zero()),
            Some(c0) if c0.is_zero() => Some(IntPoly::new(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    /// Plain Horner in f64, only for tests and diagnostics.
    pub fn eval_naive(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `p(x)` computed exactly (every finite `f64` is a dyadic rational)
    /// and rounded once.
    pub fn eval_exact(&self, x: f64) -> f64 {
        let Some(r) = BigRational::from_float(x) else {
            return f64::NAN;
        };
        let acc = self
            .coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * &r + BigRational::from_integer(c.clone())
            });
        acc.to_f64().unwrap_or(f64::NAN)
    }
}

/// Polynomial prepared for compensated evaluation.
#[derive(Debug, Clone, PartialEq)]
struct SplitPoly {
    hi: Vec<f64>,
    lo: Vec<f64>,
}

impl SplitPoly {
    fn from_poly(p: &IntPoly) -> Self {
        let (hi, lo) = p.coeffs().iter().map(split_bigint).unzip();
        SplitPoly { hi, lo }
    }

    fn eval(&self, x: f64) -> f64 {
        compensated_horner(&self.hi, &self.lo, x)
    }
}

fn split_bigint(c: &BigInt) -> (f64, f64) {
    let hi = c.to_f64().expect("coefficient within f64 range");
    let rest = c - BigInt::from_f64(hi).expect("finite");
    (hi, rest.to_f64().expect("finite"))
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Horner with error-free transformations; the coefficient tails `lo` are
/// folded into the correction term. Roughly twice working precision.
fn compensated_horner(hi: &[f64], lo: &[f64], x: f64) -> f64 {
    let Some(n) = hi.len().checked_sub(1) else {
        return 0.0;
    };
    let mut s = hi[n];
    let mut err = lo[n];
    for i in (0..n).rev() {
        let (p, pe) = two_prod(s, x);
        let (sum, se) = two_sum(p, hi[i]);
        s = sum;
        err = err.mul_add(x, pe + se + lo[i]);
    }
    s + err
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(1 - x)^e` for `e = 0..=max`.
fn one_minus_x_powers(max: usize) -> Vec<IntPoly> {
    let base = IntPoly::from_i64(&[1, -1]);
    let mut out = vec![IntPoly::constant(1)];
    for e in 1..=max {
        let next = out[e - 1].mul(&base);
        out.push(next);
    }
    out
}

fn monomial(i: usize) -> IntPoly {
    let mut c = vec![BigInt::zero(); i + 1];
    c[i] = BigInt::one();
    IntPoly::new(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfAnglePolys {
    j: u32,
    f: IntPoly,
    g: IntPoly,
    h: IntPoly,
    f_eval: SplitPoly,
    g_eval: SplitPoly,
    h_eval: SplitPoly,
}

/// Expands the defining binomial sums of `f_j` and `g_j`; `h_j` comes from
/// exact division of `1 - f_j` by `x`.
pub fn build_halfangle(j: u32) -> Result<HalfAnglePolys> {
    if j > MAX_HALFANGLE_J {
        return Err(Error::OverflowGuard {
            j,
            max: MAX_HALFANGLE_J,
        });
    }
    let ju = j as usize;
    let k = 2 * j as u64 + 1;
    let powers = one_minus_x_powers(ju);
    let mut f = IntPoly::zero();
    let mut g = IntPoly::zero();
    for i in 0..=ju {
        let sign = if i % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let basis = monomial(i).mul(&powers[ju - i]);
        f = f.add(&basis.scale(&(&sign * binomial(k, 2 * i as u64))));
        g = g.add(&basis.scale(&(&sign * binomial(k, 2 * i as u64 + 1))));
    }
    let h = IntPoly::constant(1)
        .sub(&f)
        .div_x()
        .ok_or_else(|| Error::Consistency("1 - f_j has a nonzero constant term".into()))?;
    Ok(HalfAnglePolys {
        j,
        f_eval: SplitPoly::from_poly(&f),
        g_eval: SplitPoly::from_poly(&g),
        h_eval: SplitPoly::from_poly(&h),
        f,
        g,
        h,
    })
}

/// The alternative closed-sum expression for `h_j`, kept to cross-check the
/// division-based constructor.
pub fn closed_form_h(j: u32) -> IntPoly {
    let ju = j as usize;
    let powers = one_minus_x_powers(ju);
    let mut h = IntPoly::zero();
    for i in 0..ju {
        let sign = if i % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let x_i = monomial(i);
        let a = x_i.scale(&binomial(j as u64, i as u64 + 1));
        let b = x_i
            .mul(&powers[ju - 1 - i])
            .scale(&binomial(2 * j as u64 + 1, 2 * i as u64 + 2));
        h = h.add(&a.add(&b).scale(&sign));
    }
    h
}

impl HalfAnglePolys {
    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn g(&self) -> &IntPoly {
        &self.g
    }

    pub fn h(&self) -> &IntPoly {
        &self.h
    }

    pub fn eval_f(&self, x: f64) -> f64 {
        if self.j <= COMPENSATED_MAX_J {
            self.f_eval.eval(x)
        } else {
            self.f.eval_exact(x)
        }
    }

    pub fn eval_g(&self, x: f64) -> f64 {
        if self.j <= COMPENSATED_MAX_J {
            self.g_eval.eval(x)
        } else {
            self.g.eval_exact(x)
        }
    }

    pub fn eval_h(&self, x: f64) -> f64 {
        if self.j <= COMPENSATED_MAX_J {
            self.h_eval.eval(x)
        } else {
            self.h.eval_exact(x)
        }
    }

    /// `f_j + x h_j - 1`, computed exactly. Zero for every valid build.
    pub fn exact_identity_residual(&self) -> IntPoly {
        self.f
            .add(&monomial(1).mul(&self.h))
            .sub(&IntPoly::constant(1))
    }

    /// Tolerance the trig identities are expected to meet at this `j`.
    pub fn identity_tolerance(&self) -> f64 {
        if self.j <= 25 {
            1e-9
        } else {
            1e-6
        }
    }
}

/// Exact `T_|k|` and `U_{|k|-1}` in the variable `c = cos t`. For negative
/// `k` the sine factor changes sign, which is carried by [`Self::sign`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevPair {
    k: i64,
    t: IntPoly,
    u: IntPoly,
}

impl ChebyshevPair {
    pub fn build(k: i64) -> Self {
        let n = k.unsigned_abs() as usize;
        let two_c = IntPoly::from_i64(&[0, 2]);
        // T_0 = 1, T_1 = c; U_{-1} = 0, U_0 = 1.
        let mut t = (IntPoly::constant(1), IntPoly::from_i64(&[0, 1]));
        let mut u = (IntPoly::zero(), IntPoly::constant(1));
        if n == 0 {
            return ChebyshevPair { k, t: t.0, u: u.0 };
        }
        for _ in 1..n {
            t = (t.1.clone(), two_c.mul(&t.1).sub(&t.0));
            u = (u.1.clone(), two_c.mul(&u.1).sub(&u.0));
        }
        ChebyshevPair { k, t: t.1, u: u.1 }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn t_coeffs(&self) -> &IntPoly {
        &self.t
    }

    pub fn u_coeffs(&self) -> &IntPoly {
        &self.u
    }

    pub fn sign(&self) -> i64 {
        self.k.signum()
    }
}

/// `(T_k(c), U_{k-1}(c))` by the three-term recurrence, so that
/// `T_k(cos t) = cos kt` and `U_{k-1}(cos t) sin t = sin kt` for every
/// integer `k` (negative `k` negates the second component).
pub fn chebyshev_eval(k: i64, c: f64) -> Result<(f64, f64)> {
    if !c.is_finite() || c.abs() > 1.0 + 1e-12 {
        return Err(Error::domain(format!(
            "chebyshev argument {c} outside [-1, 1]"
        )));
    }
    let n = k.unsigned_abs();
    if n == 0 {
        return Ok((1.0, 0.0));
    }
    let (mut t_prev, mut t_cur) = (1.0, c);
    let (mut u_prev, mut u_cur) = (0.0, 1.0);
    for _ in 1..n {
        let t_next = 2.0 * c * t_cur - t_prev;
        let u_next = 2.0 * c * u_cur - u_prev;
        (t_prev, t_cur) = (t_cur, t_next);
        (u_prev, u_cur) = (u_cur, u_next);
    }
    let sign = if k < 0 { -1.0 } else { 1.0 };
    Ok((t_cur, sign * u_cur))
}

/// Half-angle identity residuals at `t`: `(|f(sin²t) cos t - cos kt|, |g(sin²t) sin t - sin kt|)`.
pub fn trig_residuals(polys: &HalfAnglePolys, t: f64) -> (f64, f64) {
    let k = 2.0 * polys.j() as f64 + 1.0;
    let x = t.sin().powi(2);
    let rc = (polys.eval_f(x) * t.cos() - (k * t).cos()).abs();
    let rs = (polys.eval_g(x) * t.sin() - (k * t).sin()).abs();
    (rc, rs)
}

/// `|f(x)²(1 - x) + g(x)² x - 1|`.
pub fn pythagorean_residual(polys: &HalfAnglePolys, x: f64) -> f64 {
    let f = polys.eval_f(x);
    let g = polys.eval_g(x);
    (f * f * (1.0 - x) + g * g * x - 1.0).abs()
}

/// Largest absolute coefficient, used to report the growth that limits
/// floating-point evaluation.
pub fn max_coefficient_bits(p: &IntPoly) -> u64 {
    p.coeffs().iter().map(|c| c.abs().bits()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    use crate::linalg::RandomSource;

    #[test]
    fn j0_is_trivial() {
        let p = build_halfangle(0).unwrap();
        assert_eq!(p.f(), &IntPoly::from_i64(&[1]));
        assert_eq!(p.g(), &IntPoly::from_i64(&[1]));
        assert!(p.h().is_zero());
    }

    #[test]
    fn j1_and_j2_coefficients() {
        let p = build_halfangle(1).unwrap();
        assert_eq!(p.f(), &IntPoly::from_i64(&[1, -4]));
        assert_eq!(p.g(), &IntPoly::from_i64(&[3, -4]));
        assert_eq!(p.h(), &IntPoly::from_i64(&[4]));
        let p = build_halfangle(2).unwrap();
        assert_eq!(p.f(), &IntPoly::from_i64(&[1, -12, 16]));
        assert_eq!(p.g(), &IntPoly::from_i64(&[5, -20, 16]));
        assert_eq!(p.h(), &IntPoly::from_i64(&[12, -16]));
    }

    #[test]
    fn j2_matches_cos_5t_expansion() {
        // cos 5t = 16c^5 - 20c^3 + 5c and f_2(1 - c^2) c must agree.
        for c in [-0.9, -0.3, 0.0, 0.4, 0.77, 1.0] {
            let f = build_halfangle(2).unwrap().eval_f(1.0 - c * c);
            let cos5 = 16.0 * c.powi(5) - 20.0 * c.powi(3) + 5.0 * c;
            assert!((f * c - cos5).abs() < 1e-13);
        }
    }

    #[test]
    fn degrees_and_values_at_zero() {
        for j in 0..=30u32 {
            let p = build_halfangle(j).unwrap();
            assert_eq!(p.f().degree(), Some(j as usize));
            assert_eq!(p.g().degree(), Some(j as usize));
            assert_eq!(p.h().degree(), (j as usize).checked_sub(1));
            assert_eq!(p.f().coeff(0), BigInt::from(1));
            assert_eq!(p.g().coeff(0), BigInt::from(2 * j + 1));
        }
    }

    #[test]
    fn exact_identity_is_zero_up_to_guard() {
        for j in 0..=MAX_HALFANGLE_J {
            assert!(build_halfangle(j)
                .unwrap()
                .exact_identity_residual()
                .is_zero());
        }
    }

    #[test]
    fn guard_rejects_large_j() {
        assert_eq!(
            build_halfangle(61).unwrap_err(),
            Error::OverflowGuard { j: 61, max: 60 }
        );
    }

    #[test]
    fn closed_form_h_agrees_with_division() {
        for j in 0..=40 {
            assert_eq!(
                closed_form_h(j),
                *build_halfangle(j).unwrap().h(),
                "j = {j}"
            );
        }
    }

    #[test]
    fn pointwise_values() {
        assert_eq!(build_halfangle(1).unwrap().eval_f(0.5), -1.0);
        assert_eq!(build_halfangle(2).unwrap().eval_g(0.75), -1.0);
        for j in 0..=25 {
            assert_eq!(build_halfangle(j).unwrap().eval_f(0.0), 1.0);
        }
    }

    #[test]
    fn trig_and_pythagorean_identities() {
        let mut rng = RandomSource::new(17, 0);
        for j in 0..=25 {
            let p = build_halfangle(j).unwrap();
            for _ in 0..100 {
                let t = rng.random_range(1e-9..std::f64::consts::PI);
                let (rc, rs) = trig_residuals(&p, t);
                assert!(rc <= 1e-9 && rs <= 1e-9, "j={j} t={t} {rc} {rs}");
                let x = rng.random_range(0.0..=1.0);
                assert!(pythagorean_residual(&p, x) <= 1e-9, "j={j} x={x}");
            }
        }
    }

    #[test]
    fn large_j_meets_relaxed_tolerance() {
        let mut rng = RandomSource::new(18, 0);
        for j in [30, 45, 60] {
            let p = build_halfangle(j).unwrap();
            for _ in 0..50 {
                let t = rng.random_range(1e-9..std::f64::consts::PI);
                let (rc, rs) = trig_residuals(&p, t);
                assert!(rc <= p.identity_tolerance() && rs <= p.identity_tolerance());
            }
        }
    }

    #[test]
    fn plain_horner_would_not_be_enough() {
        let p = build_halfangle(25).unwrap();
        assert!(max_coefficient_bits(p.f()) > 53);
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_eval(1, 0.3).unwrap(), (0.3, 1.0));
        assert_eq!(chebyshev_eval(2, 0.0).unwrap(), (-1.0, 0.0));
        let (t, u) = chebyshev_eval(3, 0.7f64.cos()).unwrap();
        assert!((t - 2.1f64.cos()).abs() <= 1e-12);
        assert!((u - 2.1f64.sin() / 0.7f64.sin()).abs() <= 1e-12);
        assert!(chebyshev_eval(3, 1.1).is_err());
        assert_eq!(chebyshev_eval(0, 0.4).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn chebyshev_exact_coefficients() {
        let p = ChebyshevPair::build(3);
        assert_eq!(p.t_coeffs(), &IntPoly::from_i64(&[0, -3, 0, 4]));
        assert_eq!(p.u_coeffs(), &IntPoly::from_i64(&[-1, 0, 4]));
        for k in 1..12 {
            let p = ChebyshevPair::build(k);
            assert_eq!(p.t_coeffs().eval_naive(1.0), 1.0);
            assert_eq!(p.u_coeffs().eval_naive(1.0), k as f64);
        }
    }

    #[test]
    fn halfangle_matches_chebyshev() {
        let mut rng = RandomSource::new(21, 0);
        for j in 0..=15u32 {
            let p = build_halfangle(j).unwrap();
            for _ in 0..100 {
                let c: f64 = rng.random_range(-1.0..=1.0);
                let (t, u) = chebyshev_eval(2 * j as i64 + 1, c).unwrap();
                let x = 1.0 - c * c;
                assert!((p.eval_g(x) - u).abs() <= 1e-9);
                assert!((p.eval_f(x) * c - t).abs() <= 1e-9);
            }
        }
    }

    proptest! {
        #[test]
        fn negative_k_flips_sine_factor(k in 1i64..40, c in -1.0f64..1.0) {
            let (t_pos, u_pos) = chebyshev_eval(k, c).unwrap();
            let (t_neg, u_neg) = chebyshev_eval(-k, c).unwrap();
            prop_assert_eq!(t_pos, t_neg);
            prop_assert_eq!(u_pos, -u_neg);
        }

        #[test]
        fn chebyshev_is_cos_multiple_angle(k in -30i64..30, t in 0.0f64..std::f64::consts::PI) {
            let (tk, uk) = chebyshev_eval(k, t.cos()).unwrap();
            prop_assert!((tk - (k as f64 * t).cos()).abs() < 1e-11);
            prop_assert!((uk * t.sin() - (k as f64 * t).sin()).abs() < 1e-11);
        }
    }
}
