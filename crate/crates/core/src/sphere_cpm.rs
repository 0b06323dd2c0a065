//! k-powers of spheres and geodesic folding on CP^m.
//!
//! On `S^n ⊂ R × R^n` the k-power sends `(cos t, v sin t)` to
//! `(cos kt, v sin kt)`; written with Chebyshev polynomials it is polynomial
//! in the coordinates and smooth at both poles.
//!
//! On CP^m with the real action of SO(m+1) the normal geodesic is
//! `[cos t : i sin t : 0 : … : 0]`. For a unit representative `z` the
//! bilinear square `ζ = zᵀz` has `|ζ| = cos 2t`, and after the phase
//! normalization `z' = e^{-i arg(ζ)/2} z = u + iv` the real and imaginary
//! parts are orthogonal with `t = atan2(|v|, |u|) ∈ [0, π/4]`. Folding sends
//! `cos t·û + i sin t·v̂` to `cos kt·û + i sin kt·v̂`.

use crate::error::{Error, Result};
use crate::halfangle::{build_halfangle, HalfAnglePolys};
use crate::linalg::{Complex64, ComplexVector, RealVector};
use crate::su3::OddFoldParam;

/// Below this `|ζ|` a point is treated as lying on the orbit at `t = π/4`.
pub const ZETA_THRESHOLD: f64 = 1e-8;
/// Below this `|v|` a point is treated as real (`t = 0`).
pub const IMAG_THRESHOLD: f64 = 1e-12;

const SPHERE_TOL: f64 = 1e-12;
const OUTPUT_TOL: f64 = 1e-10;

/// `(T_k(p₀), U_{k−1}(p₀)·p⃗)`.
pub fn sphere_power(k: i64, p: &RealVector) -> Result<RealVector> {
    check_unit_real(p)?;
    let c = p[0].clamp(-1.0, 1.0);
    let (t, u) = crate::halfangle::chebyshev_eval(k, c)?;
    let mut out = p * u;
    out[0] = t;
    let defect = (out.norm() - 1.0).abs();
    if defect > OUTPUT_TOL {
        return Err(Error::Consistency(format!(
            "sphere power output off the sphere by {defect:.3e}"
        )));
    }
    Ok(out)
}

fn check_unit_real(p: &RealVector) -> Result<()> {
    if p.len() < 2 {
        return Err(Error::InvalidDimension {
            got: p.len().saturating_sub(1),
            min: 1,
        });
    }
    let norm = p.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > SPHERE_TOL {
        return Err(Error::domain(format!("sphere point has norm {norm}")));
    }
    Ok(())
}

fn check_unit_complex(z: &ComplexVector) -> Result<()> {
    if z.len() < 2 {
        return Err(Error::InvalidDimension {
            got: z.len().saturating_sub(1),
            min: 1,
        });
    }
    let norm = z.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > SPHERE_TOL {
        return Err(Error::domain(format!(
            "projective representative has norm {norm}"
        )));
    }
    Ok(())
}

/// Folding map of CP^m for one odd `k`, polynomials prepared once.
#[derive(Debug, Clone)]
pub struct CpmFold {
    param: OddFoldParam,
    polys: HalfAnglePolys,
}

impl CpmFold {
    pub fn new(k: i64) -> Result<Self> {
        let param = OddFoldParam::new(k)?;
        Ok(CpmFold {
            param,
            polys: build_halfangle(param.m())?,
        })
    }

    pub fn k(&self) -> i64 {
        self.param.k()
    }

    pub fn apply(&self, z: &ComplexVector) -> Result<ComplexVector> {
        check_unit_complex(z)?;
        let zeta = z.iter().map(|a| a * a).sum::<Complex64>();
        let r = zeta.norm();
        if r < ZETA_THRESHOLD {
            // t = π/4: k ≡ 1 (mod 4) fixes the point, k ≡ 3 conjugates it.
            return Ok(if self.param.k().rem_euclid(4) == 1 {
                z.clone()
            } else {
                z.map(|a| a.conj())
            });
        }
        // |v|² = (1 − |ζ|)/2 for a unit representative.
        let v_norm = ((1.0 - r).max(0.0) * 0.5).sqrt();
        if v_norm < IMAG_THRESHOLD {
            return Ok(z.clone());
        }
        // With f = cos kt / cos t and g = sin kt / sin t:
        //   cos kt·û + i sin kt·v̂ = ½(f + g) z' + ½(f − g) conj(z'),
        // and e^{i arg ζ / 2} times that is ½(f + g) z + ½(f − g)(ζ/|ζ|) conj(z).
        let x = (1.0 - r) * 0.5;
        let f = self.polys.eval_f(x);
        let g = self.polys.eval_g(x) * self.param.sign() as f64;
        let a = 0.5 * (f + g);
        let b = zeta * (0.5 * (f - g) / r);
        let w = ComplexVector::from_fn(z.len(), |i, _| z[i] * a + b * z[i].conj());
        let norm = w.norm();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::Consistency(format!(
                "fold output has norm {norm} before normalization"
            )));
        }
        Ok(w.unscale(norm))
    }
}

/// One-shot folding map.
pub fn cpm_fold(k: i64, z: &ComplexVector) -> Result<ComplexVector> {
    CpmFold::new(k)?.apply(z)
}

/// Reference implementation that follows the slice construction literally:
/// phase-normalize, split into orthogonal real and imaginary parts, rescale
/// the angle. Slower and singular near `|v| → 0`; used as a test oracle.
pub fn cpm_fold_via_slice(k: i64, z: &ComplexVector) -> Result<ComplexVector> {
    let param = OddFoldParam::new(k)?;
    check_unit_complex(z)?;
    let zeta = z.iter().map(|a| a * a).sum::<Complex64>();
    if zeta.norm() < ZETA_THRESHOLD {
        return Ok(if param.k().rem_euclid(4) == 1 {
            z.clone()
        } else {
            z.map(|a| a.conj())
        });
    }
    let phase = Complex64::from_polar(1.0, -zeta.arg() / 2.0);
    let zp = z * phase;
    let u = zp.map(|a| a.re);
    let v = zp.map(|a| a.im);
    if v.norm() < IMAG_THRESHOLD {
        return Ok(z.clone());
    }
    let t = v.norm().atan2(u.norm());
    let kt = param.k() as f64 * t;
    let uh = &u / u.norm();
    let vh = &v / v.norm();
    Ok(ComplexVector::from_fn(z.len(), |i, _| {
        Complex64::new(kt.cos() * uh[i], kt.sin() * vh[i])
    }))
}

/// `min_α ‖a − e^{iα} b‖` for unit vectors.
pub fn projective_distance(a: &ComplexVector, b: &ComplexVector) -> f64 {
    let inner = b.dotc(a);
    let phase = if inner.norm() > 0.0 {
        inner / inner.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    (a - b * phase).norm()
}

/// Representative of the geodesic point `[cos t : i sin t : 0 : …]`.
pub fn cpm_geodesic(m: usize, t: f64) -> ComplexVector {
    let mut z = ComplexVector::zeros(m + 1);
    z[0] = Complex64::new(t.cos(), 0.0);
    z[1] = Complex64::new(0.0, t.sin());
    z
}
