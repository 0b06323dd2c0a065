use num_rational::Ratio;

use super::{
    allowed_fold_params, orientability_consistency, orientation_pattern, CohomOneData, Parity,
};
use crate::error::{Error, Result};

type Q = Ratio<i64>;

fn check_preconditions(data: &CohomOneData, j: i64) -> Result<()> {
    data.validate()?;
    if !data.orientable {
        return Err(Error::param("degree needs an orientable manifold"));
    }
    if !orientability_consistency(data.weyl_order, data.parity0(), data.parity1()) {
        return Err(Error::param(format!(
            "orientation pattern ({}, {}) does not close up with |W| = {}",
            data.parity0().as_str(),
            data.parity1().as_str(),
            data.weyl_order
        )));
    }
    if !allowed_fold_params(data, j) {
        return Err(Error::param(format!(
            "odd j = {j} needs equal isotropy at half-period shifts"
        )));
    }
    Ok(())
}

/// Signed count of preimages of the regular value `γ(τ)`.
///
/// The preimages in one period are `t_m = (m|W| + τ)/k ∈ ]0, |W|[`, and each
/// contributes `sgn(k)·s(⌊t_m⌋)` with `s` the orientation pattern.
pub fn degree_oracle(data: &CohomOneData, j: i64, tau: Q) -> Result<i64> {
    check_preconditions(data, j)?;
    if tau <= Q::from_integer(0) || tau >= Q::from_integer(1) {
        return Err(Error::param(format!("tau = {tau} must lie in ]0, 1[")));
    }
    let k = data.fold(j).k();
    if k == 0 {
        return Ok(0);
    }
    let w = data.weyl_order as i64;
    let pattern = orientation_pattern(data.parity0(), data.parity1());
    let width = Q::from_integer(w);
    // 0 < (m|W| + τ)/k < |W|  ⟺  m|W| + τ lies strictly between 0 and k|W|.
    let (lo, hi) = if k > 0 { (0, k * w) } else { (k * w, 0) };
    let m_lo = (Q::from_integer(lo) - tau) / width;
    let m_hi = (Q::from_integer(hi) - tau) / width;
    let mut total = 0;
    for m in m_lo.floor().to_integer()..=m_hi.ceil().to_integer() {
        let t = (Q::from_integer(m * w) + tau) / Q::from_integer(k);
        if t <= Q::from_integer(0) || t >= width {
            continue;
        }
        if t.is_integer() {
            return Err(Error::NonRegularValue(tau.to_string()));
        }
        total += pattern.sign(t.floor().to_integer());
    }
    Ok(k.signum() * total)
}

/// [`degree_oracle`] at `τ = 1/2`, retrying at `1/3` if `1/2` is critical.
pub fn degree_oracle_auto(data: &CohomOneData, j: i64) -> Result<i64> {
    match degree_oracle(data, j, Q::new(1, 2)) {
        Err(Error::NonRegularValue(_)) => degree_oracle(data, j, Q::new(1, 3)),
        other => other,
    }
}

/// Closed-form degree table, case by case as stated for the theorem.
pub fn degree_formula(data: &CohomOneData, j: i64) -> Result<i64> {
    check_preconditions(data, j)?;
    let k = data.fold(j).k();
    let w = data.weyl_order as i64;
    let both_odd = data.parity0() == Parity::Odd && data.parity1() == Parity::Odd;
    if both_odd {
        return Ok(k);
    }
    if j % 2 == 0 {
        return Ok(1);
    }
    let both_even = data.parity0() == Parity::Even && data.parity1() == Parity::Even;
    if both_even && w % 4 != 0 {
        return Ok(0);
    }
    if data.parity0() == Parity::Even && data.parity1() == Parity::Odd && w % 8 != 0 {
        return Ok(-1);
    }
    Ok(1)
}

/// `Some((formula, oracle))` when the closed-form table and the enumeration
/// disagree.
pub fn degree_discrepancy(data: &CohomOneData, j: i64) -> Result<Option<(i64, i64)>> {
    let formula = degree_formula(data, j)?;
    let oracle = degree_oracle_auto(data, j)?;
    Ok((formula != oracle).then_some((formula, oracle)))
}
