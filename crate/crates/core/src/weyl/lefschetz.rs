use num_rational::Ratio;

use super::{allowed_fold_params, CohomOneData};
use crate::error::{Error, Result};

type Q = Ratio<i64>;

/// Sum of fixed-point indices after perturbing by a generic group element.
///
/// Orbits through `γ(t)` with `γ(kt) = γ(t)` are fixed pointwise and each
/// contributes `(−sgn j)^codim · χ(orbit)`. Parameters are folded to the
/// orbit space `[0, 1]` via `t ↦ 2n ± t`.
pub fn lefschetz_oracle(data: &CohomOneData, j: i64) -> Result<i64> {
    data.validate()?;
    if !allowed_fold_params(data, j) {
        return Err(Error::param(format!(
            "odd j = {j} needs equal isotropy at half-period shifts"
        )));
    }
    if j == 0 {
        return Ok(data.chi_m());
    }
    let w = data.weyl_order as i64;
    let k = data.fold(j).k();
    // (k − 1)t ∈ |W|Z with t ∈ [0, |W|[: t = i|W|/(k − 1), i = 0..|k − 1|.
    let steps = (k - 1).abs();
    let mut reps: Vec<Q> = (0..steps)
        .map(|i| {
            let t = Q::new(i * w, steps);
            let r = t - Q::from_integer(2) * (t / 2).floor();
            if r > Q::from_integer(1) {
                Q::from_integer(2) - r
            } else {
                r
            }
        })
        .collect();
    reps.sort();
    reps.dedup();
    let orient = -j.signum();
    let contribution = |codim: u32, chi: i64| orient.pow(codim) * chi;
    Ok(reps
        .iter()
        .map(|&t| {
            if t == Q::from_integer(0) {
                contribution(data.codim0, data.chi0)
            } else if t == Q::from_integer(1) {
                contribution(data.codim1, data.chi1)
            } else {
                contribution(1, data.chi_gh)
            }
        })
        .sum())
}

/// Closed-form Lefschetz table.
pub fn lefschetz_formula(data: &CohomOneData, j: i64) -> Result<i64> {
    data.validate()?;
    if !allowed_fold_params(data, j) {
        return Err(Error::param(format!(
            "odd j = {j} needs equal isotropy at half-period shifts"
        )));
    }
    let both_odd = !data.parity0().is_even() && !data.parity1().is_even();
    let half_term = -j * data.chi_gh / 2;
    Ok(if j % 2 == 0 {
        if both_odd {
            half_term
        } else {
            data.chi_m()
        }
    } else if data.rank_equal {
        half_term
    } else {
        data.chi0
    })
}
