use super::FoldParam;
use crate::error::{Error, Result};

/// Euler characteristic of the principal orbit forced on a rational
/// homology sphere with both singular codimensions odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomologySphereChi {
    Derived(i64),
    Contradiction { derived: i64, supplied: i64 },
}

/// On an odd-dimensional rational homology sphere `L = 1 − deg`. With
/// `deg = k` and `L = −jχ/2` this forces `χ(G/H) = |W|`; the value is
/// solved from `j = 2, 4, 6` and must agree across them.
pub fn homology_sphere_chi(weyl_order: u32, supplied: Option<i64>) -> Result<HomologySphereChi> {
    if weyl_order == 0 || weyl_order % 2 != 0 {
        return Err(Error::param(format!(
            "|W| must be even and positive, got {weyl_order}"
        )));
    }
    let mut derived = None;
    for j in [2i64, 4, 6] {
        let k = FoldParam::new(j, weyl_order).k();
        let lefschetz = 1 - k;
        // −jχ/2 = L  ⇒  χ = −2L/j.
        if (2 * lefschetz) % j != 0 {
            return Err(Error::Consistency(format!("no integral chi at j = {j}")));
        }
        let chi = -2 * lefschetz / j;
        match derived {
            None => derived = Some(chi),
            Some(prev) if prev != chi => {
                return Err(Error::Consistency(format!(
                    "chi {prev} at j = 2 but {chi} at j = {j}"
                )))
            }
            Some(_) => {}
        }
    }
    let derived = derived.expect("three values of j");
    Ok(match supplied {
        Some(s) if s != derived => HomologySphereChi::Contradiction {
            derived,
            supplied: s,
        },
        _ => HomologySphereChi::Derived(derived),
    })
}

/// Position of the generator carrying the factor `k` and the signs `σ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignAssignment {
    pub position: usize,
    pub signs: Vec<i64>,
}

/// `χ(G/H) = 2^{m−1}|W|` with the sign assignments that certify it. An
/// empty certificate means no rank-equal action has these data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereProductChi {
    pub chi: i64,
    pub assignments: Vec<SignAssignment>,
}

impl SphereProductChi {
    pub fn is_feasible(&self) -> bool {
        !self.assignments.is_empty()
    }
}

fn alternating_trace(degrees: &[u32], position: usize, signs: &[i64], k: i64) -> i64 {
    degrees
        .iter()
        .zip(signs)
        .enumerate()
        .map(|(i, (&l, &s))| {
            let c = if i == position { k * s } else { s };
            1 + if l % 2 == 0 { c } else { -c }
        })
        .product()
}

/// Euler characteristic of the principal orbit of a rank-equal action on a
/// rational `S^{l₁} × … × S^{l_m}`.
///
/// For every choice of position and signs (with an even number of `−1`),
/// the alternating trace must equal `−jχ/2 = −(k−1)χ/|W|` along the fold
/// progression with `χ > 0`. Every surviving assignment must force
/// `χ = 2^{m−1}|W|`; survivors exist iff `Σ l_i` is odd.
pub fn product_spheres_chi(degrees: &[u32], weyl_order: u32) -> Result<SphereProductChi> {
    if degrees.is_empty() || degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::param(
            "sphere degrees must be positive and strictly increasing",
        ));
    }
    if degrees.len() > 20 {
        return Err(Error::param("at most 20 sphere factors"));
    }
    if weyl_order == 0 || weyl_order % 2 != 0 {
        return Err(Error::param(format!(
            "|W| must be even and positive, got {weyl_order}"
        )));
    }
    let m = degrees.len();
    let w = weyl_order as i64;
    let ks: Vec<i64> = [4i64, 6]
        .iter()
        .map(|&j| FoldParam::new(j, weyl_order).k())
        .collect();
    let forced = (1i64 << (m - 1)) * w;
    let mut assignments = Vec::new();
    for position in 0..m {
        for mask in 0u32..(1 << m) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let signs: Vec<i64> = (0..m)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let chis: Vec<Option<i64>> = ks
                .iter()
                .map(|&k| {
                    let num = -alternating_trace(degrees, position, &signs, k) * w;
                    (num % (k - 1) == 0).then(|| num / (k - 1))
                })
                .collect();
            let Some(chi) = chis[0] else { continue };
            if chi <= 0 || chis.iter().any(|&c| c != Some(chi)) {
                continue;
            }
            if chi != forced {
                return Err(Error::Consistency(format!(
                    "assignment at position {position} forces chi = {chi}, not {forced}"
                )));
            }
            assignments.push(SignAssignment { position, signs });
        }
    }
    Ok(SphereProductChi {
        chi: forced,
        assignments,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su3Realizability {
    Yes,
    No,
    /// Degree zero is realized by constant maps rather than a fold.
    ZeroCaveat,
}

/// Selfmaps of SU(3) realize exactly the degrees with even 2-adic valuation.
pub fn realizable_su3_degree(d: i64) -> Su3Realizability {
    if d == 0 {
        Su3Realizability::ZeroCaveat
    } else if d.trailing_zeros() % 2 == 0 {
        Su3Realizability::Yes
    } else {
        Su3Realizability::No
    }
}
