//! Exact combinatorics of geodesic folding on cohomogeneity-one manifolds.
//!
//! A manifold is described by [`CohomOneData`]: the order of the Weyl group,
//! the codimensions and Euler characteristics of the two singular orbits and
//! of the principal orbit, and a few flags. Along the normal geodesic the
//! singular orbit `N₀` sits at even integers and `N₁` at odd integers; the
//! fold `ψ_k` sends `γ(t)` to `γ(kt)`.

mod catalog;
mod corollary;
mod degree;
mod lefschetz;
mod ring;
mod table;

pub use catalog::{catalog, lookup, CatalogEntry};
pub use corollary::{
    homology_sphere_chi, product_spheres_chi, realizable_su3_degree, HomologySphereChi,
    SignAssignment, SphereProductChi, Su3Realizability,
};
pub use degree::{degree_discrepancy, degree_formula, degree_oracle, degree_oracle_auto};
pub use lefschetz::{lefschetz_formula, lefschetz_oracle};
pub use ring::CohomologyRing;
pub use table::{grid_data, parity_grid, TableRow, CSV_HEADER};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Parity> {
        match s.trim() {
            "odd" => Ok(Parity::Odd),
            "even" => Ok(Parity::Even),
            other => Err(Error::param(format!(
                "parity must be odd or even, got {other:?}"
            ))),
        }
    }
}

/// Descriptor of a cohomogeneity-one action with orbit space `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomOneData {
    pub weyl_order: u32,
    pub codim0: u32,
    pub codim1: u32,
    pub chi0: i64,
    pub chi1: i64,
    /// Euler characteristic of the principal orbit.
    pub chi_gh: i64,
    /// Isotropy groups at `γ(t₀)` and `γ(t₀ + |W|/2)` coincide.
    pub isotropy_equal: bool,
    pub orientable: bool,
    /// `rank G = rank H`.
    pub rank_equal: bool,
}

impl CohomOneData {
    pub fn validate(&self) -> Result<()> {
        if self.weyl_order == 0 || self.weyl_order % 2 != 0 {
            return Err(Error::param(format!(
                "Weyl group order must be even and positive, got {}",
                self.weyl_order
            )));
        }
        if self.codim0 == 0 || self.codim1 == 0 {
            return Err(Error::param("singular orbit codimensions must be positive"));
        }
        if self.chi_gh < 0 {
            return Err(Error::param(
                "principal orbit Euler characteristic is negative",
            ));
        }
        if self.rank_equal != (self.chi_gh > 0) {
            return Err(Error::param(format!(
                "rank_equal = {} requires chi(G/H) {} 0, got {}",
                self.rank_equal,
                if self.rank_equal { ">" } else { "=" },
                self.chi_gh
            )));
        }
        Ok(())
    }

    pub fn parity0(&self) -> Parity {
        Parity::of(self.codim0 as i64)
    }

    pub fn parity1(&self) -> Parity {
        Parity::of(self.codim1 as i64)
    }

    /// `χ(M) = χ(N₀) + χ(N₁) − χ(G/H)`.
    pub fn chi_m(&self) -> i64 {
        self.chi0 + self.chi1 - self.chi_gh
    }

    pub fn fold(&self, j: i64) -> FoldParam {
        FoldParam::new(j, self.weyl_order)
    }
}

/// Fold parameter `k = j|W|/2 + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoldParam {
    pub j: i64,
    pub weyl_order: u32,
}

impl FoldParam {
    pub fn new(j: i64, weyl_order: u32) -> Self {
        FoldParam { j, weyl_order }
    }

    pub fn k(&self) -> i64 {
        self.j * (self.weyl_order as i64 / 2) + 1
    }
}

/// Even `j` always folds; odd `j` needs equal isotropy at half-period shifts.
pub fn allowed_fold_params(data: &CohomOneData, j: i64) -> bool {
    j % 2 == 0 || data.isotropy_equal
}

/// Orientation signs of the intervals `]ℓ, ℓ+1[` of the normal geodesic
/// relative to the standard orientation of `G/H × R` on `]0, 1[`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientationPattern {
    pub parity0: Parity,
    pub parity1: Parity,
}

impl OrientationPattern {
    pub fn new(parity0: Parity, parity1: Parity) -> Self {
        OrientationPattern { parity0, parity1 }
    }

    /// Crossing the integer `i` flips the sign iff the orbit there has even
    /// codimension (`N₀` at even `i`, `N₁` at odd `i`).
    fn flips_at(&self, i: i64) -> bool {
        if i.rem_euclid(2) == 0 {
            self.parity0.is_even()
        } else {
            self.parity1.is_even()
        }
    }

    pub fn sign(&self, ell: i64) -> i64 {
        let (lo, hi) = if ell >= 0 { (1, ell) } else { (ell + 1, 0) };
        let flips = (lo..=hi).filter(|&i| self.flips_at(i)).count();
        if flips % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Signs of the first `len` intervals.
    pub fn prefix(&self, len: usize) -> Vec<i64> {
        (0..len as i64).map(|l| self.sign(l)).collect()
    }
}

pub fn orientation_pattern(parity0: Parity, parity1: Parity) -> OrientationPattern {
    OrientationPattern::new(parity0, parity1)
}

/// The pattern must close up after one period `|W|` of the normal geodesic.
pub fn orientability_consistency(weyl_order: u32, parity0: Parity, parity1: Parity) -> bool {
    if weyl_order == 0 || weyl_order % 2 != 0 {
        return false;
    }
    let pattern = orientation_pattern(parity0, parity1);
    (0..weyl_order as i64).all(|l| pattern.sign(l) == pattern.sign(l + weyl_order as i64))
}
