use crate::error::{Error, Result};

/// Rational cohomology ring together with the induced map on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohomologyRing {
    /// Exterior algebra on odd-degree generators `x_i ↦ c_i x_i`.
    Exterior {
        degrees: Vec<u32>,
        coefficients: Vec<i64>,
    },
    /// `Q[x]/(x^{m+1})` with `x ↦ d·x`.
    Truncated {
        generator_degree: u32,
        truncation: u32,
        coefficient: i64,
    },
    /// Cohomology of `S^{l₁} × … × S^{l_m}`, `l₁ < … < l_m`.
    SphereProduct {
        degrees: Vec<u32>,
        coefficients: Vec<i64>,
    },
}

impl CohomologyRing {
    pub fn exterior(degrees: Vec<u32>, coefficients: Vec<i64>) -> Result<Self> {
        if degrees.len() != coefficients.len() {
            return Err(Error::param("one coefficient per generator"));
        }
        if let Some(d) = degrees.iter().find(|&&d| d % 2 == 0) {
            return Err(Error::param(format!(
                "exterior generator in even degree {d}"
            )));
        }
        Ok(CohomologyRing::Exterior {
            degrees,
            coefficients,
        })
    }

    pub fn truncated(generator_degree: u32, truncation: u32, coefficient: i64) -> Result<Self> {
        if generator_degree == 0 || generator_degree % 2 != 0 {
            return Err(Error::param(
                "truncated polynomial generator must have positive even degree",
            ));
        }
        Ok(CohomologyRing::Truncated {
            generator_degree,
            truncation,
            coefficient,
        })
    }

    pub fn sphere_product(degrees: Vec<u32>, coefficients: Vec<i64>) -> Result<Self> {
        if degrees.len() != coefficients.len() {
            return Err(Error::param("one coefficient per sphere"));
        }
        if degrees.is_empty() || degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param(
                "sphere degrees must be positive and strictly increasing",
            ));
        }
        Ok(CohomologyRing::SphereProduct {
            degrees,
            coefficients,
        })
    }

    /// Multiplier on the top class.
    pub fn degree(&self) -> i64 {
        match self {
            CohomologyRing::Exterior { coefficients, .. }
            | CohomologyRing::SphereProduct { coefficients, .. } => coefficients.iter().product(),
            CohomologyRing::Truncated {
                truncation,
                coefficient,
                ..
            } => coefficient.pow(*truncation),
        }
    }

    /// Alternating trace of the induced map.
    pub fn lefschetz(&self) -> i64 {
        match self {
            CohomologyRing::Exterior {
                degrees,
                coefficients,
            }
            | CohomologyRing::SphereProduct {
                degrees,
                coefficients,
            } => degrees
                .iter()
                .zip(coefficients)
                .map(|(&l, &c)| 1 + if l % 2 == 0 { c } else { -c })
                .product(),
            CohomologyRing::Truncated {
                generator_degree,
                truncation,
                coefficient,
            } => {
                let step = if generator_degree % 2 == 0 {
                    *coefficient
                } else {
                    -coefficient
                };
                (0..=*truncation).map(|i| step.pow(i)).sum()
            }
        }
    }
}
