use super::{
    allowed_fold_params, degree_formula, degree_oracle_auto, lefschetz_formula, lefschetz_oracle,
    orientability_consistency, CohomOneData, Parity,
};
use crate::error::Result;

pub const CSV_HEADER: &str =
    "example,|W|,codim0,codim1,j,k,deg_formula,deg_oracle,deg_numeric,L_formula,L_oracle,flags";

/// Parity pairs whose orientation pattern closes up over one period.
pub fn parity_grid(weyl_order: u32) -> Vec<(Parity, Parity)> {
    use Parity::*;
    [(Odd, Odd), (Odd, Even), (Even, Odd), (Even, Even)]
        .into_iter()
        .filter(|&(a, b)| orientability_consistency(weyl_order, a, b))
        .collect()
}

/// Representative data for a parity pair: codimensions 3 (odd) or 2 (even).
/// Both odd is modeled rank-equal with `χ(N₀) = χ(N₁) = 1`, `χ(G/H) = 2`;
/// otherwise `χ(G/H) = 0` and a singular orbit has `χ = 1` exactly when its
/// codimension is even.
pub fn grid_data(weyl_order: u32, parity0: Parity, parity1: Parity) -> CohomOneData {
    let codim = |p: Parity| if p.is_even() { 2 } else { 3 };
    let both_odd = !parity0.is_even() && !parity1.is_even();
    let chi = |p: Parity| if both_odd || p.is_even() { 1 } else { 0 };
    CohomOneData {
        weyl_order,
        codim0: codim(parity0),
        codim1: codim(parity1),
        chi0: chi(parity0),
        chi1: chi(parity1),
        chi_gh: if both_odd { 2 } else { 0 },
        isotropy_equal: true,
        orientable: true,
        rank_equal: both_odd,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub example: String,
    pub data: CohomOneData,
    pub j: i64,
    pub k: i64,
    pub deg_formula: Option<i64>,
    pub deg_oracle: Option<i64>,
    pub deg_numeric: Option<f64>,
    pub l_formula: Option<i64>,
    pub l_oracle: Option<i64>,
    pub flags: Vec<String>,
}

impl TableRow {
    pub fn compute(example: &str, data: &CohomOneData, j: i64) -> Result<TableRow> {
        data.validate()?;
        let mut row = TableRow {
            example: example.to_string(),
            data: *data,
            j,
            k: data.fold(j).k(),
            deg_formula: None,
            deg_oracle: None,
            deg_numeric: None,
            l_formula: None,
            l_oracle: None,
            flags: Vec::new(),
        };
        if !allowed_fold_params(data, j) {
            row.flags.push("not-allowed".into());
            return Ok(row);
        }
        row.l_formula = Some(lefschetz_formula(data, j)?);
        row.l_oracle = Some(lefschetz_oracle(data, j)?);
        if orientability_consistency(data.weyl_order, data.parity0(), data.parity1()) {
            row.deg_formula = Some(degree_formula(data, j)?);
            row.deg_oracle = Some(degree_oracle_auto(data, j)?);
        } else {
            row.flags.push("pattern-not-periodic".into());
        }
        if row.deg_formula != row.deg_oracle {
            row.flags.push("degree-discrepancy".into());
        }
        if row.l_formula != row.l_oracle {
            row.flags.push("lefschetz-discrepancy".into());
        }
        Ok(row)
    }

    /// Record a Monte-Carlo estimate and flag it if it misses the oracle.
    pub fn with_numeric(mut self, mean: f64, tolerance: f64) -> TableRow {
        self.deg_numeric = Some(mean);
        if let Some(o) = self.deg_oracle {
            if (mean - o as f64).abs() > tolerance {
                self.flags.push("numeric-mismatch".into());
            }
        }
        self
    }

    pub fn has_discrepancy(&self) -> bool {
        self.flags.iter().any(|f| f.ends_with("discrepancy"))
    }

    pub fn to_csv(&self) -> String {
        let int = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
        let num = self
            .deg_numeric
            .map(|x| format!("{x:.16e}"))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.example,
            self.data.weyl_order,
            self.data.codim0,
            self.data.codim1,
            self.j,
            self.k,
            int(self.deg_formula),
            int(self.deg_oracle),
            num,
            int(self.l_formula),
            int(self.l_oracle),
            self.flags.join(";")
        )
    }
}
