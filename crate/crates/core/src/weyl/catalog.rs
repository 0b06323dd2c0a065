use super::CohomOneData;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub data: CohomOneData,
    /// Name of the concrete numerical model, when one exists.
    pub model: Option<String>,
}

fn su3() -> CatalogEntry {
    CatalogEntry {
        name: "SU3".into(),
        data: CohomOneData {
            weyl_order: 4,
            codim0: 3,
            codim1: 3,
            chi0: 0,
            chi1: 0,
            chi_gh: 0,
            isotropy_equal: true,
            orientable: true,
            rank_equal: false,
        },
        model: Some("su3".into()),
    }
}

/// `SO(n)` acting on `S^n ⊂ R ⊕ R^n`; the poles are the singular orbits.
fn sphere(n: u32) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            got: n as usize,
            min: 2,
        });
    }
    let chi_gh = if n % 2 == 1 { 2 } else { 0 };
    Ok(CatalogEntry {
        name: format!("S{n}"),
        data: CohomOneData {
            weyl_order: 2,
            codim0: n,
            codim1: n,
            chi0: 1,
            chi1: 1,
            chi_gh,
            isotropy_equal: true,
            orientable: true,
            rank_equal: chi_gh > 0,
        },
        model: Some(format!("s{n}")),
    })
}

/// `SO(m+1)` acting on `CP^m`; `N₀ = RP^m` and `N₁` is the complex quadric.
fn projective(m: u32) -> Result<CatalogEntry> {
    if m < 1 {
        return Err(Error::InvalidDimension {
            got: m as usize,
            min: 1,
        });
    }
    let (chi0, chi1) = if m % 2 == 1 {
        (0, m as i64 + 1)
    } else {
        (1, m as i64)
    };
    Ok(CatalogEntry {
        name: format!("CP{m}"),
        data: CohomOneData {
            weyl_order: 4,
            codim0: m,
            codim1: 2,
            chi0,
            chi1,
            chi_gh: 0,
            isotropy_equal: true,
            orientable: true,
            rank_equal: false,
        },
        model: Some(format!("cp{m}")),
    })
}

fn seven_manifold(name: &str, chi: i64) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        data: CohomOneData {
            weyl_order: 2,
            codim0: 3,
            codim1: 3,
            chi0: chi / 2,
            chi1: chi / 2,
            chi_gh: chi,
            isotropy_equal: true,
            orientable: true,
            rank_equal: true,
        },
        model: None,
    }
}

/// Named examples: SU(3) under `(A, B) ↦ ABAᵀ`, low-dimensional spheres and
/// projective spaces, and the two seven-manifolds with principal orbits of
/// Euler characteristic 4 and 6.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![su3()];
    out.extend((2..=7).map(|n| sphere(n).expect("n >= 2")));
    out.extend((1..=4).map(|m| projective(m).expect("m >= 1")));
    out.push(seven_manifold("M7_1", 4));
    out.push(seven_manifold("M7_2", 6));
    out
}

/// Accepts `SU3`, `S<n>` (n ≥ 2), `CP<m>` (m ≥ 1), `M7_1`, `M7_2`,
/// case-insensitively.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let upper = name.trim().to_ascii_uppercase();
    let number = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| Error::param(format!("unknown catalog entry {name:?}")))
    };
    match upper.as_str() {
        "SU3" => Ok(su3()),
        "M7_1" => Ok(seven_manifold("M7_1", 4)),
        "M7_2" => Ok(seven_manifold("M7_2", 6)),
        s if s.starts_with("CP") => projective(number(&s[2..])?),
        s if s.starts_with('S') => sphere(number(&s[1..])?),
        _ => Err(Error::param(format!("unknown catalog entry {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(lookup("M7_2").unwrap().data.chi_gh, 6);
        assert!(lookup("SU3").unwrap().data.isotropy_equal);
        let s3 = lookup("S3").unwrap().data;
        assert_eq!((s3.codim0, s3.codim1, s3.weyl_order), (3, 3, 2));
        assert_eq!(lookup("cp3").unwrap().data.chi_m(), 4);
        assert_eq!(lookup("CP2").unwrap().data.chi_m(), 3);
        assert!(lookup("S1").is_err());
        assert!(lookup("CPx").is_err());
        assert!(lookup("T2").is_err());
    }

    #[test]
    fn entries_are_valid() {
        for e in catalog() {
            e.data.validate().unwrap();
            if let Some(m) = &e.model {
                assert_eq!(m, &e.name.to_ascii_lowercase());
            }
        }
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(lookup("SU3").unwrap().data.chi_m(), 0);
        assert_eq!(lookup("S2").unwrap().data.chi_m(), 2);
        assert_eq!(lookup("S3").unwrap().data.chi_m(), 0);
        assert_eq!(lookup("M7_1").unwrap().data.chi_m(), 0);
    }
}
