//! Parsing of `--manifold` and `--map` arguments.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Manifold {
    Su3,
    Sphere(usize),
    Projective(usize),
}

impl FromStr for Manifold {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        let dim = |digits: &str, min: usize| -> Result<usize, String> {
            match digits.parse::<usize>() {
                Ok(n) if n >= min => Ok(n),
                _ => Err(format!(
                    "bad manifold {s:?}: dimension must be an integer >= {min}"
                )),
            }
        };
        if lower == "su3" {
            Ok(Manifold::Su3)
        } else if let Some(rest) = lower.strip_prefix("cp") {
            dim(rest, 1).map(Manifold::Projective)
        } else if let Some(rest) = lower.strip_prefix('s') {
            dim(rest, 1).map(Manifold::Sphere)
        } else {
            Err(format!(
                "unknown manifold {s:?} (expected su3, s<n> or cp<m>)"
            ))
        }
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Manifold::Su3 => write!(f, "su3"),
            Manifold::Sphere(n) => write!(f, "s{n}"),
            Manifold::Projective(m) => write!(f, "cp{m}"),
        }
    }
}

/// `psi:k` and `rho:k` act on SU(3), `power:k` on spheres, `fold:k` on CP^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapSpec {
    Psi(i64),
    Rho(i64),
    Power(i64),
    Fold(i64),
}

impl MapSpec {
    pub fn acts_on(self, manifold: Manifold) -> bool {
        matches!(
            (self, manifold),
            (MapSpec::Psi(_) | MapSpec::Rho(_), Manifold::Su3)
                | (MapSpec::Power(_), Manifold::Sphere(_))
                | (MapSpec::Fold(_), Manifold::Projective(_))
        )
    }
}

impl FromStr for MapSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, k) = s
            .split_once(':')
            .ok_or_else(|| format!("bad map {s:?} (expected <kind>:<k>, e.g. psi:3)"))?;
        let k: i64 = k
            .trim()
            .replace('\u{2212}', "-")
            .parse()
            .map_err(|_| format!("bad map {s:?}: {k:?} is not an integer"))?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "psi" => Ok(MapSpec::Psi(k)),
            "rho" => Ok(MapSpec::Rho(k)),
            "power" | "sphere" => Ok(MapSpec::Power(k)),
            "fold" | "cpm" => Ok(MapSpec::Fold(k)),
            other => Err(format!(
                "unknown map kind {other:?} (expected psi, rho, power or fold)"
            )),
        }
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Psi(k) => write!(f, "psi:{k}"),
            MapSpec::Rho(k) => write!(f, "rho:{k}"),
            MapSpec::Power(k) => write!(f, "power:{k}"),
            MapSpec::Fold(k) => write!(f, "fold:{k}"),
        }
    }
}

/// Inclusive range `a..b`, `a..=b` or a single value.
pub fn parse_weyl_range(s: &str) -> Result<Vec<u32>, String> {
    let bad = || format!("bad --weyl {s:?} (expected N or A..B)");
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            )
        }
        None => {
            let w: u32 = s.trim().parse().map_err(|_| bad())?;
            (w, w)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).filter(|w| w % 2 == 0).collect())
}
