//! Optional TOML file of defaults. Command-line flags take precedence.

use std::path::Path;

use serde::Deserialize;

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub step: Option<f64>,
    pub workers: Option<usize>,
    pub reproducible: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("config {}: {e}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c: FileConfig = toml::from_str("seed = 7\nstep = 5e-5\nreproducible = true").unwrap();
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.step, Some(5e-5));
        assert_eq!(c.samples, None);
        assert!(toml::from_str::<FileConfig>("sed = 7").is_err());
    }
}
