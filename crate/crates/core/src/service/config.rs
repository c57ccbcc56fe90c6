use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

/// Service configuration, read from TOML:
///
/// ```toml
/// listen = "127.0.0.1:8080"
/// cors_origins = ["http://localhost:5173"]
/// default_model = "models/maven.json"   # optional
/// static_dir = "webapp/dist"            # optional
///
/// [[datasets]]
/// snapshot = "snapshots/maven-train.json"
/// name = "maven"                        # optional, defaults to the corpus name
/// model = "models/maven.json"           # optional
/// ```
///
/// Relative paths resolve against the config file's directory.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ServiceConfig {
    #[serde(default = "default_listen")]
    pub listen: String,
    #[serde(default)]
    pub cors_origins: Vec<String>,
    #[serde(default)]
    pub default_model: Option<PathBuf>,
    #[serde(default)]
    pub static_dir: Option<PathBuf>,
    #[serde(default)]
    pub datasets: Vec<DatasetConfig>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DatasetConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub snapshot: PathBuf,
    #[serde(default)]
    pub model: Option<PathBuf>,
}

fn default_listen() -> String {
    "127.0.0.1:8080".to_owned()
}

impl ServiceConfig {
    pub fn from_toml(s: &str) -> Result<ServiceConfig> {
        toml::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ServiceConfig> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::from_toml(&text)?;
        if let Some(base) = path.parent() {
            config.resolve_relative(base);
        }
        Ok(config)
    }

    fn resolve_relative(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Some(p) = self.default_model.as_mut() {
            fix(p);
        }
        if let Some(p) = self.static_dir.as_mut() {
            fix(p);
        }
        for d in &mut self.datasets {
            fix(&mut d.snapshot);
            if let Some(p) = d.model.as_mut() {
                fix(p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_resolves_paths() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("edx.toml");
        fs::write(
            &path,
            r#"
cors_origins = ["http://localhost:5173"]
default_model = "m.json"

[[datasets]]
snapshot = "s.json"
name = "maven"
"#,
        )
        .unwrap();
        let c = ServiceConfig::load(&path).unwrap();
        assert_eq!(c.listen, "127.0.0.1:8080");
        assert_eq!(c.datasets[0].snapshot, dir.path().join("s.json"));
        assert_eq!(c.default_model.as_deref(), Some(dir.path().join("m.json").as_path()));
        assert_eq!(c.datasets[0].name.as_deref(), Some("maven"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(ServiceConfig::from_toml("lisen = 'x'"), Err(Error::Config(_))));
    }
}
