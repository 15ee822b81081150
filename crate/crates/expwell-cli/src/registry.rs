//! Molecule registry: built-in parameter sets plus optional JSON overrides.
//!
//! The file format is one JSON object mapping molecule name to
//! `{"D_eV": .., "r0_angstrom": .., "alpha": .., "E0_eV": .., "mass_amu": ..?}`.
//! File entries override built-ins of the same name; everything else stays.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use expwell::MoleculeParams;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegistryEntry {
    #[serde(rename = "D_eV")]
    d_ev: f64,
    r0_angstrom: f64,
    alpha: f64,
    #[serde(rename = "E0_eV")]
    e0_ev: f64,
    mass_amu: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct MoleculeRegistry {
    entries: BTreeMap<String, MoleculeParams>,
    /// "built-in" or the override file path.
    pub source: String,
}

impl MoleculeRegistry {
    pub fn built_in() -> Self {
        let mut entries = BTreeMap::new();
        for mol in [MoleculeParams::h2(), MoleculeParams::lih()] {
            entries.insert(mol.name.clone(), mol);
        }
        MoleculeRegistry { entries, source: "built-in".to_string() }
    }

    /// Built-ins with the file's entries layered on top. Every file entry
    /// is validated; a bad one rejects the whole registry.
    pub fn with_overrides(path: &Path) -> Result<Self, String> {
        let mut registry = MoleculeRegistry::built_in();
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read registry {}: {e}", path.display()))?;
        let parsed: BTreeMap<String, RegistryEntry> = serde_json::from_str(&text)
            .map_err(|e| format!("registry {} is not valid: {e}", path.display()))?;
        for (name, entry) in parsed {
            let mol = MoleculeParams {
                name: name.clone(),
                d: entry.d_ev,
                r0: entry.r0_angstrom,
                alpha: entry.alpha,
                e0: entry.e0_ev,
                mass_amu: entry.mass_amu,
            };
            mol.validate()
                .map_err(|e| format!("registry entry '{name}': {e}"))?;
            registry.entries.insert(name, mol);
        }
        registry.source = path.display().to_string();
        Ok(registry)
    }

    pub fn resolve(&self, name: &str) -> Option<&MoleculeParams> {
        self.entries.get(name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn built_in_has_exactly_the_two_reference_molecules() {
        let reg = MoleculeRegistry::built_in();
        assert_eq!(reg.names(), vec!["H2", "LiH"]);
        assert_eq!(reg.resolve("H2").unwrap().d, 4.7446);
        assert_eq!(reg.resolve("LiH").unwrap().r0, 1.5956);
        assert!(reg.resolve("h2").is_none());
    }

    #[test]
    fn file_entries_override_by_name_and_add_new() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(
            file,
            r#"{{
              "H2": {{"D_eV": 4.7446, "r0_angstrom": 0.7416, "alpha": 1.9, "E0_eV": 1.508343932e-2}},
              "CO": {{"D_eV": 11.2256, "r0_angstrom": 1.1283, "alpha": 2.59441, "E0_eV": 2.58872e-4, "mass_amu": 6.8562}}
            }}"#
        )
        .unwrap();
        let reg = MoleculeRegistry::with_overrides(file.path()).unwrap();
        assert_eq!(reg.names(), vec!["CO", "H2", "LiH"]);
        assert_eq!(reg.resolve("H2").unwrap().alpha, 1.9);
        assert_eq!(reg.resolve("H2").unwrap().mass_amu, None);
        assert_eq!(reg.resolve("LiH").unwrap().alpha, 1.7998368);
        assert_eq!(reg.resolve("CO").unwrap().mass_amu, Some(6.8562));
    }

    #[test]
    fn invalid_entries_are_rejected() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(
            file,
            r#"{{"X2": {{"D_eV": -1.0, "r0_angstrom": 1.0, "alpha": 1.0, "E0_eV": 1e-3}}}}"#
        )
        .unwrap();
        let err = MoleculeRegistry::with_overrides(file.path()).unwrap_err();
        assert!(err.contains("X2"), "{err}");

        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, r#"{{"X2": {{"D_eV": 1.0, "typo_field": 2.0}}}}"#).unwrap();
        assert!(MoleculeRegistry::with_overrides(file.path()).is_err());

        assert!(MoleculeRegistry::with_overrides(Path::new("/nonexistent.json")).is_err());
    }
}
