//! Experiment configuration schema, the catalog of runnable identifiers,
//! and per-identifier defaults.

use serde::{Deserialize, Serialize};

/// Deterministic input field built on the run's grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    /// e^{−π·rate·x²}
    Gaussian { rate: f64 },
    /// Smooth compactly supported bump of the given support radius.
    Bump { radius: f64 },
    /// Bump of the given radius carrying the quadratic phase e^{−πi·rate·x²}.
    Chirp { radius: f64, rate: f64 },
    /// Seeded random field band-limited to the given spectrum fraction.
    Random { seed: u64, fraction: f64 },
    /// The input matched to the `chirped` symbol with the same parameters.
    Matched { radius: f64, rate: f64 },
}

/// Deterministic operator symbol built on the run's phase-space axes.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "kebab-case")]
pub enum SymbolSpec {
    /// Bump in x tensored with a chirped bump in ξ.
    Chirped { radius: f64, rate: f64 },
    /// Seeded complex Gaussian field over phase space.
    Random { seed: u64 },
    /// Symbol of f ↦ h1 · (h2 ∗ f); `first` samples h1 on x, `second`
    /// samples ĥ2 on ξ.
    MultiplyConvolve { first: Box<FieldSpec>, second: Box<FieldSpec> },
}

/// One experiment: a catalog identifier plus optional overrides. Unknown
/// keys are rejected. Exponents are strings ("2", "4/3", "1.5", "inf").
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_extent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field2: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolSpec>,
}

impl ExperimentConfig {
    /// Overlay: explicit values win, the base fills the rest.
    pub fn merged_over(&self, base: &ExperimentConfig) -> ExperimentConfig {
        ExperimentConfig {
            id: self.id.clone(),
            grid_n: self.grid_n.or(base.grid_n),
            grid_extent: self.grid_extent.or(base.grid_extent),
            seed: self.seed.or(base.seed),
            window_rate: self.window_rate.or(base.window_rate),
            radius: self.radius.or(base.radius),
            lambdas: self.lambdas.clone().or_else(|| base.lambdas.clone()),
            pairs: self.pairs.clone().or_else(|| base.pairs.clone()),
            instances: self.instances.or(base.instances),
            trials: self.trials.or(base.trials),
            tolerance: self.tolerance.or(base.tolerance),
            exponents: self.exponents.clone().or_else(|| base.exponents.clone()),
            field: self.field.clone().or_else(|| base.field.clone()),
            field2: self.field2.clone().or_else(|| base.field2.clone()),
            symbol: self.symbol.clone().or_else(|| base.symbol.clone()),
        }
    }
}

/// One runnable catalog entry.
pub struct CatalogEntry {
    pub id: &'static str,
    pub summary: &'static str,
}

/// Every runnable identifier, in catalog order.
pub fn catalog() -> Vec<CatalogEntry> {
    let e = |id, summary| CatalogEntry { id, summary };
    vec![
        e("verify:transforms", "Fourier/symplectic round trips, unitarity, and index maps"),
        e("verify:stft-shear", "sheared two-axis transform factorizes into pointwise products"),
        e("verify:rihaczek-window", "cross-symbol transform reduces to twisted pointwise products"),
        e("verify:duality", "operator pairing equals the symbol/cross-symbol pairing"),
        e("verify:operator-identities", "operator calculus identities and exact norm splits"),
        e("verify:compact-support", "4-exponent symbol norm vs its transform-side mixed norm"),
        e("verify:embedding-below", "reordered norm dominates when the shift exponent is small"),
        e("verify:embedding-above", "plain norm dominates when the shift exponent is large"),
        e("verify:embedding-monotone", "window change moves the reordered norm by a bounded factor"),
        e("sweep:dilation", "concentrating Gaussian family: norm scaling exponents"),
        e("sweep:inverse-dilation", "spreading Gaussian family: norm scaling exponents"),
        e("sweep:chirp", "chirped bump family: norm scaling exponents"),
        e("sweep:boundedness", "operator/denominator ratios under grid refinement"),
        e("necessity:p4", "ratio growth when p4 exceeds the dual of p1"),
        e("necessity:q4-q1", "ratio growth when q4 exceeds the dual of q1"),
        e("necessity:q4-q2", "ratio growth when q4 exceeds q2"),
        e("necessity:p4-p2", "ratio growth when p4 exceeds p2"),
        e("necessity:p-sum", "ratio growth when the p-side sum condition fails"),
        e("necessity:q-sum", "ratio growth when the q-side sum condition fails"),
        e("compute:norm", "modulation norm of a configured field"),
        e("compute:stft", "full short-time transform of a configured field"),
        e("compute:apply", "apply a configured symbol's operator to a field"),
        e("compute:region", "boundary vertices of the admissible final-exponent region"),
    ]
}

fn strs(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The fully resolved default configuration for an identifier, or `None`
/// when the identifier is not in the catalog.
pub fn default_config(id: &str) -> Option<ExperimentConfig> {
    let base = ExperimentConfig { id: id.to_string(), ..Default::default() };
    let five = vec![1.0, 2.0, 4.0, 8.0, 16.0];
    let sweep_pairs = Some(vec![
        ["2".to_string(), "4".to_string()],
        ["1".to_string(), "inf".to_string()],
        ["4".to_string(), "4/3".to_string()],
    ]);
    Some(match id {
        "verify:transforms" => ExperimentConfig {
            grid_n: Some(64),
            grid_extent: Some(8.0),
            seed: Some(7),
            ..base
        },
        "verify:stft-shear" | "verify:rihaczek-window" => ExperimentConfig {
            grid_n: Some(32),
            grid_extent: Some(8.0),
            window_rate: Some(0.5),
            field: Some(FieldSpec::Gaussian { rate: 1.0 }),
            field2: Some(FieldSpec::Gaussian { rate: 2.0 }),
            ..base
        },
        "verify:duality" => ExperimentConfig {
            grid_n: Some(64),
            grid_extent: Some(8.0),
            instances: Some(20),
            ..base
        },
        "verify:operator-identities" => ExperimentConfig {
            grid_n: Some(32),
            grid_extent: Some(8.0),
            seed: Some(11),
            ..base
        },
        "verify:compact-support" => ExperimentConfig {
            grid_n: Some(32),
            grid_extent: Some(8.0),
            radius: Some(1.0),
            ..base
        },
        "verify:embedding-below" => ExperimentConfig {
            grid_n: Some(16),
            grid_extent: Some(4.0),
            trials: Some(100),
            seed: Some(42),
            tolerance: Some(1e-12),
            ..base
        },
        "verify:embedding-above" => ExperimentConfig {
            grid_n: Some(16),
            grid_extent: Some(4.0),
            trials: Some(100),
            seed: Some(43),
            tolerance: Some(1e-12),
            ..base
        },
        "verify:embedding-monotone" => ExperimentConfig {
            grid_n: Some(16),
            grid_extent: Some(4.0),
            trials: Some(25),
            seed: Some(44),
            tolerance: Some(1e-12),
            ..base
        },
        "sweep:dilation" => ExperimentConfig {
            grid_n: Some(2048),
            grid_extent: Some(16.0),
            window_rate: Some(1.0),
            radius: Some(2.0),
            lambdas: Some(five),
            pairs: sweep_pairs,
            ..base
        },
        "sweep:inverse-dilation" => ExperimentConfig {
            grid_n: Some(2048),
            grid_extent: Some(128.0),
            window_rate: Some(1.0),
            radius: Some(2.0),
            lambdas: Some(five),
            pairs: sweep_pairs,
            ..base
        },
        "sweep:chirp" => ExperimentConfig {
            grid_n: Some(2048),
            grid_extent: Some(16.0),
            window_rate: Some(0.125),
            radius: Some(2.0),
            lambdas: Some(five),
            pairs: sweep_pairs,
            ..base
        },
        "sweep:boundedness" => ExperimentConfig {
            grid_extent: Some(4.0),
            instances: Some(50),
            seed: Some(0),
            window_rate: Some(0.5),
            ..base
        },
        "necessity:p4" => ExperimentConfig {
            grid_n: Some(2048),
            grid_extent: Some(80.0),
            radius: Some(2.0),
            lambdas: Some(five),
            exponents: Some(strs(&["2", "4", "2", "4", "2", "2", "2", "2"])),
            ..base
        },
        "necessity:q4-q1" => ExperimentConfig {
            grid_n: Some(2048),
            grid_extent: Some(16.0),
            radius: Some(2.0),
            lambdas: Some(five),
            exponents: Some(strs(&["2", "2", "2", "2", "2", "4", "2", "4"])),
            ..base
        },
        "necessity:q4-q2" => ExperimentConfig {
            grid_n: Some(160),
            grid_extent: Some(8.0),
            radius: Some(2.0),
            lambdas: Some(vec![1.0, 2.0, 4.0]),
            exponents: Some(strs(&["2", "2", "2", "2", "1", "2", "2", "4"])),
            ..base
        },
        "necessity:p4-p2" => ExperimentConfig {
            grid_n: Some(2048),
            grid_extent: Some(32.0),
            radius: Some(2.0),
            lambdas: Some(five),
            exponents: Some(strs(&["1", "2", "2", "4", "2", "2", "2", "2"])),
            ..base
        },
        "necessity:p-sum" => ExperimentConfig {
            grid_n: Some(2048),
            grid_extent: Some(32.0),
            radius: Some(2.0),
            lambdas: Some(five),
            exponents: Some(strs(&["2", "2", "4", "2", "2", "2", "2", "2"])),
            ..base
        },
        "necessity:q-sum" => ExperimentConfig {
            grid_n: Some(2048),
            grid_extent: Some(32.0),
            radius: Some(2.0),
            lambdas: Some(five),
            exponents: Some(strs(&["2", "2", "2", "2", "2", "2", "4", "2"])),
            ..base
        },
        "compute:norm" => ExperimentConfig {
            grid_n: Some(256),
            grid_extent: Some(16.0),
            window_rate: Some(0.5),
            exponents: Some(strs(&["2", "2"])),
            field: Some(FieldSpec::Gaussian { rate: 1.0 }),
            ..base
        },
        "compute:stft" => ExperimentConfig {
            grid_n: Some(64),
            grid_extent: Some(8.0),
            window_rate: Some(0.5),
            field: Some(FieldSpec::Gaussian { rate: 1.0 }),
            ..base
        },
        "compute:apply" => ExperimentConfig {
            grid_n: Some(64),
            grid_extent: Some(8.0),
            field: Some(FieldSpec::Random { seed: 5, fraction: 0.5 }),
            symbol: Some(SymbolSpec::Random { seed: 9 }),
            ..base
        },
        "compute:region" => ExperimentConfig {
            exponents: Some(strs(&["2", "2"])),
            ..base
        },
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_id_has_defaults() {
        for entry in catalog() {
            assert!(default_config(entry.id).is_some(), "{}", entry.id);
        }
        assert!(default_config("verify:nope").is_none());
    }

    #[test]
    fn merge_prefers_explicit_values() {
        let mut user = ExperimentConfig {
            id: "sweep:dilation".into(),
            grid_n: Some(256),
            ..Default::default()
        };
        user.lambdas = Some(vec![1.0, 2.0, 4.0]);
        let merged = user.merged_over(&default_config("sweep:dilation").unwrap());
        assert_eq!(merged.grid_n, Some(256));
        assert_eq!(merged.grid_extent, Some(16.0));
        assert_eq!(merged.lambdas.as_deref(), Some(&[1.0, 2.0, 4.0][..]));
        assert_eq!(merged.pairs.as_ref().map(|p| p.len()), Some(3));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = serde_json::from_str::<ExperimentConfig>(
            r#"{"id":"verify:transforms","grid":64}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("unknown field"));
    }
}
