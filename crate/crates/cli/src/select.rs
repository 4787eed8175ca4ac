use std::path::PathBuf;

use clap::{Args, ValueEnum};
use subexp_core::spectrum::DEFAULT_D_NEG_TERMS;
use subexp_core::{
    derive_spectrum, make_preset, ModelKind, ModelSpec, SpectralData, SpectrumDocument,
};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    Standard,
    Roots,
    Congruent,
    Custom,
}

#[derive(Args, Clone, Debug)]
pub struct ModelArgs {
    /// Model family.
    #[arg(long, value_enum)]
    pub model: ModelName,
    /// Modulus a of the congruent model (parts ≡ b mod a).
    #[arg(long)]
    pub a: Option<u64>,
    /// Residue b of the congruent model.
    #[arg(long)]
    pub b: Option<u64>,
    /// JSON document with the spectral data of a custom model.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
}

/// A resolved model: its spectrum, plus the product model when exact
/// counting is possible.
pub struct Selected {
    pub label: String,
    pub spectrum: SpectralData,
    pub model: Option<ModelSpec>,
}

impl ModelArgs {
    pub fn load(&self) -> CliResult<Selected> {
        if self.model != ModelName::Congruent && (self.a.is_some() || self.b.is_some()) {
            return Err(CliError::Usage("--a and --b only apply to --model congruent".into()));
        }
        if self.model != ModelName::Custom && self.spec.is_some() {
            return Err(CliError::Usage("--spec only applies to --model custom".into()));
        }
        let kind = match self.model {
            ModelName::Standard => ModelKind::Standard,
            ModelName::Roots => ModelKind::Roots,
            ModelName::Congruent => match (self.a, self.b) {
                (Some(modulus), Some(residue)) => ModelKind::Congruent { modulus, residue },
                _ => return Err(CliError::Usage("--model congruent needs --a and --b".into())),
            },
            ModelName::Custom => return self.load_custom(),
        };
        let model = make_preset(kind)?;
        let spectrum = derive_spectrum(&model, DEFAULT_D_NEG_TERMS)?;
        Ok(Selected { label: model.kind.to_string(), spectrum, model: Some(model) })
    }

    fn load_custom(&self) -> CliResult<Selected> {
        let path = self
            .spec
            .as_ref()
            .ok_or_else(|| CliError::Usage("--model custom needs --spec FILE".into()))?;
        let text = std::fs::read_to_string(path)?;
        let doc = SpectrumDocument::parse(&text)?;
        let spectrum = doc.spectral_data()?;
        let model = doc.model()?;
        Ok(Selected { label: "custom".into(), spectrum, model })
    }
}
