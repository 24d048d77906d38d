//! Recursion systems from files or from the builtin catalogue.

use std::path::Path;

use olgf_core::img::{build_group, Case, ImgGroupSpec};
use olgf_core::tree_group::{b_system, odometer, RecursionSystem, Word};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Builtin {
    /// `a = (a, 1) sigma`
    Odometer,
    /// `b = (b, b sigma) sigma`
    B,
    /// `Gamma_x` with a periodic critical point; needs `--r` and `--x`.
    Periodic,
    /// `Gamma_x` with a pre-periodic critical point; needs `--r`, `--s` and `--x`.
    PrePeriodic,
}

/// A loaded group, with its `Gamma_x` parameters when it is one.
pub struct Loaded {
    pub system: RecursionSystem,
    pub img: Option<ImgGroupSpec>,
}

impl Loaded {
    pub fn word(&self, text: &str) -> Result<Word, CliError> {
        Ok(self.system.parse_word(text)?)
    }

    pub fn img(&self) -> Result<&ImgGroupSpec, CliError> {
        self.img.as_ref().ok_or_else(|| {
            CliError::Parse("this command needs --builtin periodic or pre-periodic".into())
        })
    }
}

pub fn load_system_file(path: &Path) -> Result<RecursionSystem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Failed(format!("cannot read {}: {e}", path.display())))?;
    let label = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("system");
    RecursionSystem::parse_labeled(&text, label)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// `"0101"` or `"0,1,0,1"`.
pub fn parse_x(text: &str) -> Result<Vec<u8>, CliError> {
    text.chars()
        .filter(|c| !matches!(c, ',' | ' ' | '(' | ')'))
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(CliError::Parse(format!(
                "x must consist of 0 and 1, got `{text}`"
            ))),
        })
        .collect()
}

pub fn case_of(b: Builtin) -> Option<Case> {
    match b {
        Builtin::Periodic => Some(Case::Periodic),
        Builtin::PrePeriodic => Some(Case::PrePeriodic),
        _ => None,
    }
}

pub fn load_builtin(
    b: Builtin,
    r: Option<usize>,
    s: Option<usize>,
    x: Option<&str>,
) -> Result<Loaded, CliError> {
    match b {
        Builtin::Odometer => Ok(Loaded {
            system: odometer(),
            img: None,
        }),
        Builtin::B => Ok(Loaded {
            system: b_system(),
            img: None,
        }),
        Builtin::Periodic | Builtin::PrePeriodic => {
            let case = case_of(b).expect("img builtin");
            let r = r.ok_or_else(|| CliError::Parse("--r is required".into()))?;
            let s = match case {
                Case::Periodic => s.unwrap_or(0),
                Case::PrePeriodic => s.ok_or_else(|| CliError::Parse("--s is required".into()))?,
            };
            let x = match x {
                Some(t) => parse_x(t)?,
                None => vec![0; r.saturating_sub(1)],
            };
            let spec = build_group(case, r, s, &x)?;
            Ok(Loaded {
                system: spec.system.clone(),
                img: Some(spec),
            })
        }
    }
}
