//! Potential parameters and the dimensionless quantities everything else is
//! computed from: `a1 = sqrt(M V1)/beta`, the signed `a2sq = M V2 / beta^2`,
//! the depth parameter `A = -a2sq/a1`, and the per-level exponents
//! `eps_n = (A - 2n - 1)/2`.
//!
//! Units are explicit throughout: energies in eV, lengths in Angstrom, so
//! `M = 2m/hbar^2` carries 1/(eV Angstrom^2).

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// hbar^2 / (1 amu * 1 Angstrom^2) in eV, from CODATA 2018 values of
/// hbar, the atomic mass constant, and the electron volt.
const HBAR2_OVER_AMU_ANG2_EV: f64 = 4.180159280496722e-3;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParamError {
    #[error("{field} must be positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },
    #[error("unknown branch '{0}': expected 'exp' or 'morse'")]
    UnknownBranch(String),
}

fn require_positive(field: &'static str, value: f64) -> Result<(), ParamError> {
    // also rejects NaN
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ParamError::NonPositive { field, value })
    }
}

/// Which sign the cross term enters the spectrum with.
///
/// `MorseFlip` negates `a2sq` relative to the plain exponential branch,
/// which is how the Morse spectrum emerges from the same closed forms; its
/// x-space realization is the decaying-exponential well
/// `D e^{-2 beta x} - 2D e^{-beta x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Exponential,
    MorseFlip,
}

impl Branch {
    /// Short tag used in CLI flags and report names.
    pub fn tag(self) -> &'static str {
        match self {
            Branch::Exponential => "exp",
            Branch::MorseFlip => "morse",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Branch {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exp" | "exponential" => Ok(Branch::Exponential),
            "morse" | "morse_flip" => Ok(Branch::MorseFlip),
            other => Err(ParamError::UnknownBranch(other.to_string())),
        }
    }
}

/// The rising exponential-type potential
/// `V(x) = v1 e^{2 beta x} + v2 e^{beta x}` with explicit units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    /// Coefficient of `e^{2 beta x}` (eV); must be positive so a1 is real.
    pub v1: f64,
    /// Coefficient of `e^{beta x}` (eV); any sign.
    pub v2: f64,
    /// Range parameter (1/Angstrom).
    pub beta: f64,
    /// Mass parameter `M = 2m/hbar^2` (1/(eV Angstrom^2)).
    pub m: f64,
}

impl PotentialSpec {
    pub fn new(v1: f64, v2: f64, beta: f64, m: f64) -> Result<Self, ParamError> {
        let spec = PotentialSpec { v1, v2, beta, m };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        require_positive("v1", self.v1)?;
        if !self.v2.is_finite() {
            return Err(ParamError::NonPositive { field: "v2", value: self.v2 });
        }
        require_positive("beta", self.beta)?;
        require_positive("m", self.m)
    }

    /// Potential value at x (Angstrom), in eV.
    pub fn value(&self, x: f64) -> f64 {
        let e = (self.beta * x).exp();
        self.v1 * e * e + self.v2 * e
    }
}

/// Dimensionless parameters of the quantization condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    /// `sqrt(M v1)/beta`; branch-invariant and positive.
    pub a1: f64,
    /// `M v2/beta^2`, sign flipped on the Morse branch.
    pub a2sq: f64,
    /// Depth parameter `A = -a2sq/a1`; level n is bound iff `2n+1 < A`.
    pub a: f64,
    pub branch: Branch,
}

/// Computes the dimensionless parameters for one branch.
pub fn derive_params(spec: &PotentialSpec, branch: Branch) -> Result<DerivedParams, ParamError> {
    spec.validate()?;
    let a1 = (spec.m * spec.v1).sqrt() / spec.beta;
    let mut a2sq = spec.m * spec.v2 / (spec.beta * spec.beta);
    if branch == Branch::MorseFlip {
        a2sq = -a2sq;
    }
    Ok(DerivedParams { a1, a2sq, a: -a2sq / a1, branch })
}

impl DerivedParams {
    /// `eps_n = (A - 2n - 1)/2`. Negative values are formal (the state is
    /// not normalizable) but still solve the radial equation.
    pub fn epsilon(&self, n: usize) -> f64 {
        (self.a - 2.0 * n as f64 - 1.0) / 2.0
    }

    /// Number of levels with `eps_n > 0`, i.e. n satisfying `2n+1 < A`.
    pub fn bound_state_count(&self) -> usize {
        if self.a <= 1.0 {
            return 0;
        }
        // largest n with 2n+1 strictly below A
        let mut n_max = ((self.a - 1.0) / 2.0).floor();
        if 2.0 * n_max + 1.0 >= self.a {
            n_max -= 1.0;
        }
        n_max as usize + 1
    }
}

/// Published diatomic constants: dissociation energy, equilibrium length,
/// dimensionless range `alpha = beta r0`, and the energy scale
/// `E0 = hbar^2/(m r0^2)`. E0 is authoritative; `mass_amu` only feeds a
/// consistency check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeParams {
    pub name: String,
    /// Dissociation energy D (eV).
    pub d: f64,
    /// Equilibrium separation r0 (Angstrom).
    pub r0: f64,
    /// Dimensionless range, `beta * r0`.
    pub alpha: f64,
    /// `hbar^2/(m r0^2)` (eV).
    pub e0: f64,
    pub mass_amu: Option<f64>,
}

impl MoleculeParams {
    pub fn h2() -> Self {
        MoleculeParams {
            name: "H2".to_string(),
            d: 4.7446,
            r0: 0.7416,
            alpha: 1.440558,
            e0: 1.508343932e-2,
            mass_amu: Some(0.50391),
        }
    }

    pub fn lih() -> Self {
        MoleculeParams {
            name: "LiH".to_string(),
            d: 2.515287,
            r0: 1.5956,
            alpha: 1.7998368,
            e0: 1.865528199e-3,
            mass_amu: Some(0.8801221),
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        require_positive("d", self.d)?;
        require_positive("r0", self.r0)?;
        require_positive("alpha", self.alpha)?;
        require_positive("e0", self.e0)?;
        if let Some(mass) = self.mass_amu {
            require_positive("mass_amu", mass)?;
        }
        Ok(())
    }

    /// Range parameter beta = alpha/r0 (1/Angstrom).
    pub fn beta(&self) -> f64 {
        self.alpha / self.r0
    }

    /// Mass parameter M = 2/(E0 r0^2) (1/(eV Angstrom^2)).
    pub fn m(&self) -> f64 {
        2.0 / (self.e0 * self.r0 * self.r0)
    }

    /// The rising-exponential well with `v1 = D`, `v2 = 2D`.
    pub fn to_potential(&self) -> Result<PotentialSpec, ParamError> {
        self.validate()?;
        PotentialSpec::new(self.d, 2.0 * self.d, self.beta(), self.m())
    }

    /// Morse well `D e^{-2 beta x} - 2D e^{-beta x}` at displacement x
    /// (Angstrom) from equilibrium; its spectrum is the MorseFlip branch.
    pub fn morse_potential(&self, x: f64) -> f64 {
        let e = (-self.beta() * x).exp();
        self.d * e * e - 2.0 * self.d * e
    }

    /// Relative difference between the stated E0 and hbar^2/(m r0^2)
    /// rebuilt from `mass_amu`; None when no mass is given.
    pub fn e0_consistency(&self) -> Option<f64> {
        let mass = self.mass_amu?;
        let rebuilt = HBAR2_OVER_AMU_ANG2_EV / (mass * self.r0 * self.r0);
        Some(((rebuilt - self.e0) / self.e0).abs())
    }
}
