use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensionless configuration of the trapped ion.
///
/// Every frequency is stored as a ratio to the laser frequency, so the laser
/// frequency itself is 1 and times are measured in units of its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Trap frequency over laser frequency.
    pub nu_ratio: f64,
    /// Atomic transition frequency over laser frequency.
    pub omega_a_ratio: f64,
    /// Rabi frequency over laser frequency.
    pub rabi_ratio: f64,
    /// Lamb-Dicke parameter.
    pub eta: f64,
    /// Real coherent amplitude of the motional basis states.
    pub alpha: f64,
    /// Highest retained Fock occupation. Only numeric consumers read it.
    pub fock_dim: usize,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            nu_ratio: 0.01,
            omega_a_ratio: 1.0,
            rabi_ratio: 1e-3,
            eta: 0.1,
            alpha: 1.0,
            fock_dim: 96,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("nu_ratio", self.nu_ratio),
            ("omega_a_ratio", self.omega_a_ratio),
            ("rabi_ratio", self.rabi_ratio),
            ("eta", self.eta),
            ("alpha", self.alpha),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::Domain(format!("{name} must be finite, got {value}")));
            }
            if value < 0.0 {
                return Err(Error::Domain(format!("{name} must be >= 0, got {value}")));
            }
        }
        if self.fock_dim < 1 {
            return Err(Error::Domain("fock_dim must be >= 1".into()));
        }
        Ok(())
    }

    /// Checks the cutoff against the coherent-state convergence guard.
    pub fn check_fock_guard(&self) -> Result<()> {
        let minimal = minimal_cutoff(self.alpha);
        if self.fock_dim < minimal {
            return Err(Error::Cutoff {
                alpha: self.alpha,
                cutoff: self.fock_dim,
                minimal,
            });
        }
        Ok(())
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }

    pub fn with_eta(self, eta: f64) -> Self {
        Self { eta, ..self }
    }
}

/// Smallest Fock cutoff that represents `|alpha>` to double precision:
/// `ceil(alpha^2 + 10 alpha + 20)`.
pub fn minimal_cutoff(alpha: f64) -> usize {
    (alpha * alpha + 10.0 * alpha + 20.0).ceil() as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HamiltonianKind {
    /// Counter-rotating terms retained.
    Full,
    /// Rotating-wave approximation.
    Rwa,
}

impl HamiltonianKind {
    pub const ALL: [HamiltonianKind; 2] = [HamiltonianKind::Full, HamiltonianKind::Rwa];

    pub fn as_str(self) -> &'static str {
        match self {
            HamiltonianKind::Full => "full",
            HamiltonianKind::Rwa => "rwa",
        }
    }
}

impl fmt::Display for HamiltonianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_values() {
        assert_eq!(minimal_cutoff(0.0), 20);
        assert_eq!(minimal_cutoff(1.0), 31);
        assert_eq!(minimal_cutoff(2.0), 44);
        assert_eq!(minimal_cutoff(0.5), 26);
    }

    #[test]
    fn rejects_bad_fields() {
        let p = SystemParams::default();
        assert!(p.validate().is_ok());
        assert!(SystemParams { alpha: -0.1, ..p }.validate().is_err());
        assert!(SystemParams { eta: f64::NAN, ..p }.validate().is_err());
        assert!(SystemParams {
            rabi_ratio: f64::INFINITY,
            ..p
        }
        .validate()
        .is_err());
        assert!(SystemParams { fock_dim: 0, ..p }.validate().is_err());
    }

    #[test]
    fn fock_guard_names_minimal_cutoff() {
        let p = SystemParams {
            alpha: 2.0,
            fock_dim: 10,
            ..SystemParams::default()
        };
        let err = p.check_fock_guard().unwrap_err();
        assert!(err.to_string().contains("N >= 44"), "{err}");
    }
}
