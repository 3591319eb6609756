use crate::error::{Error, Result};

/// Enumeration and memory caps. Exceeding a cap is always a hard error naming
/// the cap — never a silent truncation.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Cap on `|Σ|^|V|` for brute-force maximization over assignments.
    pub enumeration: u128,
    /// Cap on `N^|Λ|` for dense Fourier transforms.
    pub fourier: u128,
    /// Cap on `|Ω^{U,m}|` for labeled-matching space enumeration.
    pub labeled_space: u128,
    /// Cap on `|M_{U,≤m}|` for unlabeled matching and restriction enumeration.
    pub matching_space: u128,
    /// Cap on `∏|Ω^{U_e,αn}| · N^{|V|n}` for exact yes/no mass tables.
    pub exact_masses: u128,
    /// Cap on connected-component size in the cycle-consistency referee's
    /// backtracking solver; larger components are skipped and recorded.
    pub component_solver: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 1 << 22,
            fourier: 1 << 24,
            labeled_space: 1 << 20,
            matching_space: 1 << 16,
            exact_masses: 1 << 26,
            component_solver: 24,
        }
    }
}

impl Caps {
    pub fn check(&self, cap: &'static str, needed: u128) -> Result<()> {
        let limit = match cap {
            "enumeration" => self.enumeration,
            "fourier" => self.fourier,
            "labeled_space" => self.labeled_space,
            "matching_space" => self.matching_space,
            "exact_masses" => self.exact_masses,
            _ => return Err(Error::structural(format!("unknown cap `{cap}`"))),
        };
        if needed > limit {
            Err(Error::CapExceeded { cap, needed, limit })
        } else {
            Ok(())
        }
    }
}
