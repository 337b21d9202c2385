//! Caps and execution settings shared by every analysis.

use crate::sat::SatLimits;

/// Explicit resource caps. Every cap violation is reported as an error,
/// never silently degraded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Forgotten atoms (VE) or forgotten occurrences (NA) per formula for the
    /// expansion path.
    pub max_expansion: usize,
    /// Signature size for the subset-lattice scan.
    pub max_brute_atoms: usize,
    /// Signature size for the duality-guided search.
    pub max_enum_atoms: usize,
    /// Knowledge-base size for minimal inconsistent / maximal consistent subsets.
    pub max_subset_formulas: usize,
    /// Signature size for the 3^n scan of three-valued interpretations.
    pub max_lp_scan_atoms: usize,
    /// Signature size for the B-set layered search of three-valued minimal models.
    pub max_lp_atoms: usize,
    /// Clause budget for distributive CNF.
    pub max_cnf_clauses: usize,
    pub sat: SatLimits,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_expansion: 12,
            max_brute_atoms: 12,
            max_enum_atoms: 20,
            max_subset_formulas: 16,
            max_lp_scan_atoms: 12,
            max_lp_atoms: 20,
            max_cnf_clauses: crate::formula::DEFAULT_CNF_CAP,
            sat: SatLimits::default(),
        }
    }
}

/// How data-parallel inner loops run. `Parallel` falls back to sequential
/// execution when the crate is built without the `parallel` feature.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

/// Subsignature enumeration strategy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Decide every subset of the signature.
    BruteForce,
    /// Grow/shrink loop over an exploration map, one family checked against
    /// the other through minimal hitting sets.
    #[default]
    Duality,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::BruteForce => "brute",
            Strategy::Duality => "duality",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub limits: Limits,
    pub parallelism: Parallelism,
    pub strategy: Strategy,
}

impl Config {
    pub fn sequential() -> Config {
        Config {
            parallelism: Parallelism::Sequential,
            ..Config::default()
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Config {
        self.strategy = strategy;
        self
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Config {
        self.parallelism = parallelism;
        self
    }
}
