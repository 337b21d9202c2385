use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("reserved identifier `{0}` cannot be used as an atom")]
    ReservedWord(String),

    #[error("occurrence-count mismatch: formula has {found} occurrences of `{atom}`, {given} replacements given")]
    OccurrenceMismatch {
        atom: String,
        found: usize,
        given: usize,
    },

    #[error("cnf blowup: conversion exceeds {limit} clauses")]
    CnfBlowup { limit: usize },

    #[error("atom `{0}` is not assigned by the interpretation")]
    UnassignedAtom(String),

    #[error("solver budget exhausted: {0}")]
    SolverBudget(String),

    #[error("model enumeration over {atoms} atoms exceeds the cap of {cap}")]
    ModelCap { atoms: usize, cap: usize },

    #[error("expansion budget exceeded: {needed} forgotten atoms/occurrences, cap is {cap}; use the encoding path")]
    ExpansionBudget { needed: usize, cap: usize },

    #[error("atoms {0} are not part of the knowledge base signature")]
    NotASubsignature(String),

    #[error("enumeration over {atoms} atoms exceeds the cap of {cap}")]
    EnumerationCap { atoms: usize, cap: usize },

    #[error("subset enumeration over {formulas} formulas exceeds the cap of {cap}")]
    SubsetCap { formulas: usize, cap: usize },

    #[error("undefined measure: {0}")]
    UndefinedMeasure(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
