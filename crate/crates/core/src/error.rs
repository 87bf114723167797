use alloc::vec::Vec;

use crate::morse::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("endpoint index {index} out of range for {endpoints} endpoints")]
    IndexOutOfRange { index: usize, endpoints: usize },
    #[error("size mismatch: {left} endpoints vs {right} endpoints")]
    SizeMismatch { left: usize, right: usize },
    #[error("not a perfect matching: {0}")]
    InvalidPairing(&'static str),
    #[error("too many endpoints: {0} (at most {max})", max = crate::pairing::MAX_ENDPOINTS)]
    TooManyEndpoints(usize),
    #[error("exact coefficient arithmetic overflowed")]
    Overflow,
    #[error("limit exceeded: {requested} requested, limit is {limit}")]
    LimitExceeded { requested: usize, limit: usize },
    #[error("state budget exceeded: {size} basis states, budget is {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("invalid program: {}", display_violations(.0))]
    InvalidProgram(Vec<Violation>),
    #[error("program rows are not an up-down symmetric palindrome of odd length")]
    NotPalindromic,
    #[error("program has no diamond parameter")]
    NotDiamond,
    #[error("assignment has {got} choices but the program has {expected} sites")]
    AssignmentLength { expected: usize, got: usize },
    #[error("invalid assignment encoding: {0}")]
    InvalidAssignment(&'static str),
}

fn display_violations(violations: &[Violation]) -> alloc::string::String {
    use core::fmt::Write;
    let mut out = alloc::string::String::new();
    for (k, v) in violations.iter().enumerate() {
        if k > 0 {
            out.push_str("; ");
        }
        let _ = write!(out, "{v}");
    }
    out
}
