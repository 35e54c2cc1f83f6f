use thiserror::Error;

/// Errors produced by instance validation, solvers, and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("p = {p} and q = {q} are not coprime (gcd = {gcd})")]
    NotCoprime { p: u32, q: u32, gcd: u32 },

    #[error("support too large: 2p = {twice_p} exceeds q = {q}")]
    SupportTooLarge { twice_p: u32, q: u32 },

    #[error("b vector has length {got}, expected {expected}")]
    BadBLength { got: usize, expected: usize },

    #[error("s vector has length {got}, expected {expected}")]
    BadSLength { got: usize, expected: usize },

    #[error("infeasible b: residue polynomial attains {min} at r = {r}")]
    InfeasibleB { r: usize, min: f64 },

    #[error("constraint violation: |b_{k}| = {residual} should vanish")]
    ConstraintViolation { k: usize, residual: f64 },

    #[error("invalid q = {q}: {reason}")]
    InvalidQ { q: u32, reason: &'static str },

    #[error("numerical breakdown: pivot magnitude {pivot} below tolerance")]
    NumericalBreakdown { pivot: f64 },

    #[error("oracle budget exceeded: {what}")]
    BudgetExceeded { what: &'static str },

    #[error("h = {p}/{q} does not belong to the expansion family")]
    FamilyMismatch { p: u32, q: u32 },

    #[error("degenerate fit: remainder at q = {q} is below 1e-300")]
    DegenerateFit { q: u32 },

    #[error("membership violation: min Fourier coefficient {min_alpha} at n = {n}")]
    MembershipViolation { n: usize, min_alpha: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
