use thiserror::Error;

/// Errors raised by the library. Every variant names the violated
/// precondition and the offending value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: String,
    },

    #[error("size cap exceeded: {what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("element index {ind} out of range [1, {order}] for C({k};{n})")]
    ElementOutOfRange { ind: u64, k: u32, n: u32, order: u32 },

    #[error("residue {value} out of range [0, {modulus})")]
    ResidueOutOfRange { value: u64, modulus: u32 },

    #[error("generator {g} is not a unit modulo {n} (gcd = {gcd})")]
    InvalidGenerator { g: u32, n: u32, gcd: u32 },

    #[error("operation requires a nonempty sequence")]
    EmptySequence,

    #[error("cannot parse sequence {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{name} mismatch for {params}: closed form {closed_form} != exhaustive {exhaustive} (witness {witness})")]
    FormulaMismatch {
        name: &'static str,
        params: String,
        closed_form: u64,
        exhaustive: u64,
        witness: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, value: impl ToString, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        value: value.to_string(),
        reason: reason.into(),
    }
}

pub(crate) fn check_cap(what: &'static str, value: u128, cap: u128) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}
