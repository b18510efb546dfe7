//! Size caps shared by every exhaustive operation.
//!
//! Operations refuse work beyond these limits instead of degrading. The
//! defaults can be overridden process-wide through the `IDEMSUM_CAPS`
//! environment variable, a comma-separated list of `key=value` pairs, e.g.
//! `IDEMSUM_CAPS=max_order=4096,brute_force_len=20`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{invalid, Result};

pub const CAPS_ENV_VAR: &str = "IDEMSUM_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest admissible semigroup order `k + n - 1`.
    pub max_order: u64,
    /// Longest sequence the subset brute-force oracle will enumerate.
    pub brute_force_len: usize,
    /// Longest sequence for exhaustive signed-smooth searches.
    pub sign_search_len: usize,
    /// Largest modulus for zero-sum-free enumeration (Sgn, Smo, Davenport).
    pub zero_sum_free_modulus: u32,
    /// Largest number of multisets a single stream may yield.
    pub multiset_count: u128,
    /// Largest threshold accepted by the threshold-congruence DP.
    pub threshold: u64,
    /// Largest semigroup order for the exhaustive Erdős–Burgess search.
    pub erdos_burgess_order: u32,
    /// Largest `ceil(k/n) n` for the exhaustive Erdős–Burgess search.
    pub erdos_burgess_constant: u64,
    /// Largest modulus for the signed-window doubling sweep.
    pub doubling_modulus: u32,
    /// Longest sequence for the signed-window doubling sweep.
    pub doubling_len: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 1 << 20,
            brute_force_len: 24,
            sign_search_len: 24,
            zero_sum_free_modulus: 14,
            multiset_count: 50_000_000,
            threshold: 1 << 20,
            erdos_burgess_order: 16,
            erdos_burgess_constant: 16,
            doubling_modulus: 5,
            doubling_len: 7,
        }
    }
}

impl Caps {
    /// Apply `key=value` overrides on top of `self`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| invalid("caps", item, "expected key=value"))?;
            let key = key.trim();
            let value = value.trim();
            let parse = |v: &str| -> Result<u128> {
                v.parse::<u128>()
                    .map_err(|_| invalid("caps", item, "value is not a nonnegative integer"))
            };
            let v = parse(value)?;
            match key {
                "max_order" => self.max_order = v as u64,
                "brute_force_len" => self.brute_force_len = v as usize,
                "sign_search_len" => self.sign_search_len = v as usize,
                "zero_sum_free_modulus" => self.zero_sum_free_modulus = v.min(64) as u32,
                "multiset_count" => self.multiset_count = v,
                "threshold" => self.threshold = v as u64,
                "erdos_burgess_order" => self.erdos_burgess_order = v.min(128) as u32,
                "erdos_burgess_constant" => self.erdos_burgess_constant = v as u64,
                "doubling_modulus" => self.doubling_modulus = v as u32,
                "doubling_len" => self.doubling_len = v as usize,
                _ => return Err(invalid("caps", key, "unknown cap name")),
            }
        }
        Ok(self)
    }

    /// Defaults with `IDEMSUM_CAPS` applied. Read once per process; a
    /// malformed variable is ignored with a warning on stderr.
    pub fn global() -> Caps {
        static GLOBAL: OnceLock<Caps> = OnceLock::new();
        *GLOBAL.get_or_init(|| match std::env::var(CAPS_ENV_VAR) {
            Ok(spec) => Caps::default().with_overrides(&spec).unwrap_or_else(|e| {
                eprintln!("warning: ignoring {CAPS_ENV_VAR}: {e}");
                Caps::default()
            }),
            Err(_) => Caps::default(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let caps = Caps::default()
            .with_overrides("max_order=100, brute_force_len=10")
            .unwrap();
        assert_eq!(caps.max_order, 100);
        assert_eq!(caps.brute_force_len, 10);
        assert_eq!(caps.sign_search_len, 24);
    }

    #[test]
    fn overrides_reject_unknown_key() {
        assert!(Caps::default().with_overrides("bogus=1").is_err());
        assert!(Caps::default().with_overrides("max_order").is_err());
        assert!(Caps::default().with_overrides("max_order=-3").is_err());
    }
}
