use crate::error::{invalid, Result};
use crate::sequence::ResidueSequence;

/// Stream of signed subsequences of length `r`: every index subset of size
/// `r` (in lexicographic order) with every sign pattern on it. Yields
/// `C(|T|, r) 2^r` sequences; equal multisets may repeat.
#[derive(Debug, Clone)]
pub struct SignedWindows {
    modulus: u32,
    terms: Vec<u32>,
    combo: Vec<usize>,
    signs: u64,
    done: bool,
}

pub fn enumerate_signed_windows(t: &ResidueSequence, r: usize) -> Result<SignedWindows> {
    if r == 0 || r > t.len() {
        return Err(invalid("r", r, format!("must lie in [1, {}]", t.len())));
    }
    if r >= 63 {
        return Err(invalid("r", r, "sign patterns limited to r < 63"));
    }
    Ok(SignedWindows {
        modulus: t.modulus(),
        terms: t.terms().to_vec(),
        combo: (0..r).collect(),
        signs: 0,
        done: false,
    })
}

impl SignedWindows {
    fn advance_combo(&mut self) -> bool {
        let r = self.combo.len();
        let len = self.terms.len();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if self.combo[i] < len - r + i {
                self.combo[i] += 1;
                for j in i + 1..r {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SignedWindows {
    type Item = ResidueSequence;

    fn next(&mut self) -> Option<ResidueSequence> {
        if self.done {
            return None;
        }
        let n = self.modulus as i64;
        let values = self.combo.iter().enumerate().map(|(bit, &i)| {
            let v = self.terms[i] as i64;
            if self.signs >> bit & 1 == 1 {
                -v
            } else {
                v
            }
        });
        let item = ResidueSequence::from_integers(n as u32, values);
        self.signs += 1;
        if self.signs == 1u64 << self.combo.len() {
            self.signs = 0;
            if !self.advance_combo() {
                self.done = true;
            }
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_counts() {
        let t = ResidueSequence::new(5, [1, 2, 3]).unwrap();
        assert_eq!(enumerate_signed_windows(&t, 2).unwrap().count(), 12);
        assert_eq!(enumerate_signed_windows(&t, 3).unwrap().count(), 8);
        assert_eq!(enumerate_signed_windows(&t, 1).unwrap().count(), 6);
        assert!(enumerate_signed_windows(&t, 0).is_err());
        assert!(enumerate_signed_windows(&t, 4).is_err());
    }

    #[test]
    fn windows_are_signed_subsequences() {
        let t = ResidueSequence::new(7, [1, 1, 3]).unwrap();
        let ws: Vec<String> = enumerate_signed_windows(&t, 2).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(&ws[..4], &["1,1", "1,6", "1,6", "6,6"]);
        assert!(ws.contains(&"3,6".to_string()));
        assert!(ws.contains(&"4,6".to_string()));
    }
}
