//! Arithmetic in the finite cyclic semigroup `C(k;n)`.
//!
//! `C(k;n)` is generated by a single element `s` and has elements
//! `s, 2s, ..., (k+n-1)s`, where `k` is the index and `n` the period. Every
//! element is represented by its canonical index `Ind(a)`, the least positive
//! `t` with `ts = a`. For `k = 1` the semigroup is the cyclic group `Z/nZ`.

use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{check_cap, invalid, Error, Result};

/// An element of `C(k;n)`, stored as its index in `[1, k+n-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(u32);

impl Element {
    pub fn ind(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of `Z/nZ`, stored as its representative in `[0, n-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Residue(u32);

impl Residue {
    pub fn new(value: u64, modulus: u32) -> Result<Self> {
        if modulus == 0 || value >= modulus as u64 {
            return Err(Error::ResidueOutOfRange { value, modulus });
        }
        Ok(Residue(value as u32))
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite cyclic semigroup of index `k` and period `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicSemigroup {
    k: u32,
    n: u32,
    /// Index of the unique idempotent: the multiple of `n` in `[k, k+n-1]`.
    ell: u32,
}

impl CyclicSemigroup {
    /// Builds `C(k;n)` under the process-wide caps.
    pub fn new(k: u64, n: u64) -> Result<Self> {
        Self::with_caps(k, n, &Caps::global())
    }

    pub fn with_caps(k: u64, n: u64, caps: &Caps) -> Result<Self> {
        if k == 0 {
            return Err(invalid("k", k, "index must be at least 1"));
        }
        if n == 0 {
            return Err(invalid("n", n, "period must be at least 1"));
        }
        let order = k as u128 + n as u128 - 1;
        check_cap("order k+n-1", order, caps.max_order as u128)?;
        let (k, n) = (k as u32, n as u32);
        let ell = k.div_ceil(n) * n;
        Ok(CyclicSemigroup { k, n, ell })
    }

    /// The cyclic group `Z/nZ` viewed as `C(1;n)`.
    pub fn group(n: u64) -> Result<Self> {
        Self::new(1, n)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of elements, `k + n - 1`.
    pub fn order(&self) -> u32 {
        self.k + self.n - 1
    }

    pub fn is_group(&self) -> bool {
        self.k == 1
    }

    /// `ceil(k/n) * n`, the Erdős–Burgess constant of the semigroup. Equal
    /// to the index of the idempotent.
    pub fn erdos_burgess(&self) -> u64 {
        self.ell as u64
    }

    pub fn element(&self, ind: u64) -> Result<Element> {
        if ind == 0 || ind > self.order() as u64 {
            return Err(Error::ElementOutOfRange {
                ind,
                k: self.k,
                n: self.n,
                order: self.order(),
            });
        }
        Ok(Element(ind as u32))
    }

    /// The generator `s`.
    pub fn generator(&self) -> Element {
        Element(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (1..=self.order()).map(Element)
    }

    pub fn idempotent(&self) -> Element {
        Element(self.ell)
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        Element(self.reduce(a.0 as u64 + b.0 as u64))
    }

    /// Canonical index of `m s` for any positive integer `m`.
    pub fn reduce(&self, m: u64) -> u32 {
        debug_assert!(m >= 1);
        let order = self.order() as u64;
        if m <= order {
            m as u32
        } else {
            let k = self.k as u64;
            (k + (m - k) % self.n as u64) as u32
        }
    }

    /// `psi(a) = Ind(a) mod n`.
    pub fn psi(&self, a: Element) -> Residue {
        Residue(a.0 % self.n)
    }
}

impl fmt::Display for CyclicSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({};{})", self.k, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(k: u64, n: u64) -> CyclicSemigroup {
        CyclicSemigroup::new(k, n).unwrap()
    }

    /// Repeated addition of the generator, the definition of `ms`.
    fn multiple_by_repetition(s: &CyclicSemigroup, m: u64) -> Element {
        let mut acc = s.generator();
        for _ in 1..m {
            acc = s.add(acc, s.generator());
        }
        acc
    }

    #[test]
    fn idempotent_locations() {
        assert_eq!(sg(3, 4).idempotent().ind(), 4);
        assert_eq!(sg(1, 9).idempotent().ind(), 9);
        assert_eq!(sg(5, 3).idempotent().ind(), 6);
        assert_eq!(sg(2, 2).idempotent().ind(), 2);
        assert_eq!(sg(1, 5).idempotent().ind(), 5);
        assert_eq!(sg(7, 1).idempotent().ind(), 7);
    }

    #[test]
    fn addition_examples() {
        let s = sg(3, 4);
        let e = |i| s.element(i).unwrap();
        assert_eq!(s.add(e(2), e(3)).ind(), 5);
        assert_eq!(s.add(e(5), e(6)).ind(), 3);
        assert_eq!(s.add(e(3), e(5)).ind(), 4);
    }

    #[test]
    fn psi_examples() {
        let s = sg(3, 4);
        assert_eq!(s.psi(s.element(6).unwrap()).value(), 2);
        assert_eq!(s.psi(s.element(4).unwrap()).value(), 0);
        let g = sg(1, 5);
        assert_eq!(g.psi(g.element(3).unwrap()).value(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            CyclicSemigroup::new(0, 3),
            Err(Error::InvalidParameter { name: "k", .. })
        ));
        assert!(matches!(
            CyclicSemigroup::new(3, 0),
            Err(Error::InvalidParameter { name: "n", .. })
        ));
        let caps = Caps {
            max_order: 10,
            ..Caps::default()
        };
        assert!(matches!(
            CyclicSemigroup::with_caps(6, 6, &caps),
            Err(Error::CapExceeded { .. })
        ));
        assert!(CyclicSemigroup::with_caps(5, 6, &caps).is_ok());
        let s = sg(2, 2);
        assert!(s.element(0).is_err());
        assert!(s.element(4).is_err());
        assert!(Residue::new(5, 5).is_err());
    }

    #[test]
    fn exhaustive_laws() {
        for k in 1..=6u64 {
            for n in 1..=6u64 {
                let s = sg(k, n);
                let e = s.idempotent();
                let elems: Vec<_> = s.elements().collect();
                for &a in &elems {
                    assert_eq!(a, multiple_by_repetition(&s, a.ind() as u64));
                    let ae = s.add(a, e);
                    assert!(ae.ind() >= s.k() && ae.ind() <= s.order());
                    assert_eq!(s.add(a, a) == a, a == e, "{s} idempotent uniqueness at {a}");
                    for &b in &elems {
                        let ab = s.add(a, b);
                        assert_eq!(ab, s.add(b, a));
                        assert_eq!(
                            s.psi(ab).value(),
                            (s.psi(a).value() + s.psi(b).value()) % s.n()
                        );
                        assert_eq!(
                            ab,
                            multiple_by_repetition(&s, (a.ind() + b.ind()) as u64)
                        );
                        for &c in &elems {
                            assert_eq!(s.add(ab, c), s.add(a, s.add(b, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn group_case_is_cyclic_group() {
        let s = sg(1, 7);
        // every element has an inverse with respect to the identity 7s
        for a in s.elements() {
            assert!(s.elements().any(|b| s.add(a, b) == s.idempotent()));
        }
    }
}
