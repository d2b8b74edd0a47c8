//! Register assignments over D ∪ {⊥} and condition evaluation.
//!
//! Inside the engine a k-tuple is packed into a `u64` in base R = |D| + 1,
//! register 1 being the least significant digit. Digit 0 is ⊥ and digit
//! `v + 1` is the value id `v`.

use crate::error::{Error, Result};
use crate::graph::ValueId;
use crate::query::Cond;

/// A k-tuple over D ∪ {⊥}; `None` is ⊥.
pub type Assignment = Vec<Option<ValueId>>;

/// Packed register tuple.
pub type Code = u64;

pub const BOTTOM: Code = 0;

/// (d, τ) ⊨ c, with `Eq(i)` false whenever register i holds ⊥.
pub fn eval_condition(c: &Cond, d: ValueId, tau: &[Option<ValueId>]) -> bool {
    match c {
        Cond::Eq(i) => tau.get(i - 1).copied().flatten() == Some(d),
        Cond::And(a, b) => eval_condition(a, d, tau) && eval_condition(b, d, tau),
        Cond::Not(a) => !eval_condition(a, d, tau),
    }
}

/// λ with every register in `regs` (1-based) set to `d`.
pub fn with_stores(lambda: &[Option<ValueId>], regs: &[usize], d: ValueId) -> Assignment {
    let mut out = lambda.to_vec();
    for &r in regs {
        out[r - 1] = Some(d);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegSpace {
    pub k: usize,
    pub radix: u64,
    pow: [u64; 16],
    size: u64,
}

impl RegSpace {
    /// Space of k-tuples over `values` data values plus ⊥.
    pub fn new(k: usize, values: usize) -> Result<Self> {
        let radix = values as u64 + 1;
        if k >= 16 {
            return Err(Error::ResourceLimit(format!("{k} registers exceed the supported maximum of 15")));
        }
        let mut pow = [0u64; 16];
        let mut acc: u64 = 1;
        for slot in pow.iter_mut().take(k + 1) {
            *slot = acc;
            acc = acc.checked_mul(radix).unwrap_or(u64::MAX);
        }
        let size = pow[k];
        if size == 0 || size >= (1 << 40) {
            return Err(Error::ResourceLimit(format!("register space ({radix})^{k} is too large")));
        }
        Ok(RegSpace { k, radix, pow, size })
    }

    /// Number of tuples, (|D| + 1)^k.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn all(&self) -> impl Iterator<Item = Code> {
        0..self.size
    }

    /// Register i (1-based).
    pub fn get(&self, code: Code, i: usize) -> Option<ValueId> {
        let digit = (code / self.pow[i - 1]) % self.radix;
        digit.checked_sub(1).map(|v| v as ValueId)
    }

    pub fn store(&self, code: Code, regs: &[usize], d: ValueId) -> Code {
        let mut c = code;
        for &r in regs {
            let p = self.pow[r - 1];
            let digit = (c / p) % self.radix;
            c = c - digit * p + (d as u64 + 1) * p;
        }
        c
    }

    pub fn test(&self, c: &Cond, d: ValueId, code: Code) -> bool {
        match c {
            Cond::Eq(i) => self.get(code, *i) == Some(d),
            Cond::And(a, b) => self.test(a, d, code) && self.test(b, d, code),
            Cond::Not(a) => !self.test(a, d, code),
        }
    }

    pub fn encode(&self, a: &[Option<ValueId>]) -> Code {
        assert_eq!(a.len(), self.k, "assignment arity");
        a.iter().enumerate().map(|(i, v)| v.map_or(0, |v| v as u64 + 1) * self.pow[i]).sum()
    }

    pub fn decode(&self, code: Code) -> Assignment {
        (1..=self.k).map(|i| self.get(code, i)).collect()
    }

    pub fn is_bottom(&self, code: Code) -> bool {
        code == BOTTOM
    }
}
