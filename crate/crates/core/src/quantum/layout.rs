use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Canonical register order. Registers with these names must appear in this
/// relative order; other names are unconstrained.
pub const CANONICAL_ORDER: [&str; 5] = ["E", "A", "A'", "B", "B'"];

/// Ordered registers with their dimensions. Basis indices are row-major over
/// the listed order, so the last register varies fastest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    registers: Vec<(String, usize)>,
}

/// Kept layout, complementary layout and the per-index `(kept, rest)` pairs.
pub type SplitLayout = (RegisterLayout, RegisterLayout, Vec<(usize, usize)>);

impl RegisterLayout {
    pub fn new<S: Into<String>>(registers: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let registers: Vec<(String, usize)> =
            registers.into_iter().map(|(n, d)| (n.into(), d)).collect();
        for (i, (name, dim)) in registers.iter().enumerate() {
            if *dim == 0 {
                return Err(Error::LayoutMismatch(format!("register {name} has dimension 0")));
            }
            if registers[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::LayoutMismatch(format!("duplicate register {name}")));
            }
        }
        let ranks: Vec<usize> = registers
            .iter()
            .filter_map(|(n, _)| CANONICAL_ORDER.iter().position(|c| c == n))
            .collect();
        if ranks.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::LayoutMismatch(format!(
                "registers {:?} break the order E, A, A', B, B'",
                registers.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>()
            )));
        }
        Ok(Self { registers })
    }

    /// Layout with no registers; its single basis state is the scalar 1.
    pub fn empty() -> Self {
        Self { registers: Vec::new() }
    }

    pub fn single(name: &str, dim: usize) -> Result<Self> {
        Self::new([(name, dim)])
    }

    pub fn registers(&self) -> &[(String, usize)] {
        &self.registers
    }

    pub fn names(&self) -> Vec<&str> {
        self.registers.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.registers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.registers.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.registers.iter().map(|(_, d)| d).product()
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.registers
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownRegister(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.registers.iter().any(|(n, _)| n == name)
    }

    pub fn register_dim(&self, name: &str) -> Result<usize> {
        Ok(self.registers[self.position(name)?].1)
    }

    /// Digits of a basis index, one per register.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.registers.len()];
        for (slot, (_, d)) in out.iter_mut().zip(&self.registers).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.registers)
            .fold(0, |acc, (&v, (_, d))| acc * d + v)
    }

    /// Sub-layout with the named registers, kept in layout order.
    pub fn select(&self, names: &[&str]) -> Result<Self> {
        for n in names {
            self.position(n)?;
        }
        Ok(Self {
            registers: self
                .registers
                .iter()
                .filter(|(n, _)| names.contains(&n.as_str()))
                .cloned()
                .collect(),
        })
    }

    /// Sub-layout without the named registers.
    pub fn without(&self, names: &[&str]) -> Result<Self> {
        for n in names {
            self.position(n)?;
        }
        Ok(Self {
            registers: self
                .registers
                .iter()
                .filter(|(n, _)| !names.contains(&n.as_str()))
                .cloned()
                .collect(),
        })
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        Self::new(self.registers.iter().chain(&other.registers).cloned())
    }

    /// For every basis index, its index in the `kept` sub-layout and in the
    /// complementary sub-layout.
    pub fn split_indices(&self, kept: &[&str]) -> Result<SplitLayout> {
        let keep = self.select(kept)?;
        let rest = self.without(&keep.names())?;
        let mask: Vec<bool> = self
            .registers
            .iter()
            .map(|(n, _)| kept.contains(&n.as_str()))
            .collect();
        let map = (0..self.dim())
            .map(|i| {
                let digits = self.digits(i);
                let (mut k, mut t) = (0, 0);
                for ((&v, (_, d)), &m) in digits.iter().zip(&self.registers).zip(&mask) {
                    if m {
                        k = k * d + v;
                    } else {
                        t = t * d + v;
                    }
                }
                (k, t)
            })
            .collect();
        Ok((keep, rest, map))
    }
}
