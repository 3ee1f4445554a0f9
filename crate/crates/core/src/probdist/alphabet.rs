use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Reserved label for the erasure symbol ⊥.
pub const BOT: &str = "_bot";

/// An ordered set of distinct symbol labels. The position of a label is its
/// index in every table that uses the alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut seen = HashSet::with_capacity(symbols.len());
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateLabel(s.clone()));
            }
        }
        Ok(Self { symbols })
    }

    /// Labels `"0"`, `"1"`, ... `"n-1"`.
    pub fn indexed(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    /// All bit strings of length `bits` in lexicographic order.
    pub fn bit_strings(bits: u32) -> Self {
        let symbols = (0..1usize << bits).map(|v| bit_string(v, bits)).collect();
        Self { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == label)
    }

    /// Human-readable form of a label (`_bot` renders as ⊥).
    pub fn display(label: &str) -> &str {
        if label == BOT {
            "⊥"
        } else {
            label
        }
    }

    pub(crate) fn subset(&self, indices: &[usize]) -> Self {
        Self {
            symbols: indices.iter().map(|&i| self.symbols[i].clone()).collect(),
        }
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(value: Vec<String>) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(value: Alphabet) -> Self {
        value.symbols
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<&str> = self.symbols.iter().map(|s| Self::display(s)).collect();
        write!(f, "{{{}}}", shown.join(", "))
    }
}

/// Big-endian bit string of `value` with `bits` digits.
pub fn bit_string(value: usize, bits: u32) -> String {
    (0..bits)
        .rev()
        .map(|b| if value >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}
