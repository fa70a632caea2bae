use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// (cohomological degree, weight).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub degree: u32,
    pub weight: u32,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { degree: 0, weight: 0 };

    pub fn new(degree: u32, weight: u32) -> Self {
        Bidegree { degree, weight }
    }

    pub fn checked_add(self, other: Bidegree) -> Bidegree {
        Bidegree::new(self.degree + other.degree, self.weight + other.weight)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(deg {}, wt {})", self.degree, self.weight)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Classical,
    Twisted,
}

/// `E(i)` is the classical class `e_i`; `M(i, j)` is the barred class `mbar_{i,j}`.
///
/// The derived order puts every `e_i` before every twisted class, orders the
/// `e_i` by index and the twisted classes by `(j, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E(u32),
    M(u32, u32),
}

impl Generator {
    fn key(&self) -> (u8, u32, u32) {
        match *self {
            Generator::E(i) => (0, i, 0),
            Generator::M(i, j) => (1, j, i),
        }
    }

    pub fn kind(&self) -> GeneratorKind {
        match self {
            Generator::E(_) => GeneratorKind::Classical,
            Generator::M(..) => GeneratorKind::Twisted,
        }
    }

    pub fn bidegree(&self) -> Bidegree {
        match *self {
            Generator::E(i) => Bidegree::new(2 * i, 0),
            Generator::M(i, j) => Bidegree::new(2 * i + j - 2, j),
        }
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, Generator::M(..))
    }

    /// `mbar_{i,j}` with the convention `mbar_{i+1,0} = e_i`.
    pub fn mbar(i: u32, j: u32) -> Result<Generator> {
        if j == 0 {
            if i == 0 {
                return Err(Error::ClassicalIndexZero);
            }
            make_generator(GeneratorKind::Classical, &[i as i64 - 1])
        } else {
            make_generator(GeneratorKind::Twisted, &[i as i64, j as i64])
        }
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "e({i})"),
            Generator::M(i, j) => write!(f, "mbar({i},{j})"),
        }
    }
}

/// Validates indices; `Classical` takes `[i]`, `Twisted` takes `[i, j]`.
pub fn make_generator(kind: GeneratorKind, indices: &[i64]) -> Result<Generator> {
    if let Some(&neg) = indices.iter().find(|&&v| v < 0) {
        return Err(Error::NegativeIndex(neg));
    }
    match (kind, indices) {
        (GeneratorKind::Classical, &[i]) => {
            if i == 0 {
                Err(Error::ClassicalIndexZero)
            } else {
                Ok(Generator::E(to_u32(i)?))
            }
        }
        (GeneratorKind::Twisted, &[i, j]) => {
            if j == 0 {
                Err(Error::TwistedWeightZero)
            } else if i + j < 2 {
                Err(Error::TwistedBelowRange)
            } else {
                Ok(Generator::M(to_u32(i)?, to_u32(j)?))
            }
        }
        _ => Err(Error::IndexRange(format!(
            "{kind:?} generator takes {} indices",
            if kind == GeneratorKind::Classical { 1 } else { 2 }
        ))),
    }
}

fn to_u32(v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::IndexRange(format!("index {v} too large")))
}

/// The coordinate `x_{n,k}`: `mbar_{n-k,k}`, with `x_{n,0} = e_{n-1}`.
pub fn x_alias(n: i64, k: i64) -> Result<Generator> {
    if n < 0 || k < 0 {
        return Err(Error::NegativeIndex(n.min(k)));
    }
    if k > n {
        return Err(Error::IndexRange(format!("x({n},{k}) needs k <= n")));
    }
    if k == 0 {
        make_generator(GeneratorKind::Classical, &[n - 1])
    } else {
        make_generator(GeneratorKind::Twisted, &[n - k, k])
    }
}
