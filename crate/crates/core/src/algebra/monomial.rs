use std::cmp::Ordering;
use std::fmt;

use super::generator::{Bidegree, Generator};

/// Product of generators with positive exponents, stored sorted by the
/// generator order.
///
/// Monomials compare lexicographically on their exponent vectors over the
/// generator order (a larger exponent on an earlier generator is larger).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(g: Generator) -> Self {
        Monomial(vec![(g, 1)])
    }

    pub fn gen_pow(g: Generator, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g, e)])
        }
    }

    /// Builds from arbitrary (generator, exponent) pairs, merging repeats and
    /// dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Generator, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(Generator, u32)> = pairs.into_iter().filter(|p| p.1 > 0).collect();
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(Generator, u32)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == g => last.1 += e,
                _ => out.push((g, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        self.0
            .binary_search_by(|p| p.0.cmp(&g))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn bidegree(&self) -> Bidegree {
        self.0.iter().fold(Bidegree::ZERO, |acc, (g, e)| {
            let b = g.bidegree();
            Bidegree::new(acc.degree + e * b.degree, acc.weight + e * b.weight)
        })
    }

    pub fn total_degree(&self) -> u32 {
        self.bidegree().degree
    }

    /// Number of twisted factors counted with multiplicity.
    pub fn mbar_length(&self) -> u32 {
        self.0.iter().filter(|p| p.0.is_twisted()).map(|p| p.1).sum()
    }

    /// True when only classical classes occur.
    pub fn is_classical(&self) -> bool {
        self.0.iter().all(|p| !p.0.is_twisted())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn mul_gen(&self, g: Generator) -> Monomial {
        self.mul(&Monomial::gen(g))
    }

    /// Removes one factor `g`; `None` if `g` does not divide.
    pub fn div_gen(&self, g: Generator) -> Option<Monomial> {
        let k = self.0.binary_search_by(|p| p.0.cmp(&g)).ok()?;
        let mut v = self.0.clone();
        if v[k].1 == 1 {
            v.remove(k);
        } else {
            v[k].1 -= 1;
        }
        Some(Monomial(v))
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(g, x)| (g, x * e)).collect())
    }

    /// Splits into (classical part, twisted part).
    pub fn split(&self) -> (Monomial, Monomial) {
        let (e, m): (Vec<_>, Vec<_>) = self.0.iter().partition(|p| !p.0.is_twisted());
        (Monomial(e), Monomial(m))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.0.cmp(&y.0) {
                // `self` has a positive exponent where `other` has zero.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match x.1.cmp(&y.1) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        a.len().cmp(&b.len())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}
