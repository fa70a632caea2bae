use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use sha2::{Digest, Sha256};

use super::generator::{Bidegree, Generator};
use super::monomial::Monomial;

/// All monomials of one bidegree in canonical order, with an inverse index.
#[derive(Debug, Clone)]
pub struct BasisTable {
    pub bidegree: Bidegree,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl BasisTable {
    pub fn from_sorted(bidegree: Bidegree, monomials: Vec<Monomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        BasisTable { bidegree, monomials, index }
    }

    pub fn empty(bidegree: Bidegree) -> Self {
        BasisTable::from_sorted(bidegree, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, k: usize) -> &Monomial {
        &self.monomials[k]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Short content hash used to label matrices in serialized output.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{}:{};", self.bidegree.degree, self.bidegree.weight));
        for m in &self.monomials {
            h.update(m.to_string());
            h.update(";");
        }
        hex::encode(&h.finalize()[..8])
    }
}

/// Generators that can occur in a monomial of bidegree at most `b`.
fn candidate_generators(b: Bidegree) -> Vec<Generator> {
    let mut gens: Vec<Generator> = (1..=b.degree / 2).map(Generator::E).collect();
    for j in 1..=b.weight {
        for i in 0.. {
            if i + j < 2 {
                continue;
            }
            let deg = 2 * i + j - 2;
            if deg > b.degree {
                break;
            }
            gens.push(Generator::M(i, j));
        }
    }
    gens.sort();
    gens
}

/// Exponent bound for `g` inside bidegree `b`.
fn max_exponent(g: Generator, b: Bidegree) -> u32 {
    let gb = g.bidegree();
    let by_deg = b.degree.checked_div(gb.degree).unwrap_or(u32::MAX);
    let by_wt = b.weight.checked_div(gb.weight).unwrap_or(u32::MAX);
    by_deg.min(by_wt)
}

/// The canonical monomial basis of the bidegree-`b` piece.
pub fn enumerate_basis(b: Bidegree) -> BasisTable {
    let gens = candidate_generators(b);
    let mut out = Vec::new();
    let mut stack: Vec<(Generator, u32)> = Vec::new();
    rec(&gens, 0, b, &mut stack, &mut out);
    out.sort();
    BasisTable::from_sorted(b, out)
}

fn rec(
    gens: &[Generator],
    k: usize,
    rest: Bidegree,
    stack: &mut Vec<(Generator, u32)>,
    out: &mut Vec<Monomial>,
) {
    if rest == Bidegree::ZERO {
        out.push(Monomial::from_pairs(stack.iter().copied()));
        return;
    }
    if k == gens.len() {
        return;
    }
    let g = gens[k];
    let gb = g.bidegree();
    for e in (0..=max_exponent(g, rest)).rev() {
        let next = Bidegree::new(rest.degree - e * gb.degree, rest.weight - e * gb.weight);
        if e > 0 {
            stack.push((g, e));
        }
        rec(gens, k + 1, next, stack, out);
        if e > 0 {
            stack.pop();
        }
    }
}

type Cache = RwLock<HashMap<Bidegree, Arc<BasisTable>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized [`enumerate_basis`], shared read-only across threads.
pub fn basis(b: Bidegree) -> Arc<BasisTable> {
    if let Some(t) = cache().read().unwrap().get(&b) {
        return t.clone();
    }
    let t = Arc::new(enumerate_basis(b));
    cache().write().unwrap().entry(b).or_insert(t).clone()
}

/// Monomials in `e_1..e_cap` of the given degree, canonical order.
/// `cap = None` allows every `e_i`.
pub fn e_monomials(degree: u32, cap: Option<u32>) -> Vec<Monomial> {
    let t = basis(Bidegree::new(degree, 0));
    match cap {
        None => t.monomials().to_vec(),
        Some(l) => t
            .monomials()
            .iter()
            .filter(|m| m.factors().iter().all(|(g, _)| matches!(g, Generator::E(i) if *i <= l)))
            .cloned()
            .collect(),
    }
}

impl BasisTable {
    /// Coordinates of a homogeneous polynomial in this basis.
    pub fn to_vector(&self, p: &super::Polynomial) -> crate::Result<crate::linalg::SparseVec> {
        if p.is_zero() {
            return Ok(Vec::new());
        }
        let b = p.bidegree().ok_or(crate::Error::Inhomogeneous)?;
        if b != self.bidegree {
            return Err(crate::Error::BidegreeMismatch {
                expected: self.bidegree.to_string(),
                found: b.to_string(),
            });
        }
        let mut v: Vec<_> = p
            .terms()
            .map(|(m, c)| (self.position(m).expect("monomial of matching bidegree"), c.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        Ok(v)
    }

    pub fn from_vector(&self, v: &crate::linalg::SparseVec) -> super::Polynomial {
        super::Polynomial::from_terms(v.iter().map(|(k, c)| (self.get(*k).clone(), c.clone())))
    }
}
