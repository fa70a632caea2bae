//! The filtration of the weight-`d` piece by the number of twisted factors.

use crate::algebra::{basis, Bidegree, Monomial, Polynomial};
use crate::derivation::apply_d_monomial;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec, SubspaceBasis};

/// `D` restricted to explicit lists of domain and codomain monomials.
#[derive(Clone, Debug)]
pub struct FilteredMap {
    pub d: u32,
    pub k: u32,
    pub degree: u32,
    pub domain: Vec<Monomial>,
    pub codomain: Vec<Monomial>,
    pub matrix: SparseMatrix,
}

fn restricted(d: u32, k: u32, i: u32, keep: impl Fn(&Monomial) -> bool, exact: bool) -> FilteredMap {
    let domain: Vec<Monomial> = basis(Bidegree::new(i, d)).monomials().iter().filter(|m| keep(m)).cloned().collect();
    let codomain: Vec<Monomial> = if d == 0 {
        Vec::new()
    } else {
        basis(Bidegree::new(i + 1, d - 1)).monomials().iter().filter(|m| keep(m)).cloned().collect()
    };
    let pos: std::collections::HashMap<&Monomial, usize> =
        codomain.iter().enumerate().map(|(r, m)| (m, r)).collect();
    let mut entries = Vec::new();
    for (c, m) in domain.iter().enumerate() {
        for (img, q) in apply_d_monomial(m).terms() {
            match pos.get(img) {
                Some(&r) => entries.push((r, c, q.clone())),
                // only the quotient map may drop terms, and only shorter ones
                None => assert!(exact && img.mbar_length() < k + 1, "D left the filtration level"),
            }
        }
    }
    let matrix = SparseMatrix::from_triplets(codomain.len(), domain.len(), entries);
    FilteredMap { d, k, degree: i, domain, codomain, matrix }
}

/// `D` on `F_k` at degree `i` and weight `d`, and the induced map on `F_k / F_{k-1}`.
pub fn filtered_operator(d: u32, k: u32, i: u32) -> (FilteredMap, FilteredMap) {
    let level = k + 1;
    let fk = restricted(d, k, i, |m| m.mbar_length() <= level, false);
    let quot = restricted(d, k, i, |m| m.mbar_length() == level, true);
    (fk, quot)
}

/// Whether `p` (weight `d - 1`, supported in `F_k`) lies in `D(F_k)`.
pub fn filtered_coker_is_zero(d: u32, k: u32, p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let b = p.bidegree().ok_or(Error::Inhomogeneous)?;
    if b.weight + 1 != d {
        return Err(Error::BidegreeMismatch {
            expected: format!("weight {}", d - 1),
            found: b.to_string(),
        });
    }
    if b.degree == 0 {
        return Ok(false);
    }
    let (fk, _) = filtered_operator(d, k, b.degree - 1);
    let mut v: SparseVec = Vec::new();
    for (m, q) in p.terms() {
        let r = fk.codomain.iter().position(|c| c == m).ok_or_else(|| {
            Error::IndexRange(format!("{m} is not in filtration level {k}"))
        })?;
        v.push((r, q.clone()));
    }
    v.sort_by_key(|e| e.0);
    let image = SubspaceBasis::from_vectors(fk.codomain.len(), &fk.matrix.columns());
    Ok(image.contains(&v))
}
