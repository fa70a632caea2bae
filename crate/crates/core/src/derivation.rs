//! The contraction derivation `D`, multiplication by `mbar_{1,1}`, and the
//! named kernel elements `xbar`, `xhat`, `y`.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::algebra::serial::bidegree_json;
use crate::algebra::{
    basis, convert_barred_unbarred, format_rational, rat, x_alias, BasisTable, Bidegree, Direction,
    Generator, Monomial, Polynomial, Rational,
};
use crate::error::{Error, Result};
use crate::exec::{map_vec, Exec};
use crate::linalg::SparseMatrix;

/// `D(mbar_{i,j}) = mbar_{i+1,j-1}`, `D(mbar_{i,1}) = e_i`, `D(e_i) = 0`.
pub fn d_generator(g: Generator) -> Option<Generator> {
    match g {
        Generator::E(_) => None,
        Generator::M(i, 1) => Some(Generator::E(i)),
        Generator::M(i, j) => Some(Generator::M(i + 1, j - 1)),
    }
}

pub fn apply_d_monomial(m: &Monomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for &(g, e) in m.factors() {
        if let Some(h) = d_generator(g) {
            let rest = m.div_gen(g).expect("factor present").mul_gen(h);
            out.add_term(rest, Rational::from_integer(e.into()));
        }
    }
    out
}

/// Unsigned Leibniz extension of [`d_generator`].
pub fn apply_d(p: &Polynomial) -> Polynomial {
    p.map_monomials(apply_d_monomial)
}

/// `D` written in unbarred classes `m_{i,j}`; input and output are read unbarred.
pub fn contraction_unbarred(p: &Polynomial) -> Polynomial {
    let barred = convert_barred_unbarred(p, Direction::ToBarred);
    convert_barred_unbarred(&apply_d(&barred), Direction::ToUnbarred)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    ContractionD,
    MultM11,
}

impl OperatorKind {
    /// Codomain bidegree, or `None` when it would have negative weight.
    pub fn target(self, b: Bidegree) -> Option<Bidegree> {
        match self {
            OperatorKind::ContractionD if b.weight == 0 => None,
            OperatorKind::ContractionD => Some(Bidegree::new(b.degree + 1, b.weight - 1)),
            OperatorKind::MultM11 => Some(Bidegree::new(b.degree + 1, b.weight + 1)),
        }
    }

    pub fn apply(self, p: &Polynomial) -> Polynomial {
        match self {
            OperatorKind::ContractionD => apply_d(p),
            OperatorKind::MultM11 => p * &Polynomial::gen(Generator::M(1, 1)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::ContractionD => "contraction",
            OperatorKind::MultM11 => "mult-m11",
        }
    }
}

/// Matrix of an operator between two bidegree bases; column `c` is the image
/// of the `c`-th domain monomial.
#[derive(Clone, Debug)]
pub struct LinearMap {
    pub domain: Arc<BasisTable>,
    pub codomain: Arc<BasisTable>,
    pub matrix: SparseMatrix,
}

impl LinearMap {
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .matrix
            .entries()
            .map(|(r, c, q)| json!([r, c, format_rational(q)]))
            .collect();
        json!({
            "domain": {"bidegree": bidegree_json(self.domain.bidegree), "hash": self.domain.hash()},
            "codomain": {"bidegree": bidegree_json(self.codomain.bidegree), "hash": self.codomain.hash()},
            "entries": entries,
        })
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let v = self.domain.to_vector(p)?;
        Ok(self.codomain.from_vector(&self.matrix.mul_vec(&v)))
    }
}

/// Matrix of `kind` on the piece of degree `i` and weight `d`.
pub fn operator_matrix(kind: OperatorKind, d: u32, i: u32) -> LinearMap {
    operator_matrix_with(Exec::default(), kind, d, i)
}

pub fn operator_matrix_with(exec: Exec, kind: OperatorKind, d: u32, i: u32) -> LinearMap {
    let src = Bidegree::new(i, d);
    let domain = basis(src);
    let codomain = match kind.target(src) {
        Some(t) => basis(t),
        // weight -1: the zero space
        None => Arc::new(BasisTable::empty(Bidegree::new(i + 1, 0))),
    };
    let cols: Vec<Vec<(usize, Rational)>> = map_vec(exec, (0..domain.len()).collect(), |c| {
        let img = kind.apply(&Polynomial::monomial(domain.get(c).clone(), rat(1, 1)));
        let mut col: Vec<(usize, Rational)> = img
            .terms()
            .map(|(m, q)| {
                assert_eq!(m.bidegree(), codomain.bidegree, "operator broke the grading");
                (codomain.position(m).expect("image monomial in codomain basis"), q.clone())
            })
            .collect();
        col.sort_by_key(|e| e.0);
        col
    });
    let matrix = SparseMatrix::from_columns(codomain.len(), &cols);
    LinearMap { domain, codomain, matrix }
}

fn x(n: u32, k: u32) -> Polynomial {
    Polynomial::gen(x_alias(n as i64, k as i64).expect("valid x index"))
}

fn c(n: i64) -> Rational {
    rat(n, 1)
}

fn sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_n(n: u32, k: u32) -> Result<()> {
    if n < 2 || k > n {
        return Err(Error::IndexRange(format!("need n >= 2 and k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `xbar_{n,k}` in barred classes. `xbar_{n,1} = x_{n,1}`.
pub fn bar_x(n: u32, k: u32) -> Result<Polynomial> {
    check_n(n, k)?;
    if k == 0 {
        return Err(Error::IndexRange("xbar needs k >= 1".into()));
    }
    if k == 1 {
        return Ok(x(n, 1));
    }
    let l = k / 2;
    if k % 2 == 0 {
        let mut p = x(n, l).pow(2);
        for i in 0..l {
            p = p + (x(n, i) * x(n, k - i)).scale(&c(2 * sign(l + i)));
        }
        Ok(p)
    } else {
        Ok(x(n, 1) * bar_x(n, 2 * l)? - x(n, 0) * hat_x(n, k)?)
    }
}

/// `xhat_{n,2l+1}`, the preimage of `xbar_{n,2l}` under `D`.
pub fn hat_x(n: u32, k: u32) -> Result<Polynomial> {
    check_n(n, k)?;
    if k % 2 == 0 {
        return Err(Error::IndexRange(format!("xhat needs an odd index, got {k}")));
    }
    let l = k / 2;
    let mut p = x(n, l) * x(n, l + 1);
    for i in 0..l {
        let coeff = sign(l + i) * (2 * (l - i) + 1) as i64;
        p = p + (x(n, i) * x(n, k - i)).scale(&c(coeff));
    }
    Ok(p)
}

/// `y_n = x_{2,0} x_{n,1} - x_{n,0} x_{2,1} = e_1 mbar_{n-1,1} - e_{n-1} mbar_{1,1}`.
pub fn y(n: u32) -> Result<Polynomial> {
    if n < 3 {
        return Err(Error::IndexRange(format!("y_n needs n >= 3, got {n}")));
    }
    Ok(x(2, 0) * x(n, 1) - x(n, 0) * x(2, 1))
}

/// Versions of named elements exactly as they are displayed in the source
/// text. They are only used to report what `D` does to them.
pub mod printed {
    use super::*;

    /// `x_{n,1}^2 + 2 x_{n,0}^2`.
    pub fn bar_x2(n: u32) -> Polynomial {
        x(n, 1).pow(2) + x(n, 0).pow(2).scale(&c(2))
    }

    /// `x_{n,1}^3 + 2x_{n,0}^2x_{n,1} - x_{n,0}x_{n,1}x_{n,2} - 3x_{n,0}^2x_{n,3}`.
    pub fn bar_x3(n: u32) -> Polynomial {
        x(n, 1).pow(3) + (x(n, 0).pow(2) * x(n, 1)).scale(&c(2))
            - x(n, 0) * x(n, 1) * x(n, 2)
            - (x(n, 0).pow(2) * x(n, 3)).scale(&c(3))
    }

    /// `mbar_{n-l,l}^2 + 2 sum_{k<l} mbar_{n-k,k} mbar_{n-2l+k,2l-k}` with no alternating sign.
    pub fn bar_x_even_image(n: u32, l: u32) -> Polynomial {
        let mut p = x(n, l).pow(2);
        for k in 0..l {
            p = p + (x(n, k) * x(n, 2 * l - k)).scale(&c(2));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(i: u32, j: u32) -> Polynomial {
        Polynomial::gen(Generator::M(i, j))
    }

    fn e(i: u32) -> Polynomial {
        Polynomial::gen(Generator::E(i))
    }

    #[test]
    fn generator_images() {
        assert_eq!(apply_d(&m(3, 2)), m(4, 1));
        assert_eq!(apply_d(&(m(1, 1) * m(2, 1))), e(1) * m(2, 1) + e(2) * m(1, 1));
        assert!(apply_d(&e(2).pow(3)).is_zero());
    }

    #[test]
    fn y3_value() {
        assert_eq!(y(3).unwrap(), e(1) * m(2, 1) - e(2) * m(1, 1));
    }

    #[test]
    fn index_errors() {
        assert!(bar_x(1, 1).is_err());
        assert!(bar_x(3, 4).is_err());
        assert!(hat_x(5, 2).is_err());
        assert!(y(2).is_err());
    }

    #[test]
    fn empty_codomain_at_weight_zero() {
        let f = operator_matrix(OperatorKind::ContractionD, 0, 4);
        assert_eq!(f.codomain.len(), 0);
        assert_eq!(f.matrix.cols(), f.domain.len());
    }
}
