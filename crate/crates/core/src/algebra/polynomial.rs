use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::generator::{Bidegree, Generator};
use super::monomial::Monomial;
use super::rational::{format_rational, Rational};

/// Sparse exact-rational combination of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::monomial(Monomial::one(), Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn gen(g: Generator) -> Self {
        Polynomial::monomial(Monomial::gen(g), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common bidegree of all terms, `None` for zero or inhomogeneous input.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(|m| m.bidegree());
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to each monomial and sums the images scaled by the coefficients.
    pub fn map_monomials<F: FnMut(&Monomial) -> Polynomial>(&self, mut f: F) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (k, x) in f(m).terms {
                out.add_term(k, x * c);
            }
        }
        out
    }

    /// Expression-syntax rendering with barred names.
    pub fn to_expr(&self) -> String {
        self.render(false)
    }

    /// Expression-syntax rendering in unbarred classes `m(i,j)`.
    pub fn to_unbarred_expr(&self) -> String {
        convert_barred_unbarred(self, Direction::ToUnbarred).render(true)
    }

    fn render(&self, unbarred: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, unbarred);
            if m.is_one() {
                s.push_str(&format_rational(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format_rational(&a));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

fn render_monomial(m: &Monomial, unbarred: bool) -> String {
    let parts: Vec<String> = m
        .factors()
        .iter()
        .map(|&(g, e)| {
            let name = match g {
                Generator::E(i) => format!("e({i})"),
                Generator::M(i, j) if unbarred => format!("m({i},{j})"),
                Generator::M(i, j) => format!("mbar({i},{j})"),
            };
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -(&self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Reinterpret twisted factors as unbarred `m_{i,j}` and rewrite in barred classes.
    ToBarred,
    /// Rewrite a barred polynomial in unbarred classes.
    ToUnbarred,
}

/// `mbar_{i,j} = ((-1)^j / j!) m_{i,j}`, extended multiplicatively.
///
/// Both sides share the monomial type; only the coefficients change. A
/// monomial read in unbarred classes equals `factor(m)` times the same
/// monomial read in barred classes.
pub fn convert_barred_unbarred(p: &Polynomial, dir: Direction) -> Polynomial {
    Polynomial::from_terms(p.terms().map(|(m, c)| {
        let f = unbarred_factor(m);
        let c = match dir {
            Direction::ToBarred => c * f,
            Direction::ToUnbarred => c / f,
        };
        (m.clone(), c)
    }))
}

/// Product over twisted factors of `((-1)^j j!)^exp`.
fn unbarred_factor(m: &Monomial) -> Rational {
    let mut f = BigInt::one();
    for &(g, e) in m.factors() {
        if let Generator::M(_, j) = g {
            let mut x: BigInt = (1..=j).map(BigInt::from).product();
            if j % 2 == 1 {
                x = -x;
            }
            for _ in 0..e {
                f *= &x;
            }
        }
    }
    Rational::from_integer(f)
}
