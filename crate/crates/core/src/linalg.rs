//! Exact sparse linear algebra over the rationals.
//!
//! Elimination runs on integer rows: each row is scaled to a primitive integer
//! vector before it enters, and every combination is divided by its content
//! again. Rows are turned back into rationals with unit pivots at the end.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

type IntRow = Vec<(usize, BigInt)>;

/// Row-major sparse matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zero(n, n);
        for (k, row) in m.data.iter_mut().enumerate() {
            row.push((k, Rational::one()));
        }
        m
    }

    /// Duplicate positions are summed; zero results are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (r, c, q) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc.entry((r, c)).or_insert_with(Rational::zero) += q;
        }
        let mut data = vec![Vec::new(); rows];
        for ((r, c), q) in acc {
            if !q.is_zero() {
                data[r].push((c, q));
            }
        }
        SparseMatrix { rows, cols, data }
    }

    /// Builds from columns given as sparse vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, q) in col {
                assert!(*r < rows);
                if !q.is_zero() {
                    data[*r].push((c, q.clone()));
                }
            }
        }
        SparseMatrix { rows, cols: columns.len(), data }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, &x)| (r, c, Rational::from_integer(BigInt::from(x))))
        });
        SparseMatrix::from_triplets(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by(|p| p.0.cmp(&c)) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Entries sorted by (row, column).
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, q)| (r, *c, q)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, c, q) in self.entries() {
            data[c].push((r, q.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn scale(&self, s: &Rational) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zero(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(c, q)| (*c, q * s)).collect())
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let x = sparse_dot(row, v);
            if !x.is_zero() {
                out.push((r, x));
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_insert_with(Rational::zero) += a * b;
                }
            }
            data.push(acc.into_iter().filter(|(_, q)| !q.is_zero()).collect());
        }
        SparseMatrix { rows: self.rows, cols: other.cols, data }
    }
}

pub fn sparse_dot(a: &SparseVec, b: &SparseVec) -> Rational {
    let (mut i, mut j) = (0, 0);
    let mut s = Rational::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

/// `a + s * b`.
pub fn sparse_axpy(a: &SparseVec, s: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let q = s * &b[j].1;
            if !q.is_zero() {
                out.push((b[j].0, q));
            }
            j += 1;
        } else {
            let q = &a[i].1 + s * &b[j].1;
            if !q.is_zero() {
                out.push((a[i].0, q));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<Rational> {
    let mut d = vec![Rational::zero(); n];
    for (k, q) in v {
        d[*k] = q.clone();
    }
    d
}

pub fn from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(k, q)| (k, q.clone()))
        .collect()
}

fn to_int_row(v: &SparseVec) -> IntRow {
    let l = v.iter().fold(BigInt::one(), |l, (_, q)| l.lcm(q.denom()));
    let mut row: IntRow = v
        .iter()
        .map(|(c, q)| (*c, q.numer() * (&l / q.denom())))
        .collect();
    make_primitive(&mut row);
    row
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn entry_at(row: &IntRow, c: usize) -> Option<&BigInt> {
    row.binary_search_by(|p| p.0.cmp(&c)).ok().map(|k| &row[k].1)
}

/// Clears column `c` of `r` using `p`, whose entry at `c` is nonzero.
fn eliminate(r: &IntRow, p: &IntRow, c: usize) -> IntRow {
    let b = entry_at(r, c).expect("row has no entry at pivot column");
    let a = entry_at(p, c).expect("pivot row has no entry at pivot column");
    let g = a.gcd(b);
    let (a, b) = (a / &g, b / &g);
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, &a * &r[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(&b * &p[j].1)));
            j += 1;
        } else {
            let x = &a * &r[i].1 - &b * &p[j].1;
            if !x.is_zero() {
                out.push((r[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Forward elimination: pivot column -> primitive integer row with that leading column.
fn forward<'a, I: Iterator<Item = &'a SparseVec>>(rows: I) -> BTreeMap<usize, IntRow> {
    let mut piv: BTreeMap<usize, IntRow> = BTreeMap::new();
    for v in rows {
        let mut r = to_int_row(v);
        while let Some(&(c, _)) = r.first() {
            match piv.get(&c) {
                Some(p) => r = eliminate(&r, p, c),
                None => {
                    piv.insert(c, r);
                    break;
                }
            }
        }
    }
    piv
}

/// Reduced row echelon form: pivots strictly increasing, pivot entries 1,
/// pivot columns zero in every other row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonForm {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

impl EchelonForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn rref_of_rows<'a, I: Iterator<Item = &'a SparseVec>>(cols: usize, rows: I) -> EchelonForm {
    let piv = forward(rows);
    let mut rows: Vec<(usize, IntRow)> = piv.into_iter().collect();
    for k in (0..rows.len()).rev() {
        let (ck, rk) = {
            let (c, r) = &rows[k];
            (*c, r.clone())
        };
        for q in 0..k {
            if entry_at(&rows[q].1, ck).is_some() {
                rows[q].1 = eliminate(&rows[q].1, &rk, ck);
            }
        }
    }
    let mut pivots = Vec::with_capacity(rows.len());
    let mut out = Vec::with_capacity(rows.len());
    for (c, r) in rows {
        let lead = r[0].1.clone();
        out.push(
            r.into_iter()
                .map(|(j, x)| (j, Rational::new(x, lead.clone())))
                .collect(),
        );
        pivots.push(c);
    }
    EchelonForm { cols, pivots, rows: out }
}

/// Canonical RREF of `m`. The echelon form is unique, so the result does not
/// depend on the elimination order.
pub fn rref(m: &SparseMatrix) -> EchelonForm {
    rref_of_rows(m.cols, m.data.iter())
}

pub fn rank(m: &SparseMatrix) -> usize {
    // eliminate along the shorter side
    if m.rows <= m.cols {
        forward(m.data.iter()).len()
    } else {
        forward(m.transpose().data.iter()).len()
    }
}

/// Kernel basis read off the RREF: one vector per free column `f`, equal to 1
/// at `f` and 0 at every other free column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub ambient: usize,
    pub free_cols: Vec<usize>,
    pub vectors: Vec<SparseVec>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of a kernel element in this basis.
    pub fn coords(&self, v: &SparseVec) -> Vec<Rational> {
        self.free_cols
            .iter()
            .map(|f| match v.binary_search_by(|p| p.0.cmp(f)) {
                Ok(k) => v[k].1.clone(),
                Err(_) => Rational::zero(),
            })
            .collect()
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut w = v.clone();
        for (x, b) in self.coords(v).iter().zip(&self.vectors) {
            if !x.is_zero() {
                w = sparse_axpy(&w, &-x.clone(), b);
            }
        }
        w.is_empty()
    }

    pub fn as_subspace(&self) -> SubspaceBasis {
        SubspaceBasis::from_vectors(self.ambient, &self.vectors)
    }
}

pub fn kernel_basis(m: &SparseMatrix) -> KernelBasis {
    let ech = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let free_cols: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let mut slot = vec![usize::MAX; m.cols];
    for (k, &f) in free_cols.iter().enumerate() {
        slot[f] = k;
    }
    let mut vectors: Vec<SparseVec> = free_cols
        .iter()
        .map(|&f| vec![(f, Rational::one())])
        .collect();
    for (p, row) in ech.pivots.iter().zip(&ech.rows) {
        for (c, x) in row.iter().skip(1) {
            vectors[slot[*c]].push((*p, -x.clone()));
        }
    }
    for v in &mut vectors {
        v.sort_by_key(|e| e.0);
        assert!(m.mul_vec(v).is_empty(), "kernel vector not annihilated");
    }
    assert_eq!(vectors.len() + ech.rank(), m.cols, "rank-nullity violated");
    KernelBasis { ambient: m.cols, free_cols, vectors }
}

/// Span of a set of vectors, kept in RREF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient: usize,
    pub echelon: EchelonForm,
}

impl SubspaceBasis {
    pub fn from_vectors(ambient: usize, vectors: &[SparseVec]) -> Self {
        SubspaceBasis { ambient, echelon: rref_of_rows(ambient, vectors.iter()) }
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Canonical representative of `v + span`: supported off the pivot columns.
    pub fn reduce_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        for (p, row) in self.echelon.pivots.iter().zip(&self.echelon.rows) {
            if let Ok(k) = v.binary_search_by(|e| e.0.cmp(p)) {
                w = sparse_axpy(&w, &-v[k].1.clone(), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_sparse(v).is_empty()
    }
}

/// Dense front end for [`SubspaceBasis::reduce_sparse`].
pub fn reduce_mod(v: &[Rational], s: &SubspaceBasis) -> Result<Vec<Rational>> {
    if v.len() != s.ambient {
        return Err(Error::DimensionMismatch { expected: s.ambient, got: v.len() });
    }
    Ok(to_dense(&s.reduce_sparse(&from_dense(v)), s.ambient))
}

/// Quotient of the codomain by the column space.
///
/// Representatives are the standard basis vectors at the non-pivot
/// coordinates of the image's RREF, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub ambient: usize,
    pub image: SubspaceBasis,
    pub reps: Vec<usize>,
    slot: Vec<Option<usize>>,
}

impl Cokernel {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `v` in the representative basis.
    pub fn reduce(&self, v: &SparseVec) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.reps.len()];
        for (c, q) in self.image.reduce_sparse(v) {
            let k = self.slot[c].expect("reduced vector has a pivot coordinate");
            out[k] = q;
        }
        out
    }

    pub fn is_zero_class(&self, v: &SparseVec) -> bool {
        self.image.contains(v)
    }
}

pub fn cokernel(m: &SparseMatrix) -> Cokernel {
    let image = SubspaceBasis::from_vectors(m.rows, &m.columns());
    let mut slot = vec![None; m.rows];
    let mut is_pivot = vec![false; m.rows];
    for &p in &image.echelon.pivots {
        is_pivot[p] = true;
    }
    let reps: Vec<usize> = (0..m.rows).filter(|&r| !is_pivot[r]).collect();
    for (k, &r) in reps.iter().enumerate() {
        slot[r] = Some(k);
    }
    assert_eq!(reps.len() + image.dim(), m.rows, "rank-nullity violated on cokernel");
    Cokernel { ambient: m.rows, image, reps, slot }
}
