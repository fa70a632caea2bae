//! Kernels and cokernels of the contraction derivation and of
//! multiplication by `mbar_{1,1}`, degree by degree, with the induced action
//! of the classes `e_k`.

mod filtration;
pub mod verify;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::serial::{bidegree_json, polynomial_json};
use crate::algebra::{basis, e_monomials, BasisTable, Bidegree, Generator, Monomial, Polynomial, Rational};
use crate::derivation::{operator_matrix_with, LinearMap, OperatorKind};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{cokernel, kernel_basis, Cokernel, KernelBasis, SparseMatrix, SparseVec};

pub use filtration::{filtered_coker_is_zero, filtered_operator, FilteredMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Covariant,
    Contravariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceKind {
    Kernel,
    Cokernel,
}

#[derive(Clone, Debug)]
pub enum Space {
    Kernel(KernelBasis),
    Cokernel(Cokernel),
}

/// One graded piece of a kernel or cokernel, together with the map it came from.
#[derive(Clone, Debug)]
pub struct CohomologyPiece {
    pub d: u32,
    pub degree: u32,
    pub variant: Variant,
    pub kind: PieceKind,
    pub map: LinearMap,
    pub space: Space,
}

impl CohomologyPiece {
    fn new(d: u32, degree: u32, variant: Variant, kind: PieceKind, map: LinearMap) -> Self {
        let space = match kind {
            PieceKind::Kernel => Space::Kernel(kernel_basis(&map.matrix)),
            PieceKind::Cokernel => Space::Cokernel(cokernel(&map.matrix)),
        };
        CohomologyPiece { d, degree, variant, kind, map, space }
    }

    /// The space the classes live in: the domain for kernels, the codomain for cokernels.
    pub fn ambient(&self) -> &Arc<BasisTable> {
        match self.kind {
            PieceKind::Kernel => &self.map.domain,
            PieceKind::Cokernel => &self.map.codomain,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.space {
            Space::Kernel(k) => k.dim(),
            Space::Cokernel(c) => c.dim(),
        }
    }

    pub fn rank(&self) -> usize {
        match &self.space {
            Space::Kernel(k) => self.map.domain.len() - k.dim(),
            Space::Cokernel(c) => c.image.dim(),
        }
    }

    /// The `k`-th basis class as a vector over [`Self::ambient`].
    pub fn class_vector(&self, k: usize) -> SparseVec {
        match &self.space {
            Space::Kernel(kb) => kb.vectors[k].clone(),
            Space::Cokernel(c) => vec![(c.reps[k], Rational::from_integer(1.into()))],
        }
    }

    pub fn class_polynomial(&self, k: usize) -> Polynomial {
        self.ambient().from_vector(&self.class_vector(k))
    }

    pub fn classes(&self) -> Vec<Polynomial> {
        (0..self.dim()).map(|k| self.class_polynomial(k)).collect()
    }

    /// Coordinates of an ambient vector: of its class for cokernels, in the
    /// kernel basis for kernels.
    pub fn coords_of_vector(&self, v: &SparseVec) -> Result<Vec<Rational>> {
        match &self.space {
            Space::Kernel(kb) => {
                if !kb.contains(v) {
                    return Err(Error::NotInKernel);
                }
                Ok(kb.coords(v))
            }
            Space::Cokernel(c) => Ok(c.reduce(v)),
        }
    }

    pub fn coords(&self, p: &Polynomial) -> Result<Vec<Rational>> {
        let v = self.ambient().to_vector(p)?;
        self.coords_of_vector(&v)
    }

    /// Whether `p` represents zero (in the quotient, for cokernels).
    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.coords(p)?.iter().all(Zero::is_zero))
    }

    /// Recomputes the kernel or cokernel of the negated map and compares.
    pub fn scale_invariant(&self) -> bool {
        let neg = self.map.matrix.scale(&Rational::from_integer((-1).into()));
        match &self.space {
            Space::Kernel(k) => kernel_basis(&neg) == *k,
            Space::Cokernel(c) => cokernel(&neg) == *c,
        }
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self.classes().iter().map(polynomial_json).collect();
        json!({
            "d": self.d,
            "degree": self.degree,
            "variant": match self.variant { Variant::Covariant => "covariant", Variant::Contravariant => "contravariant" },
            "kind": match self.kind { PieceKind::Kernel => "ker", PieceKind::Cokernel => "coker" },
            "ambient": {"bidegree": bidegree_json(self.ambient().bidegree), "hash": self.ambient().hash(), "size": self.ambient().len()},
            "rank": self.rank(),
            "dim": self.dim(),
            "classes": classes,
        })
    }
}

/// Map out of an empty domain, used for degree 0 cokernels.
fn from_nothing(codomain: Bidegree, d_domain: u32) -> LinearMap {
    let codomain = basis(codomain);
    LinearMap {
        domain: Arc::new(BasisTable::empty(Bidegree::new(0, d_domain))),
        matrix: SparseMatrix::zero(codomain.len(), 0),
        codomain,
    }
}

fn check_parity(d: u32, degree: u32, kind: PieceKind) -> Result<()> {
    if d == 0 {
        return Err(Error::IndexRange("d must be at least 1".into()));
    }
    let want = match kind {
        PieceKind::Kernel => d % 2,
        PieceKind::Cokernel => (d + 1) % 2,
    };
    if degree % 2 != want {
        let what = match kind {
            PieceKind::Kernel => "kernel pieces need degree = d mod 2",
            PieceKind::Cokernel => "cokernel pieces need degree = d + 1 mod 2",
        };
        return Err(Error::Parity { d, degree, what });
    }
    Ok(())
}

/// Uncached covariant piece: kernel of `D` on `(i, d)`, or cokernel of `D`
/// from `(m - 1, d)` into `(m, d - 1)`.
pub fn covariant_piece_with(exec: Exec, kind: PieceKind, d: u32, degree: u32) -> Result<CohomologyPiece> {
    check_parity(d, degree, kind)?;
    let map = match (kind, degree) {
        (PieceKind::Kernel, i) => operator_matrix_with(exec, OperatorKind::ContractionD, d, i),
        (PieceKind::Cokernel, 0) => from_nothing(Bidegree::new(0, d - 1), d),
        (PieceKind::Cokernel, m) => operator_matrix_with(exec, OperatorKind::ContractionD, d, m - 1),
    };
    Ok(CohomologyPiece::new(d, degree, Variant::Covariant, kind, map))
}

/// Uncached contravariant pieces at `(i, d)`: kernel and cokernel of
/// multiplication by `mbar_{1,1}` from `(i - 1, d - 1)`.
pub fn contra_pieces_with(exec: Exec, d: u32, i: u32) -> Result<(CohomologyPiece, CohomologyPiece)> {
    if d == 0 {
        return Err(Error::IndexRange("d must be at least 1".into()));
    }
    let map = if i == 0 {
        from_nothing(Bidegree::new(0, d), d - 1)
    } else {
        operator_matrix_with(exec, OperatorKind::MultM11, d - 1, i - 1)
    };
    let ker = CohomologyPiece::new(d, i, Variant::Contravariant, PieceKind::Kernel, map.clone());
    let coker = CohomologyPiece::new(d, i, Variant::Contravariant, PieceKind::Cokernel, map);
    Ok((ker, coker))
}

type Key = (Variant, PieceKind, u32, u32);
type Memo = RwLock<HashMap<Key, Arc<CohomologyPiece>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| RwLock::new(HashMap::new()))
}

fn memoized<F>(key: Key, build: F) -> Result<Arc<CohomologyPiece>>
where
    F: FnOnce() -> Result<CohomologyPiece>,
{
    if let Some(p) = memo().read().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let p = Arc::new(build()?);
    Ok(memo().write().unwrap().entry(key).or_insert(p).clone())
}

/// Covariant kernel piece at degree `i`, weight `d`.
pub fn ker_piece(d: u32, i: u32) -> Result<Arc<CohomologyPiece>> {
    memoized((Variant::Covariant, PieceKind::Kernel, d, i), || {
        covariant_piece_with(Exec::default(), PieceKind::Kernel, d, i)
    })
}

/// Covariant cokernel piece at degree `m`; it lives at weight `d - 1`.
pub fn coker_piece(d: u32, m: u32) -> Result<Arc<CohomologyPiece>> {
    memoized((Variant::Covariant, PieceKind::Cokernel, d, m), || {
        covariant_piece_with(Exec::default(), PieceKind::Cokernel, d, m)
    })
}

pub fn covariant_piece(kind: PieceKind, d: u32, degree: u32) -> Result<Arc<CohomologyPiece>> {
    match kind {
        PieceKind::Kernel => ker_piece(d, degree),
        PieceKind::Cokernel => coker_piece(d, degree),
    }
}

pub fn contra_pieces(d: u32, i: u32) -> Result<(Arc<CohomologyPiece>, Arc<CohomologyPiece>)> {
    let kk = (Variant::Contravariant, PieceKind::Kernel, d, i);
    let ck = (Variant::Contravariant, PieceKind::Cokernel, d, i);
    {
        let m = memo().read().unwrap();
        if let (Some(a), Some(b)) = (m.get(&kk), m.get(&ck)) {
            return Ok((a.clone(), b.clone()));
        }
    }
    let (a, b) = contra_pieces_with(Exec::default(), d, i)?;
    let mut m = memo().write().unwrap();
    let a = m.entry(kk).or_insert(Arc::new(a)).clone();
    let b = m.entry(ck).or_insert(Arc::new(b)).clone();
    Ok((a, b))
}

/// Matrix of multiplication by the E-monomial `v` from `src` to `tgt`
/// (`tgt.dim` rows, `src.dim` columns).
pub fn e_action_matrix(src: &CohomologyPiece, tgt: &CohomologyPiece, v: &Monomial) -> Result<SparseMatrix> {
    let mut cols = Vec::with_capacity(src.dim());
    for k in 0..src.dim() {
        let img = src.class_polynomial(k).mul_monomial(v);
        let coords = tgt.coords(&img)?;
        cols.push(crate::linalg::from_dense(&coords));
    }
    Ok(SparseMatrix::from_columns(tgt.dim(), &cols))
}

/// Action of `e_k` from one covariant piece to the piece `2k` degrees higher.
#[derive(Clone, Debug)]
pub struct EAction {
    pub k: u32,
    pub source_degree: u32,
    pub target_degree: u32,
    pub matrix: SparseMatrix,
}

pub fn e_action(piece: &CohomologyPiece, k: u32) -> Result<EAction> {
    if piece.variant != Variant::Covariant {
        return Err(Error::IndexRange("e_action is defined on covariant pieces".into()));
    }
    let target_degree = piece.degree + 2 * k;
    let tgt = covariant_piece(piece.kind, piece.d, target_degree)?;
    let matrix = e_action_matrix(piece, &tgt, &Monomial::gen(Generator::E(k))).map_err(|e| match e {
        Error::NotInKernel => panic!("e_{k} moved a kernel class out of the kernel"),
        e => e,
    })?;
    Ok(EAction { k, source_degree: piece.degree, target_degree, matrix })
}

/// Whether `v * p` is zero in the covariant cokernel for `d` (where `p` has
/// weight `d - 1`).
pub fn kills(d: u32, v: &Monomial, p: &Polynomial) -> Result<bool> {
    let q = p.mul_monomial(v);
    if q.is_zero() {
        return Ok(true);
    }
    let b = q.bidegree().ok_or(Error::Inhomogeneous)?;
    coker_piece(d, b.degree)?.is_zero(&q)
}

/// First E-monomial annihilating `p` in the covariant cokernel: by total
/// degree, and in canonical order within a degree.
pub fn torsion_witness_for(d: u32, p: &Polynomial, cap: u32) -> Result<Monomial> {
    for t in (2..=cap).step_by(2) {
        for v in e_monomials(t, None) {
            if kills(d, &v, p)? {
                return Ok(v);
            }
        }
    }
    Err(Error::WitnessCap(cap))
}

pub fn torsion_witness(piece: &CohomologyPiece, class: usize, cap: u32) -> Result<Monomial> {
    if piece.variant != Variant::Covariant || piece.kind != PieceKind::Cokernel {
        return Err(Error::IndexRange("torsion witnesses need a covariant cokernel piece".into()));
    }
    if class >= piece.dim() {
        return Err(Error::IndexRange(format!("class {class} out of {}", piece.dim())));
    }
    torsion_witness_for(piece.d, &piece.class_polynomial(class), cap)
}
