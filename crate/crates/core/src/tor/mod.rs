//! Tor-groups `H_j(Q[e_i : i in S]; M)` of graded modules, computed degree by
//! degree from the Koszul complex `M (x) Lambda(de_i)`.

mod presentation;

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::cohomology::{covariant_piece, e_action_matrix, PieceKind};
use crate::algebra::{Generator, Monomial};
use crate::error::Result;
use crate::exec::{map_vec, Exec};
use crate::linalg::{rank, SparseMatrix};

pub use presentation::{
    builtin, builtin_names, module_from_presentation, parse_module_spec, FinitePresentation, Relation,
};

/// The polynomial ring acting: `e_1..e_ell`, or every `e_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Finite(u32),
    All,
}

impl RingSpec {
    /// Generator indices that can occur at internal degree `m`.
    pub fn indices_up_to(self, m: u32) -> Vec<u32> {
        let top = match self {
            RingSpec::Finite(l) => l.min(m / 2),
            RingSpec::All => m / 2,
        };
        (1..=top).collect()
    }

    pub fn contains(self, i: u32) -> bool {
        match self {
            RingSpec::Finite(l) => i >= 1 && i <= l,
            RingSpec::All => i >= 1,
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            RingSpec::Finite(l) => json!({"type": "finite", "ell": l}),
            RingSpec::All => json!({"type": "all"}),
        }
    }
}

/// A graded module known up to internal degree `max_degree`: the dimension of
/// each piece and the matrices of the `e_i`. A missing action means zero.
#[derive(Clone, Debug)]
pub struct GradedModuleData {
    pub ring: RingSpec,
    pub max_degree: u32,
    pub dims: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    actions: HashMap<(u32, u32), SparseMatrix>,
}

impl GradedModuleData {
    pub fn new(ring: RingSpec, dims: Vec<usize>) -> Self {
        let max_degree = dims.len().saturating_sub(1) as u32;
        let labels = dims.iter().map(|&n| (0..n).map(|k| format!("v{k}")).collect()).collect();
        GradedModuleData { ring, max_degree, dims, labels, actions: HashMap::new() }
    }

    pub fn dim(&self, m: u32) -> usize {
        self.dims.get(m as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Sets the matrix of `e_i` out of degree `m`.
    pub fn set_action(&mut self, i: u32, m: u32, a: SparseMatrix) {
        assert!(self.ring.contains(i), "e_{i} is not in the ring");
        assert_eq!(a.cols(), self.dim(m));
        assert_eq!(a.rows(), self.dim(m + 2 * i));
        if !a.is_zero() {
            self.actions.insert((i, m), a);
        }
    }

    pub fn action(&self, i: u32, m: u32) -> SparseMatrix {
        match self.actions.get(&(i, m)) {
            Some(a) => a.clone(),
            None => SparseMatrix::zero(self.dim(m + 2 * i), self.dim(m)),
        }
    }

    /// Same data viewed over a larger ring; the new generators act by zero.
    pub fn with_ring(&self, ring: RingSpec) -> Self {
        let mut out = self.clone();
        out.ring = ring;
        out.actions.retain(|(i, _), _| ring.contains(*i));
        out
    }

    /// Restricts to degrees `<= bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        let mut out = self.clone();
        out.dims.truncate(bound as usize + 1);
        out.labels.truncate(bound as usize + 1);
        out.max_degree = out.max_degree.min(bound);
        out.actions.retain(|(i, m), _| m + 2 * i <= bound);
        out
    }

    /// Checks `e_i e_k = e_k e_i` on every composable range.
    pub fn actions_commute(&self) -> bool {
        for m in 0..=self.max_degree {
            let idx = self.ring.indices_up_to(self.max_degree.saturating_sub(m));
            for &i in &idx {
                for &k in &idx {
                    if k <= i || m + 2 * (i + k) > self.max_degree {
                        continue;
                    }
                    let a = self.action(k, m + 2 * i).mul(&self.action(i, m));
                    let b = self.action(i, m + 2 * k).mul(&self.action(k, m));
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        let mut actions: Vec<Value> = self
            .actions
            .iter()
            .map(|(&(i, m), a)| {
                let entries: Vec<Value> = a
                    .entries()
                    .map(|(r, c, q)| json!([r, c, crate::algebra::format_rational(q)]))
                    .collect();
                json!({"e": i, "from": m, "entries": entries})
            })
            .collect();
        actions.sort_by_key(|v| (v["e"].as_u64(), v["from"].as_u64()));
        json!({
            "ring": self.ring.to_json(),
            "max_degree": self.max_degree,
            "dims": self.dims,
            "labels": self.labels,
            "actions": actions,
        })
    }
}

/// Strictly increasing index tuples from `gens` with `sum 2i <= m`.
fn subsets(gens: &[u32], n: usize, m: u32) -> Vec<Vec<u32>> {
    fn rec(gens: &[u32], start: usize, n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in start..gens.len() {
            let c = 2 * gens[k];
            if c > budget {
                break;
            }
            cur.push(gens[k]);
            rec(gens, k + 1, n, budget - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Summands of `C_n` at internal degree `m`: `(index tuple, module degree, offset)`.
fn chain_blocks(module: &GradedModuleData, n: usize, m: u32) -> (Vec<(Vec<u32>, u32, usize)>, usize) {
    let gens = module.ring.indices_up_to(m);
    let mut blocks = Vec::new();
    let mut off = 0;
    for set in subsets(&gens, n, m) {
        let deg = m - 2 * set.iter().sum::<u32>();
        let dim = module.dim(deg);
        if dim > 0 {
            blocks.push((set, deg, off));
            off += dim;
        }
    }
    (blocks, off)
}

pub fn chain_dim(module: &GradedModuleData, n: usize, m: u32) -> usize {
    chain_blocks(module, n, m).1
}

/// `d(x (x) de_I) = sum_k (-1)^k e_{i_k} x (x) de_{I - i_k}` (positions `k` from 0).
pub fn koszul_boundary(module: &GradedModuleData, n: usize, m: u32) -> SparseMatrix {
    assert!(n >= 1);
    assert!(m <= module.max_degree, "internal degree {m} beyond the module window");
    let (src, cols) = chain_blocks(module, n, m);
    let (tgt, rows) = chain_blocks(module, n - 1, m);
    let pos: HashMap<&Vec<u32>, (u32, usize)> = tgt.iter().map(|(s, d, o)| (s, (*d, *o))).collect();
    let mut entries = Vec::new();
    for (set, deg, off) in &src {
        for k in 0..set.len() {
            let i = set[k];
            let mut rest = set.clone();
            rest.remove(k);
            let Some(&(tdeg, toff)) = pos.get(&rest) else { continue };
            debug_assert_eq!(tdeg, deg + 2 * i);
            let a = module.action(i, *deg);
            let neg = k % 2 == 1;
            for (r, c, q) in a.entries() {
                let q = if neg { -q.clone() } else { q.clone() };
                entries.push((toff + r, off + c, q));
            }
        }
    }
    SparseMatrix::from_triplets(rows, cols, entries)
}

/// Dimensions of `H_j` at internal degree `m` for `j = 0..=j_max`; also
/// asserts that consecutive boundaries compose to zero.
pub fn tor_at_degree(module: &GradedModuleData, j_max: usize, m: u32) -> Vec<usize> {
    let dims: Vec<usize> = (0..=j_max + 1).map(|n| chain_dim(module, n, m)).collect();
    let bds: Vec<SparseMatrix> = (1..=j_max + 1).map(|n| koszul_boundary(module, n, m)).collect();
    for w in bds.windows(2) {
        assert!(w[0].mul(&w[1]).is_zero(), "Koszul boundary squares to a nonzero map");
    }
    let ranks: Vec<usize> = bds.iter().map(rank).collect();
    (0..=j_max)
        .map(|j| {
            let in_rank = if j == 0 { 0 } else { ranks[j - 1] };
            dims[j] - in_rank - ranks[j]
        })
        .collect()
}

/// Full chain-dimension vector at degree `m` (until the complex stops).
pub fn chain_dims(module: &GradedModuleData, m: u32) -> Vec<usize> {
    let mut out = Vec::new();
    let top = module.ring.indices_up_to(m).len();
    for n in 0..=top {
        out.push(chain_dim(module, n, m));
    }
    out
}

/// Dimensions `(j, m) -> dim H_j` on the window `j <= j_max`, `m <= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub j_max: usize,
    pub bound: u32,
    pub dims: BTreeMap<(usize, u32), usize>,
}

impl TorTable {
    pub fn get(&self, j: usize, m: u32) -> usize {
        self.dims.get(&(j, m)).copied().unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.j_max)
            .map(|j| (0..=self.bound).map(|m| self.get(j, m)).sum())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .dims
            .iter()
            .filter(|(_, &v)| v > 0)
            .map(|(&(j, m), &v)| json!({"j": j, "m": m, "dim": v}))
            .collect();
        json!({"j_max": self.j_max, "bound": self.bound, "totals": self.totals(), "cells": cells})
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("j\tm\tdim\n");
        for (&(j, m), &v) in &self.dims {
            if v > 0 {
                s.push_str(&format!("{j}\t{m}\t{v}\n"));
            }
        }
        s
    }
}

pub fn tor_dims(module: &GradedModuleData, j_max: usize, bound: u32) -> TorTable {
    tor_dims_with(Exec::default(), module, j_max, bound)
}

pub fn tor_dims_with(exec: Exec, module: &GradedModuleData, j_max: usize, bound: u32) -> TorTable {
    let bound = bound.min(module.max_degree);
    let rows = map_vec(exec, (0..=bound).collect(), |m| (m, tor_at_degree(module, j_max, m)));
    let mut dims = BTreeMap::new();
    for (m, hs) in rows {
        for (j, h) in hs.into_iter().enumerate() {
            dims.insert((j, m), h);
        }
    }
    TorTable { j_max, bound, dims }
}

/// Number of `j`-element subsets of `{l, l+1, ...}` with `sum 2i = m`.
pub fn lambda_count(j: usize, l: u32, m: u32) -> u64 {
    fn rec(j: u32, l: u32, half: u32) -> u64 {
        if j == 0 {
            return u64::from(half == 0);
        }
        // every remaining element is at least i, so i * j <= half
        (l..).take_while(|&i| i * j <= half).map(|i| rec(j - 1, i + 1, half - i)).sum()
    }
    if m % 2 == 1 || l == 0 {
        return 0;
    }
    rec(j as u32, l, m / 2)
}

/// One comparison line in a check report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub j: usize,
    pub m: u32,
    pub expected: u64,
    pub computed: u64,
}

impl Cell {
    pub fn ok(&self) -> bool {
        self.expected == self.computed
    }
}

/// Convolution of a Tor table over `e_1..e_ell` with `Lambda^* E_{>= ell+1}`.
pub fn kunneth_prediction(t: &TorTable, ell: u32, j: usize, m: u32) -> u64 {
    let mut s = 0;
    for j1 in 0..=j.min(t.j_max) {
        for m1 in 0..=m.min(t.bound) {
            let h = t.get(j1, m1) as u64;
            if h > 0 {
                s += h * lambda_count(j - j1, ell + 1, m - m1);
            }
        }
    }
    s
}

/// Compares Tor of `l` over every `e_i` (extra generators acting by zero)
/// with the Kunneth convolution of its Tor over `e_1..e_ell`.
pub fn kunneth_check(l: &GradedModuleData, j_max: usize, bound: u32) -> Vec<Cell> {
    let RingSpec::Finite(ell) = l.ring else {
        panic!("kunneth_check needs a module over a finite ring");
    };
    let bound = bound.min(l.max_degree);
    let small = tor_dims(l, j_max, bound);
    let big = tor_dims(&l.with_ring(RingSpec::All), j_max, bound);
    let mut out = Vec::new();
    for j in 0..=j_max {
        for m in 0..=bound {
            out.push(Cell {
                j,
                m,
                expected: kunneth_prediction(&small, ell, j, m),
                computed: big.get(j, m) as u64,
            });
        }
    }
    out
}

/// Packages covariant kernel or cokernel pieces of `D` for weight `d` into a
/// module over every `e_i`.
pub fn module_from_cohomology(d: u32, kind: PieceKind, bound: u32) -> Result<GradedModuleData> {
    module_from_cohomology_with(Exec::default(), d, kind, bound)
}

pub fn module_from_cohomology_with(exec: Exec, d: u32, kind: PieceKind, bound: u32) -> Result<GradedModuleData> {
    let want = match kind {
        PieceKind::Kernel => d % 2,
        PieceKind::Cokernel => (d + 1) % 2,
    };
    let degrees: Vec<u32> = (0..=bound).filter(|m| m % 2 == want).collect();
    let pieces = map_vec(exec, degrees, |m| covariant_piece(kind, d, m).map(|p| (m, p)));
    let mut by_degree = HashMap::new();
    for p in pieces {
        let (m, p) = p?;
        by_degree.insert(m, p);
    }
    let dims: Vec<usize> = (0..=bound).map(|m| by_degree.get(&m).map_or(0, |p| p.dim())).collect();
    let mut module = GradedModuleData::new(RingSpec::All, dims);
    for (m, p) in &by_degree {
        module.labels[*m as usize] = p.classes().iter().map(|q| q.to_expr()).collect();
    }
    let mut jobs = Vec::new();
    for m in 0..=bound {
        for i in 1..=(bound - m) / 2 {
            if module.dim(m) > 0 && module.dim(m + 2 * i) > 0 {
                jobs.push((i, m));
            }
        }
    }
    let mats = map_vec(exec, jobs, |(i, m)| {
        let a = e_action_matrix(&by_degree[&m], &by_degree[&(m + 2 * i)], &Monomial::gen(Generator::E(i)));
        a.map(|a| (i, m, a))
    });
    for r in mats {
        let (i, m, a) = r?;
        module.set_action(i, m, a);
    }
    Ok(module)
}

/// Compares `H_j(Ker)` at `m` with `H_{j+2}(Coker)` at `m + shift` for
/// `1 <= j <= j_max`, `m <= bound`.
pub fn tor_shift_check(d: u32, shift: u32, j_max: usize, bound: u32) -> Result<Vec<Cell>> {
    let ker = module_from_cohomology(d, PieceKind::Kernel, bound)?;
    let coker = module_from_cohomology(d, PieceKind::Cokernel, bound + shift)?;
    let tk = tor_dims(&ker, j_max, bound);
    let tc = tor_dims(&coker, j_max + 2, bound + shift);
    let mut out = Vec::new();
    for j in 1..=j_max {
        for m in 0..=bound {
            out.push(Cell { j, m, expected: tc.get(j + 2, m + shift) as u64, computed: tk.get(j, m) as u64 });
        }
    }
    Ok(out)
}
