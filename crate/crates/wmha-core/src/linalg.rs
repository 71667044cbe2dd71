//! Sparse vectors and exact rational linear algebra.
//!
//! Rank, kernel, solving and span comparison are all done by exact
//! Gauss-Jordan elimination over the rationals. No pivoting heuristics are
//! needed for correctness; the matrices here are desk-scale.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::label::{Basis, Label};
use crate::scalar::{coeff_prefix, Scalar};

/// A finite linear combination of basis labels with nonzero rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default, Debug)]
pub struct SparseVec {
    entries: BTreeMap<Label, Scalar>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    pub fn basis(label: Label) -> Self {
        let mut v = SparseVec::zero();
        v.set(label, Scalar::one());
        v
    }

    pub fn term(label: Label, coeff: Scalar) -> Self {
        let mut v = SparseVec::zero();
        v.set(label, coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &Label) -> Scalar {
        self.entries.get(label).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, label: Label, coeff: Scalar) {
        if coeff.is_zero() {
            self.entries.remove(&label);
        } else {
            self.entries.insert(label, coeff);
        }
    }

    pub fn add_term(&mut self, label: &Label, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.entries.get_mut(label) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.entries.remove(label);
                }
            }
            None => {
                self.entries.insert(label.clone(), coeff.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (l, v) in other.iter() {
            self.add_term(l, &(v * c));
        }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        let mut out = SparseVec::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Scalar)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Label> {
        self.entries.keys()
    }

    /// Applies a linear substitution label-by-label.
    pub fn map_terms(&self, mut f: impl FnMut(&Label) -> SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (l, c) in self.iter() {
            out.add_scaled(&f(l), c);
        }
        out
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}{}", coeff_prefix(c), l)?;
        }
        Ok(())
    }
}

/// A matrix stored as labelled rows of sparse vectors over one declared
/// column basis.
#[derive(Clone, Debug)]
pub struct SparseMat {
    col_basis: Basis,
    row_labels: Vec<Label>,
    rows: Vec<SparseVec>,
}

impl SparseMat {
    pub fn new(col_basis: Basis) -> Self {
        SparseMat {
            col_basis,
            row_labels: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Matrix of a linear map: column `l` holds `f(l)` expressed over the
    /// row basis, so `m * e_l = f(l)`.
    pub fn from_map(
        col_basis: &Basis,
        row_basis: &Basis,
        mut f: impl FnMut(&Label) -> SparseVec,
    ) -> Self {
        let mut rows = alloc::vec![SparseVec::zero(); row_basis.len()];
        for col in col_basis.iter() {
            let image = f(col);
            for (l, c) in image.iter() {
                let r = row_basis
                    .position(l)
                    .unwrap_or_else(|| panic!("image label {l} outside row basis"));
                rows[r].add_term(col, c);
            }
        }
        SparseMat {
            col_basis: col_basis.clone(),
            row_labels: row_basis.labels().to_vec(),
            rows,
        }
    }

    pub fn push_row(&mut self, label: Label, row: SparseVec) {
        for l in row.support() {
            assert!(
                self.col_basis.contains(l),
                "row entry {l} outside column basis"
            );
        }
        self.row_labels.push(label);
        self.rows.push(row);
    }

    pub fn identity(basis: &Basis) -> Self {
        let mut m = SparseMat::new(basis.clone());
        for l in basis.iter() {
            m.push_row(l.clone(), SparseVec::basis(l.clone()));
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_basis.len()
    }

    pub fn col_basis(&self) -> &Basis {
        &self.col_basis
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    /// `m * v` for `v` over the column basis; result over the row labels.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (label, row) in self.row_labels.iter().zip(self.rows.iter()) {
            let mut acc = Scalar::zero();
            for (l, c) in row.iter() {
                let coeff = v.get(l);
                if !coeff.is_zero() {
                    acc += &(c * &coeff);
                }
            }
            out.add_term(label, &acc);
        }
        out
    }
}

fn to_dense(vectors: &[SparseVec], cols: &Basis) -> Vec<Vec<Scalar>> {
    vectors
        .iter()
        .map(|v| {
            let mut row = alloc::vec![Scalar::zero(); cols.len()];
            for (l, c) in v.iter() {
                let i = cols
                    .position(l)
                    .unwrap_or_else(|| panic!("label {l} outside basis"));
                row[i] = c.clone();
            }
            row
        })
        .collect()
}

fn from_dense_row(row: &[Scalar], cols: &Basis) -> SparseVec {
    let mut v = SparseVec::zero();
    for (i, c) in row.iter().enumerate() {
        if !c.is_zero() {
            v.set(cols.label(i).clone(), c.clone());
        }
    }
    v
}

/// Collects every label occurring in the given vectors into a canonical
/// (sorted) basis, so span computations need no external basis.
pub fn support_basis(vectors: &[SparseVec]) -> Basis {
    let mut labels: BTreeSet<Label> = BTreeSet::new();
    for v in vectors {
        for l in v.support() {
            labels.insert(l.clone());
        }
    }
    Basis::new(labels.into_iter().collect())
}

/// In-place Gauss-Jordan reduction; returns the pivot column of each
/// surviving row. Rows end up in reduced row-echelon form with unit pivots,
/// zero rows dropped.
fn rref_dense(mat: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let n_cols = mat.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..n_cols {
        let Some(pivot_row) = (next_row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(next_row, pivot_row);
        let inv = mat[next_row][col].recip();
        for c in col..n_cols {
            let v = &mat[next_row][c] * &inv;
            mat[next_row][c] = v;
        }
        for r in 0..mat.len() {
            if r == next_row || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in col..n_cols {
                let delta = &factor * &mat[next_row][c];
                mat[r][c] -= &delta;
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == mat.len() {
            break;
        }
    }
    mat.truncate(next_row);
    pivots
}

/// Rank over the rationals.
pub fn rank(m: &SparseMat) -> usize {
    span_rank(m.rows())
}

/// Rank of the span of a list of vectors.
pub fn span_rank(vectors: &[SparseVec]) -> usize {
    let basis = support_basis(vectors);
    let mut dense = to_dense(vectors, &basis);
    rref_dense(&mut dense).len()
}

/// An exact basis of the null space `{v : m v = 0}`, indexed by the column
/// basis. Empty iff the matrix is injective.
pub fn kernel_basis(m: &SparseMat) -> Vec<SparseVec> {
    let cols = m.col_basis();
    let mut dense = to_dense(m.rows(), cols);
    let pivots = rref_dense(&mut dense);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in 0..cols.len() {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = SparseVec::basis(cols.label(free).clone());
        for (row, &pcol) in dense.iter().zip(pivots.iter()) {
            let c = &row[free];
            if !c.is_zero() {
                v.set(cols.label(pcol).clone(), -c);
            }
        }
        out.push(v);
    }
    out
}

/// One exact solution of `m x = target` (`target` over the row labels), or
/// `None` when the system is inconsistent.
pub fn solve_linear(m: &SparseMat, target: &SparseVec) -> Option<SparseVec> {
    let row_basis = Basis::new(m.row_labels().to_vec());
    let cols = m.col_basis();
    // Augmented system [A | b] where A's columns are the unknowns: build it
    // row by row from the matrix rows.
    let mut dense: Vec<Vec<Scalar>> = Vec::with_capacity(m.n_rows());
    for (label, row) in row_basis.iter().zip(m.rows().iter()) {
        let mut r = alloc::vec![Scalar::zero(); cols.len() + 1];
        for (l, c) in row.iter() {
            r[cols.position(l).expect("row over column basis")] = c.clone();
        }
        r[cols.len()] = target.get(label);
        dense.push(r);
    }
    for l in target.support() {
        assert!(
            row_basis.contains(l),
            "target label {l} outside row basis"
        );
    }
    let pivots = rref_dense(&mut dense);
    if pivots.iter().any(|&p| p == cols.len()) {
        return None;
    }
    let mut x = SparseVec::zero();
    for (row, &p) in dense.iter().zip(pivots.iter()) {
        let c = row[cols.len()].clone();
        if !c.is_zero() {
            x.set(cols.label(p).clone(), c);
        }
    }
    Some(x)
}

/// True iff the two rational spans coincide.
pub fn span_equal(u: &[SparseVec], v: &[SparseVec]) -> bool {
    let ru = span_rank(u);
    let rv = span_rank(v);
    if ru != rv {
        return false;
    }
    let mut both: Vec<SparseVec> = u.to_vec();
    both.extend_from_slice(v);
    span_rank(&both) == ru
}

/// A row-reduced span with membership and coordinate queries against the
/// original generating vectors.
pub struct Span {
    basis: Basis,
    // RREF rows of the generators and, alongside each, its expression in
    // terms of the original generators (tracked through the elimination).
    rows: Vec<Vec<Scalar>>,
    combos: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    n_gens: usize,
}

impl Span {
    pub fn new(generators: &[SparseVec]) -> Self {
        let basis = support_basis(generators);
        Span::over_basis(generators, &basis)
    }

    pub fn over_basis(generators: &[SparseVec], basis: &Basis) -> Self {
        let n_gens = generators.len();
        let n = basis.len();
        // Augment each generator row with an identity tail to track the
        // combination that produced each RREF row.
        let mut dense = to_dense(generators, basis);
        for (i, row) in dense.iter_mut().enumerate() {
            let mut tail = alloc::vec![Scalar::zero(); n_gens];
            tail[i] = Scalar::one();
            row.extend(tail);
        }
        // Eliminate on the first n columns only.
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..n {
            let Some(pr) = (next_row..dense.len()).find(|&r| !dense[r][col].is_zero()) else {
                continue;
            };
            dense.swap(next_row, pr);
            let inv = dense[next_row][col].recip();
            for c in col..n + n_gens {
                let v = &dense[next_row][c] * &inv;
                dense[next_row][c] = v;
            }
            for r in 0..dense.len() {
                if r == next_row || dense[r][col].is_zero() {
                    continue;
                }
                let factor = dense[r][col].clone();
                for c in col..n + n_gens {
                    let delta = &factor * &dense[next_row][c];
                    dense[r][c] -= &delta;
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == dense.len() {
                break;
            }
        }
        dense.truncate(next_row);
        let mut rows = Vec::with_capacity(dense.len());
        let mut combos = Vec::with_capacity(dense.len());
        for row in dense {
            rows.push(row[..n].to_vec());
            combos.push(row[n..].to_vec());
        }
        Span {
            basis: basis.clone(),
            rows,
            combos,
            pivots,
            n_gens,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical (RREF) basis vectors of the span.
    pub fn basis_vectors(&self) -> Vec<SparseVec> {
        self.rows
            .iter()
            .map(|r| from_dense_row(r, &self.basis))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Residue of `v` after reduction by the span (zero iff contained).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            let c = out.get(self.basis.label(p));
            if !c.is_zero() {
                let reducer = from_dense_row(row, &self.basis);
                out.add_scaled(&reducer, &-&c);
            }
        }
        out
    }

    /// Coefficients over the ORIGINAL generators expressing `v`, if `v` is
    /// in the span.
    pub fn coordinates_in_generators(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let mut residue = v.clone();
        let mut combo = alloc::vec![Scalar::zero(); self.n_gens];
        for ((row, combo_row), &p) in self.rows.iter().zip(self.combos.iter()).zip(self.pivots.iter())
        {
            let c = residue.get(self.basis.label(p));
            if !c.is_zero() {
                let reducer = from_dense_row(row, &self.basis);
                residue.add_scaled(&reducer, &-&c);
                for (acc, g) in combo.iter_mut().zip(combo_row.iter()) {
                    *acc += &(&c * g);
                }
            }
        }
        residue.is_zero().then_some(combo)
    }

    /// Coefficients over the canonical RREF basis, if `v` is in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let mut residue = v.clone();
        let mut coords = alloc::vec![Scalar::zero(); self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(self.pivots.iter()).enumerate() {
            let c = residue.get(self.basis.label(p));
            if !c.is_zero() {
                let reducer = from_dense_row(row, &self.basis);
                residue.add_scaled(&reducer, &-&c);
                coords[i] = c;
            }
        }
        residue.is_zero().then_some(coords)
    }
}

/// Solves `X(p_k) = r_k` for a linear map `X` on the domain basis, from a
/// list of (argument, value) constraint pairs.
///
/// Returns `None` when the constraints are inconsistent. Where the
/// constraints leave `X` undetermined (the `p_k` do not span the domain),
/// `X` is completed by zero and `fully_determined` is false.
pub struct MapSolution {
    pub matrix: SparseMat,
    pub fully_determined: bool,
}

pub fn solve_linear_map(
    pairs: &[(SparseVec, SparseVec)],
    domain: &Basis,
    codomain: &Basis,
) -> Option<MapSolution> {
    let n = domain.len();
    let m = codomain.len();
    // RREF of [P | R] with rows (p_k | r_k); X is then read off pivot rows.
    let mut dense: Vec<Vec<Scalar>> = Vec::with_capacity(pairs.len());
    let mut seen: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    for (p, r) in pairs {
        let mut row = alloc::vec![Scalar::zero(); n + m];
        for (l, c) in p.iter() {
            row[domain.position(l).expect("argument outside domain basis")] = c.clone();
        }
        for (l, c) in r.iter() {
            row[n + codomain.position(l).expect("value outside codomain basis")] = c.clone();
        }
        if seen.insert(row.clone()) {
            dense.push(row);
        }
    }
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..n {
        let Some(pr) = (next_row..dense.len()).find(|&r| !dense[r][col].is_zero()) else {
            continue;
        };
        dense.swap(next_row, pr);
        let inv = dense[next_row][col].recip();
        for c in col..n + m {
            let v = &dense[next_row][c] * &inv;
            dense[next_row][c] = v;
        }
        for r in 0..dense.len() {
            if r == next_row || dense[r][col].is_zero() {
                continue;
            }
            let factor = dense[r][col].clone();
            for c in col..n + m {
                let delta = &factor * &dense[next_row][c];
                dense[r][c] -= &delta;
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    // Any surviving row with zero P-part and nonzero R-part is a
    // contradiction 0 = r.
    for row in dense.iter().skip(next_row) {
        if row[n..].iter().any(|c| !c.is_zero()) {
            return None;
        }
    }
    dense.truncate(next_row);
    // A pivot row e_p + (free columns…) | r  pins X(e_p) up to the free
    // columns; reading X(e_p) = r is exact only when the row has no other
    // P-support, which RREF guarantees exactly when the P-part ranks full on
    // its support. With free columns present the map is underdetermined; we
    // still read off X on pivot columns and set X = 0 on free ones.
    let fully_determined = pivots.len() == n;
    let mut images: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (row, &p) in dense.iter().zip(pivots.iter()) {
        let mut img = SparseVec::zero();
        for j in 0..m {
            if !row[n + j].is_zero() {
                img.set(codomain.label(j).clone(), row[n + j].clone());
            }
        }
        images.insert(p, img);
    }
    // Consistency of the zero-completion: each pivot row may reference free
    // columns; X(row) = r then forces X on the pivot to absorb them, which
    // is exactly the zero-completion reading.
    let matrix = SparseMat::from_map(domain, codomain, |l| {
        let i = domain.position(l).unwrap();
        images.get(&i).cloned().unwrap_or_else(SparseVec::zero)
    });
    Some(MapSolution {
        matrix,
        fully_determined,
    })
}

/// Solves `M x = b` for many right-hand sides with a single elimination.
/// `rows` are (row label, row over `unknowns`); each target is a vector over
/// the row labels. Underdetermined unknowns are set to zero; `None` when any
/// target is inconsistent.
pub fn solve_batch(
    rows: &[(Label, SparseVec)],
    unknowns: &Basis,
    targets: &[SparseVec],
) -> Option<Vec<SparseVec>> {
    let n = unknowns.len();
    let t = targets.len();
    let mut dense: Vec<Vec<Scalar>> = Vec::with_capacity(rows.len());
    for (label, row) in rows {
        let mut r = alloc::vec![Scalar::zero(); n + t];
        for (l, c) in row.iter() {
            r[unknowns.position(l).expect("row over unknown basis")] = c.clone();
        }
        for (k, target) in targets.iter().enumerate() {
            r[n + k] = target.get(label);
        }
        dense.push(r);
    }
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..n {
        let Some(pr) = (next_row..dense.len()).find(|&r| !dense[r][col].is_zero()) else {
            continue;
        };
        dense.swap(next_row, pr);
        let inv = dense[next_row][col].recip();
        for c in col..n + t {
            let v = &dense[next_row][c] * &inv;
            dense[next_row][c] = v;
        }
        for r in 0..dense.len() {
            if r == next_row || dense[r][col].is_zero() {
                continue;
            }
            let factor = dense[r][col].clone();
            for c in col..n + t {
                let delta = &factor * &dense[next_row][c];
                dense[r][c] -= &delta;
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    for row in dense.iter().skip(next_row) {
        if row[n..].iter().any(|c| !c.is_zero()) {
            return None;
        }
    }
    let mut out = alloc::vec![SparseVec::zero(); t];
    for (row, &p) in dense.iter().take(next_row).zip(pivots.iter()) {
        for k in 0..t {
            let c = &row[n + k];
            if !c.is_zero() {
                out[k].set(unknowns.label(p).clone(), c.clone());
            }
        }
    }
    Some(out)
}

/// Flattens a linear operator (given by images of domain basis labels) into
/// a single vector over pair labels `(row, col)`, for operator-span
/// comparisons.
pub fn flatten_operator(
    domain: &Basis,
    mut f: impl FnMut(&Label) -> SparseVec,
) -> SparseVec {
    let mut out = SparseVec::zero();
    for col in domain.iter() {
        let image = f(col);
        for (row, c) in image.iter() {
            out.add_term(&Label::pair(row.clone(), col.clone()), c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Label {
        Label::atom(s)
    }

    fn b3() -> Basis {
        Basis::from_atoms(["x", "y", "z"])
    }

    #[test]
    fn identity_rank() {
        let m = SparseMat::identity(&b3());
        assert_eq!(rank(&m), 3);
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn zero_matrix() {
        let mut m = SparseMat::new(Basis::from_atoms(["x", "y"]));
        m.push_row(atom("r0"), SparseVec::zero());
        m.push_row(atom("r1"), SparseVec::zero());
        assert_eq!(rank(&m), 0);
        assert_eq!(kernel_basis(&m).len(), 2);
        // m = 0, target != 0 -> no solution
        let t = SparseVec::basis(atom("r0"));
        assert!(solve_linear(&m, &t).is_none());
    }

    #[test]
    fn solve_identity() {
        let m = SparseMat::identity(&b3());
        let mut v = SparseVec::basis(atom("x"));
        v.add_term(&atom("z"), &Scalar::fraction(2, 3));
        assert_eq!(solve_linear(&m, &v), Some(v));
    }

    #[test]
    fn rank_kernel_dimension_sum() {
        // 2x3 matrix with rank 2.
        let basis = b3();
        let mut m = SparseMat::new(basis);
        let mut r0 = SparseVec::basis(atom("x"));
        r0.add_term(&atom("y"), &Scalar::from_int(2));
        let mut r1 = SparseVec::basis(atom("y"));
        r1.add_term(&atom("z"), &Scalar::from_int(-1));
        m.push_row(atom("a"), r0);
        m.push_row(atom("b"), r1);
        assert_eq!(rank(&m), 2);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 1);
        for k in &ker {
            assert!(m.apply(k).is_zero());
        }
    }

    #[test]
    fn spans() {
        let e1 = SparseVec::basis(atom("x"));
        let e2 = SparseVec::basis(atom("y"));
        let sum = e1.add(&e2);
        assert!(span_equal(&[e1.clone()], &[e1.scaled(&Scalar::from_int(5))]));
        assert!(!span_equal(&[e1.clone()], &[e2.clone()]));
        assert!(span_equal(
            &[e1.clone(), e2.clone()],
            &[sum.clone(), e1.sub(&e2)]
        ));
        let span = Span::new(&[e1.clone(), sum.clone()]);
        assert_eq!(span.dim(), 2);
        assert!(span.contains(&e2));
        let coords = span.coordinates_in_generators(&e2).unwrap();
        // e2 = -1*e1 + 1*(e1+e2)
        assert_eq!(coords, alloc::vec![Scalar::from_int(-1), Scalar::from_int(1)]);
    }

    #[test]
    fn linear_map_from_pairs() {
        let dom = Basis::from_atoms(["x", "y"]);
        let cod = Basis::from_atoms(["u"]);
        let pairs = alloc::vec![
            (SparseVec::basis(atom("x")), SparseVec::basis(atom("u"))),
            (
                SparseVec::basis(atom("y")),
                SparseVec::term(atom("u"), Scalar::from_int(2))
            ),
        ];
        let sol = solve_linear_map(&pairs, &dom, &cod).unwrap();
        assert!(sol.fully_determined);
        assert_eq!(
            sol.matrix.apply(&SparseVec::basis(atom("y"))),
            SparseVec::term(atom("u"), Scalar::from_int(2))
        );
        // Contradictory constraints.
        let bad = alloc::vec![
            (SparseVec::basis(atom("x")), SparseVec::basis(atom("u"))),
            (SparseVec::basis(atom("x")), SparseVec::zero()),
        ];
        assert!(solve_linear_map(&bad, &dom, &cod).is_none());
    }
}
