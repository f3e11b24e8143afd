//! Dense matrices and subspaces over a [`FieldSpec`].
//!
//! Matrices store serialized element values row-major and run their inner
//! loops on the raw field operations. Shape mismatches and out-of-range
//! indices are programming errors and panic via `assert!`.
//!
//! A [`Subspace`] keeps its basis in reduced row echelon form at all times,
//! so two subspaces are equal as sets exactly when their basis matrices are
//! equal entry for entry. That canonical form is what makes submodule
//! enumeration and closure fixpoints cheap to compare.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// Dense matrix over a finite field, entries as serialized values.
#[derive(Clone)]
pub struct GfMatrix {
    spec: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl PartialEq for GfMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && (Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec)
    }
}

impl Eq for GfMatrix {}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} over {}", self.rows, self.cols, self.spec)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl GfMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(spec: &Arc<FieldSpec>, rows: usize, cols: usize) -> GfMatrix {
        GfMatrix { spec: Arc::clone(spec), rows, cols, data: vec![0; rows * cols] }
    }

    /// Identity matrix of size `n`.
    pub fn identity(spec: &Arc<FieldSpec>, n: usize) -> GfMatrix {
        let mut m = GfMatrix::zero(spec, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Matrix from rows of serialized values, validating entry ranges.
    pub fn from_rows(spec: &Arc<FieldSpec>, rows: &[Vec<u32>]) -> Result<GfMatrix> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(height * width);
        for row in rows {
            if row.len() != width {
                return Err(Error::ShapeMismatch { left: (height, width), right: (1, row.len()) });
            }
            for &v in row {
                if v >= spec.q() {
                    return Err(Error::ElementOutOfRange { value: v as u64, q: spec.q() });
                }
                data.push(v);
            }
        }
        Ok(GfMatrix { spec: Arc::clone(spec), rows: height, cols: width, data })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u32 {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        debug_assert!(v < self.spec.q());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        assert!(r < self.rows);
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix sum.
    pub fn add(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.spec.add_raw(a, b))
            .collect();
        GfMatrix { spec: Arc::clone(&self.spec), rows: self.rows, cols: self.cols, data }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = GfMatrix::zero(&self.spec, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b == 0 {
                        continue;
                    }
                    let cur = out.at(r, c);
                    out.set(r, c, self.spec.add_raw(cur, self.spec.mul_raw(a, b)));
                }
            }
        }
        out
    }

    /// Row vector times matrix: `v * self`.
    pub fn mul_row_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "shape mismatch in mul_row_vec");
        let mut out = vec![0u32; self.cols];
        for (r, &vr) in v.iter().enumerate() {
            if vr == 0 {
                continue;
            }
            for c in 0..self.cols {
                let m = self.at(r, c);
                if m != 0 {
                    out[c] = self.spec.add_raw(out[c], self.spec.mul_raw(vr, m));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut out = GfMatrix::zero(&self.spec, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| m.at(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pivot_row);
            let inv = m.spec.inv_raw(m.at(row, col)).unwrap();
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let factor = m.at(r, col);
                    if factor != 0 {
                        m.subtract_scaled_row(r, row, factor);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant of a square matrix, as a serialized value.
    pub fn det(&self) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = 1u32;
        for col in 0..m.cols {
            let Some(pivot_row) = (col..m.rows).find(|&r| m.at(r, col) != 0) else {
                return 0;
            };
            if pivot_row != col {
                m.swap_rows(col, pivot_row);
                det = m.spec.neg_raw(det);
            }
            let pivot = m.at(col, col);
            det = m.spec.mul_raw(det, pivot);
            let inv = m.spec.inv_raw(pivot).unwrap();
            for r in col + 1..m.rows {
                let factor = m.spec.mul_raw(m.at(r, col), inv);
                if factor != 0 {
                    m.subtract_scaled_row(r, col, factor);
                }
            }
        }
        det
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<GfMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        // Augment with the identity and row-reduce.
        let mut aug = GfMatrix::zero(&self.spec, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (reduced, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = GfMatrix::zero(&self.spec, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, reduced.at(r, n + c));
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: u32) {
        for c in 0..self.cols {
            let v = self.at(r, c);
            self.set(r, c, self.spec.mul_raw(v, factor));
        }
    }

    /// `row[target] -= factor * row[source]`.
    fn subtract_scaled_row(&mut self, target: usize, source: usize, factor: u32) {
        for c in 0..self.cols {
            let s = self.spec.mul_raw(self.at(source, c), factor);
            let t = self.at(target, c);
            self.set(target, c, self.spec.sub_raw(t, s));
        }
    }
}

/// A linear subspace of `F_q^ambient` in canonical form.
///
/// The basis is kept in reduced row echelon form with pivot columns strictly
/// increasing, so subspace equality is plain matrix equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    spec: Arc<FieldSpec>,
    ambient: usize,
    /// RREF rows; `pivots[k]` is the pivot column of row `k`.
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}^{})", self.dim(), self.spec, self.ambient)
    }
}

impl Subspace {
    /// The zero subspace of `F_q^ambient`.
    pub fn zero(spec: &Arc<FieldSpec>, ambient: usize) -> Subspace {
        Subspace { spec: Arc::clone(spec), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    /// Span of the given vectors.
    pub fn span(spec: &Arc<FieldSpec>, ambient: usize, vectors: &[Vec<u32>]) -> Subspace {
        let mut s = Subspace::zero(spec, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis rows (reduced row echelon form).
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the basis; the remainder is zero exactly when `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut v = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let coeff = v[pc];
            if coeff != 0 {
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = self.spec.sub_raw(*x, self.spec.mul_raw(coeff, b));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|row| other.contains(row))
    }

    /// Insert a vector, keeping the canonical form; returns `true` when the
    /// dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        // Normalize the leading coefficient to 1.
        let inv = self.spec.inv_raw(v[pc]).unwrap();
        for x in v.iter_mut() {
            *x = self.spec.mul_raw(*x, inv);
        }
        // Eliminate the new pivot column from existing rows.
        for row in self.basis.iter_mut() {
            let coeff = row[pc];
            if coeff != 0 {
                for (r, &nv) in row.iter_mut().zip(&v) {
                    *r = self.spec.sub_raw(*r, self.spec.mul_raw(coeff, nv));
                }
            }
        }
        let at = self.pivots.partition_point(|&existing| existing < pc);
        self.pivots.insert(at, pc);
        self.basis.insert(at, v);
        true
    }

    /// Smallest subspace containing both operands.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut s = self.clone();
        for row in &other.basis {
            s.insert(row);
        }
        s
    }

    /// Intersection, by the Zassenhaus block construction: row-reduce
    /// `[U | U; W | 0]` and read the intersection basis off the rows whose
    /// left half vanished.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let n = self.ambient;
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for u in &self.basis {
            let mut row = u.clone();
            row.extend_from_slice(u);
            rows.push(row);
        }
        for w in &other.basis {
            let mut row = w.clone();
            row.extend(core::iter::repeat(0).take(n));
            rows.push(row);
        }
        if rows.is_empty() {
            return Subspace::zero(&self.spec, n);
        }
        let block = GfMatrix::from_rows(&self.spec, &rows).unwrap();
        let (reduced, pivots) = block.rref();
        let mut intersection = Subspace::zero(&self.spec, n);
        for (r, &pc) in pivots.iter().enumerate() {
            if pc >= n {
                intersection.insert(&reduced.row(r)[n..]);
            }
        }
        // Rows beyond the pivot count are zero; rows with pivot in the left
        // half belong to the sum, not the intersection.
        intersection
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn f(p: u32, m: u32) -> Arc<FieldSpec> {
        FieldSpec::make(p, m).unwrap()
    }

    fn random_matrix(spec: &Arc<FieldSpec>, n: usize, rng: &mut SplitMix64) -> GfMatrix {
        let mut m = GfMatrix::zero(spec, n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, rng.below(spec.q() as u64) as u32);
            }
        }
        m
    }

    #[test]
    fn rref_of_known_matrix() {
        let f3 = f(3, 1);
        // Third row is the sum of the first two, so the rank is 2.
        let m = GfMatrix::from_rows(&f3, &[vec![0, 2, 1], vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), 0);
        // RREF is idempotent.
        assert_eq!(r.rref().0, r);
    }

    #[test]
    fn determinant_detects_singularity_exhaustively_for_gf2_2x2() {
        let f2 = f(2, 1);
        for bits in 0..16u32 {
            let m = GfMatrix::from_rows(
                &f2,
                &[vec![bits & 1, (bits >> 1) & 1], vec![(bits >> 2) & 1, (bits >> 3) & 1]],
            )
            .unwrap();
            let ad = (bits & 1) * ((bits >> 3) & 1);
            let bc = ((bits >> 1) & 1) * ((bits >> 2) & 1);
            assert_eq!(m.det(), (ad + bc) % 2);
            assert_eq!(m.inverse().is_some(), m.det() != 0);
        }
    }

    #[test]
    fn determinant_is_multiplicative() {
        let f9 = f(3, 2);
        let mut rng = SplitMix64::new(11);
        for _ in 0..100 {
            let a = random_matrix(&f9, 3, &mut rng);
            let b = random_matrix(&f9, 3, &mut rng);
            let lhs = a.mul(&b).det();
            let rhs = f9.mul_raw(a.det(), b.det());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inverse_round_trips() {
        let f4 = f(2, 2);
        let mut rng = SplitMix64::new(5);
        let mut found = 0;
        while found < 50 {
            let a = random_matrix(&f4, 3, &mut rng);
            if let Some(inv) = a.inverse() {
                assert_eq!(a.mul(&inv), GfMatrix::identity(&f4, 3));
                assert_eq!(inv.mul(&a), GfMatrix::identity(&f4, 3));
                found += 1;
            }
        }
    }

    #[test]
    fn row_vector_multiplication_matches_full_product() {
        let f8 = f(2, 3);
        let mut rng = SplitMix64::new(9);
        for _ in 0..50 {
            let a = random_matrix(&f8, 4, &mut rng);
            let v: Vec<u32> = (0..4).map(|_| rng.below(8) as u32).collect();
            let as_matrix = GfMatrix::from_rows(&f8, &[v.clone()]).unwrap().mul(&a);
            assert_eq!(a.mul_row_vec(&v), as_matrix.row(0));
        }
    }

    #[test]
    fn subspace_canonical_form_is_generating_set_independent() {
        let f3 = f(3, 1);
        let u = Subspace::span(&f3, 3, &[vec![1, 2, 0], vec![0, 0, 1]]);
        // Same space, different generators: 2*(1,2,0), (1,2,1) = (1,2,0)+(0,0,1).
        let w = Subspace::span(&f3, 3, &[vec![2, 1, 0], vec![1, 2, 1], vec![1, 2, 0]]);
        assert_eq!(u, w);
        assert_eq!(u.dim(), 2);
        assert!(u.contains(&[2, 1, 2]));
        assert!(!u.contains(&[1, 0, 0]));
    }

    #[test]
    fn incremental_insert_matches_batch_span() {
        let f4 = f(2, 2);
        let mut rng = SplitMix64::new(21);
        for _ in 0..50 {
            let vectors: Vec<Vec<u32>> =
                (0..5).map(|_| (0..4).map(|_| rng.below(4) as u32).collect()).collect();
            let batch = Subspace::span(&f4, 4, &vectors);
            let mut incremental = Subspace::zero(&f4, 4);
            for v in &vectors {
                incremental.insert(v);
            }
            assert_eq!(batch, incremental);
            for v in &vectors {
                assert!(batch.contains(v));
            }
        }
    }

    #[test]
    fn intersection_satisfies_dimension_formula() {
        let f2 = f(2, 1);
        let f9 = f(3, 2);
        let mut rng = SplitMix64::new(33);
        for spec in [&f2, &f9] {
            for _ in 0..60 {
                let n = 4 + rng.index(2);
                let u_vecs: Vec<Vec<u32>> = (0..rng.index(4) + 1)
                    .map(|_| (0..n).map(|_| rng.below(spec.q() as u64) as u32).collect())
                    .collect();
                let w_vecs: Vec<Vec<u32>> = (0..rng.index(4) + 1)
                    .map(|_| (0..n).map(|_| rng.below(spec.q() as u64) as u32).collect())
                    .collect();
                let u = Subspace::span(spec, n, &u_vecs);
                let w = Subspace::span(spec, n, &w_vecs);
                let meet = u.intersect(&w);
                let join = u.sum(&w);
                assert_eq!(meet.dim() + join.dim(), u.dim() + w.dim());
                assert!(meet.is_subspace_of(&u));
                assert!(meet.is_subspace_of(&w));
                assert!(u.is_subspace_of(&join));
                assert!(w.is_subspace_of(&join));
                // Every intersection vector is in both.
                for row in meet.basis() {
                    assert!(u.contains(row) && w.contains(row));
                }
            }
        }
    }

    #[test]
    fn zero_and_full_spaces_behave() {
        let f4 = f(2, 2);
        let zero = Subspace::zero(&f4, 3);
        assert_eq!(zero.dim(), 0);
        assert!(zero.contains(&[0, 0, 0]));
        assert!(!zero.contains(&[0, 1, 0]));
        let full = Subspace::span(
            &f4,
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        );
        assert_eq!(full.dim(), 3);
        assert_eq!(zero.intersect(&full), zero);
        assert_eq!(zero.sum(&full), full);
    }
}
