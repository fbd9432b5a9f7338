//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed 64 bits to a word. Elimination always picks the leftmost pivot column and,
//! within it, the first row carrying a one, so every basis this module hands out is a pure
//! function of its input.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {context} ({left} vs {right})")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },
    #[error("composite of consecutive differentials is nonzero ({rows}x{cols} product)")]
    CompositionNonzero { rows: usize, cols: usize },
    #[error("vector is not a cocycle")]
    NotACocycle,
}

/// A packed bit vector of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &F2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &F2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// A dense matrix over F2, stored as packed rows. Acts on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            data: vec![F2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from 0/1 rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        F2Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| F2Vector::from_bits(r)).collect(),
        }
    }

    /// Builds a `rows x cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &F2Vector {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.get(c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F2Vector::is_zero)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &F2Vector) -> Result<F2Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix-vector product",
                left: self.cols,
                right: v.len(),
            });
        }
        let mut out = F2Vector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &F2Matrix) -> Result<F2Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                context: "matrix product",
                left: self.cols,
                right: rhs.rows,
            });
        }
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        for (r, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[r];
            for k in row.ones() {
                acc.xor_assign(&rhs.data[k]);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&r| m.data[r].get(c)) else {
                continue;
            };
            m.data.swap(next, p);
            let pivot_row = m.data[next].clone();
            for r in 0..m.rows {
                if r != next && m.data[r].get(c) {
                    m.data[r].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full rref.
        let mut rows: Vec<F2Vector> = self.data.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if row.get(c) {
                    row.xor_assign(pivot_row);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the null space, one vector per free column (ascending), read off the rref.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = F2Vector::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.data[i].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

pub fn rank(m: &F2Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &F2Matrix) -> Vec<F2Vector> {
    m.kernel_basis()
}

/// An echelon basis whose rows carry a coordinate tag, so that reducing a vector also reports
/// which tagged generators it used.
#[derive(Clone, Debug)]
struct TaggedEchelon {
    rows: Vec<(usize, F2Vector, F2Vector)>,
}

impl TaggedEchelon {
    fn new() -> Self {
        TaggedEchelon { rows: Vec::new() }
    }

    /// Reduces `v` in place, returning the accumulated tag.
    fn reduce(&self, v: &mut F2Vector, tag_len: usize) -> F2Vector {
        let mut tag = F2Vector::zeros(tag_len);
        for (pivot, row, row_tag) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                tag.xor_assign(row_tag);
            }
        }
        tag
    }

    fn insert(&mut self, v: F2Vector, tag: F2Vector) {
        let pivot = v.first_one().expect("inserting zero vector");
        self.rows.push((pivot, v, tag));
    }
}

/// Cohomology of a cochain complex at one spot.
#[derive(Clone, Debug)]
pub struct Cohomology {
    /// Dimension of the middle cochain space.
    pub ambient_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    /// Cocycles whose classes form a basis of the cohomology, each reduced against the image and
    /// the earlier representatives.
    pub representatives: Vec<F2Vector>,
    d_out: F2Matrix,
    reducer: TaggedEchelon,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of a cocycle in the basis given by `representatives`.
    pub fn coordinates(&self, cocycle: &F2Vector) -> Result<F2Vector, LinalgError> {
        if cocycle.len() != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                context: "cocycle length",
                left: self.ambient_dim,
                right: cocycle.len(),
            });
        }
        if !self.d_out.mul_vec(cocycle)?.is_zero() {
            return Err(LinalgError::NotACocycle);
        }
        let mut v = cocycle.clone();
        let tag = self.reducer.reduce(&mut v, self.dim());
        debug_assert!(v.is_zero(), "cocycle not spanned by image and representatives");
        Ok(tag)
    }

    pub fn is_coboundary(&self, cocycle: &F2Vector) -> Result<bool, LinalgError> {
        Ok(self.coordinates(cocycle)?.is_zero())
    }
}

/// Cohomology at the middle spot of `C --d_in--> M --d_out--> D`.
///
/// Fails with [`LinalgError::CompositionNonzero`] when `d_out * d_in != 0`.
pub fn cohomology(d_in: &F2Matrix, d_out: &F2Matrix) -> Result<Cohomology, LinalgError> {
    if d_in.rows() != d_out.cols() {
        return Err(LinalgError::DimensionMismatch {
            context: "middle dimension of complex",
            left: d_in.rows(),
            right: d_out.cols(),
        });
    }
    let composite = d_out.mul(d_in)?;
    if !composite.is_zero() {
        return Err(LinalgError::CompositionNonzero {
            rows: composite.rows(),
            cols: composite.cols(),
        });
    }
    let ambient = d_in.rows();
    let kernel = d_out.kernel_basis();

    // Image rows carry zero tags; tags are sized once the number of representatives is known, so
    // collect with a generous bound and trim afterwards.
    let tag_len = kernel.len();
    let mut reducer = TaggedEchelon::new();
    let mut image_dim = 0;
    for col in d_in.transpose().data {
        let mut v = col;
        reducer.reduce(&mut v, tag_len);
        if !v.is_zero() {
            reducer.insert(v, F2Vector::zeros(tag_len));
            image_dim += 1;
        }
    }
    let mut representatives = Vec::new();
    for k in kernel.iter() {
        let mut v = k.clone();
        reducer.reduce(&mut v, tag_len);
        if !v.is_zero() {
            let idx = representatives.len();
            representatives.push(v.clone());
            reducer.insert(v, F2Vector::unit(tag_len, idx));
        }
    }
    let dim = representatives.len();
    for (_, _, tag) in reducer.rows.iter_mut() {
        let mut t = F2Vector::zeros(dim);
        for i in tag.ones() {
            t.set(i, true);
        }
        *tag = t;
    }
    Ok(Cohomology {
        ambient_dim: ambient,
        kernel_dim: kernel.len(),
        image_dim,
        representatives,
        d_out: d_out.clone(),
        reducer,
    })
}

/// `dim ker(d_out) - rank(d_in)`, after checking that the composite vanishes.
pub fn cohomology_dim(d_in: &F2Matrix, d_out: &F2Matrix) -> Result<usize, LinalgError> {
    cohomology(d_in, d_out).map(|h| h.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent Gaussian elimination over `Vec<Vec<u8>>`, used as an oracle.
    fn naive_rank(rows: &[Vec<u8>]) -> usize {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && m[r][c] == 1 {
                    for k in 0..cols {
                        m[r][k] ^= m[rank][k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(F2Matrix::zeros(0, 0).rank(), 0);
        assert_eq!(F2Matrix::identity(3).rank(), 3);
        assert_eq!(F2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = F2Matrix::from_rows(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![F2Vector::from_bits(&[1, 1])]);
        assert!(F2Matrix::identity(4).kernel_basis().is_empty());
        let k = F2Matrix::from_rows(&[vec![0, 0]]).kernel_basis();
        assert_eq!(
            k,
            vec![F2Vector::from_bits(&[1, 0]), F2Vector::from_bits(&[0, 1])]
        );
    }

    #[test]
    fn cohomology_examples() {
        let zero_in = F2Matrix::zeros(2, 0);
        let zero_out = F2Matrix::zeros(0, 2);
        assert_eq!(cohomology_dim(&zero_in, &zero_out).unwrap(), 2);

        let id = F2Matrix::identity(2);
        assert_eq!(
            cohomology_dim(&id, &F2Matrix::zeros(0, 2)).unwrap(),
            0
        );

        // F2 -> F2^2 -> F2, exact in the middle.
        let inj = F2Matrix::from_rows(&[vec![1], vec![1]]);
        let proj = F2Matrix::from_rows(&[vec![1, 1]]);
        assert_eq!(cohomology_dim(&inj, &proj).unwrap(), 0);
    }

    #[test]
    fn nonzero_composition_rejected() {
        let d_in = F2Matrix::from_rows(&[vec![1], vec![0]]);
        let d_out = F2Matrix::from_rows(&[vec![1, 0]]);
        assert!(matches!(
            cohomology(&d_in, &d_out),
            Err(LinalgError::CompositionNonzero { .. })
        ));
    }

    #[test]
    fn mismatched_shapes_rejected() {
        let d_in = F2Matrix::zeros(3, 1);
        let d_out = F2Matrix::zeros(1, 2);
        assert!(matches!(
            cohomology(&d_in, &d_out),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coordinates_track_representatives() {
        // C^0 = 0, C^1 = F2^3 with d_out = [1 1 0]: cocycles span {(1,1,0),(0,0,1)}.
        let d_in = F2Matrix::zeros(3, 0);
        let d_out = F2Matrix::from_rows(&[vec![1, 1, 0]]);
        let h = cohomology(&d_in, &d_out).unwrap();
        assert_eq!(h.dim(), 2);
        for (i, rep) in h.representatives.iter().enumerate() {
            assert_eq!(h.coordinates(rep).unwrap(), F2Vector::unit(2, i));
        }
        let sum = F2Vector::from_bits(&[1, 1, 1]);
        assert_eq!(h.coordinates(&sum).unwrap().count_ones(), 2);
        assert_eq!(
            h.coordinates(&F2Vector::from_bits(&[1, 0, 0])),
            Err(LinalgError::NotACocycle)
        );
    }

    #[test]
    fn exhaustive_small_ranks_match_oracle() {
        // Every 3x3 matrix, plus every 2x4.
        for bits in 0u32..(1 << 9) {
            let rows: Vec<Vec<u8>> = (0..3)
                .map(|r| (0..3).map(|c| ((bits >> (3 * r + c)) & 1) as u8).collect())
                .collect();
            assert_eq!(F2Matrix::from_rows(&rows).rank(), naive_rank(&rows));
        }
        for bits in 0u32..(1 << 8) {
            let rows: Vec<Vec<u8>> = (0..2)
                .map(|r| (0..4).map(|c| ((bits >> (4 * r + c)) & 1) as u8).collect())
                .collect();
            assert_eq!(F2Matrix::from_rows(&rows).rank(), naive_rank(&rows));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
            (0..=max, 1..=max).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
            })
        }

        proptest! {
            #[test]
            fn rank_matches_naive(rows in matrix(12)) {
                prop_assume!(!rows.is_empty());
                prop_assert_eq!(F2Matrix::from_rows(&rows).rank(), naive_rank(&rows));
            }

            #[test]
            fn rank_nullity(rows in matrix(12)) {
                prop_assume!(!rows.is_empty());
                let m = F2Matrix::from_rows(&rows);
                prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
            }

            #[test]
            fn kernel_vectors_independent_and_annihilated(rows in matrix(12)) {
                prop_assume!(!rows.is_empty());
                let m = F2Matrix::from_rows(&rows);
                let k = m.kernel_basis();
                for v in &k {
                    prop_assert!(m.mul_vec(v).unwrap().is_zero());
                }
                let km = F2Matrix::from_columns(m.cols(), &k);
                prop_assert_eq!(km.rank(), k.len());
            }

            #[test]
            fn transpose_preserves_rank(rows in matrix(10)) {
                prop_assume!(!rows.is_empty());
                let m = F2Matrix::from_rows(&rows);
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn cohomology_invariant_under_reordering(
                rows in matrix(8),
                perm_seed in any::<u64>(),
            ) {
                // Build a complex F2^k --A--> F2^c --B--> F2^j with B*A = 0 by taking
                // B's rows from the left kernel of A.
                prop_assume!(!rows.is_empty());
                let a = F2Matrix::from_rows(&rows);
                let left_kernel = a.transpose().kernel_basis();
                let b = if left_kernel.is_empty() {
                    F2Matrix::zeros(0, a.rows())
                } else {
                    F2Matrix::from_columns(a.rows(), &left_kernel).transpose()
                };
                let dim = cohomology_dim(&a, &b).unwrap();

                // Permute the middle basis consistently.
                let n = a.rows();
                let mut perm: Vec<usize> = (0..n).collect();
                let mut s = perm_seed;
                for i in (1..n).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    perm.swap(i, (s >> 33) as usize % (i + 1));
                }
                let mut pa = F2Matrix::zeros(a.rows(), a.cols());
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        pa.set(perm[r], c, a.get(r, c));
                    }
                }
                let mut pb = F2Matrix::zeros(b.rows(), b.cols());
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        pb.set(r, perm[c], b.get(r, c));
                    }
                }
                prop_assert_eq!(cohomology_dim(&pa, &pb).unwrap(), dim);
            }
        }
    }
}
