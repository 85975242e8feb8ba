//! Exact linear algebra over GF(2).
//!
//! [`BinaryMatrix`] stores bit-packed rows for fast XOR/AND row arithmetic
//! (products, rank, row reduction) and exposes a sparse adjacency view for
//! Tanner-graph traversal. [`BinaryVector`] is the matching packed bit
//! vector used for error patterns and syndromes.

use thiserror::Error;

/// Errors raised by GF(2) operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A bit vector over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Build from 0/1 bits.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
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
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// In-place XOR with another vector of the same length.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Dot product mod 2.
    pub fn dot(&self, other: &Self) -> Result<bool, Gf2Error> {
        if self.len != other.len {
            return Err(Gf2Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        Ok(acc & 1 == 1)
    }

    /// Indices of the set bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Render as a contiguous 0/1 string.
    pub fn to_bit_string(&self) -> String {
        self.iter_bits().map(|b| if b { '1' } else { '0' }).collect()
    }
}

/// A dense matrix over GF(2) with bit-packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        Self {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from row-major 0/1 entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[u8]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if entries[r * cols + c] != 0 {
                    m.set(r, c, true);
                }
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words_per_row + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let idx = r * self.words_per_row + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// XOR row `src` into row `dst`.
    pub fn xor_rows(&mut self, dst: usize, src: usize) {
        assert_ne!(dst, src);
        let (lo, hi) = if dst < src { (dst, src) } else { (src, dst) };
        let (head, tail) = self.data.split_at_mut(hi * self.words_per_row);
        let lo_slice = &head[lo * self.words_per_row..lo * self.words_per_row + self.words_per_row];
        let hi_slice = &mut tail[..self.words_per_row];
        if dst > src {
            for (d, s) in hi_slice.iter_mut().zip(lo_slice) {
                *d ^= s;
            }
        } else {
            // src > dst: need the reverse direction, do it with a copy
            let src_copy: Vec<u64> = hi_slice.to_vec();
            let dst_slice =
                &mut head[lo * self.words_per_row..lo * self.words_per_row + self.words_per_row];
            for (d, s) in dst_slice.iter_mut().zip(&src_copy) {
                *d ^= s;
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words_per_row {
            self.data.swap(a * self.words_per_row + w, b * self.words_per_row + w);
        }
    }

    /// Extract row `r` as a vector.
    pub fn row(&self, r: usize) -> BinaryVector {
        BinaryVector {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &BinaryVector) {
        assert_eq!(v.len, self.cols);
        let start = r * self.words_per_row;
        self.data[start..start + self.words_per_row].copy_from_slice(&v.words);
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out.set(c, r, true);
            }
        }
        out
    }

    /// Column indices of the ones in row `r`, ascending.
    pub fn row_support(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let words = self.row_words(r);
        for (wi, &w) in words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + b);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Adjacency lists `(row -> cols, col -> rows)` for Tanner-graph traversal.
    pub fn adjacency(&self) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let mut row_adj = Vec::with_capacity(self.rows);
        let mut col_adj = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            let support = self.row_support(r);
            for &c in &support {
                col_adj[c].push(r);
            }
            row_adj.push(support);
        }
        (row_adj, col_adj)
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut out = Self::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    /// Concatenate columns: `[self | other]` (same row count).
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row_support(r) {
                out.set(r, c, true);
            }
            for c in other.row_support(r) {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// Keep only the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let mut out = Self::zeros(keep.len(), self.cols);
        for (i, &r) in keep.iter().enumerate() {
            let start = i * out.words_per_row;
            out.data[start..start + out.words_per_row].copy_from_slice(self.row_words(r));
        }
        out
    }

    /// FNV-1a hash of the dimensions and row-major bits, for run manifests.
    pub fn content_hash(&self) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64;
        let mut absorb = |x: u64| {
            for byte in x.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(0x0000_0100_0000_01B3);
            }
        };
        absorb(self.rows as u64);
        absorb(self.cols as u64);
        for r in 0..self.rows {
            // Mask the slack bits of the last word so equal matrices hash
            // equally regardless of construction path.
            for (wi, &w) in self.row_words(r).iter().enumerate() {
                let tail_bits = self.cols - wi * WORD_BITS;
                let masked = if tail_bits >= WORD_BITS {
                    w
                } else {
                    w & ((1u64 << tail_bits) - 1)
                };
                absorb(masked);
            }
        }
        h
    }

    /// Matrix-vector product `M v` mod 2.
    pub fn mul_vec(&self, v: &BinaryVector) -> Result<BinaryVector, Gf2Error> {
        if v.len != self.cols {
            return Err(Gf2Error::LengthMismatch {
                left: self.cols,
                right: v.len,
            });
        }
        let mut out = BinaryVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u32;
            for (a, b) in self.row_words(r).iter().zip(&v.words) {
                acc ^= (a & b).count_ones() & 1;
            }
            if acc & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }
}

/// Matrix product `A B` over GF(2).
///
/// Row i of the result is the XOR of the rows of `B` selected by the set
/// bits of row i of `A`.
pub fn matmul_gf2(a: &BinaryMatrix, b: &BinaryMatrix) -> Result<BinaryMatrix, Gf2Error> {
    if a.cols != b.rows {
        return Err(Gf2Error::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let mut out = BinaryMatrix::zeros(a.rows, b.cols);
    for r in 0..a.rows {
        let start = r * out.words_per_row;
        for k in a.row_support(r) {
            let src = b.row_words(k);
            for (w, s) in out.data[start..start + out.words_per_row].iter_mut().zip(src) {
                *w ^= s;
            }
        }
    }
    Ok(out)
}

/// Row rank over GF(2) by Gaussian elimination on a private copy.
pub fn rank_gf2(m: &BinaryMatrix) -> usize {
    let mut work = m.clone();
    let mut rank = 0;
    for col in 0..work.cols {
        if rank == work.rows {
            break;
        }
        let pivot = (rank..work.rows).find(|&r| work.get(r, col));
        let Some(pivot) = pivot else { continue };
        work.swap_rows(rank, pivot);
        for r in 0..work.rows {
            if r != rank && work.get(r, col) {
                work.xor_rows(r, rank);
            }
        }
        rank += 1;
    }
    rank
}

/// Row-echelon basis of the row space of a matrix, for fast membership tests.
#[derive(Debug, Clone)]
pub struct RowSpace {
    // Echelon rows keyed by pivot column, ascending.
    pivots: Vec<usize>,
    rows: Vec<BinaryVector>,
    cols: usize,
}

impl RowSpace {
    pub fn empty(cols: usize) -> Self {
        Self {
            pivots: Vec::new(),
            rows: Vec::new(),
            cols,
        }
    }

    pub fn new(m: &BinaryMatrix) -> Self {
        let mut space = Self::empty(m.cols);
        for r in 0..m.rows {
            space.insert(m.row(r));
        }
        space
    }

    /// Add a vector to the spanning set; returns true iff the rank grew.
    pub fn insert(&mut self, mut v: BinaryVector) -> bool {
        assert_eq!(v.len(), self.cols, "length mismatch in row-space insert");
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        if let Some(pivot) = v.support().first().copied() {
            let pos = self.pivots.partition_point(|&p| p < pivot);
            self.pivots.insert(pos, pivot);
            self.rows.insert(pos, v);
            true
        } else {
            false
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// True iff `v` lies in the row space.
    pub fn contains(&self, v: &BinaryVector) -> bool {
        assert_eq!(v.len(), self.cols, "length mismatch in row-space test");
        let mut v = v.clone();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn matmul_identity_leaves_operand_unchanged() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let entries: Vec<u8> = (0..9).map(|_| rng.random_range(0..2)).collect();
            let m = BinaryMatrix::from_rows(3, 3, &entries);
            let id = BinaryMatrix::identity(3);
            assert_eq!(matmul_gf2(&id, &m).unwrap(), m);
        }
    }

    #[test]
    fn matmul_hand_expansion() {
        // [[1,1],[0,1]] x [[1,0],[1,1]] = [[0,1],[1,1]] mod 2
        let a = BinaryMatrix::from_rows(2, 2, &[1, 1, 0, 1]);
        let b = BinaryMatrix::from_rows(2, 2, &[1, 0, 1, 1]);
        let expected = BinaryMatrix::from_rows(2, 2, &[0, 1, 1, 1]);
        assert_eq!(matmul_gf2(&a, &b).unwrap(), expected);
    }

    #[test]
    fn matmul_rejects_dimension_mismatch() {
        let a = BinaryMatrix::zeros(2, 3);
        let b = BinaryMatrix::zeros(2, 2);
        assert!(matches!(
            matmul_gf2(&a, &b),
            Err(Gf2Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(rank_gf2(&BinaryMatrix::zeros(4, 7)), 0);
        for n in [1, 5, 64, 65] {
            assert_eq!(rank_gf2(&BinaryMatrix::identity(n)), n);
        }
    }

    #[test]
    fn transpose_involution() {
        let mut rng = StdRng::seed_from_u64(3);
        let entries: Vec<u8> = (0..5 * 9).map(|_| rng.random_range(0..2)).collect();
        let m = BinaryMatrix::from_rows(5, 9, &entries);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn mul_vec_matches_rowwise_dot() {
        let m = BinaryMatrix::from_rows(2, 3, &[1, 0, 1, 1, 1, 0]);
        let v = BinaryVector::from_bits(&[1, 1, 1]);
        let s = m.mul_vec(&v).unwrap();
        assert_eq!(s.to_bit_string(), "00");
        let v2 = BinaryVector::from_bits(&[1, 0, 0]);
        assert_eq!(m.mul_vec(&v2).unwrap().to_bit_string(), "11");
    }

    #[test]
    fn row_space_membership() {
        let m = BinaryMatrix::from_rows(2, 4, &[1, 1, 0, 0, 0, 0, 1, 1]);
        let space = RowSpace::new(&m);
        assert_eq!(space.rank(), 2);
        assert!(space.contains(&BinaryVector::from_bits(&[1, 1, 1, 1])));
        assert!(space.contains(&BinaryVector::zeros(4)));
        assert!(!space.contains(&BinaryVector::from_bits(&[1, 0, 0, 0])));
    }

    fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> BinaryMatrix {
        let entries: Vec<u8> = (0..rows * cols).map(|_| rng.random_range(0..2)).collect();
        BinaryMatrix::from_rows(rows, cols, &entries)
    }

    proptest! {
        #[test]
        fn rank_invariant_under_row_permutation_and_addition(seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let rows = rng.random_range(2..10usize);
            let cols = rng.random_range(2..20usize);
            let m = random_matrix(&mut rng, rows, cols);
            let base_rank = rank_gf2(&m);

            let mut permuted = m.clone();
            let a = rng.random_range(0..rows);
            let b = rng.random_range(0..rows);
            permuted.swap_rows(a, b);
            prop_assert_eq!(rank_gf2(&permuted), base_rank);

            let mut added = m.clone();
            let dst = rng.random_range(0..rows);
            let src = (dst + 1 + rng.random_range(0..rows.max(2) - 1)) % rows;
            if dst != src {
                added.xor_rows(dst, src);
                prop_assert_eq!(rank_gf2(&added), base_rank);
            }
        }

        #[test]
        fn matmul_distributes_over_vectors(seed in 0u64..200) {
            let mut rng = StdRng::seed_from_u64(seed);
            let m = random_matrix(&mut rng, 6, 8);
            let bits_a: Vec<u8> = (0..8).map(|_| rng.random_range(0..2)).collect();
            let bits_b: Vec<u8> = (0..8).map(|_| rng.random_range(0..2)).collect();
            let a = BinaryVector::from_bits(&bits_a);
            let b = BinaryVector::from_bits(&bits_b);
            let lhs = m.mul_vec(&a.xor(&b)).unwrap();
            let rhs = m.mul_vec(&a).unwrap().xor(&m.mul_vec(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
