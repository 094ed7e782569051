//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors and matrix rows are stored as `u64` words, bit `i` living in word
//! `i / 64` at position `i % 64`. Everything here is exact and deterministic.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; words_for(len)], len }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Unit vector `e_bit`.
    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Vector of length `len` whose bit `p` is bit `p` of `value`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len.min(WORD) {
            v.set(i, (value >> i) & 1 == 1);
        }
        v
    }

    /// Parses a `0`/`1` string; character `i` is coordinate `i`.
    pub fn parse_bits(s: &str) -> Result<Self, Error> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::BadBitString { position: pos, found: other });
                }
            }
        }
        Ok(Self::from_bools(&bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard dot product `Σ x_i y_i` in GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    /// The integer `Σ bit_p 2^p`, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.words.iter().skip(1).any(|&w| w != 0) {
            return None;
        }
        Some(self.words.first().copied().unwrap_or(0))
    }

    /// Compares the little-endian integer encodings of two vectors.
    pub fn cmp_encoding(&self, other: &BitVec) -> Ordering {
        let n = self.words.len().max(other.words.len());
        for i in (0..n).rev() {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// `0`/`1` string, coordinate 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bit_string())
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    nrows: usize,
    ncols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        let stride = words_for(ncols);
        Self { nrows, ncols, stride, data: vec![0; nrows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, Error> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::LengthMismatch { expected: ncols, found: row.len() });
            }
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b);
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.nrows && c < self.ncols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.nrows && c < self.ncols);
        let idx = r * self.stride + c / WORD;
        let mask = 1u64 << (c % WORD);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            words: self.data[r * self.stride..(r + 1) * self.stride].to_vec(),
            len: self.ncols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|r| (r + 1..self.ncols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Symmetric with zero diagonal, i.e. the matrix of an alternating form.
    pub fn is_alternating(&self) -> bool {
        self.is_symmetric() && (0..self.nrows).all(|i| !self.get(i, i))
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.ncols, "length mismatch");
        let mut out = BitVec::zeros(self.nrows);
        for r in 0..self.nrows {
            let row = &self.data[r * self.stride..(r + 1) * self.stride];
            let ones: u32 = row.iter().zip(x.words()).map(|(a, b)| (a & b).count_ones()).sum();
            if ones & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// The bilinear form `xᵀ M y`.
    pub fn pair(&self, x: &BitVec, y: &BitVec) -> bool {
        x.dot(&self.mul_vec(y))
    }

    pub fn rank(&self) -> usize {
        let mut scratch = self.data.clone();
        rank_in_place(&mut scratch, self.nrows, self.stride, self.ncols)
    }

    /// Basis of `{x : M x = 0}`, one vector per non-pivot column of the
    /// reduced row echelon form, in increasing column order.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.reduce_row_echelon();
        let mut pivot_row_of = vec![None; self.ncols];
        for (row, &col) in pivots.iter().enumerate() {
            pivot_row_of[col] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_row_of[free].is_some() {
                continue;
            }
            let mut v = BitVec::unit(self.ncols, free);
            for (row, &col) in pivots.iter().enumerate() {
                if m.get(row, free) {
                    v.set(col, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Gauss-Jordan elimination in place. Returns the pivot column of each
    /// nonzero row, top to bottom.
    fn reduce_row_echelon(&mut self) -> Vec<usize> {
        let stride = self.stride;
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.ncols {
            if next == self.nrows {
                break;
            }
            let (w, mask) = (col / WORD, 1u64 << (col % WORD));
            let Some(p) = (next..self.nrows).find(|&r| self.data[r * stride + w] & mask != 0) else {
                continue;
            };
            if p != next {
                for k in 0..stride {
                    self.data.swap(p * stride + k, next * stride + k);
                }
            }
            for r in 0..self.nrows {
                if r != next && self.data[r * stride + w] & mask != 0 {
                    for k in 0..stride {
                        let v = self.data[next * stride + k];
                        self.data[r * stride + k] ^= v;
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    /// Rows as `0`/`1` separated by single spaces, one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in 0..self.nrows {
            let line: Vec<&str> =
                (0..self.ncols).map(|c| if self.get(r, c) { "1" } else { "0" }).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.nrows, self.ncols)?;
        f.write_str(&self.to_text())
    }
}

/// Row rank of a packed matrix, destroying the buffer.
///
/// `rows` holds `nrows * stride` words. Single-word rows take a tight loop
/// since that covers every form with at most 64 edges.
pub fn rank_in_place(rows: &mut [u64], nrows: usize, stride: usize, ncols: usize) -> usize {
    debug_assert_eq!(rows.len(), nrows * stride);
    if stride == 1 {
        let mut rank = 0;
        for col in 0..ncols {
            let mask = 1u64 << col;
            let Some(p) = (rank..nrows).find(|&r| rows[r] & mask != 0) else {
                continue;
            };
            rows.swap(p, rank);
            let pivot = rows[rank];
            for row in rows.iter_mut().take(nrows).skip(rank + 1) {
                if *row & mask != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
            if rank == nrows {
                break;
            }
        }
        return rank;
    }
    let mut rank = 0;
    for col in 0..ncols {
        let (w, mask) = (col / WORD, 1u64 << (col % WORD));
        let Some(p) = (rank..nrows).find(|&r| rows[r * stride + w] & mask != 0) else {
            continue;
        };
        if p != rank {
            for k in 0..stride {
                rows.swap(p * stride + k, rank * stride + k);
            }
        }
        let (head, tail) = rows.split_at_mut((rank + 1) * stride);
        let pivot = &head[rank * stride..];
        for row in tail.chunks_exact_mut(stride) {
            if row[w] & mask != 0 {
                // Words below `w` are already zero in the pivot row.
                for k in w..stride {
                    row[k] ^= pivot[k];
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Symplectic basis of an alternating form: hyperbolic pairs plus radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticDecomposition {
    pub hyperbolic_pairs: Vec<(BitVec, BitVec)>,
    pub radical_basis: Vec<BitVec>,
}

impl SymplecticDecomposition {
    pub fn rank(&self) -> usize {
        2 * self.hyperbolic_pairs.len()
    }
}

/// Symplectic Gram-Schmidt.
///
/// Works on a list that starts as the standard basis. The pivot is the
/// lowest-positioned vector that pairs nontrivially with some other vector;
/// its partner is the lowest-positioned such witness. Every remaining vector
/// is then made orthogonal to the new pair, and the pair is removed.
pub fn symplectic_reduce(m: &Gf2Matrix) -> Result<SymplecticDecomposition, Error> {
    if !m.is_alternating() {
        return Err(Error::NotAlternating);
    }
    let n = m.nrows();
    let mut work: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
    // images[i] = M * work[i], kept in sync so pairings are dot products.
    let mut images: Vec<BitVec> = (0..n).map(|i| m.row(i)).collect();
    let mut pairs = Vec::new();
    loop {
        let found = (0..work.len()).find_map(|i| {
            (0..work.len()).find(|&j| j != i && work[j].dot(&images[i])).map(|j| (i, j))
        });
        let Some((i, j)) = found else { break };
        let (x, mx) = (work[i].clone(), images[i].clone());
        let (y, my) = (work[j].clone(), images[j].clone());
        for k in 0..work.len() {
            if k == i || k == j {
                continue;
            }
            let with_y = work[k].dot(&my);
            let with_x = work[k].dot(&mx);
            if with_y {
                work[k].xor_assign(&x);
                images[k].xor_assign(&mx);
            }
            if with_x {
                work[k].xor_assign(&y);
                images[k].xor_assign(&my);
            }
        }
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        work.remove(hi);
        images.remove(hi);
        work.remove(lo);
        images.remove(lo);
        pairs.push((x, y));
    }
    Ok(SymplecticDecomposition { hyperbolic_pairs: pairs, radical_basis: work })
}

/// A maximum isotropic subspace: the radical plus the first vector of every
/// hyperbolic pair. Its size is `dim - rank / 2`.
pub fn max_isotropic(m: &Gf2Matrix) -> Result<Vec<BitVec>, Error> {
    let dec = symplectic_reduce(m)?;
    let mut out = dec.radical_basis;
    out.extend(dec.hyperbolic_pairs.into_iter().map(|(x, _)| x));
    Ok(out)
}

/// Rank of the span of a set of vectors.
pub fn span_rank(vectors: &[BitVec]) -> usize {
    let Some(first) = vectors.first() else { return 0 };
    let len = first.len();
    let stride = words_for(len);
    let mut buf: Vec<u64> = Vec::with_capacity(vectors.len() * stride);
    for v in vectors {
        assert_eq!(v.len(), len, "length mismatch");
        buf.extend_from_slice(v.words());
    }
    rank_in_place(&mut buf, vectors.len(), stride, len)
}
