//! Row vectors and matrices over the Boolean semiring (+ = OR, . = AND),
//! with the elementwise partial order `M <= M'` ("every 1 of M is in M'").
//! Rows are packed into 64-bit words.

/// Bit row vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolVec {
    len: usize,
    words: Vec<u64>,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BoolVec {
    pub fn zeros(len: usize) -> BoolVec {
        BoolVec { len, words: vec![0; words_for(len)] }
    }

    /// The standard basis vector e_i.
    pub fn unit(len: usize, i: usize) -> BoolVec {
        let mut v = BoolVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// OR `other` into self; reports whether any bit changed.
    pub fn or_assign(&mut self, other: &BoolVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut changed = false;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            let next = *a | b;
            changed |= next != *a;
            *a = next;
        }
        changed
    }

    /// Elementwise `self >= other` (`other ⪯ self`).
    pub fn ge(&self, other: &BoolVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == *b)
    }

    /// Boolean dot product: 1 iff the supports intersect.
    pub fn dot(&self, other: &BoolVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Row-vector times matrix.
    pub fn mul_mat(&self, m: &BoolMat) -> BoolVec {
        debug_assert_eq!(self.len, m.rows);
        let mut out = BoolVec::zeros(m.cols);
        for i in self.iter_ones() {
            out.or_assign(&m.row(i));
        }
        out
    }
}

/// Bit matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolMat {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BoolMat {
    pub fn zeros(rows: usize, cols: usize) -> BoolMat {
        let words_per_row = words_for(cols);
        BoolMat { rows, cols, words_per_row, bits: vec![0; rows * words_per_row] }
    }

    pub fn identity(n: usize) -> BoolMat {
        let mut m = BoolMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
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
        assert!(r < self.rows && c < self.cols);
        self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = r * self.words_per_row + c / 64;
        if value {
            self.bits[w] |= 1 << (c % 64);
        } else {
            self.bits[w] &= !(1 << (c % 64));
        }
    }

    pub fn row(&self, r: usize) -> BoolVec {
        assert!(r < self.rows);
        let start = r * self.words_per_row;
        BoolVec { len: self.cols, words: self.bits[start..start + self.words_per_row].to_vec() }
    }

    /// OR a row vector into row `r`; reports whether any bit changed.
    pub fn or_row(&mut self, r: usize, v: &BoolVec) -> bool {
        assert!(r < self.rows && v.len == self.cols);
        let start = r * self.words_per_row;
        let mut changed = false;
        for (a, b) in self.bits[start..start + self.words_per_row].iter_mut().zip(&v.words) {
            let next = *a | b;
            changed |= next != *a;
            *a = next;
        }
        changed
    }

    pub fn mul(&self, other: &BoolMat) -> BoolMat {
        assert_eq!(self.cols, other.rows);
        let mut out = BoolMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let v = self.row(r).mul_mat(other);
            out.or_row(r, &v);
        }
        out
    }

    /// Matrix times column vector.
    pub fn mul_col(&self, v: &BoolVec) -> BoolVec {
        assert_eq!(self.cols, v.len);
        let mut out = BoolVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.row(r).dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    /// Elementwise `self >= other`.
    pub fn ge(&self, other: &BoolMat) -> bool {
        debug_assert!(self.rows == other.rows && self.cols == other.cols);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == *b)
    }

    /// Serialize each row to little-endian bit-packed bytes.
    pub fn row_bytes(&self, r: usize) -> Vec<u8> {
        let nbytes = self.cols.div_ceil(8);
        let mut out = vec![0u8; nbytes];
        for c in 0..self.cols {
            if self.get(r, c) {
                out[c / 8] |= 1 << (c % 8);
            }
        }
        out
    }

    pub fn set_row_from_bytes(&mut self, r: usize, bytes: &[u8]) -> bool {
        if bytes.len() != self.cols.div_ceil(8) {
            return false;
        }
        for c in 0..self.cols {
            self.set(r, c, bytes[c / 8] >> (c % 8) & 1 == 1);
        }
        true
    }
}

impl BoolVec {
    pub fn to_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        let mut out = vec![0u8; nbytes];
        for i in self.iter_ones() {
            out[i / 8] |= 1 << (i % 8);
        }
        out
    }

    pub fn from_bytes(len: usize, bytes: &[u8]) -> Option<BoolVec> {
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let mut v = BoolVec::zeros(len);
        for i in 0..len {
            if bytes[i / 8] >> (i % 8) & 1 == 1 {
                v.set(i, true);
            }
        }
        Some(v)
    }
}
