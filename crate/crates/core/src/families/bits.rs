//! Fixed-length bit sequences standing in for eventually-zero infinite
//! 0/1 sequences, with the prefix/length/value helpers and the square-root
//! encoder `psi`, plus the XOR-group tables they parameterize.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BitsError {
    #[error("bit at index {index} is {value}, expected 0 or 1")]
    BadBit { index: usize, value: u8 },
    #[error("{len} bits cannot encode {value}")]
    LengthInsufficient { value: u128, len: usize },
}

/// A 0/1 sequence of fixed length (at most 127 bits, so values fit `u128`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BitSequence {
    bits: Vec<u8>,
}

impl BitSequence {
    pub fn new(bits: Vec<u8>) -> Result<Self, BitsError> {
        assert!(bits.len() < 128, "sequences are capped at 127 bits");
        for (index, &value) in bits.iter().enumerate() {
            if value > 1 {
                return Err(BitsError::BadBit { index, value });
            }
        }
        Ok(BitSequence { bits })
    }

    pub fn zero(len: usize) -> Self {
        BitSequence { bits: vec![0; len] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Bit at `i`; positions past the stored length read as 0.
    pub fn get(&self, i: usize) -> u8 {
        self.bits.get(i).copied().unwrap_or(0)
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The prefix up to and including the last 1; `(0)` for the zero
    /// sequence.
    pub fn h(&self) -> Vec<u8> {
        match self.bits.iter().rposition(|&b| b == 1) {
            Some(last) => self.bits[..=last].to_vec(),
            None => vec![0],
        }
    }

    /// Length of the stripped prefix; 0 for the zero sequence.
    pub fn l(&self) -> usize {
        match self.bits.iter().rposition(|&b| b == 1) {
            Some(last) => last + 1,
            None => 0,
        }
    }

    /// `Σ_{i=0}^{l} a_i·2^i`; the bit at `l` itself is always 0, so this is
    /// the little-endian value of the sequence.
    pub fn r(&self) -> u128 {
        let l = self.l();
        (0..=l).map(|i| (self.get(i) as u128) << i).sum()
    }
}

/// Largest `s` with `s*s <= value`.
pub fn isqrt(value: u128) -> u128 {
    if value < 2 {
        return value;
    }
    let mut lo = 1u128;
    let mut hi = 1u128 << 64;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if mid.checked_mul(mid).map_or(false, |sq| sq <= value) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Little-endian binary encoding of `⌊√value⌋` into `len` bits.
pub fn psi(value: u128, len: usize) -> Result<BitSequence, BitsError> {
    let root = isqrt(value);
    if len < 128 && root >> len != 0 {
        return Err(BitsError::LengthInsufficient { value, len });
    }
    let bits = (0..len).map(|i| ((root >> i) & 1) as u8).collect();
    Ok(BitSequence { bits })
}

/// XOR table of the group of `len`-bit sequences; element `x` is the
/// sequence whose bit `i` is `(x >> i) & 1`.
pub fn bitvector_group_table(len: usize) -> (usize, Vec<usize>) {
    assert!(len < 16, "table would not fit in memory");
    let order = 1usize << len;
    let mut table = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            table[x * order + y] = x ^ y;
        }
    }
    (order, table)
}

/// Twist table `phi(i, j) = psi(i)` when `j` is odd, zero otherwise, with
/// values encoded as XOR-group element indices; feeds the twisted band
/// construction.
pub fn psi_twist(rows: usize, cols: usize, len: usize) -> Result<Vec<usize>, BitsError> {
    let mut phi = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let encoded = psi(i as u128, len)?;
        let index: usize =
            encoded.bits().iter().enumerate().map(|(k, &b)| (b as usize) << k).sum();
        for j in 0..cols {
            phi.push(if j % 2 == 1 { index } else { 0 });
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::finite::rect_band_monoid;
    use crate::monoid::{rect_band_decompose, ElementSet};

    #[test]
    fn zero_sequence_conventions() {
        let z = BitSequence::zero(4);
        assert_eq!(z.h(), vec![0]);
        assert_eq!(z.l(), 0);
        assert_eq!(z.r(), 0);
    }

    #[test]
    fn stripped_prefix_and_value() {
        let a = BitSequence::new(vec![1, 1, 0, 0]).unwrap();
        assert_eq!(a.h(), vec![1, 1]);
        assert_eq!(a.l(), 2);
        assert_eq!(a.r(), 3);
        let b = BitSequence::new(vec![0, 1, 0, 1, 0]).unwrap();
        assert_eq!(b.h(), vec![0, 1, 0, 1]);
        assert_eq!(b.l(), 4);
        assert_eq!(b.r(), 10);
    }

    #[test]
    fn psi_encodes_the_integer_square_root() {
        let p = psi(9, 4).unwrap();
        assert_eq!(p.bits(), &[1, 1, 0, 0]);
        assert_eq!(p.r(), 3);
        for m in 0..1000u128 {
            assert_eq!(psi(m, 8).unwrap().r(), isqrt(m), "m = {m}");
        }
    }

    #[test]
    fn psi_rejects_short_encodings() {
        assert_eq!(psi(9, 1).unwrap_err(), BitsError::LengthInsufficient { value: 9, len: 1 });
    }

    #[test]
    fn rejects_non_binary_entries() {
        assert_eq!(
            BitSequence::new(vec![0, 2]).unwrap_err(),
            BitsError::BadBit { index: 1, value: 2 }
        );
    }

    #[test]
    fn twisted_xor_band_validates_with_expected_units() {
        let len = 3;
        let (order, table) = bitvector_group_table(len);
        let rows = 4;
        let cols = 2;
        let phi = psi_twist(rows, cols, len).unwrap();
        let m = rect_band_monoid(order, table, rows, cols, &phi).unwrap();
        let band: ElementSet = (1..m.order()).collect();
        let d = rect_band_decompose(&m, &band).unwrap();
        assert_eq!((d.rows, d.cols), (rows, cols));
        // Over an exponent-2 group each cell's unit carries exactly the
        // twist value phi(i, j).
        let encode = |a: usize, i: usize, j: usize| 1 + (a * rows + i) * cols + j;
        for i in 0..rows {
            for j in 0..cols {
                assert_eq!(d.idempotent[i][j], encode(phi[i * cols + j], i, j));
            }
        }
    }
}
