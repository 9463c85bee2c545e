//! Dense bit-packed polynomials over GF(2).

use std::fmt;

use crate::error::{Error, Result};

/// Polynomial in GF(2)[x]; bit `i` of word `i / 64` is the coefficient of `x^i`.
///
/// Words are kept trimmed, so equal polynomials have equal representations.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryPoly {
    words: Vec<u64>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        BinaryPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BinaryPoly { words: vec![1] }
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        BinaryPoly { words }
    }

    pub fn from_u64(x: u64) -> Self {
        BinaryPoly::from_words(vec![x])
    }

    /// `x^i`.
    pub fn monomial(i: usize) -> Self {
        let mut words = vec![0u64; i / 64 + 1];
        words[i / 64] = 1 << (i % 64);
        BinaryPoly { words }
    }

    /// Polynomial whose coefficients are the given bits, lowest degree first.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        for (i, b) in bits.into_iter().enumerate() {
            if i % 64 == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (i % 64);
            }
        }
        BinaryPoly::from_words(words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn into_words(self) -> Vec<u64> {
        self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Number of coefficients up to the leading one (0 for the zero polynomial).
    pub fn len(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(top) => 64 * (self.words.len() - 1) + (64 - top.leading_zeros() as usize),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.coeff(i))
    }

    /// Big-endian hex: bit `i` of the integer is the coefficient of `x^i`.
    pub fn from_hex(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("0x").unwrap_or(t);
        if t.is_empty() {
            return Err(Error::InvalidHex(s.to_string()));
        }
        let mut words = vec![0u64; t.len().div_ceil(16)];
        for (i, ch) in t.bytes().rev().enumerate() {
            let nibble = (ch as char).to_digit(16).ok_or_else(|| Error::InvalidHex(s.to_string()))?;
            words[i / 16] |= (nibble as u64) << (4 * (i % 16));
        }
        Ok(BinaryPoly::from_words(words))
    }

    pub fn to_hex(&self) -> String {
        match self.words.split_last() {
            None => "0".to_string(),
            Some((top, rest)) => {
                let mut s = format!("{top:x}");
                for w in rest.iter().rev() {
                    s.push_str(&format!("{w:016x}"));
                }
                s
            }
        }
    }

    /// Raw 0/1 string, highest degree first (same digit order as the hex form).
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|c| c == b'0' || c == b'1') {
            return Err(Error::InvalidHex(s.to_string()));
        }
        Ok(BinaryPoly::from_bits(t.bytes().rev().map(|c| c == b'1')))
    }

    pub fn to_bit_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        (0..self.len()).rev().map(|i| if self.coeff(i) { '1' } else { '0' }).collect()
    }

    pub fn add(&self, other: &BinaryPoly) -> BinaryPoly {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0))
            .collect();
        BinaryPoly::from_words(words)
    }

    /// Keeps coefficients below `x^n`.
    pub fn truncate(&self, n: usize) -> BinaryPoly {
        let mut words: Vec<u64> = self.words.iter().take(n.div_ceil(64)).copied().collect();
        if !n.is_multiple_of(64) {
            if let Some(w) = words.get_mut(n / 64) {
                *w &= (1u64 << (n % 64)) - 1;
            }
        }
        BinaryPoly::from_words(words)
    }
}

impl fmt::Debug for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPoly({})", self.to_hex())
    }
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Fixed-length bit vector with word-level range XOR.
#[derive(Clone, Debug)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
    /// Words touched by `xor_range` since creation.
    pub(crate) word_ops: u64,
}

impl PartialEq for BitVec {
    fn eq(&self, other: &BitVec) -> bool {
        self.len == other.len && self.words == other.words
    }
}

impl Eq for BitVec {}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)], word_ops: 0 }
    }

    pub fn from_poly(p: &BinaryPoly, len: usize) -> Self {
        assert!(p.len() <= len);
        let mut v = BitVec::zeros(len);
        v.words[..p.words().len()].copy_from_slice(p.words());
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_poly(&self) -> BinaryPoly {
        BinaryPoly::from_words(self.words.clone())
    }

    pub fn word_ops(&self) -> u64 {
        self.word_ops
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// `n <= 64` bits starting at `pos`.
    pub(crate) fn read_word(&self, pos: usize, n: usize) -> u64 {
        self.read(pos, n)
    }

    /// XORs the low `n` bits of `v` in at `pos`, counting one word operation.
    pub(crate) fn xor_word(&mut self, pos: usize, v: u64, n: usize) {
        self.xor_in(pos, v, n);
        self.word_ops += 1;
    }

    #[inline]
    fn read(&self, pos: usize, n: usize) -> u64 {
        debug_assert!((1..=64).contains(&n) && pos + n <= self.len);
        let (w, o) = (pos / 64, pos % 64);
        let mut v = self.words[w] >> o;
        if o != 0 && o + n > 64 {
            v |= self.words[w + 1] << (64 - o);
        }
        if n < 64 {
            v &= (1u64 << n) - 1;
        }
        v
    }

    #[inline]
    fn xor_in(&mut self, pos: usize, v: u64, n: usize) {
        let (w, o) = (pos / 64, pos % 64);
        self.words[w] ^= v << o;
        if o != 0 && o + n > 64 {
            self.words[w + 1] ^= v >> (64 - o);
        }
    }

    /// `self[dst..dst+len] ^= self[src..src+len]`; the ranges must not overlap.
    pub fn xor_range(&mut self, dst: usize, src: usize, len: usize) {
        debug_assert!(dst + len <= src || src + len <= dst);
        let mut done = 0;
        while done < len {
            let n = (len - done).min(64);
            let v = self.read(src + done, n);
            self.xor_in(dst + done, v, n);
            done += n;
            self.word_ops += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hex_examples() {
        let p = BinaryPoly::from_hex("b").unwrap();
        assert_eq!(p.bits().collect::<Vec<_>>(), vec![true, true, false, true]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(BinaryPoly::from_hex("0").unwrap(), BinaryPoly::zero());
        assert_eq!(BinaryPoly::zero().to_hex(), "0");
        assert_eq!(BinaryPoly::from_hex("000ff").unwrap().to_hex(), "ff");
        assert_eq!(BinaryPoly::monomial(64).to_hex(), "10000000000000000");
        assert!(BinaryPoly::from_hex("g1").is_err());
        assert!(BinaryPoly::from_hex("").is_err());
    }

    #[test]
    fn bit_string_examples() {
        assert_eq!(BinaryPoly::from_bit_string("1011").unwrap(), BinaryPoly::from_u64(0xb));
        assert_eq!(BinaryPoly::from_u64(0xb).to_bit_string(), "1011");
        assert!(BinaryPoly::from_bit_string("102").is_err());
    }

    #[test]
    fn xor_range_unaligned() {
        let mut v = BitVec::zeros(300);
        for i in (0..300).step_by(3) {
            v.set(i, true);
        }
        let before: Vec<bool> = v.iter().collect();
        v.xor_range(5, 150, 130);
        for i in 0..300 {
            let expect = if (5..135).contains(&i) { before[i] ^ before[i - 5 + 150] } else { before[i] };
            assert_eq!(v.get(i), expect, "bit {i}");
        }
    }

    proptest! {
        #[test]
        fn hex_roundtrip(words in proptest::collection::vec(any::<u64>(), 0..6)) {
            let p = BinaryPoly::from_words(words);
            prop_assert_eq!(BinaryPoly::from_hex(&p.to_hex()).unwrap(), p);
        }
    }
}
