//! Conversion between the monomial basis and the novel polynomial basis
//! `X_k = Π s_i^(b_i)` (b the binary digits of k).
//!
//! The converter divides by `s_k` for power-of-two k only. Those are binomials
//! `x^(2^k) + x`, so every division is a sequence of shifted range XORs. The
//! routines are generic over [`XorLanes`] so the same code drives bit vectors,
//! field-element vectors and the symbolic buffers of the circuit generator.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{BinaryPoly, BitVec};

/// A buffer of lanes supporting `lanes[dst..dst+len] ^= lanes[src..src+len]`
/// for non-overlapping ranges.
pub trait XorLanes {
    fn xor_range(&mut self, dst: usize, src: usize, len: usize);

    /// Converts a whole block at once if the buffer has a shortcut for it.
    fn convert_block(&mut self, _base: usize, _t: u32, _width: usize, _forward: bool) -> bool {
        false
    }
}

impl XorLanes for BitVec {
    fn xor_range(&mut self, dst: usize, src: usize, len: usize) {
        BitVec::xor_range(self, dst, src, len)
    }

    fn convert_block(&mut self, base: usize, t: u32, width: usize, forward: bool) -> bool {
        let bits = width << t;
        if bits > 64 {
            return false;
        }
        let x = self.read_word(base, bits);
        let y = word_map(t, width, forward).apply(x);
        self.xor_word(base, x ^ y, bits);
        true
    }
}

/// A single word of at most 64 lanes.
struct Word(u64);

impl XorLanes for Word {
    fn xor_range(&mut self, dst: usize, src: usize, len: usize) {
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        self.0 ^= ((self.0 >> src) & mask) << dst;
    }
}

/// GF(2)-linear map on one word, as per-byte lookup tables.
struct WordMap {
    tables: Vec<[u64; 256]>,
}

impl WordMap {
    fn build(bits: usize, f: impl Fn(u64) -> u64) -> WordMap {
        let columns: Vec<u64> = (0..bits).map(|i| f(1 << i)).collect();
        let tables = columns
            .chunks(8)
            .map(|cols| {
                let mut table = [0u64; 256];
                for (v, slot) in table.iter_mut().enumerate() {
                    *slot = cols.iter().enumerate().filter(|(b, _)| (v >> b) & 1 == 1).fold(0, |acc, (_, c)| acc ^ c);
                }
                table
            })
            .collect();
        WordMap { tables }
    }

    #[inline]
    fn apply(&self, x: u64) -> u64 {
        self.tables.iter().enumerate().fold(0, |acc, (j, t)| acc ^ t[((x >> (8 * j)) & 0xff) as usize])
    }
}

/// Conversions of single-word blocks, indexed by `(t, lg width)`.
fn word_map(t: u32, width: usize, forward: bool) -> &'static WordMap {
    static MAPS: OnceLock<Vec<(WordMap, WordMap)>> = OnceLock::new();
    let maps = MAPS.get_or_init(|| {
        (0..=6u32)
            .flat_map(|t| (0..=6u32).map(move |lw| (t, lw)))
            .map(|(t, lw)| {
                // combinations wider than a word stay empty
                let bits = if t + lw <= 6 { 1usize << (t + lw) } else { 0 };
                let run = |forward: bool| {
                    move |x: u64| {
                        let mut w = Word(x);
                        if forward {
                            to_novel_lanes(&mut w, 0, t, 1 << lw);
                        } else {
                            from_novel_lanes(&mut w, 0, t, 1 << lw);
                        }
                        w.0
                    }
                };
                (WordMap::build(bits, run(true)), WordMap::build(bits, run(false)))
            })
            .collect()
    });
    let (f, b) = &maps[(t * 7 + width.trailing_zeros()) as usize];
    if forward {
        f
    } else {
        b
    }
}

impl XorLanes for [FieldElement] {
    fn xor_range(&mut self, dst: usize, src: usize, len: usize) {
        let (d, s) = if dst < src {
            let (lo, hi) = self.split_at_mut(src);
            (&mut lo[dst..dst + len], &hi[..len])
        } else {
            let (lo, hi) = self.split_at_mut(dst);
            (&mut hi[..len], &lo[src..src + len])
        };
        for (x, y) in d.iter_mut().zip(s) {
            *x ^= *y;
        }
    }
}

impl XorLanes for Vec<FieldElement> {
    fn xor_range(&mut self, dst: usize, src: usize, len: usize) {
        self.as_mut_slice().xor_range(dst, src, len)
    }
}

/// Largest power of two strictly below `t` (t >= 2).
fn split_point(t: u32) -> u32 {
    1 << (31 - (t - 1).leading_zeros())
}

/// Radix expansion of the `2^t` elements at `base` in `y = x^(2^k) + x`.
/// Elements are `width` lanes wide.
fn taylor<B: XorLanes + ?Sized>(buf: &mut B, base: usize, t: u32, k: u32, width: usize) {
    if t <= k {
        return;
    }
    let half = 1usize << (t - 1);
    let shift = half - (1usize << (t - k - 1));
    let mut hi = 2 * half;
    while hi > half {
        let lo = hi.saturating_sub(shift).max(half);
        buf.xor_range(base + (lo - shift) * width, base + lo * width, (hi - lo) * width);
        hi = lo;
    }
    taylor(buf, base, t - 1, k, width);
    taylor(buf, base + half * width, t - 1, k, width);
}

fn taylor_inverse<B: XorLanes + ?Sized>(buf: &mut B, base: usize, t: u32, k: u32, width: usize) {
    if t <= k {
        return;
    }
    let half = 1usize << (t - 1);
    let shift = half - (1usize << (t - k - 1));
    taylor_inverse(buf, base, t - 1, k, width);
    taylor_inverse(buf, base + half * width, t - 1, k, width);
    let mut lo = half;
    while lo < 2 * half {
        let hi = (lo + shift).min(2 * half);
        buf.xor_range(base + (lo - shift) * width, base + lo * width, (hi - lo) * width);
        lo = hi;
    }
}

/// Monomial to novel basis, in place, for the `2^t` elements at `base`.
pub fn to_novel_lanes<B: XorLanes + ?Sized>(buf: &mut B, base: usize, t: u32, width: usize) {
    if t <= 1 || buf.convert_block(base, t, width, true) {
        return;
    }
    let k = split_point(t);
    taylor(buf, base, t, k, width);
    // outer polynomial in y, whose coefficients are blocks of 2^k elements
    to_novel_lanes(buf, base, t - k, width << k);
    let block = width << k;
    for j in 0..1usize << (t - k) {
        to_novel_lanes(buf, base + j * block, k, width);
    }
}

/// Inverse of [`to_novel_lanes`].
pub fn from_novel_lanes<B: XorLanes + ?Sized>(buf: &mut B, base: usize, t: u32, width: usize) {
    if t <= 1 || buf.convert_block(base, t, width, false) {
        return;
    }
    let k = split_point(t);
    let block = width << k;
    for j in 0..1usize << (t - k) {
        from_novel_lanes(buf, base + j * block, k, width);
    }
    from_novel_lanes(buf, base, t - k, block);
    taylor_inverse(buf, base, t, k, width);
}

/// Polynomial in the novel basis; coefficient `i` multiplies `X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NovelPoly {
    /// Coefficients in GF(2).
    Bits(BitVec),
    /// Coefficients in GF(2^d).
    Field(Vec<FieldElement>),
}

impl NovelPoly {
    pub fn len(&self) -> usize {
        match self {
            NovelPoly::Bits(b) => b.len(),
            NovelPoly::Field(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        match self {
            NovelPoly::Bits(b) => FieldElement::from_coords(b.get(i) as u64),
            NovelPoly::Field(v) => v[i],
        }
    }

    /// Coefficients as field elements (GF(2) bits embed as 0/1).
    pub fn to_field_coeffs(&self) -> Vec<FieldElement> {
        (0..self.len()).map(|i| self.coeff(i)).collect()
    }

    /// Narrows field coefficients to GF(2).
    pub fn to_bits(&self) -> Result<NovelPoly> {
        match self {
            NovelPoly::Bits(_) => Ok(self.clone()),
            NovelPoly::Field(v) => {
                let mut bits = BitVec::zeros(v.len());
                for (i, c) in v.iter().enumerate() {
                    match c.coords() {
                        0 => {}
                        1 => bits.set(i, true),
                        _ => return Err(Error::NotBinary { index: i }),
                    }
                }
                Ok(NovelPoly::Bits(bits))
            }
        }
    }
}

fn log2_exact(n: usize) -> Result<u32> {
    if n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}

/// Converts `f` (deg f < n) to the novel basis of length `n`.
pub fn to_novel(f: &BinaryPoly, n: usize) -> Result<NovelPoly> {
    let t = log2_exact(n)?;
    if f.len() > n {
        return Err(Error::DegreeTooLarge { degree: f.len() - 1, len: n });
    }
    let mut bits = BitVec::from_poly(f, n);
    to_novel_lanes(&mut bits, 0, t, 1);
    Ok(NovelPoly::Bits(bits))
}

/// Inverse of [`to_novel`].
pub fn from_novel(g: &NovelPoly) -> Result<BinaryPoly> {
    match g {
        NovelPoly::Bits(bits) => {
            let t = log2_exact(bits.len())?;
            let mut bits = bits.clone();
            from_novel_lanes(&mut bits, 0, t, 1);
            Ok(bits.to_poly())
        }
        NovelPoly::Field(_) => Err(Error::NotBinary { index: 0 }),
    }
}

/// Monomial coefficients in GF(2^d) to the novel basis.
pub fn to_novel_field(coeffs: &[FieldElement]) -> Result<NovelPoly> {
    let t = log2_exact(coeffs.len())?;
    let mut v = coeffs.to_vec();
    to_novel_lanes(v.as_mut_slice(), 0, t, 1);
    Ok(NovelPoly::Field(v))
}

/// Novel-basis coefficients back to monomial coefficients in GF(2^d).
pub fn from_novel_field(g: &NovelPoly) -> Result<Vec<FieldElement>> {
    let mut v = g.to_field_coeffs();
    let t = log2_exact(v.len())?;
    from_novel_lanes(v.as_mut_slice(), 0, t, 1);
    Ok(v)
}

impl Field {
    /// Horner evaluation of a GF(2)[x] polynomial at `a`.
    pub fn eval_poly(&self, f: &BinaryPoly, a: FieldElement) -> FieldElement {
        (0..f.len()).rev().fold(FieldElement::ZERO, |acc, i| {
            let acc = self.mul(acc, a);
            if f.coeff(i) {
                acc ^ FieldElement::ONE
            } else {
                acc
            }
        })
    }

    /// `X_i(a)` as a product of subspace-polynomial values.
    pub fn eval_novel_basis(&self, i: usize, a: FieldElement) -> FieldElement {
        (0..usize::BITS - i.leading_zeros())
            .filter(|b| (i >> b) & 1 == 1)
            .fold(FieldElement::ONE, |acc, b| self.mul(acc, self.eval_subspace_unchecked(b, a)))
    }

    /// `Σ g_i X_i(a)`.
    pub fn eval_novel(&self, g: &NovelPoly, a: FieldElement) -> FieldElement {
        (0..g.len()).fold(FieldElement::ZERO, |acc, i| {
            let c = g.coeff(i);
            if c.is_zero() {
                acc
            } else {
                acc ^ self.mul(c, self.eval_novel_basis(i, a))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bits_of(p: &NovelPoly) -> Vec<u8> {
        (0..p.len()).map(|i| p.coeff(i).coords() as u8).collect()
    }

    #[test]
    fn to_novel_examples() {
        assert_eq!(bits_of(&to_novel(&BinaryPoly::from_u64(0b10), 4).unwrap()), vec![0, 1, 0, 0]);
        assert_eq!(bits_of(&to_novel(&BinaryPoly::from_u64(0b100), 4).unwrap()), vec![0, 1, 1, 0]);
        assert_eq!(bits_of(&to_novel(&BinaryPoly::from_u64(0b1000), 4).unwrap()), vec![0, 1, 1, 1]);
    }

    #[test]
    fn to_novel_errors() {
        assert_eq!(to_novel(&BinaryPoly::one(), 6), Err(Error::NotPowerOfTwo(6)));
        assert!(matches!(
            to_novel(&BinaryPoly::from_u64(0b10000), 4),
            Err(Error::DegreeTooLarge { degree: 4, len: 4 })
        ));
        assert!(from_novel(&NovelPoly::Field(vec![FieldElement::ONE])).is_err());
        assert_eq!(to_novel_field(&[FieldElement::ONE; 3]), Err(Error::NotPowerOfTwo(3)));
    }

    #[test]
    fn from_novel_examples() {
        let mut one = BitVec::zeros(4);
        one.set(0, true);
        assert_eq!(from_novel(&NovelPoly::Bits(one)).unwrap(), BinaryPoly::one());
        let mut g = BitVec::zeros(4);
        g.set(1, true);
        g.set(2, true);
        assert_eq!(from_novel(&NovelPoly::Bits(g)).unwrap(), BinaryPoly::from_u64(0b100));
    }

    #[test]
    fn random_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let t = rng.gen_range(3..=10);
            let n = 1usize << t;
            let len = rng.gen_range(0..=n);
            let f = BinaryPoly::from_bits((0..len).map(|_| rng.gen::<bool>()));
            let g = to_novel(&f, n).unwrap();
            assert_eq!(from_novel(&g).unwrap(), f);
        }
    }

    #[test]
    fn field_variant_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let c = FieldElement::from_coords(0xabc);
        let mut constant = vec![FieldElement::ZERO; 8];
        constant[0] = c;
        assert_eq!(to_novel_field(&constant).unwrap(), NovelPoly::Field(constant.clone()));
        for t in 0..=8 {
            let n = 1usize << t;
            let f = BinaryPoly::from_bits((0..n).map(|_| rng.gen::<bool>()));
            let embedded: Vec<FieldElement> =
                (0..n).map(|i| FieldElement::from_coords(f.coeff(i) as u64)).collect();
            let via_field = to_novel_field(&embedded).unwrap();
            assert_eq!(via_field.to_bits().unwrap(), to_novel(&f, n).unwrap());
            let coeffs: Vec<FieldElement> = (0..n).map(|_| FieldElement::from_coords(rng.gen())).collect();
            let g = to_novel_field(&coeffs).unwrap();
            assert_eq!(from_novel_field(&g).unwrap(), coeffs);
        }
    }

    #[test]
    fn evaluation_agreement() {
        let field = Field::default();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for t in [1u32, 3, 5, 8] {
            let n = 1usize << t;
            let f = BinaryPoly::from_bits((0..n).map(|_| rng.gen::<bool>()));
            let g = to_novel(&f, n).unwrap();
            for _ in 0..32 {
                let a = FieldElement::from_coords(rng.gen());
                assert_eq!(field.eval_novel(&g, a), field.eval_poly(&f, a));
            }
        }
    }

    #[test]
    fn linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let n = 1usize << rng.gen_range(1..=9);
            let f = BinaryPoly::from_bits((0..n).map(|_| rng.gen::<bool>()));
            let h = BinaryPoly::from_bits((0..n).map(|_| rng.gen::<bool>()));
            let lhs = to_novel(&f.add(&h), n).unwrap();
            let (a, b) = (to_novel(&f, n).unwrap(), to_novel(&h, n).unwrap());
            let rhs: Vec<u8> = bits_of(&a).iter().zip(bits_of(&b)).map(|(x, y)| x ^ y).collect();
            assert_eq!(bits_of(&lhs), rhs);
        }
    }

    #[test]
    fn word_op_count_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let count = |t: u32, rng: &mut ChaCha8Rng| {
            let n = 1usize << t;
            let f = BinaryPoly::from_bits((0..n).map(|_| rng.gen::<bool>()));
            let mut bits = BitVec::from_poly(&f, n);
            to_novel_lanes(&mut bits, 0, t, 1);
            bits.word_ops()
        };
        let counts: Vec<u64> = (10..=16).map(|t| count(t, &mut rng)).collect();
        for pair in counts.windows(2) {
            let ratio = pair[1] as f64 / pair[0] as f64;
            assert!(ratio <= 2.5, "counts {counts:?}");
        }
    }
}
