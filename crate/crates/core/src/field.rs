//! Arithmetic in GF(2^d), d = 2^K, in the Cantor basis.
//!
//! The tower is fixed: GF(2^(2^(j+1))) = GF(2^(2^j))[u_j] / (u_j^2 + u_j + u_0 u_1 ... u_(j-1)).
//! Basis element `v_i` is the product of the generators `u_j` selected by the
//! binary digits of `i`, so coordinate bit `i` of an element is the coefficient
//! of `v_i`. Because the tower does not depend on K, every field shares one set
//! of lookup tables for GF(2^16) and the Frobenius map.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::subspace::TwiddleTable;

/// Largest supported tower height.
pub const MAX_TOWER_HEIGHT: u32 = 6;
/// Default tower height (GF(2^64)).
pub const DEFAULT_TOWER_HEIGHT: u32 = 6;

/// Element of GF(2^64) in Cantor-basis coordinates; smaller fields use the low bits.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub const fn from_coords(coords: u64) -> Self {
        FieldElement(coords)
    }

    #[inline]
    pub const fn coords(self) -> u64 {
        self.0
    }

    /// Basis element `v_i`.
    #[inline]
    pub const fn basis(i: u32) -> Self {
        FieldElement(1 << i)
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Number of coordinates up to and including the highest nonzero one.
    #[inline]
    pub const fn support(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Membership in `W_t = span(v_0, ..., v_(t-1))`.
    #[inline]
    pub const fn in_subspace(self, t: u32) -> bool {
        self.support() <= t
    }

    /// Membership in the subfield GF(2^(2^j)).
    #[inline]
    pub const fn in_subfield(self, j: u32) -> bool {
        j >= 6 || self.support() <= (1 << j)
    }

    /// Parses the lowercase hex form of the coordinate integer.
    pub fn from_hex(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("0x").unwrap_or(t);
        if t.is_empty() || t.len() > 16 {
            return Err(Error::InvalidHex(s.to_string()));
        }
        u64::from_str_radix(t, 16)
            .map(FieldElement)
            .map_err(|_| Error::InvalidHex(s.to_string()))
    }

    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl fmt::LowerHex for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl BitXor for FieldElement {
    type Output = FieldElement;
    #[inline]
    fn bitxor(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for FieldElement {
    #[inline]
    fn bitxor_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

/// Tower height K and extension degree d = 2^K.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    k: u32,
}

impl FieldParams {
    pub fn new(k: u32) -> Result<Self> {
        if (1..=MAX_TOWER_HEIGHT).contains(&k) {
            Ok(FieldParams { k })
        } else {
            Err(Error::TowerHeight(k))
        }
    }

    pub fn height(self) -> u32 {
        self.k
    }

    pub fn degree(self) -> u32 {
        1 << self.k
    }

    fn mask(self) -> u64 {
        if self.k == 6 {
            u64::MAX
        } else {
            (1u64 << self.degree()) - 1
        }
    }
}

impl Default for FieldParams {
    fn default() -> Self {
        FieldParams { k: DEFAULT_TOWER_HEIGHT }
    }
}

/// `ζ_j = u_0 ... u_(j-1) = v_(2^j - 1)`, the constant term in the defining
/// relation of `u_j`.
#[inline]
pub const fn zeta(j: u32) -> u64 {
    1u64 << ((1u32 << j) - 1)
}

/// Reference multiplication in GF(2^(2^level)) by the tower Karatsuba
/// recursion, down to single-bit ANDs.
pub fn mul_tower_bits(level: u32, a: u64, b: u64) -> u64 {
    if level == 0 {
        return a & b & 1;
    }
    let h = 1u32 << (level - 1);
    let mask = (1u64 << h) - 1;
    let (a0, a1) = (a & mask, (a >> h) & mask);
    let (b0, b1) = (b & mask, (b >> h) & mask);
    let p0 = mul_tower_bits(level - 1, a0, b0);
    let p1 = mul_tower_bits(level - 1, a1, b1);
    let p2 = mul_tower_bits(level - 1, a0 ^ a1, b0 ^ b1);
    let lo = p0 ^ mul_tower_bits(level - 1, p1, zeta(level - 1));
    let hi = p2 ^ p0;
    lo | (hi << h)
}

const GF16_ORDER: usize = 65535;

struct Tower {
    log: Vec<u32>,
    exp: Vec<u16>,
    /// Multiplication by ζ_5 on GF(2^32), one table per input byte.
    zeta5: Box<[[u32; 256]; 4]>,
    /// Frobenius map on GF(2^64), one table per input byte.
    frob: Box<[[u64; 256]; 8]>,
}

fn tower() -> &'static Tower {
    static TOWER: OnceLock<Tower> = OnceLock::new();
    TOWER.get_or_init(Tower::build)
}

impl Tower {
    fn build() -> Tower {
        let generator = find_gf16_generator();
        let mut exp = vec![0u16; 2 * GF16_ORDER];
        let mut log = vec![0u32; 1 << 16];
        let mut x = 1u64;
        for i in 0..GF16_ORDER {
            exp[i] = x as u16;
            exp[i + GF16_ORDER] = x as u16;
            log[x as usize] = i as u32;
            x = mul_tower_bits(4, x, generator);
        }
        debug_assert_eq!(x, 1);

        let mut tower = Tower {
            log,
            exp,
            zeta5: Box::new([[0u32; 256]; 4]),
            frob: Box::new([[0u64; 256]; 8]),
        };

        let mut zeta5 = Box::new([[0u32; 256]; 4]);
        for (byte, table) in zeta5.iter_mut().enumerate() {
            for (v, slot) in table.iter_mut().enumerate() {
                *slot = tower.mul32((v as u64) << (8 * byte), zeta(5)) as u32;
            }
        }
        tower.zeta5 = zeta5;

        let mut frob = Box::new([[0u64; 256]; 8]);
        let columns: Vec<u64> = (0..64).map(|i| tower.mul64(1 << i, 1 << i)).collect();
        for (byte, table) in frob.iter_mut().enumerate() {
            for (v, slot) in table.iter_mut().enumerate() {
                *slot = (0..8)
                    .filter(|bit| (v >> bit) & 1 == 1)
                    .fold(0, |acc, bit| acc ^ columns[8 * byte + bit]);
            }
        }
        tower.frob = frob;
        tower
    }

    #[inline]
    fn mul16(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let i = self.log[a as usize] + self.log[b as usize];
        self.exp[i as usize] as u64
    }

    #[inline]
    fn mul32(&self, a: u64, b: u64) -> u64 {
        if (a | b) >> 16 == 0 {
            return self.mul16(a, b);
        }
        let (a0, a1) = (a & 0xffff, a >> 16);
        let (b0, b1) = (b & 0xffff, b >> 16);
        if a1 == 0 {
            return self.mul16(a0, b0) | (self.mul16(a0, b1) << 16);
        }
        if b1 == 0 {
            return self.mul16(a0, b0) | (self.mul16(a1, b0) << 16);
        }
        let p0 = self.mul16(a0, b0);
        let p1 = self.mul16(a1, b1);
        let p2 = self.mul16(a0 ^ a1, b0 ^ b1);
        let lo = p0 ^ self.mul16(p1, zeta(4));
        lo | ((p2 ^ p0) << 16)
    }

    #[inline]
    fn mul_zeta5(&self, x: u64) -> u64 {
        let t = &self.zeta5;
        (t[0][(x & 0xff) as usize]
            ^ t[1][((x >> 8) & 0xff) as usize]
            ^ t[2][((x >> 16) & 0xff) as usize]
            ^ t[3][((x >> 24) & 0xff) as usize]) as u64
    }

    #[inline]
    fn mul64(&self, a: u64, b: u64) -> u64 {
        if (a | b) >> 32 == 0 {
            return self.mul32(a, b);
        }
        let (a0, a1) = (a & 0xffff_ffff, a >> 32);
        let (b0, b1) = (b & 0xffff_ffff, b >> 32);
        if a1 == 0 {
            return self.mul32(a0, b0) | (self.mul32(a0, b1) << 32);
        }
        if b1 == 0 {
            return self.mul32(a0, b0) | (self.mul32(a1, b0) << 32);
        }
        let p0 = self.mul32(a0, b0);
        let p1 = self.mul32(a1, b1);
        let p2 = self.mul32(a0 ^ a1, b0 ^ b1);
        let lo = p0 ^ self.mul_zeta5(p1);
        lo | ((p2 ^ p0) << 32)
    }

    #[inline]
    fn frobenius(&self, a: u64) -> u64 {
        let t = &self.frob;
        let mut r = 0;
        let mut x = a;
        let mut byte = 0;
        while x != 0 {
            r ^= t[byte][(x & 0xff) as usize];
            x >>= 8;
            byte += 1;
        }
        r
    }
}

fn find_gf16_generator() -> u64 {
    fn pow(mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_tower_bits(4, acc, base);
            }
            base = mul_tower_bits(4, base, base);
            e >>= 1;
        }
        acc
    }
    // 65535 = 3 * 5 * 17 * 257
    (2..1u64 << 16)
        .find(|&g| [3u64, 5, 17, 257].iter().all(|&p| pow(g, GF16_ORDER as u64 / p) != 1))
        .expect("GF(2^16) has a primitive element")
}

/// Precomputed multiplier for a fixed constant, used in butterfly loops.
#[derive(Clone, Copy, Debug)]
pub struct ConstMul {
    c: u64,
    log_c: Option<u32>,
}

impl ConstMul {
    #[inline]
    pub fn apply(&self, x: FieldElement) -> FieldElement {
        let t = tower();
        match self.log_c {
            _ if self.c == 0 || x.0 == 0 => FieldElement::ZERO,
            Some(lc) if x.0 >> 16 == 0 => {
                FieldElement(t.exp[(lc + t.log[x.0 as usize]) as usize] as u64)
            }
            _ if self.c == 1 => x,
            _ => FieldElement(t.mul64(self.c, x.0)),
        }
    }
}

/// GF(2^d) with its precomputed subspace-polynomial table.
#[derive(Clone, Debug)]
pub struct Field {
    params: FieldParams,
    pub(crate) twiddles: TwiddleTable,
}

impl Default for Field {
    fn default() -> Self {
        Field::new(FieldParams::default())
    }
}

impl Field {
    pub fn new(params: FieldParams) -> Field {
        tower();
        let mut field = Field { params, twiddles: TwiddleTable::empty() };
        field.twiddles = TwiddleTable::build(&field);
        field
    }

    pub fn with_height(k: u32) -> Result<Field> {
        Ok(Field::new(FieldParams::new(k)?))
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    /// Extension degree d.
    pub fn degree(&self) -> u32 {
        self.params.degree()
    }

    pub fn height(&self) -> u32 {
        self.params.height()
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 & !self.params.mask() == 0
    }

    /// Validates that `a` lies in this field.
    pub fn check(&self, a: FieldElement) -> Result<FieldElement> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::FieldMismatch(a.0))
        }
    }

    /// `ω_i = Σ i_j v_j`.
    pub fn omega(&self, i: u64) -> Result<FieldElement> {
        let e = FieldElement(i);
        if self.contains(e) {
            Ok(e)
        } else {
            Err(Error::IndexOutOfRange { index: i, degree: self.degree() })
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.check(a)? ^ self.check(b)?)
    }

    /// Checked product.
    pub fn try_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    /// Product by the tower recursion, running on GF(2^16) tables below 16 bits.
    /// Operands are assumed to lie in the field.
    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        FieldElement(tower().mul64(a.0, b.0))
    }

    /// Multiplication by `ζ_j` (j < K).
    pub fn mul_by_zeta(&self, j: u32, a: FieldElement) -> FieldElement {
        debug_assert!(a.in_subfield(j));
        if j == 5 {
            FieldElement(tower().mul_zeta5(a.0))
        } else {
            FieldElement(tower().mul32(a.0, zeta(j)))
        }
    }

    pub fn const_mul(&self, c: FieldElement) -> ConstMul {
        let log_c = (c.0 != 0 && c.0 >> 16 == 0).then(|| tower().log[c.0 as usize]);
        ConstMul { c: c.0, log_c }
    }

    /// `a^2`.
    #[inline]
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        FieldElement(tower().frobenius(a.0))
    }

    /// `φ^j(a)`; reduced modulo d since `φ^d` is the identity.
    pub fn frobenius_iter(&self, a: FieldElement, j: u64) -> FieldElement {
        let steps = j % self.degree() as u64;
        (0..steps).fold(a, |x, _| self.frobenius(x))
    }

    /// Columns `φ(v_i)` of the squaring map, i < d.
    pub fn frobenius_matrix(&self) -> Vec<FieldElement> {
        (0..self.degree()).map(|i| self.frobenius(FieldElement::basis(i))).collect()
    }

    /// `(r0, r1)` with `a = r0 + u_j r1`; neither part has a coordinate with index bit j set.
    pub fn split_by_u(&self, a: FieldElement, j: u32) -> Result<(FieldElement, FieldElement)> {
        if j >= self.height() {
            return Err(Error::ParameterOutOfRange {
                name: "j",
                value: j as u64,
                max: self.height() as u64 - 1,
            });
        }
        Ok(split_by_u(a, j))
    }

    /// `a^(2^d - 2)`.
    pub fn inverse(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut acc = FieldElement::ONE;
        let mut t = a;
        for _ in 1..self.degree() {
            t = self.frobenius(t);
            acc = self.mul(acc, t);
        }
        Ok(acc)
    }
}

/// Mask of coordinates whose index has bit `j` set.
pub(crate) const fn index_bit_mask(j: u32) -> u64 {
    const MASKS: [u64; 6] = [
        0xaaaa_aaaa_aaaa_aaaa,
        0xcccc_cccc_cccc_cccc,
        0xf0f0_f0f0_f0f0_f0f0,
        0xff00_ff00_ff00_ff00,
        0xffff_0000_ffff_0000,
        0xffff_ffff_0000_0000,
    ];
    MASKS[j as usize]
}

#[inline]
pub(crate) fn split_by_u(a: FieldElement, j: u32) -> (FieldElement, FieldElement) {
    let m = index_bit_mask(j);
    (FieldElement(a.0 & !m), FieldElement((a.0 & m) >> (1u32 << j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(i: u64) -> FieldElement {
        FieldElement(i)
    }

    #[test]
    fn omega_examples() {
        let f = Field::default();
        assert_eq!(f.omega(0).unwrap(), FieldElement::ZERO);
        assert_eq!(f.omega(1).unwrap(), FieldElement::ONE);
        assert_eq!(f.omega(5).unwrap(), FieldElement::basis(0) ^ FieldElement::basis(2));
        let small = Field::with_height(2).unwrap();
        assert!(matches!(small.omega(16), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(small.omega(15).unwrap(), w(15));
    }

    #[test]
    fn add_examples() {
        let f = Field::with_height(3).unwrap();
        assert_eq!(f.add(w(2), w(3)).unwrap(), w(1));
        assert_eq!(f.add(w(77), w(0)).unwrap(), w(77));
        assert_eq!(f.add(w(5), w(5)).unwrap(), w(0));
        assert_eq!(f.add(w(1 << 8), w(1)), Err(Error::FieldMismatch(1 << 8)));
    }

    #[test]
    fn mul_examples() {
        let f = Field::default();
        assert_eq!(f.mul(w(2), w(2)), w(3));
        assert_eq!(f.mul(w(4), w(4)), w(6));
        assert_eq!(f.mul(w(2), w(3)), w(1));
        let small = Field::with_height(1).unwrap();
        assert!(small.try_mul(w(2), w(4)).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f = Field::default();
        assert_eq!(f.frobenius(w(1)), w(1));
        assert_eq!(f.frobenius(w(2)), w(3));
        assert_eq!(f.frobenius(w(4)), w(6));
        assert_eq!(f.frobenius_iter(w(2), 2), w(2));
        assert_eq!(f.frobenius_iter(w(0x1234), 0), w(0x1234));
    }

    #[test]
    fn split_examples() {
        let f = Field::with_height(2).unwrap();
        // u_1 + u_0 u_1 = v_2 + v_3
        assert_eq!(f.split_by_u(w(12), 1).unwrap(), (w(0), w(3)));
        // u_0 + u_1 = v_1 + v_2
        assert_eq!(f.split_by_u(w(6), 1).unwrap(), (w(2), w(1)));
        assert_eq!(f.split_by_u(w(3), 1).unwrap(), (w(3), w(0)));
        assert!(f.split_by_u(w(3), 2).is_err());
    }

    #[test]
    fn inverse_examples() {
        let f = Field::with_height(1).unwrap();
        assert_eq!(f.inverse(w(1)).unwrap(), w(1));
        assert_eq!(f.inverse(w(2)).unwrap(), w(3));
        assert_eq!(f.inverse(w(0)), Err(Error::ZeroInverse));
    }

    #[test]
    fn fast_mul_matches_bit_recursion() {
        let f = Field::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for level in 0..=6u32 {
            let mask = if level == 6 { u64::MAX } else { (1u64 << (1 << level)) - 1 };
            for _ in 0..2000 {
                let a = rng.gen::<u64>() & mask;
                let b = rng.gen::<u64>() & mask;
                assert_eq!(f.mul(w(a), w(b)).0, mul_tower_bits(6, a, b), "{a:#x} {b:#x}");
            }
        }
        // subfield-by-extension products take the two-multiplication path
        for _ in 0..2000 {
            let a = rng.gen::<u64>() & 0xffff_ffff;
            let b = rng.gen::<u64>();
            assert_eq!(f.mul(w(a), w(b)).0, mul_tower_bits(6, a, b));
        }
    }

    #[test]
    fn zeta_path_matches_generic_mul() {
        let f = Field::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for j in 0..6u32 {
            let mask = (1u64 << (1u32 << j)) - 1;
            for _ in 0..200 {
                let a = w(rng.gen::<u64>() & mask);
                assert_eq!(f.mul_by_zeta(j, a), f.mul(a, w(zeta(j))));
            }
        }
    }

    #[test]
    fn frobenius_matrix_agrees_with_squaring() {
        let f = Field::default();
        let cols = f.frobenius_matrix();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let a: u64 = rng.gen();
            let via_matrix = (0..64)
                .filter(|i| (a >> i) & 1 == 1)
                .fold(FieldElement::ZERO, |acc, i| acc ^ cols[i]);
            assert_eq!(via_matrix, f.mul(w(a), w(a)));
            assert_eq!(f.frobenius(w(a)), via_matrix);
        }
    }

    #[test]
    fn gf4_table_matches_brute_force() {
        // GF(4) = {0, 1, x, x+1} with x^2 = x + 1 and x ↦ ω_2.
        let brute = |a: u64, b: u64| -> u64 {
            let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
            let c0 = (a0 & b0) ^ (a1 & b1);
            let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
            c0 | (c1 << 1)
        };
        let f = Field::with_height(1).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f.mul(w(a), w(b)).0, brute(a, b));
            }
        }
    }

    #[test]
    fn frobenius_has_order_dividing_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for k in 1..=6 {
            let f = Field::with_height(k).unwrap();
            let mask = f.params().mask();
            for _ in 0..50 {
                let a = w(rng.gen::<u64>() & mask);
                let mut x = a;
                for _ in 0..f.degree() {
                    x = f.frobenius(x);
                }
                assert_eq!(x, a);
            }
        }
    }

    #[test]
    fn hex_form() {
        assert_eq!(FieldElement::from_hex("6").unwrap(), w(6));
        assert_eq!(w(0xbeef).to_hex(), "beef");
        assert!(FieldElement::from_hex("xyz").is_err());
        assert!(FieldElement::from_hex("").is_err());
    }
}
