//! Multiplication in GF(2)[x].

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::transform::{FaftResult, OpCounters};
use crate::field::{Field, FieldElement};
use crate::novel::{from_novel, to_novel};
use crate::poly::BinaryPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Fafft,
    Schoolbook,
    Karatsuba,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Fafft, Method::Schoolbook, Method::Karatsuba];

    pub fn name(self) -> &'static str {
        match self {
            Method::Fafft => "fafft",
            Method::Schoolbook => "schoolbook",
            Method::Karatsuba => "karatsuba",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected fafft, schoolbook or karatsuba)"))
    }
}

/// Sizing of one multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MulPlan {
    pub n_a: usize,
    pub n_b: usize,
    /// Smallest m with `2^m >= n_a + n_b - 1`.
    pub m: u32,
    pub method: Method,
}

impl MulPlan {
    /// Plan for operands with `n_a` and `n_b` coefficients (both nonzero).
    pub fn new(n_a: usize, n_b: usize, method: Method, field: &Field) -> Result<MulPlan> {
        let len = (n_a + n_b).saturating_sub(1).max(1);
        let m = len.next_power_of_two().trailing_zeros();
        if m > field.degree() {
            return Err(Error::OperandsTooLarge { needed: m, max: field.degree() });
        }
        Ok(MulPlan { n_a, n_b, m, method })
    }

    pub fn transform_len(&self) -> usize {
        1 << self.m
    }

    pub fn product_len(&self) -> usize {
        self.n_a + self.n_b - 1
    }
}

/// Shared GF(2^64) instance.
pub fn default_field() -> &'static Field {
    static FIELD: OnceLock<Field> = OnceLock::new();
    FIELD.get_or_init(Field::default)
}

/// Shift-and-XOR convolution.
pub fn mul_schoolbook(a: &BinaryPoly, b: &BinaryPoly) -> BinaryPoly {
    if a.is_zero() || b.is_zero() {
        return BinaryPoly::zero();
    }
    let bw = b.words();
    let mut out = vec![0u64; a.words().len() + bw.len()];
    for i in a.bits().enumerate().filter(|(_, bit)| *bit).map(|(i, _)| i) {
        let (w, s) = (i / 64, i % 64);
        for (j, &x) in bw.iter().enumerate() {
            out[w + j] ^= x << s;
            if s != 0 {
                out[w + j + 1] ^= x >> (64 - s);
            }
        }
    }
    BinaryPoly::from_words(out)
}

/// Carryless 64x64 -> 128 product as (low, high), 4-bit windows.
#[inline]
pub fn clmul64(a: u64, b: u64) -> (u64, u64) {
    let a = a as u128;
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 { table[i ^ 1] ^ a } else { table[i >> 1] << 1 };
    }
    let mut r = 0u128;
    for n in (0..16).rev() {
        r = (r << 4) ^ table[((b >> (4 * n)) & 15) as usize];
    }
    (r as u64, (r >> 64) as u64)
}

fn karatsuba_words(a: &[u64], b: &[u64], out: &mut [u64]) {
    debug_assert_eq!(a.len(), b.len());
    debug_assert_eq!(out.len(), 2 * a.len());
    let n = a.len();
    if n <= 16 {
        out.fill(0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let (lo, hi) = clmul64(x, y);
                out[i + j] ^= lo;
                out[i + j + 1] ^= hi;
            }
        }
        return;
    }
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let hh = n - h;
    // a1, b1 may be one word longer than a0, b0
    let mut sa = a1.to_vec();
    let mut sb = b1.to_vec();
    for i in 0..h {
        sa[i] ^= a0[i];
        sb[i] ^= b0[i];
    }
    let mut mid = vec![0u64; 2 * hh];
    karatsuba_words(&sa, &sb, &mut mid);
    let (lo, hi) = out.split_at_mut(2 * h);
    karatsuba_words(a0, b0, lo);
    karatsuba_words(a1, b1, hi);
    for i in 0..2 * h {
        mid[i] ^= lo[i];
    }
    for i in 0..2 * hh {
        mid[i] ^= hi[i];
    }
    for (i, m) in mid.iter().enumerate() {
        out[h + i] ^= m;
    }
}

/// Recursive Karatsuba over 64-bit words.
pub fn mul_karatsuba(a: &BinaryPoly, b: &BinaryPoly) -> BinaryPoly {
    if a.is_zero() || b.is_zero() {
        return BinaryPoly::zero();
    }
    let n = a.words().len().max(b.words().len());
    let mut aw = a.words().to_vec();
    let mut bw = b.words().to_vec();
    aw.resize(n, 0);
    bw.resize(n, 0);
    let mut out = vec![0u64; 2 * n];
    karatsuba_words(&aw, &bw, &mut out);
    BinaryPoly::from_words(out)
}

/// Product through the Frobenius transform over the shared GF(2^64).
pub fn mul_fafft(a: &BinaryPoly, b: &BinaryPoly) -> Result<BinaryPoly> {
    mul_fafft_with(default_field(), a, b, &mut OpCounters::new())
}

pub fn mul_fafft_with(field: &Field, a: &BinaryPoly, b: &BinaryPoly, counters: &mut OpCounters) -> Result<BinaryPoly> {
    if a.is_zero() || b.is_zero() {
        return Ok(BinaryPoly::zero());
    }
    let plan = MulPlan::new(a.len(), b.len(), Method::Fafft, field)?;
    let n = plan.transform_len();
    let fa = field.fafft(&to_novel(a, n)?, counters)?;
    let fb = field.fafft(&to_novel(b, n)?, counters)?;
    let values: Vec<FieldElement> =
        fa.entries.iter().zip(&fb.entries).map(|((_, x), (_, y))| field.mul(*x, *y)).collect();
    let product = field.ifafft(&FaftResult::from_values(plan.m, values)?)?;
    let bits = product.to_bits()?;
    Ok(from_novel(&bits)?.truncate(plan.product_len()))
}

pub fn mul_with(method: Method, a: &BinaryPoly, b: &BinaryPoly) -> Result<BinaryPoly> {
    match method {
        Method::Fafft => mul_fafft(a, b),
        Method::Schoolbook => Ok(mul_schoolbook(a, b)),
        Method::Karatsuba => Ok(mul_karatsuba(a, b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hex(s: &str) -> BinaryPoly {
        BinaryPoly::from_hex(s).unwrap()
    }

    fn random_poly(rng: &mut ChaCha8Rng, bits: usize) -> BinaryPoly {
        BinaryPoly::from_bits((0..bits).map(|_| rng.gen::<bool>()))
    }

    #[test]
    fn examples() {
        for method in Method::ALL {
            assert_eq!(mul_with(method, &hex("3"), &hex("3")).unwrap(), hex("5"));
            assert_eq!(mul_with(method, &hex("b"), &hex("d")).unwrap(), hex("7f"));
            assert_eq!(mul_with(method, &hex("b"), &BinaryPoly::zero()).unwrap(), BinaryPoly::zero());
            assert_eq!(mul_with(method, &hex("1"), &hex("ff")).unwrap(), hex("ff"));
        }
    }

    #[test]
    fn clmul_matches_shift_xor() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..1000 {
            let (a, b) = (rng.gen::<u64>(), rng.gen::<u64>());
            let expect = (0..64).filter(|i| (b >> i) & 1 == 1).fold(0u128, |acc, i| acc ^ ((a as u128) << i));
            assert_eq!(clmul64(a, b), (expect as u64, (expect >> 64) as u64));
        }
    }

    #[test]
    fn exhaustive_small_degrees() {
        for a in 0..16u64 {
            for b in 0..16u64 {
                let (pa, pb) = (BinaryPoly::from_u64(a), BinaryPoly::from_u64(b));
                let expect = mul_schoolbook(&pa, &pb);
                assert_eq!(mul_fafft(&pa, &pb).unwrap(), expect);
                assert_eq!(mul_karatsuba(&pa, &pb), expect);
            }
        }
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..300 {
            let na = rng.gen_range(1..1 << 12);
            let nb = rng.gen_range(1..1 << 12);
            let (a, b) = (random_poly(&mut rng, na), random_poly(&mut rng, nb));
            assert_eq!(mul_karatsuba(&a, &b), mul_schoolbook(&a, &b));
        }
    }

    #[test]
    fn fafft_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for m in 3..=12u32 {
            for _ in 0..20 {
                let na = rng.gen_range(1..=1usize << (m - 1));
                let nb = (1usize << m) + 1 - na;
                let (a, b) = (random_poly(&mut rng, na), random_poly(&mut rng, nb));
                assert_eq!(mul_fafft(&a, &b).unwrap(), mul_schoolbook(&a, &b), "m={m}");
            }
        }
    }

    #[test]
    fn adversarial_patterns() {
        for m in 3..=12u32 {
            let half = 1usize << (m - 1);
            let ones = BinaryPoly::from_bits((0..half).map(|_| true));
            let high = BinaryPoly::monomial(half - 1);
            let cases = [
                (ones.clone(), ones.clone()),
                (high.clone(), high.clone()),
                (ones.clone(), high.clone()),
                (BinaryPoly::monomial((1 << m) - 2), BinaryPoly::one()),
                (BinaryPoly::monomial((1 << m) - 1 - 3), BinaryPoly::monomial(3)),
            ];
            for (a, b) in cases {
                assert_eq!(mul_fafft(&a, &b).unwrap(), mul_schoolbook(&a, &b), "m={m}");
            }
        }
    }

    #[test]
    fn ring_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..50 {
            let n = rng.gen_range(1..600);
            let (a, b, c) = (random_poly(&mut rng, n), random_poly(&mut rng, n), random_poly(&mut rng, n));
            let lhs = mul_fafft(&a, &b.add(&c)).unwrap();
            assert_eq!(lhs, mul_fafft(&a, &b).unwrap().add(&mul_fafft(&a, &c).unwrap()));
            assert_eq!(mul_fafft(&a, &b).unwrap(), mul_fafft(&b, &a).unwrap());
            assert_eq!(mul_fafft(&BinaryPoly::one(), &b).unwrap(), b);
        }
    }

    #[test]
    fn plan_sizes() {
        let f = default_field();
        assert_eq!(MulPlan::new(4, 4, Method::Fafft, f).unwrap().m, 3);
        assert_eq!(MulPlan::new(4, 5, Method::Fafft, f).unwrap().m, 3);
        assert_eq!(MulPlan::new(5, 5, Method::Fafft, f).unwrap().m, 4);
        assert_eq!(MulPlan::new(1, 1, Method::Fafft, f).unwrap().m, 0);
        let small = Field::with_height(2).unwrap();
        assert!(matches!(
            MulPlan::new(20, 20, Method::Fafft, &small),
            Err(Error::OperandsTooLarge { needed: 6, max: 4 })
        ));
        let a = BinaryPoly::monomial(12);
        assert!(mul_fafft_with(&small, &a, &a, &mut OpCounters::new()).is_err());
        assert_eq!(
            mul_fafft_with(&small, &hex("b"), &hex("d"), &mut OpCounters::new()).unwrap(),
            hex("7f")
        );
    }
}
