//! Additive FFT in the novel basis and its Frobenius-truncated variant.
//!
//! For P in GF(2)[x] the values `P(φ(a)) = φ(P(a))` are redundant along
//! Frobenius orbits, so it suffices to evaluate one point per orbit of `W_m`.
//! The cross section used here is `Σ_0 ∪ ... ∪ Σ_m`, where `Σ_i` holds the points
//! with leading basis element `v_(i-1)` whose coordinates at distance `k` below it
//! vanish for every power of two `k`. The butterfly recursion reaches exactly
//! those points by dropping the second branch whenever the next decided
//! coordinate is one of the fixed ones.
//!
//! Output order is the depth-first order of the recursion, first branch first.
//! Within each `Σ_i` that is ascending index order.

use crate::error::{Error, Result};
use crate::field::{split_by_u, Field, FieldElement};
use crate::novel::NovelPoly;

/// `2^⌈lg l⌉`, with `binru(0) = 1`.
#[inline]
pub fn binru(l: u32) -> u32 {
    l.max(1).next_power_of_two()
}

/// Bit width of the coefficients handled by a call at depth `l`.
#[inline]
pub(crate) fn coeff_width(l: u32) -> u32 {
    binru(l)
}

#[inline]
pub(crate) fn truncates(l: u32) -> bool {
    l > 0 && l.is_power_of_two()
}

/// Size of the Frobenius orbit of any point of `Σ_i`.
pub fn orbit_size(level: u32) -> u32 {
    binru(level)
}

/// One point of the cross section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossSectionPoint {
    pub sigma: FieldElement,
    pub level: u32,
    pub orbit_size: u32,
}

impl CrossSectionPoint {
    /// Values of GF(2)[x] polynomials at this point lie in GF(2^value_field_dim).
    pub fn value_field_dim(&self) -> u32 {
        self.orbit_size
    }

    pub fn index(&self) -> u64 {
        self.sigma.coords()
    }
}

/// Points of `Σ_level` in ascending order.
pub fn sigma_level(level: u32) -> Vec<CrossSectionPoint> {
    let orbit = orbit_size(level);
    if level == 0 {
        return vec![CrossSectionPoint { sigma: FieldElement::ZERO, level, orbit_size: 1 }];
    }
    let top = level - 1;
    // coordinate top-k is free unless k is a power of two
    let free: Vec<u32> = (1..level).filter(|k| !k.is_power_of_two()).map(|k| top - k).rev().collect();
    (0..1u64 << free.len())
        .map(|c| {
            let coords = free
                .iter()
                .enumerate()
                .filter(|(r, _)| (c >> r) & 1 == 1)
                .fold(1u64 << top, |acc, (_, &pos)| acc | (1u64 << pos));
            CrossSectionPoint { sigma: FieldElement::from_coords(coords), level, orbit_size: orbit }
        })
        .collect()
}

/// `Σ_0 ∪ ... ∪ Σ_m` in transform output order.
pub fn cross_section_points(m: u32) -> Vec<CrossSectionPoint> {
    (0..=m).flat_map(sigma_level).collect()
}

/// Number of values produced by a call at `(k, l)`.
pub fn faft_size(k: u32, l: u32) -> usize {
    let mut table = SizeTable::new(k, l);
    table.get(k, l)
}

struct SizeTable {
    width: usize,
    memo: Vec<usize>,
}

impl SizeTable {
    fn new(k: u32, l: u32) -> Self {
        let width = (k + l + 2) as usize;
        SizeTable { width, memo: vec![0; (k as usize + 1) * width] }
    }

    fn get(&mut self, k: u32, l: u32) -> usize {
        let idx = k as usize * self.width + l as usize;
        if self.memo[idx] != 0 {
            return self.memo[idx];
        }
        let v = if k == 0 {
            1
        } else if l == 0 {
            self.get(k - 1, 0) + self.get(k - 1, 1)
        } else if truncates(l) {
            self.get(k - 1, l + 1)
        } else {
            2 * self.get(k - 1, l + 1)
        };
        self.memo[idx] = v;
        v
    }
}

/// Weighted operation counts under the linear cost model `M(t) = A(t) = t`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub weighted_mults: u64,
    pub weighted_adds: u64,
    /// Raw butterfly multiplications, indexed by the recursion parameter k.
    pub mults_by_level: Vec<u64>,
    /// Raw butterfly additions, indexed by k.
    pub adds_by_level: Vec<u64>,
}

impl OpCounters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    fn record(&mut self, k: u32, mults: u64, adds: u64, width: u32) {
        let k = k as usize;
        if self.mults_by_level.len() <= k {
            self.mults_by_level.resize(k + 1, 0);
            self.adds_by_level.resize(k + 1, 0);
        }
        self.mults_by_level[k] += mults;
        self.adds_by_level[k] += adds;
        self.weighted_mults += mults * width as u64;
        self.weighted_adds += adds * width as u64;
    }
}

/// Cross-section evaluations of a GF(2)[x] polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaftResult {
    pub m: u32,
    pub entries: Vec<(CrossSectionPoint, FieldElement)>,
}

impl FaftResult {
    pub fn values(&self) -> Vec<FieldElement> {
        self.entries.iter().map(|(_, v)| *v).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pairs transform values with the points of `Σ_0 ∪ ... ∪ Σ_m`.
    pub fn from_values(m: u32, values: Vec<FieldElement>) -> Result<FaftResult> {
        let points = cross_section_points(m);
        if points.len() != values.len() {
            return Err(Error::LengthMismatch { expected: points.len(), actual: values.len() });
        }
        Ok(FaftResult { m, entries: points.into_iter().zip(values).collect() })
    }
}

fn log2_len(n: usize) -> Result<u32> {
    if n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwo(n))
    }
}

impl Field {
    fn check_dimension(&self, k: u32) -> Result<()> {
        if k > self.degree() {
            return Err(Error::ParameterOutOfRange { name: "k", value: k as u64, max: self.degree() as u64 });
        }
        Ok(())
    }

    /// `(P(ω_i + alpha))_{i < 2^k}` for P in the novel basis.
    pub fn afft(&self, k: u32, p: &[FieldElement], alpha: FieldElement) -> Result<Vec<FieldElement>> {
        self.check_dimension(k)?;
        if p.len() != 1usize << k {
            return Err(Error::LengthMismatch { expected: 1 << k, actual: p.len() });
        }
        self.check(alpha)?;
        if let Some(i) = p.iter().position(|c| !self.contains(*c)) {
            return Err(Error::FieldMismatch(p[i].coords()));
        }
        let mut buf = p.to_vec();
        self.afft_in_place(k, &mut buf, alpha);
        Ok(buf)
    }

    pub(crate) fn afft_in_place(&self, k: u32, buf: &mut [FieldElement], alpha: FieldElement) {
        if k == 0 {
            return;
        }
        let half = 1usize << (k - 1);
        let c = self.const_mul(self.twiddle_unchecked(k - 1, alpha));
        let (p0, p1) = buf.split_at_mut(half);
        for (a, b) in p0.iter_mut().zip(p1.iter_mut()) {
            *a ^= c.apply(*b);
            *b ^= *a;
        }
        self.afft_in_place(k - 1, p0, alpha);
        self.afft_in_place(k - 1, p1, alpha ^ FieldElement::basis(k - 1));
    }

    /// Inverse of [`Field::afft`].
    pub fn iafft(&self, k: u32, evals: &[FieldElement], alpha: FieldElement) -> Result<Vec<FieldElement>> {
        self.check_dimension(k)?;
        if evals.len() != 1usize << k {
            return Err(Error::LengthMismatch { expected: 1 << k, actual: evals.len() });
        }
        self.check(alpha)?;
        let mut buf = evals.to_vec();
        self.iafft_in_place(k, &mut buf, alpha);
        Ok(buf)
    }

    fn iafft_in_place(&self, k: u32, buf: &mut [FieldElement], alpha: FieldElement) {
        if k == 0 {
            return;
        }
        let half = 1usize << (k - 1);
        let (q0, q1) = buf.split_at_mut(half);
        self.iafft_in_place(k - 1, q0, alpha);
        self.iafft_in_place(k - 1, q1, alpha ^ FieldElement::basis(k - 1));
        let c = self.const_mul(self.twiddle_unchecked(k - 1, alpha));
        for (a, b) in q0.iter_mut().zip(q1.iter_mut()) {
            *b ^= *a;
            *a ^= c.apply(*b);
        }
    }

    /// Cross section `Σ_0 ∪ ... ∪ Σ_m` in transform order.
    pub fn cross_section(&self, m: u32) -> Result<Vec<CrossSectionPoint>> {
        self.check_dimension(m)?;
        Ok(cross_section_points(m))
    }

    /// Frobenius transform of a GF(2)[x] polynomial given in the novel basis.
    pub fn fafft(&self, p: &NovelPoly, counters: &mut OpCounters) -> Result<FaftResult> {
        let m = log2_len(p.len())?;
        self.check_dimension(m)?;
        let mut buf = p.to_field_coeffs();
        if let Some(index) = buf.iter().position(|c| c.coords() > 1) {
            return Err(Error::NotBinary { index });
        }
        let mut out = Vec::with_capacity(faft_size(m, 0));
        self.fafft_rec(m, &mut buf, 0, FieldElement::ZERO, counters, &mut out);
        FaftResult::from_values(m, out)
    }

    /// One recursive call: evaluations of `P` on `Σ ∩ (alpha + W_k)`, where
    /// `P` has coefficients in GF(2^binru(l)) and `alpha` has leading
    /// coordinate `k + l - 1` (or is zero when `l = 0`).
    pub fn fafft_partial(
        &self,
        k: u32,
        p: &[FieldElement],
        l: u32,
        alpha: FieldElement,
        counters: &mut OpCounters,
    ) -> Result<Vec<FieldElement>> {
        self.check_dimension(k + l)?;
        if p.len() != 1usize << k {
            return Err(Error::LengthMismatch { expected: 1 << k, actual: p.len() });
        }
        self.check_offset(k, l, alpha)?;
        let width = coeff_width(l);
        if let Some(index) = p.iter().position(|c| c.support() > width) {
            return Err(Error::CoefficientDomain { index, width });
        }
        let mut buf = p.to_vec();
        let mut out = Vec::with_capacity(faft_size(k, l));
        self.fafft_rec(k, &mut buf, l, alpha, counters, &mut out);
        Ok(out)
    }

    fn check_offset(&self, k: u32, l: u32, alpha: FieldElement) -> Result<()> {
        let ok = if l == 0 { alpha.is_zero() } else { alpha.support() == k + l };
        if ok {
            Ok(())
        } else {
            Err(Error::BadOffset { alpha: alpha.coords(), lower: k + l - l.min(1), upper: k + l })
        }
    }

    pub(crate) fn fafft_rec(
        &self,
        k: u32,
        buf: &mut [FieldElement],
        l: u32,
        alpha: FieldElement,
        counters: &mut OpCounters,
        out: &mut Vec<FieldElement>,
    ) {
        if k == 0 {
            debug_assert!(buf[0].support() <= coeff_width(l));
            out.push(buf[0]);
            return;
        }
        let half = 1usize << (k - 1);
        let twiddle = self.twiddle_unchecked(k - 1, alpha);
        let c = self.const_mul(twiddle);
        let width = coeff_width(l);
        let (p0, p1) = buf.split_at_mut(half);
        if truncates(l) {
            debug_assert!((twiddle ^ FieldElement::basis(l)).in_subspace(l), "twiddle {twiddle:?} at l={l}");
            counters.record(k, half as u64, half as u64, width);
            for (a, b) in p0.iter_mut().zip(p1.iter()) {
                *a ^= c.apply(*b);
            }
            self.fafft_rec(k - 1, p0, l + 1, alpha, counters, out);
        } else {
            counters.record(k, half as u64, 2 * half as u64, width);
            for (a, b) in p0.iter_mut().zip(p1.iter_mut()) {
                *a ^= c.apply(*b);
                *b ^= *a;
            }
            let next = if l == 0 { 0 } else { l + 1 };
            self.fafft_rec(k - 1, p0, next, alpha, counters, out);
            self.fafft_rec(k - 1, p1, l + 1, alpha ^ FieldElement::basis(k - 1), counters, out);
        }
    }

    /// Full additive transform recovered from cross-section values by applying φ along orbits.
    pub fn expand_to_full_aft(&self, r: &FaftResult) -> Result<Vec<FieldElement>> {
        self.check_dimension(r.m)?;
        let n = 1usize << r.m;
        let mut out = vec![FieldElement::ZERO; n];
        let mut written = vec![false; n];
        for (point, value) in &r.entries {
            let (mut s, mut y) = (point.sigma, *value);
            for _ in 0..point.orbit_size {
                let idx = s.coords();
                if idx >= n as u64 || written[idx as usize] {
                    return Err(Error::OrbitCollision { sigma: point.sigma.coords(), index: idx });
                }
                written[idx as usize] = true;
                out[idx as usize] = y;
                s = self.frobenius(s);
                y = self.frobenius(y);
            }
        }
        if let Some(i) = written.iter().position(|w| !w) {
            return Err(Error::Uncovered(i as u64));
        }
        Ok(out)
    }

    /// Inverse transform; returns novel-basis coefficients.
    pub fn ifafft(&self, r: &FaftResult) -> Result<NovelPoly> {
        let values: Vec<FieldElement> = r.values();
        let coeffs = self.ifafft_partial(r.m, &values, 0, FieldElement::ZERO)?;
        Ok(NovelPoly::Field(coeffs))
    }

    /// Inverse of [`Field::fafft_partial`].
    pub fn ifafft_partial(
        &self,
        k: u32,
        values: &[FieldElement],
        l: u32,
        alpha: FieldElement,
    ) -> Result<Vec<FieldElement>> {
        self.check_dimension(k + l)?;
        self.check_offset(k, l, alpha)?;
        let mut sizes = SizeTable::new(k, l);
        let expected = sizes.get(k, l);
        if values.len() != expected {
            return Err(Error::LengthMismatch { expected, actual: values.len() });
        }
        let mut out = vec![FieldElement::ZERO; 1 << k];
        self.ifafft_rec(k, values, l, alpha, &mut sizes, &mut out)?;
        Ok(out)
    }

    fn ifafft_rec(
        &self,
        k: u32,
        values: &[FieldElement],
        l: u32,
        alpha: FieldElement,
        sizes: &mut SizeTable,
        out: &mut [FieldElement],
    ) -> Result<()> {
        if k == 0 {
            out[0] = values[0];
            return Ok(());
        }
        let half = 1usize << (k - 1);
        let twiddle = self.twiddle_unchecked(k - 1, alpha);
        let (o0, o1) = out.split_at_mut(half);
        if truncates(l) {
            self.ifafft_rec(k - 1, values, l + 1, alpha, sizes, o0)?;
            let c = twiddle ^ FieldElement::basis(l);
            if !c.in_subspace(l) {
                return Err(Error::TwiddleForm { twiddle: twiddle.coords(), l });
            }
            let c = self.const_mul(c);
            let j = l.trailing_zeros();
            for (a, b) in o0.iter_mut().zip(o1.iter_mut()) {
                let (r0, r1) = split_by_u(*a, j);
                *a = r0 ^ c.apply(r1);
                *b = r1;
            }
        } else {
            let next = if l == 0 { 0 } else { l + 1 };
            let split = sizes.get(k - 1, next);
            let (v0, v1) = values.split_at(split);
            self.ifafft_rec(k - 1, v0, next, alpha, sizes, o0)?;
            self.ifafft_rec(k - 1, v1, l + 1, alpha ^ FieldElement::basis(k - 1), sizes, o1)?;
            let c = self.const_mul(twiddle);
            for (a, b) in o0.iter_mut().zip(o1.iter_mut()) {
                *b ^= *a;
                *a ^= c.apply(*b);
            }
        }
        Ok(())
    }
}
