//! Subspace polynomials `s_k(x) = Π_{a ∈ W_k} (x - a)` of the Cantor basis.
//!
//! Every `s_k` is linearized with GF(2) coefficients, so it is stored as a bit
//! vector over the exponents `2^i` and evaluated with repeated squaring.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Coefficients of `s_k`: bit `i` is the coefficient of `x^(2^i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceCoeffs {
    pub k: u32,
    pub bits: u128,
}

impl SubspaceCoeffs {
    /// `s_0 = x`, `s_j = s_(j-1)^2 + s_(j-1)`.
    pub fn compute(k: u32) -> SubspaceCoeffs {
        assert!(k <= 64);
        let bits = (0..k).fold(1u128, |b, _| (b << 1) ^ b);
        SubspaceCoeffs { k, bits }
    }

    pub fn coefficient(&self, i: u32) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn set_exponents(&self) -> Vec<u32> {
        (0..=self.k).filter(|&i| self.coefficient(i)).collect()
    }
}

/// `s_j(v_i)` for all `0 <= j <= i < d`.
#[derive(Clone, Debug)]
pub struct TwiddleTable {
    degree: u32,
    entries: Vec<FieldElement>,
}

impl TwiddleTable {
    pub(crate) fn empty() -> TwiddleTable {
        TwiddleTable { degree: 0, entries: Vec::new() }
    }

    pub(crate) fn build(field: &Field) -> TwiddleTable {
        let d = field.degree();
        let mut entries = vec![FieldElement::ZERO; (d * d) as usize];
        for i in 0..d {
            for j in 0..=i {
                entries[(j * d + i) as usize] = field.eval_subspace_unchecked(j, FieldElement::basis(i));
            }
        }
        TwiddleTable { degree: d, entries }
    }

    /// `s_j(v_i)`; zero when `i < j`.
    pub fn get(&self, j: u32, i: u32) -> FieldElement {
        self.entries[(j * self.degree + i) as usize]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Hex rows `j: s_j(v_j) s_j(v_(j+1)) ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for j in 0..self.degree {
            let row: Vec<String> = (j..self.degree).map(|i| self.get(j, i).to_hex()).collect();
            out.push_str(&format!("s_{j}: {}\n", row.join(" ")));
        }
        out
    }
}

impl Field {
    pub fn subspace_coeffs(&self, k: u32) -> Result<SubspaceCoeffs> {
        if k > self.degree() {
            return Err(Error::ParameterOutOfRange {
                name: "k",
                value: k as u64,
                max: self.degree() as u64,
            });
        }
        Ok(SubspaceCoeffs::compute(k))
    }

    /// `s_k(a)`.
    pub fn eval_subspace(&self, k: u32, a: FieldElement) -> Result<FieldElement> {
        self.subspace_coeffs(k)?;
        self.check(a)?;
        Ok(self.eval_subspace_unchecked(k, a))
    }

    pub(crate) fn eval_subspace_unchecked(&self, k: u32, a: FieldElement) -> FieldElement {
        let coeffs = SubspaceCoeffs::compute(k);
        let mut acc = FieldElement::ZERO;
        let mut power = a;
        for i in 0..=k {
            if coeffs.coefficient(i) {
                acc ^= power;
            }
            power = self.frobenius(power);
        }
        acc
    }

    pub fn twiddle_table(&self) -> &TwiddleTable {
        &self.twiddles
    }

    /// `s_j(alpha)` as an XOR of table rows.
    pub fn twiddle(&self, j: u32, alpha: FieldElement) -> Result<FieldElement> {
        if j >= self.degree() {
            return Err(Error::ParameterOutOfRange {
                name: "j",
                value: j as u64,
                max: self.degree() as u64 - 1,
            });
        }
        self.check(alpha)?;
        Ok(self.twiddle_unchecked(j, alpha))
    }

    #[inline]
    pub(crate) fn twiddle_unchecked(&self, j: u32, alpha: FieldElement) -> FieldElement {
        let mut bits = alpha.coords() >> j;
        let mut acc = FieldElement::ZERO;
        let mut i = j;
        while bits != 0 {
            let tz = bits.trailing_zeros();
            i += tz;
            acc ^= self.twiddles.get(j, i);
            bits >>= tz;
            bits &= !1;
        }
        acc
    }
}
