//! C interface to `fafft`.
//!
//! Polynomials cross the boundary as little-endian arrays of `uint64_t`
//! words: bit `i % 64` of word `i / 64` is the coefficient of `x^i`.
//! Field elements are `uint64_t` coordinate vectors. Every function returns a
//! [`FafftStatus`]; outputs are written only on success, except that the
//! required length is reported alongside `FAFFT_STATUS_BUFFER_TOO_SMALL`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fafft::circuit::{gen_mul_circuit, verify_slp, StraightLineProgram};
use fafft::gf2x::{mul_fafft_with, mul_karatsuba, mul_schoolbook};
use fafft::{to_novel, BinaryPoly, Error, Field, FieldElement, FieldParams, OpCounters};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FafftStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    ZeroInverse = 4,
    Parse = 5,
    Io = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FafftMethod {
    Fafft = 0,
    Schoolbook = 1,
    Karatsuba = 2,
}

/// Opaque field handle.
pub struct FafftField {
    inner: Field,
}

/// Opaque straight-line program handle.
pub struct FafftCircuit {
    inner: StraightLineProgram,
}

type Outcome = Result<(), FafftStatus>;

impl From<Error> for FafftStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::ZeroInverse => FafftStatus::ZeroInverse,
            Error::Parse { .. } | Error::MalformedReference(_) | Error::InvalidHex(_) => FafftStatus::Parse,
            _ => FafftStatus::InvalidArgument,
        }
    }
}

fn guard(f: impl FnOnce() -> Outcome) -> FafftStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FafftStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => FafftStatus::Panic,
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, FafftStatus> {
    p.as_ref().ok_or(FafftStatus::NullPointer)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, FafftStatus> {
    p.as_mut().ok_or(FafftStatus::NullPointer)
}

unsafe fn words<'a>(p: *const u64, len: usize) -> Result<&'a [u64], FafftStatus> {
    match (p.is_null(), len) {
        (_, 0) => Ok(&[]),
        (true, _) => Err(FafftStatus::NullPointer),
        (false, _) => Ok(std::slice::from_raw_parts(p, len)),
    }
}

unsafe fn read_poly(p: *const u64, len: usize) -> Result<BinaryPoly, FafftStatus> {
    Ok(BinaryPoly::from_words(words(p, len)?.to_vec()))
}

/// Copies `src` to `dst` and stores its length; fails without copying when `cap` is short.
unsafe fn write_words(src: &[u64], dst: *mut u64, cap: usize, len_out: *mut usize) -> Outcome {
    *out(len_out)? = src.len();
    if src.len() > cap {
        return Err(FafftStatus::BufferTooSmall);
    }
    if !src.is_empty() {
        if dst.is_null() {
            return Err(FafftStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(src.as_ptr(), dst, src.len());
    }
    Ok(())
}

fn element(field: &Field, x: u64) -> Result<FieldElement, FafftStatus> {
    Ok(field.check(FieldElement::from_coords(x))?)
}

/// Static description of a [`FafftStatus`] value.
#[no_mangle]
pub extern "C" fn fafft_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"invalid argument",
        3 => c"output buffer too small",
        4 => c"zero has no inverse",
        5 => c"malformed input",
        6 => c"i/o error",
        7 => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Creates the field GF(2^(2^k)), 1 <= k <= 6.
///
/// # Safety
/// `field_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fafft_field_new(k: u32, field_out: *mut *mut FafftField) -> FafftStatus {
    guard(|| {
        let slot = out(field_out)?;
        let inner = Field::new(FieldParams::new(k)?);
        *slot = Box::into_raw(Box::new(FafftField { inner }));
        Ok(())
    })
}

/// # Safety
/// `field` must be null or come from [`fafft_field_new`] and not be freed already.
#[no_mangle]
pub unsafe extern "C" fn fafft_field_free(field: *mut FafftField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Extension degree of the field, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fafft_field_degree(field: *const FafftField) -> u32 {
    field.as_ref().map_or(0, |f| f.inner.degree())
}

/// # Safety
/// `field` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fafft_field_mul(field: *const FafftField, a: u64, b: u64, result: *mut u64) -> FafftStatus {
    guard(|| {
        let f = &deref(field)?.inner;
        let r = out(result)?;
        *r = f.mul(element(f, a)?, element(f, b)?).coords();
        Ok(())
    })
}

/// # Safety
/// `field` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fafft_field_inverse(field: *const FafftField, a: u64, result: *mut u64) -> FafftStatus {
    guard(|| {
        let f = &deref(field)?.inner;
        let r = out(result)?;
        *r = f.inverse(element(f, a)?)?.coords();
        Ok(())
    })
}

/// Squaring, the Frobenius map.
///
/// # Safety
/// `field` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fafft_field_frobenius(field: *const FafftField, a: u64, result: *mut u64) -> FafftStatus {
    guard(|| {
        let f = &deref(field)?.inner;
        let r = out(result)?;
        *r = f.frobenius(element(f, a)?).coords();
        Ok(())
    })
}

/// Product of two polynomials. `method` is a [`FafftMethod`] value; the
/// field only matters for `FAFFT_METHOD_FAFFT`. `result_len` receives the
/// number of words of the product (0 for the zero polynomial).
///
/// # Safety
/// Pointers must be valid for the given lengths; `result` for `result_cap` words.
#[no_mangle]
pub unsafe extern "C" fn fafft_poly_mul(
    field: *const FafftField,
    method: u32,
    a: *const u64,
    a_len: usize,
    b: *const u64,
    b_len: usize,
    result: *mut u64,
    result_cap: usize,
    result_len: *mut usize,
) -> FafftStatus {
    guard(|| {
        let a = read_poly(a, a_len)?;
        let b = read_poly(b, b_len)?;
        let c = match method {
            0 => mul_fafft_with(&deref(field)?.inner, &a, &b, &mut OpCounters::new())?,
            1 => mul_schoolbook(&a, &b),
            2 => mul_karatsuba(&a, &b),
            _ => return Err(FafftStatus::InvalidArgument),
        };
        write_words(c.words(), result, result_cap, result_len)
    })
}

/// Cross-section values of a polynomial of length at most `2^m`, in the
/// library's output order. `values_len` receives the number of values.
///
/// # Safety
/// Pointers must be valid for the given lengths; `values` for `values_cap` entries.
#[no_mangle]
pub unsafe extern "C" fn fafft_faft(
    field: *const FafftField,
    poly: *const u64,
    poly_len: usize,
    m: u32,
    values: *mut u64,
    values_cap: usize,
    values_len: *mut usize,
) -> FafftStatus {
    guard(|| {
        let f = &deref(field)?.inner;
        let p = read_poly(poly, poly_len)?;
        if m > f.degree() {
            return Err(FafftStatus::InvalidArgument);
        }
        let r = f.fafft(&to_novel(&p, 1 << m)?, &mut OpCounters::new())?;
        let v: Vec<u64> = r.values().iter().map(|x| x.coords()).collect();
        write_words(&v, values, values_cap, values_len)
    })
}

/// Generates a multiplier circuit for two `n`-bit operands, `n` a power of two up to 1024.
///
/// # Safety
/// `circuit_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fafft_circuit_generate(n: usize, cse: bool, circuit_out: *mut *mut FafftCircuit) -> FafftStatus {
    guard(|| {
        let slot = out(circuit_out)?;
        let inner = gen_mul_circuit(n, cse)?;
        *slot = Box::into_raw(Box::new(FafftCircuit { inner }));
        Ok(())
    })
}

/// # Safety
/// `circuit` must be null or a handle not freed already.
#[no_mangle]
pub unsafe extern "C" fn fafft_circuit_free(circuit: *mut FafftCircuit) {
    if !circuit.is_null() {
        drop(Box::from_raw(circuit));
    }
}

/// Operand width, AND gates and XOR gates.
///
/// # Safety
/// `circuit` must be a live handle; outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fafft_circuit_counts(
    circuit: *const FafftCircuit,
    n: *mut usize,
    and_count: *mut usize,
    xor_count: *mut usize,
) -> FafftStatus {
    guard(|| {
        let c = &deref(circuit)?.inner;
        *out(n)? = c.n;
        *out(and_count)? = c.and_count();
        *out(xor_count)? = c.xor_count();
        Ok(())
    })
}

/// Evaluates the circuit on two operands of degree below `n`.
///
/// # Safety
/// Pointers must be valid for the given lengths; `result` for `result_cap` words.
#[no_mangle]
pub unsafe extern "C" fn fafft_circuit_eval(
    circuit: *const FafftCircuit,
    a: *const u64,
    a_len: usize,
    b: *const u64,
    b_len: usize,
    result: *mut u64,
    result_cap: usize,
    result_len: *mut usize,
) -> FafftStatus {
    guard(|| {
        let c = &deref(circuit)?.inner;
        let a = read_poly(a, a_len)?;
        let b = read_poly(b, b_len)?;
        if a.len() > c.n || b.len() > c.n {
            return Err(FafftStatus::InvalidArgument);
        }
        let r = c.eval_poly(&a, &b)?;
        write_words(r.words(), result, result_cap, result_len)
    })
}

unsafe fn path<'a>(p: *const c_char) -> Result<&'a str, FafftStatus> {
    if p.is_null() {
        return Err(FafftStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| FafftStatus::InvalidArgument)
}

/// Writes the circuit in text form.
///
/// # Safety
/// `circuit` must be a live handle and `file` a NUL-terminated path.
#[no_mangle]
pub unsafe extern "C" fn fafft_circuit_write(circuit: *const FafftCircuit, file: *const c_char) -> FafftStatus {
    guard(|| {
        let c = &deref(circuit)?.inner;
        std::fs::write(path(file)?, c.to_text()).map_err(|_| FafftStatus::Io)
    })
}

/// Reads a circuit in text form.
///
/// # Safety
/// `file` must be a NUL-terminated path and `circuit_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fafft_circuit_read(file: *const c_char, circuit_out: *mut *mut FafftCircuit) -> FafftStatus {
    guard(|| {
        let slot = out(circuit_out)?;
        let text = std::fs::read_to_string(path(file)?).map_err(|_| FafftStatus::Io)?;
        let inner = StraightLineProgram::parse(&text)?;
        *slot = Box::into_raw(Box::new(FafftCircuit { inner }));
        Ok(())
    })
}

/// Checks the circuit against schoolbook multiplication on edge-case and
/// `trials` random operand pairs, or exhaustively for small `n`.
///
/// # Safety
/// `circuit` must be a live handle and `pass` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fafft_circuit_verify(
    circuit: *const FafftCircuit,
    trials: u64,
    seed: u64,
    pass: *mut bool,
) -> FafftStatus {
    guard(|| {
        let c = &deref(circuit)?.inner;
        *out(pass)? = verify_slp(c, trials, 1 << 16, seed).pass;
        Ok(())
    })
}
