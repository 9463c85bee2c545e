use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fafft::gf2x::mul_schoolbook;
use fafft::BinaryPoly;
use fafft_ffi::*;

fn field(k: u32) -> *mut FafftField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { fafft_field_new(k, &mut f) }, FafftStatus::Ok);
    assert!(!f.is_null());
    f
}

fn poly_mul(f: *const FafftField, method: u32, a: &[u64], b: &[u64]) -> (FafftStatus, Vec<u64>) {
    let mut out = vec![0u64; a.len() + b.len()];
    let mut len = 0;
    let s = unsafe { fafft_poly_mul(f, method, a.as_ptr(), a.len(), b.as_ptr(), b.len(), out.as_mut_ptr(), out.len(), &mut len) };
    out.truncate(len);
    (s, out)
}

#[test]
fn field_operations() {
    let f = field(2);
    assert_eq!(unsafe { fafft_field_degree(f) }, 4);
    let mut r = 0;
    for a in 1..16u64 {
        let mut inv = 0;
        assert_eq!(unsafe { fafft_field_inverse(f, a, &mut inv) }, FafftStatus::Ok);
        assert_eq!(unsafe { fafft_field_mul(f, a, inv, &mut r) }, FafftStatus::Ok);
        assert_eq!(r, 1);
        let (mut sq, mut fr) = (0, 0);
        unsafe {
            fafft_field_mul(f, a, a, &mut sq);
            fafft_field_frobenius(f, a, &mut fr);
        }
        assert_eq!(sq, fr);
    }
    unsafe {
        assert_eq!(fafft_field_inverse(f, 0, &mut r), FafftStatus::ZeroInverse);
        assert_eq!(fafft_field_mul(f, 16, 1, &mut r), FafftStatus::InvalidArgument);
        assert_eq!(fafft_field_mul(f, 1, 1, ptr::null_mut()), FafftStatus::NullPointer);
        assert_eq!(fafft_field_mul(ptr::null(), 1, 1, &mut r), FafftStatus::NullPointer);
        fafft_field_free(f);
        fafft_field_free(ptr::null_mut());
        let mut g = ptr::null_mut();
        assert_eq!(fafft_field_new(7, &mut g), FafftStatus::InvalidArgument);
        assert!(g.is_null());
        assert_eq!(fafft_field_degree(ptr::null()), 0);
    }
}

#[test]
fn polynomial_products() {
    let f = field(6);
    assert_eq!(poly_mul(f, FafftMethod::Fafft as u32, &[0xb], &[0xd]), (FafftStatus::Ok, vec![0x7f]));
    let a: Vec<u64> = (0..37).map(|i| 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i + 1)).collect();
    let b: Vec<u64> = (0..21).map(|i| 0xc2b2_ae3d_27d4_eb4fu64.wrapping_mul(i + 3)).collect();
    let want = mul_schoolbook(&BinaryPoly::from_words(a.clone()), &BinaryPoly::from_words(b.clone()));
    for method in [FafftMethod::Fafft, FafftMethod::Schoolbook, FafftMethod::Karatsuba] {
        assert_eq!(poly_mul(f, method as u32, &a, &b), (FafftStatus::Ok, want.words().to_vec()));
    }
    assert_eq!(poly_mul(f, 0, &[], &[5]), (FafftStatus::Ok, vec![]));
    assert_eq!(poly_mul(f, 3, &[1], &[1]).0, FafftStatus::InvalidArgument);
    assert_eq!(poly_mul(ptr::null(), 1, &[3], &[3]), (FafftStatus::Ok, vec![5]));
    assert_eq!(poly_mul(ptr::null(), 0, &[3], &[3]).0, FafftStatus::NullPointer);

    let mut len = 0;
    let mut small = [0u64; 1];
    let s = unsafe { fafft_poly_mul(f, 1, a.as_ptr(), a.len(), b.as_ptr(), b.len(), small.as_mut_ptr(), 1, &mut len) };
    assert_eq!(s, FafftStatus::BufferTooSmall);
    assert_eq!(len, want.words().len());
    assert_eq!(small[0], 0);
    unsafe { fafft_field_free(f) };
}

#[test]
fn small_field_rejects_large_operands() {
    let f = field(2);
    assert_eq!(poly_mul(f, 0, &[0xff], &[0xff]), (FafftStatus::Ok, vec![0x5555]));
    assert_eq!(poly_mul(f, 0, &[0xffff], &[0xff]).0, FafftStatus::InvalidArgument);
    unsafe { fafft_field_free(f) };
}

#[test]
fn cross_section_values() {
    let f = field(6);
    let mut values = [0u64; 8];
    let mut len = 0;
    let p = [3u64];
    unsafe {
        assert_eq!(fafft_faft(f, p.as_ptr(), 1, 2, values.as_mut_ptr(), 8, &mut len), FafftStatus::Ok);
        assert_eq!(&values[..len], &[1, 0, 3]);
        assert_eq!(fafft_faft(f, p.as_ptr(), 1, 2, values.as_mut_ptr(), 2, &mut len), FafftStatus::BufferTooSmall);
        assert_eq!(len, 3);
        assert_eq!(fafft_faft(f, p.as_ptr(), 1, 65, values.as_mut_ptr(), 8, &mut len), FafftStatus::InvalidArgument);
        let q = [0xffu64];
        assert_eq!(fafft_faft(f, q.as_ptr(), 1, 2, values.as_mut_ptr(), 8, &mut len), FafftStatus::InvalidArgument);
        fafft_field_free(f);
    }
}

#[test]
fn circuits() {
    let dir = tempfile::tempdir().unwrap();
    let file = CString::new(dir.path().join("m.slp").to_str().unwrap()).unwrap();
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(fafft_circuit_generate(3, true, &mut c), FafftStatus::InvalidArgument);
        assert_eq!(fafft_circuit_generate(64, true, &mut c), FafftStatus::Ok);
        let (mut n, mut and, mut xor) = (0, 0, 0);
        assert_eq!(fafft_circuit_counts(c, &mut n, &mut and, &mut xor), FafftStatus::Ok);
        assert_eq!(n, 64);
        assert!(and > 0 && xor > 0);

        let (a, b) = ([0x8000_0000_0000_0001u64], [0xffff_ffff_ffff_ffffu64]);
        let mut r = [0u64; 2];
        let mut len = 0;
        assert_eq!(fafft_circuit_eval(c, a.as_ptr(), 1, b.as_ptr(), 1, r.as_mut_ptr(), 2, &mut len), FafftStatus::Ok);
        let want = mul_schoolbook(&BinaryPoly::from_words(a.to_vec()), &BinaryPoly::from_words(b.to_vec()));
        assert_eq!(&r[..len], want.words());
        let wide = [0u64, 1];
        assert_eq!(
            fafft_circuit_eval(c, wide.as_ptr(), 2, b.as_ptr(), 1, r.as_mut_ptr(), 2, &mut len),
            FafftStatus::InvalidArgument
        );

        let mut pass = false;
        assert_eq!(fafft_circuit_verify(c, 500, 1, &mut pass), FafftStatus::Ok);
        assert!(pass);

        assert_eq!(fafft_circuit_write(c, file.as_ptr()), FafftStatus::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(fafft_circuit_read(file.as_ptr(), &mut d), FafftStatus::Ok);
        let (mut n2, mut and2, mut xor2) = (0, 0, 0);
        fafft_circuit_counts(d, &mut n2, &mut and2, &mut xor2);
        assert_eq!((n2, and2, xor2), (n, and, xor));
        fafft_circuit_free(c);
        fafft_circuit_free(d);

        std::fs::write(dir.path().join("m.slp"), "SLP n=2 and=1 xor=0\n").unwrap();
        assert_eq!(fafft_circuit_read(file.as_ptr(), &mut d), FafftStatus::Parse);
        let missing = CString::new(dir.path().join("none").to_str().unwrap()).unwrap();
        assert_eq!(fafft_circuit_read(missing.as_ptr(), &mut d), FafftStatus::Io);
        assert_eq!(fafft_circuit_read(ptr::null(), &mut d), FafftStatus::NullPointer);
    }
}

#[test]
fn status_messages() {
    for s in 0..8 {
        let m = unsafe { CStr::from_ptr(fafft_status_message(s)) };
        assert!(!m.to_bytes().is_empty());
    }
    assert_eq!(unsafe { CStr::from_ptr(fafft_status_message(99)) }.to_str().unwrap(), "unknown status");
}

fn static_lib() -> Option<PathBuf> {
    let deps = std::env::current_exe().ok()?.parent()?.to_path_buf();
    let lib = deps.parent()?.join("libfafft_ffi.a");
    lib.exists().then_some(lib)
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "fafft.h"

int main(void) {
    FafftField *f = NULL;
    if (fafft_field_new(6, &f) != FAFFT_STATUS_OK) return 10;
    uint64_t a[1] = {0xb}, b[1] = {0xd}, r[2];
    size_t len = 0;
    if (fafft_poly_mul(f, FAFFT_METHOD_FAFFT, a, 1, b, 1, r, 2, &len) != FAFFT_STATUS_OK) return 11;
    if (len != 1 || r[0] != 0x7f) return 12;
    uint64_t inv = 0;
    if (fafft_field_inverse(f, 0, &inv) != FAFFT_STATUS_ZERO_INVERSE) return 13;
    fafft_field_free(f);

    FafftCircuit *c = NULL;
    if (fafft_circuit_generate(16, true, &c) != FAFFT_STATUS_OK) return 14;
    bool pass = false;
    if (fafft_circuit_verify(c, 100, 7, &pass) != FAFFT_STATUS_OK || !pass) return 15;
    fafft_circuit_free(c);
    printf("%s\n", fafft_status_message(FAFFT_STATUS_OK));
    return 0;
}
"#;

#[test]
fn c_program_links_against_header() {
    let Some(lib) = static_lib() else {
        panic!("static library not found next to {:?}", std::env::current_exe());
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .args(["-std=c11", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
