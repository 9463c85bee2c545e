//! Quick consistency checks run by `fafft selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bench::random_operand;
use crate::transform::{OpCounters};
use crate::field::{mul_tower_bits, Field, FieldElement};
use crate::gf2x::{mul_fafft_with, mul_schoolbook};
use crate::novel::{from_novel, to_novel};

pub type Check = (&'static str, std::result::Result<(), String>);

/// Multiplication tables of GF(2^2^j) for j <= 3 against the bit-level tower
/// recursion, plus inverses of every nonzero element.
pub fn small_field_tables() -> std::result::Result<(), String> {
    for height in 1..=3u32 {
        let f = Field::with_height(height).map_err(|e| e.to_string())?;
        let size = 1u64 << f.degree();
        for a in 0..size {
            for b in 0..size {
                let got = f.mul(FieldElement::from_coords(a), FieldElement::from_coords(b)).coords();
                if got != mul_tower_bits(height, a, b) {
                    return Err(format!("GF(2^{}): {a:x}*{b:x} = {got:x}", f.degree()));
                }
            }
            if a != 0 {
                let x = FieldElement::from_coords(a);
                let inv = f.inverse(x).map_err(|e| e.to_string())?;
                if f.mul(x, inv) != FieldElement::ONE {
                    return Err(format!("GF(2^{}): bad inverse of {a:x}", f.degree()));
                }
            }
        }
    }
    Ok(())
}

/// Frobenius orbits of the cross section tile `W_m` exactly.
pub fn partition(field: &Field, m: u32) -> std::result::Result<(), String> {
    let points = field.cross_section(m).map_err(|e| e.to_string())?;
    let n = 1usize << m;
    let mut seen = vec![false; n];
    for p in points {
        let mut s = p.sigma;
        for j in 0..p.orbit_size {
            let idx = s.coords() as usize;
            if idx >= n || seen[idx] {
                return Err(format!("m={m}: orbit of {:x} hits {idx:x} twice or leaves W_m", p.index()));
            }
            seen[idx] = true;
            s = field.frobenius(s);
            if j + 1 < p.orbit_size && s == p.sigma {
                return Err(format!("m={m}: orbit of {:x} is shorter than {}", p.index(), p.orbit_size));
            }
        }
        if s != p.sigma {
            return Err(format!("m={m}: orbit of {:x} does not close", p.index()));
        }
    }
    match seen.iter().position(|s| !s) {
        Some(i) => Err(format!("m={m}: {i:x} is not covered")),
        None => Ok(()),
    }
}

/// Random basis conversions, transform roundtrips and products.
pub fn pipeline_roundtrips(field: &Field, count: usize, seed: u64) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_m = field.degree().min(12);
    for i in 0..count {
        let m = rng.gen_range(1..=max_m);
        let n = 1usize << m;
        let p = random_operand(&mut rng, n);
        let g = to_novel(&p, n).map_err(|e| e.to_string())?;
        if from_novel(&g).map_err(|e| e.to_string())? != p {
            return Err(format!("trial {i}: basis conversion roundtrip failed (m={m})"));
        }
        let r = field.fafft(&g, &mut OpCounters::new()).map_err(|e| e.to_string())?;
        let back = field.ifafft(&r).and_then(|h| h.to_bits()).map_err(|e| e.to_string())?;
        if back != g {
            return Err(format!("trial {i}: transform roundtrip failed (m={m})"));
        }
        let a = random_operand(&mut rng, n / 2);
        let b = random_operand(&mut rng, n / 2);
        let prod = mul_fafft_with(field, &a, &b, &mut OpCounters::new()).map_err(|e| e.to_string())?;
        if prod != mul_schoolbook(&a, &b) {
            return Err(format!("trial {i}: product mismatch (m={m})"));
        }
    }
    Ok(())
}

pub fn run(field: &Field, seed: u64) -> Vec<Check> {
    vec![
        ("small field tables", small_field_tables()),
        (
            "cross-section partition (m <= 12)",
            (0..=field.degree().min(12)).try_for_each(|m| partition(field, m)),
        ),
        ("100 pipeline roundtrips", pipeline_roundtrips(field, 100, seed)),
    ]
}
