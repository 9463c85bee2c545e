//! Straight-line AND/XOR programs for fixed-size GF(2)[x] multiplication.

mod gen;
pub mod linear;

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2x::mul_schoolbook;
use crate::poly::BinaryPoly;

pub use gen::{gen_mul_circuit, MAX_CIRCUIT_N};
pub use linear::{cse_reduce, naive_program, LinearBlock, LinearProgram};

/// Wire reference inside a program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ref {
    Zero,
    A(u32),
    B(u32),
    Gate(u32),
}

impl fmt::Display for Ref {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ref::Zero => f.write_str("ZERO"),
            Ref::A(i) => write!(f, "a{i}"),
            Ref::B(i) => write!(f, "b{i}"),
            Ref::Gate(i) => write!(f, "t{i}"),
        }
    }
}

impl FromStr for Ref {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ref> {
        let bad = || Error::MalformedReference(s.to_string());
        if s == "ZERO" {
            return Ok(Ref::Zero);
        }
        let (kind, digits) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let idx: u32 = digits.parse().map_err(|_| bad())?;
        match kind {
            "a" => Ok(Ref::A(idx)),
            "b" => Ok(Ref::B(idx)),
            "t" => Ok(Ref::Gate(idx)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    And,
    Xor,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::And => "AND",
            Op::Xor => "XOR",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gate {
    pub op: Op,
    pub lhs: Ref,
    pub rhs: Ref,
}

/// Branch-free program over inputs `a0..a(n-1)`, `b0..b(n-1)` producing `c0..c(2n-2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StraightLineProgram {
    pub n: usize,
    pub gates: Vec<Gate>,
    pub outputs: Vec<Ref>,
}

/// Outcome of [`verify_slp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    pub and_count: usize,
    pub xor_count: usize,
    pub trials: u64,
    pub exhaustive: bool,
    /// First failing operand pair.
    pub counterexample: Option<(BinaryPoly, BinaryPoly)>,
}

impl StraightLineProgram {
    pub fn and_count(&self) -> usize {
        self.gates.iter().filter(|g| g.op == Op::And).count()
    }

    pub fn xor_count(&self) -> usize {
        self.gates.len() - self.and_count()
    }

    pub fn total(&self) -> usize {
        self.gates.len()
    }

    /// Checks arity, reference ranges and topological order.
    pub fn validate(&self) -> Result<()> {
        let check = |r: Ref, at: usize| -> Result<()> {
            let ok = match r {
                Ref::Zero => true,
                Ref::A(i) | Ref::B(i) => (i as usize) < self.n,
                Ref::Gate(t) => (t as usize) < at,
            };
            if ok {
                Ok(())
            } else {
                Err(Error::MalformedReference(r.to_string()))
            }
        };
        for (t, g) in self.gates.iter().enumerate() {
            check(g.lhs, t)?;
            check(g.rhs, t)?;
        }
        if self.outputs.len() != (2 * self.n).saturating_sub(1) {
            return Err(Error::LengthMismatch { expected: 2 * self.n - 1, actual: self.outputs.len() });
        }
        for &o in &self.outputs {
            check(o, self.gates.len())?;
        }
        Ok(())
    }

    /// Evaluates 64 instances at once; lane `j` of `a[i]` is bit `i` of the `j`-th operand.
    pub fn eval_sliced(&self, a: &[u64], b: &[u64]) -> Result<Vec<u64>> {
        if a.len() != self.n || b.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: a.len().min(b.len()) });
        }
        let mut vals: Vec<u64> = Vec::with_capacity(self.gates.len());
        let get = |vals: &Vec<u64>, r: Ref| -> Result<u64> {
            match r {
                Ref::Zero => Some(0),
                Ref::A(i) => a.get(i as usize).copied(),
                Ref::B(i) => b.get(i as usize).copied(),
                Ref::Gate(t) => vals.get(t as usize).copied(),
            }
            .ok_or_else(|| Error::MalformedReference(r.to_string()))
        };
        for g in &self.gates {
            let (x, y) = (get(&vals, g.lhs)?, get(&vals, g.rhs)?);
            vals.push(match g.op {
                Op::And => x & y,
                Op::Xor => x ^ y,
            });
        }
        self.outputs.iter().map(|&o| get(&vals, o)).collect()
    }

    /// Evaluates on single bit vectors.
    pub fn eval(&self, a_bits: &[bool], b_bits: &[bool]) -> Result<Vec<bool>> {
        let lane = |v: &[bool]| v.iter().map(|&x| x as u64).collect::<Vec<_>>();
        Ok(self.eval_sliced(&lane(a_bits), &lane(b_bits))?.into_iter().map(|w| w & 1 == 1).collect())
    }

    pub fn eval_poly(&self, a: &BinaryPoly, b: &BinaryPoly) -> Result<BinaryPoly> {
        let bits = |p: &BinaryPoly| (0..self.n).map(|i| p.coeff(i)).collect::<Vec<_>>();
        if a.len() > self.n || b.len() > self.n {
            return Err(Error::DegreeTooLarge { degree: a.len().max(b.len()) - 1, len: self.n });
        }
        Ok(BinaryPoly::from_bits(self.eval(&bits(a), &bits(b))?))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("SLP n={} and={} xor={}\n", self.n, self.and_count(), self.xor_count());
        for (t, g) in self.gates.iter().enumerate() {
            let _ = writeln!(s, "t{t} = {} {} {}", g.op.name(), g.lhs, g.rhs);
        }
        for (i, o) in self.outputs.iter().enumerate() {
            let _ = writeln!(s, "c{i} = {o}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<StraightLineProgram> {
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let field = |key: &str| -> Result<usize> {
            fields
                .iter()
                .find_map(|f| f.strip_prefix(key))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(1, &format!("header lacks {key}<int>")))
        };
        if fields.first() != Some(&"SLP") {
            return Err(err(1, "header must start with SLP"));
        }
        let (n, and, xor) = (field("n=")?, field("and=")?, field("xor=")?);
        let mut p = StraightLineProgram { n, gates: Vec::new(), outputs: Vec::new() };
        for (no, line) in lines {
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| err(no, "expected `name = ...`"))?;
            let (lhs, rhs) = (lhs.trim(), rhs.trim());
            if let Some(t) = lhs.strip_prefix('t') {
                if t.parse::<usize>().ok() != Some(p.gates.len()) {
                    return Err(err(no, "gate ids must be consecutive from t0"));
                }
                let parts: Vec<&str> = rhs.split_whitespace().collect();
                let op = match parts.first() {
                    Some(&"AND") => Op::And,
                    Some(&"XOR") => Op::Xor,
                    _ => return Err(err(no, "expected AND or XOR")),
                };
                if parts.len() != 3 {
                    return Err(err(no, "a gate takes two arguments"));
                }
                p.gates.push(Gate { op, lhs: parts[1].parse()?, rhs: parts[2].parse()? });
            } else if let Some(c) = lhs.strip_prefix('c') {
                if c.parse::<usize>().ok() != Some(p.outputs.len()) {
                    return Err(err(no, "outputs must be consecutive from c0"));
                }
                p.outputs.push(rhs.parse()?);
            } else {
                return Err(err(no, "expected a gate or output line"));
            }
        }
        if p.and_count() != and || p.xor_count() != xor {
            return Err(err(1, "header gate counts disagree with the body"));
        }
        p.validate()?;
        Ok(p)
    }
}

fn to_lanes(polys: &[BinaryPoly], n: usize) -> Vec<u64> {
    (0..n)
        .map(|i| polys.iter().enumerate().fold(0u64, |acc, (j, p)| acc | ((p.coeff(i) as u64) << j)))
        .collect()
}

fn lane_poly(words: &[u64], lane: usize) -> BinaryPoly {
    BinaryPoly::from_bits(words.iter().map(|w| (w >> lane) & 1 == 1))
}

/// Structured operands: zero, all ones, single bits, alternating and block patterns.
pub fn edge_patterns(n: usize) -> Vec<BinaryPoly> {
    let mut out = vec![BinaryPoly::zero(), BinaryPoly::from_bits((0..n).map(|_| true))];
    for i in [0, 1, n / 2, n.saturating_sub(2), n - 1] {
        if i < n {
            out.push(BinaryPoly::monomial(i));
        }
    }
    out.push(BinaryPoly::from_bits((0..n).map(|i| i % 2 == 0)));
    out.push(BinaryPoly::from_bits((0..n).map(|i| i % 2 == 1)));
    out.push(BinaryPoly::from_bits((0..n).map(|i| i >= n / 2)));
    out.push(BinaryPoly::from_bits((0..n).map(|i| i < n / 2)));
    out.push(BinaryPoly::one().add(&BinaryPoly::monomial(n - 1)));
    let mut unique: Vec<BinaryPoly> = Vec::new();
    for p in out {
        if !unique.contains(&p) {
            unique.push(p);
        }
    }
    unique
}

/// Compares `p` with schoolbook multiplication: every input pair when
/// `2^(2n) <= exhaustive_threshold`, otherwise all pairs of edge patterns plus
/// `trials` random pairs.
pub fn verify_slp(p: &StraightLineProgram, trials: u64, exhaustive_threshold: u64, seed: u64) -> VerifyReport {
    let mut report = VerifyReport {
        pass: p.validate().is_ok(),
        and_count: p.and_count(),
        xor_count: p.xor_count(),
        trials: 0,
        exhaustive: false,
        counterexample: None,
    };
    if !report.pass {
        return report;
    }
    let n = p.n;
    let mut pairs: Vec<(BinaryPoly, BinaryPoly)> = Vec::new();
    let run = |pairs: &mut Vec<(BinaryPoly, BinaryPoly)>, report: &mut VerifyReport| {
        let (xs, ys): (Vec<_>, Vec<_>) = pairs.drain(..).unzip();
        let out = match p.eval_sliced(&to_lanes(&xs, n), &to_lanes(&ys, n)) {
            Ok(out) => out,
            Err(_) => {
                report.pass = false;
                return;
            }
        };
        for (j, (x, y)) in xs.iter().zip(&ys).enumerate() {
            if report.pass && lane_poly(&out, j) != mul_schoolbook(x, y) {
                report.pass = false;
                report.counterexample = Some((x.clone(), y.clone()));
            }
        }
        report.trials += xs.len() as u64;
    };
    let mut push = |x: BinaryPoly, y: BinaryPoly, report: &mut VerifyReport| {
        pairs.push((x, y));
        if pairs.len() == 64 {
            run(&mut pairs, report);
        }
    };
    let exhaustive = 2 * n < 64 && (1u64 << (2 * n)) <= exhaustive_threshold;
    if exhaustive {
        report.exhaustive = true;
        for x in 0..1u64 << n {
            for y in 0..1u64 << n {
                push(BinaryPoly::from_u64(x), BinaryPoly::from_u64(y), &mut report);
            }
        }
    } else {
        let edges = edge_patterns(n);
        for x in &edges {
            for y in &edges {
                push(x.clone(), y.clone(), &mut report);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let x = BinaryPoly::from_bits((0..n).map(|_| rng.gen::<bool>()));
            let y = BinaryPoly::from_bits((0..n).map(|_| rng.gen::<bool>()));
            push(x, y, &mut report);
        }
    }
    if !pairs.is_empty() {
        run(&mut pairs, &mut report);
    }
    report
}
