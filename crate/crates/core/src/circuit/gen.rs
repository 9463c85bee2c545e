//! Symbolic tracing of the transform-based multiplier into an SLP.

use std::collections::HashMap;
use std::rc::Rc;

use super::linear::{cse_reduce, naive_program, LinearBlock, LinearProgram};
use super::{Gate, Op, Ref, StraightLineProgram};
use crate::error::{Error, Result};
use crate::transform::{binru, faft_size, truncates};
use crate::field::{Field, FieldElement};
use crate::gf2x::default_field;
use crate::novel::{from_novel_lanes, to_novel_lanes, XorLanes};

/// Largest supported operand length.
pub const MAX_CIRCUIT_N: usize = 1024;

/// A field element as wires, lowest coordinate first.
type Sym = Vec<Ref>;

struct Builder<'f> {
    field: &'f Field,
    cse: bool,
    gates: Vec<Gate>,
    memo: HashMap<Gate, Ref>,
    programs: HashMap<LinearBlock, Rc<LinearProgram>>,
}

impl<'f> Builder<'f> {
    fn new(field: &'f Field, cse: bool) -> Self {
        Builder { field, cse, gates: Vec::new(), memo: HashMap::new(), programs: HashMap::new() }
    }

    fn push(&mut self, op: Op, x: Ref, y: Ref) -> Ref {
        let gate = Gate { op, lhs: x.min(y), rhs: x.max(y) };
        if let Some(&r) = self.memo.get(&gate) {
            return r;
        }
        let r = Ref::Gate(self.gates.len() as u32);
        self.gates.push(gate);
        self.memo.insert(gate, r);
        r
    }

    fn xor(&mut self, x: Ref, y: Ref) -> Ref {
        match (x, y) {
            (Ref::Zero, r) | (r, Ref::Zero) => r,
            _ if x == y => Ref::Zero,
            _ => self.push(Op::Xor, x, y),
        }
    }

    fn and(&mut self, x: Ref, y: Ref) -> Ref {
        match (x, y) {
            (Ref::Zero, _) | (_, Ref::Zero) => Ref::Zero,
            _ if x == y => x,
            _ => self.push(Op::And, x, y),
        }
    }

    fn xor_vec(&mut self, x: &[Ref], y: &[Ref]) -> Sym {
        (0..x.len().max(y.len()))
            .map(|i| self.xor(x.get(i).copied().unwrap_or(Ref::Zero), y.get(i).copied().unwrap_or(Ref::Zero)))
            .collect()
    }

    fn program(&mut self, block: LinearBlock) -> Rc<LinearProgram> {
        let cse = self.cse;
        self.programs
            .entry(block)
            .or_insert_with_key(|b| Rc::new(if cse { cse_reduce(b) } else { naive_program(b) }))
            .clone()
    }

    /// Restates `rows` (over positions of `inputs`) over the distinct nonzero wires.
    fn reduce(inputs: &[Ref], rows: &[u128]) -> (Vec<Ref>, LinearBlock) {
        assert!(inputs.len() <= 128);
        let mut wires: Vec<Ref> = Vec::new();
        let colmap: Vec<Option<usize>> = inputs
            .iter()
            .map(|&r| {
                if r == Ref::Zero {
                    return None;
                }
                Some(wires.iter().position(|&w| w == r).unwrap_or_else(|| {
                    wires.push(r);
                    wires.len() - 1
                }))
            })
            .collect();
        let eff = rows
            .iter()
            .map(|row| {
                colmap
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| (row >> p) & 1 == 1)
                    .fold(0u128, |acc, (_, c)| c.map_or(acc, |c| acc ^ (1 << c)))
            })
            .collect();
        let cols = wires.len();
        (wires, LinearBlock::new(cols, eff))
    }

    fn linear_cost(&mut self, inputs: &[Ref], rows: &[u128]) -> usize {
        let (_, block) = Self::reduce(inputs, rows);
        self.program(block).xor_count()
    }

    fn linear(&mut self, inputs: &[Ref], rows: &[u128]) -> Sym {
        let (mut vars, block) = Self::reduce(inputs, rows);
        let prog = self.program(block);
        for &(p, q) in &prog.ops {
            let v = self.xor(vars[p], vars[q]);
            vars.push(v);
        }
        prog.outputs.iter().map(|o| o.map_or(Ref::Zero, |v| vars[v])).collect()
    }

    /// `q0 = x + M y` and, when `with_sum`, `q1 = q0 + y`.
    fn combine(&mut self, x: &[Ref], y: &[Ref], m: &LinearBlock, with_sum: bool) -> (Sym, Sym) {
        let w = m.rows.len();
        debug_assert!(x.len() <= w && y.len() <= w && m.cols <= y.len());
        let (_, my) = Self::reduce(y, &m.rows);
        let nonzero = |r: &Ref| *r != Ref::Zero;
        let mut two_stage = self.program(my.clone()).xor_count()
            + my.rows.iter().zip(x).filter(|(row, r)| **row != 0 && nonzero(r)).count();
        if with_sum {
            two_stage += y.iter().filter(|r| nonzero(r)).count();
        }
        let nx = x.len();
        let inputs: Vec<Ref> = x.iter().chain(y).copied().collect();
        let mut stacked_rows: Vec<u128> =
            (0..w).map(|r| ((r < nx) as u128) << r.min(127) | (m.rows[r] << nx)).collect();
        if with_sum {
            let q1: Vec<u128> = (0..w)
                .map(|r| stacked_rows[r] ^ if r < y.len() { 1u128 << (nx + r) } else { 0 })
                .collect();
            stacked_rows.extend(q1);
        }
        let stacked = if self.cse { self.linear_cost(&inputs, &stacked_rows) } else { usize::MAX };
        if stacked < two_stage {
            let mut out = self.linear(&inputs, &stacked_rows);
            let q1 = if with_sum { out.split_off(w) } else { Vec::new() };
            (out, q1)
        } else {
            let t = self.linear(y, &m.rows);
            let q0 = self.xor_vec(x, &t);
            let q1 = if with_sum { self.xor_vec(&q0, y) } else { Vec::new() };
            (q0, q1)
        }
    }

    fn const_block(&self, c: FieldElement, in_width: u32, out_width: u32) -> LinearBlock {
        LinearBlock::const_mul(self.field, c, in_width as usize, out_width as usize)
    }

    fn fafft(&mut self, k: u32, buf: &mut [Sym], l: u32, alpha: FieldElement, out: &mut Vec<Sym>) {
        if k == 0 {
            out.push(buf[0].clone());
            return;
        }
        let half = 1usize << (k - 1);
        let twiddle = self.field.twiddle_unchecked(k - 1, alpha);
        let w_in = binru(l);
        let w_out = if l == 0 { 1 } else { binru(l + 1) };
        let m = self.const_block(twiddle, w_in, w_out);
        let (p0, p1) = buf.split_at_mut(half);
        if truncates(l) {
            for (a, b) in p0.iter_mut().zip(p1.iter()) {
                *a = self.combine(a, b, &m, false).0;
            }
            self.fafft(k - 1, p0, l + 1, alpha, out);
        } else {
            for (a, b) in p0.iter_mut().zip(p1.iter_mut()) {
                let (q0, q1) = self.combine(a, b, &m, true);
                *a = q0;
                *b = q1;
            }
            let next = if l == 0 { 0 } else { l + 1 };
            self.fafft(k - 1, p0, next, alpha, out);
            self.fafft(k - 1, p1, l + 1, alpha ^ FieldElement::basis(k - 1), out);
        }
    }

    fn ifafft(&mut self, k: u32, values: &[Sym], l: u32, alpha: FieldElement) -> Vec<Sym> {
        let wl = binru(l) as usize;
        if k == 0 {
            return vec![values[0][..wl].to_vec()];
        }
        let twiddle = self.field.twiddle_unchecked(k - 1, alpha);
        if truncates(l) {
            let q = self.ifafft(k - 1, values, l + 1, alpha);
            let m = self.const_block(twiddle ^ FieldElement::basis(l), l, l);
            let mut p1 = Vec::with_capacity(q.len());
            let mut p0: Vec<Sym> = q
                .iter()
                .map(|v| {
                    let (r0, r1) = v.split_at(wl);
                    p1.push(r1.to_vec());
                    self.combine(r0, r1, &m, false).0
                })
                .collect();
            p0.append(&mut p1);
            p0
        } else {
            let next = if l == 0 { 0 } else { l + 1 };
            let (v0, v1) = values.split_at(faft_size(k - 1, next));
            let q0 = self.ifafft(k - 1, v0, next, alpha);
            let q1 = self.ifafft(k - 1, v1, l + 1, alpha ^ FieldElement::basis(k - 1));
            let m = self.const_block(twiddle, wl as u32, wl as u32);
            let mut p1: Vec<Sym> = Vec::with_capacity(q0.len());
            let mut p0: Vec<Sym> = Vec::with_capacity(2 * q0.len());
            for (a, b) in q0.iter().zip(&q1) {
                let s = self.xor_vec(&a[..wl], &b[..wl]);
                p0.push(self.combine(&a[..wl], &s, &m, false).0);
                p1.push(s);
            }
            p0.append(&mut p1);
            p0
        }
    }

    /// Tower Karatsuba on `GF(2^w)` elements.
    fn mul(&mut self, a: &[Ref], b: &[Ref]) -> Sym {
        let w = a.len();
        debug_assert_eq!(w, b.len());
        if w == 1 {
            return vec![self.and(a[0], b[0])];
        }
        let h = w / 2;
        let (a0, a1) = a.split_at(h);
        let (b0, b1) = b.split_at(h);
        let zero = |v: &[Ref]| v.iter().all(|r| *r == Ref::Zero);
        let (lo, hi) = match (zero(a1), zero(b1)) {
            (true, true) => (self.mul(a0, b0), vec![Ref::Zero; h]),
            // one operand in the half-size subfield: two products
            (true, false) => (self.mul(a0, b0), self.mul(a0, b1)),
            (false, true) => (self.mul(a0, b0), self.mul(a1, b0)),
            (false, false) => {
                let p0 = self.mul(a0, b0);
                let p1 = self.mul(a1, b1);
                let sa = self.xor_vec(a0, a1);
                let sb = self.xor_vec(b0, b1);
                let p2 = self.mul(&sa, &sb);
                let zeta = self.const_block(FieldElement::basis(h as u32 - 1), h as u32, h as u32);
                let lo = self.combine(&p0, &p1, &zeta, false).0;
                (lo, self.xor_vec(&p2, &p0))
            }
        };
        lo.into_iter().chain(hi).collect()
    }

    fn novel(&mut self, refs: Vec<Ref>, forward: bool) -> Vec<Ref> {
        let t = refs.len().trailing_zeros();
        let mut lanes = SymLanes { refs, builder: self };
        if forward {
            to_novel_lanes(&mut lanes, 0, t, 1);
        } else {
            from_novel_lanes(&mut lanes, 0, t, 1);
        }
        lanes.refs
    }

    fn forward(&mut self, m: u32, input: Vec<Ref>) -> Vec<Sym> {
        let coeffs = self.novel(input, true);
        let mut buf: Vec<Sym> = coeffs.into_iter().map(|r| vec![r]).collect();
        let mut out = Vec::with_capacity(faft_size(m, 0));
        self.fafft(m, &mut buf, 0, FieldElement::ZERO, &mut out);
        out
    }

    fn finish(self, n: usize, outputs: Vec<Ref>) -> StraightLineProgram {
        let mut live = vec![false; self.gates.len()];
        let mark = |r: Ref, live: &mut Vec<bool>| {
            if let Ref::Gate(t) = r {
                live[t as usize] = true;
            }
        };
        for &o in &outputs {
            mark(o, &mut live);
        }
        for t in (0..self.gates.len()).rev() {
            if live[t] {
                mark(self.gates[t].lhs, &mut live);
                mark(self.gates[t].rhs, &mut live);
            }
        }
        let mut renumber = vec![0u32; self.gates.len()];
        let mut gates = Vec::new();
        let map = |r: Ref, renumber: &[u32]| match r {
            Ref::Gate(t) => Ref::Gate(renumber[t as usize]),
            other => other,
        };
        for (t, g) in self.gates.iter().enumerate() {
            if live[t] {
                renumber[t] = gates.len() as u32;
                gates.push(Gate { op: g.op, lhs: map(g.lhs, &renumber), rhs: map(g.rhs, &renumber) });
            }
        }
        let outputs = outputs.into_iter().map(|o| map(o, &renumber)).collect();
        StraightLineProgram { n, gates, outputs }
    }
}

struct SymLanes<'a, 'f> {
    refs: Vec<Ref>,
    builder: &'a mut Builder<'f>,
}

impl XorLanes for SymLanes<'_, '_> {
    fn xor_range(&mut self, dst: usize, src: usize, len: usize) {
        for i in 0..len {
            self.refs[dst + i] = self.builder.xor(self.refs[dst + i], self.refs[src + i]);
        }
    }
}

/// Multiplier circuit for two `n`-bit operands.
pub fn gen_mul_circuit(n: usize, cse: bool) -> Result<StraightLineProgram> {
    if n == 0 || !n.is_power_of_two() || n > MAX_CIRCUIT_N {
        return Err(Error::UnsupportedSize(n));
    }
    let field = default_field();
    let m = (2 * n).trailing_zeros();
    let mut b = Builder::new(field, cse);
    let operand = |f: fn(u32) -> Ref| (0..2 * n).map(|i| if i < n { f(i as u32) } else { Ref::Zero }).collect();
    let fa = b.forward(m, operand(Ref::A));
    let fb = b.forward(m, operand(Ref::B));
    let products: Vec<Sym> = fa.iter().zip(&fb).map(|(x, y)| b.mul(x, y)).collect();
    let coeffs: Vec<Ref> = b.ifafft(m, &products, 0, FieldElement::ZERO).into_iter().map(|s| s[0]).collect();
    let mut outputs = b.novel(coeffs, false);
    outputs.truncate(2 * n - 1);
    Ok(b.finish(n, outputs))
}
