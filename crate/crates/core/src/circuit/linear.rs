//! GF(2) matrices and XOR programs computing them.

use crate::field::{Field, FieldElement};

/// Bit matrix with at most 128 columns; bit `c` of `rows[r]` is entry (r, c).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearBlock {
    pub cols: usize,
    pub rows: Vec<u128>,
}

impl LinearBlock {
    pub fn new(cols: usize, rows: Vec<u128>) -> LinearBlock {
        assert!(cols <= 128);
        debug_assert!(rows.iter().all(|r| cols == 128 || r >> cols == 0));
        LinearBlock { cols, rows }
    }

    pub fn identity(n: usize) -> LinearBlock {
        LinearBlock::new(n, (0..n).map(|i| 1u128 << i).collect())
    }

    /// Multiplication by `c`, from `GF(2^in_width)` coordinates to the low `out_width` coordinates.
    pub fn const_mul(field: &Field, c: FieldElement, in_width: usize, out_width: usize) -> LinearBlock {
        let mut rows = vec![0u128; out_width];
        for s in 0..in_width {
            let col = field.mul(c, FieldElement::basis(s as u32)).coords();
            assert!(out_width >= 64 || col >> out_width == 0, "product leaves the target subfield");
            for (r, row) in rows.iter_mut().enumerate() {
                *row |= (((col >> r) & 1) as u128) << s;
            }
        }
        LinearBlock::new(in_width, rows)
    }

    pub fn apply(&self, x: u128) -> u128 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, row)| acc | (((row & x).count_ones() & 1) as u128) << r)
    }

    /// XOR count of evaluating every row on its own.
    pub fn naive_xor_count(&self) -> usize {
        self.rows.iter().map(|r| (r.count_ones() as usize).saturating_sub(1)).sum()
    }
}

/// Straight-line XOR program; variables `0..inputs` are the inputs and
/// operation `k` defines variable `inputs + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub inputs: usize,
    pub ops: Vec<(usize, usize)>,
    /// `None` for an identically zero output.
    pub outputs: Vec<Option<usize>>,
}

impl LinearProgram {
    pub fn xor_count(&self) -> usize {
        self.ops.len()
    }

    pub fn eval(&self, x: u128) -> u128 {
        let mut vars: Vec<bool> = (0..self.inputs).map(|i| (x >> i) & 1 == 1).collect();
        for &(p, q) in &self.ops {
            vars.push(vars[p] ^ vars[q]);
        }
        self.outputs
            .iter()
            .enumerate()
            .fold(0, |acc, (r, o)| acc | ((o.is_some_and(|v| vars[v]) as u128) << r))
    }

    fn finish(inputs: usize, mut ops: Vec<(usize, usize)>, rows: Vec<Vec<usize>>) -> LinearProgram {
        let outputs = rows
            .into_iter()
            .map(|row| {
                let mut it = row.into_iter();
                let first = it.next()?;
                Some(it.fold(first, |acc, v| {
                    ops.push((acc, v));
                    inputs + ops.len() - 1
                }))
            })
            .collect();
        LinearProgram { inputs, ops, outputs }
    }
}

fn row_vars(block: &LinearBlock) -> Vec<Vec<usize>> {
    block
        .rows
        .iter()
        .map(|r| (0..block.cols).filter(|c| (r >> c) & 1 == 1).collect())
        .collect()
}

/// Each row as its own XOR chain.
pub fn naive_program(block: &LinearBlock) -> LinearProgram {
    LinearProgram::finish(block.cols, Vec::new(), row_vars(block))
}

/// Greedy pair factoring: repeatedly name the column pair shared by the most
/// rows until no pair occurs twice.
pub fn cse_reduce(block: &LinearBlock) -> LinearProgram {
    let mut rows = row_vars(block);
    let mut ops = Vec::new();
    let mut nvars = block.cols;
    let mut counts: Vec<u32> = Vec::new();
    loop {
        counts.clear();
        counts.resize(nvars * nvars, 0);
        for row in &rows {
            for (i, &p) in row.iter().enumerate() {
                for &q in &row[i + 1..] {
                    counts[p * nvars + q] += 1;
                }
            }
        }
        let (best, &hits) = match counts.iter().enumerate().max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i))) {
            Some(b) => b,
            None => break,
        };
        if hits < 2 {
            break;
        }
        let (p, q) = (best / nvars, best % nvars);
        ops.push((p, q));
        for row in rows.iter_mut() {
            if row.contains(&p) && row.contains(&q) {
                row.retain(|&v| v != p && v != q);
                row.push(nvars);
            }
        }
        nvars += 1;
    }
    LinearProgram::finish(block.cols, ops, rows)
}
