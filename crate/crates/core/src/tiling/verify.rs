use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::PeriodicTiling;
use crate::error::{Error, Result};
use crate::geometry::{torus_cross_distance, upsilon_offsets, Point};

/// Default cap on `p^n` accepted by [`verify`].
pub const DEFAULT_CELL_BUDGET: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest window `p^n` that will be marked.
    pub cell_budget: u64,
    /// Largest number of cells held in one counter block. The window is
    /// split along its trailing coordinates until a block fits.
    pub chunk_cells: u64,
    /// Largest number of codeword pairs scanned for the minimum cross
    /// distance; above it the distance is omitted.
    pub pair_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cell_budget: DEFAULT_CELL_BUDGET,
            chunk_cells: 1 << 22,
            pair_budget: 50_000_000,
        }
    }
}

/// First cell (lowest index) that is not covered exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cell: Point,
    pub cell_index: u64,
    /// Window codewords whose tiles contain the cell (with multiplicity).
    pub covering: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub p: u64,
    pub codewords: usize,
    pub shape_size: u64,
    pub is_tiling: bool,
    pub cells_total: u64,
    pub multiply_covered: u64,
    pub uncovered: u64,
    pub first_witness: Option<Witness>,
    pub min_cross_distance: Option<u64>,
}

pub fn verify(t: &PeriodicTiling) -> Result<VerificationReport> {
    verify_with(t, &VerifyOptions::default())
}

#[derive(Default, Clone, Copy)]
struct ChunkSummary {
    multiply: u64,
    uncovered: u64,
    first_bad: Option<u64>,
}

/// Exact-once covering check of the window.
///
/// Every codeword `X` marks the cells `X - D (mod p)` for each offset `D`
/// in one-byte saturating counters; the tiling is valid iff every count is
/// exactly one. Blocks are independent, so they are processed in parallel
/// and merged in index order, giving the same report for any thread count.
pub fn verify_with(t: &PeriodicTiling, opts: &VerifyOptions) -> Result<VerificationReport> {
    let n = t.dim();
    let p = t.period();
    let total = t.window_cells()?;
    if total > opts.cell_budget {
        return Err(Error::CellBudget {
            cells: total.to_string(),
            budget: opts.cell_budget,
        });
    }
    let shape = upsilon_offsets(n)?;

    // split into a head (marked in one block) and a tail (one block per value)
    let mut head = n;
    let mut head_cells = total;
    while head > 0 && head_cells > opts.chunk_cells.max(1) {
        head -= 1;
        head_cells /= p;
    }
    let tail = n - head;
    let blocks = total / head_cells;

    let place: Vec<u64> = (0..n).map(|i| p.pow(i as u32)).collect();
    let tail_index = |x: &[i64]| -> u64 {
        x[head..]
            .iter()
            .zip(&place)
            .map(|(&c, w)| c.rem_euclid(p as i64) as u64 * w)
            .sum()
    };

    let mut by_tail: Vec<Vec<&Point>> = vec![Vec::new(); blocks as usize];
    for x in t.codewords() {
        by_tail[tail_index(x) as usize].push(x);
    }

    // offsets grouped by their tail part; heads stored as `d + 1` in 0..4
    let mut groups: HashMap<Vec<i64>, Vec<u8>> = HashMap::new();
    for d in shape.offsets() {
        groups
            .entry(d[head..].to_vec())
            .or_default()
            .extend(d[..head].iter().map(|&v| (v + 1) as u8));
    }
    let mut groups: Vec<(Vec<i64>, Vec<u8>)> = groups.into_iter().collect();
    groups.sort_unstable();

    let summaries: Vec<ChunkSummary> = (0..blocks)
        .into_par_iter()
        .map_init(
            || vec![0u8; head_cells as usize],
            |counts, block| {
                counts.iter_mut().for_each(|c| *c = 0);
                let block_point = t.cell_point(block);
                let mut contrib = vec![[0u64; 4]; head];
                for (d_tail, heads) in &groups {
                    let x_tail: Vec<i64> = block_point[..tail]
                        .iter()
                        .zip(d_tail)
                        .map(|(b, d)| b + d)
                        .collect();
                    let mut padded = vec![0i64; head];
                    padded.extend(x_tail);
                    for x in &by_tail[tail_index(&padded) as usize] {
                        for (i, slot) in contrib.iter_mut().enumerate() {
                            for (k, v) in slot.iter_mut().enumerate() {
                                let c = (x[i] - (k as i64 - 1)).rem_euclid(p as i64) as u64;
                                *v = c * place[i];
                            }
                        }
                        for d in heads.chunks_exact(head.max(1)) {
                            let cell: u64 = if head == 0 {
                                0
                            } else {
                                d.iter()
                                    .zip(&contrib)
                                    .map(|(&k, slot)| slot[k as usize])
                                    .sum()
                            };
                            let c = &mut counts[cell as usize];
                            *c = c.saturating_add(1);
                        }
                        if head == 0 {
                            // each offset group holds exactly one offset here
                            debug_assert!(heads.is_empty());
                            let c = &mut counts[0];
                            *c = c.saturating_add(1);
                        }
                    }
                }
                let mut s = ChunkSummary::default();
                for (i, &c) in counts.iter().enumerate() {
                    match c {
                        1 => {}
                        0 => s.uncovered += 1,
                        _ => s.multiply += 1,
                    }
                    if c != 1 && s.first_bad.is_none() {
                        s.first_bad = Some(block * head_cells + i as u64);
                    }
                }
                s
            },
        )
        .collect();

    let mut multiply_covered = 0;
    let mut uncovered = 0;
    let mut first_bad = None;
    for s in &summaries {
        multiply_covered += s.multiply;
        uncovered += s.uncovered;
        first_bad = first_bad.or(s.first_bad);
    }

    let first_witness = first_bad.map(|index| {
        let cell = t.cell_point(index);
        let mut covering = Vec::new();
        for d in shape.offsets() {
            let x = cell.add(d).rem_euclid(p);
            for _ in 0..t.multiplicity(&x) {
                covering.push(x.clone());
            }
        }
        covering.sort_unstable();
        Witness {
            cell,
            cell_index: index,
            covering,
        }
    });

    let k = t.len() as u64;
    let min_cross_distance = if k >= 2 && k * (k - 1) / 2 <= opts.pair_budget {
        min_torus_distance(t)
    } else {
        None
    };

    Ok(VerificationReport {
        n,
        p,
        codewords: t.len(),
        shape_size: shape.len() as u64,
        is_tiling: multiply_covered == 0 && uncovered == 0,
        cells_total: total,
        multiply_covered,
        uncovered,
        first_witness,
        min_cross_distance,
    })
}

fn min_torus_distance(t: &PeriodicTiling) -> Option<u64> {
    let words = t.codewords();
    let p = t.period();
    (0..words.len())
        .into_par_iter()
        .filter_map(|i| {
            words[i + 1..]
                .iter()
                .map(|y| torus_cross_distance(&words[i], y, p).expect("same dimension"))
                .min()
        })
        .min()
}
