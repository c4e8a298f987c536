//! Exhaustive exact-cover search for tilings of small tori.
//!
//! The search always extends the partial tiling at the lowest uncovered
//! cell and branches on every placement whose tile contains it, so each
//! tiling is produced exactly once. With symmetry breaking the codeword `0`
//! is placed first; every tiling is a translate of one containing `0`.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{check_period, shape_size, upsilon_offsets, window_cells, Point};
use crate::tiling::{nonexistence_certificate, PeriodicTiling};

/// Largest window the backtracker accepts.
pub const MAX_SEARCH_CELLS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub p: u64,
    pub max_solutions: usize,
    pub symmetry_breaking: bool,
    pub node_budget: u64,
}

impl SearchConfig {
    pub fn new(n: usize, p: u64) -> Self {
        SearchConfig {
            n,
            p,
            max_solutions: usize::MAX,
            symmetry_breaking: true,
            node_budget: 50_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    /// The whole tree was explored.
    Complete,
    /// Stopped after `max_solutions` solutions.
    SolutionLimit,
    /// The node budget ran out; absence of further solutions is unknown.
    BudgetExhausted,
    /// `|Υ_n|` does not divide `p^n`, so no tiling exists.
    Infeasible,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub backtracks: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// Solutions in lexicographic order of their codeword lists.
    pub solutions: Vec<PeriodicTiling>,
    pub stats: SearchStats,
    /// Explanation when the precheck fails.
    pub certificate: Option<String>,
}

/// Whether `2^n (n+1)` divides `p^n`.
pub fn divisibility_precheck(n: usize, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    let cert = nonexistence_certificate(n as u64);
    let shape = cert.shape_size;
    let window = num_bigint::BigUint::from(p).pow(n as u32);
    window % shape == num_bigint::BigUint::from(0u32)
}

struct Search<'a> {
    n: usize,
    p: u64,
    offsets: &'a [Point],
    place: Vec<u64>,
    covered: Vec<bool>,
    chosen: Vec<Point>,
    solutions: Vec<Vec<Point>>,
    stats: SearchStats,
    max_solutions: usize,
    node_budget: u64,
    stopped: Option<SearchStatus>,
}

impl Search<'_> {
    fn point_of(&self, mut index: u64) -> Point {
        let mut v = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            v.push((index % self.p) as i64);
            index /= self.p;
        }
        Point(v)
    }

    /// Cells of the tile at `x`, or `None` if one of them is covered.
    fn free_tile(&self, x: &Point) -> Option<Vec<u64>> {
        let p = self.p as i64;
        let mut cells = Vec::with_capacity(self.offsets.len());
        for d in self.offsets {
            let idx: u64 = x
                .iter()
                .zip(d.iter())
                .zip(&self.place)
                .map(|((xi, di), w)| (xi - di).rem_euclid(p) as u64 * w)
                .sum();
            if self.covered[idx as usize] {
                return None;
            }
            cells.push(idx);
        }
        Some(cells)
    }

    fn set(&mut self, cells: &[u64], value: bool) {
        for &c in cells {
            self.covered[c as usize] = value;
        }
    }

    fn run(&mut self, mut next: usize) {
        while next < self.covered.len() && self.covered[next] {
            next += 1;
        }
        if next == self.covered.len() {
            let mut sol = self.chosen.clone();
            sol.sort_unstable();
            self.solutions.push(sol);
            if self.solutions.len() >= self.max_solutions {
                self.stopped = Some(SearchStatus::SolutionLimit);
            }
            return;
        }
        let cell = self.point_of(next as u64);
        let mut placed_any = false;
        for d in self.offsets {
            if self.stopped.is_some() {
                return;
            }
            let x = cell.add(d).rem_euclid(self.p);
            let Some(cells) = self.free_tile(&x) else {
                continue;
            };
            if self.stats.nodes >= self.node_budget {
                self.stopped = Some(SearchStatus::BudgetExhausted);
                return;
            }
            self.stats.nodes += 1;
            placed_any = true;
            self.set(&cells, true);
            self.chosen.push(x);
            self.run(next + 1);
            self.chosen.pop();
            self.set(&cells, false);
        }
        if !placed_any {
            self.stats.backtracks += 1;
        }
    }
}

pub fn search_tilings(cfg: &SearchConfig) -> Result<SearchOutcome> {
    check_period(cfg.p)?;
    if cfg.n == 0 {
        return Err(Error::InvalidDimension("search needs n >= 1".into()));
    }
    let started = Instant::now();
    if !divisibility_precheck(cfg.n, cfg.p) {
        return Ok(SearchOutcome {
            status: SearchStatus::Infeasible,
            solutions: Vec::new(),
            stats: SearchStats::default(),
            certificate: Some(format!(
                "{} ∤ {}^{}",
                shape_size(cfg.n).map_or_else(|| "2^n(n+1)".to_string(), |s| s.to_string()),
                cfg.p,
                cfg.n
            )),
        });
    }
    let cells = window_cells(cfg.n, cfg.p)
        .filter(|&c| c <= MAX_SEARCH_CELLS)
        .ok_or_else(|| {
            Error::Guard(format!(
                "{}^{} cells exceed the search limit of {MAX_SEARCH_CELLS}; \
                 use a construction and verify instead",
                cfg.p, cfg.n
            ))
        })?;
    let shape = upsilon_offsets(cfg.n)?;
    let mut search = Search {
        n: cfg.n,
        p: cfg.p,
        offsets: shape.offsets(),
        place: (0..cfg.n).map(|i| cfg.p.pow(i as u32)).collect(),
        covered: vec![false; cells as usize],
        chosen: Vec::new(),
        solutions: Vec::new(),
        stats: SearchStats::default(),
        max_solutions: cfg.max_solutions.max(1),
        node_budget: cfg.node_budget,
        stopped: None,
    };
    if cfg.symmetry_breaking {
        let zero = Point::zero(cfg.n);
        let first = search.free_tile(&zero).expect("empty board");
        search.stats.nodes += 1;
        search.set(&first, true);
        search.chosen.push(zero);
    }
    search.run(0);
    let mut solutions: Vec<Vec<Point>> = search.solutions;
    solutions.sort_unstable();
    let solutions = solutions
        .into_iter()
        .map(|s| PeriodicTiling::new(cfg.n, cfg.p, s))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = search.stats;
    stats.elapsed = started.elapsed();
    Ok(SearchOutcome {
        status: search.stopped.unwrap_or(SearchStatus::Complete),
        solutions,
        stats,
        certificate: None,
    })
}
