//! Periodic tilings of `Z^n` stored as their codewords in the window
//! `{0, ..., p-1}^n`, together with the exact-cover verifier, structural
//! audits and nonexistence certificates.

mod audit;
mod certificate;
mod verify;

pub use audit::{structural_audit, spencer_bound, AuditCheck, AuditReport};
pub use certificate::{
    admissible_dimension, nonexistence_certificate, Admissibility, Conclusion,
    NonexistenceCertificate,
};
pub use verify::{
    verify, verify_with, VerificationReport, VerifyOptions, Witness, DEFAULT_CELL_BUDGET,
};

use crate::error::{Error, Result};
use crate::geometry::{check_period, window_cells, Point};

/// A tiling `T = codewords + pZ^n`.
///
/// Codewords are kept sorted. Duplicates are representable so that a
/// corrupt input can be reported by the verifier as a double cover rather
/// than rejected while loading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTiling {
    n: usize,
    p: u64,
    codewords: Vec<Point>,
}

impl PeriodicTiling {
    pub fn new(n: usize, p: u64, mut codewords: Vec<Point>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("a tiling needs n >= 1".into()));
        }
        check_period(p)?;
        if p > i64::MAX as u64 {
            return Err(Error::Guard(format!("period {p} out of range")));
        }
        for x in &codewords {
            if x.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.dim(),
                });
            }
            if x.iter().any(|&c| c < 0 || c as u64 >= p) {
                return Err(Error::InvalidInput(format!(
                    "codeword {x} has an entry outside [0, {p})"
                )));
            }
        }
        codewords.sort_unstable();
        Ok(PeriodicTiling { n, p, codewords })
    }

    /// Reduces arbitrary integer points modulo `p` first.
    pub fn from_points(n: usize, p: u64, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        check_period(p)?;
        let reduced = points.into_iter().map(|x| x.rem_euclid(p)).collect();
        PeriodicTiling::new(n, p, reduced)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> u64 {
        self.p
    }

    /// Sorted window codewords.
    pub fn codewords(&self) -> &[Point] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn has_duplicates(&self) -> bool {
        self.codewords.windows(2).any(|w| w[0] == w[1])
    }

    /// `p^n`, or a budget error if it does not fit in a `u64`.
    pub fn window_cells(&self) -> Result<u64> {
        window_cells(self.n, self.p).ok_or_else(|| Error::CellBudget {
            cells: format!("{}^{}", self.p, self.n),
            budget: u64::MAX,
        })
    }

    /// Whether the class of `x` modulo `p` is a codeword.
    pub fn contains(&self, x: &[i64]) -> bool {
        if x.len() != self.n {
            return false;
        }
        let p = self.p as i64;
        let reduced: Vec<i64> = x.iter().map(|c| c.rem_euclid(p)).collect();
        self.codewords
            .binary_search_by(|w| w.as_slice().cmp(&reduced))
            .is_ok()
    }

    /// Number of codewords equal to the class of `x` (more than one only
    /// for corrupt inputs).
    pub fn multiplicity(&self, x: &[i64]) -> usize {
        let p = self.p as i64;
        let reduced: Vec<i64> = x.iter().map(|c| c.rem_euclid(p)).collect();
        let lo = self.codewords.partition_point(|w| w.as_slice() < reduced.as_slice());
        let hi = self.codewords.partition_point(|w| w.as_slice() <= reduced.as_slice());
        hi - lo
    }

    /// Mixed-radix little-endian cell index (coordinate 1 varies fastest).
    pub fn cell_index(&self, x: &[i64]) -> u64 {
        let p = self.p as i64;
        x.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c.rem_euclid(p) as u64)
    }

    pub fn cell_point(&self, mut index: u64) -> Point {
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            out.push((index % self.p) as i64);
            index /= self.p;
        }
        Point(out)
    }

    fn map_codewords(&self, f: impl Fn(&Point) -> Point) -> PeriodicTiling {
        let mut codewords: Vec<Point> = self.codewords.iter().map(f).collect();
        codewords.sort_unstable();
        PeriodicTiling {
            n: self.n,
            p: self.p,
            codewords,
        }
    }

    /// Translates by `-x0` so that `0` becomes a codeword.
    pub fn normalize(&self, x0: &[i64]) -> Result<PeriodicTiling> {
        if !self.contains(x0) {
            return Err(Error::InvalidInput(format!(
                "{} is not a codeword",
                Point(x0.to_vec())
            )));
        }
        let shift = Point(x0.to_vec());
        Ok(self.map_codewords(|x| x.sub(&shift).rem_euclid(self.p)))
    }

    /// Moves coordinate `i` of every codeword to position `sigma[i]`.
    pub fn permute(&self, sigma: &[usize]) -> Result<PeriodicTiling> {
        let mut seen = vec![false; self.n];
        if sigma.len() != self.n
            || !sigma
                .iter()
                .all(|&s| s < self.n && !std::mem::replace(&mut seen[s], true))
        {
            return Err(Error::InvalidInput(format!(
                "{sigma:?} is not a permutation of 0..{}",
                self.n
            )));
        }
        Ok(self.map_codewords(|x| {
            let mut y = vec![0i64; self.n];
            for (i, &s) in sigma.iter().enumerate() {
                y[s] = x[i];
            }
            Point(y)
        }))
    }

    /// Negates (mod `p`) every coordinate `i` with `signs[i] = -1`.
    pub fn reflect(&self, signs: &[i64]) -> Result<PeriodicTiling> {
        if signs.len() != self.n || signs.iter().any(|&a| a != 1 && a != -1) {
            return Err(Error::InvalidInput(
                "reflection signs must be n entries in {-1, 1}".into(),
            ));
        }
        Ok(self.map_codewords(|x| {
            Point(x.iter().zip(signs).map(|(c, a)| c * a).collect()).rem_euclid(self.p)
        }))
    }

    /// Invariance under `x -> x + p2 e_i (mod p)` for every axis `i`.
    pub fn is_periodic_with(&self, p2: u64) -> Result<bool> {
        if p2 == 0 || self.p % p2 != 0 {
            return Err(Error::InvalidInput(format!(
                "{p2} does not divide the period {}",
                self.p
            )));
        }
        let step = p2 as i64;
        Ok(self.codewords.iter().all(|x| {
            (0..self.n).all(|i| {
                let mut y = x.clone();
                y[i] += step;
                self.contains(&y)
            })
        }))
    }

    /// Smallest sorted codeword list over all translations to a codeword,
    /// coordinate permutations and reflections. Intended for small tilings
    /// (cost grows as `|T|^2 n! 2^n`).
    pub fn canonical_form(&self) -> Result<Vec<Point>> {
        if self.n > 6 || self.codewords.len() > 4096 {
            return Err(Error::Guard(
                "canonical form is limited to n <= 6 and at most 4096 codewords".into(),
            ));
        }
        let mut best: Option<Vec<Point>> = None;
        let perms = permutations(self.n);
        for mask in 0..(1u32 << self.n) {
            let signs: Vec<i64> = (0..self.n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let reflected = self.reflect(&signs)?;
            for sigma in &perms {
                let permuted = reflected.permute(sigma)?;
                for x in permuted.codewords() {
                    let cand = permuted.normalize(x)?.codewords;
                    if best.as_ref().map_or(true, |b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
        }
        Ok(best.unwrap_or_default())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}
