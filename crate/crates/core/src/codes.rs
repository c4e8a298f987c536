//! Block codes over `Z_2` and `Z_3`.
//!
//! Codes are kept as explicit, lexicographically sorted codeword lists.
//! Desk-scale codes never exceed [`MAX_CODEWORDS`] words, which keeps both
//! the list and the exhaustive checks over `Z_q^n` cheap.

use std::collections::HashSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Upper bound on generated code sizes (`3^11`).
pub const MAX_CODEWORDS: usize = 177_147;

/// Longest binary Hamming code accepted by the length guard.
pub const MAX_BINARY_LENGTH: usize = 31;

/// Longest ternary Hamming code accepted by the length guard.
pub const MAX_TERNARY_LENGTH: usize = 13;

/// Largest word space `q^n` that is swept cell by cell.
const MAX_SWEEP_WORDS: u64 = 1 << 26;

pub type Word = Vec<u8>;

#[derive(Clone, Debug)]
pub struct BlockCode {
    q: u8,
    length: usize,
    words: Vec<Word>,
    linear: Option<bool>,
    /// Result of the first `is_perfect` call.
    perfect: OnceLock<PerfectCheck>,
}

/// Codes are equal when they have the same alphabet, length and words.
impl PartialEq for BlockCode {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.length == other.length && self.words == other.words
    }
}

impl Eq for BlockCode {}

/// Outcome of [`BlockCode::is_perfect`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectCheck {
    pub perfect: bool,
    pub reason: String,
}

impl BlockCode {
    /// Builds a code from arbitrary words; they are sorted, and duplicates or
    /// out-of-range symbols are rejected.
    pub fn new(q: u8, length: usize, mut words: Vec<Word>) -> Result<Self> {
        if !(2..=3).contains(&q) {
            return Err(Error::InvalidInput(format!("alphabet size {q} (expected 2 or 3)")));
        }
        if length == 0 {
            return Err(Error::InvalidInput("code length must be positive".into()));
        }
        for w in &words {
            if w.len() != length {
                return Err(Error::DimensionMismatch {
                    expected: length,
                    found: w.len(),
                });
            }
            if let Some(s) = w.iter().find(|&&s| s >= q) {
                return Err(Error::InvalidInput(format!("symbol {s} outside Z_{q}")));
            }
        }
        words.sort_unstable();
        if words.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate codeword".into()));
        }
        Ok(BlockCode {
            q,
            length,
            words,
            linear: None,
            perfect: OnceLock::new(),
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Codewords in lexicographic order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// `Some(true)` for codes generated as null spaces; `None` when unknown.
    pub fn linear_flag(&self) -> Option<bool> {
        self.linear
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        self.words
            .binary_search_by(|w| w.as_slice().cmp(word))
            .is_ok()
    }

    /// Size of a radius-one Hamming sphere, `1 + n(q-1)`.
    pub fn sphere_size(&self) -> u64 {
        1 + self.length as u64 * (self.q as u64 - 1)
    }

    /// `q^n` if it fits in a `u64`.
    pub fn space_size(&self) -> Option<u64> {
        (self.q as u64).checked_pow(self.length as u32)
    }

    pub fn min_hamming_distance(&self) -> Result<u64> {
        if self.words.len() < 2 {
            return Err(Error::InvalidInput(
                "minimum distance needs at least two codewords".into(),
            ));
        }
        if self.linear == Some(true) {
            return Ok(self
                .words
                .iter()
                .map(|w| weight(w))
                .filter(|&w| w > 0)
                .min()
                .expect("a linear code with two words has a nonzero word"));
        }
        Ok(self.pairwise_min_distance())
    }

    fn pairwise_min_distance(&self) -> u64 {
        let words = &self.words;
        (0..words.len())
            .into_par_iter()
            .map(|i| {
                words[i + 1..]
                    .iter()
                    .map(|w| word_distance(&words[i], w))
                    .min()
                    .unwrap_or(u64::MAX)
            })
            .min()
            .unwrap_or(u64::MAX)
    }

    /// Perfect iff `|C| (1 + n(q-1)) = q^n` and the radius-one spheres are
    /// pairwise disjoint (equivalently, minimum distance at least 3).
    pub fn is_perfect(&self) -> PerfectCheck {
        self.perfect.get_or_init(|| self.check_perfect()).clone()
    }

    fn check_perfect(&self) -> PerfectCheck {
        let sphere = self.sphere_size() as u128;
        let space = (self.q as u128).checked_pow(self.length as u32);
        let volume = self.words.len() as u128 * sphere;
        match space {
            Some(space) if space == volume => {}
            Some(space) => {
                return PerfectCheck {
                    perfect: false,
                    reason: format!(
                        "size check failed: {} * {} = {} != {}^{} = {}",
                        self.words.len(),
                        sphere,
                        volume,
                        self.q,
                        self.length,
                        space
                    ),
                }
            }
            None => {
                return PerfectCheck {
                    perfect: false,
                    reason: format!("q^n = {}^{} is out of range", self.q, self.length),
                }
            }
        }
        if self.words.len() >= 2 && !self.spheres_disjoint() {
            return PerfectCheck {
                perfect: false,
                reason: "distance check failed: two codewords are within Hamming distance 2"
                    .into(),
            };
        }
        PerfectCheck {
            perfect: true,
            reason: format!(
                "{} * {} = {}^{} and minimum distance >= 3",
                self.words.len(),
                sphere,
                self.q,
                self.length
            ),
        }
    }

    fn spheres_disjoint(&self) -> bool {
        match self.space_size() {
            Some(space) if space <= MAX_SWEEP_WORDS => {
                let mut seen = vec![false; space as usize];
                for w in &self.words {
                    let base = self.index_of(w);
                    if std::mem::replace(&mut seen[base as usize], true) {
                        return false;
                    }
                    let mut place = 1u64;
                    for &s in w.iter().rev() {
                        for t in 0..self.q {
                            if t == s {
                                continue;
                            }
                            let idx = base - s as u64 * place + t as u64 * place;
                            if std::mem::replace(&mut seen[idx as usize], true) {
                                return false;
                            }
                        }
                        place *= self.q as u64;
                    }
                }
                true
            }
            _ => self.pairwise_min_distance() >= 3,
        }
    }

    /// Big-endian base-`q` index of a word.
    fn index_of(&self, w: &[u8]) -> u64 {
        w.iter().fold(0u64, |acc, &s| acc * self.q as u64 + s as u64)
    }

    /// Drops the last coordinate of every codeword.
    pub fn puncture(&self) -> Result<BlockCode> {
        if self.length < 2 {
            return Err(Error::InvalidInput("cannot puncture a length-1 code".into()));
        }
        let mut words: Vec<Word> = self
            .words
            .iter()
            .map(|w| w[..self.length - 1].to_vec())
            .collect();
        words.sort_unstable();
        words.dedup();
        Ok(BlockCode {
            q: self.q,
            length: self.length - 1,
            words,
            linear: self.linear,
            perfect: OnceLock::new(),
        })
    }

    /// Splits a binary code into its even-weight and odd-weight codewords.
    pub fn weight_split(&self) -> Result<(BlockCode, BlockCode)> {
        if self.q != 2 {
            return Err(Error::InvalidInput("weight split needs a binary code".into()));
        }
        let (even, odd): (Vec<Word>, Vec<Word>) =
            self.words.iter().cloned().partition(|w| weight(w) % 2 == 0);
        let part = |words| BlockCode {
            q: 2,
            length: self.length,
            words,
            linear: None,
            perfect: OnceLock::new(),
        };
        Ok((part(even), part(odd)))
    }

    /// The codeword within Hamming distance 1 of `word`, if any.
    ///
    /// The word itself is tried first, then its neighbours by increasing
    /// position and symbol; for a perfect code the answer is unique.
    pub fn decode_within_1(&self, word: &[u8]) -> Result<Option<Word>> {
        if word.len() != self.length {
            return Err(Error::DimensionMismatch {
                expected: self.length,
                found: word.len(),
            });
        }
        if word.iter().any(|&s| s >= self.q) {
            return Err(Error::InvalidInput(format!("word is not over Z_{}", self.q)));
        }
        if self.contains(word) {
            return Ok(Some(word.to_vec()));
        }
        let mut probe = word.to_vec();
        for i in 0..self.length {
            let orig = probe[i];
            for s in 0..self.q {
                if s == orig {
                    continue;
                }
                probe[i] = s;
                if self.contains(&probe) {
                    return Ok(Some(probe));
                }
            }
            probe[i] = orig;
        }
        Ok(None)
    }

    /// Closure under addition mod `q` (with `0` present).
    pub fn is_linear(&self) -> bool {
        if let Some(flag) = self.linear {
            return flag;
        }
        let zero = vec![0u8; self.length];
        if !self.contains(&zero) {
            return false;
        }
        let mut span: HashSet<Word> = HashSet::from([zero]);
        for w in &self.words {
            if span.contains(w) {
                continue;
            }
            let mut next = span.clone();
            for s in &span {
                let mut cur = s.clone();
                for _ in 1..self.q {
                    cur = add_mod(&cur, w, self.q);
                    next.insert(cur.clone());
                }
            }
            if next.len() > self.words.len() {
                return false;
            }
            span = next;
        }
        span.len() == self.words.len()
    }
}

pub fn weight(w: &[u8]) -> u64 {
    w.iter().filter(|&&s| s != 0).count() as u64
}

pub fn word_distance(a: &[u8], b: &[u8]) -> u64 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}

fn add_mod(a: &[u8], b: &[u8], q: u8) -> Word {
    a.iter().zip(b).map(|(x, y)| (x + y) % q).collect()
}

/// Binary Hamming code of length `2^t - 1`.
pub fn binary_hamming(t: u32) -> Result<BlockCode> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be at least 1".into()));
    }
    let length = 2usize
        .checked_pow(t)
        .map(|v| v - 1)
        .filter(|&n| n <= MAX_BINARY_LENGTH)
        .ok_or_else(|| Error::Guard(format!("binary Hamming length 2^{t}-1 exceeds 31")))?;
    hamming(2, t, length)
}

/// Ternary Hamming code of length `(3^t - 1)/2`.
pub fn ternary_hamming(t: u32) -> Result<BlockCode> {
    if t == 0 {
        return Err(Error::InvalidInput("t must be at least 1".into()));
    }
    let length = 3usize
        .checked_pow(t)
        .map(|v| (v - 1) / 2)
        .filter(|&n| n <= MAX_TERNARY_LENGTH)
        .ok_or_else(|| Error::Guard(format!("ternary Hamming length (3^{t}-1)/2 exceeds 13")))?;
    hamming(3, t, length)
}

/// Parity-check columns: nonzero `t`-vectors in ascending numeric order
/// (first entry most significant), keeping for `q = 3` only those whose
/// first nonzero entry is 1.
pub fn parity_check_columns(q: u8, t: u32) -> Vec<Word> {
    let total = (q as u64).pow(t);
    (1..total)
        .map(|v| {
            let mut col = vec![0u8; t as usize];
            let mut rest = v;
            for slot in col.iter_mut().rev() {
                *slot = (rest % q as u64) as u8;
                rest /= q as u64;
            }
            col
        })
        .filter(|col| col.iter().find(|&&s| s != 0) == Some(&1))
        .collect()
}

fn hamming(q: u8, t: u32, length: usize) -> Result<BlockCode> {
    let dim = length - t as usize;
    let count = (q as u64).checked_pow(dim as u32).unwrap_or(u64::MAX);
    if count > MAX_CODEWORDS as u64 {
        return Err(Error::Guard(format!(
            "{count} codewords exceed the limit of {MAX_CODEWORDS}"
        )));
    }
    let cols = parity_check_columns(q, t);
    debug_assert_eq!(cols.len(), length);
    let rows: Vec<Word> = (0..t as usize)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let basis = null_space(rows, length, q);
    debug_assert_eq!(basis.len(), dim);

    let mut words = Vec::with_capacity(count as usize);
    let mut coeffs = vec![0u8; basis.len()];
    loop {
        let mut w = vec![0u8; length];
        for (c, b) in coeffs.iter().zip(&basis) {
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi = (*wi + c * bi) % q;
            }
        }
        words.push(w);
        // odometer over coefficient vectors
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                words.sort_unstable();
                return Ok(BlockCode {
                    q,
                    length,
                    words,
                    linear: Some(true),
                    perfect: OnceLock::new(),
                });
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

fn inv_mod(a: u8, q: u8) -> u8 {
    (1..q).find(|&b| a * b % q == 1).expect("q is prime")
}

/// Basis of `{x : H x = 0}` over the prime field `Z_q`.
fn null_space(mut rows: Vec<Word>, n: usize, q: u8) -> Vec<Word> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c], q);
        for v in rows[r].iter_mut() {
            *v = *v * inv % q;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, &b) in row.iter_mut().zip(&pivot) {
                    *v = (*v + (q - f) * b % q) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u8; n];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - rows[i][free]) % q;
            }
            v
        })
        .collect()
}
