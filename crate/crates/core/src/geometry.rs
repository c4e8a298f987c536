//! Points of `Z^n`, the three distance measures and the half-cross shape.
//!
//! The shape is stored only through its offset set: a codeword `X` covers a
//! cell `A` exactly when `X - A` is one of the offsets, i.e. every entry of
//! `X - A` lies in `{-1, 0, 1, 2}` and at most one of them is `-1` or `2`.
//! The cells of the tile placed at `X` are therefore `X - D` for every
//! offset `D`: the `2 x ... x 2` core `X + {-1, 0}^n` plus one unit arm on
//! each side of it along every axis.

use std::fmt;
use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest period at which the shape does not overlap its own translates.
pub const MIN_PERIOD: u64 = 4;

/// An integer vector in `Z^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn zero(n: usize) -> Self {
        Point(vec![0; n])
    }

    /// The `r`-th unit vector (0-based `r`).
    pub fn unit(n: usize, r: usize) -> Self {
        let mut p = Point::zero(n);
        p.0[r] = 1;
        p
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Point {
        Point(self.iter().map(|a| a * k).collect())
    }

    /// Coordinatewise reduction into `{0, ..., p-1}`.
    pub fn rem_euclid(&self, p: u64) -> Point {
        let p = p as i64;
        Point(self.iter().map(|a| a.rem_euclid(p)).collect())
    }
}

impl Deref for Point {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl DerefMut for Point {
    fn deref_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Self {
        Point(v.to_vec())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn same_dim(x: &[i64], y: &[i64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(())
}

/// Number of positions in which `x` and `y` differ.
pub fn hamming_distance(x: &[i64], y: &[i64]) -> Result<u64> {
    same_dim(x, y)?;
    Ok(x.iter().zip(y).filter(|(a, b)| a != b).count() as u64)
}

pub fn manhattan_distance(x: &[i64], y: &[i64]) -> Result<u64> {
    same_dim(x, y)?;
    Ok(x.iter().zip(y).map(|(a, b)| a.abs_diff(*b)).sum())
}

/// `sum_i max(0, |y_i - x_i| - 1)`.
///
/// Two tiles are disjoint exactly when the cross distance of their
/// codewords is at least 3. This is not a metric: `(0)`, `(1)`, `(2)`
/// violate the triangle inequality.
pub fn cross_distance(x: &[i64], y: &[i64]) -> Result<u64> {
    same_dim(x, y)?;
    Ok(x.iter()
        .zip(y)
        .map(|(a, b)| a.abs_diff(*b).saturating_sub(1))
        .sum())
}

pub fn cross_weight(x: &[i64]) -> u64 {
    x.iter().map(|a| a.unsigned_abs().saturating_sub(1)).sum()
}

pub(crate) fn check_period(p: u64) -> Result<()> {
    if p < MIN_PERIOD {
        return Err(Error::PeriodTooSmall(p));
    }
    Ok(())
}

/// Cross distance between the classes of `x` and `y` in `Z^n / pZ^n`.
///
/// The distance is separable, so each coordinate is minimized over its
/// periodic images independently.
pub fn torus_cross_distance(x: &[i64], y: &[i64], p: u64) -> Result<u64> {
    same_dim(x, y)?;
    check_period(p)?;
    Ok(x.iter()
        .zip(y)
        .map(|(a, b)| {
            let r = (b - a).rem_euclid(p as i64) as u64;
            r.min(p - r).saturating_sub(1)
        })
        .sum())
}

/// `|Υ_n| = 2^n (n + 1)`, or `None` on overflow.
pub fn shape_size(n: usize) -> Option<u64> {
    let pow = 1u64.checked_shl(u32::try_from(n).ok()?)?;
    pow.checked_mul(n as u64 + 1)
}

/// `p^n`, the number of cells in a periodic window, or `None` on overflow.
pub fn window_cells(n: usize, p: u64) -> Option<u64> {
    p.checked_pow(u32::try_from(n).ok()?)
}

/// The half-cross `Υ_n`, represented by the offsets `X - A` of the cells
/// `A` covered by a codeword `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsilonShape {
    n: usize,
    offsets: Vec<Point>,
}

impl UpsilonShape {
    pub fn new(n: usize) -> Result<Self> {
        upsilon_offsets(n)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Offsets in lexicographic order (with `-1 < 0 < 1 < 2`).
    pub fn offsets(&self) -> &[Point] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// Cells of the tile placed at `x`.
    pub fn cells_at<'a>(&'a self, x: &'a Point) -> impl Iterator<Item = Point> + 'a {
        self.offsets.iter().map(move |d| x.sub(d))
    }
}

/// Enumerates `{D in {-1,0,1,2}^n : at most one D_i in {-1, 2}}`.
pub fn upsilon_offsets(n: usize) -> Result<UpsilonShape> {
    if n == 0 {
        return Err(Error::InvalidDimension("the shape needs n >= 1".into()));
    }
    // 2^n (n+1) offsets of n coordinates each; refuse absurd sizes early.
    if n > 20 {
        return Err(Error::Guard(format!("shape offsets for n = {n} are too large")));
    }
    let mut offsets = Vec::with_capacity(shape_size(n).unwrap_or(0) as usize);
    let mut cur = vec![0i64; n];
    push_offsets(&mut cur, 0, false, &mut offsets);
    Ok(UpsilonShape { n, offsets })
}

fn push_offsets(cur: &mut Vec<i64>, i: usize, used_arm: bool, out: &mut Vec<Point>) {
    if i == cur.len() {
        out.push(Point(cur.clone()));
        return;
    }
    for d in [-1i64, 0, 1, 2] {
        let arm = d == -1 || d == 2;
        if arm && used_arm {
            continue;
        }
        cur[i] = d;
        push_offsets(cur, i + 1, used_arm || arm, out);
    }
}

/// True iff the tile at `x` contains the cell `a`.
pub fn covers(x: &[i64], a: &[i64]) -> Result<bool> {
    same_dim(x, a)?;
    Ok(is_offset(x.iter().zip(a).map(|(xi, ai)| xi - ai)))
}

/// True iff the sequence is a member of the offset set.
pub fn is_offset(diff: impl IntoIterator<Item = i64>) -> bool {
    let mut arms = 0;
    for d in diff {
        match d {
            0 | 1 => {}
            -1 | 2 => {
                arms += 1;
                if arms > 1 {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Lifts a residue difference `r in {0..p-1}` to the offset value it
/// represents, if any. Unambiguous because `p >= 4`.
#[inline]
pub(crate) fn residue_to_offset(r: u64, p: u64) -> Option<i64> {
    match r {
        0..=2 => Some(r as i64),
        _ if r == p - 1 => Some(-1),
        _ => None,
    }
}

/// Covering on the torus: some periodic image of `x` covers `a`.
pub fn covers_mod(x: &[i64], a: &[i64], p: u64) -> Result<bool> {
    same_dim(x, a)?;
    check_period(p)?;
    let mut diffs = Vec::with_capacity(x.len());
    for (xi, ai) in x.iter().zip(a) {
        let r = (xi - ai).rem_euclid(p as i64) as u64;
        match residue_to_offset(r, p) {
            Some(d) => diffs.push(d),
            None => return Ok(false),
        }
    }
    Ok(is_offset(diffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_on_small_examples() {
        assert_eq!(hamming_distance(&[0, 0, 0], &[0, 0, 0]).unwrap(), 0);
        assert_eq!(hamming_distance(&[1, 1, 0], &[1, 0, 1]).unwrap(), 2);
        assert_eq!(
            hamming_distance(&[3, 2, 0, 0, 0, 0, 0], &[1, 2, 3, 0, 0, 0, 0]).unwrap(),
            2
        );
        assert_eq!(manhattan_distance(&[0, 0], &[0, 0]).unwrap(), 0);
        assert_eq!(manhattan_distance(&[1, 1, -1], &[0, 0, 0]).unwrap(), 3);
        assert_eq!(manhattan_distance(&[3, 2], &[0, 0]).unwrap(), 5);
        assert_eq!(cross_distance(&[0, 0, 0], &[3, 2, 0]).unwrap(), 3);
        assert_eq!(cross_distance(&[0, 0], &[2, -2]).unwrap(), 2);
        assert_eq!(cross_distance(&[5, -7, 1], &[5, -7, 1]).unwrap(), 0);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(
            hamming_distance(&[0], &[0, 0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(manhattan_distance(&[0], &[]).is_err());
        assert!(cross_distance(&[0, 1], &[0]).is_err());
        assert!(covers(&[0, 1], &[0]).is_err());
    }

    #[test]
    fn cross_weight_examples() {
        assert_eq!(cross_weight(&[3, 2, 0, 0, 0, 0, 0]), 3);
        let mut v = vec![0; 5];
        v[2] = 4;
        assert_eq!(cross_weight(&v), 3);
        assert_eq!(cross_weight(&[1; 9]), 0);
    }

    #[test]
    fn cross_distance_is_not_a_metric() {
        let (x, y, z) = ([0i64], [1i64], [2i64]);
        assert_eq!(cross_distance(&x, &y).unwrap(), 0);
        assert_eq!(cross_distance(&y, &z).unwrap(), 0);
        assert_eq!(cross_distance(&x, &z).unwrap(), 1);
    }

    #[test]
    fn torus_distance_examples() {
        assert_eq!(torus_cross_distance(&[0, 0], &[11, 0], 12).unwrap(), 0);
        assert_eq!(torus_cross_distance(&[0], &[4], 12).unwrap(), 3);
        assert_eq!(torus_cross_distance(&[3, 1], &[3, 1], 5).unwrap(), 0);
        assert_eq!(torus_cross_distance(&[0], &[4], 4).unwrap(), 0);
        assert!(matches!(
            torus_cross_distance(&[0], &[1], 3),
            Err(Error::PeriodTooSmall(3))
        ));
    }

    #[test]
    fn offset_set_sizes() {
        assert_eq!(
            upsilon_offsets(1).unwrap().offsets(),
            &[Point::from([-1]), Point::from([0]), Point::from([1]), Point::from([2])]
        );
        assert_eq!(upsilon_offsets(2).unwrap().len(), 12);
        assert_eq!(upsilon_offsets(7).unwrap().len(), 1024);
        for n in 1..=12 {
            assert_eq!(upsilon_offsets(n).unwrap().len() as u64, shape_size(n).unwrap());
        }
        assert!(upsilon_offsets(0).is_err());
    }

    #[test]
    fn offsets_are_sorted_and_distinct() {
        let s = upsilon_offsets(4).unwrap();
        assert!(s.offsets().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn covers_examples() {
        assert!(covers(&[2, 0], &[0, 0]).unwrap());
        assert!(!covers(&[2, 2], &[0, 0]).unwrap());
        assert!(covers(&[3, 2], &[1, 1]).unwrap());
        assert!(!covers(&[3, 0], &[0, 0]).unwrap());
    }

    #[test]
    fn covers_mod_matches_lifted_covers() {
        // (3,2) covers (1,1); so do its images under 12Z^2.
        assert!(covers_mod(&[15, -10], &[1, 1], 12).unwrap());
        assert!(covers_mod(&[0], &[1], 4).unwrap());
        assert!(!covers_mod(&[0, 0], &[2, 2], 12).unwrap());
    }

    #[test]
    fn window_and_shape_overflow() {
        assert_eq!(window_cells(8, 12), Some(429_981_696));
        assert_eq!(window_cells(40, 12), None);
        assert_eq!(shape_size(8), Some(2304));
        assert_eq!(shape_size(70), None);
    }
}
