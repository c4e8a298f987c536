//! Full-rank integer lattices given by a generator matrix (rows are basis
//! vectors). All arithmetic is exact: determinants use fraction-free
//! (Bareiss) elimination and membership uses the Hermite normal form.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::tiling::PeriodicTiling;

/// Largest window [`IntegerLattice::window`] will materialize.
pub const MAX_WINDOW_POINTS: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    rows: Vec<Vec<i64>>,
    /// Upper-triangular Hermite basis with positive diagonal.
    hermite: Vec<Vec<i128>>,
    volume: u128,
}

fn overflow() -> Error {
    Error::Guard("lattice arithmetic overflows 128 bits".into())
}

impl IntegerLattice {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDimension("a lattice needs n >= 1".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let det = bareiss_det(&rows).ok_or_else(overflow)?;
        if det == 0 {
            return Err(Error::Singular);
        }
        let wide: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        let hermite = hermite_basis(wide, n)?;
        Ok(IntegerLattice {
            rows,
            hermite,
            volume: det.unsigned_abs(),
        })
    }

    /// Lattice generated by an arbitrary spanning set of full rank.
    pub fn from_generators(generators: &[Vec<i64>], n: usize) -> Result<Self> {
        let wide: Vec<Vec<i128>> = generators
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: r.len(),
                    });
                }
                Ok(r.iter().map(|&v| v as i128).collect())
            })
            .collect::<Result<_>>()?;
        let hermite = hermite_basis(wide, n)?;
        let rows = hermite
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| i64::try_from(v).map_err(|_| overflow()))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        let volume = (0..n)
            .try_fold(1u128, |acc, i| acc.checked_mul(hermite[i][i] as u128))
            .ok_or_else(overflow)?;
        Ok(IntegerLattice {
            rows,
            hermite,
            volume,
        })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn generator(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn hermite_basis(&self) -> &[Vec<i128>] {
        &self.hermite
    }

    /// `|det G|`.
    pub fn volume(&self) -> u128 {
        self.volume
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let mut rest: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        for (i, row) in self.hermite.iter().enumerate() {
            let pivot = row[i];
            if rest[i].rem_euclid(pivot) != 0 {
                return Ok(false);
            }
            let k = rest[i] / pivot;
            for (r, h) in rest.iter_mut().zip(row) {
                *r = k
                    .checked_mul(*h)
                    .and_then(|kh| r.checked_sub(kh))
                    .ok_or_else(overflow)?;
            }
        }
        Ok(rest.iter().all(|&v| v == 0))
    }

    pub fn is_periodic(&self, p: u64) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            let mut e = vec![0i64; n];
            e[i] = p as i64;
            self.contains(&e).unwrap_or(false)
        })
    }

    /// All lattice points in `{0, ..., p-1}^n`, sorted lexicographically.
    ///
    /// Coefficients are enumerated against the triangular Hermite basis, so
    /// the cost is proportional to the output size `p^n / volume`.
    pub fn window(&self, p: u64) -> Result<Vec<Point>> {
        if p == 0 || !self.is_periodic(p) {
            return Err(Error::NotPeriodic(p));
        }
        let n = self.dim();
        let points = (p as u128)
            .checked_pow(n as u32)
            .map(|cells| cells / self.volume)
            .filter(|&k| k <= MAX_WINDOW_POINTS as u128)
            .ok_or_else(|| {
                Error::Guard(format!("window holds more than {MAX_WINDOW_POINTS} points"))
            })?;
        let mut out = Vec::with_capacity(points as usize);
        let mut acc = vec![0i128; n];
        self.window_rec(0, p as i128, &mut acc, &mut out);
        out.sort_unstable();
        Ok(out)
    }

    fn window_rec(&self, i: usize, p: i128, acc: &mut Vec<i128>, out: &mut Vec<Point>) {
        let n = self.dim();
        if i == n {
            out.push(Point(acc.iter().map(|&v| v as i64).collect()));
            return;
        }
        let row = &self.hermite[i];
        let pivot = row[i];
        // smallest k with acc[i] + k * pivot >= 0; the pivot divides p
        let start = (-acc[i]).div_euclid(pivot) + i128::from((-acc[i]).rem_euclid(pivot) != 0);
        let mut k = start;
        loop {
            let v = acc[i] + k * pivot;
            if v >= p {
                break;
            }
            for (a, h) in acc.iter_mut().zip(row).skip(i) {
                *a += k * h;
            }
            self.window_rec(i + 1, p, acc, out);
            for (a, h) in acc.iter_mut().zip(row).skip(i) {
                *a -= k * h;
            }
            k += 1;
        }
    }
}

/// The `2ν`-dimensional lattice with basis `3e_{2i-1} + 2e_{2i}` and
/// `4e_{2i}`.
pub fn lambda_n(nu: usize) -> Result<IntegerLattice> {
    if nu == 0 {
        return Err(Error::InvalidDimension("ν must be at least 1".into()));
    }
    let n = 2 * nu;
    let mut rows = Vec::with_capacity(n);
    for i in 0..nu {
        let mut a = vec![0i64; n];
        a[2 * i] = 3;
        a[2 * i + 1] = 2;
        let mut b = vec![0i64; n];
        b[2 * i + 1] = 4;
        rows.push(a);
        rows.push(b);
    }
    IntegerLattice::new(rows)
}

/// Determinant by fraction-free Gaussian elimination, or `None` if an
/// intermediate value leaves the `i128` range.
pub fn bareiss_det(rows: &[Vec<i64>]) -> Option<i128> {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

/// Row-style Hermite normal form of a full-column-rank generating set:
/// upper triangular, positive diagonal, entries above each pivot reduced
/// into `[0, pivot)`. Fails with `Singular` if the rows do not span rank `n`.
fn hermite_basis(mut m: Vec<Vec<i128>>, n: usize) -> Result<Vec<Vec<i128>>> {
    let sub_mul = |a: i128, q: i128, b: i128| q.checked_mul(b).and_then(|qb| a.checked_sub(qb));
    // a missing pivot fails, so column c always lands in row c
    for c in 0..n {
        loop {
            let nonzero: Vec<usize> = (c..m.len()).filter(|&i| m[i][c] != 0).collect();
            let &min = nonzero
                .iter()
                .min_by_key(|&&i| m[i][c].unsigned_abs())
                .ok_or(Error::Singular)?;
            m.swap(c, min);
            if nonzero.len() == 1 {
                break;
            }
            let pivot = m[c].clone();
            for row in m.iter_mut().skip(c + 1) {
                if row[c] != 0 {
                    let q = row[c].checked_div_euclid(pivot[c]).ok_or_else(overflow)?;
                    for (v, &b) in row.iter_mut().zip(&pivot).skip(c) {
                        *v = sub_mul(*v, q, b).ok_or_else(overflow)?;
                    }
                }
            }
        }
        if m[c][c] < 0 {
            for v in m[c].iter_mut() {
                *v = v.checked_neg().ok_or_else(overflow)?;
            }
        }
        let pivot = m[c].clone();
        for row in m.iter_mut().take(c) {
            let q = row[c].checked_div_euclid(pivot[c]).ok_or_else(overflow)?;
            if q != 0 {
                for (v, &b) in row.iter_mut().zip(&pivot).skip(c) {
                    *v = sub_mul(*v, q, b).ok_or_else(overflow)?;
                }
            }
        }
    }
    m.truncate(n);
    Ok(m)
}

/// Lattice `T + pZ^n` if the window codewords form a subgroup of
/// `Z_p^n`, otherwise `None`.
pub fn tiling_lattice(t: &PeriodicTiling) -> Option<IntegerLattice> {
    let n = t.dim();
    let p = t.period() as i64;
    let words: HashSet<&[i64]> = t.codewords().iter().map(|x| x.as_slice()).collect();
    let zero = vec![0i64; n];
    if !words.contains(zero.as_slice()) {
        return None;
    }
    let mut span: HashSet<Vec<i64>> = HashSet::from([zero]);
    let mut generators: Vec<Vec<i64>> = Vec::new();
    for w in t.codewords() {
        if span.contains(w.as_slice()) {
            continue;
        }
        let mut next = span.clone();
        for s in &span {
            let mut cur = s.clone();
            loop {
                for (c, wi) in cur.iter_mut().zip(w.iter()) {
                    *c = (*c + wi).rem_euclid(p);
                }
                if !next.insert(cur.clone()) {
                    break;
                }
                if next.len() > words.len() {
                    return None;
                }
            }
        }
        span = next;
        generators.push(w.0.clone());
    }
    if span.len() != words.len() || !span.iter().all(|s| words.contains(s.as_slice())) {
        return None;
    }
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = p;
        generators.push(e);
    }
    IntegerLattice::from_generators(&generators, n).ok()
}

/// Whether `T + pZ^n` is a lattice, i.e. the window codewords are closed
/// under addition mod `p`.
pub fn is_lattice_tiling(t: &PeriodicTiling) -> bool {
    tiling_lattice(t).is_some()
}
