//! Tilings of `Z^{2ν}` from ternary perfect codes of length `ν`.
//!
//! A ternary word is lifted coordinatewise by `φ` into coset
//! representatives of `Λ_{2ν}` and the tiling is `Φ(C) + Λ_{2ν}`, which is
//! 12-periodic. Covering is constructive: reduce a point to its
//! representative, classify each coordinate pair, decode the class word and
//! move each pair to the table entry for the decoded symbol.

use std::sync::OnceLock;

use super::require_perfect;
use crate::codes::{BlockCode, Word};
use crate::error::{Error, Result};
use crate::geometry::{is_offset, Point};
use crate::lattice::lambda_n;
use crate::tiling::PeriodicTiling;

type Pair = (i64, i64);

/// `φ(0), φ(1), φ(2)`; also the first member of each class.
pub const CLASS_REPRESENTATIVES: [Pair; 3] = [(0, 0), (1, 2), (2, 0)];

/// The three classes partitioning `{0,1,2} x {0,1,2,3}`.
const CLASSES: [[Pair; 4]; 3] = [
    [(0, 0), (0, 3), (2, 2), (2, 1)],
    [(1, 2), (1, 1), (0, 1), (0, 2)],
    [(2, 0), (1, 3), (2, 3), (1, 0)],
];

/// `ADJUST[class][member][target]`: the representative of `φ(target)` moved
/// by a `Λ_2` vector so that its tile covers the member. Entries are kept
/// unreduced.
const ADJUST: [[[Pair; 3]; 4]; 3] = [
    [
        [(0, 0), (1, 2), (2, 0)],
        [(0, 4), (1, 2), (2, 4)],
        [(3, 2), (1, 2), (2, 4)],
        [(3, 2), (1, 2), (2, 0)],
    ],
    [
        [(3, 2), (1, 2), (2, 4)],
        [(3, 2), (1, 2), (2, 0)],
        [(0, 0), (1, 2), (-1, 2)],
        [(0, 4), (1, 2), (-1, 2)],
    ],
    [
        [(3, 2), (4, 0), (2, 0)],
        [(0, 4), (1, 2), (2, 4)],
        [(3, 2), (4, 4), (2, 4)],
        [(0, 0), (1, 2), (2, 0)],
    ],
];

/// Class membership and adjustment lookup over `{0,1,2} x {0,1,2,3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    class_of: [[u8; 4]; 3],
    adjust: [[[Pair; 3]; 4]; 3],
}

impl ClassTable {
    /// The validated table. Panics if the embedded data fails validation.
    pub fn standard() -> &'static ClassTable {
        static TABLE: OnceLock<ClassTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            ClassTable::from_data(&CLASSES, &ADJUST).expect("embedded class table is invalid")
        })
    }

    /// Builds and checks a table:
    /// - the classes partition the 12 pairs;
    /// - every entry minus its pair is a valid offset, and lies in
    ///   `{0, 1}^2` when the target class is the pair's own class;
    /// - every entry differs from its target representative by a `Λ_2`
    ///   vector.
    pub fn from_data(classes: &[[Pair; 4]; 3], adjust: &[[[Pair; 3]; 4]; 3]) -> Result<Self> {
        let mut class_of = [[u8::MAX; 4]; 3];
        for (k, members) in classes.iter().enumerate() {
            for &(x1, x2) in members {
                if !(0..3).contains(&x1) || !(0..4).contains(&x2) {
                    return Err(Error::InvalidInput(format!("({x1},{x2}) out of range")));
                }
                let slot = &mut class_of[x1 as usize][x2 as usize];
                if *slot != u8::MAX {
                    return Err(Error::InvalidInput(format!("({x1},{x2}) in two classes")));
                }
                *slot = k as u8;
            }
        }
        if class_of.iter().flatten().any(|&c| c == u8::MAX) {
            return Err(Error::InvalidInput("classes do not cover all 12 pairs".into()));
        }
        let lattice = lambda_n(1)?;
        let mut table = [[[(0, 0); 3]; 4]; 3];
        for (k, members) in classes.iter().enumerate() {
            for (m, &(x1, x2)) in members.iter().enumerate() {
                for target in 0..3 {
                    let (v1, v2) = adjust[k][m][target];
                    let (d1, d2) = (v1 - x1, v2 - x2);
                    if !is_offset([d1, d2]) {
                        return Err(Error::InvalidInput(format!(
                            "entry ({v1},{v2}) does not cover ({x1},{x2})"
                        )));
                    }
                    if target == k && !((0..=1).contains(&d1) && (0..=1).contains(&d2)) {
                        return Err(Error::InvalidInput(format!(
                            "entry ({v1},{v2}) for ({x1},{x2}) uses an arm within its own class"
                        )));
                    }
                    let (y1, y2) = CLASS_REPRESENTATIVES[target];
                    if !lattice.contains(&[v1 - y1, v2 - y2])? {
                        return Err(Error::InvalidInput(format!(
                            "entry ({v1},{v2}) is not congruent to ({y1},{y2})"
                        )));
                    }
                    table[x1 as usize][x2 as usize][target] = (v1, v2);
                }
            }
        }
        Ok(ClassTable {
            class_of,
            adjust: table,
        })
    }

    /// Class index (`ψ`) of a representative pair.
    pub fn class_of(&self, x1: i64, x2: i64) -> Result<u8> {
        if !(0..3).contains(&x1) || !(0..4).contains(&x2) {
            return Err(Error::InvalidInput(format!(
                "({x1},{x2}) is not in {{0,1,2}} x {{0,1,2,3}}"
            )));
        }
        Ok(self.class_of[x1 as usize][x2 as usize])
    }

    /// Table entry covering `(x1, x2)` that is congruent to `φ(target)`.
    pub fn adjust(&self, x1: i64, x2: i64, target: u8) -> Result<Pair> {
        self.class_of(x1, x2)?;
        if target > 2 {
            return Err(Error::InvalidInput(format!("symbol {target} outside Z_3")));
        }
        Ok(self.adjust[x1 as usize][x2 as usize][target as usize])
    }
}

pub fn phi(x: u8) -> Result<Pair> {
    CLASS_REPRESENTATIVES
        .get(x as usize)
        .copied()
        .ok_or_else(|| Error::InvalidInput(format!("symbol {x} outside Z_3")))
}

/// `Φ(x_1, ..., x_ν) = (φ(x_1), ..., φ(x_ν))` as a point of `Z^{2ν}`.
pub fn phi_word(w: &[u8]) -> Result<Point> {
    let mut out = Vec::with_capacity(2 * w.len());
    for &x in w {
        let (a, b) = phi(x)?;
        out.push(a);
        out.push(b);
    }
    Ok(Point(out))
}

pub fn psi(x1: i64, x2: i64) -> Result<u8> {
    ClassTable::standard().class_of(x1, x2)
}

/// `ψ` applied to consecutive coordinate pairs.
pub fn psi_word(b: &[i64]) -> Result<Word> {
    if b.len() % 2 != 0 {
        return Err(Error::InvalidDimension(format!(
            "expected an even dimension, got {}",
            b.len()
        )));
    }
    b.chunks_exact(2).map(|c| psi(c[0], c[1])).collect()
}

/// Splits `a` as `b - y` with `y` in `Λ_n` and each pair of `b` in
/// `{0,1,2} x {0,1,2,3}`. Returns `(b, y)`, so `a + y = b`.
pub fn reduce_to_representative(a: &[i64]) -> Result<(Point, Point)> {
    if a.len() % 2 != 0 || a.is_empty() {
        return Err(Error::InvalidDimension(format!(
            "expected a positive even dimension, got {}",
            a.len()
        )));
    }
    let mut b = Vec::with_capacity(a.len());
    let mut y = Vec::with_capacity(a.len());
    for pair in a.chunks_exact(2) {
        let (a1, a2) = (pair[0], pair[1]);
        let k = a1.div_euclid(3);
        let (b1, rest) = (a1 - 3 * k, a2 - 2 * k);
        let m = rest.div_euclid(4);
        let b2 = rest - 4 * m;
        b.extend([b1, b2]);
        y.extend([b1 - a1, b2 - a2]);
    }
    Ok((Point(b), Point(y)))
}

/// `Φ(C) + Λ_{2ν}` restricted to the window `{0, ..., 11}^{2ν}`.
pub fn from_ternary_perfect(c: &BlockCode) -> Result<PeriodicTiling> {
    require_perfect(c, 3)?;
    let nu = c.length();
    let n = 2 * nu;
    let window = lambda_n(nu)?.window(12)?;
    let mut points = Vec::with_capacity(c.len() * window.len());
    for w in c.words() {
        let base = phi_word(w)?;
        for lambda in &window {
            points.push(base.add(lambda).rem_euclid(12));
        }
    }
    let t = PeriodicTiling::new(n, 12, points)?;
    if t.has_duplicates() {
        return Err(Error::InvalidInput(
            "lifted codewords collide modulo the lattice".into(),
        ));
    }
    Ok(t)
}

/// A codeword of `Φ(C) + Λ_{2ν}`, as an unreduced point of `Z^{2ν}`, whose
/// tile contains `a`.
pub fn locate_tile_ternary(a: &[i64], c: &BlockCode) -> Result<Point> {
    require_perfect(c, 3)?;
    if a.len() != 2 * c.length() {
        return Err(Error::DimensionMismatch {
            expected: 2 * c.length(),
            found: a.len(),
        });
    }
    let table = ClassTable::standard();
    let (b, y) = reduce_to_representative(a)?;
    let alpha = psi_word(&b)?;
    let w = c
        .decode_within_1(&alpha)?
        .ok_or_else(|| Error::NotPerfect("class word has no codeword within distance 1".into()))?;
    let mut x = Vec::with_capacity(a.len());
    for (i, &target) in w.iter().enumerate() {
        let (v1, v2) = table.adjust(b[2 * i], b[2 * i + 1], target)?;
        x.push(v1 - y[2 * i]);
        x.push(v2 - y[2 * i + 1]);
    }
    Ok(Point(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::ternary_hamming;
    use crate::geometry::covers;
    use crate::tiling::verify;

    #[test]
    fn embedded_table_validates() {
        let t = ClassTable::standard();
        assert_eq!(t.class_of(2, 2).unwrap(), 0);
        assert_eq!(t.adjust(1, 1, 0).unwrap(), (3, 2));
    }

    #[test]
    fn corrupted_table_fails_fast() {
        let mut bad = ADJUST;
        bad[1][1][0] = (3, 3);
        assert!(ClassTable::from_data(&CLASSES, &bad).is_err());

        let mut bad = ADJUST;
        // covers (0,0) without arms but is not congruent to φ(0)
        bad[0][0][0] = (1, 1);
        assert!(ClassTable::from_data(&CLASSES, &bad).is_err());

        let mut classes = CLASSES;
        classes[2][3] = (0, 0);
        assert!(ClassTable::from_data(&classes, &ADJUST).is_err());
    }

    #[test]
    fn phi_psi_examples() {
        assert_eq!(phi(1).unwrap(), (1, 2));
        assert!(phi(3).is_err());
        assert_eq!(phi_word(&[0, 0, 0]).unwrap(), Point::zero(6));
        assert_eq!(psi(2, 2).unwrap(), 0);
        assert!(psi(3, 0).is_err());
        for x in 0..3u8 {
            let (a, b) = phi(x).unwrap();
            assert_eq!(psi(a, b).unwrap(), x);
        }
        let w = vec![2u8, 0, 1];
        assert_eq!(psi_word(&phi_word(&w).unwrap()).unwrap(), w);
        assert!(psi_word(&[0, 0, 1]).is_err());
    }

    #[test]
    fn reduction_examples() {
        let (b, y) = reduce_to_representative(&[0, 0]).unwrap();
        assert_eq!((b, y), (Point::zero(2), Point::zero(2)));
        let (b, y) = reduce_to_representative(&[3, 2]).unwrap();
        assert_eq!(b, Point::zero(2));
        assert_eq!(y, Point::from([-3, -2]));
        assert!(reduce_to_representative(&[1, 2, 3]).is_err());
    }

    #[test]
    fn locate_table_example() {
        let c = ternary_hamming(1).unwrap();
        assert_eq!(locate_tile_ternary(&[0, 0], &c).unwrap(), Point::zero(2));
        let x = locate_tile_ternary(&[1, 1], &c).unwrap();
        assert_eq!(x, Point::from([3, 2]));
        assert!(covers(&x, &[1, 1]).unwrap());
    }

    #[test]
    fn small_ternary_tiling() {
        let t = from_ternary_perfect(&ternary_hamming(1).unwrap()).unwrap();
        assert_eq!(t.len(), 12);
        assert!(verify(&t).unwrap().is_tiling);
        assert!(from_ternary_perfect(&crate::codes::binary_hamming(2).unwrap()).is_err());
    }
}
