use super::require_perfect;
use crate::codes::{weight, BlockCode, Word};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::tiling::PeriodicTiling;

/// `2C + 4Z^n`: every codeword doubled, over `Z_4^n`.
pub fn from_binary_perfect(c: &BlockCode) -> Result<PeriodicTiling> {
    require_perfect(c, 2)?;
    let words = c
        .words()
        .iter()
        .map(|w| Point(w.iter().map(|&b| 2 * b as i64).collect()))
        .collect();
    PeriodicTiling::new(c.length(), 4, words)
}

/// Recovers the binary perfect code of a `Z_4^n` tiling.
///
/// Even tilings are halved; otherwise every entry is mapped by
/// `0, 1 -> 0` and `2, 3 -> 1`. The result is certified perfect.
pub fn to_binary_perfect(t: &PeriodicTiling) -> Result<BlockCode> {
    if t.period() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected a tiling of Z_4^n, got period {}",
            t.period()
        )));
    }
    let words: Vec<Word> = t
        .codewords()
        .iter()
        .map(|x| x.iter().map(|&v| u8::from(v >= 2)).collect())
        .collect();
    let mut dedup = words.clone();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != words.len() {
        return Err(Error::NotPerfect(
            "two codewords collapse to the same binary word".into(),
        ));
    }
    let code = BlockCode::new(2, t.dim(), words)?;
    let check = code.is_perfect();
    if !check.perfect {
        return Err(Error::NotPerfect(check.reason));
    }
    Ok(code)
}

/// Codewords `(c', x)` with an even-weight prefix become `(2c', 2x)`, those
/// with an odd-weight prefix become `(2c', 2x + 1)`.
pub fn punctured_construction(c: &BlockCode) -> Result<PeriodicTiling> {
    require_perfect(c, 2)?;
    if c.length() < 3 {
        return Err(Error::InvalidInput(
            "the punctured construction needs length >= 3".into(),
        ));
    }
    let n = c.length();
    let words = c
        .words()
        .iter()
        .map(|w| {
            let (prefix, last) = w.split_at(n - 1);
            let odd = weight(prefix) % 2 == 1;
            let mut x: Vec<i64> = prefix.iter().map(|&b| 2 * b as i64).collect();
            x.push(2 * last[0] as i64 + i64::from(odd));
            Point(x)
        })
        .collect();
    PeriodicTiling::new(n, 4, words)
}

/// A codeword `X = 2w + 4v` of `2C + 4Z^n` whose tile contains `a`.
///
/// Along each axis the window `a_i - 1 ..= a_i + 2` holds two even
/// values, one `0 mod 4` and one `2 mod 4`, so a binary word picks a unique
/// candidate. The candidate covers `a` iff the word differs in at most one
/// position from the word `β` selecting the even value in `{a_i, a_i + 1}`,
/// i.e. iff it decodes `β`.
pub fn locate_tile_binary(a: &[i64], c: &BlockCode) -> Result<Point> {
    require_perfect(c, 2)?;
    if a.len() != c.length() {
        return Err(Error::DimensionMismatch {
            expected: c.length(),
            found: a.len(),
        });
    }
    let even_near = |ai: i64| if ai.rem_euclid(2) == 0 { ai } else { ai + 1 };
    let beta: Word = a
        .iter()
        .map(|&ai| (even_near(ai).rem_euclid(4) / 2) as u8)
        .collect();
    let w = c
        .decode_within_1(&beta)?
        .ok_or_else(|| Error::NotPerfect("no codeword within distance 1".into()))?;
    let x = a
        .iter()
        .zip(&w)
        .map(|(&ai, &bit)| {
            let e = even_near(ai);
            if (e.rem_euclid(4) / 2) as u8 == bit {
                e
            } else if ai.rem_euclid(2) == 0 {
                // a_i even: the other even value in range is a_i + 2
                ai + 2
            } else {
                // a_i odd: the other even value in range is a_i - 1
                ai - 1
            }
        })
        .collect();
    Ok(Point(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::binary_hamming;
    use crate::geometry::{covers, cross_distance, hamming_distance};
    use crate::tiling::verify;

    #[test]
    fn repetition_code_tiling() {
        let t = from_binary_perfect(&binary_hamming(2).unwrap()).unwrap();
        assert_eq!(t.codewords(), &[Point::from([0, 0, 0]), Point::from([2, 2, 2])]);
        assert!(verify(&t).unwrap().is_tiling);
        assert_eq!(t.len() * 32, 64);
    }

    #[test]
    fn doubling_turns_hamming_into_cross_distance() {
        // exhaustive over {0,1}^4 pairs
        for a in 0..16u32 {
            for b in 0..16u32 {
                let x: Vec<i64> = (0..4).map(|i| (a >> i & 1) as i64).collect();
                let y: Vec<i64> = (0..4).map(|i| (b >> i & 1) as i64).collect();
                let x2: Vec<i64> = x.iter().map(|v| 2 * v).collect();
                let y2: Vec<i64> = y.iter().map(|v| 2 * v).collect();
                assert_eq!(
                    cross_distance(&x2, &y2).unwrap(),
                    hamming_distance(&x, &y).unwrap()
                );
            }
        }
    }

    #[test]
    fn round_trip() {
        for t in 2..=4 {
            let c = binary_hamming(t).unwrap();
            let tiling = from_binary_perfect(&c).unwrap();
            let back = to_binary_perfect(&tiling).unwrap();
            assert_eq!(back.words(), c.words());
            assert_eq!(back.length(), c.length());
        }
    }

    #[test]
    fn punctured_has_odd_entries() {
        let c = binary_hamming(3).unwrap();
        let t = punctured_construction(&c).unwrap();
        assert_eq!(t.len(), 16);
        let odd = t.codewords().iter().filter(|x| x[6] % 2 == 1).count();
        assert_eq!(odd, 8);
        assert!(verify(&t).unwrap().is_tiling);
        assert!(punctured_construction(&binary_hamming(1).unwrap()).is_err());
    }

    #[test]
    fn not_perfect_is_rejected() {
        let c = BlockCode::new(2, 3, vec![vec![0, 0, 0]]).unwrap();
        assert!(matches!(from_binary_perfect(&c), Err(Error::NotPerfect(_))));
        assert!(matches!(punctured_construction(&c), Err(Error::NotPerfect(_))));
    }

    #[test]
    fn locate_examples() {
        let rep = binary_hamming(2).unwrap();
        assert_eq!(locate_tile_binary(&[0, 0, 0], &rep).unwrap(), Point::from([0, 0, 0]));
        assert_eq!(locate_tile_binary(&[1, 1, 1], &rep).unwrap(), Point::from([2, 2, 2]));
        assert!(locate_tile_binary(&[1, 1], &rep).is_err());
        for a in -5i64..9 {
            for b in -5i64..9 {
                for c in -5i64..9 {
                    let x = locate_tile_binary(&[a, b, c], &rep).unwrap();
                    assert!(covers(&x, &[a, b, c]).unwrap());
                }
            }
        }
    }
}
