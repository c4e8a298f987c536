//! The CODE v1, TILING v1 and LATTICE v1 text formats.
//!
//! Parsing is strict: `\n` line endings, single spaces between fields, no
//! leading zeros, no signs on unsigned fields, and nothing after the last
//! record. A single trailing newline is expected but not required.

use std::fmt::Write as _;

use crate::codes::BlockCode;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::IntegerLattice;
use crate::tiling::PeriodicTiling;

/// Upper bound on the dimension accepted by the parsers.
pub const MAX_PARSE_DIM: usize = 64;

pub fn write_code(code: &BlockCode) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "CODE v1\nq {}\nn {}\ncount {}\n",
        code.q(),
        code.length(),
        code.len()
    );
    for w in code.words() {
        push_joined(&mut out, w.iter());
    }
    out
}

pub fn write_tiling(t: &PeriodicTiling) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "TILING v1\nn {}\np {}\ncount {}\n",
        t.dim(),
        t.period(),
        t.len()
    );
    for x in t.codewords() {
        push_joined(&mut out, x.iter());
    }
    out
}

pub fn write_lattice(l: &IntegerLattice) -> String {
    let mut out = format!("LATTICE v1\nn {}\n", l.dim());
    for row in l.generator() {
        push_joined(&mut out, row.iter());
    }
    out
}

fn push_joined<T: std::fmt::Display>(out: &mut String, items: impl Iterator<Item = T>) {
    for (i, v) in items.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Split<'a, char>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Result<Self> {
        if text.contains('\r') {
            return Err(Error::parse(0, "carriage return in input"));
        }
        let body = text.strip_suffix('\n').unwrap_or(text);
        Ok(Lines {
            iter: body.split('\n').enumerate(),
            last: 0,
        })
    }

    fn next(&mut self) -> Result<(usize, &'a str)> {
        match self.iter.next() {
            Some((i, l)) => {
                self.last = i + 1;
                Ok((i + 1, l))
            }
            None => Err(Error::parse(self.last + 1, "unexpected end of input")),
        }
    }

    fn finish(mut self) -> Result<()> {
        match self.iter.next() {
            Some((i, _)) => Err(Error::parse(i + 1, "unexpected data after the last record")),
            None => Ok(()),
        }
    }

    fn expect(&mut self, want: &str) -> Result<()> {
        let (no, l) = self.next()?;
        if l != want {
            return Err(Error::parse(no, format!("expected `{want}`")));
        }
        Ok(())
    }

    fn field(&mut self, key: &str) -> Result<(usize, u64)> {
        let (no, l) = self.next()?;
        let value = l
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| Error::parse(no, format!("expected `{key} <value>`")))?;
        Ok((no, parse_uint(value).map_err(|m| Error::parse(no, m))?))
    }

    fn record(&mut self, width: usize) -> Result<(usize, Vec<&'a str>)> {
        let (no, l) = self.next()?;
        let fields: Vec<&str> = l.split(' ').collect();
        if fields.len() != width {
            return Err(Error::parse(
                no,
                format!("expected {width} fields, found {}", fields.len()),
            ));
        }
        Ok((no, fields))
    }
}

fn parse_uint(s: &str) -> std::result::Result<u64, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not an unsigned integer"));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(format!("`{s}` has a leading zero"));
    }
    s.parse().map_err(|_| format!("`{s}` is out of range"))
}

fn parse_int(s: &str) -> std::result::Result<i64, String> {
    match s.strip_prefix('-') {
        Some(rest) => {
            let v = parse_uint(rest)?;
            if v == 0 {
                return Err("`-0` is not allowed".into());
            }
            0i64.checked_sub_unsigned(v)
                .ok_or_else(|| format!("`{s}` is out of range"))
        }
        None => {
            let v = parse_uint(s)?;
            i64::try_from(v).map_err(|_| format!("`{s}` is out of range"))
        }
    }
}

fn dimension(no: usize, n: u64) -> Result<usize> {
    if n == 0 || n > MAX_PARSE_DIM as u64 {
        return Err(Error::parse(no, format!("dimension must be in 1..={MAX_PARSE_DIM}")));
    }
    Ok(n as usize)
}

fn at_line(no: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ Error::Parse { .. } => e,
        other => Error::parse(no, other.to_string()),
    }
}

pub fn parse_code(text: &str) -> Result<BlockCode> {
    let mut lines = Lines::new(text)?;
    lines.expect("CODE v1")?;
    let (qno, q) = lines.field("q")?;
    if q != 2 && q != 3 {
        return Err(Error::parse(qno, "q must be 2 or 3"));
    }
    let (nno, n) = lines.field("n")?;
    let n = dimension(nno, n)?;
    let (_, count) = lines.field("count")?;
    let mut words = Vec::new();
    let mut prev_line = nno;
    for _ in 0..count {
        let (no, fields) = lines.record(n)?;
        let mut w = Vec::with_capacity(n);
        for f in fields {
            let d = match f.as_bytes() {
                [b] if b.is_ascii_digit() && u64::from(b - b'0') < q => b - b'0',
                _ => return Err(Error::parse(no, format!("`{f}` is not a digit below {q}"))),
            };
            w.push(d);
        }
        words.push(w);
        prev_line = no;
    }
    lines.finish()?;
    BlockCode::new(q as u8, n, words).map_err(at_line(prev_line))
}

pub fn parse_tiling(text: &str) -> Result<PeriodicTiling> {
    let mut lines = Lines::new(text)?;
    lines.expect("TILING v1")?;
    let (nno, n) = lines.field("n")?;
    let n = dimension(nno, n)?;
    let (pno, p) = lines.field("p")?;
    if p > i64::MAX as u64 {
        return Err(Error::parse(pno, "period out of range"));
    }
    let (_, count) = lines.field("count")?;
    let mut points = Vec::new();
    let mut prev_line = pno;
    for _ in 0..count {
        let (no, fields) = lines.record(n)?;
        let mut x = Vec::with_capacity(n);
        for f in fields {
            let v = parse_uint(f).map_err(|m| Error::parse(no, m))?;
            if v >= p {
                return Err(Error::parse(no, format!("{v} is not below the period {p}")));
            }
            x.push(v as i64);
        }
        points.push(Point(x));
        prev_line = no;
    }
    lines.finish()?;
    PeriodicTiling::new(n, p, points).map_err(at_line(prev_line))
}

pub fn parse_lattice(text: &str) -> Result<IntegerLattice> {
    let mut lines = Lines::new(text)?;
    lines.expect("LATTICE v1")?;
    let (nno, n) = lines.field("n")?;
    let n = dimension(nno, n)?;
    let mut rows = Vec::with_capacity(n);
    let mut prev_line = nno;
    for _ in 0..n {
        let (no, fields) = lines.record(n)?;
        let row = fields
            .into_iter()
            .map(|f| parse_int(f).map_err(|m| Error::parse(no, m)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        prev_line = no;
    }
    lines.finish()?;
    IntegerLattice::new(rows).map_err(at_line(prev_line))
}

/// Parses a point given as whitespace-separated integers, e.g. `"1 -2 0"`.
pub fn parse_point(text: &str) -> Result<Point> {
    let coords = text
        .split_whitespace()
        .map(|f| parse_int(f).map_err(Error::InvalidInput))
        .collect::<Result<Vec<_>>>()?;
    if coords.is_empty() {
        return Err(Error::InvalidInput("empty point".into()));
    }
    Ok(Point(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::binary_hamming;
    use crate::lattice::lambda_n;

    #[test]
    fn code_round_trip() {
        let c = binary_hamming(2).unwrap();
        let text = write_code(&c);
        assert_eq!(text, "CODE v1\nq 2\nn 3\ncount 2\n0 0 0\n1 1 1\n");
        let back = parse_code(&text).unwrap();
        assert_eq!(back.words(), c.words());
    }

    #[test]
    fn tiling_round_trip() {
        let t = PeriodicTiling::new(2, 12, vec![Point::from([3, 2]), Point::zero(2)]).unwrap();
        let text = write_tiling(&t);
        assert_eq!(text, "TILING v1\nn 2\np 12\ncount 2\n0 0\n3 2\n");
        assert_eq!(parse_tiling(&text).unwrap(), t);
        // unsorted input is accepted and sorted
        let unsorted = "TILING v1\nn 2\np 12\ncount 2\n3 2\n0 0";
        assert_eq!(parse_tiling(unsorted).unwrap(), t);
    }

    #[test]
    fn lattice_round_trip() {
        let l = lambda_n(1).unwrap();
        let text = write_lattice(&l);
        assert_eq!(text, "LATTICE v1\nn 2\n3 2\n0 4\n");
        let back = parse_lattice(&text).unwrap();
        assert_eq!(back.generator(), l.generator());
        let neg = parse_lattice("LATTICE v1\nn 1\n-5\n").unwrap();
        assert_eq!(neg.volume(), 5);
    }

    #[test]
    fn rejects_malformed_input() {
        let bad_codes = [
            "",
            "CODE v2\nq 2\nn 1\ncount 0\n",
            "CODE v1\nq 4\nn 1\ncount 0\n",
            "CODE v1\nq 2\nn 0\ncount 0\n",
            "CODE v1\nq 2\nn 2\ncount 1\n0 2\n",
            "CODE v1\nq 2\nn 2\ncount 1\n0  1\n",
            "CODE v1\nq 2\nn 2\ncount 1\n0 1 \n",
            "CODE v1\nq 2\nn 2\ncount 2\n0 1\n",
            "CODE v1\nq 2\nn 2\ncount 1\n0 1\n1 1\n",
            "CODE v1\nq 2\nn 2\ncount 2\n0 1\n0 1\n",
            "CODE v1\r\nq 2\nn 1\ncount 0\n",
            "CODE v1\nq 02\nn 1\ncount 0\n",
            "CODE v1\nq +2\nn 1\ncount 0\n",
        ];
        for text in bad_codes {
            assert!(parse_code(text).is_err(), "{text:?}");
        }
        let bad_tilings = [
            "TILING v1\nn 1\np 3\ncount 0\n",
            "TILING v1\nn 1\np 4\ncount 1\n4\n",
            "TILING v1\nn 1\np 4\ncount 1\n-1\n",
            "TILING v1\nn 1\np 4\ncount 99999999999\n0\n",
        ];
        for text in bad_tilings {
            assert!(parse_tiling(text).is_err(), "{text:?}");
        }
        assert!(parse_lattice("LATTICE v1\nn 2\n1 2\n2 4\n").is_err());
        assert!(parse_lattice("LATTICE v1\nn 1\n-0\n").is_err());
    }

    #[test]
    fn duplicate_tiling_rows_are_kept() {
        let t = parse_tiling("TILING v1\nn 1\np 4\ncount 2\n0\n0\n").unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.has_duplicates());
    }

    #[test]
    fn parse_error_lines() {
        match parse_code("CODE v1\nq 2\nn 2\ncount 1\n0 7\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn points() {
        assert_eq!(parse_point(" 1  -2 0 ").unwrap(), Point::from([1, -2, 0]));
        assert!(parse_point("").is_err());
        assert!(parse_point("1 x").is_err());
        assert!(parse_point("+1").is_err());
    }
}
