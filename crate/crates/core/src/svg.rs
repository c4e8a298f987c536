//! SVG 1.1 drawing of a verified two-dimensional tiling window.
//!
//! Each tile is filled with one palette color chosen greedily (in codeword
//! order) to differ from its already colored neighbours; codeword cells get
//! a dot. The second coordinate grows upwards.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::upsilon_offsets;
use crate::tiling::{PeriodicTiling, VerificationReport};

const CELL: u64 = 24;
const MARGIN: u64 = 12;
const PALETTE: [&str; 8] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

/// Largest period drawn.
pub const MAX_SVG_PERIOD: u64 = 512;

pub fn render_svg(t: &PeriodicTiling, report: &VerificationReport) -> Result<String> {
    if t.dim() != 2 {
        return Err(Error::InvalidDimension(format!(
            "SVG export needs n = 2, got {}",
            t.dim()
        )));
    }
    if report.n != 2 || report.p != t.period() || report.codewords != t.len() {
        return Err(Error::InvalidInput("report does not belong to this tiling".into()));
    }
    if !report.is_tiling {
        return Err(Error::InvalidInput("refusing to draw an unverified tiling".into()));
    }
    let p = t.period();
    if p > MAX_SVG_PERIOD {
        return Err(Error::Guard(format!("period {p} exceeds {MAX_SVG_PERIOD}")));
    }
    let shape = upsilon_offsets(2)?;

    // owner[cell index] = tile index
    let mut owner = vec![usize::MAX; (p * p) as usize];
    for (k, x) in t.codewords().iter().enumerate() {
        for d in shape.offsets() {
            let c = x.sub(d).rem_euclid(p);
            owner[t.cell_index(&c) as usize] = k;
        }
    }
    debug_assert!(owner.iter().all(|&o| o != usize::MAX));

    let mut neighbours = vec![Vec::new(); t.len()];
    for y in 0..p {
        for x in 0..p {
            let a = owner[(x + y * p) as usize];
            for (nx, ny) in [((x + 1) % p, y), (x, (y + 1) % p)] {
                let b = owner[(nx + ny * p) as usize];
                if a != b {
                    neighbours[a].push(b);
                    neighbours[b].push(a);
                }
            }
        }
    }
    let mut color = vec![usize::MAX; t.len()];
    for k in 0..t.len() {
        let used: Vec<usize> = neighbours[k].iter().map(|&j| color[j]).collect();
        color[k] = (0..).find(|c| !used.contains(c)).expect("unbounded range");
    }

    let side = p * CELL + 2 * MARGIN;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{side}\" height=\"{side}\" viewBox=\"0 0 {side} {side}\">"
    );
    let _ = writeln!(
        out,
        "<title>tiling of Z_{p}^2 by {} tiles</title>",
        t.len()
    );
    out.push_str("<g stroke=\"#333333\" stroke-width=\"1\">\n");
    for y in 0..p {
        for x in 0..p {
            let k = owner[(x + y * p) as usize];
            let (px, py) = screen(x, y, p);
            let _ = writeln!(
                out,
                "<rect x=\"{px}\" y=\"{py}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{}\"/>",
                PALETTE[color[k] % PALETTE.len()]
            );
        }
    }
    out.push_str("</g>\n<g fill=\"#000000\">\n");
    for x in t.codewords() {
        let (px, py) = screen(x[0] as u64, x[1] as u64, p);
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            px + CELL / 2,
            py + CELL / 2,
            CELL / 5
        );
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

fn screen(x: u64, y: u64, p: u64) -> (u64, u64) {
    (MARGIN + x * CELL, MARGIN + (p - 1 - y) * CELL)
}
