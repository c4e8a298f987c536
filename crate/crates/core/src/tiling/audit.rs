//! Structural checks that every integer tiling by the half-cross must pass,
//! evaluated on a concrete, verified tiling normalized so that `0` is a
//! codeword.
//!
//! Window residues are read literally: `3e_r + 2e_s` is the residue word with
//! 3 at `r`, 2 at `s` and 0 elsewhere, and `-v` is `(p - v) mod p`. Checks
//! that locate the codeword covering a specific point of `Z^n` use the true
//! offset, so those are exact in `Z^n`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{PeriodicTiling, VerificationReport};
use crate::error::{Error, Result};
use crate::geometry::{upsilon_offsets, Point, UpsilonShape};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub p: u64,
    /// `"odd"` or `"even"`.
    pub profile: &'static str,
    /// Ordered pairs `(r, s)` (1-based) with `3e_r + 2e_s` a codeword.
    pub f1: Vec<(usize, usize)>,
    /// Triples `{i, j, k}` (1-based, ascending) carrying the 2-entries of a
    /// codeword in `{0, 1, 2}^n` with exactly three 2s.
    pub f2: Vec<[usize; 3]>,
    pub spencer_bound: u64,
    pub periodic_4: Option<bool>,
    pub periodic_12: Option<bool>,
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `floor((n/3) floor((n-1)/2))`, the packing triple system bound.
pub fn spencer_bound(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    n * ((n - 1) / 2) / 3
}

fn basis_combo(n: usize, p: u64, terms: &[(usize, i64)]) -> Point {
    let mut v = vec![0i64; n];
    for &(i, c) in terms {
        v[i] = c.rem_euclid(p as i64);
    }
    Point(v)
}

/// The unique codeword (as a point of `Z^n`) whose tile contains `a`.
fn coverer(t: &PeriodicTiling, shape: &UpsilonShape, a: &Point) -> Option<Point> {
    shape
        .offsets()
        .iter()
        .map(|d| a.add(d))
        .find(|x| t.contains(x))
}

fn is_form_32(x: &[i64], r: usize) -> Option<usize> {
    if x[r] != 3 {
        return None;
    }
    let others: Vec<usize> = (0..x.len()).filter(|&i| i != r && x[i] != 0).collect();
    match others.as_slice() {
        [s] if x[*s] == 2 => Some(*s),
        _ => None,
    }
}

fn is_unit_multiple(x: &[i64], r: usize, c: i64) -> bool {
    x.iter()
        .enumerate()
        .all(|(i, &v)| if i == r { v == c } else { v == 0 })
}

pub fn structural_audit(t: &PeriodicTiling, report: &VerificationReport) -> Result<AuditReport> {
    let n = t.dim();
    let p = t.period();
    if !report.is_tiling || report.n != n || report.p != p || report.codewords != t.len() {
        return Err(Error::InvalidInput(
            "the audit needs a verified tiling (verify it first)".into(),
        ));
    }
    if !t.contains(&vec![0; n]) {
        return Err(Error::InvalidInput(
            "the audit needs 0 as a codeword (normalize first)".into(),
        ));
    }
    let shape = upsilon_offsets(n)?;
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(AuditCheck { name, passed, detail });

    let mut f1 = Vec::new();
    for r in 0..n {
        for s in 0..n {
            if r != s && t.contains(&basis_combo(n, p, &[(r, 3), (s, 2)])) {
                f1.push((r, s));
            }
        }
    }

    let mut f2 = BTreeSet::new();
    for x in t.codewords() {
        if x.iter().all(|&v| (0..=2).contains(&v)) {
            let twos: Vec<usize> = (0..n).filter(|&i| x[i] == 2).collect();
            if let [i, j, k] = twos[..] {
                f2.insert([i, j, k]);
            }
        }
    }

    // pairwise disjoint supports
    let mut disjoint = true;
    for (a, &(r1, s1)) in f1.iter().enumerate() {
        for &(r2, s2) in &f1[a + 1..] {
            if [r1, s1].iter().any(|v| *v == r2 || *v == s2) {
                disjoint = false;
            }
        }
    }
    push("f1-disjoint", disjoint, format!("{} pairs", f1.len()));

    let profile = if n % 2 == 0 { "even" } else { "odd" };
    if n % 2 == 0 {
        push(
            "f1-half-n",
            f1.len() == n / 2,
            format!("|F1| = {}, n/2 = {}", f1.len(), n / 2),
        );
        let support: BTreeSet<usize> = f1.iter().flat_map(|&(r, s)| [r, s]).collect();
        push(
            "f1-covers-all",
            support.len() == n,
            format!("{} of {} coordinates", support.len(), n),
        );
    } else {
        push(
            "f1-empty-odd",
            f1.is_empty(),
            format!("|F1| = {} for odd n", f1.len()),
        );
    }

    let missing = |pts: Vec<Point>| -> Vec<Point> { pts.into_iter().filter(|x| !t.contains(x)).collect() };
    let describe = |m: &[Point]| {
        if m.is_empty() {
            "all present".to_string()
        } else {
            format!("missing {}", m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        }
    };

    let m = missing(f1.iter().map(|&(_, s)| basis_combo(n, p, &[(s, 4)])).collect());
    push("companion-4e_s", m.is_empty(), describe(&m));
    let m = missing(f1.iter().map(|&(_, s)| basis_combo(n, p, &[(s, -4)])).collect());
    push("companion-minus-4e_s", m.is_empty(), describe(&m));
    let m = missing(
        f1.iter()
            .map(|&(r, s)| basis_combo(n, p, &[(r, -3), (s, -2)]))
            .collect(),
    );
    push("companion-minus-32", m.is_empty(), describe(&m));

    if p == 12 {
        let m = missing(
            f1.iter()
                .flat_map(|&(r, s)| {
                    [
                        basis_combo(n, p, &[(r, 6), (s, 4)]),
                        basis_combo(n, p, &[(r, 9), (s, 6)]),
                    ]
                })
                .collect(),
        );
        push("chain-12", m.is_empty(), describe(&m));
    }

    // D_1 residues must be 3e_r + 2e_s, D_2 residues must be 4e_r
    let mut bad_d1 = Vec::new();
    let mut bad_d2 = Vec::new();
    for x in t.codewords() {
        let count = |v| x.iter().filter(|&&c| c == v).count();
        let low = |allowed: &[i64]| x.iter().all(|c| allowed.contains(c));
        if low(&[0, 1, 2, 3]) && count(2) == 1 && count(3) == 1 {
            let r = x.iter().position(|&c| c == 3).unwrap_or(0);
            if is_form_32(x, r).is_none() {
                bad_d1.push(x.clone());
            }
        }
        if p > 4 && low(&[0, 1, 4]) && count(4) == 1 {
            let r = x.iter().position(|&c| c == 4).unwrap_or(0);
            if !is_unit_multiple(x, r, 4) {
                bad_d2.push(x.clone());
            }
        }
    }
    push("codewords-32", bad_d1.is_empty(), describe_bad(&bad_d1));
    push("codewords-4", bad_d2.is_empty(), describe_bad(&bad_d2));

    // the tile covering 2e_r sits at 4e_r or 3e_r + 2e_s
    let mut bad = Vec::new();
    for r in 0..n {
        let a = Point::unit(n, r).scale(2);
        match coverer(t, &shape, &a) {
            Some(x) if is_unit_multiple(&x, r, 4) || is_form_32(&x, r).is_some() => {}
            other => bad.push(format!("2e_{} <- {:?}", r + 1, other)),
        }
    }
    push("cover-2e_r", bad.is_empty(), bad.join("; "));

    // the tile covering e_i + e_j sits at 3e_i+2e_j, 3e_j+2e_i or in D_3
    let mut bad = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = Point::unit(n, i).add(&Point::unit(n, j));
            let ok = match coverer(t, &shape, &a) {
                Some(x) => {
                    is_form_32(&x, i) == Some(j)
                        || is_form_32(&x, j) == Some(i)
                        || (x[i] == 2
                            && x[j] == 2
                            && x.iter().all(|&v| (0..=2).contains(&v))
                            && x.iter().filter(|&&v| v == 2).count() == 3)
                }
                None => false,
            };
            if !ok {
                bad.push(format!("e_{}+e_{}", i + 1, j + 1));
            }
        }
    }
    push("cover-e_i+e_j", bad.is_empty(), bad.join("; "));

    // every pair in exactly one member of F1 ∪ F2
    let mut bad_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let in_f1 = f1
                .iter()
                .filter(|&&(r, s)| (r, s) == (i, j) || (r, s) == (j, i))
                .count();
            let in_f2 = f2.iter().filter(|b| b.contains(&i) && b.contains(&j)).count();
            if in_f1 + in_f2 != 1 {
                bad_pairs.push(format!("{{{},{}}} x{}", i + 1, j + 1, in_f1 + in_f2));
            }
        }
    }
    push("pair-partition", bad_pairs.is_empty(), bad_pairs.join("; "));

    let bound = spencer_bound(n as u64);
    if n % 6 != 5 {
        push(
            "spencer-bound",
            f2.len() as u64 <= bound,
            format!("|F2| = {} <= {}", f2.len(), bound),
        );
    } else {
        push(
            "spencer-bound",
            true,
            format!("not applicable for n = 5 mod 6 (|F2| = {})", f2.len()),
        );
    }

    let periodic_4 = if p % 4 == 0 { Some(t.is_periodic_with(4)?) } else { None };
    let periodic_12 = if p % 12 == 0 { Some(t.is_periodic_with(12)?) } else { None };
    if n % 2 == 1 {
        push(
            "period-4",
            periodic_4 == Some(true),
            period_detail(4, periodic_4),
        );
    } else {
        push(
            "period-12",
            periodic_12 == Some(true),
            period_detail(12, periodic_12),
        );
    }

    Ok(AuditReport {
        n,
        p,
        profile,
        f1: f1.iter().map(|&(r, s)| (r + 1, s + 1)).collect(),
        f2: f2.iter().map(|b| [b[0] + 1, b[1] + 1, b[2] + 1]).collect(),
        spencer_bound: bound,
        periodic_4,
        periodic_12,
        checks,
    })
}

fn describe_bad(bad: &[Point]) -> String {
    if bad.is_empty() {
        "ok".into()
    } else {
        bad.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn period_detail(q: u64, v: Option<bool>) -> String {
    match v {
        Some(true) => format!("{q}-periodic"),
        Some(false) => format!("not {q}-periodic"),
        None => format!("period is not a multiple of {q}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::verify;

    #[test]
    fn spencer_values() {
        assert_eq!(spencer_bound(8), 8);
        assert_eq!(spencer_bound(7), 7);
        assert_eq!(spencer_bound(2), 0);
        assert_eq!(spencer_bound(1), 0);
    }

    #[test]
    fn lambda2_window_profile() {
        let pts = [
            [0, 0], [0, 4], [0, 8], [3, 2], [3, 6], [3, 10],
            [6, 0], [6, 4], [6, 8], [9, 2], [9, 6], [9, 10],
        ];
        let t = PeriodicTiling::new(2, 12, pts.into_iter().map(Point::from).collect()).unwrap();
        let r = verify(&t).unwrap();
        let a = structural_audit(&t, &r).unwrap();
        assert_eq!(a.f1, vec![(1, 2)]);
        assert!(a.f2.is_empty());
        assert_eq!(a.periodic_12, Some(true));
        assert_eq!(a.periodic_4, Some(false));
        assert!(a.passed(), "{:#?}", a.checks);
    }

    #[test]
    fn rejects_unverified_or_unnormalized() {
        let t = PeriodicTiling::new(1, 4, vec![Point::from([1])]).unwrap();
        let r = verify(&t).unwrap();
        assert!(structural_audit(&t, &r).is_err());
        let bad = PeriodicTiling::new(1, 4, vec![]).unwrap();
        let r = verify(&bad).unwrap();
        assert!(structural_audit(&bad, &r).is_err());
    }
}
