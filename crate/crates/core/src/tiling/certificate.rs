//! Admissible dimensions and divisibility certificates.
//!
//! An integer tiling by the half-cross is periodic with period 4 when `n`
//! is odd and with period 12 when `n` is even, so `|Υ_n| = 2^n (n+1)` must
//! divide `4^n` or `12^n` respectively. When it does not, no tiling exists.

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Admissibility {
    /// `n = base^t - 1`.
    Admissible { base: u32, t: u32 },
    Inadmissible,
}

/// Whether `n = 2^t - 1` or `n = 3^t - 1` for some `t >= 1`.
pub fn admissible_dimension(n: u64) -> Admissibility {
    for base in [2u64, 3] {
        let mut pow = base;
        let mut t = 1;
        while pow - 1 <= n {
            if pow - 1 == n {
                return Admissibility::Admissible {
                    base: base as u32,
                    t,
                };
            }
            match pow.checked_mul(base) {
                Some(v) => pow = v,
                None => break,
            }
            t += 1;
        }
    }
    Admissibility::Inadmissible
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    NoTiling,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonexistenceCertificate {
    pub n: u64,
    pub forced_period: u64,
    #[serde(serialize_with = "decimal")]
    pub shape_size: BigUint,
    #[serde(serialize_with = "decimal")]
    pub window_size: BigUint,
    pub divides: bool,
    pub conclusion: Conclusion,
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl NonexistenceCertificate {
    /// One-line human summary, e.g. `no tiling: forced period 4, 192 ∤ 1024`.
    pub fn summary(&self) -> String {
        match self.conclusion {
            Conclusion::NoTiling => format!(
                "no tiling: forced period {}, {} ∤ {}",
                self.forced_period, self.shape_size, self.window_size
            ),
            Conclusion::Inconclusive => format!(
                "inconclusive: forced period {}, {} | {}",
                self.forced_period, self.shape_size, self.window_size
            ),
        }
    }
}

pub fn nonexistence_certificate(n: u64) -> NonexistenceCertificate {
    let forced_period = if n % 2 == 1 { 4u64 } else { 12 };
    let shape_size = (BigUint::from(1u32) << n) * BigUint::from(n + 1);
    let window_size = BigUint::from(forced_period).pow(n as u32);
    let divides = n >= 1 && (&window_size % &shape_size) == BigUint::from(0u32);
    NonexistenceCertificate {
        n,
        forced_period,
        shape_size,
        window_size,
        divides,
        conclusion: if divides {
            Conclusion::Inconclusive
        } else {
            Conclusion::NoTiling
        },
    }
}
