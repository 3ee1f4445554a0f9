//! The primitive catalog and its closed-form leakage results.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::probdist::{bit_string, Alphabet, JointDistribution, BOT};
use crate::quantum::spectral_entropy;
use crate::{Error, Result};

/// Largest supported `r` for randomized oblivious transfer.
pub const MAX_ROT_R: u32 = 12;
/// Largest supported `r` for string oblivious transfer.
pub const MAX_OT_R: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum PrimitiveKind {
    /// Randomized OT of `r`-bit strings with erasure: Bob gets Alice's string or ⊥.
    Rot { r: u32 },
    /// 1-out-of-2 OT of `r`-bit strings.
    Ot { r: u32 },
    /// Shared AND.
    Sand,
    /// 1-out-of-2 bit OT whose output bit is flipped with probability `p`.
    Otp { p: f64 },
    /// Independent uniform bits.
    Indep,
    /// A shared uniform bit.
    Equal,
}

impl PrimitiveKind {
    pub fn id(&self) -> String {
        match self {
            Self::Rot { r } => format!("rot/{r}"),
            Self::Ot { r } => format!("ot/{r}"),
            Self::Sand => "sand".into(),
            Self::Otp { p } => format!("otp/{p}"),
            Self::Indep => "indep".into(),
            Self::Equal => "equal".into(),
        }
    }
}

impl fmt::Display for PrimitiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for PrimitiveKind {
    type Err = Error;

    /// Accepts `rot/3`, `primitive://rot/3`, `ot/1`, `sand`, `otp/0.25`,
    /// `indep` and `equal`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("primitive://").unwrap_or(s);
        let (name, param) = match body.split_once('/') {
            Some((n, p)) => (n, Some(p)),
            None => (body, None),
        };
        let unknown = || Error::UnknownPrimitive(s.to_string());
        let int = |p: Option<&str>| -> Result<u32> {
            p.ok_or_else(unknown)?.parse().map_err(|_| unknown())
        };
        match (name, param) {
            ("rot", p) => Ok(Self::Rot { r: int(p)? }),
            ("ot", p) => Ok(Self::Ot { r: int(p)? }),
            ("sand", None) => Ok(Self::Sand),
            ("otp", Some(p)) => Ok(Self::Otp {
                p: p.parse().map_err(|_| unknown())?,
            }),
            ("indep", None) => Ok(Self::Indep),
            ("equal", None) => Ok(Self::Equal),
            _ => Err(unknown()),
        }
    }
}

/// A catalog primitive together with its distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimitiveSpec {
    pub kind: PrimitiveKind,
    pub dist: JointDistribution,
}

impl PrimitiveSpec {
    pub fn build(kind: PrimitiveKind) -> Result<Self> {
        match kind {
            PrimitiveKind::Rot { r } => make_rot(r),
            PrimitiveKind::Ot { r } => make_ot(r),
            PrimitiveKind::Sand => Ok(make_sand()),
            PrimitiveKind::Otp { p } => make_otp(p),
            PrimitiveKind::Indep => Ok(make_indep()),
            PrimitiveKind::Equal => Ok(make_equal()),
        }
    }

    pub fn parse(id: &str) -> Result<Self> {
        Self::build(id.parse()?)
    }

    pub fn id(&self) -> String {
        self.kind.id()
    }
}

fn table(x: Alphabet, y: Alphabet, f: impl Fn(usize, usize) -> f64) -> JointDistribution {
    let rows = (0..x.len())
        .map(|i| (0..y.len()).map(|j| f(i, j)).collect())
        .collect();
    JointDistribution::new(x, y, rows).expect("catalog tables are normalized")
}

/// `P(x, y) = 2^{−r−1}` if `y = x` or `y = ⊥`.
pub fn make_rot(r: u32) -> Result<PrimitiveSpec> {
    if !(1..=MAX_ROT_R).contains(&r) {
        return Err(Error::ParameterOutOfRange {
            name: "r",
            value: r as f64,
            reason: "rot needs 1 <= r <= 12",
        });
    }
    let n = 1usize << r;
    let mut ys: Vec<String> = (0..n).map(|v| bit_string(v, r)).collect();
    ys.push(BOT.to_string());
    let weight = 0.5 / n as f64;
    let dist = table(
        Alphabet::bit_strings(r),
        Alphabet::new(ys)?,
        |x, y| if y == x || y == n { weight } else { 0.0 },
    );
    Ok(PrimitiveSpec {
        kind: PrimitiveKind::Rot { r },
        dist,
    })
}

/// Labels `"c:y"` ordered so that the index is `c·2^r + y`.
fn ot_outputs(r: u32) -> Alphabet {
    let n = 1usize << r;
    Alphabet::new((0..2 * n).map(|k| format!("{}:{}", k / n, bit_string(k % n, r))))
        .expect("distinct labels")
}

/// `P(x₀x₁, (c, y)) = 2^{−2r−1}` if `y = x_c`.
pub fn make_ot(r: u32) -> Result<PrimitiveSpec> {
    if !(1..=MAX_OT_R).contains(&r) {
        return Err(Error::ParameterOutOfRange {
            name: "r",
            value: r as f64,
            reason: "ot needs 1 <= r <= 6",
        });
    }
    let n = 1usize << r;
    let weight = 0.5 / (n * n) as f64;
    let dist = table(Alphabet::bit_strings(2 * r), ot_outputs(r), |x, k| {
        let (c, y) = (k / n, k % n);
        let xc = if c == 0 { x / n } else { x % n };
        if y == xc {
            weight
        } else {
            0.0
        }
    });
    Ok(PrimitiveSpec {
        kind: PrimitiveKind::Ot { r },
        dist,
    })
}

/// `P(xa, yb) = 1/8` if `x ∧ y = a ⊕ b`.
pub fn make_sand() -> PrimitiveSpec {
    let dist = table(Alphabet::bit_strings(2), Alphabet::bit_strings(2), |i, j| {
        let (x, a) = (i >> 1, i & 1);
        let (y, b) = (j >> 1, j & 1);
        if x & y == a ^ b {
            0.125
        } else {
            0.0
        }
    });
    PrimitiveSpec {
        kind: PrimitiveKind::Sand,
        dist,
    }
}

/// Bit OT with the received bit flipped with probability `p`:
/// `(1−p)/8` if `y = x_c`, `p/8` otherwise.
pub fn make_otp(p: f64) -> Result<PrimitiveSpec> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            reason: "otp needs 0 < p < 1/2",
        });
    }
    let dist = table(Alphabet::bit_strings(2), ot_outputs(1), |x, k| {
        let (c, y) = (k / 2, k % 2);
        let xc = if c == 0 { x >> 1 } else { x & 1 };
        if y == xc {
            (1.0 - p) / 8.0
        } else {
            p / 8.0
        }
    });
    Ok(PrimitiveSpec {
        kind: PrimitiveKind::Otp { p },
        dist,
    })
}

pub fn make_indep() -> PrimitiveSpec {
    PrimitiveSpec {
        kind: PrimitiveKind::Indep,
        dist: table(Alphabet::bit_strings(1), Alphabet::bit_strings(1), |_, _| 0.25),
    }
}

pub fn make_equal() -> PrimitiveSpec {
    PrimitiveSpec {
        kind: PrimitiveKind::Equal,
        dist: table(Alphabet::bit_strings(1), Alphabet::bit_strings(1), |x, y| {
            if x == y {
                0.5
            } else {
                0.0
            }
        }),
    }
}

/// Catalog entries exported by default.
pub fn catalog() -> Vec<PrimitiveKind> {
    vec![
        PrimitiveKind::Rot { r: 1 },
        PrimitiveKind::Rot { r: 2 },
        PrimitiveKind::Ot { r: 1 },
        PrimitiveKind::Sand,
        PrimitiveKind::Otp { p: 0.05 },
        PrimitiveKind::Otp { p: 0.25 },
        PrimitiveKind::Indep,
        PrimitiveKind::Equal,
    ]
}

/// Spectrum of `ρ_A` for ROT^r as `(eigenvalue, multiplicity)` pairs, with
/// the resulting entropy and leakage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RotClosedForm {
    pub r: u32,
    pub spectrum: Vec<(f64, u64)>,
    pub s_a: f64,
    pub delta: f64,
}

/// `ρ_A` has eigenvalue `1/2 + 2^{−(r+1)}` once and `2^{−(r+1)}` with
/// multiplicity `2^r − 1`; `I(X;Y) = r/2`.
pub fn rot_leakage_closed(r: u32) -> RotClosedForm {
    let small = 0.5f64.powi(r as i32 + 1);
    let big = 0.5 + small;
    let mult = (1u64 << r) - 1;
    let s_a = -big * big.log2() + mult as f64 * small * (r as f64 + 1.0);
    RotClosedForm {
        r,
        spectrum: vec![(big, 1), (small, mult)],
        s_a,
        delta: s_a - r as f64 / 2.0,
    }
}

/// Spectrum and entropy of Alice's reduced state in the one-phase OT
/// embedding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OtClosedForm {
    pub omega: f64,
    /// `{(1 ± cos(ω/4))/4, (1 ± sin(ω/4))/4}`, descending.
    pub spectrum: Vec<f64>,
    pub s_aprime: f64,
}

pub fn ot_entropy_closed(omega: f64) -> OtClosedForm {
    let (s, c) = (omega / 4.0).sin_cos();
    let mut spectrum = vec![
        0.25 * (1.0 + c),
        0.25 * (1.0 - c),
        0.25 * (1.0 + s),
        0.25 * (1.0 - s),
    ];
    spectrum.sort_by(|a, b| b.total_cmp(a));
    let s_aprime = spectral_entropy(&spectrum);
    OtClosedForm {
        omega,
        spectrum,
        s_aprime,
    }
}

/// Lower bound on the leakage of noisy OT, valid below
/// [`OTP_BOUND_THRESHOLD`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OtpBound {
    pub p: f64,
    pub value: f64,
    pub valid: bool,
}

/// `1/2 − 1/(2√2)`.
pub const OTP_BOUND_THRESHOLD: f64 = 0.5 - std::f64::consts::FRAC_1_SQRT_2 / 2.0;

/// `(1/2 − p − √(p(1−p)))² / (32 ln 2)` for `0 ≤ p < 1/2 − 1/(2√2)`; zero
/// with `valid = false` above the threshold.
pub fn otp_lower_bound(p: f64) -> Result<OtpBound> {
    if !(0.0..0.5).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p,
            reason: "bound needs 0 <= p < 1/2",
        });
    }
    if p >= OTP_BOUND_THRESHOLD {
        return Ok(OtpBound {
            p,
            value: 0.0,
            valid: false,
        });
    }
    let gap = 0.5 - p - (p * (1.0 - p)).sqrt();
    Ok(OtpBound {
        p,
        value: gap * gap / (32.0 * std::f64::consts::LN_2),
        valid: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probdist::{binary_entropy, entropy_x, is_trivial, mutual_information};

    #[test]
    fn rot_tables() {
        let one = make_rot(1).unwrap().dist;
        assert_eq!((one.nx(), one.ny()), (2, 3));
        assert_eq!(one.support().len(), 4);
        assert!(one.probs().iter().all(|&v| v == 0.0 || v == 0.25));
        assert_eq!(one.y_alphabet().labels()[2], BOT);
        let two = make_rot(2).unwrap().dist;
        assert_eq!((two.nx(), two.ny()), (4, 5));
        assert!(two.probs().iter().filter(|&&v| v > 0.0).all(|&v| v == 0.125));
        assert!((entropy_x(&two) - 2.0).abs() < 1e-12);
        assert!(make_rot(0).is_err() && make_rot(13).is_err());
    }

    #[test]
    fn ot_tables() {
        let one = make_ot(1).unwrap().dist;
        assert_eq!(one.support().len(), 8);
        assert!((mutual_information(&one) - 1.0).abs() < 1e-12);
        let two = make_ot(2).unwrap().dist;
        assert_eq!(two.support().len(), 32);
        assert!((mutual_information(&two) - 2.0).abs() < 1e-12);
        assert!(!is_trivial(&one).trivial);
        assert!(make_ot(7).is_err());
    }

    #[test]
    fn sand_table() {
        let s = make_sand().dist;
        assert_eq!(s.support().len(), 8);
        for m in s.marginal_x().iter().chain(&s.marginal_y()) {
            assert!((m - 0.25).abs() < 1e-15);
        }
        assert!((mutual_information(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn otp_table() {
        let d = make_otp(0.25).unwrap().dist;
        assert!(d.probs().iter().all(|&v| v == 0.75 / 8.0 || v == 0.25 / 8.0));
        let p = 0.1;
        let m = mutual_information(&make_otp(p).unwrap().dist);
        assert!((m - (1.0 - binary_entropy(p))).abs() < 1e-12);
        assert!(make_otp(0.0).is_err() && make_otp(0.5).is_err());
        let tiny = make_otp(1e-12).unwrap().dist;
        let ot = make_ot(1).unwrap().dist;
        assert!(tiny.total_variation(&ot).unwrap() < 1e-12);
    }

    #[test]
    fn parses_identifiers() {
        assert_eq!("rot/3".parse::<PrimitiveKind>().unwrap(), PrimitiveKind::Rot { r: 3 });
        assert_eq!(
            "primitive://rot/3".parse::<PrimitiveKind>().unwrap(),
            PrimitiveKind::Rot { r: 3 }
        );
        assert_eq!("sand".parse::<PrimitiveKind>().unwrap(), PrimitiveKind::Sand);
        assert_eq!(
            "otp/0.25".parse::<PrimitiveKind>().unwrap(),
            PrimitiveKind::Otp { p: 0.25 }
        );
        assert!("rot".parse::<PrimitiveKind>().is_err());
        assert!("foo/1".parse::<PrimitiveKind>().is_err());
        for k in catalog() {
            assert_eq!(k.id().parse::<PrimitiveKind>().unwrap(), k);
        }
    }

    #[test]
    fn rot_closed_form_values() {
        let one = rot_leakage_closed(1);
        assert!((one.delta - (binary_entropy(0.25) - 0.5)).abs() < 1e-15);
        let eight = rot_leakage_closed(8);
        assert!((eight.delta - 0.981_551_739_955_416_6).abs() < 1e-12);
        for r in 1..=10 {
            let c = rot_leakage_closed(r);
            let total: f64 = c.spectrum.iter().map(|(v, m)| v * *m as f64).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ot_closed_form_at_zero() {
        let c = ot_entropy_closed(0.0);
        assert_eq!(c.spectrum, vec![0.5, 0.25, 0.25, 0.0]);
        assert_eq!(c.s_aprime, 1.5);
    }

    #[test]
    fn otp_bound_values() {
        let zero = otp_lower_bound(0.0).unwrap();
        assert!((zero.value - 1.0 / (128.0 * std::f64::consts::LN_2)).abs() < 1e-15);
        let edge = otp_lower_bound(OTP_BOUND_THRESHOLD).unwrap();
        assert!(!edge.valid && edge.value == 0.0);
        assert!(otp_lower_bound(0.05).unwrap().value > 0.0);
        assert!(otp_lower_bound(-0.1).is_err());
    }
}
