use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `|z|` accepted by [`kummer_m`]. The series is accumulated with a
/// separate log-scale, so the only limit is the iteration cap.
pub const KUMMER_Z_MAX: f64 = 5000.0;

/// Iteration cap for every hypergeometric series in this module.
pub const KUMMER_MAX_TERMS: usize = 10_000;

const REL_STOP: f64 = 1e-16;
const STOP_RUN: usize = 3;
const RESCALE: f64 = 1e250;

/// Arguments of the confluent hypergeometric function `M(a, b, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerParams {
    pub a: f64,
    pub b: f64,
    pub z: f64,
}

impl KummerParams {
    pub const fn new(a: f64, b: f64, z: f64) -> Self {
        KummerParams { a, b, z }
    }
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.trunc()
}

/// Value as `mantissa * exp(ln_scale)`.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    mantissa: f64,
    ln_scale: f64,
}

/// Plain Maclaurin series `sum (a)_n / (b)_n z^n / n!`.
fn series(a: f64, b: f64, z: f64) -> Result<Scaled> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut ln_scale = 0.0;
    let mut quiet = 0;
    for n in 0..KUMMER_MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) / (b + nf) * z / (nf + 1.0);
        term *= ratio;
        if term == 0.0 {
            // a + n hit zero: the polynomial case terminates exactly
            return Ok(Scaled {
                mantissa: sum,
                ln_scale,
            });
        }
        sum += term;
        if term.abs() > RESCALE || sum.abs() > RESCALE {
            term /= RESCALE;
            sum /= RESCALE;
            ln_scale += RESCALE.ln();
        }
        if term.abs() < REL_STOP * sum.abs() && ratio.abs() < 1.0 {
            quiet += 1;
            if quiet >= STOP_RUN {
                return Ok(Scaled {
                    mantissa: sum,
                    ln_scale,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Precision(format!(
        "M({a}, {b}, {z}) series did not converge in {KUMMER_MAX_TERMS} terms"
    )))
}

fn evaluate(a: f64, b: f64, z: f64) -> Result<Scaled> {
    if z == 0.0 || a == 0.0 {
        return Ok(Scaled {
            mantissa: 1.0,
            ln_scale: 0.0,
        });
    }
    if is_nonpositive_integer(a) || z > 0.0 {
        return series(a, b, z);
    }
    // z < 0: M(a, b, z) = e^z M(b - a, b, -z), whose terms share a sign when b - a > 0.
    let inner = evaluate(b - a, b, -z)?;
    Ok(Scaled {
        mantissa: inner.mantissa,
        ln_scale: inner.ln_scale + z,
    })
}

fn check(p: &KummerParams) -> Result<()> {
    if !(p.a.is_finite() && p.b.is_finite() && p.z.is_finite()) {
        return Err(Error::domain(format!("non-finite Kummer arguments {p:?}")));
    }
    if is_nonpositive_integer(p.b) {
        return Err(Error::domain(format!(
            "M(a, b, z) has poles at b = {}, a non-positive integer",
            p.b
        )));
    }
    if p.z.abs() > KUMMER_Z_MAX {
        return Err(Error::domain(format!(
            "|z| = {} exceeds the supported range {KUMMER_Z_MAX}",
            p.z.abs()
        )));
    }
    Ok(())
}

/// `(ln |M(a, b, z)|, sign)`. Use this when `M` would overflow a double.
pub fn ln_kummer_m(p: KummerParams) -> Result<(f64, f64)> {
    check(&p)?;
    let s = evaluate(p.a, p.b, p.z)?;
    if s.mantissa == 0.0 {
        return Ok((f64::NEG_INFINITY, 0.0));
    }
    Ok((s.ln_scale + s.mantissa.abs().ln(), s.mantissa.signum()))
}

/// Kummer's confluent hypergeometric function `M(a, b, z)`.
///
/// Negative `z` goes through `M(a, b, z) = e^z M(b - a, b, -z)` first, and
/// non-positive integer `a` is summed as the terminating polynomial.
pub fn kummer_m(p: KummerParams) -> Result<f64> {
    check(&p)?;
    let s = evaluate(p.a, p.b, p.z)?;
    let v = s.mantissa * s.ln_scale.exp();
    if !v.is_finite() {
        return Err(Error::domain(format!(
            "M({}, {}, {}) overflows a double; use ln_kummer_m",
            p.a, p.b, p.z
        )));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: f64, b: f64, z: f64) -> f64 {
        kummer_m(KummerParams::new(a, b, z)).unwrap()
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(m(2.3, 0.5, 0.0), 1.0);
        assert_eq!(m(-1.7, 1.5, 0.0), 1.0);
        for z in [-4.0, 0.3, 7.0] {
            assert_eq!(m(0.0, 0.5, z), 1.0);
        }
    }

    #[test]
    fn two_term_polynomial() {
        // M(-1, 1/2, -3x) = 1 - z / b = 1 + 6x
        for x in [0.0, 0.5, 2.0] {
            assert!((m(-1.0, 0.5, -3.0 * x) - (1.0 + 6.0 * x)).abs() < 1e-14);
        }
    }

    #[test]
    fn exponential_special_case() {
        // M(a, a, z) = e^z
        for z in [-20.0, -1.0, 3.0, 30.0] {
            let v = m(1.25, 1.25, z);
            assert!((v / z.exp() - 1.0).abs() < 1e-12, "{z}: {v}");
        }
    }

    #[test]
    fn large_argument_in_log_space() {
        // M(b, b, z) = e^z; z = 900 overflows a double
        let (ln, sign) = ln_kummer_m(KummerParams::new(0.5, 0.5, 900.0)).unwrap();
        assert_eq!(sign, 1.0);
        assert!((ln - 900.0).abs() < 1e-9);
        assert!(kummer_m(KummerParams::new(0.5, 0.5, 900.0)).is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(kummer_m(KummerParams::new(1.0, -2.0, 1.0)).is_err());
        assert!(kummer_m(KummerParams::new(1.0, 0.0, 1.0)).is_err());
        assert!(kummer_m(KummerParams::new(f64::NAN, 0.5, 1.0)).is_err());
        assert!(kummer_m(KummerParams::new(1.0, 0.5, 1e5)).is_err());
    }
}
