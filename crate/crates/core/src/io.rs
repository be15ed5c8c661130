//! Columnar text format for field states.
//!
//! ```text
//! # infoflow field-state
//! # n_sites=8
//! # chorus=1.0000000000000000e0
//! # chronon=1.0000000000000000e0
//! # mu=2.9999999999999999e-1
//! x,re_plus,im_plus,re_minus,im_minus
//! 0,...
//! # end of report
//! ```
//!
//! Floats carry 17 significant digits, so a write/read cycle reproduces every
//! `f64` exactly.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{FieldState, LatticeParams, MassCoupling};

pub const END_MARKER: &str = "# end of report";
const TITLE: &str = "# infoflow field-state";
const COLUMNS: &str = "x,re_plus,im_plus,re_minus,im_minus";

/// 17 significant digits, scientific notation.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_field_state(
    state: &FieldState,
    params: &LatticeParams,
    mass: &MassCoupling,
) -> Result<String> {
    state.check(params)?;
    let mut out = String::new();
    let _ = writeln!(out, "{TITLE}");
    let _ = writeln!(out, "# n_sites={}", params.n_sites());
    let _ = writeln!(out, "# chorus={}", fmt_f64(params.chorus()));
    let _ = writeln!(out, "# chronon={}", fmt_f64(params.chronon()));
    let _ = writeln!(out, "# mu={}", fmt_f64(mass.mu()));
    let _ = writeln!(out, "{COLUMNS}");
    for (x, (p, m)) in state.plus.iter().zip(&state.minus).enumerate() {
        let _ = writeln!(
            out,
            "{x},{},{},{},{}",
            fmt_f64(p.re),
            fmt_f64(p.im),
            fmt_f64(m.re),
            fmt_f64(m.im)
        );
    }
    let _ = writeln!(out, "{END_MARKER}");
    Ok(out)
}

fn header_value<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    line.and_then(|l| l.strip_prefix("# "))
        .and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("missing header field {key}")))
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad float {s:?}: {e}")))
}

pub fn read_field_state(text: &str) -> Result<(FieldState, LatticeParams, MassCoupling)> {
    let mut lines = text.lines();
    if lines.next() != Some(TITLE) {
        return Err(Error::Parse("not a field-state file".into()));
    }
    let n: usize = header_value(lines.next(), "n_sites")?
        .parse()
        .map_err(|e| Error::Parse(format!("bad n_sites: {e}")))?;
    let chorus = parse_f64(header_value(lines.next(), "chorus")?)?;
    let chronon = parse_f64(header_value(lines.next(), "chronon")?)?;
    let mu = parse_f64(header_value(lines.next(), "mu")?)?;
    let params = LatticeParams::new(n, chorus, chronon)?;
    let mass = MassCoupling::new(mu)?;
    if lines.next() != Some(COLUMNS) {
        return Err(Error::Parse("missing column header".into()));
    }
    let mut state = FieldState::zeros(n);
    for x in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("truncated after {x} rows")))?;
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 5 || cols[0] != x.to_string() {
            return Err(Error::Parse(format!("malformed row {x}: {line:?}")));
        }
        state.plus[x] = Complex64::new(parse_f64(cols[1])?, parse_f64(cols[2])?);
        state.minus[x] = Complex64::new(parse_f64(cols[3])?, parse_f64(cols[4])?);
    }
    if lines.next() != Some(END_MARKER) {
        return Err(Error::Parse("missing end-of-report marker".into()));
    }
    Ok((state, params, mass))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn rejects_truncated_files() {
        let p = LatticeParams::unit(4).unwrap();
        let text = write_field_state(&FieldState::delta(4, 1, true), &p, &MassCoupling::massless()).unwrap();
        let cut: String = text.lines().take(8).map(|l| format!("{l}\n")).collect();
        assert!(matches!(read_field_state(&cut), Err(Error::Parse(_))));
        let no_marker = text.replace(END_MARKER, "");
        assert!(read_field_state(&no_marker).is_err());
    }

    proptest! {
        #[test]
        fn write_read_is_exact(
            amps in proptest::collection::vec(
                (any::<f64>(), any::<f64>(), any::<f64>(), any::<f64>()), 2..20),
            chorus in 1e-40f64..1e10,
            mu in 0.0f64..=1.0,
        ) {
            let amps: Vec<_> = amps.into_iter()
                .map(|(a, b, c, d)| {
                    let f = |x: f64| if x.is_finite() { x } else { 0.0 };
                    (f(a), f(b), f(c), f(d))
                })
                .collect();
            let n = 2 * amps.len();
            let mut s = FieldState::zeros(n);
            for (i, (a, b, c, d)) in amps.iter().enumerate() {
                s.plus[2 * i] = Complex64::new(*a, *b);
                s.minus[2 * i + 1] = Complex64::new(*c, *d);
            }
            let p = LatticeParams::new(n, chorus, chorus * 3.3).unwrap();
            let m = MassCoupling::new(mu).unwrap();
            let (s2, p2, m2) = read_field_state(&write_field_state(&s, &p, &m).unwrap()).unwrap();
            for (a, b) in s.plus.iter().chain(&s.minus).zip(s2.plus.iter().chain(&s2.minus)) {
                prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
                prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
            prop_assert_eq!(p, p2);
            prop_assert_eq!(m, m2);
        }
    }
}
