use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Boost velocity `β = num/den` in units of `c`, reduced, `|num| < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Boost {
    num: i64,
    den: i64,
}

impl Boost {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::arg(format!("boost denominator must be positive, got {den}")));
        }
        if num.abs() >= den {
            return Err(Error::arg(format!("boost {num}/{den} is not subluminal")));
        }
        if gcd(num, den) != 1 {
            return Err(Error::arg(format!("boost {num}/{den} is not reduced")));
        }
        Ok(Self { num, den })
    }

    pub fn rest() -> Self {
        Self { num: 0, den: 1 }
    }

    /// Best rational approximation with denominator at most `max_den`, taken
    /// from the continued-fraction convergents of `x` (and the semiconvergent
    /// between the last two when it is closer).
    pub fn approximate(x: f64, max_den: i64) -> Result<Self> {
        if x.is_nan() || x.abs() >= 1.0 {
            return Err(Error::arg(format!("boost {x} is not subluminal")));
        }
        if max_den < 1 {
            return Err(Error::arg("max denominator must be positive"));
        }
        let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
        let mut r = x;
        loop {
            let a = r.floor();
            let ai = a as i64;
            let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
            if q2 > max_den {
                // semiconvergent with the largest admissible partial quotient
                let k = (max_den - q0) / q1;
                let (ps, qs) = (k * p1 + p0, k * q1 + q0);
                let better = ((ps as f64 / qs as f64) - x).abs() < ((p1 as f64 / q1 as f64) - x).abs();
                let (p, q) = if better { (ps, qs) } else { (p1, q1) };
                return Self::clamp(p, q);
            }
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            let frac = r - a;
            if frac.abs() < 1e-15 || (p1 as f64 / q1 as f64 - x).abs() < 1e-15 {
                return Self::clamp(p1, q1);
            }
            r = 1.0 / frac;
        }
    }

    fn clamp(p: i64, q: i64) -> Result<Self> {
        let g = gcd(p, q).max(1);
        Self::new(p / g, q / g)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `γ = 1/√(1−β²) = q/√(q²−p²)`.
    pub fn gamma(&self) -> f64 {
        let (p, q) = (self.num as f64, self.den as f64);
        q / ((q - p) * (q + p)).sqrt()
    }

    /// Sides `(n_u, n_v)` of the boosted macro-tile, `n_u/n_v = (1+β)/(1−β)`
    /// in lowest terms. The leaf index of event `(u, v)` is `n_v·u + n_u·v`.
    pub fn tile_sides(&self) -> (i64, i64) {
        let (a, b) = (self.den + self.num, self.den - self.num);
        let g = gcd(a, b);
        (a / g, b / g)
    }

    /// Fine leaves per unit of rescaled boosted time, `√(n_u n_v)`.
    pub fn leaf_scale(&self) -> f64 {
        let (nu, nv) = self.tile_sides();
        ((nu * nv) as f64).sqrt()
    }

    /// Doppler factor `√((1+β)/(1−β))`.
    pub fn doppler(&self) -> f64 {
        let (nu, nv) = self.tile_sides();
        (nu as f64 / nv as f64).sqrt()
    }
}

impl fmt::Display for Boost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Boost {
    type Err = Error;

    /// Accepts `p/q` or a plain integer (`0`).
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad boost {s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((p, q)) => Self::new(parse(p)?, parse(q)?),
            None => Self::new(parse(s)?, 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Boost::new(3, 5).is_ok());
        assert!(Boost::new(-4, 5).is_ok());
        assert!(Boost::new(6, 10).is_err());
        assert!(Boost::new(5, 5).is_err());
        assert!(Boost::new(1, 0).is_err());
        assert!(Boost::new(1, -2).is_err());
        assert_eq!("3/5".parse::<Boost>().unwrap(), Boost::new(3, 5).unwrap());
        assert_eq!("0".parse::<Boost>().unwrap(), Boost::rest());
        assert!("3/x".parse::<Boost>().is_err());
        assert!("1/1".parse::<Boost>().is_err());
    }

    #[test]
    fn tiles_and_gamma() {
        let b = Boost::new(3, 5).unwrap();
        assert_eq!(b.tile_sides(), (4, 1));
        assert_eq!(b.leaf_scale(), 2.0);
        assert_eq!(b.doppler(), 2.0);
        assert!((b.gamma() - 1.25).abs() < 1e-15);
        assert_eq!(Boost::new(4, 5).unwrap().tile_sides(), (9, 1));
        assert_eq!(Boost::new(1, 2).unwrap().tile_sides(), (3, 1));
        assert_eq!(Boost::new(-1, 2).unwrap().tile_sides(), (1, 3));
        assert_eq!(Boost::rest().tile_sides(), (1, 1));
    }

    #[test]
    fn continued_fraction_convergents() {
        assert_eq!(Boost::approximate(0.6, 100).unwrap(), Boost::new(3, 5).unwrap());
        assert_eq!(Boost::approximate(-0.8, 100).unwrap(), Boost::new(-4, 5).unwrap());
        assert_eq!(Boost::approximate(0.0, 10).unwrap(), Boost::rest());
        // 1/√2 = [0; 1, 2, 2, 2, ...] → 2/3, 5/7, 12/17, 29/41, 70/99
        assert_eq!(Boost::approximate(std::f64::consts::FRAC_1_SQRT_2, 99).unwrap(), Boost::new(70, 99).unwrap());
        assert_eq!(Boost::approximate(std::f64::consts::FRAC_1_SQRT_2, 50).unwrap(), Boost::new(29, 41).unwrap());
        assert!(Boost::approximate(1.0, 10).is_err());
    }
}
