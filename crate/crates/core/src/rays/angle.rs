//! External angles in `R/Z`, exact when rational.

use crate::error::DynError;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    /// `num/den` in lowest terms with `0 <= num < den`.
    Rational { num: u64, den: u64 },
    /// A real angle in `[0, 1)`.
    Real(f64),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Largest denominator accepted; doubling and halving stay in `u64`.
pub const MAX_DENOMINATOR: u64 = 1 << 60;

impl Angle {
    pub fn rational(num: u64, den: u64) -> Result<Angle, DynError> {
        if den == 0 || den > MAX_DENOMINATOR {
            return Err(DynError::InvalidArgument(format!("bad denominator {den}")));
        }
        let num = num % den;
        let g = gcd(num, den);
        Ok(Angle::Rational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn real(t: f64) -> Angle {
        let t = t.rem_euclid(1.0);
        Angle::Real(if t >= 1.0 { 0.0 } else { t })
    }

    pub fn value(&self) -> f64 {
        match *self {
            Angle::Rational { num, den } => num as f64 / den as f64,
            Angle::Real(t) => t,
        }
    }

    /// `2t mod 1`.
    pub fn double(&self) -> Angle {
        match *self {
            Angle::Rational { num, den } => {
                let n = (num * 2) % den;
                if den % 2 == 0 {
                    Angle::rational(n, den).expect("denominator already valid")
                } else {
                    Angle::Rational { num: n, den }
                }
            }
            Angle::Real(t) => Angle::real(2.0 * t),
        }
    }

    /// The two preimages `t/2` and `(t+1)/2` under doubling.
    pub fn halves(&self) -> Result<[Angle; 2], DynError> {
        match *self {
            Angle::Rational { num, den } => Ok([Angle::rational(num, 2 * den)?, Angle::rational(num + den, 2 * den)?]),
            Angle::Real(t) => Ok([Angle::Real(t / 2.0), Angle::Real(t / 2.0 + 0.5)]),
        }
    }

    /// `(preperiod, period)` under doubling; `None` for real angles.
    pub fn orbit_type(&self) -> Option<(usize, usize)> {
        let Angle::Rational { .. } = self else { return None };
        let mut seen: Vec<Angle> = Vec::new();
        let mut a = *self;
        loop {
            if let Some(i) = seen.iter().position(|s| *s == a) {
                return Some((i, seen.len() - i));
            }
            seen.push(a);
            a = a.double();
        }
    }

    /// Total order on `[0, 1)`, exact between rationals.
    pub fn cmp_value(&self, other: &Angle) -> Ordering {
        match (*self, *other) {
            (Angle::Rational { num: a, den: b }, Angle::Rational { num: c, den: d }) => {
                (a as u128 * d as u128).cmp(&(c as u128 * b as u128))
            }
            _ => self.value().total_cmp(&other.value()),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Rational { num, den } => write!(f, "{num}/{den}"),
            Angle::Real(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for Angle {
    type Err = DynError;

    /// Accepts `p/q` or a decimal.
    fn from_str(s: &str) -> Result<Angle, DynError> {
        let bad = || DynError::InvalidArgument(format!("cannot parse angle '{s}'"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let q: u64 = q.trim().parse().map_err(|_| bad())?;
                Angle::rational(p, q)
            }
            None => {
                let t: f64 = s.trim().parse().map_err(|_| bad())?;
                if !t.is_finite() {
                    return Err(bad());
                }
                Ok(Angle::real(t))
            }
        }
    }
}
