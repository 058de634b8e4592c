//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerators/denominators: scale via bit lengths
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Render as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents and semiconvergents).
pub fn rationalize(x: f64, max_den: u64) -> Rational {
    if !x.is_finite() || x.abs() > 1e18 {
        return Rational::zero();
    }
    let target = x.abs();
    let max_den = max_den.max(1) as u128;
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let mut v = target;
    for _ in 0..64 {
        let a = v.floor() as u128;
        let q2 = a * q1 + q0;
        if q2 > max_den {
            // largest admissible semiconvergent, kept only if it is closer
            let k = (max_den - q0) / q1;
            if k > 0 {
                let (ps, qs) = (k * p1 + p0, k * q1 + q0);
                let err_c = (p1 as f64 / q1 as f64 - target).abs();
                let err_s = (ps as f64 / qs as f64 - target).abs();
                if err_s < err_c {
                    p1 = ps;
                    q1 = qs;
                }
            }
            break;
        }
        let p2 = a * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - v.floor();
        if frac < 1e-12 || (p1 as f64 / q1 as f64 - target).abs() < f64::EPSILON * target {
            break;
        }
        v = 1.0 / frac;
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    if x < 0.0 {
        -r
    } else {
        r
    }
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRational {
    pub re: Rational,
    pub im: Rational,
}

impl CRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        let (a, b) = self.to_f64();
        a.hypot(b)
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rational(&self.re))
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{}{}i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
        }
    }
}

impl<'a> Add<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn add(self, o: &CRational) -> CRational {
        CRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn sub(self, o: &CRational) -> CRational {
        CRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a CRational> for &'a CRational {
    type Output = CRational;
    fn mul(self, o: &CRational) -> CRational {
        CRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl<'a> Div<&'a CRational> for &'a CRational {
    type Output = CRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &CRational) -> CRational {
        let inv = o.inv().expect("division by zero complex rational");
        self * &inv
    }
}

impl Neg for CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational::new(-self.re, -self.im)
    }
}
