//! Outward-rounded dyadic interval arithmetic for certifying root branches.
//!
//! A [`RealInterval`] at precision p holds integers lo ≤ hi and stands for
//! [lo·2⁻ᵖ, hi·2⁻ᵖ]. A [`ComplexInterval`] additionally records when its real
//! or imaginary part is known to be exactly zero, which is what makes the
//! branch choice for real and purely imaginary radicands decidable.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealInterval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn ceil_sqrt(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &(&r * &r) == n {
        r
    } else {
        r + 1
    }
}

impl RealInterval {
    pub fn zero(prec: u32) -> Self {
        Self {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            prec,
        }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let scaled = q.numer() << prec;
        Self {
            lo: scaled.div_floor(q.denom()),
            hi: ceil_div(&scaled, q.denom()),
            prec,
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    fn scale(&self) -> BigInt {
        BigInt::from(1) << self.prec
    }

    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prods = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let min = prods.iter().min().expect("nonempty");
        let max = prods.iter().max().expect("nonempty");
        let s = self.scale();
        Self {
            lo: min.div_floor(&s),
            hi: ceil_div(max, &s),
            prec: self.prec,
        }
    }

    pub fn half(&self) -> Self {
        let two = BigInt::from(2);
        Self {
            lo: self.lo.div_floor(&two),
            hi: ceil_div(&self.hi, &two),
            prec: self.prec,
        }
    }

    /// Enclosure of √x over the non-negative part of the interval.
    pub fn sqrt(&self) -> Self {
        let s = self.scale();
        let lo = if self.lo.is_positive() {
            (&self.lo * &s).sqrt()
        } else {
            BigInt::zero()
        };
        let hi = if self.hi.is_positive() {
            ceil_sqrt(&(&self.hi * &s))
        } else {
            BigInt::zero()
        };
        Self {
            lo,
            hi,
            prec: self.prec,
        }
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Whether `self` lies inside `o`.
    pub fn within(&self, o: &Self) -> bool {
        o.lo <= self.lo && self.hi <= o.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) / 2;
        // keep 60 significant bits before converting
        let shift = self.prec.saturating_sub(60);
        let m = (mid >> shift).to_f64().unwrap_or(f64::NAN);
        m / 2f64.powi((self.prec - shift) as i32)
    }

    /// log₂ of the width, or `None` for a point interval.
    pub fn width_log2(&self) -> Option<i64> {
        let w = &self.hi - &self.lo;
        (!w.is_zero()).then(|| w.bits() as i64 - self.prec as i64)
    }
}

/// A box in ℂ with exact-zero flags for either coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    re: RealInterval,
    im: RealInterval,
    re_zero: bool,
    im_zero: bool,
}

/// Outcome of a branch decision that needs more precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Undecided;

impl ComplexInterval {
    pub fn real(re: RealInterval) -> Self {
        let prec = re.prec;
        let re_zero = re.is_exact_zero();
        Self {
            re,
            im: RealInterval::zero(prec),
            re_zero,
            im_zero: true,
        }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::real(RealInterval::from_rational(q, prec))
    }

    pub fn re(&self) -> &RealInterval {
        &self.re
    }

    pub fn im(&self) -> &RealInterval {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im_zero
    }

    pub fn is_imaginary(&self) -> bool {
        self.re_zero
    }

    fn normalized(mut self) -> Self {
        if self.re_zero {
            self.re = RealInterval::zero(self.re.prec);
        }
        if self.im_zero {
            self.im = RealInterval::zero(self.im.prec);
        }
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
            re_zero: self.re_zero && o.re_zero,
            im_zero: self.im_zero && o.im_zero,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        Self {
            re: self.re.neg(),
            im: self.im.neg(),
            re_zero: self.re_zero,
            im_zero: self.im_zero,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.re, &self.im, &o.re, &o.im);
        let (az, bz, cz, dz) = (self.re_zero, self.im_zero, o.re_zero, o.im_zero);
        Self {
            re: a.mul(c).sub(&b.mul(d)),
            im: a.mul(d).add(&b.mul(c)),
            re_zero: (az || cz) && (bz || dz),
            im_zero: (az || dz) && (bz || cz),
        }
        .normalized()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn within(&self, o: &Self) -> bool {
        self.re.within(&o.re) && self.im.within(&o.im)
    }

    /// The square root with Im > 0, or Im = 0 and Re ≥ 0.
    pub fn sqrt_branch(&self) -> Result<Self, Undecided> {
        let prec = self.re.prec;
        if self.im_zero {
            if self.re_zero {
                return Ok(self.clone());
            }
            if self.re.is_positive() {
                return Ok(Self::real(self.re.sqrt()));
            }
            if self.re.is_negative() {
                return Ok(Self {
                    re: RealInterval::zero(prec),
                    im: self.re.neg().sqrt(),
                    re_zero: true,
                    im_zero: false,
                });
            }
            return Err(Undecided);
        }
        let modulus = self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt();
        let a = modulus.add(&self.re).half().sqrt();
        let b = modulus.sub(&self.re).half().sqrt();
        let principal_im_positive = if self.im.is_positive() {
            true
        } else if self.im.is_negative() {
            false
        } else {
            return Err(Undecided);
        };
        // principal root is a + i·sign(Im z)·b; flip it into the upper half plane
        Ok(if principal_im_positive {
            Self {
                re: a,
                im: b,
                re_zero: false,
                im_zero: false,
            }
        } else {
            Self {
                re: a.neg(),
                im: b,
                re_zero: false,
                im_zero: false,
            }
        })
    }

    pub fn summary(&self) -> IntervalSummary {
        IntervalSummary {
            re: self.re.midpoint_f64(),
            im: self.im.midpoint_f64(),
            width_log2: self.re.width_log2().max(self.im.width_log2()),
            exact_real: self.im_zero,
            exact_imaginary: self.re_zero,
        }
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.12} + {:.12}i",
            self.re.midpoint_f64(),
            self.im.midpoint_f64()
        )
    }
}

/// Human-readable digest of an enclosure for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalSummary {
    pub re: f64,
    pub im: f64,
    /// `None` when both parts are exact.
    pub width_log2: Option<i64>,
    pub exact_real: bool,
    pub exact_imaginary: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_two_enclosure() {
        let two = RealInterval::from_rational(&q(2, 1), 64);
        let r = two.sqrt();
        assert!(r.mul(&r).overlaps(&two));
        assert!((r.midpoint_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn branch_policy() {
        let minus_four = ComplexInterval::from_rational(&q(-4, 1), 64);
        let r = minus_four.sqrt_branch().unwrap();
        assert!(r.is_imaginary());
        assert!((r.im().midpoint_f64() - 2.0).abs() < 1e-12);
        // √(−i) has Im > 0 under the policy: −e^{−iπ/4}
        let minus_i = ComplexInterval {
            re: RealInterval::zero(64),
            im: RealInterval::from_rational(&q(-1, 1), 64),
            re_zero: true,
            im_zero: false,
        };
        let s = minus_i.sqrt_branch().unwrap();
        assert!(s.im().is_positive() && s.re().is_negative());
        assert!(s.mul(&s).overlaps(&minus_i));
    }

    #[test]
    fn fuzzy_real_part_is_undecided() {
        let z = ComplexInterval::real(RealInterval {
            lo: BigInt::from(-1),
            hi: BigInt::from(1),
            prec: 8,
        });
        assert_eq!(z.sqrt_branch(), Err(Undecided));
    }
}
