//! Exact scalar arithmetic: the field of rational functions in one
//! indeterminate `t` with integer coefficients.
//!
//! The deformation parameters are realized as integer powers of `t`, chosen in
//! [`QzContext`] so that `z^N = q^{-1}` holds identically. All arithmetic is
//! exact; fractions are kept reduced with a sign-normalized denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `t` with integer coefficients, stored in ascending order of
/// degree with no trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    /// The monomial `c * t^k`.
    pub fn term(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Number of leading zero coefficients, i.e. the largest `k` with `t^k`
    /// dividing `self`. Zero for the zero polynomial.
    fn t_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            coeffs.push(a + b);
        }
        IntPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Gcd of all coefficients, always non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn divide_by_int(&self, d: &BigInt) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        }
    }

    /// Exact division; panics if the division leaves a remainder, which
    /// indicates an internal invariant violation.
    fn divide_exact(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "exact division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len();
        assert!(rem.len() >= dd);
        let mut quot = vec![BigInt::zero(); rem.len() - dd + 1];
        let lead = &d.coeffs[dd - 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, dc) in d.coeffs.iter().enumerate() {
                let prod = &qc * dc;
                rem[k + j] -= prod;
            }
            quot[k] = qc;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::from_coeffs(quot)
    }

    /// Pseudo-remainder of `self` by `d` (both nonzero, deg self >= deg d).
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.clone();
        let dd = d.degree().unwrap();
        let lead = d.leading_coeff();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            let rl = r.leading_coeff();
            // r <- lead * r - rl * t^shift * d
            let mut coeffs = vec![BigInt::zero(); rd + 1];
            for (i, c) in r.coeffs.iter().enumerate() {
                coeffs[i] = &lead * c;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                coeffs[shift + j] -= &rl * dc;
            }
            r = IntPoly::from_coeffs(coeffs);
        }
        r
    }

    /// Gcd with positive leading coefficient, primitive up to integer content
    /// of the inputs. Content in `t` is split off first so that the frequent
    /// monomial-vs-monomial case never enters the remainder loop.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.abs_lead();
        }
        if other.is_zero() {
            return self.abs_lead();
        }
        let va = self.t_valuation();
        let vb = other.t_valuation();
        let v = va.min(vb);
        let mut a = self.shift_down(va);
        let mut b = other.shift_down(vb);
        let ca = a.content();
        let cb = b.content();
        let cg = ca.gcd(&cb);
        a = a.divide_by_int(&ca);
        b = b.divide_by_int(&cb);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        // Primitive remainder sequence.
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() {
                IntPoly::zero()
            } else {
                let c = r.content();
                r.divide_by_int(&c)
            };
        }
        let mut g = a;
        if g.leading_coeff().is_negative() {
            g = g.neg();
        }
        IntPoly::term(cg, v).mul(&g)
    }

    fn abs_lead(&self) -> IntPoly {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Reduced fraction of integer polynomials in `t`.
///
/// Invariants: the denominator is nonzero with positive leading coefficient,
/// and numerator and denominator are coprime. Equality is therefore
/// componentwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: IntPoly, mut den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let mut num = num;
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.divide_exact(&g);
            den = den.divide_exact(&g);
        }
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn integer(n: i64) -> Self {
        RatFunc {
            num: IntPoly::constant(BigInt::from(n)),
            den: IntPoly::one(),
        }
    }

    /// The Laurent monomial `t^k`.
    pub fn t_pow(k: i64) -> Self {
        if k >= 0 {
            RatFunc {
                num: IntPoly::term(BigInt::one(), k as usize),
                den: IntPoly::one(),
            }
        } else {
            RatFunc {
                num: IntPoly::one(),
                den: IntPoly::term(BigInt::one(), (-k) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::reduced(num, den)
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.divide_exact(&g1) };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.divide_exact(&g1) };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.divide_exact(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.divide_exact(&g2) };
        let mut num = n1.mul(&n2);
        let mut den = d1.mul(&d2);
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(RatFunc { num, den })
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        if k == 0 {
            return Ok(RatFunc::one());
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_terms = self.num.coeffs.iter().filter(|c| !c.is_zero()).count();
        if num_terms > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let den_terms = self.den.coeffs.iter().filter(|c| !c.is_zero()).count();
        if den_terms > 1 {
            write!(f, " / ({})", self.den)
        } else {
            write!(f, " / {}", self.den)
        }
    }
}

/// Matrix size together with the realization of the deformation parameters:
/// `q = t^a` and `z = t^b` with `b*N = -a`, so `z^N = q^{-1}` is an identity.
#[derive(Debug)]
pub struct QzContext {
    n: usize,
    q_pow: i64,
    z_pow: i64,
    pub(crate) caches: crate::engine::Caches,
}

impl QzContext {
    /// Default realization: `z = t`, `q = t^{-N}`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_powers(n, -(n as i64), 1)
    }

    pub fn with_powers(n: usize, q_pow: i64, z_pow: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidMatrixSize(n));
        }
        if z_pow * (n as i64) != -q_pow {
            return Err(Error::InvalidExponents { q_pow, z_pow, n });
        }
        Ok(QzContext {
            n,
            q_pow,
            z_pow,
            caches: Default::default(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q` as a rational function of `t`.
    pub fn q(&self) -> RatFunc {
        RatFunc::t_pow(self.q_pow)
    }

    /// `z` as a rational function of `t`.
    pub fn z(&self) -> RatFunc {
        RatFunc::t_pow(self.z_pow)
    }

    pub fn q_pow(&self, k: i64) -> RatFunc {
        RatFunc::t_pow(self.q_pow * k)
    }

    pub fn z_pow(&self, k: i64) -> RatFunc {
        RatFunc::t_pow(self.z_pow * k)
    }

    /// `q - q^{-1}`, nonzero and invertible in every valid context.
    pub fn q_minus_q_inv(&self) -> RatFunc {
        self.q_pow(1).sub(&self.q_pow(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(
            IntPoly::from_coeffs(num.iter().map(|&c| BigInt::from(c)).collect()),
            IntPoly::from_coeffs(den.iter().map(|&c| BigInt::from(c)).collect()),
        )
        .unwrap()
    }

    #[test]
    fn reduction_and_sign_normalization() {
        // (2t^2 - 2) / (4t - 4) = (t + 1) / 2
        let f = rf(&[-2, 0, 2], &[-4, 4]);
        assert_eq!(f, rf(&[1, 1], &[2]));
        // denominator sign flips into the numerator
        let g = RatFunc::new(IntPoly::one(), IntPoly::constant(BigInt::from(-3))).unwrap();
        assert_eq!(g, rf(&[-1], &[3]));
    }

    #[test]
    fn default_context_exponents() {
        let ctx = QzContext::new(2).unwrap();
        assert_eq!(ctx.z(), RatFunc::t_pow(1));
        assert_eq!(ctx.q(), RatFunc::t_pow(-2));
        assert!(QzContext::new(1).is_err());
        assert!(QzContext::with_powers(2, -2, 2).is_err());
    }

    #[test]
    fn q_inverse_and_zn_constraint() {
        let ctx = QzContext::new(3).unwrap();
        let prod = ctx.q().mul(&ctx.q().inv().unwrap());
        assert!(prod.is_one());
        // z^N * q = 1 for N = 3
        let zn = ctx.z().pow(3).unwrap();
        assert!(zn.mul(&ctx.q()).is_one());
    }

    #[test]
    fn q_minus_q_inv_invertible() {
        for n in 2..=4 {
            let ctx = QzContext::new(n).unwrap();
            let d = ctx.q_minus_q_inv();
            assert!(!d.is_zero());
            assert!(d.mul(&d.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn invert_zero_is_error() {
        assert!(RatFunc::zero().inv().is_err());
    }

    #[test]
    fn display_form() {
        let f = rf(&[1, 0, -1], &[0, 2]);
        assert_eq!(f.to_string(), "(-t^2 + 1) / 2*t");
        assert_eq!(RatFunc::t_pow(-3).to_string(), "1 / t^3");
        assert_eq!(RatFunc::zero().to_string(), "0");
    }

    fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
        let poly = prop::collection::vec(-4i64..=4, 0..4)
            .prop_map(|cs| IntPoly::from_coeffs(cs.into_iter().map(BigInt::from).collect()));
        (poly.clone(), poly)
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in arb_ratfunc(), g in arb_ratfunc(), h in arb_ratfunc()) {
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            if !f.is_zero() {
                prop_assert!(f.mul(&f.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn sub_add_round_trip(f in arb_ratfunc(), g in arb_ratfunc()) {
            prop_assert_eq!(f.add(&g).sub(&g), f);
        }
    }
}
