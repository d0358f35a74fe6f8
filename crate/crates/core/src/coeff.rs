//! Scalars: the cyclotomic field Q(q) with q a primitive cube root of unity.
//!
//! Every element is kept in the canonical form `a + b*q` with `a`, `b`
//! arbitrary-precision rationals, using `q^2 = -1 - q` to fold higher powers.
//! Arithmetic is exact; division by zero is an explicit error, never a panic.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

/// Exact rational scalar component.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("cannot parse scalar at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An element `a + b*q` of Q(q), with `q^2 + q + 1 = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycQ {
    a: Rat,
    b: Rat,
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

impl CycQ {
    pub fn new(a: Rat, b: Rat) -> Self {
        CycQ { a, b }
    }

    pub fn zero() -> Self {
        CycQ::default()
    }

    pub fn one() -> Self {
        CycQ::from_int(1)
    }

    /// The distinguished primitive cube root of unity.
    pub fn q() -> Self {
        CycQ::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        CycQ::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn from_rat(a: Rat) -> Self {
        CycQ::new(a, Rat::zero())
    }

    /// The rational `p/r` as a scalar.
    pub fn rational(p: i64, r: i64) -> Self {
        CycQ::from_rat(rat(p, r))
    }

    /// `q^k` for any integer `k` (reduced mod 3, so `q^-1 = q^2 = -1 - q`).
    pub fn q_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => CycQ::one(),
            1 => CycQ::q(),
            _ => CycQ::new(-Rat::one(), -Rat::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// True when the q-component vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn rat_part(&self) -> &Rat {
        &self.a
    }

    pub fn q_part(&self) -> &Rat {
        &self.b
    }

    /// Galois conjugate (q -> q^2): `a - b - b*q`.
    pub fn conj(&self) -> Self {
        CycQ::new(&self.a - &self.b, -self.b.clone())
    }

    /// Field norm `self * conj(self) = a^2 - a*b + b^2`, a rational.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(CycQ::new(c.a / &n, c.b / n))
    }

    pub fn div(&self, other: &CycQ) -> Result<Self, CoeffError> {
        Ok(self * &other.inv()?)
    }

    /// Parse the canonical textual form: sums of `p`, `p/r`, `p*q`, `q`
    /// with optional signs, e.g. `-1-q`, `1/2`, `2*q`, `1+1/3*q`.
    pub fn parse(s: &str) -> Result<Self, CoeffError> {
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let mut out = CycQ::zero();
        let err = |pos: usize, msg: &str| CoeffError::Parse {
            pos,
            msg: msg.to_string(),
        };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(err(pos, "empty scalar".into()));
        }
        let mut first = true;
        while pos < bytes.len() {
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            let mut sign = 1i64;
            match bytes[pos] {
                b'+' => {
                    pos += 1;
                }
                b'-' => {
                    sign = -1;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err(pos, "expected '+' or '-' between terms")),
            }
            first = false;
            skip_ws(&mut pos);
            // term: rational ('*' 'q')? | 'q'
            if pos < bytes.len() && bytes[pos] == b'q' {
                pos += 1;
                out.b += Rat::from_integer(BigInt::from(sign));
                continue;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(err(pos, "expected digits or 'q'"));
            }
            let numer: BigInt = s[start..pos].parse().unwrap();
            let mut value = Rat::from_integer(numer);
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                skip_ws(&mut pos);
                let dstart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == dstart {
                    return Err(err(pos, "expected denominator digits"));
                }
                let denom: BigInt = s[dstart..pos].parse().unwrap();
                if denom.is_zero() {
                    return Err(err(dstart, "zero denominator"));
                }
                value /= Rat::from_integer(denom);
                skip_ws(&mut pos);
            }
            if sign < 0 {
                value = -value;
            }
            if pos < bytes.len() && bytes[pos] == b'*' {
                let star = pos;
                pos += 1;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'q' {
                    pos += 1;
                    out.b += value;
                    continue;
                }
                return Err(err(star + 1, "expected 'q' after '*' in scalar"));
            }
            out.a += value;
        }
        Ok(out)
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        if !self.a.is_zero() {
            s.push_str(&fmt_rat(&self.a));
        }
        if !self.b.is_zero() {
            let mag = self.b.abs();
            if self.b.is_negative() {
                s.push('-');
            } else if !self.a.is_zero() {
                s.push('+');
            }
            if !mag.is_one() {
                s.push_str(&fmt_rat(&mag));
                s.push('*');
            }
            s.push('q');
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for CycQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycQ({self})")
    }
}

impl std::str::FromStr for CycQ {
    type Err = CoeffError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CycQ::parse(s)
    }
}

impl Add for &CycQ {
    type Output = CycQ;
    fn add(self, rhs: &CycQ) -> CycQ {
        CycQ::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &CycQ {
    type Output = CycQ;
    fn sub(self, rhs: &CycQ) -> CycQ {
        CycQ::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

// (a + b q)(c + d q) = ac - bd + (ad + bc - bd) q, using q^2 = -1 - q.
impl Mul for &CycQ {
    type Output = CycQ;
    fn mul(self, rhs: &CycQ) -> CycQ {
        let bd = &self.b * &rhs.b;
        CycQ::new(
            &self.a * &rhs.a - &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - &bd,
        )
    }
}

impl Neg for &CycQ {
    type Output = CycQ;
    fn neg(self) -> CycQ {
        CycQ::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for CycQ {
            type Output = CycQ;
            fn $method(self, rhs: CycQ) -> CycQ {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycQ> for CycQ {
            type Output = CycQ;
            fn $method(self, rhs: &CycQ) -> CycQ {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycQ {
    type Output = CycQ;
    fn neg(self) -> CycQ {
        -&self
    }
}

impl AddAssign<&CycQ> for CycQ {
    fn add_assign(&mut self, rhs: &CycQ) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&CycQ> for CycQ {
    fn sub_assign(&mut self, rhs: &CycQ) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&CycQ> for CycQ {
    fn mul_assign(&mut self, rhs: &CycQ) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn product_of_roots_folds() {
        // q * q = -1 - q
        assert_eq!(&CycQ::q() * &CycQ::q(), CycQ::new(rat(-1, 1), rat(-1, 1)));
    }

    #[test]
    fn inverse_of_q() {
        assert_eq!(CycQ::q().inv().unwrap(), CycQ::new(rat(-1, 1), rat(-1, 1)));
        assert_eq!(CycQ::q_pow(-1), CycQ::q().inv().unwrap());
    }

    #[test]
    fn root_of_unity_relation() {
        // 1 + q + q^2 = 0
        let sum = CycQ::one() + CycQ::q() + CycQ::q_pow(2);
        assert!(sum.is_zero());
    }

    #[test]
    fn q_pow_cancels() {
        for k in -9i64..=9 {
            let prod = CycQ::q_pow(k) * CycQ::q_pow(-k);
            assert!(prod.is_one(), "q^{k} * q^-{k} != 1");
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(CycQ::zero().inv(), Err(CoeffError::DivisionByZero));
        assert_eq!(
            CycQ::one().div(&CycQ::zero()),
            Err(CoeffError::DivisionByZero)
        );
    }

    #[test]
    fn rendering_matches_grammar() {
        assert_eq!(CycQ::zero().to_string(), "0");
        assert_eq!(CycQ::rational(-1, 2).to_string(), "-1/2");
        assert_eq!(CycQ::q().to_string(), "q");
        assert_eq!((-CycQ::q()).to_string(), "-q");
        assert_eq!((CycQ::one() + CycQ::q()).to_string(), "1+q");
        assert_eq!(CycQ::q_pow(2).to_string(), "-1-q");
        assert_eq!((CycQ::from_int(2) * CycQ::q()).to_string(), "2*q");
        assert_eq!(
            (CycQ::rational(1, 3) * CycQ::q() + CycQ::from_int(2)).to_string(),
            "2+1/3*q"
        );
    }

    #[test]
    fn parsing_accepts_the_grammar() {
        for (text, want) in [
            ("0", CycQ::zero()),
            ("-1/2", CycQ::rational(-1, 2)),
            ("q", CycQ::q()),
            ("-q", -CycQ::q()),
            ("1+q", CycQ::one() + CycQ::q()),
            ("-1-q", CycQ::q_pow(2)),
            ("2*q", CycQ::from_int(2) * CycQ::q()),
            ("2+1/3*q", CycQ::from_int(2) + CycQ::rational(1, 3) * CycQ::q()),
            (" 1 + 2 * q ", CycQ::one() + CycQ::from_int(2) * CycQ::q()),
        ] {
            assert_eq!(CycQ::parse(text).unwrap(), want, "parse {text:?}");
        }
        assert!(CycQ::parse("").is_err());
        assert!(CycQ::parse("1//2").is_err());
        assert!(CycQ::parse("1/0").is_err());
        assert!(CycQ::parse("q*q").is_err());
        assert!(CycQ::parse("2*").is_err());
    }

    fn small_cycq() -> impl Strategy<Value = CycQ> {
        (
            -20i64..=20,
            1i64..=12,
            -20i64..=20,
            1i64..=12,
        )
            .prop_map(|(an, ad, bn, bd)| CycQ::new(rat(an, ad), rat(bn, bd)))
    }

    proptest! {
        #[test]
        fn field_axioms_hold(x in small_cycq(), y in small_cycq(), z in small_cycq()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &x * &y + &x * &z);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn inverse_is_two_sided(x in small_cycq()) {
            prop_assume!(!x.is_zero());
            let inv = x.inv().unwrap();
            prop_assert!((&x * &inv).is_one());
            prop_assert!((&inv * &x).is_one());
        }

        #[test]
        fn display_parse_round_trip(x in small_cycq()) {
            let text = x.to_string();
            prop_assert_eq!(CycQ::parse(&text).unwrap(), x);
        }
    }
}
