//! Order-3 truncated Taylor (jet) arithmetic over the complex numbers.
//!
//! Internally a jet stores Taylor coefficients `c[k] = f^(k)(z0)/k!`, which
//! keeps products and quotients as plain Cauchy convolutions. Derivatives are
//! recovered at the boundary (`d2 = 2 c2`, `d3 = 6 c3`).

use num_complex::Complex64;

use super::ast::{print_expr, Builtin, Expr};
use crate::error::{Error, Result};
use crate::quad::{principal_log, principal_pow, principal_sqrt};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Value and derivatives of order 1..3 at one point. Entries above the
/// requested order are NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub d0: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
    pub order: u8,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct TJet(pub [Complex64; 4]);

impl TJet {
    pub(crate) fn constant(c: Complex64) -> Self {
        TJet([c, ZERO, ZERO, ZERO])
    }

    pub(crate) fn variable(z: Complex64) -> Self {
        TJet([z, ONE, ZERO, ZERO])
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.0[0]
    }

    pub(crate) fn deriv(&self, k: usize) -> Complex64 {
        match k {
            0 => self.0[0],
            1 => self.0[1],
            2 => 2.0 * self.0[2],
            3 => 6.0 * self.0[3],
            _ => unreachable!(),
        }
    }

    pub(crate) fn neg(self) -> Self {
        TJet([-self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    pub(crate) fn add(self, o: Self) -> Self {
        TJet([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }

    pub(crate) fn sub(self, o: Self) -> Self {
        TJet([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }

    pub(crate) fn mul(self, o: Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        TJet([
            a[0] * b[0],
            a[0] * b[1] + a[1] * b[0],
            a[0] * b[2] + a[1] * b[1] + a[2] * b[0],
            a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
        ])
    }

    /// Quotient by the usual triangular recursion; caller guards `b0`.
    pub(crate) fn div_unchecked(self, o: Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        let q0 = a[0] / b[0];
        let q1 = (a[1] - q0 * b[1]) / b[0];
        let q2 = (a[2] - q0 * b[2] - q1 * b[1]) / b[0];
        let q3 = (a[3] - q0 * b[3] - q1 * b[2] - q2 * b[1]) / b[0];
        TJet([q0, q1, q2, q3])
    }

    /// Composition f(u) from the raw derivatives d[k] = f^(k)(u0).
    fn compose(self, d: [Complex64; 4]) -> Self {
        let u1 = self.0[1];
        let u2 = self.0[2];
        let u3 = self.0[3];
        TJet([
            d[0],
            d[1] * u1,
            d[1] * u2 + 0.5 * d[2] * u1 * u1,
            d[1] * u3 + d[2] * u1 * u2 + d[3] * u1 * u1 * u1 / 6.0,
        ])
    }

    fn int_pow(self, n: u32) -> Self {
        let mut acc = TJet::constant(ONE);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

fn err_at(node: &Expr, reason: impl Into<String>) -> Error {
    Error::Eval {
        subexpr: print_expr(node),
        reason: reason.into(),
    }
}

fn small_nonneg_int(e: Complex64) -> Option<u32> {
    if e.im == 0.0 && e.re >= 0.0 && e.re.fract() == 0.0 && e.re <= 1024.0 {
        Some(e.re as u32)
    } else {
        None
    }
}

pub(crate) fn eval_taylor(node: &Expr, z: Complex64) -> Result<TJet> {
    match node {
        Expr::Const(c) => Ok(TJet::constant(*c)),
        Expr::Var => Ok(TJet::variable(z)),
        Expr::Neg(a) => Ok(eval_taylor(a, z)?.neg()),
        Expr::Add(a, b) => Ok(eval_taylor(a, z)?.add(eval_taylor(b, z)?)),
        Expr::Sub(a, b) => Ok(eval_taylor(a, z)?.sub(eval_taylor(b, z)?)),
        Expr::Mul(a, b) => Ok(eval_taylor(a, z)?.mul(eval_taylor(b, z)?)),
        Expr::Div(a, b) => {
            let num = eval_taylor(a, z)?;
            let den = eval_taylor(b, z)?;
            if den.value().norm() < 1e-300 {
                return Err(err_at(node, "division by a value with modulus < 1e-300"));
            }
            Ok(num.div_unchecked(den))
        }
        Expr::Pow(base, e) => {
            let u = eval_taylor(base, z)?;
            let u0 = u.value();
            if u0 == ZERO {
                match small_nonneg_int(*e) {
                    Some(n) => Ok(u.int_pow(n)),
                    None => Err(err_at(node, "power of 0 with non-integer exponent")),
                }
            } else {
                let p = principal_pow(u0, *e).map_err(|err| err_at(node, err.to_string()))?;
                let d1 = *e * p / u0;
                let d2 = *e * (*e - ONE) * p / (u0 * u0);
                let d3 = *e * (*e - ONE) * (*e - 2.0 * ONE) * p / (u0 * u0 * u0);
                Ok(u.compose([p, d1, d2, d3]))
            }
        }
        Expr::Call(b, a) => {
            let u = eval_taylor(a, z)?;
            let u0 = u.value();
            match b {
                Builtin::Exp => {
                    let e = u0.exp();
                    Ok(u.compose([e, e, e, e]))
                }
                Builtin::Log => {
                    if u0 == ZERO {
                        return Err(err_at(node, "log of 0"));
                    }
                    let l = principal_log(u0).map_err(|err| err_at(node, err.to_string()))?;
                    let inv = ONE / u0;
                    Ok(u.compose([l, inv, -inv * inv, 2.0 * inv * inv * inv]))
                }
                Builtin::Sqrt => {
                    if u0 == ZERO {
                        if u.0[1] == ZERO && u.0[2] == ZERO && u.0[3] == ZERO {
                            return Ok(TJet::constant(ZERO));
                        }
                        return Err(err_at(node, "sqrt at 0 has singular derivatives"));
                    }
                    let s = principal_sqrt(u0);
                    let d1 = 0.5 / s;
                    let d2 = -0.25 / (s * u0);
                    let d3 = 0.375 / (s * u0 * u0);
                    Ok(u.compose([s, d1, d2, d3]))
                }
                Builtin::Sin => {
                    let (s, c) = (u0.sin(), u0.cos());
                    Ok(u.compose([s, c, -s, -c]))
                }
                Builtin::Cos => {
                    let (s, c) = (u0.sin(), u0.cos());
                    Ok(u.compose([c, -s, -c, s]))
                }
            }
        }
    }
}

pub(crate) fn jet_from_taylor(t: TJet, order: u8) -> Jet3 {
    let nan = Complex64::new(f64::NAN, f64::NAN);
    Jet3 {
        d0: t.deriv(0),
        d1: if order >= 1 { t.deriv(1) } else { nan },
        d2: if order >= 2 { t.deriv(2) } else { nan },
        d3: if order >= 3 { t.deriv(3) } else { nan },
        order,
    }
}
