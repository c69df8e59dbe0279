//! Expression tree for analytic functions of one complex variable `z`.
//!
//! Constant-only subtrees are folded at construction time, so a compound node
//! always has at least one non-constant child. This is what makes the
//! canonical printer round-trip: `(1.5 + 2*i)` parses back to a single
//! constant node rather than a sum.

use num_complex::Complex64;

use crate::error::Result;
use crate::quad::{principal_log, principal_pow, principal_sqrt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Exp => "exp",
            Builtin::Log => "log",
            Builtin::Sqrt => "sqrt",
            Builtin::Sin => "sin",
            Builtin::Cos => "cos",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "exp" => Builtin::Exp,
            "log" => Builtin::Log,
            "sqrt" => Builtin::Sqrt,
            "sin" => Builtin::Sin,
            "cos" => Builtin::Cos,
            _ => return None,
        })
    }
}

/// One node of a parsed expression. `Pow` exponents are always constants.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Complex64),
    Call(Builtin, Box<Expr>),
}

pub(crate) fn as_const(e: &Expr) -> Option<Complex64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

fn finite(c: Complex64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

fn fold2(
    a: Expr,
    b: Expr,
    f: impl Fn(Complex64, Complex64) -> Option<Complex64>,
    mk: impl Fn(Box<Expr>, Box<Expr>) -> Expr,
) -> Expr {
    if let (Some(x), Some(y)) = (as_const(&a), as_const(&b)) {
        if let Some(v) = f(x, y) {
            if finite(v) {
                return Expr::Const(v);
            }
        }
    }
    mk(Box::new(a), Box::new(b))
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    fold2(a, b, |x, y| Some(x + y), Expr::Add)
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    fold2(a, b, |x, y| Some(x - y), Expr::Sub)
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    fold2(a, b, |x, y| Some(x * y), Expr::Mul)
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    fold2(
        a,
        b,
        |x, y| if y.norm() < 1e-300 { None } else { Some(x / y) },
        Expr::Div,
    )
}

pub(crate) fn neg(a: Expr) -> Expr {
    if let Some(x) = as_const(&a) {
        return Expr::Const(-x);
    }
    Expr::Neg(Box::new(a))
}

pub(crate) fn pow(base: Expr, e: Complex64) -> Expr {
    if let Some(x) = as_const(&base) {
        if let Ok(v) = principal_pow(x, e) {
            if finite(v) {
                return Expr::Const(v);
            }
        }
    }
    Expr::Pow(Box::new(base), e)
}

pub(crate) fn scalar_call(b: Builtin, x: Complex64) -> Result<Complex64> {
    Ok(match b {
        Builtin::Exp => x.exp(),
        Builtin::Log => principal_log(x)?,
        Builtin::Sqrt => principal_sqrt(x),
        Builtin::Sin => x.sin(),
        Builtin::Cos => x.cos(),
    })
}

pub(crate) fn call(b: Builtin, a: Expr) -> Expr {
    if let Some(x) = as_const(&a) {
        if let Ok(v) = scalar_call(b, x) {
            if finite(v) {
                return Expr::Const(v);
            }
        }
    }
    Expr::Call(b, Box::new(a))
}

fn fmt_real(v: f64) -> String {
    // shortest round-trip representation; always reparses to the same f64
    format!("{}", v)
}

fn fmt_const(c: Complex64) -> String {
    if c.im == 0.0 {
        fmt_real(c.re)
    } else {
        format!("({} + {}*i)", fmt_real(c.re), fmt_real(c.im))
    }
}

/// Canonical printed form. Compound nodes are fully parenthesized so the
/// output reparses to a structurally identical tree.
pub fn print_expr(e: &Expr) -> String {
    match e {
        Expr::Const(c) => fmt_const(*c),
        Expr::Var => "z".to_string(),
        Expr::Neg(a) => format!("(-{})", print_expr(a)),
        Expr::Add(a, b) => format!("({} + {})", print_expr(a), print_expr(b)),
        Expr::Sub(a, b) => format!("({} - {})", print_expr(a), print_expr(b)),
        Expr::Mul(a, b) => format!("({} * {})", print_expr(a), print_expr(b)),
        Expr::Div(a, b) => format!("({} / {})", print_expr(a), print_expr(b)),
        Expr::Pow(a, e) => format!("({} ^ {})", print_expr(a), fmt_const(*e)),
        Expr::Call(f, a) => format!("{}({})", f.name(), print_expr(a)),
    }
}
