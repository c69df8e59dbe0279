//! Parsing and jet evaluation of analytic functions on the unit disk.

mod ast;
mod jet;
mod parser;

use num_complex::Complex64;

pub use ast::{print_expr, Builtin, Expr};
pub use jet::Jet3;
pub(crate) use jet::{eval_taylor, TJet};

use crate::error::{Error, Result};

/// A parsed analytic-function expression in the single variable `z`.
#[derive(Debug, Clone)]
pub struct FunctionExpr {
    root: Expr,
    source: String,
}

impl PartialEq for FunctionExpr {
    fn eq(&self, other: &Self) -> bool {
        self.root == other.root
    }
}

impl FunctionExpr {
    pub fn parse(source: &str) -> Result<Self> {
        let root = parser::parse_source(source)?;
        Ok(FunctionExpr {
            root,
            source: source.to_string(),
        })
    }

    pub fn root(&self) -> &Expr {
        &self.root
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Canonical fully-parenthesized form; parsing it reproduces the tree.
    pub fn printed(&self) -> String {
        print_expr(&self.root)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(eval_taylor(&self.root, z)?.value())
    }

    /// Value and derivatives up to `order` (at most 3) at `z`.
    pub fn eval_jet(&self, z: Complex64, order: u8) -> Result<Jet3> {
        if order > 3 {
            return Err(Error::Precondition(format!(
                "jet order {} exceeds 3",
                order
            )));
        }
        Ok(jet::jet_from_taylor(eval_taylor(&self.root, z)?, order))
    }
}

impl std::str::FromStr for FunctionExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionExpr::parse(s)
    }
}

impl std::fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.source)
    }
}

pub const CLASS_A_TOL: f64 = 1e-10;

/// Normalization check: f(0) = 0 and f'(0) = 1 within [`CLASS_A_TOL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassAReport {
    pub is_class_a: bool,
    pub f_at_0: Complex64,
    pub fprime_at_0: Complex64,
}

pub fn class_a_check(f: &FunctionExpr) -> Result<ClassAReport> {
    let t = eval_taylor(f.root(), Complex64::new(0.0, 0.0))?;
    let f0 = t.deriv(0);
    let f1 = t.deriv(1);
    Ok(ClassAReport {
        is_class_a: f0.norm() <= CLASS_A_TOL && (f1 - Complex64::new(1.0, 0.0)).norm() <= CLASS_A_TOL,
        f_at_0: f0,
        fprime_at_0: f1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_atoms_and_precedence() {
        let f = FunctionExpr::parse("z").unwrap();
        assert_eq!(*f.root(), Expr::Var);

        // z/(1 - z^2/2) keeps the documented shape
        let f = FunctionExpr::parse("z/(1 - z^2/2)").unwrap();
        match f.root() {
            Expr::Div(a, b) => {
                assert_eq!(**a, Expr::Var);
                match &**b {
                    Expr::Sub(one, d) => {
                        assert_eq!(**one, Expr::Const(c(1.0, 0.0)));
                        match &**d {
                            Expr::Div(p, two) => {
                                assert!(matches!(&**p, Expr::Pow(_, _)));
                                assert_eq!(**two, Expr::Const(c(2.0, 0.0)));
                            }
                            other => panic!("unexpected {:?}", other),
                        }
                    }
                    other => panic!("unexpected {:?}", other),
                }
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn parse_eval_exp_minus_one_at_zero() {
        let f = FunctionExpr::parse("exp(z) - 1").unwrap();
        assert!(matches!(f.root(), Expr::Sub(_, _)));
        let v = f.eval(c(0.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn unary_minus_binds_below_caret() {
        // -z^2 at z=2 is -4, not (+4)
        let f = FunctionExpr::parse("-z^2").unwrap();
        let v = f.eval(c(2.0, 0.0)).unwrap();
        assert!((v - c(-4.0, 0.0)).norm() < 1e-15);
        let g = FunctionExpr::parse("(-z)^2").unwrap();
        let w = g.eval(c(2.0, 0.0)).unwrap();
        assert!((w - c(4.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn constant_folding_makes_complex_literals() {
        let f = FunctionExpr::parse("1.5 + 2*i").unwrap();
        assert_eq!(*f.root(), Expr::Const(c(1.5, 2.0)));
        let g = FunctionExpr::parse("pi").unwrap();
        assert_eq!(*g.root(), Expr::Const(c(std::f64::consts::PI, 0.0)));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match FunctionExpr::parse("z + qq(z)") {
            Err(Error::UnknownIdentifier { name, offset }) => {
                assert_eq!(name, "qq");
                assert_eq!(offset, 5);
            }
            other => panic!("unexpected {:?}", other),
        }
        match FunctionExpr::parse("z + ") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {:?}", other),
        }
        assert!(matches!(
            FunctionExpr::parse("z^z"),
            Err(Error::NonConstantExponent { .. })
        ));
    }

    #[test]
    fn jet_of_variable_and_exp() {
        let f = FunctionExpr::parse("z").unwrap();
        let j = f.eval_jet(c(0.3, -0.2), 3).unwrap();
        assert_eq!(j.d0, c(0.3, -0.2));
        assert_eq!(j.d1, c(1.0, 0.0));
        assert_eq!(j.d2, c(0.0, 0.0));
        assert_eq!(j.d3, c(0.0, 0.0));

        let f = FunctionExpr::parse("exp(z)").unwrap();
        let j = f.eval_jet(c(0.0, 0.0), 3).unwrap();
        for d in [j.d0, j.d1, j.d2, j.d3] {
            assert!((d - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn jet_of_example_function_at_zero() {
        // z/(1 - z^2/2) = z + z^3/2 + ..., so derivatives (0, 1, 0, 3)
        let f = FunctionExpr::parse("z/(1 - z^2/2)").unwrap();
        let j = f.eval_jet(c(0.0, 0.0), 3).unwrap();
        assert!(j.d0.norm() < 1e-15);
        assert!((j.d1 - c(1.0, 0.0)).norm() < 1e-15);
        assert!(j.d2.norm() < 1e-15);
        assert!((j.d3 - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn jet_entries_above_order_are_flagged() {
        let f = FunctionExpr::parse("exp(z)").unwrap();
        let j = f.eval_jet(c(0.1, 0.0), 1).unwrap();
        assert_eq!(j.order, 1);
        assert!(j.d2.re.is_nan() && j.d3.re.is_nan());
    }

    #[test]
    fn class_a_examples() {
        let f = FunctionExpr::parse("z").unwrap();
        assert!(class_a_check(&f).unwrap().is_class_a);

        let f = FunctionExpr::parse("z + 5").unwrap();
        let r = class_a_check(&f).unwrap();
        assert!(!r.is_class_a);
        assert!((r.f_at_0 - c(5.0, 0.0)).norm() < 1e-15);

        let f = FunctionExpr::parse("2*z").unwrap();
        let r = class_a_check(&f).unwrap();
        assert!(!r.is_class_a);
        assert!((r.fprime_at_0 - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_errors_name_the_offending_subexpression() {
        let f = FunctionExpr::parse("1/(z - z) + exp(z)").unwrap();
        match f.eval(c(0.2, 0.0)) {
            Err(Error::Eval { subexpr, reason }) => {
                assert!(subexpr.contains("z - z"), "subexpr {}", subexpr);
                assert!(reason.contains("division"), "reason {}", reason);
            }
            other => panic!("unexpected {:?}", other),
        }
        let f = FunctionExpr::parse("log(z)").unwrap();
        match f.eval(c(0.0, 0.0)) {
            Err(Error::Eval { subexpr, reason }) => {
                assert_eq!(subexpr, "log(z)");
                assert!(reason.contains("log of 0"));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn eval_is_deterministic_bitwise() {
        let f = FunctionExpr::parse("exp(z)/(1 - z^2/2) + sqrt(1 + z)").unwrap();
        let z = c(0.37, -0.21);
        let a = f.eval_jet(z, 3).unwrap();
        let b = f.eval_jet(z, 3).unwrap();
        for (x, y) in [(a.d0, b.d0), (a.d1, b.d1), (a.d2, b.d2), (a.d3, b.d3)] {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    // -- generator for the round-trip property ------------------------------

    fn gen_expr(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
        use super::ast;
        if depth == 0 || rng.gen_range(0..10) < 3 {
            return match rng.gen_range(0..4) {
                0 => Expr::Var,
                1 => Expr::Const(c(rng.gen_range(-3.0..3.0), 0.0)),
                2 => Expr::Const(c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))),
                _ => Expr::Const(c(rng.gen_range(0..5) as f64, 0.0)),
            };
        }
        let a = gen_expr(rng, depth - 1);
        let b = gen_expr(rng, depth - 1);
        match rng.gen_range(0..8) {
            0 => ast::add(a, b),
            1 => ast::sub(a, b),
            2 => ast::mul(a, b),
            3 => ast::div(a, b),
            4 => ast::neg(a),
            5 => ast::pow(a, c(rng.gen_range(-3..4) as f64, 0.0)),
            6 => ast::call(Builtin::Exp, a),
            _ => ast::call(
                match rng.gen_range(0..4) {
                    0 => Builtin::Log,
                    1 => Builtin::Sqrt,
                    2 => Builtin::Sin,
                    _ => Builtin::Cos,
                },
                a,
            ),
        }
    }

    #[test]
    fn print_parse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..500 {
            let e = gen_expr(&mut rng, 4);
            let printed = print_expr(&e);
            let reparsed = FunctionExpr::parse(&printed)
                .unwrap_or_else(|err| panic!("failed to reparse `{}`: {}", printed, err));
            assert_eq!(*reparsed.root(), e, "round trip failed for `{}`", printed);
        }
    }

    #[test]
    fn jet_first_derivative_matches_central_difference() {
        let catalog = [
            "z/(1 - z^2/2)",
            "-log(1 - z)",
            "z*exp(z)",
            "sin(z)*cos(z) + sqrt(1 + z/2)",
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let h = 1e-5;
        for src in catalog {
            let f = FunctionExpr::parse(src).unwrap();
            for _ in 0..100 {
                let r = rng.gen_range(0.05..0.8);
                let th = rng.gen_range(0.0..std::f64::consts::TAU);
                let z = Complex64::from_polar(r, th);
                let j = f.eval_jet(z, 1).unwrap();
                let fd = (f.eval(z + c(h, 0.0)).unwrap() - f.eval(z - c(h, 0.0)).unwrap())
                    / c(2.0 * h, 0.0);
                let rel = (j.d1 - fd).norm() / j.d1.norm().max(1.0);
                assert!(rel < 1e-6, "{} at {}: rel {}", src, z, rel);
            }
        }
    }
}
