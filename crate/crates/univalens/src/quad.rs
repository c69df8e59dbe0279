//! Principal-branch complex powers and the integral operator
//! `F_beta(z) = z * [beta * int_0^1 s^(beta-1) f'(z s) ds]^(1/beta)`.
//!
//! The radial parameterization folds the outer `z^beta` into the leading `z`,
//! so the bracket is 1 at z = 0 and the combined branch satisfies
//! `F_beta(z) = z + O(z^2)`. The integral is done with adaptive 15-point
//! Gauss-Kronrod after the substitution `s = tau^q`, `q = ceil(1/Re beta) + 1`,
//! which removes the endpoint singularity for Re beta < 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{class_a_check, FunctionExpr};

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Collapses a signed-zero imaginary part so the principal argument of a
/// negative real is +pi, never -pi.
#[inline]
fn canon(w: Complex64) -> Complex64 {
    if w.im == 0.0 {
        Complex64::new(w.re, 0.0)
    } else {
        w
    }
}

/// Principal logarithm, argument in (-pi, pi].
pub fn principal_log(w: Complex64) -> Result<Complex64> {
    if w == C_ZERO {
        return Err(Error::Domain("log of 0".into()));
    }
    Ok(canon(w).ln())
}

/// Principal square root (non-negative real part).
pub fn principal_sqrt(w: Complex64) -> Complex64 {
    canon(w).sqrt()
}

/// `w^e = exp(e * Log w)` with the principal logarithm. `w = 0` is allowed
/// only for `Re e > 0`, giving 0. Small integer exponents use exact repeated
/// squaring; for integers the two routes agree.
pub fn principal_pow(w: Complex64, e: Complex64) -> Result<Complex64> {
    if w == C_ZERO {
        return if e.re > 0.0 {
            Ok(C_ZERO)
        } else {
            Err(Error::Domain(format!("0 raised to exponent {} with Re <= 0", e)))
        };
    }
    if e.im == 0.0 && e.re.fract() == 0.0 && e.re.abs() <= 32.0 {
        return Ok(w.powi(e.re as i32));
    }
    Ok((e * principal_log(w)?).exp())
}

/// `r^e = exp(e * ln r)` for real r > 0; the modulus is `r^(Re e)`.
pub fn real_pow_complex(r: f64, e: Complex64) -> Result<Complex64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::Domain(format!("real power of non-positive base {}", r)));
    }
    if e.im == 0.0 {
        return Ok(Complex64::new(r.powf(e.re), 0.0));
    }
    Ok((e * r.ln()).exp())
}

/// Quadrature control for the operator integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Override for the endpoint-regularization exponent; derived from beta
    /// when absent.
    pub regularization_exponent_q: Option<u32>,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_subdivisions: 200,
            regularization_exponent_q: None,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        let bad_tol = |t: f64| t.is_nan() || t <= 0.0;
        if bad_tol(self.rel_tol) || bad_tol(self.abs_tol) || self.max_subdivisions < 1 {
            return Err(Error::Precondition(
                "quadrature tolerances must be positive and max_subdivisions >= 1".into(),
            ));
        }
        Ok(())
    }

    fn q_for(&self, beta: Complex64) -> u32 {
        self.regularization_exponent_q
            .unwrap_or_else(|| (1.0 / beta.re).ceil() as u32 + 1)
    }
}

// 15-point Gauss-Kronrod nodes and weights (7-point Gauss embedded).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One Gauss-Kronrod 15 panel for a complex integrand on [a, b].
fn qk15<F>(f: &mut F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center)?;

    let mut fv1 = [C_ZERO; 7];
    let mut fv2 = [C_ZERO; 7];
    let mut res_gauss = C_ZERO;
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.norm();

    for j in 0..7 {
        let abscissa = half * XGK[j];
        let v1 = f(center - abscissa)?;
        let v2 = f(center + abscissa)?;
        fv1[j] = v1;
        fv2[j] = v2;
        let sum = v1 + v2;
        res_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (v1.norm() + v2.norm());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * sum;
        }
    }
    res_gauss += WG[3] * f_center;

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }

    let err = ((res_kronrod - res_gauss) * half).norm();
    let result = res_kronrod * half;
    let abserr = rescale_error(err, res_abs * half.abs(), res_asc * half.abs());
    Ok((result, abserr))
}

struct Segment {
    a: f64,
    b: f64,
    result: Complex64,
    err: f64,
    seq: u64,
}

/// Adaptive bisection, worst-error segment first. Deterministic: ties are
/// broken by insertion order.
fn adaptive<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let (r0, e0) = qk15(&mut f, a, b)?;
    let mut segs = vec![Segment {
        a,
        b,
        result: r0,
        err: e0,
        seq: 0,
    }];
    let mut next_seq = 1u64;
    let mut total = r0;
    let mut total_err = e0;

    for _ in 0..cfg.max_subdivisions {
        if total_err <= cfg.abs_tol.max(cfg.rel_tol * total.norm()) {
            return Ok((total, total_err));
        }
        // pick worst segment
        let mut worst = 0;
        for (i, s) in segs.iter().enumerate() {
            let w = &segs[worst];
            if s.err > w.err || (s.err == w.err && s.seq < w.seq) {
                worst = i;
            }
        }
        let seg = segs.swap_remove(worst);
        total -= seg.result;
        total_err -= seg.err;
        let mid = 0.5 * (seg.a + seg.b);
        for (lo, hi) in [(seg.a, mid), (mid, seg.b)] {
            let (r, e) = qk15(&mut f, lo, hi)?;
            total += r;
            total_err += e;
            segs.push(Segment {
                a: lo,
                b: hi,
                result: r,
                err: e,
                seq: next_seq,
            });
            next_seq += 1;
        }
    }
    if total_err <= cfg.abs_tol.max(cfg.rel_tol * total.norm()) {
        Ok((total, total_err))
    } else {
        Err(Error::NonConvergence {
            estimate: total_err,
            subdivisions: cfg.max_subdivisions,
        })
    }
}

/// Normalized bracket `B(z) = beta * int_0^1 s^(beta-1) f'(z s) ds`, with
/// B(0) = 1 for class-A f. Quadrature error estimate is returned alongside.
pub fn operator_bracket(
    f: &FunctionExpr,
    beta: Complex64,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<(Complex64, f64)> {
    cfg.validate()?;
    if !beta.re.is_finite() || beta.re <= 0.0 {
        return Err(Error::Precondition(format!("Re beta must be positive, got {}", beta)));
    }
    let q = cfg.q_for(beta);
    let qf = q as f64;
    // s = tau^q turns s^(beta-1) ds into q tau^(q beta - 1) dtau, bounded at 0
    let expo = qf * beta - C_ONE;
    let integrand = |tau: f64| -> Result<Complex64> {
        if tau <= 0.0 {
            return Ok(C_ZERO); // Re(q beta - 1) > 0 by the choice of q
        }
        let s = tau.powi(q as i32);
        let w = real_pow_complex(tau, expo)?;
        let fp = f.eval_jet(z * s, 1)?.d1;
        Ok(w * fp)
    };
    let (integral, err) = adaptive(integrand, 0.0, 1.0, cfg)?;
    let scale = beta * qf;
    Ok((scale * integral, err * scale.norm()))
}

/// The operator value together with a propagated error estimate.
pub fn integral_operator_detailed(
    f: &FunctionExpr,
    beta: Complex64,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<(Complex64, f64)> {
    if z.norm() >= 1.0 {
        return Err(Error::Precondition(format!("|z| must be < 1, got {}", z)));
    }
    let report = class_a_check(f)?;
    if !report.is_class_a {
        return Err(Error::Precondition(format!(
            "f is not in class A: f(0) = {}, f'(0) = {}",
            report.f_at_0, report.fprime_at_0
        )));
    }
    let (b, b_err) = operator_bracket(f, beta, z, cfg)?;
    if b == C_ZERO {
        return Err(Error::Domain("operator bracket vanished".into()));
    }
    let inv_beta = C_ONE / beta;
    let value = z * principal_pow(b, inv_beta)?;
    // |d(B^(1/beta))/dB| = |1/beta| * |B^(1/beta)| / |B|
    let err = z.norm() * inv_beta.norm() * value.norm() / (z.norm() * b.norm()).max(1e-300) * b_err;
    Ok((value, err))
}

/// `F_beta(z)`: the branch with `F_beta(z) = z + O(z^2)` near 0.
pub fn integral_operator(
    f: &FunctionExpr,
    beta: Complex64,
    z: Complex64,
    cfg: &QuadConfig,
) -> Result<Complex64> {
    Ok(integral_operator_detailed(f, beta, z, cfg)?.0)
}
