//! Pointwise evaluation of the first and main univalence conditions, the
//! corollary presets, and deterministic supremum searches over polar grids.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{class_a_check, eval_taylor, FunctionExpr, TJet};
use crate::quad::{principal_log, principal_pow, real_pow_complex};

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

pub const POLE_TOL: f64 = 1e-14;
/// Below this radius the removable-singularity presets switch to Taylor
/// polynomials built from the jet of f at 0.
pub const PRESET_TAYLOR_RADIUS: f64 = 1e-3;

/// Criterion presets. `General` takes user-supplied g and h; every other
/// variant substitutes the companion functions (and, where fixed, the
/// parameters) of the corresponding specialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    General,
    Becker,
    Nehari,
    OzakiNunokawa,
    Goluzin,
    Pascu334,
    CorollaryC1,
    CorollaryC2,
    CorollaryC33,
    CorollaryC3Star,
    CorollaryC333,
    CorollaryC34,
    CorollaryC3,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::General => "general",
            Variant::Becker => "becker",
            Variant::Nehari => "nehari",
            Variant::OzakiNunokawa => "ozaki-nunokawa",
            Variant::Goluzin => "goluzin",
            Variant::Pascu334 => "pascu-334",
            Variant::CorollaryC1 => "corollary-c1",
            Variant::CorollaryC2 => "corollary-c2",
            Variant::CorollaryC33 => "corollary-c33",
            Variant::CorollaryC3Star => "corollary-c3star",
            Variant::CorollaryC333 => "corollary-c333",
            Variant::CorollaryC34 => "corollary-c34",
            Variant::CorollaryC3 => "corollary-c3",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "general" => Variant::General,
            "becker" => Variant::Becker,
            "nehari" => Variant::Nehari,
            "ozaki-nunokawa" => Variant::OzakiNunokawa,
            "goluzin" => Variant::Goluzin,
            "pascu-334" => Variant::Pascu334,
            "corollary-c1" => Variant::CorollaryC1,
            "corollary-c2" => Variant::CorollaryC2,
            "corollary-c33" => Variant::CorollaryC33,
            "corollary-c3star" => Variant::CorollaryC3Star,
            "corollary-c333" => Variant::CorollaryC333,
            "corollary-c34" => Variant::CorollaryC34,
            "corollary-c3" => Variant::CorollaryC3,
            _ => {
                return Err(Error::Precondition(format!(
                    "unknown variant `{}` (see --help for the list)",
                    s
                )))
            }
        })
    }
}

/// Which center the first condition subtracts: `proof` gives (m+1)/2 (the
/// default, consistent with every named preset), `printed` gives (m-1)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FirstCenter {
    Proof,
    Printed,
}

impl FirstCenter {
    pub fn name(self) -> &'static str {
        match self {
            FirstCenter::Proof => "proof",
            FirstCenter::Printed => "printed",
        }
    }
}

impl std::str::FromStr for FirstCenter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "proof" => FirstCenter::Proof,
            "printed" => FirstCenter::Printed,
            _ => {
                return Err(Error::Precondition(format!(
                    "first-center must be `proof` or `printed`, got `{}`",
                    s
                )))
            }
        })
    }
}

/// Companion function: an explicit expression or a preset derived from f.
#[derive(Debug, Clone, PartialEq)]
pub enum CoFn {
    Zero,
    Expr(FunctionExpr),
    /// f'
    FPrime,
    /// f''
    FSecond,
    /// -(1/2) f''/f'
    NehariH,
    /// (f/z)^2
    RatioSquaredG,
    /// 1/z - f/z^2
    OzakiH,
}

impl CoFn {
    pub fn parse_flag(s: &str) -> Result<CoFn> {
        Ok(match s {
            "zero" | "0" => CoFn::Zero,
            "fprime" => CoFn::FPrime,
            "fsecond" => CoFn::FSecond,
            "nehari-h" => CoFn::NehariH,
            "ratio-squared" => CoFn::RatioSquaredG,
            "ozaki-h" => CoFn::OzakiH,
            _ => CoFn::Expr(FunctionExpr::parse(s)?),
        })
    }

    pub fn describe(&self) -> String {
        match self {
            CoFn::Zero => "zero".into(),
            CoFn::Expr(f) => f.source().to_string(),
            CoFn::FPrime => "fprime".into(),
            CoFn::FSecond => "fsecond".into(),
            CoFn::NehariH => "nehari-h".into(),
            CoFn::RatioSquaredG => "ratio-squared".into(),
            CoFn::OzakiH => "ozaki-h".into(),
        }
    }

    /// Jet of the companion at z. Valid through the first derivative for the
    /// derived presets (that is all the conditions consume); expressions and
    /// the ratio forms carry full order.
    pub(crate) fn taylor(&self, f: &FunctionExpr, z: Complex64) -> Result<TJet> {
        match self {
            CoFn::Zero => Ok(TJet::constant(C_ZERO)),
            CoFn::Expr(e) => eval_taylor(e.root(), z),
            CoFn::FPrime => {
                let a = eval_taylor(f.root(), z)?.0;
                Ok(TJet([a[1], 2.0 * a[2], 3.0 * a[3], C_ZERO]))
            }
            CoFn::FSecond => {
                let a = eval_taylor(f.root(), z)?.0;
                Ok(TJet([2.0 * a[2], 6.0 * a[3], C_ZERO, C_ZERO]))
            }
            CoFn::NehariH => {
                let a = eval_taylor(f.root(), z)?.0;
                let fp = TJet([a[1], 2.0 * a[2], 3.0 * a[3], C_ZERO]);
                if fp.value().norm() < POLE_TOL {
                    return Err(Error::CriticalPoint { z });
                }
                let fpp = TJet([2.0 * a[2], 6.0 * a[3], C_ZERO, C_ZERO]);
                Ok(fpp.div_unchecked(fp).mul(TJet::constant(Complex64::new(-0.5, 0.0))))
            }
            CoFn::RatioSquaredG => {
                let ratio = ratio_f_over_z(f, z)?;
                Ok(ratio.mul(ratio))
            }
            CoFn::OzakiH => {
                if z.norm() < PRESET_TAYLOR_RADIUS {
                    // 1/z - f/z^2 = -(f(z) - z)/z^2 = -a2 - a3 z - ...
                    let a = eval_taylor(f.root(), C_ZERO)?.0;
                    let h0 = -a[2] - a[3] * z;
                    return Ok(TJet([h0, -a[3], C_ZERO, C_ZERO]));
                }
                let zj = TJet::variable(z);
                let fj = eval_taylor(f.root(), z)?;
                let inv_z = TJet::constant(C_ONE).div_unchecked(zj);
                let f_over_z2 = fj.div_unchecked(zj.mul(zj));
                Ok(inv_z.sub(f_over_z2))
            }
        }
    }

    pub(crate) fn value(&self, f: &FunctionExpr, z: Complex64) -> Result<Complex64> {
        Ok(self.taylor(f, z)?.value())
    }
}

/// f(z)/z as a jet, switching to the Taylor polynomial from the jet of f at 0
/// inside [`PRESET_TAYLOR_RADIUS`] to avoid 0/0 cancellation.
fn ratio_f_over_z(f: &FunctionExpr, z: Complex64) -> Result<TJet> {
    if z.norm() < PRESET_TAYLOR_RADIUS {
        let a = eval_taylor(f.root(), C_ZERO)?.0;
        // f/z = a1 + a2 z + a3 z^2 for class-A f (a0 = 0)
        let r0 = a[1] + a[2] * z + a[3] * z * z;
        let r1 = a[2] + 2.0 * a[3] * z;
        Ok(TJet([r0, r1, a[3], C_ZERO]))
    } else {
        let fj = eval_taylor(f.root(), z)?;
        Ok(fj.div_unchecked(TJet::variable(z)))
    }
}

/// Parameter bundle for one criterion instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionSpec {
    pub m: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub variant: Variant,
    pub g: Option<CoFn>,
    pub h: Option<CoFn>,
    pub first_center: FirstCenter,
    pub k: Option<f64>,
}

impl Default for CriterionSpec {
    fn default() -> Self {
        CriterionSpec {
            m: 1.0,
            alpha: C_ZERO,
            beta: C_ONE,
            variant: Variant::General,
            g: None,
            h: None,
            first_center: FirstCenter::Proof,
            k: None,
        }
    }
}

impl CriterionSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.m.is_finite() || self.m <= 0.0 {
            return Err(Error::Precondition(format!("m must be positive, got {}", self.m)));
        }
        if !self.alpha.re.is_finite() || self.alpha.re >= 0.5 {
            return Err(Error::Precondition(format!(
                "Re alpha must be < 1/2, got {}",
                self.alpha
            )));
        }
        if !self.beta.re.is_finite() || self.beta.re <= 0.0 {
            return Err(Error::Precondition(format!(
                "Re beta must be > 0, got {}",
                self.beta
            )));
        }
        if let Some(k) = self.k {
            if !(0.0..1.0).contains(&k) {
                return Err(Error::Precondition(format!("k must lie in [0, 1), got {}", k)));
            }
        }
        Ok(())
    }
}

/// A criterion instance with the preset substitutions applied.
#[derive(Debug, Clone)]
pub struct ResolvedParams {
    pub f: FunctionExpr,
    pub g: CoFn,
    pub h: CoFn,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub m: f64,
    /// pascu-334 form: the main condition becomes
    /// |(1 - |z|^((m+1) Re beta))/Re beta * z f''/f'| <= 1.
    pub pascu_form: bool,
}

/// Applies the preset substitution for `spec.variant`.
pub fn resolve_preset(spec: &CriterionSpec, f: &FunctionExpr) -> Result<ResolvedParams> {
    spec.validate()?;
    let user_h = spec.h.clone().unwrap_or(CoFn::Zero);
    let (g, h, alpha, beta, m, pascu_form) = match spec.variant {
        Variant::General => {
            let g = spec.g.clone().ok_or_else(|| {
                Error::Precondition("variant `general` requires an explicit g".into())
            })?;
            (g, user_h, spec.alpha, spec.beta, spec.m, false)
        }
        Variant::Becker => (CoFn::FPrime, CoFn::Zero, C_ZERO, C_ONE, 1.0, false),
        Variant::Nehari => (CoFn::FPrime, CoFn::NehariH, C_ZERO, C_ONE, 1.0, false),
        Variant::OzakiNunokawa => (
            CoFn::RatioSquaredG,
            CoFn::OzakiH,
            C_ZERO,
            C_ONE,
            1.0,
            false,
        ),
        Variant::Goluzin => {
            // the printed substitution for h is degenerate; require it explicitly
            let h = spec.h.clone().ok_or(Error::AmbiguousPreset("goluzin"))?;
            (CoFn::FPrime, h, C_ZERO, C_ONE, 1.0, false)
        }
        Variant::Pascu334 => (CoFn::FPrime, CoFn::Zero, C_ZERO, spec.beta, spec.m, true),
        Variant::CorollaryC1 => (CoFn::FPrime, user_h, spec.alpha, spec.beta, spec.m, false),
        Variant::CorollaryC2 => (CoFn::FPrime, CoFn::FSecond, spec.alpha, spec.beta, spec.m, false),
        Variant::CorollaryC33 => (CoFn::FPrime, CoFn::Zero, spec.alpha, spec.beta, spec.m, false),
        Variant::CorollaryC3Star => (CoFn::FPrime, CoFn::NehariH, C_ZERO, C_ONE, spec.m, false),
        Variant::CorollaryC333 => (CoFn::FPrime, CoFn::Zero, C_ZERO, spec.beta, spec.m, false),
        Variant::CorollaryC34 => (CoFn::RatioSquaredG, CoFn::Zero, C_ZERO, spec.beta, spec.m, false),
        Variant::CorollaryC3 => (CoFn::FPrime, CoFn::FSecond, C_ZERO, C_ONE, spec.m, false),
    };
    let params = ResolvedParams {
        f: f.clone(),
        g,
        h,
        alpha,
        beta,
        m,
        pascu_form,
    };
    // the theorem normalizes g(0) = 1; presets satisfy this for class-A f,
    // user expressions are checked
    if let CoFn::Expr(_) = &params.g {
        let g0 = params.g.value(&params.f, C_ZERO)?;
        if (g0 - C_ONE).norm() > 1e-8 {
            return Err(Error::Precondition(format!(
                "g(0) must equal 1, got {}",
                g0
            )));
        }
    }
    Ok(params)
}

/// One condition evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointEval {
    pub z: Complex64,
    pub value: Complex64,
    pub modulus: f64,
    pub bound: f64,
    pub strict: bool,
    pub satisfied: bool,
}

impl PointEval {
    fn new(z: Complex64, value: Complex64, bound: f64, strict: bool) -> Self {
        let modulus = value.norm();
        PointEval {
            z,
            value,
            modulus,
            bound,
            strict,
            satisfied: if strict { modulus < bound } else { modulus <= bound },
        }
    }
}

fn bound_scale(m: f64, k: Option<f64>) -> f64 {
    k.unwrap_or(1.0) * (m + 1.0) / 2.0
}

/// First condition: |f'/(g - alpha) - center| < bound.
pub fn eval_first_condition(
    p: &ResolvedParams,
    center: FirstCenter,
    k: Option<f64>,
    z: Complex64,
) -> Result<PointEval> {
    let fp = eval_taylor(p.f.root(), z)?.deriv(1);
    let g = p.g.value(&p.f, z)?;
    let den = g - p.alpha;
    if den.norm() < POLE_TOL {
        return Err(Error::Pole { z });
    }
    let c = match center {
        FirstCenter::Proof => (p.m + 1.0) / 2.0,
        FirstCenter::Printed => (p.m - 1.0) / 2.0,
    };
    let value = fp / den - Complex64::new(c, 0.0);
    Ok(PointEval::new(z, value, bound_scale(p.m, k), true))
}

/// Main condition: |T1 + T2 + T3 - (m-1)/2| <= bound, with the T3 power
/// product assembled in log form so huge |z|^(-beta(m+1)) factors cannot
/// overflow prematurely.
pub fn eval_main_condition(p: &ResolvedParams, k: Option<f64>, z: Complex64) -> Result<PointEval> {
    let r = z.norm();
    if r.is_nan() || r <= 0.0 || r >= 1.0 + 1e-12 {
        return Err(Error::Precondition(format!(
            "main condition needs 0 < |z| <= 1, got z = {}",
            z
        )));
    }

    if p.pascu_form {
        let a = eval_taylor(p.f.root(), z)?;
        let fp = a.deriv(1);
        if fp.norm() < POLE_TOL {
            return Err(Error::CriticalPoint { z });
        }
        let value = Complex64::new((1.0 - r.powf((p.m + 1.0) * p.beta.re)) / p.beta.re, 0.0)
            * (z * a.deriv(2) / fp);
        return Ok(PointEval::new(z, value, k.unwrap_or(1.0), false));
    }

    let fj = eval_taylor(p.f.root(), z)?;
    let fp = fj.deriv(1);
    let gj = p.g.taylor(&p.f, z)?;
    let hj = p.h.taylor(&p.f, z)?;
    let den = gj.value() - p.alpha;
    if den.norm() < POLE_TOL {
        return Err(Error::Pole { z });
    }
    let (g1, h0, h1) = (gj.deriv(1), hj.value(), hj.deriv(1));

    let bm1 = p.beta * (p.m + 1.0);
    let ln_r = r.ln();
    let x = real_pow_complex(r, bm1)?;
    let one_minus_x = C_ONE - x;

    let t1 = (fp / den - C_ONE) * x;

    let z_beta = principal_pow(z, p.beta)?;
    let t2 = one_minus_x
        * (2.0 * z_beta * fp * h0 / den + z * g1 / (p.beta * den));

    let bracket3 = principal_pow(z, p.beta - C_ONE)? * fp * h0 * h0 / den
        + (g1 * h0 / den - h1) / p.beta;
    let t3 = if bracket3 == C_ZERO {
        C_ZERO
    } else {
        let expo = (p.beta + C_ONE) * principal_log(z)? - bm1 * ln_r;
        if expo.re > 700.0 {
            return Err(Error::Overflow { z });
        }
        expo.exp() * one_minus_x * one_minus_x * bracket3
    };

    for t in [t1, t2, t3] {
        if !t.re.is_finite() || !t.im.is_finite() || t.norm() > 1e304 {
            return Err(Error::Overflow { z });
        }
    }

    let value = t1 + t2 + t3 - Complex64::new((p.m - 1.0) / 2.0, 0.0);
    Ok(PointEval::new(z, value, bound_scale(p.m, k), false))
}

/// Schwarzian derivative f'''/f' - (3/2)(f''/f')^2 from one order-3 jet.
pub fn schwarzian(f: &FunctionExpr, z: Complex64) -> Result<Complex64> {
    let j = eval_taylor(f.root(), z)?;
    let fp = j.deriv(1);
    if fp.norm() < POLE_TOL {
        return Err(Error::CriticalPoint { z });
    }
    let q = j.deriv(2) / fp;
    Ok(j.deriv(3) / fp - 1.5 * q * q)
}

/// Polar evaluation grid, radii clustered logarithmically toward both 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n_radii: usize,
    pub n_angles: usize,
    pub r_min: f64,
    pub r_max: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_radii: 64,
            n_angles: 256,
            r_min: 1e-4,
            r_max: 0.9995,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max < 1.0) {
            return Err(Error::Precondition(format!(
                "grid radii must satisfy 0 < r_min < r_max < 1, got {}..{}",
                self.r_min, self.r_max
            )));
        }
        if self.n_radii < 4 || self.n_angles < 4 {
            return Err(Error::Precondition(
                "grid needs at least 4 radii and 4 angles".into(),
            ));
        }
        Ok(())
    }

    /// Log-uniform in v = r/(1-r): log spacing near 0 and near 1.
    pub fn radii(&self) -> Vec<f64> {
        let to_v = |r: f64| r / (1.0 - r);
        let la = to_v(self.r_min).ln();
        let lb = to_v(self.r_max).ln();
        (0..self.n_radii)
            .map(|i| {
                let u = i as f64 / (self.n_radii - 1) as f64;
                let v = (la + u * (lb - la)).exp();
                v / (1.0 + v)
            })
            .collect()
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.n_angles)
            .map(|j| std::f64::consts::TAU * j as f64 / self.n_angles as f64)
            .collect()
    }
}

/// Result of a supremum search over the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupReport {
    pub sup_estimate: f64,
    pub argmax: Complex64,
    pub samples: usize,
    pub refinement_rounds: usize,
    pub bound: f64,
    pub strict: bool,
    pub satisfied: bool,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    First,
    Main,
}

const REFINE_ROUNDS: usize = 3;
const REFINE_ITERS: usize = 25;
const TOP_CANDIDATES: usize = 5;
/// Refinement may push past the outermost grid radius toward the boundary,
/// but never onto it.
const R_CAP: f64 = 1.0 - 1e-9;

/// Ternary search for the maximum of f on [lo, hi]; returns the best sampled
/// point. Deterministic and safe for non-unimodal f (it still returns the
/// best value it saw).
pub(crate) fn ternary_max<F>(mut f: F, mut lo: f64, mut hi: f64, iters: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let v_lo = f(lo)?;
    let v_hi = f(hi)?;
    let mut best = if v_hi > v_lo { (hi, v_hi) } else { (lo, v_lo) };
    for _ in 0..iters {
        let third = (hi - lo) / 3.0;
        let m1 = lo + third;
        let m2 = hi - third;
        let v1 = f(m1)?;
        let v2 = f(m2)?;
        if v1 > best.1 {
            best = (m1, v1);
        }
        if v2 > best.1 {
            best = (m2, v2);
        }
        if v1 < v2 {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    Ok(best)
}

/// Grid sweep plus local refinement around the strongest candidates.
/// Ties are broken toward the smallest radius, then the smallest angle, so
/// the report is independent of evaluation order.
pub fn sup_search(
    p: &ResolvedParams,
    which: Condition,
    center: FirstCenter,
    k: Option<f64>,
    grid: &GridSpec,
) -> Result<SupReport> {
    grid.validate()?;
    let mut samples = 0usize;
    let mut eval = |z: Complex64| -> Result<PointEval> {
        samples += 1;
        match which {
            Condition::First => eval_first_condition(p, center, k, z),
            Condition::Main => eval_main_condition(p, k, z),
        }
    };

    let radii = grid.radii();
    let angles = grid.angles();
    let mut cells: Vec<(f64, usize, usize)> = Vec::with_capacity(radii.len() * angles.len());
    let mut bound = 0.0;
    let mut strict = true;
    for (ri, &r) in radii.iter().enumerate() {
        for (ti, &th) in angles.iter().enumerate() {
            let pe = eval(Complex64::from_polar(r, th))?;
            bound = pe.bound;
            strict = pe.strict;
            cells.push((pe.modulus, ri, ti));
        }
    }

    cells.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });

    let best_cell = cells[0];
    let mut best = (
        best_cell.0,
        Complex64::from_polar(radii[best_cell.1], angles[best_cell.2]),
    );

    let dtheta = std::f64::consts::TAU / grid.n_angles as f64;
    for &(_, ri, ti) in cells.iter().take(TOP_CANDIDATES) {
        let mut th = angles[ti];
        let r_floor = if ri == 0 {
            (grid.r_min / 8.0).max(1e-12)
        } else {
            radii[ri - 1]
        };
        let r_ceil = if ri + 1 == radii.len() { R_CAP } else { radii[ri + 1] };
        let mut r_lo = r_floor;
        let mut r_hi = r_ceil;
        let mut th_span = dtheta;
        for _ in 0..REFINE_ROUNDS {
            let (r_best, v_r) = ternary_max(
                |rr| Ok(eval(Complex64::from_polar(rr, th))?.modulus),
                r_lo,
                r_hi,
                REFINE_ITERS,
            )?;
            if v_r > best.0 {
                best = (v_r, Complex64::from_polar(r_best, th));
            }
            let (t_best, v_t) = ternary_max(
                |tt| Ok(eval(Complex64::from_polar(r_best, tt))?.modulus),
                th - th_span,
                th + th_span,
                REFINE_ITERS,
            )?;
            if v_t > best.0 {
                best = (v_t, Complex64::from_polar(r_best, t_best));
            }
            th = t_best;
            // recenter and narrow the radial bracket for the next round
            let width = (r_hi - r_lo) / 4.0;
            r_lo = (r_best - width).max(r_floor);
            r_hi = (r_best + width).min(r_ceil);
            th_span /= 4.0;
        }
    }

    let sup = best.0;
    Ok(SupReport {
        sup_estimate: sup,
        argmax: best.1,
        samples,
        refinement_rounds: REFINE_ROUNDS,
        bound,
        strict,
        satisfied: if strict { sup < bound } else { sup <= bound },
        margin: bound - sup,
    })
}

/// Both conditions of one criterion instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOutcome {
    pub first: SupReport,
    pub main: SupReport,
    pub overall: bool,
}

pub fn check_criterion(
    spec: &CriterionSpec,
    f: &FunctionExpr,
    grid: &GridSpec,
) -> Result<CheckOutcome> {
    let report = class_a_check(f)?;
    if !report.is_class_a {
        return Err(Error::Precondition(format!(
            "f is not in class A: f(0) = {}, f'(0) = {}",
            report.f_at_0, report.fprime_at_0
        )));
    }
    let p = resolve_preset(spec, f)?;
    let first = sup_search(&p, Condition::First, spec.first_center, spec.k, grid)?;
    let main = sup_search(&p, Condition::Main, spec.first_center, spec.k, grid)?;
    Ok(CheckOutcome {
        first,
        main,
        overall: first.satisfied && main.satisfied,
    })
}
