//! Quasiconformal extension of the operator: interior values come from the
//! chain at t = 0, exterior values from `L(z/|z|, log|z|)`. The Beltrami
//! coefficient is measured with central Wirtinger differences, never by
//! differentiating the chain formula, so the measurement stays independent
//! of the evaluation path it checks.

use num_complex::Complex64;

use crate::criteria::{
    check_criterion, resolve_preset, ternary_max, CriterionSpec, GridSpec, SupReport,
};
use crate::error::{Error, Result};
use crate::expr::FunctionExpr;
use crate::loewner::{chain_value, ChainParams};
use crate::quad::QuadConfig;

/// Piecewise evaluation rule of the extended map.
#[derive(Debug, Clone)]
pub struct ExtensionMap<'a> {
    pub params: &'a ChainParams,
    pub cfg: QuadConfig,
}

impl ExtensionMap<'_> {
    /// F(z) = L(z, 0) inside the disk, L(z/|z|, log|z|) on and outside it.
    pub fn extend(&self, z: Complex64) -> Result<Complex64> {
        let r = z.norm();
        if r < 1.0 {
            chain_value(self.params, z, 0.0, &self.cfg)
        } else {
            chain_value(self.params, z / r, r.ln(), &self.cfg)
        }
    }
}

/// Measured Beltrami quotient at one exterior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeltramiSample {
    pub z: Complex64,
    pub mu: Complex64,
    pub mu_abs: f64,
    pub fd_step: f64,
}

/// Central Wirtinger differences: d_z = (Dx - i Dy)/2, d_zbar = (Dx + i Dy)/2.
pub fn beltrami(map: &ExtensionMap<'_>, z: Complex64, step: Option<f64>) -> Result<BeltramiSample> {
    let h = step.unwrap_or(1e-5 * z.norm());
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::Precondition(format!("step must be positive, got {}", h)));
    }
    if z.norm() <= 1.0 + 2.0 * h {
        return Err(Error::Precondition(format!(
            "beltrami needs |z| > 1 + 2*step, got |z| = {}",
            z.norm()
        )));
    }
    let re_h = Complex64::new(h, 0.0);
    let im_h = Complex64::new(0.0, h);
    let dx = (map.extend(z + re_h)? - map.extend(z - re_h)?) / (2.0 * h);
    let dy = (map.extend(z + im_h)? - map.extend(z - im_h)?) / (2.0 * h);
    let d_z = (dx - Complex64::new(0.0, 1.0) * dy) / 2.0;
    let d_zbar = (dx + Complex64::new(0.0, 1.0) * dy) / 2.0;
    if d_z.norm() < 1e-12 {
        return Err(Error::DegenerateDerivative { z });
    }
    let mu = d_zbar / d_z;
    Ok(BeltramiSample {
        z,
        mu,
        mu_abs: mu.norm(),
        fd_step: h,
    })
}

/// Sup of |mu| over a polar grid on the annulus r_in..r_out.
pub fn estimate_k(
    map: &ExtensionMap<'_>,
    r_in: f64,
    r_out: f64,
    n_radii: usize,
    n_angles: usize,
) -> Result<f64> {
    if !(1.0 < r_in && r_in < r_out) {
        return Err(Error::Precondition(format!(
            "annulus must satisfy 1 < r_in < r_out, got {}..{}",
            r_in, r_out
        )));
    }
    if n_radii < 2 || n_angles < 4 {
        return Err(Error::Precondition("annulus grid too small".into()));
    }
    let mut sup = 0.0f64;
    for i in 0..n_radii {
        let r = r_in + (r_out - r_in) * i as f64 / (n_radii - 1) as f64;
        for j in 0..n_angles {
            let th = std::f64::consts::TAU * j as f64 / n_angles as f64;
            let s = beltrami(map, Complex64::from_polar(r, th), None)?;
            if s.mu_abs > sup {
                sup = s.mu_abs;
            }
        }
    }
    Ok(sup)
}

/// Criterion check with the bounds scaled by k, optionally cross-validated
/// against the measured Beltrami supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QcOutcome {
    pub first: SupReport,
    pub main: SupReport,
    pub overall: bool,
    pub measured_k: Option<f64>,
    /// measured_k <= k + 5e-3, when measured.
    pub within_k: Option<bool>,
}

pub const MEASURED_K_SLACK: f64 = 5e-3;

pub fn check_qc_criterion(
    spec: &CriterionSpec,
    f: &FunctionExpr,
    grid: &GridSpec,
    cfg: &QuadConfig,
    cross_validate: bool,
) -> Result<QcOutcome> {
    let k = spec.k.ok_or_else(|| {
        Error::Precondition("quasiconformal check requires k in [0, 1)".into())
    })?;
    let out = check_criterion(spec, f, grid)?;
    let mut measured = None;
    let mut within = None;
    if out.overall && cross_validate {
        let params = resolve_preset(spec, f)?;
        let map = ExtensionMap {
            params: &params,
            cfg: *cfg,
        };
        let mk = estimate_k(&map, 1.001, 5.0, 16, 64)?;
        within = Some(mk <= k + MEASURED_K_SLACK);
        measured = Some(mk);
    }
    Ok(QcOutcome {
        first: out.first,
        main: out.main,
        overall: out.overall,
        measured_k: measured,
        within_k: within,
    })
}

/// Numerical support for injectivity: a critical-point scan of |fn'| plus
/// argument-principle winding probes. A pass is evidence, not a certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct EvidenceReport {
    pub min_abs_deriv: f64,
    pub min_deriv_at: Complex64,
    pub critical_ok: bool,
    pub circles: Vec<f64>,
    pub probes: usize,
    pub windings_checked: usize,
    /// (circle radius, probe index, winding number) for every probe whose
    /// winding differed from 1.
    pub winding_failures: Vec<(f64, usize, i64)>,
    pub winding_ok: bool,
    pub pass: bool,
}

pub const CRITICAL_DERIV_TOL: f64 = 1e-6;
const WINDING_SAMPLES: usize = 4096;
const WINDING_CIRCLES: [f64; 3] = [0.5, 0.8, 0.95];
const SCAN_FD_STEP: f64 = 1e-6;

fn fd_deriv<F>(f: &F, z: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let h = Complex64::new(SCAN_FD_STEP, 0.0);
    Ok((f(z + h)? - f(z - h)?) / (2.0 * SCAN_FD_STEP))
}

/// Winding number of (curve - w) by accumulating the argument of successive
/// quotients; exact for closed curves sampled densely enough.
fn winding_number(curve: &[Complex64], w: Complex64, r: f64, probe: usize) -> Result<i64> {
    let mut total = 0.0f64;
    let n = curve.len();
    for j in 0..n {
        let a = curve[j] - w;
        let b = curve[(j + 1) % n] - w;
        if a.norm() < 1e-9 || b.norm() < 1e-9 {
            return Err(Error::WindingGuard { r, probe });
        }
        total += (b / a).arg();
    }
    Ok((total / std::f64::consts::TAU).round() as i64)
}

pub fn univalence_evidence<F>(map: F, grid: &GridSpec, probes: usize) -> Result<EvidenceReport>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    grid.validate()?;
    if probes == 0 {
        return Err(Error::Precondition("probes must be >= 1".into()));
    }
    let scan = GridSpec {
        r_max: grid.r_max.min(0.999),
        ..*grid
    };

    // (a) critical-point scan of |fn'| with local refinement of the minimum
    let radii = scan.radii();
    let angles = scan.angles();
    let mut min = (f64::INFINITY, 0usize, 0usize);
    for (ri, &r) in radii.iter().enumerate() {
        for (ti, &th) in angles.iter().enumerate() {
            let d = fd_deriv(&map, Complex64::from_polar(r, th))?.norm();
            if d < min.0 {
                min = (d, ri, ti);
            }
        }
    }
    let (mut best_v, ri, ti) = (min.0, min.1, min.2);
    let mut best_at = Complex64::from_polar(radii[ri], angles[ti]);
    {
        let r_floor = if ri == 0 { scan.r_min / 2.0 } else { radii[ri - 1] };
        let r_ceil = if ri + 1 == radii.len() {
            scan.r_max
        } else {
            radii[ri + 1]
        };
        let mut r_lo = r_floor;
        let mut r_hi = r_ceil;
        let mut th = angles[ti];
        let mut th_span = std::f64::consts::TAU / scan.n_angles as f64;
        for _ in 0..4 {
            let (rr, neg_v) = ternary_max(
                |x| Ok(-fd_deriv(&map, Complex64::from_polar(x, th))?.norm()),
                r_lo,
                r_hi,
                30,
            )?;
            if -neg_v < best_v {
                best_v = -neg_v;
                best_at = Complex64::from_polar(rr, th);
            }
            let (tt, neg_v) = ternary_max(
                |x| Ok(-fd_deriv(&map, Complex64::from_polar(rr, x))?.norm()),
                th - th_span,
                th + th_span,
                30,
            )?;
            if -neg_v < best_v {
                best_v = -neg_v;
                best_at = Complex64::from_polar(rr, tt);
            }
            th = tt;
            let width = (r_hi - r_lo) / 4.0;
            r_lo = (rr - width).max(r_floor);
            r_hi = (rr + width).min(r_ceil);
            th_span /= 4.0;
        }
    }
    let critical_ok = best_v > CRITICAL_DERIV_TOL;

    // (b) winding probes: every target from the image of the r/2 circle must
    // be wrapped exactly once by the image of the r circle
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for &r in WINDING_CIRCLES.iter() {
        let curve: Vec<Complex64> = (0..WINDING_SAMPLES)
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / WINDING_SAMPLES as f64;
                map(Complex64::from_polar(r, th))
            })
            .collect::<Result<_>>()?;
        for l in 0..probes {
            let th = std::f64::consts::TAU * l as f64 / probes as f64;
            let w = map(Complex64::from_polar(r / 2.0, th))?;
            let wn = winding_number(&curve, w, r, l)?;
            checked += 1;
            if wn != 1 {
                failures.push((r, l, wn));
            }
        }
    }
    let winding_ok = failures.is_empty();

    Ok(EvidenceReport {
        min_abs_deriv: best_v,
        min_deriv_at: best_at,
        critical_ok,
        circles: WINDING_CIRCLES.to_vec(),
        probes,
        windings_checked: checked,
        winding_failures: failures,
        winding_ok,
        pass: critical_ok && winding_ok,
    })
}
