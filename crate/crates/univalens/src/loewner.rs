//! Closed-form evaluation of the subordination chain
//!
//! ```text
//! L(z,t) = z * [phi2 + (e^(beta m t) - e^(-beta t)) (g(e^-t z) - alpha) / phi3]^(1/beta)
//! phi2   = e^(-beta t) * B(e^-t z)
//! phi3   = 1 + (e^(beta m t) - e^(-beta t)) z^beta h(e^-t z)
//! ```
//!
//! together with the transfer quantities G, w = 2G/(m+1) - (m-1)/(m+1) and
//! p = (1+w)/(1-w). L(z,0) is the integral operator itself. The chain is
//! never differentiated numerically; w and p come from the closed form.

use num_complex::Complex64;

use crate::criteria::ResolvedParams;
use crate::error::{Error, Result};
use crate::expr::eval_taylor;
use crate::quad::{operator_bracket, principal_pow, QuadConfig};

/// Chain evaluation reuses the resolved criterion bundle (f, g, h, alpha,
/// beta, m).
pub type ChainParams = ResolvedParams;

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Leading coefficient `a1(t) = [(1-alpha) e^(beta m t) + alpha e^(-beta t)]^(1/beta)`.
pub fn a1(p: &ChainParams, t: f64) -> Result<Complex64> {
    if t < 0.0 {
        return Err(Error::Precondition(format!("t must be >= 0, got {}", t)));
    }
    let phi = (C_ONE - p.alpha) * (p.beta * p.m * t).exp() + p.alpha * (-p.beta * t).exp();
    principal_pow(phi, C_ONE / p.beta)
}

/// L(z, t) for |z| <= 1, t >= 0.
pub fn chain_value(p: &ChainParams, z: Complex64, t: f64, cfg: &QuadConfig) -> Result<Complex64> {
    if t < 0.0 {
        return Err(Error::Precondition(format!("t must be >= 0, got {}", t)));
    }
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::Precondition(format!("|z| must be <= 1, got {}", z)));
    }
    let u = z * (-t).exp();
    let (bracket, _) = operator_bracket(&p.f, p.beta, u, cfg)?;
    let phi2 = (-p.beta * t).exp() * bracket;
    let egrow = (p.beta * p.m * t).exp() - (-p.beta * t).exp();

    let z_beta = principal_pow(z, p.beta)?;
    let h_u = p.h.value(&p.f, u)?;
    let phi3 = C_ONE + egrow * z_beta * h_u;
    if phi3.norm() <= 1e-12 {
        return Err(Error::VanishingDenominator { which: "phi3", z, t });
    }

    let g_u = p.g.value(&p.f, u)?;
    let phi4 = phi2 + egrow * (g_u - p.alpha) / phi3;
    if phi4.norm() < 1e-300 {
        return Err(Error::VanishingDenominator { which: "phi4", z, t });
    }
    Ok(z * principal_pow(phi4, C_ONE / p.beta)?)
}

/// The transfer quantity G(z, t); no quadrature involved.
pub fn transfer_g(p: &ChainParams, z: Complex64, t: f64) -> Result<Complex64> {
    if t < 0.0 {
        return Err(Error::Precondition(format!("t must be >= 0, got {}", t)));
    }
    let u = z * (-t).exp();
    let fj = eval_taylor(p.f.root(), u)?;
    let fp = fj.deriv(1);
    let gj = p.g.taylor(&p.f, u)?;
    let hj = p.h.taylor(&p.f, u)?;
    let den = gj.value() - p.alpha;
    if den.norm() < 1e-14 {
        return Err(Error::Pole { z: u });
    }
    let (g1, h0, h1) = (gj.deriv(1), hj.value(), hj.deriv(1));

    let decay = (-p.beta * (p.m + 1.0) * t).exp();
    let one_minus = C_ONE - decay;
    let e_bt = (-p.beta * t).exp();
    let z_beta = principal_pow(z, p.beta)?;

    let term1 = decay * (fp / den - C_ONE);
    let term2 = one_minus * (2.0 * e_bt * z_beta * fp * h0 / den + u * g1 / (p.beta * den));

    let bracket = e_bt * z_beta * fp * h0 * h0 / den + u / p.beta * (h0 * g1 / den - h1);
    let term3 = if bracket == C_ZERO {
        C_ZERO
    } else {
        // e^(-beta t) z^beta (1 - e^(-beta(m+1)t))^2 / e^(-beta(m+1)t)
        let prefactor = (p.beta * p.m * t).exp() * z_beta * one_minus * one_minus;
        prefactor * bracket
    };

    let g = term1 + term2 + term3;
    if !g.re.is_finite() || !g.im.is_finite() {
        return Err(Error::Overflow { z });
    }
    Ok(g)
}

/// w and p at (z, t): w = 2G/(m+1) - (m-1)/(m+1), p = (1+w)/(1-w).
pub fn transfer_w_p(p: &ChainParams, z: Complex64, t: f64) -> Result<(Complex64, Complex64)> {
    let g = transfer_g(p, z, t)?;
    let w = 2.0 / (p.m + 1.0) * g - Complex64::new((p.m - 1.0) / (p.m + 1.0), 0.0);
    let den = C_ONE - w;
    if den.norm() <= 1e-14 {
        return Err(Error::WSingular { z, t });
    }
    Ok((w, (C_ONE + w) / den))
}

/// Every chain quantity at one (z, t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSample {
    pub z: Complex64,
    pub t: f64,
    pub l: Complex64,
    pub g: Complex64,
    pub w: Complex64,
    pub p: Complex64,
}

pub fn chain_sample(
    params: &ChainParams,
    z: Complex64,
    t: f64,
    cfg: &QuadConfig,
) -> Result<ChainSample> {
    let l = chain_value(params, z, t, cfg)?;
    let g = transfer_g(params, z, t)?;
    let (w, p) = transfer_w_p(params, z, t)?;
    Ok(ChainSample { z, t, l, g, w, p })
}

/// Space-time sweep of the chain hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainReport {
    pub sup_w_abs: f64,
    pub min_re_p: f64,
    pub worst_z: Complex64,
    pub worst_t: f64,
    pub worst_w: Complex64,
    pub samples: usize,
    /// sup |w| < 1, and <= k when a k was supplied.
    pub pass: bool,
}

pub fn verify_chain(
    p: &ChainParams,
    zs: &[Complex64],
    ts: &[f64],
    k: Option<f64>,
) -> Result<ChainReport> {
    if zs.is_empty() || ts.is_empty() {
        return Err(Error::Precondition("verify_chain needs non-empty grids".into()));
    }
    let mut sup_w = f64::NEG_INFINITY;
    let mut min_re_p = f64::INFINITY;
    let mut worst = (C_ZERO, 0.0, C_ZERO);
    let mut samples = 0usize;
    for &z in zs {
        if z.norm() >= 1.0 {
            return Err(Error::Precondition(format!("verify_chain needs |z| < 1, got {}", z)));
        }
        for &t in ts {
            let (w, pp) = transfer_w_p(p, z, t)?;
            samples += 1;
            let aw = w.norm();
            if aw > sup_w {
                sup_w = aw;
                worst = (z, t, w);
            }
            if pp.re < min_re_p {
                min_re_p = pp.re;
            }
        }
    }
    let pass = sup_w < 1.0 && k.is_none_or(|kk| sup_w <= kk);
    Ok(ChainReport {
        sup_w_abs: sup_w,
        min_re_p,
        worst_z: worst.0,
        worst_t: worst.1,
        worst_w: worst.2,
        samples,
        pass,
    })
}

/// Default time grid: dense up to t = 3, then a sparse tail where the decay
/// factors are far below double precision.
pub fn default_t_grid() -> Vec<f64> {
    let mut ts: Vec<f64> = (0..=60).map(|i| i as f64 * 0.05).collect();
    ts.extend_from_slice(&[4.0, 6.0, 10.0]);
    ts
}
