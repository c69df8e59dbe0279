//! Minimal deterministic SVG output: polyline meshes showing the images of
//! concentric circles and radial rays under an analytic map.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integral_operator, QuadConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub stroke: String,
    pub stroke_width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    pub width: u32,
    pub height: u32,
    /// (min_x, min_y, width, height) in curve coordinates.
    pub viewbox: (f64, f64, f64, f64),
    pub curves: Vec<Polyline>,
}

impl SvgScene {
    /// Frames the curves with a small margin. Fails on non-finite points.
    pub fn from_curves(curves: Vec<Polyline>, width: u32, height: u32) -> Result<SvgScene> {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for c in &curves {
            for &(x, y) in &c.points {
                if !x.is_finite() || !y.is_finite() {
                    return Err(Error::Precondition(
                        "svg scene rejects non-finite curve points".into(),
                    ));
                }
                min_x = min_x.min(x);
                min_y = min_y.min(y);
                max_x = max_x.max(x);
                max_y = max_y.max(y);
            }
        }
        if !min_x.is_finite() {
            return Err(Error::Precondition("svg scene needs at least one point".into()));
        }
        let w = (max_x - min_x).max(1e-9);
        let h = (max_y - min_y).max(1e-9);
        let margin = 0.05 * w.max(h);
        Ok(SvgScene {
            width,
            height,
            viewbox: (min_x - margin, min_y - margin, w + 2.0 * margin, h + 2.0 * margin),
            curves,
        })
    }

    pub fn render(&self) -> String {
        let (vx, vy, vw, vh) = self.viewbox;
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
            self.width, self.height, vx, vy, vw, vh
        ));
        out.push_str("<rect x=\"-1e9\" y=\"-1e9\" width=\"2e9\" height=\"2e9\" fill=\"white\"/>\n");
        for c in &self.curves {
            out.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{:.6}\" points=\"",
                c.stroke, c.stroke_width
            ));
            for (i, &(x, y)) in c.points.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                // y is flipped so the upper half plane draws upward
                out.push_str(&format!("{:.6},{:.6}", x, -y));
            }
            out.push_str("\"/>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}

pub const MESH_SAMPLES: usize = 512;
const CIRCLE_STROKE: &str = "#2166ac";
const RAY_STROKE: &str = "#b2182b";

/// Images of `rings` concentric circles (radii j/(rings+1)) and `rays`
/// radial segments under `map`, each sampled [`MESH_SAMPLES`] times.
pub fn mesh_curves<F>(map: F, rings: usize, rays: usize) -> Result<Vec<Polyline>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if rings < 1 || rays < 1 {
        return Err(Error::Precondition("rings and rays must both be >= 1".into()));
    }
    let stroke_width = 0.004;
    let mut curves = Vec::with_capacity(rings + rays);
    for j in 1..=rings {
        let r = j as f64 / (rings + 1) as f64;
        let mut points = Vec::with_capacity(MESH_SAMPLES + 1);
        for s in 0..=MESH_SAMPLES {
            let th = std::f64::consts::TAU * s as f64 / MESH_SAMPLES as f64;
            let w = map(Complex64::from_polar(r, th)).map_err(|e| {
                Error::Precondition(format!("circle {} (r = {:.6}, theta = {:.6}): {}", j, r, th, e))
            })?;
            points.push((w.re, w.im));
        }
        curves.push(Polyline {
            points,
            stroke: CIRCLE_STROKE.into(),
            stroke_width,
        });
    }
    let r_outer = rings as f64 / (rings + 1) as f64;
    for k in 0..rays {
        let phi = std::f64::consts::TAU * k as f64 / rays as f64;
        let mut points = Vec::with_capacity(MESH_SAMPLES);
        for s in 0..MESH_SAMPLES {
            let rho = r_outer * s as f64 / (MESH_SAMPLES - 1) as f64;
            let w = map(Complex64::from_polar(rho, phi)).map_err(|e| {
                Error::Precondition(format!("ray {} (rho = {:.6}, phi = {:.6}): {}", k, rho, phi, e))
            })?;
            points.push((w.re, w.im));
        }
        curves.push(Polyline {
            points,
            stroke: RAY_STROKE.into(),
            stroke_width,
        });
    }
    Ok(curves)
}

/// Scene for the image of the disk mesh under f itself.
pub fn scene_under_f(
    f: &crate::expr::FunctionExpr,
    rings: usize,
    rays: usize,
) -> Result<SvgScene> {
    let curves = mesh_curves(|z| f.eval(z), rings, rays)?;
    SvgScene::from_curves(curves, 640, 640)
}

/// Scene for the image of the disk mesh under the integral operator.
pub fn scene_under_operator(
    f: &crate::expr::FunctionExpr,
    beta: Complex64,
    cfg: &QuadConfig,
    rings: usize,
    rays: usize,
) -> Result<SvgScene> {
    let curves = mesh_curves(|z| integral_operator(f, beta, z, cfg), rings, rays)?;
    SvgScene::from_curves(curves, 640, 640)
}

/// Side-by-side panels: the mesh under f on the left, under the operator on
/// the right.
pub fn scene_side_by_side(
    f: &crate::expr::FunctionExpr,
    beta: Complex64,
    cfg: &QuadConfig,
    rings: usize,
    rays: usize,
) -> Result<SvgScene> {
    let left = mesh_curves(|z| f.eval(z), rings, rays)?;
    let right = mesh_curves(|z| integral_operator(f, beta, z, cfg), rings, rays)?;

    let span = |cs: &[Polyline]| {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in cs {
            for &(x, _) in &c.points {
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        (lo, hi)
    };
    let (_, left_max) = span(&left);
    let (right_min, right_max) = span(&right);
    let gap = 0.15 * (right_max - right_min).max(1.0);
    let shift = left_max + gap - right_min;

    let mut curves = left;
    for mut c in right {
        for p in c.points.iter_mut() {
            p.0 += shift;
        }
        curves.push(c);
    }
    SvgScene::from_curves(curves, 1280, 640)
}
