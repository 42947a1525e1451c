//! Analytic planar shapes, centred at the origin.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Shape {
    Disk { radius: f64 },
    Rect { width: f64, height: f64 },
    /// Centroid at the origin, one side horizontal at the bottom.
    EquilateralTriangle { side: f64 },
    /// The square of side `side` with its upper-right quarter removed.
    LShape { side: f64 },
    /// Raster-only domain read from a mask; it has no analytic boundary.
    Mask,
}

/// First boundary crossing of an axis ray leaving an interior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub distance: f64,
    pub normal: [f64; 2],
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite and > 0, got {v}")))
    }
}

impl Shape {
    pub fn disk(radius: f64) -> Result<Self> {
        positive("radius", radius)?;
        Ok(Shape::Disk { radius })
    }

    pub fn rect(width: f64, height: f64) -> Result<Self> {
        positive("width", width)?;
        positive("height", height)?;
        Ok(Shape::Rect { width, height })
    }

    pub fn square(side: f64) -> Result<Self> {
        Self::rect(side, side)
    }

    pub fn equilateral_triangle(side: f64) -> Result<Self> {
        positive("side", side)?;
        Ok(Shape::EquilateralTriangle { side })
    }

    pub fn l_shape(side: f64) -> Result<Self> {
        positive("side", side)?;
        Ok(Shape::LShape { side })
    }

    pub fn unit_area_disk() -> Self {
        Shape::Disk { radius: 1.0 / PI.sqrt() }
    }

    pub fn unit_area_square() -> Self {
        Shape::Rect { width: 1.0, height: 1.0 }
    }

    /// Width:height = `aspect`:1 and area 1.
    pub fn unit_area_rect(aspect: f64) -> Result<Self> {
        positive("aspect", aspect)?;
        Ok(Shape::Rect { width: aspect.sqrt(), height: 1.0 / aspect.sqrt() })
    }

    pub fn unit_area_triangle() -> Self {
        Shape::EquilateralTriangle { side: 2.0 / 3f64.powf(0.25) }
    }

    pub fn unit_area_l_shape() -> Self {
        Shape::LShape { side: 2.0 / 3f64.sqrt() }
    }

    /// A short human-readable name, stable across runs.
    pub fn label(&self) -> String {
        match self {
            Shape::Disk { .. } => "disk".into(),
            Shape::Rect { width, height } if width == height => "square".into(),
            Shape::Rect { width, height } => format!("rect({}:1)", fmt_aspect(width / height)),
            Shape::EquilateralTriangle { .. } => "equilateral-triangle".into(),
            Shape::LShape { .. } => "l-shape".into(),
            Shape::Mask => "mask".into(),
        }
    }

    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        positive("scale", alpha)?;
        Ok(match *self {
            Shape::Disk { radius } => Shape::Disk { radius: alpha * radius },
            Shape::Rect { width, height } => Shape::Rect { width: alpha * width, height: alpha * height },
            Shape::EquilateralTriangle { side } => Shape::EquilateralTriangle { side: alpha * side },
            Shape::LShape { side } => Shape::LShape { side: alpha * side },
            Shape::Mask => Shape::Mask,
        })
    }

    /// Exact area; `None` for masks.
    pub fn area(&self) -> Option<f64> {
        match *self {
            Shape::Disk { radius } => Some(PI * radius * radius),
            Shape::Rect { width, height } => Some(width * height),
            Shape::EquilateralTriangle { side } => Some(3f64.sqrt() / 4.0 * side * side),
            Shape::LShape { side } => Some(0.75 * side * side),
            Shape::Mask => None,
        }
    }

    /// Exact perimeter; `None` for masks.
    pub fn perimeter(&self) -> Option<f64> {
        match *self {
            Shape::Disk { radius } => Some(2.0 * PI * radius),
            Shape::Rect { width, height } => Some(2.0 * (width + height)),
            Shape::EquilateralTriangle { side } => Some(3.0 * side),
            Shape::LShape { side } => Some(4.0 * side),
            Shape::Mask => None,
        }
    }

    /// Inradius of the triangle, `None` for other shapes.
    pub fn inradius(&self) -> Option<f64> {
        match *self {
            Shape::EquilateralTriangle { side } => Some(side / (2.0 * 3f64.sqrt())),
            _ => None,
        }
    }

    /// Half-extent of a centred bounding square.
    pub fn half_extent(&self) -> Option<f64> {
        match *self {
            Shape::Disk { radius } => Some(radius),
            Shape::Rect { width, height } => Some(0.5 * width.max(height)),
            Shape::EquilateralTriangle { side } => Some(side / 3f64.sqrt()),
            Shape::LShape { side } => Some(0.5 * side),
            Shape::Mask => None,
        }
    }

    /// Counter-clockwise vertices of polygonal shapes.
    pub fn vertices(&self) -> Option<Vec<[f64; 2]>> {
        match *self {
            Shape::Rect { width, height } => {
                let (a, b) = (0.5 * width, 0.5 * height);
                Some(vec![[-a, -b], [a, -b], [a, b], [-a, b]])
            }
            Shape::EquilateralTriangle { side } => {
                let s3 = 3f64.sqrt();
                Some(vec![[-0.5 * side, -side / (2.0 * s3)], [0.5 * side, -side / (2.0 * s3)], [0.0, side / s3]])
            }
            Shape::LShape { side } => {
                let a = 0.5 * side;
                Some(vec![[-a, -a], [a, -a], [a, 0.0], [0.0, 0.0], [0.0, a], [-a, a]])
            }
            Shape::Disk { .. } | Shape::Mask => None,
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        match *self {
            Shape::Disk { radius } => x * x + y * y < radius * radius,
            Shape::Rect { width, height } => x.abs() < 0.5 * width && y.abs() < 0.5 * height,
            Shape::Mask => false,
            _ => {
                let v = self.vertices().expect("polygon");
                point_in_polygon(&v, x, y)
            }
        }
    }

    /// Distance from the interior point (x, y) to the boundary along the unit
    /// axis direction `dir`, with the outward normal there.
    pub fn crossing(&self, x: f64, y: f64, dir: [f64; 2]) -> Option<Crossing> {
        match *self {
            Shape::Disk { radius } => {
                let b = x * dir[0] + y * dir[1];
                let c = x * x + y * y - radius * radius;
                let disc = b * b - c;
                if disc < 0.0 {
                    return None;
                }
                let t = -b + disc.sqrt();
                let (bx, by) = (x + t * dir[0], y + t * dir[1]);
                Some(Crossing { distance: t.max(0.0), normal: [bx / radius, by / radius] })
            }
            Shape::Mask => None,
            _ => polygon_crossing(&self.vertices().expect("polygon"), x, y, dir),
        }
    }
}

fn fmt_aspect(a: f64) -> String {
    if (a - a.round()).abs() < 1e-12 {
        format!("{}", a.round())
    } else {
        format!("{a:.3}")
    }
}

fn point_in_polygon(v: &[[f64; 2]], x: f64, y: f64) -> bool {
    let mut inside = false;
    let mut j = v.len() - 1;
    for i in 0..v.len() {
        let (a, b) = (v[i], v[j]);
        if (a[1] > y) != (b[1] > y) && x < (b[0] - a[0]) * (y - a[1]) / (b[1] - a[1]) + a[0] {
            inside = !inside;
        }
        j = i;
    }
    inside
}

fn polygon_crossing(v: &[[f64; 2]], x: f64, y: f64, dir: [f64; 2]) -> Option<Crossing> {
    let mut best: Option<Crossing> = None;
    for i in 0..v.len() {
        let a = v[i];
        let b = v[(i + 1) % v.len()];
        let e = [b[0] - a[0], b[1] - a[1]];
        // x + t·dir = a + s·e
        let den = dir[0] * (-e[1]) - dir[1] * (-e[0]);
        if den.abs() < 1e-300 {
            continue;
        }
        let rx = a[0] - x;
        let ry = a[1] - y;
        let t = (rx * (-e[1]) - ry * (-e[0])) / den;
        let s = (dir[0] * ry - dir[1] * rx) / den;
        if t < 0.0 || !(-1e-12..=1.0 + 1e-12).contains(&s) {
            continue;
        }
        if best.is_none_or(|c| t < c.distance) {
            let len = e[0].hypot(e[1]);
            best = Some(Crossing { distance: t, normal: [e[1] / len, -e[0] / len] });
        }
    }
    best
}
