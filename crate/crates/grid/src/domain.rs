//! Rasterized domains: a regular lattice, an interior mask and the shape it
//! came from.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{invalid, GridError, Result};
use crate::shape::Shape;

pub const MIN_INTERIOR: usize = 25;

/// Node (i, j) sits at origin + h·(i, j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub origin: [f64; 2],
}

impl Lattice {
    /// Square lattice symmetric about the origin, nodes at half-integer
    /// multiples of h, at least two spare rows beyond `half_extent`.
    pub fn centred(half_extent: f64, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(invalid(format!("grid spacing must be > 0, got {h}")));
        }
        let m = (half_extent / h).ceil() as usize + 2;
        let o = -(m as f64 - 0.5) * h;
        Ok(Lattice { nx: 2 * m, ny: 2 * m, h, origin: [o, o] })
    }

    pub fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }
}

/// The four axis directions, as lattice steps.
pub const DIRS: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// What lies one lattice step away from an interior node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Link {
    Node(usize),
    /// The boundary is crossed at θ·h, θ ∈ (0, 1], with outward normal `normal`.
    Boundary { theta: f64, normal: [f64; 2] },
}

const NONE: usize = usize::MAX;
const THETA_MIN: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct GridDomain {
    lattice: Lattice,
    mask: Vec<bool>,
    index: Vec<usize>,
    nodes: Vec<(usize, usize)>,
    shape: Shape,
}

impl GridDomain {
    pub fn rasterize(shape: &Shape, h: f64) -> Result<Self> {
        let e = shape
            .half_extent()
            .ok_or_else(|| invalid("masks cannot be rasterized, use from_mask"))?;
        Self::rasterize_on(shape, Lattice::centred(e, h)?)
    }

    /// Rasterize onto a given lattice; a node is interior iff it lies in the shape.
    pub fn rasterize_on(shape: &Shape, lattice: Lattice) -> Result<Self> {
        if matches!(shape, Shape::Mask) {
            return Err(invalid("masks cannot be rasterized, use from_mask"));
        }
        let mut mask = vec![false; lattice.nx * lattice.ny];
        for j in 0..lattice.ny {
            for i in 0..lattice.nx {
                let [x, y] = lattice.point(i, j);
                mask[j * lattice.nx + i] = shape.contains(x, y);
            }
        }
        Self::build(lattice, mask, shape.clone())
    }

    /// Raster-only domain; boundaries sit halfway between nodes, so the
    /// domain is the union of the h×h cells centred on interior nodes.
    pub fn from_mask(nx: usize, ny: usize, h: f64, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != nx * ny {
            return Err(invalid(format!("mask has {} entries, expected {}", mask.len(), nx * ny)));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(invalid(format!("grid spacing must be > 0, got {h}")));
        }
        let origin = [-0.5 * (nx as f64 - 1.0) * h, -0.5 * (ny as f64 - 1.0) * h];
        Self::build(Lattice { nx, ny, h, origin }, mask, Shape::Mask)
    }

    /// Raster-only domain of the nodes of `lattice` satisfying `inside`.
    pub fn from_predicate(lattice: Lattice, inside: impl Fn(f64, f64) -> bool) -> Result<Self> {
        let mut mask = vec![false; lattice.nx * lattice.ny];
        for j in 0..lattice.ny {
            for i in 0..lattice.nx {
                let [x, y] = lattice.point(i, j);
                mask[j * lattice.nx + i] = inside(x, y);
            }
        }
        Self::build(lattice, mask, Shape::Mask)
    }

    fn build(lattice: Lattice, mask: Vec<bool>, shape: Shape) -> Result<Self> {
        let mut index = vec![NONE; mask.len()];
        let mut nodes = Vec::new();
        for j in 0..lattice.ny {
            for i in 0..lattice.nx {
                if mask[j * lattice.nx + i] {
                    index[j * lattice.nx + i] = nodes.len();
                    nodes.push((i, j));
                }
            }
        }
        if nodes.is_empty() {
            return Err(GridError::EmptyDomain);
        }
        if nodes.len() < MIN_INTERIOR {
            return Err(GridError::TooFewNodes(nodes.len()));
        }
        Ok(GridDomain { lattice, mask, index, nodes, shape })
    }

    /// The same raster for the shape dilated by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        let l = self.lattice;
        let lattice = Lattice {
            h: alpha * l.h,
            origin: [alpha * l.origin[0], alpha * l.origin[1]],
            ..l
        };
        Self::build(lattice, self.mask.clone(), self.shape.scaled(alpha)?)
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn h(&self) -> f64 {
        self.lattice.h
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Number of interior nodes (unknowns).
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// count·h².
    pub fn area(&self) -> f64 {
        self.nodes.len() as f64 * self.lattice.h * self.lattice.h
    }

    pub fn node(&self, k: usize) -> (usize, usize) {
        self.nodes[k]
    }

    pub fn position(&self, k: usize) -> [f64; 2] {
        let (i, j) = self.nodes[k];
        self.lattice.point(i, j)
    }

    pub fn index_of(&self, i: isize, j: isize) -> Option<usize> {
        let l = &self.lattice;
        if i < 0 || j < 0 || i as usize >= l.nx || j as usize >= l.ny {
            return None;
        }
        match self.index[j as usize * l.nx + i as usize] {
            NONE => None,
            k => Some(k),
        }
    }

    /// The neighbour of node k one step along `dir`, or the boundary crossing
    /// in between.
    pub fn link(&self, k: usize, dir: (isize, isize)) -> Link {
        let (i, j) = self.nodes[k];
        if let Some(q) = self.index_of(i as isize + dir.0, j as isize + dir.1) {
            return Link::Node(q);
        }
        let e = [dir.0 as f64, dir.1 as f64];
        let [x, y] = self.position(k);
        match self.shape.crossing(x, y, e) {
            Some(c) => Link::Boundary {
                theta: (c.distance / self.lattice.h).clamp(THETA_MIN, 1.0),
                normal: c.normal,
            },
            None => Link::Boundary { theta: 0.5, normal: e },
        }
    }

    /// Parse the ASCII mask format: `nx ny h`, then ny rows of nx characters
    /// from {0, 1}, top row first.
    pub fn parse_mask(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| GridError::MaskFormat("empty file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(GridError::MaskFormat(format!("bad header {header:?}")));
        }
        let bad = |what: &str| GridError::MaskFormat(format!("bad {what} in header {header:?}"));
        let nx: usize = fields[0].parse().map_err(|_| bad("nx"))?;
        let ny: usize = fields[1].parse().map_err(|_| bad("ny"))?;
        let h: f64 = fields[2].parse().map_err(|_| bad("h"))?;
        let mut mask = vec![false; nx * ny];
        let mut rows = 0;
        for (r, line) in lines.enumerate() {
            let line = line.trim();
            if r >= ny {
                return Err(GridError::MaskFormat(format!("more than {ny} rows")));
            }
            if line.chars().count() != nx {
                return Err(GridError::MaskFormat(format!("row {} has {} columns, expected {nx}", r + 1, line.len())));
            }
            let j = ny - 1 - r;
            for (i, c) in line.chars().enumerate() {
                mask[j * nx + i] = match c {
                    '1' => true,
                    '0' => false,
                    other => return Err(GridError::MaskFormat(format!("unexpected character {other:?}"))),
                };
            }
            rows += 1;
        }
        if rows != ny {
            return Err(GridError::MaskFormat(format!("found {rows} rows, expected {ny}")));
        }
        Self::from_mask(nx, ny, h, mask)
    }

    pub fn to_mask_string(&self) -> String {
        let l = &self.lattice;
        let mut s = String::new();
        writeln!(s, "{} {} {}", l.nx, l.ny, l.h).expect("string write");
        for j in (0..l.ny).rev() {
            for i in 0..l.nx {
                s.push(if self.mask[j * l.nx + i] { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn read_mask_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_mask(&std::fs::read_to_string(path)?)
    }

    pub fn write_mask_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_mask_string())?;
        Ok(())
    }
}
