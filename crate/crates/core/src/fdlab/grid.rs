use std::collections::VecDeque;
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{DomainDescriptor, GridShape};

/// Interior nodes of a planar domain on the lattice `h·ℤ²`.
///
/// Node `(i, j)` sits at `(i·h, j·h)`. Unknowns are numbered row by row
/// (ascending `j`, then ascending `i`), which keeps operator envelopes narrow.
#[derive(Debug, Clone)]
pub struct GridDomain<T> {
    shape: GridShape,
    h: T,
    i0: i64,
    j0: i64,
    nx: usize,
    ny: usize,
    index: Vec<Option<usize>>,
    nodes: Vec<(i64, i64)>,
}

const MIN_UNKNOWNS: usize = 9;

impl<T: Real> GridDomain<T> {
    /// Builds the domain from an arbitrary set of lattice nodes.
    pub fn from_nodes(shape: GridShape, h: T, mut nodes: Vec<(i64, i64)>) -> Result<Self> {
        check_h(h)?;
        nodes.sort_by_key(|&(i, j)| (j, i));
        nodes.dedup();
        if nodes.len() < MIN_UNKNOWNS {
            return Err(Error::DegenerateDomain {
                unknowns: nodes.len(),
            });
        }
        // Two layers of padding keep every 13-point neighbour in range.
        let i0 = nodes.iter().map(|n| n.0).min().unwrap() - 2;
        let j0 = nodes.iter().map(|n| n.1).min().unwrap() - 2;
        let nx = (nodes.iter().map(|n| n.0).max().unwrap() - i0 + 3) as usize;
        let ny = (nodes.iter().map(|n| n.1).max().unwrap() - j0 + 3) as usize;
        let mut index = vec![None; nx * ny];
        for (k, &(i, j)) in nodes.iter().enumerate() {
            index[(j - j0) as usize * nx + (i - i0) as usize] = Some(k);
        }
        let grid = GridDomain {
            shape,
            h,
            i0,
            j0,
            nx,
            ny,
            index,
            nodes,
        };
        if !grid.is_connected() {
            return Err(Error::DisconnectedMask);
        }
        Ok(grid)
    }

    /// Nodes strictly inside `[x0, x0+a] × [y0, y0+b]`.
    pub fn rectangle(a: T, b: T, h: T) -> Result<Self> {
        Self::rectangle_at(T::zero(), T::zero(), a, b, h)
    }

    pub fn rectangle_at(x0: T, y0: T, a: T, b: T, h: T) -> Result<Self> {
        check_h(h)?;
        positive("rectangle side", a)?;
        positive("rectangle side", b)?;
        let (ci, cj) = (lattice_index(x0, h)?, lattice_index(y0, h)?);
        let (ni, nj) = (cells_inside(a, h), cells_inside(b, h));
        let nodes = (1..nj)
            .flat_map(|j| (1..ni).map(move |i| (ci + i, cj + j)))
            .collect();
        let shape = GridShape::Rectangle {
            a: a.as_f64(),
            b: b.as_f64(),
            x0: x0.as_f64(),
            y0: y0.as_f64(),
        };
        Self::from_nodes(shape, h, nodes)
    }

    /// Nodes with `x² + y² < R²`, disk centred at the origin.
    pub fn disk(radius: T, h: T) -> Result<Self> {
        check_h(h)?;
        positive("disk radius", radius)?;
        let n = (radius / h).ceil().to_i64().unwrap_or(0);
        let mut nodes = Vec::new();
        for j in -n..=n {
            for i in -n..=n {
                let (x, y) = (T::lit(i as f64) * h, T::lit(j as f64) * h);
                if x * x + y * y < radius * radius {
                    nodes.push((i, j));
                }
            }
        }
        Self::from_nodes(GridShape::Disk { radius: radius.as_f64() }, h, nodes)
    }

    /// `[0,a]×[0,b]` without the closed corner `[(1−f)a, a]×[(1−f)b, b]`.
    pub fn lshape(a: T, b: T, notch: T, h: T) -> Result<Self> {
        check_h(h)?;
        positive("L-shape side", a)?;
        positive("L-shape side", b)?;
        if !(notch > T::zero() && notch < T::one()) {
            return Err(Error::InvalidArgument(format!(
                "notch fraction must lie in (0, 1), got {notch}"
            )));
        }
        let slack = T::lit(1e-9) * h;
        let (xc, yc) = ((T::one() - notch) * a, (T::one() - notch) * b);
        let (ni, nj) = (cells_inside(a, h), cells_inside(b, h));
        let mut nodes = Vec::new();
        for j in 1..nj {
            for i in 1..ni {
                let (x, y) = (T::lit(i as f64) * h, T::lit(j as f64) * h);
                if !(x >= xc - slack && y >= yc - slack) {
                    nodes.push((i, j));
                }
            }
        }
        let shape = GridShape::LShape {
            a: a.as_f64(),
            b: b.as_f64(),
            notch: notch.as_f64(),
        };
        Self::from_nodes(shape, h, nodes)
    }

    /// Parses the mask text format: a line `h <value>`, then rows of `#`
    /// (interior) and `.` (exterior), top row first.
    pub fn from_mask_str(text: &str, name: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, message: String| Error::MaskFile {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| err(1, "empty mask file".into()))?;
        let h = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["h", v] => v
                .parse::<f64>()
                .map_err(|e| err(hl + 1, format!("bad mesh width {v:?}: {e}")))?,
            _ => return Err(err(hl + 1, format!("expected `h <value>`, found {header:?}"))),
        };
        if !(h > 0.0 && h.is_finite()) {
            return Err(err(hl + 1, format!("mesh width must be positive, got {h}")));
        }
        let rows: Vec<(usize, &str)> = lines.map(|(n, l)| (n + 1, l.trim_end())).collect();
        let top = rows.len() as i64 - 1;
        let mut nodes = Vec::new();
        for (r, &(line, row)) in rows.iter().enumerate() {
            for (c, ch) in row.chars().enumerate() {
                match ch {
                    '#' => nodes.push((c as i64, top - r as i64)),
                    '.' => {}
                    other => {
                        return Err(err(line, format!("unexpected character {other:?} in column {}", c + 1)))
                    }
                }
            }
        }
        let shape = GridShape::Mask { name: name.to_string() };
        Self::from_nodes(shape, T::lit(h), nodes)
    }

    pub fn from_mask_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::from_mask_str(&text, &name, path)
    }

    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn unknowns(&self) -> usize {
        self.nodes.len()
    }

    /// Lattice coordinates of each unknown, in unknown order.
    pub fn nodes(&self) -> &[(i64, i64)] {
        &self.nodes
    }

    /// Lower-left corner of the padded bounding box, in physical coordinates.
    pub fn origin(&self) -> (T, T) {
        (T::lit(self.i0 as f64) * self.h, T::lit(self.j0 as f64) * self.h)
    }

    /// Unknown index of lattice node `(i, j)`, `None` outside the domain.
    pub fn index_of(&self, i: i64, j: i64) -> Option<usize> {
        let (di, dj) = (i - self.i0, j - self.j0);
        if di < 0 || dj < 0 || di as usize >= self.nx || dj as usize >= self.ny {
            return None;
        }
        self.index[dj as usize * self.nx + di as usize]
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        self.index_of(i, j).is_some()
    }

    /// Rows of the interior mask over the padded bounding box, top row first.
    pub fn mask_rows(&self) -> Vec<String> {
        (0..self.ny)
            .rev()
            .map(|r| {
                (0..self.nx)
                    .map(|c| if self.index[r * self.nx + c].is_some() { '#' } else { '.' })
                    .collect()
            })
            .collect()
    }

    /// Area of the continuous domain; masks use `h²` per node.
    pub fn area(&self) -> T {
        match self.shape {
            GridShape::Rectangle { a, b, .. } => T::lit(a * b),
            GridShape::Disk { radius } => T::PI() * T::lit(radius * radius),
            GridShape::LShape { a, b, notch } => T::lit(a * b * (1.0 - notch * notch)),
            GridShape::Mask { .. } => T::from_count(self.unknowns()) * self.h * self.h,
        }
    }

    /// Boundary length; masks count exposed cell edges.
    pub fn perimeter(&self) -> T {
        match self.shape {
            GridShape::Rectangle { a, b, .. } | GridShape::LShape { a, b, .. } => T::lit(2.0 * (a + b)),
            GridShape::Disk { radius } => T::lit(2.0) * T::PI() * T::lit(radius),
            GridShape::Mask { .. } => {
                let exposed: usize = self
                    .nodes
                    .iter()
                    .map(|&(i, j)| {
                        NEIGHBOURS
                            .iter()
                            .filter(|&&(di, dj)| !self.contains(i + di, j + dj))
                            .count()
                    })
                    .sum();
                T::from_count(exposed) * self.h
            }
        }
    }

    pub fn descriptor(&self) -> DomainDescriptor {
        DomainDescriptor::Grid {
            shape: self.shape.clone(),
            h: self.h.as_f64(),
        }
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(k) = queue.pop_front() {
            let (i, j) = self.nodes[k];
            for (di, dj) in NEIGHBOURS {
                if let Some(q) = self.index_of(i + di, j + dj) {
                    if !seen[q] {
                        seen[q] = true;
                        reached += 1;
                        queue.push_back(q);
                    }
                }
            }
        }
        reached == self.nodes.len()
    }
}

pub(crate) const NEIGHBOURS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

fn check_h<T: Real>(h: T) -> Result<()> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!("mesh width must be positive, got {h}")));
    }
    Ok(())
}

fn positive<T: Real>(what: &str, v: T) -> Result<()> {
    if !(v > T::zero()) || !v.is_finite() {
        return Err(Error::InvalidArgument(format!("{what} must be positive, got {v}")));
    }
    Ok(())
}

/// Number of lattice steps `n` with `(n−1)·h < len ≤ n·h` (up to round-off),
/// so nodes `1..n` lie strictly inside `(0, len)`.
fn cells_inside<T: Real>(len: T, h: T) -> i64 {
    (len / h - T::lit(1e-9)).ceil().to_i64().unwrap_or(0)
}

fn lattice_index<T: Real>(x: T, h: T) -> Result<i64> {
    let r = (x / h).round();
    if ((x / h) - r).abs() > T::lit(1e-9) {
        return Err(Error::InvalidArgument(format!(
            "offset {x} is not a multiple of the mesh width {h}"
        )));
    }
    Ok(r.to_i64().unwrap_or(0))
}
