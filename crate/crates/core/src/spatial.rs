//! Uniform-grid prefilter in f64. Candidates it returns are always
//! re-checked at full precision by the caller.

use std::collections::HashMap;

pub(crate) struct Grid {
    cell: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl Grid {
    pub fn new(cell: f64) -> Self {
        Grid {
            cell,
            cells: HashMap::new(),
        }
    }

    fn key(&self, x: f64, y: f64) -> (i64, i64) {
        (
            (x / self.cell).floor() as i64,
            (y / self.cell).floor() as i64,
        )
    }

    pub fn insert_point(&mut self, id: usize, p: [f64; 2]) {
        let k = self.key(p[0], p[1]);
        self.cells.entry(k).or_default().push(id);
    }

    /// Registers `id` in every cell overlapped by the box around `a`-`b`
    /// grown by `pad`.
    pub fn insert_box(&mut self, id: usize, a: [f64; 2], b: [f64; 2], pad: f64) {
        let (x0, y0) = self.key(a[0].min(b[0]) - pad, a[1].min(b[1]) - pad);
        let (x1, y1) = self.key(a[0].max(b[0]) + pad, a[1].max(b[1]) + pad);
        for i in x0..=x1 {
            for j in y0..=y1 {
                self.cells.entry((i, j)).or_default().push(id);
            }
        }
    }

    /// Ids registered in the cell of `p` and its eight neighbours, deduplicated and sorted.
    pub fn near(&self, p: [f64; 2]) -> Vec<usize> {
        let (cx, cy) = self.key(p[0], p[1]);
        let mut out = Vec::new();
        for i in cx - 1..=cx + 1 {
            for j in cy - 1..=cy + 1 {
                if let Some(ids) = self.cells.get(&(i, j)) {
                    out.extend_from_slice(ids);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All unordered id pairs sharing at least one cell, sorted.
    pub fn cell_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for ids in self.cells.values() {
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    if a != b {
                        out.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Unordered pairs of points closer than `radius` (f64 estimate, padded by `slack`).
pub(crate) fn close_point_pairs(
    points: &[[f64; 2]],
    radius: f64,
    slack: f64,
) -> Vec<(usize, usize)> {
    let cell = radius.max(1e-6);
    let mut grid = Grid::new(cell);
    for (i, p) in points.iter().enumerate() {
        grid.insert_point(i, *p);
    }
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for j in grid.near(*p) {
            if j > i {
                let q = points[j];
                let d = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
                if d < radius + slack {
                    out.push((i, j));
                }
            }
        }
    }
    out
}
