//! Catmull-Rom bicubic sampling of (r, z) fields, with the solver's ghost
//! conventions: ω_θ odd across the axis, zero beyond R, periodic in z.

use super::CylGrid;
use ndarray::Array2;

pub(crate) struct OmegaSampler<'a> {
    omega: &'a Array2<f64>,
    grid: CylGrid,
}

impl<'a> OmegaSampler<'a> {
    pub fn new(omega: &'a Array2<f64>, grid: CylGrid) -> Self {
        OmegaSampler { omega, grid }
    }

    fn node(&self, i: i64, j: i64) -> f64 {
        let n_r = self.grid.n_r as i64;
        let n_z = self.grid.n_z as i64;
        let jj = j.rem_euclid(n_z) as usize;
        if i < 0 {
            // odd reflection across the axis: ω(−r) = −ω(r)
            let k = (-i - 1) as usize;
            if k < self.grid.n_r {
                -self.omega[[k, jj]]
            } else {
                0.0
            }
        } else if i < n_r {
            self.omega[[i as usize, jj]]
        } else {
            0.0
        }
    }

    /// Catmull-Rom in both directions.
    pub fn eval(&self, r: f64, z: f64) -> f64 {
        let (dr, dz) = (self.grid.dr(), self.grid.dz());
        // fractional index on the staggered grid: r = (i + 1/2) dr
        let fi = r / dr - 0.5;
        let fj = z / dz;
        let i0 = fi.floor() as i64;
        let j0 = fj.floor() as i64;
        let tr = fi - i0 as f64;
        let tz = fj - j0 as f64;
        let mut rows = [0.0; 4];
        for (a, row) in rows.iter_mut().enumerate() {
            let i = i0 - 1 + a as i64;
            let p = [
                self.node(i, j0 - 1),
                self.node(i, j0),
                self.node(i, j0 + 1),
                self.node(i, j0 + 2),
            ];
            *row = catmull_rom(p, tz);
        }
        catmull_rom(rows, tr)
    }
}

fn catmull_rom(p: [f64; 4], t: f64) -> f64 {
    let [p0, p1, p2, p3] = p;
    0.5 * ((2.0 * p1)
        + (-p0 + p2) * t
        + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t
        + (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t * t * t)
}
