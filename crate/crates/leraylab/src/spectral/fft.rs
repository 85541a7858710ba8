//! Cached 2D FFT plans on top of rustfft.

use ndarray::Array2;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

struct Plan {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

fn plan_for(n: usize) -> Arc<Plan> {
    static PLANS: OnceLock<Mutex<HashMap<usize, Arc<Plan>>>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = plans.lock().unwrap();
    guard
        .entry(n)
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            Arc::new(Plan {
                forward: planner.plan_fft_forward(n),
                inverse: planner.plan_fft_inverse(n),
            })
        })
        .clone()
}

/// In-place 1D forward transform (no normalization).
pub(crate) fn fft1(data: &mut [Complex64]) {
    plan_for(data.len()).forward.process(data);
}

/// In-place 1D inverse transform, normalized by 1/n.
pub(crate) fn ifft1(data: &mut [Complex64]) {
    plan_for(data.len()).inverse.process(data);
    let scale = 1.0 / data.len() as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}

/// In-place 2D forward transform (no normalization).
pub fn fft2(data: &mut Array2<Complex64>) {
    transform(data, true);
}

/// In-place 2D inverse transform, normalized by 1/n².
pub fn ifft2(data: &mut Array2<Complex64>) {
    transform(data, false);
    let scale = 1.0 / (data.len() as f64);
    data.mapv_inplace(|v| v * scale);
}

fn transform(data: &mut Array2<Complex64>, forward: bool) {
    let (nr, nc) = data.dim();
    assert_eq!(nr, nc, "transforms expect square grids");
    let plan = plan_for(nr);
    let fft = if forward { &plan.forward } else { &plan.inverse };
    // rows are contiguous in standard layout
    for mut row in data.rows_mut() {
        fft.process(row.as_slice_mut().expect("contiguous row"));
    }
    // columns via a scratch buffer
    let mut col = vec![Complex64::default(); nr];
    for j in 0..nc {
        for i in 0..nr {
            col[i] = data[[i, j]];
        }
        fft.process(&mut col);
        for i in 0..nr {
            data[[i, j]] = col[i];
        }
    }
}
