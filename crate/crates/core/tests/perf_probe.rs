//! Manual timing probe for the heavy lattice sizes; run with
//! `cargo test --test perf_probe -- --ignored --nocapture`.

use kolmoreg::spectral::{sample, FieldSpec, GridSpec, Lattice};
use kolmoreg::structure::StructureMatrix;
use std::time::Instant;

#[test]
#[ignore]
fn five_axis_transform_cost() {
    let m = StructureMatrix::from_ints(vec![2, 2], vec![vec![vec![1, 1], vec![0, 1]]]).unwrap();
    for n in [26usize, 30, 32] {
        let grid = GridSpec::isotropic(5.1, 2, n).with_budget(1 << 26);
        let lat = Lattice::build(&grid, m.dims()).unwrap();
        let spec = FieldSpec::gaussian(vec![0.0; 5], vec![0.9; 5]).unwrap();
        let t0 = Instant::now();
        let u = sample(&spec, &lat).unwrap();
        let t_sample = t0.elapsed();
        let t0 = Instant::now();
        let _ = u.spectrum();
        let t_fft = t0.elapsed();
        let t0 = Instant::now();
        let nrm = u.weighted_group_norm(Some(1), 1.0);
        let t_norm = t0.elapsed();
        println!(
            "n={n}: points={} sample={t_sample:?} fft={t_fft:?} norm={t_norm:?} (|D1 u| = {nrm:.6})",
            lat.total_points()
        );
    }
}
