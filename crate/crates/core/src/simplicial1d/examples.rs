//! The two worked interval examples, used by tests, benches and the CLI docs.

use super::complex::IntervalComplex;
use super::system::{SimplicialMap1D, SimplicialSystem1D};

/// `K = {0,1,2}`, `K*` its derived subdivision, `0,1,2 ↦ 1`, `1/2 ↦ 0`,
/// `3/2 ↦ 2`: a tent map on each unit interval.
pub fn example_a() -> SimplicialSystem1D {
    let k = IntervalComplex::from_ints(&[0, 1, 2]).expect("valid complex");
    let kstar = k.derived();
    let map = SimplicialMap1D::new(k, kstar, vec![1, 0, 1, 2, 1]).expect("valid map");
    SimplicialSystem1D::new(map).expect("non-degenerate")
}

/// `K = {0,1,2,3}`, `K*` its derived subdivision, `0,1 ↦ 1`, `1/2 ↦ 0`,
/// `3/2 ↦ 2`, `2,3 ↦ 3`, `5/2 ↦ 2`.
pub fn example_b() -> SimplicialSystem1D {
    let k = IntervalComplex::from_ints(&[0, 1, 2, 3]).expect("valid complex");
    let kstar = k.derived();
    let map = SimplicialMap1D::new(k, kstar, vec![1, 0, 1, 2, 3, 2, 3]).expect("valid map");
    SimplicialSystem1D::new(map).expect("non-degenerate")
}
