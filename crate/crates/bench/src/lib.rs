//! Fixed inputs shared by the benchmarks.

use towerset::hilbert_burch::StandardFormMatrix;
use towerset::{Monomial, MonomialIdeal, PointSet, PrimeSupport};

/// The six-member pair support on six symbols that is aCM but not
/// towerizable.
pub fn six_member_support() -> PrimeSupport {
    PrimeSupport::new(
        6,
        2,
        [[1, 2], [3, 4], [5, 6], [4, 6], [1, 4], [1, 6]].map(Vec::from),
    )
    .expect("valid support")
}

pub fn six_member_ideal() -> MonomialIdeal {
    towerset::monomial::ideal_from_support(&six_member_support()).expect("nonempty support")
}

/// Bidiagonal standard form with `r` columns over `2r` variables.
pub fn bidiagonal(r: usize) -> StandardFormMatrix {
    let n = 2 * r;
    let d = (1..=r).map(|k| Monomial::var(n, k)).collect();
    let m = (r + 1..=n).map(|k| Monomial::var(n, k)).collect();
    StandardFormMatrix::bidiagonal(d, m).expect("valid form")
}

/// Standard form whose columns all hang off the first row but one.
pub fn star_form(r: usize) -> StandardFormMatrix {
    let n = 2 * r;
    let d = (1..=r).map(|k| Monomial::var(n, k)).collect();
    let m = (r + 1..=n).map(|k| Monomial::var(n, k)).collect();
    let sigma = (0..r).map(|j| j.min(1)).collect();
    StandardFormMatrix::new(d, m, sigma).expect("valid form")
}

/// Staircase tower `{(i, j) : i + j <= k + 1}` in the plane.
pub fn staircase(k: u32) -> PointSet {
    let pts = (1..=k).flat_map(|i| (1..=k + 1 - i).map(move |j| vec![i, j]));
    PointSet::new(2, pts).expect("planar points")
}
