//! Bisection for monotone increasing functions.

use crate::scalar::Scalar;

/// Smallest `x` in `[lo, hi]` (to within `tol`) with `g(x) >= 0`, for `g`
/// non-decreasing on the bracket.
///
/// Returns `lo` when `g(lo) >= 0` and `hi` when `g(hi) < 0`; the caller decides
/// whether either end is meaningful. Stops once the bracket is narrower than
/// `tol`, the midpoint stops moving, or `max_iter` halvings have been made.
pub fn bisect_increasing<T, G>(mut lo: T, mut hi: T, g: G, tol: T, max_iter: usize) -> T
where
    T: Scalar,
    G: Fn(T) -> T,
{
    if g(lo) >= T::zero() {
        return lo;
    }
    if g(hi) < T::zero() {
        return hi;
    }
    let half = T::lit(0.5);
    for _ in 0..max_iter {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) >= T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo + (hi - lo) * half
}
