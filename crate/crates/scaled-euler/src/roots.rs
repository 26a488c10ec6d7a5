//! Bisection on monotone functions.
//!
//! Every root problem in the crate is a strictly monotone scalar equation
//! (wave-curve parameterizations are monotone wherever they are used), so
//! unconditionally convergent bisection is used throughout, driven close to
//! the floating-point resolution of the bracket.

/// Bisect `f` for a root on `[lo, hi]`, assuming `f(lo)` and `f(hi)` have
/// opposite signs (a zero endpoint is returned immediately).
///
/// Runs until the bracket collapses to adjacent floats or `max_iter` is
/// reached; with `max_iter >= 120` this is bracket exhaustion in f64.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, max_iter: u32) -> f64 {
    let flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    let fhi = f(hi);
    if fhi == 0.0 {
        return hi;
    }
    debug_assert!(
        flo.signum() != fhi.signum(),
        "bisect bracket does not straddle a sign change: f({lo}) = {flo}, f({hi}) = {fhi}"
    );
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = flo;
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
