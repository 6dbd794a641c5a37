//! Adaptive Simpson quadrature with an embedded error estimate.

use num_traits::Float;

pub(crate) struct Quadrature<T> {
    pub value: T,
    pub error: T,
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub(crate) fn adaptive_simpson<T: Float>(
    f: &impl Fn(T) -> T,
    a: T,
    b: T,
    tol: T,
) -> Quadrature<T> {
    let two = T::from(2.0).unwrap();
    let m = (a + b) / two;
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(a, b, fa, fm, fb);
    let (value, error) = recurse(f, a, b, fa, fm, fb, whole, tol, 50);
    Quadrature { value, error }
}

fn simpson<T: Float>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    let six = T::from(6.0).unwrap();
    let four = T::from(4.0).unwrap();
    (b - a) / six * (fa + four * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<T: Float>(
    f: &impl Fn(T) -> T,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: usize,
) -> (T, T) {
    let two = T::from(2.0).unwrap();
    let fifteen = T::from(15.0).unwrap();
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    let err = delta.abs() / fifteen;
    if depth == 0 || err <= tol {
        return (left + right + delta / fifteen, err);
    }
    let half = tol / two;
    let (lv, le) = recurse(f, a, m, fa, flm, fm, left, half, depth - 1);
    let (rv, re) = recurse(f, m, b, fm, frm, fb, right, half, depth - 1);
    (lv + rv, le + re)
}
