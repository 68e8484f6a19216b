//! Bessel function of the first kind, order zero.

/// J₀(x).
///
/// Piecewise rational approximation near the origin and a Hankel-type
/// asymptotic expansion beyond, accurate to a few ulp over the real line
/// (the fdlibm algorithm, via `libm`).
pub fn bessel_j0(x: f64) -> f64 {
    libm::j0(x)
}
