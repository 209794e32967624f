//! The logistic family `g(x) = λ x (1 - x)` and its conjugacy to `z^2 + c`.
//!
//! `h(x) = λ (1/2 - x)` satisfies `f_c ∘ h = h ∘ g` with `c = λ/2 - λ²/4`.

/// Parameter `c` conjugate to the logistic map with parameter `lambda`.
pub fn logistic_param(lambda: f64) -> f64 {
    lambda / 2.0 - lambda * lambda / 4.0
}

/// The `λ ∈ [1, 4]` branch, defined for `c ∈ [-2, 1/4]`.
///
/// For `c ∈ (0, 1/4)` the other root `1 - sqrt(1 - 4c)` also lies in
/// `(0, 1)`; the larger root is returned.
pub fn c_to_logistic(c: f64) -> Option<f64> {
    if !(-2.0..=0.25).contains(&c) {
        return None;
    }
    Some(1.0 + (1.0 - 4.0 * c).sqrt())
}

/// The conjugating affine map `h`.
pub fn conjugacy(lambda: f64, x: f64) -> f64 {
    lambda * (0.5 - x)
}

pub fn logistic(lambda: f64, x: f64) -> f64 {
    lambda * x * (1.0 - x)
}
