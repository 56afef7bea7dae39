//! Rounding helpers shared by the generators.

/// Rounds to the nearest integer, halves upwards.
pub(crate) fn round_half_up(x: f64) -> i64 {
    floor(x + 0.5)
}

/// Ceiling that tolerates representation error, so `0.7 * 10.0` is 7.
pub(crate) fn ceil_tol(x: f64) -> i64 {
    let nearest = floor(x + 0.5);
    if libm::fabs(x - nearest as f64) <= 1e-9 {
        nearest
    } else {
        libm::ceil(x) as i64
    }
}

fn floor(x: f64) -> i64 {
    libm::floor(x) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_half_up(2.5), 3);
        assert_eq!(round_half_up(2.49), 2);
        assert_eq!(round_half_up(0.5 * 7.0), 4);
        assert_eq!(ceil_tol(0.7 * 10.0), 7);
        assert_eq!(ceil_tol(7.2), 8);
        assert_eq!(ceil_tol(0.1 * 3.0), 1);
        assert_eq!(ceil_tol(0.0), 0);
    }
}
