//! Minimal 3-vector helpers to avoid ad-hoc component juggling.
//!
//! Everything here operates on plain `[f64; 3]` so callers can build
//! vectors from literals without wrapper types.

pub type Vec3 = [f64; 3];

#[inline]
pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm_sq(v: &Vec3) -> f64 {
    dot(v, v)
}

#[inline]
pub fn norm(v: &Vec3) -> f64 {
    norm_sq(v).sqrt()
}

#[inline]
pub fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale(v: &Vec3, s: f64) -> Vec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

#[inline]
pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Unit vector along `v`, or `None` for the zero vector.
pub fn unit(v: &Vec3) -> Option<Vec3> {
    let n = norm(v);
    if n > 0.0 {
        Some(scale(v, 1.0 / n))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_is_orthogonal() {
        let a = [1.0, 2.0, 3.0];
        let b = [-0.5, 4.0, 1.0];
        let c = cross(&a, &b);
        assert!(dot(&a, &c).abs() < 1e-14);
        assert!(dot(&b, &c).abs() < 1e-14);
    }

    #[test]
    fn unit_of_zero_is_none() {
        assert!(unit(&[0.0, 0.0, 0.0]).is_none());
    }
}
