use num_rational::BigRational;

use super::{FieldError, Mat3, Scalar, Vec3};

/// Rational rotation from the Cayley transform `(I−S)(I+S)⁻¹` of the skew
/// matrix `S = −[u]ₓ`, `u = (p, q, r)`; in closed form
/// `((1−|u|²)I + 2uuᵀ + 2[u]ₓ) / (1+|u|²)`.
pub fn rational_rotation(p: &BigRational, q: &BigRational, r: &BigRational) -> Mat3 {
    let u = [Scalar::from(p.clone()), Scalar::from(q.clone()), Scalar::from(r.clone())];
    let n2 = &(&(&u[0] * &u[0]) + &(&u[1] * &u[1])) + &(&u[2] * &u[2]);
    let one = Scalar::one();
    let two = Scalar::from_int(2);
    let denom = (&one + &n2).inverse().expect("1+|u|² > 0");
    let diag = &one - &n2;
    // [u]ₓ
    let zero = Scalar::zero();
    let skew = [
        [zero.clone(), -&u[2], u[1].clone()],
        [u[2].clone(), zero.clone(), -&u[0]],
        [-&u[1], u[0].clone(), zero],
    ];
    let entry = |i: usize, j: usize| {
        let mut e = &two * &(&(&u[i] * &u[j]) + &skew[i][j]);
        if i == j {
            e = &e + &diag;
        }
        &e * &denom
    };
    let row = |i| Vec3::new(entry(i, 0), entry(i, 1), entry(i, 2));
    Mat3::from_rows(row(0), row(1), row(2))
}

/// Rows of [`rational_rotation`] scaled by `scales`, flipped to a right-handed
/// triple when the scales carry an odd number of minus signs.
pub fn orthogonal_basis(
    skew: [&BigRational; 3],
    scales: [&BigRational; 3],
) -> Result<(Vec3, Vec3, Vec3), FieldError> {
    if scales.iter().any(|s| num_traits::Zero::is_zero(*s)) {
        return Err(FieldError::ZeroScale);
    }
    let o = rational_rotation(skew[0], skew[1], skew[2]);
    let mut b: Vec<Vec3> = o
        .rows
        .iter()
        .zip(scales)
        .map(|(r, s)| r.scale(&Scalar::from(s.clone())))
        .collect();
    if b[0].dot(&b[1].cross(&b[2])).signum() < 0 {
        b = b.iter().map(|v| -v).collect();
    }
    let mut it = b.into_iter();
    Ok((it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
}
