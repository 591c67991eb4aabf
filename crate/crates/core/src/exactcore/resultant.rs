use super::matrix::PolyMatrix;
use super::poly::MultiPoly;
use super::ExactError;

/// Sylvester resultant of `u` and `v` eliminating variable `var`.
///
/// The remaining variables act as parameters, so the result is a polynomial
/// in the same variable universe that does not involve `var`.
pub fn resultant_univ(u: &MultiPoly, v: &MultiPoly, var: usize) -> Result<MultiPoly, ExactError> {
    if u.is_zero() || v.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let n = u.nvars();
    let a = u.coefficients_in(var);
    let b = v.coefficients_in(var);
    let (m, k) = (a.len() - 1, b.len() - 1);
    if m == 0 && k == 0 {
        return Ok(MultiPoly::one(n));
    }
    if m == 0 {
        return Ok(a[0].pow(k as u32));
    }
    if k == 0 {
        return Ok(b[0].pow(m as u32));
    }
    let size = m + k;
    let mut s = PolyMatrix::zeros(size, size, n);
    // rows 0..k hold shifted copies of u, rows k..k+m shifted copies of v,
    // coefficients written from the leading one down
    for r in 0..k {
        for (j, c) in a.iter().rev().enumerate() {
            s.set(r, r + j, c.clone());
        }
    }
    for r in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            s.set(k + r, r + j, c.clone());
        }
    }
    Ok(s.determinant())
}

/// Discriminant convention: `disc(u) = res(u, ∂u/∂var)`.
///
/// No division by the leading coefficient and no `(-1)^{n(n-1)/2}` sign, so
/// `disc(t² + bt + c) = -(b² - 4c)`. Only the zero set matters downstream.
pub fn discriminant(u: &MultiPoly, var: usize) -> Result<MultiPoly, ExactError> {
    let du = u.derivative(var);
    if du.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    resultant_univ(u, &du, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Scalar;

    #[test]
    fn linear_resultant() {
        // variables t, a, b
        let t = MultiPoly::var(3, 0);
        let a = MultiPoly::var(3, 1);
        let b = MultiPoly::var(3, 2);
        let r = resultant_univ(&(&t - &a), &(&t - &b), 0).unwrap();
        assert_eq!(r, &a - &b);
    }

    #[test]
    fn quadratic_discriminant() {
        let t = MultiPoly::var(3, 0);
        let b = MultiPoly::var(3, 1);
        let c = MultiPoly::var(3, 2);
        let u = &(&(&t * &t) + &(&b * &t)) + &c;
        let d = discriminant(&u, 0).unwrap();
        let expect = &(&b * &b) - &c.scale(&Scalar::from_int(4));
        assert_eq!(d, -expect);
    }
}
