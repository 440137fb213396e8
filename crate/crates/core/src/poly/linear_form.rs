use super::{PolyError, Polynomial};
use crate::exactnum::Field;

/// `L = x1 + ... + xr - x(r+1) - ... - x(r+s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignatureLinearForm {
    pub r: usize,
    pub s: usize,
}

impl SignatureLinearForm {
    pub fn new(r: usize, s: usize) -> Result<Self, PolyError> {
        if r == 0 || s == 0 {
            return Err(PolyError::Domain(format!(
                "signature ({r},{s}) needs r >= 1 and s >= 1"
            )));
        }
        Ok(SignatureLinearForm { r, s })
    }

    pub fn arity(&self) -> usize {
        self.r + self.s
    }

    pub fn polynomial<C: Field>(&self) -> Polynomial<C> {
        let n = self.arity();
        let mut p = Polynomial::zero(n);
        for i in 0..n {
            let x = Polynomial::var(n, i);
            p = if i < self.r { &p + &x } else { &p - &x };
        }
        p
    }

    /// Values for `x1 <- x(r+1) + ... + x(r+s) - x2 - ... - xr`, others fixed;
    /// a polynomial vanishes under this substitution iff `L` divides it.
    fn root_substitution<C: Field>(&self) -> Vec<Polynomial<C>> {
        let n = self.arity();
        let mut values: Vec<Polynomial<C>> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        let l = self.polynomial::<C>();
        values[0] = &Polynomial::var(n, 0) - &l;
        values
    }
}

/// Largest `m >= 1` with `L^m | p`, together with `p / L^m`.
pub fn divide_by_signature_form<C: Field>(
    p: &Polynomial<C>,
    form: &SignatureLinearForm,
) -> Result<(u32, Polynomial<C>), PolyError> {
    if p.arity() != form.arity() {
        return Err(PolyError::Arity {
            expected: form.arity(),
            found: p.arity(),
        });
    }
    if p.is_zero() {
        return Err(PolyError::Domain("division of the zero polynomial".into()));
    }
    if !p.is_homogeneous() {
        return Err(PolyError::Domain("polynomial is not homogeneous".into()));
    }
    let l = form.polynomial::<C>();
    let values = form.root_substitution::<C>();
    let mut quotient = p.clone();
    let mut m = 0;
    while quotient.degree().unwrap_or(0) > 0 && quotient.substitute(&values)?.is_zero() {
        quotient = quotient.div_exact(&l)?;
        m += 1;
    }
    if m == 0 {
        Err(PolyError::NotDivisible)
    } else {
        Ok((m, quotient))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    type P = Polynomial<Rational>;

    #[test]
    fn divides_products() {
        let form = SignatureLinearForm::new(2, 2).unwrap();
        let l = form.polynomial::<Rational>();
        let q = P::parse("x1 + x2 + x3 + x4", 4).unwrap();
        let (m, back) = divide_by_signature_form(&(&l * &q), &form).unwrap();
        assert_eq!((m, back), (1, q.clone()));
        let (m, back) = divide_by_signature_form(&(&l.pow(2) * &q), &form).unwrap();
        assert_eq!((m, back), (2, q));
    }

    #[test]
    fn rejects() {
        let form = SignatureLinearForm::new(2, 2).unwrap();
        let p = P::parse("x1^2 + x3^2", 4).unwrap();
        assert_eq!(divide_by_signature_form(&p, &form), Err(PolyError::NotDivisible));
        let q = P::parse("x1^2 + x3", 4).unwrap();
        assert!(matches!(divide_by_signature_form(&q, &form), Err(PolyError::Domain(_))));
        assert!(SignatureLinearForm::new(0, 2).is_err());
    }
}
