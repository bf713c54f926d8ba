//! Laurent polynomials in the deformation parameter `q` with exact rational
//! coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `sum_e c_e q^e` with finitely many nonzero `c_e`.
///
/// Terms are kept sorted by exponent and no stored coefficient is zero, so
/// structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QLaurent {
    terms: Vec<(i32, Rational)>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    /// `c q^e`.
    pub fn monomial(c: Rational, e: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            QLaurent { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(Rational::ONE, e)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut v: Vec<(i32, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        QLaurent { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i32, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.terms
            .binary_search_by_key(&e, |(x, _)| *x)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or(Rational::ZERO)
    }

    /// The rational value when the polynomial has no `q` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::ZERO),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Lowest and highest exponent, `None` for zero.
    pub fn degree_range(&self) -> Option<(i32, i32)> {
        Some((self.terms.first()?.0, self.terms.last()?.0))
    }

    pub fn add_assign_ref(&mut self, other: &QLaurent) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.terms = other.terms.clone();
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = &a[i].1 + &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        self.terms = out;
    }

    pub fn add(&self, other: &QLaurent) -> QLaurent {
        let mut r = self.clone();
        r.add_assign_ref(other);
        r
    }

    pub fn neg(&self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &QLaurent) -> QLaurent {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> QLaurent {
        if r.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    /// Multiplication by `q^e`.
    pub fn shift(&self, e: i32) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &QLaurent) -> QLaurent {
        match (self.terms.as_slice(), other.terms.as_slice()) {
            ([], _) | (_, []) => QLaurent::zero(),
            ([(e, c)], _) => other.shift(*e).scale(c),
            (_, [(e, c)]) => self.shift(*e).scale(c),
            (a, b) => {
                let lo = a[0].0 + b[0].0;
                let hi = a[a.len() - 1].0 + b[b.len() - 1].0;
                let mut acc = vec![Rational::ZERO; (hi - lo + 1) as usize];
                for (ea, ca) in a {
                    for (eb, cb) in b {
                        acc[(ea + eb - lo) as usize] += &(ca * cb);
                    }
                }
                QLaurent {
                    terms: acc
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (i as i32 + lo, c))
                        .collect(),
                }
            }
        }
    }

    /// Substitutes `q = q0`; `q0 = 0` is rejected because of negative powers.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        if q0.is_zero() {
            return Err(Error::ZeroQ);
        }
        let mut acc = Rational::ZERO;
        for (e, c) in &self.terms {
            let p = q0.pow(*e).expect("nonzero base");
            acc += &(c * &p);
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64() * q0.powi(*e))
            .sum()
    }
}

impl fmt::Display for QLaurent {
    /// Ascending powers, e.g. `1 - 2*q^2 + 3/2*q^-1` is printed as
    /// `3/2*q^-1 + 1 - 2*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn canonical_sparse_form() {
        let a = QLaurent::from_terms([(1, r(2)), (0, r(1)), (1, r(-2)), (-1, r(0))]);
        assert_eq!(a, QLaurent::one());
        assert_eq!(a.len(), 1);
        let z = QLaurent::q_pow(3).sub(&QLaurent::q_pow(3));
        assert!(z.is_zero());
    }

    #[test]
    fn multiplication() {
        // (1 - q)(1 + q) = 1 - q^2
        let a = QLaurent::from_terms([(0, r(1)), (1, r(-1))]);
        let b = QLaurent::from_terms([(0, r(1)), (1, r(1))]);
        assert_eq!(a.mul(&b), QLaurent::from_terms([(0, r(1)), (2, r(-1))]));
        // q^-1 * q = 1
        assert!(QLaurent::q_pow(-1).mul(&QLaurent::q_pow(1)).is_one());
    }

    #[test]
    fn evaluation() {
        let a = QLaurent::from_terms([(-1, r(1)), (2, r(3))]);
        let half = Rational::new(1, 2);
        assert_eq!(a.eval(&half).unwrap(), Rational::new(11, 4));
        assert!(matches!(a.eval(&Rational::ZERO), Err(Error::ZeroQ)));
        assert!((a.eval_f64(0.5) - 2.75).abs() < 1e-15);
    }

    #[test]
    fn display() {
        let a = QLaurent::from_terms([(-1, Rational::new(3, 2)), (0, r(1)), (2, r(-2)), (1, r(-1))]);
        assert_eq!(a.to_string(), "3/2*q^-1 + 1 - q - 2*q^2");
        assert_eq!(QLaurent::monomial(r(-1), 0).to_string(), "-1");
        assert_eq!(QLaurent::zero().to_string(), "0");
    }
}
