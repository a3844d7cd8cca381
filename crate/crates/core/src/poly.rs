//! Small multivariate polynomials over the rationals, sufficient for the
//! cleared-denominator gap equation: a few variables, degree at most six.

use crate::surd::Scalar;
use crate::{rat, Rat};
use std::collections::BTreeMap;

/// Polynomial in `n_vars` variables; keys are exponent tuples of length
/// `n_vars`, values are nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    pub n_vars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars);
        let mut e = vec![0u32; n_vars];
        e[i] = 1;
        let mut p = Self::zero(n_vars);
        p.terms.insert(e, rat(1));
        p
    }

    pub fn monomial(n_vars: usize, exps: &[u32], c: Rat) -> Self {
        assert_eq!(exps.len(), n_vars);
        let mut p = Self::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        MultiPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Exact division by the monomial with exponents `exps`; panics if some
    /// term is not divisible.
    pub fn div_monomial(&self, exps: &[u32]) -> Self {
        assert_eq!(exps.len(), self.n_vars);
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            let q: Vec<u32> = e
                .iter()
                .zip(exps)
                .map(|(a, b)| {
                    assert!(a >= b, "monomial division is not exact");
                    a - b
                })
                .collect();
            out.insert(q, c.clone());
        }
        out
    }

    /// Substitute variable `i` by the rational constant `v`.
    pub fn subst_const(&self, i: usize, v: &Rat) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::take(&mut e2[i]);
            out.insert(e2, c * pow_rat(v, k));
        }
        out
    }

    /// Substitute variable `i` by the linear form `sum coeffs[j] * x_j`
    /// over the remaining variables (coeffs[i] must be zero).
    pub fn subst_linear(&self, i: usize, coeffs: &[Rat]) -> Self {
        assert_eq!(coeffs.len(), self.n_vars);
        assert!(coeffs[i].is_zero());
        let mut lin = Self::zero(self.n_vars);
        for (j, c) in coeffs.iter().enumerate() {
            lin = lin.add(&Self::var(self.n_vars, j).scale(c));
        }
        let mut out = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::take(&mut e2[i]);
            let mut term = Self::monomial(self.n_vars, &e2, c.clone());
            for _ in 0..k {
                term = term.mul(&lin);
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a point of any exact scalar type.
    pub fn eval<S: Scalar>(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.n_vars);
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = S::from_rat(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// If the polynomial involves a single variable, return it and the
    /// dense coefficient list (constant term first).
    pub fn as_univariate(&self) -> Option<(usize, Vec<Rat>)> {
        let mut var = None;
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    match var {
                        None => var = Some(i),
                        Some(v) if v == i => {}
                        _ => return None,
                    }
                }
            }
        }
        let v = var.unwrap_or(0);
        let deg = self.degree_in(v) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[v] as usize] += c;
        }
        Some((v, coeffs))
    }

    /// Divide out the content so the coefficients are coprime integers,
    /// with a positive first (lexicographically smallest monomial)
    /// coefficient.
    pub fn primitive(&self) -> Self {
        use num::{BigInt, Integer};
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::from(1);
        let mut numer_gcd = BigInt::from(0);
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
            numer_gcd = numer_gcd.gcd(c.numer());
        }
        let mut factor = Rat::new(denom_lcm, numer_gcd);
        if let Some(first) = self.terms.values().next() {
            if (first * &factor) < Rat::zero() {
                factor = -factor;
            }
        }
        self.scale(&factor)
    }
}

fn pow_rat(v: &Rat, k: u32) -> Rat {
    let mut out = rat(1);
    for _ in 0..k {
        out *= v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use crate::surd::{Scalar, Surd};

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(3, i)
    }

    #[test]
    fn ring_operations() {
        // (x0 + x1)^2 = x0^2 + 2 x0 x1 + x1^2
        let s = x(0).add(&x(1));
        let sq = s.mul(&s);
        assert_eq!(sq.terms.len(), 3);
        assert_eq!(sq.terms[&vec![1, 1, 0]], rat(2));
        assert!(sq.is_homogeneous());
        assert_eq!(sq.total_degree(), 2);
        assert!(sq.sub(&sq).is_zero());
    }

    #[test]
    fn substitution() {
        // x0 * x2^2 with x2 -> x0 + x1 gives x0^3 + 2 x0^2 x1 + x0 x1^2.
        let p = x(0).mul(&x(2)).mul(&x(2));
        let mut coeffs = vec![rat(1), rat(1), rat(0)];
        coeffs[2] = Rat::zero();
        let q = p.subst_linear(2, &coeffs);
        assert_eq!(q.terms[&vec![2, 1, 0]], rat(2));
        assert_eq!(q.degree_in(2), 0);
        // Constant substitution then univariate extraction.
        let r = q.subst_const(0, &rat(1));
        let (v, c) = r.as_univariate().unwrap();
        assert_eq!(v, 1);
        assert_eq!(c, vec![rat(1), rat(2), rat(1)]);
    }

    #[test]
    fn monomial_division() {
        let p = x(0).mul(&x(1)).mul(&x(1)).scale(&ratio(3, 2));
        let q = p.div_monomial(&[1, 1, 0]);
        assert_eq!(q, x(1).scale(&ratio(3, 2)));
    }

    #[test]
    #[should_panic]
    fn inexact_monomial_division_panics() {
        let p = x(0).add(&x(1));
        let _ = p.div_monomial(&[1, 0, 0]);
    }

    #[test]
    fn evaluation_over_surds() {
        // z^2 - 14 z + 1 vanishes at 7 + 4 sqrt(3).
        let z = MultiPoly::var(1, 0);
        let p = z
            .mul(&z)
            .sub(&z.scale(&rat(14)))
            .add(&MultiPoly::constant(1, rat(1)));
        let root = Surd::from_parts(7, 4, 3);
        assert!(p.eval(&[root]).is_zero());
        assert_eq!(p.eval(&[rat(0)]), rat(1));
    }

    #[test]
    fn primitive_normalization() {
        let p = x(0).scale(&ratio(2, 3)).add(&x(1).scale(&ratio(4, 3)));
        let q = p.primitive();
        assert_eq!(q.terms[&vec![1, 0, 0]], rat(1));
        assert_eq!(q.terms[&vec![0, 1, 0]], rat(2));
        let neg = p.scale(&rat(-1)).primitive();
        assert_eq!(neg, q);
    }
}
