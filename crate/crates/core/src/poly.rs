//! Sparse multivariate polynomials over an exact field.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{Field, Scalar};

/// The ring `K[X_0, ..., X_n]`; `nvars = n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub nvars: usize,
    pub field: Field,
}

impl Ring {
    pub fn new(nvars: usize, field: Field) -> Ring {
        assert!(nvars >= 1, "a projective ring needs X0");
        Ring { nvars, field }
    }

    /// `n` of `P^n`.
    pub fn dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(*self)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(*self, self.field.one())
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::monomial(*self, Monomial::var(self.nvars, i), self.field.one())
    }

    pub fn int(&self, v: i64) -> Scalar {
        self.field.int(v)
    }
}

/// A polynomial stored as terms sorted strictly decreasing in the monomial
/// order, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(ring: Ring) -> Poly {
        Poly { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Ring, c: Scalar) -> Poly {
        Poly::monomial(ring, Monomial::one(ring.nvars), c)
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Scalar) -> Poly {
        debug_assert_eq!(m.nvars(), ring.nvars);
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly { ring, terms: alloc::vec![(m, c)] }
    }

    /// Collects terms in any order, merging duplicates and dropping zeros.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { ring, terms }
    }

    /// Terms already sorted decreasing with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: Ring, terms: Vec<(Monomial, Scalar)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring, terms }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lead_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.ring.field.zero())
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Poly { ring: self.ring, terms: out }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring);
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(v) => v.add_mul(ca, cb),
                    None => {
                        acc.insert(m, ca * cb);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { ring: self.ring, terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect();
        Poly { ring: self.ring, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d.clone())).collect();
        Poly { ring: self.ring, terms }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.clone(), d * c)).collect();
        Poly { ring: self.ring, terms }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Value at an affine-normalized point.
    pub fn evaluate(&self, p: &AffinePoint) -> Result<Scalar> {
        if p.coords.len() != self.ring.nvars || p.field() != self.ring.field {
            return Err(Error::RingMismatch);
        }
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v *= &p.coords[i].pow(e as u32);
                }
            }
            acc += &v;
        }
        Ok(acc)
    }

    /// `f(1, X_1, ..., X_n)`: terms keep their `X_1..X_n` exponents with `X_0`
    /// set to zero. Affine polynomials share the ring tag of their source.
    pub fn dehomogenize(&self) -> Poly {
        Poly::from_terms(self.ring, self.terms.iter().map(|(m, c)| (m.drop_x0(), c.clone())))
    }

    /// `X_0^d f(X_1/X_0, ...)` for an `X_0`-free polynomial of degree at most `d`.
    pub fn homogenize(&self, d: u32) -> Result<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let rest = m.degree() - m.exp(0) as u32;
            if rest > d {
                return Err(Error::DegreeMismatch { expected: d, found: rest });
            }
            terms.push((m.with_x0((d - rest) as u16), c.clone()));
        }
        Ok(Poly::from_terms(self.ring, terms))
    }

    /// Substitutes `X_0 = 0`.
    pub fn mod_x0(&self) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(0) == 0).cloned().collect();
        Poly { ring: self.ring, terms }
    }

    /// Largest `k` with `X_0^k` dividing every term.
    pub fn x0_valuation(&self) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(0)).min().unwrap_or(0)
    }

    pub fn div_x0_power(&self, k: u16) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.with_x0(m.exp(0) - k), c.clone()))
            .collect();
        Poly { ring: self.ring, terms }
    }

    /// Substitutes `X_i -> X_i + shift[i]` in an `X_0`-free polynomial
    /// (`shift[0]` is ignored).
    pub fn translate(&self, shift: &[Scalar]) -> Poly {
        let ring = self.ring;
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            // expand prod_i (X_i + a_i)^{e_i}
            let mut partial: Vec<(Monomial, Scalar)> = alloc::vec![(Monomial::one(ring.nvars), c.clone())];
            for i in 1..ring.nvars {
                let e = m.exp(i) as u32;
                if e == 0 {
                    continue;
                }
                let a = &shift[i];
                let mut next = Vec::new();
                let mut binom = ring.field.one();
                for k in 0..=e {
                    // binom(e, k) * X_i^k * a^(e-k)
                    let coef = &binom * &a.pow(e - k);
                    if !coef.is_zero() {
                        let mut xk = Monomial::one(ring.nvars);
                        for _ in 0..k {
                            xk = xk.mul_var(i);
                        }
                        for (pm, pc) in &partial {
                            next.push((pm.mul(&xk), pc * &coef));
                        }
                    }
                    binom = &(&binom * &ring.field.int((e - k) as i64)) / &ring.field.int(k as i64 + 1);
                }
                partial = next;
            }
            for (pm, pc) in partial {
                match acc.get_mut(&pm) {
                    Some(v) => *v += &pc,
                    None => {
                        acc.insert(pm, pc);
                    }
                }
            }
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { ring, terms }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: `c*X0^a*X1^b` terms in monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A point `(1 : a_1 : ... : a_n)` off the hyperplane `X_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePoint {
    coords: Vec<Scalar>,
}

impl AffinePoint {
    /// Accepts projective coordinates and rescales so the first is 1.
    pub fn normalized(coords: Vec<Scalar>) -> Result<AffinePoint> {
        let first = coords.first().ok_or(Error::Invalid("empty point".into()))?;
        if first.is_zero() {
            return Err(Error::SupportMeetsHyperplane);
        }
        let inv = first.inv()?;
        Ok(AffinePoint { coords: coords.iter().map(|c| c * &inv).collect() })
    }

    pub fn from_ints(field: Field, coords: &[i64]) -> Result<AffinePoint> {
        AffinePoint::normalized(coords.iter().map(|&c| field.int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    /// Generators `X_i - a_i X_0` of the point's homogeneous prime ideal.
    pub fn prime_ideal_gens(&self, ring: Ring) -> Vec<Poly> {
        (1..ring.nvars)
            .map(|i| {
                let xi = ring.var(i);
                let x0 = ring.var(0).scale(&self.coords[i]);
                &xi - &x0
            })
            .collect()
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::parse::parse_poly;

    fn q3() -> Ring {
        Ring::new(3, Field::Rational)
    }

    fn p(s: &str) -> Poly {
        parse_poly(q3(), s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("X0+X1") * &p("X0-X1"), p("X0^2-X1^2"));
        assert!((&p("X0+X1") * &q3().zero()).is_zero());
    }

    #[test]
    fn generator_of_iw() {
        let f = &(&p("X1") * &p("X1-2*X0")) * &p("X1+2*X0");
        assert_eq!(f, p("X1^3-4*X0^2*X1"));
        assert_eq!(f.to_string(), "X1^3 - 4*X0^2*X1");
    }

    #[test]
    fn evaluation_on_support_points() {
        let r = q3();
        let f = p("X1^3-4*X0^2*X1");
        let g = &p("X2-X0") * &p("X1^2+X2^2-4*X0^2");
        let p5 = AffinePoint::from_ints(r.field, &[1, 2, 0]).unwrap();
        let p1 = AffinePoint::from_ints(r.field, &[1, 0, 1]).unwrap();
        assert!(f.evaluate(&p5).unwrap().is_zero());
        assert!(g.evaluate(&p1).unwrap().is_zero());
        assert!(r.var(0).evaluate(&p5).unwrap().is_one());
    }

    #[test]
    fn dehomogenize_examples() {
        assert_eq!(p("X1^3-4*X0^2*X1").dehomogenize(), p("X1^3-4*X1"));
        assert_eq!(p("X0^5").dehomogenize(), q3().one());
        let r2 = Ring::new(2, Field::Rational);
        let f = parse_poly(r2, "2*X0^4+X0^2*X1^2-X1^4").unwrap();
        assert_eq!(f.dehomogenize(), parse_poly(r2, "2+X1^2-X1^4").unwrap());
        let g = p("X1^2*X2 - 3*X0*X2^2 + X0^3");
        assert_eq!(g.dehomogenize().homogenize(3).unwrap(), g);
    }

    #[test]
    fn point_on_hyperplane_rejected() {
        assert_eq!(
            AffinePoint::from_ints(Field::Rational, &[0, 1, 0]),
            Err(Error::SupportMeetsHyperplane)
        );
        let pt = AffinePoint::from_ints(Field::Rational, &[2, 4, 1]).unwrap();
        assert_eq!(pt.to_string(), "(1:2:1/2)");
    }

    #[test]
    fn translate_moves_point_to_origin() {
        let f = p("X1^2 + X1*X2 - 3"); // affine
        let shift = [q3().int(0), q3().int(2), q3().int(-1)];
        let g = f.translate(&shift);
        // g(y) = f(y + a); g(0) = f(a) = 4 - 2 - 3 = -1
        assert_eq!(g.coeff(&Monomial::one(3)), q3().int(-1));
        let back: Vec<Scalar> = shift.iter().map(|s| -s).collect();
        assert_eq!(g.translate(&back), f);
    }

    #[test]
    fn mismatched_rings_error() {
        let a = p("X1");
        let b = Poly::monomial(Ring::new(2, Field::Rational), Monomial::var(2, 1), Field::Rational.one());
        assert_eq!(a.checked_mul(&b), Err(Error::RingMismatch));
    }
}
