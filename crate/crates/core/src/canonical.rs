//! Graded pieces of the canonical module `Hom_{K[x_0]}(R_X, K[x_0])(-1)`.
//!
//! Since `x_0` is regular on `R_X`, multiplying by `X_0` maps standard
//! monomials to standard monomials, so the `X_0`-free standard monomials of
//! degrees `0..=r_X` form a `K[x_0]`-basis of `R_X`. A homogeneous functional
//! of degree `-d` is then a coefficient vector on that basis, with entries
//! forced to zero on elements of degree at most `d`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gbasis::{HomogIdeal, NfTable};
use crate::linalg::{dot, Matrix};
use crate::monomial::Monomial;
use crate::poly::{Poly, Ring};
use crate::random::seeded;
use crate::scalar::{Field, Scalar};
use crate::scheme::{Scheme, SchemeMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub elements: Vec<Monomial>,
    pub degrees: Vec<u32>,
    /// `h_i = HF_X(i) - HF_X(i-1)` for `i = 0..=r_X`.
    pub counts: Vec<usize>,
}

impl AdaptedBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A homogeneous element of degree `-d`: `g_k -> coeffs[k] * x_0^(deg g_k - d - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub d: i64,
    pub coeffs: Vec<Scalar>,
}

impl OmegaElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

#[derive(Clone, Debug)]
pub struct AnnihilatorTest {
    pub d: u32,
    pub zero: bool,
    pub kernel_dim: usize,
    /// A nonzero form of degree `r_X` killing the whole piece.
    pub witness: Option<Poly>,
}

#[derive(Clone, Debug)]
pub struct InjectiveSearch {
    pub functional: Option<OmegaElement>,
    pub attempts: u32,
    /// The field is finite, where existence is not guaranteed.
    pub finite_field_warning: bool,
}

pub const INJECTIVE_ATTEMPTS: u32 = 16;
pub const INJECTIVE_BOUND: i64 = 20;

/// Works for both modes; holds normal forms up to degree `2 r_X + 1`.
#[derive(Clone, Debug)]
pub struct Canonical {
    ring: Ring,
    ideal: HomogIdeal,
    r: u32,
    degree: usize,
    hf: Vec<usize>,
    basis: AdaptedBasis,
    index: BTreeMap<Monomial, usize>,
    table: NfTable,
}

impl Canonical {
    pub fn new(x: &Scheme) -> Result<Canonical> {
        let ring = x.ring();
        let r = x.regularity_index();
        let table = x.nf_table(2 * r + 1)?;
        let mut elements = Vec::new();
        let mut degrees = Vec::new();
        let mut counts = Vec::new();
        if !x.is_empty() {
            for i in 0..=r {
                let before = elements.len();
                for m in table.degree(i).standard.monomials() {
                    if m.exp(0) == 0 {
                        elements.push(m.clone());
                        degrees.push(i);
                    }
                }
                counts.push(elements.len() - before);
            }
        }
        debug_assert_eq!(elements.len(), x.degree());
        let index = elements.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        Ok(Canonical {
            ring,
            ideal: x.ideal().clone(),
            r,
            degree: x.degree(),
            hf: (0..=2 * r + 2).map(|i| x.hf(i as i64)).collect(),
            basis: AdaptedBasis { elements, degrees, counts },
            index,
            table,
        })
    }

    pub fn adapted(&self) -> &AdaptedBasis {
        &self.basis
    }

    pub fn regularity_index(&self) -> u32 {
        self.r
    }

    fn field(&self) -> Field {
        self.ring.field
    }

    /// Adapted coordinates of a normal form, given as standard-monomial
    /// coordinates in degree `e`.
    fn adapted_coords(&self, e: u32, nf: &[Scalar]) -> Vec<Scalar> {
        let mut out = alloc::vec![self.field().zero(); self.degree];
        let std = &self.table.degree(e).standard;
        for (k, c) in nf.iter().enumerate() {
            if !c.is_zero() {
                out[self.index[&std.get(k).drop_x0()]] = c.clone();
            }
        }
        out
    }

    /// Adapted coordinates of any homogeneous form.
    pub fn coords(&self, h: &Poly) -> Result<Vec<Scalar>> {
        let e = match h.degree() {
            None => return Ok(alloc::vec![self.field().zero(); self.degree]),
            Some(e) => e,
        };
        if !h.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if e <= self.table.max_degree() {
            return Ok(self.adapted_coords(e, &self.table.reduce(h)));
        }
        let nf = self.ideal.normal_form(h)?;
        let mut out = alloc::vec![self.field().zero(); self.degree];
        for (m, c) in nf.terms() {
            out[self.index[&m.drop_x0()]] = c.clone();
        }
        Ok(out)
    }

    fn product_coords(&self, m: &Monomial, f: &Poly) -> Result<Vec<Scalar>> {
        let e = m.degree() + f.degree().unwrap_or(0);
        if e <= self.table.max_degree() {
            Ok(self.adapted_coords(e, &self.table.reduce_product(m, f)))
        } else {
            self.coords(&f.mul_monomial(m))
        }
    }

    /// Basis of `(ω)_{-d}`: one unit functional per adapted element of
    /// degree at least `d + 1`.
    pub fn omega_piece(&self, d: i64) -> Vec<OmegaElement> {
        (0..self.degree)
            .filter(|&k| self.basis.degrees[k] as i64 > d)
            .map(|k| {
                let mut coeffs = alloc::vec![self.field().zero(); self.degree];
                coeffs[k] = self.field().one();
                OmegaElement { d, coeffs }
            })
            .collect()
    }

    /// `HF_ω(-d) = deg(X) - HF_X(d)`.
    pub fn omega_dim_formula(&self, d: i64) -> usize {
        let hf = if d < 0 { 0 } else { self.hf.get(d as usize).copied().unwrap_or(self.degree) };
        self.degree - hf
    }

    /// The coefficient `c` with `φ(h) = c * x_0^(deg h - d - 1)`.
    pub fn evaluate(&self, phi: &OmegaElement, h: &Poly) -> Result<Scalar> {
        Ok(dot(self.field(), &phi.coeffs, &self.coords(h)?))
    }

    /// `f · φ`, where `(f · φ)(g) = φ(f g)`.
    pub fn module_action(&self, f: &Poly, phi: &OmegaElement) -> Result<OmegaElement> {
        let i = match f.degree() {
            None => return Ok(OmegaElement { d: phi.d, coeffs: alloc::vec![self.field().zero(); self.degree] }),
            Some(i) => i,
        };
        let coeffs = self
            .basis
            .elements
            .iter()
            .map(|g| Ok(dot(self.field(), &phi.coeffs, &self.product_coords(g, f)?)))
            .collect::<Result<_>>()?;
        Ok(OmegaElement { d: phi.d - i as i64, coeffs })
    }

    /// Forms of degree `i` killing each functional: `φ(f g_k) = 0` for all
    /// adapted `g_k`, which suffices by `K[x_0]`-linearity.
    pub fn annihilator_in_degree(&self, functionals: &[OmegaElement], i: u32) -> Result<Vec<Poly>> {
        let monos = self.ideal.standard_monomials(i)?;
        let mut cols = Vec::with_capacity(monos.len());
        for m in &monos {
            let mut col = Vec::new();
            for g in &self.basis.elements {
                let c = self.product_coords(g, &Poly::monomial(self.ring, m.clone(), self.field().one()))?;
                for phi in functionals {
                    col.push(dot(self.field(), &phi.coeffs, &c));
                }
            }
            cols.push(col);
        }
        let height = cols.first().map_or(0, Vec::len);
        let kernel = if height == 0 {
            Matrix::identity(self.field(), monos.len()).rows().to_vec()
        } else {
            Matrix::from_columns(self.field(), height, &cols).kernel()
        };
        Ok(kernel
            .into_iter()
            .map(|v| Poly::from_terms(self.ring, monos.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero())))
            .collect())
    }

    fn check_range(&self, d: u32) -> Result<()> {
        if self.r == 0 || d > self.r - 1 {
            return Err(Error::OutOfRange(format!("degree {d} outside 0..=r_X-1 (r_X = {})", self.r)));
        }
        Ok(())
    }

    /// `dim Ann((ω)_{-d}) ∩ (R_X)_i`.
    pub fn annihilator_dim(&self, d: u32, i: u32) -> Result<usize> {
        Ok(self.annihilator_in_degree(&self.omega_piece(d as i64), i)?.len())
    }

    /// Whether `Ann_{R_X}((ω)_{-d}) = 0`, tested in degree `r_X`.
    pub fn annihilator_is_zero(&self, d: u32) -> Result<AnnihilatorTest> {
        self.check_range(d)?;
        let ker = self.annihilator_in_degree(&self.omega_piece(d as i64), self.r)?;
        Ok(AnnihilatorTest { d, zero: ker.is_empty(), kernel_dim: ker.len(), witness: ker.into_iter().next() })
    }

    /// Rank of restricting `(ω)_{-d}` to `(R_X)_{d+1}`, and whether every
    /// restriction vanishes on `x_0 (R_X)_d`.
    pub fn restriction(&self, d: u32) -> Result<(usize, bool)> {
        let piece = self.omega_piece(d as i64);
        let upper = self.ideal.standard_monomials(d + 1)?;
        let rows: Vec<Vec<Scalar>> = piece
            .iter()
            .map(|phi| {
                upper
                    .iter()
                    .map(|m| self.evaluate(phi, &Poly::monomial(self.ring, m.clone(), self.field().one())))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let rank = Matrix::from_rows(self.field(), upper.len(), rows).rank();
        let x0 = Monomial::var(self.ring.nvars, 0);
        let mut kills = true;
        for m in self.ideal.standard_monomials(d)? {
            let h = Poly::monomial(self.ring, m.mul(&x0), self.field().one());
            for phi in &piece {
                kills &= self.evaluate(phi, &h)?.is_zero();
            }
        }
        Ok((rank, kills))
    }

    /// `HF_X(d+1) - HF_X(d)`, the dimension of functionals on `(R_X)_{d+1}`
    /// vanishing on `x_0 (R_X)_d`.
    pub fn restriction_target_dim(&self, d: u32) -> usize {
        let hf = |i: usize| self.hf.get(i).copied().unwrap_or(self.degree);
        hf(d as usize + 1) - hf(d as usize)
    }

    /// Random combinations of the basis of `(ω)_{-d}` until one has zero
    /// annihilator.
    pub fn find_injective_functional(&self, x: &Scheme, d: u32, seed: u64) -> Result<InjectiveSearch> {
        if x.mode() != SchemeMode::Components {
            return Err(Error::RawMode);
        }
        if x.is_locally_gorenstein() != Some(true) {
            return Err(Error::NotLocallyGorenstein);
        }
        self.check_range(d)?;
        let piece = self.omega_piece(d as i64);
        let mut rng = seeded(seed);
        for attempt in 1..=INJECTIVE_ATTEMPTS {
            let mut coeffs = alloc::vec![self.field().zero(); self.degree];
            for phi in &piece {
                let c = self.field().int(rng.gen_range(-INJECTIVE_BOUND..=INJECTIVE_BOUND));
                crate::linalg::axpy(&mut coeffs, &c, &phi.coeffs);
            }
            let phi = OmegaElement { d: d as i64, coeffs };
            if phi.is_zero() {
                continue;
            }
            if self.annihilator_in_degree(core::slice::from_ref(&phi), self.r)?.is_empty() {
                return Ok(InjectiveSearch {
                    functional: Some(phi),
                    attempts: attempt,
                    finite_field_warning: !self.field().is_infinite(),
                });
            }
        }
        Ok(InjectiveSearch {
            functional: None,
            attempts: INJECTIVE_ATTEMPTS,
            finite_field_warning: !self.field().is_infinite(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::AffinePoint;
    use crate::scheme::{scheme_from_components, scheme_from_ideal, SchemeComponent};

    fn r3() -> Ring {
        Ring::new(3, Field::Rational)
    }

    fn pts(cs: &[[i64; 3]]) -> Scheme {
        let comps: Vec<_> = cs
            .iter()
            .map(|c| SchemeComponent::reduced(AffinePoint::from_ints(Field::Rational, c).unwrap()))
            .collect();
        scheme_from_components(r3(), &comps).unwrap()
    }

    fn x36() -> Scheme {
        let i5 = alloc::vec![parse_poly(r3(), "X1-2*X0").unwrap(), parse_poly(r3(), "X2^2").unwrap()];
        let p = |c: &[i64]| AffinePoint::from_ints(Field::Rational, c).unwrap();
        scheme_from_components(
            r3(),
            &[
                SchemeComponent::reduced(p(&[1, 0, 1])),
                SchemeComponent::reduced(p(&[1, 0, -2])),
                SchemeComponent::reduced(p(&[1, 2, 1])),
                SchemeComponent::new(p(&[1, 2, 0]), i5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn adapted_degrees_and_omega_dims() {
        let c = Canonical::new(&x36()).unwrap();
        assert_eq!(c.adapted().degrees, [0, 1, 1, 2, 2]);
        assert_eq!(c.adapted().counts, [1, 2, 2]);
        assert_eq!(c.omega_piece(1).len(), 2);
        assert_eq!(c.omega_piece(0).len(), 4);
        assert_eq!(c.omega_piece(2).len(), 0);
        for d in 0..=2 {
            assert_eq!(c.omega_piece(d).len(), c.omega_dim_formula(d));
        }
        let r1 = Ring::new(2, Field::Rational);
        let q = scheme_from_ideal(r1, &[parse_poly(r1, "2*X0^4+X0^2*X1^2-X1^4").unwrap()]).unwrap();
        assert_eq!(Canonical::new(&q).unwrap().adapted().degrees, [0, 1, 2, 3]);
    }

    #[test]
    fn cayley_bacharach_via_annihilators() {
        let c = Canonical::new(&x36()).unwrap();
        assert!(c.annihilator_is_zero(1).unwrap().zero);
        assert!(c.annihilator_is_zero(0).unwrap().zero);
        let bad = pts(&[[1, 0, 0], [1, 1, 0], [1, 2, 0], [1, 0, 1]]);
        let cb = Canonical::new(&bad).unwrap();
        let t = cb.annihilator_is_zero(bad.regularity_index() - 1).unwrap();
        assert!(!t.zero);
        let w = t.witness.unwrap();
        assert!(!w.evaluate(&AffinePoint::from_ints(Field::Rational, &[1, 0, 1]).unwrap()).unwrap().is_zero());
        assert_eq!(c.annihilator_is_zero(2).unwrap_err(), Error::OutOfRange("degree 2 outside 0..=r_X-1 (r_X = 2)".into()));
    }

    #[test]
    fn action_is_a_module_structure() {
        let c = Canonical::new(&x36()).unwrap();
        let phi = &c.omega_piece(0)[2];
        assert_eq!(c.module_action(&r3().one(), phi).unwrap(), *phi);
        let f = parse_poly(r3(), "X1 - 3*X2 + X0").unwrap();
        let g = parse_poly(r3(), "X2^2 + 2*X0*X1").unwrap();
        let fg = &f * &g;
        let lhs = c.module_action(&fg, phi).unwrap();
        let rhs = c.module_action(&f, &c.module_action(&g, phi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            c.evaluate(&c.module_action(&f, phi).unwrap(), &g).unwrap(),
            c.evaluate(&c.module_action(&g, phi).unwrap(), &f).unwrap()
        );
        let x0 = r3().var(0);
        let shifted = c.module_action(&x0, phi).unwrap();
        assert_eq!(shifted.d, -1);
        assert_eq!(c.evaluate(&shifted, &g).unwrap(), c.evaluate(phi, &g).unwrap());
    }

    #[test]
    fn restriction_and_injective_functional() {
        let x = x36();
        let c = Canonical::new(&x).unwrap();
        for d in 0..2 {
            let (rank, kills) = c.restriction(d).unwrap();
            assert!(kills);
            assert_eq!(rank, c.restriction_target_dim(d));
        }
        let s = c.find_injective_functional(&x, 1, 3).unwrap();
        assert!(s.functional.is_some());
        let bad = pts(&[[1, 0, 0], [1, 1, 0], [1, 2, 0], [1, 0, 1]]);
        let cb = Canonical::new(&bad).unwrap();
        assert!(cb.find_injective_functional(&bad, 1, 3).unwrap().functional.is_none());
    }
}
