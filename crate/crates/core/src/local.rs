//! Finite local algebras `O_{X,p}` at K-rational points.
//!
//! A component ideal is dehomogenized at `X_0 = 1` and translated so the point
//! sits at the origin. The algebra is `K[y]/(Q + m^N)` for the least `N` at
//! which the dimension stops growing; by Nakayama `m^N` is then zero locally.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, Matrix, Subspace};
use crate::monomial::{graded_basis, Monomial, MonomialIndex};
use crate::poly::{AffinePoint, Poly, Ring};
use crate::scalar::Scalar;

const MAX_ORDER: u32 = 64;

#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    ring: Ring,
    point: AffinePoint,
    order: u32,
    columns: MonomialIndex,
    relations: Subspace,
    basis: Vec<Monomial>,
    basis_columns: Vec<usize>,
    mult: Vec<Vec<Vec<Scalar>>>,
    socle: Subspace,
}

/// `X_0`-free monomials of degree below `order`, largest first.
fn truncated_monomials(nvars: usize, order: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in (0..order).rev() {
        if nvars == 1 {
            if d == 0 {
                out.push(Monomial::one(1));
            }
            continue;
        }
        for m in graded_basis(nvars - 1, d) {
            let mut e = vec![0u16];
            e.extend_from_slice(m.exponents());
            out.push(Monomial::from_exponents(&e));
        }
    }
    out
}

fn relation_space(ring: Ring, affine: &[Poly], order: u32) -> (MonomialIndex, Subspace) {
    let columns = MonomialIndex::new(truncated_monomials(ring.nvars, order));
    let field = ring.field;
    let mut rows = Vec::new();
    for q in affine {
        for u in columns.monomials() {
            let mut row = vec![field.zero(); columns.len()];
            let mut any = false;
            for (t, c) in q.terms() {
                let m = t.mul(u);
                if m.degree() < order {
                    row[columns.position(&m).expect("truncated monomial")] = c.clone();
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    let n = columns.len();
    (columns, Subspace::from_vectors(field, n, rows))
}

impl LocalAlgebra {
    /// The local algebra at `point` of the ideal generated by the homogeneous
    /// `gens`, all of which must vanish at the point.
    pub fn new(ring: Ring, point: &AffinePoint, gens: &[Poly]) -> Result<LocalAlgebra> {
        if point.nvars() != ring.nvars || point.field() != ring.field {
            return Err(Error::RingMismatch);
        }
        let mut affine = Vec::new();
        for g in gens {
            if !g.evaluate(point)?.is_zero() {
                return Err(Error::Invalid("generator does not vanish at the point".into()));
            }
            affine.push(g.dehomogenize().translate(point.coords()));
        }
        let mut order = 1;
        let (mut columns, mut relations) = relation_space(ring, &affine, order);
        loop {
            let (c2, r2) = relation_space(ring, &affine, order + 1);
            if columns.len() - relations.dim() == c2.len() - r2.dim() {
                break;
            }
            order += 1;
            if order > MAX_ORDER {
                return Err(Error::NotZeroDimensional);
            }
            columns = c2;
            relations = r2;
        }
        let mut is_pivot = vec![false; columns.len()];
        for &p in relations.pivots() {
            is_pivot[p] = true;
        }
        let mut basis_columns: Vec<usize> = (0..columns.len()).filter(|&c| !is_pivot[c]).collect();
        basis_columns.reverse();
        let basis: Vec<Monomial> = basis_columns.iter().map(|&c| columns.get(c).clone()).collect();
        let mut a = LocalAlgebra {
            ring,
            point: point.clone(),
            order,
            columns,
            relations,
            basis,
            basis_columns,
            mult: Vec::new(),
            socle: Subspace::zero(ring.field, 0),
        };
        let dim = a.basis.len();
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let v = a.reduce_monomial(&a.basis[i].mul(&a.basis[j]));
                mult[i][j] = v.clone();
                mult[j][i] = v;
            }
        }
        a.mult = mult;
        // socle: common kernel of multiplication by each coordinate y_k
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for k in 1..ring.nvars {
            let y = Monomial::var(ring.nvars, k);
            let images: Vec<Vec<Scalar>> = a.basis.iter().map(|b| a.reduce_monomial(&b.mul(&y))).collect();
            for r in 0..dim {
                rows.push(images.iter().map(|col| col[r].clone()).collect());
            }
        }
        let m = Matrix::from_rows(ring.field, dim, rows);
        a.socle = if dim == 0 {
            Subspace::zero(ring.field, 0)
        } else if ring.nvars == 1 {
            Subspace::full(ring.field, dim)
        } else {
            Subspace::from_vectors(ring.field, dim, m.kernel())
        };
        Ok(a)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn point(&self) -> &AffinePoint {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Least `N` with `m^N = 0`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Basis monomials in the translated coordinates, `1` first.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Basis indices spanning the maximal ideal.
    pub fn maximal_ideal_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.basis[i].is_one()).collect()
    }

    pub fn socle(&self) -> &Subspace {
        &self.socle
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle.dim() == 1
    }

    pub fn is_in_socle(&self, v: &[Scalar]) -> bool {
        v.len() == self.dim() && !is_zero_vec(v) && self.socle.contains(v)
    }

    /// `b_i * b_j` in basis coordinates.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    pub fn one(&self) -> Vec<Scalar> {
        let mut v = vec![self.ring.field.zero(); self.dim()];
        if !v.is_empty() {
            v[0] = self.ring.field.one();
        }
        v
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.ring.field.zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                axpy(&mut out, &ab, &self.mult[i][j]);
            }
        }
        out
    }

    fn reduce_monomial(&self, m: &Monomial) -> Vec<Scalar> {
        let mut row = vec![self.ring.field.zero(); self.columns.len()];
        if m.degree() < self.order {
            row[self.columns.position(m).expect("truncated")] = self.ring.field.one();
        }
        self.read_basis(&self.relations.reduce(&row))
    }

    fn read_basis(&self, row: &[Scalar]) -> Vec<Scalar> {
        self.basis_columns.iter().map(|&c| row[c].clone()).collect()
    }

    /// Coordinates of an affine polynomial already centred at the point.
    pub fn reduce_centred(&self, f: &Poly) -> Vec<Scalar> {
        let mut row = vec![self.ring.field.zero(); self.columns.len()];
        for (m, c) in f.terms() {
            if m.degree() < self.order {
                row[self.columns.position(m).expect("X0-free")] = c.clone();
            }
        }
        self.read_basis(&self.relations.reduce(&row))
    }

    /// Germ of a form at the point: dehomogenize, centre, reduce.
    pub fn germ(&self, f: &Poly) -> Vec<Scalar> {
        self.reduce_centred(&f.dehomogenize().translate(self.point.coords()))
    }

    /// An affine polynomial in the original coordinates representing `v`.
    pub fn lift(&self, v: &[Scalar]) -> Poly {
        let centred = Poly::from_terms(
            self.ring,
            self.basis.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero()),
        );
        let back: Vec<Scalar> = self.point.coords().iter().map(|c| -c).collect();
        centred.translate(&back)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Field;

    fn r3() -> Ring {
        Ring::new(3, Field::Rational)
    }

    #[test]
    fn double_point() {
        let p = AffinePoint::from_ints(Field::Rational, &[1, 2, 0]).unwrap();
        let gens = [parse_poly(r3(), "X1-2*X0").unwrap(), parse_poly(r3(), "X2^2").unwrap()];
        let a = LocalAlgebra::new(r3(), &p, &gens).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_gorenstein());
        assert_eq!(a.basis()[0], Monomial::one(3));
        assert_eq!(a.basis()[1], Monomial::var(3, 2));
        assert!(a.is_in_socle(&[Field::Rational.zero(), Field::Rational.one()]));
        // germ of X2 is the socle generator, germ of X1 - 2X0 vanishes
        let g = a.germ(&parse_poly(r3(), "X2").unwrap());
        assert_eq!(g, [Field::Rational.zero(), Field::Rational.one()]);
        assert!(is_zero_vec(&a.germ(&gens[0])));
    }

    #[test]
    fn reduced_point_and_triple_point() {
        let p = AffinePoint::from_ints(Field::Rational, &[1, -1, 3]).unwrap();
        let a = LocalAlgebra::new(r3(), &p, &p.prime_ideal_gens(r3())).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.is_gorenstein());
        let gens = [parse_poly(r3(), "X1+X0").unwrap(), parse_poly(r3(), "(X2-3*X0)^3").unwrap()];
        let b = LocalAlgebra::new(r3(), &p, &gens).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.order(), 3);
        assert!(b.is_gorenstein());
        let t = b.germ(&parse_poly(r3(), "X2-3*X0").unwrap());
        let t2 = b.multiply(&t, &t);
        assert!(b.is_in_socle(&t2));
        assert!(is_zero_vec(&b.multiply(&t2, &t)));
    }

    #[test]
    fn non_gorenstein_fat_point() {
        let p = AffinePoint::from_ints(Field::Rational, &[1, 0, 0]).unwrap();
        let gens = [parse_poly(r3(), "X1^2").unwrap(), parse_poly(r3(), "X1*X2").unwrap(), parse_poly(r3(), "X2^2").unwrap()];
        let a = LocalAlgebra::new(r3(), &p, &gens).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.socle().dim(), 2);
        assert!(!a.is_gorenstein());
        assert_eq!(a.maximal_ideal_basis().len(), 2);
    }

    #[test]
    fn local_dimension_ignores_other_points() {
        // X1*(X1 - X0) vanishes at two points of the line X2 = 0
        let p = AffinePoint::from_ints(Field::Rational, &[1, 0, 0]).unwrap();
        let gens = [parse_poly(r3(), "X1*(X1-X0)").unwrap(), parse_poly(r3(), "X2").unwrap()];
        let a = LocalAlgebra::new(r3(), &p, &gens).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn lift_round_trips() {
        let p = AffinePoint::from_ints(Field::Rational, &[1, 2, 0]).unwrap();
        let gens = [parse_poly(r3(), "X1-2*X0").unwrap(), parse_poly(r3(), "X2^2").unwrap()];
        let a = LocalAlgebra::new(r3(), &p, &gens).unwrap();
        let v = vec![Field::Rational.int(3), Field::Rational.int(-5)];
        let f = a.lift(&v);
        let h = f.homogenize(f.degree().unwrap()).unwrap();
        assert_eq!(a.germ(&h), v);
    }
}
