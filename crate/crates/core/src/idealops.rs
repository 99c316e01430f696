//! Sums, products, intersections and colons of homogeneous ideals, and colons
//! between single graded pieces.
//!
//! Intersections and colons are built one degree at a time as kernels of
//! normal-form maps. When `x_0` is regular on the inputs it stays regular on
//! the result, so the result's Hilbert function is strictly increasing until
//! it first repeats a value at some `t`; every reduced basis element then has
//! degree at most `t`, and the basis is read straight off the echelon pieces.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gbasis::{buchberger, from_coordinates, HomogIdeal, NfTable};
use crate::linalg::{Matrix, Subspace};
use crate::monomial::{graded_basis, MonomialIndex};
use crate::poly::{Poly, Ring};

/// Degree bound for piecewise constructions whose inputs do not have `x_0`
/// regular, when no explicit cap is supplied.
fn default_cap(ideals: &[&HomogIdeal]) -> u32 {
    let m = ideals.iter().filter_map(|i| i.basis().max_degree()).max().unwrap_or(0);
    2 * m + 2
}

/// Safety bound for the regular case; reaching it means the result is not
/// 0-dimensional after all.
const REGULAR_LIMIT: u32 = 400;

/// Assembles an ideal from its graded pieces `piece(t)` (subspaces of `P_t` in
/// [`graded_basis`] coordinates).
pub(crate) fn ideal_from_pieces(
    ring: Ring,
    regular: bool,
    cap: u32,
    mut piece: impl FnMut(u32) -> Result<Subspace>,
) -> Result<HomogIdeal> {
    let limit = if regular { REGULAR_LIMIT } else { cap };
    let mut pieces: Vec<Subspace> = Vec::new();
    let mut prev_hf: Option<usize> = None;
    let mut complete = false;
    for t in 0..=limit {
        let s = piece(t)?;
        let hf = s.ambient() - s.dim();
        pieces.push(s);
        if hf == 0 && t == 0 {
            return Ok(HomogIdeal::unit(ring));
        }
        if regular && prev_hf == Some(hf) {
            complete = true;
            break;
        }
        prev_hf = Some(hf);
    }
    if regular && !complete {
        return Err(Error::NotZeroDimensional);
    }
    let mut lts: Vec<crate::monomial::Monomial> = Vec::new();
    let mut basis = Vec::new();
    for (t, s) in pieces.iter().enumerate() {
        let monos = graded_basis(ring.nvars, t as u32);
        for (row, &p) in s.basis().iter().zip(s.pivots()) {
            if lts.iter().any(|m| m.divides(&monos[p])) {
                continue;
            }
            lts.push(monos[p].clone());
            basis.push(from_coordinates(ring, t as u32, row));
        }
    }
    Ok(HomogIdeal::from_reduced(ring, basis, if complete { None } else { Some(cap) }))
}

/// Kernel of the map `P_t -> blocks`, where column `m` of the map is the
/// concatenation of `block(m)` over all blocks.
fn kernel_of_columns(ring: Ring, t: u32, columns: impl Fn(usize) -> Vec<crate::scalar::Scalar>) -> Subspace {
    let n = crate::monomial::piece_dimension(ring.nvars, t);
    let cols: Vec<Vec<_>> = (0..n).map(columns).collect();
    let height = cols.first().map_or(0, Vec::len);
    if height == 0 {
        return Subspace::full(ring.field, n);
    }
    let m = Matrix::from_columns(ring.field, height, &cols);
    Subspace::from_vectors(ring.field, n, m.kernel())
}

fn same_ring(a: &HomogIdeal, b: &HomogIdeal) -> Result<Ring> {
    if a.ring() == b.ring() {
        Ok(a.ring())
    } else {
        Err(Error::RingMismatch)
    }
}

fn require_complete(i: &HomogIdeal) -> Result<()> {
    match i.basis().truncated_at() {
        Some(cap) => Err(Error::CapExceeded { degree: cap + 1, cap }),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineMode {
    Sum,
    Product,
    Intersect,
}

pub fn combine(i: &HomogIdeal, j: &HomogIdeal, mode: CombineMode) -> Result<HomogIdeal> {
    let ring = same_ring(i, j)?;
    match mode {
        CombineMode::Sum => {
            let mut gens = i.basis().polys().to_vec();
            gens.extend(j.basis().polys().iter().cloned());
            HomogIdeal::new(ring, gens)
        }
        CombineMode::Product => {
            let mut gens = Vec::new();
            for f in i.basis().polys() {
                for g in j.basis().polys() {
                    gens.push(f * g);
                }
            }
            HomogIdeal::new(ring, gens)
        }
        CombineMode::Intersect => intersect_all(&[i, j]),
    }
}

/// `I_1 ∩ ... ∩ I_k` by stacking the normal-form maps of all inputs.
pub fn intersect_all(ideals: &[&HomogIdeal]) -> Result<HomogIdeal> {
    let Some(first) = ideals.first() else {
        return Err(Error::Invalid("intersection of no ideals".into()));
    };
    let ring = first.ring();
    for i in ideals {
        same_ring(first, i)?;
        require_complete(i)?;
    }
    let proper: Vec<&HomogIdeal> = ideals.iter().copied().filter(|i| !i.is_unit()).collect();
    if proper.is_empty() {
        return Ok(HomogIdeal::unit(ring));
    }
    let regular = proper.iter().all(|i| i.x0_is_regular());
    let cap = default_cap(&proper);
    let mut tables: Vec<NfTable> = proper.iter().map(|i| NfTable::new(i, 0)).collect::<Result<_>>()?;
    ideal_from_pieces(ring, regular, cap, |t| {
        for tb in tables.iter_mut() {
            tb.extend_to(t);
        }
        Ok(kernel_of_columns(ring, t, |m| {
            tables.iter().flat_map(|tb| tb.degree(t).nf[m].iter().cloned()).collect()
        }))
    })
}

/// `I : <gens>` for homogeneous `gens`.
pub fn colon_by_polys(i: &HomogIdeal, gens: &[Poly]) -> Result<HomogIdeal> {
    colon_by_polys_with_cap(i, gens, None)
}

/// With `truncate = Some(t)` only the pieces of degree `<= t` are computed
/// and the result is a basis truncated there.
fn colon_by_polys_with_cap(i: &HomogIdeal, gens: &[Poly], truncate: Option<u32>) -> Result<HomogIdeal> {
    let ring = i.ring();
    require_complete(i)?;
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let gens: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() || i.is_unit() {
        return Ok(HomogIdeal::unit(ring));
    }
    let regular = truncate.is_none() && i.x0_is_regular();
    let top = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let cap = truncate.unwrap_or_else(|| default_cap(&[i]) + top);
    let mut table = NfTable::new(i, top)?;
    ideal_from_pieces(ring, regular, cap, |t| {
        table.extend_to(t + top);
        let monos = MonomialIndex::new(graded_basis(ring.nvars, t));
        Ok(kernel_of_columns(ring, t, |m| {
            let mono = monos.get(m);
            gens.iter().flat_map(|g| table.reduce_product(mono, g)).collect()
        }))
    })
}

/// `I : J`.
pub fn colon(i: &HomogIdeal, j: &HomogIdeal) -> Result<HomogIdeal> {
    same_ring(i, j)?;
    require_complete(j)?;
    colon_by_polys(i, j.basis().polys())
}

/// Result of a colon by one graded piece.
#[derive(Clone, Debug)]
pub struct PieceColon {
    pub ideal: HomogIdeal,
    /// The piece was zero, so `I` was returned unchanged.
    pub vacuous: bool,
}

/// `I : <J_k>`, the colon by the ideal generated by the degree-`k` piece of
/// `J`. A zero piece returns `I` with the `vacuous` flag set.
pub fn colon_by_piece(i: &HomogIdeal, j: &HomogIdeal, k: u32) -> Result<PieceColon> {
    colon_by_piece_upto(i, j, k, None)
}

/// [`colon_by_piece`] computed only through degree `top` when given; enough
/// for Hilbert function values up to `top`.
pub fn colon_by_piece_upto(i: &HomogIdeal, j: &HomogIdeal, k: u32, top: Option<u32>) -> Result<PieceColon> {
    same_ring(i, j)?;
    let piece = GradedSubspace::of_ideal(j, k)?;
    if piece.dim() == 0 {
        return Ok(PieceColon { ideal: i.clone(), vacuous: true });
    }
    Ok(PieceColon { ideal: colon_by_polys_with_cap(i, &piece.polys(), top)?, vacuous: false })
}

/// `I : x_0^∞`, by dividing reduced basis elements by their `X_0` content.
pub fn saturate_x0(i: &HomogIdeal) -> Result<HomogIdeal> {
    require_complete(i)?;
    let mut cur = i.clone();
    loop {
        if cur.is_unit() || cur.basis().leading_monomials().iter().all(|m| m.exp(0) == 0) {
            return Ok(cur);
        }
        let gens: Vec<Poly> = cur.basis().polys().iter().map(|g| g.div_x0_power(g.x0_valuation())).collect();
        let basis = buchberger(cur.ring(), &gens, None)?;
        cur = HomogIdeal::from_basis(i.generators().to_vec(), basis);
    }
}

/// Ideal quotient by `X_0` alone.
pub fn colon_x0(i: &HomogIdeal) -> Result<HomogIdeal> {
    colon_by_polys(i, &[i.ring().var(0)])
}

/// The degree-`t` pieces of the minimal generators: a basis of `I_t` modulo
/// `P_1 I_{t-1}` for every `t` up to the largest basis degree.
pub fn minimal_generators(i: &HomogIdeal) -> Result<Vec<Poly>> {
    require_complete(i)?;
    let ring = i.ring();
    if i.is_unit() {
        return Ok(vec![ring.one()]);
    }
    let Some(top) = i.basis().max_degree() else {
        return Ok(Vec::new());
    };
    let table = NfTable::new(i, top)?;
    let mut out = Vec::new();
    let mut prev: Option<Subspace> = None;
    for t in 0..=top {
        let piece = table.piece(t);
        let monos = MonomialIndex::new(graded_basis(ring.nvars, t));
        let mut span: Vec<Vec<crate::scalar::Scalar>> = Vec::new();
        if let Some(p) = &prev {
            let lower = graded_basis(ring.nvars, t - 1);
            for row in p.basis() {
                for v in 0..ring.nvars {
                    let mut w = vec![ring.field.zero(); monos.len()];
                    for (k, c) in row.iter().enumerate() {
                        if !c.is_zero() {
                            w[monos.position(&lower[k].mul_var(v)).expect("degree t")] = c.clone();
                        }
                    }
                    span.push(w);
                }
            }
        }
        let mut span = Subspace::from_vectors(ring.field, monos.len(), span);
        for row in piece.basis() {
            if !span.contains(row) {
                out.push(from_coordinates(ring, t, row));
                let mut rows = span.basis().to_vec();
                rows.push(row.clone());
                span = Subspace::from_vectors(ring.field, monos.len(), rows);
            }
        }
        prev = Some(piece);
    }
    Ok(out)
}

/// A subspace of the forms of one degree, optionally taken modulo `X_0`
/// (then every basis vector is supported on `X_0`-free monomials).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    ring: Ring,
    degree: u32,
    space: Subspace,
    mod_x0: bool,
}

impl GradedSubspace {
    pub fn from_polys(ring: Ring, degree: u32, polys: &[Poly]) -> Result<GradedSubspace> {
        let mut rows = Vec::new();
        for f in polys {
            if f.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !f.is_zero() {
                if f.degree() != Some(degree) || !f.is_homogeneous() {
                    return Err(Error::DegreeMismatch { expected: degree, found: f.degree().unwrap_or(0) });
                }
                rows.push(crate::gbasis::coordinates(f, degree));
            }
        }
        let n = crate::monomial::piece_dimension(ring.nvars, degree);
        Ok(GradedSubspace { ring, degree, space: Subspace::from_vectors(ring.field, n, rows), mod_x0: false })
    }

    pub fn from_subspace(ring: Ring, degree: u32, space: Subspace) -> GradedSubspace {
        GradedSubspace { ring, degree, space, mod_x0: false }
    }

    /// `I_t`.
    pub fn of_ideal(i: &HomogIdeal, t: u32) -> Result<GradedSubspace> {
        Ok(GradedSubspace { ring: i.ring(), degree: t, space: i.piece(t)?, mod_x0: false })
    }

    /// `P_t` itself.
    pub fn full(ring: Ring, t: u32) -> GradedSubspace {
        let n = crate::monomial::piece_dimension(ring.nvars, t);
        GradedSubspace { ring, degree: t, space: Subspace::full(ring.field, n), mod_x0: false }
    }

    /// Image under `X_0 -> 0`.
    pub fn mod_x0(&self) -> GradedSubspace {
        let monos = graded_basis(self.ring.nvars, self.degree);
        let rows = self
            .space
            .basis()
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&monos)
                    .map(|(c, m)| if m.exp(0) > 0 { self.ring.field.zero() } else { c.clone() })
                    .collect()
            })
            .collect();
        GradedSubspace {
            ring: self.ring,
            degree: self.degree,
            space: Subspace::from_vectors(self.ring.field, monos.len(), rows),
            mod_x0: true,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_mod_x0(&self) -> bool {
        self.mod_x0
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Echelon basis as forms, leading monomials strictly decreasing.
    pub fn polys(&self) -> Vec<Poly> {
        self.space.basis().iter().map(|r| from_coordinates(self.ring, self.degree, r)).collect()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        if f.is_zero() {
            return true;
        }
        f.degree() == Some(self.degree) && self.space.contains(&crate::gbasis::coordinates(f, self.degree))
    }
}

/// `{f in P_d : f * J  ⊆  I}` for pieces with `deg I = d + deg J`. If either
/// piece is taken modulo `X_0`, so is the answer, and `f` ranges over
/// `X_0`-free forms.
pub fn piece_colon(i: &GradedSubspace, j: &GradedSubspace, d: u32) -> Result<GradedSubspace> {
    if i.ring != j.ring {
        return Err(Error::RingMismatch);
    }
    if i.degree != d + j.degree {
        return Err(Error::DegreeMismatch { expected: d + j.degree, found: i.degree });
    }
    let ring = i.ring;
    let field = ring.field;
    let mod_x0 = i.mod_x0 || j.mod_x0;
    let target = MonomialIndex::new(graded_basis(ring.nvars, i.degree));
    let source = graded_basis(ring.nvars, d);
    let candidates: Vec<usize> =
        (0..source.len()).filter(|&k| !mod_x0 || source[k].exp(0) == 0).collect();
    let functionals = i.space.annihilator();
    let jpolys: Vec<Poly> = if mod_x0 { j.mod_x0().polys() } else { j.polys() };

    let mut cols = Vec::with_capacity(candidates.len());
    for &k in &candidates {
        let m = &source[k];
        let mut col = Vec::with_capacity(jpolys.len() * functionals.len());
        for g in &jpolys {
            let terms: Vec<(usize, &crate::scalar::Scalar)> =
                g.terms().iter().map(|(t, c)| (target.position(&t.mul(m)).expect("degree"), c)).collect();
            for l in &functionals {
                let mut acc = field.zero();
                for &(pos, c) in &terms {
                    if !l[pos].is_zero() {
                        acc.add_mul(c, &l[pos]);
                    }
                }
                col.push(acc);
            }
        }
        cols.push(col);
    }
    let n = source.len();
    let height = cols.first().map_or(0, Vec::len);
    let kernel: Vec<Vec<crate::scalar::Scalar>> = if height == 0 {
        Matrix::identity(field, candidates.len()).rows().to_vec()
    } else {
        Matrix::from_columns(field, height, &cols).kernel()
    };
    let rows = kernel
        .into_iter()
        .map(|v| {
            let mut w = vec![field.zero(); n];
            for (c, &k) in v.into_iter().zip(&candidates) {
                w[k] = c;
            }
            w
        })
        .collect();
    Ok(GradedSubspace { ring, degree: d, space: Subspace::from_vectors(field, n, rows), mod_x0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::AffinePoint;
    use crate::scalar::Field;

    fn r3() -> Ring {
        Ring::new(3, Field::Rational)
    }

    fn ideal(s: &[&str]) -> HomogIdeal {
        HomogIdeal::new(r3(), s.iter().map(|x| parse_poly(r3(), x).unwrap()).collect()).unwrap()
    }

    fn point(c: &[i64]) -> HomogIdeal {
        let p = AffinePoint::from_ints(Field::Rational, c).unwrap();
        HomogIdeal::new(r3(), p.prime_ideal_gens(r3())).unwrap()
    }

    #[test]
    fn intersection_of_points() {
        let pts = [point(&[1, 0, 1]), point(&[1, 0, -2]), point(&[1, 2, 1]), point(&[1, 2, 0])];
        let refs: Vec<&HomogIdeal> = pts.iter().collect();
        let x = intersect_all(&refs).unwrap();
        let h = x.hilbert_data().unwrap();
        assert_eq!(h.values, [1, 3, 4]);
        assert!(!x.is_truncated());
        let same = intersect_all(&[&x, &x]).unwrap();
        assert_eq!(same, x);
    }

    #[test]
    fn colon_by_itself_is_unit() {
        let w = ideal(&["X1^3-4*X0^2*X1", "(X2-X0)*(X1^2+X2^2-4*X0^2)"]);
        assert!(colon(&w, &w).unwrap().is_unit());
    }

    #[test]
    fn saturation_removes_x0_factor() {
        let r1 = Ring::new(2, Field::Rational);
        let i = HomogIdeal::new(r1, vec![parse_poly(r1, "X0*X1").unwrap()]).unwrap();
        let s = saturate_x0(&i).unwrap();
        assert_eq!(s.basis().polys(), &[parse_poly(r1, "X1").unwrap()]);
        assert_eq!(saturate_x0(&s).unwrap(), s);
    }

    #[test]
    fn minimal_generators_of_a_complete_intersection() {
        let x = ideal(&["X1^2-X0^2", "X2^2-X0*X1"]);
        let m = minimal_generators(&x).unwrap();
        assert_eq!(m.len(), 2);
        assert!(x.basis().polys().len() >= 2);
    }

    #[test]
    fn vacuous_piece_returns_input() {
        let w = ideal(&["X1^3-4*X0^2*X1", "(X2-X0)*(X1^2+X2^2-4*X0^2)"]);
        let r = colon_by_piece(&w, &w, 2).unwrap();
        assert!(r.vacuous);
        assert_eq!(r.ideal, w);
    }

    #[test]
    fn truncated_colon_agrees_in_low_degrees() {
        let w = ideal(&["X1^3-4*X0^2*X1", "(X2-X0)*(X1^2+X2^2-4*X0^2)"]);
        let x = ideal(&["X1", "X2-X0"]);
        let full = colon_by_piece(&w, &x, 3).unwrap().ideal;
        for top in 0..4 {
            let cut = colon_by_piece_upto(&w, &x, 3, Some(top)).unwrap().ideal;
            for d in 0..=top {
                assert_eq!(cut.hilbert_function(d).unwrap(), full.hilbert_function(d).unwrap());
            }
            assert!(cut.hilbert_function(top + 1).is_err());
        }
    }

    #[test]
    fn piece_colon_degree_mismatch() {
        let a = GradedSubspace::full(r3(), 3);
        let b = GradedSubspace::full(r3(), 1);
        assert!(matches!(piece_colon(&a, &b, 1), Err(Error::DegreeMismatch { .. })));
        let c = piece_colon(&a, &b, 2).unwrap();
        assert_eq!(c.dim(), 6);
    }
}
