//! 0-dimensional schemes given by primary components or by a raw ideal.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gbasis::{HilbertData, HomogIdeal, NfTable};
use crate::idealops::{intersect_all, minimal_generators, saturate_x0};
use crate::linalg::{Matrix, Subspace};
use crate::local::LocalAlgebra;
use crate::poly::{AffinePoint, Poly, Ring};
use crate::scalar::Scalar;

/// Input description of one component: a point and generators of its primary
/// ideal. Empty `local_gens` means the reduced point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeComponent {
    pub point: AffinePoint,
    pub local_gens: Vec<Poly>,
}

impl SchemeComponent {
    pub fn reduced(point: AffinePoint) -> SchemeComponent {
        SchemeComponent { point, local_gens: Vec::new() }
    }

    pub fn new(point: AffinePoint, local_gens: Vec<Poly>) -> SchemeComponent {
        SchemeComponent { point, local_gens }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeMode {
    Components,
    Raw,
}

/// A validated component: its saturated primary ideal and local algebra.
#[derive(Clone, Debug)]
pub struct Component {
    pub input: SchemeComponent,
    pub ideal: HomogIdeal,
    pub local: LocalAlgebra,
}

impl Component {
    pub fn point(&self) -> &AffinePoint {
        &self.input.point
    }
}

#[derive(Clone, Debug)]
pub struct Scheme {
    ring: Ring,
    mode: SchemeMode,
    components: Vec<Component>,
    ideal: HomogIdeal,
    hilbert: HilbertData,
}

fn build_component(ring: Ring, j: usize, c: &SchemeComponent) -> Result<Component> {
    if c.point.nvars() != ring.nvars || c.point.field() != ring.field {
        return Err(Error::RingMismatch);
    }
    let gens = if c.local_gens.is_empty() { c.point.prime_ideal_gens(ring) } else { c.local_gens.clone() };
    for g in &gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    let ideal = saturate_x0(&HomogIdeal::new(ring, gens)?)?;
    if ideal.is_unit() {
        return Err(Error::NotPrimary(j));
    }
    for g in ideal.basis().polys() {
        if !g.evaluate(&c.point)?.is_zero() {
            return Err(Error::NotPrimary(j));
        }
    }
    let h = ideal.hilbert_data().map_err(|_| Error::NotPrimary(j))?;
    let local = LocalAlgebra::new(ring, &c.point, ideal.basis().polys()).map_err(|_| Error::NotPrimary(j))?;
    if h.krull_dim != 1 || local.dim() != h.eventual_value {
        return Err(Error::NotPrimary(j));
    }
    Ok(Component { input: c.clone(), ideal, local })
}

/// Assembles `X` from primary components at distinct points off `X_0 = 0`.
pub fn scheme_from_components(ring: Ring, comps: &[SchemeComponent]) -> Result<Scheme> {
    for (j, c) in comps.iter().enumerate() {
        if comps[..j].iter().any(|d| d.point == c.point) {
            return Err(Error::DuplicatePoint(j));
        }
    }
    let components: Vec<Component> =
        comps.iter().enumerate().map(|(j, c)| build_component(ring, j, c)).collect::<Result<_>>()?;
    let ideal = if components.is_empty() {
        HomogIdeal::unit(ring)
    } else {
        let refs: Vec<&HomogIdeal> = components.iter().map(|c| &c.ideal).collect();
        intersect_all(&refs)?
    };
    let hilbert = ideal.hilbert_data()?;
    let total: usize = components.iter().map(|c| c.local.dim()).sum();
    debug_assert_eq!(total, hilbert.eventual_value);
    if total != hilbert.eventual_value {
        return Err(Error::Invalid("component degrees do not add up".into()));
    }
    Ok(Scheme { ring, mode: SchemeMode::Components, components, ideal, hilbert })
}

fn validate_raw(ideal: &HomogIdeal) -> Result<()> {
    if ideal.is_unit() {
        return Ok(());
    }
    let krull = ideal.krull_dim()?.unwrap_or(0);
    if krull > 1 {
        return Err(Error::NotZeroDimensional);
    }
    if ideal.x0_is_regular() {
        return Ok(());
    }
    let sat = saturate_x0(ideal)?;
    let before = ideal.hilbert_data()?.eventual_value;
    let after = if sat.is_unit() { 0 } else { sat.hilbert_data()?.eventual_value };
    if before == after {
        Err(Error::NotSaturated)
    } else {
        Err(Error::SupportMeetsHyperplane)
    }
}

/// A raw-mode scheme from homogeneous generators, which must already
/// generate a saturated ideal with `x_0` regular on the quotient.
pub fn scheme_from_ideal(ring: Ring, gens: &[Poly]) -> Result<Scheme> {
    scheme_from_homog_ideal(HomogIdeal::new(ring, gens.to_vec())?)
}

/// As [`scheme_from_ideal`], replacing a non-saturated ideal by its
/// saturation; the flag reports whether that happened.
pub fn scheme_from_ideal_saturating(ring: Ring, gens: &[Poly]) -> Result<(Scheme, bool)> {
    let ideal = HomogIdeal::new(ring, gens.to_vec())?;
    match validate_raw(&ideal) {
        Ok(()) => Ok((scheme_from_homog_ideal(ideal)?, false)),
        Err(Error::NotSaturated) => Ok((scheme_from_homog_ideal(saturate_x0(&ideal)?)?, true)),
        Err(e) => Err(e),
    }
}

pub fn scheme_from_homog_ideal(ideal: HomogIdeal) -> Result<Scheme> {
    validate_raw(&ideal)?;
    let hilbert = ideal.hilbert_data()?;
    Ok(Scheme { ring: ideal.ring(), mode: SchemeMode::Raw, components: Vec::new(), ideal, hilbert })
}

/// Global invariants of a scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub degree: usize,
    pub hilbert: Vec<usize>,
    pub regularity_index: u32,
    pub alpha: Option<u32>,
    pub arithmetically_gorenstein: bool,
    /// `None` in raw mode.
    pub locally_gorenstein: Option<bool>,
    /// Degrees of the minimal generators when they form a complete intersection.
    pub complete_intersection: Option<Vec<u32>>,
    pub minimal_generator_degrees: Vec<u32>,
}

/// Socle dimension of the Artinian reduction `P/(I + <X_0>)`.
pub fn artinian_socle_dim(ideal: &HomogIdeal) -> Result<usize> {
    if ideal.is_unit() {
        return Ok(0);
    }
    let h = ideal.hilbert_data()?;
    let r = h.regularity_index;
    let ring = ideal.ring();
    let table = NfTable::new(ideal, r + 1)?;
    let mut total = 0;
    for i in 0..=r {
        let here: Vec<_> = table.degree(i).standard.monomials().iter().filter(|m| m.exp(0) == 0).cloned().collect();
        if here.is_empty() {
            continue;
        }
        let up = &table.degree(i + 1).standard;
        let up_free: Vec<usize> = (0..up.len()).filter(|&k| up.get(k).exp(0) == 0).collect();
        let mut rows = Vec::new();
        for v in 1..ring.nvars {
            let images: Vec<Vec<Scalar>> = here
                .iter()
                .map(|m| {
                    let nf = table.reduce(&Poly::monomial(ring, m.mul_var(v), ring.field.one()));
                    up_free.iter().map(|&k| nf[k].clone()).collect()
                })
                .collect();
            for r in 0..up_free.len() {
                rows.push(images.iter().map(|col| col[r].clone()).collect());
            }
        }
        total += here.len() - Matrix::from_rows(ring.field, here.len(), rows).rank();
    }
    Ok(total)
}

/// Complete-intersection test: exactly `n` minimal generators whose degrees
/// reproduce the Hilbert series `prod (1 - t^d_i) / (1 - t)^(n+1)`.
pub fn complete_intersection_degrees(ideal: &HomogIdeal) -> Result<Option<Vec<u32>>> {
    if ideal.is_unit() {
        return Ok(None);
    }
    let gens = minimal_generators(ideal)?;
    let n = ideal.ring().nvars - 1;
    if gens.len() != n {
        return Ok(None);
    }
    let degrees: Vec<u32> = gens.iter().map(|g| g.degree().expect("nonzero")).collect();
    let expected = ci_numerator(&degrees);
    Ok((ideal.hilbert_numerator()? == expected.as_slice()).then_some(degrees))
}

/// Numerator of the Hilbert series of a complete intersection of the given degrees.
pub fn ci_numerator(degrees: &[u32]) -> Vec<i128> {
    let mut out = vec![1i128];
    for &d in degrees {
        let mut next = vec![0i128; out.len() + d as usize];
        for (k, c) in out.iter().enumerate() {
            next[k] += c;
            next[k + d as usize] -= c;
        }
        out = next;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Data describing the maximal subscheme defined by removing one socle
/// direction at a point.
#[derive(Clone, Debug)]
pub struct SeparatorSet {
    pub point_index: usize,
    pub direction: Vec<Scalar>,
    /// Least-degree form vanishing on the maximal subscheme but not on `X`.
    pub minimal_separator: Poly,
    pub mu: u32,
    /// `x_0^(r_X - mu)` times the minimal separator.
    pub standard_separator: Poly,
}

impl Scheme {
    pub fn empty(ring: Ring) -> Scheme {
        let ideal = HomogIdeal::unit(ring);
        let hilbert = ideal.hilbert_data().expect("unit ideal");
        Scheme { ring, mode: SchemeMode::Components, components: Vec::new(), ideal, hilbert }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn mode(&self) -> SchemeMode {
        self.mode
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn ideal(&self) -> &HomogIdeal {
        &self.ideal
    }

    pub fn hilbert(&self) -> &HilbertData {
        &self.hilbert
    }

    pub fn degree(&self) -> usize {
        self.hilbert.eventual_value
    }

    pub fn is_empty(&self) -> bool {
        self.degree() == 0
    }

    pub fn regularity_index(&self) -> u32 {
        self.hilbert.regularity_index
    }

    /// `HF_X(i)`, zero for negative `i`.
    pub fn hf(&self, i: i64) -> usize {
        self.hilbert.hf(i)
    }

    pub fn support(&self) -> Result<Vec<AffinePoint>> {
        self.require_components()?;
        Ok(self.components.iter().map(|c| c.point().clone()).collect())
    }

    fn require_components(&self) -> Result<()> {
        match self.mode {
            SchemeMode::Components => Ok(()),
            SchemeMode::Raw => Err(Error::RawMode),
        }
    }

    fn component(&self, j: usize) -> Result<&Component> {
        self.require_components()?;
        self.components.get(j).ok_or_else(|| Error::OutOfRange(alloc::format!("point index {j}")))
    }

    pub fn is_locally_gorenstein(&self) -> Option<bool> {
        match self.mode {
            SchemeMode::Components => Some(self.components.iter().all(|c| c.local.is_gorenstein())),
            SchemeMode::Raw => None,
        }
    }

    pub fn nf_table(&self, max_degree: u32) -> Result<NfTable> {
        NfTable::new(&self.ideal, max_degree)
    }

    pub fn analyze(&self) -> Result<Analysis> {
        let mins = if self.ideal.is_unit() { Vec::new() } else { minimal_generators(&self.ideal)? };
        Ok(Analysis {
            degree: self.degree(),
            hilbert: self.hilbert.values.clone(),
            regularity_index: self.regularity_index(),
            alpha: self.hilbert.alpha,
            arithmetically_gorenstein: artinian_socle_dim(&self.ideal)? == 1,
            locally_gorenstein: self.is_locally_gorenstein(),
            complete_intersection: complete_intersection_degrees(&self.ideal)?,
            minimal_generator_degrees: mins.iter().filter_map(Poly::degree).collect(),
        })
    }

    /// Starting row of each component's block in a germ vector.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.components.len() + 1);
        let mut acc = 0;
        for c in &self.components {
            out.push(acc);
            acc += c.local.dim();
        }
        out.push(acc);
        out
    }

    /// Image of a form in `prod_j O_{X,p_j}`.
    pub fn germ(&self, f: &Poly) -> Result<Vec<Scalar>> {
        self.require_components()?;
        Ok(self.components.iter().flat_map(|c| c.local.germ(f)).collect())
    }

    /// Componentwise product of two germ vectors.
    pub fn germ_product(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let offs = self.block_offsets();
        let mut out = Vec::with_capacity(u.len());
        for (j, c) in self.components.iter().enumerate() {
            let (a, b) = (offs[j], offs[j + 1]);
            out.extend(c.local.multiply(&u[a..b], &v[a..b]));
        }
        out
    }

    /// The germ of `x_0^k` for any `k`: the unit in every block.
    pub fn germ_one(&self) -> Vec<Scalar> {
        self.components.iter().flat_map(|c| c.local.one()).collect()
    }

    /// Matrix of `(R_X)_i -> prod_j O_{X,p_j}` with columns indexed by the
    /// standard monomials of degree `i`.
    pub fn germ_matrix(&self, i: u32) -> Result<Matrix> {
        self.require_components()?;
        let cols: Vec<Vec<Scalar>> = self
            .ideal
            .standard_monomials(i)?
            .into_iter()
            .map(|m| self.germ(&Poly::monomial(self.ring, m, self.ring.field.one())))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(self.ring.field, self.degree(), &cols))
    }

    /// Germs of the whole degree-`i` piece.
    pub fn germ_space(&self, i: i64) -> Result<Subspace> {
        if i < 0 {
            return Ok(Subspace::zero(self.ring.field, self.degree()));
        }
        Ok(self.germ_matrix(i as u32)?.column_space())
    }

    fn socle_block(&self, j: usize, s: &[Scalar]) -> Vec<Scalar> {
        let offs = self.block_offsets();
        let mut v = vec![self.ring.field.zero(); self.degree()];
        v[offs[j]..offs[j + 1]].clone_from_slice(s);
        v
    }

    /// `deg_X(p_j)`: the least `i` for which some nonzero socle element at
    /// `p_j`, zero elsewhere, is the germ of a form of degree `i`.
    pub fn point_degree(&self, j: usize) -> Result<u32> {
        let comp = self.component(j)?;
        let socle: Vec<Vec<Scalar>> = comp.local.socle().basis().iter().map(|s| self.socle_block(j, s)).collect();
        let target = Subspace::from_vectors(self.ring.field, self.degree(), socle);
        for i in 0..=self.regularity_index() {
            if !self.germ_space(i as i64)?.intersect(&target).is_zero() {
                return Ok(i);
            }
        }
        Err(Error::Invalid("germ map is not surjective at the regularity index".into()))
    }

    pub fn point_degrees(&self) -> Result<Vec<u32>> {
        self.require_components()?;
        (0..self.components.len()).map(|j| self.point_degree(j)).collect()
    }

    /// First socle basis vector at `p_j`; the only direction when the local
    /// ring is Gorenstein.
    pub fn socle_direction(&self, j: usize) -> Result<Vec<Scalar>> {
        Ok(self.component(j)?.local.socle().basis()[0].clone())
    }

    fn check_direction(&self, j: usize, dir: &[Scalar]) -> Result<&Component> {
        let comp = self.component(j)?;
        if !comp.local.is_in_socle(dir) {
            return Err(Error::NotSocleElement);
        }
        Ok(comp)
    }

    pub fn separators_of(&self, j: usize, dir: &[Scalar]) -> Result<SeparatorSet> {
        self.check_direction(j, dir)?;
        let target = self.socle_block(j, dir);
        let r = self.regularity_index();
        for i in 0..=r {
            let g = self.germ_matrix(i)?;
            if let Some(a) = g.solve(&target) {
                let monos = self.ideal.standard_monomials(i)?;
                let f = Poly::from_terms(self.ring, monos.into_iter().zip(a).filter(|(_, c)| !c.is_zero()));
                let pad = self.ring.var(0).pow(r - i);
                return Ok(SeparatorSet {
                    point_index: j,
                    direction: dir.to_vec(),
                    standard_separator: &f * &pad,
                    minimal_separator: f,
                    mu: i,
                });
            }
        }
        Err(Error::Invalid("germ map is not surjective at the regularity index".into()))
    }

    /// `X'` obtained by adding a lift of `<dir>` to the ideal of component `j`.
    pub fn maximal_subscheme(&self, j: usize, dir: &[Scalar]) -> Result<Scheme> {
        let comp = self.check_direction(j, dir)?;
        let mut inputs: Vec<SchemeComponent> = self.components.iter().map(|c| c.input.clone()).collect();
        if comp.local.dim() == 1 {
            inputs.remove(j);
        } else {
            let lift = comp.local.lift(dir);
            let s = lift.homogenize(lift.degree().expect("nonzero direction"))?;
            let mut gens = comp.ideal.basis().polys().to_vec();
            gens.push(s);
            inputs[j] = SchemeComponent::new(comp.point().clone(), gens);
        }
        scheme_from_components(self.ring, &inputs)
    }

    /// Germ vectors of the forms of degree `i` that vanish on every block
    /// except possibly `j`.
    pub fn local_image(&self, j: usize, i: u32) -> Result<Subspace> {
        let offs = self.block_offsets();
        let g = self.germ_matrix(i)?;
        let mut rows = Vec::new();
        for (k, row) in g.rows().iter().enumerate() {
            if k < offs[j] || k >= offs[j + 1] {
                rows.push(row.clone());
            }
        }
        let field = self.ring.field;
        let kernel = Matrix::from_rows(field, g.ncols(), rows).kernel();
        let images = kernel.iter().map(|a| g.mul_vec(a)).collect();
        Ok(Subspace::from_vectors(field, self.degree(), images))
    }
}

/// Whether every form in `polys` vanishes at `p`.
pub fn vanish_at(polys: &[Poly], p: &AffinePoint) -> Result<bool> {
    for f in polys {
        if !f.evaluate(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Field;

    fn r3() -> Ring {
        Ring::new(3, Field::Rational)
    }

    fn pt(c: &[i64]) -> AffinePoint {
        AffinePoint::from_ints(Field::Rational, c).unwrap()
    }

    fn x36() -> Scheme {
        let i5 = vec![parse_poly(r3(), "X1-2*X0").unwrap(), parse_poly(r3(), "X2^2").unwrap()];
        scheme_from_components(
            r3(),
            &[
                SchemeComponent::reduced(pt(&[1, 0, 1])),
                SchemeComponent::reduced(pt(&[1, 0, -2])),
                SchemeComponent::reduced(pt(&[1, 2, 1])),
                SchemeComponent::new(pt(&[1, 2, 0]), i5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fat_example_scheme() {
        let x = x36();
        assert_eq!(x.degree(), 5);
        assert_eq!(x.regularity_index(), 2);
        assert_eq!(x.hilbert().values, [1, 3, 5]);
        let a = x.analyze().unwrap();
        assert!(!a.arithmetically_gorenstein);
        assert_eq!(a.locally_gorenstein, Some(true));
        assert_eq!(x.point_degrees().unwrap(), [2, 2, 2, 2]);
        let g = x.germ_matrix(2).unwrap();
        assert!(g.is_invertible());
        assert_eq!(x.germ_matrix(3).unwrap().rank(), 5);
        assert_eq!(x.germ_matrix(0).unwrap().ncols(), 1);
    }

    #[test]
    fn removing_the_socle_direction_at_the_double_point() {
        let x = x36();
        let dir = x.socle_direction(3).unwrap();
        let xp = x.maximal_subscheme(3, &dir).unwrap();
        assert_eq!(xp.degree(), 4);
        assert_eq!(xp.components()[3].local.dim(), 1);
        let a = xp.analyze().unwrap();
        assert_eq!(a.complete_intersection, Some(vec![2, 2]));
        assert!(a.arithmetically_gorenstein);
        let sep = xp.separators_of(3, &xp.socle_direction(3).unwrap()).unwrap();
        assert_eq!(sep.mu, 2);
        let f5 = parse_poly(r3(), "X1^2-2*X1*X2").unwrap();
        let a = xp.ideal().normal_form(&f5).unwrap();
        let b = xp.ideal().normal_form(&sep.minimal_separator).unwrap();
        let c = a.lead_coeff().unwrap() / b.lead_coeff().unwrap();
        assert_eq!(a, b.scale(&c));
    }

    #[test]
    fn validation_errors() {
        let p = pt(&[1, 0, 1]);
        assert_eq!(
            scheme_from_components(r3(), &[SchemeComponent::reduced(p.clone()), SchemeComponent::reduced(p)]).unwrap_err(),
            Error::DuplicatePoint(1)
        );
        let bad = SchemeComponent::new(pt(&[1, 0, 0]), vec![parse_poly(r3(), "X1").unwrap()]);
        assert_eq!(scheme_from_components(r3(), &[bad]).unwrap_err(), Error::NotPrimary(0));
        let two = SchemeComponent::new(
            pt(&[1, 0, 0]),
            vec![parse_poly(r3(), "X1*(X1-X0)").unwrap(), parse_poly(r3(), "X2").unwrap()],
        );
        assert_eq!(scheme_from_components(r3(), &[two]).unwrap_err(), Error::NotPrimary(0));
    }

    #[test]
    fn raw_mode() {
        let r1 = Ring::new(2, Field::Rational);
        let x = scheme_from_ideal(r1, &[parse_poly(r1, "2*X0^4+X0^2*X1^2-X1^4").unwrap()]).unwrap();
        assert_eq!(x.degree(), 4);
        assert_eq!(x.regularity_index(), 3);
        assert_eq!(x.point_degree(0), Err(Error::RawMode));
        let d = scheme_from_ideal(r1, &[parse_poly(r1, "X1^2").unwrap()]).unwrap();
        assert_eq!((d.degree(), d.regularity_index()), (2, 1));
        let p = scheme_from_ideal(r3(), &[parse_poly(r3(), "X1").unwrap(), parse_poly(r3(), "X2").unwrap()]).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(
            scheme_from_ideal(r1, &[parse_poly(r1, "X0*X1").unwrap()]).unwrap_err(),
            Error::SupportMeetsHyperplane
        );
        let irrelevant = [parse_poly(r3(), "X1").unwrap(), parse_poly(r3(), "X0*X2").unwrap(), parse_poly(r3(), "X2^2").unwrap()];
        assert_eq!(scheme_from_ideal(r3(), &irrelevant).unwrap_err(), Error::NotSaturated);
        let (s, fixed) = scheme_from_ideal_saturating(r3(), &irrelevant).unwrap();
        assert!(fixed);
        assert_eq!(s.degree(), 1);
        assert_eq!(scheme_from_ideal(r3(), &[parse_poly(r3(), "X1").unwrap()]).unwrap_err(), Error::NotZeroDimensional);
    }
}
