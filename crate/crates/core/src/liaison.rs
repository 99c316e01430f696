//! Linkage by arithmetically Gorenstein schemes.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gbasis::HomogIdeal;
use crate::idealops::{colon, piece_colon, GradedSubspace};
use crate::poly::{Poly, Ring};
use crate::random::{sample_vec, seeded};
use crate::scheme::{
    artinian_socle_dim, ci_numerator, scheme_from_components, scheme_from_homog_ideal, Scheme, SchemeComponent, SchemeMode,
};

/// Coefficient bound for random combinations over `Q`.
pub const ENVELOPE_BOUND: i64 = 50;
pub const ENVELOPE_ATTEMPTS: u32 = 32;

pub fn require_ag(w: &Scheme) -> Result<()> {
    if w.is_empty() || artinian_socle_dim(w.ideal())? != 1 {
        return Err(Error::NotArithmeticallyGorenstein);
    }
    Ok(())
}

/// `I_Y = I_W : I_X`. When `W` has components, so does `Y`.
pub fn residual(w: &Scheme, x: &Scheme) -> Result<Scheme> {
    require_ag(w)?;
    if w.ring() != x.ring() {
        return Err(Error::RingMismatch);
    }
    if !x.ideal().contains_ideal(w.ideal())? {
        return Err(Error::NotSubscheme);
    }
    let iy = colon(w.ideal(), x.ideal())?;
    if w.mode() == SchemeMode::Raw {
        return scheme_from_homog_ideal(iy);
    }
    let mut comps = Vec::new();
    for c in w.components() {
        let local = colon(&c.ideal, x.ideal())?;
        if !local.is_unit() {
            comps.push(SchemeComponent::new(c.point().clone(), local.basis().polys().to_vec()));
        }
    }
    let y = scheme_from_components(w.ring(), &comps)?;
    if *y.ideal() != iy {
        return Err(Error::Invalid("residual components disagree with the global colon".into()));
    }
    Ok(y)
}

/// `alpha_{A/W}`: the least degree in which `I_A` is larger than `I_W`.
pub fn relative_alpha(w: &Scheme, a: &Scheme) -> Option<u32> {
    (0..=w.regularity_index()).find(|&i| w.hf(i as i64) > a.hf(i as i64))
}

#[derive(Clone, Debug)]
pub struct LinkageTriple {
    pub w: Scheme,
    pub x: Scheme,
    pub y: Scheme,
    pub alpha_y: Option<u32>,
    /// `None` when `X = W`.
    pub alpha_x: Option<u32>,
    pub geometric: Option<bool>,
    /// Indices of components of `X` whose point also lies on `Y`.
    pub shared_points: Vec<usize>,
}

impl LinkageTriple {
    pub fn new(w: Scheme, x: Scheme) -> Result<LinkageTriple> {
        let y = residual(&w, &x)?;
        let alpha_y = relative_alpha(&w, &y);
        let alpha_x = relative_alpha(&w, &x);
        let (geometric, shared_points) = geometric_linkage(&x, &y)?;
        Ok(LinkageTriple { w, x, y, alpha_y, alpha_x, geometric, shared_points })
    }

    pub fn ring(&self) -> Ring {
        self.w.ring()
    }

    pub fn is_geometrically_linked(&self) -> Option<bool> {
        self.geometric
    }
}

/// `Supp(X) ∩ Supp(Y) = ∅`, decided by evaluating `I_Y` at the points of `X`.
/// Unknown when `X` has no component data.
pub fn geometric_linkage(x: &Scheme, y: &Scheme) -> Result<(Option<bool>, Vec<usize>)> {
    if y.is_empty() {
        return Ok((Some(true), Vec::new()));
    }
    if x.mode() == SchemeMode::Raw {
        return Ok((None, Vec::new()));
    }
    let mut shared = Vec::new();
    for (j, c) in x.components().iter().enumerate() {
        if crate::scheme::vanish_at(y.ideal().basis().polys(), c.point())? {
            shared.push(j);
        }
    }
    Ok((Some(shared.is_empty()), shared))
}

pub fn is_geometrically_linked(t: &LinkageTriple) -> Option<bool> {
    t.geometric
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HfIdentityRow {
    pub i: u32,
    /// `HF_{I_{Y/W}}(i) = HF_W(i) - HF_Y(i)`.
    pub lhs: usize,
    /// `deg(X) - HF_X(r_W - i - 1)`.
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageReport {
    pub deg_w: usize,
    pub deg_x: usize,
    pub deg_y: usize,
    pub degree_additivity: bool,
    pub r_w: u32,
    pub r_x: u32,
    pub r_y: u32,
    pub alpha_y: Option<u32>,
    pub alpha_x: Option<u32>,
    /// `r_W = r_X + alpha_{Y/W}`.
    pub r_split_x: bool,
    /// `r_W = r_Y + alpha_{X/W}`; `None` when `X = W`.
    pub r_split_y: Option<bool>,
    pub hf_identity: Vec<HfIdentityRow>,
    /// `(d, holds)` for the residue-class colon identity, `d = 1..=r_X`.
    pub artinian_colon: Vec<(u32, bool)>,
    pub double_residual: bool,
    pub geometric: Option<bool>,
    pub shared_points: Vec<usize>,
}

impl LinkageReport {
    pub fn all_pass(&self) -> bool {
        self.degree_additivity
            && self.r_split_x
            && self.r_split_y != Some(false)
            && self.hf_identity.iter().all(|r| r.lhs == r.rhs)
            && self.artinian_colon.iter().all(|&(_, ok)| ok)
            && self.double_residual
    }
}

/// `(Ī_W)_{r_W} : (Ī_Y)_{r_W - d} = (Ī_X)_d` in `P / <X_0>`.
pub fn artinian_colon_holds(t: &LinkageTriple, d: u32) -> Result<bool> {
    let r_w = t.w.regularity_index();
    if d > r_w {
        return Err(Error::OutOfRange(alloc::format!("degree {d} exceeds r_W = {r_w}")));
    }
    let iw = GradedSubspace::of_ideal(t.w.ideal(), r_w)?.mod_x0();
    let iy = GradedSubspace::of_ideal(t.y.ideal(), r_w - d)?.mod_x0();
    let ix = GradedSubspace::of_ideal(t.x.ideal(), d)?.mod_x0();
    Ok(piece_colon(&iw, &iy, d)? == ix)
}

pub fn linkage_report(t: &LinkageTriple) -> Result<LinkageReport> {
    let (w, x, y) = (&t.w, &t.x, &t.y);
    let r_w = w.regularity_index();
    let hf_identity = (0..=r_w)
        .map(|i| HfIdentityRow {
            i,
            lhs: w.hf(i as i64) - y.hf(i as i64),
            rhs: x.degree() - x.hf(r_w as i64 - i as i64 - 1),
        })
        .collect();
    let artinian_colon =
        (1..=x.regularity_index()).map(|d| Ok((d, artinian_colon_holds(t, d)?))).collect::<Result<_>>()?;
    let back = residual(w, y)?;
    Ok(LinkageReport {
        deg_w: w.degree(),
        deg_x: x.degree(),
        deg_y: y.degree(),
        degree_additivity: w.degree() == x.degree() + y.degree(),
        r_w,
        r_x: x.regularity_index(),
        r_y: y.regularity_index(),
        alpha_y: t.alpha_y,
        alpha_x: t.alpha_x,
        r_split_x: t.alpha_y.is_some_and(|a| r_w == x.regularity_index() + a),
        r_split_y: t.alpha_x.map(|a| r_w == y.regularity_index() + a),
        hf_identity,
        artinian_colon,
        double_residual: back.ideal() == x.ideal(),
        geometric: t.geometric,
        shared_points: t.shared_points.clone(),
    })
}

/// A complete intersection containing `X`, found by random combinations.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub w: Scheme,
    pub forms: Vec<Poly>,
    pub degrees: Vec<u32>,
    pub seed: u64,
    pub attempts: u32,
}

/// Draws `n` random forms from `(I_X)_{d_k}` until they cut out a complete
/// intersection `W ⊇ X` (and, if requested, `X` and its residual share no
/// point). `degrees` defaults to `n` copies of the largest minimal-generator
/// degree.
pub fn ci_envelope(x: &Scheme, seed: u64, degrees: Option<&[u32]>, geometric: bool) -> Result<Envelope> {
    if x.mode() != SchemeMode::Components {
        return Err(Error::RawMode);
    }
    if geometric && x.is_locally_gorenstein() != Some(true) {
        return Err(Error::NotLocallyGorenstein);
    }
    let ring = x.ring();
    let n = ring.nvars - 1;
    let degrees: Vec<u32> = match degrees {
        Some(ds) => {
            if ds.len() != n {
                return Err(Error::Invalid(alloc::format!("expected {n} degrees, got {}", ds.len())));
            }
            ds.to_vec()
        }
        None => {
            let top = x.analyze()?.minimal_generator_degrees.into_iter().max().unwrap_or(1);
            alloc::vec![top; n]
        }
    };
    let pieces: Vec<Vec<Poly>> =
        degrees.iter().map(|&d| Ok(GradedSubspace::of_ideal(x.ideal(), d)?.polys())).collect::<Result<_>>()?;
    if let Some(k) = pieces.iter().position(Vec::is_empty) {
        return Err(Error::Invalid(alloc::format!("no forms of degree {} vanish on the scheme", degrees[k])));
    }
    let expected = ci_numerator(&degrees);
    let target_degree: usize = degrees.iter().map(|&d| d as usize).product();
    let mut rng = seeded(seed);
    for attempt in 1..=ENVELOPE_ATTEMPTS {
        let forms: Vec<Poly> = pieces
            .iter()
            .map(|basis| {
                let coeffs = sample_vec(ring.field, &mut rng, ENVELOPE_BOUND, basis.len());
                basis.iter().zip(&coeffs).fold(Poly::zero(ring), |acc, (b, c)| &acc + &b.scale(c))
            })
            .collect();
        if forms.iter().any(Poly::is_zero) {
            continue;
        }
        let ideal = HomogIdeal::new(ring, forms.clone())?;
        if !ideal.x0_is_regular() || ideal.hilbert_numerator()? != expected.as_slice() {
            continue;
        }
        let w = scheme_from_homog_ideal(ideal)?;
        if w.degree() != target_degree {
            continue;
        }
        if geometric {
            let y = residual(&w, x)?;
            if geometric_linkage(x, &y)?.0 != Some(true) {
                continue;
            }
        }
        return Ok(Envelope { w, forms, degrees, seed, attempts: attempt });
    }
    Err(Error::RetryBudgetExhausted { seed, attempts: ENVELOPE_ATTEMPTS })
}

#[derive(Clone, Debug)]
pub struct Prop210Report {
    pub x_prime: Scheme,
    pub y_prime: Scheme,
    pub degree_step: bool,
    pub contains: bool,
    /// `I_{Y'} : I_Y` is the ideal of the point, so `Y'` and `Y` differ
    /// only there and by colength one.
    pub colon_is_point: bool,
    /// `X'` is empty.
    pub degenerate: bool,
}

impl Prop210Report {
    pub fn holds(&self) -> bool {
        self.degree_step && self.contains && self.colon_is_point
    }
}

/// Removes one socle direction at `p_j` from `X`, links, and checks that the
/// residual grew by exactly that point.
pub fn prop210_check(t: &LinkageTriple, j: usize, dir: &[crate::scalar::Scalar]) -> Result<Prop210Report> {
    let x_prime = t.x.maximal_subscheme(j, dir)?;
    let y_prime = residual(&t.w, &x_prime)?;
    let point = t.x.components()[j].point().clone();
    let prime = HomogIdeal::new(t.ring(), point.prime_ideal_gens(t.ring()))?;
    let q = colon(y_prime.ideal(), t.y.ideal())?;
    Ok(Prop210Report {
        degree_step: y_prime.degree() == t.y.degree() + 1,
        contains: t.y.ideal().contains_ideal(y_prime.ideal())?,
        colon_is_point: q == prime,
        degenerate: x_prime.is_empty(),
        x_prime,
        y_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::AffinePoint;
    use crate::scalar::Field;
    use crate::scheme::scheme_from_ideal;

    fn r3() -> Ring {
        Ring::new(3, Field::Rational)
    }

    fn pt(c: &[i64]) -> AffinePoint {
        AffinePoint::from_ints(Field::Rational, c).unwrap()
    }

    fn w() -> Scheme {
        let f = parse_poly(r3(), "X1*(X1-2*X0)*(X1+2*X0)").unwrap();
        let g = parse_poly(r3(), "(X2-X0)*(X1^2+X2^2-4*X0^2)").unwrap();
        scheme_from_ideal(r3(), &[f, g]).unwrap()
    }

    fn x() -> Scheme {
        let i5 = alloc::vec![parse_poly(r3(), "X1-2*X0").unwrap(), parse_poly(r3(), "X2^2").unwrap()];
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
    fn fat_example_triple() {
        let t = LinkageTriple::new(w(), x()).unwrap();
        assert_eq!(t.y.degree(), 4);
        assert_eq!(t.y.regularity_index(), 2);
        assert_eq!((t.alpha_y, t.alpha_x), (Some(2), Some(2)));
        assert_eq!(t.geometric, Some(true));
        let rep = linkage_report(&t).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        let h = parse_poly(r3(), "X0^2 + X0*X1 + 1/4*X1^2 - 1/2*X0*X2 - 1/4*X1*X2").unwrap();
        assert!(t.y.ideal().contains(&h).unwrap());
    }

    #[test]
    fn removing_a_point_grows_the_residual() {
        let t = LinkageTriple::new(w(), x()).unwrap();
        let dir = t.x.socle_direction(3).unwrap();
        let rep = prop210_check(&t, 3, &dir).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.y_prime.degree(), 5);
        let t2 = LinkageTriple::new(t.w.clone(), rep.x_prime.clone()).unwrap();
        assert_eq!(t2.geometric, Some(false));
        assert_eq!(t2.shared_points, [3]);
        let y_gens = [
            "X0^2 - 1/4*X1^2 - 1/2*X0*X2 - 1/4*X1*X2",
            "X0*X1*X2 + 1/2*X1^2*X2",
            "X0*X2^2 + 1/4*X1*X2^2 - 1/2*X2^3",
        ];
        let expected =
            HomogIdeal::new(r3(), y_gens.iter().map(|s| parse_poly(r3(), s).unwrap()).collect()).unwrap();
        assert_eq!(*t2.y.ideal(), expected);
        assert!(linkage_report(&t2).unwrap().all_pass());
    }

    #[test]
    fn self_link_is_empty() {
        let w = w();
        let t = LinkageTriple::new(w.clone(), w).unwrap();
        assert!(t.y.is_empty());
        assert_eq!(t.alpha_x, None);
        assert_eq!(t.geometric, Some(true));
        let rep = linkage_report(&t).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn envelope_of_the_fat_scheme() {
        let env = ci_envelope(&x(), 7, Some(&[3, 3]), true).unwrap();
        assert_eq!(env.w.degree(), 9);
        let t = LinkageTriple::new(env.w, x()).unwrap();
        assert_eq!(t.geometric, Some(true));
        assert!(linkage_report(&t).unwrap().all_pass());
        let single = scheme_from_components(r3(), &[SchemeComponent::reduced(pt(&[1, 3, -1]))]).unwrap();
        let env = ci_envelope(&single, 1, Some(&[1, 1]), true).unwrap();
        assert_eq!(env.w.ideal(), single.ideal());
    }

    #[test]
    fn preconditions() {
        assert_eq!(residual(&x(), &x()).unwrap_err(), Error::NotArithmeticallyGorenstein);
        let other = scheme_from_components(r3(), &[SchemeComponent::reduced(pt(&[1, 5, 5]))]).unwrap();
        assert_eq!(residual(&w(), &other).unwrap_err(), Error::NotSubscheme);
        let nongor = scheme_from_components(
            r3(),
            &[SchemeComponent::new(
                pt(&[1, 0, 0]),
                ["X1^2", "X1*X2", "X2^2"].iter().map(|s| parse_poly(r3(), s).unwrap()).collect(),
            )],
        )
        .unwrap();
        assert_eq!(ci_envelope(&nongor, 0, None, true).unwrap_err(), Error::NotLocallyGorenstein);
    }
}
