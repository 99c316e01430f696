//! The Cayley-Bacharach property `CBP(d)`, decided by several independent
//! criteria.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::canonical::Canonical;
use crate::error::{Error, Result};
use crate::idealops::{colon_by_piece_upto, piece_colon, GradedSubspace};
use crate::liaison::LinkageTriple;
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::scheme::{Scheme, SchemeMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CbpMethod {
    /// Hilbert function of `I_W : (I_W : I_X)_{r_W-d-1}` in degree `d`.
    Colon,
    /// `(I_W)_{r_W-1} : (I_Y)_{r_W-d-1} = (I_X)_d` as vector spaces.
    Piece,
    /// All point degrees at least `d + 1`.
    Separators,
    /// `Ann((ω)_{-d}) = 0`.
    Canonical,
    /// `Ann((I_Y + I_X)/I_X)_{r_W-d-1} = 0`, conclusive when negative only under
    /// geometric linkage.
    Annihilator,
}

impl CbpMethod {
    pub const ALL: [CbpMethod; 5] =
        [CbpMethod::Canonical, CbpMethod::Piece, CbpMethod::Colon, CbpMethod::Separators, CbpMethod::Annihilator];

    pub fn name(self) -> &'static str {
        match self {
            CbpMethod::Colon => "colon",
            CbpMethod::Piece => "piece",
            CbpMethod::Separators => "separators",
            CbpMethod::Canonical => "canonical",
            CbpMethod::Annihilator => "annihilator",
        }
    }

    pub fn from_name(s: &str) -> Option<CbpMethod> {
        CbpMethod::ALL.into_iter().find(|m| m.name() == s)
    }

    fn needs_triple(self) -> bool {
        matches!(self, CbpMethod::Colon | CbpMethod::Piece | CbpMethod::Annihilator)
    }
}

impl fmt::Display for CbpMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Inconclusive => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Evidence {
    Colon { hf_colon: usize, hf_x: usize },
    Piece { colon_dim: usize, ideal_dim: usize },
    Separators { point_degrees: Vec<u32>, failing: Vec<usize> },
    Canonical { kernel_dim: usize, witness: Option<Poly> },
    Annihilator { kernel_dim: usize, witness: Option<Poly>, geometric: Option<bool>, shared_points: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct CbpVerdict {
    pub d: u32,
    pub method: CbpMethod,
    pub verdict: Verdict,
    pub evidence: Evidence,
}

fn check_range(x: &Scheme, d: u32) -> Result<()> {
    let r = x.regularity_index();
    if r == 0 || d > r - 1 {
        return Err(Error::OutOfRange(format!("degree {d} outside 0..=r_X-1 (r_X = {r})")));
    }
    Ok(())
}

fn triple_for<'a>(x: &Scheme, ctx: Option<&'a LinkageTriple>, method: CbpMethod) -> Result<&'a LinkageTriple> {
    let t = ctx.ok_or_else(|| Error::MissingContext(format!("method {method} needs a linkage triple")))?;
    if t.x.ideal() != x.ideal() {
        return Err(Error::Invalid(String::from("the linkage triple belongs to a different scheme")));
    }
    Ok(t)
}

/// Whether `method` can be run on `x` with the given context.
pub fn applicable(x: &Scheme, method: CbpMethod, ctx: Option<&LinkageTriple>) -> bool {
    match method {
        CbpMethod::Separators => x.mode() == SchemeMode::Components,
        CbpMethod::Canonical => true,
        _ => ctx.is_some_and(|t| t.x.ideal() == x.ideal()),
    }
}

pub fn cbp_check(x: &Scheme, d: u32, method: CbpMethod, ctx: Option<&LinkageTriple>) -> Result<CbpVerdict> {
    check_range(x, d)?;
    let t = if method.needs_triple() { Some(triple_for(x, ctx, method)?) } else { None };
    let (verdict, evidence) = match method {
        CbpMethod::Colon => {
            let t = t.expect("triple");
            let k = t.w.regularity_index() - d - 1;
            // Pieces above degree d do not affect HF(d).
            let q = colon_by_piece_upto(t.w.ideal(), t.y.ideal(), k, Some(d))?;
            let hf_colon = if q.vacuous || !q.ideal.is_unit() { q.ideal.hilbert_function(d)? } else { 0 };
            let hf_x = x.hf(d as i64);
            (Verdict::from_bool(hf_colon == hf_x), Evidence::Colon { hf_colon, hf_x })
        }
        CbpMethod::Piece => {
            let t = t.expect("triple");
            let r_w = t.w.regularity_index();
            let iw = GradedSubspace::of_ideal(t.w.ideal(), r_w - 1)?;
            let iy = GradedSubspace::of_ideal(t.y.ideal(), r_w - d - 1)?;
            let ix = GradedSubspace::of_ideal(x.ideal(), d)?;
            let q = piece_colon(&iw, &iy, d)?;
            (Verdict::from_bool(q == ix), Evidence::Piece { colon_dim: q.dim(), ideal_dim: ix.dim() })
        }
        CbpMethod::Separators => {
            let point_degrees = x.point_degrees()?;
            let failing: Vec<usize> = (0..point_degrees.len()).filter(|&j| point_degrees[j] < d + 1).collect();
            (Verdict::from_bool(failing.is_empty()), Evidence::Separators { point_degrees, failing })
        }
        CbpMethod::Canonical => {
            let a = Canonical::new(x)?.annihilator_is_zero(d)?;
            (Verdict::from_bool(a.zero), Evidence::Canonical { kernel_dim: a.kernel_dim, witness: a.witness })
        }
        CbpMethod::Annihilator => {
            let t = t.expect("triple");
            let k = t.w.regularity_index() - d - 1;
            let (kernel_dim, witness) = residual_annihilator(x, t, k)?;
            let verdict = if kernel_dim == 0 {
                Verdict::True
            } else if t.geometric == Some(true) {
                Verdict::False
            } else {
                Verdict::Inconclusive
            };
            (
                verdict,
                Evidence::Annihilator { kernel_dim, witness, geometric: t.geometric, shared_points: t.shared_points.clone() },
            )
        }
    };
    Ok(CbpVerdict { d, method, verdict, evidence })
}

/// Dimension of `{f in (R_X)_{r_X} : f (I_Y)_k ⊆ I_X}` and a nonzero member.
/// Degree `r_X` suffices because `x_0` is regular on `R_X`.
pub fn residual_annihilator(x: &Scheme, t: &LinkageTriple, k: u32) -> Result<(usize, Option<Poly>)> {
    let ring = x.ring();
    let r = x.regularity_index();
    let table = x.nf_table(r + k)?;
    let hs = GradedSubspace::of_ideal(t.y.ideal(), k)?.polys();
    let monos = x.ideal().standard_monomials(r)?;
    let cols: Vec<Vec<_>> =
        monos.iter().map(|m| hs.iter().flat_map(|h| table.reduce_product(m, h)).collect()).collect();
    let height = cols.first().map_or(0, Vec::len);
    let kernel = if height == 0 {
        Matrix::identity(ring.field, monos.len()).rows().to_vec()
    } else {
        Matrix::from_columns(ring.field, height, &cols).kernel()
    };
    let witness = kernel
        .first()
        .map(|v| Poly::from_terms(ring, monos.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero())));
    Ok((kernel.len(), witness))
}

#[derive(Clone, Debug)]
pub struct ProfileRow {
    pub d: u32,
    pub verdicts: Vec<CbpVerdict>,
    /// The common conclusive verdict, if there is one.
    pub consensus: Option<bool>,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct CbpProfile {
    pub rows: Vec<ProfileRow>,
    /// Largest `d` with `CBP(d)`.
    pub max_d: Option<u32>,
    pub monotone: bool,
    pub agreement: bool,
}

/// Runs every applicable method for each `d` in `0..r_X`.
pub fn cbp_profile(x: &Scheme, ctx: Option<&LinkageTriple>) -> Result<CbpProfile> {
    let methods: Vec<CbpMethod> = CbpMethod::ALL.into_iter().filter(|&m| applicable(x, m, ctx)).collect();
    cbp_profile_with(x, ctx, &methods)
}

pub fn cbp_profile_with(x: &Scheme, ctx: Option<&LinkageTriple>, methods: &[CbpMethod]) -> Result<CbpProfile> {
    let r = x.regularity_index();
    let mut rows = Vec::new();
    for d in 0..r {
        let verdicts: Vec<CbpVerdict> = methods.iter().map(|&m| cbp_check(x, d, m, ctx)).collect::<Result<_>>()?;
        let conclusive: Vec<bool> = verdicts.iter().filter_map(|v| v.verdict.as_bool()).collect();
        let agree = conclusive.windows(2).all(|w| w[0] == w[1]);
        let consensus = if agree { conclusive.first().copied() } else { None };
        rows.push(ProfileRow { d, verdicts, consensus, agree });
    }
    let flags: Vec<Option<bool>> = rows.iter().map(|r| r.consensus).collect();
    let monotone = flags.windows(2).all(|w| !(w[1] == Some(true) && w[0] == Some(false)));
    let max_d = rows.iter().filter(|r| r.consensus == Some(true)).map(|r| r.d).max();
    let agreement = rows.iter().all(|r| r.agree);
    Ok(CbpProfile { rows, max_d, monotone, agreement })
}

/// `CBP(r_X - 1)` by the cheapest applicable method; true for `r_X = 0`.
pub fn is_cayley_bacharach(x: &Scheme, ctx: Option<&LinkageTriple>) -> Result<bool> {
    let r = x.regularity_index();
    if r == 0 {
        return Ok(true);
    }
    let v = cbp_check(x, r - 1, CbpMethod::Canonical, ctx)?;
    Ok(v.verdict == Verdict::True)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liaison::LinkageTriple;
    use crate::parse::parse_poly;
    use crate::poly::{AffinePoint, Ring};
    use crate::scalar::Field;
    use crate::scheme::{scheme_from_components, scheme_from_ideal, SchemeComponent};

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

    fn x(fat: bool) -> Scheme {
        let p5 = if fat {
            SchemeComponent::new(
                pt(&[1, 2, 0]),
                alloc::vec![parse_poly(r3(), "X1-2*X0").unwrap(), parse_poly(r3(), "X2^2").unwrap()],
            )
        } else {
            SchemeComponent::reduced(pt(&[1, 2, 0]))
        };
        scheme_from_components(
            r3(),
            &[
                SchemeComponent::reduced(pt(&[1, 0, 1])),
                SchemeComponent::reduced(pt(&[1, 0, -2])),
                SchemeComponent::reduced(pt(&[1, 2, 1])),
                p5,
            ],
        )
        .unwrap()
    }

    #[test]
    fn fat_example_is_cayley_bacharach_by_all_methods() {
        let x = x(true);
        let t = LinkageTriple::new(w(), x.clone()).unwrap();
        let p = cbp_profile(&x, Some(&t)).unwrap();
        assert!(p.agreement && p.monotone);
        assert_eq!(p.max_d, Some(1));
        for row in &p.rows {
            assert_eq!(row.verdicts.len(), 5);
            assert!(row.verdicts.iter().all(|v| v.verdict == Verdict::True));
        }
        assert!(is_cayley_bacharach(&x, Some(&t)).unwrap());
    }

    #[test]
    fn annihilator_is_inconclusive_without_geometric_linkage() {
        let xp = x(false);
        let t = LinkageTriple::new(w(), xp.clone()).unwrap();
        let v = cbp_check(&xp, 1, CbpMethod::Annihilator, Some(&t)).unwrap();
        assert_eq!(v.verdict, Verdict::Inconclusive);
        match v.evidence {
            Evidence::Annihilator { kernel_dim, shared_points, .. } => {
                assert!(kernel_dim > 0);
                assert_eq!(shared_points, [3]);
            }
            _ => unreachable!(),
        }
        for m in [CbpMethod::Separators, CbpMethod::Colon, CbpMethod::Piece, CbpMethod::Canonical] {
            assert_eq!(cbp_check(&xp, 1, m, Some(&t)).unwrap().verdict, Verdict::True, "{m}");
        }
    }

    #[test]
    fn profiles_and_errors() {
        let r1 = Ring::new(2, Field::Rational);
        let q = scheme_from_ideal(r1, &[parse_poly(r1, "2*X0^4+X0^2*X1^2-X1^4").unwrap()]).unwrap();
        let p = cbp_profile(&q, None).unwrap();
        assert_eq!(p.max_d, Some(2));
        assert_eq!(p.rows[0].verdicts.len(), 1);
        let two = scheme_from_components(r3(), &[SchemeComponent::reduced(pt(&[1, 0, 0])), SchemeComponent::reduced(pt(&[1, 1, 3]))])
            .unwrap();
        assert_eq!(cbp_profile(&two, None).unwrap().max_d, Some(0));
        let bad = scheme_from_components(
            r3(),
            &[[1, 0, 0], [1, 1, 0], [1, 2, 0], [1, 0, 1]].map(|c| SchemeComponent::reduced(pt(&c))),
        )
        .unwrap();
        assert!(!is_cayley_bacharach(&bad, None).unwrap());
        let p = cbp_profile(&bad, None).unwrap();
        assert!(p.agreement);
        assert_eq!(p.max_d, Some(0));
        assert!(matches!(cbp_check(&bad, 5, CbpMethod::Canonical, None), Err(Error::OutOfRange(_))));
        assert!(matches!(cbp_check(&bad, 0, CbpMethod::Piece, None), Err(Error::MissingContext(_))));
        assert_eq!(cbp_check(&q, 0, CbpMethod::Separators, None).unwrap_err(), Error::RawMode);
    }
}
