//! Trace maps, the Dedekind complementary module and the Dedekind different.
//!
//! Elements of the homogeneous ring of quotients in degree `t` are germ
//! vectors in `prod_j O_{X,p_j}` tagged with `t`; `x_0` has germ `1`. A trace
//! map is a sum of local functionals `τ_j`, and an element is integral when its
//! tag is nonnegative or its trace vanishes. Germs of `(R_X)_i` only grow with
//! `i` and fill everything from `r_X` on, so every test reduces to finitely
//! many subspace computations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix, Subspace};
use crate::local::LocalAlgebra;
use crate::random::{sample_vec, seeded, SeededRng};
use crate::scalar::{Field, Scalar};
use crate::scheme::{Scheme, SchemeMode};

pub const TRACE_ATTEMPTS: u32 = 16;
pub const TRACE_BOUND: i64 = 50;

/// A functional on one local algebra with its Gram matrix `τ(b_i b_k)`.
#[derive(Clone, Debug)]
pub struct LocalTrace {
    pub functional: Vec<Scalar>,
    pub gram: Matrix,
}

pub fn gram_matrix(a: &LocalAlgebra, tau: &[Scalar]) -> Matrix {
    let n = a.dim();
    let field = a.ring().field;
    let rows = (0..n).map(|i| (0..n).map(|k| dot(field, tau, a.product_of_basis(i, k))).collect()).collect();
    Matrix::from_rows(field, n, rows)
}

/// Draws functionals until the pairing `(a, b) -> τ(ab)` is non-degenerate.
pub fn local_trace(a: &LocalAlgebra, rng: &mut SeededRng) -> Result<LocalTrace> {
    if !a.is_gorenstein() {
        return Err(Error::NotLocallyGorenstein);
    }
    for _ in 0..TRACE_ATTEMPTS {
        let functional = sample_vec(a.ring().field, rng, TRACE_BOUND, a.dim());
        let gram = gram_matrix(a, &functional);
        if gram.is_invertible() {
            return Ok(LocalTrace { functional, gram });
        }
    }
    Err(Error::RetryBudgetExhausted { seed: 0, attempts: TRACE_ATTEMPTS })
}

#[derive(Clone, Debug)]
pub struct TraceMap {
    pub components: Vec<LocalTrace>,
    pub seed: u64,
}

impl TraceMap {
    pub fn new(x: &Scheme, seed: u64) -> Result<TraceMap> {
        let mut rng = seeded(seed);
        Self::draw(x, seed, &mut rng)
    }

    fn draw(x: &Scheme, seed: u64, rng: &mut SeededRng) -> Result<TraceMap> {
        if x.mode() != SchemeMode::Components {
            return Err(Error::RawMode);
        }
        let components = x
            .components()
            .iter()
            .map(|c| {
                local_trace(&c.local, rng).map_err(|e| match e {
                    Error::RetryBudgetExhausted { attempts, .. } => Error::RetryBudgetExhausted { seed, attempts },
                    e => e,
                })
            })
            .collect::<Result<_>>()?;
        Ok(TraceMap { components, seed })
    }

    /// The flat functional on germ vectors.
    pub fn functional(&self) -> Vec<Scalar> {
        self.components.iter().flat_map(|c| c.functional.iter().cloned()).collect()
    }
}

/// A graded piece of the ring of quotients.
#[derive(Clone, Debug)]
pub struct QhPiece {
    pub degree: i64,
    pub space: Subspace,
}

#[derive(Clone, Debug)]
pub struct DedekindReport {
    pub seed: u64,
    pub degree: usize,
    pub regularity_index: u32,
    /// `HF_δ(i)` for `i = 0..=2 r_X`.
    pub hf_delta: Vec<usize>,
    pub alpha_delta: Option<u32>,
    pub ri_delta: u32,
    /// `(t, HF_C(t))` for `t = -r_X-1..=1`.
    pub hf_c: Vec<(i64, usize)>,
    pub hf_c_formula: bool,
    pub x0_power_in_delta: bool,
    pub is_ideal: bool,
    /// Monotone, zero-to-`deg(X)` and `r_X <= ri <= 2 r_X`.
    pub hf_bounds: bool,
    /// Adding the constraint from `C_1` does not change `δ`.
    pub generated_in_nonpositive_degrees: bool,
}

/// Germ spaces `G_i` of `(R_X)_i`, `i = 0..=r_X`.
fn germ_spaces(x: &Scheme) -> Result<Vec<Subspace>> {
    (0..=x.regularity_index()).map(|i| x.germ_space(i as i64)).collect()
}

fn germ_at(spaces: &[Subspace], field: Field, n: usize, i: i64) -> Subspace {
    if i < 0 {
        Subspace::zero(field, n)
    } else {
        spaces[(i as usize).min(spaces.len() - 1)].clone()
    }
}

struct Work<'a> {
    x: &'a Scheme,
    field: Field,
    n: usize,
    spaces: Vec<Subspace>,
}

impl Work<'_> {
    /// `C_t = {v : σ(v G_i) = 0 for i = -t-1}`.
    fn complementary_piece(&self, sigma: &[Scalar], t: i64) -> QhPiece {
        let i = -t - 1;
        if i < 0 {
            return QhPiece { degree: t, space: Subspace::full(self.field, self.n) };
        }
        let g = germ_at(&self.spaces, self.field, self.n, i);
        let mut rows = Vec::new();
        for u in g.basis() {
            let row = (0..self.n)
                .map(|k| {
                    let mut e = vec![self.field.zero(); self.n];
                    e[k] = self.field.one();
                    dot(self.field, sigma, &self.x.germ_product(&e, u))
                })
                .collect();
            rows.push(row);
        }
        let space = Subspace::from_vectors(self.field, self.n, Matrix::from_rows(self.field, self.n, rows).kernel());
        QhPiece { degree: t, space }
    }

    /// `δ_i` as a subspace of `G_i`, given the pieces of `C` to test against.
    fn different_piece(&self, i: i64, c: &[QhPiece]) -> Subspace {
        let gi = germ_at(&self.spaces, self.field, self.n, i);
        let mut cols: Vec<Vec<Scalar>> = vec![Vec::new(); gi.dim()];
        for piece in c {
            let target = germ_at(&self.spaces, self.field, self.n, i + piece.degree);
            let funcs = target.annihilator();
            if funcs.is_empty() {
                continue;
            }
            for cv in piece.space.basis() {
                for (l, b) in gi.basis().iter().enumerate() {
                    let prod = self.x.germ_product(b, cv);
                    cols[l].extend(funcs.iter().map(|f| dot(self.field, f, &prod)));
                }
            }
        }
        let height = cols.first().map_or(0, Vec::len);
        if height == 0 {
            return gi;
        }
        let kernel = Matrix::from_columns(self.field, height, &cols).kernel();
        let vecs = kernel
            .iter()
            .map(|a| {
                let mut v = vec![self.field.zero(); self.n];
                for (c, b) in a.iter().zip(gi.basis()) {
                    crate::linalg::axpy(&mut v, c, b);
                }
                v
            })
            .collect();
        Subspace::from_vectors(self.field, self.n, vecs)
    }
}

pub struct Dedekind {
    pub trace: TraceMap,
    /// `C_t` for `t = -r_X-1..=1`.
    pub complementary: Vec<QhPiece>,
    /// `δ_i` for `i = 0..=2 r_X`.
    pub different: Vec<Subspace>,
    pub report: DedekindReport,
}

/// Draws a trace map (redrawing if the complementary module has the wrong
/// Hilbert function), then computes `C` and `δ`.
pub fn dedekind_different(x: &Scheme, seed: u64) -> Result<Dedekind> {
    if x.mode() != SchemeMode::Components {
        return Err(Error::RawMode);
    }
    if x.is_locally_gorenstein() != Some(true) {
        return Err(Error::NotLocallyGorenstein);
    }
    let r = x.regularity_index() as i64;
    let deg = x.degree();
    let work = Work { x, field: x.ring().field, n: deg, spaces: germ_spaces(x)? };
    let mut rng = seeded(seed);
    for _ in 0..TRACE_ATTEMPTS {
        let trace = TraceMap::draw(x, seed, &mut rng)?;
        let sigma = trace.functional();
        let complementary: Vec<QhPiece> = (-r - 1..=1).map(|t| work.complementary_piece(&sigma, t)).collect();
        let hf_c: Vec<(i64, usize)> = complementary.iter().map(|p| (p.degree, p.space.dim())).collect();
        let hf_c_formula = hf_c.iter().all(|&(t, dim)| dim == deg - x.hf(-t - 1));
        if !hf_c_formula {
            continue;
        }
        let core: Vec<QhPiece> = complementary.iter().filter(|p| p.degree >= -r && p.degree <= 0).cloned().collect();
        let different: Vec<Subspace> = (0..=2 * r).map(|i| work.different_piece(i, &core)).collect();
        let generated = (0..=2 * r).all(|i| work.different_piece(i, &complementary) == different[i as usize]);
        let hf_delta: Vec<usize> = different.iter().map(Subspace::dim).collect();
        let alpha_delta = hf_delta.iter().position(|&h| h > 0).map(|i| i as u32);
        let ri_delta = (0..hf_delta.len()).find(|&i| hf_delta[i..].iter().all(|&h| h == deg)).unwrap_or(hf_delta.len()) as u32;
        let one = x.germ_one();
        let x0_power_in_delta = different[2 * r as usize].contains(&one);
        let var_germs: Vec<Vec<Scalar>> = (0..x.ring().nvars).map(|v| x.germ(&x.ring().var(v))).collect::<Result<_>>()?;
        let is_ideal = (0..2 * r as usize).all(|i| {
            different[i].basis().iter().all(|f| var_germs.iter().all(|g| different[i + 1].contains(&x.germ_product(f, g))))
        });
        let hf_bounds = hf_delta.windows(2).all(|w| w[0] <= w[1])
            && hf_delta.last() == Some(&deg)
            && (r as u32) <= ri_delta
            && ri_delta <= 2 * r as u32;
        let report = DedekindReport {
            seed,
            degree: deg,
            regularity_index: r as u32,
            hf_delta,
            alpha_delta,
            ri_delta,
            hf_c,
            hf_c_formula,
            x0_power_in_delta,
            is_ideal,
            hf_bounds,
            generated_in_nonpositive_degrees: generated,
        };
        return Ok(Dedekind { trace, complementary, different, report });
    }
    Err(Error::RetryBudgetExhausted { seed, attempts: TRACE_ATTEMPTS })
}

/// Bounds relating `HF_δ` to the Cayley-Bacharach degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindChecks {
    /// Largest `d` with `CBP(d)`.
    pub d: Option<u32>,
    /// The bounds below are only asserted over an infinite field.
    pub infinite_field: bool,
    pub alpha_bound: Option<bool>,
    pub hf_bound: Option<bool>,
    pub i0: Option<u32>,
    pub persistence: Option<bool>,
    pub ri_formula: Option<bool>,
    /// For Cayley-Bacharach schemes: `ri(δ) = 2 r_X`.
    pub ri_maximal: Option<bool>,
    /// `HF_δ(i) = HF_X(i - r_X)` for all `i`.
    pub shifted_equality: bool,
    /// For Cayley-Bacharach schemes: arithmetically Gorenstein iff shifted equality.
    pub gorenstein_criterion: Option<bool>,
}

impl DedekindChecks {
    pub fn all_pass(&self) -> bool {
        [self.alpha_bound, self.hf_bound, self.persistence, self.ri_formula, self.ri_maximal, self.gorenstein_criterion]
            .iter()
            .all(|f| *f != Some(false))
    }
}

/// `max_d` is the largest `d` with `CBP(d)`, `ag` the arithmetically
/// Gorenstein flag.
pub fn dedekind_checks(x: &Scheme, report: &DedekindReport, max_d: Option<u32>, ag: bool) -> DedekindChecks {
    let r = report.regularity_index as i64;
    let hfd = |i: i64| if i < 0 { 0 } else { report.hf_delta.get(i as usize).copied().unwrap_or(report.degree) };
    let window = 0..=2 * r;
    let shifted_equality = window.clone().all(|i| hfd(i) == x.hf(i - r));
    let cb = r == 0 || max_d == Some(r as u32 - 1);
    let mut out = DedekindChecks {
        d: max_d,
        infinite_field: x.ring().field.is_infinite(),
        alpha_bound: None,
        hf_bound: None,
        i0: None,
        persistence: None,
        ri_formula: None,
        ri_maximal: None,
        shifted_equality,
        gorenstein_criterion: None,
    };
    if let Some(d) = max_d {
        let d = d as i64;
        out.alpha_bound = Some(report.alpha_delta.is_some_and(|a| d < a as i64 && a as i64 <= 2 * r));
        out.hf_bound = Some(window.clone().all(|i| hfd(i) <= x.hf(i - d - 1)));
        let i0 = window.clone().find(|&i| hfd(i) == x.hf(i - d - 1) && hfd(i) > 0);
        out.i0 = i0.map(|i| i as u32);
        out.persistence = Some(i0.is_some_and(|i0| (i0..=2 * r).all(|i| hfd(i) == x.hf(i - d - 1))));
        out.ri_formula = Some(i0.is_some_and(|i0| report.ri_delta as i64 == i0.max(r + d + 1)));
    }
    if cb {
        out.ri_maximal = Some(report.ri_delta as i64 == 2 * r);
        out.gorenstein_criterion = Some(ag == shifted_equality);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::{AffinePoint, Ring};
    use crate::scheme::{scheme_from_components, SchemeComponent};

    fn r3() -> Ring {
        Ring::new(3, Field::Rational)
    }

    fn pt(c: &[i64]) -> AffinePoint {
        AffinePoint::from_ints(Field::Rational, c).unwrap()
    }

    fn x(fat: bool) -> Scheme {
        let p5 = if fat {
            SchemeComponent::new(
                pt(&[1, 2, 0]),
                vec![parse_poly(r3(), "X1-2*X0").unwrap(), parse_poly(r3(), "X2^2").unwrap()],
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
    fn local_traces() {
        let r1 = Ring::new(2, Field::Rational);
        let p = AffinePoint::from_ints(Field::Rational, &[1, 0]).unwrap();
        let mut rng = seeded(5);
        for k in 1..=3u32 {
            let a = LocalAlgebra::new(r1, &p, &[r1.var(1).pow(k)]).unwrap();
            let t = local_trace(&a, &mut rng).unwrap();
            assert!(t.gram.is_invertible());
            let mut socle = vec![Field::Rational.zero(); k as usize];
            socle[k as usize - 1] = Field::Rational.one();
            let g = gram_matrix(&a, &socle);
            for i in 0..k as usize {
                for j in 0..k as usize {
                    assert_eq!(g.get(i, j).is_one(), i + j == k as usize - 1);
                }
            }
        }
        let bad = LocalAlgebra::new(r3(), &pt(&[1, 0, 0]), &["X1^2", "X1*X2", "X2^2"].map(|s| parse_poly(r3(), s).unwrap()))
            .unwrap();
        assert_eq!(local_trace(&bad, &mut rng).unwrap_err(), Error::NotLocallyGorenstein);
    }

    #[test]
    fn complete_intersection_different() {
        let xp = x(false);
        let dd = dedekind_different(&xp, 11).unwrap();
        let rep = &dd.report;
        assert_eq!(rep.hf_delta, [0, 0, 1, 3, 4]);
        assert_eq!(rep.ri_delta, 4);
        assert!(rep.hf_c_formula && rep.x0_power_in_delta && rep.is_ideal && rep.hf_bounds);
        assert!(rep.generated_in_nonpositive_degrees);
        let checks = dedekind_checks(&xp, rep, Some(1), true);
        assert!(checks.shifted_equality);
        assert!(checks.all_pass(), "{checks:?}");
    }

    #[test]
    fn fat_scheme_different() {
        let x = x(true);
        let dd = dedekind_different(&x, 2).unwrap();
        let rep = &dd.report;
        assert_eq!(rep.hf_c.iter().find(|p| p.0 == -1).unwrap().1, 4);
        assert_eq!(rep.hf_c.iter().find(|p| p.0 == 0).unwrap().1, 5);
        assert_eq!(rep.hf_c.iter().find(|p| p.0 == -3).unwrap().1, 0);
        assert_eq!(rep.ri_delta, 4);
        let checks = dedekind_checks(&x, rep, Some(1), false);
        assert!(!checks.shifted_equality);
        assert!(checks.all_pass(), "{checks:?}");
        assert!(checks.alpha_bound.unwrap());
    }

    #[test]
    fn single_point() {
        let x = scheme_from_components(r3(), &[SchemeComponent::reduced(pt(&[1, 4, 4]))]).unwrap();
        let dd = dedekind_different(&x, 0).unwrap();
        assert_eq!(dd.report.hf_delta, [1]);
        assert_eq!(dd.report.ri_delta, 0);
    }
}
