//! Homogeneous Gröbner bases, normal forms, and Hilbert functions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::monomial::{graded_basis, piece_dimension, Monomial, MonomialIndex};
use crate::poly::{Poly, Ring};
use crate::scalar::Scalar;

/// A reduced Gröbner basis, complete either fully or up to a degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    polys: Vec<Poly>,
    truncated_at: Option<u32>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Monic elements sorted by increasing leading monomial.
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// `Some(cap)` when pairs above `cap` were left unprocessed.
    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|g| g.lead_monomial().expect("nonzero").clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|g| g.degree() == Some(0))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.polys.iter().filter_map(Poly::degree).max()
    }

    fn check_degree(&self, d: u32) -> Result<()> {
        match self.truncated_at {
            Some(cap) if d > cap => Err(Error::CapExceeded { degree: d, cap }),
            _ => Ok(()),
        }
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.polys.iter().any(|g| g.lead_monomial().is_some_and(|lt| lt.divides(m)))
    }

    /// Fully reduced remainder of `f`, zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        if let Some(d) = f.degree() {
            self.check_degree(d)?;
        }
        Ok(reduce(f, &self.polys))
    }
}

/// Completely reduces `f` against `basis` (monic leading coefficients).
fn reduce(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring();
    let mut h = f.clone();
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    while let Some((m, c)) = h.terms().first().cloned() {
        let hit = basis.iter().find_map(|g| {
            let lt = g.lead_monomial()?;
            m.div(lt).map(|u| (g, u))
        });
        match hit {
            Some((g, u)) => {
                let lc = g.lead_coeff().expect("nonzero");
                let q = if lc.is_one() { c } else { &c / lc };
                h = &h - &g.mul_term(&u, &q);
            }
            None => {
                rem.push((m, c));
                let rest: Vec<_> = h.terms()[1..].to_vec();
                h = Poly::from_sorted_terms(ring, rest);
            }
        }
    }
    Poly::from_sorted_terms(ring, rem)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger's algorithm for homogeneous input with pairs processed by
/// increasing degree and the Gebauer-Möller criteria. With `cap`, pairs and
/// generators of degree above the cap are skipped and the result is marked
/// truncated when any were left.
pub fn buchberger(ring: Ring, gens: &[Poly], cap: Option<u32>) -> Result<GroebnerBasis> {
    let mut pending: Vec<Poly> = Vec::new();
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if !g.is_zero() {
            pending.push(g.monic());
        }
    }
    pending.sort_by_key(|g| g.degree());
    pending.reverse();

    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut truncated = false;

    loop {
        let next_gen = pending.last().and_then(Poly::degree);
        let next_pair = pairs.iter().map(|p| p.lcm.degree()).min();
        let t = match (next_gen, next_pair) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if cap.is_some_and(|c| t > c) {
            truncated = true;
            break;
        }
        let mut batch: Vec<Poly> = Vec::new();
        let (now, later): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.lcm.degree() == t);
        pairs = later;
        for p in now {
            batch.push(s_poly(&basis[p.i], &basis[p.j], &p.lcm));
        }
        while pending.last().and_then(Poly::degree) == Some(t) {
            batch.push(pending.pop().expect("nonempty"));
        }
        for h in batch {
            let h = reduce(&h, &basis);
            if h.is_zero() {
                continue;
            }
            let h = h.monic();
            update_pairs(&basis, &mut pairs, &h);
            basis.push(h);
        }
    }

    Ok(GroebnerBasis { ring, polys: interreduce(basis), truncated_at: if truncated { cap } else { None } })
}

fn s_poly(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let uf = lcm.div(f.lead_monomial().expect("nonzero")).expect("lcm");
    let ug = lcm.div(g.lead_monomial().expect("nonzero")).expect("lcm");
    &f.mul_monomial(&uf) - &g.mul_monomial(&ug)
}

fn update_pairs(basis: &[Poly], pairs: &mut Vec<Pair>, h: &Poly) {
    let k = basis.len();
    let lh = h.lead_monomial().expect("nonzero");
    let mut candidates: Vec<Pair> =
        (0..k).map(|i| Pair { i, j: k, lcm: basis[i].lead_monomial().expect("nonzero").lcm(lh) }).collect();
    let coprime = |p: &Pair| basis[p.i].lead_monomial().expect("nonzero").is_coprime(lh);

    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = candidates.pop() {
        let covered = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime(&p) || !covered {
            kept.push(p);
        }
    }
    let fresh: Vec<Pair> = kept.into_iter().filter(|p| !coprime(p)).collect();

    pairs.retain(|p| {
        let li = basis[p.i].lead_monomial().expect("nonzero");
        let lj = basis[p.j].lead_monomial().expect("nonzero");
        !lh.divides(&p.lcm) || li.lcm(lh) == p.lcm || lj.lcm(lh) == p.lcm
    });
    pairs.extend(fresh);
}

fn interreduce(mut basis: Vec<Poly>) -> Vec<Poly> {
    basis.sort_by(|a, b| a.lead_monomial().cmp(&b.lead_monomial()));
    // drop elements whose leading monomial is a multiple of another's
    let lts: Vec<Monomial> = basis.iter().map(|g| g.lead_monomial().expect("nonzero").clone()).collect();
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| !(0..basis.len()).any(|j| j != i && lts[j].divides(&lts[i]) && (lts[j] != lts[i] || j < i)))
        .collect();
    let basis: Vec<Poly> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
    let mut out = Vec::with_capacity(basis.len());
    for (i, g) in basis.iter().enumerate() {
        let others: Vec<Poly> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let lead = Poly::monomial(g.ring(), g.lead_monomial().expect("nonzero").clone(), g.field().one());
        let tail = &g.monic() - &lead;
        let tail = reduce(&tail, &others);
        out.push(&lead + &tail);
    }
    out
}

/// How a quotient was recognised as having Krull dimension at most one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionCriterion {
    /// Every variable other than `X_0` has a pure power among the leading terms.
    PurePowers,
    /// The Hilbert series has a pole of order at most one at `t = 1`.
    HilbertSeries,
}

/// Hilbert function data of a quotient whose Hilbert function is eventually
/// constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    /// `HF(0), ..., HF(r)`.
    pub values: Vec<usize>,
    pub regularity_index: u32,
    pub eventual_value: usize,
    /// Initial degree of the ideal, `None` for the zero ideal.
    pub alpha: Option<u32>,
    pub krull_dim: usize,
    pub criterion: DimensionCriterion,
}

impl HilbertData {
    pub fn hf(&self, i: i64) -> usize {
        if i < 0 {
            0
        } else {
            *self.values.get(i as usize).unwrap_or(&self.eventual_value)
        }
    }

    pub fn degree(&self) -> usize {
        self.eventual_value
    }
}

/// A homogeneous ideal with its reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct HomogIdeal {
    ring: Ring,
    generators: Vec<Poly>,
    basis: GroebnerBasis,
    numerator: Option<Vec<i128>>,
}

impl PartialEq for HomogIdeal {
    /// Ideals compare by their reduced bases.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.basis.polys == other.basis.polys
    }
}

impl HomogIdeal {
    pub fn new(ring: Ring, generators: Vec<Poly>) -> Result<HomogIdeal> {
        HomogIdeal::with_cap(ring, generators, None)
    }

    pub fn with_cap(ring: Ring, generators: Vec<Poly>, cap: Option<u32>) -> Result<HomogIdeal> {
        let basis = buchberger(ring, &generators, cap)?;
        Ok(HomogIdeal::from_basis(generators, basis))
    }

    /// Wraps a basis already known to be reduced.
    pub fn from_basis(generators: Vec<Poly>, basis: GroebnerBasis) -> HomogIdeal {
        let numerator = if basis.truncated_at.is_none() {
            Some(hilbert_numerator(basis.ring.nvars, &basis.leading_monomials()))
        } else {
            None
        };
        HomogIdeal { ring: basis.ring, generators, basis, numerator }
    }

    pub(crate) fn from_reduced(ring: Ring, polys: Vec<Poly>, truncated_at: Option<u32>) -> HomogIdeal {
        let mut polys = polys;
        polys.sort_by(|a, b| a.lead_monomial().cmp(&b.lead_monomial()));
        let basis = GroebnerBasis { ring, polys: polys.clone(), truncated_at };
        HomogIdeal::from_basis(polys, basis)
    }

    pub fn zero(ring: Ring) -> HomogIdeal {
        HomogIdeal::from_reduced(ring, Vec::new(), None)
    }

    pub fn unit(ring: Ring) -> HomogIdeal {
        HomogIdeal::from_reduced(ring, vec![ring.one()], None)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.is_unit()
    }

    pub fn is_truncated(&self) -> bool {
        self.basis.truncated_at.is_some()
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.basis.normal_form(f)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &HomogIdeal) -> Result<bool> {
        for g in other.basis.polys() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x_0` is a non-zerodivisor on the quotient exactly when no leading
    /// monomial of the reduced basis involves `X_0`.
    pub fn x0_is_regular(&self) -> bool {
        !self.basis.is_unit() && self.basis.leading_monomials().iter().all(|m| m.exp(0) == 0)
    }

    pub fn standard_monomials(&self, d: u32) -> Result<Vec<Monomial>> {
        self.basis.check_degree(d)?;
        Ok(graded_basis(self.ring.nvars, d).into_iter().filter(|m| self.basis.is_standard(m)).collect())
    }

    /// `dim_K (P/I)_i`.
    pub fn hilbert_function(&self, i: u32) -> Result<usize> {
        self.basis.check_degree(i)?;
        match &self.numerator {
            Some(n) => Ok(hf_from_numerator(n, self.ring.nvars, i)),
            None => Ok(self.standard_monomials(i)?.len()),
        }
    }

    /// Hilbert series numerator `N(t)` with `HS(t) = N(t) / (1 - t)^(n+1)`.
    pub fn hilbert_numerator(&self) -> Result<&[i128]> {
        match &self.numerator {
            Some(n) => Ok(n),
            None => Err(Error::CapExceeded { degree: u32::MAX, cap: self.basis.truncated_at.unwrap_or(0) }),
        }
    }

    /// Krull dimension of the quotient; `None` for the unit ideal.
    pub fn krull_dim(&self) -> Result<Option<usize>> {
        let n = self.hilbert_numerator()?;
        Ok(reduced_numerator(n).map(|(_, e)| self.ring.nvars - e))
    }

    pub fn hilbert_data(&self) -> Result<HilbertData> {
        let numer = self.hilbert_numerator()?;
        let alpha = self.basis.polys.iter().filter_map(Poly::degree).min();
        let Some((q, e)) = reduced_numerator(numer) else {
            return Ok(HilbertData {
                values: vec![0],
                regularity_index: 0,
                eventual_value: 0,
                alpha,
                krull_dim: 0,
                criterion: DimensionCriterion::HilbertSeries,
            });
        };
        let krull = self.ring.nvars - e;
        if krull > 1 {
            return Err(Error::NotZeroDimensional);
        }
        let lts = self.basis.leading_monomials();
        let pure = (1..self.ring.nvars).all(|v| {
            lts.iter().any(|m| m.exp(v) > 0 && m.exponents().iter().enumerate().all(|(i, &a)| i == v || a == 0))
        });
        let criterion = if pure { DimensionCriterion::PurePowers } else { DimensionCriterion::HilbertSeries };
        let dq = (q.len() - 1) as u32;
        let (r, eventual) = if krull == 1 {
            (dq, q.iter().sum::<i128>() as usize)
        } else {
            (dq + 1, 0)
        };
        let values = (0..=r).map(|i| hf_from_numerator(numer, self.ring.nvars, i)).collect();
        Ok(HilbertData { values, regularity_index: r, eventual_value: eventual, alpha, krull_dim: krull, criterion })
    }

    pub fn regularity_index(&self) -> Result<u32> {
        Ok(self.hilbert_data()?.regularity_index)
    }

    /// Basis of the degree-`t` piece as a subspace of `P_t` in the
    /// coordinates of [`graded_basis`]: one row `m - NF(m)` per non-standard `m`.
    pub fn piece(&self, t: u32) -> Result<Subspace> {
        let table = NfTable::new(self, t)?;
        Ok(table.piece(t))
    }
}

/// Drops factors of `(1 - t)`; returns the cofactor and the multiplicity, or
/// `None` for the zero numerator.
fn reduced_numerator(n: &[i128]) -> Option<(Vec<i128>, usize)> {
    let mut q: Vec<i128> = n.to_vec();
    while q.last() == Some(&0) {
        q.pop();
    }
    if q.is_empty() {
        return None;
    }
    let mut e = 0;
    while q.iter().sum::<i128>() == 0 {
        // synthetic division by (1 - t)
        let mut out = vec![0i128; q.len() - 1];
        let mut acc = 0i128;
        for (k, c) in q.iter().enumerate().take(q.len() - 1) {
            acc += c;
            out[k] = acc;
        }
        q = out;
        e += 1;
    }
    Some((q, e))
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut acc = 1i128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn hf_from_numerator(n: &[i128], nvars: usize, i: u32) -> usize {
    let vars = nvars as i128;
    let total: i128 = n
        .iter()
        .enumerate()
        .filter(|(j, _)| *j as u32 <= i)
        .map(|(j, c)| c * binom(i as i128 - j as i128 + vars - 1, vars - 1))
        .sum();
    total as usize
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

/// Numerator of the Hilbert series of `P / <gens>` for monomial generators,
/// by the pivot recursion `N(J) = N(J + p) + t^deg(p) N(J : p)`.
pub fn hilbert_numerator(nvars: usize, gens: &[Monomial]) -> Vec<i128> {
    let gens = minimalize(gens.to_vec());
    if gens.is_empty() {
        return vec![1];
    }
    let pairwise_coprime =
        (0..gens.len()).all(|i| (i + 1..gens.len()).all(|j| gens[i].is_coprime(&gens[j])));
    if pairwise_coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            let mut f = vec![0i128; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot on the variable occurring in the most non-pure generators
    let mut best = (0usize, 0usize);
    for v in 0..nvars {
        let count = gens.iter().filter(|m| m.exp(v) > 0 && m.degree() > m.exp(v) as u32).count();
        if count > best.1 {
            best = (v, count);
        }
    }
    let v = best.0;
    let e = gens.iter().filter(|m| m.exp(v) > 0).map(|m| m.exp(v)).min().expect("variable occurs");
    let mut exps = vec![0u16; nvars];
    exps[v] = e;
    let pivot = Monomial::from_exponents(&exps);
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot.clone());
    let quotient: Vec<Monomial> =
        gens.iter().map(|m| m.lcm(&pivot).div(&pivot).expect("lcm divisible")).collect();
    let mut n = hilbert_numerator(nvars, &with_pivot);
    let q = hilbert_numerator(nvars, &quotient);
    poly_add_shifted(&mut n, &q, e as usize);
    while n.len() > 1 && n.last() == Some(&0) {
        n.pop();
    }
    n
}

/// Normal forms of all monomials of one degree, as coordinate vectors over the
/// standard monomials of that degree.
#[derive(Clone, Debug)]
pub struct DegreeTable {
    pub monomials: MonomialIndex,
    pub standard: MonomialIndex,
    /// `nf[i]` is the normal form of `monomials.get(i)`.
    pub nf: Vec<Vec<Scalar>>,
}

/// Per-degree normal-form tables of a quotient `P/I`, built eagerly up to a
/// maximum degree.
#[derive(Clone, Debug)]
pub struct NfTable {
    ring: Ring,
    basis: Vec<Poly>,
    degrees: Vec<DegreeTable>,
}

impl NfTable {
    pub fn new(ideal: &HomogIdeal, max_degree: u32) -> Result<NfTable> {
        ideal.basis.check_degree(max_degree)?;
        let mut t = NfTable { ring: ideal.ring, basis: ideal.basis.polys.clone(), degrees: Vec::new() };
        t.extend_to(max_degree);
        Ok(t)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    pub fn extend_to(&mut self, max_degree: u32) {
        while self.degrees.len() as u32 <= max_degree {
            let d = self.degrees.len() as u32;
            let table = self.build(d);
            self.degrees.push(table);
        }
    }

    fn build(&self, d: u32) -> DegreeTable {
        let field = self.ring.field;
        let all = graded_basis(self.ring.nvars, d);
        let standard: Vec<Monomial> = all
            .iter()
            .filter(|m| !self.basis.iter().any(|g| g.lead_monomial().is_some_and(|lt| lt.divides(m))))
            .cloned()
            .collect();
        let standard = MonomialIndex::new(standard);
        let monomials = MonomialIndex::new(all);
        let n = monomials.len();
        let s = standard.len();
        let mut nf: Vec<Vec<Scalar>> = vec![Vec::new(); n];
        // ascending order: every tail monomial u*tau is smaller than m
        for idx in (0..n).rev() {
            let m = monomials.get(idx);
            if let Some(k) = standard.position(m) {
                let mut v = vec![field.zero(); s];
                v[k] = field.one();
                nf[idx] = v;
                continue;
            }
            let (g, u) = self
                .basis
                .iter()
                .find_map(|g| m.div(g.lead_monomial()?).map(|u| (g, u)))
                .expect("non-standard monomial is divisible by a leading term");
            let mut v = vec![field.zero(); s];
            for (tau, c) in &g.terms()[1..] {
                let pos = monomials.position(&u.mul(tau)).expect("same degree");
                let neg = -c;
                crate::linalg::axpy(&mut v, &neg, &nf[pos]);
            }
            nf[idx] = v;
        }
        DegreeTable { monomials, standard, nf }
    }

    pub fn degree(&self, d: u32) -> &DegreeTable {
        &self.degrees[d as usize]
    }

    /// Coordinates of the normal form of a homogeneous polynomial.
    pub fn reduce(&self, f: &Poly) -> Vec<Scalar> {
        let Some(d) = f.degree() else {
            return Vec::new();
        };
        let table = self.degree(d);
        let mut v = vec![self.ring.field.zero(); table.standard.len()];
        for (m, c) in f.terms() {
            let pos = table.monomials.position(m).expect("homogeneous");
            crate::linalg::axpy(&mut v, c, &table.nf[pos]);
        }
        v
    }

    /// Like [`NfTable::reduce`] for `m * f`, without forming the product.
    pub fn reduce_product(&self, m: &Monomial, f: &Poly) -> Vec<Scalar> {
        let d = m.degree() + f.degree().unwrap_or(0);
        let table = self.degree(d);
        let mut v = vec![self.ring.field.zero(); table.standard.len()];
        for (t, c) in f.terms() {
            let pos = table.monomials.position(&t.mul(m)).expect("homogeneous");
            crate::linalg::axpy(&mut v, c, &table.nf[pos]);
        }
        v
    }

    /// The polynomial with the given coordinates over the standard monomials.
    pub fn to_poly(&self, d: u32, coords: &[Scalar]) -> Poly {
        let table = self.degree(d);
        Poly::from_terms(
            self.ring,
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (table.standard.get(k).clone(), c.clone())),
        )
    }

    /// Degree-`d` piece of the ideal in [`graded_basis`] coordinates.
    pub fn piece(&self, d: u32) -> Subspace {
        let field = self.ring.field;
        let table = self.degree(d);
        let n = table.monomials.len();
        let mut rows = Vec::new();
        for (idx, m) in table.monomials.monomials().iter().enumerate() {
            if table.standard.position(m).is_some() {
                continue;
            }
            let mut row = vec![field.zero(); n];
            row[idx] = field.one();
            for (k, c) in table.nf[idx].iter().enumerate() {
                if !c.is_zero() {
                    let pos = table.monomials.position(table.standard.get(k)).expect("standard monomial");
                    row[pos] = -c;
                }
            }
            rows.push(row);
        }
        debug_assert_eq!(rows.len(), n - table.standard.len());
        Subspace::from_vectors(field, n, rows)
    }
}

/// Coordinates of a homogeneous polynomial of degree `d` over [`graded_basis`].
pub fn coordinates(f: &Poly, d: u32) -> Vec<Scalar> {
    let ring = f.ring();
    let basis = graded_basis(ring.nvars, d);
    let index = MonomialIndex::new(basis);
    let mut v = vec![ring.field.zero(); index.len()];
    for (m, c) in f.terms() {
        v[index.position(m).expect("degree matches")] = c.clone();
    }
    v
}

/// The polynomial with coordinates `v` over [`graded_basis`] in degree `d`.
pub fn from_coordinates(ring: Ring, d: u32, v: &[Scalar]) -> Poly {
    let basis = graded_basis(ring.nvars, d);
    debug_assert_eq!(basis.len(), v.len());
    Poly::from_terms(ring, basis.into_iter().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero()))
}

/// Number of monomials of degree `d`.
pub fn piece_size(ring: Ring, d: u32) -> usize {
    piece_dimension(ring.nvars, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Field;
    use alloc::string::ToString;

    fn r3() -> Ring {
        Ring::new(3, Field::Rational)
    }

    fn polys(ring: Ring, s: &[&str]) -> Vec<Poly> {
        s.iter().map(|x| parse_poly(ring, x).unwrap()).collect()
    }

    fn iw() -> HomogIdeal {
        HomogIdeal::new(r3(), polys(r3(), &["X1^3-4*X0^2*X1", "(X2-X0)*(X1^2+X2^2-4*X0^2)"])).unwrap()
    }

    #[test]
    fn complete_intersection_of_two_cubics() {
        let w = iw();
        let hf: Vec<usize> = (0..6).map(|i| w.hilbert_function(i).unwrap()).collect();
        assert_eq!(hf, [1, 3, 6, 8, 9, 9]);
        let h = w.hilbert_data().unwrap();
        assert_eq!(h.regularity_index, 4);
        assert_eq!(h.eventual_value, 9);
        assert_eq!(h.alpha, Some(3));
        assert!(w.x0_is_regular());
        for g in w.generators() {
            assert!(w.normal_form(g).unwrap().is_zero());
        }
        assert!(w.normal_form(&r3().one()).unwrap().is_one_poly());
    }

    trait OnePoly {
        fn is_one_poly(&self) -> bool;
    }
    impl OnePoly for Poly {
        fn is_one_poly(&self) -> bool {
            *self == self.ring().one()
        }
    }

    #[test]
    fn principal_and_zero_ideals() {
        let r1 = Ring::new(2, Field::Rational);
        let i = HomogIdeal::new(r1, polys(r1, &["X0"])).unwrap();
        assert_eq!(i.basis().polys(), polys(r1, &["X0"]).as_slice());
        let z = HomogIdeal::new(r3(), Vec::new()).unwrap();
        for d in 0..5 {
            assert_eq!(z.hilbert_function(d).unwrap(), piece_dimension(3, d));
        }
        assert_eq!(z.hilbert_data(), Err(Error::NotZeroDimensional));
    }

    #[test]
    fn reduced_basis_is_idempotent() {
        let w = iw();
        let again = buchberger(r3(), w.basis().polys(), None).unwrap();
        assert_eq!(&again, w.basis());
    }

    #[test]
    fn single_point_and_quartic() {
        let p = HomogIdeal::new(r3(), polys(r3(), &["X1", "X2"])).unwrap();
        let h = p.hilbert_data().unwrap();
        assert_eq!((h.regularity_index, h.eventual_value), (0, 1));
        assert_eq!(h.criterion, DimensionCriterion::PurePowers);
        let r1 = Ring::new(2, Field::Rational);
        let q = HomogIdeal::new(r1, polys(r1, &["2*X0^4+X0^2*X1^2-X1^4"])).unwrap();
        let h = q.hilbert_data().unwrap();
        assert_eq!(h.values, [1, 2, 3, 4]);
        assert_eq!(h.regularity_index, 3);
    }

    #[test]
    fn truncation_reports_cap() {
        let gens = polys(r3(), &["X1^2-X0*X2", "X1*X2-X0^2", "X2^3-X0*X1^2"]);
        let w = HomogIdeal::with_cap(r3(), gens.clone(), Some(2)).unwrap();
        assert!(w.is_truncated());
        assert_eq!(w.hilbert_function(2).unwrap(), 4);
        assert_eq!(w.hilbert_function(3), Err(Error::CapExceeded { degree: 3, cap: 2 }));
        let full = HomogIdeal::new(r3(), gens).unwrap();
        assert!(!full.is_truncated());
        for d in 0..=2 {
            assert_eq!(w.standard_monomials(d).unwrap(), full.standard_monomials(d).unwrap());
        }
    }

    #[test]
    fn table_matches_direct_reduction() {
        let w = iw();
        let table = NfTable::new(&w, 6).unwrap();
        let f = parse_poly(r3(), "X1^2*X2^3 - 3*X0*X1^4 + X0^5 - X2^5").unwrap();
        let direct = w.normal_form(&f).unwrap();
        assert_eq!(table.to_poly(5, &table.reduce(&f)), direct);
        let piece = table.piece(4);
        assert_eq!(piece.dim(), 15 - 9);
        assert!(piece.contains(&coordinates(&w.generators()[0].mul_monomial(&Monomial::var(3, 2)).clone(), 4)));
        assert_eq!(direct.to_string(), table.to_poly(5, &table.reduce(&f)).to_string());
    }

    #[test]
    fn numerator_of_monomial_ideals() {
        // <X1^2, X1*X2, X2^2> in three variables: 1 - 3t^2 + 2t^3
        let g = [
            Monomial::from_exponents(&[0, 2, 0]),
            Monomial::from_exponents(&[0, 1, 1]),
            Monomial::from_exponents(&[0, 0, 2]),
        ];
        assert_eq!(hilbert_numerator(3, &g), [1, 0, -3, 2]);
    }
}
