//! Monomials of `K[X_0, ..., X_n]` under degree-reverse-lexicographic order with
//! `X_0` the smallest variable.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 6]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: smallvec::smallvec![0; nvars], degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: exps.iter().copied().collect(), degree }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: self.degree - other.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The monomial with the `X_0` exponent removed (set to zero).
    pub fn drop_x0(&self) -> Monomial {
        let mut m = self.clone();
        m.degree -= m.exps[0] as u32;
        m.exps[0] = 0;
        m
    }

    pub fn with_x0(&self, e: u16) -> Monomial {
        let mut m = self.clone();
        m.degree = m.degree - m.exps[0] as u32 + e as u32;
        m.exps[0] = e;
        m
    }
}

impl Ord for Monomial {
    /// Degree first; ties broken reverse-lexicographically from `X_0` upward,
    /// so a smaller `X_0` exponent makes a monomial larger.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "X{i}")?;
            } else {
                write!(f, "X{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `nvars` variables, largest first.
pub fn graded_basis(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps: Exponents = smallvec::smallvec![0; nvars];
    fill(&mut out, &mut exps, 0, d);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(out: &mut Vec<Monomial>, exps: &mut Exponents, i: usize, left: u32) {
    let n = exps.len();
    if n == 0 {
        if left == 0 {
            out.push(Monomial { exps: exps.clone(), degree: 0 });
        }
        return;
    }
    if i == n - 1 {
        exps[i] = left as u16;
        let degree = exps.iter().map(|&e| e as u32).sum();
        out.push(Monomial { exps: exps.clone(), degree });
        exps[i] = 0;
        return;
    }
    for e in 0..=left {
        exps[i] = e as u16;
        fill(out, exps, i + 1, left - e);
    }
    exps[i] = 0;
}

/// `binomial(n + d, d)`, the dimension of a degree-`d` piece in `n + 1` variables.
pub fn piece_dimension(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    let n = nvars as u64 - 1;
    let mut acc: u64 = 1;
    for i in 1..=d as u64 {
        acc = acc * (n + i) / i;
    }
    acc as usize
}

/// An indexed list of monomials, used as the column set of a coefficient matrix.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    monomials: Vec<Monomial>,
    position: BTreeMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(monomials: Vec<Monomial>) -> MonomialIndex {
        let position = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex { monomials, position }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.position.get(m).copied()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
}
