//! Seeded sampling of field elements.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Field, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An integer in `[-bound, bound]` over `Q`, a uniform residue over `F_p`.
pub fn sample(field: Field, rng: &mut SeededRng, bound: i64) -> Scalar {
    match field {
        Field::Rational => field.int(rng.gen_range(-bound..=bound)),
        Field::Prime(p) => field.ratio(&BigInt::from(rng.gen_range(0..p)), &BigInt::from(1)).expect("unit denominator"),
    }
}

pub fn sample_vec(field: Field, rng: &mut SeededRng, bound: i64, len: usize) -> alloc::vec::Vec<Scalar> {
    (0..len).map(|_| sample(field, rng, bound)).collect()
}

/// `k` distinct affine points `(1 : a_1 : ... : a_n)` with coordinates in
/// `[-bound, bound]`; if `double`, the last one carries the primary ideal
/// `<L_1, L_2^2>` for random independent linear forms through it.
pub fn random_scheme(
    ring: crate::poly::Ring,
    rng: &mut SeededRng,
    k: usize,
    double: bool,
    bound: i64,
) -> crate::error::Result<crate::scheme::Scheme> {
    use crate::poly::{AffinePoint, Poly};
    use crate::scheme::{scheme_from_components, SchemeComponent};
    let field = ring.field;
    let n = ring.nvars - 1;
    let mut points: alloc::vec::Vec<AffinePoint> = alloc::vec::Vec::new();
    while points.len() < k {
        let mut c = alloc::vec![1i64];
        c.extend((0..n).map(|_| rng.gen_range(-bound..=bound)));
        let p = AffinePoint::from_ints(field, &c)?;
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let mut comps: alloc::vec::Vec<SchemeComponent> = points.into_iter().map(SchemeComponent::reduced).collect();
    if double {
        if let Some(last) = comps.pop() {
            let primes = last.point.prime_ideal_gens(ring);
            let combo = |rng: &mut SeededRng| {
                primes.iter().fold(Poly::zero(ring), |acc, g| &acc + &g.scale(&field.int(rng.gen_range(-3..=3))))
            };
            let mut gens = alloc::vec![combo(rng)];
            while gens[0].is_zero() {
                gens[0] = combo(rng);
            }
            let mut basis = alloc::vec![gens[0].clone()];
            for g in &primes {
                let mut rows: alloc::vec::Vec<_> = basis.iter().map(|b| linear_coords(b, ring.nvars)).collect();
                rows.push(linear_coords(g, ring.nvars));
                if crate::linalg::Matrix::from_rows(field, ring.nvars, rows).rank() == basis.len() + 1 {
                    basis.push(g.clone());
                }
            }
            gens.push(basis[1].pow(2));
            gens.extend(basis.into_iter().skip(2));
            comps.push(SchemeComponent::new(last.point, gens));
        }
    }
    scheme_from_components(ring, &comps)
}

fn linear_coords(f: &crate::poly::Poly, nvars: usize) -> alloc::vec::Vec<Scalar> {
    (0..nvars).map(|i| f.coeff(&crate::monomial::Monomial::var(nvars, i))).collect()
}
