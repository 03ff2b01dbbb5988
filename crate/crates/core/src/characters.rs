//! Multiplicative characters of F_q and numerical Gauss sums.
//!
//! A character chi^alpha is identified by its exponent alpha mod (q-1) with
//! respect to the context generator: chi^alpha(g^j) = e^{2 pi i alpha j / (q-1)},
//! extended by chi^alpha(0) = 0. All values are double-precision complex;
//! root-of-unity exponents are reduced modulo the order before the
//! transcendental call so phases stay accurate for large exponent products.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::RwLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// e^{2 pi i k / m} with k reduced mod m first.
pub fn unit_root(m: u64, k: i64) -> Complex64 {
    let k = k.rem_euclid(m as i64) as f64;
    Complex64::from_polar(1.0, TAU * k / m as f64)
}

fn unit_root_u(m: u64, k: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (k % m) as f64 / m as f64)
}

/// A multiplicative character chi^alpha of a fixed field context.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    alpha: u64,
    /// Order of the character group, q - 1.
    order: u64,
    ctx_id: u32,
}

impl Character {
    /// chi^alpha over `ctx`; alpha is reduced mod q-1.
    pub fn new(ctx: &FieldCtx, alpha: i64) -> Character {
        let order = ctx.q() - 1;
        Character {
            alpha: alpha.rem_euclid(order.max(1) as i64) as u64,
            order,
            ctx_id: ctx.ctx_id(),
        }
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha == 0
    }

    /// The conjugate character chi^{-alpha}.
    pub fn inverse(&self) -> Character {
        Character {
            alpha: if self.alpha == 0 {
                0
            } else {
                self.order - self.alpha
            },
            ..*self
        }
    }

    fn check(&self, ctx: &FieldCtx) -> Result<()> {
        if self.ctx_id != ctx.ctx_id() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }
}

/// chi(x): a root of unity for x != 0, and exactly 0 at x = 0.
pub fn char_eval(ctx: &FieldCtx, chi: Character, x: FieldElement) -> Result<Complex64> {
    chi.check(ctx)?;
    match ctx.dlog(x) {
        Ok(j) => Ok(unit_root_u(chi.order.max(1), (chi.alpha as u128 * j as u128 % chi.order.max(1) as u128) as u64)),
        Err(Error::DlogOfZero) => Ok(Complex64::new(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// Pointwise product of characters: chi^a chi^b = chi^{a+b}.
pub fn char_mul(a: Character, b: Character) -> Result<Character> {
    if a.ctx_id != b.ctx_id {
        return Err(Error::ContextMismatch);
    }
    Ok(Character {
        alpha: (a.alpha + b.alpha) % a.order.max(1),
        ..a
    })
}

/// Gauss sum g(chi) = sum over x in F_q of chi(x) e^{2 pi i Tr(x) / p}.
///
/// g(chi^0) = -1 exactly; nontrivial characters give |g(chi)| = sqrt(q).
pub fn gauss_sum(ctx: &FieldCtx, chi: Character) -> Result<Complex64> {
    chi.check(ctx)?;
    let q = ctx.q();
    let order = q - 1;
    let p = ctx.p();
    let mut acc = Complex64::new(0.0, 0.0);
    // Walk the multiplicative group as generator powers: x = g^j.
    for j in 0..order {
        let x = ctx.exp_idx(j);
        let chi_x = unit_root_u(order.max(1), (chi.alpha as u128 * j as u128 % order.max(1) as u128) as u64);
        let add_x = unit_root_u(p, ctx.trace_idx(x));
        acc += chi_x * add_x;
    }
    Ok(acc)
}

/// Memoized Gauss sums for one field context; safe for concurrent use.
pub struct GaussCache {
    ctx: FieldCtx,
    memo: RwLock<HashMap<u64, Complex64>>,
}

impl GaussCache {
    pub fn new(ctx: FieldCtx) -> Self {
        GaussCache {
            ctx,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn get(&self, alpha: i64) -> Complex64 {
        let chi = Character::new(&self.ctx, alpha);
        if let Some(v) = self.memo.read().unwrap().get(&chi.alpha()) {
            return *v;
        }
        let v = gauss_sum(&self.ctx, chi).expect("character built from the cached context");
        self.memo.write().unwrap().insert(chi.alpha(), v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_create;

    const EPS: f64 = 1e-12;

    #[test]
    fn trivial_character_values() {
        let f = field_create(7, 1).unwrap();
        let chi0 = Character::new(&f, 0);
        assert_eq!(char_eval(&f, chi0, f.zero()).unwrap().norm(), 0.0);
        for x in f.elements().filter(|e| !e.is_zero()) {
            let v = char_eval(&f, chi0, x).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < EPS);
        }
    }

    #[test]
    fn quartic_character_on_f5() {
        let f = field_create(5, 1).unwrap();
        let chi = Character::new(&f, 1);
        // dlog(4) = 2 for g = 2, so chi(4) = i^2 = -1.
        let v = char_eval(&f, chi, f.from_int(4)).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < EPS);
    }

    #[test]
    fn character_group_is_additive_in_exponents() {
        let f7 = field_create(7, 1).unwrap();
        let prod = char_mul(Character::new(&f7, 2), Character::new(&f7, 3)).unwrap();
        assert_eq!(prod.alpha(), 5);
        let f5 = field_create(5, 1).unwrap();
        let wrap = char_mul(Character::new(&f5, 4), Character::new(&f5, 4)).unwrap();
        assert_eq!(wrap.alpha(), 0);
        let q = f5.q() as i64;
        let inv_pair = char_mul(Character::new(&f5, 1), Character::new(&f5, q - 2)).unwrap();
        assert!(inv_pair.is_trivial());
        assert!(matches!(
            char_mul(Character::new(&f5, 1), Character::new(&f7, 1)),
            Err(crate::Error::ContextMismatch)
        ));
    }

    #[test]
    fn char_eval_is_multiplicative_exhaustively() {
        // Every character, every pair, for a spread of fields up to q = 64.
        for (p, r) in [(5, 1), (7, 1), (2, 4), (3, 2), (11, 1), (61, 1), (2, 6)] {
            let f = field_create(p, r).unwrap();
            let q = f.q();
            for alpha in 0..q - 1 {
                let chi = Character::new(&f, alpha as i64);
                for x in f.elements() {
                    for y in f.elements() {
                        let lhs =
                            char_eval(&f, chi, f.mul(x, y).unwrap()).unwrap();
                        let rhs = char_eval(&f, chi, x).unwrap()
                            * char_eval(&f, chi, y).unwrap();
                        assert!((lhs - rhs).norm() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_sum_of_trivial_character_is_minus_one() {
        for (p, r) in [(2, 1), (5, 1), (3, 2), (2, 4), (13, 1)] {
            let f = field_create(p, r).unwrap();
            let g = gauss_sum(&f, Character::new(&f, 0)).unwrap();
            assert!((g - Complex64::new(-1.0, 0.0)).norm() < EPS);
        }
    }

    #[test]
    fn quadratic_gauss_sum_over_f5_is_sqrt5() {
        let f = field_create(5, 1).unwrap();
        let g = gauss_sum(&f, Character::new(&f, 2)).unwrap();
        assert!((g - Complex64::new(5.0f64.sqrt(), 0.0)).norm() < 1e-9);
    }

    #[test]
    fn gauss_sum_magnitudes_for_every_prime_power_up_to_512() {
        // |g(chi)|^2 = q for nontrivial characters, 1 for the trivial one.
        for q in 2u64..=512 {
            let Some((p, r)) = prime_power(q) else {
                continue;
            };
            let f = field_create(p, r).unwrap();
            let qf = q as f64;
            for alpha in 0..q - 1 {
                let g = gauss_sum(&f, Character::new(&f, alpha as i64)).unwrap();
                let expected = if alpha == 0 { 1.0 } else { qf };
                assert!(
                    (g.norm_sqr() - expected).abs() < 1e-9 * qf,
                    "q={q} alpha={alpha}"
                );
            }
        }
    }

    fn prime_power(q: u64) -> Option<(u64, u32)> {
        let mut p = 2;
        while p * p <= q {
            if q % p == 0 {
                let mut v = q;
                let mut r = 0;
                while v % p == 0 {
                    v /= p;
                    r += 1;
                }
                return (v == 1).then_some((p, r));
            }
            p += 1;
        }
        Some((q, 1))
    }

    #[test]
    fn conjugation_identity_against_direct_summation() {
        // g(chi^{-a}) = chi^a(-1) conj(g(chi^a)); both sides summed directly.
        for (p, r) in [(5, 1), (7, 1), (3, 2), (2, 4), (13, 1)] {
            let f = field_create(p, r).unwrap();
            let minus_one = f.from_int(-1);
            for alpha in 1..f.q() - 1 {
                let chi = Character::new(&f, alpha as i64);
                let lhs = gauss_sum(&f, chi.inverse()).unwrap();
                let rhs = char_eval(&f, chi, minus_one).unwrap()
                    * gauss_sum(&f, chi).unwrap().conj();
                assert!((lhs - rhs).norm() < 1e-9, "p={p} r={r} alpha={alpha}");
            }
        }
    }

    #[test]
    fn character_orthogonality() {
        for (p, r) in [(5, 1), (7, 1), (3, 2), (2, 4)] {
            let f = field_create(p, r).unwrap();
            for alpha in 0..f.q() - 1 {
                let chi = Character::new(&f, alpha as i64);
                let mut acc = Complex64::new(0.0, 0.0);
                for x in f.elements().filter(|e| !e.is_zero()) {
                    acc += char_eval(&f, chi, x).unwrap();
                }
                let expected = if alpha == 0 { (f.q() - 1) as f64 } else { 0.0 };
                assert!((acc - Complex64::new(expected, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn cache_agrees_with_direct_sum() {
        let f = field_create(13, 1).unwrap();
        let cache = GaussCache::new(f.clone());
        for alpha in 0..12 {
            let direct = gauss_sum(&f, Character::new(&f, alpha)).unwrap();
            assert_eq!(cache.get(alpha), cache.get(alpha));
            assert!((cache.get(alpha) - direct).norm() < EPS);
        }
    }
}
