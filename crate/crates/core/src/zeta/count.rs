//! Brute-force point counting over extension fields.
//!
//! Projective enumeration walks canonical ray representatives (leading
//! zeros, then a coordinate pinned to 1, then a free tail), so each
//! projective point is visited exactly once and no division by q-1 is
//! needed. The representative range is split across rayon workers; the
//! reduction is an exact integer sum, so results do not depend on the
//! worker count.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{field_create, FieldCtx};
use crate::zeta::polysys::PolySystem;

/// Default ceiling on canonical representatives visited by one count.
pub const DEFAULT_ENUM_CAP: u64 = 100_000_000;

/// |P^n(F_q)| = q^n + q^{n-1} + ... + 1, exactly.
pub fn projective_point_count(n: u32, q: u64) -> BigInt {
    let mut acc = BigInt::one();
    let q = BigInt::from(q);
    let mut pow = BigInt::one();
    for _ in 0..n {
        pow *= &q;
        acc += &pow;
    }
    acc
}

/// N_s: the number of points over F_{q^s} on which every polynomial of the
/// system vanishes (projective points or affine tuples, per the system).
pub fn count_points(sys: &PolySystem, s: u32) -> Result<BigInt> {
    count_points_capped(sys, s, DEFAULT_ENUM_CAP)
}

/// [`count_points`] with an explicit representative cap.
pub fn count_points_capped(sys: &PolySystem, s: u32, cap: u64) -> Result<BigInt> {
    let base = sys.ctx();
    let ext = if s == 1 {
        base.clone()
    } else {
        field_create(base.p(), base.r() * s)?
    };
    let emb = base.embed_into(&ext)?;

    // Coefficients land in the extension once, up front.
    let polys: Vec<Vec<(u32, Vec<u32>)>> = sys
        .polys()
        .iter()
        .map(|poly| {
            poly.terms()
                .iter()
                .map(|t| (emb.map_idx(t.coeff.index() as u32), t.exps.clone()))
                .collect()
        })
        .collect();

    let q = ext.q();
    let nv = sys.nvars();

    // Pre-flight size estimate against the cap.
    let total128: u128 = if sys.projective() {
        let mut acc: u128 = 0;
        let mut pow: u128 = 1;
        for _ in 0..nv {
            acc += pow;
            pow = pow.saturating_mul(q as u128);
        }
        acc
    } else {
        let mut pow: u128 = 1;
        for _ in 0..nv {
            pow = pow.saturating_mul(q as u128);
        }
        pow
    };
    if total128 > cap as u128 {
        return Err(Error::EnumerationCapExceeded {
            estimate: total128,
            cap,
        });
    }
    let total = usize::try_from(total128).map_err(|_| Error::EnumerationCapExceeded {
        estimate: total128,
        cap,
    })?;

    // q-adic place values for decoding a global representative index.
    let mut pows = vec![1u64; nv + 1];
    for i in 1..=nv {
        pows[i] = pows[i - 1] * q;
    }
    // Projective block k (first nonzero coordinate at position k) starts at
    // offsets[k] and holds q^{nv-1-k} representatives.
    let mut offsets = vec![0u64; nv + 1];
    if sys.projective() {
        for k in 0..nv {
            offsets[k + 1] = offsets[k] + pows[nv - 1 - k];
        }
    }

    let projective = sys.projective();
    let hits = (0..total)
        .into_par_iter()
        .with_min_len(1 << 12)
        .map_init(
            || vec![0u32; nv],
            |coords, g| {
                decode_rep(g as u64, projective, nv, &pows, &offsets, coords);
                u64::from(vanishes_at(&polys, &ext, coords))
            },
        )
        .sum::<u64>();

    Ok(BigInt::from(hits))
}

fn decode_rep(
    g: u64,
    projective: bool,
    nv: usize,
    pows: &[u64],
    offsets: &[u64],
    coords: &mut [u32],
) {
    if projective {
        let mut k = 0;
        while offsets[k + 1] <= g {
            k += 1;
        }
        let mut t = g - offsets[k];
        coords[..k].fill(0);
        coords[k] = 1;
        for i in (k + 1)..nv {
            let place = pows[nv - 1 - i];
            coords[i] = (t / place) as u32;
            t %= place;
        }
    } else {
        let mut t = g;
        for i in 0..nv {
            let place = pows[nv - 1 - i];
            coords[i] = (t / place) as u32;
            t %= place;
        }
    }
}

fn vanishes_at(polys: &[Vec<(u32, Vec<u32>)>], ext: &FieldCtx, coords: &[u32]) -> bool {
    for poly in polys {
        let mut acc = 0u32;
        for (coeff, exps) in poly {
            let mut v = *coeff;
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = coords[i];
                if x == 0 {
                    v = 0;
                    break;
                }
                v = ext.mul_idx(v, ext.pow_u_idx(x, e as u64));
            }
            acc = ext.add_idx(acc, v);
        }
        if acc != 0 {
            return false;
        }
    }
    true
}
