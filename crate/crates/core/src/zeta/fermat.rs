//! Closed-form zeta data for diagonal hypersurfaces.
//!
//! For a diagonal equation c_0 X_0^m + ... + c_n X_n^m = 0 over F_q with
//! q = 1 mod m, the nontrivial reciprocal roots of the zeta function are
//! products of Gauss sums: with chi the order-m character chi~ = chi^{(q-1)/m}
//! raised to tuple exponents (b_0, ..., b_n), each valid tuple (all b_i in
//! 1..m-1, sum divisible by m) contributes the root
//!
//!   alpha = (-1)^{n-1} q^n prod_i chi_i(c_i) / prod_i g(chi_i).
//!
//! Every root has magnitude q^{(n-1)/2}; root order follows the
//! lexicographic order of the tuples, which fixes the eigenvalue index.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::characters::{char_eval, Character, GaussCache};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::zeta::polysys::{MultiPoly, PolySystem, Term};

/// Tolerance for rounding a complex root-power sum to an integer count.
pub const COUNT_RESIDUAL_TOL: f64 = 1e-3;
/// Per-coefficient scaled tolerance when rounding P(T) to integers.
pub const COEFF_RESIDUAL_TOL: f64 = 1e-6;
/// Relative tolerance for root magnitude and conjugate pairing checks.
pub const WEIL_TOL: f64 = 1e-6;

/// A diagonal hypersurface c_0 X_0^m + ... + c_n X_n^m = 0 in P^n.
#[derive(Clone, Debug)]
pub struct FermatSurface {
    ctx: FieldCtx,
    m: u64,
    coeffs: Vec<FieldElement>,
}

impl FermatSurface {
    /// Requires q = 1 mod m, m >= 2, at least two coefficients, all nonzero.
    pub fn new(ctx: FieldCtx, m: u64, coeffs: Vec<FieldElement>) -> Result<Self> {
        let q = ctx.q();
        if m < 2 || (q - 1) % m != 0 {
            return Err(Error::BadCongruence { q, m });
        }
        if coeffs.len() < 2 {
            return Err(Error::BadTuple(
                "a diagonal surface needs at least two coefficients".into(),
            ));
        }
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                return Err(Error::ZeroCoefficient(i));
            }
        }
        Ok(FermatSurface { ctx, m, coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(ctx: FieldCtx, m: u64, coeffs: &[i64]) -> Result<Self> {
        let elems = coeffs.iter().map(|&c| ctx.from_int(c)).collect();
        FermatSurface::new(ctx, m, elems)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn degree(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Index bound n: the surface lives in P^n with n + 1 variables.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Dimension of the hypersurface, n - 1.
    pub fn dim(&self) -> usize {
        self.n() - 1
    }

    /// Exponent of the order-m character inside the full character group.
    pub fn chi_tilde_exponent(&self) -> u64 {
        (self.ctx.q() - 1) / self.m
    }

    /// All valid exponent tuples in lexicographic order: every entry in
    /// 1..m-1 and the sum divisible by m.
    pub fn valid_tuples(&self) -> Vec<Vec<u32>> {
        let m = self.m as u32;
        let len = self.coeffs.len();
        let mut out = Vec::new();
        let mut cur = vec![1u32; len];
        loop {
            let sum: u64 = cur.iter().map(|&b| b as u64).sum();
            if sum % self.m == 0 {
                out.push(cur.clone());
            }
            // Odometer increment over {1, ..., m-1}^len.
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] + 1 < m {
                    cur[i] += 1;
                    cur[i + 1..].fill(1);
                    break;
                }
            }
        }
    }

    /// Number of valid tuples by the closed form (m-1)[(m-1)^n + (-1)^{n-1}]/m.
    pub fn root_count(&self) -> u64 {
        let m = self.m as i128;
        let n = self.n() as u32;
        let sign = if n % 2 == 1 { 1i128 } else { -1i128 };
        let count = (m - 1) * ((m - 1).pow(n) + sign) / m;
        count as u64
    }

    /// Validate one exponent tuple for this surface.
    pub fn check_tuple(&self, b: &[u32]) -> Result<()> {
        if b.len() != self.coeffs.len() {
            return Err(Error::BadTuple(format!(
                "tuple length {} does not match {} coefficients",
                b.len(),
                self.coeffs.len()
            )));
        }
        if b.iter().any(|&bi| bi == 0 || bi as u64 >= self.m) {
            return Err(Error::BadTuple(format!(
                "tuple entries must lie in 1..{}",
                self.m
            )));
        }
        let sum: u64 = b.iter().map(|&bi| bi as u64).sum();
        if sum % self.m != 0 {
            return Err(Error::BadTuple(format!(
                "tuple sum {sum} is not divisible by m = {}",
                self.m
            )));
        }
        Ok(())
    }

    /// The defining equation as a one-polynomial projective system, for
    /// brute-force cross checks.
    pub fn to_poly_system(&self) -> PolySystem {
        let nv = self.coeffs.len();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut exps = vec![0u32; nv];
                exps[i] = self.m as u32;
                Term { coeff: c, exps }
            })
            .collect();
        let poly =
            MultiPoly::new(&self.ctx, nv, terms).expect("term widths match by construction");
        PolySystem::new(self.ctx.clone(), vec![poly], true, nv)
            .expect("a diagonal form is homogeneous")
    }
}

/// Roots of the zeta numerator/denominator polynomial P(T), plus the
/// geometry needed to interpret them.
#[derive(Clone, Debug)]
pub struct ZetaProfile {
    pub roots: Vec<Complex64>,
    /// Ambient projective dimension index (the surface has n+1 variables).
    pub n: usize,
    pub q: u64,
}

/// Gauss-sum data for one tuple: (prod_i g(chi_i), prod_i chi_i(c_i)).
fn tuple_products(
    surface: &FermatSurface,
    cache: &GaussCache,
    b: &[u32],
) -> Result<(Complex64, Complex64)> {
    let ctx = surface.ctx();
    let e0 = surface.chi_tilde_exponent();
    let mut g_prod = Complex64::one();
    let mut c_prod = Complex64::one();
    for (&bi, &ci) in b.iter().zip(surface.coeffs()) {
        let alpha = (e0 as i64) * (bi as i64);
        g_prod *= cache.get(alpha);
        c_prod *= char_eval(ctx, Character::new(ctx, alpha), ci)?;
    }
    Ok((g_prod, c_prod))
}

/// The root contributed by one valid tuple.
pub fn root_for_tuple(surface: &FermatSurface, b: &[u32]) -> Result<Complex64> {
    surface.check_tuple(b)?;
    let cache = GaussCache::new(surface.ctx().clone());
    root_for_tuple_cached(surface, &cache, b)
}

fn root_for_tuple_cached(
    surface: &FermatSurface,
    cache: &GaussCache,
    b: &[u32],
) -> Result<Complex64> {
    let (g_prod, c_prod) = tuple_products(surface, cache, b)?;
    let n = surface.n();
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{n-1}
    let qn = (surface.ctx().q() as f64).powi(n as i32);
    Ok(sign * qn * c_prod / g_prod)
}

/// The normalized root sqrt(q^{n-1}) / alpha = e^{i theta}: the eigenvalue
/// the circuit in `qsim` must reproduce for this tuple.
pub fn normalized_root_phase(surface: &FermatSurface, b: &[u32]) -> Result<Complex64> {
    surface.check_tuple(b)?;
    let cache = GaussCache::new(surface.ctx().clone());
    normalized_root_phase_cached(surface, &cache, b)
}

pub(crate) fn normalized_root_phase_cached(
    surface: &FermatSurface,
    cache: &GaussCache,
    b: &[u32],
) -> Result<Complex64> {
    let (g_prod, c_prod) = tuple_products(surface, cache, b)?;
    let n = surface.n();
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^{n-1}
    let q = surface.ctx().q() as f64;
    Ok(sign * g_prod / (q.powf((n as f64 + 1.0) / 2.0) * c_prod))
}

/// All roots of P(T), one per valid tuple, in lexicographic tuple order.
pub fn fermat_roots(surface: &FermatSurface) -> Result<ZetaProfile> {
    let cache = GaussCache::new(surface.ctx().clone());
    let tuples = surface.valid_tuples();
    let expected = surface.root_count();
    // The two closed forms for the root count agree with the enumeration.
    let m = surface.m as i128;
    let n = surface.n() as u32;
    let alt = ((m - 1).pow(n + 1) - if n % 2 == 0 { m - 1 } else { -(m - 1) }) / m;
    assert_eq!(expected as i128, alt, "closed-form root counts must agree");
    assert_eq!(
        tuples.len() as u64,
        expected,
        "enumerated tuples must match the closed-form count"
    );

    let mut roots = Vec::with_capacity(tuples.len());
    for b in &tuples {
        roots.push(root_for_tuple_cached(surface, &cache, b)?);
    }
    Ok(ZetaProfile {
        roots,
        n: surface.n(),
        q: surface.ctx().q(),
    })
}

impl ZetaProfile {
    /// A profile with no nontrivial roots: the zeta data of a hyperplane.
    pub fn plane(n: usize, q: u64) -> ZetaProfile {
        ZetaProfile {
            roots: Vec::new(),
            n,
            q,
        }
    }

    /// Expected root magnitude q^{(n-1)/2}.
    pub fn expected_magnitude(&self) -> f64 {
        (self.q as f64).powf((self.n as f64 - 1.0) / 2.0)
    }
}

/// N_s = (q^{sn} - 1)/(q^s - 1) - (-1)^n sum_j alpha_j^s, rounded to an
/// exact integer with a checked residual.
pub fn counts_from_roots(profile: &ZetaProfile, s: u32) -> Result<BigInt> {
    let qs = BigInt::from(profile.q).pow(s);
    let mut plane = BigInt::zero();
    let mut pow = BigInt::one();
    for _ in 0..profile.n {
        plane += &pow;
        pow *= &qs;
    }

    let mut root_sum = Complex64::zero();
    for alpha in &profile.roots {
        root_sum += alpha.powu(s);
    }
    let sign = if profile.n % 2 == 0 { 1.0 } else { -1.0 }; // (-1)^n
    let deviation = -sign * root_sum;

    // Past 2^52 the float grid is coarser than 1, so a residual check can
    // no longer certify the rounding.
    if deviation.norm() > 2f64.powi(52) {
        return Err(Error::ResidualTooLarge {
            residual: deviation.norm(),
            tolerance: 2f64.powi(52),
        });
    }
    let rounded = deviation.re.round();
    let residual = (deviation - Complex64::new(rounded, 0.0)).norm();
    if residual > COUNT_RESIDUAL_TOL {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance: COUNT_RESIDUAL_TOL,
        });
    }
    let count = plane + BigInt::from(rounded as i64);
    if count.is_negative() {
        return Err(Error::NegativeCount);
    }
    Ok(count)
}

/// The rational shape of the zeta function: integer coefficients of
/// P(T) = prod_j (1 - alpha_j T), its position (numerator when n is even,
/// denominator when odd), and the trivial factors (1 - q^i T).
#[derive(Clone, Debug)]
pub struct RationalForm {
    pub p_coeffs: Vec<BigInt>,
    pub p_in_numerator: bool,
    /// The values q^i for i = 0..n-1; factor i is (1 - q^i T).
    pub trivial_factors: Vec<BigInt>,
}

impl RationalForm {
    /// Expand the whole rational function as a truncated series.
    pub fn expand(&self, order: usize) -> crate::zeta::series::TruncatedSeries {
        use crate::zeta::series::{geometric_series, poly_series, TruncatedSeries};
        let p = poly_series(&self.p_coeffs, order);
        let mut acc = if self.p_in_numerator {
            p
        } else {
            p.inverse().expect("P(0) = 1")
        };
        for qi in &self.trivial_factors {
            acc = acc.mul(&geometric_series(qi, order));
        }
        let _: &TruncatedSeries = &acc;
        acc
    }
}

/// Expand prod_j (1 - alpha_j T) and round to integer coefficients.
pub fn reconstruct_rational(profile: &ZetaProfile) -> Result<RationalForm> {
    let mut poly = vec![Complex64::zero(); profile.roots.len() + 1];
    poly[0] = Complex64::one();
    for (deg, alpha) in profile.roots.iter().enumerate() {
        // poly <- poly * (1 - alpha T)
        for k in (1..=deg + 1).rev() {
            let prev = poly[k - 1];
            poly[k] -= alpha * prev;
        }
    }

    let mut p_coeffs = Vec::with_capacity(poly.len());
    for c in &poly {
        let rounded = c.re.round();
        let scale = c.norm().max(1.0);
        let residual = (c - Complex64::new(rounded, 0.0)).norm() / scale;
        if residual > COEFF_RESIDUAL_TOL {
            return Err(Error::ResidualTooLarge {
                residual,
                tolerance: COEFF_RESIDUAL_TOL,
            });
        }
        if rounded.abs() > 9e15 {
            return Err(Error::ResidualTooLarge {
                residual: rounded.abs(),
                tolerance: 9e15,
            });
        }
        p_coeffs.push(BigInt::from(rounded as i64));
    }
    debug_assert!(p_coeffs[0].is_one());

    let mut trivial_factors = Vec::with_capacity(profile.n);
    let mut pow = BigInt::one();
    for _ in 0..profile.n {
        trivial_factors.push(pow.clone());
        pow *= BigInt::from(profile.q);
    }
    Ok(RationalForm {
        p_coeffs,
        p_in_numerator: profile.n % 2 == 0,
        trivial_factors,
    })
}

/// Outcome of checking the root multiset against the expected magnitude and
/// closure under conjugation.
#[derive(Clone, Debug)]
pub struct WeilReport {
    pub expected_magnitude: f64,
    pub max_relative_magnitude_deviation: f64,
    pub unmatched_conjugates: usize,
    pub pass: bool,
}

/// Check |alpha_j| = q^{(n-1)/2} and conjugation closure of the multiset.
pub fn verify_weil(profile: &ZetaProfile) -> WeilReport {
    let expected = profile.expected_magnitude();
    let mut max_dev = 0.0f64;
    for alpha in &profile.roots {
        let dev = (alpha.norm() - expected).abs() / expected;
        max_dev = max_dev.max(dev);
    }

    let tol = WEIL_TOL * expected.max(1.0);
    let mut matched = vec![false; profile.roots.len()];
    let mut unmatched = 0usize;
    for i in 0..profile.roots.len() {
        if matched[i] {
            continue;
        }
        let target = profile.roots[i].conj();
        if (profile.roots[i] - target).norm() <= tol {
            matched[i] = true; // real root pairs with itself
            continue;
        }
        let partner = (0..profile.roots.len())
            .find(|&j| j != i && !matched[j] && (profile.roots[j] - target).norm() <= tol);
        match partner {
            Some(j) => {
                matched[i] = true;
                matched[j] = true;
            }
            None => {
                matched[i] = true;
                unmatched += 1;
            }
        }
    }

    WeilReport {
        expected_magnitude: expected,
        max_relative_magnitude_deviation: max_dev,
        unmatched_conjugates: unmatched,
        pass: max_dev < WEIL_TOL && unmatched == 0,
    }
}
