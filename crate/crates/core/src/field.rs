//! Exact arithmetic in F_p and F_{p^r}.
//!
//! A [`FieldCtx`] realizes one concrete finite field: a polynomial basis over
//! a deterministic irreducible modulus, a fixed generator of the
//! multiplicative group, and full exp/dlog tables so that multiplication,
//! inversion and powering are O(1) lookups. Construction is deterministic:
//! the modulus is the lexicographically smallest monic irreducible of the
//! requested degree and the generator is the first element of full order in
//! coefficient order, so two contexts built from the same (p, r) are
//! identical bit for bit.
//!
//! Elements are stored as canonical indices: the coefficient vector
//! (c_0, ..., c_{r-1}) of an element is read as the base-p integer
//! c_0 + c_1 p + ... + c_{r-1} p^{r-1}.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard bound on the field cardinality; the dlog table is materialized in
/// full, so q is kept at desk scale.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const DLOG_ZERO: u32 = u32::MAX;

/// An element of a specific [`FieldCtx`]; plain data, freely copyable.
///
/// The context identifier is checked at every operation boundary so that
/// elements from different fields never mix silently.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    idx: u32,
    ctx_id: u32,
}

impl FieldElement {
    /// Canonical index of the element (base-p digit encoding of its
    /// coefficient vector).
    pub fn index(&self) -> u64 {
        self.idx as u64
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }
}

struct CtxInner {
    p: u64,
    r: u32,
    q: u64,
    ctx_id: u32,
    /// Monic modulus, length r+1, constant term first.
    modulus: Vec<u64>,
    generator: u32,
    /// exp[k] = index of generator^k, k in 0..q-1.
    exp: Vec<u32>,
    /// dlog[idx] = k with generator^k = element, dlog[0] = sentinel.
    dlog: Vec<u32>,
    /// trace[idx] = Tr(element) in 0..p.
    trace: Vec<u32>,
}

/// Immutable description of F_{p^r}. Cheap to clone and safe to share
/// across threads.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<CtxInner>,
}

/// Deterministic realization of F_{p^r}.
///
/// The modulus is the lexicographically smallest monic irreducible of degree
/// r over F_p (for r = 1 it is the polynomial t, i.e. plain arithmetic mod
/// p), and the generator is the first element of multiplicative order q-1 in
/// coefficient order.
pub fn field_create(p: u64, r: u32) -> Result<FieldCtx> {
    if r < 1 {
        return Err(Error::BadDegree);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q128 = (p as u128).pow(r);
    if q128 > MAX_FIELD_SIZE as u128 {
        return Err(Error::FieldTooLarge { q: q128 });
    }
    let q = q128 as u64;

    let modulus = smallest_irreducible(p, r);
    let generator = find_generator(p, r, q, &modulus);

    // exp / dlog tables by repeated multiplication with the generator.
    let mut exp = vec![0u32; (q - 1) as usize];
    let mut dlog = vec![DLOG_ZERO; q as usize];
    let gen_coeffs = decode(generator, p, r);
    let mut cur = vec![0u64; r as usize];
    cur[0] = 1;
    for (k, slot) in exp.iter_mut().enumerate() {
        let idx = encode(&cur, p);
        *slot = idx;
        dlog[idx as usize] = k as u32;
        cur = poly_mul_mod(&cur, &gen_coeffs, &modulus, p);
    }

    // Tr is F_p-linear, so the traces of the basis powers t^i determine it.
    let mut basis_traces = vec![0u64; r as usize];
    for (i, bt) in basis_traces.iter_mut().enumerate() {
        let mut ti = vec![0u64; r as usize];
        ti[i] = 1;
        *bt = poly_trace(&ti, &modulus, p, r);
    }
    let mut trace = vec![0u32; q as usize];
    for (idx, tr) in trace.iter_mut().enumerate() {
        let coeffs = decode(idx as u32, p, r);
        let mut acc = 0u64;
        for (c, bt) in coeffs.iter().zip(&basis_traces) {
            acc = (acc + c * bt) % p;
        }
        *tr = acc as u32;
    }

    Ok(FieldCtx {
        inner: Arc::new(CtxInner {
            p,
            r,
            q,
            ctx_id: ((p as u32) << 5) | r,
            modulus,
            generator,
            exp,
            dlog,
            trace,
        }),
    })
}

impl FieldCtx {
    pub fn new(p: u64, r: u32) -> Result<FieldCtx> {
        field_create(p, r)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn r(&self) -> u32 {
        self.inner.r
    }

    /// Cardinality q = p^r.
    pub fn q(&self) -> u64 {
        self.inner.q
    }

    pub fn ctx_id(&self) -> u32 {
        self.inner.ctx_id
    }

    /// Monic modulus polynomial, constant term first (length r+1).
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    pub fn generator(&self) -> FieldElement {
        self.wrap(self.inner.generator)
    }

    /// Element with the given canonical index.
    pub fn elem(&self, idx: u64) -> Result<FieldElement> {
        if idx >= self.inner.q {
            return Err(Error::ElementOutOfRange {
                idx,
                q: self.inner.q,
            });
        }
        Ok(self.wrap(idx as u32))
    }

    /// Element from (possibly negative, possibly unreduced) coefficients;
    /// entries beyond degree r-1 are rejected.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement> {
        if coeffs.len() > self.inner.r as usize {
            return Err(Error::ElementOutOfRange {
                idx: u64::MAX,
                q: self.inner.q,
            });
        }
        let p = self.inner.p as i64;
        let mut reduced = vec![0u64; self.inner.r as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            reduced[i] = c.rem_euclid(p) as u64;
        }
        Ok(self.wrap(encode(&reduced, self.inner.p)))
    }

    /// Constant element from an integer (reduced mod p).
    pub fn from_int(&self, v: i64) -> FieldElement {
        let c = v.rem_euclid(self.inner.p as i64) as u64;
        self.wrap(c as u32)
    }

    /// Coefficient vector (c_0, ..., c_{r-1}) of an element.
    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u64>> {
        let idx = self.check(x)?;
        Ok(decode(idx, self.inner.p, self.inner.r))
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.q).map(move |i| self.wrap(i as u32))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let (a, b) = (self.check(x)?, self.check(y)?);
        Ok(self.wrap(self.add_idx(a, b)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let (a, b) = (self.check(x)?, self.check(y)?);
        Ok(self.wrap(self.add_idx(a, self.neg_idx(b))))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        let a = self.check(x)?;
        Ok(self.wrap(self.neg_idx(a)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let (a, b) = (self.check(x)?, self.check(y)?);
        Ok(self.wrap(self.mul_idx(a, b)))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        let a = self.check(x)?;
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.inv_idx(a)))
    }

    /// Powering by repeated squaring; a negative exponent inverts first.
    pub fn pow(&self, x: FieldElement, e: i64) -> Result<FieldElement> {
        let a = self.check(x)?;
        if a == 0 {
            return match e {
                0 => Ok(self.one()),
                _ if e > 0 => Ok(self.zero()),
                _ => Err(Error::DivisionByZero),
            };
        }
        let base = if e < 0 { self.inv_idx(a) } else { a };
        let mut exp = e.unsigned_abs();
        let mut acc = 1u32;
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_idx(acc, sq);
            }
            sq = self.mul_idx(sq, sq);
            exp >>= 1;
        }
        Ok(self.wrap(acc))
    }

    /// Trace down to the prime field: Tr(x) = x + x^p + ... + x^{p^{r-1}},
    /// returned as a residue mod p.
    pub fn trace(&self, x: FieldElement) -> Result<u64> {
        let a = self.check(x)?;
        Ok(self.inner.trace[a as usize] as u64)
    }

    /// Discrete logarithm with respect to the context generator.
    pub fn dlog(&self, x: FieldElement) -> Result<u64> {
        let a = self.check(x)?;
        if a == 0 {
            return Err(Error::DlogOfZero);
        }
        Ok(self.inner.dlog[a as usize] as u64)
    }

    /// Debug dump of the context parameters as a JSON object.
    pub fn to_debug_json(&self) -> String {
        let gen_coeffs = decode(self.inner.generator, self.inner.p, self.inner.r);
        format!(
            "{{\"p\":{},\"r\":{},\"modulus\":[{}],\"generator\":[{}]}}",
            self.inner.p,
            self.inner.r,
            self.inner
                .modulus
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            gen_coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )
    }

    /// The unique field embedding of this field into `target` that sends the
    /// basis root to the smallest root (by index) of this modulus in the
    /// target field. Requires the same characteristic and r | target.r.
    pub fn embed_into(&self, target: &FieldCtx) -> Result<Embedding> {
        if self.inner.p != target.inner.p || target.inner.r % self.inner.r != 0 {
            return Err(Error::NoEmbedding);
        }
        // Smallest root of this modulus inside the target field.
        let beta = target
            .elements()
            .find(|cand| {
                let mut acc = target.zero().idx;
                // Horner evaluation of the modulus, constant term first.
                for &c in self.inner.modulus.iter().rev() {
                    acc = target.mul_idx(acc, cand.idx);
                    acc = target.add_idx(acc, target.from_int(c as i64).idx);
                }
                acc == 0
            })
            .ok_or(Error::NoEmbedding)?;
        let mut beta_pows = Vec::with_capacity(self.inner.r as usize);
        let mut cur = target.one().idx;
        for _ in 0..self.inner.r {
            beta_pows.push(cur);
            cur = target.mul_idx(cur, beta.idx);
        }
        Ok(Embedding {
            src: self.clone(),
            dst: target.clone(),
            beta_pows,
        })
    }

    fn wrap(&self, idx: u32) -> FieldElement {
        FieldElement {
            idx,
            ctx_id: self.inner.ctx_id,
        }
    }

    fn check(&self, x: FieldElement) -> Result<u32> {
        if x.ctx_id != self.inner.ctx_id {
            return Err(Error::ContextMismatch);
        }
        Ok(x.idx)
    }

    // ---- index-level operations (hot paths inside the crate) ----

    pub(crate) fn add_idx(&self, a: u32, b: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.r == 1 {
            let s = a as u64 + b as u64;
            return if s >= p { (s - p) as u32 } else { s as u32 };
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.inner.r {
            let mut d = a % p + b % p;
            if d >= p {
                d -= p;
            }
            out += d * mult;
            mult *= p;
            a /= p;
            b /= p;
        }
        out as u32
    }

    pub(crate) fn neg_idx(&self, a: u32) -> u32 {
        let p = self.inner.p;
        if self.inner.r == 1 {
            return if a == 0 { 0 } else { (p - a as u64) as u32 };
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.inner.r {
            let d = a % p;
            out += if d == 0 { 0 } else { p - d } * mult;
            mult *= p;
            a /= p;
        }
        out as u32
    }

    pub(crate) fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let o = self.inner.q - 1;
        let mut k = self.inner.dlog[a as usize] as u64 + self.inner.dlog[b as usize] as u64;
        if k >= o {
            k -= o;
        }
        self.inner.exp[k as usize]
    }

    pub(crate) fn inv_idx(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let o = self.inner.q - 1;
        let k = self.inner.dlog[a as usize] as u64;
        self.inner.exp[((o - k) % o) as usize]
    }

    /// x^e for an unsigned exponent, via the dlog table.
    pub(crate) fn pow_u_idx(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let o = (self.inner.q - 1) as u128;
        let k = (self.inner.dlog[a as usize] as u128 * (e as u128 % o)) % o;
        self.inner.exp[k as usize]
    }

    /// x^e for a signed exponent on a nonzero element.
    pub(crate) fn pow_i_idx(&self, a: u32, e: i64) -> u32 {
        debug_assert!(a != 0);
        let o = (self.inner.q - 1) as i128;
        let k = (self.inner.dlog[a as usize] as i128 * (e as i128)).rem_euclid(o);
        self.inner.exp[k as usize]
    }

    pub(crate) fn exp_idx(&self, k: u64) -> u32 {
        self.inner.exp[(k % (self.inner.q - 1)) as usize]
    }

    pub(crate) fn trace_idx(&self, a: u32) -> u64 {
        self.inner.trace[a as usize] as u64
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.inner.ctx_id == other.inner.ctx_id
    }
}

impl Eq for FieldCtx {}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(p={}, r={})", self.inner.p, self.inner.r)
    }
}

/// A field homomorphism F_{p^r} -> F_{p^{rs}}, fixed by the image of the
/// polynomial-basis root.
pub struct Embedding {
    src: FieldCtx,
    dst: FieldCtx,
    beta_pows: Vec<u32>,
}

impl Embedding {
    pub fn map(&self, x: FieldElement) -> Result<FieldElement> {
        let idx = self.src.check(x)?;
        Ok(self.dst.wrap(self.map_idx(idx)))
    }

    pub(crate) fn map_idx(&self, idx: u32) -> u32 {
        let coeffs = decode(idx, self.src.p(), self.src.r());
        let mut acc = 0u32;
        for (c, bp) in coeffs.iter().zip(&self.beta_pows) {
            let term = self.dst.mul_idx(self.dst.from_int(*c as i64).idx, *bp);
            acc = self.dst.add_idx(acc, term);
        }
        acc
    }

    pub fn target(&self) -> &FieldCtx {
        &self.dst
    }
}

// ---- deterministic construction helpers ----

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn encode(coeffs: &[u64], p: u64) -> u32 {
    let mut out = 0u64;
    for &c in coeffs.iter().rev() {
        out = out * p + c;
    }
    out as u32
}

fn decode(idx: u32, p: u64, r: u32) -> Vec<u64> {
    let mut out = vec![0u64; r as usize];
    let mut v = idx as u64;
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

/// Dense polynomial arithmetic over F_p, little-endian coefficients; used
/// only during context construction.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let r = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // Reduce by the monic modulus.
    for d in (r..prod.len()).rev() {
        let lead = prod[d];
        if lead == 0 {
            continue;
        }
        prod[d] = 0;
        for (k, &mc) in modulus.iter().take(r).enumerate() {
            let pos = d - r + k;
            prod[pos] = (prod[pos] + (p - mc % p) % p * lead) % p;
        }
    }
    prod.truncate(r.max(1));
    prod.resize(r.max(1), 0);
    prod
}

fn poly_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let r = modulus.len() - 1;
    let mut acc = vec![0u64; r.max(1)];
    acc[0] = 1;
    let mut sq = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &sq, modulus, p);
        }
        sq = poly_mul_mod(&sq, &sq, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn poly_is_one(a: &[u64]) -> bool {
    a.first() == Some(&1) && a[1..].iter().all(|&c| c == 0)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat inverse; p prime.
    let mut acc = 1u64;
    let mut sq = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * sq % p;
        }
        sq = sq * sq % p;
        e >>= 1;
    }
    acc
}

fn poly_gcd_is_constant(a: &[u64], b: &[u64], p: u64) -> bool {
    let trim = |v: &[u64]| {
        let mut v = v.to_vec();
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    };
    let mut x = trim(a);
    let mut y = trim(b);
    while !poly_is_zero(&y) {
        // x mod y
        let ly = *y.last().unwrap();
        let ly_inv = mod_inv(ly, p);
        let mut rem = x.clone();
        while rem.len() >= y.len() && !poly_is_zero(&rem) {
            let lead = *rem.last().unwrap();
            if lead == 0 {
                rem.pop();
                continue;
            }
            let shift = rem.len() - y.len();
            let f = lead * ly_inv % p;
            for (k, &yc) in y.iter().enumerate() {
                rem[shift + k] = (rem[shift + k] + (p - f * yc % p)) % p;
            }
            while rem.len() > 1 && *rem.last().unwrap() == 0 {
                rem.pop();
            }
            if rem.len() < y.len() {
                break;
            }
        }
        x = y;
        y = trim(&rem);
        if poly_is_zero(&y) {
            break;
        }
    }
    x.len() == 1
}

/// x^{p^k} mod f, as a polynomial.
fn frobenius_power(k: u32, modulus: &[u64], p: u64) -> Vec<u64> {
    let r = modulus.len() - 1;
    let mut x = vec![0u64; r.max(1)];
    if r == 1 {
        // The field is F_p itself; x reduces to the constant -modulus[0].
        x[0] = (p - modulus[0] % p) % p;
        return x;
    }
    x[1] = 1;
    let mut acc = x;
    for _ in 0..k {
        let mut e = p;
        let base = acc.clone();
        let mut powed = vec![0u64; r];
        powed[0] = 1;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                powed = poly_mul_mod(&powed, &sq, modulus, p);
            }
            sq = poly_mul_mod(&sq, &sq, modulus, p);
            e >>= 1;
        }
        acc = powed;
    }
    acc
}

fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let r = (modulus.len() - 1) as u32;
    if r == 1 {
        return true;
    }
    // x^{p^r} must equal x mod f ...
    let xqr = frobenius_power(r, modulus, p);
    let mut x = vec![0u64; r as usize];
    x[1] = 1;
    if xqr != x {
        return false;
    }
    // ... and gcd(x^{p^{r/l}} - x, f) must be constant for every prime l | r.
    let mut rr = r;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= rr {
        if rr % d == 0 {
            primes.push(d);
            while rr % d == 0 {
                rr /= d;
            }
        }
        d += 1;
    }
    if rr > 1 {
        primes.push(rr);
    }
    for l in primes {
        let mut h = frobenius_power(r / l, modulus, p);
        h[1] = (h[1] + p - 1) % p;
        if !poly_gcd_is_constant(modulus, &h, p) {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    if r == 1 {
        return vec![0, 1]; // t
    }
    let q = p.pow(r);
    for code in 0..q {
        let mut coeffs = decode(code as u32, p, r);
        coeffs.push(1); // monic
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn find_generator(p: u64, r: u32, q: u64, modulus: &[u64]) -> u32 {
    let order = q - 1;
    let mut prime_divisors = Vec::new();
    let mut o = order;
    let mut d = 2u64;
    while d * d <= o {
        if o % d == 0 {
            prime_divisors.push(d);
            while o % d == 0 {
                o /= d;
            }
        }
        d += 1;
    }
    if o > 1 {
        prime_divisors.push(o);
    }
    'cand: for idx in 1..q {
        let coeffs = decode(idx as u32, p, r);
        for &l in &prime_divisors {
            let powed = poly_pow_mod(&coeffs, order / l, modulus, p);
            if poly_is_one(&powed) {
                continue 'cand;
            }
        }
        // Element of order dividing q-1 whose order is divided by no proper
        // maximal divisor: a generator.
        return idx as u32;
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

fn poly_trace(x: &[u64], modulus: &[u64], p: u64, r: u32) -> u64 {
    let mut acc = vec![0u64; x.len()];
    let mut cur = x.to_vec();
    for _ in 0..r {
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a = (*a + c) % p;
        }
        cur = poly_pow_mod(&cur, p, modulus, p);
    }
    debug_assert!(acc[1..].iter().all(|&c| c == 0), "trace must land in F_p");
    acc[0]
}
