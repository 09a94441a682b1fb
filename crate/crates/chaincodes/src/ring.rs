//! Finite chain rings and their Galois extensions.
//!
//! A [`RingSpec`] describes the extension `S` of degree `m` over a base chain
//! ring `R` of invariants `(q, s)` with `q = p^n`. Both rings share a single
//! representation: `R` is the subring of `S` fixed by the relative Frobenius.
//!
//! * Galois-ring family: `S = Z_{p^s}[x]/(F)`, elements are `N = n*m`
//!   coefficients modulo `p^s`, `theta = p`.
//! * Equal-characteristic family: `S = F_p[x]/(f)[u]/(u^s)`, elements are `s`
//!   blocks of `N` coefficients modulo `p` (block `j` holds the `u^j` part),
//!   `theta = u`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Environment variable overriding the ring size guard (in bits).
pub const MAX_RING_BITS_ENV: &str = "CHAINCODES_MAX_RING_BITS";
pub const DEFAULT_MAX_RING_BITS: u32 = 30;

/// Size guard in bits, honouring [`MAX_RING_BITS_ENV`].
pub fn max_ring_bits() -> u32 {
    std::env::var(MAX_RING_BITS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|b| b.min(62))
        .unwrap_or(DEFAULT_MAX_RING_BITS)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    GaloisRing,
    EqualCharacteristic,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "galois-ring" | "gr" => Ok(Family::GaloisRing),
            "equal-characteristic" | "ec" => Ok(Family::EqualCharacteristic),
            other => Err(Error::InvalidParameter(format!("unknown ring family '{other}'"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GaloisRing => "galois-ring",
            Family::EqualCharacteristic => "equal-characteristic",
        })
    }
}

/// A ring element in canonical coefficient form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(Vec<u32>);

impl Elem {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }
}

/// JSON form of a ring: `{p, n, s, m, family, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub p: u64,
    pub n: u32,
    pub s: u32,
    pub m: u32,
    pub family: Family,
    pub modulus: Vec<u64>,
}

#[derive(Debug)]
pub struct RingSpec {
    p: u64,
    n: u32,
    s: u32,
    m: u32,
    family: Family,
    modulus: Vec<u32>,
    degree: usize,
    cmod: u64,
    big_q: u64,
    frob: Vec<Vec<u32>>,
    xi: Elem,
    theta: Elem,
    base_teich: OnceLock<Vec<Elem>>,
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.s == other.s
            && self.m == other.m
            && self.family == other.family
            && self.modulus == other.modulus
    }
}
impl Eq for RingSpec {}

/// Product of two degree-`< N` polynomials reduced by the monic `f`, coefficients mod `cm`.
fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], cm: u64) -> Vec<u32> {
    let n = f.len() - 1;
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % cm;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for i in 0..n {
            let sub = c * f[i] as u64 % cm;
            prod[k - n + i] = (prod[k - n + i] + cm - sub) % cm;
        }
    }
    prod.truncate(n);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_powmod(a: &[u32], mut e: u64, f: &[u32], cm: u64) -> Vec<u32> {
    let n = f.len() - 1;
    let mut r = vec![0u32; n];
    r[0] = 1 % cm as u32;
    let mut b = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mulmod(&r, &b, f, cm);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mulmod(&b, &b, f, cm);
        }
    }
    r
}

/// The class of `x` modulo the monic `f` (degree >= 1).
fn x_mod(f: &[u32], cm: u64) -> Vec<u32> {
    let n = f.len() - 1;
    let mut v = vec![0u32; n];
    if n >= 2 {
        v[1] = 1;
    } else {
        v[0] = ((cm - f[0] as u64 % cm) % cm) as u32;
    }
    v
}

/// Whether the monic `f` over `F_p` is primitive (so `x` has order `p^N - 1`).
pub fn is_primitive(f: &[u32], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 || (f[0] as u64).is_multiple_of(p) {
        return false;
    }
    let order = p.pow(n as u32) - 1;
    let x = x_mod(f, p);
    let mut one = vec![0u32; n];
    one[0] = 1;
    if poly_powmod(&x, order, f, p) != one {
        return false;
    }
    prime_factors(order).into_iter().all(|r| poly_powmod(&x, order / r, f, p) != one)
}

/// First monic primitive polynomial of degree `n` over `F_p`, ordered by its
/// coefficient vector read as a base-`p` integer (constant term least significant).
pub fn first_primitive(p: u64, n: usize) -> Vec<u32> {
    let total = p.pow(n as u32);
    for code in 0..total {
        let mut f = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            f.push((c % p) as u32);
            c /= p;
        }
        f.push(1);
        if is_primitive(&f, p) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

impl RingSpec {
    /// Builds `S` of invariants `(p^{n m}, s)` over `R` of invariants `(p^n, s)`
    /// with the canonical modulus.
    pub fn new(p: u64, n: u32, s: u32, m: u32, family: Family) -> Result<Arc<RingSpec>> {
        Self::validate(p, n, s, m)?;
        let modulus = first_primitive(p, (n * m) as usize);
        Self::build(p, n, s, m, family, modulus)
    }

    pub fn from_descriptor(d: &RingDescriptor) -> Result<Arc<RingSpec>> {
        Self::validate(d.p, d.n, d.s, d.m)?;
        let deg = (d.n * d.m) as usize;
        if d.modulus.len() != deg + 1 {
            return Err(Error::InvalidModulus(format!("expected {} coefficients, got {}", deg + 1, d.modulus.len())));
        }
        if d.modulus[deg] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        let cm = match d.family {
            Family::GaloisRing => d.p.pow(d.s),
            Family::EqualCharacteristic => d.p,
        };
        if d.modulus.iter().any(|&c| c >= cm) {
            return Err(Error::InvalidModulus(format!("coefficients must be below {cm}")));
        }
        let modulus: Vec<u32> = d.modulus.iter().map(|&c| c as u32).collect();
        let residue: Vec<u32> = modulus.iter().map(|&c| (c as u64 % d.p) as u32).collect();
        if !is_primitive(&residue, d.p) {
            return Err(Error::InvalidModulus("residue of modulus is not primitive".into()));
        }
        Self::build(d.p, d.n, d.s, d.m, d.family, modulus)
    }

    fn validate(p: u64, n: u32, s: u32, m: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || s == 0 || m == 0 {
            return Err(Error::InvalidParameter("n, s and m must be at least 1".into()));
        }
        let limit = max_ring_bits();
        let exp = s as u64 * n as u64 * m as u64;
        let bits = (exp as f64 * (p as f64).log2()).ceil() as u64;
        let size = (p as u128).checked_pow(exp.min(u32::MAX as u64) as u32);
        match size {
            Some(sz) if sz <= 1u128 << limit => {}
            _ => return Err(Error::RingTooLarge { bits: bits.min(u32::MAX as u64) as u32, limit }),
        }
        if p.pow(s) >= 1 << 31 {
            return Err(Error::InvalidParameter(format!("coefficient modulus {p}^{s} is too large")));
        }
        Ok(())
    }

    fn build(p: u64, n: u32, s: u32, m: u32, family: Family, modulus: Vec<u32>) -> Result<Arc<RingSpec>> {
        let degree = (n * m) as usize;
        let cmod = match family {
            Family::GaloisRing => p.pow(s),
            Family::EqualCharacteristic => p,
        };
        let mut spec = RingSpec {
            p,
            n,
            s,
            m,
            family,
            modulus,
            degree,
            cmod,
            big_q: p.pow(degree as u32),
            frob: Vec::new(),
            xi: Elem(Vec::new()),
            theta: Elem(Vec::new()),
            base_teich: OnceLock::new(),
        };
        let len = spec.len();
        let mut theta = vec![0u32; len];
        match family {
            Family::GaloisRing => theta[0] = (p % cmod) as u32,
            Family::EqualCharacteristic => {
                if s >= 2 {
                    theta[degree] = 1;
                }
            }
        }
        spec.theta = Elem(theta);
        let x = spec.embed_field(&x_mod(&spec.modulus, cmod));
        spec.xi = spec.teichmuller(&x);

        // Images of x^i under the relative Frobenius (x^q on Teichmuller digits).
        let q = p.pow(n);
        let sigma_x: Vec<u32> = match family {
            Family::GaloisRing => {
                let digits = spec.teich_digits(&x);
                let mut acc = spec.zero();
                let mut pj = spec.one();
                for d in digits {
                    acc = spec.add(&acc, &spec.mul(&spec.pow(&d, q), &pj));
                    pj = spec.mul(&pj, &spec.theta);
                }
                acc.0
            }
            Family::EqualCharacteristic => poly_powmod(&x_mod(&spec.modulus, p), q, &spec.modulus, p),
        };
        let mut frob = Vec::with_capacity(degree);
        let mut cur = vec![0u32; degree];
        cur[0] = 1;
        for _ in 0..degree {
            frob.push(cur.clone());
            cur = poly_mulmod(&cur, &sigma_x, &spec.modulus, cmod);
        }
        spec.frob = frob;
        Ok(Arc::new(spec))
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor {
            p: self.p,
            n: self.n,
            s: self.s,
            m: self.m,
            family: self.family,
            modulus: self.modulus.iter().map(|&c| c as u64).collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn s(&self) -> u32 {
        self.s
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn family(&self) -> Family {
        self.family
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// Residue field size of the base ring.
    pub fn q(&self) -> u64 {
        self.p.pow(self.n)
    }
    /// Residue field size of the extension, `q^m`.
    pub fn q_ext(&self) -> u64 {
        self.big_q
    }
    /// Number of coefficients per element.
    pub fn len(&self) -> usize {
        match self.family {
            Family::GaloisRing => self.degree,
            Family::EqualCharacteristic => self.degree * self.s as usize,
        }
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    /// `|S| = q^{m s}`.
    pub fn size(&self) -> u64 {
        self.big_q.pow(self.s)
    }
    /// `|S^x| = Q^{s-1} (Q - 1)`.
    pub fn unit_count(&self) -> u64 {
        self.big_q.pow(self.s - 1) * (self.big_q - 1)
    }
    /// Modulus of a single stored coefficient.
    pub fn coeff_modulus(&self) -> u64 {
        self.cmod
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![0; self.len()])
    }
    pub fn one(&self) -> Elem {
        self.constant(1)
    }
    /// The integer `k` viewed in the ring.
    pub fn constant(&self, k: i64) -> Elem {
        let mut v = vec![0u32; self.len()];
        v[0] = k.rem_euclid(self.cmod as i64) as u32;
        Elem(v)
    }
    pub fn theta(&self) -> &Elem {
        &self.theta
    }
    /// Generator of the Teichmuller group of `S`, of order `q^m - 1`.
    pub fn xi(&self) -> &Elem {
        &self.xi
    }

    /// Element from raw coefficients (reduced into canonical range).
    pub fn elem(&self, coeffs: &[i64]) -> Result<Elem> {
        if coeffs.len() > self.len() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coefficients, ring uses {}",
                coeffs.len(),
                self.len()
            )));
        }
        let mut v = vec![0u32; self.len()];
        for (slot, &c) in v.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.cmod as i64) as u32;
        }
        Ok(Elem(v))
    }

    /// Validates an element given as stored coefficients.
    pub fn elem_from_coeffs(&self, coeffs: Vec<u32>) -> Result<Elem> {
        if coeffs.len() != self.len() || coeffs.iter().any(|&c| c as u64 >= self.cmod) {
            return Err(Error::DimensionMismatch("not a canonical element".into()));
        }
        Ok(Elem(coeffs))
    }

    /// Places a residue-field-sized coefficient vector in the `theta^0` position.
    fn embed_field(&self, v: &[u32]) -> Elem {
        let mut out = vec![0u32; self.len()];
        out[..v.len()].copy_from_slice(v);
        Elem(out)
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let cm = self.cmod;
        Elem(a.0.iter().zip(&b.0).map(|(&x, &y)| ((x as u64 + y as u64) % cm) as u32).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let cm = self.cmod;
        Elem(a.0.iter().zip(&b.0).map(|(&x, &y)| ((x as u64 + cm - y as u64) % cm) as u32).collect())
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let cm = self.cmod;
        Elem(a.0.iter().map(|&x| ((cm - x as u64) % cm) as u32).collect())
    }

    /// Multiplies by an integer.
    pub fn mul_int(&self, a: &Elem, k: i64) -> Elem {
        let cm = self.cmod;
        let k = k.rem_euclid(cm as i64) as u64;
        Elem(a.0.iter().map(|&x| (x as u64 * k % cm) as u32).collect())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match self.family {
            Family::GaloisRing => {
                if self.degree == 1 {
                    return Elem(vec![(a.0[0] as u64 * b.0[0] as u64 % self.cmod) as u32]);
                }
                Elem(poly_mulmod(&a.0, &b.0, &self.modulus, self.cmod))
            }
            Family::EqualCharacteristic => {
                let n = self.degree;
                let s = self.s as usize;
                let mut out = vec![0u32; self.len()];
                for i in 0..s {
                    let ai = &a.0[i * n..(i + 1) * n];
                    if ai.iter().all(|&c| c == 0) {
                        continue;
                    }
                    for j in 0..s - i {
                        let bj = &b.0[j * n..(j + 1) * n];
                        if bj.iter().all(|&c| c == 0) {
                            continue;
                        }
                        let prod = poly_mulmod(ai, bj, &self.modulus, self.p);
                        let k = i + j;
                        for (t, c) in prod.into_iter().enumerate() {
                            let slot = &mut out[k * n + t];
                            *slot = ((*slot as u64 + c as u64) % self.p) as u32;
                        }
                    }
                }
                Elem(out)
            }
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    fn is_constant(&self, a: &Elem) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    /// `theta`-adic valuation; `s` for zero.
    pub fn valuation(&self, a: &Elem) -> u32 {
        match self.family {
            Family::GaloisRing => {
                a.0.iter()
                    .filter(|&&c| c != 0)
                    .map(|&c| {
                        let mut v = 0;
                        let mut c = c as u64;
                        while c.is_multiple_of(self.p) {
                            c /= self.p;
                            v += 1;
                        }
                        v
                    })
                    .min()
                    .unwrap_or(self.s)
            }
            Family::EqualCharacteristic => {
                let n = self.degree;
                (0..self.s)
                    .find(|&j| a.0[j as usize * n..(j as usize + 1) * n].iter().any(|&c| c != 0))
                    .unwrap_or(self.s)
            }
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        self.valuation(a) == 0
    }

    pub fn inverse(&self, a: &Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotUnit);
        }
        if self.family == Family::GaloisRing && self.is_constant(a) {
            let inv = mod_inverse(a.0[0] as u64, self.cmod).ok_or(Error::NotUnit)?;
            return Ok(self.constant(inv as i64));
        }
        Ok(self.pow(a, self.unit_count() - 1))
    }

    /// Teichmuller lift `a^{Q^{s-1}}`: the unique `b` with `b^Q = b` and `b = a mod theta`.
    pub fn teichmuller(&self, a: &Elem) -> Elem {
        if self.s == 1 {
            return a.clone();
        }
        match self.family {
            Family::GaloisRing if self.is_constant(a) => {
                let c = crate::arith::pow_mod(a.0[0] as u64, self.p.pow(self.s - 1), self.cmod);
                self.constant(c as i64)
            }
            Family::GaloisRing => self.pow(a, self.big_q.pow(self.s - 1)),
            Family::EqualCharacteristic => {
                let mut v = a.0.clone();
                v[self.degree..].iter_mut().for_each(|c| *c = 0);
                Elem(v)
            }
        }
    }

    /// Teichmuller digits `(g_0, ..., g_{s-1})` with `a = sum g_j theta^j`.
    pub fn teich_digits(&self, a: &Elem) -> Vec<Elem> {
        match self.family {
            Family::GaloisRing => {
                let mut digits = Vec::with_capacity(self.s as usize);
                let mut cur = a.clone();
                for j in 0..self.s {
                    let g = self.teichmuller(&cur);
                    digits.push(g.clone());
                    if j + 1 < self.s {
                        let diff = self.sub(&cur, &g);
                        cur = Elem(diff.0.iter().map(|&c| c / self.p as u32).collect());
                    }
                }
                digits
            }
            Family::EqualCharacteristic => {
                let n = self.degree;
                (0..self.s as usize).map(|j| self.embed_field(&a.0[j * n..(j + 1) * n])).collect()
            }
        }
    }

    pub fn from_teich_digits(&self, digits: &[Elem]) -> Elem {
        let mut acc = self.zero();
        let mut tj = self.one();
        for d in digits {
            acc = self.add(&acc, &self.mul(d, &tj));
            tj = self.mul(&tj, &self.theta);
        }
        acc
    }

    /// `theta^t`.
    pub fn theta_pow(&self, t: u32) -> Elem {
        self.pow(&self.theta, t as u64)
    }

    /// Canonical quotient `a / theta^t`, or `None` if `v(a) < t`. The quotient
    /// lies in the base ring whenever `a` does.
    pub fn div_theta(&self, a: &Elem, t: u32) -> Option<Elem> {
        if t == 0 {
            return Some(a.clone());
        }
        if self.valuation(a) < t {
            return None;
        }
        match self.family {
            Family::EqualCharacteristic => {
                let n = self.degree;
                let shift = t as usize * n;
                let mut v = vec![0u32; self.len()];
                v[..self.len() - shift].copy_from_slice(&a.0[shift..]);
                Some(Elem(v))
            }
            Family::GaloisRing if self.is_constant(a) => Some(self.constant((a.0[0] as u64 / self.p.pow(t)) as i64)),
            Family::GaloisRing => {
                let digits = self.teich_digits(a);
                Some(self.from_teich_digits(&digits[t as usize..]))
            }
        }
    }

    /// Relative Frobenius `sigma_R^k` (acts on Teichmuller digits as `g -> g^{q^k}`).
    pub fn frobenius(&self, a: &Elem, k: u32) -> Elem {
        let mut cur = a.clone();
        for _ in 0..k % self.m {
            cur = self.frobenius_once(&cur);
        }
        cur
    }

    fn frobenius_once(&self, a: &Elem) -> Elem {
        let n = self.degree;
        let cm = self.cmod;
        let apply = |block: &[u32], out: &mut [u32]| {
            for (i, &c) in block.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (slot, &f) in out.iter_mut().zip(&self.frob[i]) {
                    *slot = ((*slot as u64 + c as u64 * f as u64) % cm) as u32;
                }
            }
        };
        let mut out = vec![0u32; self.len()];
        for j in 0..self.len() / n {
            apply(&a.0[j * n..(j + 1) * n], &mut out[j * n..(j + 1) * n]);
        }
        Elem(out)
    }

    /// `Tr(a) = sum_{i<m} sigma^i(a)`.
    pub fn trace(&self, a: &Elem) -> Elem {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.m {
            cur = self.frobenius_once(&cur);
            acc = self.add(&acc, &cur);
        }
        acc
    }

    /// Whether `a` lies in the base ring `R`.
    pub fn in_base(&self, a: &Elem) -> bool {
        self.m == 1 || self.frobenius_once(a) == *a
    }

    /// The residue field `F_{q^m}` as a ring with `s = 1`.
    pub fn residue_ring(&self) -> Result<Arc<RingSpec>> {
        let modulus = self.modulus.iter().map(|&c| (c as u64 % self.p) as u32).collect();
        Self::build(self.p, self.n, 1, self.m, self.family, modulus)
    }

    /// Reduction modulo `theta`, as an element of [`RingSpec::residue_ring`].
    pub fn residue(&self, a: &Elem) -> Elem {
        Elem(a.0[..self.degree].iter().map(|&c| (c as u64 % self.p) as u32).collect())
    }

    /// `eta = xi^{(Q-1)/ell}`, a root of unity of order `ell`.
    pub fn root_of_unity(&self, ell: usize) -> Result<Elem> {
        let order = self.big_q - 1;
        if ell == 0 || !order.is_multiple_of(ell as u64) {
            return Err(Error::NoRootOfUnity { ell, order });
        }
        Ok(self.pow(&self.xi, order / ell as u64))
    }

    /// Multiplicative order of a unit (brute force over divisors of `|S^x|`).
    pub fn order(&self, a: &Elem) -> Result<u64> {
        if !self.is_unit(a) {
            return Err(Error::NotUnit);
        }
        let mut ord = self.unit_count();
        for r in prime_factors(ord) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Teichmuller set of the base ring: `0` and the `(q-1)`-th roots of unity.
    pub fn base_teichmuller(&self) -> &[Elem] {
        self.base_teich.get_or_init(|| {
            let q = self.q();
            let g = self.pow(&self.xi, (self.big_q - 1) / (q - 1));
            let mut out = vec![self.zero()];
            let mut cur = self.one();
            for _ in 0..q - 1 {
                out.push(cur.clone());
                cur = self.mul(&cur, &g);
            }
            out
        })
    }

    /// All `sum_{j<k} g_j theta^j` with `g_j` in the base Teichmuller set: a
    /// transversal of `R / theta^k R` (`q^k` elements).
    pub fn base_residues(&self, k: u32) -> Vec<Elem> {
        let teich = self.base_teichmuller();
        let mut out = vec![self.zero()];
        let mut tj = self.one();
        for _ in 0..k {
            let mut next = Vec::with_capacity(out.len() * teich.len());
            for g in teich {
                let term = self.mul(g, &tj);
                for e in &out {
                    next.push(self.add(e, &term));
                }
            }
            out = next;
            tj = self.mul(&tj, &self.theta);
        }
        out
    }

    /// Dense index of an element in `0..size()`.
    pub fn index(&self, a: &Elem) -> u64 {
        a.0.iter().rev().fold(0u64, |acc, &c| acc * self.cmod + c as u64)
    }

    pub fn from_index(&self, mut idx: u64) -> Elem {
        let mut v = vec![0u32; self.len()];
        for slot in v.iter_mut() {
            *slot = (idx % self.cmod) as u32;
            idx /= self.cmod;
        }
        Elem(v)
    }

    /// Every element of `S`, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }

    /// Human-readable polynomial form.
    pub fn format(&self, a: &Elem) -> String {
        let poly = |coeffs: &[u32]| -> String {
            let terms: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| match (i, c) {
                    (0, c) => c.to_string(),
                    (1, 1) => "x".into(),
                    (1, c) => format!("{c}x"),
                    (i, 1) => format!("x^{i}"),
                    (i, c) => format!("{c}x^{i}"),
                })
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join("+")
            }
        };
        match self.family {
            Family::GaloisRing => poly(&a.0),
            Family::EqualCharacteristic => {
                let n = self.degree;
                let parts: Vec<String> = (0..self.s as usize)
                    .filter(|&j| a.0[j * n..(j + 1) * n].iter().any(|&c| c != 0))
                    .map(|j| {
                        let inner = poly(&a.0[j * n..(j + 1) * n]);
                        match j {
                            0 => inner,
                            1 => format!("({inner})u"),
                            _ => format!("({inner})u^{j}"),
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join("+")
                }
            }
        }
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
