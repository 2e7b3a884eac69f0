//! Exact coefficient fields: ℚ, prime fields F_p and finite extensions
//! F_{p^k}, with extension-on-demand for root adjunction.
//!
//! A [`FieldCtx`] is an immutable handle describing the field; elements are
//! plain data tagged with a fingerprint of their context so that mixing
//! elements of different fields fails loudly.  The algebraic closure is
//! never materialized: operations that need new roots grow the field tower
//! explicitly and return a [`FieldEmbedding`] into the larger field.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

use crate::error::{Error, Result};

/// What kind of field a context describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    /// The rational numbers.
    Rationals,
    /// The prime field F_p.
    Prime(u64),
    /// F_{p^k} presented as F_p[g]/(m(g)) with m monic irreducible of degree k.
    Extension {
        p: u64,
        degree: u32,
        /// Coefficients of the monic minimal polynomial, ascending, length degree+1.
        min_poly: Vec<u64>,
        generator: String,
    },
}

struct CtxInner {
    kind: FieldKind,
    tag: u64,
}

/// A computable coefficient field.  Cheap to clone, immutable, thread-safe.
#[derive(Clone)]
pub struct FieldCtx(Arc<CtxInner>);

/// Canonical representative of a field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    /// Residue in 0..p.
    Mod(u64),
    /// Coefficients of a polynomial of degree < k in the generator,
    /// ascending, trailing zeros trimmed.
    Poly(Vec<u64>),
}

/// An element of a [`FieldCtx`].  Equality is representational equality of
/// the canonical representative within the owning context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    tag: u64,
    repr: Repr,
}

/// An embedding of a smaller field into a larger one, produced by
/// [`FieldCtx::adjoin_nth_root`].  Maps elements by evaluating their
/// representative at the image of the source generator.
pub struct FieldEmbedding {
    pub source: FieldCtx,
    pub target: FieldCtx,
    gen_image: Option<FieldElem>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Dense polynomial arithmetic over F_p, used for extension fields and for
// the brute-force irreducibility checks.  Coefficient vectors are ascending
// with no trailing zeros.

pub(crate) mod polyfp {
    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn deg(v: &[u64]) -> Option<usize> {
        if v.is_empty() {
            None
        } else {
            Some(v.len() - 1)
        }
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + y) % p;
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        // extended Euclid on (a, p); p prime, a != 0 mod p
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (p as i128, (a % p) as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1, "inverse of zero or non-prime modulus");
        (((t % p as i128) + p as i128) % p as i128) as u64
    }

    /// Remainder of a mod b (b nonzero).
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = deg(b).expect("division by zero polynomial");
        let lead_inv = inv_mod(b[db], p);
        while let Some(dr) = deg(&r) {
            if dr < db {
                break;
            }
            let c = (r[dr] * lead_inv) % p;
            let shift = dr - db;
            for (j, &bc) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - (c * bc) % p) % p;
            }
            r = trim(r);
        }
        r
    }

    /// Extended Euclid: returns s with s*a ≡ gcd(a, m) mod m.
    pub fn ext_gcd_coeff(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut old_r, mut r) = (trim(a.to_vec()), trim(m.to_vec()));
        let (mut old_s, mut s) = (vec![1u64], vec![]);
        while !r.is_empty() {
            // quotient of old_r by r
            let mut q = vec![0u64; old_r.len().saturating_sub(r.len()) + 1];
            let mut rem = old_r.clone();
            let db = deg(&r).unwrap();
            let lead_inv = inv_mod(r[db], p);
            while let Some(dr) = deg(&rem) {
                if dr < db {
                    break;
                }
                let c = (rem[dr] * lead_inv) % p;
                q[dr - db] = c;
                for (j, &bc) in r.iter().enumerate() {
                    rem[dr - db + j] = (rem[dr - db + j] + p - (c * bc) % p) % p;
                }
                rem = trim(rem);
            }
            let new_s = sub(&old_s, &mul(&trim(q), &s, p), p);
            old_r = std::mem::replace(&mut r, rem);
            old_s = std::mem::replace(&mut s, new_s);
        }
        (old_r, old_s)
    }

    /// Brute-force irreducibility over F_p by trial division with all monic
    /// polynomials of degree 1..=deg/2.  Desk scale only.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = match deg(f) {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        for dd in 1..=d / 2 {
            // enumerate monic polynomials of degree dd
            let count = p.pow(dd as u32);
            for code in 0..count {
                let mut g = Vec::with_capacity(dd + 1);
                let mut c = code;
                for _ in 0..dd {
                    g.push(c % p);
                    c /= p;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest (in coefficient-counting order) monic irreducible of the
    /// given degree over F_p.
    pub fn find_irreducible(p: u64, degree: usize) -> Vec<u64> {
        assert!(degree >= 1);
        let count = p.pow(degree as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(degree + 1);
            let mut c = code;
            for _ in 0..degree {
                g.push(c % p);
                c /= p;
            }
            g.push(1);
            if is_irreducible(&g, p) {
                return g;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }
}

fn fingerprint(kind: &FieldKind) -> u64 {
    let mut h = DefaultHasher::new();
    match kind {
        FieldKind::Rationals => 0u8.hash(&mut h),
        FieldKind::Prime(p) => {
            1u8.hash(&mut h);
            p.hash(&mut h);
        }
        FieldKind::Extension {
            p,
            degree,
            min_poly,
            generator,
        } => {
            2u8.hash(&mut h);
            p.hash(&mut h);
            degree.hash(&mut h);
            min_poly.hash(&mut h);
            generator.hash(&mut h);
        }
    }
    h.finish()
}

impl FieldCtx {
    /// The field ℚ of rational numbers.
    pub fn rationals() -> Self {
        Self::from_kind(FieldKind::Rationals)
    }

    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::from_kind(FieldKind::Prime(p)))
    }

    /// F_p[g]/(m) for a monic irreducible m given by signed integer
    /// coefficients (ascending).  Irreducibility is verified by brute force.
    pub fn extension(p: u64, generator: &str, min_poly: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let coeffs: Vec<u64> = min_poly
            .iter()
            .map(|&c| (c.rem_euclid(p as i64)) as u64)
            .collect();
        let coeffs = polyfp::trim(coeffs);
        let degree = match polyfp::deg(&coeffs) {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::InvalidInput(
                    "minimal polynomial must have degree at least 1".into(),
                ))
            }
        };
        if coeffs[degree] != 1 {
            return Err(Error::InvalidInput("minimal polynomial must be monic".into()));
        }
        if !polyfp::is_irreducible(&coeffs, p) {
            return Err(Error::ReduciblePolynomial(poly_to_string(&coeffs, generator)));
        }
        Ok(Self::from_kind(FieldKind::Extension {
            p,
            degree: degree as u32,
            min_poly: coeffs,
            generator: generator.to_string(),
        }))
    }

    fn from_kind(kind: FieldKind) -> Self {
        let tag = fingerprint(&kind);
        FieldCtx(Arc::new(CtxInner { kind, tag }))
    }

    /// Parse the shared field-spec grammar:
    /// `char=0` | `char=<p>` | `char=<p>; ext=<name>:<monic polynomial in name>`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(';').map(str::trim).collect();
        let first = parts
            .first()
            .copied()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| Error::InvalidInput(format!("empty field spec `{spec}`")))?;
        let p_str = first
            .strip_prefix("char=")
            .ok_or_else(|| Error::InvalidInput(format!("field spec must start with char=, got `{first}`")))?;
        let p: u64 = p_str
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad characteristic `{p_str}`")))?;
        match parts.get(1) {
            None | Some(&"") => {
                if p == 0 {
                    Ok(Self::rationals())
                } else {
                    Self::prime(p)
                }
            }
            Some(ext) => {
                let body = ext
                    .strip_prefix("ext=")
                    .ok_or_else(|| Error::InvalidInput(format!("expected ext=..., got `{ext}`")))?;
                let (name, poly_text) = body
                    .split_once(':')
                    .ok_or_else(|| Error::InvalidInput("expected ext=<name>:<polynomial>".into()))?;
                let name = name.trim();
                if p == 0 {
                    return Err(Error::InvalidInput(
                        "extensions are only supported over prime fields".into(),
                    ));
                }
                let coeffs = parse_int_poly(poly_text, name)?;
                Self::extension(p, name, &coeffs)
            }
        }
    }

    /// Canonical spec string, re-parseable by [`FieldCtx::parse_spec`].
    pub fn spec_string(&self) -> String {
        match self.kind() {
            FieldKind::Rationals => "char=0".into(),
            FieldKind::Prime(p) => format!("char={p}"),
            FieldKind::Extension {
                p,
                min_poly,
                generator,
                ..
            } => format!("char={p}; ext={generator}:{}", poly_to_string(min_poly, generator)),
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    pub(crate) fn tag(&self) -> u64 {
        self.0.tag
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { p, .. } => *p,
        }
    }

    /// Field order p^k for finite fields, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self.kind() {
            FieldKind::Rationals => None,
            FieldKind::Prime(p) => Some(*p),
            FieldKind::Extension { p, degree, .. } => Some(p.pow(*degree)),
        }
    }

    /// Extension degree over the prime field (1 for F_p and ℚ).
    pub fn degree(&self) -> u32 {
        match self.kind() {
            FieldKind::Extension { degree, .. } => *degree,
            _ => 1,
        }
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.0.tag == other.0.tag
    }

    fn check(&self, a: &FieldElem) {
        assert_eq!(a.tag, self.0.tag, "element used with a foreign field context");
    }

    // -- constructors ------------------------------------------------------

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        let repr = match self.kind() {
            FieldKind::Rationals => Repr::Rat(BigRational::from(BigInt::from(n))),
            FieldKind::Prime(p) | FieldKind::Extension { p, .. } => {
                let r = n.rem_euclid(*p as i64) as u64;
                match self.kind() {
                    FieldKind::Prime(_) => Repr::Mod(r),
                    _ => Repr::Poly(polyfp::trim(vec![r])),
                }
            }
        };
        FieldElem { tag: self.0.tag, repr }
    }

    pub fn from_rational(&self, q: BigRational) -> Result<FieldElem> {
        match self.kind() {
            FieldKind::Rationals => Ok(FieldElem {
                tag: self.0.tag,
                repr: Repr::Rat(q),
            }),
            _ => {
                // interpret numer/denom mod p
                let p = self.characteristic();
                let num = big_mod(q.numer(), p);
                let den = big_mod(q.denom(), p);
                if den == 0 {
                    return Err(Error::InvalidInput(format!(
                        "denominator of {q} vanishes mod {p}"
                    )));
                }
                let v = (num * polyfp::inv_mod(den, p)) % p;
                Ok(self.from_i64(v as i64))
            }
        }
    }

    /// The extension generator, if any.
    pub fn generator(&self) -> Option<FieldElem> {
        match self.kind() {
            FieldKind::Extension { .. } => Some(FieldElem {
                tag: self.0.tag,
                repr: Repr::Poly(vec![0, 1]),
            }),
            _ => None,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match self.kind() {
            FieldKind::Extension { generator, .. } => Some(generator),
            _ => None,
        }
    }

    /// Element from generator-polynomial coefficients (ascending, signed).
    pub fn from_poly_coeffs(&self, coeffs: &[i64]) -> Result<FieldElem> {
        match self.kind() {
            FieldKind::Extension { p, degree, min_poly, .. } => {
                let mut v: Vec<u64> = coeffs
                    .iter()
                    .map(|&c| c.rem_euclid(*p as i64) as u64)
                    .collect();
                v = polyfp::trim(v);
                if polyfp::deg(&v).is_some_and(|d| d >= *degree as usize) {
                    v = polyfp::rem(&v, min_poly, *p);
                }
                Ok(FieldElem {
                    tag: self.0.tag,
                    repr: Repr::Poly(v),
                })
            }
            _ => {
                if coeffs.len() > 1 {
                    return Err(Error::InvalidInput(
                        "generator coefficients in a field without a generator".into(),
                    ));
                }
                Ok(self.from_i64(coeffs.first().copied().unwrap_or(0)))
            }
        }
    }

    // -- arithmetic --------------------------------------------------------

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        self.check(a);
        match &a.repr {
            Repr::Rat(q) => q.is_zero(),
            Repr::Mod(v) => *v == 0,
            Repr::Poly(v) => v.is_empty(),
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let repr = match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x + y),
            (Repr::Mod(x), Repr::Mod(y)) => Repr::Mod((x + y) % self.characteristic()),
            (Repr::Poly(x), Repr::Poly(y)) => Repr::Poly(polyfp::add(x, y, self.characteristic())),
            _ => unreachable!("tag-checked"),
        };
        FieldElem { tag: self.0.tag, repr }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        self.check(a);
        let repr = match &a.repr {
            Repr::Rat(q) => Repr::Rat(-q),
            Repr::Mod(v) => {
                let p = self.characteristic();
                Repr::Mod((p - v) % p)
            }
            Repr::Poly(v) => {
                let p = self.characteristic();
                Repr::Poly(polyfp::trim(v.iter().map(|&c| (p - c) % p).collect()))
            }
        };
        FieldElem { tag: self.0.tag, repr }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let repr = match (&a.repr, &b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => Repr::Rat(x * y),
            (Repr::Mod(x), Repr::Mod(y)) => Repr::Mod((x * y) % self.characteristic()),
            (Repr::Poly(x), Repr::Poly(y)) => {
                let p = self.characteristic();
                let prod = polyfp::mul(x, y, p);
                let min_poly = match self.kind() {
                    FieldKind::Extension { min_poly, .. } => min_poly,
                    _ => unreachable!(),
                };
                Repr::Poly(polyfp::rem(&prod, min_poly, p))
            }
            _ => unreachable!("tag-checked"),
        };
        FieldElem { tag: self.0.tag, repr }
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a);
        if self.is_zero(a) {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        let repr = match &a.repr {
            Repr::Rat(q) => Repr::Rat(q.recip()),
            Repr::Mod(v) => Repr::Mod(polyfp::inv_mod(*v, self.characteristic())),
            Repr::Poly(v) => {
                let p = self.characteristic();
                let min_poly = match self.kind() {
                    FieldKind::Extension { min_poly, .. } => min_poly,
                    _ => unreachable!(),
                };
                let (g, s) = polyfp::ext_gcd_coeff(v, min_poly, p);
                debug_assert_eq!(polyfp::deg(&g), Some(0), "minimal polynomial not irreducible?");
                let scale = polyfp::inv_mod(g[0], p);
                let mut s: Vec<u64> = s.iter().map(|&c| (c * scale) % p).collect();
                s = polyfp::rem(&polyfp::trim(s), min_poly, p);
                Repr::Poly(s)
            }
        };
        Ok(FieldElem { tag: self.0.tag, repr })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, mut n: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// Frobenius a ↦ a^p.  Errors in characteristic zero.
    pub fn frobenius(&self, a: &FieldElem) -> Result<FieldElem> {
        let p = self.characteristic();
        if p == 0 {
            return Err(Error::CharZero);
        }
        Ok(self.pow(a, p))
    }

    /// All elements of a finite field in canonical enumeration order
    /// (coefficient vectors counted base p, constants first).  `None` for ℚ.
    pub fn elements(&self) -> Option<Vec<FieldElem>> {
        let q = self.order()?;
        let p = self.characteristic();
        let k = self.degree() as usize;
        let mut out = Vec::with_capacity(q as usize);
        for code in 0..q {
            let mut c = code;
            let mut v = Vec::with_capacity(k);
            for _ in 0..k {
                v.push(c % p);
                c /= p;
            }
            let repr = match self.kind() {
                FieldKind::Prime(_) => Repr::Mod(v[0]),
                FieldKind::Extension { .. } => Repr::Poly(polyfp::trim(v)),
                FieldKind::Rationals => unreachable!(),
            };
            out.push(FieldElem { tag: self.0.tag, repr });
        }
        Some(out)
    }

    /// Multiplicative order of a nonzero element of a finite field.
    pub fn mult_order(&self, a: &FieldElem) -> Result<u64> {
        let q = self
            .order()
            .ok_or_else(|| Error::InvalidInput("multiplicative order needs a finite field".into()))?;
        if self.is_zero(a) {
            return Err(Error::InvalidInput("multiplicative order of zero".into()));
        }
        let mut d = 1;
        let mut acc = a.clone();
        while acc != self.one() {
            acc = self.mul(&acc, a);
            d += 1;
            debug_assert!(d <= q, "element order exceeds group order");
        }
        Ok(d)
    }

    /// Returns a field F' ⊇ F and r ∈ F' with r^n = a; for finite fields F'
    /// is the smallest extension of F containing such an r, for ℚ it is ℚ
    /// itself (erroring when no rational root exists).
    pub fn adjoin_nth_root(&self, a: &FieldElem, n: u64) -> Result<(FieldEmbedding, FieldElem)> {
        self.check(a);
        if n == 0 {
            return Err(Error::InvalidInput("0-th root".into()));
        }
        if self.is_zero(a) {
            return Err(Error::InvalidInput("root of zero".into()));
        }
        match self.kind() {
            FieldKind::Rationals => {
                let q = match &a.repr {
                    Repr::Rat(q) => q.clone(),
                    _ => unreachable!(),
                };
                let root = rational_nth_root(&q, n).ok_or_else(|| Error::NoRationalRoot {
                    elem: q.to_string(),
                    n,
                })?;
                let emb = FieldEmbedding {
                    source: self.clone(),
                    target: self.clone(),
                    gen_image: None,
                };
                Ok((
                    emb,
                    FieldElem {
                        tag: self.0.tag,
                        repr: Repr::Rat(root),
                    },
                ))
            }
            _ => self.adjoin_root_finite(a, n),
        }
    }

    fn adjoin_root_finite(&self, a: &FieldElem, n: u64) -> Result<(FieldEmbedding, FieldElem)> {
        let p = self.characteristic();
        let k = self.degree() as usize;
        // For a = 1 the request is for roots of unity (the case Puiseux
        // parameters need), so a primitive root of the separable part of n
        // is returned; otherwise any root x^n = a will do.  The p-part of n
        // is absorbed by Frobenius since finite fields are perfect.
        let mut n_sep = n;
        if p > 0 {
            while n_sep.is_multiple_of(p) {
                n_sep /= p;
            }
        }
        let want_primitive = *a == self.one() && n_sep > 1;
        const GUARD: u64 = 1 << 21;
        for m in 1..=12usize {
            match p.checked_pow((k * m) as u32) {
                Some(order) if order <= GUARD => {}
                _ => break,
            }
            if want_primitive {
                // primitive n_sep-th roots of unity exist iff n_sep | q^m - 1
                let order = p.pow((k * m) as u32);
                if !(order - 1).is_multiple_of(n_sep) {
                    continue;
                }
            }
            let target = if m == 1 {
                self.clone()
            } else {
                let min_poly = polyfp::find_irreducible(p, k * m);
                let gen_name = self.generator_name().unwrap_or("a").to_string();
                FieldCtx::from_kind(FieldKind::Extension {
                    p,
                    degree: (k * m) as u32,
                    min_poly,
                    generator: gen_name,
                })
            };
            let emb = self.embed_into(&target)?;
            let img = emb.map(a);
            // exhaustive search in enumeration order
            let elems = target.elements().expect("finite");
            for r in elems {
                if target.is_zero(&r) {
                    continue;
                }
                if target.pow(&r, n) == img {
                    if want_primitive && target.mult_order(&r)? != n_sep {
                        continue;
                    }
                    return Ok((emb, r));
                }
            }
        }
        // unreachable for genuine field data: roots exist in bounded
        // extensions; the guard above is a size limit
        Err(Error::SearchSpaceTooLarge(0, GUARD as u128))
    }

    /// Embedding of this finite field into a larger one whose degree is a
    /// multiple of ours (identity embedding when the fields coincide).
    pub fn embed_into(&self, target: &FieldCtx) -> Result<FieldEmbedding> {
        if self.same_field(target) {
            return Ok(FieldEmbedding {
                source: self.clone(),
                target: target.clone(),
                gen_image: None,
            });
        }
        if self.characteristic() != target.characteristic() {
            return Err(Error::FieldMismatch);
        }
        match self.kind() {
            FieldKind::Prime(_) => Ok(FieldEmbedding {
                source: self.clone(),
                target: target.clone(),
                gen_image: None,
            }),
            FieldKind::Extension { min_poly, .. } => {
                if !target.degree().is_multiple_of(self.degree()) {
                    return Err(Error::FieldMismatch);
                }
                // deterministic: first root of our minimal polynomial in the target
                let elems = target.elements().ok_or(Error::FieldMismatch)?;
                for e in elems {
                    if target.is_zero(&eval_poly_u64(target, min_poly, &e)) {
                        return Ok(FieldEmbedding {
                            source: self.clone(),
                            target: target.clone(),
                            gen_image: Some(e),
                        });
                    }
                }
                Err(Error::FieldMismatch)
            }
            FieldKind::Rationals => Err(Error::FieldMismatch),
        }
    }

    // -- display / parse ---------------------------------------------------

    /// Canonical string of an element; re-parseable by [`FieldCtx::parse_elem`].
    pub fn display(&self, a: &FieldElem) -> String {
        self.check(a);
        match &a.repr {
            Repr::Rat(q) => q.to_string(),
            Repr::Mod(v) => v.to_string(),
            Repr::Poly(v) => {
                if v.is_empty() {
                    "0".into()
                } else {
                    poly_to_string(v, self.generator_name().unwrap_or("a"))
                }
            }
        }
    }

    /// True when the canonical display needs parentheses inside a product.
    pub fn needs_parens(&self, a: &FieldElem) -> bool {
        match &a.repr {
            Repr::Rat(_) | Repr::Mod(_) => false,
            Repr::Poly(v) => v.iter().filter(|&&c| c != 0).count() > 1,
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<FieldElem> {
        let text = text.trim();
        match self.kind() {
            FieldKind::Rationals => {
                let q: BigRational = if let Some((n, d)) = text.split_once('/') {
                    let n: BigInt = n.trim().parse().map_err(|_| bad_elem(text))?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad_elem(text))?;
                    if d.is_zero() {
                        return Err(bad_elem(text));
                    }
                    BigRational::new(n, d)
                } else {
                    BigRational::from(text.parse::<BigInt>().map_err(|_| bad_elem(text))?)
                };
                Ok(FieldElem {
                    tag: self.0.tag,
                    repr: Repr::Rat(q),
                })
            }
            FieldKind::Prime(_) => {
                let v: i64 = text.parse().map_err(|_| bad_elem(text))?;
                Ok(self.from_i64(v))
            }
            FieldKind::Extension { generator, .. } => {
                let coeffs = parse_int_poly(text, generator)?;
                self.from_poly_coeffs(&coeffs)
            }
        }
    }
}

fn bad_elem(text: &str) -> Error {
    Error::InvalidInput(format!("cannot parse field element `{text}`"))
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    u64::try_from(m).expect("reduced residue fits")
}

fn rational_nth_root(q: &BigRational, n: u64) -> Option<BigRational> {
    let (num, den) = (q.numer(), q.denom());
    let negative = num.is_negative();
    if negative && n.is_multiple_of(2) {
        return None;
    }
    let abs_num = num.abs();
    let rn = abs_num.nth_root(n as u32);
    let rd = den.nth_root(n as u32);
    if num::pow::pow(rn.clone(), n as usize) != abs_num
        || num::pow::pow(rd.clone(), n as usize) != *den
    {
        return None;
    }
    let rn = if negative { -rn } else { rn };
    Some(BigRational::new(rn, rd))
}

fn eval_poly_u64(field: &FieldCtx, coeffs: &[u64], at: &FieldElem) -> FieldElem {
    let mut acc = field.zero();
    for &c in coeffs.iter().rev() {
        acc = field.mul(&acc, at);
        acc = field.add(&acc, &field.from_i64(c as i64));
    }
    acc
}

impl FieldEmbedding {
    /// Map an element of the source field into the target.
    pub fn map(&self, a: &FieldElem) -> FieldElem {
        assert_eq!(a.tag, self.source.tag(), "embedding applied to foreign element");
        if self.source.same_field(&self.target) {
            return a.clone();
        }
        match (&a.repr, &self.gen_image) {
            (Repr::Mod(v), _) => self.target.from_i64(*v as i64),
            (Repr::Poly(v), Some(g)) => {
                let mut acc = self.target.zero();
                for &c in v.iter().rev() {
                    acc = self.target.mul(&acc, g);
                    acc = self.target.add(&acc, &self.target.from_i64(c as i64));
                }
                acc
            }
            (Repr::Poly(_), None) => unreachable!("extension embedding lacks generator image"),
            (Repr::Rat(_), _) => a.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source.same_field(&self.target)
    }
}

// ---------------------------------------------------------------------------
// tiny univariate integer-coefficient polynomial parser, shared by the field
// spec grammar and extension-element parsing: e.g. "a^2+a+1", "2a+3", "-a".

pub(crate) fn parse_int_poly(text: &str, var: &str) -> Result<Vec<i64>> {
    let mut coeffs: Vec<i64> = vec![];
    let mut rest = text.trim();
    let mut sign = 1i64;
    if rest.is_empty() {
        return Err(Error::InvalidInput("empty polynomial".into()));
    }
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
            continue;
        }
        // term: [int] ['*'] [var ['^' nat]]
        let mut coef: Option<i64> = None;
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if !digits.is_empty() {
            coef = Some(digits.parse().map_err(|_| bad_elem(text))?);
            rest = rest[digits.len()..].trim_start();
            if let Some(r) = rest.strip_prefix('*') {
                rest = r.trim_start();
            }
        }
        let mut exp = 0u32;
        if rest.starts_with(var)
            && !rest[var.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_alphanumeric() || c == '_')
        {
            rest = rest[var.len()..].trim_start();
            exp = 1;
            if let Some(r) = rest.strip_prefix('^') {
                let digits: String = r.trim_start().chars().take_while(|c| c.is_ascii_digit()).collect();
                if digits.is_empty() {
                    return Err(bad_elem(text));
                }
                exp = digits.parse().map_err(|_| bad_elem(text))?;
                rest = r.trim_start()[digits.len()..].trim_start();
            }
        } else if coef.is_none() {
            return Err(bad_elem(text));
        }
        let c = sign * coef.unwrap_or(1);
        if coeffs.len() <= exp as usize {
            coeffs.resize(exp as usize + 1, 0);
        }
        coeffs[exp as usize] += c;
        sign = 1;
        rest = rest.trim_start();
    }
    Ok(coeffs)
}

fn poly_to_string(coeffs: &[u64], var: &str) -> String {
    let mut parts: Vec<String> = vec![];
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, _) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{c}{var}"),
            (_, 1) => format!("{var}^{i}"),
            (_, _) => format!("{c}{var}^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec_string())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(q) => write!(f, "{q}"),
            Repr::Mod(v) => write!(f, "{v}"),
            Repr::Poly(v) => write!(f, "{v:?}"),
        }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.tag == other.0.tag
    }
}
impl Eq for FieldCtx {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_rationals_and_primes() {
        let q = FieldCtx::parse_spec("char=0").unwrap();
        assert_eq!(q.characteristic(), 0);
        let f3 = FieldCtx::parse_spec("char=3").unwrap();
        let two = f3.from_i64(2);
        assert_eq!(f3.add(&two, &two), f3.one());
        assert!(matches!(FieldCtx::parse_spec("char=4"), Err(Error::NotPrime(4))));
    }

    #[test]
    fn f4_multiplication_table() {
        // a^2 + a + 1 = 0 over F_2, so a * (a+1) = a^2 + a = 1.
        let f4 = FieldCtx::parse_spec("char=2; ext=a:a^2+a+1").unwrap();
        let a = f4.generator().unwrap();
        let a1 = f4.add(&a, &f4.one());
        assert_eq!(f4.mul(&a, &a1), f4.one());
        // exhaustive: every nonzero element has an inverse, and the axioms hold
        let elems = f4.elements().unwrap();
        assert_eq!(elems.len(), 4);
        for x in &elems {
            for y in &elems {
                assert_eq!(f4.mul(x, y), f4.mul(y, x));
                for z in &elems {
                    let lhs = f4.mul(x, &f4.add(y, z));
                    let rhs = f4.add(&f4.mul(x, y), &f4.mul(x, z));
                    assert_eq!(lhs, rhs);
                }
            }
            if !f4.is_zero(x) {
                assert_eq!(f4.mul(x, &f4.inv(x).unwrap()), f4.one());
            }
        }
    }

    #[test]
    fn reducible_polynomial_rejected() {
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(matches!(
            FieldCtx::parse_spec("char=2; ext=a:a^2+1"),
            Err(Error::ReduciblePolynomial(_))
        ));
    }

    #[test]
    fn frobenius_values() {
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(f3.frobenius(&f3.from_i64(2)).unwrap(), f3.from_i64(2));
        let f4 = FieldCtx::extension(2, "a", &[1, 1, 1]).unwrap();
        let a = f4.generator().unwrap();
        // a^2 = a + 1 from the minimal polynomial
        assert_eq!(f4.frobenius(&a).unwrap(), f4.add(&a, &f4.one()));
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(f5.frobenius(&f5.zero()).unwrap(), f5.zero());
        assert!(matches!(
            FieldCtx::rationals().frobenius(&FieldCtx::rationals().one()),
            Err(Error::CharZero)
        ));
    }

    #[test]
    fn adjoin_square_root_in_f5() {
        let f5 = FieldCtx::prime(5).unwrap();
        let four = f5.from_i64(4);
        let (emb, r) = f5.adjoin_nth_root(&four, 2).unwrap();
        assert!(emb.is_identity());
        assert_eq!(f5.mul(&r, &r), four);
        assert_eq!(r, f5.from_i64(2), "first root in enumeration order");
    }

    #[test]
    fn adjoin_cube_root_of_eight_over_q() {
        let q = FieldCtx::rationals();
        let eight = q.from_i64(8);
        let (_, r) = q.adjoin_nth_root(&eight, 3).unwrap();
        assert_eq!(r, q.from_i64(2));
        assert!(matches!(
            q.adjoin_nth_root(&q.from_i64(2), 2),
            Err(Error::NoRationalRoot { .. })
        ));
    }

    #[test]
    fn cube_roots_of_unity_need_f4() {
        // the order of 2 mod 3 is 2, so F_{2^2} is the smallest field with
        // primitive cube roots of unity
        let f2 = FieldCtx::prime(2).unwrap();
        let (emb, r) = f2.adjoin_nth_root(&f2.one(), 3).unwrap();
        let t = &emb.target;
        assert_eq!(t.order(), Some(4));
        assert_eq!(t.pow(&r, 3), emb.map(&f2.one()));
        assert_ne!(r, t.one(), "primitive root, not the trivial one");
    }

    #[test]
    fn adjoin_root_extends_and_powers_back() {
        let f3 = FieldCtx::prime(3).unwrap();
        // 2 is not a square mod 3: needs F_9
        let (emb, r) = f3.adjoin_nth_root(&f3.from_i64(2), 2).unwrap();
        assert_eq!(emb.target.order(), Some(9));
        assert_eq!(emb.target.mul(&r, &r), emb.map(&f3.from_i64(2)));
    }

    #[test]
    fn field_axioms_on_sampled_triples() {
        for spec in ["char=0", "char=2", "char=5", "char=3; ext=a:a^2+1"] {
            let f = FieldCtx::parse_spec(spec).unwrap();
            let pick = |i: i64| match f.elements() {
                Some(e) => e[(i.unsigned_abs() as usize) % e.len()].clone(),
                None => f.from_rational(BigRational::new(BigInt::from(i), BigInt::from(i.abs() % 7 + 1))).unwrap(),
            };
            for i in 0..40i64 {
                let (a, b, c) = (pick(3 * i + 1), pick(5 * i + 2), pick(7 * i + 3));
                let assoc_l = f.mul(&f.mul(&a, &b), &c);
                let assoc_r = f.mul(&a, &f.mul(&b, &c));
                assert_eq!(assoc_l, assoc_r);
                let distr_l = f.mul(&a, &f.add(&b, &c));
                let distr_r = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                assert_eq!(distr_l, distr_r);
                if !f.is_zero(&a) {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for spec in ["char=2; ext=a:a^2+a+1", "char=3; ext=a:a^2+1", "char=5; ext=a:a^2+2"] {
            let f = FieldCtx::parse_spec(spec).unwrap();
            let elems = f.elements().unwrap();
            let m = elems.len();
            for i in 0..100 {
                let a = &elems[(i * 7 + 3) % m];
                let b = &elems[(i * 11 + 5) % m];
                let lhs = f.frobenius(&f.add(a, b)).unwrap();
                let rhs = f.add(&f.frobenius(a).unwrap(), &f.frobenius(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn adjoin_then_power_round_trip() {
        let f7 = FieldCtx::prime(7).unwrap();
        for v in 1..7 {
            for n in [2u64, 3, 4] {
                let a = f7.from_i64(v);
                let (emb, r) = f7.adjoin_nth_root(&a, n).unwrap();
                assert_eq!(emb.target.pow(&r, n), emb.map(&a));
            }
        }
    }

    #[test]
    fn element_display_round_trip() {
        let f9 = FieldCtx::parse_spec("char=3; ext=a:a^2+1").unwrap();
        for e in f9.elements().unwrap() {
            let s = f9.display(&e);
            assert_eq!(f9.parse_elem(&s).unwrap(), e);
        }
        let q = FieldCtx::rationals();
        let x = q.from_rational(BigRational::new(BigInt::from(-22), BigInt::from(8))).unwrap();
        assert_eq!(q.parse_elem(&q.display(&x)).unwrap(), x);
    }

    #[test]
    fn spec_string_round_trip() {
        for spec in ["char=0", "char=7", "char=2; ext=a:a^2+a+1"] {
            let f = FieldCtx::parse_spec(spec).unwrap();
            let again = FieldCtx::parse_spec(&f.spec_string()).unwrap();
            assert!(f.same_field(&again));
        }
    }
}
