//! Exact arithmetic in explicit finite fields `F_{p^m}`.
//!
//! A field is the quotient `F_p[x]/(M(x))` where `M` is the least monic
//! irreducible polynomial of degree `m` in canonical order. Elements are
//! stored as their canonical index `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`,
//! where `c_i` is the coefficient of `x^i`. The index order is the canonical
//! enumeration order used everywhere a "least" element is selected.
//!
//! Small extension fields (at most 2^16 elements) carry exponent/logarithm
//! tables over a primitive element; prime fields and larger extensions use
//! direct residue arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 1024;
const SCAN_SQRT_LIMIT: u64 = 10_000;
const NO_LOG: u32 = u32::MAX;

/// Handle to an explicit finite field. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

struct FieldInner {
    p: u64,
    m: u32,
    size: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

struct Tables {
    order: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k]` is the logarithm of `1 + g^k`, or `NO_LOG` when that sum is zero.
    zech: Vec<u32>,
    add: Option<Vec<u16>>,
}

fn field_cache() -> &'static Mutex<HashMap<(u64, u32), FieldSpec>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), FieldSpec>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds `F_{p^m}` with the least monic irreducible modulus of degree `m`.
///
/// Candidates `x^m + c_{m-1} x^{m-1} + ... + c_0` are ordered by the index
/// `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. For `m = 1` the modulus is `x`.
/// Fields are cached, so repeated calls return the same handle.
pub fn make_field(p: u64, m: u32) -> Result<FieldSpec> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if m < 1 {
        return Err(Error::InvalidDegree);
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    let size = p
        .checked_pow(m)
        .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{m}")))?;
    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        least_irreducible(p, m as usize)
    };
    let mut inner = FieldInner {
        p,
        m,
        size,
        modulus,
        tables: None,
    };
    if m > 1 && size <= TABLE_LIMIT {
        inner.tables = Some(build_tables(&inner));
    }
    let field = FieldSpec(Arc::new(inner));
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry((p, m)).or_insert(field).clone())
}

impl FieldSpec {
    /// Parses a field label of the form `"p^m"` (or just `"p"`).
    pub fn from_label(label: &str) -> Result<FieldSpec> {
        let bad = || Error::Parse(format!("field label {label:?}"));
        let (p, m) = match label.trim().split_once('^') {
            Some((p, m)) => (
                p.trim().parse().map_err(|_| bad())?,
                m.trim().parse().map_err(|_| bad())?,
            ),
            None => (label.trim().parse().map_err(|_| bad())?, 1),
        };
        make_field(p, m)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn label(&self) -> String {
        format!("{}^{}", self.0.p, self.0.m)
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of `x` in `F_p[x]/(M)`. For prime fields this is `0`.
    pub fn generator(&self) -> FieldElement {
        if self.0.m == 1 {
            self.zero()
        } else {
            self.wrap(self.0.p)
        }
    }

    /// Element with the given canonical index.
    pub fn from_index(&self, index: u64) -> Result<FieldElement> {
        if index >= self.0.size {
            return Err(Error::Parse(format!(
                "index {index} out of range for {}",
                self.label()
            )));
        }
        Ok(self.wrap(index))
    }

    /// Element from residues, constant term first. Fewer than `m` residues
    /// are padded with zeros.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m as usize {
            return Err(Error::Parse(format!(
                "{} residues given for {}",
                coeffs.len(),
                self.label()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "residue {c} not reduced mod {}",
                self.0.p
            )));
        }
        Ok(self.wrap(self.pack(coeffs)))
    }

    /// Image of an integer under `Z -> F_p -> F`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(self.int_raw(n))
    }

    /// Parses the comma-separated residue encoding, e.g. `"2,1"` for `2 + x`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let coeffs = parse_residues(text)?;
        self.element(&coeffs)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.size).map(move |i| self.wrap(i))
    }

    /// Whether this field contains a copy of `other` (same characteristic,
    /// degree divisible).
    pub fn extends(&self, other: &FieldSpec) -> bool {
        self.0.p == other.0.p && self.0.m.is_multiple_of(other.0.m)
    }

    pub(crate) fn wrap(&self, value: u64) -> FieldElement {
        debug_assert!(value < self.0.size);
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    pub(crate) fn same(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }

    pub(crate) fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.label(), other.label()))
        }
    }

    // ---- raw arithmetic on canonical indices ----

    pub(crate) fn int_raw(&self, n: i64) -> u64 {
        let p = self.0.p as i128;
        (n as i128).rem_euclid(p) as u64
    }

    pub(crate) fn digits(&self, mut v: u64) -> Vec<u64> {
        let p = self.0.p;
        let mut out = vec![0; self.0.m as usize];
        for d in out.iter_mut() {
            *d = v % p;
            v /= p;
        }
        out
    }

    pub(crate) fn pack(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.0.p + d)
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        if inner.m == 1 {
            return add_mod(a, b, inner.p);
        }
        match &inner.tables {
            Some(t) => {
                if let Some(add) = &t.add {
                    return add[(a * inner.size + b) as usize] as u64;
                }
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let la = t.log[a as usize] as u64;
                let lb = t.log[b as usize] as u64;
                let k = (lb + t.order - la) % t.order;
                match t.zech[k as usize] {
                    NO_LOG => 0,
                    z => t.exp[(la + z as u64) as usize] as u64,
                }
            }
            None => {
                let p = inner.p;
                let (mut a, mut b) = (a, b);
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..inner.m {
                    out += add_mod(a % p, b % p, p) * place;
                    a /= p;
                    b /= p;
                    place = place.wrapping_mul(p);
                }
                out
            }
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        let inner = &*self.0;
        if a == 0 {
            return 0;
        }
        if inner.m == 1 {
            return inner.p - a;
        }
        match &inner.tables {
            Some(t) => t.exp[(t.log[a as usize] as u64 + t.order / 2) as usize] as u64,
            None => {
                let d: Vec<u64> = self
                    .digits(a)
                    .into_iter()
                    .map(|c| if c == 0 { 0 } else { inner.p - c })
                    .collect();
                self.pack(&d)
            }
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        if a == 0 || b == 0 {
            return 0;
        }
        if inner.m == 1 {
            return mul_mod(a, b, inner.p);
        }
        match &inner.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64,
            None => self.pack(&generic_mul(inner, &self.digits(a), &self.digits(b))),
        }
    }

    /// Multiplicative inverse; `inv(0)` is a logic error.
    pub(crate) fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        let inner = &*self.0;
        if inner.m == 1 {
            return inv_mod(a, inner.p);
        }
        match &inner.tables {
            Some(t) => {
                let l = t.log[a as usize] as u64;
                t.exp[((t.order - l) % t.order) as usize] as u64
            }
            None => self.pow(a, inner.size - 2),
        }
    }

    pub(crate) fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    pub(crate) fn pow(&self, a: u64, n: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let l = t.log[a as usize] as u128;
            let e = ((l * (n as u128)) % t.order as u128) as usize;
            return t.exp[e] as u64;
        }
        let mut base = a;
        let mut acc = 1u64;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `a^(p^i)`.
    pub(crate) fn frobenius(&self, a: u64, i: u32) -> u64 {
        let i = i % self.0.m;
        if i == 0 || a == 0 {
            return a;
        }
        if let Some(t) = &self.0.tables {
            let l = t.log[a as usize] as u128;
            let e = (l * (self.0.p as u128).pow(i)) % t.order as u128;
            return t.exp[e as usize] as u64;
        }
        let mut x = a;
        for _ in 0..i {
            x = self.pow(x, self.0.p);
        }
        x
    }

    /// `acc[j] += scalar * src[j]` for every `j`.
    #[inline]
    pub(crate) fn axpy(&self, acc: &mut [u64], scalar: u64, src: &[u64]) {
        if scalar == 0 {
            return;
        }
        let inner = &*self.0;
        if inner.m == 1 {
            let p = inner.p;
            if p < (1 << 31) {
                for (a, &s) in acc.iter_mut().zip(src) {
                    if s != 0 {
                        *a = (*a + scalar * s % p) % p;
                    }
                }
            } else {
                for (a, &s) in acc.iter_mut().zip(src) {
                    if s != 0 {
                        *a = add_mod(*a, mul_mod(scalar, s, p), p);
                    }
                }
            }
            return;
        }
        match &inner.tables {
            Some(t) => {
                let ls = t.log[scalar as usize];
                for (a, &s) in acc.iter_mut().zip(src) {
                    if s != 0 {
                        let prod = t.exp[(ls + t.log[s as usize]) as usize] as u64;
                        *a = self.add(*a, prod);
                    }
                }
            }
            None => {
                for (a, &s) in acc.iter_mut().zip(src) {
                    if s != 0 {
                        *a = self.add(*a, self.mul(scalar, s));
                    }
                }
            }
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.m.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.m)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All elements of `field` in canonical order.
pub fn enumerate(field: &FieldSpec) -> Vec<FieldElement> {
    field.elements().collect()
}

/// An element of an explicit finite field.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    value: u64,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Canonical index; also the position in [`enumerate`].
    pub fn index(&self) -> u64 {
        self.value
    }

    /// Residues, constant term first; always `m` entries.
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub(crate) fn raw(&self) -> u64 {
        self.value
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(&rhs.field)?;
        Ok(self.field.wrap(self.field.add(self.value, rhs.value)))
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(&rhs.field)?;
        Ok(self.field.wrap(self.field.sub(self.value, rhs.value)))
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(&rhs.field)?;
        Ok(self.field.wrap(self.field.mul(self.value, rhs.value)))
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(&rhs.field)?;
        if rhs.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.wrap(self.field.div(self.value, rhs.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.wrap(self.field.inv(self.value)))
    }

    /// Square-and-multiply power.
    pub fn pow(&self, n: u64) -> FieldElement {
        self.field.wrap(self.field.pow(self.value, n))
    }

    /// Raises to the `p^i`-th power.
    pub fn frobenius(&self, i: u32) -> FieldElement {
        self.field.wrap(self.field.frobenius(self.value, i))
    }

    /// Euler's criterion. Zero is rejected.
    pub fn is_square(&self) -> Result<bool> {
        if self.value == 0 {
            return Err(Error::ZeroArgument("is_square"));
        }
        Ok(self.field.pow(self.value, (self.field.size() - 1) / 2) == 1)
    }

    /// The canonically least square root inside the element's own field.
    pub fn sqrt(&self) -> Result<FieldElement> {
        sqrt_raw(&self.field, self.value)
            .map(|v| self.field.wrap(v))
            .ok_or_else(|| Error::NotASquare(self.to_string(), self.field.label()))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field.same(&other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.value.hash(state);
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self, self.field.label())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.wrap(self.field.neg(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Euler criterion on a nonzero element.
pub fn is_square(x: &FieldElement) -> Result<bool> {
    x.is_square()
}

/// Square root of `x` computed inside `target` after the canonical embedding;
/// returns the root with the smaller canonical index.
pub fn sqrt_in(x: &FieldElement, target: &FieldSpec) -> Result<FieldElement> {
    let y = if x.field().same(target) {
        x.clone()
    } else {
        EmbeddingMap::new(x.field(), target)?.embed(x)?
    };
    y.sqrt()
}

/// First nonzero nonsquare in canonical order.
pub fn least_nonsquare(field: &FieldSpec) -> FieldElement {
    let half = (field.size() - 1) / 2;
    (1..field.size())
        .find(|&v| field.pow(v, half) != 1)
        .map(|v| field.wrap(v))
        .expect("odd-order fields have nonsquares")
}

fn sqrt_raw(field: &FieldSpec, x: u64) -> Option<u64> {
    if x == 0 {
        return Some(0);
    }
    if field.pow(x, (field.size() - 1) / 2) != 1 {
        return None;
    }
    if field.size() <= SCAN_SQRT_LIMIT {
        return (1..field.size()).find(|&y| field.mul(y, y) == x);
    }
    let y = tonelli_shanks(field, x);
    Some(y.min(field.neg(y)))
}

fn tonelli_shanks(field: &FieldSpec, x: u64) -> u64 {
    let order = field.size() - 1;
    let s = order.trailing_zeros();
    let t = order >> s;
    let z = least_nonsquare(field).raw();
    let mut m = s;
    let mut c = field.pow(z, t);
    let mut tt = field.pow(x, t);
    let mut r = field.pow(x, t.div_ceil(2));
    while tt != 1 {
        let mut i = 0;
        let mut probe = tt;
        while probe != 1 {
            probe = field.mul(probe, probe);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = field.mul(b, b);
        }
        m = i;
        c = field.mul(b, b);
        tt = field.mul(tt, c);
        r = field.mul(r, b);
    }
    r
}

/// A field embedding `source -> target` fixed by the image of the generator.
#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    source: FieldSpec,
    target: FieldSpec,
    image_of_generator: FieldElement,
    powers: Vec<u64>,
}

impl EmbeddingMap {
    /// Canonical embedding: the generator goes to the least root of the
    /// source modulus inside `target`.
    pub fn new(source: &FieldSpec, target: &FieldSpec) -> Result<EmbeddingMap> {
        let no = || Error::NoEmbedding(source.label(), target.label());
        if !target.extends(source) {
            return Err(no());
        }
        if source.degree() == 1 {
            return EmbeddingMap::with_image(source, target, target.zero());
        }
        let root = target
            .elements()
            .find(|y| eval_modulus(source, target, y.raw()) == 0)
            .ok_or_else(no)?;
        EmbeddingMap::with_image(source, target, root)
    }

    /// Embedding with a prescribed generator image, which must be a root of
    /// the source modulus.
    pub fn with_image(
        source: &FieldSpec,
        target: &FieldSpec,
        image: FieldElement,
    ) -> Result<EmbeddingMap> {
        let no = || Error::NoEmbedding(source.label(), target.label());
        if !target.extends(source) || !image.field().same(target) {
            return Err(no());
        }
        if eval_modulus(source, target, image.raw()) != 0 {
            return Err(no());
        }
        let mut powers = Vec::with_capacity(source.degree() as usize);
        let mut acc = 1u64;
        for _ in 0..source.degree() {
            powers.push(acc);
            acc = target.mul(acc, image.raw());
        }
        let map = EmbeddingMap {
            source: source.clone(),
            target: target.clone(),
            image_of_generator: image,
            powers,
        };
        map.spot_check()?;
        Ok(map)
    }

    pub fn source(&self) -> &FieldSpec {
        &self.source
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    pub fn image_of_generator(&self) -> &FieldElement {
        &self.image_of_generator
    }

    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        self.source.ensure_same(x.field())?;
        Ok(self.target.wrap(self.apply_raw(x.raw())))
    }

    pub(crate) fn apply_raw(&self, x: u64) -> u64 {
        if self.source.degree() == 1 {
            return x;
        }
        let digits = self.source.digits(x);
        let mut out = 0u64;
        for (&c, &pw) in digits.iter().zip(&self.powers) {
            if c != 0 {
                out = self.target.add(out, self.target.mul(c, pw));
            }
        }
        out
    }

    /// `other ∘ self`, i.e. first `self`, then `other`.
    pub fn then(&self, other: &EmbeddingMap) -> Result<EmbeddingMap> {
        self.target.ensure_same(&other.source)?;
        let image = other.embed(&self.image_of_generator)?;
        EmbeddingMap::with_image(&self.source, &other.target, image)
    }

    fn spot_check(&self) -> Result<()> {
        let size = self.source.size();
        let step = (size / 7).max(1);
        let samples: Vec<u64> = (0..size).step_by(step as usize).take(8).collect();
        for &x in &samples {
            for &y in &samples {
                let s = self.apply_raw(self.source.add(x, y));
                let m = self.apply_raw(self.source.mul(x, y));
                if s != self.target.add(self.apply_raw(x), self.apply_raw(y))
                    || m != self.target.mul(self.apply_raw(x), self.apply_raw(y))
                {
                    return Err(Error::NoEmbedding(self.source.label(), self.target.label()));
                }
            }
        }
        Ok(())
    }
}

/// Applies the image of `x` in `F_{p^m}` through any embedding; `embed(x, map)`.
pub fn embed(x: &FieldElement, map: &EmbeddingMap) -> Result<FieldElement> {
    map.embed(x)
}

fn eval_modulus(source: &FieldSpec, target: &FieldSpec, y: u64) -> u64 {
    source
        .modulus()
        .iter()
        .rev()
        .fold(0u64, |acc, &c| target.add(target.mul(acc, y), c))
}

pub(crate) fn parse_residues(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("residue {s:?} in {text:?}")))
        })
        .collect()
}

// ---- integer helpers ----

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    if s >= p as u128 {
        (s - p as u128) as u64
    } else {
        s as u64
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p < (1 << 32) {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

fn pow_mod(mut a: u64, mut n: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        n >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for 64-bit inputs, restricted to odd primes.
pub fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    for sp in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == sp {
            return true;
        }
        if n.is_multiple_of(sp) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns `(p, e)` when `n = p^e` for an odd prime `p`.
pub fn odd_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 3 || n.is_multiple_of(2) {
        return None;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 2;
    }
    if p * p > n {
        return is_odd_prime(n).then_some((n, 1));
    }
    let (mut rest, mut e) = (n, 0u32);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- construction helpers: polynomials over F_p as residue vectors ----

fn generic_mul(inner: &FieldInner, a: &[u64], b: &[u64]) -> Vec<u64> {
    let p = inner.p;
    let m = inner.m as usize;
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    fp_reduce(&mut prod, &inner.modulus, p);
    prod.resize(m, 0);
    prod
}

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Reduces `a` modulo the monic `f` in place.
fn fp_reduce(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let df = f.len() - 1;
    fp_trim(a);
    while a.len() > df {
        let top = a.len() - 1;
        let c = a[top];
        let shift = top - df;
        for (j, &fj) in f.iter().enumerate() {
            let t = mul_mod(c, fj, p);
            a[shift + j] = add_mod(a[shift + j], p - t, p) % p;
        }
        fp_trim(a);
    }
}

fn fp_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    fp_reduce(&mut prod, f, p);
    prod
}

fn fp_powmod(base: &[u64], mut n: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    fp_reduce(&mut b, f, p);
    while n > 0 {
        if n & 1 == 1 {
            acc = fp_mulmod(&acc, &b, f, p);
        }
        b = fp_mulmod(&b, &b, f, p);
        n >>= 1;
    }
    acc
}

fn fp_gcd_degree(a: Vec<u64>, b: Vec<u64>, p: u64) -> usize {
    let (mut a, mut b) = (a, b);
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| mul_mod(c, inv, p)).collect();
        fp_reduce(&mut a, &monic, p);
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Irreducibility by gcd with `x^{p^i} - x` for `i <= m/2`.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m <= 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let mut h = vec![0u64, 1];
    for _ in 0..m / 2 {
        h = fp_powmod(&h, p, f, p);
        let mut d = h.clone();
        d.resize(d.len().max(2), 0);
        d[1] = add_mod(d[1], p - 1, p);
        if fp_gcd_degree(d, f.to_vec(), p) > 0 {
            return false;
        }
    }
    true
}

/// Least monic irreducible of degree `m` in index order: the lower
/// coefficients `(c_0, ..., c_{m-1})` read as the base-`p` number
/// `sum c_i p^i`.
fn least_irreducible(p: u64, m: usize) -> Vec<u64> {
    let count = p.pow(m as u32);
    for idx in 0..count {
        let mut f = Vec::with_capacity(m + 1);
        let mut v = idx;
        for _ in 0..m {
            f.push(v % p);
            v /= p;
        }
        f.push(1);
        if fp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(inner: &FieldInner) -> Tables {
    let size = inner.size;
    let order = size - 1;
    let digits = |mut v: u64| {
        let mut d = vec![0u64; inner.m as usize];
        for x in d.iter_mut() {
            *x = v % inner.p;
            v /= inner.p;
        }
        d
    };
    let pack = |d: &[u64]| d.iter().rev().fold(0u64, |acc, &c| acc * inner.p + c);
    let mul = |a: u64, b: u64| pack(&generic_mul(inner, &digits(a), &digits(b)));
    let factors = prime_factors(order);
    let pow = |a: u64, mut n: u64| {
        let (mut acc, mut b) = (1u64, a);
        while n > 0 {
            if n & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            n >>= 1;
        }
        acc
    };
    let g = (2..size)
        .find(|&g| factors.iter().all(|&l| pow(g, order / l) != 1))
        .expect("finite fields have primitive elements");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![NO_LOG; size as usize];
    let mut acc = 1u64;
    for i in 0..order as usize {
        exp[i] = acc as u32;
        exp[i + order as usize] = acc as u32;
        log[acc as usize] = i as u32;
        acc = mul(acc, g);
    }
    let add_digits = |a: u64, b: u64| {
        let s: Vec<u64> = digits(a)
            .iter()
            .zip(digits(b))
            .map(|(&x, y)| (x + y) % inner.p)
            .collect();
        pack(&s)
    };
    let zech = (0..order as usize)
        .map(|k| match add_digits(1, exp[k] as u64) {
            0 => NO_LOG,
            s => log[s as usize],
        })
        .collect();
    let add = (size <= ADD_TABLE_LIMIT).then(|| {
        let mut t = vec![0u16; (size * size) as usize];
        for a in 0..size {
            for b in 0..size {
                t[(a * size + b) as usize] = add_digits(a, b) as u16;
            }
        }
        t
    });
    Tables {
        order,
        exp,
        log,
        zech,
        add,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_characteristic_and_degree() {
        assert_eq!(make_field(2, 1).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(make_field(9, 1).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(make_field(3, 0).unwrap_err(), Error::InvalidDegree);
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.size(), 3);
    }

    /// Brute-force irreducibility: no root and (for degree <= 3) that is enough.
    fn brute_least_irreducible(p: u64, m: usize) -> Vec<u64> {
        assert!(m <= 3);
        for idx in 0..p.pow(m as u32) {
            let mut f: Vec<u64> = (0..m).map(|i| idx / p.pow(i as u32) % p).collect();
            f.push(1);
            let has_root =
                (0..p).any(|x| f.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0);
            if !has_root {
                return f;
            }
        }
        unreachable!()
    }

    #[test]
    fn moduli_match_exhaustive_scan() {
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(5, 2).unwrap().modulus(), &[2, 0, 1]);
        for (p, m) in [(3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3)] {
            assert_eq!(
                make_field(p, m).unwrap().modulus(),
                brute_least_irreducible(p, m as usize).as_slice(),
                "p={p} m={m}"
            );
        }
    }

    #[test]
    fn small_arithmetic() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(&f3.from_int(2) + &f3.from_int(2), f3.one());
        let f9 = make_field(3, 2).unwrap();
        let x = f9.generator();
        assert_eq!(&x * &x, f9.from_int(-1));
        assert_eq!(x.frobenius(1), -&x);
        assert_eq!(x.frobenius(1), f9.element(&[0, 2]).unwrap());
    }

    #[test]
    fn cross_field_and_zero_division_errors() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert!(matches!(
            f3.one().checked_add(&f9.one()),
            Err(Error::FieldMismatch(_, _))
        ));
        assert_eq!(f9.one().checked_div(&f9.zero()), Err(Error::DivisionByZero));
        assert_eq!(f9.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn squares_and_roots() {
        let f3 = make_field(3, 1).unwrap();
        let f5 = make_field(5, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert!(!f3.from_int(2).is_square().unwrap());
        assert!(f5.from_int(4).is_square().unwrap());
        assert_eq!(f3.zero().is_square(), Err(Error::ZeroArgument("is_square")));
        for c in 1..3 {
            let y = f9.from_int(c);
            assert!(y.is_square().unwrap());
            assert!(f9.elements().any(|z| &z * &z == y));
        }
        assert_eq!(sqrt_in(&f5.from_int(4), &f5).unwrap(), f5.from_int(2));
        assert_eq!(sqrt_in(&f5.one(), &f5).unwrap(), f5.one());
        let two = f3.from_int(2);
        let root = sqrt_in(&two, &f9).unwrap();
        let brute = f9.elements().find(|y| y * y == f9.from_int(2)).unwrap();
        assert_eq!(root, brute);
        assert!(matches!(sqrt_in(&two, &f3), Err(Error::NotASquare(_, _))));
    }

    #[test]
    fn least_nonsquares() {
        let f3 = make_field(3, 1).unwrap();
        let f5 = make_field(5, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(least_nonsquare(&f3), f3.from_int(2));
        assert_eq!(least_nonsquare(&f5), f5.from_int(2));
        let brute = f9.elements().find(|x| x.pow(4) == f9.from_int(-1)).unwrap();
        assert_eq!(least_nonsquare(&f9), brute);
        assert_eq!(brute.to_string(), "1,1");
    }

    #[test]
    fn enumeration_order_and_fermat() {
        let f3 = make_field(3, 1).unwrap();
        let idx: Vec<u64> = enumerate(&f3).iter().map(|e| e.index()).collect();
        assert_eq!(idx, vec![0, 1, 2]);
        assert_eq!(enumerate(&make_field(3, 2).unwrap()).len(), 9);
        let f243 = make_field(3, 5).unwrap();
        let all = enumerate(&f243);
        assert_eq!(all.len(), 243);
        assert!(all.iter().all(|x| x.pow(243) == *x));
    }

    #[test]
    fn embeddings() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        let m = EmbeddingMap::new(&f3, &f81).unwrap();
        assert_eq!(m.embed(&f3.from_int(2)).unwrap(), f81.from_int(2));
        let m9 = EmbeddingMap::new(&f9, &f81).unwrap();
        let img = m9.embed(&f9.generator()).unwrap();
        assert_eq!(&img * &img, f81.from_int(-1));
        let brute = f81.elements().find(|y| y * y == f81.from_int(-1)).unwrap();
        assert_eq!(img, brute);
        assert!(EmbeddingMap::new(&f9, &make_field(3, 3).unwrap()).is_err());
        assert!(m9.embed(&f3.one()).is_err());
    }

    #[test]
    fn embedding_composition_agrees_elementwise() {
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let f81 = make_field(3, 4).unwrap();
        let a = EmbeddingMap::new(&f9, &f81).unwrap();
        let b = EmbeddingMap::new(&make_field(3, 4).unwrap(), &make_field(3, 8).unwrap()).unwrap();
        let direct = a.then(&b).unwrap();
        for x in f9.elements() {
            assert_eq!(
                direct.embed(&x).unwrap(),
                b.embed(&a.embed(&x).unwrap()).unwrap()
            );
        }
        let via = EmbeddingMap::new(&f3, &f9).unwrap().then(&a).unwrap();
        let straight = EmbeddingMap::new(&f3, &f81).unwrap();
        for x in f3.elements() {
            assert_eq!(via.embed(&x).unwrap(), straight.embed(&x).unwrap());
        }
    }

    #[test]
    fn large_prime_and_generic_extension() {
        let p = 1_000_000_007u64;
        let f = make_field(p, 1).unwrap();
        let x = f.from_int(123_456_789);
        assert_eq!(&x * &x.inv().unwrap(), f.one());
        let sq = &x * &x;
        let r = sq.sqrt().unwrap();
        assert_eq!(&r * &r, sq);
        // 101^3 > 2^16: exercises the table-free extension path.
        let g = make_field(101, 3).unwrap();
        let y = g.element(&[5, 7, 11]).unwrap();
        assert_eq!(y.pow(g.size()), y);
        assert_eq!(&y * &y.inv().unwrap(), g.one());
        let s = &y * &y;
        let root = s.sqrt().unwrap();
        assert_eq!(&root * &root, s);
        assert_eq!(y.frobenius(1), y.pow(101));
        assert_eq!(-&(-&y), y);
    }

    #[test]
    fn zech_path_matches_digitwise_addition() {
        // 3^7 = 2187 exceeds the addition-table limit.
        let f = make_field(3, 7).unwrap();
        for a in (0..f.size()).step_by(37) {
            for b in (0..f.size()).step_by(41) {
                let want: Vec<u64> = f
                    .digits(a)
                    .iter()
                    .zip(f.digits(b))
                    .map(|(&x, y)| (x + y) % 3)
                    .collect();
                assert_eq!(f.add(a, b), f.pack(&want));
            }
        }
    }

    #[test]
    fn parse_and_labels() {
        let f9 = FieldSpec::from_label("3^2").unwrap();
        assert_eq!(f9.label(), "3^2");
        let e = f9.parse_element("2,1").unwrap();
        assert_eq!(e.to_string(), "2,1");
        assert_eq!(f9.parse_element("2").unwrap(), f9.from_int(2));
        assert!(f9.parse_element("3,0").is_err());
        assert!(f9.parse_element("1,1,1").is_err());
        assert_eq!(odd_prime_power(9), Some((3, 2)));
        assert_eq!(odd_prime_power(25), Some((5, 2)));
        assert_eq!(odd_prime_power(12), None);
        assert_eq!(odd_prime_power(15), None);
    }
}
