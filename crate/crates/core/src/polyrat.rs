//! Dense univariate polynomials and reduced rational functions over an
//! explicit finite field, with evaluation on the projective line.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{parse_residues, EmbeddingMap, FieldElement, FieldSpec};

/// Dense polynomial, constant term first, never with trailing zeros.
#[derive(Clone)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl Polynomial {
    pub(crate) fn from_raw(field: &FieldSpec, mut coeffs: Vec<u64>) -> Polynomial {
        trim(&mut coeffs);
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> Polynomial {
        Polynomial::from_raw(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> Polynomial {
        Polynomial::from_raw(field, vec![1])
    }

    /// The variable `X`.
    pub fn x(field: &FieldSpec) -> Polynomial {
        Polynomial::from_raw(field, vec![0, 1])
    }

    pub fn constant(c: &FieldElement) -> Polynomial {
        Polynomial::from_raw(c.field(), vec![c.raw()])
    }

    /// `c X^n`.
    pub fn monomial(c: &FieldElement, n: usize) -> Polynomial {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c.raw();
        Polynomial::from_raw(c.field(), coeffs)
    }

    /// `X^n - X^m`; both exponents may coincide (giving zero).
    pub fn binomial(field: &FieldSpec, n: usize, m: usize) -> Polynomial {
        let mut coeffs = vec![0; n.max(m) + 1];
        coeffs[n] = field.add(coeffs[n], 1);
        coeffs[m] = field.sub(coeffs[m], 1);
        Polynomial::from_raw(field, coeffs)
    }

    pub fn from_elements(field: &FieldSpec, coeffs: &[FieldElement]) -> Result<Polynomial> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            field.ensure_same(c.field())?;
            raw.push(c.raw());
        }
        Ok(Polynomial::from_raw(field, raw))
    }

    /// Integer coefficients reduced into the field, constant term first.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Polynomial {
        Polynomial::from_raw(field, coeffs.iter().map(|&c| field.int_raw(c)).collect())
    }

    /// Parses comma-separated field elements (each `m` residues).
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Polynomial> {
        let residues = parse_residues(text)?;
        let m = field.degree() as usize;
        if residues.len() % m != 0 {
            return Err(Error::Parse(format!(
                "{} residues is not a multiple of {m}",
                residues.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(residues.len() / m);
        for chunk in residues.chunks(m) {
            coeffs.push(field.element(chunk)?.raw());
        }
        Ok(Polynomial::from_raw(field, coeffs))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub(crate) fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.wrap(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| self.field.wrap(c)).collect()
    }

    pub fn lead(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|&c| self.field.wrap(c))
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn ensure_same_field(&self, other: &Polynomial) -> Result<()> {
        self.field.ensure_same(&other.field)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ensure_same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ensure_same_field(other)?;
        Ok(self.add_unchecked(&other.neg_unchecked()))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ensure_same_field(other)?;
        Ok(Polynomial::from_raw(
            &self.field,
            mul_raw(&self.field, &self.coeffs, &other.coeffs),
        ))
    }

    fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (&self.coeffs, &other.coeffs)
        } else {
            (&other.coeffs, &self.coeffs)
        };
        let mut out = long.clone();
        for (o, &s) in out.iter_mut().zip(short) {
            *o = self.field.add(*o, s);
        }
        Polynomial::from_raw(&self.field, out)
    }

    fn neg_unchecked(&self) -> Polynomial {
        let out = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Polynomial::from_raw(&self.field, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial> {
        self.field.ensure_same(c.field())?;
        Ok(self.scale_raw(c.raw()))
    }

    pub(crate) fn scale_raw(&self, c: u64) -> Polynomial {
        if c == 1 {
            return self.clone();
        }
        let out = self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect();
        Polynomial::from_raw(&self.field, out)
    }

    /// Multiplication by `X^n`.
    pub fn shift(&self, n: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0; n];
        out.extend_from_slice(&self.coeffs);
        Polynomial::from_raw(&self.field, out)
    }

    /// Scales to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&l) => self.scale_raw(self.field.inv(l)),
        }
    }

    /// Quotient and remainder with `deg rem < deg divisor`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.ensure_same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = divmod_raw(&self.field, &self.coeffs, &divisor.coeffs);
        Ok((
            Polynomial::from_raw(&self.field, q),
            Polynomial::from_raw(&self.field, r),
        ))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::IdentityFailed("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// `self^n`, splitting `n` into base-`p` digits so that each `p`-th power
    /// is a coefficient Frobenius plus exponent spreading.
    pub fn pow(&self, n: u64) -> Polynomial {
        let p = self.field.p();
        let mut result = Polynomial::one(&self.field);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            let digit = n % p;
            if digit > 0 {
                result = &result * &base.pow_small(digit);
            }
            n /= p;
            if n > 0 {
                base = base.frobenius_spread();
            }
        }
        result
    }

    fn pow_small(&self, mut n: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^p`, computed as `sum c_i^p X^{ip}`.
    fn frobenius_spread(&self) -> Polynomial {
        let p = self.field.p() as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0; (self.coeffs.len() - 1) * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * p] = self.field.frobenius(c, 1);
        }
        Polynomial::from_raw(&self.field, out)
    }

    /// Applies `c -> c^{p^i}` to every coefficient.
    pub fn map_frobenius(&self, i: u32) -> Polynomial {
        let out = self
            .coeffs
            .iter()
            .map(|&c| self.field.frobenius(c, i))
            .collect();
        Polynomial::from_raw(&self.field, out)
    }

    pub fn derivative(&self) -> Polynomial {
        let p = self.field.p();
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.field.mul(c, (i as u64) % p))
            .collect();
        Polynomial::from_raw(&self.field, out)
    }

    /// Horner evaluation at a point of the same field.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(x.field())?;
        Ok(self.field.wrap(self.eval_raw(x.raw())))
    }

    pub(crate) fn eval_raw(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Image under a field embedding applied coefficientwise.
    pub fn embed(&self, map: &EmbeddingMap) -> Result<Polynomial> {
        self.field.ensure_same(map.source())?;
        let out = self.coeffs.iter().map(|&c| map.apply_raw(c)).collect();
        Ok(Polynomial::from_raw(map.target(), out))
    }

    /// Coefficientwise `p`-th root of a polynomial in `X^p`.
    fn pth_root(&self) -> Polynomial {
        let p = self.field.p() as usize;
        let m = self.field.degree();
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % p == 0));
        let out = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| self.field.frobenius(c, m - 1))
            .collect();
        Polynomial::from_raw(&self.field, out)
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("is_squarefree"));
        }
        Ok(poly_gcd(self, &self.derivative())?.deg0() == 0)
    }

    /// Squarefree decomposition `self = lead * prod factor_i^{e_i}`.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomposition> {
        squarefree_decomposition(self)
    }

    /// Largest `e` with `(X - root)^e | self`.
    pub fn multiplicity_at(&self, root: &FieldElement) -> Result<usize> {
        multiplicity_at(self, root)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{}", self.field.zero());
        }
        let parts: Vec<String> = self.coefficients().iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.field.label(), self)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_unchecked()
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn mul_raw(field: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let nz_a = a.iter().filter(|&&c| c != 0).count();
    let nz_b = b.iter().filter(|&&c| c != 0).count();
    let (outer, inner) = if nz_a <= nz_b { (a, b) } else { (b, a) };
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &c) in outer.iter().enumerate() {
        if c != 0 {
            field.axpy(&mut out[i..i + inner.len()], c, inner);
        }
    }
    out
}

fn divmod_raw(field: &FieldSpec, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = field.inv(b[db]);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        let t = field.mul(c, lead_inv);
        q[i - db] = t;
        field.axpy(&mut r[i - db..=i], field.neg(t), b);
    }
    r.truncate(db);
    trim(&mut r);
    (q, r)
}

fn rem_in_place(field: &FieldSpec, r: &mut Vec<u64>, b: &[u64]) {
    let db = b.len() - 1;
    if r.len() > db {
        let lead_inv = field.inv(b[db]);
        for i in (db..r.len()).rev() {
            let c = r[i];
            if c != 0 {
                let t = field.mul(c, lead_inv);
                field.axpy(&mut r[i - db..=i], field.neg(t), b);
            }
        }
        r.truncate(db);
    }
    trim(r);
}

/// Monic greatest common divisor by Euclid's algorithm.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.ensure_same_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial("poly_gcd"));
    }
    let field = &a.field;
    let (mut x, mut y) = (a.coeffs.clone(), b.coeffs.clone());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        rem_in_place(field, &mut x, &y);
        std::mem::swap(&mut x, &mut y);
    }
    Ok(Polynomial::from_raw(field, x).monic())
}

/// Result of [`squarefree_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub lead: FieldElement,
    /// Monic, squarefree, pairwise coprime factors with strictly increasing
    /// exponents.
    pub factors: Vec<(Polynomial, u64)>,
}

impl SquarefreeDecomposition {
    /// Multiplies the decomposition back out.
    pub fn expand(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(&self.lead), |acc, (f, e)| {
                &acc * &f.pow(*e)
            })
    }
}

/// Squarefree decomposition valid in characteristic `p`: the separable part
/// is peeled off with gcds against the derivative, and what remains is a
/// polynomial in `X^p` whose coefficientwise `p`-th root is decomposed
/// recursively.
pub fn squarefree_decomposition(a: &Polynomial) -> Result<SquarefreeDecomposition> {
    let lead = a
        .lead()
        .ok_or(Error::ZeroPolynomial("squarefree_decomposition"))?;
    let mut factors = if a.deg0() == 0 {
        Vec::new()
    } else {
        sff_monic(&a.monic())?
    };
    factors.sort_by_key(|(_, e)| *e);
    Ok(SquarefreeDecomposition { lead, factors })
}

fn sff_monic(f: &Polynomial) -> Result<Vec<(Polynomial, u64)>> {
    let p = f.field.p();
    let mut out = Vec::new();
    let d = f.derivative();
    let mut c = if d.is_zero() {
        f.clone()
    } else {
        poly_gcd(f, &d)?
    };
    let mut w = f.div_exact(&c)?;
    let mut i = 1u64;
    while w.deg0() > 0 {
        let y = poly_gcd(&w, &c)?;
        let fac = w.div_exact(&y)?;
        if fac.deg0() > 0 {
            out.push((fac, i));
        }
        c = c.div_exact(&y)?;
        w = y;
        i += 1;
    }
    if c.deg0() > 0 {
        for (g, e) in sff_monic(&c.pth_root())? {
            out.push((g, e * p));
        }
    }
    Ok(out)
}

/// Largest `e` with `(X - root)^e` dividing `a`.
pub fn multiplicity_at(a: &Polynomial, root: &FieldElement) -> Result<usize> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial("multiplicity_at"));
    }
    a.field.ensure_same(root.field())?;
    let field = &a.field;
    let r = root.raw();
    let mut cur = a.coeffs.clone();
    let mut e = 0;
    loop {
        // synthetic division by (X - r)
        let n = cur.len();
        if n < 2 {
            return Ok(e);
        }
        let mut q = vec![0u64; n - 1];
        let mut acc = 0u64;
        for i in (0..n).rev() {
            acc = field.add(field.mul(acc, r), cur[i]);
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        if acc != 0 {
            return Ok(e);
        }
        e += 1;
        cur = q;
    }
}

/// A point of `P^1` over an explicit field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Finite(FieldElement),
    Infinity(FieldSpec),
}

impl ProjectivePoint {
    pub fn field(&self) -> &FieldSpec {
        match self {
            ProjectivePoint::Finite(x) => x.field(),
            ProjectivePoint::Infinity(f) => f,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity(_))
    }

    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            ProjectivePoint::Finite(x) => Some(x),
            ProjectivePoint::Infinity(_) => None,
        }
    }

    /// All `|F| + 1` points, finite ones in canonical order, then infinity.
    pub fn all(field: &FieldSpec) -> Vec<ProjectivePoint> {
        field
            .elements()
            .map(ProjectivePoint::Finite)
            .chain(std::iter::once(ProjectivePoint::Infinity(field.clone())))
            .collect()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(x) => write!(f, "{x}"),
            ProjectivePoint::Infinity(_) => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self, self.field().label())
    }
}

/// Rational function `num/den` in normal form: coprime, monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduces `num/den` to normal form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        rf_make(num, den)
    }

    /// Trusts that `num` and `den` are coprime; only rescales `den` to monic.
    pub(crate) fn from_coprime(num: Polynomial, den: Polynomial) -> RationalFunction {
        debug_assert!(!den.is_zero());
        let l = *den.coeffs.last().unwrap();
        if l == 1 {
            return RationalFunction { num, den };
        }
        let inv = den.field.inv(l);
        RationalFunction {
            num: num.scale_raw(inv),
            den: den.scale_raw(inv),
        }
    }

    pub fn from_polynomial(p: Polynomial) -> RationalFunction {
        let field = p.field.clone();
        RationalFunction {
            num: p,
            den: Polynomial::one(&field),
        }
    }

    /// The identity function `X`.
    pub fn x(field: &FieldSpec) -> RationalFunction {
        RationalFunction::from_polynomial(Polynomial::x(field))
    }

    /// Parses `"num / den"` (or a bare polynomial).
    pub fn parse(field: &FieldSpec, text: &str) -> Result<RationalFunction> {
        match text.split_once('/') {
            Some((n, d)) => rf_make(Polynomial::parse(field, n)?, Polynomial::parse(field, d)?),
            None => Ok(RationalFunction::from_polynomial(Polynomial::parse(
                field, text,
            )?)),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> &FieldSpec {
        &self.num.field
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RationalFunction) -> Result<RationalFunction> {
        rf_compose(self, inner)
    }

    pub fn evaluate(&self, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
        rf_evaluate(self, pt)
    }

    pub fn embed(&self, map: &EmbeddingMap) -> Result<RationalFunction> {
        Ok(RationalFunction::from_coprime(
            self.num.embed(map)?,
            self.den.embed(map)?,
        ))
    }

    /// Applies `c -> c^{p^i}` to all coefficients.
    pub fn map_frobenius(&self, i: u32) -> RationalFunction {
        RationalFunction {
            num: self.num.map_frobenius(i),
            den: self.den.map_frobenius(i),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Result<RationalFunction> {
        Ok(RationalFunction {
            num: self.num.scale(c)?,
            den: self.den.clone(),
        })
    }

    pub fn checked_sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.num.ensure_same_field(&other.num)?;
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        rf_make(num, &self.den * &other.den)
    }

    /// Numerator of the derivative, `num' den - num den'`.
    pub fn derivative_numerator(&self) -> Polynomial {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// The derivative in normal form.
    pub fn derivative(&self) -> Result<RationalFunction> {
        rf_make(self.derivative_numerator(), &self.den * &self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction[{}]({})", self.field().label(), self)
    }
}

/// Reduces `num/den`: divides out the gcd and makes `den` monic.
pub fn rf_make(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
    num.ensure_same_field(&den)?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(RationalFunction {
            den: Polynomial::one(&num.field),
            num,
        });
    }
    let g = poly_gcd(&num, &den)?;
    let (num, den) = if g.is_one() {
        (num, den)
    } else {
        (num.div_exact(&g)?, den.div_exact(&g)?)
    };
    Ok(RationalFunction::from_coprime(num, den))
}

/// `outer ∘ inner`.
///
/// With `outer = P/Q`, `d = max(deg P, deg Q)` and `inner = N/D`, the result
/// is `P*(N, D) / Q*(N, D)` where `P*` is the degree-`d` homogenization of `P`.
/// Both are built by the Horner-style recurrence `T_k = T_{k-1} D + c_k N^k`.
/// When `P, Q` and `N, D` are coprime pairs, so are `P*(N, D)` and `Q*(N, D)`:
/// a common zero would be a common projective zero of `P*` and `Q*`.
pub fn rf_compose(outer: &RationalFunction, inner: &RationalFunction) -> Result<RationalFunction> {
    outer.num.ensure_same_field(&inner.num)?;
    if inner.is_constant() {
        return Err(Error::ConstantInner);
    }
    let field = outer.field();
    let d = outer.degree();
    let (n, dd) = (&inner.num, &inner.den);
    if dd.is_one() && n.coeffs.len() == 2 {
        let (n0, n1) = (n.coeffs[0], n.coeffs[1]);
        let affine = |p: &Polynomial| {
            Polynomial::from_raw(field, affine_substitute(field, &p.coeffs, n1, n0))
        };
        return Ok(RationalFunction::from_coprime(
            affine(&outer.num),
            affine(&outer.den),
        ));
    }
    if dd.is_one() {
        // polynomial inner map: plain Horner on each side
        let horner = |p: &Polynomial| {
            p.coeffs
                .iter()
                .rev()
                .fold(Polynomial::zero(field), |acc, &c| {
                    let mut next = mul_raw(field, &acc.coeffs, &n.coeffs);
                    if next.is_empty() {
                        next.push(0);
                    }
                    next[0] = field.add(next[0], c);
                    Polynomial::from_raw(field, next)
                })
        };
        return Ok(RationalFunction::from_coprime(
            horner(&outer.num),
            horner(&outer.den),
        ));
    }
    let mut npow = Polynomial::one(field);
    let mut tp = Polynomial::constant(&outer.num.coeff(0));
    let mut tq = Polynomial::constant(&outer.den.coeff(0));
    for k in 1..=d {
        npow = &npow * n;
        tp = &(&tp * dd) + &npow.scale_raw(outer.num.coeffs.get(k).copied().unwrap_or(0));
        tq = &(&tq * dd) + &npow.scale_raw(outer.den.coeffs.get(k).copied().unwrap_or(0));
    }
    Ok(RationalFunction::from_coprime(tp, tq))
}

/// `p(b X + c)`: scale to `p(bX)`, then shift by `c/b`.
fn affine_substitute(field: &FieldSpec, p: &[u64], b: u64, c: u64) -> Vec<u64> {
    let mut power = 1;
    let scaled: Vec<u64> = p
        .iter()
        .map(|&coeff| {
            let out = field.mul(coeff, power);
            power = field.mul(power, b);
            out
        })
        .collect();
    if c == 0 {
        return scaled;
    }
    taylor_shift(field, &scaled, field.div(c, b))
}

/// `p(X + c)`. Splitting `p = sum_i X^{im} P_i` with `m` a power of the
/// characteristic gives `p(X + c) = sum_i (X^m + c^m)^i P_i(X + c)`.
fn taylor_shift(field: &FieldSpec, p: &[u64], c: u64) -> Vec<u64> {
    if p.len() <= 16 {
        let mut acc: Vec<u64> = Vec::with_capacity(p.len());
        for &coeff in p.iter().rev() {
            acc.push(0);
            for j in (1..acc.len()).rev() {
                acc[j] = field.add(acc[j - 1], field.mul(acc[j], c));
            }
            acc[0] = field.add(field.mul(acc[0], c), coeff);
        }
        return acc;
    }
    let char_p = field.p() as usize;
    let mut m = 1usize;
    while m * char_p < p.len() {
        m *= char_p;
    }
    let cm = field.pow(c, m as u64);
    let mut acc: Vec<u64> = Vec::new();
    for chunk in p.chunks(m).rev() {
        let shifted = taylor_shift(field, chunk, c);
        // acc <- acc (X^m + c^m) + shifted
        let mut next = vec![0u64; (acc.len() + m).max(shifted.len())];
        for (j, &v) in acc.iter().enumerate() {
            next[j + m] = field.add(next[j + m], v);
        }
        field.axpy(&mut next[..acc.len()], cm, &acc);
        for (n, &v) in next.iter_mut().zip(&shifted) {
            *n = field.add(*n, v);
        }
        acc = next;
    }
    trim(&mut acc);
    acc
}

/// Evaluates on `P^1`; the point must live in the function's field.
pub fn rf_evaluate(f: &RationalFunction, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
    let field = f.field();
    field.ensure_same(pt.field())?;
    Ok(match pt {
        ProjectivePoint::Finite(c) => {
            let den = f.den.eval_raw(c.raw());
            if den == 0 {
                ProjectivePoint::Infinity(field.clone())
            } else {
                let num = f.num.eval_raw(c.raw());
                ProjectivePoint::Finite(field.wrap(field.div(num, den)))
            }
        }
        ProjectivePoint::Infinity(_) => {
            let (dn, dd) = (f.num.degree(), f.den.deg0());
            match dn {
                None => ProjectivePoint::Finite(field.zero()),
                Some(dn) if dn > dd => ProjectivePoint::Infinity(field.clone()),
                Some(dn) if dn < dd => ProjectivePoint::Finite(field.zero()),
                Some(_) => {
                    let ratio =
                        field.div(*f.num.coeffs.last().unwrap(), *f.den.coeffs.last().unwrap());
                    ProjectivePoint::Finite(field.wrap(ratio))
                }
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    fn f3() -> FieldSpec {
        make_field(3, 1).unwrap()
    }

    #[test]
    fn derivative_in_characteristic_three() {
        let x3 = Polynomial::from_ints(&f3(), &[0, 0, 0, 1]);
        assert!(x3.derivative().is_zero());
    }

    #[test]
    fn divmod_basic() {
        let a = Polynomial::from_ints(&f3(), &[1, 0, 1]);
        let (q, r) = a.divmod(&Polynomial::x(&f3())).unwrap();
        assert_eq!(q, Polynomial::x(&f3()));
        assert_eq!(r, Polynomial::one(&f3()));
        assert_eq!(
            a.divmod(&Polynomial::zero(&f3())).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn x9_minus_x_vanishes_on_f3() {
        let f = f3();
        let p = Polynomial::binomial(&f, 9, 1);
        assert!(f.elements().all(|c| p.eval(&c).unwrap().is_zero()));
    }

    #[test]
    fn owner_mismatch_is_an_error() {
        let a = Polynomial::x(&f3());
        let b = Polynomial::x(&make_field(3, 2).unwrap());
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(_, _))));
        assert!(matches!(a.divmod(&b), Err(Error::FieldMismatch(_, _))));
    }

    #[test]
    fn gcd_cases() {
        let f = f3();
        let big = Polynomial::binomial(&f, 81, 1).pow(5);
        let small = Polynomial::binomial(&f, 9, 1).pow(41);
        let g = poly_gcd(&big, &small).unwrap();
        assert_eq!(g, Polynomial::binomial(&f, 9, 1).pow(5));
        let h = Polynomial::from_ints(&f, &[1, 2, 2]);
        assert_eq!(poly_gcd(&h, &Polynomial::zero(&f)).unwrap(), h.monic());
        assert_eq!(
            poly_gcd(&Polynomial::zero(&f), &Polynomial::zero(&f)).unwrap_err(),
            Error::ZeroPolynomial("poly_gcd")
        );
    }

    #[test]
    fn squarefree_examples() {
        let f5 = make_field(5, 1).unwrap();
        let xm1 = Polynomial::from_ints(&f5, &[-1, 1]);
        let xp1 = Polynomial::from_ints(&f5, &[1, 1]);
        let a = &xm1.pow(2) * &xp1;
        let d = a.squarefree_decomposition().unwrap();
        assert_eq!(d.factors, vec![(xp1, 1), (xm1, 2)]);
        let x3 = Polynomial::from_ints(&f3(), &[0, 0, 0, 1]);
        let d = x3.squarefree_decomposition().unwrap();
        assert_eq!(d.factors, vec![(Polynomial::x(&f3()), 3)]);
        assert!(Polynomial::zero(&f3()).squarefree_decomposition().is_err());
    }

    #[test]
    fn mixed_separable_and_inseparable_parts() {
        let f = f3();
        let x = Polynomial::x(&f);
        let a = Polynomial::from_ints(&f, &[1, 1]);
        let b = Polynomial::from_ints(&f, &[2, 0, 1, 1]);
        let c = Polynomial::from_ints(&f, &[1, 0, 1]);
        let input = &(&(&x.pow(2) * &a.pow(3)) * &b.pow(6)) * &c.pow(7);
        let d = input.squarefree_decomposition().unwrap();
        assert_eq!(d.expand(), input);
        let exps: Vec<u64> = d.factors.iter().map(|(_, e)| *e).collect();
        assert!(exps.windows(2).all(|w| w[0] < w[1]));
        for (fac, _) in &d.factors {
            assert!(fac.is_squarefree().unwrap());
        }
    }

    #[test]
    fn multiplicities() {
        let f = f3();
        let x2 = Polynomial::from_ints(&f, &[0, 0, 1]);
        assert_eq!(x2.multiplicity_at(&f.zero()).unwrap(), 2);
        let f9 = make_field(3, 2).unwrap();
        let p = Polynomial::binomial(&f9, 9, 1).pow(5);
        for c in f9.elements() {
            assert_eq!(p.multiplicity_at(&c).unwrap(), 5);
        }
        assert!(Polynomial::zero(&f).multiplicity_at(&f.zero()).is_err());
    }

    #[test]
    fn rf_normal_form() {
        let f = f3();
        let num = Polynomial::from_ints(&f, &[-1, 0, 1]);
        let den = Polynomial::from_ints(&f, &[-1, 1]);
        let r = rf_make(num, den).unwrap();
        assert_eq!(r.num(), &Polynomial::from_ints(&f, &[1, 1]));
        assert!(r.den().is_one());
        let again = rf_make(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(again, r);
        assert_eq!(
            rf_make(Polynomial::one(&f), Polynomial::zero(&f)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn composition_basics() {
        let f = f3();
        let x2 = RationalFunction::from_polynomial(Polynomial::from_ints(&f, &[0, 0, 1]));
        let x3 = RationalFunction::from_polynomial(Polynomial::from_ints(&f, &[0, 0, 0, 1]));
        let c = x2.compose(&x3).unwrap();
        assert_eq!(c.num(), &Polynomial::from_ints(&f, &[0, 0, 0, 0, 0, 0, 1]));
        let k = RationalFunction::from_polynomial(Polynomial::one(&f));
        assert_eq!(x2.compose(&k).unwrap_err(), Error::ConstantInner);
    }

    #[test]
    fn evaluation_at_infinity_and_poles() {
        let f = f3();
        let inv = rf_make(Polynomial::one(&f), Polynomial::x(&f)).unwrap();
        let inf = ProjectivePoint::Infinity(f.clone());
        let zero = ProjectivePoint::Finite(f.zero());
        assert_eq!(inv.evaluate(&zero).unwrap(), inf);
        assert_eq!(inv.evaluate(&inf).unwrap(), zero);
        let mobius = rf_make(
            Polynomial::from_ints(&f, &[1, 2]),
            Polynomial::from_ints(&f, &[0, 1]),
        )
        .unwrap();
        assert_eq!(
            mobius.evaluate(&inf).unwrap(),
            ProjectivePoint::Finite(f.from_int(2))
        );
    }

    #[test]
    fn text_round_trip() {
        let f9 = make_field(3, 2).unwrap();
        let p = Polynomial::parse(&f9, "0,2,0,1").unwrap();
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.to_string(), "0,2,0,1");
        let r = RationalFunction::parse(&f9, "1,0,0,0,1,0 / 0,0,1,0").unwrap();
        assert_eq!(RationalFunction::parse(&f9, &r.to_string()).unwrap(), r);
        assert_eq!(Polynomial::zero(&f9).to_string(), "0,0");
        assert!(Polynomial::parse(&f9, "1,2,0").is_err());
    }
}
