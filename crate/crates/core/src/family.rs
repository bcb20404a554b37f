//! The exceptional family: Dickson polynomials of the second kind, the
//! function `f`, the Galois scene over `F_Q`, and the symbolic identities
//! relating them.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::{least_nonsquare, make_field, sqrt_in, EmbeddingMap, FieldElement, FieldSpec};
use crate::polyrat::{poly_gcd, rf_compose, rf_make, Polynomial, RationalFunction};

/// Parameters `(p, k, l)` together with every field and constant derived
/// from them.
#[derive(Clone, Debug)]
pub struct FamilyParams {
    pub p: u64,
    pub k: u32,
    pub l: u32,
    pub q: u64,
    pub r: u64,
    /// `Q = p^lcm(2k, l)`.
    pub big_q: u64,
    /// `d = [F_Q : F_q]`, the order of `q`-Frobenius on `F_Q`.
    pub d: u32,
    pub field_p: FieldSpec,
    pub field_q: FieldSpec,
    pub field_q2: FieldSpec,
    pub field_r: FieldSpec,
    pub field_big_q: FieldSpec,
    /// Nonsquare of `F_q`.
    pub a: FieldElement,
    /// Square root of `a` in `F_{q^2}`.
    pub sqrt_a: FieldElement,
    /// Nonsquare of `F_r`.
    pub zeta0: FieldElement,
    pub emb_p_big_q: EmbeddingMap,
    pub emb_q_q2: EmbeddingMap,
    pub emb_q_big_q: EmbeddingMap,
    pub emb_q2_big_q: EmbeddingMap,
    pub emb_r_big_q: EmbeddingMap,
}

fn ord2(n: u32) -> u32 {
    n.trailing_zeros()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Validates `(p, k, l)` and an optional `a` (ffield text encoding over
/// `F_q`), defaulting `a` to the least nonsquare of `F_q`.
pub fn validate_params(p: u64, k: u32, l: u32, a: Option<&str>) -> Result<FamilyParams> {
    if !crate::ffield::is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if k == 0 || l == 0 {
        return Err(Error::Hypothesis("k and l must be positive".into()));
    }
    if ord2(l) > ord2(k) {
        return Err(Error::Hypothesis(format!(
            "ord_2(l) = {} exceeds ord_2(k) = {}",
            ord2(l),
            ord2(k)
        )));
    }
    let m = 2 * k / gcd(2 * k, l) * l;
    let field_p = make_field(p, 1)?;
    let field_q = make_field(p, l)?;
    let field_q2 = make_field(p, 2 * l)?;
    let field_r = make_field(p, 2 * k)?;
    let field_big_q = make_field(p, m)?;
    let a = match a {
        None => least_nonsquare(&field_q),
        Some(text) => field_q.parse_element(text)?,
    };
    if a.is_zero() {
        return Err(Error::Hypothesis("a must be nonzero".into()));
    }
    if a.is_square()? {
        return Err(Error::Hypothesis(format!(
            "a = {a} is a square in {}",
            field_q.label()
        )));
    }
    let sqrt_a = sqrt_in(&a, &field_q2)?;
    let zeta0 = least_nonsquare(&field_r);
    let emb_q_q2 = EmbeddingMap::new(&field_q, &field_q2)?;
    let emb_q2_big_q = EmbeddingMap::new(&field_q2, &field_big_q)?;
    let emb_q_big_q = emb_q_q2.then(&emb_q2_big_q)?;
    let params = FamilyParams {
        p,
        k,
        l,
        q: field_q.size(),
        r: field_r.size(),
        big_q: field_big_q.size(),
        d: m / l,
        emb_p_big_q: EmbeddingMap::new(&field_p, &field_big_q)?,
        emb_r_big_q: EmbeddingMap::new(&field_r, &field_big_q)?,
        emb_q_q2,
        emb_q_big_q,
        emb_q2_big_q,
        field_p,
        field_q,
        field_q2,
        field_r,
        field_big_q,
        a,
        sqrt_a,
        zeta0,
    };
    Ok(params)
}

impl FamilyParams {
    /// Replaces `√a` by the other square root `-√a`.
    pub fn with_other_sqrt(mut self) -> FamilyParams {
        self.sqrt_a = -&self.sqrt_a;
        self
    }

    /// Replaces `ζ₀` by another nonsquare of `F_r`.
    pub fn with_zeta0(mut self, zeta0: FieldElement) -> Result<FamilyParams> {
        self.field_r.ensure_same(zeta0.field())?;
        if zeta0.is_zero() || zeta0.is_square()? {
            return Err(Error::Hypothesis(format!(
                "ζ₀ = {zeta0} is not a nonsquare"
            )));
        }
        self.zeta0 = zeta0;
        Ok(self)
    }

    /// `√a` inside `F_Q`.
    pub fn sqrt_a_ambient(&self) -> FieldElement {
        self.emb_q2_big_q
            .embed(&self.sqrt_a)
            .expect("sqrt_a lives in F_{q^2}")
    }

    /// `ζ₀` inside `F_Q`.
    pub fn zeta0_ambient(&self) -> FieldElement {
        self.emb_r_big_q
            .embed(&self.zeta0)
            .expect("zeta0 lives in F_r")
    }

    /// `deg f = (r^2 + r) / 2`.
    pub fn degree(&self) -> u64 {
        (self.r * self.r + self.r) / 2
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn lucas_binomial(n: u64, k: u64, p: u64) -> u64 {
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binomial(ni, ki, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn small_binomial(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u128, 1u128);
    for j in 0..k {
        num = num * ((n - j) as u128) % p as u128;
        den = den * ((j + 1) as u128) % p as u128;
    }
    let inv = pow_mod(den, p as u128 - 2, p as u128);
    (num * inv % p as u128) as u64
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `E_r(X, a) = sum_{i <= r/2} C(r-i, i) (-a)^i X^{r-2i}`.
pub fn dickson_e(r: u64, a: &FieldElement) -> Polynomial {
    let field = a.field();
    let p = field.p();
    let r = r as usize;
    let mut coeffs = vec![field.zero(); r + 1];
    let minus_a = -a;
    let mut power = field.one();
    for i in 0..=r / 2 {
        let c = lucas_binomial((r - i) as u64, i as u64, p);
        coeffs[r - 2 * i] = &field.from_int(c as i64) * &power;
        power = &power * &minus_a;
    }
    Polynomial::from_elements(field, &coeffs).expect("coefficients share a field")
}

/// `E_n` by the three-term recurrence `E_{n+1} = X E_n - a E_{n-1}`.
pub fn dickson_e_recurrence(r: u64, a: &FieldElement) -> Polynomial {
    let field = a.field();
    let x = Polynomial::x(field);
    let a_poly = Polynomial::constant(a);
    let (mut prev, mut cur) = (Polynomial::one(field), x.clone());
    if r == 0 {
        return prev;
    }
    for _ in 1..r {
        let next = &(&x * &cur) - &(&a_poly * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// [`dickson_e`] cross-checked against the recurrence.
pub fn dickson_e_checked(r: u64, a: &FieldElement) -> Result<Polynomial> {
    let e = dickson_e(r, a);
    if e != dickson_e_recurrence(r, a) {
        return Err(Error::IdentityFailed(format!(
            "E_{r} disagrees with its recurrence"
        )));
    }
    Ok(e)
}

/// Checks `E_r(X + a/X, a) = (X^{2r+2} - a^{r+1}) / (X^r (X^2 - a))`.
pub fn check_functional_equation(r: u64, a: &FieldElement) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroArgument("check_functional_equation"));
    }
    let field = a.field();
    let e = RationalFunction::from_polynomial(dickson_e_checked(r, a)?);
    let inner = rf_make(
        &Polynomial::monomial(&field.one(), 2) + &Polynomial::constant(a),
        Polynomial::x(field),
    )?;
    let lhs = rf_compose(&e, &inner)?;
    let r = r as usize;
    let num = &Polynomial::monomial(&field.one(), 2 * r + 2)
        - &Polynomial::constant(&a.pow(r as u64 + 1));
    let den = Polynomial::monomial(&field.one(), r + 2).checked_sub(&Polynomial::monomial(a, r))?;
    Ok(lhs == rf_make(num, den)?)
}

/// `E_r(X,a)^{(r+1)/2} / (X^2 - 4a)^{(r^2-r)/4}` for an arbitrary `a`.
fn f_for(r: u64, a: &FieldElement) -> Result<RationalFunction> {
    let field = a.field();
    let e = dickson_e_checked(r, a)?;
    let disc =
        &Polynomial::monomial(&field.one(), 2) - &Polynomial::constant(&(&field.from_int(4) * a));
    let num = e.pow(r.div_ceil(2));
    let den = disc.pow((r * r - r) / 4);
    if !poly_gcd(&e, &disc)?.is_one() {
        return Err(Error::IdentityFailed(
            "E_r(X,a) and X^2 - 4a share a factor".into(),
        ));
    }
    Ok(RationalFunction::from_coprime(num, den))
}

/// The function `f` over `F_q`.
pub fn build_f(params: &FamilyParams) -> Result<RationalFunction> {
    let f = f_for(params.r, &params.a)?;
    if f.degree() as u64 != params.degree() {
        return Err(Error::IdentityFailed(format!(
            "deg f = {}, expected {}",
            f.degree(),
            params.degree()
        )));
    }
    Ok(f)
}

/// Everything living over the ambient field `F_Q(u)`.
#[derive(Clone, Debug)]
pub struct GaloisScene {
    pub params: FamilyParams,
    /// `f` over `F_q`.
    pub f: RationalFunction,
    /// `f` with `a = 1`, over `F_p`.
    pub f0: RationalFunction,
    /// `v = u^{(r-1)/2} + u^{-(r-1)/2}` over `F_p`.
    pub v: RationalFunction,
    /// `t = (u^{r^2}-u)^{(r+1)/2} / (u^r-u)^{(r^2+1)/2}` over `F_p`.
    pub t: RationalFunction,
    /// `v' = √a v` over `F_Q`.
    pub v_prime: RationalFunction,
    /// `t' = √a^r t` over `F_Q`; as a function of `u` this is `g`.
    pub t_prime: RationalFunction,
    /// `(r-1)/2`, the exponent in `w = u^{(r-1)/2}`.
    pub w_power: u64,
}

impl GaloisScene {
    pub fn g(&self) -> &RationalFunction {
        &self.t_prime
    }

    /// `f` embedded into `F_Q`.
    pub fn f_ambient(&self) -> Result<RationalFunction> {
        self.f.embed(&self.params.emb_q_big_q)
    }
}

pub fn build_scene(params: &FamilyParams) -> Result<GaloisScene> {
    let fp = &params.field_p;
    let r = params.r;
    let w_power = (r - 1) / 2;
    let one = fp.one();
    let v = RationalFunction::from_coprime(
        &Polynomial::monomial(&one, (r - 1) as usize) + &Polynomial::one(fp),
        Polynomial::monomial(&one, w_power as usize),
    );
    let rr = r as usize;
    let big = Polynomial::binomial(fp, rr * rr, 1);
    let small = Polynomial::binomial(fp, rr, 1);
    // (u^{r^2}-u)/(u^r-u) is coprime to u^r-u since u^{r^2}-u is squarefree
    let h = big.div_exact(&small)?;
    let t = RationalFunction::from_coprime(h.pow(r.div_ceil(2)), small.pow((r * r - r) / 2));
    let sqrt_a = params.sqrt_a_ambient();
    let v_prime = v.embed(&params.emb_p_big_q)?.scale(&sqrt_a)?;
    let t_prime = t.embed(&params.emb_p_big_q)?.scale(&sqrt_a.pow(r))?;
    Ok(GaloisScene {
        f: build_f(params)?,
        f0: f_for(r, &fp.one())?,
        params: params.clone(),
        v,
        t,
        v_prime,
        t_prime,
        w_power,
    })
}

/// `f ∘ v' = t'` over `F_Q`.
pub fn check_semiconjugacy(scene: &GaloisScene) -> Result<bool> {
    semiconjugacy_holds(&scene.f, scene)
}

/// Semiconjugacy test for an arbitrary candidate `f` over `F_q`.
pub fn semiconjugacy_holds(f: &RationalFunction, scene: &GaloisScene) -> Result<bool> {
    let f = f.embed(&scene.params.emb_q_big_q)?;
    Ok(rf_compose(&f, &scene.v_prime)? == scene.t_prime)
}

/// Outcome of the invariance checks on `t` and `t'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TInvariance {
    /// `t(u + c) = t` for every `c` in `F_r`.
    pub translations: bool,
    /// `t(bu) = t` for every nonzero square `b` in `F_r`.
    pub scalings: bool,
    /// `t(1/u) = t`.
    pub inversion: bool,
    /// `σ` (coefficients to the `q`-th power, `u -> ζ₀u`) fixes `t'`.
    pub sigma_fixes_t_prime: bool,
    /// `σ` fixes `v'`.
    pub sigma_fixes_v_prime: bool,
}

impl TInvariance {
    pub fn all(&self) -> bool {
        self.translations
            && self.scalings
            && self.inversion
            && self.sigma_fixes_t_prime
            && self.sigma_fixes_v_prime
    }
}

fn linear(c1: &FieldElement, c0: &FieldElement) -> RationalFunction {
    RationalFunction::from_polynomial(&Polynomial::monomial(c1, 1) + &Polynomial::constant(c0))
}

pub fn check_t_invariance(scene: &GaloisScene) -> Result<TInvariance> {
    let params = &scene.params;
    // t is defined over F_p, so F_r-substitutions run over F_r
    let emb_p_r = EmbeddingMap::new(&params.field_p, &params.field_r)?;
    let t = scene.t.embed(&emb_p_r)?;
    let fr = &params.field_r;
    let one = fr.one();
    let elements: Vec<FieldElement> = fr.elements().collect();
    let translations = elements
        .par_iter()
        .filter(|c| !c.is_zero())
        .map(|c| Ok(rf_compose(&t, &linear(&one, c))? == t))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let mut scalings = true;
    for b in elements.iter().filter(|b| !b.is_zero()) {
        if b.is_square()? && rf_compose(&t, &linear(b, &fr.zero()))? != t {
            scalings = false;
        }
    }
    let inv = rf_make(Polynomial::one(fr), Polynomial::x(fr))?;
    let inversion = rf_compose(&t, &inv)? == t;
    let zeta = linear(&params.zeta0_ambient(), &params.field_big_q.zero());
    let sigma = |x: &RationalFunction| -> Result<bool> {
        Ok(rf_compose(&x.map_frobenius(params.l), &zeta)? == *x)
    };
    Ok(TInvariance {
        translations,
        scalings,
        inversion,
        sigma_fixes_t_prime: sigma(&scene.t_prime)?,
        sigma_fixes_v_prime: sigma(&scene.v_prime)?,
    })
}

/// Identities over `F_p` with `w = u^{(r-1)/2}`:
/// `E_r(v, 1) = (w^{2r+2} - 1) / (w^r (w^2 - 1))` and `v^2 - 4 = (w - 1/w)^2`.
pub fn check_w_identities(scene: &GaloisScene) -> Result<bool> {
    let fp = &scene.params.field_p;
    let r = scene.params.r;
    let one = fp.one();
    let w = RationalFunction::from_polynomial(Polynomial::monomial(&one, scene.w_power as usize));
    let e1 = RationalFunction::from_polynomial(dickson_e_checked(r, &one)?);
    let lhs = rf_compose(&e1, &scene.v)?;
    let rr = r as usize;
    let rhs_outer = rf_make(
        Polynomial::binomial(fp, 2 * rr + 2, 0),
        Polynomial::binomial(fp, rr + 2, rr),
    )?;
    let rhs = rf_compose(&rhs_outer, &w)?;
    let disc = RationalFunction::from_polynomial(Polynomial::from_ints(fp, &[-4, 0, 1]));
    let lhs2 = rf_compose(&disc, &scene.v)?;
    // (w - 1/w)^2 = (w^2 - 1)^2 / w^2
    let diff_sq = rf_make(
        Polynomial::from_ints(fp, &[-1, 0, 1]).pow(2),
        Polynomial::monomial(&one, 2),
    )?;
    let rhs2 = rf_compose(&diff_sq, &w)?;
    Ok(lhs == rhs && lhs2 == rhs2)
}

/// Scaling identities over `F_Q`: `E_r(X/√a, 1) = E_r(X, a)/√a^r`,
/// `(X/√a)^2 - 4 = (X^2 - 4a)/a`, `f_0(v) = t` and `f = √a^r f_0(X/√a)`.
pub fn check_scaling_identities(scene: &GaloisScene) -> Result<bool> {
    let params = &scene.params;
    let big = &params.field_big_q;
    let r = params.r;
    let b = params.sqrt_a_ambient();
    let a = &b * &b;
    let b_inv = b.inv()?;
    let x_over_b = linear(&b_inv, &big.zero());
    let e1 = RationalFunction::from_polynomial(dickson_e_checked(r, &big.one())?);
    let ea = RationalFunction::from_polynomial(dickson_e_checked(r, &a)?);
    let scaled_e = rf_compose(&e1, &x_over_b)? == ea.scale(&b.pow(r).inv()?)?;
    let disc1 = RationalFunction::from_polynomial(Polynomial::from_ints(big, &[-4, 0, 1]));
    let disc_a = RationalFunction::from_polynomial(
        &Polynomial::monomial(&big.one(), 2) - &Polynomial::constant(&(&big.from_int(4) * &a)),
    );
    let scaled_disc = rf_compose(&disc1, &x_over_b)? == disc_a.scale(&a.inv()?)?;
    let f0_v = rf_compose(&scene.f0, &scene.v)? == scene.t;
    let f0 = scene.f0.embed(&params.emb_p_big_q)?;
    let f_from_f0 = rf_compose(&f0, &x_over_b)?.scale(&b.pow(r))? == scene.f_ambient()?;
    Ok(scaled_e && scaled_disc && f0_v && f_from_f0)
}

/// The decomposition of `f` over `F_{q^2}` available when `r = 9`:
/// `outer = (X^3 + aX + ab)^5 / X^6`, `inner = (X^3 + ab) / (X^2 + bX + a)`
/// with `b = √a`. Fails unless `outer ∘ inner = f`.
pub fn decompose_r9(params: &FamilyParams) -> Result<(RationalFunction, RationalFunction)> {
    if params.r != 9 {
        return Err(Error::Hypothesis(format!(
            "the degree-15 by degree-3 decomposition needs r = 9, got r = {}",
            params.r
        )));
    }
    let f2 = &params.field_q2;
    let b = params.sqrt_a.clone();
    let a = params.emb_q_q2.embed(&params.a)?;
    let ab = &a * &b;
    let zero = f2.zero();
    let one = f2.one();
    let cubic = Polynomial::from_elements(f2, &[ab.clone(), a.clone(), zero.clone(), one.clone()])?;
    let outer = rf_make(cubic.pow(5), Polynomial::monomial(&one, 6))?;
    let inner = rf_make(
        Polynomial::from_elements(f2, &[ab, zero.clone(), zero, one.clone()])?,
        Polynomial::from_elements(f2, &[a, b, one])?,
    )?;
    let f = build_f(params)?.embed(&params.emb_q_q2)?;
    if rf_compose(&outer, &inner)? != f {
        return Err(Error::IdentityFailed("outer ∘ inner differs from f".into()));
    }
    Ok((outer, inner))
}

/// True iff the derivative of `f` is nonzero.
pub fn separability_check(f: &RationalFunction) -> Result<bool> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    Ok(!f.derivative_numerator().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::ProjectivePoint;

    fn params9() -> FamilyParams {
        validate_params(3, 1, 1, None).unwrap()
    }

    #[test]
    fn parameter_validation() {
        let p = params9();
        assert_eq!((p.q, p.r, p.big_q, p.d), (3, 9, 9, 2));
        assert_eq!(p.a.to_string(), "2");
        assert_eq!(&p.sqrt_a * &p.sqrt_a, p.emb_q_q2.embed(&p.a).unwrap());
        assert!(!p.zeta0.is_square().unwrap());
        let p5 = validate_params(5, 1, 1, None).unwrap();
        assert_eq!(
            (p5.q, p5.r, p5.big_q, p5.a.to_string().as_str()),
            (5, 25, 25, "2")
        );
        assert!(matches!(
            validate_params(3, 1, 2, None),
            Err(Error::Hypothesis(_))
        ));
        assert_eq!(
            validate_params(4, 1, 1, None).unwrap_err(),
            Error::NotOddPrime(4)
        );
        assert!(matches!(
            validate_params(3, 1, 1, Some("1")),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            validate_params(3, 1, 1, Some("0")),
            Err(Error::Hypothesis(_))
        ));
        let p3 = validate_params(3, 1, 3, None).unwrap();
        assert_eq!((p3.q, p3.r, p3.big_q, p3.d), (27, 9, 729, 2));
    }

    #[test]
    fn lucas_matches_pascal() {
        for p in [3u64, 5, 7] {
            let mut row = vec![1u64];
            for n in 0..60u64 {
                for (k, &c) in row.iter().enumerate() {
                    assert_eq!(lucas_binomial(n, k as u64, p), c % p);
                }
                let mut next = vec![1u64; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = (row[k - 1] + row[k]) % p;
                }
                row = next;
            }
        }
    }

    #[test]
    fn small_dickson_polynomials() {
        let f5 = make_field(5, 1).unwrap();
        let a = f5.from_int(2);
        assert_eq!(dickson_e(1, &a), Polynomial::x(&f5));
        assert_eq!(dickson_e(2, &a), Polynomial::from_ints(&f5, &[-2, 0, 1]));
        let e9 = dickson_e(9, &make_field(3, 1).unwrap().from_int(2));
        assert_eq!(e9.degree(), Some(9));
        assert!(e9.lead().unwrap().is_one());
    }

    #[test]
    fn functional_equation_small_r() {
        let f3 = make_field(3, 1).unwrap();
        for r in 1..12 {
            assert!(check_functional_equation(r, &f3.from_int(2)).unwrap());
        }
        assert!(check_functional_equation(3, &f3.zero()).is_err());
    }

    #[test]
    fn degrees_and_separability() {
        let params = params9();
        let f = build_f(&params).unwrap();
        assert_eq!(f.degree(), 45);
        assert!(separability_check(&f).unwrap());
        let f3 = &params.field_p;
        let x3 = RationalFunction::from_polynomial(Polynomial::from_ints(f3, &[0, 0, 0, 1]));
        assert!(!separability_check(&x3).unwrap());
        let x1 = RationalFunction::from_polynomial(Polynomial::from_ints(f3, &[1, 1]));
        assert!(separability_check(&x1).unwrap());
        let c = RationalFunction::from_polynomial(Polynomial::one(f3));
        assert_eq!(separability_check(&c).unwrap_err(), Error::ConstantFunction);
    }

    #[test]
    fn scene_r9() {
        let scene = build_scene(&params9()).unwrap();
        assert_eq!(scene.v_prime.degree(), 8);
        assert_eq!(scene.t_prime.degree(), 360);
        let one = ProjectivePoint::Finite(scene.params.field_big_q.one());
        let two_b = &scene.params.sqrt_a_ambient() * &scene.params.field_big_q.from_int(2);
        assert_eq!(
            scene.v_prime.evaluate(&one).unwrap(),
            ProjectivePoint::Finite(two_b)
        );
        assert!(check_semiconjugacy(&scene).unwrap());
        let bumped = rf_make(
            &scene.f.num().clone() + &Polynomial::one(&scene.params.field_q),
            scene.f.den().clone(),
        )
        .unwrap();
        assert!(!semiconjugacy_holds(&bumped, &scene).unwrap());
        assert!(check_t_invariance(&scene).unwrap().all());
        assert!(check_w_identities(&scene).unwrap());
        assert!(check_scaling_identities(&scene).unwrap());
    }

    #[test]
    fn r9_decomposition() {
        let params = params9();
        let (outer, inner) = decompose_r9(&params).unwrap();
        assert_eq!((outer.degree(), inner.degree()), (15, 3));
        let p5 = validate_params(5, 1, 1, None).unwrap();
        assert!(matches!(decompose_r9(&p5), Err(Error::Hypothesis(_))));
    }
}
