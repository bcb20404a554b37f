//! Fibers with multiplicities, branch loci, inertia groups with their lower
//! ramification filtration, and exhaustive permutation checks.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::{FamilyParams, GaloisScene};
use crate::ffield::{make_field, EmbeddingMap, FieldElement, FieldSpec};
use crate::monodromy::{GroupSet, Monodromy, SemilinearContext, SemilinearElement};
use crate::polyrat::{poly_gcd, Polynomial, ProjectivePoint, RationalFunction};

/// What a fiber part stands for: the roots of a squarefree factor, or `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartKind {
    Factor(Polynomial),
    Infinity,
}

/// `points` geometric points, each with ramification index `multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPart {
    pub kind: PartKind,
    pub points: usize,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub over: ProjectivePoint,
    pub parts: Vec<FiberPart>,
}

impl Fiber {
    /// `sum points * multiplicity`, which equals the degree of the map.
    pub fn weight(&self) -> u64 {
        self.parts
            .iter()
            .map(|p| p.points as u64 * p.multiplicity)
            .sum()
    }

    pub fn point_count(&self) -> usize {
        self.parts.iter().map(|p| p.points).sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.parts.iter().all(|p| p.multiplicity == 1)
    }

    /// Ramification index -> number of geometric points.
    pub fn index_counts(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for part in &self.parts {
            *out.entry(part.multiplicity).or_insert(0) += part.points;
        }
        out
    }

    /// The fiber's points that are rational over `map.target()`, found by
    /// scanning the target field, with their ramification indices.
    pub fn rational_points(&self, map: &EmbeddingMap) -> Result<Vec<(ProjectivePoint, u64)>> {
        let target = map.target();
        let mut out = Vec::new();
        for part in &self.parts {
            match &part.kind {
                PartKind::Infinity => {
                    out.push((ProjectivePoint::Infinity(target.clone()), part.multiplicity))
                }
                PartKind::Factor(factor) => {
                    let factor = factor.embed(map)?;
                    for x in target.elements() {
                        if factor.eval(&x)?.is_zero() {
                            out.push((ProjectivePoint::Finite(x), part.multiplicity));
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Fiber of `f` over `d`. Finite `d` must live in the field of `f`.
pub fn fiber_profile(f: &RationalFunction, d: &ProjectivePoint) -> Result<Fiber> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    f.field().ensure_same(d.field())?;
    let poly = match d {
        ProjectivePoint::Infinity(_) => f.den().clone(),
        ProjectivePoint::Finite(c) => f.num().checked_sub(&f.den().scale(c)?)?,
    };
    let mut parts = Vec::new();
    if poly.degree().unwrap_or(0) > 0 {
        for (factor, e) in poly.squarefree_decomposition()?.factors {
            parts.push(FiberPart {
                points: factor.degree().unwrap_or(0),
                kind: PartKind::Factor(factor),
                multiplicity: e,
            });
        }
    }
    let at_infinity = f.degree() - poly.degree().unwrap_or(0);
    if at_infinity > 0 {
        parts.push(FiberPart {
            kind: PartKind::Infinity,
            points: 1,
            multiplicity: at_infinity as u64,
        });
    }
    Ok(Fiber {
        over: d.clone(),
        parts,
    })
}

/// Critical values of `f`. Zeros and poles are handled through the
/// squarefree structure of numerator and denominator; the remaining
/// critical points are the roots of the derivative numerator once its
/// common factors with `num * den` are removed. Those roots are searched in
/// `probe_fields` (extensions of the field of `f`), and the first field that
/// holds all of them is used for the result; otherwise the result lives
/// over the field of `f`. Every returned point is certified by a ramified
/// fiber.
pub fn branch_locus(
    f: &RationalFunction,
    probe_fields: &[FieldSpec],
) -> Result<Vec<ProjectivePoint>> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let w = f.derivative_numerator();
    if w.is_zero() {
        return Err(Error::Inseparable);
    }
    let (num, den) = (f.num(), f.den());
    let nd = num * den;
    let mut w0 = w;
    loop {
        let g = poly_gcd(&w0, &nd)?;
        if g.degree() == Some(0) {
            break;
        }
        w0 = w0.div_exact(&g)?;
    }
    let (dn, dd) = (num.degree().unwrap_or(0), den.degree().unwrap_or(0));
    let mut values: Vec<ProjectivePoint> = Vec::new();
    let base = f.field().clone();
    let zero_branch = (!num.is_zero() && !num.is_squarefree()?) || dd > dn + 1;
    let inf_branch = !den.is_squarefree()? || dn > dd + 1;
    // map the two special values and the critical values into one field
    let (field, map) = if w0.degree().unwrap_or(0) == 0 {
        (base.clone(), None)
    } else {
        let needed = w0.degree().unwrap();
        let mut found = None;
        for probe in probe_fields {
            let map = EmbeddingMap::new(&base, probe)?;
            let w_ext = w0.embed(&map)?;
            let mut total = 0;
            for x in probe.elements() {
                if w_ext.eval(&x)?.is_zero() {
                    total += w_ext.multiplicity_at(&x)?;
                }
            }
            if total == needed {
                found = Some((probe.clone(), Some(map)));
                break;
            }
        }
        found.ok_or(Error::UnresolvedCriticalPoints(needed))?
    };
    let f_ext = match &map {
        Some(m) => f.embed(m)?,
        None => f.clone(),
    };
    if zero_branch {
        values.push(ProjectivePoint::Finite(field.zero()));
    }
    if inf_branch {
        values.push(ProjectivePoint::Infinity(field.clone()));
    }
    if dn == dd {
        // ∞ maps to a finite value; it is critical if that fiber gains weight at ∞
        let c = f_ext.evaluate(&ProjectivePoint::Infinity(field.clone()))?;
        if fiber_at_infinity_index(&f_ext, &c)? > 1 {
            values.push(c);
        }
    }
    if let Some(m) = &map {
        let w_ext = w0.embed(m)?;
        for x in field.elements() {
            if w_ext.eval(&x)?.is_zero() {
                values.push(f_ext.evaluate(&ProjectivePoint::Finite(x))?);
            }
        }
    }
    values.sort_by_key(point_key);
    values.dedup();
    for v in &values {
        if fiber_profile(&f_ext, v)?.is_unramified() {
            return Err(Error::IdentityFailed(format!("{v} is not a branch point")));
        }
    }
    Ok(values)
}

fn fiber_at_infinity_index(f: &RationalFunction, c: &ProjectivePoint) -> Result<u64> {
    Ok(fiber_profile(f, c)?
        .parts
        .iter()
        .find(|p| p.kind == PartKind::Infinity)
        .map_or(0, |p| p.multiplicity))
}

fn point_key(p: &ProjectivePoint) -> (u8, u64) {
    match p {
        ProjectivePoint::Finite(x) => (0, x.index()),
        ProjectivePoint::Infinity(_) => (1, 0),
    }
}

/// True iff `count` random fibers over values of `field` outside `{0, ∞}`
/// are unramified. Values come from a ChaCha stream with the given seed.
pub fn generic_fibers_unramified(
    f: &RationalFunction,
    field: &FieldSpec,
    count: usize,
    seed: u64,
) -> Result<bool> {
    let map = EmbeddingMap::new(f.field(), field)?;
    let f_ext = f.embed(&map)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let d = field.from_index(rng.gen_range(1..field.size()))?;
        if !fiber_profile(&f_ext, &ProjectivePoint::Finite(d))?.is_unramified() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fibers of `g = t'` over `∞` and `0` with the supporting identities.
#[derive(Clone, Debug)]
pub struct GRamProfile {
    pub over_infinity: Fiber,
    pub over_zero: Fiber,
    /// `(X^{r^2} - X) - (X^r - X) = (X^r - X)^r`.
    pub h_identity: bool,
    /// The unreduced derivative numerator equals
    /// `(r+1)/2 · (X^{r^2}-X)^{(r-1)/2} (X^r-X)^{(r^2-1)/2} (X^r-X)^r`.
    pub derivative_identity: bool,
    /// `X^{r^2} - X` vanishes on all of `F_{r^2}`, so the derivative
    /// numerator has no roots outside `F_{r^2}`.
    pub splits_in_fr2: bool,
    /// The poles of `g` are exactly `P^1(F_r)`.
    pub poles_are_p1_fr: bool,
    /// The zeros of `g` are exactly `F_{r^2} \ F_r`.
    pub zeros_are_fr2_minus_fr: bool,
}

impl GRamProfile {
    pub fn ok(&self, r: u64) -> bool {
        let inf: BTreeMap<u64, usize> = [((r * r - r) / 2, (r + 1) as usize)].into();
        let zero: BTreeMap<u64, usize> = [(r.div_ceil(2), (r * r - r) as usize)].into();
        self.over_infinity.index_counts() == inf
            && self.over_zero.index_counts() == zero
            && self.h_identity
            && self.derivative_identity
            && self.splits_in_fr2
            && self.poles_are_p1_fr
            && self.zeros_are_fr2_minus_fr
    }
}

pub fn g_ram_profile(scene: &GaloisScene) -> Result<GRamProfile> {
    let params = &scene.params;
    let g = scene.g();
    let big = &params.field_big_q;
    let over_infinity = fiber_profile(g, &ProjectivePoint::Infinity(big.clone()))?;
    let over_zero = fiber_profile(g, &ProjectivePoint::Finite(big.zero()))?;
    let fp = &params.field_p;
    let r = params.r as usize;
    let b = Polynomial::binomial(fp, r * r, 1);
    let s = Polynomial::binomial(fp, r, 1);
    let h = s.pow(r as u64);
    let h_identity = &b - &s == h;
    let nu = b.pow((r as u64).div_ceil(2));
    let du = s.pow((r * r) as u64 / 2 + 1);
    let w = &(&nu.derivative() * &du) - &(&nu * &du.derivative());
    let half = fp.from_int((r as i64 + 1) / 2);
    let expected = &(&b.pow((r as u64 - 1) / 2) * &s.pow((r * r) as u64 / 2)) * &h;
    let derivative_identity = w == expected.scale(&half)?;
    let fr2 = make_field(params.p, 4 * params.k)?;
    let emb = EmbeddingMap::new(fp, &fr2)?;
    let b2 = b.embed(&emb)?;
    let splits_in_fr2 = fr2
        .elements()
        .all(|x| b2.eval(&x).is_ok_and(|y| y.is_zero()));
    let emb_big = &params.emb_p_big_q;
    let s_big = s.embed(emb_big)?;
    let h_big = b.div_exact(&s)?.embed(emb_big)?;
    let factors_of = |fiber: &Fiber| -> Vec<Polynomial> {
        fiber
            .parts
            .iter()
            .filter_map(|p| match &p.kind {
                PartKind::Factor(f) => Some(f.clone()),
                PartKind::Infinity => None,
            })
            .collect()
    };
    let has_infinity = over_infinity
        .parts
        .iter()
        .any(|p| p.kind == PartKind::Infinity);
    let poles_are_p1_fr = has_infinity && factors_of(&over_infinity) == vec![s_big];
    let zeros_are_fr2_minus_fr = factors_of(&over_zero) == vec![h_big];
    Ok(GRamProfile {
        over_infinity,
        over_zero,
        h_identity,
        derivative_identity,
        splits_in_fr2,
        poles_are_p1_fr,
        zeros_are_fr2_minus_fr,
    })
}

/// A place of the `u`-line at which the filtration is computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Infinity,
    /// `u = α` with `α ∈ F_{r^2} \ F_r`.
    Quadratic(FieldElement),
}

impl Place {
    /// `u = α` for the least `α` of `F_{r^2}` outside `F_r`.
    pub fn default_quadratic(params: &FamilyParams) -> Result<Place> {
        let fr2 = make_field(params.p, 4 * params.k)?;
        let alpha = fr2
            .elements()
            .find(|x| x.pow(params.r) != *x)
            .expect("F_{r^2} is larger than F_r");
        Ok(Place::Quadratic(alpha))
    }

    pub fn describe(&self) -> String {
        match self {
            Place::Infinity => "u=inf over t'=inf".to_string(),
            Place::Quadratic(a) => format!("u={a} over t'=0"),
        }
    }
}

/// Lower-numbering ramification groups at one place.
#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub place: String,
    /// `|G_0|, |G_1|, ...` down to the first trivial group.
    pub group_orders: Vec<usize>,
    pub inertia: GroupSet,
    pub wild_part: GroupSet,
}

/// `v_∞(ρ(1/u) - 1/u)` for `ρ` fixing `∞`; `None` when `ρ` is the identity.
pub fn valuation_at_infinity(
    ctx: &SemilinearContext,
    rho: &SemilinearElement,
) -> Result<Option<u64>> {
    let field = ctx.field();
    let m = ctx.as_mobius(rho);
    let inv_u = RationalFunction::new(Polynomial::one(field), Polynomial::x(field))?;
    // ρ(1/u) = 1/M(u)
    let pulled = RationalFunction::new(m.den().clone(), m.num().clone())?;
    let diff = pulled.checked_sub(&inv_u)?;
    if diff.num().is_zero() {
        return Ok(None);
    }
    let v = diff.den().degree().unwrap_or(0) as i64 - diff.num().degree().unwrap_or(0) as i64;
    Ok(Some(v.max(0) as u64))
}

/// `v_α(ρ(u - α) - (u - α))` for `ρ` fixing `α`; `None` for the identity.
pub fn valuation_at(
    ctx: &SemilinearContext,
    rho: &SemilinearElement,
    alpha: &FieldElement,
) -> Result<Option<u64>> {
    let map = EmbeddingMap::new(ctx.field(), alpha.field())?;
    let m = ctx.as_mobius(rho).embed(&map)?;
    let diff = m.checked_sub(&RationalFunction::x(alpha.field()))?;
    if diff.num().is_zero() {
        return Ok(None);
    }
    Ok(Some(diff.num().multiplicity_at(alpha)? as u64))
}

fn fixes_alpha(
    ctx: &SemilinearContext,
    rho: &SemilinearElement,
    map: &EmbeddingMap,
    alpha: &FieldElement,
) -> Result<bool> {
    let [b, c, d, e] = ctx.entries(rho);
    let [b, c, d, e] = [
        map.embed(&b)?,
        map.embed(&c)?,
        map.embed(&d)?,
        map.embed(&e)?,
    ];
    let den = &(&d * alpha) + &e;
    if den.is_zero() {
        return Ok(false);
    }
    Ok((&(&b * alpha) + &c) == (alpha * &den))
}

/// Inertia group of `place` inside `G` and its filtration
/// `G_i = {ρ : v(ρ(π) - π) ≥ i + 1}` for the uniformizer `π` (`1/u` at `∞`,
/// `u - α` at `α`).
pub fn inertia_filtration(
    m: &Monodromy,
    params: &FamilyParams,
    place: &Place,
) -> Result<FiltrationReport> {
    let ctx = &m.ctx;
    let mut inertia = Vec::new();
    let mut valuations = Vec::new();
    match place {
        Place::Infinity => {
            for rho in m.g.elements() {
                if rho.mat[2] == 0 {
                    inertia.push(*rho);
                    valuations.push(valuation_at_infinity(ctx, rho)?);
                }
            }
        }
        Place::Quadratic(alpha) => {
            let fr2 = alpha.field();
            if fr2.p() != params.p || fr2.degree() != 4 * params.k || alpha.pow(params.r) == *alpha
            {
                return Err(Error::UnknownPlace(format!(
                    "{alpha} is not in F_(r^2) minus F_r"
                )));
            }
            let map = EmbeddingMap::new(ctx.field(), fr2)?;
            for rho in m.g.elements() {
                if fixes_alpha(ctx, rho, &map, alpha)? {
                    inertia.push(*rho);
                    valuations.push(valuation_at(ctx, rho, alpha)?);
                }
            }
        }
    }
    let mut group_orders = Vec::new();
    let mut wild = Vec::new();
    for i in 0.. {
        let members: Vec<SemilinearElement> = inertia
            .iter()
            .zip(&valuations)
            .filter(|(_, v)| v.is_none_or(|v| v > i))
            .map(|(x, _)| *x)
            .collect();
        group_orders.push(members.len());
        if i == 1 {
            wild = members.clone();
        }
        if members.len() == 1 {
            if i == 0 {
                wild = members;
            }
            break;
        }
    }
    Ok(FiltrationReport {
        place: place.describe(),
        group_orders,
        inertia: GroupSet::new(ctx, inertia)?,
        wild_part: GroupSet::new(ctx, wild)?,
    })
}

/// Both sides of `2|G| - 2 = sum_P sum_i (|G_i(P)| - 1)`; each report stands
/// for its `|G| / |G_0|` conjugate places.
pub fn riemann_hurwitz_sides(order_g: usize, reports: &[&FiltrationReport]) -> (usize, usize) {
    let rhs = reports
        .iter()
        .map(|rep| {
            let places = order_g / rep.group_orders[0];
            places * rep.group_orders.iter().map(|o| o - 1).sum::<usize>()
        })
        .sum();
    (2 * order_g - 2, rhs)
}

pub fn riemann_hurwitz_check(order_g: usize, reports: &[&FiltrationReport]) -> bool {
    let (lhs, rhs) = riemann_hurwitz_sides(order_g, reports);
    lhs == rhs
}

/// Result of [`permutation_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationReport {
    pub points: usize,
    pub bijection: bool,
    /// Hit count -> number of target points hit that often.
    pub histogram: BTreeMap<usize, usize>,
    pub max_hit: usize,
}

/// Evaluates `f` on all of `P^1(field)` and tallies how often each target
/// point is hit.
pub fn permutation_check(f: &RationalFunction, field: &FieldSpec) -> Result<PermutationReport> {
    let map = EmbeddingMap::new(f.field(), field)?;
    let f_ext = f.embed(&map)?;
    let size = field.size() as usize;
    let points = size + 1;
    let key = |p: ProjectivePoint| match p {
        ProjectivePoint::Finite(x) => x.index() as usize,
        ProjectivePoint::Infinity(_) => size,
    };
    let chunk = 4096;
    let hits = (0..points)
        .into_par_iter()
        .chunks(chunk)
        .map(|idx| -> Result<Vec<u32>> {
            let mut local = vec![0u32; points];
            for i in idx {
                let pt = if i == size {
                    ProjectivePoint::Infinity(field.clone())
                } else {
                    ProjectivePoint::Finite(field.from_index(i as u64)?)
                };
                local[key(f_ext.evaluate(&pt)?)] += 1;
            }
            Ok(local)
        })
        .try_reduce(
            || vec![0u32; points],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    let mut histogram = BTreeMap::new();
    for &h in &hits {
        *histogram.entry(h as usize).or_insert(0) += 1;
    }
    let max_hit = hits.iter().copied().max().unwrap_or(0) as usize;
    Ok(PermutationReport {
        points,
        bijection: histogram.len() == 1 && histogram.contains_key(&1),
        histogram,
        max_hit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{build_f, build_scene, validate_params};

    #[test]
    fn fibers_of_f_r9() {
        let params = validate_params(3, 1, 1, None).unwrap();
        let f = build_f(&params).unwrap();
        let fq = &params.field_q;
        let inf = fiber_profile(&f, &ProjectivePoint::Infinity(fq.clone())).unwrap();
        assert_eq!(inf.index_counts(), [(9, 1), (18, 2)].into());
        assert_eq!(inf.weight(), 45);
        let pts = inf.rational_points(&params.emb_q_q2).unwrap();
        let two_b = &params.sqrt_a * &params.field_q2.from_int(2);
        assert!(pts.contains(&(ProjectivePoint::Finite(two_b.clone()), 18)));
        assert!(pts.contains(&(ProjectivePoint::Finite(-&two_b), 18)));
        let zero = fiber_profile(&f, &ProjectivePoint::Finite(fq.zero())).unwrap();
        assert_eq!(zero.index_counts(), [(5, 9)].into());
    }

    #[test]
    fn x_squared() {
        let f5 = make_field(5, 1).unwrap();
        let x2 = RationalFunction::from_polynomial(Polynomial::from_ints(&f5, &[0, 0, 1]));
        let one = fiber_profile(&x2, &ProjectivePoint::Finite(f5.one())).unwrap();
        assert_eq!(one.index_counts(), [(1, 2)].into());
        let locus = branch_locus(&x2, &[]).unwrap();
        assert_eq!(
            locus,
            vec![
                ProjectivePoint::Finite(f5.zero()),
                ProjectivePoint::Infinity(f5.clone())
            ]
        );
        let perm = permutation_check(&x2, &f5).unwrap();
        assert!(!perm.bijection);
        assert_eq!(perm.histogram, [(0, 2), (1, 2), (2, 2)].into());
        assert_eq!(perm.max_hit, 2);
    }

    #[test]
    fn branch_locus_needs_probe_fields() {
        // x^3 + x over F_5: critical points are the roots of 3x^2 + 1
        let f5 = make_field(5, 1).unwrap();
        let f = RationalFunction::from_polynomial(Polynomial::from_ints(&f5, &[0, 1, 0, 1]));
        assert_eq!(
            branch_locus(&f, &[]).unwrap_err(),
            Error::UnresolvedCriticalPoints(2)
        );
        let f25 = make_field(5, 2).unwrap();
        let locus = branch_locus(&f, std::slice::from_ref(&f25)).unwrap();
        assert_eq!(locus.len(), 3);
        assert!(locus.contains(&ProjectivePoint::Infinity(f25)));
        let x5 = RationalFunction::from_polynomial(Polynomial::from_ints(&f5, &[0, 0, 0, 0, 0, 1]));
        assert_eq!(branch_locus(&x5, &[]).unwrap_err(), Error::Inseparable);
    }

    #[test]
    fn f_r9_branch_locus_and_permutation() {
        let params = validate_params(3, 1, 1, None).unwrap();
        let f = build_f(&params).unwrap();
        let fq = &params.field_q;
        assert_eq!(
            branch_locus(&f, &[]).unwrap(),
            vec![
                ProjectivePoint::Finite(fq.zero()),
                ProjectivePoint::Infinity(fq.clone())
            ]
        );
        for n in [1, 3] {
            let field = make_field(3, n).unwrap();
            let rep = permutation_check(&f, &field).unwrap();
            assert!(rep.bijection);
            assert_eq!(rep.histogram, [(1, rep.points)].into());
        }
        assert!(generic_fibers_unramified(&f, &params.field_q2, 10, 0).unwrap());
    }

    #[test]
    fn filtration_and_rh_r9() {
        let params = validate_params(3, 1, 1, None).unwrap();
        let m = Monodromy::new(&params).unwrap();
        let inf = inertia_filtration(&m, &params, &Place::Infinity).unwrap();
        assert_eq!(inf.group_orders, vec![36, 9, 1]);
        assert_eq!(inf.wild_part.order(), 9);
        let quad =
            inertia_filtration(&m, &params, &Place::default_quadratic(&params).unwrap()).unwrap();
        assert_eq!(quad.group_orders, vec![5, 1]);
        assert_eq!(riemann_hurwitz_sides(360, &[&inf, &quad]), (718, 718));
        let mut bad = inf.clone();
        bad.group_orders = vec![36, 9, 3, 1];
        assert!(!riemann_hurwitz_check(360, &[&bad, &quad]));
        let translation =
            m.g.elements()
                .iter()
                .find(|x| x.mat == [1, 1, 0, 1])
                .unwrap();
        assert_eq!(valuation_at_infinity(&m.ctx, translation).unwrap(), Some(2));
        let in_fr = Place::Quadratic(make_field(3, 4).unwrap().one());
        assert!(matches!(
            inertia_filtration(&m, &params, &in_fr),
            Err(Error::UnknownPlace(_))
        ));
    }

    #[test]
    fn g_profile_r9() {
        let params = validate_params(3, 1, 1, None).unwrap();
        let scene = build_scene(&params).unwrap();
        let prof = g_ram_profile(&scene).unwrap();
        assert!(prof.ok(9));
        assert_eq!(prof.over_infinity.point_count(), 10);
        assert_eq!(prof.over_zero.point_count(), 72);
    }
}
