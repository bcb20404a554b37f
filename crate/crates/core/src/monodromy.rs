//! Monodromy groups as explicit sets of semilinear fractional linear maps
//! over `F_r`, with coset actions, orbits, block systems and cores.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::ffield::{make_field, odd_prime_power, FieldElement, FieldSpec};
use crate::polyrat::{rf_make, Polynomial, RationalFunction};

/// `(frob, [b, c, d, e])`: the map `u -> (bu + c)/(du + e)` combined with
/// `frob` applications of `q`-Frobenius on coefficients. Matrix entries are
/// canonical `F_r` indices with the first nonzero entry equal to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemilinearElement {
    pub frob: u32,
    pub mat: [u64; 4],
}

/// The field `F_r` together with the Frobenius twist used by the group law.
#[derive(Clone, Debug)]
pub struct SemilinearContext {
    field: FieldSpec,
    /// `q`-Frobenius on `F_r` is `x -> x^{p^twist}`.
    twist: u32,
    /// Order of `q`-Frobenius on `F_Q`.
    d: u32,
}

impl SemilinearContext {
    pub fn new(params: &FamilyParams) -> SemilinearContext {
        SemilinearContext {
            field: params.field_r.clone(),
            twist: params.l % (2 * params.k),
            d: params.d,
        }
    }

    /// Context without Frobenius twist, for `PSL_2(r)` on its own.
    pub fn plain(r: u64) -> Result<SemilinearContext> {
        let (p, m) = odd_prime_power(r)
            .ok_or_else(|| Error::Hypothesis(format!("{r} is not an odd prime power")))?;
        Ok(SemilinearContext {
            field: make_field(p, m)?,
            twist: 0,
            d: 1,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn identity(&self) -> SemilinearElement {
        SemilinearElement {
            frob: 0,
            mat: [1, 0, 0, 1],
        }
    }

    /// Canonical element for a matrix given by field elements; fails on a
    /// singular matrix.
    pub fn element(&self, frob: u32, mat: [&FieldElement; 4]) -> Result<SemilinearElement> {
        let mut raw = [0u64; 4];
        for (slot, x) in raw.iter_mut().zip(mat) {
            self.field.ensure_same(x.field())?;
            *slot = x.raw();
        }
        let f = &self.field;
        if f.sub(f.mul(raw[0], raw[3]), f.mul(raw[1], raw[2])) == 0 {
            return Err(Error::Group("singular matrix".into()));
        }
        Ok(SemilinearElement {
            frob: frob % self.d,
            mat: self.canonical(raw),
        })
    }

    fn canonical(&self, m: [u64; 4]) -> [u64; 4] {
        let lead = *m.iter().find(|&&x| x != 0).expect("nonsingular");
        if lead == 1 {
            return m;
        }
        let inv = self.field.inv(lead);
        m.map(|x| self.field.mul(x, inv))
    }

    fn twist_mat(&self, m: [u64; 4], times: u32) -> [u64; 4] {
        let power = (self.twist * times) % self.field.degree();
        if power == 0 {
            return m;
        }
        m.map(|x| self.field.frobenius(x, power))
    }

    /// `(M1, i1)(M2, i2) = (M1 φ^{i1}(M2), i1 + i2)`.
    pub fn mul(&self, x: &SemilinearElement, y: &SemilinearElement) -> SemilinearElement {
        let f = &self.field;
        let [b1, c1, d1, e1] = x.mat;
        let [b2, c2, d2, e2] = self.twist_mat(y.mat, x.frob);
        let m = [
            f.add(f.mul(b1, b2), f.mul(c1, d2)),
            f.add(f.mul(b1, c2), f.mul(c1, e2)),
            f.add(f.mul(d1, b2), f.mul(e1, d2)),
            f.add(f.mul(d1, c2), f.mul(e1, e2)),
        ];
        SemilinearElement {
            frob: (x.frob + y.frob) % self.d,
            mat: self.canonical(m),
        }
    }

    /// `(M, i)^{-1} = (φ^{-i}(M^{-1}), -i)`.
    pub fn inverse(&self, x: &SemilinearElement) -> SemilinearElement {
        let f = &self.field;
        let [b, c, d, e] = x.mat;
        let adj = [e, f.neg(c), f.neg(d), b];
        let back = (self.d - x.frob) % self.d;
        SemilinearElement {
            frob: back,
            mat: self.canonical(self.twist_mat(adj, back)),
        }
    }

    pub fn pow(&self, x: &SemilinearElement, n: u64) -> SemilinearElement {
        (0..n).fold(self.identity(), |acc, _| self.mul(&acc, x))
    }

    /// Determinant of the canonical matrix.
    pub fn det(&self, x: &SemilinearElement) -> FieldElement {
        let f = &self.field;
        let [b, c, d, e] = x.mat;
        f.wrap(f.sub(f.mul(b, e), f.mul(c, d)))
    }

    /// True iff the determinant class is a square, i.e. the matrix part
    /// lies in `PSL_2(r)`.
    pub fn in_psl(&self, x: &SemilinearElement) -> bool {
        self.det(x).is_square().expect("nonsingular")
    }

    /// The Möbius map `(bu + c)/(du + e)` over `F_r`; the Frobenius part is
    /// ignored.
    pub fn as_mobius(&self, x: &SemilinearElement) -> RationalFunction {
        let f = &self.field;
        let [b, c, d, e] = x.mat.map(|v| f.wrap(v));
        let num = Polynomial::from_elements(f, &[c, b]).expect("same field");
        let den = Polynomial::from_elements(f, &[e, d]).expect("same field");
        rf_make(num, den).expect("nonzero denominator")
    }

    pub fn entries(&self, x: &SemilinearElement) -> [FieldElement; 4] {
        x.mat.map(|v| self.field.wrap(v))
    }
}

/// A finite group stored as its sorted element list.
#[derive(Clone, Debug)]
pub struct GroupSet {
    elements: Vec<SemilinearElement>,
    index: HashMap<SemilinearElement, usize>,
    generators: Vec<SemilinearElement>,
}

impl GroupSet {
    /// Builds the group from a candidate element set, choosing generators
    /// greedily in sorted order; fails unless the set is exactly the
    /// subgroup they generate.
    pub fn new(ctx: &SemilinearContext, elements: Vec<SemilinearElement>) -> Result<GroupSet> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let index: HashMap<SemilinearElement, usize> =
            elements.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        if !index.contains_key(&ctx.identity()) {
            return Err(Error::Group("identity missing".into()));
        }
        let mut generators = Vec::new();
        let mut reached = vec![false; elements.len()];
        reached[index[&ctx.identity()]] = true;
        let mut reached_count = 1;
        for i in 0..elements.len() {
            if reached[i] {
                continue;
            }
            generators.push(elements[i]);
            // re-close under all generators, starting from what is reached
            let mut queue: VecDeque<usize> = (0..elements.len()).filter(|&j| reached[j]).collect();
            while let Some(j) = queue.pop_front() {
                for g in &generators {
                    let y = ctx.mul(&elements[j], g);
                    match index.get(&y) {
                        None => return Err(Error::Group("element set is not closed".into())),
                        Some(&k) if !reached[k] => {
                            reached[k] = true;
                            reached_count += 1;
                            queue.push_back(k);
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        debug_assert_eq!(reached_count, elements.len());
        Ok(GroupSet {
            elements,
            index,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SemilinearElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[SemilinearElement] {
        &self.generators
    }

    pub fn contains(&self, x: &SemilinearElement) -> bool {
        self.index.contains_key(x)
    }

    pub fn position(&self, x: &SemilinearElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn is_subgroup_of(&self, other: &GroupSet) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }
}

/// `PSL_2(r)`: canonical matrices with square determinant, no Frobenius.
pub fn build_g(ctx: &SemilinearContext) -> Result<GroupSet> {
    let f = ctx.field();
    let size = f.size();
    let mut out = Vec::new();
    let square = |x: u64| x != 0 && f.wrap(x).is_square().expect("nonzero");
    for c in 0..size {
        for d in 0..size {
            for e in 0..size {
                if square(f.sub(e, f.mul(c, d))) {
                    out.push(SemilinearElement {
                        frob: 0,
                        mat: [1, c, d, e],
                    });
                }
            }
        }
    }
    for d in 0..size {
        if square(f.neg(d)) {
            for e in 0..size {
                out.push(SemilinearElement {
                    frob: 0,
                    mat: [0, 1, d, e],
                });
            }
        }
    }
    let g = GroupSet::new(ctx, out)?;
    let expected = (size * (size * size - 1) / 2) as usize;
    if g.order() != expected {
        return Err(Error::Group(format!(
            "|G| = {}, expected {expected}",
            g.order()
        )));
    }
    Ok(g)
}

/// Dihedral group of maps `u -> ζu` and `u -> ζ/u` with `ζ` a nonzero square.
pub fn build_h(ctx: &SemilinearContext, g: &GroupSet) -> Result<GroupSet> {
    let f = ctx.field();
    let zero = f.zero();
    let one = f.one();
    let mut out = Vec::new();
    for z in f.elements().filter(|z| !z.is_zero()) {
        if !z.is_square()? {
            continue;
        }
        out.push(ctx.element(0, [&z, &zero, &zero, &one])?);
        out.push(ctx.element(0, [&zero, &z, &one, &zero])?);
    }
    let h = GroupSet::new(ctx, out)?;
    if !h.is_subgroup_of(g) {
        return Err(Error::Group("H is not contained in PSL_2(r)".into()));
    }
    if !is_dihedral(ctx, &h) {
        return Err(Error::Group("H is not dihedral".into()));
    }
    Ok(h)
}

/// The rotations `u -> ζu` form a cyclic subgroup of index 2 inverted by
/// every reflection `u -> ζ/u`.
fn is_dihedral(ctx: &SemilinearContext, h: &GroupSet) -> bool {
    let (rot, refl): (Vec<_>, Vec<_>) = h.elements().iter().partition(|x| x.mat[1] == 0);
    if rot.len() * 2 != h.order() {
        return false;
    }
    let cyclic = rot.iter().any(|x| {
        (1..=rot.len() as u64).find(|&n| ctx.pow(x, n) == ctx.identity()) == Some(rot.len() as u64)
    });
    let inverted = refl.iter().all(|s| {
        rot.iter()
            .all(|x| ctx.mul(&ctx.mul(s, x), &ctx.inverse(s)) == ctx.inverse(x))
    });
    cyclic && inverted
}

/// `⟨σ⟩ X` as a set product.
fn extend_by(ctx: &SemilinearContext, sigma: &SemilinearElement, x: &GroupSet) -> Result<GroupSet> {
    let mut out = Vec::with_capacity(x.order() * ctx.d() as usize);
    let mut power = ctx.identity();
    for _ in 0..ctx.d() {
        out.extend(x.elements().iter().map(|g| ctx.mul(&power, g)));
        power = ctx.mul(&power, sigma);
    }
    GroupSet::new(ctx, out)
}

/// Left cosets `xJ` of a subgroup, each represented by its least element.
#[derive(Clone, Debug)]
pub struct CosetSpace<'a> {
    ambient: &'a GroupSet,
    subgroup: &'a GroupSet,
    ctx: SemilinearContext,
    representatives: Vec<SemilinearElement>,
    coset_of: Vec<usize>,
}

impl<'a> CosetSpace<'a> {
    pub fn new(
        ctx: &SemilinearContext,
        ambient: &'a GroupSet,
        subgroup: &'a GroupSet,
    ) -> Result<CosetSpace<'a>> {
        if !subgroup.is_subgroup_of(ambient) {
            return Err(Error::Group(
                "subgroup is not contained in the ambient group".into(),
            ));
        }
        let mut coset_of = vec![usize::MAX; ambient.order()];
        let mut representatives = Vec::new();
        for (i, x) in ambient.elements().iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(*x);
            for h in subgroup.elements() {
                let y = ambient.position(&ctx.mul(x, h)).expect("closed");
                coset_of[y] = c;
            }
        }
        Ok(CosetSpace {
            ambient,
            subgroup,
            ctx: ctx.clone(),
            representatives,
            coset_of,
        })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn representatives(&self) -> &[SemilinearElement] {
        &self.representatives
    }

    pub fn ambient(&self) -> &GroupSet {
        self.ambient
    }

    pub fn subgroup(&self) -> &GroupSet {
        self.subgroup
    }

    /// Index of the coset containing `x`.
    pub fn coset_index(&self, x: &SemilinearElement) -> Result<usize> {
        self.ambient
            .position(x)
            .map(|i| self.coset_of[i])
            .ok_or_else(|| Error::Group("element outside the ambient group".into()))
    }

    /// Image of coset `i` under left multiplication by `g`.
    pub fn act(&self, g: &SemilinearElement, i: usize) -> Result<usize> {
        self.coset_index(&self.ctx.mul(g, &self.representatives[i]))
    }

    /// The permutation of coset indices induced by `g`.
    pub fn permutation(&self, g: &SemilinearElement) -> Result<Vec<usize>> {
        (0..self.len()).map(|i| self.act(g, i)).collect()
    }
}

/// A partition of coset indices into orbits or blocks, ordered by least
/// member; each block is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<usize>>,
    pub acting_generators: Vec<SemilinearElement>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

pub fn orbits(gens: &[SemilinearElement], space: &CosetSpace) -> Result<OrbitPartition> {
    let perms: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| space.permutation(g))
        .collect::<Result<_>>()?;
    let n = space.len();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut block = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for perm in &perms {
                let y = perm[x];
                if !seen[y] {
                    seen[y] = true;
                    block.push(y);
                    queue.push_back(y);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    Ok(OrbitPartition {
        blocks,
        acting_generators: gens.to_vec(),
    })
}

/// Number of sets that are an orbit of both `h` and `j`.
pub fn common_orbit_count(h: &GroupSet, j: &GroupSet, space: &CosetSpace) -> Result<usize> {
    let oh = orbits(h.generators(), space)?;
    let oj = orbits(j.generators(), space)?;
    Ok(oh.blocks.iter().filter(|b| oj.blocks.contains(b)).count())
}

/// Verdict of [`primitivity_blocks`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// A nontrivial block system, blocks sorted by least member.
    Imprimitive(Vec<Vec<usize>>),
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }
}

/// Minimal block system in which `0` and `x` share a block.
fn minimal_blocks(perms: &[Vec<usize>], n: usize, x: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind((0..n).collect());
    let mut queue = vec![(0usize, x)];
    uf.0[x] = 0;
    while let Some((a, b)) = queue.pop() {
        for perm in perms {
            let (ga, gb) = (perm[a], perm[b]);
            let (ra, rb) = (uf.find(ga), uf.find(gb));
            if ra != rb {
                uf.0[ra.max(rb)] = ra.min(rb);
                queue.push((ga, gb));
            }
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        let root = uf.find(i);
        classes.entry(root).or_default().push(i);
    }
    let mut blocks: Vec<Vec<usize>> = classes.into_values().collect();
    blocks.sort();
    blocks
}

/// Primitivity of a transitive action; on failure returns the block system
/// generated by the first point `x` whose minimal block with `0` is proper.
pub fn primitivity_blocks(gens: &[SemilinearElement], space: &CosetSpace) -> Result<Primitivity> {
    if orbits(gens, space)?.len() != 1 {
        return Err(Error::Group("action is not transitive".into()));
    }
    let perms: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| space.permutation(g))
        .collect::<Result<_>>()?;
    let n = space.len();
    for x in 1..n {
        let blocks = minimal_blocks(&perms, n, x);
        if blocks.len() > 1 {
            return Ok(Primitivity::Imprimitive(blocks));
        }
    }
    Ok(Primitivity::Primitive)
}

/// Kernel of the action on the coset space: elements of the subgroup that
/// fix every coset.
pub fn core_of_subgroup(ctx: &SemilinearContext, space: &CosetSpace) -> Result<GroupSet> {
    let mut kernel = Vec::new();
    for x in space.subgroup().elements() {
        if space
            .permutation(x)?
            .iter()
            .enumerate()
            .all(|(i, &y)| i == y)
        {
            kernel.push(*x);
        }
    }
    GroupSet::new(ctx, kernel)
}

/// `G`, `H`, `σ`, `A = ⟨σ⟩G` and `J = ⟨σ⟩H` for a parameter set.
#[derive(Clone, Debug)]
pub struct Monodromy {
    pub ctx: SemilinearContext,
    pub g: GroupSet,
    pub h: GroupSet,
    pub sigma: SemilinearElement,
    pub a: GroupSet,
    pub j: GroupSet,
}

pub fn build_sigma_a_j(
    ctx: &SemilinearContext,
    params: &FamilyParams,
    g: &GroupSet,
    h: &GroupSet,
) -> Result<(SemilinearElement, GroupSet, GroupSet)> {
    let f = ctx.field();
    let (zero, one) = (f.zero(), f.one());
    let sigma = ctx.element(1, [&params.zeta0, &zero, &zero, &one])?;
    let a = extend_by(ctx, &sigma, g)?;
    let j = extend_by(ctx, &sigma, h)?;
    let d = ctx.d() as usize;
    if a.order() != g.order() * d || j.order() != h.order() * d {
        return Err(Error::Group(format!(
            "|A| = {}, |J| = {} do not match d = {d}",
            a.order(),
            j.order()
        )));
    }
    Ok((sigma, a, j))
}

impl Monodromy {
    pub fn new(params: &FamilyParams) -> Result<Monodromy> {
        let ctx = SemilinearContext::new(params);
        let g = build_g(&ctx)?;
        let h = build_h(&ctx, &g)?;
        let (sigma, a, j) = build_sigma_a_j(&ctx, params, &g, &h)?;
        Ok(Monodromy {
            ctx,
            g,
            h,
            sigma,
            a,
            j,
        })
    }

    /// The coset space `A/J`.
    pub fn lambda(&self) -> Result<CosetSpace<'_>> {
        CosetSpace::new(&self.ctx, &self.a, &self.j)
    }

    /// The coset space `G/H`.
    pub fn g_mod_h(&self) -> Result<CosetSpace<'_>> {
        CosetSpace::new(&self.ctx, &self.g, &self.h)
    }
}

/// Structural facts about `G ⊴ A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAudit {
    /// Conjugates of generators of `G` by generators of `A` stay in `G`.
    pub g_normal_in_a: bool,
    /// Least `j > 0` with `σ^j ∈ G`.
    pub sigma_order_mod_g: u32,
    /// `A/G` is generated by the image of `σ` and has order `d`.
    pub quotient_cyclic_of_order_d: bool,
    /// `|A| = [A : J] |J|`.
    pub orbit_stabilizer: bool,
}

impl GroupAudit {
    pub fn ok(&self) -> bool {
        self.g_normal_in_a && self.quotient_cyclic_of_order_d && self.orbit_stabilizer
    }
}

pub fn group_audit(m: &Monodromy) -> Result<GroupAudit> {
    let ctx = &m.ctx;
    let g_normal_in_a = m.a.generators().iter().all(|x| {
        let xi = ctx.inverse(x);
        m.g.generators()
            .iter()
            .all(|g| m.g.contains(&ctx.mul(&ctx.mul(x, g), &xi)))
    });
    let mut power = m.sigma;
    let mut sigma_order_mod_g = 1;
    while !m.g.contains(&power) {
        power = ctx.mul(&power, &m.sigma);
        sigma_order_mod_g += 1;
    }
    let d = ctx.d();
    let quotient_cyclic_of_order_d =
        sigma_order_mod_g == d && m.a.order() == m.g.order() * d as usize;
    let lambda = m.lambda()?;
    Ok(GroupAudit {
        g_normal_in_a,
        sigma_order_mod_g,
        quotient_cyclic_of_order_d,
        orbit_stabilizer: m.a.order() == lambda.len() * m.j.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::validate_params;
    use crate::polyrat::rf_compose;

    fn mono9() -> Monodromy {
        Monodromy::new(&validate_params(3, 1, 1, None).unwrap()).unwrap()
    }

    #[test]
    fn orders_r9() {
        let m = mono9();
        assert_eq!(
            (m.g.order(), m.h.order(), m.a.order(), m.j.order()),
            (360, 8, 720, 16)
        );
        assert!(m.g.elements().iter().all(|x| m.ctx.in_psl(x)));
        assert!(m.g.contains(&m.ctx.mul(&m.sigma, &m.sigma)));
        assert!(!m.g.contains(&m.sigma));
    }

    #[test]
    fn group_law_inverse_and_associativity() {
        let m = mono9();
        let ctx = &m.ctx;
        let els = m.a.elements();
        for (i, x) in els.iter().enumerate().step_by(37) {
            assert_eq!(ctx.mul(x, &ctx.inverse(x)), ctx.identity());
            assert_eq!(ctx.mul(&ctx.inverse(x), x), ctx.identity());
            let y = &els[(i * 7 + 3) % els.len()];
            let z = &els[(i * 13 + 5) % els.len()];
            assert_eq!(ctx.mul(&ctx.mul(x, y), z), ctx.mul(x, &ctx.mul(y, z)));
        }
    }

    #[test]
    fn cosets_orbits_and_core_r9() {
        let m = mono9();
        let lambda = m.lambda().unwrap();
        assert_eq!(lambda.len(), 45);
        assert_eq!(orbits(m.a.generators(), &lambda).unwrap().len(), 1);
        assert_eq!(orbits(m.g.generators(), &lambda).unwrap().len(), 1);
        assert_eq!(orbits(&[], &lambda).unwrap().len(), 45);
        assert_eq!(common_orbit_count(&m.h, &m.j, &lambda).unwrap(), 1);
        let h_orbits = orbits(m.h.generators(), &lambda).unwrap();
        assert!(h_orbits.blocks.contains(&vec![0]));
        assert!(common_orbit_count(&m.h, &m.h, &lambda).unwrap() > 1);
        assert_eq!(core_of_subgroup(&m.ctx, &lambda).unwrap().order(), 1);
        let whole = CosetSpace::new(&m.ctx, &m.a, &m.a).unwrap();
        assert_eq!(core_of_subgroup(&m.ctx, &whole).unwrap().order(), 720);
    }

    #[test]
    fn primitivity_r9() {
        let m = mono9();
        let gh = m.g_mod_h().unwrap();
        assert_eq!(gh.len(), 45);
        match primitivity_blocks(m.g.generators(), &gh).unwrap() {
            Primitivity::Imprimitive(blocks) => {
                assert_eq!(blocks.len(), 15);
                assert!(blocks.iter().all(|b| b.len() == 3));
            }
            Primitivity::Primitive => panic!("G/H should be imprimitive at r = 9"),
        }
        let lambda = m.lambda().unwrap();
        assert!(primitivity_blocks(m.a.generators(), &lambda)
            .unwrap()
            .is_primitive());
        let h_only = primitivity_blocks(m.h.generators(), &lambda);
        assert!(matches!(h_only, Err(Error::Group(_))));
    }

    #[test]
    fn audit_r9() {
        let audit = group_audit(&mono9()).unwrap();
        assert!(audit.ok());
        assert_eq!(audit.sigma_order_mod_g, 2);
    }

    #[test]
    fn h_fixes_v() {
        let params = validate_params(3, 1, 1, None).unwrap();
        let m = Monodromy::new(&params).unwrap();
        let fr = &params.field_r;
        let one = fr.one();
        let v = rf_make(
            &Polynomial::monomial(&one, 8) + &Polynomial::one(fr),
            Polynomial::monomial(&one, 4),
        )
        .unwrap();
        for x in m.h.elements() {
            assert_eq!(rf_compose(&v, &m.ctx.as_mobius(x)).unwrap(), v);
        }
    }

    #[test]
    fn plain_context() {
        assert!(SemilinearContext::plain(12).is_err());
        let ctx = SemilinearContext::plain(5).unwrap();
        assert_eq!(build_g(&ctx).unwrap().order(), 60);
    }
}
