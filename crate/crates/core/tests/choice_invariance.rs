//! Verdicts must not depend on which square root of `a` or which nonsquare
//! `ζ₀` of `F_r` is picked.

use excrat::family::{
    build_scene, check_scaling_identities, check_semiconjugacy, check_t_invariance,
    check_w_identities, decompose_r9, validate_params, FamilyParams,
};
use excrat::monodromy::{common_orbit_count, core_of_subgroup, primitivity_blocks, Monodromy};
use excrat::polyrat::ProjectivePoint;
use excrat::ramify::{inertia_filtration, Place};

#[derive(Debug, PartialEq, Eq)]
struct Verdicts {
    semiconjugacy: bool,
    t_invariance: bool,
    w_identities: bool,
    scaling: bool,
    decomposition: Option<bool>,
    orders: [usize; 4],
    common_orbits: usize,
    g_on_gh_primitive: bool,
    a_on_aj_primitive: bool,
    core: usize,
    filtrations: Vec<Vec<usize>>,
}

fn verdicts(params: &FamilyParams) -> Verdicts {
    let scene = build_scene(params).unwrap();
    let m = Monodromy::new(params).unwrap();
    let lambda = m.lambda().unwrap();
    let gh = m.g_mod_h().unwrap();
    let places = [Place::Infinity, Place::default_quadratic(params).unwrap()];
    Verdicts {
        semiconjugacy: check_semiconjugacy(&scene).unwrap(),
        t_invariance: check_t_invariance(&scene).unwrap().all(),
        w_identities: check_w_identities(&scene).unwrap(),
        scaling: check_scaling_identities(&scene).unwrap(),
        decomposition: (params.r == 9).then(|| decompose_r9(params).is_ok()),
        orders: [m.g.order(), m.h.order(), m.a.order(), m.j.order()],
        common_orbits: common_orbit_count(&m.h, &m.j, &lambda).unwrap(),
        g_on_gh_primitive: primitivity_blocks(m.g.generators(), &gh)
            .unwrap()
            .is_primitive(),
        a_on_aj_primitive: primitivity_blocks(m.a.generators(), &lambda)
            .unwrap()
            .is_primitive(),
        core: core_of_subgroup(&m.ctx, &lambda).unwrap().order(),
        filtrations: places
            .iter()
            .map(|pl| inertia_filtration(&m, params, pl).unwrap().group_orders)
            .collect(),
    }
}

#[test]
fn other_square_root_gives_same_verdicts_at_r9() {
    let base = validate_params(3, 1, 1, None).unwrap();
    let reference = verdicts(&base);
    assert!(reference.semiconjugacy && reference.t_invariance && reference.scaling);
    assert_eq!(reference.decomposition, Some(true));
    let flipped = base.clone().with_other_sqrt();
    assert_ne!(flipped.sqrt_a, base.sqrt_a);
    assert_eq!(verdicts(&flipped), reference);
}

#[test]
fn every_nonsquare_zeta0_gives_same_verdicts_at_r9() {
    let base = validate_params(3, 1, 1, None).unwrap();
    let reference = verdicts(&base);
    let mut tried = 0;
    for z in base.field_r.elements().filter(|z| !z.is_zero()) {
        if z.is_square().unwrap() {
            assert!(base.clone().with_zeta0(z).is_err());
            continue;
        }
        let params = base.clone().with_zeta0(z).unwrap();
        assert_eq!(verdicts(&params), reference);
        tried += 1;
    }
    assert_eq!(tried, 4);
}

#[test]
fn other_square_root_keeps_semiconjugacy_at_r25() {
    let base = validate_params(5, 1, 1, None).unwrap();
    let flipped = base.with_other_sqrt();
    let scene = build_scene(&flipped).unwrap();
    assert!(check_semiconjugacy(&scene).unwrap());
    let u = ProjectivePoint::Infinity(flipped.field_big_q.clone());
    assert!(scene.t_prime.evaluate(&u).unwrap().is_infinity());
}
