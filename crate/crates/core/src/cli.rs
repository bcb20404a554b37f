//! Command-line suites and their machine-readable reports.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::{
    build_f, build_scene, check_functional_equation, check_scaling_identities, check_semiconjugacy,
    check_t_invariance, check_w_identities, decompose_r9, dickson_e_checked, separability_check,
    validate_params, FamilyParams, GaloisScene,
};
use crate::ffield::{make_field, FieldSpec};
use crate::monodromy::{
    common_orbit_count, core_of_subgroup, group_audit, orbits, primitivity_blocks, Monodromy,
    Primitivity,
};
use crate::polyrat::ProjectivePoint;
use crate::ramify::{
    branch_locus, fiber_profile, g_ram_profile, generic_fibers_unramified, inertia_filtration,
    permutation_check, riemann_hurwitz_sides, valuation_at_infinity, Fiber, Place,
};

/// Largest `r` accepted without `--force`.
pub const MAX_R: u64 = 100;
/// Largest field for `perm` accepted without `--force`.
pub const MAX_PERM_FIELD: u64 = 10_000_000;
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "excrat",
    version,
    about = "Exceptional rational functions over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Build f and the scene over F_Q and print them
    Build(CommonArgs),
    /// Check the symbolic identities
    Identity(CommonArgs),
    /// Check that f permutes P^1(F_{q^n})
    Perm(CommonArgs),
    /// Fibers, branch locus, ramification filtrations, Riemann-Hurwitz
    Ramify(CommonArgs),
    /// Monodromy groups, coset action, primitivity, core
    Monodromy(CommonArgs),
    /// Every suite
    All(CommonArgs),
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct CommonArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// Nonsquare a of F_q as comma-separated residues
    #[arg(long)]
    pub a: Option<String>,
    /// Extension degrees for perm, comma-separated
    #[arg(long, value_delimiter = ',', default_value = "1,3")]
    pub n: Vec<u32>,
    /// Emit JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Worker threads for independent checks
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Allow parameters beyond desk scale
    #[arg(long)]
    pub force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Section {
    pub name: String,
    pub status: Status,
    pub payload: Value,
}

impl Section {
    fn new(name: &str, status: Status, payload: Value) -> Section {
        Section {
            name: name.to_string(),
            status,
            payload,
        }
    }

    fn check(name: &str, ok: bool, payload: Value) -> Section {
        Section::new(name, Status::from_bool(ok), payload)
    }
}

/// Output of one suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub sections: Vec<Section>,
    pub summary: Value,
}

/// Output of a command: one or more suites in a fixed order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub params: Value,
    pub suites: Vec<SuiteReport>,
    pub ok: bool,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites
            .iter()
            .flat_map(|s| &s.sections)
            .all(|s| s.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("excrat {} {}\n", self.command, compact(&self.params));
        for suite in &self.suites {
            out.push_str(&format!("== {}\n", suite.suite));
            for s in &suite.sections {
                out.push_str(&format!(
                    "{} {}: {}\n",
                    s.status.label(),
                    s.name,
                    compact(&s.payload)
                ));
            }
            out.push_str(&format!("summary: {}\n", compact(&suite.summary)));
        }
        let (pass, fail) =
            self.suites
                .iter()
                .flat_map(|s| &s.sections)
                .fold((0, 0), |(p, f), s| match s.status {
                    Status::Pass => (p + 1, f),
                    Status::Fail => (p, f + 1),
                    Status::Info => (p, f),
                });
        out.push_str(&format!("{pass} passed, {fail} failed\n"));
        out
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(&abbreviate(v)).expect("value serializes")
}

/// Shortens long strings (polynomial encodings) for text output.
fn abbreviate(v: &Value) -> Value {
    const LIMIT: usize = 160;
    match v {
        Value::String(s) if s.len() > LIMIT => {
            Value::String(format!("{}... ({} chars)", &s[..LIMIT], s.len()))
        }
        Value::Array(items) => Value::Array(items.iter().map(abbreviate).collect()),
        Value::Object(map) => Value::Object(
            map.iter()
                .map(|(k, x)| (k.clone(), abbreviate(x)))
                .collect(),
        ),
        other => other.clone(),
    }
}

const SUITES: [&str; 5] = ["build", "identity", "perm", "ramify", "monodromy"];

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Build(a)
            | Command::Identity(a)
            | Command::Perm(a)
            | Command::Ramify(a)
            | Command::Monodromy(a)
            | Command::All(a) => a,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Build(_) => "build",
            Command::Identity(_) => "identity",
            Command::Perm(_) => "perm",
            Command::Ramify(_) => "ramify",
            Command::Monodromy(_) => "monodromy",
            Command::All(_) => "all",
        }
    }

    fn suites(&self) -> Vec<&'static str> {
        match self {
            Command::All(_) => SUITES.to_vec(),
            other => vec![other.name()],
        }
    }
}

/// Validates parameters, including the desk-scale guards.
pub fn params_for(args: &CommonArgs) -> Result<FamilyParams> {
    if !crate::ffield::is_odd_prime(args.p) {
        return Err(Error::NotOddPrime(args.p));
    }
    let r = (args.p as u128).checked_pow(2 * args.k);
    if !args.force && r.is_none_or(|r| r > MAX_R as u128) {
        return Err(Error::Hypothesis(format!(
            "r = p^(2k) exceeds {MAX_R}; pass --force to proceed"
        )));
    }
    validate_params(args.p, args.k, args.l, args.a.as_deref())
}

/// Runs a command. Parameter problems are returned as errors; failed checks
/// are reported in the sections.
pub fn run(command: &Command) -> Result<Report> {
    let args = command.args();
    let params = params_for(args)?;
    if command.suites().contains(&"perm") {
        for &n in &args.n {
            if n == 0 {
                return Err(Error::Hypothesis(
                    "extension degrees n must be positive".into(),
                ));
            }
            let size = (params.q as u128).checked_pow(n);
            if !args.force && size.is_none_or(|s| s > MAX_PERM_FIELD as u128) {
                return Err(Error::Hypothesis(format!(
                    "F_(q^{n}) exceeds {MAX_PERM_FIELD} elements; pass --force to proceed"
                )));
            }
        }
    }
    let run_all = || -> Result<Vec<SuiteReport>> {
        command
            .suites()
            .par_iter()
            .map(|suite| run_suite(suite, &params, args))
            .collect()
    };
    let suites = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Hypothesis(format!("thread pool: {e}")))?
            .install(run_all)?,
        None => run_all()?,
    };
    let mut report = Report {
        schema: SCHEMA,
        command: command.name().to_string(),
        params: params_json(&params),
        suites,
        ok: false,
    };
    report.ok = report.passed();
    Ok(report)
}

fn params_json(params: &FamilyParams) -> Value {
    json!({
        "p": params.p,
        "k": params.k,
        "l": params.l,
        "q": params.q,
        "r": params.r,
        "Q": params.big_q,
        "a": params.a.to_string(),
    })
}

fn run_suite(suite: &str, params: &FamilyParams, args: &CommonArgs) -> Result<SuiteReport> {
    let (sections, summary) = match suite {
        "build" => build_suite(params)?,
        "identity" => identity_suite(params)?,
        "perm" => perm_suite(params, &args.n)?,
        "ramify" => ramify_suite(params)?,
        "monodromy" => monodromy_suite(params)?,
        other => unreachable!("unknown suite {other}"),
    };
    Ok(SuiteReport {
        suite: suite.to_string(),
        sections,
        summary,
    })
}

type SuiteOutput = (Vec<Section>, Value);

fn field_json(field: &FieldSpec) -> Value {
    json!({"field": field.label(), "modulus": field.modulus()})
}

fn build_suite(params: &FamilyParams) -> Result<SuiteOutput> {
    let scene = build_scene(params)?;
    let deg_f = scene.f.degree() as u64;
    let sections = vec![
        Section::new(
            "fields",
            Status::Info,
            json!({
                "F_q": field_json(&params.field_q),
                "F_q2": field_json(&params.field_q2),
                "F_r": field_json(&params.field_r),
                "F_Q": field_json(&params.field_big_q),
                "sqrt_a": params.sqrt_a.to_string(),
                "zeta0": params.zeta0.to_string(),
            }),
        ),
        Section::check(
            "degree_f",
            deg_f == params.degree(),
            json!({"deg_f": deg_f, "expected": params.degree()}),
        ),
        Section::check(
            "degree_tower",
            scene.t_prime.degree() == scene.f.degree() * scene.v_prime.degree(),
            json!({"deg_v_prime": scene.v_prime.degree(), "deg_t_prime": scene.t_prime.degree()}),
        ),
        Section::new(
            "scene",
            Status::Info,
            json!({
                "f": scene.f.to_string(),
                "v_prime": scene.v_prime.to_string(),
                "t_prime": scene.t_prime.to_string(),
            }),
        ),
    ];
    let mut summary = params_json(params);
    summary["deg_f"] = json!(deg_f);
    Ok((sections, summary))
}

fn identity_suite(params: &FamilyParams) -> Result<SuiteOutput> {
    let scene = build_scene(params)?;
    let mut sections = Vec::new();
    let r = params.r;
    let recurrence = dickson_e_checked(r, &params.a).is_ok();
    sections.push(Section::check(
        "dickson_recurrence",
        recurrence,
        json!({"r": r}),
    ));
    let fe = check_functional_equation(r, &params.a)?;
    sections.push(Section::check(
        "functional_equation",
        fe,
        json!({"r": r, "a": params.a.to_string()}),
    ));
    sections.push(Section::check(
        "semiconjugacy",
        check_semiconjugacy(&scene)?,
        json!({"deg_t_prime": scene.t_prime.degree()}),
    ));
    let inv = check_t_invariance(&scene)?;
    sections.push(Section::check(
        "t_invariance",
        inv.all(),
        json!({
            "translations": inv.translations,
            "scalings": inv.scalings,
            "inversion": inv.inversion,
            "sigma_fixes_t_prime": inv.sigma_fixes_t_prime,
            "sigma_fixes_v_prime": inv.sigma_fixes_v_prime,
        }),
    ));
    sections.push(Section::check(
        "w_identities",
        check_w_identities(&scene)?,
        json!({"w_power": scene.w_power}),
    ));
    sections.push(Section::check(
        "scaling_identities",
        check_scaling_identities(&scene)?,
        Value::Null,
    ));
    if r == 9 {
        let section = match decompose_r9(params) {
            Ok((outer, inner)) => Section::check(
                "decomposition_r9",
                outer.degree() * inner.degree() == scene.f.degree(),
                json!({"deg_outer": outer.degree(), "deg_inner": inner.degree()}),
            ),
            Err(Error::IdentityFailed(msg)) => {
                Section::check("decomposition_r9", false, json!(msg))
            }
            Err(e) => return Err(e),
        };
        sections.push(section);
    }
    sections.push(Section::check(
        "separability",
        separability_check(&scene.f)?,
        Value::Null,
    ));
    let summary: BTreeMap<String, bool> = sections
        .iter()
        .map(|s| (s.name.clone(), s.status == Status::Pass))
        .collect();
    Ok((sections, json!(summary)))
}

fn perm_suite(params: &FamilyParams, ns: &[u32]) -> Result<SuiteOutput> {
    let f = build_f(params)?;
    let mut sections = Vec::new();
    let mut rows = Vec::new();
    for &n in ns {
        let field = make_field(params.p, params.l * n)?;
        let rep = permutation_check(&f, &field)?;
        let row = json!({
            "n": n,
            "points": rep.points,
            "bijection": rep.bijection,
            "max_hit": rep.max_hit,
        });
        let mut payload = row.clone();
        payload["histogram"] = json!(rep
            .histogram
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect::<BTreeMap<String, usize>>());
        // only odd n carries an expected verdict
        let status = if n % 2 == 1 {
            Status::from_bool(rep.bijection)
        } else {
            Status::Info
        };
        sections.push(Section::new(&format!("perm_n{n}"), status, payload));
        rows.push(row);
    }
    Ok((sections, json!({ "rows": rows })))
}

fn fiber_json(fiber: &Fiber) -> Value {
    json!(fiber
        .index_counts()
        .iter()
        .map(|(e, count)| json!({"e": e, "points": count}))
        .collect::<Vec<_>>())
}

fn ramify_suite(params: &FamilyParams) -> Result<SuiteOutput> {
    let scene: GaloisScene = build_scene(params)?;
    let f = &scene.f;
    let r = params.r;
    let fq = &params.field_q;
    let mut sections = Vec::new();

    let inf = fiber_profile(f, &ProjectivePoint::Infinity(fq.clone()))?;
    let want_inf: BTreeMap<u64, usize> = [(r, 1), ((r * r - r) / 4, 2)].into();
    sections.push(Section::check(
        "fiber_over_inf",
        inf.index_counts() == want_inf,
        fiber_json(&inf),
    ));
    let zero = fiber_profile(f, &ProjectivePoint::Finite(fq.zero()))?;
    let want_zero: BTreeMap<u64, usize> = [(r.div_ceil(2), r as usize)].into();
    sections.push(Section::check(
        "fiber_over_0",
        zero.index_counts() == want_zero,
        fiber_json(&zero),
    ));
    let locus = branch_locus(f, std::slice::from_ref(&params.field_q2))?;
    let expected_locus = vec![
        ProjectivePoint::Finite(fq.zero()),
        ProjectivePoint::Infinity(fq.clone()),
    ];
    let locus_text: Vec<String> = locus.iter().map(|p| p.to_string()).collect();
    sections.push(Section::check(
        "branch_locus",
        locus == expected_locus,
        json!(locus_text),
    ));
    let seed = std::env::var("EXCRAT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0u64);
    let fq4 = make_field(params.p, 4 * params.l)?;
    let generic = generic_fibers_unramified(f, &params.field_q2, 10, seed)?
        && generic_fibers_unramified(f, &fq4, 10, seed)?;
    sections.push(Section::check(
        "generic_fibers",
        generic,
        json!({"seed": seed, "per_field": 10}),
    ));
    sections.push(Section::check(
        "wild_index",
        ((r * r - r) / 4).is_multiple_of(params.p),
        json!({"index": (r * r - r) / 4, "p": params.p}),
    ));

    let g_prof = g_ram_profile(&scene)?;
    sections.push(Section::check(
        "g_fibers",
        g_prof.ok(r),
        json!({
            "over_inf": fiber_json(&g_prof.over_infinity),
            "over_0": fiber_json(&g_prof.over_zero),
            "h_identity": g_prof.h_identity,
            "derivative_identity": g_prof.derivative_identity,
            "splits_in_F_r2": g_prof.splits_in_fr2,
        }),
    ));

    let m = Monodromy::new(params)?;
    let f_inf = inertia_filtration(&m, params, &Place::Infinity)?;
    let want_inf_orders = vec![((r * r - r) / 2) as usize, r as usize, 1];
    sections.push(Section::check(
        "filtration_inf",
        f_inf.group_orders == want_inf_orders,
        json!({"place": f_inf.place, "orders": f_inf.group_orders}),
    ));
    let quad_place = Place::default_quadratic(params)?;
    let f_quad = inertia_filtration(&m, params, &quad_place)?;
    let want_quad = vec![r.div_ceil(2) as usize, 1];
    sections.push(Section::check(
        "filtration_quadratic",
        f_quad.group_orders == want_quad,
        json!({"place": f_quad.place, "orders": f_quad.group_orders}),
    ));
    let translation =
        m.g.elements()
            .iter()
            .find(|x| x.mat == [1, 1, 0, 1])
            .ok_or_else(|| Error::Group("translation u -> u + 1 missing".into()))?;
    let v = valuation_at_infinity(&m.ctx, translation)?;
    sections.push(Section::check(
        "translation_valuation",
        v == Some(2),
        json!(v),
    ));
    let order_g = m.g.order();
    let (lhs, rhs) = riemann_hurwitz_sides(order_g, &[&f_inf, &f_quad]);
    let places_match = order_g / f_inf.group_orders[0] == g_prof.over_infinity.point_count()
        && order_g / f_quad.group_orders[0] == g_prof.over_zero.point_count();
    let rh_ok = lhs == rhs && places_match;
    sections.push(Section::check(
        "riemann_hurwitz",
        rh_ok,
        json!({"lhs": lhs, "rhs": rhs, "places_match_fibers": places_match}),
    ));

    let summary = json!({
        "branch_points": locus_text,
        "fiber_over_0": fiber_json(&zero),
        "fiber_over_inf": fiber_json(&inf),
        "filtration_inf": f_inf.group_orders,
        "filtration_quadratic": f_quad.group_orders,
        "rh_ok": rh_ok,
    });
    Ok((sections, summary))
}

fn monodromy_suite(params: &FamilyParams) -> Result<SuiteOutput> {
    let m = Monodromy::new(params)?;
    let r = params.r as usize;
    let d = params.d as usize;
    let lambda = m.lambda()?;
    let gh = m.g_mod_h()?;
    let mut sections = Vec::new();
    let orders = [
        m.g.order(),
        m.h.order(),
        m.a.order(),
        m.j.order(),
        lambda.len(),
    ];
    let expected = [
        r * (r * r - 1) / 2,
        r - 1,
        d * r * (r * r - 1) / 2,
        d * (r - 1),
        (r * r + r) / 2,
    ];
    sections.push(Section::check(
        "orders",
        orders == expected,
        json!({"G": orders[0], "H": orders[1], "A": orders[2], "J": orders[3], "index": orders[4]}),
    ));
    let transitive_a = orbits(m.a.generators(), &lambda)?.len() == 1;
    let transitive_g = orbits(m.g.generators(), &lambda)?.len() == 1;
    sections.push(Section::check(
        "transitivity",
        transitive_a && transitive_g,
        json!({"A": transitive_a, "G": transitive_g}),
    ));
    let common = common_orbit_count(&m.h, &m.j, &lambda)?;
    sections.push(Section::check("common_orbits", common == 1, json!(common)));
    let prim_g = primitivity_blocks(m.g.generators(), &gh)?;
    // at r = 9 the action of G on G/H has blocks of size 3
    let (prim_g_ok, prim_g_payload) = match &prim_g {
        Primitivity::Primitive => (r != 9, json!({"primitive": true})),
        Primitivity::Imprimitive(blocks) => {
            let sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
            let ok = r == 9 && blocks.len() == 15 && sizes.iter().all(|&s| s == 3);
            (
                ok,
                json!({"primitive": false, "blocks": blocks.len(), "block_size": sizes[0]}),
            )
        }
    };
    sections.push(Section::check(
        "primitivity_G_on_GH",
        prim_g_ok,
        prim_g_payload,
    ));
    let prim_a = primitivity_blocks(m.a.generators(), &lambda)?.is_primitive();
    sections.push(Section::check(
        "primitivity_A_on_AJ",
        prim_a,
        json!({"primitive": prim_a}),
    ));
    let core = core_of_subgroup(&m.ctx, &lambda)?.order();
    sections.push(Section::check("core", core == 1, json!(core)));
    let audit = group_audit(&m)?;
    sections.push(Section::check(
        "group_audit",
        audit.ok() && audit.sigma_order_mod_g as usize == d,
        json!({
            "G_normal_in_A": audit.g_normal_in_a,
            "AmodG_cyclic_order": audit.sigma_order_mod_g,
            "orbit_stabilizer": audit.orbit_stabilizer,
        }),
    ));
    let summary = json!({
        "order_G": orders[0],
        "order_H": orders[1],
        "order_A": orders[2],
        "order_J": orders[3],
        "index": orders[4],
        "transitive_A": transitive_a,
        "transitive_G": transitive_g,
        "common_orbits": common,
        "primitive_G_on_GH": prim_g.is_primitive(),
        "primitive_A_on_AJ": prim_a,
        "core_order": core,
        "AmodG_cyclic_order": audit.sigma_order_mod_g,
    });
    Ok((sections, summary))
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code with everything meant for stdout and stderr.
pub fn run_cli<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    let json = cli.command.args().json;
    match run(&cli.command) {
        Ok(report) => {
            let out = if json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            (if report.ok { 0 } else { 1 }, out, String::new())
        }
        Err(e) => (2, String::new(), format!("parameter error: {e}\n")),
    }
}
