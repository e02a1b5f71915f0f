//! Scenario files: parsing, dispatch to the engines, and versioned reports.
//!
//! A scenario is a JSON (or TOML) object with a `kind`, an optional `seed`
//! and `tol`, and kind-specific parameters. Reports are deterministic for a
//! given file and seed.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coeff::Coeff;
use crate::domain::{Domain, DomainElem};
use crate::dynamics::{
    cyclic_subspace, dense_orbit_generation, generators_from_orbits, is_cyclic_witness, multi_span, poly_cyclic_subspace,
    pushforward_generators, FiniteDynSystem, FuncOnX, PolyFunc,
};
use crate::error::{Error, Result};
use crate::fock::{build_fock, quotient_covariance_test, semicrossed_multiplicativity, verify_proposition, FockWindow};
use crate::groupalg::{Character, GroupAlgElem, Representation};
use crate::modules::{
    action_is_injective, envelope_module, localize, quotient_module, torsion_decomposition, ModuleElem, ModulePresentation, ModuleSpec,
    SubmoduleDesc,
};
use crate::sample;
use crate::semicross::{product_decomposition_check, Split};

pub const REPORT_VERSION: u32 = 1;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    FockVerify,
    Envelope,
    SubmoduleTest,
    Trivialize,
    ProductDecomp,
    Dynamics,
    PolyExample,
}

impl Kind {
    pub const ALL: [Kind; 7] =
        [Kind::FockVerify, Kind::Envelope, Kind::SubmoduleTest, Kind::Trivialize, Kind::ProductDecomp, Kind::Dynamics, Kind::PolyExample];

    pub fn name(self) -> &'static str {
        match self {
            Kind::FockVerify => "fock-verify",
            Kind::Envelope => "envelope",
            Kind::SubmoduleTest => "submodule-test",
            Kind::Trivialize => "trivialize",
            Kind::ProductDecomp => "product-decomp",
            Kind::Dynamics => "dynamics",
            Kind::PolyExample => "poly-example",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| Error::UnsupportedKind(s.to_string()))
    }
}

/// A parsed scenario; `params` holds everything except the common keys.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub kind: Kind,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub params: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Toml,
}

impl Format {
    /// TOML for `.toml`, JSON otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("toml") => Format::Toml,
            _ => Format::Json,
        }
    }
}

pub fn parse_scenario(text: &str, format: Format) -> Result<Scenario> {
    let value: Value = match format {
        Format::Json => serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?,
        Format::Toml => {
            let t: toml::Value = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            serde_json::to_value(t).map_err(|e| Error::Parse(e.to_string()))?
        }
    };
    let Value::Object(mut map) = value else {
        return Err(Error::Parse("scenario must be an object".into()));
    };
    let kind = match map.remove("kind") {
        Some(Value::String(s)) => s.parse()?,
        Some(_) => return Err(Error::Parse("kind must be a string".into())),
        None => return Err(Error::Parse("missing kind".into())),
    };
    let seed = match map.remove("seed") {
        None => None,
        Some(v) => Some(v.as_u64().ok_or_else(|| Error::Parse("seed must be a nonnegative integer".into()))?),
    };
    let tol = match map.remove("tol") {
        None => None,
        Some(v) => Some(v.as_f64().filter(|t| *t >= 0.0).ok_or_else(|| Error::Parse("tol must be a nonnegative number".into()))?),
    };
    let scenario = Scenario { kind, seed, tol, params: Value::Object(map) };
    // reject bad parameters before anything runs
    scenario.validate()?;
    Ok(scenario)
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_scenario(&text, Format::from_path(path))
}

fn params<T: DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

impl Scenario {
    fn validate(&self) -> Result<()> {
        match self.kind {
            Kind::FockVerify => params::<FockParams>(&self.params).map(drop),
            Kind::Envelope => params::<EnvelopeParams>(&self.params).map(drop),
            Kind::SubmoduleTest => params::<SubmoduleParams>(&self.params).map(drop),
            Kind::Trivialize => params::<TrivializeParams>(&self.params).map(drop),
            Kind::ProductDecomp => params::<ProductParams>(&self.params).map(drop),
            Kind::Dynamics => params::<DynamicsParams>(&self.params).map(drop),
            Kind::PolyExample => params::<PolyParams>(&self.params).map(drop),
        }
    }
}

/// Overrides from the command line.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    /// Use the global thread pool; otherwise everything runs on one thread.
    pub parallel: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, detail: None }
    }

    fn with(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: Some(detail.into()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub kind: Kind,
    pub seed: u64,
    pub tol: f64,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub details: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        writeln!(out, "scenario {} (seed {}, tol {:e})", self.kind.name(), self.seed, self.tol).unwrap();
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => writeln!(out, "  {tag} {}: {d}", c.name).unwrap(),
                None => writeln!(out, "  {tag} {}", c.name).unwrap(),
            }
        }
        writeln!(out, "result: {}", if self.pass { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

pub fn run_scenario(s: &Scenario, opts: RunOptions) -> Result<Report> {
    let seed = opts.seed.or(s.seed).unwrap_or(0);
    let tol = opts.tol.or(s.tol).unwrap_or(DEFAULT_TOL);
    let run = || -> Result<(Vec<Check>, Value)> {
        match s.kind {
            Kind::FockVerify => run_fock(&params(&s.params)?, seed, tol),
            Kind::Envelope => run_envelope(&params(&s.params)?, seed),
            Kind::SubmoduleTest => run_submodule(&params(&s.params)?, tol),
            Kind::Trivialize => run_trivialize(&params(&s.params)?),
            Kind::ProductDecomp => run_product(&params(&s.params)?, seed),
            Kind::Dynamics => run_dynamics(&params(&s.params)?),
            Kind::PolyExample => run_poly(&params(&s.params)?),
        }
    };
    let (checks, details) = if opts.parallel {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| Error::InvalidInput(e.to_string()))?.install(run)?
    };
    Ok(Report { report_version: REPORT_VERSION, kind: s.kind, seed, tol, pass: checks.iter().all(|c| c.pass), checks, details })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn module_of(spec: &ModuleSpec) -> Result<ModulePresentation> {
    ModulePresentation::try_from(spec)
}

fn in_domain(rs: &[DomainElem], d: Domain) -> Result<Vec<DomainElem>> {
    rs.iter().map(|r| r.to_domain(d)).collect()
}

fn elems(m: &ModulePresentation, coords: &[Vec<i64>]) -> Result<Vec<ModuleElem>> {
    coords.iter().map(|c| m.elem(c.clone())).collect()
}

// ---- fock-verify

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FockParams {
    module: ModuleSpec,
    window: FockWindow,
    #[serde(default = "default_m_box")]
    m_box: i64,
    m_sample: Option<Vec<Vec<i64>>>,
    #[serde(default = "default_r_sample")]
    r_sample: Vec<DomainElem>,
    /// Random semicrossed pairs for the symbolic/numeric comparison.
    #[serde(default)]
    pairs: usize,
}

fn default_m_box() -> i64 {
    2
}

fn default_r_sample() -> Vec<DomainElem> {
    [1, -1, 2, 3].into_iter().map(DomainElem::int).collect()
}

fn run_fock(p: &FockParams, seed: u64, tol: f64) -> Result<(Vec<Check>, Value)> {
    let m = module_of(&p.module)?;
    let rep = build_fock(&m, p.window)?;
    let m_sample = match &p.m_sample {
        Some(c) => elems(&m, c)?,
        None => m.box_elements(p.m_box),
    };
    let r_sample = in_domain(&p.r_sample, m.domain())?;
    let prop = verify_proposition(&rep, &m_sample, &r_sample, tol)?;
    let mut checks: Vec<Check> = prop
        .identities
        .iter()
        .map(|id| Check::with(&id.name, id.pass, format!("{} interior vectors, max residual {:e}", id.interior_count, id.max_residual)))
        .collect();
    let mut details = json!({ "basis_size": prop.basis_size, "identities": to_value(&prop.identities) });
    if p.pairs > 0 {
        let pool: Vec<DomainElem> = r_sample.iter().filter(|r| !r.is_zero()).cloned().collect();
        if pool.is_empty() || m_sample.is_empty() {
            return Err(Error::EmptyList);
        }
        let mut rng = sample::rng(seed);
        let (mut interior, mut worst) = (0usize, 0.0f64);
        for _ in 0..p.pairs {
            let x = sample::semicrossed(&mut rng, &m, &pool, &m_sample, 2, 2);
            let y = sample::semicrossed(&mut rng, &m, &pool, &m_sample, 2, 2);
            let r = semicrossed_multiplicativity(&rep, &x, &y)?;
            interior += r.interior_count;
            worst = worst.max(r.max_residual);
        }
        checks.push(Check::with(
            "multiplicativity",
            interior > 0 && worst <= tol,
            format!("{} pairs, {interior} interior vectors, max residual {worst:e}", p.pairs),
        ));
        details["multiplicativity"] = json!({ "pairs": p.pairs, "interior_count": interior, "max_residual": worst });
    }
    Ok((checks, details))
}

// ---- envelope

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvelopeParams {
    module: ModuleSpec,
    r_sample: Option<Vec<DomainElem>>,
    #[serde(default = "default_r_count")]
    r_count: usize,
    #[serde(default = "default_r_range")]
    r_range: i64,
}

fn default_r_count() -> usize {
    20
}

fn default_r_range() -> i64 {
    9
}

fn random_scalar(rng: &mut sample::SampleRng, d: Domain, range: i64) -> DomainElem {
    loop {
        let r = match d {
            Domain::Integers => DomainElem::int(rng.random_range(-range..=range)),
            Domain::GaussianIntegers => DomainElem::gaussian(rng.random_range(-range..=range), rng.random_range(-range..=range)),
        };
        if !r.is_zero() {
            return r;
        }
    }
}

fn run_envelope(p: &EnvelopeParams, seed: u64) -> Result<(Vec<Check>, Value)> {
    let m = module_of(&p.module)?;
    let d = m.domain();
    let rs = match &p.r_sample {
        Some(rs) => in_domain(rs, d)?,
        None => {
            let mut rng = sample::rng(seed);
            (0..p.r_count).map(|_| random_scalar(&mut rng, d, p.r_range.max(1))).collect()
        }
    };
    let loc = localize(&m);
    let torsion = torsion_decomposition(&m);
    let mut checks = vec![Check::new("kernel_is_torsion", loc.kernel() == &torsion.torsion)];

    let mut bijective = Vec::with_capacity(rs.len());
    for r in &rs {
        bijective.push(loc.action_is_bijective(r)?);
    }
    checks.push(Check::with("r_action_bijective", bijective.iter().all(|b| *b), format!("{} scalars", rs.len())));
    if d == Domain::GaussianIntegers {
        checks.push(Check::new("i_action_bijective", loc.action_is_bijective(&DomainElem::imaginary_unit())?));
    }

    // some alpha_r fails to be injective exactly when there is torsion
    let mut probes = rs.clone();
    if let Some(e) = torsion.exponent.filter(|_| m.has_torsion()) {
        probes.push(DomainElem::int(e).to_domain(d)?);
    }
    let mut non_injective = Vec::new();
    for r in &probes {
        if !action_is_injective(r, &m)? {
            non_injective.push(r.clone());
        }
    }
    checks.push(Check::new("torsion_criterion", non_injective.is_empty() != m.has_torsion()));

    let envelope = match envelope_module(&m) {
        Ok(env) => {
            checks.push(Check::new("envelope_injective", env.is_injective()));
            json!({ "rational_dim": env.rational_dim(), "field_dim": env.field_dim() })
        }
        Err(Error::TorsionPresent) => Value::Null,
        Err(e) => return Err(e),
    };
    let details = json!({
        "torsion_present": m.has_torsion(),
        "rational_dim": loc.rational_dim(),
        "field_dim": loc.field_dim(),
        "kernel": to_value(&loc.kernel().generators()),
        "scalars": to_value(&rs),
        "bijective": bijective,
        "non_injective_scalars": to_value(&non_injective),
        "envelope": envelope,
    });
    Ok((checks, details))
}

// ---- submodule-test

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubmoduleParams {
    module: ModuleSpec,
    generators: Vec<Vec<i64>>,
    #[serde(default = "default_quotient_window")]
    window: FockWindow,
    r_sample: Option<Vec<DomainElem>>,
}

fn default_quotient_window() -> FockWindow {
    FockWindow::new(4, 2)
}

fn run_submodule(p: &SubmoduleParams, tol: f64) -> Result<(Vec<Check>, Value)> {
    let m = module_of(&p.module)?;
    let n = SubmoduleDesc::from_coords(&m, &p.generators)?;
    let rs = match &p.r_sample {
        Some(rs) => in_domain(rs, m.domain())?,
        None => match m.domain() {
            Domain::Integers => vec![DomainElem::int(2), DomainElem::int(-1), DomainElem::int(3)],
            Domain::GaussianIntegers => {
                vec![DomainElem::gaussian(1, 0), DomainElem::imaginary_unit(), DomainElem::gaussian(1, 1)]
            }
        },
    };
    let r = quotient_covariance_test(&m, &n, &rs, p.window, tol)?;
    let checks = vec![Check::with("verdicts_agree", r.agree, format!("is_submodule {}, covariance {}", r.is_submodule, r.verdict))];
    Ok((checks, to_value(&r)))
}

// ---- trivialize

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RepresentationSpec {
    /// Quotient map by the subgroup with these generators.
    Quotient(Vec<Vec<i64>>),
    /// Evaluation at `exp(2 pi i p/q)` on `C[Z]`.
    Rotation([i64; 2]),
    /// Character with these angles (fractions of a turn) on the basis.
    Character(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TrivializeParams {
    module: Option<ModuleSpec>,
    representation: RepresentationSpec,
    expected_kernel: Option<Vec<Vec<i64>>>,
}

fn run_trivialize(p: &TrivializeParams) -> Result<(Vec<Check>, Value)> {
    let m = match &p.module {
        Some(s) => module_of(s)?,
        None => ModulePresentation::free(1),
    };
    let mut checks = Vec::new();
    let rep = match &p.representation {
        RepresentationSpec::Quotient(gens) => {
            let n = SubmoduleDesc::from_coords(&m, gens)?;
            let q = quotient_module(&m, &n, false)?;
            let rep = Representation::Quotient(q);
            checks.push(Check::new("kernel_equals_subgroup", rep.kernel_group()? == n));
            rep
        }
        RepresentationSpec::Rotation([pn, qn]) => {
            if m != ModulePresentation::free(1) {
                return Err(Error::InvalidInput("rotation needs the module Z".into()));
            }
            Representation::Character(Character::evaluation_at_rotation(*pn, *qn)?)
        }
        RepresentationSpec::Character(angles) => {
            let angles = angles
                .iter()
                .map(|a| a.trim().parse::<BigRational>().map_err(|e| Error::Parse(format!("bad angle {a:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            Representation::Character(Character::new(&m, angles)?)
        }
    };
    let kernel = rep.kernel_group()?;
    let mut all_trivial = true;
    for g in kernel.generators() {
        all_trivial &= rep.trivializes(g)?;
    }
    checks.push(Check::new("generators_trivialize", all_trivial));
    if let Some(expected) = &p.expected_kernel {
        checks.push(Check::new("kernel_matches_expected", kernel == SubmoduleDesc::from_coords(&m, expected)?));
    }

    // U^{b+n} - U^b is killed although b + n is not in the kernel
    let mut caveat = Value::Null;
    let n0 = kernel.generators().iter().find(|g| !g.is_zero()).cloned();
    if let Some(n0) = n0 {
        let mut outside = None;
        for b in m.basis() {
            if !rep.trivializes(&b)? {
                outside = Some(b);
                break;
            }
        }
        if let Some(b) = outside {
            let shifted = m.add(&b, &n0)?;
            let x =
                GroupAlgElem::monomial(&m, shifted.clone(), Coeff::one())?.sub(&GroupAlgElem::monomial(&m, b.clone(), Coeff::one())?)?;
            let killed = match &rep {
                Representation::Character(c) => c.evaluate(&x)?.is_zero(),
                Representation::Quotient(q) => x.quotient_push(q)?.is_zero(),
            };
            let shifted_trivial = rep.trivializes(&shifted)?;
            checks.push(Check::with(
                "span_level_caveat",
                killed && !shifted_trivial,
                "difference of two monomials in one coset maps to zero",
            ));
            caveat = json!({ "plus": to_value(&shifted), "minus": to_value(&b), "maps_to_zero": killed });
        }
    }
    let details = json!({
        "kernel": to_value(&kernel.generators()),
        "kernel_trivial": kernel.is_trivial(),
        "caveat_witness": caveat,
    });
    Ok((checks, details))
}

// ---- product-decomp

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductParams {
    module: ModuleSpec,
    #[serde(default = "default_samples")]
    samples: usize,
    pool: Option<Vec<DomainElem>>,
    #[serde(default = "default_diagonal_pairs")]
    diagonal_pairs: usize,
}

fn default_samples() -> usize {
    100
}

fn default_diagonal_pairs() -> usize {
    50
}

fn run_product(p: &ProductParams, seed: u64) -> Result<(Vec<Check>, Value)> {
    let m = module_of(&p.module)?;
    let d = m.domain();
    let pool = match &p.pool {
        Some(rs) => in_domain(rs, d)?,
        None => match d {
            Domain::Integers => [1, -1, 2, -2, 3, -3, 4, -6].into_iter().map(DomainElem::int).collect(),
            Domain::GaussianIntegers => vec![
                DomainElem::gaussian(1, 0),
                DomainElem::imaginary_unit(),
                DomainElem::gaussian(1, 1),
                DomainElem::gaussian(0, -2),
                DomainElem::gaussian(2, 1),
            ],
        },
    };
    let report = product_decomposition_check(&m, &Split::units_positives(), p.samples, &pool, seed)?;
    let mut checks = vec![
        Check::with(
            "first_inside",
            report.agree_first_inside == report.samples,
            format!("{}/{}", report.agree_first_inside, report.samples),
        ),
        Check::with(
            "second_inside",
            report.agree_second_inside == report.samples,
            format!("{}/{}", report.agree_second_inside, report.samples),
        ),
    ];

    let units = DomainElem::units(d);
    let support = m.box_elements(2);
    let mut rng = sample::rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut ok = 0usize;
    for _ in 0..p.diagonal_pairs {
        let x = sample::semicrossed(&mut rng, &m, &pool, &support, 2, 2);
        let y = sample::semicrossed(&mut rng, &m, &pool, &support, 2, 2);
        let dx = sample::semicrossed(&mut rng, &m, &units, &support, 2, 2);
        let dy = sample::semicrossed(&mut rng, &m, &units, &support, 2, 2);
        let general = x.multiply(&y)?.diagonal_part() == x.diagonal_part().multiply(&y.diagonal_part())?;
        let dxy = dx.multiply(&dy)?;
        if general && dxy.is_diagonal() && dxy.diagonal_part() == dxy {
            ok += 1;
        }
    }
    checks.push(Check::with("diagonal_multiplicative", ok == p.diagonal_pairs, format!("{ok}/{}", p.diagonal_pairs)));
    let details = json!({ "product": to_value(&report), "diagonal_pairs": p.diagonal_pairs, "diagonal_agree": ok });
    Ok((checks, details))
}

// ---- dynamics

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PushforwardSpec {
    target: FiniteDynSystem,
    map: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DynamicsParams {
    system: FiniteDynSystem,
    functions: Option<Vec<FuncOnX>>,
    expect_cyclic: Option<bool>,
    expect_generators: Option<usize>,
    pushforward: Option<PushforwardSpec>,
}

fn run_dynamics(p: &DynamicsParams) -> Result<(Vec<Check>, Value)> {
    let sys = &p.system;
    let n = sys.size();
    let gens = generators_from_orbits(sys)?;
    let mut checks = vec![
        Check::with("orbit_generators_certified", gens.certified, format!("dimension {} of {n}", gens.dimension)),
        Check::new("generator_count_bounded", gens.generators.len() <= n),
    ];
    if let Some(k) = p.expect_generators {
        checks.push(Check::with("generator_count", gens.generators.len() == k, format!("{} generators", gens.generators.len())));
    }

    let witness = is_cyclic_witness(sys, p.functions.as_deref())?;
    // the only structural obstruction used: an identity map gives dim <= 2
    let is_identity = sys.sigma().iter().enumerate().all(|(x, &y)| x == y);
    let non_cyclic_proven = is_identity && n >= 3;
    if let Some(expect) = p.expect_cyclic {
        let pass = if expect { witness.is_some() } else { witness.is_none() && non_cyclic_proven };
        let detail = match (&witness, non_cyclic_proven) {
            (Some(_), _) => "witness found",
            (None, true) => "no witness; identity map bounds every cyclic subspace by 2",
            (None, false) => "no witness among candidates",
        };
        checks.push(Check::with("cyclicity", pass, detail));
    }

    let spanned = p.functions.clone().filter(|f| !f.is_empty()).unwrap_or_else(|| gens.generators.clone());
    let mut function_dims = Vec::new();
    let span = if spanned.is_empty() {
        None
    } else {
        let span = multi_span(sys, &spanned)?;
        let mut contains_each = span.contains(&FuncOnX::constant(n, Coeff::one()));
        for f in &spanned {
            let c = cyclic_subspace(sys, f)?;
            function_dims.push(c.dim());
            contains_each &= span.contains_span(&c);
        }
        checks.push(Check::new("multi_span_contains_each", contains_each));
        Some(span)
    };

    let mut push = Value::Null;
    if let Some(pf) = &p.pushforward {
        let r = pushforward_generators(sys, &pf.target, &pf.map, &gens.generators)?;
        checks.push(Check::with("pushforward_certified", r.certified, format!("dimension {} of {}", r.dimension, pf.target.size())));
        push = to_value(&r);
    }

    let dense = dense_orbit_generation(sys)?;
    let details = json!({
        "size": n,
        "components": crate::dynamics::orbit_components(sys),
        "dimension": span.as_ref().map_or(0, |s| s.dim()),
        "basis": span.as_ref().map(|s| to_value(&s.basis())),
        "function_dimensions": function_dims,
        "witness": to_value(&witness),
        "non_cyclic_proven": non_cyclic_proven,
        "dense_orbit": to_value(&dense),
        "generators": to_value(&gens),
        "certified": gens.certified,
        "pushforward": push,
    });
    Ok((checks, details))
}

// ---- poly-example

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyQuery {
    coeffs: Vec<Coeff>,
    member: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyParams {
    coeffs: Vec<Coeff>,
    #[serde(default = "default_depth")]
    depth: usize,
    #[serde(default = "default_cap")]
    cap: usize,
    #[serde(default)]
    queries: Vec<PolyQuery>,
    expect_not_algebra: Option<bool>,
}

fn default_depth() -> usize {
    3
}

fn default_cap() -> usize {
    8
}

fn real_poly(coeffs: &[Coeff], cap: usize) -> Result<PolyFunc> {
    let re = coeffs
        .iter()
        .map(|c| if c.im.is_zero() { Ok(c.re.clone()) } else { Err(Error::InvalidInput("polynomial coefficients must be real".into())) })
        .collect::<Result<Vec<_>>>()?;
    PolyFunc::new(re, cap)
}

fn odd_part(f: &PolyFunc) -> Vec<BigRational> {
    f.coeffs().iter().enumerate().map(|(k, c)| if k % 2 == 1 { c.clone() } else { BigRational::zero() }).collect()
}

/// Whether `v` is a rational multiple of `w` (both padded with zeros).
fn proportional(v: &[BigRational], w: &[BigRational]) -> bool {
    let len = v.len().max(w.len());
    let get = |x: &[BigRational], i: usize| x.get(i).cloned().unwrap_or_else(BigRational::zero);
    let Some(p) = (0..len).find(|&i| !get(w, i).is_zero()) else {
        return v.iter().all(Zero::is_zero);
    };
    let ratio = get(v, p) / get(w, p);
    (0..len).all(|i| get(v, i) == &ratio * get(w, i))
}

fn run_poly(p: &PolyParams) -> Result<(Vec<Check>, Value)> {
    let f = real_poly(&p.coeffs, p.cap)?;
    let span = poly_cyclic_subspace(&f, p.depth)?;
    let mut checks = Vec::new();

    let mut g = f.clone();
    let mut even = true;
    for _ in 0..p.depth {
        g = g.compose_square()?;
        even &= g.is_even();
    }
    checks.push(Check::new("pullbacks_even", even));
    let f_odd = odd_part(&f);
    checks.push(Check::new("odd_part_from_f", span.basis().iter().all(|b| proportional(&odd_part(b), &f_odd))));

    let mut query_results = Vec::new();
    for (k, q) in p.queries.iter().enumerate() {
        let poly = real_poly(&q.coeffs, q.coeffs.len().max(p.cap + 1))?;
        let member = span.contains(&poly);
        if let Some(expected) = q.member {
            checks.push(Check::with(format!("query_{k}"), member == expected, format!("member {member}")));
        }
        query_results.push(member);
    }

    // a product of two basis elements that leaves the span
    let basis = span.basis();
    let mut witness = Value::Null;
    'search: for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let Ok(prod) = a.mul(b) else { continue };
            if !span.contains(&prod) {
                witness = json!({ "left": i, "right": j, "product": prod.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>() });
                break 'search;
            }
        }
    }
    if let Some(expect) = p.expect_not_algebra {
        checks.push(Check::new("not_an_algebra", witness.is_null() != expect));
    }
    let details = json!({
        "span": to_value(&span.to_wire()),
        "queries": query_results,
        "product_witness": witness,
    });
    Ok((checks, details))
}

// ---- catalog

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamInfo {
    pub name: &'static str,
    #[serde(rename = "type")]
    pub ty: &'static str,
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub default: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KindInfo {
    pub kind: &'static str,
    pub summary: &'static str,
    pub params: Vec<ParamInfo>,
}

const fn req(name: &'static str, ty: &'static str) -> ParamInfo {
    ParamInfo { name, ty, required: true, default: None }
}

const fn opt(name: &'static str, ty: &'static str, default: Option<&'static str>) -> ParamInfo {
    ParamInfo { name, ty, required: false, default }
}

const MODULE_TY: &str = "{domain: \"Z\"|\"Zi\", free_rank, torsion: [d], i_action?: [[int]]}";

pub fn catalog() -> Vec<KindInfo> {
    let common = || vec![opt("seed", "u64", Some("0")), opt("tol", "f64", Some("1e-9"))];
    let with = |mut v: Vec<ParamInfo>| {
        v.extend(common());
        v
    };
    vec![
        KindInfo {
            kind: "fock-verify",
            summary: "Fock identities on interior vectors of a truncated window",
            params: with(vec![
                req("module", MODULE_TY),
                req("window", "{module_box?: int, semigroup_bound: int}"),
                opt("m_box", "int", Some("2")),
                opt("m_sample", "[[int]]", None),
                opt("r_sample", "[domain element]", Some("[1, -1, 2, 3]")),
                opt("pairs", "int", Some("0")),
            ]),
        },
        KindInfo {
            kind: "envelope",
            summary: "localization, torsion kernel and bijectivity of scalar actions",
            params: with(vec![
                req("module", MODULE_TY),
                opt("r_sample", "[domain element]", None),
                opt("r_count", "int", Some("20")),
                opt("r_range", "int", Some("9")),
            ]),
        },
        KindInfo {
            kind: "submodule-test",
            summary: "quotient Fock covariance versus the submodule test",
            params: with(vec![
                req("module", MODULE_TY),
                req("generators", "[[int]]"),
                opt("window", "{module_box?: int, semigroup_bound: int}", Some("{module_box: 4, semigroup_bound: 2}")),
                opt("r_sample", "[domain element]", None),
            ]),
        },
        KindInfo {
            kind: "trivialize",
            summary: "kernel group of a quotient map or character",
            params: with(vec![
                opt("module", MODULE_TY, Some("Z")),
                req("representation", "{quotient: [[int]]} | {rotation: [p, q]} | {character: [\"p/q\"]}"),
                opt("expected_kernel", "[[int]]", None),
            ]),
        },
        KindInfo {
            kind: "product-decomp",
            summary: "units x positives decomposition of the semigroup, both bracketings",
            params: with(vec![
                req("module", MODULE_TY),
                opt("samples", "int", Some("100")),
                opt("pool", "[domain element]", None),
                opt("diagonal_pairs", "int", Some("50")),
            ]),
        },
        KindInfo {
            kind: "dynamics",
            summary: "cyclic subspaces and orbit generators of a finite system",
            params: with(vec![
                req("system", "{size: int, sigma: [int]}"),
                opt("functions", "[[value]]", None),
                opt("expect_cyclic", "bool", None),
                opt("expect_generators", "int", None),
                opt("pushforward", "{target: system, map: [int]}", None),
            ]),
        },
        KindInfo {
            kind: "poly-example",
            summary: "span of f(t^(2^n)) in polynomials of bounded degree",
            params: with(vec![
                req("coeffs", "[rational]"),
                opt("depth", "int", Some("3")),
                opt("cap", "int", Some("8")),
                opt("queries", "[{coeffs: [rational], member?: bool}]", None),
                opt("expect_not_algebra", "bool", None),
            ]),
        },
    ]
}
