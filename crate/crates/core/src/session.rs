//! Command layer behind the `drinfeld` binary: a [`SessionConfig`], one
//! function per subcommand, each returning the files it would write.

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::field::FiniteField;
use crate::arith::fqpoly::FqPoly;
use crate::arith::matrix::{IntMatrixJson, RatMatrix};
use crate::cochains::{harmonic_kernel, s_gamma, verify_harmonic, RationalJson};
use crate::congruence::{
    congruence_module, default_probes, ihara_check, level_raising_primes, ser_bigs,
    verify_congruence, CongruenceModule, CongruenceReport, Raising, Verification,
};
use crate::error::{Error, Result};
use crate::export::{congruence_csv, congruence_rows, quotient_dot, quotient_json, to_stable_json};
use crate::groups::{Flavor, GroupSpec, GroupSpecJson};
use crate::hecke::{
    char_poly_of, hecke_matrix, hecke_tau, hecke_via_degeneracy, is_self_adjoint, raised_spec,
    Level,
};
use crate::quotient::{stable_level_of, QuotientGraph};
use crate::tower::tower_check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Quotient,
    Basis,
    Gram,
    Hecke,
    Ihara,
    Congruences,
    Tower,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Quotient => "quotient",
            Command::Basis => "basis",
            Command::Gram => "gram",
            Command::Hecke => "hecke",
            Command::Ihara => "ihara",
            Command::Congruences => "congruences",
            Command::Tower => "tower",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Json,
    Dot,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Format::Json),
            "dot" => Some(Format::Dot),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub q: u64,
    pub n: Option<String>,
    pub v: Option<String>,
    pub r: u32,
    pub flavor: Flavor,
    pub l: Option<u64>,
    pub probe_deg: usize,
    pub depth_cap: usize,
    /// Starting precision of Laurent expansions.
    pub precision: i64,
    /// Formats to emit; empty means every format the command supports.
    pub formats: Vec<Format>,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            q: 2,
            n: None,
            v: None,
            r: 0,
            flavor: Flavor::GammaN,
            l: None,
            probe_deg: 2,
            depth_cap: 32,
            precision: 16,
            formats: Vec::new(),
        }
    }
}

/// A usage problem (bad flags) or a failure of the computation itself.
#[derive(Debug)]
pub enum SessionError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for SessionError {
    fn from(e: Error) -> Self {
        SessionError::Domain(e)
    }
}

pub type SessionResult<T> = std::result::Result<T, SessionError>;

/// A file produced by a command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    fn new(name: &str, contents: String) -> Self {
        Artifact {
            name: name.to_string(),
            contents,
        }
    }
}

pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    /// False when a selftest check failed.
    pub ok: bool,
}

fn usage(msg: impl Into<String>) -> SessionError {
    SessionError::Usage(msg.into())
}

impl SessionConfig {
    pub fn validate(&self) -> SessionResult<()> {
        if self.depth_cap < 4 {
            return Err(usage(format!("--depth-cap must be at least 4, got {}", self.depth_cap)));
        }
        if self.precision < 1 {
            return Err(usage("--precision must be positive"));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<FiniteField> {
        FiniteField::new(self.q)
    }

    fn poly(&self, flag: &str, text: Option<&String>) -> SessionResult<FqPoly> {
        let text = text.ok_or_else(|| usage(format!("{flag} is required")))?;
        Ok(FqPoly::parse(&self.field()?, text)?)
    }

    pub fn n_poly(&self) -> SessionResult<FqPoly> {
        self.poly("--n", self.n.as_ref())
    }

    pub fn v_poly(&self) -> SessionResult<FqPoly> {
        self.poly("--v", self.v.as_ref())
    }

    /// The level named by `--n`, `--v`, `--r`, `--flavor`.
    pub fn level_spec(&self) -> SessionResult<GroupSpec> {
        let f = self.field()?;
        let n = self.n_poly()?;
        let v = if self.v.is_some() && (self.r > 0 || self.flavor == Flavor::Gamma0vRCapGammaN) {
            Some(self.v_poly()?)
        } else {
            None
        };
        Ok(GroupSpec::new(&f, n, v, self.r, self.flavor)?)
    }

    /// The level to be raised by `--v`: `--n`, `--flavor` without a v-part.
    pub fn base_spec(&self) -> SessionResult<GroupSpec> {
        let f = self.field()?;
        if self.flavor == Flavor::Gamma0vRCapGammaN {
            return Err(usage("raising needs --flavor GammaN or Gamma0Only"));
        }
        Ok(GroupSpec::new(&f, self.n_poly()?, None, 0, self.flavor)?)
    }

    fn wants(&self, f: Format) -> bool {
        self.formats.is_empty() || self.formats.contains(&f)
    }

    fn check_formats(&self, allowed: &[Format], cmd: Command) -> SessionResult<()> {
        match self.formats.iter().find(|f| !allowed.contains(f)) {
            Some(f) => Err(usage(format!("{} cannot emit {f:?}", cmd.name()))),
            None => Ok(()),
        }
    }
}

/// Largest `[SL(2, A) : Gamma]` the commands will enumerate.
pub const MAX_INDEX: u64 = 1 << 21;

/// Largest genus for which cochain lattices are built.
pub const MAX_GENUS: usize = 1500;

/// Checks the depth cap (the ray certificate needs three levels past the
/// stable level) and the size of the coset space, then builds the level.
fn build_level(spec: &GroupSpec, cap: usize, weighted: bool) -> Result<Level> {
    Level::from_graph(checked_graph(spec, cap)?, weighted)
}

/// The quotient graph, once its genus is known to be within [`MAX_GENUS`].
fn checked_graph(spec: &GroupSpec, cap: usize) -> Result<QuotientGraph> {
    precheck(spec, cap)?;
    let graph = QuotientGraph::build(spec)?;
    let g = graph.euler_check();
    if g > MAX_GENUS as i64 {
        return Err(Error::Precondition(format!(
            "genus {g} of {} exceeds {MAX_GENUS}",
            spec.describe()
        )));
    }
    Ok(graph)
}

fn precheck(spec: &GroupSpec, cap: usize) -> Result<()> {
    if stable_level_of(spec) as usize + 3 > cap {
        return Err(Error::DepthCapExceeded(cap));
    }
    let index = spec.index_in_sl2();
    if index > MAX_INDEX {
        return Err(Error::Precondition(format!(
            "index {index} of {} exceeds {MAX_INDEX}",
            spec.describe()
        )));
    }
    Ok(())
}

pub fn rat_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn run(cmd: Command, cfg: &SessionConfig) -> SessionResult<Outcome> {
    cfg.validate()?;
    let artifacts = match cmd {
        Command::Quotient => {
            cfg.check_formats(&[Format::Json, Format::Dot], cmd)?;
            quotient(cfg)?
        }
        Command::Basis => {
            cfg.check_formats(&[Format::Json], cmd)?;
            basis(cfg)?
        }
        Command::Gram => {
            cfg.check_formats(&[Format::Json], cmd)?;
            gram(cfg)?
        }
        Command::Hecke => {
            cfg.check_formats(&[Format::Json], cmd)?;
            hecke(cfg)?
        }
        Command::Ihara => {
            cfg.check_formats(&[Format::Json], cmd)?;
            ihara(cfg)?
        }
        Command::Congruences => {
            cfg.check_formats(&[Format::Json, Format::Csv], cmd)?;
            congruences(cfg)?
        }
        Command::Tower => {
            cfg.check_formats(&[Format::Json], cmd)?;
            tower(cfg)?
        }
        Command::Selftest => {
            cfg.check_formats(&[Format::Json], cmd)?;
            let (report, ok) = crate::selftest::run_selftest(cfg)?;
            return Ok(Outcome {
                artifacts: vec![Artifact::new("selftest.json", to_stable_json(&report)?)],
                ok,
            });
        }
    };
    Ok(Outcome { artifacts, ok: true })
}

fn quotient(cfg: &SessionConfig) -> SessionResult<Vec<Artifact>> {
    let spec = cfg.level_spec()?;
    precheck(&spec, cfg.depth_cap)?;
    let graph = QuotientGraph::build(&spec)?;
    let mut out = Vec::new();
    if cfg.wants(Format::Json) {
        let cycles = graph.cycle_system()?;
        out.push(Artifact::new("quotient.json", quotient_json(&graph, &cycles)?));
    }
    if cfg.wants(Format::Dot) {
        out.push(Artifact::new("quotient.dot", quotient_dot(&graph)));
    }
    Ok(out)
}

#[derive(Serialize)]
struct BasisJson {
    spec: GroupSpecJson,
    genus: usize,
    euler_check: i64,
    kernel_rank: usize,
    /// Quotient edge id of each column.
    edge_ids: Vec<usize>,
    weights: Vec<u64>,
    basis: IntMatrixJson,
    harmonic: bool,
}

fn basis(cfg: &SessionConfig) -> SessionResult<Vec<Artifact>> {
    let spec = cfg.level_spec()?;
    let level = build_level(&spec, cfg.depth_cap, true)?;
    let lat = &level.lattice;
    let harmonic = (0..lat.rank()).all(|i| verify_harmonic(&level.graph, lat, &lat.basis.row(i)));
    let j = BasisJson {
        spec: spec.to_json(),
        genus: lat.rank(),
        euler_check: level.graph.euler_check(),
        kernel_rank: harmonic_kernel(&level.graph).cols(),
        edge_ids: lat.edge_index.clone(),
        weights: lat.weights.clone(),
        basis: (&lat.basis).into(),
        harmonic,
    };
    Ok(vec![Artifact::new("basis.json", to_stable_json(&j)?)])
}

#[derive(Serialize)]
struct GramJson {
    spec: GroupSpecJson,
    dim: usize,
    entries: Vec<Vec<String>>,
    det: RationalJson,
    symmetric: bool,
    positive_definite: bool,
    /// Absent on weighted levels.
    #[serde(serialize_with = "ser_opt_bigs")]
    s_gamma: Option<Vec<num_bigint::BigInt>>,
}

fn ser_opt_bigs<S: serde::Serializer>(
    v: &Option<Vec<num_bigint::BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_bigs(v, s),
        None => s.serialize_none(),
    }
}

fn gram(cfg: &SessionConfig) -> SessionResult<Vec<Artifact>> {
    let spec = cfg.level_spec()?;
    let level = build_level(&spec, cfg.depth_cap, true)?;
    let g = &level.gram;
    let j = GramJson {
        spec: spec.to_json(),
        dim: g.dim(),
        entries: rat_rows(&g.entries),
        det: (&g.det()).into(),
        symmetric: g.is_symmetric(),
        positive_definite: g.is_positive_definite(),
        s_gamma: s_gamma(&level.lattice, g).ok(),
    };
    Ok(vec![Artifact::new("gram.json", to_stable_json(&j)?)])
}

#[derive(Serialize)]
struct ProbeJson {
    v: String,
    q_v: u64,
    matrix: Vec<Vec<String>>,
    char_poly: String,
    self_adjoint: bool,
    /// Agrees with `I w V` through `Gamma ∩ Gamma_0(v)`.
    paths_agree: bool,
    /// Agrees with the `diag(v, 1)` double coset operator.
    equals_tau: bool,
    distinct_real_roots: usize,
    ramanujan: bool,
}

#[derive(Serialize)]
struct HeckeJson {
    spec: GroupSpecJson,
    genus: usize,
    probes: Vec<ProbeJson>,
    /// `[i, j, commute]` for every pair of probes.
    commutation: Vec<(usize, usize, bool)>,
}

/// Probes for `hecke`: `--v` alone, or irreducibles up to `--probe-deg`.
fn hecke_probes(cfg: &SessionConfig, spec: &GroupSpec) -> SessionResult<Vec<FqPoly>> {
    if cfg.v.is_some() && cfg.r == 0 && cfg.flavor != Flavor::Gamma0vRCapGammaN {
        return Ok(vec![cfg.v_poly()?]);
    }
    Ok(default_probes(spec.field(), cfg.probe_deg, &spec.modulus()))
}

fn hecke(cfg: &SessionConfig) -> SessionResult<Vec<Artifact>> {
    let spec = cfg.level_spec()?;
    let level = build_level(&spec, cfg.depth_cap, true)?;
    let q = spec.field().order();
    let mut probes = Vec::new();
    let mut mats: Vec<RatMatrix> = Vec::new();
    for w in hecke_probes(cfg, &spec)? {
        let t = hecke_matrix(&level, &w)?;
        let tau = hecke_tau(&level, &w)?;
        let paths_agree = match raised_spec(&spec, &w) {
            Ok((big_spec, _)) => {
                let big = build_level(&big_spec, cfg.depth_cap, true)?;
                hecke_via_degeneracy(&level, &big)? == t.matrix
            }
            Err(_) => false,
        };
        let ti = t.to_int()?;
        let cp = char_poly_of(&ti)?;
        let q_v = q.pow(w.degree().unwrap_or(0) as u32);
        probes.push(ProbeJson {
            v: w.to_text(),
            q_v,
            matrix: rat_rows(&t.matrix),
            char_poly: cp.to_string(),
            self_adjoint: is_self_adjoint(&t.matrix, &level.gram),
            paths_agree,
            equals_tau: tau.matrix == t.matrix,
            distinct_real_roots: cp.count_real_roots(),
            ramanujan: cp.roots_within_ramanujan_bound(q_v),
        });
        mats.push(t.matrix);
    }
    let mut commutation = Vec::new();
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            commutation.push((i, j, &mats[i] * &mats[j] == &mats[j] * &mats[i]));
        }
    }
    let j = HeckeJson {
        spec: spec.to_json(),
        genus: level.genus(),
        probes,
        commutation,
    };
    Ok(vec![Artifact::new("hecke.json", to_stable_json(&j)?)])
}

fn raising(cfg: &SessionConfig) -> SessionResult<Raising> {
    let spec = cfg.base_spec()?;
    let v = cfg.v_poly()?;
    let (big, _) = raised_spec(&spec, &v)?;
    checked_graph(&big, cfg.depth_cap)?;
    Ok(Raising::build(&spec, &v)?)
}

#[derive(Serialize)]
struct IharaJson {
    report: crate::congruence::IharaReport,
    /// `I V = (q_v + 1)` on the small level.
    iv_scalar: bool,
}

fn ihara(cfg: &SessionConfig) -> SessionResult<Vec<Artifact>> {
    let r = raising(cfg)?;
    let report = ihara_check(&r)?;
    let iv = &r.maps.i_plain.matrix * &r.maps.v_plain.matrix;
    let g = r.small.genus();
    let scalar = RatMatrix::identity(g).scale(&BigRational::from_integer((r.q_v + 1).into()));
    let j = IharaJson {
        report,
        iv_scalar: iv == scalar,
    };
    Ok(vec![Artifact::new("ihara.json", to_stable_json(&j)?)])
}

#[derive(Serialize)]
struct CongruencesJson {
    q: u64,
    n: String,
    flavor: Flavor,
    module: CongruenceModule,
    report: CongruenceReport,
    probes: Vec<String>,
    new_rank: usize,
    verifications: Vec<Verification>,
}

fn congruences(cfg: &SessionConfig) -> SessionResult<Vec<Artifact>> {
    let r = raising(cfg)?;
    let f = cfg.field()?;
    let n_text = cfg.n_poly()?.to_text();
    let module = congruence_module(&r)?;
    let report = level_raising_primes(&r)?;
    let avoid = &r.small.spec().modulus() * &r.v;
    let probes = default_probes(&f, cfg.probe_deg, &avoid);
    let ls: Vec<u64> = match cfg.l {
        Some(l) => vec![l],
        None => report.all_primes(),
    };
    let mut verifications = Vec::new();
    for l in ls {
        verifications.push(verify_congruence(&r, l, &probes)?);
    }
    let mut out = Vec::new();
    if cfg.wants(Format::Csv) {
        let rows = congruence_rows(cfg.q, &n_text, &report, &verifications);
        out.push(Artifact::new("congruence_table.csv", congruence_csv(&rows)?));
    }
    if cfg.wants(Format::Json) {
        let j = CongruencesJson {
            q: cfg.q,
            n: n_text,
            flavor: cfg.flavor,
            module,
            report,
            probes: probes.iter().map(|p| p.to_text()).collect(),
            new_rank: r.split.new.cols(),
            verifications,
        };
        out.push(Artifact::new("congruences.json", to_stable_json(&j)?));
    }
    Ok(out)
}

fn tower(cfg: &SessionConfig) -> SessionResult<Vec<Artifact>> {
    if cfg.flavor != Flavor::GammaN {
        return Err(usage("tower works over Gamma(n): use --flavor GammaN"));
    }
    let n = cfg.n_poly()?;
    let v = cfg.v_poly()?;
    let bound = cfg.l.unwrap_or(30);
    let top = GroupSpec::gamma(n.clone())?.with_gamma0(&v, cfg.r + 2)?;
    checked_graph(&top, cfg.depth_cap)?;
    let report = tower_check(&n, &v, cfg.r, bound)?;
    Ok(vec![Artifact::new("tower.json", to_stable_json(&report)?)])
}

/// A command run whose outputs are frozen under `golden/<name>/`.
#[derive(Clone, Debug)]
pub struct GoldenCase {
    pub name: String,
    pub command: Command,
    pub config: SessionConfig,
}

/// `<command>_q<q>_<flavor>_<n digits>[_r<r>][_v<v digits>]`.
pub fn case_name(command: Command, cfg: &SessionConfig) -> String {
    let digits = |s: &Option<String>| s.as_deref().unwrap_or("").replace(',', "");
    let flavor = match cfg.flavor {
        Flavor::GammaN => "gamma",
        Flavor::Gamma0Only => "gamma0",
        Flavor::Gamma0vRCapGammaN => "gamma0v",
    };
    let mut name = format!("{}_q{}_{flavor}_{}", command.name(), cfg.q, digits(&cfg.n));
    if cfg.r > 0 {
        name.push_str(&format!("_r{}", cfg.r));
    }
    if cfg.v.is_some() {
        name.push_str(&format!("_v{}", digits(&cfg.v)));
    }
    name
}

fn case(command: Command, q: u64, n: &str, v: Option<&str>, flavor: Flavor) -> GoldenCase {
    let config = SessionConfig {
        q,
        n: Some(n.to_string()),
        v: v.map(str::to_string),
        flavor,
        ..SessionConfig::default()
    };
    GoldenCase {
        name: case_name(command, &config),
        command,
        config,
    }
}

pub fn golden_cases() -> Vec<GoldenCase> {
    use Command::*;
    use Flavor::*;
    vec![
        case(Quotient, 2, "1,1,0,1", None, Gamma0Only),
        case(Quotient, 2, "0,0,1", None, GammaN),
        case(Quotient, 2, "0,1,1", None, GammaN),
        case(Quotient, 3, "1,0,1", None, Gamma0Only),
        case(Basis, 2, "0,0,1", None, GammaN),
        case(Gram, 2, "0,0,1", None, GammaN),
        case(Gram, 2, "1,1,0,1", None, Gamma0Only),
        case(Hecke, 2, "0,0,1", None, GammaN),
        case(Hecke, 2, "1,1,0,1", None, Gamma0Only),
        case(Ihara, 2, "0,0,1", Some("1,1"), GammaN),
        case(Ihara, 2, "0,0,1", Some("1,1,1"), GammaN),
        case(Congruences, 2, "0,0,1", Some("1,1,1"), GammaN),
        case(Congruences, 2, "0,1", Some("1,1,0,1"), GammaN),
        case(Tower, 2, "0,0,1", Some("1,1"), GammaN),
    ]
}

/// `golden/` at the workspace root, unless `DRINFELD_GOLDEN` points elsewhere.
pub fn golden_dir() -> PathBuf {
    match std::env::var_os("DRINFELD_GOLDEN") {
        Some(p) => PathBuf::from(p),
        None => {
            let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden");
            p.canonicalize().unwrap_or(p)
        }
    }
}

pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for a in artifacts {
        std::fs::write(dir.join(&a.name), &a.contents)?;
    }
    Ok(())
}

/// Files of a golden case that differ from (or are missing in) `dir`.
pub fn golden_mismatches(dir: &Path, artifacts: &[Artifact]) -> Vec<String> {
    artifacts
        .iter()
        .filter(|a| std::fs::read_to_string(dir.join(&a.name)).ok().as_deref() != Some(&a.contents))
        .map(|a| a.name.clone())
        .collect()
}

/// Re-runs every golden case; with `bless` rewrites the stored files,
/// otherwise reports the case names whose outputs differ.
pub fn check_golden(bless: bool) -> SessionResult<Vec<String>> {
    let root = golden_dir();
    let mut bad = Vec::new();
    for c in golden_cases() {
        let out = run(c.command, &c.config)?;
        let dir = root.join(&c.name);
        if bless {
            write_artifacts(&dir, &out.artifacts)?;
        } else {
            for f in golden_mismatches(&dir, &out.artifacts) {
                bad.push(format!("{}/{f}", c.name));
            }
        }
    }
    Ok(bad)
}
