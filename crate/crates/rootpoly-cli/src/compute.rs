use std::collections::BTreeMap;
use std::time::Instant;

use rootpoly::heckman_opdam::{compute_ho, compute_ho_generic, HOOptions};
use rootpoly::macdonald::{compute_macdonald, compute_macdonald_general_t, ho_via_macdonald};
use rootpoly::oracles::{check_eigen_ho, check_eigen_macdonald, EigenCheck, GramOracle, WeightFunctionKind};
use rootpoly::{parse_scalar, MonomialExpansion, RootSystemSpec, Scalar, SolveOptions, Var, Weight};
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::error::CliResult;
use crate::job::{Construction, JobSpec};
use crate::ENGINE_VERSION;

pub const PASS: &str = "pass";
pub const FAIL: &str = "fail";
pub const SKIPPED: &str = "skipped";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemInfo {
    pub family: String,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub mu: Vec<i32>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub engine: String,
    pub version: String,
    /// `engine` or `cache`.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub fingerprint: String,
    pub root_system: RootSystemInfo,
    pub lambda: Vec<i32>,
    pub coefficients: Vec<Coefficient>,
    pub checks: BTreeMap<String, String>,
    pub provenance: Provenance,
    pub timing_ms: f64,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct JsonView<'a> {
    root_system: &'a RootSystemInfo,
    lambda: &'a [i32],
    coefficients: &'a [Coefficient],
    checks: &'a BTreeMap<String, String>,
}

impl ResultRecord {
    /// The expansion with every coefficient parsed back.
    pub fn expansion(&self) -> CliResult<MonomialExpansion> {
        let terms = self
            .coefficients
            .iter()
            .map(|c| Ok((Weight::from_doubled(c.mu.clone()), parse_scalar(&c.value)?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(MonomialExpansion { lambda: Weight::from_doubled(self.lambda.clone()), terms })
    }

    pub fn checks_passed(&self) -> bool {
        self.checks.values().all(|v| v != FAIL)
    }

    /// The stdout document: root system, leading weight, coefficients and checks.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(JsonView {
            root_system: &self.root_system,
            lambda: &self.lambda,
            coefficients: &self.coefficients,
            checks: &self.checks,
        })
        .expect("record serializes")
    }
}

pub fn canonical(s: &Scalar) -> String {
    s.reduce(true).render()
}

fn solve_options(job: &JobSpec) -> SolveOptions {
    SolveOptions { full_gcd: job.full_gcd, exec: job.exec }
}

fn eigen_entries(c: &EigenCheck, out: &mut BTreeMap<String, String>) {
    out.insert("eigenfunction".into(), if c.is_eigenfunction { PASS } else { FAIL }.into());
    out.insert("eigenvalue".into(), if c.matches_formula { PASS } else { FAIL }.into());
}

fn orthogonality(job: &JobSpec, spec: &RootSystemSpec, p: &MonomialExpansion, warnings: &mut Vec<String>) -> CliResult<String> {
    let kind = if job.construction.is_macdonald() { WeightFunctionKind::Macdonald } else { WeightFunctionKind::HeckmanOpdam };
    match job.integer_multiplicities(spec)? {
        Some(g) => {
            let oracle = GramOracle::new(spec, kind, &g)?;
            Ok(if oracle.is_orthogonal(p)? { PASS } else { FAIL }.into())
        }
        None => {
            warnings.push("warning: orthogonality check skipped: needs nonnegative integer multiplicities".into());
            Ok(SKIPPED.into())
        }
    }
}

/// Run the engine for `job`, returning the expansion, the engine path and the checks.
fn run_engine(job: &JobSpec, warnings: &mut Vec<String>) -> CliResult<(MonomialExpansion, String, BTreeMap<String, String>)> {
    let lambda = job.lambda();
    let opts = solve_options(job);
    let mut checks = BTreeMap::new();
    if let Some(rdf) = &job.root_data {
        let rd = rdf.build()?;
        let g = |v: Var| job.binding(v.name()).unwrap_or_else(|| Scalar::var(v));
        let p = compute_ho_generic(&rd, &g, &lambda, opts)?;
        if job.check {
            warnings.push("warning: checks skipped: the operator oracles need a classical family".into());
            checks.insert("eigenfunction".into(), SKIPPED.into());
            checks.insert("orthogonality".into(), SKIPPED.into());
        }
        return Ok((p, "ho/root-data/recurrence".into(), checks));
    }
    let spec = job.spec()?;
    let (p, engine) = match job.construction {
        Construction::Ho => {
            let params = job.ho_params(&spec)?;
            let p = compute_ho(&spec, &params, &lambda, HOOptions { prune_cn: job.prune_cn, solve: opts })?;
            if job.check {
                eigen_entries(&check_eigen_ho(&spec, &params, &p)?, &mut checks);
            }
            let path = if job.prune_cn { "ho/tables/pruned/recurrence" } else { "ho/tables/recurrence" };
            (p, path)
        }
        Construction::HoViaMac => {
            let params = job.ho_params(&spec)?;
            let p = ho_via_macdonald(&spec, &params, &lambda, opts)?;
            if job.check {
                eigen_entries(&check_eigen_ho(&spec, &params, &p)?, &mut checks);
            }
            (p, "ho-via-mac/orbit-sums/recurrence")
        }
        Construction::Mac | Construction::MacGeneral => {
            let choice = job.minuscule_choice(&spec)?;
            let params = job.mac_params(&spec)?;
            let (p, path) = if job.construction == Construction::Mac {
                (compute_macdonald(&spec, choice, &params, &lambda, opts)?, "mac/orbit-sums/recurrence")
            } else {
                (compute_macdonald_general_t(&spec, choice, &params, &lambda, opts)?, "mac-general/subset-sums/recurrence")
            };
            if job.check {
                eigen_entries(&check_eigen_macdonald(&spec, choice, &params, &p)?, &mut checks);
            }
            (p, path)
        }
    };
    if job.check {
        checks.insert("orthogonality".into(), orthogonality(job, &spec, &p, warnings)?);
    }
    Ok((p, engine.into(), checks))
}

/// Compute the expansion for `job`, or load it from `cache` when present.
pub fn cmd_compute(job: &JobSpec, cache: Option<&Cache>) -> CliResult<ResultRecord> {
    job.validate()?;
    let fingerprint = job.fingerprint();
    let mut warnings = Vec::new();
    if let Some(c) = cache {
        match c.load(&fingerprint) {
            Ok(Some(mut rec)) => {
                rec.provenance.source = "cache".into();
                rec.warnings = warnings;
                return Ok(rec);
            }
            Ok(None) => {}
            Err(w) => warnings.push(w),
        }
    }
    let start = Instant::now();
    let (p, engine, checks) = run_engine(job, &mut warnings)?;
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let rec = ResultRecord {
        fingerprint,
        root_system: RootSystemInfo { family: job.family.clone(), rank: job.rank },
        lambda: p.lambda.0.clone(),
        coefficients: p.terms.iter().map(|(w, c)| Coefficient { mu: w.0.clone(), value: canonical(c) }).collect(),
        checks,
        provenance: Provenance { engine, version: ENGINE_VERSION.into(), source: "engine".into() },
        timing_ms,
        warnings: Vec::new(),
    };
    if let Some(c) = cache {
        if let Err(e) = c.store(&rec) {
            warnings.push(format!("warning: could not write cache entry: {}", e));
        }
    }
    Ok(ResultRecord { warnings, ..rec })
}

