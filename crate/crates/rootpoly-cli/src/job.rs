use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use clap::ValueEnum;
use num_rational::Rational64;
use rootpoly::heckman_opdam::HOParams;
use rootpoly::root_data::{RootData, Slot};
use rootpoly::{parse_scalar, Execution, Family, MacParams, MinusculeChoice, RootSystemSpec, Scalar, Var, Weight};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::ENGINE_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    Ho,
    Mac,
    MacGeneral,
    HoViaMac,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Ho => "ho",
            Construction::Mac => "mac",
            Construction::MacGeneral => "mac-general",
            Construction::HoViaMac => "ho-via-mac",
        }
    }

    pub fn is_macdonald(self) -> bool {
        matches!(self, Construction::Mac | Construction::MacGeneral)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Latex,
    Plain,
}

/// Root data read from a file, with every number in canonical rational form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDataFile {
    pub positive_roots: Vec<Vec<String>>,
    /// Squared length to multiplicity symbol.
    pub g: BTreeMap<String, String>,
}

fn parse_rational(v: &Value) -> CliResult<Rational64> {
    let bad = || CliError::RootData(format!("{} is not a rational number", v));
    match v {
        Value::Number(n) => n.as_i64().map(Rational64::from_integer).ok_or_else(bad),
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((a, b)) => {
                    let a: i64 = a.trim().parse().map_err(|_| bad())?;
                    let b: i64 = b.trim().parse().map_err(|_| bad())?;
                    if b == 0 {
                        return Err(bad());
                    }
                    Ok(Rational64::new(a, b))
                }
                None => s.parse::<i64>().map(Rational64::from_integer).map_err(|_| bad()),
            }
        }
        _ => Err(bad()),
    }
}

fn dot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDataFile {
    pub fn parse(text: &str) -> CliResult<RootDataFile> {
        let v: Value = serde_json::from_str(text).map_err(|e| CliError::RootData(e.to_string()))?;
        let roots = v
            .get("positive_roots")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::RootData("missing \"positive_roots\" array".into()))?;
        let mut positive_roots = Vec::new();
        for r in roots {
            let coords = r.as_array().ok_or_else(|| CliError::RootData(format!("root {} is not an array", r)))?;
            let q = coords.iter().map(parse_rational).collect::<CliResult<Vec<_>>>()?;
            positive_roots.push(q.iter().map(|x| x.to_string()).collect());
        }
        let gmap = v.get("g").and_then(Value::as_object).ok_or_else(|| CliError::RootData("missing \"g\" object".into()))?;
        let mut g = BTreeMap::new();
        for (len, sym) in gmap {
            let len = parse_rational(&Value::String(len.clone()))?;
            let sym = sym.as_str().ok_or_else(|| CliError::RootData(format!("symbol {} is not a string", sym)))?;
            match Var::from_name(sym) {
                Some(Var::G | Var::Gs | Var::Gl) => {}
                _ => return Err(CliError::RootData(format!("unknown multiplicity symbol {}", sym))),
            }
            g.insert(len.to_string(), sym.to_string());
        }
        let file = RootDataFile { positive_roots, g };
        file.build()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> CliResult<RootDataFile> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
        RootDataFile::parse(&text)
    }

    pub fn dim(&self) -> usize {
        self.positive_roots.first().map_or(0, Vec::len)
    }

    pub fn build(&self) -> CliResult<RootData> {
        let mut roots = Vec::new();
        for r in &self.positive_roots {
            let q = r.iter().map(|x| parse_rational(&Value::String(x.clone()))).collect::<CliResult<Vec<_>>>()?;
            let len = dot(&q, &q).to_string();
            let sym = self
                .g
                .get(&len)
                .and_then(|s| Var::from_name(s))
                .ok_or_else(|| CliError::RootData(format!("no symbol for roots of squared length {}", len)))?;
            roots.push((q, sym));
        }
        Ok(RootData::new(roots)?)
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.g.values().cloned().collect()
    }
}

/// One computation request. Everything except the output format and the
/// execution mode enters the fingerprint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    /// Family name, or `generic` for root data files.
    pub family: String,
    pub rank: usize,
    /// Doubled coordinates.
    pub weight: Vec<i32>,
    pub construction: Construction,
    /// Canonical scalar strings by parameter name.
    pub bindings: BTreeMap<String, String>,
    pub minuscule: Option<String>,
    pub root_data: Option<RootDataFile>,
    pub prune_cn: bool,
    pub full_gcd: bool,
    pub check: bool,
    #[serde(skip)]
    pub format: OutputFormat,
    #[serde(skip)]
    pub exec: Execution,
}

pub const GENERIC: &str = "generic";

impl JobSpec {
    pub fn new(family: &str, rank: usize, weight: &str, construction: Construction) -> CliResult<JobSpec> {
        let f: Family = family.parse()?;
        Ok(JobSpec {
            family: f.name().to_string(),
            rank,
            weight: Weight::parse(weight)?.0,
            construction,
            bindings: BTreeMap::new(),
            minuscule: None,
            root_data: None,
            prune_cn: false,
            full_gcd: false,
            check: false,
            format: OutputFormat::Json,
            exec: Execution::default(),
        })
    }

    /// A Heckman-Opdam job on explicit root data.
    pub fn generic(root_data: RootDataFile, weight: &str) -> CliResult<JobSpec> {
        Ok(JobSpec {
            family: GENERIC.to_string(),
            rank: root_data.dim(),
            weight: Weight::parse(weight)?.0,
            construction: Construction::Ho,
            bindings: BTreeMap::new(),
            minuscule: None,
            root_data: Some(root_data),
            prune_cn: false,
            full_gcd: false,
            check: false,
            format: OutputFormat::Json,
            exec: Execution::default(),
        })
    }

    pub fn set(mut self, name: &str, value: &str) -> CliResult<JobSpec> {
        let name = name.trim();
        if Var::from_name(name).is_none() {
            return Err(CliError::Usage(format!("unknown parameter {}", name)));
        }
        let v = parse_scalar(value)?.reduce(true);
        self.bindings.insert(name.to_string(), v.render());
        Ok(self)
    }

    /// `name=value`.
    pub fn set_pair(self, pair: &str) -> CliResult<JobSpec> {
        let (n, v) = pair.split_once('=').ok_or_else(|| CliError::Usage(format!("expected name=value, got {}", pair)))?;
        self.set(n, v)
    }

    pub fn minuscule(mut self, choice: &str) -> JobSpec {
        self.minuscule = Some(choice.to_string());
        self
    }

    pub fn prune_cn(mut self, on: bool) -> JobSpec {
        self.prune_cn = on;
        self
    }

    pub fn full_gcd(mut self, on: bool) -> JobSpec {
        self.full_gcd = on;
        self
    }

    pub fn check(mut self, on: bool) -> JobSpec {
        self.check = on;
        self
    }

    pub fn format(mut self, f: OutputFormat) -> JobSpec {
        self.format = f;
        self
    }

    pub fn exec(mut self, e: Execution) -> JobSpec {
        self.exec = e;
        self
    }

    pub fn is_generic(&self) -> bool {
        self.root_data.is_some()
    }

    pub fn lambda(&self) -> Weight {
        Weight::from_doubled(self.weight.clone())
    }

    pub fn spec(&self) -> CliResult<RootSystemSpec> {
        if self.is_generic() {
            return Err(CliError::Usage("this operation needs a classical family".into()));
        }
        Ok(RootSystemSpec::new(self.family.parse()?, self.rank)?)
    }

    pub fn binding(&self, name: &str) -> Option<Scalar> {
        self.bindings.get(name).map(|s| parse_scalar(s).expect("bindings are stored canonically"))
    }

    fn allowed_names(&self) -> CliResult<BTreeSet<String>> {
        if let Some(rd) = &self.root_data {
            return Ok(rd.symbols());
        }
        let spec = self.spec()?;
        let slots = spec.parameter_slots();
        let names: Vec<&str> = match self.construction {
            Construction::Ho => slots.iter().map(|s| s.var().name()).collect(),
            Construction::HoViaMac => vec!["g"],
            Construction::Mac => vec!["q", "t", "g"],
            Construction::MacGeneral => {
                let mut v = vec!["q"];
                v.extend(slots.iter().map(|s| s.t_var().name()));
                v.extend(slots.iter().map(|s| s.var().name()));
                v
            }
        };
        Ok(names.into_iter().map(String::from).collect())
    }

    pub fn validate(&self) -> CliResult<()> {
        let lambda = self.lambda();
        if let Some(rd) = &self.root_data {
            if self.construction != Construction::Ho {
                return Err(CliError::Usage("root data files support the ho construction only".into()));
            }
            if self.prune_cn {
                return Err(CliError::Usage("--prune-cn needs a classical family".into()));
            }
            if lambda.len() != rd.dim() {
                return Err(rootpoly::Error::ArityMismatch { expected: rd.dim(), found: lambda.len() }.into());
            }
        } else {
            let spec = self.spec()?;
            spec.require_dominant(&lambda)?;
            if self.prune_cn && self.construction != Construction::Ho {
                return Err(CliError::Usage("--prune-cn applies to the ho construction".into()));
            }
            if self.construction.is_macdonald() {
                self.minuscule_choice(&spec)?;
            } else if self.minuscule.is_some() {
                return Err(CliError::Usage("--minuscule applies to the Macdonald constructions".into()));
            }
        }
        let allowed = self.allowed_names()?;
        for name in self.bindings.keys() {
            if !allowed.contains(name) {
                let all: Vec<&str> = allowed.iter().map(String::as_str).collect();
                return Err(CliError::Usage(format!(
                    "parameter {} does not apply to {} {} (allowed: {})",
                    name,
                    self.family,
                    self.construction.name(),
                    all.join(", ")
                )));
            }
        }
        if self.bindings.contains_key("t") && self.bindings.contains_key("g") && self.construction == Construction::Mac {
            return Err(CliError::Usage("set either t or g, not both".into()));
        }
        if self.construction == Construction::MacGeneral {
            for s in self.spec()?.parameter_slots() {
                if self.bindings.contains_key(s.var().name()) && self.bindings.contains_key(s.t_var().name()) {
                    return Err(CliError::Usage(format!("set either {} or {}, not both", s.t_var(), s.var())));
                }
            }
        }
        Ok(())
    }

    pub fn minuscule_choice(&self, spec: &RootSystemSpec) -> CliResult<MinusculeChoice> {
        Ok(MinusculeChoice::parse(spec, self.minuscule.as_deref().unwrap_or("default"))?)
    }

    pub fn ho_params(&self, spec: &RootSystemSpec) -> CliResult<HOParams> {
        if self.construction == Construction::HoViaMac {
            return Ok(HOParams::uniform(spec, self.binding("g").unwrap_or_else(|| Scalar::var(Var::G))));
        }
        let mut p = HOParams::symbolic(spec);
        for s in spec.parameter_slots() {
            if let Some(v) = self.binding(s.var().name()) {
                p = p.with(s, v)?;
            }
        }
        Ok(p)
    }

    pub fn mac_params(&self, spec: &RootSystemSpec) -> CliResult<MacParams> {
        let q = self.binding("q").unwrap_or_else(|| Scalar::var(Var::Q));
        let q_pow = |g: Scalar| -> CliResult<Scalar> {
            let k = g
                .as_rational()
                .filter(|r| r.is_integer())
                .and_then(|r| i64::try_from(r.to_integer()).ok())
                .filter(|k| *k >= 0)
                .ok_or_else(|| rootpoly::Error::NonIntegerParams(format!("t = q^g needs a nonnegative integer g, got {}", g)))?;
            Ok(q.pow(k)?)
        };
        let mut p = match self.construction {
            Construction::MacGeneral => MacParams::symbolic_general(spec),
            _ => MacParams::symbolic(spec),
        }
        .with_q(q.clone());
        if self.construction == Construction::MacGeneral {
            for s in spec.parameter_slots() {
                if let Some(t) = self.binding(s.t_var().name()) {
                    p = p.with_slot(s, t)?;
                }
                if let Some(g) = self.binding(s.var().name()) {
                    p = p.with_slot(s, q_pow(g)?)?;
                }
            }
        } else {
            if let Some(t) = self.binding("t") {
                p = p.with_t(t);
            }
            if let Some(g) = self.binding("g") {
                p = p.with_t(q_pow(g)?);
            }
        }
        Ok(p)
    }

    /// Integer multiplicities behind the bindings, when the weight function has a finite expansion.
    pub fn integer_multiplicities(&self, spec: &RootSystemSpec) -> CliResult<Option<BTreeMap<Slot, u32>>> {
        if self.construction.is_macdonald() {
            let p = self.mac_params(spec)?;
            if p.q != Scalar::var(Var::Q) {
                return Ok(None);
            }
            let mut out = BTreeMap::new();
            for s in spec.parameter_slots() {
                let t = p.t(s);
                match (0..=32u32).find(|&k| t == Scalar::var_pow(Var::Q, 2 * k as i32)) {
                    Some(k) => {
                        out.insert(s, k);
                    }
                    None => return Ok(None),
                }
            }
            Ok(Some(out))
        } else {
            Ok(self.ho_params(spec)?.integer_values())
        }
    }

    /// Hex SHA-256 of the canonical job description.
    pub fn fingerprint(&self) -> String {
        let mut canon = self.clone();
        if let (Ok(spec), true) = (self.spec(), self.construction.is_macdonald()) {
            if let Ok(c) = self.minuscule_choice(&spec) {
                canon.minuscule = Some(c.to_string());
            }
        }
        let body = serde_json::json!({"engine_version": ENGINE_VERSION, "job": canon});
        format!("{:x}", Sha256::digest(body.to_string().as_bytes()))
    }
}
