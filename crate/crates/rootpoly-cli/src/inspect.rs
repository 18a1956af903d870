use clap::ValueEnum;
use rootpoly::heckman_opdam::{assemble_ho_generic, ho_data, HOOptions};
use rootpoly::macdonald::{assemble_macdonald_general_t, macdonald_data};
use num_rational::Rational64;
use rootpoly::root_data::{from_q, to_q, QVec, RootData};
use rootpoly::{Scalar, SolveOptions, TriangularData, Var, Weight};
use serde_json::{json, Value};

use crate::compute::canonical;
use crate::error::{CliError, CliResult};
use crate::job::{Construction, JobSpec, OutputFormat};
use crate::render::{monomial_latex, monomial_plain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InspectKind {
    Interval,
    Orbit,
    Stabilizer,
    Matrix,
}

/// The assembled Hessenberg matrix before solving.
#[derive(Clone, Debug)]
pub struct MatrixView {
    pub interval: Vec<Weight>,
    pub eigenvalues: Vec<Scalar>,
    /// Row `j` holds columns `1..n`; entry `j+1` is `eps_j - eps_lambda`, entries `k <= j` are `d(j, k-1)`.
    pub rows: Vec<Vec<Scalar>>,
    pub normalization_factors: Vec<Scalar>,
}

impl MatrixView {
    fn from_data(td: &TriangularData) -> MatrixView {
        let c = |v: Vec<Scalar>| v.iter().map(|s| s.reduce(true)).collect::<Vec<_>>();
        MatrixView {
            interval: td.interval.clone(),
            eigenvalues: c(td.eps.clone()),
            rows: td.matrix_columns().into_iter().map(c).collect(),
            normalization_factors: c(td.normalization_factors()),
        }
    }

    /// Rendered entries of row `j` up to the superdiagonal.
    pub fn row_strings(&self, j: usize) -> Vec<String> {
        let len = (j + 1).min(self.rows[j].len());
        self.rows[j][..len].iter().map(|s| s.render()).collect()
    }
}

pub fn matrix_data(job: &JobSpec) -> CliResult<TriangularData> {
    job.validate()?;
    let lambda = job.lambda();
    if let Some(rdf) = &job.root_data {
        let rd = rdf.build()?;
        let g = |v: Var| job.binding(v.name()).unwrap_or_else(|| Scalar::var(v));
        return Ok(assemble_ho_generic(&rd, &g, &lambda)?);
    }
    let spec = job.spec()?;
    let exec = job.exec;
    let td = match job.construction {
        Construction::Ho => {
            let opts = HOOptions { prune_cn: job.prune_cn, solve: SolveOptions { full_gcd: false, exec } };
            ho_data(&spec, &job.ho_params(&spec)?, &lambda, opts)?
        }
        Construction::Mac => macdonald_data(&spec, job.minuscule_choice(&spec)?, &job.mac_params(&spec)?, &lambda, exec)?,
        Construction::MacGeneral => {
            let td = assemble_macdonald_general_t(&spec, job.minuscule_choice(&spec)?, &lambda, exec)?;
            let b = job.mac_params(&spec)?.bindings_general();
            if b.is_empty() {
                td
            } else {
                td.substitute(&b)?
            }
        }
        Construction::HoViaMac => {
            return Err(CliError::Usage("inspect matrix supports ho, mac and mac-general".into()));
        }
    };
    Ok(td)
}

pub fn matrix_view(job: &JobSpec) -> CliResult<MatrixView> {
    Ok(MatrixView::from_data(&matrix_data(job)?))
}

fn weights_json(ws: &[Weight]) -> Value {
    Value::Array(ws.iter().map(|w| json!(w.0)).collect())
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(canonical).collect()
}

/// Rendered inspection result.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

fn plain_list(ws: &[Weight]) -> String {
    ws.iter().map(|w| format!("{}\n", monomial_plain(w))).collect()
}

fn generic_weights(job: &JobSpec, f: impl Fn(&RootData, &[Rational64]) -> CliResult<Vec<QVec>>) -> CliResult<Vec<Weight>> {
    let rd = job.root_data.as_ref().expect("generic job").build()?;
    let lam = to_q(&job.lambda());
    let out = f(&rd, &lam)?;
    Ok(out.iter().map(|v| from_q(v)).collect::<rootpoly::Result<Vec<_>>>()?)
}

pub fn cmd_inspect(kind: InspectKind, job: &JobSpec) -> CliResult<Report> {
    let lambda = job.lambda();
    let root_system = json!({"family": job.family, "rank": job.rank});
    match kind {
        InspectKind::Interval => {
            let iv = if job.is_generic() {
                generic_weights(job, |rd, l| Ok(rd.dominant_interval(l)?))?
            } else {
                let spec = job.spec()?;
                spec.require_dominant(&lambda)?;
                spec.dominant_interval(&lambda)?
            };
            Ok(Report {
                json: json!({"root_system": root_system, "lambda": lambda.0, "interval": weights_json(&iv)}),
                text: plain_list(&iv),
            })
        }
        InspectKind::Orbit => {
            let orbit = if job.is_generic() {
                generic_weights(job, |rd, l| Ok(rd.orbit(l)))?
            } else {
                let spec = job.spec()?;
                spec.check_arity(&lambda)?;
                spec.weyl_orbit(&lambda)
            };
            Ok(Report {
                json: json!({"root_system": root_system, "lambda": lambda.0, "size": orbit.len(), "orbit": weights_json(&orbit)}),
                text: format!("size {}\n{}", orbit.len(), plain_list(&orbit)),
            })
        }
        InspectKind::Stabilizer => {
            let (stab, order) = if let Some(rdf) = &job.root_data {
                let rd = rdf.build()?;
                let l = to_q(&lambda);
                (rd.stabilizer_order(&l), rd.orbit_size(&l) * rd.stabilizer_order(&l))
            } else {
                let spec = job.spec()?;
                spec.check_arity(&lambda)?;
                (spec.stabilizer_order(&lambda), spec.weyl_group_order())
            };
            Ok(Report {
                json: json!({"root_system": root_system, "lambda": lambda.0, "stabilizer_order": stab, "group_order": order}),
                text: format!("{}\n", stab),
            })
        }
        InspectKind::Matrix => {
            let m = matrix_view(job)?;
            let n = m.interval.len();
            let rows: Vec<Vec<String>> = m.rows.iter().map(|r| strings(r)).collect();
            let json = json!({
                "root_system": root_system,
                "lambda": lambda.0,
                "interval": weights_json(&m.interval),
                "eigenvalues": strings(&m.eigenvalues),
                "rows": rows,
                "normalization_factors": strings(&m.normalization_factors),
            });
            let text = match job.format {
                OutputFormat::Latex => matrix_latex(&m),
                _ => {
                    let mut s = String::new();
                    for j in 0..n {
                        s.push_str(&format!("{}: {}\n", monomial_plain(&m.interval[j]), m.row_strings(j).join(" ; ")));
                    }
                    let f: Vec<String> = m.normalization_factors.iter().map(|x| format!("({})", x.render())).collect();
                    s.push_str(&format!("normalization: {}\n", f.join("")));
                    s
                }
            };
            Ok(Report { json, text })
        }
    }
}

fn matrix_latex(m: &MatrixView) -> String {
    let mut s = String::from("\\begin{pmatrix}\n");
    for (j, w) in m.interval.iter().enumerate() {
        let mut cells = vec![monomial_latex(w)];
        cells.extend(m.rows[j].iter().map(|x| x.render_latex()));
        s.push_str(&cells.join(" & "));
        s.push_str(" \\\\\n");
    }
    s.push_str("\\end{pmatrix}\n");
    s
}
