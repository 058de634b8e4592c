use std::path::PathBuf;

use serde_json::{json, Value};

use super::args::Command;
use super::input::{parse_input, Input};
use super::report::{basis, float, forms, pencil, rat, sym, var};
use crate::error::{Error, Result};
use crate::polarize::{
    check_product_identity, check_wronskian_identity, polarize_product, polarize_with_psd_slot_opts,
};
use crate::polycore::{Form, MatrixForm, RatFn};
use crate::reduce::{identify_matrix, identify_variables, reduce_degree, ReductionPlan};
use crate::sos::{certify, factor_certificate, SosOptions};
use crate::synth::{check_positive_real, synthesize_with, PositivityVerdict, SynthOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_NOT_POSITIVE_REAL: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JobKind {
    Synthesize,
    Check,
    Sos,
    Polarize { psd_slot: Option<usize> },
    Reduce { var: usize, bound: u32 },
}

/// One command invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub kind: JobKind,
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl JobSpec {
    pub fn new(kind: JobKind, input: PathBuf) -> Self {
        let sos = SosOptions::default();
        Self {
            kind,
            input,
            output: None,
            tol: sos.feasibility_tol,
            max_iters: sos.max_iters,
            seed: 42,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(Error::BadInput(format!("tolerance {} outside (0, 1e-3]", self.tol)));
        }
        if self.max_iters == 0 {
            return Err(Error::BadInput("max-iters must be positive".into()));
        }
        Ok(())
    }

    fn sos_options(&self) -> SosOptions {
        SosOptions {
            feasibility_tol: self.tol,
            max_iters: self.max_iters,
            ..SosOptions::default()
        }
    }
}

impl From<Command> for JobSpec {
    fn from(c: Command) -> Self {
        match c {
            Command::Synthesize {
                input,
                output,
                tol,
                max_iters,
                seed,
            } => Self {
                output,
                tol,
                max_iters,
                seed,
                ..Self::new(JobKind::Synthesize, input)
            },
            Command::Check { input, output, seed } => Self {
                output,
                seed,
                ..Self::new(JobKind::Check, input)
            },
            Command::Sos {
                input,
                output,
                tol,
                max_iters,
            } => Self {
                output,
                tol,
                max_iters,
                ..Self::new(JobKind::Sos, input)
            },
            Command::Polarize {
                input,
                output,
                psd_slot,
            } => Self {
                output,
                ..Self::new(JobKind::Polarize { psd_slot }, input)
            },
            Command::Reduce {
                input,
                output,
                var,
                bound,
            } => Self {
                output,
                ..Self::new(JobKind::Reduce { var, bound }, input)
            },
        }
    }
}

/// Exit code and the JSON report.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

/// Runs the job; the report goes to `job.output` when set.
pub fn run(job: &JobSpec) -> Outcome {
    let mut outcome = match job.validate().and_then(|()| execute(job)) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: EXIT_FAILURE,
            report: json!({ "status": "error", "error": e.to_string() }),
        },
    };
    if let Some(path) = &job.output {
        let text = serde_json::to_string_pretty(&outcome.report).expect("plain data");
        if let Err(e) = std::fs::write(path, text + "\n") {
            outcome = Outcome {
                code: EXIT_FAILURE,
                report: json!({ "status": "error", "error": format!("cannot write {}: {e}", path.display()) }),
            };
        }
    }
    outcome
}

fn execute(job: &JobSpec) -> Result<Outcome> {
    let input = parse_input(&job.input)?;
    match job.kind {
        JobKind::Synthesize => synthesize_job(function(input)?, job),
        JobKind::Check => check_job(function(input)?, job),
        JobKind::Sos => sos_job(form(input)?, job),
        JobKind::Polarize { psd_slot } => polarize_job(function(input)?, psd_slot, job),
        JobKind::Reduce { var, bound } => reduce_job(function(input)?, var, bound),
    }
}

fn function(input: Input) -> Result<RatFn> {
    match input {
        Input::Function(f) => Ok(f),
        Input::Form(_) => Err(Error::BadInput("this command expects \"num\" and \"den\"".into())),
    }
}

fn form(input: Input) -> Result<MatrixForm> {
    match input {
        Input::Form(f) => Ok(f),
        Input::Function(_) => Err(Error::BadInput("this command expects \"form\"".into())),
    }
}

fn ok(report: Value) -> Result<Outcome> {
    Ok(Outcome { code: EXIT_OK, report })
}

fn not_positive_real(command: &str, reason: &Error) -> Result<Outcome> {
    Ok(Outcome {
        code: EXIT_NOT_POSITIVE_REAL,
        report: json!({ "command": command, "status": "not_positive_real", "reason": reason.to_string() }),
    })
}

fn synthesize_job(f: RatFn, job: &JobSpec) -> Result<Outcome> {
    let opts = SynthOptions {
        sos: job.sos_options(),
        seed: job.seed,
        ..SynthOptions::default()
    };
    let r = match synthesize_with(&f, &opts) {
        Ok(r) => r,
        Err(e @ Error::NotPositiveReal(_)) => return not_positive_real("synthesize", &e),
        Err(e) => return Err(e),
    };
    let groups: Vec<Vec<String>> = r
        .map
        .groups()
        .iter()
        .map(|g| g.iter().map(|&j| format!("s{}", j + 1)).collect())
        .collect();
    ok(json!({
        "command": "synthesize",
        "status": "ok",
        "d": f.nvars(),
        "m": r.m,
        "block_split": [r.block_split.0, r.block_split.1],
        "numeric": r.numeric,
        "exact_psd": r.exact_psd,
        "pencil": pencil(&r.pencil),
        "extraction_terms": r.extraction_terms.iter()
            .map(|(k, a)| json!({ "variable": var(*k), "matrix": sym(a) }))
            .collect::<Vec<_>>(),
        "fresh_variables": groups,
        "steps": r.steps.iter().map(|s| json!({
            "variable": format!("s{}", s.variable + 1),
            "kind": s.kind,
            "rank": s.r_j,
            "certificate": s.status.map(|st| st.as_str()),
        })).collect::<Vec<_>>(),
        "verification": r.verification.iter().map(|v| json!({
            "point": v.point.iter().map(|z| json!({ "re": rat(&z.re), "im": rat(&z.im) })).collect::<Vec<_>>(),
            "residual": float(v.residual),
        })).collect::<Vec<_>>(),
    }))
}

fn check_job(f: RatFn, job: &JobSpec) -> Result<Outcome> {
    let check = match check_positive_real(&f, &job.sos_options(), job.seed) {
        Ok(c) => c,
        Err(e @ Error::NotPositiveReal(_)) => return not_positive_real("check", &e),
        Err(e) => return Err(e),
    };
    let code = match check.verdict {
        PositivityVerdict::Violation { .. } => EXIT_NOT_POSITIVE_REAL,
        _ => EXIT_OK,
    };
    let fresh = check.multiaffinized;
    let names = |k: usize| if fresh { format!("s{}", k + 1) } else { var(k) };
    let mut report = json!({
        "command": "check",
        "multiaffinized": fresh,
        "extracted": check.extracted.iter().map(|&k| var(k)).collect::<Vec<_>>(),
        "wronskians": check.wronskians.iter().map(|w| json!({
            "variable": names(w.variable),
            "status": w.status.as_str(),
            "final_distance": float(w.final_distance),
        })).collect::<Vec<_>>(),
    });
    match check.verdict {
        PositivityVerdict::CertifiedPositive => report["status"] = json!("certified_positive"),
        PositivityVerdict::Unknown => report["status"] = json!("unknown"),
        PositivityVerdict::Violation {
            variable,
            point,
            min_eigenvalue,
        } => {
            report["status"] = json!("violation");
            report["violation"] = json!({
                "variable": names(variable),
                "point": point,
                "min_eigenvalue": float(min_eigenvalue),
            });
        }
    }
    Ok(Outcome { code, report })
}

fn sos_job(f: MatrixForm, job: &JobSpec) -> Result<Outcome> {
    let (space, rep) = certify(&f, None, &job.sos_options())?;
    let mut report = json!({
        "command": "sos",
        "status": rep.status.as_str(),
        "iterations": rep.iterations,
        "final_distance": float(rep.final_distance),
        "basis": basis(&space.basis),
    });
    if let Some(g) = &rep.gram {
        report["gram"] = sym(g);
    }
    if rep.status.is_feasible() {
        let cert = factor_certificate(&space, &rep)?;
        report["certificate"] = json!({
            "exact": cert.exact,
            "factor": forms(&cert.h),
            "weights": cert.weights.iter().map(rat).collect::<Vec<_>>(),
            "residual": float(cert.residual),
        });
    }
    ok(report)
}

fn polarize_job(f: RatFn, psd_slot: Option<usize>, job: &JobSpec) -> Result<Outcome> {
    let (q, p) = (f.denominator(), f.numerator());
    let (pol, status) = match psd_slot {
        Some(k) => {
            if k == 0 {
                return Err(Error::BadInput("variables are numbered from 1".into()));
            }
            let r = polarize_with_psd_slot_opts(q, p, k - 1, &Form::one(f.nvars()), &job.sos_options())?;
            (r.polarization, Some(r.status.as_str()))
        }
        None => (polarize_product(q, p)?, None),
    };
    ok(json!({
        "command": "polarize",
        "status": "ok",
        "m": pol.m,
        "basis": basis(&pol.basis),
        "size": pol.size(),
        "multiaffine_size": pol.multiaffine_size,
        "psd_slot": psd_slot.map(|k| var(k - 1)),
        "gram_status": status,
        "pencil": pencil(&pol.pencil),
        "product_identity": check_product_identity(q, p, &pol.basis, &pol.pencil),
        "wronskian_identity": check_wronskian_identity(q, p, &pol.basis, &pol.pencil),
    }))
}

fn reduce_job(f: RatFn, var_index: usize, bound: u32) -> Result<Outcome> {
    if var_index == 0 {
        return Err(Error::BadInput("variables are numbered from 1".into()));
    }
    let plan = ReductionPlan::appended(var_index - 1, bound, f.nvars())?;
    let q = reduce_degree(f.denominator(), &plan)?;
    let p = f.numerator();
    let entries = p
        .entries()
        .iter()
        .map(|e| reduce_degree(e, &plan))
        .collect::<Result<Vec<_>>>()?;
    let p = MatrixForm::new(p.rows(), p.cols(), entries)?;
    let map = plan.identification();
    let restored = identify_matrix(&p, &map) == *f.numerator() && identify_variables(&q, &map) == *f.denominator();
    ok(json!({
        "command": "reduce",
        "status": "ok",
        "d": plan.nvars_out,
        "m": p.rows(),
        "num": forms(&p),
        "den": q.to_string(),
        "fresh_variables": plan.new_vars.iter().map(|&j| var(j)).collect::<Vec<_>>(),
        "identifies_back": restored,
    }))
}
