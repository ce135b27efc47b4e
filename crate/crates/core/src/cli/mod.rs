//! Configuration, the field → group → sequences pipeline, and the five
//! commands with their JSON and table renderings.

pub mod config;
mod render;

use serde_json::{json, Value};

pub use config::{parse_config, FieldSpec, Generator, JobConfig, OutputFormat, Seeds};

use crate::chartab::{character_table, indicator_functions, verify_orthogonality, CharacterTable};
use crate::declaw::{classify_primes, ClassifyOptions, SequenceClass};
use crate::error::{Error, Result};
use crate::exactmath::rational::{to_fraction_string, Rational};
use crate::exactmath::PolyQ;
use crate::galois::{FiniteGroup, GaloisGroup};
use crate::groupdet::{abelian_factorization, abelian_product_eval, abelian_product_matches, s3, sign_action_check, sym_group_det};
use crate::numfield::{NfElem, NumberField};
use crate::sequences::{Method, SequenceFamily};

/// Exit status contract.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Group orders up to which the symbolic sign-action check runs.
pub const SYMBOLIC_VERIFY_CAP: usize = 6;
const GENERATOR_TRIALS: usize = 500;

/// A configured field with its Galois group and sequence family.
#[derive(Debug)]
pub struct Job {
    pub config: JobConfig,
    pub family: SequenceFamily,
    var: &'static str,
}

impl Job {
    pub fn from_config(config: JobConfig) -> Result<Self> {
        let (field, var) = match &config.field {
            FieldSpec::Polynomial(f) => (NumberField::new(f.clone())?, "x"),
            FieldSpec::Base { base, .. } => (NumberField::new(base.clone())?, "a"),
        };
        let gal = galois_group(&config, &field)?;
        let xi = match &config.field {
            FieldSpec::Polynomial(_) => field.generator(),
            FieldSpec::Base { generator: Generator::Coefficients(c), .. } => field.element_from_coeffs(c),
            FieldSpec::Base { generator: Generator::Search, .. } => {
                gal.find_normal_basis_generator(config.seeds.generator, GENERATOR_TRIALS)?
            }
        };
        let family = SequenceFamily::new(gal, xi)?;
        Ok(Job { config, family, var })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_config(parse_config(text)?)
    }

    pub fn field(&self) -> &NumberField {
        self.family.field()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.family.galois().group()
    }

    /// Variable name used when printing field elements.
    pub fn var(&self) -> &'static str {
        self.var
    }

    fn elem(&self, a: &NfElem) -> Value {
        let d = self.field().degree();
        json!({
            "text": self.field().format_elem(a, self.var),
            "coefficients": a.coefficients(d).iter().map(to_fraction_string).collect::<Vec<_>>(),
        })
    }
}

fn galois_group(config: &JobConfig, field: &NumberField) -> Result<GaloisGroup> {
    let order = config.class_order.as_deref();
    match &config.automorphisms {
        Some(images) => {
            let d = field.degree();
            let images = images
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if c.len() > d {
                        Err(Error::config(format!("$.automorphisms[{i}]"), "more coefficients than the degree"))
                    } else {
                        Ok(field.element_from_coeffs(c))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            GaloisGroup::from_automorphisms(field, images, order)
        }
        None => GaloisGroup::discover(field, config.precision_cap, order),
    }
}

/// A finished command: structured value, its table rendering and the exit
/// status.
#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub value: Value,
    pub table: String,
    pub status: i32,
}

impl CommandOutput {
    fn ok(value: Value, table: String) -> Self {
        CommandOutput { value, table, status: EXIT_OK }
    }

    /// Rendered text in the requested format, newline-terminated.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("serializable");
                s.push('\n');
                s
            }
            OutputFormat::Table => self.table.clone(),
        }
    }
}

fn frac_list(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_fraction_string).collect()
}

fn poly_value(f: &PolyQ, var: &str) -> Value {
    json!({ "text": f.to_string_in(var), "coefficients": frac_list(f.coeffs()) })
}

fn class_label(j: usize) -> String {
    format!("K{}", j + 1)
}

pub fn analyze(job: &Job) -> Result<CommandOutput> {
    let fam = &job.family;
    let field = job.field();
    let group = job.group();
    let gal = fam.galois();
    let d = fam.degree();
    let classes: Vec<Value> = group
        .classes()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            json!({
                "label": class_label(j),
                "size": c.size(),
                "members": c.members,
                "representative": c.representative,
                "centralizerOrder": c.centralizer_order,
                "sign": group.sign(c.representative),
            })
        })
        .collect();
    let automorphisms: Vec<Value> = (0..d)
        .map(|s| json!({ "index": s, "class": class_label(group.class_of(s)), "image": job.elem(gal.image(s)) }))
        .collect();
    let det = &fam.gamma().det;
    let det_rational = det.as_rational().map(|q| to_fraction_string(&q));
    let columns: Vec<Value> = (0..fam.class_count())
        .map(|j| json!({ "class": class_label(j), "terms": frac_list(&fam.column(j)) }))
        .collect();
    let value = json!({
        "field": {
            "modulus": poly_value(field.modulus(), "X"),
            "degree": d,
            "discriminant": to_fraction_string(&field.discriminant()),
        },
        "generator": job.elem(fam.xi()),
        "minimalPolynomial": poly_value(fam.min_poly(), "X"),
        "group": {
            "order": group.order(),
            "abelian": group.is_abelian(),
            "exponent": group.exponent(),
            "classes": classes,
            "automorphisms": automorphisms,
        },
        "groupMatrix": {
            "det": job.elem(det),
            "detRational": det_rational,
        },
        "initialTerms": columns,
    });
    let table = render::analyze_table(job);
    Ok(CommandOutput::ok(value, table))
}

#[derive(Clone, Copy, Debug)]
pub struct SequenceRequest {
    /// 0-based class index; `None` for every class.
    pub class: Option<usize>,
    pub from: usize,
    /// Inclusive; defaults to `d − 1`.
    pub to: Option<usize>,
    pub method: Method,
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Matrix => "matrix",
        Method::Direct => "direct",
        Method::Trace => "trace",
    }
}

pub fn sequences(job: &Job, req: SequenceRequest) -> Result<CommandOutput> {
    let fam = &job.family;
    let r = fam.class_count();
    let to = req.to.unwrap_or(fam.degree() - 1);
    if to < req.from {
        return Err(Error::config("--to", format!("{to} is below --from {}", req.from)));
    }
    let classes: Vec<usize> = match req.class {
        Some(j) if j < r => vec![j],
        Some(j) => return Err(Error::config("--class", format!("class {} does not exist (there are {r})", j + 1))),
        None => (0..r).collect(),
    };
    let mut rows = Vec::new();
    for &j in &classes {
        let terms = match req.method {
            Method::Matrix => fam.terms_by_recurrence(j, req.from, to + 1),
            m => (req.from..=to).map(|i| fam.term(m, j, i)).collect::<Result<Vec<_>>>()?,
        };
        rows.push((j, terms));
    }
    let value = json!({
        "method": method_name(req.method),
        "from": req.from,
        "to": to,
        "sequences": rows.iter().map(|(j, t)| json!({ "class": class_label(*j), "terms": frac_list(t) })).collect::<Vec<_>>(),
    });
    let table = render::sequences_table(req.from, &rows);
    Ok(CommandOutput::ok(value, table))
}

pub fn classify(job: &Job, max_prime: u64, jobs: usize) -> Result<CommandOutput> {
    let opts = ClassifyOptions { jobs, seed: job.config.seeds.factor, trial_bound: job.config.trial_bound };
    let c = classify_primes(&job.family, max_prime, opts)?;
    let verdicts: Vec<Value> = c
        .verdicts
        .iter()
        .map(|v| {
            let class = match &v.sequence_class {
                Some(SequenceClass::Class(j)) => json!(j + 1),
                Some(SequenceClass::Inconsistent) => json!("inconsistent"),
                None => Value::Null,
            };
            let mut o = json!({
                "p": v.p,
                "skipped": v.is_skipped(),
                "reason": v.skipped.map(|r| r.as_str()),
                "residues": v.residues,
                "class": class,
                "oracleClass": v.oracle.class().map(|k| k + 1),
                "agree": v.agree,
            });
            if v.partial {
                o["partial"] = json!(true);
            }
            if v.oracle.class().is_none() {
                o["oracleNote"] = json!(v.oracle.describe());
            }
            o
        })
        .collect();
    let r = &c.report;
    let report = json!({
        "maxPrime": r.max_prime,
        "trialDivisionBound": r.trial_bound,
        "detPower": r.det_power,
        "sources": r.sources.iter().map(|s| json!({
            "name": s.name,
            "factors": s.factorization.factors.iter().map(|&(p, e)| json!([p, e])).collect::<Vec<_>>(),
            "cofactor": s.factorization.cofactor.to_string(),
        })).collect::<Vec<_>>(),
        "predicted": r.predicted,
        "unfactored": r.unfactored.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "observed": r.observed,
        "skipped": r.skipped,
        "classes": (0..job.family.class_count()).map(|j| json!({
            "class": class_label(j),
            "primes": c.primes_in_class(j),
        })).collect::<Vec<_>>(),
    });
    let value = json!({ "verdicts": verdicts, "report": report });
    let table = render::classify_table(&c, job.family.class_count());
    Ok(CommandOutput::ok(value, table))
}

pub fn chartab(job: &Job) -> Result<CommandOutput> {
    let group = job.group();
    let t = character_table(group)?;
    let orth = verify_orthogonality(&t, group);
    let value = json!({
        "exponent": t.exponent(),
        "cyclotomicPolynomial": poly_value(t.field().modulus(), "z"),
        "prime": t.prime(),
        "classes": group.classes().iter().enumerate().map(|(j, c)| json!({
            "label": class_label(j), "size": c.size(), "centralizerOrder": c.centralizer_order,
        })).collect::<Vec<_>>(),
        "characters": (0..t.len()).map(|psi| json!({
            "degree": t.degrees()[psi],
            "values": (0..group.class_count()).map(|j| t.format_value(psi, j)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "orthogonality": { "degreeSum": orth.degree_sum, "column": orth.column, "row": orth.row },
    });
    let table = render::chartab_table(&t, group);
    Ok(CommandOutput::ok(value, table))
}

/// One named check in `verify`.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, skipped: false, detail: detail.into() }
}

fn skipped(name: &str, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed: true, skipped: true, detail: detail.into() }
}

fn outcome(name: &str, r: Result<bool>, ok: &str) -> Check {
    match r {
        Ok(true) => check(name, true, ok),
        Ok(false) => check(name, false, "identity does not hold"),
        Err(e) => check(name, false, e.to_string()),
    }
}

/// Number of terms compared across the three formulas in `verify`.
pub const VERIFY_TERMS: usize = 21;

/// Runs every invariant suite on the job.
pub fn verify_checks(job: &Job) -> Vec<Check> {
    let fam = &job.family;
    let field = job.field();
    let group = job.group();
    let d = fam.degree();
    let r = fam.class_count();
    let mut out = vec![check("automorphisms", true, format!("{d} images satisfy F(image) = 0"))];

    out.push(check(
        "group axioms",
        FiniteGroup::from_table(group.table().to_vec()).is_ok(),
        "identity, inverses, associativity",
    ));
    let class_eq = group.classes().iter().map(|c| c.size()).sum::<usize>() == d
        && group.classes().iter().all(|c| c.size() * c.centralizer_order == d);
    out.push(check("class equation", class_eq, format!("{r} classes")));

    let table: Option<CharacterTable> = match character_table(group) {
        Ok(t) => {
            let o = verify_orthogonality(&t, group);
            out.push(check(
                "orthogonality",
                o.passed(),
                format!("degree sum {}, C'C diagonal {}, rows {}", o.degree_sum, o.column, o.row),
            ));
            match indicator_functions(&t, group) {
                Ok(_) => out.push(check("class indicators", true, "k_j*(rho_i) = delta_ji")),
                Err(e) => out.push(check("class indicators", false, e.to_string())),
            }
            Some(t)
        }
        Err(e) => {
            out.push(check("orthogonality", false, e.to_string()));
            None
        }
    };

    let gamma = fam.gamma();
    out.push(check("det nonzero", !gamma.det.is_zero(), "det of the group matrix at xi"));
    out.push(check("adjugate", gamma.check_adjugate(field, group), "Gamma * adj = det * I, adj from the partials"));

    if d <= SYMBOLIC_VERIFY_CAP {
        match sym_group_det(group, SYMBOLIC_VERIFY_CAP) {
            Ok(sym) => {
                let rep = sign_action_check(&sym, group);
                out.push(check(
                    "sign action",
                    rep.passed(),
                    format!("{} pairs, {} failures", rep.pairs_checked, rep.failures.len() + rep.det_failures.len()),
                ));
                if let (true, Some(t)) = (group.is_abelian(), &table) {
                    let ok = abelian_factorization(group, t).map(|f| abelian_product_matches(&sym, &f, t));
                    out.push(outcome("abelian factorization", ok, "det equals the product of linear forms"));
                }
            }
            Err(e) => out.push(check("sign action", false, e.to_string())),
        }
    } else {
        out.push(skipped("sign action", format!("symbolic check limited to order {SYMBOLIC_VERIFY_CAP}")));
    }
    if let (true, Some(t)) = (group.is_abelian(), &table) {
        out.push(outcome(
            "abelian factorization at xi",
            abelian_product_eval(fam.galois(), t, fam.xi(), &gamma.det),
            "det equals the product of the evaluated linear forms",
        ));
    }
    if d == 6 && !group.is_abelian() {
        match s3::regression() {
            Ok((rep, _)) => {
                out.push(check("s3 determinant factorization", rep.factorization, "Delta(1) Delta(chi) Delta(psi)^2"));
                out.push(check("s3 partial", rep.partial_unscaled, "d_1 = Delta(psi) * cubic"));
            }
            Err(e) => out.push(check("s3 determinant factorization", false, e.to_string())),
        }
    }

    let agreement = (|| -> Result<bool> {
        for j in 0..r {
            let rec = fam.terms_by_recurrence(j, 0, VERIFY_TERMS);
            for (i, a) in rec.iter().enumerate() {
                if fam.term_direct(j, i)? != *a || fam.term_trace_form(j, i)? != *a {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    out.push(outcome(
        "term agreement",
        agreement,
        &format!("recurrence = direct = trace form for i < {VERIFY_TERMS}"),
    ));
    out.push(outcome(
        "indicator identity",
        (0..r).try_fold(true, |acc, j| Ok(acc && fam.check_indicator(j)?)),
        "class function values equal the class indicators",
    ));
    out.push(outcome("diagonalization", fam.check_diagonalization(), "R_F P = P diag(sigma^-1 xi)"));
    out.push(outcome(
        "shift",
        (0..r).try_fold(true, |acc, j| Ok(acc && fam.check_shift(j)?)),
        "shifting multiplies z_sigma by sigma^-1 xi",
    ));
    out.push(outcome("partition", fam.check_partition(), "columns of A sum to P Gamma^-1 1"));
    out
}

fn checks_output(checks: &[Check]) -> CommandOutput {
    let passed = checks.iter().all(|c| c.passed);
    let value = json!({
        "passed": passed,
        "checks": checks.iter().map(|c| {
            let mut o = json!({ "name": c.name, "passed": c.passed, "detail": c.detail });
            if c.skipped {
                o["skipped"] = json!(true);
            }
            o
        }).collect::<Vec<_>>(),
    });
    let table = render::checks_table(checks);
    CommandOutput { value, table, status: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED } }
}

/// `verify` from a parsed config. Failures while certifying automorphisms
/// are reported as failed checks rather than input errors.
pub fn verify_config(config: JobConfig) -> Result<CommandOutput> {
    match Job::from_config(config) {
        Ok(job) => Ok(checks_output(&verify_checks(&job))),
        Err(e @ (Error::NotARoot { .. } | Error::NotClosed(..) | Error::Automorphisms { .. })) => {
            Ok(checks_output(&[check("automorphisms", false, e.to_string())]))
        }
        Err(e) => Err(e),
    }
}

pub fn method_from_name(name: &str) -> Option<Method> {
    match name {
        "matrix" => Some(Method::Matrix),
        "direct" => Some(Method::Direct),
        "trace" => Some(Method::Trace),
        _ => None,
    }
}

/// Error value for the JSON error channel.
pub fn error_value(e: &Error) -> Value {
    match e {
        Error::Config { path, message } => json!({ "error": { "path": path, "message": message } }),
        other => json!({ "error": { "message": other.to_string() } }),
    }
}
