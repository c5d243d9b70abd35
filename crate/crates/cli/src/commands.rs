//! Command registry and the commands themselves.

use std::collections::BTreeMap;

use mixmult_core::filterreg::{
    explore_maximal_lengths, find_sequence, length_drop_mismatches, positivity_with_table,
    stabilization_index, verify_sequence, FilterRegOptions, FilterRegularCertificate,
    FilterRegularStep, SequenceCheck, SequenceSearch, Verdict,
};

use mixmult_core::hilbert::{
    analyze, graded_count, scaled_diagonal_leading_coefficient, vanishing_test, CounterRegistry, GradedQuotient,
    HilbertAnalysis, HilbertOptions,
};
use mixmult_core::idealmm::{
    bhattacharya_table, direct_colength, is_superficial, t_length, theorem45_check, IdealOptions,
    SuperficialOutcome,
};
use mixmult_core::kernel::{BlockRingSpec, MonomialIdeal, MultiDegree, Var};
use mixmult_core::poly::rational_to_string;
use mixmult_core::Error;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::fixtures::Builtin;
use crate::model::{Model, SystemDecl};
use crate::report::{big, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub ideal: Option<String>,
    pub system: Option<String>,
    pub at: Option<Vec<u32>>,
    pub type_vector: Option<Vec<u32>>,
    pub seq: Option<Vec<String>>,
    pub var: Option<String>,
    pub index: Option<usize>,
    pub base: Option<u32>,
    pub window: u32,
    pub max_base: u32,
    pub budget: usize,
    pub counter: String,
    pub window_start: Option<u32>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            ideal: None,
            system: None,
            at: None,
            type_vector: None,
            seq: None,
            var: None,
            index: None,
            base: None,
            window: 3,
            max_base: 64,
            budget: 10_000,
            counter: "auto".into(),
            window_start: None,
        }
    }
}

pub struct Context {
    pub input: String,
    pub builtin: Option<Builtin>,
    pub model: Model,
    pub opts: Options,
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Result payload and whether every check inside it passed.
    fn run(&self, ctx: &Context, guards: &mut Vec<String>) -> CliResult<(Value, bool)>;
}

pub struct Registry {
    commands: BTreeMap<&'static str, Box<dyn Command>>,
}

impl Registry {
    pub fn with_builtins() -> Self {
        let mut r = Registry {
            commands: BTreeMap::new(),
        };
        r.register(Box::new(HilbertAt));
        r.register(Box::new(MixedTable));
        r.register(Box::new(FilterSeq));
        r.register(Box::new(Positivity));
        r.register(Box::new(MaximalLengths));
        r.register(Box::new(IdealMm));
        r.register(Box::new(Superficial));
        r.register(Box::new(Theorem45));
        r.register(Box::new(Verify));
        r
    }

    pub fn register(&mut self, command: Box<dyn Command>) {
        self.commands.insert(command.name(), command);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.commands.keys().copied().collect()
    }

    pub fn summaries(&self) -> Vec<(&'static str, &'static str)> {
        self.commands.values().map(|c| (c.name(), c.summary())).collect()
    }

    pub fn execute(&self, name: &str, ctx: &Context) -> CliResult<Report> {
        let command = self.commands.get(name).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown command `{name}` (known: {})",
                self.names().join(", ")
            ))
        })?;
        let mut guards = Vec::new();
        let (result, ok) = command.run(ctx, &mut guards)?;
        Ok(Report {
            command: name.to_string(),
            config: config(ctx),
            result,
            guards,
            ok,
        })
    }
}

fn config(ctx: &Context) -> Map<String, Value> {
    let o = &ctx.opts;
    let mut c = Map::new();
    c.insert("input".into(), json!(ctx.input));
    if let Some(Builtin::Example36 { t }) = ctx.builtin {
        c.insert("t".into(), json!(t));
    }
    let list = |v: &Option<Vec<u32>>| v.as_ref().map_or(Value::Null, |v| json!(v));
    c.insert("ideal".into(), json!(o.ideal));
    c.insert("system".into(), json!(o.system));
    c.insert("at".into(), list(&o.at));
    c.insert("type".into(), list(&o.type_vector));
    c.insert("seq".into(), json!(o.seq));
    c.insert("var".into(), json!(o.var));
    c.insert("index".into(), json!(o.index));
    c.insert(
        "base".into(),
        o.base.map_or_else(|| json!("auto"), |b| json!(b)),
    );
    c.insert("window".into(), json!(o.window));
    c.insert("max_base".into(), json!(o.max_base));
    c.insert("budget".into(), json!(o.budget));
    c.insert("counter".into(), json!(o.counter));
    c.insert("window_start".into(), json!(o.window_start));
    c
}

fn quotient(ctx: &Context) -> CliResult<GradedQuotient> {
    let model = &ctx.model;
    let ideal = match &ctx.opts.ideal {
        Some(name) => model
            .ideal(name)
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("no ideal named `{name}`")))?,
        None => model
            .ideals
            .first()
            .map(|(_, i)| i.clone())
            .unwrap_or_else(|| MonomialIdeal::zero(model.ring.num_vars())),
    };
    Ok(GradedQuotient::new(model.ring.clone(), ideal)?)
}

fn system(ctx: &Context) -> CliResult<&SystemDecl> {
    let model = &ctx.model;
    match &ctx.opts.system {
        Some(name) => model
            .system(name)
            .ok_or_else(|| CliError::Usage(format!("no system named `{name}`"))),
        None => model
            .systems
            .first()
            .map(|(_, s)| s)
            .ok_or_else(|| CliError::Usage("the model declares no system".into())),
    }
}

fn hilbert_options(ctx: &Context) -> CliResult<HilbertOptions> {
    let o = &ctx.opts;
    Ok(HilbertOptions {
        base: o.base,
        window: o.window,
        max_base: o.max_base,
        counter: CounterRegistry::with_builtins().get(&o.counter)?,
    })
}

fn filter_options(ctx: &Context) -> CliResult<FilterRegOptions> {
    Ok(FilterRegOptions {
        budget: ctx.opts.budget,
        hilbert: hilbert_options(ctx)?,
    })
}

fn ideal_options(ctx: &Context) -> IdealOptions {
    IdealOptions {
        base: ctx.opts.base,
        window: ctx.opts.window,
        max_base: ctx.opts.max_base,
        ..IdealOptions::default()
    }
}

fn required<'a, T>(value: &'a Option<T>, flag: &str) -> CliResult<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("this command needs {flag}")))
}

fn variables(spec: &BlockRingSpec, names: &[String]) -> CliResult<Vec<Var>> {
    names
        .iter()
        .map(|n| spec.var(n).map_err(CliError::from))
        .collect()
}

fn type_key(k: &[u32]) -> String {
    k.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn step_json(spec: &BlockRingSpec, step: &FilterRegularStep) -> Value {
    json!({
        "variable": spec.var_name(step.variable),
        "block": step.block + 1,
        "colon": step.colon.format(spec),
        "saturation": step.saturation.format(spec),
        "inclusion": step.inclusion_holds,
    })
}

fn certificate_json(spec: &BlockRingSpec, cert: &FilterRegularCertificate) -> Value {
    json!({
        "sequence": cert.variables().iter().map(|&v| spec.var_name(v)).collect::<Vec<_>>(),
        "type": cert.type_vector,
        "steps": cert.steps.iter().map(|s| step_json(spec, s)).collect::<Vec<_>>(),
        "final_ideal": cert.final_quotient.ideal().format(spec),
    })
}

fn escalation_guards(analysis: &HilbertAnalysis, guards: &mut Vec<String>) {
    for b in &analysis.escalations {
        guards.push(format!("grid base {} rejected; base doubled", MultiDegree(b.clone())));
    }
}

fn table_json(entries: &[(Vec<u32>, BigUint)]) -> Value {
    let mut m = Map::new();
    for (k, e) in entries {
        m.insert(type_key(k), big(e));
    }
    Value::Object(m)
}

struct HilbertAt;

impl Command for HilbertAt {
    fn name(&self) -> &'static str {
        "hilbert-at"
    }

    fn summary(&self) -> &'static str {
        "length of one graded piece (--at)"
    }

    fn run(&self, ctx: &Context, _: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let m = quotient(ctx)?;
        let at = MultiDegree(required(&ctx.opts.at, "--at")?.clone());
        let counter = CounterRegistry::with_builtins().get(&ctx.opts.counter)?;
        if at.len() != m.num_blocks() {
            return Err(Error::Validation(format!(
                "multidegree has {} entries but the ring has {} blocks",
                at.len(),
                m.num_blocks()
            ))
            .into());
        }
        let length = counter.count(&m, &at)?;
        Ok((
            json!({ "multidegree": at.to_string(), "length": big(&length) }),
            true,
        ))
    }
}

struct MixedTable;

impl Command for MixedTable {
    fn name(&self) -> &'static str {
        "mixed-table"
    }

    fn summary(&self) -> &'static str {
        "Hilbert polynomial, diagonal dimension and mixed multiplicities"
    }

    fn run(&self, ctx: &Context, guards: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let m = quotient(ctx)?;
        let analysis = analyze(&m, &hilbert_options(ctx)?)?;
        escalation_guards(&analysis, guards);
        let p = &analysis.profile;
        Ok((
            json!({
                "ell": p.ell,
                "degree": analysis.polynomial.total_degree(),
                "polynomial": analysis.polynomial.to_string(),
                "diagonal": p.poly.to_string(),
                "base": analysis.polynomial.base(),
                "table": table_json(analysis.table.entries()),
                "sum": big(&analysis.table.sum()),
                "weighted_sum": big(&analysis.table.multinomial_weighted_sum()),
                "scaled_diagonal_leading_coefficient":
                    rational_to_string(&scaled_diagonal_leading_coefficient(p)),
            }),
            true,
        ))
    }
}

struct FilterSeq;

impl Command for FilterSeq {
    fn name(&self) -> &'static str {
        "filter-seq"
    }

    fn summary(&self) -> &'static str {
        "verify a variable sequence (--seq) or search one of a type (--type)"
    }

    fn run(&self, ctx: &Context, guards: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let m = quotient(ctx)?;
        let spec = m.spec();
        if let Some(names) = &ctx.opts.seq {
            let seq = variables(spec, names)?;
            let value = match verify_sequence(&m, &seq)? {
                SequenceCheck::Verified(cert) => json!({
                    "status": "verified",
                    "certificate": certificate_json(spec, &cert),
                    "maximal": vanishing_test(&cert.final_quotient),
                }),
                SequenceCheck::NotFilterRegular { index, evidence } => json!({
                    "status": "not-filter-regular",
                    "failed_step": index + 1,
                    "evidence": step_json(spec, &evidence),
                }),
                SequenceCheck::VanishingBefore { index } => json!({
                    "status": "vanishing-before-step",
                    "failed_step": index + 1,
                }),
            };
            return Ok((value, true));
        }
        let ty = required(&ctx.opts.type_vector, "--seq or --type")?;
        let value = match find_sequence(&m, ty, &filter_options(ctx)?)? {
            SequenceSearch::Found(cert) => json!({
                "status": "found",
                "certificate": certificate_json(spec, &cert),
            }),
            SequenceSearch::NotFound => json!({ "status": "not-found" }),
            SequenceSearch::BudgetExhausted => {
                guards.push(format!("search budget of {} tests exhausted", ctx.opts.budget));
                json!({ "status": "budget-exhausted" })
            }
        };
        Ok((value, true))
    }
}

fn verdict_json(spec: &BlockRingSpec, verdict: &Verdict) -> Value {
    match verdict {
        Verdict::Positive {
            e,
            certificate,
            stabilization,
        } => json!({
            "verdict": "positive",
            "e": big(e),
            "r_hat": stabilization.index,
            "stable_length": big(&stabilization.value),
            "checked_through": stabilization.checked_through,
            "certificate": certificate_json(spec, certificate),
        }),
        Verdict::Zero { witness } => json!({
            "verdict": "zero",
            "witness": witness.as_ref().map(|w| certificate_json(spec, w)),
        }),
        Verdict::PositiveWithoutVariableSequence { exhausted } => json!({
            "verdict": "positive-without-variable-sequence",
            "budget_exhausted": exhausted,
        }),
    }
}

struct Positivity;

impl Command for Positivity {
    fn name(&self) -> &'static str {
        "positivity"
    }

    fn summary(&self) -> &'static str {
        "positivity certificates for one type (--type) or every type"
    }

    fn run(&self, ctx: &Context, guards: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let m = quotient(ctx)?;
        let opts = filter_options(ctx)?;
        let analysis = analyze(&m, &opts.hilbert)?;
        escalation_guards(&analysis, guards);
        let ell = analysis.profile.ell;
        let types: Vec<Vec<u32>> = match &ctx.opts.type_vector {
            Some(t) => vec![t.clone()],
            None => analysis.table.entries().iter().map(|(k, _)| k.clone()).collect(),
        };
        let mut reports = Vec::new();
        for ty in &types {
            let r = positivity_with_table(&m, ty, ell, &analysis.table, &opts)?;
            if let Verdict::PositiveWithoutVariableSequence { exhausted: true } = r.verdict {
                guards.push(format!("search budget exhausted for type {}", type_key(ty)));
            }
            let mut v = verdict_json(m.spec(), &r.verdict);
            v["type"] = json!(ty);
            v["coefficient"] = big(&r.coefficient_e);
            reports.push(v);
        }
        let value = if ctx.opts.type_vector.is_some() {
            reports.pop().unwrap_or(Value::Null)
        } else {
            json!({ "ell": ell, "reports": reports })
        };
        Ok((value, true))
    }
}

struct MaximalLengths;

impl Command for MaximalLengths {
    fn name(&self) -> &'static str {
        "maximal-lengths"
    }

    fn summary(&self) -> &'static str {
        "lengths of maximal filter-regular variable sequences"
    }

    fn run(&self, ctx: &Context, guards: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let m = quotient(ctx)?;
        let found = explore_maximal_lengths(&m, ctx.opts.budget)?;
        if found.exhausted {
            guards.push(format!("search budget of {} tests exhausted", ctx.opts.budget));
        }
        let mut examples = Map::new();
        for (len, seq) in &found.examples {
            let names: Vec<&str> = seq.iter().map(|&v| m.spec().var_name(v)).collect();
            examples.insert(len.to_string(), json!(names));
        }
        Ok((
            json!({
                "lengths": found.lengths(),
                "max": found.max(),
                "examples": examples,
                "exhausted": found.exhausted,
                "tests": found.tests,
            }),
            true,
        ))
    }
}

struct IdealMm;

impl Command for IdealMm {
    fn name(&self) -> &'static str {
        "ideal-mm"
    }

    fn summary(&self) -> &'static str {
        "mixed multiplicities of an ideal system (--system, optional --at)"
    }

    fn run(&self, ctx: &Context, guards: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let decl = system(ctx)?;
        let sys = &decl.system;
        let opts = ideal_options(ctx);
        let table = bhattacharya_table(sys, &opts)?;
        for b in &table.escalations {
            guards.push(format!("grid base {} rejected; base doubled", MultiDegree(b.clone())));
        }
        let mut value = json!({
            "system": sys.format(),
            "q": sys.q(),
            "primary_exponent": sys.primary_exponent(),
            "polynomial": table.polynomial.to_string(),
            "table": table_json(table.table.entries()),
        });
        if let Some(at) = &ctx.opts.at {
            value["t_length"] = big(&t_length(sys, at, &opts)?);
            value["direct_colength"] = match direct_colength(sys, at, &opts) {
                Ok(n) => big(&n),
                Err(Error::Precondition(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
        }
        Ok((value, true))
    }
}

fn superficial_json(outcome: &SuperficialOutcome) -> Value {
    match outcome {
        SuperficialOutcome::Verified { low, high } => json!({
            "verdict": "verified",
            "window": [low, high],
        }),
        SuperficialOutcome::FailedAt { tuple, condition } => json!({
            "verdict": "failed",
            "tuple": tuple,
            "condition": format!("{condition:?}").to_lowercase(),
        }),
    }
}

struct Superficial;

impl Command for Superficial {
    fn name(&self) -> &'static str {
        "superficial"
    }

    fn summary(&self) -> &'static str {
        "window test of a superficial variable (--system, --var, --index)"
    }

    fn run(&self, ctx: &Context, _: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let decl = system(ctx)?;
        let spec = decl.system.spec();
        let name = required(&ctx.opts.var, "--var")?;
        let x = spec.var(name)?;
        let i = *required(&ctx.opts.index, "--index")?;
        let outcome = is_superficial(&decl.system, x, i, ctx.opts.window_start)?;
        let mut v = superficial_json(&outcome);
        v["variable"] = json!(name);
        v["index"] = json!(i);
        Ok((v, true))
    }
}

/// `x` or `x:i`; a bare name goes to the first ideal containing it that
/// still needs members.
fn superficial_sequence(decl: &SystemDecl, items: &[String], ty: &[u32]) -> CliResult<Vec<(Var, usize)>> {
    let sys = &decl.system;
    let spec = sys.spec();
    let mut remaining = ty.to_vec();
    let mut out = Vec::new();
    for item in items {
        let (name, index) = match item.split_once(':') {
            Some((n, i)) => (
                n,
                Some(i.parse::<usize>().map_err(|_| CliError::Usage(format!("bad index in `{item}`")))?),
            ),
            None => (item.as_str(), None),
        };
        let x = spec.var(name)?;
        let i = match index {
            Some(i) => i,
            None => (1..=sys.s())
                .find(|&i| remaining.get(i).copied().unwrap_or(0) > 0 && sys.member(i).contains(&spec.variable(x)))
                .ok_or_else(|| {
                    CliError::Core(Error::Precondition(format!("`{name}` lies in no ideal that still needs members")))
                })?,
        };
        if let Some(r) = remaining.get_mut(i) {
            *r = r.saturating_sub(1);
        }
        out.push((x, i));
    }
    Ok(out)
}

struct Theorem45;

impl Command for Theorem45 {
    fn name(&self) -> &'static str {
        "theorem45"
    }

    fn summary(&self) -> &'static str {
        "compare a mixed multiplicity of ideals with e(J; R/(seq):I^∞)"
    }

    fn run(&self, ctx: &Context, _: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let decl = system(ctx)?;
        let sys = &decl.system;
        let spec = sys.spec();
        let ty = required(&ctx.opts.type_vector, "--type")?;
        let items = ctx.opts.seq.clone().unwrap_or_default();
        let seq = superficial_sequence(decl, &items, ty)?;
        let report = theorem45_check(sys, ty, &seq, &ideal_options(ctx))?;
        let holds = report.holds();
        Ok((
            json!({
                "type": report.type_vector,
                "sequence": report.sequence.iter().map(|&(x, i)| json!({"variable": spec.var_name(x), "index": i})).collect::<Vec<_>>(),
                "steps": report.steps.iter().map(superficial_json).collect::<Vec<_>>(),
                "table_entry": big(&report.table_entry),
                "saturated": report.saturated.format(spec),
                "expected_dimension": report.expected_dimension,
                "dimension": report.hilbert_samuel.dimension,
                "hilbert_samuel": big(&report.hilbert_samuel.multiplicity),
                "status": if holds { "EQUAL" } else { "MISMATCH" },
            }),
            holds,
        ))
    }
}

struct Checks(Vec<Value>);

impl Checks {
    fn add(&mut self, name: &str, passed: bool, detail: impl Into<Value>) {
        self.0.push(json!({
            "check": name,
            "status": if passed { "PASS" } else { "FAIL" },
            "detail": detail.into(),
        }));
    }

    fn passed(&self) -> bool {
        self.0.iter().all(|c| c["status"] == "PASS")
    }
}

fn check_sequence(
    checks: &mut Checks,
    m: &GradedQuotient,
    names: &[&str],
    window_extra: u32,
) -> CliResult<Option<FilterRegularCertificate>> {
    let spec = m.spec();
    let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let seq = variables(spec, &owned)?;
    let label = names.join(",");
    match verify_sequence(m, &seq)? {
        SequenceCheck::Verified(cert) => {
            checks.add(&format!("sequence {label} is filter-regular"), true, Value::Null);
            let mut current = m.clone();
            let mut bad = 0;
            for &x in &seq {
                bad += length_drop_mismatches(&current, x, window_extra)?.len();
                current = mixmult_core::filterreg::cut(&current, &[x]);
            }
            checks.add(
                &format!("length drop identity along {label}"),
                bad == 0,
                json!({ "mismatches": bad }),
            );
            Ok(Some(cert))
        }
        other => {
            checks.add(
                &format!("sequence {label} is filter-regular"),
                false,
                format!("{other:?}"),
            );
            Ok(None)
        }
    }
}

fn generic_checks(
    checks: &mut Checks,
    m: &GradedQuotient,
    analysis: &HilbertAnalysis,
    opts: &FilterRegOptions,
) -> CliResult<()> {
    let p = &analysis.profile;
    checks.add(
        "polynomial degree is ℓ - 1",
        analysis.polynomial.total_degree() == Some(p.ell - 1),
        json!({ "ell": p.ell, "degree": analysis.polynomial.total_degree() }),
    );
    let weighted = analysis.table.multinomial_weighted_sum();
    let scaled = scaled_diagonal_leading_coefficient(p);
    checks.add(
        "Σ (ℓ-1)!/k! e(k) equals (ℓ-1)! times the diagonal leading coefficient",
        mixmult_core::poly::as_natural(&scaled).as_ref() == Some(&weighted),
        json!({ "weighted_sum": big(&weighted), "scaled": rational_to_string(&scaled) }),
    );
    let mut consistent = true;
    let mut inconclusive = Vec::new();
    let mut remark_bad = 0usize;
    for (ty, _) in analysis.table.entries() {
        let r = positivity_with_table(m, ty, p.ell, &analysis.table, opts)?;
        match &r.verdict {
            Verdict::Positive { certificate, .. } => {
                let mut current = m.clone();
                for step in &certificate.steps {
                    remark_bad += length_drop_mismatches(&current, step.variable, 1)?.len();
                    current = mixmult_core::filterreg::cut(&current, &[step.variable]);
                }
            }
            Verdict::Zero { .. } => consistent &= r.coefficient_e.is_zero(),
            Verdict::PositiveWithoutVariableSequence { .. } => inconclusive.push(type_key(ty)),
        }
    }
    checks.add(
        "positivity verdicts agree with the table",
        consistent,
        json!({ "without_variable_sequence": inconclusive }),
    );
    checks.add(
        "length drop identity along every certificate",
        remark_bad == 0,
        json!({ "mismatches": remark_bad }),
    );
    Ok(())
}

fn example37_checks(checks: &mut Checks, m: &GradedQuotient, analysis: &HilbertAnalysis, budget: usize) -> CliResult<()> {
    let spec = m.spec();
    let p = &analysis.profile;
    checks.add("ℓ = 5", p.ell == 5, json!(p.ell));
    checks.add(
        "total degree 4",
        analysis.polynomial.total_degree() == Some(4),
        json!(analysis.polynomial.total_degree()),
    );
    let positive = [vec![2, 2, 0], vec![2, 0, 2], vec![0, 2, 2]];
    let table_ok = analysis.table.entries().len() == 15
        && analysis.table.entries().iter().all(|(k, e)| {
            if positive.contains(k) {
                e.is_one()
            } else {
                e.is_zero()
            }
        });
    checks.add("table: e(2,2,0) = e(2,0,2) = e(0,2,2) = 1, others 0", table_ok, table_json(analysis.table.entries()));
    let sum = analysis.table.sum();
    checks.add("Σ e(k) = 3", sum == BigUint::from(3u32), big(&sum));

    if let Some(cert) = check_sequence(checks, m, &["x3", "x2", "y3", "y2"], 1)? {
        let vars = |names: &[&str]| {
            MonomialIdeal::new(spec.num_vars(), names.iter().map(|n| spec.variable(spec.var(n).unwrap())))
        };
        let expected = [
            MonomialIdeal::intersect_all(
                spec.num_vars(),
                &[
                    vars(&["x1", "x3", "y1", "z1"]),
                    vars(&["x3", "y1", "y2"]),
                    vars(&["x3", "z1", "z2"]),
                ],
            ),
            vars(&["x2", "x3", "y1", "y2"]).intersect(&vars(&["x2", "x3", "z1", "z2"])),
            vars(&["x2", "x3", "y3", "z1", "z2"]),
        ];
        let seq = cert.variables();
        let mut sats_ok = true;
        for (k, want) in expected.iter().enumerate() {
            let cut_k = mixmult_core::filterreg::cut(m, &seq[..=k]);
            sats_ok &= cut_k.saturated().ideal() == want;
        }
        checks.add("saturations after each cut", sats_ok, Value::Null);
        let stab = stabilization_index(&cert.final_quotient, &hilbert_default())?;
        let coefficient = analysis.table.get(&[2, 2, 0]).cloned().unwrap_or_default();
        checks.add(
            "saturated diagonal length of the cut is 1 from n = 0 and equals e(2,2,0)",
            stab.value.is_one() && stab.index == 0 && stab.value == coefficient,
            json!({ "e": big(&stab.value), "r_hat": stab.index, "checked_through": stab.checked_through }),
        );
    }
    if let Some(cert) = check_sequence(checks, m, &["x3", "x2", "x1"], 1)? {
        checks.add("x3,x2,x1 is maximal", vanishing_test(&cert.final_quotient), Value::Null);
    }
    if let Some(cert) = check_sequence(checks, m, &["x3", "x2", "y3", "z3"], 1)? {
        checks.add("x3,x2,y3,z3 is maximal", vanishing_test(&cert.final_quotient), Value::Null);
    }
    let found = explore_maximal_lengths(m, budget)?;
    checks.add(
        "longest maximal sequence has length 5",
        found.max() == Some(5) && !found.exhausted,
        json!({ "lengths": found.lengths(), "exhausted": found.exhausted }),
    );
    Ok(())
}

fn hilbert_default() -> HilbertOptions {
    HilbertOptions::default()
}

struct Verify;

impl Command for Verify {
    fn name(&self) -> &'static str {
        "verify"
    }

    fn summary(&self) -> &'static str {
        "end-to-end consistency checks (built-in facts for builtin inputs)"
    }

    fn run(&self, ctx: &Context, guards: &mut Vec<String>) -> CliResult<(Value, bool)> {
        let m = quotient(ctx)?;
        let opts = filter_options(ctx)?;
        let analysis = analyze(&m, &opts.hilbert)?;
        escalation_guards(&analysis, guards);
        let mut checks = Checks(Vec::new());
        let mut extra = Map::new();
        match ctx.builtin {
            Some(Builtin::Example37) => example37_checks(&mut checks, &m, &analysis, ctx.opts.budget)?,
            Some(Builtin::Example36 { t }) => {
                checks.add("ℓ = t", analysis.profile.ell == t, json!(analysis.profile.ell));
                let ty = vec![t - 1];
                let e_table = analysis.table.get(&ty).cloned().unwrap_or_default();
                checks.add("coefficient e(t-1) = 1", e_table.is_one(), big(&e_table));
                let r = positivity_with_table(&m, &ty, analysis.profile.ell, &analysis.table, &opts)?;
                match &r.verdict {
                    Verdict::Positive { e, stabilization, .. } => {
                        checks.add("pipeline e = 1", e.is_one(), big(e));
                        checks.add("r̂ = 0", stabilization.index == 0, json!(stabilization.index));
                        extra.insert("e".into(), big(e));
                        extra.insert("r_hat".into(), json!(stabilization.index));
                    }
                    other => checks.add("pipeline e = 1", false, verdict_json(m.spec(), other)),
                }
                let names: Vec<String> = (1..t).map(|i| format!("X{i}")).collect();
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                check_sequence(&mut checks, &m, &refs, 1)?;
                let length = graded_count(&m, &MultiDegree(vec![0]))?;
                checks.add("length in degree 0 is 1", length.is_one(), big(&length));
            }
            None => {}
        }
        generic_checks(&mut checks, &m, &analysis, &opts)?;
        let passed = checks.passed();
        let mut value = Map::new();
        value.insert("status".into(), json!(if passed { "PASS" } else { "FAIL" }));
        value.extend(extra);
        value.insert("checks".into(), Value::Array(checks.0));
        Ok((Value::Object(value), passed))
    }
}
