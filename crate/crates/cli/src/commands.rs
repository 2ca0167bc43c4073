use crate::{GraphArg, GraphFormat, ValueArgs};
use fcgp::fcgp::{write_instance, Alpha, AnnotatedInstance, PlainKernel, Variant};
use fcgp::graph::{compute_profile, min_vertex_cover, parse_graph, Format, Graph, ParameterProfile, DEFAULT_VC_BUDGET};
use fcgp::harness::{parse_manifest, run_battery};
use fcgp::rational::{fmt_rational, parse_rational, Rational};
use fcgp::rules::{
    kernelize as run_pipeline, lift_witness, parse_kernel_file, parse_trace, write_kernel_file, KernelOutcome,
    Pipeline, RuleError, RuleTrace, Status,
};
use fcgp::solve::{
    branch_degrading, brute_force, densest_vc, hindex_fpt_max, is_witness, solve_auto, solve_third, AutoOptions,
    SolveError, SolveResult,
};
use serde_json::{json, Value};
use std::path::Path;
use std::time::Instant;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

pub struct CmdError {
    pub code: u8,
    pub msg: String,
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError { code: EXIT_USAGE, msg: msg.into() }
}

fn guard(msg: impl Into<String>) -> CmdError {
    CmdError { code: EXIT_GUARD, msg: msg.into() }
}

impl From<RuleError> for CmdError {
    fn from(e: RuleError) -> Self {
        guard(e.to_string())
    }
}

impl From<SolveError> for CmdError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Budget { .. } => CmdError { code: EXIT_BUDGET, msg: format!("undecided within budget: {e}") },
            e => guard(e.to_string()),
        }
    }
}

pub struct Output {
    pub json: bool,
    pub timings: bool,
}

impl Output {
    fn report(&self, command: &str, inputs: Value, profile: Option<&ParameterProfile>, trace: Option<Value>, result: Value, start: Instant) {
        let mut doc = json!({
            "command": command,
            "inputs": inputs,
            "profile": profile,
            "trace_summary": trace,
            "result": result,
        });
        if self.timings {
            doc["timings"] = json!({ "total_ms": start.elapsed().as_millis() as u64 });
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CmdError> {
    std::fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, CmdError> {
    String::from_utf8(read(path)?).map_err(|_| usage(format!("{} is not UTF-8", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CmdError> {
    std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(arg: &GraphArg) -> Result<Graph, CmdError> {
    let fmt = match arg.format {
        GraphFormat::Edgelist => Format::EdgeList,
        GraphFormat::Dimacs => Format::Dimacs,
    };
    parse_graph(&read(&arg.graph)?, fmt).map_err(|e| usage(format!("{}: {e}", arg.graph.display())))
}

fn load_instance(g: Graph, v: &ValueArgs) -> Result<AnnotatedInstance, CmdError> {
    let alpha: Alpha = v.alpha.parse().map_err(|e| usage(format!("--alpha: {e}")))?;
    let t: Rational = parse_rational(&v.t).map_err(|e| usage(format!("--t: {e}")))?;
    let variant: Variant = v.variant.parse().map_err(|e| usage(format!("--variant: {e}")))?;
    Ok(AnnotatedInstance::plain(g, v.k, t, alpha, variant))
}

fn inputs(g: &GraphArg, v: &ValueArgs) -> Value {
    json!({
        "graph": g.graph.display().to_string(),
        "alpha": v.alpha,
        "k": v.k,
        "t": v.t,
        "variant": v.variant,
    })
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn trace_summary(t: &RuleTrace) -> Value {
    json!({
        "pipeline": t.pipeline,
        "steps": t.entries.len(),
        "initial": t.initial,
        "final": t.final_summary,
        "audits": t.audits,
        "notes": t.notes,
    })
}

pub fn params(out: &Output, arg: &GraphArg, vc_budget: usize) -> Result<u8, CmdError> {
    let start = Instant::now();
    let g = load_graph(arg)?;
    let p = compute_profile(&g, true, vc_budget);
    if out.json {
        out.report("params", json!({ "graph": arg.graph.display().to_string(), "vc_budget": vc_budget }), Some(&p), None, Value::Null, start);
    } else {
        let vc = p.vc.map_or(format!(">{vc_budget}"), |v| v.to_string());
        println!(
            "n={} m={} delta={} degeneracy={} hindex={} closure={} vc={}",
            p.n, p.m, p.max_degree, p.degeneracy, p.h_index, p.c_closure, vc
        );
    }
    Ok(EXIT_OK)
}

fn outcome_result(o: &KernelOutcome) -> Value {
    let kernel = o.kernel.as_ref().map(|k| {
        json!({
            "n": k.instance.n_alive(),
            "m": k.instance.m_alive(),
            "k": k.instance.k,
            "t": fmt_rational(&k.instance.t),
            "stats": k.stats,
        })
    });
    json!({ "status": o.status, "witness": o.witness, "kernel": kernel })
}

pub fn kernelize(
    out: &Output,
    arg: &GraphArg,
    values: &ValueArgs,
    pipeline: &str,
    kernel_out: Option<&Path>,
    trace_out: Option<&Path>,
    vc_budget: usize,
) -> Result<u8, CmdError> {
    let start = Instant::now();
    let pipeline: Pipeline = pipeline.parse().map_err(usage)?;
    let g = load_graph(arg)?;
    let inst = load_instance(g, values)?;
    let o = run_pipeline(&inst, pipeline, vc_budget)?;
    if let Some(p) = trace_out {
        write(p, &o.trace_text())?;
    }
    let kernel_text = o.kernel.as_ref().map(|k| write_kernel_file(&k.instance));
    if let (Some(p), Some(text)) = (kernel_out, &kernel_text) {
        write(p, text)?;
    }
    if out.json {
        let mut inp = inputs(arg, values);
        inp["pipeline"] = json!(pipeline.name());
        let (g, _) = inst.alive_graph();
        let prof = compute_profile(&g, false, 0);
        out.report("kernelize", inp, Some(&prof), Some(trace_summary(&o.trace)), outcome_result(&o), start);
        return Ok(EXIT_OK);
    }
    match o.status {
        Status::DecidedYes => {
            println!("decided: YES");
            if let Some(w) = &o.witness {
                println!("witness: {}", list(w));
            }
        }
        Status::DecidedNo => println!("decided: NO"),
        Status::Kernelized => {
            let k = o.kernel.as_ref().expect("kernelized outcome has a kernel");
            match kernel_out {
                Some(p) => println!(
                    "kernelized: pipeline={} n={} m={} k={} t={} -> {}",
                    o.trace.pipeline,
                    k.instance.n_alive(),
                    k.instance.m_alive(),
                    k.instance.k,
                    fmt_rational(&k.instance.t),
                    p.display()
                ),
                None => print!("{}", kernel_text.expect("kernel text")),
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_solver(inst: &AnnotatedInstance, solver: &str, budget: u64) -> Result<SolveResult, CmdError> {
    let (g, map) = inst.alive_graph();
    let r = match solver {
        "auto" => solve_auto(inst, AutoOptions { budget, vc_budget: DEFAULT_VC_BUDGET }),
        "brute" => brute_force(inst, budget),
        "branch" => branch_degrading(inst, compute_profile(&g, false, 0).degeneracy, budget),
        "third" => solve_third(inst),
        "hindex" => hindex_fpt_max(inst, compute_profile(&g, false, 0).h_index, budget),
        "densest-vc" => {
            let cover = min_vertex_cover(&g, DEFAULT_VC_BUDGET)
                .ok_or_else(|| guard(format!("densest-vc: no vertex cover of size <= {DEFAULT_VC_BUDGET}")))?;
            let cover: Vec<usize> = cover.into_iter().map(|v| map[v]).collect();
            densest_vc(inst, &cover, budget)
        }
        o => return Err(usage(format!("unknown solver {o:?}, expected auto|brute|branch|third|hindex|densest-vc"))),
    };
    Ok(r?)
}

pub fn solve(out: &Output, arg: &GraphArg, values: &ValueArgs, solver: &str, budget: u64) -> Result<u8, CmdError> {
    let start = Instant::now();
    let g = load_graph(arg)?;
    let inst = load_instance(g, values)?;
    let r = run_solver(&inst, solver, budget)?;
    if out.json {
        let mut inp = inputs(arg, values);
        inp["solver"] = json!(solver);
        inp["budget"] = json!(budget);
        out.report("solve", inp, None, None, serde_json::to_value(&r).expect("result serializes"), start);
    } else {
        println!("decision: {}", if r.is_yes() { "YES" } else { "NO" });
        match &r.best_value {
            Some(v) => println!("value: {}", fmt_rational(v)),
            None => println!("value: none (no feasible set)"),
        }
        if !r.optimal {
            println!("optimal: not established");
        }
        if let Some(w) = &r.witness {
            println!("witness: {}", list(w));
        }
        println!("solver: {}", r.solver_id);
        println!("nodes: {}", r.nodes_explored);
    }
    Ok(if r.is_yes() { EXIT_OK } else { EXIT_NO })
}

fn mismatch(msg: String) -> CmdError {
    CmdError { code: EXIT_MISMATCH, msg: format!("verification mismatch: {msg}") }
}

fn decide_original(inst: &AnnotatedInstance, oracle: bool, budget: u64) -> Result<bool, CmdError> {
    let r = if oracle { brute_force(inst, budget) } else { solve_auto(inst, AutoOptions { budget, vc_budget: DEFAULT_VC_BUDGET }) };
    Ok(r?.is_yes())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

pub fn verify(
    out: &Output,
    arg: &GraphArg,
    values: &ValueArgs,
    kernel_path: &Path,
    trace_path: &Path,
    oracle: bool,
    budget: u64,
) -> Result<u8, CmdError> {
    let start = Instant::now();
    let g = load_graph(arg)?;
    let orig = load_instance(g, values)?;
    let trace_text = read_text(trace_path)?;
    // decided traces carry their own witness, so no kernel file is needed
    let kernel_inst = match parse_trace(&trace_text, 0).map(|t| t.status) {
        Ok(Status::DecidedYes | Status::DecidedNo) => None,
        _ => {
            let text = read_text(kernel_path)?;
            Some(parse_kernel_file(&text).map_err(|e| usage(format!("{}: {e}", kernel_path.display())))?)
        }
    };
    let kn = kernel_inst.as_ref().map_or(0, |k| k.capacity());
    let tf = parse_trace(&trace_text, kn).map_err(|e| usage(format!("{}: {e}", trace_path.display())))?;
    let replayed = tf.trace.replay(&orig).map_err(|e| mismatch(format!("trace does not replay: {e}")))?;

    let (kernel_yes, original_yes, witness) = match tf.status {
        Status::DecidedYes | Status::DecidedNo => {
            let claimed = tf.status == Status::DecidedYes;
            if let Some(w) = &tf.witness {
                if !is_witness(&orig, w) {
                    return Err(mismatch(format!("decided witness {} fails on the original", list(w))));
                }
            }
            let actual = if claimed && tf.witness.is_some() { true } else { decide_original(&orig, oracle, budget)? };
            (claimed, actual, tf.witness.clone())
        }
        Status::Kernelized => {
            let kinst = kernel_inst.expect("kernel parsed for kernelized status");
            for (i, o) in tf.origin.iter().enumerate() {
                if let Some(o) = o {
                    if *o >= replayed.capacity() || !replayed.is_alive(*o) {
                        return Err(mismatch(format!("kernel vertex {i} maps to removed vertex {o}")));
                    }
                }
            }
            let kr = solve_auto(&kinst, AutoOptions { budget, vc_budget: DEFAULT_VC_BUDGET })?;
            let original = decide_original(&orig, oracle, budget)?;
            let mut lifted = None;
            if let Some(w) = &kr.witness {
                let pk = PlainKernel {
                    instance: kinst.clone(),
                    origin: tf.origin.clone(),
                    partial: tf.partial.clone(),
                    stats: Default::default(),
                };
                match lift_witness(&pk, w) {
                    Some(l) if is_witness(&orig, &l) => lifted = Some(l),
                    l => {
                        return Err(mismatch(format!(
                            "kernel witness {} lifts to {:?}, which fails on the original",
                            list(w),
                            l
                        )))
                    }
                }
            }
            (kr.is_yes(), original, lifted)
        }
    };
    if kernel_yes != original_yes {
        return Err(mismatch(format!("kernel says {} but the original is {}", yes_no(kernel_yes), yes_no(original_yes))));
    }
    if out.json {
        let mut inp = inputs(arg, values);
        inp["kernel"] = json!(kernel_path.display().to_string());
        inp["trace"] = json!(trace_path.display().to_string());
        inp["oracle"] = json!(oracle);
        let result = json!({ "status": "ok", "decision": yes_no(original_yes), "witness": witness });
        out.report("verify", inp, None, Some(trace_summary(&tf.trace)), result, start);
    } else {
        println!("verify: OK decision={}", yes_no(original_yes));
        if let Some(w) = &witness {
            println!("witness: {}", list(w));
        }
    }
    Ok(EXIT_OK)
}

pub fn battery(out: &Output, manifest: &Path, out_dir: &Path, budget: u64, vc_budget: usize) -> Result<u8, CmdError> {
    let start = Instant::now();
    let text = read_text(manifest)?;
    let rows = parse_manifest(&text).map_err(|e| usage(format!("{}: {e}", manifest.display())))?;
    let s = run_battery(&rows, budget, vc_budget);
    if !s.failures.is_empty() {
        std::fs::create_dir_all(out_dir).map_err(|e| usage(format!("cannot create {}: {e}", out_dir.display())))?;
        for f in &s.failures {
            let mut body = format!("# {}\n", f.detail);
            body.push_str(&write_instance(&f.instance));
            if let Some(o) = &f.outcome {
                body.push_str(&o.trace_text());
            }
            write(&out_dir.join(format!("row{}-seed{}.txt", f.row, f.seed)), &body)?;
        }
    }
    if out.json {
        let inp = json!({ "manifest": manifest.display().to_string(), "budget": budget });
        let failures: Vec<Value> =
            s.failures.iter().map(|f| json!({ "row": f.row, "seed": f.seed, "detail": f.detail })).collect();
        let result = json!({ "pass": s.pass, "fail": s.fail, "skip": s.skip, "failures": failures });
        out.report("battery", inp, None, None, result, start);
    } else {
        println!("pass={} fail={} skip={}", s.pass, s.fail, s.skip);
        for f in &s.failures {
            println!("FAIL row {} seed {}: {}", f.row, f.seed, f.detail);
        }
    }
    Ok(if s.fail == 0 { EXIT_OK } else { EXIT_MISMATCH })
}
