use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use log::info;
use serde_json::{json, Value};

use posetrep::classify::{analyze, minimality_check, Analysis, Answer, Certificate, ClassifyConfig, ClassifyError, Verdict};
use posetrep::concealed::{certify_concealed, type_quiver};
use posetrep::frames::les_frames;
use posetrep::grothendieck::{g_fan, negative_cone_samples, verify_notgtame};
use posetrep::knitting::knit;
use posetrep::poset::{generate, Family, Generated, Poset};
use posetrep::quiver::{self, graph_type, is_hyperbolic, negative_cone_witness, reduce_to_hyperbolic, GraphType, Letter, Quiver};

use crate::input::{self, Error};
use crate::report::{envelope, render, value};
use crate::{selftest, Command, Format, Options, Outcome, QuiverAction, TypeSet};

pub fn classify_config(opts: &Options) -> ClassifyConfig {
    ClassifyConfig {
        cap: opts.cap as usize,
        window: opts.window,
        concealed_budget: opts.budget as usize,
        ..ClassifyConfig::default()
    }
}

pub fn run(cmd: &Command, opts: &Options) -> Result<Outcome, Error> {
    match cmd {
        Command::Analyze { inputs } => run_analyze(cmd, opts, inputs),
        Command::Reduce { input } => run_reduce(cmd, opts, input),
        Command::Knit { input } => run_knit(cmd, opts, input),
        Command::Quiver { action, input } => run_quiver(cmd, opts, *action, input),
        Command::Gfan { input } => run_gfan(cmd, opts, input),
        Command::ConcealedCheck { input, types } => run_concealed(cmd, opts, input, *types),
        Command::NotgtameCheck { input, tilting, samples } => run_notgtame(cmd, opts, input, tilting, *samples),
        Command::Generate { family, params } => run_generate(family, params),
        Command::Selftest { frames_dir } => Ok(selftest::run(opts, frames_dir.as_deref())),
    }
}

fn emit(cmd: &Command, opts: &Options, payload: Value, text: String, unknown: bool) -> Outcome {
    let output = match opts.format() {
        Format::Json => render(&envelope(cmd, opts, payload)),
        _ => text,
    };
    Outcome::new(output, unknown)
}

/// Map over `items` on a small worker pool, keeping input order.
fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len()).max(1);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                slots.lock().expect("no worker panics while holding the lock")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("workers joined").into_iter().map(|r| r.expect("every slot filled")).collect()
}

fn answer_word(v: &Verdict) -> String {
    let base = match v.answer {
        Answer::Yes => "yes",
        Answer::No => "no",
        Answer::Unknown => "unknown",
    };
    if v.answer == Answer::Yes && v.question == "tame" && !v.budget_flags.is_empty() {
        "yes*".to_string()
    } else {
        base.to_string()
    }
}

fn describe_certificate(c: &Certificate) -> String {
    match c {
        Certificate::Reduction { steps, frame, euclidean } => {
            format!("{} step(s) onto frame {frame} ({euclidean})", steps.len())
        }
        Certificate::Exhausted { states } => format!("search exhausted after {states} state(s)"),
        Certificate::UniqueExtremum { element, maximum } => {
            format!("unique {} {element}", if *maximum { "maximum" } else { "minimum" })
        }
        Certificate::Homology { betti, torsion } => format!("H1 rank {betti}, torsion {torsion:?}"),
        Certificate::TrivialGroup { generators, relations } => {
            format!("presentation with {generators} generator(s), {relations} relation(s) trivializes")
        }
        Certificate::Pattern { pattern, members } => format!("{pattern} at {{{}}}", members.join(", ")),
        Certificate::GlobalDimension { computed, .. } => format!("global dimension {computed}"),
        Certificate::WildHereditary { members, frame } => format!(
            "wild hereditary convex subposet {{{}}}{}",
            members.join(", "),
            frame.as_ref().map(|f| format!(" of type {f}")).unwrap_or_default()
        ),
        Certificate::WildConcealed { members, frame, certificate } => format!(
            "convex subposet {{{}}} is concealed of type {frame} ({:?})",
            members.join(", "),
            certificate.iso_layer
        ),
        Certificate::Minimal { reductions, infinite } => match infinite {
            None => format!("all {reductions} one-step reductions are finite"),
            Some(steps) => format!("{} step(s) still reach a frame", steps.len()),
        },
        Certificate::Derived { from, inner } => format!("{from}; {}", describe_certificate(inner)),
        Certificate::Note { text } => text.clone(),
    }
}

fn describe(v: &Verdict) -> String {
    let mut s = format!("{}: {}  [{}]", v.question, answer_word(v), describe_certificate(&v.certificate));
    if !v.budget_flags.is_empty() {
        let _ = write!(s, "  flags: {}", v.budget_flags.join(", "));
    }
    s
}

fn run_analyze(cmd: &Command, opts: &Options, inputs: &[String]) -> Result<Outcome, Error> {
    let posets: Vec<(String, Poset)> =
        inputs.iter().map(|i| input::poset(i).map(|p| (i.clone(), p))).collect::<Result<_, _>>()?;
    let cfg = classify_config(opts);
    let results: Vec<Result<Analysis, ClassifyError>> = parallel_map(&posets, |(name, p)| {
        info!("analyzing {name} ({} elements)", p.len());
        analyze(p, &cfg)
    });
    let mut unknown = false;
    let mut text = String::new();
    let mut payload = Vec::new();
    for ((name, _), r) in posets.iter().zip(&results) {
        let _ = writeln!(text, "== {name}");
        match r {
            Ok(a) => {
                unknown |= a.any_unknown();
                for v in a.verdicts() {
                    let _ = writeln!(text, "{}", describe(v));
                }
                payload.push(json!({ "input": name, "analysis": value(a) }));
            }
            Err(e) => {
                unknown = true;
                let _ = writeln!(text, "unknown: {e}");
                payload.push(json!({ "input": name, "error": e.to_string() }));
            }
        }
    }
    Ok(emit(cmd, opts, Value::Array(payload), text, unknown))
}

fn run_reduce(cmd: &Command, opts: &Options, path: &str) -> Result<Outcome, Error> {
    let p = input::poset(path)?;
    let cap = opts.cap as usize;
    let rep = posetrep::classify::decide_rep_finite(&p, cap);
    let minimal = minimality_check(&p, cap);
    let mut text = String::new();
    let mut unknown = false;
    match &rep {
        Ok(v) => {
            let _ = writeln!(text, "{}", describe(v));
            if let Certificate::Reduction { steps, .. } = &v.certificate {
                for s in steps {
                    let _ = writeln!(text, "  {s}");
                }
            }
        }
        Err(e) => {
            unknown = true;
            let _ = writeln!(text, "rep_finite: unknown  [{e}]");
        }
    }
    match &minimal {
        Ok(v) => {
            let _ = writeln!(text, "{}", describe(v));
        }
        Err(e) => {
            unknown = true;
            let _ = writeln!(text, "minimal: unknown  [{e}]");
        }
    }
    let as_json = |r: &Result<Verdict, ClassifyError>| match r {
        Ok(v) => value(v),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let payload = json!({ "rep_finite": as_json(&rep), "minimal": as_json(&minimal) });
    Ok(emit(cmd, opts, payload, text, unknown))
}

fn run_knit(cmd: &Command, opts: &Options, path: &str) -> Result<Outcome, Error> {
    let q = input::quiver(path)?;
    let c = knit(&q, opts.window)?;
    if opts.format() == Format::Dot {
        return Ok(Outcome::new(c.to_dot(), false));
    }
    let mut text = String::new();
    let mut nodes = Vec::new();
    for k in c.sorted_nodes() {
        let _ = writeln!(text, "{}  {:?}", c.label(k), c.dims(k));
        nodes.push(json!({ "label": c.label(k), "dims": c.dims(k) }));
    }
    let _ = writeln!(text, "{} node(s), window {}, exhausted: {}", nodes.len(), c.window(), c.exhausted());
    let payload = json!({ "nodes": nodes, "meshes": value(&c.meshes()), "exhausted": c.exhausted() });
    Ok(emit(cmd, opts, payload, text, false))
}

fn category_word(t: GraphType) -> &'static str {
    match t {
        GraphType::Dynkin(..) => "Dynkin",
        GraphType::Euclidean(..) => "Euclidean",
        GraphType::Wild => "Wild",
    }
}

fn fmt_vec(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn run_quiver(cmd: &Command, opts: &Options, action: QuiverAction, path: &str) -> Result<Outcome, Error> {
    let q = input::quiver(path)?;
    let (text, payload) = match action {
        QuiverAction::Classify => {
            let types = quiver::component_types(&q)?;
            if q.is_connected() {
                let t = graph_type(&q)?;
                if t.is_wild() {
                    let hyper = is_hyperbolic(&q)?;
                    let witness = negative_cone_witness(&q, opts.cone_box.max(6));
                    let mut line = format!("Wild; {}", if hyper { "hyperbolic" } else { "not hyperbolic" });
                    if let Some(x) = &witness {
                        let _ = write!(line, "; q({})={}", fmt_vec(x), q.tits(x));
                    }
                    (line, json!({ "type": t.to_string(), "hyperbolic": hyper, "witness": witness }))
                } else {
                    (format!("{}; {t}", category_word(t)), json!({ "type": t.to_string() }))
                }
            } else {
                let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
                (format!("components: {}", names.join(" + ")), json!({ "components": names }))
            }
        }
        QuiverAction::Reduce => {
            let steps = reduce_to_hyperbolic(&q)?;
            (format!("delete: {}", steps.join(", ")), json!({ "deleted": steps }))
        }
        QuiverAction::Witness => {
            let w = negative_cone_witness(&q, opts.cone_box);
            let line = match &w {
                Some(x) => format!("q({})={}", fmt_vec(x), q.tits(x)),
                None => format!("no negative vector in box {}", opts.cone_box),
            };
            (line, json!({ "witness": w, "box": opts.cone_box }))
        }
    };
    Ok(emit(cmd, opts, payload, text, false))
}

fn run_gfan(cmd: &Command, opts: &Options, path: &str) -> Result<Outcome, Error> {
    let (alg, _) = input::algebra(path)?;
    let report = g_fan(&alg, opts.budget as usize, opts.cone_box)?;
    let mut text = format!(
        "{} maximal cone(s); closed: {}; facet pairing: {}; complete: {}\n",
        report.rays.len(),
        report.closed,
        report.facet_pairing,
        report.complete
    );
    if let Some(w) = &report.exterior_witness {
        let _ = writeln!(text, "exterior witness: ({})", fmt_vec(w));
    }
    let unknown = !report.complete && report.exterior_witness.is_none();
    Ok(emit(cmd, opts, value(&report), text, unknown))
}

/// Candidate hereditary types with `n` vertices.
fn candidate_types(n: usize, set: TypeSet) -> Vec<(String, Quiver)> {
    let mut out = Vec::new();
    let want = |s: TypeSet| set == TypeSet::All || set == s;
    if want(TypeSet::Dynkin) {
        for t in [
            GraphType::Dynkin(Letter::A, n),
            GraphType::Dynkin(Letter::D, n),
            GraphType::Dynkin(Letter::E, n),
        ] {
            if let Some(q) = type_quiver(t).filter(|q| q.len() == n) {
                out.push((t.to_string(), q));
            }
        }
    }
    if want(TypeSet::Euclidean) && n >= 2 {
        for t in [
            GraphType::Euclidean(Letter::A, n - 1),
            GraphType::Euclidean(Letter::D, n - 1),
            GraphType::Euclidean(Letter::E, n - 1),
        ] {
            if let Some(q) = type_quiver(t).filter(|q| q.len() == n) {
                out.push((t.to_string(), q));
            }
        }
    }
    if want(TypeSet::Wild) {
        out.extend(les_frames().iter().filter(|f| f.quiver.len() == n).map(|f| (f.id.clone(), f.quiver.clone())));
    }
    out
}

fn run_concealed(cmd: &Command, opts: &Options, path: &str, set: TypeSet) -> Result<Outcome, Error> {
    let (alg, _) = input::algebra(path)?;
    let types = candidate_types(alg.len(), set);
    let search = certify_concealed(&alg, &types, opts.window, (opts.cap as usize).max(64))?;
    let text = match (&search.certificate, &search.obstruction) {
        (Some(c), _) => format!(
            "concealed: yes  [type {} ({:?}), tilting nodes {:?}]\n",
            c.type_name, c.iso_layer, c.tilting_nodes
        ),
        (None, Some(d)) => format!("concealed: no  [module ({}) has projective and injective dimension 2]\n", fmt_vec(d)),
        (None, None) => format!(
            "concealed: unknown  [{} orientation(s), {} Cartan match(es), window {}]\n",
            search.orientations_searched, search.cartan_matches, search.window
        ),
    };
    let unknown = search.certificate.is_none() && search.obstruction.is_none();
    Ok(emit(cmd, opts, value(&search), text, unknown))
}

fn run_notgtame(cmd: &Command, opts: &Options, path: &str, tilting: &[String], samples: usize) -> Result<Outcome, Error> {
    let q = input::quiver(path)?;
    let summands: Vec<(usize, usize)> = if tilting.is_empty() {
        (0..q.len()).map(|v| (v, 0)).collect()
    } else {
        tilting
            .iter()
            .map(|s| -> Result<(usize, usize), Error> {
                let (v, r) = s.split_once(':').ok_or_else(|| format!("expected vertex:shift, got `{s}`"))?;
                let v = q.index_of(v).ok_or_else(|| format!("unknown vertex `{v}`"))?;
                Ok((v, r.parse()?))
            })
            .collect::<Result<_, _>>()?
    };
    let xs = negative_cone_samples(&q, samples, opts.cone_box.max(6));
    let report = verify_notgtame(&q, &summands, &xs, opts.window, opts.budget as usize)?;
    let mut text = String::new();
    for s in &report.samples {
        let _ = writeln!(
            text,
            "x=({}) θ=({}) θ_B=({}) negative:{} transfer:{} wall:{}{}",
            fmt_vec(&s.cone_vector),
            fmt_vec(&s.theta),
            fmt_vec(&s.theta_b),
            s.postprojectives_negative,
            s.transfer_identity,
            s.wall_h.as_ref().map_or("-".to_string(), |w| w.passed.to_string()),
            s.skipped.as_ref().map(|r| format!(" skipped: {r}")).unwrap_or_default()
        );
    }
    let _ = writeln!(text, "passed: {}  budget limited: {}", report.passed, report.budget_limited);
    Ok(emit(cmd, opts, value(&report), text, report.budget_limited && !report.passed))
}

fn run_generate(family: &str, params: &[String]) -> Result<Outcome, Error> {
    let num = |k: usize| -> Result<usize, Error> {
        let s = params.get(k).ok_or_else(|| format!("`{family}` needs parameter {}", k + 1))?;
        Ok(s.parse()?)
    };
    let text_param = |k: usize| -> Result<String, Error> {
        params.get(k).cloned().ok_or_else(|| format!("`{family}` needs parameter {}", k + 1).into())
    };
    let fam = match family {
        "chain" => Family::Chain(num(0)?),
        "C_ell_diamond" | "cell-diamond" => Family::CellDiamond(num(0)?),
        "figure8" => Family::Figure8,
        "loupias" => Family::LoupiasFrame(text_param(0)?),
        "les" => Family::LesFrame(text_param(0)?),
        "a_tilde" => Family::ATildeCycle(text_param(0)?),
        "d_tilde" => Family::DTilde(num(0)?),
        "product" => {
            let p = posetrep::poset::families::chain(num(0)?)?.product(&posetrep::poset::families::chain(num(1)?)?)?;
            return Ok(Outcome::new(p.to_text(), false));
        }
        other => return Err(format!("unknown family `{other}`").into()),
    };
    let text = match generate(&fam)? {
        Generated::Poset(p) => p.to_text(),
        Generated::Quiver(q) => q.to_text(),
    };
    Ok(Outcome::new(text, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_map_keeps_input_order() {
        let xs: Vec<u64> = (0..50).collect();
        assert_eq!(parallel_map(&xs, |x| x * x), xs.iter().map(|x| x * x).collect::<Vec<_>>());
    }

    #[test]
    fn candidate_types_match_the_vertex_count() {
        let eight: Vec<String> = candidate_types(8, TypeSet::Euclidean).into_iter().map(|(n, _)| n).collect();
        assert_eq!(eight, ["A~7", "D~7", "E~7"]);
        assert!(candidate_types(8, TypeSet::All).iter().all(|(_, q)| q.len() == 8));
    }
}
