use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;

use crate::arith::ArithInterp;
use crate::classical::{eval_sentence, eval_term, ChoiceFunction, FiniteModel, Valuation};
use crate::formats::{content_lines, parse_kripke, parse_model, parse_problem, parse_space, FormatError};
use crate::hsubst::{brute_force, default_max_iter, epsilon_terms_of, resolve_report, solve, HsubstError};
use crate::intuitionistic::{bell_lem_search, heyting_eval, kripke_force, markov_check, validate_world_choice, Env};
use crate::proof::{check, eliminate_one_epsilon, parse_derivation, replay_induction, second_epsilon_theorem, Profile, ProofError};
use crate::syntax::{
    abstract_var, free_vars, is_sentence, make_eps, make_tau, parse, parse_formula, parse_term, substitute, Binder,
    Formula, Parsed, Symbol,
};
use crate::transform::{epsilon_translate_traced, matrices, prenex as to_prenex, skolem_resolve, Mode};

use super::{read_file, text_or_file, CliError, Report};

fn formula(src: &str) -> Result<Formula, CliError> {
    let text = text_or_file(src)?;
    parse_formula(text.trim()).map_err(CliError::input)
}

fn format_err(path: &Path, e: FormatError) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

pub fn translate(src: &str, mode: &str, trace: bool) -> Result<Report, CliError> {
    let f = formula(src)?;
    let mode: Mode = mode.parse().map_err(CliError::Input)?;
    let (out, steps) = epsilon_translate_traced(&f, mode).map_err(CliError::input)?;
    let mut text = String::new();
    if trace {
        for s in &steps {
            writeln!(text, "{s}").unwrap();
        }
    }
    text.push_str(&out.to_unicode());
    Ok(Report::new(true, text, json!({ "input": f.to_string(), "output": out.to_string(), "steps": steps })))
}

pub fn prenex(src: &str) -> Result<Report, CliError> {
    let f = formula(src)?;
    let pf = to_prenex(&f).map_err(CliError::input)?;
    let whole = pf.to_formula();
    let (vars, matrix) = pf.open_matrix();
    let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let text = format!("prenex: {}\nmatrix: {}\nvariables: {}", whole.to_unicode(), matrix.to_unicode(), vars.join(" "));
    Ok(Report::new(
        true,
        text,
        json!({ "prenex": whole.to_string(), "matrix": matrix.to_string(), "variables": vars }),
    ))
}

pub fn skolemize(inline: &[String], file: Option<&Path>) -> Result<Report, CliError> {
    let mut axioms = Vec::new();
    for s in inline {
        axioms.push(formula(s)?);
    }
    if let Some(p) = file {
        let src = read_file(p)?;
        for (line, text) in content_lines(&src) {
            axioms.push(parse_formula(text).map_err(|e| CliError::Input(format!("{}: line {line}: {e}", p.display())))?);
        }
    }
    if axioms.is_empty() {
        return Err(CliError::Input("no axioms given (use --formula or --axioms)".into()));
    }
    let res = skolem_resolve(&axioms).map_err(CliError::input)?;
    let mut text = String::from("axioms:\n");
    for a in &res.axioms {
        writeln!(text, "  {}", a.to_unicode()).unwrap();
    }
    text.push_str("definitions:\n");
    let mut defs = Vec::new();
    for (sym, _) in &res.introduced {
        let d = &res.definitions[sym];
        let params: Vec<&str> = d.params.iter().map(|p| p.as_str()).collect();
        let head = if params.is_empty() { sym.to_string() } else { format!("{sym}({})", params.join(", ")) };
        writeln!(text, "  {head} = {}", d.term.to_unicode()).unwrap();
        defs.push(json!({ "symbol": head, "term": d.term.to_string() }));
    }
    text.push_str("matrices:\n");
    let ms = matrices(&res.axioms);
    for m in &ms {
        writeln!(text, "  {}", m.to_unicode()).unwrap();
    }
    let axioms: Vec<String> = res.axioms.iter().map(|a| a.to_string()).collect();
    let ms: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
    Ok(Report::new(true, text, json!({ "axioms": axioms, "definitions": defs, "matrices": ms })))
}

fn load_model(path: &Path, phi: Option<&str>) -> Result<(FiniteModel, ChoiceFunction), CliError> {
    let mf = parse_model(&read_file(path)?).map_err(|e| format_err(path, e))?;
    let choice = match phi {
        Some("min") => ChoiceFunction::Min,
        Some(p) => {
            // a choice file shares the model's element names
            let p = Path::new(p);
            let names = mf.model.names().join(" ");
            let src = format!("universe {names}\n{}", read_file(p)?);
            let extra = parse_model(&src).map_err(|e| format_err(p, FormatError::new(e.line.saturating_sub(1), e.message)))?;
            extra.choice.ok_or_else(|| CliError::Input(format!("{}: no phi lines", p.display())))?
        }
        None => mf.choice.clone().unwrap_or(ChoiceFunction::Min),
    };
    Ok((mf.model, choice))
}

pub fn eval(model: &Path, src: &str, phi: Option<&str>) -> Result<Report, CliError> {
    let (m, cf) = load_model(model, phi)?;
    let text = text_or_file(src)?;
    match parse(text.trim()).map_err(CliError::input)? {
        Parsed::Formula(f) => {
            if !is_sentence(&f) {
                return Err(CliError::Input(format!("{f} has free variables")));
            }
            let v = eval_sentence(&f, &m, &cf).map_err(CliError::input)?;
            Ok(Report::new(true, v.to_string(), json!({ "formula": f.to_string(), "value": v })))
        }
        Parsed::Term(t) => {
            let e = eval_term(&t, &m, &cf, &Valuation::new()).map_err(CliError::input)?;
            let name = m.name(e).to_string();
            Ok(Report::new(true, name.clone(), json!({ "term": t.to_string(), "value": name })))
        }
    }
}

/// `∃xF ⇔ F(ε_x F)` and, classically, `∀xF ⇔ F(ε_x ¬F)`.
fn equivalences(f: &Formula, x: &Symbol) -> [(String, Formula); 2] {
    let body = abstract_var(f, x);
    let eps = make_eps(f, x).expect("x is free");
    let tau = make_tau(f, x).expect("x is free");
    let ex = Formula::Exists(Binder(x.clone()), Box::new(body.clone()));
    let all = Formula::Forall(Binder(x.clone()), Box::new(body));
    [
        (format!("exists-equivalence {f}"), Formula::iff(ex, substitute(f, x, &eps))),
        (format!("forall-equivalence {f}"), Formula::iff(all, substitute(f, x, &tau))),
    ]
}

pub fn check_model(model: &Path, extra: &[String], phi: Option<&str>) -> Result<Report, CliError> {
    let (m, cf) = load_model(model, phi)?;
    let mut targets: Vec<(Formula, Symbol)> = Vec::new();
    let x = Symbol::new("x");
    for (name, table) in m.predicates() {
        if table.arity == 1 {
            targets.push((Formula::pred(name.as_str(), vec![crate::syntax::Term::Var(x.clone())]), x.clone()));
        }
    }
    for s in extra {
        let f = formula(s)?;
        let fv: Vec<Symbol> = free_vars(&f).into_iter().collect();
        let [v] = fv.as_slice() else {
            return Err(CliError::Input(format!("{f} must have exactly one free variable")));
        };
        targets.push((f.clone(), v.clone()));
    }
    let mut checks: Vec<(String, Formula)> = Vec::new();
    for (f, v) in &targets {
        checks.extend(equivalences(f, v));
    }
    checks.push(("null-collapse".into(), parse_formula("(eps x. x = x) = (eps x. x != x)").expect("fixed")));
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut passed = true;
    for (name, f) in &checks {
        let ok = eval_sentence(f, &m, &cf).map_err(CliError::input)?;
        passed &= ok;
        writeln!(text, "{}: {name}", if ok { "ok  " } else { "FAIL" }).unwrap();
        rows.push(json!({ "check": name, "formula": f.to_string(), "holds": ok }));
    }
    write!(text, "{} check(s), {} failed", checks.len(), rows.iter().filter(|r| r["holds"] == false).count()).unwrap();
    Ok(Report::new(passed, text, json!({ "checks": rows })))
}

pub fn heyting(space: &Path, src: &str, markov: Option<&str>, require_valid: bool) -> Result<Report, CliError> {
    let sf = parse_space(&read_file(space)?).map_err(|e| format_err(space, e))?;
    let f = formula(src)?;
    let env = BTreeMap::new();
    let x = heyting_eval(&f, &sf.space, &sf.interp, &env).map_err(CliError::input)?;
    let sp = &sf.space;
    let valid = x == sp.full();
    let mut text = format!(
        "value: {}\nnot: {}\nnot not: {}\nvalid: {}",
        sp.describe(x),
        sp.describe(sp.neg(x)),
        sp.describe(sp.neg(sp.neg(x))),
        valid
    );
    let mut doc = json!({
        "formula": f.to_string(),
        "value": sp.describe(x),
        "negation": sp.describe(sp.neg(x)),
        "double_negation": sp.describe(sp.neg(sp.neg(x))),
        "valid": valid,
    });
    let mut passed = !require_valid || valid;
    if let Some(p) = markov {
        let r = markov_check(sp, &sf.interp, p).map_err(CliError::input)?;
        write!(
            text,
            "\nmarkov {p}: decidable {}, consequent valid {}{}",
            r.antecedent_full,
            r.consequent_full,
            if r.violated() { " (VIOLATED)" } else { "" }
        )
        .unwrap();
        passed &= !r.violated();
        doc["markov"] = serde_json::to_value(&r).expect("serializable");
    }
    Ok(Report::new(passed, text, doc))
}

pub fn kripke_check(path: &Path, sources: &[String]) -> Result<Report, CliError> {
    let kf = parse_kripke(&read_file(path)?).map_err(|e| format_err(path, e))?;
    let ks = &kf.structure;
    let choice = validate_world_choice(ks, &kf.choice).map_err(CliError::input)?;
    let mut text = format!("{} world(s), {} ε-term(s) with choices\n", ks.worlds.len(), choice.terms);
    for v in &choice.violations {
        writeln!(text, "choice condition ({}) fails for {} at {}: {}", v.property, v.term, v.world, v.detail).unwrap();
    }
    let mut passed = choice.passed();
    let mut rows = Vec::new();
    for s in sources {
        let f = formula(s)?;
        if !is_sentence(&f) {
            return Err(CliError::Input(format!("{f} has free variables")));
        }
        let env = Env::new();
        let forced = (0..ks.worlds.len())
            .map(|w| kripke_force(ks, w, &f, &env, &kf.choice))
            .collect::<Result<Vec<bool>, _>>()
            .map_err(CliError::input)?;
        let mut broken = None;
        for m in 0..ks.worlds.len() {
            if let Some(n) = ks.accessible(m).find(|&n| forced[m] && !forced[n]) {
                broken = Some(format!("{} -> {}", ks.worlds[m], ks.worlds[n]));
                break;
            }
        }
        passed &= broken.is_none();
        let at: Vec<&str> = (0..ks.worlds.len()).filter(|&w| forced[w]).map(|w| ks.worlds[w].as_str()).collect();
        writeln!(text, "{} forced at {{{}}}{}", f.to_unicode(), at.join(","), match &broken {
            Some(b) => format!("; persistence FAILS along {b}"),
            None => String::new(),
        })
        .unwrap();
        rows.push(json!({ "formula": f.to_string(), "forced_at": at, "persistence_failure": broken }));
    }
    text.push_str(if passed { "all checks passed" } else { "some checks failed" });
    Ok(Report::new(passed, text, json!({ "choice": choice, "formulas": rows })))
}

pub fn lem_search(worlds: usize, domain: usize) -> Result<Report, CliError> {
    let r = bell_lem_search(worlds, domain).map_err(CliError::input)?;
    let asserted: u64 = r.variants.iter().filter(|v| v.asserted).map(|v| v.countermodels).sum();
    let mut text = format!(
        "{asserted} countermodels\n{} frames, {} structures (worlds <= {worlds}, domain <= {domain})\n",
        r.frames, r.structures
    );
    for v in &r.variants {
        writeln!(
            text,
            "{}: {} admissible, {} refuse excluded middle{}",
            v.name,
            v.admissible,
            v.countermodels,
            if v.asserted { " [must be 0]" } else { "" }
        )
        .unwrap();
        if let Some(e) = &v.example {
            writeln!(text, "  e.g. {e}").unwrap();
        }
    }
    Ok(Report::new(r.passed(), text, serde_json::to_value(&r).expect("serializable")))
}

fn load_derivation(path: &Path) -> Result<crate::proof::Derivation, CliError> {
    parse_derivation(&read_file(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Checker verdicts are results; anything else is bad input.
fn proof_outcome(e: ProofError) -> Result<Report, CliError> {
    match e {
        ProofError::Check(c) => Ok(Report::new(false, format!("rejected: {c}"), json!({ "error": c.to_string() }))),
        other => Err(CliError::input(other)),
    }
}

pub fn prove_check(path: &Path, profile: &str) -> Result<Report, CliError> {
    let d = load_derivation(path)?;
    let p = Profile::from_name(profile).ok_or_else(|| CliError::Input(format!("unknown profile `{profile}`")))?;
    match check(&d, p) {
        Ok(r) => Ok(Report::new(true, format!("accepted: {r}"), serde_json::to_value(&r).expect("serializable"))),
        Err(e) => proof_outcome(e.into()),
    }
}

pub fn eliminate(path: &Path, target: Option<&str>) -> Result<Report, CliError> {
    let d = load_derivation(path)?;
    let out = match target {
        Some(t) => {
            let t = parse_term(&text_or_file(t)?).map_err(CliError::input)?;
            eliminate_one_epsilon(&d, &t)
        }
        None => second_epsilon_theorem(&d),
    };
    let out = match out {
        Ok(o) => o,
        Err(e) => return proof_outcome(e),
    };
    let profile = if out.epsilon_terms().is_empty() { Profile::Cp } else { Profile::CpEpsStar };
    let report = match check(&out, profile) {
        Ok(r) => r,
        Err(e) => return proof_outcome(e.into()),
    };
    let text = format!("{out}{report}");
    Ok(Report::new(true, text, json!({ "derivation": out.to_string(), "check": report })))
}

pub fn replay(src: &str, improper: bool) -> Result<Report, CliError> {
    let a = formula(src)?;
    let r = match replay_induction(&a, !improper) {
        Ok(r) => r,
        Err(e) => return proof_outcome(e),
    };
    let mut text = r.text.clone();
    writeln!(text, "s = {}, t = {}", r.s, r.t).unwrap();
    writeln!(text, "{}", r.check).unwrap();
    let truth: Vec<String> = r.line_truth.iter().enumerate().map(|(i, b)| format!("({}) {}", i + 1, b)).collect();
    write!(text, "least-number value of s at cap {}: {}\nline truth: {}", r.cap, r.s_value, truth.join(" ")).unwrap();
    Ok(Report::new(r.semantically_true(), text, serde_json::to_value(&r).expect("serializable")))
}

pub fn h_substitute(
    path: &Path,
    cap: u64,
    max_iter: Option<usize>,
    trace: bool,
    oracle: Option<u64>,
) -> Result<Report, CliError> {
    if cap == 0 {
        return Err(CliError::Input("--cap must be positive".into()));
    }
    let problem = parse_problem(&read_file(path)?).map_err(|e| format_err(path, e))?;
    let set = problem.formulas;
    let interp = ArithInterp::new(cap);
    let max_iter = max_iter.unwrap_or_else(|| default_max_iter(&set, cap));
    let mut text = format!(
        "{} critical formula(s), {} ε-term(s), cap {cap}, max-iter {max_iter}\n",
        set.len(),
        epsilon_terms_of(&set).len()
    );
    let mut doc = json!({ "formulas": set, "cap": cap, "max_iter": max_iter });
    let (passed, s) = match solve(&set, &interp, max_iter) {
        Ok(s) => (true, s),
        Err(HsubstError::NonTermination(nt)) => {
            text.push_str("no resolving assignment within max-iter\n");
            (false, nt.assignment)
        }
        Err(e) => return Err(CliError::input(e)),
    };
    if trace || !passed {
        for r in &s.history {
            writeln!(text, "{r}").unwrap();
        }
    }
    writeln!(text, "{s}").unwrap();
    let rr = resolve_report(&s, &set, &interp).map_err(CliError::input)?;
    text.push_str(&rr.to_string());
    doc["assignment"] = serde_json::to_value(&s).expect("serializable");
    doc["resolve"] = serde_json::to_value(&rr).expect("serializable");
    if let Some(bound) = oracle {
        let o = brute_force(&set, &interp, bound).map_err(CliError::input)?;
        write!(text, "\noracle: {} of {} assignments below {bound} resolve the set", o.resolving, o.scanned).unwrap();
        doc["oracle"] = serde_json::to_value(&o).expect("serializable");
    }
    Ok(Report::new(passed && rr.resolved, text, doc))
}
