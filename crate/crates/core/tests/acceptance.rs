//! Twelve acceptance criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use epsilon_kernel::arith::ArithInterp;
use epsilon_kernel::classical::{
    a1_a5_axioms, a1_a5_interp, check_exists_equivalence, check_forall_equivalence, check_null_collapse, verify_matrices,
    ModelSpace,
};
use epsilon_kernel::hsubst::{
    brute_force, check_battery, default_max_iter, epsilon_terms_of, pathology, rank_one_corpus, resolve_report, solve,
    BATTERY, BATTERY_CAP,
};
use epsilon_kernel::intuitionistic::{
    all_spaces, bell_lem_search, cpi_validity_demo, persistence_check, three_point_witness, WITHOUT_EXTENSIONALITY,
};
use epsilon_kernel::proof::{check, corpus, replay_induction, second_epsilon_theorem, Profile};
use epsilon_kernel::syntax::{abstract_var, contains_eps, free_vars, instantiate, parse_formula, parse_term, Term};
use epsilon_kernel::transform::{matrices, skolem_resolve};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn signature() -> ModelSpace {
    ModelSpace::new(&["P"], &[], &["c"])
}

fn exists_equivalence() -> Outcome {
    let t = Instant::now();
    let r = check_exists_equivalence(3, &signature());
    ensure(r.passed() && r.instances > 0, || r.to_string())?;
    within(t, Duration::from_secs(10))?;
    Ok(r.to_string())
}

fn forall_equivalence() -> Outcome {
    let t = Instant::now();
    let r = check_forall_equivalence(3, &signature());
    ensure(r.passed() && r.instances > 0, || r.to_string())?;
    within(t, Duration::from_secs(10))?;
    Ok(r.to_string())
}

fn null_collapse() -> Outcome {
    let r = check_null_collapse(3, &signature());
    ensure(r.passed() && r.instances > 0, || r.to_string())?;
    Ok(r.to_string())
}

fn finitist_a1_a5() -> Outcome {
    let t = Instant::now();
    let res = skolem_resolve(&a1_a5_axioms()).map_err(|e| e.to_string())?;
    let ms = matrices(&res.axioms);
    let good = verify_matrices(&ms, 10, &a1_a5_interp(10, Term::succ(Term::var("x")))).map_err(|e| e.to_string())?;
    ensure(good.passed(), || format!("g(x)=x+1: {good}"))?;
    let bad = verify_matrices(&ms, 10, &a1_a5_interp(10, Term::var("x"))).map_err(|e| e.to_string())?;
    let cx = bad.counterexample.as_ref().ok_or("g(x)=x: no counterexample")?;
    ensure(cx.assignment.iter().any(|(v, n)| v == "x" && *n == 0), || format!("counterexample {cx:?}"))?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("{} instances true; g(x)=x fails at {:?}", good.instances, cx.assignment))
}

fn second_theorem() -> Outcome {
    let t = Instant::now();
    let entries = corpus();
    ensure(entries.len() >= 5, || format!("{} derivations", entries.len()))?;
    for e in &entries {
        let d = e.derivation();
        let concl = d.conclusion().ok_or(format!("{}: empty", e.name))?.clone();
        ensure(!contains_eps(&concl), || format!("{}: conclusion has ε", e.name))?;
        check(&d, Profile::CpEpsStar).map_err(|x| format!("{}: input rejected: {x}", e.name))?;
        let out = second_epsilon_theorem(&d).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(out.epsilon_terms().is_empty(), || format!("{}: ε-terms remain", e.name))?;
        ensure(out.lines.iter().all(|l| !contains_eps(&l.formula)), || format!("{}: ε in a line", e.name))?;
        check(&out, Profile::Cp).map_err(|x| format!("{}: output rejected under CP: {x}", e.name))?;
        ensure(out.conclusion() == Some(&concl), || format!("{}: conclusion changed", e.name))?;
    }
    within(t, Duration::from_secs(5))?;
    Ok(format!("{} derivations made ε-free and checked under CP", entries.len()))
}

fn induction_replay() -> Outcome {
    let mut done = Vec::new();
    for src in ["0 <= x", "x < x + 1", "x * 1 = x"] {
        let a = parse_formula(src).map_err(|e| e.to_string())?;
        let r = replay_induction(&a, true).map_err(|e| format!("{src}: {e}"))?;
        ensure(r.derivation.len() == 10, || format!("{src}: {} lines", r.derivation.len()))?;
        let t = parse_term(&r.t).map_err(|e| e.to_string())?;
        let x = free_vars(&a).into_iter().next().unwrap();
        let a_t = instantiate(&abstract_var(&a, &x), &t);
        let want = parse_formula(&format!("{} = {} + 1 -> not not ({a_t})", r.s, r.t)).map_err(|e| e.to_string())?;
        ensure(*r.line8() == want, || format!("{src}: line 8 is {}", r.line8()))?;
        ensure(r.cap == 12 && r.semantically_true(), || format!("{src}: line truth {:?}", r.line_truth))?;
        done.push(src);
    }
    Ok(format!("{} replays checked, line 8 as expected, all lines true at cap 12", done.len()))
}

fn battery() -> Outcome {
    let reports = check_battery(BATTERY_CAP).map_err(|e| e.to_string())?;
    ensure(reports.len() == BATTERY.len() && BATTERY.len() == 20, || "battery size".into())?;
    let mut instances = 0;
    for r in &reports {
        ensure(r.ok(), || r.to_string())?;
        instances += r.instances;
    }
    // every predicate contributes cap instances of each schema, the least bound included
    ensure(instances == 20 * 20 * 4, || format!("{instances} instances"))?;
    Ok(format!("{} predicates, {instances} instances, 0 violations", reports.len()))
}

fn h_method() -> Outcome {
    let t = Instant::now();
    let cap = 16;
    let interp = ArithInterp::new(cap);
    let entries = rank_one_corpus();
    ensure(entries.len() >= 10, || format!("{} rank-1 problems", entries.len()))?;
    for e in entries {
        let set = e.problem().formulas;
        let n = epsilon_terms_of(&set).len();
        let s = solve(&set, &interp, default_max_iter(&set, cap)).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(s.iterations <= n, || format!("{}: {} repairs for {n} terms", e.name, s.iterations))?;
        let rr = resolve_report(&s, &set, &interp).map_err(|x| x.to_string())?;
        ensure(rr.resolved, || format!("{}: {rr}", e.name))?;
        let o = brute_force(&set, &interp, cap).map_err(|x| x.to_string())?;
        ensure(o.exists(), || format!("{}: oracle found nothing", e.name))?;
    }
    let set = pathology().problem().formulas;
    let max_iter = default_max_iter(&set, cap);
    let s = solve(&set, &interp, max_iter).map_err(|x| format!("pathology: {x}"))?;
    ensure(s.iterations < max_iter, || "pathology hit max_iter".into())?;
    let rr = resolve_report(&s, &set, &interp).map_err(|x| x.to_string())?;
    ensure(rr.resolved, || format!("pathology: {rr}"))?;
    let o = brute_force(&set, &interp, cap).map_err(|x| x.to_string())?;
    ensure(o.exists(), || "pathology: oracle found nothing".into())?;
    within(t, Duration::from_secs(30))?;
    Ok(format!(
        "{} rank-1 problems solved; pathology resolved after {} repairs, oracle {} of {}",
        entries.len(),
        s.iterations,
        o.resolving,
        o.scanned
    ))
}

fn intuitionistic_gap() -> Outcome {
    let mut opens = 0;
    for n in 1..=4 {
        for sp in all_spaces(n) {
            for &x in sp.opens() {
                opens += 1;
                ensure(sp.implies(x, sp.neg(sp.neg(x))) == sp.full(), || format!("{n} points, X = {}", sp.describe(x)))?;
                if sp.is_open(sp.complement(x)) {
                    ensure(x | sp.neg(x) == sp.full(), || format!("clopen {} refuses LEM", sp.describe(x)))?;
                }
            }
        }
    }
    let w = three_point_witness();
    let a = 0b001;
    ensure(w.is_open(a), || "{a} not open".into())?;
    let nn = w.neg(w.neg(a));
    ensure(nn == w.full() && nn != a, || format!("¬¬{{a}} = {}", w.describe(nn)))?;
    Ok(format!("{opens} opens on spaces of at most 4 points; ¬¬{{a}} = U on the witness"))
}

fn bell() -> Outcome {
    let t = Instant::now();
    let r = bell_lem_search(3, 2).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{r:?}"))?;
    within(t, Duration::from_secs(60))?;
    let dropped = r.variant(WITHOUT_EXTENSIONALITY).map(|v| v.countermodels).unwrap_or(0);
    Ok(format!("{} structures; 0 countermodels with both schemas, {dropped} without", r.structures))
}

fn persistence() -> Outcome {
    let r = persistence_check(3);
    ensure(r.passed() && r.checks > 0, || format!("{r:?}"))?;
    Ok(format!("{} structures, {} checks, 0 violations", r.structures, r.checks))
}

fn cpi_validity() -> Outcome {
    let r = cpi_validity_demo(3);
    ensure(r.valid && r.sweep.instances > 0, || r.sweep.to_string())?;
    ensure(r.derivability == "not checked", || format!("derivability marked `{}`", r.derivability))?;
    Ok(format!("valid in {} (model, choice) pairs; derivability not checked", r.sweep.choice_functions))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("exists equivalence", exists_equivalence),
        ("forall equivalence", forall_equivalence),
        ("null-term collapse", null_collapse),
        ("finitist A1-A5 check", finitist_a1_a5),
        ("second epsilon theorem", second_theorem),
        ("induction replay", induction_replay),
        ("E1/E2 battery", battery),
        ("H-method", h_method),
        ("intuitionistic gap", intuitionistic_gap),
        ("Bell search", bell),
        ("Kripke persistence", persistence),
        ("CPI validity demo", cpi_validity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({:.2?}): {detail}", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
