//! Built-in fixture suite: CLI invocations with expected JSON values.

use std::time::Instant;

use serde_json::{json, Value};

use tcrcalc::{Ctx, Error, Result};

use crate::args::{FixtureArgs, Format};
use crate::Outcome;

pub const BUILTIN: &str = include_str!("fixtures.json");

/// One invocation; `expect` maps JSON pointers into the output to required values.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub args: Vec<String>,
    pub expect: Vec<(String, Value)>,
    pub exit: i32,
}

pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>> {
    let bad = |m: String| Error::Parse(format!("fixture file: {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let list = v
        .get("fixtures")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing 'fixtures' array".into()))?;
    let mut out = Vec::new();
    for f in list {
        let id = f
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("fixture without id".into()))?
            .to_string();
        let args = f
            .get("args")
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("{id}: missing args")))?
            .iter()
            .map(|a| a.as_str().map(str::to_string))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad(format!("{id}: args must be strings")))?;
        let expect = match f.get("expect") {
            None => Vec::new(),
            Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            Some(_) => return Err(bad(format!("{id}: expect must be an object"))),
        };
        let exit = match f.get("exit") {
            None => 0,
            Some(e) => e
                .as_i64()
                .and_then(|e| i32::try_from(e).ok())
                .ok_or_else(|| bad(format!("{id}: exit must be an integer")))?,
        };
        out.push(Fixture { id, args, expect, exit });
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = out.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(bad(format!("duplicate id {}", w[0].id)));
    }
    Ok(out)
}

/// `Ok(())` or the first mismatch.
pub fn run_fixture(f: &Fixture, ctx: &Ctx) -> std::result::Result<(), String> {
    let mut argv = vec!["tcrcalc".to_string()];
    argv.extend(f.args.iter().cloned());
    argv.extend(["--format".to_string(), "json".to_string()]);
    let out = crate::run(argv, ctx);
    if out.code != f.exit {
        return Err(format!(
            "exit code {} (expected {}): {}",
            out.code,
            f.exit,
            out.stderr.trim()
        ));
    }
    if f.expect.is_empty() {
        return Ok(());
    }
    let v: Value = serde_json::from_str(&out.stdout).map_err(|e| format!("output is not JSON: {e}"))?;
    for (ptr, want) in &f.expect {
        let got = v.pointer(ptr).cloned().unwrap_or(Value::Null);
        if &got != want {
            return Err(format!("{ptr}: got {got}, expected {want}"));
        }
    }
    Ok(())
}

/// Results in id order, independent of scheduling.
pub fn run_all(fixtures: &[Fixture], ctx: &Ctx) -> Vec<(String, std::result::Result<(), String>, f64)> {
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(fixtures.len().max(1));
    let mut results: Vec<Option<(std::result::Result<(), String>, f64)>> = vec![None; fixtures.len()];
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                s.spawn(move || {
                    (t..fixtures.len())
                        .step_by(threads)
                        .map(|i| {
                            let start = Instant::now();
                            let r = run_fixture(&fixtures[i], ctx);
                            (i, r, start.elapsed().as_secs_f64())
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r, t) in h.join().expect("fixture thread panicked") {
                results[i] = Some((r, t));
            }
        }
    });
    fixtures
        .iter()
        .zip(results)
        .map(|(f, r)| {
            let (r, t) = r.expect("every fixture ran");
            (f.id.clone(), r, t)
        })
        .collect()
}

pub fn run_suite(args: &FixtureArgs, format: Format, ctx: &Ctx) -> Outcome {
    let text = match &args.file {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                return crate::error_outcome(&Error::Invalid(format!("cannot read {path}: {e}")), format);
            }
        },
        None => BUILTIN.to_string(),
    };
    let mut fixtures = match parse_fixtures(&text) {
        Ok(f) => f,
        Err(e) => return crate::error_outcome(&e, format),
    };
    if let Some(id) = &args.fixture {
        fixtures.retain(|f| &f.id == id);
        if fixtures.is_empty() {
            return crate::error_outcome(&Error::Invalid(format!("no fixture with id '{id}'")), format);
        }
    }
    let results = run_all(&fixtures, ctx);
    let failed = results.iter().filter(|r| r.1.is_err()).count();
    let stdout = match format {
        Format::Json => {
            let list: Vec<Value> = results
                .iter()
                .map(|(id, r, _)| match r {
                    Ok(()) => json!({"id": id, "pass": true}),
                    Err(m) => json!({"id": id, "pass": false, "reason": m}),
                })
                .collect();
            let v = json!({"fixtures": list, "passed": results.len() - failed, "failed": failed});
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            for (id, r, t) in &results {
                match r {
                    Ok(()) => s.push_str(&format!("PASS {id} ({t:.2}s)\n")),
                    Err(m) => s.push_str(&format!("FAIL {id}: {m}\n")),
                }
            }
            s.push_str(&format!("{} passed, {} failed\n", results.len() - failed, failed));
            s
        }
    };
    Outcome {
        code: if failed == 0 { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}
