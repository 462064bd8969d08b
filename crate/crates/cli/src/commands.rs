use std::fs;
use std::path::Path;

use desargues::dsl;
use desargues::figure::{self, FigureSpec};
use desargues::harness::{parse_selection, run_theorem, CaseReport, Mode, MAX_EXHAUSTIVE_PRIME};
use desargues::suites;
use desargues::{Line, Model, Point, Scalar};

use crate::{EnumerateArgs, FigureArgs, RunArgs, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
}

fn usage(msg: impl std::fmt::Display) -> Status {
    eprintln!("error: {msg}");
    Status::Usage
}

fn write_out(path: &Path, text: &str) -> Result<(), Status> {
    fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

pub fn verify(args: VerifyArgs) -> Status {
    let ids = match parse_selection(&args.check) {
        Ok(ids) => ids,
        Err(e) => return usage(format!("{e}; use `all` or a comma-separated list of theorem ids")),
    };
    let models = match args.model {
        Some(m) => vec![m],
        None if args.exhaustive => vec![Model::Gf(5)],
        None => vec![Model::Gf(7), Model::Rational, Model::Quaternion],
    };
    let mode = if args.exhaustive {
        if let Some(m) = models.iter().find(|m| !matches!(m, Model::Gf(p) if *p <= MAX_EXHAUSTIVE_PRIME)) {
            return usage(format!("--exhaustive needs gf:<p> with p <= {MAX_EXHAUSTIVE_PRIME}, got {m}"));
        }
        Mode::Exhaustive
    } else {
        Mode::Sampled {
            trials: args.trials as usize,
            seed: args.seed,
        }
    };

    let mut reports: Vec<CaseReport> = Vec::new();
    for &model in &models {
        for &id in &ids {
            match run_theorem(id, model, mode) {
                Ok(r) => {
                    for rep in &r {
                        println!("{rep}");
                        for f in rep.failures.iter().take(3) {
                            println!("    trial {}: {}", f.trial, f.detail);
                        }
                    }
                    reports.extend(r);
                }
                Err(e) => return usage(e),
            }
        }
    }
    let trials: usize = reports.iter().map(|r| r.trials).sum();
    let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
    let passed = reports.iter().all(CaseReport::passed);
    println!(
        "{} cases, {trials} trials, {failures} failures: {}",
        reports.len(),
        if passed { "ok" } else { "FAILED" }
    );

    if let Some(path) = &args.out {
        let doc = serde_json::json!({
            "mode": if args.exhaustive { "exhaustive" } else { "sampled" },
            "seed": args.seed,
            "trials": args.trials,
            "models": models.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "passed": passed,
            "reports": reports,
        });
        if let Err(s) = write_out(path, &serde_json::to_string_pretty(&doc).expect("serializable")) {
            return s;
        }
    }
    if passed {
        Status::Ok
    } else {
        Status::Failed
    }
}

pub fn run(args: RunArgs) -> Status {
    let source = match fs::read_to_string(&args.script) {
        Ok(s) => s,
        Err(e) => return usage(format!("cannot read {}: {e}", args.script.display())),
    };
    let name = args.script.display();
    let script = match dsl::parse(&source) {
        Ok(s) => s,
        Err(diags) => {
            for d in &diags {
                eprintln!("{name}:{d}");
            }
            return Status::Usage;
        }
    };
    let report = match dsl::evaluate(&script) {
        Ok(r) => r,
        Err(d) => {
            eprintln!("{name}:{d}");
            return Status::Failed;
        }
    };
    for a in &report.assertions {
        println!("{a}");
    }
    if let Some(dir) = &args.emit_dir {
        if let Err(e) = fs::create_dir_all(dir) {
            return usage(format!("cannot create {}: {e}", dir.display()));
        }
        for art in &report.artifacts {
            let file: String = art
                .name
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' })
                .collect();
            let path = dir.join(format!("{file}.svg"));
            if let Err(s) = write_out(&path, &figure::render(&art.trace, &art.name, 480)) {
                return s;
            }
            println!("emitted {}", path.display());
        }
    } else {
        for art in &report.artifacts {
            println!("emit \"{}\": {} trace steps", art.name, art.trace.steps().len());
        }
    }
    if let Some(path) = &args.out {
        if let Err(s) = write_out(path, &report.to_json()) {
            return s;
        }
    }
    let failed = report.assertions.iter().filter(|a| !a.passed).count();
    println!(
        "{} assertions, {failed} failed: {}",
        report.assertions.len(),
        if failed == 0 { "ok" } else { "FAILED" }
    );
    if failed == 0 {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn scalars(model: Model, text: &str, n: usize, what: &str) -> Result<Vec<Scalar>, Status> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(usage(format!("{what} needs {n} comma-separated scalars, got `{text}`")));
    }
    parts
        .iter()
        .map(|p| model.parse_scalar(p).map_err(usage))
        .collect()
}

fn point_arg(model: Model, text: &str, what: &str) -> Result<Point, Status> {
    let s = scalars(model, text, 2, what)?;
    Point::new(s[0].clone(), s[1].clone()).map_err(usage)
}

fn figure_spec(args: &FigureArgs) -> Result<FigureSpec, Status> {
    let m = args.model;
    let one = |text: &str| model_scalar(m, text);
    let mut spec = FigureSpec::new(args.kind, m, one(&args.a)?, one(&args.b)?);
    spec.size = args.size;
    if let Some(c) = &args.c {
        spec.c = Some(one(c)?);
    }
    if let Some(v) = &args.vector {
        spec.vector = Some(point_arg(m, v, "--vector")?);
    }
    if let Some(v) = &args.centre {
        spec.centre = Some(point_arg(m, v, "--centre")?);
    }
    if let Some(f) = &args.factor {
        spec.factor = Some(one(f)?);
    }
    if let Some(t) = &args.target {
        let s = scalars(m, t, 4, "--target")?;
        let base = Point::new(s[0].clone(), s[1].clone()).map_err(usage)?;
        let dir = Point::new(s[2].clone(), s[3].clone()).map_err(usage)?;
        spec.target = Some(Line::new(base, dir).map_err(usage)?);
    }
    if let Some(d) = &args.direction {
        let dir = point_arg(m, d, "--direction")?;
        spec.direction = Some(Line::new(Point::origin(m), dir).map_err(usage)?);
    }
    Ok(spec)
}

fn model_scalar(m: Model, text: &str) -> Result<Scalar, Status> {
    m.parse_scalar(text).map_err(usage)
}

pub fn figure(args: FigureArgs) -> Status {
    let spec = match figure_spec(&args) {
        Ok(s) => s,
        Err(s) => return s,
    };
    let svg = match figure::figure(&spec) {
        Ok(svg) => svg,
        Err(e) => return usage(format!("{} figure: {e}", spec.kind.as_str())),
    };
    match &args.out {
        Some(path) => match write_out(path, &svg) {
            Ok(()) => Status::Ok,
            Err(s) => s,
        },
        None => {
            print!("{svg}");
            Status::Ok
        }
    }
}

pub fn enumerate(args: EnumerateArgs) -> Status {
    let e = match suites::enumerate(args.p) {
        Ok(e) => e,
        Err(err) => return usage(err),
    };
    println!("gf({}): {} points, {} lines", e.p, e.points, e.lines);
    println!(
        "axioms: {} checks, {} violations",
        e.axioms.checks,
        e.axioms.violations.len()
    );
    for v in &e.axioms.violations {
        println!("{v}");
    }
    for (name, table) in [("+", &e.add_table), ("*", &e.mul_table)] {
        println!("{name:>2} |{}", (0..e.p).map(|y| format!(" {y:>2}")).collect::<String>());
        for (x, row) in table.iter().enumerate() {
            println!("{x:>2} |{}", row.iter().map(|v| format!(" {v:>2}")).collect::<String>());
        }
    }
    println!(
        "tables vs gf({}): {}",
        e.p,
        if e.mismatches.is_empty() { "match".to_string() } else { e.mismatches.join(", ") }
    );
    if let Some(path) = &args.out {
        if let Err(s) = write_out(path, &serde_json::to_string_pretty(&e).expect("serializable")) {
            return s;
        }
    }
    if e.passed() {
        Status::Ok
    } else {
        Status::Failed
    }
}
