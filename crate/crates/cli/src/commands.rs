use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use trimspan::io::{read_space, write_matrix_csv};
use trimspan::rational::{self, Rational};
use trimspan::tight_span::{decompose, is_member, project, Certificate, Classification, TightSpanFunction};
use trimspan::treegen::{chain_metric, parse_newick, underline_d_tree_oracle, ChainSpec};
use trimspan::verify::{check_chain_oracle, check_tree_oracle, run_all};
use trimspan::{Cylinder, Error, MetricSpace, PseudometricSpace, TrimSequence, ValidatedSpace};

use crate::{Cli, Command, Format, GenSource, TightspanAction};

/// Exit status 1: the input was read but fails a check.
const DOMAIN: u8 = 1;
/// Exit status 2: the input could not be read.
const USAGE: u8 = 2;

pub struct Output {
    pub text: String,
    pub status: u8,
}

pub struct Failure {
    pub message: String,
    pub status: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            status: if e.is_parse() { USAGE } else { DOMAIN },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<Output, Failure>;

fn ok(text: String) -> Outcome {
    Ok(Output { text, status: 0 })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        message: format!("cannot read {}: {e}", path.display()),
        status: USAGE,
    })
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn rat(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

fn labelled(space: &PseudometricSpace, values: &[Rational]) -> Value {
    Value::Object(
        space
            .labels()
            .iter()
            .zip(values)
            .map(|(l, v)| (l.clone(), rat(v)))
            .collect(),
    )
}

fn labelled_text(space: &PseudometricSpace, values: &[Rational]) -> String {
    space
        .labels()
        .iter()
        .zip(values)
        .map(|(l, v)| format!("{l}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Reads a matrix and insists on a metric, quotienting pseudometrics only
/// when asked to.
fn load_metric(path: &Path, pseudometric: bool) -> Result<MetricSpace, Failure> {
    match read_space(&read(path)?)? {
        ValidatedSpace::Metric(m) => Ok(m),
        ValidatedSpace::Pseudometric(p) if pseudometric => Ok(p.metric_quotient().0),
        ValidatedSpace::Pseudometric(_) => Err(Failure {
            message: "input has distinct points at distance zero; pass --pseudometric to use its metric quotient".into(),
            status: DOMAIN,
        }),
    }
}

fn load_function(space: &PseudometricSpace, path: &Path) -> Result<TightSpanFunction, Failure> {
    let value: Value = serde_json::from_str(&read(path)?).map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        status: USAGE,
    })?;
    Ok(TightSpanFunction::from_json(space, &value)?)
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { matrix } => validate(matrix, cli.format.unwrap_or(Format::Text)),
        Command::Sequence { matrix } => sequence(matrix, cli.pseudometric, cli.format.unwrap_or(Format::Json)),
        Command::Cylinder { matrix, dot } => {
            let format = if *dot { Format::Dot } else { cli.format.unwrap_or(Format::Json) };
            cylinder(matrix, cli.pseudometric, format)
        }
        Command::Tightspan { matrix, action } => {
            tightspan(matrix, action, cli.pseudometric, cli.format.unwrap_or(Format::Json))
        }
        Command::Verify { matrix, samples, seed } => verify(
            matrix,
            *samples as usize,
            *seed,
            cli.pseudometric,
            cli.format.unwrap_or(Format::Json),
        ),
        Command::Gen { source, oracle } => gen(source, *oracle, cli.pseudometric),
    }
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure {
        message: format!("{command} does not support --format {format:?}").to_lowercase(),
        status: USAGE,
    }
}

fn validate(path: &Path, format: Format) -> Outcome {
    let space = read_space(&read(path)?)?;
    let s = space.space();
    let kind = if space.is_metric() { "metric" } else { "pseudometric" };
    let under = s.underline_d();
    let trim = s.is_trim();
    match format {
        Format::Json => ok(pretty(&json!({
            "kind": kind,
            "points": s.len(),
            "trim": trim,
            "underline": labelled(s, &under),
        }))),
        Format::Text => ok(format!(
            "{kind}, {}, trim function: {}\n",
            if trim { "trim" } else { "not trim" },
            labelled_text(s, &under)
        )),
        Format::Dot => Err(unsupported(format, "validate")),
    }
}

fn sequence(path: &Path, pseudometric: bool, format: Format) -> Outcome {
    let seq = TrimSequence::new(load_metric(path, pseudometric)?);
    match format {
        Format::Json => ok(pretty(&serde_json::to_value(seq.to_json()).expect("serializable"))),
        Format::Text => {
            let mut out = format!("N = {}\n", seq.stable_index());
            for (k, level) in seq.levels().iter().enumerate() {
                let _ = writeln!(
                    out,
                    "level {k}: {} points, trim function: {}",
                    level.space().len(),
                    labelled_text(level.space(), level.underline())
                );
            }
            let _ = writeln!(out, "limit: {}", seq.x_infinity().labels().join(", "));
            let _ = writeln!(out, "sigma: {}", labelled_text(seq.base(), &seq.sigma_table()));
            ok(out)
        }
        Format::Dot => Err(unsupported(format, "sequence")),
    }
}

fn cylinder(path: &Path, pseudometric: bool, format: Format) -> Outcome {
    let cyl = Cylinder::new(TrimSequence::new(load_metric(path, pseudometric)?));
    let quotient = cyl.quotient()?;
    match format {
        Format::Json => ok(pretty(&json!({
            "cylinder": cyl.to_json(),
            "quotient": quotient.to_json(&cyl),
        }))),
        Format::Dot => ok(format!("{}{}", cyl.to_dot(), quotient.to_dot(&cyl))),
        Format::Text => {
            let roots: Vec<String> = quotient
                .roots()
                .into_iter()
                .map(|r| cyl.vertex_name(quotient.nodes()[r].representative))
                .collect();
            ok(format!(
                "{} vertices, {} components, quotient: {} nodes, {} edges, roots: {}\n",
                cyl.vertex_count(),
                cyl.component_count(),
                quotient.nodes().len(),
                quotient.edges().len(),
                roots.join(", ")
            ))
        }
    }
}

fn certificate_json(space: &PseudometricSpace, c: &Certificate) -> Value {
    let l = |x: &usize| space.label(*x).to_string();
    match c {
        Certificate::Tight { witnesses } => json!({
            "kind": "tight",
            "witnesses": space.labels().iter().zip(witnesses).map(|(x, w)| (x.clone(), Value::String(l(w)))).collect::<serde_json::Map<_, _>>(),
        }),
        Certificate::Negative { x } => json!({ "kind": "negative", "at": l(x) }),
        Certificate::StarViolated { x, y } => json!({ "kind": "star-violated", "at": [l(x), l(y)] }),
        Certificate::Slack { x, slack } => json!({ "kind": "slack", "at": l(x), "slack": rat(slack) }),
        Certificate::SingletonNonzero => json!({ "kind": "singleton-nonzero" }),
    }
}

fn tightspan(path: &Path, action: &TightspanAction, pseudometric: bool, format: Format) -> Outcome {
    let space = load_metric(path, pseudometric)?;
    if format == Format::Dot {
        return Err(unsupported(format, "tightspan"));
    }
    let text = format == Format::Text;
    if let Some(file) = &action.check {
        let f = load_function(&space, file)?;
        let m = is_member(&space, f.values());
        return ok(if text {
            format!("{}\n", m.describe(&space))
        } else {
            pretty(&json!({
                "member": m.member,
                "certificate": certificate_json(&space, &m.certificate),
            }))
        });
    }
    if let Some(file) = &action.project {
        let f0 = load_function(&space, file)?;
        let f = project(&space, f0.values())?;
        return ok(if text {
            format!("{}\n", labelled_text(&space, f.values()))
        } else {
            pretty(&json!({ "projected": f.to_json() }))
        });
    }
    let file = action.decompose.as_ref().expect("clap requires one action");
    let f = load_function(&space, file)?;
    let cyl = Cylinder::new(TrimSequence::new(space.clone()));
    let c = decompose(&cyl, &f)?;
    let body = match &c {
        Classification::Branch { point } => json!({
            "class": "branch",
            "point": cyl.point_name(point),
            "sigma": rat(&cyl.sigma_point(point)),
        }),
        Classification::Root { component, point, witness } => json!({
            "class": "root",
            "component": cyl.component_label(*component),
            "point": cyl.point_name(point),
            "witness": witness.to_json(),
        }),
        Classification::Tau { witness } => json!({
            "class": "tau",
            "witness": witness.to_json(),
        }),
    };
    ok(if text {
        match &c {
            Classification::Branch { point } => format!("branch at {}\n", cyl.point_name(point)),
            Classification::Root { point, .. } => format!("root at {}\n", cyl.point_name(point)),
            Classification::Tau { witness } => format!("tau, limit function {}\n", witness.to_json()),
        }
    } else {
        pretty(&body)
    })
}

fn verify(path: &Path, samples: usize, seed: u64, pseudometric: bool, format: Format) -> Outcome {
    let space = load_metric(path, pseudometric)?;
    let (invariants, main) = run_all(&space, samples, seed);
    let mut violations = invariants.violations;
    violations.extend(main.violations);
    let status = if violations.is_empty() { 0 } else { DOMAIN };
    let text = match format {
        Format::Json => pretty(&json!({
            "samples": main.samples,
            "branch": main.branch,
            "root": main.root,
            "tau": main.tau,
            "checks": invariants.checks,
            "violations": violations,
        })),
        Format::Text => {
            let mut out = format!(
                "{} samples: {} branch, {} root, {} tau; {} invariant checks; {} violations\n",
                main.samples,
                main.branch,
                main.root,
                main.tau,
                invariants.checks,
                violations.len()
            );
            for v in &violations {
                let _ = writeln!(out, "violation: {}: {}", v.check, v.detail);
            }
            out
        }
        Format::Dot => return Err(unsupported(format, "verify")),
    };
    Ok(Output { text, status })
}

fn gen(source: &GenSource, oracle: bool, pseudometric: bool) -> Outcome {
    if let Some(file) = &source.newick {
        let tree = parse_newick(&read(file)?, pseudometric)?;
        let space = tree.leaf_space()?;
        let mut out = write_matrix_csv(&space);
        if oracle {
            match underline_d_tree_oracle(&tree) {
                Ok(bounds) => {
                    for b in bounds {
                        let kind = if b.exact { "exact" } else { "lower bound" };
                        let _ = writeln!(out, "# oracle {}: {} ({kind})", b.leaf, b.bound);
                    }
                    let report = check_tree_oracle(&tree);
                    let _ = writeln!(out, "# oracle agreement: {} violations", report.violations.len());
                }
                Err(e) => {
                    let _ = writeln!(out, "# oracle unavailable: {e}");
                }
            }
        }
        return ok(out);
    }
    let file = source.chain.as_ref().expect("clap requires one source");
    let spec = ChainSpec::parse_json(&read(file)?)?;
    let space = chain_metric(&spec)?;
    let mut out = write_matrix_csv(&space);
    if oracle {
        for k in 0..spec.depth() {
            let holds = k < spec.hypothesis_prefix();
            let delta: Vec<String> = spec
                .level_labels(k)
                .iter()
                .zip(spec.delta(k))
                .map(|(l, d)| format!("{l}={d}"))
                .collect();
            let _ = writeln!(
                out,
                "# oracle level {k} ({}): {}",
                if holds { "trim function equals the weights" } else { "fiber hypothesis fails" },
                delta.join(", ")
            );
        }
        let report = check_chain_oracle(&spec);
        let _ = writeln!(out, "# oracle agreement: {} violations", report.violations.len());
    }
    ok(out)
}
