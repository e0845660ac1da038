//! Subcommands of the `shv` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use shv_core::circlesheaf::{
    assemble_circle_on, cohomology_circle, decompose_circle, default_points,
    dual_circle, ss_circle, tensor_circle, CircleSheaf,
};
use shv_core::linesheaf::{
    cohomology_line, decompose_line, dual_line, hom_dim_line, ss_line, tensor_line,
    GradedDims, Interval, LineSheaf,
};
use shv_core::microlocal::{
    conjugate_point, f_linked_exact, f_linked_exact_circle, f_linked_interval_criterion,
    h_invariant, microlocal_rank, mv_twist, AutSpec, CoverSpec,
};
use shv_core::quiverrep::hom_space_dim;

use crate::io::{
    covector_flag, interval_flag, rational_flag, read_document, read_json, Document, InputError,
};
use crate::verify::{run_suite, Suite, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "shv", version, about = "Exact computations with constructible sheaves on the line and the circle")]
pub struct Cli {
    /// Print a machine-readable JSON document.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Sheaf or representation file.
    #[arg(long, short)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose a quiver representation (or normalize a sheaf) into canonical summands.
    Decompose(InputArg),
    /// Microsupport with the microlocal rank at each covector.
    Ss(InputArg),
    /// Graded dimensions of global sections.
    Cohomology(InputArg),
    /// Tensor product of two sheaves of the same kind.
    Tensor {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        with: PathBuf,
    },
    /// The duality functor D'.
    Dual(InputArg),
    /// Dimension of Hom between two sheaves in a common degree.
    Hom {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        with: PathBuf,
    },
    /// Mayer-Vietoris twist of a circle sheaf along a two-set cover.
    Twist {
        #[command(flatten)]
        input: InputArg,
        /// Twist every component by this scalar.
        #[arg(long, conflicts_with = "aut")]
        lambda: Option<String>,
        /// Automorphism file `{"scalars": [[...], ...]}`.
        #[arg(long)]
        aut: Option<PathBuf>,
        /// Cover file `{"u": [lo, hi], "v": [lo, hi]}`; defaults to U = (0, 3/4), V = (1/2, 5/4).
        #[arg(long)]
        cover: Option<PathBuf>,
    },
    /// The invariant H^i_{alpha,r} of a circle sheaf.
    Invariant {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Whether two covectors are linked by the endomorphisms of the sheaf.
    Linked {
        #[command(flatten)]
        input: InputArg,
        /// Covector `base,sign[,deg]`.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Open window for line sheaves, such as `(0,2)`; defaults to the whole line.
        #[arg(long)]
        window: Option<String>,
    },
    /// Run the brute-force lemma verification suites.
    VerifyLemmas {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        grid_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Text for standard output plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn domain(e: impl std::fmt::Display) -> InputError {
    InputError::Domain(e.to_string())
}

fn pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable")
}

fn as_line(doc: Document) -> Result<LineSheaf, InputError> {
    match doc {
        Document::Line(s) => Ok(s),
        Document::Rep(r) => Ok(decompose_line(&r.to_line().map_err(domain)?)),
        other => Err(domain(format!("expected a line sheaf, got a {}", other.kind()))),
    }
}

fn as_circle(doc: Document) -> Result<CircleSheaf, InputError> {
    match doc {
        Document::Circle(s) => Ok(s),
        Document::Rep(r) => decompose_circle(&r.to_circle().map_err(domain)?).map_err(domain),
        other => Err(domain(format!("expected a circle sheaf, got a {}", other.kind()))),
    }
}

/// Sheaf documents; representations are decomposed first.
enum Sheaf {
    Line(LineSheaf),
    Circle(CircleSheaf),
}

fn sheaf(doc: Document) -> Result<Sheaf, InputError> {
    match &doc {
        Document::Line(_) => as_line(doc).map(Sheaf::Line),
        Document::Circle(_) => as_circle(doc).map(Sheaf::Circle),
        Document::Rep(r) => match r.kind {
            shv_core::quiverrep::RepKind::Line => as_line(doc).map(Sheaf::Line),
            shv_core::quiverrep::RepKind::Circle => as_circle(doc).map(Sheaf::Circle),
        },
    }
}

fn read_sheaf(input: &InputArg) -> Result<Sheaf, InputError> {
    sheaf(read_document(&input.input)?)
}

fn sheaf_json(s: &Sheaf) -> String {
    match s {
        Sheaf::Line(s) => pretty(s),
        Sheaf::Circle(s) => pretty(s),
    }
}

fn graded_text(d: &GradedDims) -> String {
    if d.is_empty() {
        return "all cohomology vanishes\n".into();
    }
    d.iter().map(|(i, n)| format!("H^{i} = {n}\n")).collect()
}

pub fn run(cli: &Cli) -> Result<Output, InputError> {
    let as_json = cli.json;
    match &cli.command {
        Command::Decompose(input) => Ok(Output::ok(sheaf_json(&read_sheaf(input)?))),
        Command::Ss(input) => {
            let s = read_sheaf(input)?;
            let mut rows = Vec::new();
            match &s {
                Sheaf::Line(f) => {
                    for p in ss_line(f) {
                        let rank = microlocal_rank(f, &p);
                        rows.push(json!({"covector": p, "rank": rank.total, "degrees": rank.degrees}));
                    }
                }
                Sheaf::Circle(f) => {
                    for p in ss_circle(f) {
                        let rank = microlocal_rank(f, &p);
                        let conj = conjugate_point(f, &p).ok().flatten();
                        rows.push(json!({
                            "covector": p,
                            "rank": rank.total,
                            "degrees": rank.degrees,
                            "conjugate": conj,
                        }));
                    }
                }
            }
            if as_json {
                return Ok(Output::ok(pretty(&rows)));
            }
            let mut text = String::new();
            for r in &rows {
                let p: shv_core::linesheaf::Covector = serde_json::from_value(r["covector"].clone()).expect("covector");
                text.push_str(&format!("{p}  rank {}", r["rank"]));
                if let Some(c) = r.get("conjugate").filter(|c| !c.is_null()) {
                    let c: shv_core::linesheaf::Covector = serde_json::from_value(c.clone()).expect("covector");
                    text.push_str(&format!("  conjugate {c}"));
                }
                text.push('\n');
            }
            if rows.is_empty() {
                text.push_str("empty microsupport\n");
            }
            Ok(Output::ok(text))
        }
        Command::Cohomology(input) => {
            let d = match read_sheaf(input)? {
                Sheaf::Line(s) => cohomology_line(&s),
                Sheaf::Circle(s) => cohomology_circle(&s),
            };
            Ok(Output::ok(if as_json { pretty(&d) } else { graded_text(&d) }))
        }
        Command::Tensor { input, with } => {
            let a = read_sheaf(input)?;
            let b = sheaf(read_document(with)?)?;
            let t = match (a, b) {
                (Sheaf::Line(a), Sheaf::Line(b)) => Sheaf::Line(tensor_line(&a, &b)),
                (Sheaf::Circle(a), Sheaf::Circle(b)) => Sheaf::Circle(tensor_circle(&a, &b)),
                _ => return Err(domain("both inputs must live on the same space")),
            };
            Ok(Output::ok(sheaf_json(&t)))
        }
        Command::Dual(input) => {
            let d = match read_sheaf(input)? {
                Sheaf::Line(s) => Sheaf::Line(dual_line(&s)),
                Sheaf::Circle(s) => Sheaf::Circle(dual_circle(&s)),
            };
            Ok(Output::ok(sheaf_json(&d)))
        }
        Command::Hom { input, with } => {
            let a = read_sheaf(input)?;
            let b = sheaf(read_document(with)?)?;
            let n = match (a, b) {
                (Sheaf::Line(a), Sheaf::Line(b)) => hom_dim_line(&a, &b).map_err(domain)?,
                (Sheaf::Circle(a), Sheaf::Circle(b)) => circle_hom(&a, &b)?,
                _ => return Err(domain("both inputs must live on the same space")),
            };
            Ok(Output::ok(if as_json {
                pretty(&json!({ "hom": n }))
            } else {
                format!("{n}\n")
            }))
        }
        Command::Twist {
            input,
            lambda,
            aut,
            cover,
        } => {
            let f = as_circle(read_document(&input.input)?)?;
            let cover = match cover {
                Some(path) => read_json::<CoverSpec>(path)?,
                None => CoverSpec::new(
                    (rational_flag("cover", "0")?, rational_flag("cover", "3/4")?),
                    (rational_flag("cover", "1/2")?, rational_flag("cover", "5/4")?),
                )
                .map_err(domain)?,
            };
            let alpha = match (lambda, aut) {
                (Some(l), None) => {
                    let l = rational_flag("lambda", l)?;
                    AutSpec::alpha_a(&l, cover.components().len()).map_err(|e| InputError::Flag {
                        flag: "lambda",
                        msg: e.to_string(),
                    })?
                }
                (None, Some(path)) => read_json::<AutSpec>(path)?,
                _ => {
                    return Err(InputError::Flag {
                        flag: "lambda",
                        msg: "give exactly one of --lambda and --aut".into(),
                    })
                }
            };
            let t = mv_twist(&f, &cover, &alpha).map_err(domain)?;
            Ok(Output::ok(pretty(&t)))
        }
        Command::Invariant {
            input,
            alpha,
            r,
            degree,
        } => {
            let f = as_circle(read_document(&input.input)?)?;
            let a = rational_flag("alpha", alpha)?;
            if a.is_zero() {
                return Err(InputError::Flag {
                    flag: "alpha",
                    msg: "must be nonzero".into(),
                });
            }
            if *r == 0 {
                return Err(InputError::Flag {
                    flag: "r",
                    msg: "must be positive".into(),
                });
            }
            let h = h_invariant(&f, &a, *r, *degree);
            Ok(Output::ok(if as_json {
                pretty(&json!({"alpha": a, "r": r, "degree": degree, "h": h}))
            } else {
                format!("{h}\n")
            }))
        }
        Command::Linked { input, p, q, window } => {
            let p = covector_flag("p", p)?;
            let q = covector_flag("q", q)?;
            let (linked, criterion) = match read_sheaf(input)? {
                Sheaf::Line(f) => {
                    let w = match window {
                        Some(w) => interval_flag("window", w)?,
                        None => Interval::real_line(),
                    };
                    let exact = f_linked_exact(&f, &p, &q, &w).map_err(domain)?;
                    let crit = f_linked_interval_criterion(&f, &p, &q, &w).map_err(domain)?;
                    (exact, Some(crit))
                }
                Sheaf::Circle(f) => {
                    if window.is_some() {
                        return Err(InputError::Flag {
                            flag: "window",
                            msg: "circle sheaves are tested on the whole circle".into(),
                        });
                    }
                    (f_linked_exact_circle(&f, &p, &q).map_err(domain)?, None)
                }
            };
            Ok(Output::ok(if as_json {
                pretty(&json!({"p": p, "q": q, "linked": linked, "interval_criterion": criterion}))
            } else {
                format!("{}\n", if linked { "linked" } else { "not linked" })
            }))
        }
        Command::VerifyLemmas {
            suite,
            grid_size,
            seed,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(|msg| InputError::Flag { flag: "suite", msg })?]
            };
            let opts = SuiteOptions {
                grid_size: *grid_size,
                seed: *seed,
            };
            let reports: Vec<_> = suites.iter().map(|s| run_suite(*s, &opts)).collect();
            let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
            let text = if as_json {
                pretty(&reports)
            } else {
                reports.iter().map(|r| r.to_string()).collect()
            };
            Ok(Output { text, code })
        }
    }
}

fn circle_hom(a: &CircleSheaf, b: &CircleSheaf) -> Result<usize, InputError> {
    let (da, db) = (a.single_degree(), b.single_degree());
    if a.is_empty() || b.is_empty() {
        return Ok(0);
    }
    if da.is_none() || da != db {
        return Err(domain("Hom needs both sheaves in one common degree"));
    }
    let mut points = default_points(a);
    points.extend(default_points(b));
    points.sort();
    points.dedup();
    let a = assemble_circle_on(&a.shift_degrees(-da.unwrap()), &points).map_err(domain)?;
    let b = assemble_circle_on(&b.shift_degrees(-da.unwrap()), &points).map_err(domain)?;
    hom_space_dim(&a, &b).map_err(domain)
}
