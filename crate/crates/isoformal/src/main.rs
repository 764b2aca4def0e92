use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use isoformal::classify::{
    classify, cross_validate, onishchik_screen, verify_corpus, ClassifyConfig, CorpusReport, ScreenClass, Verdict,
};
use isoformal::cohomology::basic_invariants;
use isoformal::roots::RootSystem;
use isoformal::weyl::{longest_word, WeylGroup, DEFAULT_WEYL_CAP};
use isoformal::Error;

#[derive(Parser)]
#[command(name = "isoformal", version, about = "Decide equivariant formality of corank-one isotropy actions by exact computation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Maximum number of Weyl group elements to enumerate.
    #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
    weyl_cap: usize,
    /// Cohomological degree cap for the graded quotient (default 2·Σ(d_i − 1)).
    #[arg(long)]
    degree_cap: Option<usize>,
}

impl Caps {
    fn config(self) -> ClassifyConfig {
        ClassifyConfig { weyl_cap: self.weyl_cap, degree_cap: self.degree_cap }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one pair (G, K).
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        /// Emit the verdict as JSON.
        #[arg(long)]
        json: bool,
        /// Print every intermediate step.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Corpus operations.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Degree screen for sphere and sphere-product quotients.
    Degrees {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        json: bool,
    },
    /// Weyl group data.
    Weyl {
        #[arg(long)]
        group: String,
        /// Enumerate the group and print its order.
        #[arg(long)]
        order: bool,
        /// Print a reduced word for the longest element.
        #[arg(long)]
        longest_word: bool,
        #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
        weyl_cap: usize,
    },
    /// Basic invariant polynomials of the Weyl group.
    Invariants {
        #[arg(long)]
        group: String,
    },
    /// Compare classify against the dimension criterion and the coinvariant recount.
    CrossValidate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Check every row of one or more JSON-lines corpus files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Only rows whose group, subgroup or source contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        caps: Caps,
    },
}

fn print_json<T: Serialize>(x: &T) {
    println!("{}", serde_json::to_string_pretty(x).expect("serializable"));
}

fn print_verdict(v: &Verdict, trace: bool) {
    let formal = match v.formal {
        Some(true) => "formal",
        Some(false) => "not formal",
        None => "undecided",
    };
    println!("{}: {formal} [{}]", v.pair.group, v.branch);
    let d = v.d.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
    let n = v.n_order.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
    println!("  H_S = {} (H_S = H: {}), dim G/H_S = {}, π₁ rank {}", v.pair.hs_type, v.pair.hs_equals_h, v.pair.dim_ghs, v.pair.pi1_rank);
    println!("  d = {d}, |W_v| = {}, |N| = {n}, w0·v = −v: {}", v.wv_order, v.w0_negates_v);
    if let Some((m, n)) = v.mn {
        println!("  (m,n) = ({m},{n})");
    }
    if trace {
        for t in &v.trace {
            println!("  {:>12}  {}", t.step, t.detail);
        }
    }
}

fn print_report(report: &CorpusReport) {
    for r in &report.rows {
        let status = if r.passed() { "ok  " } else { "FAIL" };
        let branch = r.verdict.as_ref().map(|v| v.branch.as_str()).unwrap_or("error");
        println!("{status} line {:>4}  {} / {}  [{branch}]  {}", r.line, r.row.group, r.row.subgroup, r.row.source);
        if let Some(e) = &r.error {
            println!("       error: {e}");
        }
        for d in &r.diffs {
            println!("       {d}");
        }
    }
    println!("{} passed, {} failed", report.passed, report.failed);
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Classify { group, subgroup, json, trace, caps } => {
            let v = classify(&group, &subgroup, &caps.config())?;
            if json {
                print_json(&v);
            } else {
                print_verdict(&v, trace);
            }
            Ok(v.exit_code())
        }
        Command::Corpus { action: CorpusAction::Verify { files, filter, json, caps } } => {
            let mut code = 0;
            for f in files {
                let report = verify_corpus(&f, &caps.config(), filter.as_deref())?;
                if json {
                    print_json(&report);
                } else {
                    println!("== {}", f.display());
                    print_report(&report);
                }
                code = code.max(report.exit_code());
            }
            Ok(code)
        }
        Command::Degrees { g, h, json } => {
            let r = onishchik_screen(&g, &h)?;
            if json {
                print_json(&r);
            } else {
                println!("deg G = {:?}", r.g_degrees);
                println!("deg H = {:?}", r.h_degrees);
                println!("G \\ H = {:?}, H \\ G = {:?}", r.g_minus_h, r.h_minus_g);
                let show = |c: &ScreenClass| match c {
                    ScreenClass::OddSphere { n } => format!("odd-sphere(n={n})"),
                    ScreenClass::Product { n, m } => format!("product(n={n}, m={m})"),
                    ScreenClass::ProductCaseB { n, m } => format!("product-case-b(n={n}, m={m})"),
                    ScreenClass::Fail => "fail".into(),
                };
                println!("screen: {}", show(&r.classification));
                if let Some(a) = &r.alternative {
                    println!("also consistent with: {}", show(a));
                }
                println!("note: {}", r.note);
            }
            Ok(0)
        }
        Command::Weyl { group, order, longest_word: lw, weyl_cap } => {
            let rs = RootSystem::from_spec_str(&group)?;
            println!("{}: degrees {:?}, |W| = {}", rs.spec.canonical(), rs.degrees(), rs.weyl_order());
            if order {
                let w = WeylGroup::of(&rs, weyl_cap)?;
                println!("enumerated order {}", w.order());
            }
            if lw {
                let (_, word) = longest_word(&rs);
                let word: Vec<String> = word.iter().map(|i| format!("s{}", i + 1)).collect();
                println!("w0 = {} (length {})", word.join(" "), word.len());
            }
            Ok(0)
        }
        Command::Invariants { group } => {
            let rs = RootSystem::from_spec_str(&group)?;
            let inv = basic_invariants(&rs)?;
            for (f, d) in inv.generators.iter().zip(&inv.degrees) {
                println!("degree {d}: {} terms", f.num_terms());
            }
            Ok(0)
        }
        Command::CrossValidate { group, subgroup, json, caps } => {
            let c = cross_validate(&group, &subgroup, &caps.config())?;
            if json {
                print_json(&c);
            } else {
                println!("formal {:?}, d = {:?}, coinvariant d = {}, d_S = {:?}, |N| = {}", c.formal, c.d, c.coinvariant_d, c.d_s, c.n_order);
                println!("Σ dim (C_W)^{{W_v}} = {} (expected {}), Hilbert series match: {}", c.coinvariant_total, c.expected_total, c.hilbert_matches);
                println!("consistent: {}", c.consistent);
            }
            Ok(if c.consistent { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
