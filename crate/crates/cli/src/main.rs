//! `quartet`: generate, verify and search solutions of `A^4 + aB^4 = C^4 + aD^4`.
//!
//! Exit codes: 0 success, 1 verification failure or table mismatch, 2 usage error.

mod record;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use quartet::exactnum::{format_rat, parse_int, parse_rat};
use quartet::families::{
    derive_case1, derive_case2, family_spec, generate, Case1Variant, FamilyId,
};
use quartet::quartic::{
    eq7_residual, is_trivial, pqrs_to_quadruple, verify_quadruple, Mode, Quadruple, RhoState,
};
use quartet::search::{brute_search, estimate_index_bytes, SearchConfig};
use quartet::tables::{reproduce, RowStatus, Source, TableId};
use quartet::ExactRat;

use record::{Format, OutputRecord, RecordWriter};

/// `println!` that reports write errors instead of panicking on a closed pipe.
macro_rules! say {
    ($($t:tt)*) => {
        writeln!(io::stdout(), $($t)*).map_err(io_err)?
    };
}

const DEFAULT_MAX_INDEX_BYTES: u128 = 2 << 30;

#[derive(Parser)]
#[command(
    name = "quartet",
    version,
    about = "Exact solutions of A^4 + aB^4 = C^4 + aD^4"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a parametric family at one parameter.
    Gen {
        #[arg(long)]
        family: String,
        /// Rational "p" or "p/q".
        #[arg(long, allow_hyphen_values = true)]
        param: String,
        /// Signed rows as generated (default).
        #[arg(long, conflicts_with = "canonical")]
        raw: bool,
        /// Orbit representative with `a` made a fourth-power-free integer.
        #[arg(long)]
        canonical: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a quadruple; exit 0 iff it is a solution.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Four comma-separated integers A,B,C,D.
        #[arg(short, long = "quad", allow_hyphen_values = true)]
        q: String,
    },
    /// Enumerate all primitive nontrivial solutions with entries up to a bound.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        workers: u32,
        /// Exclude zero entries.
        #[arg(long)]
        no_zero: bool,
    },
    /// Regenerate a table from its recorded parameters and compare.
    Table {
        /// One of 1, 2, 3, 4, 7.
        id: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check family identities symbolically.
    Identity {
        /// A family tag or "all".
        #[arg(default_value = "all")]
        family: String,
    },
    /// Print the intermediates of a resolvent derivation chain.
    Derive {
        #[arg(long = "case", value_parser = clap::value_parser!(u8).range(1..=2))]
        case: u8,
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
    },
    /// List every registered family with its formulas.
    Families,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Linear,
    Quadratic,
}

enum Failure {
    /// Reader went away; exit quietly.
    Pipe,
    /// Exit 1.
    Check(String),
    /// Exit 2.
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn check(e: impl ToString) -> Failure {
    Failure::Check(e.to_string())
}

fn io_err(e: io::Error) -> Failure {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Failure::Pipe
    } else {
        Failure::Check(format!("write failed: {e}"))
    }
}

fn rat_arg(s: &str) -> Result<ExactRat, Failure> {
    parse_rat(s).map_err(usage)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            family,
            param,
            canonical,
            format,
            ..
        } => cmd_gen(&family, &param, canonical, format),
        Command::Verify { a, q } => cmd_verify(&a, &q),
        Command::Search {
            a,
            bound,
            format,
            workers,
            no_zero,
        } => cmd_search(&a, bound, format, workers, no_zero),
        Command::Table { id, format } => cmd_table(&id, format),
        Command::Identity { family } => cmd_identity(&family),
        Command::Derive {
            case,
            variant,
            t,
            n,
        } => cmd_derive(case, variant, t, n),
        Command::Families => cmd_families(),
    };
    match result {
        Ok(()) | Err(Failure::Pipe) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_gen(family: &str, param: &str, canonical: bool, format: Format) -> Outcome {
    let id = FamilyId::parse(family).map_err(usage)?;
    let x = rat_arg(param)?;
    let mode = if canonical {
        Mode::Canonical
    } else {
        Mode::Raw
    };
    let q = generate(id, &x, mode).map_err(check)?;
    if !verify_quadruple(&q).is_zero() {
        return Err(check(format!("generated {q} does not verify")));
    }
    if is_trivial(&q) {
        eprintln!("warning: trivial solution {q}");
    }
    let rec = OutputRecord::new(Some(id.tag()), Some(format_rat(&x)), &q, mode);
    let mut w = RecordWriter::new(format, io::stdout().lock());
    w.write(&rec).map_err(io_err)
}

fn cmd_verify(a: &str, quad: &str) -> Outcome {
    let a = rat_arg(a)?;
    let parts: Vec<&str> = quad.split(',').collect();
    if parts.len() != 4 {
        return Err(usage(format!(
            "expected four comma-separated integers, got '{quad}'"
        )));
    }
    let entries = parts
        .iter()
        .map(|p| parse_int(p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let q = Quadruple::new(entries.try_into().expect("four entries"), a).map_err(usage)?;
    let res = verify_quadruple(&q);
    say!("residual {}", format_rat(&res));
    if res.is_zero() {
        say!("SOLUTION");
        if is_trivial(&q) {
            say!("trivial");
        }
        Ok(())
    } else {
        say!("NOT A SOLUTION");
        Err(check(""))
    }
}

fn max_index_bytes() -> Result<u128, Failure> {
    match std::env::var("QUARTET_MAX_INDEX_BYTES") {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!(
                "QUARTET_MAX_INDEX_BYTES must be an integer, got '{v}'"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_INDEX_BYTES),
    }
}

fn cmd_search(a: &str, bound: u32, format: Format, workers: u32, no_zero: bool) -> Outcome {
    let a = rat_arg(a)?;
    let cfg = SearchConfig::new(a, bound)
        .map_err(usage)?
        .with_workers(workers as usize)
        .with_include_zero(!no_zero);
    let need = estimate_index_bytes(&cfg);
    let cap = max_index_bytes()?;
    if need > cap {
        return Err(usage(format!(
            "bound {bound} needs an index of about {need} bytes, above the cap of {cap} \
             (set QUARTET_MAX_INDEX_BYTES to raise it)"
        )));
    }
    let hits = brute_search(&cfg).map_err(check)?;
    let mut w = RecordWriter::new(format, io::stdout().lock());
    for h in &hits {
        w.write(&OutputRecord::new(None, None, &h.quad, Mode::Canonical))
            .map_err(io_err)?;
    }
    Ok(())
}

fn source_fields(src: &Source) -> (String, String) {
    match src {
        Source::Family { id, param } => (id.tag(), format_rat(param)),
        Source::Rho1 { row, u } => (format!("rho1_i{row}"), format_rat(u)),
    }
}

fn cmd_table(id: &str, format: Format) -> Outcome {
    let table = TableId::parse(id).map_err(usage)?;
    let checks = reproduce(table);
    let mut out = io::stdout().lock();
    let mut bad = Vec::new();
    if format == Format::Text {
        writeln!(out, "Table {table}: {}", table.caption()).map_err(io_err)?;
    }
    let mut w = (format != Format::Text).then(|| RecordWriter::new(format, io::stdout()));
    for c in &checks {
        let (family, param) = source_fields(&c.row.source);
        let generated = match &c.generated {
            Ok(g) => g,
            Err(e) => {
                bad.push(format!("{}: {e}", c.row.source));
                continue;
            }
        };
        if !verify_quadruple(generated).is_zero() {
            bad.push(format!(
                "{}: generated {generated} does not verify",
                c.row.source
            ));
            continue;
        }
        if c.status == RowStatus::Mismatch {
            bad.push(format!(
                "{}: generated {generated}, golden {}",
                c.row.source, c.row.printed
            ));
        }
        match &mut w {
            Some(w) => w
                .write(&OutputRecord::new(
                    Some(family),
                    Some(param),
                    generated,
                    table.mode(),
                ))
                .map_err(io_err)?,
            None => {
                let [a, b, cc, d] = &generated.entries;
                let status = match c.status {
                    RowStatus::Match => "MATCH".to_string(),
                    RowStatus::MatchesErratum => {
                        format!("ERRATUM (printed {})", c.row.printed)
                    }
                    RowStatus::Mismatch => "MISMATCH".to_string(),
                };
                let mut line = format!(
                    "{:<22} {a} {b} {cc} {d} a={}",
                    c.row.source.to_string(),
                    format_rat(&generated.a)
                );
                if table == TableId::T7 {
                    let [pa, pb, pc, pd] = &c.row.printed.entries;
                    line.push_str(&format!(
                        "  printed a={} {pa} {pb} {pc} {pd}",
                        format_rat(&c.row.printed.a)
                    ));
                }
                writeln!(out, "{line}  {status}").map_err(io_err)?;
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(check(format!(
            "rows differ from golden values:\n  {}",
            bad.join("\n  ")
        )))
    }
}

fn cmd_identity(family: &str) -> Outcome {
    let ids = if family.eq_ignore_ascii_case("all") {
        FamilyId::all()
    } else {
        vec![FamilyId::parse(family).map_err(usage)?]
    };
    let mut failed = 0;
    for id in ids {
        let spec = family_spec(id);
        let res = spec.identity_residual();
        if res.is_identically_zero() {
            say!("PASS {id}");
        } else {
            failed += 1;
            say!("FAIL {id}: residual {}", res.display(spec.param));
        }
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(check(format!("{failed} families fail their identity")))
    }
}

fn print_chain(
    steps: &[(&str, &ExactRat)],
    st: &RhoState,
    q: Result<Quadruple, Failure>,
) -> Outcome {
    for (name, v) in steps {
        say!("{name} = {}", format_rat(v));
    }
    let res = eq7_residual(st);
    say!("resolvent residual = {}", format_rat(&res));
    if !res.is_zero() {
        return Err(check("chain does not satisfy the resolvent"));
    }
    let q = q?;
    let [a, b, c, d] = &q.entries;
    say!("A={a} B={b} C={c} D={d} a={}", format_rat(&q.a));
    if is_trivial(&q) {
        eprintln!("warning: trivial solution {q}");
    }
    Ok(())
}

fn cmd_derive(case: u8, variant: Option<Variant>, t: Option<String>, n: Option<String>) -> Outcome {
    let raw = |ps| pqrs_to_quadruple(&ps, Mode::Raw).map_err(check);
    if case == 1 {
        let t = t.ok_or_else(|| usage("--case 1 needs --t"))?;
        let variant = match variant.ok_or_else(|| usage("--case 1 needs --variant"))? {
            Variant::Linear => Case1Variant::Linear,
            Variant::Quadratic => Case1Variant::Quadratic,
        };
        let d = derive_case1(&rat_arg(&t)?, variant).map_err(check)?;
        let q = d.pqrs().map_err(check).and_then(raw);
        print_chain(
            &[
                ("t", &d.t),
                ("z", &d.z),
                ("rho", &d.rho),
                ("omega", &d.omega),
            ],
            &d.state(),
            q,
        )
    } else {
        let n = n.ok_or_else(|| usage("--case 2 needs --n"))?;
        let d = derive_case2(&rat_arg(&n)?).map_err(check)?;
        let q = d.pqrs().map_err(check).and_then(raw);
        say!(
            "delta branch = {}",
            if d.delta_branch > 0 { "+" } else { "-" }
        );
        print_chain(
            &[
                ("n", &d.n),
                ("v", &d.v),
                ("k", &d.k),
                ("z", &d.z),
                ("rho", &d.rho),
                ("t", &d.t),
                ("omega", &d.omega),
                ("delta", &d.delta),
            ],
            &d.state(),
            q,
        )
    }
}

fn cmd_families() -> Outcome {
    let mut out = io::stdout().lock();
    for id in FamilyId::all() {
        writeln!(out, "{}\n", family_spec(id).describe()).map_err(io_err)?;
    }
    Ok(())
}
