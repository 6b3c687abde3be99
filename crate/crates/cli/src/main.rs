//! `idealarr`: enumerate ideals, emit uniform bases, run verification
//! campaigns, re-derive P_m and export cohomology presentations.

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{ArgGroup, CommandFactory, Parser, Subcommand};
use idealarr::bases::{build_with_budget, default_basis, matrix_json, paper_matrices};
use idealarr::cohomology::generators;
use idealarr::exactmath::rational;
use idealarr::ideals::{enumerate_lower_ideals, hessenberg_from_ideal, ideal_from_hessenberg, HessenbergFunction};
use idealarr::matsolver::{solve_chain, solve_chain_sampled, LevelReport};
use idealarr::rootsys::{Family, LieType, RootSystem};
use idealarr::saito::{verify_ideals, verify_type, SaitoMode, VerificationReport};
use serde_json::{json, Value};

const SOLVER_POINTS: usize = 3;

/// `println!` that propagates write errors, so a closed pipe ends the run quietly.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(io::stdout().lock(), $($arg)*)?
    };
}

#[derive(Parser)]
#[command(name = "idealarr", version, about = "Uniform bases for ideal arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots in (i, j) coordinates.
    Roots {
        #[arg(value_parser = parse_type)]
        lie_type: LieType,
        #[arg(long)]
        json: bool,
    },
    /// Count or list the lower ideals by Hessenberg function.
    #[command(group(ArgGroup::new("what").args(["count", "list"]).required(true)))]
    Ideals {
        #[arg(value_parser = parse_type)]
        lie_type: LieType,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the uniform basis ψ_{i,j}.
    Basis {
        #[arg(value_parser = parse_type)]
        lie_type: LieType,
        #[arg(long)]
        json: bool,
        /// Also print the P_m matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Certify bases with Saito's criterion.
    #[command(group(ArgGroup::new("which").args(["all_ideals", "h", "sample"])))]
    Verify {
        #[arg(value_parser = parse_type)]
        lie_type: LieType,
        #[arg(long)]
        all_ideals: bool,
        /// One Hessenberg function, e.g. 3,5,4,7.
        #[arg(long, value_parser = parse_h)]
        h: Option<HessenbergFunction>,
        /// Verify a seeded sample of this many ideals.
        #[arg(long)]
        sample: Option<usize>,
        /// exact or random; defaults by type.
        #[arg(long, value_parser = parse_mode)]
        mode: Option<SaitoMode>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive P_m from the coefficient matrices C_m.
    SolveMatrices {
        #[arg(value_parser = parse_type)]
        lie_type: LieType,
        /// Check equivalence with the stored matrices.
        #[arg(long)]
        compare_paper: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generators of the cohomology presentation for one Hessenberg function.
    Cohomology {
        #[arg(value_parser = parse_type)]
        lie_type: LieType,
        #[arg(long, value_parser = parse_h)]
        h: HessenbergFunction,
        #[arg(long)]
        poincare: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_type(s: &str) -> std::result::Result<LieType, String> {
    s.parse().map_err(|e: idealarr::Error| e.to_string())
}

fn parse_h(s: &str) -> std::result::Result<HessenbergFunction, String> {
    HessenbergFunction::parse(s).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<SaitoMode, String> {
    s.parse().map_err(|e: idealarr::Error| e.to_string())
}

/// Reject an h that is out of bounds or not downward closed, as a usage error.
fn check_h(rs: &RootSystem, h: &HessenbergFunction) {
    if let Err(e) = h.check_bounds(rs).and_then(|_| ideal_from_hessenberg(rs, h)) {
        Cli::command().error(ErrorKind::ValueValidation, format!("invalid --h {h}: {e}")).exit();
    }
}

fn manifest(seed: Option<u64>, results: Value, pass: bool) -> Value {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    json!({
        "command": argv.join(" "),
        "seed": seed,
        "version": env!("CARGO_PKG_VERSION"),
        "results": results,
        "pass": pass,
    })
}

fn emit(v: &Value) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Roots { lie_type, json } => {
            let rs = RootSystem::build(lie_type)?;
            if json {
                emit(&manifest(None, rs.to_json(), true))?;
            } else {
                out!("{lie_type}: {} positive roots, exponents {:?}", rs.num_roots(), rs.exponents());
                for r in rs.roots() {
                    out!("  α{:<8} ht {:>2}  {}", r.index.to_string(), r.height(), r.form);
                }
            }
            Ok(true)
        }
        Command::Ideals { lie_type, count, list: _, json } => {
            let rs = RootSystem::build(lie_type)?;
            let ideals = enumerate_lower_ideals(&rs);
            if count {
                if json {
                    emit(&manifest(None, json!({ "count": ideals.len() }), true))?;
                } else {
                    out!("{}", ideals.len());
                }
            } else {
                let mut hs: Vec<HessenbergFunction> =
                    ideals.iter().map(|i| hessenberg_from_ideal(&rs, i)).collect::<idealarr::Result<_>>()?;
                hs.sort();
                if json {
                    emit(&manifest(None, json!({ "count": hs.len(), "ideals": hs }), true))?;
                } else {
                    for h in hs {
                        out!("{h}");
                    }
                }
            }
            Ok(true)
        }
        Command::Basis { lie_type, json, matrices } => {
            let rs = RootSystem::build(lie_type)?;
            let basis = default_basis(&rs)?;
            let fam = if matrices { Some(paper_matrices(&rs)?) } else { None };
            if json {
                let mut v = basis.to_json();
                if let Some(f) = &fam {
                    v["matrices"] = f.to_json(&rs);
                }
                emit(&manifest(None, v, true))?;
            } else {
                out!("{lie_type} basis ({}, degree budget {})", basis.source().name(), basis.budget());
                for (r, d) in basis.derivs() {
                    out!("ψ{r} = {d}");
                }
                if !basis.is_complete() {
                    out!("entries above degree {} are evaluated pointwise only", basis.budget());
                }
                if let Some(f) = &fam {
                    for (m, p) in f.levels().iter().enumerate() {
                        out!("P_{m} (Λ_{m} = {:?}):", rs.lambda_set(m)?);
                        for row in p {
                            let cells: Vec<String> = row.iter().map(rational::display).collect();
                            out!("  [{}]", cells.join(", "));
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Verify { lie_type, all_ideals: _, h, sample, mode, seed, json } => {
            let rs = RootSystem::build(lie_type)?;
            let basis = default_basis(&rs)?;
            let mode = mode.unwrap_or_else(|| SaitoMode::default_for(&rs));
            let reports = match &h {
                Some(h) => {
                    check_h(&rs, h);
                    let ideal = ideal_from_hessenberg(&rs, h)?;
                    verify_ideals(&rs, &basis, &[ideal], mode, seed)?
                }
                None => verify_type(&rs, &basis, mode, sample, seed)?,
            };
            let passed = reports.iter().filter(|r| r.passed()).count();
            let ok = passed == reports.len();
            if json {
                let v = json!({ "type": lie_type, "mode": mode, "total": reports.len(), "passed": passed, "reports": reports });
                emit(&manifest(Some(seed), v, ok))?;
            } else {
                print_reports(&reports)?;
                out!("{lie_type}: {passed}/{} pass ({mode:?})", reports.len());
            }
            Ok(ok)
        }
        Command::SolveMatrices { lie_type, compare_paper, seed, json } => {
            let rs = RootSystem::build(lie_type)?;
            let fam = paper_matrices(&rs)?;
            let reference = compare_paper.then_some(&fam);
            let levels = if lie_type.family == Family::E && lie_type.rank > 6 {
                let basis = build_with_budget(&rs, &fam, 0)?;
                solve_chain_sampled(&rs, &basis, reference, SOLVER_POINTS, seed)?
            } else {
                solve_chain(&rs, reference)?
            };
            let ok = levels.iter().all(|l| l.rank_ok && l.equivalent != Some(false));
            if json {
                emit(&manifest(Some(seed), json!({ "type": lie_type, "levels": levels }), ok))?;
            } else {
                print_levels(&levels)?;
            }
            Ok(ok)
        }
        Command::Cohomology { lie_type, h, poincare, json } => {
            let rs = RootSystem::build(lie_type)?;
            check_h(&rs, &h);
            let basis = default_basis(&rs)?;
            let p = generators(&rs, &basis, &h).context("building the presentation")?;
            if json {
                let mut v = serde_json::to_value(&p)?;
                if !poincare {
                    v.as_object_mut().expect("object").remove("poincare");
                }
                emit(&manifest(None, v, true))?;
            } else {
                for ((g, &i), &j) in p.generators.iter().zip(rs.labels()).zip(h.values()) {
                    out!("f({i},{j}) = {g}");
                }
                if poincare {
                    let c: Vec<String> = p.poincare.iter().map(u64::to_string).collect();
                    out!("poincare: {}", c.join(" "));
                }
            }
            Ok(true)
        }
    }
}

fn print_reports(reports: &[VerificationReport]) -> Result<()> {
    for r in reports {
        let c = r.constant.as_ref().map_or("-".to_string(), rational::display);
        let status = if r.passed() { "ok" } else { "FAIL" };
        out!(
            "{:<28} |I|={:<3} member={} degrees={} saito={} c={c} {status}",
            r.h.to_string(),
            r.ideal_size,
            r.membership_ok,
            r.degree_sum_ok,
            r.saito_ok
        );
        if let Some(d) = &r.detail {
            out!("  {d}");
        }
    }
    Ok(())
}

fn print_levels(levels: &[LevelReport]) -> Result<()> {
    for l in levels {
        let eq = l.equivalent.map_or("-".to_string(), |e| e.to_string());
        out!("m={:<2} Λ={:?} rank={} rank_ok={} equivalent: {eq}", l.m, l.lambda, l.rank, l.rank_ok);
        if let Value::Array(rows) = matrix_json(&l.solved) {
            for row in rows {
                out!("  {row}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match idealarr::saito::with_pool(|| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
