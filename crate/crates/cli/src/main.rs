//! `fakequad`: divisor-class arithmetic on fake quadrics from the shell.
//!
//! Exit status: 0 on success, 1 on usage error, 2 when two independent
//! routes to the same number disagree (an internal consistency fault).

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use fakequad::analysis::{self, ClassReport, Quantity};
use fakequad::diophantine::{
    verify_no_p4_embedding, DEFAULT_BOX_BOUND, MAX_BOX_BOUND, MIN_BOX_BOUND,
};
use fakequad::report::run_acceptance;
use fakequad::{DivisorClass, LatticeType, SurfaceModel};
use serde::Serialize;

const DEFAULT_G_MAX: u32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "fakequad",
    version,
    about = "Divisor-class arithmetic on fake quadrics (K² = 8, q = p_g = 0)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModelArg {
    /// Néron–Severi lattice type: "even" (U) or "odd" (<1> + <-1>)
    #[arg(long, value_parser = parse_model)]
    model: LatticeType,
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[command(flatten)]
    model: ModelArg,
    /// Class xH + yF written "x,y"; negative entries need no escaping ("3,-1")
    #[arg(long, allow_hyphen_values = true, value_parser = parse_class)]
    class: DivisorClass,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BoxBound {
    /// Bound B of the exhaustive sweep over ample classes with coordinates up to B
    #[arg(
        long,
        default_value_t = DEFAULT_BOX_BOUND,
        value_parser = clap::value_parser!(u64).range(MIN_BOX_BOUND..=MAX_BOX_BOUND),
    )]
    box_bound: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positivity verdict, genus data, cohomology bounds and case analysis of a class
    Classify(ClassArgs),
    /// Euler characteristic χ(O(D))
    Chi(ClassArgs),
    /// Arithmetic genus p_a(D)
    Genus(ClassArgs),
    /// Rays of the effective and nef cones
    Cones {
        #[command(flatten)]
        model: ModelArg,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Certificate that no class embeds the surface in P⁴
    VerifyP4 {
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        bound: BoxBound,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Admissible curve classes of arithmetic genus 2..=g_max
    Enumerate {
        #[command(flatten)]
        model: ModelArg,
        /// Largest arithmetic genus listed
        #[arg(long, default_value_t = DEFAULT_G_MAX, value_parser = clap::value_parser!(u32).range(2..=100))]
        g_max: u32,
        /// Assume the surface is simply connected: drop classes with no
        /// sections and tag classes with h⁰ ≤ 1
        #[arg(long)]
        simply_connected: bool,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Run the full acceptance suite on both models
    Report {
        #[command(flatten)]
        bound: BoxBound,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
}

fn parse_model(s: &str) -> std::result::Result<LatticeType, String> {
    s.parse()
}

fn parse_class(s: &str) -> std::result::Result<DivisorClass, String> {
    s.parse()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_json(out: &mut impl Write, doc: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}

fn opt(v: &Option<impl std::fmt::Display>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

fn print_class_report(out: &mut impl Write, r: &ClassReport) -> Result<()> {
    writeln!(
        out,
        "class {} = {} on the {} model",
        r.class.basis_notation(),
        r.class,
        r.model
    )?;
    writeln!(
        out,
        "  K.D = {}  D^2 = {}  p_a = {}  chi = {}",
        r.genus.k_dot, r.genus.self_int, r.genus.p_a, r.genus.chi
    )?;
    let v = &r.verdict;
    writeln!(
        out,
        "  effective (necessary) {}  nef {}  big {}  ample {}  [{}]",
        yes_no(v.effective_necessary),
        yes_no(v.nef),
        yes_no(v.big),
        yes_no(v.ample),
        v.governing_rule.tag()
    )?;
    let c = &r.cohomology;
    writeln!(
        out,
        "  h2 = 0: {}  h0 >= {}  h0 exact: {}",
        yes_no(c.h2_zero),
        opt(&c.h0_lower),
        opt(&c.h0_exact)
    )?;
    match &r.bounded_cohomology {
        Some(case) => {
            let tag = serde_json::to_value(case.case_tag)?;
            writeln!(
                out,
                "  bounded cohomology: {}: {}",
                tag.as_str().unwrap_or_default(),
                case.relation
            )?;
        }
        None => writeln!(out, "  not an admissible curve class")?,
    }
    Ok(())
}

fn print_scalar(args: ClassArgs, quantity: Quantity, out: &mut impl Write) -> Result<()> {
    let r = analysis::scalar(&SurfaceModel::new(args.model.model), &args.class, quantity)?;
    if args.json {
        print_json(out, &r)
    } else {
        writeln!(out, "{}", r.value)?;
        Ok(())
    }
}

/// The acceptance suite ran but some criterion failed.
#[derive(Debug)]
struct SuiteFailed;

impl std::fmt::Display for SuiteFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("acceptance suite failed")
    }
}

impl std::error::Error for SuiteFailed {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<SuiteFailed>() {
        return 2;
    }
    match e.downcast_ref::<fakequad::Error>() {
        Some(err) if err.is_internal_fault() => 2,
        Some(_) => 1,
        // Broken pipe and other I/O trouble.
        None => 1,
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<()> {
    match cli.command {
        Command::Classify(a) => {
            let model = SurfaceModel::new(a.model.model);
            let r = analysis::analyze(&model, &a.class)?;
            if a.json {
                print_json(out, &r)?;
            } else {
                print_class_report(out, &r)?;
            }
        }
        Command::Chi(a) => print_scalar(a, Quantity::EulerCharacteristic, out)?,
        Command::Genus(a) => print_scalar(a, Quantity::ArithmeticGenus, out)?,
        Command::Cones { model, json } => {
            let r = analysis::cones(&SurfaceModel::new(model.model));
            if json {
                print_json(out, &r)?;
            } else {
                writeln!(out, "{} model, K = {}", r.model, r.canonical)?;
                let rays = |rs: &[DivisorClass; 2]| {
                    format!("{} and {}", rs[0].basis_notation(), rs[1].basis_notation())
                };
                writeln!(
                    out,
                    "  effective cone rays: {}",
                    rays(&r.rays.effective_rays)
                )?;
                writeln!(out, "  nef cone rays: {}", rays(&r.rays.nef_rays))?;
            }
        }
        Command::VerifyP4 { model, bound, json } => {
            let cert = verify_no_p4_embedding(&SurfaceModel::new(model.model), bound.box_bound)?;
            if json {
                print_json(out, &cert)?;
            } else {
                write!(out, "{}", cert.render_text())?;
            }
        }
        Command::Enumerate {
            model,
            g_max,
            simply_connected,
            json,
        } => {
            let r =
                analysis::enumeration(&SurfaceModel::new(model.model), g_max, simply_connected)?;
            if json {
                print_json(out, &r)?;
            } else {
                writeln!(
                    out,
                    "{} model, p_a <= {}{}",
                    r.model,
                    r.g_max,
                    if r.simply_connected {
                        ", simply connected"
                    } else {
                        ""
                    }
                )?;
                for l in &r.lists {
                    let classes: Vec<String> =
                        l.classes.iter().map(|c| c.basis_notation()).collect();
                    writeln!(
                        out,
                        "  p_a = {}: {}",
                        l.genus,
                        if classes.is_empty() {
                            "-".into()
                        } else {
                            classes.join(", ")
                        }
                    )?;
                    for a in &l.annotations {
                        let tags: Vec<String> = a
                            .tags
                            .iter()
                            .map(|t| {
                                serde_json::to_value(t)
                                    .map(|v| v.as_str().unwrap_or_default().to_string())
                            })
                            .collect::<std::result::Result<_, _>>()?;
                        writeln!(out, "    {}: {}", a.class.basis_notation(), tags.join(", "))?;
                    }
                }
            }
        }
        Command::Report { bound, json } => {
            let r = run_acceptance(bound.box_bound)?;
            if json {
                print_json(out, &r)?;
            } else {
                for c in &r.criteria {
                    writeln!(
                        out,
                        "{} criterion {:>2} {}: {} ({:.3} ms, budget {} ms{})",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.id,
                        c.title,
                        c.detail,
                        c.elapsed_ms,
                        c.budget_ms,
                        if c.within_budget { "" } else { ", over budget" }
                    )?;
                }
                for cert in &r.certificates {
                    writeln!(out)?;
                    write!(out, "{}", cert.render_text())?;
                }
                writeln!(out)?;
                writeln!(
                    out,
                    "{}",
                    if r.all_passed {
                        "all criteria passed"
                    } else {
                        "some criteria FAILED"
                    }
                )?;
            }
            if !r.all_passed {
                anyhow::bail!(SuiteFailed);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fakequad::Error;

    #[test]
    fn internal_faults_exit_2() {
        let fault = Error::ConsistencyFault {
            quantity: "euler characteristic",
            class: DivisorClass::new(1, 2),
            closed_form: 0.into(),
            generic: 1.into(),
        };
        let msg = fault.to_string();
        assert!(
            msg.contains("closed form gives 0") && msg.contains("generic formula gives 1"),
            "{msg}"
        );
        assert_eq!(exit_code(&fault.into()), 2);
        assert_eq!(exit_code(&SuiteFailed.into()), 2);
        let usage = Error::OutOfRange {
            name: "g_max",
            value: "1".into(),
            expected: "2 <= g_max <= 100",
        };
        assert_eq!(exit_code(&usage.into()), 1);
    }

    #[test]
    fn cli_definition_is_valid() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
