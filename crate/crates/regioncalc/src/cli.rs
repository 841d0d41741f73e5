//! Argument grammar and dispatch for the `regioncalc` binary.
//!
//! Diagrams are read from standard input (or `--input`) in the
//! `surface_diagram v1` format; reports go to standard output as
//! `key=value` lines, or as one JSON object with `--json`.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use regioncalc_core::families;
use regioncalc_core::gl::{gl_bruteforce, GlError, DEFAULT_LIMIT};
use regioncalc_core::homology::{homology_profile, verify_theorem4};
use regioncalc_core::moves::{apply_move, enumerate_sites, invariance_trial};
use regioncalc_core::region::{
    admissible, equivalent_diagrams, incidence_matrix, linking_numbers, mod2_linking_profile,
    tait_laplacian, tait_laplacian_components, two_colorable, Color, CountingRule,
};
use regioncalc_core::{Gf2Matrix, SurfaceDiagram};

use crate::format::{parse_diagram, write_diagram, write_matrix};
use crate::report::Report;

pub const GL_LIMIT_VAR: &str = "REGIONCALC_GL_LIMIT";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "regioncalc", version, about = "Region crossing changes on surface link diagrams")]
pub struct Cli {
    /// Read the diagram from this file instead of standard input.
    #[arg(long, global = true)]
    pub input: Option<std::path::PathBuf>,
    /// Print the report as a JSON object.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RuleArg {
    #[arg(long, default_value = "modified", value_parser = parse_rule)]
    pub rule: CountingRule,
}

fn parse_rule(s: &str) -> Result<CountingRule, String> {
    s.parse().map_err(|e: regioncalc_core::region::RegionError| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a generated diagram: grid M L, torus_pq P Q, meridian P, planar NAME.
    Gen {
        family: String,
        params: Vec<String>,
    },
    /// Counts and genus.
    Info,
    /// Face orbits with their region.
    Faces,
    /// Region incidence matrix.
    Matrix(RuleArg),
    Rank(RuleArg),
    /// Number of equivalence classes under region crossing changes.
    Classes(RuleArg),
    /// Regions whose changes switch exactly the listed crossings.
    Solve {
        #[command(flatten)]
        rule: RuleArg,
        /// Comma-separated crossing ids.
        #[arg(long, value_delimiter = ',')]
        crossings: Vec<String>,
    },
    /// Whether the input and OTHER are related by region crossing changes.
    Equivalent {
        #[command(flatten)]
        rule: RuleArg,
        other: std::path::PathBuf,
    },
    Colorable,
    /// Mod-2 Laplacian of the Tait graph of a checkerboard coloring.
    Tait,
    Linking {
        /// Comma-separated 1-based indices of components to reverse.
        #[arg(long, value_delimiter = ',')]
        reverse: Vec<usize>,
    },
    Homology,
    /// Exit status 0 when the rank identity holds, 1 otherwise.
    #[command(name = "verify-thm4")]
    VerifyThm4,
    #[command(subcommand)]
    Moves(MovesCommand),
    /// Brute-force graph of over/under assignments.
    Gl {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MovesCommand {
    List,
    /// Apply the k-th listed move and emit the result.
    Apply {
        #[arg(long)]
        site: usize,
    },
    /// Random walk; exit status 0 when r - rank stays constant.
    Trial {
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure carrying an exit status and a message for standard error.
#[derive(Debug)]
struct Failure(i32, String);

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

enum Output {
    Report(Report, i32),
    Text(String),
}

fn report(r: Report) -> Result<Output, Failure> {
    Ok(Output::Report(r, EXIT_OK))
}

fn generate(family: &str, params: &[String]) -> Result<SurfaceDiagram, Failure> {
    let nums = || -> Result<Vec<usize>, Failure> {
        params
            .iter()
            .map(|p| p.parse().map_err(|_| usage(format!("expected an integer, found `{p}`"))))
            .collect()
    };
    let arity = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(usage(format!("`gen {family}` takes {k} parameter(s)")))
        }
    };
    let d = match family {
        "grid" => {
            arity(2)?;
            let v = nums()?;
            families::grid(v[0], v[1])
        }
        "torus_pq" => {
            arity(2)?;
            let v = nums()?;
            families::torus_pq(v[0], v[1])
        }
        "meridian" => {
            arity(1)?;
            families::meridian_family(nums()?[0])
        }
        "planar" => {
            arity(1)?;
            return families::planar_by_name(&params[0]).ok_or_else(|| {
                let names: Vec<&str> = families::planar_zoo().iter().map(|(n, _)| *n).collect();
                usage(format!("unknown planar diagram `{}` (known: {})", params[0], names.join(", ")))
            });
        }
        _ => return Err(usage(format!("unknown family `{family}` (grid, torus_pq, meridian, planar)"))),
    };
    d.map_err(usage)
}

fn region_names(d: &SurfaceDiagram) -> String {
    let names: Vec<String> = (0..d.regions().len()).map(|i| format!("R{i}")).collect();
    names.join(" ")
}

fn crossing_names(d: &SurfaceDiagram, cols: &[usize]) -> String {
    let names: Vec<&str> = cols.iter().map(|&n| d.label(n)).collect();
    names.join(" ")
}

fn int_list(xs: impl IntoIterator<Item = usize>) -> Vec<i64> {
    xs.into_iter().map(|x| x as i64).collect()
}

fn coloring_string(c: &[Color]) -> String {
    c.iter().map(|&x| if x == Color::White { 'W' } else { 'B' }).collect()
}

fn gl_limit(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(l) = flag {
        return Ok(l);
    }
    match std::env::var(GL_LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{GL_LIMIT_VAR} must be an integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_LIMIT),
    }
}

fn read_file(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Output, Failure> {
    if let Command::Gen { family, params } = &cli.command {
        return Ok(Output::Text(write_diagram(&generate(family, params)?)));
    }
    let text = match &cli.input {
        Some(p) => read_file(p)?,
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("reading standard input: {e}")))?;
            s
        }
    };
    let d = parse_diagram(&text).map_err(usage)?;
    let mut r = Report::new();
    match &cli.command {
        Command::Gen { .. } => unreachable!(),
        Command::Info => {
            let crossings = d.crossing_count();
            r.push("nodes", d.map().node_count())
                .push("crossings", crossings)
                .push("markers", d.map().node_count() - crossings)
                .push("edges", d.map().edge_count())
                .push("faces", d.faces().len())
                .push("regions", d.regions().len())
                .push("components", d.components().len())
                .push("pieces", d.piece_count())
                .push("genus", d.genus() as usize)
                .push(
                    "region_euler",
                    d.regions().iter().map(|x| x.euler_characteristic).collect::<Vec<i64>>(),
                );
            report(r)
        }
        Command::Faces => {
            for (f, orbit) in d.faces().iter().enumerate() {
                r.push(format!("face{f}.region"), d.region_of_face(f))
                    .push(format!("face{f}.darts"), int_list(orbit.iter().copied()));
            }
            report(r)
        }
        Command::Matrix(rule) => {
            let inc = incidence_matrix(&d, rule.rule);
            if cli.json {
                r.push("rule", rule.rule.name()).push("matrix", inc.matrix);
                return report(r);
            }
            Ok(Output::Text(write_matrix(
                &inc.matrix,
                &region_names(&d),
                &crossing_names(&d, &inc.crossings),
            )))
        }
        Command::Rank(rule) => {
            let inc = incidence_matrix(&d, rule.rule);
            r.push("rule", rule.rule.name())
                .push("rank", inc.rank())
                .push("r", d.regions().len())
                .push("c", inc.crossings.len())
                .push("n", d.components().len());
            report(r)
        }
        Command::Classes(rule) => {
            let inc = incidence_matrix(&d, rule.rule);
            let e = inc.crossings.len() - inc.rank();
            r.push("rule", rule.rule.name())
                .push("exponent", e)
                .push("classes", BigUint::from(1u8) << e);
            report(r)
        }
        Command::Solve { rule, crossings } => {
            let nodes = crossings
                .iter()
                .map(|id| d.node_by_label(id).ok_or_else(|| usage(format!("no node labelled `{id}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let sol = admissible(&d, &nodes, rule.rule).map_err(usage)?;
            r.push("rule", rule.rule.name()).push("solvable", sol.is_some());
            let exit = if let Some(regions) = sol {
                r.push("regions", int_list(regions));
                EXIT_OK
            } else {
                EXIT_FAILS
            };
            Ok(Output::Report(r, exit))
        }
        Command::Equivalent { rule, other } => {
            let e = parse_diagram(&read_file(other)?).map_err(usage)?;
            let eq = equivalent_diagrams(&d, &e, rule.rule).map_err(usage)?;
            r.push("rule", rule.rule.name()).push("equivalent", eq);
            Ok(Output::Report(r, if eq { EXIT_OK } else { EXIT_FAILS }))
        }
        Command::Colorable => {
            let c = two_colorable(&d);
            r.push("colorable", c.is_some());
            if let Some(c) = &c {
                r.push("coloring", coloring_string(c));
            }
            Ok(Output::Report(r, if c.is_some() { EXIT_OK } else { EXIT_FAILS }))
        }
        Command::Tait => {
            let c = two_colorable(&d).ok_or_else(|| Failure(EXIT_FAILS, "diagram is not 2-colorable".into()))?;
            let lap = tait_laplacian(&d, &c).map_err(usage)?;
            let nullity = tait_laplacian_components(&d, &c).map_err(usage)?;
            r.push("coloring", coloring_string(&c))
                .push("nullity", nullity)
                .push("laplacian", lap);
            report(r)
        }
        Command::Linking { reverse } => {
            let n = d.components().len();
            let mut rev = vec![false; n];
            for &i in reverse {
                if i == 0 || i > n {
                    return Err(usage(format!("component {i} out of range 1..={n}")));
                }
                rev[i - 1] = true;
            }
            let lk = linking_numbers(&d, &rev).map_err(usage)?;
            for (i, row) in lk.iter().enumerate() {
                r.push(format!("lk{}", i + 1), row.clone());
            }
            let p = mod2_linking_profile(&d, Some(&rev)).map_err(usage)?;
            r.push("profile", p.profile.iter().map(|&b| b as i64).collect::<Vec<i64>>())
                .push("unknotting_criterion", p.unknotting_criterion());
            report(r)
        }
        Command::Homology => {
            let h = homology_profile(&d);
            r.push("n_rank", h.n_rank)
                .push("class_vectors", h.class_vectors)
                .push("null_basis", Gf2Matrix::from_rows(d.components().len(), &h.null_basis));
            report(r)
        }
        Command::VerifyThm4 => {
            let t = verify_theorem4(&d);
            r.push("r", t.r)
                .push("n", t.n)
                .push("c", t.c)
                .push("rank_modified", t.rank_modified)
                .push("n_rank", t.n_rank)
                .push("holds", t.holds);
            Ok(Output::Report(r, if t.holds { EXIT_OK } else { EXIT_FAILS }))
        }
        Command::Moves(MovesCommand::List) => {
            let sites = enumerate_sites(&d);
            r.push("count", sites.len());
            for (k, s) in sites.iter().enumerate() {
                r.push(format!("site{k}"), s.to_string());
            }
            report(r)
        }
        Command::Moves(MovesCommand::Apply { site }) => {
            let sites = enumerate_sites(&d);
            let s = sites
                .get(*site)
                .ok_or_else(|| usage(format!("site {site} out of range (diagram has {})", sites.len())))?;
            let e = apply_move(&d, s).map_err(usage)?;
            Ok(Output::Text(write_diagram(&e)))
        }
        Command::Moves(MovesCommand::Trial { steps, seed }) => {
            let t = invariance_trial(&d, *steps, *seed);
            r.push("steps", *steps)
                .push("moves", t.moves.len())
                .push("values", t.values.clone())
                .push("crossings", int_list(t.crossings.iter().copied()))
                .push("constant", t.constant());
            Ok(Output::Report(r, if t.constant() { EXIT_OK } else { EXIT_FAILS }))
        }
        Command::Gl { rule, limit } => {
            let limit = gl_limit(*limit)?;
            let s = gl_bruteforce(&d, rule.rule, limit).map_err(|e: GlError| Failure(EXIT_INFEASIBLE, e.to_string()))?;
            r.push("rule", rule.rule.name())
                .push("vertex_count", s.vertex_count)
                .push("component_count", s.component_count)
                .push("uniform", s.component_size.is_some());
            if let Some(size) = s.component_size {
                r.push("component_size", size);
            }
            r.push("loops_per_vertex", s.loops_per_vertex);
            report(r)
        }
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(Output::Text(t)) => {
            let _ = stdout.write_all(t.as_bytes());
            EXIT_OK
        }
        Ok(Output::Report(r, code)) => {
            let text = if cli.json {
                format!("{}\n", r.to_json())
            } else {
                r.to_text()
            };
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "regioncalc: {msg}");
            code
        }
    }
}
