//! Command-line surface.
//!
//! Exit codes: 0 on success with a valid output, 1 on usage or parse errors,
//! 2 on invariant violations (solver guards, structural assertion failures,
//! invalid colorings). Every `color` run validates its own output and writes
//! a key-value report; wall time goes to stderr so file outputs stay
//! byte-reproducible.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use crate::decompose::{color_disk_approx, color_disk_log3, decompose, verify_tree};
use crate::delta::{delta_color_approx, delta_color_log, delta_separator, DeltaRepresentation};
use crate::gen::{
    gen_bc, gen_gadget, gen_interval_to_delta, gen_random_delta, gen_random_disks,
    gen_random_intervals, gen_random_unit, GadgetSpec, GenError,
};
use crate::geometry::{DiskInstance, Kind};
use crate::graph::{validate_subcoloring, Coloring};
use crate::io::{
    parse_coloring, parse_input, render_svg, serialize_coloring, serialize_graph,
    serialize_instance, LoadedInput, RunReport,
};
use crate::solve::{exact_subchromatic, SolverOptions};
use crate::unitdisk::{approx3_unit, color_unit7};

const USAGE: &str = "\
usage: disk-subcolor <command> [flags]

commands:
  gen bc --k K [--out F]
  gen interval2delta --n N [--seed S] [--out F]
  gen gadget --variant {ladder|forbidding|clause|matched-cliques|k444|c5|c4} [--k K] [--n N] [--out F]
  gen random-unit --n N [--width W] [--seed S] [--out F]
  gen random-delta --n N [--dmin A] [--dmax B] [--seed S] [--out F]
  gen random-disk --n N [--rmin A] [--rmax B] [--width W] [--seed S] [--out F]
  color --algo {isbell7|unit3approx|delta-log|delta-approx|disk-log3|disk-approx|exact}
        --in F [--out F] [--report F] [--limit N]
  verify --in F --coloring F
  oracle --in F [--limit N]
  decompose {--tree|--delta} --in F
  render --in F [--coloring F] --out F
";

enum CliError {
    /// Bad arguments or unreadable/ill-formed inputs: exit 1.
    Usage(String),
    /// Violated invariants, solver guards, invalid outputs: exit 2.
    Failure(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn failure(msg: impl std::fmt::Display) -> CliError {
    CliError::Failure(msg.to_string())
}

impl From<crate::io::ParseError> for CliError {
    fn from(e: crate::io::ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::ParamRange(_) | GenError::InvalidInterval => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

pub fn run_cli(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprint!("{USAGE}");
            1
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

struct Flags {
    values: BTreeMap<String, String>,
    switches: Vec<String>,
}

impl Flags {
    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    fn require(&self, name: &str) -> Result<&str, CliError> {
        self.get(name)
            .ok_or_else(|| usage(format!("missing required flag --{name}")))
    }

    fn parse<T: std::str::FromStr>(&self, name: &str) -> Result<Option<T>, CliError> {
        match self.get(name) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| usage(format!("bad value '{raw}' for --{name}"))),
        }
    }

    fn parse_or<T: std::str::FromStr>(&self, name: &str, default: T) -> Result<T, CliError> {
        Ok(self.parse(name)?.unwrap_or(default))
    }

    fn parse_required<T: std::str::FromStr>(&self, name: &str) -> Result<T, CliError> {
        self.require(name)?
            .parse::<T>()
            .map_err(|_| usage(format!("bad value for --{name}")))
    }

    fn has_switch(&self, name: &str) -> bool {
        self.switches.iter().any(|s| s == name)
    }
}

const SWITCHES: [&str; 2] = ["tree", "delta"];

fn parse_flags(args: &[String]) -> Result<Flags, CliError> {
    let mut values = BTreeMap::new();
    let mut switches = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        let Some(name) = arg.strip_prefix("--") else {
            return Err(usage(format!("unexpected argument '{arg}'")));
        };
        if SWITCHES.contains(&name) {
            switches.push(name.to_string());
            i += 1;
            continue;
        }
        let Some(value) = args.get(i + 1) else {
            return Err(usage(format!("flag --{name} needs a value")));
        };
        if values.insert(name.to_string(), value.clone()).is_some() {
            return Err(usage(format!("duplicate flag --{name}")));
        }
        i += 2;
    }
    Ok(Flags { values, switches })
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))
}

fn write_output(flags: &Flags, name: &str, content: &str) -> Result<(), CliError> {
    match flags.get(name) {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| usage(format!("cannot write {path}: {e}"))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn dispatch(args: &[String]) -> Result<(), CliError> {
    let Some(command) = args.first() else {
        return Err(usage("no command given"));
    };
    match command.as_str() {
        "gen" => cmd_gen(args.get(1).map(String::as_str), &parse_flags(&args[2.min(args.len())..])?),
        "color" => cmd_color(&parse_flags(&args[1..])?),
        "verify" => cmd_verify(&parse_flags(&args[1..])?),
        "oracle" => cmd_oracle(&parse_flags(&args[1..])?),
        "decompose" => cmd_decompose(&parse_flags(&args[1..])?),
        "render" => cmd_render(&parse_flags(&args[1..])?),
        other => Err(usage(format!("unknown command '{other}'"))),
    }
}

fn cmd_gen(which: Option<&str>, flags: &Flags) -> Result<(), CliError> {
    let seed: u64 = flags.parse_or("seed", 0)?;
    let content = match which {
        Some("bc") => {
            let k: u32 = flags.parse_required("k")?;
            let (_, instance) = gen_bc(k)?;
            serialize_instance(&instance)
        }
        Some("interval2delta") => {
            let n: usize = flags.parse_required("n")?;
            let intervals = gen_random_intervals(n, seed)?;
            let rep = gen_interval_to_delta(&intervals)?;
            serialize_instance(rep.instance())
        }
        Some("gadget") => {
            let spec = match flags.require("variant")? {
                "ladder" => GadgetSpec::Ladder {
                    k: flags.parse_required("k")?,
                },
                "forbidding" => GadgetSpec::Forbidding {
                    k: flags.parse_required("k")?,
                },
                "clause" => GadgetSpec::Clause,
                "matched-cliques" => GadgetSpec::MatchedCliques {
                    n: flags.parse_required("n")?,
                },
                "k444" => GadgetSpec::K444,
                "c5" => GadgetSpec::C5,
                "c4" => GadgetSpec::C4,
                other => return Err(usage(format!("unknown gadget variant '{other}'"))),
            };
            serialize_graph(&gen_gadget(spec)?)
        }
        Some("random-unit") => {
            let n: usize = flags.parse_required("n")?;
            let width: f64 = flags.parse_or("width", 10.0)?;
            serialize_instance(&gen_random_unit(n, width, seed)?)
        }
        Some("random-delta") => {
            let n: usize = flags.parse_required("n")?;
            let d_lo: f64 = flags.parse_or("dmin", 1.0)?;
            let d_hi: f64 = flags.parse_or("dmax", 1000.0)?;
            let rep = gen_random_delta(n, d_lo, d_hi, seed)?;
            serialize_instance(rep.instance())
        }
        Some("random-disk") => {
            let n: usize = flags.parse_required("n")?;
            let r_lo: f64 = flags.parse_or("rmin", 0.2)?;
            let r_hi: f64 = flags.parse_or("rmax", 3.0)?;
            let width: f64 = flags.parse_or("width", 10.0)?;
            serialize_instance(&gen_random_disks(n, r_lo, r_hi, width, seed)?)
        }
        Some(other) => return Err(usage(format!("unknown generator '{other}'"))),
        None => return Err(usage("gen needs a generator name")),
    };
    write_output(flags, "out", &content)
}

fn require_disks(input: &LoadedInput, algo: &str) -> Result<DiskInstance, CliError> {
    match input {
        LoadedInput::Disks(inst) => Ok(inst.clone()),
        LoadedInput::Graph(_) => Err(usage(format!(
            "algorithm {algo} needs a disk instance, got an abstract graph"
        ))),
    }
}

fn require_unit(input: &LoadedInput, algo: &str) -> Result<DiskInstance, CliError> {
    let inst = require_disks(input, algo)?;
    if inst.kind() != Kind::Unit {
        return Err(usage(format!(
            "algorithm {algo} needs a unit instance, got kind {}",
            inst.kind()
        )));
    }
    Ok(inst)
}

fn require_delta(input: &LoadedInput, algo: &str) -> Result<DeltaRepresentation, CliError> {
    let inst = require_disks(input, algo)?;
    if inst.kind() != Kind::Delta {
        return Err(usage(format!(
            "algorithm {algo} needs a delta instance, got kind {}",
            inst.kind()
        )));
    }
    DeltaRepresentation::new(inst).map_err(failure)
}

fn cmd_color(flags: &Flags) -> Result<(), CliError> {
    let algo = flags.require("algo")?.to_string();
    let input = parse_input(&read_file(flags.require("in")?)?)?;
    let started = Instant::now();
    let (coloring, lower_bound): (Coloring, Option<u32>) = match algo.as_str() {
        "isbell7" => {
            let inst = require_unit(&input, &algo)?;
            (color_unit7(&inst).map_err(failure)?, None)
        }
        "unit3approx" => {
            let inst = require_unit(&input, &algo)?;
            let res = approx3_unit(&inst).map_err(failure)?;
            (res.coloring, Some(res.lower_bound))
        }
        "delta-log" => {
            let rep = require_delta(&input, &algo)?;
            (delta_color_log(&rep).map_err(failure)?, None)
        }
        "delta-approx" => {
            let rep = require_delta(&input, &algo)?;
            let res = delta_color_approx(&rep).map_err(failure)?;
            (res.coloring, Some(res.lower_bound))
        }
        "disk-log3" => {
            let inst = require_disks(&input, &algo)?;
            (color_disk_log3(&inst).map_err(failure)?, None)
        }
        "disk-approx" => {
            let inst = require_disks(&input, &algo)?;
            let res = color_disk_approx(&inst).map_err(failure)?;
            (res.coloring, Some(res.lower_bound))
        }
        "exact" => {
            let g = input.graph();
            let opts = SolverOptions {
                max_vertices: Some(flags.parse_or("limit", 20usize)?),
                node_budget: None,
            };
            let (k, witness) = exact_subchromatic(&g, opts).map_err(failure)?;
            (witness.canonicalize(), Some(k))
        }
        other => return Err(usage(format!("unknown algorithm '{other}'"))),
    };
    let wall = started.elapsed();

    let g = input.graph();
    let valid = validate_subcoloring(&g, &coloring)
        .map_err(failure)?
        .is_none();
    let report = RunReport {
        algorithm: algo,
        kind: input.kind(),
        n: g.n(),
        m: g.m(),
        colors: coloring.num_colors(),
        lower_bound,
        valid,
    };
    if let Some(path) = flags.get("out") {
        std::fs::write(path, serialize_coloring(&coloring))
            .map_err(|e| usage(format!("cannot write {path}: {e}")))?;
    }
    write_output(flags, "report", &report.to_text())?;
    eprintln!("wall_ms {}", wall.as_millis());
    if !valid {
        return Err(failure("output failed subcoloring validation"));
    }
    Ok(())
}

fn cmd_verify(flags: &Flags) -> Result<(), CliError> {
    let input = parse_input(&read_file(flags.require("in")?)?)?;
    let g = input.graph();
    let coloring = parse_coloring(&read_file(flags.require("coloring")?)?, g.n())?;
    match validate_subcoloring(&g, &coloring).map_err(failure)? {
        None => {
            println!("verdict valid");
            Ok(())
        }
        Some(witness) => {
            println!(
                "monochromatic-p3 {} {} {}",
                witness.ends.0, witness.mid, witness.ends.1
            );
            println!("verdict invalid");
            Err(failure("coloring is not a subcoloring"))
        }
    }
}

fn cmd_oracle(flags: &Flags) -> Result<(), CliError> {
    let input = parse_input(&read_file(flags.require("in")?)?)?;
    let g = input.graph();
    let opts = SolverOptions {
        max_vertices: Some(flags.parse_or("limit", 20usize)?),
        node_budget: None,
    };
    let (k, _) = exact_subchromatic(&g, opts).map_err(failure)?;
    println!("{k}");
    Ok(())
}

fn cmd_decompose(flags: &Flags) -> Result<(), CliError> {
    let input = parse_input(&read_file(flags.require("in")?)?)?;
    match (flags.has_switch("tree"), flags.has_switch("delta")) {
        (true, false) => {
            let inst = require_disks(&input, "decompose --tree")?;
            let tree = decompose(&inst).map_err(failure)?;
            verify_tree(&tree, &inst).map_err(failure)?;
            print!("{}", tree.to_text());
            Ok(())
        }
        (false, true) => {
            let rep = require_delta(&input, "decompose --delta")?;
            let parts = delta_separator(&rep).map_err(failure)?;
            let mut out = String::new();
            let _ = writeln!(out, "alpha {}", parts.alpha);
            let _ = writeln!(out, "x ({}, {})", parts.x.x, parts.x.y);
            let _ = writeln!(out, "x-prime ({}, {})", parts.x_prime.x, parts.x_prime.y);
            for (name, part) in [
                ("v1", &parts.v1),
                ("v2", &parts.v2),
                ("v3", &parts.v3),
                ("v4", &parts.v4),
            ] {
                let ids: Vec<String> = part.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{name} [{}]", ids.join(","));
            }
            print!("{out}");
            Ok(())
        }
        _ => Err(usage("decompose needs exactly one of --tree or --delta")),
    }
}

fn cmd_render(flags: &Flags) -> Result<(), CliError> {
    let input = parse_input(&read_file(flags.require("in")?)?)?;
    let inst = require_disks(&input, "render")?;
    let coloring = match flags.get("coloring") {
        Some(path) => Some(parse_coloring(&read_file(path)?, inst.len())?),
        None => None,
    };
    let svg = render_svg(&inst, coloring.as_ref());
    let path = flags.require("out")?;
    std::fs::write(path, svg).map_err(|e| usage(format!("cannot write {path}: {e}")))
}
