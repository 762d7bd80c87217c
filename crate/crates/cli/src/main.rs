use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use zcolor::canon::{enumerate_representatives, normal_form_word, representative};
use zcolor::decide::{closable_classical, closable_virtual_loops, closable_virtual_no_loops, equivalent};
use zcolor::invariants::{delta, gcd_diff, profile, render, residues_ordered, two_part};
use zcolor::witness::{certify, orbit, verify, Certificate, Limits, SearchOutcome};
use zcolor::{ColorVector, MoveWord, Relation};
use zcolor_spatial::coloring::{essential_part, observed_d_tuples};
use zcolor_spatial::{
    coloring_basis, observed_d_star, parse_diagram, theta4_build, theta4_dstar, vertex_vector, DStarSet,
};

#[derive(Parser)]
#[command(name = "zcolor", version, about = "Z-coloring equivalence of integer vectors and spatial graph invariants")]
struct Cli {
    /// Emit JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Alternating sum, gcd data and residues of a vector.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        v: ColorVector,
    },
    /// Decide whether two vectors are related.
    Decide {
        #[arg(long)]
        relation: Relation,
        #[arg(allow_hyphen_values = true)]
        v: ColorVector,
        #[arg(allow_hyphen_values = true)]
        w: ColorVector,
    },
    /// Canonical representative; for braid also the word reaching it.
    NormalForm {
        #[arg(long)]
        relation: Relation,
        #[arg(allow_hyphen_values = true)]
        v: ColorVector,
    },
    /// All representatives with coordinates in [-B, B].
    Reps {
        #[arg(long)]
        relation: Relation,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        bound: i64,
    },
    /// A move word carrying v to w.
    Witness {
        #[arg(long)]
        relation: Relation,
        #[arg(long, default_value_t = 16)]
        depth: usize,
        #[arg(long, default_value_t = 32)]
        bound: i64,
        #[arg(allow_hyphen_values = true)]
        v: ColorVector,
        #[arg(allow_hyphen_values = true)]
        w: ColorVector,
    },
    /// Replay a word; `--word -` reads a word or a certificate from stdin.
    Verify {
        #[arg(long)]
        relation: Relation,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(allow_hyphen_values = true)]
        v: ColorVector,
        #[arg(allow_hyphen_values = true)]
        w: ColorVector,
    },
    /// Vectors reachable within the search limits.
    Orbit {
        #[arg(long)]
        relation: Relation,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        bound: i64,
        #[arg(allow_hyphen_values = true)]
        v: ColorVector,
    },
    /// Whether v colors the endpoints of some (virtual) tangle.
    Closable {
        #[arg(long = "virtual")]
        virtual_: bool,
        #[arg(long, requires = "virtual_")]
        loops: bool,
        #[arg(allow_hyphen_values = true)]
        v: ColorVector,
    },
    /// Closed-form d* of the theta_4-curve D_{m,n}.
    Theta4 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Also sample the built diagram at this coefficient bound.
        #[arg(long)]
        observe: Option<u32>,
    },
    /// Diagram operations.
    Diagram {
        #[command(subcommand)]
        action: DiagramAction,
    },
}

#[derive(Subcommand)]
enum DiagramAction {
    /// Coloring basis and vertex vectors of a diagram file.
    Solve {
        file: String,
        /// Also report observed vertex gcd tuples of essential colorings.
        #[arg(long)]
        dstar: bool,
        #[arg(long, default_value_t = 10)]
        samples: u32,
    },
}

struct Output {
    text: String,
    json: Value,
    success: bool,
}

fn out(text: impl Into<String>, json: Value, success: bool) -> Output {
    Output { text: text.into(), json, success }
}

type Run = Result<Output, String>;

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn invariants(v: &ColorVector) -> Run {
    let (dl, d, d2) = (delta(v).map_err(e)?, gcd_diff(v).map_err(e)?, two_part(v).map_err(e)?);
    let show = |n: i64| format!("{{{}}}", render(&residues_ordered(v, n).residues));
    let text = format!("Δ={dl} d={d} d2={d2} M2={} M2d={} M2d2={}", show(2), show(2 * d), show(2 * d2));
    let mut profiles = serde_json::Map::new();
    for r in Relation::ALL {
        profiles.insert(r.to_string(), serde_json::to_value(profile(v, r).map_err(e)?).map_err(e)?);
    }
    let json = json!({
        "vector": v.entries(), "delta": dl, "d": d, "d2": d2,
        "residues": {"mod_2": residues_ordered(v, 2).residues, "mod_2d": residues_ordered(v, 2 * d).residues,
                     "mod_2d2": residues_ordered(v, 2 * d2).residues},
        "profiles": profiles,
    });
    Ok(out(text, json, true))
}

fn decide(r: Relation, v: &ColorVector, w: &ColorVector) -> Run {
    let eq = equivalent(v, w, r).map_err(e)?;
    let (pv, pw) = (profile(v, r).map_err(e)?, profile(w, r).map_err(e)?);
    let text = format!("{}\n  {v}  {pv}\n  {w}  {pw}", if eq { "equivalent" } else { "not equivalent" });
    let json = json!({"relation": r, "v": v.entries(), "w": w.entries(), "equivalent": eq,
                      "profile_v": pv, "profile_w": pw});
    Ok(out(text, json, eq))
}

fn normal_form(r: Relation, v: &ColorVector) -> Run {
    let rep = representative(v, r).map_err(e)?;
    let mut text = render(&rep);
    let mut json = json!({"relation": r, "input": v.entries(), "representative": rep});
    if r == Relation::Braid {
        let (_, word) = normal_form_word(v).map_err(e)?;
        text.push_str(&format!("\nword {word}"));
        json["word"] = json!(word.to_string());
    }
    Ok(out(text, json, true))
}

fn reps(r: Relation, m: usize, bound: i64) -> Run {
    let all: Vec<Vec<i64>> = enumerate_representatives(r, m, bound).map_err(e)?.collect();
    let text = all.iter().map(|v| render(v)).collect::<Vec<_>>().join("\n");
    Ok(out(text, json!({"relation": r, "m": m, "bound": bound, "representatives": all}), true))
}

fn certificate_json(c: &Certificate) -> Value {
    json!({"relation": c.relation, "start": c.start, "end": c.end, "word": c.word.to_string()})
}

fn witness(r: Relation, limits: Limits, v: &ColorVector, w: &ColorVector) -> Run {
    Ok(match certify(v, w, r, limits).map_err(e)? {
        SearchOutcome::Found(c) => {
            let j = json!({"outcome": "found", "certificate": certificate_json(&c)});
            out(c.to_string(), j, true)
        }
        SearchOutcome::NotEquivalent => out("not equivalent", json!({"outcome": "not_equivalent"}), false),
        SearchOutcome::Exhausted { depth, bound } => out(
            format!("not found within depth {depth} and bound {bound}"),
            json!({"outcome": "exhausted", "depth": depth, "bound": bound}),
            false,
        ),
    })
}

fn read_word(arg: &str) -> Result<MoveWord, String> {
    if arg != "-" {
        return arg.parse().map_err(e);
    }
    let mut text = String::new();
    std::io::stdin().read_to_string(&mut text).map_err(e)?;
    if text.lines().any(|l| l.trim_start().starts_with("word")) {
        Ok(Certificate::parse(&text).map_err(e)?.word)
    } else {
        text.trim().parse().map_err(e)
    }
}

fn verify_cmd(r: Relation, word: &str, v: &ColorVector, w: &ColorVector) -> Run {
    let c = Certificate { relation: r, word: read_word(word)?, start: v.to_vec(), end: w.to_vec() };
    Ok(match verify(&c) {
        Ok(()) => out("valid", json!({"valid": true}), true),
        Err(f) => out(
            format!("invalid: {f}"),
            json!({"valid": false, "index": f.index.map(|i| i + 1), "reason": f.reason}),
            false,
        ),
    })
}

fn orbit_cmd(r: Relation, depth: usize, bound: i64, v: &ColorVector) -> Run {
    let o = orbit(v, r, Limits::new(depth, bound)).map_err(e)?;
    let text = o.iter().map(|u| render(u)).collect::<Vec<_>>().join("\n");
    let list: Vec<&Vec<i64>> = o.iter().collect();
    Ok(out(text, json!({"relation": r, "depth": depth, "bound": bound, "vectors": list}), true))
}

fn closable(virtual_: bool, loops: bool, v: &ColorVector) -> Run {
    let (mode, ok) = match (virtual_, loops) {
        (false, _) => ("classical", closable_classical(v)),
        (true, false) => ("virtual", closable_virtual_no_loops(v)),
        (true, true) => ("virtual-loops", closable_virtual_loops(v)),
    };
    let ok = ok.map_err(e)?;
    let text = if ok { "closable" } else { "not closable" };
    Ok(out(text, json!({"vector": v.entries(), "mode": mode, "closable": ok}), ok))
}

fn dstar_json(s: &DStarSet) -> Value {
    json!(s.pairs.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>())
}

fn theta4(m: u32, n: u32, observe: Option<u32>) -> Run {
    let closed = theta4_dstar(m, n).map_err(e)?;
    let mut text = format!("d* = {closed}");
    let mut json = json!({"m": m, "n": n, "dstar": dstar_json(&closed)});
    let mut success = true;
    if let Some(b) = observe {
        let seen = observed_d_star(&theta4_build(m, n).map_err(e)?, b).map_err(e)?;
        let agree = seen.pairs == closed.pairs;
        text.push_str(&format!("\nobserved = {seen}\n{}", if agree { "agree" } else { "disagree" }));
        json["observed"] = json!({"bound": b, "dstar": dstar_json(&seen), "agree": agree});
        success = agree;
    }
    Ok(out(text, json, success))
}

fn diagram_solve(file: &str, dstar: bool, samples: u32) -> Run {
    let text = std::fs::read_to_string(file).map_err(|x| format!("{file}: {x}"))?;
    let d = parse_diagram(&text).map_err(|x| format!("{file}: {x}"))?;
    let basis = coloring_basis(&d).map_err(e)?;
    let mut lines = vec![format!("rank {}", basis.rank)];
    let mut gens = vec![];
    for (i, g) in basis.generators.iter().enumerate() {
        let mut vv = serde_json::Map::new();
        let mut shown = vec![];
        for v in &d.vertices {
            let vec = vertex_vector(&d, g, &v.id).map_err(e)?;
            shown.push(format!("{}=({vec})", v.id));
            vv.insert(v.id.clone(), json!(vec.entries()));
        }
        let essential = essential_part(g).as_ref() == Some(g);
        lines.push(format!("generator {}{}: {}", i + 1, if essential { " essential" } else { "" }, shown.join(" ")));
        gens.push(json!({"coloring": g.to_json(&d).map_err(e)?, "vertex_vectors": vv, "essential": essential}));
    }
    let mut json = json!({"rank": basis.rank, "generators": gens});
    if dstar {
        if d.vertices.len() == 2 {
            let s = observed_d_star(&d, samples).map_err(e)?;
            lines.push(format!("d* {s}"));
            json["dstar"] = json!({"bound": samples, "pairs": dstar_json(&s)});
        } else {
            let t = observed_d_tuples(&d, samples).map_err(e)?;
            let items: Vec<String> = t
                .iter()
                .map(|x| format!("({})", x.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            lines.push(format!("d* {{{}}} observed at bound {samples}", items.join(",")));
            let as_strings: Vec<Vec<String>> = t.iter().map(|x| x.iter().map(|a| a.to_string()).collect()).collect();
            json["dstar"] = json!({"bound": samples, "tuples": as_strings});
        }
    }
    Ok(out(lines.join("\n"), json, true))
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Invariants { v } => invariants(v),
        Command::Decide { relation, v, w } => decide(*relation, v, w),
        Command::NormalForm { relation, v } => normal_form(*relation, v),
        Command::Reps { relation, m, bound } => reps(*relation, *m, *bound),
        Command::Witness { relation, depth, bound, v, w } => witness(*relation, Limits::new(*depth, *bound), v, w),
        Command::Verify { relation, word, v, w } => verify_cmd(*relation, word, v, w),
        Command::Orbit { relation, depth, bound, v } => orbit_cmd(*relation, *depth, *bound, v),
        Command::Closable { virtual_, loops, v } => closable(*virtual_, *loops, v),
        Command::Theta4 { m, n, observe } => theta4(*m, *n, *observe),
        Command::Diagram { action: DiagramAction::Solve { file, dstar, samples } } => {
            diagram_solve(file, *dstar, *samples)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if cli.json {
                println!("{}", o.json);
            } else if !o.text.is_empty() {
                println!("{}", o.text);
            }
            ExitCode::from(if o.success { 0 } else { 1 })
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
