//! Command-line front end. [`run`] is the whole program minus process plumbing,
//! so tests can drive it with in-memory buffers.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use flipiet::blowup::eval_blowup;
use flipiet::constructions::{
    arbsmall, comrot, decompose_partial_rotations, exchange, flip_on, global_flip, is_triple_flip,
    make_132_flip, make_triple_flip, partial_rotation, rotation, t_stabr_gadget,
};
use flipiet::io::{
    parse_document, parse_lift, parse_map, parse_sided_point, parse_value, plot_svg,
    serialize_lift, serialize_map, Bindings, Document, Panel, Value,
};
use flipiet::lifts::{
    continuity_profile, enumerate_hyperclean_lifts_bounded, lift_compose, lift_order, word_support,
    DEFAULT_ORDER_BOUND, DEFAULT_SING_BOUND,
};
use flipiet::verify::{run_suite, SUITES};
use flipiet::{Error, FieldSpec, Interval, MapClass, Scalar};

#[derive(Parser, Debug)]
#[command(
    name = "flipiet",
    version,
    about = "Exact interval exchanges with flips on the circle"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Radicand of the coordinate field Q(sqrt m); 0 for the rationals.
    #[arg(long, global = true, default_value_t = 2)]
    field: u32,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bound on lift orders.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    bound: u64,
    /// Document whose bindings may be used by name.
    #[arg(long, global = true)]
    doc: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Composition A∘B∘…, applying the last map first.
    Compose {
        #[arg(required = true, num_args = 2.., allow_hyphen_values = true)]
        maps: Vec<String>,
    },
    Invert {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Canonical form.
    Canon {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Singular points.
    Sing {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Essential support and its diameter.
    Essupp {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Minimal distance between singular points.
    Egap {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Keane normal form.
    Keane {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Hyper-clean lifts with continuity profiles and orders.
    Lifts {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// Finitely supported permutation left by a relator word.
    Word {
        #[arg(allow_hyphen_values = true)]
        gens: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Run a named verification suite, or `all`.
    Verify {
        #[arg(allow_hyphen_values = true)]
        suite: String,
    },
    /// Graphs of one or more maps as SVG.
    Plot {
        #[arg(required = true)]
        maps: Vec<String>,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Action on a sided point `x^+` or `x^-`.
    Blow {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    Rot {
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    Xchg {
        #[arg(allow_hyphen_values = true)]
        lo1: String,
        #[arg(allow_hyphen_values = true)]
        hi1: String,
        #[arg(allow_hyphen_values = true)]
        lo2: String,
        #[arg(allow_hyphen_values = true)]
        hi2: String,
    },
    Prot {
        #[arg(allow_hyphen_values = true)]
        lo: String,
        #[arg(allow_hyphen_values = true)]
        hi: String,
        #[arg(allow_hyphen_values = true)]
        theta: String,
    },
    Flip,
    #[command(name = "flip-on")]
    FlipOn {
        #[arg(allow_hyphen_values = true)]
        lo: String,
        #[arg(allow_hyphen_values = true)]
        hi: String,
    },
    F132 {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    F3 {
        #[arg(allow_hyphen_values = true)]
        l1: String,
        #[arg(allow_hyphen_values = true)]
        l2: String,
        #[arg(allow_hyphen_values = true)]
        l3: String,
    },
    /// Commutator with a small rotation.
    Comrot {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    Arbsmall {
        #[arg(allow_hyphen_values = true)]
        rho: String,
        #[arg(allow_hyphen_values = true)]
        eps: String,
        #[arg(allow_hyphen_values = true)]
        eta: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        lambda_prime: String,
    },
    /// Factorization into partial rotations.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        map: String,
    },
    /// The generators u, v, w, s.
    Gadget {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

/// Failure of a command: a library error or a file problem.
enum Failure {
    Lib(Error),
    Io(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out<'a> = &'a mut dyn Write;

struct Ctx {
    field: FieldSpec,
    bound: u64,
    seed: u64,
    env: Bindings,
}

impl Ctx {
    fn value(&self, arg: &str) -> Result<Value, Failure> {
        if let Some(path) = arg.strip_prefix('@') {
            let text = read(path)?;
            let has_table = text.lines().any(|l| l.trim_start().starts_with('@'));
            return Ok(if has_table {
                Value::Lift(parse_lift(&text, self.field)?)
            } else {
                Value::Map(parse_map(&text, self.field)?)
            });
        }
        Ok(parse_value(arg, self.field, &self.env)?)
    }

    fn map(&self, arg: &str) -> Result<MapClass, Failure> {
        Ok(self.value(arg)?.class().clone())
    }

    fn scalar(&self, arg: &str) -> Result<Scalar, Failure> {
        Ok(flipiet::io::parse_scalar(arg, self.field)?)
    }

    fn point(&self, arg: &str) -> Result<flipiet::CirclePoint, Failure> {
        Ok(flipiet::CirclePoint::new(self.scalar(arg)?))
    }

    fn interval(&self, lo: &str, hi: &str) -> Result<Interval, Failure> {
        let (lo, hi) = (self.scalar(lo)?, self.scalar(hi)?);
        if &hi - &lo == Scalar::one() {
            return Ok(Interval::full());
        }
        Ok(Interval::new(lo.into(), hi.into())?)
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Runs the program on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "error:syntax: {first}");
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error:{}: {e}", e.kind());
            if e.is_syntax() {
                2
            } else {
                1
            }
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error:io: {m}");
            1
        }
        Err(Failure::Verify(m)) => {
            let _ = writeln!(err, "error:verify-failed: {m}");
            1
        }
    }
}

fn execute(cli: Cli, out: Out) -> Result<(), Failure> {
    let mut field = FieldSpec::new(cli.opts.field)?;
    let mut env = Bindings::new();
    if let Some(path) = &cli.opts.doc {
        let doc: Document = parse_document(&read(&path.to_string_lossy())?, field)?;
        field = doc.field;
        env = doc.bindings;
    }
    let ctx = Ctx {
        field,
        bound: cli.opts.bound,
        seed: cli.opts.seed,
        env,
    };
    let w = |out: Out, s: String| writeln!(out, "{s}").map_err(|e| Failure::Io(e.to_string()));
    match cli.cmd {
        Cmd::Compose { maps } => {
            let mut acc = MapClass::identity();
            for m in &maps {
                acc = acc.compose(&ctx.map(m)?);
            }
            w(out, serialize_map(&acc))
        }
        Cmd::Invert { map } => w(out, serialize_map(&ctx.map(&map)?.invert())),
        Cmd::Canon { map } => match ctx.value(&map)? {
            Value::Map(m) => w(out, serialize_map(&m)),
            Value::Lift(l) => w(out, serialize_lift(&l)),
        },
        Cmd::Sing { map } => {
            let s: Vec<String> = ctx
                .map(&map)?
                .singularities()
                .iter()
                .map(ToString::to_string)
                .collect();
            w(out, s.join(" "))
        }
        Cmd::Essupp { map } => {
            let f = ctx.map(&map)?;
            let s = f.essential_support();
            w(out, format!("{s}\ndiameter: {}", s.diameter()))
        }
        Cmd::Egap { map } => w(out, ctx.map(&map)?.min_sing_gap().to_string()),
        Cmd::Keane { map } => w(out, flipiet::maps::keane_form(&ctx.map(&map)?).to_string()),
        Cmd::Lifts { map } => lifts(&ctx, &map, out),
        Cmd::Word { gens, word } => {
            let mut named = Vec::new();
            for item in split_top_level(&gens) {
                let (name, expr) = match item.split_once('=') {
                    Some((n, e)) => (n.trim().to_string(), e.trim().to_string()),
                    None => (item.trim().to_string(), item.trim().to_string()),
                };
                named.push((name, ctx.value(&expr)?.to_lift()?));
            }
            let p = word_support(&named, &word)?;
            w(out, p.to_string())
        }
        Cmd::Verify { suite } => verify(&ctx, &suite, out),
        Cmd::Plot { maps, svg } => {
            let mut panels = Vec::new();
            for m in &maps {
                panels.push(match ctx.value(m)? {
                    Value::Map(f) => Panel::new(m.clone(), f),
                    Value::Lift(l) => Panel::with_lift(m.clone(), l),
                });
            }
            write_file(&svg, &plot_svg(&panels)?)?;
            w(
                out,
                format!("wrote {} panel(s) to {}", panels.len(), svg.display()),
            )
        }
        Cmd::Blow { map, point } => {
            let f = ctx.map(&map)?;
            let p = parse_sided_point(&point, ctx.field)?;
            w(out, eval_blowup(&f, &p).to_string())
        }
        Cmd::Rot { t } => w(out, serialize_map(&rotation(ctx.point(&t)?))),
        Cmd::Xchg { lo1, hi1, lo2, hi2 } => {
            let f = exchange(&ctx.interval(&lo1, &hi1)?, &ctx.interval(&lo2, &hi2)?)?;
            w(out, serialize_map(&f))
        }
        Cmd::Prot { lo, hi, theta } => {
            let f = partial_rotation(&ctx.interval(&lo, &hi)?, &ctx.scalar(&theta)?);
            w(out, serialize_map(&f))
        }
        Cmd::Flip => w(out, serialize_map(&global_flip())),
        Cmd::FlipOn { lo, hi } => w(out, serialize_map(&flip_on(&ctx.interval(&lo, &hi)?))),
        Cmd::F132 { a, b } => w(
            out,
            serialize_map(&make_132_flip(&ctx.point(&a)?, &ctx.point(&b)?)?),
        ),
        Cmd::F3 { l1, l2, l3 } => {
            let f = make_triple_flip(&ctx.scalar(&l1)?, &ctx.scalar(&l2)?, &ctx.scalar(&l3)?)?;
            w(out, serialize_map(&f))
        }
        Cmd::Comrot { map, t } => {
            let rep = comrot(&ctx.map(&map)?, &ctx.point(&t)?)?;
            let blocks: Vec<String> = rep.blocks.iter().map(|b| format!("{b:?}")).collect();
            let perm: Vec<String> = rep.block_perm.iter().map(|j| (j + 1).to_string()).collect();
            w(
                out,
                format!(
                    "c = {}\nblocks: {}\nblock permutation: ({})\nfixed-free: {}",
                    serialize_map(&rep.c),
                    blocks.join(" "),
                    perm.join(" "),
                    rep.fixed_free
                ),
            )
        }
        Cmd::Arbsmall {
            rho,
            eps,
            eta,
            lambda,
            lambda_prime,
        } => {
            let g = arbsmall(
                &ctx.point(&rho)?,
                &ctx.scalar(&eps)?,
                &ctx.scalar(&eta)?,
                &ctx.point(&lambda)?,
                &ctx.point(&lambda_prime)?,
            )?;
            let s = g.essential_support();
            w(
                out,
                format!(
                    "{}\nsupport: {s}\ndiameter: {}",
                    serialize_map(&g),
                    s.diameter()
                ),
            )
        }
        Cmd::Decompose { map } => {
            let fs = decompose_partial_rotations(&ctx.map(&map)?)?;
            let lines: Vec<String> = fs.iter().map(serialize_map).collect();
            w(out, lines.join("\n"))
        }
        Cmd::Gadget { a, theta, svg } => {
            let (u, v, wm, s) = t_stabr_gadget(&ctx.point(&a)?, &ctx.point(&theta)?)?;
            let suv = s.compose(&u).compose(&v);
            if let Some(path) = &svg {
                let panels = [("u", &u), ("v", &v), ("w", &wm), ("s", &s)]
                    .into_iter()
                    .map(|(n, f)| Panel::new(n, f.clone()))
                    .collect::<Vec<_>>();
                write_file(path, &plot_svg(&panels)?)?;
            }
            w(
                out,
                format!(
                    "field {}\nu = {}\nv = {}\nw = {}\ns = {}\nsuv = {}\n# suv is a triple flip: {}",
                    ctx.field.m(),
                    serialize_map(&u),
                    serialize_map(&v),
                    serialize_map(&wm),
                    serialize_map(&s),
                    serialize_map(&suv),
                    is_triple_flip(&suv)
                ),
            )
        }
    }
}

fn lifts(ctx: &Ctx, map: &str, out: Out) -> Result<(), Failure> {
    let f = ctx.map(map)?;
    let ls = enumerate_hyperclean_lifts_bounded(&f, DEFAULT_SING_BOUND)?;
    let orders: Vec<Option<u64>> = ls.iter().map(|l| lift_order(l, ctx.bound)).collect();
    let fmt_order = |o: &Option<u64>| o.map_or("unknown".to_string(), |n| n.to_string());
    let squares: Vec<String> = ls
        .iter()
        .enumerate()
        .filter(|(_, l)| lift_compose(l, l).is_identity())
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    let mut text = format!(
        "{} hyper-clean lifts; orders: {}; squares-to-identity: {}",
        ls.len(),
        orders.iter().map(fmt_order).collect::<Vec<_>>().join(", "),
        if squares.is_empty() {
            "none".to_string()
        } else {
            squares.join(", ")
        }
    );
    for (i, l) in ls.iter().enumerate() {
        let prof = continuity_profile(l);
        text.push_str(&format!(
            "\nlift {}: {}, order {}",
            i + 1,
            prof.overall,
            fmt_order(&orders[i])
        ));
        for (x, tag) in &prof.points {
            text.push_str(&format!("\n  {x} -> {} ({tag})", l.eval(x)));
        }
    }
    writeln!(out, "{text}").map_err(|e| Failure::Io(e.to_string()))
}

fn verify(ctx: &Ctx, suite: &str, out: Out) -> Result<(), Failure> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let mut failed = Vec::new();
    for name in names {
        let Some(rep) = run_suite(name, ctx.seed) else {
            return Err(Failure::Lib(Error::BadParameters(format!(
                "unknown suite '{name}'; known: all, {}",
                SUITES.join(", ")
            ))));
        };
        writeln!(out, "{rep}").map_err(|e| Failure::Io(e.to_string()))?;
        if !rep.ok() {
            failed.push(name.to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(failed.join(", ")))
    }
}

/// Splits at commas outside brackets and parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        parts.push(cur);
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::split_top_level;

    #[test]
    fn splitting_generators() {
        assert_eq!(split_top_level("a=rot(1/3),b"), vec!["a=rot(1/3)", "b"]);
        assert_eq!(
            split_top_level("q=hc(f132(1/3,2/3),0),x=[0,1/2) -> +x+1/2 ; [1/2,1) -> +x-1/2"),
            vec![
                "q=hc(f132(1/3,2/3),0)",
                "x=[0,1/2) -> +x+1/2 ; [1/2,1) -> +x-1/2"
            ]
        );
    }
}
