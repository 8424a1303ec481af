//! The `swd` command line: manifold files in, deterministic JSON out.
//!
//! Exit codes: 0 success, 1 malformed input or failed verification,
//! 2 a violated precondition (named on stderr).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::{
    cobordism_blown_terms, cobordism_invariant_blown, compare_evaluators, main_theorem_check,
    witten_invariant, CoeffTable, InvariantQuery,
};
use crate::lattice::{Class, HClass};
use crate::manifold::{example_xqn, FourManifold};
use crate::rational::{format_rational, parse_rational_list};
use crate::verify::{self, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "swd", about = "Exact Donaldson and Seiberg-Witten invariant formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate D^w_X(h^{δ−2m} x^m) by Witten's formula, the cobordism formula, or both.
    Compute {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, value_enum, default_value_t = Mode::Witten)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit the blow-up X # CP²-bar of a manifold.
    Blowup {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Decide superconformal simple type for a characteristic w.
    CheckScst {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        w: String,
    },
    /// Emit the model manifold X_q(n).
    Examples {
        #[arg(long)]
        q: i64,
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
    /// Run a named verification suite, or "all".
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 5)]
        seeds: usize,
    },
    /// Gate every hypothesis of the main theorem and compare the evaluators
    /// over several seeds, with the per-term breakdown of the first.
    Report {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        seeds: usize,
    },
}

#[derive(clap::Args, Debug)]
struct QueryArgs {
    #[arg(long)]
    manifest: PathBuf,
    /// Class spec: an integer array "[1,0,...]" or an expression in named classes.
    #[arg(long)]
    w: String,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    delta: u32,
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Rational coordinates "r1,...,rn".
    #[arg(long, allow_hyphen_values = true)]
    h: String,
    #[arg(long, default_value_t = 60)]
    max_delta: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Witten,
    Cobordism,
    Both,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_precondition() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Compute { query, mode, seed } => {
            let (x, q, lam) = load_query(&query)?;
            let v = compute(&x, &q, lam.as_ref(), mode, seed)?;
            emit(out, &v)?;
        }
        Command::Blowup { manifest } => {
            let x = load_manifest(&manifest)?;
            emit(out, &x.blow_up()?)?;
        }
        Command::CheckScst { manifest, w } => {
            let x = load_manifest(&manifest)?;
            let w = parse_class(&x, &w)?;
            let scst = x.is_scst(&w)?;
            emit(out, &json!({ "c": x.c(), "w": w, "scst": scst }))?;
        }
        Command::Examples { q, n } => emit(out, &example_xqn(q, n)?)?,
        Command::Verify { suite, seed, trials, seeds } => {
            let cfg = VerifyConfig { seed, trials, seeds };
            let reports = verify::run(&suite, &cfg)?;
            let mut ok = true;
            for r in &reports {
                write!(out, "{r}").map_err(io_err)?;
                let _ = writeln!(err, "{}: {:.2?}", r.suite, r.elapsed);
                ok &= r.passed();
            }
            return Ok(if ok { 0 } else { 1 });
        }
        Command::Report { query, seed, seeds } => {
            let (x, q, lam) = load_query(&query)?;
            let lam = lam.ok_or_else(|| Error::Malformed("report needs --lambda".into()))?;
            let seed_list: Vec<u64> = (0..seeds.max(1) as u64).map(|s| seed.wrapping_add(s)).collect();
            let rep = main_theorem_check(&x, &q, &lam, &seed_list)?;
            let t = table_for(&x, &q, &lam, seed)?;
            let terms: Vec<Value> = cobordism_blown_terms(&x, &q, &lam, &t)?
                .into_iter()
                .filter(|term| !term.value.is_zero())
                .map(|term| {
                    json!({
                        "class": term.class,
                        "i": term.i,
                        "j": term.j,
                        "k": term.k,
                        "coefficient": format_rational(&term.coefficient),
                        "value": format_rational(&term.value),
                    })
                })
                .collect();
            let mut v = serde_json::to_value(&rep).map_err(json_err)?;
            v["terms"] = Value::Array(terms);
            emit(out, &v)?;
        }
    }
    Ok(0)
}

fn compute(
    x: &FourManifold,
    q: &InvariantQuery,
    lam: Option<&Class>,
    mode: Mode,
    seed: u64,
) -> Result<Value> {
    let need_lam = || lam.ok_or_else(|| Error::Malformed("cobordism mode needs --lambda".into()));
    Ok(match mode {
        Mode::Witten => json!({
            "mode": "witten",
            "witten": format_rational(&witten_invariant(x, q)?),
        }),
        Mode::Cobordism => {
            let lam = need_lam()?;
            let t = table_for(x, q, lam, seed)?;
            json!({
                "mode": "cobordism",
                "seed": seed,
                "cobordism": format_rational(&cobordism_invariant_blown(x, q, lam, &t)?),
            })
        }
        Mode::Both => {
            let rep = compare_evaluators(x, q, need_lam()?, &[seed])?;
            json!({
                "mode": "both",
                "seed": seed,
                "witten": format_rational(&rep.witten),
                "cobordism": format_rational(&rep.cobordism[0].value),
                "equal": rep.equal,
            })
        }
    })
}

/// The seeded table the blown-up evaluator reads: (χ_h, c₁² − 1, Λ², m).
fn table_for(x: &FourManifold, q: &InvariantQuery, lam: &Class, seed: u64) -> Result<CoeffTable> {
    Ok(CoeffTable::new(x.chi_h(), x.c1sq() - 1, x.lattice().square(lam)?, q.m, seed))
}

fn load_query(a: &QueryArgs) -> Result<(FourManifold, InvariantQuery, Option<Class>)> {
    let x = load_manifest(&a.manifest)?;
    if a.delta > a.max_delta {
        return Err(Error::violated(
            "δ ≤ max-delta",
            format!("δ = {}, max-delta = {}", a.delta, a.max_delta),
        ));
    }
    let w = parse_class(&x, &a.w)?;
    let lam = a.lambda.as_deref().map(|s| parse_class(&x, s)).transpose()?;
    let h = HClass(parse_rational_list(&a.h)?);
    let q = InvariantQuery::new(w, a.delta, a.m, h);
    q.check_dims(&x)?;
    Ok((x, q, lam))
}

fn load_manifest(path: &PathBuf) -> Result<FourManifold> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(json_err)?;
    writeln!(out, "{s}").map_err(io_err)
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Malformed(e.to_string())
}

fn io_err(e: std::io::Error) -> Error {
    Error::Malformed(e.to_string())
}

/// Resolves a class spec: a JSON integer array, or an expression such as
/// "K0", "f1+f2", "2*(f1+f2)-e1" over the manifold's named classes.
pub fn parse_class(x: &FourManifold, spec: &str) -> Result<Class> {
    let s = spec.trim();
    let rank = x.lattice().rank();
    let c = if s.starts_with('[') {
        let v: Vec<i64> =
            serde_json::from_str(s).map_err(|e| Error::Malformed(format!("class \"{spec}\": {e}")))?;
        Class(v)
    } else {
        let mut p = ExprParser { x, src: s.as_bytes(), pos: 0, rank };
        let c = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        c
    };
    crate::error::check_dim(rank, c.len())?;
    Ok(c)
}

struct ExprParser<'a> {
    x: &'a FourManifold,
    src: &'a [u8],
    pos: usize,
    rank: usize,
}

impl ExprParser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Malformed(format!(
            "class expression \"{}\": {what} at offset {}",
            String::from_utf8_lossy(self.src),
            self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    // expr := ['-'] term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Class> {
        let mut acc = Class::zero(self.rank);
        let mut sign = 1;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            let t = self.term()?;
            acc = &acc + &(sign * &t);
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    // term := [int '*'] atom | int
    fn term(&mut self) -> Result<Class> {
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let n = self.int()?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let a = self.atom()?;
                return Ok(n * &a);
            }
            if n == 0 {
                return Ok(Class::zero(self.rank));
            }
            return Err(self.error("bare nonzero integer"));
        }
        self.atom()
    }

    // atom := name | '(' expr ')'
    fn atom(&mut self) -> Result<Class> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let c = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
            return Ok(c);
        }
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a class name"));
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        self.x
            .named(name)
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("unknown class name \"{name}\"")))
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }
}
