use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qborel::acceptance::{run_criterion, Suite};
use qborel::cohomology::{default_bound, degrees_up_to, h_dims, Route};
use qborel::dp_moves::{dp_word_for_root, DpContext};
use qborel::dualside::{
    bserre_check, commutator_check, degree_label, is_trivial_eigen, measured_eigen_vector,
    minimal_relation_dims, nilpotency_check,
};
use qborel::engine::{Cop, Uq};
use qborel::groupalg::{enumerate_alternating, form_to_twist, is_alternating, FormMatrix};
use qborel::io;
use qborel::reduction::{random_twist, Reducer, TwistInput};
use qborel::rootdata::RootDatum;
use qborel::tensor_hopf::{b_shift, is_twist, twisted_hopf_check};
use qborel::Error;

const EXIT_VERIFY: u8 = 2;
const EXIT_CONFIG: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "qborel", version, about = "Exact twist cohomology and twist normal forms for small quantum Borel algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Positive roots, admissibility and the Killing map (exit 1 if inadmissible)
    Rootdata { label: String, l: u32 },
    /// Alternating forms on the character group
    Alt {
        #[command(subcommand)]
        cmd: AltCmd,
    },
    /// Structure of u_q
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Presentation of the twisted dual
    Dual {
        #[command(subcommand)]
        cmd: DualCmd,
    },
    /// H¹ and H² of u_q^B by Q-degree
    Cohomology {
        label: String,
        l: u32,
        /// alternating form as a JSON matrix
        #[arg(long)]
        form: Option<String>,
        #[arg(long, value_enum, default_value = "reduced")]
        route: RouteArg,
        /// componentwise degree bound, e.g. 5,5 (default l·θ)
        #[arg(long)]
        bound: Option<String>,
        /// print every degree, not only the nonzero ones
        #[arg(long)]
        all: bool,
    },
    /// Twist files: verification, reduction, replay, dp gauges
    Twist {
        #[command(subcommand)]
        cmd: TwistCmd,
    },
    /// Run the acceptance criteria
    Acceptance {
        #[arg(long, value_enum, default_value = "full")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// comma-separated criterion numbers
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum AltCmd {
    Enumerate { label: String, l: u32 },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Graded dimensions of u_q^+ and the total dimension of u_q
    Dims { label: String, l: u32 },
    /// Hopf axioms of u_q (or of the form twist) on seeded sample monomials
    CheckHopf {
        label: String,
        l: u32,
        #[arg(long)]
        form: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum DualCmd {
    Check {
        label: String,
        l: u32,
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        bound: Option<String>,
    },
}

#[derive(Subcommand)]
enum TwistCmd {
    /// Check the twist equation (exit 2 if it fails)
    Verify {
        file: String,
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// Reduce a twist to its normal form; prints the normal form and log
    Reduce {
        file: String,
        #[command(flatten)]
        datum: DatumArgs,
        /// expected alternating form (exit 2 if the reduction disagrees)
        #[arg(long)]
        form_hint: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Replay a normal form's log; with --input, compare against the original
    Roundtrip {
        file: String,
        #[arg(long)]
        input: Option<String>,
    },
    /// Apply a dp word (JSON list or a root's commutator word) to a twist
    Dpgauge {
        label: String,
        l: u32,
        /// word as JSON, or @path
        #[arg(long, conflicts_with = "root")]
        word: Option<String>,
        /// 1-based positive root index for the standard commutator word
        #[arg(long)]
        root: Option<usize>,
        /// λ as a scalar JSON (default 1)
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        form: Option<String>,
        /// twist file to act on (default 1⊗1)
        #[arg(long)]
        input: Option<String>,
    },
    /// A seeded random twist built from a form, small gauges and dp words
    Generate {
        label: String,
        l: u32,
        #[arg(long)]
        form: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// emit B·J′ densely instead of the factored file
        #[arg(long)]
        dense: bool,
    },
}

#[derive(clap::Args)]
struct DatumArgs {
    /// root-system label when the file does not record one
    #[arg(long = "type")]
    label: Option<String>,
    #[arg(long)]
    l: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Reduced,
    Full,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Full,
    Quick,
}

enum Failure {
    Verify(String),
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {}", msg);
            ExitCode::from(EXIT_VERIFY)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("{}", e);
            ExitCode::from(match e {
                Error::Config(_) | Error::Parse(_) | Error::Type(_) | Error::Domain(_) => EXIT_CONFIG,
                _ => EXIT_VERIFY,
            })
        }
    }
}

fn run(cmd: Cmd) -> Out {
    match cmd {
        Cmd::Rootdata { label, l } => rootdata(&label, l),
        Cmd::Alt { cmd: AltCmd::Enumerate { label, l } } => {
            let rd = RootDatum::from_label(&label, l)?;
            println!("{}", json!(enumerate_alternating(rd.rank, l)));
            Ok(0)
        }
        Cmd::Algebra { cmd } => algebra(cmd),
        Cmd::Dual { cmd: DualCmd::Check { label, l, form, bound } } => dual_check(&label, l, form, bound),
        Cmd::Cohomology { label, l, form, route, bound, all } => cohomology(&label, l, form, route, bound, all),
        Cmd::Twist { cmd } => twist(cmd),
        Cmd::Acceptance { suite, seed, only } => {
            let suite = match suite {
                SuiteArg::Full => Suite::Full,
                SuiteArg::Quick => Suite::Quick,
            };
            let ids: Vec<usize> = match only {
                Some(s) => parse_list(&s)?.into_iter().map(|x| x as usize).collect(),
                None => (1..=8).collect(),
            };
            let mut ok = true;
            for id in ids {
                let r = run_criterion(id, suite, seed);
                println!("{}", r.line());
                ok &= r.passed;
            }
            Ok(if ok { 0 } else { EXIT_VERIFY })
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Failure::Lib(Error::Config(format!("bad integer list: {}", s)))))
        .collect()
}

fn parse_form(s: Option<&str>, rank: usize, l: u32) -> Result<FormMatrix, Failure> {
    let Some(s) = s else {
        return Ok(vec![vec![0; rank]; rank]);
    };
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Config(format!("--form: {}", e)))?;
    let m = io::form_from_json(&v, rank).map_err(|e| Error::Config(e.to_string()))?;
    if !is_alternating(&m, l) {
        return Err(Error::Config(format!("form {} is not alternating mod {}", s, l)).into());
    }
    Ok(m.iter().map(|r| r.iter().map(|x| x.rem_euclid(l as i64)).collect()).collect())
}

fn form_opt(m: &FormMatrix) -> Option<&[Vec<i64>]> {
    if m.iter().all(|r| r.iter().all(|&x| x == 0)) {
        None
    } else {
        Some(m)
    }
}

fn parse_bound(s: Option<&str>, rd: &RootDatum) -> Result<Vec<i64>, Failure> {
    match s {
        None => Ok(default_bound(rd)),
        Some(s) => {
            let b = parse_list(s)?;
            if b.len() != rd.rank || b.iter().any(|&x| x < 0) {
                return Err(Error::Config(format!("--bound needs {} nonnegative entries", rd.rank)).into());
            }
            Ok(b)
        }
    }
}

fn read_json(path: &str) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {}", path, e)))?;
    serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::Parse(format!("{}: {}", path, e))))
}

fn json_arg(s: &str) -> Result<Value, Failure> {
    match s.strip_prefix('@') {
        Some(path) => read_json(path),
        None => serde_json::from_str(s).map_err(|e| Failure::Lib(Error::Parse(e.to_string()))),
    }
}

fn datum_for(v: &Value, datum: &DatumArgs) -> Result<Uq, Failure> {
    let (label, l) = match (io::datum_of(v), &datum.label, datum.l) {
        (_, Some(t), Some(l)) => (t.clone(), l),
        (Some(d), _, _) => d,
        _ => return Err(Error::Config("the file records no datum; pass --type and --l".into()).into()),
    };
    Ok(Uq::from_label(&label, l)?)
}

fn rootdata(label: &str, l: u32) -> Out {
    let rd = RootDatum::from_label(label, l)?;
    println!("type\t{}", rd.label());
    println!("l\t{}", l);
    for (i, r) in rd.roots.iter().enumerate() {
        println!("root {}\t{:?}", i + 1, r.deg);
    }
    let adm = rd.admissible_order();
    println!("admissible\t{}", adm);
    let (k, inv) = rd.killing_map();
    println!("killing_map\t{}", json!(k));
    println!("killing_invertible\t{}", inv);
    Ok(if adm { 0 } else { 1 })
}

fn algebra(cmd: AlgebraCmd) -> Out {
    match cmd {
        AlgebraCmd::Dims { label, l } => {
            let uq = Uq::from_label(&label, l)?;
            let mut dims: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
            for e in uq.plus.monomials_up_to_height(i64::MAX) {
                *dims.entry(uq.plus.degree_vec(e)).or_default() += 1;
            }
            println!("degree\tdim");
            for (g, d) in &dims {
                println!("{}\t{}", degree_label(g), d);
            }
            let plus: usize = dims.values().sum();
            println!("total u_q^+\t{}", plus);
            println!("total u_q\t{}", plus * (l as usize).pow(uq.rank() as u32));
            Ok(0)
        }
        AlgebraCmd::CheckHopf { label, l, form, samples, seed } => {
            let uq = Uq::from_label(&label, l)?;
            let m = parse_form(form.as_deref(), uq.rank(), l)?;
            let basis = uq.basis();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ms: Vec<u64> = (0..samples).map(|_| basis[rand::Rng::gen_range(&mut rng, 0..basis.len())]).collect();
            let j = form_to_twist(&uq, &m);
            let rep = twisted_hopf_check(&uq, &j, Cop::Plain, &ms)?;
            println!(
                "{}",
                json!({ "samples": rep.samples, "coassociative": rep.coassociative, "bialgebra": rep.bialgebra,
                        "antipode": rep.antipode, "dual_pairing": rep.dual_pairing })
            );
            if rep.all_pass() {
                Ok(0)
            } else {
                Err(Failure::Verify("Hopf axioms".into()))
            }
        }
    }
}

fn dual_check(label: &str, l: u32, form: Option<String>, bound: Option<String>) -> Out {
    let uq = Uq::from_label(label, l)?;
    let m = parse_form(form.as_deref(), uq.rank(), l)?;
    let f = form_opt(&m);
    let bound = parse_bound(bound.as_deref(), &uq.rd)?;
    let checks = [
        ("commutator", commutator_check(&uq, f)),
        ("b_serre", bserre_check(&uq, f)),
        ("root_nilpotency", nilpotency_check(&uq, f)),
    ];
    for (name, ok) in &checks {
        println!("{}\t{}", name, if *ok { "ok" } else { "FAILED" });
    }
    println!("degree\trelations\teigen_vector\ttrivial");
    for (g, d) in minimal_relation_dims(&uq, f, &bound) {
        let v = measured_eigen_vector(&uq, f, &g).ok_or_else(|| Error::Engine("eigenvalue is not a root of unity".into()))?;
        println!("{}\t{}\t{:?}\t{}", degree_label(&g), d, v, is_trivial_eigen(&v));
    }
    if checks.iter().all(|(_, ok)| *ok) {
        Ok(0)
    } else {
        Err(Failure::Verify("dual presentation".into()))
    }
}

fn cohomology(label: &str, l: u32, form: Option<String>, route: RouteArg, bound: Option<String>, all: bool) -> Out {
    let uq = Uq::from_label(label, l)?;
    let m = parse_form(form.as_deref(), uq.rank(), l)?;
    let f = form_opt(&m);
    let bound = parse_bound(bound.as_deref(), &uq.rd)?;
    println!("degree\tH1\tH2");
    for g in degrees_up_to(&bound) {
        let h = match route {
            RouteArg::Reduced => h_dims(&uq, f, &g, Route::Reduced)?,
            RouteArg::Full => h_dims(&uq, f, &g, Route::Full)?,
            RouteArg::Both => {
                let a = h_dims(&uq, f, &g, Route::Reduced)?;
                let b = h_dims(&uq, f, &g, Route::Full)?;
                if (a.h1, a.h2) != (b.h1, b.h2) {
                    return Err(Failure::Verify(format!("routes disagree at {}", degree_label(&g))));
                }
                a
            }
        };
        if all || h.h1 + h.h2 > 0 {
            println!("{}\t{}\t{}", degree_label(&g), h.h1, h.h2);
        }
    }
    Ok(0)
}

fn twist(cmd: TwistCmd) -> Out {
    match cmd {
        TwistCmd::Verify { file, datum } => {
            let v = read_json(&file)?;
            let uq = datum_for(&v, &datum)?;
            let check = match io::twist_input_from_json(&uq, &v)? {
                TwistInput::Dense(j) => is_twist(&uq, &j, Cop::Plain)?,
                TwistInput::Factored { form, jp } => match form_opt(&form) {
                    Some(f) => is_twist(&uq, &jp, Cop::Twisted(f))?,
                    None => is_twist(&uq, &jp, Cop::Plain)?,
                },
            };
            match check.violation {
                None if check.ok => {
                    println!("twist\tok");
                    Ok(0)
                }
                v => Err(Failure::Verify(format!("twist equation fails: {:?}", v))),
            }
        }
        TwistCmd::Reduce { file, datum, form_hint, seed } => {
            let v = read_json(&file)?;
            let uq = datum_for(&v, &datum)?;
            let input = io::twist_input_from_json(&uq, &v)?;
            let hint = match form_hint {
                Some(h) => Some(parse_form(Some(&h), uq.rank(), uq.l)?),
                None => None,
            };
            let ctx = DpContext::new(&uq)?;
            let mut red = Reducer::new(&uq, &ctx);
            let nf = red.reduce(&input)?;
            let mut out = io::normal_form_to_json(&uq, &nf);
            out["seed"] = json!(seed);
            out["representation"] = json!(if matches!(input, TwistInput::Dense(_)) { "dense" } else { "factored" });
            println!("{}", out);
            match hint {
                Some(h) if h != nf.alt_form => {
                    Err(Failure::Verify(format!("form hint {:?} but the twist reduces to {:?}", h, nf.alt_form)))
                }
                _ => Ok(0),
            }
        }
        TwistCmd::Roundtrip { file, input } => {
            let v = read_json(&file)?;
            let uq = datum_for(&v, &DatumArgs { label: None, l: None })?;
            let nf = io::normal_form_from_json(&uq, &v)?;
            let dense = v.get("representation").and_then(Value::as_str) == Some("dense");
            let ctx = DpContext::new(&uq)?;
            let red = Reducer::new(&uq, &ctx);
            let back = red.replay(&nf, dense)?;
            match input {
                None => {
                    println!("{}", io::twist_input_to_json(&uq, &back));
                    Ok(0)
                }
                Some(path) => {
                    let orig = io::twist_input_from_json(&uq, &read_json(&path)?)?;
                    let same = match (&orig, &back) {
                        (TwistInput::Dense(a), TwistInput::Dense(b)) => a == b,
                        (TwistInput::Factored { form: f, jp: a }, TwistInput::Factored { form: g, jp: b }) => f == g && a == b,
                        _ => false,
                    };
                    if same {
                        println!("roundtrip\texact");
                        Ok(0)
                    } else {
                        Err(Failure::Verify("replayed twist differs from the input".into()))
                    }
                }
            }
        }
        TwistCmd::Dpgauge { label, l, word, root, lambda, form, input } => {
            let uq = Uq::from_label(&label, l)?;
            let m = parse_form(form.as_deref(), uq.rank(), l)?;
            let lam = match lambda {
                Some(s) => io::scalar_from_json(uq.f, &json_arg(&s)?)?,
                None => uq.f.one(),
            };
            let w = match (word, root) {
                (Some(s), _) => io::dp_word_from_json(&uq, &json_arg(&s)?)?,
                (None, Some(r)) if (1..=uq.rd.num_roots()).contains(&r) => dp_word_for_root(&uq, r - 1, &lam),
                (None, Some(r)) => return Err(Error::Config(format!("root index {} out of range", r)).into()),
                (None, None) => return Err(Error::Config("pass --word or --root".into()).into()),
            };
            let j = match input {
                Some(p) => match io::twist_input_from_json(&uq, &read_json(&p)?)? {
                    TwistInput::Factored { form: g, jp } if g == m => jp,
                    TwistInput::Dense(j) if form_opt(&m).is_none() => j,
                    _ => return Err(Error::Config("input twist does not match --form".into()).into()),
                },
                None => uq.tensor_one(),
            };
            let ctx = DpContext::new(&uq)?;
            let out = ctx.apply_word(&uq, &w, &j, form_opt(&m));
            let t = if form_opt(&m).is_some() { TwistInput::Factored { form: m, jp: out } } else { TwistInput::Dense(out) };
            let mut v = io::twist_input_to_json(&uq, &t);
            v["word"] = io::dp_word_to_json(&w);
            println!("{}", v);
            Ok(0)
        }
        TwistCmd::Generate { label, l, form, seed, dense } => {
            let uq = Uq::from_label(&label, l)?;
            let m = parse_form(form.as_deref(), uq.rank(), l)?;
            let ctx = DpContext::new(&uq)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let roots: Vec<usize> = (0..uq.rd.num_roots()).collect();
            let t = random_twist(&uq, &ctx, &m, &roots, &mut rng)?;
            let t = match (t, dense) {
                (TwistInput::Factored { form, jp }, true) => {
                    TwistInput::Dense(b_shift(&uq, &form, &jp, true))
                }
                (t, _) => t,
            };
            println!("{}", io::twist_input_to_json(&uq, &t));
            Ok(0)
        }
    }
}
