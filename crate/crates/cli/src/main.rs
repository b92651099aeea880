//! `phidyn`: command-line front end for exact computations with
//! `phi(x) = |1 - 1/x|` on `[0, inf]`.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or parse
//! error, 3 some scheduled events were inconclusive.

mod output;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use phi_dynamics::coding::{
    cylinder, itinerary, periodic_point, CodeStream, CylinderWalker, FareyInterval, StreamKind,
    TieRule, Word,
};
use phi_dynamics::conjugacy::{
    f_map, farey_level_capped, farey_properties_report, h_rational, MAX_FAREY_LEVEL,
};
use phi_dynamics::entropy::{
    entropy_lap_count, entropy_polynomial_root, entropy_word_growth, mixing_certificate,
    transition_spectral_radius, transitivity_check, EntropyEstimate, EntropyMethod, MAX_LAP_DEPTH,
};
use phi_dynamics::numeric::{ExactPoint, ExtendedRational};
use phi_dynamics::scrambled::{
    alpha_transitive, beta_from_word, default_tracked, g_map, mu_code, rational_vs_tau,
    schedule_events, tau_code, verify_scrambling, AlphaSchedule, ScheduleKind, ScrambleReport,
    Verdict, DEFAULT_MAX_K, HARD_MAX_K,
};
use phi_dynamics::text::{parse_fraction, parse_point};
use phi_dynamics::Error;

use output::{emit, Format, Output};

#[derive(Parser)]
#[command(name = "phidyn", version, about = "Exact symbolic dynamics of x -> |1 - 1/x| on [0, inf]")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Enclosure width goal, as a positive fraction.
    #[arg(long, global = true, default_value = "1/1000000", value_parser = positive_rational)]
    precision: BigRational,
    /// Most code symbols read per enclosure.
    #[arg(long, global = true, default_value_t = 16384, value_parser = clap::value_parser!(u64).range(1..))]
    max_prefix: u64,
    /// Block indices `a..b` (inclusive) for scramble schedules.
    #[arg(long, global = true, default_value = "5..7", value_parser = k_range)]
    k_range: RangeInclusive<u32>,
    /// Largest k a schedule may use (at most 19).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_K)]
    max_k: u32,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for sampled parameter words and sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact orbit of a point.
    Iterate {
        /// Fraction `p/q`, decimal, `inf`, or surd `(p+q√d)/r`.
        x: String,
        #[arg(short, long, default_value_t = 10)]
        n: u64,
    },
    /// First symbols of the code of a point.
    Code {
        x: String,
        #[arg(short, long, default_value_t = 20)]
        len: usize,
        /// Emit 1 at the point 1 (the other code of a rational).
        #[arg(long)]
        one_tie: bool,
    },
    /// Farey cylinder of an admissible word.
    Interval { word: String },
    /// Certified enclosure of the point of a code `pre(period)`.
    Point { code: String },
    /// Level-n Farey nodes with h values and the conjugacy check.
    Conjugacy {
        n: u32,
        #[arg(long, default_value_t = 12)]
        max_level: u32,
    },
    /// Symmetry identities (a)-(d) of a Farey level.
    Farey { n: u32 },
    /// Entropy estimates.
    Entropy {
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        method: Vec<MethodArg>,
        /// Word length, power iterations or lap depth.
        #[arg(long, default_value_t = 40)]
        depth: u32,
        /// Bracket width for the polynomial root.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Steps until the cylinder of a word covers [0, inf].
    Mixing { word: String },
    /// Periodic point inside the cylinder of a word.
    Periodic {
        word: String,
        /// Use `word` itself as the period (with optional preperiod) instead
        /// of the dense witness `(word 000)`.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value = "")]
        pre: String,
    },
    /// Scheduled close/far events of the scrambled-set constructions.
    Scramble {
        #[command(subcommand)]
        which: ScrambleCmd,
    },
    /// The piecewise-linear map g with a 3-cycle and no other odd period.
    Gdemo {
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Plot data: phi on a grid or h on Farey nodes.
    Graph {
        #[arg(value_enum)]
        which: GraphKind,
        #[arg(long, default_value_t = 200)]
        points: u32,
        #[arg(long, default_value_t = 4)]
        xmax: u32,
        #[arg(long, default_value_t = 8)]
        level: u32,
    },
    /// Scan the transitive code alpha for every admissible word.
    Transitivity {
        #[arg(long, default_value_t = 4)]
        word_len: usize,
        #[arg(long, default_value_t = 1)]
        stride: u64,
        #[arg(long, default_value_t = 1_000_000)]
        horizon: u64,
    },
}

#[derive(Args, Clone)]
struct PairArgs {
    /// Parameter word for the first code (repeated); random when omitted.
    #[arg(long)]
    beta: Option<String>,
    /// Parameter word for the second code; random when omitted.
    #[arg(long, alias = "xi", alias = "eta")]
    other: Option<String>,
    /// Shift applied to the second code.
    #[arg(long, default_value_t = 0)]
    shift: u64,
}

#[derive(Args, Clone)]
struct Thresholds {
    /// Close events need distance below this.
    #[arg(long, default_value = "1/100", value_parser = positive_rational)]
    eps: BigRational,
    /// Far events need distance above this.
    #[arg(long, value_parser = positive_rational)]
    m_big: Option<BigRational>,
}

#[derive(Subcommand)]
enum ScrambleCmd {
    /// mu codes: bounded 2-scrambled pairs.
    Theorem1 {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        th: Thresholds,
    },
    /// tau codes: unbounded scrambled pairs.
    Theorem2 {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        th: Thresholds,
        /// Tracked codes, comma separated, e.g. `(0),1(0)`.
        #[arg(long, value_delimiter = ',')]
        track: Vec<String>,
    },
    /// Orbit of a rational against tau.
    Rational {
        #[arg(long)]
        r: String,
        #[arg(long)]
        beta: Option<String>,
        #[command(flatten)]
        th: Thresholds,
        #[arg(long, value_delimiter = ',')]
        track: Vec<String>,
    },
    /// Tracked code i against sigma^(j-1) tau.
    Tracking {
        #[arg(long, default_value_t = 1)]
        i: u32,
        #[arg(long, default_value_t = 1)]
        j: u32,
        #[arg(long)]
        beta: Option<String>,
        #[command(flatten)]
        th: Thresholds,
        #[arg(long, value_delimiter = ',')]
        track: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    All,
    PolynomialRoot,
    WordGrowth,
    Spectral,
    LapCount,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Phi,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Status::Pass,
            Verdict::Fail => Status::Fail,
            Verdict::Inconclusive => Status::Inconclusive,
        }
    }
}

fn check(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn positive_rational(s: &str) -> Result<BigRational, String> {
    let x = parse_fraction(s).map_err(|e| e.to_string())?;
    match x.to_rational() {
        Some(r) if r > BigRational::zero() => Ok(r),
        _ => Err(format!("{s} must be a positive finite fraction")),
    }
}

fn k_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let k = parse(s)?;
            (k, k)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok(a..=b)
}

fn approx(x: &ExactPoint) -> String {
    let v = x.to_f64();
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:.12}")
    }
}

fn word(s: &str) -> Result<Word, Error> {
    s.parse()
}

fn random_word(rng: &mut ChaCha8Rng) -> Word {
    Word::new((0..16).map(|_| rng.random_range(0..2u8)).collect()).unwrap()
}

fn tracked(codes: &[String]) -> Result<Vec<CodeStream>, Error> {
    if codes.is_empty() {
        Ok(default_tracked())
    } else {
        codes.iter().map(|c| c.parse()).collect()
    }
}

fn cmd_iterate(x: &str, n: u64) -> Result<(Output, Status), Error> {
    let mut p = parse_point(x)?;
    let mut rows = Vec::new();
    let cycle = [ExtendedRational::zero(), ExtendedRational::one(), ExtendedRational::infinity()];
    for step in 1..=n {
        p = p.phi()?;
        let in_cycle = matches!(&p, ExactPoint::Rational(r) if cycle.contains(r));
        rows.push(vec![step.to_string(), p.to_string(), approx(&p), in_cycle.to_string()]);
    }
    Ok((Output::rows(["step", "value", "approx", "period3"], rows), Status::Pass))
}

fn cmd_code(x: &str, len: usize, one_tie: bool) -> Result<(Output, Status), Error> {
    let p = parse_point(x)?;
    let tie = if one_tie { TieRule::One } else { TieRule::Zero };
    let w = itinerary(&p, len, tie)?;
    Ok((Output::doc(json!({"point": p.to_string(), "code": w.to_string()})), Status::Pass))
}

fn interval_doc(iv: &FareyInterval) -> serde_json::Value {
    json!({
        "interval": iv.to_string(),
        "width": iv.width().map_or("inf".to_string(), |w| w.to_string()),
    })
}

fn cmd_interval(w: &str) -> Result<(Output, Status), Error> {
    let w = word(w)?;
    let mut doc = interval_doc(&cylinder(&w)?);
    doc["word"] = json!(w.to_string());
    Ok((Output::doc(doc), Status::Pass))
}

fn cmd_point(code: &str, cfg: &RunConfig) -> Result<(Output, Status), Error> {
    let s: CodeStream = code.parse()?;
    let mut walker = CylinderWalker::new();
    let mut current = FareyInterval::whole();
    let mut used = 0;
    for i in 0..cfg.max_prefix {
        walker.push(s.symbol_at(i))?;
        current = walker.interval();
        used = i + 1;
        if current.width().is_some_and(|w| w < cfg.precision) {
            break;
        }
    }
    let reached = current.width().is_some_and(|w| w < cfg.precision);
    let exact = match s.kind() {
        StreamKind::EventuallyPeriodic { preperiod, period } => {
            periodic_point(preperiod, period).ok().map(|p| p.to_string())
        }
        StreamKind::Procedural { .. } => None,
    };
    let mut doc = interval_doc(&current);
    doc["code"] = json!(s.to_string());
    doc["prefix"] = json!(used);
    doc["width_goal"] = json!(cfg.precision.to_string());
    doc["reached"] = json!(reached);
    doc["exact"] = json!(exact);
    let status = if reached { Status::Pass } else { Status::Inconclusive };
    Ok((Output::doc(doc), status))
}

fn cmd_conjugacy(n: u32, max_level: u32) -> Result<(Output, Status), Error> {
    let level = farey_level_capped(n, max_level.min(MAX_FAREY_LEVEL))?;
    let mut all = true;
    let rows = level
        .entries()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let h = h_rational(x);
            let lhs = h_rational(&x.phi());
            let rhs = f_map(&h.to_rational()).expect("h maps into [0, 1]");
            let ok = lhs.to_rational() == rhs;
            all &= ok;
            vec![i.to_string(), x.to_string(), h.to_string(), lhs.to_string(), ok.to_string()]
        })
        .collect();
    Ok((Output::rows(["index", "fraction", "h", "h_of_phi", "check"], rows), check(all)))
}

fn cmd_farey(n: u32) -> Result<(Output, Status), Error> {
    let rep = farey_properties_report(n)?;
    let ok = rep.all_passed();
    Ok((Output::doc(rep), check(ok)))
}

fn cmd_entropy(methods: &[MethodArg], depth: u32, tol: f64) -> Result<(Output, Status), Error> {
    let all = methods.contains(&MethodArg::All);
    let want = |m| all || methods.contains(&m);
    let mut est: Vec<EntropyEstimate> = Vec::new();
    if want(MethodArg::PolynomialRoot) {
        est.push(entropy_polynomial_root(tol)?);
    }
    if want(MethodArg::WordGrowth) {
        est.push(entropy_word_growth(depth)?);
    }
    if want(MethodArg::Spectral) {
        est.push(transition_spectral_radius(depth)?);
    }
    if want(MethodArg::LapCount) {
        est.push(entropy_lap_count(depth.min(MAX_LAP_DEPTH))?);
    }
    let mut agree = true;
    for (i, a) in est.iter().enumerate() {
        for b in &est[i + 1..] {
            let loose = a.method == EntropyMethod::LapCount || b.method == EntropyMethod::LapCount;
            let tol = if loose { 2e-2 } else { 1e-6 };
            agree &= (a.value - b.value).abs() <= tol;
        }
    }
    let rows = est
        .iter()
        .map(|e| {
            vec![
                e.method.name().to_string(),
                format!("{:.12}", e.value),
                format!("{:.12}", e.lambda),
                e.depth.to_string(),
                e.error_bound.map_or(String::new(), |b| format!("{b:.3e}")),
            ]
        })
        .collect();
    Ok((Output::rows(["method", "value", "lambda", "depth", "error_bound"], rows), check(agree)))
}

fn cmd_mixing(w: &str) -> Result<(Output, Status), Error> {
    let cert = mixing_certificate(&word(w)?)?;
    let ok = cert.n_cover <= cert.word.len() + 2;
    Ok((Output::doc(cert), check(ok)))
}

fn cmd_periodic(w: &str, exact: bool, pre: &str) -> Result<(Output, Status), Error> {
    let w = word(w)?;
    let (pre, period) = if exact { (word(pre)?, w.clone()) } else { (Word::empty(), w.concat(&Word::zeros(3))) };
    let x = periodic_point(&pre, &period)?;
    let target = pre.concat(&period);
    let in_cylinder = cylinder(&target)?.contains_point(&x);
    let mut tail = x.clone();
    if !pre.is_empty() {
        tail = tail.phi_iter(pre.len() as u64)?;
    }
    let fixed = tail.phi_iter(period.len() as u64)? == tail;
    let doc = json!({
        "word": w.to_string(),
        "code": format!("{pre}({period})"),
        "witness": x.to_string(),
        "approx": approx(&x),
        "period": period.len(),
        "in_cylinder": in_cylinder,
        "fixed_by_period": fixed,
        "cylinder": target.to_string(),
    });
    Ok((Output::doc(doc), check(in_cylinder && fixed)))
}

fn report_output(rep: ScrambleReport, cfg: &RunConfig, params: serde_json::Value) -> (Output, Status) {
    let status = rep.verdict().into();
    let mut doc = serde_json::to_value(&rep).expect("report serializes");
    doc["params"] = params;
    doc["k_range"] = json!(format!("{}..{}", cfg.k_range.start(), cfg.k_range.end()));
    doc["verdict"] = serde_json::to_value(rep.verdict()).unwrap();
    doc["decided_fraction"] = json!(rep.decided_fraction());
    (Output::Doc(doc), status)
}

#[derive(Serialize)]
struct PairParams {
    beta: String,
    other: String,
    shift: u64,
}

fn pair_words(p: &PairArgs, rng: &mut ChaCha8Rng, differ_first: bool) -> Result<(Word, Word), Error> {
    let a = match &p.beta {
        Some(s) => word(s)?,
        None => random_word(rng),
    };
    let b = match &p.other {
        Some(s) => word(s)?,
        None => {
            let mut v = random_word(rng).symbols().to_vec();
            if differ_first && !a.is_empty() {
                v[0] = 1 - a.symbols()[0];
            }
            Word::new(v)?
        }
    };
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok((a, b))
}

fn cmd_scramble(which: &ScrambleCmd, cfg: &RunConfig) -> Result<(Output, Status), Error> {
    if cfg.max_k > HARD_MAX_K {
        return Err(Error::KTooLarge {
            requested: cfg.max_k,
            max: HARD_MAX_K,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let budget = cfg.max_prefix as usize;
    let ks = cfg.k_range.clone();
    let thousand = BigRational::from_integer(BigInt::from(1000));
    match which {
        ScrambleCmd::Theorem1 { pair, th } => {
            let (a, b) = pair_words(pair, &mut rng, true)?;
            let (beta, xi) = (beta_from_word(&a)?, beta_from_word(&b)?);
            let kind = ScheduleKind::Theorem1 { shift: pair.shift, beta: beta.clone(), xi: xi.clone() };
            let events = schedule_events(&kind, ks, cfg.max_k)?;
            let m_big = th.m_big.clone().unwrap_or(BigRational::new(3.into(), 2.into()));
            let t = mu_code(&xi).shift(pair.shift);
            let rep = verify_scrambling(&mu_code(&beta), &t, &events, &th.eps, &m_big, budget)?;
            let params = json!(PairParams { beta: a.to_string(), other: b.to_string(), shift: pair.shift });
            Ok(report_output(rep, cfg, params))
        }
        ScrambleCmd::Theorem2 { pair, th, track } => {
            let (a, b) = pair_words(pair, &mut rng, true)?;
            let (beta, eta) = (beta_from_word(&a)?, beta_from_word(&b)?);
            let alpha = alpha_transitive(&AlphaSchedule::minimal());
            let xs = tracked(track)?;
            let s = tau_code(&beta, &alpha, &xs)?;
            let t = tau_code(&eta, &alpha, &xs)?.shift(pair.shift);
            let kind = ScheduleKind::Theorem2 { shift: pair.shift, beta, eta };
            let events = schedule_events(&kind, ks, cfg.max_k)?;
            let m_big = th.m_big.clone().unwrap_or(thousand);
            let rep = verify_scrambling(&s, &t, &events, &th.eps, &m_big, budget)?;
            let params = json!(PairParams { beta: a.to_string(), other: b.to_string(), shift: pair.shift });
            Ok(report_output(rep, cfg, params))
        }
        ScrambleCmd::Rational { r, beta, th, track } => {
            let r = parse_fraction(r)?;
            let a = match beta {
                Some(s) => word(s)?,
                None => random_word(&mut rng),
            };
            let tau = tau_code(&beta_from_word(&a)?, &alpha_transitive(&AlphaSchedule::minimal()), &tracked(track)?)?;
            let m_big = th.m_big.clone().unwrap_or(thousand);
            let rep = rational_vs_tau(&r, &tau, ks, cfg.max_k, &th.eps, &m_big, budget)?;
            let params = json!({"r": r.to_string(), "beta": a.to_string(), "escape_time": r.escape_time()});
            Ok(report_output(rep, cfg, params))
        }
        ScrambleCmd::Tracking { i, j, beta, th, track } => {
            let a = match beta {
                Some(s) => word(s)?,
                None => random_word(&mut rng),
            };
            let xs = tracked(track)?;
            if *i == 0 || *j == 0 {
                return Err(Error::Precondition("i and j start at 1".into()));
            }
            let gamma = xs[(*i as usize - 1) % xs.len()].clone();
            let tau = tau_code(&beta_from_word(&a)?, &alpha_transitive(&AlphaSchedule::minimal()), &xs)?;
            let kind = ScheduleKind::Tracking { i: *i, j: *j, gamma: gamma.clone() };
            let events = schedule_events(&kind, ks, cfg.max_k)?;
            let m_big = th.m_big.clone().unwrap_or(BigRational::new(3.into(), 2.into()));
            let rep = verify_scrambling(&gamma, &tau.shift(u64::from(*j - 1)), &events, &th.eps, &m_big, budget)?;
            let params = json!({"i": i, "j": j, "beta": a.to_string(), "tracked": gamma.to_string()});
            Ok(report_output(rep, cfg, params))
        }
    }
}

fn cmd_gdemo(samples: usize, seed: u64) -> Result<(Output, Status), Error> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let g = |x: &BigRational| g_map(x);
    let mut ok = true;
    let mut nodes = Vec::new();
    for (x, want) in [(r(0, 1), r(1, 1)), (r(1, 6), r(1, 3)), (r(1, 3), r(1, 6)), (r(1, 2), r(0, 1)), (r(1, 1), r(1, 2))] {
        let y = g(&x)?;
        ok &= y == want;
        nodes.push(json!({"x": x.to_string(), "g": y.to_string()}));
    }
    let mut cycle = vec![r(0, 1)];
    for _ in 0..3 {
        let next = g(cycle.last().unwrap())?;
        cycle.push(next);
    }
    ok &= cycle[3] == cycle[0];
    let fixed = g(&r(1, 4))?;
    ok &= fixed == r(1, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut period_two = Vec::new();
    while period_two.len() < samples {
        let d = rng.random_range(13..10_000i64);
        let x = r(rng.random_range(d / 6 + 1..=d / 3), d);
        if x <= r(1, 6) || x >= r(1, 3) || x == r(1, 4) {
            continue;
        }
        let gx = g(&x)?;
        let ggx = g(&gx)?;
        ok &= ggx == x;
        period_two.push(json!({"x": x.to_string(), "g": gx.to_string(), "g2": ggx.to_string()}));
    }
    let doc = json!({
        "nodes": nodes,
        "cycle": cycle.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "fixed_point": fixed.to_string(),
        "period_two": period_two,
        "passed": ok,
    });
    Ok((Output::doc(doc), check(ok)))
}

fn cmd_graph(which: GraphKind, points: u32, xmax: u32, level: u32) -> Result<(Output, Status), Error> {
    let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
    let rows = match which {
        GraphKind::Phi => (1..=points)
            .map(|i| {
                let x = BigRational::new(BigInt::from(i) * xmax, BigInt::from(points));
                let p = ExtendedRational::from_rational(&x).unwrap();
                let y = p.phi();
                vec![format!("{:.9}", f(&x)), format!("{:.9}", y.to_f64()), p.to_string(), y.to_string()]
            })
            .collect(),
        GraphKind::H => farey_level_capped(level, MAX_FAREY_LEVEL)?
            .entries()
            .iter()
            .filter(|x| !x.is_infinite())
            .map(|x| {
                let h = h_rational(x);
                vec![format!("{:.9}", x.to_f64()), format!("{:.9}", h.to_f64()), x.to_string(), h.to_string()]
            })
            .collect(),
    };
    Ok((Output::rows(["x", "y", "x_exact", "y_exact"], rows), Status::Pass))
}

fn cmd_transitivity(word_len: usize, stride: u64, horizon: u64) -> Result<(Output, Status), Error> {
    let alpha = alpha_transitive(&AlphaSchedule::minimal());
    let rep = transitivity_check(&alpha, word_len, stride, horizon)?;
    let ok = rep.passed;
    Ok((Output::doc(rep), check(ok)))
}

fn run(cli: &Cli) -> Result<(Output, Status), Error> {
    let cfg = &cli.cfg;
    match &cli.cmd {
        Command::Iterate { x, n } => cmd_iterate(x, *n),
        Command::Code { x, len, one_tie } => cmd_code(x, *len, *one_tie),
        Command::Interval { word } => cmd_interval(word),
        Command::Point { code } => cmd_point(code, cfg),
        Command::Conjugacy { n, max_level } => cmd_conjugacy(*n, *max_level),
        Command::Farey { n } => cmd_farey(*n),
        Command::Entropy { method, depth, tol } => cmd_entropy(method, *depth, *tol),
        Command::Mixing { word } => cmd_mixing(word),
        Command::Periodic { word, exact, pre } => cmd_periodic(word, *exact, pre),
        Command::Scramble { which } => cmd_scramble(which, cfg),
        Command::Gdemo { samples } => cmd_gdemo(*samples, cfg.seed),
        Command::Graph { which, points, xmax, level } => cmd_graph(*which, *points, *xmax, *level),
        Command::Transitivity { word_len, stride, horizon } => cmd_transitivity(*word_len, *stride, *horizon),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, status) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&out.render(cli.cfg.format), cli.cfg.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 3,
    })
}
