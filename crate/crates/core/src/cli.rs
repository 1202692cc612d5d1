//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors (and failed verification
//! suites), 2 on parse errors and bad flags.

use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::exprio::{parse_half, parse_label, parse_rep, render, Format, ParseError, Render};
use crate::filtr::{kudla_pieces, rank_exponent, rank_pieces};
use crate::groth::{coproduct, ss, ss_two_factor, GrothElt, ReptnKey, TwoFactor};
use crate::lfun::{both_pole_at, gj_lfunction, lfun_dual, pole_order_at, theta_point};
use crate::segments::{CuspidalLabel, HalfInt};
use crate::theta::{
    big_theta, enumerate_both_pole, ep_formula, ext_weil_character, is_projective, proj_dim_bound,
};
use crate::verify::{rank_tables, run_suite, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "segcalc",
    version,
    about = "Segment calculus and type II theta lifts for p-adic GL"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Ranks {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Class of the induced product of the given representations.
    Product { reps: Vec<String> },
    /// Semisimplification; with --ordered, sub and quotient of a two-factor product.
    Ss {
        rep: String,
        #[arg(long)]
        ordered: bool,
    },
    /// Jacquet coproduct; --k restricts to the (k, n-k) part.
    Jacquet {
        rep: String,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Factored L-function, pole order at --at, both-pole test with --n/--m.
    Lfun {
        rep: String,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long)]
        dual: bool,
        #[arg(long, requires = "m")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        m: Option<u32>,
    },
    /// Big theta lift of an irreducible representation.
    Theta {
        #[command(flatten)]
        ranks: Ranks,
        #[arg(long)]
        rep: String,
    },
    /// Ext table of the Weil representation against |det_n|^c.
    Ext {
        #[command(flatten)]
        ranks: Ranks,
        #[arg(long = "char", allow_hyphen_values = true)]
        c: String,
    },
    /// Ext tables for all n ≤ n-max, m ≤ m-max and x = k - m/2, 0 ≤ k ≤ m.
    ExtGrid {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        m_max: u32,
    },
    /// Euler–Poincaré class of Ext(ω, π).
    Ep {
        #[command(flatten)]
        ranks: Ranks,
        #[arg(long)]
        rep: String,
    },
    /// Projectivity of ω and the projective-dimension bound.
    Proj {
        #[command(flatten)]
        ranks: Ranks,
    },
    /// Rank and Kudla filtration tables.
    Filtration {
        #[command(flatten)]
        ranks: Ranks,
        /// Kudla filtration of the k-th Jacquet module.
        #[arg(long)]
        k: Option<u32>,
        /// Ext of the rank pieces against |det_n|^c.
        #[arg(long = "char", allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Representations of G_n with both L-functions singular at 1/2.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        bound: String,
        /// Extra cuspidal label contributing a formal point; repeatable.
        #[arg(long = "label")]
        labels: Vec<String>,
    },
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(ParseError),
    Domain(Error),
    /// Already reported; exit with code 1.
    Silent,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// How `SEGCALC_COLOR` resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Always,
    Never,
}

impl Color {
    /// Reads `SEGCALC_COLOR` (`auto`, `always`, `never`); `auto` colors terminals.
    pub fn from_env(is_terminal: bool) -> Color {
        match std::env::var("SEGCALC_COLOR").as_deref() {
            Ok("always") => Color::Always,
            Ok("never") => Color::Never,
            _ if is_terminal => Color::Always,
            _ => Color::Never,
        }
    }

    fn paint(self, text: &str, code: &str) -> String {
        match self {
            Color::Always => format!("\x1b[{code}m{text}\x1b[0m"),
            Color::Never => text.to_owned(),
        }
    }
}

struct Ctx<'a> {
    format: Format,
    color: Color,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit<R: Render + ?Sized>(&mut self, value: &R) {
        let _ = writeln!(self.out, "{}", render(value, self.format));
    }

    fn line(&mut self, text: &str) {
        let _ = writeln!(self.out, "{text}");
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }

    fn emit_value(&mut self, value: serde_json::Value) {
        let text = serde_json::to_string_pretty(&value).expect("json values serialize");
        let _ = writeln!(self.out, "{text}");
    }
}

fn key_of(text: &str) -> Result<ReptnKey, Failure> {
    Ok(parse_rep(text)?.to_key()?)
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write, color: Color) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut ctx = Ctx {
        format: if cli.json { Format::Json } else { Format::Text },
        color,
        out,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(Failure::Parse(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Silent) => 1,
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    match cmd {
        Command::Product { reps } => {
            let mut acc = GrothElt::unit();
            for r in &reps {
                acc = crate::groth::product(&acc, &key_of(r)?.into());
            }
            ctx.emit(&acc);
        }
        Command::Ss { rep, ordered } => cmd_ss(&rep, ordered, ctx)?,
        Command::Jacquet { rep, k } => {
            let t = coproduct(&key_of(&rep)?.into())?;
            let mut kept = crate::groth::TensorElt::default();
            for (l, r, c) in t.iter() {
                if k.is_none_or(|k| l.degree() == k) {
                    kept.add_term(l.clone(), r.clone(), c);
                }
            }
            ctx.emit(&kept);
        }
        Command::Lfun {
            rep,
            at,
            dual,
            n,
            m,
        } => cmd_lfun(&rep, at.as_deref(), dual, n.zip(m), ctx)?,
        Command::Theta { ranks, rep } => {
            let r = big_theta(ranks.n, ranks.m, &key_of(&rep)?);
            match r {
                Err(Error::RankOrder { .. }) => {
                    // characters with n > m are covered by the character tables
                    let key = key_of(&rep)?;
                    match crate::theta::as_det_character(ranks.n, &key) {
                        Some(x) => ctx.emit(&ext_weil_character(ranks.n, ranks.m, x)?),
                        None => return Err(r.unwrap_err().into()),
                    }
                }
                r => ctx.emit(&r?),
            }
        }
        Command::Ext { ranks, c } => {
            let x = parse_half(&c)?;
            let r = ext_weil_character(ranks.n, ranks.m, x)?;
            if ctx.json() {
                ctx.emit_value(serde_json::json!({
                    "kind": "ext",
                    "n": ranks.n,
                    "m": ranks.m,
                    "x": x.to_json(),
                    "ext": r.ext.as_ref().map(Render::to_json),
                    "theta": r.theta.as_ref().map(Render::to_json),
                }));
            } else {
                let ext = r.ext.map_or("unknown".into(), |e| e.to_text());
                ctx.line(&ext);
            }
        }
        Command::ExtGrid { n_max, m_max } => {
            let mut rows = Vec::new();
            for n in 1..=n_max {
                for m in 1..=m_max {
                    for k in 0..=m {
                        let x = rank_exponent(m, k);
                        let r = ext_weil_character(n, m, x)?;
                        rows.push((n, m, x, r.ext.unwrap_or_default()));
                    }
                }
            }
            if ctx.json() {
                let v: Vec<_> = rows
                    .iter()
                    .map(|(n, m, x, e)| serde_json::json!({"n": n, "m": m, "x": x.to_json(), "ext": e.to_json()}))
                    .collect();
                ctx.emit_value(serde_json::Value::Array(v));
            } else {
                for (n, m, x, e) in rows {
                    ctx.line(&format!("n={n} m={m} x={x}: {e}"));
                }
            }
        }
        Command::Ep { ranks, rep } => {
            ctx.emit(&ep_formula(ranks.n, ranks.m, &key_of(&rep)?));
        }
        Command::Proj { ranks } => {
            let projective = is_projective(ranks.n, ranks.m);
            let bound = proj_dim_bound(ranks.n, ranks.m)?;
            if ctx.json() {
                ctx.emit_value(serde_json::json!({
                    "kind": "projectivity", "n": ranks.n, "m": ranks.m,
                    "projective": projective, "proj_dim_bound": bound,
                }));
            } else {
                ctx.line(&format!(
                    "projective: {projective}\nproj.dim bound: {bound}"
                ));
            }
        }
        Command::Filtration { ranks, k, c } => cmd_filtration(ranks, k, c.as_deref(), ctx)?,
        Command::Enumerate { n, bound, labels } => {
            let bound = parse_half(&bound)?;
            let labels = labels
                .iter()
                .map(|l| parse_label(l))
                .collect::<Result<Vec<CuspidalLabel>, _>>()?;
            let hits = enumerate_both_pole(n, bound, &labels);
            if ctx.json() {
                ctx.emit(&hits);
            } else {
                if !hits.is_empty() {
                    ctx.emit(&hits);
                }
                ctx.line(&format!("{} representation(s)", hits.len()));
            }
        }
        Command::Verify {
            suite,
            seed,
            samples,
            n_max,
            m_max,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut all_ok = true;
            let mut reports = Vec::new();
            for s in suites {
                let d = s.default_params();
                let params = crate::verify::SuiteParams {
                    seed: seed.unwrap_or(d.seed),
                    samples: samples.unwrap_or(d.samples),
                    n_max: n_max.unwrap_or(d.n_max),
                    m_max: m_max.unwrap_or(d.m_max),
                    ..d
                };
                let report = run_suite(s, &params);
                all_ok &= report.passed();
                if !ctx.json() {
                    let text = report.to_text();
                    let code = if report.passed() { "32" } else { "31" };
                    let summary = report.summary();
                    let painted = ctx.color.paint(&summary, code);
                    ctx.line(&text.replacen(&summary, &painted, 1));
                }
                reports.push(report);
            }
            if ctx.json() {
                ctx.emit(&reports);
            }
            if !all_ok {
                return Err(Failure::Silent);
            }
        }
    }
    Ok(())
}

fn cmd_ss(rep: &str, ordered: bool, ctx: &mut Ctx<'_>) -> Result<(), Failure> {
    let expr = parse_rep(rep)?;
    if ordered {
        let factors: Vec<_> = expr
            .atoms
            .iter()
            .map(|a| a.to_key().map(|k| k.factors()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        if factors.len() != 2 {
            return Err(Error::undecidable("--ordered needs exactly two factors").into());
        }
        let r = ss_two_factor(&factors[0], &factors[1])?;
        if ctx.json() {
            let v = match &r {
                TwoFactor::Irreducible(k) => {
                    serde_json::json!({"kind": "two_factor", "irreducible": k.to_json()})
                }
                TwoFactor::Reducible { sub, quotient } => serde_json::json!({
                    "kind": "two_factor", "sub": sub.to_json(), "quotient": quotient.to_json(),
                }),
            };
            ctx.emit_value(v);
        } else {
            match r {
                TwoFactor::Irreducible(k) => ctx.line(&format!("irreducible: {k}")),
                TwoFactor::Reducible { sub, quotient } => {
                    ctx.line(&format!("sub: {sub}\nquotient: {quotient}"))
                }
            }
        }
        return Ok(());
    }
    let g: GrothElt = expr.to_key()?.into();
    ctx.emit(&ss(&g)?);
    Ok(())
}

fn cmd_lfun(
    rep: &str,
    at: Option<&str>,
    dual: bool,
    ranks: Option<(u32, u32)>,
    ctx: &mut Ctx<'_>,
) -> Result<(), Failure> {
    let key = key_of(rep)?;
    let f = if dual {
        lfun_dual(&key)?
    } else {
        gj_lfunction(&key)?
    };
    let s0 = match (at, ranks) {
        (Some(a), _) => Some(parse_half(a)?),
        (None, Some((n, m))) => Some(theta_point(n, m)),
        (None, None) => None,
    };
    let order = s0.map(|s| pole_order_at(&f, s));
    let poles = ranks.map(|(n, m)| both_pole_at(n, m, &key)).transpose()?;
    if ctx.json() {
        let mut v = serde_json::json!({ "kind": "lfun", "lfunction": f.to_json() });
        if let (Some(s), Some(o)) = (s0, order) {
            v["at"] = s.to_json();
            v["pole_order"] = o.into();
        }
        if let Some(p) = poles {
            v["both_pole"] = serde_json::json!({
                "pole_pi": p.pole_pi, "pole_dual": p.pole_dual, "s0": p.s0.to_json(),
            });
        }
        ctx.emit_value(v);
    } else {
        ctx.line(&format!("L(s) = {f}"));
        if let (Some(s), Some(o)) = (s0, order) {
            ctx.line(&format!("pole order at {s}: {o}"));
        }
        if let Some(p) = poles {
            ctx.line(&format!(
                "pole of L(s,pi) at {}: {}\npole of L(s,pi^v) at {}: {}",
                p.s0, p.pole_pi, p.s0, p.pole_dual
            ));
        }
    }
    Ok(())
}

fn cmd_filtration(
    ranks: Ranks,
    k: Option<u32>,
    c: Option<&str>,
    ctx: &mut Ctx<'_>,
) -> Result<(), Failure> {
    let (n, m) = (ranks.n, ranks.m);
    let rank = rank_pieces(n, m);
    let kudla = k.map(|k| kudla_pieces(n, m, k)).transpose()?;
    let x: Option<HalfInt> = c.map(parse_half).transpose()?;
    let tables = x.map(|x| rank_tables(n, m, x)).transpose()?;
    if ctx.json() {
        let mut v =
            serde_json::json!({ "kind": "filtration", "n": n, "m": m, "rank": rank.to_json() });
        if let Some(kp) = &kudla {
            v["kudla"] = kp.to_json();
        }
        if let Some(t) = &tables {
            v["ext"] = t
                .iter()
                .map(|(k, e)| serde_json::json!({ "k": k, "ext": e.to_json() }))
                .collect();
        }
        ctx.emit_value(v);
    } else {
        ctx.emit(&rank);
        if let Some(kp) = &kudla {
            ctx.emit(kp);
        }
        if let Some(t) = tables {
            for (k, e) in t {
                ctx.line(&format!("ext k={k}: {e}"));
            }
        }
    }
    Ok(())
}
