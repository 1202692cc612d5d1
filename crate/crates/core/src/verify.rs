//! Named verification suites: cross-checks between the closed-form theorems
//! and the ring/L-function machinery, run exhaustively or on seeded samples.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exprio::Render;
use crate::filtr::{det_power, ext_rank_piece_character, rank_exponent, ExtTable};
use crate::groth::{
    coassociativity_sides, coproduct, jac_x, key_coproduct, ss, Factor, GrothElt, ReptnKey,
};
use crate::lfun::both_pole_at;
use crate::segments::{CuspidalLabel, FactorKind, HalfInt, Segment};
use crate::theta::{
    both_pole_socle, enumerate_both_pole, ep_formula, ext_weil_character, in_both_pole_range,
    small_theta, BothPoleFamily,
};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Hopf,
    JacquetGrading,
    PoleCharacterization,
    EpConsistency,
    HoweCrosscheck,
    RankVsCharacter,
    LowrankG3,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Hopf,
        Suite::JacquetGrading,
        Suite::PoleCharacterization,
        Suite::EpConsistency,
        Suite::HoweCrosscheck,
        Suite::RankVsCharacter,
        Suite::LowrankG3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::JacquetGrading => "jacquet-grading",
            Suite::PoleCharacterization => "pole-characterization",
            Suite::EpConsistency => "ep-consistency",
            Suite::HoweCrosscheck => "howe-crosscheck",
            Suite::RankVsCharacter => "lemma51-vs-thm17",
            Suite::LowrankG3 => "lowrank-g3",
        }
    }

    /// Default parameters at desk scale.
    pub fn default_params(self) -> SuiteParams {
        let base = SuiteParams {
            seed: DEFAULT_SEED,
            samples: 500,
            n_max: 6,
            m_max: 12,
            x_max: HalfInt::from_int(8),
            bound: HalfInt::from_twice(3),
        };
        match self {
            Suite::PoleCharacterization => SuiteParams {
                n_max: 8,
                m_max: 16,
                ..base
            },
            Suite::RankVsCharacter => SuiteParams {
                n_max: 8,
                m_max: 6,
                ..base
            },
            _ => base,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_owned()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub seed: u64,
    /// Randomized cases for `hopf` and `jacquet-grading`.
    pub samples: u32,
    pub n_max: u32,
    pub m_max: u32,
    /// `|x|` range for `pole-characterization`.
    pub x_max: HalfInt,
    /// Exponent bound for `lowrank-g3`.
    pub bound: HalfInt,
}

/// One counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub expected: String,
    pub actual: String,
    /// `actual - expected` at term level, when both sides are classes.
    pub diff: Option<String>,
    /// A single CLI invocation that reproduces the computation.
    pub command: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let ok = self.cases - self.failures.len().min(self.cases);
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!("{verdict} {ok}/{}", self.cases)
    }
}

impl Render for SuiteReport {
    fn to_text(&self) -> String {
        let mut lines = vec![format!("{}: {}", self.suite, self.summary())];
        for f in &self.failures {
            lines.push(format!("  case {}", f.case));
            lines.push(format!("    expected: {}", f.expected));
            lines.push(format!("    actual:   {}", f.actual));
            if let Some(d) = &f.diff {
                lines.push(format!("    diff:     {d}"));
            }
            lines.push(format!("    rerun:    {}", f.command));
        }
        lines.join("\n")
    }

    fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| {
                json!({
                    "case": f.case,
                    "expected": f.expected,
                    "actual": f.actual,
                    "diff": f.diff,
                    "command": f.command,
                })
            })
            .collect();
        json!({
            "kind": "suite_report",
            "suite": self.suite.name(),
            "cases": self.cases,
            "passed": self.passed(),
            "failures": failures,
        })
    }
}

type Check = std::result::Result<(), Failure>;

fn fail(
    case: impl Into<String>,
    command: impl Into<String>,
    expected: impl fmt::Display,
    actual: impl fmt::Display,
) -> Failure {
    Failure {
        case: case.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        diff: None,
        command: command.into(),
    }
}

fn class_fail(case: String, command: String, expected: &GrothElt, actual: &GrothElt) -> Failure {
    Failure {
        diff: Some((actual - expected).to_string()),
        ..fail(case, command, expected, actual)
    }
}

fn ensure(cond: bool, f: impl FnOnce() -> Failure) -> Check {
    if cond {
        Ok(())
    } else {
        Err(f())
    }
}

fn finish(suite: Suite, results: Vec<Check>) -> SuiteReport {
    SuiteReport {
        suite,
        cases: results.len(),
        failures: results.into_iter().filter_map(|r| r.err()).collect(),
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> SuiteReport {
    match suite {
        Suite::Hopf => hopf(params),
        Suite::JacquetGrading => jacquet_grading(params),
        Suite::PoleCharacterization => pole_characterization(params),
        Suite::EpConsistency => ep_consistency(params),
        Suite::HoweCrosscheck => howe_crosscheck(params),
        Suite::RankVsCharacter => rank_vs_character(params),
        Suite::LowrankG3 => lowrank_g3(params),
    }
}

pub fn run_suite_by_name(name: &str, params: Option<&SuiteParams>) -> Result<SuiteReport> {
    let suite: Suite = name.parse()?;
    let params = params.copied().unwrap_or_else(|| suite.default_params());
    Ok(run_suite(suite, &params))
}

fn random_label(rng: &mut ChaCha8Rng) -> CuspidalLabel {
    match rng.gen_range(0..6) {
        0..=2 => CuspidalLabel::Trivial,
        3 => CuspidalLabel::unramified(3, 1).expect("primitive"),
        4 => CuspidalLabel::ramified("chi").expect("name"),
        _ => CuspidalLabel::cuspidal_with_dual(2, "s", "t").expect("name"),
    }
}

fn random_segment(rng: &mut ChaCha8Rng) -> Segment {
    let rho = random_label(rng);
    let x = rng.gen_range(-6i64..=6);
    let len = rng.gen_range(0i64..3);
    Segment::new(
        rho,
        HalfInt::from_twice(x),
        HalfInt::from_twice(x - 2 * len),
    )
    .expect("valid")
}

fn random_std_key(rng: &mut ChaCha8Rng) -> ReptnKey {
    let count = rng.gen_range(0..=3);
    let factors = (0..count)
        .map(|_| {
            let kind = if rng.gen_bool(0.5) {
                FactorKind::St
            } else {
                FactorKind::Speh
            };
            Factor::new(kind, random_segment(rng))
        })
        .collect();
    ReptnKey::std(factors)
}

fn rep_command(sub: &str, key: &ReptnKey) -> String {
    format!("segcalc {sub} \"{key}\"")
}

fn hopf_case(a: &ReptnKey, b: &ReptnKey) -> Check {
    let case = format!("a = {a}, b = {b}");
    let cmd = rep_command("jacquet", a);
    let err = |e: Error| fail(case.clone(), cmd.clone(), "a decidable coproduct", e);
    let ga: GrothElt = a.clone().into();

    let (left, right) = coassociativity_sides(&ga).map_err(err)?;
    ensure(left == right, || {
        fail(
            case.clone(),
            cmd.clone(),
            format!("{} terms", left.len()),
            format!("{} terms", right.len()),
        )
    })?;

    let t = coproduct(&ga).map_err(err)?;
    for (l, r, _) in t.iter() {
        ensure(l.degree() + r.degree() == a.degree(), || {
            fail(
                case.clone(),
                cmd.clone(),
                a.degree(),
                format!("bidegree ({}, {})", l.degree(), r.degree()),
            )
        })?;
    }
    let counit_left = GrothElt::from_terms(
        t.iter()
            .filter(|(l, ..)| l.is_unit())
            .map(|(_, r, c)| (r.clone(), c)),
    );
    let counit_right = GrothElt::from_terms(
        t.iter()
            .filter(|(_, r, _)| r.is_unit())
            .map(|(l, _, c)| (l.clone(), c)),
    );
    ensure(counit_left == ga, || {
        class_fail(case.clone(), cmd.clone(), &ga, &counit_left)
    })?;
    ensure(counit_right == ga, || {
        class_fail(case.clone(), cmd.clone(), &ga, &counit_right)
    })?;

    let ab = a.times(b);
    ensure(
        ab == b.times(a) && ab.degree() == a.degree() + b.degree(),
        || fail(case.clone(), cmd.clone(), &ab, b.times(a)),
    )?;
    let tab = key_coproduct(&ab).map_err(err)?;
    let mut expected = crate::groth::TensorElt::default();
    for (al, ar, c) in t.iter() {
        for (bl, br, d) in key_coproduct(b).map_err(err)?.iter() {
            expected.add_term(al.times(bl), ar.times(br), c * d);
        }
    }
    ensure(tab == expected, || {
        fail(
            case.clone(),
            rep_command("jacquet", &ab),
            expected.to_text(),
            tab.to_text(),
        )
    })?;

    let dual = a.mvw_dual();
    ensure(dual.mvw_dual() == *a, || {
        fail(case.clone(), cmd.clone(), a, dual.mvw_dual())
    })?;
    ensure(ab.mvw_dual() == dual.times(&b.mvw_dual()), || {
        fail(
            case.clone(),
            cmd.clone(),
            dual.times(&b.mvw_dual()),
            ab.mvw_dual(),
        )
    })
}

fn hopf(p: &SuiteParams) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let cases: Vec<(ReptnKey, ReptnKey)> = (0..p.samples)
        .map(|_| (random_std_key(&mut rng), random_std_key(&mut rng)))
        .collect();
    let results = cases.par_iter().map(|(a, b)| hopf_case(a, b)).collect();
    finish(Suite::Hopf, results)
}

fn jacquet_case(s: &Segment, t: &Segment, c: HalfInt) -> Check {
    let case = format!("segment {s}, other {t}, shift {c}");
    let cmd = rep_command("jacquet", &ReptnKey::st(s.clone()));
    let err = |e: Error| fail(case.clone(), cmd.clone(), "in range", e);
    let d = s.rho().dim();
    let (mut st_points, mut speh_points) = (0, 0);
    for k in 0..=s.degree() {
        let st = s.jacquet_st(k).map_err(err)?;
        let speh = s.jacquet_speh(k).map_err(err)?;
        ensure(
            st.is_some() == (k % d == 0) && speh.is_some() == (k % d == 0),
            || {
                fail(
                    case.clone(),
                    cmd.clone(),
                    "nonzero exactly on the lattice",
                    format!("k = {k}"),
                )
            },
        )?;
        let deg = |x: &Option<Segment>| x.as_ref().map_or(0, Segment::degree);
        if let (Some((sl, sr)), Some((pl, pr))) = (&st, &speh) {
            st_points += 1;
            speh_points += 1;
            ensure(deg(sl) == k && deg(sl) + deg(sr) == s.degree(), || {
                fail(
                    case.clone(),
                    cmd.clone(),
                    format!("bidegree ({k}, {})", s.degree() - k),
                    format!("({}, {})", deg(sl), deg(sr)),
                )
            })?;
            ensure(deg(pl) == k && deg(pl) + deg(pr) == s.degree(), || {
                fail(
                    case.clone(),
                    cmd.clone(),
                    format!("bidegree ({k}, {})", s.degree() - k),
                    format!("({}, {})", deg(pl), deg(pr)),
                )
            })?;
            // the Speh split at the complementary index swaps the St pieces
            let co = s.jacquet_speh(s.degree() - k).map_err(err)?;
            ensure(co == Some((sr.clone(), sl.clone())), || {
                fail(
                    case.clone(),
                    cmd.clone(),
                    format!("{sr:?} | {sl:?}"),
                    format!("{co:?}"),
                )
            })?;
        }
    }
    let expected = s.len() + 1;
    ensure(st_points == expected && speh_points == expected, || {
        fail(
            case.clone(),
            cmd.clone(),
            expected,
            format!("{st_points} St / {speh_points} Speh"),
        )
    })?;
    ensure(s.dual().dual() == *s, || {
        fail(case.clone(), cmd.clone(), s, s.dual().dual())
    })?;
    ensure(
        s.dual().central_exponent(FactorKind::St) == -s.central_exponent(FactorKind::St),
        || {
            fail(
                case.clone(),
                cmd.clone(),
                -s.central_exponent(FactorKind::St),
                s.dual().central_exponent(FactorKind::St),
            )
        },
    )?;
    ensure(
        s.is_linked(t) == t.is_linked(s) && !(s.precedes(t) && t.precedes(s)),
        || {
            fail(
                case.clone(),
                cmd.clone(),
                "symmetric linkage",
                format!("{s} / {t}"),
            )
        },
    )?;
    ensure(s.twist(c).twist(-c) == *s, || {
        fail(case.clone(), cmd.clone(), s, s.twist(c).twist(-c))
    })?;
    let key = ReptnKey::st(s.clone());
    ensure(key.mvw_dual().mvw_dual() == key, || {
        fail(case.clone(), cmd.clone(), &key, key.mvw_dual().mvw_dual())
    })
}

fn jacquet_grading(p: &SuiteParams) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let cases: Vec<(Segment, Segment, HalfInt)> = (0..p.samples)
        .map(|_| {
            let s = random_segment(&mut rng);
            let t = random_segment(&mut rng);
            (s, t, HalfInt::from_twice(rng.gen_range(-6..=6)))
        })
        .collect();
    let results = cases
        .par_iter()
        .map(|(s, t, c)| jacquet_case(s, t, *c))
        .collect();
    finish(Suite::JacquetGrading, results)
}

/// The set where `|det_n|^x` has both poles at `s0`: for `n ≤ m` the
/// `m ≤ 2n-2, 1+m-n ≤ k ≤ n-1` range, for `n > m` the range `0 ≤ k ≤ m`.
pub fn expected_both_pole(n: u32, m: u32, x: HalfInt) -> bool {
    if n <= m {
        in_both_pole_range(n, m, x).is_some()
    } else {
        let k = (x + HalfInt::from_twice(m as i64)).to_int();
        matches!(k, Some(k) if 0 <= k && k <= m as i64)
    }
}

fn pole_characterization(p: &SuiteParams) -> SuiteReport {
    let tx = p.x_max.twice();
    let grid: Vec<(u32, u32, HalfInt)> = (1..=p.n_max)
        .flat_map(|n| {
            (1..=p.m_max).flat_map(move |m| (-tx..=tx).map(move |t| (n, m, HalfInt::from_twice(t))))
        })
        .collect();
    let results = grid
        .par_iter()
        .map(|&(n, m, x)| {
            let eta = det_power(n, x);
            let cmd = format!(
                "segcalc lfun \"char({n},{x})\" --at {} --n {n} --m {m}",
                crate::lfun::theta_point(n, m)
            );
            let case = format!("n={n} m={m} x={x}");
            let got = both_pole_at(n, m, &eta)
                .map_err(|e| fail(case.clone(), cmd.clone(), "decidable", e))?;
            let want = expected_both_pole(n, m, x);
            ensure(got.both() == want, || fail(case, cmd, want, got.both()))
        })
        .collect();
    finish(Suite::PoleCharacterization, results)
}

/// Admissible `(n, m, k)` of the character both-pole range.
pub fn both_pole_grid(n_max: u32, m_max: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for m in n..=m_max.min(2 * n - 2) {
            for k in (1 + m - n)..n {
                out.push((n, m, k));
            }
        }
    }
    out
}

fn ext_command(n: u32, m: u32, x: HalfInt) -> String {
    format!("segcalc ext --n {n} --m {m} --char {x}")
}

fn ep_case(n: u32, m: u32, k: u32) -> Check {
    let x = rank_exponent(m, k);
    let case = format!("n={n} m={m} k={k} x={x}");
    let cmd = ext_command(n, m, x);
    let err = |e: Error| fail(case.clone(), cmd.clone(), "decidable", e);
    let r = ext_weil_character(n, m, x).map_err(err)?;
    let ext = r.ext.clone().unwrap_or_default();
    let ext0 = ss(&ext.get(0)).map_err(err)?;
    let lhs = &ext0 - &ext.get(1);
    let eta = det_power(n, x);
    let ep = ep_formula(n, m, &eta);
    let rhs = ss(&ep).map_err(err)?;
    ensure(lhs == rhs, || {
        class_fail(case.clone(), cmd.clone(), &rhs, &lhs)
    })?;
    ensure(r.ep == ep, || {
        class_fail(case.clone(), cmd.clone(), &ep, &r.ep)
    })?;
    // the rank filtration gives the same Euler characteristic
    let filt = crate::filtr::filtration_euler_characteristic(n, m, x).map_err(err)?;
    let filt = ss(&filt).map_err(err)?;
    ensure(filt == rhs, || {
        class_fail(
            case,
            format!("segcalc filtration --n {n} --m {m} --char {x}"),
            &rhs,
            &filt,
        )
    })
}

fn ep_consistency(p: &SuiteParams) -> SuiteReport {
    let grid = both_pole_grid(p.n_max, p.m_max);
    let results = grid.par_iter().map(|&(n, m, k)| ep_case(n, m, k)).collect();
    finish(Suite::EpConsistency, results)
}

fn howe_case(n: u32, m: u32, k: u32) -> Check {
    let x = rank_exponent(m, k);
    let case = format!("n={n} m={m} k={k} x={x}");
    let cmd = ext_command(n, m, x);
    let err = |e: Error| fail(case.clone(), cmd.clone(), "decidable", e);
    let socle = both_pole_socle(n, m, k).map_err(err)?;
    let eta = det_power(n, x);
    let theta = small_theta(n, m, &eta).map_err(err)?;
    let want = theta.mvw_dual();
    ensure(socle == want, || {
        fail(case.clone(), cmd.clone(), &want, &socle)
    })?;
    // the socle is 1_{m-n} × |det_n|^{k-m/2} ...
    let named = det_power(m - n, HalfInt::ZERO).times(&eta);
    let named = ss(&named.into()).map_err(err)?;
    ensure(named == socle.clone().into(), || {
        fail(case.clone(), cmd.clone(), &named, &socle)
    })?;
    // ... and Jac along |·|^{k+(1-n-m)/2} strips one point off the character
    let e = HalfInt::from_twice(2 * k as i64 + 1 - n as i64 - m as i64);
    let jac = jac_x(
        &det_power(m - n, HalfInt::ZERO).times(&eta).into(),
        &CuspidalLabel::Trivial,
        e,
    )
    .map_err(err)?;
    let want: GrothElt = det_power(m - n, HalfInt::ZERO)
        .times(&det_power(n - 1, x + HalfInt::HALF))
        .into();
    ensure(jac == want, || class_fail(case, cmd, &want, &jac))
}

fn howe_crosscheck(p: &SuiteParams) -> SuiteReport {
    let grid = both_pole_grid(p.n_max, p.m_max);
    let results = grid
        .par_iter()
        .map(|&(n, m, k)| howe_case(n, m, k))
        .collect();
    finish(Suite::HoweCrosscheck, results)
}

fn rank_vs_character_case(n: u32, m: u32, k: u32) -> Check {
    let x = rank_exponent(m, k);
    let case = format!("n={n} m={m} k={k} x={x}");
    let cmd = format!("segcalc filtration --n {n} --m {m} --char {x}");
    let err = |e: Error| fail(case.clone(), cmd.clone(), "decidable", e);
    let piece = ext_rank_piece_character(n, m, k, x).map_err(err)?;
    let table = ext_weil_character(n, m, x)
        .map_err(err)?
        .ext
        .unwrap_or_default();
    let degrees: Vec<u32> = piece.iter().map(|(i, _)| i).collect();
    ensure(degrees == [0, 1], || {
        fail(
            case.clone(),
            cmd.clone(),
            "degrees [0, 1]",
            format!("{degrees:?}"),
        )
    })?;
    ensure(piece.get(0) == piece.get(1), || {
        class_fail(case.clone(), cmd.clone(), &piece.get(0), &piece.get(1))
    })?;
    ensure(piece == table, || {
        fail(case, ext_command(n, m, x), &table, &piece)
    })
}

fn rank_vs_character(p: &SuiteParams) -> SuiteReport {
    let grid: Vec<(u32, u32, u32)> = (1..=p.n_max)
        .flat_map(|n| (1..n.min(p.m_max + 1)).flat_map(move |m| (0..=m).map(move |k| (n, m, k))))
        .collect();
    let results = grid
        .par_iter()
        .map(|&(n, m, k)| rank_vs_character_case(n, m, k))
        .collect();
    finish(Suite::RankVsCharacter, results)
}

/// The low-rank families, written out independently of the search.
pub fn expected_low_rank(n: u32, extra: &[CuspidalLabel]) -> Vec<(ReptnKey, BothPoleFamily)> {
    let pt = |t: i64| Segment::point(CuspidalLabel::Trivial, HalfInt::from_twice(t));
    let seg = |x: i64, y: i64| {
        Segment::trivial(HalfInt::from_twice(x), HalfInt::from_twice(y)).expect("valid")
    };
    let mut out = Vec::new();
    match n {
        2 => out.push((
            ReptnKey::irr_l(vec![pt(1), pt(-1)]),
            BothPoleFamily::TrivialRankTwo,
        )),
        3 => {
            for c in [3, -3] {
                out.push((
                    ReptnKey::irr_l(vec![pt(c), pt(1), pt(-1)]),
                    BothPoleFamily::Character,
                ));
            }
            let mut chis: Vec<Segment> = [-2, -1, 0, 1, 2].into_iter().map(pt).collect();
            chis.extend(
                extra
                    .iter()
                    .filter(|r| r.dim() == 1)
                    .map(|r| Segment::point(r.clone(), HalfInt::ZERO)),
            );
            for chi in chis {
                out.push((
                    ReptnKey::irr_l(vec![chi, pt(1), pt(-1)]),
                    BothPoleFamily::CharTimesTrivial,
                ));
            }
            out.push((
                ReptnKey::irr_l(vec![seg(3, 1), pt(-1)]),
                BothPoleFamily::SegmentAndPoint,
            ));
            out.push((
                ReptnKey::irr_l(vec![pt(1), seg(-1, -3)]),
                BothPoleFamily::SegmentAndPoint,
            ));
        }
        _ => {}
    }
    out.sort();
    out
}

fn lowrank_g3(p: &SuiteParams) -> SuiteReport {
    let chi = CuspidalLabel::ramified("chi").expect("name");
    let runs: Vec<(u32, Vec<CuspidalLabel>)> = vec![(1, vec![]), (2, vec![]), (3, vec![chi])];
    let results = runs
        .iter()
        .map(|(n, extra)| {
            let labels: Vec<String> = extra.iter().map(|l| format!(" --label {l}")).collect();
            let cmd = format!(
                "segcalc enumerate --n {n} --bound {}{}",
                p.bound,
                labels.concat()
            );
            let mut got: Vec<(ReptnKey, BothPoleFamily)> = enumerate_both_pole(*n, p.bound, extra)
                .into_iter()
                .map(|h| (h.key, h.family))
                .collect();
            got.sort();
            let want = expected_low_rank(*n, extra);
            let show = |v: &[(ReptnKey, BothPoleFamily)]| {
                v.iter()
                    .map(|(k, f)| format!("{k} [{f}]"))
                    .collect::<Vec<_>>()
                    .join("; ")
            };
            ensure(got == want, || {
                fail(
                    format!("n={n} bound={}", p.bound),
                    cmd,
                    show(&want),
                    show(&got),
                )
            })
        })
        .collect();
    finish(Suite::LowrankG3, results)
}

/// Ext tables of every rank piece against `|det_n|^x`.
pub fn rank_tables(n: u32, m: u32, x: HalfInt) -> Result<Vec<(u32, ExtTable)>> {
    (0..=n.min(m))
        .map(|k| Ok((k, ext_rank_piece_character(n, m, k, x)?)))
        .collect()
}
