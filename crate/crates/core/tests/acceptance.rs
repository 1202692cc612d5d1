//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use segcalc::cli::{run, Color};
use segcalc::groth::{GrothElt, ReptnKey};
use segcalc::segments::{CuspidalLabel, HalfInt, Segment};
use segcalc::theta::{
    big_theta, enumerate_both_pole, is_projective, proj_dim_bound, BothPoleFamily, Irreducibility,
};
use segcalc::verify::{run_suite, Suite, SuiteReport};

type Check = Box<dyn Fn() -> Outcome>;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pt(t: i64) -> Segment {
    Segment::point(CuspidalLabel::Trivial, HalfInt::from_twice(t))
}

fn seg(x: i64, y: i64) -> Segment {
    Segment::trivial(HalfInt::from_twice(x), HalfInt::from_twice(y)).unwrap()
}

fn suite(s: Suite) -> SuiteReport {
    run_suite(s, &s.default_params())
}

fn suite_outcome(r: &SuiteReport, min_cases: usize) -> Outcome {
    Outcome {
        ok: r.passed() && r.cases >= min_cases,
        detail: format!("{} {}", r.suite, r.summary()),
    }
}

fn theta_two_two() -> Outcome {
    let trivial = ReptnKey::trivial(2);
    let r = big_theta(2, 2, &trivial).unwrap();
    let expected = GrothElt::from_key(ReptnKey::std(vec![
        segcalc::groth::Factor::speh(pt(1)),
        segcalc::groth::Factor::speh(pt(-1)),
    ]));
    let st2 = GrothElt::from_key(ReptnKey::st(seg(1, -1)));
    let ext1 = r.ext.as_ref().map(|e| e.get(1));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        [
            "segcalc",
            "theta",
            "--n",
            "2",
            "--m",
            "2",
            "--rep",
            "char(2,0)",
        ],
        &mut out,
        &mut err,
        Color::Never,
    );
    let text = String::from_utf8(out).unwrap();
    let ok = r.theta.as_ref() == Some(&expected)
        && r.irreducible == Irreducibility::No
        && ext1.as_ref() == Some(&st2)
        && code == 0
        && text.contains("theta: Speh[1/2,1/2] x Speh[-1/2,-1/2]")
        && text.contains("irreducible: false");
    Outcome {
        ok,
        detail: format!("theta = {}, Ext^1 = {}", expected, st2),
    }
}

fn low_rank() -> Outcome {
    let ram = CuspidalLabel::ramified("chi").unwrap();
    let bound = HalfInt::from_twice(3);
    let g3 = enumerate_both_pole(3, bound, std::slice::from_ref(&ram));
    let families: BTreeSet<BothPoleFamily> = g3.iter().map(|h| h.family).collect();
    let want: BTreeSet<BothPoleFamily> = [
        BothPoleFamily::Character,
        BothPoleFamily::CharTimesTrivial,
        BothPoleFamily::SegmentAndPoint,
    ]
    .into();
    let g2: Vec<ReptnKey> = enumerate_both_pole(2, bound, &[])
        .into_iter()
        .map(|h| h.key)
        .collect();
    let g1_empty = [HalfInt::ZERO, bound, HalfInt::from_int(4)]
        .iter()
        .all(|b| enumerate_both_pole(1, *b, std::slice::from_ref(&ram)).is_empty());
    let report = suite(Suite::LowrankG3);
    let ok = families == want && g2 == vec![ReptnKey::trivial(2)] && g1_empty && report.passed();
    Outcome {
        ok,
        detail: format!(
            "G_3: {} hits in {} families, G_2: {:?}",
            g3.len(),
            families.len(),
            g2.iter().map(ToString::to_string).collect::<Vec<_>>()
        ),
    }
}

fn hopf_jacquet() -> Outcome {
    let h = suite(Suite::Hopf);
    let j = suite(Suite::JacquetGrading);
    Outcome {
        ok: h.passed() && j.passed() && h.cases >= 500 && j.cases >= 500,
        detail: format!("{} {}; {} {}", h.suite, h.summary(), j.suite, j.summary()),
    }
}

fn projectivity() -> Outcome {
    let grid_ok = (1..=20u32).all(|n| (1..=20u32).all(|m| is_projective(n, m) == (m + 1 >= 2 * n)));
    let b56 = proj_dim_bound(5, 6).ok();
    let b44 = proj_dim_bound(4, 4).ok();
    Outcome {
        ok: grid_ok && b56 == Some(2) && b44 == Some(1),
        detail: format!("grid agrees: {grid_ok}, bound(5,6) = {b56:?}, bound(4,4) = {b44:?}"),
    }
}

fn main() {
    let criteria: Vec<(u32, Duration, Check)> = vec![
        (1, Duration::from_secs(1), Box::new(theta_two_two)),
        (
            2,
            Duration::from_secs(10),
            Box::new(|| suite_outcome(&suite(Suite::PoleCharacterization), 8 * 16 * 33)),
        ),
        (
            3,
            Duration::from_secs(10),
            Box::new(|| suite_outcome(&suite(Suite::EpConsistency), 35)),
        ),
        (
            4,
            Duration::from_secs(10),
            Box::new(|| suite_outcome(&suite(Suite::HoweCrosscheck), 35)),
        ),
        (
            5,
            Duration::from_secs(5),
            Box::new(|| suite_outcome(&suite(Suite::RankVsCharacter), 104)),
        ),
        (6, Duration::from_secs(5), Box::new(low_rank)),
        (7, Duration::from_secs(30), Box::new(hopf_jacquet)),
        (8, Duration::from_secs(1), Box::new(projectivity)),
    ];
    let mut failed = 0;
    for (id, limit, check) in &criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let ok = outcome.ok && elapsed < *limit;
        failed += usize::from(!ok);
        println!(
            "criterion {id}: {} ({:.3}s, limit {}s) {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            outcome.detail
        );
    }
    if failed > 0 {
        eprintln!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
