//! Theta lifts for the type II dual pair `(G_n, H_m) = (GL_n, GL_m)`.
//!
//! Everything here is a closed-form recipe: small theta from Langlands data,
//! big theta when one of `L(s,π)`, `L(s,π^∨)` is holomorphic at
//! `s0 = (1+m-n)/2`, full Ext tables for characters, the Euler–Poincaré
//! class, projectivity, and the low-rank both-pole enumeration.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::filtr::{det_power, rank_exponent, rank_piece_class, ExtTable};
use crate::groth::{ss_two_factor, Factor, GrothElt, ReptnKey, TwoFactor};
use crate::lfun::{both_pole_at, theta_point};
use crate::segments::{CuspidalLabel, HalfInt, Segment};

/// Which ordered product the class `theta` stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderHint {
    /// `1_{m-n} × π^∨`
    TrivialLeft,
    /// `π^∨ × 1_{m-n}`
    TrivialRight,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Yes,
    No,
    Unknown,
}

/// The closed form a result was read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// One L-function holomorphic at `s0`.
    Holomorphic,
    /// Character, `n ≤ m`, both L-functions singular at `s0`.
    CharacterBothPole,
    /// Character, `n > m`.
    CharacterLowRank,
    /// Both L-functions singular at `s0` and `π` not a character.
    NotCovered,
}

impl fmt::Display for OrderHint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderHint::TrivialLeft => "trivial-block-left",
            OrderHint::TrivialRight => "trivial-block-right",
            OrderHint::Symmetric => "symmetric",
        })
    }
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Irreducibility::Yes => "true",
            Irreducibility::No => "false",
            Irreducibility::Unknown => "unknown",
        })
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Holomorphic => "holomorphic",
            Source::CharacterBothPole => "character-both-pole",
            Source::CharacterLowRank => "character-low-rank",
            Source::NotCovered => "not-covered",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaResult {
    pub n: u32,
    pub m: u32,
    /// Class of `Θ_{n,m}(π)`; `None` when the engine does not know it.
    pub theta: Option<GrothElt>,
    pub order_hint: OrderHint,
    pub irreducible: Irreducibility,
    /// `Ext^i(ω_{n,m}, π)_sm`; `None` when unknown.
    pub ext: Option<ExtTable>,
    pub source: Source,
    /// Euler–Poincaré class `Σ (-1)^i [Ext^i]`.
    pub ep: GrothElt,
    /// `ss Θ = π^∨ × 1_{m-n}`, attached in the range `m ≥ 2n - 1`.
    pub stable_range_ss: Option<GrothElt>,
    /// Whether `π` is tempered, when its Langlands data is known.
    pub tempered: Option<bool>,
}

/// All segments centred at zero.
pub fn is_tempered(data: &[Segment]) -> bool {
    data.iter().all(|s| s.x() + s.y() == HalfInt::ZERO)
}

fn check_rank(n: u32, m: u32) -> Result<()> {
    if n > m {
        Err(Error::RankOrder { n, m })
    } else {
        Ok(())
    }
}

/// Langlands data of `θ_{n,m}(π)`.
pub fn small_theta(n: u32, m: u32, pi: &ReptnKey) -> Result<ReptnKey> {
    check_rank(n, m)?;
    check_degree(n, pi)?;
    let top = HalfInt::from_twice(m as i64 - n as i64 - 1);
    let mut data: Vec<Segment> = (0..(m - n) as i64)
        .map(|j| Segment::point(CuspidalLabel::Trivial, -top + HalfInt::from_int(j)))
        .collect();
    data.extend(pi.to_l_data()?.iter().map(Segment::dual));
    Ok(ReptnKey::irr_l(data))
}

fn check_degree(n: u32, pi: &ReptnKey) -> Result<()> {
    if pi.degree() != n {
        return Err(Error::InvalidSegment(format!(
            "{pi} has degree {}, expected {n}",
            pi.degree()
        )));
    }
    Ok(())
}

/// `[π × 1_{m-n}]` if `n ≤ m`, else 0.
pub fn ep_formula(n: u32, m: u32, pi: &ReptnKey) -> GrothElt {
    if n > m {
        return GrothElt::zero();
    }
    pi.times(&det_power(m - n, HalfInt::ZERO)).into()
}

pub fn is_projective(n: u32, m: u32) -> bool {
    m as i64 >= 2 * n as i64 - 1
}

/// Upper bound for the projective dimension of `ω_{n,m}` (`n ≤ m`).
pub fn proj_dim_bound(n: u32, m: u32) -> Result<u32> {
    check_rank(n, m)?;
    if is_projective(n, m) {
        return Ok(0);
    }
    let bound = (HalfInt::from_int(n as i64) - HalfInt::from_twice(m as i64 + 1)).ceil() as u32;
    Ok(if n <= 4 { bound.min(1) } else { bound })
}

/// The exponent `x` when `π = |det_n|^x` on the trivial line.
pub fn as_det_character(n: u32, pi: &ReptnKey) -> Option<HalfInt> {
    match pi {
        ReptnKey::IrrZ(s) if s.len() == 1 && s[0].rho().is_trivial() && s[0].degree() == n => {
            Some(s[0].central_exponent(crate::segments::FactorKind::Speh))
        }
        _ => None,
    }
}

/// `Θ_{n,m}(π)` for `n ≤ m`.
pub fn big_theta(n: u32, m: u32, pi: &ReptnKey) -> Result<ThetaResult> {
    check_rank(n, m)?;
    check_degree(n, pi)?;
    let poles = both_pole_at(n, m, pi)?;
    let data = pi.to_l_data()?;
    let trivial = det_power(m - n, HalfInt::ZERO);
    let dual = pi.mvw_dual();
    let ep = ep_formula(n, m, pi);
    let stable_range_ss = (m + 1 >= 2 * n).then(|| dual.times(&trivial).into());
    let tempered = Some(is_tempered(&data));

    if poles.pole_pi && poles.pole_dual {
        if let Some(x) = as_det_character(n, pi) {
            return ext_weil_character(n, m, x);
        }
        return Ok(ThetaResult {
            n,
            m,
            theta: None,
            order_hint: OrderHint::Symmetric,
            irreducible: Irreducibility::Unknown,
            ext: None,
            source: Source::NotCovered,
            ep,
            stable_range_ss,
            tempered,
        });
    }
    let (order_hint, irreducible) = match (poles.pole_pi, poles.pole_dual) {
        (false, false) => (OrderHint::Symmetric, Irreducibility::Yes),
        (false, true) => (OrderHint::TrivialLeft, Irreducibility::Unknown),
        _ => (OrderHint::TrivialRight, Irreducibility::Unknown),
    };
    // an irreducible product is its own Langlands quotient
    let theta: GrothElt = if irreducible == Irreducibility::Yes {
        small_theta(n, m, pi)?.into()
    } else {
        trivial.times(&dual).into()
    };
    Ok(ThetaResult {
        n,
        m,
        ext: Some(ExtTable::from_entries([(0, theta.mvw_dual())])),
        theta: Some(theta),
        order_hint,
        irreducible,
        source: Source::Holomorphic,
        ep,
        stable_range_ss,
        tempered,
    })
}

/// The Speh pair `(|det_{m-k}|^{(k-n)/2}, |det_k|^{(n-m+k)/2})` as segments.
pub fn both_pole_segments(n: u32, m: u32, k: u32) -> (Segment, Segment) {
    let seg = |key: ReptnKey| match key {
        ReptnKey::IrrZ(mut s) => s.remove(0),
        _ => unreachable!("characters are single Zelevinsky segments"),
    };
    let (n, m, k) = (n as i64, m as i64, k as i64);
    let a = det_power((m - k) as u32, HalfInt::from_twice(k - n));
    let b = det_power(k as u32, HalfInt::from_twice(n - m + k));
    (seg(a), seg(b))
}

/// `k` with `x = k - m/2`, if integral and in `lo..=hi`.
fn rank_index(m: u32, x: HalfInt, lo: i64, hi: i64) -> Option<u32> {
    let k = (x + HalfInt::from_twice(m as i64)).to_int()?;
    (lo <= k && k <= hi).then_some(k as u32)
}

/// Whether `(n, m, x)` lies in the both-pole range `m ≤ 2n-2`, `x = k - m/2`,
/// `1+m-n ≤ k ≤ n-1`.
pub fn in_both_pole_range(n: u32, m: u32, x: HalfInt) -> Option<u32> {
    if n > m || m + 2 > 2 * n {
        return None;
    }
    rank_index(m, x, 1 + m as i64 - n as i64, n as i64 - 1)
}

/// `Ext^*(ω_{n,m}, |det_n|^x)` and `Θ_{n,m}(|det_n|^x)`, both rank orders.
pub fn ext_weil_character(n: u32, m: u32, x: HalfInt) -> Result<ThetaResult> {
    if n == 0 {
        return Err(Error::InvalidSegment("n must be positive".into()));
    }
    let eta = det_power(n, x);
    let ep = ep_formula(n, m, &eta);
    if n > m {
        let hit = rank_index(m, x, 0, m as i64);
        let (theta, ext) = match hit {
            Some(k) => {
                let c: GrothElt = rank_piece_class(n, m, k).into();
                (
                    c.mvw_dual(),
                    ExtTable::from_entries([(0, c.clone()), (1, c)]),
                )
            }
            None => (GrothElt::zero(), ExtTable::new()),
        };
        return Ok(ThetaResult {
            n,
            m,
            irreducible: if hit.is_some() {
                Irreducibility::Yes
            } else {
                Irreducibility::No
            },
            theta: Some(theta),
            order_hint: OrderHint::Symmetric,
            ext: Some(ext),
            source: Source::CharacterLowRank,
            ep,
            stable_range_ss: None,
            tempered: Some(x == HalfInt::ZERO && n == 1),
        });
    }
    let Some(k) = in_both_pole_range(n, m, x) else {
        return big_theta(n, m, &eta);
    };
    let (da, db) = both_pole_segments(n, m, k);
    let ext0 = ReptnKey::std(vec![Factor::speh(da.clone()), Factor::speh(db.clone())]);
    let ext1 = match ss_two_factor(&Factor::speh(da), &Factor::speh(db))? {
        TwoFactor::Reducible { quotient, .. } => quotient,
        TwoFactor::Irreducible(_) => {
            return Err(Error::undecidable(format!(
                "unlinked Speh pair for n={n}, m={m}, k={k}"
            )))
        }
    };
    let ext0: GrothElt = ext0.into();
    Ok(ThetaResult {
        n,
        m,
        theta: Some(ext0.mvw_dual()),
        order_hint: OrderHint::Symmetric,
        irreducible: Irreducibility::No,
        ext: Some(ExtTable::from_entries([(0, ext0), (1, ext1.into())])),
        source: Source::CharacterBothPole,
        ep,
        stable_range_ss: None,
        tempered: Some(false),
    })
}

/// The socle of `Ext^0(ω_{n,m}, |det_n|^{k-m/2})` in the both-pole range.
pub fn both_pole_socle(n: u32, m: u32, k: u32) -> Result<ReptnKey> {
    let (da, db) = both_pole_segments(n, m, k);
    match ss_two_factor(&Factor::speh(da), &Factor::speh(db))? {
        TwoFactor::Reducible { sub, .. } => Ok(sub),
        TwoFactor::Irreducible(k) => Ok(k),
    }
}

/// Shape of a both-pole representation of `G_3` (and `1_2` for `G_2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BothPoleFamily {
    /// `1_2`.
    TrivialRankTwo,
    /// `|det_3|^{±1/2}`.
    Character,
    /// `χ × 1_2` with `χ` a character of `G_1`.
    CharTimesTrivial,
    /// `LQ(St[3/2,1/2] × |·|^{-1/2})` or `LQ(|·|^{1/2} × St[-1/2,-3/2])`.
    SegmentAndPoint,
    Other,
}

impl fmt::Display for BothPoleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BothPoleFamily::TrivialRankTwo => "trivial-rank-two",
            BothPoleFamily::Character => "character",
            BothPoleFamily::CharTimesTrivial => "char-times-trivial",
            BothPoleFamily::SegmentAndPoint => "segment-and-point",
            BothPoleFamily::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BothPoleHit {
    /// Langlands data in canonical order.
    pub data: Vec<Segment>,
    pub key: ReptnKey,
    pub family: BothPoleFamily,
}

fn classify(n: u32, data: &[Segment]) -> BothPoleFamily {
    let half = HalfInt::HALF;
    let is_pt = |s: &Segment, e: HalfInt| s.is_singleton() && s.rho().is_trivial() && s.x() == e;
    match n {
        2 if data.len() == 2 && is_pt(&data[0], half) && is_pt(&data[1], -half) => {
            BothPoleFamily::TrivialRankTwo
        }
        3 if data.iter().all(Segment::is_singleton) => {
            let chain = data.len() == 3
                && data.iter().all(|s| s.rho().is_trivial())
                && data[0].x() - data[2].x() == HalfInt::from_int(2)
                && data[0].x() - data[1].x() == HalfInt::ONE;
            if chain {
                BothPoleFamily::Character
            } else if data.iter().filter(|s| s.rho().dim() == 1).count() == 3 {
                BothPoleFamily::CharTimesTrivial
            } else {
                BothPoleFamily::Other
            }
        }
        3 if data.len() == 2 => BothPoleFamily::SegmentAndPoint,
        _ => BothPoleFamily::Other,
    }
}

/// Candidate segments of degree at most `n`: trivial-line segments with both
/// ends in `[-bound, bound]`, and one formal point at exponent 0 per extra label.
fn candidate_segments(n: u32, bound: HalfInt, extra: &[CuspidalLabel]) -> Vec<Segment> {
    let b = bound.twice().max(0);
    let mut out = Vec::new();
    for x in -b..=b {
        for len in 0..n as i64 {
            let y = x - 2 * len;
            if y < -b {
                break;
            }
            let s =
                Segment::trivial(HalfInt::from_twice(x), HalfInt::from_twice(y)).expect("valid");
            out.push(s);
        }
    }
    let labels: BTreeSet<&CuspidalLabel> = extra.iter().collect();
    for rho in labels {
        if rho.dim() <= n {
            out.push(Segment::point(rho.clone(), HalfInt::ZERO));
        }
    }
    out.sort();
    out
}

/// Multisets (non-decreasing index sequences) of candidates of total degree `n`.
fn multisets(
    cands: &[Segment],
    start: usize,
    left: u32,
    acc: &mut Vec<Segment>,
    out: &mut Vec<Vec<Segment>>,
) {
    if left == 0 {
        out.push(acc.clone());
        return;
    }
    for i in start..cands.len() {
        let d = cands[i].degree();
        if d <= left {
            acc.push(cands[i].clone());
            multisets(cands, i, left - d, acc, out);
            acc.pop();
        }
    }
}

/// Irreducibles of `G_n` whose L-functions `L(s,π)` and `L(s,π^∨)` both have a
/// pole at `s = 1/2`.
pub fn enumerate_both_pole(n: u32, bound: HalfInt, extra: &[CuspidalLabel]) -> Vec<BothPoleHit> {
    let cands = candidate_segments(n, bound, extra);
    let mut hits: Vec<BothPoleHit> = (0..cands.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let d = cands[first].degree();
            if d <= n {
                let mut acc = vec![cands[first].clone()];
                multisets(&cands, first, n - d, &mut acc, &mut found);
            }
            found
        })
        .filter_map(|data| {
            let key = ReptnKey::irr_l(data.clone());
            let poles = both_pole_at(n, n, &key).ok()?;
            poles.both().then(|| {
                let mut data = data;
                data.sort();
                BothPoleHit {
                    family: classify(n, &data),
                    data,
                    key,
                }
            })
        })
        .collect();
    hits.sort();
    hits
}

/// `s0 = (1+m-n)/2`.
pub fn s0(n: u32, m: u32) -> HalfInt {
    theta_point(n, m)
}

/// `x = k - m/2`.
pub fn character_exponent(m: u32, k: u32) -> HalfInt {
    rank_exponent(m, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groth::ss;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn seg(x: i64, y: i64) -> Segment {
        Segment::trivial(h(x), h(y)).unwrap()
    }

    fn pt(x: i64) -> Segment {
        seg(x, x)
    }

    fn chr(t: i64) -> ReptnKey {
        det_power(1, h(t))
    }

    #[test]
    fn small_theta_examples() {
        let one2 = ReptnKey::irr_l(vec![pt(1), pt(-1)]);
        assert_eq!(
            small_theta(2, 3, &one2).unwrap(),
            ReptnKey::irr_l(vec![pt(0), pt(-1), pt(1)])
        );
        assert_eq!(
            small_theta(1, 2, &ReptnKey::trivial(1)).unwrap(),
            ReptnKey::IrrL(vec![pt(0), pt(0)])
        );
        assert_eq!(
            small_theta(2, 2, &ReptnKey::st(seg(3, 1))).unwrap(),
            ReptnKey::st(seg(-1, -3))
        );
        assert_eq!(
            small_theta(3, 2, &ReptnKey::trivial(3)),
            Err(Error::RankOrder { n: 3, m: 2 })
        );
    }

    #[test]
    fn theta_of_trivial_rank_two() {
        let r = big_theta(2, 2, &ReptnKey::trivial(2)).unwrap();
        assert_eq!(r.theta, Some(chr(1).times(&chr(-1)).into()));
        assert_eq!(r.irreducible, Irreducibility::No);
        let ext = r.ext.unwrap();
        assert_eq!(ext.get(1), ReptnKey::st(seg(1, -1)).into());
        assert_eq!(ext.get(0), chr(-1).times(&chr(1)).into());
    }

    #[test]
    fn theta_holomorphic_cases() {
        let r = big_theta(2, 3, &ReptnKey::trivial(2)).unwrap();
        assert_eq!(
            r.theta,
            Some(ReptnKey::irr_l(vec![pt(1), pt(0), pt(-1)]).into())
        );
        assert_eq!(r.irreducible, Irreducibility::Yes);
        assert_eq!(r.source, Source::Holomorphic);
        let st3 = ReptnKey::st(seg(2, -2));
        let r = big_theta(3, 3, &st3).unwrap();
        assert_eq!(r.theta, Some(st3.into()));
        assert_eq!(r.irreducible, Irreducibility::Yes);
        assert_eq!(r.tempered, Some(true));
    }

    #[test]
    fn theta_order_hints() {
        // L(s, |·|^{-1/2}) has its pole at 1/2, the dual does not
        let r = big_theta(1, 1, &chr(-1)).unwrap();
        assert_eq!(r.order_hint, OrderHint::TrivialRight);
        let r = big_theta(1, 1, &chr(1)).unwrap();
        assert_eq!(r.order_hint, OrderHint::TrivialLeft);
        assert_eq!(r.theta, Some(chr(-1).into()));
    }

    #[test]
    fn not_covered() {
        // LQ(St[3/2,1/2] × |·|^{-1/2}) has both poles at 1/2
        let pi = ReptnKey::irr_l(vec![seg(3, 1), pt(-1)]);
        let r = big_theta(3, 3, &pi).unwrap();
        assert_eq!(r.source, Source::NotCovered);
        assert_eq!(r.theta, None);
        assert_eq!(r.ep, pi.into());
    }

    #[test]
    fn character_tables() {
        let r = ext_weil_character(2, 2, h(0)).unwrap();
        assert_eq!(r.source, Source::CharacterBothPole);
        let r = ext_weil_character(3, 2, h(0)).unwrap();
        let c: GrothElt = det_power(1, h(-2)).times(&det_power(1, h(2))).into();
        assert_eq!(
            r.ext.clone().unwrap(),
            ExtTable::from_entries([(0, c.clone()), (1, c)])
        );
        assert_eq!(r.irreducible, Irreducibility::Yes);
        assert_eq!(
            r.theta,
            Some(det_power(1, h(2)).times(&det_power(1, h(-2))).into())
        );
        let r = ext_weil_character(3, 2, h(1)).unwrap();
        assert_eq!(r.theta, Some(GrothElt::zero()));
        let r = ext_weil_character(2, 3, h(2)).unwrap();
        assert_eq!(r.source, Source::Holomorphic);
        assert_eq!(r.ext.unwrap().iter().count(), 1);
    }

    #[test]
    fn ep_examples() {
        let one2 = ReptnKey::trivial(2);
        assert_eq!(ep_formula(2, 2, &one2), one2.clone().into());
        assert!(ep_formula(3, 2, &ReptnKey::trivial(3)).is_zero());
        assert_eq!(
            ep_formula(1, 3, &ReptnKey::trivial(1)),
            ReptnKey::trivial(1).times(&one2).into()
        );
    }

    #[test]
    fn projectivity() {
        assert!(is_projective(2, 3));
        assert!(!is_projective(2, 2));
        assert!(is_projective(1, 1));
        assert_eq!(proj_dim_bound(5, 6), Ok(2));
        assert_eq!(proj_dim_bound(4, 4), Ok(1));
        assert_eq!(proj_dim_bound(2, 3), Ok(0));
        assert_eq!(proj_dim_bound(6, 6), Ok(3));
        assert!(proj_dim_bound(3, 2).is_err());
    }

    #[test]
    fn rank_two_enumeration() {
        let hits = enumerate_both_pole(2, h(3), &[]);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].key, ReptnKey::trivial(2));
        assert_eq!(hits[0].family, BothPoleFamily::TrivialRankTwo);
        assert!(enumerate_both_pole(1, h(8), &[]).is_empty());
    }

    #[test]
    fn rank_three_enumeration() {
        let chi = CuspidalLabel::ramified("chi").unwrap();
        let hits = enumerate_both_pole(3, h(3), &[chi]);
        assert_eq!(hits.len(), 10);
        let count = |f| hits.iter().filter(|h| h.family == f).count();
        assert_eq!(count(BothPoleFamily::Character), 2);
        assert_eq!(count(BothPoleFamily::CharTimesTrivial), 6);
        assert_eq!(count(BothPoleFamily::SegmentAndPoint), 2);
    }

    #[test]
    fn socle_and_ss() {
        let ext = ext_weil_character(3, 4, h(0)).unwrap().ext.unwrap();
        let socle = both_pole_socle(3, 4, 2).unwrap();
        let lhs = &ss(&ext.get(0)).unwrap() - &ext.get(1);
        assert_eq!(lhs, socle.into());
    }
}
