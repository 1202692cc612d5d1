//! The graded Hopf ring `R = ⊕ R(G_n)`.
//!
//! Basis labels come in three shapes: unordered products of Steinberg/Speh
//! factors (standard objects), and irreducibles given by Langlands (`IrrL`) or
//! Zelevinsky (`IrrZ`) multisegments. Every constructor canonicalizes, so
//! structural equality of [`ReptnKey`] is equality of labels.
//!
//! Canonical form of irreducible keys:
//! - single-factor products collapse to the irreducible factor;
//! - a point `[x,x]` is always `IrrZ{[x]}` (St and Speh agree on points);
//! - a multiplicity-free chain of points on one line swaps basis:
//!   `IrrL{[x],[x-1],…,[y]} = IrrZ{[x,y]}` and `IrrZ{[x],…,[y]} = IrrL{[x,y]}`;
//! - pairwise unlinked `IrrZ` data on character lines (a product of characters)
//!   is rewritten to its Langlands data, the union of the point chains.
//!
//! Products of irreducibles that are not single segments are carried as
//! formal [`Factor::Irr`] factors, so `product` is total.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::segments::{CuspidalLabel, FactorKind, HalfInt, Segment};

/// One factor of a standard product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    St(Segment),
    Speh(Segment),
    /// An irreducible that is not a single segment, used as a formal factor.
    Irr(Box<ReptnKey>),
}

impl Factor {
    /// Points are stored as `Speh`, since `St[x,x] = Speh[x,x]`.
    pub fn new(kind: FactorKind, seg: Segment) -> Self {
        match kind {
            FactorKind::St if !seg.is_singleton() => Factor::St(seg),
            _ => Factor::Speh(seg),
        }
    }

    pub fn st(seg: Segment) -> Self {
        Factor::new(FactorKind::St, seg)
    }

    pub fn speh(seg: Segment) -> Self {
        Factor::new(FactorKind::Speh, seg)
    }

    pub fn degree(&self) -> u32 {
        match self {
            Factor::St(s) | Factor::Speh(s) => s.degree(),
            Factor::Irr(k) => k.degree(),
        }
    }

    /// The segment and kind, for `St`/`Speh` factors. Points report `None` as kind.
    fn kinded(&self) -> Option<(Option<FactorKind>, &Segment)> {
        match self {
            Factor::St(s) => Some((Some(FactorKind::St), s)),
            Factor::Speh(s) if s.is_singleton() => Some((None, s)),
            Factor::Speh(s) => Some((Some(FactorKind::Speh), s)),
            Factor::Irr(_) => None,
        }
    }

    pub fn segment(&self) -> Option<&Segment> {
        self.kinded().map(|(_, s)| s)
    }

    pub fn dual(&self) -> Factor {
        match self {
            Factor::St(s) => Factor::St(s.dual()),
            Factor::Speh(s) => Factor::Speh(s.dual()),
            Factor::Irr(k) => Factor::Irr(Box::new(k.mvw_dual())),
        }
    }

    fn key(&self) -> ReptnKey {
        match self {
            Factor::St(s) => ReptnKey::irr_l(vec![s.clone()]),
            Factor::Speh(s) => ReptnKey::irr_z(vec![s.clone()]),
            Factor::Irr(k) => (**k).clone(),
        }
    }
}

/// A basis label of the Grothendieck group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReptnKey {
    Std(Vec<Factor>),
    IrrL(Vec<Segment>),
    IrrZ(Vec<Segment>),
}

impl ReptnKey {
    /// The class of the trivial representation of the trivial group.
    pub fn unit() -> Self {
        ReptnKey::Std(Vec::new())
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, ReptnKey::Std(f) if f.is_empty())
    }

    pub fn std(factors: Vec<Factor>) -> Self {
        let mut flat: Vec<Factor> = factors
            .into_iter()
            .flat_map(|f| match f {
                Factor::St(s) => vec![Factor::st(s)],
                Factor::Speh(s) => vec![Factor::Speh(s)],
                Factor::Irr(k) => k.canonical().into_factors(),
            })
            .collect();
        flat.sort();
        match flat.len() {
            0 => ReptnKey::unit(),
            1 => flat[0].key(),
            _ => ReptnKey::Std(flat),
        }
    }

    pub fn irr_l(segs: Vec<Segment>) -> Self {
        canon_irr(FactorKind::St, segs)
    }

    pub fn irr_z(segs: Vec<Segment>) -> Self {
        canon_irr(FactorKind::Speh, segs)
    }

    pub fn irr(kind: FactorKind, segs: Vec<Segment>) -> Self {
        canon_irr(kind, segs)
    }

    pub fn st(seg: Segment) -> Self {
        ReptnKey::irr_l(vec![seg])
    }

    pub fn speh(seg: Segment) -> Self {
        ReptnKey::irr_z(vec![seg])
    }

    /// The character `ρ|det_n|^c` of `G_n` (`ρ` of dimension one).
    pub fn character(n: u32, c: HalfInt, rho: CuspidalLabel) -> Result<Self> {
        Ok(ReptnKey::speh(character_segment(n, c, rho)?))
    }

    /// `1_n`; the unit when `n = 0`.
    pub fn trivial(n: u32) -> Self {
        if n == 0 {
            ReptnKey::unit()
        } else {
            ReptnKey::character(n, HalfInt::ZERO, CuspidalLabel::Trivial).expect("trivial line")
        }
    }

    fn canonical(self) -> Self {
        match self {
            ReptnKey::Std(f) => ReptnKey::std(f),
            ReptnKey::IrrL(s) => ReptnKey::irr_l(s),
            ReptnKey::IrrZ(s) => ReptnKey::irr_z(s),
        }
    }

    fn into_factors(self) -> Vec<Factor> {
        match self {
            ReptnKey::Std(f) => f,
            ReptnKey::IrrL(mut s) if s.len() == 1 => vec![Factor::st(s.remove(0))],
            ReptnKey::IrrZ(mut s) if s.len() == 1 => vec![Factor::speh(s.remove(0))],
            k => vec![Factor::Irr(Box::new(k))],
        }
    }

    /// The key viewed as a product of factors.
    pub fn factors(&self) -> Vec<Factor> {
        self.clone().into_factors()
    }

    pub fn is_irreducible_key(&self) -> bool {
        !matches!(self, ReptnKey::Std(_))
    }

    pub fn degree(&self) -> u32 {
        match self {
            ReptnKey::Std(f) => f.iter().map(Factor::degree).sum(),
            ReptnKey::IrrL(s) | ReptnKey::IrrZ(s) => s.iter().map(Segment::degree).sum(),
        }
    }

    /// Contragredient, equal to the MVW involute on irreducibles.
    pub fn mvw_dual(&self) -> ReptnKey {
        match self {
            ReptnKey::Std(f) => ReptnKey::std(f.iter().map(Factor::dual).collect()),
            ReptnKey::IrrL(s) => ReptnKey::irr_l(s.iter().map(Segment::dual).collect()),
            ReptnKey::IrrZ(s) => ReptnKey::irr_z(s.iter().map(Segment::dual).collect()),
        }
    }

    /// Induction product of two keys.
    pub fn times(&self, other: &ReptnKey) -> ReptnKey {
        let mut f = self.factors();
        f.extend(other.factors());
        ReptnKey::std(f)
    }

    /// Langlands data of an irreducible key, when decidable.
    pub fn to_l_data(&self) -> Result<Vec<Segment>> {
        match self {
            ReptnKey::IrrL(s) => Ok(s.clone()),
            ReptnKey::IrrZ(s) if s.len() == 1 => Ok(s[0].singletons()),
            ReptnKey::IrrZ(_) => Err(Error::undecidable(format!(
                "Langlands data of the Zelevinsky irreducible {self}"
            ))),
            ReptnKey::Std(_) => Err(Error::undecidable(format!(
                "{self} is a standard product, not an irreducible"
            ))),
        }
    }

    /// All points `(ρ, exponent)` of all segments, sorted.
    pub fn cuspidal_support(&self) -> Vec<(CuspidalLabel, HalfInt)> {
        let mut out = Vec::new();
        self.collect_support(&mut out);
        out.sort();
        out
    }

    fn collect_support(&self, out: &mut Vec<(CuspidalLabel, HalfInt)>) {
        let push = |s: &Segment, out: &mut Vec<_>| {
            out.extend(s.points().map(|p| (s.rho().clone(), p)));
        };
        match self {
            ReptnKey::Std(fs) => {
                for f in fs {
                    match f {
                        Factor::St(s) | Factor::Speh(s) => push(s, out),
                        Factor::Irr(k) => k.collect_support(out),
                    }
                }
            }
            ReptnKey::IrrL(s) | ReptnKey::IrrZ(s) => s.iter().for_each(|s| push(s, out)),
        }
    }
}

/// The segment `[c + (n-1)/2, c - (n-1)/2]_ρ` of the character `ρ|det_n|^c`.
pub fn character_segment(n: u32, c: HalfInt, rho: CuspidalLabel) -> Result<Segment> {
    if n == 0 {
        return Err(Error::InvalidSegment("a character needs n >= 1".into()));
    }
    if !rho.is_character() {
        return Err(Error::InvalidLabel(format!(
            "{rho} has dimension {}, characters need dimension 1",
            rho.dim()
        )));
    }
    let half = HalfInt::from_twice(n as i64 - 1);
    Segment::new(rho, c + half, c - half)
}

/// Both parametrizations of a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharData {
    pub l: Vec<Segment>,
    pub z: Vec<Segment>,
}

pub fn char_to_data(n: u32, c: HalfInt, rho: CuspidalLabel) -> Result<CharData> {
    let seg = character_segment(n, c, rho)?;
    Ok(CharData {
        l: seg.singletons(),
        z: vec![seg],
    })
}

/// The single segment covered by a multiplicity-free chain of points, if any.
fn point_chain(points: &[Segment]) -> Option<Segment> {
    let first = points.first()?;
    if !points.iter().all(Segment::is_singleton) {
        return None;
    }
    // sorted: same label first, x descending
    for w in points.windows(2) {
        if w[0].rho() != w[1].rho() || w[0].x() - w[1].x() != HalfInt::ONE {
            return None;
        }
    }
    let last = points.last()?;
    Segment::new(first.rho().clone(), first.x(), last.x()).ok()
}

fn pairwise_unlinked(segs: &[Segment]) -> bool {
    segs.iter()
        .enumerate()
        .all(|(i, a)| segs[i + 1..].iter().all(|b| !a.is_linked(b)))
}

fn canon_irr(kind: FactorKind, mut segs: Vec<Segment>) -> ReptnKey {
    segs.sort();
    match kind {
        FactorKind::St => match point_chain(&segs) {
            Some(chain) => ReptnKey::IrrZ(vec![chain]),
            None => ReptnKey::IrrL(segs),
        },
        FactorKind::Speh => {
            if segs.len() < 2 {
                return ReptnKey::IrrZ(segs);
            }
            if let Some(chain) = point_chain(&segs) {
                return ReptnKey::IrrL(vec![chain]);
            }
            let characters = segs
                .iter()
                .all(|s| s.rho().is_character() || s.is_singleton());
            if characters && pairwise_unlinked(&segs) {
                let points = segs.iter().flat_map(Segment::singletons).collect();
                return canon_irr(FactorKind::St, points);
            }
            ReptnKey::IrrZ(segs)
        }
    }
}

/// A finite integer combination of keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GrothElt {
    terms: BTreeMap<ReptnKey, i64>,
}

impl GrothElt {
    pub fn zero() -> Self {
        GrothElt::default()
    }

    pub fn unit() -> Self {
        GrothElt::from_key(ReptnKey::unit())
    }

    pub fn from_key(key: ReptnKey) -> Self {
        GrothElt::from_terms([(key, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ReptnKey, i64)>) -> Self {
        let mut out = GrothElt::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, key: ReptnKey, mult: i64) {
        if mult == 0 {
            return;
        }
        let slot = self.terms.entry(key).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> &BTreeMap<ReptnKey, i64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ReptnKey, i64)> {
        self.terms.iter().map(|(k, c)| (k, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &ReptnKey) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    /// The key, if `self` is exactly one key with multiplicity one.
    pub fn as_single_key(&self) -> Option<&ReptnKey> {
        match self.terms.iter().next() {
            Some((k, 1)) if self.terms.len() == 1 => Some(k),
            _ => None,
        }
    }

    pub fn scale(&self, c: i64) -> GrothElt {
        GrothElt::from_terms(self.iter().map(|(k, m)| (k.clone(), m * c)))
    }

    /// Distinct degrees of the keys present.
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(ReptnKey::degree).collect()
    }

    pub fn mvw_dual(&self) -> GrothElt {
        GrothElt::from_terms(self.iter().map(|(k, c)| (k.mvw_dual(), c)))
    }

    pub fn map_keys(&self, f: impl Fn(&ReptnKey) -> ReptnKey) -> GrothElt {
        GrothElt::from_terms(self.iter().map(|(k, c)| (f(k), c)))
    }
}

impl From<ReptnKey> for GrothElt {
    fn from(key: ReptnKey) -> Self {
        GrothElt::from_key(key)
    }
}

impl Add for &GrothElt {
    type Output = GrothElt;
    fn add(self, rhs: &GrothElt) -> GrothElt {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl Sub for &GrothElt {
    type Output = GrothElt;
    fn sub(self, rhs: &GrothElt) -> GrothElt {
        self + &-rhs
    }
}

impl Neg for &GrothElt {
    type Output = GrothElt;
    fn neg(self) -> GrothElt {
        self.scale(-1)
    }
}

/// A finite integer combination of key pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElt {
    terms: BTreeMap<(ReptnKey, ReptnKey), i64>,
}

impl TensorElt {
    pub fn add_term(&mut self, left: ReptnKey, right: ReptnKey, mult: i64) {
        if mult == 0 {
            return;
        }
        let slot = self.terms.entry((left, right)).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(ReptnKey, ReptnKey), i64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ReptnKey, &ReptnKey, i64)> {
        self.terms.iter().map(|((a, b), c)| (a, b, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Triple tensors, used to state coassociativity.
pub type Tensor3 = BTreeMap<(ReptnKey, ReptnKey, ReptnKey), i64>;

/// Bilinear induction product.
pub fn product(a: &GrothElt, b: &GrothElt) -> GrothElt {
    let mut out = GrothElt::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            out.add_term(ka.times(kb), ca * cb);
        }
    }
    out
}

fn piece_key(kind: FactorKind, seg: Option<Segment>) -> ReptnKey {
    seg.map_or_else(ReptnKey::unit, |s| ReptnKey::irr(kind, vec![s]))
}

fn factor_coproduct(f: &Factor) -> Result<Vec<(ReptnKey, ReptnKey)>> {
    let (kind, seg) = match f {
        Factor::St(s) => (FactorKind::St, s),
        Factor::Speh(s) => (FactorKind::Speh, s),
        Factor::Irr(k) => {
            return Err(Error::undecidable(format!("Jacquet modules of {k}")));
        }
    };
    let step = seg.rho().dim() as usize;
    let mut out = Vec::with_capacity(seg.len() as usize + 1);
    for k in (0..=seg.degree()).step_by(step) {
        let split = match kind {
            FactorKind::St => seg.jacquet_st(k)?,
            FactorKind::Speh => seg.jacquet_speh(k)?,
        };
        if let Some((l, r)) = split {
            out.push((piece_key(kind, l), piece_key(kind, r)));
        }
    }
    Ok(out)
}

/// Jacquet coproduct of a single key, the ring-hom extension of the
/// segment formulas.
pub fn key_coproduct(key: &ReptnKey) -> Result<TensorElt> {
    let mut acc: BTreeMap<(ReptnKey, ReptnKey), i64> = BTreeMap::new();
    acc.insert((ReptnKey::unit(), ReptnKey::unit()), 1);
    for f in key.factors() {
        let pieces = factor_coproduct(&f)?;
        let mut next = BTreeMap::new();
        for ((a, b), c) in &acc {
            for (l, r) in &pieces {
                *next.entry((a.times(l), b.times(r))).or_insert(0) += c;
            }
        }
        acc = next;
    }
    let mut out = TensorElt::default();
    for ((a, b), c) in acc {
        out.add_term(a, b, c);
    }
    Ok(out)
}

pub fn coproduct(a: &GrothElt) -> Result<TensorElt> {
    let mut out = TensorElt::default();
    for (k, c) in a.iter() {
        for (l, r, d) in key_coproduct(k)?.iter() {
            out.add_term(l.clone(), r.clone(), c * d);
        }
    }
    Ok(out)
}

/// Projection onto the degree-zero part.
pub fn counit(a: &GrothElt) -> i64 {
    a.coeff(&ReptnKey::unit())
}

/// `(Δ ⊗ id)Δ(a)` and `(id ⊗ Δ)Δ(a)`.
pub fn coassociativity_sides(a: &GrothElt) -> Result<(Tensor3, Tensor3)> {
    let once = coproduct(a)?;
    let mut left = Tensor3::new();
    let mut right = Tensor3::new();
    for (l, r, c) in once.iter() {
        for (ll, lr, d) in key_coproduct(l)?.iter() {
            *left.entry((ll.clone(), lr.clone(), r.clone())).or_insert(0) += c * d;
        }
        for (rl, rr, d) in key_coproduct(r)?.iter() {
            *right
                .entry((l.clone(), rl.clone(), rr.clone()))
                .or_insert(0) += c * d;
        }
    }
    left.retain(|_, c| *c != 0);
    right.retain(|_, c| *c != 0);
    Ok((left, right))
}

/// Second factors of the bidegree `(1, n-1)` part of the coproduct whose first
/// factor is the character `ρ|·|^e`.
pub fn jac_x(a: &GrothElt, rho: &CuspidalLabel, e: HalfInt) -> Result<GrothElt> {
    let chi = ReptnKey::character(1, e, rho.clone())?;
    let mut out = GrothElt::zero();
    for (l, r, c) in coproduct(a)?.iter() {
        if *l == chi {
            out.add_term(r.clone(), c);
        }
    }
    Ok(out)
}

/// Shared kind of a list of `St`/`Speh` factors. Points fit either kind; a
/// list of points reports `None`.
fn common_kind(factors: &[Factor]) -> Result<(Option<FactorKind>, Vec<Segment>)> {
    let mut kind = None;
    let mut segs = Vec::with_capacity(factors.len());
    for f in factors {
        let (k, s) = f
            .kinded()
            .ok_or_else(|| Error::undecidable(format!("kind of the formal factor {f}")))?;
        if let Some(k) = k {
            match kind {
                Some(prev) if prev != k => return Err(Error::MixedKinds),
                _ => kind = Some(k),
            }
        }
        segs.push(s.clone());
    }
    Ok((kind, segs))
}

/// Irreducibility of a standard product of same-kind factors.
pub fn irreducible_test(key: &ReptnKey) -> Result<bool> {
    let (_, segs) = common_kind(&key.factors())?;
    Ok(pairwise_unlinked(&segs))
}

/// Composition series of an ordered two-factor product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoFactor {
    Irreducible(ReptnKey),
    Reducible { sub: ReptnKey, quotient: ReptnKey },
}

impl TwoFactor {
    pub fn class(&self) -> GrothElt {
        match self {
            TwoFactor::Irreducible(k) => GrothElt::from_key(k.clone()),
            TwoFactor::Reducible { sub, quotient } => {
                GrothElt::from_terms([(sub.clone(), 1), (quotient.clone(), 1)])
            }
        }
    }
}

/// `first × second` for two factors of the same kind.
pub fn ss_two_factor(first: &Factor, second: &Factor) -> Result<TwoFactor> {
    let (kind, segs) = common_kind(&[first.clone(), second.clone()])?;
    let kind = kind.unwrap_or(FactorKind::St);
    let (a, b) = (&segs[0], &segs[1]);
    if !a.is_linked(b) {
        return Ok(TwoFactor::Irreducible(ReptnKey::irr(kind, segs.clone())));
    }
    let lattice = a.link_lattice(b)?;
    let mut nested = vec![lattice.union];
    nested.extend(lattice.intersection);
    let nested = ReptnKey::irr(kind, nested);
    let pair = ReptnKey::irr(kind, segs.clone());
    // orientation where the second factor precedes the first
    let (sub, quotient) = match kind {
        FactorKind::St => (nested, pair),
        FactorKind::Speh => (pair, nested),
    };
    if b.precedes(a) {
        Ok(TwoFactor::Reducible { sub, quotient })
    } else {
        Ok(TwoFactor::Reducible {
            sub: quotient,
            quotient: sub,
        })
    }
}

/// The Langlands quotient of a standard module of Steinberg factors.
pub fn langlands_quotient(key: &ReptnKey) -> Result<ReptnKey> {
    match common_kind(&key.factors())? {
        (Some(FactorKind::Speh), _) => Err(Error::MixedKinds),
        (_, segs) => Ok(ReptnKey::irr_l(segs)),
    }
}

fn ss_key(key: &ReptnKey) -> Result<GrothElt> {
    let factors = match key {
        ReptnKey::Std(f) => f,
        _ => return Ok(GrothElt::from_key(key.clone())),
    };
    let undecidable = || Error::undecidable(format!("semisimplification of {key}"));
    let (kind, segs) = common_kind(factors).map_err(|_| undecidable())?;
    if factors.len() == 2 {
        return Ok(ss_two_factor(&factors[0], &factors[1])?.class());
    }
    if pairwise_unlinked(&segs) {
        let kind = kind.unwrap_or(FactorKind::St);
        return Ok(GrothElt::from_key(ReptnKey::irr(kind, segs)));
    }
    Err(undecidable())
}

/// Semisimplification on the decidable fragment.
pub fn ss(a: &GrothElt) -> Result<GrothElt> {
    let mut out = GrothElt::zero();
    for (k, c) in a.iter() {
        out = &out + &ss_key(k)?.scale(c);
    }
    Ok(out)
}

/// Possible single-factor readings of a key.
fn single_factor(key: &ReptnKey) -> Option<(Vec<FactorKind>, &Segment)> {
    match key {
        ReptnKey::IrrL(s) | ReptnKey::IrrZ(s) if s.len() == 1 && s[0].is_singleton() => {
            Some((vec![FactorKind::St, FactorKind::Speh], &s[0]))
        }
        ReptnKey::IrrL(s) if s.len() == 1 => Some((vec![FactorKind::St], &s[0])),
        ReptnKey::IrrZ(s) if s.len() == 1 => Some((vec![FactorKind::Speh], &s[0])),
        _ => None,
    }
}

/// Dimensions of `Ext^i(a, b)` by degree; absent degrees are zero.
pub fn ext_irr(a: &ReptnKey, b: &ReptnKey) -> Result<BTreeMap<u32, u32>> {
    let sa: BTreeSet<_> = a.cuspidal_support().into_iter().collect();
    let disjoint = b.cuspidal_support().iter().all(|p| !sa.contains(p));
    if disjoint {
        return Ok(BTreeMap::new());
    }
    if let (Some((ka, da)), Some((kb, db))) = (single_factor(a), single_factor(b)) {
        if ka.iter().any(|k| kb.contains(k)) {
            return Ok(if da == db {
                BTreeMap::from([(0, 1), (1, 1)])
            } else {
                BTreeMap::new()
            });
        }
    }
    Err(Error::undecidable(format!("Ext between {a} and {b}")))
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::St(s) => write!(f, "St{s}"),
            Factor::Speh(s) => write!(f, "Speh{s}"),
            Factor::Irr(k) => write!(f, "{k}"),
        }
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for ReptnKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReptnKey::Std(fs) if fs.is_empty() => f.write_str("1"),
            ReptnKey::Std(fs) => f.write_str(&join(fs, " x ")),
            ReptnKey::IrrL(s) if s.len() == 1 => write!(f, "St{}", s[0]),
            ReptnKey::IrrZ(s) if s.len() == 1 => write!(f, "Speh{}", s[0]),
            ReptnKey::IrrL(s) => {
                let parts: Vec<String> = s.iter().map(|s| format!("St{s}")).collect();
                write!(f, "LQ({})", parts.join(" x "))
            }
            ReptnKey::IrrZ(s) => {
                let parts: Vec<String> = s.iter().map(|s| format!("Speh{s}")).collect();
                write!(f, "Z({})", parts.join(" x "))
            }
        }
    }
}

impl fmt::Display for GrothElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, c.abs()) {
                (0, 1) if c < 0 => write!(f, "-{k}")?,
                (0, 1) => write!(f, "{k}")?,
                (0, a) if c < 0 => write!(f, "-{a}*{k}")?,
                (0, a) => write!(f, "{a}*{k}")?,
                (_, 1) => write!(f, " {sign} {k}")?,
                (_, a) => write!(f, " {sign} {a}*{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn seg(x: i64, y: i64) -> Segment {
        Segment::trivial(h(x), h(y)).unwrap()
    }

    fn pt(x: i64) -> Segment {
        seg(x, x)
    }

    fn st(x: i64, y: i64) -> Factor {
        Factor::st(seg(x, y))
    }

    fn speh(x: i64, y: i64) -> Factor {
        Factor::speh(seg(x, y))
    }

    fn one_2() -> ReptnKey {
        ReptnKey::trivial(2)
    }

    fn st_2() -> ReptnKey {
        ReptnKey::st(seg(1, -1))
    }

    #[test]
    fn canonical_forms_of_small_keys() {
        assert_eq!(ReptnKey::irr_l(vec![pt(1), pt(-1)]), one_2());
        assert_eq!(ReptnKey::irr_z(vec![pt(-1), pt(1)]), st_2());
        assert_eq!(ReptnKey::irr_l(vec![pt(3)]), ReptnKey::irr_z(vec![pt(3)]));
        assert_eq!(ReptnKey::std(vec![st(1, -1)]), st_2());
        assert_eq!(ReptnKey::std(vec![]), ReptnKey::unit());
        // a product of unlinked characters becomes its Langlands data
        let k = ReptnKey::irr_z(vec![seg(1, -1), pt(0)]);
        assert_eq!(k, ReptnKey::IrrL(vec![pt(1), pt(0), pt(-1)]));
        // linked Speh data is kept
        let k = ReptnKey::irr_z(vec![seg(3, 1), seg(1, -1)]);
        assert!(matches!(k, ReptnKey::IrrZ(ref s) if s.len() == 2));
    }

    #[test]
    fn product_is_multiset_union() {
        let a = GrothElt::from_key(ReptnKey::std(vec![st(1, 1)]));
        let b = GrothElt::from_key(ReptnKey::std(vec![st(-1, -1)]));
        let ab = product(&a, &b);
        assert_eq!(
            ab.as_single_key(),
            Some(&ReptnKey::std(vec![speh(1, 1), speh(-1, -1)]))
        );
        assert_eq!(product(&GrothElt::unit(), &a), a);
        assert_eq!(product(&ab, &GrothElt::zero()), GrothElt::zero());
    }

    #[test]
    fn coproduct_of_steinberg() {
        let t = coproduct(&st_2().into()).unwrap();
        let mut expected = TensorElt::default();
        expected.add_term(ReptnKey::unit(), st_2(), 1);
        expected.add_term(ReptnKey::speh(pt(1)), ReptnKey::speh(pt(-1)), 1);
        expected.add_term(st_2(), ReptnKey::unit(), 1);
        assert_eq!(t, expected);
    }

    #[test]
    fn coproduct_of_trivial_character() {
        let t = coproduct(&one_2().into()).unwrap();
        let mut expected = TensorElt::default();
        expected.add_term(ReptnKey::unit(), one_2(), 1);
        expected.add_term(ReptnKey::speh(pt(-1)), ReptnKey::speh(pt(1)), 1);
        expected.add_term(one_2(), ReptnKey::unit(), 1);
        assert_eq!(t, expected);
    }

    #[test]
    fn coassociative_on_st_three_half() {
        let a: GrothElt = ReptnKey::st(seg(3, -1)).into();
        let (l, r) = coassociativity_sides(&a).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.len(), 10);
    }

    #[test]
    fn jac_x_examples() {
        let t = CuspidalLabel::Trivial;
        assert_eq!(
            jac_x(&one_2().into(), &t, h(-1)).unwrap(),
            ReptnKey::speh(pt(1)).into()
        );
        assert!(jac_x(&one_2().into(), &t, h(1)).unwrap().is_zero());
        assert_eq!(
            jac_x(&ReptnKey::std(vec![st(1, 1)]).into(), &t, h(1)).unwrap(),
            GrothElt::unit()
        );
    }

    #[test]
    fn irreducibility() {
        assert!(irreducible_test(&ReptnKey::std(vec![speh(1, -1), speh(3, -3)])).unwrap());
        assert!(!irreducible_test(&ReptnKey::std(vec![st(1, 1), st(-1, -1)])).unwrap());
        assert!(irreducible_test(&ReptnKey::std(vec![st(2, 0), st(2, 0)])).unwrap());
        assert_eq!(
            irreducible_test(&ReptnKey::std(vec![st(2, 0), speh(1, -1)])),
            Err(Error::MixedKinds)
        );
    }

    #[test]
    fn two_factor_examples() {
        assert_eq!(
            ss_two_factor(&st(1, 1), &st(-1, -1)).unwrap(),
            TwoFactor::Reducible {
                sub: st_2(),
                quotient: one_2()
            }
        );
        assert_eq!(
            ss_two_factor(&speh(-1, -1), &speh(1, 1)).unwrap(),
            TwoFactor::Reducible {
                sub: one_2(),
                quotient: st_2()
            }
        );
        assert_eq!(
            ss_two_factor(&speh(1, -1), &speh(3, -3)).unwrap(),
            TwoFactor::Irreducible(ReptnKey::irr_z(vec![seg(1, -1), seg(3, -3)]))
        );
        assert_eq!(
            ss_two_factor(&st(2, 0), &speh(1, -1)),
            Err(Error::MixedKinds)
        );
    }

    #[test]
    fn langlands_quotients() {
        assert_eq!(
            langlands_quotient(&ReptnKey::std(vec![st(1, 1), st(-1, -1)])).unwrap(),
            ReptnKey::irr_l(vec![pt(1), pt(-1)])
        );
        assert_eq!(
            langlands_quotient(&ReptnKey::std(vec![st(3, 1), st(-1, -1)])).unwrap(),
            ReptnKey::IrrL(vec![seg(3, 1), pt(-1)])
        );
        assert_eq!(langlands_quotient(&st_2()).unwrap(), st_2());
    }

    #[test]
    fn semisimplification() {
        let a: GrothElt = ReptnKey::std(vec![st(1, 1), st(-1, -1)]).into();
        assert_eq!(
            ss(&a).unwrap(),
            GrothElt::from_terms([(st_2(), 1), (one_2(), 1)])
        );
        assert_eq!(ss(&one_2().into()).unwrap(), one_2().into());
        let three: GrothElt = ReptnKey::std(vec![st(1, 1), st(0, 0), st(-1, -1)]).into();
        assert!(matches!(ss(&three), Err(Error::NotDecidable(_))));
    }

    #[test]
    fn ext_between_irreducibles() {
        assert_eq!(
            ext_irr(&st_2(), &st_2()).unwrap(),
            BTreeMap::from([(0, 1), (1, 1)])
        );
        assert!(ext_irr(&st_2(), &ReptnKey::st(seg(3, 1)))
            .unwrap()
            .is_empty());
        let chi = CuspidalLabel::ramified("chi").unwrap();
        let a = ReptnKey::speh(Segment::point(chi, h(0)));
        assert!(ext_irr(&a, &ReptnKey::speh(pt(0))).unwrap().is_empty());
        assert!(ext_irr(&st_2(), &one_2()).is_err());
    }

    #[test]
    fn duals() {
        let k = ReptnKey::IrrL(vec![seg(3, 1), pt(-1)]);
        assert_eq!(k.mvw_dual(), ReptnKey::irr_l(vec![seg(-1, -3), pt(1)]));
        assert_eq!(one_2().mvw_dual(), one_2());
        assert_eq!(k.mvw_dual().mvw_dual(), k);
    }

    #[test]
    fn character_data() {
        let d = char_to_data(3, h(1), CuspidalLabel::Trivial).unwrap();
        assert_eq!(d.z, vec![seg(3, -1)]);
        assert_eq!(d.l, vec![pt(3), pt(1), pt(-1)]);
        let d = char_to_data(1, h(0), CuspidalLabel::Trivial).unwrap();
        assert_eq!((d.z, d.l), (vec![pt(0)], vec![pt(0)]));
        let d = char_to_data(2, h(0), CuspidalLabel::Trivial).unwrap();
        assert_eq!((d.z, d.l), (vec![seg(1, -1)], vec![pt(1), pt(-1)]));
        let sigma = CuspidalLabel::cuspidal(2, "sigma").unwrap();
        assert!(char_to_data(1, h(0), sigma).is_err());
    }

    #[test]
    fn supports() {
        let one = CuspidalLabel::Trivial;
        let k = ReptnKey::std(vec![st(3, 1), st(-1, -1)]);
        assert_eq!(
            k.cuspidal_support(),
            vec![
                (one.clone(), h(-1)),
                (one.clone(), h(1)),
                (one.clone(), h(3))
            ]
        );
        assert_eq!(
            one_2().cuspidal_support(),
            vec![(one.clone(), h(-1)), (one, h(1))]
        );
        assert!(ReptnKey::unit().cuspidal_support().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(one_2().to_string(), "Speh[1/2,-1/2]");
        assert_eq!(st_2().to_string(), "St[1/2,-1/2]");
        assert_eq!(
            ReptnKey::std(vec![speh(-1, -1), speh(1, 1)]).to_string(),
            "Speh[1/2,1/2] x Speh[-1/2,-1/2]"
        );
        let g = GrothElt::from_terms([(st_2(), 1), (one_2(), -2)]);
        assert_eq!(g.to_string(), "St[1/2,-1/2] - 2*Speh[1/2,-1/2]");
        assert_eq!(GrothElt::zero().to_string(), "0");
    }
}
