//! Half-integers, cuspidal labels and segments.
//!
//! A segment `[x, y]_ρ` is the string of twists `ρ|det|^x, ρ|det|^(x-1), …, ρ|det|^y`
//! of a unitary supercuspidal `ρ`. All exponents live in `½ℤ` and are stored
//! doubled, so every comparison below is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    /// `num / 2`.
    pub const fn halves(num: i64) -> Self {
        HalfInt(num)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, if integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Exact halving, if the result stays in `½ℤ`.
    pub fn checked_half(self) -> Option<Self> {
        (self.0 % 2 == 0).then_some(HalfInt(self.0 / 2))
    }

    /// `(numerator, denominator)` in lowest terms with denominator 1 or 2.
    pub fn as_fraction(self) -> (i64, i64) {
        if self.is_integral() {
            (self.0 / 2, 1)
        } else {
            (self.0, 2)
        }
    }

    /// Smallest integer `≥ self`.
    pub fn ceil(self) -> i64 {
        self.0.div_euclid(2) + self.0.rem_euclid(2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl From<i64> for HalfInt {
    fn from(v: i64) -> Self {
        HalfInt::from_int(v)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_fraction() {
            (n, 1) => write!(f, "{n}"),
            (n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl FromStr for HalfInt {
    type Err = String;

    /// Accepts `"3"`, `"-2"`, `"3/2"`, `"-1/2"`, and also `"4/2"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || format!("`{s}` is not an element of ½ℤ");
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad()),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => Ok(HalfInt::from_int(num)),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// A root of unity `exp(2πi·exponent/order)`, or exactly `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnitValue {
    One,
    Root { order: u32, exponent: u32 },
}

impl UnitValue {
    pub fn inverse(self) -> Self {
        match self {
            UnitValue::One => UnitValue::One,
            UnitValue::Root { order, exponent } => UnitValue::Root {
                order,
                exponent: order - exponent,
            },
        }
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitValue::One => f.write_str("1"),
            UnitValue::Root { order, exponent } => write!(f, "zeta({order},{exponent})"),
        }
    }
}

/// A unitary supercuspidal representation, up to the information the engine uses.
///
/// Characters of `GL_1` come in three flavours: the trivial character, unramified
/// unitary characters whose value at a uniformizer is a root of unity, and ramified
/// characters known only by name. Higher cuspidals are names with a dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CuspidalLabel {
    Trivial,
    Unramified {
        order: u32,
        exponent: u32,
    },
    Ramified {
        name: String,
        dual: String,
    },
    Cuspidal {
        dim: u32,
        name: String,
        dual: String,
    },
}

impl CuspidalLabel {
    pub fn unramified(order: u32, exponent: u32) -> Result<Self> {
        if order < 2 || exponent == 0 || exponent >= order {
            return Err(Error::InvalidLabel(format!(
                "unr({order},{exponent}) needs order >= 2 and 0 < exponent < order"
            )));
        }
        if num_integer::gcd(order, exponent) != 1 {
            return Err(Error::InvalidLabel(format!(
                "unr({order},{exponent}) is not a primitive root of unity"
            )));
        }
        Ok(CuspidalLabel::Unramified { order, exponent })
    }

    /// A self-dual ramified character.
    pub fn ramified(name: &str) -> Result<Self> {
        Self::ramified_with_dual(name, name)
    }

    pub fn ramified_with_dual(name: &str, dual: &str) -> Result<Self> {
        check_name(name)?;
        check_name(dual)?;
        Ok(CuspidalLabel::Ramified {
            name: name.to_owned(),
            dual: dual.to_owned(),
        })
    }

    /// A self-dual supercuspidal of `GL_dim`.
    pub fn cuspidal(dim: u32, name: &str) -> Result<Self> {
        Self::cuspidal_with_dual(dim, name, name)
    }

    pub fn cuspidal_with_dual(dim: u32, name: &str, dual: &str) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidLabel(format!(
                "cuspidal `{name}` must have dimension >= 2, got {dim}"
            )));
        }
        check_name(name)?;
        check_name(dual)?;
        Ok(CuspidalLabel::Cuspidal {
            dim,
            name: name.to_owned(),
            dual: dual.to_owned(),
        })
    }

    pub fn dim(&self) -> u32 {
        match self {
            CuspidalLabel::Cuspidal { dim, .. } => *dim,
            _ => 1,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, CuspidalLabel::Trivial)
    }

    pub fn is_character(&self) -> bool {
        self.dim() == 1
    }

    pub fn dual(&self) -> Self {
        match self {
            CuspidalLabel::Trivial => CuspidalLabel::Trivial,
            CuspidalLabel::Unramified { order, exponent } => CuspidalLabel::Unramified {
                order: *order,
                exponent: order - exponent,
            },
            CuspidalLabel::Ramified { name, dual } => CuspidalLabel::Ramified {
                name: dual.clone(),
                dual: name.clone(),
            },
            CuspidalLabel::Cuspidal { dim, name, dual } => CuspidalLabel::Cuspidal {
                dim: *dim,
                name: dual.clone(),
                dual: name.clone(),
            },
        }
    }

    /// Value at a uniformizer for unramified characters; `None` when the local
    /// L-factor is identically 1.
    pub fn unramified_value(&self) -> Option<UnitValue> {
        match self {
            CuspidalLabel::Trivial => Some(UnitValue::One),
            CuspidalLabel::Unramified { order, exponent } => Some(UnitValue::Root {
                order: *order,
                exponent: *exponent,
            }),
            _ => None,
        }
    }
}

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '∨');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidLabel(format!("bad label name `{name}`")))
    }
}

impl fmt::Display for CuspidalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspidalLabel::Trivial => f.write_str("one"),
            CuspidalLabel::Unramified { order, exponent } => write!(f, "unr({order},{exponent})"),
            CuspidalLabel::Ramified { name, dual } if name == dual => write!(f, "ram({name})"),
            CuspidalLabel::Ramified { name, dual } => write!(f, "ram({name},{dual})"),
            CuspidalLabel::Cuspidal { dim, name, dual } if name == dual => {
                write!(f, "cusp({dim},{name})")
            }
            CuspidalLabel::Cuspidal { dim, name, dual } => write!(f, "cusp({dim},{name},{dual})"),
        }
    }
}

/// Steinberg or Speh: the unique sub resp. quotient of the induced product of
/// a segment's points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKind {
    St,
    Speh,
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorKind::St => "St",
            FactorKind::Speh => "Speh",
        })
    }
}

/// A segment `[x, y]_ρ` with `x - y` a non-negative integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    rho: CuspidalLabel,
    x: HalfInt,
    y: HalfInt,
}

/// Result of splitting a segment for a Jacquet module: `(left, right)` where
/// `None` is the empty segment.
pub type SegPair = (Option<Segment>, Option<Segment>);

/// Union and intersection of two linked segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkLattice {
    pub union: Segment,
    pub intersection: Option<Segment>,
}

impl Segment {
    pub fn new(rho: CuspidalLabel, x: HalfInt, y: HalfInt) -> Result<Self> {
        let diff = x - y;
        if !diff.is_integral() || diff < HalfInt::ZERO {
            return Err(Error::InvalidSegment(format!(
                "[{x},{y}]: x - y must be a non-negative integer"
            )));
        }
        Ok(Segment { rho, x, y })
    }

    /// A segment on the trivial line.
    pub fn trivial(x: HalfInt, y: HalfInt) -> Result<Self> {
        Segment::new(CuspidalLabel::Trivial, x, y)
    }

    /// The single point `ρ|det|^x`.
    pub fn point(rho: CuspidalLabel, x: HalfInt) -> Self {
        Segment { rho, x, y: x }
    }

    pub fn rho(&self) -> &CuspidalLabel {
        &self.rho
    }

    pub fn x(&self) -> HalfInt {
        self.x
    }

    pub fn y(&self) -> HalfInt {
        self.y
    }

    /// Number of points, `x - y + 1`.
    pub fn len(&self) -> u32 {
        ((self.x - self.y).twice() / 2 + 1) as u32
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_singleton(&self) -> bool {
        self.x == self.y
    }

    /// The rank of the general linear group the segment lives on.
    pub fn degree(&self) -> u32 {
        self.rho.dim() * self.len()
    }

    /// Exponents from `x` down to `y`.
    pub fn points(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..self.len() as i64).map(move |j| self.x - HalfInt::from_int(j))
    }

    /// The segment's points as singletons, top first.
    pub fn singletons(&self) -> Vec<Segment> {
        self.points()
            .map(|p| Segment::point(self.rho.clone(), p))
            .collect()
    }

    fn same_line(&self, other: &Segment) -> bool {
        self.rho == other.rho && (self.x - other.x).is_integral()
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.same_line(other) && self.y <= other.y && other.x <= self.x
    }

    pub fn is_linked(&self, other: &Segment) -> bool {
        self.same_line(other)
            && !self.contains(other)
            && !other.contains(self)
            && other.y <= self.x + HalfInt::ONE
            && self.y <= other.x + HalfInt::ONE
    }

    /// `self` precedes `other`: linked, and `self.x <= other.x`.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.is_linked(other) && self.x <= other.x
    }

    pub fn link_lattice(&self, other: &Segment) -> Result<LinkLattice> {
        if !self.is_linked(other) {
            return Err(Error::NotLinked(self.to_string(), other.to_string()));
        }
        let union = Segment {
            rho: self.rho.clone(),
            x: self.x.max(other.x),
            y: self.y.min(other.y),
        };
        let (top, bottom) = (self.x.min(other.x), self.y.max(other.y));
        let intersection = (top >= bottom).then(|| Segment {
            rho: self.rho.clone(),
            x: top,
            y: bottom,
        });
        Ok(LinkLattice {
            union,
            intersection,
        })
    }

    /// `[-y, -x]` on the dual line.
    pub fn dual(&self) -> Segment {
        Segment {
            rho: self.rho.dual(),
            x: -self.y,
            y: -self.x,
        }
    }

    pub fn twist(&self, c: HalfInt) -> Segment {
        Segment {
            rho: self.rho.clone(),
            x: self.x + c,
            y: self.y + c,
        }
    }

    /// `[x, x - α + 1]`, the top `α` points.
    fn top(&self, alpha: u32) -> Option<Segment> {
        (alpha > 0).then(|| Segment {
            rho: self.rho.clone(),
            x: self.x,
            y: self.x - HalfInt::from_int(alpha as i64 - 1),
        })
    }

    /// `[y + α - 1, y]`, the bottom `α` points.
    fn bottom(&self, alpha: u32) -> Option<Segment> {
        (alpha > 0).then(|| Segment {
            rho: self.rho.clone(),
            x: self.y + HalfInt::from_int(alpha as i64 - 1),
            y: self.y,
        })
    }

    fn lattice_index(&self, k: u32) -> Result<Option<u32>> {
        let degree = self.degree();
        if k > degree {
            return Err(Error::OutOfRange { k, degree });
        }
        let d = self.rho.dim();
        Ok(k.is_multiple_of(d).then_some(k / d))
    }

    /// Normalized Jacquet module of `St(self)` along the parabolic with blocks
    /// `(k, degree - k)`. `Ok(None)` means the module is zero.
    pub fn jacquet_st(&self, k: u32) -> Result<Option<SegPair>> {
        let len = self.len();
        Ok(self
            .lattice_index(k)?
            .map(|alpha| (self.top(alpha), self.bottom(len - alpha))))
    }

    /// Same for `Speh(self)`: the left block receives the bottom points.
    pub fn jacquet_speh(&self, k: u32) -> Result<Option<SegPair>> {
        let len = self.len();
        Ok(self
            .lattice_index(k)?
            .map(|alpha| (self.bottom(alpha), self.top(len - alpha))))
    }

    /// `e(τ) = (x + y) / 2` for `τ = St(self)` or `Speh(self)`.
    ///
    /// Always in `½ℤ`: `2x` and `x - y` are integers, hence so is `x + y`.
    pub fn central_exponent(&self, _kind: FactorKind) -> HalfInt {
        HalfInt::from_twice((self.x + self.y).twice() / 2)
    }
}

impl Ord for Segment {
    /// Canonical multiset order: label, then `x` descending, then `y` descending.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rho
            .cmp(&other.rho)
            .then_with(|| other.x.cmp(&self.x))
            .then_with(|| other.y.cmp(&self.y))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)?;
        if !self.rho.is_trivial() {
            write!(f, "@{}", self.rho)?;
        }
        Ok(())
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn label() -> impl Strategy<Value = CuspidalLabel> {
        prop_oneof![
            Just(CuspidalLabel::Trivial),
            Just(CuspidalLabel::unramified(3, 1).unwrap()),
            Just(CuspidalLabel::ramified("chi").unwrap()),
            Just(CuspidalLabel::cuspidal_with_dual(2, "s", "t").unwrap()),
        ]
    }

    pub(crate) fn segment() -> impl Strategy<Value = Segment> {
        (label(), -8i64..8, 0i64..5).prop_map(|(rho, x2, len)| {
            Segment::new(
                rho,
                HalfInt::from_twice(x2),
                HalfInt::from_twice(x2 - 2 * len),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn dual_is_involution(a in segment()) {
            prop_assert_eq!(a.dual().dual(), a);
        }

        #[test]
        fn linkage_symmetric_precedence_antisymmetric(a in segment(), b in segment()) {
            prop_assert_eq!(a.is_linked(&b), b.is_linked(&a));
            prop_assert!(!(a.precedes(&b) && b.precedes(&a)));
        }

        #[test]
        fn jacquet_lattice_conserves_degree(a in segment()) {
            let mut nonzero = 0;
            for k in 0..=a.degree() {
                for (l, r) in [a.jacquet_st(k).unwrap(), a.jacquet_speh(k).unwrap()].into_iter().flatten() {
                    let deg = |s: &Option<Segment>| s.as_ref().map_or(0, Segment::degree);
                    prop_assert_eq!(deg(&l), k);
                    prop_assert_eq!(deg(&l) + deg(&r), a.degree());
                }
                if a.jacquet_st(k).unwrap().is_some() {
                    nonzero += 1;
                }
            }
            prop_assert_eq!(nonzero, a.len() + 1);
        }

        #[test]
        fn st_and_speh_swap_top_and_bottom(a in segment(), alpha in 0u32..6) {
            let alpha = alpha.min(a.len());
            let k = alpha * a.rho().dim();
            let (st_l, st_r) = a.jacquet_st(k).unwrap().unwrap();
            let (sp_l, sp_r) = a.jacquet_speh((a.len() - alpha) * a.rho().dim()).unwrap().unwrap();
            prop_assert_eq!(st_l, sp_r);
            prop_assert_eq!(st_r, sp_l);
        }

        #[test]
        fn dual_negates_central_exponent(a in segment()) {
            prop_assert_eq!(a.dual().central_exponent(FactorKind::St), -a.central_exponent(FactorKind::St));
        }

        #[test]
        fn twist_round_trip(a in segment(), c in -6i64..6) {
            let c = HalfInt::from_twice(c);
            prop_assert_eq!(a.twist(c).twist(-c), a.clone());
            prop_assert_eq!(a.twist(HalfInt::ZERO), a);
        }
    }
}
