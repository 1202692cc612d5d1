//! Rank and Kudla filtrations of the Weil representation `ω_{n,m}`, as exponent
//! tables, and the Ext tables of the rank pieces against characters.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groth::{GrothElt, ReptnKey};
use crate::lfun::theta_point;
use crate::segments::{CuspidalLabel, HalfInt, Segment};

/// Which member of the dual pair a Levi block lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    G,
    H,
}

/// `|det_rank|^exponent` on one Levi block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockExp {
    pub side: Side,
    pub rank: u32,
    pub exponent: HalfInt,
}

impl BlockExp {
    fn new(side: Side, rank: i64, twice: i64) -> Self {
        BlockExp {
            side,
            rank: rank as u32,
            exponent: HalfInt::from_twice(twice),
        }
    }
}

impl fmt::Display for BlockExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::G => "G",
            Side::H => "H",
        };
        write!(f, "{side}_{}:{}", self.rank, self.exponent)
    }
}

/// The `k`-th graded piece of the rank filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPiece {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    /// Blocks `G_k, G_{n-k}, H_k, H_{m-k}`.
    pub xi: [BlockExp; 4],
}

/// The `i`-th graded piece of the Kudla filtration of `Jac_{P_k} ω_{n,m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KudlaPiece {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub i: u32,
    /// Set when `i > m`: the parabolic `Q_i` does not exist and the piece is zero.
    pub void: bool,
    /// Blocks `G_{k-i}, G_i, G_{n-k}, H_i, H_{m-i}`; empty when void.
    pub mu: Vec<BlockExp>,
    /// Parameters `(n-k, m-i)` of the inner Weil representation.
    pub inner: (u32, u32),
}

pub fn rank_piece(n: u32, m: u32, k: u32) -> RankPiece {
    let (n, m, k) = (n as i64, m as i64, k as i64);
    RankPiece {
        n: n as u32,
        m: m as u32,
        k: k as u32,
        xi: [
            BlockExp::new(Side::G, k, k - n - m),
            BlockExp::new(Side::G, n - k, k - m),
            BlockExp::new(Side::H, k, n + m - k),
            BlockExp::new(Side::H, m - k, n - k),
        ],
    }
}

pub fn rank_pieces(n: u32, m: u32) -> Vec<RankPiece> {
    (0..=n.min(m)).map(|k| rank_piece(n, m, k)).collect()
}

pub fn kudla_pieces(n: u32, m: u32, k: u32) -> Result<Vec<KudlaPiece>> {
    if k > n {
        return Err(Error::OutOfRange { k, degree: n });
    }
    Ok((0..=k)
        .map(|i| {
            let void = i > m;
            let (ni, mi, ki, ii) = (n as i64, m as i64, k as i64, i as i64);
            let mu = if void {
                Vec::new()
            } else {
                vec![
                    BlockExp::new(Side::G, ki - ii, mi - ni + ki - ii),
                    BlockExp::new(Side::G, ii, mi - ni + 2 * ki - ii),
                    BlockExp::new(Side::G, ni - ki, ki - ii),
                    BlockExp::new(Side::H, ii, ni - mi - 2 * ki + ii),
                    BlockExp::new(Side::H, mi - ii, ii - ki),
                ]
            };
            KudlaPiece {
                n,
                m,
                k,
                i,
                void,
                mu,
                inner: (n - k, m.saturating_sub(i)),
            }
        })
        .collect())
}

/// True when `Ext^*(ω_{n,m}, St(Δ) × π₀)` reduces to `St(Δ) × Ext^*(ω_{n-k,m-k}, π₀)`.
pub fn kudla_vanishing(delta: &Segment, n: u32, m: u32) -> bool {
    !delta.rho().is_trivial() || delta.y() != theta_point(n, m)
}

/// Ext spaces by degree; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtTable {
    degrees: BTreeMap<u32, GrothElt>,
}

impl ExtTable {
    pub fn new() -> Self {
        ExtTable::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u32, GrothElt)>) -> Self {
        let mut t = ExtTable::new();
        for (i, g) in entries {
            t.insert(i, g);
        }
        t
    }

    pub fn insert(&mut self, degree: u32, class: GrothElt) {
        if class.is_zero() {
            self.degrees.remove(&degree);
        } else {
            self.degrees.insert(degree, class);
        }
    }

    pub fn get(&self, degree: u32) -> GrothElt {
        self.degrees.get(&degree).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &GrothElt)> {
        self.degrees.iter().map(|(i, g)| (*i, g))
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `Σ (-1)^i [Ext^i]`.
    pub fn euler_characteristic(&self) -> GrothElt {
        self.iter().fold(GrothElt::zero(), |acc, (i, g)| {
            if i % 2 == 0 {
                &acc + g
            } else {
                &acc - g
            }
        })
    }
}

impl fmt::Display for ExtTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.iter().map(|(i, g)| format!("deg {i}: {g}")).collect();
        f.write_str(&parts.join("; "))
    }
}

/// `|det_rank|^c`, or the unit when `rank = 0`.
pub fn det_power(rank: u32, c: HalfInt) -> ReptnKey {
    if rank == 0 {
        ReptnKey::unit()
    } else {
        ReptnKey::character(rank, c, CuspidalLabel::Trivial).expect("trivial line")
    }
}

/// `|det_{m-k}|^{(k-n)/2} × |det_k|^{(n-m+k)/2}`.
pub fn rank_piece_class(n: u32, m: u32, k: u32) -> ReptnKey {
    let (n, m, k) = (n as i64, m as i64, k as i64);
    let a = det_power((m - k) as u32, HalfInt::from_twice(k - n));
    let b = det_power(k as u32, HalfInt::from_twice(n - m + k));
    a.times(&b)
}

/// `k - m/2`.
pub fn rank_exponent(m: u32, k: u32) -> HalfInt {
    HalfInt::from_twice(2 * k as i64 - m as i64)
}

/// `Ext^*(τ_k, |det_n|^x)` for the `k`-th rank piece `τ_k`.
pub fn ext_rank_piece_character(n: u32, m: u32, k: u32, x: HalfInt) -> Result<ExtTable> {
    let min = n.min(m);
    if k > min {
        return Err(Error::OutOfRange { k, degree: min });
    }
    if k == n {
        // top piece, n <= m: functions on full-rank matrices
        let class = det_power(m - n, HalfInt::ZERO).times(&det_power(n, x));
        return Ok(ExtTable::from_entries([(0, class.into())]));
    }
    if x != rank_exponent(m, k) {
        return Ok(ExtTable::new());
    }
    let class: GrothElt = rank_piece_class(n, m, k).into();
    Ok(ExtTable::from_entries([(0, class.clone()), (1, class)]))
}

/// `Σ_k Σ_i (-1)^i [Ext^i(τ_k, |det_n|^x)]` over all rank pieces.
pub fn filtration_euler_characteristic(n: u32, m: u32, x: HalfInt) -> Result<GrothElt> {
    let mut acc = GrothElt::zero();
    for k in 0..=n.min(m) {
        acc = &acc + &ext_rank_piece_character(n, m, k, x)?.euler_characteristic();
    }
    Ok(acc)
}
