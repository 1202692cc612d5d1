//! Godement–Jacquet L-functions in factored form.
//!
//! `L(s, π) = ∏ (1 - u·q^a·X)^(-mult)` with `X = q^(-s)`; a factor `(u, a)` has
//! a real pole at `s = a` exactly when `u = 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::groth::ReptnKey;
use crate::segments::{HalfInt, UnitValue};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LFactoredFn {
    factors: BTreeMap<(UnitValue, HalfInt), u32>,
}

impl LFactoredFn {
    /// The constant function 1.
    pub fn one() -> Self {
        LFactoredFn::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = ((UnitValue, HalfInt), u32)>) -> Self {
        let mut out = LFactoredFn::one();
        for (f, m) in factors {
            out.push(f, m);
        }
        out
    }

    fn push(&mut self, factor: (UnitValue, HalfInt), mult: u32) {
        if mult > 0 {
            *self.factors.entry(factor).or_insert(0) += mult;
        }
    }

    pub fn factors(&self) -> &BTreeMap<(UnitValue, HalfInt), u32> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of L-functions: union of factor multisets.
    pub fn mul(&self, other: &LFactoredFn) -> LFactoredFn {
        let mut out = self.clone();
        for (&f, &m) in &other.factors {
            out.push(f, m);
        }
        out
    }

    /// Real poles with their orders.
    pub fn real_poles(&self) -> BTreeMap<HalfInt, u32> {
        let mut out = BTreeMap::new();
        for (&(u, a), &m) in &self.factors {
            if u == UnitValue::One {
                *out.entry(a).or_insert(0) += m;
            }
        }
        out
    }
}

impl fmt::Display for LFactoredFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(&(u, a), &m)| {
                let base = match u {
                    UnitValue::One => format!("(1 - q^({a})X)"),
                    u => format!("(1 - {u}*q^({a})X)"),
                };
                if m == 1 {
                    format!("{base}^-1")
                } else {
                    format!("{base}^-{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `L(s, π)` from Langlands data; each segment `[x, y]` on an unramified line
/// with value `u` contributes `(u, -x)`; other lines contribute 1.
pub fn gj_lfunction(pi: &ReptnKey) -> Result<LFactoredFn> {
    let mut out = LFactoredFn::one();
    for seg in pi.to_l_data()? {
        if let Some(u) = seg.rho().unramified_value() {
            out.push((u, -seg.x()), 1);
        }
    }
    Ok(out)
}

/// `L(s, π^∨)`.
pub fn lfun_dual(pi: &ReptnKey) -> Result<LFactoredFn> {
    gj_lfunction(&pi.mvw_dual())
}

pub fn pole_order_at(f: &LFactoredFn, s0: HalfInt) -> u32 {
    f.factors.get(&(UnitValue::One, s0)).copied().unwrap_or(0)
}

/// `numer / denom` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LQuotient {
    /// No factor of the numerator is left uncancelled.
    pub entire: bool,
    /// Uncancelled numerator factors (the poles of the quotient).
    pub poles: LFactoredFn,
    /// Uncancelled denominator factors (these become polynomial factors).
    pub zeros: LFactoredFn,
}

pub fn lfun_div(numer: &LFactoredFn, denom: &LFactoredFn) -> LQuotient {
    let mut poles = LFactoredFn::one();
    let mut zeros = LFactoredFn::one();
    for (&f, &m) in &numer.factors {
        let d = denom.factors.get(&f).copied().unwrap_or(0);
        poles.push(f, m.saturating_sub(d));
    }
    for (&f, &d) in &denom.factors {
        let m = numer.factors.get(&f).copied().unwrap_or(0);
        zeros.push(f, d.saturating_sub(m));
    }
    LQuotient {
        entire: poles.is_one(),
        poles,
        zeros,
    }
}

/// `(1 + m - n) / 2`.
pub fn theta_point(n: u32, m: u32) -> HalfInt {
    HalfInt::from_twice(1 + m as i64 - n as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BothPole {
    pub pole_pi: bool,
    pub pole_dual: bool,
    pub s0: HalfInt,
}

impl BothPole {
    pub fn both(&self) -> bool {
        self.pole_pi && self.pole_dual
    }
}

pub fn both_pole_at(n: u32, m: u32, pi: &ReptnKey) -> Result<BothPole> {
    let s0 = theta_point(n, m);
    Ok(BothPole {
        pole_pi: pole_order_at(&gj_lfunction(pi)?, s0) > 0,
        pole_dual: pole_order_at(&lfun_dual(pi)?, s0) > 0,
        s0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::segments::{CuspidalLabel, Segment};

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn seg(x: i64, y: i64) -> Segment {
        Segment::trivial(h(x), h(y)).unwrap()
    }

    fn one(a: i64) -> ((UnitValue, HalfInt), u32) {
        ((UnitValue::One, h(a)), 1)
    }

    #[test]
    fn trivial_rank_two() {
        let l = gj_lfunction(&ReptnKey::trivial(2)).unwrap();
        assert_eq!(l, LFactoredFn::from_factors([one(-1), one(1)]));
        assert_eq!(pole_order_at(&l, h(1)), 1);
        assert_eq!(lfun_dual(&ReptnKey::trivial(2)).unwrap(), l);
    }

    #[test]
    fn steinberg_rank_two() {
        let l = gj_lfunction(&ReptnKey::st(seg(1, -1))).unwrap();
        assert_eq!(l, LFactoredFn::from_factors([one(-1)]));
        assert_eq!(pole_order_at(&l, h(1)), 0);
    }

    #[test]
    fn ramified_lines_are_constant() {
        let chi = CuspidalLabel::ramified("chi").unwrap();
        let k = ReptnKey::irr_l(vec![Segment::point(chi.clone(), h(0))]);
        assert!(gj_lfunction(&k).unwrap().is_one());
        assert!(lfun_dual(&k).unwrap().is_one());
        assert_eq!(pole_order_at(&LFactoredFn::one(), h(5)), 0);
    }

    #[test]
    fn unramified_roots_have_no_real_poles() {
        let u = CuspidalLabel::unramified(3, 1).unwrap();
        let k = ReptnKey::speh(Segment::point(u, h(-1)));
        let l = gj_lfunction(&k).unwrap();
        assert_eq!(l.factors().len(), 1);
        assert!(l.real_poles().is_empty());
        let d = lfun_dual(&k).unwrap();
        assert_eq!(
            d.factors().keys().next().unwrap().0,
            UnitValue::Root {
                order: 3,
                exponent: 2
            }
        );
    }

    #[test]
    fn dual_of_shifted_steinberg() {
        let k = ReptnKey::st(seg(3, 1));
        assert_eq!(lfun_dual(&k).unwrap(), LFactoredFn::from_factors([one(1)]));
    }

    #[test]
    fn division() {
        let st2 = gj_lfunction(&ReptnKey::st(seg(1, -1))).unwrap();
        let triv = gj_lfunction(&ReptnKey::trivial(2)).unwrap();
        assert!(lfun_div(&st2, &triv).entire);
        let q = lfun_div(&triv, &st2);
        assert!(!q.entire);
        assert_eq!(q.poles, LFactoredFn::from_factors([one(1)]));
        assert!(lfun_div(&triv, &triv).entire);
    }

    #[test]
    fn both_poles() {
        let t2 = ReptnKey::trivial(2);
        assert_eq!(
            both_pole_at(2, 2, &t2).unwrap(),
            BothPole {
                pole_pi: true,
                pole_dual: true,
                s0: h(1)
            }
        );
        assert_eq!(
            both_pole_at(2, 3, &t2).unwrap(),
            BothPole {
                pole_pi: false,
                pole_dual: false,
                s0: h(2)
            }
        );
        for x in -8..=8 {
            let chi = ReptnKey::character(1, h(x), CuspidalLabel::Trivial).unwrap();
            assert!(!both_pole_at(1, 1, &chi).unwrap().both());
        }
    }

    #[test]
    fn linked_zelevinsky_data_is_refused() {
        let z = ReptnKey::irr_z(vec![seg(3, 1), seg(1, -1)]);
        assert!(matches!(gj_lfunction(&z), Err(Error::NotDecidable(_))));
    }
}
