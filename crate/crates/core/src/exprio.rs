//! Text grammar for representations, the canonical printer, and JSON output.
//!
//! ```text
//! rep   := atom ( ("x" | "×") atom )*
//! atom  := "St" seg rho? | "Speh" seg rho? | "char(" int "," half ")" rho?
//!        | "triv(" int ")" | "st(" int ")" | "1"
//!        | "LQ(" "St" seg rho? ( "x" "St" seg rho? )* ")"
//!        | "Z(" "Speh" seg rho? ( "x" "Speh" seg rho? )* ")"
//! seg   := "[" half "," half "]"
//! rho   := "@" ( "one" | "unr(" int "," int ")" | "ram(" name ("," name)? ")"
//!              | "cusp(" int "," name ("," name)? ")" )
//! half  := "-"? digits ( "/" digits )?
//! ```
//!
//! Whitespace is ignored everywhere except inside numbers and names.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::filtr::{BlockExp, ExtTable, KudlaPiece, RankPiece, Side};
use crate::groth::{Factor, GrothElt, ReptnKey, TensorElt};
use crate::lfun::LFactoredFn;
use crate::segments::{CuspidalLabel, FactorKind, HalfInt, Segment, UnitValue};
use crate::theta::{BothPoleHit, ThetaResult};

/// A syntax error with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at offset {}: expected {}, found {}",
            self.position,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// One factor as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Seg(FactorKind, Segment),
    Char {
        n: u32,
        c: HalfInt,
        rho: CuspidalLabel,
    },
    Triv(u32),
    StN(u32),
    Unit,
    Lq(Vec<Segment>),
    Z(Vec<Segment>),
}

/// A product of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepExpr {
    pub atoms: Vec<Atom>,
}

impl Atom {
    pub fn to_key(&self) -> Result<ReptnKey> {
        Ok(match self {
            Atom::Seg(kind, s) => ReptnKey::irr(*kind, vec![s.clone()]),
            Atom::Char { n, c, rho } => ReptnKey::character(*n, *c, rho.clone())?,
            Atom::Triv(n) => ReptnKey::trivial(*n),
            Atom::StN(n) => {
                let half = HalfInt::from_twice(*n as i64 - 1);
                ReptnKey::st(Segment::trivial(half, -half)?)
            }
            Atom::Unit => ReptnKey::unit(),
            Atom::Lq(s) => ReptnKey::irr_l(s.clone()),
            Atom::Z(s) => ReptnKey::irr_z(s.clone()),
        })
    }
}

impl RepExpr {
    /// The class of the product, as a canonical key.
    pub fn to_key(&self) -> Result<ReptnKey> {
        let mut key = ReptnKey::unit();
        for a in &self.atoms {
            key = key.times(&a.to_key()?);
        }
        Ok(key)
    }
}

fn rho_suffix(rho: &CuspidalLabel) -> String {
    if rho.is_trivial() {
        String::new()
    } else {
        format!("@{rho}")
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let segs = |f: &mut fmt::Formatter<'_>, head: &str, kind: &str, s: &[Segment]| {
            let parts: Vec<String> = s.iter().map(|s| format!("{kind}{s}")).collect();
            write!(f, "{head}({})", parts.join(" x "))
        };
        match self {
            Atom::Seg(kind, s) => write!(f, "{kind}{s}"),
            Atom::Char { n, c, rho } => write!(f, "char({n},{c}){}", rho_suffix(rho)),
            Atom::Triv(n) => write!(f, "triv({n})"),
            Atom::StN(n) => write!(f, "st({n})"),
            Atom::Unit => f.write_str("1"),
            Atom::Lq(s) => segs(f, "LQ", "St", s),
            Atom::Z(s) => segs(f, "Z", "Speh", s),
        }
    }
}

impl fmt::Display for RepExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.atoms.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" x "))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let found = match self.rest().chars().next() {
            None => "end of input".to_owned(),
            Some(_) => {
                let token: String = self.rest().chars().take(8).collect();
                format!("`{token}`")
            }
        };
        Err(ParseError {
            position: self.pos,
            expected: expected.iter().map(|s| format!("`{s}`")).collect(),
            found,
        })
    }

    fn peek(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(token)
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.peek(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> PResult<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.fail(&[token])
        }
    }

    fn digits(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.fail(&["digit"]);
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    fn uint(&mut self) -> PResult<u32> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().or_else(|_| {
            self.pos = start;
            self.fail(&["integer"])
        })
    }

    fn half(&mut self) -> PResult<HalfInt> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat("-");
        let num: i64 = self.digits()?.parse().or_else(|_| {
            self.pos = start;
            self.fail(&["half-integer"])
        })?;
        let num = if neg { -num } else { num };
        if self.eat("/") {
            let den_at = self.pos;
            match self.digits()? {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => {
                    self.pos = den_at;
                    self.fail(&["1", "2"])
                }
            }
        } else {
            Ok(HalfInt::from_int(num))
        }
    }

    fn name(&mut self) -> PResult<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '\'' || c == '∨'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.fail(&["name"]);
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    fn domain<T>(&self, at: usize, r: Result<T>) -> PResult<T> {
        r.map_err(|e| ParseError {
            position: at,
            expected: vec!["a valid value".into()],
            found: e.to_string(),
        })
    }

    fn label(&mut self) -> PResult<CuspidalLabel> {
        self.skip_ws();
        let at = self.pos;
        if self.eat("one") {
            return Ok(CuspidalLabel::Trivial);
        }
        if self.eat("unr(") {
            let r = self.uint()?;
            self.expect(",")?;
            let j = self.uint()?;
            self.expect(")")?;
            return self.domain(at, CuspidalLabel::unramified(r, j));
        }
        if self.eat("ram(") {
            let name = self.name()?;
            let dual = if self.eat(",") { self.name()? } else { name };
            self.expect(")")?;
            return self.domain(at, CuspidalLabel::ramified_with_dual(name, dual));
        }
        if self.eat("cusp(") {
            let d = self.uint()?;
            self.expect(",")?;
            let name = self.name()?;
            let dual = if self.eat(",") { self.name()? } else { name };
            self.expect(")")?;
            return self.domain(at, CuspidalLabel::cuspidal_with_dual(d, name, dual));
        }
        self.fail(&["one", "unr(", "ram(", "cusp("])
    }

    fn rho(&mut self) -> PResult<CuspidalLabel> {
        if self.eat("@") {
            self.label()
        } else {
            Ok(CuspidalLabel::Trivial)
        }
    }

    fn segment(&mut self) -> PResult<Segment> {
        self.expect("[")?;
        let at = self.pos;
        let x = self.half()?;
        self.expect(",")?;
        let y = self.half()?;
        self.expect("]")?;
        let rho = self.rho()?;
        self.domain(at, Segment::new(rho, x, y))
    }

    fn segment_list(&mut self, kind: &str) -> PResult<Vec<Segment>> {
        let mut out = Vec::new();
        loop {
            self.expect(kind)?;
            out.push(self.segment()?);
            if !(self.eat("x") || self.eat("×")) {
                break;
            }
        }
        self.expect(")")?;
        Ok(out)
    }

    fn atom(&mut self) -> PResult<Atom> {
        self.skip_ws();
        if self.eat("Speh") {
            return Ok(Atom::Seg(FactorKind::Speh, self.segment()?));
        }
        if self.eat("St") {
            return Ok(Atom::Seg(FactorKind::St, self.segment()?));
        }
        if self.eat("char(") {
            let at = self.pos;
            let n = self.uint()?;
            self.expect(",")?;
            let c = self.half()?;
            self.expect(")")?;
            let rho = self.rho()?;
            if n == 0 || !rho.is_character() {
                return self.domain(
                    at,
                    Err(Error::InvalidLabel(
                        "char(n,c) needs n >= 1 and a character line".into(),
                    )),
                );
            }
            return Ok(Atom::Char { n, c, rho });
        }
        if self.eat("triv(") {
            let n = self.uint()?;
            self.expect(")")?;
            return Ok(Atom::Triv(n));
        }
        if self.eat("st(") {
            let at = self.pos;
            let n = self.uint()?;
            self.expect(")")?;
            if n == 0 {
                return self.domain(at, Err(Error::InvalidSegment("st(0)".into())));
            }
            return Ok(Atom::StN(n));
        }
        if self.eat("LQ(") {
            return Ok(Atom::Lq(self.segment_list("St")?));
        }
        if self.eat("Z(") {
            return Ok(Atom::Z(self.segment_list("Speh")?));
        }
        if self.eat("1") {
            return Ok(Atom::Unit);
        }
        self.fail(&["St", "Speh", "char(", "triv(", "st(", "LQ(", "Z(", "1"])
    }

    fn rep(&mut self) -> PResult<RepExpr> {
        let mut atoms = vec![self.atom()?];
        while self.eat("x") || self.eat("×") {
            atoms.push(self.atom()?);
        }
        self.skip_ws();
        if !self.rest().is_empty() {
            return self.fail(&["x", "end of input"]);
        }
        Ok(RepExpr { atoms })
    }
}

pub fn parse_rep(text: &str) -> std::result::Result<RepExpr, ParseError> {
    Parser::new(text).rep()
}

pub fn parse_half(text: &str) -> std::result::Result<HalfInt, ParseError> {
    let mut p = Parser::new(text);
    let h = p.half()?;
    p.skip_ws();
    if !p.rest().is_empty() {
        return p.fail(&["end of input"]);
    }
    Ok(h)
}

pub fn parse_label(text: &str) -> std::result::Result<CuspidalLabel, ParseError> {
    let mut p = Parser::new(text);
    let l = p.label()?;
    p.skip_ws();
    if !p.rest().is_empty() {
        return p.fail(&["end of input"]);
    }
    Ok(l)
}

/// Output formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Values that have a text form and a JSON form.
pub trait Render {
    fn to_text(&self) -> String;
    fn to_json(&self) -> Value;
}

pub fn render<R: Render + ?Sized>(value: &R, format: Format) -> String {
    match format {
        Format::Text => value.to_text(),
        Format::Json => {
            serde_json::to_string_pretty(&value.to_json()).expect("json values serialize")
        }
    }
}

impl Render for HalfInt {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        let (num, den) = self.as_fraction();
        json!({ "num": num, "den": den })
    }
}

impl Render for CuspidalLabel {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        match self {
            CuspidalLabel::Trivial => json!({ "kind": "trivial" }),
            CuspidalLabel::Unramified { order, exponent } => {
                json!({ "kind": "unramified", "order": order, "exponent": exponent })
            }
            CuspidalLabel::Ramified { name, dual } => {
                json!({ "kind": "ramified", "name": name, "dual": dual })
            }
            CuspidalLabel::Cuspidal { dim, name, dual } => {
                json!({ "kind": "cuspidal", "dim": dim, "name": name, "dual": dual })
            }
        }
    }
}

impl Render for Segment {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        json!({ "rho": self.rho().to_json(), "x": self.x().to_json(), "y": self.y().to_json() })
    }
}

impl Render for Factor {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        match self {
            Factor::St(s) => json!({ "kind": "St", "segment": s.to_json() }),
            Factor::Speh(s) => json!({ "kind": "Speh", "segment": s.to_json() }),
            Factor::Irr(k) => json!({ "kind": "Irr", "key": k.to_json() }),
        }
    }
}

fn seg_list(s: &[Segment]) -> Value {
    Value::Array(s.iter().map(Render::to_json).collect())
}

impl Render for ReptnKey {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        let text = self.to_string();
        match self {
            ReptnKey::Std(f) => json!({
                "type": "std",
                "factors": f.iter().map(Render::to_json).collect::<Vec<_>>(),
                "text": text,
            }),
            ReptnKey::IrrL(s) => json!({ "type": "irr_l", "segments": seg_list(s), "text": text }),
            ReptnKey::IrrZ(s) => json!({ "type": "irr_z", "segments": seg_list(s), "text": text }),
        }
    }
}

impl Render for GrothElt {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .iter()
            .map(|(k, c)| json!({ "key": k.to_json(), "mult": c }))
            .collect();
        json!({ "kind": "groth", "terms": terms })
    }
}

impl Render for TensorElt {
    fn to_text(&self) -> String {
        if self.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(l, r, c)| match c {
                1 => format!("{l} ⊗ {r}"),
                c => format!("{c}*({l} ⊗ {r})"),
            })
            .collect();
        parts.join(" + ")
    }
    fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .iter()
            .map(|(l, r, c)| json!({ "left": l.to_json(), "right": r.to_json(), "mult": c }))
            .collect();
        json!({ "kind": "tensor", "terms": terms })
    }
}

impl Render for ExtTable {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .iter()
            .map(|(i, g)| json!({ "degree": i, "class": g.to_json() }))
            .collect();
        json!({ "kind": "ext_table", "degrees": degrees })
    }
}

fn unit_json(u: UnitValue) -> Value {
    match u {
        UnitValue::One => json!("one"),
        UnitValue::Root { order, exponent } => json!({ "order": order, "exponent": exponent }),
    }
}

impl Render for LFactoredFn {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors()
            .iter()
            .map(|(&(u, a), &m)| json!({ "unit": unit_json(u), "a": a.to_json(), "mult": m }))
            .collect();
        json!({ "kind": "lfunction", "factors": factors })
    }
}

impl Render for ThetaResult {
    fn to_text(&self) -> String {
        let opt = |g: &Option<GrothElt>| g.as_ref().map_or("unknown".into(), ToString::to_string);
        let mut lines = vec![
            format!("theta: {}", opt(&self.theta)),
            format!("irreducible: {}", self.irreducible),
            format!("order: {}", self.order_hint),
            format!("source: {}", self.source),
            format!(
                "ext: {}",
                self.ext
                    .as_ref()
                    .map_or("unknown".into(), ToString::to_string)
            ),
            format!("ep: {}", self.ep),
        ];
        if let Some(s) = &self.stable_range_ss {
            lines.push(format!("ss theta (stable range): {s}"));
        }
        if let Some(t) = self.tempered {
            lines.push(format!("tempered: {t}"));
        }
        lines.join("\n")
    }
    fn to_json(&self) -> Value {
        json!({
            "kind": "theta",
            "n": self.n,
            "m": self.m,
            "theta": self.theta.as_ref().map(Render::to_json),
            "irreducible": self.irreducible.to_string(),
            "order_hint": self.order_hint.to_string(),
            "source": self.source.to_string(),
            "ext": self.ext.as_ref().map(Render::to_json),
            "ep": self.ep.to_json(),
            "stable_range_ss": self.stable_range_ss.as_ref().map(Render::to_json),
            "tempered": self.tempered,
        })
    }
}

fn block_json(b: &BlockExp) -> Value {
    let side = match b.side {
        Side::G => "G",
        Side::H => "H",
    };
    json!({ "side": side, "rank": b.rank, "exponent": b.exponent.to_json() })
}

fn blocks_text(b: &[BlockExp]) -> String {
    b.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl Render for RankPiece {
    fn to_text(&self) -> String {
        format!("rank k={}: {}", self.k, blocks_text(&self.xi))
    }
    fn to_json(&self) -> Value {
        json!({
            "kind": "rank_piece",
            "n": self.n, "m": self.m, "k": self.k,
            "xi": self.xi.iter().map(block_json).collect::<Vec<_>>(),
        })
    }
}

impl Render for KudlaPiece {
    fn to_text(&self) -> String {
        if self.void {
            return format!("kudla k={} i={}: void", self.k, self.i);
        }
        format!(
            "kudla k={} i={}: {}; inner ({},{})",
            self.k,
            self.i,
            blocks_text(&self.mu),
            self.inner.0,
            self.inner.1
        )
    }
    fn to_json(&self) -> Value {
        json!({
            "kind": "kudla_piece",
            "n": self.n, "m": self.m, "k": self.k, "i": self.i,
            "void": self.void,
            "mu": self.mu.iter().map(block_json).collect::<Vec<_>>(),
            "inner": [self.inner.0, self.inner.1],
        })
    }
}

impl Render for BothPoleHit {
    fn to_text(&self) -> String {
        let data: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        format!("{{{}}}  {}  [{}]", data.join(","), self.key, self.family)
    }
    fn to_json(&self) -> Value {
        json!({
            "kind": "both_pole",
            "data": seg_list(&self.data),
            "key": self.key.to_json(),
            "family": self.family.to_string(),
        })
    }
}

impl<T: Render> Render for [T] {
    fn to_text(&self) -> String {
        self.iter()
            .map(Render::to_text)
            .collect::<Vec<_>>()
            .join("\n")
    }
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(Render::to_json).collect())
    }
}

impl<T: Render> Render for Vec<T> {
    fn to_text(&self) -> String {
        self.as_slice().to_text()
    }
    fn to_json(&self) -> Value {
        self.as_slice().to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtr::det_power;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn parses_atoms() {
        let e = parse_rep("St[1/2,-1/2]").unwrap();
        assert_eq!(
            e.atoms,
            vec![Atom::Seg(
                FactorKind::St,
                Segment::trivial(h(1), h(-1)).unwrap()
            )]
        );
        let e = parse_rep("char(2,0)").unwrap();
        assert_eq!(e.to_key().unwrap(), ReptnKey::trivial(2));
        let e = parse_rep("St[1,0]@cusp(2,sigma) x Speh[1/2,-1/2]").unwrap();
        assert_eq!(e.atoms.len(), 2);
        assert_eq!(e.to_key().unwrap().degree(), 6);
        let e = parse_rep("  st( 3 ) ×triv(2)x 1").unwrap();
        assert_eq!(e.atoms.len(), 3);
        assert_eq!(e.to_key().unwrap().degree(), 5);
    }

    #[test]
    fn parses_labels() {
        assert_eq!(
            parse_label("unr(5,2)").unwrap(),
            CuspidalLabel::unramified(5, 2).unwrap()
        );
        assert_eq!(
            parse_label("ram(chi, chi2)").unwrap(),
            CuspidalLabel::ramified_with_dual("chi", "chi2").unwrap()
        );
        assert!(parse_label("unr(4,2)").is_err());
        assert_eq!(parse_half("-3/2").unwrap(), h(-3));
        assert!(parse_half("3/4").is_err());
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse_rep("St[1/2,-1/2] y").unwrap_err();
        assert_eq!(e.position, 13);
        assert!(e.expected.contains(&"`x`".to_string()));
        let e = parse_rep("Foo").unwrap_err();
        assert_eq!(e.position, 0);
        assert!(e.expected.len() >= 5);
        let e = parse_rep("St[1/2,0]").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse_rep("").unwrap_err();
        assert_eq!(e.found, "end of input");
        assert!(parse_rep("char(1,0)@cusp(2,s)").is_err());
    }

    #[test]
    fn ext_table_text() {
        let a = det_power(1, h(-1)).times(&det_power(1, h(1)));
        let t = ExtTable::from_entries([
            (0, a.into()),
            (
                1,
                ReptnKey::st(Segment::trivial(h(1), h(-1)).unwrap()).into(),
            ),
        ]);
        assert_eq!(
            render(&t, Format::Text),
            "deg 0: Speh[1/2,1/2] x Speh[-1/2,-1/2]; deg 1: St[1/2,-1/2]"
        );
    }

    #[test]
    fn empty_groth() {
        assert_eq!(render(&GrothElt::zero(), Format::Text), "0");
        let v: Value = serde_json::from_str(&render(&GrothElt::zero(), Format::Json)).unwrap();
        assert_eq!(v["terms"], json!([]));
    }

    #[test]
    fn half_integers_as_fractions() {
        assert_eq!(h(-3).to_json(), json!({ "num": -3, "den": 2 }));
        assert_eq!(h(4).to_json(), json!({ "num": 2, "den": 1 }));
    }

    #[test]
    fn json_is_byte_stable() {
        let g: GrothElt = ReptnKey::trivial(3).times(&ReptnKey::trivial(2)).into();
        assert_eq!(render(&g, Format::Json), render(&g.clone(), Format::Json));
    }
}
