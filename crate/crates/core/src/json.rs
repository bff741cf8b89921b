//! JSON wire formats.
//!
//! Compositions and permutations are arrays of `[size, color]` or
//! `[value, color]` pairs; `m` always travels alongside. Coefficients are
//! integers when integral and small, otherwise `"p/q"` strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error as ThisError;

use crate::combinat::{ColoredComposition, ColoredPermutation};
use crate::error::Error;
use crate::linear::{Linear, Rational};
use crate::oracle::TruncatedPolynomial;
use crate::poset::ColoredPoset;
use crate::qsym::{Basis, QSymElement, QSymTensor};

#[derive(Debug, ThisError)]
pub enum JsonError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error(transparent)]
    Domain(#[from] Error),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type JsonResult<T> = std::result::Result<T, JsonError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn from_rational(r: &Rational) -> Coeff {
        if r.is_integer() {
            if let Some(i) = r.numer().to_i64() {
                return Coeff::Int(i);
            }
            return Coeff::Text(r.numer().to_string());
        }
        Coeff::Text(format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn to_rational(&self) -> JsonResult<Rational> {
        let bad = |s: &str| JsonError::Parse { line: 0, column: 0, message: format!("bad coefficient {s:?}") };
        match self {
            Coeff::Int(i) => Ok(Rational::from_integer(BigInt::from(*i))),
            Coeff::Text(s) => {
                let (p, q) = match s.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (s.trim(), "1"),
                };
                let p: BigInt = p.parse().map_err(|_| bad(s))?;
                let q: BigInt = q.parse().map_err(|_| bad(s))?;
                if q == BigInt::from(0) {
                    return Err(bad(s));
                }
                Ok(Rational::new(p, q))
            }
        }
    }
}

pub type Pairs = Vec<[u32; 2]>;

/// `m` may be omitted from any payload and then means one color.
fn one_color() -> u32 {
    1
}

fn pairs_of(v: &[(u32, u32)]) -> Pairs {
    v.iter().map(|&(a, b)| [a, b]).collect()
}

fn tuples(p: &Pairs) -> Vec<(u32, u32)> {
    p.iter().map(|&[a, b]| (a, b)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionJson {
    #[serde(default = "one_color")]
    pub m: u32,
    pub comp: Pairs,
}

impl CompositionJson {
    pub fn from_comp(a: &ColoredComposition) -> Self {
        Self { m: a.m(), comp: pairs_of(&a.pairs()) }
    }

    pub fn to_comp(&self) -> JsonResult<ColoredComposition> {
        Ok(ColoredComposition::from_pairs(self.m, &tuples(&self.comp))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationJson {
    #[serde(default = "one_color")]
    pub m: u32,
    pub word: Pairs,
}

impl PermutationJson {
    pub fn from_perm(p: &ColoredPermutation) -> Self {
        Self { m: p.m(), word: pairs_of(&p.pairs()) }
    }

    pub fn to_perm(&self) -> JsonResult<ColoredPermutation> {
        Ok(ColoredPermutation::from_pairs(self.m, &tuples(&self.word))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    #[serde(default = "one_color")]
    pub m: u32,
    pub elements: Pairs,
    /// `[lower, upper]` by value; any relation set is accepted on input and
    /// its transitive reduction is emitted.
    #[serde(default)]
    pub covers: Pairs,
}

impl PosetJson {
    pub fn from_poset(p: &ColoredPoset) -> Self {
        let elements = p.elements().iter().map(|l| [l.value, l.color]).collect();
        Self { m: p.m(), elements, covers: pairs_of(&p.covers()) }
    }

    pub fn to_poset(&self) -> JsonResult<ColoredPoset> {
        Ok(ColoredPoset::new(self.m, &tuples(&self.elements), &tuples(&self.covers))?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSymTermJson {
    pub coeff: Coeff,
    pub comp: Pairs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSymJson {
    #[serde(default = "one_color")]
    pub m: u32,
    pub basis: Basis,
    pub terms: Vec<QSymTermJson>,
}

impl QSymJson {
    pub fn from_element(e: &QSymElement) -> Self {
        let terms = e
            .terms()
            .iter()
            .map(|(a, c)| QSymTermJson { coeff: Coeff::from_rational(c), comp: pairs_of(&a.pairs()) })
            .collect();
        Self { m: e.m(), basis: e.basis(), terms }
    }

    pub fn to_element(&self) -> JsonResult<QSymElement> {
        let mut terms = Linear::zero();
        for t in &self.terms {
            let a = ColoredComposition::from_pairs(self.m, &tuples(&t.comp))?;
            terms.add_term(a, t.coeff.to_rational()?);
        }
        Ok(QSymElement::new(self.m, self.basis, terms)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub coeff: Coeff,
    pub left: Pairs,
    pub right: Pairs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    #[serde(default = "one_color")]
    pub m: u32,
    pub basis: Basis,
    pub terms: Vec<TensorTermJson>,
}

impl TensorJson {
    pub fn from_tensor(t: &QSymTensor) -> Self {
        let terms = t
            .terms
            .iter()
            .map(|((a, b), c)| TensorTermJson {
                coeff: Coeff::from_rational(c),
                left: pairs_of(&a.pairs()),
                right: pairs_of(&b.pairs()),
            })
            .collect();
        Self { m: t.m, basis: t.basis, terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetTermJson {
    pub coeff: Coeff,
    pub poset: PosetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetElementJson {
    #[serde(default = "one_color")]
    pub m: u32,
    pub terms: Vec<PosetTermJson>,
}

impl PosetElementJson {
    pub fn from_linear(m: u32, x: &Linear<ColoredPoset>) -> Self {
        let terms = x
            .iter()
            .map(|(p, c)| PosetTermJson { coeff: Coeff::from_rational(c), poset: PosetJson::from_poset(p) })
            .collect();
        Self { m, terms }
    }

    /// Terms are canonicalized on the way in.
    pub fn to_linear(&self) -> JsonResult<Linear<ColoredPoset>> {
        let mut out = Linear::zero();
        for t in &self.terms {
            let p = t.poset.to_poset()?;
            if p.m() != self.m {
                return Err(Error::ColorCountMismatch(self.m, p.m()).into());
            }
            out.add_term(p.canonical_form(), t.coeff.to_rational()?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorPosetTermJson {
    pub coeff: Coeff,
    pub left: PosetJson,
    pub right: PosetJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetTensorJson {
    #[serde(default = "one_color")]
    pub m: u32,
    pub terms: Vec<TensorPosetTermJson>,
}

impl PosetTensorJson {
    pub fn from_tensor(m: u32, t: &Linear<(ColoredPoset, ColoredPoset)>) -> Self {
        let terms = t
            .iter()
            .map(|((a, b), c)| TensorPosetTermJson {
                coeff: Coeff::from_rational(c),
                left: PosetJson::from_poset(a),
                right: PosetJson::from_poset(b),
            })
            .collect();
        Self { m, terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    /// `[i, j, exponent]` triples.
    pub exps: Vec<[u32; 3]>,
    pub coeff: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    #[serde(rename = "N")]
    pub n: u32,
    pub m: u32,
    pub terms: Vec<PolyTermJson>,
}

impl PolynomialJson {
    pub fn from_poly(p: &TruncatedPolynomial) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| PolyTermJson {
                exps: p.factors(e).into_iter().map(|(i, j, k)| [i, j, k]).collect(),
                coeff: Coeff::from_rational(c),
            })
            .collect();
        Self { n: p.n, m: p.m, terms }
    }

    pub fn to_poly(&self) -> JsonResult<TruncatedPolynomial> {
        let mut out = TruncatedPolynomial::zero(self.n, self.m);
        for t in &self.terms {
            for &[i, j, _] in &t.exps {
                if i == 0 || i > self.n {
                    return Err(JsonError::Parse { line: 0, column: 0, message: format!("index {i} outside 1..={}", self.n) });
                }
                if j >= self.m {
                    return Err(Error::ColorOutOfRange { color: j, m: self.m }.into());
                }
            }
            let factors: Vec<_> = t.exps.iter().map(|&[i, j, k]| (i, j, k)).collect();
            let mono = TruncatedPolynomial::monomial(self.n, self.m, &factors);
            out.terms.add_term(mono, t.coeff.to_rational()?);
        }
        Ok(out)
    }
}

/// Parses `text` as `T`, reporting location on failure.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> JsonResult<T> {
    Ok(serde_json::from_str(text)?)
}

/// Parses a JSON array of exactly two payloads.
pub fn parse_pair<T: for<'de> Deserialize<'de>>(text: &str) -> JsonResult<(T, T)> {
    let v: Value = serde_json::from_str(text)?;
    match v {
        Value::Array(items) if items.len() == 2 => {
            let mut it = items.into_iter();
            let a = serde_json::from_value(it.next().expect("two items"))?;
            let b = serde_json::from_value(it.next().expect("two items"))?;
            Ok((a, b))
        }
        _ => Err(JsonError::Parse { line: 1, column: 1, message: "expected an array of two operands".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rat_frac;

    #[test]
    fn coefficients_round_trip() {
        for r in [rat_frac(3, 4), rat_frac(-7, 1), rat_frac(0, 1)] {
            assert_eq!(Coeff::from_rational(&r).to_rational().unwrap(), r);
        }
        assert_eq!(Coeff::Text("6/4".into()).to_rational().unwrap(), rat_frac(3, 2));
        assert!(Coeff::Text("1/0".into()).to_rational().is_err());
    }

    #[test]
    fn poset_format() {
        let j: PosetJson = parse(r#"{"m": 2, "elements": [[1,0],[5,0],[4,1]], "covers": [[5,1],[5,4]]}"#).unwrap();
        let p = j.to_poset().unwrap();
        assert_eq!(p.covers(), vec![(5, 1), (5, 4)]);
        assert_eq!(PosetJson::from_poset(&p).to_poset().unwrap(), p);
        let dup: PosetJson = parse(r#"{"m": 1, "elements": [[1,0],[1,0]], "covers": []}"#).unwrap();
        assert!(matches!(dup.to_poset(), Err(JsonError::Domain(Error::DuplicateValue(1)))));
    }

    #[test]
    fn parse_errors_carry_location() {
        match parse::<PosetJson>("{\n  \"m\": }") {
            Err(JsonError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn qsym_format_round_trip() {
        let j: QSymJson = parse(r#"{"m":2,"basis":"F","terms":[{"coeff":"1/2","comp":[[1,0],[2,1],[1,1]]},{"coeff":3,"comp":[]}]}"#).unwrap();
        let e = j.to_element().unwrap();
        let back = QSymJson::from_element(&e);
        assert_eq!(back.to_element().unwrap().terms(), e.terms());
        let text = serde_json::to_string(&back).unwrap();
        assert_eq!(parse::<QSymJson>(&text).unwrap(), back);
    }

    #[test]
    fn pair_payloads() {
        let (a, b): (CompositionJson, CompositionJson) =
            parse_pair(r#"[{"m":1,"comp":[[2,0]]},{"m":1,"comp":[[1,0]]}]"#).unwrap();
        assert_eq!(a.comp, vec![[2, 0]]);
        assert_eq!(b.comp, vec![[1, 0]]);
        assert!(parse_pair::<CompositionJson>("[1]").is_err());
    }
}
