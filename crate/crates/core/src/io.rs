//! File formats: generating-set JSON, almost-representation JSON, and the
//! 17-significant-digit float formatting shared by every report.

use std::collections::HashSet;
use std::fmt;
use std::marker::PhantomData;

use num_complex::Complex;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::almostrep::AlmostRep;
use crate::error::{Error, Result};
use crate::genset::GeneratingSet;
use crate::linalg::CMat;
use crate::scalar::Real;

/// Formats a float with 17 significant digits (`1.2500000000000000e0`).
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        // keeps -0.0 and 0.0 byte-identical
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

pub fn sig17<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(fmt17(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub fn sig17_opt<S: Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig17(v, s),
        None => s.serialize_none(),
    }
}

struct Sig17<'a>(&'a f64);

impl Serialize for Sig17<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        sig17(self.0, s)
    }
}

pub fn sig17_vec<S: Serializer>(xs: &[f64], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(Sig17))
}

pub fn sig17_pairs<S: Serializer>(xs: &[[f64; 2]], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|p| [Sig17(&p[0]), Sig17(&p[1])]))
}

/// JSON object that rejects duplicate keys and keeps document order.
#[derive(Debug)]
pub struct StrictMap<V>(pub Vec<(String, V)>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for StrictMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V_<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V_<V> {
            type Value = StrictMap<V>;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a JSON object without duplicate keys")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, V>()? {
                    if !seen.insert(k.clone()) {
                        return Err(de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(StrictMap(out))
            }
        }
        d.deserialize_map(V_(PhantomData))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GensetDoc {
    symbols: Vec<String>,
    inverse: StrictMap<String>,
    product: StrictMap<String>,
}

/// Parses the generating-set JSON format
/// `{"symbols": [..], "inverse": {"s": "sinv"}, "product": {"s1,s2": "t"}}`.
pub fn parse_genset(text: &str) -> Result<GeneratingSet> {
    let doc: GensetDoc = serde_json::from_str(text)?;
    let n = doc.symbols.len();
    let lookup = |label: &str| -> Result<usize> {
        doc.symbols
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::Parse(format!("unknown label `{label}`")))
    };
    let mut inverse = vec![None; n];
    for (k, v) in &doc.inverse.0 {
        let (a, b) = (lookup(k)?, lookup(v)?);
        inverse[a] = Some(b);
    }
    let inverse = inverse
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| Error::Parse(format!("no inverse given for `{}`", doc.symbols[i]))))
        .collect::<Result<Vec<_>>>()?;
    let mut products = Vec::with_capacity(doc.product.0.len());
    for (k, v) in &doc.product.0 {
        let (l, r) = k
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("product key `{k}` is not `s1,s2`")))?;
        products.push((lookup(l)?, lookup(r)?, lookup(v)?));
    }
    GeneratingSet::new(doc.symbols, inverse, products)
}

struct GensetView<'a>(&'a GeneratingSet);

impl Serialize for GensetView<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Inverse<'a>(&'a GeneratingSet);
        impl Serialize for Inverse<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let gs = self.0;
                let mut m = s.serialize_map(Some(gs.len()))?;
                for i in 0..gs.len() {
                    m.serialize_entry(gs.label(i), gs.label(gs.inverse(i)))?;
                }
                m.end()
            }
        }
        struct Product<'a>(&'a GeneratingSet);
        impl Serialize for Product<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let gs = self.0;
                let mut m = s.serialize_map(Some(gs.product_count()))?;
                for (a, b, c) in gs.products() {
                    m.serialize_entry(&format!("{},{}", gs.label(a), gs.label(b)), gs.label(c))?;
                }
                m.end()
            }
        }
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("symbols", self.0.symbols())?;
        m.serialize_entry("inverse", &Inverse(self.0))?;
        m.serialize_entry("product", &Product(self.0))?;
        m.end()
    }
}

/// Serializes a generating set; keys follow symbol order.
pub fn genset_to_json(gs: &GeneratingSet) -> String {
    serde_json::to_string_pretty(&GensetView(gs)).expect("in-memory serialization")
}

type MatrixRows = Vec<Vec<[f64; 2]>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    dim: usize,
    matrices: StrictMap<MatrixRows>,
}

/// Parses the almost-representation JSON format
/// `{"dim": d, "matrices": {"sym": [[[re, im], …], …]}}` (row-major).
///
/// One matrix per inverse orbit suffices; the partner is the conjugate
/// transpose. Supplying both with a mismatch beyond `tol_unitary` is an
/// error, as is any non-unitary matrix.
pub fn parse_rep<R: Real>(text: &str, gs: &GeneratingSet, tol_unitary: f64) -> Result<AlmostRep<R>> {
    let doc: RepDoc = serde_json::from_str(text)?;
    let d = doc.dim;
    if d == 0 {
        return Err(Error::Parse("dim must be positive".into()));
    }
    let mut given: Vec<Option<CMat<R>>> = vec![None; gs.len()];
    for (label, rows) in doc.matrices.0 {
        let s = gs
            .index_of(&label)
            .ok_or_else(|| Error::Parse(format!("unknown label `{label}`")))?;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Parse(format!("matrix for `{label}` is not {d}x{d}")));
        }
        given[s] = Some(CMat::<R>::from_fn(d, d, |i, j| {
            let [a, b] = rows[i][j];
            Complex::new(R::of(a), R::of(b))
        }));
    }
    AlmostRep::from_partial(gs, d, given, R::of(tol_unitary))
}

#[derive(Serialize)]
struct RepOut {
    dim: usize,
    matrices: RepMatrices,
}

struct RepMatrices(Vec<(String, Vec<Vec<[f64; 2]>>)>);

impl Serialize for RepMatrices {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Rows<'a>(&'a [Vec<[f64; 2]>]);
        impl Serialize for Rows<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_seq(self.0.iter().map(|r| Row(r)))
            }
        }
        struct Row<'a>(&'a [[f64; 2]]);
        impl Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                sig17_pairs(self.0, s)
            }
        }
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, &Rows(v))?;
        }
        m.end()
    }
}

/// Serializes every symbol's matrix, in symbol order.
pub fn rep_to_json<R: Real>(rep: &AlmostRep<R>, gs: &GeneratingSet) -> String {
    let matrices = (0..gs.len())
        .map(|s| {
            let m = rep.matrix(s);
            let rows = (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re.as_f64(), m[(i, j)].im.as_f64()]).collect())
                .collect();
            (gs.label(s).to_string(), rows)
        })
        .collect();
    serde_json::to_string(&RepOut { dim: rep.dim(), matrices: RepMatrices(matrices) })
        .expect("in-memory serialization")
}

/// Complex vector as `[[re, im], …]` for witnesses.
pub fn complex_pairs<R: Real>(v: impl IntoIterator<Item = Complex<R>>) -> Vec<[f64; 2]> {
    v.into_iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genset::symmetric_group_s3;

    #[test]
    fn fmt17_has_seventeen_digits() {
        assert_eq!(fmt17(1.25), "1.2500000000000000e0");
        assert_eq!(fmt17(-0.0), fmt17(0.0));
        let x = 0.1 + 0.2;
        assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn genset_round_trip() {
        let gs = symmetric_group_s3().genset;
        let text = genset_to_json(&gs);
        assert_eq!(parse_genset(&text).unwrap(), gs);
    }

    #[test]
    fn duplicate_keys_rejected() {
        let text = r#"{"symbols": ["a","b"], "inverse": {"a":"b","b":"a","a":"b"}, "product": {}}"#;
        assert!(parse_genset(text).is_err());
        let text = r#"{"symbols": ["a","b"], "inverse": {"a":"b","b":"a"}, "product": {"a,a":"b","a,a":"b"}}"#;
        assert!(parse_genset(text).is_err());
    }

    #[test]
    fn unknown_labels_rejected() {
        let text = r#"{"symbols": ["a","b"], "inverse": {"a":"b","b":"a"}, "product": {"a,c":"b"}}"#;
        assert!(matches!(parse_genset(text), Err(Error::Parse(_))));
        let text = r#"{"symbols": ["a","b"], "inverse": {"a":"z","b":"a"}, "product": {}}"#;
        assert!(parse_genset(text).is_err());
    }

    #[test]
    fn missing_inverse_rejected() {
        let text = r#"{"symbols": ["a","b"], "inverse": {"a":"b"}, "product": {}}"#;
        assert!(parse_genset(text).is_err());
    }
}
