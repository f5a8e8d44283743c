//! JSON descriptors. Rationals are strings (`"p/q"`, or `"p"` for integers);
//! facet labels in files are 1-based.

use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::moment_angle::QuadraticSystem;
use crate::polytope::{CombPolytope, HPolytope, HalfSpace, Sign};
use crate::quasitoric::{CharMatrix, OmniQT};
use crate::rational::{self, Rational};

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format_rational).collect()
}

fn parse_vec(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| rational::parse_rational(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfSpaceDesc {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytopeDesc {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpaceDesc>,
}

impl From<&HPolytope> for HPolytopeDesc {
    fn from(p: &HPolytope) -> Self {
        HPolytopeDesc {
            dim: p.dim(),
            halfspaces: p
                .halfspaces()
                .iter()
                .map(|h| HalfSpaceDesc { normal: fmt_vec(&h.normal), offset: rational::format_rational(&h.offset) })
                .collect(),
        }
    }
}

impl HPolytopeDesc {
    pub fn to_polytope(&self) -> Result<HPolytope> {
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| Ok(HalfSpace { normal: parse_vec(&h.normal)?, offset: rational::parse_rational(&h.offset)? }))
            .collect::<Result<Vec<_>>>()?;
        HPolytope::from_halfspaces(self.dim, halfspaces)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombDesc {
    pub dim: usize,
    pub num_facets: usize,
    pub vertices: Vec<Vec<usize>>,
}

impl From<&CombPolytope> for CombDesc {
    fn from(p: &CombPolytope) -> Self {
        CombDesc {
            dim: p.dim(),
            num_facets: p.num_facets(),
            vertices: p.vertex_sets().iter().map(|v| v.iter().map(|f| f + 1).collect()).collect(),
        }
    }
}

fn zero_based(v: &[usize]) -> Result<Vec<usize>> {
    v.iter().map(|&f| f.checked_sub(1).ok_or_else(|| Error::Parse("facet labels are 1-based".into()))).collect()
}

impl CombDesc {
    pub fn to_polytope(&self) -> Result<CombPolytope> {
        let sets = self.vertices.iter().map(|v| zero_based(v)).collect::<Result<Vec<_>>>()?;
        CombPolytope::new(self.dim, self.num_facets, sets)
    }
}

fn vertex_key(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|f| (f + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn parse_vertex_key(s: &str) -> Result<Vec<usize>> {
    let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(|| Error::Parse(format!("bad vertex key {s:?}")))?;
    let labels = inner
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex key {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut v = zero_based(&labels)?;
    v.sort_unstable();
    Ok(v)
}

/// Vertex signs keyed by `"[i1,...,in]"` (1-based), kept in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignMap(pub Vec<(String, i64)>);

impl Serialize for SignMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for SignMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SignVisitor;
        impl<'de> Visitor<'de> for SignVisitor {
            type Value = SignMap;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from vertex keys to 1 or -1")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<SignMap, A::Error> {
                let mut entries = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, i64>()? {
                    entries.push((k, v));
                }
                Ok(SignMap(entries))
            }
        }
        deserializer.deserialize_map(SignVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmniDesc {
    pub polytope: CombDesc,
    pub lambda_star: Vec<Vec<i64>>,
    pub signs: SignMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<HPolytopeDesc>,
}

/// Parsed pieces of a descriptor before the dicharacteristic is validated.
#[derive(Clone, Debug)]
pub struct OmniParts {
    pub polytope: CombPolytope,
    pub lambda: CharMatrix,
    pub signs: Vec<Sign>,
    pub geometry: Option<HPolytope>,
}

impl From<&OmniQT> for OmniDesc {
    fn from(m: &OmniQT) -> Self {
        OmniDesc {
            polytope: m.polytope().into(),
            lambda_star: m.lambda_star(),
            signs: SignMap(m.polytope().vertex_sets().iter().zip(m.signs()).map(|(v, s)| (vertex_key(v), s.value())).collect()),
            geometry: m.geometry().map(HPolytopeDesc::from),
        }
    }
}

impl OmniDesc {
    pub fn parts(&self) -> Result<OmniParts> {
        let polytope = self.polytope.to_polytope()?;
        let (n, m) = (polytope.dim(), polytope.num_facets());
        if self.lambda_star.len() != n || self.lambda_star.iter().any(|r| r.len() != m - n) {
            return Err(Error::Parse(format!("lambda_star must be {n}×{}", m - n)));
        }
        let lambda = CharMatrix::from_refined(&self.lambda_star)?;
        let mut signs: Vec<Option<Sign>> = vec![None; polytope.num_vertices()];
        for (k, v) in &self.signs.0 {
            let w = parse_vertex_key(k)?;
            let i = polytope.vertex_index(&w).ok_or_else(|| Error::Parse(format!("sign given for non-vertex {k}")))?;
            let s = Sign::from_value(*v).ok_or_else(|| Error::Parse(format!("sign of {k} must be 1 or -1")))?;
            if signs[i].replace(s).is_some() {
                return Err(Error::Parse(format!("duplicate sign for {k}")));
            }
        }
        let signs = signs
            .into_iter()
            .zip(polytope.vertex_sets())
            .map(|(s, w)| s.ok_or_else(|| Error::Parse(format!("missing sign for vertex {}", vertex_key(w)))))
            .collect::<Result<Vec<_>>>()?;
        let geometry = self.geometry.as_ref().map(HPolytopeDesc::to_polytope).transpose()?;
        Ok(OmniParts { polytope, lambda, signs, geometry })
    }

    pub fn to_omniqt(&self) -> Result<OmniQT> {
        let p = self.parts()?;
        OmniQT::new(p.polytope, p.lambda, p.signs, p.geometry)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricDesc {
    pub coeffs: Vec<String>,
    pub constant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticDesc {
    pub m: usize,
    pub equations: Vec<QuadricDesc>,
}

impl From<&QuadraticSystem> for QuadraticDesc {
    fn from(s: &QuadraticSystem) -> Self {
        QuadraticDesc {
            m: s.num_complex_vars,
            equations: s
                .equations
                .iter()
                .map(|e| QuadricDesc { coeffs: fmt_vec(&e.coeffs), constant: rational::format_rational(&e.constant) })
                .collect(),
        }
    }
}

pub fn rational_matrix(a: &[Vec<Rational>]) -> Vec<Vec<String>> {
    a.iter().map(|r| fmt_vec(r)).collect()
}

pub fn rational_vector(v: &[Rational]) -> Vec<String> {
    fmt_vec(v)
}

/// A shift vector file: a JSON array of rational strings.
pub fn parse_shift(json: &str) -> Result<Vec<Rational>> {
    let raw: Vec<String> = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    parse_vec(&raw)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(json: &str) -> Result<T> {
    serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("descriptors always serialize")
}
