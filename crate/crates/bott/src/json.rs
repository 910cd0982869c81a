//! JSON wire formats for every externally visible type.
//!
//! Integers are emitted as JSON numbers when they fit in `i64` and as
//! decimal strings otherwise; both forms are accepted on input.  All indices
//! are 1-based on the wire, matching the mathematical notation.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::base_change::{
    DegreeTwo, ExceptionalKind, ExceptionalReport, PairBranch, PairDecomposition,
};
use crate::error::{Error, Result};
use crate::iso::{DegreeTwoMap, IsoDescriptor};
use crate::matrix::BottMatrix;
use crate::perm::Perm;
use crate::rigidity::{CertFactor, CertFactorKind, DiffeoCertificate};
use crate::ring::{CohomClass, Monomial};
use crate::scalar::{Int, Rat};

/// Arbitrary-precision integer on the wire.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JInt(pub Int);

impl Serialize for JInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => serializer.serialize_i64(v),
            Err(_) => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

struct JIntVisitor;

impl Visitor<'_> for JIntVisitor {
    type Value = JInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JInt, E> {
        Ok(JInt(Int::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JInt, E> {
        Ok(JInt(Int::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JInt, E> {
        Int::from_str(v).map(JInt).map_err(|_| {
            de::Error::invalid_value(de::Unexpected::Str(v), &"a decimal integer string")
        })
    }
}

impl<'de> Deserialize<'de> for JInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<JInt, D::Error> {
        deserializer.deserialize_any(JIntVisitor)
    }
}

fn jint_one() -> JInt {
    JInt(Int::one())
}

fn jint_is_one(v: &JInt) -> bool {
    v.0.is_one()
}

/// A rational as a `num`/`den` pair; `den` is always positive on output.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RatJson {
    pub num: JInt,
    pub den: JInt,
}

impl From<&Rat> for RatJson {
    fn from(r: &Rat) -> Self {
        RatJson {
            num: JInt(r.numer().clone()),
            den: JInt(r.denom().clone()),
        }
    }
}

impl RatJson {
    pub fn to_rat(&self) -> Result<Rat> {
        if self.den.0.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rat::new(self.num.0.clone(), self.den.0.clone()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<JInt>>,
}

impl From<&BottMatrix> for MatrixJson {
    fn from(a: &BottMatrix) -> Self {
        MatrixJson {
            n: a.stage(),
            entries: a
                .rows()
                .iter()
                .map(|r| r.iter().map(|v| JInt(v.clone())).collect())
                .collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<BottMatrix> {
        if self.entries.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "matrix claims stage {} but has {} rows",
                self.n,
                self.entries.len()
            )));
        }
        BottMatrix::new(
            self.entries
                .iter()
                .map(|r| r.iter().map(|v| v.0.clone()).collect())
                .collect(),
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub mono: Vec<usize>,
    pub num: JInt,
    #[serde(default = "jint_one", skip_serializing_if = "jint_is_one")]
    pub den: JInt,
}

/// `{"terms": [...]}` with terms in canonical monomial order; `den` is
/// omitted for integral coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassJson {
    pub terms: Vec<TermJson>,
}

impl From<&CohomClass<Int>> for ClassJson {
    fn from(cl: &CohomClass<Int>) -> Self {
        ClassJson {
            terms: cl
                .terms()
                .map(|(m, c)| TermJson {
                    mono: m.support().to_vec(),
                    num: JInt(c.clone()),
                    den: jint_one(),
                })
                .collect(),
        }
    }
}

impl From<&CohomClass<Rat>> for ClassJson {
    fn from(cl: &CohomClass<Rat>) -> Self {
        ClassJson {
            terms: cl
                .terms()
                .map(|(m, c)| TermJson {
                    mono: m.support().to_vec(),
                    num: JInt(c.numer().clone()),
                    den: JInt(c.denom().clone()),
                })
                .collect(),
        }
    }
}

impl ClassJson {
    pub fn to_rational_class(&self, n: usize) -> Result<CohomClass<Rat>> {
        let mut out = CohomClass::zero(n);
        for t in &self.terms {
            let mono = Monomial::new(t.mono.clone())?;
            if t.mono.last().is_some_and(|&v| v > n) {
                return Err(Error::IndexOutOfRange {
                    index: *t.mono.last().unwrap(),
                    n,
                });
            }
            if t.den.0.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            out.add_term(mono, Rat::new(t.num.0.clone(), t.den.0.clone()));
        }
        Ok(out)
    }

    pub fn to_integral_class(&self, n: usize) -> Result<CohomClass<Int>> {
        self.to_rational_class(n)?
            .to_integral()
            .ok_or_else(|| Error::InvalidInput("class has non-integral coefficients".into()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DegreeTwoJson {
    pub x_coeffs: Vec<JInt>,
}

impl From<&DegreeTwo> for DegreeTwoJson {
    fn from(u: &DegreeTwo) -> Self {
        DegreeTwoJson {
            x_coeffs: u.coeffs().iter().map(|c| JInt(c.clone())).collect(),
        }
    }
}

impl DegreeTwoJson {
    pub fn to_degree_two(&self) -> Result<DegreeTwo> {
        DegreeTwo::new(self.x_coeffs.iter().map(|c| c.0.clone()).collect())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExceptionalJson {
    pub j: usize,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<JInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
}

impl From<&ExceptionalReport> for ExceptionalJson {
    fn from(r: &ExceptionalReport) -> Self {
        match &r.kind {
            ExceptionalKind::None => ExceptionalJson {
                j: r.j,
                kind: "none".into(),
                c: None,
                i: None,
            },
            ExceptionalKind::Exceptional { c, i } => ExceptionalJson {
                j: r.j,
                kind: "exceptional".into(),
                c: Some(JInt(c.clone())),
                i: Some(*i),
            },
            ExceptionalKind::EvenExceptional { c, i } => ExceptionalJson {
                j: r.j,
                kind: "even_exceptional".into(),
                c: Some(JInt(c.clone())),
                i: Some(*i),
            },
        }
    }
}

fn map_rows_json(m: &DegreeTwoMap) -> Vec<Vec<JInt>> {
    m.rows()
        .iter()
        .map(|r| r.iter().map(|v| JInt(v.clone())).collect())
        .collect()
}

fn map_from_rows_json(rows: &[Vec<JInt>]) -> Result<DegreeTwoMap> {
    DegreeTwoMap::new(
        rows.iter()
            .map(|r| r.iter().map(|v| v.0.clone()).collect())
            .collect(),
    )
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IsoJson {
    pub matrix: Vec<Vec<JInt>>,
    pub sigma: Vec<usize>,
    pub q: Vec<RatJson>,
}

impl From<&IsoDescriptor> for IsoJson {
    fn from(d: &IsoDescriptor) -> Self {
        IsoJson {
            matrix: map_rows_json(d.map()),
            sigma: d.sigma().images().to_vec(),
            q: d.q().iter().map(RatJson::from).collect(),
        }
    }
}

impl IsoJson {
    pub fn to_descriptor(&self) -> Result<IsoDescriptor> {
        let map = map_from_rows_json(&self.matrix)?;
        let sigma = Perm::new(self.sigma.clone())?;
        let q = self
            .q
            .iter()
            .map(|r| r.to_rat())
            .collect::<Result<Vec<Rat>>>()?;
        IsoDescriptor::from_parts(map, sigma, q)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<JInt>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<Vec<usize>>,
    pub source: MatrixJson,
    pub target: MatrixJson,
    pub map: Vec<Vec<JInt>>,
}

impl From<&CertFactor> for FactorJson {
    fn from(f: &CertFactor) -> Self {
        let (kind, j, i, c, sigma) = match &f.kind {
            CertFactorKind::Normalization { j, i, c } => (
                "normalization".to_string(),
                Some(*j),
                Some(*i),
                Some(JInt(c.clone())),
                None,
            ),
            CertFactorKind::Permutation { sigma } => (
                "permutation".to_string(),
                None,
                None,
                None,
                Some(sigma.images().to_vec()),
            ),
            CertFactorKind::UpperTriangular => {
                ("upper_triangular".to_string(), None, None, None, None)
            }
        };
        FactorJson {
            kind,
            j,
            i,
            c,
            sigma,
            source: MatrixJson::from(&f.source),
            target: MatrixJson::from(&f.target),
            map: map_rows_json(&f.map),
        }
    }
}

impl FactorJson {
    pub fn to_factor(&self) -> Result<CertFactor> {
        let kind = match self.kind.as_str() {
            "normalization" => {
                let (Some(j), Some(i), Some(c)) = (self.j, self.i, self.c.clone()) else {
                    return Err(Error::InvalidInput(
                        "normalization factor needs j, i and c".into(),
                    ));
                };
                CertFactorKind::Normalization { j, i, c: c.0 }
            }
            "permutation" => {
                let Some(images) = self.sigma.clone() else {
                    return Err(Error::InvalidInput("permutation factor needs sigma".into()));
                };
                CertFactorKind::Permutation {
                    sigma: Perm::new(images)?,
                }
            }
            "upper_triangular" => CertFactorKind::UpperTriangular,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown certificate factor kind: {}",
                    other
                )))
            }
        };
        Ok(CertFactor {
            kind,
            source: self.source.to_matrix()?,
            target: self.target.to_matrix()?,
            map: map_from_rows_json(&self.map)?,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertificateJson {
    pub factors: Vec<FactorJson>,
    pub composite: Vec<Vec<JInt>>,
}

impl From<&DiffeoCertificate> for CertificateJson {
    fn from(c: &DiffeoCertificate) -> Self {
        CertificateJson {
            factors: c.chain.iter().map(FactorJson::from).collect(),
            composite: map_rows_json(&c.composite),
        }
    }
}

impl CertificateJson {
    pub fn to_certificate(&self) -> Result<DiffeoCertificate> {
        Ok(DiffeoCertificate {
            chain: self
                .factors
                .iter()
                .map(|f| f.to_factor())
                .collect::<Result<Vec<_>>>()?,
            composite: map_from_rows_json(&self.composite)?,
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub a: JInt,
    pub j: usize,
    pub w: DegreeTwoJson,
    pub branch: String,
    pub swapped: bool,
}

impl From<&PairDecomposition> for DecompositionJson {
    fn from(d: &PairDecomposition) -> Self {
        DecompositionJson {
            a: JInt(d.a_coeff.clone()),
            j: d.j,
            w: DegreeTwoJson::from(&d.w),
            branch: match d.branch {
                PairBranch::SameSign => "same_sign".into(),
                PairBranch::OppositeSign => "opposite_sign".into(),
            },
            swapped: d.swapped,
        }
    }
}

/// Reads a Bott matrix from a JSON file.
pub fn read_matrix_file(path: &std::path::Path) -> Result<BottMatrix> {
    let text = std::fs::read_to_string(path)?;
    let wire: MatrixJson = serde_json::from_str(&text)?;
    wire.to_matrix()
}
