//! JSON documents for pairs, functions, certificates, witnesses and
//! verdicts. Rationals are `"num/den"` strings, parsed exactly; a bad
//! literal is reported with its JSON path.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::LinearForm;
use crate::lie::matrix::MatrixPairInput;
use crate::pair::PairSpec;
use crate::pl::PLFunction;
use crate::scalar::Scalar;
use crate::temper::Verdict;
use crate::torus::TorusSpace;
use crate::verify::{Certificate, Chamber, Evidence, Stats, SymmetryGroup, Witness};
use crate::weights::WeightModule;
use crate::Rational;

pub const SCHEMA_VERSION: u32 = 1;

/// A rational as its `"num/den"` text.
#[derive(Clone, Debug, PartialEq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_text())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Rational::parse_text(&text).map(Q).map_err(de::Error::custom)
    }
}

fn qs(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q).collect()
}

fn unq(v: Vec<Q>) -> Vec<Rational> {
    v.into_iter().map(|q| q.0).collect()
}

fn form(v: Vec<Q>) -> LinearForm<Rational> {
    LinearForm::new(unq(v))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusDoc {
    pub ambient_dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default)]
    pub constraints: Vec<Vec<Q>>,
}

impl TorusDoc {
    pub fn from_space(t: &TorusSpace<Rational>) -> Self {
        TorusDoc {
            ambient_dim: t.ambient_dim(),
            labels: t.labels().to_vec(),
            constraints: t.constraints().iter().map(|c| qs(c.coeffs())).collect(),
        }
    }

    pub fn to_space(&self) -> Result<TorusSpace<Rational>> {
        TorusSpace::new(
            self.ambient_dim,
            self.labels.clone(),
            self.constraints.iter().cloned().map(form).collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDoc {
    pub form: Vec<Q>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default)]
    pub name: String,
    pub weights: Vec<WeightDoc>,
}

impl ModuleDoc {
    pub fn from_module(m: &WeightModule<Rational>) -> Self {
        ModuleDoc {
            name: m.name().to_string(),
            weights: m
                .weights()
                .iter()
                .map(|(f, k)| WeightDoc {
                    form: qs(f.coeffs()),
                    multiplicity: *k,
                })
                .collect(),
        }
    }

    pub fn to_module(&self, space: &TorusSpace<Rational>) -> Result<WeightModule<Rational>> {
        WeightModule::new(
            space.clone(),
            self.name.clone(),
            self.weights.iter().map(|w| (form(w.form.clone()), w.multiplicity)).collect::<Vec<_>>(),
        )
    }
}

/// A pair: the torus, `h`, `g/h` and an optional module `V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub torus: TorusDoc,
    pub h_module: ModuleDoc,
    pub quotient_module: ModuleDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_module: Option<ModuleDoc>,
    #[serde(default)]
    pub metadata: String,
}

impl PairDoc {
    pub fn from_pair(p: &PairSpec<Rational>) -> Self {
        PairDoc {
            torus: TorusDoc::from_space(p.space()),
            h_module: ModuleDoc::from_module(p.h_module()),
            quotient_module: ModuleDoc::from_module(p.g_module()),
            v_module: p.v_module().map(ModuleDoc::from_module),
            metadata: p.metadata().to_string(),
        }
    }

    pub fn to_pair(&self) -> Result<PairSpec<Rational>> {
        let space = self.torus.to_space()?;
        let v = self.v_module.as_ref().map(|m| m.to_module(&space)).transpose()?;
        PairSpec::new(
            self.quotient_module.to_module(&space)?,
            self.h_module.to_module(&space)?,
            v,
            self.metadata.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: Q,
    pub form: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDoc {
    pub torus: TorusDoc,
    pub abs_terms: Vec<TermDoc>,
    pub linear: Vec<Q>,
}

impl FunctionDoc {
    pub fn from_function(f: &PLFunction<Rational>) -> Self {
        FunctionDoc {
            torus: TorusDoc::from_space(f.space()),
            abs_terms: f
                .abs_terms()
                .iter()
                .map(|(c, a)| TermDoc {
                    coeff: Q(c.clone()),
                    form: qs(a.coeffs()),
                })
                .collect(),
            linear: qs(f.linear_term().coeffs()),
        }
    }

    pub fn to_function(&self) -> Result<PLFunction<Rational>> {
        PLFunction::new(
            self.torus.to_space()?,
            self.abs_terms.iter().map(|t| (t.coeff.0.clone(), form(t.form.clone()))).collect(),
            form(self.linear.clone()),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChamberDoc {
    pub sign_vector: Vec<i8>,
    pub rays: Vec<usize>,
    pub restricted_linear_form: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub function: FunctionDoc,
    pub hyperplanes: Vec<Vec<Q>>,
    pub region: Vec<Vec<Q>>,
    pub symmetry: SymmetryGroup,
    pub antipodal_pruned: bool,
    pub rays: Vec<Vec<Q>>,
    pub ray_values: Vec<Q>,
    pub chambers: Vec<ChamberDoc>,
}

impl CertificateDoc {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateDoc {
            function: FunctionDoc::from_function(&c.function),
            hyperplanes: c.hyperplanes.iter().map(|h| qs(h.coeffs())).collect(),
            region: c.region.iter().map(|h| qs(h.coeffs())).collect(),
            symmetry: c.symmetry.clone(),
            antipodal_pruned: c.antipodal_pruned,
            rays: c.rays.iter().map(|r| qs(r)).collect(),
            ray_values: qs(&c.ray_values),
            chambers: c
                .chambers
                .iter()
                .map(|ch| ChamberDoc {
                    sign_vector: ch.sign_vector.clone(),
                    rays: ch.rays.clone(),
                    restricted_linear_form: qs(ch.restricted_linear_form.coeffs()),
                })
                .collect(),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate> {
        let function = self.function.to_function()?;
        let n = function.space().ambient_dim();
        let checked = |v: &Vec<Q>| {
            if v.len() == n {
                Ok(form(v.clone()))
            } else {
                Err(Error::ArityMismatch {
                    expected: n,
                    found: v.len(),
                })
            }
        };
        Ok(Certificate {
            hyperplanes: self.hyperplanes.iter().map(checked).collect::<Result<_>>()?,
            region: self.region.iter().map(checked).collect::<Result<_>>()?,
            symmetry: self.symmetry.clone(),
            antipodal_pruned: self.antipodal_pruned,
            rays: self.rays.iter().map(|r| unq(r.clone())).collect(),
            ray_values: unq(self.ray_values.clone()),
            chambers: self
                .chambers
                .iter()
                .map(|c| {
                    Ok(Chamber {
                        sign_vector: c.sign_vector.clone(),
                        rays: c.rays.clone(),
                        restricted_linear_form: checked(&c.restricted_linear_form)?,
                    })
                })
                .collect::<Result<_>>()?,
            function,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub function: FunctionDoc,
    pub direction: Vec<Q>,
    pub value: Q,
}

impl WitnessDoc {
    pub fn from_witness(w: &Witness) -> Self {
        WitnessDoc {
            function: FunctionDoc::from_function(&w.function),
            direction: qs(&w.direction),
            value: Q(w.value.clone()),
        }
    }

    pub fn to_witness(&self) -> Result<Witness> {
        Ok(Witness {
            function: self.function.to_function()?,
            direction: unq(self.direction.clone()),
            value: self.value.0.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidenceDoc {
    Certificate(CertificateDoc),
    Witness(WitnessDoc),
}

impl EvidenceDoc {
    pub fn from_evidence(e: &Evidence) -> Self {
        match e {
            Evidence::Certificate(c) => EvidenceDoc::Certificate(CertificateDoc::from_certificate(c)),
            Evidence::Witness(w) => EvidenceDoc::Witness(WitnessDoc::from_witness(w)),
        }
    }

    pub fn to_evidence(&self) -> Result<Evidence> {
        Ok(match self {
            EvidenceDoc::Certificate(c) => Evidence::Certificate(c.to_certificate()?),
            EvidenceDoc::Witness(w) => Evidence::Witness(w.to_witness()?),
        })
    }
}

/// Evidence as a standalone file (what `recheck` reads).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceFile {
    pub schema_version: u32,
    pub evidence: EvidenceDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    pub schema_version: u32,
    pub tempered: bool,
    pub metadata: String,
    pub stats: Stats,
    pub evidence: EvidenceDoc,
}

impl VerdictDoc {
    pub fn from_verdict(v: &Verdict) -> Self {
        VerdictDoc {
            schema_version: SCHEMA_VERSION,
            tempered: v.tempered,
            metadata: v.metadata.clone(),
            stats: v.stats,
            evidence: EvidenceDoc::from_evidence(&v.evidence),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub ambient_dim: usize,
    pub g_basis: Vec<Vec<Vec<Q>>>,
    pub h_basis: Vec<Vec<Vec<Q>>>,
    pub torus_basis: Vec<Vec<Vec<Q>>>,
    pub diagonalizer: Vec<Vec<Q>>,
}

fn matrix_out(m: &[Vec<Rational>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| qs(r)).collect()
}

fn matrix_in(m: &[Vec<Q>]) -> Vec<Vec<Rational>> {
    m.iter().map(|r| unq(r.clone())).collect()
}

impl MatrixDoc {
    pub fn from_input(m: &MatrixPairInput) -> Self {
        MatrixDoc {
            ambient_dim: m.ambient_dim,
            g_basis: m.g_basis.iter().map(|x| matrix_out(x)).collect(),
            h_basis: m.h_basis.iter().map(|x| matrix_out(x)).collect(),
            torus_basis: m.torus_basis.iter().map(|x| matrix_out(x)).collect(),
            diagonalizer: matrix_out(&m.diagonalizer),
        }
    }

    pub fn to_input(&self) -> MatrixPairInput {
        MatrixPairInput {
            ambient_dim: self.ambient_dim,
            g_basis: self.g_basis.iter().map(|x| matrix_in(x)).collect(),
            h_basis: self.h_basis.iter().map(|x| matrix_in(x)).collect(),
            torus_basis: self.torus_basis.iter().map(|x| matrix_in(x)).collect(),
            diagonalizer: matrix_in(&self.diagonalizer),
        }
    }
}

/// Parses JSON, reporting the path of the offending value on failure.
pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Malformed(format!("at {path}: {}", e.into_inner()))
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_sl_block, BlockPattern, TorusMode};
    use crate::verify::{is_nonnegative, recheck_certificate};

    #[test]
    fn pair_round_trip() {
        let p = build_sl_block(&BlockPattern::table2("H11", 2, 1, 2).unwrap(), TorusMode::Derived).unwrap();
        let doc = PairDoc::from_pair(&p);
        let back: PairDoc = from_json(&to_json(&doc)).unwrap();
        let q = back.to_pair().unwrap();
        assert!(q.h_module().same_weights(p.h_module()));
        assert!(q.deficit().equals(&p.deficit()));
    }

    #[test]
    fn certificate_round_trip() {
        let p = build_sl_block(&BlockPattern::table1("H1", 2, 2).unwrap(), TorusMode::Derived).unwrap();
        let out = is_nonnegative(&p.deficit()).unwrap();
        let doc = CertificateDoc::from_certificate(out.certificate().unwrap());
        let back: CertificateDoc = from_json(&to_json(&doc)).unwrap();
        let cert = back.to_certificate().unwrap();
        assert_eq!(&cert, out.certificate().unwrap());
        recheck_certificate(&cert).unwrap();
    }

    #[test]
    fn bad_rational_reports_path() {
        let text = r#"{"coeff": "1/0", "form": ["1/1"]}"#;
        let err = from_json::<TermDoc>(text).unwrap_err().to_string();
        assert!(err.contains("coeff"), "{err}");
    }
}
