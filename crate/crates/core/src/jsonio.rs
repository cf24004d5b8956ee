//! JSON wire formats for polynomials, forms, vector fields, CR/chart data,
//! and plane-wave inputs. Scalars travel as exact strings ("a/b+c/di").

use crate::error::Error;
use crate::forms::{PolyForm, PolyVField};
use crate::optical::{chart_coords, cr_coords, CRData};
use crate::poly::Poly;
use crate::scalar::{format_gauss, parse_gauss, GaussRat, Rat};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

fn parse_scalar(s: &str) -> Result<GaussRat, Error> {
    parse_gauss(s).map_err(Error::Invalid)
}

pub fn parse_rational(s: &str) -> Result<Rat, Error> {
    s.trim()
        .parse::<Rat>()
        .map_err(|e| Error::Invalid(format!("bad rational {s:?}: {e}")))
}

impl PolyJson {
    pub fn from_poly(p: &Poly) -> Self {
        PolyJson {
            vars: p.vars().to_vec(),
            terms: p
                .terms()
                .iter()
                .map(|(e, c)| TermJson {
                    exps: e.clone(),
                    coeff: format_gauss(c),
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Poly, Error> {
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.exps.len() != self.vars.len() {
                return Err(Error::Invalid(format!(
                    "term has {} exponents for {} coordinates",
                    t.exps.len(),
                    self.vars.len()
                )));
            }
            terms.push((t.exps.clone(), parse_scalar(&t.coeff)?));
        }
        Ok(Poly::from_terms(&self.vars, terms))
    }
}

/// One coefficient of a form: strictly increasing coordinate indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormTermJson {
    pub key: Vec<u8>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    pub vars: Vec<String>,
    pub degree: usize,
    pub terms: Vec<FormTermJson>,
}

impl FormJson {
    pub fn from_form(f: &PolyForm) -> Self {
        FormJson {
            vars: f.vars().to_vec(),
            degree: f.degree(),
            terms: f
                .coeffs()
                .iter()
                .map(|(k, p)| FormTermJson {
                    key: k.clone(),
                    terms: PolyJson::from_poly(p).terms,
                })
                .collect(),
        }
    }

    pub fn to_form(&self) -> Result<PolyForm, Error> {
        let mut out = PolyForm::zero(&self.vars, self.degree);
        for t in &self.terms {
            if t.key.len() != self.degree
                || t.key.windows(2).any(|w| w[0] >= w[1])
                || t.key.iter().any(|&i| i as usize >= self.vars.len())
            {
                return Err(Error::Invalid(format!("bad form key {:?}", t.key)));
            }
            let p = PolyJson {
                vars: self.vars.clone(),
                terms: t.terms.clone(),
            }
            .to_poly()?;
            out.add_term(t.key.clone(), p);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VFieldJson {
    pub vars: Vec<String>,
    pub components: Vec<Vec<TermJson>>,
}

impl VFieldJson {
    pub fn from_vfield(v: &PolyVField) -> Self {
        VFieldJson {
            vars: v.vars().to_vec(),
            components: v
                .components()
                .iter()
                .map(|p| PolyJson::from_poly(p).terms)
                .collect(),
        }
    }

    pub fn to_vfield(&self) -> Result<PolyVField, Error> {
        if self.components.len() != self.vars.len() {
            return Err(Error::Invalid(format!(
                "{} components for {} coordinates",
                self.components.len(),
                self.vars.len()
            )));
        }
        let mut comps = Vec::new();
        for c in &self.components {
            comps.push(
                PolyJson {
                    vars: self.vars.clone(),
                    terms: c.clone(),
                }
                .to_poly()?,
            );
        }
        Ok(PolyVField::new(&self.vars, comps))
    }
}

/// CR structure input: the L-function on (u, x, y).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrDataJson {
    pub l: PolyJson,
}

impl CrDataJson {
    pub fn to_cr_data(&self) -> Result<CRData, Error> {
        let p = self.l.to_poly()?;
        if p.vars() != cr_coords() {
            return Err(Error::Invalid(format!(
                "CR data must use coordinates {:?}",
                cr_coords()
            )));
        }
        CRData::new(p)
    }
}

/// Optical chart input: L on (u, x, y); P and xi on (u, x, y, r).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RtChartJson {
    pub l: PolyJson,
    pub p: PolyJson,
    pub xi: FormJson,
}

impl RtChartJson {
    pub fn to_parts(&self) -> Result<(CRData, Poly, PolyForm), Error> {
        let data = CrDataJson { l: self.l.clone() }.to_cr_data()?;
        let p = self.p.to_poly()?;
        let xi = self.xi.to_form()?;
        if p.vars() != chart_coords() || xi.vars() != chart_coords() {
            return Err(Error::Invalid(format!(
                "chart data must use coordinates {:?}",
                chart_coords()
            )));
        }
        Ok((data, p, xi))
    }
}

/// Conjecture candidate: F, z, w on (x, y, u).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleJson {
    pub f: VFieldJson,
    pub z: PolyJson,
    pub w: PolyJson,
}

impl TripleJson {
    pub fn to_parts(&self) -> Result<(PolyVField, Poly, Poly), Error> {
        let f = self.f.to_vfield()?;
        let z = self.z.to_poly()?;
        let w = self.w.to_poly()?;
        if f.vars().len() != 3 || z.vars() != f.vars() || w.vars() != f.vars() {
            return Err(Error::Invalid(
                "conjecture triple needs one shared 3-coordinate chart".into(),
            ));
        }
        Ok((f, z, w))
    }
}

/// Plane-wave input: exact momenta; the amplitude is drawn from the
/// on-shell kernel by the seed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WaveJson {
    pub p: Vec<String>,
    pub amplitude_seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WavesJson {
    pub waves: Vec<WaveJson>,
    pub m: String,
    pub e: String,
    #[serde(rename = "A")]
    pub a: Vec<String>,
}
