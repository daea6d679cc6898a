//! Versioned JSON documents for algebras, module algebras, specs and graded
//! algebras. Every top-level document carries `"format": "taftlab/1"`.

use serde::{Deserialize, Serialize};

use crate::algebra::FinDimAlgebra;
use crate::constructions::{NilpotentExtensionSpec, SemisimpleSpec};
use crate::cyclotomic::{CycNum, CyclotomicField};
use crate::error::{Error, Result};
use crate::hmodule::HModuleAlgebra;
use crate::linalg::{CMatrix, Matrix};

pub const FORMAT: &str = "taftlab/1";

fn check_format(found: &Option<String>, top_level: bool) -> Result<()> {
    match found {
        Some(f) if f == FORMAT => Ok(()),
        Some(f) => Err(Error::Parse(format!("unsupported format {f:?}, expected {FORMAT:?}"))),
        None if top_level => Err(Error::Parse(format!("missing \"format\": {FORMAT:?}"))),
        None => Ok(()),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn emit<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

fn conductor_of<'a>(entries: impl IntoIterator<Item = &'a CycNum>) -> Result<Option<u32>> {
    let mut m = None;
    for x in entries {
        match m {
            None => m = Some(x.conductor()),
            Some(prev) if prev != x.conductor() => return Err(Error::ConductorMismatch(prev, x.conductor())),
            _ => {}
        }
    }
    Ok(m)
}

fn matrix_to_rows(a: &CMatrix) -> Vec<Vec<CycNum>> {
    a.to_rows()
}

fn matrix_from_rows(field: CyclotomicField, rows: Vec<Vec<CycNum>>, name: &str) -> Result<CMatrix> {
    if let Some(m) = conductor_of(rows.iter().flatten())? {
        if m != field.conductor() {
            return Err(Error::ConductorMismatch(field.conductor(), m));
        }
    }
    if rows.is_empty() {
        return Err(Error::Parse(format!("{name} has no rows")));
    }
    Matrix::from_rows(field, rows).map_err(|e| Error::Parse(format!("{name}: {e}")))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub dim: usize,
    /// `mult[i][j]` = coordinates of e_i e_j.
    pub mult: Vec<Vec<Vec<CycNum>>>,
    #[serde(default)]
    pub unit: Option<Vec<CycNum>>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &FinDimAlgebra, top_level: bool) -> Self {
        AlgebraDoc {
            format: top_level.then(|| FORMAT.to_string()),
            dim: a.dim(),
            mult: a.structure_constants(),
            unit: a.unit().map(<[CycNum]>::to_vec),
        }
    }

    /// Validates shape, conductor and associativity.
    pub fn to_algebra(&self, top_level: bool, m_hint: Option<u32>) -> Result<FinDimAlgebra> {
        check_format(&self.format, top_level)?;
        let d = self.dim;
        if d == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        if self.mult.len() != d || self.mult.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return Err(Error::Parse(format!("mult must be a {d}x{d}x{d} array")));
        }
        if self.unit.as_ref().is_some_and(|u| u.len() != d) {
            return Err(Error::Parse(format!("unit must have {d} coordinates")));
        }
        let all = self.mult.iter().flatten().flatten().chain(self.unit.iter().flatten());
        let m = match (conductor_of(all)?, m_hint) {
            (Some(a), Some(b)) if a != b => return Err(Error::ConductorMismatch(b, a)),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::Parse("cannot infer the conductor".into())),
        };
        let field = CyclotomicField::new(m)?;
        FinDimAlgebra::from_structure_constants(field, d, self.mult.clone(), self.unit.clone())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HmaDoc {
    pub format: Option<String>,
    pub m: u32,
    pub algebra: AlgebraDoc,
    pub c: Vec<Vec<CycNum>>,
    pub v: Vec<Vec<CycNum>>,
}

impl HmaDoc {
    pub fn from_hma(h: &HModuleAlgebra) -> Self {
        HmaDoc {
            format: Some(FORMAT.into()),
            m: h.conductor(),
            algebra: AlgebraDoc::from_algebra(h.algebra(), false),
            c: matrix_to_rows(h.c_op()),
            v: matrix_to_rows(h.v_op()),
        }
    }

    /// Shape and associativity are validated; the module-algebra axioms are
    /// left to [`HModuleAlgebra::verify`].
    pub fn to_hma(&self) -> Result<HModuleAlgebra> {
        check_format(&self.format, true)?;
        let a = self.algebra.to_algebra(false, Some(self.m))?;
        let f = a.field();
        let c = matrix_from_rows(f, self.c.clone(), "c")?;
        let v = matrix_from_rows(f, self.v.clone(), "v")?;
        HModuleAlgebra::new(a, c, v)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemisimpleSpecDoc {
    pub format: Option<String>,
    pub m: u32,
    pub k: usize,
    pub t: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<CycNum>>,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<CycNum>>,
    /// P^m = αE; derived, written on output and ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<CycNum>,
}

impl SemisimpleSpecDoc {
    pub fn from_spec(s: &SemisimpleSpec) -> Self {
        SemisimpleSpecDoc {
            format: Some(FORMAT.into()),
            m: s.m,
            k: s.k,
            t: s.t,
            p: matrix_to_rows(&s.p),
            q: matrix_to_rows(&s.q),
            alpha: s.validate().ok(),
        }
    }

    /// Parses without validating the spec invariants.
    pub fn to_spec(&self) -> Result<SemisimpleSpec> {
        check_format(&self.format, true)?;
        let f = CyclotomicField::new(self.m)?;
        let p = matrix_from_rows(f, self.p.clone(), "P")?;
        let q = matrix_from_rows(f, self.q.clone(), "Q")?;
        Ok(SemisimpleSpec::new(self.m, self.k, self.t, p, q))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedAlgebraDoc {
    pub format: Option<String>,
    pub m: u32,
    pub algebra: AlgebraDoc,
    pub degrees: Vec<usize>,
}

impl GradedAlgebraDoc {
    pub fn from_spec(s: &NilpotentExtensionSpec) -> Self {
        GradedAlgebraDoc {
            format: Some(FORMAT.into()),
            m: s.conductor(),
            algebra: AlgebraDoc::from_algebra(s.base(), false),
            degrees: s.degrees().to_vec(),
        }
    }

    pub fn to_spec(&self) -> Result<NilpotentExtensionSpec> {
        check_format(&self.format, true)?;
        let b = self.algebra.to_algebra(false, Some(self.m))?;
        NilpotentExtensionSpec::new(self.m, b, self.degrees.clone())
    }
}

pub fn parse_algebra(text: &str) -> Result<FinDimAlgebra> {
    parse::<AlgebraDoc>(text)?.to_algebra(true, None)
}

pub fn emit_algebra(a: &FinDimAlgebra) -> String {
    emit(&AlgebraDoc::from_algebra(a, true))
}

pub fn parse_hma(text: &str) -> Result<HModuleAlgebra> {
    parse::<HmaDoc>(text)?.to_hma()
}

pub fn emit_hma(h: &HModuleAlgebra) -> String {
    emit(&HmaDoc::from_hma(h))
}

pub fn parse_semisimple_spec(text: &str) -> Result<SemisimpleSpec> {
    parse::<SemisimpleSpecDoc>(text)?.to_spec()
}

pub fn emit_semisimple_spec(s: &SemisimpleSpec) -> String {
    emit(&SemisimpleSpecDoc::from_spec(s))
}

pub fn parse_graded_algebra(text: &str) -> Result<NilpotentExtensionSpec> {
    parse::<GradedAlgebraDoc>(text)?.to_spec()
}

pub fn emit_graded_algebra(s: &NilpotentExtensionSpec) -> String {
    emit(&GradedAlgebraDoc::from_spec(s))
}

/// A matrix given as rows of CycNum, optionally wrapped with a format tag.
pub fn parse_matrix(text: &str, field: CyclotomicField) -> Result<CMatrix> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Doc {
        Tagged { format: Option<String>, matrix: Vec<Vec<CycNum>> },
        Bare(Vec<Vec<CycNum>>),
    }
    match parse::<Doc>(text)? {
        Doc::Tagged { format, matrix } => {
            check_format(&format, true)?;
            matrix_from_rows(field, matrix, "matrix")
        }
        Doc::Bare(rows) => matrix_from_rows(field, rows, "matrix"),
    }
}

/// Which kind of document a JSON text holds, judged by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Algebra,
    Hma,
    SemisimpleSpec,
    GradedAlgebra,
}

pub fn detect_kind(text: &str) -> Result<DocKind> {
    let v: serde_json::Value = parse(text)?;
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let has = |k: &str| obj.contains_key(k);
    if has("P") && has("Q") {
        Ok(DocKind::SemisimpleSpec)
    } else if has("degrees") {
        Ok(DocKind::GradedAlgebra)
    } else if has("c") && has("v") {
        Ok(DocKind::Hma)
    } else if has("mult") {
        Ok(DocKind::Algebra)
    } else {
        Err(Error::Parse("unrecognised document".into()))
    }
}

/// Re-emits any supported document in canonical form.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(match detect_kind(text)? {
        DocKind::Algebra => emit_algebra(&parse_algebra(text)?),
        DocKind::Hma => emit_hma(&parse_hma(text)?),
        DocKind::SemisimpleSpec => emit_semisimple_spec(&parse_semisimple_spec(text)?),
        DocKind::GradedAlgebra => emit_graded_algebra(&parse_graded_algebra(text)?),
    })
}
