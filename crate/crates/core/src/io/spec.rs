//! The TOML problem document.
//!
//! ```toml
//! dimension = 2
//! degree_max = 4
//!
//! [linear_part]
//! matrix = [["0", "1"], ["0", "0"]]
//!
//! [[group]]
//! matrix = [["1/1", "0/1"], ["0/1", "-1/1"]]
//! sigma = -1
//!
//! [vector_field]
//! terms = [
//!   { component = 1, exponents = [0, 1], coefficient = "1" },
//!   { component = 1, exponents = [1, 1], coefficient = "1/2" },
//! ]
//!
//! [options]
//! format = "json"
//! dmax = 4
//! ```
//!
//! `linear_part` holds either `matrix` or `resonant`. `group`,
//! `vector_field`, `options` and `hilbert_u` (a list of `{ terms }` scalar
//! polynomials) are optional.

use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use super::OutputFormat;
use crate::error::{Error, Result};
use crate::group::{group_from_generators, FiniteSignedGroup, DEFAULT_MAX_ORDER};
use crate::homological::{build_resonant_l, LinearPart, ResonanceMode};
use crate::matrix::Matrix;
use crate::normalform::golden::u_list;
use crate::normalform::ProblemSpec;
use crate::poly::{format_coef, parse_coef, Monomial, ScalarPoly, VecPoly};

/// Document-level settings that are not part of the problem itself.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub format: OutputFormat,
    /// Pruning bound for Hilbert basis construction.
    pub dmax: Option<usize>,
}

/// A parsed problem document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecDocument {
    pub spec: ProblemSpec,
    pub options: Options,
    /// Hilbert basis of the symmetry-part invariants, for `hilbert`.
    pub hilbert_u: Vec<ScalarPoly>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    dimension: Spanned<usize>,
    degree_max: Spanned<usize>,
    linear_part: Spanned<RawLinear>,
    #[serde(default)]
    group: Vec<Spanned<RawElement>>,
    vector_field: Option<Spanned<RawPoly>>,
    options: Option<RawOptions>,
    #[serde(default)]
    hilbert_u: Vec<Spanned<RawPoly>>,
}

type RawMatrix = Spanned<Vec<Vec<Spanned<String>>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinear {
    matrix: Option<RawMatrix>,
    resonant: Option<Spanned<RawResonant>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawResonant {
    n1: u32,
    n2: u32,
    mode: Option<ResonanceMode>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawElement {
    matrix: RawMatrix,
    sigma: Spanned<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoly {
    terms: Vec<Spanned<RawTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    component: Option<usize>,
    exponents: Vec<u32>,
    coefficient: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    format: Option<Spanned<String>>,
    dmax: Option<usize>,
}

struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn position(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.text.len());
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        (line, column)
    }

    fn at(&self, span: Range<usize>, e: Error) -> Error {
        let (line, column) = self.position(span.start);
        Error::Located {
            line,
            column,
            source: Box::new(e),
        }
    }
}

/// Parses and fully validates a problem document.
///
/// Syntax and shape errors are reported as [`Error::Parse`]; violated
/// preconditions as [`Error::Located`] wrapping the underlying error.
pub fn parse_document(text: &str) -> Result<SpecDocument> {
    let loc = Locator { text };
    let raw: RawDoc = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| loc.position(s.start));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let n = *raw.dimension.get_ref();
    if n == 0 {
        return Err(loc.at(raw.dimension.span(), Error::Invalid("dimension must be positive".into())));
    }
    let kmax = *raw.degree_max.get_ref();

    let lin_span = raw.linear_part.span();
    let lin = raw.linear_part.into_inner();
    let linear = match (lin.matrix, lin.resonant) {
        (Some(m), None) => LinearPart::from_matrix(parse_matrix(&loc, n, m)?),
        (None, Some(r)) => {
            let span = r.span();
            let r = r.into_inner();
            if n != 6 {
                return Err(loc.at(span, Error::DimensionMismatch { expected: 6, found: n }));
            }
            let mode = r.mode.unwrap_or(ResonanceMode::Resonant);
            build_resonant_l(r.n1, r.n2, mode, kmax).map_err(|e| loc.at(span, e))?
        }
        _ => {
            return Err(loc.at(
                lin_span,
                Error::Invalid("linear_part needs exactly one of `matrix` or `resonant`".into()),
            ))
        }
    };

    let group_spans: Vec<Range<usize>> = raw.group.iter().map(|g| g.span()).collect();
    let mut gens = Vec::with_capacity(raw.group.len());
    for g in raw.group {
        let g = g.into_inner();
        let sigma = *g.sigma.get_ref();
        if sigma != 1 && sigma != -1 {
            return Err(loc.at(g.sigma.span(), Error::InvalidSign(sigma)));
        }
        gens.push((parse_matrix(&loc, n, g.matrix)?, sigma));
    }
    let group = if gens.is_empty() {
        FiniteSignedGroup::trivial(n)
    } else {
        group_from_generators(n, gens, DEFAULT_MAX_ORDER).map_err(|e| {
            let span = match &e {
                Error::SingularGenerator { index } => group_spans[*index].clone(),
                _ => group_spans[0].clone(),
            };
            loc.at(span, e)
        })?
    };

    let field_span = raw.vector_field.as_ref().map(|f| f.span());
    let field = match raw.vector_field {
        Some(f) => Some(parse_vector(&loc, n, f)?),
        None => None,
    };

    let options = match raw.options {
        Some(o) => Options {
            format: match o.format {
                Some(f) => f.get_ref().parse().map_err(|e| loc.at(f.span(), e))?,
                None => OutputFormat::default(),
            },
            dmax: o.dmax,
        },
        None => Options::default(),
    };

    let hilbert_u = raw
        .hilbert_u
        .into_iter()
        .map(|p| parse_scalar(&loc, n, p))
        .collect::<Result<Vec<_>>>()?;

    let spec = ProblemSpec::new(linear, group, kmax, field).map_err(|e| {
        let span = match &e {
            Error::BeyondSurrogateBound { .. } => raw.degree_max.span(),
            Error::Incompatible { index } => group_spans.get(*index).cloned().unwrap_or(0..0),
            Error::DimensionMismatch { .. } if field_span.is_none() => 0..0,
            _ => field_span.clone().unwrap_or(0..0),
        };
        loc.at(span, e)
    })?;
    Ok(SpecDocument {
        spec,
        options,
        hilbert_u,
    })
}

/// [`parse_document`], keeping only the problem.
pub fn parse_spec(text: &str) -> Result<ProblemSpec> {
    parse_document(text).map(|d| d.spec)
}

fn parse_matrix(loc: &Locator<'_>, n: usize, m: RawMatrix) -> Result<Matrix> {
    let span = m.span();
    let rows = m.into_inner();
    if rows.len() != n {
        return Err(loc.at(span, Error::DimensionMismatch { expected: n, found: rows.len() }));
    }
    let mut out = Vec::with_capacity(n);
    for row in rows {
        if row.len() != n {
            return Err(loc.at(span, Error::DimensionMismatch { expected: n, found: row.len() }));
        }
        out.push(
            row.iter()
                .map(|c| parse_coef(c.get_ref()).map_err(|e| loc.at(c.span(), e)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(out).map_err(|e| loc.at(span, e))
}

fn parse_term(loc: &Locator<'_>, n: usize, t: &Spanned<RawTerm>) -> Result<(Option<usize>, Monomial, crate::Coef)> {
    let raw = t.get_ref();
    if raw.exponents.len() != n {
        return Err(loc.at(
            t.span(),
            Error::DimensionMismatch {
                expected: n,
                found: raw.exponents.len(),
            },
        ));
    }
    let c = parse_coef(raw.coefficient.get_ref()).map_err(|e| loc.at(raw.coefficient.span(), e))?;
    Ok((raw.component, Monomial::new(raw.exponents.clone()), c))
}

fn parse_vector(loc: &Locator<'_>, n: usize, p: Spanned<RawPoly>) -> Result<VecPoly> {
    let mut comps = vec![ScalarPoly::zero(n); n];
    for t in &p.get_ref().terms {
        let (component, m, c) = parse_term(loc, n, t)?;
        match component {
            Some(i) if (1..=n).contains(&i) => comps[i - 1].add_term(m, c),
            _ => {
                return Err(loc.at(
                    t.span(),
                    Error::Invalid(format!("vector terms need a component in 1..={n}")),
                ))
            }
        }
    }
    VecPoly::from_components(comps)
}

fn parse_scalar(loc: &Locator<'_>, n: usize, p: Spanned<RawPoly>) -> Result<ScalarPoly> {
    let mut f = ScalarPoly::zero(n);
    for t in &p.get_ref().terms {
        let (component, m, c) = parse_term(loc, n, t)?;
        if component.is_some() {
            return Err(loc.at(t.span(), Error::Invalid("scalar terms take no component".into())));
        }
        f.add_term(m, c);
    }
    Ok(f)
}

fn matrix_value(m: &Matrix) -> toml::Value {
    toml::Value::Array(
        (0..m.size())
            .map(|i| toml::Value::Array(m.row(i).iter().map(|c| toml::Value::String(format_coef(c))).collect()))
            .collect(),
    )
}

fn term_value(component: Option<usize>, m: &Monomial, c: &crate::Coef) -> toml::Value {
    let mut t = toml::Table::new();
    if let Some(i) = component {
        t.insert("component".into(), toml::Value::Integer(i as i64 + 1));
    }
    t.insert(
        "exponents".into(),
        toml::Value::Array(m.exponents().iter().map(|&e| toml::Value::Integer(e.into())).collect()),
    );
    t.insert("coefficient".into(), toml::Value::String(format_coef(c)));
    toml::Value::Table(t)
}

fn poly_table(terms: Vec<toml::Value>) -> toml::Value {
    let mut t = toml::Table::new();
    t.insert("terms".into(), toml::Value::Array(terms));
    toml::Value::Table(t)
}

/// Renders a document that [`parse_document`] reads back to an equal value.
pub fn emit_spec(doc: &SpecDocument) -> String {
    let spec = &doc.spec;
    let mut root = toml::Table::new();
    root.insert("dimension".into(), toml::Value::Integer(spec.dim() as i64));
    root.insert("degree_max".into(), toml::Value::Integer(spec.kmax() as i64));

    let mut lin = toml::Table::new();
    match spec.linear().resonance() {
        Some(r) => {
            let mut t = toml::Table::new();
            t.insert("n1".into(), toml::Value::Integer(r.n1.into()));
            t.insert("n2".into(), toml::Value::Integer(r.n2.into()));
            let mode = match r.mode {
                ResonanceMode::Resonant => "resonant",
                ResonanceMode::NonresonantSurrogate => "nonresonant-surrogate",
            };
            t.insert("mode".into(), toml::Value::String(mode.into()));
            lin.insert("resonant".into(), toml::Value::Table(t));
        }
        None => {
            lin.insert("matrix".into(), matrix_value(spec.linear().matrix()));
        }
    }
    root.insert("linear_part".into(), toml::Value::Table(lin));

    let group: Vec<toml::Value> = spec
        .group()
        .generators()
        .iter()
        .map(|g| {
            let mut t = toml::Table::new();
            t.insert("matrix".into(), matrix_value(g.matrix()));
            t.insert("sigma".into(), toml::Value::Integer(g.sign()));
            toml::Value::Table(t)
        })
        .collect();
    if !group.is_empty() {
        root.insert("group".into(), toml::Value::Array(group));
    }

    if let Some(x) = spec.field() {
        let terms = x
            .components()
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.terms().map(move |(m, c)| term_value(Some(i), m, c)))
            .collect();
        root.insert("vector_field".into(), poly_table(terms));
    }

    let mut opts = toml::Table::new();
    opts.insert("format".into(), toml::Value::String(doc.options.format.name().into()));
    if let Some(d) = doc.options.dmax {
        opts.insert("dmax".into(), toml::Value::Integer(d as i64));
    }
    root.insert("options".into(), toml::Value::Table(opts));

    if !doc.hilbert_u.is_empty() {
        let list = doc
            .hilbert_u
            .iter()
            .map(|f| poly_table(f.terms().map(|(m, c)| term_value(None, m, c)).collect()))
            .collect();
        root.insert("hilbert_u".into(), toml::Value::Array(list));
    }
    toml::to_string(&root).expect("tables of plain values serialize")
}

/// Names accepted by [`builtin_document`].
pub fn builtin_names() -> &'static [&'static str] {
    &["resonant-N1-N2", "resonant-N1-N2-surrogate", "nilpotent", "nilpotent-reversible"]
}

/// Ready-made problems: `resonant-N1-N2` (the six-dimensional resonant
/// linear part with `⟨φ⟩`, `degree_max = 6`), its `-surrogate` variant,
/// `nilpotent` (the 2×2 nilpotent block, trivial group) and
/// `nilpotent-reversible` (with the reversing reflection `(x₁, −x₂)`).
pub fn builtin_document(name: &str) -> Result<SpecDocument> {
    let unknown = || Error::Invalid(format!("unknown built-in spec {name:?}"));
    match name {
        "nilpotent" | "nilpotent-reversible" => {
            let l = LinearPart::from_matrix(Matrix::from_integers(&[vec![0, 1], vec![0, 0]]));
            let group = if name == "nilpotent" {
                FiniteSignedGroup::trivial(2)
            } else {
                let r = Matrix::from_integers(&[vec![1, 0], vec![0, -1]]);
                group_from_generators(2, vec![(r, -1)], DEFAULT_MAX_ORDER)?
            };
            Ok(SpecDocument {
                spec: ProblemSpec::new(l, group, 6, None)?,
                options: Options {
                    format: OutputFormat::Json,
                    dmax: Some(4),
                },
                hilbert_u: vec![ScalarPoly::var(2, 0)],
            })
        }
        _ => {
            let rest = name.strip_prefix("resonant-").ok_or_else(unknown)?;
            let (rest, mode) = match rest.strip_suffix("-surrogate") {
                Some(r) => (r, ResonanceMode::NonresonantSurrogate),
                None => (rest, ResonanceMode::Resonant),
            };
            let (a, b) = rest.split_once('-').ok_or_else(unknown)?;
            let n1: u32 = a.parse().map_err(|_| unknown())?;
            let n2: u32 = b.parse().map_err(|_| unknown())?;
            let kmax = 6;
            let l = build_resonant_l(n1, n2, mode, kmax)?;
            let phi = crate::normalform::golden::phi();
            let group = group_from_generators(6, vec![(phi.matrix().clone(), -1)], DEFAULT_MAX_ORDER)?;
            Ok(SpecDocument {
                spec: ProblemSpec::new(l, group, kmax, None)?,
                options: Options {
                    format: OutputFormat::Json,
                    dmax: Some(2 * (n1 + n2) as usize + 2),
                },
                hilbert_u: u_list(n1, n2).to_vec(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
dimension = 6
degree_max = 4

[linear_part]
resonant = { n1 = 1, n2 = 2 }

[[group]]
matrix = [
  ["1", "0", "0", "0", "0", "0"],
  ["0", "-1", "0", "0", "0", "0"],
  ["0", "0", "1", "0", "0", "0"],
  ["0", "0", "0", "-1", "0", "0"],
  ["0", "0", "0", "0", "1", "0"],
  ["0", "0", "0", "0", "0", "-1"],
]
sigma = -1
"#;

    #[test]
    fn minimal_resonant_document() {
        let spec = parse_spec(MINIMAL).unwrap();
        assert_eq!(spec.dim(), 6);
        assert_eq!(spec.kmax(), 4);
        assert_eq!(spec.group().order(), 2);
        assert_eq!(spec.linear().resonance().unwrap().n2, 2);
    }

    #[test]
    fn non_coprime_is_located() {
        let text = MINIMAL.replace("n1 = 1, n2 = 2", "n1 = 2, n2 = 4");
        let e = parse_spec(&text).unwrap_err();
        assert!(e.to_string().contains("reduce the ratio"), "{e}");
        assert!(matches!(e, Error::Located { line: 6, .. }), "{e:?}");
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_spec("dimension = 2\ndegree_max = = 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn bad_coefficient_points_at_entry() {
        let text = "dimension = 1\ndegree_max = 2\n[linear_part]\nmatrix = [[\"0.5\"]]\n";
        let e = parse_spec(text).unwrap_err();
        match e {
            Error::Located { line, column, source } => {
                assert_eq!((line, column), (4, 12));
                assert!(matches!(*source, Error::Coefficient(_)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linear_part_mismatch_is_forwarded() {
        let text = "dimension = 2\ndegree_max = 3\n[linear_part]\nmatrix = [[\"0\", \"1\"], [\"0\", \"0\"]]\n\
                    [vector_field]\nterms = [{ component = 1, exponents = [1, 0], coefficient = \"1\" }]\n";
        let e = parse_spec(text).unwrap_err();
        assert!(e.to_string().contains("linear part mismatch"), "{e}");
    }

    #[test]
    fn emitted_documents_reparse() {
        for name in ["resonant-1-2", "resonant-1-1-surrogate", "nilpotent", "nilpotent-reversible"] {
            let doc = builtin_document(name).unwrap();
            let text = emit_spec(&doc);
            let again = parse_document(&text).unwrap();
            assert_eq!(again, doc, "{name}");
            assert_eq!(emit_spec(&again), text);
        }
    }

    #[test]
    fn field_round_trip() {
        let mut doc = builtin_document("nilpotent-reversible").unwrap();
        let l = doc.spec.linear().clone();
        let x1 = ScalarPoly::var(2, 0);
        let field = &VecPoly::linear(l.matrix()) + &VecPoly::single(2, 1, x1.pow(2).scale(&crate::poly::frac(-3, 2)));
        doc.spec = ProblemSpec::new(l, doc.spec.group().clone(), 4, Some(field)).unwrap();
        let again = parse_document(&emit_spec(&doc)).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn unknown_builtin() {
        assert!(builtin_document("resonant-1").is_err());
        assert!(builtin_document("other").is_err());
    }
}
