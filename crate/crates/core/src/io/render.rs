//! JSON, LaTeX and plain-text rendering of reports.

use serde_json::{json, Map, Value};

use super::OutputFormat;
use crate::matrix::Matrix;
use crate::normalform::golden::GoldenReport;
use crate::normalform::{ComplementReport, HilbertReport, NormalFormResult, ProblemSpec};
use crate::poly::{format_coef, Monomial, ScalarPoly, VecPoly};
use crate::verify::VerifyRun;
use crate::Coef;

/// Version of the JSON schema; bumped on any incompatible change.
pub const SCHEMA_VERSION: u64 = 1;

/// A report that renders in every [`OutputFormat`].
pub trait Emit {
    /// Value of the `kind` key.
    fn kind(&self) -> &'static str;
    /// Keys of the JSON document besides `schema_version`, `kind` and
    /// `pass`.
    fn body(&self) -> Map<String, Value>;
    fn text(&self) -> String;
    fn latex(&self) -> String;
    /// Machine-readable descriptions of failed checks.
    fn failures(&self) -> Vec<Value>;
}

/// Renders `report`. JSON keys are sorted and the output ends in a newline.
pub fn emit<R: Emit + ?Sized>(report: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut doc = report.body();
            doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
            doc.insert("kind".into(), json!(report.kind()));
            doc.insert("pass".into(), json!(report.failures().is_empty()));
            to_json_string(&Value::Object(doc))
        }
        OutputFormat::Latex => report.latex(),
        OutputFormat::Text => report.text(),
    }
}

/// The document printed on failure: the list of failed checks.
pub fn failure_document(kind: &str, failures: Vec<Value>) -> String {
    to_json_string(&json!({
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "pass": false,
        "failures": failures,
    }))
}

fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn term_json(component: Option<usize>, m: &Monomial, c: &Coef) -> Value {
    let mut t = Map::new();
    if let Some(i) = component {
        t.insert("component".into(), json!(i + 1));
    }
    t.insert("exponents".into(), json!(m.exponents()));
    t.insert("coefficient".into(), json!(format_coef(c)));
    Value::Object(t)
}

/// Terms of a map, component-major, each monomial in the global order.
pub fn terms_json(p: &VecPoly) -> Value {
    Value::Array(
        p.components()
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.terms().map(move |(m, c)| term_json(Some(i), m, c)))
            .collect(),
    )
}

/// Terms of a scalar polynomial (no `component` key).
pub fn scalar_terms_json(f: &ScalarPoly) -> Value {
    Value::Array(f.terms().map(|(m, c)| term_json(None, m, c)).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.size())
            .map(|i| Value::Array(m.row(i).iter().map(|c| json!(format_coef(c))).collect()))
            .collect(),
    )
}

/// Echo of a problem: dimension, degree bound, linear part, group
/// generators and field.
pub fn spec_json(spec: &ProblemSpec) -> Value {
    let mut linear = Map::new();
    linear.insert("matrix".into(), matrix_json(spec.linear().matrix()));
    if let Some(r) = spec.linear().resonance() {
        linear.insert(
            "resonant".into(),
            json!({
                "n1": r.n1,
                "n2": r.n2,
                "mode": r.mode,
                "surrogate_prime": r.surrogate_prime,
                "valid_to_degree": r.valid_to_degree,
            }),
        );
    }
    let group: Vec<Value> = spec
        .group()
        .generators()
        .iter()
        .map(|g| json!({ "matrix": matrix_json(g.matrix()), "sigma": g.sign() }))
        .collect();
    json!({
        "dimension": spec.dim(),
        "degree_max": spec.kmax(),
        "linear_part": linear,
        "group": group,
        "group_order": spec.group().order(),
        "vector_field": spec.field().map(terms_json),
    })
}

fn coef_latex(c: &Coef) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn monomial_latex(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x_{{{}}}", i + 1)
            } else {
                format!("x_{{{}}}^{{{}}}", i + 1, e)
            }
        })
        .collect();
    parts.join(" ")
}

/// A polynomial in `x_{1}, x_{2}, …` as LaTeX math.
pub fn scalar_latex(f: &ScalarPoly) -> String {
    use num::{One, Signed};
    let mut out = String::new();
    for (idx, (m, c)) in f.terms().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        if idx == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let mag = c.abs();
        let mono = monomial_latex(m);
        if mono.is_empty() {
            out.push_str(&coef_latex(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{} {}", coef_latex(&mag), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A map as a LaTeX column vector.
pub fn vector_latex(p: &VecPoly) -> String {
    let rows: Vec<String> = p.components().iter().map(scalar_latex).collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

fn system_latex(p: &VecPoly) -> String {
    let mut s = String::from("\\begin{align*}\n");
    let n = p.dim();
    for (i, f) in p.components().iter().enumerate() {
        let end = if i + 1 < n { " \\\\" } else { "" };
        s.push_str(&format!("\\dot{{x}}_{{{}}} &= {}{}\n", i + 1, scalar_latex(f), end));
    }
    s.push_str("\\end{align*}\n");
    s
}

impl Emit for ComplementReport {
    fn kind(&self) -> &'static str {
        "complement"
    }

    fn body(&self) -> Map<String, Value> {
        let degrees: Vec<Value> = self
            .slices
            .iter()
            .map(|s| {
                json!({
                    "k": s.degree(),
                    "dim": s.dim(),
                    "basis": s.maps().iter().map(terms_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut m = Map::new();
        m.insert("dimension".into(), json!(self.n));
        m.insert("degrees".into(), Value::Array(degrees));
        m
    }

    fn text(&self) -> String {
        let mut s = format!("{:>3}  {:>5}  basis\n", "k", "dim");
        for sl in &self.slices {
            let maps = sl.maps();
            if maps.is_empty() {
                s.push_str(&format!("{:>3}  {:>5}  -\n", sl.degree(), 0));
            }
            for (i, m) in maps.iter().enumerate() {
                if i == 0 {
                    s.push_str(&format!("{:>3}  {:>5}  {m}\n", sl.degree(), sl.dim()));
                } else {
                    s.push_str(&format!("{:>3}  {:>5}  {m}\n", "", ""));
                }
            }
        }
        s
    }

    fn latex(&self) -> String {
        let mut s = String::new();
        for sl in &self.slices {
            s.push_str(&format!("% degree {}, dimension {}\n", sl.degree(), sl.dim()));
            let maps = sl.maps();
            if maps.is_empty() {
                continue;
            }
            s.push_str("\\begin{gather*}\n");
            for (i, m) in maps.iter().enumerate() {
                let end = if i + 1 < maps.len() { ", \\\\" } else { "" };
                s.push_str(&format!("{}{}\n", vector_latex(m), end));
            }
            s.push_str("\\end{gather*}\n");
        }
        s
    }

    fn failures(&self) -> Vec<Value> {
        Vec::new()
    }
}

impl Emit for NormalFormResult {
    fn kind(&self) -> &'static str {
        "normal-form"
    }

    fn body(&self) -> Map<String, Value> {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "k": s.k,
                    "dim_complement": s.dim_complement,
                    "g_k": terms_json(&s.g_k),
                    "xi_k": terms_json(&s.xi_k),
                    "checks": {
                        "residual": s.residual_check,
                        "witness": s.witness_check,
                        "equivariance": s.equivariance_check,
                    },
                })
            })
            .collect();
        let mut m = Map::new();
        m.insert("spec".into(), spec_json(&self.spec));
        m.insert("steps".into(), Value::Array(steps));
        m.insert("normal_field".into(), terms_json(&self.normal_field));
        m.insert("coordinate_change".into(), terms_json(&self.coordinate_change));
        m
    }

    fn text(&self) -> String {
        let mut s = format!("{:>3}  {:>5}  {:<5}  g_k\n", "k", "dim", "check");
        for st in &self.steps {
            let ok = if st.pass() { "ok" } else { "FAIL" };
            s.push_str(&format!("{:>3}  {:>5}  {:<5}  {}\n", st.k, st.dim_complement, ok, st.g_k));
        }
        s.push_str(&format!("normal field: {}\n", self.normal_field));
        s
    }

    fn latex(&self) -> String {
        let mut s = system_latex(&self.normal_field);
        for st in &self.steps {
            s.push_str(&format!("% g_{} = {}\n", st.k, vector_latex(&st.g_k)));
        }
        s
    }

    fn failures(&self) -> Vec<Value> {
        self.steps
            .iter()
            .filter(|s| !s.pass())
            .map(|s| {
                json!({
                    "k": s.k,
                    "residual": s.residual_check,
                    "witness": s.witness_check,
                    "equivariance": s.equivariance_check,
                })
            })
            .collect()
    }
}

impl Emit for VerifyRun {
    fn kind(&self) -> &'static str {
        "verify"
    }

    fn body(&self) -> Map<String, Value> {
        let suites: Vec<Value> = self
            .reports
            .iter()
            .map(|r| {
                json!({
                    "suite": r.suite.name(),
                    "pass": r.pass(),
                    "lines": r.lines.iter().map(|l| json!({
                        "check": l.check,
                        "k": l.k,
                        "samples": l.samples,
                        "pass": l.pass,
                        "detail": l.detail,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut m = Map::new();
        m.insert("seed".into(), json!(self.seed));
        m.insert("suites".into(), Value::Array(suites));
        m
    }

    fn text(&self) -> String {
        let mut s = format!("{:<16}  {:<30}  {:>3}  {:>7}  {:<4}  detail\n", "suite", "check", "k", "samples", "pass");
        for r in &self.reports {
            for l in &r.lines {
                let ok = if l.pass { "ok" } else { "FAIL" };
                s.push_str(&format!(
                    "{:<16}  {:<30}  {:>3}  {:>7}  {:<4}  {}\n",
                    r.suite.name(),
                    l.check,
                    l.k,
                    l.samples,
                    ok,
                    l.detail
                ));
            }
        }
        s
    }

    fn latex(&self) -> String {
        let mut s = String::from("\\begin{tabular}{llrrl}\nsuite & check & $k$ & samples & pass \\\\\n\\hline\n");
        for r in &self.reports {
            for l in &r.lines {
                s.push_str(&format!(
                    "{} & {} & {} & {} & {} \\\\\n",
                    r.suite.name(),
                    l.check,
                    l.k,
                    l.samples,
                    if l.pass { "yes" } else { "no" }
                ));
            }
        }
        s.push_str("\\end{tabular}\n");
        s
    }

    fn failures(&self) -> Vec<Value> {
        self.reports
            .iter()
            .flat_map(|r| {
                r.failures().into_iter().map(move |l| {
                    json!({ "suite": r.suite.name(), "check": l.check, "k": l.k, "detail": l.detail })
                })
            })
            .collect()
    }
}

impl Emit for GoldenReport {
    fn kind(&self) -> &'static str {
        "golden"
    }

    fn body(&self) -> Map<String, Value> {
        let c = &self.case;
        let mut m = Map::new();
        m.insert("family".into(), json!(c.family.to_string()));
        m.insert("n1".into(), json!(c.n1));
        m.insert("n2".into(), json!(c.n2));
        m.insert("signs".into(), json!(c.signs));
        m.insert("type".into(), json!(c.normal_form_type.map(|t| t.to_string())));
        m.insert(
            "degrees".into(),
            Value::Array(
                self.lines
                    .iter()
                    .map(|l| {
                        json!({
                            "k": l.k,
                            "dim_computed": l.dim_computed,
                            "dim_expected": l.dim_expected,
                            "equal": l.equal,
                        })
                    })
                    .collect(),
            ),
        );
        m
    }

    fn text(&self) -> String {
        let c = &self.case;
        let mut s = format!("family {} (n1, n2) = ({}, {})", c.family, c.n1, c.n2);
        if let (Some(sg), Some(t)) = (c.signs, c.normal_form_type) {
            s.push_str(&format!(" signs {:?} type {t}", sg));
        }
        s.push('\n');
        s.push_str(&format!("{:>3}  {:>8}  {:>8}  equal\n", "k", "computed", "expected"));
        for l in &self.lines {
            s.push_str(&format!("{:>3}  {:>8}  {:>8}  {}\n", l.k, l.dim_computed, l.dim_expected, l.equal));
        }
        s
    }

    fn latex(&self) -> String {
        let mut s = String::from("\\begin{tabular}{rrrl}\n$k$ & computed & expected & equal \\\\\n\\hline\n");
        for l in &self.lines {
            s.push_str(&format!(
                "{} & {} & {} & {} \\\\\n",
                l.k,
                l.dim_computed,
                l.dim_expected,
                if l.equal { "yes" } else { "no" }
            ));
        }
        s.push_str("\\end{tabular}\n");
        s
    }

    fn failures(&self) -> Vec<Value> {
        self.lines
            .iter()
            .filter(|l| !l.equal)
            .map(|l| json!({ "k": l.k, "dim_computed": l.dim_computed, "dim_expected": l.dim_expected }))
            .collect()
    }
}

impl Emit for HilbertReport {
    fn kind(&self) -> &'static str {
        "hilbert"
    }

    fn body(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("dmax".into(), json!(self.dmax));
        m.insert("u".into(), Value::Array(self.u_list.iter().map(scalar_terms_json).collect()));
        m.insert("basis".into(), Value::Array(self.basis.iter().map(scalar_terms_json).collect()));
        m.insert(
            "degrees".into(),
            Value::Array(
                self.lines
                    .iter()
                    .map(|l| {
                        json!({
                            "d": l.d,
                            "dim_algebra": l.dim_algebra,
                            "dim_invariants": l.dim_invariants,
                            "equal": l.equal,
                        })
                    })
                    .collect(),
            ),
        );
        m
    }

    fn text(&self) -> String {
        let mut s = String::from("basis:\n");
        for b in &self.basis {
            s.push_str(&format!("  {b}\n"));
        }
        s.push_str(&format!("{:>3}  {:>7}  {:>10}  equal\n", "d", "algebra", "invariants"));
        for l in &self.lines {
            s.push_str(&format!("{:>3}  {:>7}  {:>10}  {}\n", l.d, l.dim_algebra, l.dim_invariants, l.equal));
        }
        s
    }

    fn latex(&self) -> String {
        let items: Vec<String> = self.basis.iter().map(scalar_latex).collect();
        format!("\\[ \\left\\{{ {} \\right\\}} \\]\n", items.join(",\\; "))
    }

    fn failures(&self) -> Vec<Value> {
        self.lines
            .iter()
            .filter(|l| !l.equal)
            .map(|l| json!({ "d": l.d, "dim_algebra": l.dim_algebra, "dim_invariants": l.dim_invariants }))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{frac, int};

    #[test]
    fn latex_of_polynomials() {
        let x1 = ScalarPoly::var(2, 0);
        let x2 = ScalarPoly::var(2, 1);
        let f = &x1.pow(2).scale(&frac(-1, 2)) + &x2.scale(&int(3));
        assert_eq!(scalar_latex(&f), "3 x_{2} - \\frac{1}{2} x_{1}^{2}");
        assert_eq!(scalar_latex(&ScalarPoly::zero(2)), "0");
        assert_eq!(scalar_latex(&ScalarPoly::one(2)), "1");
    }

    #[test]
    fn empty_complement_document() {
        let r = ComplementReport { n: 2, slices: Vec::new() };
        let v: Value = serde_json::from_str(&emit(&r, OutputFormat::Json)).unwrap();
        assert_eq!(v["degrees"], json!([]));
        assert_eq!(v["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(v["pass"], json!(true));
    }

    #[test]
    fn terms_are_one_based() {
        let p = VecPoly::single(2, 1, ScalarPoly::var(2, 0));
        assert_eq!(
            terms_json(&p),
            json!([{ "component": 2, "exponents": [1, 0], "coefficient": "1/1" }])
        );
    }
}
