//! JSON, LaTeX and plain-text renderings. Every renderer is a pure function
//! of its input, so repeated runs produce identical documents.

use serde_json::{json, Map, Value};

use crate::diff::CohomClass;
use crate::group::WittElt;
use crate::node::NodeElement;
use crate::period::{ABSeries, PeriodExpansion};
use crate::scalar::Scalar;
use crate::series::{CoeffPoly, Laurent, Monomial, QTrunc};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

/// Scalars that know their own JSON and LaTeX forms.
pub trait Render: Scalar {
    /// Fields describing the value, merged into the term object.
    fn json_fields(&self, m: &mut Map<String, Value>);
    /// LaTeX for the value.
    fn latex(&self) -> String;
    /// Whether the printed form starts with a minus sign.
    fn negative(&self) -> bool;
}

impl Render for BigRational {
    fn json_fields(&self, m: &mut Map<String, Value>) {
        m.insert("num".into(), Value::String(self.numer().to_string()));
        m.insert("den".into(), Value::String(self.denom().to_string()));
    }

    fn latex(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            let s = if self.is_negative() { "-" } else { "" };
            format!("{s}\\frac{{{}}}{{{}}}", self.numer().abs(), self.denom())
        }
    }

    fn negative(&self) -> bool {
        self.is_negative()
    }
}

impl Render for Complex64 {
    fn json_fields(&self, m: &mut Map<String, Value>) {
        m.insert("re".into(), json!(self.re));
        m.insert("im".into(), json!(self.im));
    }

    fn latex(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else {
            format!("({} {} {}i)", self.re, if self.im < 0.0 { "-" } else { "+" }, self.im.abs())
        }
    }

    fn negative(&self) -> bool {
        self.im == 0.0 && self.re < 0.0
    }
}

impl Render for f64 {
    fn json_fields(&self, m: &mut Map<String, Value>) {
        m.insert("value".into(), json!(self));
    }

    fn latex(&self) -> String {
        format!("{self}")
    }

    fn negative(&self) -> bool {
        *self < 0.0
    }
}

fn mono_json(m: &Monomial) -> Value {
    let mut o = Map::new();
    for (s, e) in m.factors() {
        o.insert(s.name().to_string(), json!(e));
    }
    Value::Object(o)
}

/// `[{"num", "den", "mono": {sym: pow}}]`.
pub fn poly_json<S: Render>(p: &CoeffPoly<S>) -> Value {
    Value::Array(p.terms().iter().map(|(m, c)| poly_term(m, c, None)).collect())
}

fn poly_term<S: Render>(m: &Monomial, c: &S, deg: Option<usize>) -> Value {
    let mut o = Map::new();
    if let Some(k) = deg {
        o.insert("deg".into(), json!(k));
    }
    c.json_fields(&mut o);
    o.insert("mono".into(), mono_json(m));
    Value::Object(o)
}

/// The `q`-term list: one entry per q-degree and monomial.
fn qterms_json<S: Render>(q: &QTrunc<S>) -> Value {
    let mut out = Vec::new();
    for (k, p) in q.coeffs().iter().enumerate() {
        for (m, c) in p.terms() {
            out.push(poly_term(m, c, Some(k)));
        }
    }
    Value::Array(out)
}

/// `{"N": n, "q": [...]}`.
pub fn qtrunc_json<S: Render>(q: &QTrunc<S>) -> Value {
    json!({ "N": q.order(), "q": qterms_json(q) })
}

/// `{"var", "N", "K", "grading", "terms": [{"exp", "q"}]}`.
pub fn laurent_json<S: Render>(l: &Laurent<S>) -> Value {
    let terms: Vec<Value> = l.terms().map(|(e, c)| json!({ "exp": e, "q": qterms_json(c) })).collect();
    json!({
        "var": l.var().name(),
        "N": l.order(),
        "K": l.known(),
        "grading": l.grading().name(),
        "terms": terms,
    })
}

pub fn node_json<S: Render>(m: &NodeElement<S>) -> Value {
    let k = m.ctx().window();
    json!({
        "c0": qtrunc_json(m.c0()),
        "a": (1..=k).map(|i| qtrunc_json(&m.a(i))).collect::<Vec<_>>(),
        "b": (1..=k).map(|j| qtrunc_json(&m.b(j))).collect::<Vec<_>>(),
        "N": m.ctx().order(),
        "K": k,
    })
}

/// `{"m": QTrunc}` keyed by the Witt index.
pub fn witt_json<S: Render>(w: &WittElt<S>) -> Value {
    let mut o = Map::new();
    for (m, c) in w.terms() {
        o.insert(m.to_string(), qtrunc_json(c));
    }
    Value::Object(o)
}

/// `[{"basis": label, "coeff": QTrunc}]`.
pub fn cohom_json<S: Render>(c: &CohomClass<S>, primed: bool) -> Value {
    Value::Array(c.terms().map(|(l, x)| json!({ "basis": l.key(primed), "coeff": qtrunc_json(x) })).collect())
}

pub fn ab_json<S: Render>(ab: &ABSeries<S>) -> Value {
    let table = |m: &std::collections::BTreeMap<usize, QTrunc<S>>| {
        let mut o = Map::new();
        for (k, v) in m {
            o.insert(k.to_string(), qtrunc_json(v));
        }
        Value::Object(o)
    };
    json!({ "N": ab.n, "a": table(&ab.a), "b": table(&ab.b) })
}

/// One document per grade: `{"grade", "rows", "cols", "entries"}`.
pub fn period_json<S: Render>(pe: &PeriodExpansion<S>) -> Value {
    let key = |(s, l): &(crate::period::Side, crate::diff::Label)| l.key(s.primed());
    let rows: Vec<String> = pe.rows.iter().map(key).collect();
    let cols: Vec<String> = pe.cols.iter().map(key).collect();
    let grades: Vec<Value> = (0..=pe.n)
        .map(|j| {
            let m = pe.grade(j);
            json!({
                "grade": j,
                "rows": rows,
                "cols": cols,
                "entries": m.iter().map(|r| r.iter().map(poly_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(grades)
}

/// LaTeX name of a symbol: `c2(τ1)` → `c_{2}(\tau_1)`, `ω'_0[-2]` → `\omega'_{0}[-2]`.
pub fn sym_latex(name: &str) -> String {
    if let Some(rest) = name.strip_prefix('c') {
        if let Some((i, tag)) = rest.split_once('(') {
            let tag = tag.trim_end_matches(')').replace("τ1", "\\tau_1").replace("τ2", "\\tau_2").replace('τ', "\\tau");
            return format!("c_{{{i}}}({tag})");
        }
    }
    for (greek, tex) in [('α', "\\alpha"), ('ω', "\\omega")] {
        if let Some(rest) = name.strip_prefix(greek) {
            let (prime, rest) = match rest.strip_prefix('\'') {
                Some(r) => ("'", r),
                None => ("", rest),
            };
            if let Some((n, idx)) = rest.trim_start_matches('_').split_once('[') {
                return format!("{tex}{prime}_{{{n}}}[{idx}");
            }
        }
    }
    name.to_string()
}

fn mono_latex(m: &Monomial) -> String {
    m.factors()
        .iter()
        .map(|(s, e)| if *e == 1 { sym_latex(s.name()) } else { format!("{}^{{{e}}}", sym_latex(s.name())) })
        .collect()
}

/// Signed terms `(negative, body)` of a polynomial.
fn poly_pieces<S: Render>(p: &CoeffPoly<S>) -> Vec<(bool, String)> {
    p.terms()
        .iter()
        .map(|(m, c)| {
            let neg = c.negative();
            let a = if neg { -c.clone() } else { c.clone() };
            let body = match (a.is_one(), m.is_one()) {
                (true, true) => "1".to_string(),
                (true, false) => mono_latex(m),
                (false, true) => a.latex(),
                (false, false) => format!("{}{}", a.latex(), mono_latex(m)),
            };
            (neg, body)
        })
        .collect()
}

fn join(pieces: Vec<(bool, String)>) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in pieces.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

pub fn poly_latex<S: Render>(p: &CoeffPoly<S>) -> String {
    join(poly_pieces(p))
}

fn power(base: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{{{k}}}"),
    }
}

fn attach(pieces: Vec<(bool, String)>, factor: &str) -> Vec<(bool, String)> {
    if factor.is_empty() {
        return pieces;
    }
    if pieces.len() == 1 {
        let (neg, body) = pieces.into_iter().next().expect("one piece");
        return vec![(neg, if body == "1" { factor.to_string() } else { format!("{body}{factor}") })];
    }
    vec![(false, format!("({}){factor}", join(pieces)))]
}

fn qtrunc_pieces<S: Render>(q: &QTrunc<S>) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for (k, p) in q.coeffs().iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for piece in poly_pieces(p) {
            out.extend(attach(vec![piece], &power("q", k as i64)));
        }
    }
    out
}

pub fn qtrunc_latex<S: Render>(q: &QTrunc<S>) -> String {
    join(qtrunc_pieces(q))
}

/// `z^{-2} + c_{2}(\tau)z^{2} + O(z^{6})`.
pub fn laurent_latex<S: Render>(l: &Laurent<S>) -> String {
    let v = l.var().name().replace('₁', "_1").replace('₂', "_2").replace("x1", "x_1").replace("x2", "x_2");
    let mut pieces = Vec::new();
    for (e, c) in l.terms() {
        let qp = qtrunc_pieces(c);
        pieces.extend(attach(qp, &power(&v, e as i64)));
    }
    let mut s = join(pieces);
    s.push_str(&format!(" + O({v}^{{{}}})", l.known() + 1));
    s
}

fn label_latex(l: crate::diff::Label, primed: bool) -> String {
    let p = if primed { "'" } else { "" };
    match l {
        crate::diff::Label::Alpha(i) => format!("\\alpha{p}[{i}]"),
        crate::diff::Label::Omega(n) => format!("\\omega{p}[-{n}]"),
    }
}

/// Class with `α[0]` written as `dx` (genus one) or kept as a label.
pub fn cohom_latex<S: Render>(c: &CohomClass<S>, primed: bool, dx: Option<&str>) -> String {
    let mut pieces = Vec::new();
    let mut terms: Vec<_> = c.terms().collect();
    if dx.is_some() {
        // polar class first: −qω[−2] + [⋯]dx
        terms.sort_by_key(|(l, _)| matches!(l, crate::diff::Label::Alpha(_)));
    }
    for (l, x) in terms {
        let name = match (l, dx) {
            (crate::diff::Label::Alpha(0), Some(d)) => d.to_string(),
            _ => label_latex(l, primed),
        };
        let qp = qtrunc_pieces(x);
        if qp.len() > 1 {
            pieces.push((false, format!("[{}]{name}", join(qp))));
        } else {
            pieces.extend(attach(qp, &name));
        }
    }
    join(pieces)
}

pub fn witt_latex<S: Render>(w: &WittElt<S>) -> String {
    let mut pieces = Vec::new();
    for (m, c) in w.terms() {
        pieces.extend(attach(qtrunc_pieces(c), &format!("M_{{{m}}}")));
    }
    join(pieces)
}

pub fn ab_latex<S: Render>(ab: &ABSeries<S>) -> String {
    let mut lines = Vec::new();
    for (k, v) in &ab.a {
        lines.push(format!("a_{{{k}}} &\\equiv {} \\mod q^{{{}}}", qtrunc_latex(v), ab.n + 1));
    }
    for (k, v) in &ab.b {
        lines.push(format!("b_{{{k}}} &\\equiv {} \\mod q^{{{}}}", qtrunc_latex(v), ab.n + 1));
    }
    format!("\\begin{{aligned}}\n{}\n\\end{{aligned}}", lines.join(" \\\\\n"))
}

/// The pair `(class on C₁, class on C₂)` in the `Π` layout.
pub fn pi_pair_latex<S: Render>(a: &CohomClass<S>, b: &CohomClass<S>, genus_one: bool) -> String {
    if genus_one {
        format!("({}, {})", cohom_latex(a, false, Some("dx_1")), cohom_latex(b, false, Some("dx_2")))
    } else {
        format!("({}, {})", cohom_latex(a, false, None), cohom_latex(b, true, None))
    }
}

pub fn period_latex<S: Render>(pe: &PeriodExpansion<S>) -> String {
    let mut lines = Vec::new();
    for r in 0..pe.rows.len() {
        let (side, l) = pe.rows[r];
        let Ok((a, b)) = pe.row_classes(r) else { continue };
        let seed = match side {
            crate::period::Side::One => format!("({},0)", label_latex(l, false)),
            crate::period::Side::Two => format!("(0,{})", label_latex(l, true)),
        };
        lines.push(format!("\\Pi{seed} &= ({}, {})", cohom_latex(&a, false, None), cohom_latex(&b, true, None)));
    }
    format!("\\begin{{aligned}}\n{}\n\\end{{aligned}}", lines.join(" \\\\\n"))
}
