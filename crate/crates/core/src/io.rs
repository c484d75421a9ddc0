//! JSON documents and the inline spec grammar.
//!
//! A join spec document looks like
//! `{"h": {"n": 3, "edges": [[0,1],[1,2]]}, "components": ["K1,3", "K2", {"n": 3, "edges": [[0,1],[1,2]]}]}`
//! where every graph is either an edge-list object or a generator string.
//!
//! The inline grammar is `term := NAME | NAME '[' term (';' term)* ']'`,
//! e.g. `P3[K1,3;K2;P3]`. A bracketed term used as a component is expanded
//! into its explicit graph.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntPoly};
use crate::graph::Graph;
use crate::join::{hjoin_explicit, AssocMatrix, EigvecBundle, JoinSpec, VerificationReport};
use crate::lexpow::{PowerSpectrum, PowerValue};
use crate::main_spectrum::WalkData;
use crate::spectral::{Origin, Spectrum, SpectrumEntry};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        GraphDoc {
            n: g.order(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GraphRef {
    Doc(GraphDoc),
    Gen(String),
}

impl GraphRef {
    pub fn to_graph(&self) -> Result<Graph> {
        match self {
            GraphRef::Doc(d) => d.to_graph(),
            GraphRef::Gen(s) => parse_inline(s).map(Input::into_graph),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpecDoc {
    pub h: GraphRef,
    pub components: Vec<GraphRef>,
}

impl From<&JoinSpec> for SpecDoc {
    fn from(spec: &JoinSpec) -> Self {
        SpecDoc {
            h: GraphRef::Doc(spec.host().into()),
            components: spec
                .components()
                .iter()
                .map(|g| GraphRef::Doc(g.into()))
                .collect(),
        }
    }
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<JoinSpec> {
        let comps = self
            .components
            .iter()
            .map(GraphRef::to_graph)
            .collect::<Result<Vec<_>>>()?;
        JoinSpec::new(self.h.to_graph()?, comps)
    }
}

pub fn spec_to_json(spec: &JoinSpec) -> Value {
    serde_json::to_value(SpecDoc::from(spec)).expect("spec serializes")
}

pub fn spec_from_json(text: &str) -> Result<JoinSpec> {
    serde_json::from_str::<SpecDoc>(text)?.to_spec()
}

/// What a command was given: a single graph or a join spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Graph(Graph),
    Spec(JoinSpec),
}

impl Input {
    /// A single graph `G` is treated as `K_1[G]`.
    pub fn into_spec(self) -> Result<JoinSpec> {
        match self {
            Input::Graph(g) => JoinSpec::single(g),
            Input::Spec(s) => Ok(s),
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            Input::Graph(g) => g,
            Input::Spec(s) => hjoin_explicit(&s),
        }
    }
}

pub fn parse_inline(text: &str) -> Result<Input> {
    let mut p = InlineParser {
        s: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

struct InlineParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl InlineParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            msg: format!("{msg} at column {}", self.pos + 1),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Input> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && !b"[];".contains(&self.s[self.pos]) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .trim();
        if name.is_empty() {
            return Err(self.err("expected a graph name"));
        }
        let host = Graph::generate(name)?;
        if self.s.get(self.pos) != Some(&b'[') {
            return Ok(Input::Graph(host));
        }
        self.pos += 1;
        let mut comps = vec![self.term()?.into_graph()];
        loop {
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b';') => {
                    self.pos += 1;
                    comps.push(self.term()?.into_graph());
                }
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected ';' or ']'")),
            }
        }
        Ok(Input::Spec(JoinSpec::new(host, comps)?))
    }
}

/// Reads a file holding a JSON spec, a JSON graph object or an edge list.
pub fn parse_document(text: &str) -> Result<Input> {
    if !text.trim_start().starts_with('{') {
        return Graph::from_edge_list(text).map(Input::Graph);
    }
    let v: Value = serde_json::from_str(text)?;
    if v.get("h").is_some() {
        Ok(Input::Spec(
            serde_json::from_value::<SpecDoc>(v)?.to_spec()?,
        ))
    } else {
        Ok(Input::Graph(
            serde_json::from_value::<GraphDoc>(v)?.to_graph()?,
        ))
    }
}

pub fn spectrum_to_json(s: &Spectrum) -> Value {
    Value::Array(
        s.entries
            .iter()
            .map(|e| {
                let tags: Vec<String> = e.origins.iter().map(Origin::to_string).collect();
                json!({
                    "value": e.value,
                    "multiplicity": e.multiplicity.to_string(),
                    "origin": tags.join("+"),
                })
            })
            .collect(),
    )
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Invalid(format!("missing field '{key}'")))
}

fn decimal<T: std::str::FromStr>(v: &Value, what: &str) -> Result<T> {
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Invalid(format!("{what} must be a decimal string")))
}

pub fn spectrum_from_json(v: &Value) -> Result<Spectrum> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Invalid("spectrum must be an array".into()))?;
    let mut entries = Vec::with_capacity(arr.len());
    for e in arr {
        let value = field(e, "value")?
            .as_f64()
            .ok_or_else(|| Error::Invalid("value must be a number".into()))?;
        let multiplicity: BigUint = decimal(field(e, "multiplicity")?, "multiplicity")?;
        let origins = field(e, "origin")?
            .as_str()
            .ok_or_else(|| Error::Invalid("origin must be a string".into()))?
            .split('+')
            .map(str::parse)
            .collect::<Result<Vec<Origin>>>()?;
        entries.push(SpectrumEntry {
            value,
            multiplicity,
            origins,
        });
    }
    Ok(Spectrum { entries })
}

pub fn poly_to_json(p: &IntPoly) -> Value {
    json!({ "coeffs": p.to_decimal_strings() })
}

pub fn poly_from_json(v: &Value) -> Result<IntPoly> {
    let coeffs = field(v, "coeffs")?
        .as_array()
        .ok_or_else(|| Error::Invalid("coeffs must be an array".into()))?
        .iter()
        .map(|c| decimal::<BigInt>(c, "coefficient"))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    json!(m.to_decimal_rows())
}

pub fn assoc_to_json(w: &AssocMatrix) -> Value {
    json!({
        "size": w.size(),
        "offsets": w.offsets,
        "matrix": matrix_to_json(&w.matrix),
    })
}

pub fn walk_data_to_json(wd: &WalkData) -> Value {
    json!({
        "n": wd.order(),
        "s": wd.s,
        "walk_matrix": matrix_to_json(&wd.walk_matrix),
        "walk_counts": wd.walk_counts.iter().map(BigInt::to_string).collect::<Vec<_>>(),
        "main_poly": poly_to_json(&wd.main_poly()),
    })
}

pub fn eigvecs_to_json(b: &EigvecBundle) -> Value {
    let mut vectors = Vec::with_capacity(b.len());
    for e in &b.embedded {
        vectors.push(json!({
            "kind": "embedded",
            "eigenvalue": e.eigenvalue,
            "component": e.component,
            "vector": b.padded(e).as_slice(),
        }));
    }
    for r in &b.reconstructed {
        vectors.push(json!({
            "kind": "reconstructed",
            "eigenvalue": r.rho,
            "alpha": r.alpha.as_slice(),
            "vector": r.vector.as_slice(),
        }));
    }
    json!({
        "order": b.vertex_offsets.last().copied().unwrap_or(0),
        "vertex_offsets": b.vertex_offsets,
        "max_residual": b.max_residual,
        "vectors": vectors,
    })
}

pub fn power_spectrum_to_json(base: &Graph, s: &PowerSpectrum) -> Value {
    let entries: Vec<Value> = s
        .entries
        .iter()
        .map(|e| {
            let tags: Vec<String> = e
                .levels
                .iter()
                .map(|&l| Origin::PowerLevel(l).to_string())
                .collect();
            let mut v = json!({
                "value": e.value.to_f64(),
                "multiplicity": e.multiplicity.to_string(),
                "origin": tags.join("+"),
            });
            if let PowerValue::Exact(x) = &e.value {
                v["exact_value"] = json!(x.to_string());
            }
            v
        })
        .collect();
    json!({
        "base": GraphDoc::from(base),
        "k": s.k,
        "order": s.order.to_string(),
        "degree": s.degree.to_string(),
        "exact": s.is_exact(),
        "multiplicity_sum": s.multiplicity_sum().to_string(),
        "spectrum": entries,
    })
}

pub fn report_to_json(r: &VerificationReport) -> Value {
    json!({
        "order": r.order,
        "passed": r.passed(),
        "spectrum_distance": r.spectrum_distance,
        "max_residual": r.max_residual,
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}
