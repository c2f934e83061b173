//! Machine-readable command reports. A report is deterministic for a
//! fixed input and seed: all maps are ordered and every matrix renders
//! through the canonical scalar strings.

use crate::decompose::{Certificate, DecompositionKind, DecompositionResult, HypothesisEvidence};
use crate::field::FieldSpec;
use crate::instance::matrix_strings;
use crate::matrix::Matrix;
use crate::rep::Representation;
use crate::subspace::Subspace;
use serde::Serialize;
use serde_json::{json, Value};

pub const REPORT_VERSION: &str = "sheaftree-report/1";

#[derive(Debug, Clone, Serialize)]
pub struct AssertionRecord {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format: String,
    pub command: String,
    pub instance_digest: String,
    pub results: Value,
    pub assertions: Vec<AssertionRecord>,
    pub exit_status: i32,
}

impl Report {
    pub fn new(command: &str, digest: String) -> Report {
        Report {
            format: REPORT_VERSION.into(),
            command: command.into(),
            instance_digest: digest,
            results: Value::Object(Default::default()),
            assertions: Vec::new(),
            exit_status: 0,
        }
    }

    pub fn assert_outcome(&mut self, name: &str, ok: bool, detail: impl ToString) {
        self.assertions.push(AssertionRecord {
            name: name.into(),
            ok,
            detail: detail.to_string(),
        });
    }

    pub fn set(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.results {
            map.insert(key.into(), value);
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "command: {}\ninstance: {}\n",
            self.command, self.instance_digest
        ));
        fn walk(prefix: &str, value: &Value, out: &mut String) {
            match value {
                Value::Object(map) => {
                    for (k, v) in map {
                        let path = if prefix.is_empty() {
                            k.clone()
                        } else {
                            format!("{prefix}.{k}")
                        };
                        walk(&path, v, out);
                    }
                }
                other => out.push_str(&format!("{prefix}: {other}\n")),
            }
        }
        walk("", &self.results, &mut out);
        for a in &self.assertions {
            out.push_str(&format!(
                "assert {}: {}{}\n",
                a.name,
                if a.ok { "ok" } else { "FAILED" },
                if a.detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", a.detail)
                }
            ));
        }
        out.push_str(&format!("exit: {}\n", self.exit_status));
        out
    }
}

pub fn matrix_json(field: FieldSpec, m: &Matrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": matrix_strings(field, m),
    })
}

pub fn subspace_json(field: FieldSpec, s: &Subspace) -> Value {
    json!({
        "ambient_dim": s.ambient_dim(),
        "dim": s.dim(),
        "basis": (0..s.dim())
            .map(|i| {
                s.basis_vector(i)
                    .iter()
                    .map(|x| field.render(x))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    })
}

pub fn representation_json(rep: &Representation) -> Value {
    let field = rep.field();
    let matrices: serde_json::Map<String, Value> = rep
        .elements()
        .iter()
        .map(|&g| (g.to_string(), matrix_json(field, rep.rho(g))))
        .collect();
    json!({
        "dim": rep.dim(),
        "elements": rep.elements(),
        "matrices": Value::Object(matrices),
    })
}

pub fn decomposition_json(r: &DecompositionResult) -> Value {
    let trace: Vec<&str> = r.trace.iter().map(|s| s.name()).collect();
    match &r.kind {
        DecompositionKind::Zero => json!({ "variant": "Zero", "trace": trace }),
        DecompositionKind::VertexInduced { vertex, sigma } => json!({
            "variant": "VertexInduced",
            "cell": vertex,
            "stabilizer": sigma.elements(),
            "sigma": representation_json(sigma),
            "trace": trace,
        }),
        DecompositionKind::EdgeInduced { edge, sigma } => json!({
            "variant": "EdgeInduced",
            "cell": edge,
            "stabilizer": sigma.elements(),
            "sigma": representation_json(sigma),
            "trace": trace,
        }),
    }
}

pub fn certificate_json(field: FieldSpec, c: &Certificate) -> Value {
    json!({
        "induced": representation_json(&c.induced),
        "h0_rep": representation_json(&c.h0_rep),
        "intertwiner": matrix_json(field, &c.intertwiner),
        "determinant": field.render(&c.determinant),
    })
}

pub fn hypothesis_evidence_json(field: FieldSpec, ev: &HypothesisEvidence) -> Value {
    json!({
        "reason": ev.reason,
        "orbits": ev.orbits,
        "witness": subspace_json(field, &ev.witness),
    })
}
