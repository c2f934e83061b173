//! The `sheaftree/1` instance format: a single JSON document holding the
//! field, the oriented tree, the sheaf data, and an optional group
//! section. Matrices are row-major arrays of scalar strings; all maps
//! are keyed `"v:e"` (restrictions) or `"g:cell"` (eta tables).
//!
//! Parsing is strict and total: any byte string either yields a fully
//! validated instance or a first-error diagnostic with its location.

use crate::equivariant::EquivariantSheaf;
use crate::field::{FieldSpec, ScalarParseError};
use crate::group::{GroupTable, TreeAction};
use crate::matrix::Matrix;
use crate::sheaf::Sheaf;
use crate::tree::Tree;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

pub const FORMAT_VERSION: &str = "sheaftree/1";

/// Hard caps keeping validation work proportional to input size.
pub const MAX_VERTICES: usize = 4096;
pub const MAX_GROUP_ORDER: usize = 512;
pub const MAX_STALK_DIM: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("scalar parse error at {location}: {source}")]
    Scalar {
        location: String,
        source: ScalarParseError,
    },
    #[error("validation error in {section}: {message}")]
    Validation { section: String, message: String },
}

fn validation(section: &str, message: impl ToString) -> InstanceError {
    InstanceError::Validation {
        section: section.to_string(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
struct FieldDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
struct TreeDoc {
    vertices: usize,
    edges: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
struct SheafDoc {
    vertex_dims: Vec<usize>,
    edge_dims: Vec<usize>,
    restrictions: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
struct GroupDoc {
    order: usize,
    mul: Vec<usize>,
    vertex_perms: Vec<Vec<usize>>,
    edge_perms: Vec<Vec<usize>>,
    eta_v: BTreeMap<String, Vec<String>>,
    eta_e: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
struct InstanceDoc {
    format: String,
    field: FieldDoc,
    tree: TreeDoc,
    sheaf: SheafDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<GroupDoc>,
}

/// A fully validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub field: FieldSpec,
    pub sheaf: Sheaf,
    pub equivariant: Option<EquivariantSheaf>,
}

impl Instance {
    pub fn from_sheaf(sheaf: Sheaf) -> Instance {
        Instance {
            field: sheaf.field(),
            sheaf,
            equivariant: None,
        }
    }

    pub fn from_equivariant(es: EquivariantSheaf) -> Instance {
        Instance {
            field: es.field(),
            sheaf: es.sheaf().clone(),
            equivariant: Some(es),
        }
    }
}

fn parse_pair_key(key: &str, section: &str) -> Result<(usize, usize), InstanceError> {
    let (a, b) = key
        .split_once(':')
        .ok_or_else(|| validation(section, format!("key {key:?} is not of the form \"a:b\"")))?;
    let a = a
        .parse::<usize>()
        .map_err(|_| validation(section, format!("bad index in key {key:?}")))?;
    let b = b
        .parse::<usize>()
        .map_err(|_| validation(section, format!("bad index in key {key:?}")))?;
    Ok((a, b))
}

fn parse_matrix(
    field: FieldSpec,
    rows: usize,
    cols: usize,
    body: &[String],
    location: &str,
) -> Result<Matrix, InstanceError> {
    if body.len() != rows * cols {
        return Err(validation(
            location,
            format!("matrix has {} entries, expected {rows}x{cols}", body.len()),
        ));
    }
    let mut entries = Vec::with_capacity(body.len());
    for (i, text) in body.iter().enumerate() {
        let s = field.parse_scalar(text).map_err(|source| InstanceError::Scalar {
            location: format!("{location}[{i}]"),
            source,
        })?;
        entries.push(s);
    }
    Matrix::new(rows, cols, field, entries).map_err(|e| validation(location, e))
}

/// Parse and fully validate an instance document.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let doc: InstanceDoc =
        serde_json::from_str(text).map_err(|e| InstanceError::Schema(e.to_string()))?;
    instance_from_doc(doc)
}

fn instance_from_doc(doc: InstanceDoc) -> Result<Instance, InstanceError> {
    if doc.format != FORMAT_VERSION {
        return Err(InstanceError::Schema(format!(
            "unsupported format {:?}, expected {FORMAT_VERSION:?}",
            doc.format
        )));
    }
    let field = match doc.field.kind.as_str() {
        "Q" => FieldSpec::rationals(),
        "Fp" => {
            let p = doc
                .field
                .p
                .ok_or_else(|| validation("field", "kind \"Fp\" requires a modulus p"))?;
            FieldSpec::prime_field(p).map_err(|e| validation("field", e))?
        }
        other => {
            return Err(validation(
                "field",
                format!("unknown field kind {other:?} (expected \"Q\" or \"Fp\")"),
            ))
        }
    };

    if doc.tree.vertices > MAX_VERTICES {
        return Err(validation("tree", format!("vertex count exceeds {MAX_VERTICES}")));
    }
    let triples: Vec<(usize, usize, usize)> =
        doc.tree.edges.iter().map(|t| (t[0], t[1], t[2])).collect();
    let tree = Arc::new(Tree::new(doc.tree.vertices, triples).map_err(|e| validation("tree", e))?);

    if doc.sheaf.vertex_dims.len() != tree.n_vertices()
        || doc.sheaf.edge_dims.len() != tree.n_edges()
    {
        return Err(validation("sheaf", "dimension list lengths do not match the tree"));
    }
    if doc
        .sheaf
        .vertex_dims
        .iter()
        .chain(doc.sheaf.edge_dims.iter())
        .any(|&d| d > MAX_STALK_DIM)
    {
        return Err(validation("sheaf", format!("stalk dimension exceeds {MAX_STALK_DIM}")));
    }
    let mut gamma = BTreeMap::new();
    for (key, body) in &doc.sheaf.restrictions {
        let (v, e) = parse_pair_key(key, "sheaf.restrictions")?;
        if v >= tree.n_vertices() || e >= tree.n_edges() {
            return Err(validation(
                "sheaf",
                format!("restriction key {key:?} references a missing cell"),
            ));
        }
        let m = parse_matrix(
            field,
            doc.sheaf.edge_dims[e],
            doc.sheaf.vertex_dims[v],
            body,
            &format!("sheaf.restrictions[\"{key}\"]"),
        )?;
        gamma.insert((v, e), m);
    }
    let sheaf = Sheaf::new(
        tree.clone(),
        field,
        doc.sheaf.vertex_dims.clone(),
        doc.sheaf.edge_dims.clone(),
        gamma,
    )
    .map_err(|e| validation("sheaf", e))?;

    let equivariant = match doc.group {
        None => None,
        Some(g) => {
            if g.order > MAX_GROUP_ORDER {
                return Err(validation("group", format!("group order exceeds {MAX_GROUP_ORDER}")));
            }
            let group = GroupTable::new(g.order, g.mul.clone()).map_err(|e| validation("group", e))?;
            let action = TreeAction::new(g.vertex_perms.clone(), g.edge_perms.clone());
            // eta tables must cover every (element, cell) pair exactly
            let mut eta_v: Vec<Vec<Option<Matrix>>> =
                vec![vec![None; tree.n_vertices()]; g.order];
            for (key, body) in &g.eta_v {
                let (el, v) = parse_pair_key(key, "group.eta_v")?;
                if el >= g.order || v >= tree.n_vertices() {
                    return Err(validation(
                        "group",
                        format!("eta_v key {key:?} references a missing element or vertex"),
                    ));
                }
                if el >= g.vertex_perms.len() || g.vertex_perms[el].len() != tree.n_vertices() {
                    return Err(validation("group", "vertex permutation tables are malformed"));
                }
                let gv = g.vertex_perms[el][v];
                if gv >= tree.n_vertices() {
                    return Err(validation("group", "vertex permutation leaves the tree"));
                }
                let m = parse_matrix(
                    field,
                    doc.sheaf.vertex_dims[gv],
                    doc.sheaf.vertex_dims[v],
                    body,
                    &format!("group.eta_v[\"{key}\"]"),
                )?;
                eta_v[el][v] = Some(m);
            }
            let mut eta_e: Vec<Vec<Option<Matrix>>> = vec![vec![None; tree.n_edges()]; g.order];
            for (key, body) in &g.eta_e {
                let (el, e) = parse_pair_key(key, "group.eta_e")?;
                if el >= g.order || e >= tree.n_edges() {
                    return Err(validation(
                        "group",
                        format!("eta_e key {key:?} references a missing element or edge"),
                    ));
                }
                if el >= g.edge_perms.len() || g.edge_perms[el].len() != tree.n_edges() {
                    return Err(validation("group", "edge permutation tables are malformed"));
                }
                let ge = g.edge_perms[el][e];
                if ge >= tree.n_edges() {
                    return Err(validation("group", "edge permutation leaves the tree"));
                }
                let m = parse_matrix(
                    field,
                    doc.sheaf.edge_dims[ge],
                    doc.sheaf.edge_dims[e],
                    body,
                    &format!("group.eta_e[\"{key}\"]"),
                )?;
                eta_e[el][e] = Some(m);
            }
            let unwrap_table = |t: Vec<Vec<Option<Matrix>>>, what: &str| {
                let mut out = Vec::with_capacity(t.len());
                for (el, row) in t.into_iter().enumerate() {
                    let mut per = Vec::with_capacity(row.len());
                    for (c, m) in row.into_iter().enumerate() {
                        match m {
                            Some(m) => per.push(m),
                            None => {
                                return Err(validation(
                                    "group",
                                    format!("missing {what} entry for \"{el}:{c}\""),
                                ))
                            }
                        }
                    }
                    out.push(per);
                }
                Ok(out)
            };
            let eta_v = unwrap_table(eta_v, "eta_v")?;
            let eta_e = unwrap_table(eta_e, "eta_e")?;
            let es = EquivariantSheaf::new(sheaf.clone(), Arc::new(group), action, eta_v, eta_e)
                .map_err(|e| validation("group", e))?;
            Some(es)
        }
    };

    Ok(Instance {
        field,
        sheaf,
        equivariant,
    })
}

fn field_doc(field: FieldSpec) -> FieldDoc {
    match field {
        FieldSpec::Rationals => FieldDoc {
            kind: "Q".into(),
            p: None,
        },
        FieldSpec::PrimeField(p) => FieldDoc {
            kind: "Fp".into(),
            p: Some(p),
        },
    }
}

pub fn matrix_strings(field: FieldSpec, m: &Matrix) -> Vec<String> {
    m.entries().iter().map(|s| field.render(s)).collect()
}

fn instance_to_doc(instance: &Instance) -> InstanceDoc {
    let s = &instance.sheaf;
    let tree = s.tree();
    let field = instance.field;
    let mut restrictions = BTreeMap::new();
    for e in tree.edges() {
        let (x, y) = tree.endpoints(e).unwrap();
        for v in [x, y] {
            restrictions.insert(format!("{v}:{e}"), matrix_strings(field, s.gamma(v, e)));
        }
    }
    let group = instance.equivariant.as_ref().map(|es| {
        let g = es.group();
        let n = g.order();
        let mut eta_v = BTreeMap::new();
        let mut eta_e = BTreeMap::new();
        for el in 0..n {
            for v in tree.vertices() {
                eta_v.insert(format!("{el}:{v}"), matrix_strings(field, es.eta_vertex(el, v)));
            }
            for e in tree.edges() {
                eta_e.insert(format!("{el}:{e}"), matrix_strings(field, es.eta_edge(el, e)));
            }
        }
        GroupDoc {
            order: n,
            mul: g.mul_table().to_vec(),
            vertex_perms: (0..n).map(|el| es.action().vertex_perm(el).to_vec()).collect(),
            edge_perms: (0..n).map(|el| es.action().edge_perm(el).to_vec()).collect(),
            eta_v,
            eta_e,
        }
    });
    InstanceDoc {
        format: FORMAT_VERSION.into(),
        field: field_doc(field),
        tree: TreeDoc {
            vertices: tree.n_vertices(),
            edges: tree
                .edges()
                .map(|e| {
                    let (x, y) = tree.endpoints(e).unwrap();
                    [e, x, y]
                })
                .collect(),
        },
        sheaf: SheafDoc {
            vertex_dims: s.vdims().to_vec(),
            edge_dims: s.edims().to_vec(),
            restrictions,
        },
        group,
    }
}

/// Canonical pretty serialization; byte-identical for equal instances.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut text = serde_json::to_string_pretty(&instance_to_doc(instance))
        .expect("instance document serializes");
    text.push('\n');
    text
}

/// FNV-1a over the canonical compact serialization.
pub fn instance_digest(instance: &Instance) -> String {
    let text =
        serde_json::to_string(&instance_to_doc(instance)).expect("instance document serializes");
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

/// Parse the CLI field flag: `Q` or `Fp:<p>`.
pub fn parse_field_flag(text: &str) -> Result<FieldSpec, InstanceError> {
    if text == "Q" {
        return Ok(FieldSpec::rationals());
    }
    if let Some(p) = text.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| validation("field", format!("bad modulus in {text:?}")))?;
        return FieldSpec::prime_field(p).map_err(|e| validation("field", e));
    }
    Err(validation(
        "field",
        format!("bad field flag {text:?} (expected Q or Fp:<p>)"),
    ))
}

/// Structural equality of the underlying documents, used by round-trip
/// tests.
pub fn instances_equal(a: &Instance, b: &Instance) -> bool {
    instance_to_doc(a) == instance_to_doc(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_round_trip() {
        for instance in [
            Instance::from_equivariant(fixtures::fix_edge()),
            Instance::from_equivariant(fixtures::fix_star3_ell()),
            Instance::from_equivariant(fixtures::fix_star3_c3()),
            Instance::from_equivariant(fixtures::fix_star4_d4()),
            Instance::from_equivariant(fixtures::fix_path3_recursed()),
            Instance::from_equivariant(fixtures::fix_edge_reducible()),
            Instance::from_sheaf(fixtures::fix_path3_multi()),
        ] {
            let text = serialize_instance(&instance);
            let back = parse_instance(&text).unwrap();
            assert!(instances_equal(&instance, &back));
            // serialization is canonical
            assert_eq!(text, serialize_instance(&back));
            assert_eq!(instance_digest(&instance), instance_digest(&back));
        }
    }

    #[test]
    fn non_prime_modulus_is_rejected() {
        let text = serialize_instance(&Instance::from_sheaf(fixtures::fix_path3_multi()))
            .replace("\"kind\": \"Q\"", "\"kind\": \"Fp\",\n    \"p\": 4");
        match parse_instance(&text) {
            Err(InstanceError::Validation { section, .. }) => assert_eq!(section, "field"),
            other => panic!("expected field validation error, got {other:?}"),
        }
    }

    #[test]
    fn non_incident_restriction_key_is_rejected() {
        let instance = Instance::from_sheaf(fixtures::fix_path3_multi());
        let mut text = serialize_instance(&instance);
        // path is 0-1-2 with edges 0:(0,1), 1:(1,2); pair (0,1) is not incident
        text = text.replace("\"0:0\"", "\"0:1\"");
        match parse_instance(&text) {
            Err(InstanceError::Validation { section, .. }) => assert_eq!(section, "sheaf"),
            other => panic!("expected sheaf validation error, got {other:?}"),
        }
    }

    #[test]
    fn schema_errors_carry_location() {
        match parse_instance("{ not json") {
            Err(InstanceError::Schema(msg)) => assert!(msg.contains("line")),
            other => panic!("expected schema error, got {other:?}"),
        }
        match parse_instance("{}") {
            Err(InstanceError::Schema(_)) => {}
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn bad_scalars_are_located() {
        let instance = Instance::from_equivariant(fixtures::fix_edge());
        let text = serialize_instance(&instance).replace("\"1\"", "\"1/0\"");
        match parse_instance(&text) {
            Err(InstanceError::Scalar { location, .. }) => {
                assert!(location.contains("restrictions") || location.contains("eta"));
            }
            other => panic!("expected scalar error, got {other:?}"),
        }
    }

    #[test]
    fn field_flag_parsing() {
        assert_eq!(parse_field_flag("Q").unwrap(), FieldSpec::rationals());
        assert_eq!(
            parse_field_flag("Fp:5").unwrap(),
            FieldSpec::prime_field(5).unwrap()
        );
        assert!(parse_field_flag("Fp:4").is_err());
        assert!(parse_field_flag("R").is_err());
    }
}
