//! Cellular sheaves on a tree and their compactly-supported cohomology.
//!
//! A sheaf assigns a stalk dimension to every vertex and edge and a
//! restriction matrix γ_{v,e} to every incident pair. The coboundary
//! sends a vertex cochain s to Σ_{e>v} OR(v,e)·γ_{v,e}(s); H⁰ is its
//! kernel and H¹ its cokernel.
//!
//! Global coordinates are fixed once and for all: the total vertex space
//! orders blocks by ascending vertex id, the total edge space by
//! ascending edge id, with stalk coordinates 0..dim−1 inside each block.
//! Every matrix produced here is reproducible bit for bit.

use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::subspace::{quotient_map, Subspace};
use crate::tree::{EdgeId, Tree, TreeError, VertexId};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("missing restriction matrix for incident pair ({vertex},{edge})")]
    MissingRestriction { vertex: VertexId, edge: EdgeId },
    #[error("restriction for non-incident pair ({vertex},{edge})")]
    NotIncidentPair { vertex: VertexId, edge: EdgeId },
    #[error("restriction ({vertex},{edge}) has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        vertex: VertexId,
        edge: EdgeId,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("restriction ({vertex},{edge}) is not over the sheaf field")]
    FieldMismatch { vertex: VertexId, edge: EdgeId },
    #[error("stalk dimension list has wrong length")]
    DimListLength,
    #[error("subspaces do not form a subsheaf: gamma({vertex},{edge}) escapes the edge subspace")]
    NotASubsheaf { vertex: VertexId, edge: EdgeId },
    #[error("sheaf map does not commute with restrictions at ({vertex},{edge})")]
    NotASheafMap { vertex: VertexId, edge: EdgeId },
    #[error("sheaf map has wrong shape at {0}")]
    MapShape(String),
    #[error("short exact sequence is not exact at {0}")]
    InvalidSES(String),
    #[error("zero vector passed where a nonzero one is required")]
    ZeroVector,
}

/// A cellular sheaf of k-vector spaces on a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sheaf {
    tree: Arc<Tree>,
    field: FieldSpec,
    vdim: Vec<usize>,
    edim: Vec<usize>,
    gamma: BTreeMap<(VertexId, EdgeId), Matrix>,
}

impl Sheaf {
    /// Validates that a restriction exists for exactly the incident pairs
    /// and that every matrix has shape edim(e) × vdim(v) over `field`.
    pub fn new(
        tree: Arc<Tree>,
        field: FieldSpec,
        vdim: Vec<usize>,
        edim: Vec<usize>,
        gamma: BTreeMap<(VertexId, EdgeId), Matrix>,
    ) -> Result<Sheaf, SheafError> {
        if vdim.len() != tree.n_vertices() || edim.len() != tree.n_edges() {
            return Err(SheafError::DimListLength);
        }
        for (&(v, e), m) in &gamma {
            let incident = e < tree.n_edges() && {
                let (x, y) = tree.endpoints(e)?;
                v == x || v == y
            };
            if !incident {
                return Err(SheafError::NotIncidentPair { vertex: v, edge: e });
            }
            if m.rows() != edim[e] || m.cols() != vdim[v] {
                return Err(SheafError::ShapeMismatch {
                    vertex: v,
                    edge: e,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows: edim[e],
                    want_cols: vdim[v],
                });
            }
            if m.field() != field {
                return Err(SheafError::FieldMismatch { vertex: v, edge: e });
            }
        }
        for e in tree.edges() {
            let (x, y) = tree.endpoints(e)?;
            for v in [x, y] {
                if !gamma.contains_key(&(v, e)) {
                    return Err(SheafError::MissingRestriction { vertex: v, edge: e });
                }
            }
        }
        Ok(Sheaf {
            tree,
            field,
            vdim,
            edim,
            gamma,
        })
    }

    /// Sheaf with all stalks zero-dimensional.
    pub fn zero(tree: Arc<Tree>, field: FieldSpec) -> Sheaf {
        let vdim = vec![0; tree.n_vertices()];
        let edim = vec![0; tree.n_edges()];
        let mut gamma = BTreeMap::new();
        for e in tree.edges() {
            let (x, y) = tree.endpoints(e).unwrap();
            gamma.insert((x, e), Matrix::zero(0, 0, field));
            gamma.insert((y, e), Matrix::zero(0, 0, field));
        }
        Sheaf::new(tree, field, vdim, edim, gamma).unwrap()
    }

    pub fn tree(&self) -> &Arc<Tree> {
        &self.tree
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vdim(&self, v: VertexId) -> usize {
        self.vdim[v]
    }

    pub fn edim(&self, e: EdgeId) -> usize {
        self.edim[e]
    }

    pub fn vdims(&self) -> &[usize] {
        &self.vdim
    }

    pub fn edims(&self) -> &[usize] {
        &self.edim
    }

    pub fn gamma(&self, v: VertexId, e: EdgeId) -> &Matrix {
        &self.gamma[&(v, e)]
    }

    pub fn total_vdim(&self) -> usize {
        self.vdim.iter().sum()
    }

    pub fn total_edim(&self) -> usize {
        self.edim.iter().sum()
    }

    pub fn vertex_offset(&self, v: VertexId) -> usize {
        self.vdim[..v].iter().sum()
    }

    pub fn edge_offset(&self, e: EdgeId) -> usize {
        self.edim[..e].iter().sum()
    }

    /// The block matrix of ∂: rows indexed by sorted edges, columns by
    /// sorted vertices, block (e,v) = OR(v,e)·γ_{v,e} for incident pairs.
    pub fn coboundary_matrix(&self) -> Matrix {
        let mut d = Matrix::zero(self.total_edim(), self.total_vdim(), self.field);
        for e in self.tree.edges() {
            let (x, y) = self.tree.endpoints(e).unwrap();
            let r0 = self.edge_offset(e);
            d.paste(r0, self.vertex_offset(x), self.gamma(x, e));
            d.paste(r0, self.vertex_offset(y), &self.gamma(y, e).neg());
        }
        d
    }

    /// H⁰ = Ker ∂ and H¹ = Cok ∂, with a projection onto complement
    /// coordinates of the column space as the H¹ model.
    pub fn cohomology(&self) -> CohomologyResult {
        let d = self.coboundary_matrix();
        let h0 = d.kernel_basis();
        let image = d.column_space();
        let (h1_proj, h1_section) =
            quotient_map(self.total_edim(), &image).expect("image lives in the edge space");
        CohomologyResult {
            h0_dim: h0.dim(),
            h1_dim: h1_proj.rows(),
            h0,
            h1_proj,
            h1_section,
            coboundary: d,
        }
    }

    pub fn h0_dim(&self) -> usize {
        self.coboundary_matrix().kernel_basis().dim()
    }

    /// (h0 − h1, Σ vdim − Σ edim); the two are equal for every sheaf.
    pub fn euler_check(&self) -> (i64, i64) {
        let c = self.cohomology();
        let lhs = c.h0_dim as i64 - c.h1_dim as i64;
        let rhs = self.total_vdim() as i64 - self.total_edim() as i64;
        (lhs, rhs)
    }
}

/// Cohomology of a sheaf in the fixed global coordinates.
#[derive(Debug, Clone)]
pub struct CohomologyResult {
    /// Kernel of ∂ inside the total vertex space.
    pub h0: Subspace,
    /// Projection of the total edge space onto H¹ representatives.
    pub h1_proj: Matrix,
    /// Section embedding H¹ representatives back into edge cochains.
    pub h1_section: Matrix,
    pub h0_dim: usize,
    pub h1_dim: usize,
    pub coboundary: Matrix,
}

/// A morphism of sheaves on a common tree: one matrix per cell,
/// commuting with the restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafMap {
    pub f_v: Vec<Matrix>,
    pub f_e: Vec<Matrix>,
}

impl SheafMap {
    /// Checks shapes and the commuting squares γ'∘f_v = f_e∘γ.
    pub fn validate(&self, src: &Sheaf, dst: &Sheaf) -> Result<(), SheafError> {
        let tree = src.tree();
        if self.f_v.len() != tree.n_vertices() || self.f_e.len() != tree.n_edges() {
            return Err(SheafError::MapShape("cell count".into()));
        }
        for v in tree.vertices() {
            let m = &self.f_v[v];
            if m.rows() != dst.vdim(v) || m.cols() != src.vdim(v) {
                return Err(SheafError::MapShape(format!("vertex {v}")));
            }
        }
        for e in tree.edges() {
            let m = &self.f_e[e];
            if m.rows() != dst.edim(e) || m.cols() != src.edim(e) {
                return Err(SheafError::MapShape(format!("edge {e}")));
            }
        }
        for e in tree.edges() {
            let (x, y) = tree.endpoints(e)?;
            for v in [x, y] {
                let lhs = dst.gamma(v, e).mul(&self.f_v[v]);
                let rhs = self.f_e[e].mul(src.gamma(v, e));
                if lhs != rhs {
                    return Err(SheafError::NotASheafMap { vertex: v, edge: e });
                }
            }
        }
        Ok(())
    }

    /// Block-diagonal action on the total vertex space.
    pub fn vertex_block(&self, field: FieldSpec) -> Matrix {
        let parts: Vec<&Matrix> = self.f_v.iter().collect();
        Matrix::block_diag(field, &parts)
    }

    /// Block-diagonal action on the total edge space.
    pub fn edge_block(&self, field: FieldSpec) -> Matrix {
        let parts: Vec<&Matrix> = self.f_e.iter().collect();
        Matrix::block_diag(field, &parts)
    }
}

/// Per-cell subspaces of a sheaf's stalks, intended to be closed under
/// the restriction maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsheafData {
    pub vsub: Vec<Subspace>,
    pub esub: Vec<Subspace>,
}

impl SubsheafData {
    pub fn zero(s: &Sheaf) -> SubsheafData {
        SubsheafData {
            vsub: s
                .tree()
                .vertices()
                .map(|v| Subspace::zero(s.vdim(v), s.field()))
                .collect(),
            esub: s
                .tree()
                .edges()
                .map(|e| Subspace::zero(s.edim(e), s.field()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vsub.iter().all(Subspace::is_zero) && self.esub.iter().all(Subspace::is_zero)
    }

    /// Restriction-closure check: γ_{v,e}(sub_v) ⊆ sub_e for all v < e.
    pub fn validate_closed(&self, s: &Sheaf) -> Result<(), SheafError> {
        for e in s.tree().edges() {
            let (x, y) = s.tree().endpoints(e)?;
            for v in [x, y] {
                let sub_v = &self.vsub[v];
                for i in 0..sub_v.dim() {
                    let image = s.gamma(v, e).apply(&sub_v.basis_vector(i));
                    if !self.esub[e].contains(&image) {
                        return Err(SheafError::NotASubsheaf { vertex: v, edge: e });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Realize a restriction-closed family of subspaces as an abstract sheaf
/// together with its inclusion. `vbasis`/`ebasis` give the chosen basis
/// rows per cell (need not be in rref; rows must be independent and span
/// a closed family).
pub fn sheaf_from_bases(
    s: &Sheaf,
    vbasis: Vec<Matrix>,
    ebasis: Vec<Matrix>,
) -> Result<(Sheaf, SheafMap), SheafError> {
    let tree = s.tree().clone();
    let field = s.field();
    let vdim: Vec<usize> = vbasis.iter().map(Matrix::rows).collect();
    let edim: Vec<usize> = ebasis.iter().map(Matrix::rows).collect();
    let mut gamma = BTreeMap::new();
    for e in tree.edges() {
        let (x, y) = tree.endpoints(e)?;
        for v in [x, y] {
            // incl_e ∘ γ' = γ ∘ incl_v, solved columnwise
            let rhs = s.gamma(v, e).mul(&vbasis[v].transpose());
            let g = ebasis[e]
                .transpose()
                .solve_matrix(&rhs)
                .ok_or(SheafError::NotASubsheaf { vertex: v, edge: e })?;
            gamma.insert((v, e), g);
        }
    }
    let sub = Sheaf::new(tree.clone(), field, vdim, edim, gamma)?;
    let incl = SheafMap {
        f_v: vbasis.iter().map(Matrix::transpose).collect(),
        f_e: ebasis.iter().map(Matrix::transpose).collect(),
    };
    incl.validate(&sub, s)?;
    Ok((sub, incl))
}

/// Realize a [`SubsheafData`] with its canonical rref bases.
pub fn subsheaf_inclusion(
    s: &Sheaf,
    sub: &SubsheafData,
) -> Result<(Sheaf, SheafMap), SheafError> {
    sub.validate_closed(s)?;
    sheaf_from_bases(
        s,
        sub.vsub.iter().map(|u| u.basis().clone()).collect(),
        sub.esub.iter().map(|u| u.basis().clone()).collect(),
    )
}

/// A quotient sheaf with its projection and a chosen linear section.
#[derive(Debug, Clone)]
pub struct QuotientSheaf {
    pub sheaf: Sheaf,
    pub proj: SheafMap,
    pub section: SheafMap,
}

/// Quotient of `s` by a restriction-closed subsheaf: stalks S_c/sub_c
/// with the induced restrictions. The projection is a surjective sheaf
/// map with cellwise kernel equal to `sub`.
pub fn build_quotient(s: &Sheaf, sub: &SubsheafData) -> Result<QuotientSheaf, SheafError> {
    sub.validate_closed(s)?;
    let tree = s.tree().clone();
    let field = s.field();
    let mut vproj = Vec::new();
    let mut vsec = Vec::new();
    for v in tree.vertices() {
        let (p, sec) = quotient_map(s.vdim(v), &sub.vsub[v]).expect("validated ambient");
        vproj.push(p);
        vsec.push(sec);
    }
    let mut eproj = Vec::new();
    let mut esec = Vec::new();
    for e in tree.edges() {
        let (p, sec) = quotient_map(s.edim(e), &sub.esub[e]).expect("validated ambient");
        eproj.push(p);
        esec.push(sec);
    }
    let vdim: Vec<usize> = vproj.iter().map(Matrix::rows).collect();
    let edim: Vec<usize> = eproj.iter().map(Matrix::rows).collect();
    let mut gamma = BTreeMap::new();
    for e in tree.edges() {
        let (x, y) = tree.endpoints(e)?;
        for v in [x, y] {
            let g = eproj[e].mul(&s.gamma(v, e).mul(&vsec[v]));
            gamma.insert((v, e), g);
        }
    }
    let q = Sheaf::new(tree, field, vdim, edim, gamma)?;
    let proj = SheafMap {
        f_v: vproj,
        f_e: eproj,
    };
    proj.validate(s, &q)?;
    let section = SheafMap {
        f_v: vsec,
        f_e: esec,
    };
    Ok(QuotientSheaf {
        sheaf: q,
        proj,
        section,
    })
}

/// A short exact sequence of sheaves A ↪ B ↠ C on a common tree.
#[derive(Debug, Clone)]
pub struct ShortExactSeq {
    pub a: Sheaf,
    pub b: Sheaf,
    pub c: Sheaf,
    pub inclusion: SheafMap,
    pub projection: SheafMap,
}

impl ShortExactSeq {
    /// Validates the maps and cellwise exactness: inclusion injective,
    /// projection surjective, image = kernel in the middle.
    pub fn new(
        a: Sheaf,
        b: Sheaf,
        c: Sheaf,
        inclusion: SheafMap,
        projection: SheafMap,
    ) -> Result<ShortExactSeq, SheafError> {
        inclusion.validate(&a, &b)?;
        projection.validate(&b, &c)?;
        let tree = b.tree().clone();
        let check = |label: String,
                     incl: &Matrix,
                     proj: &Matrix,
                     da: usize,
                     db: usize,
                     dc: usize|
         -> Result<(), SheafError> {
            if incl.rank() != da {
                return Err(SheafError::InvalidSES(format!("{label}: inclusion not injective")));
            }
            if proj.rank() != dc {
                return Err(SheafError::InvalidSES(format!(
                    "{label}: projection not surjective"
                )));
            }
            if !proj.mul(incl).is_zero() || da + dc != db {
                return Err(SheafError::InvalidSES(format!("{label}: image != kernel")));
            }
            Ok(())
        };
        for v in tree.vertices() {
            check(
                format!("vertex {v}"),
                &inclusion.f_v[v],
                &projection.f_v[v],
                a.vdim(v),
                b.vdim(v),
                c.vdim(v),
            )?;
        }
        for e in tree.edges() {
            check(
                format!("edge {e}"),
                &inclusion.f_e[e],
                &projection.f_e[e],
                a.edim(e),
                b.edim(e),
                c.edim(e),
            )?;
        }
        Ok(ShortExactSeq {
            a,
            b,
            c,
            inclusion,
            projection,
        })
    }
}

/// The six maps of the cohomology long exact sequence, with exactness
/// bookkeeping at every node.
#[derive(Debug, Clone)]
pub struct LesReport {
    /// Connecting map H⁰(C) → H¹(A).
    pub delta: Matrix,
    pub h0_incl: Matrix,
    pub h0_proj: Matrix,
    pub h1_incl: Matrix,
    pub h1_proj_map: Matrix,
    pub dims: [usize; 6],
    pub exact_at: [bool; 6],
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.exact_at.iter().all(|&b| b)
    }
}

/// Compute the connecting map by lift–coboundary–restrict and assemble
/// the full 6-term sequence 0 → H⁰A → H⁰B → H⁰C → H¹A → H¹B → H¹C → 0.
pub fn les_connecting(ses: &ShortExactSeq) -> Result<LesReport, SheafError> {
    let field = ses.b.field();
    let ca = ses.a.cohomology();
    let cb = ses.b.cohomology();
    let cc = ses.c.cohomology();

    let incl_v = ses.inclusion.vertex_block(field);
    let incl_e = ses.inclusion.edge_block(field);
    let proj_v = ses.projection.vertex_block(field);
    let proj_e = ses.projection.edge_block(field);

    // H⁰A → H⁰B: push each basis vector and express it in the H⁰B basis.
    let express = |target: &Subspace, vectors: Vec<Vec<crate::field::Scalar>>, label: &str| {
        let mut m = Matrix::zero(target.dim(), vectors.len(), field);
        for (c, v) in vectors.iter().enumerate() {
            let coords = target.coords(v).ok_or_else(|| {
                SheafError::InvalidSES(format!("induced map escapes cohomology at {label}"))
            })?;
            for (r, s) in coords.into_iter().enumerate() {
                m.set(r, c, s);
            }
        }
        Ok::<Matrix, SheafError>(m)
    };

    let h0a_vectors: Vec<_> = (0..ca.h0.dim())
        .map(|i| incl_v.apply(&ca.h0.basis_vector(i)))
        .collect();
    let h0_incl = express(&cb.h0, h0a_vectors, "H0(B)")?;

    let h0b_vectors: Vec<_> = (0..cb.h0.dim())
        .map(|i| proj_v.apply(&cb.h0.basis_vector(i)))
        .collect();
    let h0_proj = express(&cc.h0, h0b_vectors, "H0(C)")?;

    // delta: lift h ∈ H⁰(C) through the projection to a vertex cochain of
    // B, apply ∂_B, pull the resulting edge cochain back through the
    // inclusion into A, and project to H¹(A) representatives.
    let mut delta = Matrix::zero(ca.h1_dim, cc.h0_dim, field);
    for c in 0..cc.h0.dim() {
        let h = cc.h0.basis_vector(c);
        let lift = proj_v
            .solve(&h)
            .ok_or_else(|| SheafError::InvalidSES("projection not surjective on cochains".into()))?;
        let eb = cb.coboundary.apply(&lift);
        let back = incl_e
            .solve(&eb)
            .ok_or_else(|| SheafError::InvalidSES("coboundary escapes the inclusion image".into()))?;
        let h1a = ca.h1_proj.apply(&back);
        for (r, s) in h1a.into_iter().enumerate() {
            delta.set(r, c, s);
        }
    }

    // H¹A → H¹B and H¹B → H¹C via chosen representatives.
    let h1_incl = cb.h1_proj.mul(&incl_e.mul(&ca.h1_section));
    let h1_proj_map = cc.h1_proj.mul(&proj_e.mul(&cb.h1_section));

    let dims = [ca.h0_dim, cb.h0_dim, cc.h0_dim, ca.h1_dim, cb.h1_dim, cc.h1_dim];
    let exact_node = |prev: Option<&Matrix>, dim: usize, next: Option<&Matrix>| -> bool {
        let rank_prev = prev.map_or(0, Matrix::rank);
        let rank_next = next.map_or(0, Matrix::rank);
        let composed_zero = match (prev, next) {
            (Some(p), Some(n)) => n.mul(p).is_zero(),
            _ => true,
        };
        composed_zero && rank_prev + rank_next == dim
    };
    let exact_at = [
        // exactness at H⁰A means the first map is injective
        h0_incl.rank() == dims[0],
        exact_node(Some(&h0_incl), dims[1], Some(&h0_proj)),
        exact_node(Some(&h0_proj), dims[2], Some(&delta)),
        exact_node(Some(&delta), dims[3], Some(&h1_incl)),
        exact_node(Some(&h1_incl), dims[4], Some(&h1_proj_map)),
        // exactness at H¹C means the last map is surjective
        h1_proj_map.rank() == dims[5],
    ];

    Ok(LesReport {
        delta,
        h0_incl,
        h0_proj,
        h1_incl,
        h1_proj_map,
        dims,
        exact_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validate_rejects_bad_sheaves() {
        let tree = Arc::new(Tree::new(2, vec![(0, 0, 1)]).unwrap());
        let q = FieldSpec::rationals();
        let full = fixtures::fix_edge().sheaf().clone();
        assert_eq!(full.vdim(0), 1);

        let mut gamma = BTreeMap::new();
        gamma.insert((1usize, 0usize), Matrix::identity(1, q));
        let err = Sheaf::new(tree.clone(), q, vec![1, 1], vec![1], gamma).unwrap_err();
        assert_eq!(err, SheafError::MissingRestriction { vertex: 0, edge: 0 });

        let mut gamma = BTreeMap::new();
        gamma.insert((0usize, 0usize), Matrix::zero(2, 1, q));
        gamma.insert((1usize, 0usize), Matrix::identity(1, q));
        let err = Sheaf::new(tree, q, vec![1, 1], vec![1], gamma).unwrap_err();
        assert!(matches!(err, SheafError::ShapeMismatch { vertex: 0, edge: 0, .. }));
    }

    #[test]
    fn coboundary_of_fix_edge() {
        let s = fixtures::fix_edge().sheaf().clone();
        let d = s.coboundary_matrix();
        assert_eq!(d, Matrix::from_i64(1, 2, FieldSpec::rationals(), &[1, -1]));
    }

    #[test]
    fn coboundary_degenerate_shapes() {
        let q = FieldSpec::rationals();
        let single = Arc::new(Tree::new(1, vec![]).unwrap());
        let s = Sheaf::new(single, q, vec![2], vec![], BTreeMap::new()).unwrap();
        let d = s.coboundary_matrix();
        assert_eq!((d.rows(), d.cols()), (0, 2));
        let c = s.cohomology();
        assert_eq!((c.h0_dim, c.h1_dim), (2, 0));

        let star = fixtures::fix_star3_ell().sheaf().clone();
        let d = star.coboundary_matrix();
        assert_eq!((d.rows(), d.cols()), (0, 2));
    }

    #[test]
    fn cohomology_of_fixtures() {
        let c = fixtures::fix_edge().sheaf().cohomology();
        assert_eq!((c.h0_dim, c.h1_dim), (1, 0));
        let q = FieldSpec::rationals();
        assert!(c.h0.contains(&[q.one(), q.one()]));

        let c = fixtures::fix_star3_ell().sheaf().cohomology();
        assert_eq!((c.h0_dim, c.h1_dim), (2, 0));

        let c = fixtures::fix_path3_multi().cohomology();
        assert_eq!((c.h0_dim, c.h1_dim), (0, 1));
    }

    #[test]
    fn euler_check_on_fixtures() {
        assert_eq!(fixtures::fix_edge().sheaf().euler_check(), (1, 1));
        assert_eq!(fixtures::fix_path3_multi().euler_check(), (-1, -1));
        let tree = Arc::new(Tree::new(2, vec![(0, 0, 1)]).unwrap());
        let z = Sheaf::zero(tree, FieldSpec::rationals());
        assert_eq!(z.euler_check(), (0, 0));
    }

    #[test]
    fn quotient_cases() {
        let s = fixtures::fix_edge().sheaf().clone();
        // zero subsheaf: quotient looks like s
        let q0 = build_quotient(&s, &SubsheafData::zero(&s)).unwrap();
        assert_eq!(q0.sheaf.vdims(), s.vdims());
        assert_eq!(q0.sheaf.edims(), s.edims());

        // full subsheaf: quotient is the zero sheaf
        let full = SubsheafData {
            vsub: vec![
                Subspace::full(1, s.field()),
                Subspace::full(1, s.field()),
            ],
            esub: vec![Subspace::full(1, s.field())],
        };
        let qf = build_quotient(&s, &full).unwrap();
        assert_eq!(qf.sheaf.total_vdim() + qf.sheaf.total_edim(), 0);

        // full edge stalk, zero vertex stalks
        let sub = SubsheafData {
            vsub: vec![
                Subspace::zero(1, s.field()),
                Subspace::zero(1, s.field()),
            ],
            esub: vec![Subspace::full(1, s.field())],
        };
        let qe = build_quotient(&s, &sub).unwrap();
        assert_eq!(qe.sheaf.vdims(), &[1, 1]);
        assert_eq!(qe.sheaf.edims(), &[0]);
        assert!(qe.sheaf.gamma(0, 0).is_zero());

        // a non-closed family is rejected
        let bad = SubsheafData {
            vsub: vec![
                Subspace::full(1, s.field()),
                Subspace::zero(1, s.field()),
            ],
            esub: vec![Subspace::zero(1, s.field())],
        };
        assert_eq!(
            build_quotient(&s, &bad).unwrap_err(),
            SheafError::NotASubsheaf { vertex: 0, edge: 0 }
        );
    }

    #[test]
    fn les_with_zero_ends() {
        let s = fixtures::fix_edge().sheaf().clone();
        let zero_sub = SubsheafData::zero(&s);
        let (a, incl) = subsheaf_inclusion(&s, &zero_sub).unwrap();
        let q = build_quotient(&s, &zero_sub).unwrap();
        let ses = ShortExactSeq::new(a, s.clone(), q.sheaf, incl, q.proj).unwrap();
        let report = les_connecting(&ses).unwrap();
        // A = 0: delta vanishes and H⁰B ≅ H⁰C
        assert_eq!(report.delta.rows(), 0);
        assert!(report.is_exact());
        assert!(report.h0_proj.is_invertible());
    }
}
