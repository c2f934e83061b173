//! Equivariant structures η on sheaves, the axioms that tie them to the
//! group action, and the induced representations on H⁰ and H¹.
//!
//! The action on vertex cochains is (g·s)_v = η_{g,g⁻¹v}(s_{g⁻¹v}). On
//! edge 1-cochains the action carries an extra orientation sign
//! osgn(g,e) = ±1 recording whether g preserves or swaps the ordered
//! endpoints; it is the unique convention under which the coboundary
//! intertwines the two actions, and it is asserted at load time rather
//! than assumed.

use crate::field::FieldSpec;
use crate::group::{ActionError, GroupError, GroupTable, Orbit, TreeAction};
use crate::matrix::Matrix;
use crate::rep::Representation;
use crate::sheaf::{build_quotient, sheaf_from_bases, QuotientSheaf, Sheaf, SheafError, SheafMap};
use crate::sheaf::SubsheafData;
use crate::tree::{EdgeId, VertexId};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Vertex(v) => write!(f, "vertex {v}"),
            Cell::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivariantError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error("eta tables have the wrong shape at ({g}, {cell})")]
    EtaShape { g: usize, cell: Cell },
    #[error("eta of the identity is not the identity at {0}")]
    EtaIdentity(Cell),
    #[error("eta composition axiom fails at ({g},{h},{cell})")]
    EtaComposition { g: usize, h: usize, cell: Cell },
    #[error("eta/gamma square fails at (g={g}, v={v}, e={e})")]
    EtaGammaSquare { g: usize, v: VertexId, e: EdgeId },
    #[error("subspace family is not eta-invariant: {0}")]
    NotInvariant(String),
    #[error("coboundary is not equivariant for element {0} (sign convention violated)")]
    EquivarianceBroken(usize),
    #[error(transparent)]
    Rep(#[from] crate::rep::RepError),
}

/// A sheaf with a validated G-equivariant structure.
#[derive(Debug, Clone)]
pub struct EquivariantSheaf {
    sheaf: Sheaf,
    group: Arc<GroupTable>,
    action: TreeAction,
    /// eta_v[g][v]: stalk at v → stalk at g·v.
    eta_v: Vec<Vec<Matrix>>,
    eta_e: Vec<Vec<Matrix>>,
}

impl EquivariantSheaf {
    /// Validates the action and all three axiom families exhaustively
    /// over every (g, h, cell).
    pub fn new(
        sheaf: Sheaf,
        group: Arc<GroupTable>,
        action: TreeAction,
        eta_v: Vec<Vec<Matrix>>,
        eta_e: Vec<Vec<Matrix>>,
    ) -> Result<EquivariantSheaf, EquivariantError> {
        let tree = sheaf.tree().clone();
        action.validate(&group, &tree)?;
        let n = group.order();
        if eta_v.len() != n || eta_e.len() != n {
            return Err(EquivariantError::EtaShape {
                g: 0,
                cell: Cell::Vertex(0),
            });
        }
        for g in 0..n {
            if eta_v[g].len() != tree.n_vertices() || eta_e[g].len() != tree.n_edges() {
                return Err(EquivariantError::EtaShape {
                    g,
                    cell: Cell::Vertex(0),
                });
            }
            for v in tree.vertices() {
                let m = &eta_v[g][v];
                if m.rows() != sheaf.vdim(action.vertex(g, v))
                    || m.cols() != sheaf.vdim(v)
                    || m.field() != sheaf.field()
                {
                    return Err(EquivariantError::EtaShape {
                        g,
                        cell: Cell::Vertex(v),
                    });
                }
            }
            for e in tree.edges() {
                let m = &eta_e[g][e];
                if m.rows() != sheaf.edim(action.edge(g, e))
                    || m.cols() != sheaf.edim(e)
                    || m.field() != sheaf.field()
                {
                    return Err(EquivariantError::EtaShape {
                        g,
                        cell: Cell::Edge(e),
                    });
                }
            }
        }
        for v in tree.vertices() {
            if !eta_v[0][v].is_identity() {
                return Err(EquivariantError::EtaIdentity(Cell::Vertex(v)));
            }
        }
        for e in tree.edges() {
            if !eta_e[0][e].is_identity() {
                return Err(EquivariantError::EtaIdentity(Cell::Edge(e)));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for v in tree.vertices() {
                    let hv = action.vertex(h, v);
                    if eta_v[g][hv].mul(&eta_v[h][v]) != eta_v[gh][v] {
                        return Err(EquivariantError::EtaComposition {
                            g,
                            h,
                            cell: Cell::Vertex(v),
                        });
                    }
                }
                for e in tree.edges() {
                    let he = action.edge(h, e);
                    if eta_e[g][he].mul(&eta_e[h][e]) != eta_e[gh][e] {
                        return Err(EquivariantError::EtaComposition {
                            g,
                            h,
                            cell: Cell::Edge(e),
                        });
                    }
                }
            }
        }
        for g in 0..n {
            for e in tree.edges() {
                let (x, y) = tree.endpoints(e).expect("validated edge");
                for v in [x, y] {
                    let (gv, ge) = (action.vertex(g, v), action.edge(g, e));
                    let lhs = sheaf.gamma(gv, ge).mul(&eta_v[g][v]);
                    let rhs = eta_e[g][e].mul(sheaf.gamma(v, e));
                    if lhs != rhs {
                        return Err(EquivariantError::EtaGammaSquare { g, v, e });
                    }
                }
            }
        }
        Ok(EquivariantSheaf {
            sheaf,
            group,
            action,
            eta_v,
            eta_e,
        })
    }

    /// Equip a sheaf with the trivial group acting trivially.
    pub fn with_trivial_group(sheaf: Sheaf) -> EquivariantSheaf {
        let tree = sheaf.tree().clone();
        let group = Arc::new(GroupTable::trivial());
        let action = TreeAction::new(
            vec![(0..tree.n_vertices()).collect()],
            vec![(0..tree.n_edges()).collect()],
        );
        let eta_v = vec![tree
            .vertices()
            .map(|v| Matrix::identity(sheaf.vdim(v), sheaf.field()))
            .collect()];
        let eta_e = vec![tree
            .edges()
            .map(|e| Matrix::identity(sheaf.edim(e), sheaf.field()))
            .collect()];
        EquivariantSheaf::new(sheaf, group, action, eta_v, eta_e)
            .expect("trivial structure is always valid")
    }

    pub fn sheaf(&self) -> &Sheaf {
        &self.sheaf
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn action(&self) -> &TreeAction {
        &self.action
    }

    pub fn field(&self) -> FieldSpec {
        self.sheaf.field()
    }

    pub fn eta_vertex(&self, g: usize, v: VertexId) -> &Matrix {
        &self.eta_v[g][v]
    }

    pub fn eta_edge(&self, g: usize, e: EdgeId) -> &Matrix {
        &self.eta_e[g][e]
    }

    pub fn vertex_orbits(&self) -> Vec<Orbit> {
        self.action.vertex_orbits(self.sheaf.tree())
    }

    pub fn edge_orbits(&self) -> Vec<Orbit> {
        self.action.edge_orbits(self.sheaf.tree())
    }

    /// Action of g on the total vertex space: block (g·v, v) = η_{g,v}.
    pub fn vertex_cochain_rep(&self, g: usize) -> Matrix {
        let s = &self.sheaf;
        let mut m = Matrix::zero(s.total_vdim(), s.total_vdim(), s.field());
        for v in s.tree().vertices() {
            let gv = self.action.vertex(g, v);
            m.paste(s.vertex_offset(gv), s.vertex_offset(v), &self.eta_v[g][v]);
        }
        m
    }

    /// Action of g on the total edge space: block (g·e, e) =
    /// osgn(g,e)·η_{g,e}. Pass `with_sign = false` only to demonstrate
    /// that dropping the sign breaks coboundary equivariance.
    pub fn edge_cochain_rep(&self, g: usize, with_sign: bool) -> Matrix {
        let s = &self.sheaf;
        let tree = s.tree();
        let mut m = Matrix::zero(s.total_edim(), s.total_edim(), s.field());
        for e in tree.edges() {
            let ge = self.action.edge(g, e);
            let block = if with_sign && self.action.osgn(tree, g, e) < 0 {
                self.eta_e[g][e].neg()
            } else {
                self.eta_e[g][e].clone()
            };
            m.paste(s.edge_offset(ge), s.edge_offset(e), &block);
        }
        m
    }

    /// ∂·ρ⁰(g) = ρ¹(g)·∂ for every group element, exactly.
    pub fn check_coboundary_equivariance(&self, with_sign: bool) -> Result<(), EquivariantError> {
        let d = self.sheaf.coboundary_matrix();
        for g in self.group.elements() {
            let lhs = d.mul(&self.vertex_cochain_rep(g));
            let rhs = self.edge_cochain_rep(g, with_sign).mul(&d);
            if lhs != rhs {
                return Err(EquivariantError::EquivarianceBroken(g));
            }
        }
        Ok(())
    }

    /// The G-representation on H⁰ = Ker ∂, in the canonical kernel basis.
    pub fn rep_on_h0(&self) -> Result<Representation, EquivariantError> {
        let coh = self.sheaf.cohomology();
        let basis_t = coh.h0.basis().transpose();
        let mut rho = BTreeMap::new();
        for g in self.group.elements() {
            let images = self.vertex_cochain_rep(g).mul(&basis_t);
            let coords = basis_t.solve_matrix(&images).ok_or_else(|| {
                EquivariantError::NotInvariant(format!(
                    "h0 basis is not carried into h0 by element {g}"
                ))
            })?;
            rho.insert(g, coords);
        }
        Ok(Representation::new(
            self.group.clone(),
            self.group.elements().collect(),
            self.field(),
            coh.h0_dim,
            rho,
        )?)
    }

    /// The G-representation on H¹ = Cok ∂ via the chosen representatives.
    /// The coboundary-equivariance assertion runs first; a failure means
    /// the sign convention or η data is wrong.
    pub fn rep_on_h1(&self) -> Result<Representation, EquivariantError> {
        self.check_coboundary_equivariance(true)?;
        let coh = self.sheaf.cohomology();
        let mut rho = BTreeMap::new();
        for g in self.group.elements() {
            let m = coh
                .h1_proj
                .mul(&self.edge_cochain_rep(g, true).mul(&coh.h1_section));
            rho.insert(g, m);
        }
        Ok(Representation::new(
            self.group.clone(),
            self.group.elements().collect(),
            self.field(),
            coh.h1_dim,
            rho,
        )?)
    }

    /// Representation of the stabilizer of `v` on an η-invariant subspace
    /// of the stalk, expressed in the rows of `basis`.
    pub fn stabilizer_rep_on_vertex_subspace(
        &self,
        v: VertexId,
        basis: &Matrix,
    ) -> Result<Representation, EquivariantError> {
        let stab = self.action.vertex_stabilizer(v);
        let basis_t = basis.transpose();
        let mut rho = BTreeMap::new();
        for &g in &stab {
            let images = self.eta_v[g][v].mul(&basis_t);
            let coords = basis_t.solve_matrix(&images).ok_or_else(|| {
                EquivariantError::NotInvariant(format!(
                    "stalk subspace at vertex {v} is not preserved by stabilizer element {g}"
                ))
            })?;
            rho.insert(g, coords);
        }
        Ok(Representation::new(
            self.group.clone(),
            stab,
            self.field(),
            basis.rows(),
            rho,
        )?)
    }

    /// Transport the equivariant structure onto a restriction-closed,
    /// η-invariant family of subspaces presented by basis rows per cell.
    /// Returns the abstract equivariant subsheaf and its inclusion.
    pub fn equivariant_subsheaf(
        &self,
        vbasis: Vec<Matrix>,
        ebasis: Vec<Matrix>,
    ) -> Result<(EquivariantSheaf, SheafMap), EquivariantError> {
        let (sub, incl) = sheaf_from_bases(&self.sheaf, vbasis.clone(), ebasis.clone())?;
        let tree = self.sheaf.tree().clone();
        let n = self.group.order();
        let mut sub_eta_v = Vec::with_capacity(n);
        let mut sub_eta_e = Vec::with_capacity(n);
        for g in 0..n {
            let mut per_v = Vec::with_capacity(tree.n_vertices());
            for v in tree.vertices() {
                let gv = self.action.vertex(g, v);
                let images = self.eta_v[g][v].mul(&vbasis[v].transpose());
                let coords = vbasis[gv].transpose().solve_matrix(&images).ok_or_else(|| {
                    EquivariantError::NotInvariant(format!(
                        "eta({g}) carries the subspace at vertex {v} outside the family"
                    ))
                })?;
                per_v.push(coords);
            }
            sub_eta_v.push(per_v);
            let mut per_e = Vec::with_capacity(tree.n_edges());
            for e in tree.edges() {
                let ge = self.action.edge(g, e);
                let images = self.eta_e[g][e].mul(&ebasis[e].transpose());
                let coords = ebasis[ge].transpose().solve_matrix(&images).ok_or_else(|| {
                    EquivariantError::NotInvariant(format!(
                        "eta({g}) carries the subspace at edge {e} outside the family"
                    ))
                })?;
                per_e.push(coords);
            }
            sub_eta_e.push(per_e);
        }
        let es = EquivariantSheaf::new(
            sub,
            self.group.clone(),
            self.action.clone(),
            sub_eta_v,
            sub_eta_e,
        )?;
        Ok((es, incl))
    }

    /// Quotient by a G-invariant, restriction-closed subsheaf, carrying
    /// the equivariant structure along via η^q = proj ∘ η ∘ section.
    pub fn equivariant_quotient(
        &self,
        sub: &SubsheafData,
    ) -> Result<(EquivariantSheaf, QuotientSheaf), EquivariantError> {
        let tree = self.sheaf.tree().clone();
        // the family must be carried into itself by every eta
        for g in self.group.elements() {
            for v in tree.vertices() {
                let gv = self.action.vertex(g, v);
                for i in 0..sub.vsub[v].dim() {
                    let image = self.eta_v[g][v].apply(&sub.vsub[v].basis_vector(i));
                    if !sub.vsub[gv].contains(&image) {
                        return Err(EquivariantError::NotInvariant(format!(
                            "subsheaf at vertex {v} is not preserved by element {g}"
                        )));
                    }
                }
            }
            for e in tree.edges() {
                let ge = self.action.edge(g, e);
                for i in 0..sub.esub[e].dim() {
                    let image = self.eta_e[g][e].apply(&sub.esub[e].basis_vector(i));
                    if !sub.esub[ge].contains(&image) {
                        return Err(EquivariantError::NotInvariant(format!(
                            "subsheaf at edge {e} is not preserved by element {g}"
                        )));
                    }
                }
            }
        }
        let q = build_quotient(&self.sheaf, sub)?;
        let n = self.group.order();
        let mut q_eta_v = Vec::with_capacity(n);
        let mut q_eta_e = Vec::with_capacity(n);
        for g in 0..n {
            q_eta_v.push(
                tree.vertices()
                    .map(|v| {
                        let gv = self.action.vertex(g, v);
                        q.proj.f_v[gv].mul(&self.eta_v[g][v].mul(&q.section.f_v[v]))
                    })
                    .collect(),
            );
            q_eta_e.push(
                tree.edges()
                    .map(|e| {
                        let ge = self.action.edge(g, e);
                        q.proj.f_e[ge].mul(&self.eta_e[g][e].mul(&q.section.f_e[e]))
                    })
                    .collect(),
            );
        }
        let es = EquivariantSheaf::new(
            q.sheaf.clone(),
            self.group.clone(),
            self.action.clone(),
            q_eta_v,
            q_eta_e,
        )?;
        Ok((es, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_validate() {
        fixtures::fix_edge();
        fixtures::fix_star3_ell();
        fixtures::fix_star3_c3();
        fixtures::fix_star4_d4();
        fixtures::fix_edge_reducible();
    }

    #[test]
    fn broken_eta_composition_is_caught() {
        // eta(swap) = 2 at one vertex and 1 at the other: squares to 2 != id
        let es = fixtures::fix_edge();
        let sheaf = es.sheaf().clone();
        let q = sheaf.field();
        let two = Matrix::from_i64(1, 1, q, &[2]);
        let one = Matrix::identity(1, q);
        let eta_v = vec![
            vec![one.clone(), one.clone()],
            vec![two, one.clone()],
        ];
        let eta_e = vec![vec![one.clone()], vec![one]];
        let err = EquivariantSheaf::new(
            sheaf,
            es.group().clone(),
            es.action().clone(),
            eta_v,
            eta_e,
        )
        .unwrap_err();
        assert!(matches!(err, EquivariantError::EtaComposition { .. }));
    }

    #[test]
    fn trivial_group_on_any_sheaf_is_valid() {
        let es = EquivariantSheaf::with_trivial_group(fixtures::fix_path3_multi());
        assert_eq!(es.group().order(), 1);
        es.check_coboundary_equivariance(true).unwrap();
    }

    #[test]
    fn rep_on_h0_of_fix_edge_is_trivial() {
        let es = fixtures::fix_edge();
        let rho = es.rep_on_h0().unwrap();
        assert_eq!(rho.dim(), 1);
        assert!(rho.rho(1).is_identity());
    }

    #[test]
    fn rep_on_h0_of_star3_is_the_standard_rep() {
        let es = fixtures::fix_star3_ell();
        let rho = es.rep_on_h0().unwrap();
        assert_eq!(rho.dim(), 2);
        // character: 2 on the identity, 0 on transpositions, -1 on 3-cycles
        let q = es.field();
        let mut counts = BTreeMap::new();
        for (_, t) in rho.character() {
            *counts.entry(q.render(&t)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.get("2"), Some(&1));
        assert_eq!(counts.get("0"), Some(&3));
        assert_eq!(counts.get("-1"), Some(&2));
    }

    #[test]
    fn rep_on_h1_cases() {
        // H1 of the edge fixture is zero: the empty representation
        let es = fixtures::fix_edge();
        assert_eq!(es.rep_on_h1().unwrap().dim(), 0);

        // path3 with the trivial group: one-dimensional identity action
        let es = EquivariantSheaf::with_trivial_group(fixtures::fix_path3_multi());
        let rho = es.rep_on_h1().unwrap();
        assert_eq!(rho.dim(), 1);
        assert!(rho.rho(0).is_identity());
    }

    #[test]
    fn dropping_the_orientation_sign_breaks_equivariance() {
        // C2 on a 2-star swapping the legs, constant sheaf
        let es = fixtures::fix_star2_c2();
        es.check_coboundary_equivariance(true).unwrap();
        let err = es.check_coboundary_equivariance(false).unwrap_err();
        assert!(matches!(err, EquivariantError::EquivarianceBroken(_)));
    }

    #[test]
    fn h0_subspace_is_setwise_invariant() {
        for es in [fixtures::fix_edge(), fixtures::fix_star3_ell(), fixtures::fix_edge_reducible()] {
            let coh = es.sheaf().cohomology();
            for g in es.group().elements() {
                let rho_g = es.vertex_cochain_rep(g);
                for i in 0..coh.h0.dim() {
                    let image = rho_g.apply(&coh.h0.basis_vector(i));
                    assert!(coh.h0.contains(&image));
                }
            }
        }
    }

    #[test]
    fn orientation_character_of_fix_edge() {
        let es = fixtures::fix_edge();
        let chi = es.action().orientation_character(es.sheaf().tree(), 0);
        assert_eq!(chi, vec![(0, 1), (1, -1)]);
    }

    #[test]
    fn reducible_fixture_has_permutation_h0() {
        let es = fixtures::fix_edge_reducible();
        let rho = es.rep_on_h0().unwrap();
        assert_eq!(rho.dim(), 2);
        let q = es.field();
        // the swap exchanges the two H0 coordinates
        let swap = Matrix::from_fn(2, 2, q, |r, c| {
            if r != c {
                q.one()
            } else {
                q.zero()
            }
        });
        assert_eq!(rho.rho(1), &swap);
    }
}
