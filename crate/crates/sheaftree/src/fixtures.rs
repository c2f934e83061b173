//! Built-in example instances: the single-edge C₂ sheaf, leaf-permutation
//! stars carrying 2-dimensional stalk representations, a multifacial
//! path, a path whose decomposition needs a quotient step, and a
//! reducible negative example.

use crate::equivariant::EquivariantSheaf;
use crate::field::FieldSpec;
use crate::group::group_from_vertex_permutations;
use crate::matrix::Matrix;
use crate::sheaf::Sheaf;
use crate::tree::Tree;
use std::collections::BTreeMap;
use std::sync::Arc;

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

/// Star with center 0, leaves 1..=n, edge i joining 0 to i+1 (center
/// listed first, so the center is x_e for every edge).
pub fn star_tree(n_leaves: usize) -> Arc<Tree> {
    let edges = (0..n_leaves).map(|i| (i, 0, i + 1)).collect();
    Arc::new(Tree::new(n_leaves + 1, edges).unwrap())
}

/// Extend a generator assignment perm ↦ matrix to the closure, checking
/// consistency (the matrices must satisfy every relation the
/// permutations do).
fn close_assignment(
    n_vertices: usize,
    gens: &[(Vec<usize>, Matrix)],
) -> BTreeMap<Vec<usize>, Matrix> {
    let dim = gens.first().map_or(0, |(_, m)| m.rows());
    let identity: Vec<usize> = (0..n_vertices).collect();
    let mut table = BTreeMap::new();
    table.insert(identity, Matrix::identity(dim, q()));
    loop {
        let mut grew = false;
        let snapshot: Vec<(Vec<usize>, Matrix)> =
            table.iter().map(|(p, m)| (p.clone(), m.clone())).collect();
        for (gp, gm) in gens {
            for (p, m) in &snapshot {
                let comp_perm: Vec<usize> = (0..n_vertices).map(|v| gp[p[v]]).collect();
                let comp_mat = gm.mul(m);
                match table.get(&comp_perm) {
                    Some(existing) => assert_eq!(
                        existing, &comp_mat,
                        "matrix assignment is inconsistent with the permutation relations"
                    ),
                    None => {
                        table.insert(comp_perm, comp_mat);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return table;
        }
    }
}

/// A star whose center stalk carries a matrix representation and whose
/// leaf and edge stalks are zero. H⁰ is the center stalk with its
/// representation; the whole sheaf is elliptic.
fn star_with_center_rep(n_leaves: usize, gens: &[(Vec<usize>, Matrix)]) -> EquivariantSheaf {
    let tree = star_tree(n_leaves);
    let dim = gens[0].1.rows();
    let perm_gens: Vec<Vec<usize>> = gens.iter().map(|(p, _)| p.clone()).collect();
    let (group, action) = group_from_vertex_permutations(&tree, &perm_gens).unwrap();
    let assignment = close_assignment(tree.n_vertices(), gens);

    let mut vdim = vec![0; tree.n_vertices()];
    vdim[0] = dim;
    let edim = vec![0; tree.n_edges()];
    let mut gamma = BTreeMap::new();
    for e in tree.edges() {
        let (x, y) = tree.endpoints(e).unwrap();
        gamma.insert((x, e), Matrix::zero(0, vdim[x], q()));
        gamma.insert((y, e), Matrix::zero(0, vdim[y], q()));
    }
    let sheaf = Sheaf::new(tree.clone(), q(), vdim, edim, gamma).unwrap();

    let n = group.order();
    let mut eta_v = Vec::with_capacity(n);
    let mut eta_e = Vec::with_capacity(n);
    for g in 0..n {
        let mat = assignment[action.vertex_perm(g)].clone();
        eta_v.push(
            tree.vertices()
                .map(|v| if v == 0 { mat.clone() } else { Matrix::zero(0, 0, q()) })
                .collect(),
        );
        eta_e.push(tree.edges().map(|_| Matrix::zero(0, 0, q())).collect());
    }
    EquivariantSheaf::new(sheaf, Arc::new(group), action, eta_v, eta_e).unwrap()
}

/// FIX-EDGE: one edge, constant sheaf k, C₂ swapping the endpoints.
pub fn fix_edge() -> EquivariantSheaf {
    let tree = Arc::new(Tree::new(2, vec![(0, 0, 1)]).unwrap());
    let (group, action) = group_from_vertex_permutations(&tree, &[vec![1, 0]]).unwrap();
    let one = Matrix::identity(1, q());
    let mut gamma = BTreeMap::new();
    gamma.insert((0, 0), one.clone());
    gamma.insert((1, 0), one.clone());
    let sheaf = Sheaf::new(tree, q(), vec![1, 1], vec![1], gamma).unwrap();
    let eta_v = vec![vec![one.clone(), one.clone()], vec![one.clone(), one.clone()]];
    let eta_e = vec![vec![one.clone()], vec![one]];
    EquivariantSheaf::new(sheaf, Arc::new(group), action, eta_v, eta_e).unwrap()
}

/// FIX-STAR3-ELL: S₃ permutes the three leaves; the center carries the
/// 2-dimensional standard representation (the sum-zero subspace of k³ in
/// the basis e₁−e₂, e₂−e₃); every other stalk is zero.
pub fn fix_star3_ell() -> EquivariantSheaf {
    star_with_center_rep(
        3,
        &[
            (vec![0, 2, 1, 3], Matrix::from_i64(2, 2, q(), &[-1, 1, 0, 1])),
            (vec![0, 1, 3, 2], Matrix::from_i64(2, 2, q(), &[1, 0, 1, -1])),
        ],
    )
}

/// C₃ rotating the three leaves; the center carries the 2-dimensional
/// rotation representation, irreducible over ℚ with commutant ℚ(ω).
pub fn fix_star3_c3() -> EquivariantSheaf {
    star_with_center_rep(3, &[(vec![0, 2, 3, 1], Matrix::from_i64(2, 2, q(), &[0, -1, 1, -1]))])
}

/// D₄ acting on the 4-star (rotation + reflection of the square of
/// leaves); the center carries the 2-dimensional irreducible.
pub fn fix_star4_d4() -> EquivariantSheaf {
    star_with_center_rep(
        4,
        &[
            (vec![0, 2, 3, 4, 1], Matrix::from_i64(2, 2, q(), &[0, -1, 1, 0])),
            (vec![0, 1, 4, 3, 2], Matrix::from_i64(2, 2, q(), &[1, 0, 0, -1])),
        ],
    )
}

/// C₂ swapping the two legs of a 2-star with a constant sheaf. The two
/// edges are deliberately oriented oppositely (center first on one,
/// second on the other) so the swap reverses an orientation and the
/// 1-cochain sign convention becomes observable.
pub fn fix_star2_c2() -> EquivariantSheaf {
    let tree = Arc::new(Tree::new(3, vec![(0, 0, 1), (1, 2, 0)]).unwrap());
    let (group, action) = group_from_vertex_permutations(&tree, &[vec![0, 2, 1]]).unwrap();
    let one = Matrix::identity(1, q());
    let mut gamma = BTreeMap::new();
    for e in tree.edges() {
        let (x, y) = tree.endpoints(e).unwrap();
        gamma.insert((x, e), one.clone());
        gamma.insert((y, e), one.clone());
    }
    let sheaf = Sheaf::new(tree, q(), vec![1, 1, 1], vec![1, 1], gamma).unwrap();
    let eta_v = vec![vec![one.clone(); 3], vec![one.clone(); 3]];
    let eta_e = vec![vec![one.clone(); 2], vec![one; 2]];
    EquivariantSheaf::new(sheaf, Arc::new(group), action, eta_v, eta_e).unwrap()
}

/// FIX-PATH3-MULTI: k at the middle vertex restricting isomorphically to
/// both edges, zero stalks at the ends. No elliptic and no unifacial
/// elements, so H⁰ vanishes.
pub fn fix_path3_multi() -> Sheaf {
    let tree = Arc::new(Tree::new(3, vec![(0, 0, 1), (1, 1, 2)]).unwrap());
    let one = Matrix::identity(1, q());
    let mut gamma = BTreeMap::new();
    gamma.insert((0, 0), Matrix::zero(1, 0, q()));
    gamma.insert((1, 0), one.clone());
    gamma.insert((1, 1), one);
    gamma.insert((2, 1), Matrix::zero(1, 0, q()));
    Sheaf::new(tree, q(), vec![0, 1, 0], vec![1, 1], gamma).unwrap()
}

/// FIX-PATH3-MULTI with the trivial group attached, for exercising the
/// H⁰ = 0 branch of the decomposition end to end.
pub fn fix_path3_multi_trivial() -> EquivariantSheaf {
    EquivariantSheaf::with_trivial_group(fix_path3_multi())
}

/// A path3 sheaf (trivial group) whose unifacial subsheaf has vanishing
/// H⁰, forcing the decomposition through a quotient step before the
/// elliptic branch concludes.
pub fn fix_path3_recursed() -> EquivariantSheaf {
    let tree = Arc::new(Tree::new(3, vec![(0, 0, 1), (1, 1, 2)]).unwrap());
    let mut gamma = BTreeMap::new();
    gamma.insert((0, 0), Matrix::from_i64(2, 1, q(), &[1, 0]));
    gamma.insert((1, 0), Matrix::identity(2, q()));
    gamma.insert((1, 1), Matrix::from_i64(1, 2, q(), &[1, 0]));
    gamma.insert((2, 1), Matrix::identity(1, q()));
    let sheaf = Sheaf::new(tree, q(), vec![1, 2, 1], vec![2, 1], gamma).unwrap();
    EquivariantSheaf::with_trivial_group(sheaf)
}

/// A C₂-symmetric version of the quotient-recursion path: the swap of
/// the path ends reverses an edge orientation, the unifacial quotient
/// step carries a nontrivial stalk involution, and the surviving H⁰ is
/// the trivial character.
pub fn fix_path3_recursed_c2() -> EquivariantSheaf {
    let tree = Arc::new(Tree::new(3, vec![(0, 0, 1), (1, 1, 2)]).unwrap());
    let group = Arc::new(crate::group::GroupTable::cyclic(2));
    let action = crate::group::TreeAction::new(
        vec![vec![0, 1, 2], vec![2, 1, 0]],
        vec![vec![0, 1], vec![1, 0]],
    );
    let leg = Matrix::from_i64(2, 1, q(), &[1, 0]);
    let invol = Matrix::from_i64(2, 2, q(), &[1, 0, 0, -1]);
    let mut gamma = BTreeMap::new();
    gamma.insert((0, 0), leg.clone());
    gamma.insert((1, 0), Matrix::identity(2, q()));
    gamma.insert((1, 1), invol.clone());
    gamma.insert((2, 1), leg);
    let sheaf = Sheaf::new(tree, q(), vec![1, 2, 1], vec![2, 2], gamma).unwrap();
    let one = Matrix::identity(1, q());
    let id2 = Matrix::identity(2, q());
    let eta_v = vec![
        vec![one.clone(), id2.clone(), one.clone()],
        vec![one.clone(), invol, one],
    ];
    let eta_e = vec![vec![id2.clone(), id2.clone()], vec![id2.clone(), id2]];
    EquivariantSheaf::new(sheaf, group, action, eta_v, eta_e).unwrap()
}

/// C₄ acting through its C₂ quotient on a single edge, with stalk maps
/// of full order four: the generator rotates every 2-dimensional stalk
/// by 90° and its square acts by −1 everywhere while fixing the tree
/// pointwise. H⁰ is the rotation representation, induced from the edge
/// stabilizer (the whole group) with a 2-dimensional σ.
pub fn fix_edge_c4() -> EquivariantSheaf {
    let tree = Arc::new(Tree::new(2, vec![(0, 0, 1)]).unwrap());
    let group = Arc::new(crate::group::GroupTable::cyclic(4));
    let action = crate::group::TreeAction::new(
        vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]],
        vec![vec![0]; 4],
    );
    let rot = Matrix::from_i64(2, 2, q(), &[0, -1, 1, 0]);
    let id2 = Matrix::identity(2, q());
    let mut gamma = BTreeMap::new();
    gamma.insert((0, 0), id2.clone());
    gamma.insert((1, 0), id2.clone());
    let sheaf = Sheaf::new(tree, q(), vec![2, 2], vec![2], gamma).unwrap();
    let pow = |k: usize| {
        let mut m = id2.clone();
        for _ in 0..k {
            m = rot.mul(&m);
        }
        m
    };
    let eta_v = (0..4).map(|k| vec![pow(k), pow(k)]).collect();
    let eta_e = (0..4).map(|k| vec![pow(k)]).collect();
    EquivariantSheaf::new(sheaf, group, action, eta_v, eta_e).unwrap()
}

/// Negative example: the single-edge tree with 2-dimensional stalks and
/// the C₂ structure that swaps the two coordinates while crossing. H⁰ is
/// 2-dimensional with two invariant lines, hence reducible.
pub fn fix_edge_reducible() -> EquivariantSheaf {
    let tree = Arc::new(Tree::new(2, vec![(0, 0, 1)]).unwrap());
    let (group, action) = group_from_vertex_permutations(&tree, &[vec![1, 0]]).unwrap();
    let id2 = Matrix::identity(2, q());
    let swap = Matrix::from_i64(2, 2, q(), &[0, 1, 1, 0]);
    let mut gamma = BTreeMap::new();
    gamma.insert((0, 0), id2.clone());
    gamma.insert((1, 0), id2.clone());
    let sheaf = Sheaf::new(tree, q(), vec![2, 2], vec![2], gamma).unwrap();
    let eta_v = vec![vec![id2.clone(), id2.clone()], vec![swap.clone(), swap.clone()]];
    let eta_e = vec![vec![id2], vec![swap]];
    EquivariantSheaf::new(sheaf, Arc::new(group), action, eta_v, eta_e).unwrap()
}
