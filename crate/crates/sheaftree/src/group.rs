//! Finite groups as explicit multiplication tables, and their actions on
//! trees by vertex/edge permutations.
//!
//! Element 0 is always the identity. Tables are validated exhaustively,
//! associativity included.

use crate::tree::{EdgeId, Tree, VertexId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table has {got} entries, expected {want}")]
    TableLength { want: usize, got: usize },
    #[error("table entry {0} out of range")]
    EntryRange(usize),
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    BadIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group of order zero")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action table for element {0} is not a permutation")]
    NotPermutation(usize),
    #[error("action has wrong number of element tables")]
    WrongLength,
    #[error("identity element does not act as the identity")]
    IdentityActs,
    #[error("action is not a homomorphism at pair ({0},{1})")]
    NotHomomorphism(usize, usize),
    #[error("element {g} breaks incidence on edge {e}")]
    IncidenceBroken { g: usize, e: EdgeId },
}

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl GroupTable {
    /// Validates identity, inverses, closure, and full associativity.
    /// The inverse table is derived from the multiplication table.
    pub fn new(order: usize, mul: Vec<usize>) -> Result<GroupTable, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if mul.len() != order * order {
            return Err(GroupError::TableLength {
                want: order * order,
                got: mul.len(),
            });
        }
        for &x in &mul {
            if x >= order {
                return Err(GroupError::EntryRange(x));
            }
        }
        let at = |g: usize, h: usize| mul[g * order + h];
        for g in 0..order {
            if at(0, g) != g || at(g, 0) != g {
                return Err(GroupError::BadIdentity(g));
            }
        }
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| at(g, h) == 0 && at(h, g) == 0) {
                Some(h) => inv[g] = h,
                None => return Err(GroupError::NoInverse(g)),
            }
        }
        for g in 0..order {
            for h in 0..order {
                for k in 0..order {
                    if at(at(g, h), k) != at(g, at(h, k)) {
                        return Err(GroupError::NotAssociative(g, h, k));
                    }
                }
            }
        }
        Ok(GroupTable { order, mul, inv })
    }

    pub fn trivial() -> GroupTable {
        GroupTable::new(1, vec![0]).unwrap()
    }

    /// Cyclic group of order n.
    pub fn cyclic(n: usize) -> GroupTable {
        let mut mul = vec![0; n * n];
        for g in 0..n {
            for h in 0..n {
                mul[g * n + h] = (g + h) % n;
            }
        }
        GroupTable::new(n, mul).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    /// True when `elements` is closed under product and inverse and
    /// contains the identity. The list may be in any order.
    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        if !elements.contains(&0) {
            return false;
        }
        if elements.iter().any(|&g| g >= self.order) {
            return false;
        }
        elements.iter().all(|&g| {
            elements.contains(&self.inv(g))
                && elements.iter().all(|&h| elements.contains(&self.mul(g, h)))
        })
    }
}

/// Per-element vertex and edge permutations of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeAction {
    vperm: Vec<Vec<usize>>,
    eperm: Vec<Vec<usize>>,
}

impl TreeAction {
    pub fn new(vperm: Vec<Vec<usize>>, eperm: Vec<Vec<usize>>) -> TreeAction {
        TreeAction { vperm, eperm }
    }

    /// Checks permutation well-formedness, the homomorphism law on both
    /// cell kinds, that 0 acts as the identity, and that every element
    /// carries edge endpoints onto edge endpoints.
    pub fn validate(&self, group: &GroupTable, tree: &Tree) -> Result<(), ActionError> {
        let n = group.order();
        if self.vperm.len() != n || self.eperm.len() != n {
            return Err(ActionError::WrongLength);
        }
        let is_perm = |p: &[usize], len: usize| {
            p.len() == len && {
                let mut seen = vec![false; len];
                p.iter().all(|&i| {
                    i < len && !std::mem::replace(&mut seen[i], true)
                })
            }
        };
        for g in 0..n {
            if !is_perm(&self.vperm[g], tree.n_vertices()) || !is_perm(&self.eperm[g], tree.n_edges())
            {
                return Err(ActionError::NotPermutation(g));
            }
        }
        if (0..tree.n_vertices()).any(|v| self.vperm[0][v] != v)
            || (0..tree.n_edges()).any(|e| self.eperm[0][e] != e)
        {
            return Err(ActionError::IdentityActs);
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                let vertices_ok =
                    (0..tree.n_vertices()).all(|v| self.vperm[g][self.vperm[h][v]] == self.vperm[gh][v]);
                let edges_ok =
                    (0..tree.n_edges()).all(|e| self.eperm[g][self.eperm[h][e]] == self.eperm[gh][e]);
                if !vertices_ok || !edges_ok {
                    return Err(ActionError::NotHomomorphism(g, h));
                }
            }
        }
        for g in 0..n {
            for e in tree.edges() {
                let (x, y) = tree.endpoints(e).unwrap();
                let (gx, gy) = (self.vperm[g][x], self.vperm[g][y]);
                let (ix, iy) = tree.endpoints(self.eperm[g][e]).unwrap();
                if (gx, gy) != (ix, iy) && (gx, gy) != (iy, ix) {
                    return Err(ActionError::IncidenceBroken { g, e });
                }
            }
        }
        Ok(())
    }

    pub fn vertex(&self, g: usize, v: VertexId) -> VertexId {
        self.vperm[g][v]
    }

    pub fn edge(&self, g: usize, e: EdgeId) -> EdgeId {
        self.eperm[g][e]
    }

    pub fn vertex_perm(&self, g: usize) -> &[usize] {
        &self.vperm[g]
    }

    pub fn edge_perm(&self, g: usize) -> &[usize] {
        &self.eperm[g]
    }

    fn orbits_of(&self, count: usize, image: impl Fn(usize, usize) -> usize) -> Vec<Orbit> {
        let n = self.vperm.len();
        let mut seen = vec![false; count];
        let mut orbits = Vec::new();
        for c in 0..count {
            if seen[c] {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| image(g, c)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            orbits.push(Orbit {
                representative: c,
                members,
            });
        }
        orbits
    }

    /// Vertex orbits; the representative is the least id of each orbit
    /// and orbits are listed by ascending representative.
    pub fn vertex_orbits(&self, tree: &Tree) -> Vec<Orbit> {
        self.orbits_of(tree.n_vertices(), |g, v| self.vperm[g][v])
    }

    pub fn edge_orbits(&self, tree: &Tree) -> Vec<Orbit> {
        self.orbits_of(tree.n_edges(), |g, e| self.eperm[g][e])
    }

    /// Sorted list of elements fixing the vertex.
    pub fn vertex_stabilizer(&self, v: VertexId) -> Vec<usize> {
        (0..self.vperm.len()).filter(|&g| self.vperm[g][v] == v).collect()
    }

    /// Sorted list of elements fixing the edge setwise.
    pub fn edge_stabilizer(&self, e: EdgeId) -> Vec<usize> {
        (0..self.eperm.len()).filter(|&g| self.eperm[g][e] == e).collect()
    }

    /// Orientation sign of g on edge e: +1 when g carries the first
    /// endpoint of e to the first endpoint of ge, −1 when it swaps the
    /// roles. This is the unique sign making the coboundary equivariant.
    pub fn osgn(&self, tree: &Tree, g: usize, e: EdgeId) -> i8 {
        let (x, _) = tree.endpoints(e).unwrap();
        let (ix, _) = tree.endpoints(self.eperm[g][e]).unwrap();
        if self.vperm[g][x] == ix {
            1
        } else {
            -1
        }
    }

    /// The ±1 character of the edge stabilizer recording whether an
    /// element fixes the endpoints pointwise or swaps them.
    pub fn orientation_character(&self, tree: &Tree, e: EdgeId) -> Vec<(usize, i8)> {
        self.edge_stabilizer(e)
            .into_iter()
            .map(|g| (g, self.osgn(tree, g, e)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Close a set of vertex permutations of `tree` into a permutation group
/// and read off the multiplication table plus the induced tree action.
/// Elements are sorted lexicographically, which puts the identity first.
pub fn group_from_vertex_permutations(
    tree: &Tree,
    generators: &[Vec<usize>],
) -> Result<(GroupTable, TreeAction), ActionError> {
    let nv = tree.n_vertices();
    let identity: Vec<usize> = (0..nv).collect();
    let mut elements = vec![identity];
    loop {
        let mut grew = false;
        let snapshot = elements.clone();
        for gen in generators {
            if gen.len() != nv {
                return Err(ActionError::WrongLength);
            }
            for e in &snapshot {
                let composed: Vec<usize> = (0..nv).map(|v| gen[e[v]]).collect();
                if !elements.contains(&composed) {
                    elements.push(composed);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    elements.sort();

    let index_of = |p: &[usize]| elements.iter().position(|q| q == p).unwrap();
    let n = elements.len();
    let mut mul = vec![0; n * n];
    for (gi, g) in elements.iter().enumerate() {
        for (hi, h) in elements.iter().enumerate() {
            let composed: Vec<usize> = (0..nv).map(|v| g[h[v]]).collect();
            mul[gi * n + hi] = index_of(&composed);
        }
    }
    let group = GroupTable::new(n, mul).expect("closure of permutations is a group");

    // each vertex permutation must also permute edges
    let mut eperm = Vec::with_capacity(n);
    for (gi, g) in elements.iter().enumerate() {
        let mut per_edge = Vec::with_capacity(tree.n_edges());
        for e in tree.edges() {
            let (x, y) = tree.endpoints(e).unwrap();
            let (gx, gy) = (g[x], g[y]);
            let image = tree.edges().find(|&f| {
                let (a, b) = tree.endpoints(f).unwrap();
                (a, b) == (gx, gy) || (a, b) == (gy, gx)
            });
            match image {
                Some(f) => per_edge.push(f),
                None => return Err(ActionError::IncidenceBroken { g: gi, e }),
            }
        }
        eperm.push(per_edge);
    }
    let action = TreeAction::new(elements, eperm);
    action.validate(&group, tree)?;
    Ok((group, action))
}
