//! Finite-group representation utilities in exact arithmetic: algebraic
//! induction, hom spaces, isomorphism certificates, commutants,
//! irreducibility testing, and characters.
//!
//! A [`Representation`] may live on a subgroup: it carries the ambient
//! group table plus the sorted element list it is defined on. Dimension
//! zero is first-class and is by convention not irreducible.

use crate::field::{FieldSpec, Scalar};
use crate::group::GroupTable;
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("element list is not a subgroup")]
    NotASubgroup,
    #[error("representation matrices have inconsistent shape at element {0}")]
    BadShape(usize),
    #[error("missing matrix for element {0}")]
    MissingElement(usize),
    #[error("rho(identity) is not the identity matrix")]
    BadIdentity,
    #[error("rho({0})·rho({1}) != rho({0}·{1})")]
    NotHomomorphism(usize, usize),
    #[error("representations live on different groups")]
    GroupMismatch,
}

/// A matrix representation of a subgroup of an ambient finite group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    group: Arc<GroupTable>,
    elements: Vec<usize>,
    field: FieldSpec,
    dim: usize,
    rho: BTreeMap<usize, Matrix>,
}

impl Representation {
    /// Validates the subgroup property, shapes, ρ(1) = I, and the full
    /// homomorphism law over every pair of elements.
    pub fn new(
        group: Arc<GroupTable>,
        elements: Vec<usize>,
        field: FieldSpec,
        dim: usize,
        rho: BTreeMap<usize, Matrix>,
    ) -> Result<Representation, RepError> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        if !group.is_subgroup(&elements) {
            return Err(RepError::NotASubgroup);
        }
        for &g in &elements {
            let m = rho.get(&g).ok_or(RepError::MissingElement(g))?;
            if m.rows() != dim || m.cols() != dim || m.field() != field {
                return Err(RepError::BadShape(g));
            }
        }
        if !rho[&0].is_identity() {
            return Err(RepError::BadIdentity);
        }
        for &g in &elements {
            for &h in &elements {
                if rho[&g].mul(&rho[&h]) != rho[&group.mul(g, h)] {
                    return Err(RepError::NotHomomorphism(g, h));
                }
            }
        }
        Ok(Representation {
            group,
            elements,
            field,
            dim,
            rho,
        })
    }

    /// The trivial representation of `elements` in the given dimension
    /// (identity matrices throughout).
    pub fn trivial(
        group: Arc<GroupTable>,
        elements: Vec<usize>,
        field: FieldSpec,
        dim: usize,
    ) -> Representation {
        let rho = elements
            .iter()
            .map(|&g| (g, Matrix::identity(dim, field)))
            .collect();
        Representation::new(group, elements, field, dim, rho).expect("trivial rep is valid")
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, g: usize) -> &Matrix {
        &self.rho[&g]
    }

    pub fn is_full_group(&self) -> bool {
        self.elements.len() == self.group.order()
    }

    /// Restrict to a smaller subgroup (element list must be a subgroup
    /// contained in this representation's elements).
    pub fn restrict(&self, elements: &[usize]) -> Result<Representation, RepError> {
        if !elements.iter().all(|g| self.elements.contains(g)) {
            return Err(RepError::NotASubgroup);
        }
        let rho = elements.iter().map(|&g| (g, self.rho[&g].clone())).collect();
        Representation::new(
            self.group.clone(),
            elements.to_vec(),
            self.field,
            self.dim,
            rho,
        )
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, RepError> {
        if self.group != other.group || self.elements != other.elements {
            return Err(RepError::GroupMismatch);
        }
        let rho = self
            .elements
            .iter()
            .map(|&g| {
                (
                    g,
                    Matrix::block_diag(self.field, &[&self.rho[&g], &other.rho[&g]]),
                )
            })
            .collect();
        Representation::new(
            self.group.clone(),
            self.elements.clone(),
            self.field,
            self.dim + other.dim,
            rho,
        )
    }

    /// Trace of ρ(g) for each element, in element order. Traces are
    /// constant on conjugacy classes because trace is similarity
    /// invariant.
    pub fn character(&self) -> Vec<(usize, Scalar)> {
        self.elements
            .iter()
            .map(|&g| {
                let m = &self.rho[&g];
                let mut tr = self.field.zero();
                for i in 0..self.dim {
                    tr = self.field.add(&tr, m.at(i, i));
                }
                (g, tr)
            })
            .collect()
    }
}

/// An induced representation cInd_K^G σ: functions f: G → S supported on
/// finitely many left K-cosets with f(gk) = σ(k)⁻¹f(g), acted on by
/// (g·f)(g') = f(g⁻¹g'). The basis is indexed by (coset, basis vector of
/// S) with the transversal chosen least-element-first.
#[derive(Debug, Clone)]
pub struct InducedRep {
    pub base: Representation,
    pub transversal: Vec<usize>,
    pub total: Representation,
}

/// Induce σ from the subgroup K up to the full group.
pub fn induce(
    group: &Arc<GroupTable>,
    k_elements: &[usize],
    sigma: &Representation,
) -> Result<InducedRep, RepError> {
    let all: Vec<usize> = group.elements().collect();
    induce_within(group, &all, k_elements, sigma)
}

/// Induce σ from K up to an intermediate subgroup H (K ≤ H ≤ G). The
/// result is a representation on H's element list.
pub fn induce_within(
    group: &Arc<GroupTable>,
    h_elements: &[usize],
    k_elements: &[usize],
    sigma: &Representation,
) -> Result<InducedRep, RepError> {
    if !group.is_subgroup(h_elements) || !group.is_subgroup(k_elements) {
        return Err(RepError::NotASubgroup);
    }
    if !k_elements.iter().all(|g| h_elements.contains(g)) {
        return Err(RepError::NotASubgroup);
    }
    if sigma.elements() != {
        let mut k = k_elements.to_vec();
        k.sort_unstable();
        k
    } {
        return Err(RepError::NotASubgroup);
    }
    let field = sigma.field();
    let d = sigma.dim();

    // least-element-first transversal of left K-cosets in H
    let mut h_sorted = h_elements.to_vec();
    h_sorted.sort_unstable();
    let mut coset_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut transversal = Vec::new();
    for &g in &h_sorted {
        if coset_index.contains_key(&g) {
            continue;
        }
        let i = transversal.len();
        transversal.push(g);
        for &k in k_elements {
            coset_index.insert(group.mul(g, k), i);
        }
    }
    let m = transversal.len();
    let total_dim = m * d;

    let mut rho = BTreeMap::new();
    for &g in &h_sorted {
        let mut mat = Matrix::zero(total_dim, total_dim, field);
        for (i, &gi) in transversal.iter().enumerate() {
            let target = group.mul(g, gi);
            let j = coset_index[&target];
            let k = group.mul(group.inv(transversal[j]), target);
            debug_assert!(k_elements.contains(&k));
            mat.paste(j * d, i * d, sigma.rho(k));
        }
        rho.insert(g, mat);
    }
    let total = Representation::new(group.clone(), h_sorted, field, total_dim, rho)?;
    Ok(InducedRep {
        base: sigma.clone(),
        transversal,
        total,
    })
}

/// All intertwiners A with ρ₂(g)·A = A·ρ₁(g) for every g, as a subspace
/// of d₂×d₁ matrices flattened row-major.
pub fn hom_space(rho1: &Representation, rho2: &Representation) -> Result<Subspace, RepError> {
    if rho1.group() != rho2.group() || rho1.elements() != rho2.elements() {
        return Err(RepError::GroupMismatch);
    }
    let field = rho1.field();
    let (d1, d2) = (rho1.dim(), rho2.dim());
    let flat = d1 * d2;
    let non_identity: Vec<usize> = rho1.elements().iter().copied().filter(|&g| g != 0).collect();
    if flat == 0 || non_identity.is_empty() {
        return Ok(Subspace::full(flat, field));
    }
    let mut blocks = Vec::with_capacity(non_identity.len());
    for &g in &non_identity {
        let a = rho2.rho(g);
        let b = rho1.rho(g);
        // row (i,j), column (k,l): ρ₂[i][k]·δ_{jl} − δ_{ik}·ρ₁[l][j]
        let block = Matrix::from_fn(flat, flat, field, |rc, cc| {
            let (i, j) = (rc / d1, rc % d1);
            let (k, l) = (cc / d1, cc % d1);
            let mut v = field.zero();
            if j == l {
                v = field.add(&v, a.at(i, k));
            }
            if i == k {
                v = field.sub(&v, b.at(l, j));
            }
            v
        });
        blocks.push(block);
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let stacked = Matrix::vstack(field, flat, &refs);
    Ok(stacked.kernel_basis())
}

pub fn commutant_dim(rho: &Representation) -> usize {
    hom_space(rho, rho).expect("a representation commutes with itself").dim()
}

fn unflatten(flat: &[Scalar], rows: usize, cols: usize, field: FieldSpec) -> Matrix {
    Matrix::from_fn(rows, cols, field, |r, c| flat[r * cols + c].clone())
}

/// Outcome of the intertwiner search.
#[derive(Debug, Clone)]
pub enum IsoResult {
    /// An exact invertible A with ρ₂(g)·A = A·ρ₁(g) for all g.
    Isomorphic(Matrix),
    NotIsomorphic,
    /// The bounded sweep found no invertible hom element although the hom
    /// space is nonzero.
    Inconclusive(String),
}

impl IsoResult {
    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            IsoResult::Isomorphic(a) => Some(a),
            _ => None,
        }
    }
}

/// Coefficient sweeps over a hom-space basis: every single basis element,
/// then every ±1/0 combination of up to three basis elements. Over a
/// small prime field with at most `FULL_ENUM_CAP` hom elements the whole
/// space is enumerated, which makes the answer definitive.
const FULL_ENUM_CAP: u128 = 4096;

fn sweep_combinations(field: FieldSpec, k: usize, mut visit: impl FnMut(&[Scalar]) -> bool) -> bool {
    let one = field.one();
    let neg_one = field.neg(&one);
    let mut coeffs = vec![field.zero(); k];
    // singles
    for i in 0..k {
        for s in [&one, &neg_one] {
            coeffs[i] = s.clone();
            if visit(&coeffs) {
                return true;
            }
        }
        coeffs[i] = field.zero();
    }
    // pairs and triples with ±1 coefficients
    for i in 0..k {
        for j in i + 1..k {
            for si in [&one, &neg_one] {
                for sj in [&one, &neg_one] {
                    coeffs[i] = si.clone();
                    coeffs[j] = sj.clone();
                    if visit(&coeffs) {
                        return true;
                    }
                }
            }
            for l in j + 1..k {
                for si in [&one, &neg_one] {
                    for sj in [&one, &neg_one] {
                        for sl in [&one, &neg_one] {
                            coeffs[i] = si.clone();
                            coeffs[j] = sj.clone();
                            coeffs[l] = sl.clone();
                            if visit(&coeffs) {
                                return true;
                            }
                        }
                    }
                }
                coeffs[l] = field.zero();
            }
            coeffs[j] = field.zero();
        }
        coeffs[i] = field.zero();
    }
    false
}

fn fp_full_enumeration(
    p: u64,
    k: usize,
    mut visit: impl FnMut(&[Scalar]) -> bool,
) -> bool {
    let total = (p as u128).pow(k as u32);
    let mut idx = 1u128; // skip the zero vector
    while idx < total {
        let mut rem = idx;
        let coeffs: Vec<Scalar> = (0..k)
            .map(|_| {
                let c = (rem % p as u128) as u64;
                rem /= p as u128;
                Scalar::Residue(c)
            })
            .collect();
        if visit(&coeffs) {
            return true;
        }
        idx += 1;
    }
    false
}

/// Search for an exact invertible intertwiner between two
/// representations of the same subgroup.
pub fn is_isomorphic(rho1: &Representation, rho2: &Representation) -> Result<IsoResult, RepError> {
    if rho1.group() != rho2.group() || rho1.elements() != rho2.elements() {
        return Err(RepError::GroupMismatch);
    }
    if rho1.dim() != rho2.dim() {
        return Ok(IsoResult::NotIsomorphic);
    }
    let d = rho1.dim();
    if d == 0 {
        return Ok(IsoResult::Isomorphic(Matrix::zero(0, 0, rho1.field())));
    }
    // isomorphic representations have equal traces in every characteristic
    if rho1.character() != rho2.character() {
        return Ok(IsoResult::NotIsomorphic);
    }
    let hom = hom_space(rho1, rho2)?;
    let k = hom.dim();
    if k == 0 {
        return Ok(IsoResult::NotIsomorphic);
    }
    let field = rho1.field();
    let basis: Vec<Matrix> = (0..k)
        .map(|i| unflatten(&hom.basis_vector(i), d, d, field))
        .collect();
    let mut found: Option<Matrix> = None;
    let mut try_coeffs = |coeffs: &[Scalar]| -> bool {
        let mut a = Matrix::zero(d, d, field);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                a = a.add(&basis[i].scale(c));
            }
        }
        if a.is_invertible() {
            found = Some(a);
            true
        } else {
            false
        }
    };
    if sweep_combinations(field, k, &mut try_coeffs) {
        return Ok(IsoResult::Isomorphic(found.unwrap()));
    }
    if let FieldSpec::PrimeField(p) = field {
        if (p as u128).checked_pow(k as u32).is_some_and(|t| t <= FULL_ENUM_CAP) {
            if fp_full_enumeration(p, k, &mut try_coeffs) {
                return Ok(IsoResult::Isomorphic(found.unwrap()));
            }
            // the whole hom space was enumerated: no invertible element exists
            return Ok(IsoResult::NotIsomorphic);
        }
    }
    Ok(IsoResult::Inconclusive(format!(
        "hom space has dimension {k} but the bounded sweep found no invertible element"
    )))
}

/// Outcome of the irreducibility test.
#[derive(Debug, Clone)]
pub enum Irreducibility {
    Yes,
    /// A proper nonzero invariant subspace, verified invariant.
    No(Subspace),
    Inconclusive(String),
}

impl Irreducibility {
    pub fn is_yes(&self) -> bool {
        matches!(self, Irreducibility::Yes)
    }

    pub fn witness(&self) -> Option<&Subspace> {
        match self {
            Irreducibility::No(w) => Some(w),
            _ => None,
        }
    }
}

/// ρ(g)·W ⊆ W for every element, checked exactly.
pub fn is_invariant_subspace(rho: &Representation, w: &Subspace) -> bool {
    w.ambient_dim() == rho.dim()
        && rho.elements().iter().all(|&g| {
            (0..w.dim()).all(|i| w.contains(&rho.rho(g).apply(&w.basis_vector(i))))
        })
}

/// Smallest invariant subspace containing the given vectors.
fn spin(rho: &Representation, seeds: &[Vec<Scalar>]) -> Subspace {
    let mut w = Subspace::from_vectors(rho.dim(), rho.field(), seeds);
    loop {
        let mut grew = false;
        let mut next = w.clone();
        for &g in rho.elements() {
            for i in 0..w.dim() {
                let image = rho.rho(g).apply(&w.basis_vector(i));
                if !next.contains(&image) {
                    next = next
                        .sum(&Subspace::from_vectors(rho.dim(), rho.field(), &[image]))
                        .unwrap();
                    grew = true;
                }
            }
        }
        if !grew {
            return next;
        }
        w = next;
    }
}

/// Deterministic low-entropy generator for group-algebra coefficients.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn algebra_element(rho: &Representation, rng: &mut SplitMix) -> Matrix {
    let field = rho.field();
    let mut theta = Matrix::zero(rho.dim(), rho.dim(), field);
    for &g in rho.elements() {
        let c = rng.below(5) as i64 - 2; // coefficients in -2..=2
        if c != 0 {
            theta = theta.add(&rho.rho(g).scale(&field.from_i64(c)));
        }
    }
    theta
}

/// Scan a commutant element for an exact eigenvalue; its eigenspace is
/// automatically invariant. Over ℚ candidate eigenvalues are the integer
/// roots of the (monic, integral after scaling) characteristic
/// polynomial, which divide the determinant; over a small prime field all
/// residues are tried.
fn eigen_split(rho: &Representation, a: &Matrix) -> Option<Subspace> {
    let d = rho.dim();
    let field = rho.field();
    // skip scalar matrices: their eigenspaces are everything
    let scalar = (0..d).all(|i| a.at(i, i) == a.at(0, 0))
        && (0..d).all(|i| (0..d).all(|j| i == j || a.at(i, j).is_zero()));
    if scalar {
        return None;
    }
    let mut candidates: Vec<Scalar> = Vec::new();
    match field {
        FieldSpec::PrimeField(p) if p <= 4096 => {
            candidates.extend((0..p).map(Scalar::Residue));
        }
        _ => {
            // integer eigenvalue candidates for a rational matrix: clear
            // denominators, then integer roots divide the determinant
            candidates.push(field.zero());
            if let Scalar::Rational(_) = field.zero() {
                let mut denom_lcm = num_bigint::BigInt::from(1);
                for e in a.entries() {
                    if let Scalar::Rational(r) = e {
                        denom_lcm = num_integer::lcm(denom_lcm.clone(), r.denom().clone());
                    }
                }
                let scaled = a.scale(&Scalar::Rational(num_rational::BigRational::from(
                    denom_lcm.clone(),
                )));
                let det = scaled.determinant();
                if let Scalar::Rational(det) = det {
                    let det = det.to_integer();
                    let bound = num_bigint::BigInt::from(1_000_000);
                    if !det.is_zero() && det.clone().abs() <= bound {
                        let mut n = num_bigint::BigInt::from(1);
                        while &n * &n <= det.clone().abs() {
                            if (det.clone() % &n).is_zero() {
                                let m = det.clone() / &n;
                                for cand in [n.clone(), -n.clone(), m.clone(), -m] {
                                    let lam = num_rational::BigRational::new(
                                        cand,
                                        denom_lcm.clone(),
                                    );
                                    candidates.push(Scalar::Rational(lam));
                                }
                            }
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    for lam in candidates {
        let shifted = a.sub(&Matrix::identity(d, field).scale(&lam));
        let kernel = shifted.kernel_basis();
        if kernel.dim() > 0 && kernel.dim() < d {
            debug_assert!(is_invariant_subspace(rho, &kernel));
            return Some(kernel);
        }
    }
    None
}

use num_traits::Signed;
use num_traits::Zero;

/// Decide irreducibility where possible.
///
/// - a found proper nonzero invariant subspace is a definitive "no";
/// - commutant dimension 1 with the group order invertible in the field
///   is a definitive "yes" (Schur plus Maschke);
/// - over a finite field a Norton-style spinning certificate can prove
///   "yes" even in modular characteristic;
/// - anything else is reported inconclusive.
pub fn is_irreducible(rho: &Representation) -> Irreducibility {
    let d = rho.dim();
    let field = rho.field();
    if d == 0 {
        // dimension zero is not irreducible, by convention
        return Irreducibility::No(Subspace::zero(0, field));
    }
    if d == 1 {
        return Irreducibility::Yes;
    }

    // 1. commutant scan: eigenspaces of non-scalar commutant elements are
    //    invariant
    let comm = hom_space(rho, rho).expect("self-hom is defined");
    let basis: Vec<Matrix> = (0..comm.dim())
        .map(|i| unflatten(&comm.basis_vector(i), d, d, field))
        .collect();
    let mut witness: Option<Subspace> = None;
    sweep_combinations(field, comm.dim(), |coeffs| {
        let mut a = Matrix::zero(d, d, field);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                a = a.add(&basis[i].scale(c));
            }
        }
        if let Some(w) = eigen_split(rho, &a) {
            witness = Some(w);
            true
        } else {
            false
        }
    });
    if let Some(w) = witness {
        debug_assert!(is_invariant_subspace(rho, &w));
        return Irreducibility::No(w);
    }

    // 2. spinning kernel vectors of group-algebra elements
    let mut rng = SplitMix(0x5eaf_7ee5);
    let order = rho.elements().len() as u64;
    let mut norton_yes = false;
    for _ in 0..32 {
        let theta = algebra_element(rho, &mut rng);
        let kernel = theta.kernel_basis();
        if kernel.dim() == 0 || kernel.dim() == d {
            continue;
        }
        for i in 0..kernel.dim() {
            let w = spin(rho, &[kernel.basis_vector(i)]);
            if w.dim() < d {
                debug_assert!(is_invariant_subspace(rho, &w));
                return Irreducibility::No(w);
            }
        }
        // Norton certificate over a finite field: every nonzero kernel
        // vector of theta spins to the full space, and some nonzero
        // kernel vector of theta^T spins the transpose module to full.
        if let FieldSpec::PrimeField(p) = field {
            let count = (p as u128).checked_pow(kernel.dim() as u32);
            if count.is_some_and(|c| c <= FULL_ENUM_CAP) && !norton_yes {
                let transpose_rep = transpose_module(rho);
                let all_spin_full = all_projective_vectors(p, kernel.dim(), |coeffs| {
                    let mut v = vec![field.zero(); d];
                    for (i, c) in coeffs.iter().enumerate() {
                        if !c.is_zero() {
                            let b = kernel.basis_vector(i);
                            for (k, entry) in b.iter().enumerate() {
                                v[k] = field.add(&v[k], &field.mul(c, entry));
                            }
                        }
                    }
                    spin(rho, &[v]).dim() == d
                });
                if all_spin_full {
                    let dual_kernel = theta.transpose().kernel_basis();
                    if dual_kernel.dim() > 0 {
                        let w = spin(&transpose_rep, &[dual_kernel.basis_vector(0)]);
                        if w.dim() == d {
                            norton_yes = true;
                        }
                    }
                }
            }
        }
    }

    // 3. Schur + Maschke: commutant dimension one in coprime
    //    characteristic
    if comm.dim() == 1 && field.is_invertible_integer(order) {
        return Irreducibility::Yes;
    }
    if norton_yes {
        return Irreducibility::Yes;
    }
    if comm.dim() > 1 && field.is_invertible_integer(order) {
        return Irreducibility::Inconclusive(format!(
            "commutant has dimension {}; no invariant subspace found (the representation \
             may be irreducible but not absolutely irreducible)",
            comm.dim()
        ));
    }
    Irreducibility::Inconclusive(
        "modular characteristic and no spinning certificate found".to_string(),
    )
}

/// The transpose module: g acts by ρ(g⁻¹)ᵀ.
fn transpose_module(rho: &Representation) -> Representation {
    let rho_t = rho
        .elements()
        .iter()
        .map(|&g| (g, rho.rho(rho.group().inv(g)).transpose()))
        .collect();
    Representation::new(
        rho.group().clone(),
        rho.elements().to_vec(),
        rho.field(),
        rho.dim(),
        rho_t,
    )
    .expect("transpose module is a representation")
}

fn all_projective_vectors(p: u64, k: usize, mut check: impl FnMut(&[Scalar]) -> bool) -> bool {
    // vectors with first nonzero coordinate normalized to 1
    let total = (p as u128).pow(k as u32);
    let mut idx = 1u128;
    while idx < total {
        let mut rem = idx;
        let coeffs: Vec<Scalar> = (0..k)
            .map(|_| {
                let c = (rem % p as u128) as u64;
                rem /= p as u128;
                Scalar::Residue(c)
            })
            .collect();
        let normalized = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_one());
        if normalized && !check(&coeffs) {
            return false;
        }
        idx += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn c2() -> Arc<GroupTable> {
        Arc::new(GroupTable::cyclic(2))
    }

    fn sign_rep(group: &Arc<GroupTable>) -> Representation {
        // sign character of C2
        let rho = [
            (0usize, Matrix::identity(1, q())),
            (1usize, Matrix::from_i64(1, 1, q(), &[-1])),
        ]
        .into_iter()
        .collect();
        Representation::new(group.clone(), vec![0, 1], q(), 1, rho).unwrap()
    }

    #[test]
    fn induce_from_whole_group_is_identity() {
        let g = c2();
        let sigma = sign_rep(&g);
        let ind = induce(&g, &[0, 1], &sigma).unwrap();
        assert_eq!(ind.transversal, vec![0]);
        assert_eq!(ind.total.dim(), 1);
        assert_eq!(ind.total.rho(1), sigma.rho(1));
    }

    #[test]
    fn induce_trivial_from_identity_gives_regular_rep() {
        let g = c2();
        let triv = Representation::trivial(g.clone(), vec![0], q(), 1);
        let ind = induce(&g, &[0], &triv).unwrap();
        assert_eq!(ind.total.dim(), 2);
        // the non-identity element acts by the swap matrix
        assert_eq!(ind.total.rho(1), &Matrix::from_i64(2, 2, q(), &[0, 1, 1, 0]));
        let chi = ind.total.character();
        assert_eq!(chi[0].1, q().from_i64(2));
        assert_eq!(chi[1].1, q().zero());
    }

    #[test]
    fn hom_space_examples() {
        let g = c2();
        let triv = Representation::trivial(g.clone(), vec![0, 1], q(), 1);
        assert_eq!(hom_space(&triv, &triv).unwrap().dim(), 1);
        let sgn = sign_rep(&g);
        assert_eq!(hom_space(&triv, &sgn).unwrap().dim(), 0);
    }

    #[test]
    fn is_isomorphic_examples() {
        let g = c2();
        let triv = Representation::trivial(g.clone(), vec![0, 1], q(), 1);
        let sgn = sign_rep(&g);
        assert!(matches!(
            is_isomorphic(&triv, &triv).unwrap(),
            IsoResult::Isomorphic(_)
        ));
        assert!(matches!(
            is_isomorphic(&triv, &sgn).unwrap(),
            IsoResult::NotIsomorphic
        ));
        // regular rep in two different bases
        let reg = induce(&g, &[0], &Representation::trivial(g.clone(), vec![0], q(), 1))
            .unwrap()
            .total;
        let diag = {
            let rho = [
                (0usize, Matrix::identity(2, q())),
                (1usize, Matrix::from_i64(2, 2, q(), &[1, 0, 0, -1])),
            ]
            .into_iter()
            .collect();
            Representation::new(g.clone(), vec![0, 1], q(), 2, rho).unwrap()
        };
        match is_isomorphic(&reg, &diag).unwrap() {
            IsoResult::Isomorphic(a) => {
                assert!(a.is_invertible());
                for e in [0, 1] {
                    assert_eq!(diag.rho(e).mul(&a), a.mul(reg.rho(e)));
                }
            }
            other => panic!("expected isomorphism, got {other:?}"),
        }
    }

    #[test]
    fn commutant_examples() {
        let g = c2();
        let triv1 = Representation::trivial(g.clone(), vec![0, 1], q(), 1);
        assert_eq!(commutant_dim(&triv1), 1);
        let triv2 = Representation::trivial(g.clone(), vec![0, 1], q(), 2);
        assert_eq!(commutant_dim(&triv2), 4);
    }

    #[test]
    fn irreducibility_examples() {
        let g = c2();
        // zero representation: not irreducible by convention
        let zero = Representation::trivial(g.clone(), vec![0, 1], q(), 0);
        assert!(matches!(is_irreducible(&zero), Irreducibility::No(_)));
        // two-dimensional identity action: any coordinate line is a witness
        let triv2 = Representation::trivial(g.clone(), vec![0, 1], q(), 2);
        match is_irreducible(&triv2) {
            Irreducibility::No(w) => {
                assert_eq!(w.dim(), 1);
                assert!(is_invariant_subspace(&triv2, &w));
            }
            other => panic!("expected reducible, got {other:?}"),
        }
        let sgn = sign_rep(&g);
        assert!(is_irreducible(&sgn).is_yes());
    }

    #[test]
    fn rotation_rep_of_c3_is_inconclusive_over_q() {
        // irreducible over Q but with commutant Q(ω): the test cannot
        // certify either way and must say so
        let g = Arc::new(GroupTable::cyclic(3));
        let r = Matrix::from_i64(2, 2, q(), &[0, -1, 1, -1]);
        let rho = [
            (0usize, Matrix::identity(2, q())),
            (1usize, r.clone()),
            (2usize, r.mul(&r)),
        ]
        .into_iter()
        .collect();
        let rep = Representation::new(g, vec![0, 1, 2], q(), 2, rho).unwrap();
        assert!(matches!(is_irreducible(&rep), Irreducibility::Inconclusive(_)));
        assert_eq!(commutant_dim(&rep), 2);
    }

    #[test]
    fn modular_regular_rep_of_c2_is_reducible() {
        // over F2 the regular representation of C2 is not semisimple; the
        // diagonal line is the unique proper submodule
        let f2 = FieldSpec::prime_field(2).unwrap();
        let g = c2();
        let rho = [
            (0usize, Matrix::identity(2, f2)),
            (1usize, Matrix::from_i64(2, 2, f2, &[0, 1, 1, 0])),
        ]
        .into_iter()
        .collect();
        let rep = Representation::new(g, vec![0, 1], f2, 2, rho).unwrap();
        match is_irreducible(&rep) {
            Irreducibility::No(w) => {
                assert_eq!(w.dim(), 1);
                assert!(is_invariant_subspace(&rep, &w));
            }
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn character_examples() {
        let g = c2();
        let triv = Representation::trivial(g.clone(), vec![0, 1], q(), 1);
        let chi: Vec<Scalar> = triv.character().into_iter().map(|(_, t)| t).collect();
        assert_eq!(chi, vec![q().one(), q().one()]);
    }

    #[test]
    fn tower_induction_agrees_with_one_step() {
        // 1 <= C2 <= C4: inducing the trivial character in stages matches
        // one-step induction up to isomorphism
        let c4 = Arc::new(GroupTable::cyclic(4));
        let triv = Representation::trivial(c4.clone(), vec![0], q(), 1);
        let h = vec![0usize, 2]; // the index-2 subgroup
        let step1 = induce_within(&c4, &h, &[0], &triv).unwrap();
        let step2 = induce(&c4, &h, &step1.total).unwrap();
        let direct = induce(&c4, &[0], &triv).unwrap();
        assert_eq!(step2.total.dim(), direct.total.dim());
        match is_isomorphic(&direct.total, &step2.total).unwrap() {
            IsoResult::Isomorphic(a) => assert!(a.is_invertible()),
            other => panic!("tower induction mismatch: {other:?}"),
        }
    }
}
