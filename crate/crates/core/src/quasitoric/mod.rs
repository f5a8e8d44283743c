//! Dicharacteristic matrices and omnioriented quasitoric descriptors.
//!
//! An [`OmniQT`] is the combinatorial shadow of an omnioriented quasitoric
//! manifold: a finely ordered simple polytope, a dicharacteristic matrix in
//! refined form `(I_n | Λ⋆)`, and a sign `σ(w) = ±1` for every vertex.

pub mod builders;
pub mod sum;

use crate::error::{Error, Result};
use crate::integer::{self, IntMatrix};
use crate::polytope::{inverse_permutation, CombPolytope, HPolytope, Orientation, Sign};

/// An `n × m` integer matrix whose column `j` is the image of the `j`-th
/// coordinate circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharMatrix {
    entries: IntMatrix,
}

impl CharMatrix {
    pub fn new(entries: IntMatrix) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidCharMatrix("matrix must be a nonempty rectangle".into()));
        }
        Ok(CharMatrix { entries })
    }

    /// `(I_n | Λ⋆)` from the refined submatrix `Λ⋆` (`n` rows).
    pub fn from_refined(lambda_star: &[Vec<i64>]) -> Result<Self> {
        let n = lambda_star.len();
        let entries = lambda_star
            .iter()
            .enumerate()
            .map(|(i, row)| (0..n).map(|j| i64::from(i == j)).chain(row.iter().copied()).collect())
            .collect();
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn num_cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    /// The square matrix whose columns are `λ_j` for `j` in `facets`.
    pub fn columns_at(&self, facets: &[usize]) -> IntMatrix {
        self.entries.iter().map(|r| facets.iter().map(|&j| r[j]).collect()).collect()
    }

    pub fn det_at(&self, facets: &[usize]) -> Result<i64> {
        integer::determinant(&self.columns_at(facets))
    }

    pub fn is_refined(&self) -> bool {
        let n = self.dim();
        self.num_cols() >= n && (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == i64::from(i == j)))
    }

    /// Columns `n..m`.
    pub fn lambda_star(&self) -> IntMatrix {
        let n = self.dim();
        self.entries.iter().map(|r| r[n..].to_vec()).collect()
    }

    /// Columns reordered so that new column `j` is old column `order[j]`.
    pub fn permute_columns(&self, order: &[usize]) -> Self {
        CharMatrix { entries: self.entries.iter().map(|r| order.iter().map(|&o| r[o]).collect()).collect() }
    }

    pub fn premultiply(&self, g: &[Vec<i64>]) -> Result<Self> {
        Ok(CharMatrix { entries: integer::mat_mul(g, &self.entries)? })
    }

    pub fn negate_column(&self, j: usize) -> Self {
        let mut entries = self.entries.clone();
        for r in entries.iter_mut() {
            r[j] = -r[j];
        }
        CharMatrix { entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicharReport {
    pub vertices_checked: usize,
    /// Vertices whose columns do not have determinant ±1, with that determinant.
    pub violations: Vec<(Vec<usize>, i64)>,
}

impl DicharReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_dichar(p: &CombPolytope, lambda: &CharMatrix) -> Result<DicharReport> {
    if lambda.dim() != p.dim() || lambda.num_cols() != p.num_facets() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}×{}, polytope has n = {}, m = {}",
            lambda.dim(),
            lambda.num_cols(),
            p.dim(),
            p.num_facets()
        )));
    }
    let mut violations = Vec::new();
    for w in p.vertex_sets() {
        let det = lambda.det_at(w)?;
        if det.abs() != 1 {
            violations.push((w.clone(), det));
        }
    }
    Ok(DicharReport { vertices_checked: p.num_vertices(), violations })
}

fn first_violation(p: &CombPolytope, lambda: &CharMatrix) -> Result<()> {
    match validate_dichar(p, lambda)?.violations.into_iter().next() {
        Some((vertex, det)) => Err(Error::NotUnimodular { vertex, det }),
        None => Ok(()),
    }
}

/// Fine-orders `p` at `v` and brings `lambda` to refined form there. Returns
/// the reordered polytope, the refined matrix and the permutation
/// `order[new] = old`.
pub fn refine(p: &CombPolytope, lambda: &CharMatrix, v: &[usize]) -> Result<(CombPolytope, CharMatrix, Vec<usize>)> {
    first_violation(p, lambda)?;
    let (q, order) = p.fine_order(v)?;
    let permuted = lambda.permute_columns(&order);
    let n = p.dim();
    let corner: Vec<usize> = (0..n).collect();
    let block = permuted.columns_at(&corner);
    let inv = integer::unimodular_inverse(&block)?.ok_or_else(|| Error::NotUnimodular {
        vertex: v.to_vec(),
        det: integer::determinant(&block).unwrap_or(0),
    })?;
    Ok((q, permuted.premultiply(&inv)?, order))
}

/// A basis of `ker(Λ: ℤ^m → ℤ^n)`, as integer vectors of length `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLattice {
    pub basis: IntMatrix,
}

impl KernelLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_saturated(&self) -> Result<bool> {
        integer::is_saturated(&self.basis)
    }
}

/// Kernel basis from the Smith normal form. When the last `m - n`
/// coordinates of the kernel form a unimodular block (always the case for a
/// refined matrix) the basis is normalized so that this block is the identity.
pub fn kernel_lattice(lambda: &CharMatrix) -> Result<KernelLattice> {
    let snf = integer::smith_normal_form(lambda.entries())?;
    let basis = snf.kernel_basis();
    let (n, m) = (lambda.dim(), lambda.num_cols());
    let k = basis.len();
    if k == m - n && k > 0 {
        // bottom[i][j] = coordinate n+i of basis vector j
        let bottom: IntMatrix = (0..k).map(|i| basis.iter().map(|v| v[n + i]).collect()).collect();
        if let Some(inv) = integer::unimodular_inverse(&bottom)? {
            let as_columns: IntMatrix = (0..m).map(|r| basis.iter().map(|v| v[r]).collect()).collect();
            let normalized = integer::mat_mul(&as_columns, &inv)?;
            let basis = (0..k).map(|j| normalized.iter().map(|row| row[j]).collect()).collect();
            return Ok(KernelLattice { basis });
        }
    }
    Ok(KernelLattice { basis })
}

/// `σ(w) = orientation · sign det E_w · det Λ_w` at every vertex of `geometry`.
pub fn signs_geometric(geometry: &HPolytope, lambda: &CharMatrix, orientation: Orientation) -> Result<Vec<Sign>> {
    geometry
        .vertices()
        .iter()
        .map(|v| {
            let edge = geometry.orientation_at_vertex(&v.facets)?;
            let det = lambda.det_at(&v.facets)?;
            if det == 0 {
                return Err(Error::NotUnimodular { vertex: v.facets.clone(), det });
            }
            Ok(orientation * edge * Sign::of_nonzero(det))
        })
        .collect()
}

/// An omnioriented quasitoric descriptor `(P, Λ⋆, σ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniQT {
    polytope: CombPolytope,
    lambda: CharMatrix,
    signs: Vec<Sign>,
    geometry: Option<HPolytope>,
}

impl OmniQT {
    /// Validates every structural invariant; `signs` is aligned with
    /// `polytope.vertex_sets()`.
    pub fn new(polytope: CombPolytope, lambda: CharMatrix, signs: Vec<Sign>, geometry: Option<HPolytope>) -> Result<Self> {
        if !polytope.is_finely_ordered() {
            return Err(Error::NotFinelyOrdered);
        }
        if !lambda.is_refined() {
            return Err(Error::InvalidCharMatrix("matrix is not in refined form".into()));
        }
        first_violation(&polytope, &lambda)?;
        if signs.len() != polytope.num_vertices() {
            return Err(Error::BadParameters(format!("{} signs for {} vertices", signs.len(), polytope.num_vertices())));
        }
        if let Some(g) = &geometry {
            if g.combinatorial() != polytope {
                return Err(Error::InvalidPolytope("geometry does not match the combinatorial polytope".into()));
            }
        }
        Ok(OmniQT { polytope, lambda, signs, geometry })
    }

    /// Descriptor over a finely ordered geometric polytope, with signs from
    /// the determinant rule.
    pub fn from_geometry(geometry: HPolytope, lambda_star: &[Vec<i64>], orientation: Orientation) -> Result<Self> {
        if !geometry.is_finely_ordered() {
            return Err(Error::NotFinelyOrdered);
        }
        let lambda = CharMatrix::from_refined(lambda_star)?;
        let polytope = geometry.combinatorial();
        first_violation(&polytope, &lambda)?;
        let signs = signs_geometric(&geometry, &lambda, orientation)?;
        Self::new(polytope, lambda, signs, Some(geometry))
    }

    pub fn polytope(&self) -> &CombPolytope {
        &self.polytope
    }

    pub fn lambda(&self) -> &CharMatrix {
        &self.lambda
    }

    pub fn lambda_star(&self) -> IntMatrix {
        self.lambda.lambda_star()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn geometry(&self) -> Option<&HPolytope> {
        self.geometry.as_ref()
    }

    pub fn without_geometry(&self) -> Self {
        OmniQT { geometry: None, ..self.clone() }
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn num_facets(&self) -> usize {
        self.polytope.num_facets()
    }

    pub fn num_vertices(&self) -> usize {
        self.polytope.num_vertices()
    }

    pub fn sign_at(&self, w: &[usize]) -> Option<Sign> {
        self.polytope.vertex_index(w).map(|i| self.signs[i])
    }

    pub fn initial_sign(&self) -> Sign {
        self.signs[0]
    }

    pub fn sign_sum(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    pub fn q_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Positive).count()
    }

    pub fn q_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Negative).count()
    }

    /// Orientation of the attached geometry that reproduces the stored signs
    /// under the determinant rule, read off at the initial vertex.
    pub fn geometric_orientation(&self) -> Result<Orientation> {
        let g = self.geometry.as_ref().ok_or(Error::NoGeometry)?;
        let corner = &self.polytope.vertex_sets()[0];
        Ok(self.signs[0] * g.orientation_at_vertex(corner)? * Sign::of_nonzero(self.lambda.det_at(corner)?))
    }

    /// Recomputes the signs from the geometry with the given orientation.
    pub fn signs_geometric(&self, orientation: Orientation) -> Result<Vec<Sign>> {
        let g = self.geometry.as_ref().ok_or(Error::NoGeometry)?;
        signs_geometric(g, &self.lambda, orientation)
    }

    pub fn with_geometric_signs(&self, orientation: Orientation) -> Result<Self> {
        Ok(OmniQT { signs: self.signs_geometric(orientation)?, ..self.clone() })
    }

    pub fn reverse_orientation(&self) -> Self {
        OmniQT { signs: self.signs.iter().map(|&s| -s).collect(), ..self.clone() }
    }

    /// Conjugates the `j`-th facial bundle: negates column `j`, restores the
    /// refined form when `j < n`, and flips `σ(w)` for every vertex `w ∋ j`.
    pub fn conjugate_facet(&self, j: usize) -> Result<Self> {
        let (n, m) = (self.dim(), self.num_facets());
        if j >= m {
            return Err(Error::BadParameters(format!("facet {j} out of range 0..{m}")));
        }
        let mut lambda = self.lambda.negate_column(j);
        if j < n {
            let g: IntMatrix = (0..n).map(|r| (0..n).map(|c| if r != c { 0 } else if r == j { -1 } else { 1 }).collect()).collect();
            lambda = lambda.premultiply(&g)?;
        }
        let signs = self.polytope.vertex_sets().iter().zip(&self.signs).map(|(w, &s)| if w.contains(&j) { -s } else { s }).collect();
        Ok(OmniQT { lambda, signs, ..self.clone() })
    }

    /// Re-fine-orders at `v` and refines the matrix there; signs follow their
    /// vertices.
    pub fn refine_at(&self, v: &[usize]) -> Result<Self> {
        assemble_refined(self.polytope.clone(), self.lambda.clone(), self.signs.clone(), self.geometry.clone(), v)
    }

    /// Product with the facet order of [`CombPolytope::product`] and
    /// `σ(v, w) = σ(v) σ(w)`.
    pub fn product(&self, other: &OmniQT) -> Result<Self> {
        let polytope = self.polytope.product(&other.polytope)?;
        let (n1, n2) = (self.dim(), other.dim());
        let (a, b) = (self.lambda_star(), other.lambda_star());
        let (k1, k2) = (self.num_facets() - n1, other.num_facets() - n2);
        let lambda_star: IntMatrix = (0..n1)
            .map(|i| a[i].iter().copied().chain(std::iter::repeat_n(0, k2)).collect())
            .chain((0..n2).map(|i| std::iter::repeat_n(0, k1).chain(b[i].iter().copied()).collect()))
            .collect();
        let lambda = CharMatrix::from_refined(&lambda_star)?;
        let mut signed: Vec<(Vec<usize>, Sign)> = Vec::with_capacity(polytope.num_vertices());
        let map = |first: bool, f: usize| -> usize {
            match (first, f) {
                (true, f) if f < n1 => f,
                (false, f) if f < n2 => n1 + f,
                (true, f) => n2 + f,
                (false, f) => self.num_facets() + f,
            }
        };
        for (v, &sv) in self.polytope.vertex_sets().iter().zip(&self.signs) {
            for (w, &sw) in other.polytope.vertex_sets().iter().zip(&other.signs) {
                let mut s: Vec<usize> = v.iter().map(|&f| map(true, f)).chain(w.iter().map(|&f| map(false, f))).collect();
                s.sort_unstable();
                signed.push((s, sv * sw));
            }
        }
        signed.sort();
        debug_assert!(signed.iter().map(|(s, _)| s).eq(polytope.vertex_sets().iter()));
        let signs = signed.into_iter().map(|(_, s)| s).collect();
        let geometry = match (&self.geometry, &other.geometry) {
            (Some(g1), Some(g2)) => Some(g1.product(g2)?),
            _ => None,
        };
        Self::new(polytope, lambda, signs, geometry)
    }
}

/// Refines `(p, lambda)` at `v`, carrying signs and geometry along.
pub(crate) fn assemble_refined(
    p: CombPolytope,
    lambda: CharMatrix,
    signs: Vec<Sign>,
    geometry: Option<HPolytope>,
    v: &[usize],
) -> Result<OmniQT> {
    let (q, refined, order) = refine(&p, &lambda, v)?;
    let inverse = inverse_permutation(&order);
    let mut new_signs = vec![Sign::Positive; q.num_vertices()];
    for (w, s) in p.vertex_sets().iter().zip(signs) {
        let mut image: Vec<usize> = w.iter().map(|&f| inverse[f]).collect();
        image.sort_unstable();
        new_signs[q.vertex_index(&image).expect("permuted vertex")] = s;
    }
    let geometry = geometry.map(|g| g.permute_facets(&order));
    OmniQT::new(q, refined, new_signs, geometry)
}
