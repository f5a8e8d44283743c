//! Simple polytopes as ordered arrangements of rational half-spaces, their
//! combinatorial types, fine orderings, products and normal form.
//!
//! Facets are labelled `0..m` internally; a vertex is identified with the
//! sorted list of the `n` facets that meet in it. A polytope is *finely
//! ordered* when `[0, 1, …, n-1]` is a vertex (the initial vertex).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Mul, Neg};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A sign ±1. Used for vertex signs and for orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub enum Sign {
    Negative,
    Positive,
}

/// Orientation of a polytope relative to the standard orientation of its
/// ambient coordinate space.
pub type Orientation = Sign;

impl Sign {
    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn of_nonzero(v: i64) -> Sign {
        if v < 0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.value()
    }
}

impl TryFrom<i64> for Sign {
    type Error = String;
    fn try_from(v: i64) -> std::result::Result<Sign, String> {
        Sign::from_value(v).ok_or_else(|| format!("sign must be 1 or -1, got {v}"))
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+1",
            Sign::Negative => "-1",
        })
    }
}

/// `{x : <normal, x> + offset >= 0}` with inward normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::ZeroNormal(0));
        }
        Ok(HalfSpace { normal, offset })
    }

    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        HalfSpace { normal: normal.iter().map(|&x| rational::int(x)).collect(), offset: rational::int(offset) }
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        rational::dot(&self.normal, x) + &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub facets: Vec<usize>,
    pub point: Vec<Rational>,
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// Feasible basic points of `{x : A x + b >= 0}`: every `n`-subset of
/// half-spaces whose hyperplanes meet in a single point satisfying all
/// inequalities, in lexicographic order of the subsets.
pub fn feasible_basic_points(dim: usize, halfspaces: &[HalfSpace]) -> Vec<(Vec<usize>, Vec<Rational>)> {
    subsets(halfspaces.len(), dim)
        .into_iter()
        .filter_map(|idx| {
            let a: Vec<Vec<Rational>> = idx.iter().map(|&i| halfspaces[i].normal.clone()).collect();
            let b: Vec<Rational> = idx.iter().map(|&i| -halfspaces[i].offset.clone()).collect();
            let x = rational::solve(&a, &b)?;
            halfspaces.iter().all(|h| !h.evaluate(&x).is_negative()).then_some((idx, x))
        })
        .collect()
}

fn recession_cone_is_trivial(dim: usize, halfspaces: &[HalfSpace]) -> bool {
    let a: Vec<Vec<Rational>> = halfspaces.iter().map(|h| h.normal.clone()).collect();
    if rational::rank(&a) < dim {
        return false;
    }
    // A pointed cone {y : A y >= 0} is nonzero iff it has an extreme ray,
    // cut out by n-1 independent tight rows.
    for idx in subsets(a.len(), dim - 1) {
        let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| a[i].clone()).collect();
        let null = if rows.is_empty() {
            rational::identity(dim)
        } else {
            rational::null_space(&rows, dim)
        };
        if null.len() != 1 {
            continue;
        }
        let r = &null[0];
        let values: Vec<Rational> = a.iter().map(|row| rational::dot(row, r)).collect();
        if values.iter().all(|v| !v.is_negative()) || values.iter().all(|v| !v.is_positive()) {
            return false;
        }
    }
    true
}

/// A geometric simple polytope `{x : A_P x + b_P >= 0}` with its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<Vertex>,
}

impl HPolytope {
    /// Enumerates vertices by brute force over all `n`-subsets and checks
    /// simplicity, boundedness and irredundancy.
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("dimension must be positive".into()));
        }
        for (i, h) in halfspaces.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "half-space {i} has a normal of length {}, expected {dim}",
                    h.normal.len()
                )));
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(Error::ZeroNormal(i));
            }
        }
        if halfspaces.len() < dim {
            return Err(Error::DimensionMismatch(format!("{} half-spaces in dimension {dim}", halfspaces.len())));
        }

        let points = feasible_basic_points(dim, &halfspaces);
        if points.is_empty() {
            let a: Vec<Vec<Rational>> = halfspaces.iter().map(|h| h.normal.clone()).collect();
            // without full rank there is a lineality space and no vertex
            return Err(if rational::rank(&a) < dim { Error::Unbounded } else { Error::Empty });
        }
        for (_, x) in &points {
            let tight = halfspaces.iter().filter(|h| h.evaluate(x).is_zero()).count();
            if tight != dim {
                return Err(Error::NotSimple { point: format_point(x), count: tight });
            }
        }
        if !recession_cone_is_trivial(dim, &halfspaces) {
            return Err(Error::Unbounded);
        }
        let mut used = vec![false; halfspaces.len()];
        for (idx, _) in &points {
            for &i in idx {
                used[i] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::Redundant(i));
        }
        let vertices: Vec<Vertex> = points.into_iter().map(|(facets, point)| Vertex { facets, point }).collect();
        if vertices.len() < dim + 1 {
            return Err(Error::InvalidPolytope(format!("only {} vertices", vertices.len())));
        }
        Ok(HPolytope { dim, halfspaces, vertices })
    }

    /// The standard simplex `x_i >= 0`, `1 - Σ x_i >= 0`.
    pub fn simplex(n: usize) -> Self {
        let mut hs: Vec<HalfSpace> = (0..n).map(|i| unit_halfspace(n, i, 1, 0)).collect();
        hs.push(HalfSpace::from_ints(&vec![-1; n], 1));
        Self::from_halfspaces(n, hs).expect("standard simplex is a simple polytope")
    }

    /// The standard cube: `x_i >= 0` for all `i`, then `1 - x_i >= 0`.
    pub fn cube(n: usize) -> Self {
        let hs = (0..n).map(|i| unit_halfspace(n, i, 1, 0)).chain((0..n).map(|i| unit_halfspace(n, i, -1, 1))).collect();
        Self::from_halfspaces(n, hs).expect("standard cube is a simple polytope")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Rows of `A_P`.
    pub fn normals(&self) -> Vec<Vec<Rational>> {
        self.halfspaces.iter().map(|h| h.normal.clone()).collect()
    }

    /// The vector `b_P`.
    pub fn offsets(&self) -> Vec<Rational> {
        self.halfspaces.iter().map(|h| h.offset.clone()).collect()
    }

    pub fn vertex(&self, facets: &[usize]) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.facets == facets)
    }

    pub fn combinatorial(&self) -> CombPolytope {
        CombPolytope {
            dim: self.dim,
            num_facets: self.halfspaces.len(),
            vertex_sets: self.vertices.iter().map(|v| v.facets.clone()).collect(),
        }
    }

    pub fn is_finely_ordered(&self) -> bool {
        self.vertices.first().is_some_and(|v| v.facets.iter().copied().eq(0..self.dim))
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim && self.halfspaces.iter().all(|h| !h.evaluate(x).is_negative())
    }

    /// The affine injection `x ↦ A_P x + b_P` into the positive cone.
    pub fn embed(&self, x: &[Rational]) -> Vec<Rational> {
        self.halfspaces.iter().map(|h| h.evaluate(x)).collect()
    }

    /// Same polytope with the half-spaces listed in the order `order[new] = old`.
    pub fn permute_facets(&self, order: &[usize]) -> Self {
        let inverse = inverse_permutation(order);
        let halfspaces = order.iter().map(|&o| self.halfspaces[o].clone()).collect();
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|v| {
                let mut facets: Vec<usize> = v.facets.iter().map(|&f| inverse[f]).collect();
                facets.sort_unstable();
                Vertex { facets, point: v.point.clone() }
            })
            .collect();
        vertices.sort_by(|a, b| a.facets.cmp(&b.facets));
        HPolytope { dim: self.dim, halfspaces, vertices }
    }

    /// Moves the facets through `vertex` to the front; returns the polytope and
    /// the permutation `order[new] = old`.
    pub fn fine_order(&self, vertex: &[usize]) -> Result<(Self, Vec<usize>)> {
        let order = self.combinatorial().fine_order_permutation(vertex)?;
        Ok((self.permute_facets(&order), order))
    }

    /// Product of two finely ordered polytopes with the block-shifted facet order.
    pub fn product(&self, other: &HPolytope) -> Result<Self> {
        if !self.is_finely_ordered() || !other.is_finely_ordered() {
            return Err(Error::NotFinelyOrdered);
        }
        let (n, n2) = (self.dim, other.dim);
        let dim = n + n2;
        let lift = |h: &HalfSpace, first: bool| {
            let mut normal = vec![Rational::zero(); dim];
            let range = if first { 0..n } else { n..dim };
            for (slot, x) in normal[range].iter_mut().zip(&h.normal) {
                *slot = x.clone();
            }
            HalfSpace { normal, offset: h.offset.clone() }
        };
        let order = product_facet_order(self.num_facets(), n, other.num_facets(), n2);
        let halfspaces: Vec<HalfSpace> = order
            .iter()
            .map(|&(first, i)| if first { lift(&self.halfspaces[i], true) } else { lift(&other.halfspaces[i], false) })
            .collect();
        let map = product_facet_map(self.num_facets(), n, other.num_facets(), n2);
        let mut vertices = Vec::with_capacity(self.num_vertices() * other.num_vertices());
        for v in &self.vertices {
            for w in &other.vertices {
                let mut facets: Vec<usize> = v.facets.iter().map(|&f| map.0[f]).chain(w.facets.iter().map(|&f| map.1[f])).collect();
                facets.sort_unstable();
                let point = v.point.iter().chain(&w.point).cloned().collect();
                vertices.push(Vertex { facets, point });
            }
        }
        vertices.sort_by(|a, b| a.facets.cmp(&b.facets));
        Ok(HPolytope { dim, halfspaces, vertices })
    }

    /// True when the first `n` normals are the standard basis and the first `n`
    /// offsets vanish, i.e. the initial vertex sits at the origin.
    pub fn is_normal_form(&self) -> bool {
        self.is_finely_ordered()
            && self.halfspaces[..self.dim].iter().enumerate().all(|(i, h)| {
                h.offset.is_zero() && h.normal.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    /// Affine change of coordinates sending the initial vertex to the origin
    /// and the first `n` normals to the standard basis. Every row is first
    /// rescaled (by a positive factor) to a primitive integer normal, and rows
    /// beyond `n` are re-normalized the same way afterwards.
    pub fn normal_form(&self) -> Result<Self> {
        Ok(self.normal_form_with_orientation()?.0)
    }

    /// Normal form together with the orientation behaviour of the coordinate
    /// change (`Negative` when it reverses the ambient orientation).
    pub fn normal_form_with_orientation(&self) -> Result<(Self, Orientation)> {
        if !self.is_finely_ordered() {
            return Err(Error::NotFinelyOrdered);
        }
        let n = self.dim;
        let scaled: Vec<HalfSpace> = self.halfspaces.iter().map(primitive_row).collect();
        let corner: Vec<Vec<Rational>> = scaled[..n].iter().map(|h| h.normal.clone()).collect();
        let det = rational::determinant(&corner);
        if det.is_zero() {
            return Err(Error::DegenerateCorner);
        }
        let m_inv = rational::inverse(&corner).ok_or(Error::DegenerateCorner)?;
        let origin = self.vertices[0].point.clone();
        // x = origin + M z with M = corner^{-1}
        let transformed: Vec<HalfSpace> = scaled
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let normal: Vec<Rational> = (0..n).map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &h.normal[k] * &m_inv[k][j])).collect();
                let offset = h.evaluate(&origin);
                let row = HalfSpace { normal, offset };
                if i < n {
                    row
                } else {
                    primitive_row(&row)
                }
            })
            .collect();
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let diff: Vec<Rational> = v.point.iter().zip(&origin).map(|(a, b)| a - b).collect();
                Vertex { facets: v.facets.clone(), point: rational::mat_vec(&corner, &diff) }
            })
            .collect();
        let orientation = if det.is_positive() { Sign::Positive } else { Sign::Negative };
        Ok((HPolytope { dim: n, halfspaces: transformed, vertices }, orientation))
    }

    /// Sign of `det E_w`, where column `k` of `E_w` is the edge leaving `w`
    /// off its `k`-th facet (facets of `w` in increasing order).
    pub fn orientation_at_vertex(&self, w: &[usize]) -> Result<Sign> {
        let comb = self.combinatorial();
        let here = self.vertex(w).ok_or_else(|| Error::NotAVertex(w.to_vec()))?;
        let mut columns = Vec::with_capacity(self.dim);
        for &f in w {
            let nb = comb.neighbor(w, f).ok_or_else(|| Error::InvalidPolytope(format!("no edge leaves {w:?} off facet {f}")))?;
            let there = self.vertex(nb).expect("neighbor is a vertex");
            columns.push(there.point.iter().zip(&here.point).map(|(a, b)| a - b).collect::<Vec<_>>());
        }
        let det = rational::determinant(&rational::transpose(&columns));
        if det.is_zero() {
            return Err(Error::NotSimple { point: format_point(&here.point), count: self.dim + 1 });
        }
        Ok(if det.is_positive() { Sign::Positive } else { Sign::Negative })
    }

    /// Axis-aligned bounding box `(lower, upper)` of the vertex set.
    pub fn bounding_box(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut lo = self.vertices[0].point.clone();
        let mut hi = lo.clone();
        for v in &self.vertices[1..] {
            for (k, x) in v.point.iter().enumerate() {
                if x < &lo[k] {
                    lo[k] = x.clone();
                }
                if x > &hi[k] {
                    hi[k] = x.clone();
                }
            }
        }
        (lo, hi)
    }
}

fn unit_halfspace(n: usize, i: usize, coeff: i64, offset: i64) -> HalfSpace {
    let mut normal = vec![0; n];
    normal[i] = coeff;
    HalfSpace::from_ints(&normal, offset)
}

fn primitive_row(h: &HalfSpace) -> HalfSpace {
    let s = rational::primitive_scale(&h.normal);
    HalfSpace { normal: h.normal.iter().map(|x| x * &s).collect(), offset: &h.offset * &s }
}

fn format_point(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(rational::format_rational).collect();
    format!("({})", parts.join(", "))
}

pub fn inverse_permutation(order: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        inv[old] = new;
    }
    inv
}

/// Facet order of a product: `(true, i)` is facet `i` of the first factor.
fn product_facet_order(m1: usize, n1: usize, m2: usize, n2: usize) -> Vec<(bool, usize)> {
    (0..n1)
        .map(|i| (true, i))
        .chain((0..n2).map(|j| (false, j)))
        .chain((n1..m1).map(|i| (true, i)))
        .chain((n2..m2).map(|j| (false, j)))
        .collect()
}

/// Old-to-new facet maps for the two factors of a product.
fn product_facet_map(m1: usize, n1: usize, m2: usize, n2: usize) -> (Vec<usize>, Vec<usize>) {
    let mut first = vec![0; m1];
    let mut second = vec![0; m2];
    for (new, (is_first, old)) in product_facet_order(m1, n1, m2, n2).into_iter().enumerate() {
        if is_first {
            first[old] = new;
        } else {
            second[old] = new;
        }
    }
    (first, second)
}

/// A combinatorial simple polytope: its vertices as sorted `n`-subsets of
/// facets, listed lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombPolytope {
    dim: usize,
    num_facets: usize,
    vertex_sets: Vec<Vec<usize>>,
}

impl CombPolytope {
    pub fn new(dim: usize, num_facets: usize, mut vertex_sets: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be positive".into()));
        }
        for v in vertex_sets.iter_mut() {
            v.sort_unstable();
            if v.len() != dim {
                return Err(Error::InvalidPolytope(format!("vertex {v:?} does not have {dim} facets")));
            }
            if v.windows(2).any(|w| w[0] == w[1]) || v.iter().any(|&f| f >= num_facets) {
                return Err(Error::InvalidPolytope(format!("vertex {v:?} has repeated or out-of-range facets")));
            }
        }
        vertex_sets.sort();
        if vertex_sets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPolytope("duplicate vertex".into()));
        }
        if vertex_sets.len() < dim + 1 || num_facets < dim + 1 {
            return Err(Error::InvalidPolytope("too few vertices or facets".into()));
        }
        let p = CombPolytope { dim, num_facets, vertex_sets };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = vec![false; self.num_facets];
        for v in &self.vertex_sets {
            for &f in v {
                seen[f] = true;
            }
        }
        if let Some(f) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPolytope(format!("facet {f} contains no vertex")));
        }
        // each edge has exactly two endpoints
        for v in &self.vertex_sets {
            for &f in v {
                let count = self.vertex_sets.iter().filter(|w| *w != v && v.iter().filter(|&&g| g != f).all(|g| w.contains(g))).count();
                if count != 1 {
                    return Err(Error::InvalidPolytope(format!("edge of {v:?} off facet {f} has {count} other endpoints")));
                }
            }
        }
        // every face F_I is cut out by exactly the facets in I
        for v in &self.vertex_sets {
            for mask in 1u32..(1 << self.dim) - 1 {
                let face: Vec<usize> = (0..self.dim).filter(|b| mask & (1 << b) != 0).map(|b| v[b]).collect();
                let mut meet: Option<BTreeSet<usize>> = None;
                for w in self.vertex_sets.iter().filter(|w| face.iter().all(|f| w.contains(f))) {
                    let ws: BTreeSet<usize> = w.iter().copied().collect();
                    meet = Some(match meet {
                        None => ws,
                        Some(m) => m.intersection(&ws).copied().collect(),
                    });
                }
                let meet: Vec<usize> = meet.expect("face contains v").into_iter().collect();
                if meet != face {
                    return Err(Error::InvalidPolytope(format!("face {face:?} is contained in facets {meet:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.num_facets
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_sets.len()
    }

    pub fn vertex_sets(&self) -> &[Vec<usize>] {
        &self.vertex_sets
    }

    pub fn vertex_index(&self, v: &[usize]) -> Option<usize> {
        self.vertex_sets.binary_search_by(|w| w.as_slice().cmp(v)).ok()
    }

    pub fn is_vertex(&self, v: &[usize]) -> bool {
        self.vertex_index(v).is_some()
    }

    pub fn is_finely_ordered(&self) -> bool {
        self.vertex_sets[0].iter().copied().eq(0..self.dim)
    }

    /// True when the facets in `face` (sorted) meet in a nonempty face.
    pub fn is_face(&self, face: &[usize]) -> bool {
        self.vertex_sets.iter().any(|w| face.iter().all(|f| w.contains(f)))
    }

    /// The vertex across the edge that leaves `w` off facet `facet`.
    pub fn neighbor(&self, w: &[usize], facet: usize) -> Option<&[usize]> {
        self.vertex_sets
            .iter()
            .find(|x| x.as_slice() != w && !x.contains(&facet) && w.iter().filter(|&&g| g != facet).all(|g| x.contains(g)))
            .map(Vec::as_slice)
    }

    /// Faces ranked by codimension `0..=n`, lexicographic within each rank.
    pub fn face_poset(&self) -> Vec<Vec<Vec<usize>>> {
        let mut ranks: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); self.dim + 1];
        for v in &self.vertex_sets {
            for mask in 0u32..(1 << self.dim) {
                let face: Vec<usize> = (0..self.dim).filter(|b| mask & (1 << b) != 0).map(|b| v[b]).collect();
                ranks[face.len()].insert(face);
            }
        }
        ranks.into_iter().map(|r| r.into_iter().collect()).collect()
    }

    /// Index sets not contained in any vertex, all of whose proper subsets are faces.
    pub fn minimal_non_faces(&self) -> Vec<Vec<usize>> {
        let poset = self.face_poset();
        let mut out = Vec::new();
        for k in 2..=self.dim + 1 {
            let smaller: BTreeSet<&Vec<usize>> = poset[k - 1].iter().collect();
            let mut candidates = BTreeSet::new();
            for f in &poset[k - 1] {
                for extra in f.last().map_or(0, |&l| l + 1)..self.num_facets {
                    let mut c = f.clone();
                    c.push(extra);
                    candidates.insert(c);
                }
            }
            for c in candidates {
                if k <= self.dim && poset[k].binary_search(&c).is_ok() {
                    continue;
                }
                let all_faces = (0..k).all(|skip| {
                    let sub: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                    smaller.contains(&sub)
                });
                if all_faces {
                    out.push(c);
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Permutation `order[new] = old` moving the facets of `vertex` to the front.
    pub fn fine_order_permutation(&self, vertex: &[usize]) -> Result<Vec<usize>> {
        let mut v = vertex.to_vec();
        v.sort_unstable();
        if !self.is_vertex(&v) {
            return Err(Error::NotAVertex(vertex.to_vec()));
        }
        Ok(v.iter().copied().chain((0..self.num_facets).filter(|f| !v.contains(f))).collect())
    }

    pub fn permute_facets(&self, order: &[usize]) -> Self {
        let inverse = inverse_permutation(order);
        let mut vertex_sets: Vec<Vec<usize>> = self
            .vertex_sets
            .iter()
            .map(|v| {
                let mut w: Vec<usize> = v.iter().map(|&f| inverse[f]).collect();
                w.sort_unstable();
                w
            })
            .collect();
        vertex_sets.sort();
        CombPolytope { dim: self.dim, num_facets: self.num_facets, vertex_sets }
    }

    pub fn fine_order(&self, vertex: &[usize]) -> Result<(Self, Vec<usize>)> {
        let order = self.fine_order_permutation(vertex)?;
        Ok((self.permute_facets(&order), order))
    }

    pub fn product(&self, other: &CombPolytope) -> Result<Self> {
        if !self.is_finely_ordered() || !other.is_finely_ordered() {
            return Err(Error::NotFinelyOrdered);
        }
        let map = product_facet_map(self.num_facets, self.dim, other.num_facets, other.dim);
        let mut vertex_sets = Vec::with_capacity(self.num_vertices() * other.num_vertices());
        for v in &self.vertex_sets {
            for w in &other.vertex_sets {
                let mut s: Vec<usize> = v.iter().map(|&f| map.0[f]).chain(w.iter().map(|&f| map.1[f])).collect();
                s.sort_unstable();
                vertex_sets.push(s);
            }
        }
        vertex_sets.sort();
        Ok(CombPolytope { dim: self.dim + other.dim, num_facets: self.num_facets + other.num_facets, vertex_sets })
    }

    /// Number of faces of each dimension `0..n` (vertices first).
    pub fn f_vector(&self) -> Vec<usize> {
        let poset = self.face_poset();
        (0..self.dim).map(|d| poset[self.dim - d].len()).collect()
    }

    /// Facets of a polygon in cyclic order, starting from facet 0.
    pub fn polygon_cycle(&self) -> Result<Vec<usize>> {
        if self.dim != 2 {
            return Err(Error::WrongDimension { expected: 2, found: self.dim });
        }
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in &self.vertex_sets {
            adjacency.entry(v[0]).or_default().push(v[1]);
            adjacency.entry(v[1]).or_default().push(v[0]);
        }
        let mut cycle = vec![0];
        let mut prev = usize::MAX;
        let mut cur = 0;
        loop {
            let next = *adjacency[&cur].iter().find(|&&x| x != prev).ok_or_else(|| Error::InvalidPolytope("broken polygon".into()))?;
            if next == 0 {
                break;
            }
            if cycle.len() > self.num_facets {
                return Err(Error::InvalidPolytope("polygon facets do not form a cycle".into()));
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        if cycle.len() != self.num_facets {
            return Err(Error::InvalidPolytope("polygon facets do not form a single cycle".into()));
        }
        Ok(cycle)
    }
}

/// Integral realization of a combinatorial polygon: normals are the integer
/// roundings of `2m (cos θ_k, sin θ_k)` for equally spaced angles, all at the
/// same offset. Small entries keep the normal form well conditioned.
pub fn realize_polygon(comb: &CombPolytope) -> Result<HPolytope> {
    let cycle = comb.polygon_cycle()?;
    let m = cycle.len();
    let radius = 2.0 * m as f64;
    let mut halfspaces = vec![None; m];
    for (k, &facet) in cycle.iter().enumerate() {
        let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / m as f64;
        let ux = (radius * theta.cos()).round() as i64;
        let uy = (radius * theta.sin()).round() as i64;
        halfspaces[facet] = Some(HalfSpace::from_ints(&[-ux, -uy], 2 * m as i64));
    }
    let p = HPolytope::from_halfspaces(2, halfspaces.into_iter().map(|h| h.expect("every facet placed")).collect())?;
    if p.combinatorial() != *comb {
        return Err(Error::InvalidPolytope("polygon realization changed the combinatorial type".into()));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn pts(v: &[(i64, i64)]) -> Vec<Vec<Rational>> {
        v.iter().map(|&(a, b)| vec![int(a), int(b)]).collect()
    }

    #[test]
    fn simplex_vertices() {
        let p = HPolytope::simplex(2);
        let sets: Vec<_> = p.vertices().iter().map(|v| v.facets.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let points: Vec<_> = p.vertices().iter().map(|v| v.point.clone()).collect();
        assert_eq!(points, pts(&[(0, 0), (0, 1), (1, 0)]));
        assert!(p.is_finely_ordered() && p.is_normal_form());
    }

    #[test]
    fn square_vertices() {
        let p = HPolytope::cube(2);
        let sets: Vec<_> = p.vertices().iter().map(|v| v.facets.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn enumeration_errors() {
        let unbounded = vec![HalfSpace::from_ints(&[1, 0], 0), HalfSpace::from_ints(&[0, 1], 0), HalfSpace::from_ints(&[1, 1], -1)];
        assert_eq!(HPolytope::from_halfspaces(2, unbounded), Err(Error::Unbounded));

        let empty = vec![HalfSpace::from_ints(&[1, 0], 0), HalfSpace::from_ints(&[0, 1], 0), HalfSpace::from_ints(&[-1, -1], -1)];
        assert_eq!(HPolytope::from_halfspaces(2, empty), Err(Error::Empty));

        let mut redundant: Vec<HalfSpace> = HPolytope::simplex(2).halfspaces().to_vec();
        redundant.push(HalfSpace::from_ints(&[-1, 0], 5));
        assert_eq!(HPolytope::from_halfspaces(2, redundant), Err(Error::Redundant(3)));

        // x + y <= 1 also touches the square corner (1, 0) ... make a non-simple apex
        let pyramid_like = vec![
            HalfSpace::from_ints(&[1, 0], 0),
            HalfSpace::from_ints(&[0, 1], 0),
            HalfSpace::from_ints(&[-1, -1], 1),
            HalfSpace::from_ints(&[-1, 0], 1),
        ];
        assert!(matches!(HPolytope::from_halfspaces(2, pyramid_like), Err(Error::NotSimple { count: 3, .. })));

        let slab = vec![HalfSpace::from_ints(&[1, 0], 0), HalfSpace::from_ints(&[-1, 0], 1)];
        assert_eq!(HPolytope::from_halfspaces(2, slab), Err(Error::Unbounded));

        assert_eq!(HPolytope::from_halfspaces(2, vec![HalfSpace::from_ints(&[0, 0], 1), HalfSpace::from_ints(&[0, 1], 0)]), Err(Error::ZeroNormal(0)));
    }

    #[test]
    fn face_poset_of_simplex_and_square() {
        let t = HPolytope::simplex(2).combinatorial();
        assert_eq!(
            t.face_poset(),
            vec![vec![vec![]], vec![vec![0], vec![1], vec![2]], vec![vec![0, 1], vec![0, 2], vec![1, 2]]]
        );
        let s = HPolytope::cube(2).combinatorial();
        let poset = s.face_poset();
        assert_eq!(poset[1].len(), 4);
        assert_eq!(poset[2].len(), 4);
        assert!(!poset[2].contains(&vec![0, 2]) && !poset[2].contains(&vec![1, 3]));
        assert_eq!(s.minimal_non_faces(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(t.minimal_non_faces(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn fine_order_of_simplex() {
        let t = HPolytope::simplex(2);
        let (p, order) = t.fine_order(&[1, 2]).unwrap();
        assert_eq!(order, vec![1, 2, 0]);
        assert!(p.is_finely_ordered());
        assert_eq!(p.vertices()[0].point, vec![int(1), int(0)]);
        let (same, id) = t.fine_order(&[0, 1]).unwrap();
        assert_eq!(id, vec![0, 1, 2]);
        assert_eq!(same, t);
        assert_eq!(t.fine_order(&[0, 3]).unwrap_err(), Error::NotAVertex(vec![0, 3]));
    }

    #[test]
    fn product_of_intervals_is_square() {
        let i = HPolytope::cube(1);
        let sq = i.product(&i).unwrap();
        assert_eq!(sq, HPolytope::cube(2));
        let r = HPolytope::cube(2).product(&HPolytope::simplex(2)).unwrap();
        assert_eq!(r.num_facets(), 2 * 2 + 3);
        assert_eq!(r.num_vertices(), 4 * 3);
        assert!(r.is_normal_form());
        // the product is also what brute-force enumeration finds
        assert_eq!(HPolytope::from_halfspaces(r.dim(), r.halfspaces().to_vec()).unwrap(), r);
    }

    #[test]
    fn normal_form_of_scaled_simplex() {
        let scaled = HPolytope::from_halfspaces(
            2,
            vec![HalfSpace::from_ints(&[2, 0], 0), HalfSpace::from_ints(&[0, 2], 0), HalfSpace::from_ints(&[-2, -2], 2)],
        )
        .unwrap();
        let nf = scaled.normal_form().unwrap();
        assert_eq!(nf.offsets(), vec![int(0), int(0), int(1)]);
        assert_eq!(nf.combinatorial(), scaled.combinatorial());
        assert!(nf.is_normal_form());
        assert_eq!(HPolytope::simplex(3).normal_form().unwrap(), HPolytope::simplex(3));
    }

    #[test]
    fn normal_form_tracks_orientation() {
        let (p, _) = HPolytope::simplex(2).fine_order(&[0, 2]).unwrap();
        let (nf, or) = p.normal_form_with_orientation().unwrap();
        assert!(nf.is_normal_form());
        // corner normals e1 and (-1,-1): determinant -1
        assert_eq!(or, Sign::Negative);
        assert_eq!(nf.combinatorial(), p.combinatorial());
    }

    #[test]
    fn orientation_signs_on_simplex() {
        let t = HPolytope::simplex(2);
        assert_eq!(t.orientation_at_vertex(&[0, 1]).unwrap(), Sign::Positive);
        assert_eq!(t.orientation_at_vertex(&[0, 2]).unwrap(), Sign::Negative);
        assert_eq!(t.orientation_at_vertex(&[1, 2]).unwrap(), Sign::Positive);
        assert!(t.orientation_at_vertex(&[0, 3]).is_err());
    }

    #[test]
    fn polygon_realization_preserves_type() {
        let sq = HPolytope::cube(2).combinatorial();
        let p = realize_polygon(&sq).unwrap();
        assert_eq!(p.combinatorial(), sq);
        let hex = CombPolytope::new(2, 6, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![0, 5]]).unwrap();
        assert_eq!(realize_polygon(&hex).unwrap().combinatorial(), hex);
        let _ = ratio(1, 2);
    }

    #[test]
    fn comb_validation_rejects_non_polytopes() {
        assert!(CombPolytope::new(2, 4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).is_err());
        assert!(CombPolytope::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 2]]).is_err());
        assert!(CombPolytope::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).is_ok());
    }
}
