//! Analogous polytopes: parallel displacements of the facets of a fixed
//! polytope, the matrix `C` annihilating `A_P`, and framing vectors.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polytope::{CombPolytope, HPolytope, HalfSpace};
use crate::rational::{self, Rational};

/// The `(m-n) × m` matrix `[-A⋆ | I]` built from a polytope in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    pub entries: Vec<Vec<Rational>>,
}

impl CMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn rank(&self) -> usize {
        rational::rank(&self.entries)
    }

    /// True when `C · A_P` vanishes exactly.
    pub fn annihilates(&self, p: &HPolytope) -> bool {
        rational::mat_mul(&self.entries, &p.normals()).iter().flatten().all(Zero::is_zero)
    }

    /// The matrix with the columns in `deleted` removed.
    pub fn delete_columns(&self, deleted: &[usize]) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| !deleted.contains(j)).map(|(_, x)| x.clone()).collect())
            .collect()
    }
}

pub fn c_matrix(p: &HPolytope) -> Result<CMatrix> {
    if !p.is_normal_form() {
        return Err(Error::NotNormalForm);
    }
    let (n, m) = (p.dim(), p.num_facets());
    let entries = p.halfspaces()[n..]
        .iter()
        .enumerate()
        .map(|(j, h)| {
            h.normal
                .iter()
                .map(|a| -a.clone())
                .chain((0..m - n).map(|k| if k == j { Rational::one() } else { Rational::zero() }))
                .collect()
        })
        .collect();
    Ok(CMatrix { entries })
}

fn shifted(p: &HPolytope, h: &[Rational]) -> Result<Vec<HalfSpace>> {
    if h.len() != p.num_facets() {
        return Err(Error::DimensionMismatch(format!("shift has length {}, polytope has {} facets", h.len(), p.num_facets())));
    }
    Ok(p.halfspaces().iter().zip(h).map(|(hs, d)| HalfSpace { normal: hs.normal.clone(), offset: &hs.offset + d }).collect())
}

/// Signed distances `d_i(h)` from the corner `v⋆(h)` of the shifted
/// arrangement to each shifted hyperplane.
pub fn support_distances(p: &HPolytope, h: &[Rational]) -> Result<Vec<Rational>> {
    let hs = shifted(p, h)?;
    let n = p.dim();
    let a: Vec<Vec<Rational>> = hs[..n].iter().map(|x| x.normal.clone()).collect();
    let b: Vec<Rational> = hs[..n].iter().map(|x| -x.offset.clone()).collect();
    let corner = rational::solve(&a, &b).ok_or(Error::DegenerateCorner)?;
    Ok(hs.iter().map(|x| x.evaluate(&corner)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftClass {
    /// Combinatorially equivalent to the original polytope.
    Actual,
    /// Nonempty, but of a different combinatorial type.
    Degenerate,
    Empty,
}

impl ShiftClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ShiftClass::Actual => "actual",
            ShiftClass::Degenerate => "degenerate",
            ShiftClass::Empty => "empty",
        }
    }
}

/// The polytope `A_P x + b_P + h >= 0`, if it is a simple polytope at all.
pub fn shifted_polytope(p: &HPolytope, h: &[Rational]) -> Result<HPolytope> {
    HPolytope::from_halfspaces(p.dim(), shifted(p, h)?)
}

pub fn classify_shift(p: &HPolytope, h: &[Rational]) -> Result<ShiftClass> {
    let hs = shifted(p, h)?;
    Ok(match HPolytope::from_halfspaces(p.dim(), hs) {
        Ok(q) if q.combinatorial() == p.combinatorial() => ShiftClass::Actual,
        Ok(_) => ShiftClass::Degenerate,
        Err(Error::Empty) => ShiftClass::Empty,
        // the recession cone is that of P, hence trivial: any other failure
        // still leaves a nonempty intersection
        Err(_) => ShiftClass::Degenerate,
    })
}

/// Shift of the Minkowski sum `P(h1) + P(h2)`: offsets add, so the shift is
/// `h1 + h2 + b_P`.
pub fn minkowski_add(p: &HPolytope, h1: &[Rational], h2: &[Rational]) -> Vec<Rational> {
    h1.iter().zip(h2).zip(p.offsets()).map(|((a, b), c)| a + b + c).collect()
}

/// Shift of `λ · P(h)`.
pub fn dilate(p: &HPolytope, h: &[Rational], lambda: &Rational) -> Vec<Rational> {
    h.iter().zip(p.offsets()).map(|(x, b)| lambda * (&b + x) - b).collect()
}

/// For polygons: checks that the vertices of `P(h1) + P(h2)` are the sums of
/// the vertices of `P(h1)` and `P(h2)` sharing the same facet pair.
pub fn minkowski_vertex_check(p: &HPolytope, h1: &[Rational], h2: &[Rational]) -> Result<bool> {
    if p.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: p.dim() });
    }
    let p1 = shifted_polytope(p, h1)?;
    let p2 = shifted_polytope(p, h2)?;
    let sum = shifted_polytope(p, &minkowski_add(p, h1, h2))?;
    let comb = p.combinatorial();
    if [&p1, &p2, &sum].iter().any(|q| q.combinatorial() != comb) {
        return Ok(false);
    }
    Ok(sum.vertices().iter().all(|v| {
        let a = &p1.vertex(&v.facets).expect("same type").point;
        let b = &p2.vertex(&v.facets).expect("same type").point;
        v.point.iter().zip(a).zip(b).all(|((s, x), y)| *s == x + y)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRankReport {
    pub faces_checked: usize,
    pub expected_rank: usize,
    /// Faces whose column deletion drops the rank.
    pub failures: Vec<Vec<usize>>,
}

impl FaceRankReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Deletes the columns of every face `F_I` (all codimensions, vertices
/// included) and checks that the rank stays `m - n`.
pub fn face_rank_check(c: &CMatrix, p: &CombPolytope) -> FaceRankReport {
    let expected_rank = p.num_facets() - p.dim();
    let mut faces_checked = 0;
    let mut failures = Vec::new();
    for face in p.face_poset().into_iter().flatten() {
        faces_checked += 1;
        if rational::rank(&c.delete_columns(&face)) != expected_rank {
            failures.push(face);
        }
    }
    FaceRankReport { faces_checked, expected_rank, failures }
}

/// Framing vectors `f_j = c_j ⊙ i_P(x)` at a point `x` of `P`.
pub fn framing_vectors(p: &HPolytope, x: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let c = c_matrix(p)?;
    if !p.contains(x) {
        return Err(Error::NotInPolytope);
    }
    let y = p.embed(x);
    Ok(c.entries.iter().map(|row| row.iter().zip(&y).map(|(a, b)| a * b).collect()).collect())
}

/// True when every coordinate of `y = i_P(x)` is strictly positive.
pub fn is_interior(p: &HPolytope, x: &[Rational]) -> bool {
    p.embed(x).iter().all(Signed::is_positive)
}
