//! Rational cohomology of a quasitoric manifold from `(P, Λ)`, Chern classes
//! and characteristic numbers.
//!
//! The linear relations express `u_1, …, u_n` in terms of `u_{n+1}, …, u_m`,
//! so all computations happen in the polynomial ring on the `k = m - n`
//! remaining generators, modulo the substituted Stanley–Reisner monomials.

pub mod poly;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polytope::Sign;
use crate::quasitoric::OmniQT;
use crate::rational::{self, Rational};
use poly::{Exponents, IdealComponent, Poly};

pub const MAX_FACETS: usize = 14;
pub const MAX_DIM: usize = 4;

/// Generators `u_1..u_m` in degree 2, with the linear relations (rows of the
/// refined matrix) and the minimal non-faces of the polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub num_gens: usize,
    pub dim: usize,
    /// Row `i` encodes `Σ_j λ_{i,j} u_j = 0`.
    pub linear_relations: Vec<Vec<i64>>,
    pub sr_nonfaces: Vec<Vec<usize>>,
}

pub fn presentation(m: &OmniQT) -> Result<RingPresentation> {
    if m.num_facets() > MAX_FACETS || m.dim() > MAX_DIM {
        return Err(Error::ScaleLimit(format!(
            "m = {}, n = {}; supported up to m = {MAX_FACETS}, n = {MAX_DIM}",
            m.num_facets(),
            m.dim()
        )));
    }
    Ok(RingPresentation {
        num_gens: m.num_facets(),
        dim: m.dim(),
        linear_relations: m.lambda().entries().clone(),
        sr_nonfaces: m.polytope().minimal_non_faces(),
    })
}

impl RingPresentation {
    /// Number of free generators after substitution.
    pub fn num_free(&self) -> usize {
        self.num_gens - self.dim
    }

    /// Each `u_i` as a linear form in the free generators `u_{n+1}..u_m`.
    pub fn generator_forms(&self) -> Vec<Poly> {
        let (n, k) = (self.dim, self.num_free());
        (0..self.num_gens)
            .map(|i| {
                if i >= n {
                    Poly::var(k, i - n)
                } else {
                    let coeffs: Vec<Rational> = self.linear_relations[i][n..].iter().map(|&x| rational::int(-x)).collect();
                    Poly::linear(&coeffs)
                }
            })
            .collect()
    }

    pub fn monomial_in_generators(&self, facets: &[usize]) -> Poly {
        let forms = self.generator_forms();
        facets.iter().fold(Poly::one(self.num_free()), |acc, &i| acc.mul(&forms[i]))
    }

    /// Substituted Stanley–Reisner generators.
    pub fn sr_generators(&self) -> Vec<Poly> {
        self.sr_nonfaces.iter().map(|f| self.monomial_in_generators(f)).collect()
    }

    pub fn graded_piece(&self, d: usize) -> Result<GradedPiece> {
        if d > self.dim {
            return Err(Error::WrongDegree { expected: self.dim, found: d });
        }
        let component = IdealComponent::new(self.num_free(), d as u32, &self.sr_generators());
        Ok(GradedPiece { degree: d, basis: component.quotient_basis(), component })
    }

    /// Dimensions of `H^{2d}` for `d = 0..=n`.
    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        (0..=self.dim).map(|d| Ok(self.graded_piece(d)?.dim())).collect()
    }
}

/// `H^{2d}` over `ℚ`: a monomial basis and reduction to it.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    pub basis: Vec<Exponents>,
    component: IdealComponent,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, class: &Poly) -> Poly {
        self.component.normal_form(class)
    }

    pub fn relation_rank(&self) -> usize {
        self.component.rank()
    }
}

/// Pairing of top-degree classes with the fundamental class, normalized by
/// `⟨u_w, μ⟩ = σ(w)` at a reference vertex `w`.
#[derive(Clone, Debug)]
pub struct Evaluator {
    presentation: RingPresentation,
    top: GradedPiece,
    /// The reference vertex: lexicographically first with nonzero image.
    pub reference_vertex: Vec<usize>,
    /// Value of the single top basis monomial on the fundamental class.
    generator_value: Rational,
}

impl Evaluator {
    pub fn new(m: &OmniQT) -> Result<Self> {
        let presentation = presentation(m)?;
        let top = presentation.graded_piece(m.dim())?;
        if top.dim() != 1 {
            return Err(Error::TopDegreeNotRankOne(top.dim()));
        }
        let basis = top.basis[0].clone();
        for (w, &s) in m.polytope().vertex_sets().iter().zip(m.signs()) {
            let image = top.reduce(&presentation.monomial_in_generators(w)).coeff(&basis);
            if !image.is_zero() {
                let generator_value = rational::int(s.value()) / image;
                return Ok(Evaluator { reference_vertex: w.clone(), presentation, top, generator_value });
            }
        }
        Err(Error::TopDegreeNotRankOne(0))
    }

    pub fn presentation(&self) -> &RingPresentation {
        &self.presentation
    }

    pub fn evaluate(&self, class: &Poly) -> Result<Rational> {
        if !class.is_homogeneous(self.presentation.dim as u32) {
            let found = class.terms().keys().next().map_or(0, |e| e.iter().sum::<u32>() as usize);
            return Err(Error::WrongDegree { expected: self.presentation.dim, found });
        }
        Ok(self.top.reduce(class).coeff(&self.top.basis[0]) * &self.generator_value)
    }

    pub fn evaluate_vertex(&self, w: &[usize]) -> Result<Rational> {
        self.evaluate(&self.presentation.monomial_in_generators(w))
    }
}

/// Vertices where `⟨u_w, μ⟩` disagrees with the stored sign, with the value found.
pub fn sign_mismatches(m: &OmniQT) -> Result<Vec<(Vec<usize>, Sign, Rational)>> {
    let ev = Evaluator::new(m)?;
    let mut out = Vec::new();
    for (w, &s) in m.polytope().vertex_sets().iter().zip(m.signs()) {
        let value = ev.evaluate_vertex(w)?;
        if value != rational::int(s.value()) {
            out.push((w.clone(), s, value));
        }
    }
    Ok(out)
}

/// Total Chern class `Π (1 + u_i)` truncated at degree `n`, split by degree.
pub fn chern_classes(pres: &RingPresentation) -> Vec<Poly> {
    let k = pres.num_free();
    let n = pres.dim as u32;
    let total = pres.generator_forms().iter().fold(Poly::one(k), |acc, u| acc.mul_truncated(&Poly::one(k).add(u), n));
    (0..=n).map(|d| total.homogeneous_part(d)).collect()
}

/// `c_i = e_i(u_1, …, u_m)`.
pub fn chern_class(pres: &RingPresentation, i: usize) -> Result<Poly> {
    if i == 0 || i > pres.dim {
        return Err(Error::WrongDegree { expected: pres.dim, found: i });
    }
    Ok(chern_classes(pres).swap_remove(i))
}

/// Partitions of `n` as non-increasing lists, in reverse lexicographic order
/// (`[n]` first).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=left.min(max)).rev() {
            cur.push(part);
            rec(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `c_2 c_1^2`-style label for a partition.
pub fn partition_label(p: &[usize]) -> String {
    let mut counts: BTreeMap<std::cmp::Reverse<usize>, usize> = BTreeMap::new();
    for &x in p {
        *counts.entry(std::cmp::Reverse(x)).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(std::cmp::Reverse(i), e)| if e == 1 { format!("c{i}") } else { format!("c{i}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Characteristic numbers `⟨c_ω, μ⟩` for every partition `ω` of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernNumbers {
    pub dim: usize,
    pub values: Vec<(Vec<usize>, i64)>,
    pub reference_vertex: Vec<usize>,
}

impl ChernNumbers {
    pub fn get(&self, partition: &[usize]) -> Option<i64> {
        self.values.iter().find(|(p, _)| p == partition).map(|(_, v)| *v)
    }

    /// The top Chern number `c_n`.
    pub fn top(&self) -> i64 {
        self.get(&[self.dim]).expect("partition [n] is always present")
    }

    pub fn all_zero(&self) -> bool {
        self.values.iter().all(|(_, v)| *v == 0)
    }
}

pub fn chern_numbers(m: &OmniQT) -> Result<ChernNumbers> {
    let ev = Evaluator::new(m)?;
    let pres = ev.presentation();
    let classes = chern_classes(pres);
    let k = pres.num_free();
    let mut values = Vec::new();
    for p in partitions(m.dim()) {
        let class = p.iter().fold(Poly::one(k), |acc, &i| acc.mul(&classes[i]));
        let value = ev.evaluate(&class)?;
        if !value.is_integer() {
            return Err(Error::NonIntegral(format!("{} = {}", partition_label(&p), rational::format_rational(&value))));
        }
        let v = value.to_integer().try_into().map_err(|_| Error::Overflow("characteristic number"))?;
        values.push((p, v));
    }
    Ok(ChernNumbers { dim: m.dim(), values, reference_vertex: ev.reference_vertex.clone() })
}

/// `(c_1² + c_2) / 12` for four-dimensional manifolds.
pub fn todd_n2(m: &OmniQT) -> Result<Rational> {
    if m.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: m.dim() });
    }
    let c = chern_numbers(m)?;
    Ok(rational::ratio(c.get(&[1, 1]).expect("c1^2") + c.get(&[2]).expect("c2"), 12))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricObstruction {
    pub q_minus: usize,
    /// Todd genus when `n = 2`.
    pub todd: Option<Rational>,
    /// Some vertex has sign −1, so the descriptor is not that of a toric variety.
    pub not_toric_like: bool,
    /// `n = 2` and Td ≠ 1: no smooth projective toric variety is cobordant.
    pub class_obstructed: bool,
}

pub fn toric_obstruction(m: &OmniQT) -> Result<ToricObstruction> {
    let todd = if m.dim() == 2 { Some(todd_n2(m)?) } else { None };
    Ok(ToricObstruction {
        q_minus: m.q_minus(),
        class_obstructed: todd.as_ref().is_some_and(|t| !t.is_one()),
        todd,
        not_toric_like: m.q_minus() > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasitoric::builders::*;
    use crate::rational::int;

    #[test]
    fn projective_plane() {
        let m = cp(2).unwrap();
        let pres = presentation(&m).unwrap();
        assert_eq!(pres.sr_nonfaces, vec![vec![0, 1, 2]]);
        assert_eq!(pres.betti_numbers().unwrap(), vec![1, 1, 1]);
        let ev = Evaluator::new(&m).unwrap();
        assert_eq!(ev.evaluate(&Poly::var(1, 0).pow(2)).unwrap(), int(1));
        let c = chern_numbers(&m).unwrap();
        assert_eq!(c.get(&[2]), Some(3));
        assert_eq!(c.get(&[1, 1]), Some(9));
        assert_eq!(todd_n2(&m).unwrap(), int(1));
    }

    #[test]
    fn sphere_products() {
        let m = cube(2).unwrap();
        let pres = presentation(&m).unwrap();
        assert_eq!(pres.betti_numbers().unwrap(), vec![1, 2, 1]);
        let c = chern_numbers(&m).unwrap();
        assert_eq!((c.get(&[2]), c.get(&[1, 1])), (Some(4), Some(8)));
        assert!(chern_numbers(&s_product(2).unwrap()).unwrap().all_zero());
    }

    #[test]
    fn twisted_plane() {
        let m = cp_eps(2, &[1, -1]).unwrap();
        let c = chern_numbers(&m).unwrap();
        assert_eq!((c.get(&[2]), c.get(&[1, 1])), (Some(1), Some(-1)));
        assert!(sign_mismatches(&m).unwrap().is_empty());
    }

    #[test]
    fn reversal_negates_numbers() {
        let m = b_rs(1, 3).unwrap();
        let a = chern_numbers(&m).unwrap();
        let b = chern_numbers(&m.reverse_orientation()).unwrap();
        for ((p, x), (q, y)) in a.values.iter().zip(&b.values) {
            assert_eq!(p, q);
            assert_eq!(*x, -*y);
        }
    }

    #[test]
    fn evaluation_rejects_wrong_degree() {
        let ev = Evaluator::new(&cp(2).unwrap()).unwrap();
        assert!(matches!(ev.evaluate(&Poly::var(1, 0)), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partition_label(&[2, 1, 1]), "c2 c1^2");
    }

    #[test]
    fn conjugation_keeps_signs_consistent() {
        let m = cp(3).unwrap();
        for j in 0..4 {
            assert!(sign_mismatches(&m.conjugate_facet(j).unwrap()).unwrap().is_empty());
        }
    }

    #[test]
    fn obstruction_flags() {
        let o = toric_obstruction(&cp(2).unwrap()).unwrap();
        assert_eq!((o.q_minus, o.not_toric_like, o.class_obstructed), (0, false, false));
        let s = toric_obstruction(&s_product(3).unwrap()).unwrap();
        assert_eq!((s.q_minus, s.todd), (4, None));
    }
}
