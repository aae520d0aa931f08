//! A fixed Cartan subalgebra of 𝔤₂ and its root system.
//!
//! The Cartan subalgebra is the diagonal torus of the 𝔰𝔲(3) acting on the
//! ℂ ⊕ ℂ³ model: `τ = (τ₁, τ₂, τ₃)` with `Στ = 0` acts by `a ↦ 0`,
//! `m ↦ i·diag(τ)·m`. Roots are real functionals `r` with
//! `ad(H_τ) x = i·r(τ)·x` on the complexification; they are extracted
//! exactly over ℚ(i) from the eigenspaces of a generic element.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cayley::ModelConvention;
use crate::derivation::{Derivation, G2Basis};
use crate::error::{Error, Result};
use crate::linalg::poly::{characteristic_polynomial, rational_roots, rational_sqrt};
use crate::linalg::{format_rational, rat, GaussianRational, Matrix, Rational};

/// Generic Cartan element used to split the complexified algebra; its twelve
/// root values are pairwise distinct.
pub const GENERIC_TAU: [i64; 3] = [1, -4, 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanElement {
    tau: [Rational; 3],
}

impl CartanElement {
    pub fn new(tau: [Rational; 3]) -> Result<Self> {
        let sum = tau.iter().fold(Rational::zero(), |acc, t| acc + t);
        if !sum.is_zero() {
            return Err(Error::SumNonzero(sum));
        }
        Ok(Self { tau })
    }

    pub fn from_integers(tau: [i64; 3]) -> Result<Self> {
        Self::new(tau.map(rat))
    }

    /// Subtracts the mean so the components sum to zero.
    pub fn projected(tau: [Rational; 3]) -> Self {
        let mean = tau.iter().fold(Rational::zero(), |acc, t| acc + t) / rat(3);
        Self {
            tau: tau.map(|t| t - &mean),
        }
    }

    pub fn zero() -> Self {
        Self {
            tau: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn tau(&self) -> &[Rational; 3] {
        &self.tau
    }

    pub fn is_zero(&self) -> bool {
        self.tau.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            tau: std::array::from_fn(|k| &self.tau[k] * c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            tau: std::array::from_fn(|k| &self.tau[k] + &other.tau[k]),
        }
    }

    pub fn tau_strings(&self) -> [String; 3] {
        std::array::from_fn(|k| format_rational(&self.tau[k]))
    }
}

impl fmt::Display for CartanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.tau[0], self.tau[1], self.tau[2])
    }
}

/// Block-rotation matrix with rates `τ₁, τ₂, τ₃` on the planes of `m₁, m₂, m₃`.
pub fn cartan_element(tau: &CartanElement) -> Derivation {
    let signs = ModelConvention::CALIBRATED.imag_signs;
    let mut m = Matrix::zeros(8, 8);
    for (k, t) in tau.tau.iter().enumerate() {
        let (re, im) = (2 + 2 * k, 3 + 2 * k);
        let rate = t * rat(i64::from(signs[k]));
        m[(im, re)] = rate.clone();
        m[(re, im)] = -rate;
    }
    Derivation::new_unchecked(m)
}

/// `H1 = τ(1, −1, 0)` and `H2 = τ(0, 1, −1)`, checked to be derivations.
pub fn cartan_basis() -> Result<(Derivation, Derivation)> {
    let build = |t: [i64; 3]| {
        let d = cartan_element(&CartanElement::from_integers(t).expect("sums to zero"));
        Derivation::new(d.matrix().clone()).map_err(|e| {
            Error::Internal(format!("Cartan generator {t:?} is not a derivation: {e}"))
        })
    };
    Ok((build([1, -1, 0])?, build([0, 1, -1])?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthClass {
    Short,
    Long,
}

impl LengthClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LengthClass::Short => "short",
            LengthClass::Long => "long",
        }
    }
}

/// Reduces `(a₁, a₂, a₃)` modulo `(1, 1, 1)` to the representative whose
/// smallest entry is 0.
pub fn canonical_coeffs(a: [i64; 3]) -> [i64; 3] {
    let min = a.into_iter().min().expect("three entries");
    a.map(|x| x - min)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    coeffs: [i64; 3],
    killing_sq_length: Rational,
    length_class: LengthClass,
    /// Killing dual `h_r` as a Cartan element: `(h, h_r) = r(h)`.
    dual: [Rational; 3],
}

impl Root {
    /// Canonical coefficients of `r(τ) = Σ aᵢ τᵢ`.
    pub fn coeffs(&self) -> [i64; 3] {
        self.coeffs
    }

    /// Squared length under the positive-definite form `−B` on the Cartan
    /// subalgebra, transported to roots.
    pub fn killing_sq_length(&self) -> &Rational {
        &self.killing_sq_length
    }

    pub fn length_class(&self) -> LengthClass {
        self.length_class
    }

    pub fn dual(&self) -> CartanElement {
        CartanElement { tau: self.dual.clone() }
    }

    pub fn evaluate(&self, tau: &CartanElement) -> Rational {
        self.coeffs
            .iter()
            .zip(&tau.tau)
            .fold(Rational::zero(), |acc, (a, t)| acc + rat(*a) * t)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.coeffs;
        write!(f, "({a},{b},{c}) {} |r|²={}", self.length_class.as_str(), self.killing_sq_length)
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Root", 3)?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.serialize_field("killing_sq_length", &format_rational(&self.killing_sq_length))?;
        s.serialize_field("length_class", self.length_class.as_str())?;
        s.end()
    }
}

/// `s_r(τ) = τ − 2·r(τ)/|r|² · h_r`.
pub fn weyl_reflect(r: &Root, tau: &CartanElement) -> CartanElement {
    let factor = rat(2) * r.evaluate(tau) / &r.killing_sq_length;
    CartanElement {
        tau: std::array::from_fn(|k| &tau.tau[k] - &factor * &r.dual[k]),
    }
}

/// Roots vanishing on `tau`.
pub fn vanishing_roots(tau: &CartanElement, roots: &[Root]) -> Vec<Root> {
    roots.iter().filter(|r| r.evaluate(tau).is_zero()).cloned().collect()
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    roots: Vec<Root>,
    /// `−B(Hₐ, H_b)` for `H1 = τ(1,−1,0)`, `H2 = τ(0,1,−1)`.
    cartan_gram: Matrix<Rational>,
}

/// Computes the twelve roots of 𝔤₂ relative to the fixed Cartan subalgebra.
pub fn root_system(b: &G2Basis) -> Result<RootSystem> {
    let internal = Error::Internal;
    let (h1, h2) = cartan_basis()?;
    let ad1 = b.adjoint_matrix(&h1)?;
    let ad2 = b.adjoint_matrix(&h2)?;
    let generic = CartanElement::from_integers(GENERIC_TAU)?;
    let adh = b.adjoint_matrix(&cartan_element(&generic))?;

    // Eigenvalues ±i·v: the characteristic polynomial is even in λ, and
    // u = λ² runs over −v².
    let charpoly = characteristic_polynomial(&adh);
    if charpoly.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return Err(internal("characteristic polynomial of ad(H) is not even".into()));
    }
    let in_u: Vec<Rational> = charpoly.iter().step_by(2).cloned().collect();
    let u_roots = rational_roots(&in_u).ok_or_else(|| internal("root search overflow".into()))?;
    let mut values = Vec::new();
    for u in u_roots.iter().filter(|u| u.is_negative()) {
        let v = rational_sqrt(&-u.clone())
            .ok_or_else(|| internal(format!("eigenvalue ±i·sqrt({}) is irrational", -u.clone())))?;
        values.push(v.clone());
        values.push(-v);
    }

    let to_c = |m: &Matrix<Rational>| m.map(|x| GaussianRational::from(x.clone()));
    let (cadh, cad1, cad2) = (to_c(&adh), to_c(&ad1), to_c(&ad2));
    let identity = Matrix::<GaussianRational>::identity(adh.rows());

    let mut raw = Vec::new();
    for v in &values {
        let shift = identity.scale(&GaussianRational::new(Rational::zero(), v.clone()));
        let space = cadh.sub(&shift).kernel_basis();
        if space.len() != 1 {
            return Err(internal(format!(
                "eigenvalue {v}i has a {}-dimensional eigenspace at the generic element",
                space.len()
            )));
        }
        let x = &space[0];
        let r1 = imaginary_eigenvalue(&cad1, x).ok_or_else(|| internal("H1 does not act diagonally".into()))?;
        let r2 = imaginary_eigenvalue(&cad2, x).ok_or_else(|| internal("H2 does not act diagonally".into()))?;
        // r(1,−1,0) = a₁ − a₂ and r(0,1,−1) = a₂ − a₃; fix a₃ = 0.
        let a = [&r1 + &r2, r2.clone(), Rational::zero()];
        if a.iter().any(|c| !c.is_integer()) {
            return Err(internal(format!("root functional {a:?} is not integral")));
        }
        let coeffs = canonical_coeffs(a.map(|c| c.to_integer().to_i64().expect("small integer")));
        raw.push((coeffs, [r1, r2]));
    }
    if raw.len() != 12 {
        return Err(internal(format!("found {} roots, expected 12", raw.len())));
    }

    let mut gram = Matrix::zeros(2, 2);
    for (i, a) in [&ad1, &ad2].into_iter().enumerate() {
        for (j, c) in [&ad1, &ad2].into_iter().enumerate() {
            gram[(i, j)] = -a.mul(c).trace();
        }
    }
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| internal("Killing form is degenerate on the Cartan subalgebra".into()))?;

    let mut roots: Vec<Root> = raw
        .into_iter()
        .map(|(coeffs, w)| {
            let c = gram_inv.mul_vec(&w);
            let sq = &w[0] * &c[0] + &w[1] * &c[1];
            Root {
                coeffs,
                killing_sq_length: sq,
                length_class: LengthClass::Short,
                dual: [c[0].clone(), &c[1] - &c[0], -c[1].clone()],
            }
        })
        .collect();
    let min = roots
        .iter()
        .map(|r| r.killing_sq_length.clone())
        .min()
        .expect("twelve roots");
    for r in &mut roots {
        if r.killing_sq_length != min {
            r.length_class = LengthClass::Long;
        }
    }
    roots.sort_by_key(|r| r.coeffs);
    roots.dedup_by_key(|r| r.coeffs);
    if roots.len() != 12 {
        return Err(internal("distinct eigenvalues produced coinciding roots".into()));
    }
    let system = RootSystem {
        roots,
        cartan_gram: gram,
    };
    if let Some(v) = values.iter().find(|v| system.root_with_value(&generic, v).is_none()) {
        return Err(internal(format!("no root takes the value {v} on the generic element")));
    }
    Ok(system)
}

/// If `m x = i·a·x` for a real `a`, returns `a`.
fn imaginary_eigenvalue(m: &Matrix<GaussianRational>, x: &[GaussianRational]) -> Option<Rational> {
    let idx = x.iter().position(|c| !c.is_zero())?;
    let y = m.mul_vec(x);
    let lambda = y[idx].clone() / x[idx].clone();
    let consistent = y
        .iter()
        .zip(x)
        .all(|(yi, xi)| *yi == lambda.clone() * xi.clone());
    (consistent && lambda.re.is_zero()).then_some(lambda.im)
}

impl RootSystem {
    /// Process-wide instance over [`G2Basis::shared`].
    pub fn shared() -> &'static RootSystem {
        static ROOTS: OnceLock<RootSystem> = OnceLock::new();
        ROOTS.get_or_init(|| root_system(G2Basis::shared()).expect("g2 has a rank-two root system"))
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Positive-definite form `−B` on `(H1, H2)`.
    pub fn cartan_gram(&self) -> &Matrix<Rational> {
        &self.cartan_gram
    }

    pub fn find(&self, coeffs: [i64; 3]) -> Option<&Root> {
        let key = canonical_coeffs(coeffs);
        self.roots.iter().find(|r| r.coeffs == key)
    }

    pub fn negate(&self, r: &Root) -> &Root {
        self.find(r.coeffs.map(|a| -a)).expect("root systems are closed under negation")
    }

    fn root_with_value(&self, tau: &CartanElement, v: &Rational) -> Option<&Root> {
        self.roots.iter().find(|r| r.evaluate(tau) == *v)
    }

    /// The functional `r' ∘ s_r`, which is again a root when `s_r` is a
    /// genuine Weyl reflection.
    pub fn reflect_root(&self, r: &Root, other: &Root) -> Option<&Root> {
        let e1 = CartanElement::from_integers([1, -1, 0]).expect("sums to zero");
        let e2 = CartanElement::from_integers([0, 1, -1]).expect("sums to zero");
        let w1 = other.evaluate(&weyl_reflect(r, &e1));
        let w2 = other.evaluate(&weyl_reflect(r, &e2));
        let a = [&w1 + &w2, w2, Rational::zero()];
        if a.iter().any(|c| !c.is_integer()) {
            return None;
        }
        self.find(a.map(|c| c.to_integer().to_i64().expect("small integer")))
    }

    /// Whether `s_r` permutes the roots and preserves their lengths.
    pub fn reflection_permutes_roots(&self, r: &Root) -> bool {
        let mut images: Vec<[i64; 3]> = Vec::new();
        for other in &self.roots {
            match self.reflect_root(r, other) {
                Some(img) if img.killing_sq_length == other.killing_sq_length => images.push(img.coeffs),
                _ => return false,
            }
        }
        images.sort();
        images.dedup();
        images.len() == self.roots.len()
    }

    /// Ratio of the long to the short squared length.
    pub fn length_ratio(&self) -> Rational {
        let max = self.roots.iter().map(|r| &r.killing_sq_length).max().expect("nonempty");
        let min = self.roots.iter().map(|r| &r.killing_sq_length).min().expect("nonempty");
        max / min
    }

    pub fn count(&self, class: LengthClass) -> usize {
        self.roots.iter().filter(|r| r.length_class == class).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(t: [i64; 3]) -> CartanElement {
        CartanElement::from_integers(t).unwrap()
    }

    fn roots() -> &'static RootSystem {
        RootSystem::shared()
    }

    #[test]
    fn cartan_element_validation() {
        assert!(matches!(CartanElement::from_integers([1, 1, 1]), Err(Error::SumNonzero(_))));
        let p = CartanElement::projected([rat(1), rat(2), rat(6)]);
        assert_eq!(p.tau(), &[rat(-2), rat(-1), rat(3)]);
    }

    #[test]
    fn cartan_generators() {
        let (h1, h2) = cartan_basis().unwrap();
        assert!(h1.bracket(&h2).is_zero());
        assert_eq!(cartan_element(&tau([1, -1, 0])), h1);
        assert_eq!(cartan_element(&tau([1, 0, -1])), h1.add(&h2));
        assert!(cartan_element(&CartanElement::zero()).is_zero());
        let g = G2Basis::shared();
        let c1 = g.coordinates(&h1).unwrap();
        let c2 = g.coordinates(&h2).unwrap();
        assert_eq!(crate::linalg::canonical_row_basis(&[c1, c2], 14).len(), 2);
    }

    #[test]
    fn cartan_is_self_centralizing() {
        let g = G2Basis::shared();
        let (h1, h2) = cartan_basis().unwrap();
        let mut stacked = g.adjoint_matrix(&h1).unwrap().into_entries();
        stacked.extend(g.adjoint_matrix(&h2).unwrap().into_entries());
        let system = Matrix::from_vec(28, 14, stacked);
        assert_eq!(system.kernel_basis().len(), 2);
    }

    #[test]
    fn twelve_roots_six_short_six_long() {
        let rs = roots();
        assert_eq!(rs.roots().len(), 12);
        assert_eq!(rs.count(LengthClass::Short), 6);
        assert_eq!(rs.count(LengthClass::Long), 6);
        assert_eq!(rs.length_ratio(), rat(3));
        for r in rs.roots() {
            assert_eq!(rs.negate(rs.negate(r)), r);
            assert_ne!(rs.negate(r), r);
        }
    }

    #[test]
    fn root_values_at_generic_element() {
        let g = tau(GENERIC_TAU);
        let mut vals: Vec<i64> = roots()
            .roots()
            .iter()
            .map(|r| r.evaluate(&g).to_integer().to_i64().unwrap())
            .collect();
        vals.sort();
        assert_eq!(vals, vec![-7, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 7]);
    }

    #[test]
    fn short_roots_are_coordinates() {
        // ±τᵢ short, ±(τᵢ − τⱼ) long.
        let rs = roots();
        for k in 0..3 {
            let mut a = [0; 3];
            a[k] = 1;
            assert_eq!(rs.find(a).unwrap().length_class(), LengthClass::Short);
            a[(k + 1) % 3] = -1;
            assert_eq!(rs.find(a).unwrap().length_class(), LengthClass::Long);
        }
    }

    #[test]
    fn vanishing_examples() {
        let rs = roots().roots();
        assert!(vanishing_roots(&tau([1, 2, -3]), rs).is_empty());
        let v = vanishing_roots(&tau([1, 0, -1]), rs);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|r| r.length_class() == LengthClass::Short));
        let mut keys: Vec<_> = v.iter().map(Root::coeffs).collect();
        keys.sort();
        assert_eq!(keys, vec![[0, 1, 0], [1, 0, 1]]);
        assert_eq!(vanishing_roots(&CartanElement::zero(), rs).len(), 12);
    }

    #[test]
    fn reflection_examples() {
        let rs = roots();
        let long = rs.find([1, -1, 0]).unwrap();
        assert_eq!(weyl_reflect(long, &tau([1, 0, -1])), tau([0, 1, -1]));
        let short = rs.find([0, 1, 0]).unwrap();
        assert_eq!(weyl_reflect(short, &tau([1, 2, -3])), tau([3, -2, -1]));
        for r in rs.roots() {
            let t = tau([5, -2, -3]);
            assert_eq!(weyl_reflect(r, &weyl_reflect(r, &t)), t);
            assert!(rs.reflection_permutes_roots(r));
            let dual = r.dual();
            assert_eq!(weyl_reflect(r, &dual), dual.scale(&rat(-1)));
        }
    }

    #[test]
    fn reflection_fixes_exactly_the_hyperplane() {
        let rs = roots();
        let r = rs.find([1, 0, 0]).unwrap();
        let on = tau([0, 3, -3]);
        let off = tau([1, 3, -4]);
        assert_eq!(weyl_reflect(r, &on), on);
        assert_ne!(weyl_reflect(r, &off), off);
    }
}
