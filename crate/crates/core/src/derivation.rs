//! The derivation algebra 𝔤₂ = Der(𝕆).
//!
//! A derivation is stored as the 8×8 matrix of its action on octonion
//! coordinates; column `c` is `D(e_c)`. The basis of 𝔤₂ is the canonical
//! kernel basis of the Leibniz system, so every basis element has a pivot
//! entry equal to 1 where all other basis elements vanish. Coordinates of a
//! derivation can therefore be read off at the pivots and then verified.

use std::sync::OnceLock;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cayley::{basis_product, check_automorphism, mul_coords, Octonion};
use crate::error::{Error, Result};
use crate::linalg::{canonical_row_basis, rat, Matrix, Rational};

/// Dimension of 𝔤₂.
pub const G2_DIM: usize = 14;

#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    matrix: Matrix<Rational>,
}

impl Derivation {
    /// Wraps an 8×8 matrix after checking the Leibniz rule, `D(e0) = 0`
    /// and skew-symmetry.
    pub fn new(matrix: Matrix<Rational>) -> Result<Self> {
        if (matrix.rows(), matrix.cols()) != (8, 8) {
            return Err(Error::NotDerivation(format!(
                "expected an 8×8 matrix, got {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !kills_unit(&matrix) {
            return Err(Error::NotDerivation("D(e0) ≠ 0".into()));
        }
        if !is_skew(&matrix) {
            return Err(Error::NotDerivation("not skew with respect to the inner product".into()));
        }
        if let Some((i, j)) = leibniz_violation(&matrix) {
            return Err(Error::NotDerivation(format!("Leibniz rule fails on (e{i}, e{j})")));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn new_unchecked(matrix: Matrix<Rational>) -> Self {
        Self { matrix }
    }

    pub fn zero() -> Self {
        Self::new_unchecked(Matrix::zeros(8, 8))
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// The 64 entries in row-major order.
    pub fn flatten(&self) -> &[Rational] {
        self.matrix.entries()
    }

    pub fn bracket(&self, other: &Self) -> Self {
        Self::new_unchecked(self.matrix.commutator(&other.matrix))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new_unchecked(self.matrix.add(&other.matrix))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new_unchecked(self.matrix.scale(c))
    }

    pub fn to_f64(&self) -> [[f64; 8]; 8] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| self.matrix[(i, j)].to_f64().expect("finite entry"))
        })
    }
}

/// `[D1, D2] = D1·D2 − D2·D1`.
pub fn bracket(d1: &Derivation, d2: &Derivation) -> Derivation {
    d1.bracket(d2)
}

fn kills_unit(m: &Matrix<Rational>) -> bool {
    (0..8).all(|r| m[(r, 0)].is_zero())
}

fn is_skew(m: &Matrix<Rational>) -> bool {
    (0..8).all(|i| (0..8).all(|j| (m[(i, j)].clone() + m[(j, i)].clone()).is_zero()))
}

/// First basis pair on which `D(eᵢeⱼ) = (Deᵢ)eⱼ + eᵢ(Deⱼ)` fails.
fn leibniz_violation(m: &Matrix<Rational>) -> Option<(usize, usize)> {
    let col = |c: usize| -> [Rational; 8] { std::array::from_fn(|r| m[(r, c)].clone()) };
    let unit = |n: usize| -> [Rational; 8] {
        std::array::from_fn(|k| if k == n { Rational::one() } else { Rational::zero() })
    };
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = basis_product(i, j);
            let lhs: [Rational; 8] = std::array::from_fn(|r| &m[(r, k)] * rat(i64::from(s)));
            let a = mul_coords(&col(i), &unit(j));
            let b = mul_coords(&unit(i), &col(j));
            if (0..8).any(|r| lhs[r] != &a[r] + &b[r]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The 512×64 linear system `D(eᵢeⱼ) − (Deᵢ)eⱼ − eᵢ(Deⱼ) = 0`.
///
/// Rows are ordered by basis pair `(i, j)` row-major, eight rows per pair
/// (one per output coordinate). Unknown `8r + c` is the entry `D[r][c]`.
pub fn leibniz_system() -> Matrix<Rational> {
    let mut sys = Matrix::<Rational>::zeros(512, 64);
    for i in 0..8 {
        for j in 0..8 {
            let (s, m) = basis_product(i, j);
            let base = (i * 8 + j) * 8;
            for k in 0..8 {
                let row = base + k;
                sys[(row, k * 8 + m)] = sys[(row, k * 8 + m)].clone() + rat(i64::from(s));
                for r in 0..8 {
                    let (s1, m1) = basis_product(r, j);
                    if m1 == k {
                        sys[(row, r * 8 + i)] = sys[(row, r * 8 + i)].clone() - rat(i64::from(s1));
                    }
                    let (s2, m2) = basis_product(i, r);
                    if m2 == k {
                        sys[(row, r * 8 + j)] = sys[(row, r * 8 + j)].clone() - rat(i64::from(s2));
                    }
                }
            }
        }
    }
    sys
}

/// Dimension data used to fingerprint a subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraSummary {
    pub dim: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    #[serde(skip)]
    pub is_abelian: bool,
}

/// A basis of 𝔤₂ with its structure constants.
#[derive(Clone, Debug)]
pub struct G2Basis {
    basis: Vec<Derivation>,
    pivots: Vec<usize>,
    /// `c[i][j][k]` at `(i·14 + j)·14 + k`.
    structure: Vec<Rational>,
    /// `ad(Bᵢ)` in the basis itself.
    ad: Vec<Matrix<Rational>>,
}

/// Solves the Leibniz system and returns 𝔤₂ with its canonical basis.
///
/// Fails with [`Error::Internal`] if the solution space is not
/// 14-dimensional, which would mean the multiplication table is broken.
pub fn derivation_basis() -> Result<G2Basis> {
    let kernel = leibniz_system().kernel_basis();
    if kernel.len() != G2_DIM {
        return Err(Error::Internal(format!(
            "Leibniz system has nullity {}, expected {G2_DIM}",
            kernel.len()
        )));
    }
    let pivots: Vec<usize> = kernel
        .iter()
        .map(|v| v.iter().position(|x| !x.is_zero()).expect("kernel vectors are nonzero"))
        .collect();
    let basis: Vec<Derivation> = kernel
        .into_iter()
        .map(|v| Derivation::new_unchecked(Matrix::from_vec(8, 8, v)))
        .collect();
    let mut g = G2Basis {
        basis,
        pivots,
        structure: vec![Rational::zero(); G2_DIM.pow(3)],
        ad: Vec::new(),
    };
    for i in 0..G2_DIM {
        for j in i + 1..G2_DIM {
            let coords = g.coordinates(&g.basis[i].bracket(&g.basis[j])).map_err(|_| {
                Error::Internal(format!("bracket of basis elements {i}, {j} left the algebra"))
            })?;
            for (k, c) in coords.into_iter().enumerate() {
                g.structure[(j * G2_DIM + i) * G2_DIM + k] = -c.clone();
                g.structure[(i * G2_DIM + j) * G2_DIM + k] = c;
            }
        }
    }
    g.ad = (0..G2_DIM)
        .map(|i| {
            let mut m = Matrix::zeros(G2_DIM, G2_DIM);
            for j in 0..G2_DIM {
                for k in 0..G2_DIM {
                    m[(k, j)] = g.structure_constant(i, j, k).clone();
                }
            }
            m
        })
        .collect();
    Ok(g)
}

impl G2Basis {
    /// Process-wide instance, computed once.
    pub fn shared() -> &'static G2Basis {
        static BASIS: OnceLock<G2Basis> = OnceLock::new();
        BASIS.get_or_init(|| derivation_basis().expect("the octonion multiplication table yields g2"))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.basis
    }

    /// `c[i][j][k]` with `[Bᵢ, Bⱼ] = Σₖ c[i][j][k] Bₖ`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.structure[(i * G2_DIM + j) * G2_DIM + k]
    }

    /// Coordinates of `d` in this basis; [`Error::NotInSpan`] if `d` is not
    /// a derivation.
    pub fn coordinates(&self, d: &Derivation) -> Result<Vec<Rational>> {
        let flat = d.flatten();
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| flat[p].clone()).collect();
        if self.combine(&coords) != *d {
            return Err(Error::NotInSpan);
        }
        Ok(coords)
    }

    /// `Σ cᵢ Bᵢ`.
    pub fn combine(&self, coords: &[Rational]) -> Derivation {
        assert_eq!(coords.len(), self.dim(), "coordinate vector length");
        let mut acc = Matrix::zeros(8, 8);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.matrix.scale(c));
            }
        }
        Derivation::new_unchecked(acc)
    }

    /// Bracket computed from structure constants.
    pub fn bracket_coords(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); G2_DIM];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `ad(Σ xᵢ Bᵢ) = Σ xᵢ ad(Bᵢ)`.
    pub fn adjoint_of_coords(&self, x: &[Rational]) -> Matrix<Rational> {
        let mut acc = Matrix::zeros(G2_DIM, G2_DIM);
        for (xi, ad) in x.iter().zip(&self.ad) {
            if !xi.is_zero() {
                acc = acc.add(&ad.scale(xi));
            }
        }
        acc
    }

    /// Matrix of `X ↦ [D, X]` in this basis.
    pub fn adjoint_matrix(&self, d: &Derivation) -> Result<Matrix<Rational>> {
        Ok(self.adjoint_of_coords(&self.coordinates(d)?))
    }

    /// `B(X, Y) = tr(ad X · ad Y)`.
    pub fn killing_form(&self, x: &Derivation, y: &Derivation) -> Result<Rational> {
        Ok(self.adjoint_matrix(x)?.mul(&self.adjoint_matrix(y)?).trace())
    }

    /// Gram matrix of the Killing form on the basis.
    pub fn killing_gram(&self) -> Matrix<Rational> {
        let mut g = Matrix::zeros(G2_DIM, G2_DIM);
        for i in 0..G2_DIM {
            for j in i..G2_DIM {
                let v = self.ad[i].mul(&self.ad[j]).trace();
                g[(j, i)] = v.clone();
                g[(i, j)] = v;
            }
        }
        g
    }

    /// Canonical basis of `{D ∈ 𝔤₂ : σ D σ⁻¹ = D}` for an automorphism `σ`.
    pub fn fixed_subalgebra(&self, sigma: &Matrix<Rational>) -> Result<Vec<Derivation>> {
        check_automorphism(sigma)?;
        // σD = Dσ is linear in the coordinates of D.
        let columns: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| sigma.mul(&b.matrix).sub(&b.matrix.mul(sigma)).into_entries())
            .collect();
        let system = Matrix::from_columns(&columns);
        Ok(system.kernel_basis().iter().map(|c| self.combine(c)).collect())
    }

    /// Canonical basis of `{D ∈ 𝔤₂ : D x = 0}`.
    pub fn annihilator(&self, x: &Octonion) -> Vec<Derivation> {
        let columns: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| b.matrix.mul_vec(x.coords()))
            .collect();
        Matrix::from_columns(&columns)
            .kernel_basis()
            .iter()
            .map(|c| self.combine(c))
            .collect()
    }

    /// Dimension, derived dimension and center dimension of the span of `s`.
    pub fn subalgebra_structure(&self, s: &[Derivation]) -> Result<SubalgebraSummary> {
        let coords: Vec<Vec<Rational>> = s.iter().map(|d| self.coordinates(d)).collect::<Result<_>>()?;
        self.structure_of_coords(&coords)
    }

    pub(crate) fn structure_of_coords(&self, vectors: &[Vec<Rational>]) -> Result<SubalgebraSummary> {
        let basis = canonical_row_basis(vectors, G2_DIM);
        let dim = basis.len();
        let span = (dim > 0).then(|| Matrix::from_columns(&basis));
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let b = self.bracket_coords(&basis[i], &basis[j]);
                let inside = match &span {
                    Some(m) => m.solve(&b).is_some(),
                    None => false,
                };
                if !inside {
                    return Err(Error::NotBracketClosed);
                }
                brackets.push(b);
            }
        }
        let derived_dim = canonical_row_basis(&brackets, G2_DIM).len();
        // x = Σ aₗ sₗ is central iff [x, sₘ] = 0 for every m.
        let center_dim = if dim == 0 {
            0
        } else {
            let mut system = Matrix::zeros(G2_DIM * dim, dim);
            for (l, sl) in basis.iter().enumerate() {
                for (m, sm) in basis.iter().enumerate() {
                    let b = self.bracket_coords(sl, sm);
                    for (k, v) in b.into_iter().enumerate() {
                        system[(m * G2_DIM + k, l)] = v;
                    }
                }
            }
            dim - system.rank()
        };
        Ok(SubalgebraSummary {
            dim,
            derived_dim,
            center_dim,
            is_abelian: derived_dim == 0,
        })
    }
}

const EXP_TAYLOR_DEGREE: usize = 18;
const EXP_SCALED_NORM: f64 = 0.5;

type Mat8 = [[f64; 8]; 8];

fn mat8_mul(a: &Mat8, b: &Mat8) -> Mat8 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..8).map(|k| a[i][k] * b[k][j]).sum()))
}

fn mat8_identity() -> Mat8 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }))
}

/// Floating-point `exp(tD)` by scaling and squaring with a degree-18 Taylor
/// polynomial on the scaled matrix.
pub fn exp_derivation_numeric(d: &Derivation, t: f64) -> Mat8 {
    let a = d.to_f64().map(|row| row.map(|v| v * t));
    let norm = a
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > EXP_SCALED_NORM {
        (norm / EXP_SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scale = 2f64.powi(-squarings);
    let a = a.map(|row| row.map(|v| v * scale));

    let mut result = mat8_identity();
    let mut term = mat8_identity();
    for k in 1..=EXP_TAYLOR_DEGREE {
        term = mat8_mul(&term, &a).map(|row| row.map(|v| v / k as f64));
        for i in 0..8 {
            for j in 0..8 {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mat8_mul(&result, &result);
    }
    result
}

/// `‖αᵀα − I‖∞` (max absolute entry).
pub fn orthogonality_residual(alpha: &Mat8) -> f64 {
    let mut worst = 0f64;
    for i in 0..8 {
        for j in 0..8 {
            let v: f64 = (0..8).map(|k| alpha[k][i] * alpha[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).abs());
        }
    }
    worst
}

/// `‖α(xy) − (αx)(αy)‖∞` for floating-point octonions.
pub fn automorphism_residual(alpha: &Mat8, x: &[f64; 8], y: &[f64; 8]) -> f64 {
    let apply = |v: &[f64; 8]| -> [f64; 8] { std::array::from_fn(|i| (0..8).map(|k| alpha[i][k] * v[k]).sum()) };
    let lhs = apply(&mul_coords(x, y));
    let rhs = mul_coords(&apply(x), &apply(y));
    lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Leading principal minors of `−B` on the basis; all positive iff the
/// Killing form is negative definite.
pub fn negated_killing_minors(g: &G2Basis) -> Vec<Rational> {
    let neg = g.killing_gram().scale(&rat(-1));
    (1..=G2_DIM).map(|k| neg.leading_block(k).determinant()).collect()
}

pub fn is_negative_definite(g: &G2Basis) -> bool {
    negated_killing_minors(g).iter().all(Signed::is_positive)
}
