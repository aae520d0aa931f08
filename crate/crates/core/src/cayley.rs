//! The Cayley algebra 𝕆 of octonions over ℚ.
//!
//! Octonions are stored in the basis `e0 = 1, e1, …, e7`. The product is
//! built by doubling the quaternions ℍ = span{e0, e1, e2, e3}:
//!
//! ```text
//! (a + b·e4)(c + d·e4) = (ac − d̄b) + (bc̄ + da)·e4,   a, b, c, d ∈ ℍ
//! ```
//!
//! with the Hamilton table `e1e2 = e3`, `e2e3 = e1`, `e3e1 = e2`, `ei² = −1`,
//! and `e5 = e1e4`, `e6 = e2e4`, `e7 = e3e4`.
//!
//! The same algebra is also modelled as ℂ ⊕ ℂ³ with ℂ = span{1, e1} acting
//! on the left:
//!
//! ```text
//! x = a + m1·e2 + m2·e4 + m3·e6
//! (a + m)(b + n) = (ab − ⟨m, n⟩) + (a·n + b̄·m − conj(m × n)),  ⟨m, n⟩ = Σ mₖ n̄ₖ
//! ```
//!
//! Left ℂ-linearity forces `i·e2 = e3`, `i·e4 = e5` and `i·e6 = −e7`, so the
//! imaginary parts of `m1, m2, m3` sit on `+e3, +e5, −e7`. With that
//! identification the two products agree only when `m × n` is the
//! left-handed cross product `(m3n2 − m2n3, m1n3 − m3n1, m2n1 − m1n2)`.
//! [`calibrate_model`] searches all sign choices and confirms this is the
//! unique consistent one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{Num, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, rat, GaussianRational, Matrix, Rational};

/// Hamilton product of quaternions `q0 + q1 e1 + q2 e2 + q3 e3`.
fn quat_mul<T: Clone + Num>(a: &[T], b: &[T]) -> [T; 4] {
    let (a0, a1, a2, a3) = (a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone());
    let (b0, b1, b2, b3) = (b[0].clone(), b[1].clone(), b[2].clone(), b[3].clone());
    [
        a0.clone() * b0.clone() - a1.clone() * b1.clone() - a2.clone() * b2.clone() - a3.clone() * b3.clone(),
        a0.clone() * b1.clone() + a1.clone() * b0.clone() + a2.clone() * b3.clone() - a3.clone() * b2.clone(),
        a0.clone() * b2.clone() - a1.clone() * b3.clone() + a2.clone() * b0.clone() + a3.clone() * b1.clone(),
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

fn quat_conj<T: Clone + Num + Neg<Output = T>>(a: &[T]) -> [T; 4] {
    [a[0].clone(), -a[1].clone(), -a[2].clone(), -a[3].clone()]
}

/// Octonion product on raw coordinates via the doubling formula. Generic so
/// the same table drives exact and floating-point arithmetic.
pub fn mul_coords<T: Clone + Num + Neg<Output = T>>(x: &[T; 8], y: &[T; 8]) -> [T; 8] {
    let (a, b) = x.split_at(4);
    let (c, d) = y.split_at(4);
    let ac = quat_mul(a, c);
    let db = quat_mul(&quat_conj(d), b);
    let bc = quat_mul(b, &quat_conj(c));
    let da = quat_mul(d, a);
    std::array::from_fn(|k| {
        if k < 4 {
            ac[k].clone() - db[k].clone()
        } else {
            bc[k - 4].clone() + da[k - 4].clone()
        }
    })
}

/// `eᵢ·eⱼ = sign · e_k`, as `(sign, k)`.
pub fn basis_product(i: usize, j: usize) -> (i8, usize) {
    static TABLE: OnceLock<[[(i8, usize); 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let unit = |n: usize| -> [i64; 8] { std::array::from_fn(|k| i64::from(k == n)) };
                let p = mul_coords(&unit(i), &unit(j));
                let (k, v) = p.iter().enumerate().find(|(_, v)| **v != 0).expect("basis products are nonzero");
                (*v as i8, k)
            })
        })
    })[i][j]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion {
    coords: [Rational; 8],
}

impl Octonion {
    pub fn new(coords: [Rational; 8]) -> Self {
        Self { coords }
    }

    pub fn from_integers(c: [i64; 8]) -> Self {
        Self::new(c.map(rat))
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// The basis element `eᵢ`. Panics if `i ≥ 8`.
    pub fn basis(i: usize) -> Self {
        assert!(i < 8, "octonion basis index out of range");
        Self::new(std::array::from_fn(|k| if k == i { Rational::one() } else { Rational::zero() }))
    }

    pub fn coords(&self) -> &[Rational; 8] {
        &self.coords
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(std::array::from_fn(|k| &self.coords[k] * c))
    }

    /// `x̄ = 2(x, e0)e0 − x`.
    pub fn conj(&self) -> Self {
        Self::new(std::array::from_fn(|k| {
            if k == 0 {
                self.coords[0].clone()
            } else {
                -self.coords[k].clone()
            }
        }))
    }

    /// Euclidean inner product making `{eᵢ}` orthonormal.
    pub fn inner(&self, other: &Self) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `N(x) = (x, x)`.
    pub fn norm(&self) -> Rational {
        self.inner(self)
    }

    /// `γ(a + b·e4) = a − b·e4`.
    pub fn gamma(&self) -> Self {
        Self::new(std::array::from_fn(|k| {
            if k < 4 {
                self.coords[k].clone()
            } else {
                -self.coords[k].clone()
            }
        }))
    }

    /// `γ₁(a + m) = ā + m̄` in the ℂ ⊕ ℂ³ model: negates `e1, e3, e5, e7`.
    pub fn gamma1(&self) -> Self {
        from_complex_model(&to_complex_model(self).conj())
    }

    /// Applies an 8×8 matrix acting on coordinates.
    pub fn transform(&self, m: &Matrix<Rational>) -> Self {
        assert_eq!((m.rows(), m.cols()), (8, 8), "octonion maps are 8×8");
        let v = m.mul_vec(&self.coords);
        Self::new(v.try_into().expect("length 8"))
    }
}

pub fn oct_mul(x: &Octonion, y: &Octonion) -> Octonion {
    Octonion::new(mul_coords(&x.coords, &y.coords))
}

impl Mul for &Octonion {
    type Output = Octonion;

    fn mul(self, rhs: &Octonion) -> Octonion {
        oct_mul(self, rhs)
    }
}

impl Mul for Octonion {
    type Output = Octonion;

    fn mul(self, rhs: Octonion) -> Octonion {
        oct_mul(&self, &rhs)
    }
}

impl Add for &Octonion {
    type Output = Octonion;

    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion::new(std::array::from_fn(|k| &self.coords[k] + &rhs.coords[k]))
    }
}

impl Add for Octonion {
    type Output = Octonion;

    fn add(self, rhs: Octonion) -> Octonion {
        &self + &rhs
    }
}

impl Sub for &Octonion {
    type Output = Octonion;

    fn sub(self, rhs: &Octonion) -> Octonion {
        Octonion::new(std::array::from_fn(|k| &self.coords[k] - &rhs.coords[k]))
    }
}

impl Sub for Octonion {
    type Output = Octonion;

    fn sub(self, rhs: Octonion) -> Octonion {
        &self - &rhs
    }
}

impl Neg for Octonion {
    type Output = Octonion;

    fn neg(self) -> Octonion {
        Octonion::new(self.coords.map(|c| -c))
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            write!(f, "{}·e{}", c, k)?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// JSON form: an array of 8 rational strings.
impl Serialize for Octonion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coords.iter().map(format_rational).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Octonion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        if strings.len() != 8 {
            return Err(D::Error::invalid_length(strings.len(), &"8 rational strings"));
        }
        let coords: Vec<Rational> = strings
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()
            .map_err(D::Error::custom)?;
        Ok(Octonion::new(coords.try_into().expect("length checked")))
    }
}

/// Diagonal matrix of γ on coordinates.
pub fn gamma_matrix() -> Matrix<Rational> {
    diagonal_signs([1, 1, 1, 1, -1, -1, -1, -1])
}

/// Diagonal matrix of γ₁ on coordinates.
pub fn gamma1_matrix() -> Matrix<Rational> {
    diagonal_signs([1, -1, 1, -1, 1, -1, 1, -1])
}

fn diagonal_signs(signs: [i64; 8]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(8, 8);
    for (k, s) in signs.into_iter().enumerate() {
        m[(k, k)] = rat(s);
    }
    m
}

/// Checks that an 8×8 matrix is an invertible algebra homomorphism of 𝕆,
/// testing `σ(eᵢeⱼ) = σ(eᵢ)σ(eⱼ)` on all 64 basis pairs.
pub fn check_automorphism(sigma: &Matrix<Rational>) -> Result<()> {
    if (sigma.rows(), sigma.cols()) != (8, 8) {
        return Err(Error::NotAutomorphism(format!(
            "expected an 8×8 matrix, got {}×{}",
            sigma.rows(),
            sigma.cols()
        )));
    }
    if sigma.rank() != 8 {
        return Err(Error::NotAutomorphism("matrix is singular".into()));
    }
    let images: Vec<Octonion> = (0..8).map(|i| Octonion::basis(i).transform(sigma)).collect();
    for i in 0..8 {
        for j in 0..8 {
            let lhs = oct_mul(&Octonion::basis(i), &Octonion::basis(j)).transform(sigma);
            if lhs != oct_mul(&images[i], &images[j]) {
                return Err(Error::NotAutomorphism(format!(
                    "multiplicativity fails on (e{i}, e{j})"
                )));
            }
        }
    }
    Ok(())
}

/// An element `a + (m1, m2, m3)` of ℂ ⊕ ℂ³.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexModelElement {
    pub a: GaussianRational,
    pub m: [GaussianRational; 3],
}

impl ComplexModelElement {
    pub fn one() -> Self {
        Self {
            a: GaussianRational::one(),
            m: std::array::from_fn(|_| GaussianRational::zero()),
        }
    }

    /// Componentwise complex conjugation `ā + m̄`.
    pub fn conj(&self) -> Self {
        Self {
            a: self.a.conj(),
            m: std::array::from_fn(|k| self.m[k].conj()),
        }
    }
}

/// Sign choices identifying ℂ ⊕ ℂ³ with the doubling basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModelConvention {
    /// Sign of the octonion basis element (`e3`, `e5`, `e7`) carrying `i·mₖ`.
    pub imag_signs: [i8; 3],
    /// `+1` for the right-handed cross product, `−1` for the left-handed one.
    pub cross_orientation: i8,
}

impl ModelConvention {
    pub const CALIBRATED: Self = Self {
        imag_signs: [1, 1, -1],
        cross_orientation: -1,
    };

    fn all() -> impl Iterator<Item = Self> {
        (0..16u8).map(|bits| {
            let s = |b: u8| if bits & (1 << b) == 0 { 1 } else { -1 };
            Self {
                imag_signs: [s(0), s(1), s(2)],
                cross_orientation: s(3),
            }
        })
    }

    pub fn to_model(&self, x: &Octonion) -> ComplexModelElement {
        let c = x.coords();
        let imag = |k: usize, v: &Rational| v * rat(i64::from(self.imag_signs[k]));
        ComplexModelElement {
            a: GaussianRational::new(c[0].clone(), c[1].clone()),
            m: std::array::from_fn(|k| {
                GaussianRational::new(c[2 + 2 * k].clone(), imag(k, &c[3 + 2 * k]))
            }),
        }
    }

    pub fn from_model(&self, u: &ComplexModelElement) -> Octonion {
        Octonion::new(std::array::from_fn(|idx| match idx {
            0 => u.a.re.clone(),
            1 => u.a.im.clone(),
            _ => {
                let k = (idx - 2) / 2;
                if idx % 2 == 0 {
                    u.m[k].re.clone()
                } else {
                    &u.m[k].im * rat(i64::from(self.imag_signs[k]))
                }
            }
        }))
    }

    pub fn cross(&self, m: &[GaussianRational; 3], n: &[GaussianRational; 3]) -> [GaussianRational; 3] {
        let o = GaussianRational::from(rat(i64::from(self.cross_orientation)));
        std::array::from_fn(|k| {
            let (p, q) = ((k + 1) % 3, (k + 2) % 3);
            o.clone() * (m[p].clone() * n[q].clone() - m[q].clone() * n[p].clone())
        })
    }

    pub fn mul(&self, u: &ComplexModelElement, v: &ComplexModelElement) -> ComplexModelElement {
        let hermitian = (0..3).fold(GaussianRational::zero(), |acc, k| acc + u.m[k].clone() * v.m[k].conj());
        let cross = self.cross(&u.m, &v.m);
        let b_bar = v.a.conj();
        ComplexModelElement {
            a: u.a.clone() * v.a.clone() - hermitian,
            m: std::array::from_fn(|k| {
                u.a.clone() * v.m[k].clone() + b_bar.clone() * u.m[k].clone() - cross[k].conj()
            }),
        }
    }

    fn agrees_with_doubling(&self) -> bool {
        (0..8).all(|i| {
            (0..8).all(|j| {
                let (x, y) = (Octonion::basis(i), Octonion::basis(j));
                self.from_model(&self.mul(&self.to_model(&x), &self.to_model(&y))) == oct_mul(&x, &y)
            })
        })
    }
}

/// Every sign convention under which the ℂ ⊕ ℂ³ product reproduces the
/// doubling product on all 64 basis pairs.
pub fn calibrate_model() -> Vec<ModelConvention> {
    ModelConvention::all().filter(ModelConvention::agrees_with_doubling).collect()
}

pub fn to_complex_model(x: &Octonion) -> ComplexModelElement {
    ModelConvention::CALIBRATED.to_model(x)
}

pub fn from_complex_model(u: &ComplexModelElement) -> Octonion {
    ModelConvention::CALIBRATED.from_model(u)
}

pub fn cx_mul(u: &ComplexModelElement, v: &ComplexModelElement) -> ComplexModelElement {
    ModelConvention::CALIBRATED.mul(u, v)
}
