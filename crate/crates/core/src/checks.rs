//! The invariant suite behind `g2orbit check`.
//!
//! Each check is exact unless its name says otherwise. Sample octonions come
//! from a fixed arithmetic pattern so the suite is reproducible without an
//! RNG.

use num_traits::{ToPrimitive, Zero};

use crate::cayley::{calibrate_model, check_automorphism, gamma1_matrix, gamma_matrix, ModelConvention, Octonion};
use crate::derivation::{
    automorphism_residual, exp_derivation_numeric, is_negative_definite, leibniz_system, orthogonality_residual,
    G2Basis, G2_DIM,
};
use crate::linalg::{ratio, Rational};
use crate::orbit::{Classifier, NamingConvention, OrbitType};
use crate::roots::{CartanElement, LengthClass, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckFn = fn() -> Result<String, String>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("leibniz-nullity", leibniz_nullity),
    ("cayley-laws", cayley_laws),
    ("gamma-automorphisms", gamma_automorphisms),
    ("model-agreement", model_agreement),
    ("jacobi", jacobi),
    ("killing-form", killing_form),
    ("root-system", root_system),
    ("fixed-subalgebras", fixed_subalgebras),
    ("named-classifications", named_classifications),
    ("census-radius-3", census),
    ("exp-bridge-numeric", exp_bridge),
];

pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome { name, passed, detail }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub(crate) fn sample_octonions(n: usize) -> Vec<Octonion> {
    (0..n as i64)
        .map(|i| {
            Octonion::new(std::array::from_fn(|k| {
                let k = k as i64;
                ratio((i * 7 + k * 13 + i * k) % 11 - 5, (i + 2 * k) % 4 + 1)
            }))
        })
        .collect()
}

fn leibniz_nullity() -> Result<String, String> {
    let rank = leibniz_system().rank();
    ensure(64 - rank == 14, || format!("nullity {}", 64 - rank))?;
    Ok(format!("rank {rank}, nullity {}", 64 - rank))
}

fn cayley_laws() -> Result<String, String> {
    let xs = sample_octonions(40);
    for (x, y) in xs.iter().zip(xs.iter().rev()) {
        ensure(x * &(x * y) == &(x * x) * y, || format!("left alternativity fails for {x}, {y}"))?;
        ensure(&(y * x) * x == y * &(x * x), || format!("right alternativity fails for {x}, {y}"))?;
        ensure((x * y).norm() == x.norm() * y.norm(), || format!("composition fails for {x}, {y}"))?;
        ensure((x * y).conj() == &y.conj() * &x.conj(), || format!("conjugation fails for {x}, {y}"))?;
    }
    Ok(format!("{} pairs", xs.len()))
}

fn gamma_automorphisms() -> Result<String, String> {
    for (name, m) in [("gamma", gamma_matrix()), ("gamma1", gamma1_matrix())] {
        check_automorphism(&m).map_err(|e| format!("{name}: {e}"))?;
        ensure(m.mul(&m) == crate::linalg::Matrix::identity(8), || format!("{name} is not an involution"))?;
    }
    Ok("both are involutive automorphisms".into())
}

fn model_agreement() -> Result<String, String> {
    let found = calibrate_model();
    ensure(found == vec![ModelConvention::CALIBRATED], || format!("calibration found {found:?}"))?;
    Ok("C+C^3 product matches the doubling product on 64 basis pairs".into())
}

fn jacobi_defect(g: &G2Basis) -> Option<(usize, usize, usize)> {
    let n = g.dim();
    let sparse: Vec<Vec<(usize, Rational)>> = (0..n * n)
        .map(|bc| {
            (0..n)
                .map(|l| (l, g.structure_constant(bc / n, bc % n, l).clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect()
        })
        .collect();
    // [a,[b,c]] in coordinates.
    let nested = |a: usize, b: usize, c: usize, acc: &mut Vec<Rational>| {
        for (l, v) in &sparse[b * n + c] {
            for (m, w) in &sparse[a * n + l] {
                acc[*m] += v * w;
            }
        }
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = vec![Rational::zero(); n];
                nested(i, j, k, &mut acc);
                nested(j, k, i, &mut acc);
                nested(k, i, j, &mut acc);
                if !acc.iter().all(Zero::is_zero) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

fn jacobi() -> Result<String, String> {
    let defect = jacobi_defect(G2Basis::shared());
    ensure(defect.is_none(), || format!("Jacobi fails at {defect:?}"))?;
    Ok("all index triples".into())
}

fn killing_form() -> Result<String, String> {
    let g = G2Basis::shared();
    ensure(is_negative_definite(g), || "Killing form is not negative definite".into())?;
    let gram = g.killing_gram();
    // B([z,x], y) + B(x, [z,y]) on basis triples.
    for z in 0..G2_DIM {
        for x in 0..G2_DIM {
            for y in 0..G2_DIM {
                let s = (0..G2_DIM).fold(Rational::zero(), |acc, k| {
                    acc + g.structure_constant(z, x, k) * &gram[(k, y)] + g.structure_constant(z, y, k) * &gram[(x, k)]
                });
                ensure(s.is_zero(), || format!("ad-invariance fails at ({z},{x},{y})"))?;
            }
        }
    }
    Ok("negative definite and ad-invariant".into())
}

fn root_system() -> Result<String, String> {
    let rs = RootSystem::shared();
    ensure(rs.roots().len() == 12, || format!("{} roots", rs.roots().len()))?;
    ensure(rs.count(LengthClass::Short) == 6 && rs.count(LengthClass::Long) == 6, || {
        "short/long split is not 6/6".into()
    })?;
    ensure(rs.length_ratio() == Rational::from_integer(3.into()), || {
        format!("length ratio {}", rs.length_ratio())
    })?;
    for r in rs.roots() {
        ensure(rs.reflection_permutes_roots(r), || format!("reflection in {r} does not permute the roots"))?;
    }
    Ok("12 roots, 6 short + 6 long, ratio 3, reflections permute".into())
}

fn fixed_subalgebras() -> Result<String, String> {
    let g = G2Basis::shared();
    let mut dims = Vec::new();
    // gamma1 is conjugate to gamma in G2, so both centralizers are su(2)+su(2).
    for (name, m, dim) in [("gamma", gamma_matrix(), 6), ("gamma1", gamma1_matrix(), 6)] {
        let fixed = g.fixed_subalgebra(&m).map_err(|e| e.to_string())?;
        let s = g.subalgebra_structure(&fixed).map_err(|e| e.to_string())?;
        ensure((s.dim, s.derived_dim, s.center_dim) == (dim, dim, 0), || {
            format!("{name}: dim {} derived {} center {}", s.dim, s.derived_dim, s.center_dim)
        })?;
        dims.push(s.dim);
    }
    Ok(format!("dims {dims:?}, both semisimple"))
}

fn named_classifications() -> Result<String, String> {
    let c = Classifier::shared(NamingConvention::default());
    let cases = [
        ([0, 0, 0], OrbitType::Full),
        ([1, 2, -3], OrbitType::Torus),
        ([1, 0, -1], OrbitType::Dim4Short),
        ([1, 1, -2], OrbitType::Dim4Long),
    ];
    for (t, expected) in cases {
        let tau = CartanElement::from_integers(t).map_err(|e| e.to_string())?;
        let r = c.classify(&tau).map_err(|e| e.to_string())?;
        ensure(r.orbit_type == expected && r.stabilizer_dim == expected.stabilizer_dim(), || {
            format!("{t:?} classified as {} (dim {})", r.orbit_type, r.stabilizer_dim)
        })?;
    }
    Ok("four named triples".into())
}

fn census() -> Result<String, String> {
    let c = crate::orbit::scan(3);
    ensure(c.only_expected_dims(), || format!("unexpected stabilizers {:?}", c.anomalies()))?;
    for t in OrbitType::ALL {
        ensure(c.count(t) > 0, || format!("{t} missing at radius 3"))?;
    }
    ensure(c.count(OrbitType::Full) == 1, || "FULL occurs away from 0".into())?;
    Ok(format!("{} points, all four types", c.entries.len()))
}

fn exp_bridge() -> Result<String, String> {
    let g = G2Basis::shared();
    let xs = sample_octonions(4);
    let unit = |o: &Octonion| -> [f64; 8] {
        let v: Vec<f64> = o.coords().iter().map(|c| c.to_f64().expect("finite")).collect();
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        std::array::from_fn(|k| v[k] / n)
    };
    let (x, y) = (unit(&xs[1]), unit(&xs[2]));
    let mut worst = 0f64;
    for (i, d) in g.basis().iter().enumerate() {
        let t = -2.0 + 4.0 * i as f64 / (G2_DIM - 1) as f64;
        let alpha = exp_derivation_numeric(d, t);
        worst = worst.max(orthogonality_residual(&alpha)).max(automorphism_residual(&alpha, &x, &y));
    }
    ensure(worst < 1e-9, || format!("residual {worst:e}"))?;
    Ok(format!("max residual {worst:.2e}"))
}
