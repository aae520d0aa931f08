//! Adjoint orbit types of G₂ on 𝔤₂.
//!
//! Every element of 𝔤₂ is conjugate into the fixed Cartan subalgebra, so it
//! is enough to classify Cartan elements. The stabilizer of `H_τ` has Lie
//! algebra `ker ad(H_τ)`, of dimension `2 + #{roots vanishing at τ}`. The
//! possible vanishing sets are: none, one ± pair (short or long), or all.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::derivation::{Derivation, G2Basis, SubalgebraSummary};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::roots::{cartan_element, vanishing_roots, CartanElement, LengthClass, Root, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrbitType {
    Full,
    Torus,
    #[serde(rename = "DIM4_SHORT")]
    Dim4Short,
    #[serde(rename = "DIM4_LONG")]
    Dim4Long,
}

impl OrbitType {
    pub const ALL: [OrbitType; 4] = [OrbitType::Full, OrbitType::Torus, OrbitType::Dim4Short, OrbitType::Dim4Long];

    pub fn as_str(self) -> &'static str {
        match self {
            OrbitType::Full => "FULL",
            OrbitType::Torus => "TORUS",
            OrbitType::Dim4Short => "DIM4_SHORT",
            OrbitType::Dim4Long => "DIM4_LONG",
        }
    }

    pub fn stabilizer_dim(self) -> usize {
        match self {
            OrbitType::Full => 14,
            OrbitType::Torus => 2,
            OrbitType::Dim4Short | OrbitType::Dim4Long => 4,
        }
    }

    pub fn label(self, convention: NamingConvention) -> &'static str {
        const SP1_U1: &str = "G2/((Sp(1)xU(1))/Z2)";
        const U1_SP1: &str = "G2/((U(1)xSp(1))/Z2)";
        match (self, convention) {
            (OrbitType::Full, _) => "G2/G2",
            (OrbitType::Torus, _) => "G2/(U(1)xU(1))",
            (OrbitType::Dim4Short, NamingConvention::ShortSp1U1)
            | (OrbitType::Dim4Long, NamingConvention::ShortU1Sp1) => SP1_U1,
            (OrbitType::Dim4Short, NamingConvention::ShortU1Sp1)
            | (OrbitType::Dim4Long, NamingConvention::ShortSp1U1) => U1_SP1,
        }
    }
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of the two rank-one stabilizer names goes with the short-root class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum NamingConvention {
    #[default]
    ShortSp1U1,
    ShortU1Sp1,
}

impl NamingConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            NamingConvention::ShortSp1U1 => "short=sp1xu1",
            NamingConvention::ShortU1Sp1 => "short=u1xsp1",
        }
    }
}

impl FromStr for NamingConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "short=sp1xu1" => Ok(NamingConvention::ShortSp1U1),
            "short=u1xsp1" => Ok(NamingConvention::ShortU1Sp1),
            other => Err(Error::InvalidInput(format!(
                "unknown convention {other:?}; expected short=sp1xu1 or short=u1xsp1"
            ))),
        }
    }
}

impl fmt::Display for NamingConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub tau: CartanElement,
    pub stabilizer_dim: usize,
    pub orbit_type: OrbitType,
    pub orbit_label: String,
    pub vanishing: Vec<Root>,
    pub structure: SubalgebraSummary,
    pub convention: NamingConvention,
}

impl ClassificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "tau": self.tau.tau_strings(),
            "stabilizer_dim": self.stabilizer_dim,
            "orbit_type": self.orbit_type,
            "orbit_label": self.orbit_label,
            "vanishing_roots": self.vanishing.iter().map(Root::coeffs).collect::<Vec<_>>(),
            "structure": self.structure,
            "convention": self.convention.as_str(),
        })
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tau            {}", self.tau)?;
        writeln!(f, "orbit type     {}", self.orbit_type)?;
        writeln!(f, "orbit          {}", self.orbit_label)?;
        writeln!(f, "stabilizer dim {}", self.stabilizer_dim)?;
        let vanishing: Vec<String> = self
            .vanishing
            .iter()
            .map(|r| {
                let [a, b, c] = r.coeffs();
                format!("({a},{b},{c}) {}", r.length_class().as_str())
            })
            .collect();
        writeln!(f, "vanishing      [{}]", vanishing.join(", "))?;
        writeln!(
            f,
            "centralizer    dim {} derived {} center {}",
            self.structure.dim, self.structure.derived_dim, self.structure.center_dim
        )?;
        write!(f, "convention     {}", self.convention)
    }
}

/// Coordinates (in `b`) of a basis of `ker ad(H_τ)`.
fn centralizer_coords(tau: &CartanElement, b: &G2Basis) -> Result<Vec<Vec<Rational>>> {
    Ok(b.adjoint_matrix(&cartan_element(tau))?.kernel_basis())
}

/// Canonical basis of the centralizer of `H_τ` in 𝔤₂.
pub fn centralizer(tau: &CartanElement, b: &G2Basis) -> Result<Vec<Derivation>> {
    Ok(centralizer_coords(tau, b)?.iter().map(|c| b.combine(c)).collect())
}

/// Orbit type from the stabilizer dimension and the vanishing roots, or an
/// explanation of why the pair is inconsistent.
fn orbit_type_of(stabilizer_dim: usize, vanishing: &[Root]) -> std::result::Result<OrbitType, String> {
    let t = match (stabilizer_dim, vanishing) {
        (14, v) if v.len() == 12 => OrbitType::Full,
        (2, []) => OrbitType::Torus,
        (4, [a, b]) if a.length_class() == b.length_class() => match a.length_class() {
            LengthClass::Short => OrbitType::Dim4Short,
            LengthClass::Long => OrbitType::Dim4Long,
        },
        (d, v) => {
            return Err(format!(
                "stabilizer dimension {d} with {} vanishing roots does not match any orbit type",
                v.len()
            ))
        }
    };
    Ok(t)
}

pub struct Classifier<'a> {
    algebra: &'a G2Basis,
    roots: &'a RootSystem,
    convention: NamingConvention,
}

impl Classifier<'static> {
    pub fn shared(convention: NamingConvention) -> Self {
        Self::new(G2Basis::shared(), RootSystem::shared(), convention)
    }
}

impl<'a> Classifier<'a> {
    pub fn new(algebra: &'a G2Basis, roots: &'a RootSystem, convention: NamingConvention) -> Self {
        Self {
            algebra,
            roots,
            convention,
        }
    }

    pub fn centralizer(&self, tau: &CartanElement) -> Result<Vec<Derivation>> {
        centralizer(tau, self.algebra)
    }

    /// Full report; [`Error::Internal`] if the stabilizer dimension is not
    /// one of 2, 4, 14.
    pub fn classify(&self, tau: &CartanElement) -> Result<ClassificationReport> {
        let coords = centralizer_coords(tau, self.algebra)?;
        let stabilizer_dim = coords.len();
        let vanishing = vanishing_roots(tau, self.roots.roots());
        let orbit_type = orbit_type_of(stabilizer_dim, &vanishing).map_err(Error::Internal)?;
        let structure = self.algebra.structure_of_coords(&coords)?;
        Ok(ClassificationReport {
            tau: tau.clone(),
            stabilizer_dim,
            orbit_type,
            orbit_label: orbit_type.label(self.convention).to_string(),
            vanishing,
            structure,
            convention: self.convention,
        })
    }

    /// Stabilizer dimension and orbit type, without the structure summary.
    pub fn orbit_type(&self, tau: &CartanElement) -> Result<(usize, std::result::Result<OrbitType, String>)> {
        let dim = self.algebra.adjoint_matrix(&cartan_element(tau))?.kernel_basis().len();
        let vanishing = vanishing_roots(tau, self.roots.roots());
        Ok((dim, orbit_type_of(dim, &vanishing)))
    }

    /// Classifies every integer point with `Στ = 0` and `max|τᵢ| ≤ radius`.
    pub fn scan(&self, radius: u32) -> Census {
        let r = i64::from(radius);
        let points: Vec<[i64; 3]> = (-r..=r)
            .flat_map(|a| (-r..=r).map(move |b| [a, b, -a - b]))
            .filter(|p| p[2].abs() <= r)
            .collect();
        let entries: Vec<CensusEntry> = points
            .par_iter()
            .map(|&p| {
                let tau = CartanElement::from_integers(p).expect("lattice points sum to zero");
                match self.orbit_type(&tau) {
                    Ok((dim, Ok(t))) => CensusEntry {
                        tau: p,
                        stabilizer_dim: dim,
                        orbit_type: Some(t),
                    },
                    Ok((dim, Err(_))) => CensusEntry {
                        tau: p,
                        stabilizer_dim: dim,
                        orbit_type: None,
                    },
                    Err(_) => CensusEntry {
                        tau: p,
                        stabilizer_dim: 0,
                        orbit_type: None,
                    },
                }
            })
            .collect();
        let mut counts: BTreeMap<OrbitType, usize> = OrbitType::ALL.iter().map(|&t| (t, 0)).collect();
        for t in entries.iter().filter_map(|e| e.orbit_type) {
            *counts.entry(t).or_default() += 1;
        }
        Census { radius, entries, counts }
    }
}

/// Classification with the default naming convention.
pub fn classify(tau: &CartanElement) -> Result<ClassificationReport> {
    Classifier::shared(NamingConvention::default()).classify(tau)
}

pub fn scan(radius: u32) -> Census {
    Classifier::shared(NamingConvention::default()).scan(radius)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub tau: [i64; 3],
    pub stabilizer_dim: usize,
    /// `None` when the stabilizer dimension fits no orbit type.
    pub orbit_type: Option<OrbitType>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub radius: u32,
    /// Lattice points in lexicographic order.
    pub entries: Vec<CensusEntry>,
    pub counts: BTreeMap<OrbitType, usize>,
}

impl Census {
    pub fn count(&self, t: OrbitType) -> usize {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    pub fn anomalies(&self) -> Vec<&CensusEntry> {
        self.entries.iter().filter(|e| e.orbit_type.is_none()).collect()
    }

    /// True when every stabilizer dimension was 2, 4 or 14.
    pub fn only_expected_dims(&self) -> bool {
        self.anomalies().is_empty()
    }

    pub fn to_json(&self) -> Value {
        let counts: serde_json::Map<String, Value> = self
            .counts
            .iter()
            .map(|(t, n)| (t.as_str().to_string(), json!(n)))
            .collect();
        json!({
            "radius": self.radius,
            "points": self.entries,
            "counts": counts,
            "only_expected_dims": self.only_expected_dims(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau1,tau2,tau3,stabilizer_dim,orbit_type\n");
        for e in &self.entries {
            let [a, b, c] = e.tau;
            let t = e.orbit_type.map_or("UNKNOWN", OrbitType::as_str);
            out.push_str(&format!("{a},{b},{c},{},{t}\n", e.stabilizer_dim));
        }
        out
    }
}

/// Parses `p/q,p/q,p/q`; with `project` the mean is subtracted, otherwise a
/// nonzero sum is rejected.
pub fn parse_tau(s: &str, project: bool) -> Result<CartanElement> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!("expected three comma-separated rationals, got {s:?}")));
    }
    let values: Vec<Rational> = parts
        .iter()
        .map(|p| crate::linalg::parse_rational(p))
        .collect::<Result<_>>()?;
    let tau: [Rational; 3] = values.try_into().expect("three values");
    if project {
        Ok(CartanElement::projected(tau))
    } else {
        CartanElement::new(tau)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(t: [i64; 3]) -> CartanElement {
        CartanElement::from_integers(t).unwrap()
    }

    #[test]
    fn centralizer_dimensions() {
        let g = G2Basis::shared();
        assert_eq!(centralizer(&tau([0, 0, 0]), g).unwrap().len(), 14);
        assert_eq!(centralizer(&tau([1, 2, -3]), g).unwrap().len(), 2);
        assert_eq!(centralizer(&tau([1, 0, -1]), g).unwrap().len(), 4);
        assert_eq!(centralizer(&tau([1, 1, -2]), g).unwrap().len(), 4);
    }

    #[test]
    fn named_classifications() {
        let full = classify(&tau([0, 0, 0])).unwrap();
        assert_eq!((full.orbit_type, full.stabilizer_dim), (OrbitType::Full, 14));
        assert_eq!(full.orbit_label, "G2/G2");

        let torus = classify(&tau([1, 2, -3])).unwrap();
        assert_eq!((torus.orbit_type, torus.stabilizer_dim), (OrbitType::Torus, 2));
        assert_eq!(torus.orbit_label, "G2/(U(1)xU(1))");
        assert!(torus.structure.is_abelian);

        let short = classify(&tau([1, 0, -1])).unwrap();
        assert_eq!(short.orbit_type, OrbitType::Dim4Short);
        assert_eq!((short.structure.dim, short.structure.derived_dim, short.structure.center_dim), (4, 3, 1));
        assert_eq!(short.orbit_label, "G2/((Sp(1)xU(1))/Z2)");

        let long = classify(&tau([2, -1, -1])).unwrap();
        assert_eq!(long.orbit_type, OrbitType::Dim4Long);
        assert_eq!(long.orbit_label, "G2/((U(1)xSp(1))/Z2)");
        assert_eq!(classify(&tau([1, 1, -2])).unwrap().orbit_type, OrbitType::Dim4Long);
    }

    #[test]
    fn convention_swaps_rank_one_labels() {
        let c = Classifier::shared(NamingConvention::ShortU1Sp1);
        assert_eq!(c.classify(&tau([1, 0, -1])).unwrap().orbit_label, "G2/((U(1)xSp(1))/Z2)");
        assert_eq!(c.classify(&tau([1, 1, -2])).unwrap().orbit_label, "G2/((Sp(1)xU(1))/Z2)");
        assert_eq!(c.classify(&tau([0, 0, 0])).unwrap().orbit_label, "G2/G2");
        assert!("short=whatever".parse::<NamingConvention>().is_err());
        assert_eq!("short=u1xsp1".parse::<NamingConvention>().unwrap(), NamingConvention::ShortU1Sp1);
    }

    #[test]
    fn parse_tau_rules() {
        assert_eq!(parse_tau("1,0,-1", false).unwrap(), tau([1, 0, -1]));
        assert!(matches!(parse_tau("1,1,1", false), Err(Error::SumNonzero(_))));
        assert!(parse_tau("1,1,1", true).unwrap().is_zero());
        assert!(matches!(parse_tau("1,2", false), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_tau("1,a,2", false), Err(Error::ParseRational(_))));
        let half = parse_tau("1/2,-1/4,-1/4", false).unwrap();
        assert_eq!(classify(&half).unwrap().orbit_type, OrbitType::Dim4Long);
    }

    #[test]
    fn inconsistent_pairs_are_rejected() {
        assert!(orbit_type_of(6, &[]).is_err());
        assert!(orbit_type_of(4, &[]).is_err());
        assert!(orbit_type_of(2, &[]).is_ok());
    }

    #[test]
    fn radius_one_census() {
        let c = scan(1);
        assert_eq!(c.entries.len(), 7);
        assert_eq!(c.count(OrbitType::Full), 1);
        // Every nonzero point is a permutation of (1, 0, −1): a coordinate
        // vanishes but no two coordinates agree.
        assert_eq!(c.count(OrbitType::Dim4Short), 6);
        assert_eq!(c.count(OrbitType::Dim4Long), 0);
        assert_eq!(c.count(OrbitType::Torus), 0);
        assert!(c.only_expected_dims());
        let taus: Vec<[i64; 3]> = c.entries.iter().map(|e| e.tau).collect();
        let mut sorted = taus.clone();
        sorted.sort();
        assert_eq!(taus, sorted);
    }

    #[test]
    fn census_csv_layout() {
        let csv = scan(1).to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("tau1,tau2,tau3,stabilizer_dim,orbit_type"));
        assert_eq!(lines.next(), Some("-1,0,1,4,DIM4_SHORT"));
        assert_eq!(csv.lines().count(), 8);
    }

    #[test]
    fn report_json_fields() {
        let v = classify(&tau([1, 0, -1])).unwrap().to_json();
        assert_eq!(v["tau"], json!(["1", "0", "-1"]));
        assert_eq!(v["stabilizer_dim"], json!(4));
        assert_eq!(v["orbit_type"], json!("DIM4_SHORT"));
        assert_eq!(v["vanishing_roots"], json!([[0, 1, 0], [1, 0, 1]]));
        assert_eq!(v["structure"], json!({"dim": 4, "derived_dim": 3, "center_dim": 1}));
        assert_eq!(v["convention"], json!("short=sp1xu1"));
    }
}
