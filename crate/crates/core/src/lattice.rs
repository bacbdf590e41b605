//! Intersection theory on the two rank-2 unimodular Néron–Severi lattices.
//!
//! A fake quadric has `q = p_g = 0` and `K² = 8`; its numerical classes form
//! a unimodular lattice of signature (1,1), which is either the hyperbolic
//! plane `U` (even type) or `<1> ⊕ <-1>` (odd type). Classes are written
//! `xH + yF` in a fixed basis `(H, F)` of the chosen lattice.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the two unimodular rank-2 lattices the Néron–Severi group is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeType {
    /// Hyperbolic plane: `H² = F² = 0`, `H·F = 1`.
    Even,
    /// Diagonal `<1> ⊕ <-1>`: `H² = 1`, `F² = -1`, `H·F = 0`.
    Odd,
}

impl LatticeType {
    pub const ALL: [LatticeType; 2] = [LatticeType::Even, LatticeType::Odd];

    pub fn gram(self) -> [[i64; 2]; 2] {
        match self {
            LatticeType::Even => [[0, 1], [1, 0]],
            LatticeType::Odd => [[1, 0], [0, -1]],
        }
    }

    pub fn gram_determinant(self) -> i64 {
        let g = self.gram();
        g[0][0] * g[1][1] - g[0][1] * g[1][0]
    }

    /// `aᵀ G b` for this lattice's Gram matrix `G`.
    pub fn pair(self, a: &DivisorClass, b: &DivisorClass) -> BigInt {
        let g = self.gram();
        let (ax, ay, bx, by) = (&a.x, &a.y, &b.x, &b.y);
        ax * bx * g[0][0] + ax * by * g[0][1] + ay * bx * g[1][0] + ay * by * g[1][1]
    }

    /// The same pairing on rational coordinates.
    pub fn pair_rational(self, a: &RationalClass, b: &RationalClass) -> BigRational {
        let g = self.gram();
        let entry = |v: i64| BigRational::from_integer(BigInt::from(v));
        &a.x * &b.x * entry(g[0][0])
            + &a.x * &b.y * entry(g[0][1])
            + &a.y * &b.x * entry(g[1][0])
            + &a.y * &b.y * entry(g[1][1])
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LatticeType::Even => "even",
            LatticeType::Odd => "odd",
        }
    }
}

impl fmt::Display for LatticeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LatticeType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even" => Ok(LatticeType::Even),
            "odd" => Ok(LatticeType::Odd),
            other => Err(format!(
                "unknown lattice type {other:?} (expected \"even\" or \"odd\")"
            )),
        }
    }
}

/// A numerical class `xH + yF`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    #[serde(with = "crate::json::int")]
    pub x: BigInt,
    #[serde(with = "crate::json::int")]
    pub y: BigInt,
}

impl DivisorClass {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        DivisorClass {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        DivisorClass::new(0, 0)
    }

    /// The basis class `H = (1, 0)`.
    pub fn h() -> Self {
        DivisorClass::new(1, 0)
    }

    /// The basis class `F = (0, 1)`.
    pub fn f() -> Self {
        DivisorClass::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        DivisorClass {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    /// Renders the class in the `(H, F)` basis, e.g. `3H - F`.
    pub fn basis_notation(&self) -> String {
        fn term(coeff: &BigInt, sym: &str) -> String {
            if coeff.is_one() {
                sym.to_string()
            } else if *coeff == -BigInt::one() {
                format!("-{sym}")
            } else {
                format!("{coeff}{sym}")
            }
        }
        match (self.x.is_zero(), self.y.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => term(&self.x, "H"),
            (true, false) => term(&self.y, "F"),
            (false, false) => {
                let head = term(&self.x, "H");
                if self.y < BigInt::zero() {
                    format!("{head} - {}", term(&-&self.y, "F"))
                } else {
                    format!("{head} + {}", term(&self.y, "F"))
                }
            }
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Parses `"x,y"`; whitespace around either coordinate is ignored and an
/// optional pair of parentheses is accepted.
impl FromStr for DivisorClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .unwrap_or(inner);
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected a class of the form \"x,y\", got {s:?}"))?;
        let parse = |part: &str| {
            part.trim().parse::<BigInt>().map_err(|_| {
                format!(
                    "invalid integer coordinate {:?} in class {s:?}",
                    part.trim()
                )
            })
        };
        Ok(DivisorClass::new(parse(x)?, parse(y)?))
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(&BigInt::from(self))
    }
}

/// A class with rational coordinates. Only produced by
/// [`embed_even_into_odd`], whose image is half-integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalClass {
    #[serde(with = "crate::json::rational")]
    pub x: BigRational,
    #[serde(with = "crate::json::rational")]
    pub y: BigRational,
}

impl RationalClass {
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// The integral class, when both denominators are 1.
    pub fn to_integral(&self) -> Option<DivisorClass> {
        self.is_integral().then(|| DivisorClass {
            x: self.x.to_integer(),
            y: self.y.to_integer(),
        })
    }
}

impl From<&DivisorClass> for RationalClass {
    fn from(d: &DivisorClass) -> Self {
        RationalClass {
            x: BigRational::from_integer(d.x.clone()),
            y: BigRational::from_integer(d.y.clone()),
        }
    }
}

impl fmt::Display for RationalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Serialized shape of [`SurfaceModel`]; deserialization re-derives the
/// invariants from the lattice type and rejects any disagreement.
#[derive(Serialize, Deserialize)]
struct SurfaceModelRepr {
    lattice: LatticeType,
    canonical: DivisorClass,
    k_squared: i64,
    chi_structure_sheaf: i64,
    c2: i64,
    delta: i64,
    irregularity: i64,
    geometric_genus: i64,
}

/// A fake quadric at the level of numerical invariants.
///
/// The only free choice is the lattice type; everything else is fixed and
/// checked when the model is built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SurfaceModelRepr", try_from = "SurfaceModelRepr")]
pub struct SurfaceModel {
    lattice: LatticeType,
    canonical: DivisorClass,
}

impl SurfaceModel {
    pub const K_SQUARED: i64 = 8;
    pub const CHI_STRUCTURE_SHEAF: i64 = 1;
    pub const C2: i64 = 4;
    pub const IRREGULARITY: i64 = 0;
    pub const GEOMETRIC_GENUS: i64 = 0;
    /// `3 c₂ - c₁²`.
    pub const DELTA: i64 = 3 * Self::C2 - Self::K_SQUARED;

    pub fn new(lattice: LatticeType) -> Self {
        let canonical = match lattice {
            LatticeType::Even => DivisorClass::new(2, 2),
            LatticeType::Odd => DivisorClass::new(3, -1),
        };
        let model = SurfaceModel { lattice, canonical };
        // Noether: χ(O) = (K² + c₂) / 12.
        assert_eq!(Self::CHI_STRUCTURE_SHEAF * 12, Self::K_SQUARED + Self::C2);
        assert_eq!(
            Self::CHI_STRUCTURE_SHEAF,
            1 - Self::IRREGULARITY + Self::GEOMETRIC_GENUS
        );
        assert_eq!(lattice.gram_determinant(), -1);
        assert_eq!(
            model.intersect(&model.canonical, &model.canonical),
            BigInt::from(Self::K_SQUARED)
        );
        model
    }

    pub fn even() -> Self {
        SurfaceModel::new(LatticeType::Even)
    }

    pub fn odd() -> Self {
        SurfaceModel::new(LatticeType::Odd)
    }

    pub fn lattice(&self) -> LatticeType {
        self.lattice
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> BigInt {
        self.lattice.pair(a, b)
    }

    pub fn self_intersection(&self, d: &DivisorClass) -> BigInt {
        self.intersect(d, d)
    }

    /// `K · D`.
    pub fn canonical_degree(&self, d: &DivisorClass) -> BigInt {
        self.intersect(&self.canonical, d)
    }
}

impl From<SurfaceModel> for SurfaceModelRepr {
    fn from(m: SurfaceModel) -> Self {
        SurfaceModelRepr {
            lattice: m.lattice,
            canonical: m.canonical,
            k_squared: SurfaceModel::K_SQUARED,
            chi_structure_sheaf: SurfaceModel::CHI_STRUCTURE_SHEAF,
            c2: SurfaceModel::C2,
            delta: SurfaceModel::DELTA,
            irregularity: SurfaceModel::IRREGULARITY,
            geometric_genus: SurfaceModel::GEOMETRIC_GENUS,
        }
    }
}

impl TryFrom<SurfaceModelRepr> for SurfaceModel {
    type Error = String;

    fn try_from(repr: SurfaceModelRepr) -> std::result::Result<Self, Self::Error> {
        let model = SurfaceModel::new(repr.lattice);
        let expected = SurfaceModelRepr::from(model.clone());
        let fields = [
            ("k_squared", repr.k_squared, expected.k_squared),
            (
                "chi_structure_sheaf",
                repr.chi_structure_sheaf,
                expected.chi_structure_sheaf,
            ),
            ("c2", repr.c2, expected.c2),
            ("delta", repr.delta, expected.delta),
            ("irregularity", repr.irregularity, expected.irregularity),
            (
                "geometric_genus",
                repr.geometric_genus,
                expected.geometric_genus,
            ),
        ];
        for (name, got, want) in fields {
            if got != want {
                return Err(format!(
                    "{name} must be {want} on a fake quadric, got {got}"
                ));
            }
        }
        if repr.canonical != expected.canonical {
            return Err(format!(
                "canonical class of the {} model is {}, got {}",
                repr.lattice, expected.canonical, repr.canonical
            ));
        }
        Ok(model)
    }
}

pub fn intersect(model: &SurfaceModel, a: &DivisorClass, b: &DivisorClass) -> BigInt {
    model.intersect(a, b)
}

/// `K = 2H + 2F` on the even model, `K = 3H - F` on the odd model.
pub fn canonical_class(model: &SurfaceModel) -> DivisorClass {
    model.canonical.clone()
}

/// The isometric embedding of the even lattice into the odd lattice with
/// `½(H + F)` adjoined: `H ↦ H - F`, `F ↦ ½(H + F)`.
///
/// The input is read in the even basis, the output is in odd coordinates.
pub fn embed_even_into_odd(d: &DivisorClass) -> RationalClass {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let x = BigRational::from_integer(d.x.clone());
    let y_half = BigRational::from_integer(d.y.clone()) * half;
    RationalClass {
        x: &x + &y_half,
        y: -x + y_half,
    }
}

/// Outcome of checking the tangent-bundle splitting `T = L₁ ⊕ L₂` of an
/// unmixed odd-type fake quadric against the lattice arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentSplitting {
    pub l1: DivisorClass,
    pub l2: DivisorClass,
    pub sum_is_canonical: bool,
    #[serde(with = "crate::json::int")]
    pub l1_squared: BigInt,
    #[serde(with = "crate::json::int")]
    pub l2_squared: BigInt,
    #[serde(with = "crate::json::int")]
    pub l1_dot_l2: BigInt,
    pub c1_squared: i64,
    pub c2: i64,
    /// `L₁ + L₂ = K`, `L₁² = L₂² = 0` and `2 L₁·L₂ = c₁² = 2 c₂`.
    pub holds: bool,
}

pub fn tangent_splitting_check(model: &SurfaceModel) -> Result<TangentSplitting> {
    if model.lattice() != LatticeType::Odd {
        return Err(Error::WrongLattice {
            operation: "tangent_splitting_check",
            expected: LatticeType::Odd,
            found: model.lattice(),
        });
    }
    let l1 = DivisorClass::new(1, 1);
    let l2 = DivisorClass::new(2, -2);
    let sum_is_canonical = &(&l1 + &l2) == model.canonical();
    let l1_squared = model.self_intersection(&l1);
    let l2_squared = model.self_intersection(&l2);
    let l1_dot_l2 = model.intersect(&l1, &l2);
    let c1_squared = SurfaceModel::K_SQUARED;
    let c2 = SurfaceModel::C2;
    let holds = sum_is_canonical
        && l1_squared.is_zero()
        && l2_squared.is_zero()
        && &l1_dot_l2 * 2 == BigInt::from(c1_squared)
        && c1_squared == 2 * c2;
    Ok(TangentSplitting {
        l1,
        l2,
        sum_is_canonical,
        l1_squared,
        l2_squared,
        l1_dot_l2,
        c1_squared,
        c2,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: i64, y: i64) -> DivisorClass {
        DivisorClass::new(x, y)
    }

    #[test]
    fn gram_matrices_are_unimodular() {
        assert_eq!(LatticeType::Even.gram(), [[0, 1], [1, 0]]);
        assert_eq!(LatticeType::Odd.gram(), [[1, 0], [0, -1]]);
        for lattice in LatticeType::ALL {
            assert_eq!(lattice.gram_determinant(), -1);
        }
    }

    #[test]
    fn intersect_examples() {
        let even = SurfaceModel::even();
        let odd = SurfaceModel::odd();
        assert_eq!(
            intersect(&even, &DivisorClass::h(), &DivisorClass::f()),
            1.into()
        );
        assert_eq!(intersect(&odd, &c(3, -1), &c(3, -1)), 8.into());
        for model in [&even, &odd] {
            assert_eq!(intersect(model, &DivisorClass::zero(), &c(7, -3)), 0.into());
        }
    }

    #[test]
    fn canonical_class_examples() {
        let even = SurfaceModel::even();
        let odd = SurfaceModel::odd();
        assert_eq!(canonical_class(&even), c(2, 2));
        assert_eq!(even.self_intersection(&canonical_class(&even)), 8.into());
        assert_eq!(canonical_class(&odd), c(3, -1));
        assert_eq!(odd.self_intersection(&canonical_class(&odd)), 8.into());
        assert_eq!(intersect(&odd, &canonical_class(&odd), &c(1, 1)), 4.into());
    }

    #[test]
    fn invariants_are_fixed() {
        assert_eq!(SurfaceModel::DELTA, 4);
        let json = serde_json::to_value(SurfaceModel::odd()).unwrap();
        assert_eq!(json["lattice"], "odd");
        assert_eq!(json["delta"], 4);
        assert_eq!(json["canonical"], serde_json::json!({"x": 3, "y": -1}));
        let back: SurfaceModel = serde_json::from_value(json).unwrap();
        assert_eq!(back, SurfaceModel::odd());
    }

    #[test]
    fn tampered_model_is_rejected() {
        let mut json = serde_json::to_value(SurfaceModel::even()).unwrap();
        json["k_squared"] = 9.into();
        assert!(serde_json::from_value::<SurfaceModel>(json).is_err());
        let mut json = serde_json::to_value(SurfaceModel::even()).unwrap();
        json["canonical"] = serde_json::json!({"x": 3, "y": -1});
        assert!(serde_json::from_value::<SurfaceModel>(json).is_err());
    }

    #[test]
    fn embedding_examples() {
        let half = BigRational::new(1.into(), 2.into());
        let h = embed_even_into_odd(&DivisorClass::h());
        assert_eq!(h.to_integral(), Some(c(1, -1)));
        assert!(LatticeType::Odd.pair_rational(&h, &h).is_zero());

        let f = embed_even_into_odd(&DivisorClass::f());
        assert_eq!(
            f,
            RationalClass {
                x: half.clone(),
                y: half
            }
        );
        assert!(!f.is_integral());
        assert!(LatticeType::Odd.pair_rational(&f, &f).is_zero());

        let k = embed_even_into_odd(&canonical_class(&SurfaceModel::even()));
        assert_eq!(k.to_integral(), Some(canonical_class(&SurfaceModel::odd())));
    }

    #[test]
    fn embedding_preserves_pairing_on_box() {
        use num_traits::ToPrimitive;
        // Every image is half-integral, so doubling gives integer vectors and
        // the odd pairing of doubled images must be 4x the even pairing.
        let classes: Vec<(i64, i64)> = (-20..=20)
            .flat_map(|x| (-20..=20).map(move |y| (x, y)))
            .collect();
        let doubled: Vec<(i64, i64)> = classes
            .iter()
            .map(|&(x, y)| {
                let img = embed_even_into_odd(&c(x, y));
                let two = BigRational::from_integer(2.into());
                let dx = (&img.x * &two).to_integer().to_i64().unwrap();
                let dy = (&img.y * &two).to_integer().to_i64().unwrap();
                assert_eq!(BigRational::from_integer(dx.into()), &img.x * &two);
                assert_eq!(BigRational::from_integer(dy.into()), &img.y * &two);
                (dx, dy)
            })
            .collect();
        for (&(ax, ay), &(fax, fay)) in classes.iter().zip(&doubled) {
            for (&(bx, by), &(fbx, fby)) in classes.iter().zip(&doubled) {
                let even = ax * by + ay * bx;
                let odd = fax * fbx - fay * fby;
                assert_eq!(4 * even, odd, "pairing of ({ax},{ay}) and ({bx},{by})");
            }
        }
    }

    #[test]
    fn tangent_splitting() {
        let report = tangent_splitting_check(&SurfaceModel::odd()).unwrap();
        assert_eq!(report.l1, c(1, 1));
        assert_eq!(report.l2, c(2, -2));
        assert_eq!(report.l1_dot_l2, 4.into());
        assert_eq!(report.l1_squared, 0.into());
        assert!(report.sum_is_canonical);
        assert!(report.holds);
        assert!(matches!(
            tangent_splitting_check(&SurfaceModel::even()),
            Err(Error::WrongLattice { .. })
        ));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3,-1".parse::<DivisorClass>().unwrap(), c(3, -1));
        assert_eq!(" ( -2 , 5 ) ".parse::<DivisorClass>().unwrap(), c(-2, 5));
        assert!("3".parse::<DivisorClass>().is_err());
        assert!("a,1".parse::<DivisorClass>().is_err());
        assert_eq!(c(3, -1).basis_notation(), "3H - F");
        assert_eq!(c(0, 2).basis_notation(), "2F");
        assert_eq!(c(1, 1).basis_notation(), "H + F");
        assert_eq!(c(0, 0).basis_notation(), "0");
        assert_eq!("Odd".parse::<LatticeType>().unwrap(), LatticeType::Odd);
    }

    #[test]
    fn huge_coordinates_survive_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let d = DivisorClass::new(big.clone(), -big);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(
            text,
            r#"{"x":123456789012345678901234567890,"y":-123456789012345678901234567890}"#
        );
        assert_eq!(serde_json::from_str::<DivisorClass>(&text).unwrap(), d);
        assert!(serde_json::from_str::<DivisorClass>(r#"{"x":1.5,"y":0}"#).is_err());
    }

    fn arb_class() -> impl Strategy<Value = DivisorClass> {
        (-20i64..=20, -20i64..=20).prop_map(|(x, y)| c(x, y))
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric_and_bilinear(a in arb_class(), b in arb_class(), d in arb_class(), k in -20i64..=20) {
            for lattice in LatticeType::ALL {
                prop_assert_eq!(lattice.pair(&a, &b), lattice.pair(&b, &a));
                prop_assert_eq!(lattice.pair(&(&a + &b), &d), lattice.pair(&a, &d) + lattice.pair(&b, &d));
                prop_assert_eq!(lattice.pair(&(k * &a), &d), lattice.pair(&a, &d) * k);
            }
        }

        #[test]
        fn embedding_is_an_isometry(a in arb_class(), b in arb_class()) {
            prop_assert_eq!(
                BigRational::from_integer(LatticeType::Even.pair(&a, &b)),
                LatticeType::Odd.pair_rational(&embed_even_into_odd(&a), &embed_even_into_odd(&b))
            );
        }

        #[test]
        fn class_group_laws(a in arb_class(), b in arb_class()) {
            prop_assert_eq!(&a + &DivisorClass::zero(), a.clone());
            prop_assert_eq!(&a + &(-&a), DivisorClass::zero());
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }
    }
}
