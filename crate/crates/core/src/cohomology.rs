//! What can be said about `h⁰, h¹, h²` from numerics alone.
//!
//! Individual dimensions are only returned where they are forced (the Kodaira
//! vanishing regime). Everywhere else the output is a bound or a relation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, LatticeType, SurfaceModel};
use crate::positivity::{curve_class_admissible, effective_necessary, is_ample};
use crate::riemann_roch::euler_characteristic;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyBounds {
    pub h2_zero: bool,
    #[serde(with = "crate::json::opt_int")]
    pub h0_lower: Option<BigInt>,
    #[serde(with = "crate::json::opt_int")]
    pub h0_exact: Option<BigInt>,
    #[serde(with = "crate::json::int")]
    pub chi: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    ChiPositive,
    ChiZero,
    PencilRay,
    UndeterminedOddDiagonalShift,
}

/// The relation between `h⁰` and `h¹` proven for a case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// `h¹ < h⁰`.
    H1LessThanH0,
    /// `h¹ = h⁰`.
    H1EqualsH0,
    /// `h⁰ ≤ h0_max` and `h¹ = h⁰ + h1_minus_h0`, for a multiple of a
    /// pencil class. Conditional on the ray class moving in a basepoint-free
    /// pencil, which numerics cannot decide.
    Pencil {
        #[serde(with = "crate::json::int")]
        multiple: BigInt,
        h0_max: u32,
        #[serde(with = "crate::json::int")]
        h1_minus_h0: BigInt,
    },
    /// Only `h⁰ - h¹ = χ` is known; the sign of `h¹ - c·h⁰` is open.
    DifferenceOnly {
        #[serde(with = "crate::json::int")]
        h0_minus_h1: BigInt,
    },
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::H1LessThanH0 => f.write_str("h1 < h0"),
            Relation::H1EqualsH0 => f.write_str("h1 = h0"),
            Relation::Pencil {
                h0_max,
                h1_minus_h0,
                ..
            } => {
                write!(f, "h0 <= {h0_max} and h1 = h0 + {h1_minus_h0}")
            }
            Relation::DifferenceOnly { h0_minus_h1 } => {
                write!(f, "h0 - h1 = {h0_minus_h1} (sign undetermined)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundedCohomologyCase {
    pub case_tag: CaseTag,
    #[serde(with = "crate::json::int")]
    pub chi: BigInt,
    pub relation: Relation,
}

/// True when `K - D` fails the effectivity condition, so
/// `h²(D) = h⁰(K - D) = 0`. False means "not decided", never "nonzero".
pub fn h2_vanishes(model: &SurfaceModel, d: &DivisorClass) -> bool {
    !effective_necessary(model, &(model.canonical() - d))
}

/// `χ(D) ≤ h⁰(D)` in the range where `h² = 0` is known and `χ ≥ 1`.
pub fn h0_lower_bound(model: &SurfaceModel, d: &DivisorClass) -> Result<Option<BigInt>> {
    if d == model.canonical() {
        return Ok(None);
    }
    let two = BigInt::from(2);
    let holds = match model.lattice() {
        LatticeType::Even => d.x >= two && d.y >= two,
        LatticeType::Odd => &d.x + &d.y > BigInt::one() && &d.x - &d.y > two,
    };
    if !holds {
        return Ok(None);
    }
    euler_characteristic(model, d).map(Some)
}

/// `h⁰ = χ` exactly when `D - K` is ample (Kodaira vanishing kills h¹, h²).
pub fn kodaira_exact_h0(model: &SurfaceModel, d: &DivisorClass) -> Result<Option<BigInt>> {
    if !is_ample(model, &(d - model.canonical())) {
        return Ok(None);
    }
    euler_characteristic(model, d).map(Some)
}

pub fn cohomology_bounds(model: &SurfaceModel, d: &DivisorClass) -> Result<CohomologyBounds> {
    Ok(CohomologyBounds {
        h2_zero: h2_vanishes(model, d),
        h0_lower: h0_lower_bound(model, d)?,
        h0_exact: kodaira_exact_h0(model, d)?,
        chi: euler_characteristic(model, d)?,
    })
}

/// Places an admissible curve class into the case analysis behind the
/// bounded cohomology property. Cases are tried in order and the first match
/// wins, so the boundary classes `H`, `F` (even) and `H`, `H - F` (odd) land
/// in [`CaseTag::ChiZero`].
pub fn bounded_cohomology_case(
    model: &SurfaceModel,
    c: &DivisorClass,
) -> Result<BoundedCohomologyCase> {
    if !curve_class_admissible(model, c) {
        return Err(Error::NotAdmissible {
            operation: "bounded_cohomology_case",
            class: c.clone(),
            lattice: model.lattice(),
        });
    }
    let chi = euler_characteristic(model, c)?;
    let one = BigInt::one();
    let two = BigInt::from(2);
    let pencil = |multiple: BigInt| Relation::Pencil {
        multiple,
        h0_max: 2,
        h1_minus_h0: -&chi,
    };

    let (case_tag, relation) = match model.lattice() {
        LatticeType::Even => {
            if c.x >= two && c.y >= two {
                (CaseTag::ChiPositive, Relation::H1LessThanH0)
            } else if c.x == one || c.y == one {
                (CaseTag::ChiZero, Relation::H1EqualsH0)
            } else if c.x.is_zero() || c.y.is_zero() {
                // kH or kF with k ≥ 2
                (CaseTag::PencilRay, pencil(&c.x + &c.y))
            } else {
                unreachable!("admissible even classes are covered by the three cases")
            }
        }
        LatticeType::Odd => {
            let sum = &c.x + &c.y;
            let diff = &c.x - &c.y;
            if sum > one && diff > two {
                (CaseTag::ChiPositive, Relation::H1LessThanH0)
            } else if sum == one || diff == two {
                (CaseTag::ChiZero, Relation::H1EqualsH0)
            } else if c.x == c.y.abs() {
                // k(H + F) or k(H - F)
                (CaseTag::PencilRay, pencil(c.x.clone()))
            } else if diff == one {
                (
                    CaseTag::UndeterminedOddDiagonalShift,
                    Relation::DifferenceOnly {
                        h0_minus_h1: chi.clone(),
                    },
                )
            } else {
                unreachable!("admissible odd classes are covered by the four cases")
            }
        }
    };
    Ok(BoundedCohomologyCase {
        case_tag,
        chi,
        relation,
    })
}

/// Sign constraint each case places on χ; used by tests and the report.
pub fn case_is_consistent(
    model: &SurfaceModel,
    c: &DivisorClass,
    case: &BoundedCohomologyCase,
) -> bool {
    let chi = &case.chi;
    match case.case_tag {
        CaseTag::ChiPositive => chi.is_positive(),
        CaseTag::ChiZero => chi.is_zero(),
        CaseTag::PencilRay => match model.lattice() {
            LatticeType::Even => *chi == BigInt::one() - (&c.x + &c.y),
            LatticeType::Odd => {
                let k = &c.x;
                if c.y == *k {
                    *chi == BigInt::one() - k * 2
                } else {
                    *chi == BigInt::one() - k
                }
            }
        },
        CaseTag::UndeterminedOddDiagonalShift => {
            model.lattice() == LatticeType::Odd && *chi == -&c.y
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i64, y: i64) -> DivisorClass {
        DivisorClass::new(x, y)
    }

    fn box_classes(bound: i64) -> impl Iterator<Item = DivisorClass> {
        (-bound..=bound).flat_map(move |x| (-bound..=bound).map(move |y| c(x, y)))
    }

    #[test]
    fn h2_examples() {
        assert!(!h2_vanishes(&SurfaceModel::even(), &c(2, 2)));
        assert!(h2_vanishes(&SurfaceModel::even(), &c(3, 3)));
        assert!(h2_vanishes(&SurfaceModel::odd(), &c(4, 0)));
    }

    #[test]
    fn h0_lower_examples() {
        assert_eq!(
            h0_lower_bound(&SurfaceModel::even(), &c(2, 3)).unwrap(),
            Some(2.into())
        );
        assert_eq!(
            h0_lower_bound(&SurfaceModel::even(), &c(2, 2)).unwrap(),
            None
        );
        assert_eq!(
            h0_lower_bound(&SurfaceModel::odd(), &c(4, -1)).unwrap(),
            Some(3.into())
        );
        assert_eq!(
            h0_lower_bound(&SurfaceModel::odd(), &c(4, -2)).unwrap(),
            Some(2.into())
        );
        assert_eq!(
            h0_lower_bound(&SurfaceModel::odd(), &c(3, -1)).unwrap(),
            None
        );
    }

    #[test]
    fn kodaira_examples() {
        assert_eq!(
            kodaira_exact_h0(&SurfaceModel::even(), &c(3, 3)).unwrap(),
            Some(4.into())
        );
        assert_eq!(
            kodaira_exact_h0(&SurfaceModel::odd(), &c(6, 0)).unwrap(),
            Some(10.into())
        );
        assert_eq!(
            kodaira_exact_h0(&SurfaceModel::even(), &c(3, 2)).unwrap(),
            None
        );
    }

    #[test]
    fn kodaira_region_matches_stated_inequalities() {
        for d in box_classes(30) {
            let even = kodaira_exact_h0(&SurfaceModel::even(), &d)
                .unwrap()
                .is_some();
            assert_eq!(even, d.x >= 3.into() && d.y >= 3.into());
            let odd = kodaira_exact_h0(&SurfaceModel::odd(), &d)
                .unwrap()
                .is_some();
            assert_eq!(odd, &d.x - 3 > (&d.y + BigInt::from(1)).abs());
        }
    }

    #[test]
    fn case_examples() {
        let even = SurfaceModel::even();
        let odd = SurfaceModel::odd();

        let case = bounded_cohomology_case(&even, &c(2, 2)).unwrap();
        assert_eq!(
            (case.case_tag, case.chi.clone()),
            (CaseTag::ChiPositive, 1.into())
        );
        assert_eq!(case.relation.to_string(), "h1 < h0");

        let case = bounded_cohomology_case(&even, &c(1, 5)).unwrap();
        assert_eq!(
            (case.case_tag, case.chi.clone()),
            (CaseTag::ChiZero, 0.into())
        );

        let case = bounded_cohomology_case(&even, &c(0, 3)).unwrap();
        assert_eq!(
            (case.case_tag, case.chi.clone()),
            (CaseTag::PencilRay, (-2).into())
        );
        assert_eq!(case.relation.to_string(), "h0 <= 2 and h1 = h0 + 2");

        let case = bounded_cohomology_case(&odd, &c(3, 2)).unwrap();
        assert_eq!(
            (case.case_tag, case.chi.clone()),
            (CaseTag::UndeterminedOddDiagonalShift, (-2).into())
        );

        assert!(matches!(
            bounded_cohomology_case(&odd, &c(0, 1)),
            Err(Error::NotAdmissible { .. })
        ));
    }

    #[test]
    fn relation_wire_format() {
        let case = bounded_cohomology_case(&SurfaceModel::even(), &c(4, 0)).unwrap();
        let json = serde_json::to_value(&case).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "case_tag": "pencil_ray",
                "chi": -3,
                "relation": {"kind": "pencil", "multiple": 4, "h0_max": 2, "h1_minus_h0": 3}
            })
        );
        let back: BoundedCohomologyCase = serde_json::from_value(json).unwrap();
        assert_eq!(back, case);
    }

    #[test]
    fn partition_and_consistency_on_box() {
        for model in [SurfaceModel::even(), SurfaceModel::odd()] {
            for d in box_classes(100).filter(|d| curve_class_admissible(&model, d)) {
                let case = bounded_cohomology_case(&model, &d).unwrap();
                assert!(
                    case_is_consistent(&model, &d, &case),
                    "{} {d}: {case:?}",
                    model.lattice()
                );
                if model.lattice() == LatticeType::Even {
                    assert_ne!(case.case_tag, CaseTag::UndeterminedOddDiagonalShift);
                }
                // When h² = 0 the relation must agree with h⁰ - h¹ = χ.
                if h2_vanishes(&model, &d) {
                    match &case.relation {
                        Relation::H1LessThanH0 => assert!(case.chi.is_positive()),
                        Relation::H1EqualsH0 => assert!(case.chi.is_zero()),
                        Relation::Pencil { h1_minus_h0, .. } => {
                            assert_eq!(*h1_minus_h0, -&case.chi)
                        }
                        Relation::DifferenceOnly { h0_minus_h1 } => {
                            assert_eq!(*h0_minus_h1, case.chi)
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bounds_invariants_on_box() {
        for model in [SurfaceModel::even(), SurfaceModel::odd()] {
            for d in box_classes(40) {
                let b = cohomology_bounds(&model, &d).unwrap();
                if let Some(exact) = &b.h0_exact {
                    assert_eq!(*exact, b.chi);
                    assert!(b.h2_zero);
                    assert_eq!(b.h0_lower.as_ref(), Some(exact));
                }
                if let Some(lower) = &b.h0_lower {
                    assert!(b.h2_zero, "{d}");
                    assert_eq!(*lower, b.chi.clone().max(BigInt::one()));
                    assert!(lower.is_positive());
                }
            }
        }
    }
}
