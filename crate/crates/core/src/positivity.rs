//! Numerical positivity on fake quadrics.
//!
//! Every reduced irreducible curve has `K·C > 0` because `K` is ample, and
//! `p_a(C) ≥ 0`. Combined with the closed-form genus this confines curve
//! classes to a short list of cases. The genus-0 cases with `K·C > 0` are
//! ruled out by the Miyaoka-type inequality `K·C ≤ Δ + 2g - 2 - χ_top(C)`.
//! On the odd model the remaining negative ray `x₀H + (x₀+1)F` is ruled out
//! as well (no negative curves), which leaves:
//!
//! * even: curve classes satisfy `x ≥ 0, y > 0` or `x > 0, y ≥ 0`; the
//!   effective and nef cones are both spanned by `H` and `F`.
//! * odd: curve classes satisfy `x ≥ |y|`; both cones are spanned by
//!   `H + F` and `H - F`.
//!
//! "Effective" here is always the necessary numerical condition. Nothing in
//! this module claims a class is effective.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, LatticeType, SurfaceModel};
use crate::riemann_roch::arithmetic_genus;

/// Which criterion settled a [`PositivityVerdict`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoverningRule {
    /// The zero class: effective (empty divisor) and nef, not big.
    ZeroClass,
    /// Ample iff `x > 0` and `y > 0`.
    EvenAmpleCriterion,
    /// Nef, on a boundary ray `kH` or `kF`.
    EvenNefBoundary,
    /// Fails `x ≥ 0, y ≥ 0`.
    EvenOutsideEffectiveCone,
    /// Ample iff `x > |y|`.
    OddAmpleCriterion,
    /// Nef, on a boundary ray `k(H + F)` or `k(H - F)`.
    OddNefBoundary,
    /// Fails `x ≥ |y|`.
    OddOutsideEffectiveCone,
}

impl GoverningRule {
    pub fn tag(self) -> &'static str {
        match self {
            GoverningRule::ZeroClass => "zero-class",
            GoverningRule::EvenAmpleCriterion => "even-ample-criterion",
            GoverningRule::EvenNefBoundary => "even-nef-boundary",
            GoverningRule::EvenOutsideEffectiveCone => "even-outside-effective-cone",
            GoverningRule::OddAmpleCriterion => "odd-ample-criterion",
            GoverningRule::OddNefBoundary => "odd-nef-boundary",
            GoverningRule::OddOutsideEffectiveCone => "odd-outside-effective-cone",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityVerdict {
    pub effective_necessary: bool,
    pub nef: bool,
    pub big: bool,
    pub ample: bool,
    pub governing_rule: GoverningRule,
}

/// Result of applying `K·C ≤ Δ + 2g - 2 - χ_top` to a smooth rational class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub class: DivisorClass,
    #[serde(with = "crate::json::int")]
    pub p_a: BigInt,
    #[serde(with = "crate::json::int")]
    pub k_dot: BigInt,
    pub lm95_bound: i64,
    pub excluded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRays {
    pub effective_rays: [DivisorClass; 2],
    pub nef_rays: [DivisorClass; 2],
}

/// The hypothetical negative curve `x₀H + (x₀+1)F` on the odd model.
///
/// Contracting it would give a rational singularity, which needs `p_a = 0`;
/// the report shows `p_a = x₀ + 1 > 0` while `C² < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeCurveReport {
    pub class: DivisorClass,
    #[serde(with = "crate::json::int")]
    pub self_int: BigInt,
    #[serde(with = "crate::json::int")]
    pub p_a: BigInt,
    pub contradiction: bool,
}

/// Necessary condition for `c` to be the class of a reduced irreducible curve.
pub fn curve_class_admissible(model: &SurfaceModel, c: &DivisorClass) -> bool {
    let zero = BigInt::zero();
    match model.lattice() {
        LatticeType::Even => (c.x >= zero && c.y > zero) || (c.x > zero && c.y >= zero),
        LatticeType::Odd => c.x >= c.y.abs() && !c.is_zero(),
    }
}

const RATIONAL_GEOMETRIC_GENUS: i64 = 0;
const RATIONAL_TOPOLOGICAL_EULER: i64 = 2;

/// Genus-0 instantiation of `K·C ≤ Δ + 2g - 2 - χ_top`, which evaluates to 0.
pub const RATIONAL_CURVE_BOUND: i64 =
    SurfaceModel::DELTA + 2 * RATIONAL_GEOMETRIC_GENUS - 2 - RATIONAL_TOPOLOGICAL_EULER;

pub fn rational_curve_exclusion(model: &SurfaceModel, c: &DivisorClass) -> Result<ExclusionReport> {
    let p_a = arithmetic_genus(model, c)?;
    if !p_a.is_zero() {
        return Err(Error::NotRational {
            operation: "rational_curve_exclusion",
            class: c.clone(),
            p_a,
        });
    }
    let k_dot = model.canonical_degree(c);
    let excluded = k_dot > BigInt::from(RATIONAL_CURVE_BOUND);
    Ok(ExclusionReport {
        class: c.clone(),
        p_a,
        k_dot,
        lm95_bound: RATIONAL_CURVE_BOUND,
        excluded,
    })
}

pub fn effective_necessary(model: &SurfaceModel, d: &DivisorClass) -> bool {
    let zero = BigInt::zero();
    match model.lattice() {
        LatticeType::Even => d.x >= zero && d.y >= zero,
        LatticeType::Odd => d.x >= d.y.abs(),
    }
}

pub fn is_ample(model: &SurfaceModel, d: &DivisorClass) -> bool {
    let zero = BigInt::zero();
    match model.lattice() {
        LatticeType::Even => d.x > zero && d.y > zero,
        LatticeType::Odd => d.x > d.y.abs(),
    }
}

/// Nonnegative against both extremal rays of the curve cone.
pub fn is_nef(model: &SurfaceModel, d: &DivisorClass) -> bool {
    cone_rays(model)
        .effective_rays
        .iter()
        .all(|ray| model.intersect(d, ray) >= BigInt::zero())
}

pub fn is_big(model: &SurfaceModel, d: &DivisorClass) -> bool {
    model.self_intersection(d) > BigInt::zero() && effective_necessary(model, d)
}

pub fn cone_rays(model: &SurfaceModel) -> ConeRays {
    let rays = match model.lattice() {
        LatticeType::Even => [DivisorClass::new(1, 0), DivisorClass::new(0, 1)],
        LatticeType::Odd => [DivisorClass::new(1, 1), DivisorClass::new(1, -1)],
    };
    ConeRays {
        effective_rays: rays.clone(),
        nef_rays: rays,
    }
}

pub fn negative_curve_hypothesis(model: &SurfaceModel, x0: &BigInt) -> Result<NegativeCurveReport> {
    if model.lattice() != LatticeType::Odd {
        return Err(Error::WrongLattice {
            operation: "negative_curve_hypothesis",
            expected: LatticeType::Odd,
            found: model.lattice(),
        });
    }
    if x0.is_negative() {
        return Err(Error::OutOfRange {
            name: "x0",
            value: x0.to_string(),
            expected: "x0 >= 0",
        });
    }
    let class = DivisorClass::new(x0.clone(), x0 + 1);
    let self_int = model.self_intersection(&class);
    let p_a = arithmetic_genus(model, &class)?;
    let contradiction = self_int.is_negative() && p_a.is_positive();
    Ok(NegativeCurveReport {
        class,
        self_int,
        p_a,
        contradiction,
    })
}

pub fn classify(model: &SurfaceModel, d: &DivisorClass) -> PositivityVerdict {
    let effective = effective_necessary(model, d);
    let nef = is_nef(model, d);
    let big = is_big(model, d);
    let ample = is_ample(model, d);
    let even = model.lattice() == LatticeType::Even;
    let governing_rule = match (d.is_zero(), ample, nef, even) {
        (true, ..) => GoverningRule::ZeroClass,
        (false, true, _, true) => GoverningRule::EvenAmpleCriterion,
        (false, true, _, false) => GoverningRule::OddAmpleCriterion,
        (false, false, true, true) => GoverningRule::EvenNefBoundary,
        (false, false, true, false) => GoverningRule::OddNefBoundary,
        (false, false, false, true) => GoverningRule::EvenOutsideEffectiveCone,
        (false, false, false, false) => GoverningRule::OddOutsideEffectiveCone,
    };
    PositivityVerdict {
        effective_necessary: effective,
        nef,
        big,
        ample,
        governing_rule,
    }
}
