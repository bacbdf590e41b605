//! Diophantine side: the double point formula for a surface in `P⁴`, the
//! certificate-producing search showing it has no solution on either model,
//! and the enumeration of low-genus curve classes.
//!
//! A surface `S ⊂ P⁴` with hyperplane class `D`, `d = D²`, satisfies
//!
//! ```text
//! d² - 10d - 5 D·K - 2K² + 12 + 12 p_a(S) = 0
//! ```
//!
//! With `K² = 8` and `p_a(S) = χ(O) - 1 = 0` this specializes to
//! `2x²y² - 10xy - 5x - 5y - 2 = 0` (even, after dividing by 2) and
//! `(x² - y² - 5)² = 5(3x + y) + 29` (odd).

mod certificate;
mod genus;

pub use certificate::{
    verify_no_p4_embedding, Certificate, Conclusion, EdgeCase, FactorPair, RegionEntry,
    SweepSummary, CERTIFICATE_SCHEMA, DEFAULT_BOX_BOUND, MAX_BOX_BOUND, MIN_BOX_BOUND,
    ZAK_H0_BOUND,
};
pub use genus::{enumerate_low_genus, Annotation, ClassTag, GenusClassList, MAX_G_MAX, MIN_G_MAX};

use num_bigint::BigInt;

use crate::lattice::{DivisorClass, LatticeType, SurfaceModel};

/// Arithmetic genus of the surface itself, `χ(O) - 1`.
const SURFACE_ARITHMETIC_GENUS: i64 = SurfaceModel::CHI_STRUCTURE_SHEAF - 1;

/// `d² - 10d - 5 D·K - 2K² + 12 + 12 p_a(S)`, zero iff `D` passes the
/// numerical embedding condition.
pub fn double_point_residual(model: &SurfaceModel, d: &DivisorClass) -> BigInt {
    let deg = model.self_intersection(d);
    let k_dot = model.canonical_degree(d);
    &deg * &deg - &deg * 10 - k_dot * 5 - 2 * SurfaceModel::K_SQUARED
        + 12
        + 12 * SURFACE_ARITHMETIC_GENUS
}

/// The per-lattice polynomial form of the residual.
///
/// Even: `2x²y² - 10xy - 5x - 5y - 2` (half the double point residual).
/// Odd: `(x² - y² - 5)² - 5(3x + y) - 29` (equal to it).
pub fn specialized_residual(model: &SurfaceModel, d: &DivisorClass) -> BigInt {
    let (x, y) = (&d.x, &d.y);
    match model.lattice() {
        LatticeType::Even => {
            let xy = x * y;
            &xy * &xy * 2 - &xy * 10 - x * 5 - y * 5 - 2
        }
        LatticeType::Odd => {
            let inner = x * x - y * y - 5;
            &inner * &inner - (x * 3 + y) * 5 - 29
        }
    }
}

/// `specialized_residual` on machine integers for the box sweep.
///
/// Callers keep `|x|, |y| ≤ MAX_BOX_BOUND = 10⁶`; every intermediate then
/// stays below `3·10²⁴`, far inside `i128`.
#[inline]
pub(crate) fn specialized_residual_i128(lattice: LatticeType, x: i128, y: i128) -> i128 {
    match lattice {
        LatticeType::Even => {
            let xy = x * y;
            2 * xy * xy - 10 * xy - 5 * x - 5 * y - 2
        }
        LatticeType::Odd => {
            let inner = x * x - y * y - 5;
            inner * inner - 5 * (3 * x + y) - 29
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: i64, y: i64) -> DivisorClass {
        DivisorClass::new(x, y)
    }

    #[test]
    fn double_point_examples() {
        assert_eq!(
            double_point_residual(&SurfaceModel::even(), &c(2, 2)),
            (-60).into()
        );
        assert_eq!(
            double_point_residual(&SurfaceModel::odd(), &c(3, -1)),
            (-60).into()
        );
        assert_eq!(
            double_point_residual(&SurfaceModel::even(), &c(3, 3)),
            80.into()
        );
    }

    #[test]
    fn specialized_examples() {
        assert_eq!(
            specialized_residual(&SurfaceModel::even(), &c(3, 3)),
            40.into()
        );
        assert_eq!(
            specialized_residual(&SurfaceModel::odd(), &c(3, -1)),
            (-60).into()
        );
        assert_eq!(
            specialized_residual(&SurfaceModel::even(), &c(1, 1)),
            (-20).into()
        );
    }

    #[test]
    fn specialization_identity_on_box() {
        let even = SurfaceModel::even();
        let odd = SurfaceModel::odd();
        for x in -50..=50 {
            for y in -50..=50 {
                let d = c(x, y);
                assert_eq!(
                    double_point_residual(&even, &d),
                    specialized_residual(&even, &d) * 2
                );
                assert_eq!(
                    double_point_residual(&odd, &d),
                    specialized_residual(&odd, &d)
                );
            }
        }
    }

    proptest! {
        #[test]
        fn i128_kernel_matches_bigint(x in -1_000_000i64..=1_000_000, y in -1_000_000i64..=1_000_000) {
            for lattice in LatticeType::ALL {
                let model = SurfaceModel::new(lattice);
                prop_assert_eq!(
                    BigInt::from(specialized_residual_i128(lattice, x as i128, y as i128)),
                    specialized_residual(&model, &c(x, y))
                );
            }
        }
    }
}
