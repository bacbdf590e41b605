//! Euler characteristic and arithmetic genus of a class.
//!
//! Each lattice type has a factored closed form:
//!
//! | model | `χ(O(D))`                 | `p_a(D)`                  |
//! |-------|---------------------------|---------------------------|
//! | even  | `(x-1)(y-1)`              | `(x+1)(y+1)`              |
//! | odd   | `½(x+y-1)(x-y-2)`         | `½(x+y+1)(x-y+2)`         |
//!
//! The closed forms are what callers get. The generic formulas
//! `χ = ½ D·(D-K) + χ(O)` and `p_a = ½(K·D + D²) + 1` are evaluated
//! alongside them as a cross-check: always in debug builds, on a
//! deterministic sample of classes in release builds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, LatticeType, SurfaceModel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    #[serde(with = "crate::json::int")]
    pub p_a: BigInt,
    #[serde(with = "crate::json::int")]
    pub chi: BigInt,
    #[serde(with = "crate::json::int")]
    pub k_dot: BigInt,
    #[serde(with = "crate::json::int")]
    pub self_int: BigInt,
}

fn halve(quantity: &'static str, class: &DivisorClass, product: BigInt) -> Result<BigInt> {
    let (half, rem) = product.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::ParityFault {
            quantity,
            class: class.clone(),
            product,
        });
    }
    Ok(half)
}

/// `χ(O(D))` from the factored closed form, with no cross-check.
pub fn closed_form_chi(model: &SurfaceModel, d: &DivisorClass) -> Result<BigInt> {
    let one = BigInt::one();
    match model.lattice() {
        LatticeType::Even => Ok((&d.x - &one) * (&d.y - &one)),
        LatticeType::Odd => {
            let product = (&d.x + &d.y - &one) * (&d.x - &d.y - BigInt::from(2));
            halve("euler characteristic", d, product)
        }
    }
}

/// `p_a(D)` from the factored closed form, with no cross-check.
pub fn closed_form_genus(model: &SurfaceModel, d: &DivisorClass) -> Result<BigInt> {
    let one = BigInt::one();
    match model.lattice() {
        LatticeType::Even => Ok((&d.x + &one) * (&d.y + &one)),
        LatticeType::Odd => {
            let product = (&d.x + &d.y + &one) * (&d.x - &d.y + BigInt::from(2));
            halve("arithmetic genus", d, product)
        }
    }
}

/// Riemann–Roch: `½ D·(D-K) + χ(O)`.
pub fn generic_chi(model: &SurfaceModel, d: &DivisorClass) -> Result<BigInt> {
    let twice = model.intersect(d, &(d - model.canonical()));
    Ok(halve("riemann-roch", d, twice)? + SurfaceModel::CHI_STRUCTURE_SHEAF)
}

/// Adjunction: `½(K·D + D²) + 1`.
pub fn generic_genus(model: &SurfaceModel, d: &DivisorClass) -> Result<BigInt> {
    let twice = model.canonical_degree(d) + model.self_intersection(d);
    Ok(halve("adjunction", d, twice)? + 1)
}

fn cross_check_enabled(d: &DivisorClass) -> bool {
    cfg!(debug_assertions) || (&d.x + &d.y * 7u32).mod_floor(&BigInt::from(16)).is_zero()
}

fn checked(
    quantity: &'static str,
    d: &DivisorClass,
    closed_form: BigInt,
    generic: impl FnOnce() -> Result<BigInt>,
) -> Result<BigInt> {
    if cross_check_enabled(d) {
        let generic = generic()?;
        if generic != closed_form {
            return Err(Error::ConsistencyFault {
                quantity,
                class: d.clone(),
                closed_form,
                generic,
            });
        }
    }
    Ok(closed_form)
}

pub fn euler_characteristic(model: &SurfaceModel, d: &DivisorClass) -> Result<BigInt> {
    let chi = closed_form_chi(model, d)?;
    checked("euler characteristic", d, chi, || generic_chi(model, d))
}

pub fn arithmetic_genus(model: &SurfaceModel, d: &DivisorClass) -> Result<BigInt> {
    let p_a = closed_form_genus(model, d)?;
    checked("arithmetic genus", d, p_a, || generic_genus(model, d))
}

pub fn genus_report(model: &SurfaceModel, d: &DivisorClass) -> Result<GenusReport> {
    Ok(GenusReport {
        p_a: arithmetic_genus(model, d)?,
        chi: euler_characteristic(model, d)?,
        k_dot: model.canonical_degree(d),
        self_int: model.self_intersection(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn c(x: i64, y: i64) -> DivisorClass {
        DivisorClass::new(x, y)
    }

    fn box_classes(bound: i64) -> impl Iterator<Item = DivisorClass> {
        (-bound..=bound).flat_map(move |x| (-bound..=bound).map(move |y| c(x, y)))
    }

    #[test]
    fn chi_examples() {
        let even = SurfaceModel::even();
        let odd = SurfaceModel::odd();
        assert_eq!(euler_characteristic(&even, &c(2, 2)).unwrap(), 1.into());
        assert_eq!(euler_characteristic(&odd, &c(3, -1)).unwrap(), 1.into());
        assert_eq!(euler_characteristic(&even, &c(3, 3)).unwrap(), 4.into());
    }

    #[test]
    fn genus_examples() {
        let even = SurfaceModel::even();
        let odd = SurfaceModel::odd();
        assert_eq!(arithmetic_genus(&even, &c(3, 2)).unwrap(), 12.into());
        assert_eq!(arithmetic_genus(&odd, &c(4, -2)).unwrap(), 12.into());
        assert_eq!(arithmetic_genus(&odd, &c(1, -1)).unwrap(), 2.into());
        assert_eq!(arithmetic_genus(&odd, &c(2, -1)).unwrap(), 5.into());
    }

    #[test]
    fn report_examples() {
        let even = SurfaceModel::even();
        let odd = SurfaceModel::odd();
        let expect = |p_a: i64, chi: i64, k_dot: i64, self_int: i64| GenusReport {
            p_a: p_a.into(),
            chi: chi.into(),
            k_dot: k_dot.into(),
            self_int: self_int.into(),
        };
        assert_eq!(genus_report(&even, &c(1, 0)).unwrap(), expect(2, 0, 2, 0));
        assert_eq!(genus_report(&odd, &c(0, 0)).unwrap(), expect(1, 1, 0, 0));
        assert_eq!(genus_report(&even, &c(0, 1)).unwrap(), expect(2, 0, 2, 0));
        assert_eq!(
            serde_json::to_string(&genus_report(&even, &c(2, 2)).unwrap()).unwrap(),
            r#"{"p_a":9,"chi":1,"k_dot":8,"self_int":8}"#
        );
    }

    #[test]
    fn closed_forms_match_generic_formulas_on_box() {
        for model in [SurfaceModel::even(), SurfaceModel::odd()] {
            for d in box_classes(100) {
                assert_eq!(
                    closed_form_chi(&model, &d).unwrap(),
                    generic_chi(&model, &d).unwrap(),
                    "{d}"
                );
                assert_eq!(
                    closed_form_genus(&model, &d).unwrap(),
                    generic_genus(&model, &d).unwrap(),
                    "{d}"
                );
            }
        }
    }

    #[test]
    fn serre_duality_symmetry() {
        for model in [SurfaceModel::even(), SurfaceModel::odd()] {
            let k = model.canonical().clone();
            for d in box_classes(100) {
                assert_eq!(
                    euler_characteristic(&model, &d).unwrap(),
                    euler_characteristic(&model, &(&k - &d)).unwrap()
                );
            }
        }
    }

    #[test]
    fn even_swap_symmetry() {
        let even = SurfaceModel::even();
        for d in box_classes(100) {
            let swapped = DivisorClass {
                x: d.y.clone(),
                y: d.x.clone(),
            };
            assert_eq!(
                euler_characteristic(&even, &d).unwrap(),
                euler_characteristic(&even, &swapped).unwrap()
            );
            assert_eq!(
                arithmetic_genus(&even, &d).unwrap(),
                arithmetic_genus(&even, &swapped).unwrap()
            );
        }
    }

    #[test]
    fn odd_genus_minimum_on_positive_region() {
        let odd = SurfaceModel::odd();
        let min = box_classes(100)
            .filter(|d| d.x >= d.y.abs() && odd.canonical_degree(d) > BigInt::zero())
            .map(|d| arithmetic_genus(&odd, &d).unwrap())
            .min()
            .unwrap();
        assert_eq!(min, 2.into());
        assert_eq!(arithmetic_genus(&odd, &c(1, -1)).unwrap(), 2.into());
    }
}
