use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, LatticeType, SurfaceModel};
use crate::positivity::curve_class_admissible;

pub const MIN_G_MAX: u32 = 2;
pub const MAX_G_MAX: u32 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    /// `h⁰ = 0` on a simply-connected surface; dropped from `classes`.
    #[serde(rename = "excluded_simply_connected")]
    ExcludedSimplyConnected,
    /// `h⁰ ≤ 1` on a simply-connected surface.
    #[serde(rename = "h0_at_most_1")]
    H0AtMostOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub class: DivisorClass,
    pub tags: Vec<ClassTag>,
}

/// The admissible classes of one arithmetic genus, sorted by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusClassList {
    pub genus: u32,
    pub simply_connected: bool,
    pub classes: Vec<DivisorClass>,
    pub annotations: Vec<Annotation>,
}

/// Solves `p_a(x, y) = genus` by factoring the genus polynomial.
///
/// Even: `(x+1)(y+1) = g`. Odd: `(x+y+1)(x-y+2) = 2g` with `s = x+y+1`,
/// `t = x-y+2`, so `x = (s+t-3)/2` and `y = (s-t+1)/2`, integral iff `s+t`
/// is odd.
fn classes_of_genus(model: &SurfaceModel, genus: u32) -> Vec<DivisorClass> {
    let genus = i64::from(genus);
    let mut out: Vec<DivisorClass> = match model.lattice() {
        LatticeType::Even => (1..=genus)
            .filter(|a| genus % a == 0)
            .map(|a| DivisorClass::new(a - 1, genus / a - 1))
            .collect(),
        LatticeType::Odd => {
            let n = 2 * genus;
            (1..=n)
                .filter(|s| n % s == 0)
                .map(|s| (s, n / s))
                .filter(|(s, t)| (s + t) % 2 == 1)
                .map(|(s, t)| DivisorClass::new((s + t - 3) / 2, (s - t + 1) / 2))
                .collect()
        }
    };
    out.retain(|c| curve_class_admissible(model, c));
    out.sort();
    out
}

/// What a simply-connected surface implies for a class, if anything.
///
/// Even: `H`, `F`, `H + F` carry no sections; multiples of `H` and `F`
/// have `h⁰ ≤ 1` since the surface is not a fibration.
/// Odd: `H - F` carries no sections; `2H - F`, `H` and multiples of
/// `H ± F` have `h⁰ ≤ 1`.
fn simply_connected_tag(model: &SurfaceModel, c: &DivisorClass) -> Option<ClassTag> {
    let one = BigInt::one();
    match model.lattice() {
        LatticeType::Even => {
            let excluded = [
                DivisorClass::h(),
                DivisorClass::f(),
                DivisorClass::new(1, 1),
            ];
            if excluded.contains(c) {
                Some(ClassTag::ExcludedSimplyConnected)
            } else if c.x.is_positive() ^ c.y.is_positive() {
                Some(ClassTag::H0AtMostOne)
            } else {
                None
            }
        }
        LatticeType::Odd => {
            if *c == DivisorClass::new(1, -1) {
                Some(ClassTag::ExcludedSimplyConnected)
            } else if *c == DivisorClass::new(2, -1)
                || *c == DivisorClass::h()
                || (c.x >= one && c.x == c.y.abs())
            {
                Some(ClassTag::H0AtMostOne)
            } else {
                None
            }
        }
    }
}

/// Lists, for each genus `2..=g_max`, every admissible class with that
/// arithmetic genus. No admissible class has genus below 2.
pub fn enumerate_low_genus(
    model: &SurfaceModel,
    g_max: u32,
    simply_connected: bool,
) -> Result<Vec<GenusClassList>> {
    if !(MIN_G_MAX..=MAX_G_MAX).contains(&g_max) {
        return Err(Error::OutOfRange {
            name: "g_max",
            value: g_max.to_string(),
            expected: "2 <= g_max <= 100",
        });
    }
    Ok((MIN_G_MAX..=g_max)
        .map(|genus| {
            let mut classes = Vec::new();
            let mut annotations = Vec::new();
            for class in classes_of_genus(model, genus) {
                let tag = simply_connected
                    .then(|| simply_connected_tag(model, &class))
                    .flatten();
                if tag != Some(ClassTag::ExcludedSimplyConnected) {
                    classes.push(class.clone());
                }
                if let Some(tag) = tag {
                    annotations.push(Annotation {
                        class,
                        tags: vec![tag],
                    });
                }
            }
            GenusClassList {
                genus,
                simply_connected,
                classes,
                annotations,
            }
        })
        .collect())
}
