//! One-stop analysis of a single class, as printed by `fakequad classify`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    bounded_cohomology_case, cohomology_bounds, BoundedCohomologyCase, CohomologyBounds,
};
use crate::diophantine::{enumerate_low_genus, GenusClassList};
use crate::error::Result;
use crate::lattice::{DivisorClass, LatticeType, SurfaceModel};
use crate::positivity::{classify, cone_rays, curve_class_admissible, ConeRays, PositivityVerdict};
use crate::riemann_roch::{arithmetic_genus, euler_characteristic, genus_report, GenusReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub schema: String,
    pub model: LatticeType,
    pub class: DivisorClass,
    pub verdict: PositivityVerdict,
    pub genus: GenusReport,
    pub cohomology: CohomologyBounds,
    pub curve_class_admissible: bool,
    /// Present only for admissible curve classes.
    pub bounded_cohomology: Option<BoundedCohomologyCase>,
}

pub fn analyze(model: &SurfaceModel, d: &DivisorClass) -> Result<ClassReport> {
    let admissible = curve_class_admissible(model, d);
    Ok(ClassReport {
        schema: crate::SCHEMA.to_string(),
        model: model.lattice(),
        class: d.clone(),
        verdict: classify(model, d),
        genus: genus_report(model, d)?,
        cohomology: cohomology_bounds(model, d)?,
        curve_class_admissible: admissible,
        bounded_cohomology: if admissible {
            Some(bounded_cohomology_case(model, d)?)
        } else {
            None
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    EulerCharacteristic,
    ArithmeticGenus,
}

/// A single number, as printed by `fakequad chi` and `fakequad genus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarReport {
    pub schema: String,
    pub model: LatticeType,
    pub class: DivisorClass,
    pub quantity: Quantity,
    #[serde(with = "crate::json::int")]
    pub value: BigInt,
}

pub fn scalar(model: &SurfaceModel, d: &DivisorClass, quantity: Quantity) -> Result<ScalarReport> {
    let value = match quantity {
        Quantity::EulerCharacteristic => euler_characteristic(model, d)?,
        Quantity::ArithmeticGenus => arithmetic_genus(model, d)?,
    };
    Ok(ScalarReport {
        schema: crate::SCHEMA.to_string(),
        model: model.lattice(),
        class: d.clone(),
        quantity,
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeReport {
    pub schema: String,
    pub model: LatticeType,
    pub canonical: DivisorClass,
    #[serde(flatten)]
    pub rays: ConeRays,
}

pub fn cones(model: &SurfaceModel) -> ConeReport {
    ConeReport {
        schema: crate::SCHEMA.to_string(),
        model: model.lattice(),
        canonical: model.canonical().clone(),
        rays: cone_rays(model),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub schema: String,
    pub model: LatticeType,
    pub g_max: u32,
    pub simply_connected: bool,
    pub lists: Vec<GenusClassList>,
}

pub fn enumeration(
    model: &SurfaceModel,
    g_max: u32,
    simply_connected: bool,
) -> Result<EnumerationReport> {
    Ok(EnumerationReport {
        schema: crate::SCHEMA.to_string(),
        model: model.lattice(),
        g_max,
        simply_connected,
        lists: enumerate_low_genus(model, g_max, simply_connected)?,
    })
}
