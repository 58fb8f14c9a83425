pub mod axioms;
pub mod builders;
pub mod cells;
pub mod codec;
pub mod compactness;
pub mod cofibration;
pub mod constructions;
pub mod error;
pub mod homotopy;
pub mod invariants;
pub mod map;
pub mod search;
pub mod space;
pub mod subset;
pub mod union_find;

pub use builders::ScaledMetricData;
pub use error::{Error, Result};
pub use map::{Continuity, SpaceMap};
pub use space::{Kind, PointSet, PrincipalFilter, Space, StructureKind};
pub use subset::Subset;

pub type ScaledMetricF64 = ScaledMetricData<f64>;
pub type ScaledMetricF32 = ScaledMetricData<f32>;
