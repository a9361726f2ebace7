//! Ideal arithmetic in `k[x]_(x)/J` and its polynomial extensions.

mod ideal;
pub mod mora;
mod ring;

pub use ideal::{IdealError, IdealHandle};
pub use mora::{represent, standard_basis, weak_normal_form, Representation};
pub use ring::{LocalRing, RingError, DEFAULT_ANNIHILATOR_CAP};
