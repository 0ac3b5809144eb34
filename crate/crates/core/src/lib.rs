//! Groups with free regular Lyndon length functions in Z^n.
//!
//! Elements are finite block normal forms of infinite Z^n-words; the engine
//! multiplies with exact cancellation, computes common prefixes and
//! centralizers, reduces generating sets, and builds HNN towers.

pub mod axioms;
pub mod expr;
pub mod factory;
pub mod hnn;
pub mod lambda;
pub mod nielsen;
pub mod pregroup;
pub mod tower;
pub mod towerfile;
pub mod words;

pub use expr::parse;
pub use lambda::LambdaVec;
pub use tower::{AbelianSubgroup, Element, GroupTower, Side, TowerError};
pub use towerfile::{load_tower, TowerFile};
