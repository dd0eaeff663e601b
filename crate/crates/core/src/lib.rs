//! Exact arithmetic for Lubin-Tate formal groups over unramified base fields,
//! their torsion towers and standard higher local fields, together with
//! evaluators for the explicit reciprocity formulas (Wiles-type, generalized
//! Iwasawa, generalized Artin-Hasse) and an independent class-field-theory
//! oracle to cross-check them.
//!
//! Everything is computed in fixed absolute precision `mod p^N`; every value
//! carries its own precision and all operations propagate it, so a result
//! that claims `prec = t` is exact modulo `p^t`.

pub mod error;
pub mod padic;
pub mod series;
pub mod formal;
pub mod nr;
pub mod tower;
pub mod hfield;
pub mod ql;
pub mod pairing;
pub mod harness;

pub use error::{Error, Result};
pub use padic::{PadicRing, PadicElement, Val};
pub use series::{TruncSeries, Var, Window, OverflowPolicy};
pub use formal::{FormalGroupPack, HomSeries, LambdaReport};
pub use tower::{TowerRing, TowerElement, TorsionCoord};
pub use hfield::{HField, HFElement};
pub use ql::{SymbolExpr, SymbolEntry, SlotTag, ModValue};
pub use pairing::{PairingCase, Formula, PairOutput};
