//! Weyl groupoids of Cartan schemes in exact integer arithmetic.
//!
//! The crate builds the real roots of a Cartan scheme, enumerates the
//! morphisms of its Weyl groupoid into a fixed object, and studies them
//! through the weak order (a graded ortho-complemented lattice) and the
//! Coxeter complex (a simplicial sphere realized by a simplicial
//! hyperplane arrangement).
//!
//! ```
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! use weyl_core::{fixtures, WeakOrders, WeylGroupoid};
//!
//! let g = WeylGroupoid::new(fixtures::bruhat())?;
//! let orders = WeakOrders::build(&g)?;
//! let a = g.scheme().object_index("a").unwrap();
//! let u = g.from_word(&[0, 1], g.scheme().object_index("c").unwrap())?; // 12^c
//! let v = g.longest(a);
//! assert_eq!(orders.meet(&u, v), u);
//! # Ok(())
//! # }
//! ```

pub mod cartan;
pub mod checks;
pub mod complex;
pub mod fixtures;
pub mod index_set;
pub mod linalg;
pub mod groupoid;
pub mod order;
pub mod poincare;
pub mod roots;
pub mod simplicial;

pub use cartan::{CartanScheme, RawScheme, SchemeError, StructureError, ValidationReport, Violation};
pub use index_set::IndexSet;
pub use roots::{check_axioms, generate_roots, AxiomReport, NotFinite, RootSystemData};
pub use groupoid::{GroupoidError, HomSet, Morphism, WeylGroupoid};
pub use order::{IntervalKind, IntervalOptions, IntervalReport, IntervalType, WeakOrderPoset, WeakOrders};
