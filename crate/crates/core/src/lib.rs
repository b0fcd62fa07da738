//! Exact persistence diagrams over finite posets: incidence algebra,
//! simplicial (co)filtrations, birth-death functions, presentations of
//! persistence modules, and duality for manifold (co)filtrations.
//!
//! All arithmetic is exact: integer functions use checked `i64`, and linear
//! algebra runs over a prime field `𝔽_p`.

pub mod duality;
pub mod exec;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod persistence;
pub mod poset;
pub mod random;
pub mod simplicial;

pub use duality::{check_duality, dualize_cofiltration, dualize_filtration, manifold_report, DualityMode};
pub use exec::Strategy;
pub use linalg::{Matrix, PrimeField, Subspace};
pub use modules::{
    canonical_presentation, check_equivalence, check_module_equivalence, PersistenceModule, Presentation,
};
pub use persistence::{diagram, AnyFamily, Cofiltration, Diagram, Filtration};
pub use poset::{check_rota, FinitePoset, GaloisConnection, IntFunction, IntervalPoset};
pub use simplicial::{barycentric_subdivision, SetKind, SimplexSet, SimplicialComplex};
