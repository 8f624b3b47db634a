//! Multiplicative-basis k-modules over linear spaces.
//!
//! A k-module over a linear space `W` is a space `V` with an n-linear map
//! taking k arguments from `V` and n - k from `W`, in any arrangement, with
//! values in `V`. When the basis of `V` is multiplicative every basis product
//! is a multiple of one basis vector, and the whole map is a sparse table
//! (see [`KModuleStructure`]).
//!
//! The crate computes the decomposition of `V` into the spans of the
//! connection classes of its index set, checks μ-multiplicativity and
//! minimality, and builds and decomposes the semidirect sum with an n-ary
//! algebra.
//!
//! ```
//! use modbasis::{components, Entry, KModuleStructure, Scalar, Shape, Slot};
//!
//! let st = KModuleStructure::from_entries(
//!     Shape::new(2, 1, 3, 1),
//!     vec![
//!         Entry::new(vec![Slot::Module(0), Slot::Space(0)], 1, Scalar::one()),
//!         Entry::new(vec![Slot::Module(2), Slot::Space(0)], 2, Scalar::one()),
//!     ],
//! )
//! .unwrap();
//! assert_eq!(components(&st).classes(), &[vec![0, 1], vec![2]]);
//! ```

pub mod budget;
pub mod connections;
pub mod decomposition;
pub mod dot;
pub mod error;
pub mod generators;
pub mod io;
pub mod minimality;
pub mod oracle;
pub mod partition;
pub mod scalar;
pub mod semidirect;
pub mod structure;

pub use budget::Budget;
pub use connections::{
    components, find_connection, forward_edges, mu, phi, reverse_connection, verify_connection,
    Connection, ConnectionWitness, Direction, Step,
};
pub use decomposition::{
    decompose, restrict, verify_orthogonality, verify_submodule, SubmoduleComponent,
};
pub use error::{Error, Result};
pub use minimality::{
    check_minimality_theorem, directed_closure, is_minimal, is_mu_multiplicative,
};
pub use oracle::components_oracle;
pub use partition::ComponentPartition;
pub use scalar::Scalar;
pub use semidirect::{
    build_semidirect, decompose_combined, pairing, verify_ideal, ModuleOverAlgebra,
};
pub use structure::{
    from_sigma_entries, Entry, KModuleStructure, ModuleIndex, NAryAlgebra, Placement, Product,
    Shape, SigmaEntry, Slot, SpaceIndex,
};
