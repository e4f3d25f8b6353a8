//! Exact computation with the generalized Liu algebras B(n,w,γ), their simple
//! Yetter-Drinfeld modules, and the associated Nichols algebras.

pub mod acceptance;
pub mod classify;
pub mod coefficients;
pub mod hopf;
pub mod linalg;
pub mod nichols;
pub mod scalars;
pub mod yd;

pub use coefficients::{build_comatrix, is_comatrix, phi, shape_report, CoeffParams, ComatrixData, ComatrixFailure, ShapeCase, ShapeReport};
pub use hopf::{AxiomReport, HopfElement, HopfError, Liu, Monomial, TensorElement};
pub use linalg::SparseMatrix;
pub use scalars::{q_binomial, Literal, Scalar, ScalarError};
pub use yd::{
    canonical_grouplike, construct, find_standard_elements, is_isomorphic, module_dim, verify_all,
    verify_comodule, verify_compatibility, verify_module, ModuleParams, StandardElementReport, YDModule,
};
pub use nichols::{
    braided_symmetrizer, braiding_from_yd, graded_dims, one_dim_finite, t2_certificate, BraidedSpace, Budget,
    HilbertPrefix, NicholsError,
};
pub use classify::{
    classify, cross_validate, dynkin, evaluate_tables, regime, ClassifyError, CrossReport, DynkinDiagram, Regime,
    SixTuple, TableCorpus, TableMatch, Verdict,
};
