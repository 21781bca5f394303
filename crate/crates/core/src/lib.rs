//! Strong geodetic number of graphs, with specialised solvers for complete
//! bipartite and complete multipartite graphs.
//!
//! The real-valued parts (quartic roots, asymptotic estimates) are generic
//! over [`scalar::Real`]; the aliases below fix them to `f64`.

pub mod bipartite;
pub mod certificate;
pub mod format;
pub mod graph;
pub mod multipartite;
pub mod oracle;
pub mod partition;
pub mod reduction;
pub mod scalar;

pub use bipartite::classify::{classify_sg_eq_k, f, level_set, level_set_grid};
pub use bipartite::{
    sg_balanced, sg_bipartite, sg_large_m, BipartiteError, BipartiteSolution,
};
pub use certificate::{verify_certificate, Certificate, Violation};
pub use format::{parse_graph, serialize_graph, ParseError};
pub use graph::{
    all_pairs_distances, build_complete_multipartite, enumerate_geodesics, Geodesic, Graph,
    GraphError,
};
pub use multipartite::{
    coverage_feasible, coverage_feasible_matching, lp_lower_bound, sg_multipartite, sg_uniform,
    whole_parts_upper_bound, MultipartiteBounds, MultipartiteError, Selection,
};
pub use oracle::{
    is_strong_geodetic_set, strong_geodetic_number_exact, OracleError, OracleLimits,
};
pub use partition::{Partition, PartitionError};
pub use reduction::{reduce, verify_equivalence, ReductionError, ReductionInstance, Role};
pub use scalar::Real;

pub type Regime64 = bipartite::asymptotic::Regime<f64>;
pub type QuarticRoot64 = bipartite::quartic::QuarticRoot<f64>;
pub type ConjectureSample64 = bipartite::quartic::ConjectureSample<f64>;
pub type ConjectureScan64 = bipartite::quartic::ConjectureScan<f64>;
