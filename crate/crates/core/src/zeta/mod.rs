//! Point counts over `𝔽_{pⁿ}`, Frobenius traces, reconstruction of the
//! characteristic polynomial of Frobenius on the transcendental part of
//! cohomology, and the resulting upper bound on the geometric Picard number.

mod cache;
mod charpoly;
mod count;
mod poly;
mod reference;
mod report;

pub use cache::{reduction_hash, CacheRecord, CountCache};
pub use charpoly::{
    complete_functional_equation, cyclotomic, euler_phi, newton_coefficients, picard_upper_bound,
    polynomial_from_coefficients, square_class_distinct, square_class_distinct_i64,
    squarefree_part, trace_from_count, trace_from_count_with_rank, traces_from_coefficients,
    unit_root_multiplicity, unit_root_order_bound, FunctionalEquation, FunctionalEquationSign,
    DEFAULT_DIVISOR_RANK, K3_SECOND_BETTI,
};
pub use count::{
    count_points, count_points_affine_decomposition, count_points_in_field, count_points_with,
    counting_cost, CountOptions, CountRecord, CountSource, DEFAULT_COST_LIMIT, LONG_COST_LIMIT,
};
pub use poly::RationalPolynomial;
pub use reference::ReferenceData;
pub use report::{
    run_van_luijk, Comparison, LineCheck, PrimeStage, SingularSearch, SquareClassStage,
    StageFailure, SurfaceStage, VanLuijkConfig, VerificationReport,
};
