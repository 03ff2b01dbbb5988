//! Classical zeta-function engines: counting, closed-form roots, series.

pub mod count;
pub mod fermat;
pub mod orbits;
pub mod polysys;
pub mod series;

pub use count::{count_points, count_points_capped, projective_point_count, DEFAULT_ENUM_CAP};
pub use fermat::{
    counts_from_roots, fermat_roots, normalized_root_phase, reconstruct_rational, root_for_tuple,
    verify_weil, FermatSurface, RationalForm, WeilReport, ZetaProfile,
};
pub use orbits::{moebius, orbit_counts};
pub use polysys::{MultiPoly, PolySystem, Term};
pub use series::{euler_product_series, zeta_series, TruncatedSeries};
