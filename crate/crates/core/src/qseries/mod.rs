//! Exact truncated q-series: products, Nahm sums, Euler factorization and
//! partition enumeration.

pub mod bivariate;
pub mod euler;
pub mod expand;
pub mod io;
pub mod partitions;
pub mod product;
pub mod series;

pub use bivariate::BivariateSeries;
pub use euler::{detect_period, euler_factorize, product_from_exponents, residue_support};
pub use expand::{lattice_points, nahm_expand, nahm_expand_sum};
pub use io::{read_series, write_series};
pub use partitions::{enumerate_condition_partitions, ConditionKind, MAX_ENUMERATION_ORDER};
pub use product::{pochhammer_inv, ExtraFamily, ProductSpec};
pub use series::QSeriesTrunc;
