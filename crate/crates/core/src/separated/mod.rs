//! Decompositions with separation between equal labels, ruling sets, low-intersecting
//! partitions and the cluster-skeleton spanner.

mod rs;
mod ruling;
mod sep;
mod skeleton;

pub use rs::{rs_decompose, rs_partition};
pub use ruling::{ruling_set, RulingMethod, RulingSet};
pub use sep::{low_intersecting, sep_decompose, sep_partition, weak_sep_decompose, LowIntersecting};
pub use skeleton::{skeleton_spanner, Skeleton};
