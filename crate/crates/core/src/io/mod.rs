//! Instance loading, generation, and result persistence.

mod generate;
mod records;
mod tsplib;

pub use generate::{maxcut_from_tsp, random_instance, InstanceKind};
pub use records::{
    read_results, read_trace, write_results, write_trace, ResultRecord, RESULTS_FORMAT, RESULTS_VERSION, TRACE_HEADER,
};
pub use tsplib::{build_distances, parse_tsplib, read_tsplib, EdgeWeightFormat, EdgeWeightType, TsplibDocument};
