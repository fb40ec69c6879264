//! Characters of symmetric groups and the zeros of their tables.
//!
//! * [`partition`] and [`code`]: partitions, hook lengths and boundary words.
//! * [`mn`]: exact character values by the Murnaghan–Nakayama rule.
//! * [`sampler`]: partition counts and exactly uniform random partitions.
//! * [`census`]: exact zero counts, t-core counting, type-I totals.
//! * [`montecarlo`]: seeded, worker-independent density estimates.
//! * [`cli`]: the `snzeros` command line.

pub mod census;
pub mod cli;
pub mod code;
pub mod error;
pub mod mn;
pub mod montecarlo;
pub mod partition;
pub mod sampler;

pub use code::BoundaryCode;
pub use error::{Error, Result};
pub use mn::{character, classify, CharValue, TermBag, ZeroClass};
pub use partition::{HookMultiset, Partition};
pub use sampler::{random_partition, PartitionCountTable, SampleStream};
