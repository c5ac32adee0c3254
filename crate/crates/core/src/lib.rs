//! Hilbert bases, support hyperplanes and h-vectors of rational cones.

pub mod cone;
pub mod dual;
pub mod error;
pub mod fm;
pub mod io;
pub mod linalg;
pub mod primal;
pub mod reduction;
pub mod report;
pub mod shelling;

pub use error::{Error, Result};
pub use io::{emit, parse_input, read_input, Algorithm, InputMode, ProblemInput, RunOptions};
pub use report::{run, Report};
