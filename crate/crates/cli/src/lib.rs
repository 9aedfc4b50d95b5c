//! Library surface of the `fflab` binary: input parsing, report
//! serialization, and the parallel suite runner. Kept as a library so unit
//! tests can exercise the pieces without spawning the executable.

pub mod io;
pub mod runner;
