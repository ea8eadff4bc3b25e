//! Criterion benchmarks for the froblift kernels; see `benches/kernels.rs`.
