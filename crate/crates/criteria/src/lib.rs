//! Acceptance suite for the mantel4 toolkit; see `tests/acceptance.rs`.
