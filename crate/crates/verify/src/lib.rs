//! Acceptance criteria for the whole workspace live in `tests/acceptance.rs`
//! and run with `cargo test -p krcyclo-verify --test acceptance`.
