use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("distance must be positive, got {0} m")]
    NonPositiveDistance(f64),
    #[error("slot index {slot} out of range for {slots} slots")]
    SlotOutOfRange { slot: usize, slots: usize },
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EncodingError {
    #[error("normalization range is empty: lo = {lo}, hi = {hi}")]
    EmptyRange { lo: f64, hi: f64 },
    #[error("genome has {got} genes, layout expects {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("trajectory/time split inconsistent with {slots} slots: {waypoints} waypoints, {fractions} fractions")]
    ShapeMismatch {
        slots: usize,
        waypoints: usize,
        fractions: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}
