//! Shared inputs for the criterion benches.

/// Orders spanning the tabulated range: generic, half-odd and special.
pub const ORDERS: [f64; 5] = [2.0, 4.2, 5.5, 8.0, 9.4];
