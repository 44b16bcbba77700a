//! Slow, independent reference implementations.
//!
//! Nothing here shares code paths with `normalhst` beyond reading a triangulation's
//! gluings and the shared coordinate layout. Each oracle favours the most literal
//! algorithm over speed.

pub mod curves;
pub mod matching;
pub mod surfaces;
pub mod width;
