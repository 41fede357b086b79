//! Gate compilation: single-qubit weaves and the two-qubit controlled-phase
//! constructions, with exact-simulation verification reports.
