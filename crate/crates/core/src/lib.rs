pub mod cli;
pub mod graph;
pub mod orient;
pub mod pi;
pub mod splitting;
pub mod subroutines;
pub mod verify;
