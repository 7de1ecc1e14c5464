pub mod circuits;
pub mod cli;
pub mod exactfield;
pub mod problems;
pub mod ringterms;
pub mod search;
pub mod terms;
pub mod vonstaudt;
