pub mod cli;
pub mod graph_file;
pub mod report;
