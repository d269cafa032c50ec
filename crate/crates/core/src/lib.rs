//! Supply-chain criticality analysis for software distributions.
//!
//! Packages are ranked by Katz centrality over the distribution's dependency
//! graph, then joined with vulnerability-tracker status and maintenance
//! metrics mined from their git histories.
//!
//! - [`depgraph`]: load and query the dependency graph
//! - [`centrality`]: Katz scores and ranking
//! - [`vulndb`]: security tracker parsing, caching and per-package counts
//! - [`gitmetrics`]: bus factor, age, lines of text, activity
//! - [`dataset`]: curated metadata and the analysis-table join
//! - [`stats`]: box plots, regression, categorical breakdowns
//! - [`report`]: report assembly and emission
//! - [`pipeline`]: the file-to-file stages behind the CLI

pub mod centrality;
pub mod dataset;
pub mod depgraph;
pub mod gitmetrics;
pub mod pipeline;
pub mod report;
pub mod stats;
pub mod vulndb;
